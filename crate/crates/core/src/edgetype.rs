//! Edge-type and vertex-count arithmetic for chemical graphs.
//!
//! A chemical graph here is simple, connected, of order `n >= 3` and maximum
//! degree at most 3. Its edges split into five types (`12`, `13`, `22`, `23`,
//! `33`) according to the degrees of their endpoints; `11`-edges cannot occur
//! in a connected graph with at least three vertices. Given `(n, m)` and the
//! three counts `(m12, m13, m33)` the remaining two are fixed, which is what
//! makes the 3-D [`Point3`] model work.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised by the edge-type arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EdgeTypeError {
    #[error("order n = {n} is too small: chemical graphs need at least 3 vertices")]
    OrderTooSmall { n: i64 },
    #[error("size m = {m} is out of range for n = {n}: need {lo} <= m <= {hi}")]
    SizeOutOfRange { n: i64, m: i64, lo: i64, hi: i64 },
    #[error("coordinate {name} = {value} is negative")]
    NegativeCoordinate { name: &'static str, value: i64 },
    #[error("derived count {name} = {value} is negative")]
    NegativeDerivedCount { name: &'static str, value: i64 },
    #[error("vertex count {name} is not integral ({numerator}/{denominator})")]
    NonIntegralVertexCount {
        name: &'static str,
        numerator: i64,
        denominator: i64,
    },
}

/// An edge-type coordinate `(m12, m13, m33)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point3 {
    pub m12: i64,
    pub m13: i64,
    pub m33: i64,
}

impl Point3 {
    pub const ORIGIN: Point3 = Point3 { m12: 0, m13: 0, m33: 0 };

    pub const fn new(m12: i64, m13: i64, m33: i64) -> Self {
        Point3 { m12, m13, m33 }
    }

    pub const fn to_array(self) -> [i64; 3] {
        [self.m12, self.m13, self.m33]
    }

    pub const fn from_array(a: [i64; 3]) -> Self {
        Point3::new(a[0], a[1], a[2])
    }

    pub fn is_non_negative(&self) -> bool {
        self.m12 >= 0 && self.m13 >= 0 && self.m33 >= 0
    }
}

impl From<[i64; 3]> for Point3 {
    fn from(a: [i64; 3]) -> Self {
        Point3::from_array(a)
    }
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.m12, self.m13, self.m33)
    }
}

/// An `(n, m)` pair for which chemical graphs can exist.
///
/// Construct with [`validate_order_size`]; fields are private so every
/// instance satisfies `n >= 3` and `n - 1 <= m <= min(floor(3n/2), n(n-1)/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ValidPair {
    n: i64,
    m: i64,
}

impl ValidPair {
    pub fn new(n: i64, m: i64) -> Result<Self, EdgeTypeError> {
        validate_order_size(n, m)
    }

    pub const fn n(&self) -> i64 {
        self.n
    }

    pub const fn m(&self) -> i64 {
        self.m
    }

    /// Largest admissible size for order `n`.
    pub fn max_size(n: i64) -> i64 {
        (3 * n / 2).min(n * (n - 1) / 2)
    }

    /// All valid pairs with the given order, by increasing size.
    pub fn all_with_order(n: i64) -> Vec<ValidPair> {
        if n < 3 {
            return Vec::new();
        }
        (n - 1..=Self::max_size(n)).map(|m| ValidPair { n, m }).collect()
    }
}

impl fmt::Display for ValidPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, m={})", self.n, self.m)
    }
}

impl<'de> Deserialize<'de> for ValidPair {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: i64,
            m: i64,
        }
        let raw = Raw::deserialize(d)?;
        validate_order_size(raw.n, raw.m).map_err(serde::de::Error::custom)
    }
}

/// Checks the `(n, m)` bounds and returns the validated pair.
pub fn validate_order_size(n: i64, m: i64) -> Result<ValidPair, EdgeTypeError> {
    if n < 3 {
        return Err(EdgeTypeError::OrderTooSmall { n });
    }
    let lo = n - 1;
    let hi = ValidPair::max_size(n);
    if m < lo || m > hi {
        return Err(EdgeTypeError::SizeOutOfRange { n, m, lo, hi });
    }
    Ok(ValidPair { n, m })
}

/// Full edge and vertex census of a chemical graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CountsProfile {
    pub pair: ValidPair,
    pub m12: i64,
    pub m13: i64,
    pub m22: i64,
    pub m23: i64,
    pub m33: i64,
    pub n1: i64,
    pub n2: i64,
    pub n3: i64,
}

impl CountsProfile {
    pub fn point(&self) -> Point3 {
        Point3::new(self.m12, self.m13, self.m33)
    }

    /// Edge counts in display order `m12, m13, m22, m23, m33`.
    pub fn edge_counts(&self) -> [i64; 5] {
        [self.m12, self.m13, self.m22, self.m23, self.m33]
    }

    pub fn vertex_counts(&self) -> [i64; 3] {
        [self.n1, self.n2, self.n3]
    }
}

/// Completes `(m12, m13, m33)` to a full census using the order/size identities.
pub fn complete_point(pair: ValidPair, p: Point3) -> Result<CountsProfile, EdgeTypeError> {
    for (name, value) in [("m12", p.m12), ("m13", p.m13), ("m33", p.m33)] {
        if value < 0 {
            return Err(EdgeTypeError::NegativeCoordinate { name, value });
        }
    }
    let (n, m) = (pair.n, pair.m);
    let m22 = 6 * n - 5 * m - 4 * p.m12 - 3 * p.m13 + p.m33;
    let m23 = 6 * m - 6 * n + 3 * p.m12 + 2 * p.m13 - 2 * p.m33;
    for (name, value) in [("m22", m22), ("m23", m23)] {
        if value < 0 {
            return Err(EdgeTypeError::NegativeDerivedCount { name, value });
        }
    }
    let n1 = p.m12 + p.m13;
    let twice_n2 = p.m12 + 2 * m22 + m23;
    if twice_n2 % 2 != 0 {
        return Err(EdgeTypeError::NonIntegralVertexCount {
            name: "n2",
            numerator: twice_n2,
            denominator: 2,
        });
    }
    let thrice_n3 = p.m13 + m23 + 2 * p.m33;
    if thrice_n3 % 3 != 0 {
        return Err(EdgeTypeError::NonIntegralVertexCount {
            name: "n3",
            numerator: thrice_n3,
            denominator: 3,
        });
    }
    Ok(CountsProfile {
        pair,
        m12: p.m12,
        m13: p.m13,
        m22,
        m23,
        m33: p.m33,
        n1,
        n2: twice_n2 / 2,
        n3: thrice_n3 / 3,
    })
}

/// True iff every census identity holds.
///
/// The order identity is checked in integers scaled by 6:
/// `9 m12 + 8 m13 + 6 m22 + 5 m23 + 4 m33 = 6 n`.
pub fn check_consistency(q: &CountsProfile) -> bool {
    let counts = [q.m12, q.m13, q.m22, q.m23, q.m33, q.n1, q.n2, q.n3];
    if counts.iter().any(|&c| c < 0) {
        return false;
    }
    let (n, m) = (q.pair.n, q.pair.m);
    q.n1 == q.m12 + q.m13
        && 2 * q.n2 == q.m12 + 2 * q.m22 + q.m23
        && 3 * q.n3 == q.m13 + q.m23 + 2 * q.m33
        && q.n1 + q.n2 + q.n3 == n
        && q.m12 + q.m13 + q.m22 + q.m23 + q.m33 == m
        && 9 * q.m12 + 8 * q.m13 + 6 * q.m22 + 5 * q.m23 + 4 * q.m33 == 6 * n
}
