//! Closed-form extreme-point catalog.
//!
//! For pairs with `max(12, n-1) <= m <= floor((3n-3)/2)` the extreme points of
//! the edge-type polytope are instances of 21 parametric formulas, selected by
//! a small regime table. All remaining pairs are covered by explicit rows
//! (orders up to 12) and three near-cubic families.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::edgetype::{complete_point, Point3, ValidPair};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("formula {id} does not apply to {pair}: {reason}")]
    FormulaNotApplicable {
        id: CatalogPointId,
        pair: ValidPair,
        reason: String,
    },
    #[error("unknown catalog point id '{0}'")]
    UnknownId(String),
}

/// Identifiers of the parametric extreme-point formulas.
///
/// The numbering has gaps (no V4, V5, V8a, V8b); the identifiers are kept
/// as published.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CatalogPointId {
    V1,
    V2,
    V3,
    V6,
    V7a,
    V7b,
    V7c,
    V8c,
    V8d,
    V9a,
    V9b,
    V9c,
    V10a,
    V10b,
    V10c,
    V11a,
    V11b,
    V11c,
    V12a,
    V12b,
    V12c,
}

impl CatalogPointId {
    pub const ALL: [CatalogPointId; 21] = {
        use CatalogPointId::*;
        [
            V1, V2, V3, V6, V7a, V7b, V7c, V8c, V8d, V9a, V9b, V9c, V10a, V10b, V10c, V11a, V11b, V11c, V12a, V12b,
            V12c,
        ]
    };

    pub fn as_str(&self) -> &'static str {
        use CatalogPointId::*;
        match self {
            V1 => "V1",
            V2 => "V2",
            V3 => "V3",
            V6 => "V6",
            V7a => "V7a",
            V7b => "V7b",
            V7c => "V7c",
            V8c => "V8c",
            V8d => "V8d",
            V9a => "V9a",
            V9b => "V9b",
            V9c => "V9c",
            V10a => "V10a",
            V10b => "V10b",
            V10c => "V10c",
            V11a => "V11a",
            V11b => "V11b",
            V11c => "V11c",
            V12a => "V12a",
            V12b => "V12b",
            V12c => "V12c",
        }
    }
}

impl fmt::Display for CatalogPointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CatalogPointId {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CatalogPointId::ALL
            .iter()
            .copied()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| CatalogError::UnknownId(s.to_string()))
    }
}

impl Serialize for CatalogPointId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Which part of the catalog answers a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RegimeKind {
    Table3Explicit,
    /// Even `n >= 4`, `m = 3n/2` (cubic graphs).
    Table3CubicFamily,
    /// Odd `n >= 5`, `m = (3n-1)/2`.
    Table3NearCubicOddFamily,
    /// Even `n >= 6`, `m = (3n-2)/2`.
    Table3NearCubicEvenFamily,
    Tree,
    Unicyclic,
    Bicyclic,
    /// `n+1 < m < 6n/5`; `special` when `6n - 5m` is 1, 2 or 5.
    LowDensity {
        special: bool,
    },
    /// `6n/5 <= m <= floor((3n-3)/2)`.
    HighDensity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Regime {
    pub kind: RegimeKind,
    pub parity: u8,
}

impl Regime {
    pub fn is_parametric(&self) -> bool {
        !matches!(
            self.kind,
            RegimeKind::Table3Explicit
                | RegimeKind::Table3CubicFamily
                | RegimeKind::Table3NearCubicOddFamily
                | RegimeKind::Table3NearCubicEvenFamily
        )
    }
}

/// Where a catalog point came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointLabel {
    Formula(CatalogPointId),
    Explicit,
}

impl fmt::Display for PointLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointLabel::Formula(id) => id.fmt(f),
            PointLabel::Explicit => f.write_str("Explicit"),
        }
    }
}

impl Serialize for PointLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A distinct catalog point together with every formula that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledPoint {
    pub labels: Vec<PointLabel>,
    pub point: Point3,
}

impl LabeledPoint {
    pub fn has_id(&self, id: CatalogPointId) -> bool {
        self.labels.contains(&PointLabel::Formula(id))
    }

    pub fn ids(&self) -> impl Iterator<Item = CatalogPointId> + '_ {
        self.labels.iter().filter_map(|l| match l {
            PointLabel::Formula(id) => Some(*id),
            PointLabel::Explicit => None,
        })
    }
}

/// Explicit rows for pairs outside the parametric regime, `n <= 12`.
const EXPLICIT_ROWS: &[(i64, i64, &[[i64; 3]])] = &[
    (3, 2, &[[2, 0, 0]]),
    (3, 3, &[[0, 0, 0]]),
    (4, 3, &[[0, 3, 0], [2, 0, 0]]),
    (4, 4, &[[0, 0, 0], [0, 1, 0]]),
    (4, 5, &[[0, 0, 1]]),
    (5, 4, &[[1, 2, 0], [2, 0, 0]]),
    (5, 5, &[[0, 0, 0], [0, 1, 0], [0, 2, 1], [1, 0, 0]]),
    (5, 6, &[[0, 0, 0], [0, 0, 1], [0, 1, 3]]),
    (6, 5, &[[0, 4, 1], [1, 2, 0], [2, 0, 0], [2, 1, 0]]),
    (6, 6, &[[0, 0, 0], [0, 2, 0], [0, 3, 3], [1, 0, 0], [1, 1, 1]]),
    (6, 7, &[[0, 0, 0], [0, 0, 1], [0, 1, 2], [0, 2, 5], [1, 0, 3]]),
    (7, 6, &[[0, 4, 0], [1, 3, 1], [2, 0, 0], [3, 0, 0]]),
    (
        7,
        7,
        &[
            [0, 0, 0],
            [0, 2, 0],
            [0, 3, 2],
            [1, 0, 0],
            [1, 1, 0],
            [1, 2, 3],
            [2, 0, 1],
        ],
    ),
    (
        7,
        8,
        &[
            [0, 0, 0],
            [0, 0, 1],
            [0, 1, 1],
            [0, 1, 3],
            [0, 2, 4],
            [1, 0, 2],
            [1, 0, 3],
            [1, 1, 5],
        ],
    ),
    (7, 9, &[[0, 0, 3], [0, 0, 5], [0, 1, 6], [1, 0, 7]]),
    (
        8,
        7,
        &[[0, 4, 0], [0, 5, 2], [1, 3, 0], [2, 0, 0], [2, 2, 1], [3, 0, 0]],
    ),
    (
        8,
        8,
        &[
            [0, 0, 0],
            [0, 2, 0],
            [0, 3, 1],
            [0, 4, 4],
            [2, 0, 0],
            [2, 0, 1],
            [2, 1, 3],
        ],
    ),
    (
        8,
        9,
        &[
            [0, 0, 0],
            [0, 0, 1],
            [0, 1, 0],
            [0, 1, 3],
            [0, 3, 6],
            [1, 0, 1],
            [1, 1, 5],
            [2, 0, 5],
        ],
    ),
    (8, 10, &[[0, 0, 2], [0, 0, 5], [0, 2, 8], [1, 0, 6], [1, 0, 7]]),
    (
        9,
        8,
        &[
            [0, 4, 0],
            [0, 5, 1],
            [1, 4, 2],
            [2, 0, 0],
            [2, 2, 0],
            [3, 0, 0],
            [3, 1, 1],
        ],
    ),
    (
        9,
        9,
        &[[0, 0, 0], [0, 3, 0], [0, 4, 3], [1, 3, 4], [2, 0, 0], [3, 0, 3]],
    ),
    (
        9,
        10,
        &[
            [0, 0, 0],
            [0, 0, 1],
            [0, 1, 0],
            [0, 1, 3],
            [0, 2, 2],
            [0, 3, 5],
            [1, 0, 0],
            [1, 1, 5],
            [1, 2, 6],
            [2, 0, 4],
            [2, 0, 5],
        ],
    ),
    (
        9,
        11,
        &[[0, 0, 1], [0, 0, 5], [0, 2, 7], [1, 0, 5], [1, 0, 7], [1, 1, 8]],
    ),
    (
        10,
        9,
        &[
            [0, 4, 0],
            [0, 5, 0],
            [0, 6, 3],
            [2, 0, 0],
            [3, 0, 0],
            [3, 1, 0],
            [4, 0, 1],
        ],
    ),
    (
        10,
        10,
        &[
            [0, 0, 0],
            [0, 3, 0],
            [0, 4, 2],
            [0, 5, 5],
            [1, 2, 0],
            [2, 0, 0],
            [2, 2, 4],
            [3, 0, 2],
            [3, 0, 3],
        ],
    ),
    (
        10,
        11,
        &[
            [0, 0, 0],
            [0, 0, 1],
            [0, 1, 0],
            [0, 1, 3],
            [0, 2, 1],
            [0, 4, 7],
            [1, 0, 0],
            [1, 1, 5],
            [2, 0, 3],
            [2, 0, 5],
            [2, 1, 6],
        ],
    ),
    (
        11,
        10,
        &[
            [0, 4, 0],
            [0, 5, 0],
            [0, 6, 2],
            [1, 4, 0],
            [1, 5, 3],
            [2, 0, 0],
            [3, 2, 2],
            [4, 0, 0],
            [4, 0, 1],
        ],
    ),
    (
        11,
        11,
        &[
            [0, 0, 0],
            [0, 3, 0],
            [0, 4, 1],
            [0, 5, 4],
            [1, 4, 5],
            [2, 0, 0],
            [2, 1, 0],
            [3, 0, 1],
            [3, 0, 3],
            [3, 1, 4],
        ],
    ),
    (
        12,
        11,
        &[
            [0, 4, 0],
            [0, 5, 0],
            [0, 6, 1],
            [0, 7, 4],
            [2, 0, 0],
            [2, 3, 0],
            [4, 0, 0],
            [4, 0, 1],
            [4, 1, 2],
        ],
    ),
];

fn explicit_row(n: i64, m: i64) -> Option<&'static [[i64; 3]]> {
    EXPLICIT_ROWS
        .iter()
        .find(|(rn, rm, _)| *rn == n && *rm == m)
        .map(|(_, _, pts)| *pts)
}

/// `max(12, n-1) <= m <= floor((3n-3)/2)`.
pub fn in_parametric_regime(pair: ValidPair) -> bool {
    let (n, m) = (pair.n(), pair.m());
    m >= 12.max(n - 1) && m <= (3 * n - 3).div_euclid(2)
}

/// Total dispatch of a valid pair to the part of the catalog that answers it.
pub fn classify_regime(pair: ValidPair) -> Regime {
    let (n, m) = (pair.n(), pair.m());
    let parity = (n % 2) as u8;
    let kind = if n <= 12 && explicit_row(n, m).is_some() {
        RegimeKind::Table3Explicit
    } else if n % 2 == 0 && n >= 4 && 2 * m == 3 * n {
        RegimeKind::Table3CubicFamily
    } else if n % 2 == 1 && n >= 5 && 2 * m == 3 * n - 1 {
        RegimeKind::Table3NearCubicOddFamily
    } else if n % 2 == 0 && n >= 6 && 2 * m == 3 * n - 2 {
        RegimeKind::Table3NearCubicEvenFamily
    } else {
        debug_assert!(in_parametric_regime(pair), "unclassified pair {pair}");
        if m == n - 1 {
            RegimeKind::Tree
        } else if m == n {
            RegimeKind::Unicyclic
        } else if m == n + 1 {
            RegimeKind::Bicyclic
        } else if 5 * m < 6 * n {
            RegimeKind::LowDensity {
                special: matches!(6 * n - 5 * m, 1 | 2 | 5),
            }
        } else {
            RegimeKind::HighDensity
        }
    };
    Regime { kind, parity }
}

fn exact_div(id: CatalogPointId, pair: ValidPair, numerator: i64, denominator: i64) -> Result<i64, CatalogError> {
    if numerator.rem_euclid(denominator) != 0 {
        return Err(CatalogError::FormulaNotApplicable {
            id,
            pair,
            reason: format!("{numerator}/{denominator} is not integral"),
        });
    }
    Ok(numerator.div_euclid(denominator))
}

/// Instantiates a parametric formula at `pair`. Every `mod` is the
/// non-negative remainder, including for negative arguments.
pub fn table1_point(id: CatalogPointId, pair: ValidPair) -> Result<Point3, CatalogError> {
    use CatalogPointId::*;
    let (n, m) = (pair.n(), pair.m());
    let md = |a: i64, b: i64| a.rem_euclid(b);
    let div = |num: i64, den: i64| exact_div(id, pair, num, den);
    let p = match id {
        V1 => Point3::new(0, 0, 0),
        V2 => Point3::new(2, 0, 0),
        V3 => Point3::new(0, 0, 1),
        V6 => Point3::new(0, 0, 5 * m - 6 * n),
        V7a => {
            let r = md(m - 2 * n, 4);
            Point3::new(div(6 * n - 5 * m - 3 * r, 4)?, r, 0)
        }
        V7b => {
            let r = md(m - 2 * n, 4);
            Point3::new(div(6 * n - 5 * m + r, 4)?, 0, r)
        }
        V7c => Point3::new(div(6 * n - 5 * m - md(2 * n - m, 4), 4)?, 0, 0),
        V8c => {
            let r = md(n, 2);
            Point3::new(0, div(3 * n - 2 * m - r, 2)?, div(4 * m - 3 * n - 3 * r, 2)?)
        }
        V8d => Point3::new(1, div(3 * n - 2 * m - 3, 2)?, div(4 * m - 3 * n - 1, 2)?),
        V9a => Point3::new(3 * m - 3 * n - 2, 3 * m - 3 * n - 2, 6 * m - 6 * n - 1),
        V9b => Point3::new(3 * m - 3 * n - 1, 0, 6 * m - 6 * n - 1),
        V9c => Point3::new(0, 3 * m - 3 * n - 2, 6 * m - 6 * n - 3),
        V10a => Point3::new(0, div(6 * n - 5 * m - md(m, 3), 3)?, 0),
        V10b => {
            let r = md(m, 3);
            Point3::new(r, div(6 * n - 5 * m - 4 * r, 3)?, 0)
        }
        V10c => {
            let r = md(2 * m, 3);
            Point3::new(0, div(6 * n - 5 * m + r, 3)?, r)
        }
        V11a => {
            let r = md(m, 3);
            Point3::new(div(3 * n - 2 * m - r, 3)?, 0, div(7 * m - 6 * n - 4 * r, 3)?)
        }
        V11b => {
            let r = md(2 * m, 3);
            Point3::new(div(3 * n - 2 * m - 2 * r, 3)?, r, div(7 * m - 6 * n + r, 3)?)
        }
        V11c => {
            let r = md(m, 3);
            Point3::new(div(3 * n - 2 * m - r, 3)?, 0, div(7 * m - 6 * n - r, 3)?)
        }
        V12a => Point3::new(0, 3 * n - 3 * m + 1, 0),
        V12b => Point3::new(0, 0, 3 * m - 3 * n - 1),
        V12c => Point3::new(1, 0, 3 * m - 3 * n + 1),
    };
    if !p.is_non_negative() {
        return Err(CatalogError::FormulaNotApplicable {
            id,
            pair,
            reason: format!("negative coordinate in {p}"),
        });
    }
    Ok(p)
}

/// Formula ids listed for a parametric regime; `V8d` is added for odd `n`.
pub fn regime_ids(regime: Regime) -> Vec<CatalogPointId> {
    use CatalogPointId::*;
    let mut ids: Vec<CatalogPointId> = match regime.kind {
        RegimeKind::Tree => vec![V2, V7a, V7b, V7c, V8c, V10a, V10b, V10c, V11a, V11b, V11c, V12a],
        RegimeKind::Unicyclic => vec![V1, V7a, V7b, V7c, V8c, V10a, V10b, V10c, V11a, V11b, V11c],
        RegimeKind::Bicyclic => vec![
            V1, V3, V7a, V7b, V7c, V8c, V9a, V9b, V9c, V10a, V10b, V10c, V11a, V11b, V11c,
        ],
        RegimeKind::LowDensity { special: false } => {
            vec![V1, V7a, V7b, V7c, V8c, V10a, V10b, V10c, V11a, V11b, V11c, V12b, V12c]
        }
        RegimeKind::LowDensity { special: true } => {
            vec![V1, V7b, V7c, V8c, V10a, V10c, V11a, V11b, V11c, V12b, V12c]
        }
        RegimeKind::HighDensity => vec![V6, V8c, V11a, V11b, V11c, V12b, V12c],
        _ => return Vec::new(),
    };
    if regime.parity == 1 {
        let at = ids.iter().position(|&id| id > V8c).unwrap_or(ids.len());
        ids.insert(at, V8d);
    }
    ids
}

fn family_points(kind: RegimeKind, m: i64) -> Vec<Point3> {
    match kind {
        RegimeKind::Table3CubicFamily => vec![Point3::new(0, 0, m)],
        RegimeKind::Table3NearCubicOddFamily => vec![Point3::new(0, 0, m - 2)],
        RegimeKind::Table3NearCubicEvenFamily => vec![
            Point3::new(0, 0, m - 4),
            Point3::new(0, 0, m - 3),
            Point3::new(0, 1, m - 1),
        ],
        _ => Vec::new(),
    }
}

/// Formula instances for a pair before coinciding points are merged.
pub fn raw_formula_points(pair: ValidPair) -> Vec<(CatalogPointId, Point3)> {
    regime_ids(classify_regime(pair))
        .into_iter()
        .map(|id| {
            let p = table1_point(id, pair).unwrap_or_else(|e| panic!("catalog inconsistency: {e}"));
            (id, p)
        })
        .collect()
}

/// The distinct extreme points of the polytope for `pair`, in lexicographic
/// order, with coinciding formula instances merged.
pub fn extreme_points(pair: ValidPair) -> Vec<LabeledPoint> {
    let regime = classify_regime(pair);
    let mut merged: BTreeMap<Point3, Vec<PointLabel>> = BTreeMap::new();
    match regime.kind {
        RegimeKind::Table3Explicit => {
            let rows = explicit_row(pair.n(), pair.m()).expect("explicit row");
            for &p in rows {
                merged
                    .entry(Point3::from_array(p))
                    .or_default()
                    .push(PointLabel::Explicit);
            }
        }
        kind if !regime.is_parametric() => {
            for p in family_points(kind, pair.m()) {
                merged.entry(p).or_default().push(PointLabel::Explicit);
            }
        }
        _ => {
            for (id, p) in raw_formula_points(pair) {
                merged.entry(p).or_default().push(PointLabel::Formula(id));
            }
        }
    }
    let out: Vec<LabeledPoint> = merged
        .into_iter()
        .map(|(point, labels)| LabeledPoint { labels, point })
        .collect();
    debug_assert!(out.iter().all(|lp| complete_point(pair, lp.point).is_ok()));
    out
}

/// Display name used by the interactive tool, e.g. `P88-V4`.
pub fn tool_name(pair: ValidPair, index: usize) -> String {
    format!("P{}{}-V{}", pair.n(), pair.m(), index + 1)
}

/// One auditable row of the embedded catalog.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "table", rename_all = "snake_case")]
pub enum CatalogRecord {
    Formula {
        id: CatalogPointId,
        m12: &'static str,
        m13: &'static str,
        m33: &'static str,
    },
    Regime {
        regime: RegimeKind,
        parity: u8,
        ids: Vec<CatalogPointId>,
    },
    Explicit {
        n: i64,
        m: i64,
        points: Vec<[i64; 3]>,
    },
    Family {
        parity: &'static str,
        min_n: i64,
        m: &'static str,
        points: Vec<&'static str>,
    },
}

const FORMULA_TEXT: [(&str, &str, &str); 21] = [
    ("0", "0", "0"),
    ("2", "0", "0"),
    ("0", "0", "1"),
    ("0", "0", "5m-6n"),
    ("(6n-5m-3((m-2n) mod 4))/4", "(m-2n) mod 4", "0"),
    ("(6n-5m+(m-2n) mod 4)/4", "0", "(m-2n) mod 4"),
    ("(6n-5m-(2n-m) mod 4)/4", "0", "0"),
    ("0", "(3n-2m-n mod 2)/2", "(4m-3n-3(n mod 2))/2"),
    ("1", "(3n-2m-3)/2", "(4m-3n-1)/2"),
    ("3m-3n-2", "3m-3n-2", "6m-6n-1"),
    ("3m-3n-1", "0", "6m-6n-1"),
    ("0", "3m-3n-2", "6m-6n-3"),
    ("0", "(6n-5m-m mod 3)/3", "0"),
    ("m mod 3", "(6n-5m-4(m mod 3))/3", "0"),
    ("0", "(6n-5m+(2m) mod 3)/3", "(2m) mod 3"),
    ("(3n-2m-m mod 3)/3", "0", "(7m-6n-4(m mod 3))/3"),
    ("(3n-2m-2((2m) mod 3))/3", "(2m) mod 3", "(7m-6n+(2m) mod 3)/3"),
    ("(3n-2m-m mod 3)/3", "0", "(7m-6n-m mod 3)/3"),
    ("0", "3n-3m+1", "0"),
    ("0", "0", "3m-3n-1"),
    ("1", "0", "3m-3n+1"),
];

/// The whole embedded catalog as machine-readable records.
pub fn catalog_table() -> Vec<CatalogRecord> {
    let mut out: Vec<CatalogRecord> = CatalogPointId::ALL
        .iter()
        .zip(FORMULA_TEXT)
        .map(|(&id, (m12, m13, m33))| CatalogRecord::Formula { id, m12, m13, m33 })
        .collect();
    let kinds = [
        RegimeKind::Tree,
        RegimeKind::Unicyclic,
        RegimeKind::Bicyclic,
        RegimeKind::LowDensity { special: false },
        RegimeKind::LowDensity { special: true },
        RegimeKind::HighDensity,
    ];
    for kind in kinds {
        for parity in [0, 1] {
            let regime = Regime { kind, parity };
            out.push(CatalogRecord::Regime {
                regime: kind,
                parity,
                ids: regime_ids(regime),
            });
        }
    }
    for &(n, m, points) in EXPLICIT_ROWS {
        out.push(CatalogRecord::Explicit {
            n,
            m,
            points: points.to_vec(),
        });
    }
    out.push(CatalogRecord::Family {
        parity: "even",
        min_n: 4,
        m: "3n/2",
        points: vec!["(0,0,m)"],
    });
    out.push(CatalogRecord::Family {
        parity: "odd",
        min_n: 5,
        m: "(3n-1)/2",
        points: vec!["(0,0,m-2)"],
    });
    out.push(CatalogRecord::Family {
        parity: "even",
        min_n: 6,
        m: "(3n-2)/2",
        points: vec!["(0,0,m-4)", "(0,0,m-3)", "(0,1,m-1)"],
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edgetype::validate_order_size;
    use CatalogPointId::*;

    fn pair(n: i64, m: i64) -> ValidPair {
        validate_order_size(n, m).unwrap()
    }

    fn points(pair: ValidPair) -> Vec<[i64; 3]> {
        extreme_points(pair).iter().map(|lp| lp.point.to_array()).collect()
    }

    #[test]
    fn classifies_examples() {
        assert_eq!(classify_regime(pair(8, 8)).kind, RegimeKind::Table3Explicit);
        let r = classify_regime(pair(20, 19));
        assert_eq!((r.kind, r.parity), (RegimeKind::Tree, 0));
        assert_eq!(
            classify_regime(pair(11, 13)).kind,
            RegimeKind::LowDensity { special: true }
        );
        assert_eq!(classify_regime(pair(10, 15)).kind, RegimeKind::Table3CubicFamily);
        assert_eq!(classify_regime(pair(9, 13)).kind, RegimeKind::Table3NearCubicOddFamily);
        assert_eq!(
            classify_regime(pair(10, 14)).kind,
            RegimeKind::Table3NearCubicEvenFamily
        );
        assert_eq!(classify_regime(pair(10, 12)).kind, RegimeKind::HighDensity);
        assert_eq!(classify_regime(pair(9, 12)).kind, RegimeKind::HighDensity);
        assert_eq!(classify_regime(pair(4, 5)).kind, RegimeKind::Table3Explicit);
    }

    #[test]
    fn dispatch_is_total() {
        for n in 3..=200 {
            for p in ValidPair::all_with_order(n) {
                let r = classify_regime(p);
                if r.is_parametric() {
                    assert!(in_parametric_regime(p), "{p}");
                } else {
                    assert!(!in_parametric_regime(p), "{p}");
                }
                assert!(!extreme_points(p).is_empty());
            }
        }
    }

    #[test]
    fn formula_examples() {
        assert_eq!(table1_point(V8c, pair(20, 19)).unwrap(), Point3::new(0, 11, 8));
        assert_eq!(table1_point(V1, pair(50, 60)).unwrap(), Point3::ORIGIN);
        assert_eq!(table1_point(V11c, pair(9, 8)).unwrap(), Point3::new(3, 0, 0));
        // V8d for odd trees is (1, (n-1)/2, (n-5)/2).
        assert_eq!(table1_point(V8d, pair(21, 20)).unwrap(), Point3::new(1, 10, 8));
        assert!(matches!(
            table1_point(V8d, pair(20, 19)),
            Err(CatalogError::FormulaNotApplicable { .. })
        ));
        assert!(table1_point(V6, pair(20, 19)).is_err());
    }

    #[test]
    fn small_explicit_rows() {
        assert_eq!(
            points(pair(8, 8)),
            vec![
                [0, 0, 0],
                [0, 2, 0],
                [0, 3, 1],
                [0, 4, 4],
                [2, 0, 0],
                [2, 0, 1],
                [2, 1, 3]
            ]
        );
        assert_eq!(points(pair(7, 9)), vec![[0, 0, 3], [0, 0, 5], [0, 1, 6], [1, 0, 7]]);
        assert_eq!(points(pair(9, 13)), vec![[0, 0, 11]]);
        assert_eq!(points(pair(12, 17)), vec![[0, 0, 13], [0, 0, 14], [0, 1, 16]]);
    }

    #[test]
    fn tree_coincidences_when_n_mod_12_is_4() {
        let eps = extreme_points(pair(16, 15));
        let total: usize = eps.iter().map(|lp| lp.labels.len()).sum();
        assert_eq!(total, 12);
        let v10 = eps.iter().find(|lp| lp.has_id(V10a)).unwrap();
        assert!(v10.has_id(V10b) && v10.has_id(V10c));
        let v11 = eps.iter().find(|lp| lp.has_id(V11a)).unwrap();
        assert!(v11.has_id(V11b) && v11.has_id(V11c));
        assert_eq!(eps.len(), 7);
    }

    #[test]
    fn cardinalities_before_merge() {
        for n in 13..=60 {
            let odd = (n % 2) as usize;
            let cases = [(n - 1, 12), (n, 11), (n + 1, 15)];
            for (m, even_count) in cases {
                let p = pair(n, m);
                assert_eq!(raw_formula_points(p).len(), even_count + odd, "{p}");
            }
        }
        for n in 9..=200 {
            for p in ValidPair::all_with_order(n) {
                if in_parametric_regime(p) {
                    assert!(raw_formula_points(p).len() <= 16);
                    assert!(extreme_points(p).len() <= 16);
                }
            }
        }
    }

    #[test]
    fn every_catalog_point_completes() {
        for n in 3..=150 {
            for p in ValidPair::all_with_order(n) {
                for lp in extreme_points(p) {
                    let q = complete_point(p, lp.point).unwrap_or_else(|e| panic!("{p} {}: {e}", lp.point));
                    assert!(crate::edgetype::check_consistency(&q));
                }
            }
        }
    }

    #[test]
    fn special_low_density_drops_v7a_and_v10b() {
        for n in [11, 12, 15] {
            let ids = regime_ids(classify_regime(pair(n, n + 2)));
            assert!(!ids.contains(&V7a) && !ids.contains(&V10b));
        }
        let ids = regime_ids(classify_regime(pair(13, 15)));
        assert!(ids.contains(&V7a) && ids.contains(&V10b) && ids.contains(&V8d));
    }

    #[test]
    fn id_round_trip_and_table_export() {
        for id in CatalogPointId::ALL {
            assert_eq!(id.as_str().parse::<CatalogPointId>().unwrap(), id);
        }
        let table = catalog_table();
        assert_eq!(table.len(), 21 + 12 + EXPLICIT_ROWS.len() + 3);
        assert_eq!(EXPLICIT_ROWS.len(), 29);
        let json = serde_json::to_string(&table).unwrap();
        assert!(json.contains("\"V11c\""));
    }
}
