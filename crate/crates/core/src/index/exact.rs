//! Exact sums of rational multiples of square roots.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};

pub type Rational = Ratio<i128>;

/// `sum q_r * sqrt(r)` over square-free radicands `r`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Surd {
    terms: BTreeMap<u64, Rational>,
}

fn square_free_split(mut r: u64) -> (u64, u64) {
    // r = outer^2 * inner with inner square-free
    let mut outer = 1u64;
    let mut f = 2u64;
    while f * f <= r {
        while r.is_multiple_of(f * f) {
            r /= f * f;
            outer *= f;
        }
        f += 1;
    }
    (outer, r)
}

impl Surd {
    pub fn zero() -> Self {
        Surd::default()
    }

    pub fn rational(q: Rational) -> Self {
        Surd::scaled_root(q, 1)
    }

    pub fn integer(k: i128) -> Self {
        Surd::rational(Rational::from_integer(k))
    }

    /// `q * sqrt(radicand)`.
    pub fn scaled_root(q: Rational, radicand: u64) -> Self {
        let mut s = Surd::zero();
        if radicand == 0 || q.is_zero() {
            return s;
        }
        let (outer, inner) = square_free_split(radicand);
        s.terms.insert(inner, q * Rational::from_integer(outer as i128));
        s
    }

    /// `sqrt(q)` for a non-negative rational `q = a/b`, written `sqrt(a b) / b`.
    pub fn sqrt_of(q: Rational) -> Option<Self> {
        if q.is_negative() {
            return None;
        }
        let a = u64::try_from(*q.numer()).ok()?;
        let b = u64::try_from(*q.denom()).ok()?;
        let ab = a.checked_mul(b)?;
        Some(Surd::scaled_root(Rational::new(1, b as i128), ab))
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&1).copied(),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(&r, q)| q.to_f64().unwrap_or(f64::NAN) * (r as f64).sqrt())
            .sum()
    }

    fn cleaned(mut self) -> Self {
        self.terms.retain(|_, q| !q.is_zero());
        self
    }
}

impl Add for Surd {
    type Output = Surd;
    fn add(mut self, rhs: Surd) -> Surd {
        for (r, q) in rhs.terms {
            *self.terms.entry(r).or_insert_with(Rational::zero) += q;
        }
        self.cleaned()
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(mut self) -> Surd {
        for q in self.terms.values_mut() {
            *q = -*q;
        }
        self
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(self, rhs: Surd) -> Surd {
        self + (-rhs)
    }
}

impl Mul<Rational> for Surd {
    type Output = Surd;
    fn mul(mut self, k: Rational) -> Surd {
        for q in self.terms.values_mut() {
            *q *= k;
        }
        self.cleaned()
    }
}

impl Mul<i128> for Surd {
    type Output = Surd;
    fn mul(self, k: i128) -> Surd {
        self * Rational::from_integer(k)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (r, q)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(if q.is_negative() { " - " } else { " + " })?;
            } else if q.is_negative() {
                f.write_str("-")?;
            }
            let mag = q.abs();
            match (*r, mag == Rational::from_integer(1)) {
                (1, _) => write!(f, "{mag}")?,
                (r, true) => write!(f, "sqrt({r})")?,
                (r, false) => write!(f, "{mag}*sqrt({r})")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_roots_reduce() {
        let s = Surd::sqrt_of(Rational::from_integer(18)).unwrap();
        assert_eq!(s, Surd::scaled_root(Rational::from_integer(3), 2));
        let t = Surd::sqrt_of(Rational::new(1, 6)).unwrap();
        assert_eq!(t, Surd::scaled_root(Rational::new(1, 6), 6));
        assert!((t.to_f64() - 1.0 / 6f64.sqrt()).abs() < 1e-15);
        assert!(Surd::sqrt_of(Rational::from_integer(-1)).is_none());
    }

    #[test]
    fn arithmetic_cancels() {
        let a = Surd::scaled_root(Rational::new(1, 2), 2) + Surd::integer(1);
        let b = a.clone() - a;
        assert_eq!(b, Surd::zero());
        assert_eq!(b.as_rational(), Some(Rational::zero()));
        let c = Surd::integer(2) * Rational::new(1, 36);
        assert_eq!(c.as_rational(), Some(Rational::new(1, 18)));
        assert_eq!(
            (Surd::integer(5) * Rational::new(1, 6) - Surd::scaled_root(Rational::new(1, 3), 6)).to_string(),
            "5/6 - 1/3*sqrt(6)"
        );
    }
}
