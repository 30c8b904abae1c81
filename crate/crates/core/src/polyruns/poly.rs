use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::exactmath::rational::isqrt_exact;

/// Where the axis of symmetry sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axis {
    /// `f(x) = a x^2 + c`, symmetric about `0`
    Integer,
    /// `f(x) = a (x^2 + x) + c`, symmetric about `-1/2`
    Half,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SymQuadPoly {
    pub axis: Axis,
    #[serde(serialize_with = "ser_int")]
    pub a: BigInt,
    #[serde(serialize_with = "ser_int")]
    pub c: BigInt,
}

/// Integers as JSON numbers when they fit, as strings otherwise.
pub fn ser_int<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match n.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&n.to_string()),
    }
}

fn ser_ints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for n in v {
        match n.to_i64() {
            Some(x) => seq.serialize_element(&x)?,
            None => seq.serialize_element(&n.to_string())?,
        }
    }
    seq.end()
}

impl SymQuadPoly {
    pub fn new(axis: Axis, a: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        SymQuadPoly { axis, a: a.into(), c: c.into() }
    }

    pub fn integer(a: i64, c: i64) -> Self {
        Self::new(Axis::Integer, a, c)
    }

    pub fn half(a: i64, c: i64) -> Self {
        Self::new(Axis::Half, a, c)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        match self.axis {
            Axis::Integer => &self.a * x * x + &self.c,
            Axis::Half => &self.a * (x * x + x) + &self.c,
        }
    }

    /// Whether `f` is the square of a polynomial with integer coefficients.
    pub fn is_polynomial_square(&self) -> bool {
        match self.axis {
            Axis::Integer => self.c.is_zero() && isqrt_exact(&self.a).is_some(),
            Axis::Half => self.a == &self.c * 4 && isqrt_exact(&self.c).is_some(),
        }
    }

    /// Neither constant nor a polynomial square.
    pub fn is_nondegenerate(&self) -> bool {
        !self.a.is_zero() && !self.is_polynomial_square()
    }

    /// The largest `k` with `k^2 | gcd(a, c)`.
    pub fn square_content(&self) -> BigInt {
        let g = self.a.gcd(&self.c);
        if g.is_zero() {
            return BigInt::one();
        }
        let mut k = BigInt::one();
        let mut rest = g;
        let mut p = BigInt::from(2);
        while &p * &p <= rest {
            while (&rest % (&p * &p)).is_zero() {
                rest /= &p * &p;
                k *= &p;
            }
            while (&rest % &p).is_zero() {
                rest /= &p;
            }
            p += 1;
        }
        k
    }

    /// `(a, c) / k^2` for the largest such `k`.
    pub fn square_reduced(&self) -> Self {
        let k2 = self.square_content().pow(2);
        SymQuadPoly { axis: self.axis, a: &self.a / &k2, c: &self.c / &k2 }
    }

    pub fn is_square_reduced(&self) -> bool {
        self.square_content().is_one()
    }

    /// Equal up to multiplying both coefficients by a rational square.
    pub fn square_equivalent(&self, other: &Self) -> bool {
        self.axis == other.axis && self.square_reduced() == other.square_reduced()
    }

    /// Largest symmetric run of squares, capped at `cap` (if it is reached
    /// the run may be longer).
    pub fn max_run(&self, cap: usize) -> usize {
        let mut best = 0;
        let mut k = 0i64;
        loop {
            let n = match self.axis {
                Axis::Integer => 2 * k as usize + 1,
                Axis::Half => 2 * k as usize + 2,
            };
            if n > cap || isqrt_exact(&self.eval(&BigInt::from(k))).is_none() {
                return best;
            }
            best = n;
            k += 1;
        }
    }
}

impl fmt::Display for SymQuadPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.axis {
            Axis::Integer => write!(f, "{}x^2 + {}", self.a, self.c),
            Axis::Half => write!(f, "{}(x^2 + x) + {}", self.a, self.c),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunWitness {
    #[serde(flatten)]
    pub poly: SymQuadPoly,
    pub r: i64,
    #[serde(rename = "N")]
    pub n: usize,
    /// square roots of `f(r + k)` for the first half of the window
    #[serde(serialize_with = "ser_ints")]
    pub roots: Vec<BigInt>,
    /// whether `(a, c)` is free of common square factors
    pub square_reduced: bool,
}

impl RunWitness {
    /// Re-checks every value of the window.
    pub fn verify(&self) -> bool {
        let f = &self.poly;
        let half = self.roots.len() as i64;
        (0..self.n as i64).all(|k| {
            let x = BigInt::from(self.r + k);
            let i = if k < half { half - 1 - k } else { k - half + (self.n as i64 % 2) };
            let root = self.roots.get(i as usize);
            root.is_some_and(|rt| f.eval(&x) == rt * rt)
        })
    }
}

/// Half-width of the window: values at `0..=s` determine the run.
fn half_width(axis: Axis, n: usize) -> Option<i64> {
    match (axis, n % 2) {
        (Axis::Integer, 1) => Some((n as i64 - 1) / 2),
        (Axis::Half, 0) if n >= 2 => Some(n as i64 / 2 - 1),
        _ => None,
    }
}

/// Checks `f` on the symmetric window of length `n`. A window whose parity
/// does not match the axis has no centre and yields `None`.
pub fn square_run_check(f: &SymQuadPoly, n: usize) -> Option<RunWitness> {
    let s = half_width(f.axis, n)?;
    let roots: Option<Vec<BigInt>> =
        (0..=s).map(|k| isqrt_exact(&f.eval(&BigInt::from(k))).map(|r| r.abs())).collect();
    let roots = roots?;
    let r = match f.axis {
        Axis::Integer => -s,
        Axis::Half => -s - 1,
    };
    Some(RunWitness { poly: f.clone(), r, n, roots, square_reduced: f.is_square_reduced() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn examples() {
        let w = square_run_check(&SymQuadPoly::half(4, 1), 10).unwrap();
        assert_eq!(w.roots, ints(&[1, 3, 5, 7, 9]));
        assert_eq!(w.r, -5);
        assert!(w.verify());
        assert!(square_run_check(&SymQuadPoly::half(1, 3), 2).is_none());
        let w = square_run_check(&SymQuadPoly::half(24, 1), 4).unwrap();
        assert_eq!(w.roots, ints(&[1, 7]));
        assert!(w.verify());
    }

    #[test]
    fn parity_mismatch() {
        assert!(square_run_check(&SymQuadPoly::half(4, 1), 5).is_none());
        assert!(square_run_check(&SymQuadPoly::integer(1, 1), 4).is_none());
        assert!(square_run_check(&SymQuadPoly::integer(3, 1), 3).is_some());
    }

    #[test]
    fn degeneracy() {
        assert!(SymQuadPoly::half(4, 1).is_polynomial_square());
        assert!(SymQuadPoly::integer(9, 0).is_polynomial_square());
        assert!(!SymQuadPoly::integer(3, 1).is_polynomial_square());
        assert!(!SymQuadPoly::half(0, 1).is_nondegenerate());
    }

    #[test]
    fn square_reduction() {
        let f = SymQuadPoly::integer(72, 36);
        assert_eq!(f.square_content(), BigInt::from(6));
        assert_eq!(f.square_reduced(), SymQuadPoly::integer(2, 1));
        assert!(f.square_equivalent(&SymQuadPoly::integer(8, 4)));
        assert!(!f.square_equivalent(&SymQuadPoly::half(2, 1)));
        assert_eq!(SymQuadPoly::integer(-8, 0).square_reduced(), SymQuadPoly::integer(-2, 0));
    }

    #[test]
    fn max_run() {
        assert_eq!(SymQuadPoly::half(24, 1).max_run(100), 4);
        assert_eq!(SymQuadPoly::half(4, 1).max_run(20), 20);
        assert_eq!(SymQuadPoly::half(1, 3).max_run(20), 0);
    }
}
