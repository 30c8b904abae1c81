//! Fixed relative precision elements of the completion of `Q(√6)` at an
//! inert prime.
//!
//! An element is `p^val * u` with `u` a unit known modulo `p^rel`. A zero
//! is stored with `rel = 0` and means "divisible by `p^val`". Precision is
//! tracked, so any digit the type reports is correct.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::Field;
use super::qf6::QF6;
use super::rational::valuation_rat;
use super::residue::{is_inert, residue_reduce, ResidueElem};
use crate::error::{Error, Result};

/// Default relative precision. `p^16` fits in a `u64` for `p <= 13`.
pub const RELATIVE_PRECISION: u32 = 16;

/// Absolute precision used for exact zeros.
const EXACT_ZERO: i64 = 1 << 20;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Padic {
    pub p: u64,
    pub val: i64,
    pub rel: u32,
    unit: Option<ResidueElem>,
}

impl Padic {
    pub fn zero(p: u64, abs: i64) -> Self {
        Padic { p, val: abs, rel: 0, unit: None }
    }

    /// Embedding of `x`, with relative precision `rel`.
    pub fn from_qf6(x: &QF6, p: u64, rel: u32) -> Result<Self> {
        if !is_inert(p) {
            return Err(Error::NotInert(p));
        }
        if Field::is_zero(x) {
            return Ok(Padic::zero(p, EXACT_ZERO));
        }
        let v = |r: &super::BigRat| if num_traits::Zero::is_zero(r) { i64::MAX } else { valuation_rat(r, p) };
        let val = v(&x.a).min(v(&x.b));
        let scale = QF6::from_rat(super::BigRat::from(num_bigint::BigInt::from(p)).pow(-val as i32));
        let unit = residue_reduce(&(x.clone() * &scale), p, rel)?;
        Ok(Padic { p, val, rel, unit: Some(unit) })
    }

    /// The element is divisible by `p^abs_precision` beyond what is known.
    pub fn abs_precision(&self) -> i64 {
        self.val + self.rel as i64
    }

    /// `p`-adic valuation, `None` for a zero at the working precision.
    pub fn valuation(&self) -> Option<i64> {
        self.unit.as_ref().map(|_| self.val)
    }

    /// Image in `O/p^n O`, when the element is integral and known that far.
    pub fn reduce(&self, n: u32) -> Result<ResidueElem> {
        if self.abs_precision() < n as i64 {
            return Err(Error::Precision(format!("{self} is not known modulo {}^{n}", self.p)));
        }
        match &self.unit {
            None => Ok(ResidueElem::new(self.p, n, 0, 0)),
            Some(_) if self.val < 0 => Err(Error::DenominatorNotUnit(self.p)),
            Some(_) if self.val >= n as i64 => Ok(ResidueElem::new(self.p, n, 0, 0)),
            Some(u) => {
                let s = self.p.pow(self.val as u32) as i128;
                let u = u.truncate(n - self.val as u32);
                Ok(ResidueElem::new(self.p, n, u.a as i128 * s, u.b as i128 * s))
            }
        }
    }

    /// `p^shift * u` reduced modulo `p^n`, for `shift < n`.
    fn spread(&self, shift: u32, n: u32) -> (u128, u128) {
        let u = self.unit.as_ref().expect("nonzero");
        let s = self.p.pow(shift) as u128;
        let m = self.p.pow(n) as u128;
        (u.a as u128 * s % m, u.b as u128 * s % m)
    }
}

impl fmt::Display for Padic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.unit {
            None => write!(f, "O({}^{})", self.p, self.val),
            Some(u) => write!(f, "{}^{} ({} + {}√6) + O({}^{})", self.p, self.val, u.a, u.b, self.p, self.abs_precision()),
        }
    }
}

impl Add for Padic {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self + &o
    }
}

impl<'a> Add<&'a Padic> for Padic {
    type Output = Self;
    fn add(self, o: &Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        let abs = self.abs_precision().min(o.abs_precision());
        let v = match (self.valuation(), o.valuation()) {
            (None, None) => return Padic::zero(self.p, abs),
            (Some(a), None) | (None, Some(a)) => a,
            (Some(a), Some(b)) => a.min(b),
        };
        if abs <= v {
            return Padic::zero(self.p, abs);
        }
        let n = (abs - v) as u32;
        let m = self.p.pow(n) as u128;
        let (mut a, mut b) = (0u128, 0u128);
        for x in [&self, o] {
            if x.unit.is_some() && x.val < abs {
                let (xa, xb) = x.spread((x.val - v) as u32, n);
                a = (a + xa) % m;
                b = (b + xb) % m;
            }
        }
        let sum = ResidueElem::new(self.p, n, a as i128, b as i128);
        let w = sum.valuation();
        if w == n {
            return Padic::zero(self.p, abs);
        }
        let d = self.p.pow(w) as u128;
        let unit = ResidueElem::new(self.p, n - w, (a / d) as i128, (b / d) as i128);
        Padic { p: self.p, val: v + w as i64, rel: n - w, unit: Some(unit) }
    }
}

impl Neg for Padic {
    type Output = Self;
    fn neg(self) -> Self {
        Padic { unit: self.unit.map(|u| -u), ..self }
    }
}

impl Sub for Padic {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + &(-o)
    }
}

impl<'a> Sub<&'a Padic> for Padic {
    type Output = Self;
    fn sub(self, o: &Self) -> Self {
        self + &(-o.clone())
    }
}

impl Mul for Padic {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self * &o
    }
}

impl<'a> Mul<&'a Padic> for Padic {
    type Output = Self;
    fn mul(self, o: &Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        match (&self.unit, &o.unit) {
            (Some(a), Some(b)) => {
                let rel = self.rel.min(o.rel);
                let unit = a.truncate(rel) * b.truncate(rel);
                Padic { p: self.p, val: self.val + o.val, rel, unit: Some(unit) }
            }
            (None, Some(_)) => Padic::zero(self.p, self.val + o.val),
            (Some(_), None) => Padic::zero(self.p, self.val + o.val),
            (None, None) => Padic::zero(self.p, self.val + o.val),
        }
    }
}

impl Field for Padic {
    fn int_like(&self, n: i64) -> Self {
        Padic::from_qf6(&QF6::from_ints(n, 0), self.p, RELATIVE_PRECISION).expect("inert prime")
    }

    fn is_zero(&self) -> bool {
        self.unit.is_none()
    }

    fn inv(&self) -> Option<Self> {
        let u = self.unit.as_ref()?.inv()?;
        Some(Padic { p: self.p, val: -self.val, rel: self.rel, unit: Some(u) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pa(a: i64, b: i64, den: i64) -> Padic {
        let x = QF6::from_ints(a, b) * &QF6::from_rat(crate::exactmath::rat(1, den));
        Padic::from_qf6(&x, 13, 8).unwrap()
    }

    #[test]
    fn arithmetic_matches_exact() {
        let xs = [(1, 2, 1), (13, -26, 1), (5, 1, 169), (-7, 3, 2), (169, 0, 11)];
        for &(a, b, d) in &xs {
            for &(c, e, f) in &xs {
                let x = QF6::from_ints(a, b) * &QF6::from_rat(crate::exactmath::rat(1, d));
                let y = QF6::from_ints(c, e) * &QF6::from_rat(crate::exactmath::rat(1, f));
                let conv = |q: &QF6| Padic::from_qf6(q, 13, 8).unwrap();
                let sum = pa(a, b, d) + &pa(c, e, f);
                let prod = pa(a, b, d) * &pa(c, e, f);
                // compare at the precision each result reports
                let check = |got: &Padic, exact: &QF6| {
                    let want = conv(exact);
                    let k = got.abs_precision().min(want.abs_precision());
                    let shift = -got.val.min(0) + 2;
                    let s = QF6::from_ints(13i64.pow(shift as u32), 0);
                    let g2 = got.clone() * &conv(&s);
                    let w2 = conv(&(exact.clone() * &s));
                    let n = (k + shift) as u32;
                    assert_eq!(g2.reduce(n).unwrap(), w2.reduce(n).unwrap(), "{got} vs {want}");
                };
                check(&sum, &(x.clone() + &y));
                check(&prod, &(x.clone() * &y));
                if !Field::is_zero(&y) {
                    let q = pa(a, b, d) * &pa(c, e, f).inv().unwrap();
                    check(&q, &x.div(&y).unwrap());
                }
            }
        }
    }

    #[test]
    fn cancellation_loses_precision() {
        let x = pa(1, 0, 1);
        let y = pa(1 + 13i64.pow(3), 0, 1);
        let d = y - &x;
        assert_eq!((d.valuation(), d.rel), (Some(3), 5));
        assert!(Field::is_zero(&(x.clone() - &x)));
    }
}
