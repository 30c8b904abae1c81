//! Residue rings `O/p^n O` for `O = Z[√6]` and `p` inert.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use super::field::Field;
use super::qf6::QF6;
use super::rational::{inv_mod, is_prime, pow_mod, rat_mod, BigRat};
use crate::error::{Error, Result};

/// `p` is inert in `Q(√6)` iff it is odd, does not divide 6 and 6 is a
/// non-residue mod `p`.
pub fn is_inert(p: u64) -> bool {
    is_prime(p) && p > 3 && pow_mod(6, (p - 1) / 2, p) == p - 1
}

/// Class of `a + b√6` in `O/p^n O`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct ResidueElem {
    pub p: u64,
    pub n: u32,
    pub a: u64,
    pub b: u64,
}

impl ResidueElem {
    pub fn modulus(&self) -> u64 {
        self.p.pow(self.n)
    }

    /// Builds an element from raw components, reducing them. Panics if `p`
    /// is not inert; use [`residue_reduce`] for checked construction.
    pub fn new(p: u64, n: u32, a: i128, b: i128) -> Self {
        assert!(is_inert(p), "{p} is not inert");
        let m = p.pow(n) as i128;
        ResidueElem { p, n, a: a.rem_euclid(m) as u64, b: b.rem_euclid(m) as u64 }
    }

    pub fn norm(&self) -> u64 {
        let m = self.modulus() as u128;
        let a = self.a as u128;
        let b = self.b as u128;
        ((a * a % m + m - 6 * (b * b % m) % m) % m) as u64
    }

    pub fn is_unit(&self) -> bool {
        self.norm() % self.p != 0
    }

    /// Valuation `min(v_p(a), v_p(b))`, capped at `n`.
    pub fn valuation(&self) -> u32 {
        let mut v = 0;
        let mut q = self.p;
        while v < self.n && self.a % q == 0 && self.b % q == 0 {
            v += 1;
            q = q.saturating_mul(self.p);
        }
        v
    }

    /// True when the element lies in the image of `Z/p^n Z`.
    pub fn is_rational(&self) -> bool {
        self.b == 0
    }

    /// Reduction to a lower precision `k <= n`.
    pub fn truncate(&self, k: u32) -> Self {
        let m = self.p.pow(k);
        ResidueElem { p: self.p, n: k, a: self.a % m, b: self.b % m }
    }

    /// Signed representative of a component in `(-m/2, m/2]`.
    pub fn signed(v: u64, m: u64) -> i64 {
        if v > m / 2 {
            v as i64 - m as i64
        } else {
            v as i64
        }
    }

    fn with(&self, a: u128, b: u128) -> Self {
        let m = self.modulus() as u128;
        ResidueElem { p: self.p, n: self.n, a: (a % m) as u64, b: (b % m) as u64 }
    }

    fn check(&self, o: &Self) {
        debug_assert!(self.p == o.p && self.n == o.n, "mixed residue rings");
    }
}

/// Ring homomorphism `O_(p) -> O/p^n O`.
pub fn residue_reduce(x: &QF6, p: u64, n: u32) -> Result<ResidueElem> {
    if !is_inert(p) {
        return Err(Error::NotInert(p));
    }
    let m = p.pow(n);
    let a = reduce_rat(&x.a, p, m)?;
    let b = reduce_rat(&x.b, p, m)?;
    Ok(ResidueElem { p, n, a, b })
}

fn reduce_rat(r: &BigRat, p: u64, m: u64) -> Result<u64> {
    rat_mod(r, m).ok_or(Error::DenominatorNotUnit(p))
}

impl fmt::Display for ResidueElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}) mod {}^{}", self.a, self.b, self.p, self.n)
    }
}

impl Add for ResidueElem {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self + &o
    }
}

impl<'a> Add<&'a ResidueElem> for ResidueElem {
    type Output = Self;
    fn add(self, o: &Self) -> Self {
        self.check(o);
        self.with(self.a as u128 + o.a as u128, self.b as u128 + o.b as u128)
    }
}

impl Sub for ResidueElem {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self - &o
    }
}

impl<'a> Sub<&'a ResidueElem> for ResidueElem {
    type Output = Self;
    fn sub(self, o: &Self) -> Self {
        self.check(o);
        let m = self.modulus() as u128;
        self.with(self.a as u128 + m - o.a as u128, self.b as u128 + m - o.b as u128)
    }
}

impl Mul for ResidueElem {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self * &o
    }
}

impl<'a> Mul<&'a ResidueElem> for ResidueElem {
    type Output = Self;
    fn mul(self, o: &Self) -> Self {
        self.check(o);
        let m = self.modulus() as u128;
        let (a1, b1, a2, b2) = (self.a as u128, self.b as u128, o.a as u128, o.b as u128);
        let a = (a1 * a2 % m + 6 * (b1 * b2 % m)) % m;
        let b = (a1 * b2 % m + b1 * a2 % m) % m;
        self.with(a, b)
    }
}

impl Neg for ResidueElem {
    type Output = Self;
    fn neg(self) -> Self {
        let m = self.modulus() as u128;
        self.with(m - self.a as u128, m - self.b as u128)
    }
}

impl Field for ResidueElem {
    fn int_like(&self, n: i64) -> Self {
        let m = self.modulus() as i128;
        ResidueElem { p: self.p, n: self.n, a: (n as i128).rem_euclid(m) as u64, b: 0 }
    }

    fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    fn inv(&self) -> Option<Self> {
        let m = self.modulus();
        let ni = inv_mod(self.norm(), m)? as u128;
        let mm = m as u128;
        Some(self.with(self.a as u128 * ni, (mm - self.b as u128) * ni))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::rat;

    #[test]
    fn inert_primes() {
        assert!(is_inert(11) && is_inert(13) && is_inert(7) && is_inert(17));
        assert!(!is_inert(5) && !is_inert(19) && !is_inert(2) && !is_inert(3));
    }

    #[test]
    fn reductions() {
        let z = residue_reduce(&QF6::from_ints(11, -55), 11, 2).unwrap();
        assert_eq!((z.a, z.b), (11, 66));
        let h = residue_reduce(&QF6::from_rat(rat(1, 2)), 13, 1).unwrap();
        assert_eq!((h.a, h.b), (7, 0));
        let s = residue_reduce(&QF6::sqrt6(), 11, 1).unwrap();
        assert_eq!(s.square(), ResidueElem::new(11, 1, 6, 0));
        assert_eq!(residue_reduce(&QF6::from_ints(1, 0), 5, 1), Err(Error::NotInert(5)));
        assert_eq!(
            residue_reduce(&QF6::from_rat(rat(1, 11)), 11, 1),
            Err(Error::DenominatorNotUnit(11))
        );
    }

    #[test]
    fn inverses() {
        let x = ResidueElem::new(13, 3, 5, 7);
        let y = x.inv().unwrap();
        assert_eq!(x * y, ResidueElem::new(13, 3, 1, 0));
        assert!(ResidueElem::new(11, 2, 11, 22).inv().is_none());
        assert_eq!(ResidueElem::new(11, 2, 11, 22).valuation(), 1);
    }
}
