//! The prime field `F_q`, and reductions of `Z[√6]` at split primes.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use super::field::Field;
use super::qf6::QF6;
use super::rational::{inv_mod, is_prime, pow_mod, rat_mod};
use crate::error::{Error, Result};

/// `q` splits in `Q(√6)`: odd, prime to 6 and 6 a residue mod `q`.
pub fn is_split(q: u64) -> bool {
    is_prime(q) && q > 3 && pow_mod(6, (q - 1) / 2, q) == 1
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Fp {
    pub q: u64,
    pub v: u64,
}

impl Fp {
    pub fn new(q: u64, v: i128) -> Self {
        Fp { q, v: v.rem_euclid(q as i128) as u64 }
    }

    pub fn elements(q: u64) -> Vec<Fp> {
        (0..q).map(|v| Fp { q, v }).collect()
    }
}

/// The two square roots of 6 mod a split `q`, smaller first.
pub fn sqrt6_mod(q: u64) -> Result<[u64; 2]> {
    if !is_split(q) {
        return Err(Error::InvalidArgument(format!("{q} does not split")));
    }
    let r = (1..q).find(|r| r * r % q == 6 % q).expect("6 is a residue");
    Ok([r.min(q - r), r.max(q - r)])
}

/// The homomorphism `Z[√6]_(q) -> F_q` sending `√6` to `root`.
pub fn split_reduce(x: &QF6, q: u64, root: u64) -> Result<Fp> {
    debug_assert_eq!(root * root % q, 6 % q);
    let a = rat_mod(&x.a, q).ok_or(Error::DenominatorNotUnit(q))?;
    let b = rat_mod(&x.b, q).ok_or(Error::DenominatorNotUnit(q))?;
    Ok(Fp { q, v: ((a as u128 + b as u128 * root as u128) % q as u128) as u64 })
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.v, self.q)
    }
}

impl Add for Fp {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self + &o
    }
}

impl<'a> Add<&'a Fp> for Fp {
    type Output = Self;
    fn add(self, o: &Self) -> Self {
        Fp { q: self.q, v: (self.v + o.v) % self.q }
    }
}

impl Sub for Fp {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self - &o
    }
}

impl<'a> Sub<&'a Fp> for Fp {
    type Output = Self;
    fn sub(self, o: &Self) -> Self {
        Fp { q: self.q, v: (self.v + self.q - o.v) % self.q }
    }
}

impl Mul for Fp {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self * &o
    }
}

impl<'a> Mul<&'a Fp> for Fp {
    type Output = Self;
    fn mul(self, o: &Self) -> Self {
        Fp { q: self.q, v: ((self.v as u128 * o.v as u128) % self.q as u128) as u64 }
    }
}

impl Neg for Fp {
    type Output = Self;
    fn neg(self) -> Self {
        Fp { q: self.q, v: (self.q - self.v) % self.q }
    }
}

impl Field for Fp {
    fn int_like(&self, n: i64) -> Self {
        Fp::new(self.q, n as i128)
    }

    fn is_zero(&self) -> bool {
        self.v == 0
    }

    fn inv(&self) -> Option<Self> {
        inv_mod(self.v, self.q).map(|v| Fp { q: self.q, v })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_roots() {
        assert!(is_split(5) && is_split(19) && is_split(23) && !is_split(11));
        assert_eq!(sqrt6_mod(19).unwrap(), [5, 14]);
        let x = QF6::from_ints(3, 2);
        for r in sqrt6_mod(19).unwrap() {
            let y = split_reduce(&x, 19, r).unwrap();
            // the reduction respects multiplication
            assert_eq!(split_reduce(&(x.clone() * &x), 19, r).unwrap(), y * y);
        }
    }
}
