//! Arbitrary-precision rationals and the integer helpers built on them.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{Field, SqrtField};

/// Reduced fraction with positive denominator; `0` is stored as `0/1`.
pub type BigRat = BigRational;

pub fn int(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

impl Field for BigRat {
    fn int_like(&self, n: i64) -> Self {
        int(n)
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl SqrtField for BigRat {
    fn sqrt(&self) -> Option<Self> {
        is_square_in_q(self)
    }
}

/// Square root of a non-negative integer when it is a perfect square.
pub fn isqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Returns `s` with `s^2 = r` when `r` is the square of a rational.
pub fn is_square_in_q(r: &BigRat) -> Option<BigRat> {
    let n = isqrt_exact(r.numer())?;
    let d = isqrt_exact(r.denom())?;
    Some(BigRat::new(n, d))
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    assert!(!n.is_zero(), "valuation of zero");
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// p-adic valuation of a nonzero rational.
pub fn valuation_rat(r: &BigRat, p: u64) -> i64 {
    valuation(r.numer(), p) as i64 - valuation(r.denom(), p) as i64
}

/// Trial-division factorization of `|n|`, `n != 0`. Only meant for the
/// small discriminants and coefficients appearing in this crate.
pub fn factor(n: &BigInt) -> Vec<(BigInt, u32)> {
    assert!(!n.is_zero(), "factor of zero");
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::from(2u32);
    while &d * &d <= n {
        let mut e = 0;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        if e > 0 {
            out.push((d.clone(), e));
        }
        d += if d == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    if !n.is_one() {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: &BigInt) -> Vec<u64> {
    factor(n)
        .into_iter()
        .map(|(p, _)| p.to_u64().expect("prime fits in u64"))
        .collect()
}

/// Signed squarefree part of a nonzero integer: `n = s * m^2` with `s` squarefree.
pub fn squarefree_part(n: &BigInt) -> BigInt {
    let mut s = if n.sign() == Sign::Minus {
        BigInt::from(-1)
    } else {
        BigInt::one()
    };
    for (p, e) in factor(n) {
        if e % 2 == 1 {
            s *= p;
        }
    }
    s
}

/// Squarefree integer in the same `Q*/Q*^2` class as `r`.
pub fn squarefree_class(r: &BigRat) -> BigInt {
    squarefree_part(&(r.numer() * r.denom()))
}

/// All squarefree divisors of `n` with both signs, sorted.
pub fn signed_squarefree_divisors(n: &BigInt) -> Vec<BigInt> {
    let primes: Vec<BigInt> = factor(n).into_iter().map(|(p, _)| p).collect();
    let mut divs = vec![BigInt::one()];
    for p in &primes {
        let extra: Vec<BigInt> = divs.iter().map(|d| d * p).collect();
        divs.extend(extra);
    }
    let mut all: Vec<BigInt> = divs.iter().cloned().chain(divs.iter().map(|d| -d)).collect();
    all.sort();
    all
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `a^e mod m` for machine-sized operands.
pub fn pow_mod(a: u64, mut e: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut base = (a % m) as u128;
    let mut acc = 1u128 % m128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m128;
        }
        base = base * base % m128;
        e >>= 1;
    }
    acc as u64
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let g = num_integer::Integer::extended_gcd(&(a as i128), &(m as i128));
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(m as i128) as u64)
}

/// Reduces a rational with denominator prime to `m` into `Z/mZ`.
pub fn rat_mod(r: &BigRat, m: u64) -> Option<u64> {
    let mb = BigInt::from(m);
    let n = r.numer().mod_floor(&mb).to_u64().unwrap();
    let d = r.denom().mod_floor(&mb).to_u64().unwrap();
    inv_mod(d, m).map(|di| ((n as u128 * di as u128) % m as u128) as u64)
}

pub fn lcm_all(values: impl IntoIterator<Item = BigInt>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(&v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_squares() {
        assert_eq!(is_square_in_q(&int(225)), Some(int(15)));
        assert_eq!(is_square_in_q(&int(6)), None);
        assert_eq!(is_square_in_q(&rat(18225, 81)), Some(int(15)));
        assert_eq!(is_square_in_q(&int(-4)), None);
        assert_eq!(is_square_in_q(&int(0)), Some(int(0)));
    }

    #[test]
    fn squarefree_classes() {
        assert_eq!(squarefree_part(&big(216)), big(6));
        assert_eq!(squarefree_part(&big(-54)), big(-6));
        assert_eq!(squarefree_part(&big(180)), big(5));
        assert_eq!(squarefree_class(&rat(5, 6)), big(30));
    }

    #[test]
    fn divisors_of_180() {
        let d = signed_squarefree_divisors(&big(180));
        assert_eq!(d.len(), 16);
        assert!(d.contains(&big(-30)) && d.contains(&big(15)));
    }

    #[test]
    fn modular_helpers() {
        assert_eq!(rat_mod(&rat(1, 2), 13), Some(7));
        assert_eq!(inv_mod(11, 121), None);
        assert_eq!(pow_mod(6, 5, 11), 10);
    }
}
