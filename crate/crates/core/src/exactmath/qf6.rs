//! The real quadratic field `Q(√6)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;
use serde::{Serialize, Serializer};

use super::field::{Field, SqrtField};
use super::rational::{int, is_square_in_q, BigRat};
use crate::error::{Error, Result};

/// `a + b√6` with rational components.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QF6 {
    pub a: BigRat,
    pub b: BigRat,
}

impl QF6 {
    pub fn new(a: BigRat, b: BigRat) -> Self {
        QF6 { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        QF6 { a: int(a), b: int(b) }
    }

    pub fn from_rat(a: BigRat) -> Self {
        QF6 { a, b: int(0) }
    }

    pub fn sqrt6() -> Self {
        QF6::from_ints(0, 1)
    }

    pub fn conj(&self) -> Self {
        QF6 { a: self.a.clone(), b: -self.b.clone() }
    }

    pub fn norm(&self) -> BigRat {
        &self.a * &self.a - int(6) * &self.b * &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn div(&self, other: &QF6) -> Result<QF6> {
        self.try_div(other).ok_or(Error::DivisionByZero)
    }

    /// Real embedding with `√6 > 0`, as an `f64` approximation.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * 6f64.sqrt()
    }

    /// Exact sign in the real embedding with `√6 > 0`.
    pub fn signum(&self) -> i32 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sa == 0 {
            return sb;
        }
        if sb == 0 || sa == sb {
            return sa;
        }
        // opposite signs: compare a^2 with 6 b^2
        let n = self.norm();
        if n.is_positive() {
            sa
        } else {
            sb
        }
    }
}

fn sign(r: &BigRat) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// Serialized as the pair of component strings `["a", "b"]`.
impl Serialize for QF6 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.a.to_string(), self.b.to_string()].serialize(s)
    }
}

/// Returns `r` with `r^2 = x` if `x` is a square in `Q(√6)`.
pub fn is_square_in_qf6(x: &QF6) -> Option<QF6> {
    if Field::is_zero(x) {
        return Some(x.clone());
    }
    if x.b.is_zero() {
        if let Some(r) = is_square_in_q(&x.a) {
            return Some(QF6::from_rat(r));
        }
        return is_square_in_q(&(x.a.clone() / int(6))).map(|r| QF6::new(int(0), r));
    }
    let n = is_square_in_q(&x.norm())?;
    for nn in [n.clone(), -n] {
        let u2 = (x.a.clone() + nn) / int(2);
        if let Some(u) = is_square_in_q(&u2) {
            if !u.is_zero() {
                let v = x.b.clone() / (int(2) * &u);
                return Some(QF6::new(u, v));
            }
        }
    }
    None
}

impl fmt::Display for QF6 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt6", self.b)
        } else if self.b.is_negative() {
            write!(f, "{}-{}*sqrt6", self.a, -self.b.clone())
        } else {
            write!(f, "{}+{}*sqrt6", self.a, self.b)
        }
    }
}

impl Add for QF6 {
    type Output = QF6;
    fn add(self, o: QF6) -> QF6 {
        QF6 { a: self.a + o.a, b: self.b + o.b }
    }
}

impl<'a> Add<&'a QF6> for QF6 {
    type Output = QF6;
    fn add(self, o: &QF6) -> QF6 {
        QF6 { a: self.a + &o.a, b: self.b + &o.b }
    }
}

impl Sub for QF6 {
    type Output = QF6;
    fn sub(self, o: QF6) -> QF6 {
        QF6 { a: self.a - o.a, b: self.b - o.b }
    }
}

impl<'a> Sub<&'a QF6> for QF6 {
    type Output = QF6;
    fn sub(self, o: &QF6) -> QF6 {
        QF6 { a: self.a - &o.a, b: self.b - &o.b }
    }
}

impl<'a> Mul<&'a QF6> for QF6 {
    type Output = QF6;
    fn mul(self, o: &QF6) -> QF6 {
        QF6 {
            a: &self.a * &o.a + int(6) * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

impl Mul for QF6 {
    type Output = QF6;
    fn mul(self, o: QF6) -> QF6 {
        self * &o
    }
}

impl Neg for QF6 {
    type Output = QF6;
    fn neg(self) -> QF6 {
        QF6 { a: -self.a, b: -self.b }
    }
}

impl Field for QF6 {
    fn int_like(&self, n: i64) -> Self {
        QF6::from_ints(n, 0)
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            return None;
        }
        let n = self.norm();
        Some(QF6 { a: self.a.clone() / &n, b: -self.b.clone() / &n })
    }
}

impl SqrtField for QF6 {
    fn sqrt(&self) -> Option<Self> {
        is_square_in_qf6(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::rat;

    #[test]
    fn products() {
        let u = QF6::from_ints(5, 2);
        assert_eq!(u.clone() * u.conj(), QF6::from_ints(1, 0));
        assert_eq!(QF6::from_ints(1, 1).square(), QF6::from_ints(7, 2));
        assert_eq!(u * QF6::from_ints(11, -4), QF6::from_ints(7, 2));
    }

    #[test]
    fn square_roots() {
        let r = is_square_in_qf6(&QF6::from_ints(7, 2)).unwrap();
        assert_eq!(r.square(), QF6::from_ints(7, 2));
        assert_eq!(is_square_in_qf6(&QF6::from_ints(6, 0)), Some(QF6::sqrt6()));
        assert_eq!(is_square_in_qf6(&QF6::from_ints(2, 0)), None);
        // (5 + 2√6)/2 = (1 + √6/2)^2
        let h = QF6::new(rat(5, 2), int(1));
        assert!(is_square_in_qf6(&h).is_some());
    }

    #[test]
    fn division_by_zero() {
        assert!(QF6::from_ints(1, 1).div(&QF6::from_ints(0, 0)).is_err());
    }

    #[test]
    fn real_sign() {
        assert_eq!(QF6::from_ints(-7, 2).signum(), -1);
        assert_eq!(QF6::from_ints(5, -2).signum(), 1);
        assert_eq!(QF6::from_ints(-5, 3).signum(), 1);
    }
}
