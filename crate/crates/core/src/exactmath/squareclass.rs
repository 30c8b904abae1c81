//! Elements modulo squares over `Q` and over `Q(√6)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Serialize, Serializer};

use super::field::Field;
use super::qf6::{is_square_in_qf6, QF6};
use super::rational::{squarefree_class, squarefree_part, BigRat};

/// A class in `Q*/Q*^2` (canonical squarefree representative) or in
/// `Q(√6)*/Q(√6)*^2` (arbitrary representative, compared by predicate).
#[derive(Clone, Debug)]
pub enum SquareClass {
    Rational(BigInt),
    Qf6(QF6),
}

impl SquareClass {
    pub fn of_rational(r: &BigRat) -> Self {
        SquareClass::Rational(squarefree_class(r))
    }

    pub fn of_int(n: i64) -> Self {
        SquareClass::Rational(squarefree_part(&BigInt::from(n)))
    }

    pub fn of_qf6(x: QF6) -> Self {
        assert!(!Field::is_zero(&x), "zero has no square class");
        SquareClass::Qf6(x)
    }

    pub fn as_qf6(&self) -> QF6 {
        match self {
            SquareClass::Rational(d) => QF6::from_rat(BigRat::from_integer(d.clone())),
            SquareClass::Qf6(x) => x.clone(),
        }
    }

    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        match (self, other) {
            (SquareClass::Rational(a), SquareClass::Rational(b)) => {
                SquareClass::Rational(squarefree_part(&(a * b)))
            }
            _ => SquareClass::Qf6(self.as_qf6() * other.as_qf6()),
        }
    }

    /// Equality in the field of the left operand; a rational class compared
    /// with a `Q(√6)` class is compared over `Q(√6)`.
    pub fn same_class(&self, other: &SquareClass) -> bool {
        match (self, other) {
            (SquareClass::Rational(a), SquareClass::Rational(b)) => a == b,
            _ => {
                let q = self.as_qf6().try_div(&other.as_qf6()).expect("nonzero class");
                is_square_in_qf6(&q).is_some()
            }
        }
    }
}

impl PartialEq for SquareClass {
    fn eq(&self, other: &Self) -> bool {
        self.same_class(other)
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SquareClass::Rational(d) => write!(f, "{d}"),
            SquareClass::Qf6(x) => write!(f, "{x}"),
        }
    }
}

impl Serialize for SquareClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_string().serialize(s)
    }
}

/// Image of a rational square class in `Q(√6)*/Q(√6)*^2`, as the unique
/// squarefree integer prime to 3 in that class (6 is a square in `Q(√6)`).
pub fn pushforward_square_class(c: &SquareClass) -> SquareClass {
    match c {
        SquareClass::Rational(d) => {
            let three = BigInt::from(3);
            let d = if d.is_multiple_of(&three) {
                squarefree_part(&(d * BigInt::from(6)))
            } else {
                d.clone()
            };
            SquareClass::Rational(d)
        }
        SquareClass::Qf6(_) => c.clone(),
    }
}

/// Compares two rational classes after pushforward, over `Q(√6)`.
pub fn same_over_qf6(a: &SquareClass, b: &SquareClass) -> bool {
    pushforward_square_class(a).as_qf6().try_div(&pushforward_square_class(b).as_qf6())
        .map(|q| is_square_in_qf6(&q).is_some())
        .unwrap_or(false)
}

/// Removes duplicates from a list of classes under the class predicate,
/// keeping first occurrences.
pub fn dedup_classes(classes: &[SquareClass]) -> Vec<SquareClass> {
    let mut out: Vec<SquareClass> = Vec::new();
    for c in classes {
        if !out.iter().any(|o| o.same_class(c)) {
            out.push(c.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn push(n: i64) -> BigInt {
        match pushforward_square_class(&SquareClass::of_int(n)) {
            SquareClass::Rational(d) => d,
            _ => unreachable!(),
        }
    }

    #[test]
    fn pushforward_examples() {
        assert_eq!(push(6), BigInt::from(1));
        assert_eq!(push(3), BigInt::from(2));
        assert_eq!(push(-1), BigInt::from(-1));
        assert_eq!(push(-6), BigInt::from(-1));
        assert_eq!(push(15), BigInt::from(10));
        assert_eq!(push(30), BigInt::from(5));
    }

    #[test]
    fn qf6_classes() {
        let u = SquareClass::of_qf6(QF6::from_ints(5, 2));
        assert!(u.same_class(&SquareClass::of_int(2)));
        assert!(!u.same_class(&SquareClass::of_int(1)));
        assert!(!SquareClass::of_int(-1).same_class(&SquareClass::of_qf6(QF6::from_ints(1, 0))));
    }
}
