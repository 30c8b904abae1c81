use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

/// Exact scalar arithmetic shared by curves, polynomials and power series.
///
/// Residue rings `O/p^n O` implement this trait as well; for them `inv`
/// returns `None` on non-units, so "field" is a slight abuse of language
/// for `n > 1`. Constants are produced relative to an existing element
/// (`int_like`) because residue elements carry their modulus at runtime.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    /// The image of the integer `n` in the same ring as `self`.
    fn int_like(&self, n: i64) -> Self;

    fn is_zero(&self) -> bool;

    /// Multiplicative inverse, or `None` when `self` is not a unit.
    fn inv(&self) -> Option<Self>;

    fn zero_like(&self) -> Self {
        self.int_like(0)
    }

    fn one_like(&self) -> Self {
        self.int_like(1)
    }

    fn try_div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.clone() * i)
    }

    fn square(&self) -> Self {
        self.clone() * self
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }
}

/// Fields where square roots can be decided exactly.
pub trait SqrtField: Field {
    /// A square root when `self` is a square in the field.
    fn sqrt(&self) -> Option<Self>;
}
