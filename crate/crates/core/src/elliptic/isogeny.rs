//! 2-isogenies with kernel `{O, (0,0)}` on `y^2 = x(x^2 + a x + b)`.

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::Zero;
use serde::Serialize;

use super::curve::{Curve, Point};
use crate::error::{Error, Result};
use crate::exactmath::{BigRat, Field};

/// `y^2 = x(x^2 + a x + b)` over `Q` with integer `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TwoTorsionForm {
    pub a: i64,
    pub b: i64,
}

impl TwoTorsionForm {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if b == 0 || a * a - 4 * b == 0 {
            return Err(Error::Singular(format!("y^2 = x(x^2 + {a} x + {b})")));
        }
        Ok(TwoTorsionForm { a, b })
    }

    pub fn curve(&self) -> Curve<BigRat> {
        Curve::cubic(BigRat::from(BigInt::from(self.a)), BigRat::from(BigInt::from(self.b)), BigRat::zero())
            .expect("nonsingular by construction")
    }

    /// `x(x - e1)(x - e2)`, i.e. `a = -(e1 + e2)`, `b = e1 e2`.
    pub fn from_roots(e1: i64, e2: i64) -> Result<Self> {
        TwoTorsionForm::new(-(e1 + e2), e1 * e2)
    }

    /// Moves the 2-torsion point `(e, 0)` to the origin.
    pub fn translate_root(&self, e: i64) -> Result<Self> {
        // x -> x + e in x^3 + a x^2 + b x
        let c2 = 3 * e + self.a;
        let c1 = 3 * e * e + 2 * self.a * e + self.b;
        let c0 = e * e * e + self.a * e * e + self.b * e;
        if c0 != 0 {
            return Err(Error::InvalidArgument(format!("{e} is not a root")));
        }
        TwoTorsionForm::new(c2, c1)
    }

    /// Integer roots of `x^2 + a x + b`, if rational.
    pub fn other_roots(&self) -> Option<(i64, i64)> {
        let d = self.a * self.a - 4 * self.b;
        if d < 0 {
            return None;
        }
        let s = d.sqrt();
        if s * s != d || (-self.a + s) % 2 != 0 {
            return None;
        }
        Some(((-self.a - s) / 2, (-self.a + s) / 2))
    }

    /// The standard isogenous curve `Y^2 = X(X^2 - 2a X + a^2 - 4b)`,
    /// rescaled by `u = 2` when that keeps integral coefficients.
    pub fn isogenous(&self) -> (TwoTorsionForm, i64) {
        let (a2, b2) = (-2 * self.a, self.a * self.a - 4 * self.b);
        if a2 % 4 == 0 && b2 % 16 == 0 {
            (TwoTorsionForm { a: a2 / 4, b: b2 / 16 }, 2)
        } else {
            (TwoTorsionForm { a: a2, b: b2 }, 1)
        }
    }
}

/// `phi(x, y) = (y^2 / (u^2 x^2), y (x^2 - b) / (u^3 x^2))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoIsogeny {
    pub domain: TwoTorsionForm,
    pub codomain: TwoTorsionForm,
    pub scale: i64,
}

pub fn two_isogeny(domain: &TwoTorsionForm) -> TwoIsogeny {
    let (codomain, scale) = domain.isogenous();
    TwoIsogeny { domain: domain.clone(), codomain, scale }
}

impl TwoIsogeny {
    pub fn dual(&self) -> TwoIsogeny {
        two_isogeny(&self.codomain)
    }

    pub fn apply(&self, p: &Point<BigRat>) -> Point<BigRat> {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                if Field::is_zero(x) {
                    return Point::Infinity;
                }
                let u = BigRat::from(BigInt::from(self.scale));
                let x2 = x.clone() * x;
                let b = BigRat::from(BigInt::from(self.domain.b));
                let xx = y.clone() * y / (x2.clone() * &u * &u);
                let yy = y.clone() * (x2.clone() - b) / (x2 * &u * &u * &u);
                let q = Point::Affine(xx, yy);
                debug_assert!(self.codomain.curve().contains(&q));
                q
            }
        }
    }

    /// Human-readable formula of the map.
    pub fn formula(&self) -> String {
        let u = self.scale;
        format!(
            "(y^2/({}x^2), y(x^2 - {})/({}x^2))",
            u * u,
            self.domain.b,
            u * u * u
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::int;

    #[test]
    fn e2_prime_to_e2() {
        let e2p = TwoTorsionForm::new(-116, 2500).unwrap();
        let phi = two_isogeny(&e2p);
        assert_eq!(phi.codomain, TwoTorsionForm::new(58, 216).unwrap());
        assert_eq!(phi.formula(), "(y^2/(4x^2), y(x^2 - 2500)/(8x^2))");
    }

    #[test]
    fn e4_prime_to_e4() {
        let e4p = TwoTorsionForm::new(54, 9).unwrap();
        let phi = two_isogeny(&e4p);
        assert_eq!(phi.codomain, TwoTorsionForm::from_roots(12, 15).unwrap());
        assert_eq!(phi.formula(), "(y^2/(4x^2), y(x^2 - 9)/(8x^2))");
    }

    #[test]
    fn kernel_and_composition() {
        let e4 = TwoTorsionForm::from_roots(12, 15).unwrap();
        let phi = two_isogeny(&e4);
        let psi = phi.dual();
        assert_eq!(psi.codomain, e4);
        let c = e4.curve();
        assert_eq!(phi.apply(&Point::Affine(int(0), int(0))), Point::Infinity);
        let g = c.point(int(10), int(10)).unwrap();
        let two_g = c.add(&g, &g);
        let back = psi.apply(&phi.apply(&g));
        assert!(back == two_g || back == c.neg(&two_g));
    }
}
