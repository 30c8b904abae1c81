//! Quartic models `w^2 = f(t)` with a marked point `(t0, w0)`, `w0 != 0`,
//! and their Weierstrass models.
//!
//! With `u = t - t0` write `f(t0 + u) = a u^4 + b u^3 + c u^2 + d u + q^2`.
//! The curve is `Y^2 + (d/q) XY + 2qb Y = X^3 + (c - d^2/4q^2) X^2 - 4q^2 a X
//! + a2 a4`, and the marked point `(t0, q)` goes to `O`.

use std::fmt;

use super::curve::{find_isomorphisms, Curve, Iso, Point};
use crate::error::{Error, Result};
use crate::exactmath::poly::Poly;
use crate::exactmath::{Field, SqrtField};

/// A point of `w^2 = f(t)`. At infinity `w / t^2` tends to `lead`, a square
/// root of the leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuarticPoint<F: Field> {
    Affine(F, F),
    Infinity(F),
}

impl<F: Field> QuarticPoint<F> {
    /// `t` as a point of `P^1`.
    pub fn t_proj(&self) -> (F, F) {
        match self {
            QuarticPoint::Affine(t, _) => (t.clone(), t.one_like()),
            QuarticPoint::Infinity(l) => (l.one_like(), l.zero_like()),
        }
    }
}

impl<F: Field> fmt::Display for QuarticPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuarticPoint::Affine(t, w) => write!(f, "({t}, {w})"),
            QuarticPoint::Infinity(l) => write!(f, "(inf, w/t^2 = {l})"),
        }
    }
}

/// Equality in `P^1`.
pub fn proj_eq<F: Field>(p: &(F, F), q: &(F, F)) -> bool {
    p.0.clone() * &q.1 == p.1.clone() * &q.0
}

#[derive(Clone, Debug)]
pub struct QuarticWeierstrass<F: Field> {
    pub quartic: Poly<F>,
    pub t0: F,
    pub q: F,
    // coefficients of the shifted quartic
    a: F,
    b: F,
    c: F,
    d: F,
    pub curve: Curve<F>,
}

pub fn quartic_to_weierstrass<F: Field>(quartic: &Poly<F>, t0: &F, w0: &F) -> Result<QuarticWeierstrass<F>> {
    if quartic.degree() != Some(4) {
        return Err(Error::InvalidArgument("expected a quartic".into()));
    }
    if quartic.discriminant().is_zero() {
        return Err(Error::Singular(format!("w^2 = {quartic}")));
    }
    if w0.is_zero() {
        return Err(Error::InvalidArgument("marked point must have w != 0".into()));
    }
    let g = quartic.shift(t0);
    if g.coeff(0) != w0.square() {
        return Err(Error::NotOnCurve(format!("({t0}, {w0})")));
    }
    let q = w0.clone();
    let (e, d, c, b, a) = (g.coeff(0), g.coeff(1), g.coeff(2), g.coeff(3), g.coeff(4));
    let two = e.int_like(2);
    let q2 = q.square();
    let a1 = d.try_div(&q).ok_or(Error::DivisionByZero)?;
    let a2 = c.clone() - d.square().try_div(&(q2.clone() * &e.int_like(4))).unwrap();
    let a3 = two * &q * &b;
    let a4 = -(q2.clone() * &e.int_like(4) * &a);
    let a6 = a2.clone() * &a4;
    let curve = Curve::new(a1, a2, a3, a4, a6)?;
    Ok(QuarticWeierstrass { quartic: quartic.clone(), t0: t0.clone(), q, a, b, c, d, curve })
}

impl<F: Field> QuarticWeierstrass<F> {
    fn k(&self, n: i64) -> F {
        self.q.int_like(n)
    }

    pub fn contains(&self, p: &QuarticPoint<F>) -> bool {
        match p {
            QuarticPoint::Affine(t, w) => w.square() == self.quartic.eval(t),
            QuarticPoint::Infinity(l) => !l.is_zero() && l.square() == self.a,
        }
    }

    /// `(t0, -q)`, the other point over `t0`.
    pub fn opposite_marked(&self) -> QuarticPoint<F> {
        QuarticPoint::Affine(self.t0.clone(), -self.q.clone())
    }

    pub fn mu(&self, p: &QuarticPoint<F>) -> Result<Point<F>> {
        if !self.contains(p) {
            return Err(Error::NotOnCurve(p.to_string()));
        }
        let (q, b, c, d) = (&self.q, &self.b, &self.c, &self.d);
        let q2 = q.square();
        let img = match p {
            QuarticPoint::Infinity(l) => Point::Affine(self.k(2) * q * l, q.zero_like()),
            QuarticPoint::Affine(t, w) => {
                let u = t.clone() - &self.t0;
                if u.is_zero() {
                    if w == q {
                        return Ok(Point::Infinity);
                    }
                    let q3 = q2.clone() * q;
                    let x = -c.clone() + &d.square().try_div(&(self.k(4) * &q2)).unwrap();
                    let y = -(self.k(2) * b * q) + &(c.clone() * d).try_div(q).unwrap()
                        - d.pow(3).try_div(&(self.k(4) * &q3)).unwrap();
                    Point::Affine(x, y)
                } else {
                    let vq = w.clone() + q;
                    let x = (self.k(2) * q * &vq + &(d.clone() * &u)).try_div(&u.square()).unwrap();
                    let y = (self.k(4) * &q2 * &vq + &(self.k(2) * q * &(d.clone() * &u + &(c.clone() * &u.square())))
                        - (d.square() * &u.square()).try_div(&(self.k(2) * q)).unwrap())
                    .try_div(&u.pow(3))
                    .unwrap();
                    Point::Affine(x, y)
                }
            }
        };
        debug_assert!(self.curve.contains(&img));
        Ok(img)
    }

    pub fn nu(&self, p: &Point<F>) -> Result<QuarticPoint<F>> {
        let (x, y) = match p {
            Point::Infinity => return Ok(QuarticPoint::Affine(self.t0.clone(), self.q.clone())),
            Point::Affine(x, y) => (x, y),
        };
        if !self.curve.contains(p) {
            return Err(Error::NotOnCurve(p.to_string()));
        }
        let (q, c, d) = (&self.q, &self.c, &self.d);
        let e = &self.curve;
        // N = 2q(x + a2), and y (y + a1 x + a3) = (x + a2)(x^2 + a4) since a6 = a2 a4
        let u = if !y.is_zero() {
            let n = self.k(2) * q * &(x.clone() + c) - d.square().try_div(&(self.k(2) * q)).unwrap();
            n.try_div(y).unwrap()
        } else {
            let m = x.square() + &e.a4;
            if m.is_zero() {
                return Ok(QuarticPoint::Infinity(x.try_div(&(self.k(2) * q)).unwrap()));
            }
            (self.k(2) * q * &(y.clone() + &(e.a1.clone() * x) + &e.a3)).try_div(&m).unwrap()
        };
        let v = -q.clone() + &(u.clone() * &(u.clone() * x - d)).try_div(&(self.k(2) * q)).unwrap();
        Ok(QuarticPoint::Affine(self.t0.clone() + &u, v))
    }
}

/// A quartic model together with an isomorphism of its Weierstrass model
/// onto a given target curve.
#[derive(Clone, Debug)]
pub struct QuarticJacobianMap<F: Field> {
    pub model: QuarticWeierstrass<F>,
    pub target: Curve<F>,
    pub iso: Iso<F>,
}

impl<F: SqrtField> QuarticJacobianMap<F> {
    /// All identifications of the model with `target`; usually two, differing
    /// by `-1`.
    pub fn candidates(model: &QuarticWeierstrass<F>, target: &Curve<F>) -> Vec<Self> {
        find_isomorphisms(&model.curve, target)
            .into_iter()
            .map(|iso| QuarticJacobianMap { model: model.clone(), target: target.clone(), iso })
            .collect()
    }
}

impl<F: Field> QuarticJacobianMap<F> {
    pub fn mu(&self, p: &QuarticPoint<F>) -> Result<Point<F>> {
        Ok(self.iso.forward(&self.model.mu(p)?))
    }

    pub fn nu(&self, p: &Point<F>) -> Result<QuarticPoint<F>> {
        self.model.nu(&self.iso.backward(p))
    }

    /// The `t`-coordinate of `nu(p)`.
    pub fn pi(&self, p: &Point<F>) -> Result<(F, F)> {
        Ok(self.nu(p)?.t_proj())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, BigRat};

    fn f2() -> Poly<BigRat> {
        Poly::new([25, 80, -236, 96, 36].iter().map(|&c| int(c)).collect(), &int(0))
    }

    #[test]
    fn round_trip_on_a_rational_quartic() {
        // 36t^4 + 96t^3 - 236t^2 + 80t + 25 with the point (0, 5)
        let m = quartic_to_weierstrass(&f2(), &int(0), &int(5)).unwrap();
        assert_eq!(m.mu(&QuarticPoint::Affine(int(0), int(5))).unwrap(), Point::Infinity);
        let opp = m.mu(&m.opposite_marked()).unwrap();
        assert!(m.curve.contains(&opp));
        assert_eq!(m.nu(&opp).unwrap(), m.opposite_marked());
        for (t, w) in [(1, 1), (1, -1)] {
            let p = QuarticPoint::Affine(int(t), int(w));
            assert!(m.contains(&p));
            let img = m.mu(&p).unwrap();
            assert!(m.curve.contains(&img));
            assert_eq!(m.nu(&img).unwrap(), p);
        }
        for l in [6, -6] {
            let p = QuarticPoint::Infinity(int(l));
            let img = m.mu(&p).unwrap();
            assert!(m.curve.contains(&img));
            assert_eq!(m.nu(&img).unwrap(), p);
        }
        // group law on the model maps back onto the quartic
        let g = m.mu(&QuarticPoint::Affine(int(1), int(1))).unwrap();
        for k in 2..5 {
            let p = m.nu(&m.curve.mul(k, &g)).unwrap();
            assert!(m.contains(&p));
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(quartic_to_weierstrass(&f2(), &int(0), &int(4)).is_err());
        let sq = Poly::new(vec![int(1), int(0), int(2), int(0), int(1)], &int(0));
        assert!(matches!(quartic_to_weierstrass(&sq, &int(0), &int(1)), Err(Error::Singular(_))));
    }
}
