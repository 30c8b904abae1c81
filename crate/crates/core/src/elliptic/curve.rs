//! Long Weierstrass curves over an exact [`Field`] and their group law.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactmath::{residue_reduce, split_reduce, Field, Fp, ResidueElem, SqrtField, QF6};

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve<F: Field> {
    pub a1: F,
    pub a2: F,
    pub a3: F,
    pub a4: F,
    pub a6: F,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point<F: Field> {
    Infinity,
    Affine(F, F),
}

impl<F: Field> Point<F> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn xy(&self) -> Option<(&F, &F)> {
        match self {
            Point::Infinity => None,
            Point::Affine(x, y) => Some((x, y)),
        }
    }
}

impl<F: Field> fmt::Display for Point<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => write!(f, "O"),
            Point::Affine(x, y) => write!(f, "({x}, {y})"),
        }
    }
}

impl<F: Field> Curve<F> {
    /// Builds a curve, rejecting a vanishing discriminant.
    pub fn new(a1: F, a2: F, a3: F, a4: F, a6: F) -> Result<Self> {
        let e = Curve { a1, a2, a3, a4, a6 };
        if e.discriminant().is_zero() {
            return Err(Error::Singular(format!("{e}")));
        }
        Ok(e)
    }

    /// `y^2 = x^3 + a2 x^2 + a4 x + a6`.
    pub fn cubic(a2: F, a4: F, a6: F) -> Result<Self> {
        let z = a2.zero_like();
        Curve::new(z.clone(), a2, z, a4, a6)
    }

    pub fn zero(&self) -> F {
        self.a1.zero_like()
    }

    pub fn k(&self, n: i64) -> F {
        self.a1.int_like(n)
    }

    pub fn b2(&self) -> F {
        self.a1.square() + self.k(4) * &self.a2
    }

    pub fn b4(&self) -> F {
        self.k(2) * &self.a4 + self.a1.clone() * &self.a3
    }

    pub fn b6(&self) -> F {
        self.a3.square() + self.k(4) * &self.a6
    }

    pub fn b8(&self) -> F {
        self.a1.square() * &self.a6 + self.k(4) * &self.a2 * &self.a6
            - self.a1.clone() * &self.a3 * &self.a4
            + self.a2.clone() * &self.a3.square()
            - self.a4.square()
    }

    pub fn c4(&self) -> F {
        self.b2().square() - self.k(24) * &self.b4()
    }

    pub fn c6(&self) -> F {
        -self.b2().pow(3) + self.k(36) * &self.b2() * &self.b4() - self.k(216) * &self.b6()
    }

    pub fn discriminant(&self) -> F {
        let (b2, b4, b6, b8) = (self.b2(), self.b4(), self.b6(), self.b8());
        -b2.square() * &b8 - self.k(8) * &b4.pow(3) - self.k(27) * &b6.square()
            + self.k(9) * &b2 * &b4 * &b6
    }

    pub fn j_invariant(&self) -> Option<F> {
        self.c4().pow(3).try_div(&self.discriminant())
    }

    /// Left side minus right side of the equation at `(x, y)`.
    pub fn residual(&self, x: &F, y: &F) -> F {
        y.square() + self.a1.clone() * x * y + self.a3.clone() * y
            - (x.pow(3) + self.a2.clone() * &x.square() + self.a4.clone() * x + &self.a6)
    }

    pub fn contains(&self, p: &Point<F>) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine(x, y) => self.residual(x, y).is_zero(),
        }
    }

    pub fn point(&self, x: F, y: F) -> Result<Point<F>> {
        if self.residual(&x, &y).is_zero() {
            Ok(Point::Affine(x, y))
        } else {
            Err(Error::NotOnCurve(format!("({x}, {y})")))
        }
    }

    pub fn neg(&self, p: &Point<F>) -> Point<F> {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                Point::Affine(x.clone(), -y.clone() - self.a1.clone() * x - &self.a3)
            }
        }
    }

    /// Chord-tangent addition; fails only over rings where a needed
    /// denominator is not a unit.
    pub fn try_add(&self, p: &Point<F>, q: &Point<F>) -> Result<Point<F>> {
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return Ok(q.clone()),
            (_, Point::Infinity) => return Ok(p.clone()),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let lambda = if x1 == x2 {
            let s = y1.clone() + y2 + &(self.a1.clone() * x2) + &self.a3;
            if s.is_zero() {
                return Ok(Point::Infinity);
            }
            let num = self.k(3) * &x1.square() + self.k(2) * &self.a2 * x1 + &self.a4
                - self.a1.clone() * y1;
            let den = self.k(2) * y1 + &(self.a1.clone() * x1) + &self.a3;
            num.try_div(&den).ok_or(Error::DivisionByZero)?
        } else {
            (y2.clone() - y1).try_div(&(x2.clone() - x1)).ok_or(Error::DivisionByZero)?
        };
        let nu = y1.clone() - lambda.clone() * x1;
        let x3 = lambda.square() + self.a1.clone() * &lambda - &self.a2 - x1 - x2;
        let y3 = -(lambda + &self.a1) * &x3 - nu - &self.a3;
        Ok(Point::Affine(x3, y3))
    }

    pub fn add(&self, p: &Point<F>, q: &Point<F>) -> Point<F> {
        self.try_add(p, q).expect("group law over a field")
    }

    pub fn sub(&self, p: &Point<F>, q: &Point<F>) -> Point<F> {
        self.add(p, &self.neg(q))
    }

    pub fn try_mul(&self, n: i64, p: &Point<F>) -> Result<Point<F>> {
        let mut base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = Point::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.try_add(&acc, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = self.try_add(&base, &base)?;
            }
        }
        Ok(acc)
    }

    pub fn mul(&self, n: i64, p: &Point<F>) -> Point<F> {
        self.try_mul(n, p).expect("group law over a field")
    }

    /// Smallest `n <= bound` with `nP = O`.
    pub fn order(&self, p: &Point<F>, bound: u64) -> Option<u64> {
        let mut q = p.clone();
        for n in 1..=bound {
            if q.is_infinity() {
                return Some(n);
            }
            q = self.add(&q, p);
        }
        None
    }

    /// Image of the curve under the coordinate change `iso` (see [`Iso`]).
    pub fn transform(&self, iso: &Iso<F>) -> Result<Curve<F>> {
        let Iso { u, r, s, t } = iso;
        let ui = u.inv().ok_or(Error::DivisionByZero)?;
        let a1 = (self.a1.clone() + &(self.k(2) * s)) * &ui;
        let a2 = (self.a2.clone() - s.clone() * &self.a1 + &(self.k(3) * r) - &s.square())
            * &ui.pow(2);
        let a3 = (self.a3.clone() + &(r.clone() * &self.a1) + &(self.k(2) * t)) * &ui.pow(3);
        let a4 = (self.a4.clone() - s.clone() * &self.a3 + &(self.k(2) * r * &self.a2)
            - (t.clone() + &(r.clone() * s)) * &self.a1
            + self.k(3) * &r.square()
            - self.k(2) * s * t)
            * &ui.pow(4);
        let a6 = (self.a6.clone() + &(r.clone() * &self.a4) + &(r.square() * &self.a2)
            + &r.pow(3)
            - t.clone() * &self.a3
            - t.square()
            - r.clone() * t * &self.a1)
            * &ui.pow(6);
        Curve::new(a1, a2, a3, a4, a6)
    }
}

impl<F: Field> fmt::Display for Curve<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}, {}, {}]", self.a1, self.a2, self.a3, self.a4, self.a6)
    }
}

/// Coordinate change `x = u^2 x' + r`, `y = u^3 y' + s u^2 x' + t` from a
/// curve `E` to `E' = E.transform(iso)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Iso<F: Field> {
    pub u: F,
    pub r: F,
    pub s: F,
    pub t: F,
}

impl<F: Field> Iso<F> {
    /// `E -> E'`.
    pub fn forward(&self, p: &Point<F>) -> Point<F> {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let ui = self.u.inv().expect("unit scaling");
                let xp = (x.clone() - &self.r) * &ui.square();
                let yp = (y.clone() - &(self.s.clone() * &(x.clone() - &self.r)) - &self.t)
                    * &ui.pow(3);
                Point::Affine(xp, yp)
            }
        }
    }

    /// `E' -> E`.
    pub fn backward(&self, p: &Point<F>) -> Point<F> {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(xp, yp) => {
                let u2 = self.u.square();
                let x = u2.clone() * xp + &self.r;
                let y = self.u.pow(3) * yp + &(self.s.clone() * &u2 * xp) + &self.t;
                Point::Affine(x, y)
            }
        }
    }
}

/// Isomorphisms `E -> E'` defined over the base field. Only the generic
/// case `j != 0, 1728` is handled; otherwise the list is empty.
pub fn find_isomorphisms<F: SqrtField>(e: &Curve<F>, ep: &Curve<F>) -> Vec<Iso<F>> {
    let (c4, c6, c4p, c6p) = (e.c4(), e.c6(), ep.c4(), ep.c6());
    if c4.is_zero() || c6.is_zero() || c4p.is_zero() || c6p.is_zero() {
        return vec![];
    }
    let u2 = (c6.clone() * &c4p).try_div(&(c6p * &c4)).expect("nonzero");
    if u2.square() * &c4p != c4 {
        return vec![];
    }
    let Some(u) = u2.sqrt() else {
        return vec![];
    };
    let half = e.k(2).inv().unwrap();
    let third = e.k(3).inv().unwrap();
    let mut out = vec![];
    for u in [u.clone(), -u] {
        let s = (u.clone() * &ep.a1 - &e.a1) * &half;
        let r = (u.square() * &ep.a2 - &e.a2 + &(s.clone() * &e.a1) + &s.square()) * &third;
        let t = (u.pow(3) * &ep.a3 - &e.a3 - &(r.clone() * &e.a1)) * &half;
        let iso = Iso { u, r, s, t };
        if e.transform(&iso).as_ref() == Ok(ep) {
            out.push(iso);
        }
    }
    out
}

/// Reduction of a curve over `Q(√6)` modulo `p^n` (p inert).
pub fn reduce_curve(e: &Curve<QF6>, p: u64, n: u32) -> Result<Curve<ResidueElem>> {
    let r = |x: &QF6| residue_reduce(x, p, n);
    let reduced = Curve { a1: r(&e.a1)?, a2: r(&e.a2)?, a3: r(&e.a3)?, a4: r(&e.a4)?, a6: r(&e.a6)? };
    if !reduced.discriminant().is_unit() {
        return Err(Error::BadReduction(p));
    }
    Ok(reduced)
}

/// Reduction of an affine point with `p`-integral coordinates; points whose
/// coordinates have `p` in the denominator reduce to `O`.
pub fn reduce_point(pt: &Point<QF6>, p: u64, n: u32) -> Result<Point<ResidueElem>> {
    match pt {
        Point::Infinity => Ok(Point::Infinity),
        Point::Affine(x, y) => match (residue_reduce(x, p, n), residue_reduce(y, p, n)) {
            (Ok(a), Ok(b)) => Ok(Point::Affine(a, b)),
            (Err(Error::DenominatorNotUnit(_)), _) | (_, Err(Error::DenominatorNotUnit(_))) if n == 1 => {
                Ok(Point::Infinity)
            }
            (Err(e), _) | (_, Err(e)) => Err(e),
        },
    }
}

/// Reduction at a split prime `q` through `√6 -> root`.
pub fn reduce_curve_split(e: &Curve<QF6>, q: u64, root: u64) -> Result<Curve<Fp>> {
    let r = |x: &QF6| split_reduce(x, q, root);
    let reduced = Curve { a1: r(&e.a1)?, a2: r(&e.a2)?, a3: r(&e.a3)?, a4: r(&e.a4)?, a6: r(&e.a6)? };
    if reduced.discriminant().is_zero() {
        return Err(Error::BadReduction(q));
    }
    Ok(reduced)
}

pub fn reduce_point_split(pt: &Point<QF6>, q: u64, root: u64) -> Result<Point<Fp>> {
    match pt {
        Point::Infinity => Ok(Point::Infinity),
        Point::Affine(x, y) => match (split_reduce(x, q, root), split_reduce(y, q, root)) {
            (Ok(a), Ok(b)) => Ok(Point::Affine(a, b)),
            (Err(Error::DenominatorNotUnit(_)), _) | (_, Err(Error::DenominatorNotUnit(_))) => Ok(Point::Infinity),
            (Err(e), _) | (_, Err(e)) => Err(e),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat, BigRat};

    fn e4() -> Curve<BigRat> {
        Curve::cubic(int(-27), int(180), int(0)).unwrap()
    }

    #[test]
    fn two_torsion_and_identity() {
        let e = e4();
        let t = e.point(int(0), int(0)).unwrap();
        assert_eq!(e.add(&t, &t), Point::Infinity);
        let g = e.point(int(10), int(10)).unwrap();
        assert_eq!(e.add(&g, &Point::Infinity), g);
        let g2 = e.add(&g, &g);
        assert!(e.contains(&g2));
        assert_eq!(e.sub(&g2, &g), g);
    }

    #[test]
    fn multiplication_and_associativity() {
        let e = e4();
        let g = e.point(int(10), int(10)).unwrap();
        let t = e.point(int(12), int(0)).unwrap();
        let lhs = e.add(&e.add(&g, &t), &e.mul(3, &g));
        let rhs = e.add(&g, &e.add(&t, &e.mul(3, &g)));
        assert_eq!(lhs, rhs);
        assert_eq!(e.mul(-2, &g), e.neg(&e.mul(2, &g)));
    }

    #[test]
    fn invariants_of_e4() {
        let e = e4();
        // 16 * (12 * 15 * 3)^2
        assert_eq!(e.discriminant(), int(16 * 540 * 540));
        assert!(e.j_invariant().is_some());
        assert_eq!(Curve::cubic(int(0), int(0), int(0)).unwrap_err(), Error::Singular("[0, 0, 0, 0, 0]".into()));
        let _ = rat(1, 2);
    }

    #[test]
    fn isomorphism_round_trip() {
        let e = Curve::cubic(QF6::from_ints(-27, 0), QF6::from_ints(180, 0), QF6::from_ints(0, 0)).unwrap();
        let iso = Iso {
            u: QF6::from_ints(1, 1),
            r: QF6::from_ints(2, 0),
            s: QF6::from_ints(0, 1),
            t: QF6::from_ints(-3, 1),
        };
        let ep = e.transform(&iso).unwrap();
        let found = find_isomorphisms(&e, &ep);
        assert!(found.contains(&iso));
        let g = Point::Affine(QF6::from_ints(10, 0), QF6::from_ints(10, 0));
        let gp = iso.forward(&g);
        assert!(ep.contains(&gp));
        assert_eq!(iso.backward(&gp), g);
        assert_eq!(e.j_invariant(), ep.j_invariant());
    }
}
