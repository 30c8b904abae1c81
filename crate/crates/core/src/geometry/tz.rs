//! The model `y^2 = q(t)`, `z^2 = p(t)` of `C`, with `q = F_4` and `p = F_2`,
//! and the involutions acting on it.
//!
//! Points live in weighted projective space with weights `(1, 1, 2, 2)`;
//! the points over `t = oo` are kept as the limits of `y/t^2`, `z/t^2`.

use std::fmt;

use serde::{Serialize, Serializer};

use super::conic::primitive;
use super::curve5::{contains, f_model, rho, ProjPoint5};
use crate::elliptic::quartic::QuarticPoint;
use crate::error::{Error, Result};
use crate::exactmath::poly::Poly;
use crate::exactmath::{int, BigRat, Field};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TZPoint {
    Affine { t: BigRat, y: BigRat, z: BigRat },
    Infinity { y: BigRat, z: BigRat },
}

impl fmt::Display for TZPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TZPoint::Affine { t, y, z } => write!(f, "({t}, {y}, {z})"),
            TZPoint::Infinity { y, z } => write!(f, "(inf, {y}, {z})"),
        }
    }
}

impl Serialize for TZPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn q_poly() -> Poly<BigRat> {
    f_model(4).expect("F_4").table
}

pub fn p_poly() -> Poly<BigRat> {
    f_model(2).expect("F_2").table
}

impl TZPoint {
    pub fn is_valid(&self) -> bool {
        let (q, p) = (q_poly(), p_poly());
        match self {
            TZPoint::Affine { t, y, z } => q.eval(t) == y * y && p.eval(t) == z * z,
            TZPoint::Infinity { y, z } => q.coeff(4) == y * y && p.coeff(4) == z * z,
        }
    }

    fn weighted(&self) -> [BigRat; 4] {
        match self {
            TZPoint::Affine { t, y, z } => [t.clone(), int(1), y.clone(), z.clone()],
            TZPoint::Infinity { y, z } => [int(1), int(0), y.clone(), z.clone()],
        }
    }

    fn from_weighted(w: [BigRat; 4]) -> Result<Self> {
        let [tt, s, y, z] = w;
        if !Field::is_zero(&s) {
            let s2 = &s * &s;
            Ok(TZPoint::Affine { t: tt / &s, y: y / &s2, z: z / &s2 })
        } else if !Field::is_zero(&tt) {
            let t2 = &tt * &tt;
            Ok(TZPoint::Infinity { y: y / &t2, z: z / &t2 })
        } else {
            Err(Error::Pole)
        }
    }
}

/// `(T, S, Y, Z) -> (alpha T + beta S, gamma T + delta S, cy Y, cz Z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TauFormula {
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
    pub delta: i64,
    pub cy: i64,
    pub cz: i64,
}

/// The formulas as tabulated for `tau_0..tau_4`.
pub fn tau_formula(i: usize) -> Result<TauFormula> {
    let f = |alpha, beta, gamma, delta, cy, cz| TauFormula { alpha, beta, gamma, delta, cy, cz };
    Ok(match i {
        // t -> (6t - 5)/(6(t - 1)), y -> y/(6(t-1)^2)
        0 => f(6, -5, 6, -6, 6, 6),
        // t -> 5(t - 1)/(6t - 5), y -> 5y/(6t-5)^2
        1 => f(5, -5, 6, -5, 5, 5),
        2 => f(1, 0, 0, 1, 1, -1),
        // t -> 5/(6t), y -> 5y/(6t^2)
        3 => f(0, 5, 6, 0, 30, 30),
        4 => f(1, 0, 0, 1, -1, 1),
        _ => return Err(Error::InvalidArgument(format!("tau_{i}"))),
    })
}

impl TauFormula {
    pub fn apply(&self, p: &TZPoint) -> Result<TZPoint> {
        let [t, s, y, z] = p.weighted();
        let k = int;
        TZPoint::from_weighted([
            k(self.alpha) * &t + k(self.beta) * &s,
            k(self.gamma) * &t + k(self.delta) * &s,
            k(self.cy) * y,
            k(self.cz) * z,
        ])
    }

    /// `f((alpha t + beta)/(gamma t + delta)) (gamma t + delta)^4`.
    pub fn pullback(&self, f: &Poly<BigRat>) -> Poly<BigRat> {
        let z = int(0);
        let num = Poly::new(vec![int(self.beta), int(self.alpha)], &z);
        let den = Poly::new(vec![int(self.delta), int(self.gamma)], &z);
        let pow = |p: &Poly<BigRat>, e: usize| (0..e).fold(Poly::constant(int(1)), |acc, _| acc.mul(p));
        (0..=4).fold(Poly::new(vec![], &z), |acc, k| {
            acc.add(&pow(&num, k).mul(&pow(&den, 4 - k)).scale(&f.coeff(k)))
        })
    }

    /// The formula preserves both equations as a polynomial identity.
    pub fn preserves_model(&self) -> bool {
        let (q, p) = (q_poly(), p_poly());
        let det = self.alpha * self.delta - self.beta * self.gamma;
        det != 0
            && self.pullback(&q) == q.scale(&int(self.cy * self.cy))
            && self.pullback(&p) == p.scale(&int(self.cz * self.cz))
    }
}

pub fn tau_tz(i: usize, p: &TZPoint) -> Result<TZPoint> {
    if !p.is_valid() {
        return Err(Error::NotOnCurve(p.to_string()));
    }
    tau_formula(i)?.apply(p)
}

/// `P -> (t, y, z)` through `rho_4` (for `y`) and `rho_2` (for `z`), which
/// share the same conic and pencil.
pub fn rho_tz(p: &ProjPoint5) -> Result<TZPoint> {
    Ok(match (rho(4, p)?, rho(2, p)?) {
        (QuarticPoint::Affine(t, y), QuarticPoint::Affine(t2, z)) if t == t2 => TZPoint::Affine { t, y, z },
        (QuarticPoint::Infinity(y), QuarticPoint::Infinity(z)) => TZPoint::Infinity { y, z },
        (a, b) => return Err(Error::Verification(format!("rho_4 = {a} and rho_2 = {b} disagree on t"))),
    })
}

/// Inverse of [`rho_tz`]: `x0, x1, x3` from the shared pencil, `x2` from
/// `y` and `x4` from `z`.
pub fn tz_to_c(p: &TZPoint) -> Result<ProjPoint5> {
    let (f4, f2) = (f_model(4)?, f_model(2)?);
    if f4.vars != f2.vars || f4.model.pencil.conic != f2.model.pencil.conic {
        return Err(Error::Verification("F_2 and F_4 do not share a conic".into()));
    }
    let (pt_y, pt_z) = match p {
        TZPoint::Affine { t, y, z } => (QuarticPoint::Affine(t.clone(), y.clone()), QuarticPoint::Affine(t.clone(), z.clone())),
        TZPoint::Infinity { y, z } => (QuarticPoint::Infinity(y.clone()), QuarticPoint::Infinity(z.clone())),
    };
    let (x, y) = f4.model.from_quartic(&pt_y);
    let (_, z) = f2.model.from_quartic(&pt_z);
    let mut v = vec![int(0); 5];
    for (k, &i) in f4.vars.iter().enumerate() {
        v[i] = x[k].clone();
    }
    v[f4.value_var] = y / f4.kappa_root()?;
    v[f2.value_var] = z / f2.kappa_root()?;
    let prim = primitive(&v);
    let mut out = [0i64; 5];
    for (o, c) in out.iter_mut().zip(&prim) {
        *o = c.try_into().map_err(|_| Error::InvalidArgument(format!("{p} has large coordinates")))?;
    }
    let q = ProjPoint5::new(out)?;
    if !contains(&q) {
        return Err(Error::NotOnCurve(q.to_string()));
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::curve5::known_points;
    use crate::exactmath::rat;

    #[test]
    fn inverse_on_known_points() {
        for p in known_points() {
            assert_eq!(tz_to_c(&rho_tz(&p).unwrap()).unwrap(), p);
        }
    }

    #[test]
    fn formulas_preserve_the_model() {
        for i in 0..5 {
            assert!(tau_formula(i).unwrap().preserves_model(), "tau_{i}");
        }
    }

    #[test]
    fn tau3_example() {
        let q = rho_tz(&ProjPoint5::new([1, 3, 5, 7, 9]).unwrap()).unwrap();
        assert!(q.is_valid());
        let tz = |t, y: i64, z: i64| TZPoint::Affine { t, y: int(y), z: int(z) };
        // t = 1 lies on the model: q(1) = 1, p(1) = 1
        let one = tz(int(1), 1, 1);
        assert!(one.is_valid());
        assert_eq!(
            tau_tz(3, &one).unwrap(),
            TZPoint::Affine { t: rat(5, 6), y: rat(5, 6), z: rat(5, 6) }
        );
        assert_eq!(tau_tz(2, &one).unwrap(), tz(int(1), 1, -1));
        for i in 0..5 {
            assert_eq!(tau_tz(i, &tau_tz(i, &q).unwrap()).unwrap(), q);
        }
    }

    #[test]
    fn poles_give_points_at_infinity() {
        // t = 1 is the pole of tau_0
        let one = TZPoint::Affine { t: int(1), y: int(1), z: int(1) };
        assert!(matches!(tau_tz(0, &one).unwrap(), TZPoint::Infinity { .. }));
        assert!(tau_tz(0, &tau_tz(0, &one).unwrap()).unwrap() == one);
    }
}
