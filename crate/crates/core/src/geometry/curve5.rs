//! The curve `C` in `P^4` cut out by `2x0^2 - 3x1^2 + x2^2`,
//! `5x0^2 - 6x1^2 + x3^2` and `9x0^2 - 10x1^2 + x4^2`, and its forgetful maps
//! to the genus one quartics `F_0..F_4`.

use std::fmt;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use super::conic::{proportionality, rat_sqrt, vec3, DiagConic, Pencil, QuadricModel, Vec3};
use crate::elliptic::quartic::QuarticPoint;
use crate::error::{Error, Result};
use crate::exactmath::poly::Poly;
use crate::exactmath::{int, rat, BigRat};
use crate::polyruns::SymQuadPoly;

/// `[x0 : x1 : x2 : x3 : x4]`, primitive with first nonzero coordinate positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint5(pub [i64; 5]);

impl ProjPoint5 {
    pub fn new(x: [i64; 5]) -> Result<Self> {
        let g = x.iter().fold(0i64, |acc, v| acc.gcd(v));
        if g == 0 {
            return Err(Error::InvalidArgument("all coordinates zero".into()));
        }
        let sign = if x.iter().find(|v| **v != 0).is_some_and(|v| *v < 0) { -1 } else { 1 };
        Ok(ProjPoint5(x.map(|v| v / g * sign)))
    }

    pub fn coords(&self) -> [i64; 5] {
        self.0
    }
}

impl fmt::Display for ProjPoint5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d, e] = self.0;
        write!(f, "[{a}:{b}:{c}:{d}:{e}]")
    }
}

impl Serialize for ProjPoint5 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// The three quadrics at `P`.
pub fn quadrics(x: &[i64; 5]) -> [i128; 3] {
    let s = x.map(|v| (v as i128) * (v as i128));
    [
        2 * s[0] - 3 * s[1] + s[2],
        5 * s[0] - 6 * s[1] + s[3],
        9 * s[0] - 10 * s[1] + s[4],
    ]
}

pub fn contains(p: &ProjPoint5) -> bool {
    quadrics(&p.0) == [0, 0, 0]
}

/// Sign change of coordinate `i`.
pub fn tau(i: usize, p: &ProjPoint5) -> Result<ProjPoint5> {
    if i > 4 {
        return Err(Error::InvalidArgument(format!("tau_{i}")));
    }
    let mut x = p.0;
    x[i] = -x[i];
    ProjPoint5::new(x)
}

/// `c = x0^2`, `a = (x1^2 - x0^2)/2` on the half-integer axis, scaled to
/// integers and reduced modulo common square factors.
pub fn point_to_poly(p: &ProjPoint5) -> Result<SymQuadPoly> {
    if !contains(p) {
        return Err(Error::NotOnCurve(p.to_string()));
    }
    let [x0, x1, ..] = p.0;
    let d = x1 * x1 - x0 * x0;
    let (a, c) = if d % 2 == 0 { (d / 2, x0 * x0) } else { (2 * d, 4 * x0 * x0) };
    Ok(SymQuadPoly::half(a, c).square_reduced())
}

/// The 64 sign vectors `[+-1:+-1:+-1:+-1:+-1]` and `[+-1:+-3:+-5:+-7:+-9]`.
pub fn known_sign_vectors() -> Vec<[i64; 5]> {
    let mut out = Vec::new();
    for base in [[1i64, 1, 1, 1, 1], [1, 3, 5, 7, 9]] {
        for mask in 0..32u32 {
            let mut x = base;
            for (i, v) in x.iter_mut().enumerate() {
                if mask >> i & 1 == 1 {
                    *v = -*v;
                }
            }
            out.push(x);
        }
    }
    out
}

pub fn known_points() -> Vec<ProjPoint5> {
    let mut pts: Vec<ProjPoint5> = known_sign_vectors().into_iter().map(|x| ProjPoint5::new(x).unwrap()).collect();
    pts.sort();
    pts.dedup();
    pts
}

/// One of the quartic models `F_n : x_v^2 = F_n(t)`.
#[derive(Clone, Debug)]
pub struct FModel {
    pub n: usize,
    /// the coordinate whose square is the quartic
    pub value_var: usize,
    /// the three coordinates of the conic, in order
    pub vars: [usize; 3],
    pub model: QuadricModel,
    /// the quartic as tabulated
    pub table: Poly<BigRat>,
}

fn poly_desc(c: [i64; 5]) -> Poly<BigRat> {
    Poly::from_desc(c.iter().map(|&v| int(v)).collect(), &int(0))
}

fn model(conic: [i64; 3], base: [i64; 3], l1: [i64; 3], l2: [i64; 3], value: Vec3) -> QuadricModel {
    let conic = DiagConic::new(vec3(conic), vec3(base)).expect("valid conic");
    let pencil = Pencil::new(conic, vec3(l1), vec3(l2)).expect("valid pencil");
    QuadricModel { pencil, value }
}

pub fn f_model(n: usize) -> Result<FModel> {
    let (value_var, vars, m, table) = match n {
        // (x2, x3, x4): 4x2^2 - 7x3^2 + 3x4^2 = 0, t = (x4 + x2)/(x4 - x3)
        0 => (
            1,
            [2, 3, 4],
            model([4, -7, 3], [-1, 1, 1], [1, 0, 1], [0, -1, 1], [rat(5, 3), rat(-2, 3), int(0)]),
            poly_desc([16, -144, 340, -252, 49]),
        ),
        1 => (
            0,
            [2, 3, 4],
            model([4, -7, 3], [-1, 1, 1], [1, 0, 1], [0, -1, 1], vec3([2, -1, 0])),
            poly_desc([16, -160, 384, -280, 49]),
        ),
        // (x0, x1, x3): 5x0^2 - 6x1^2 + x3^2 = 0, t = (x3 + x1)/(x3 - x0)
        2 => (
            4,
            [0, 1, 3],
            model([5, -6, 1], [1, -1, 1], [0, 1, 1], [-1, 0, 1], vec3([-9, 10, 0])),
            poly_desc([36, 96, -236, 80, 25]),
        ),
        // (x0, x2, x4): -7x0^2 + 10x2^2 - 3x4^2 = 0, t = (x4 + x2)/(x4 - x0)
        3 => (
            1,
            [0, 2, 4],
            model([-7, 10, -3], [1, -1, 1], [0, 1, 1], [-1, 0, 1], [rat(2, 3), rat(1, 3), int(0)]),
            poly_desc([100, -360, 472, -252, 49]),
        ),
        4 => (
            2,
            [0, 1, 3],
            model([5, -6, 1], [1, -1, 1], [0, 1, 1], [-1, 0, 1], vec3([-2, 3, 0])),
            poly_desc([36, -72, 72, -60, 25]),
        ),
        _ => return Err(Error::InvalidArgument(format!("no model F_{n}"))),
    };
    Ok(FModel { n, value_var, vars, model: m, table })
}

impl FModel {
    /// `kappa` with `table = kappa * R(X(t))`, if proportional.
    pub fn kappa(&self) -> Option<BigRat> {
        proportionality(&self.model.quartic(), &self.table)
    }

    /// Positive square root of `kappa`.
    pub fn kappa_root(&self) -> Result<BigRat> {
        let k = self.kappa().ok_or_else(|| Error::Verification(format!("F_{} not proportional", self.n)))?;
        rat_sqrt(&k).map(|s| if s < int(0) { -s } else { s }).ok_or_else(|| {
            Error::Verification(format!("F_{}: kappa = {k} is not a square", self.n))
        })
    }

    fn restrict(&self, p: &ProjPoint5) -> (Vec3, BigRat) {
        let x = p.0;
        (self.vars.map(|i| int(x[i])), int(x[self.value_var]))
    }
}

/// The forgetful map `C -> F_n`.
pub fn rho(n: usize, p: &ProjPoint5) -> Result<QuarticPoint<BigRat>> {
    if !contains(p) {
        return Err(Error::NotOnCurve(p.to_string()));
    }
    let f = f_model(n)?;
    let s = f.kappa_root()?;
    let (x, v) = f.restrict(p);
    let q = f.model.to_quartic(&x, &v)?;
    let out = match q {
        QuarticPoint::Affine(t, w) => QuarticPoint::Affine(t, w * &s),
        QuarticPoint::Infinity(l) => QuarticPoint::Infinity(l * &s),
    };
    debug_assert!(match &out {
        QuarticPoint::Affine(t, w) => f.table.eval(t) == w * w,
        QuarticPoint::Infinity(l) => f.table.coeff(4) == l * l,
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: [i64; 5]) -> ProjPoint5 {
        ProjPoint5::new(x).unwrap()
    }

    #[test]
    fn membership() {
        assert!(contains(&pt([1, 1, 1, 1, 1])));
        assert!(contains(&pt([1, 3, 5, 7, 9])));
        assert!(!contains(&pt([1, 1, 1, 1, 2])));
    }

    #[test]
    fn canonical_form() {
        assert_eq!(pt([-2, 6, -10, 14, 18]), pt([1, -3, 5, -7, -9]));
        assert_eq!(known_sign_vectors().len(), 64);
        assert_eq!(known_points().len(), 32);
    }

    #[test]
    fn polys() {
        assert_eq!(point_to_poly(&pt([1, 3, 5, 7, 9])).unwrap(), SymQuadPoly::half(4, 1));
        assert_eq!(point_to_poly(&pt([1, 1, 1, 1, 1])).unwrap(), SymQuadPoly::half(0, 1));
        assert_eq!(point_to_poly(&pt([1, -3, 5, -7, 9])).unwrap(), SymQuadPoly::half(4, 1));
    }

    #[test]
    fn tau_is_an_involution() {
        let p = pt([1, 3, 5, 7, 9]);
        assert_eq!(tau(2, &p).unwrap(), pt([1, 3, -5, 7, 9]));
        assert_eq!(tau(1, &pt([1, 1, 1, 1, 1])).unwrap(), pt([1, -1, 1, 1, 1]));
        for i in 0..5 {
            assert_eq!(tau(i, &tau(i, &p).unwrap()).unwrap(), p);
        }
        // flipping x0 is the same projective point as flipping the other four
        assert_eq!(tau(0, &p).unwrap(), pt([1, -3, -5, -7, -9]));
    }

    #[test]
    fn models_are_proportional_with_square_factor() {
        for n in 0..5 {
            let f = f_model(n).unwrap();
            assert!(f.kappa_root().is_ok(), "F_{n}: {:?}", f.kappa());
        }
    }

    #[test]
    fn rho_examples() {
        match rho(2, &pt([1, 3, 5, 7, 9])).unwrap() {
            QuarticPoint::Affine(t, w) => {
                assert_eq!(t, rat(5, 3));
                assert_eq!(&w * &w, int(225));
            }
            other => panic!("{other}"),
        }
        assert!(matches!(rho(4, &pt([1, 1, 1, 1, 1])).unwrap(), QuarticPoint::Infinity(_)));
        // the base point of the pencil: both lines vanish, the tangent gives t = 5/6
        match rho(2, &pt([1, -1, 1, 1, 1])).unwrap() {
            QuarticPoint::Affine(t, w) => {
                assert_eq!(t, rat(5, 6));
                assert_eq!(&w * &w, rat(25, 36));
            }
            other => panic!("{other}"),
        }
    }
}
