//! Diagonal conics, the pencil of lines through a base point, and the
//! genus one models `v^2 = R(x)` obtained by restricting a second diagonal
//! quadric to the conic.

use num_traits::Signed;

use crate::elliptic::quartic::QuarticPoint;
use crate::error::{Error, Result};
use crate::exactmath::poly::Poly;
use crate::exactmath::{int, BigRat, Field, SqrtField};

pub type Vec3 = [BigRat; 3];

pub fn vec3(v: [i64; 3]) -> Vec3 {
    v.map(int)
}

pub fn dot(a: &Vec3, b: &Vec3) -> BigRat {
    a.iter().zip(b).fold(int(0), |acc, (x, y)| acc + x * y)
}

pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn is_null(v: &Vec3) -> bool {
    v.iter().all(|x| Field::is_zero(x))
}

/// `sum c_i x_i^2 = 0` with a rational point `base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagConic {
    pub coeffs: Vec3,
    pub base: Vec3,
}

impl DiagConic {
    pub fn new(coeffs: Vec3, base: Vec3) -> Result<Self> {
        let c = DiagConic { coeffs, base };
        if c.coeffs.iter().any(|x| Field::is_zero(x)) {
            return Err(Error::Singular("degenerate conic".into()));
        }
        if is_null(&c.base) || !c.contains(&c.base) {
            return Err(Error::NotOnCurve(format!("{:?}", c.base)));
        }
        Ok(c)
    }

    pub fn form(&self, v: &Vec3) -> BigRat {
        (0..3).fold(int(0), |acc, i| acc + &self.coeffs[i] * &v[i] * &v[i])
    }

    pub fn bilinear(&self, u: &Vec3, v: &Vec3) -> BigRat {
        (0..3).fold(int(0), |acc, i| acc + &self.coeffs[i] * &u[i] * &v[i])
    }

    pub fn contains(&self, v: &Vec3) -> bool {
        Field::is_zero(&self.form(v))
    }

    /// Second intersection with a line `l . x = 0` through the base point.
    pub fn second_point(&self, l: &Vec3) -> Vec3 {
        let v = cross(l, &self.base);
        let (q, b) = (self.form(&v), self.bilinear(&self.base, &v));
        let two_b = b * int(2);
        [0, 1, 2].map(|i| &q * &self.base[i] - &two_b * &v[i])
    }
}

/// Lines `l1 - t l2` through the base point, giving `t = l1(x)/l2(x)` on the conic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pencil {
    pub conic: DiagConic,
    pub l1: Vec3,
    pub l2: Vec3,
}

impl Pencil {
    pub fn new(conic: DiagConic, l1: Vec3, l2: Vec3) -> Result<Self> {
        let ok = Field::is_zero(&dot(&l1, &conic.base))
            && Field::is_zero(&dot(&l2, &conic.base))
            && !is_null(&cross(&l1, &l2));
        if !ok {
            return Err(Error::InvalidArgument("lines must be independent and pass through the base point".into()));
        }
        Ok(Pencil { conic, l1, l2 })
    }

    /// A pencil with lines chosen from the coordinate planes.
    pub fn standard(conic: DiagConic) -> Result<Self> {
        let e = |i: usize| {
            let mut v = vec3([0, 0, 0]);
            v[i] = int(1);
            v
        };
        let cands: Vec<Vec3> = (0..3).map(|i| cross(&e(i), &conic.base)).filter(|l| !is_null(l)).collect();
        for i in 0..cands.len() {
            for j in i + 1..cands.len() {
                if !is_null(&cross(&cands[i], &cands[j])) {
                    return Pencil::new(conic.clone(), cands[i].clone(), cands[j].clone());
                }
            }
        }
        Err(Error::InvalidArgument("no pencil".into()))
    }

    /// The parametrisation `X(t)`, a vector of polynomials of degree <= 2.
    pub fn param(&self) -> [Poly<BigRat>; 3] {
        let z = int(0);
        // V(t) = (l1 - t l2) x base, linear in t
        let v0 = cross(&self.l1, &self.conic.base);
        let v1 = cross(&self.l2, &self.conic.base).map(|x| -x);
        let v: [Poly<BigRat>; 3] = [0, 1, 2].map(|i| Poly::new(vec![v0[i].clone(), v1[i].clone()], &z));
        let c = &self.conic.coeffs;
        let q = (0..3).fold(Poly::new(vec![], &z), |acc, i| acc.add(&v[i].mul(&v[i]).scale(&c[i])));
        let b = (0..3).fold(Poly::new(vec![], &z), |acc, i| {
            acc.add(&v[i].scale(&(&c[i] * &self.conic.base[i])))
        });
        [0, 1, 2].map(|i| q.scale(&self.conic.base[i]).sub(&b.mul(&v[i]).scale(&int(2))))
    }

    /// `X(t)` as a point, with `t = None` meaning infinity.
    pub fn point(&self, t: Option<&BigRat>) -> Vec3 {
        let p = self.param();
        match t {
            Some(t) => [0, 1, 2].map(|i| p[i].eval(t)),
            None => [0, 1, 2].map(|i| p[i].coeff(2)),
        }
    }

    /// `t` at a point of the conic, as `Some(t)` or `None` for infinity.
    /// At the base point, where both lines vanish, the tangent line decides.
    pub fn t_of(&self, x: &Vec3) -> Result<Option<BigRat>> {
        if !self.conic.contains(x) || is_null(x) {
            return Err(Error::NotOnCurve(format!("{x:?}")));
        }
        let (a, b) = (dot(&self.l1, x), dot(&self.l2, x));
        if !Field::is_zero(&b) {
            return Ok(Some(a / b));
        }
        if !Field::is_zero(&a) {
            return Ok(None);
        }
        // tangent at the base: gradient g, solve (l1 - t l2) x g = 0
        let g: Vec3 = [0, 1, 2].map(|i| &self.conic.coeffs[i] * &x[i]);
        let c1 = cross(&self.l1, &g);
        let c2 = cross(&self.l2, &g);
        for i in 0..3 {
            if !Field::is_zero(&c2[i]) {
                return Ok(Some(&c1[i] / &c2[i]));
            }
        }
        Ok(None)
    }
}

/// A conic pencil together with a diagonal form `R` with `v^2 = R(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricModel {
    pub pencil: Pencil,
    pub value: Vec3,
}

impl QuadricModel {
    pub fn value_form(&self, x: &Vec3) -> BigRat {
        (0..3).fold(int(0), |acc, i| acc + &self.value[i] * &x[i] * &x[i])
    }

    /// `R(X(t))`, the quartic of the model.
    pub fn quartic(&self) -> Poly<BigRat> {
        let p = self.pencil.param();
        (0..3).fold(Poly::new(vec![], &int(0)), |acc, i| acc.add(&p[i].mul(&p[i]).scale(&self.value[i])))
    }

    /// Point of `w^2 = R(X(t))` attached to a point `(x, v)` with `x` on
    /// the conic and `v^2 = R(x)`.
    pub fn to_quartic(&self, x: &Vec3, v: &BigRat) -> Result<QuarticPoint<BigRat>> {
        if self.value_form(x) != v * v {
            return Err(Error::NotOnCurve(format!("{x:?}, {v}")));
        }
        let t = self.pencil.t_of(x)?;
        let img = self.pencil.point(t.as_ref());
        // x = lambda X(t)
        let j = (0..3).find(|&j| !Field::is_zero(&img[j])).ok_or(Error::Verification("null parametrisation".into()))?;
        let lambda = &x[j] / &img[j];
        let w = v / &lambda;
        Ok(match t {
            Some(t) => QuarticPoint::Affine(t, w),
            None => QuarticPoint::Infinity(w),
        })
    }

    /// Inverse of [`to_quartic`](Self::to_quartic), up to scaling.
    pub fn from_quartic(&self, p: &QuarticPoint<BigRat>) -> (Vec3, BigRat) {
        match p {
            QuarticPoint::Affine(t, w) => (self.pencil.point(Some(t)), w.clone()),
            QuarticPoint::Infinity(l) => (self.pencil.point(None), l.clone()),
        }
    }
}

/// `c` with `target = c * source`, if the two are proportional.
pub fn proportionality(source: &Poly<BigRat>, target: &Poly<BigRat>) -> Option<BigRat> {
    let d = source.degree()?;
    if target.degree() != Some(d) {
        return None;
    }
    let c = target.coeff(d) / source.coeff(d);
    if source.scale(&c) == *target {
        Some(c)
    } else {
        None
    }
}

/// Scales a rational vector to a primitive integer vector with first
/// nonzero entry positive.
pub fn primitive(v: &[BigRat]) -> Vec<num_bigint::BigInt> {
    use num_integer::Integer;
    use num_traits::{One, Zero};
    let l = v.iter().fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<_> = v.iter().map(|x| (x * BigRat::from(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    let sign = if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) { -1 } else { 1 };
    ints.into_iter().map(|x| x / &g * sign).collect()
}

/// Exact rational square root, if any.
pub fn rat_sqrt(x: &BigRat) -> Option<BigRat> {
    SqrtField::sqrt(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn n6_conic() -> DiagConic {
        // 2 x0^2 + x2^2 = 3 x1^2
        DiagConic::new(vec3([2, -3, 1]), vec3([1, 1, 1])).unwrap()
    }

    #[test]
    fn param_lies_on_conic_and_inverts() {
        let p = Pencil::standard(n6_conic()).unwrap();
        for k in -5..6 {
            let t = rat(k, 3);
            let x = p.point(Some(&t));
            assert!(p.conic.contains(&x));
            if !x.iter().all(|c| Field::is_zero(c)) {
                assert_eq!(p.t_of(&x).unwrap(), Some(t));
            }
        }
        let inf = p.point(None);
        assert!(p.conic.contains(&inf));
    }

    #[test]
    fn base_point_via_tangent() {
        let p = Pencil::standard(n6_conic()).unwrap();
        let t = p.t_of(&vec3([1, 1, 1])).unwrap();
        let x = p.point(t.as_ref());
        assert_eq!(primitive(&x), vec![1.into(), 1.into(), 1.into()]);
    }
}
