//! Infinite families for `N = 5, 6, 8` and the torsion classification at `N = 7`.
//!
//! Squares at consecutive points satisfy linear relations, so a run is a
//! rational point on a conic (`N <= 6`) or on an intersection of two
//! quadrics (`N = 7, 8`). The latter is a genus one curve; its points come
//! from the Weierstrass model through the generic quartic machinery.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use super::poly::{square_run_check, Axis, SymQuadPoly};
use crate::elliptic::quartic::{quartic_to_weierstrass, QuarticJacobianMap, QuarticPoint};
use crate::elliptic::torsion::torsion_over_q;
use crate::elliptic::{Curve, Point};
use crate::error::{Error, Result};
use crate::exactmath::{int, BigRat};
use crate::geometry::conic::{primitive, vec3, DiagConic, Pencil, QuadricModel, Vec3};

/// `(a, c)` from `x0 = sqrt f(0)` and `x1 = sqrt f(1)`.
fn poly_from_roots(axis: Axis, x0: &BigInt, x1: &BigInt) -> SymQuadPoly {
    let (s0, s1) = (x0 * x0, x1 * x1);
    let d = &s1 - &s0;
    let f = match axis {
        Axis::Integer => SymQuadPoly::new(axis, d, s0),
        Axis::Half if d.is_even() => SymQuadPoly::new(axis, d / 2, s0),
        Axis::Half => SymQuadPoly::new(axis, d * 2, s0 * 4),
    };
    f.square_reduced()
}

/// Rationals ordered by height, then numerator.
fn rationals() -> impl Iterator<Item = BigRat> {
    std::iter::once(int(0)).chain((1i64..).flat_map(|h| {
        let mut v = Vec::new();
        for p in -h..=h {
            for q in 1..=h {
                if p.abs().max(q) == h && p.gcd(&q) == 1 {
                    v.push(BigRat::new(p.into(), q.into()));
                }
            }
        }
        v
    }))
}

fn conic_for(n: usize) -> Result<(DiagConic, Axis)> {
    let (coeffs, axis) = match n {
        // f(2) = 4a + c, so x2^2 = 4x1^2 - 3x0^2
        5 => ([3, -4, 1], Axis::Integer),
        // f(2) = 6a + c, so x2^2 = 3x1^2 - 2x0^2
        6 => ([2, -3, 1], Axis::Half),
        _ => return Err(Error::InvalidArgument(format!("no conic family for N = {n}"))),
    };
    Ok((DiagConic::new(vec3(coeffs), vec3([1, 1, 1]))?, axis))
}

/// The first `count` square-inequivalent nondegenerate polynomials with a
/// run of length `n`, from lines through `(1, 1, 1)` ordered by slope height.
pub fn conic_family(n: usize, count: usize) -> Result<Vec<SymQuadPoly>> {
    let (conic, axis) = conic_for(n)?;
    let pencil = Pencil::standard(conic)?;
    let mut out: Vec<SymQuadPoly> = Vec::new();
    for t in rationals() {
        if out.len() >= count {
            break;
        }
        let x = primitive(&pencil.point(Some(&t)));
        let f = poly_from_roots(axis, &x[0], &x[1]);
        if f.is_nondegenerate() && square_run_check(&f, n).is_some() && !out.contains(&f) {
            out.push(f);
        }
    }
    Ok(out)
}

/// Two quadrics in `(x0, x1, x2, x3)`: a conic in the first three and
/// `x3^2 = R(x0, x1, x2)`, identified with a Weierstrass curve.
pub struct QuadricPair {
    pub model: QuadricModel,
    pub map: QuarticJacobianMap<BigRat>,
}

impl QuadricPair {
    pub fn new(conic: [i64; 3], value: [i64; 3], target: &Curve<BigRat>) -> Result<Self> {
        let c = DiagConic::new(vec3(conic), vec3([1, 1, 1]))?;
        let model = QuadricModel { pencil: Pencil::standard(c)?, value: vec3(value) };
        let quartic = model.quartic();
        // a marked point from the sign changes of (1, 1, 1, 1)
        let mut marked = None;
        for s in [[1, -1, 1], [1, 1, -1], [-1, 1, 1], [1, 1, 1]] {
            if let Ok(QuarticPoint::Affine(t, w)) = model.to_quartic(&vec3(s), &int(1)) {
                if w != int(0) {
                    marked = Some((t, w));
                    break;
                }
            }
        }
        let (t0, w0) = marked.ok_or_else(|| Error::Verification("no affine marked point".into()))?;
        let wm = quartic_to_weierstrass(&quartic, &t0, &w0)?;
        let map = QuarticJacobianMap::candidates(&wm, target)
            .into_iter()
            .next()
            .ok_or_else(|| Error::Verification("model is not isomorphic to the target curve".into()))?;
        Ok(QuadricPair { model, map })
    }

    /// Primitive `(x0, x1, x2, x3)` over a point of the curve.
    pub fn coords(&self, p: &Point<BigRat>) -> Result<Vec<BigInt>> {
        let q = self.map.nu(p)?;
        let (x, v): (Vec3, BigRat) = self.model.from_quartic(&q);
        let v4 = [x[0].clone(), x[1].clone(), x[2].clone(), v];
        Ok(primitive(&v4))
    }
}

fn n7_pair() -> Result<(QuadricPair, Curve<BigRat>)> {
    // x(x - 5)(x + 27)
    let e = Curve::cubic(int(22), int(-135), int(0))?;
    // f(2) = 4a + c and f(3) = 9a + c on the integer axis
    Ok((QuadricPair::new([3, -4, 1], [-8, 9, 0], &e)?, e))
}

fn n8_pair() -> Result<(QuadricPair, Curve<BigRat>)> {
    // x(x - 12)(x - 15)
    let e = Curve::cubic(int(-27), int(180), int(0))?;
    // f(2) = 6a + c and f(3) = 12a + c on the half-integer axis
    Ok((QuadricPair::new([2, -3, 1], [-5, 6, 0], &e)?, e))
}

#[derive(Clone, Debug, Serialize)]
pub struct N7Entry {
    pub point: String,
    pub coords: Vec<String>,
    pub poly: SymQuadPoly,
    pub degenerate: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct N7Report {
    pub torsion_structure: Vec<u64>,
    pub torsion_order: usize,
    pub entries: Vec<N7Entry>,
    pub all_degenerate: bool,
}

/// Every rational point of the `N = 7` curve is torsion; each one gives a
/// constant or a square polynomial.
pub fn n7_classification() -> Result<N7Report> {
    let (pair, e) = n7_pair()?;
    let tors = torsion_over_q(&e)?;
    let mut entries = Vec::new();
    for p in &tors.points {
        let x = pair.coords(p)?;
        let f = poly_from_roots(Axis::Integer, &x[0], &x[1]);
        entries.push(N7Entry {
            point: p.to_string(),
            coords: x.iter().map(|v| v.to_string()).collect(),
            degenerate: !f.is_nondegenerate(),
            poly: f,
        });
    }
    if let Some(bad) = entries.iter().find(|e| !e.degenerate) {
        return Err(Error::Verification(format!("torsion point {} gives {}", bad.point, bad.poly)));
    }
    Ok(N7Report {
        torsion_structure: tors.structure.clone(),
        torsion_order: tors.points.len(),
        all_degenerate: true,
        entries,
    })
}

/// The integral non-torsion point on `x(x - 12)(x - 15)` of smallest
/// `max(|x|, |y|)`, with `y > 0`.
pub fn n8_generator() -> Result<Point<BigRat>> {
    let (_, e) = n8_pair()?;
    let tors = torsion_over_q(&e)?;
    let mut best: Option<(i64, i64)> = None;
    for x in 1i64..1000 {
        let v = BigInt::from(x * (x - 12) * (x - 15));
        let Some(y) = crate::exactmath::rational::isqrt_exact(&v) else { continue };
        let y: i64 = y.try_into().expect("small");
        let p = e.point(int(x), int(y))?;
        if y > 0 && !tors.points.contains(&p) && best.is_none_or(|(bx, by)| x.max(y) < bx.max(by)) {
            best = Some((x, y));
        }
    }
    let (x, y) = best.ok_or_else(|| Error::Inconclusive("no generator below the search bound".into()))?;
    e.point(int(x), int(y))
}

/// Polynomials from `nG`, `n = 1, 2, ...`, keeping the first `count` that
/// pass the oracle at `N = 8`.
pub fn n8_family(count: usize) -> Result<Vec<SymQuadPoly>> {
    let (pair, e) = n8_pair()?;
    let g = n8_generator()?;
    let mut out: Vec<SymQuadPoly> = Vec::new();
    let mut p = g.clone();
    for _ in 0..4 * count + 8 {
        if out.len() >= count {
            break;
        }
        let x = pair.coords(&p)?;
        let f = poly_from_roots(Axis::Half, &x[0], &x[1]);
        if f.is_nondegenerate() && square_run_check(&f, 8).is_some() && !out.contains(&f) {
            out.push(f);
        }
        p = e.add(&p, &g);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator() {
        assert_eq!(n8_generator().unwrap(), Point::Affine(int(10), int(10)));
    }

    #[test]
    fn n7_all_degenerate() {
        let r = n7_classification().unwrap();
        assert_eq!(r.torsion_order, 12);
        assert_eq!(r.torsion_structure, vec![2, 6]);
        assert!(r.all_degenerate);
    }

    #[test]
    fn families_pass_the_oracle() {
        for (n, fam) in [(5, conic_family(5, 4).unwrap()), (6, conic_family(6, 4).unwrap()), (8, n8_family(3).unwrap())] {
            assert!(fam.len() >= 3, "N = {n}");
            for f in &fam {
                assert!(square_run_check(f, n).is_some(), "{f}");
                assert!(f.is_nondegenerate());
            }
        }
    }
}
