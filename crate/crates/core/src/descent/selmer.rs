//! Isogeny Selmer sets for `y^2 = x(x^2 + a x + b)` through the quartic
//! homogeneous spaces `delta w^2 = delta^2 u^4 + a delta u^2 v^2 + b v^4`.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::elliptic::isogeny::TwoTorsionForm;
use crate::elliptic::{Curve, Point};
use crate::error::Result;
use crate::exactmath::local::{local_solvability, DescentForm, Place};
use crate::exactmath::rational::{prime_divisors, signed_squarefree_divisors, squarefree_class, squarefree_part};
use crate::exactmath::BigRat;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelmerSet {
    pub a: i64,
    pub b: i64,
    /// places where local solvability was tested
    pub primes: Vec<u64>,
    /// squarefree representatives, sorted by absolute value then sign
    #[serde(serialize_with = "crate::descent::ser_ints")]
    pub members: Vec<BigInt>,
}

impl SelmerSet {
    pub fn contains(&self, d: &BigInt) -> bool {
        self.members.contains(&squarefree_part(d))
    }

    /// Closure under multiplication of classes.
    pub fn is_group(&self) -> bool {
        self.members.contains(&BigInt::from(1))
            && self.members.iter().all(|x| self.members.iter().all(|y| self.contains(&(x * y))))
    }

    pub fn log2_size(&self) -> Option<u32> {
        let n = self.members.len();
        n.is_power_of_two().then(|| n.trailing_zeros())
    }
}

pub fn sort_classes(v: &mut [BigInt]) {
    v.sort_by(|x, y| (x.magnitude(), x.sign() == num_bigint::Sign::Minus).cmp(&(y.magnitude(), y.sign() == num_bigint::Sign::Minus)));
}

/// Classes `delta | b` whose homogeneous space is soluble at the real place
/// and at every prime dividing `2 b (a^2 - 4b)`.
pub fn selmer_via_homogeneous_spaces(a: i64, b: i64) -> Result<SelmerSet> {
    TwoTorsionForm::new(a, b)?;
    let bb = BigInt::from(b);
    let mut primes = prime_divisors(&(BigInt::from(2) * &bb * BigInt::from(a * a - 4 * b)));
    primes.sort();
    primes.dedup();
    let mut places = vec![Place::Real];
    places.extend(primes.iter().map(|&p| Place::Prime(p)));
    let candidates = signed_squarefree_divisors(&bb);
    let verdicts: Vec<Result<bool>> = candidates
        .par_iter()
        .map(|d| {
            let form = DescentForm { delta: d.clone(), a: a.into(), b: b.into() };
            for place in &places {
                if !local_solvability(&form, *place)? {
                    return Ok(false);
                }
            }
            Ok(true)
        })
        .collect();
    let mut members = Vec::new();
    for (d, v) in candidates.into_iter().zip(verdicts) {
        if v? {
            members.push(d);
        }
    }
    sort_classes(&mut members);
    Ok(SelmerSet { a, b, primes, members })
}

/// `(u : v : w) -> (delta u^2/v^2, delta u w/v^3)`.
pub fn global_point(delta: i64, u: &BigRat, v: &BigRat, w: &BigRat) -> Point<BigRat> {
    if v.is_zero() {
        return Point::Infinity;
    }
    let d = BigRat::from_integer(delta.into());
    Point::Affine(&d * u * u / (v * v), &d * u * w / (v * v * v))
}

/// `x` modulo squares, with `(0, 0) -> b` and `O -> 1`.
pub fn descent_image(b: i64, p: &Point<BigRat>) -> BigInt {
    match p {
        Point::Infinity => BigInt::from(1),
        Point::Affine(x, _) if x.is_zero() => squarefree_part(&BigInt::from(b)),
        Point::Affine(x, _) => squarefree_class(x),
    }
}

/// The subgroup of `Q*/Q*^2` generated by the images of the witnesses.
pub fn image_group(b: i64, witnesses: &[Point<BigRat>]) -> Vec<BigInt> {
    let mut group = vec![BigInt::from(1)];
    for w in witnesses {
        let d = descent_image(b, w);
        if !group.contains(&d) {
            let extra: Vec<BigInt> = group.iter().map(|g| squarefree_part(&(g * &d))).collect();
            group.extend(extra);
        }
    }
    sort_classes(&mut group);
    group
}

#[derive(Clone, Debug, Serialize)]
pub struct Realization {
    #[serde(serialize_with = "crate::descent::ser_ints")]
    pub covered: Vec<BigInt>,
    pub complete: bool,
}

/// Whether the witnesses realise every Selmer class by a rational point.
pub fn selmer_realization_check(e: &Curve<BigRat>, s: &SelmerSet, witnesses: &[Point<BigRat>]) -> Realization {
    debug_assert!(witnesses.iter().all(|w| e.contains(w)));
    let covered = image_group(s.b, witnesses);
    let complete = s.members.iter().all(|m| covered.contains(m));
    Realization { covered, complete }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{big, int};

    fn bigs(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| big(x)).collect()
    }

    #[test]
    fn images() {
        let p = |x: i64, y: i64| Point::Affine(int(x), int(y));
        assert_eq!(descent_image(216, &p(36, -360)), big(1));
        assert_eq!(descent_image(216, &p(-54, 0)), big(-6));
        assert_eq!(descent_image(216, &p(0, 0)), big(6));
        assert_eq!(descent_image(216, &Point::Infinity), big(1));
    }

    #[test]
    fn global_point_lands_on_curve() {
        let e = Curve::cubic(int(58), int(216), int(0)).unwrap();
        // delta = 1 has (u, v, w) = (1, 0, 1) and the point (36, -360) has u/v = 6, w = -60
        let q = global_point(1, &int(6), &int(1), &int(-60));
        assert!(e.contains(&q));
        assert_eq!(q, Point::Affine(int(36), int(-360)));
    }

    #[test]
    fn small_selmer_sets() {
        let s = selmer_via_homogeneous_spaces(58, 216).unwrap();
        assert_eq!(s.members, bigs(&[1, -1, 6, -6]));
        assert!(s.is_group());
    }
}
