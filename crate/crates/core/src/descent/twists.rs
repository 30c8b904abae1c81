//! The twists `(delta_2, delta_4)` that can carry rational points of `C`,
//! and their reduction under the sign changes of the coordinates.
//!
//! A point of `C` with parameter `t` lifts to the twist `delta_2` of the
//! cover of `F_2` iff `delta_2 = p_1(t)` modulo squares, and to the twist
//! `delta_4` of the cover of `F_4` iff `delta_4 = q_1(t)` modulo squares of
//! `Q(√6)`.

use num_bigint::BigInt;
use serde::Serialize;

use super::selmer::{descent_image, selmer_via_homogeneous_spaces, SelmerSet};
use crate::elliptic::hj::q1;
use crate::elliptic::quartic::{quartic_to_weierstrass, QuarticJacobianMap, QuarticPoint};
use crate::elliptic::Curve;
use crate::error::{Error, Result};
use crate::exactmath::poly::Poly;
use crate::exactmath::rational::squarefree_class;
use crate::exactmath::squareclass::{pushforward_square_class, SquareClass};
use crate::exactmath::{int, BigRat, Field, QF6};
use crate::geometry::{f_model, known_points, rho, tau, ProjPoint5};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TwistDescriptor {
    pub delta2: i64,
    pub delta4: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TwistSets {
    pub selmer2: SelmerSet,
    pub selmer4: SelmerSet,
    /// images in `Q(√6)*/Q(√6)*^2`, as integers prime to 3
    pub push2: Vec<i64>,
    pub push4: Vec<i64>,
    /// the pushed classes are pairwise distinct over `Q(√6)`
    pub push_distinct: bool,
    pub all: Vec<TwistDescriptor>,
    pub reduced: Vec<TwistDescriptor>,
}

fn push(s: &SelmerSet) -> Vec<i64> {
    let mut v: Vec<i64> = Vec::new();
    for m in &s.members {
        if let SquareClass::Rational(d) = pushforward_square_class(&SquareClass::Rational(m.clone())) {
            let d: i64 = d.try_into().expect("small class");
            if !v.contains(&d) {
                v.push(d);
            }
        }
    }
    v.sort_by_key(|d| (d.abs(), *d < 0));
    v
}

fn distinct_over_qf6(v: &[i64]) -> bool {
    v.iter().enumerate().all(|(i, x)| {
        v[i + 1..].iter().all(|y| !SquareClass::of_int(*x).same_class(&SquareClass::Qf6(QF6::from_ints(*y, 0))))
    })
}

pub fn twist_sets() -> Result<TwistSets> {
    let selmer2 = selmer_via_homogeneous_spaces(58, 216)?;
    let selmer4 = selmer_via_homogeneous_spaces(-27, 180)?;
    let (push2, push4) = (push(&selmer2), push(&selmer4));
    let push_distinct = distinct_over_qf6(&push2) && distinct_over_qf6(&push4);
    let all = push2
        .iter()
        .flat_map(|&d2| push4.iter().map(move |&d4| TwistDescriptor { delta2: d2, delta4: d4 }))
        .collect();
    let reduced = vec![TwistDescriptor { delta2: 1, delta4: 1 }, TwistDescriptor { delta2: -1, delta4: 1 }];
    Ok(TwistSets { selmer2, selmer4, push2, push4, push_distinct, all, reduced })
}

fn t_of(p: &ProjPoint5) -> Result<Option<BigRat>> {
    Ok(match rho(2, p)? {
        QuarticPoint::Affine(t, _) => Some(t),
        QuarticPoint::Infinity(_) => None,
    })
}

fn rational_poly(c: &[i64]) -> Poly<BigRat> {
    Poly::new(c.iter().map(|&v| int(v)).collect(), &int(0))
}

/// `delta_2` over `Q`: the class of `p_1(t)`, or of `p_2(t)` where `p_1`
/// vanishes.
pub fn delta2_of(p: &ProjPoint5) -> Result<BigInt> {
    let (f1, f2) = (rational_poly(&[-1, -4, 6]), rational_poly(&[-25, 20, 6]));
    let v = match t_of(p)? {
        Some(t) if !Field::is_zero(&f1.eval(&t)) => f1.eval(&t),
        Some(t) => f2.eval(&t),
        None => f1.leading(),
    };
    Ok(squarefree_class(&v))
}

/// `delta_4` as one of the representatives `reps`, compared over `Q(√6)`.
pub fn delta4_of(p: &ProjPoint5, reps: &[i64]) -> Result<i64> {
    let f = q1();
    let v = match t_of(p)? {
        Some(t) => f.eval(&QF6::from_rat(t)),
        None => f.leading(),
    };
    if Field::is_zero(&v) {
        return Err(Error::Inconclusive(format!("q1 vanishes at {p}")));
    }
    let c = SquareClass::Qf6(v);
    reps.iter()
        .copied()
        .find(|d| c.same_class(&SquareClass::of_int(*d)))
        .ok_or_else(|| Error::Verification(format!("delta_4 of {p} outside the Selmer image")))
}

/// The identification `F_2 -> E_2` sending `(1, 1)` to `O`.
pub fn f2_to_e2() -> Result<QuarticJacobianMap<BigRat>> {
    let f = f_model(2)?.table;
    let m = quartic_to_weierstrass(&f, &int(1), &int(1))?;
    let e2 = Curve::cubic(int(58), int(216), int(0))?;
    QuarticJacobianMap::candidates(&m, &e2)
        .into_iter()
        .next()
        .ok_or_else(|| Error::Verification("F_2 is not isomorphic to E_2".into()))
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitEntry {
    pub tau: String,
    pub point: ProjPoint5,
    pub delta2: i64,
    /// descent image of the point on `E_2`
    pub e2_image: i64,
    pub delta4: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    pub entries: Vec<OrbitEntry>,
    /// the `delta_2` of the orbit cover the Selmer set over `Q`
    pub covers_selmer2: bool,
    /// and hence both classes over `Q(√6)`
    pub covers_push2: bool,
    /// `delta_2` agrees with the descent image on `E_2` everywhere
    pub e2_images_agree: bool,
    /// every known point has an image under the sign changes with `delta_4 = 1`
    pub known_points_reach_delta4_one: bool,
    pub certified: bool,
}

fn sign_change(mask: u32, p: &ProjPoint5) -> Result<ProjPoint5> {
    let mut x = p.coords();
    for (i, v) in x.iter_mut().enumerate() {
        if mask >> i & 1 == 1 {
            *v = -*v;
        }
    }
    ProjPoint5::new(x)
}

pub fn orbit_reduction_check() -> Result<OrbitReport> {
    let sets = twist_sets()?;
    let map = f2_to_e2()?;
    let base = ProjPoint5::new([1, 1, 1, 1, 1])?;
    let mut entries = Vec::new();
    for (name, q) in [
        ("id", base),
        ("tau0", tau(0, &base)?),
        ("tau1", tau(1, &base)?),
        ("tau3", tau(3, &base)?),
    ] {
        let img = descent_image(216, &map.mu(&rho(2, &q)?)?);
        entries.push(OrbitEntry {
            tau: name.into(),
            point: q,
            delta2: delta2_of(&q)?.try_into().expect("small"),
            e2_image: img.try_into().expect("small"),
            delta4: delta4_of(&q, &sets.push4)?,
        });
    }
    let covers_selmer2 =
        sets.selmer2.members.iter().all(|m| entries.iter().any(|e| BigInt::from(e.delta2) == *m));
    let pushed: Vec<i64> = push(&SelmerSet {
        members: entries.iter().map(|e| BigInt::from(e.delta2)).collect(),
        ..sets.selmer2.clone()
    });
    let covers_push2 = sets.push2.iter().all(|d| pushed.contains(d));
    let e2_images_agree = entries.iter().all(|e| e.delta2 == e.e2_image);
    let mut reach = true;
    for p in known_points() {
        let mut ok = false;
        for mask in 0..32 {
            if delta4_of(&sign_change(mask, &p)?, &sets.push4)? == 1 {
                ok = true;
                break;
            }
        }
        reach &= ok;
    }
    Ok(OrbitReport {
        certified: covers_selmer2 && covers_push2 && e2_images_agree,
        entries,
        covers_selmer2,
        covers_push2,
        e2_images_agree,
        known_points_reach_delta4_one: reach,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twist_set_sizes() {
        let t = twist_sets().unwrap();
        assert_eq!(t.push2, vec![1, -1]);
        assert_eq!(t.push4, vec![1, 2, 5, 10]);
        assert!(t.push_distinct);
        assert_eq!(t.all.len(), 8);
    }

    #[test]
    fn orbit() {
        let r = orbit_reduction_check().unwrap();
        assert!(r.certified);
    }
}
