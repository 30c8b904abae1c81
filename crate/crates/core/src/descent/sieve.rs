//! Facts about `S± = <G, T±>` inside `J±(Q(√6))` read off from reductions
//! at good primes of `Z[√6]`: a torsion bound, and that `S±` is saturated
//! at every prime below 14.
//!
//! Inert primes alone cannot rule out `G = 2Q` on `J⁺`: there `x(G) - x(T)`
//! is a square in `Q(√6)`, and `G` reduces into `2J⁺(F_{q^2})` at every
//! inert `q` tried. Split primes do decide it.

use std::fmt;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::elliptic::finite::{multiples, points, points_in};
use crate::elliptic::hj::{g_point, j_curve, t_point, Sign};
use crate::elliptic::{reduce_curve, reduce_curve_split, reduce_point, reduce_point_split, Point};
use crate::error::Result;
use crate::exactmath::{is_inert, is_split, sqrt6_mod, Fp, QF6};

/// A degree one prime of `Z[√6]` above an odd rational prime: `(q)` for
/// inert `q`, or `(q, √6 - r)` for split `q`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Place {
    Inert(u64),
    Split(u64, u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Inert(q) => write!(f, "{q}"),
            Place::Split(q, r) => write!(f, "({q}, √6-{r})"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Inert primes in `[5, bound)` of good reduction for `J±`.
pub fn good_inert_primes(sign: Sign, bound: u64) -> Vec<u64> {
    let e = j_curve(sign);
    (5..bound).filter(|&q| is_inert(q) && reduce_curve(&e, q, 1).is_ok()).collect()
}

/// Places above primes in `[5, bound)` of good reduction for `J±`.
pub fn good_places(sign: Sign, bound: u64) -> Vec<Place> {
    let e = j_curve(sign);
    let mut out = Vec::new();
    for q in 5..bound {
        if is_inert(q) && reduce_curve(&e, q, 1).is_ok() {
            out.push(Place::Inert(q));
        } else if is_split(q) {
            for r in sqrt6_mod(q).expect("split") {
                if reduce_curve_split(&e, q, r).is_ok() {
                    out.push(Place::Split(q, r));
                }
            }
        }
    }
    out
}

/// `#J±` over the residue field, and whether the reduction of `pt` lies in
/// `m` times that group.
fn local_data(sign: Sign, place: Place, pt: &Point<QF6>, m: u64) -> Result<(u64, bool)> {
    let e = j_curve(sign);
    match place {
        Place::Inert(q) => {
            let er = reduce_curve(&e, q, 1)?;
            let pts = points(&er);
            let inside = pts.len() as u64 % m != 0 || multiples(&er, &pts, m as i64).contains(&reduce_point(pt, q, 1)?);
            Ok((pts.len() as u64, inside))
        }
        Place::Split(q, r) => {
            let er = reduce_curve_split(&e, q, r)?;
            let pts = points_in(&er, &Fp::elements(q));
            let inside =
                pts.len() as u64 % m != 0 || multiples(&er, &pts, m as i64).contains(&reduce_point_split(pt, q, r)?);
            Ok((pts.len() as u64, inside))
        }
    }
}

fn group_order(sign: Sign, place: Place) -> Result<u64> {
    Ok(local_data(sign, place, &Point::Infinity, 1)?.0)
}

/// `false` certifies that `pt` is not `p` times a point of `J±(Q(√6))`:
/// some reduction of `pt` lies outside `p` times the group of the residue
/// curve. `true` means no place in `places` decides.
pub fn p_divisibility_sieve(sign: Sign, pt: &Point<QF6>, p: u64, places: &[Place]) -> Result<bool> {
    Ok(certificate(sign, pt, p, places)?.is_none())
}

fn certificate(sign: Sign, pt: &Point<QF6>, p: u64, places: &[Place]) -> Result<Option<Place>> {
    for &v in places {
        if !local_data(sign, v, pt, p)?.1 {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, Serialize)]
pub struct DivisibilityCheck {
    pub p: u64,
    pub point: String,
    /// place whose reduction certifies non-divisibility
    pub certified_by: Option<Place>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SieveReport {
    pub sign: Sign,
    pub places: Vec<Place>,
    pub group_orders: Vec<u64>,
    /// gcd of the group orders; the torsion order divides it
    pub torsion_bound: u64,
    pub t_has_order_two: bool,
    /// `m G != O` for `m` the torsion bound, so `G` has infinite order
    pub g_non_torsion: bool,
    pub checks: Vec<DivisibilityCheck>,
    pub saturated_below_14: bool,
}

/// Runs the checks for one sign with places above primes below `bound`.
pub fn sieve_report(sign: Sign, bound: u64) -> Result<SieveReport> {
    let e = j_curve(sign);
    let places = good_places(sign, bound);
    let orders = places.iter().map(|&v| group_order(sign, v)).collect::<Result<Vec<_>>>()?;
    let torsion_bound = orders.iter().fold(0u64, |g, n| g.gcd(n));
    let (g, t) = (g_point(), t_point(sign));
    let t_has_order_two = !t.is_infinity() && e.mul(2, &t).is_infinity();
    let g_non_torsion = torsion_bound > 0 && !e.mul(torsion_bound as i64, &g).is_infinity();
    let gt = e.add(&g, &t);
    let mut checks = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13] {
        // S/pS is generated by G for odd p, and by G and T for p = 2
        let cands: Vec<(&str, &Point<QF6>)> =
            if p == 2 { vec![("G", &g), ("T", &t), ("G+T", &gt)] } else { vec![("G", &g)] };
        for (name, pt) in cands {
            checks.push(DivisibilityCheck { p, point: name.into(), certified_by: certificate(sign, pt, p, &places)? });
        }
    }
    let saturated_below_14 = checks.iter().all(|c| c.certified_by.is_some());
    Ok(SieveReport { sign, places, group_orders: orders, torsion_bound, t_has_order_two, g_non_torsion, checks, saturated_below_14 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_is_not_divisible() {
        for sign in [Sign::Plus, Sign::Minus] {
            let r = sieve_report(sign, 120).unwrap();
            assert!(r.t_has_order_two && r.g_non_torsion, "{sign:?}");
            assert!(r.saturated_below_14, "{}", serde_json::to_string(&r).unwrap());
            assert_eq!(r.torsion_bound, 2, "{sign:?}");
        }
    }

    #[test]
    fn inert_primes_miss_the_halving_obstruction() {
        let inert: Vec<Place> = good_inert_primes(Sign::Plus, 120).into_iter().map(Place::Inert).collect();
        assert!(p_divisibility_sieve(Sign::Plus, &g_point(), 2, &inert).unwrap());
        let places = good_places(Sign::Plus, 60);
        assert!(!p_divisibility_sieve(Sign::Plus, &g_point(), 2, &places).unwrap());
        assert_eq!(certificate(Sign::Plus, &g_point(), 2, &places).unwrap(), Some(Place::Split(19, 5)));
    }

    #[test]
    fn a_double_is_inconclusive() {
        let e = j_curve(Sign::Plus);
        let g2 = e.mul(2, &g_point());
        assert!(p_divisibility_sieve(Sign::Plus, &g2, 2, &good_places(Sign::Plus, 60)).unwrap());
    }
}
