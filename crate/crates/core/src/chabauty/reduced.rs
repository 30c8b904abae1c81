//! `J±` modulo the inert primes 11 and 13, and the image of `S± = <G, T±>`.

use serde::Serialize;

use crate::descent::SieveReport;
use crate::elliptic::finite::{order_of, points, prime_factors};
use crate::elliptic::hj::{g_point, j_curve, t_point, Sign};
use crate::elliptic::{reduce_curve, reduce_point, Curve, Point};
use crate::error::{Error, Result};
use crate::exactmath::{is_inert, ResidueElem, QF6};

/// The prime used for each sign.
pub fn chabauty_prime(sign: Sign) -> u64 {
    match sign {
        Sign::Plus => 11,
        Sign::Minus => 13,
    }
}

/// `bT + aG`, written the usual way: `O`, `-G`, `T+2G`, `4G`, ...
pub fn class_label(a: i64, b: u8) -> String {
    let g = match a {
        0 => String::new(),
        1 => "G".into(),
        -1 => "-G".into(),
        _ => format!("{a}G"),
    };
    match (b, a) {
        (0, 0) => "O".into(),
        (0, _) => g,
        (_, 0) => "T".into(),
        (_, a) if a > 0 => format!("T+{g}"),
        _ => format!("T{g}"),
    }
}

/// `bT + aG` over `Q(√6)`.
pub fn class_point(sign: Sign, a: i64, b: u8) -> Point<QF6> {
    let e = j_curve(sign);
    let ag = e.mul(a, &g_point());
    if b == 0 {
        ag
    } else {
        e.add(&ag, &t_point(sign))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SubgroupElem {
    pub a: i64,
    pub b: u8,
    pub class: String,
    #[serde(skip)]
    pub point: Point<ResidueElem>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReducedGroup {
    pub sign: Sign,
    pub prime: u64,
    #[serde(skip)]
    pub curve: Curve<ResidueElem>,
    pub group_order: u64,
    /// orders of the reductions of `G` and `T`
    pub generator_orders: [u64; 2],
    /// whether the reduction of `T` is a multiple of that of `G`
    pub t_in_span_of_g: bool,
    /// `bT + aG` with `a` in `(-m/2, m/2]`, `m` the order of `G`
    pub subgroup: Vec<SubgroupElem>,
}

impl ReducedGroup {
    pub fn g_order(&self) -> u64 {
        self.generator_orders[0]
    }
}

pub fn reduce_curve_and_points(sign: Sign, p: u64) -> Result<ReducedGroup> {
    if !is_inert(p) {
        return Err(Error::NotInert(p));
    }
    let curve = reduce_curve(&j_curve(sign), p, 1)?;
    let pts = points(&curve);
    if !pts.iter().all(|q| curve.contains(q)) {
        return Err(Error::Verification(format!("enumeration mod {p} left the curve")));
    }
    let n = pts.len() as u64;
    let g = reduce_point(&g_point(), p, 1)?;
    let t = reduce_point(&t_point(sign), p, 1)?;
    let (go, to) = (order_of(&curve, &g, n), order_of(&curve, &t, n));
    let m = go as i64;
    let t_in_span_of_g = (0..m).any(|k| curve.mul(k, &g) == t);
    let mut subgroup = Vec::new();
    for b in 0..to.min(2) as u8 {
        for a in (-(m - 1) / 2)..=(m / 2) {
            let ag = curve.mul(a, &g);
            let point = if b == 0 { ag } else { curve.add(&ag, &t) };
            if !subgroup.iter().any(|s: &SubgroupElem| s.point == point) {
                subgroup.push(SubgroupElem { a, b, class: class_label(a, b), point });
            }
        }
    }
    if n % subgroup.len() as u64 != 0 {
        return Err(Error::Verification("subgroup order does not divide the group order".into()));
    }
    Ok(ReducedGroup { sign, prime: p, curve, group_order: n, generator_orders: [go, to], t_in_span_of_g, subgroup })
}

#[derive(Clone, Debug, Serialize)]
pub struct SurjectivityCheck {
    pub holds: bool,
    /// primes at which the index of `S±` in `J±(Q(√6))` must be a unit
    pub required_primes: Vec<u64>,
    pub reason: String,
}

/// `red(S) = red(J(Q(√6)))`, modulo every power of `p`, when `J(Q(√6)) =
/// Z + Z/2` (rank one is imported), the torsion is `<T>`, and the index of
/// `S` is prime to `p` and to the order of the reduced group.
pub fn subgroup_surjectivity_check(r: &ReducedGroup, sieve: &SieveReport) -> SurjectivityCheck {
    let mut required = prime_factors(r.group_order);
    if !required.contains(&r.prime) {
        required.push(r.prime);
    }
    required.sort();
    let fail = |reason: String| SurjectivityCheck { holds: false, required_primes: required.clone(), reason };
    if sieve.sign != r.sign {
        return fail("sieve report is for the other sign".into());
    }
    if sieve.torsion_bound != 2 || !sieve.t_has_order_two {
        return fail(format!("torsion is not <T>: bound {}", sieve.torsion_bound));
    }
    if !sieve.g_non_torsion {
        return fail("G is not shown to have infinite order".into());
    }
    for &l in &required {
        let checks: Vec<_> = sieve.checks.iter().filter(|c| c.p == l).collect();
        if checks.is_empty() {
            return fail(format!("no divisibility check at {l}"));
        }
        if let Some(c) = checks.iter().find(|c| c.certified_by.is_none()) {
            return fail(format!("{} is not shown to be outside {l}J", c.point));
        }
    }
    SurjectivityCheck {
        holds: true,
        reason: format!(
            "rank one (imported) and torsion <T>; the index of <G, T> is prime to {:?}",
            required
        ),
        required_primes: required,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descent::sieve_report;

    #[test]
    fn labels() {
        assert_eq!(class_label(0, 0), "O");
        assert_eq!(class_label(-1, 0), "-G");
        assert_eq!(class_label(2, 1), "T+2G");
        assert_eq!(class_label(-3, 1), "T-3G");
        assert_eq!(class_label(-5, 0), "-5G");
    }

    #[test]
    fn groups() {
        let r = reduce_curve_and_points(Sign::Plus, 11).unwrap();
        assert_eq!(r.generator_orders, [8, 2]);
        assert!(!r.t_in_span_of_g);
        assert_eq!(r.subgroup.len(), 16);
        let r = reduce_curve_and_points(Sign::Minus, 13).unwrap();
        assert_eq!(r.generator_orders, [12, 2]);
        // T reduces to 6G, so the image is cyclic
        assert!(r.t_in_span_of_g);
        assert_eq!(r.subgroup.len(), 12);
        assert!(reduce_curve_and_points(Sign::Plus, 5).is_err());
    }

    #[test]
    fn surjectivity() {
        for sign in [Sign::Plus, Sign::Minus] {
            let r = reduce_curve_and_points(sign, chabauty_prime(sign)).unwrap();
            let mut s = sieve_report(sign, 60).unwrap();
            let c = subgroup_surjectivity_check(&r, &s);
            assert!(c.holds, "{}", c.reason);
            // without the check at 2 nothing can be said
            s.checks.retain(|c| c.p != 2);
            assert!(!subgroup_surjectivity_check(&r, &s).holds);
        }
    }
}
