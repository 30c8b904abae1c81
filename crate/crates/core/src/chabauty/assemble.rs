//! The full Chabauty run for one sign, and the assembly of `C(Q)` from the
//! `t`-values it leaves.

use std::collections::BTreeSet;

use serde::Serialize;

use super::fibers::{holds_rational_point, lift_and_kill, sieve_mod_p, FiberClass, FiberStatus};
use super::reduced::{chabauty_prime, reduce_curve_and_points, subgroup_surjectivity_check, SurjectivityCheck};
use super::series::{
    closed_form, involution_preserves_pi, multiplication_linearization_check, pi_formal_series, theta_coefficients,
    theta_split_and_strassmann, Linearization, PadicSeries, StrassmannReport, TRUNCATION,
};
use crate::descent::twists::{delta2_of, delta4_of};
use crate::descent::{twist_sets, SieveReport, TwistDescriptor};
use crate::elliptic::hj::{g_point, j_curve, jacobian_map, sample_points, LinearProjection, Sign};
use crate::elliptic::Point;
use crate::error::{Error, Result};
use crate::exactmath::squareclass::SquareClass;
use crate::exactmath::{BigRat, QF6};
use crate::geometry::conic::rat_sqrt;
use crate::geometry::tz::{p_poly, q_poly};
use crate::geometry::{contains, known_points, point_to_poly, tau, tz_to_c, ProjPoint5, TZPoint};
use crate::polyruns::SymQuadPoly;

/// Deepest level tried before a class is declared inconclusive.
const MAX_LEVEL: u32 = 3;

#[derive(Clone, Debug, Serialize)]
pub struct KillRecord {
    pub class: String,
    pub level: u32,
    pub lifts_examined: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChabautyReport {
    pub sign: String,
    pub projection: String,
    pub prime: u64,
    pub group_order: u64,
    pub generator_orders: [u64; 2],
    pub surjectivity: SurjectivityCheck,
    pub classes: Vec<FiberClass>,
    pub survivors: Vec<String>,
    pub kills: Vec<KillRecord>,
    pub series: PadicSeries,
    pub series_matches_closed_form: bool,
    pub linearization: Linearization,
    pub strassmann: Vec<StrassmannReport>,
    /// `Theta` on the fiber of `-G` is `Theta` on `O` at `-n`, and the
    /// involution `Q -> -Q - G` preserves `pi`
    pub involution_agrees: bool,
    /// the points of `J` with rational `pi`
    pub final_points: Vec<String>,
    pub t_values: Vec<String>,
    /// `t` under `pi` equals `t` under the derived inverse map
    pub t_matches_inverse_map: bool,
    #[serde(skip)]
    pub t_rational: Vec<BigRat>,
    pub certified: bool,
}

/// `t` at `p` under `pi`, and whether it matches the derived inverse map.
fn t_of(sign: Sign, pi: &LinearProjection, p: &Point<QF6>) -> Result<(BigRat, bool)> {
    let (u, v) = pi.eval(&j_curve(sign), p)?;
    let t = u.div(&v)?;
    if !t.is_rational() {
        return Err(Error::Verification(format!("t = {t} at {p} is not rational")));
    }
    let (du, dv) = jacobian_map(sign)?.pi(p)?;
    Ok((t.a, du * &v == dv * &u))
}

/// Sieve, lift, expand and count for one sign, using a certified `pi`.
pub fn run_chabauty(sign: Sign, pi: &LinearProjection, sieve: &SieveReport) -> Result<ChabautyReport> {
    let p = chabauty_prime(sign);
    let r = reduce_curve_and_points(sign, p)?;
    let surjectivity = subgroup_surjectivity_check(&r, sieve);
    let mut classes = sieve_mod_p(&r, pi)?;
    let mut survivors: Vec<String> =
        classes.iter().filter(|c| c.status == FiberStatus::Survivor).map(|c| c.class.clone()).collect();
    survivors.sort();

    let mut kills = Vec::new();
    let mut unresolved = Vec::new();
    let mut good = Vec::new();
    for c in classes.iter_mut().filter(|c| c.status == FiberStatus::Survivor) {
        if holds_rational_point(&r, c, pi)? {
            good.push((c.a, c.b, c.class.clone()));
            continue;
        }
        for level in 2..=MAX_LEVEL {
            let w = lift_and_kill(&r, c, pi, level)?;
            if c.status != FiberStatus::Survivor {
                kills.push(KillRecord { class: c.class.clone(), level, lifts_examined: w.lifts_examined });
                break;
            }
        }
        if c.status == FiberStatus::Survivor {
            unresolved.push(c.class.clone());
        }
    }

    let series = pi_formal_series(sign, p, pi, TRUNCATION)?;
    let closed: Vec<String> = closed_form(pi, TRUNCATION).iter().map(|x| x.to_string()).collect();
    let series_matches_closed_form = series.exact.as_ref() == Some(&closed);
    let linearization = multiplication_linearization_check(&r, 10)?;

    let e = j_curve(sign);
    let mut strassmann = Vec::new();
    let mut final_points = Vec::new();
    let mut t_rational = Vec::new();
    let mut t_matches_inverse_map = true;
    for (a, b, label) in &good {
        if *b != 0 || !matches!(a, 0 | -1) {
            return Err(Error::Inconclusive(format!("no power series argument for the fiber of {label}")));
        }
        let base = e.mul(*a, &g_point());
        let s = theta_split_and_strassmann(&r, label, &base, pi)?;
        if s.zero_count == 1 {
            // the single zero is n = 0, the base point itself
            final_points.push(base.to_string());
            let (t, agrees) = t_of(sign, pi, &base)?;
            t_matches_inverse_map &= agrees;
            t_rational.push(t);
        }
        strassmann.push(s);
    }
    let (on_o, _, _) = theta_coefficients(&r, &Point::Infinity, pi)?;
    let (on_mg, _, _) = theta_coefficients(&r, &e.neg(&g_point()), pi)?;
    let involution_agrees = on_o
        .iter()
        .zip(&on_mg)
        .enumerate()
        .all(|(i, (x, y))| if i % 2 == 0 { x == y } else { *x == -y.clone() })
        && involution_preserves_pi(sign, pi, &sample_points(sign, 3))?;
    t_rational.sort();
    t_rational.dedup();

    let certified = surjectivity.holds
        && unresolved.is_empty()
        && good.len() == 2
        && strassmann.iter().all(|s| s.zero_count == 1 && s.tail_certified && s.valuation == 1)
        && series_matches_closed_form
        && linearization.holds
        && linearization.formal_group_agrees
        && involution_agrees
        && t_matches_inverse_map
        && t_rational.len() == 1;
    Ok(ChabautyReport {
        sign: sign.symbol().into(),
        projection: pi.formula(),
        prime: p,
        group_order: r.group_order,
        generator_orders: r.generator_orders,
        surjectivity,
        classes,
        survivors,
        kills,
        series,
        series_matches_closed_form,
        linearization,
        strassmann,
        involution_agrees,
        final_points,
        t_values: t_rational.iter().map(|t| t.to_string()).collect(),
        t_matches_inverse_map,
        t_rational,
        certified,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TwistCheck {
    pub t: String,
    pub descriptor: TwistDescriptor,
}

/// Without the orbit reduction every one of the eight twists would need
/// its own run. What is checked here is the twist bookkeeping: each
/// descriptor realized on `C(Q)` is moved into the reduced set by a sign
/// change, so the reduced twists see every orbit.
#[derive(Clone, Debug, Serialize)]
pub struct FallbackCheck {
    pub realized: Vec<TwistDescriptor>,
    pub every_point_reaches_reduced: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AssemblyReport {
    pub tz_points: Vec<TZPoint>,
    pub base_points: Vec<ProjPoint5>,
    pub twists: Vec<TwistCheck>,
    pub points: Vec<ProjPoint5>,
    pub projective_points: usize,
    pub sign_vectors: usize,
    pub polynomials: Vec<SymQuadPoly>,
    pub only_degenerate: bool,
    pub fallback: FallbackCheck,
}

fn sign_change(mask: u32, p: &ProjPoint5) -> Result<ProjPoint5> {
    (0..5).filter(|i| mask >> i & 1 == 1).try_fold(*p, |q, i| tau(i, &q))
}

fn descriptor(p: &ProjPoint5, push2: &[i64], push4: &[i64]) -> Result<TwistDescriptor> {
    let d2 = delta2_of(p)?;
    let c2 = SquareClass::of_rational(&BigRat::from(d2));
    let delta2 = push2
        .iter()
        .copied()
        .find(|d| c2.same_class(&SquareClass::Qf6(QF6::from_ints(*d, 0))))
        .ok_or_else(|| Error::Verification(format!("delta_2 of {p} outside the pushed Selmer set")))?;
    Ok(TwistDescriptor { delta2, delta4: delta4_of(p, push4)? })
}

/// `C(Q)` from the `t`-values left by the Chabauty runs: the points of
/// the `(t, y, z)` model over them, pulled back to `C` and closed under
/// the sign changes. Any difference from the known 32 points is an error.
pub fn assemble_c_points(t_values: &[BigRat]) -> Result<AssemblyReport> {
    let (q, pp) = (q_poly(), p_poly());
    let sets = twist_sets()?;
    let mut tz_points = Vec::new();
    let mut base_points = Vec::new();
    let mut twists = Vec::new();
    for t in t_values {
        let y = rat_sqrt(&q.eval(t)).ok_or_else(|| Error::Verification(format!("q({t}) is not a square")))?;
        let z = rat_sqrt(&pp.eval(t)).ok_or_else(|| Error::Verification(format!("p({t}) is not a square")))?;
        for (sy, sz) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            let s = |v: &BigRat, e: i32| if e < 0 { -v.clone() } else { v.clone() };
            let pt = TZPoint::Affine { t: t.clone(), y: s(&y, sy), z: s(&z, sz) };
            let c = tz_to_c(&pt)?;
            if !base_points.contains(&c) {
                base_points.push(c);
            }
            tz_points.push(pt);
        }
        let first = *base_points.last().expect("a point");
        twists.push(TwistCheck { t: t.to_string(), descriptor: descriptor(&first, &sets.push2, &sets.push4)? });
    }

    let mut all = BTreeSet::new();
    for b in &base_points {
        for mask in 0..32 {
            all.insert(sign_change(mask, b)?);
        }
    }
    let points: Vec<ProjPoint5> = all.into_iter().collect();
    if points != known_points() {
        return Err(Error::Verification(format!("assembled {} points, expected the 32 known ones", points.len())));
    }
    let mut polynomials: Vec<SymQuadPoly> = Vec::new();
    for p in &points {
        if !contains(p) {
            return Err(Error::NotOnCurve(p.to_string()));
        }
        let f = point_to_poly(p)?;
        if !polynomials.contains(&f) {
            polynomials.push(f);
        }
    }
    polynomials.sort_by_key(|f| (f.a.clone(), f.c.clone()));
    let only_degenerate = polynomials.iter().all(|f| !f.is_nondegenerate());

    let mut realized = Vec::new();
    let mut reach = true;
    for p in &points {
        let d = descriptor(p, &sets.push2, &sets.push4)?;
        if !realized.contains(&d) {
            realized.push(d);
        }
        let mut ok = false;
        for mask in 0..32 {
            if sets.reduced.contains(&descriptor(&sign_change(mask, p)?, &sets.push2, &sets.push4)?) {
                ok = true;
                break;
            }
        }
        reach &= ok;
    }
    realized.sort_by_key(|d| (d.delta2, d.delta4));

    Ok(AssemblyReport {
        tz_points,
        base_points,
        twists,
        projective_points: points.len(),
        sign_vectors: 2 * points.len(),
        points,
        polynomials,
        only_degenerate,
        fallback: FallbackCheck { realized, every_point_reaches_reduced: reach },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};

    #[test]
    fn assembly_from_the_two_t_values() {
        let r = assemble_c_points(&[int(1), rat(1, 2)]).unwrap();
        assert_eq!((r.projective_points, r.sign_vectors), (32, 64));
        assert!(r.only_degenerate);
        let d: Vec<(i64, i64)> = r.twists.iter().map(|t| (t.descriptor.delta2, t.descriptor.delta4)).collect();
        assert_eq!(d, [(1, 1), (-1, 1)]);
        assert!(r.fallback.every_point_reaches_reduced);
    }

    #[test]
    fn both_runs_certify() {
        use crate::descent::sieve_report;
        let mut ts = Vec::new();
        for (sign, pi, t) in [
            (Sign::Plus, LinearProjection { c: 2, k: 1 }, int(1)),
            (Sign::Minus, LinearProjection { c: 300, k: 2 }, rat(1, 2)),
        ] {
            let r = run_chabauty(sign, &pi, &sieve_report(sign, 60).unwrap()).unwrap();
            assert!(r.certified, "{sign:?}");
            assert_eq!(r.t_rational, [t]);
            ts.extend(r.t_rational);
        }
        assert_eq!(assemble_c_points(&ts).unwrap().projective_points, 32);
    }

    #[test]
    fn missing_t_value_is_a_hard_failure() {
        assert!(assemble_c_points(&[int(1)]).is_err());
    }
}
