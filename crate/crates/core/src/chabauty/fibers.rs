//! Sieving the classes of `red_p(S±)` by the condition `pi(R) in P^1(F_p)`,
//! and killing the remaining bad classes with lifts modulo `p^m`.

use rayon::prelude::*;
use serde::Serialize;

use super::reduced::{class_point, ReducedGroup};
use crate::elliptic::formal::{translate, z_of, FormalGroup};
use crate::elliptic::hj::{g_point, j_curve, LinearProjection};
use crate::elliptic::{reduce_curve, Point};
use crate::error::{Error, Result};
use crate::exactmath::series::map_series;
use crate::exactmath::{residue_reduce, Field, ResidueElem, QF6};

/// `(u : v)` lies in the image of `P^1(Z/p^m)`; `None` when neither
/// coordinate is a unit.
pub fn proj_rational(num: &ResidueElem, den: &ResidueElem) -> Option<bool> {
    let ratio = if den.is_unit() {
        num.clone() * &den.inv()?
    } else if num.is_unit() {
        den.clone() * &num.inv()?
    } else {
        return None;
    };
    Some(ratio.is_rational())
}

fn show_proj(num: &ResidueElem, den: &ResidueElem) -> String {
    let f = |r: &ResidueElem| super::series::show(r);
    match den.inv() {
        Some(d) => f(&(num.clone() * &d)),
        None if den.is_zero() => "oo".into(),
        None => format!("({} : {})", f(num), f(den)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FiberStatus {
    Survivor,
    KilledModP,
    KilledModP2,
    KilledModP3,
}

impl FiberStatus {
    fn killed_at(level: u32) -> Option<FiberStatus> {
        match level {
            1 => Some(FiberStatus::KilledModP),
            2 => Some(FiberStatus::KilledModP2),
            3 => Some(FiberStatus::KilledModP3),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftWitness {
    pub level: u32,
    pub lifts_examined: u64,
    /// lifts whose image under `pi` is rational modulo `p^level`
    pub rational_lifts: u64,
    pub indeterminate_lifts: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberClass {
    pub class: String,
    pub a: i64,
    pub b: u8,
    /// `pi(R)` in `P^1(F_{p^2})`
    pub pi_mod_p: String,
    pub status: FiberStatus,
    pub witness: Vec<LiftWitness>,
}

/// Classes `R` of `red_p(S)` with `pi(R)` in `P^1(F_p)` survive.
pub fn sieve_mod_p(r: &ReducedGroup, pi: &LinearProjection) -> Result<Vec<FiberClass>> {
    let mut out = Vec::new();
    for s in &r.subgroup {
        let (u, v) = pi.eval(&r.curve, &s.point)?;
        let ok = proj_rational(&u, &v).ok_or_else(|| Error::Inconclusive(format!("pi undefined at {}", s.class)))?;
        out.push(FiberClass {
            class: s.class.clone(),
            a: s.a,
            b: s.b,
            pi_mod_p: show_proj(&u, &v),
            status: if ok { FiberStatus::Survivor } else { FiberStatus::KilledModP },
            witness: Vec::new(),
        });
    }
    Ok(out)
}

/// `z(mG)` for `m` the order of the reduction of `G`: a generator, over
/// `Z_p`, of the kernel of reduction on `S`.
pub fn kernel_parameter(r: &ReducedGroup) -> Result<QF6> {
    let e = j_curve(r.sign);
    let q = e.mul(r.g_order() as i64, &g_point());
    let z = z_of(&q)?;
    let v = residue_reduce(&z, r.prime, 2)?.valuation();
    if v != 1 {
        return Err(Error::Verification(format!("z({}G) has valuation {v}, expected 1", r.g_order())));
    }
    Ok(z)
}

/// `pi(R + Q)` as a projective pair of power series in `z(Q)`, reduced
/// modulo `p^level`, for the exact representative `R` of a class.
fn pi_series_at(
    r: &ReducedGroup,
    base: &Point<QF6>,
    pi: &LinearProjection,
    level: u32,
) -> Result<(crate::exactmath::series::Laurent<ResidueElem>, crate::exactmath::series::Laurent<ResidueElem>)> {
    let e = j_curve(r.sign);
    let (x, y) = translate(&e, base, level as usize)?;
    let red = |c: &QF6| residue_reduce(c, r.prime, level);
    let (x, y) = (map_series(&x, red)?, map_series(&y, red)?);
    let one = ResidueElem::new(r.prime, level, 1, 0);
    let num = y.clone();
    let den = x.scale(&one.int_like(pi.c)).add(&y.scale(&one.int_like(pi.k)));
    Ok((num, den))
}

/// Runs through the lifts `R + nQ`, `0 <= n < p^(level-1)`, of a class in
/// `red_{p^level}(S)`, and kills the class if none has rational `pi`.
pub fn lift_and_kill(r: &ReducedGroup, class: &mut FiberClass, pi: &LinearProjection, level: u32) -> Result<LiftWitness> {
    if class.status != FiberStatus::Survivor {
        return Err(Error::InvalidArgument(format!("{} is not a survivor", class.class)));
    }
    let p = r.prime;
    let base = class_point(r.sign, class.a, class.b);
    if base.is_infinity() {
        return Err(Error::InvalidArgument("the class of O holds a rational point".into()));
    }
    let (num, den) = pi_series_at(r, &base, pi, level)?;
    if num.val < 0 || den.val < 0 {
        return Err(Error::Verification(format!("pi has a pole along {}", class.class)));
    }
    let z1 = residue_reduce(&kernel_parameter(r)?, p, level)?;
    let fg = FormalGroup::new(reduce_curve(&j_curve(r.sign), p, level)?, 3 * level as usize + 4);
    let count = p.pow(level - 1);
    let mut zs = Vec::with_capacity(count as usize);
    let mut z = z1.zero_like();
    for _ in 0..count {
        zs.push(z.clone());
        z = fg.add(&z, &z1)?;
    }
    let verdicts: Vec<Option<bool>> = zs.par_iter().map(|z| proj_rational(&num.eval(z), &den.eval(z))).collect();
    let w = LiftWitness {
        level,
        lifts_examined: count,
        rational_lifts: verdicts.iter().filter(|v| **v == Some(true)).count() as u64,
        indeterminate_lifts: verdicts.iter().filter(|v| v.is_none()).count() as u64,
    };
    if w.rational_lifts == 0 && w.indeterminate_lifts == 0 {
        class.status = FiberStatus::killed_at(level).ok_or_else(|| Error::InvalidArgument(format!("level {level}")))?;
    }
    class.witness.push(w.clone());
    Ok(w)
}

/// `pi(R)` is rational for the exact representative `R`: the class holds
/// a genuine point and can only be settled by a power series argument.
pub fn holds_rational_point(r: &ReducedGroup, class: &FiberClass, pi: &LinearProjection) -> Result<bool> {
    let e = j_curve(r.sign);
    let (u, v) = pi.eval(&e, &class_point(r.sign, class.a, class.b))?;
    Ok(if v.is_zero() { true } else { u.div(&v)?.is_rational() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chabauty::reduced::{chabauty_prime, reduce_curve_and_points};
    use crate::elliptic::hj::Sign;

    fn proj(sign: Sign) -> LinearProjection {
        match sign {
            Sign::Plus => LinearProjection { c: 2, k: 1 },
            Sign::Minus => LinearProjection { c: 300, k: 2 },
        }
    }

    fn survivors(sign: Sign) -> Vec<String> {
        let r = reduce_curve_and_points(sign, chabauty_prime(sign)).unwrap();
        let mut v: Vec<String> = sieve_mod_p(&r, &proj(sign))
            .unwrap()
            .into_iter()
            .filter(|c| c.status == FiberStatus::Survivor)
            .map(|c| c.class)
            .collect();
        v.sort();
        v
    }

    #[test]
    fn survivor_classes() {
        assert_eq!(survivors(Sign::Plus), ["-G", "O", "T+2G", "T-3G"]);
        assert_eq!(survivors(Sign::Minus), ["-5G", "-G", "4G", "O"]);
    }

    #[test]
    fn kernel_parameters() {
        let r = reduce_curve_and_points(Sign::Plus, 11).unwrap();
        let z = residue_reduce(&kernel_parameter(&r).unwrap(), 11, 2).unwrap();
        assert_eq!(z, ResidueElem::new(11, 2, 11, -22));
        let r = reduce_curve_and_points(Sign::Minus, 13).unwrap();
        let z = residue_reduce(&kernel_parameter(&r).unwrap(), 13, 2).unwrap();
        assert_eq!(z, ResidueElem::new(13, 2, 26, -39));
    }

    fn bad_classes(sign: Sign) -> (ReducedGroup, Vec<FiberClass>) {
        let r = reduce_curve_and_points(sign, chabauty_prime(sign)).unwrap();
        let v = sieve_mod_p(&r, &proj(sign))
            .unwrap()
            .into_iter()
            .filter(|c| c.status == FiberStatus::Survivor && !holds_rational_point(&r, c, &proj(sign)).unwrap())
            .collect();
        (r, v)
    }

    #[test]
    fn plus_classes_die_mod_121() {
        let (r, mut bad) = bad_classes(Sign::Plus);
        assert_eq!(bad.len(), 2);
        let mut total = 0;
        for c in bad.iter_mut() {
            let w = lift_and_kill(&r, c, &proj(Sign::Plus), 2).unwrap();
            total += w.lifts_examined;
            assert_eq!(c.status, FiberStatus::KilledModP2, "{}", c.class);
        }
        assert_eq!(total, 22);
    }

    #[test]
    fn minus_classes_die_mod_13_cubed() {
        let (r, mut bad) = bad_classes(Sign::Minus);
        assert_eq!(bad.len(), 2);
        let mut total = 0;
        for c in bad.iter_mut() {
            let w = lift_and_kill(&r, c, &proj(Sign::Minus), 2).unwrap();
            assert_eq!(w.rational_lifts, 13, "{}", c.class);
            assert_eq!(c.status, FiberStatus::Survivor);
            let w = lift_and_kill(&r, c, &proj(Sign::Minus), 3).unwrap();
            total += w.lifts_examined;
            assert_eq!(c.status, FiberStatus::KilledModP3, "{}", c.class);
        }
        assert_eq!(total, 2 * 13 * 13);
    }
}
