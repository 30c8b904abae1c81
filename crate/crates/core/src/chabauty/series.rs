//! Power series on the fibers of `O` and `-G`: `pi` in the formal parameter
//! `z`, the series `Theta(n) = pi(B + nQ)` in `n`, and Strassmann's bound
//! on the `√6`-component `Theta_1`.

use serde::Serialize;

use super::fibers::kernel_parameter;
use super::reduced::ReducedGroup;
use crate::elliptic::formal::{log_coeffs, revert, translate, xy_series, z_of, FormalGroup};
use crate::elliptic::hj::{g_point, j_curve, LinearProjection, Sign};
use crate::elliptic::{reduce_curve, Curve, Point};
use crate::error::{Error, Result};
use crate::exactmath::series::Laurent;
use crate::exactmath::padic::RELATIVE_PRECISION;
use crate::exactmath::{residue_reduce, Field, Padic, ResidueElem, QF6};

/// Terms kept in every series.
pub const TRUNCATION: usize = 6;
/// Coefficients are reported modulo `p^PRECISION`.
pub const PRECISION: u32 = 4;

/// `a+b√6` with signed representatives, e.g. `22-44√6`.
pub fn show(r: &ResidueElem) -> String {
    let m = r.modulus();
    let (a, b) = (ResidueElem::signed(r.a, m), ResidueElem::signed(r.b, m));
    match (a, b) {
        (a, 0) => format!("{a}"),
        (0, b) => format!("{b}√6"),
        (a, b) if b < 0 => format!("{a}{b}√6"),
        (a, b) => format!("{a}+{b}√6"),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PadicSeries {
    pub p: u64,
    pub variable: String,
    pub truncation: usize,
    /// every coefficient is known modulo `p^precision`
    pub precision: u32,
    pub coefficients: Vec<String>,
    /// exact coefficients, when the series is defined over `Q(√6)`
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<Vec<String>>,
    pub valuations: Vec<u32>,
    /// lower bound for `v_p` of the coefficient of index `i`, all `i`
    pub tail_bound: String,
}

fn reduce_all(c: &[QF6], p: u64, k: u32) -> Result<Vec<ResidueElem>> {
    c.iter().map(|x| residue_reduce(x, p, k)).collect()
}

/// `pi(B + Q(z))` as a power series in `z` for `B` affine or `O`.
fn pi_in_z(e: &Curve<QF6>, base: &Point<QF6>, pi: &LinearProjection, terms: usize) -> Result<Vec<QF6>> {
    let (x, y) = match base {
        Point::Infinity => xy_series(e, terms + 4)?,
        _ => translate(e, base, terms + 4)?,
    };
    let den = x.scale(&e.k(pi.c)).add(&y.scale(&e.k(pi.k)));
    let s = y.div(&den)?.normalized();
    if s.val < 0 || s.precision() < terms as i64 {
        return Err(Error::Precision(format!("pi series: valuation {}, precision {}", s.val, s.precision())));
    }
    Ok((0..terms as i64).map(|k| s.coeff(k)).collect())
}

/// `pi(z)` at `O` for a certified projection.
pub fn pi_formal_series(sign: Sign, p: u64, pi: &LinearProjection, terms: usize) -> Result<PadicSeries> {
    let e = j_curve(sign);
    let c = pi_in_z(&e, &Point::Infinity, pi, terms)?;
    let res = reduce_all(&c, p, PRECISION)?;
    Ok(PadicSeries {
        p,
        variable: "z".into(),
        truncation: terms,
        precision: PRECISION,
        coefficients: res.iter().map(show).collect(),
        exact: Some(c.iter().map(|x| x.to_string()).collect()),
        valuations: res.iter().map(|r| r.valuation()).collect(),
        tail_bound: format!("0: pi = 1/({} - {} z) has p-integral coefficients", pi.k, pi.c),
    })
}

/// `pi = y/(cx + ky) = 1/(k - cz)`, so the coefficients are `c^i/k^(i+1)`.
pub fn closed_form(pi: &LinearProjection, terms: usize) -> Vec<QF6> {
    (0..terms as u32)
        .map(|i| QF6::from_rat(crate::exactmath::rat(pi.c.pow(i), pi.k.pow(i + 1))))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Linearization {
    pub n_max: i64,
    /// `z(nQ) = n z(Q)` modulo `p^2` for every `n <= n_max`, by exact
    /// multiplication over `Q(√6)`
    pub holds: bool,
    /// the same values from the formal group law modulo `p^2`
    pub formal_group_agrees: bool,
}

/// `z(nQ) = n z(Q) mod p^2` for `Q = mG`, `n = 1..n_max`. The multiples
/// are taken in the completion at `p`, where heights do not grow.
pub fn multiplication_linearization_check(r: &ReducedGroup, n_max: i64) -> Result<Linearization> {
    let e = j_curve(r.sign);
    let p = r.prime;
    let q = e.mul(r.g_order() as i64, &g_point());
    let z1 = residue_reduce(&z_of(&q)?, p, 2)?;
    let fg = FormalGroup::new(reduce_curve(&e, p, 2)?, 10);
    let emb = |x: &QF6| Padic::from_qf6(x, p, RELATIVE_PRECISION);
    let ep = Curve { a1: emb(&e.a1)?, a2: emb(&e.a2)?, a3: emb(&e.a3)?, a4: emb(&e.a4)?, a6: emb(&e.a6)? };
    let qp = match &q {
        Point::Affine(x, y) => Point::Affine(emb(x)?, emb(y)?),
        Point::Infinity => return Err(Error::Verification("mG is the identity".into())),
    };
    let (mut holds, mut agrees) = (true, true);
    let mut nq = Point::Infinity;
    let mut fz = z1.zero_like();
    for n in 1..=n_max {
        nq = ep.try_add(&nq, &qp)?;
        fz = fg.add(&fz, &z1)?;
        let z = z_of(&nq)?.reduce(2)?;
        holds &= z == z1.int_like(n) * &z1;
        agrees &= z == fz;
    }
    Ok(Linearization { n_max, holds, formal_group_agrees: agrees })
}

#[derive(Clone, Debug, Serialize)]
pub struct StrassmannReport {
    pub fiber: String,
    /// `pi` at the base point of the fiber
    pub base_value: String,
    /// `z(mG)` and its formal logarithm, modulo `p^precision`
    pub z_kernel: String,
    pub log_kernel: String,
    /// `Theta(n) = pi(B + n mG)`
    pub theta: PadicSeries,
    /// `Theta` modulo `p^2` through the linear term
    pub linear_term: String,
    pub theta1_vanishes_at_zero: bool,
    /// coefficient of `n` in `Theta_1`, signed, modulo `p^2`
    pub slope: i64,
    pub valuation: u32,
    /// `v_p` of every computed `Theta_1` coefficient of index `i >= 2` is at
    /// least 2, and `i v(L) - v_p(i!) >= 2` for all `i >= 2`
    pub tail_certified: bool,
    pub zero_count: u32,
}

fn vp_factorial(i: usize, p: u64) -> u32 {
    let mut v = 0;
    let mut q = p as usize;
    while q <= i {
        v += (i / q) as u32;
        q *= p as usize;
    }
    v
}

/// Coefficients of `Theta(n)` modulo `p^PRECISION` for `B + n mG`.
pub fn theta_coefficients(r: &ReducedGroup, base: &Point<QF6>, pi: &LinearProjection) -> Result<(Vec<ResidueElem>, ResidueElem, ResidueElem)> {
    let e = j_curve(r.sign);
    let (p, k, t) = (r.prime, PRECISION, TRUNCATION);
    if t as u64 >= p {
        return Err(Error::Precision("truncation must stay below p".into()));
    }
    let red = |x: &QF6| residue_reduce(x, p, k);
    let pis = reduce_all(&pi_in_z(&e, base, pi, t)?, p, k)?;
    let logs = log_coeffs(&e, t)?;
    let exps = reduce_all(&revert(&logs), p, k)?;
    let logs = reduce_all(&logs, p, k)?;
    let z1 = red(&kernel_parameter(r)?)?;
    // terms of degree >= p of the logarithm have valuation >= p - 1 > k
    let l = crate::elliptic::formal::eval_poly(&logs, &z1);
    let zero = z1.zero_like();
    // u(n) = exp(n L) as a polynomial in n
    let mut u = vec![zero.clone(); t];
    let mut lp = zero.one_like();
    for i in 1..t {
        lp = lp * &l;
        u[i] = exps[i].clone() * &lp;
    }
    let u = Laurent::new(0, u);
    let theta = Laurent::new(0, pis).compose(&u.normalized());
    Ok(((0..t as i64).map(|i| theta.coeff(i)).collect(), z1, l))
}

pub fn theta_split_and_strassmann(r: &ReducedGroup, fiber: &str, base: &Point<QF6>, pi: &LinearProjection) -> Result<StrassmannReport> {
    let p = r.prime;
    let (j, z1, l) = theta_coefficients(r, base, pi)?;
    let vals: Vec<u32> = j.iter().map(|c| c.valuation()).collect();
    let theta1: Vec<ResidueElem> = j.iter().map(|c| ResidueElem::new(p, PRECISION, 0, c.b as i128)).collect();
    let v1: Vec<u32> = theta1.iter().map(|c| c.valuation()).collect();
    let theta1_vanishes_at_zero = theta1[0].is_zero();
    let v_l = l.valuation();
    let tail_certified = v1.iter().skip(2).all(|&v| v >= 2)
        && (2..4 * p as usize).all(|i| i as u32 * v_l >= 2 + vp_factorial(i, p));
    let m2 = p * p;
    let j2 = |c: &ResidueElem| c.truncate(2);
    let valuation = v1[1];
    if valuation >= 2 {
        return Err(Error::Inconclusive(format!("Theta_1 has slope of valuation {valuation} at {fiber}")));
    }
    // Strassmann: the last index of minimal valuation is 1, and n = 0 is a zero
    let zero_count = if theta1_vanishes_at_zero && tail_certified { 1 } else { 0 };
    Ok(StrassmannReport {
        fiber: fiber.into(),
        base_value: show(&j[0]),
        z_kernel: show(&z1.truncate(2)),
        log_kernel: show(&l),
        linear_term: format!("({})n + {} mod {m2}", show(&j2(&j[1])), show(&j2(&j[0]))),
        theta1_vanishes_at_zero,
        slope: ResidueElem::signed(j2(&j[1]).b, m2),
        valuation,
        tail_certified,
        zero_count,
        theta: PadicSeries {
            p,
            variable: "n".into(),
            truncation: TRUNCATION,
            precision: PRECISION,
            coefficients: j.iter().map(show).collect(),
            exact: None,
            valuations: vals,
            tail_bound: format!("i*{v_l} - v_p(i!)"),
        },
    })
}

/// The involution `Q -> -Q - G` preserves `pi` on the given points.
pub fn involution_preserves_pi(sign: Sign, pi: &LinearProjection, pts: &[Point<QF6>]) -> Result<bool> {
    let e = j_curve(sign);
    for q in pts {
        let iq = e.sub(&e.neg(q), &g_point());
        let (a, b) = pi.eval(&e, q)?;
        let (c, d) = pi.eval(&e, &iq)?;
        if a * &d != b * &c {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chabauty::reduced::{chabauty_prime, reduce_curve_and_points};
    use crate::elliptic::hj::sample_points;

    fn proj(sign: Sign) -> LinearProjection {
        match sign {
            Sign::Plus => LinearProjection { c: 2, k: 1 },
            Sign::Minus => LinearProjection { c: 300, k: 2 },
        }
    }

    #[test]
    fn pi_series_prefixes() {
        let s = pi_formal_series(Sign::Plus, 11, &proj(Sign::Plus), 6).unwrap();
        assert_eq!(s.exact.unwrap(), ["1", "2", "4", "8", "16", "32"]);
        let s = pi_formal_series(Sign::Minus, 13, &proj(Sign::Minus), 4).unwrap();
        assert_eq!(s.exact.unwrap(), ["1/2", "75", "11250", "1687500"]);
        for sign in [Sign::Plus, Sign::Minus] {
            let e = j_curve(sign);
            assert_eq!(pi_in_z(&e, &Point::Infinity, &proj(sign), 8).unwrap(), closed_form(&proj(sign), 8));
        }
    }

    #[test]
    fn linearization() {
        for sign in [Sign::Plus, Sign::Minus] {
            let r = reduce_curve_and_points(sign, chabauty_prime(sign)).unwrap();
            let l = multiplication_linearization_check(&r, 10).unwrap();
            assert!(l.holds && l.formal_group_agrees, "{sign:?}");
        }
    }

    #[test]
    fn strassmann() {
        for (sign, slope, linear) in [
            (Sign::Plus, -44, "(22-44√6)n + 1 mod 121"),
            (Sign::Minus, -52, "(-78-52√6)n + -84 mod 169"),
        ] {
            let r = reduce_curve_and_points(sign, chabauty_prime(sign)).unwrap();
            let s = theta_split_and_strassmann(&r, "O", &Point::Infinity, &proj(sign)).unwrap();
            assert_eq!(s.slope, slope);
            assert_eq!(s.linear_term, linear);
            assert_eq!((s.valuation, s.zero_count), (1, 1));
            // the fiber of -G directly: Theta_{-G}(n) = Theta_O(-n)
            let e = j_curve(sign);
            let mg = e.neg(&g_point());
            let (a, ..) = theta_coefficients(&r, &Point::Infinity, &proj(sign)).unwrap();
            let (b, ..) = theta_coefficients(&r, &mg, &proj(sign)).unwrap();
            for (i, (x, y)) in a.iter().zip(&b).enumerate() {
                assert_eq!(if i % 2 == 0 { y.clone() } else { -y.clone() }, *x, "{sign:?} {i}");
            }
            assert!(involution_preserves_pi(sign, &proj(sign), &sample_points(sign, 3)).unwrap());
        }
    }
}
