//! The genus one curves `H+ : w^2 = q1 p1` and `H- : w^2 = -q1 p1` over
//! `Q(√6)`, their Jacobians `J+-`, and certification of the projections
//! `pi : J -> P^1` that recover the `t`-coordinate.

use serde::Serialize;

use super::curve::{Curve, Point};
use super::quartic::{proj_eq, quartic_to_weierstrass, QuarticJacobianMap, QuarticPoint};
use crate::error::{Error, Result};
use crate::exactmath::poly::Poly;
use crate::exactmath::{rat, Field, QF6};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

fn qf(a: i64, b: i64) -> QF6 {
    QF6::from_ints(a, b)
}

/// `q1 = (5 + 2√6)(6t^2 - (6 + 2√6)t + 5)`.
pub fn q1() -> Poly<QF6> {
    Poly::new(vec![qf(5, 0), qf(-6, -2), qf(6, 0)], &qf(0, 0)).scale(&qf(5, 2))
}

/// The Galois conjugate of `q1`.
pub fn q2() -> Poly<QF6> {
    Poly::new(q1().coeffs().iter().map(|c| c.conj()).collect(), &qf(0, 0))
}

/// `p1 = 6t^2 - 4t - 1`.
pub fn p1() -> Poly<QF6> {
    Poly::new(vec![qf(-1, 0), qf(-4, 0), qf(6, 0)], &qf(0, 0))
}

pub fn h_quartic(sign: Sign) -> Poly<QF6> {
    let f = q1().mul(&p1());
    match sign {
        Sign::Plus => f,
        Sign::Minus => f.scale(&qf(-1, 0)),
    }
}

/// The marked point sent to `O`: `(1, 1)` on `H+` and `(1/2, -(3 + 2√6)/2)` on `H-`.
pub fn marked_point(sign: Sign) -> (QF6, QF6) {
    match sign {
        Sign::Plus => (qf(1, 0), qf(1, 0)),
        Sign::Minus => (
            QF6::from_rat(rat(1, 2)),
            QF6::new(rat(-3, 2), rat(-1, 1)),
        ),
    }
}

pub fn j_curve(sign: Sign) -> Curve<QF6> {
    let c = match sign {
        Sign::Plus => Curve::new(qf(-10, -2), qf(-34, -24), qf(22, 38), qf(1253, 448), qf(0, 0)),
        Sign::Minus => Curve::new(
            qf(422, 42),
            qf(-33466, -8076),
            qf(-113902, -291822),
            qf(141575953, 67635708),
            qf(0, 0),
        ),
    };
    c.expect("nonsingular")
}

/// The rational 2-torsion point `T`.
pub fn t_point(sign: Sign) -> Point<QF6> {
    match sign {
        Sign::Plus => Point::Affine(qf(-7, 2), qf(-34, -16)),
        Sign::Minus => Point::Affine(qf(-2767, -462), qf(699000, 301500)),
    }
}

/// The point `(0, 0)`.
pub fn g_point() -> Point<QF6> {
    Point::Affine(qf(0, 0), qf(0, 0))
}

/// `pi(x, y) = (y : c x + k y)` on a curve with `a6 = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LinearProjection {
    pub c: i64,
    pub k: i64,
}

impl LinearProjection {
    pub fn formula(&self) -> String {
        match self.k {
            1 => format!("y/({}x + y)", self.c),
            k => format!("y/({}x + {k}y)", self.c),
        }
    }

    /// Projective value; at `(0,0)`, where both coordinates vanish, uses
    /// `y/x = N/D` with `N = x^2 + a2 x + a4`, `D = y + a1 x + a3`.
    pub fn eval<F: Field>(&self, e: &Curve<F>, p: &Point<F>) -> Result<(F, F)> {
        let (x, y) = match p {
            Point::Infinity => return Ok((e.a1.one_like(), e.k(self.k))),
            Point::Affine(x, y) => (x, y),
        };
        let (c, k) = (e.k(self.c), e.k(self.k));
        let num = y.clone();
        let den = c.clone() * x + &(k.clone() * y);
        if !(num.is_zero() && den.is_zero()) {
            return Ok((num, den));
        }
        if !e.a6.is_zero() {
            return Err(Error::InvalidArgument("projection needs a6 = 0".into()));
        }
        let n = x.square() + &(e.a2.clone() * x) + &e.a4;
        let d = y.clone() + &(e.a1.clone() * x) + &e.a3;
        let den = c * &d + &(k * &n);
        if n.is_zero() && den.is_zero() {
            return Err(Error::Inconclusive(format!("projection undefined at {p}")));
        }
        Ok((n, den))
    }
}

/// The printed candidates for `pi`, in the order they are tried.
pub fn printed_projections(sign: Sign) -> Vec<LinearProjection> {
    match sign {
        Sign::Plus => vec![LinearProjection { c: 2, k: 1 }],
        Sign::Minus => vec![LinearProjection { c: 300, k: 2 }, LinearProjection { c: 300, k: 150 }],
    }
}

/// The printed second coordinate of `nu`, as `(numerator, denominator)`.
fn printed_nu_w(sign: Sign, x: &QF6, y: &QF6) -> (QF6, QF6) {
    let (x2, x3, xy, y2) = (x.square(), x.pow(3), x.clone() * y, y.square());
    match sign {
        Sign::Plus => (
            qf(2, 0) * &x3 + &(qf(-34, -24) * &x2) + &(qf(10, 2) * &xy) - y2,
            qf(2, 0) * x + y,
        ),
        Sign::Minus => (
            qf(-6, -4) * &x3 + &(qf(197310, 91160) * &x2) + &(qf(1770, 970) * &xy) + &(qf(3, 2) * &y2),
            qf(150i64.pow(3), 0) * &(qf(150, 0) * x + y),
        ),
    }
}

/// Points `kG` and `T + kG` for `|k| <= bound`, excluding `O`.
pub fn sample_points(sign: Sign, bound: i64) -> Vec<Point<QF6>> {
    let j = j_curve(sign);
    let (g, t) = (g_point(), t_point(sign));
    let mut out = Vec::new();
    let mut kg = Point::Infinity;
    let mut multiples = vec![(0, Point::Infinity)];
    for k in 1..=bound {
        kg = j.add(&kg, &g);
        multiples.push((k, kg.clone()));
        multiples.push((-k, j.neg(&kg)));
    }
    for (_, p) in &multiples {
        if !p.is_infinity() {
            out.push(p.clone());
        }
        out.push(j.add(p, &t));
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct VariantCheck {
    pub formula: String,
    pub holds: bool,
    /// First sample where the check fails.
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MapCheck {
    pub sign: String,
    pub j_invariant: String,
    pub j_invariant_target: String,
    pub isomorphisms_found: usize,
    pub marked_to_origin: bool,
    pub opposite_to_minus_g: bool,
    pub samples: usize,
    pub round_trip: bool,
    pub pi_at_origin: String,
    pub pi_at_minus_g: String,
    pub printed_pi: Vec<VariantCheck>,
    pub printed_nu_w: VariantCheck,
    pub certified: Option<LinearProjection>,
}

/// Builds `mu` for one sign and selects the identification with
/// `mu(opposite marked point) = -(0,0)`.
pub fn jacobian_map(sign: Sign) -> Result<QuarticJacobianMap<QF6>> {
    let (t0, w0) = marked_point(sign);
    let model = quartic_to_weierstrass(&h_quartic(sign), &t0, &w0)?;
    let j = j_curve(sign);
    let minus_g = j.neg(&g_point());
    QuarticJacobianMap::candidates(&model, &j)
        .into_iter()
        .find(|m| m.mu(&m.model.opposite_marked()).ok().as_ref() == Some(&minus_g))
        .ok_or_else(|| Error::Verification(format!("no identification of H{} with J{}", sign.symbol(), sign.symbol())))
}

fn show(p: &(QF6, QF6)) -> String {
    if p.1.is_zero() {
        "inf".into()
    } else {
        (p.0.clone() * &p.1.inv().unwrap()).to_string()
    }
}

pub fn check_sign(sign: Sign, bound: i64) -> Result<MapCheck> {
    let (t0, w0) = marked_point(sign);
    let model = quartic_to_weierstrass(&h_quartic(sign), &t0, &w0)?;
    let j = j_curve(sign);
    let n_iso = QuarticJacobianMap::candidates(&model, &j).len();
    let map = jacobian_map(sign)?;
    let samples = sample_points(sign, bound);
    let marked = QuarticPoint::Affine(t0, w0);
    let marked_to_origin = map.mu(&marked)? == Point::Infinity;
    let minus_g = j.neg(&g_point());
    let opposite_to_minus_g = map.mu(&map.model.opposite_marked())? == minus_g;

    let mut round_trip = true;
    let mut truth = Vec::with_capacity(samples.len());
    for p in &samples {
        let h = map.nu(p)?;
        round_trip &= map.model.contains(&h) && map.mu(&h)? == *p;
        truth.push(h);
    }

    let printed_pi = printed_projections(sign)
        .into_iter()
        .map(|pr| {
            let bad = samples.iter().zip(&truth).find(|(p, h)| match pr.eval(&j, p) {
                Ok(v) => !proj_eq(&v, &h.t_proj()),
                Err(_) => true,
            });
            (pr, VariantCheck { formula: pr.formula(), holds: bad.is_none(), counterexample: bad.map(|(p, _)| p.to_string()) })
        })
        .collect::<Vec<_>>();
    let certified = printed_pi.iter().find(|(_, v)| v.holds).map(|(p, _)| *p);

    let bad_w = samples.iter().zip(&truth).find(|(p, h)| {
        let (x, y) = match p {
            Point::Affine(x, y) => (x, y),
            Point::Infinity => return false,
        };
        let (n, d) = printed_nu_w(sign, x, y);
        match h {
            QuarticPoint::Affine(_, w) => d.is_zero() || n != w.clone() * &d,
            QuarticPoint::Infinity(_) => !d.is_zero(),
        }
    });
    let nu_formula = match sign {
        Sign::Plus => "(2x^3 + (-24√6-34)x^2 + (2√6+10)xy - y^2)/(2x + y)",
        Sign::Minus => "(-2(2√6+3)x^3 + (91160√6+197310)x^2 + (970√6+1770)xy + (2√6+3)y^2)/(150^3(150x + y))",
    };

    let pi_true = |p: &Point<QF6>| -> Result<String> { Ok(show(&map.pi(p)?)) };
    Ok(MapCheck {
        sign: sign.symbol().into(),
        j_invariant: model.curve.j_invariant().map(|x| x.to_string()).unwrap_or_default(),
        j_invariant_target: j.j_invariant().map(|x| x.to_string()).unwrap_or_default(),
        isomorphisms_found: n_iso,
        marked_to_origin,
        opposite_to_minus_g,
        samples: samples.len(),
        round_trip,
        pi_at_origin: pi_true(&Point::Infinity)?,
        pi_at_minus_g: pi_true(&minus_g)?,
        printed_pi: printed_pi.into_iter().map(|(_, v)| v).collect(),
        printed_nu_w: VariantCheck {
            formula: nu_formula.into(),
            holds: bad_w.is_none(),
            counterexample: bad_w.map(|(p, _)| p.to_string()),
        },
        certified,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct HJReport {
    pub plus: MapCheck,
    pub minus: MapCheck,
    /// How the conflicting printed forms of `pi-` were resolved.
    pub erratum: String,
}

impl HJReport {
    pub fn projection(&self, sign: Sign) -> Option<LinearProjection> {
        match sign {
            Sign::Plus => self.plus.certified,
            Sign::Minus => self.minus.certified,
        }
    }
}

pub fn verify_h_j_maps() -> Result<HJReport> {
    let plus = check_sign(Sign::Plus, 5)?;
    let minus = check_sign(Sign::Minus, 5)?;
    let held: Vec<&str> = minus.printed_pi.iter().filter(|v| v.holds).map(|v| v.formula.as_str()).collect();
    let failed: Vec<&str> = minus.printed_pi.iter().filter(|v| !v.holds).map(|v| v.formula.as_str()).collect();
    let erratum = format!(
        "pi- = {} agrees with the t-coordinate of the derived inverse map on {} points; rejected: {}; printed nu- second coordinate {}",
        held.first().copied().unwrap_or("none"),
        minus.samples,
        if failed.is_empty() { "none".into() } else { failed.join(", ") },
        if minus.printed_nu_w.holds { "holds" } else { "does not hold" },
    );
    Ok(HJReport { plus, minus, erratum })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn marked_points_lie_on_h() {
        for s in [Sign::Plus, Sign::Minus] {
            let (t, w) = marked_point(s);
            assert_eq!(h_quartic(s).eval(&t), w.square());
        }
    }

    #[test]
    fn t_is_two_torsion() {
        for s in [Sign::Plus, Sign::Minus] {
            let j = j_curve(s);
            let t = t_point(s);
            assert!(j.contains(&t));
            assert_eq!(j.add(&t, &t), Point::Infinity);
        }
    }

    #[test]
    fn projection_fallback_at_origin() {
        let j = j_curve(Sign::Plus);
        let v = LinearProjection { c: 2, k: 1 }.eval(&j, &g_point()).unwrap();
        // nu(0,0) has t = 1253 + 448√6 over c(22 + 38√6) + (1253 + 448√6)
        assert!(!v.1.is_zero());
    }
}
