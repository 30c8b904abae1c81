//! Local solvability of the quartic homogeneous spaces of a 2-isogeny.
//!
//! The space attached to `delta` is `delta w^2 = delta^2 u^4 + a delta u^2 v^2 + b v^4`.
//! Multiplying by `delta` gives `W^2 = f(u, v)` with
//! `f = delta^3 u^4 + a delta^2 u^2 v^2 + b delta v^4`, which is what we test.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::rational::valuation;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentForm {
    pub delta: BigInt,
    pub a: BigInt,
    pub b: BigInt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Place {
    Real,
    Prime(u64),
}

impl DescentForm {
    pub fn new(delta: i64, a: i64, b: i64) -> Self {
        DescentForm { delta: delta.into(), a: a.into(), b: b.into() }
    }

    /// Coefficients `[c0, c1, c2, c3, c4]` of `f(t, 1)` in increasing degree.
    pub fn quartic(&self) -> [BigInt; 5] {
        let d = &self.delta;
        [
            &self.b * d,
            BigInt::zero(),
            &self.a * d * d,
            BigInt::zero(),
            d * d * d,
        ]
    }
}

pub fn local_solvability(form: &DescentForm, place: Place) -> Result<bool> {
    match place {
        Place::Real => Ok(real_solvable(form)),
        Place::Prime(p) => padic_solvable(&form.quartic(), p),
    }
}

fn real_solvable(form: &DescentForm) -> bool {
    let [c0, _, c2, _, c4] = form.quartic();
    // f(t,1) = c4 s^2 + c2 s + c0 with s = t^2 >= 0, plus the point v = 0.
    if c4.is_positive() || !c0.is_negative() {
        return true;
    }
    c2.is_positive() && &c2 * &c2 >= BigInt::from(4) * &c4 * &c0
}

fn eval(c: &[BigInt; 5], x: &BigInt) -> BigInt {
    c.iter().rev().fold(BigInt::zero(), |acc, ci| acc * x + ci)
}

/// `v(g(x0)) > 2 v(g'(x0))` puts a root of `g` within `p^(v(g) - v(g'))` of `x0`.
fn hensel_root(g: &[BigInt; 5], p: u64, x0: &BigInt, val: &BigInt, k: u32) -> bool {
    let d: [BigInt; 5] = [
        g[1].clone(),
        &g[2] * 2,
        &g[3] * 3,
        &g[4] * 4,
        BigInt::zero(),
    ];
    let dv = eval(&d, x0);
    if val.is_zero() || dv.is_zero() {
        return val.is_zero();
    }
    let (vg, vd) = (valuation(val, p), valuation(&dv, p));
    vg > 2 * vd && vg - vd >= k
}

enum Verdict {
    Square,
    NotSquare,
    Refine,
}

/// Decides whether every `x` in the class `x0 + p^k Z_p` gives the same
/// answer to "is `g(x)` a nonzero square in `Q_p`".
fn classify(value: &BigInt, p: u64, k: u32) -> Verdict {
    if value.is_zero() {
        return Verdict::Square;
    }
    let v = valuation(value, p);
    if v >= k {
        return Verdict::Refine;
    }
    if v % 2 == 1 {
        return Verdict::NotSquare;
    }
    let pb = BigInt::from(p);
    let unit = value / pb.pow(v);
    if p == 2 {
        if k - v < 3 {
            return Verdict::Refine;
        }
        if unit.mod_floor(&BigInt::from(8)).is_one() {
            Verdict::Square
        } else {
            Verdict::NotSquare
        }
    } else {
        let u = unit.mod_floor(&pb).to_u64().unwrap();
        if super::rational::pow_mod(u, (p - 1) / 2, p) == 1 {
            Verdict::Square
        } else {
            Verdict::NotSquare
        }
    }
}

/// Searches for a `p`-adic point on `w^2 = g(x)` with `x` in `x0 + p^k Z_p`,
/// refining residue classes up to depth `cap`. `None` means undecided.
fn search(g: &[BigInt; 5], p: u64, x0: BigInt, k: u32, cap: u32) -> Option<bool> {
    let val = eval(g, &x0);
    if hensel_root(g, p, &x0, &val, k) {
        return Some(true);
    }
    match classify(&val, p, k) {
        Verdict::Square => Some(true),
        Verdict::NotSquare => Some(false),
        Verdict::Refine => {
            if k >= cap {
                return None;
            }
            let step = BigInt::from(p).pow(k);
            let mut undecided = false;
            for j in 0..p {
                let x = &x0 + &step * j;
                match search(g, p, x, k + 1, cap) {
                    Some(true) => return Some(true),
                    Some(false) => {}
                    None => undecided = true,
                }
            }
            if undecided {
                None
            } else {
                Some(false)
            }
        }
    }
}

/// Solvability of `w^2 = f(u, v)` over `Q_p` for a binary quartic `f` with
/// integer coefficients and nonzero discriminant.
pub fn padic_solvable(c: &[BigInt; 5], p: u64) -> Result<bool> {
    // chart v = 1 with u in Z_p, and chart u = 1 with v in p Z_p
    let flipped = [c[4].clone(), c[3].clone(), c[2].clone(), c[1].clone(), c[0].clone()];
    let nonzero = c.iter().filter(|x| !x.is_zero()).fold(None::<u32>, |m, x| {
        let v = valuation(x, p);
        Some(m.map_or(v, |m| m.max(v)))
    });
    let mut cap = nonzero.unwrap_or(0) + 6 + if p == 2 { 6 } else { 0 };
    for _ in 0..6 {
        let a = search(c, p, BigInt::zero(), 0, cap);
        if a == Some(true) {
            return Ok(true);
        }
        let b = search(&flipped, p, BigInt::zero(), 1, cap);
        if b == Some(true) {
            return Ok(true);
        }
        if a.is_some() && b.is_some() {
            return Ok(false);
        }
        cap += 4;
    }
    Err(Error::Precision(format!("local solvability at {p} undecided")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_space_everywhere() {
        let f = DescentForm::new(1, 58, 216);
        for place in [Place::Real, Place::Prime(2), Place::Prime(3), Place::Prime(5), Place::Prime(7)] {
            assert!(local_solvability(&f, place).unwrap());
        }
    }

    #[test]
    fn real_place() {
        assert!(local_solvability(&DescentForm::new(-6, 58, 216), Place::Real).unwrap());
        assert!(!local_solvability(&DescentForm::new(-1, -27, 180), Place::Real).unwrap());
    }

    #[test]
    fn five_adic_obstruction() {
        assert!(!local_solvability(&DescentForm::new(5, 58, 216), Place::Prime(5)).unwrap());
    }
}
