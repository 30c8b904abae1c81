//! The formal group at `O`: parameter `z = -x/y`, `w = -1/y`.

use super::curve::{Curve, Point};
use crate::error::{Error, Result};
use crate::exactmath::series::Laurent;
use crate::exactmath::Field;

/// Coefficients `A_0..A_{prec-1}` of `w(z) = z^3 + a1 z w + a2 z^2 w + a3 w^2
/// + a4 z w^2 + a6 w^3`.
pub fn w_coeffs<F: Field>(e: &Curve<F>, prec: usize) -> Vec<F> {
    let zero = e.a1.zero_like();
    let mut w = vec![zero.clone(); prec];
    let mul = |a: &[F], b: &[F]| -> Vec<F> {
        let mut r = vec![zero.clone(); prec];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(prec - i) {
                r[i + j] = r[i + j].clone() + &(x.clone() * y);
            }
        }
        r
    };
    // each pass fixes at least one more coefficient
    for _ in 0..prec {
        let w2 = mul(&w, &w);
        let w3 = mul(&w2, &w);
        let mut next = vec![zero.clone(); prec];
        if prec > 3 {
            next[3] = zero.one_like();
        }
        for k in 0..prec {
            let mut acc = next[k].clone() + &(e.a3.clone() * &w2[k]) + &(e.a6.clone() * &w3[k]);
            if k >= 1 {
                acc = acc + &(e.a1.clone() * &w[k - 1]) + &(e.a4.clone() * &w2[k - 1]);
            }
            if k >= 2 {
                acc = acc + &(e.a2.clone() * &w[k - 2]);
            }
            next[k] = acc;
        }
        if next == w {
            break;
        }
        w = next;
    }
    w
}

/// `x(z) = z/w` and `y(z) = -1/w` to relative precision `prec`.
pub fn xy_series<F: Field>(e: &Curve<F>, prec: usize) -> Result<(Laurent<F>, Laurent<F>)> {
    let w = w_coeffs(e, prec + 3);
    let wl = Laurent::new(3, w[3..].to_vec());
    let winv = wl.inv()?;
    let x = Laurent::new(winv.val + 1, winv.coeffs.clone());
    let y = winv.neg();
    Ok((x, y))
}

/// Coefficients of the formal logarithm `log(z) = z + ...`, degrees `0..prec`.
pub fn log_coeffs<F: Field>(e: &Curve<F>, prec: usize) -> Result<Vec<F>> {
    let (x, y) = xy_series(e, prec + 2)?;
    let den = y.scale(&e.k(2)).add(&x.scale(&e.a1)).add_const(&e.a3);
    let omega = x.derivative().div(&den)?.normalized();
    if omega.val != 0 {
        return Err(Error::Verification("invariant differential not regular at O".into()));
    }
    let mut out = vec![e.a1.zero_like(); prec];
    for k in 1..prec {
        let c = omega.coeff(k as i64 - 1);
        out[k] = c.try_div(&e.k(k as i64)).ok_or(Error::DivisionByZero)?;
    }
    Ok(out)
}

/// Compositional inverse of a series `f = z + ...` (coefficients by degree).
pub fn revert<F: Field>(f: &[F]) -> Vec<F> {
    let n = f.len();
    let zero = f[0].zero_like();
    let mul = |a: &[F], b: &[F]| -> Vec<F> {
        let mut r = vec![zero.clone(); n];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(n - i) {
                r[i + j] = r[i + j].clone() + &(x.clone() * y);
            }
        }
        r
    };
    let mut g = vec![zero.clone(); n];
    if n > 1 {
        g[1] = zero.one_like();
    }
    for _ in 0..n {
        let mut comp = vec![zero.clone(); n];
        let mut pw = vec![zero.clone(); n];
        pw[0] = zero.one_like();
        for c in f {
            for (a, b) in comp.iter_mut().zip(&pw) {
                *a = a.clone() + &(c.clone() * b);
            }
            pw = mul(&pw, &g);
        }
        let mut changed = false;
        for k in 2..n {
            if !comp[k].is_zero() {
                g[k] = g[k].clone() - &comp[k];
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    g
}

/// Evaluates `sum c_k z^k`.
pub fn eval_poly<F: Field>(c: &[F], z: &F) -> F {
    c.iter().rev().fold(z.zero_like(), |acc, ck| acc * z + ck)
}

/// `(x, y)` of `R + Q(z)` as power series in `z`, for an affine `R`.
pub fn translate<F: Field>(e: &Curve<F>, r: &Point<F>, prec: usize) -> Result<(Laurent<F>, Laurent<F>)> {
    let (x, y) = xy_series(e, prec + 4)?;
    let (xr, yr) = match r {
        Point::Infinity => return Ok((x, y)),
        Point::Affine(a, b) => (a.clone(), b.clone()),
    };
    let lam = y.add_const(&-yr.clone()).div(&x.add_const(&-xr.clone()))?.normalized();
    let x3 = lam
        .mul(&lam)
        .add(&lam.scale(&e.a1))
        .add_const(&-(e.a2.clone() + &xr))
        .sub(&x)
        .normalized();
    let nu = lam.scale(&xr).neg().add_const(&yr);
    let y3 = lam.add_const(&e.a1).mul(&x3).neg().sub(&nu).add_const(&-e.a3.clone()).normalized();
    Ok((x3.truncate_to(prec as i64), y3.truncate_to(prec as i64)))
}

/// `z = -x/y`; `O` has `z = 0`.
pub fn z_of<F: Field>(p: &Point<F>) -> Result<F> {
    match p {
        Point::Infinity => Err(Error::OutsideChart("O is not affine; use z_or_zero".into())),
        Point::Affine(x, y) => {
            let yi = y.inv().ok_or_else(|| Error::OutsideChart(format!("y = 0 at {p}")))?;
            Ok(-(x.clone() * &yi))
        }
    }
}

/// Like [`z_of`] but returns `0` at `O`.
pub fn z_or_zero<F: Field>(p: &Point<F>, base: &F) -> Result<F> {
    if p.is_infinity() {
        Ok(base.zero_like())
    } else {
        z_of(p)
    }
}

/// Formal group law on the `z`-line, for parameters of positive valuation
/// in a residue ring. `w` holds the coefficients of `w(z)`.
#[derive(Clone, Debug)]
pub struct FormalGroup<F: Field> {
    pub curve: Curve<F>,
    pub w: Vec<F>,
}

impl<F: Field> FormalGroup<F> {
    pub fn new(curve: Curve<F>, prec: usize) -> Self {
        let w = w_coeffs(&curve, prec);
        FormalGroup { curve, w }
    }

    pub fn w_of(&self, z: &F) -> F {
        eval_poly(&self.w, z)
    }

    pub fn neg(&self, z: &F) -> Result<F> {
        let e = &self.curve;
        let w = self.w_of(z);
        let den = e.a1.clone() * z + &(e.a3.clone() * &w) - &z.one_like();
        z.try_div(&den).ok_or(Error::DenominatorNotUnit(0))
    }

    pub fn add(&self, z1: &F, z2: &F) -> Result<F> {
        let e = &self.curve;
        let zero = z1.zero_like();
        // lambda = sum A_k h_{k-1}(z1, z2)
        let mut lam = zero.clone();
        let mut h = vec![zero.one_like()];
        for k in 1..self.w.len() {
            if !self.w[k].is_zero() {
                let hk: F = h.iter().fold(zero.clone(), |a, b| a + b);
                lam = lam + &(self.w[k].clone() * &hk);
            }
            // monomials of degree k in z1, z2
            let mut next: Vec<F> = h.iter().map(|m| m.clone() * z1).collect();
            next.push(h.last().unwrap().clone() * z2);
            h = next;
        }
        let nu = self.w_of(z1) - lam.clone() * z1;
        let l2 = lam.square();
        let num = e.a1.clone() * &lam
            + &(e.a2.clone() * &nu)
            + &(e.a3.clone() * &l2)
            + &(e.k(2) * &e.a4 * &lam * &nu)
            + &(e.k(3) * &e.a6 * &l2 * &nu);
        let den = zero.one_like() + &(e.a2.clone() * &lam) + &(e.a4.clone() * &l2) + &(e.a6.clone() * &l2 * &lam);
        let z3 = -(z1.clone() + z2) - num.try_div(&den).ok_or(Error::DenominatorNotUnit(0))?;
        self.neg(&z3)
    }

    pub fn mul(&self, n: u64, z: &F) -> Result<F> {
        let mut acc = z.zero_like();
        for _ in 0..n {
            acc = self.add(&acc, z)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, BigRat};

    fn e4() -> Curve<BigRat> {
        Curve::cubic(int(-27), int(180), int(0)).unwrap()
    }

    #[test]
    fn w_series_short_form() {
        // w = z^3 + a2 z^5 + ... for a1 = a3 = 0
        let w = w_coeffs(&e4(), 8);
        assert_eq!(w[3], int(1));
        assert_eq!(w[5], int(-27));
        assert_eq!(w[4], int(0));
    }

    #[test]
    fn xy_on_curve() {
        let e = Curve::new(int(1), int(-2), int(3), int(5), int(-7)).unwrap();
        let (x, y) = xy_series(&e, 10).unwrap();
        assert_eq!(x.val, -2);
        assert_eq!(y.val, -3);
        let lhs = y.mul(&y).add(&x.mul(&y).scale(&e.a1)).add(&y.scale(&e.a3));
        let rhs = x.mul(&x).mul(&x).add(&x.mul(&x).scale(&e.a2)).add(&x.scale(&e.a4)).add_const(&e.a6);
        let d = lhs.sub(&rhs);
        for k in d.val..d.precision() {
            assert_eq!(d.coeff(k), int(0), "degree {k}");
        }
    }

    #[test]
    fn log_exp_inverse() {
        let e = Curve::new(int(1), int(-2), int(3), int(5), int(-7)).unwrap();
        let lg = log_coeffs(&e, 8).unwrap();
        assert_eq!(lg[1], int(1));
        let ex = revert(&lg);
        // log(exp(t)) = t through degree 7
        let tl: Laurent<BigRat> = Laurent::new(0, ex.clone());
        let back = Laurent::new(0, lg).compose(&tl.normalized());
        assert_eq!(back.coeff(1), int(1));
        for k in 2..7 {
            assert_eq!(back.coeff(k), int(0));
        }
    }

    #[test]
    fn formal_addition_matches_group_law() {
        use crate::exactmath::{residue_reduce, QF6};
        let q = |n: i64| QF6::from_ints(n, 0);
        let e = Curve::cubic(q(-27), q(180), q(0)).unwrap();
        let g = e.point(q(10), q(10)).unwrap();
        let (p, k) = (7u64, 4u32);
        let red = |x: &QF6| residue_reduce(x, p, k).unwrap();
        let ered = Curve::new(red(&e.a1), red(&e.a2), red(&e.a3), red(&e.a4), red(&e.a6)).unwrap();
        let fg = FormalGroup::new(ered, 12);
        // the first multiple of G in the kernel of reduction
        let m = (1..40).find(|&m| {
            let pt = e.mul(m, &g);
            z_of(&pt).map(|z| residue_reduce(&z, p, 1).map(|r| r.is_zero()).unwrap_or(false)).unwrap_or(false)
        });
        let m = m.unwrap();
        let z1 = red(&z_of(&e.mul(m, &g)).unwrap());
        for n in 2..5 {
            let exact = red(&z_of(&e.mul(n * m, &g)).unwrap());
            assert_eq!(fg.mul(n as u64, &z1).unwrap(), exact, "n = {n}");
        }
        assert_eq!(fg.add(&z1, &fg.neg(&z1).unwrap()).unwrap(), z1.zero_like());
    }
}
