//! Truncated Laurent series `sum c_i z^(val+i) + O(z^(val+len))`.

use super::field::Field;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent<F: Field> {
    pub val: i64,
    pub coeffs: Vec<F>,
}

impl<F: Field> Laurent<F> {
    pub fn new(val: i64, coeffs: Vec<F>) -> Self {
        Laurent { val, coeffs }
    }

    /// The constant `c` known to absolute precision `prec`.
    pub fn constant(c: F, prec: usize) -> Self {
        let mut coeffs = vec![c.zero_like(); prec.max(1)];
        coeffs[0] = c;
        Laurent { val: 0, coeffs }
    }

    /// The parameter `z` itself, with absolute precision `prec`.
    pub fn var(base: &F, prec: usize) -> Self {
        let mut coeffs = vec![base.zero_like(); prec.max(2) - 1];
        coeffs[0] = base.one_like();
        Laurent { val: 1, coeffs }
    }

    /// First exponent not represented.
    pub fn precision(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }

    /// Coefficient of `z^k`; panics when `k` is past the precision.
    pub fn coeff(&self, k: i64) -> F {
        assert!(k < self.precision(), "coefficient {k} beyond precision");
        if k < self.val {
            self.zero()
        } else {
            self.coeffs[(k - self.val) as usize].clone()
        }
    }

    fn zero(&self) -> F {
        self.coeffs.first().expect("series without coefficients").zero_like()
    }

    /// Strips leading zero coefficients.
    pub fn normalized(mut self) -> Self {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.val += lead as i64 - 1;
            self.coeffs = vec![self.zero()];
            return self;
        }
        self.coeffs.drain(..lead);
        self.val += lead as i64;
        self
    }

    pub fn truncate_to(mut self, prec: i64) -> Self {
        let keep = (prec - self.val).max(1) as usize;
        self.coeffs.truncate(keep);
        self
    }

    pub fn add(&self, o: &Self) -> Self {
        let val = self.val.min(o.val);
        let prec = self.precision().min(o.precision());
        let coeffs = (val..prec).map(|k| self.coeff(k) + &o.coeff(k)).collect();
        Laurent { val, coeffs }
    }

    pub fn neg(&self) -> Self {
        Laurent { val: self.val, coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &F) -> Self {
        Laurent { val: self.val, coeffs: self.coeffs.iter().map(|c| c.clone() * k).collect() }
    }

    pub fn add_const(&self, c: &F) -> Self {
        self.add(&Laurent::constant(c.clone(), (self.precision().max(1)) as usize))
    }

    /// Product; relative precision is the smaller of the two.
    pub fn mul(&self, o: &Self) -> Self {
        let n = self.coeffs.len().min(o.coeffs.len());
        let zero = self.zero();
        let mut coeffs = vec![zero; n];
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                coeffs[i + j] = coeffs[i + j].clone() + &(self.coeffs[i].clone() * &o.coeffs[j]);
            }
        }
        Laurent { val: self.val + o.val, coeffs }
    }

    /// Multiplicative inverse; the leading coefficient (after stripping
    /// zeros) must be a unit.
    pub fn inv(&self) -> Result<Self> {
        let s = self.clone().normalized();
        let c0inv = s.coeffs[0]
            .inv()
            .ok_or_else(|| Error::Precision("series leading coefficient not invertible".into()))?;
        let n = s.coeffs.len();
        let mut r = vec![s.zero(); n];
        r[0] = c0inv.clone();
        for k in 1..n {
            let mut acc = s.zero();
            for j in 1..=k {
                acc = acc + &(s.coeffs[j].clone() * &r[k - j]);
            }
            r[k] = -(acc * &c0inv);
        }
        Ok(Laurent { val: -s.val, coeffs: r })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        let base = self.zero();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.clone() * &base.int_like(self.val + i as i64))
            .collect();
        Laurent { val: self.val - 1, coeffs }
    }

    /// Evaluates a series with non-negative valuation at a point.
    pub fn eval(&self, z: &F) -> F {
        assert!(self.val >= 0, "evaluating a series with a pole");
        let mut acc = z.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc * &z.pow(self.val as u32)
    }

    /// Composition `self(g)` for a power series `self` and `g` with `val(g) >= 1`.
    pub fn compose(&self, g: &Self) -> Self {
        assert!(self.val >= 0 && g.val >= 1, "composition needs val(f) >= 0, val(g) >= 1");
        let prec = (self.precision() * g.val).min(g.precision() + (self.val.max(1) - 1) * g.val);
        let prec = prec.max(1);
        let zero = self.zero();
        let mut acc = Laurent::constant(zero.clone(), prec as usize);
        let mut gp = Laurent::constant(zero.one_like(), prec as usize);
        for k in 0..self.precision() {
            if k >= self.val {
                acc = acc.add(&gp.scale(&self.coeff(k)));
            }
            gp = gp.mul(g).truncate_to(prec);
            if gp.val >= prec {
                break;
            }
        }
        acc.truncate_to(prec)
    }
}

/// Maps every coefficient through a ring homomorphism.
pub fn map_series<F: Field, G: Field>(s: &Laurent<F>, f: impl Fn(&F) -> Result<G>) -> Result<Laurent<G>> {
    Ok(Laurent { val: s.val, coeffs: s.coeffs.iter().map(f).collect::<Result<Vec<_>>>()? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::{int, BigRat};

    fn s(val: i64, c: &[i64]) -> Laurent<BigRat> {
        Laurent::new(val, c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn geometric_inverse() {
        let one_minus_2z = s(0, &[1, -2, 0, 0, 0, 0]);
        let g = one_minus_2z.inv().unwrap();
        assert_eq!(g, s(0, &[1, 2, 4, 8, 16, 32]));
    }

    #[test]
    fn laurent_inverse_shifts_valuation() {
        let z2 = s(2, &[1, 1, 0, 0]);
        let inv = z2.inv().unwrap();
        assert_eq!(inv.val, -2);
        assert_eq!(inv.mul(&z2).normalized().coeffs[0], int(1));
    }

    #[test]
    fn composition() {
        // (1 + u)^2 with u = z + z^2
        let f = s(0, &[1, 2, 1, 0, 0]);
        let g = s(1, &[1, 1, 0, 0]);
        let c = f.compose(&g);
        assert_eq!(c.coeff(0), int(1));
        assert_eq!(c.coeff(1), int(2));
        assert_eq!(c.coeff(2), int(3));
        assert_eq!(c.coeff(3), int(2));
    }
}
