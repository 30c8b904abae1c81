//! Dense univariate polynomials over a [`Field`].

use std::fmt;

use super::field::Field;

/// Coefficients in increasing degree; trailing zeros are trimmed, so the
/// zero polynomial has no coefficients. `base` supplies constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<F: Field> {
    coeffs: Vec<F>,
    base: F,
}

impl<F: Field> Poly<F> {
    pub fn new(coeffs: Vec<F>, base: &F) -> Self {
        let mut p = Poly { coeffs, base: base.zero_like() };
        p.trim();
        p
    }

    /// From coefficients given from the leading term down.
    pub fn from_desc(desc: Vec<F>, base: &F) -> Self {
        let mut c = desc;
        c.reverse();
        Poly::new(c, base)
    }

    pub fn constant(c: F) -> Self {
        let base = c.zero_like();
        Poly::new(vec![c], &base)
    }

    /// The monomial `t`.
    pub fn x(base: &F) -> Self {
        Poly::new(vec![base.zero_like(), base.one_like()], base)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Coefficient of `t^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.base.zero_like())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(|| self.base.zero_like())
    }

    pub fn eval(&self, t: &F) -> F {
        let mut acc = t.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    /// Homogeneous evaluation `sum c_i u^i v^(d-i)` with `d` the given degree.
    pub fn eval_homogeneous(&self, u: &F, v: &F, d: usize) -> F {
        let mut acc = u.zero_like();
        for i in 0..=d {
            acc = acc + self.coeff(i) * &u.pow(i as u32) * &v.pow((d - i) as u32);
        }
        acc
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + &o.coeff(i)).collect(), &self.base)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - &o.coeff(i)).collect(), &self.base)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::new(vec![], &self.base);
        }
        let mut c = vec![self.base.zero_like(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = c[i + j].clone() + &(a.clone() * b);
            }
        }
        Poly::new(c, &self.base)
    }

    pub fn scale(&self, k: &F) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.clone() * k).collect(), &self.base)
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * &self.base.int_like(i as i64))
            .collect();
        Poly::new(c, &self.base)
    }

    /// `self(t + s)`.
    pub fn shift(&self, s: &F) -> Self {
        let lin = Poly::new(vec![s.clone(), s.one_like()], &self.base);
        self.compose(&lin)
    }

    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Poly::new(vec![], &self.base);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// Resultant through the Sylvester determinant.
    pub fn resultant(&self, o: &Self) -> F {
        let (m, n) = match (self.degree(), o.degree()) {
            (Some(m), Some(n)) => (m, n),
            _ => return self.base.zero_like(),
        };
        let size = m + n;
        if size == 0 {
            return self.base.one_like();
        }
        let zero = self.base.zero_like();
        let mut mat = vec![vec![zero.clone(); size]; size];
        for r in 0..n {
            for i in 0..=m {
                mat[r][r + i] = self.coeffs[m - i].clone();
            }
        }
        for r in 0..m {
            for i in 0..=n {
                mat[n + r][r + i] = o.coeffs[n - i].clone();
            }
        }
        determinant(mat)
    }

    /// Discriminant `(-1)^(d(d-1)/2) Res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> F {
        let d = self.degree().unwrap_or(0);
        let r = self.resultant(&self.derivative());
        let sign = if (d * (d.saturating_sub(1)) / 2) % 2 == 0 { 1 } else { -1 };
        (r * &self.base.int_like(sign)).try_div(&self.leading()).expect("nonzero leading")
    }
}

/// Determinant by Gaussian elimination; requires exact inverses of pivots.
pub fn determinant<F: Field>(mut m: Vec<Vec<F>>) -> F {
    let n = m.len();
    let one = m[0][0].one_like();
    let mut det = one.clone();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| m[r][col].inv().is_some()) else {
            return one.zero_like();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let pinv = m[col][col].inv().unwrap();
        det = det * &m[col][col];
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone() * &pinv;
            for c in col..n {
                let v = m[col][c].clone() * &f;
                m[r][c] = m[r][c].clone() - &v;
            }
        }
    }
    det
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})*t"),
                _ => format!("({c})*t^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::{int, BigRat};

    fn p(desc: &[i64]) -> Poly<BigRat> {
        Poly::from_desc(desc.iter().map(|&c| int(c)).collect(), &int(0))
    }

    #[test]
    fn product_of_factors() {
        let p1 = p(&[6, -4, -1]);
        let p2 = p(&[6, 20, -25]);
        assert_eq!(p1.mul(&p2), p(&[36, 96, -236, 80, 25]));
        assert_eq!(p1.mul(&p2).eval(&int(1)), int(1));
    }

    #[test]
    fn resultant_and_discriminant() {
        // Res(t^2 - 1, t - 2) = 3
        assert_eq!(p(&[1, 0, -1]).resultant(&p(&[1, -2])), int(3));
        // disc(t^2 + b t + c) = b^2 - 4c
        assert_eq!(p(&[1, 3, 1]).discriminant(), int(5));
        assert_eq!(p(&[1, -2, 1]).discriminant(), int(0));
    }

    #[test]
    fn shift_and_compose() {
        let f = p(&[1, 0, 0]);
        assert_eq!(f.shift(&int(1)), p(&[1, 2, 1]));
        assert_eq!(f.eval_homogeneous(&int(2), &int(3), 2), int(4));
    }
}
