//! Curves over the residue fields of `Z[√6]`: `F_{p^2}` for inert `p` and
//! `F_q` for split `q`.

use std::collections::{HashMap, HashSet};

use super::curve::{Curve, Point};
use crate::exactmath::{Field, ResidueElem};

pub fn field_elements(p: u64) -> Vec<ResidueElem> {
    let mut v = Vec::with_capacity((p * p) as usize);
    for a in 0..p {
        for b in 0..p {
            v.push(ResidueElem::new(p, 1, a as i128, b as i128));
        }
    }
    v
}

/// Every point of `e(F_{p^2})`, `O` first.
pub fn points(e: &Curve<ResidueElem>) -> Vec<Point<ResidueElem>> {
    points_in(e, &field_elements(e.a1.p))
}

/// Every point of `e` with coordinates in `elems`, which must be a whole
/// finite field of odd characteristic.
pub fn points_in<F: Field>(e: &Curve<F>, elems: &[F]) -> Vec<Point<F>> {
    let mut roots: HashMap<F, Vec<F>> = HashMap::new();
    for y in elems {
        roots.entry(y.square()).or_default().push(y.clone());
    }
    let two_inv = e.k(2).inv().expect("odd characteristic");
    let mut out = vec![Point::Infinity];
    for x in elems {
        // y^2 + B y = R  <=>  (2y + B)^2 = B^2 + 4R
        let bb = e.a1.clone() * x + &e.a3;
        let r = x.square() * x + &(e.a2.clone() * &x.square()) + &(e.a4.clone() * x) + &e.a6;
        let disc = bb.square() + &(e.k(4) * &r);
        if let Some(rs) = roots.get(&disc) {
            for s in rs {
                out.push(Point::Affine(x.clone(), (s.clone() - &bb) * &two_inv));
            }
        }
    }
    out
}

pub fn order_of<F: Field>(e: &Curve<F>, pt: &Point<F>, group_order: u64) -> u64 {
    let mut n = group_order;
    for q in prime_factors(group_order) {
        while n % q == 0 && e.mul((n / q) as i64, pt).is_infinity() {
            n /= q;
        }
    }
    n
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The subgroup `m E(F)` of a listed group.
pub fn multiples<F: Field>(e: &Curve<F>, pts: &[Point<F>], m: i64) -> HashSet<Point<F>> {
    pts.iter().map(|q| e.mul(m, q)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::hj::{g_point, j_curve, Sign};
    use crate::elliptic::{reduce_curve, reduce_point};

    #[test]
    fn orders_of_g() {
        for (sign, p, ord) in [(Sign::Plus, 11, 8), (Sign::Minus, 13, 12)] {
            let e = reduce_curve(&j_curve(sign), p, 1).unwrap();
            let pts = points(&e);
            let n = pts.len() as u64;
            assert!(pts.iter().all(|q| e.contains(q)));
            let g = reduce_point(&g_point(), p, 1).unwrap();
            assert_eq!(order_of(&e, &g, n), ord);
            // Hasse bound over F_{p^2}
            let q = (p * p) as f64;
            assert!(((n as f64) - q - 1.0).abs() <= 2.0 * q.sqrt());
        }
    }
}
