//! Rational torsion of integral curves `y^2 = x^3 + a2 x^2 + a4 x + a6`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::curve::{Curve, Point};
use crate::error::{Error, Result};
use crate::exactmath::rational::{factor, is_prime, isqrt_exact, pow_mod};
use crate::exactmath::{BigRat, Field};

#[derive(Clone, Debug)]
pub struct Torsion {
    /// Invariant factors, e.g. `[2, 6]`; empty for the trivial group.
    pub structure: Vec<u64>,
    pub points: Vec<Point<BigRat>>,
    /// gcd of `#E(F_p)` over the primes used.
    pub order_bound: u64,
    pub primes_used: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionSummary {
    pub structure: Vec<u64>,
    pub order: usize,
    pub order_bound: u64,
    pub primes_used: Vec<u64>,
    pub points: Vec<String>,
}

impl Torsion {
    pub fn summary(&self) -> TorsionSummary {
        TorsionSummary {
            structure: self.structure.clone(),
            order: self.points.len(),
            order_bound: self.order_bound,
            primes_used: self.primes_used.clone(),
            points: self.points.iter().map(|p| p.to_string()).collect(),
        }
    }
}

fn integral_cubic(e: &Curve<BigRat>) -> Result<[BigInt; 3]> {
    let ok = Field::is_zero(&e.a1)
        && Field::is_zero(&e.a3)
        && [&e.a2, &e.a4, &e.a6].iter().all(|c| c.is_integer());
    if !ok {
        return Err(Error::InvalidArgument("need an integral model y^2 = cubic(x)".into()));
    }
    Ok([e.a2.to_integer(), e.a4.to_integer(), e.a6.to_integer()])
}

/// `#E(F_p)` for `y^2 = x^3 + A x^2 + B x + C`, `p` odd and of good reduction.
pub fn count_points_mod_p(c: &[BigInt; 3], p: u64) -> u64 {
    let pb = BigInt::from(p);
    let r = |v: &BigInt| v.mod_floor(&pb).to_u64().unwrap() as u128;
    let (a, b, cc, pp) = (r(&c[0]), r(&c[1]), r(&c[2]), p as u128);
    let mut count = 1u64;
    for x in 0..pp {
        let f = ((x * x % pp * x) % pp + a * x % pp * x % pp + b * x % pp + cc) % pp;
        count += if f == 0 {
            1
        } else if pow_mod(f as u64, (p - 1) / 2, p) == 1 {
            2
        } else {
            0
        };
    }
    count
}

fn cubic_discriminant(c: &[BigInt; 3]) -> BigInt {
    let (a, b, cc) = (&c[0], &c[1], &c[2]);
    a * a * b * b - BigInt::from(4) * b * b * b - BigInt::from(4) * a * a * a * cc
        - BigInt::from(27) * cc * cc
        + BigInt::from(18) * a * b * cc
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in factor(n) {
        let mut next = Vec::new();
        for d in &divs {
            let mut q = d.clone();
            for _ in 0..=e {
                next.push(q.clone());
                q *= &p;
            }
        }
        divs = next;
    }
    divs
}

/// Integer roots of the monic cubic `x^3 + A x^2 + B x + C`.
pub fn integer_roots_monic_cubic(a: &BigInt, b: &BigInt, c: &BigInt) -> Vec<BigInt> {
    let f = |x: &BigInt| ((x + a) * x + b) * x + c;
    let mut roots = Vec::new();
    if c.is_zero() {
        roots.push(BigInt::zero());
        // x^2 + A x + B
        let disc = a * a - BigInt::from(4) * b;
        if let Some(s) = isqrt_exact(&disc) {
            for r in [(-a + &s), (-a - &s)] {
                if r.is_even() {
                    roots.push(r / 2);
                }
            }
        }
    } else {
        for d in divisors(c) {
            for cand in [d.clone(), -d] {
                if f(&cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

/// Torsion subgroup of an integral model: the order is capped by
/// `gcd #E(F_p)` over several good odd primes, candidates come from the
/// Lutz-Nagell conditions, and each candidate's order is checked exactly.
pub fn torsion_over_q(e: &Curve<BigRat>) -> Result<Torsion> {
    let c = integral_cubic(e)?;
    let disc = cubic_discriminant(&c);
    let mut bound = 0u64;
    let mut primes_used = Vec::new();
    let mut p = 3u64;
    while primes_used.len() < 6 {
        if is_prime(p) && !(&disc % p).is_zero() {
            bound = bound.gcd(&count_points_mod_p(&c, p));
            primes_used.push(p);
        }
        p += 2;
    }
    let mut candidates: Vec<(BigInt, BigInt)> = Vec::new();
    for y in divisors(&disc) {
        if !(&disc % (&y * &y)).is_zero() {
            continue;
        }
        let y2 = &y * &y;
        for x in integer_roots_monic_cubic(&c[0], &c[1], &(&c[2] - &y2)) {
            candidates.push((x.clone(), y.clone()));
            candidates.push((x, -y.clone()));
        }
    }
    for x in integer_roots_monic_cubic(&c[0], &c[1], &c[2]) {
        candidates.push((x, BigInt::zero()));
    }
    let mut points = vec![Point::Infinity];
    for (x, y) in candidates {
        let pt = e.point(BigRat::from_integer(x), BigRat::from_integer(y))?;
        if e.order(&pt, bound).is_some() && !points.contains(&pt) {
            points.push(pt);
        }
    }
    let n = points.len() as u64;
    if bound % n != 0 {
        return Err(Error::Verification(format!("torsion order {n} does not divide {bound}")));
    }
    let two_torsion = points
        .iter()
        .filter(|p| match p {
            Point::Infinity => true,
            Point::Affine(_, y) => Field::is_zero(y),
        })
        .count() as u64;
    let structure = match (n, two_torsion) {
        (1, _) => vec![],
        (_, 4) => vec![2, n / 2],
        _ => vec![n],
    };
    points.sort_by_key(|p| p.to_string());
    points.sort_by_key(|p| !p.is_infinity());
    Ok(Torsion { structure, points, order_bound: bound, primes_used })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::int;

    fn curve(a2: i64, a4: i64) -> Curve<BigRat> {
        Curve::cubic(int(a2), int(a4), int(0)).unwrap()
    }

    #[test]
    fn e4_torsion() {
        let t = torsion_over_q(&curve(-27, 180)).unwrap();
        assert_eq!(t.structure, vec![2, 2]);
        assert_eq!(t.points.len(), 4);
    }

    #[test]
    fn z2_z6() {
        // x(x - 5)(x + 27) = x^3 + 22 x^2 - 135 x
        let t = torsion_over_q(&curve(22, -135)).unwrap();
        assert_eq!(t.structure, vec![2, 6]);
        assert_eq!(t.points.len(), 12);
    }

    #[test]
    fn cubic_roots() {
        let r = integer_roots_monic_cubic(&BigInt::from(-27), &BigInt::from(180), &BigInt::zero());
        assert_eq!(r, vec![BigInt::zero(), BigInt::from(12), BigInt::from(15)]);
        assert_eq!(count_points_mod_p(&[BigInt::from(-27), BigInt::from(180), BigInt::zero()], 7) % 4, 0);
    }
}
