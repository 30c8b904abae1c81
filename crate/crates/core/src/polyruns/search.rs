use std::ops::RangeInclusive;

use num_integer::Roots;
use rayon::prelude::*;

use super::poly::{square_run_check, Axis, RunWitness, SymQuadPoly};

/// Runs longer than this are reported as this length; only polynomial
/// squares get anywhere near it at the heights searched.
const RUN_CAP: usize = 64;

fn is_square(v: i128) -> bool {
    v >= 0 && {
        let r = v.sqrt();
        r * r == v
    }
}

fn run_length(axis: Axis, a: i64, c: i64) -> usize {
    let (a, c) = (a as i128, c as i128);
    let mut best = 0;
    for k in 0i128.. {
        let (v, n) = match axis {
            Axis::Integer => (a * k * k + c, 2 * k as usize + 1),
            Axis::Half => (a * (k * k + k) + c, 2 * k as usize + 2),
        };
        if n > RUN_CAP || !is_square(v) {
            break;
        }
        best = n;
    }
    best
}

fn sort_key(w: &RunWitness) -> (num_bigint::BigInt, num_bigint::BigInt, Axis, num_bigint::BigInt, num_bigint::BigInt) {
    let p = &w.poly;
    (num_traits::Signed::abs(&p.a), num_traits::Signed::abs(&p.c), p.axis, p.a.clone(), p.c.clone())
}

/// All nondegenerate polynomials with `a` and `c` in the given ranges whose
/// maximal symmetric run is at least `n_min`. Since `f(0) = c` must be a
/// square only square `c` are visited.
pub fn search_box(a: RangeInclusive<i64>, c: RangeInclusive<i64>, n_min: usize) -> Vec<RunWitness> {
    let (c_lo, c_hi) = (*c.start(), *c.end());
    let mut out = Vec::new();
    if c_hi < 0 {
        return out;
    }
    let m_lo = if c_lo <= 0 { 0 } else { (c_lo - 1).sqrt() + 1 };
    for m in m_lo..=c_hi.sqrt() {
        let cv = m * m;
        for av in a.clone() {
            if av == 0 {
                continue;
            }
            for axis in [Axis::Integer, Axis::Half] {
                let n = run_length(axis, av, cv);
                if n < n_min.max(1) {
                    continue;
                }
                let f = SymQuadPoly::new(axis, av, cv);
                if !f.is_nondegenerate() {
                    continue;
                }
                out.extend(square_run_check(&f, n));
            }
        }
    }
    out
}

fn finish(mut v: Vec<RunWitness>) -> Vec<RunWitness> {
    v.sort_by_key(sort_key);
    v
}

/// Search over `|a| <= a_bound`, `|c| <= c_bound`, split across threads by `a`.
pub fn exhaustive_search(a_bound: i64, c_bound: i64, n_min: usize) -> Vec<RunWitness> {
    let chunk = (a_bound / 64).max(1);
    let starts: Vec<i64> = (-a_bound..=a_bound).step_by(chunk as usize).collect();
    let found: Vec<RunWitness> = starts
        .into_par_iter()
        .flat_map_iter(|lo| search_box(lo..=(lo + chunk - 1).min(a_bound), -c_bound..=c_bound, n_min))
        .collect();
    finish(found)
}

/// Merges independent searches over the given boxes.
pub fn search_shards(shards: &[(RangeInclusive<i64>, RangeInclusive<i64>)], n_min: usize) -> Vec<RunWitness> {
    let found: Vec<RunWitness> =
        shards.par_iter().flat_map_iter(|(a, c)| search_box(a.clone(), c.clone(), n_min)).collect();
    finish(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_box() {
        let w = exhaustive_search(1, 1, 1);
        assert!(w.iter().any(|w| w.poly == SymQuadPoly::integer(1, 1)));
        assert!(w.iter().all(|w| w.verify() && w.poly.is_nondegenerate()));
    }

    #[test]
    fn run_length_agrees_with_bigint_path() {
        for a in -30..30 {
            for c in [0, 1, 4, 9, 25, 49] {
                for axis in [Axis::Integer, Axis::Half] {
                    assert_eq!(run_length(axis, a, c), SymQuadPoly::new(axis, a, c).max_run(RUN_CAP));
                }
            }
        }
    }

    #[test]
    fn small_search_has_no_long_odd_runs() {
        // the only run of length >= 7 in this box, frozen from an independent scan
        let w = exhaustive_search(500, 6000, 7);
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].poly, SymQuadPoly::half(-420, 5329));
        assert_eq!(w[0].n, 8);
    }
}
