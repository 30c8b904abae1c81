//! Rank bounds from a 2-isogeny and its dual: with `alpha` the `x mod
//! squares` map on each side, `2^r = |alpha(E)| |alpha'(E')| / 4`, and the
//! images sit inside the two Selmer sets.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use serde::Serialize;

use super::selmer::{descent_image, image_group, selmer_via_homogeneous_spaces, SelmerSet};
use crate::elliptic::Point;
use crate::error::{Error, Result};
use crate::exactmath::{rat, BigRat};

/// The Jacobians `E_0..E_4` in the form `y^2 = x(x^2 + a x + b)`.
pub const E_CURVES: [(&str, i64, i64); 5] =
    [("E0", 19, -216), ("E1", 18, -360), ("E2", 58, 216), ("E3", 13, -140), ("E4", -27, 180)];

/// `(a, b) -> (-2a, a^2 - 4b)`.
pub fn isogenous(a: i64, b: i64) -> (i64, i64) {
    (-2 * a, a * a - 4 * b)
}

/// Rational points `x = n/m^2` with `|n| <= num_bound`, `m <= den_bound`,
/// stopping once `stop` images have been found.
pub fn naive_points(a: i64, b: i64, num_bound: i64, den_bound: i64, stop: usize) -> Vec<Point<BigRat>> {
    let mut found = vec![Point::Affine(rat(0, 1), rat(0, 1))];
    let mut images = image_group(b, &found);
    for m in 1..=den_bound {
        let (m2, m4) = ((m * m) as i128, (m * m * m * m) as i128);
        for k in 0..=2 * num_bound {
            if images.len() >= stop {
                return found;
            }
            // 0, 1, -1, 2, -2, ...
            let n = if k % 2 == 1 { (k + 1) / 2 } else { -(k / 2) };
            if n == 0 || n.gcd(&m) != 1 {
                continue;
            }
            let n = n as i128;
            let v = n * (n * n + a as i128 * n * m2 + b as i128 * m4);
            if v < 0 {
                continue;
            }
            let r = v.sqrt();
            if r * r != v {
                continue;
            }
            let p = Point::Affine(
                BigRat::new(n.into(), m2.into()),
                BigRat::new(r.into(), BigInt::from(m2 * m as i128)),
            );
            let d = descent_image(b, &p);
            if !images.contains(&d) {
                found.push(p);
                images = image_group(b, &found);
            }
        }
    }
    found
}

#[derive(Clone, Debug, Serialize)]
pub struct RankBound {
    pub a: i64,
    pub b: i64,
    pub selmer: SelmerSet,
    pub dual_selmer: SelmerSet,
    /// points whose images generate `alpha(E)` and `alpha'(E')`
    pub witnesses: Vec<String>,
    pub dual_witnesses: Vec<String>,
    #[serde(serialize_with = "crate::descent::ser_ints")]
    pub image: Vec<BigInt>,
    #[serde(serialize_with = "crate::descent::ser_ints")]
    pub dual_image: Vec<BigInt>,
    pub lower: u32,
    pub upper: u32,
}

pub fn rank_bound(a: i64, b: i64) -> Result<RankBound> {
    let (a2, b2) = isogenous(a, b);
    let s = selmer_via_homogeneous_spaces(a, b)?;
    let s2 = selmer_via_homogeneous_spaces(a2, b2)?;
    let (l, l2) = match (s.log2_size(), s2.log2_size()) {
        (Some(l), Some(l2)) => (l, l2),
        _ => return Err(Error::Verification("Selmer set is not a group".into())),
    };
    let w = naive_points(a, b, 10_000, 10, s.members.len());
    let w2 = naive_points(a2, b2, 10_000, 10, s2.members.len());
    let (img, img2) = (image_group(b, &w), image_group(b2, &w2));
    let lower = (img.len().trailing_zeros() + img2.len().trailing_zeros()).saturating_sub(2);
    Ok(RankBound {
        a,
        b,
        witnesses: w.iter().map(|p| p.to_string()).collect(),
        dual_witnesses: w2.iter().map(|p| p.to_string()).collect(),
        image: img,
        dual_image: img2,
        selmer: s,
        dual_selmer: s2,
        lower,
        upper: (l + l2).saturating_sub(2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e4_rank_one() {
        let r = rank_bound(-27, 180).unwrap();
        assert_eq!((r.lower, r.upper), (1, 1));
    }

    #[test]
    fn all_five_curves() {
        let mut got = Vec::new();
        for (_, a, b) in E_CURVES {
            let r = rank_bound(a, b).unwrap();
            got.push((r.lower, r.upper));
        }
        assert_eq!(got, vec![(1, 1), (2, 2), (1, 1), (1, 1), (1, 1)]);
    }

    #[test]
    fn torsion_images_on_e2() {
        let pts = naive_points(58, 216, 100, 1, 4);
        let mut img = image_group(216, &pts);
        img.sort();
        assert_eq!(img, [-6, -1, 1, 6].map(BigInt::from).to_vec());
    }
}
