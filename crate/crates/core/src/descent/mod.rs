//! 2-isogeny descent over `Q`, the twist sets over `Q(√6)` and the
//! divisibility sieve on `J±`.

pub mod rank;
pub mod selmer;
pub mod sieve;
pub mod twists;

pub use rank::{rank_bound, RankBound, E_CURVES};
pub use selmer::{descent_image, selmer_realization_check, selmer_via_homogeneous_spaces, SelmerSet};
pub use sieve::{good_places, p_divisibility_sieve, sieve_report, Place, SieveReport};
pub use twists::{orbit_reduction_check, twist_sets, TwistDescriptor, TwistSets};

use num_bigint::BigInt;
use serde::Serializer;

pub(crate) fn ser_ints<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use num_traits::ToPrimitive;
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match x.to_i64() {
            Some(n) => seq.serialize_element(&n)?,
            None => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}
