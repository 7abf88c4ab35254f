//! Finite-prefix versions of the stream reductions, the schedule-driven map
//! from sequences to trails, and the block construction for target-controlled
//! labelings.

mod limsup;
mod stream;
mod wadge;

pub use limsup::{
    limsup_builder, Block, EllInstance, LimsupTrail, TargetControlled, TrailCallback,
};
pub use stream::{
    family_image, family_to_matrix, matrix_to_nseq, MatrixSpec, PrefixMap, PrefixStream, TailSpec,
};
pub use wadge::{wadge_f, ScheduleConfig, WadgeTrail, DEFAULT_JMAX};

use crate::error::{Error, Result};

/// `<m, n> = 2^n (2m + 1) - 1`.
pub fn pair(m: u64, n: u64) -> Result<u64> {
    let odd = m
        .checked_mul(2)
        .and_then(|v| v.checked_add(1))
        .ok_or(Error::Overflow("pair"))?;
    let shift = u32::try_from(n).map_err(|_| Error::Overflow("pair"))?;
    if shift >= 64 || odd.leading_zeros() < shift {
        return Err(Error::Overflow("pair"));
    }
    (odd << shift).checked_sub(1).ok_or(Error::Overflow("pair"))
}

/// Inverse of [`pair`]; defined for `k < u64::MAX`.
pub fn unpair(k: u64) -> (u64, u64) {
    let k1 = k.checked_add(1).expect("k < u64::MAX");
    let n = k1.trailing_zeros() as u64;
    ((k1 >> n) / 2, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_pairs() {
        assert_eq!(pair(0, 0).unwrap(), 0);
        assert_eq!(pair(1, 0).unwrap(), 2);
        assert_eq!(pair(0, 1).unwrap(), 1);
        assert_eq!(unpair(5), (1, 1));
    }

    #[test]
    fn overflow_is_reported() {
        assert!(pair(0, 64).is_err());
        assert!(pair(u64::MAX / 2, 1).is_err());
        assert_eq!(unpair(u64::MAX - 1), (u64::MAX / 2, 0));
    }
}
