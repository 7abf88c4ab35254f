//! Integer scalar abstraction for the continued-fraction engine.
//!
//! The convergent recursions and the homographic transducer only need ring
//! operations, floor division and ordering, so they are written against
//! [`CfInt`]. `BigInt` never overflows; machine integers report
//! [`Error::Overflow`](crate::Error::Overflow) through the checked operations.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};

use crate::error::{Error, Result};

pub trait CfInt:
    Integer
    + Signed
    + Clone
    + Debug
    + Display
    + FromPrimitive
    + ToPrimitive
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + Send
    + Sync
    + 'static
{
    /// Converts to an arbitrary-precision integer.
    fn to_bigint(&self) -> BigInt;

    /// Converts back from an arbitrary-precision integer, if it fits.
    fn from_bigint(value: &BigInt) -> Option<Self>;
}

macro_rules! impl_cf_int_prim {
    ($($t:ty),*) => {
        $(
            impl CfInt for $t {
                fn to_bigint(&self) -> BigInt {
                    BigInt::from(*self)
                }

                fn from_bigint(value: &BigInt) -> Option<Self> {
                    <$t>::try_from(value).ok()
                }
            }
        )*
    };
}

impl_cf_int_prim!(i32, i64, i128);

impl CfInt for BigInt {
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }

    fn from_bigint(value: &BigInt) -> Option<Self> {
        Some(value.clone())
    }
}

pub(crate) fn add<T: CfInt>(a: &T, b: &T) -> Result<T> {
    a.checked_add(b).ok_or(Error::Overflow("addition"))
}

pub(crate) fn mul<T: CfInt>(a: &T, b: &T) -> Result<T> {
    a.checked_mul(b).ok_or(Error::Overflow("multiplication"))
}

/// `a * b + c` with overflow checks.
pub(crate) fn mul_add<T: CfInt>(a: &T, b: &T, c: &T) -> Result<T> {
    add(&mul(a, b)?, c)
}
