//! Half-integer quantum numbers stored as exact doubled integers.
//!
//! Angular-momentum labels j and m take values in {0, 1/2, 1, 3/2, ...};
//! storing the doubled value keeps gcd and parity logic exact instead of
//! round-tripping through floats.

use std::fmt;

/// A half-integer represented by its doubled value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i32);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    /// Builds from a doubled value, so `from_doubled(3)` is 3/2.
    pub const fn from_doubled(doubled: i32) -> Self {
        HalfInt(doubled)
    }

    /// Builds from a whole integer.
    pub const fn from_int(value: i32) -> Self {
        HalfInt(value * 2)
    }

    pub const fn doubled(self) -> i32 {
        self.0
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub const fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}
