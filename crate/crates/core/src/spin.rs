//! Exact half-integer spin labels.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A spin quantum number `j`, stored as the integer `2j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpinQuantumNumber {
    twice_j: u32,
}

impl SpinQuantumNumber {
    pub const ZERO: Self = Self { twice_j: 0 };
    pub const HALF: Self = Self { twice_j: 1 };
    pub const ONE: Self = Self { twice_j: 2 };

    pub const fn from_twice(twice_j: u32) -> Self {
        Self { twice_j }
    }

    pub const fn from_integer(j: u32) -> Self {
        Self { twice_j: 2 * j }
    }

    pub const fn twice(self) -> u32 {
        self.twice_j
    }

    pub fn value(self) -> f64 {
        self.twice_j as f64 / 2.0
    }

    /// Dimension `2j + 1` of the irrep.
    pub const fn dim(self) -> usize {
        self.twice_j as usize + 1
    }

    pub const fn is_half_odd(self) -> bool {
        self.twice_j % 2 == 1
    }

    /// `2m` values in basis order: `2j, 2j - 2, ..., -2j`.
    pub fn twice_m_values(self) -> impl DoubleEndedIterator<Item = i32> + ExactSizeIterator {
        let tj = self.twice_j as i32;
        (0..self.dim()).map(move |k| tj - 2 * k as i32)
    }

    /// `m` values in basis order, as floats.
    pub fn m_values(self) -> impl Iterator<Item = f64> {
        self.twice_m_values().map(|tm| tm as f64 / 2.0)
    }

    /// Basis index of `2m`, or `None` if `m` is not on the ladder of `j`.
    pub fn index_of(self, twice_m: i32) -> Option<usize> {
        let tj = self.twice_j as i32;
        if twice_m.abs() > tj || (tj - twice_m) % 2 != 0 {
            None
        } else {
            Some(((tj - twice_m) / 2) as usize)
        }
    }

    pub fn checked_sub(self, other: Self) -> Option<Self> {
        self.twice_j.checked_sub(other.twice_j).map(Self::from_twice)
    }
}

impl std::ops::Add for SpinQuantumNumber {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::from_twice(self.twice_j + rhs.twice_j)
    }
}

impl fmt::Display for SpinQuantumNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice_j.is_multiple_of(2) {
            write!(f, "{}", self.twice_j / 2)
        } else {
            write!(f, "{}/2", self.twice_j)
        }
    }
}

/// Accepts `"3"`, `"3/2"`, `"1.5"` and `"2.0"`.
impl FromStr for SpinQuantumNumber {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Domain(format!("`{s}` is not a non-negative integer or half-integer"));
        if let Some((num, den)) = s.split_once('/') {
            let num: u32 = num.trim().parse().map_err(|_| bad())?;
            return match den.trim() {
                "1" => num.checked_mul(2).map(Self::from_twice).ok_or_else(bad),
                "2" => Ok(Self::from_twice(num)),
                _ => Err(bad()),
            };
        }
        if let Some((int, frac)) = s.split_once('.') {
            let int: u32 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
            let frac = frac.trim_end_matches('0');
            let half = match frac {
                "" => 0,
                "5" => 1,
                _ => return Err(bad()),
            };
            return int
                .checked_mul(2)
                .and_then(|t| t.checked_add(half))
                .map(Self::from_twice)
                .ok_or_else(bad);
        }
        let int: u32 = s.parse().map_err(|_| bad())?;
        int.checked_mul(2).map(Self::from_twice).ok_or_else(bad)
    }
}
