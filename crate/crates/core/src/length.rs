//! Non-negative path lengths extended with an explicit infinity.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Length {
    Finite(f64),
    Infinite,
}

impl Length {
    pub const ZERO: Length = Length::Finite(0.0);

    pub fn is_finite(self) -> bool {
        matches!(self, Length::Finite(_))
    }

    pub fn value(self) -> Option<f64> {
        match self {
            Length::Finite(v) => Some(v),
            Length::Infinite => None,
        }
    }

    pub fn min(self, other: Length) -> Length {
        if other < self {
            other
        } else {
            self
        }
    }

    /// True for finite lengths strictly below `bound`.
    pub fn lt(self, bound: f64) -> bool {
        matches!(self, Length::Finite(v) if v < bound)
    }
}

impl Add<f64> for Length {
    type Output = Length;

    fn add(self, rhs: f64) -> Length {
        match self {
            Length::Finite(v) => Length::Finite(v + rhs),
            Length::Infinite => Length::Infinite,
        }
    }
}

impl Add for Length {
    type Output = Length;

    fn add(self, rhs: Length) -> Length {
        match (self, rhs) {
            (Length::Finite(a), Length::Finite(b)) => Length::Finite(a + b),
            _ => Length::Infinite,
        }
    }
}

impl PartialOrd for Length {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Length::Finite(a), Length::Finite(b)) => a.partial_cmp(b),
            (Length::Finite(_), Length::Infinite) => Some(Ordering::Less),
            (Length::Infinite, Length::Finite(_)) => Some(Ordering::Greater),
            (Length::Infinite, Length::Infinite) => Some(Ordering::Equal),
        }
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(v) => write!(f, "{v}"),
            Length::Infinite => f.write_str("inf"),
        }
    }
}
