//! Cardinality bounds for meet and join preservation.

use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// A subset-size bound: `Finite(k)` admits subsets with fewer than `k`
/// elements, `Omega` admits every finite subset. Finite bounds below 3 are
/// rejected — they would not constrain anything beyond plain order embedding.
///
/// The derived order (`Finite(3) < Finite(4) < ... < Omega`) is the strength
/// order: a filter or representation at a larger bound is one at any smaller.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Bound {
    Finite(u32),
    Omega,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundError {
    #[error("finite bounds must be at least 3, got {0}")]
    TooSmall(u32),
    #[error("expected an integer >= 3 or \"omega\", got {0:?}")]
    Unparseable(String),
}

impl Bound {
    pub fn finite(k: u32) -> Result<Bound, BoundError> {
        if k < 3 {
            Err(BoundError::TooSmall(k))
        } else {
            Ok(Bound::Finite(k))
        }
    }

    /// Does a subset of `size` elements fall under this bound (`size < bound`)?
    pub fn admits(&self, size: usize) -> bool {
        match self {
            Bound::Finite(k) => size < *k as usize,
            Bound::Omega => true,
        }
    }

    /// Largest admitted subset size, or `None` when unbounded.
    pub fn max_subset_size(&self) -> Option<usize> {
        match self {
            Bound::Finite(k) => Some(*k as usize - 1),
            Bound::Omega => None,
        }
    }

    pub fn is_omega(&self) -> bool {
        matches!(self, Bound::Omega)
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(k) => write!(f, "{k}"),
            Bound::Omega => write!(f, "omega"),
        }
    }
}

impl FromStr for Bound {
    type Err = BoundError;

    fn from_str(s: &str) -> Result<Self, BoundError> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("omega") || t == "ω" || t == "w" {
            return Ok(Bound::Omega);
        }
        match t.parse::<u32>() {
            Ok(k) => Bound::finite(k),
            Err(_) => Err(BoundError::Unparseable(s.to_string())),
        }
    }
}

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Bound {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// The `(meets, joins)` bound pair a filter or representation is taken at.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct BoundPair {
    pub meets: Bound,
    pub joins: Bound,
}

impl BoundPair {
    pub fn new(meets: Bound, joins: Bound) -> Self {
        BoundPair { meets, joins }
    }

    pub const OMEGA: BoundPair = BoundPair {
        meets: Bound::Omega,
        joins: Bound::Omega,
    };

    pub fn three_three() -> Self {
        BoundPair::new(Bound::Finite(3), Bound::Finite(3))
    }

    /// Componentwise comparison in the strength order.
    pub fn le(&self, other: &BoundPair) -> bool {
        self.meets <= other.meets && self.joins <= other.joins
    }
}

impl fmt::Display for BoundPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.meets, self.joins)
    }
}
