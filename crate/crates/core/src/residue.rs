//! Exact arithmetic in Z/l.
//!
//! Residues are always stored by their canonical representative in `[0, l)`,
//! so the fractional part `{a/l}` of a twist value is simply `a/l` and ages
//! can be accumulated as exact integer numerators over the fixed denominator
//! `l`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest level accepted. Keeps `(a / g) * m` below `2^40` in `u64`.
pub const MAX_LEVEL: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResidueError {
    #[error("level must be at least 2, got {0}")]
    LevelTooSmall(u64),
    #[error("level {0} exceeds the supported maximum {MAX_LEVEL}")]
    LevelTooLarge(u64),
    #[error("twist {twist} is incompatible with multiplicity {multiplicity} at level {level}: gcd does not divide the twist")]
    Incompatible {
        twist: u64,
        multiplicity: u64,
        level: u64,
    },
}

/// The level `l` of a level structure, the modulus of every cochain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Level(u64);

impl TryFrom<u64> for Level {
    type Error = ResidueError;

    fn try_from(l: u64) -> Result<Self, Self::Error> {
        Level::new(l)
    }
}

impl From<Level> for u64 {
    fn from(l: Level) -> u64 {
        l.0
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A canonical representative in `[0, l)`. The level is carried by context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Residue(u64);

impl Residue {
    pub const ZERO: Residue = Residue(0);

    #[inline]
    pub fn value(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Level {
    pub fn new(l: u64) -> Result<Self, ResidueError> {
        if l < 2 {
            return Err(ResidueError::LevelTooSmall(l));
        }
        if l > MAX_LEVEL {
            return Err(ResidueError::LevelTooLarge(l));
        }
        Ok(Level(l))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// `x mod l` in `[0, l)`.
    #[inline]
    pub fn canon(self, x: i64) -> Residue {
        Residue(x.rem_euclid(self.0 as i64) as u64)
    }

    #[inline]
    pub fn canon_u(self, x: u64) -> Residue {
        Residue(x % self.0)
    }

    /// Checked constructor for a value already expected to be canonical.
    pub fn residue(self, x: u64) -> Option<Residue> {
        (x < self.0).then_some(Residue(x))
    }

    #[inline]
    pub fn add(self, x: Residue, y: Residue) -> Residue {
        let s = x.0 + y.0;
        Residue(if s >= self.0 { s - self.0 } else { s })
    }

    #[inline]
    pub fn neg(self, x: Residue) -> Residue {
        if x.0 == 0 {
            x
        } else {
            Residue(self.0 - x.0)
        }
    }

    #[inline]
    pub fn sub(self, x: Residue, y: Residue) -> Residue {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(self, x: Residue, y: Residue) -> Residue {
        Residue(((x.0 as u128 * y.0 as u128) % self.0 as u128) as u64)
    }

    /// `gcd(m, l)`, with `gcd(0, l) = l`.
    #[inline]
    pub fn gcd_with(self, m: Residue) -> u64 {
        gcd(m.0, self.0)
    }

    /// True iff `gcd(m, l)` divides `a`.
    #[inline]
    pub fn is_compatible(self, a: Residue, m: Residue) -> bool {
        a.0 % self.gcd_with(m) == 0
    }

    /// `a ⊙ m = a·m / gcd(m, l)`, evaluated as `(a / g)·m mod l`.
    pub fn odot(self, a: Residue, m: Residue) -> Result<Residue, ResidueError> {
        let g = self.gcd_with(m);
        if a.0 % g != 0 {
            return Err(ResidueError::Incompatible {
                twist: a.0,
                multiplicity: m.0,
                level: self.0,
            });
        }
        Ok(Residue((a.0 / g) * m.0 % self.0))
    }

    pub fn age_sum<I>(self, values: I) -> Age
    where
        I: IntoIterator<Item = Residue>,
    {
        Age {
            numerator: values.into_iter().map(|r| r.0).sum(),
            denominator: self.0,
        }
    }
}

/// An exact age `numerator / l`. Never reduced, never a float.
///
/// Equality and ordering compare the rational values, so `4/5 == 8/10`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Age {
    #[serde(rename = "num")]
    pub numerator: u64,
    #[serde(rename = "den")]
    pub denominator: u64,
}

impl Age {
    pub fn new(numerator: u64, denominator: u64) -> Self {
        assert!(denominator > 0, "age denominator must be positive");
        Age {
            numerator,
            denominator,
        }
    }

    /// `0 < age < 1`.
    pub fn is_junior(self) -> bool {
        self.numerator > 0 && self.numerator < self.denominator
    }

    /// Same values, literally identical fraction (not just equal rationals).
    pub fn is_identical(self, other: Age) -> bool {
        self.numerator == other.numerator && self.denominator == other.denominator
    }
}

impl PartialEq for Age {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Age {}

impl PartialOrd for Age {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Age {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.numerator as u128 * other.denominator as u128;
        let rhs = other.numerator as u128 * self.denominator as u128;
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for Age {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}
