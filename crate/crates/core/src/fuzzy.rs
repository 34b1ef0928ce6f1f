//! Triangular fuzzy numbers.
//!
//! A triangular fuzzy number is stored as the triplet `(lo, mid, hi)` of its
//! support endpoints and apex. Degenerate triplets `(v, v, v)` stand for the
//! crisp value `v`. Arithmetic follows the closed forms for triangular
//! numbers, and the orders are the componentwise characterizations of the
//! alpha-level orders.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FuzzyError {
    #[error("triplet ({lo}, {mid}, {hi}) is not sorted")]
    NotSorted { lo: f64, mid: f64, hi: f64 },
    #[error("triplet ({lo}, {mid}, {hi}) has a non-finite component")]
    NotFinite { lo: f64, mid: f64, hi: f64 },
    #[error("alpha = {0} is outside [0, 1]")]
    AlphaOutOfRange(f64),
    #[error("right operand {0} must be nonnegative (lo >= 0)")]
    RequiresNonnegativeOperand(Tfn),
    #[error("operation needs a nonempty set")]
    EmptySet,
}

/// A triangular fuzzy number `(lo, mid, hi)` with `lo <= mid <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Tfn {
    lo: f64,
    mid: f64,
    hi: f64,
}

/// Closed interval `[lower, upper]`, the shape of every alpha-level set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
}

/// Outcome of comparing two fuzzy numbers `a` and `b` (read as "a ... b").
///
/// The variants are listed from strongest to weakest. `StrictlyLess` implies
/// `Dominates`, which implies `LessOrApprox`; `compare` always returns the
/// strongest relation that holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderRelation {
    /// Every component strictly smaller.
    StrictlyLess,
    /// Every component smaller or equal, at least one strictly.
    Dominates,
    /// Every component smaller or equal. Only returned by `compare` when
    /// neither `Dominates` nor `Equal` applies, which cannot happen for
    /// exact triplets, so it appears through [`OrderRelation::is_less_or_approx`].
    LessOrApprox,
    Equal,
    Incomparable,
}

impl OrderRelation {
    /// True for every relation that implies `a ≲ b`.
    pub fn is_less_or_approx(self) -> bool {
        !matches!(self, OrderRelation::Incomparable)
    }

    /// True when `a` is `≲` and different from `b`.
    pub fn is_dominating(self) -> bool {
        matches!(self, OrderRelation::StrictlyLess | OrderRelation::Dominates)
    }
}

/// One of the three components of a triangular fuzzy number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Component {
    Lo,
    Mid,
    Hi,
}

impl Component {
    pub const ALL: [Component; 3] = [Component::Lo, Component::Mid, Component::Hi];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Component::Lo => "lo",
            Component::Mid => "mid",
            Component::Hi => "hi",
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Component {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "lo" => Ok(Component::Lo),
            "mid" => Ok(Component::Mid),
            "hi" => Ok(Component::Hi),
            other => Err(format!("unknown component `{other}` (expected lo, mid or hi)")),
        }
    }
}

impl Tfn {
    pub const ZERO: Tfn = Tfn { lo: 0.0, mid: 0.0, hi: 0.0 };

    pub fn new(lo: f64, mid: f64, hi: f64) -> Result<Self, FuzzyError> {
        if !(lo.is_finite() && mid.is_finite() && hi.is_finite()) {
            return Err(FuzzyError::NotFinite { lo, mid, hi });
        }
        if lo > mid || mid > hi {
            return Err(FuzzyError::NotSorted { lo, mid, hi });
        }
        Ok(Tfn { lo, mid, hi })
    }

    /// Degenerate number identified with the crisp value `v`.
    pub const fn crisp(v: f64) -> Self {
        Tfn { lo: v, mid: v, hi: v }
    }

    /// Builds a triplet from components that are sorted up to `tol`, clamping
    /// the small violations away. Used to read solver output.
    pub fn from_components_tol(lo: f64, mid: f64, hi: f64, tol: f64) -> Result<Self, FuzzyError> {
        if lo > mid + tol || mid > hi + tol {
            return Err(FuzzyError::NotSorted { lo, mid, hi });
        }
        let mid = mid.max(lo);
        let hi = hi.max(mid);
        Tfn::new(lo, mid, hi)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn mid(&self) -> f64 {
        self.mid
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn component(&self, c: Component) -> f64 {
        self.components()[c.index()]
    }

    pub fn components(&self) -> [f64; 3] {
        [self.lo, self.mid, self.hi]
    }

    pub fn is_nonnegative(&self) -> bool {
        self.lo >= 0.0
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.mid && self.mid == self.hi
    }

    pub fn alpha_level(&self, alpha: f64) -> Result<Interval, FuzzyError> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(FuzzyError::AlphaOutOfRange(alpha));
        }
        Ok(Interval {
            lower: self.lo + (self.mid - self.lo) * alpha,
            upper: self.hi - (self.hi - self.mid) * alpha,
        })
    }

    pub fn add(&self, other: &Tfn) -> Tfn {
        Tfn {
            lo: self.lo + other.lo,
            mid: self.mid + other.mid,
            hi: self.hi + other.hi,
        }
    }

    /// Scalar multiple; a negative factor swaps the endpoints.
    pub fn scale(&self, lambda: f64) -> Tfn {
        if lambda >= 0.0 {
            Tfn {
                lo: lambda * self.lo,
                mid: lambda * self.mid,
                hi: lambda * self.hi,
            }
        } else {
            Tfn {
                lo: lambda * self.hi,
                mid: lambda * self.mid,
                hi: lambda * self.lo,
            }
        }
    }

    /// Product `self · rhs` for a nonnegative right operand.
    ///
    /// The case split is driven by the signs of `self`'s endpoints.
    pub fn mul(&self, rhs: &Tfn) -> Result<Tfn, FuzzyError> {
        if !rhs.is_nonnegative() {
            return Err(FuzzyError::RequiresNonnegativeOperand(*rhs));
        }
        let mid = self.mid * rhs.mid;
        let (lo, hi) = if self.lo >= 0.0 {
            (self.lo * rhs.lo, self.hi * rhs.hi)
        } else if self.hi >= 0.0 {
            (self.lo * rhs.hi, self.hi * rhs.hi)
        } else {
            (self.lo * rhs.hi, self.hi * rhs.lo)
        };
        Ok(Tfn { lo, mid, hi })
    }

    /// Exact comparison (`tol = 0`).
    pub fn compare(&self, other: &Tfn) -> OrderRelation {
        self.compare_tol(other, 0.0)
    }

    /// Componentwise comparison where `|x - y| <= tol` counts as equal.
    pub fn compare_tol(&self, other: &Tfn, tol: f64) -> OrderRelation {
        let mut all_eq = true;
        let mut all_le = true;
        let mut all_lt = true;
        for (x, y) in self.components().into_iter().zip(other.components()) {
            let eq = (x - y).abs() <= tol;
            let lt = !eq && x < y;
            all_eq &= eq;
            all_le &= eq || lt;
            all_lt &= lt;
        }
        if all_eq {
            OrderRelation::Equal
        } else if all_lt {
            OrderRelation::StrictlyLess
        } else if all_le {
            OrderRelation::Dominates
        } else {
            OrderRelation::Incomparable
        }
    }

    pub fn approx_eq(&self, other: &Tfn, tol: f64) -> bool {
        self.compare_tol(other, tol) == OrderRelation::Equal
    }
}

impl fmt::Display for Tfn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(p) => write!(f, "({:.p$}, {:.p$}, {:.p$})", self.lo, self.mid, self.hi, p = p),
            None => write!(f, "({}, {}, {})", self.lo, self.mid, self.hi),
        }
    }
}

impl From<f64> for Tfn {
    fn from(v: f64) -> Self {
        Tfn::crisp(v)
    }
}

impl Serialize for Tfn {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [self.lo, self.mid, self.hi].serialize(serializer)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum TfnRepr {
    Scalar(f64),
    Triplet([f64; 3]),
}

impl<'de> Deserialize<'de> for Tfn {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        match TfnRepr::deserialize(deserializer)? {
            TfnRepr::Scalar(v) => Tfn::new(v, v, v),
            TfnRepr::Triplet([lo, mid, hi]) => Tfn::new(lo, mid, hi),
        }
        .map_err(serde::de::Error::custom)
    }
}

/// Minimal upper bound of a finite set: the componentwise maximum.
pub fn theta_mub(set: &[Tfn]) -> Result<Tfn, FuzzyError> {
    let (first, rest) = set.split_first().ok_or(FuzzyError::EmptySet)?;
    Ok(rest.iter().fold(*first, |acc, t| Tfn {
        lo: acc.lo.max(t.lo),
        mid: acc.mid.max(t.mid),
        hi: acc.hi.max(t.hi),
    }))
}

/// True iff every member of `set` is `≲ upper`.
pub fn is_upper_bound(upper: &Tfn, set: &[Tfn]) -> Result<bool, FuzzyError> {
    if set.is_empty() {
        return Err(FuzzyError::EmptySet);
    }
    Ok(set.iter().all(|s| s.compare(upper).is_less_or_approx()))
}
