//! Quadratic growth envelopes used to compare streams eventually.
//!
//! A [`Bound::Quad`] `(q, l)` stands for `q·n² + l·n + O(1)`. Lower bounds of
//! [`Bound::Infinite`] mean the stream eventually dominates every quadratic;
//! upper bounds of [`Bound::Infinite`] mean no quadratic upper bound is known.

use std::cmp::Ordering;

use num_traits::Zero;

use super::Q;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    Quad { q: Q, l: Q },
    Infinite,
}

impl Bound {
    pub fn quad(q: Q, l: Q) -> Self {
        Bound::Quad { q, l }
    }

    pub fn linear(l: Q) -> Self {
        Bound::Quad { q: Q::zero(), l }
    }

    fn cmp_finite(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Bound::Quad { q: q1, l: l1 }, Bound::Quad { q: q2, l: l2 }) => {
                Some(q1.cmp(q2).then(l1.cmp(l2)))
            }
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Bound::Quad { .. })
    }

    pub fn scale(&self, factor: Q) -> Self {
        match self {
            Bound::Quad { q, l } => Bound::quad(q * factor, l * factor),
            Bound::Infinite => Bound::Infinite,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Bound::Quad { q: q1, l: l1 }, Bound::Quad { q: q2, l: l2 }) => {
                Bound::quad(q1 + q2, l1 + l2)
            }
            _ => Bound::Infinite,
        }
    }

    /// Larger of two lower bounds.
    pub fn max_lower(&self, other: &Self) -> Self {
        match (self, other) {
            (Bound::Infinite, _) | (_, Bound::Infinite) => Bound::Infinite,
            _ => {
                if self.cmp_finite(other) == Some(Ordering::Less) {
                    other.clone()
                } else {
                    self.clone()
                }
            }
        }
    }

    /// Larger of two upper bounds.
    pub fn max_upper(&self, other: &Self) -> Self {
        self.max_lower(other)
    }
}

/// Eventual envelope of a stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Growth {
    pub lower: Bound,
    pub upper: Bound,
}

impl Growth {
    pub fn exact(q: Q, l: Q) -> Self {
        Growth {
            lower: Bound::quad(q, l),
            upper: Bound::quad(q, l),
        }
    }

    pub fn at_least(lower: Bound) -> Self {
        Growth {
            lower,
            upper: Bound::Infinite,
        }
    }

    pub fn superquadratic() -> Self {
        Growth::at_least(Bound::Infinite)
    }

    /// Decides `self ≤* other` when the envelopes separate strictly.
    pub fn eventually_below(&self, other: &Growth) -> Option<bool> {
        match (&self.upper, &other.lower) {
            (Bound::Quad { .. }, Bound::Infinite) => return Some(true),
            (a @ Bound::Quad { .. }, b @ Bound::Quad { .. })
                if a.cmp_finite(b) == Some(Ordering::Less) =>
            {
                return Some(true)
            }
            _ => {}
        }
        match (&self.lower, &other.upper) {
            (Bound::Infinite, Bound::Quad { .. }) => Some(false),
            (a @ Bound::Quad { .. }, b @ Bound::Quad { .. })
                if a.cmp_finite(b) == Some(Ordering::Greater) =>
            {
                Some(false)
            }
            _ => None,
        }
    }
}
