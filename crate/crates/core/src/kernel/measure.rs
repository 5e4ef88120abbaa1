//! Infinite-measure subsets of the half-line with rational endpoints.

use num_traits::{Signed, Zero};

use super::rational::{q_int, rational_to_string};
use super::{KernelError, Result, Q};

/// Half-open interval `[lo, hi)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: Q,
    pub hi: Q,
}

impl RatInterval {
    pub fn new(lo: Q, hi: Q) -> Result<Self> {
        if lo.is_negative() || hi <= lo {
            return Err(KernelError::MalformedSpec(format!(
                "bad interval [{}, {})",
                rational_to_string(&lo),
                rational_to_string(&hi)
            )));
        }
        Ok(RatInterval { lo, hi })
    }

    pub fn len(&self) -> Q {
        self.hi - self.lo
    }

    /// Length of `[a, b) ∩ self`.
    pub fn overlap(&self, a: &Q, b: &Q) -> Q {
        let lo = if *a > self.lo { *a } else { self.lo };
        let hi = if *b < self.hi { *b } else { self.hi };
        if hi > lo {
            hi - lo
        } else {
            Q::zero()
        }
    }
}

/// `prefix ∪ ⋃_{j ≥ 0} (p0 + j·L + motif)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasurableSet {
    prefix: Vec<RatInterval>,
    motif: Vec<RatInterval>,
    p0: Q,
    period: Q,
}

fn check_disjoint(intervals: &mut [RatInterval], bound: &Q, what: &str) -> Result<()> {
    intervals.sort_by_key(|x| x.lo);
    for w in intervals.windows(2) {
        if w[1].lo < w[0].hi {
            return Err(KernelError::MalformedSpec(format!(
                "overlapping {what} intervals"
            )));
        }
    }
    if intervals.last().is_some_and(|i| i.hi > *bound) {
        return Err(KernelError::MalformedSpec(format!(
            "{what} interval out of range"
        )));
    }
    Ok(())
}

impl MeasurableSet {
    pub fn new(
        mut prefix: Vec<RatInterval>,
        mut motif: Vec<RatInterval>,
        p0: Q,
        period: Q,
    ) -> Result<Self> {
        if p0.is_negative() || !period.is_positive() {
            return Err(KernelError::MalformedSpec("need p0 >= 0 and L > 0".into()));
        }
        check_disjoint(&mut prefix, &p0, "prefix")?;
        check_disjoint(&mut motif, &period, "motif")?;
        if motif.is_empty() {
            return Err(KernelError::MalformedSpec("zero-measure motif".into()));
        }
        Ok(MeasurableSet {
            prefix,
            motif,
            p0,
            period,
        })
    }

    /// `[0, ∞)`.
    pub fn full_line() -> Self {
        MeasurableSet::new(
            vec![],
            vec![RatInterval {
                lo: Q::zero(),
                hi: q_int(1),
            }],
            Q::zero(),
            q_int(1),
        )
        .expect("valid")
    }

    pub fn prefix(&self) -> &[RatInterval] {
        &self.prefix
    }

    pub fn motif(&self) -> &[RatInterval] {
        &self.motif
    }

    pub fn p0(&self) -> Q {
        self.p0
    }

    pub fn period(&self) -> Q {
        self.period
    }

    pub fn motif_measure(&self) -> Q {
        self.motif.iter().map(RatInterval::len).sum()
    }

    /// `μ([p0, p0 + t) ∩ Y)` for `t ≥ 0`.
    fn periodic_mass(&self, t: &Q) -> Q {
        let full = (t / self.period).floor();
        let rest = t - full * self.period;
        let partial: Q = self
            .motif
            .iter()
            .map(|i| i.overlap(&Q::zero(), &rest))
            .sum();
        full * self.motif_measure() + partial
    }

    /// `μ([a, b) ∩ Y)`.
    pub fn measure_in(&self, a: &Q, b: &Q) -> Q {
        if b <= a {
            return Q::zero();
        }
        let head: Q = self.prefix.iter().map(|i| i.overlap(a, b)).sum();
        let from = if *a > self.p0 { a - self.p0 } else { Q::zero() };
        let to = if *b > self.p0 { b - self.p0 } else { Q::zero() };
        head + self.periodic_mass(&to) - self.periodic_mass(&from)
    }

    pub fn contains(&self, x: &Q) -> bool {
        if *x < self.p0 {
            return self.prefix.iter().any(|i| i.lo <= *x && *x < i.hi);
        }
        let t = x - self.p0;
        let r = t - (t / self.period).floor() * self.period;
        self.motif.iter().any(|i| i.lo <= r && r < i.hi)
    }

    /// The image under `x ↦ x / b`.
    pub fn contract(&self, b: u64) -> Self {
        let b = q_int(b);
        let shrink = |v: &[RatInterval]| {
            v.iter()
                .map(|i| RatInterval {
                    lo: i.lo / b,
                    hi: i.hi / b,
                })
                .collect()
        };
        MeasurableSet {
            prefix: shrink(&self.prefix),
            motif: shrink(&self.motif),
            p0: self.p0 / b,
            period: self.period / b,
        }
    }

    pub fn describe(&self) -> String {
        let show = |v: &[RatInterval]| {
            v.iter()
                .map(|i| {
                    format!(
                        "[{},{})",
                        rational_to_string(&i.lo),
                        rational_to_string(&i.hi)
                    )
                })
                .collect::<Vec<_>>()
                .join("")
        };
        format!(
            "measure({};{};{};{})",
            show(&self.prefix),
            show(&self.motif),
            rational_to_string(&self.p0),
            rational_to_string(&self.period)
        )
    }
}
