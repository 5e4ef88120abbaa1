use num_traits::One;

use super::{scan, Quant, ThresholdSpec, Verdict};
use crate::kernel::{interval_count_profile, OmegaSet, Recipe, Result, UpStream, Q};

fn count_at(f: &UpStream, x: &OmegaSet, n: u64) -> Result<u64> {
    x.count_in(f.eval(n)?, f.eval(n + 1)?)
}

/// Decides `∀∞ n` / `∃∞ n` of `|[f(n), f(n+1)) ∩ X| ≤ t(n)`.
pub fn eval_count_relation(
    f: &UpStream,
    x: &OmegaSet,
    t: &ThresholdSpec,
    quant: Quant,
    horizon: u64,
) -> Verdict {
    if let Some(v) = decide(f, x, t, quant) {
        return v;
    }
    let goal = quant.goal();
    match t {
        ThresholdSpec::BoundedExistential => {
            // pointwise bound: the least count seen in the back half
            let counts: Vec<u64> = (0..horizon).map_while(|n| count_at(f, x, n).ok()).collect();
            let tail = &counts[counts.len() / 2..];
            let k = tail.iter().copied().min().unwrap_or(0);
            scan(counts.len() as u64, goal, |n| Ok(counts[n as usize] <= k))
        }
        _ => scan(horizon, goal, |n| {
            let c = count_at(f, x, n)?;
            Ok(match t {
                ThresholdSpec::Const(k) => c <= *k,
                ThresholdSpec::Identity => c <= n,
                ThresholdSpec::Fn(g) => c <= g.eval(n)?,
                ThresholdSpec::BoundedExistential => unreachable!(),
            })
        }),
    }
}

/// The constant bound realising a true bounded verdict: the largest eventual
/// count for `∀∞`, the smallest recurring one for `∃∞`.
pub fn bd_witness(f: &UpStream, x: &OmegaSet, quant: Quant) -> Option<u64> {
    let p = interval_count_profile(f, x).ok()?;
    match quant {
        Quant::Forall => p.cycle.iter().copied().max(),
        Quant::Exists => p.cycle.iter().copied().min(),
    }
}

fn decide(f: &UpStream, x: &OmegaSet, t: &ThresholdSpec, quant: Quant) -> Option<Verdict> {
    // every point of an infinite X lands in some interval
    if *t == ThresholdSpec::Const(0) && quant == Quant::Forall {
        return Some(Verdict::False);
    }
    // bounded interval lengths bound the counts, so every diverging
    // threshold is eventually met
    if f.as_ep().is_some()
        && matches!(
            t,
            ThresholdSpec::Identity | ThresholdSpec::Fn(_) | ThresholdSpec::BoundedExistential
        )
    {
        return Some(Verdict::True);
    }
    if f.as_ep().is_some() && x.is_decidable() {
        let p = interval_count_profile(f, x).ok()?;
        if let ThresholdSpec::Const(k) = t {
            return Some(quant.over_cycle(&p.cycle, |c| c <= k));
        }
    }
    if let Some(v) = subsample_rule(f, x, t, quant) {
        return Some(v);
    }
    if let Some(v) = divergent_rule(f, x, t) {
        return Some(v);
    }
    sparse_rule(f, x, t, quant)
}

/// `X = range(f ∘ σ)`: the `n`-th interval holds exactly `f(n)` when `n` is
/// hit by `σ`, and nothing otherwise.
fn subsample_rule(f: &UpStream, x: &OmegaSet, t: &ThresholdSpec, quant: Quant) -> Option<Verdict> {
    let OmegaSet::Range(s) = x else { return None };
    let skips_infinitely = if s.describe() == f.describe() {
        false
    } else {
        let UpStream::Program(p) = s else { return None };
        let Recipe::Compose { outer, schedule } = p.recipe() else {
            return None;
        };
        if outer.describe() != f.describe() {
            return None;
        }
        schedule.skips_infinitely_many()
    };
    Some(match t {
        ThresholdSpec::Const(0) => match quant {
            Quant::Forall => Verdict::False,
            Quant::Exists => Verdict::from_bool(skips_infinitely),
        },
        _ => Verdict::True,
    })
}

/// Interval lengths tend to infinity while X has bounded gaps, so the counts
/// diverge.
fn divergent_rule(f: &UpStream, x: &OmegaSet, t: &ThresholdSpec) -> Option<Verdict> {
    if !f.facts().divergent() {
        return None;
    }
    let (_, period, ones) = x.word_shape()?;
    match t {
        ThresholdSpec::Const(_) | ThresholdSpec::BoundedExistential => Some(Verdict::False),
        ThresholdSpec::Identity => {
            let UpStream::Ramp(r) = f else { return None };
            // counts are d(n)·w/L + O(1) with d(n) = αn + β
            let rate = Q::new((r.alpha * ones) as i128, period as i128);
            if rate < Q::one() {
                Some(Verdict::True)
            } else if rate > Q::one() {
                Some(Verdict::False)
            } else if ones == period {
                // X is cofinite: count = αn + β > n eventually
                Some(Verdict::False)
            } else {
                None
            }
        }
        ThresholdSpec::Fn(_) => None,
    }
}

/// Eventually periodic `f` against a set whose gaps grow past `f`'s
/// differences: counts are eventually at most one.
fn sparse_rule(f: &UpStream, x: &OmegaSet, t: &ThresholdSpec, quant: Quant) -> Option<Verdict> {
    let f = f.as_ep()?;
    let OmegaSet::Range(s) = x else { return None };
    let floor = s.facts().gap_floor;
    let m = f.eventual_max_diff();
    match (t, quant) {
        (ThresholdSpec::Const(k), _) if *k >= 1 => floor.reaches(m).map(|_| Verdict::True),
        // a gap of 2m leaves a whole empty interval between consecutive points
        (ThresholdSpec::Const(0), Quant::Exists) => floor.reaches(2 * m).map(|_| Verdict::True),
        _ => None,
    }
}
