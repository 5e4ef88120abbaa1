//! The maps `Ψ−` and `Ψ+` as data, so connections can be listed, composed
//! and corrupted.

use std::collections::HashMap;

use crate::kernel::{EpStream, OmegaSet, Partition, Schedule, UpStream, Q};
use crate::relations::Object;

use super::constructions::*;
use super::TukeyError;

/// `Ψ−`, applied to the source's `x`.
#[derive(Debug, Clone, PartialEq)]
pub enum MinusMap {
    Identity,
    /// `f ↦ f∘σ`
    Reindex(Schedule),
    /// `f ↦ B·f`
    Scale(u64),
    /// `X ↦ g_X` for the given `k`
    DoubleCountBound(u64),
    NestedAccelerator,
    BdForallSpreader,
    /// `g ↦ g(0) + n`
    UnitSpreader,
    Chain(Vec<MinusMap>),
}

/// `Ψ+`, applied to the target's `y′`.
#[derive(Debug, Clone, PartialEq)]
pub enum PlusMap {
    Identity,
    /// `X ↦ n ↦ x_{σ(n)}`
    Sample(Schedule),
    /// `b ↦ b[ω]`
    Range,
    /// `b ↦ b[ω] ∪ (b[ω] + 1)`
    ThickRange,
    /// `X ↦ X ∪ (X + 1)`
    Thicken,
    IntervalPartition {
        merge_first: bool,
    },
    Minima,
    /// the two least points of every block
    TwoSmallest,
    SparseSelectorRange,
    /// constantly `ω`
    Omega,
    /// `X` when co-infinite, the evens otherwise
    CoInfiniteOrEvens,
    RecursiveSpreader(u64),
    /// `h′(n) = (k+1)n`
    FlatSpreader(u64),
    UnitBlocks,
    ThickUnitBlocks,
    Greedy(Q),
    Contract(u64),
    IdMajorant(Schedule),
    Chain(Vec<PlusMap>),
}

fn stream(x: &Object) -> Result<&UpStream, TukeyError> {
    x.as_stream()
        .ok_or_else(|| TukeyError::TypeMismatch(format!("expected a stream, got {}", x.describe())))
}

fn set(x: &Object) -> Result<&OmegaSet, TukeyError> {
    x.as_set()
        .ok_or_else(|| TukeyError::TypeMismatch(format!("expected a set, got {}", x.describe())))
}

impl MinusMap {
    pub fn apply(&self, x: &Object) -> Result<Object, TukeyError> {
        Ok(match self {
            MinusMap::Identity => x.clone(),
            MinusMap::Reindex(s) => Object::Stream(reindex_stream(stream(x)?, *s)?),
            MinusMap::Scale(b) => Object::Stream(scale_values(stream(x)?, *b)?),
            MinusMap::DoubleCountBound(k) => Object::Stream(double_count_bound(set(x)?, *k)?),
            MinusMap::NestedAccelerator => Object::Stream(nested_accelerator(stream(x)?)),
            MinusMap::BdForallSpreader => Object::Stream(bd_forall_spreader(stream(x)?)),
            MinusMap::UnitSpreader => {
                let g0 = stream(x)?.start()?;
                Object::Stream(UpStream::Ep(EpStream::arithmetic(g0, 1)?))
            }
            MinusMap::Chain(maps) => {
                let mut cur = x.clone();
                for m in maps {
                    cur = m.apply(&cur)?;
                }
                cur
            }
        })
    }

    pub fn describe(&self) -> String {
        match self {
            MinusMap::Identity => "identity".into(),
            MinusMap::Reindex(s) => format!("reindex({})", s.describe()),
            MinusMap::Scale(b) => format!("scale_values({b})"),
            MinusMap::DoubleCountBound(k) => format!("double_count_bound(k={k})"),
            MinusMap::NestedAccelerator => "nested_accelerator".into(),
            MinusMap::BdForallSpreader => "bd_forall_spreader".into(),
            MinusMap::UnitSpreader => "unit_spreader".into(),
            MinusMap::Chain(ms) => ms
                .iter()
                .map(|m| m.describe())
                .collect::<Vec<_>>()
                .join(" then "),
        }
    }

    /// Forward composition: `self` first.
    pub fn then(self, next: MinusMap) -> MinusMap {
        match (self, next) {
            (MinusMap::Identity, m) | (m, MinusMap::Identity) => m,
            (MinusMap::Chain(mut a), MinusMap::Chain(b)) => {
                a.extend(b);
                MinusMap::Chain(a)
            }
            (MinusMap::Chain(mut a), m) => {
                a.push(m);
                MinusMap::Chain(a)
            }
            (m, MinusMap::Chain(mut b)) => {
                b.insert(0, m);
                MinusMap::Chain(b)
            }
            (a, b) => MinusMap::Chain(vec![a, b]),
        }
    }
}

impl PlusMap {
    pub fn apply(&self, y: &Object) -> Result<Object, TukeyError> {
        Ok(match self {
            PlusMap::Identity => y.clone(),
            PlusMap::Sample(s) => Object::Stream(sample_enumeration(set(y)?, *s)?),
            PlusMap::Range => Object::Set(range_set(stream(y)?)),
            PlusMap::ThickRange => Object::Set(thicken(&range_set(stream(y)?))?),
            PlusMap::Thicken => Object::Set(thicken(set(y)?)?),
            PlusMap::IntervalPartition { merge_first } => {
                Object::Partition(interval_partition_of(stream(y)?, *merge_first)?)
            }
            PlusMap::Minima => Object::Set(minima_set(partition(y)?)?),
            PlusMap::TwoSmallest => Object::Set(two_smallest(partition(y)?)?),
            PlusMap::SparseSelectorRange => Object::Set(range_set(&sparse_selector(stream(y)?)?)),
            PlusMap::Omega => Object::Set(OmegaSet::omega()),
            PlusMap::CoInfiniteOrEvens => {
                let x = set(y)?;
                if x.co_infinite().is_yes() {
                    y.clone()
                } else {
                    Object::Set(OmegaSet::evens())
                }
            }
            PlusMap::RecursiveSpreader(k) => Object::Stream(recursive_spreader(stream(y)?, *k)),
            PlusMap::FlatSpreader(k) => {
                Object::Stream(UpStream::Ep(EpStream::arithmetic(0, k + 1)?))
            }
            PlusMap::UnitBlocks => Object::Measure(unit_blocks(set(y)?)?),
            PlusMap::ThickUnitBlocks => Object::Measure(unit_blocks(&thicken(set(y)?)?)?),
            PlusMap::Greedy(need) => {
                let m = y.as_measure().ok_or_else(|| {
                    TukeyError::TypeMismatch(format!(
                        "expected a measurable set, got {}",
                        y.describe()
                    ))
                })?;
                Object::Set(greedy_mass_points_with(m, *need)?)
            }
            PlusMap::Contract(b) => {
                let m = y.as_measure().ok_or_else(|| {
                    TukeyError::TypeMismatch(format!(
                        "expected a measurable set, got {}",
                        y.describe()
                    ))
                })?;
                Object::Measure(contract_set(m, *b)?)
            }
            PlusMap::IdMajorant(s) => Object::Stream(id_majorant_with(set(y)?, *s)),
            PlusMap::Chain(maps) => {
                let mut cur = y.clone();
                for m in maps {
                    cur = m.apply(&cur)?;
                }
                cur
            }
        })
    }

    pub fn describe(&self) -> String {
        match self {
            PlusMap::Identity => "identity".into(),
            PlusMap::Sample(s) => format!("sample_enumeration({})", s.describe()),
            PlusMap::Range => "range_set".into(),
            PlusMap::ThickRange => "thick_range".into(),
            PlusMap::Thicken => "thicken".into(),
            PlusMap::IntervalPartition { merge_first } => {
                format!("interval_partition_of(merge_first={merge_first})")
            }
            PlusMap::Minima => "minima_set".into(),
            PlusMap::TwoSmallest => "two_smallest".into(),
            PlusMap::SparseSelectorRange => "range(sparse_selector)".into(),
            PlusMap::Omega => "constant ω".into(),
            PlusMap::CoInfiniteOrEvens => "identity on co-infinite sets".into(),
            PlusMap::RecursiveSpreader(k) => format!("recursive_spreader(k={k})"),
            PlusMap::FlatSpreader(k) => format!("flat_spreader(k={k})"),
            PlusMap::UnitBlocks => "unit_blocks".into(),
            PlusMap::ThickUnitBlocks => "thick_unit_blocks".into(),
            PlusMap::Greedy(q) => format!(
                "greedy_mass_points(need={})",
                crate::kernel::rational_to_string(q)
            ),
            PlusMap::Contract(b) => format!("contract_set({b})"),
            PlusMap::IdMajorant(s) => format!("id_majorant({})", s.describe()),
            PlusMap::Chain(ms) => ms
                .iter()
                .map(|m| m.describe())
                .collect::<Vec<_>>()
                .join(" then "),
        }
    }

    /// Forward composition: `self` first.
    pub fn then(self, next: PlusMap) -> PlusMap {
        match (self, next) {
            (PlusMap::Identity, m) | (m, PlusMap::Identity) => m,
            (PlusMap::Chain(mut a), PlusMap::Chain(b)) => {
                a.extend(b);
                PlusMap::Chain(a)
            }
            (PlusMap::Chain(mut a), m) => {
                a.push(m);
                PlusMap::Chain(a)
            }
            (m, PlusMap::Chain(mut b)) => {
                b.insert(0, m);
                PlusMap::Chain(b)
            }
            (a, b) => PlusMap::Chain(vec![a, b]),
        }
    }
}

fn partition(y: &Object) -> Result<&Partition, TukeyError> {
    y.as_partition().ok_or_else(|| {
        TukeyError::TypeMismatch(format!("expected a partition, got {}", y.describe()))
    })
}

/// `X ∪ (X + 1)`; sets without a periodic word are returned unchanged.
pub fn thicken(x: &OmegaSet) -> Result<OmegaSet, TukeyError> {
    let Some((plen, l, _)) = x.word_shape() else {
        return Ok(x.clone());
    };
    let x = x.normalized();
    let bit = |n: u64| -> Result<bool, TukeyError> {
        Ok(x.contains(n)? || (n > 0 && x.contains(n - 1)?))
    };
    let prefix = (0..=plen).map(bit).collect::<Result<Vec<_>, _>>()?;
    let cycle = (plen + 1..plen + 1 + l)
        .map(bit)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(OmegaSet::word(prefix, cycle)?)
}

/// The two least points of every block.
pub fn two_smallest(p: &Partition) -> Result<OmegaSet, TukeyError> {
    let settle = p.settle_point()?;
    let period = p.space_period()?;
    let mut seen: HashMap<(u64, u32), u32> = HashMap::new();
    let mut bits = Vec::with_capacity((settle + period) as usize);
    for x in 0..settle + period {
        let c = seen.entry(p.block_of(x)?).or_default();
        *c += 1;
        bits.push(*c <= 2);
    }
    let cycle = bits.split_off(settle as usize);
    Ok(OmegaSet::word(bits, cycle)?)
}
