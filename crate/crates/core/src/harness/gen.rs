//! Deterministic random objects.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::kernel::{
    BlockPattern, EpStream, MeasurableSet, NamedProgram, OmegaSet, Partition, ProgramStream,
    RatInterval, Schedule, UpStream, Q,
};
use crate::relations::{Object, ObjectKind};
use crate::tukey::{Domain, TukeyError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenParams {
    pub kind: ObjectKind,
    pub max_prefix: usize,
    pub max_cycle: usize,
    pub max_diff: u64,
    pub seed: u64,
}

impl GenParams {
    pub fn new(kind: ObjectKind, seed: u64) -> Self {
        GenParams {
            kind,
            max_prefix: 3,
            max_cycle: 4,
            max_diff: 4,
            seed,
        }
    }
}

/// Size bounds shared by the per-domain generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sizes {
    pub max_prefix: usize,
    pub max_cycle: usize,
    pub max_diff: u64,
}

impl Default for Sizes {
    fn default() -> Self {
        Sizes {
            max_prefix: 3,
            max_cycle: 4,
            max_diff: 4,
        }
    }
}

/// splitmix64 of `seed ⊕ trial`, so trials can run in any order.
pub fn mix(seed: u64, trial: u64) -> u64 {
    let mut z = seed ^ trial.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn generate(params: GenParams) -> Result<Object, TukeyError> {
    if params.max_cycle == 0 || params.max_diff == 0 {
        return Err(TukeyError::BadParams(
            "cycle length and difference bound must be positive".into(),
        ));
    }
    let sizes = Sizes {
        max_prefix: params.max_prefix,
        max_cycle: params.max_cycle,
        max_diff: params.max_diff,
    };
    let mut rng = rng_for(params.seed);
    Ok(match params.kind {
        ObjectKind::Stream => Object::Stream(UpStream::Ep(random_ep(&mut rng, sizes, 1)?)),
        ObjectKind::Set => Object::Set(random_word(&mut rng, sizes, false)?),
        ObjectKind::Partition => Object::Partition(random_partition(&mut rng, sizes)?),
        ObjectKind::Measure => Object::Measure(random_measure(&mut rng, sizes)?),
    })
}

/// An eventually periodic stream with every difference in `[lo, lo + max_diff)`.
pub fn random_ep(rng: &mut impl Rng, s: Sizes, lo: u64) -> Result<EpStream, TukeyError> {
    let plen = rng.gen_range(0..=s.max_prefix);
    let clen = rng.gen_range(1..=s.max_cycle);
    let start = rng.gen_range(0..=s.max_diff);
    let prefix: Vec<u64> = (0..plen)
        .map(|_| rng.gen_range(lo..lo + s.max_diff))
        .collect();
    let cycle: Vec<u64> = (0..clen)
        .map(|_| rng.gen_range(lo..lo + s.max_diff))
        .collect();
    Ok(EpStream::new(start, prefix, cycle)?)
}

/// A word with at least one member in its cycle, and at least one
/// non-member too when `co_infinite`.
pub fn random_word(
    rng: &mut impl Rng,
    s: Sizes,
    co_infinite: bool,
) -> Result<OmegaSet, TukeyError> {
    let plen = rng.gen_range(0..=s.max_prefix);
    let clen = rng.gen_range(if co_infinite { 2 } else { 1 }..=s.max_cycle.max(2));
    let density = rng.gen_range(0.2..0.8);
    let prefix: Vec<bool> = (0..plen).map(|_| rng.gen_bool(density)).collect();
    let mut cycle: Vec<bool> = (0..clen).map(|_| rng.gen_bool(density)).collect();
    let i = rng.gen_range(0..clen);
    cycle[i] = true;
    if co_infinite {
        let j = (i + rng.gen_range(1..clen)) % clen;
        cycle[j] = false;
    }
    Ok(OmegaSet::word(prefix, cycle)?)
}

pub fn random_ramp(rng: &mut impl Rng, s: Sizes, min_beta: u64) -> Result<UpStream, TukeyError> {
    let alpha = rng.gen_range(1..=3);
    let beta = rng.gen_range(min_beta.max(1)..=min_beta.max(1) + s.max_diff);
    Ok(UpStream::ramp(rng.gen_range(0..=s.max_diff), alpha, beta)?)
}

fn random_named(rng: &mut impl Rng) -> UpStream {
    let p = *[
        NamedProgram::Squares,
        NamedProgram::Cubes,
        NamedProgram::Pow2,
    ]
    .choose(rng)
    .expect("non-empty");
    ProgramStream::named(p).into()
}

pub fn random_schedule(rng: &mut impl Rng) -> Schedule {
    match rng.gen_range(0..4) {
        0 => Schedule::Arith(rng.gen_range(1..=3)),
        1 => Schedule::Squares,
        2 => Schedule::Shift(rng.gen_range(0..=2)),
        _ => Schedule::Arith(1),
    }
}

/// A member of `domain`; streams are mostly periodic so most checks decide.
pub fn random_in(domain: Domain, rng: &mut impl Rng, s: Sizes) -> Result<Object, TukeyError> {
    Ok(match domain {
        Domain::Streams => {
            let r = rng.gen_range(0..100);
            Object::Stream(if r < 80 {
                UpStream::Ep(random_ep(rng, s, 1)?)
            } else if r < 95 {
                random_ramp(rng, s, 1)?
            } else {
                random_named(rng)
            })
        }
        Domain::StreamsGtK(k) => Object::Stream(if rng.gen_range(0..100) < 85 {
            UpStream::Ep(random_ep(rng, s, k + 1)?)
        } else {
            random_ramp(rng, s, k + 1)?
        }),
        Domain::StreamsGtId | Domain::StreamsDivergent => {
            Object::Stream(if rng.gen_range(0..100) < 85 {
                random_ramp(rng, s, 1)?
            } else {
                random_named(rng)
            })
        }
        Domain::Sets => {
            if rng.gen_range(0..100) < 90 {
                Object::Set(random_word(rng, s, false)?)
            } else {
                Object::Set(OmegaSet::range(random_ramp(rng, s, 1)?))
            }
        }
        Domain::CoInfiniteSets => Object::Set(random_word(rng, s, true)?),
        Domain::Partitions => Object::Partition(random_partition(rng, s)?),
        Domain::MeasureSets => Object::Measure(random_measure(rng, s)?),
    })
}

/// Boundaries from 0, sometimes with windows split into labelled blocks.
pub fn random_partition(rng: &mut impl Rng, s: Sizes) -> Result<Partition, TukeyError> {
    let e = random_ep(rng, s, 1)?;
    let g = EpStream::new(0, e.prefix().to_vec(), e.cycle().to_vec())?;
    let windows = |rng: &mut dyn rand::RngCore, widths: &[u64]| -> Vec<Vec<u32>> {
        widths
            .iter()
            .map(|&w| {
                let blocks = rng.gen_range(1..=w.min(3)) as u32;
                let mut labels: Vec<u32> = (0..w).map(|_| rng.gen_range(0..blocks)).collect();
                // unsorted labels give blocks with gaps
                if rng.gen_bool(0.5) {
                    labels.sort_unstable();
                }
                labels
            })
            .collect()
    };
    let pattern = match rng.gen_range(0..10) {
        0..=5 => BlockPattern::Single,
        _ => BlockPattern::Windows {
            prefix: windows(rng, g.prefix()),
            cycle: windows(rng, g.cycle()),
        },
    };
    Ok(Partition::new(g, pattern, 0)?)
}

fn quarter(n: u64) -> Q {
    Q::new(n as i128, 4)
}

/// Quarter-aligned intervals repeating with an integer period.
pub fn random_measure(rng: &mut impl Rng, s: Sizes) -> Result<MeasurableSet, TukeyError> {
    let period = rng.gen_range(1..=s.max_cycle.max(1) as u64);
    let slots = 4 * period;
    let mut motif = Vec::new();
    let mut pos = 0;
    while pos < slots {
        let gap = rng.gen_range(0..=3);
        let len = rng.gen_range(1..=4);
        let lo = pos + gap;
        let hi = (lo + len).min(slots);
        if lo >= hi {
            break;
        }
        motif.push(RatInterval::new(quarter(lo), quarter(hi))?);
        pos = hi + 1;
    }
    if motif.is_empty() {
        motif.push(RatInterval::new(quarter(0), quarter(1))?);
    }
    Ok(MeasurableSet::new(
        vec![],
        motif,
        Q::from_integer(0),
        Q::from_integer(period as i128),
    )?)
}
