//! Instances whose premise holds by construction.
//!
//! The builders work from `Ψ−(x)` of the connection at hand, so a corrupted
//! `Ψ−` still gets instances satisfying its own premise.

use num_traits::Zero;
use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::kernel::{
    BlockPattern, EpStream, MeasurableSet, OmegaSet, Partition, ProgramStream, RatInterval, Recipe,
    Schedule, UpStream, Q,
};
use crate::relations::{Object, RelationId, Verdict};
use crate::tukey::{connection_from_spec, CheckPolicy, Domain, TukeyConnection, TukeyError};

use super::gen::{random_ep, random_ramp, random_word, rng_for, Sizes};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub connection: String,
    pub reason: String,
    /// the premise as re-evaluated; `Unknown` only where undecidable
    #[serde(skip)]
    pub premise: Verdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Scope {
    All,
    Some,
}

type Built = Option<(Object, Object, String)>;

/// Looks the connection up by `id{params}` and builds an instance.
pub fn certified_instance(
    spec: &str,
    seed: u64,
) -> Result<Option<(Object, Object, Certificate)>, TukeyError> {
    let conn = connection_from_spec(spec)?;
    certified_for(&conn, seed, CheckPolicy::default())
}

pub fn certified_for(
    conn: &TukeyConnection,
    seed: u64,
    policy: CheckPolicy,
) -> Result<Option<(Object, Object, Certificate)>, TukeyError> {
    let mut rng = rng_for(seed);
    let Some((x, y, reason)) = build(conn, &mut rng)? else {
        return Ok(None);
    };
    let target = conn.target.clone().with_horizon(policy.horizon);
    let premise = target.eval(&conn.map_minus.apply(&x)?, &y)?;
    let cert = Certificate {
        connection: conn.label(),
        reason,
        premise,
    };
    Ok(Some((x, y, cert)))
}

fn sizes() -> Sizes {
    Sizes::default()
}

fn certified_x(domain: Domain, rng: &mut impl Rng) -> Result<Object, TukeyError> {
    let s = sizes();
    Ok(match domain {
        Domain::Streams => Object::Stream(UpStream::Ep(random_ep(rng, s, 1)?)),
        Domain::StreamsGtK(k) => Object::Stream(UpStream::Ep(random_ep(rng, s, k + 1)?)),
        Domain::StreamsGtId | Domain::StreamsDivergent => Object::Stream(random_ramp(rng, s, 1)?),
        Domain::Sets => Object::Set(random_word(rng, s, false)?),
        Domain::CoInfiniteSets => Object::Set(random_word(rng, s, true)?),
        other => {
            return Err(TukeyError::BadParams(format!(
                "no certified builder for {}",
                other.describe()
            )))
        }
    })
}

fn build(conn: &TukeyConnection, rng: &mut impl Rng) -> Result<Built, TukeyError> {
    let x = certified_x(conn.source.domain, rng)?;
    let Object::Stream(h) = conn.map_minus.apply(&x)? else {
        return Err(TukeyError::TypeMismatch("Ψ− must produce a stream".into()));
    };
    let t = &conn.target;
    let k = t.params.k;
    let ep = h.as_ep().cloned();
    let built = match (t.relation, t.dualized) {
        (RelationId::ForallK | RelationId::ExistsK, false) => {
            let scope = if t.relation == RelationId::ForallK {
                Scope::All
            } else {
                Scope::Some
            };
            match ep {
                Some(e) => sparse_word(&e, k, scope, t.codomain == Domain::CoInfiniteSets, rng)?
                    .map(|y| {
                        (
                            Object::Set(y),
                            format!("at most {k} points in the chosen intervals of Ψ−(x)"),
                        )
                    }),
                None => subsample(&h, k, scope, rng)
                    .map(|y| (y, "one point per interval of Ψ−(x) at most".to_string())),
            }
        }
        (RelationId::ColForallK | RelationId::ColExistsK, false) => {
            let scope = if t.relation == RelationId::ColForallK {
                Scope::All
            } else {
                Scope::Some
            };
            match ep {
                Some(e) => colored_partition(&e, k, scope, rng)?.map(|p| {
                    (
                        Object::Partition(p),
                        format!("windows of Ψ−(x) split into at most {k} blocks"),
                    )
                }),
                None => None,
            }
        }
        (RelationId::MeasureForall | RelationId::MeasureExists, false) => {
            let scope = if t.relation == RelationId::MeasureForall {
                Scope::All
            } else {
                Scope::Some
            };
            match ep {
                Some(e) => Some((
                    Object::Measure(mass_set(&e, t.params.eps, scope, rng)?),
                    "mass at most ε in the chosen intervals of Ψ−(x)".to_string(),
                )),
                None => None,
            }
        }
        (RelationId::BdForall | RelationId::BdExists, false) => subsample(&h, 1, Scope::All, rng)
            .map(|y| (y, "one point per interval by construction".to_string())),
        (RelationId::IdForall | RelationId::IdExists, false) => match &h {
            UpStream::Ramp(r) if rng.gen_bool(0.5) => {
                let m = r.alpha + 1 + rng.gen_range(0..3);
                let mut cycle = vec![false; m as usize];
                cycle[0] = true;
                Some((
                    Object::Set(OmegaSet::word(vec![], cycle)?),
                    format!("multiples of {m} meet [h(n), h(n+1)) about αn/{m} < n times"),
                ))
            }
            _ => subsample(&h, 1, Scope::All, rng)
                .map(|y| (y, "one point per interval by construction".to_string())),
        },
        (RelationId::LeqStar, false) => {
            let c = rng.gen_range(0..=3);
            let y = match ep {
                Some(e) => UpStream::Ep(e.offset(c)?),
                None => ProgramStream::new(Recipe::Offset {
                    inner: h.clone(),
                    add: c,
                })
                .into(),
            };
            Some((Object::Stream(y), format!("y′ = Ψ−(x) + {c}")))
        }
        (RelationId::LeqStar, true) => {
            let c = rng.gen_range(1..=3);
            let y = match ep {
                Some(e) => UpStream::Ep(e.offset(c)?),
                None => ProgramStream::new(Recipe::Offset {
                    inner: h.clone(),
                    add: c,
                })
                .into(),
            };
            Some((
                Object::Stream(y),
                format!("y′ = Ψ−(x) + {c} lies above Ψ−(x) everywhere"),
            ))
        }
        (RelationId::BlassIncl, false) => match ep {
            Some(e) => {
                let m = rng.gen_range(1..=3);
                let c = rng.gen_range(0..=2);
                Some((
                    Object::Stream(UpStream::Ep(e.reindex_affine(m, c)?)),
                    format!("g(n) = Ψ−(x)({m}n + {c}) so every g-interval holds one of Ψ−(x)"),
                ))
            }
            None => None,
        },
        (RelationId::BlassIncl, true) => match ep {
            Some(e) => {
                let d = e.min_diff();
                if d >= 2 && rng.gen_bool(0.5) {
                    let c = rng.gen_range(1..d);
                    Some((
                        Object::Stream(UpStream::Ep(e.offset(c)?)),
                        format!("g = Ψ−(x) + {c} straddles every boundary of Ψ−(x)"),
                    ))
                } else {
                    let m = rng.gen_range(2..=3);
                    Some((
                        Object::Stream(UpStream::Ep(e.reindex_affine(m, 0)?)),
                        format!("g-intervals span {m} intervals of Ψ−(x)"),
                    ))
                }
            }
            None => None,
        },
        _ => None,
    };
    Ok(built.map(|(y, reason)| (x, y, reason)))
}

/// `ran(h∘σ)`, at most one point per `h`-interval. For `∃` with `k = 0`
/// the schedule skips infinitely many intervals.
fn subsample(h: &UpStream, k: u64, scope: Scope, rng: &mut impl Rng) -> Option<Object> {
    if k == 0 && scope == Scope::All {
        return None;
    }
    let schedule = if k == 0 {
        *[Schedule::Arith(2), Schedule::Arith(3), Schedule::Squares]
            .choose(rng)
            .expect("non-empty")
    } else {
        *[
            Schedule::Arith(1),
            Schedule::Arith(2),
            Schedule::Squares,
            Schedule::Shift(1),
            Schedule::Shift(2),
        ]
        .choose(rng)
        .expect("non-empty")
    };
    let s = if schedule == Schedule::Arith(1) {
        h.clone()
    } else {
        ProgramStream::new(Recipe::Compose {
            outer: h.clone(),
            schedule,
        })
        .into()
    };
    Some(Object::Set(OmegaSet::range(s)))
}

fn bounded_phases(n: usize, scope: Scope, rng: &mut impl Rng) -> Vec<bool> {
    match scope {
        Scope::All => vec![true; n],
        Scope::Some => {
            let mut v: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
            v[rng.gen_range(0..n)] = true;
            v
        }
    }
}

/// Points placed interval by interval over two periods of `h`.
fn sparse_word(
    h: &EpStream,
    k: u64,
    scope: Scope,
    co_inf: bool,
    rng: &mut impl Rng,
) -> Result<Option<OmegaSet>, TukeyError> {
    let plen = h.prefix().len() as u64;
    let phases = 2 * h.cycle().len();
    let p0 = h.eval(plen)?;
    let end = h.eval(plen + phases as u64)?;
    let mut bits = vec![false; end as usize];
    for b in bits.iter_mut().take(p0 as usize) {
        *b = rng.gen_bool(0.5);
    }
    let bounded = bounded_phases(phases, scope, rng);
    for (j, &bnd) in bounded.iter().enumerate() {
        let a = h.eval(plen + j as u64)?;
        let d = h.diff(plen + j as u64);
        let c = if bnd {
            let cap = k.min(d);
            if rng.gen_bool(0.5) {
                cap
            } else {
                rng.gen_range(0..=cap)
            }
        } else {
            rng.gen_range((k + 1).min(d)..=d)
        };
        for i in sample(rng, d as usize, c as usize) {
            bits[a as usize + i] = true;
        }
    }
    if !bits[p0 as usize..].contains(&true) {
        let slot = bounded
            .iter()
            .enumerate()
            .find(|(_, &b)| !b || k >= 1)
            .map(|(j, _)| j);
        let Some(j) = slot else {
            return Ok(None);
        };
        bits[h.eval(plen + j as u64)? as usize] = true;
    }
    if co_inf && bits[p0 as usize..].iter().all(|&b| b) {
        let last = bits.len() - 1;
        bits[last] = false;
    }
    let cycle = bits.split_off(p0 as usize);
    Ok(Some(OmegaSet::word(bits, cycle)?))
}

/// Windows are the intervals of `f` (plus `[0, f(0))`), each split into
/// labelled blocks.
fn colored_partition(
    f: &EpStream,
    k: u64,
    scope: Scope,
    rng: &mut impl Rng,
) -> Result<Option<Partition>, TukeyError> {
    if k == 0 {
        return Ok(None);
    }
    let mut prefix: Vec<u64> = Vec::new();
    if f.start() > 0 {
        prefix.push(f.start());
    }
    prefix.extend_from_slice(f.prefix());
    let cycle: Vec<u64> = f.cycle().iter().chain(f.cycle()).copied().collect();
    let labels = |rng: &mut dyn rand::RngCore, d: u64, blocks: u64| -> Vec<u32> {
        let mut l: Vec<u32> = (0..d)
            .map(|i| {
                if i < blocks {
                    i as u32
                } else {
                    rng.gen_range(0..blocks) as u32
                }
            })
            .collect();
        l.shuffle(rng);
        l
    };
    let mut prefix_labels = Vec::with_capacity(prefix.len());
    for &d in &prefix {
        let blocks = rng.gen_range(1..=d.min(3));
        prefix_labels.push(labels(rng, d, blocks));
    }
    let bounded = bounded_phases(cycle.len(), scope, rng);
    let cycle_labels: Vec<Vec<u32>> = cycle
        .iter()
        .zip(&bounded)
        .map(|(&d, &b)| {
            let blocks = if b {
                rng.gen_range(1..=k.min(d))
            } else {
                rng.gen_range((k + 1).min(d)..=d)
            };
            labels(rng, d, blocks)
        })
        .collect();
    let g = EpStream::new(0, prefix, cycle)?;
    let pattern = BlockPattern::Windows {
        prefix: prefix_labels,
        cycle: cycle_labels,
    };
    Ok(Some(Partition::new(g, pattern, 0)?))
}

fn quarters_below(x: Q) -> u64 {
    (x * Q::from_integer(4)).floor().to_integer().max(0) as u64
}

/// One piece per interval of `h` over two periods.
fn mass_set(
    h: &EpStream,
    cap: Q,
    scope: Scope,
    rng: &mut impl Rng,
) -> Result<MeasurableSet, TukeyError> {
    let plen = h.prefix().len() as u64;
    let phases = 2 * h.cycle().len();
    let p0 = h.eval(plen)?;
    let period = h.eval(plen + phases as u64)? - p0;
    let q = |n: u64| Q::new(n as i128, 4);
    let prefix: Vec<RatInterval> = (0..p0)
        .filter(|_| rng.gen_bool(0.3))
        .map(|j| {
            RatInterval::new(
                Q::from_integer(j as i128),
                Q::from_integer(j as i128) + Q::new(1, 2),
            )
        })
        .collect::<Result<_, _>>()?;
    let bounded = bounded_phases(phases, scope, rng);
    let mut motif = Vec::new();
    for (j, &b) in bounded.iter().enumerate() {
        let a = h.eval(plen + j as u64)? - p0;
        let d = Q::from_integer(h.diff(plen + j as u64) as i128);
        let top = if cap < d { cap } else { d };
        let m = if b {
            match rng.gen_range(0..3) {
                0 => top,
                1 => q(rng.gen_range(0..=quarters_below(top))),
                _ => Q::zero(),
            }
        } else if top < d {
            q(rng.gen_range(quarters_below(top) + 1..=quarters_below(d)))
        } else {
            d
        };
        let m = if motif.is_empty() && j + 1 == phases && m.is_zero() {
            top
        } else {
            m
        };
        if m.is_zero() {
            continue;
        }
        let slack = quarters_below(d - m);
        let lo = Q::from_integer(a as i128) + q(rng.gen_range(0..=slack));
        motif.push(RatInterval::new(lo, lo + m)?);
    }
    Ok(MeasurableSet::new(
        prefix,
        motif,
        Q::from_integer(p0 as i128),
        Q::from_integer(period as i128),
    )?)
}
