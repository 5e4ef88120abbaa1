//! Bounded searches for instances that should not exist.

use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::codec::encode_object;
use crate::kernel::{BlockPattern, EpStream, OmegaSet, Partition};
use crate::relations::{evaluate, Object, RelParams, RelationId};
use crate::tukey::{interleaved_pair, TukeyError};

use super::gen::{mix, random_ep, random_partition, random_word, rng_for, Sizes};

pub const PREDICATES: &[&str] = &["both_col1", "forall0_holds", "fail_fact_monotone"];

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum SearchOutcome {
    Exhausted {
        predicate: String,
        tried: u64,
        seed: u64,
    },
    Witness {
        predicate: String,
        attempt: u64,
        seed: u64,
        instance: Value,
    },
}

impl SearchOutcome {
    pub fn is_exhausted(&self) -> bool {
        matches!(self, SearchOutcome::Exhausted { .. })
    }
}

/// Boundaries `0 < f(0) < f(1) < …`, so every f-interval is a window.
fn partition_along(f: &EpStream) -> Result<Partition, TukeyError> {
    let (start, mut prefix) = (f.start(), f.prefix().to_vec());
    if start > 0 {
        prefix.insert(0, start);
    }
    Ok(Partition::new(
        EpStream::new(0, prefix, f.cycle().to_vec())?,
        BlockPattern::Single,
        0,
    )?)
}

fn both_col1(attempt: u64, seed: u64) -> Result<Option<Value>, TukeyError> {
    let s = mix(seed, attempt);
    let (f, g) = interleaved_pair(s);
    let mut rng = rng_for(s ^ 0xC011);
    // partitions cut along one of the pair are the closest calls
    let p = match rng.gen_range(0..3) {
        0 => partition_along(f.as_ep().expect("periodic pair"))?,
        1 => partition_along(g.as_ep().expect("periodic pair"))?,
        _ => random_partition(&mut rng, Sizes::default())?,
    };
    let params = RelParams {
        k: 1,
        ..RelParams::default()
    };
    let p = Object::Partition(p);
    let (fo, go) = (Object::Stream(f), Object::Stream(g));
    let a = evaluate(RelationId::ColForallK, &fo, &p, &params)?;
    let b = evaluate(RelationId::ColForallK, &go, &p, &params)?;
    Ok((a.is_true() && b.is_true()).then(|| json!({"f": encode_object(&fo), "g": encode_object(&go), "partition": encode_object(&p)})))
}

fn forall0_holds(attempt: u64, seed: u64) -> Result<Option<Value>, TukeyError> {
    let mut rng = rng_for(mix(seed, attempt));
    let f = Object::Stream(random_ep(&mut rng, Sizes::default(), 1)?.into());
    let x = Object::Set(random_word(&mut rng, Sizes::default(), false)?);
    let v = evaluate(
        RelationId::ForallK,
        &f,
        &x,
        &RelParams {
            k: 0,
            ..RelParams::default()
        },
    )?;
    Ok(v.is_true()
        .then(|| json!({"f": encode_object(&f), "x": encode_object(&x)})))
}

fn fail_fact_monotone(attempt: u64, seed: u64) -> Result<Option<Value>, TukeyError> {
    let mut rng = rng_for(mix(seed, attempt));
    let f = Object::Stream(random_ep(&mut rng, Sizes::default(), 1)?.into());
    let x = Object::Set(if rng.gen_bool(0.5) {
        random_word(&mut rng, Sizes::default(), false)?
    } else {
        OmegaSet::range(random_ep(&mut rng, Sizes::default(), 1)?.into())
    });
    let k = rng.gen_range(0..4);
    let l = k + rng.gen_range(1..3);
    for rel in [RelationId::ForallK, RelationId::ExistsK] {
        let lo = evaluate(
            rel,
            &f,
            &x,
            &RelParams {
                k,
                ..RelParams::default()
            },
        )?;
        let hi = evaluate(
            rel,
            &f,
            &x,
            &RelParams {
                k: l,
                ..RelParams::default()
            },
        )?;
        if lo.is_true() && hi.is_false() {
            return Ok(Some(
                json!({"f": encode_object(&f), "x": encode_object(&x), "rel": rel.as_str(), "k": k, "l": l}),
            ));
        }
    }
    Ok(None)
}

/// Tries `budget` instances; an evaluation error counts as a miss.
pub fn search_counterexample(
    predicate: &str,
    budget: u64,
    seed: u64,
) -> Result<SearchOutcome, TukeyError> {
    let probe: fn(u64, u64) -> Result<Option<Value>, TukeyError> = match predicate {
        "both_col1" => both_col1,
        "forall0_holds" => forall0_holds,
        "fail_fact_monotone" => fail_fact_monotone,
        other => return Err(TukeyError::UnknownId(format!("search predicate `{other}`"))),
    };
    for attempt in 0..budget {
        if let Ok(Some(instance)) = probe(attempt, seed) {
            return Ok(SearchOutcome::Witness {
                predicate: predicate.into(),
                attempt,
                seed,
                instance,
            });
        }
    }
    Ok(SearchOutcome::Exhausted {
        predicate: predicate.into(),
        tried: budget,
        seed,
    })
}
