//! Direct per-interval evaluation up to a horizon, independent of profiles.

use serde::Serialize;

use crate::kernel::{rational_to_string, Q};
use crate::relations::{Goal, Object, RelParams, RelationId};
use crate::tukey::TukeyError;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", content = "values", rename_all = "snake_case")]
pub enum OracleValues {
    Counts(Vec<u64>),
    Masses(Vec<String>),
    Flags(Vec<bool>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub values: OracleValues,
    /// whether the pointwise condition held at each `n < H`
    pub holds: Vec<bool>,
    pub violations: u64,
    pub witnesses: u64,
    pub goal: Goal,
    /// the goal read off the back half of the window
    pub verdict_at_horizon: bool,
}

fn goal_of(rel: RelationId, params: &RelParams) -> Goal {
    match rel {
        RelationId::ExistsK
        | RelationId::ColExistsK
        | RelationId::MeasureExists
        | RelationId::IdExists
        | RelationId::BdExists => Goal::Infinitely,
        RelationId::MeasureVec => params.quant.goal(),
        _ => Goal::Eventually,
    }
}

/// `bd` relations are checked against the constant `params.k`.
pub fn horizon_oracle(
    lhs: &Object,
    rhs: &Object,
    rel: RelationId,
    params: &RelParams,
    horizon: u64,
) -> Result<OracleReport, TukeyError> {
    if horizon == 0 {
        return Err(TukeyError::BadParams("horizon must be at least 1".into()));
    }
    let f = lhs
        .as_stream()
        .ok_or_else(|| TukeyError::TypeMismatch("left side must be a stream".into()))?;
    let mismatch = || TukeyError::TypeMismatch(format!("{rel} does not take {}", rhs.describe()));
    let mut holds = Vec::with_capacity(horizon as usize);
    let values = match rel {
        RelationId::ForallK
        | RelationId::ExistsK
        | RelationId::IdForall
        | RelationId::IdExists
        | RelationId::BdForall
        | RelationId::BdExists => {
            let x = rhs.as_set().ok_or_else(mismatch)?;
            let mut counts = Vec::new();
            for n in 0..horizon {
                let c = x.count_in(f.eval(n)?, f.eval(n + 1)?)?;
                let bound = match rel {
                    RelationId::IdForall | RelationId::IdExists => n,
                    _ => params.k,
                };
                holds.push(c <= bound);
                counts.push(c);
            }
            OracleValues::Counts(counts)
        }
        RelationId::ColForallK | RelationId::ColExistsK => {
            let p = rhs.as_partition().ok_or_else(mismatch)?;
            let mut counts = Vec::new();
            for n in 0..horizon {
                let c = p.blocks_meeting(f.eval(n)?, f.eval(n + 1)?)?;
                holds.push(c <= params.k);
                counts.push(c);
            }
            OracleValues::Counts(counts)
        }
        RelationId::MeasureForall
        | RelationId::MeasureExists
        | RelationId::MeasureVec
        | RelationId::MeasureSum => {
            let y = rhs.as_measure().ok_or_else(mismatch)?;
            let mut masses = Vec::new();
            for n in 0..horizon {
                let m = y.measure_in(
                    &Q::from_integer(f.eval(n)? as i128),
                    &Q::from_integer(f.eval(n + 1)? as i128),
                );
                let ok = match rel {
                    RelationId::MeasureVec => match &params.eps_seq {
                        Some(seq) => m <= seq.at(n),
                        None => m <= params.eps,
                    },
                    // on periodic data a finite sum means the masses vanish
                    RelationId::MeasureSum => m.numer() == &0,
                    _ => m <= params.eps,
                };
                holds.push(ok);
                masses.push(rational_to_string(&m));
            }
            OracleValues::Masses(masses)
        }
        RelationId::LeqStar => {
            let g = rhs.as_stream().ok_or_else(mismatch)?;
            for n in 0..horizon {
                holds.push(f.eval(n)? <= g.eval(n)?);
            }
            OracleValues::Flags(holds.clone())
        }
        RelationId::BlassIncl => {
            let g = rhs.as_stream().ok_or_else(mismatch)?;
            for n in 0..horizon {
                let (a, b) = (g.eval(n)?, g.eval(n + 1)?);
                let m = f.index_below(a)?;
                holds.push(f.eval(m + 1)? <= b);
            }
            OracleValues::Flags(holds.clone())
        }
    };
    let witnesses = holds.iter().filter(|&&b| b).count() as u64;
    let goal = goal_of(rel, params);
    let back = &holds[holds.len() / 2..];
    let verdict_at_horizon = match goal {
        Goal::Eventually => back.iter().all(|&b| b),
        Goal::Infinitely => back.iter().any(|&b| b),
    };
    Ok(OracleReport {
        values,
        violations: horizon - witnesses,
        witnesses,
        holds,
        goal,
        verdict_at_horizon,
    })
}
