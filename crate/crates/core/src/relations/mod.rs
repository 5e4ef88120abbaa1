//! Tri-state evaluators for the interval relations.
//!
//! Every evaluator answers `True`/`False` only when the representation forces
//! the answer. Otherwise it scans a finite horizon and reports what it saw.

mod colored;
mod count;
mod measure;
mod order;

pub use colored::eval_colored_relation;
pub use count::{bd_witness, eval_count_relation};
pub use measure::eval_measure_relation;
pub use order::{eval_blass_inclusion, eval_leq_star};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::kernel::{
    classify_stream, KernelError, MeasurableSet, OmegaSet, Partition, Tri, UpStream, Q,
};

/// Horizon used when nothing else is specified.
pub const DEFAULT_HORIZON: u64 = 4096;

/// What an undecided verdict was trying to establish.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Goal {
    /// holds for all but finitely many `n`
    Eventually,
    /// holds for infinitely many `n`
    Infinitely,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    True,
    False,
    /// `evidence` counts the indices below `horizon` where the pointwise
    /// condition behind `goal` held.
    Unknown {
        horizon: u64,
        evidence: u64,
        goal: Goal,
    },
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    pub fn is_true(self) -> bool {
        self == Verdict::True
    }

    pub fn is_false(self) -> bool {
        self == Verdict::False
    }

    pub fn is_unknown(self) -> bool {
        matches!(self, Verdict::Unknown { .. })
    }

    /// Logical negation. `¬∀∞ P` is `∃∞ ¬P`, so the evidence flips too.
    pub fn negate(self) -> Self {
        match self {
            Verdict::True => Verdict::False,
            Verdict::False => Verdict::True,
            Verdict::Unknown {
                horizon,
                evidence,
                goal,
            } => Verdict::Unknown {
                horizon,
                evidence: horizon.saturating_sub(evidence),
                goal: match goal {
                    Goal::Eventually => Goal::Infinitely,
                    Goal::Infinitely => Goal::Eventually,
                },
            },
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::Unknown { .. } => "unknown",
        }
    }

    pub fn to_json(self) -> serde_json::Value {
        match self {
            Verdict::Unknown {
                horizon,
                evidence,
                goal,
            } => serde_json::json!({
                "verdict": "unknown",
                "horizon": horizon,
                "evidence": evidence,
                "goal": goal,
            }),
            other => serde_json::json!({ "verdict": other.label() }),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Unknown {
                horizon,
                evidence,
                goal,
            } => write!(
                f,
                "Unknown(horizon={horizon}, evidence={evidence}, goal={goal:?})"
            ),
            Verdict::True => write!(f, "True"),
            Verdict::False => write!(f, "False"),
        }
    }
}

/// `∀∞` or `∃∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quant {
    Forall,
    Exists,
}

impl Quant {
    pub fn goal(self) -> Goal {
        match self {
            Quant::Forall => Goal::Eventually,
            Quant::Exists => Goal::Infinitely,
        }
    }

    /// Decides the quantifier over an eventual cycle of pointwise outcomes.
    pub fn over_cycle<V>(self, cycle: &[V], holds: impl Fn(&V) -> bool) -> Verdict {
        Verdict::from_bool(match self {
            Quant::Forall => cycle.iter().all(holds),
            Quant::Exists => cycle.iter().any(holds),
        })
    }
}

impl FromStr for Quant {
    type Err = KernelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "forall" | "all" | "∀" => Ok(Quant::Forall),
            "exists" | "ex" | "∃" => Ok(Quant::Exists),
            other => Err(KernelError::MalformedSpec(format!(
                "unknown quantifier `{other}`"
            ))),
        }
    }
}

/// Bound on interval counts.
#[derive(Debug, Clone, PartialEq)]
pub enum ThresholdSpec {
    Const(u64),
    /// the bound at index `n` is `n`
    Identity,
    /// the bound at index `n` is `g(n)`
    Fn(UpStream),
    /// some constant bound, chosen per pair
    BoundedExistential,
}

/// Bound on interval measures.
#[derive(Debug, Clone, PartialEq)]
pub enum MeasureThreshold {
    ConstEps(Q),
    VecEps(EpsSequence),
    Sum,
}

/// Rational sequences tending to zero.
#[derive(Debug, Clone, PartialEq)]
pub enum EpsSequence {
    /// the listed values, then zero forever
    UltimatelyZero(Vec<Q>),
    /// `first · ratio^n` with `0 < ratio < 1`
    Geometric { first: Q, ratio: Q },
}

impl EpsSequence {
    pub fn at(&self, n: u64) -> Q {
        match self {
            EpsSequence::UltimatelyZero(v) => v.get(n as usize).copied().unwrap_or_default(),
            EpsSequence::Geometric { first, ratio } => {
                let mut v = *first;
                for _ in 0..n.min(200) {
                    v *= ratio;
                }
                v
            }
        }
    }
}

/// Stable relation identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationId {
    ForallK,
    ExistsK,
    ColForallK,
    ColExistsK,
    BlassIncl,
    LeqStar,
    MeasureForall,
    MeasureExists,
    MeasureSum,
    MeasureVec,
    IdForall,
    IdExists,
    BdForall,
    BdExists,
}

impl RelationId {
    pub const ALL: [RelationId; 14] = [
        RelationId::ForallK,
        RelationId::ExistsK,
        RelationId::ColForallK,
        RelationId::ColExistsK,
        RelationId::BlassIncl,
        RelationId::LeqStar,
        RelationId::MeasureForall,
        RelationId::MeasureExists,
        RelationId::MeasureSum,
        RelationId::MeasureVec,
        RelationId::IdForall,
        RelationId::IdExists,
        RelationId::BdForall,
        RelationId::BdExists,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RelationId::ForallK => "forall_k",
            RelationId::ExistsK => "exists_k",
            RelationId::ColForallK => "col_forall_k",
            RelationId::ColExistsK => "col_exists_k",
            RelationId::BlassIncl => "blass_incl",
            RelationId::LeqStar => "leq_star",
            RelationId::MeasureForall => "measure_forall",
            RelationId::MeasureExists => "measure_exists",
            RelationId::MeasureSum => "measure_sum",
            RelationId::MeasureVec => "measure_vec",
            RelationId::IdForall => "id_forall",
            RelationId::IdExists => "id_exists",
            RelationId::BdForall => "bd_forall",
            RelationId::BdExists => "bd_exists",
        }
    }

    /// Kind of object on the right-hand side.
    pub fn rhs_kind(self) -> ObjectKind {
        match self {
            RelationId::ColForallK | RelationId::ColExistsK => ObjectKind::Partition,
            RelationId::BlassIncl | RelationId::LeqStar => ObjectKind::Stream,
            RelationId::MeasureForall
            | RelationId::MeasureExists
            | RelationId::MeasureSum
            | RelationId::MeasureVec => ObjectKind::Measure,
            _ => ObjectKind::Set,
        }
    }
}

impl FromStr for RelationId {
    type Err = KernelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RelationId::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| KernelError::MalformedSpec(format!("unknown relation `{s}`")))
    }
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObjectKind {
    Stream,
    Set,
    Partition,
    Measure,
}

/// Any object a relation can take.
#[derive(Debug, Clone, PartialEq)]
pub enum Object {
    Stream(UpStream),
    Set(OmegaSet),
    Partition(Partition),
    Measure(MeasurableSet),
}

impl Object {
    pub fn kind(&self) -> ObjectKind {
        match self {
            Object::Stream(_) => ObjectKind::Stream,
            Object::Set(_) => ObjectKind::Set,
            Object::Partition(_) => ObjectKind::Partition,
            Object::Measure(_) => ObjectKind::Measure,
        }
    }

    pub fn as_stream(&self) -> Option<&UpStream> {
        match self {
            Object::Stream(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_set(&self) -> Option<&OmegaSet> {
        match self {
            Object::Set(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_partition(&self) -> Option<&Partition> {
        match self {
            Object::Partition(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_measure(&self) -> Option<&MeasurableSet> {
        match self {
            Object::Measure(m) => Some(m),
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Object::Stream(s) => s.describe(),
            Object::Set(s) => s.describe(),
            Object::Partition(p) => format!(
                "partition({};{:?};{})",
                p.boundaries().describe(),
                p.pattern(),
                p.merge_prefix()
            ),
            Object::Measure(m) => m.describe(),
        }
    }
}

/// Numeric parameters of a relation.
#[derive(Debug, Clone, PartialEq)]
pub struct RelParams {
    pub k: u64,
    pub eps: Q,
    pub eps_seq: Option<EpsSequence>,
    pub quant: Quant,
    pub horizon: u64,
}

impl Default for RelParams {
    fn default() -> Self {
        RelParams {
            k: 1,
            eps: Q::new(1, 1),
            eps_seq: None,
            quant: Quant::Forall,
            horizon: DEFAULT_HORIZON,
        }
    }
}

/// Evaluates `lhs R rhs` for a relation id.
pub fn evaluate(
    rel: RelationId,
    lhs: &Object,
    rhs: &Object,
    params: &RelParams,
) -> Result<Verdict, KernelError> {
    let f = lhs
        .as_stream()
        .ok_or_else(|| mismatch(rel, "left", ObjectKind::Stream))?;
    let h = params.horizon;
    let set = || {
        rhs.as_set()
            .ok_or_else(|| mismatch(rel, "right", ObjectKind::Set))
    };
    let measure = || {
        rhs.as_measure()
            .ok_or_else(|| mismatch(rel, "right", ObjectKind::Measure))
    };
    let k = params.k;
    Ok(match rel {
        RelationId::ForallK => {
            eval_count_relation(f, set()?, &ThresholdSpec::Const(k), Quant::Forall, h)
        }
        RelationId::ExistsK => {
            eval_count_relation(f, set()?, &ThresholdSpec::Const(k), Quant::Exists, h)
        }
        RelationId::IdForall => {
            eval_count_relation(f, set()?, &ThresholdSpec::Identity, Quant::Forall, h)
        }
        RelationId::IdExists => {
            eval_count_relation(f, set()?, &ThresholdSpec::Identity, Quant::Exists, h)
        }
        RelationId::BdForall => eval_count_relation(
            f,
            set()?,
            &ThresholdSpec::BoundedExistential,
            Quant::Forall,
            h,
        ),
        RelationId::BdExists => eval_count_relation(
            f,
            set()?,
            &ThresholdSpec::BoundedExistential,
            Quant::Exists,
            h,
        ),
        RelationId::ColForallK | RelationId::ColExistsK => {
            let p = rhs
                .as_partition()
                .ok_or_else(|| mismatch(rel, "right", ObjectKind::Partition))?;
            let q = if rel == RelationId::ColForallK {
                Quant::Forall
            } else {
                Quant::Exists
            };
            eval_colored_relation(f, p, k, q, h)
        }
        RelationId::BlassIncl | RelationId::LeqStar => {
            let g = rhs
                .as_stream()
                .ok_or_else(|| mismatch(rel, "right", ObjectKind::Stream))?;
            if rel == RelationId::LeqStar {
                eval_leq_star(f, g, h)
            } else {
                eval_blass_inclusion(f, g, h)
            }
        }
        RelationId::MeasureForall => eval_measure_relation(
            f,
            measure()?,
            &MeasureThreshold::ConstEps(params.eps),
            Quant::Forall,
            h,
        ),
        RelationId::MeasureExists => eval_measure_relation(
            f,
            measure()?,
            &MeasureThreshold::ConstEps(params.eps),
            Quant::Exists,
            h,
        ),
        RelationId::MeasureSum => {
            eval_measure_relation(f, measure()?, &MeasureThreshold::Sum, params.quant, h)
        }
        RelationId::MeasureVec => {
            let seq = params.eps_seq.clone().unwrap_or(EpsSequence::Geometric {
                first: params.eps,
                ratio: Q::new(1, 2),
            });
            eval_measure_relation(
                f,
                measure()?,
                &MeasureThreshold::VecEps(seq),
                params.quant,
                h,
            )
        }
    })
}

fn mismatch(rel: RelationId, side: &str, want: ObjectKind) -> KernelError {
    KernelError::MalformedSpec(format!("relation `{rel}` expects a {want:?} on the {side}"))
}

/// Warns when `f` lies outside the domain the relation is stated for.
pub fn domain_warning(rel: RelationId, f: &UpStream, k: u64) -> Option<String> {
    let class = classify_stream(f);
    let (flag, what) = match rel {
        RelationId::ForallK | RelationId::ExistsK | RelationId::BdForall | RelationId::BdExists => {
            (class.in_gt_k(k), format!("differences > {k}"))
        }
        RelationId::IdForall | RelationId::IdExists => (class.in_gt_id, "f(n+1)-f(n) > n".into()),
        _ => return None,
    };
    match flag {
        Tri::Yes => None,
        Tri::No => Some(format!("domain violation: stream does not satisfy {what}")),
        Tri::Unknown => Some(format!("domain unverified: {what}")),
    }
}

/// Pointwise horizon scan shared by the evaluators. Stops early, with a
/// shorter horizon, if evaluation runs out of budget or range.
pub(crate) fn scan(
    horizon: u64,
    goal: Goal,
    mut holds_at: impl FnMut(u64) -> Result<bool, KernelError>,
) -> Verdict {
    let mut evidence = 0;
    let mut reached = 0;
    for n in 0..horizon {
        match holds_at(n) {
            Ok(true) => evidence += 1,
            Ok(false) => {}
            Err(_) => break,
        }
        reached = n + 1;
    }
    Verdict::Unknown {
        horizon: reached,
        evidence,
        goal,
    }
}
