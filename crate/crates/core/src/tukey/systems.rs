//! Relational systems `⟨X, Y, ⊏⟩` and their duals.

use std::collections::BTreeMap;

use crate::kernel::{classify_stream, parse_rational, rational_to_string, Tri, Q};
use crate::relations::{evaluate, Object, ObjectKind, RelParams, RelationId, Verdict};

use super::TukeyError;

/// Which objects a side of a system ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    /// strictly increasing functions
    Streams,
    /// every interval `[f(n), f(n+1))` has more than `k` points
    StreamsGtK(u64),
    /// `f(n+1) − f(n) > n`
    StreamsGtId,
    /// `f(n+1) − f(n) → ∞`
    StreamsDivergent,
    Sets,
    CoInfiniteSets,
    Partitions,
    MeasureSets,
}

impl Domain {
    pub fn kind(self) -> ObjectKind {
        match self {
            Domain::Streams
            | Domain::StreamsGtK(_)
            | Domain::StreamsGtId
            | Domain::StreamsDivergent => ObjectKind::Stream,
            Domain::Sets | Domain::CoInfiniteSets => ObjectKind::Set,
            Domain::Partitions => ObjectKind::Partition,
            Domain::MeasureSets => ObjectKind::Measure,
        }
    }

    pub fn describe(self) -> String {
        match self {
            Domain::Streams => "UpStream".into(),
            Domain::StreamsGtK(k) => format!("UpStream with in_gt_k({k})"),
            Domain::StreamsGtId => "UpStream with in_gt_id".into(),
            Domain::StreamsDivergent => "UpStream with divergent_diffs".into(),
            Domain::Sets => "OmegaSet".into(),
            Domain::CoInfiniteSets => "OmegaSet with co_infinite".into(),
            Domain::Partitions => "Partition".into(),
            Domain::MeasureSets => "MeasurableSet".into(),
        }
    }

    /// Membership as far as the representation tells.
    pub fn admits(self, obj: &Object) -> Tri {
        if obj.kind() != self.kind() {
            return Tri::No;
        }
        match (self, obj) {
            (Domain::StreamsGtK(k), Object::Stream(f)) => classify_stream(f).in_gt_k(k),
            (Domain::StreamsGtId, Object::Stream(f)) => classify_stream(f).in_gt_id,
            (Domain::StreamsDivergent, Object::Stream(f)) => classify_stream(f).divergent_diffs,
            (Domain::CoInfiniteSets, Object::Set(x)) => x.co_infinite(),
            _ => Tri::Yes,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelationalSystem {
    pub id: String,
    pub domain: Domain,
    pub codomain: Domain,
    pub relation: RelationId,
    pub params: RelParams,
    pub dualized: bool,
    pub metadata: String,
}

impl RelationalSystem {
    /// `x ⊏ y`. A dual system swaps the sides and negates.
    pub fn eval(&self, x: &Object, y: &Object) -> Result<Verdict, TukeyError> {
        if self.dualized {
            Ok(evaluate(self.relation, y, x, &self.params)?.negate())
        } else {
            Ok(evaluate(self.relation, x, y, &self.params)?)
        }
    }

    pub fn with_horizon(mut self, horizon: u64) -> Self {
        self.params.horizon = horizon;
        self
    }

    pub fn descriptor(&self) -> String {
        format!(
            "⟨{}, {}, {}{}⟩",
            self.domain.describe(),
            self.codomain.describe(),
            self.relation,
            if self.dualized { "⊥" } else { "" }
        )
    }
}

pub fn dualize_system(s: &RelationalSystem) -> RelationalSystem {
    let id = match s.id.strip_prefix("dual(").and_then(|r| r.strip_suffix(')')) {
        Some(inner) if s.dualized => inner.to_string(),
        _ => format!("dual({})", s.id),
    };
    RelationalSystem {
        id,
        domain: s.codomain,
        codomain: s.domain,
        relation: s.relation,
        params: s.params.clone(),
        dualized: !s.dualized,
        metadata: format!("b and d swap under duality; base: {}", s.metadata),
    }
}

fn with_params(
    id: String,
    relation: RelationId,
    domain: Domain,
    codomain: Domain,
    params: RelParams,
    metadata: &str,
) -> RelationalSystem {
    RelationalSystem {
        id,
        domain,
        codomain,
        relation,
        params,
        dualized: false,
        metadata: metadata.to_string(),
    }
}

pub(crate) fn d() -> RelationalSystem {
    with_params(
        "D".into(),
        RelationId::LeqStar,
        Domain::Streams,
        Domain::Streams,
        RelParams::default(),
        "𝔟(D)=𝔟 and 𝔡(D)=𝔡",
    )
}

pub(crate) fn blass() -> RelationalSystem {
    with_params(
        "I".into(),
        RelationId::BlassIncl,
        Domain::Streams,
        Domain::Streams,
        RelParams::default(),
        "𝔟(𝕀)=𝔟 and 𝔡(𝕀)=𝔡",
    )
}

fn k_params(k: u64) -> RelParams {
    RelParams {
        k,
        ..RelParams::default()
    }
}

pub(crate) fn r_k(k: u64, forall: bool) -> RelationalSystem {
    let (rel, name) = if forall {
        (RelationId::ForallK, "R_forall_k")
    } else {
        (RelationId::ExistsK, "R_exists_k")
    };
    let meta = match (forall, k) {
        (true, 0) => "𝔟(R^0_∀)=1; 𝔡(R^0_∀) is not well-defined or ∞",
        (true, _) => "𝔟(R^k_∀)=𝔟 and 𝔡(R^k_∀)=𝔡",
        (false, _) => "𝔟(R^k_∃)=𝔡 and 𝔡(R^k_∃)=𝔟",
    };
    with_params(
        format!("{name}{{k={k}}}"),
        rel,
        Domain::Streams,
        Domain::Sets,
        k_params(k),
        meta,
    )
}

pub(crate) fn r_col(k: u64, forall: bool) -> RelationalSystem {
    let (rel, name) = if forall {
        (RelationId::ColForallK, "R_col_forall_k")
    } else {
        (RelationId::ColExistsK, "R_col_exists_k")
    };
    let meta = match (forall, k) {
        (true, 1) => "𝔟(R^{col,1}_∀)=2",
        (true, _) => "𝔟(R^{col,k}_∀)=𝔟 and 𝔡(R^{col,k}_∀)=𝔡 for k≥2",
        (false, _) => "𝔟(R^{col,k}_∃)=𝔡 and 𝔡(R^{col,k}_∃)=𝔟 for k≥2",
    };
    with_params(
        format!("{name}{{k={k}}}"),
        rel,
        Domain::Streams,
        Domain::Partitions,
        k_params(k),
        meta,
    )
}

pub(crate) fn l_k(k: u64, forall: bool) -> RelationalSystem {
    let (rel, name) = if forall {
        (RelationId::ForallK, "L_forall_k")
    } else {
        (RelationId::ExistsK, "L_exists_k")
    };
    let meta = match (forall, k) {
        (true, 0) => "𝔟(L^0_∀)=1; 𝔡(L^0_∀) is not well-defined (or ∞)",
        (true, _) => "𝔟(L^k_∀)=𝔟 and 𝔡(L^k_∀)=𝔡",
        (false, _) => "𝔡(L^k_∃)=𝔟 and 𝔟(L^k_∃)=𝔡",
    };
    with_params(
        format!("{name}{{k={k}}}"),
        rel,
        Domain::StreamsGtK(k),
        Domain::CoInfiniteSets,
        k_params(k),
        meta,
    )
}

pub(crate) fn m_eps(eps: Q, forall: bool) -> RelationalSystem {
    let (rel, name) = if forall {
        (RelationId::MeasureForall, "M_forall")
    } else {
        (RelationId::MeasureExists, "M_exists")
    };
    // recorded as stated, although M^ε_∃ ≅ R^k_∃ suggests the values swap
    let meta = if forall {
        "𝔟(M^ε_∀)=𝔟 and 𝔡(M^ε_∀)=𝔡"
    } else {
        "𝔟(M^ε_∃)=𝔟 and 𝔡(M^ε_∃)=𝔡 (as stated; M^ε_∃ ≅ R^k_∃ would give the swapped values)"
    };
    let params = RelParams {
        eps,
        ..RelParams::default()
    };
    with_params(
        format!("{name}{{eps={}}}", rational_to_string(&eps)),
        rel,
        Domain::Streams,
        Domain::MeasureSets,
        params,
        meta,
    )
}

pub(crate) fn m_sum() -> RelationalSystem {
    with_params(
        "M_sum".into(),
        RelationId::MeasureSum,
        Domain::Streams,
        Domain::MeasureSets,
        RelParams::default(),
        "open: is 𝔟(M^sum) ≤ 𝔟 and 𝔡 ≤ 𝔡(M^sum) provable in ZFC?",
    )
}

pub(crate) fn m_vec() -> RelationalSystem {
    with_params(
        "M_vec".into(),
        RelationId::MeasureVec,
        Domain::Streams,
        Domain::MeasureSets,
        RelParams::default(),
        "𝔟(M^ε_∀) ≤ 𝔟(M^sum) and 𝔡(M^sum) ≤ 𝔡(M^ε_∀)",
    )
}

pub(crate) fn r_id(forall: bool) -> RelationalSystem {
    if forall {
        with_params(
            "R_id_forall".into(),
            RelationId::IdForall,
            Domain::StreamsGtId,
            Domain::Sets,
            RelParams::default(),
            "𝔡(R^id)=𝔡 and 𝔟(R^id)=𝔟 (stated without the ∀/∃ subscript)",
        )
    } else {
        with_params(
            "R_id_exists".into(),
            RelationId::IdExists,
            Domain::StreamsGtId,
            Domain::Sets,
            RelParams::default(),
            "𝔡(R^id_∃)=𝔟 and 𝔟(R^id_∃)=𝔡",
        )
    }
}

pub(crate) fn r_bd(forall: bool) -> RelationalSystem {
    if forall {
        with_params(
            "R_bd_forall".into(),
            RelationId::BdForall,
            Domain::StreamsDivergent,
            Domain::Sets,
            RelParams::default(),
            "𝔡(R^bd_∀)=𝔡 and 𝔟(R^bd_∀)=𝔟",
        )
    } else {
        with_params(
            "R_bd_exists".into(),
            RelationId::BdExists,
            Domain::StreamsDivergent,
            Domain::Sets,
            RelParams::default(),
            "𝔡(R^bd_∃)=𝔟 and 𝔟(R^bd_∃)=𝔡",
        )
    }
}

/// The registry, instantiated at representative parameters.
pub fn list_systems() -> Vec<RelationalSystem> {
    let base = vec![
        d(),
        blass(),
        r_k(0, true),
        r_k(1, true),
        r_k(2, true),
        r_k(0, false),
        r_k(1, false),
        r_col(1, true),
        r_col(2, true),
        r_col(2, false),
        l_k(1, true),
        l_k(0, false),
        l_k(1, false),
        m_eps(Q::from_integer(1), true),
        m_eps(Q::from_integer(1), false),
        m_sum(),
        m_vec(),
        r_id(true),
        r_id(false),
        r_bd(true),
        r_bd(false),
    ];
    let duals: Vec<_> = base.iter().map(dualize_system).collect();
    base.into_iter().chain(duals).collect()
}

/// Splits `name{a=1,b=2}` into the name and its parameters.
pub fn parse_id(id: &str) -> Result<(String, BTreeMap<String, String>), TukeyError> {
    let Some((name, rest)) = id.split_once('{') else {
        return Ok((id.to_string(), BTreeMap::new()));
    };
    let body = rest
        .strip_suffix('}')
        .ok_or_else(|| TukeyError::BadParams(format!("unbalanced braces in `{id}`")))?;
    let mut params = BTreeMap::new();
    for item in body.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| TukeyError::BadParams(format!("expected key=value, got `{item}`")))?;
        params.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok((name.to_string(), params))
}

pub(crate) fn param_u64(
    params: &BTreeMap<String, String>,
    key: &str,
    default: u64,
) -> Result<u64, TukeyError> {
    params
        .get(key)
        .map(|v| {
            v.parse()
                .map_err(|_| TukeyError::BadParams(format!("`{key}` must be a natural number")))
        })
        .unwrap_or(Ok(default))
}

pub(crate) fn param_q(
    params: &BTreeMap<String, String>,
    key: &str,
    default: Q,
) -> Result<Q, TukeyError> {
    match params.get(key) {
        None => Ok(default),
        Some(v) => {
            let q = parse_rational(v)
                .map_err(|_| TukeyError::BadParams(format!("`{key}` must be a rational")))?;
            if q <= Q::from_integer(0) {
                return Err(TukeyError::BadParams(format!("`{key}` must be positive")));
            }
            Ok(q)
        }
    }
}

/// Looks a system up by id, e.g. `R_forall_k{k=1}` or `dual(D)`.
pub fn get_system(id: &str) -> Result<RelationalSystem, TukeyError> {
    if let Some(inner) = id.strip_prefix("dual(").and_then(|r| r.strip_suffix(')')) {
        return Ok(dualize_system(&get_system(inner)?));
    }
    let (name, params) = parse_id(id)?;
    let k = || param_u64(&params, "k", 1);
    let eps = || param_q(&params, "eps", Q::from_integer(1));
    Ok(match name.as_str() {
        "D" => d(),
        "I" => blass(),
        "R_forall_k" => r_k(k()?, true),
        "R_exists_k" => r_k(k()?, false),
        "R_col_forall_k" => r_col(k()?, true),
        "R_col_exists_k" => r_col(k()?, false),
        "L_forall_k" => l_k(k()?, true),
        "L_exists_k" => l_k(k()?, false),
        "M_forall" => m_eps(eps()?, true),
        "M_exists" => m_eps(eps()?, false),
        "M_sum" => m_sum(),
        "M_vec" => m_vec(),
        "R_id_forall" => r_id(true),
        "R_id_exists" => r_id(false),
        "R_bd_forall" => r_bd(true),
        "R_bd_exists" => r_bd(false),
        _ => return Err(TukeyError::UnknownId(id.to_string())),
    })
}
