//! Checking the defining implication, composition, and corrupted variants.

use serde::Serialize;

use crate::kernel::Schedule;
use crate::relations::{Goal, Object, Verdict, DEFAULT_HORIZON};

use super::connections::{same_system, TukeyConnection};
use super::maps::{MinusMap, PlusMap};
use super::systems::{self, RelationalSystem};
use super::TukeyError;

pub const DEFAULT_EVIDENCE: u64 = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CheckPolicy {
    pub horizon: u64,
    pub evidence: u64,
}

impl Default for CheckPolicy {
    fn default() -> Self {
        CheckPolicy {
            horizon: DEFAULT_HORIZON,
            evidence: DEFAULT_EVIDENCE,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    PassWithEvidence { witnesses: u64 },
    Vacuous,
    Fail,
    Inconclusive,
}

impl CheckStatus {
    pub fn label(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::PassWithEvidence { .. } => "pass_with_evidence",
            CheckStatus::Vacuous => "vacuous",
            CheckStatus::Fail => "fail",
            CheckStatus::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOutcome {
    pub premise: Verdict,
    pub conclusion: Verdict,
    pub status: CheckStatus,
}

/// `premise = target(Ψ−(x), y′)`, `conclusion = source(x, Ψ+(y′))`.
pub fn check_connection(
    conn: &TukeyConnection,
    x: &Object,
    y: &Object,
    policy: CheckPolicy,
) -> Result<CheckOutcome, TukeyError> {
    check_inner(conn, x, y, policy, false)
}

/// As [`check_connection`], but an undecided premise counts as true because
/// the instance was built to satisfy it.
pub fn check_certified(
    conn: &TukeyConnection,
    x: &Object,
    y: &Object,
    policy: CheckPolicy,
) -> Result<CheckOutcome, TukeyError> {
    check_inner(conn, x, y, policy, true)
}

fn check_inner(
    conn: &TukeyConnection,
    x: &Object,
    y: &Object,
    policy: CheckPolicy,
    certified: bool,
) -> Result<CheckOutcome, TukeyError> {
    let target = conn.target.clone().with_horizon(policy.horizon);
    let source = conn.source.clone().with_horizon(policy.horizon);
    let premise = target.eval(&conn.map_minus.apply(x)?, y)?;
    let holds = premise.is_true() || (certified && premise.is_unknown());
    if !holds {
        return Ok(CheckOutcome {
            premise,
            conclusion: Verdict::Unknown {
                horizon: 0,
                evidence: 0,
                goal: Goal::Eventually,
            },
            status: CheckStatus::Vacuous,
        });
    }
    let conclusion = source.eval(x, &conn.map_plus.apply(y)?)?;
    let status = match conclusion {
        Verdict::True => CheckStatus::Pass,
        Verdict::False => CheckStatus::Fail,
        Verdict::Unknown {
            evidence,
            goal: Goal::Infinitely,
            ..
        } if evidence >= policy.evidence => CheckStatus::PassWithEvidence {
            witnesses: evidence,
        },
        Verdict::Unknown { .. } => CheckStatus::Inconclusive,
    };
    Ok(CheckOutcome {
        premise,
        conclusion,
        status,
    })
}

/// `c1` from `A` into `B` followed by `c2` from `B` into `C`.
pub fn compose_connections(
    c1: &TukeyConnection,
    c2: &TukeyConnection,
) -> Result<TukeyConnection, TukeyError> {
    if !same_system(&c1.target, &c2.source) {
        return Err(TukeyError::TypeMismatch(format!(
            "{} ends at {} but {} starts at {}",
            c1.label(),
            c1.target.id,
            c2.label(),
            c2.source.id
        )));
    }
    Ok(TukeyConnection {
        id: format!("{}∘{}", c2.label(), c1.label()),
        params: Default::default(),
        source: c1.source.clone(),
        target: c2.target.clone(),
        map_minus: c1.map_minus.clone().then(c2.map_minus.clone()),
        map_plus: c2.map_plus.clone().then(c1.map_plus.clone()),
        anchor: format!("{} then {}", c1.anchor, c2.anchor),
        closure_note: format!("{}; {}", c1.closure_note, c2.closure_note),
    })
}

fn lowered(sys: &RelationalSystem, k: u64) -> RelationalSystem {
    let forall = matches!(
        sys.relation,
        crate::relations::RelationId::ForallK
            | crate::relations::RelationId::ColForallK
            | crate::relations::RelationId::BdForall
    );
    match sys.relation {
        crate::relations::RelationId::ColForallK | crate::relations::RelationId::ColExistsK => {
            systems::r_col(k, forall)
        }
        _ if sys.id.starts_with('L') => systems::l_k(k, forall),
        _ => systems::r_k(k, forall),
    }
}

/// The connection with one map (or, for identity facts, the source
/// threshold) pushed off by one. `None` when no such corruption exists.
pub fn standard_mutant(conn: &TukeyConnection) -> Option<TukeyConnection> {
    let mut m = conn.clone();
    let k = conn.param("k").unwrap_or(1);
    let what: String = match conn.id.as_str() {
        "vojtas_forall_k" | "Iperp_to_exists_k" => {
            if k == 0 {
                return None;
            }
            m.map_plus = PlusMap::Sample(Schedule::Arith(k));
            format!("sample every {k}th point instead of every {}th", k + 1)
        }
        "exists1_to_dualD" => {
            m.map_plus = PlusMap::ThickRange;
            "range thickened by one".into()
        }
        "exists0_glue" | "L_exists0_glue" => {
            m.map_minus = MinusMap::Identity;
            "no gluing".into()
        }
        "col2_forall_to_I" | "col2_exists_to_Iperp" => {
            m.source = lowered(&conn.source, 1);
            "one colour instead of two".into()
        }
        "Rk_to_colk_forall" | "Rk_to_colk_exists" => {
            m.map_plus = PlusMap::TwoSmallest;
            "two least points per block".into()
        }
        "L_forall_to_D"
        | "L1_R1_iso_bwd"
        | "id_forall_to_Rk"
        | "id_exists_iso_fwd"
        | "exists0_to_id_exists"
        | "bd_exists_from_Rk" => {
            m.map_plus = PlusMap::Omega;
            "Ψ+ constantly ω".into()
        }
        "L_forall_dual_to_dualD" => {
            m.map_plus = PlusMap::FlatSpreader(k);
            "spreader without the h term".into()
        }
        "L1_R1_iso_fwd" => {
            m.map_plus = PlusMap::Thicken;
            "set thickened by one".into()
        }
        "M_forall_from_R" | "M_exists_from_R" => {
            m.map_plus = PlusMap::ThickUnitBlocks;
            "blocks of width two".into()
        }
        "M_forall_to_R" | "M_exists_to_R" => {
            m.map_plus = PlusMap::Greedy(crate::kernel::Q::from_integer(1));
            "greedy mass 1 instead of 2".into()
        }
        "M_scaling_forall" | "M_scaling_exists" => {
            let b = conn.param("B")?;
            if b <= 1 {
                return None;
            }
            m.map_minus = MinusMap::Scale(b - 1);
            m.map_plus = PlusMap::Contract(b - 1);
            format!("scale by {} instead of {b}", b - 1)
        }
        "D_to_id_forall" => {
            m.map_plus = PlusMap::IdMajorant(Schedule::Arith(1));
            "majorant over x_n instead of x_{n²}".into()
        }
        "D_to_bd_forall" => {
            m.map_minus = MinusMap::UnitSpreader;
            m.map_plus = PlusMap::Sample(Schedule::Arith(1));
            "unit spreader with x_n".into()
        }
        "fact_k_le_l"
        | "fact_exists_le_forall"
        | "fact_col_k_le_l"
        | "fact_col_exists_le_forall"
        | "fact_L_k_le_l"
        | "fact_L_exists_le_forall"
        | "R_to_L"
        | "bd_below_Rk" => {
            if k == 0 {
                return None;
            }
            let source = match conn.id.as_str() {
                "bd_below_Rk" => systems::r_k(
                    k - 1,
                    conn.source.relation == crate::relations::RelationId::BdForall,
                ),
                _ => lowered(&conn.source, k - 1),
            };
            m.source = RelationalSystem {
                domain: conn.source.domain,
                ..source
            };
            format!("source threshold {} instead of the target's {k}", k - 1)
        }
        _ => return None,
    };
    m.id = format!("{}~mutant", conn.id);
    m.anchor = format!("mutant of {}: {what}", conn.anchor);
    Some(m)
}
