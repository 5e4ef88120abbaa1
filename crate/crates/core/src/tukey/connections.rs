//! The connection registry.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::kernel::{rational_to_string, Schedule, Q};
use crate::relations::Quant;

use super::maps::{MinusMap, PlusMap};
use super::systems::{self, param_q, param_u64, parse_id, RelationalSystem};
use super::TukeyError;

/// A pair `(Ψ−, Ψ+)` from `source` into `target`:
/// `Ψ−(x) ⊏_target y′ ⇒ x ⊏_source Ψ+(y′)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TukeyConnection {
    pub id: String,
    pub params: BTreeMap<String, String>,
    pub source: RelationalSystem,
    pub target: RelationalSystem,
    pub map_minus: MinusMap,
    pub map_plus: PlusMap,
    /// the reduction being realized, in one line
    pub anchor: String,
    /// which representation kinds the maps keep
    pub closure_note: String,
}

impl TukeyConnection {
    /// `id{key=value,...}`.
    pub fn label(&self) -> String {
        if self.params.is_empty() {
            return self.id.clone();
        }
        let body: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        format!("{}{{{}}}", self.id, body.join(","))
    }

    pub fn with_horizon(mut self, horizon: u64) -> Self {
        self.source = self.source.with_horizon(horizon);
        self.target = self.target.with_horizon(horizon);
        self
    }

    pub(crate) fn param(&self, key: &str) -> Option<u64> {
        self.params.get(key).and_then(|v| v.parse().ok())
    }
}

/// Every connection id accepted by [`build_connection`].
pub const CONNECTION_IDS: &[&str] = &[
    "vojtas_forall_k",
    "exists1_to_dualD",
    "Iperp_to_exists_k",
    "exists0_glue",
    "L_exists0_glue",
    "col2_forall_to_I",
    "Rk_to_colk_forall",
    "Rk_to_colk_exists",
    "col2_exists_to_Iperp",
    "L_forall_to_D",
    "L_forall_dual_to_dualD",
    "L1_R1_iso_fwd",
    "L1_R1_iso_bwd",
    "M_forall_from_R",
    "M_exists_from_R",
    "M_forall_to_R",
    "M_exists_to_R",
    "M_scaling_forall",
    "M_scaling_exists",
    "id_forall_to_Rk",
    "D_to_id_forall",
    "id_exists_iso_fwd",
    "exists0_to_id_exists",
    "bd_exists_from_Rk",
    "D_to_bd_forall",
    "fact_k_le_l",
    "fact_exists_le_forall",
    "fact_col_k_le_l",
    "fact_col_exists_le_forall",
    "fact_L_k_le_l",
    "fact_L_exists_le_forall",
    "R_to_L",
    "bd_below_Rk",
];

/// Ids whose maps are both identities.
pub const FACT_IDS: &[&str] = &[
    "fact_k_le_l",
    "fact_exists_le_forall",
    "fact_col_k_le_l",
    "fact_col_exists_le_forall",
    "fact_L_k_le_l",
    "fact_L_exists_le_forall",
    "R_to_L",
    "bd_below_Rk",
];

/// The registry at its default parameters; quantifier-generic facts appear
/// once per quantifier.
pub fn list_connections() -> Vec<TukeyConnection> {
    let mut out = Vec::new();
    for id in CONNECTION_IDS {
        let quants: &[&str] = match *id {
            "fact_k_le_l" | "fact_col_k_le_l" | "fact_L_k_le_l" | "R_to_L" | "bd_below_Rk" => {
                &["forall", "exists"]
            }
            _ => &[""],
        };
        for q in quants {
            let mut params = BTreeMap::new();
            if !q.is_empty() {
                params.insert("quant".to_string(), q.to_string());
            }
            out.push(build_connection(id, &params).expect("defaults are valid"));
        }
    }
    out
}

/// Parses `id{k=1,...}` and builds it.
pub fn connection_from_spec(spec: &str) -> Result<TukeyConnection, TukeyError> {
    let (id, params) = parse_id(spec)?;
    build_connection(&id, &params)
}

fn quant_param(params: &BTreeMap<String, String>) -> Result<bool, TukeyError> {
    match params.get("quant").map(String::as_str) {
        None => Ok(true),
        Some(q) => q
            .parse::<Quant>()
            .map(|q| q == Quant::Forall)
            .map_err(|_| TukeyError::BadParams(format!("unknown quantifier `{q}`"))),
    }
}

/// Least `B` with `ε·B > δ`.
pub fn scaling_factor(eps: Q, delta: Q) -> u64 {
    let b = (delta / eps).floor() + Q::from_integer(1);
    *b.numer() as u64
}

struct Draft {
    source: RelationalSystem,
    target: RelationalSystem,
    minus: MinusMap,
    plus: PlusMap,
    anchor: String,
    closure: &'static str,
}

fn draft(
    source: RelationalSystem,
    target: RelationalSystem,
    minus: MinusMap,
    plus: PlusMap,
    anchor: impl Into<String>,
    closure: &'static str,
) -> Draft {
    Draft {
        source,
        target,
        minus,
        plus,
        anchor: anchor.into(),
        closure,
    }
}

const IDENTITY_CLOSURE: &str = "identity maps keep every representation";

pub fn build_connection(
    id: &str,
    raw: &BTreeMap<String, String>,
) -> Result<TukeyConnection, TukeyError> {
    use systems::{blass, d, dualize_system as dual, l_k, m_eps, r_bd, r_col, r_id, r_k};
    if !CONNECTION_IDS.contains(&id) {
        return Err(TukeyError::UnknownId(id.to_string()));
    }
    let mut params = BTreeMap::new();
    let mut k_of = |default: u64, min: u64| -> Result<u64, TukeyError> {
        let k = param_u64(raw, "k", default)?;
        if k < min {
            return Err(TukeyError::BadParams(format!("{id} needs k ≥ {min}")));
        }
        params.insert("k".to_string(), k.to_string());
        Ok(k)
    };
    let dr = match id {
        "vojtas_forall_k" => {
            let k = k_of(1, 1)?;
            draft(
                d(),
                r_k(k, true),
                MinusMap::Identity,
                PlusMap::Sample(Schedule::Arith(k + 1)),
                format!("D ⪯ R^{k}_∀ via h_X(n) = x_{{{}n}}", k + 1),
                "Ψ+ keeps words periodic: sampling an eventually periodic enumeration is periodic",
            )
        }
        "exists1_to_dualD" => draft(
            r_k(1, false),
            dual(&d()),
            MinusMap::Identity,
            PlusMap::Range,
            "R^1_∃ ⪯ D^⊥ via b ↦ b[ω]",
            "ranges of periodic streams are words; other ranges stay symbolic",
        ),
        "Iperp_to_exists_k" => {
            let k = k_of(1, 0)?;
            draft(
                dual(&blass()),
                r_k(k, false),
                MinusMap::Identity,
                PlusMap::Sample(Schedule::Arith(k + 1)),
                format!("𝕀^⊥ ⪯ R^{k}_∃ via f_X(n) = e_X((k+1)n)"),
                "sampling a word gives a periodic stream",
            )
        }
        "exists0_glue" => draft(
            r_k(0, false),
            r_k(1, false),
            MinusMap::Reindex(Schedule::Arith(2)),
            PlusMap::Identity,
            "R^0_∃ ⪯ R^1_∃ by joining consecutive intervals in pairs",
            "f(2n) keeps periodic streams periodic",
        ),
        "L_exists0_glue" => draft(
            l_k(0, false),
            l_k(1, false),
            MinusMap::Reindex(Schedule::Arith(2)),
            PlusMap::Identity,
            "L^0_∃ ⪯ L^1_∃ by joining consecutive intervals in pairs",
            "f(2n) keeps periodic streams periodic",
        ),
        "col2_forall_to_I" => draft(
            r_col(2, true),
            blass(),
            MinusMap::Identity,
            PlusMap::IntervalPartition { merge_first: false },
            "R^{col,2}_∀ ⪯ 𝕀 via g ↦ P_g",
            "periodic g gives a periodic interval partition",
        ),
        "Rk_to_colk_forall" | "Rk_to_colk_exists" => {
            let k = k_of(2, 2)?;
            let forall = id.ends_with("forall");
            draft(
                r_k(k, forall),
                r_col(k, forall),
                MinusMap::Identity,
                PlusMap::Minima,
                format!("R^{k} ⪯ R^{{col,{k}}} via P ↦ {{min P_n}}"),
                "minima of a periodic partition form a word",
            )
        }
        "col2_exists_to_Iperp" => draft(
            r_col(2, false),
            dual(&blass()),
            MinusMap::Identity,
            PlusMap::IntervalPartition { merge_first: true },
            "R^{col,2}_∃ ⪯ 𝕀^⊥ via g ↦ A_g with A_0 = [0, g(1))",
            "periodic g gives a periodic interval partition",
        ),
        "L_forall_to_D" => {
            let k = k_of(1, 1)?;
            draft(
                l_k(k, true),
                d(),
                MinusMap::Reindex(Schedule::Shift(1)),
                PlusMap::SparseSelectorRange,
                format!("L^{k}_∀ ⪯ D via h ↦ h(n+1) and f ↦ ran f′ with f(f′(n))+1 < f′(n+1)"),
                "f′ is periodic only for unit-slope f; otherwise a program",
            )
        }
        "L_forall_dual_to_dualD" => {
            let k = k_of(1, 1)?;
            draft(
                dual(&l_k(k, true)),
                dual(&d()),
                MinusMap::DoubleCountBound(k),
                PlusMap::RecursiveSpreader(k),
                format!("(L^{k}_∀)^⊥ ⪯ D^⊥ via X ↦ g_X and h ↦ h′"),
                "g_X is periodic for words; h′ is always a program",
            )
        }
        "L1_R1_iso_fwd" => draft(
            l_k(1, false),
            r_k(1, false),
            MinusMap::Identity,
            PlusMap::CoInfiniteOrEvens,
            "L^1_∃ ⪯ R^1_∃ by inclusion",
            IDENTITY_CLOSURE,
        ),
        "L1_R1_iso_bwd" => draft(
            r_k(1, false),
            l_k(1, false),
            MinusMap::Reindex(Schedule::Arith(2)),
            PlusMap::Identity,
            "R^1_∃ ⪯ L^1_∃ via f ↦ f(2n)",
            "f(2n) keeps periodic streams periodic",
        ),
        "M_forall_from_R" | "M_exists_from_R" => {
            let k = k_of(1, 1)?;
            let forall = id.starts_with("M_forall");
            draft(
                m_eps(Q::from_integer(k as i128), forall),
                r_k(k, forall),
                MinusMap::Identity,
                PlusMap::UnitBlocks,
                format!("M^{k} ⪯ R^{k} via X ↦ ⋃_{{j∈X}} [j, j+1)"),
                "unit blocks of a word are a periodic measurable set",
            )
        }
        "M_forall_to_R" | "M_exists_to_R" => {
            let k = k_of(1, 1)?;
            let forall = id.starts_with("M_forall");
            draft(
                r_k(k, forall),
                m_eps(Q::from_integer(k as i128), forall),
                MinusMap::Identity,
                PlusMap::Greedy(Q::from_integer(2)),
                format!("R^{k} ⪯ M^{k} via greedy points of mass 2"),
                "greedy points of a periodic measurable set form a word",
            )
        }
        "M_scaling_forall" | "M_scaling_exists" => {
            let eps = param_q(raw, "eps", Q::new(1, 2))?;
            let delta = param_q(raw, "delta", Q::new(5, 4))?;
            if eps >= delta {
                return Err(TukeyError::BadParams(format!("{id} needs ε < δ")));
            }
            let b = scaling_factor(eps, delta);
            params.insert("eps".into(), rational_to_string(&eps));
            params.insert("delta".into(), rational_to_string(&delta));
            params.insert("B".into(), b.to_string());
            let forall = id.ends_with("forall");
            draft(
                m_eps(eps, forall),
                m_eps(delta, forall),
                MinusMap::Scale(b),
                PlusMap::Contract(b),
                format!("M^ε ⪯ M^δ via f ↦ {b}·f and x ↦ x/{b}"),
                "scaling keeps periodic streams and measurable sets periodic",
            )
        }
        "id_forall_to_Rk" => {
            let k = k_of(1, 0)?;
            draft(
                r_id(true),
                r_k(k, true),
                MinusMap::Identity,
                PlusMap::Identity,
                format!("R^id_∀ ⪯ R^{k}_∀ by identities on ω^{{>id}} ⊆ ω^{{↑ω}}"),
                IDENTITY_CLOSURE,
            )
        }
        "D_to_id_forall" => draft(
            RelationalSystem {
                domain: systems::Domain::StreamsGtId,
                ..d()
            },
            r_id(true),
            MinusMap::Identity,
            PlusMap::IdMajorant(Schedule::Squares),
            "D ⪯ R^id_∀ via ⟨x_{n²}⟩ ≤* h, on D restricted to ω^{>id}",
            "h is always a program",
        ),
        "id_exists_iso_fwd" => draft(
            r_id(false),
            r_k(0, false),
            MinusMap::Identity,
            PlusMap::Identity,
            "R^id_∃ ⪯ R^0_∃ by identities",
            IDENTITY_CLOSURE,
        ),
        "exists0_to_id_exists" => draft(
            r_k(0, false),
            r_id(false),
            MinusMap::NestedAccelerator,
            PlusMap::Identity,
            "R^0_∃ ⪯ R^id_∃ via h(n+1) = f(h(n)+n+1)",
            "h is always a program",
        ),
        "bd_exists_from_Rk" => {
            let k = k_of(1, 0)?;
            draft(
                r_k(k, false),
                r_bd(false),
                MinusMap::Reindex(Schedule::Squares),
                PlusMap::Identity,
                format!("R^{k}_∃ ⪯ R^bd_∃ via f ↦ f(n²)"),
                "f(n²) is a ramp for linear ramps and a program otherwise",
            )
        }
        "D_to_bd_forall" => draft(
            d(),
            r_bd(true),
            MinusMap::BdForallSpreader,
            PlusMap::Sample(Schedule::Squares),
            "D ⪯ R^bd_∀ via f(n+1) = g(f(n))+n+1 and X ↦ ⟨x_{n²}⟩",
            "both maps produce programs",
        ),
        _ => fact(id, raw, &mut params)?,
    };
    Ok(TukeyConnection {
        id: id.to_string(),
        params,
        source: dr.source,
        target: dr.target,
        map_minus: dr.minus,
        map_plus: dr.plus,
        anchor: dr.anchor,
        closure_note: dr.closure.to_string(),
    })
}

fn fact(
    id: &str,
    raw: &BTreeMap<String, String>,
    params: &mut BTreeMap<String, String>,
) -> Result<Draft, TukeyError> {
    use systems::{l_k, r_bd, r_col, r_k};
    let quant = |params: &mut BTreeMap<String, String>| -> Result<bool, TukeyError> {
        let forall = quant_param(raw)?;
        params.insert(
            "quant".into(),
            if forall { "forall" } else { "exists" }.into(),
        );
        Ok(forall)
    };
    let kl = |params: &mut BTreeMap<String, String>,
              k0: u64,
              l0: u64,
              min: u64|
     -> Result<(u64, u64), TukeyError> {
        let k = param_u64(raw, "k", k0)?;
        let l = param_u64(raw, "l", l0)?;
        if k < min || k >= l {
            return Err(TukeyError::BadParams(format!("{id} needs {min} ≤ k < l")));
        }
        params.insert("k".into(), k.to_string());
        params.insert("l".into(), l.to_string());
        Ok((k, l))
    };
    let k_only =
        |params: &mut BTreeMap<String, String>, k0: u64, min: u64| -> Result<u64, TukeyError> {
            let k = param_u64(raw, "k", k0)?;
            if k < min {
                return Err(TukeyError::BadParams(format!("{id} needs k ≥ {min}")));
            }
            params.insert("k".into(), k.to_string());
            Ok(k)
        };
    let q = |forall: bool| if forall { "∀" } else { "∃" };
    let ident = |source, target, anchor: String| {
        draft(
            source,
            target,
            MinusMap::Identity,
            PlusMap::Identity,
            anchor,
            IDENTITY_CLOSURE,
        )
    };
    Ok(match id {
        "fact_k_le_l" => {
            let forall = quant(params)?;
            let (k, l) = kl(params, 1, 2, 0)?;
            ident(
                r_k(l, forall),
                r_k(k, forall),
                format!("R^{l}_{0} ⪯ R^{k}_{0}", q(forall)),
            )
        }
        "fact_exists_le_forall" => {
            let k = k_only(params, 1, 0)?;
            ident(r_k(k, false), r_k(k, true), format!("R^{k}_∃ ⪯ R^{k}_∀"))
        }
        "fact_col_k_le_l" => {
            let forall = quant(params)?;
            let (k, l) = kl(params, 2, 3, 1)?;
            ident(
                r_col(l, forall),
                r_col(k, forall),
                format!("R^{{col,{l}}}_{0} ⪯ R^{{col,{k}}}_{0}", q(forall)),
            )
        }
        "fact_col_exists_le_forall" => {
            let k = k_only(params, 2, 1)?;
            ident(
                r_col(k, false),
                r_col(k, true),
                format!("R^{{col,{k}}}_∃ ⪯ R^{{col,{k}}}_∀"),
            )
        }
        "fact_L_k_le_l" => {
            let forall = quant(params)?;
            let (k, l) = kl(params, 1, 2, 0)?;
            ident(
                l_k(l, forall),
                l_k(k, forall),
                format!("L^{l}_{0} ⪯ L^{k}_{0}", q(forall)),
            )
        }
        "fact_L_exists_le_forall" => {
            let k = k_only(params, 1, 0)?;
            ident(l_k(k, false), l_k(k, true), format!("L^{k}_∃ ⪯ L^{k}_∀"))
        }
        "R_to_L" => {
            let forall = quant(params)?;
            let k = k_only(params, 1, 0)?;
            let source = RelationalSystem {
                domain: systems::Domain::StreamsGtK(k),
                ..r_k(k, forall)
            };
            ident(
                source,
                l_k(k, forall),
                format!(
                    "R^{k}_{0} ⪯ L^{k}_{0} on streams in ω^ω_{{>{k}}}",
                    q(forall)
                ),
            )
        }
        "bd_below_Rk" => {
            let forall = quant(params)?;
            let k = k_only(params, 1, 0)?;
            ident(
                r_bd(forall),
                r_k(k, forall),
                format!("R^bd_{0} ⪯ R^{k}_{0}", q(forall)),
            )
        }
        _ => return Err(TukeyError::UnknownId(id.to_string())),
    })
}

/// Whether two systems agree as endpoints of a composition.
pub(crate) fn same_system(a: &RelationalSystem, b: &RelationalSystem) -> bool {
    a.id == b.id
        && a.dualized == b.dualized
        && a.params.k == b.params.k
        && (a.params.eps - b.params.eps).is_zero()
}
