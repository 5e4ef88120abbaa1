use std::fs;
use std::path::Path;

use interval_tukey::codec::{encode_object, parse_object};
use interval_tukey::harness::gen::{random_ep, random_measure, random_word, rng_for, Sizes};
use interval_tukey::harness::search::search_counterexample;
use interval_tukey::harness::suite::{run_suite, SuitePolicy, SuiteReport};
use interval_tukey::kernel::{
    colored_count_profile, interval_count_profile, measure_profile, parse_rational,
    rational_to_string, CountProfile,
};
use interval_tukey::relations::{
    domain_warning, evaluate, Object, ObjectKind, Quant, RelParams, RelationId,
};
use interval_tukey::tukey::{
    canonical_interleaved_pair, connection_from_spec, list_connections, list_systems,
    standard_mutant, CheckPolicy, TukeyConnection,
};
use serde_json::{json, Value};
use thiserror::Error;

use crate::args::{CheckRel, DemoId, Format, ProfileArgs, QuantArg, Verify};

// a closed pipe (`itl list | head`) is not worth a panic
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

macro_rules! outr {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

/// `@path` reads a file; anything else is the JSON itself.
fn read_arg(text: &str) -> Result<String, CliError> {
    match text.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}"))),
        None => Ok(text.to_string()),
    }
}

fn object(text: &str, kind: Option<ObjectKind>) -> Result<Object, CliError> {
    parse_object(&read_arg(text)?, kind).map_err(input)
}

fn print_json(v: &Value) {
    out!("{}", serde_json::to_string_pretty(v).expect("plain data"));
}

pub fn list(format: Format) -> Result<i32, CliError> {
    let systems: Vec<Value> = list_systems()
        .iter()
        .map(|s| {
            json!({"id": s.id, "relation": s.relation.as_str(), "domain": s.domain.describe(),
                   "codomain": s.codomain.describe(), "dualized": s.dualized, "metadata": s.metadata})
        })
        .collect();
    let conns: Vec<Value> = list_connections()
        .iter()
        .map(|c| {
            json!({"id": c.label(), "source": c.source.id, "target": c.target.id,
                   "minus": c.map_minus.describe(), "plus": c.map_plus.describe(), "anchor": c.anchor})
        })
        .collect();
    match format {
        Format::Json => print_json(&json!({"systems": systems, "connections": conns})),
        Format::Csv => {
            out!("kind,id,source,target");
            for s in list_systems() {
                out!("system,\"{}\",,", s.id);
            }
            for c in list_connections() {
                out!(
                    "connection,\"{}\",\"{}\",\"{}\"",
                    c.label(),
                    c.source.id,
                    c.target.id
                );
            }
        }
        Format::Text => {
            out!("systems:");
            for s in list_systems() {
                out!("  {:32} {}", s.id, s.metadata);
            }
            out!("connections:");
            for c in list_connections() {
                out!("  {:45} {} -> {}", c.label(), c.source.id, c.target.id);
            }
        }
    }
    Ok(0)
}

pub fn check_rel(a: &CheckRel) -> Result<i32, CliError> {
    let rel: RelationId = a.rel.parse().map_err(input)?;
    let lhs = object(&a.lhs, Some(ObjectKind::Stream))?;
    let rhs = object(&a.rhs, Some(rel.rhs_kind()))?;
    let mut params = RelParams {
        horizon: a.horizon,
        ..RelParams::default()
    };
    if let Some(k) = a.k {
        params.k = k;
    }
    if let Some(eps) = &a.eps {
        params.eps = parse_rational(eps).map_err(input)?;
    }
    if let Some(q) = a.quant {
        params.quant = match q {
            QuantArg::Forall => Quant::Forall,
            QuantArg::Exists => Quant::Exists,
        };
    }
    let f = lhs.as_stream().expect("decoded as a stream");
    if let Some(w) = domain_warning(rel, f, params.k) {
        eprintln!("warning: {w}");
    }
    let v = evaluate(rel, &lhs, &rhs, &params).map_err(input)?;
    print_json(&json!({"relation": rel.as_str(), "verdict": v.to_json()}));
    Ok(0)
}

fn profile_json<V: Clone + PartialEq>(
    p: &CountProfile<V>,
    n: u64,
    show: impl Fn(&V) -> Value,
) -> Value {
    json!({
        "transient": p.transient(),
        "period": p.period(),
        "head": p.head.iter().map(&show).collect::<Vec<_>>(),
        "cycle": p.cycle.iter().map(&show).collect::<Vec<_>>(),
        "values": p.values_to(n).iter().map(&show).collect::<Vec<_>>(),
    })
}

pub fn profile(a: &ProfileArgs) -> Result<i32, CliError> {
    let f = object(&a.f, Some(ObjectKind::Stream))?;
    let f = f.as_stream().expect("decoded as a stream");
    let out = match object(&a.x, None)? {
        Object::Set(x) => profile_json(&interval_count_profile(f, &x).map_err(input)?, a.n, |c| {
            json!(c)
        }),
        Object::Partition(p) => {
            profile_json(&colored_count_profile(f, &p).map_err(input)?, a.n, |c| {
                json!(c)
            })
        }
        Object::Measure(y) => profile_json(&measure_profile(f, &y).map_err(input)?, a.n, |q| {
            json!(rational_to_string(q))
        }),
        Object::Stream(_) => {
            return Err(CliError::Input(
                "profiles need a set, partition or measure".into(),
            ))
        }
    };
    print_json(&out);
    Ok(0)
}

/// Writes next to the destination, then renames over it.
fn write_atomic(path: &Path, text: &str) -> Result<(), CliError> {
    let io = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    fs::write(&tmp, text).map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}

fn csv(reports: &[SuiteReport]) -> String {
    let mut out = String::from(SuiteReport::CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

fn totals(reports: &[SuiteReport]) -> Value {
    let sum = |f: fn(&SuiteReport) -> u64| reports.iter().map(f).sum::<u64>();
    json!({
        "connections": reports.len(),
        "trials": sum(|r| r.trials),
        "pass": sum(|r| r.pass),
        "evidence": sum(|r| r.evidence),
        "vacuous": sum(|r| r.vacuous),
        "fail": sum(|r| r.fail),
        "inconclusive": sum(|r| r.inconclusive),
    })
}

pub fn verify(a: &Verify) -> Result<i32, CliError> {
    if a.trials == 0 || a.horizon == 0 {
        return Err(CliError::Input(
            "--trials and --horizon must be positive".into(),
        ));
    }
    let conns: Vec<TukeyConnection> = match &a.lemma {
        Some(id) => vec![connection_from_spec(id).map_err(input)?],
        None => list_connections(),
    };
    let policy = SuitePolicy {
        check: CheckPolicy {
            horizon: a.horizon,
            evidence: a.evidence,
        },
        ..SuitePolicy::default()
    };
    let mut reports = Vec::new();
    for c in &conns {
        let c = if a.mutant {
            standard_mutant(c)
                .ok_or_else(|| CliError::Input(format!("no mutant for {}", c.label())))?
        } else {
            c.clone()
        };
        reports.push(run_suite(&c, a.trials, a.seed, policy).map_err(input)?);
    }
    let body = if a.lemma.is_some() {
        reports[0].to_json()
    } else {
        json!({"seed": a.seed, "trials": a.trials, "mutant": a.mutant, "totals": totals(&reports),
               "reports": reports.iter().map(SuiteReport::to_json).collect::<Vec<_>>()})
    };
    let from_ext = a
        .report
        .as_ref()
        .and_then(|p| p.extension())
        .is_some_and(|e| e == "csv");
    let format = a.format.unwrap_or(if from_ext {
        Format::Csv
    } else if a.report.is_some() {
        Format::Json
    } else {
        Format::Text
    });
    let rendered = match format {
        Format::Csv => csv(&reports),
        _ => serde_json::to_string_pretty(&body).expect("plain data") + "\n",
    };
    match &a.report {
        Some(path) => write_atomic(path, &rendered)?,
        None if format != Format::Text => outr!("{rendered}"),
        None => {}
    }
    if a.report.is_some() || format == Format::Text {
        for r in &reports {
            out!(
                "{:48} pass {:5} evidence {:4} vacuous {:5} fail {:4} inconclusive {:4}",
                r.lemma,
                r.pass,
                r.evidence,
                r.vacuous,
                r.fail,
                r.inconclusive
            );
        }
    }
    // mutants are expected to fail; a silent one is the surprise
    let bad = if a.mutant {
        reports.iter().any(|r| r.fail == 0)
    } else {
        reports.iter().any(|r| r.fail > 0)
    };
    Ok(if bad { 1 } else { 0 })
}

pub fn demo(id: DemoId, seed: u64, budget: u64) -> Result<i32, CliError> {
    let out = match id {
        DemoId::Forall0 => {
            let mut rng = rng_for(seed);
            let params = RelParams {
                k: 0,
                ..RelParams::default()
            };
            let mut false_count = 0;
            for _ in 0..budget {
                let f = Object::Stream(
                    random_ep(&mut rng, Sizes::default(), 1)
                        .map_err(input)?
                        .into(),
                );
                let x = Object::Set(random_word(&mut rng, Sizes::default(), false).map_err(input)?);
                false_count += evaluate(RelationId::ForallK, &f, &x, &params)
                    .map_err(input)?
                    .is_false() as u64;
            }
            let search = search_counterexample("forall0_holds", budget, seed).map_err(input)?;
            json!({"demo": "forall0", "pairs": budget, "false": false_count, "search": search})
        }
        DemoId::Col1Pair => {
            let (f, g) = canonical_interleaved_pair();
            let search = search_counterexample("both_col1", budget, seed).map_err(input)?;
            json!({"demo": "col1_pair", "f": encode_object(&Object::Stream(f)),
                   "g": encode_object(&Object::Stream(g)), "search": search})
        }
        DemoId::MeasureSumDegenerate => {
            let mut rng = rng_for(seed);
            let mut false_count = 0;
            for _ in 0..budget {
                let f = Object::Stream(
                    random_ep(&mut rng, Sizes::default(), 1)
                        .map_err(input)?
                        .into(),
                );
                let y = Object::Measure(random_measure(&mut rng, Sizes::default()).map_err(input)?);
                let v = evaluate(RelationId::MeasureSum, &f, &y, &RelParams::default())
                    .map_err(input)?;
                false_count += v.is_false() as u64;
            }
            json!({"demo": "measure_sum_degenerate", "instances": budget, "false": false_count})
        }
    };
    print_json(&out);
    let expected = match id {
        DemoId::Col1Pair => out["search"]["result"] == "exhausted",
        DemoId::Forall0 => out["false"] == budget && out["search"]["result"] == "exhausted",
        DemoId::MeasureSumDegenerate => out["false"] == budget,
    };
    Ok(if expected { 0 } else { 1 })
}
