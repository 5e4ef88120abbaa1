//! JSON encodings of the finite representations.
//!
//! Streams: `{"kind":"ep","start":0,"prefix":[..],"cycle":[..]}`,
//! `{"kind":"ramp","start":0,"alpha":2,"beta":1}` or
//! `{"kind":"program","id":"squares"}`; composite programs also carry a
//! `"recipe"` object. Sets: `{"kind":"word","prefix":"01","cycle":"10"}` or
//! `{"kind":"range","stream":..}`. Rationals are `"p/q"` strings.

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::kernel::{
    parse_rational, rational_to_string, BlockPattern, EpStream, KernelError, MeasurableSet,
    NamedProgram, OmegaSet, Partition, ProgramStream, RampStream, RatInterval, Recipe, Schedule,
    UpStream, Q,
};
use crate::relations::{Object, ObjectKind};

#[derive(Debug, Error)]
pub enum CodecError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad encoding: {0}")]
    Shape(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

type Result<T> = std::result::Result<T, CodecError>;

fn shape(msg: impl Into<String>) -> CodecError {
    CodecError::Shape(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| shape(format!("missing `{key}`")))
}

fn uint(v: &Value, key: &str) -> Result<u64> {
    field(v, key)?
        .as_u64()
        .ok_or_else(|| shape(format!("`{key}` must be a natural number")))
}

fn uints(v: &Value, key: &str) -> Result<Vec<u64>> {
    match v.get(key) {
        None => Ok(vec![]),
        Some(a) => a
            .as_array()
            .ok_or_else(|| shape(format!("`{key}` must be an array")))?
            .iter()
            .map(|x| {
                x.as_u64()
                    .ok_or_else(|| shape(format!("`{key}` must hold naturals")))
            })
            .collect(),
    }
}

fn text<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    field(v, key)?
        .as_str()
        .ok_or_else(|| shape(format!("`{key}` must be a string")))
}

fn rational(v: &Value) -> Result<Q> {
    match v {
        Value::String(s) => Ok(parse_rational(s)?),
        Value::Number(n) => n
            .as_i64()
            .map(|i| Q::from_integer(i as i128))
            .ok_or_else(|| shape("rationals must be integers or \"p/q\" strings")),
        _ => Err(shape("rationals must be integers or \"p/q\" strings")),
    }
}

fn rat_str(q: &Q) -> Value {
    Value::String(rational_to_string(q))
}

pub fn encode_schedule(s: Schedule) -> Value {
    match s {
        Schedule::Arith(k) => json!({"kind": "arith", "step": k}),
        Schedule::Squares => json!({"kind": "squares"}),
        Schedule::Shift(c) => json!({"kind": "shift", "by": c}),
    }
}

pub fn decode_schedule(v: &Value) -> Result<Schedule> {
    Ok(match text(v, "kind")? {
        "arith" => {
            let step = uint(v, "step")?;
            if step == 0 {
                return Err(shape("arith step must be positive"));
            }
            Schedule::Arith(step)
        }
        "pairs" => Schedule::Arith(2),
        "squares" => Schedule::Squares,
        "shift" => Schedule::Shift(uint(v, "by")?),
        other => return Err(shape(format!("unknown schedule `{other}`"))),
    })
}

pub fn encode_ep(e: &EpStream) -> Value {
    json!({"kind": "ep", "start": e.start(), "prefix": e.prefix(), "cycle": e.cycle()})
}

pub fn encode_stream(f: &UpStream) -> Value {
    match f {
        UpStream::Ep(e) => encode_ep(e),
        UpStream::Ramp(r) => {
            json!({"kind": "ramp", "start": r.start, "alpha": r.alpha, "beta": r.beta})
        }
        UpStream::Program(p) => match p.recipe() {
            Recipe::Named(_) => json!({"kind": "program", "id": p.id()}),
            recipe => json!({"kind": "program", "id": p.id(), "recipe": encode_recipe(recipe)}),
        },
    }
}

fn encode_recipe(r: &Recipe) -> Value {
    match r {
        Recipe::Named(p) => json!({"op": "named", "id": p.id()}),
        Recipe::Compose { outer, schedule } => {
            json!({"op": "compose", "outer": encode_stream(outer), "schedule": encode_schedule(*schedule)})
        }
        Recipe::SampleSet { set, schedule } => {
            json!({"op": "sample", "set": encode_set(set), "schedule": encode_schedule(*schedule)})
        }
        Recipe::Scaled { inner, factor } => {
            json!({"op": "scale", "inner": encode_stream(inner), "factor": factor})
        }
        Recipe::Offset { inner, add } => {
            json!({"op": "offset", "inner": encode_stream(inner), "add": add})
        }
        Recipe::SparseSelector { f, extra } => {
            json!({"op": "sparse_selector", "f": encode_stream(f), "extra": extra})
        }
        Recipe::RecursiveSpreader { h, k } => {
            json!({"op": "recursive_spreader", "h": encode_stream(h), "k": k})
        }
        Recipe::DoubleCountBound { set, k } => {
            json!({"op": "double_count_bound", "set": encode_set(set), "k": k})
        }
        Recipe::IdMajorant { set, schedule } => {
            json!({"op": "id_majorant", "set": encode_set(set), "schedule": encode_schedule(*schedule)})
        }
        Recipe::NestedAccelerator { f, offset } => {
            json!({"op": "nested_accelerator", "f": encode_stream(f), "offset": offset})
        }
        Recipe::BdForallSpreader { g } => {
            json!({"op": "bd_forall_spreader", "g": encode_stream(g)})
        }
    }
}

fn decode_recipe(v: &Value) -> Result<Recipe> {
    let s = |key| decode_stream(field(v, key)?);
    Ok(match text(v, "op")? {
        "named" => Recipe::Named(named(text(v, "id")?)?),
        "compose" => Recipe::Compose {
            outer: s("outer")?,
            schedule: decode_schedule(field(v, "schedule")?)?,
        },
        "sample" => Recipe::SampleSet {
            set: decode_set(field(v, "set")?)?,
            schedule: decode_schedule(field(v, "schedule")?)?,
        },
        "scale" => Recipe::Scaled {
            inner: s("inner")?,
            factor: uint(v, "factor")?.max(1),
        },
        "offset" => Recipe::Offset {
            inner: s("inner")?,
            add: uint(v, "add")?,
        },
        "sparse_selector" => Recipe::SparseSelector {
            f: s("f")?,
            extra: uint(v, "extra")?,
        },
        "recursive_spreader" => Recipe::RecursiveSpreader {
            h: s("h")?,
            k: uint(v, "k")?,
        },
        "double_count_bound" => Recipe::DoubleCountBound {
            set: decode_set(field(v, "set")?)?,
            k: uint(v, "k")?,
        },
        "id_majorant" => Recipe::IdMajorant {
            set: decode_set(field(v, "set")?)?,
            schedule: decode_schedule(field(v, "schedule")?)?,
        },
        "nested_accelerator" => Recipe::NestedAccelerator {
            f: s("f")?,
            offset: uint(v, "offset")?,
        },
        "bd_forall_spreader" => Recipe::BdForallSpreader { g: s("g")? },
        other => return Err(shape(format!("unknown recipe `{other}`"))),
    })
}

fn named(id: &str) -> Result<NamedProgram> {
    NamedProgram::from_id(id).ok_or_else(|| shape(format!("unknown program `{id}`")))
}

pub fn decode_ep(v: &Value) -> Result<EpStream> {
    Ok(EpStream::new(
        uint(v, "start")?,
        uints(v, "prefix")?,
        uints(v, "cycle")?,
    )?)
}

pub fn decode_stream(v: &Value) -> Result<UpStream> {
    Ok(match text(v, "kind")? {
        "ep" => UpStream::Ep(decode_ep(v)?),
        "ramp" => UpStream::Ramp(RampStream::new(
            uint(v, "start")?,
            uint(v, "alpha")?,
            uint(v, "beta")?,
        )?),
        "program" => match v.get("recipe") {
            Some(r) => ProgramStream::new(decode_recipe(r)?).into(),
            None => ProgramStream::named(named(text(v, "id")?)?).into(),
        },
        other => return Err(shape(format!("unknown stream kind `{other}`"))),
    })
}

pub fn encode_set(x: &OmegaSet) -> Value {
    match x {
        OmegaSet::Word { .. } => {
            let (p, c) = x.word_strings().expect("words have strings");
            json!({"kind": "word", "prefix": p, "cycle": c})
        }
        OmegaSet::Range(f) => json!({"kind": "range", "stream": encode_stream(f)}),
    }
}

pub fn decode_set(v: &Value) -> Result<OmegaSet> {
    Ok(match text(v, "kind")? {
        "word" => OmegaSet::word_from_str(
            v.get("prefix").and_then(Value::as_str).unwrap_or(""),
            text(v, "cycle")?,
        )?,
        "range" => OmegaSet::range(decode_stream(field(v, "stream")?)?),
        other => return Err(shape(format!("unknown set kind `{other}`"))),
    })
}

pub fn encode_partition(p: &Partition) -> Value {
    let pattern = match p.pattern() {
        BlockPattern::Single => json!("single"),
        BlockPattern::Windows { prefix, cycle } => json!({"prefix": prefix, "cycle": cycle}),
    };
    json!({"boundaries": encode_ep(p.boundaries()), "pattern": pattern, "merge_prefix": p.merge_prefix()})
}

fn labels(v: &Value, key: &str) -> Result<Vec<Vec<u32>>> {
    match v.get(key) {
        None => Ok(vec![]),
        Some(a) => serde_json::from_value(a.clone())
            .map_err(|_| shape(format!("`{key}` must be a list of label lists"))),
    }
}

pub fn decode_partition(v: &Value) -> Result<Partition> {
    let boundaries = decode_ep(field(v, "boundaries")?)?;
    let pattern = match v.get("pattern") {
        None => BlockPattern::Single,
        Some(Value::String(s)) if s == "single" => BlockPattern::Single,
        Some(p @ Value::Object(_)) => BlockPattern::Windows {
            prefix: labels(p, "prefix")?,
            cycle: labels(p, "cycle")?,
        },
        Some(_) => return Err(shape("`pattern` must be \"single\" or an object")),
    };
    let merge = v.get("merge_prefix").and_then(Value::as_u64).unwrap_or(0);
    Ok(Partition::new(boundaries, pattern, merge)?)
}

fn encode_intervals(iv: &[RatInterval]) -> Value {
    Value::Array(
        iv.iter()
            .map(|i| json!([rat_str(&i.lo), rat_str(&i.hi)]))
            .collect(),
    )
}

fn decode_intervals(v: &Value, key: &str) -> Result<Vec<RatInterval>> {
    let Some(a) = v.get(key) else {
        return Ok(vec![]);
    };
    a.as_array()
        .ok_or_else(|| shape(format!("`{key}` must be an array")))?
        .iter()
        .map(|pair| match pair.as_array().map(Vec::as_slice) {
            Some([lo, hi]) => Ok(RatInterval::new(rational(lo)?, rational(hi)?)?),
            _ => Err(shape(format!("`{key}` entries must be [lo, hi] pairs"))),
        })
        .collect()
}

pub fn encode_measure(y: &MeasurableSet) -> Value {
    json!({
        "prefix": encode_intervals(y.prefix()),
        "motif": encode_intervals(y.motif()),
        "p0": rat_str(&y.p0()),
        "L": rat_str(&y.period()),
    })
}

pub fn decode_measure(v: &Value) -> Result<MeasurableSet> {
    let p0 = v
        .get("p0")
        .map(rational)
        .transpose()?
        .unwrap_or_else(|| Q::from_integer(0));
    Ok(MeasurableSet::new(
        decode_intervals(v, "prefix")?,
        decode_intervals(v, "motif")?,
        p0,
        rational(field(v, "L")?)?,
    )?)
}

pub fn encode_object(o: &Object) -> Value {
    match o {
        Object::Stream(f) => encode_stream(f),
        Object::Set(x) => encode_set(x),
        Object::Partition(p) => encode_partition(p),
        Object::Measure(y) => encode_measure(y),
    }
}

/// Decodes an object of the expected kind.
pub fn decode_object(v: &Value, kind: ObjectKind) -> Result<Object> {
    Ok(match kind {
        ObjectKind::Stream => Object::Stream(decode_stream(v)?),
        ObjectKind::Set => Object::Set(decode_set(v)?),
        ObjectKind::Partition => Object::Partition(decode_partition(v)?),
        ObjectKind::Measure => Object::Measure(decode_measure(v)?),
    })
}

/// Guesses the kind from the shape of the JSON.
pub fn infer_kind(v: &Value) -> Result<ObjectKind> {
    if v.get("boundaries").is_some() {
        return Ok(ObjectKind::Partition);
    }
    if v.get("motif").is_some() {
        return Ok(ObjectKind::Measure);
    }
    match v.get("kind").and_then(Value::as_str) {
        Some("ep" | "ramp" | "program") => Ok(ObjectKind::Stream),
        Some("word" | "range") => Ok(ObjectKind::Set),
        _ => Err(shape("cannot tell what kind of object this is")),
    }
}

pub fn parse_object(text: &str, kind: Option<ObjectKind>) -> Result<Object> {
    let v: Value = serde_json::from_str(text)?;
    let kind = match kind {
        Some(k) => k,
        None => infer_kind(&v)?,
    };
    decode_object(&v, kind)
}

/// Keeps insertion order out of the picture for reports.
pub fn sorted(v: Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut keys: Vec<_> = m.into_iter().collect();
            keys.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Object(
                keys.into_iter()
                    .map(|(k, v)| (k, sorted(v)))
                    .collect::<Map<_, _>>(),
            )
        }
        Value::Array(a) => Value::Array(a.into_iter().map(sorted).collect()),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tukey::{bd_forall_spreader, interval_partition_of};

    fn round_trip(o: Object) {
        let v = encode_object(&o);
        let back = decode_object(&v, o.kind()).unwrap();
        assert_eq!(encode_object(&back), v);
        assert_eq!(infer_kind(&v).unwrap(), o.kind());
    }

    #[test]
    fn round_trips() {
        round_trip(Object::Stream(
            UpStream::ep(1, vec![2], vec![1, 3]).unwrap(),
        ));
        round_trip(Object::Stream(UpStream::ramp(0, 2, 1).unwrap()));
        round_trip(Object::Stream(
            ProgramStream::named(NamedProgram::Pow2).into(),
        ));
        round_trip(Object::Stream(bd_forall_spreader(&UpStream::identity())));
        round_trip(Object::Set(OmegaSet::word_from_str("01", "10").unwrap()));
        round_trip(Object::Set(OmegaSet::range(
            UpStream::ramp(0, 2, 1).unwrap(),
        )));
        let g = UpStream::ep(3, vec![], vec![2]).unwrap();
        round_trip(Object::Partition(interval_partition_of(&g, true).unwrap()));
        round_trip(Object::Measure(MeasurableSet::full_line()));
    }

    #[test]
    fn canonical_shapes() {
        let v = encode_stream(&UpStream::ep(0, vec![], vec![2]).unwrap());
        assert_eq!(v, json!({"kind":"ep","start":0,"prefix":[],"cycle":[2]}));
        let m = parse_object(
            r#"{"prefix":[["0","1/2"]],"motif":[["0","1"]],"p0":"1","L":"2"}"#,
            None,
        )
        .unwrap();
        assert_eq!(m.kind(), ObjectKind::Measure);
        assert!(parse_object("{", None).is_err());
        assert!(parse_object(r#"{"kind":"ep","start":0,"cycle":[0]}"#, None).is_err());
    }
}
