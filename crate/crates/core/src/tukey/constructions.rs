//! The maps used by the connections.
//!
//! Each construction stays eventually periodic when it can be computed exactly
//! in that form and falls back to a memoized program stream otherwise.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::kernel::{
    EpStream, KernelError, MeasurableSet, OmegaSet, Partition, ProgramStream, RampStream,
    RatInterval, Recipe, Result, Schedule, UpStream, Q,
};

/// Increasing enumeration of an eventually periodic set.
pub fn enumeration_stream(x: &OmegaSet) -> Result<Option<EpStream>> {
    let OmegaSet::Word { prefix, cycle } = x.normalized() else {
        return Ok(None);
    };
    let plen = prefix.len() as u64;
    let l = cycle.len() as u64;
    let ones: Vec<u64> = (0..l).filter(|&i| cycle[i as usize]).collect();
    let mut elements: Vec<u64> = (0..plen).filter(|&i| prefix[i as usize]).collect();
    let head = elements.len();
    elements.extend(ones.iter().map(|o| plen + o));
    let diffs: Vec<u64> = elements.windows(2).map(|w| w[1] - w[0]).collect();
    let mut cyc: Vec<u64> = diffs[head..].to_vec();
    cyc.push(l + ones[0] - ones[ones.len() - 1]);
    EpStream::new(elements[0], diffs[..head].to_vec(), cyc).map(Some)
}

/// `n ↦ x_{σ(n)}`.
pub fn sample_enumeration(x: &OmegaSet, schedule: Schedule) -> Result<UpStream> {
    if let Some(e) = enumeration_stream(x)? {
        return reindex_stream(&UpStream::Ep(e), schedule);
    }
    match x {
        OmegaSet::Range(f) => reindex_stream(f, schedule),
        OmegaSet::Word { .. } => unreachable!("words always enumerate periodically"),
    }
}

/// `n ↦ f(σ(n))`.
pub fn reindex_stream(f: &UpStream, schedule: Schedule) -> Result<UpStream> {
    match (f, schedule) {
        (UpStream::Ep(e), Schedule::Arith(s)) => e.reindex_affine(s, 0).map(UpStream::Ep),
        (UpStream::Ep(e), Schedule::Shift(c)) => e.reindex_affine(1, c).map(UpStream::Ep),
        (UpStream::Ramp(r), Schedule::Arith(s)) => {
            let alpha = r.alpha.checked_mul(s * s);
            let beta = r.eval(s)? - r.start;
            let alpha = alpha.ok_or_else(|| KernelError::Overflow("reindex".into()))?;
            RampStream::new(r.start, alpha, beta).map(UpStream::Ramp)
        }
        (UpStream::Ramp(r), Schedule::Shift(c)) => {
            RampStream::new(r.eval(c)?, r.alpha, r.diff(c)?).map(UpStream::Ramp)
        }
        _ if schedule == Schedule::Arith(1) || schedule == Schedule::Shift(0) => Ok(f.clone()),
        _ => Ok(ProgramStream::new(Recipe::Compose {
            outer: f.clone(),
            schedule,
        })
        .into()),
    }
}

/// `b[ω]`.
pub fn range_set(b: &UpStream) -> OmegaSet {
    OmegaSet::range(b.clone()).normalized()
}

/// `n ↦ factor · f(n)`.
pub fn scale_values(f: &UpStream, factor: u64) -> Result<UpStream> {
    if factor == 0 {
        return Err(KernelError::MalformedSpec(
            "scale factor must be at least 1".into(),
        ));
    }
    match f {
        UpStream::Ep(e) => e.scaled(factor).map(UpStream::Ep),
        UpStream::Ramp(r) => {
            let m = |v: u64| {
                v.checked_mul(factor)
                    .ok_or_else(|| KernelError::Overflow("scale".into()))
            };
            RampStream::new(m(r.start)?, m(r.alpha)?, m(r.beta)?).map(UpStream::Ramp)
        }
        UpStream::Program(_) => Ok(ProgramStream::new(Recipe::Scaled {
            inner: f.clone(),
            factor,
        })
        .into()),
    }
}

/// `x ↦ x / factor` applied to the set.
pub fn contract_set(y: &MeasurableSet, factor: u64) -> Result<MeasurableSet> {
    if factor == 0 {
        return Err(KernelError::MalformedSpec(
            "contraction factor must be at least 1".into(),
        ));
    }
    Ok(y.contract(factor))
}

/// The partition into the intervals `[g(i), g(i+1))`, with `[0, g(0))` as an
/// extra first block when `g(0) > 0`. `merge_first` fuses everything below
/// `g(1)` into one block.
pub fn interval_partition_of(g: &UpStream, merge_first: bool) -> Result<Partition> {
    let e = g.as_ep().ok_or_else(|| {
        KernelError::FragmentUnsupported("interval partitions need a periodic boundary".into())
    })?;
    let (boundaries, lead) = if e.start() == 0 {
        (e.clone(), 0)
    } else {
        let mut prefix = vec![e.start()];
        prefix.extend_from_slice(e.prefix());
        (EpStream::new(0, prefix, e.cycle().to_vec())?, 1)
    };
    let merge = if merge_first && lead == 1 { 2 } else { 0 };
    Partition::new(boundaries, crate::kernel::BlockPattern::Single, merge)
}

/// `{min B : B ∈ P}`.
pub fn minima_set(p: &Partition) -> Result<OmegaSet> {
    p.minima()
}

/// `f'(0) = 0`, `f'(n+1) = f(f'(n)) + 2`.
pub fn sparse_selector(f: &UpStream) -> Result<UpStream> {
    sparse_selector_with(f, 2)
}

pub(crate) fn sparse_selector_with(f: &UpStream, extra: u64) -> Result<UpStream> {
    if let Some(e) = f.as_ep() {
        if let Some(c) = e.unit_slope_offset() {
            // once f'(n) passes f's prefix, f'(n+1) = f'(n) + c + extra
            let plen = e.prefix().len() as u64;
            let mut values = vec![0u64];
            while *values.last().unwrap() < plen {
                let v = *values.last().unwrap();
                values.push(e.eval(v)? + extra);
            }
            let diffs: Vec<u64> = values.windows(2).map(|w| w[1] - w[0]).collect();
            return EpStream::new(0, diffs, vec![c as u64 + extra]).map(UpStream::Ep);
        }
    }
    Ok(ProgramStream::new(Recipe::SparseSelector {
        f: f.clone(),
        extra,
    })
    .into())
}

/// `g_X(n) = max(f_X(n), g_X(n−1) + 1)` with
/// `f_X(n) = min{m > n : |[n,m) ∩ X| > 2k}`.
pub fn double_count_bound(x: &OmegaSet, k: u64) -> Result<UpStream> {
    if let Some((plen, l, _)) = x.word_shape() {
        // f_X(n) − n is periodic past the prefix, so g_X(n) − n settles
        // within one period
        let x = x.normalized();
        let settle = plen + l + 1;
        let mut values = Vec::with_capacity(settle as usize + 1);
        for n in 0..=settle {
            let f = crate::kernel::double_count_point(&x, n, k)?;
            let g = match values.last() {
                None => f,
                Some(&prev) => f.max(prev + 1),
            };
            values.push(g);
        }
        let diffs: Vec<u64> = values.windows(2).map(|w| w[1] - w[0]).collect();
        return EpStream::new(values[0], diffs, vec![1]).map(UpStream::Ep);
    }
    Ok(ProgramStream::new(Recipe::DoubleCountBound { set: x.clone(), k }).into())
}

/// `h'(0) = 0`, `h'(n+1) = k + 1 + h'(n) + h(h'(n))`.
pub fn recursive_spreader(h: &UpStream, k: u64) -> UpStream {
    ProgramStream::new(Recipe::RecursiveSpreader { h: h.clone(), k }).into()
}

/// `⋃_{j ∈ X} [j, j+1)`.
pub fn unit_blocks(x: &OmegaSet) -> Result<MeasurableSet> {
    let OmegaSet::Word { prefix, cycle } = x.normalized() else {
        return Err(KernelError::FragmentUnsupported(
            "unit blocks need a periodic set".into(),
        ));
    };
    let blocks = |bits: &[bool]| -> Vec<RatInterval> {
        bits.iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(j, _)| RatInterval {
                lo: Q::from_integer(j as i128),
                hi: Q::from_integer(j as i128 + 1),
            })
            .collect()
    };
    MeasurableSet::new(
        blocks(&prefix),
        blocks(&cycle),
        Q::from_integer(prefix.len() as i128),
        Q::from_integer(cycle.len() as i128),
    )
}

/// `y_0 = 0`, `y_j = min{m : μ([y_{j−1}, m) ∩ Y) ≥ 2}`.
pub fn greedy_mass_points(y: &MeasurableSet) -> Result<OmegaSet> {
    greedy_mass_points_with(y, Q::from_integer(2))
}

pub(crate) fn greedy_mass_points_with(y: &MeasurableSet, need: Q) -> Result<OmegaSet> {
    if need <= Q::zero() {
        return Err(KernelError::MalformedSpec(
            "mass threshold must be positive".into(),
        ));
    }
    let settle = crate::kernel::ceil_u64(&y.p0());
    let m = *y.period().numer() as u64;
    let mut points = vec![0u64];
    let mut seen = std::collections::HashMap::new();
    loop {
        let cur = *points.last().unwrap();
        if cur >= settle {
            if let Some(&first) = seen.get(&(cur % m)) {
                let diffs: Vec<u64> = points.windows(2).map(|w| w[1] - w[0]).collect();
                let (head, cyc) = diffs.split_at(first);
                let f = EpStream::new(0, head.to_vec(), cyc.to_vec())?;
                return Ok(range_set(&UpStream::Ep(f)));
            }
            seen.insert(cur % m, points.len() - 1);
        }
        let start = Q::from_integer(cur as i128);
        let mut next = cur + 1;
        while y.measure_in(&start, &Q::from_integer(next as i128)) < need {
            next += 1;
        }
        points.push(next);
    }
}

/// `h(0) = x_0`, `h(n) = max(x_{n²}, h(n−1) + n + 1)`.
pub fn id_majorant(x: &OmegaSet) -> UpStream {
    id_majorant_with(x, Schedule::Squares)
}

pub(crate) fn id_majorant_with(x: &OmegaSet, schedule: Schedule) -> UpStream {
    ProgramStream::new(Recipe::IdMajorant {
        set: x.normalized(),
        schedule,
    })
    .into()
}

/// `h(0) = 0`, `h(n+1) = f(h(n) + n + 1)`.
pub fn nested_accelerator(f: &UpStream) -> UpStream {
    ProgramStream::new(Recipe::NestedAccelerator {
        f: f.clone(),
        offset: 1,
    })
    .into()
}

/// `f(0) = g(0)`, `f(n+1) = g(f(n)) + n + 1`.
pub fn bd_forall_spreader(g: &UpStream) -> UpStream {
    ProgramStream::new(Recipe::BdForallSpreader { g: g.clone() }).into()
}

/// `f(n) = 2n`, `g(n) = 2n + 1`.
pub fn canonical_interleaved_pair() -> (UpStream, UpStream) {
    (
        UpStream::ep(0, vec![], vec![2]).expect("valid"),
        UpStream::ep(1, vec![], vec![2]).expect("valid"),
    )
}

/// A random periodic pair with `f(n) < g(n) < f(n+1) < g(n+1)` for all `n`.
pub fn interleaved_pair(seed: u64) -> (UpStream, UpStream) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = rng.gen_range(1..=3);
    let a: Vec<u64> = (0..len).map(|_| rng.gen_range(1..=3)).collect();
    let b: Vec<u64> = (0..len).map(|_| rng.gen_range(1..=3)).collect();
    let start = rng.gen_range(0..=2);
    let f_cycle: Vec<u64> = (0..len).map(|i| a[i] + b[i]).collect();
    let g_cycle: Vec<u64> = (0..len).map(|i| b[i] + a[(i + 1) % len]).collect();
    (
        UpStream::ep(start, vec![], f_cycle).expect("positive differences"),
        UpStream::ep(start + a[0], vec![], g_cycle).expect("positive differences"),
    )
}
