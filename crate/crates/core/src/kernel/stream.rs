//! Strictly increasing functions ω → ω.

use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use super::growth::{Bound, Growth};
use super::rational::q_int;
use super::set::OmegaSet;
use super::{overflow, KernelError, Result, Q};

/// Evaluation budget for program streams.
pub const DEFAULT_STEP_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl Tri {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Tri::Yes
    }
}

/// Eventually periodic difference stream: `f(0) = start`, then the prefix
/// differences, then the cycle differences repeated forever.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EpStream {
    start: u64,
    prefix: Vec<u64>,
    cycle: Vec<u64>,
    prefix_sums: Vec<u64>,
    cycle_sums: Vec<u64>,
}

impl EpStream {
    pub fn new(start: u64, prefix: Vec<u64>, cycle: Vec<u64>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(KernelError::MalformedSpec("empty difference cycle".into()));
        }
        if prefix.iter().chain(&cycle).any(|&d| d == 0) {
            return Err(KernelError::MalformedSpec(
                "zero difference breaks strict increase".into(),
            ));
        }
        let prefix_sums = partial_sums(&prefix)?;
        let cycle_sums = partial_sums(&cycle)?;
        Ok(EpStream {
            start,
            prefix,
            cycle,
            prefix_sums,
            cycle_sums,
        })
    }

    /// `n ↦ step·n + start`.
    pub fn arithmetic(start: u64, step: u64) -> Result<Self> {
        EpStream::new(start, vec![], vec![step])
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn prefix(&self) -> &[u64] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[u64] {
        &self.cycle
    }

    pub fn cycle_sum(&self) -> u64 {
        *self.cycle_sums.last().unwrap()
    }

    pub fn max_diff(&self) -> u64 {
        self.prefix
            .iter()
            .chain(&self.cycle)
            .copied()
            .max()
            .unwrap()
    }

    pub fn min_diff(&self) -> u64 {
        self.prefix
            .iter()
            .chain(&self.cycle)
            .copied()
            .min()
            .unwrap()
    }

    pub fn eventual_max_diff(&self) -> u64 {
        self.cycle.iter().copied().max().unwrap()
    }

    /// Average cycle difference.
    pub fn slope(&self) -> Q {
        Q::new(self.cycle_sum() as i128, self.cycle.len() as i128)
    }

    /// `Some(c)` when eventually `f(m) = m + c`.
    pub fn unit_slope_offset(&self) -> Option<i128> {
        if self.cycle.iter().all(|&d| d == 1) {
            let p = self.prefix.len() as u64;
            Some(self.start as i128 + self.prefix_sums[self.prefix.len()] as i128 - p as i128)
        } else {
            None
        }
    }

    pub fn diff(&self, n: u64) -> u64 {
        let p = self.prefix.len() as u64;
        if n < p {
            self.prefix[n as usize]
        } else {
            self.cycle[((n - p) % self.cycle.len() as u64) as usize]
        }
    }

    /// Position in the difference cycle, once the prefix is exhausted.
    pub fn phase(&self, n: u64) -> Option<usize> {
        let p = self.prefix.len() as u64;
        (n >= p).then(|| ((n - p) % self.cycle.len() as u64) as usize)
    }

    pub fn eval(&self, n: u64) -> Result<u64> {
        let p = self.prefix.len() as u64;
        if n < p {
            return self
                .start
                .checked_add(self.prefix_sums[n as usize])
                .ok_or_else(|| overflow("ep stream"));
        }
        let c = self.cycle.len() as u64;
        let m = n - p;
        let full = (m / c)
            .checked_mul(self.cycle_sum())
            .ok_or_else(|| overflow("ep stream"))?;
        self.start
            .checked_add(self.prefix_sums[p as usize])
            .and_then(|v| v.checked_add(full))
            .and_then(|v| v.checked_add(self.cycle_sums[(m % c) as usize]))
            .ok_or_else(|| overflow("ep stream"))
    }

    /// Number of indices `n` with `f(n) < v`.
    pub fn index_below(&self, v: u64) -> u64 {
        if v <= self.start {
            return 0;
        }
        let t = v - self.start;
        let p = self.prefix.len();
        if t <= self.prefix_sums[p] {
            return self.prefix_sums.partition_point(|&s| s < t) as u64;
        }
        let t = t - self.prefix_sums[p];
        let cs = self.cycle_sum();
        let q0 = (t - 1) / cs;
        let rest = t - q0 * cs;
        let within = self.cycle_sums[..self.cycle.len()].partition_point(|&s| s < rest) as u64;
        p as u64 + q0 * self.cycle.len() as u64 + within
    }

    pub fn scaled(&self, factor: u64) -> Result<Self> {
        let mul = |d: &u64| d.checked_mul(factor).ok_or_else(|| overflow("scale"));
        EpStream::new(
            self.start
                .checked_mul(factor)
                .ok_or_else(|| overflow("scale"))?,
            self.prefix.iter().map(mul).collect::<Result<_>>()?,
            self.cycle.iter().map(mul).collect::<Result<_>>()?,
        )
    }

    /// Same differences, every value raised by `add`.
    pub fn offset(&self, add: u64) -> Result<Self> {
        EpStream::new(
            self.start
                .checked_add(add)
                .ok_or_else(|| overflow("offset"))?,
            self.prefix.clone(),
            self.cycle.clone(),
        )
    }

    /// `n ↦ f(s·n + c)`, still eventually periodic.
    pub fn reindex_affine(&self, step: u64, shift: u64) -> Result<Self> {
        let start = self.eval(shift)?;
        let window_diff = |n: u64| -> Result<u64> {
            let a = step.checked_mul(n).and_then(|v| v.checked_add(shift));
            let a = a.ok_or_else(|| overflow("reindex"))?;
            Ok(self.eval(a + step)? - self.eval(a)?)
        };
        // once s·n + c passes the prefix, the differences repeat every
        // cycle_len / gcd(step, cycle_len) steps
        let p = self.prefix.len() as u64;
        let c = self.cycle.len() as u64;
        let first_periodic = if shift >= p {
            0
        } else {
            (p - shift).div_ceil(step)
        };
        let period = c / num_integer::gcd(step, c);
        let prefix = (0..first_periodic)
            .map(window_diff)
            .collect::<Result<_>>()?;
        let cycle = (first_periodic..first_periodic + period)
            .map(window_diff)
            .collect::<Result<_>>()?;
        EpStream::new(start, prefix, cycle)
    }

    pub fn describe(&self) -> String {
        format!("ep({};{:?};{:?})", self.start, self.prefix, self.cycle)
    }
}

fn partial_sums(diffs: &[u64]) -> Result<Vec<u64>> {
    let mut out = Vec::with_capacity(diffs.len() + 1);
    let mut acc = 0u64;
    out.push(0);
    for &d in diffs {
        acc = acc
            .checked_add(d)
            .ok_or_else(|| overflow("difference sums"))?;
        out.push(acc);
    }
    Ok(out)
}

/// Quadratic stream whose difference at index `n` is `alpha·n + beta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RampStream {
    pub start: u64,
    pub alpha: u64,
    pub beta: u64,
}

impl RampStream {
    pub fn new(start: u64, alpha: u64, beta: u64) -> Result<Self> {
        if alpha == 0 || beta == 0 {
            return Err(KernelError::MalformedSpec(
                "ramp needs alpha >= 1 and beta >= 1".into(),
            ));
        }
        Ok(RampStream { start, alpha, beta })
    }

    pub fn eval(&self, n: u64) -> Result<u64> {
        let n = n as u128;
        let tri = n * n.saturating_sub(1) / 2;
        let v = self.start as u128 + self.beta as u128 * n + self.alpha as u128 * tri;
        u64::try_from(v).map_err(|_| overflow("ramp"))
    }

    pub fn diff(&self, n: u64) -> Result<u64> {
        self.alpha
            .checked_mul(n)
            .and_then(|v| v.checked_add(self.beta))
            .ok_or_else(|| overflow("ramp"))
    }

    pub fn growth(&self) -> Growth {
        let a = q_int(self.alpha);
        Growth::exact(a / q_int(2), q_int(self.beta) - a / q_int(2))
    }
}

/// Index schedules used by reindexing and sampling constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Schedule {
    /// `n ↦ s·n`
    Arith(u64),
    /// `n ↦ n²`
    Squares,
    /// `n ↦ n + c`
    Shift(u64),
}

impl Schedule {
    pub fn apply(self, n: u64) -> Result<u64> {
        match self {
            Schedule::Arith(s) => s.checked_mul(n),
            Schedule::Squares => n.checked_mul(n),
            Schedule::Shift(c) => n.checked_add(c),
        }
        .ok_or_else(|| overflow("schedule"))
    }

    fn min_gap(self) -> u64 {
        match self {
            Schedule::Arith(s) => s,
            Schedule::Squares | Schedule::Shift(_) => 1,
        }
    }

    /// Whether infinitely many indices are skipped.
    pub fn skips_infinitely_many(self) -> bool {
        match self {
            Schedule::Arith(s) => s >= 2,
            Schedule::Squares => true,
            Schedule::Shift(_) => false,
        }
    }

    /// Whether `n` is in the range of the schedule.
    pub fn hits(self, n: u64) -> bool {
        match self {
            Schedule::Arith(s) => n.is_multiple_of(s),
            Schedule::Squares => {
                let r = n.isqrt();
                r * r == n
            }
            Schedule::Shift(c) => n >= c,
        }
    }

    pub fn describe(self) -> String {
        match self {
            Schedule::Arith(s) => format!("arith({s})"),
            Schedule::Squares => "squares".into(),
            Schedule::Shift(c) => format!("shift({c})"),
        }
    }

    fn compose_growth(self, outer: &Growth) -> Growth {
        let map = |b: &Bound| -> Bound {
            match (self, b) {
                (_, Bound::Infinite) => Bound::Infinite,
                (Schedule::Arith(s), Bound::Quad { q, l }) => {
                    let s = q_int(s);
                    Bound::quad(q * s * s, l * s)
                }
                (Schedule::Shift(c), Bound::Quad { q, l }) => Bound::quad(*q, l + q * q_int(2 * c)),
                (Schedule::Squares, Bound::Quad { q, l }) => {
                    // a quadratic outer stream makes the composite quartic
                    if q.is_zero() {
                        Bound::quad(*l, Q::zero())
                    } else {
                        Bound::Infinite
                    }
                }
            }
        };
        Growth {
            lower: map(&outer.lower),
            upper: map(&outer.upper),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedProgram {
    Squares,
    Cubes,
    Pow2,
}

impl NamedProgram {
    pub fn id(self) -> &'static str {
        match self {
            NamedProgram::Squares => "squares",
            NamedProgram::Cubes => "cubes",
            NamedProgram::Pow2 => "pow2",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        match id {
            "squares" => Some(NamedProgram::Squares),
            "cubes" => Some(NamedProgram::Cubes),
            "pow2" => Some(NamedProgram::Pow2),
            _ => None,
        }
    }
}

/// Generator behind a program stream.
#[derive(Debug, Clone)]
pub enum Recipe {
    Named(NamedProgram),
    /// `n ↦ outer(σ(n))`
    Compose {
        outer: UpStream,
        schedule: Schedule,
    },
    /// `n ↦ x_{σ(n)}` for the increasing enumeration of a set
    SampleSet {
        set: OmegaSet,
        schedule: Schedule,
    },
    Scaled {
        inner: UpStream,
        factor: u64,
    },
    Offset {
        inner: UpStream,
        add: u64,
    },
    /// `f'(0) = 0`, `f'(n+1) = f(f'(n)) + extra`
    SparseSelector {
        f: UpStream,
        extra: u64,
    },
    /// `h'(0) = 0`, `h'(n+1) = k + 1 + h'(n) + h(h'(n))`
    RecursiveSpreader {
        h: UpStream,
        k: u64,
    },
    /// monotone envelope of `n ↦ min{m > n : |[n,m) ∩ X| > 2k}`
    DoubleCountBound {
        set: OmegaSet,
        k: u64,
    },
    /// `h(0) = x_{σ(0)}`, `h(n) = max(x_{σ(n)}, h(n−1) + n + 1)`
    IdMajorant {
        set: OmegaSet,
        schedule: Schedule,
    },
    /// `h(0) = 0`, `h(n+1) = f(h(n) + n + offset)`
    NestedAccelerator {
        f: UpStream,
        offset: u64,
    },
    /// `f(0) = g(0)`, `f(n+1) = g(f(n)) + n + 1`
    BdForallSpreader {
        g: UpStream,
    },
}

impl Recipe {
    fn is_recursive(&self) -> bool {
        matches!(
            self,
            Recipe::SparseSelector { .. }
                | Recipe::RecursiveSpreader { .. }
                | Recipe::DoubleCountBound { .. }
                | Recipe::IdMajorant { .. }
                | Recipe::NestedAccelerator { .. }
                | Recipe::BdForallSpreader { .. }
        )
    }

    fn describe(&self) -> String {
        match self {
            Recipe::Named(p) => p.id().to_string(),
            Recipe::Compose { outer, schedule } => {
                format!("compose({},{})", outer.describe(), schedule.describe())
            }
            Recipe::SampleSet { set, schedule } => {
                format!("sample({},{})", set.describe(), schedule.describe())
            }
            Recipe::Scaled { inner, factor } => format!("scale({},{factor})", inner.describe()),
            Recipe::Offset { inner, add } => format!("offset({},{add})", inner.describe()),
            Recipe::SparseSelector { f, extra } => {
                format!("sparse_selector({},{extra})", f.describe())
            }
            Recipe::RecursiveSpreader { h, k } => {
                format!("recursive_spreader({},{k})", h.describe())
            }
            Recipe::DoubleCountBound { set, k } => {
                format!("double_count_bound({},{k})", set.describe())
            }
            Recipe::IdMajorant { set, schedule } => {
                format!("id_majorant({},{})", set.describe(), schedule.describe())
            }
            Recipe::NestedAccelerator { f, offset } => {
                format!("nested_accelerator({},{offset})", f.describe())
            }
            Recipe::BdForallSpreader { g } => format!("bd_forall_spreader({})", g.describe()),
        }
    }
}

/// Linear lower bound `diff(n) ≥ slope·n + intercept` on the differences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GapFloor {
    pub slope: u64,
    pub intercept: u64,
}

impl GapFloor {
    pub fn at(self, n: u64) -> u64 {
        self.slope.saturating_mul(n).saturating_add(self.intercept)
    }

    /// First index from which every difference is at least `target`.
    pub fn reaches(self, target: u64) -> Option<u64> {
        if self.intercept >= target {
            Some(0)
        } else if self.slope == 0 {
            None
        } else {
            Some((target - self.intercept).div_ceil(self.slope))
        }
    }

    fn stronger(self, other: GapFloor) -> GapFloor {
        if (other.slope, other.intercept) > (self.slope, self.intercept) {
            other
        } else {
            self
        }
    }
}

/// What is known about a stream's differences and growth without evaluating it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StreamFacts {
    pub min_diff: u64,
    pub gap_floor: GapFloor,
    pub nondecreasing_diffs: bool,
    pub strictly_increasing_diffs: bool,
    pub growth: Growth,
}

impl StreamFacts {
    fn basic(min_diff: u64) -> Self {
        StreamFacts {
            min_diff,
            gap_floor: GapFloor {
                slope: 0,
                intercept: min_diff,
            },
            nondecreasing_diffs: false,
            strictly_increasing_diffs: false,
            growth: Growth::at_least(Bound::linear(Q::one())),
        }
    }

    /// Differences tend to infinity.
    pub fn divergent(&self) -> bool {
        self.strictly_increasing_diffs || self.gap_floor.slope >= 1
    }
}

struct ProgramInner {
    recipe: Recipe,
    id: String,
    facts: StreamFacts,
    budget: u64,
    memo: Mutex<Vec<u64>>,
}

/// Deterministic generator with a memo table and a step budget.
#[derive(Clone)]
pub struct ProgramStream {
    inner: Arc<ProgramInner>,
}

impl fmt::Debug for ProgramStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProgramStream")
            .field("id", &self.inner.id)
            .finish()
    }
}

impl PartialEq for ProgramStream {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.id == other.inner.id
    }
}

impl ProgramStream {
    pub fn new(recipe: Recipe) -> Self {
        Self::with_budget(recipe, DEFAULT_STEP_BUDGET)
    }

    pub fn with_budget(recipe: Recipe, budget: u64) -> Self {
        let facts = program_facts(&recipe);
        let id = recipe.describe();
        ProgramStream {
            inner: Arc::new(ProgramInner {
                recipe,
                id,
                facts,
                budget,
                memo: Mutex::new(Vec::new()),
            }),
        }
    }

    pub fn named(p: NamedProgram) -> Self {
        Self::new(Recipe::Named(p))
    }

    pub fn id(&self) -> &str {
        &self.inner.id
    }

    pub fn recipe(&self) -> &Recipe {
        &self.inner.recipe
    }

    pub fn facts(&self) -> &StreamFacts {
        &self.inner.facts
    }

    pub fn eval(&self, n: u64) -> Result<u64> {
        if n > self.inner.budget {
            return Err(self.divergence(n));
        }
        if !self.inner.recipe.is_recursive() {
            return self.eval_direct(n);
        }
        let mut memo = self.inner.memo.lock().unwrap_or_else(|e| e.into_inner());
        while memo.len() as u64 <= n {
            let i = memo.len() as u64;
            let next = self.step(i, memo.last().copied())?;
            if let Some(&prev) = memo.last() {
                if next <= prev {
                    return Err(KernelError::MalformedSpec(format!(
                        "program `{}` is not strictly increasing at {i}",
                        self.inner.id
                    )));
                }
            }
            memo.push(next);
        }
        Ok(memo[n as usize])
    }

    fn divergence(&self, index: u64) -> KernelError {
        KernelError::ProgramDivergence {
            id: self.inner.id.clone(),
            index,
            budget: self.inner.budget,
        }
    }

    fn eval_direct(&self, n: u64) -> Result<u64> {
        match &self.inner.recipe {
            Recipe::Named(NamedProgram::Squares) => {
                n.checked_mul(n).ok_or_else(|| overflow("squares"))
            }
            Recipe::Named(NamedProgram::Cubes) => n
                .checked_mul(n)
                .and_then(|v| v.checked_mul(n))
                .ok_or_else(|| overflow("cubes")),
            Recipe::Named(NamedProgram::Pow2) => 1u64
                .checked_shl(n as u32)
                .filter(|_| n < 64)
                .ok_or_else(|| overflow("pow2")),
            Recipe::Compose { outer, schedule } => outer.eval(schedule.apply(n)?),
            Recipe::SampleSet { set, schedule } => set.enumerate(schedule.apply(n)?),
            Recipe::Scaled { inner, factor } => inner
                .eval(n)?
                .checked_mul(*factor)
                .ok_or_else(|| overflow("scale")),
            Recipe::Offset { inner, add } => inner
                .eval(n)?
                .checked_add(*add)
                .ok_or_else(|| overflow("offset")),
            _ => unreachable!("recursive recipes go through the memo"),
        }
    }

    fn step(&self, n: u64, prev: Option<u64>) -> Result<u64> {
        let add = |a: u64, b: u64| {
            a.checked_add(b)
                .ok_or_else(|| overflow(self.inner.id.clone()))
        };
        match (&self.inner.recipe, prev) {
            (Recipe::SparseSelector { .. }, None)
            | (Recipe::RecursiveSpreader { .. }, None)
            | (Recipe::NestedAccelerator { .. }, None) => Ok(0),
            (Recipe::SparseSelector { f, extra }, Some(p)) => add(f.eval(p)?, *extra),
            (Recipe::RecursiveSpreader { h, k }, Some(p)) => add(add(k + 1, p)?, h.eval(p)?),
            (Recipe::NestedAccelerator { f, offset }, Some(p)) => {
                f.eval(add(add(p, n - 1)?, *offset)?)
            }
            (Recipe::BdForallSpreader { g }, None) => g.eval(0),
            (Recipe::BdForallSpreader { g }, Some(p)) => add(g.eval(p)?, n),
            (Recipe::DoubleCountBound { set, k }, prev) => {
                let f = double_count_point(set, n, *k)?;
                match prev {
                    None => Ok(f),
                    Some(p) => Ok(f.max(add(p, 1)?)),
                }
            }
            (Recipe::IdMajorant { set, schedule }, prev) => {
                let x = set.enumerate(schedule.apply(n)?)?;
                match prev {
                    None => Ok(x),
                    Some(p) => Ok(x.max(add(p, n + 1)?)),
                }
            }
            _ => unreachable!("direct recipes are not memoized"),
        }
    }
}

/// `min{m > n : |[n,m) ∩ X| > 2k}`.
pub(crate) fn double_count_point(set: &OmegaSet, n: u64, k: u64) -> Result<u64> {
    let before = set.count_in(0, n)?;
    Ok(set.enumerate(before + 2 * k)? + 1)
}

fn program_facts(recipe: &Recipe) -> StreamFacts {
    match recipe {
        Recipe::Named(NamedProgram::Squares) => StreamFacts {
            min_diff: 1,
            gap_floor: GapFloor {
                slope: 2,
                intercept: 1,
            },
            nondecreasing_diffs: true,
            strictly_increasing_diffs: true,
            growth: Growth::exact(Q::one(), Q::zero()),
        },
        Recipe::Named(NamedProgram::Cubes) => StreamFacts {
            min_diff: 1,
            gap_floor: GapFloor {
                slope: 3,
                intercept: 1,
            },
            nondecreasing_diffs: true,
            strictly_increasing_diffs: true,
            growth: Growth::superquadratic(),
        },
        Recipe::Named(NamedProgram::Pow2) => StreamFacts {
            min_diff: 1,
            gap_floor: GapFloor {
                slope: 1,
                intercept: 1,
            },
            nondecreasing_diffs: true,
            strictly_increasing_diffs: true,
            growth: Growth::superquadratic(),
        },
        Recipe::Compose { outer, schedule } => {
            let of = outer.facts();
            let m = of.min_diff;
            let own = match schedule {
                Schedule::Arith(s) => GapFloor {
                    slope: 0,
                    intercept: *s * m,
                },
                Schedule::Squares => GapFloor {
                    slope: 2 * m,
                    intercept: m,
                },
                Schedule::Shift(_) => GapFloor {
                    slope: 0,
                    intercept: m,
                },
            };
            let inherited = match schedule {
                Schedule::Arith(s) => GapFloor {
                    slope: of.gap_floor.slope.saturating_mul((*s) * (*s)),
                    intercept: of.gap_floor.intercept.saturating_mul(*s),
                },
                Schedule::Shift(c) => GapFloor {
                    slope: of.gap_floor.slope,
                    intercept: of.gap_floor.at(*c),
                },
                Schedule::Squares => of.gap_floor,
            };
            StreamFacts {
                min_diff: schedule.min_gap() * m,
                gap_floor: own.stronger(inherited),
                nondecreasing_diffs: of.nondecreasing_diffs,
                strictly_increasing_diffs: of.strictly_increasing_diffs
                    || (matches!(schedule, Schedule::Squares) && of.nondecreasing_diffs),
                growth: schedule.compose_growth(&of.growth),
            }
        }
        Recipe::SampleSet { set, schedule } => {
            let gap = schedule.min_gap();
            let floor = match schedule {
                Schedule::Squares => GapFloor {
                    slope: 2,
                    intercept: 1,
                },
                _ => GapFloor {
                    slope: 0,
                    intercept: gap,
                },
            };
            StreamFacts {
                min_diff: gap,
                gap_floor: floor,
                nondecreasing_diffs: false,
                strictly_increasing_diffs: false,
                growth: schedule.compose_growth(&set.enumeration_growth()),
            }
        }
        Recipe::Scaled { inner, factor } => {
            let f = inner.facts();
            StreamFacts {
                min_diff: f.min_diff * factor,
                gap_floor: GapFloor {
                    slope: f.gap_floor.slope.saturating_mul(*factor),
                    intercept: f.gap_floor.intercept.saturating_mul(*factor),
                },
                growth: Growth {
                    lower: f.growth.lower.scale(q_int(*factor)),
                    upper: f.growth.upper.scale(q_int(*factor)),
                },
                ..f
            }
        }
        Recipe::Offset { inner, .. } => inner.facts(),
        Recipe::SparseSelector { f, extra } => {
            let ff = f.facts();
            let steep = match &ff.growth.lower {
                Bound::Infinite => true,
                Bound::Quad { q, l } => *q > Q::zero() || *l > Q::one(),
            };
            StreamFacts {
                min_diff: (*extra).max(1),
                // f(m) − m ≥ (d − 1)·m and f′(n) ≥ n·extra
                gap_floor: GapFloor {
                    slope: ff.min_diff.saturating_sub(1) * (*extra).max(1),
                    intercept: (*extra).max(1),
                },
                nondecreasing_diffs: true,
                strictly_increasing_diffs: false,
                growth: if steep {
                    Growth::superquadratic()
                } else {
                    Growth::at_least(Bound::linear(q_int((*extra).max(1))))
                },
            }
        }
        Recipe::RecursiveSpreader { k, .. } => StreamFacts {
            min_diff: k + 1,
            gap_floor: GapFloor {
                slope: k + 1,
                intercept: k + 1,
            },
            nondecreasing_diffs: true,
            strictly_increasing_diffs: true,
            growth: Growth::superquadratic(),
        },
        Recipe::DoubleCountBound { .. } => StreamFacts::basic(1),
        Recipe::IdMajorant { set, schedule } => {
            let sample = schedule.compose_growth(&set.enumeration_growth());
            let walk = Bound::quad(Q::new(1, 2), Q::new(3, 2));
            // once the sampled gaps exceed n+1 the max always picks the sample
            let growth = if matches!(schedule, Schedule::Squares) {
                sample
            } else {
                Growth {
                    lower: sample.lower.max_lower(&walk),
                    upper: sample.upper.add(&walk),
                }
            };
            StreamFacts {
                min_diff: 2,
                gap_floor: GapFloor {
                    slope: 1,
                    intercept: 2,
                },
                nondecreasing_diffs: false,
                strictly_increasing_diffs: false,
                growth,
            }
        }
        Recipe::NestedAccelerator { f, offset } => StreamFacts {
            min_diff: (*offset).max(1),
            gap_floor: GapFloor {
                slope: 1,
                intercept: (*offset).max(1),
            },
            nondecreasing_diffs: true,
            strictly_increasing_diffs: true,
            growth: unit_slope_growth(
                f,
                *offset as i128,
                Q::new(1, 2),
                Q::from_integer(*offset as i128) - Q::new(1, 2),
            ),
        },
        Recipe::BdForallSpreader { g } => StreamFacts {
            min_diff: 1,
            gap_floor: GapFloor {
                slope: 1,
                intercept: 1,
            },
            nondecreasing_diffs: true,
            strictly_increasing_diffs: true,
            growth: unit_slope_growth(g, 1, Q::new(1, 2), Q::new(1, 2)),
        },
    }
}

/// Growth of `h(n+1) = h(n) + (inner(h(n)+…) − h(n)) + n + add`:
/// exact quadratic when the inner stream eventually has unit slope,
/// superquadratic when it is steeper, otherwise only the generic lower bound.
fn unit_slope_growth(inner: &UpStream, add: i128, lower_q: Q, lower_l: Q) -> Growth {
    if let UpStream::Ep(ep) = inner {
        if let Some(c) = ep.unit_slope_offset() {
            let l = Q::from_integer(add + c) - Q::new(1, 2);
            return Growth::exact(Q::new(1, 2), l);
        }
    }
    let steep = match &inner.facts().growth.lower {
        Bound::Infinite => true,
        Bound::Quad { q, l } => *q > Q::zero() || *l > Q::one(),
    };
    if steep {
        Growth::superquadratic()
    } else {
        Growth::at_least(Bound::quad(lower_q, lower_l))
    }
}

/// A finitely represented strictly increasing function ω → ω.
#[derive(Debug, Clone, PartialEq)]
pub enum UpStream {
    Ep(EpStream),
    Ramp(RampStream),
    Program(ProgramStream),
}

impl From<EpStream> for UpStream {
    fn from(s: EpStream) -> Self {
        UpStream::Ep(s)
    }
}

impl From<RampStream> for UpStream {
    fn from(s: RampStream) -> Self {
        UpStream::Ramp(s)
    }
}

impl From<ProgramStream> for UpStream {
    fn from(s: ProgramStream) -> Self {
        UpStream::Program(s)
    }
}

impl UpStream {
    pub fn ep(start: u64, prefix: Vec<u64>, cycle: Vec<u64>) -> Result<Self> {
        EpStream::new(start, prefix, cycle).map(UpStream::Ep)
    }

    pub fn ramp(start: u64, alpha: u64, beta: u64) -> Result<Self> {
        RampStream::new(start, alpha, beta).map(UpStream::Ramp)
    }

    /// `n ↦ n`.
    pub fn identity() -> Self {
        UpStream::Ep(EpStream::arithmetic(0, 1).expect("valid"))
    }

    pub fn eval(&self, n: u64) -> Result<u64> {
        match self {
            UpStream::Ep(s) => s.eval(n),
            UpStream::Ramp(s) => s.eval(n),
            UpStream::Program(s) => s.eval(n),
        }
    }

    pub fn diff(&self, n: u64) -> Result<u64> {
        match self {
            UpStream::Ep(s) => Ok(s.diff(n)),
            UpStream::Ramp(s) => s.diff(n),
            UpStream::Program(s) => Ok(s.eval(n + 1)? - s.eval(n)?),
        }
    }

    pub fn start(&self) -> Result<u64> {
        self.eval(0)
    }

    pub fn as_ep(&self) -> Option<&EpStream> {
        match self {
            UpStream::Ep(s) => Some(s),
            _ => None,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            UpStream::Ep(_) => "ep",
            UpStream::Ramp(_) => "ramp",
            UpStream::Program(_) => "program",
        }
    }

    pub fn describe(&self) -> String {
        match self {
            UpStream::Ep(s) => s.describe(),
            UpStream::Ramp(r) => format!("ramp({};{};{})", r.start, r.alpha, r.beta),
            UpStream::Program(p) => p.id().to_string(),
        }
    }

    pub fn facts(&self) -> StreamFacts {
        match self {
            UpStream::Ep(s) => {
                let (head, rep) = (s.prefix(), s.cycle());
                let diffs: Vec<u64> = head.iter().chain(rep).copied().collect();
                StreamFacts {
                    min_diff: s.min_diff(),
                    gap_floor: GapFloor {
                        slope: 0,
                        intercept: s.min_diff(),
                    },
                    nondecreasing_diffs: diffs.windows(2).all(|w| w[0] <= w[1])
                        && rep.iter().all(|&d| d == rep[0]),
                    strictly_increasing_diffs: false,
                    growth: Growth::exact(Q::zero(), s.slope()),
                }
            }
            UpStream::Ramp(r) => StreamFacts {
                min_diff: r.beta,
                gap_floor: GapFloor {
                    slope: r.alpha,
                    intercept: r.beta,
                },
                nondecreasing_diffs: true,
                strictly_increasing_diffs: true,
                growth: r.growth(),
            },
            UpStream::Program(p) => p.facts().clone(),
        }
    }

    /// Number of indices `n` with `f(n) < v`.
    pub fn index_below(&self, v: u64) -> Result<u64> {
        if let UpStream::Ep(s) = self {
            return Ok(s.index_below(v));
        }
        if self.eval(0)? >= v {
            return Ok(0);
        }
        // f(n) ≥ n, so the answer lies in [1, v]
        let mut lo = 0u64;
        let mut hi = 1u64;
        while self.eval(hi)? < v {
            lo = hi;
            hi = hi.saturating_mul(2).min(v);
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.eval(mid)? < v {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(hi)
    }
}

/// Domain-membership flags for a stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StreamClass {
    /// Exact minimum difference when the representation determines it.
    pub min_diff: Option<u64>,
    /// Known lower bound for every difference.
    pub min_diff_floor: u64,
    /// `f(n+1) − f(n) > n` for every `n`.
    pub in_gt_id: Tri,
    /// Differences tend to infinity.
    pub divergent_diffs: Tri,
}

impl StreamClass {
    /// Every interval `[f(n), f(n+1))` has more than `k` elements.
    pub fn in_gt_k(&self, k: u64) -> Tri {
        match self.min_diff {
            Some(m) => Tri::from_bool(m > k),
            None if self.min_diff_floor > k => Tri::Yes,
            None => Tri::Unknown,
        }
    }
}

pub fn classify_stream(f: &UpStream) -> StreamClass {
    match f {
        UpStream::Ep(s) => StreamClass {
            min_diff: Some(s.min_diff()),
            min_diff_floor: s.min_diff(),
            // bounded differences cannot stay above n
            in_gt_id: Tri::No,
            divergent_diffs: Tri::No,
        },
        UpStream::Ramp(r) => StreamClass {
            min_diff: Some(r.beta),
            min_diff_floor: r.beta,
            in_gt_id: Tri::Yes,
            divergent_diffs: Tri::Yes,
        },
        UpStream::Program(p) => {
            let facts = p.facts();
            let floor = facts.gap_floor;
            let gt_id = floor.slope >= 1 && floor.intercept >= 1;
            StreamClass {
                min_diff: None,
                min_diff_floor: facts.min_diff,
                in_gt_id: if gt_id { Tri::Yes } else { Tri::Unknown },
                divergent_diffs: if facts.divergent() {
                    Tri::Yes
                } else {
                    Tri::Unknown
                },
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ep(start: u64, prefix: &[u64], cycle: &[u64]) -> EpStream {
        EpStream::new(start, prefix.to_vec(), cycle.to_vec()).unwrap()
    }

    #[test]
    fn ep_examples() {
        let id = ep(0, &[], &[1]);
        assert_eq!(
            (0..5).map(|n| id.eval(n).unwrap()).collect::<Vec<_>>(),
            [0, 1, 2, 3, 4]
        );
        let twice = ep(0, &[], &[2]);
        assert_eq!(twice.eval(5).unwrap(), 10);
        let f = ep(7, &[3, 1], &[2, 5]);
        assert_eq!(f.eval(0).unwrap(), 7);
        assert_eq!(
            (0..7).map(|n| f.eval(n).unwrap()).collect::<Vec<_>>(),
            [7, 10, 11, 13, 18, 20, 25]
        );
    }

    #[test]
    fn rejects_malformed() {
        assert!(EpStream::new(0, vec![], vec![]).is_err());
        assert!(EpStream::new(0, vec![0], vec![1]).is_err());
        assert!(EpStream::new(0, vec![], vec![1, 0]).is_err());
        assert!(RampStream::new(0, 0, 1).is_err());
        assert!(RampStream::new(0, 1, 0).is_err());
    }

    #[test]
    fn ramp_is_sum_of_odds() {
        let sq = RampStream::new(0, 2, 1).unwrap();
        for n in 0..50 {
            assert_eq!(sq.eval(n).unwrap(), n * n);
        }
        assert_eq!(sq.eval(3).unwrap(), 9);
    }

    #[test]
    fn index_below_matches_scan() {
        let f = ep(3, &[2, 1], &[1, 4, 2]);
        let values: Vec<u64> = (0..200).map(|n| f.eval(n).unwrap()).collect();
        for v in 0..150 {
            let expect = values.iter().filter(|&&x| x < v).count() as u64;
            assert_eq!(f.index_below(v), expect, "v = {v}");
        }
        let ramp = UpStream::ramp(1, 1, 2).unwrap();
        for v in 0..200 {
            let expect = (0..40).filter(|&n| ramp.eval(n).unwrap() < v).count() as u64;
            assert_eq!(ramp.index_below(v).unwrap(), expect);
        }
    }

    #[test]
    fn reindex_affine_matches_composition() {
        let f = ep(2, &[3], &[1, 2, 4]);
        for (step, shift) in [(1, 0), (2, 0), (3, 1), (1, 1), (4, 5)] {
            let g = f.reindex_affine(step, shift).unwrap();
            for n in 0..40 {
                assert_eq!(g.eval(n).unwrap(), f.eval(step * n + shift).unwrap());
            }
        }
    }

    #[test]
    fn classification_examples() {
        let twice = classify_stream(&UpStream::ep(0, vec![], vec![2]).unwrap());
        assert_eq!(twice.in_gt_k(1), Tri::Yes);
        assert_eq!(twice.in_gt_id, Tri::No);
        assert_eq!(twice.divergent_diffs, Tri::No);
        let sq = classify_stream(&UpStream::ramp(0, 2, 1).unwrap());
        assert_eq!(sq.divergent_diffs, Tri::Yes);
        assert_eq!(sq.in_gt_id, Tri::Yes);
        let id = classify_stream(&UpStream::identity());
        assert_eq!(id.in_gt_k(0), Tri::Yes);
        assert_eq!(id.in_gt_k(1), Tri::No);
        assert_eq!(id.in_gt_id, Tri::No);
        assert_eq!(id.divergent_diffs, Tri::No);
    }

    #[test]
    fn program_budget_is_enforced() {
        let h = UpStream::identity();
        let p = ProgramStream::with_budget(Recipe::RecursiveSpreader { h, k: 0 }, 10);
        assert_eq!(p.eval(3).unwrap(), 7);
        assert!(matches!(
            p.eval(11),
            Err(KernelError::ProgramDivergence { .. })
        ));
    }

    #[test]
    fn named_programs() {
        let sq = ProgramStream::named(NamedProgram::Squares);
        assert_eq!(sq.eval(12).unwrap(), 144);
        let p2 = ProgramStream::named(NamedProgram::Pow2);
        assert_eq!(p2.eval(10).unwrap(), 1024);
        assert!(p2.eval(64).is_err());
    }
}
