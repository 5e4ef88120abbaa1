//! Exact eventually periodic count sequences by cycle detection.

use std::collections::HashMap;

use super::measure::MeasurableSet;
use super::partition::Partition;
use super::rational::{ceil_u64, q_int};
use super::set::OmegaSet;
use super::stream::{EpStream, UpStream};
use super::{KernelError, Result, Q};

/// Largest product state space we are willing to walk.
const MAX_STATES: u64 = 50_000_000;

/// `c(n) = head[n]` for `n < T`, then `cycle[(n − T) mod P]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountProfile<V> {
    pub head: Vec<V>,
    pub cycle: Vec<V>,
}

impl<V: Clone + PartialEq> CountProfile<V> {
    /// Builds the profile with minimal transient and period.
    pub fn minimized(mut head: Vec<V>, mut cycle: Vec<V>) -> Self {
        assert!(!cycle.is_empty());
        let p = cycle.len();
        if let Some(d) =
            (1..=p).find(|d| p.is_multiple_of(*d) && (0..p).all(|i| cycle[i] == cycle[i % d]))
        {
            cycle.truncate(d);
        }
        while head.last().is_some_and(|v| v == cycle.last().unwrap()) {
            head.pop();
            cycle.rotate_right(1);
        }
        CountProfile { head, cycle }
    }

    pub fn transient(&self) -> usize {
        self.head.len()
    }

    pub fn period(&self) -> usize {
        self.cycle.len()
    }

    pub fn value(&self, n: u64) -> &V {
        let t = self.head.len() as u64;
        if n < t {
            &self.head[n as usize]
        } else {
            &self.cycle[((n - t) % self.cycle.len() as u64) as usize]
        }
    }

    pub fn values_to(&self, n: u64) -> Vec<V> {
        (0..n).map(|i| self.value(i).clone()).collect()
    }
}

/// Walks `n ↦ count(f(n), f(n+1))` until the state (cycle phase of `f`,
/// `f(n) mod space_period`) repeats past `settle`.
///
/// Sound whenever `count` on intervals starting at or after `settle` is
/// invariant under translation by `space_period`.
pub fn eventual_profile<V, F>(
    f: &EpStream,
    settle: u64,
    space_period: u64,
    mut count: F,
) -> Result<CountProfile<V>>
where
    V: Clone + PartialEq,
    F: FnMut(u64, u64) -> Result<V>,
{
    let m = space_period.max(1);
    if (f.cycle().len() as u64).saturating_mul(m) > MAX_STATES {
        return Err(KernelError::FragmentUnsupported(format!(
            "profile state space {} x {m} too large",
            f.cycle().len()
        )));
    }
    let mut seen: HashMap<(usize, u64), usize> = HashMap::new();
    let mut values = Vec::new();
    let mut n = 0u64;
    let mut a = f.eval(0)?;
    loop {
        if let Some(phase) = f.phase(n).filter(|_| a >= settle) {
            let key = (phase, a % m);
            if let Some(&first) = seen.get(&key) {
                let cycle = values.split_off(first);
                return Ok(CountProfile::minimized(values, cycle));
            }
            seen.insert(key, values.len());
        }
        let b = f.eval(n + 1)?;
        values.push(count(a, b)?);
        a = b;
        n += 1;
    }
}

fn require_ep<'a>(f: &'a UpStream, what: &str) -> Result<&'a EpStream> {
    f.as_ep().ok_or_else(|| {
        KernelError::FragmentUnsupported(format!("{what} needs an eventually periodic stream"))
    })
}

/// Profile of `n ↦ |[f(n), f(n+1)) ∩ X|`.
pub fn interval_count_profile(f: &UpStream, x: &OmegaSet) -> Result<CountProfile<u64>> {
    let f = require_ep(f, "interval count profile")?;
    let x = x.normalized();
    let (plen, period, _) = x.word_shape().ok_or_else(|| {
        KernelError::FragmentUnsupported("interval count profile needs a periodic set".into())
    })?;
    eventual_profile(f, plen, period, |a, b| x.count_in(a, b))
}

/// Profile of the number of blocks of `p` meeting `[f(n), f(n+1))`.
pub fn colored_count_profile(f: &UpStream, p: &Partition) -> Result<CountProfile<u64>> {
    let f = require_ep(f, "colored count profile")?;
    eventual_profile(f, p.settle_point()?, p.space_period()?, |a, b| {
        p.blocks_meeting(a, b)
    })
}

/// Profile of `n ↦ μ([f(n), f(n+1)) ∩ Y)`.
pub fn measure_profile(f: &UpStream, y: &MeasurableSet) -> Result<CountProfile<Q>> {
    let f = require_ep(f, "measure profile")?;
    // an integer multiple of L
    let m = *y.period().numer() as u64;
    eventual_profile(f, ceil_u64(&y.p0()), m, |a, b| {
        Ok(y.measure_in(&q_int(a), &q_int(b)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{BlockPattern, RatInterval};
    use num_traits::Zero;

    fn ep(start: u64, prefix: &[u64], cycle: &[u64]) -> UpStream {
        UpStream::ep(start, prefix.to_vec(), cycle.to_vec()).unwrap()
    }

    #[test]
    fn interval_examples() {
        let p = interval_count_profile(&ep(0, &[], &[2]), &OmegaSet::evens()).unwrap();
        assert_eq!((p.transient(), p.cycle.clone()), (0, vec![1]));
        let p = interval_count_profile(&ep(0, &[], &[1]), &OmegaSet::evens()).unwrap();
        assert_eq!(
            (p.transient(), p.period(), p.cycle.clone()),
            (0, 2, vec![1, 0])
        );
        let p = interval_count_profile(&ep(0, &[], &[1]), &OmegaSet::omega()).unwrap();
        assert_eq!(p.cycle, vec![1]);
    }

    #[test]
    fn rejects_outside_fragment() {
        let ramp = UpStream::ramp(0, 2, 1).unwrap();
        assert!(matches!(
            interval_count_profile(&ramp, &OmegaSet::evens()),
            Err(KernelError::FragmentUnsupported(_))
        ));
        let squares = OmegaSet::range(ramp);
        assert!(interval_count_profile(&ep(0, &[], &[1]), &squares).is_err());
    }

    #[test]
    fn colored_examples() {
        let p2 = Partition::intervals(EpStream::arithmetic(0, 2).unwrap()).unwrap();
        assert_eq!(
            colored_count_profile(&ep(0, &[], &[2]), &p2).unwrap().cycle,
            vec![1]
        );
        assert_eq!(
            colored_count_profile(&ep(0, &[], &[1]), &p2).unwrap().cycle,
            vec![1]
        );
        assert_eq!(
            colored_count_profile(&ep(0, &[1], &[2]), &p2)
                .unwrap()
                .cycle,
            vec![2]
        );
        let labelled = Partition::new(
            EpStream::arithmetic(0, 3).unwrap(),
            BlockPattern::Windows {
                prefix: vec![],
                cycle: vec![vec![0, 1, 0]],
            },
            0,
        )
        .unwrap();
        assert_eq!(
            colored_count_profile(&ep(0, &[], &[3]), &labelled)
                .unwrap()
                .cycle,
            vec![2]
        );
    }

    #[test]
    fn measure_examples() {
        let full = MeasurableSet::full_line();
        assert_eq!(
            measure_profile(&ep(0, &[], &[1]), &full).unwrap().cycle,
            vec![q_int(1)]
        );
        let unit = MeasurableSet::new(
            vec![],
            vec![RatInterval::new(Q::zero(), q_int(1)).unwrap()],
            Q::zero(),
            q_int(2),
        )
        .unwrap();
        let p = measure_profile(&ep(0, &[], &[1]), &unit).unwrap();
        assert_eq!(p.cycle, vec![q_int(1), q_int(0)]);
        assert_eq!(
            measure_profile(&ep(0, &[], &[2]), &unit).unwrap().cycle,
            vec![q_int(1)]
        );
    }

    #[test]
    fn minimization() {
        let p = CountProfile::minimized(vec![5, 1, 2], vec![1, 2, 1, 2]);
        assert_eq!((p.head.clone(), p.cycle.clone()), (vec![5], vec![1, 2]));
    }
}
