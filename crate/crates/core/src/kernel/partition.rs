//! Partitions of ω into finite blocks, laid out window by window.

use std::collections::BTreeSet;

use num_integer::lcm;

use super::set::OmegaSet;
use super::stream::EpStream;
use super::{KernelError, Result};

/// How each boundary window `[w(j), w(j+1))` is split into local blocks.
///
/// `Windows` gives one label per point of the window; points sharing a label
/// form one block. Window `j` uses `prefix[j]` while available, then cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlockPattern {
    Single,
    Windows {
        prefix: Vec<Vec<u32>>,
        cycle: Vec<Vec<u32>>,
    },
}

impl BlockPattern {
    fn labels(&self, j: u64) -> Option<&[u32]> {
        match self {
            BlockPattern::Single => None,
            BlockPattern::Windows { prefix, cycle } => {
                let p = prefix.len() as u64;
                Some(if j < p {
                    &prefix[j as usize]
                } else {
                    &cycle[((j - p) % cycle.len() as u64) as usize]
                })
            }
        }
    }

    fn shape(&self) -> (u64, u64) {
        match self {
            BlockPattern::Single => (0, 1),
            BlockPattern::Windows { prefix, cycle } => (prefix.len() as u64, cycle.len() as u64),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    boundaries: EpStream,
    pattern: BlockPattern,
    merge_prefix: u64,
}

impl Partition {
    /// `merge_prefix = m` fuses windows `0..m` into a single block.
    pub fn new(boundaries: EpStream, pattern: BlockPattern, merge_prefix: u64) -> Result<Self> {
        if boundaries.start() != 0 {
            return Err(KernelError::MalformedSpec(
                "partition boundaries must start at 0".into(),
            ));
        }
        if let BlockPattern::Windows { cycle, .. } = &pattern {
            if cycle.is_empty() {
                return Err(KernelError::MalformedSpec("empty window pattern".into()));
            }
        }
        let part = Partition {
            boundaries,
            pattern,
            merge_prefix,
        };
        let (settle, windows) = part.periodic_windows();
        for j in 0..settle + windows {
            if let Some(labels) = part.pattern.labels(j) {
                if labels.len() as u64 != part.boundaries.diff(j) {
                    return Err(KernelError::MalformedSpec(format!(
                        "window {j} has width {} but {} labels",
                        part.boundaries.diff(j),
                        labels.len()
                    )));
                }
            }
        }
        Ok(part)
    }

    /// One block per window of `g`.
    pub fn intervals(g: EpStream) -> Result<Self> {
        Partition::new(g, BlockPattern::Single, 0)
    }

    pub fn boundaries(&self) -> &EpStream {
        &self.boundaries
    }

    pub fn pattern(&self) -> &BlockPattern {
        &self.pattern
    }

    pub fn merge_prefix(&self) -> u64 {
        self.merge_prefix
    }

    /// `(first periodic window, windows per period)`.
    fn periodic_windows(&self) -> (u64, u64) {
        let (pp, pc) = self.pattern.shape();
        let bp = self.boundaries.prefix().len() as u64;
        let bc = self.boundaries.cycle().len() as u64;
        (bp.max(pp).max(self.merge_prefix), lcm(bc, pc))
    }

    /// Point from which the partition repeats with [`Partition::space_period`].
    pub fn settle_point(&self) -> Result<u64> {
        self.boundaries.eval(self.periodic_windows().0)
    }

    pub fn space_period(&self) -> Result<u64> {
        let (s, k) = self.periodic_windows();
        Ok(self.boundaries.eval(s + k)? - self.boundaries.eval(s)?)
    }

    pub fn window_of(&self, x: u64) -> u64 {
        self.boundaries.index_below(x + 1) - 1
    }

    /// Identifies the block containing `x` by (window, label).
    pub fn block_of(&self, x: u64) -> Result<(u64, u32)> {
        let j = self.window_of(x);
        if j < self.merge_prefix {
            return Ok((0, 0));
        }
        let label = match self.pattern.labels(j) {
            None => 0,
            Some(labels) => labels[(x - self.boundaries.eval(j)?) as usize],
        };
        Ok((j, label))
    }

    /// Number of distinct blocks meeting `[a, b)`.
    pub fn blocks_meeting(&self, a: u64, b: u64) -> Result<u64> {
        if b <= a {
            return Ok(0);
        }
        let first = self.window_of(a);
        let last = self.window_of(b - 1);
        let mut total = 0u64;
        if first < self.merge_prefix {
            total += 1;
        }
        for j in first.max(self.merge_prefix)..=last {
            total += match self.pattern.labels(j) {
                None => 1,
                Some(labels) => {
                    let lo = self.boundaries.eval(j)?;
                    let from = a.saturating_sub(lo) as usize;
                    let to = (b - lo).min(labels.len() as u64) as usize;
                    labels[from..to].iter().collect::<BTreeSet<_>>().len() as u64
                }
            };
        }
        Ok(total)
    }

    /// The set of block minima.
    pub fn minima(&self) -> Result<OmegaSet> {
        let (s, k) = self.periodic_windows();
        let mark = |j: u64, out: &mut Vec<bool>| -> Result<()> {
            let width = self.boundaries.diff(j) as usize;
            let mut bits = vec![false; width];
            match self.pattern.labels(j) {
                _ if j < self.merge_prefix => bits[0] = j == 0,
                None => bits[0] = true,
                Some(labels) => {
                    let mut seen = BTreeSet::new();
                    for (i, l) in labels.iter().enumerate() {
                        bits[i] = seen.insert(*l);
                    }
                }
            }
            out.extend(bits);
            Ok(())
        };
        let mut prefix = Vec::new();
        for j in 0..s {
            mark(j, &mut prefix)?;
        }
        let mut cycle = Vec::new();
        for j in s..s + k {
            mark(j, &mut cycle)?;
        }
        OmegaSet::word(prefix, cycle)
    }

    /// Blocks fully inside `[0, limit)`, each as a sorted point list.
    pub fn blocks_below(&self, limit: u64) -> Result<Vec<Vec<u64>>> {
        let mut blocks: std::collections::BTreeMap<(u64, u32), Vec<u64>> = Default::default();
        for x in 0..limit {
            blocks.entry(self.block_of(x)?).or_default().push(x);
        }
        let end_window = self.window_of(limit);
        let cut = self.boundaries.eval(end_window)?;
        Ok(blocks
            .into_values()
            .filter(|b| *b.last().unwrap() < cut)
            .collect())
    }
}
