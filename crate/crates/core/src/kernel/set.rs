//! Infinite subsets of ω.

use num_traits::Zero;

use super::growth::Growth;
use super::stream::{Tri, UpStream};
use super::{overflow, KernelError, Result, Q};

/// An infinite subset of ω, either an eventually periodic bit word or the
/// range of a stream.
#[derive(Debug, Clone, PartialEq)]
pub enum OmegaSet {
    Word { prefix: Vec<bool>, cycle: Vec<bool> },
    Range(UpStream),
}

fn bits(text: &str) -> Result<Vec<bool>> {
    text.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(KernelError::MalformedSpec(format!("bad bit `{other}`"))),
        })
        .collect()
}

fn bits_to_string(b: &[bool]) -> String {
    b.iter().map(|&x| if x { '1' } else { '0' }).collect()
}

impl OmegaSet {
    pub fn word(prefix: Vec<bool>, cycle: Vec<bool>) -> Result<Self> {
        if !cycle.iter().any(|&b| b) {
            return Err(KernelError::MalformedSpec(
                "word cycle must contain a 1 (the set must be infinite)".into(),
            ));
        }
        Ok(OmegaSet::Word { prefix, cycle })
    }

    /// Parses bit strings such as `("0101", "10")`.
    pub fn word_from_str(prefix: &str, cycle: &str) -> Result<Self> {
        OmegaSet::word(bits(prefix)?, bits(cycle)?)
    }

    pub fn omega() -> Self {
        OmegaSet::Word {
            prefix: vec![],
            cycle: vec![true],
        }
    }

    pub fn evens() -> Self {
        OmegaSet::Word {
            prefix: vec![],
            cycle: vec![true, false],
        }
    }

    pub fn range(f: UpStream) -> Self {
        OmegaSet::Range(f)
    }

    /// Bit strings of a word set.
    pub fn word_strings(&self) -> Option<(String, String)> {
        match self {
            OmegaSet::Word { prefix, cycle } => {
                Some((bits_to_string(prefix), bits_to_string(cycle)))
            }
            OmegaSet::Range(_) => None,
        }
    }

    /// Rewrites the range of an eventually periodic stream as a word.
    pub fn normalized(&self) -> Self {
        match self {
            OmegaSet::Range(UpStream::Ep(f)) => {
                let p = f.prefix().len() as u64;
                let base = f.eval(p).expect("prefix values fit");
                let c = f.cycle_sum();
                let mut prefix = vec![false; base as usize];
                for n in 0..p {
                    prefix[f.eval(n).unwrap() as usize] = true;
                }
                let mut cycle = vec![false; c as usize];
                let mut acc = 0u64;
                for &d in f.cycle() {
                    cycle[acc as usize] = true;
                    acc += d;
                }
                OmegaSet::Word { prefix, cycle }
            }
            other => other.clone(),
        }
    }

    pub fn is_decidable(&self) -> bool {
        matches!(
            self,
            OmegaSet::Word { .. } | OmegaSet::Range(UpStream::Ep(_))
        )
    }

    /// `(prefix length, period, ones per period)` for word sets.
    pub fn word_shape(&self) -> Option<(u64, u64, u64)> {
        match self.normalized() {
            OmegaSet::Word { prefix, cycle } => Some((
                prefix.len() as u64,
                cycle.len() as u64,
                cycle.iter().filter(|&&b| b).count() as u64,
            )),
            OmegaSet::Range(_) => None,
        }
    }

    pub fn contains(&self, n: u64) -> Result<bool> {
        match self {
            OmegaSet::Word { prefix, cycle } => Ok(word_bit(prefix, cycle, n)),
            OmegaSet::Range(f) => {
                let i = f.index_below(n)?;
                Ok(f.eval(i)? == n)
            }
        }
    }

    /// `|X ∩ [0, v)|`.
    pub fn count_below(&self, v: u64) -> Result<u64> {
        match self {
            OmegaSet::Word { prefix, cycle } => {
                let plen = prefix.len() as u64;
                let head = prefix[..v.min(plen) as usize]
                    .iter()
                    .filter(|&&b| b)
                    .count() as u64;
                if v <= plen {
                    return Ok(head);
                }
                let rest = v - plen;
                let l = cycle.len() as u64;
                let w = cycle.iter().filter(|&&b| b).count() as u64;
                let part = cycle[..(rest % l) as usize].iter().filter(|&&b| b).count() as u64;
                Ok(head + (rest / l) * w + part)
            }
            OmegaSet::Range(f) => f.index_below(v),
        }
    }

    /// `|X ∩ [a, b)|`.
    pub fn count_in(&self, a: u64, b: u64) -> Result<u64> {
        if b <= a {
            return Ok(0);
        }
        Ok(self.count_below(b)? - self.count_below(a)?)
    }

    /// The `i`-th element in increasing order, counting from zero.
    pub fn enumerate(&self, i: u64) -> Result<u64> {
        match self {
            OmegaSet::Word { prefix, cycle } => {
                let pw = prefix.iter().filter(|&&b| b).count() as u64;
                if i < pw {
                    let pos = prefix
                        .iter()
                        .enumerate()
                        .filter(|(_, &b)| b)
                        .nth(i as usize)
                        .map(|(j, _)| j)
                        .unwrap();
                    return Ok(pos as u64);
                }
                let j = i - pw;
                let l = cycle.len() as u64;
                let ones: Vec<u64> = cycle
                    .iter()
                    .enumerate()
                    .filter(|(_, &b)| b)
                    .map(|(k, _)| k as u64)
                    .collect();
                let w = ones.len() as u64;
                (j / w)
                    .checked_mul(l)
                    .and_then(|v| v.checked_add(prefix.len() as u64 + ones[(j % w) as usize]))
                    .ok_or_else(|| overflow("enumerate"))
            }
            OmegaSet::Range(f) => f.eval(i),
        }
    }

    /// Whether ω ∖ X is infinite.
    pub fn co_infinite(&self) -> Tri {
        match self.normalized() {
            OmegaSet::Word { cycle, .. } => Tri::from_bool(cycle.iter().any(|&b| !b)),
            OmegaSet::Range(UpStream::Ramp(_)) => Tri::Yes,
            OmegaSet::Range(f) => {
                let facts = f.facts();
                if facts.min_diff >= 2 || facts.divergent() {
                    Tri::Yes
                } else {
                    Tri::Unknown
                }
            }
        }
    }

    /// Envelope of the increasing enumeration `i ↦ x_i`.
    pub fn enumeration_growth(&self) -> Growth {
        match self.normalized() {
            OmegaSet::Word { cycle, .. } => {
                let w = cycle.iter().filter(|&&b| b).count() as i128;
                Growth::exact(Q::zero(), Q::new(cycle.len() as i128, w))
            }
            OmegaSet::Range(f) => f.facts().growth,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            OmegaSet::Word { prefix, cycle } => {
                format!("word({};{})", bits_to_string(prefix), bits_to_string(cycle))
            }
            OmegaSet::Range(f) => format!("range({})", f.describe()),
        }
    }
}

fn word_bit(prefix: &[bool], cycle: &[bool], n: u64) -> bool {
    let plen = prefix.len() as u64;
    if n < plen {
        prefix[n as usize]
    } else {
        cycle[((n - plen) % cycle.len() as u64) as usize]
    }
}
