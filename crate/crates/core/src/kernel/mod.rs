//! Finite representations of infinite objects on ω and the exact profile kernel.
//!
//! Everything here is immutable once built. Strictly increasing functions are
//! [`UpStream`]s, infinite subsets of ω are [`OmegaSet`]s, partitions into finite
//! blocks are [`Partition`]s and infinite-measure subsets of the half-line are
//! [`MeasurableSet`]s. The decidable fragment consists of eventually periodic
//! difference streams paired with eventually periodic targets; on that fragment
//! [`interval_count_profile`], [`colored_count_profile`] and [`measure_profile`]
//! return exact ultimately periodic count sequences.

mod growth;
mod measure;
mod partition;
mod profile;
mod rational;
mod set;
mod stream;

pub use growth::{Bound, Growth};
pub use measure::{MeasurableSet, RatInterval};
pub use partition::{BlockPattern, Partition};
pub use profile::{
    colored_count_profile, eventual_profile, interval_count_profile, measure_profile, CountProfile,
};
pub use rational::{parse_rational, rational_to_string, Q};
pub use set::OmegaSet;
pub use stream::{
    classify_stream, EpStream, GapFloor, NamedProgram, ProgramStream, RampStream, Recipe, Schedule,
    StreamClass, StreamFacts, Tri, UpStream, DEFAULT_STEP_BUDGET,
};

pub(crate) use rational::ceil_u64;
pub(crate) use stream::double_count_point;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("malformed descriptor: {0}")]
    MalformedSpec(String),
    #[error("program stream `{id}` exceeded its step budget of {budget} at index {index}")]
    ProgramDivergence { id: String, index: u64, budget: u64 },
    #[error("value overflow while evaluating `{0}`")]
    Overflow(String),
    #[error("outside the decidable fragment: {0}")]
    FragmentUnsupported(String),
}

pub type Result<T, E = KernelError> = std::result::Result<T, E>;

pub(crate) fn overflow(what: impl Into<String>) -> KernelError {
    KernelError::Overflow(what.into())
}
