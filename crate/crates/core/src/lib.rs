//! Interval relational systems on ω: finite representations, exact asymptotic
//! relation evaluators, Tukey connections and a property-based harness.

pub mod codec;
pub mod harness;
pub mod kernel;
pub mod relations;
pub mod tukey;
