//! Generators, certified instances, oracles, suites and searches.

pub mod certify;
pub mod gen;
pub mod oracle;
pub mod search;
pub mod suite;
