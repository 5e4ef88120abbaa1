//! Tukey connections between relational systems.

pub mod check;
pub mod connections;
pub mod constructions;
pub mod maps;
pub mod systems;

use thiserror::Error;

use crate::kernel::KernelError;

pub use check::{
    check_certified, check_connection, compose_connections, standard_mutant, CheckOutcome,
    CheckPolicy, CheckStatus,
};
pub use connections::{
    build_connection, connection_from_spec, list_connections, TukeyConnection, CONNECTION_IDS,
    FACT_IDS,
};
pub use constructions::*;
pub use maps::{MinusMap, PlusMap};
pub use systems::{dualize_system, get_system, list_systems, Domain, RelationalSystem};

#[derive(Debug, Error)]
pub enum TukeyError {
    #[error("unknown id `{0}`")]
    UnknownId(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("cannot compose: {0}")]
    TypeMismatch(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}
