//! Statevector simulation of the quantum search subroutines.
//!
//! The standard oracle `O_x`, Grover search with an unknown number of
//! marked items, first-one finding by prefix doubling, and the amplified
//! first-disagreement finder used by the quantum identification engine.
//! Every oracle application is counted; classical confirmations of a
//! measured candidate count as one query each.

mod oracle;
mod search;
mod state;

pub use oracle::{apply_oracle, DisagreementOracle, QueryCounter};
pub use search::{
    find_first_one, grover_round, grover_search_unknown_k, quantum_disagreement_finder,
    FinderReport, SearchParams,
};
pub use state::{Register, StateVector, MAX_QUBITS};
