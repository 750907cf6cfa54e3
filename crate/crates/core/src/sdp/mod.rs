//! Explicit feasible points of the filtered γ₂-norm program.
//!
//! A solution assigns vectors `u_xj`, `v_xj` to every input `x` and bit
//! `j`; it is feasible for a matrix `A` when
//! `Σ_{j : x_j ≠ y_j} ⟨u_xj | v_yj⟩ = A_xy` for all pairs, and its cost on
//! `x` is `max{Σ_j ‖u_xj‖², Σ_j ‖v_xj‖²}`. Targets are written with the
//! Gram convention `F_xy = 1` iff `f(x) = f(y)`, so evaluating `f` means
//! feasibility for `J − F`.

mod compose;
mod construct;
mod identification;
mod solution;

pub use compose::{output_conditioned_compose, sum_compose, tensor_compose, MAX_TENSOR_DOMAIN};
pub use construct::{
    equality_predicate_solution, find_first_one_solution, first_disagreement_rank,
};
pub use identification::{oracle_id_solution, OracleIdSolution};
pub use solution::{
    cost_of, verify_feasible, verify_pairs, CostFunction, FeasibilityReport, SdpSolution,
    SparseVec, VectorTable,
};
