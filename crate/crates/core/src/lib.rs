//! Numerical workbench for the one-way work deficit of small bipartite
//! quantum states.
//!
//! - [`matcore`]: dense complex matrices, partial trace/transpose, Jacobi eigensolver
//! - [`states`]: validated density operators, entropies, two-qubit structure, catalog
//! - [`instruments`]: Alice's projective bases and rank-1 POVMs
//! - [`deficit`]: work quantities, optimized deficit, closed forms, ordering scans

pub mod deficit;
pub mod error;
pub mod instruments;
pub mod matcore;
pub mod random;
pub mod simplex;
pub mod states;

pub use deficit::{
    bell_diagonal_deficit, deficit_curve, level_crossings, local_unitary_invariance_check,
    local_work_one_way, one_way_deficit_projective, ordering_scan, povm_deficit, total_work,
    AnomalyFlag, CurvePoint, DeficitResult, Measurement, OptimizerSettings, OrderingRecord,
};
pub use error::{Error, Result};
pub use instruments::{
    basis_to_povm, conditional_ensemble, four_state_povm, lueders_dephase, ConditionalEnsemble,
    ProjectiveQubitBasis, RankOnePovm,
};
pub use matcore::{ComplexMatrix, Subsystem, C64};
pub use states::{catalog_members, catalog_state, CatalogName, DensityOperator, Mixedness};
