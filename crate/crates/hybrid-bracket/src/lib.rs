//! Coupling quasiclassical and quantum variables at desk scale.
//!
//! This crate implements an algebra of mixed observables: polynomials in a
//! commuting classical canonical pair (x̌, ǩ) whose coefficients are quantum
//! operators on a small finite-dimensional Hilbert space (Pauli or truncated
//! boson). On top of that representation it provides
//!
//! - the two candidate hybrid brackets - the ordered one and the
//!   antisymmetric, hermitian symmetrized one - together with residual
//!   checkers for their corrected product rules and for the failure of the
//!   Jacobi identity on mixed observables ([`algebra`], [`identities`],
//!   [`sweep`]);
//! - Taylor-series solutions of the coupled Hamilton-Heisenberg equations of
//!   motion by iterated brackets, plus an order-by-order scanner for how a
//!   Hamiltonian preserves the fundamental canonical relations
//!   ([`dynamics`]);
//! - hybrid states, expectation values, spectral branch decomposition of
//!   evolved observables, and experimental-resolution binning of branches
//!   ([`states`]);
//! - closed-form fully quantum and mean-field references for the
//!   momentum-momentum coupling scenario, exposing where coupling a
//!   classical variable to an expectation value goes wrong ([`oracle`]).
//!
//! The `hybrid-bracket` binary exposes the same machinery as subcommands
//! (`check-identities`, `evolve`, `scenario-spin`, `scenario-momentum`,
//! `canonical-scan`); the crate's `examples/` directory has one runnable
//! walk-through per capability.

pub mod algebra;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod identities;
pub mod operator;
pub mod oracle;
pub mod states;
pub mod sweep;

pub use algebra::{Algebra, Generator, HybridObservable, Monomial};
pub use dynamics::{canonical_scan, taylor_evolve, CanonicalReport, TaylorSolution};
pub use error::{Error, Result};
pub use identities::{jacobiator, product_rule_check, ProductRuleVariant, ResidualReport};
pub use operator::QuantumOperator;
pub use oracle::{
    compare_with_quasiclassical, evolve_full_quantum, mean_field_trajectory, ComparisonRecord,
    MomentumCouplingParams, Projection, ProjectionBranch,
};
pub use states::{
    bin_branches, branch_decompose, expectation, Branch, BranchSet, ClassicalEnsemble,
    HybridState, PhasePoint, QuantumState,
};
