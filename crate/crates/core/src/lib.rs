//! Finite-dimensional models of C*-algebraic bundles over finite groups,
//! their equivalence bundles, and Morita equivalence of the induced inclusions.
//!
//! Every algebra, bimodule and fiber is a subspace of complex matrices, so each
//! structural condition is a numerical predicate with an explicit residual.

pub mod basic_construction;
pub mod bimodule;
pub mod bundle;
pub mod catalog;
pub mod equivalence_bundle;
pub mod error;
pub mod group;
pub mod involutive;
pub mod linalg;
pub mod linmap;
pub mod matspace;
pub mod reconstruction;
pub mod report;
pub mod star_algebra;

pub use basic_construction::{bundle_a1_and_iso, A1Bundle, BasicConstructionResult, InducedBundle};
pub use bimodule::{check_inclusion_morita, ConcreteBimodule, InclusionMoritaDatum};
pub use bundle::{GradedCStarBundle, QuasiBasis};
pub use error::{Error, Result};
pub use group::FiniteGroup;
pub use involutive::{
    build_c_m, bundle_to_involutive, linking_and_bundle, psi_theta_check, involutive_morita_check, transport,
    InvolutiveBimodule, LinkingSystem,
};
pub use linalg::{CMatrix, C64};
pub use linmap::{LinMap, RealLinMap};
pub use matspace::MatSubspace;
pub use reconstruction::{
    build_z_bundle, overlap_factory, search_automorphism, verify_theorem_conclusion, ReconstructedBundle,
    ReconstructionInput,
};
pub use report::{CheckRecord, Report, Status};
pub use star_algebra::ConcreteStarAlgebra;
