use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("shape mismatch: expected {expected:?}, found {found:?}")]
    ShapeMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },

    #[error("non-finite matrix entry")]
    NonFinite,

    #[error("algebra has no unit element (residual {residual:.3e})")]
    NoUnit { residual: f64 },

    #[error("subspace is not closed under {0}")]
    NotClosed(&'static str),

    #[error("first algebra is not a subalgebra of the second")]
    NotASubalgebra,

    #[error("matrix is not positive definite: {0}")]
    NotPositiveDefinite(String),

    #[error("bundle is not saturated")]
    NotSaturated,

    #[error("bundle is not saturated at element {0}")]
    NotSaturatedAt(usize),

    #[error("element is not in the total algebra (residual {residual:.3e})")]
    NotInTotalAlgebra { residual: f64 },

    #[error("quasi-basis identity fails (residual {residual:.3e})")]
    QuasiBasisFailure { residual: f64 },

    #[error("middle algebras of the tensor factors differ")]
    MiddleAlgebraMismatch,

    #[error("total bimodule is not an equivalence bimodule: {0}")]
    AssemblyFailure(String),

    #[error("actions are not compatible: {0}")]
    IncompatibleActions(String),

    #[error("linear extension is ill-defined (residual {residual:.3e})")]
    IllDefinedExtension { residual: f64 },

    #[error("linear map is underdetermined: spanning family has rank {rank} < {dim}")]
    Underdetermined { rank: usize, dim: usize },

    #[error("inner product form is degenerate")]
    DegenerateForm,

    #[error("bundle isomorphism checks failed: {0:?}")]
    IsomorphismFailure(Vec<String>),

    #[error("covariance violated: {0}")]
    CovarianceViolation(String),

    #[error("fiber {0} of the reconstructed bundle is zero")]
    EmptyFiber(usize),

    #[error("permutation is not an automorphism of the group")]
    NotAnAutomorphism,

    #[error("no automorphism produced an equivalence bundle ({tried} candidates tried)")]
    NoAutomorphismFound { tried: usize },

    #[error("expected a bundle over a group of order 2, found order {0}")]
    WrongGroup(usize),

    #[error("induced involution is ill-defined (residual {residual:.3e})")]
    IllDefinedInvolution { residual: f64 },

    #[error("map is not an involutive bimodule isomorphism: {0:?}")]
    NotAnInvolutiveIsomorphism(Vec<String>),

    #[error("right action leaves the span: {0}")]
    ClosureFailure(String),

    #[error("bimodule is not an equivalence bimodule: {0}")]
    NotAnEquivalenceBimodule(String),
}
