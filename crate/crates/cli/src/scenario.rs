//! JSON scenario format.
//!
//! Complex scalars are `[re, im]` (a bare number is read as real), matrices are
//! row-major nested arrays. Each section is an ordered list of named
//! definitions; a definition may only refer to names defined before it.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Complex([f64; 2]),
    Real(f64),
}

impl Scalar {
    pub fn parts(self) -> (f64, f64) {
        match self {
            Scalar::Complex([re, im]) => (re, im),
            Scalar::Real(re) => (re, 0.0),
        }
    }
}

pub type Mat = Vec<Vec<Scalar>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Def<T> {
    pub name: String,
    #[serde(flatten)]
    pub spec: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupSpec {
    Cyclic(usize),
    Klein(bool),
    S3(bool),
    /// Cayley table over elements 0..n.
    Table(Vec<Vec<usize>>),
    /// Direct product of two named groups.
    Product([String; 2]),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraSpec {
    /// All n×n matrices.
    Full(usize),
    Generated { n: usize, generators: Vec<Mat> },
    /// The identity fiber of a named bundle.
    UnitFiber(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BundleSpec {
    /// Spanning sets of each fiber, indexed by group element.
    Fibers { group: String, n: usize, fibers: Vec<Vec<Mat>> },
    /// C[G] in the regular representation.
    GroupAlgebra(String),
    Pauli(bool),
    M2TensorZ2(bool),
    PauliZ2Regrading(bool),
    /// {A_{f(t)}} for a named bundle.
    Relabel { bundle: String, f: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BimoduleSpec {
    Span {
        left: String,
        right: String,
        rows: usize,
        cols: usize,
        basis: Vec<Mat>,
    },
    /// An algebra over itself.
    Identity(String),
    /// All rectangular matrices between two algebras.
    Full { left: String, right: String },
    Tensor([String; 2]),
    Dual(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActionSpec {
    /// α_t = Ad(u_t) on a named algebra.
    Inner { algebra: String, group: String, unitaries: Vec<Mat> },
    /// λ_t(x) = u_t x v_t* on a bimodule, covariant for two named actions.
    BimoduleInner {
        bimodule: String,
        left: String,
        right: String,
        u: Vec<Mat>,
        v: Vec<Mat>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NaturalSpec {
    Adjoint,
    /// x ↦ ω·x*.
    PhaseAdjoint(Scalar),
    Transpose,
    /// Real 2k×2k matrix on coordinates [Re c; Im c] in the listed basis of the bimodule.
    Realified(Vec<Vec<f64>>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InvolutionSpec {
    Natural { bimodule: String, natural: NaturalSpec },
    /// The odd fiber of a Z₂-bundle with ♮ = *.
    FromBundle(String),
    /// M̃ ⊗ X ⊗ M for a named bimodule M.
    Transport { bimodule: String, involution: String },
}

/// The identification φ: M̃⊗X⊗M → Y, as a multiple of the identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhiSpec {
    Identity,
    Scaled(Scalar),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum TaskKind {
    VerifyBundle { bundle: String },
    WatataniIndex { bundle: String },
    BasicConstruction {
        bundle: String,
        #[serde(default)]
        witness_seed: u64,
    },
    BundleIsomorphism { bundle: String },
    IdentityEquivalence { bundle: String },
    CrossedProduct { alpha: String, beta: String, lambda: String },
    /// With `f` omitted the automorphism is searched for.
    Reconstruction {
        a: String,
        b: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        f: Option<Vec<usize>>,
    },
    VerifyInvolutive { involution: String },
    Linking { involution: String },
    TransportFunctoriality { first: String, second: String, involution: String },
    BuildCM { bimodule: String, x: String, y: String, phi: PhiSpec },
    InvolutiveMorita {
        x: String,
        y: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        bimodule: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        phi: Option<PhiSpec>,
    },
    /// M and Φ from the identity equivalence bundle of a Z₂-bundle, then C_M.
    Extract { bundle: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Task {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    #[serde(flatten)]
    pub kind: TaskKind,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub groups: Vec<Def<GroupSpec>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub algebras: Vec<Def<AlgebraSpec>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bundles: Vec<Def<BundleSpec>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bimodules: Vec<Def<BimoduleSpec>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub actions: Vec<Def<ActionSpec>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub involutions: Vec<Def<InvolutionSpec>>,
    pub tasks: Vec<Task>,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }
}
