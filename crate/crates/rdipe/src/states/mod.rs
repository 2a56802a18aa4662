//! State backends: dense vectors / density matrices and structured
//! Clifford-rotated sparse superpositions, with exact expectations,
//! purities, overlaps and entanglement entropies.

pub mod cw;
pub mod dense;
pub mod spec;

pub use cw::{default_support_cap, random_cw_state, CwState, SupportFamily};
pub use dense::{DenseRepr, DenseState, C64};
pub use spec::StateSpec;

use crate::pauli::PauliString;
use thiserror::Error;

/// Largest qubit count für which a pure state is materialized as a dense
/// amplitude vector.
pub const MAX_DENSE_VECTOR_QUBITS: usize = 14;
/// Largest qubit count for which a density matrix is materialized.
pub const MAX_DENSE_DENSITY_QUBITS: usize = 10;

#[derive(Debug, Error)]
pub enum StateError {
    #[error("state on {0} qubits is too large for a dense representation (max {1})")]
    TooLargeForDense(usize, usize),
    #[error("qubit count mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("state is not normalized: deviation {0:.3e}")]
    NotNormalized(f64),
    #[error("density matrix is not Hermitian: deviation {0:.3e}")]
    NotHermitian(f64),
    #[error("density matrix is not positive semidefinite: min eigenvalue {0:.3e}")]
    NotPositive(f64),
    #[error("operation requires an even qubit count, got {0}")]
    OddN(usize),
    #[error("support size {got} exceeds the polynomial cap {cap}")]
    SupportCapExceeded { got: usize, cap: usize },
    #[error("operation requires a real state")]
    NotReal,
    #[error("tableau carries no gate log; dense reconstruction unavailable")]
    GateLogMissing,
    #[error("site {site} out of range for {n} qubits")]
    InvalidSite { site: usize, n: usize },
    #[error("invalid state spec: {0}")]
    BadSpec(String),
    #[error(transparent)]
    Pauli(#[from] crate::pauli::PauliError),
    #[error(transparent)]
    Clifford(#[from] crate::clifford::CliffordError),
}

/// A quantum state in either backend.
#[derive(Debug, Clone)]
pub enum QuantumState {
    Dense(DenseState),
    Cw(CwState),
}

impl QuantumState {
    pub fn num_qubits(&self) -> usize {
        match self {
            QuantumState::Dense(s) => s.num_qubits(),
            QuantumState::Cw(s) => s.num_qubits(),
        }
    }

    /// Whether the state has a real representation in the computational basis.
    pub fn is_real(&self) -> bool {
        match self {
            QuantumState::Dense(s) => s.is_real(),
            QuantumState::Cw(_) => true,
        }
    }

    pub fn is_pure(&self) -> bool {
        match self {
            QuantumState::Dense(s) => s.is_pure(),
            QuantumState::Cw(_) => true,
        }
    }

    /// Exact expectation value `⟨P⟩`.
    pub fn expectation(&self, p: &PauliString) -> Result<f64, StateError> {
        match self {
            QuantumState::Dense(s) => s.expectation(p),
            QuantumState::Cw(s) => s.expectation(p),
        }
    }

    /// Exact purity `tr ρ²`.
    pub fn purity(&self) -> f64 {
        match self {
            QuantumState::Dense(s) => s.purity(),
            QuantumState::Cw(_) => 1.0,
        }
    }

    /// Dense view of the state (converts the structured backend, `n ≤ 14`).
    pub fn to_dense(&self) -> Result<DenseState, StateError> {
        match self {
            QuantumState::Dense(s) => Ok(s.clone()),
            QuantumState::Cw(s) => s.to_dense(),
        }
    }
}

impl From<DenseState> for QuantumState {
    fn from(s: DenseState) -> Self {
        QuantumState::Dense(s)
    }
}

impl From<CwState> for QuantumState {
    fn from(s: CwState) -> Self {
        QuantumState::Cw(s)
    }
}

/// Exact overlap `tr(ρσ)`; both states must be dense-capable.
pub fn overlap(a: &QuantumState, b: &QuantumState) -> Result<f64, StateError> {
    if a.num_qubits() != b.num_qubits() {
        return Err(StateError::DimensionMismatch(a.num_qubits(), b.num_qubits()));
    }
    dense::overlap(&a.to_dense()?, &b.to_dense()?)
}

/// Exact cosine `c(ρ,σ) = tr(ρσ)/√(tr ρ² tr σ²)`, the quantity the
/// distributed protocol estimates. Equals 1 iff ρ ∝ σ as Hilbert-Schmidt
/// vectors.
pub fn cosine_oracle(a: &QuantumState, b: &QuantumState) -> Result<f64, StateError> {
    Ok(overlap(a, b)? / (a.purity() * b.purity()).sqrt())
}

/// Second Rényi entropy of the reduced state after tracing out the first
/// `n/2` qubits, in bits (`−log₂ tr ρ_red²`).
pub fn renyi2_half(s: &QuantumState) -> Result<f64, StateError> {
    s.to_dense()?.renyi2_half()
}
