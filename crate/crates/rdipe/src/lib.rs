//! Distributed inner product estimation for real quantum states.
//!
//! Two remote parties, each holding copies of an n-qubit state, estimate the
//! normalized overlap `tr(ρσ)/sqrt(tr ρ² tr σ²)` using only Bell-basis
//! two-copy measurements, single-copy Pauli measurements, and classical
//! communication. The crate simulates the full pipeline at desk scale:
//!
//! - [`pauli`]: bit-packed n-qubit Pauli strings and Bell-outcome labels.
//! - [`clifford`]: sign-tracked tableaus for the real Clifford group,
//!   random circuits and exhaustive small-n enumeration.
//! - [`states`]: dense state vectors / density matrices and the structured
//!   `C|W⟩`-type backend with closed-form expectations.
//! - [`sampling`]: exact Bell-basis samplers and shot-noise simulation.
//! - [`distributions`]: Pauli/Bell distributions, CDFs of squared
//!   expectations, and sample-complexity planning.
//! - [`protocol`]: the two-party estimation protocol as communicating state
//!   machines over an in-process or TCP channel.
//! - [`noise`]: noise channels, trace distance, robustness experiments.
//! - [`verify`]: brute-force oracles and numerical checks (twirl identities,
//!   entanglement scaling, Pauli counting bounds).
//!
//! See the `examples/` directory for one runnable program per capability and
//! the `rdipe` binary for a command-line front end.

pub mod clifford;
pub mod cli;
pub mod distributions;
pub mod noise;
pub mod pauli;
pub mod protocol;
pub mod rng;
pub mod sampling;
pub mod states;
pub mod verify;

pub use pauli::PauliString;
pub use states::{CwState, DenseState, QuantumState};
