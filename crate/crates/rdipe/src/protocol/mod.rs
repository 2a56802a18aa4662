//! The two-party distributed inner-product estimation engine.
//!
//! Both parties hold copies of an n-qubit state and estimate the cosine
//! `c(ρ,σ) = tr(ρσ)/√(tr ρ² tr σ²)` from N₁ shared Bell-sample labels and
//! 2N₁ exchanged Pauli-expectation estimates (N₂ shots each), plus purity
//! values A and B. The engine is a pair of deterministic state machines over
//! an abstract duplex channel; in-process and TCP execution use the same
//! driver and produce bitwise-identical results and transcripts for equal
//! seeds.

pub mod channel;
pub mod machine;
pub mod message;

pub use channel::{memory_pair, Channel, MemoryChannel, TcpChannel};
pub use machine::{Direction, LoggedMessage, PartyMachine, RoundRecord, Transcript};
pub use message::{Message, Payload, PROTOCOL_VERSION};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::states::{QuantumState, StateError};

#[derive(Debug, Error)]
pub enum ProtocolError {
    #[error("config mismatch: {0}")]
    ConfigMismatch(String),
    #[error("protocol violation: {0}")]
    Violation(String),
    #[error("unsupported protocol version {0}")]
    VersionMismatch(u32),
    #[error("channel error: {0}")]
    Channel(String),
    #[error("peer aborted: {0}")]
    PeerError(String),
    #[error("purity {0} is not above 1/2, required for the mixed-state estimator")]
    PurityTooLow(f64),
    #[error("estimator needs at least one round")]
    EmptyRounds,
    #[error("purity estimates must be positive, got A={0}, B={1}")]
    BadPurityEstimates(f64, f64),
    #[error(transparent)]
    State(#[from] StateError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Alice,
    Bob,
}

impl std::fmt::Display for Role {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Role::Alice => write!(f, "alice"),
            Role::Bob => write!(f, "bob"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PurityMode {
    /// Use the exact purity (the A = tr ρ² simplification).
    Exact,
    /// Estimate purities from N₃ extra Bell samples.
    Estimated,
}

impl std::fmt::Display for PurityMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PurityMode::Exact => write!(f, "exact"),
            PurityMode::Estimated => write!(f, "estimated"),
        }
    }
}

impl std::str::FromStr for PurityMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(PurityMode::Exact),
            "estimated" => Ok(PurityMode::Estimated),
            other => Err(format!("unknown purity mode '{other}'")),
        }
    }
}

/// Joint run configuration; per-party views are derived from it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProtocolConfig {
    pub n: usize,
    pub n1: u64,
    pub n2: u64,
    pub n3: u64,
    pub purity_mode: PurityMode,
    pub seed_alice: u64,
    pub seed_bob: u64,
}

impl ProtocolConfig {
    /// Explicit round/shot counts.
    pub fn explicit(n: usize, n1: u64, n2: u64, seed_alice: u64, seed_bob: u64) -> Self {
        ProtocolConfig {
            n,
            n1,
            n2,
            n3: n1.saturating_mul(n2),
            purity_mode: PurityMode::Exact,
            seed_alice,
            seed_bob,
        }
    }

    /// Derive N₁, N₂ from a target (ε, δ) via the closed-form plan.
    pub fn planned(n: usize, epsilon: f64, delta: f64, seed_alice: u64, seed_bob: u64) -> Self {
        let plan = crate::distributions::sample_size_plan(n, epsilon, delta);
        Self::explicit(n, plan.n1, plan.n2, seed_alice, seed_bob)
    }

    pub fn with_purity_mode(mut self, mode: PurityMode, n3: u64) -> Self {
        self.purity_mode = mode;
        self.n3 = n3;
        self
    }

    pub fn party(&self, role: Role) -> PartyConfig {
        PartyConfig {
            n: self.n,
            n1: self.n1,
            n2: self.n2,
            n3: self.n3,
            purity_mode: self.purity_mode,
            seed: match role {
                Role::Alice => self.seed_alice,
                Role::Bob => self.seed_bob,
            },
        }
    }

    pub fn validate(&self) -> Result<(), ProtocolError> {
        self.party(Role::Alice).validate()
    }
}

/// One party's view of the configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartyConfig {
    pub n: usize,
    pub n1: u64,
    pub n2: u64,
    pub n3: u64,
    pub purity_mode: PurityMode,
    pub seed: u64,
}

impl PartyConfig {
    pub fn validate(&self) -> Result<(), ProtocolError> {
        if self.n1 < 1 || self.n2 < 1 {
            return Err(ProtocolError::ConfigMismatch("N₁ and N₂ must be at least 1".into()));
        }
        if self.purity_mode == PurityMode::Estimated && self.n3 < 1 {
            return Err(ProtocolError::ConfigMismatch(
                "estimated purity mode requires N₃ ≥ 1".into(),
            ));
        }
        Ok(())
    }
}

/// The round-averaged estimator
/// `f = (1/N₁) Σᵢ 2αᵢβᵢ / (αᵢ²√(B/A) + βᵢ²√(A/B))`.
///
/// A round with αᵢ = βᵢ = 0 contributes 0 (the denominator vanishes only
/// there; zero is the conservative choice and is recorded per round so the
/// convention can be re-weighed offline).
pub fn estimator_f(rounds: &[(f64, f64)], a: f64, b: f64) -> Result<f64, ProtocolError> {
    if rounds.is_empty() {
        return Err(ProtocolError::EmptyRounds);
    }
    if !(a > 0.0 && b > 0.0) {
        return Err(ProtocolError::BadPurityEstimates(a, b));
    }
    let w_a = (b / a).sqrt();
    let w_b = (a / b).sqrt();
    let mut acc = 0.0;
    for &(alpha, beta) in rounds {
        let denom = alpha * alpha * w_a + beta * beta * w_b;
        if denom > 0.0 {
            acc += 2.0 * alpha * beta / denom;
        }
    }
    Ok(acc / rounds.len() as f64)
}

/// Run one party's machine over a channel until completion.
pub fn drive(machine: &mut PartyMachine, ch: &mut impl Channel) -> Result<f64, ProtocolError> {
    let mut outgoing = machine.start()?;
    loop {
        for m in outgoing.drain(..) {
            ch.send(&m)?;
        }
        if machine.is_done() {
            return Ok(machine.result().expect("terminal state carries f"));
        }
        let incoming = ch.recv()?;
        match machine.step(incoming) {
            Ok(next) => outgoing = next,
            Err(e) => {
                if let Some(notice) = machine.error_notice() {
                    let _ = ch.send(&notice);
                }
                return Err(e);
            }
        }
    }
}

/// Outcome of an in-process run: the estimate plus both parties' transcripts.
#[derive(Debug, Clone)]
pub struct RdipeOutcome {
    pub f: f64,
    pub transcript_alice: Transcript,
    pub transcript_bob: Transcript,
}

/// Execute the full protocol in-process: both state machines over an
/// in-memory channel pair, exactly as a networked run would proceed.
pub fn run_rdipe(
    state_a: &QuantumState,
    state_b: &QuantumState,
    config: &ProtocolConfig,
) -> Result<RdipeOutcome, ProtocolError> {
    if state_a.num_qubits() != state_b.num_qubits() {
        return Err(ProtocolError::ConfigMismatch(format!(
            "states have {} vs {} qubits",
            state_a.num_qubits(),
            state_b.num_qubits()
        )));
    }
    let mut alice = PartyMachine::new(Role::Alice, state_a.clone(), config.party(Role::Alice))?;
    let mut bob = PartyMachine::new(Role::Bob, state_b.clone(), config.party(Role::Bob))?;
    let (mut ch_a, mut ch_b) = memory_pair();
    let (res_a, res_b) = std::thread::scope(|scope| {
        let bob_handle = scope.spawn(move || {
            let r = drive(&mut bob, &mut ch_b);
            (r, bob.into_transcript())
        });
        let res_a = drive(&mut alice, &mut ch_a);
        drop(ch_a);
        let res_b = bob_handle.join().expect("bob thread");
        (res_a, res_b)
    });
    let transcript_alice = alice.into_transcript();
    let (res_b, transcript_bob) = res_b;
    let f = res_a?;
    let f_b = res_b?;
    debug_assert_eq!(f.to_bits(), f_b.to_bits());
    Ok(RdipeOutcome { f, transcript_alice, transcript_bob })
}
