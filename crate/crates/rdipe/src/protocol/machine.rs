//! Per-party state machine realizing the two-party estimation protocol.
//!
//! Phases: HELLO → SETUP → ROUNDS → PURITY → RESULT. Each party is
//! single-threaded and deterministic given its master seed; the shared
//! per-round coin that picks the Bell-sampling party is bit i of
//! SHA-256(xor of the two setup seeds ‖ block counter), so neither party
//! controls it after the setup exchange (honest-but-curious setting).

use rand::RngCore;
use sha2::{Digest, Sha256};

use super::message::{Message, Payload, PROTOCOL_VERSION};
use super::{estimator_f, PartyConfig, ProtocolError, PurityMode, Role};
use crate::pauli::PauliString;
use crate::rng::{substream, Domain};
use crate::sampling::{estimate_purity, pauli_shots, BellSampler};
use crate::states::QuantumState;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Phase {
    AwaitHello,
    AwaitSetup,
    Rounds,
    Purity,
    AwaitResult,
    Done,
    Failed,
}

/// Direction of a logged message, from this party's perspective.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Send,
    Recv,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct LoggedMessage {
    pub dir: Direction,
    pub msg: Message,
}

/// Completed round: who sampled, the label, and both estimates.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct RoundRecord {
    pub i: u64,
    pub sampler: Role,
    pub a: String,
    pub alpha: f64,
    pub beta: f64,
}

/// Full per-party record of a protocol run.
#[derive(Debug, Clone, Default, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Transcript {
    pub role: Option<Role>,
    pub messages: Vec<LoggedMessage>,
    pub rounds: Vec<RoundRecord>,
    pub purity_a: Option<f64>,
    pub purity_b: Option<f64>,
    pub f: Option<f64>,
}

impl Transcript {
    /// Persist as JSON lines: one `meta` line, one line per message, one per
    /// round, and a closing `final` line.
    pub fn write_jsonl(&self, w: &mut impl std::io::Write) -> std::io::Result<()> {
        writeln!(
            w,
            "{}",
            serde_json::json!({"t": "meta", "role": self.role, "messages": self.messages.len()})
        )?;
        for m in &self.messages {
            writeln!(w, "{}", serde_json::json!({"t": "msg", "dir": m.dir, "msg": m.msg}))?;
        }
        for r in &self.rounds {
            writeln!(w, "{}", serde_json::json!({"t": "round", "round": r}))?;
        }
        writeln!(
            w,
            "{}",
            serde_json::json!({
                "t": "final", "purity_a": self.purity_a, "purity_b": self.purity_b, "f": self.f
            })
        )
    }

    pub fn to_jsonl_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_jsonl(&mut buf).expect("in-memory write");
        String::from_utf8(buf).expect("valid utf8")
    }

    pub fn count_sent(&self, type_name: &str) -> usize {
        self.messages
            .iter()
            .filter(|m| m.dir == Direction::Send && m.msg.type_name() == type_name)
            .count()
    }

    pub fn count_received(&self, type_name: &str) -> usize {
        self.messages
            .iter()
            .filter(|m| m.dir == Direction::Recv && m.msg.type_name() == type_name)
            .count()
    }
}

pub struct PartyMachine {
    role: Role,
    cfg: PartyConfig,
    state: QuantumState,
    sampler: BellSampler,
    phase: Phase,
    my_seed: [u8; 32],
    coin_key: Option<[u8; 32]>,
    /// Round currently in flight, 1-based.
    round: u64,
    current_label: Option<PauliString>,
    my_estimate: Option<f64>,
    peer_estimate: Option<f64>,
    my_purity: Option<f64>,
    peer_purity: Option<f64>,
    f: Option<f64>,
    transcript: Transcript,
    error_notice: Option<Message>,
}

impl PartyMachine {
    pub fn new(role: Role, state: QuantumState, cfg: PartyConfig) -> Result<Self, ProtocolError> {
        cfg.validate()?;
        if state.num_qubits() != cfg.n {
            return Err(ProtocolError::ConfigMismatch(format!(
                "state has {} qubits, config says {}",
                state.num_qubits(),
                cfg.n
            )));
        }
        let purity = state.purity();
        if purity <= 0.5 {
            return Err(ProtocolError::PurityTooLow(purity));
        }
        let sampler = BellSampler::new(&state)?;
        let mut my_seed = [0u8; 32];
        substream(cfg.seed, Domain::Setup, 0).fill_bytes(&mut my_seed);
        Ok(PartyMachine {
            role,
            cfg,
            state,
            sampler,
            phase: Phase::AwaitHello,
            my_seed,
            coin_key: None,
            round: 0,
            current_label: None,
            my_estimate: None,
            peer_estimate: None,
            my_purity: None,
            peer_purity: None,
            f: None,
            transcript: Transcript { role: Some(role), ..Transcript::default() },
            error_notice: None,
        })
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn is_done(&self) -> bool {
        self.phase == Phase::Done
    }

    pub fn result(&self) -> Option<f64> {
        self.f
    }

    /// Best-effort abort notice for the peer after a failed `step`.
    pub fn error_notice(&mut self) -> Option<Message> {
        self.error_notice.take()
    }

    pub fn transcript(&self) -> &Transcript {
        &self.transcript
    }

    pub fn into_transcript(self) -> Transcript {
        self.transcript
    }

    /// Initial messages (the HELLO announcement).
    pub fn start(&mut self) -> Result<Vec<Message>, ProtocolError> {
        let hello = Message::new(Payload::Hello {
            n: self.cfg.n,
            n1: self.cfg.n1,
            n2: self.cfg.n2,
            n3: self.cfg.n3,
            purity_mode: self.cfg.purity_mode.to_string(),
            role: self.role.to_string(),
        });
        Ok(self.emit(vec![hello]))
    }

    /// Consume one incoming message, producing zero or more replies.
    pub fn step(&mut self, incoming: Message) -> Result<Vec<Message>, ProtocolError> {
        self.transcript
            .messages
            .push(LoggedMessage { dir: Direction::Recv, msg: incoming.clone() });
        match self.inner_step(incoming) {
            Ok(out) => Ok(self.emit(out)),
            Err(e) => {
                self.phase = Phase::Failed;
                if !matches!(e, ProtocolError::PeerError(_)) {
                    let notice = Message::error(e.to_string());
                    self.transcript
                        .messages
                        .push(LoggedMessage { dir: Direction::Send, msg: notice.clone() });
                    self.error_notice = Some(notice);
                }
                Err(e)
            }
        }
    }

    fn emit(&mut self, out: Vec<Message>) -> Vec<Message> {
        for m in &out {
            self.transcript.messages.push(LoggedMessage { dir: Direction::Send, msg: m.clone() });
        }
        out
    }

    fn inner_step(&mut self, incoming: Message) -> Result<Vec<Message>, ProtocolError> {
        if incoming.v != PROTOCOL_VERSION {
            return Err(ProtocolError::VersionMismatch(incoming.v));
        }
        if let Payload::Error { reason } = incoming.payload {
            return Err(ProtocolError::PeerError(reason));
        }
        match self.phase {
            Phase::AwaitHello => self.on_hello(incoming),
            Phase::AwaitSetup => self.on_setup(incoming),
            Phase::Rounds => self.on_round_message(incoming),
            Phase::Purity => self.on_purity(incoming),
            Phase::AwaitResult => self.on_result(incoming),
            Phase::Done | Phase::Failed => {
                Err(ProtocolError::Violation(format!("unexpected {} after completion", incoming.type_name())))
            }
        }
    }

    fn on_hello(&mut self, msg: Message) -> Result<Vec<Message>, ProtocolError> {
        let Payload::Hello { n, n1, n2, n3, purity_mode, role } = msg.payload else {
            return Err(ProtocolError::Violation(format!(
                "expected HELLO, got {}",
                msg.type_name()
            )));
        };
        if role == self.role.to_string() {
            return Err(ProtocolError::ConfigMismatch(format!("both parties claim role {role}")));
        }
        if n != self.cfg.n {
            return Err(ProtocolError::ConfigMismatch(format!(
                "qubit count mismatch: {} vs {}",
                self.cfg.n, n
            )));
        }
        if (n1, n2, n3) != (self.cfg.n1, self.cfg.n2, self.cfg.n3) {
            return Err(ProtocolError::ConfigMismatch("round/shot counts differ".into()));
        }
        if purity_mode != self.cfg.purity_mode.to_string() {
            return Err(ProtocolError::ConfigMismatch("purity mode differs".into()));
        }
        self.phase = Phase::AwaitSetup;
        Ok(vec![Message::new(Payload::Setup { seed: hex::encode(self.my_seed) })])
    }

    fn on_setup(&mut self, msg: Message) -> Result<Vec<Message>, ProtocolError> {
        let Payload::Setup { seed } = msg.payload else {
            return Err(ProtocolError::Violation(format!(
                "expected SETUP, got {}",
                msg.type_name()
            )));
        };
        let peer: [u8; 32] = hex::decode(&seed)
            .ok()
            .and_then(|b| b.try_into().ok())
            .ok_or_else(|| ProtocolError::Violation("setup seed must be 32 hex bytes".into()))?;
        let mut key = [0u8; 32];
        for i in 0..32 {
            key[i] = self.my_seed[i] ^ peer[i];
        }
        self.coin_key = Some(key);
        self.phase = Phase::Rounds;
        self.round = 0;
        Ok(self.advance_round()?)
    }

    /// Round i is sampled by Alice iff coin bit i is 0.
    fn sampler_for(&self, round: u64) -> Role {
        let key = self.coin_key.expect("setup complete");
        let idx = round - 1;
        let mut h = Sha256::new();
        h.update(key);
        h.update((idx / 256).to_le_bytes());
        let block = h.finalize();
        let bit = (block[((idx % 256) / 8) as usize] >> (idx % 8)) & 1;
        if bit == 0 {
            Role::Alice
        } else {
            Role::Bob
        }
    }

    /// Move to the next round (or the purity phase), emitting this party's
    /// opening messages for it.
    fn advance_round(&mut self) -> Result<Vec<Message>, ProtocolError> {
        self.round += 1;
        self.current_label = None;
        self.my_estimate = None;
        self.peer_estimate = None;
        if self.round > self.cfg.n1 {
            self.phase = Phase::Purity;
            let value = match self.cfg.purity_mode {
                PurityMode::Exact => self.state.purity(),
                PurityMode::Estimated => {
                    let mut rng = substream(self.cfg.seed, Domain::Purity, 0);
                    estimate_purity(&self.state, self.cfg.n3, &mut rng)
                }
            };
            self.my_purity = Some(value);
            return Ok(vec![Message::new(Payload::Purity { value })]);
        }
        if self.sampler_for(self.round) == self.role {
            let mut bell_rng = substream(self.cfg.seed, Domain::BellRound, self.round);
            let label = self.sampler.sample(&mut bell_rng);
            let alpha = self.estimate(&label)?;
            self.current_label = Some(label.clone());
            self.my_estimate = Some(alpha);
            Ok(vec![
                Message::new(Payload::BellResult { i: self.round, a: label.to_label_digits() }),
                Message::new(Payload::PauliEstimate { i: self.round, value: alpha }),
            ])
        } else {
            Ok(Vec::new())
        }
    }

    fn estimate(&self, label: &PauliString) -> Result<f64, ProtocolError> {
        let mut rng = substream(self.cfg.seed, Domain::ShotRound, self.round);
        Ok(pauli_shots(&self.state, label, self.cfg.n2, &mut rng)?)
    }

    fn on_round_message(&mut self, msg: Message) -> Result<Vec<Message>, ProtocolError> {
        match msg.payload {
            Payload::BellResult { i, a } => {
                if i != self.round {
                    return Err(ProtocolError::Violation(format!(
                        "BELL_RESULT for round {i}, expected {}",
                        self.round
                    )));
                }
                if self.sampler_for(self.round) == self.role {
                    return Err(ProtocolError::Violation(
                        "peer sent BELL_RESULT on this party's sampling round".into(),
                    ));
                }
                if self.current_label.is_some() {
                    return Err(ProtocolError::Violation("duplicate BELL_RESULT".into()));
                }
                let label = PauliString::from_label_digits(&a)
                    .map_err(|e| ProtocolError::Violation(e.to_string()))?;
                if label.num_qubits() != self.cfg.n {
                    return Err(ProtocolError::Violation("label has wrong length".into()));
                }
                let mine = self.estimate(&label)?;
                self.current_label = Some(label);
                self.my_estimate = Some(mine);
                Ok(vec![Message::new(Payload::PauliEstimate { i, value: mine })])
            }
            Payload::PauliEstimate { i, value } => {
                if i != self.round {
                    return Err(ProtocolError::Violation(format!(
                        "PAULI_ESTIMATE for round {i}, expected {}",
                        self.round
                    )));
                }
                if self.peer_estimate.is_some() {
                    return Err(ProtocolError::Violation("duplicate PAULI_ESTIMATE".into()));
                }
                if self.current_label.is_none() {
                    return Err(ProtocolError::Violation(
                        "PAULI_ESTIMATE before the round's BELL_RESULT".into(),
                    ));
                }
                self.peer_estimate = Some(value);
                let mine = self
                    .my_estimate
                    .ok_or_else(|| ProtocolError::Violation("round out of order".into()))?;
                let (alpha, beta) = match self.role {
                    Role::Alice => (mine, value),
                    Role::Bob => (value, mine),
                };
                self.transcript.rounds.push(RoundRecord {
                    i: self.round,
                    sampler: self.sampler_for(self.round),
                    a: self.current_label.as_ref().expect("label set").to_label_digits(),
                    alpha,
                    beta,
                });
                self.advance_round()
            }
            other => Err(ProtocolError::Violation(format!(
                "unexpected {} during rounds",
                Message::new(other).type_name()
            ))),
        }
    }

    fn on_purity(&mut self, msg: Message) -> Result<Vec<Message>, ProtocolError> {
        let Payload::Purity { value } = msg.payload else {
            return Err(ProtocolError::Violation(format!(
                "expected PURITY, got {}",
                msg.type_name()
            )));
        };
        self.peer_purity = Some(value);
        let mine = self.my_purity.expect("own purity sent on phase entry");
        let (a, b) = match self.role {
            Role::Alice => (mine, value),
            Role::Bob => (value, mine),
        };
        self.transcript.purity_a = Some(a);
        self.transcript.purity_b = Some(b);
        let pairs: Vec<(f64, f64)> =
            self.transcript.rounds.iter().map(|r| (r.alpha, r.beta)).collect();
        let f = estimator_f(&pairs, a, b)?;
        self.f = Some(f);
        self.transcript.f = Some(f);
        self.phase = Phase::AwaitResult;
        Ok(vec![Message::new(Payload::Result { f })])
    }

    fn on_result(&mut self, msg: Message) -> Result<Vec<Message>, ProtocolError> {
        let Payload::Result { f } = msg.payload else {
            return Err(ProtocolError::Violation(format!(
                "expected RESULT, got {}",
                msg.type_name()
            )));
        };
        let mine = self.f.expect("own result computed");
        if f.to_bits() != mine.to_bits() {
            return Err(ProtocolError::Violation(format!(
                "result mismatch: peer {f}, local {mine}"
            )));
        }
        self.phase = Phase::Done;
        Ok(Vec::new())
    }
}
