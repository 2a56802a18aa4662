//! Wire format: 4-byte big-endian length prefix + UTF-8 JSON object.
//!
//! Every message carries `"v": 1` and a `"type"` tag from {HELLO, SETUP,
//! BELL_RESULT, PAULI_ESTIMATE, PURITY, RESULT, ERROR}. Bell labels travel
//! as base-4 digit strings with the most significant digit at qubit 0.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::ProtocolError;

pub const PROTOCOL_VERSION: u32 = 1;
/// Upper bound on a single frame; anything larger is a protocol violation.
pub const MAX_FRAME_BYTES: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum Payload {
    #[serde(rename = "HELLO")]
    Hello { n: usize, n1: u64, n2: u64, n3: u64, purity_mode: String, role: String },
    #[serde(rename = "SETUP")]
    Setup {
        /// 32-byte coin seed, hex encoded.
        seed: String,
    },
    #[serde(rename = "BELL_RESULT")]
    BellResult {
        i: u64,
        /// Base-4 label digits, qubit 0 first.
        a: String,
    },
    #[serde(rename = "PAULI_ESTIMATE")]
    PauliEstimate { i: u64, value: f64 },
    #[serde(rename = "PURITY")]
    Purity { value: f64 },
    #[serde(rename = "RESULT")]
    Result { f: f64 },
    #[serde(rename = "ERROR")]
    Error { reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Message {
    pub v: u32,
    #[serde(flatten)]
    pub payload: Payload,
}

impl Message {
    pub fn new(payload: Payload) -> Self {
        Message { v: PROTOCOL_VERSION, payload }
    }

    pub fn error(reason: impl Into<String>) -> Self {
        Message::new(Payload::Error { reason: reason.into() })
    }

    pub fn type_name(&self) -> &'static str {
        match self.payload {
            Payload::Hello { .. } => "HELLO",
            Payload::Setup { .. } => "SETUP",
            Payload::BellResult { .. } => "BELL_RESULT",
            Payload::PauliEstimate { .. } => "PAULI_ESTIMATE",
            Payload::Purity { .. } => "PURITY",
            Payload::Result { .. } => "RESULT",
            Payload::Error { .. } => "ERROR",
        }
    }
}

pub fn write_frame(w: &mut impl Write, msg: &Message) -> Result<(), ProtocolError> {
    let bytes = serde_json::to_vec(msg).map_err(|e| ProtocolError::Channel(e.to_string()))?;
    if bytes.len() > MAX_FRAME_BYTES {
        return Err(ProtocolError::Violation("frame too large".into()));
    }
    w.write_all(&(bytes.len() as u32).to_be_bytes())
        .and_then(|_| w.write_all(&bytes))
        .and_then(|_| w.flush())
        .map_err(|e| ProtocolError::Channel(e.to_string()))
}

pub fn read_frame(r: &mut impl Read) -> Result<Message, ProtocolError> {
    let mut len_bytes = [0u8; 4];
    r.read_exact(&mut len_bytes).map_err(|e| ProtocolError::Channel(e.to_string()))?;
    let len = u32::from_be_bytes(len_bytes) as usize;
    if len > MAX_FRAME_BYTES {
        return Err(ProtocolError::Violation(format!("frame of {len} bytes exceeds cap")));
    }
    let mut buf = vec![0u8; len];
    r.read_exact(&mut buf).map_err(|e| ProtocolError::Channel(e.to_string()))?;
    serde_json::from_slice(&buf)
        .map_err(|e| ProtocolError::Violation(format!("malformed message: {e}")))
}
