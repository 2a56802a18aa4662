//! JSON state spec files used by the CLI to describe protocol inputs.
//!
//! ```json
//! {"family": "w", "n": 8, "clifford": {"random": {"depth": 80, "seed": 7}}}
//! {"family": "dicke", "n": 8, "k": 2, "clifford": {"gates": ["h 0", "cnot 0 1"]}}
//! {"family": "custom", "n": 3, "support": [{"bits": "100", "coeff": 1.0}]}
//! ```
//!
//! `bits` strings list site 0 first. The Clifford block is optional (identity
//! tableau when absent).

use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{CwState, StateError};
use crate::clifford::{random_real_clifford, Gate, RealCliffordTableau};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateSpec {
    pub family: String,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support: Option<Vec<SupportEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clifford: Option<CliffordSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SupportEntry {
    pub bits: String,
    pub coeff: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CliffordSpec {
    Gates { gates: Vec<String> },
    Random { random: RandomCircuitSpec },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RandomCircuitSpec {
    pub depth: usize,
    pub seed: u64,
}

impl StateSpec {
    pub fn w(n: usize) -> Self {
        StateSpec { family: "w".into(), n, k: None, support: None, clifford: None }
    }

    pub fn dicke(n: usize, k: usize) -> Self {
        StateSpec { family: "dicke".into(), n, k: Some(k), support: None, clifford: None }
    }

    pub fn with_random_clifford(mut self, depth: usize, seed: u64) -> Self {
        self.clifford = Some(CliffordSpec::Random { random: RandomCircuitSpec { depth, seed } });
        self
    }

    pub fn from_json(s: &str) -> Result<Self, StateError> {
        serde_json::from_str(s).map_err(|e| StateError::BadSpec(e.to_string()))
    }

    pub fn from_file(path: &Path) -> Result<Self, StateError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| StateError::BadSpec(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    fn tableau(&self) -> Result<RealCliffordTableau, StateError> {
        match &self.clifford {
            None => Ok(RealCliffordTableau::identity(self.n)),
            Some(CliffordSpec::Gates { gates }) => {
                let mut t = RealCliffordTableau::identity(self.n);
                for g in gates {
                    let gate =
                        Gate::from_str(g).map_err(|e| StateError::BadSpec(e.to_string()))?;
                    t.apply_gate(gate)?;
                }
                Ok(t)
            }
            Some(CliffordSpec::Random { random }) => {
                let mut rng = crate::rng::master(random.seed);
                Ok(random_real_clifford(self.n, random.depth, &mut rng))
            }
        }
    }

    /// Build the described state.
    pub fn build(&self) -> Result<CwState, StateError> {
        let base = match self.family.as_str() {
            "w" => CwState::make_w_state(self.n)?,
            "dicke" => {
                let k = self
                    .k
                    .ok_or_else(|| StateError::BadSpec("dicke spec requires k".into()))?;
                CwState::make_dicke(self.n, k)?
            }
            "custom" => {
                let entries = self
                    .support
                    .as_ref()
                    .ok_or_else(|| StateError::BadSpec("custom spec requires support".into()))?;
                let mut support = Vec::with_capacity(entries.len());
                for e in entries {
                    if e.bits.len() != self.n {
                        return Err(StateError::BadSpec(format!(
                            "support bitstring '{}' does not have {} bits",
                            e.bits, self.n
                        )));
                    }
                    let mut bits: u128 = 0;
                    for (i, c) in e.bits.chars().enumerate() {
                        match c {
                            '1' => bits |= 1 << i,
                            '0' => {}
                            _ => {
                                return Err(StateError::BadSpec(format!(
                                    "bad bit '{c}' in '{}'",
                                    e.bits
                                )))
                            }
                        }
                    }
                    support.push((bits, e.coeff));
                }
                CwState::custom(self.n, support)?
            }
            other => return Err(StateError::BadSpec(format!("unknown family '{other}'"))),
        };
        base.with_tableau(self.tableau()?)
    }
}
