//! Clifford-rotated sparse superpositions: states `C·Σ_z c_z|z⟩` with a real
//! Clifford tableau `C` and a polynomial-size computational-basis support.
//!
//! The W state and Dicke states are the built-in families; arbitrary real
//! supports are accepted up to the cap `4n²`. Expectations are evaluated in
//! O(|support|·n) by pulling the Pauli through the tableau, without ever
//! building a dense vector.

use std::collections::HashMap;

use crate::clifford::RealCliffordTableau;
use crate::pauli::PauliString;
use crate::states::dense::{DenseState, C64};
use crate::states::{StateError, MAX_DENSE_VECTOR_QUBITS};

/// Support cap enforcing the poly(n) regime.
pub fn default_support_cap(n: usize) -> usize {
    4 * n * n
}

/// How the support was built; closed-form samplers dispatch on this.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupportFamily {
    /// Hamming-weight-1 uniform superposition.
    W,
    /// Hamming-weight-k uniform superposition.
    Dicke(usize),
    Custom,
}

#[derive(Debug, Clone)]
pub struct CwState {
    n: usize,
    tableau: RealCliffordTableau,
    /// Cached inverse tableau; expectations conjugate by C† per call.
    inverse: RealCliffordTableau,
    support: Vec<(u128, f64)>,
    index: HashMap<u128, usize>,
    family: SupportFamily,
}

const NORM_TOL: f64 = 1e-12;

impl CwState {
    /// The n-qubit W state `Σ_{|z|=1} |z⟩/√n` (identity tableau).
    pub fn make_w_state(n: usize) -> Result<Self, StateError> {
        Self::make_dicke(n, 1).map(|mut s| {
            s.family = SupportFamily::W;
            s
        })
    }

    /// Dicke state with k excitations: uniform positive coefficients over all
    /// Hamming-weight-k bitstrings (identity tableau).
    pub fn make_dicke(n: usize, k: usize) -> Result<Self, StateError> {
        assert!(n >= 1 && k >= 1 && k <= n, "make_dicke requires 1 ≤ k ≤ n");
        assert!(n <= 128, "support bitstrings are capped at 128 qubits");
        let cap = default_support_cap(n);
        let mut bits = Vec::new();
        // Gosper's hack over weight-k strings.
        let mut v: u128 = (1 << k) - 1;
        let limit: u128 = if n == 128 { u128::MAX } else { (1 << n) - 1 };
        loop {
            bits.push(v);
            if bits.len() > cap {
                return Err(StateError::SupportCapExceeded { got: bits.len(), cap });
            }
            let c = v & v.wrapping_neg();
            let Some(r) = v.checked_add(c) else { break };
            if r > limit {
                break;
            }
            v = (((r ^ v) >> 2) / c) | r;
        }
        let coeff = 1.0 / (bits.len() as f64).sqrt();
        let support: Vec<(u128, f64)> = bits.into_iter().map(|b| (b, coeff)).collect();
        Self::from_parts(n, RealCliffordTableau::identity(n), support, SupportFamily::Dicke(k))
    }

    /// Arbitrary real support; coefficients are normalized.
    pub fn custom(n: usize, support: Vec<(u128, f64)>) -> Result<Self, StateError> {
        Self::custom_with_cap(n, support, default_support_cap(n))
    }

    pub fn custom_with_cap(
        n: usize,
        mut support: Vec<(u128, f64)>,
        cap: usize,
    ) -> Result<Self, StateError> {
        assert!(n <= 128);
        if support.len() > cap {
            return Err(StateError::SupportCapExceeded { got: support.len(), cap });
        }
        let norm2: f64 = support.iter().map(|(_, c)| c * c).sum();
        if norm2 <= 0.0 {
            return Err(StateError::NotNormalized(1.0));
        }
        let scale = norm2.sqrt();
        for (_, c) in &mut support {
            *c /= scale;
        }
        Self::from_parts(n, RealCliffordTableau::identity(n), support, SupportFamily::Custom)
    }

    fn from_parts(
        n: usize,
        tableau: RealCliffordTableau,
        support: Vec<(u128, f64)>,
        family: SupportFamily,
    ) -> Result<Self, StateError> {
        let norm2: f64 = support.iter().map(|(_, c)| c * c).sum();
        if (norm2 - 1.0).abs() > NORM_TOL {
            return Err(StateError::NotNormalized((norm2 - 1.0).abs()));
        }
        let inverse = tableau.inverse()?;
        let index = support.iter().enumerate().map(|(i, (b, _))| (*b, i)).collect();
        Ok(CwState { n, tableau, inverse, support, index, family })
    }

    /// Attach a Clifford rotation: the state becomes `C|support⟩`.
    pub fn with_tableau(self, tableau: RealCliffordTableau) -> Result<Self, StateError> {
        if tableau.num_qubits() != self.n {
            return Err(StateError::DimensionMismatch(tableau.num_qubits(), self.n));
        }
        Self::from_parts(self.n, tableau, self.support, self.family)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn tableau(&self) -> &RealCliffordTableau {
        &self.tableau
    }

    pub fn inverse_tableau(&self) -> &RealCliffordTableau {
        &self.inverse
    }

    pub fn support(&self) -> &[(u128, f64)] {
        &self.support
    }

    pub fn family(&self) -> SupportFamily {
        self.family
    }

    pub fn contains(&self, bits: u128) -> Option<f64> {
        self.index.get(&bits).map(|&i| self.support[i].1)
    }

    /// Exact `⟨P⟩`: pull P through the Clifford, then sum matrix elements
    /// `⟨z⊕x|Q|z⟩ = i^y (−1)^{z·z_Q}` over support pairs.
    pub fn expectation(&self, p: &PauliString) -> Result<f64, StateError> {
        if p.num_qubits() != self.n {
            return Err(StateError::DimensionMismatch(p.num_qubits(), self.n));
        }
        let q = self.inverse.conjugate(p)?;
        let (x, z) = q.xz_u128();
        let y = q.y_count();
        let mut sum = 0.0f64;
        for &(zb, c) in &self.support {
            if let Some(&j) = self.index.get(&(zb ^ x)) {
                let sgn = if ((zb & z).count_ones()) % 2 == 1 { -1.0 } else { 1.0 };
                sum += c * self.support[j].1 * sgn;
            }
        }
        if y % 2 == 1 {
            // Terms cancel in (z ↔ z⊕x) pairs; the residual imaginary part
            // of i^y·sum must vanish.
            debug_assert!(sum.abs() < 1e-9);
            return Ok(0.0);
        }
        let i_pow = if y % 4 == 2 { -1.0 } else { 1.0 };
        Ok(q.sign() as f64 * i_pow * sum)
    }

    /// Pure states have unit purity.
    pub fn purity(&self) -> f64 {
        1.0
    }

    /// Dense amplitude vector of `C|support⟩` (requires the gate log).
    pub fn to_dense(&self) -> Result<DenseState, StateError> {
        if self.n > MAX_DENSE_VECTOR_QUBITS {
            return Err(StateError::TooLargeForDense(self.n, MAX_DENSE_VECTOR_QUBITS));
        }
        let log = self.tableau.gate_log().ok_or(StateError::GateLogMissing)?;
        let mut v = vec![C64::new(0.0, 0.0); 1 << self.n];
        for &(bits, c) in &self.support {
            v[bits as usize] = C64::new(c, 0.0);
        }
        for g in log {
            g.apply_vec(&mut v);
        }
        DenseState::from_vector(self.n, nalgebra::DVector::from_vec(v))
    }
}

/// A random element of the CW(n) class: `C|W_n⟩` with C drawn from a random
/// real-Clifford circuit at the default depth 10n.
pub fn random_cw_state(n: usize, rng: &mut impl rand::Rng) -> CwState {
    let depth = crate::clifford::default_depth(n);
    let t = crate::clifford::random_real_clifford(n, depth, rng);
    CwState::make_w_state(n)
        .expect("W state exists for n ≥ 1")
        .with_tableau(t)
        .expect("matching qubit count")
}
