//! Sign-tracked tableaus for the real Clifford group rCl(n).
//!
//! A tableau stores the images of the 2n Pauli generators `X_i`, `Z_i` under
//! conjugation `C·C†`, each a [`PauliString`] with a ±1 sign. The group is
//! generated by {H, X, Z, CNOT, CZ}; the phase gate S is excluded because it
//! is not real. Conjugation of an arbitrary Pauli is a product of images and
//! costs O(n²/64) word operations.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pauli::{PauliError, PauliString, PhasedPauli};

#[derive(Debug, Error)]
pub enum CliffordError {
    #[error("site {site} out of range for {n} qubits (or sites not distinct)")]
    InvalidSite { site: usize, n: usize },
    #[error("group enumeration supported only for n ≤ 2, got {0}")]
    TooLarge(usize),
    #[error("qubit count mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("tableau is internally corrupt: conjugation produced a ±i phase")]
    PhaseNotReal,
    #[error("images do not satisfy the symplectic condition")]
    NotSymplectic,
    #[error("cannot parse gate: {0}")]
    GateParse(String),
}

impl From<PauliError> for CliffordError {
    fn from(e: PauliError) -> Self {
        match e {
            PauliError::PhaseNotReal => CliffordError::PhaseNotReal,
            PauliError::DimensionMismatch(a, b) => CliffordError::DimensionMismatch(a, b),
            PauliError::InvalidSite { site, n } => CliffordError::InvalidSite { site, n },
            PauliError::BadLabel(s) => CliffordError::GateParse(s),
        }
    }
}

/// Generating gates of the real Clifford group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    H(usize),
    X(usize),
    Z(usize),
    /// CNOT with (control, target).
    Cnot(usize, usize),
    Cz(usize, usize),
}

impl Gate {
    pub fn sites(&self) -> (usize, Option<usize>) {
        match *self {
            Gate::H(a) | Gate::X(a) | Gate::Z(a) => (a, None),
            Gate::Cnot(a, b) | Gate::Cz(a, b) => (a, Some(b)),
        }
    }

    fn check_sites(&self, n: usize) -> Result<(), CliffordError> {
        let (a, b) = self.sites();
        if a >= n {
            return Err(CliffordError::InvalidSite { site: a, n });
        }
        if let Some(b) = b {
            if b >= n || a == b {
                return Err(CliffordError::InvalidSite { site: b, n });
            }
        }
        Ok(())
    }

    /// Apply the gate to a complex amplitude vector (little-endian sites).
    pub fn apply_vec(&self, v: &mut [crate::states::dense::C64]) {
        use crate::states::dense;
        match *self {
            Gate::H(q) => dense::apply_single_qubit_vec(v, q, &dense::h_matrix()),
            Gate::X(q) => dense::apply_single_qubit_vec(v, q, &dense::x_matrix()),
            Gate::Z(q) => dense::apply_single_qubit_vec(v, q, &dense::z_matrix()),
            Gate::Cnot(c, t) => dense::apply_cnot_vec(v, c, t),
            Gate::Cz(a, b) => dense::apply_cz_vec(v, a, b),
        }
    }

    /// Apply the gate to a real amplitude vector (all gates are real).
    fn apply_real_vec(&self, v: &mut [f64]) {
        match *self {
            Gate::H(q) => {
                let bit = 1usize << q;
                let s = std::f64::consts::FRAC_1_SQRT_2;
                for k in 0..v.len() {
                    if k & bit == 0 {
                        let (a, b) = (v[k], v[k | bit]);
                        v[k] = s * (a + b);
                        v[k | bit] = s * (a - b);
                    }
                }
            }
            Gate::X(q) => {
                let bit = 1usize << q;
                for k in 0..v.len() {
                    if k & bit == 0 {
                        v.swap(k, k | bit);
                    }
                }
            }
            Gate::Z(q) => {
                let bit = 1usize << q;
                for (k, a) in v.iter_mut().enumerate() {
                    if k & bit != 0 {
                        *a = -*a;
                    }
                }
            }
            Gate::Cnot(c, t) => {
                let (cb, tb) = (1usize << c, 1usize << t);
                for k in 0..v.len() {
                    if k & cb != 0 && k & tb == 0 {
                        v.swap(k, k | tb);
                    }
                }
            }
            Gate::Cz(a, b) => {
                let (ab, bb) = (1usize << a, 1usize << b);
                for (k, amp) in v.iter_mut().enumerate() {
                    if k & ab != 0 && k & bb != 0 {
                        *amp = -*amp;
                    }
                }
            }
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::H(q) => write!(f, "h {q}"),
            Gate::X(q) => write!(f, "x {q}"),
            Gate::Z(q) => write!(f, "z {q}"),
            Gate::Cnot(c, t) => write!(f, "cnot {c} {t}"),
            Gate::Cz(a, b) => write!(f, "cz {a} {b}"),
        }
    }
}

impl FromStr for Gate {
    type Err = CliffordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut it = s.split_whitespace();
        let name = it.next().ok_or_else(|| CliffordError::GateParse(s.into()))?.to_ascii_lowercase();
        let mut arg = || -> Result<usize, CliffordError> {
            it.next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| CliffordError::GateParse(s.into()))
        };
        let gate = match name.as_str() {
            "h" => Gate::H(arg()?),
            "x" => Gate::X(arg()?),
            "z" => Gate::Z(arg()?),
            "cnot" | "cx" => Gate::Cnot(arg()?, arg()?),
            "cz" => Gate::Cz(arg()?, arg()?),
            _ => return Err(CliffordError::GateParse(s.into())),
        };
        if it.next().is_some() {
            return Err(CliffordError::GateParse(s.into()));
        }
        Ok(gate)
    }
}

/// The images of the 2n Pauli generators under a real Clifford unitary.
///
/// `images[i]` is `C X_i C†` and `images[n+i]` is `C Z_i C†`. A gate log is
/// kept by default so dense cross-checks can rebuild the unitary; call
/// [`RealCliffordTableau::strip_gate_log`] to drop it when memory matters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealCliffordTableau {
    n: usize,
    images: Vec<PauliString>,
    gate_log: Option<Vec<Gate>>,
}

impl RealCliffordTableau {
    pub fn identity(n: usize) -> Self {
        use crate::pauli::Letter;
        let mut images = Vec::with_capacity(2 * n);
        for i in 0..n {
            images.push(PauliString::single(n, i, Letter::X).expect("site in range"));
        }
        for i in 0..n {
            images.push(PauliString::single(n, i, Letter::Z).expect("site in range"));
        }
        RealCliffordTableau { n, images, gate_log: Some(Vec::new()) }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    /// Image of `X_k` (k < n) or `Z_{k−n}` (k ≥ n).
    pub fn image(&self, k: usize) -> &PauliString {
        &self.images[k]
    }

    pub fn gate_log(&self) -> Option<&[Gate]> {
        self.gate_log.as_deref()
    }

    pub fn strip_gate_log(&mut self) {
        self.gate_log = None;
    }

    /// Left-compose with a generating gate: the tableau becomes `g·C`.
    pub fn apply_gate(&mut self, gate: Gate) -> Result<(), CliffordError> {
        gate.check_sites(self.n)?;
        for img in &mut self.images {
            apply_gate_to_pauli(img, gate);
        }
        if let Some(log) = &mut self.gate_log {
            log.push(gate);
        }
        // The full symplectic re-check is cubic; only affordable at toy sizes.
        #[cfg(debug_assertions)]
        if self.n <= 6 {
            debug_assert!(self.symplectic_ok());
        }
        Ok(())
    }

    pub fn apply_gates(&mut self, gates: &[Gate]) -> Result<(), CliffordError> {
        for &g in gates {
            self.apply_gate(g)?;
        }
        Ok(())
    }

    /// Conjugate `P ↦ C P C†`; the result carries the accumulated ±1 sign.
    pub fn conjugate(&self, p: &PauliString) -> Result<PauliString, CliffordError> {
        if p.num_qubits() != self.n {
            return Err(CliffordError::DimensionMismatch(p.num_qubits(), self.n));
        }
        // P = s·i^y · Πᵢ X_i^{x_i} · Πⱼ Z_j^{z_j}; conjugate factor by factor.
        let mut acc = PhasedPauli::identity(self.n);
        let mut phase = (p.y_count() % 4) as u8;
        if p.is_negative() {
            phase = (phase + 2) % 4;
        }
        acc.add_phase(phase);
        for i in 0..self.n {
            if p.x_bit(i) {
                acc.mul_assign(&self.images[i]);
            }
        }
        for j in 0..self.n {
            if p.z_bit(j) {
                acc.mul_assign(&self.images[self.n + j]);
            }
        }
        acc.into_string().map_err(|_| CliffordError::PhaseNotReal)
    }

    /// Conjugate by the inverse, `P ↦ C† P C`.
    ///
    /// Computes the inverse tableau on every call; cache [`Self::inverse`]
    /// when conjugating many Paulis.
    pub fn inverse_conjugate(&self, p: &PauliString) -> Result<PauliString, CliffordError> {
        self.inverse()?.conjugate(p)
    }

    /// Tableau of `C†`.
    pub fn inverse(&self) -> Result<RealCliffordTableau, CliffordError> {
        let rows = 2 * self.n;
        let words = (2 * self.n).div_ceil(64);
        // Binary matrix M with row k = (x|z) bits of images[k]; the inverse
        // symplectic map is M⁻¹, found by Gauss-Jordan over GF(2).
        let pack = |p: &PauliString| -> Vec<u64> {
            let mut row = vec![0u64; words];
            for i in 0..self.n {
                if p.x_bit(i) {
                    row[i / 64] |= 1 << (i % 64);
                }
                if p.z_bit(i) {
                    let pos = self.n + i;
                    row[pos / 64] |= 1 << (pos % 64);
                }
            }
            row
        };
        let mut m: Vec<Vec<u64>> = self.images.iter().map(pack).collect();
        let mut inv: Vec<Vec<u64>> = (0..rows)
            .map(|k| {
                let mut row = vec![0u64; words];
                row[k / 64] |= 1 << (k % 64);
                row
            })
            .collect();
        for col in 0..rows {
            let (w, b) = (col / 64, col % 64);
            let pivot = (col..rows)
                .find(|&r| (m[r][w] >> b) & 1 == 1)
                .ok_or(CliffordError::NotSymplectic)?;
            m.swap(col, pivot);
            inv.swap(col, pivot);
            for r in 0..rows {
                if r != col && (m[r][w] >> b) & 1 == 1 {
                    let (mc, ic) = (m[col].clone(), inv[col].clone());
                    for w2 in 0..words {
                        m[r][w2] ^= mc[w2];
                        inv[r][w2] ^= ic[w2];
                    }
                }
            }
        }
        // Row k of inv is the label of C† g_k C; one forward conjugation
        // fixes its sign: C Q C† = s·g_k  ⇒  C† g_k C = s·Q.
        let unpack = |row: &[u64]| -> PauliString {
            let mut p = PauliString::identity(self.n);
            for i in 0..self.n {
                let xb = (row[i / 64] >> (i % 64)) & 1 == 1;
                let pos = self.n + i;
                let zb = (row[pos / 64] >> (pos % 64)) & 1 == 1;
                p.set_letter(i, from_bits(xb, zb));
            }
            p
        };
        let mut images = Vec::with_capacity(rows);
        for row in &inv {
            let mut q = unpack(row);
            let forward = self.conjugate(&q)?;
            if forward.is_negative() {
                q.negate();
            }
            images.push(q);
        }
        let gate_log = self.gate_log.as_ref().map(|log| log.iter().rev().cloned().collect());
        Ok(RealCliffordTableau { n: self.n, images, gate_log })
    }

    /// Tableau of `self · other` (apply `other` first).
    pub fn compose(&self, other: &RealCliffordTableau) -> Result<RealCliffordTableau, CliffordError> {
        if self.n != other.n {
            return Err(CliffordError::DimensionMismatch(self.n, other.n));
        }
        let images = other
            .images
            .iter()
            .map(|p| self.conjugate(p))
            .collect::<Result<Vec<_>, _>>()?;
        let gate_log = match (&other.gate_log, &self.gate_log) {
            (Some(a), Some(b)) => Some(a.iter().chain(b.iter()).cloned().collect()),
            _ => None,
        };
        Ok(RealCliffordTableau { n: self.n, images, gate_log })
    }

    /// Verify the symplectic condition: `image(X_i)` anticommutes with
    /// `image(Z_i)` and commutes with every other image.
    pub fn symplectic_ok(&self) -> bool {
        for i in 0..2 * self.n {
            for j in (i + 1)..2 * self.n {
                let should_anticommute = j == i + self.n;
                if self.images[i].commutes(&self.images[j]) == should_anticommute {
                    return false;
                }
            }
        }
        true
    }

    /// Dense 2^n × 2^n real unitary rebuilt from the gate log.
    pub fn to_dense_unitary(&self) -> Result<nalgebra::DMatrix<f64>, crate::states::StateError> {
        let log = self.gate_log.as_ref().ok_or(crate::states::StateError::GateLogMissing)?;
        let d = 1usize << self.n;
        let mut m = nalgebra::DMatrix::<f64>::identity(d, d);
        for col in 0..d {
            let mut v: Vec<f64> = m.column(col).iter().cloned().collect();
            for g in log {
                g.apply_real_vec(&mut v);
            }
            m.set_column(col, &nalgebra::DVector::from_vec(v));
        }
        Ok(m)
    }

    /// Compact hash key of the sign-tracked images.
    pub fn key(&self) -> Vec<u64> {
        let mut k = Vec::new();
        let mut signs = 0u64;
        for (i, img) in self.images.iter().enumerate() {
            k.extend_from_slice(img.x_words());
            k.extend_from_slice(img.z_words());
            if img.is_negative() {
                signs |= 1 << i;
            }
        }
        k.push(signs);
        k
    }
}

fn apply_gate_to_pauli(p: &mut PauliString, gate: Gate) {
    match gate {
        Gate::H(q) => {
            let (x, z) = (p.x_bit(q), p.z_bit(q));
            if x && z {
                p.negate();
            }
            p.set_letter(q, from_bits(z, x));
        }
        Gate::X(q) => {
            if p.z_bit(q) {
                p.negate();
            }
        }
        Gate::Z(q) => {
            if p.x_bit(q) {
                p.negate();
            }
        }
        Gate::Cnot(c, t) => {
            let (xc, zc) = (p.x_bit(c), p.z_bit(c));
            let (xt, zt) = (p.x_bit(t), p.z_bit(t));
            if xc && zt && (xt == zc) {
                p.negate();
            }
            p.set_letter(t, from_bits(xt ^ xc, zt));
            p.set_letter(c, from_bits(xc, zc ^ zt));
        }
        Gate::Cz(a, b) => {
            let (xa, za) = (p.x_bit(a), p.z_bit(a));
            let (xb, zb) = (p.x_bit(b), p.z_bit(b));
            if xa && xb && (za != zb) {
                p.negate();
            }
            p.set_letter(a, from_bits(xa, za ^ xb));
            p.set_letter(b, from_bits(xb, zb ^ xa));
        }
    }
}

fn from_bits(x: bool, z: bool) -> crate::pauli::Letter {
    use crate::pauli::Letter::*;
    match (x, z) {
        (false, false) => I,
        (true, false) => X,
        (true, true) => Y,
        (false, true) => Z,
    }
}

/// Random depth-layered circuit approximating the Haar measure on rCl(n).
///
/// Each layer applies an independent uniform element of rCl(1) to every site
/// (a coin for H, then coins for X and Z) followed by a uniformly random
/// pairing of the sites, where each pair receives one of
/// {CNOT(a→b), CNOT(b→a), CZ, nothing} with equal probability. Validated
/// against the exact uniform distribution at n ≤ 2; at larger n the circuit
/// is an empirical approximation, not an exact Haar sampler.
pub fn random_real_clifford(n: usize, depth: usize, rng: &mut impl rand::Rng) -> RealCliffordTableau {
    let mut t = RealCliffordTableau::identity(n);
    let mut order: Vec<usize> = (0..n).collect();
    for _ in 0..depth {
        for q in 0..n {
            if rng.gen::<bool>() {
                t.apply_gate(Gate::H(q)).expect("valid site");
            }
            if rng.gen::<bool>() {
                t.apply_gate(Gate::X(q)).expect("valid site");
            }
            if rng.gen::<bool>() {
                t.apply_gate(Gate::Z(q)).expect("valid site");
            }
        }
        // Fisher-Yates pairing.
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            order.swap(i, j);
        }
        for pair in order.chunks_exact(2) {
            let (a, b) = (pair[0], pair[1]);
            match rng.gen_range(0..4u8) {
                0 => t.apply_gate(Gate::Cnot(a, b)).expect("valid sites"),
                1 => t.apply_gate(Gate::Cnot(b, a)).expect("valid sites"),
                2 => t.apply_gate(Gate::Cz(a, b)).expect("valid sites"),
                _ => {}
            }
        }
    }
    t
}

/// Default circuit depth used when sampling rCl(n): 10n.
pub fn default_depth(n: usize) -> usize {
    10 * n.max(1)
}

/// Exhaustively enumerate rCl(n) as sign-tracked tableaus via BFS closure
/// over the generating gate set. Only n ∈ {1, 2} are supported.
pub fn enumerate_group(n: usize) -> Result<Vec<RealCliffordTableau>, CliffordError> {
    if n == 0 || n > 2 {
        return Err(CliffordError::TooLarge(n));
    }
    let mut gens = Vec::new();
    for q in 0..n {
        gens.push(Gate::H(q));
        gens.push(Gate::X(q));
        gens.push(Gate::Z(q));
    }
    for a in 0..n {
        for b in 0..n {
            if a != b {
                gens.push(Gate::Cnot(a, b));
                if a < b {
                    gens.push(Gate::Cz(a, b));
                }
            }
        }
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    let id = RealCliffordTableau::identity(n);
    seen.insert(id.key());
    queue.push_back(id.clone());
    out.push(id);
    while let Some(t) = queue.pop_front() {
        for &g in &gens {
            let mut next = t.clone();
            next.apply_gate(g)?;
            if seen.insert(next.key()) {
                queue.push_back(next.clone());
                out.push(next);
            }
        }
    }
    Ok(out)
}

// --- serde: images as hex-encoded bit rows -------------------------------

#[derive(Serialize, Deserialize)]
struct ImageWire {
    x: String,
    z: String,
    sign: i8,
}

#[derive(Serialize, Deserialize)]
struct TableauWire {
    n: usize,
    images: Vec<ImageWire>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gates: Option<Vec<String>>,
}

fn bits_to_hex(words: &[u64], n: usize) -> String {
    let nbytes = n.div_ceil(8);
    let mut bytes = Vec::with_capacity(nbytes);
    for i in 0..nbytes {
        let w = words[i / 8];
        bytes.push(((w >> ((i % 8) * 8)) & 0xff) as u8);
    }
    hex::encode(bytes)
}

fn hex_to_pauli(n: usize, xs: &str, zs: &str, sign: i8) -> Result<PauliString, String> {
    let xb = hex::decode(xs).map_err(|e| e.to_string())?;
    let zb = hex::decode(zs).map_err(|e| e.to_string())?;
    let get = |bytes: &[u8], i: usize| -> bool { i / 8 < bytes.len() && (bytes[i / 8] >> (i % 8)) & 1 == 1 };
    let mut p = PauliString::identity(n);
    for i in 0..n {
        p.set_letter(i, from_bits(get(&xb, i), get(&zb, i)));
    }
    if sign < 0 {
        p.negate();
    }
    Ok(p)
}

impl Serialize for RealCliffordTableau {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let wire = TableauWire {
            n: self.n,
            images: self
                .images
                .iter()
                .map(|p| ImageWire {
                    x: bits_to_hex(p.x_words(), self.n),
                    z: bits_to_hex(p.z_words(), self.n),
                    sign: p.sign(),
                })
                .collect(),
            gates: self.gate_log.as_ref().map(|log| log.iter().map(|g| g.to_string()).collect()),
        };
        wire.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RealCliffordTableau {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let wire = TableauWire::deserialize(d)?;
        if wire.images.len() != 2 * wire.n {
            return Err(D::Error::custom("tableau must have exactly 2n images"));
        }
        let images = wire
            .images
            .iter()
            .map(|iw| hex_to_pauli(wire.n, &iw.x, &iw.z, iw.sign).map_err(D::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        let gate_log = match wire.gates {
            Some(gs) => Some(
                gs.iter()
                    .map(|g| Gate::from_str(g).map_err(|e| D::Error::custom(e.to_string())))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
            None => None,
        };
        let t = RealCliffordTableau { n: wire.n, images, gate_log };
        if !t.symplectic_ok() {
            return Err(D::Error::custom("images do not satisfy the symplectic condition"));
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::dense::{pauli_matrix, C64};
    use nalgebra::DMatrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn ps(s: &str) -> PauliString {
        PauliString::from_letters(s).unwrap()
    }

    #[test]
    fn generator_images() {
        let mut t = RealCliffordTableau::identity(2);
        t.apply_gate(Gate::H(0)).unwrap();
        assert_eq!(t.image(0), &ps("ZI"));
        assert_eq!(t.image(2), &ps("XI"));

        let mut t = RealCliffordTableau::identity(2);
        t.apply_gate(Gate::Cnot(0, 1)).unwrap();
        assert_eq!(t.image(0), &ps("XX"));
        assert_eq!(t.image(3), &ps("ZZ"));

        let mut t = RealCliffordTableau::identity(1);
        t.apply_gate(Gate::Z(0)).unwrap();
        assert_eq!(t.image(0), &ps("-X"));
    }

    #[test]
    fn invalid_sites_rejected() {
        let mut t = RealCliffordTableau::identity(2);
        assert!(t.apply_gate(Gate::H(2)).is_err());
        assert!(t.apply_gate(Gate::Cnot(1, 1)).is_err());
    }

    #[test]
    fn conjugate_identity_tableau_is_identity_map() {
        let t = RealCliffordTableau::identity(3);
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        for _ in 0..100 {
            let p = PauliString::random(3, &mut rng);
            assert_eq!(t.conjugate(&p).unwrap(), p);
        }
        assert_eq!(t.conjugate(&ps("III")).unwrap(), ps("III"));
    }

    #[test]
    fn conjugate_h_on_first_qubit() {
        let mut t = RealCliffordTableau::identity(2);
        t.apply_gate(Gate::H(0)).unwrap();
        assert_eq!(t.conjugate(&ps("XZ")).unwrap(), ps("ZZ"));
        assert_eq!(t.conjugate(&ps("YI")).unwrap(), ps("-YI"));
    }

    fn dense_conjugate(u: &DMatrix<f64>, p: &PauliString) -> DMatrix<C64> {
        let uc = u.map(|x| C64::new(x, 0.0));
        &uc * pauli_matrix(p) * uc.adjoint()
    }

    #[test]
    fn conjugate_matches_dense_oracle() {
        let mut rng = ChaCha12Rng::seed_from_u64(6);
        for n in 1..=3usize {
            for _ in 0..20 {
                let t = random_real_clifford(n, 8, &mut rng);
                let u = t.to_dense_unitary().unwrap();
                let p = PauliString::random(n, &mut rng);
                let want = dense_conjugate(&u, &p);
                let got = pauli_matrix(&t.conjugate(&p).unwrap());
                assert!((want - got).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn inverse_conjugate_matches_dense_oracle() {
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        for n in 1..=3usize {
            for _ in 0..10 {
                let t = random_real_clifford(n, 8, &mut rng);
                let u = t.to_dense_unitary().unwrap();
                let p = PauliString::random(n, &mut rng);
                // C† P C = U† P U = Uᵀ P U for real U.
                let ut = u.transpose();
                let want = dense_conjugate(&ut, &p);
                let got = pauli_matrix(&t.inverse_conjugate(&p).unwrap());
                assert!((want - got).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn inverse_roundtrip_many_random_pairs() {
        let mut rng = ChaCha12Rng::seed_from_u64(8);
        for _ in 0..20 {
            let t = random_real_clifford(8, 20, &mut rng);
            let inv = t.inverse().unwrap();
            assert!(inv.symplectic_ok());
            for _ in 0..50 {
                let p = PauliString::random(8, &mut rng);
                assert_eq!(inv.conjugate(&t.conjugate(&p).unwrap()).unwrap(), p);
            }
        }
    }

    #[test]
    fn conjugation_is_multiplicative() {
        let mut rng = ChaCha12Rng::seed_from_u64(9);
        let mut checked = 0;
        while checked < 200 {
            let t = random_real_clifford(4, 12, &mut rng);
            let p = PauliString::random(4, &mut rng);
            let q = PauliString::random(4, &mut rng);
            let Ok(pq) = p.multiply(&q) else { continue };
            let lhs = t.conjugate(&pq).unwrap();
            let rhs = t.conjugate(&p).unwrap().multiply(&t.conjugate(&q).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
            checked += 1;
        }
    }

    #[test]
    fn symplectic_preserved_by_random_circuits() {
        let mut rng = ChaCha12Rng::seed_from_u64(10);
        for n in [1, 2, 5, 9, 33] {
            let t = random_real_clifford(n, 15, &mut rng);
            assert!(t.symplectic_ok());
        }
    }

    #[test]
    fn random_clifford_is_deterministic_and_depth0_is_identity() {
        let a = random_real_clifford(5, 10, &mut ChaCha12Rng::seed_from_u64(42));
        let b = random_real_clifford(5, 10, &mut ChaCha12Rng::seed_from_u64(42));
        assert_eq!(a, b);
        let id = random_real_clifford(5, 0, &mut ChaCha12Rng::seed_from_u64(1));
        assert_eq!(id, RealCliffordTableau::identity(5));
    }

    /// Dense BFS closure of ⟨generators⟩ up to global sign; counts elements.
    fn dense_group_order(n: usize, gens: &[Gate]) -> usize {
        let gen_mats: Vec<DMatrix<f64>> = gens
            .iter()
            .map(|&g| {
                let mut t = RealCliffordTableau::identity(n);
                t.apply_gate(g).unwrap();
                t.to_dense_unitary().unwrap()
            })
            .collect();
        let canon = |m: &DMatrix<f64>| -> Vec<i64> {
            let flip = m.iter().find(|x| x.abs() > 1e-9).map(|x| *x < 0.0).unwrap_or(false);
            let s = if flip { -1.0 } else { 1.0 };
            m.iter().map(|x| (x * s * (1u64 << 40) as f64).round() as i64).collect()
        };
        let d = 1usize << n;
        let mut seen = HashSet::new();
        let id = DMatrix::<f64>::identity(d, d);
        seen.insert(canon(&id));
        let mut queue = vec![id];
        while let Some(m) = queue.pop() {
            for g in &gen_mats {
                let next = g * &m;
                if seen.insert(canon(&next)) {
                    queue.push(next);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn enumerate_rcl1_matches_dense_count() {
        let group = enumerate_group(1).unwrap();
        let dense = dense_group_order(1, &[Gate::H(0), Gate::X(0), Gate::Z(0)]);
        assert_eq!(group.len(), dense);
        assert_eq!(group.len(), 8);
        for t in &group {
            assert!(t.symplectic_ok());
        }
    }

    #[test]
    fn enumerate_rcl2_closure_and_dense_count() {
        let group = enumerate_group(2).unwrap();
        for t in group.iter().take(30) {
            assert!(t.symplectic_ok());
        }
        let mut keys = HashSet::new();
        for t in &group {
            keys.insert(t.key());
        }
        let mut rng = ChaCha12Rng::seed_from_u64(20);
        for _ in 0..50 {
            let a = &group[rng.gen_range(0..group.len())];
            let b = &group[rng.gen_range(0..group.len())];
            assert!(keys.contains(&a.compose(b).unwrap().key()));
        }
        let dense = dense_group_order(
            2,
            &[
                Gate::H(0),
                Gate::H(1),
                Gate::X(0),
                Gate::X(1),
                Gate::Z(0),
                Gate::Z(1),
                Gate::Cnot(0, 1),
                Gate::Cnot(1, 0),
                Gate::Cz(0, 1),
            ],
        );
        assert_eq!(group.len(), dense);
    }

    #[test]
    fn enumerate_rejects_large_n() {
        assert!(matches!(enumerate_group(3), Err(CliffordError::TooLarge(3))));
    }

    #[test]
    fn random_circuit_approaches_uniform_on_rcl2() {
        let group = enumerate_group(2).unwrap();
        let mut index = std::collections::HashMap::new();
        for (i, t) in group.iter().enumerate() {
            index.insert(t.key(), i);
        }
        let mut counts = vec![0u64; group.len()];
        let samples = 100_000usize;
        let mut rng = ChaCha12Rng::seed_from_u64(21);
        for _ in 0..samples {
            let t = random_real_clifford(2, 50, &mut rng);
            counts[index[&t.key()]] += 1;
        }
        let uniform = 1.0 / group.len() as f64;
        let tv: f64 =
            counts.iter().map(|&c| (c as f64 / samples as f64 - uniform).abs()).sum::<f64>() / 2.0;
        assert!(tv < 0.05, "TV to uniform was {tv}");
    }

    #[test]
    fn serde_roundtrip() {
        let mut rng = ChaCha12Rng::seed_from_u64(22);
        let t = random_real_clifford(5, 10, &mut rng);
        let json = serde_json::to_string(&t).unwrap();
        let back: RealCliffordTableau = serde_json::from_str(&json).unwrap();
        assert_eq!(t, back);
    }

    #[test]
    fn serde_rejects_non_symplectic() {
        let t = RealCliffordTableau::identity(2);
        let mut v: serde_json::Value = serde_json::to_value(&t).unwrap();
        v["images"][0] = v["images"][1].clone();
        assert!(serde_json::from_value::<RealCliffordTableau>(v).is_err());
    }

    #[test]
    fn gate_parse_roundtrip() {
        for g in [Gate::H(3), Gate::X(0), Gate::Z(7), Gate::Cnot(1, 4), Gate::Cz(2, 5)] {
            assert_eq!(Gate::from_str(&g.to_string()).unwrap(), g);
        }
        assert!(Gate::from_str("s 0").is_err());
    }
}
