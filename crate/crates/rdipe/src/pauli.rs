//! Bit-packed n-qubit Pauli strings.
//!
//! A [`PauliString`] stores the X and Z components of each site in separate
//! machine-word arrays (site `i` lives at bit `i % 64` of word `i / 64`) plus
//! a global sign restricted to ±1. The same object doubles as a Bell-outcome
//! label `a ∈ {0,1,2,3}^n` with the fixed convention `0↔I, 1↔X, 2↔Y, 3↔Z`,
//! i.e. site letters decode from the bit pair `(x,z)` as `(0,0)→I`, `(1,0)→X`,
//! `(1,1)→Y`, `(0,1)→Z`.
//!
//! Everything in scope is real, so products that would pick up a ±i phase are
//! rejected rather than tracked.

use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PauliError {
    /// The product accumulated a ±i phase; only ±1 signs are representable.
    #[error("product of Pauli strings has a non-real (±i) phase")]
    PhaseNotReal,
    #[error("qubit count mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("invalid Pauli label: {0}")]
    BadLabel(String),
    #[error("site {site} out of range for {n} qubits")]
    InvalidSite { site: usize, n: usize },
}

/// Single-site Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    /// Base-4 digit of the letter (`0↔I, 1↔X, 2↔Y, 3↔Z`).
    pub fn digit(self) -> u8 {
        match self {
            Letter::I => 0,
            Letter::X => 1,
            Letter::Y => 2,
            Letter::Z => 3,
        }
    }

    pub fn from_digit(d: u8) -> Option<Letter> {
        match d {
            0 => Some(Letter::I),
            1 => Some(Letter::X),
            2 => Some(Letter::Y),
            3 => Some(Letter::Z),
            _ => None,
        }
    }

    fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    fn from_bits(x: bool, z: bool) -> Letter {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }
}

fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

/// A sign-tracked n-qubit Pauli operator.
///
/// Immutable in spirit: all operations return new values, so strings can be
/// shared freely across threads.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    negative: bool,
}

impl PauliString {
    /// The identity string `+I…I`.
    pub fn identity(n: usize) -> Self {
        let w = words_for(n);
        PauliString { n, x: vec![0; w], z: vec![0; w], negative: false }
    }

    /// A single non-identity letter at `site`, identity elsewhere.
    pub fn single(n: usize, site: usize, letter: Letter) -> Result<Self, PauliError> {
        if site >= n {
            return Err(PauliError::InvalidSite { site, n });
        }
        let mut p = PauliString::identity(n);
        p.set_letter(site, letter);
        Ok(p)
    }

    /// Uniformly random label (sign +1).
    pub fn random(n: usize, rng: &mut impl rand::Rng) -> Self {
        let mut p = PauliString::identity(n);
        for w in 0..p.x.len() {
            p.x[w] = rng.gen();
            p.z[w] = rng.gen();
        }
        p.mask_tail();
        p
    }

    fn mask_tail(&mut self) {
        let tail = self.n % 64;
        if tail != 0 {
            let mask = (1u64 << tail) - 1;
            let last = self.x.len() - 1;
            self.x[last] &= mask;
            self.z[last] &= mask;
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    /// Global sign, +1 or −1.
    pub fn sign(&self) -> i8 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn negate(&mut self) {
        self.negative = !self.negative;
    }

    /// Same letters with sign forced to +1 (a bare Bell label).
    pub fn without_sign(&self) -> Self {
        let mut p = self.clone();
        p.negative = false;
        p
    }

    pub fn x_bit(&self, site: usize) -> bool {
        (self.x[site / 64] >> (site % 64)) & 1 == 1
    }

    pub fn z_bit(&self, site: usize) -> bool {
        (self.z[site / 64] >> (site % 64)) & 1 == 1
    }

    pub fn letter(&self, site: usize) -> Letter {
        Letter::from_bits(self.x_bit(site), self.z_bit(site))
    }

    pub fn set_letter(&mut self, site: usize, letter: Letter) {
        let (xb, zb) = letter.bits();
        let w = site / 64;
        let m = 1u64 << (site % 64);
        if xb {
            self.x[w] |= m;
        } else {
            self.x[w] &= !m;
        }
        if zb {
            self.z[w] |= m;
        } else {
            self.z[w] &= !m;
        }
    }

    pub fn x_words(&self) -> &[u64] {
        &self.x
    }

    pub fn z_words(&self) -> &[u64] {
        &self.z
    }

    /// X/Z bit vectors packed into `u128`s; only valid for `n ≤ 128`.
    pub fn xz_u128(&self) -> (u128, u128) {
        assert!(self.n <= 128, "xz_u128 requires n ≤ 128");
        let mut x = self.x[0] as u128;
        let mut z = self.z[0] as u128;
        if self.x.len() > 1 {
            x |= (self.x[1] as u128) << 64;
            z |= (self.z[1] as u128) << 64;
        }
        (x, z)
    }

    pub fn from_xz_u128(n: usize, x: u128, z: u128) -> Self {
        assert!(n <= 128);
        let mut p = PauliString::identity(n);
        p.x[0] = x as u64;
        p.z[0] = z as u64;
        if n > 64 {
            p.x[1] = (x >> 64) as u64;
            p.z[1] = (z >> 64) as u64;
        }
        p.mask_tail();
        p
    }

    /// Table index `x + 2^n·z` for dense 4^n tables; requires `n ≤ 31`.
    pub fn label_index(&self) -> usize {
        assert!(self.n <= 31, "label_index requires n ≤ 31");
        (self.x[0] as usize) | ((self.z[0] as usize) << self.n)
    }

    pub fn from_label_index(n: usize, idx: usize) -> Self {
        assert!(n <= 31);
        let mask = (1usize << n) - 1;
        PauliString::from_xz_u128(n, (idx & mask) as u128, (idx >> n) as u128)
    }

    /// Counts of X, Y and Z letters.
    pub fn weight_counts(&self) -> (usize, usize, usize) {
        let mut xs = 0usize;
        let mut ys = 0usize;
        let mut zs = 0usize;
        for w in 0..self.x.len() {
            let both = self.x[w] & self.z[w];
            ys += both.count_ones() as usize;
            xs += (self.x[w] & !both).count_ones() as usize;
            zs += (self.z[w] & !both).count_ones() as usize;
        }
        (xs, ys, zs)
    }

    /// Number of Y letters.
    pub fn y_count(&self) -> usize {
        self.x.iter().zip(&self.z).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    /// SWAP eigenvalue `(−1)^{y_a}` of the Bell state labelled by this string.
    ///
    /// Averaging this sign over Bell samples of `ρ⊗ρ` estimates `tr ρ²`,
    /// since `SWAP = Σ_a (−1)^{y_a} |Φ_a⟩⟨Φ_a|`.
    pub fn swap_symmetry_sign(&self) -> i8 {
        if self.y_count() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Whether the two strings commute (symplectic form vanishes).
    pub fn commutes(&self, other: &PauliString) -> bool {
        let mut acc = 0u32;
        for w in 0..self.x.len() {
            acc ^= (self.x[w] & other.z[w]).count_ones() ^ (self.z[w] & other.x[w]).count_ones();
        }
        acc & 1 == 0
    }

    /// Product `±self·other`, valid only when the phase lands on ±1.
    ///
    /// Writing each string as `s·i^{y}·X^x Z^z`, the product phase exponent is
    /// `y_a + y_b − y_ab + 2·|z_a ∧ x_b| (mod 4)`; odd exponents mean the
    /// physical product is ±i times a Hermitian Pauli and are rejected.
    pub fn multiply(&self, other: &PauliString) -> Result<PauliString, PauliError> {
        if self.n != other.n {
            return Err(PauliError::DimensionMismatch(self.n, other.n));
        }
        let mut acc = PhasedPauli::from_string(self);
        acc.mul_assign(other);
        acc.into_string()
    }

    /// Base-4 digit string with site 0 as the leftmost (most significant) digit.
    pub fn to_label_digits(&self) -> String {
        (0..self.n).map(|i| char::from(b'0' + self.letter(i).digit())).collect()
    }

    /// Parse a base-4 digit string (site 0 leftmost); sign is +1.
    pub fn from_label_digits(s: &str) -> Result<Self, PauliError> {
        let mut p = PauliString::identity(s.len());
        for (i, c) in s.chars().enumerate() {
            let d = c.to_digit(10).and_then(|d| Letter::from_digit(d as u8));
            match d {
                Some(letter) => p.set_letter(i, letter),
                None => return Err(PauliError::BadLabel(s.to_string())),
            }
        }
        Ok(p)
    }

    /// Parse `"+XYZI"` / `"-XYZI"` / `"XYZI"` (site 0 leftmost).
    pub fn from_letters(s: &str) -> Result<Self, PauliError> {
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let mut p = PauliString::identity(body.len());
        for (i, c) in body.chars().enumerate() {
            let letter = match c.to_ascii_uppercase() {
                'I' => Letter::I,
                'X' => Letter::X,
                'Y' => Letter::Y,
                'Z' => Letter::Z,
                _ => return Err(PauliError::BadLabel(s.to_string())),
            };
            p.set_letter(i, letter);
        }
        p.negative = neg;
        Ok(p)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if self.negative { '-' } else { '+' })?;
        for i in 0..self.n {
            write!(f, "{}", self.letter(i).to_char())?;
        }
        Ok(())
    }
}

/// Internal product accumulator tracking the full i^φ phase mod 4.
///
/// Used by tableau conjugation, where intermediate factors may be ±i even
/// though every result exposed to callers must collapse to ±1.
#[derive(Debug, Clone)]
pub(crate) struct PhasedPauli {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    /// Phase exponent: the accumulated operator is `i^phase · ⊗ P_{a_i}`.
    phase: u8,
}

impl PhasedPauli {
    pub(crate) fn identity(n: usize) -> Self {
        let w = words_for(n);
        PhasedPauli { n, x: vec![0; w], z: vec![0; w], phase: 0 }
    }

    pub(crate) fn from_string(p: &PauliString) -> Self {
        PhasedPauli {
            n: p.n,
            x: p.x.clone(),
            z: p.z.clone(),
            phase: if p.negative { 2 } else { 0 },
        }
    }

    pub(crate) fn add_phase(&mut self, quarter_turns: u8) {
        self.phase = (self.phase + quarter_turns) % 4;
    }

    /// Right-multiply by `other`, accumulating the symplectic phase.
    pub(crate) fn mul_assign(&mut self, other: &PauliString) {
        debug_assert_eq!(self.n, other.n);
        let mut y_a = 0usize;
        let mut y_b = 0usize;
        let mut y_ab = 0usize;
        let mut dot = 0usize;
        for w in 0..self.x.len() {
            y_a += (self.x[w] & self.z[w]).count_ones() as usize;
            y_b += (other.x[w] & other.z[w]).count_ones() as usize;
            dot += (self.z[w] & other.x[w]).count_ones() as usize;
            let nx = self.x[w] ^ other.x[w];
            let nz = self.z[w] ^ other.z[w];
            y_ab += (nx & nz).count_ones() as usize;
            self.x[w] = nx;
            self.z[w] = nz;
        }
        let add = (y_a + y_b + 2 * dot + 4 * self.n - y_ab) % 4;
        self.phase = ((self.phase as usize + add + if other.negative { 2 } else { 0 }) % 4) as u8;
    }

    pub(crate) fn into_string(self) -> Result<PauliString, PauliError> {
        match self.phase {
            0 | 2 => Ok(PauliString { n: self.n, x: self.x, z: self.z, negative: self.phase == 2 }),
            _ => Err(PauliError::PhaseNotReal),
        }
    }
}
