//! Dense state vectors and density matrices.
//!
//! This backend is the brute-force oracle for everything else in the crate:
//! exact Pauli expectations (single values and full 4^n tables), purities,
//! overlaps, reduced-state entropies, and dense gate application. Sizes are
//! capped at desk scale (`n ≤ 14` vectors, `n ≤ 10` density matrices).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

use super::{StateError, MAX_DENSE_DENSITY_QUBITS, MAX_DENSE_VECTOR_QUBITS};
use crate::pauli::PauliString;

pub type C64 = Complex<f64>;

const NORM_TOL: f64 = 1e-10;
/// Threshold below which imaginary parts count as numerical noise.
pub const REALNESS_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub enum DenseRepr {
    /// Pure state amplitudes, length 2^n.
    Vector(DVector<C64>),
    /// Density matrix, 2^n × 2^n Hermitian.
    Density(DMatrix<C64>),
}

#[derive(Debug, Clone)]
pub struct DenseState {
    n: usize,
    repr: DenseRepr,
    real: bool,
}

impl DenseState {
    /// Wrap a pure amplitude vector; checks length and normalization.
    pub fn from_vector(n: usize, v: DVector<C64>) -> Result<Self, StateError> {
        if n > MAX_DENSE_VECTOR_QUBITS {
            return Err(StateError::TooLargeForDense(n, MAX_DENSE_VECTOR_QUBITS));
        }
        if v.len() != 1 << n {
            return Err(StateError::DimensionMismatch(v.len(), 1 << n));
        }
        let norm2: f64 = v.iter().map(|a| a.norm_sqr()).sum();
        if (norm2 - 1.0).abs() > NORM_TOL {
            return Err(StateError::NotNormalized((norm2 - 1.0).abs()));
        }
        let real = v.iter().all(|a| a.im.abs() < REALNESS_TOL);
        Ok(DenseState { n, repr: DenseRepr::Vector(v), real })
    }

    /// Wrap a density matrix; checks shape, trace and Hermiticity.
    /// Positivity is not verified here (see [`DenseState::check_positive`]).
    pub fn from_density(n: usize, m: DMatrix<C64>) -> Result<Self, StateError> {
        if n > MAX_DENSE_DENSITY_QUBITS {
            return Err(StateError::TooLargeForDense(n, MAX_DENSE_DENSITY_QUBITS));
        }
        let d = 1usize << n;
        if m.nrows() != d || m.ncols() != d {
            return Err(StateError::DimensionMismatch(m.nrows(), d));
        }
        let tr: C64 = (0..d).map(|i| m[(i, i)]).sum();
        if (tr.re - 1.0).abs() > NORM_TOL || tr.im.abs() > NORM_TOL {
            return Err(StateError::NotNormalized((tr - C64::new(1.0, 0.0)).norm()));
        }
        let mut herm_dev = 0.0f64;
        for i in 0..d {
            for j in i..d {
                herm_dev = herm_dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
            }
        }
        if herm_dev > NORM_TOL {
            return Err(StateError::NotHermitian(herm_dev));
        }
        let real = m.iter().all(|a| a.im.abs() < REALNESS_TOL);
        Ok(DenseState { n, repr: DenseRepr::Density(m), real })
    }

    /// Computational basis state `|bits⟩` (bit i of `bits` is site i).
    pub fn basis_state(n: usize, bits: u128) -> Result<Self, StateError> {
        let mut v = DVector::zeros(1 << n);
        v[bits as usize] = C64::new(1.0, 0.0);
        DenseState::from_vector(n, v)
    }

    /// Pure state with the given real amplitudes (normalized by the caller).
    pub fn from_real_amplitudes(n: usize, amps: &[f64]) -> Result<Self, StateError> {
        let v = DVector::from_iterator(amps.len(), amps.iter().map(|&a| C64::new(a, 0.0)));
        DenseState::from_vector(n, v)
    }

    /// Haar-like random real pure state (normalized Gaussian vector).
    pub fn random_real_pure(n: usize, rng: &mut impl rand::Rng) -> Self {
        use rand_distr::{Distribution, StandardNormal};
        let d = 1usize << n;
        let mut amps: Vec<f64> = (0..d).map(|_| StandardNormal.sample(rng)).collect();
        let norm = amps.iter().map(|a| a * a).sum::<f64>().sqrt();
        amps.iter_mut().for_each(|a| *a /= norm);
        DenseState::from_real_amplitudes(n, &amps).expect("normalized by construction")
    }

    /// Haar-like random complex pure state.
    pub fn random_complex_pure(n: usize, rng: &mut impl rand::Rng) -> Self {
        use rand_distr::{Distribution, StandardNormal};
        let d = 1usize << n;
        let mut v: Vec<C64> =
            (0..d).map(|_| C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))).collect();
        let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|a| *a /= norm);
        DenseState::from_vector(n, DVector::from_vec(v)).expect("normalized")
    }

    /// Random mixed state from the Ginibre ensemble, `ρ = GG†/tr(GG†)`,
    /// with `rank` columns in G.
    pub fn random_mixed(n: usize, rank: usize, rng: &mut impl rand::Rng) -> Self {
        use rand_distr::{Distribution, StandardNormal};
        let d = 1usize << n;
        let g = DMatrix::from_fn(d, rank.max(1), |_, _| {
            C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
        });
        let mut rho = &g * g.adjoint();
        let tr: f64 = (0..d).map(|i| rho[(i, i)].re).sum();
        rho /= C64::new(tr, 0.0);
        // Symmetrize away roundoff so the Hermiticity check holds exactly.
        let herm = (rho.clone() + rho.adjoint()) * C64::new(0.5, 0.0);
        DenseState::from_density(n, herm).expect("valid by construction")
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    pub fn is_pure(&self) -> bool {
        matches!(self.repr, DenseRepr::Vector(_))
    }

    pub fn repr(&self) -> &DenseRepr {
        &self.repr
    }

    pub fn vector(&self) -> Option<&DVector<C64>> {
        match &self.repr {
            DenseRepr::Vector(v) => Some(v),
            DenseRepr::Density(_) => None,
        }
    }

    /// Density-matrix view (pure states are promoted to |ψ⟩⟨ψ|).
    pub fn density(&self) -> Result<DMatrix<C64>, StateError> {
        match &self.repr {
            DenseRepr::Density(m) => Ok(m.clone()),
            DenseRepr::Vector(v) => {
                if self.n > MAX_DENSE_DENSITY_QUBITS {
                    return Err(StateError::TooLargeForDense(self.n, MAX_DENSE_DENSITY_QUBITS));
                }
                Ok(v * v.adjoint())
            }
        }
    }

    /// Re-wrap as an explicit density matrix (useful to exercise the mixed
    /// code paths with a pure state).
    pub fn to_density_state(&self) -> DenseState {
        let rho = self.density().expect("within density cap");
        DenseState::from_density(self.n, rho).expect("valid density")
    }

    /// Verify positive semidefiniteness within `tol` (min eigenvalue ≥ −tol).
    pub fn check_positive(&self, tol: f64) -> Result<(), StateError> {
        let rho = self.density()?;
        let eigs = rho.symmetric_eigen().eigenvalues;
        let min = eigs.iter().cloned().fold(f64::INFINITY, f64::min);
        if min < -tol {
            return Err(StateError::NotPositive(min));
        }
        Ok(())
    }

    /// Exact expectation `⟨P⟩`.
    pub fn expectation(&self, p: &PauliString) -> Result<f64, StateError> {
        if p.num_qubits() != self.n {
            return Err(StateError::DimensionMismatch(p.num_qubits(), self.n));
        }
        let (x, z) = p.xz_u128();
        let (x, z) = (x as usize, z as usize);
        let y = p.y_count();
        let acc: C64 = match &self.repr {
            DenseRepr::Vector(v) => (0..v.len())
                .map(|j| v[j] * v[j ^ x].conj() * sign_f64(parity(z & j)))
                .sum(),
            DenseRepr::Density(m) => {
                (0..m.nrows()).map(|k| m[(k, k ^ x)] * sign_f64(parity(z & k))).sum()
            }
        };
        let val = i_power(y) * acc * sign_c64(p.sign());
        debug_assert!(val.im.abs() < 1e-8, "expectation of a Hermitian operator must be real");
        Ok(val.re)
    }

    /// Full table of `⟨P_a⟩` over all 4^n labels, indexed `x + (z << n)`.
    ///
    /// Computed with one Walsh–Hadamard transform per X-pattern, O(4^n·n)
    /// total instead of the naive O(8^n).
    pub fn expectation_table(&self) -> Result<Vec<f64>, StateError> {
        let cap = match &self.repr {
            DenseRepr::Vector(_) => 12,
            DenseRepr::Density(_) => MAX_DENSE_DENSITY_QUBITS,
        };
        if self.n > cap {
            return Err(StateError::TooLargeForDense(self.n, cap));
        }
        let d = 1usize << self.n;
        let mut table = vec![0.0f64; d * d];
        let mut buf = vec![C64::new(0.0, 0.0); d];
        for x in 0..d {
            match &self.repr {
                DenseRepr::Vector(v) => {
                    for j in 0..d {
                        buf[j] = v[j] * v[j ^ x].conj();
                    }
                }
                DenseRepr::Density(m) => {
                    for k in 0..d {
                        buf[k] = m[(k, k ^ x)];
                    }
                }
            }
            wht_inplace(&mut buf);
            for z in 0..d {
                let y = (x & z).count_ones() as usize;
                table[x | (z << self.n)] = (i_power(y) * buf[z]).re;
            }
        }
        Ok(table)
    }

    /// Exact purity `tr ρ²`.
    pub fn purity(&self) -> f64 {
        match &self.repr {
            DenseRepr::Vector(_) => 1.0,
            DenseRepr::Density(m) => m.iter().map(|a| a.norm_sqr()).sum(),
        }
    }

    /// Reduced state on the last `n/2` qubits (the first half traced out).
    pub fn reduced_second_half(&self) -> Result<DMatrix<C64>, StateError> {
        if self.n % 2 != 0 {
            return Err(StateError::OddN(self.n));
        }
        let h = self.n / 2;
        let dh = 1usize << h;
        let mut red = DMatrix::zeros(dh, dh);
        match &self.repr {
            DenseRepr::Vector(v) => {
                for b in 0..dh {
                    for bp in 0..dh {
                        let mut acc = C64::new(0.0, 0.0);
                        for a in 0..dh {
                            acc += v[a | (b << h)] * v[a | (bp << h)].conj();
                        }
                        red[(b, bp)] = acc;
                    }
                }
            }
            DenseRepr::Density(m) => {
                for b in 0..dh {
                    for bp in 0..dh {
                        let mut acc = C64::new(0.0, 0.0);
                        for a in 0..dh {
                            acc += m[(a | (b << h), a | (bp << h))];
                        }
                        red[(b, bp)] = acc;
                    }
                }
            }
        }
        Ok(red)
    }

    /// Second Rényi entropy of the reduced half, in bits.
    pub fn renyi2_half(&self) -> Result<f64, StateError> {
        let red = self.reduced_second_half()?;
        let purity: f64 = red.iter().map(|a| a.norm_sqr()).sum();
        Ok(-purity.log2())
    }
}

/// Overlap `tr(ρσ)` of two dense states.
pub fn overlap(a: &DenseState, b: &DenseState) -> Result<f64, StateError> {
    if a.n != b.n {
        return Err(StateError::DimensionMismatch(a.n, b.n));
    }
    match (&a.repr, &b.repr) {
        (DenseRepr::Vector(u), DenseRepr::Vector(v)) => Ok(u.dotc(v).norm_sqr()),
        (DenseRepr::Vector(u), DenseRepr::Density(m)) | (DenseRepr::Density(m), DenseRepr::Vector(u)) => {
            let mu = m * u;
            Ok(u.dotc(&mu).re)
        }
        (DenseRepr::Density(m1), DenseRepr::Density(m2)) => {
            // tr(ρσ) = Σ_{ij} ρ_ij conj(σ_ij) for Hermitian σ.
            Ok(m1.iter().zip(m2.iter()).map(|(p, q)| (p * q.conj()).re).sum())
        }
    }
}

/// Cosine `tr(ρσ)/√(tr ρ² tr σ²)` of two dense states.
pub fn cosine(a: &DenseState, b: &DenseState) -> Result<f64, StateError> {
    Ok(overlap(a, b)? / (a.purity() * b.purity()).sqrt())
}

// ---------------------------------------------------------------------------
// Primitive dense operations shared by the oracles.

#[inline]
fn parity(v: usize) -> bool {
    v.count_ones() & 1 == 1
}

#[inline]
fn sign_f64(neg: bool) -> f64 {
    if neg {
        -1.0
    } else {
        1.0
    }
}

#[inline]
fn sign_c64(s: i8) -> C64 {
    C64::new(s as f64, 0.0)
}

#[inline]
fn i_power(y: usize) -> C64 {
    match y % 4 {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, 1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, -1.0),
    }
}

/// In-place Walsh–Hadamard transform, `out[z] = Σ_j (−1)^{z·j} in[j]`.
pub fn wht_inplace(v: &mut [C64]) {
    let n = v.len();
    debug_assert!(n.is_power_of_two());
    let mut h = 1;
    while h < n {
        for block in (0..n).step_by(2 * h) {
            for i in block..block + h {
                let (a, b) = (v[i], v[i + h]);
                v[i] = a + b;
                v[i + h] = a - b;
            }
        }
        h *= 2;
    }
}

/// In-place Walsh–Hadamard transform over real tables.
pub fn wht_f64_inplace(v: &mut [f64]) {
    let n = v.len();
    debug_assert!(n.is_power_of_two());
    let mut h = 1;
    while h < n {
        for block in (0..n).step_by(2 * h) {
            for i in block..block + h {
                let (a, b) = (v[i], v[i + h]);
                v[i] = a + b;
                v[i + h] = a - b;
            }
        }
        h *= 2;
    }
}

/// Dense 2^n × 2^n matrix of a sign-tracked Pauli string.
pub fn pauli_matrix(p: &PauliString) -> DMatrix<C64> {
    let n = p.num_qubits();
    assert!(n <= 12, "pauli_matrix is an oracle for small n");
    let d = 1usize << n;
    let (x, z) = p.xz_u128();
    let (x, z) = (x as usize, z as usize);
    let coeff = i_power(p.y_count()) * sign_c64(p.sign());
    let mut m = DMatrix::zeros(d, d);
    for k in 0..d {
        // P|k⟩ = i^y (−1)^{z·k} |k⊕x⟩ (sign folded into coeff).
        m[(k ^ x, k)] = coeff * sign_f64(parity(z & k));
    }
    m
}

/// Bell state `|Φ_a⟩ = (1 ⊗ P_a)|Φ_0⟩` as a vector on 2n qubits
/// (copy 1 on the low n bits, copy 2 on the high n bits).
pub fn bell_phi_vector(label: &PauliString) -> DVector<C64> {
    let n = label.num_qubits();
    assert!(n <= 6, "bell_phi_vector is an oracle for small n");
    let d = 1usize << n;
    let (x, z) = label.xz_u128();
    let (x, z) = (x as usize, z as usize);
    let coeff = i_power(label.y_count()) * sign_c64(label.sign()) / (d as f64).sqrt();
    let mut v = DVector::zeros(d * d);
    for k in 0..d {
        v[k | ((k ^ x) << n)] = coeff * sign_f64(parity(z & k));
    }
    v
}

/// Joint two-copy vector with `a` on the low-bit register and `b` on the
/// high-bit register.
pub fn two_copy_vector(a: &DVector<C64>, b: &DVector<C64>) -> DVector<C64> {
    let mut v = DVector::zeros(a.len() * b.len());
    for (j, bj) in b.iter().enumerate() {
        for (i, ai) in a.iter().enumerate() {
            v[i + j * a.len()] = ai * bj;
        }
    }
    v
}

/// Apply a single-qubit unitary `m` to `site` of an amplitude vector.
pub fn apply_single_qubit_vec(v: &mut [C64], site: usize, m: &[[C64; 2]; 2]) {
    let bit = 1usize << site;
    for k in 0..v.len() {
        if k & bit == 0 {
            let (a, b) = (v[k], v[k | bit]);
            v[k] = m[0][0] * a + m[0][1] * b;
            v[k | bit] = m[1][0] * a + m[1][1] * b;
        }
    }
}

/// Apply CNOT (control → target) to an amplitude vector.
pub fn apply_cnot_vec(v: &mut [C64], control: usize, target: usize) {
    let (cb, tb) = (1usize << control, 1usize << target);
    for k in 0..v.len() {
        if k & cb != 0 && k & tb == 0 {
            v.swap(k, k | tb);
        }
    }
}

/// Apply CZ to an amplitude vector.
pub fn apply_cz_vec(v: &mut [C64], a: usize, b: usize) {
    let (ab, bb) = (1usize << a, 1usize << b);
    for (k, amp) in v.iter_mut().enumerate() {
        if k & ab != 0 && k & bb != 0 {
            *amp = -*amp;
        }
    }
}

/// Apply a single-qubit unitary to `site` of a density matrix: `ρ → UρU†`.
pub fn apply_single_qubit_density(rho: &mut DMatrix<C64>, site: usize, m: &[[C64; 2]; 2]) {
    let d = rho.nrows();
    let bit = 1usize << site;
    // Left multiply by U (columns transform as vectors).
    for c in 0..d {
        for k in 0..d {
            if k & bit == 0 {
                let (a, b) = (rho[(k, c)], rho[(k | bit, c)]);
                rho[(k, c)] = m[0][0] * a + m[0][1] * b;
                rho[(k | bit, c)] = m[1][0] * a + m[1][1] * b;
            }
        }
    }
    // Right multiply by U†: (ρU†)[r,j] = Σ_m ρ[r,m]·conj(U[j,m]).
    for r in 0..d {
        for k in 0..d {
            if k & bit == 0 {
                let (a, b) = (rho[(r, k)], rho[(r, k | bit)]);
                rho[(r, k)] = a * m[0][0].conj() + b * m[0][1].conj();
                rho[(r, k | bit)] = a * m[1][0].conj() + b * m[1][1].conj();
            }
        }
    }
}

pub fn h_matrix() -> [[C64; 2]; 2] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    [[C64::new(s, 0.0), C64::new(s, 0.0)], [C64::new(s, 0.0), C64::new(-s, 0.0)]]
}

pub fn x_matrix() -> [[C64; 2]; 2] {
    [[C64::new(0.0, 0.0), C64::new(1.0, 0.0)], [C64::new(1.0, 0.0), C64::new(0.0, 0.0)]]
}

pub fn y_matrix() -> [[C64; 2]; 2] {
    [[C64::new(0.0, 0.0), C64::new(0.0, -1.0)], [C64::new(0.0, 1.0), C64::new(0.0, 0.0)]]
}

pub fn z_matrix() -> [[C64; 2]; 2] {
    [[C64::new(1.0, 0.0), C64::new(0.0, 0.0)], [C64::new(0.0, 0.0), C64::new(-1.0, 0.0)]]
}

/// Phase gate `diag(1, e^{iθ})`; θ = π/4 is the T gate, θ = π is Z.
pub fn phase_matrix(theta: f64) -> [[C64; 2]; 2] {
    [
        [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
        [C64::new(0.0, 0.0), C64::from_polar(1.0, theta)],
    ]
}
