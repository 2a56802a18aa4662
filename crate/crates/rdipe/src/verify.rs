//! Brute-force oracles and numerical verification: two-copy twirl identities
//! over the real Clifford group, entanglement scaling of rotated W states,
//! continuity lemmas for Pauli distributions, and Pauli counting bounds that
//! separate the CW class from weakly doped states.
//!
//! Every check runs two independent computation routes and fails loudly when
//! they disagree beyond the stated tolerance.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::clifford::{default_depth, enumerate_group, random_real_clifford, CliffordError};
use crate::distributions::{bell_distribution, pauli_distribution, tv_distance};
use crate::pauli::PauliString;
use crate::rng::{substream, Domain};
use crate::states::dense::{apply_single_qubit_vec, phase_matrix, C64};
use crate::states::{random_cw_state, CwState, DenseState, QuantumState, StateError, SupportFamily};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("n = {0} too large for this check (max {1})")]
    TooLarge(usize, usize),
    #[error("check requires an even qubit count, got {0}")]
    OddN(usize),
    #[error("counting is closed-form only for W/Dicke supports or dense states with n ≤ 8")]
    UnsupportedState,
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Clifford(#[from] CliffordError),
}

// ---------------------------------------------------------------------------
// Operators on two copies.

/// `A ⊗ B` with A on the low-bit register.
pub fn kron_two_copy(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    let d = a.nrows();
    DMatrix::from_fn(d * d, d * d, |r, c| a[(r % d, c % d)] * b[(r / d, c / d)])
}

/// SWAP of the two n-qubit registers.
pub fn swap_full(n: usize) -> DMatrix<f64> {
    let d = 1usize << n;
    let mut m = DMatrix::zeros(d * d, d * d);
    for k1 in 0..d {
        for k2 in 0..d {
            m[(k1 | (k2 << n), k2 | (k1 << n))] = 1.0;
        }
    }
    m
}

/// SWAP of the first n/2 qubits of register 1 with the first n/2 of
/// register 2.
pub fn swap_half(n: usize) -> Result<DMatrix<f64>, VerifyError> {
    if n % 2 != 0 {
        return Err(VerifyError::OddN(n));
    }
    let h = n / 2;
    let d = 1usize << n;
    let low = (1usize << h) - 1;
    let mut m = DMatrix::zeros(d * d, d * d);
    for k1 in 0..d {
        for k2 in 0..d {
            let s1 = (k2 & low) | (k1 & !low);
            let s2 = (k1 & low) | (k2 & !low);
            m[(k1 | (k2 << n), s1 | (s2 << n))] = 1.0;
        }
    }
    Ok(m)
}

/// `|Φ₀⟩⟨Φ₀|` on two registers.
pub fn phi0_projector(n: usize) -> DMatrix<f64> {
    let d = 1usize << n;
    let mut m = DMatrix::zeros(d * d, d * d);
    let amp = 1.0 / d as f64;
    for j in 0..d {
        for k in 0..d {
            m[(j | (j << n), k | (k << n))] = amp;
        }
    }
    m
}

/// The orthonormal commutant basis of `O(2^n) ⊗ O(2^n)`:
/// `P_sym/√d_sym`, `P_asym/√d_asym`, and the recentered `B̄` built from
/// `|Φ₀⟩⟨Φ₀|`.
pub struct CommutantBasis {
    pub elements: [DMatrix<f64>; 3],
    pub d_sym: f64,
    pub d_asym: f64,
}

pub fn commutant_basis(n: usize) -> Result<CommutantBasis, VerifyError> {
    if n > 5 {
        return Err(VerifyError::TooLarge(n, 5));
    }
    let d = (1usize << n) as f64;
    let d_sym = d * (d + 1.0) / 2.0;
    let d_asym = d * (d - 1.0) / 2.0;
    let swap = swap_full(n);
    let id = DMatrix::identity(swap.nrows(), swap.ncols());
    let p_sym = (&id + &swap) * 0.5;
    let p_asym = (&id - &swap) * 0.5;
    let b_bar = (phi0_projector(n) - &p_sym / d_sym) / (1.0 - 1.0 / d_sym).sqrt();
    Ok(CommutantBasis {
        elements: [&p_sym / d_sym.sqrt(), &p_asym / d_asym.sqrt(), b_bar],
        d_sym,
        d_asym,
    })
}

/// Hilbert-Schmidt inner product of real matrices, `tr(AᵀB)`.
pub fn hs_inner(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

/// Haar-like random orthogonal matrix: QR of a Gaussian with the diagonal of
/// R made positive.
pub fn random_orthogonal(d: usize, rng: &mut impl rand::Rng) -> DMatrix<f64> {
    use rand_distr::{Distribution, StandardNormal};
    let g: DMatrix<f64> = DMatrix::from_fn(d, d, |_, _| StandardNormal.sample(rng));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for i in 0..d {
        if r[(i, i)] < 0.0 {
            for k in 0..d {
                q[(k, i)] = -q[(k, i)];
            }
        }
    }
    q
}

// ---------------------------------------------------------------------------
// Twirl check.

#[derive(Debug, Clone, Serialize)]
pub struct TwirlReport {
    pub n: usize,
    pub group_order: usize,
    pub max_deviation: f64,
    pub fixed_point_deviation: f64,
    pub kernel_deviation: f64,
    pub gram_deviation: f64,
}

impl TwirlReport {
    pub fn pass(&self) -> bool {
        self.max_deviation < 1e-8
            && self.fixed_point_deviation < 1e-8
            && self.kernel_deviation < 1e-8
            && self.gram_deviation < 1e-10
    }
}

fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0f64, |acc, x| acc.max(x.abs()))
}

/// Project onto the span of the commutant basis.
fn hs_project(basis: &CommutantBasis, x: &DMatrix<f64>) -> DMatrix<f64> {
    let mut out = DMatrix::zeros(x.nrows(), x.ncols());
    for b in &basis.elements {
        out += b * hs_inner(b, x);
    }
    out
}

/// Exact average of `C^{⊗2} X (C^{⊗2})ᵀ` over the enumerated group, compared
/// with the Hilbert-Schmidt projection of X onto the commutant span. Matching
/// the projection confirms the group is an orthogonal 2-design at this size.
pub fn twirl_check(n: usize, trials: usize, seed: u64) -> Result<TwirlReport, VerifyError> {
    let group = enumerate_group(n)?;
    let two_copies: Vec<DMatrix<f64>> = group
        .iter()
        .map(|t| {
            let u = t.to_dense_unitary()?;
            Ok(kron_two_copy(&u, &u))
        })
        .collect::<Result<_, StateError>>()?;
    let basis = commutant_basis(n)?;
    let d2 = two_copies[0].nrows();

    let twirl = |x: &DMatrix<f64>| -> DMatrix<f64> {
        let mut acc = DMatrix::zeros(d2, d2);
        for u2 in &two_copies {
            acc += u2 * x * u2.transpose();
        }
        acc / two_copies.len() as f64
    };

    let mut rng = substream(seed, Domain::Experiment, 0);
    let mut max_deviation = 0.0f64;
    for _ in 0..trials {
        let x = DMatrix::from_fn(d2, d2, |_, _| {
            use rand_distr::Distribution;
            rand_distr::StandardNormal.sample(&mut rng)
        });
        max_deviation = max_deviation.max(max_abs(&(twirl(&x) - hs_project(&basis, &x))));
    }

    // Fixed point: elements of the commutant are untouched.
    let in_commutant = &basis.elements[0] * 0.7 + &basis.elements[2] * 1.3;
    let fixed_point_deviation = max_abs(&(twirl(&in_commutant) - &in_commutant));

    // Kernel: anything HS-orthogonal to the commutant is annihilated.
    let mut rng2 = substream(seed, Domain::Experiment, 1);
    let raw = DMatrix::from_fn(d2, d2, |_, _| {
        use rand_distr::Distribution;
        rand_distr::StandardNormal.sample(&mut rng2)
    });
    let orth = &raw - hs_project(&basis, &raw);
    let kernel_deviation = max_abs(&twirl(&orth));

    // Lemma-level statement: the basis has an identity Gram matrix.
    let mut gram_deviation = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            let want = if i == j { 1.0 } else { 0.0 };
            gram_deviation = gram_deviation
                .max((hs_inner(&basis.elements[i], &basis.elements[j]) - want).abs());
        }
    }

    Ok(TwirlReport {
        n,
        group_order: group.len(),
        max_deviation,
        fixed_point_deviation,
        kernel_deviation,
        gram_deviation,
    })
}

// ---------------------------------------------------------------------------
// Entanglement scaling of CW states.

/// Constants (k, k′) in the exact two-copy average
/// `E[(C|W⟩⟨W|C†)^{⊗2}] = 4^{−n}(k·P_sym + 2^n·k′·|Φ₀⟩⟨Φ₀|)`, derived by
/// projecting onto the commutant basis. Uses `tr(P_sym ρ⊗ρ) = 1` and
/// `⟨Φ₀|ρ⊗ρ|Φ₀⟩ = 2^{−n}` for real pure ρ.
pub fn cw_constants(n: usize) -> (f64, f64) {
    let d = (1u64 << n) as f64;
    let d_sym = d * (d + 1.0) / 2.0;
    let lambda = (1.0 / d - 1.0 / d_sym) / (1.0 - 1.0 / d_sym);
    let k = d * d * (1.0 - lambda) / d_sym;
    let k_prime = lambda * d;
    (k, k_prime)
}

/// Independent dense route to (k, k′): numerically project
/// `|W_n⟩⟨W_n|^{⊗2}` onto the commutant basis (n ≤ 4). Also returns the
/// Hilbert-Schmidt overlap with `P_asym`, which must vanish by
/// swap-invariance.
pub fn cw_constants_dense(n: usize) -> Result<(f64, f64, f64), VerifyError> {
    if n > 4 {
        return Err(VerifyError::TooLarge(n, 4));
    }
    let w = CwState::make_w_state(n)?.to_dense()?;
    let v = w.vector().expect("pure");
    let amps: Vec<f64> = v.iter().map(|a| a.re).collect();
    let d = amps.len();
    let rho2 = DMatrix::from_fn(d * d, d * d, |r, c| {
        amps[r % d] * amps[r / d] * amps[c % d] * amps[c / d]
    });
    let basis = commutant_basis(n)?;
    let c_sym = hs_inner(&basis.elements[0], &rho2);
    let c_asym = hs_inner(&basis.elements[1], &rho2);
    let c_bar = hs_inner(&basis.elements[2], &rho2);
    // Twirl = a·P_sym + b·|Φ₀⟩⟨Φ₀| with the recentering of B̄ undone.
    let d_sym = basis.d_sym;
    let scale = (1.0 - 1.0 / d_sym).sqrt();
    let b = c_bar / scale;
    let a = c_sym / d_sym.sqrt() - c_bar / (d_sym * scale);
    let dd = d as f64;
    Ok((dd * dd * a, dd * b, c_asym))
}

/// Exact Haar prediction of the mean half-cut purity of CW(n).
pub fn predicted_mean_purity(n: usize) -> f64 {
    let (k, k_prime) = cw_constants(n);
    let d = (1u64 << n) as f64;
    k / d.sqrt() + k_prime / d
}

#[derive(Debug, Clone, Serialize)]
pub struct EntanglementRow {
    pub n: usize,
    pub samples: usize,
    pub mean_s2: f64,
    pub se_s2: f64,
    pub mean_purity: f64,
    pub se_purity: f64,
    pub predicted_purity: f64,
    /// −log₂ of the predicted mean purity: the lower bound on E[S₂].
    pub predicted_s2_bound: f64,
    pub k: f64,
    pub k_prime: f64,
    /// Whether the Monte Carlo purity mean is within 3 standard errors of
    /// the exact 2-design prediction.
    pub purity_within_3se: bool,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

pub fn linear_fit(xs: &[f64], ys: &[f64]) -> LinearFit {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == 0.0 { 1.0 } else { (sxy * sxy) / (sxx * syy) };
    LinearFit { slope, intercept, r_squared }
}

#[derive(Debug, Clone, Serialize)]
pub struct EntanglementReport {
    pub rows: Vec<EntanglementRow>,
    pub fit: LinearFit,
}

impl EntanglementReport {
    pub fn pass(&self) -> bool {
        self.fit.slope > 0.0
            && self.fit.r_squared > 0.95
            && self.rows.iter().all(|r| r.purity_within_3se)
    }
}

/// Monte Carlo average of the half-cut Rényi-2 entropy over random real
/// Cliffords applied to `|W_n⟩`, against the exact 2-design prediction.
pub fn entanglement_average_check(
    ns: &[usize],
    samples: usize,
    depth_factor: usize,
    seed: u64,
) -> Result<EntanglementReport, VerifyError> {
    let mut rows = Vec::new();
    for (ni, &n) in ns.iter().enumerate() {
        if n % 2 != 0 {
            return Err(VerifyError::OddN(n));
        }
        if n > 12 {
            return Err(VerifyError::TooLarge(n, 12));
        }
        let purities: Vec<f64> = (0..samples)
            .into_par_iter()
            .map(|s| {
                let mut rng = substream(seed, Domain::Experiment, (ni * samples + s) as u64);
                let t = random_real_clifford(n, depth_factor * n, &mut rng);
                let st = CwState::make_w_state(n)
                    .expect("valid n")
                    .with_tableau(t)
                    .expect("matching n")
                    .to_dense()
                    .expect("n ≤ 12");
                let red = st.reduced_second_half().expect("even n");
                red.iter().map(|a| a.norm_sqr()).sum()
            })
            .collect();
        let s2: Vec<f64> = purities.iter().map(|p| -p.log2()).collect();
        let stats = |v: &[f64]| -> (f64, f64) {
            let m = v.iter().sum::<f64>() / v.len() as f64;
            let var = v.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (v.len() - 1) as f64;
            (m, (var / v.len() as f64).sqrt())
        };
        let (mean_purity, se_purity) = stats(&purities);
        let (mean_s2, se_s2) = stats(&s2);
        let predicted_purity = predicted_mean_purity(n);
        let (k, k_prime) = cw_constants(n);
        rows.push(EntanglementRow {
            n,
            samples,
            mean_s2,
            se_s2,
            mean_purity,
            se_purity,
            predicted_purity,
            predicted_s2_bound: -predicted_purity.log2(),
            k,
            k_prime,
            purity_within_3se: (mean_purity - predicted_purity).abs() <= 3.0 * se_purity,
        });
    }
    let xs: Vec<f64> = rows.iter().map(|r| r.n as f64).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.mean_s2).collect();
    Ok(EntanglementReport { fit: linear_fit(&xs, &ys), rows })
}

// ---------------------------------------------------------------------------
// Pauli counting bounds.

fn binomial_u128(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Exact number of labels with `|⟨P_a⟩| > threshold`.
///
/// Closed-form enumeration for W/Dicke supports (any n; the Clifford
/// tableau permutes labels without changing values), dense scan otherwise
/// (n ≤ 8).
pub fn count_high_paulis(state: &QuantumState, threshold: f64) -> Result<u128, VerifyError> {
    if let QuantumState::Cw(cw) = state {
        let k = match cw.family() {
            SupportFamily::W => Some(1),
            SupportFamily::Dicke(k) if k <= 2 => Some(k),
            _ => None,
        };
        if let Some(k) = k {
            return Ok(crate::sampling::w_dicke_categories(cw.num_qubits(), k)
                .iter()
                .filter(|c| c.value.abs() > threshold)
                .map(|c| c.count)
                .sum());
        }
    }
    let dense = state.to_dense().map_err(|_| VerifyError::UnsupportedState)?;
    if dense.num_qubits() > 8 {
        return Err(VerifyError::TooLarge(dense.num_qubits(), 8));
    }
    let table = dense.expectation_table()?;
    Ok(table.iter().filter(|e| e.abs() > threshold).count() as u128)
}

#[derive(Debug, Clone, Serialize)]
pub struct CountingRow {
    pub n: usize,
    pub threshold: f64,
    pub count: u128,
    /// `2 Σ_{k ≤ ⌊n/8⌋} C(n,k)`.
    pub binomial_sum_bound: u128,
    /// `2^{n·H(1/8)+1}`.
    pub entropy_bound: f64,
    /// `2^{3n/4}`.
    pub final_bound: f64,
    pub pass: bool,
}

/// Check the counting chain `count ≤ 2Σ C(n,k) ≤ 2^{nH(1/8)+1} < 2^{3n/4}`
/// for CW states at threshold 3/4.
pub fn counting_check(ns: &[usize]) -> Vec<CountingRow> {
    let h = |x: f64| -x * x.log2() - (1.0 - x) * (1.0 - x).log2();
    ns.iter()
        .map(|&n| {
            let state = QuantumState::Cw(CwState::make_w_state(n).expect("valid n"));
            let count = count_high_paulis(&state, 0.75).expect("closed form");
            let binomial_sum_bound: u128 = 2 * (0..=(n / 8)).map(|k| binomial_u128(n, k)).sum::<u128>();
            let entropy_bound = (n as f64 * h(0.125) + 1.0).exp2();
            let final_bound = (0.75 * n as f64).exp2();
            let pass = count <= binomial_sum_bound
                && (binomial_sum_bound as f64) <= entropy_bound
                && entropy_bound < final_bound
                && (count as f64) < final_bound;
            CountingRow {
                n,
                threshold: 0.75,
                count,
                binomial_sum_bound,
                entropy_bound,
                final_bound,
                pass,
            }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Doped-state separation.

/// What to compare against the CW state in [`doped_separation_demo`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DopedInput {
    /// A random Clifford circuit with `t` interleaved π/4 phase gates.
    TDoped(usize),
    /// The CW state itself (the demo must report inapplicable).
    CwCopy,
}

#[derive(Debug, Clone, Serialize)]
pub struct DopedReport {
    pub n: usize,
    pub t: Option<usize>,
    /// Labels with |⟨P⟩| ≥ 1 − 1e−9 on the doped state.
    pub stabilizer_count: u128,
    /// Guaranteed minimum 2^{n−t} when applicable.
    pub stabilizer_floor: Option<u128>,
    /// Labels with |⟨P⟩| > 3/4 on the CW state.
    pub cw_high_count: u128,
    /// Whether the counting argument certifies a witness.
    pub applicable: bool,
    pub witness: Option<String>,
    pub witness_gap: Option<f64>,
    /// Implied lower bound on ‖ρ − ρ′‖_tr (equals the witness gap).
    pub trace_distance_lower_bound: Option<f64>,
}

/// Dense state of a random real-Clifford circuit with `t` interleaved
/// π/4 phase gates on random sites, applied to |0…0⟩.
pub fn t_doped_state(n: usize, t: usize, rng: &mut impl rand::Rng) -> DenseState {

    let circuit = random_real_clifford(n, default_depth(n), rng);
    let gates = circuit.gate_log().expect("constructed with log").to_vec();
    let mut positions: Vec<usize> =
        (0..t).map(|_| rng.gen_range(0..=gates.len())).collect();
    positions.sort_unstable();
    let mut v = vec![C64::new(0.0, 0.0); 1 << n];
    v[0] = C64::new(1.0, 0.0);
    let mut pos_iter = positions.into_iter().peekable();
    for (gi, g) in gates.iter().enumerate() {
        while pos_iter.peek() == Some(&gi) {
            pos_iter.next();
            let site = rng.gen_range(0..n);
            apply_single_qubit_vec(&mut v, site, &phase_matrix(std::f64::consts::FRAC_PI_4));
        }
        g.apply_vec(&mut v);
    }
    for _ in pos_iter {
        let site = rng.gen_range(0..n);
        apply_single_qubit_vec(&mut v, site, &phase_matrix(std::f64::consts::FRAC_PI_4));
    }
    DenseState::from_vector(n, nalgebra::DVector::from_vec(v)).expect("unitary evolution")
}

/// Exhibit a Pauli separating a t-doped state from a sampled CW state.
///
/// When the counting premise holds (stabilizer count exceeds the CW high
/// count), some Pauli has |⟨P⟩| = 1 on the doped state but ≤ 3/4 on the CW
/// state, certifying `‖ρ − ρ′‖_tr ≥ 1/4`.
pub fn doped_separation_demo(
    n: usize,
    input: DopedInput,
    seed: u64,
) -> Result<DopedReport, VerifyError> {
    if n > 8 {
        return Err(VerifyError::TooLarge(n, 8));
    }
    let mut rng = substream(seed, Domain::Experiment, 0);
    let cw = random_cw_state(n, &mut rng);
    let cw_high_count = count_high_paulis(&QuantumState::Cw(cw.clone()), 0.75)?;
    let (dense_other, t) = match input {
        DopedInput::TDoped(t) => (t_doped_state(n, t, &mut rng), Some(t)),
        DopedInput::CwCopy => (cw.to_dense()?, None),
    };
    let table = dense_other.expectation_table()?;
    let stabilizer_labels: Vec<usize> =
        (0..table.len()).filter(|&i| table[i].abs() >= 1.0 - 1e-9).collect();
    let stabilizer_count = stabilizer_labels.len() as u128;
    let stabilizer_floor = t.map(|t| 1u128 << (n - t.min(n)));
    let applicable = stabilizer_count > cw_high_count;
    let mut witness = None;
    let mut witness_gap = None;
    if applicable {
        for &idx in &stabilizer_labels {
            let p = PauliString::from_label_index(n, idx);
            let on_cw = cw.expectation(&p)?;
            if on_cw.abs() <= 0.75 {
                witness_gap = Some(table[idx].abs() - on_cw.abs());
                witness = Some(p.to_string());
                break;
            }
        }
    }
    Ok(DopedReport {
        n,
        t,
        stabilizer_count,
        stabilizer_floor,
        cw_high_count,
        applicable,
        witness,
        witness_gap,
        trace_distance_lower_bound: witness_gap,
    })
}

// ---------------------------------------------------------------------------
// Continuity lemmas.

#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub trials: usize,
    pub sum_bound_violations: usize,
    pub tv_bound_violations: usize,
    pub cdf_bound_violations: usize,
    /// Smallest slack observed in each inequality (negative = violation).
    pub min_sum_slack: f64,
    pub min_tv_slack: f64,
    pub min_cdf_slack: f64,
}

impl LemmaReport {
    pub fn pass(&self) -> bool {
        self.sum_bound_violations == 0
            && self.tv_bound_violations == 0
            && self.cdf_bound_violations == 0
    }
}

/// Random-pair check of the distribution continuity bounds
/// `Σ_a |tr ρ²·p_ρ − tr σ²·p_σ| ≤ 2‖ρ−σ‖_tr`,
/// `max{tr ρ², tr σ²}·TV(p_ρ, p_σ) ≤ 2‖ρ−σ‖_tr`, and
/// `F_ρ′(ε) ≤ F_ρ(2ε) + 4‖ρ−ρ′‖_tr / tr ρ′²` on an ε grid.
pub fn lemma_continuity_check(trials: usize, max_n: usize, seed: u64) -> LemmaReport {
    let results: Vec<(f64, f64, f64)> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            use rand::Rng;
            let mut rng = substream(seed, Domain::Experiment, trial as u64);
            let n = rng.gen_range(2..=max_n);
            let d = 1usize << n;
            let make = |rng: &mut rand_chacha::ChaCha12Rng| -> DenseState {
                if rng.gen::<bool>() {
                    let rank = rng.gen_range(1..=d);
                    DenseState::random_mixed(n, rank, rng)
                } else {
                    DenseState::random_complex_pure(n, rng).to_density_state()
                }
            };
            let a = make(&mut rng);
            let b = make(&mut rng);
            let ta = a.expectation_table().expect("dense");
            let tb = b.expectation_table().expect("dense");
            let dist = crate::noise::trace_distance(&a, &b).expect("dense");
            let (pa, pb) = (a.purity(), b.purity());
            // Σ_a |⟨P⟩²_ρ − ⟨P⟩²_σ| / 2^n = Σ_a |trρ²·p_ρ(a) − trσ²·p_σ(a)|.
            let lhs_sum: f64 =
                ta.iter().zip(&tb).map(|(x, y)| (x * x - y * y).abs()).sum::<f64>() / d as f64;
            let sum_slack = 2.0 * dist - lhs_sum;
            let tv = {
                let pda: Vec<f64> = ta.iter().map(|e| e * e / (d as f64 * pa)).collect();
                let pdb: Vec<f64> = tb.iter().map(|e| e * e / (d as f64 * pb)).collect();
                tv_distance(&pda, &pdb).expect("equal length")
            };
            let tv_slack = 2.0 * dist - pa.max(pb) * tv;
            // CDF continuity on a log grid of ε.
            let cdf = |table: &[f64], purity: f64, eps: f64| -> f64 {
                table
                    .iter()
                    .map(|e| e * e)
                    .filter(|&sq| sq <= eps)
                    .map(|sq| sq / (d as f64 * purity))
                    .sum()
            };
            let mut cdf_slack = f64::INFINITY;
            for i in 0..20 {
                let eps = 10f64.powf(-4.0 + 4.0 * i as f64 / 19.0);
                let slack = cdf(&ta, pa, 2.0 * eps) + 4.0 * dist / pb - cdf(&tb, pb, eps);
                cdf_slack = cdf_slack.min(slack);
            }
            (sum_slack, tv_slack, cdf_slack)
        })
        .collect();
    let tol = -1e-9;
    LemmaReport {
        trials,
        sum_bound_violations: results.iter().filter(|r| r.0 < tol).count(),
        tv_bound_violations: results.iter().filter(|r| r.1 < tol).count(),
        cdf_bound_violations: results.iter().filter(|r| r.2 < tol).count(),
        min_sum_slack: results.iter().map(|r| r.0).fold(f64::INFINITY, f64::min),
        min_tv_slack: results.iter().map(|r| r.1).fold(f64::INFINITY, f64::min),
        min_cdf_slack: results.iter().map(|r| r.2).fold(f64::INFINITY, f64::min),
    }
}

/// CDF of a perturbed CW state: for `‖ρ − ρ′‖_tr ≤ 1/10` and `ε < 2/n²`,
/// `F_ρ′(ε) ≤ 5‖ρ − ρ′‖_tr`. Returns (worst observed ratio, pass).
pub fn perturbed_cdf_check(ns: &[usize], seed: u64) -> Result<(f64, bool), VerifyError> {
    let mut worst = 0.0f64;
    for (i, &n) in ns.iter().enumerate() {
        if n % 2 != 0 {
            return Err(VerifyError::OddN(n));
        }
        let mut rng = substream(seed, Domain::Experiment, i as u64);
        let ideal = random_cw_state(n, &mut rng).to_dense()?;
        let (_, noisy) = crate::noise::calibrate_channel(
            &crate::noise::ChannelKind::CoherentPhase { sites: (0..n).collect() },
            &ideal,
            0.08,
        )
        .map_err(|_| VerifyError::UnsupportedState)?;
        let dist = crate::noise::trace_distance(&ideal, &noisy).expect("dense");
        assert!(dist <= 0.1);
        let table = noisy.expectation_table()?;
        let d = (1usize << n) as f64;
        let purity = noisy.purity();
        for frac in [0.3, 0.6, 0.99] {
            let eps = frac * 2.0 / (n * n) as f64;
            let f: f64 = table
                .iter()
                .map(|e| e * e)
                .filter(|&sq| sq <= eps)
                .map(|sq| sq / (d * purity))
                .sum();
            worst = worst.max(f / (5.0 * dist));
        }
    }
    Ok((worst, worst <= 1.0))
}

// ---------------------------------------------------------------------------
// Suite runner.

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub pass: bool,
    pub details: serde_json::Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub pass: bool,
    pub checks: Vec<CheckReport>,
}

/// Run the named verification suite ("all" or a specific check).
pub fn run_suite(which: &str, seed: u64) -> Result<SuiteReport, VerifyError> {
    let mut checks = Vec::new();
    let all = which == "all";

    if all || which == "twirl" {
        for n in 1..=2 {
            let r = twirl_check(n, 20, seed)?;
            checks.push(CheckReport {
                name: format!("twirl_n{n}"),
                pass: r.pass(),
                details: serde_json::to_value(&r).expect("serializable"),
            });
        }
    }

    if all || which == "commutant" {
        let mut rng = substream(seed, Domain::Experiment, 7);
        for n in 1..=3usize {
            let basis = commutant_basis(n)?;
            let mut gram_dev = 0.0f64;
            for i in 0..3 {
                for j in 0..3 {
                    let want = if i == j { 1.0 } else { 0.0 };
                    gram_dev = gram_dev
                        .max((hs_inner(&basis.elements[i], &basis.elements[j]) - want).abs());
                }
            }
            let trials = if n <= 2 { 100 } else { 25 };
            let d = 1usize << n;
            let mut comm_dev = 0.0f64;
            for _ in 0..trials {
                let o = random_orthogonal(d, &mut rng);
                let oo = kron_two_copy(&o, &o);
                for b in &basis.elements {
                    comm_dev = comm_dev.max(max_abs(&(b * &oo - &oo * b)));
                }
            }
            checks.push(CheckReport {
                name: format!("commutant_n{n}"),
                pass: gram_dev < 1e-10 && comm_dev < 1e-8,
                details: json!({"gram_deviation": gram_dev, "commutator_deviation": comm_dev, "trials": trials}),
            });
        }
    }

    if all || which == "swap-traces" {
        for n in [2usize, 4] {
            let sh = swap_half(n)?;
            let p_sym = {
                let swap = swap_full(n);
                let id = DMatrix::identity(swap.nrows(), swap.ncols());
                (&id + &swap) * 0.5
            };
            let tr_sym = (&sh * &p_sym).trace();
            let tr_phi = (&sh * phi0_projector(n)).trace();
            let want = (1.5 * n as f64).exp2();
            let pass = tr_sym == want && (tr_phi - 1.0).abs() < 1e-12;
            checks.push(CheckReport {
                name: format!("swap_traces_n{n}"),
                pass,
                details: json!({"tr_swap_p_sym": tr_sym, "expected": want, "tr_swap_phi0": tr_phi}),
            });
        }
    }

    if all || which == "constants" {
        for n in [2usize, 4] {
            let (k, kp) = cw_constants(n);
            let (kd, kpd, asym) = cw_constants_dense(n)?;
            let pass = (k - kd).abs() < 1e-6 && (kp - kpd).abs() < 1e-6 && asym.abs() < 1e-12;
            checks.push(CheckReport {
                name: format!("cw_constants_n{n}"),
                pass,
                details: json!({"k": k, "k_dense": kd, "k_prime": kp, "k_prime_dense": kpd, "asym_overlap": asym}),
            });
        }
    }

    if all || which == "entangle" {
        let r = entanglement_average_check(&[4, 6, 8], 100, 10, seed)?;
        checks.push(CheckReport {
            name: "entanglement_scaling".into(),
            pass: r.pass(),
            details: serde_json::to_value(&r).expect("serializable"),
        });
    }

    if all || which == "counting" {
        let rows = counting_check(&[8, 12, 16]);
        checks.push(CheckReport {
            name: "pauli_counting".into(),
            pass: rows.iter().all(|r| r.pass),
            details: serde_json::to_value(&rows).expect("serializable"),
        });
    }

    if all || which == "doped" {
        let mut pass = true;
        let mut details = Vec::new();
        for t in [0usize, 1, 2] {
            let r = doped_separation_demo(8, DopedInput::TDoped(t), seed + t as u64)?;
            pass &= r.applicable && r.witness.is_some() && r.witness_gap.unwrap_or(0.0) >= 0.25;
            details.push(serde_json::to_value(&r).expect("serializable"));
        }
        let same = doped_separation_demo(8, DopedInput::CwCopy, seed)?;
        pass &= !same.applicable && same.witness.is_none();
        details.push(serde_json::to_value(&same).expect("serializable"));
        checks.push(CheckReport {
            name: "doped_separation".into(),
            pass,
            details: serde_json::Value::Array(details),
        });
    }

    if all || which == "lemmas" {
        let r = lemma_continuity_check(200, 5, seed);
        checks.push(CheckReport {
            name: "lemma_continuity".into(),
            pass: r.pass(),
            details: serde_json::to_value(&r).expect("serializable"),
        });
        let (worst, ok) = perturbed_cdf_check(&[4, 6, 8], seed)?;
        checks.push(CheckReport {
            name: "perturbed_cdf".into(),
            pass: ok,
            details: json!({"worst_ratio_vs_5tau": worst}),
        });
    }

    if all || which == "cdf" {
        let mut pass = true;
        let mut rows = Vec::new();
        for n in [4usize, 6, 8, 10] {
            let state = QuantumState::Cw(CwState::make_w_state(n)?);
            let eps = 3.0 / (n * n) as f64;
            let f = crate::distributions::cdf_exact(&state, eps)?;
            pass &= f == 0.0;
            rows.push(json!({"n": n, "eps": eps, "F": f}));
        }
        checks.push(CheckReport {
            name: "cdf_vanishing".into(),
            pass,
            details: serde_json::Value::Array(rows),
        });
    }

    if all || which == "real-pq" {
        let mut rng = substream(seed, Domain::Experiment, 11);
        let mut worst = 0.0f64;
        for _ in 0..10 {
            use rand::Rng;
            let n = rng.gen_range(2..=5);
            let st = QuantumState::Dense(DenseState::random_real_pure(n, &mut rng));
            let p = pauli_distribution(&st)?;
            let q = bell_distribution(&st)?;
            worst = worst.max(tv_distance(&p, &q).expect("equal length"));
        }
        checks.push(CheckReport {
            name: "real_state_p_equals_q".into(),
            pass: worst < 1e-10,
            details: json!({"worst_tv": worst}),
        });
    }

    if checks.is_empty() {
        return Err(VerifyError::UnsupportedState);
    }
    Ok(SuiteReport { pass: checks.iter().all(|c| c.pass), checks })
}
