//! Pauli and Bell distributions, CDFs of squared expectations, and
//! sample-complexity planning.
//!
//! The central objects are the Pauli distribution
//! `p_ρ(a) = ⟨P_a⟩²/(2^n tr ρ²)`, the Bell distribution
//! `q_ρ(a) = ⟨Φ_a|ρ⊗ρ|Φ_a⟩` (equal to `p_ρ` for real pure states), and the
//! CDF `F_ρ(ε) = Σ_a p_ρ(a)·θ(ε − ⟨P_a⟩²)` of the squared expectation under
//! `p_ρ`. Dense tables are indexed by `x + (z << n)`.

use rand::Rng;
use thiserror::Error;


use crate::sampling::{pauli_shots, BellSampler};
use crate::states::dense::wht_f64_inplace;
use crate::states::{QuantumState, StateError, SupportFamily};

#[derive(Debug, Error)]
pub enum DistError {
    #[error("tables have different lengths: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("empirical CDF already exceeds the target at x = 0")]
    NoSolution,
    #[error("state must be real and pure for Bell-based Pauli sampling")]
    NotReal,
    #[error(transparent)]
    State(#[from] StateError),
}

/// Full 4^n table of the Pauli distribution `p_ρ(a) = ⟨P_a⟩²/(2^n tr ρ²)`.
pub fn pauli_distribution(state: &QuantumState) -> Result<Vec<f64>, StateError> {
    let dense = state.to_dense()?;
    let table = dense.expectation_table()?;
    let norm = (1u64 << dense.num_qubits()) as f64 * dense.purity();
    Ok(table.iter().map(|e| e * e / norm).collect())
}

/// Full 4^n table of the Bell distribution `q_ρ(a) = ⟨Φ_a|ρ⊗ρ|Φ_a⟩`.
///
/// Uses the Pauli-basis expansion
/// `q(a) = 4^{−n} Σ_b ⟨P_b⟩²(−1)^{y_b}(−1)^{⟨a,b⟩}`, a Walsh–Hadamard
/// transform over 2n bits after swapping the (x,z) halves of the index.
pub fn bell_distribution(state: &QuantumState) -> Result<Vec<f64>, StateError> {
    let dense = state.to_dense()?;
    let n = dense.num_qubits();
    let table = dense.expectation_table()?;
    let d = 1usize << n;
    let mask = d - 1;
    let mut t = vec![0.0f64; d * d];
    for (idx, e) in table.iter().enumerate() {
        let (x, z) = (idx & mask, idx >> n);
        let y = (x & z).count_ones();
        let sgn = if y % 2 == 1 { -1.0 } else { 1.0 };
        // Swapped halves so the symplectic form becomes a plain AND-parity.
        t[z | (x << n)] = sgn * e * e;
    }
    wht_f64_inplace(&mut t);
    let norm = (d as f64) * (d as f64);
    for q in &mut t {
        *q /= norm;
        debug_assert!(*q > -1e-9);
    }
    Ok(t)
}

/// Exact CDF `F_ρ(ε)`; right-continuous (labels with `⟨P⟩² = ε` included).
pub fn cdf_exact(state: &QuantumState, epsilon: f64) -> Result<f64, StateError> {
    assert!(epsilon >= 0.0);
    if let QuantumState::Cw(cw) = state {
        // W/Dicke supports have a closed-form CDF at any n; the tableau does
        // not change it (conjugation permutes labels preserving values).
        match cw.family() {
            SupportFamily::W => return Ok(cw_cdf_closed_form(cw.num_qubits(), 1, epsilon)),
            SupportFamily::Dicke(k) if k <= 2 => {
                return Ok(cw_cdf_closed_form(cw.num_qubits(), k, epsilon))
            }
            _ => {}
        }
    }
    let dense = state.to_dense()?;
    let table = dense.expectation_table()?;
    let norm = (1u64 << dense.num_qubits()) as f64 * dense.purity();
    let mut f = 0.0;
    for e in &table {
        let sq = e * e;
        if sq <= epsilon {
            f += sq / norm;
        }
    }
    Ok(f)
}

/// Closed-form CDF of the Dicke(n,k) Pauli distribution, k ∈ {1, 2}.
pub fn cw_cdf_closed_form(n: usize, k: usize, epsilon: f64) -> f64 {
    crate::sampling::w_dicke_categories(n, k)
        .iter()
        .filter(|c| c.value * c.value <= epsilon)
        .map(|c| c.mass)
        .sum()
}

/// Total variation distance `½ Σ|p − q|`.
pub fn tv_distance(p: &[f64], q: &[f64]) -> Result<f64, DistError> {
    if p.len() != q.len() {
        return Err(DistError::LengthMismatch(p.len(), q.len()));
    }
    Ok(p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>() / 2.0)
}

// ---------------------------------------------------------------------------
// Empirical CDF of squared-expectation estimates.

/// Shots per squared-expectation estimate in [`build_empirical_cdf`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShotCount {
    Finite(u64),
    /// Substitute the exact `⟨P⟩²` (the K → ∞ limit).
    Exact,
}

impl std::fmt::Display for ShotCount {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ShotCount::Finite(k) => write!(f, "{k}"),
            ShotCount::Exact => write!(f, "inf"),
        }
    }
}

/// Empirical estimator `F_{ρ,N,K}(x) = (1/N) Σᵢ θ(x − αᵢ²(K))`: a
/// right-continuous nondecreasing step function built from N squared
/// estimates.
#[derive(Debug, Clone)]
pub struct EmpiricalCdf {
    samples: Vec<f64>,
    shots: ShotCount,
}

impl EmpiricalCdf {
    pub fn from_samples(mut samples: Vec<f64>, shots: ShotCount) -> Self {
        assert!(!samples.is_empty());
        samples.sort_by(|a, b| a.partial_cmp(b).expect("finite samples"));
        EmpiricalCdf { samples, shots }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn shots(&self) -> ShotCount {
        self.shots
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    /// Fraction of samples ≤ x.
    pub fn eval(&self, x: f64) -> f64 {
        self.samples.partition_point(|&s| s <= x) as f64 / self.samples.len() as f64
    }

    /// Half-width of the Dvoretzky–Kiefer–Wolfowitz confidence band at
    /// confidence 1−γ: `sup|F_N − F| ≤ √(ln(2/γ)/2N)`.
    pub fn dkw_band(&self, gamma: f64) -> f64 {
        ((2.0 / gamma).ln() / (2.0 * self.samples.len() as f64)).sqrt()
    }

    /// Largest x with `F(x) ≤ epsilon` (step-function inverse, ties toward
    /// larger x), plus the conservative halved value.
    pub fn resource_estimate(&self, epsilon: f64) -> Result<ResourceEstimate, DistError> {
        assert!(epsilon > 0.0 && epsilon < 1.0);
        let n = self.samples.len();
        let m = (epsilon * n as f64).floor() as usize;
        let m = m.min(n - 1);
        let x = self.samples[m];
        if x <= 0.0 {
            return Err(DistError::NoSolution);
        }
        Ok(ResourceEstimate { optimistic: x, conservative: x / 2.0 })
    }
}

/// The ε₂ solving `F_{ρ,N,K}(ε₂) = ε`, in both step-inverse conventions.
#[derive(Debug, Clone, Copy)]
pub struct ResourceEstimate {
    /// sup{x : F(x) ≤ ε}.
    pub optimistic: f64,
    /// Halved value: if `F(2x) ≤ ε/2` then `F_ρ(x) > ε` is exponentially
    /// unlikely, so x = optimistic/2 is the certified choice.
    pub conservative: f64,
}

/// Collect N Bell samples from a real pure state and estimate each
/// `⟨P_{aᵢ}⟩²` with K shots (or exactly).
pub fn build_empirical_cdf(
    state: &QuantumState,
    n_samples: usize,
    shots: ShotCount,
    rng: &mut impl Rng,
) -> Result<EmpiricalCdf, DistError> {
    if !(state.is_real() && state.is_pure()) {
        return Err(DistError::NotReal);
    }
    assert!(n_samples >= 1);
    let sampler = BellSampler::new(state)?;
    let mut samples = Vec::with_capacity(n_samples);
    for _ in 0..n_samples {
        let a = sampler.sample(rng);
        let alpha = match shots {
            ShotCount::Exact => state.expectation(&a)?,
            ShotCount::Finite(k) => pauli_shots(state, &a, k, rng)?,
        };
        samples.push(alpha * alpha);
    }
    Ok(EmpiricalCdf::from_samples(samples, shots))
}

// ---------------------------------------------------------------------------
// Sample-complexity planning.

/// Planned round/shot counts with the error split they were derived from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplePlan {
    pub n1: u64,
    pub n2: u64,
    pub eps1: f64,
    pub eps2: f64,
    pub delta: f64,
}

impl SamplePlan {
    /// Analytic failure budget `4·exp(−2ε₁²N₁) + 4N₁·exp(−ε₂²N₂/2)`.
    pub fn failure_budget(&self) -> f64 {
        failure_budget(self.eps1, self.eps2, self.n1, self.n2)
    }
}

pub fn failure_budget(eps1: f64, eps2: f64, n1: u64, n2: u64) -> f64 {
    4.0 * (-2.0 * eps1 * eps1 * n1 as f64).exp()
        + 4.0 * n1 as f64 * (-eps2 * eps2 * n2 as f64 / 2.0).exp()
}

/// Real-valued lower bounds behind [`sample_size_plan`]; exposed so the exact
/// scaling structure (ε → ε/2 quadruples N₁) can be checked without ceilings.
pub fn plan_bounds(eps1: f64, eps2: f64, delta: f64) -> (f64, f64) {
    // Smallest N₁ with 4exp(−2ε₁²N₁) ≤ e^{−δ}/2, then smallest N₂ with
    // 4N₁exp(−ε₂²N₂/2) ≤ e^{−δ}/2.
    let n1 = (8.0f64.ln() + delta) / (2.0 * eps1 * eps1);
    let n1_int = n1.ceil().max(1.0);
    let n2 = 2.0 * ((8.0 * n1_int).ln() + delta) / (eps2 * eps2);
    (n1, n2)
}

fn plan_from_splits(eps1: f64, eps2: f64, delta: f64) -> SamplePlan {
    let (n1, n2) = plan_bounds(eps1, eps2, delta);
    SamplePlan { n1: n1.ceil().max(1.0) as u64, n2: n2.ceil().max(1.0) as u64, eps1, eps2, delta }
}

/// Round/shot counts sufficient for `P{|f − c| > ε} ≤ e^{−δ}` on states
/// whose CDF vanishes below 3/n² (the error split is ε₁ = ε/8,
/// ε₂ = min{(ε/8)², 3/n²}).
pub fn sample_size_plan(n: usize, epsilon: f64, delta: f64) -> SamplePlan {
    assert!(epsilon > 0.0 && epsilon < 1.0 && delta > 0.0);
    let eps1 = epsilon / 8.0;
    let eps2 = (eps1 * eps1).min(3.0 / (n * n) as f64);
    plan_from_splits(eps1, eps2, delta)
}

/// Noise-tolerant plan: ε₁ = τ/8, ε₂ = min{(τ/8)², 1/n²}, targeting the
/// k·τ error guarantee on inputs within trace distance τ of the ideal family.
pub fn robustness_plan(n: usize, tau: f64, delta: f64) -> SamplePlan {
    assert!(tau > 0.0 && delta > 0.0);
    let eps1 = tau / 8.0;
    let eps2 = (eps1 * eps1).min(1.0 / (n * n) as f64);
    plan_from_splits(eps1, eps2, delta)
}

/// One row of the resource-estimation sweep.
#[derive(Debug, Clone)]
pub struct ResourceRow {
    pub n: usize,
    pub epsilon: f64,
    pub epsilon2_optimistic: f64,
    pub epsilon2_conservative: f64,
    pub n_samples: usize,
    pub shots: ShotCount,
    pub seed: u64,
}

/// CSV export with the fixed column set
/// `(n, epsilon, epsilon2_optimistic, epsilon2_conservative, N, K, seed)`.
pub fn resource_rows_to_csv(rows: &[ResourceRow]) -> String {
    let mut out = String::from("n,epsilon,epsilon2_optimistic,epsilon2_conservative,N,K,seed\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.n,
            r.epsilon,
            r.epsilon2_optimistic,
            r.epsilon2_conservative,
            r.n_samples,
            r.shots,
            r.seed
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::PauliString;
    use crate::states::{CwState, DenseState};
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn zero_state_distributions() {
        let st = QuantumState::Dense(DenseState::basis_state(1, 0).unwrap());
        let p = pauli_distribution(&st).unwrap();
        // p(I) = p(Z) = 1/2.
        assert!((p[0] - 0.5).abs() < 1e-12);
        assert!((p[2] - 0.5).abs() < 1e-12);
        assert!(p[1].abs() < 1e-12 && p[3].abs() < 1e-12);
        let q = bell_distribution(&st).unwrap();
        assert!(tv_distance(&p, &q).unwrap() < 1e-12);
    }

    #[test]
    fn real_pure_states_have_equal_tables() {
        let mut rng = ChaCha12Rng::seed_from_u64(60);
        for n in 2..=5usize {
            let st = QuantumState::Dense(DenseState::random_real_pure(n, &mut rng));
            let p = pauli_distribution(&st).unwrap();
            let q = bell_distribution(&st).unwrap();
            assert!(tv_distance(&p, &q).unwrap() < 1e-10, "n={n}");
            assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-9);
            assert!((q.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn bell_distribution_matches_circuit_oracle() {
        // Independent route: explicit |Φ_a⟩ inner products on ρ ⊗ ρ.
        let mut rng = ChaCha12Rng::seed_from_u64(61);
        for n in 1..=3usize {
            let st = DenseState::random_mixed(n, 3, &mut rng);
            let q = bell_distribution(&QuantumState::Dense(st.clone())).unwrap();
            let rho = st.density().unwrap();
            let d = 1usize << n;
            for idx in 0..(d * d) {
                let a = PauliString::from_label_index(n, idx);
                let phi = crate::states::dense::bell_phi_vector(&a);
                let mut want = 0.0;
                // ⟨Φ_a|ρ⊗ρ|Φ_a⟩ with copies on (low, high) registers.
                for r in 0..(d * d) {
                    for c in 0..(d * d) {
                        let amp = phi[r].conj()
                            * rho[(r & (d - 1), c & (d - 1))]
                            * rho[(r >> n, c >> n)]
                            * phi[c];
                        want += amp.re;
                    }
                }
                assert!((q[idx] - want).abs() < 1e-10, "n={n} idx={idx}");
            }
        }
    }

    #[test]
    fn w_state_table_matches_closed_form_entry() {
        // p(XXI) = (2/3)²/8 = 1/18 for the 3-qubit W state.
        let st = QuantumState::Cw(CwState::make_w_state(3).unwrap());
        let p = pauli_distribution(&st).unwrap();
        let idx = PauliString::from_letters("XXI").unwrap().label_index();
        assert!((p[idx] - 1.0 / 18.0).abs() < 1e-12);
    }

    #[test]
    fn cdf_examples() {
        let w4 = QuantumState::Cw(CwState::make_w_state(4).unwrap());
        // ε ≥ 1 ⇒ F = 1.
        assert!((cdf_exact(&w4, 1.0).unwrap() - 1.0).abs() < 1e-12);
        // Even n: F vanishes strictly below 4/n².
        assert_eq!(cdf_exact(&w4, 3.0 / 16.0).unwrap(), 0.0);
        assert_eq!(cw_cdf_closed_form(10, 1, 3.0 / 100.0), 0.0);
        assert!(cw_cdf_closed_form(10, 1, 4.1 / 100.0) > 0.0);
    }

    #[test]
    fn w4_cdf_matches_brute_force_enumeration() {
        // Brute force over all 256 labels with per-label expectation calls.
        let w4 = CwState::make_w_state(4).unwrap();
        let dense = w4.to_dense().unwrap();
        let state = QuantumState::Cw(w4);
        for eps in [0.0, 0.01, 0.0625, 0.25, 0.2501, 0.5, 1.0] {
            let mut brute = 0.0;
            for idx in 0..256 {
                let p = PauliString::from_label_index(4, idx);
                let e = dense.expectation(&p).unwrap();
                if e * e <= eps {
                    brute += e * e / 16.0;
                }
            }
            let got = cdf_exact(&state, eps).unwrap();
            assert!((got - brute).abs() < 1e-10, "eps={eps}: {got} vs {brute}");
        }
    }

    #[test]
    fn cdf_invariant_under_cliffords() {
        let mut rng = ChaCha12Rng::seed_from_u64(62);
        for n in [4usize, 6, 10] {
            let base = CwState::make_w_state(n).unwrap();
            let rotated = base
                .clone()
                .with_tableau(crate::clifford::random_real_clifford(n, 20, &mut rng))
                .unwrap();
            for eps in [0.0, 1.0 / (n * n) as f64, 4.0 / (n * n) as f64, 0.3, 1.0] {
                let a = cdf_exact(&QuantumState::Cw(base.clone()), eps).unwrap();
                let b = cdf_exact(&QuantumState::Cw(rotated.clone()), eps).unwrap();
                assert!((a - b).abs() < 1e-12);
            }
            // Dense route agrees with the closed form at dense-capable sizes.
            if n <= 10 {
                let dense = QuantumState::Dense(rotated.to_dense().unwrap());
                for eps in [0.02, 4.0 / (n * n) as f64 + 1e-9, 0.5] {
                    let a = cw_cdf_closed_form(n, 1, eps);
                    let b = cdf_exact(&dense, eps).unwrap();
                    assert!((a - b).abs() < 1e-9, "n={n} eps={eps}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn empirical_cdf_step_semantics() {
        let cdf = EmpiricalCdf::from_samples(vec![0.5], ShotCount::Exact);
        assert_eq!(cdf.eval(0.4999), 0.0);
        assert_eq!(cdf.eval(0.5), 1.0);
        let cdf = EmpiricalCdf::from_samples(vec![0.2, 0.1, 0.4, 0.2], ShotCount::Exact);
        assert_eq!(cdf.eval(0.0), 0.0);
        assert_eq!(cdf.eval(0.1), 0.25);
        assert_eq!(cdf.eval(0.2), 0.75);
        assert_eq!(cdf.eval(1.0), 1.0);
    }

    #[test]
    fn resource_estimate_step_inverse() {
        let cdf = EmpiricalCdf::from_samples(vec![0.1, 0.2, 0.3, 0.4, 0.5], ShotCount::Exact);
        // ε = 0.5 ⇒ m = 2 samples allowed below; sup{x: F(x) ≤ 0.5} = s[2] = 0.3.
        let r = cdf.resource_estimate(0.5).unwrap();
        assert_eq!(r.optimistic, 0.3);
        assert_eq!(r.conservative, 0.15);
        // CDF identically 0 below the first sample: any ε returns ≥ that sample.
        let cdf = EmpiricalCdf::from_samples(vec![0.25; 10], ShotCount::Exact);
        assert_eq!(cdf.resource_estimate(0.05).unwrap().optimistic, 0.25);
        // All-zero samples: no solution.
        let cdf = EmpiricalCdf::from_samples(vec![0.0; 10], ShotCount::Exact);
        assert!(matches!(cdf.resource_estimate(0.1), Err(DistError::NoSolution)));
    }

    #[test]
    fn empirical_cdf_converges_with_exact_shots() {
        let state = QuantumState::Cw(CwState::make_w_state(6).unwrap());
        let mut rng = ChaCha12Rng::seed_from_u64(63);
        let n_samples = 4000;
        let cdf = build_empirical_cdf(&state, n_samples, ShotCount::Exact, &mut rng).unwrap();
        let band = cdf.dkw_band(0.01);
        // Compare just above the jump points; exact-mode samples carry ~1e-16
        // arithmetic jitter around the closed-form category values.
        for cat in crate::sampling::w_dicke_categories(6, 1) {
            let x = cat.value * cat.value * (1.0 + 1e-9) + 1e-15;
            let exact = cw_cdf_closed_form(6, 1, x);
            assert!((cdf.eval(x) - exact).abs() <= band, "x={x}");
        }
    }

    #[test]
    fn dkw_band_coverage() {
        // Over many repetitions the sup-deviation should exceed the 99% band
        // in roughly ≤ 1% of runs.
        let state = QuantumState::Cw(CwState::make_w_state(4).unwrap());
        let jump_points: Vec<f64> = crate::sampling::w_dicke_categories(4, 1)
            .iter()
            .map(|c| c.value * c.value * (1.0 + 1e-9) + 1e-15)
            .collect();
        let exact: Vec<f64> =
            jump_points.iter().map(|&x| cw_cdf_closed_form(4, 1, x)).collect();
        let mut rng = ChaCha12Rng::seed_from_u64(64);
        let reps = 1000;
        let n_samples = 200;
        let mut exceed = 0;
        for _ in 0..reps {
            let cdf = build_empirical_cdf(&state, n_samples, ShotCount::Exact, &mut rng).unwrap();
            let band = cdf.dkw_band(0.01);
            let sup = jump_points
                .iter()
                .zip(&exact)
                .map(|(&x, &f)| (cdf.eval(x) - f).abs())
                .fold(0.0f64, f64::max);
            if sup > band {
                exceed += 1;
            }
        }
        assert!(exceed <= 25, "exceedances: {exceed}/1000");
    }

    #[test]
    fn nonreal_states_rejected_for_empirical_cdf() {
        let mut rng = ChaCha12Rng::seed_from_u64(65);
        let st = QuantumState::Dense(DenseState::random_complex_pure(3, &mut rng));
        assert!(matches!(
            build_empirical_cdf(&st, 10, ShotCount::Exact, &mut rng),
            Err(DistError::NotReal)
        ));
        let mixed = QuantumState::Dense(DenseState::random_mixed(2, 2, &mut rng));
        assert!(build_empirical_cdf(&mixed, 10, ShotCount::Exact, &mut rng).is_err());
    }

    #[test]
    fn plan_scaling_is_exact() {
        // Halving ε multiplies the real-valued N₁ bound by exactly 4.
        let (a1, _) = plan_bounds(0.1 / 8.0, 1e-4, 3.0);
        let (b1, _) = plan_bounds(0.05 / 8.0, 1e-4, 3.0);
        assert_eq!(b1, 4.0 * a1);
    }

    #[test]
    fn plan_satisfies_budget_and_is_minimal() {
        for (n, eps, delta) in [(8usize, 0.1, 3.0), (4, 0.25, 2.0), (16, 0.05, 1.0)] {
            let plan = sample_size_plan(n, eps, delta);
            let target = (-delta).exp();
            assert!(plan.failure_budget() <= target);
            // One fewer round/shot violates the respective inequality.
            let t1 = 4.0 * (-2.0 * plan.eps1 * plan.eps1 * (plan.n1 - 1) as f64).exp();
            assert!(t1 > target / 2.0);
            let t2 =
                4.0 * plan.n1 as f64 * (-plan.eps2 * plan.eps2 * (plan.n2 - 1) as f64 / 2.0).exp();
            assert!(t2 > target / 2.0);
        }
    }

    #[test]
    fn plan_regression_constants() {
        // Frozen after first computation: n = 8, ε = 0.1, δ = 3.
        let plan = sample_size_plan(8, 0.1, 3.0);
        assert_eq!(plan.n1, 16255);
        assert_eq!(plan.n2, 1_210_416_937);
        assert_eq!(plan.eps2, 0.1 * 0.1 / 64.0);
    }

    #[test]
    fn tv_distance_basics() {
        assert_eq!(tv_distance(&[0.5, 0.5], &[0.5, 0.5]).unwrap(), 0.0);
        assert_eq!(tv_distance(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 1.0);
        assert!(tv_distance(&[1.0], &[0.5, 0.5]).is_err());
    }
}
