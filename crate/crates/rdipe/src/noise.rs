//! Noise channels, trace distance, and the robustness experiment.
//!
//! Trace-norm convention: `‖A‖_tr` is the unnormalized Schatten-1 norm
//! (sum of singular values), so orthogonal pure states are at distance 2.
//! Every report header restates this. Channel strengths are calibrated by
//! bisection so experiments are parameterized by the achieved distance τ
//! rather than channel-native parameters.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::distributions::{bell_distribution, pauli_distribution, robustness_plan, tv_distance, SamplePlan};
use crate::protocol::{run_rdipe, ProtocolConfig, ProtocolError};
use crate::rng::{substream, Domain};
use crate::states::dense::{apply_single_qubit_density, phase_matrix, x_matrix, y_matrix, z_matrix, C64};
use crate::states::{cosine_oracle, random_cw_state, DenseState, QuantumState, StateError};

/// The robustness guarantee constant: error stays within 29τ.
pub const ROBUSTNESS_K: f64 = 29.0;

#[derive(Debug, Error)]
pub enum NoiseError {
    #[error("invalid channel parameter: {0}")]
    InvalidChannelParam(String),
    #[error("channel cannot be calibrated to trace distance {target:.3e} (reached {reached:.3e})")]
    CalibrationFailed { target: f64, reached: f64 },
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Protocol(#[from] ProtocolError),
}

/// A concrete noise channel with fixed parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum NoiseChannel {
    /// `ρ ↦ (1−p)ρ + p·I/2^n`.
    Depolarizing { p: f64 },
    /// Independent per-site Pauli flips.
    PauliPerSite { px: f64, py: f64, pz: f64 },
    /// Unitary phase `diag(1, e^{iθ})` on the listed sites; non-real for
    /// θ ∉ {0, π}.
    CoherentPhase { theta: f64, sites: Vec<usize> },
}

/// Channel family with a free strength parameter, for calibration.
#[derive(Debug, Clone, PartialEq)]
pub enum ChannelKind {
    Depolarizing,
    PauliPerSite,
    CoherentPhase { sites: Vec<usize> },
}

impl ChannelKind {
    fn at_strength(&self, s: f64) -> NoiseChannel {
        match self {
            ChannelKind::Depolarizing => NoiseChannel::Depolarizing { p: s },
            ChannelKind::PauliPerSite => {
                NoiseChannel::PauliPerSite { px: s / 3.0, py: s / 3.0, pz: s / 3.0 }
            }
            ChannelKind::CoherentPhase { sites } => {
                NoiseChannel::CoherentPhase { theta: s, sites: sites.clone() }
            }
        }
    }

    fn max_strength(&self) -> f64 {
        match self {
            ChannelKind::Depolarizing => 1.0,
            ChannelKind::PauliPerSite => 0.75,
            ChannelKind::CoherentPhase { .. } => std::f64::consts::FRAC_PI_2,
        }
    }
}

impl std::fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ChannelKind::Depolarizing => write!(f, "depolarizing"),
            ChannelKind::PauliPerSite => write!(f, "pauli"),
            ChannelKind::CoherentPhase { sites } => write!(f, "phase{sites:?}"),
        }
    }
}

/// Apply a CPTP channel (or coherent error) to a dense state.
pub fn apply_channel(state: &DenseState, ch: &NoiseChannel) -> Result<DenseState, NoiseError> {
    let n = state.num_qubits();
    match ch {
        NoiseChannel::Depolarizing { p } => {
            if !(0.0..=1.0).contains(p) {
                return Err(NoiseError::InvalidChannelParam(format!("p = {p}")));
            }
            let d = 1usize << n;
            let mut rho = state.density()?;
            let mix = *p / d as f64;
            rho *= C64::new(1.0 - p, 0.0);
            for i in 0..d {
                rho[(i, i)] += C64::new(mix, 0.0);
            }
            Ok(DenseState::from_density(n, rho)?)
        }
        NoiseChannel::PauliPerSite { px, py, pz } => {
            if *px < 0.0 || *py < 0.0 || *pz < 0.0 || px + py + pz > 1.0 {
                return Err(NoiseError::InvalidChannelParam(format!(
                    "px={px} py={py} pz={pz}"
                )));
            }
            let mut rho = state.density()?;
            for site in 0..n {
                let mut out = rho.clone() * C64::new(1.0 - px - py - pz, 0.0);
                for (prob, gate) in [(px, x_matrix()), (py, y_matrix()), (pz, z_matrix())] {
                    if *prob > 0.0 {
                        let mut term = rho.clone();
                        apply_single_qubit_density(&mut term, site, &gate);
                        out += term * C64::new(*prob, 0.0);
                    }
                }
                rho = out;
            }
            Ok(DenseState::from_density(n, rho)?)
        }
        NoiseChannel::CoherentPhase { theta, sites } => {
            if !theta.is_finite() {
                return Err(NoiseError::InvalidChannelParam("theta not finite".into()));
            }
            for &s in sites {
                if s >= n {
                    return Err(NoiseError::InvalidChannelParam(format!(
                        "site {s} out of range for {n} qubits"
                    )));
                }
            }
            match state.vector() {
                Some(v) => {
                    let mut amps: Vec<C64> = v.iter().cloned().collect();
                    for &site in sites {
                        crate::states::dense::apply_single_qubit_vec(
                            &mut amps,
                            site,
                            &phase_matrix(*theta),
                        );
                    }
                    Ok(DenseState::from_vector(n, nalgebra::DVector::from_vec(amps))?)
                }
                None => {
                    let mut rho = state.density()?;
                    for &site in sites {
                        apply_single_qubit_density(&mut rho, site, &phase_matrix(*theta));
                    }
                    Ok(DenseState::from_density(n, rho)?)
                }
            }
        }
    }
}

/// Unnormalized trace distance `‖ρ − σ‖_tr = Σ |eig(ρ − σ)|`.
pub fn trace_distance(a: &DenseState, b: &DenseState) -> Result<f64, NoiseError> {
    if a.num_qubits() != b.num_qubits() {
        return Err(NoiseError::State(StateError::DimensionMismatch(
            a.num_qubits(),
            b.num_qubits(),
        )));
    }
    let diff = a.density()? - b.density()?;
    Ok(trace_norm(&diff))
}

/// Schatten-1 norm of a Hermitian matrix via its eigenvalues.
pub fn trace_norm(m: &DMatrix<C64>) -> f64 {
    m.clone().symmetric_eigen().eigenvalues.iter().map(|l| l.abs()).sum()
}

/// Bisect the channel strength until `‖ρ − ρ′‖_tr = tau` within 1%.
pub fn calibrate_channel(
    kind: &ChannelKind,
    state: &DenseState,
    tau: f64,
) -> Result<(NoiseChannel, DenseState), NoiseError> {
    if tau == 0.0 {
        let ch = kind.at_strength(0.0);
        let out = apply_channel(state, &ch)?;
        return Ok((ch, out));
    }
    let dist_at = |s: f64| -> Result<f64, NoiseError> {
        trace_distance(state, &apply_channel(state, &kind.at_strength(s))?)
    };
    let mut hi = kind.max_strength();
    let reached = dist_at(hi)?;
    if reached < tau {
        return Err(NoiseError::CalibrationFailed { target: tau, reached });
    }
    let mut lo = 0.0f64;
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if dist_at(mid)? < tau {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo) / hi < 1e-6 {
            break;
        }
    }
    let ch = kind.at_strength(hi);
    let out = apply_channel(state, &ch)?;
    let achieved = trace_distance(state, &out)?;
    if (achieved - tau).abs() > 0.01 * tau {
        return Err(NoiseError::CalibrationFailed { target: tau, reached: achieved });
    }
    Ok((ch, out))
}

/// Configuration of one robustness experiment.
#[derive(Debug, Clone)]
pub struct RobustnessConfig {
    pub n: usize,
    pub tau: f64,
    pub channel: ChannelKind,
    pub runs: usize,
    pub delta: f64,
    pub seed: u64,
}

/// Results of a robustness experiment at one τ.
#[derive(Debug, Clone, Serialize)]
pub struct RobustnessReport {
    pub n: usize,
    pub tau: f64,
    pub channel: String,
    /// Trace-norm convention: unnormalized Schatten-1 (Σ singular values).
    pub norm_convention: &'static str,
    /// The guaranteed error bound k·τ, k = 29.
    pub bound: f64,
    pub empirical_max: f64,
    pub empirical_p95: f64,
    /// Measured Δ = TV(q′_mix, p′_mix) of the noisy inputs.
    pub delta_tv: f64,
    /// Analytic cap on Δ: 3τ.
    pub delta_bound: f64,
    pub oracle_c: f64,
    pub trace_dist_a: f64,
    pub trace_dist_b: f64,
    pub n1: u64,
    pub n2: u64,
    pub runs: usize,
    pub seed: u64,
    #[serde(skip)]
    pub errors: Vec<f64>,
}

/// Run the protocol on noisy CW inputs and compare the empirical error
/// distribution against the k·τ guarantee and the measured Δ against 3τ.
///
/// The two ideal inputs are independently rotated W states; each is pushed
/// to exactly trace distance τ by the calibrated channel. With τ = 0 the
/// experiment degenerates to the clean protocol planned at ε = 0.1.
pub fn robustness_experiment(cfg: &RobustnessConfig) -> Result<RobustnessReport, NoiseError> {
    let mut rng = substream(cfg.seed, Domain::Experiment, 0);
    let ideal_a = random_cw_state(cfg.n, &mut rng).to_dense()?;
    let ideal_b = random_cw_state(cfg.n, &mut rng).to_dense()?;
    let (_, noisy_a) = calibrate_channel(&cfg.channel, &ideal_a, cfg.tau)?;
    let (_, noisy_b) = calibrate_channel(&cfg.channel, &ideal_b, cfg.tau)?;
    let dist_a = trace_distance(&ideal_a, &noisy_a)?;
    let dist_b = trace_distance(&ideal_b, &noisy_b)?;

    let sa = QuantumState::Dense(noisy_a);
    let sb = QuantumState::Dense(noisy_b);
    let oracle_c = cosine_oracle(&sa, &sb)?;

    // Δ = TV((p_ρ′+p_σ′)/2, (q_ρ′+q_σ′)/2) from exact tables.
    let (pa, qa) = (pauli_distribution(&sa)?, bell_distribution(&sa)?);
    let (pb, qb) = (pauli_distribution(&sb)?, bell_distribution(&sb)?);
    let p_mix: Vec<f64> = pa.iter().zip(&pb).map(|(x, y)| 0.5 * (x + y)).collect();
    let q_mix: Vec<f64> = qa.iter().zip(&qb).map(|(x, y)| 0.5 * (x + y)).collect();
    let delta_tv = tv_distance(&p_mix, &q_mix).expect("equal-length tables");

    let (plan, bound) = if cfg.tau == 0.0 {
        let eps = 0.1;
        (crate::distributions::sample_size_plan(cfg.n, eps, cfg.delta), eps)
    } else {
        (robustness_plan(cfg.n, cfg.tau, cfg.delta), ROBUSTNESS_K * cfg.tau)
    };

    let errors: Vec<f64> = (0..cfg.runs)
        .into_par_iter()
        .map(|rep| {
            let run_config = protocol_config(cfg.seed, rep as u64, cfg.n, &plan);
            let out = run_rdipe(&sa, &sb, &run_config).expect("inputs satisfy preconditions");
            (out.f - oracle_c).abs()
        })
        .collect();

    let mut sorted = errors.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let empirical_max = *sorted.last().expect("at least one run");
    let empirical_p95 = sorted[((0.95 * (sorted.len() - 1) as f64).round()) as usize];

    Ok(RobustnessReport {
        n: cfg.n,
        tau: cfg.tau,
        channel: cfg.channel.to_string(),
        norm_convention: "schatten-1 (unnormalized)",
        bound,
        empirical_max,
        empirical_p95,
        delta_tv,
        delta_bound: 3.0 * cfg.tau,
        oracle_c,
        trace_dist_a: dist_a,
        trace_dist_b: dist_b,
        n1: plan.n1,
        n2: plan.n2,
        runs: cfg.runs,
        seed: cfg.seed,
        errors,
    })
}

fn protocol_config(seed: u64, rep: u64, n: usize, plan: &SamplePlan) -> ProtocolConfig {
    use rand::RngCore;
    let mut rng = substream(seed, Domain::Experiment, 1 + rep);
    ProtocolConfig::explicit(n, plan.n1, plan.n2, rng.next_u64(), rng.next_u64())
}

/// CSV export with the fixed column set
/// `(tau, bound_k_tau, empirical_max, empirical_p95, delta, delta_bound)`.
pub fn robustness_reports_to_csv(reports: &[RobustnessReport]) -> String {
    let mut out = String::from("tau,bound_k_tau,empirical_max,empirical_p95,delta,delta_bound\n");
    for r in reports {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.tau, r.bound, r.empirical_max, r.empirical_p95, r.delta_tv, r.delta_bound
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn depolarizing_identity_at_zero() {
        let mut rng = ChaCha12Rng::seed_from_u64(80);
        let st = DenseState::random_real_pure(3, &mut rng);
        let out = apply_channel(&st, &NoiseChannel::Depolarizing { p: 0.0 }).unwrap();
        assert!(trace_distance(&st, &out).unwrap() < 1e-10);
    }

    #[test]
    fn depolarizing_purity_closed_form() {
        // tr ρ′² = (1−p)² + 2(1−p)p/2^n + p²/2^n for pure input ρ.
        let mut rng = ChaCha12Rng::seed_from_u64(81);
        for n in 2..=4usize {
            let st = DenseState::random_real_pure(n, &mut rng);
            for p in [0.1, 0.37, 0.9] {
                let out = apply_channel(&st, &NoiseChannel::Depolarizing { p }).unwrap();
                let d = (1u64 << n) as f64;
                let want = (1.0 - p) * (1.0 - p) + 2.0 * (1.0 - p) * p / d + p * p / d;
                assert!((out.purity() - want).abs() < 1e-10, "n={n} p={p}");
            }
        }
    }

    #[test]
    fn phase_error_breaks_realness() {
        let mut rng = ChaCha12Rng::seed_from_u64(82);
        let st = DenseState::random_real_pure(3, &mut rng);
        let ch = NoiseChannel::CoherentPhase { theta: std::f64::consts::FRAC_PI_4, sites: vec![1] };
        let out = apply_channel(&st, &ch).unwrap();
        assert!(!out.is_real());
        let imag_mass: f64 =
            out.vector().unwrap().iter().map(|a| a.im * a.im).sum();
        assert!(imag_mass > 1e-4);
        // θ = π is the real gate Z.
        let z = apply_channel(&st, &NoiseChannel::CoherentPhase { theta: std::f64::consts::PI, sites: vec![1] })
            .unwrap();
        assert!(z.is_real());
    }

    #[test]
    fn channels_preserve_density_invariants() {
        let mut rng = ChaCha12Rng::seed_from_u64(83);
        let st = DenseState::random_mixed(3, 3, &mut rng);
        for ch in [
            NoiseChannel::Depolarizing { p: 0.3 },
            NoiseChannel::PauliPerSite { px: 0.05, py: 0.02, pz: 0.1 },
            NoiseChannel::CoherentPhase { theta: 0.7, sites: vec![0, 2] },
        ] {
            let out = apply_channel(&st, &ch).unwrap();
            out.check_positive(1e-10).unwrap();
            let tr: f64 = (0..8).map(|i| out.density().unwrap()[(i, i)].re).sum();
            assert!((tr - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn invalid_channel_params_rejected() {
        let st = DenseState::basis_state(2, 0).unwrap();
        assert!(apply_channel(&st, &NoiseChannel::Depolarizing { p: 1.5 }).is_err());
        assert!(apply_channel(&st, &NoiseChannel::PauliPerSite { px: 0.6, py: 0.5, pz: 0.0 })
            .is_err());
        assert!(apply_channel(&st, &NoiseChannel::CoherentPhase { theta: 0.1, sites: vec![5] })
            .is_err());
    }

    #[test]
    fn trace_distance_examples_and_svd_cross_check() {
        let zero = DenseState::basis_state(2, 0).unwrap();
        let one = DenseState::basis_state(2, 3).unwrap();
        assert!(trace_distance(&zero, &zero).unwrap() < 1e-12);
        // Orthogonal pure states sit at distance 2 in this convention.
        assert!((trace_distance(&zero, &one).unwrap() - 2.0).abs() < 1e-10);
        let mut rng = ChaCha12Rng::seed_from_u64(84);
        let a = DenseState::random_mixed(2, 4, &mut rng);
        let b = DenseState::random_mixed(2, 4, &mut rng);
        let via_eigen = trace_distance(&a, &b).unwrap();
        let diff = a.density().unwrap() - b.density().unwrap();
        let via_svd: f64 = diff.svd(false, false).singular_values.iter().sum();
        assert!((via_eigen - via_svd).abs() < 1e-9);
    }

    #[test]
    fn calibration_hits_target_distance() {
        let mut rng = ChaCha12Rng::seed_from_u64(85);
        let st = random_cw_state(4, &mut rng).to_dense().unwrap();
        for kind in [
            ChannelKind::Depolarizing,
            ChannelKind::PauliPerSite,
            ChannelKind::CoherentPhase { sites: vec![0, 1, 2, 3] },
        ] {
            let (_, noisy) = calibrate_channel(&kind, &st, 0.05).unwrap();
            let d = trace_distance(&st, &noisy).unwrap();
            assert!((d - 0.05).abs() <= 0.0005, "{kind}: {d}");
        }
        // Unreachable target fails loudly.
        assert!(matches!(
            calibrate_channel(&ChannelKind::CoherentPhase { sites: vec![0] }, &st, 1.9),
            Err(NoiseError::CalibrationFailed { .. })
        ));
    }

    #[test]
    fn bell_tv_respects_data_processing_bound() {
        // TV(q_ρ′, q_ρ) ≤ ‖ρ − ρ′‖_tr for channel outputs.
        let mut rng = ChaCha12Rng::seed_from_u64(86);
        for n in 2..=4usize {
            let st = DenseState::random_real_pure(n, &mut rng);
            let noisy = apply_channel(&st, &NoiseChannel::CoherentPhase { theta: 0.4, sites: vec![0] })
                .unwrap();
            let q0 = bell_distribution(&QuantumState::Dense(st.clone())).unwrap();
            let q1 = bell_distribution(&QuantumState::Dense(noisy.clone())).unwrap();
            let tv = tv_distance(&q0, &q1).unwrap();
            let dist = trace_distance(&st, &noisy).unwrap();
            assert!(tv <= dist + 1e-10, "n={n}: TV {tv} vs dist {dist}");
        }
    }

    #[test]
    fn correlated_two_copy_noise_shifts_bell_distribution_by_at_most_tau() {
        // An explicitly correlated two-copy state ρ̃ close to ρ⊗ρ still
        // yields Bell samples within TV ≤ ‖ρ̃ − ρ⊗ρ‖_tr of q_ρ.
        let n = 3usize;
        let d = 1usize << n;
        let mut rng = ChaCha12Rng::seed_from_u64(87);
        let st = DenseState::random_real_pure(n, &mut rng);
        let v = st.vector().unwrap();
        let joint = crate::states::dense::two_copy_vector(v, v);
        let pure2 = &joint * joint.adjoint();
        // Correlated defect: a maximally entangled pair of registers.
        let phi0 = crate::states::dense::bell_phi_vector(&crate::pauli::PauliString::identity(n));
        let defect = &phi0 * phi0.adjoint();
        let lambda = 0.04;
        let corr = pure2 * C64::new(1.0 - lambda, 0.0) + defect * C64::new(lambda, 0.0);
        let dist = trace_norm(&(corr.clone() - &joint * joint.adjoint()));
        // Bell distribution of the joint state: ⟨Φ_a|ρ̃|Φ_a⟩.
        let mut q_tilde = vec![0.0f64; d * d];
        let mut q_exact = vec![0.0f64; d * d];
        for idx in 0..(d * d) {
            let a = crate::pauli::PauliString::from_label_index(n, idx);
            let phi = crate::states::dense::bell_phi_vector(&a);
            q_tilde[idx] = (phi.adjoint() * &corr * &phi)[(0, 0)].re;
            q_exact[idx] = (phi.adjoint() * (&joint * joint.adjoint()) * &phi)[(0, 0)].re;
        }
        let tv = tv_distance(&q_tilde, &q_exact).unwrap();
        assert!(tv <= dist + 1e-10, "TV {tv} vs ‖ρ̃−ρ⊗ρ‖ {dist}");
        assert!(tv > 0.0);
    }

    #[test]
    fn robustness_experiment_small() {
        let cfg = RobustnessConfig {
            n: 4,
            tau: 0.05,
            channel: ChannelKind::CoherentPhase { sites: vec![0, 1, 2, 3] },
            runs: 10,
            delta: 1.0,
            seed: 7,
        };
        let report = robustness_experiment(&cfg).unwrap();
        assert!(report.empirical_max <= report.bound, "{report:?}");
        assert!(report.delta_tv <= report.delta_bound + 1e-12);
        assert_eq!(report.errors.len(), 10);
    }

    #[test]
    fn robustness_tau_zero_degenerates_to_clean_protocol() {
        let cfg = RobustnessConfig {
            n: 4,
            tau: 0.0,
            channel: ChannelKind::Depolarizing,
            runs: 5,
            delta: 2.0,
            seed: 8,
        };
        let report = robustness_experiment(&cfg).unwrap();
        assert!((report.oracle_c - 0.0).abs() <= 1.0);
        assert_eq!(report.delta_bound, 0.0);
        assert!(report.delta_tv < 1e-9);
        assert!(report.empirical_max <= 0.1, "max error {}", report.empirical_max);
    }
}
