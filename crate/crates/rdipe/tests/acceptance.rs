//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line (visible with `--nocapture`). Tolerances are pinned in
//! code; statistical checks run on fixed seeds so the suite is
//! deterministic.
//!
//! ```bash
//! cargo test -p rdipe --test acceptance -- --nocapture --test-threads=4
//! ```

use std::time::Instant;

use rayon::prelude::*;

use rdipe::clifford::random_real_clifford;
use rdipe::distributions::{
    build_empirical_cdf, cdf_exact, cw_cdf_closed_form, pauli_distribution, sample_size_plan,
    tv_distance, ShotCount,
};
use rdipe::noise::{robustness_experiment, ChannelKind, RobustnessConfig};
use rdipe::pauli::PauliString;
use rdipe::protocol::{run_rdipe, ProtocolConfig};
use rdipe::rng::{substream, Domain};
use rdipe::states::dense::C64;
use rdipe::states::{
    cosine_oracle, random_cw_state, CwState, DenseState, QuantumState,
};
use rdipe::verify::{
    commutant_basis, counting_check, entanglement_average_check, hs_inner, kron_two_copy,
    lemma_continuity_check, linear_fit, phi0_projector, swap_full, swap_half, twirl_check,
};

fn pass(criterion: u32, name: &str, details: String) {
    println!("ACCEPTANCE {criterion:02} ({name}): PASS — {details}");
}

/// Criterion 1: exact tables of real pure states satisfy p = q, with q
/// computed by an independent Bell-measurement circuit simulation.
#[test]
fn criterion_01_real_state_identity() {
    let started = Instant::now();
    let mut worst = 0.0f64;
    let mut rng = substream(101, Domain::Experiment, 0);
    for trial in 0..50 {
        use rand::Rng;
        let n = 2 + (trial % 5); // cycles through n = 2..6
        let _ = rng.gen::<u64>();
        let st = DenseState::random_real_pure(n, &mut rng);
        let p = pauli_distribution(&QuantumState::Dense(st.clone())).unwrap();
        let q = bell_circuit_distribution(&st);
        worst = worst.max(tv_distance(&p, &q).unwrap());
    }
    let elapsed = started.elapsed();
    assert!(worst < 1e-10, "worst TV(p, q) = {worst}");
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}");
    pass(1, "real-state identity p=q", format!("max TV {worst:.2e} over 50 states in {elapsed:.2?}"));
}

/// Independent oracle: simulate the transversal-CNOT + H Bell measurement on
/// ψ⊗ψ and read the outcome distribution.
fn bell_circuit_distribution(st: &DenseState) -> Vec<f64> {
    use rdipe::states::dense::{apply_cnot_vec, apply_single_qubit_vec, h_matrix, two_copy_vector};
    let n = st.num_qubits();
    let v = st.vector().expect("pure");
    let joint = two_copy_vector(v, v);
    let mut amps: Vec<C64> = joint.iter().cloned().collect();
    for i in 0..n {
        apply_cnot_vec(&mut amps, i, n + i);
    }
    for i in 0..n {
        apply_single_qubit_vec(&mut amps, i, &h_matrix());
    }
    let mask = (1usize << n) - 1;
    let mut q = vec![0.0f64; amps.len()];
    for (j, a) in amps.iter().enumerate() {
        let (z, x) = (j & mask, j >> n);
        q[x | (z << n)] += a.norm_sqr();
    }
    q
}

/// Criterion 2: every 4^n W-state expectation matches the closed form.
#[test]
fn criterion_02_w_state_pauli_table() {
    let mut worst = 0.0f64;
    for n in 3..=6usize {
        let dense = CwState::make_w_state(n).unwrap().to_dense().unwrap();
        let table = dense.expectation_table().unwrap();
        for (idx, &got) in table.iter().enumerate() {
            let p = PauliString::from_label_index(n, idx);
            let (x, y, z) = p.weight_counts();
            let want = match (x, y) {
                (0, 0) => 1.0 - 2.0 * z as f64 / n as f64,
                (2, 0) | (0, 2) => 2.0 / n as f64,
                _ => 0.0,
            };
            worst = worst.max((got - want).abs());
        }
    }
    assert!(worst < 1e-10, "worst deviation {worst}");
    pass(2, "W-state Pauli table", format!("max |dense − closed form| = {worst:.2e}, n = 3..6"));
}

/// Criterion 3: the CDF of CW states vanishes strictly below 4/n².
#[test]
fn criterion_03_cdf_vanishing() {
    let mut rng = substream(103, Domain::Experiment, 0);
    let mut worst_dense = 0.0f64;
    for n in [4usize, 6, 8, 10] {
        let cut = 4.0 / (n * n) as f64;
        let rotated = random_cw_state(n, &mut rng);
        for frac in [0.0, 0.25, 0.5, 0.75, 1.0 - 1e-9] {
            let eps = frac * cut;
            // Closed form: exactly zero.
            assert_eq!(cw_cdf_closed_form(n, 1, eps), 0.0, "n={n} eps={eps}");
            assert_eq!(
                cdf_exact(&QuantumState::Cw(rotated.clone()), eps).unwrap(),
                0.0,
                "rotated n={n}"
            );
            // Dense route on the rotated state: zero within numerics.
            let dense = QuantumState::Dense(rotated.to_dense().unwrap());
            let f = cdf_exact(&dense, eps).unwrap();
            worst_dense = worst_dense.max(f.abs());
        }
        // Just above the threshold mass appears.
        assert!(cw_cdf_closed_form(n, 1, cut * (1.0 + 1e-9)) > 0.0);
    }
    assert!(worst_dense < 1e-12, "dense residual {worst_dense}");
    pass(3, "CDF vanishing", format!("F ≡ 0 below 4/n² for even n ∈ {{4,6,8,10}}; dense residual {worst_dense:.1e}"));
}

/// Criterion 4: protocol accuracy at the planned sample sizes.
#[test]
fn criterion_04_protocol_accuracy() {
    let started = Instant::now();
    // Identical CW inputs at n = 8.
    let plan = sample_size_plan(8, 0.1, 3.0);
    let mut rng = substream(104, Domain::Experiment, 0);
    let state = QuantumState::Cw(random_cw_state(8, &mut rng));
    let errors: Vec<f64> = (0..100u64)
        .into_par_iter()
        .map(|rep| {
            let config = ProtocolConfig::explicit(8, plan.n1, plan.n2, 10_000 + rep, 20_000 + rep);
            (run_rdipe(&state, &state, &config).unwrap().f - 1.0).abs()
        })
        .collect();
    let ok_cw = errors.iter().filter(|e| **e <= 0.1).count();
    assert!(ok_cw >= 95, "identical CW inputs: only {ok_cw}/100 runs within 0.1");

    // Non-trivially overlapping dense pairs at n = 4 and n = 6.
    let mut details = format!("CW n=8: {ok_cw}/100 within 0.1");
    for n in [4usize, 6] {
        let (a, b) = overlapping_pair(n, &mut rng);
        let c = cosine_oracle(&a, &b).unwrap();
        assert!(c > 0.2 && c < 0.9, "pair should overlap non-trivially, c = {c}");
        let plan = sample_size_plan(n, 0.1, 3.0);
        let ok = (0..100u64)
            .into_par_iter()
            .map(|rep| {
                let config =
                    ProtocolConfig::explicit(n, plan.n1, plan.n2, 30_000 + rep, 40_000 + rep);
                (run_rdipe(&a, &b, &config).unwrap().f - c).abs()
            })
            .filter(|e| *e <= 0.1)
            .count();
        assert!(ok >= 95, "dense pair n={n}: only {ok}/100 within 0.1 of c={c:.3}");
        details.push_str(&format!("; dense n={n}: {ok}/100 (c = {c:.3})"));
    }
    pass(4, "protocol accuracy", format!("{details}; {:.1?}", started.elapsed()));
}

/// A dense real pair with cosine ≈ 1/2.
fn overlapping_pair(n: usize, rng: &mut impl rand::Rng) -> (QuantumState, QuantumState) {
    let psi = DenseState::random_real_pure(n, rng);
    let chi = DenseState::random_real_pure(n, rng);
    let v = psi.vector().unwrap();
    let w = chi.vector().unwrap();
    let overlap = v.dotc(w);
    // Orthogonalize chi against psi, then mix at 45°.
    let perp = w - v * overlap;
    let perp = &perp / C64::new(perp.norm(), 0.0);
    let mixed = (v + &perp) / C64::new(2.0f64.sqrt(), 0.0);
    let phi = DenseState::from_vector(n, mixed).unwrap();
    (QuantumState::Dense(psi), QuantumState::Dense(phi))
}

/// P(Bin(n, p) > k), summed directly.
fn binomial_tail_above(n: u64, p: f64, k: u64) -> f64 {
    let ln_p = p.ln();
    let ln_q = (1.0 - p).ln();
    let ln_binom = |n: u64, k: u64| -> f64 {
        let lgamma = |x: f64| -> f64 {
            // Stirling with correction terms; exact enough for n ≤ 10^4.
            if x < 10.0 {
                let mut acc = 0.0;
                let mut y = x;
                while y < 10.0 {
                    acc -= y.ln();
                    y += 1.0;
                }
                return acc + lgamma_big(y);
            }
            lgamma_big(x)
        };
        lgamma(n as f64 + 1.0) - lgamma(k as f64 + 1.0) - lgamma((n - k) as f64 + 1.0)
    };
    ((k + 1)..=n)
        .map(|j| (ln_binom(n, j) + j as f64 * ln_p + (n - j) as f64 * ln_q).exp())
        .sum()
}

fn lgamma_big(x: f64) -> f64 {
    (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln() + 1.0 / (12.0 * x)
        - 1.0 / (360.0 * x * x * x)
}

/// Criterion 5: the empirical exceedance rate of the performance threshold
/// stays below the analytic failure budget (one-sided binomial test).
#[test]
fn criterion_05_error_bound_consistency() {
    struct Case {
        name: &'static str,
        a: QuantumState,
        b: QuantumState,
        n: usize,
    }
    let mut rng = substream(105, Domain::Experiment, 0);
    let pure_a = DenseState::random_real_pure(5, &mut rng);
    let pure_b = DenseState::random_real_pure(5, &mut rng);
    // A mixed pair with purities above 1/2 (Δ > 0 exercised).
    let mixed_a = mix_with_identity(&DenseState::random_real_pure(3, &mut rng), 0.15);
    let mixed_b = mix_with_identity(&DenseState::random_complex_pure(3, &mut rng), 0.1);
    let cases = [
        Case { name: "real pure n=5", a: pure_a.into(), b: pure_b.into(), n: 5 },
        Case { name: "mixed n=3", a: mixed_a.into(), b: mixed_b.into(), n: 3 },
    ];
    let (eps1, eps2) = (0.03, 0.005);
    let (n1, n2) = (3000u64, 1_200_000u64);
    let budget = rdipe::distributions::failure_budget(eps1, eps2, n1, n2);
    let runs = 200u64;
    let mut details = format!("budget {budget:.3e}/run");
    for case in cases {
        let c = cosine_oracle(&case.a, &case.b).unwrap();
        let (pa, qa) = table_pair(&case.a);
        let (pb, qb) = table_pair(&case.b);
        let p_mix: Vec<f64> = pa.iter().zip(&pb).map(|(x, y)| 0.5 * (x + y)).collect();
        let q_mix: Vec<f64> = qa.iter().zip(&qb).map(|(x, y)| 0.5 * (x + y)).collect();
        let delta = tv_distance(&p_mix, &q_mix).unwrap();
        let f_bar = 0.5
            * (cdf_exact(&case.a, eps2).unwrap() + cdf_exact(&case.b, eps2).unwrap());
        let threshold = 4.0 * eps1 + 4.0 * eps2.sqrt() + 2.0 * f_bar + 6.0 * delta;
        let exceed = (0..runs)
            .into_par_iter()
            .map(|rep| {
                let config =
                    ProtocolConfig::explicit(case.n, n1, n2, 50_000 + rep, 60_000 + rep);
                (run_rdipe(&case.a, &case.b, &config).unwrap().f - c).abs()
            })
            .filter(|e| *e > threshold)
            .count() as u64;
        // One-sided test at significance 10⁻³: reject only if the观 count is
        // implausibly high under rate = budget.
        let crit = (0..=runs)
            .find(|&k| binomial_tail_above(runs, budget, k) < 1e-3)
            .expect("tail reaches zero");
        assert!(
            exceed <= crit,
            "{}: {exceed} exceedances of threshold {threshold:.3} vs critical {crit}",
            case.name
        );
        details.push_str(&format!(
            "; {}: {exceed}/{runs} over thr {threshold:.3} (Δ={delta:.3}, crit {crit})",
            case.name
        ));
    }
    pass(5, "error-bound consistency", details);
}

fn mix_with_identity(st: &DenseState, p: f64) -> DenseState {
    rdipe::noise::apply_channel(st, &rdipe::noise::NoiseChannel::Depolarizing { p }).unwrap()
}

fn table_pair(state: &QuantumState) -> (Vec<f64>, Vec<f64>) {
    (
        pauli_distribution(state).unwrap(),
        rdipe::distributions::bell_distribution(state).unwrap(),
    )
}

/// Criterion 6: continuity lemmas hold with zero violations on 10³ pairs.
#[test]
fn criterion_06_lemma_suite() {
    let report = lemma_continuity_check(1000, 5, 106);
    assert!(report.pass(), "{report:?}");
    pass(
        6,
        "lemma suite",
        format!(
            "0 violations in 1000 pairs (min slacks: sum {:.3e}, tv {:.3e}, cdf {:.3e})",
            report.min_sum_slack, report.min_tv_slack, report.min_cdf_slack
        ),
    );
}

/// Criterion 7: twirl identities, Gram orthonormality, SWAP traces.
#[test]
fn criterion_07_twirl_and_commutant() {
    let mut worst_twirl = 0.0f64;
    for n in 1..=2usize {
        let r = twirl_check(n, 20, 107).unwrap();
        assert!(r.pass(), "{r:?}");
        worst_twirl = worst_twirl.max(r.max_deviation);
    }
    let mut worst_gram = 0.0f64;
    for n in 1..=5usize {
        let basis = commutant_basis(n).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                worst_gram = worst_gram
                    .max((hs_inner(&basis.elements[i], &basis.elements[j]) - want).abs());
            }
        }
    }
    assert!(worst_gram < 1e-10, "gram deviation {worst_gram}");
    for n in [2usize, 4] {
        let sh = swap_half(n).unwrap();
        let swap = swap_full(n);
        let id = nalgebra::DMatrix::identity(swap.nrows(), swap.ncols());
        let p_sym = (&id + &swap) * 0.5;
        assert_eq!((&sh * p_sym).trace(), (1.5 * n as f64).exp2(), "tr(SWAP_half P_sym) at n={n}");
        assert!(((&sh * phi0_projector(n)).trace() - 1.0).abs() < 1e-12);
    }
    pass(
        7,
        "twirl/commutant",
        format!("twirl dev {worst_twirl:.2e} (n=1,2); gram dev {worst_gram:.2e} (n≤5); SWAP traces exact at n=2,4"),
    );
}

/// Criterion 8: entanglement of rotated W states grows linearly in n, and
/// each Monte Carlo average matches the −log(k·2^{−n/2} + k′·2^{−n})
/// prediction within statistical error (on the purity scale, where the
/// 2-design computation is an identity).
#[test]
fn criterion_08_entanglement_scaling() {
    let report = entanglement_average_check(&[4, 6, 8, 10, 12], 200, 10, 108).unwrap();
    assert!(report.fit.slope > 0.0, "slope {:?}", report.fit);
    assert!(report.fit.r_squared > 0.95, "R² {:?}", report.fit);
    for row in &report.rows {
        assert!(
            row.purity_within_3se,
            "n={}: mean purity {} vs prediction {} (se {})",
            row.n, row.mean_purity, row.predicted_purity, row.se_purity
        );
    }
    pass(
        8,
        "entanglement scaling",
        format!(
            "slope {:.3} bits/qubit, R² {:.4}; all 5 means within 3σ of prediction",
            report.fit.slope, report.fit.r_squared
        ),
    );
}

/// Criterion 9: Pauli counting bound for CW states at threshold 3/4.
#[test]
fn criterion_09_counting_bound() {
    let rows = counting_check(&[8, 12, 16]);
    for r in &rows {
        assert!(r.pass, "{r:?}");
        assert!((r.count as f64) < r.final_bound);
    }
    let summary: Vec<String> =
        rows.iter().map(|r| format!("n={}: {} < {}", r.n, r.count, r.final_bound)).collect();
    pass(9, "counting bound", summary.join(", "));
}

/// Criterion 10: robustness under non-real coherent noise at n = 6.
#[test]
fn criterion_10_robustness() {
    let started = Instant::now();
    let mut details = Vec::new();
    for tau in [0.02, 0.05, 0.1] {
        let cfg = RobustnessConfig {
            n: 6,
            tau,
            channel: ChannelKind::CoherentPhase { sites: (0..6).collect() },
            runs: 100,
            delta: 3.0,
            seed: 110,
        };
        let r = robustness_experiment(&cfg).unwrap();
        assert!(
            r.empirical_max <= r.bound,
            "tau={tau}: max error {} exceeds 29τ = {}",
            r.empirical_max,
            r.bound
        );
        assert!(r.delta_tv <= r.delta_bound, "tau={tau}: Δ {} > 3τ", r.delta_tv);
        details.push(format!(
            "τ={tau}: max {:.4} ≤ {:.2}, Δ {:.4} ≤ {:.2}",
            r.empirical_max, r.bound, r.delta_tv, r.delta_bound
        ));
    }
    pass(10, "robustness", format!("{} ({:.1?})", details.join("; "), started.elapsed()));
}

/// Criterion 11: resource estimation sweep — polynomial 1/ε₂ growth for the
/// structured family, superpolynomial for dense random states. The full
/// tensor-network comparison is explicitly out of scope; this qualitative
/// separation is the acceptance bar.
#[test]
fn criterion_11_resource_estimation() {
    let started = Instant::now();
    let n_samples = 50_000;
    let epsilon = 0.1;
    // Dicke(n,2), exact-K: bounded log-log slope. The family's smallest
    // value class is exactly 4/(n(n−1)), so the asymptotic slope is 4.
    let ns: Vec<usize> = (8..=64).step_by(8).collect();
    let mut log_n = Vec::new();
    let mut log_inv_eps2 = Vec::new();
    for (i, &n) in ns.iter().enumerate() {
        let state = QuantumState::Cw(CwState::make_dicke(n, 2).unwrap());
        let mut rng = substream(111, Domain::Experiment, i as u64);
        let cdf = build_empirical_cdf(&state, n_samples, ShotCount::Exact, &mut rng).unwrap();
        let est = cdf.resource_estimate(epsilon).unwrap();
        log_n.push((n as f64).ln());
        log_inv_eps2.push((1.0 / est.optimistic).ln());
    }
    let dicke_fit = linear_fit(&log_n, &log_inv_eps2);
    assert!(
        dicke_fit.slope <= 4.5,
        "Dicke(n,2) log-log slope {} not bounded by 4.5",
        dicke_fit.slope
    );

    // W family: slope ≤ 3 (smallest value class is 2/n).
    let mut log_inv_w = Vec::new();
    for (i, &n) in ns.iter().enumerate() {
        let state = QuantumState::Cw(CwState::make_w_state(n).unwrap());
        let mut rng = substream(112, Domain::Experiment, i as u64);
        let cdf = build_empirical_cdf(&state, n_samples, ShotCount::Exact, &mut rng).unwrap();
        let est = cdf.resource_estimate(epsilon).unwrap();
        log_inv_w.push((1.0 / est.optimistic).ln());
    }
    let w_fit = linear_fit(&log_n, &log_inv_w);
    assert!(w_fit.slope <= 3.0, "W-family log-log slope {}", w_fit.slope);

    // Dense random pure states: local slope grows (superpolynomial trend).
    let dense_ns = [4usize, 6, 8, 10, 12];
    let mut points = Vec::new();
    for (i, &n) in dense_ns.iter().enumerate() {
        let mut rng = substream(113, Domain::Experiment, i as u64);
        let state = QuantumState::Dense(DenseState::random_real_pure(n, &mut rng));
        let cdf = build_empirical_cdf(&state, n_samples, ShotCount::Exact, &mut rng).unwrap();
        let est = cdf.resource_estimate(epsilon).unwrap();
        points.push(((n as f64).ln(), (1.0 / est.optimistic).ln()));
    }
    let local_slopes: Vec<f64> = points
        .windows(2)
        .map(|w| (w[1].1 - w[0].1) / (w[1].0 - w[0].0))
        .collect();
    let first = local_slopes.first().unwrap();
    let last = local_slopes.last().unwrap();
    assert!(last > first, "dense slopes should grow: {local_slopes:?}");
    assert!(*last > 4.5, "dense final local slope {last} should exceed the polynomial bound");
    pass(
        11,
        "resource estimation",
        format!(
            "Dicke2 slope {:.2} ≤ 4.5 (R² {:.3}), W slope {:.2} ≤ 3, dense local slopes {:?} growing ({:.1?})",
            dicke_fit.slope,
            dicke_fit.r_squared,
            w_fit.slope,
            local_slopes.iter().map(|s| (s * 10.0).round() / 10.0).collect::<Vec<_>>(),
            started.elapsed()
        ),
    );
}

/// Criterion 12: socket-mode and in-process runs are bitwise identical and
/// the loopback session is fast.
#[test]
fn criterion_12_distributed_determinism() {
    use rdipe::protocol::{drive, PartyMachine, Role, TcpChannel};
    let n = 8;
    let config = ProtocolConfig::explicit(n, 1000, 1000, 1201, 1202);
    let state = QuantumState::Cw(CwState::make_w_state(n).unwrap());

    let reference = run_rdipe(&state, &state, &config).unwrap();

    let listener = std::net::TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = listener.local_addr().unwrap();
    let alice_state = state.clone();
    let alice_cfg = config.party(Role::Alice);
    let server = std::thread::spawn(move || {
        let (stream, _) = listener.accept().unwrap();
        let mut machine = PartyMachine::new(Role::Alice, alice_state, alice_cfg).unwrap();
        let mut ch = TcpChannel::new(stream).unwrap();
        let f = drive(&mut machine, &mut ch).unwrap();
        (f, machine.into_transcript())
    });
    let started = Instant::now();
    let mut bob =
        PartyMachine::new(Role::Bob, state.clone(), config.party(Role::Bob)).unwrap();
    let mut ch = TcpChannel::new(std::net::TcpStream::connect(addr).unwrap()).unwrap();
    let f_bob = drive(&mut bob, &mut ch).unwrap();
    let elapsed = started.elapsed();
    let (f_alice, alice_transcript) = server.join().unwrap();
    let bob_transcript = bob.into_transcript();

    assert_eq!(f_alice.to_bits(), f_bob.to_bits());
    assert_eq!(f_alice.to_bits(), reference.f.to_bits());
    assert_eq!(alice_transcript, reference.transcript_alice);
    assert_eq!(bob_transcript, reference.transcript_bob);
    assert_eq!(
        alice_transcript.to_jsonl_string(),
        reference.transcript_alice.to_jsonl_string()
    );
    assert!(elapsed.as_secs() < 10, "loopback session took {elapsed:?}");
    pass(
        12,
        "distributed determinism",
        format!("socket f == in-process f == {:.6} bitwise; transcripts byte-identical; {elapsed:.2?}", f_bob),
    );
}

/// Entanglement check companion: the random-circuit sampler reproduces the
/// exact group average at n = 2 (mean purity 5/6 over all of rCl(2)).
#[test]
fn group_average_anchor() {
    let group = rdipe::clifford::enumerate_group(2).unwrap();
    let w = CwState::make_w_state(2).unwrap();
    let mut acc = 0.0;
    for t in &group {
        let st = w.clone().with_tableau(t.clone()).unwrap().to_dense().unwrap();
        let red = st.reduced_second_half().unwrap();
        acc += red.iter().map(|a| a.norm_sqr()).sum::<f64>();
    }
    let exact = acc / group.len() as f64;
    assert!((exact - 5.0 / 6.0).abs() < 1e-12);

    let mut rng = substream(114, Domain::Experiment, 0);
    let samples = 4000;
    let mut mc = 0.0;
    for _ in 0..samples {
        let t = random_real_clifford(2, 20, &mut rng);
        let st = w.clone().with_tableau(t).unwrap().to_dense().unwrap();
        let red = st.reduced_second_half().unwrap();
        mc += red.iter().map(|a| a.norm_sqr()).sum::<f64>();
    }
    mc /= samples as f64;
    assert!((mc - exact).abs() < 0.01, "MC {mc} vs exact {exact}");
}
