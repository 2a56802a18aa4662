//! Exact Bell-basis sampling of a Clifford-rotated W state, compared against
//! the dense Bell distribution, plus Bell-based purity estimation.
//!
//! ```bash
//! cargo run --release --example bell_sampling
//! ```

use rdipe::distributions::{bell_distribution, tv_distance};
use rdipe::sampling::{estimate_purity, BellSampler};
use rdipe::states::{random_cw_state, QuantumState};

fn main() {
    let n = 5;
    let mut rng = rdipe::rng::master(11);
    let cw = random_cw_state(n, &mut rng);
    let state = QuantumState::Cw(cw.clone());

    // The structured sampler never materializes a dense vector; the oracle
    // table below is built only for the comparison.
    let sampler = BellSampler::new(&state).unwrap();
    let samples = 400_000usize;
    let mut counts = vec![0f64; 1 << (2 * n)];
    for _ in 0..samples {
        counts[sampler.sample(&mut rng).label_index()] += 1.0;
    }
    counts.iter_mut().for_each(|c| *c /= samples as f64);

    let exact = bell_distribution(&QuantumState::Dense(cw.to_dense().unwrap())).unwrap();
    let tv = tv_distance(&exact, &counts).unwrap();
    println!("{samples} Bell samples at n={n}: TV(empirical, exact) = {tv:.5}");

    // The SWAP eigenvalue (−1)^{y_a} averages to tr ρ²; pure states give 1.
    let purity = estimate_purity(&state, 200_000, &mut rng);
    println!("purity estimate from Bell samples: {purity:.4} (exact: 1)");

    // The most likely outcomes carry large |⟨P⟩|.
    let mut top: Vec<(usize, f64)> = exact.iter().cloned().enumerate().collect();
    top.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
    println!("five most likely Bell labels:");
    for (idx, q) in top.into_iter().take(5) {
        let label = rdipe::PauliString::from_label_index(n, idx);
        println!("  {} with q = {q:.4}", label.to_label_digits());
    }
}
