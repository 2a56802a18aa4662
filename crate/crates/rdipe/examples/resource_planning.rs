//! Experimental sample-complexity estimation: build the empirical CDF of
//! squared expectations from Bell samples and solve F(ε₂) = ε, sweeping the
//! system size for a structured family versus dense random states.
//!
//! ```bash
//! cargo run --release --example resource_planning
//! ```

use rdipe::distributions::{build_empirical_cdf, ShotCount};
use rdipe::states::{CwState, DenseState, QuantumState};

fn main() {
    let n_samples = 20_000;
    let epsilon = 0.1;

    println!("Dicke(n,2), exact-K mode, N = {n_samples}:");
    println!("  n   eps2(optimistic)  eps2(conservative)  1/eps2");
    for n in (8..=40).step_by(8) {
        let state = QuantumState::Cw(CwState::make_dicke(n, 2).unwrap());
        let mut rng = rdipe::rng::master(1000 + n as u64);
        let cdf = build_empirical_cdf(&state, n_samples, ShotCount::Exact, &mut rng).unwrap();
        let est = cdf.resource_estimate(epsilon).unwrap();
        println!(
            "  {n:3}   {:.6e}      {:.6e}      {:9.1}",
            est.optimistic,
            est.conservative,
            1.0 / est.optimistic
        );
    }

    println!("\ndense random real pure states (1/eps2 blows up exponentially):");
    println!("  n   eps2(optimistic)  1/eps2");
    for n in [4usize, 6, 8, 10] {
        let mut rng = rdipe::rng::master(2000 + n as u64);
        let state = QuantumState::Dense(DenseState::random_real_pure(n, &mut rng));
        let cdf = build_empirical_cdf(&state, n_samples, ShotCount::Exact, &mut rng).unwrap();
        let est = cdf.resource_estimate(epsilon).unwrap();
        println!("  {n:3}   {:.6e}      {:12.1}", est.optimistic, 1.0 / est.optimistic);
    }

    // Finite K inflates the estimates by the shot noise of α².
    println!("\nW state at n = 12 with finite K:");
    let state = QuantumState::Cw(CwState::make_w_state(12).unwrap());
    for shots in [ShotCount::Finite(1_000), ShotCount::Finite(100_000), ShotCount::Exact] {
        let mut rng = rdipe::rng::master(3000);
        let cdf = build_empirical_cdf(&state, n_samples, shots, &mut rng).unwrap();
        let est = cdf.resource_estimate(epsilon).unwrap();
        println!("  K = {shots}: eps2 = {:.6e} (DKW band ±{:.4})", est.optimistic, cdf.dkw_band(0.01));
    }
}
