//! Full two-party estimation run, in-process: identical Clifford-rotated
//! W states at n = 8, round/shot counts from the closed-form plan.
//!
//! ```bash
//! cargo run --release --example protocol_run
//! ```

use rdipe::distributions::sample_size_plan;
use rdipe::protocol::{run_rdipe, ProtocolConfig};
use rdipe::states::{cosine_oracle, random_cw_state, QuantumState};

fn main() {
    let n = 8;
    let (epsilon, delta) = (0.1, 3.0);
    let plan = sample_size_plan(n, epsilon, delta);
    println!(
        "plan for (n={n}, ε={epsilon}, δ={delta}): N₁ = {}, N₂ = {} (failure budget {:.3e})",
        plan.n1,
        plan.n2,
        plan.failure_budget()
    );

    let mut rng = rdipe::rng::master(21);
    let state = QuantumState::Cw(random_cw_state(n, &mut rng));
    let config = ProtocolConfig::explicit(n, plan.n1, plan.n2, 100, 101);
    let out = run_rdipe(&state, &state, &config).unwrap();
    println!("identical inputs: f = {:.8} (cosine = 1)", out.f);

    // A partially overlapping pair, checked against the dense oracle.
    let a = QuantumState::Cw(random_cw_state(4, &mut rng));
    let b = QuantumState::Cw(random_cw_state(4, &mut rng));
    let c = cosine_oracle(&a, &b).unwrap();
    let plan4 = sample_size_plan(4, epsilon, delta);
    let config = ProtocolConfig::explicit(4, plan4.n1, plan4.n2, 200, 201);
    let out = run_rdipe(&a, &b, &config).unwrap();
    println!("random CW pair at n=4: f = {:.6}, oracle c = {c:.6}, |f−c| = {:.2e}", out.f, (out.f - c).abs());

    let t = &out.transcript_alice;
    println!(
        "alice transcript: {} messages, {} rounds, purities A={:?} B={:?}",
        t.messages.len(),
        t.rounds.len(),
        t.purity_a,
        t.purity_b
    );
}
