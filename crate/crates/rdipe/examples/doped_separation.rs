//! Separating CW states from weakly doped circuits by Pauli counting: a
//! circuit with t ≤ n/4 non-Clifford phase gates keeps ≥ 2^{n−t} Paulis at
//! |⟨P⟩| = 1, while a CW state has fewer than 2^{3n/4} above 3/4, so some
//! Pauli witnesses trace distance ≥ 1/4.
//!
//! ```bash
//! cargo run --release --example doped_separation
//! ```

use rdipe::states::{CwState, QuantumState};
use rdipe::verify::{count_high_paulis, counting_check, doped_separation_demo, DopedInput};

fn main() {
    println!("counting chain for W-family states at threshold 3/4:");
    println!("  n   count   2ΣC(n,k)   2^(nH+1)   2^(3n/4)");
    for row in counting_check(&[8, 12, 16]) {
        println!(
            "  {:2}  {:5}   {:8}   {:8.1}   {:8.1}  ({})",
            row.n,
            row.count,
            row.binomial_sum_bound,
            row.entropy_bound,
            row.final_bound,
            if row.pass { "ok" } else { "VIOLATED" }
        );
    }

    let n = 8;
    println!("\nwitness search at n = {n}:");
    for t in [0usize, 1, 2] {
        let r = doped_separation_demo(n, DopedInput::TDoped(t), 50 + t as u64).unwrap();
        println!(
            "  t = {t}: {} stabilizers (≥ {} guaranteed), CW high count {}, witness {} (gap {:.3})",
            r.stabilizer_count,
            r.stabilizer_floor.unwrap(),
            r.cw_high_count,
            r.witness.as_deref().unwrap_or("none"),
            r.witness_gap.unwrap_or(0.0)
        );
    }

    let same = doped_separation_demo(n, DopedInput::CwCopy, 50).unwrap();
    println!(
        "  CW state against itself: {} ±1-labels only, demo inapplicable (no witness)",
        same.stabilizer_count
    );

    // The count at large n stays far below 2^{3n/4} even without dense help.
    let w = QuantumState::Cw(CwState::make_w_state(16).unwrap());
    let count = count_high_paulis(&w, 0.75).unwrap();
    println!("\nclosed-form count at n = 16, threshold 3/4: {count} < 2^12 = 4096");
}
