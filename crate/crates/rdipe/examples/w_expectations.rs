//! Closed-form Pauli expectations of W and Dicke states.
//!
//! ```bash
//! cargo run --release --example w_expectations
//! ```

use rdipe::states::CwState;
use rdipe::PauliString;

fn main() {
    let n = 5;
    let w = CwState::make_w_state(n).unwrap();
    println!("⟨P⟩ on the {n}-qubit W state (nonzero classes only):");
    for s in ["ZIIII", "ZZIII", "ZZZII", "XXIII", "YYIZZ", "XYIII", "XXXXI"] {
        let p = PauliString::from_letters(s).unwrap();
        println!("  ⟨{s}⟩ = {:+.6}", w.expectation(&p).unwrap());
    }

    // Z/I-only strings follow 1 − 2z/n; two-X or two-Y strings give 2/n.
    println!("\nZ-weight ladder (value = 1 − 2z/n):");
    for z in 0..=n {
        let mut p = PauliString::identity(n);
        for site in 0..z {
            p.set_letter(site, rdipe::pauli::Letter::Z);
        }
        println!("  z={z}: ⟨{p}⟩ = {:+.6}", w.expectation(&p).unwrap());
    }

    let d = CwState::make_dicke(6, 2).unwrap();
    println!("\nDicke(6,2) samples of each value class:");
    for s in ["ZIIIII", "XXIIII", "XXZIII", "XXXXII", "XXYYII", "YYYYII"] {
        let p = PauliString::from_letters(s).unwrap();
        println!("  ⟨{s}⟩ = {:+.6}", d.expectation(&p).unwrap());
    }

    // Cross-check one value against the dense oracle.
    let dense = d.to_dense().unwrap();
    let p = PauliString::from_letters("XXZIII").unwrap();
    let (a, b) = (d.expectation(&p).unwrap(), dense.expectation(&p).unwrap());
    println!("\nstructured vs dense for XXZIII: {a:+.12} vs {b:+.12}");
    assert!((a - b).abs() < 1e-12);
}
