//! The same protocol over a real TCP loopback connection: one thread serves
//! as Alice, the main thread connects as Bob, and the result is compared
//! bitwise against the in-process run with the same seeds.
//!
//! ```bash
//! cargo run --release --example tcp_protocol
//! ```

use std::net::{TcpListener, TcpStream};

use rdipe::protocol::{drive, run_rdipe, PartyMachine, ProtocolConfig, Role, TcpChannel};
use rdipe::states::{CwState, QuantumState};

fn main() {
    let n = 8;
    let config = ProtocolConfig::explicit(n, 1000, 1000, 7, 8);
    let state = QuantumState::Cw(CwState::make_w_state(n).unwrap());

    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = listener.local_addr().unwrap();
    println!("alice listening on {addr}");

    let alice_state = state.clone();
    let alice_cfg = config.party(Role::Alice);
    let server = std::thread::spawn(move || {
        let (stream, peer) = listener.accept().unwrap();
        println!("bob connected from {peer}");
        let mut machine = PartyMachine::new(Role::Alice, alice_state, alice_cfg).unwrap();
        let mut ch = TcpChannel::new(stream).unwrap();
        let f = drive(&mut machine, &mut ch).unwrap();
        (f, machine.into_transcript())
    });

    let started = std::time::Instant::now();
    let mut bob = PartyMachine::new(Role::Bob, state.clone(), config.party(Role::Bob)).unwrap();
    let mut ch = TcpChannel::new(TcpStream::connect(addr).unwrap()).unwrap();
    let f_bob = drive(&mut bob, &mut ch).unwrap();
    let (f_alice, alice_transcript) = server.join().unwrap();
    let elapsed = started.elapsed();

    println!("socket run: f = {f_bob:.8} in {elapsed:.2?} ({} rounds)", config.n1);
    assert_eq!(f_alice.to_bits(), f_bob.to_bits());

    // Bitwise identical to the in-process execution with the same seeds.
    let reference = run_rdipe(&state, &state, &config).unwrap();
    assert_eq!(reference.f.to_bits(), f_bob.to_bits());
    assert_eq!(reference.transcript_alice, alice_transcript);
    println!("socket and in-process runs agree bitwise (f and transcripts)");
}
