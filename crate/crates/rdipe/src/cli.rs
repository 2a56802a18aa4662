//! Command-line front end: protocol runs (in-process and over TCP),
//! CDF/resource sweeps, robustness experiments, entanglement scaling, and
//! the verification suite. All commands are deterministic given `--seed`
//! and emit CSV/JSON with a metadata header sufficient to reproduce them.
//!
//! Exit codes: 0 success, 1 verification-suite failure, 2 configuration
//! error, 3 protocol error, 4 network error.

use std::io::Write;
use std::net::{TcpListener, TcpStream};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::distributions::{
    build_empirical_cdf, resource_rows_to_csv, ResourceRow, ShotCount,
};
use crate::noise::{robustness_experiment, robustness_reports_to_csv, ChannelKind, RobustnessConfig};
use crate::protocol::{
    drive, run_rdipe, PartyMachine, ProtocolConfig, ProtocolError, PurityMode, Role, TcpChannel,
    Transcript,
};
use crate::states::{cosine_oracle, CwState, DenseState, QuantumState, StateSpec};
use crate::verify::run_suite;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_PROTOCOL: u8 = 3;
pub const EXIT_NETWORK: u8 = 4;

#[derive(Parser)]
#[command(name = "rdipe", version, about = "Distributed inner product estimation for real quantum states")]
struct Cli {
    /// Worker threads for parallel experiments (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the two-party protocol in-process on two state spec files.
    Run(RunArgs),
    /// Host one protocol party on a TCP listener (role: alice).
    Serve(NetArgs),
    /// Connect to a hosted party and run the protocol (role: bob).
    Connect(NetArgs),
    /// Exact CDF of the squared Pauli expectation for a state family.
    Cdf(CdfArgs),
    /// Sweep the empirical-CDF resource estimate ε₂ over system sizes.
    Resources(ResourcesArgs),
    /// Robustness experiment: protocol accuracy on noisy inputs.
    Robustness(RobustnessArgs),
    /// Monte Carlo entanglement scaling of rotated W states.
    Entangle(EntangleArgs),
    /// Numerical verification suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    state_a: PathBuf,
    #[arg(long)]
    state_b: PathBuf,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    #[arg(long, default_value_t = 3.0)]
    delta: f64,
    /// Master seed; Alice uses `seed`, Bob `seed + 1`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "exact")]
    purity_mode: String,
    /// Override the planned round count N₁.
    #[arg(long)]
    n1: Option<u64>,
    /// Override the planned shot count N₂.
    #[arg(long)]
    n2: Option<u64>,
    /// Purity shots when --purity-mode=estimated (default N₁·N₂).
    #[arg(long)]
    n3: Option<u64>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct NetArgs {
    /// Listen address (serve) e.g. 127.0.0.1:7878.
    #[arg(long)]
    listen: Option<String>,
    /// Peer address (connect).
    #[arg(long)]
    peer: Option<String>,
    /// This party's state spec file.
    #[arg(long)]
    state: PathBuf,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    #[arg(long, default_value_t = 3.0)]
    delta: f64,
    /// This party's master seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "exact")]
    purity_mode: String,
    #[arg(long)]
    n1: Option<u64>,
    #[arg(long)]
    n2: Option<u64>,
    #[arg(long)]
    n3: Option<u64>,
    /// Connection attempts before giving up (connect only).
    #[arg(long, default_value_t = 5)]
    retries: u32,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct CdfArgs {
    /// "w" or "dicke2" (closed form at any n).
    #[arg(long, default_value = "w")]
    family: String,
    #[arg(long)]
    n: usize,
    /// Use the exact closed form (required for n beyond dense reach).
    #[arg(long, default_value_t = true)]
    exact: bool,
    /// Optional output CSV (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ResourcesArgs {
    /// "w", "dicke2" or "dense-random".
    #[arg(long, default_value = "dicke2")]
    family: String,
    /// start:end:step, e.g. 8:64:8.
    #[arg(long, default_value = "8:64:8")]
    n_range: String,
    /// Bell samples per empirical CDF.
    #[arg(long = "N", default_value_t = 50_000)]
    n_samples: usize,
    /// Substitute exact squared expectations (the K → ∞ limit).
    #[arg(long = "exact-K", alias = "exact-k", default_value_t = false)]
    exact_k: bool,
    /// Shots per estimate when not exact.
    #[arg(long = "K", default_value_t = 100_000)]
    shots: u64,
    /// Comma-separated target ε values.
    #[arg(long, default_value = "0.1,0.05,0.02")]
    epsilons: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RobustnessArgs {
    #[arg(long, default_value_t = 6)]
    n: usize,
    #[arg(long, default_value = "0.02,0.05,0.1")]
    tau_list: String,
    /// "phase", "depolarizing" or "pauli".
    #[arg(long, default_value = "phase")]
    channel: String,
    #[arg(long, default_value_t = 100)]
    runs: usize,
    #[arg(long, default_value_t = 3.0)]
    delta: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct EntangleArgs {
    #[arg(long, default_value = "4,6,8,10,12")]
    n_list: String,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 10)]
    depth_factor: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Optional JSON report path.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Entry point for the `rdipe` binary.
pub fn main() -> std::process::ExitCode {
    std::process::ExitCode::from(run_from(std::env::args()))
}

/// Parse and execute; returns the process exit code.
pub fn run_from<I>(args: I) -> u8
where
    I: IntoIterator,
    I::Item: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version by "erroring" with exit 0.
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if cli.threads > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global();
    }
    let result = match cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Serve(a) => cmd_net(a, Role::Alice),
        Command::Connect(a) => cmd_net(a, Role::Bob),
        Command::Cdf(a) => cmd_cdf(a),
        Command::Resources(a) => cmd_resources(a),
        Command::Robustness(a) => cmd_robustness(a),
        Command::Entangle(a) => cmd_entangle(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn config(msg: impl Into<String>) -> Self {
        CliError { code: EXIT_CONFIG, message: msg.into() }
    }

    fn network(msg: impl Into<String>) -> Self {
        CliError { code: EXIT_NETWORK, message: msg.into() }
    }
}

impl From<ProtocolError> for CliError {
    fn from(e: ProtocolError) -> Self {
        let code = match &e {
            ProtocolError::ConfigMismatch(_) | ProtocolError::PurityTooLow(_) | ProtocolError::State(_) => {
                EXIT_CONFIG
            }
            ProtocolError::Channel(_) => EXIT_NETWORK,
            _ => EXIT_PROTOCOL,
        };
        CliError { code, message: e.to_string() }
    }
}

impl From<crate::states::StateError> for CliError {
    fn from(e: crate::states::StateError) -> Self {
        CliError::config(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError { code: EXIT_CONFIG, message: e.to_string() }
    }
}

fn load_state(path: &Path) -> Result<(QuantumState, StateSpec), CliError> {
    let spec = StateSpec::from_file(path)?;
    let state = spec.build()?;
    Ok((QuantumState::Cw(state), spec))
}

fn parse_purity_mode(s: &str) -> Result<PurityMode, CliError> {
    s.parse().map_err(CliError::config)
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    std::fs::write(path, contents)?;
    Ok(())
}

fn write_transcript(path: &Path, t: &Transcript) -> Result<(), CliError> {
    write_file(path, &t.to_jsonl_string())
}

fn metadata_header(cmd: &str, fields: &[(&str, String)]) -> String {
    let mut out = format!("# rdipe {cmd} v{}\n", env!("CARGO_PKG_VERSION"));
    for (k, v) in fields {
        out.push_str(&format!("# {k}={v}\n"));
    }
    out
}

/// Summary of a protocol run; `oracle_c` is present when both states are
/// dense-capable.
fn run_summary(
    f: f64,
    config: &ProtocolConfig,
    state_a: &QuantumState,
    state_b: &QuantumState,
) -> serde_json::Value {
    let oracle = cosine_oracle(state_a, state_b).ok();
    json!({
        "f": f,
        "n": config.n,
        "n1": config.n1,
        "n2": config.n2,
        "n3": config.n3,
        "purity_mode": config.purity_mode.to_string(),
        "oracle_c": oracle,
        "abs_error": oracle.map(|c| (f - c).abs()),
    })
}

fn cmd_run(a: RunArgs) -> Result<u8, CliError> {
    let (state_a, _) = load_state(&a.state_a)?;
    let (state_b, _) = load_state(&a.state_b)?;
    if state_a.num_qubits() != state_b.num_qubits() {
        return Err(CliError::config(format!(
            "states disagree on qubit count: {} vs {}",
            state_a.num_qubits(),
            state_b.num_qubits()
        )));
    }
    let mode = parse_purity_mode(&a.purity_mode)?;
    let config = build_config(
        state_a.num_qubits(),
        a.epsilon,
        a.delta,
        a.seed,
        a.seed.wrapping_add(1),
        mode,
        a.n1,
        a.n2,
        a.n3,
    )?;
    let out = run_rdipe(&state_a, &state_b, &config)?;
    std::fs::create_dir_all(&a.out)?;
    write_transcript(&a.out.join("transcript_alice.jsonl"), &out.transcript_alice)?;
    write_transcript(&a.out.join("transcript_bob.jsonl"), &out.transcript_bob)?;
    let summary = run_summary(out.f, &config, &state_a, &state_b);
    write_file(&a.out.join("summary.json"), &serde_json::to_string_pretty(&summary).expect("json"))?;
    println!("{summary}");
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn build_config(
    n: usize,
    epsilon: f64,
    delta: f64,
    seed_alice: u64,
    seed_bob: u64,
    mode: PurityMode,
    n1: Option<u64>,
    n2: Option<u64>,
    n3: Option<u64>,
) -> Result<ProtocolConfig, CliError> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(CliError::config("epsilon must be in (0, 1)"));
    }
    let mut config = ProtocolConfig::planned(n, epsilon, delta, seed_alice, seed_bob);
    if let Some(n1) = n1 {
        config.n1 = n1;
    }
    if let Some(n2) = n2 {
        config.n2 = n2;
    }
    let n3 = n3.unwrap_or_else(|| config.n1.saturating_mul(config.n2));
    config = config.with_purity_mode(mode, n3);
    config.validate()?;
    Ok(config)
}

fn cmd_net(a: NetArgs, role: Role) -> Result<u8, CliError> {
    let (state, _) = load_state(&a.state)?;
    let mode = parse_purity_mode(&a.purity_mode)?;
    let config = build_config(
        state.num_qubits(),
        a.epsilon,
        a.delta,
        // Each side supplies its own master seed; the peer's is irrelevant
        // to this machine.
        a.seed,
        a.seed,
        mode,
        a.n1,
        a.n2,
        a.n3,
    )?;
    let stream = match role {
        Role::Alice => {
            let addr = a
                .listen
                .as_deref()
                .ok_or_else(|| CliError::config("serve requires --listen"))?;
            let listener = TcpListener::bind(addr)
                .map_err(|e| CliError::network(format!("bind {addr}: {e}")))?;
            eprintln!("listening on {}", listener.local_addr().map(|b| b.to_string()).unwrap_or_default());
            let (stream, peer) =
                listener.accept().map_err(|e| CliError::network(format!("accept: {e}")))?;
            eprintln!("peer connected from {peer}");
            stream
        }
        Role::Bob => {
            let addr =
                a.peer.as_deref().ok_or_else(|| CliError::config("connect requires --peer"))?;
            let mut attempt = 0;
            loop {
                match TcpStream::connect(addr) {
                    Ok(s) => break s,
                    Err(e) => {
                        attempt += 1;
                        if attempt >= a.retries {
                            return Err(CliError::network(format!(
                                "connect {addr} failed after {attempt} attempts: {e}"
                            )));
                        }
                        std::thread::sleep(std::time::Duration::from_millis(200));
                    }
                }
            }
        }
    };
    let mut channel =
        TcpChannel::new(stream).map_err(|e| CliError::network(format!("channel setup: {e}")))?;
    let mut machine = PartyMachine::new(role, state.clone(), config.party(role))?;
    let drive_result = drive(&mut machine, &mut channel);
    let transcript = machine.into_transcript();
    std::fs::create_dir_all(&a.out)?;
    write_transcript(&a.out.join(format!("transcript_{role}.jsonl")), &transcript)?;
    let f = drive_result?;
    let summary = json!({
        "f": f,
        "role": role.to_string(),
        "n": config.n,
        "n1": config.n1,
        "n2": config.n2,
        "purity_mode": config.purity_mode.to_string(),
    });
    write_file(&a.out.join(format!("summary_{role}.json")), &serde_json::to_string_pretty(&summary).expect("json"))?;
    println!("{summary}");
    Ok(EXIT_OK)
}

fn cmd_cdf(a: CdfArgs) -> Result<u8, CliError> {
    let k = match a.family.as_str() {
        "w" => 1,
        "dicke2" => 2,
        other => return Err(CliError::config(format!("unknown family '{other}' (w|dicke2)"))),
    };
    if a.n < 2 {
        return Err(CliError::config("cdf requires n ≥ 2"));
    }
    if !a.exact {
        return Err(CliError::config("only the exact closed-form mode is implemented; pass --exact"));
    }
    let cats = crate::sampling::w_dicke_value_classes(a.n, k);
    let mut points: Vec<f64> = cats.iter().map(|&(_, v)| v * v).collect();
    points.push(3.0 / (a.n * a.n) as f64);
    points.push(4.0 / (a.n * a.n) as f64);
    points.push(0.0);
    points.push(1.0);
    points.sort_by(|x, y| x.partial_cmp(y).expect("finite"));
    points.dedup();
    let mut csv = metadata_header(
        "cdf",
        &[("family", a.family.clone()), ("n", a.n.to_string()), ("mode", "exact".into())],
    );
    csv.push_str("epsilon,F\n");
    for &eps in &points {
        let f = crate::distributions::cw_cdf_closed_form(a.n, k, eps);
        csv.push_str(&format!("{eps},{f}\n"));
    }
    emit(a.out.as_deref(), &csv)?;
    Ok(EXIT_OK)
}

fn parse_range(s: &str) -> Result<Vec<usize>, CliError> {
    let parts: Vec<usize> = s
        .split(':')
        .map(|p| p.parse().map_err(|_| CliError::config(format!("bad range '{s}'"))))
        .collect::<Result<_, _>>()?;
    let [start, end, step] = parts[..] else {
        return Err(CliError::config(format!("range must be start:end:step, got '{s}'")));
    };
    if step == 0 || end < start {
        return Err(CliError::config(format!("bad range '{s}'")));
    }
    Ok((start..=end).step_by(step).collect())
}

fn parse_f64_list(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|p| p.trim().parse().map_err(|_| CliError::config(format!("bad number '{p}'"))))
        .collect()
}

fn parse_usize_list(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(|p| p.trim().parse().map_err(|_| CliError::config(format!("bad number '{p}'"))))
        .collect()
}

fn cmd_resources(a: ResourcesArgs) -> Result<u8, CliError> {
    let ns = parse_range(&a.n_range)?;
    let epsilons = parse_f64_list(&a.epsilons)?;
    let shots = if a.exact_k { ShotCount::Exact } else { ShotCount::Finite(a.shots) };
    let mut rows = Vec::new();
    for (i, &n) in ns.iter().enumerate() {
        let state = match a.family.as_str() {
            "w" => QuantumState::Cw(CwState::make_w_state(n)?),
            "dicke2" => QuantumState::Cw(CwState::make_dicke(n, 2)?),
            "dense-random" => {
                if n > 12 {
                    return Err(CliError::config(
                        "dense-random supports n ≤ 12; use the structured families beyond",
                    ));
                }
                let mut rng = crate::rng::substream(a.seed, crate::rng::Domain::Experiment, i as u64);
                QuantumState::Dense(DenseState::random_real_pure(n, &mut rng))
            }
            other => {
                return Err(CliError::config(format!(
                    "unknown family '{other}' (w|dicke2|dense-random)"
                )))
            }
        };
        let mut rng =
            crate::rng::substream(a.seed, crate::rng::Domain::Experiment, 1000 + i as u64);
        let cdf = build_empirical_cdf(&state, a.n_samples, shots, &mut rng)
            .map_err(|e| CliError::config(e.to_string()))?;
        for &eps in &epsilons {
            let est = cdf
                .resource_estimate(eps)
                .map_err(|e| CliError::config(format!("n={n}, eps={eps}: {e}")))?;
            rows.push(ResourceRow {
                n,
                epsilon: eps,
                epsilon2_optimistic: est.optimistic,
                epsilon2_conservative: est.conservative,
                n_samples: a.n_samples,
                shots,
                seed: a.seed,
            });
        }
    }
    let mut csv = metadata_header(
        "resources",
        &[
            ("family", a.family.clone()),
            ("n_range", a.n_range.clone()),
            ("N", a.n_samples.to_string()),
            ("K", shots.to_string()),
            ("seed", a.seed.to_string()),
        ],
    );
    csv.push_str(&resource_rows_to_csv(&rows));
    emit(a.out.as_deref(), &csv)?;
    Ok(EXIT_OK)
}

fn cmd_robustness(a: RobustnessArgs) -> Result<u8, CliError> {
    let taus = parse_f64_list(&a.tau_list)?;
    let channel = match a.channel.as_str() {
        "phase" => ChannelKind::CoherentPhase { sites: (0..a.n).collect() },
        "depolarizing" => ChannelKind::Depolarizing,
        "pauli" => ChannelKind::PauliPerSite,
        other => return Err(CliError::config(format!("unknown channel '{other}'"))),
    };
    let mut reports = Vec::new();
    for &tau in &taus {
        let cfg = RobustnessConfig {
            n: a.n,
            tau,
            channel: channel.clone(),
            runs: a.runs,
            delta: a.delta,
            seed: a.seed,
        };
        let report = robustness_experiment(&cfg).map_err(|e| CliError::config(e.to_string()))?;
        eprintln!(
            "tau={tau}: max |f−c| = {:.4} (bound {:.4}), Δ = {:.4} (≤ {:.4})",
            report.empirical_max, report.bound, report.delta_tv, report.delta_bound
        );
        reports.push(report);
    }
    std::fs::create_dir_all(&a.out)?;
    let mut csv = metadata_header(
        "robustness",
        &[
            ("n", a.n.to_string()),
            ("channel", a.channel.clone()),
            ("runs", a.runs.to_string()),
            ("delta", a.delta.to_string()),
            ("seed", a.seed.to_string()),
            ("norm", "schatten-1 (unnormalized)".into()),
        ],
    );
    csv.push_str(&robustness_reports_to_csv(&reports));
    write_file(&a.out.join("robustness.csv"), &csv)?;
    write_file(
        &a.out.join("robustness.json"),
        &serde_json::to_string_pretty(&reports).expect("json"),
    )?;
    Ok(EXIT_OK)
}

fn cmd_entangle(a: EntangleArgs) -> Result<u8, CliError> {
    let ns = parse_usize_list(&a.n_list)?;
    let report = crate::verify::entanglement_average_check(&ns, a.samples, a.depth_factor, a.seed)
        .map_err(|e| CliError::config(e.to_string()))?;
    let mut csv = metadata_header(
        "entangle",
        &[
            ("n_list", a.n_list.clone()),
            ("samples", a.samples.to_string()),
            ("depth_factor", a.depth_factor.to_string()),
            ("seed", a.seed.to_string()),
        ],
    );
    csv.push_str("n,mean_s2,se_s2,mean_purity,se_purity,predicted_purity,predicted_s2_bound,k,k_prime\n");
    for r in &report.rows {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.n,
            r.mean_s2,
            r.se_s2,
            r.mean_purity,
            r.se_purity,
            r.predicted_purity,
            r.predicted_s2_bound,
            r.k,
            r.k_prime
        ));
    }
    emit(a.out.as_deref(), &csv)?;
    eprintln!(
        "fit: slope {:.4}, R² {:.5}; all means within 3σ: {}",
        report.fit.slope,
        report.fit.r_squared,
        report.rows.iter().all(|r| r.purity_within_3se)
    );
    Ok(EXIT_OK)
}

fn cmd_verify(a: VerifyArgs) -> Result<u8, CliError> {
    let report = run_suite(&a.suite, a.seed)
        .map_err(|e| CliError::config(format!("suite '{}': {e}", a.suite)))?;
    let text = serde_json::to_string_pretty(&report).expect("json");
    if let Some(path) = &a.out {
        write_file(path, &text)?;
    }
    for c in &report.checks {
        println!("{} {}", if c.pass { "PASS" } else { "FAIL" }, c.name);
    }
    if report.pass {
        Ok(EXIT_OK)
    } else {
        println!("{text}");
        Ok(EXIT_VERIFY_FAILED)
    }
}

fn emit(path: Option<&Path>, contents: &str) -> Result<(), CliError> {
    match path {
        Some(p) => write_file(p, contents),
        None => {
            std::io::stdout().write_all(contents.as_bytes())?;
            Ok(())
        }
    }
}
