use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use ccq_core::circuit::{circuit_element, parse_bitstring, parse_circuit, parse_complex, run_clifford, Circuit};
use ccq_core::gates::{measure_probabilities, Gate};
use ccq_core::oracle::{fuzz, max_abs_deviation, run_matrix, FuzzConfig};
use ccq_core::real_ga::{bloch_angles, bloch_vector, bloch_verify, iso_check};
use ccq_core::witt::{index_bits, render_witt, state_to_amplitudes, WittContext};
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "ccq", version, about = "Quantum circuits in the complex Clifford algebra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a circuit file
    Run(RunArgs),
    /// Compare the two backends on random circuits
    Fuzz(FuzzArgs),
    /// Bloch angles of a qubit α|0⟩ + β|1⟩
    Bloch {
        /// e.g. 0.6, 0.5+0.5i
        #[arg(allow_hyphen_values = true)]
        alpha: String,
        #[arg(allow_hyphen_values = true)]
        beta: String,
    },
    /// Verify the isomorphism between ℂ₂ and 𝔾₃
    IsoCheck {
        #[arg(long)]
        json: bool,
    },
    /// Print the Witt-basis form of a named gate
    GateDump(GateDumpArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Backend {
    Clifford,
    Matrix,
    Both,
}

#[derive(clap::Args)]
struct RunArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value = "clifford")]
    backend: Backend,
    /// Initial basis state, MSB first (default all zeros)
    #[arg(long)]
    init: Option<String>,
    #[arg(long)]
    probabilities: bool,
    /// Print each gate and the whole circuit in the Witt basis
    #[arg(long)]
    show_algebra: bool,
    #[arg(long)]
    json: bool,
    /// Largest allowed amplitude deviation between backends
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(clap::Args)]
struct FuzzArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    circuits: usize,
    #[arg(long, default_value_t = 4)]
    max_qubits: usize,
    #[arg(long, default_value_t = 20)]
    depth: usize,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long)]
    json: bool,
}

#[derive(clap::Args)]
struct GateDumpArgs {
    /// x, y, z, h, s, phase, u2, cnot, cz, swap, ccnot, cswap
    name: String,
    /// 1-based wires, comma separated (default 1, 2, …)
    #[arg(long, value_delimiter = ',')]
    wires: Vec<usize>,
    /// Register size (default: largest wire)
    #[arg(long)]
    qubits: Option<usize>,
    /// Angle for `phase`; four complex entries a, b, c, d for `u2`
    #[arg(long, allow_hyphen_values = true, num_args = 1..)]
    param: Vec<String>,
    /// Also print the element in the blade basis
    #[arg(long)]
    blades: bool,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }
}

impl From<ccq_core::Error> for Failure {
    fn from(e: ccq_core::Error) -> Self {
        Failure::usage(e)
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => run(args),
        Command::Fuzz(args) => run_fuzz(args),
        Command::Bloch { alpha, beta } => bloch(&alpha, &beta),
        Command::IsoCheck { json } => iso(json),
        Command::GateDump(args) => gate_dump(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn fmt_amp(z: Complex64) -> String {
    format!("{:+.6}{:+.6}i", z.re, z.im)
}

fn ket(k: usize, n: usize) -> String {
    let bits: String = index_bits(k, n).iter().map(|&b| if b { '1' } else { '0' }).collect();
    format!("|{bits}⟩")
}

fn pairs(v: &[Complex64]) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

#[derive(Serialize)]
struct RunReport {
    backend: &'static str,
    qubits: usize,
    init: String,
    amplitudes: serde_json::Map<String, serde_json::Value>,
    probabilities: serde_json::Map<String, serde_json::Value>,
    deviation: Option<f64>,
    passed: bool,
}

fn run(args: RunArgs) -> CmdResult {
    let text = fs::read_to_string(&args.file)
        .map_err(|e| Failure::usage(format!("{}: {e}", args.file.display())))?;
    let circuit = parse_circuit(&text)
        .map_err(|e| Failure::usage(format!("{}: {e}", args.file.display())))?;
    let n = circuit.n();
    let init = match &args.init {
        Some(s) => parse_bitstring(s, n)?,
        None => vec![false; n],
    };
    let init_str: String = init.iter().map(|&b| if b { '1' } else { '0' }).collect();

    let mut results: Vec<(&'static str, Vec<Complex64>, Vec<f64>)> = Vec::new();
    if matches!(args.backend, Backend::Clifford | Backend::Both) {
        let ctx = WittContext::new(n)?;
        let state = run_clifford(&ctx, &circuit, &init)?;
        let amps = state_to_amplitudes(&ctx, &state)?;
        let probs = measure_probabilities(&ctx, &state)?;
        results.push(("clifford", amps, probs));
    }
    if matches!(args.backend, Backend::Matrix | Backend::Both) {
        let state = run_matrix(&circuit, &init)?;
        let probs = state.probabilities();
        results.push(("matrix", state.into_amplitudes(), probs));
    }
    let deviation = (results.len() == 2).then(|| max_abs_deviation(&results[0].1, &results[1].1));
    let passed = deviation.is_none_or(|d| d < args.tol);

    if args.json {
        let backend = match args.backend {
            Backend::Clifford => "clifford",
            Backend::Matrix => "matrix",
            Backend::Both => "both",
        };
        let report = RunReport {
            backend,
            qubits: n,
            init: init_str,
            amplitudes: results.iter().map(|(b, a, _)| (b.to_string(), json!(pairs(a)))).collect(),
            probabilities: results.iter().map(|(b, _, p)| (b.to_string(), json!(p))).collect(),
            deviation,
            passed,
        };
        println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    } else {
        if args.show_algebra {
            show_algebra(&circuit)?;
        }
        for (backend, amps, probs) in &results {
            println!("{backend} backend, {n} qubit(s), initial state {}", ket(init_index(&init), n));
            for (k, a) in amps.iter().enumerate() {
                if args.probabilities {
                    println!("  {}  {}  p = {:.6}", ket(k, n), fmt_amp(*a), probs[k]);
                } else {
                    println!("  {}  {}", ket(k, n), fmt_amp(*a));
                }
            }
        }
        if let Some(d) = deviation {
            let verdict = if passed { "PASS" } else { "FAIL" };
            println!("max amplitude deviation {d:.3e} (tol {:.1e}) {verdict}", args.tol);
        }
    }
    Ok(if passed { 0 } else { EXIT_VERIFY })
}

fn init_index(bits: &[bool]) -> usize {
    bits.iter().fold(0, |acc, &b| (acc << 1) | usize::from(b))
}

const ALGEBRA_PRODUCT_MAX_QUBITS: usize = 4;

fn show_algebra(circuit: &Circuit) -> Result<(), Failure> {
    let ctx = WittContext::new(circuit.n())?;
    println!("gates in the Witt basis:");
    for op in circuit.ops() {
        let g = op.element(&ctx)?;
        println!("  {op}: {}", render_witt(&ctx, g.value())?);
    }
    if circuit.n() <= ALGEBRA_PRODUCT_MAX_QUBITS {
        let total = circuit_element(&ctx, circuit)?;
        println!("circuit: {}", render_witt(&ctx, total.value())?);
    }
    Ok(())
}

fn run_fuzz(args: FuzzArgs) -> CmdResult {
    let config = FuzzConfig {
        seed: args.seed,
        circuits: args.circuits,
        max_qubits: args.max_qubits,
        depth: args.depth,
        tol: args.tol,
    };
    let report = fuzz(&config)?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    } else {
        for c in &report.cases {
            println!(
                "seed {}  qubits {}  gates {:>2}  init {}  deviation {:.3e}  {}",
                c.seed,
                c.qubits,
                c.gates,
                c.init,
                c.deviation,
                if c.passed { "PASS" } else { "FAIL" }
            );
        }
        println!(
            "{} circuits, seed {}, max deviation {:.3e}, {} failure(s): {}",
            report.cases.len(),
            config.seed,
            report.max_deviation,
            report.failures,
            if report.passed { "PASS" } else { "FAIL" }
        );
    }
    Ok(if report.passed { 0 } else { EXIT_VERIFY })
}

fn parse_amp(s: &str) -> Result<Complex64, Failure> {
    parse_complex(s).ok_or_else(|| Failure::usage(format!("invalid complex number `{s}`")))
}

fn bloch(alpha: &str, beta: &str) -> CmdResult {
    let (a, b) = (parse_amp(alpha)?, parse_amp(beta)?);
    let (theta, phi) = bloch_angles(a, b)?;
    let point = bloch_verify(theta, phi);
    let from_state = bloch_vector(a, b);
    let expected = [phi.cos() * theta.sin(), phi.sin() * theta.sin(), theta.cos()];
    let err = point
        .iter()
        .zip(expected)
        .chain(from_state.iter().zip(expected))
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    println!("theta = {theta:.12}");
    println!("phi   = {phi:.12}");
    println!(
        "point = ({:.12}, {:.12}, {:.12})",
        point[0], point[1], point[2]
    );
    let ok = err < 1e-10;
    println!("check {err:.3e} {}", if ok { "PASS" } else { "FAIL" });
    Ok(if ok { 0 } else { EXIT_VERIFY })
}

fn iso(as_json: bool) -> CmdResult {
    let report = iso_check();
    let ok = report.passed(1e-12);
    if as_json {
        println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    } else {
        println!("basis elements       {}", report.basis_size);
        println!("pairs checked        {}", report.pairs_checked);
        println!("multiplicative error {:.3e}", report.multiplicative_error);
        println!("† to reverse error   {:.3e}", report.reverse_error);
        println!("inverse error        {:.3e}", report.inverse_error);
        println!("table error          {:.3e}", report.table_error);
        println!("{}", if ok { "PASS" } else { "FAIL" });
    }
    Ok(if ok { 0 } else { EXIT_VERIFY })
}

fn gate_dump(args: GateDumpArgs) -> CmdResult {
    let name = args.name.to_lowercase();
    let arity = Gate::arity_of(&name).ok_or_else(|| {
        Failure::usage(format!(
            "unknown gate `{}` (known: {})",
            args.name,
            Gate::NAMES.join(", ")
        ))
    })?;
    let expected = Gate::param_count(&name);
    if args.param.len() != expected {
        return Err(Failure::usage(format!(
            "`{name}` takes {expected} parameter(s), got {}",
            args.param.len()
        )));
    }
    let gate = match name.as_str() {
        "phase" => Gate::Phase(
            args.param[0]
                .parse()
                .map_err(|_| Failure::usage(format!("invalid angle `{}`", args.param[0])))?,
        ),
        "u2" => {
            let z: Vec<Complex64> = args.param.iter().map(|s| parse_amp(s)).collect::<Result<_, _>>()?;
            Gate::U2([[z[0], z[1]], [z[2], z[3]]])
        }
        _ => Gate::from_name(&name).expect("registry name"),
    };
    let wires = if args.wires.is_empty() {
        (1..=arity).collect()
    } else {
        args.wires
    };
    let n = args
        .qubits
        .unwrap_or_else(|| wires.iter().copied().max().unwrap_or(1));
    let ctx = WittContext::new(n)?;
    let g = gate.element(&ctx, &wires)?;
    println!("{}", render_witt(&ctx, g.value())?);
    if args.blades {
        println!("{}", g.value());
    }
    Ok(0)
}
