use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use swapnet::bench::{run_benchmark, BenchmarkSpec};
use swapnet::circuit::{
    build_cry_hea, build_excitation_ansatz, decompose, embed_swap_network, metrics, Circuit, Flavor,
};
use swapnet::graph::io::{parse_pairs, read_graph};
use swapnet::graph::{coarsen, presets, ConnectivityGraph};
use swapnet::hamiltonian::{
    exact_ground_energy, format_pauli_file, gen_spin_glass, parse_pauli_file, PauliSum,
};
use swapnet::router::{optimize_network, AnnealConfig, SwapProtocol};
use swapnet::vqe::{energy_error, run_vqe, Optimizer, VqeConfig};
use swapnet::{Error, Result};

/// Swap-network routing, ansatz construction and VQE benchmarks.
#[derive(Parser)]
#[command(name = "swapnet", version)]
struct Cli {
    /// Worker threads for parallel sections.
    #[arg(long, global = true, env = "SWAPNET_WORKERS")]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Optimize a swap network. Exits 0 when complete, 2 when the block
    /// limit stopped it early, 1 on error.
    Route(RouteArgs),
    /// Build an ansatz circuit, optionally around a swap network.
    Ansatz(AnsatzArgs),
    /// Minimize the energy of a Hamiltonian over a circuit's parameters.
    Vqe(VqeArgs),
    /// Run a benchmark spec and write CSV rows plus a JSON summary.
    Benchmark(BenchmarkArgs),
    /// Exact ground-state energy of a Pauli file.
    Exact(ExactArgs),
    /// Write a random spin-glass Hamiltonian.
    SpinGlass(SpinGlassArgs),
}

#[derive(Args)]
struct RouteArgs {
    /// Graph file or preset name (e.g. linear-7, grid-3x3, heavy-hex-7).
    graph: String,
    #[arg(short, long, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Annealing steps per chain [default: 2000 k].
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    t0: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    p_add: Option<f64>,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    max_blocks: Option<usize>,
    #[arg(long)]
    exponent: Option<u32>,
    /// Merge vertex pairs first, e.g. "1:2,3:4".
    #[arg(long)]
    pairs: Option<String>,
    /// Protocol JSON destination [default: stdout].
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Qubit,
    Fermionic,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Flavor {
        match f {
            FlavorArg::Qubit => Flavor::Qubit,
            FlavorArg::Fermionic => Flavor::Fermionic,
        }
    }
}

#[derive(Args)]
struct AnsatzArgs {
    graph: String,
    #[arg(long, value_enum, default_value_t = FlavorArg::Qubit)]
    flavor: FlavorArg,
    /// Entangling layers (plain ansatz) or layers per slot (with --protocol).
    #[arg(short, long, default_value_t = 1)]
    layers: usize,
    /// Interleave the entangling layers with this swap network.
    #[arg(long)]
    protocol: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    repetitions: usize,
    #[arg(long)]
    pairs: Option<String>,
    /// Qubits to flip to |1> first, comma separated.
    #[arg(long, value_delimiter = ',')]
    reference: Vec<usize>,
    /// Emit the native-gate form.
    #[arg(long)]
    decompose: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OptimizerArg {
    SimplexFree,
    QuasiNewton,
}

#[derive(Args)]
struct VqeArgs {
    /// Circuit JSON.
    #[arg(long)]
    circuit: PathBuf,
    /// Pauli file; mutually exclusive with --spin-glass.
    #[arg(long, conflicts_with = "spin_glass")]
    hamiltonian: Option<PathBuf>,
    /// Random spin glass with this seed on the circuit's qubits.
    #[arg(long)]
    spin_glass: Option<u64>,
    #[arg(long, value_enum, default_value_t = OptimizerArg::SimplexFree)]
    optimizer: OptimizerArg,
    /// Evaluations (simplex) or iterations (quasi-Newton).
    #[arg(long)]
    max_iters: Option<usize>,
    #[arg(long)]
    init_scale: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    tol: Option<f64>,
    /// Also report the exact ground energy and the error against it.
    #[arg(long)]
    exact: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchmarkArgs {
    spec: PathBuf,
    /// CSV destination; overrides `output` in the TOML file [default: stdout].
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ExactArgs {
    hamiltonian: PathBuf,
}

#[derive(Args)]
struct SpinGlassArgs {
    #[arg(short, long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the instance as JSON instead of a Pauli file.
    #[arg(long)]
    json: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build_global()
        {
            eprintln!("warning: {e}");
        }
    }
    let result = match cli.command {
        Command::Route(a) => route(a),
        Command::Ansatz(a) => ansatz(a).map(|_| ExitCode::SUCCESS),
        Command::Vqe(a) => vqe(a).map(|_| ExitCode::SUCCESS),
        Command::Benchmark(a) => benchmark(a).map(|_| ExitCode::SUCCESS),
        Command::Exact(a) => exact(a).map(|_| ExitCode::SUCCESS),
        Command::SpinGlass(a) => spin_glass(a).map(|_| ExitCode::SUCCESS),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::from(1)
    })
}

fn load_graph(spec: &str, pairs: Option<&str>) -> Result<ConnectivityGraph> {
    let g = if Path::new(spec).exists() {
        read_graph(spec)?
    } else {
        presets::by_name(spec)?
    };
    match pairs {
        Some(p) => coarsen(&g, &parse_pairs(p)?),
        None => Ok(g),
    }
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(p) => std::fs::write(p, text)?,
        None => println!("{}", text.trim_end()),
    }
    Ok(())
}

fn route(a: RouteArgs) -> Result<ExitCode> {
    let g = load_graph(&a.graph, a.pairs.as_deref())?;
    let mut cfg = AnnealConfig::new(a.k).with_seed(a.seed);
    cfg.steps = a.steps.unwrap_or(cfg.steps);
    cfg.t0 = a.t0.or(cfg.t0);
    cfg.alpha = a.alpha.unwrap_or(cfg.alpha);
    cfg.p_add = a.p_add.unwrap_or(cfg.p_add);
    cfg.restarts = a.restarts.unwrap_or(cfg.restarts);
    cfg.max_blocks = a.max_blocks;
    cfg.exponent = a.exponent.unwrap_or(cfg.exponent);

    let p = optimize_network(&g, &cfg)?;
    p.replay(&g)?;
    emit(&p.to_json(), a.output.as_deref())?;
    let trace: Vec<String> = std::iter::once(p.initial_cost)
        .chain(p.cost_trace.iter().copied())
        .map(|c| c.to_string())
        .collect();
    eprintln!(
        "blocks {} layers {} swaps {} complete {}",
        p.block_count(),
        p.total_layers(),
        p.total_swaps(),
        p.complete
    );
    eprintln!("cost {}", trace.join(" "));
    Ok(if p.complete {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn ansatz(a: AnsatzArgs) -> Result<()> {
    let g = load_graph(&a.graph, a.pairs.as_deref())?;
    let flavor: Flavor = a.flavor.into();
    let mut c: Circuit = match &a.protocol {
        Some(path) => {
            let p = SwapProtocol::from_json(&std::fs::read_to_string(path)?)?;
            embed_swap_network(&g, &p, a.layers, a.repetitions, flavor)?
        }
        None => match flavor {
            Flavor::Qubit => build_cry_hea(&g, a.layers),
            Flavor::Fermionic => build_excitation_ansatz(&g, a.layers),
        },
    };
    if !a.reference.is_empty() {
        c = c.with_reference(&a.reference);
    }
    if a.decompose {
        c = decompose(&c);
    }
    c.validate()?;
    emit(&c.to_json(), a.output.as_deref())?;
    let m = metrics(&c);
    eprintln!(
        "cnot_count {} depth {} n_params {}",
        m.cnot_count, m.depth, m.n_params
    );
    Ok(())
}

fn vqe(a: VqeArgs) -> Result<()> {
    let c = Circuit::from_json(&std::fs::read_to_string(&a.circuit)?)?;
    let h: PauliSum = match (&a.hamiltonian, a.spin_glass) {
        (Some(p), _) => parse_pauli_file(p)?,
        (None, Some(seed)) => gen_spin_glass(c.n_qubits, seed)?.hamiltonian()?,
        (None, None) => return Err(Error::Config("need --hamiltonian or --spin-glass".into())),
    };
    let mut cfg = match a.optimizer {
        OptimizerArg::SimplexFree => VqeConfig::simplex(),
        OptimizerArg::QuasiNewton => VqeConfig::quasi_newton(),
    }
    .with_seed(a.seed);
    cfg.max_iters = a.max_iters.unwrap_or(cfg.max_iters);
    cfg.init_scale = a.init_scale.unwrap_or(cfg.init_scale);
    cfg.tol = a.tol.unwrap_or(cfg.tol);

    let r = run_vqe(&c, &h, &cfg)?;
    let mut out = serde_json::to_value(&r)?;
    out["optimizer"] = json!(match cfg.optimizer {
        Optimizer::SimplexFree => "simplex_free",
        Optimizer::QuasiNewton => "quasi_newton",
    });
    if a.exact {
        let e0 = exact_ground_energy(&h)?;
        out["exact_energy"] = json!(e0);
        out["energy_error"] = json!(energy_error(&r, e0));
    }
    emit(&serde_json::to_string_pretty(&out)?, a.output.as_deref())?;
    eprintln!("best_energy {:.12}", r.best_energy);
    Ok(())
}

fn benchmark(a: BenchmarkArgs) -> Result<()> {
    let spec = BenchmarkSpec::load(&a.spec)?;
    let output = a.output.or_else(|| spec.output.as_ref().map(PathBuf::from));
    let report = run_benchmark(&spec)?;
    let csv = report.to_csv()?;
    let summary = report.summary_json();
    match &output {
        Some(p) => {
            std::fs::write(p, csv)?;
            let mut s = p.clone().into_os_string();
            s.push(".summary.json");
            std::fs::write(PathBuf::from(s), summary + "\n")?;
        }
        None => {
            print!("{csv}");
            eprintln!("{summary}");
        }
    }
    let failed = report.rows.iter().filter(|r| !r.error.is_empty()).count();
    if failed > 0 {
        eprintln!("{failed} of {} rows failed", report.rows.len());
    }
    Ok(())
}

fn exact(a: ExactArgs) -> Result<()> {
    let h = parse_pauli_file(&a.hamiltonian)?;
    println!("{:.12}", exact_ground_energy(&h)?);
    Ok(())
}

fn spin_glass(a: SpinGlassArgs) -> Result<()> {
    let inst = gen_spin_glass(a.n, a.seed)?;
    let text = if a.json {
        inst.to_json()
    } else {
        format_pauli_file(&inst.hamiltonian()?)
    };
    emit(&text, a.output.as_deref())
}
