//! Benchmark grids: plain versus swap-augmented ansaetze over a set of
//! Hamiltonian instances, reported as one CSV row per
//! (instance, ansatz variant) plus summary statistics.
//!
//! A spec is a TOML file:
//!
//! ```toml
//! graph = "linear-6"        # preset name or graph file
//! k = 1
//! flavor = "qubit"
//! layers = [1, 2, 4]        # plain ansatz depths
//! repetitions = [1, 2]      # swap-network repetitions
//! instances = 20
//! seeds = [0]
//! match_budget = true       # also run plain depths matching each swapped CNOT count
//! output = "bench.csv"
//!
//! [optimizer]
//! optimizer = "simplex_free"
//! max_iters = 10000
//! ```

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuit::{
    build_cry_hea, build_excitation_ansatz, embed_swap_network, metrics, Circuit, Flavor, Metrics,
};
use crate::error::{Error, Result};
use crate::graph::io::{parse_pairs, read_graph};
use crate::graph::{coarsen, presets, ConnectivityGraph};
use crate::hamiltonian::{exact_ground_energy, gen_spin_glass, parse_pauli_file, PauliSum};
use crate::router::{optimize_network, AnnealConfig, SwapProtocol};
use crate::vqe::{energy_error, run_vqe, Summary, VqeConfig};

/// Relative improvement below which the deepest plain ansatz counts as
/// saturated.
pub const SATURATION_THRESHOLD: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchmarkSpec {
    /// Preset name or path to a graph file.
    pub graph: String,
    pub k: usize,
    #[serde(default = "default_flavor")]
    pub flavor: Flavor,
    /// Entangling-layer counts of the plain ansatz.
    #[serde(default)]
    pub layers: Vec<usize>,
    /// Repetitions of the swap network in the augmented ansatz.
    #[serde(default)]
    pub repetitions: Vec<usize>,
    #[serde(default = "one")]
    pub layers_per_slot: usize,
    /// Number of random spin-glass instances; ignored with `hamiltonian`.
    #[serde(default = "one")]
    pub instances: usize,
    /// Instance `i` uses generator seed `instance_seed + i`.
    #[serde(default)]
    pub instance_seed: u64,
    /// Optimizer seeds; each variant keeps its best run over these.
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub route_seed: u64,
    /// Add, for every repetition count, the deepest plain ansatz whose CNOT
    /// count does not exceed the swapped one, and the depth just below it.
    #[serde(default)]
    pub match_budget: bool,
    #[serde(default)]
    pub optimizer: VqeConfig,
    /// Pauli file to use instead of spin glasses.
    #[serde(default)]
    pub hamiltonian: Option<String>,
    /// Vertex pairs (1-based, `"1:2,3:4"`) merged into orbitals before
    /// building a fermionic ansatz.
    #[serde(default)]
    pub pairs: Option<String>,
    /// Qubits flipped to `|1>` before the ansatz.
    #[serde(default)]
    pub reference: Vec<usize>,
    #[serde(default)]
    pub output: Option<String>,
    /// Worker threads; defaults to the global pool.
    #[serde(default)]
    pub workers: Option<usize>,
}

fn default_flavor() -> Flavor {
    Flavor::Qubit
}

fn one() -> usize {
    1
}

impl BenchmarkSpec {
    pub fn from_toml(text: &str) -> Result<Self> {
        let spec: BenchmarkSpec = toml::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    /// Reads a spec and resolves relative file references against the
    /// spec's directory.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let mut spec = BenchmarkSpec::from_toml(&std::fs::read_to_string(path)?)?;
        let base = path.parent().unwrap_or(Path::new("."));
        let resolve = |s: &str| -> String {
            let p = PathBuf::from(s);
            if p.is_relative() {
                base.join(p).to_string_lossy().into_owned()
            } else {
                s.to_string()
            }
        };
        if presets::by_name(&spec.graph).is_err() {
            spec.graph = resolve(&spec.graph);
        }
        spec.hamiltonian = spec.hamiltonian.as_deref().map(resolve);
        spec.output = spec.output.as_deref().map(resolve);
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Config(m.to_string()));
        if self.seeds.is_empty() {
            return bad("seeds must not be empty");
        }
        if self.layers.is_empty() && self.repetitions.is_empty() {
            return bad("layers and repetitions cannot both be empty");
        }
        if self.instances == 0 {
            return bad("instances must be at least 1");
        }
        if self.k == 0 {
            return bad("k must be at least 1");
        }
        if self.layers_per_slot == 0 {
            return bad("layers_per_slot must be at least 1");
        }
        if self.flavor == Flavor::Fermionic && self.hamiltonian.is_none() {
            return bad("the fermionic flavor needs a hamiltonian file");
        }
        if self.workers == Some(0) {
            return bad("workers must be at least 1");
        }
        self.optimizer.validate()
    }

    fn load_graph(&self) -> Result<ConnectivityGraph> {
        let g = match presets::by_name(&self.graph) {
            Ok(g) => g,
            Err(_) => read_graph(&self.graph)?,
        };
        match &self.pairs {
            Some(p) => coarsen(&g, &parse_pairs(p)?),
            None => Ok(g),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ansatz {
    Plain,
    Swapped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub instance: usize,
    pub ansatz: Ansatz,
    /// Total entangling layers in the circuit.
    pub layers: usize,
    /// Swap-network repetitions; 0 for the plain ansatz.
    pub repetitions: usize,
    pub cnot_count: usize,
    pub depth: usize,
    pub n_params: usize,
    pub energy_error: Option<f64>,
    /// Empty unless the run failed.
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariantSummary {
    pub ansatz: Ansatz,
    pub layers: usize,
    pub repetitions: usize,
    pub metrics: Metrics,
    pub energy_error: Option<Summary>,
    pub failures: usize,
}

/// A swapped variant next to the deepest plain variant within its CNOT
/// budget.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub repetitions: usize,
    pub swapped_cnot: usize,
    pub swapped_median: f64,
    pub plain_layers: usize,
    pub plain_cnot: usize,
    pub plain_median: f64,
    pub swapped_better: bool,
}

/// Median improvement of the deepest plain ansatz over the next shallower
/// one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Saturation {
    pub deepest_layers: usize,
    pub previous_layers: usize,
    pub deepest_median: f64,
    pub previous_median: f64,
    /// `(previous - deepest) / previous`.
    pub relative_improvement: f64,
    pub saturated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub graph: String,
    pub protocol_complete: Option<bool>,
    pub rows: Vec<Row>,
    pub summary: Vec<VariantSummary>,
    pub comparisons: Vec<Comparison>,
    pub saturation: Option<Saturation>,
}

impl BenchReport {
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.rows {
            w.serialize(r)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }

    pub fn summary_json(&self) -> String {
        #[derive(Serialize)]
        struct Block<'a> {
            graph: &'a str,
            protocol_complete: Option<bool>,
            summary: &'a [VariantSummary],
            comparisons: &'a [Comparison],
            saturation: &'a Option<Saturation>,
        }
        serde_json::to_string_pretty(&Block {
            graph: &self.graph,
            protocol_complete: self.protocol_complete,
            summary: &self.summary,
            comparisons: &self.comparisons,
            saturation: &self.saturation,
        })
        .expect("summary serializes")
    }
}

struct Variant {
    ansatz: Ansatz,
    layers: usize,
    repetitions: usize,
    circuit: Circuit,
    metrics: Metrics,
}

fn plain(g: &ConnectivityGraph, layers: usize, spec: &BenchmarkSpec) -> Circuit {
    let c = match spec.flavor {
        Flavor::Qubit => build_cry_hea(g, layers),
        Flavor::Fermionic => build_excitation_ansatz(g, layers),
    };
    with_reference(c, &spec.reference)
}

fn with_reference(c: Circuit, reference: &[usize]) -> Circuit {
    if reference.is_empty() {
        c
    } else {
        c.with_reference(reference)
    }
}

fn variants(
    g: &ConnectivityGraph,
    spec: &BenchmarkSpec,
) -> Result<(Vec<Variant>, Option<SwapProtocol>)> {
    let mut out: Vec<Variant> = Vec::new();
    let protocol = if spec.repetitions.is_empty() {
        None
    } else {
        Some(optimize_network(
            g,
            &AnnealConfig::new(spec.k).with_seed(spec.route_seed),
        )?)
    };
    if let Some(p) = &protocol {
        for &r in &spec.repetitions {
            let c = embed_swap_network(g, p, spec.layers_per_slot, r, spec.flavor)?;
            let c = with_reference(c, &spec.reference);
            out.push(Variant {
                ansatz: Ansatz::Swapped,
                layers: r * (p.block_count() + 1) * spec.layers_per_slot,
                repetitions: r,
                metrics: metrics(&c),
                circuit: c,
            });
        }
    }

    let mut depths = spec.layers.clone();
    if spec.match_budget {
        let per_layer = metrics(&plain(g, 1, spec)).cnot_count;
        for v in out.iter().filter(|v| v.ansatz == Ansatz::Swapped) {
            let Some(l) = v.metrics.cnot_count.checked_div(per_layer) else {
                continue;
            };
            depths.extend([l, l.saturating_sub(1)].into_iter().filter(|&l| l > 0));
        }
    }
    depths.sort_unstable();
    depths.dedup();
    for l in depths {
        let c = plain(g, l, spec);
        out.push(Variant {
            ansatz: Ansatz::Plain,
            layers: l,
            repetitions: 0,
            metrics: metrics(&c),
            circuit: c,
        });
    }
    out.sort_by_key(|v| (v.ansatz, v.layers, v.repetitions));
    Ok((out, protocol))
}

fn instances(spec: &BenchmarkSpec, n_qubits: usize) -> Result<Vec<PauliSum>> {
    match &spec.hamiltonian {
        Some(path) => Ok(vec![parse_pauli_file(path)?]),
        None => (0..spec.instances as u64)
            .map(|i| gen_spin_glass(n_qubits, spec.instance_seed + i)?.hamiltonian())
            .collect(),
    }
}

/// Runs every (instance, variant) pair. Rows come back sorted by instance,
/// ansatz, layers and repetitions regardless of scheduling.
pub fn run_benchmark(spec: &BenchmarkSpec) -> Result<BenchReport> {
    spec.validate()?;
    let g = spec.load_graph()?;
    let (variants, protocol) = variants(&g, spec)?;
    let n_qubits = spec.flavor.qubits_per_vertex() * g.n();
    let hams = instances(spec, n_qubits)?;
    let references: Vec<Result<f64>> = hams.iter().map(exact_ground_energy).collect();

    let jobs: Vec<(usize, usize)> = (0..hams.len())
        .flat_map(|i| (0..variants.len()).map(move |v| (i, v)))
        .collect();
    let run_job = |&(i, v): &(usize, usize)| -> Row {
        let var = &variants[v];
        let mut row = Row {
            instance: i,
            ansatz: var.ansatz,
            layers: var.layers,
            repetitions: var.repetitions,
            cnot_count: var.metrics.cnot_count,
            depth: var.metrics.depth,
            n_params: var.metrics.n_params,
            energy_error: None,
            error: String::new(),
        };
        let outcome = (|| -> Result<f64> {
            let reference = match &references[i] {
                Ok(e) => *e,
                Err(e) => return Err(Error::Config(format!("reference energy: {e}"))),
            };
            let mut best = f64::INFINITY;
            for &seed in &spec.seeds {
                let r = run_vqe(&var.circuit, &hams[i], &spec.optimizer.with_seed(seed))?;
                best = best.min(energy_error(&r, reference));
            }
            Ok(best)
        })();
        match outcome {
            Ok(e) => row.energy_error = Some(e),
            Err(e) => row.error = e.to_string(),
        }
        row
    };

    let rows: Vec<Row> = match spec.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| Error::Config(e.to_string()))?
            .install(|| jobs.par_iter().map(run_job).collect()),
        None => jobs.par_iter().map(run_job).collect(),
    };

    let summary: Vec<VariantSummary> = variants
        .iter()
        .map(|v| {
            let errs: Vec<f64> = rows
                .iter()
                .filter(|r| {
                    (r.ansatz, r.layers, r.repetitions) == (v.ansatz, v.layers, v.repetitions)
                })
                .filter_map(|r| r.energy_error)
                .collect();
            VariantSummary {
                ansatz: v.ansatz,
                layers: v.layers,
                repetitions: v.repetitions,
                metrics: v.metrics,
                energy_error: Summary::of(&errs),
                failures: hams.len() - errs.len(),
            }
        })
        .collect();

    Ok(BenchReport {
        graph: spec.graph.clone(),
        protocol_complete: protocol.map(|p| p.complete),
        comparisons: comparisons(&summary),
        saturation: saturation(&summary),
        summary,
        rows,
    })
}

fn comparisons(summary: &[VariantSummary]) -> Vec<Comparison> {
    let plain: Vec<&VariantSummary> = summary
        .iter()
        .filter(|s| s.ansatz == Ansatz::Plain)
        .collect();
    summary
        .iter()
        .filter(|s| s.ansatz == Ansatz::Swapped)
        .filter_map(|s| {
            let sw = s.energy_error?;
            let p = plain
                .iter()
                .filter(|p| {
                    p.metrics.cnot_count <= s.metrics.cnot_count && p.energy_error.is_some()
                })
                .max_by_key(|p| (p.metrics.cnot_count, p.layers))?;
            let pm = p.energy_error?.median;
            Some(Comparison {
                repetitions: s.repetitions,
                swapped_cnot: s.metrics.cnot_count,
                swapped_median: sw.median,
                plain_layers: p.layers,
                plain_cnot: p.metrics.cnot_count,
                plain_median: pm,
                swapped_better: sw.median < pm,
            })
        })
        .collect()
}

fn saturation(summary: &[VariantSummary]) -> Option<Saturation> {
    let mut plain: Vec<(usize, f64)> = summary
        .iter()
        .filter(|s| s.ansatz == Ansatz::Plain)
        .filter_map(|s| Some((s.layers, s.energy_error?.median)))
        .collect();
    plain.sort_by_key(|p| p.0);
    let [.., (prev_l, prev), (deep_l, deep)] = plain.as_slice() else {
        return None;
    };
    let rel = if *prev > 0.0 {
        (prev - deep) / prev
    } else {
        0.0
    };
    Some(Saturation {
        deepest_layers: *deep_l,
        previous_layers: *prev_l,
        deepest_median: *deep,
        previous_median: *prev,
        relative_improvement: rel,
        saturated: rel < SATURATION_THRESHOLD,
    })
}
