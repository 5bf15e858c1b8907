//! `tokengraph`: build token digraphs, run verification suites, reduce
//! NAE-3-SAT formulas, search kernels, and scan for chromatic drops.
//!
//! Exit codes: 0 all checks pass, 1 a mathematical violation was found,
//! 2 usage or input error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tokengraph::coloring::{connected_graphs, scan_conjecture, ConjectureStatus};
use tokengraph::io::{
    digraph_to_dot, gadget_labels, gadget_sidecar_json, read_digraph, read_dimacs, token_labels,
    token_sidecar_json, write_digraph,
};
use tokengraph::kernels::{find_kernel, is_kernel, reduce};
use tokengraph::suites::{
    analyze, run_suites, search_hamiltonian_lift, search_kernel_loss, SuiteConfig, SuiteId,
};
use tokengraph::{token_digraph, Digraph, Graph};

#[derive(Parser)]
#[command(
    name = "tokengraph",
    version,
    about = "Token digraphs and their invariants"
)]
struct Cli {
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct OutputArgs {
    /// Write JSON here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Write F_k(D) as an edge list, with a node-map sidecar and optional DOT.
    Build {
        input: PathBuf,
        #[arg(long, short)]
        k: usize,
        /// Edge list path; the sidecar goes to `<output>.nodes.json`.
        #[arg(long, short)]
        output: PathBuf,
        /// Also write `<output>.dot`.
        #[arg(long)]
        dot: bool,
    },
    /// Run verification suites (`all` runs every suite in scope).
    Verify {
        #[arg(required = true)]
        suites: Vec<String>,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Restrict token counts to this value.
        #[arg(long)]
        k: Option<usize>,
        /// Include long-running scopes.
        #[arg(long)]
        slow: bool,
        /// Record wall time per check (makes output nondeterministic).
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Build the kernel gadget of a DIMACS 3-CNF formula.
    Reduce {
        input: PathBuf,
        /// Edge list path; roles go to `<output>.roles.json`.
        #[arg(long, short)]
        output: PathBuf,
        #[arg(long)]
        dot: bool,
    },
    /// Search for a kernel of D, or of F_k(D) with `--k`.
    Kernel {
        input: PathBuf,
        #[arg(long, short)]
        k: Option<usize>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Compare chi(F_2(G)) with chi(G) over connected graphs.
    Scan {
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Dump invariants of a digraph and its token digraphs.
    Analyze {
        input: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Look for small examples of a phenomenon.
    Search {
        mode: SearchMode,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchMode {
    /// A digraph with a kernel whose F_2 has none.
    KernelLoss,
    /// A non-Hamiltonian digraph with a Hamiltonian F_2.
    HamiltonianLift,
}

/// Failure modes, mapped to exit codes.
enum Failure {
    Usage(String),
    Violation,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn emit(value: &Value, out: &OutputArgs) -> Outcome {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match &out.output {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn digraph_json(d: &Digraph) -> Value {
    json!({ "n": d.n(), "arcs": d.arcs().collect::<Vec<_>>() })
}

fn build(input: &Path, k: usize, output: &Path, dot: bool) -> Outcome {
    let d = read_digraph(input)?;
    let f = token_digraph(&d, k)?;
    fs::write(output, write_digraph(f.digraph()))?;
    fs::write(with_suffix(output, ".nodes.json"), token_sidecar_json(&f))?;
    if dot {
        let labels = token_labels(&f);
        fs::write(
            with_suffix(output, ".dot"),
            digraph_to_dot(f.digraph(), Some(&labels)),
        )?;
    }
    eprintln!(
        "F_{k}: {} nodes, {} arcs -> {}",
        f.node_count(),
        f.digraph().arc_count(),
        output.display()
    );
    Ok(())
}

fn parse_suites(names: &[String], slow: bool) -> Result<Vec<SuiteId>, Failure> {
    let mut ids = Vec::new();
    for name in names {
        if name == "all" {
            ids.extend(SuiteId::ALL.into_iter().filter(|id| slow || !id.is_slow()));
        } else {
            ids.push(name.parse::<SuiteId>().map_err(Failure::Usage)?);
        }
    }
    ids.dedup();
    Ok(ids)
}

fn verify(ids: &[SuiteId], cfg: &SuiteConfig, timings: bool, out: &OutputArgs) -> Outcome {
    if cfg.n_max < 2 {
        return Err(Failure::Usage("--n-max must be at least 2".into()));
    }
    let command = format!(
        "verify {} --n-max {} --samples {} --seed {}{}{}",
        ids.iter().map(|id| id.name()).collect::<Vec<_>>().join(" "),
        cfg.n_max,
        cfg.samples,
        cfg.seed,
        cfg.k.map(|k| format!(" --k {k}")).unwrap_or_default(),
        if cfg.slow { " --slow" } else { "" },
    );
    let mut report = run_suites(&command, ids, cfg);
    for c in &report.checks {
        eprintln!(
            "{} {:<44} instances={} violations={} skipped={}",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.instances,
            c.violations,
            c.skipped
        );
    }
    if !timings {
        report = report.without_timings();
    }
    emit(&serde_json::to_value(&report)?, out)?;
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Violation)
    }
}

fn reduce_cmd(input: &Path, output: &Path, dot: bool) -> Outcome {
    let phi = read_dimacs(input)?;
    let g = reduce(&phi);
    fs::write(output, write_digraph(g.digraph()))?;
    fs::write(with_suffix(output, ".roles.json"), gadget_sidecar_json(&g))?;
    if dot {
        let labels = gadget_labels(&g);
        fs::write(
            with_suffix(output, ".dot"),
            digraph_to_dot(g.digraph(), Some(&labels)),
        )?;
    }
    eprintln!(
        "gadget: {} vertices, {} arcs -> {}",
        g.digraph().n(),
        g.digraph().arc_count(),
        output.display()
    );
    Ok(())
}

fn kernel_cmd(input: &Path, k: Option<usize>, out: &OutputArgs) -> Outcome {
    let d = read_digraph(input)?;
    let (target, configs) = match k {
        Some(k) => {
            let f = token_digraph(&d, k)?;
            let labels = token_labels(&f);
            (f.digraph().clone(), Some(labels))
        }
        None => (d, None),
    };
    let kernel = find_kernel(&target);
    let verified = kernel.as_ref().map(|s| is_kernel(&target, s));
    let value = json!({
        "nodes": target.n(),
        "arcs": target.arc_count(),
        "k": k,
        "kernel": kernel,
        "size": kernel.as_ref().map(|s| s.len()),
        "configurations": kernel.as_ref().zip(configs.as_ref()).map(|(s, labels)| {
            s.members.iter().map(|&v| labels[v].clone()).collect::<Vec<_>>()
        }),
        "verified": verified,
    });
    eprintln!(
        "{}",
        kernel.as_ref().map_or_else(
            || "none".to_string(),
            |s| format!("kernel of size {}", s.len())
        )
    );
    emit(&value, out)?;
    if verified == Some(false) {
        return Err(Failure::Violation);
    }
    Ok(())
}

fn scan(n_max: usize, out: &OutputArgs) -> Outcome {
    let graphs: Vec<(String, Graph)> = (2..=n_max)
        .flat_map(|n| {
            connected_graphs(n)
                .into_iter()
                .enumerate()
                .map(move |(i, g)| (format!("c{n}-{i:03}"), g))
        })
        .collect();
    let report = scan_conjecture(&graphs)?;
    let mut stdout = std::io::stdout().lock();
    for e in &report.entries {
        let row =
            json!({ "graph_id": e.graph_id, "chi": e.chi, "chi_F2": e.chi_f2, "status": e.status });
        writeln!(stdout, "{row}")?;
    }
    for e in report
        .entries
        .iter()
        .filter(|e| e.status == ConjectureStatus::Counterexample)
    {
        eprintln!(
            "!!! COUNTEREXAMPLE {}: chi = {}, chi(F_2) = {}, edges = {:?}",
            e.graph_id, e.chi, e.chi_f2, e.edges
        );
    }
    for id in &report.violations {
        eprintln!("!!! VIOLATION {id}");
    }
    eprintln!(
        "scanned {} graphs: {} counterexamples, {} violations, {} drops in k",
        report.graphs,
        report.counterexamples.len(),
        report.violations.len(),
        report.drops.len()
    );
    if let Some(path) = &out.output {
        fs::write(path, serde_json::to_string_pretty(&report)? + "\n")?;
    }
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Violation)
    }
}

fn search(mode: SearchMode, n_max: usize, samples: usize, seed: u64, out: &OutputArgs) -> Outcome {
    let value = match mode {
        SearchMode::KernelLoss => match search_kernel_loss(n_max) {
            Some((d, k)) => json!({ "found": true, "digraph": digraph_json(&d), "kernel": k }),
            None => json!({ "found": false }),
        },
        SearchMode::HamiltonianLift => match search_hamiltonian_lift(n_max, samples, seed) {
            Some(d) => json!({ "found": true, "digraph": digraph_json(&d) }),
            None => json!({ "found": false }),
        },
    };
    emit(&value, out)
}

fn run(cli: Cli) -> Outcome {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()?;
    }
    match cli.command {
        Command::Build {
            input,
            k,
            output,
            dot,
        } => build(&input, k, &output, dot),
        Command::Verify {
            suites,
            n_max,
            samples,
            seed,
            k,
            slow,
            timings,
            out,
        } => {
            let ids = parse_suites(&suites, slow)?;
            let cfg = SuiteConfig {
                n_max,
                samples,
                seed,
                k,
                slow,
            };
            verify(&ids, &cfg, timings, &out)
        }
        Command::Reduce { input, output, dot } => reduce_cmd(&input, &output, dot),
        Command::Kernel { input, k, out } => kernel_cmd(&input, k, &out),
        Command::Scan { n_max, out } => scan(n_max, &out),
        Command::Analyze { input, out } => emit(&analyze(&read_digraph(&input)?)?, &out),
        Command::Search {
            mode,
            n_max,
            samples,
            seed,
            out,
        } => search(mode, n_max, samples, seed, &out),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
