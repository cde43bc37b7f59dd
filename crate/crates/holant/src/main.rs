//! `holant` — file-driven front end over the library. Every subcommand is a
//! thin adapter: parse inputs, call one library entry point, print a JSON
//! report to stdout and a human summary to stderr.
//!
//! Exit codes: 0 = success / no counterexample, 2 = distinguished / rejected,
//! 1 = usage or IO error.

use clap::{Args, Parser, Subcommand};
use holant::enumerate::{GadgetBudget, GridBudget};
use holant::indist::{self, CspVariant};
use holant::json;
use holant::ortho::{self, SearchOptions};
use holant::report::RunReport;
use holant::scalar::Backend;
use holant::signature::Signature;
use holant::odeco;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "holant", version, about = "Holant signature-grid calculus")]
struct Cli {
    /// Attach wall-clock timing to the JSON report (off by default so that
    /// reports are byte-deterministic).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct BackendFlags {
    /// Require exact rational inputs (error out on floats).
    #[arg(long, conflicts_with = "float")]
    exact: bool,
    /// Force the float backend.
    #[arg(long)]
    float: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the Holant value of a signature grid.
    Eval {
        grid: PathBuf,
        #[command(flatten)]
        backend: BackendFlags,
    },
    /// Print the signature matrix of a gadget.
    Matrix {
        gadget: PathBuf,
        /// Re-split the dangling edges as (m, d) by pivoting before printing.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[command(flatten)]
        backend: BackendFlags,
    },
    /// Test Holant-indistinguishability of a similar pair by exhaustive grid
    /// enumeration.
    Indist {
        pair: PathBuf,
        /// Second pair for the bipartite tester (that pair goes on the right
        /// side).
        #[arg(long)]
        bipartite: Option<PathBuf>,
        #[arg(long, default_value_t = 5)]
        max_v: usize,
        #[arg(long, default_value_t = 14)]
        max_deg: usize,
        /// Restricted testers: csp, csp2, cycles, paths, trace.
        #[arg(long)]
        variant: Option<String>,
        /// Maximum word length for the trace variant.
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// Count homomorphisms from a graph into a weighted graph (brute force,
    /// cross-checked against the Holant grid construction).
    Hom { k: PathBuf, x: PathBuf },
    /// Odeco testing and decomposition.
    Odeco {
        #[command(subcommand)]
        cmd: OdecoCmd,
    },
    /// Ortho-equivalence verification and search.
    Ortho {
        #[command(subcommand)]
        cmd: OrthoCmd,
    },
    /// Basis of the span of signature matrices of enumerated (m,d)-gadgets.
    Span {
        set: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 2)]
        max_v: usize,
        #[arg(long, default_value_t = 8)]
        max_deg: usize,
    },
}

#[derive(Subcommand)]
enum OdecoCmd {
    /// Check the pairwise star-product symmetry criterion.
    Check {
        set: PathBuf,
        #[arg(long, default_value_t = odeco::DEFAULT_TOL)]
        tol: f64,
    },
    /// Constructive simultaneous decomposition.
    Decompose {
        set: PathBuf,
        #[arg(long, default_value_t = odeco::DEFAULT_TOL)]
        tol: f64,
    },
}

#[derive(Subcommand)]
enum OrthoCmd {
    /// Verify a candidate orthogonal map.
    Verify {
        pair: PathBuf,
        h: PathBuf,
        #[arg(long, default_value_t = ortho::DEFAULT_TOL)]
        tol: f64,
    },
    /// Search for an orthogonal map (odeco / binary / induction / heuristic).
    Search {
        pair: PathBuf,
        #[arg(long, default_value_t = 10)]
        restarts: usize,
        #[arg(long, default_value_t = 300)]
        iters: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = ortho::DEFAULT_TOL)]
        tol: f64,
    },
}

fn main() -> ExitCode {
    // Reserved: evaluation is sequential at desk scale; the variable is
    // accepted for forward compatibility with parallel grid evaluation.
    let _workers = std::env::var("HOLANT_WORKERS").ok();
    let cli = Cli::parse();
    let started = Instant::now();
    match run(&cli) {
        Ok((mut report, distinguished)) => {
            if cli.timing {
                report.timing_ms = Some(started.elapsed().as_millis());
            }
            println!("{}", report.to_json_string());
            if distinguished {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn apply_backend(sigs: Vec<Signature>, flags: &BackendFlags) -> Result<Vec<Signature>, String> {
    if flags.exact {
        if let Some(i) = sigs.iter().position(|s| !s.is_exact()) {
            return Err(format!("--exact requested but signature {i} carries float values"));
        }
        return Ok(sigs);
    }
    if flags.float {
        return Ok(sigs.iter().map(Signature::to_float).collect());
    }
    Ok(sigs)
}

fn backend_of(sigs: &[Signature]) -> Backend {
    if sigs.iter().all(Signature::is_exact) {
        Backend::Exact
    } else {
        Backend::Float
    }
}

fn run(cli: &Cli) -> Result<(RunReport, bool), String> {
    match &cli.command {
        Command::Eval { grid, backend } => cmd_eval(grid, backend),
        Command::Matrix { gadget, m, d, backend } => cmd_matrix(gadget, *m, *d, backend),
        Command::Indist { pair, bipartite, max_v, max_deg, variant, max_len } => {
            cmd_indist(pair, bipartite.as_deref(), *max_v, *max_deg, variant.as_deref(), *max_len)
        }
        Command::Hom { k, x } => cmd_hom(k, x),
        Command::Odeco { cmd } => match cmd {
            OdecoCmd::Check { set, tol } => cmd_odeco_check(set, *tol),
            OdecoCmd::Decompose { set, tol } => cmd_odeco_decompose(set, *tol),
        },
        Command::Ortho { cmd } => match cmd {
            OrthoCmd::Verify { pair, h, tol } => cmd_ortho_verify(pair, h, *tol),
            OrthoCmd::Search { pair, restarts, iters, seed, tol } => {
                cmd_ortho_search(pair, *restarts, *iters, *seed, *tol)
            }
        },
        Command::Span { set, m, d, max_v, max_deg } => cmd_span(set, *m, *d, *max_v, *max_deg),
    }
}

fn rebuild_gadget(g: &holant::Gadget, sigs: Vec<Signature>) -> Result<holant::Gadget, String> {
    holant::Gadget::new(
        g.q(),
        sigs,
        g.vertices().to_vec(),
        g.pairs().to_vec(),
        g.loops(),
        g.m(),
        g.d(),
    )
    .map_err(|e| e.to_string())
}

fn cmd_eval(path: &Path, flags: &BackendFlags) -> Result<(RunReport, bool), String> {
    let grid = json::parse_grid(path).map_err(|e| e.to_string())?;
    let sigs = apply_backend(grid.gadget().sig_table().to_vec(), flags)?;
    let gadget = rebuild_gadget(grid.gadget(), sigs)?;
    let grid = holant::SignatureGrid::new(gadget).map_err(|e| e.to_string())?;
    let value = grid.holant();
    let mut report = RunReport::new("eval", value.backend())
        .with_input(path)
        .map_err(|e| e.to_string())?;
    report.verdict = serde_json::json!({ "holant": value });
    eprintln!("holant value: {value}");
    Ok((report, false))
}

fn cmd_matrix(
    path: &Path,
    m: Option<usize>,
    d: Option<usize>,
    flags: &BackendFlags,
) -> Result<(RunReport, bool), String> {
    let parsed = json::parse_gadget(path).map_err(|e| e.to_string())?;
    let sigs = apply_backend(parsed.sig_table().to_vec(), flags)?;
    let gadget = rebuild_gadget(&parsed, sigs)?;
    let gadget = match (m, d) {
        (None, None) => gadget,
        (m, d) => {
            let arity = gadget.arity();
            let target_m = match (m, d) {
                (Some(m), _) => m,
                (None, Some(d)) => arity.checked_sub(d).ok_or("d exceeds the gadget arity")?,
                (None, None) => unreachable!(),
            };
            if let (Some(m), Some(d)) = (m, d) {
                if m + d != arity {
                    return Err(format!("m + d = {} does not match the gadget arity {arity}", m + d));
                }
            }
            if target_m > arity {
                return Err(format!("requested m = {target_m} exceeds the gadget arity {arity}"));
            }
            let shift = gadget.m() as i64 - target_m as i64;
            gadget.pivot(shift).map_err(|e| e.to_string())?
        }
    };
    let flat = gadget.matrix();
    let backend = if flat.mat().is_exact() { Backend::Exact } else { Backend::Float };
    let mut report = RunReport::new("matrix", backend)
        .with_input(path)
        .map_err(|e| e.to_string())?;
    report.verdict = serde_json::json!({
        "m": flat.m(),
        "d": flat.d(),
        "matrix": json::mat_to_json(flat.mat()),
    });
    eprintln!(
        "{}x{} signature matrix (m={}, d={})",
        flat.mat().rows(),
        flat.mat().cols(),
        flat.m(),
        flat.d()
    );
    eprint!("{}", flat.mat());
    Ok((report, false))
}

fn verdict_json(verdict: &indist::IndistVerdict) -> serde_json::Value {
    match &verdict.witness {
        None => serde_json::json!({
            "outcome": "no_counterexample_within_budget",
            "numerical": verdict.numerical,
        }),
        Some(w) => serde_json::json!({
            "outcome": "distinguished",
            "numerical": verdict.numerical,
            "witness": json::witness_to_json(w),
        }),
    }
}

fn cmd_indist(
    pair_path: &Path,
    bipartite: Option<&Path>,
    max_v: usize,
    max_deg: usize,
    variant: Option<&str>,
    max_len: usize,
) -> Result<(RunReport, bool), String> {
    let pair = json::parse_pair(pair_path).map_err(|e| e.to_string())?;
    let budget = GridBudget {
        max_vertices: max_v,
        max_total_degree: max_deg,
        allow_vertexless_loops: false,
        bipartite: None,
    };
    let mut report = RunReport::new("indist", backend_of(&pair.left))
        .with_input(pair_path)
        .map_err(|e| e.to_string())?;
    let verdict = match (bipartite, variant) {
        (Some(right_path), None) => {
            let right_pair = json::parse_pair(right_path).map_err(|e| e.to_string())?;
            report = report.with_input(right_path).map_err(|e| e.to_string())?;
            indist::bipartite_indist(&pair, &right_pair, &budget)
        }
        (None, None) => indist::holant_indist(&pair, &budget),
        (None, Some(v)) => match v {
            "csp" => indist::csp_indist(&pair, &budget, CspVariant::All)
                .map_err(|e| e.to_string())?,
            "csp2" => indist::csp_indist(&pair, &budget, CspVariant::EvenDegree)
                .map_err(|e| e.to_string())?,
            "cycles" => indist::csp_indist(&pair, &budget, CspVariant::Cycles)
                .map_err(|e| e.to_string())?,
            "paths" => indist::csp_indist(&pair, &budget, CspVariant::Paths)
                .map_err(|e| e.to_string())?,
            "trace" => indist::trace_indist(&pair, max_len).map_err(|e| e.to_string())?,
            other => return Err(format!("unknown variant {other:?}")),
        },
        (Some(_), Some(_)) => {
            return Err("--bipartite and --variant are mutually exclusive".into())
        }
    };
    report.verdict = verdict_json(&verdict);
    let distinguished = verdict.distinguished();
    match &verdict.witness {
        Some(w) => eprintln!(
            "distinguished: witness grid evaluates to {} vs {}",
            w.left_value, w.right_value
        ),
        None => eprintln!("no counterexample within budget (max_v={max_v}, max_deg={max_deg})"),
    }
    Ok((report, distinguished))
}

fn cmd_hom(k_path: &Path, x_path: &Path) -> Result<(RunReport, bool), String> {
    let k = json::parse_graph(k_path).map_err(|e| e.to_string())?;
    let x = json::parse_weighted_graph(x_path).map_err(|e| e.to_string())?;
    let brute = holant::homs::hom_count(&k, &x);
    let via_grid = holant::homs::hom_grid(&k, &x).holant();
    if brute != via_grid {
        return Err(format!(
            "internal disagreement: brute force {brute} vs grid evaluation {via_grid}"
        ));
    }
    let mut report = RunReport::new("hom", brute.backend())
        .with_input(k_path)
        .and_then(|r| r.with_input(x_path))
        .map_err(|e| e.to_string())?;
    report.verdict = serde_json::json!({ "homomorphisms": brute });
    eprintln!("hom(K, X) = {brute}");
    Ok((report, false))
}

fn cmd_odeco_check(path: &Path, tol: f64) -> Result<(RunReport, bool), String> {
    let (_, set) = json::parse_set(path).map_err(|e| e.to_string())?;
    let ok = odeco::pairwise_star_symmetric(&set, tol).map_err(|e| e.to_string())?;
    let mut report = RunReport::new("odeco check", backend_of(&set))
        .with_input(path)
        .map_err(|e| e.to_string())?;
    report.verdict = serde_json::json!({ "pairwise_star_symmetric": ok });
    eprintln!(
        "pairwise star symmetry: {}",
        if ok { "holds (odeco)" } else { "violated (not odeco)" }
    );
    Ok((report, !ok))
}

fn cmd_odeco_decompose(path: &Path, tol: f64) -> Result<(RunReport, bool), String> {
    let (_, set) = json::parse_set(path).map_err(|e| e.to_string())?;
    let mut report = RunReport::new("odeco decompose", backend_of(&set))
        .with_input(path)
        .map_err(|e| e.to_string())?;
    match odeco::odeco_decompose(&set, tol) {
        Ok(cert) => {
            report.verdict = serde_json::json!({
                "decomposed": true,
                "h": json::mat_to_json(cert.h.mat()),
                "weights": cert.weights,
                "residual": cert.residual,
                "unaries_only": cert.unaries_only,
            });
            eprintln!("decomposed with residual {:.3e}", cert.residual);
            Ok((report, false))
        }
        Err(err) => {
            report.verdict = serde_json::json!({
                "decomposed": false,
                "stage": err.to_string(),
            });
            eprintln!("not odeco: {err}");
            Ok((report, true))
        }
    }
}

fn cmd_ortho_verify(
    pair_path: &Path,
    h_path: &Path,
    tol: f64,
) -> Result<(RunReport, bool), String> {
    let pair = json::parse_pair(pair_path).map_err(|e| e.to_string())?;
    let h = json::parse_matrix(h_path).map_err(|e| e.to_string())?;
    let mut report = RunReport::new("ortho verify", backend_of(&pair.left))
        .with_input(pair_path)
        .and_then(|r| r.with_input(h_path))
        .map_err(|e| e.to_string())?;
    match ortho::verify(&pair, &h, tol) {
        Ok(cert) => {
            report.verdict = serde_json::json!({
                "accepted": true,
                "residuals": cert.residuals,
            });
            eprintln!("accepted: max residual {:.3e}", cert.max_residual());
            Ok((report, false))
        }
        Err(rej) => {
            report.verdict = serde_json::json!({
                "accepted": false,
                "reason": rej.to_string(),
            });
            eprintln!("rejected: {rej}");
            Ok((report, true))
        }
    }
}

fn cmd_ortho_search(
    pair_path: &Path,
    restarts: usize,
    iters: usize,
    seed: u64,
    tol: f64,
) -> Result<(RunReport, bool), String> {
    let pair = json::parse_pair(pair_path).map_err(|e| e.to_string())?;
    let opts = SearchOptions {
        tol,
        restarts,
        iters,
        seed,
        span_budget: GadgetBudget { max_vertices: 2, max_total_degree: 8, max_dangling: 2 },
    };
    let mut report = RunReport::new("ortho search", backend_of(&pair.left))
        .with_input(pair_path)
        .map_err(|e| e.to_string())?;
    report.seed = Some(seed);
    match ortho::search(&pair, &opts) {
        Some(cert) => {
            report.verdict = serde_json::json!({
                "found": true,
                "method": cert.method,
                "h": json::mat_to_json(cert.h.mat()),
                "residuals": cert.residuals,
            });
            eprintln!("found via {:?}: max residual {:.3e}", cert.method, cert.max_residual());
            Ok((report, false))
        }
        None => {
            report.verdict = serde_json::json!({ "found": false });
            eprintln!("no certificate found (restarts={restarts}, iters={iters})");
            Ok((report, true))
        }
    }
}

fn cmd_span(
    path: &Path,
    m: usize,
    d: usize,
    max_v: usize,
    max_deg: usize,
) -> Result<(RunReport, bool), String> {
    let (q, set) = json::parse_set(path).map_err(|e| e.to_string())?;
    let budget =
        GadgetBudget { max_vertices: max_v, max_total_degree: max_deg, max_dangling: m + d };
    let span = ortho::gadget_span(&set, q, m, d, &budget);
    let mut report =
        RunReport::new("span", if span.exact { Backend::Exact } else { Backend::Float })
            .with_input(path)
            .map_err(|e| e.to_string())?;
    report.verdict = serde_json::json!({
        "dimension": span.dim(),
        "basis": span.basis.iter().map(json::mat_to_json).collect::<Vec<_>>(),
    });
    eprintln!("span of ({m},{d})-gadget matrices: dimension {}", span.dim());
    Ok((report, false))
}
