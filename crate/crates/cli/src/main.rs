//! Command-line driver: constructions, decomposability checks,
//! diameters, bound reports, corank audits, hitting-set extraction,
//! and a one-shot reproduction report.
//!
//! Exit codes: 0 success (and "decomposable" for `check decomp`),
//! 1 usage, 2 invalid input data, 3 exhausted-not-decomposable,
//! 4 internal assertion failure, 5 state budget exhausted with the
//! verdict unknown.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use polydec_core::complex::{ComplexError, Face, SimplicialComplex};
use polydec_core::decomp::{
    find_strong_decomposition, find_weak_decomposition, verify_certificate, DecompError, Mode,
    PairSymmetry, SearchOptions, SearchStatus, SearchVerdict,
};
use polydec_core::delta::{
    cross_validate, delta_complex, delta_complex_via_polar, delta_margins, DeltaComplex,
    DeltaError,
};
use polydec_core::diameter::{bound_report, BoundKind, DiameterError, FacetRidgeGraph};
use polydec_core::obstruction::{
    audit_phi_properties, audit_shedding_sequence, minimal_empty_intersection,
    parse_sequence_json, ObstructionError, SetCollection, TheoremAuditOptions,
    TheoremAuditOutcome,
};
use polydec_core::transport::{
    balinski_margins, enumerate_facets, enumerate_vertices, parse_rational, DegreeVector, Margins,
    TransportError,
};

const EXIT_USAGE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_NOT_DECOMPOSABLE: u8 = 3;
const EXIT_INTERNAL: u8 = 4;
const EXIT_BUDGET: u8 = 5;

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn internal(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INTERNAL,
            message: message.into(),
        }
    }
}

impl From<DeltaError> for CliError {
    fn from(e: DeltaError) -> Self {
        CliError::input(e.to_string())
    }
}

impl From<ComplexError> for CliError {
    fn from(e: ComplexError) -> Self {
        CliError::input(e.to_string())
    }
}

impl From<DecompError> for CliError {
    fn from(e: DecompError) -> Self {
        CliError::input(e.to_string())
    }
}

impl From<TransportError> for CliError {
    fn from(e: TransportError) -> Self {
        match e {
            TransportError::SimplicityAssertion { .. } => CliError::internal(e.to_string()),
            _ => CliError::input(e.to_string()),
        }
    }
}

impl From<DiameterError> for CliError {
    fn from(e: DiameterError) -> Self {
        match e {
            DiameterError::Disconnected { .. } => CliError::internal(e.to_string()),
            _ => CliError::input(e.to_string()),
        }
    }
}

impl From<ObstructionError> for CliError {
    fn from(e: ObstructionError) -> Self {
        match e {
            ObstructionError::InternalAssertion(_) => CliError::internal(e.to_string()),
            _ => CliError::input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::input(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "polydec",
    version,
    about = "Transportation-polytope polar complexes, decomposability search, and diameter bounds"
)]
struct Cli {
    /// Worker threads for diameter computations; defaults to the
    /// POLYDEC_THREADS environment variable, then 1.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build complexes or transportation polytopes
    Construct {
        #[command(subcommand)]
        what: ConstructCommand,
    },
    /// Decide decomposability properties
    Check {
        #[command(subcommand)]
        what: CheckCommand,
    },
    /// Exact facet-ridge diameter
    Diameter {
        #[command(flatten)]
        source: ComplexSource,
        /// Write the facet-ridge graph in DOT format here
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Diameter bound reports (Hirsch, Provan-Billera, Brightwell et al.)
    Bounds {
        /// Face dimension for the Provan-Billera bounds
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        source: ComplexSource,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay audits over shedding sequences
    Audit {
        #[command(subcommand)]
        what: AuditCommand,
    },
    /// Minimal empty-intersection sub-collection of a set family
    HittingSet {
        /// Sets have at most k+1 elements
        #[arg(long)]
        k: usize,
        /// Inline JSON array of arrays, e.g. '[[1,3],[2,4]]'
        #[arg(long)]
        collection: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One-shot reproduction report for delta(a,b)
    Report {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        /// Run weak decomposability searches for every k up to this
        #[arg(long)]
        kmax: usize,
        /// State budget per decomposability search
        #[arg(long, default_value_t = 100_000)]
        max_states: u64,
        /// Artifact directory
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum ConstructCommand {
    /// The complex delta(a,b), directly and/or as a transportation polar
    Delta {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long, value_enum, default_value_t = Route::Lemma)]
        via: Route,
        /// Write the complex JSON here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the facet-ridge graph in DOT format here
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// A transportation polytope from explicit margins
    Transportation {
        /// Comma-separated row margins (integers or p/q)
        #[arg(long, conflicts_with = "balinski")]
        row: Option<String>,
        /// Comma-separated column margins
        #[arg(long, conflicts_with = "balinski")]
        col: Option<String>,
        /// Margins JSON file ({"row": [...], "col": [...]})
        #[arg(long, conflicts_with_all = ["row", "col", "balinski"])]
        margins: Option<PathBuf>,
        /// Generate margins from a comma-separated degree vector
        /// (m*d - (m+1) rows against all-m columns)
        #[arg(long, requires = "cols")]
        balinski: Option<String>,
        /// Column count for --balinski
        #[arg(long)]
        cols: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Route {
    Lemma,
    Polar,
    Both,
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Strong or weak k-decomposability by certified exhaustive search
    Decomp {
        /// Weak mode (deletion condition only)
        #[arg(long, conflicts_with = "strong")]
        weak: bool,
        /// Strong mode (deletion and link conditions)
        #[arg(long)]
        strong: bool,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        source: ComplexSource,
        /// Abort with exit code 5 after this many states
        #[arg(long)]
        max_states: Option<u64>,
        /// Collapse states under the delta(a,b) pair symmetry
        /// (weak k=0 with --a/--b only; never changes verdicts)
        #[arg(long)]
        symmetry: bool,
        /// Write the verdict JSON (certificate included) here
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum AuditCommand {
    /// Corank properties along a legal shedding prefix of delta(a,b)
    Phi {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        /// Sequence JSON file: {"faces": [["u1"], ...]}
        #[arg(long)]
        sequence: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Obstruction replay of a candidate shedding sequence on delta(a,b)
    Theorem {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        sequence: PathBuf,
        /// Cross-check the lazy corank tracking against the full domain
        #[arg(long)]
        full_domain: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A complex given either as a JSON file or as delta parameters.
#[derive(Args)]
struct ComplexSource {
    /// Complex JSON file ({"vertex_count": .., "facets": [[..]]})
    #[arg(long, conflicts_with_all = ["a", "b"])]
    input: Option<PathBuf>,
    /// Build delta(a,b) instead of reading a file
    #[arg(long, requires = "b")]
    a: Option<usize>,
    #[arg(long, requires = "a")]
    b: Option<usize>,
}

struct LoadedComplex {
    complex: SimplicialComplex,
    labels: Option<Vec<String>>,
    delta: Option<DeltaComplex>,
}

impl ComplexSource {
    fn load(&self) -> Result<LoadedComplex, CliError> {
        match (&self.input, self.a, self.b) {
            (Some(path), _, _) => {
                let text = std::fs::read_to_string(path)?;
                let (complex, labels) = SimplicialComplex::from_json(&text)?;
                Ok(LoadedComplex {
                    complex,
                    labels,
                    delta: None,
                })
            }
            (None, Some(a), Some(b)) => {
                let delta = delta_complex(a, b)?;
                Ok(LoadedComplex {
                    complex: delta.complex.clone(),
                    labels: Some(delta.labeling.labels()),
                    delta: Some(delta),
                })
            }
            _ => Err(CliError {
                code: EXIT_USAGE,
                message: "supply either --input FILE or --a A --b B".into(),
            }),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints help/version on stdout with success
            if e.use_stderr() {
                eprintln!("{e}");
                return ExitCode::from(EXIT_USAGE);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    let threads = cli
        .threads
        .or_else(|| {
            std::env::var("POLYDEC_THREADS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(1)
        .max(1);
    match run(cli.command, threads) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn write_or_print(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => {
            if let Some(parent) = path.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent)?;
                }
            }
            std::fs::write(path, content)?;
            Ok(())
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn json_line(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialization");
    s.push('\n');
    s
}

fn parse_rational_list(s: &str) -> Result<Vec<polydec_core::transport::Rational>, CliError> {
    s.split(',')
        .map(|item| parse_rational(item).map_err(CliError::from))
        .collect()
}

fn run(command: Command, threads: usize) -> Result<u8, CliError> {
    match command {
        Command::Construct { what } => construct(what),
        Command::Check { what } => check(what),
        Command::Diameter { source, dot } => diameter_cmd(source, dot, threads),
        Command::Bounds { k, source, out } => bounds_cmd(k, source, out, threads),
        Command::Audit { what } => audit(what),
        Command::HittingSet {
            k,
            collection,
            out,
        } => hitting_set(k, &collection, out),
        Command::Report {
            a,
            b,
            kmax,
            max_states,
            out,
        } => report(a, b, kmax, max_states, &out, threads),
    }
}

fn construct(what: ConstructCommand) -> Result<u8, CliError> {
    match what {
        ConstructCommand::Delta { a, b, via, out, dot } => {
            let delta = match via {
                Route::Lemma => delta_complex(a, b)?,
                Route::Polar => delta_complex_via_polar(a, b)?,
                Route::Both => {
                    let direct = delta_complex(a, b)?;
                    let polar = delta_complex_via_polar(a, b)?;
                    if direct.complex != polar.complex {
                        return Err(CliError::internal(format!(
                            "construction routes disagree at ({a},{b})"
                        )));
                    }
                    eprintln!(
                        "both routes agree: {} facets on {} vertices",
                        direct.complex.facet_count(),
                        direct.complex.vertex_count()
                    );
                    direct
                }
            };
            if let Some(dot_path) = dot {
                let graph = FacetRidgeGraph::build(&delta.complex)?;
                std::fs::write(&dot_path, graph.to_dot(Some(&delta.labeling.labels())))?;
            }
            write_or_print(&out, &delta.to_json())?;
            if out.is_some() {
                println!(
                    "delta({a},{b}): {} vertices, {} facets, dimension {}",
                    delta.complex.vertex_count(),
                    delta.complex.facet_count(),
                    delta.complex.dimension().unwrap()
                );
            }
            Ok(0)
        }
        ConstructCommand::Transportation {
            row,
            col,
            margins,
            balinski,
            cols,
            out,
        } => {
            let margins = match (row, col, margins, balinski, cols) {
                (Some(row), Some(col), None, None, _) => {
                    Margins::new(parse_rational_list(&row)?, parse_rational_list(&col)?)?
                }
                (None, None, Some(path), None, _) => {
                    Margins::from_json(&std::fs::read_to_string(&path)?)?
                }
                (None, None, None, Some(degrees), Some(n)) => {
                    let degrees: Vec<usize> = degrees
                        .split(',')
                        .map(|d| {
                            d.trim()
                                .parse::<usize>()
                                .map_err(|_| CliError::input(format!("bad degree {d:?}")))
                        })
                        .collect::<Result<_, _>>()?;
                    balinski_margins(&DegreeVector::new(degrees)?, n)?
                }
                _ => {
                    return Err(CliError {
                        code: EXIT_USAGE,
                        message: "supply --row and --col, --margins FILE, or --balinski with --cols"
                            .into(),
                    })
                }
            };
            let feasible = margins.is_feasible();
            let degeneracy = margins.degeneracy_witness();
            let mut doc = serde_json::json!({
                "margins": serde_json::from_str::<serde_json::Value>(&margins.to_json()).unwrap(),
                "feasible": feasible,
                "nondegenerate": feasible && degeneracy.is_none(),
            });
            if let Some((rows, cols)) = &degeneracy {
                doc["degeneracy_witness"] = serde_json::json!({ "rows": rows, "cols": cols });
            }
            if feasible && degeneracy.is_none() {
                let vertices = enumerate_vertices(&margins)?;
                let facets = enumerate_facets(&margins)?;
                doc["vertex_count"] = serde_json::json!(vertices.len());
                doc["vertices"] = serde_json::json!(vertices
                    .iter()
                    .map(|v| v.to_string_matrix())
                    .collect::<Vec<_>>());
                doc["facets"] = serde_json::json!(facets
                    .iter()
                    .map(|&(mu, nu)| vec![mu, nu])
                    .collect::<Vec<_>>());
            }
            write_or_print(&out, &json_line(&doc))?;
            if out.is_some() {
                println!(
                    "transportation polytope: feasible={feasible}, nondegenerate={}",
                    feasible && degeneracy.is_none()
                );
            }
            Ok(0)
        }
    }
}

fn verdict_json(verdict: &SearchVerdict) -> serde_json::Value {
    verdict.to_json_value()
}

fn check(what: CheckCommand) -> Result<u8, CliError> {
    match what {
        CheckCommand::Decomp {
            weak,
            strong,
            k,
            source,
            max_states,
            symmetry,
            out,
        } => {
            if weak == strong {
                return Err(CliError {
                    code: EXIT_USAGE,
                    message: "choose exactly one of --weak or --strong".into(),
                });
            }
            let loaded = source.load()?;
            let mut opts = SearchOptions {
                max_states,
                ..SearchOptions::default()
            };
            if symmetry {
                let delta = loaded.delta.as_ref().ok_or_else(|| {
                    CliError::input("--symmetry needs the delta parameters (--a/--b)")
                })?;
                opts.symmetry = Some(PairSymmetry::for_delta(delta));
            }
            let verdict = if weak {
                find_weak_decomposition(&loaded.complex, k, &opts)?
            } else {
                find_strong_decomposition(&loaded.complex, k, &opts)?
            };
            if let Some(cert) = &verdict.certificate {
                verify_certificate(&loaded.complex, cert)
                    .map_err(|e| CliError::internal(format!("certificate replay failed: {e}")))?;
            }
            write_or_print(&out, &json_line(&verdict_json(&verdict)))?;
            let mode = if weak { Mode::Weak } else { Mode::Strong };
            match verdict.status {
                SearchStatus::Decomposable => {
                    eprintln!(
                        "{mode} {k}-decomposable: {}-step certificate, {} states explored",
                        verdict.certificate.as_ref().map_or(0, |c| c.steps.len()),
                        verdict.states_explored
                    );
                    Ok(0)
                }
                SearchStatus::NotDecomposable => {
                    eprintln!(
                        "not {mode} {k}-decomposable: exhausted {} states ({} memo hits)",
                        verdict.states_explored, verdict.memo_hits
                    );
                    Ok(EXIT_NOT_DECOMPOSABLE)
                }
                SearchStatus::BudgetExhausted => {
                    eprintln!(
                        "verdict unknown: state budget exhausted after {} states",
                        verdict.states_explored
                    );
                    Ok(EXIT_BUDGET)
                }
            }
        }
    }
}

fn diameter_cmd(
    source: ComplexSource,
    dot: Option<PathBuf>,
    threads: usize,
) -> Result<u8, CliError> {
    let loaded = source.load()?;
    let graph = FacetRidgeGraph::build(&loaded.complex)?;
    if let Some(path) = dot {
        std::fs::write(&path, graph.to_dot(loaded.labels.as_deref()))?;
    }
    let diam = graph.diameter_with_threads(threads)?;
    println!("{diam}");
    Ok(0)
}

fn bounds_cmd(
    k: usize,
    source: ComplexSource,
    out: Option<PathBuf>,
    threads: usize,
) -> Result<u8, CliError> {
    let loaded = source.load()?;
    let graph = FacetRidgeGraph::build(&loaded.complex)?;
    let diam = graph.diameter_with_threads(threads)?;
    let mut kinds = vec![
        BoundKind::ProvanBilleraStrong { k },
        BoundKind::ProvanBilleraWeak { k },
    ];
    if let Some(delta) = &loaded.delta {
        kinds.push(delta.hirsch_bound());
        kinds.push(delta.brightwell_bound());
    }
    let mut reports = Vec::new();
    for kind in kinds {
        reports.push(bound_report(&loaded.complex, kind)?);
    }
    let doc = serde_json::json!({
        "diameter": diam,
        "bounds": reports,
    });
    write_or_print(&out, &json_line(&doc))?;
    if out.is_some() {
        for r in &reports {
            println!(
                "{:?}: diameter {} <= {} is {}",
                r.kind, r.diameter, r.bound_value, r.satisfied
            );
        }
    }
    Ok(0)
}

fn audit(what: AuditCommand) -> Result<u8, CliError> {
    match what {
        AuditCommand::Phi {
            a,
            b,
            sequence,
            out,
        } => {
            let delta = delta_complex(a, b)?;
            let text = std::fs::read_to_string(&sequence)?;
            let faces = parse_sequence_json(&text, &delta.labeling)?;
            let report = audit_phi_properties(&delta, &faces)?;
            write_or_print(&out, &json_line(&serde_json::to_value(&report).unwrap()))?;
            if out.is_some() {
                println!(
                    "phi audit over {} steps and {} domain sets: {}",
                    report.steps,
                    report.domain_sets,
                    if report.passed() { "all properties hold" } else { "violations found" }
                );
            }
            Ok(if report.passed() { 0 } else { EXIT_INTERNAL })
        }
        AuditCommand::Theorem {
            a,
            b,
            k,
            sequence,
            full_domain,
            out,
        } => {
            let delta = delta_complex(a, b)?;
            let text = std::fs::read_to_string(&sequence)?;
            let faces = parse_sequence_json(&text, &delta.labeling)?;
            let outcome =
                audit_shedding_sequence(a, b, k, &faces, &TheoremAuditOptions { full_domain })?;
            write_or_print(&out, &json_line(&serde_json::to_value(&outcome).unwrap()))?;
            if out.is_some() {
                match &outcome {
                    TheoremAuditOutcome::Witness(w) => println!(
                        "obstruction witness at step {}: {}",
                        w.fail_step, w.violation
                    ),
                    TheoremAuditOutcome::ValidSoFar { phi_frontier, .. } => println!(
                        "valid so far; {} tracked corank values all <= 1",
                        phi_frontier.len()
                    ),
                }
            }
            Ok(0)
        }
    }
}

fn hitting_set(k: usize, collection: &str, out: Option<PathBuf>) -> Result<u8, CliError> {
    let sets: Vec<Vec<u32>> = serde_json::from_str(collection)
        .map_err(|e| CliError::input(format!("collection must be an array of arrays: {e}")))?;
    let collection = SetCollection::from_vecs(sets, k)?;
    let extraction = minimal_empty_intersection(&collection)?;
    let doc = serde_json::json!({
        "k": k,
        "kept_indices": extraction.kept,
        "kept_sets": extraction
            .kept
            .iter()
            .map(|&i| collection.sets()[i].iter().copied().collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "witnesses": extraction.witnesses,
        "union": extraction.union.iter().copied().collect::<Vec<_>>(),
        "union_size": extraction.union.len(),
        "union_bound_4x": (k + 3) * (k + 3),
    });
    write_or_print(&out, &json_line(&doc))?;
    if out.is_some() {
        println!(
            "minimal sub-collection keeps {} of {} sets, union size {}",
            extraction.kept.len(),
            collection.sets().len(),
            extraction.union.len()
        );
    }
    Ok(0)
}

fn report(
    a: usize,
    b: usize,
    kmax: usize,
    max_states: u64,
    out_dir: &Path,
    threads: usize,
) -> Result<u8, CliError> {
    std::fs::create_dir_all(out_dir)?;
    let started = Instant::now();
    let mut artifacts: Vec<(String, PathBuf)> = Vec::new();
    let mut summary = String::new();
    let write_artifact = |name: &str, content: &str| -> Result<PathBuf, CliError> {
        let path = out_dir.join(name);
        std::fs::write(&path, content)?;
        Ok(path)
    };

    // construction, both routes
    let delta = delta_complex(a, b)?;
    let cv = cross_validate(a, b)?;
    if !cv.passed() {
        return Err(CliError::internal(format!(
            "construction routes disagree: {cv:?}"
        )));
    }
    let complex_path = write_artifact(&format!("delta-{a}-{b}.json"), &delta.to_json())?;
    artifacts.push(("complex".into(), complex_path));
    let margins = delta_margins(a, b)?;
    let margins_path = write_artifact(&format!("margins-{a}-{b}.json"), &margins.to_json())?;
    artifacts.push(("margins".into(), margins_path));
    let _ = writeln!(
        summary,
        "delta({a},{b}): {} vertices, {} facets (both construction routes agree; formula {})",
        delta.complex.vertex_count(),
        delta.complex.facet_count(),
        cv.formula_count
    );

    // diameter and polytopal bounds
    let graph = FacetRidgeGraph::build(&delta.complex)?;
    let diam = graph.diameter_with_threads(threads)?;
    let hirsch = bound_report(&delta.complex, delta.hirsch_bound())?;
    let brightwell = bound_report(&delta.complex, delta.brightwell_bound())?;
    if !hirsch.satisfied || !brightwell.satisfied {
        return Err(CliError::internal(format!(
            "a polytopal diameter bound failed: {hirsch:?} {brightwell:?}"
        )));
    }
    let bounds_doc = serde_json::json!({ "diameter": diam, "bounds": [hirsch, brightwell] });
    let bounds_path = write_artifact("bounds.json", &json_line(&bounds_doc))?;
    artifacts.push(("bounds".into(), bounds_path));
    let _ = writeln!(
        summary,
        "diameter {diam} <= Hirsch bound {} (and Brightwell-et-al. bound {})",
        hirsch.bound_value, brightwell.bound_value
    );

    // decomposability for k = 0..=kmax under the state budget
    let mut verdict_values = Vec::new();
    for k in 0..=kmax {
        let opts = SearchOptions {
            max_states: Some(max_states),
            collect_dead_ends: k == 0,
            ..SearchOptions::default()
        };
        let verdict = find_weak_decomposition(&delta.complex, k, &opts)?;
        if let Some(cert) = &verdict.certificate {
            verify_certificate(&delta.complex, cert)
                .map_err(|e| CliError::internal(format!("certificate replay failed: {e}")))?;
        }
        let path = write_artifact(
            &format!("weak-decomp-k{k}.json"),
            &json_line(&verdict_json(&verdict)),
        )?;
        artifacts.push((format!("weak_decomposition_k{k}"), path));
        let text = match verdict.status {
            SearchStatus::Decomposable => "decomposable".to_string(),
            SearchStatus::NotDecomposable => {
                format!("not decomposable ({} states exhausted)", verdict.states_explored)
            }
            SearchStatus::BudgetExhausted => {
                format!("unknown (budget of {max_states} states exhausted)")
            }
        };
        let _ = writeln!(summary, "weak k={k}: {text}");

        // explain the k=0 failure via the obstruction machinery when
        // the size precondition holds
        if k == 0
            && verdict.status == SearchStatus::NotDecomposable
            && (3usize).pow(2) <= 4 * a.min(b)
        {
            if let Some(prefix) = verdict.dead_end_prefixes.first() {
                let mut cur = delta.complex.clone();
                for &tau in prefix {
                    cur = cur.deletion(tau)?;
                }
                let target = cur.facets()[0];
                let mut seq = prefix.clone();
                for v in cur.vertex_support().minus(target).vertices() {
                    seq.push(Face::of([v.index()]));
                }
                let outcome =
                    audit_shedding_sequence(a, b, 0, &seq, &TheoremAuditOptions::default())?;
                let path = write_artifact(
                    "theorem-witness-k0.json",
                    &json_line(&serde_json::to_value(&outcome).unwrap()),
                )?;
                artifacts.push(("theorem_witness_k0".into(), path));
                if let TheoremAuditOutcome::Witness(w) = &outcome {
                    let _ = writeln!(
                        summary,
                        "obstruction witness: corank 2 at step {} of a completed dead-end prefix",
                        w.fail_step
                    );
                }
            }
        }
        verdict_values.push(serde_json::json!({
            "k": k,
            "status": verdict.status,
            "states_explored": verdict.states_explored,
        }));
    }

    // corank property audit (empty prefix: base properties over the
    // full domain)
    let phi_report = audit_phi_properties(&delta, &[])?;
    if !phi_report.passed() {
        return Err(CliError::internal(
            "corank base property audit reported violations",
        ));
    }
    let phi_path = write_artifact(
        "phi-audit.json",
        &json_line(&serde_json::to_value(&phi_report).unwrap()),
    )?;
    artifacts.push(("phi_audit".into(), phi_path));
    let _ = writeln!(
        summary,
        "corank base audit: properties hold over {} domain sets",
        phi_report.domain_sets
    );

    let report_doc = serde_json::json!({
        "command": format!("report --a {a} --b {b} --kmax {kmax} --max-states {max_states}"),
        "inputs": { "a": a, "b": b, "kmax": kmax, "max_states": max_states },
        "verdicts": {
            "cross_validation": cv.passed(),
            "diameter": diam,
            "hirsch": hirsch,
            "brightwell": brightwell,
            "weak_decomposability": verdict_values,
            "phi_audit_passed": phi_report.passed(),
        },
        "timings": { "total_seconds": started.elapsed().as_secs_f64() },
        "artifacts": artifacts
            .iter()
            .map(|(name, path)| serde_json::json!({ "name": name, "path": path.display().to_string() }))
            .collect::<Vec<_>>(),
    });
    let report_path = out_dir.join("report.json");
    std::fs::write(&report_path, json_line(&report_doc))?;
    print!("{summary}");
    println!("report written to {}", report_path.display());
    Ok(0)
}
