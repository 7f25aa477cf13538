//! The `pmdecomp` command line.
//!
//! Every command produces a JSON document. `--json` prints it; otherwise a
//! short human summary is printed. `--out` writes the document to a file.
//! Exit codes: 0 success, 1 invalid input or failed verification, 2 usage
//! error, 3 an outcome that a theorem rules out.

use crate::decomposition::{
    band_bound_r, band_count_3, enumerate_bands_r, pm_decompose_complete_r, pmd_exact, pmd_formula,
    pmd_greedy, PmDecomposition, DEFAULT_PART_BUDGET,
};
use crate::hypergraph::{
    complete_uniform, grid_example, loose_cycle, random_good_forest, random_linear, Edge, Hypergraph,
    Matching, Vertex,
};
use crate::lss::{classify_good_forest_ideal, export_cas_script, lss_generators, Dialect};
use crate::oracle::{infeasibility_multipliers, synthesize_weights, WeightCertificate};
use crate::rational::to_fraction_string;
use crate::walks::{alternate_rooted_tree, find_regular_witness, positive_by_walks, RegularWitness, WalkWitness};
use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Parser)]
#[command(name = "pmdecomp", version, about = "Positive matching decompositions of uniform hypergraphs")]
struct Cli {
    /// Print machine-readable JSON instead of a summary.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized generators.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Also write the JSON document to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a hypergraph.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Decide whether a matching is positive, with a certificate either way.
    CheckPositive {
        #[arg(long = "in")]
        input: PathBuf,
        /// Edges as JSON (`[[1,2,3],..]`) or a file holding them.
        #[arg(long)]
        matching: String,
    },
    /// Walk-based analysis of a matching in a linear hypergraph.
    Walks {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        matching: String,
        /// Also grow the alternate rooted tree from this vertex.
        #[arg(long)]
        root: Option<Vertex>,
        #[arg(long, default_value_t = 100_000)]
        tree_budget: u64,
    },
    /// Certified band decomposition of a complete hypergraph.
    Decompose {
        /// Vertex count and edge size.
        #[arg(long, num_args = 2, value_names = ["N", "R"], required = true)]
        complete: Vec<u64>,
    },
    /// Positive matching decomposition number.
    #[command(group(clap::ArgGroup::new("method").required(true)))]
    Pmd {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, group = "method")]
        exact: bool,
        #[arg(long, group = "method")]
        greedy: bool,
        #[arg(long, group = "method")]
        formula: bool,
        /// Node budget for `--exact`.
        #[arg(long, default_value_t = DEFAULT_PART_BUDGET)]
        budget: u64,
    },
    /// LSS ideal generators, classification or export.
    Lss {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        d: u32,
        /// Emit a script for macaulay2, singular or cocoa5.
        #[arg(long)]
        dialect: Option<String>,
        /// Classify by the good-forest thresholds.
        #[arg(long)]
        classify: bool,
    },
    /// Replay a decomposition or a verification report.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Decompose complete hypergraphs over a range of sizes and check them.
    VerifyConjecture {
        #[arg(long)]
        n_from: u32,
        #[arg(long)]
        n_to: u32,
        #[arg(long, default_value_t = 3)]
        r: usize,
    },
}

#[derive(Debug, Subcommand)]
enum Family {
    Complete {
        #[arg(long)]
        n: Vertex,
        #[arg(long)]
        r: usize,
    },
    LooseCycle {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        m: usize,
    },
    /// The 3x3 grid of rows and columns on nine vertices.
    Grid,
    RandomLinear {
        #[arg(long)]
        n: Vertex,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 200)]
        attempts: usize,
    },
    GoodForest {
        #[arg(long)]
        edges: usize,
        #[arg(long)]
        r: usize,
    },
}

/// A check in a [`VerificationReport`], with the data needed to redo it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// The complete hypergraph `(n, r)` the evidence must decompose.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complete: Option<(Vertex, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_parts: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub part_bound: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evidence: Option<PmDecomposition>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub instance: String,
    pub checks: Vec<ReportCheck>,
    pub totals: Totals,
}

impl VerificationReport {
    fn new(instance: String, checks: Vec<ReportCheck>) -> Self {
        let passed = checks.iter().filter(|c| c.passed).count();
        VerificationReport {
            instance,
            totals: Totals {
                passed,
                failed: checks.len() - passed,
            },
            checks,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.totals.failed == 0
    }
}

/// Redoes a check from its embedded evidence alone.
pub fn recheck(c: &ReportCheck) -> Result<(), String> {
    let d = c.evidence.as_ref().ok_or("no evidence attached")?;
    if let Some((n, r)) = c.complete {
        let host = complete_uniform(n, r).map_err(|e| e.to_string())?;
        if *d.host() != host {
            return Err(format!("evidence host is not the complete {r}-uniform hypergraph on {n} vertices"));
        }
    }
    d.verify().map_err(|e| e.to_string())?;
    if let Some(p) = c.expected_parts {
        if d.count() as u64 != p {
            return Err(format!("{} parts, expected {p}", d.count()));
        }
    }
    if let Some(b) = c.part_bound {
        if d.count() as u64 > b {
            return Err(format!("{} parts exceed the bound {b}", d.count()));
        }
    }
    Ok(())
}

#[derive(Debug)]
enum CliError {
    Invalid(String),
    Contradiction(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 1,
            CliError::Contradiction(_) => 3,
        }
    }
}

fn invalid<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Invalid(e.to_string())
}

/// A command's result: the JSON document, a human summary and the exit
/// code to report after printing.
struct Outcome {
    doc: Value,
    human: String,
    code: i32,
}

impl Outcome {
    fn ok(doc: Value, human: String) -> Self {
        Outcome { doc, human, code: 0 }
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn read_matching(h: &Hypergraph, arg: &str) -> Result<Matching, CliError> {
    let text = if arg.trim_start().starts_with('[') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| invalid(format!("{arg}: {e}")))?
    };
    let lists: Vec<Vec<Vertex>> = serde_json::from_str(&text).map_err(|e| invalid(format!("matching: {e}")))?;
    Matching::from_lists(h, lists).map_err(invalid)
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("documents serialize")
}

fn describe_walk(w: &WalkWitness) -> String {
    w.steps()
        .iter()
        .enumerate()
        .map(|(i, s)| format!("{}-{}->{}", s.vertex, s.edge, w.exit(i)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn gen(family: &Family, seed: u64) -> Result<Outcome, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = match *family {
        Family::Complete { n, r } => complete_uniform(n, r),
        Family::LooseCycle { r, m } => loose_cycle(r, m),
        Family::Grid => Ok(grid_example()),
        Family::RandomLinear { n, r, attempts } => random_linear(n, r, attempts, &mut rng),
        Family::GoodForest { edges, r } => random_good_forest(edges, r, &mut rng),
    }
    .map_err(invalid)?;
    let human = format!("n={} r={} edges={}", h.n(), h.rank(), h.edge_count());
    Ok(Outcome::ok(to_value(&h), human))
}

#[derive(Serialize)]
struct PositivityDoc {
    positive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<WeightCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WalkWitness>,
    /// Nonnegative edge multipliers of the infeasible system.
    #[serde(skip_serializing_if = "Option::is_none")]
    multipliers: Option<Vec<(Edge, String)>>,
    walk_search: String,
}

fn check_positive(input: &Path, matching: &str) -> Result<Outcome, CliError> {
    let h: Hypergraph = read_json(input)?;
    let m = read_matching(&h, matching)?;
    let certificate = synthesize_weights(&h, &m);
    let lp_positive = certificate.is_some();
    let (witness, walk_search) = match positive_by_walks(&h, &m) {
        Ok(v) if v.positive != lp_positive => {
            return Err(CliError::Contradiction(format!(
                "walks say positive={}, the LP says positive={lp_positive}; matching {:?}",
                v.positive,
                m.edges()
            )))
        }
        Ok(v) => (v.witness, "agrees".to_string()),
        Err(e) => (None, e.to_string()),
    };
    let multipliers = infeasibility_multipliers(&h, &m)
        .map(|ys| ys.into_iter().map(|(e, y)| (e, to_fraction_string(&y))).collect());
    let mut human = format!("positive: {lp_positive}\n");
    if let Some(w) = &witness {
        human += &format!("strong closed walk ({} steps): {}\n", w.len(), describe_walk(w));
    }
    if let Some(c) = &certificate {
        let ws: Vec<String> = c
            .weights()
            .iter()
            .map(|(v, w)| format!("{v}:{}", to_fraction_string(w)))
            .collect();
        human += &format!("weights: {}\n", ws.join(" "));
    }
    let doc = PositivityDoc {
        positive: lp_positive,
        certificate,
        witness,
        multipliers,
        walk_search,
    };
    Ok(Outcome::ok(to_value(&doc), human.trim_end().to_string()))
}

fn walks(input: &Path, matching: &str, root: Option<Vertex>, budget: u64) -> Result<Outcome, CliError> {
    let h: Hypergraph = read_json(input)?;
    let m = read_matching(&h, matching)?;
    let verdict = positive_by_walks(&h, &m).map_err(invalid)?;
    let regular: Result<Option<RegularWitness>, String> = find_regular_witness(&h, &m).map_err(|e| e.to_string());
    let mut human = match &verdict.witness {
        Some(w) => format!("strong closed walk ({} steps): {}\n", w.len(), describe_walk(w)),
        None => "no strong closed walk: the matching is positive\n".to_string(),
    };
    match &regular {
        Ok(Some(r)) => human += &format!("regular witness on {} matching edges\n", r.inner.len()),
        Ok(None) => human += "no regular witness\n",
        Err(e) => human += &format!("regular witness search: {e}\n"),
    }
    let mut doc = json!({
        "positive": verdict.positive,
        "strong_walk": verdict.witness,
        "regular_witness": regular.as_ref().ok().cloned().flatten(),
    });
    if let Some(root) = root {
        let tree = alternate_rooted_tree(&h, &m, root, budget).map_err(invalid)?;
        let closed = tree.closed_walks();
        let strong: Vec<&WalkWitness> = closed.iter().filter(|w| w.is_strong(&h, &m)).collect();
        human += &format!(
            "rooted tree at {root}: {} walks, {} closed, {} strong{}\n",
            tree.walks.len(),
            closed.len(),
            strong.len(),
            if tree.truncated { " (truncated)" } else { "" }
        );
        doc["tree"] = json!({
            "root": root,
            "walks": tree.walks.len(),
            "truncated": tree.truncated,
            "closed": closed,
            "strong": strong,
        });
    }
    Ok(Outcome::ok(doc, human.trim_end().to_string()))
}

fn decomposition_error(e: crate::decomposition::DecompositionError) -> CliError {
    if e.contradicts_theorem() {
        CliError::Contradiction(e.to_string())
    } else {
        invalid(e)
    }
}

fn decompose(complete: &[u64]) -> Result<Outcome, CliError> {
    let (n, r) = (complete[0] as Vertex, complete[1] as usize);
    let d = pm_decompose_complete_r(n, r).map_err(decomposition_error)?;
    if let Err(e) = d.verify() {
        return Err(CliError::Contradiction(format!("band decomposition fails replay: {e}")));
    }
    let human = format!("{} parts over {} edges, all certificates replay", d.count(), d.host().edge_count());
    Ok(Outcome::ok(to_value(&d), human))
}

fn pmd(input: &Path, exact: bool, greedy: bool, formula: bool, budget: u64) -> Result<Outcome, CliError> {
    let h: Hypergraph = read_json(input)?;
    if formula {
        let (p, tag) = pmd_formula(&h).ok_or_else(|| invalid("no closed form applies to this hypergraph"))?;
        return Ok(Outcome::ok(json!({ "pmd": p, "family": tag }), p.to_string()));
    }
    if greedy {
        let d = pmd_greedy(&h).map_err(invalid)?;
        return Ok(Outcome::ok(
            json!({ "parts": d.count(), "decomposition": d }),
            format!("{} parts (upper bound)", d.count()),
        ));
    }
    debug_assert!(exact, "clap requires one method");
    let (p, d) = pmd_exact(&h, budget).map_err(invalid)?;
    Ok(Outcome::ok(json!({ "pmd": p, "decomposition": d }), p.to_string()))
}

fn lss(input: &Path, d: u32, dialect: Option<&str>, classify: bool) -> Result<Outcome, CliError> {
    let h: Hypergraph = read_json(input)?;
    if classify {
        let c = classify_good_forest_ideal(&h, d).map_err(invalid)?;
        let human = format!(
            "radical: {}, complete intersection: {}, prime guaranteed: {}",
            c.radical, c.complete_intersection, c.prime_guaranteed
        );
        return Ok(Outcome::ok(to_value(&c), human));
    }
    let p = lss_generators(&h, d).map_err(invalid)?;
    if let Some(name) = dialect {
        let dialect: Dialect = name.parse().map_err(invalid)?;
        let script = export_cas_script(&p, dialect);
        return Ok(Outcome::ok(json!({ "script": script }), script.trim_end().to_string()));
    }
    let human = format!("{} generators with {} terms of degree {}", p.generators.len(), p.d, p.r);
    Ok(Outcome::ok(to_value(&p), human))
}

fn verify(input: &Path) -> Result<Outcome, CliError> {
    let doc: Value = read_json(input)?;
    if doc.get("checks").is_some() {
        let report: VerificationReport = serde_json::from_value(doc).map_err(invalid)?;
        let mut lines = Vec::new();
        let mut failures = 0;
        for c in &report.checks {
            let again = recheck(c);
            let ok = again.is_ok() && c.passed;
            if !ok {
                failures += 1;
            }
            lines.push(format!(
                "{} {}{}",
                if ok { "PASS" } else { "FAIL" },
                c.name,
                again.err().map(|e| format!(": {e}")).unwrap_or_default()
            ));
        }
        let code = i32::from(failures > 0 || report.checks.is_empty());
        let out = json!({ "checks": report.checks.len(), "failed": failures });
        return Ok(Outcome {
            doc: out,
            human: lines.join("\n"),
            code,
        });
    }
    let d: PmDecomposition = serde_json::from_value(doc).map_err(invalid)?;
    match d.verify() {
        Ok(()) => Ok(Outcome::ok(
            json!({ "valid": true, "parts": d.count() }),
            format!("valid: {} parts replay", d.count()),
        )),
        Err(e) => Ok(Outcome {
            doc: json!({ "valid": false, "error": e.to_string() }),
            human: format!("invalid: {e}"),
            code: 1,
        }),
    }
}

fn verify_conjecture(n_from: u32, n_to: u32, r: usize) -> Result<Outcome, CliError> {
    if n_from > n_to || r < 3 || (n_from as usize) < r {
        return Err(invalid(format!("need r <= n-from <= n-to and r >= 3, got {n_from}..{n_to}, r={r}")));
    }
    let mut checks = Vec::new();
    let mut contradiction = None;
    for n in n_from..=n_to {
        let name = format!("complete n={n} r={r}");
        let (expected_parts, part_bound) = if r == 3 {
            (Some(band_count_3(n as u64)), None)
        } else {
            let bands = enumerate_bands_r(n, r).map_err(invalid)?.len() as u64;
            (Some(bands), Some(band_bound_r(n as u64, r as u64).min(u64::MAX as u128) as u64))
        };
        let mut check = ReportCheck {
            name,
            passed: false,
            detail: String::new(),
            complete: Some((n, r)),
            expected_parts,
            part_bound,
            evidence: None,
        };
        match pm_decompose_complete_r(n, r) {
            Ok(d) => {
                check.evidence = Some(d);
                match recheck(&check) {
                    Ok(()) => {
                        check.passed = true;
                        check.detail = format!("{} parts", check.evidence.as_ref().map_or(0, |d| d.count()));
                    }
                    Err(e) => {
                        check.detail = e.clone();
                        contradiction.get_or_insert(format!("n={n}: {e}"));
                    }
                }
            }
            Err(e) => {
                check.detail = e.to_string();
                if e.contradicts_theorem() {
                    contradiction.get_or_insert(format!("n={n}: {e}"));
                }
            }
        }
        checks.push(check);
    }
    let report = VerificationReport::new(format!("complete {r}-uniform, n={n_from}..={n_to}"), checks);
    let human = report
        .checks
        .iter()
        .map(|c| format!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail))
        .collect::<Vec<_>>()
        .join("\n");
    let code = if contradiction.is_some() {
        3
    } else {
        i32::from(!report.all_passed())
    };
    Ok(Outcome {
        doc: to_value(&report),
        human,
        code,
    })
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Gen { family } => gen(family, cli.seed),
        Command::CheckPositive { input, matching } => check_positive(input, matching),
        Command::Walks {
            input,
            matching,
            root,
            tree_budget,
        } => walks(input, matching, *root, *tree_budget),
        Command::Decompose { complete } => decompose(complete),
        Command::Pmd {
            input,
            exact,
            greedy,
            formula,
            budget,
        } => pmd(input, *exact, *greedy, *formula, *budget),
        Command::Lss {
            input,
            d,
            dialect,
            classify,
        } => lss(input, *d, dialect.as_deref(), *classify),
        Command::Verify { input } => verify(input),
        Command::VerifyConjecture { n_from, n_to, r } => verify_conjecture(*n_from, *n_to, *r),
    }
}

/// Runs one command line and returns its exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(stdout, "{text}")
            } else {
                write!(stderr, "{text}")
            };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(outcome) => {
            let pretty = serde_json::to_string_pretty(&outcome.doc).expect("documents serialize");
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, format!("{pretty}\n")) {
                    let _ = writeln!(stderr, "error: {}: {e}", path.display());
                    return 1;
                }
            }
            let _ = if cli.json {
                writeln!(stdout, "{pretty}")
            } else {
                writeln!(stdout, "{}", outcome.human)
            };
            outcome.code
        }
        Err(e) => {
            match &e {
                CliError::Invalid(msg) => {
                    let _ = writeln!(stderr, "error: {msg}");
                }
                CliError::Contradiction(msg) => {
                    let _ = writeln!(stderr, "theorem violated: {msg}");
                }
            }
            e.code()
        }
    }
}
