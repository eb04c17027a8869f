use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use sleib::algebra::{build_table, extract_params, filiform_profile, leibniz_violations, lower_central_dims};
use sleib::classify::audit::{invariance_audit, AuditReport};
use sleib::classify::sampler::{sample_subset, DEFAULT_ATTEMPTS};
use sleib::classify::{
    canonical_form, conjectured_count, enumerate_classes, iso_decide, signature, subset_of, IsoVerdict,
};
use sleib::criterion::{closed_form_transform, verify_witness};
use sleib::errata::{errata_document, is_documented};
use sleib::sampling::{random_params, rng_for};
use sleib::scalar::parse_scalar;
use sleib::{AdaptedTriple, AlgebraFile, Error, GaussianRational, ParamVector};

#[derive(Parser)]
#[command(name = "sleib", version, about = "Second-class complex filiform Leibniz algebras: exact transforms and classification")]
struct Cli {
    /// Emit a structured JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Oracle,
    Closed,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Leibniz identity, the filiform profile and adaptedness.
    Verify { file: PathBuf },
    /// Print the nonzero products of the multiplication table.
    Table { file: PathBuf },
    /// Apply the adapted change of basis (A, B, D).
    Transform {
        file: PathBuf,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true)]
        d: String,
        #[arg(long, value_enum, default_value_t = Mode::Oracle)]
        mode: Mode,
    },
    /// Subset, invariant signature and canonical representative (dims 5–8).
    Classify { file: PathBuf },
    /// Decide whether two algebras are isomorphic, or check a given witness.
    Iso {
        file_a: PathBuf,
        file_b: PathBuf,
        #[arg(long, num_args = 3, value_names = ["A", "B", "D"], allow_hyphen_values = true)]
        witness: Option<Vec<String>>,
    },
    /// List the representative families and compare with n² − 7n + 15.
    Enumerate { dim: usize },
    /// Orbit-invariance audit of the subsets and invariants of one dimension.
    Audit {
        dim: usize,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Emit a random algebra file, optionally inside a given subset.
    Random {
        dim: usize,
        #[arg(long)]
        subset: Option<String>,
    },
    /// Regenerate the errata document.
    Errata {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Status {
    Ok,
    Uncovered,
    Unknown,
    /// Published formulas or tables were found to fail; the report says where.
    Errata,
    Error,
}

impl Status {
    fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Error => 1,
            Status::Uncovered | Status::Unknown | Status::Errata => 2,
        }
    }
}

struct Outcome {
    status: Status,
    text: String,
    report: Value,
}

impl Outcome {
    fn new(status: Status, text: impl Into<String>, report: Value) -> Self {
        Outcome { status, text: text.into(), report }
    }

    fn ok(text: impl Into<String>, report: Value) -> Self {
        Self::new(Status::Ok, text, report)
    }
}

/// An error that still carries an informational report.
struct Failure {
    error: Error,
    text: String,
    report: Value,
}

impl From<Error> for Box<Failure> {
    fn from(error: Error) -> Self {
        Box::new(Failure { error, text: String::new(), report: Value::Null })
    }
}

type CmdResult = Result<Outcome, Box<Failure>>;

fn read_algebra(path: &Path) -> Result<ParamVector, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    AlgebraFile::parse(&text)
}

fn scalar(s: &str) -> Result<GaussianRational, Error> {
    parse_scalar(s)
}

fn triple(a: &str, b: &str, d: &str) -> Result<AdaptedTriple, Error> {
    AdaptedTriple::new(scalar(a)?, scalar(b)?, scalar(d)?)
}

fn list<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn verify(file: &Path) -> CmdResult {
    let p = read_algebra(file)?;
    let t = build_table(&p);
    let violations = leibniz_violations(&t);
    let dims = lower_central_dims(&t);
    let expected = filiform_profile(p.dim());
    let adapted = extract_params(&t).map(|q| q == p).unwrap_or(false);
    let (leibniz, filiform) = (violations.is_empty(), dims == expected);
    let shown: Vec<String> = violations.iter().take(5).map(|(i, j, k)| format!("({i},{j},{k})")).collect();
    let mut text = format!("leibniz: {}, filiform: {}\n", pass(leibniz), pass(filiform));
    text += &format!("adapted: {}\n", pass(adapted));
    text += &format!("lower central series: {}\n", list(&dims));
    if !leibniz {
        text += &format!("violations: {} (first: {})\n", violations.len(), shown.join(" "));
    }
    let report = json!({
        "params": p.to_file(),
        "leibniz_violations": violations,
        "lower_central_dims": dims,
        "filiform_profile": expected,
        "leibniz": leibniz,
        "filiform": filiform,
        "adapted": adapted,
    });
    let status = if leibniz && filiform && adapted { Status::Ok } else { Status::Error };
    Ok(Outcome::new(status, text, report))
}

fn term(c: &GaussianRational, k: usize) -> String {
    let s = c.to_string();
    match s.as_str() {
        "1" => format!("e{k}"),
        "-1" => format!("-e{k}"),
        _ if s.contains(['+', '/']) || s[1..].contains('-') => format!("({s})e{k}"),
        _ => format!("{s}e{k}"),
    }
}

fn table(file: &Path) -> CmdResult {
    let p = read_algebra(file)?;
    let t = build_table(&p);
    let mut text = format!("{p}\n");
    let mut rows = Vec::new();
    for (i, j, prod) in t.nonzero_products() {
        let terms: Vec<String> = prod.iter().enumerate().filter(|(_, c)| !num_is_zero(c)).map(|(k, c)| term(c, k)).collect();
        let rhs = terms.join(" + ").replace("+ -", "- ");
        text += &format!("[e{i}, e{j}] = {rhs}\n");
        rows.push(json!({ "i": i, "j": j, "product": prod }));
    }
    Ok(Outcome::ok(text, json!({ "params": p.to_file(), "products": rows })))
}

fn num_is_zero(c: &GaussianRational) -> bool {
    *c == GaussianRational::from(0)
}

fn transform(file: &Path, a: &str, b: &str, d: &str, mode: Mode) -> CmdResult {
    let p = read_algebra(file)?;
    let t = triple(a, b, d)?;
    let oracle = match mode {
        Mode::Closed => None,
        _ => Some(sleib::transform_params(&p, &t)?),
    };
    let closed = match mode {
        Mode::Oracle => None,
        _ => Some(closed_form_transform(&p, &t)),
    };
    let mut report = json!({ "input": p.to_file(), "triple": t });
    let (text, status) = match (&oracle, &closed) {
        (Some(o), Some(c)) => {
            let agree = o == c;
            report["oracle"] = json!(o.to_file());
            report["closed"] = json!(c.to_file());
            report["agreement"] = json!(agree);
            let status = if agree { Status::Ok } else { Status::Errata };
            (format!("oracle: {o}\nclosed: {c}\nagreement: {agree}\n"), status)
        }
        (Some(q), None) | (None, Some(q)) => {
            report["result"] = json!(q.to_file());
            (format!("{q}\n"), Status::Ok)
        }
        (None, None) => unreachable!(),
    };
    Ok(Outcome::new(status, text, report))
}

fn lambda_text(lambdas: &[GaussianRational]) -> String {
    match lambdas {
        [] => String::new(),
        [l] => format!(" λ={l}"),
        _ => {
            let parts: Vec<String> = lambdas.iter().enumerate().map(|(i, l)| format!("λ{}={l}", i + 1)).collect();
            format!(" {}", parts.join(", "))
        }
    }
}

fn classify(file: &Path) -> CmdResult {
    let p = read_algebra(file)?;
    let label = subset_of(&p)?;
    if !label.is_covered() {
        let report = json!({ "params": p.to_file(), "label": "Uncovered" });
        return Ok(Outcome::new(Status::Uncovered, format!("Uncovered: {p} lies in no listed subset\n"), report));
    }
    let sig = signature(&p)?;
    let mut head = format!("{label}");
    if let Some(spec_sig) = sig.values.first().map(|_| &sig.values) {
        head += &format!(", signature [{}]", list(spec_sig));
    }
    let mut report = json!({
        "params": p.to_file(),
        "label": label.to_string(),
        "signature": sig.values,
        "errata_variant": sig.errata_variant,
    });
    let mut notes = String::new();
    if let Some(v) = sig.errata_variant {
        notes += &format!("errata variant: {v}\n");
    }
    match canonical_form(&p) {
        Ok(c) => {
            report["canonical"] = json!({ "family": c.family, "lambdas": c.lambdas, "params": c.params().to_file() });
            Ok(Outcome::ok(format!("{head}, canonical {}{}\n{notes}", c.family, lambda_text(&c.lambdas)), report))
        }
        Err(e @ Error::NoRationalInverse { .. }) => {
            report["canonical"] = Value::Null;
            report["note"] = json!(e.to_string());
            Ok(Outcome::new(Status::Unknown, format!("{head}, canonical unavailable: {e}\n{notes}"), report))
        }
        Err(e) => Err(e.into()),
    }
}

fn iso(a: &Path, b: &Path, witness: Option<&[String]>) -> CmdResult {
    let (p, q) = (read_algebra(a)?, read_algebra(b)?);
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: q.dim() }.into());
    }
    if let Some([ta, tb, td]) = witness {
        let t = triple(ta, tb, td)?;
        let ok = verify_witness(&p, &q, &t)?;
        let text = if ok { format!("witness {t} verified\n") } else { format!("witness {t} rejected\n") };
        let report = json!({ "first": p.to_file(), "second": q.to_file(), "witness": t, "verified": ok });
        return Ok(Outcome::ok(text, report));
    }
    let d = iso_decide(&p, &q)?;
    let mut text = format!("{}\n", d.verdict);
    if let Some(t) = &d.witness {
        text += &format!("witness: {t}\n");
    }
    let status = if d.verdict == IsoVerdict::Unknown { Status::Unknown } else { Status::Ok };
    let report = json!({ "first": p.to_file(), "second": q.to_file(), "verdict": d.verdict, "witness": d.witness });
    Ok(Outcome::new(status, text, report))
}

fn enumerate(dim: usize) -> CmdResult {
    let formula = conjectured_count(dim);
    let families = enumerate_classes(dim).map_err(|error| Failure {
        error,
        text: format!("formula: {formula}\n"),
        report: json!({ "dim": dim, "formula": formula }),
    })?;
    let mut text = String::new();
    for f in &families {
        text += &format!("{:<4} {}\n", f.subset, f.family);
    }
    let matches = families.len() as i64 == formula;
    text += &format!("count: {}, formula: {formula}, match: {matches}\n", families.len());
    let report = json!({ "dim": dim, "families": families, "count": families.len(), "formula": formula, "match": matches });
    Ok(Outcome::ok(text, report))
}

fn audit_text(r: &AuditReport) -> String {
    let mut text = format!("audit dim {} ({} samples per subset, seed {})\n", r.dim, r.samples, r.seed);
    for s in &r.subsets {
        let kind = if s.value_bearing { "invariant" } else { "singleton" };
        if s.passed() {
            text += &format!("{:<4} pass ({kind}, {} samples, {} trials)\n", s.subset, s.samples, s.trials);
            continue;
        }
        text += &format!("{:<4} FAIL ({kind}, {} samples, {} trials)\n", s.subset, s.samples, s.trials);
        for f in &s.findings {
            let tag = if is_documented(f) { "documented" } else { "NEW" };
            let w = &f.witness;
            let triple = w.triple.as_ref().map(|t| format!(" via {t}")).unwrap_or_default();
            text += &format!("     {} x{} [{tag}]: {}{triple}: {}\n", f.kind, f.count, w.params, w.detail);
        }
    }
    let c = &r.coverage;
    text += &format!("coverage: {} uncovered, {} overlaps\n", c.uncovered_fraction(), c.overlaps);
    if !c.gap_witnesses.is_empty() {
        text += &format!("gap witnesses: {}\n", c.gap_witnesses.join(" "));
    }
    text
}

fn audit(dim: usize, samples: usize, seed: u64) -> CmdResult {
    let r = invariance_audit(dim, samples, seed)?;
    let status = if r.clean() { Status::Ok } else { Status::Errata };
    let mut report = serde_json::to_value(&r).expect("plain data");
    let documented: Vec<bool> = r.findings().map(is_documented).collect();
    report["all_findings_documented"] = json!(documented.iter().all(|d| *d));
    Ok(Outcome::new(status, audit_text(&r), report))
}

fn random(dim: usize, subset: Option<&str>, seed: u64) -> CmdResult {
    let mut rng = rng_for(seed, &[dim as u64]);
    let p = match subset {
        Some(name) => sample_subset(&mut rng, dim, name, DEFAULT_ATTEMPTS)?,
        None if (ParamVector::MIN_DIM..=ParamVector::MAX_DIM).contains(&dim) => random_params(&mut rng, dim),
        None => return Err(Error::UnsupportedDim(dim, "5..=64").into()),
    };
    let file = p.to_file();
    Ok(Outcome::ok(file.to_json() + "\n", json!(file)))
}

fn errata(out: Option<&Path>) -> CmdResult {
    let doc = errata_document()?;
    let text = doc.to_json();
    if let Some(path) = out {
        std::fs::write(path, &text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(Outcome::ok(if out.is_some() { String::new() } else { text }, serde_json::to_value(&doc).expect("plain data")))
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Verify { file } => verify(file),
        Command::Table { file } => table(file),
        Command::Transform { file, a, b, d, mode } => transform(file, a, b, d, *mode),
        Command::Classify { file } => classify(file),
        Command::Iso { file_a, file_b, witness } => iso(file_a, file_b, witness.as_deref()),
        Command::Enumerate { dim } => enumerate(*dim),
        Command::Audit { dim, samples } => audit(*dim, *samples, cli.seed),
        Command::Random { dim, subset } => random(*dim, subset.as_deref(), cli.seed),
        Command::Errata { out } => errata(out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (status, text, report, error) = match run(&cli) {
        Ok(o) => (o.status, o.text, o.report, None),
        Err(f) => (Status::Error, f.text, f.report, Some(f.error.to_string())),
    };
    if cli.json {
        let mut out = json!({ "status": status, "exit_code": status.exit_code(), "report": report });
        if let Some(e) = &error {
            out["error"] = json!(e);
        }
        println!("{}", serde_json::to_string_pretty(&out).expect("plain data"));
    } else {
        print!("{text}");
        if let Some(e) = &error {
            eprintln!("error: {e}");
        }
    }
    ExitCode::from(status.exit_code())
}
