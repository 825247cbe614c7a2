//! Argument parsing and the command implementations.
//!
//! Each command produces an [`Outcome`]: an exit code, a text report, a JSON
//! report and optionally an output document. Documents go to `--output` or
//! stdout; the text report goes to stdout unless stdout carries the document,
//! in which case it goes to stderr. `--json <path>` stores the JSON report.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read as _, Write as _};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use prokit::invert::{
    decompose_input_space, inverse_descriptor_minimal, inverse_descriptor_raw, inverse_state_space,
    inverse_weierstrass, invertibility_witness,
};
use prokit::matlin::rank_svd;
use prokit::pro::{check_pro_sampling, default_samples, relative_gap, sample_points, validate_foster, validate_realization};
use prokit::realize::{foster_to_state_space, pencil_is_regular, state_space_to_foster, state_space_to_weierstrass};
use prokit::sample::random_foster;
use prokit::spectra::{interlace_verify, pole_zero_report, Location, PoleEntry};
use prokit::{ComplexMatrix, DescriptorRealization, StateSpaceRealization, Tolerance, TransferFunction, ValidationReport, Violation};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::document::{DocumentEnvelope, DocumentError, Function};

/// Default seed for every command that samples or generates.
pub const DEFAULT_SEED: u64 = 0;

/// Probe points used to compare input and output of `convert` and `invert`.
const PROBE_COUNT: usize = 8;

/// Largest relative disagreement, in units of `eq_rel`, accepted between a
/// function and its converted or inverted form at the probe points.
const AGREEMENT_FACTOR: f64 = 1e3;

#[derive(Debug, Parser)]
#[command(name = "pro-kit", version, about = "Lossless positive-real odd matrix functions: validate, convert, invert, analyse")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Also write the machine-readable report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,

    /// Relative singular-value threshold for rank decisions.
    #[arg(long, global = true, value_name = "REL")]
    pub tol_rank: Option<f64>,

    /// Absolute eigenvalue floor for PSD tests.
    #[arg(long, global = true, value_name = "ABS")]
    pub tol_psd: Option<f64>,

    /// Relative threshold for structural equalities.
    #[arg(long, global = true, value_name = "REL")]
    pub tol_eq: Option<f64>,

    /// Seed for sample points and random generation.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the structural conditions and sample the positive-real odd conditions.
    Validate { input: PathBuf },
    /// Convert to another representation.
    Convert {
        input: PathBuf,
        #[arg(long, value_enum)]
        to: Target,
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Realize the inverse function.
    Invert {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = InverseForm::Ss)]
        form: InverseForm,
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Pole and zero locations with multiplicities.
    Polezero { input: PathBuf },
    /// Verify pole-zero interlacing.
    Interlace { input: PathBuf },
    /// Evaluate at complex points such as `2`, `1+2i`, `-i`.
    Eval {
        input: PathBuf,
        #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_complex)]
        at: Vec<Complex64>,
    },
    /// Draw a random valid Foster document.
    Generate {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        terms: usize,
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Foster,
    Ss,
    Weierstrass,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InverseForm {
    Raw,
    Minimal,
    Weierstrass,
    Ss,
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    s.trim().parse::<Complex64>().map_err(|_| format!("not a complex number: {s:?}"))
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Document { path: String, source: DocumentError },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        2
    }
}

fn io_error(path: &Path, source: io::Error) -> CliError {
    CliError::Io { path: path.display().to_string(), source }
}

struct Outcome {
    code: u8,
    text: String,
    json: Value,
    document: Option<DocumentEnvelope>,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome { code: 0, text, json, document: None }
    }
}

/// Runs one command and returns its exit code. Errors are I/O, parse and
/// usage failures (exit code 2); domain failures are reported and give 1.
pub fn run(cli: &Cli) -> Result<u8, CliError> {
    let tol = tolerance(cli)?;
    let (name, output) = match &cli.command {
        Command::Validate { .. } => ("validate", None),
        Command::Convert { output, .. } => ("convert", output.as_deref()),
        Command::Invert { output, .. } => ("invert", output.as_deref()),
        Command::Polezero { .. } => ("polezero", None),
        Command::Interlace { .. } => ("interlace", None),
        Command::Eval { .. } => ("eval", None),
        Command::Generate { output, .. } => ("generate", output.as_deref()),
    };
    let outcome = match dispatch(cli, &tol)? {
        Ok(o) => o,
        Err(e) => domain_failure(e),
    };

    let document_on_stdout = outcome.document.is_some() && output.is_none();
    if let Some(doc) = &outcome.document {
        let text = doc.to_json();
        match output {
            Some(path) => fs::write(path, text).map_err(|e| io_error(path, e))?,
            None => io::stdout().write_all(text.as_bytes()).map_err(|e| io_error(Path::new("<stdout>"), e))?,
        }
    }
    if document_on_stdout || outcome.code != 0 {
        eprint!("{}", outcome.text);
    } else {
        print!("{}", outcome.text);
    }
    if let Some(path) = &cli.json {
        let mut report = json!({
            "command": name,
            "ok": outcome.code == 0,
            "seed": cli.seed,
            "tolerance": { "rank_rel": tol.rank_rel, "psd_abs": tol.psd_abs, "eq_rel": tol.eq_rel },
        });
        if let (Value::Object(base), Value::Object(extra)) = (&mut report, outcome.json) {
            base.extend(extra);
        }
        let mut text = serde_json::to_string_pretty(&report).expect("reports serialize");
        text.push('\n');
        fs::write(path, text).map_err(|e| io_error(path, e))?;
    }
    Ok(outcome.code)
}

fn tolerance(cli: &Cli) -> Result<Tolerance, CliError> {
    let d = Tolerance::default();
    Tolerance::new(
        cli.tol_rank.unwrap_or(d.rank_rel),
        cli.tol_psd.unwrap_or(d.psd_abs),
        cli.tol_eq.unwrap_or(d.eq_rel),
    )
    .map_err(|e| CliError::Usage(e.to_string()))
}

fn domain_failure(e: prokit::Error) -> Outcome {
    let mut text = format!("failed: {e}\n");
    let mut report = json!({ "error": e.to_string() });
    if let prokit::Error::NotInvertible { witness } = &e {
        let _ = writeln!(text, "witness v (M v = 0, B v = 0, D v = 0): [{}]", join(witness.iter().map(|v| format!("{v:.12}"))));
        report["witness"] = json!(witness);
    }
    Outcome { code: 1, text, json: report, document: None }
}

type Dispatch = Result<Result<Outcome, prokit::Error>, CliError>;

fn dispatch(cli: &Cli, tol: &Tolerance) -> Dispatch {
    let seed = cli.seed;
    match &cli.command {
        Command::Validate { input } => Ok(Ok(validate(&load(input)?.1, tol, seed))),
        Command::Convert { input, to, .. } => {
            let (doc, f) = load(input)?;
            Ok(convert(&doc, &f, *to, tol, seed))
        }
        Command::Invert { input, form, .. } => {
            let (doc, f) = load(input)?;
            Ok(invert(&doc, &f, *form, tol, seed))
        }
        Command::Polezero { input } => Ok(polezero(&load(input)?.1, tol)),
        Command::Interlace { input } => Ok(interlace(&load(input)?.1, tol)),
        Command::Eval { input, at } => Ok(eval(&load(input)?.1, at, tol)),
        Command::Generate { m, terms, .. } => {
            if *m == 0 {
                return Err(CliError::Usage("--m must be at least 1".into()));
            }
            Ok(generate(*m, *terms, tol, seed))
        }
    }
}

/// Reads and decodes a document; `-` reads stdin.
fn load(path: &Path) -> Result<(DocumentEnvelope, Function), CliError> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| io_error(path, e))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| io_error(path, e))?
    };
    let located = |source| CliError::Document { path: path.display().to_string(), source };
    let doc = DocumentEnvelope::parse(&text).map_err(located)?;
    let f = doc.function().map_err(located)?;
    Ok((doc, f))
}

fn join(items: impl Iterator<Item = String>) -> String {
    items.collect::<Vec<_>>().join(", ")
}

fn describe(f: &Function) -> String {
    match f.states() {
        Some(n) => format!("{} document, m = {}, {n} states", f.kind(), f.ports()),
        None => match f {
            Function::Foster(ff) => format!("foster document, m = {}, {} terms", f.ports(), ff.terms.len()),
            _ => unreachable!("only Foster documents have no state dimension"),
        },
    }
}

fn complex_text(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.re == 0.0 {
        format!("{}i", z.im)
    } else {
        format!("{}{}{}i", z.re, if z.im < 0.0 { "-" } else { "+" }, z.im.abs())
    }
}

fn complex_json(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn matrix_json(x: &ComplexMatrix) -> Value {
    Value::Array(x.row_iter().map(|r| Value::Array(r.iter().map(|&v| complex_json(v)).collect())).collect())
}

fn violations_json(report: &ValidationReport) -> Value {
    Value::Array(
        report
            .violations
            .iter()
            .map(|v| json!({ "condition": v.condition, "location": v.location, "residual": finite_or_null(v.residual) }))
            .collect(),
    )
}

fn finite_or_null(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        Value::Null
    }
}

// ---------------------------------------------------------------------------
// validate

fn structural_report(f: &Function, tol: &Tolerance) -> ValidationReport {
    match f {
        Function::Foster(ff) => validate_foster(ff, tol),
        Function::StateSpace(r) => validate_realization(r, tol),
        Function::Descriptor(d) => {
            let mut report = ValidationReport::default();
            if !pencil_is_regular(&d.e, &d.a, tol) {
                report.violations.push(Violation {
                    condition: "pencil zE - A must be regular".into(),
                    location: "E, A".into(),
                    residual: f64::NAN,
                });
            }
            report
        }
    }
}

fn validate(f: &Function, tol: &Tolerance, seed: u64) -> Outcome {
    let structure = structural_report(f, tol);
    let (samples, axis) = default_samples(seed);
    let sampling = check_pro_sampling(f.as_transfer(), &samples, &axis, tol);
    let passed = structure.passed() && sampling.passed();
    let mut text = format!("{}\n", describe(f));
    let _ = write!(text, "structure: {structure}");
    if structure.passed() {
        text.push('\n');
    }
    let _ = write!(
        text,
        "sampling ({} points, {} axis points, seed {seed}): {sampling}",
        samples.len(),
        axis.len()
    );
    if sampling.passed() {
        text.push('\n');
    }
    let _ = writeln!(text, "result: {}", if passed { "PASS" } else { "FAIL" });
    let json = json!({
        "kind": f.kind(),
        "m": f.ports(),
        "passed": passed,
        "structure": violations_json(&structure),
        "sampling": violations_json(&sampling),
        "samples": samples.len(),
        "axis_samples": axis.len(),
    });
    Outcome { code: u8::from(!passed), text, json, document: None }
}

// ---------------------------------------------------------------------------
// convert and invert

fn to_state_space(f: &Function, tol: &Tolerance) -> prokit::Result<StateSpaceRealization> {
    match f {
        Function::Foster(ff) => foster_to_state_space(ff, tol),
        Function::StateSpace(r) => Ok(r.clone()),
        Function::Descriptor(_) => Err(prokit::Error::Domain(
            "descriptor documents cannot be converted to state space; supply a Foster or state-space document".into(),
        )),
    }
}

/// Number of infinite-eigenvalue pairs of a Weierstrass descriptor: its
/// size minus the rank of `E`.
fn impulsive_order(d: &DescriptorRealization, tol: &Tolerance) -> usize {
    d.states() - rank_svd(&d.e, tol)
}

/// Compares `g(z)` with `expected(z)` at probe points. Points where either
/// side is too close to a pole are skipped.
fn agreement(
    label: &str,
    points: &[Complex64],
    mut gap_at: impl FnMut(Complex64) -> Option<f64>,
    tol: &Tolerance,
) -> (bool, String, Value) {
    let mut text = format!("{label} at {} probe points:\n", points.len());
    let mut rows = Vec::new();
    let mut worst: f64 = 0.0;
    for &z in points {
        match gap_at(z) {
            Some(gap) => {
                worst = worst.max(gap);
                let _ = writeln!(text, "  z = {:<28} relative gap {gap:.3e}", complex_text(z));
                rows.push(json!({ "z": complex_json(z), "gap": gap }));
            }
            None => {
                let _ = writeln!(text, "  z = {:<28} skipped (near a pole)", complex_text(z));
                rows.push(json!({ "z": complex_json(z), "gap": Value::Null }));
            }
        }
    }
    let ok = worst <= AGREEMENT_FACTOR * tol.eq_rel;
    let _ = writeln!(text, "max relative gap {worst:.3e}: {}", if ok { "agree" } else { "DISAGREE" });
    (ok, text, json!({ "probes": rows, "max_gap": worst, "agree": ok }))
}

fn convert(doc: &DocumentEnvelope, f: &Function, to: Target, tol: &Tolerance, seed: u64) -> prokit::Result<Outcome> {
    let converted = match to {
        Target::Foster => match f {
            Function::Foster(ff) => Function::Foster(ff.clone()),
            _ => Function::Foster(state_space_to_foster(&to_state_space(f, tol)?, tol)?),
        },
        Target::Ss => Function::StateSpace(to_state_space(f, tol)?),
        Target::Weierstrass => Function::Descriptor(state_space_to_weierstrass(&to_state_space(f, tol)?, tol)?),
    };
    let (points, _) = sample_points(seed, PROBE_COUNT, 0);
    let (ok, report, probes) = agreement(
        "agreement with the input",
        &points,
        |z| {
            let a = f.as_transfer().eval(z, tol).ok()?;
            let b = converted.as_transfer().eval(z, tol).ok()?;
            Some(relative_gap(&b, &a))
        },
        tol,
    );

    let mut meta = doc.meta.clone();
    meta.insert("converted_from".into(), json!(doc.kind));
    let mut text = format!("{} -> {}\n", describe(f), describe(&converted));
    let mut json = json!({ "from": doc.kind, "to": converted.kind(), "agreement": probes });
    match &converted {
        Function::Foster(ff) => {
            let omegas: Vec<f64> = ff.terms.iter().map(|t| t.omega).collect();
            let _ = writeln!(text, "resonant frequencies: [{}]", join(omegas.iter().map(|w| format!("{w:.6}"))));
            json["omegas"] = json!(omegas);
        }
        Function::StateSpace(r) => {
            meta.insert("states".into(), json!(r.states()));
            json["states"] = json!(r.states());
        }
        Function::Descriptor(d) => {
            let q = impulsive_order(d, tol);
            let _ = writeln!(text, "q = {q} (infinite eigenvalue pairs)");
            meta.insert("q".into(), json!(q));
            json["q"] = json!(q);
        }
    }
    text.push_str(&report);
    Ok(Outcome { code: u8::from(!ok), text, json, document: Some(DocumentEnvelope::new(&converted, meta)) })
}

fn invert(doc: &DocumentEnvelope, f: &Function, form: InverseForm, tol: &Tolerance, seed: u64) -> prokit::Result<Outcome> {
    let r = to_state_space(f, tol)?;
    if let Some(witness) = invertibility_witness(&r, tol)? {
        return Err(prokit::Error::NotInvertible { witness });
    }
    let inverse = match form {
        InverseForm::Raw => Function::Descriptor(inverse_descriptor_raw(&r, tol)?),
        InverseForm::Minimal => {
            let dec = decompose_input_space(&r.m, &r.d, &r.b, tol)?;
            Function::Descriptor(inverse_descriptor_minimal(&r, &dec, tol)?.descriptor())
        }
        InverseForm::Weierstrass => {
            let dec = decompose_input_space(&r.m, &r.d, &r.b, tol)?;
            Function::Descriptor(inverse_weierstrass(&r, &dec, tol)?)
        }
        InverseForm::Ss => Function::StateSpace(inverse_state_space(&r, tol)?),
    };
    let (points, _) = sample_points(seed, PROBE_COUNT, 0);
    let id = ComplexMatrix::identity(r.ports(), r.ports());
    let (ok, report, probes) = agreement(
        "|F(z) G(z) - I|",
        &points,
        |z| {
            let fz = r.eval(z, tol).ok()?;
            let gz = inverse.as_transfer().eval(z, tol).ok()?;
            Some(relative_gap(&(fz * gz), &id))
        },
        tol,
    );
    let form_name = form.to_possible_value().expect("no skipped variants").get_name().to_string();
    let mut meta = doc.meta.clone();
    meta.insert("inverse_of".into(), json!(doc.kind));
    meta.insert("inverse_form".into(), json!(form_name));
    let states = inverse.states().expect("inverses are realizations");
    let mut text = format!("inverse ({form_name}) of {}: {states} states\n", describe(f));
    text.push_str(&report);
    let json = json!({ "form": form_name, "states": states, "agreement": probes });
    Ok(Outcome { code: u8::from(!ok), text, json, document: Some(DocumentEnvelope::new(&inverse, meta)) })
}

// ---------------------------------------------------------------------------
// polezero, interlace, eval

fn location_json(e: &PoleEntry) -> Value {
    let at = match e.location {
        Location::Finite(w) => json!(w),
        Location::Infinity => json!("inf"),
    };
    json!({ "omega": at, "multiplicity": e.multiplicity })
}

fn table(title: &str, entries: &[PoleEntry], text: &mut String) {
    let _ = writeln!(text, "{title}\n  {:>14}  multiplicity", "omega");
    for e in entries {
        let _ = writeln!(text, "  {:>14}  {}", e.location.to_string(), e.multiplicity);
    }
}

fn polezero(f: &Function, tol: &Tolerance) -> prokit::Result<Outcome> {
    let r = to_state_space(f, tol)?;
    let report = pole_zero_report(&r, tol)?;
    let co_located = report.co_located(tol);
    let mut text = format!("{} (locations are +-i omega)\n", describe(f));
    table("poles", &report.poles, &mut text);
    table("zeros", &report.zeros, &mut text);
    let _ = writeln!(text, "co-located: [{}]", join(co_located.iter().map(|w| format!("{w:.6}"))));
    let _ = writeln!(text, "multiplicities within m = {}: {}", report.m, report.within_caps());
    let json = json!({
        "m": report.m,
        "poles": report.poles.iter().map(location_json).collect::<Vec<_>>(),
        "zeros": report.zeros.iter().map(location_json).collect::<Vec<_>>(),
        "co_located": co_located,
        "within_caps": report.within_caps(),
    });
    Ok(Outcome::ok(text, json))
}

fn interlace(f: &Function, tol: &Tolerance) -> prokit::Result<Outcome> {
    let r = to_state_space(f, tol)?;
    let rep = interlace_verify(&r, tol)?;
    let failed: Vec<_> = rep.inequality_results.iter().filter(|c| !c.holds).collect();
    let failed_gaps: Vec<_> = rep.gap_results.iter().filter(|g| !g.holds).collect();
    let mut text = format!("{}\n", describe(f));
    let _ = writeln!(text, "input split m1 = {}, m2 = {}, m3 = {}", rep.m1, rep.m2, rep.m3);
    let _ = writeln!(text, "poles: [{}]", join(rep.eigs_a.iter().map(|w| format!("{w:.6}"))));
    let _ = writeln!(text, "zeros: [{}]", join(rep.eigs_ainv.iter().map(|w| format!("{w:.6}"))));
    let _ = writeln!(
        text,
        "{} inequalities, {} failed, worst slack {:.3e}",
        rep.inequality_results.len(),
        failed.len(),
        rep.worst_slack()
    );
    for c in &failed {
        let _ = writeln!(text, "  FAIL {:?} j = {} slack {:.3e}", c.family, c.j, c.slack);
    }
    let _ = writeln!(text, "{} gap counts, {} above m = {}", rep.gap_results.len(), failed_gaps.len(), r.ports());
    for g in &failed_gaps {
        let what = if g.zeros_between_poles { "zeros between poles" } else { "poles between zeros" };
        let _ = writeln!(text, "  FAIL {} {what} in ({:.6}, {:.6})", g.count, g.lower, g.upper);
    }
    let _ = writeln!(text, "result: {}", if rep.passed() { "PASS" } else { "FAIL" });
    let json = json!({
        "passed": rep.passed(),
        "m1": rep.m1, "m2": rep.m2, "m3": rep.m3,
        "poles": rep.eigs_a,
        "zeros": rep.eigs_ainv,
        "inequalities": rep.inequality_results.len(),
        "failed_inequalities": failed.iter().map(|c| json!({ "family": format!("{:?}", c.family), "j": c.j, "slack": c.slack })).collect::<Vec<_>>(),
        "gap_counts": rep.gap_results.len(),
        "failed_gaps": failed_gaps.iter().map(|g| json!({ "lower": g.lower, "upper": g.upper, "count": g.count })).collect::<Vec<_>>(),
        "worst_slack": finite_or_null(rep.worst_slack()),
        "symmetry_residual": rep.symmetry_residual,
    });
    Ok(Outcome { code: u8::from(!rep.passed()), text, json, document: None })
}

fn eval(f: &Function, at: &[Complex64], tol: &Tolerance) -> prokit::Result<Outcome> {
    let mut text = String::new();
    let mut values = Vec::with_capacity(at.len());
    for &z in at {
        let v = f.as_transfer().eval(z, tol)?;
        let _ = writeln!(text, "F({}) =", complex_text(z));
        for row in v.row_iter() {
            let _ = writeln!(text, "  [{}]", join(row.iter().map(|&c| complex_text(c))));
        }
        values.push(json!({ "z": complex_json(z), "value": matrix_json(&v) }));
    }
    Ok(Outcome::ok(text, json!({ "values": values })))
}

// ---------------------------------------------------------------------------
// generate

fn generate(m: usize, terms: usize, tol: &Tolerance, seed: u64) -> prokit::Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = Function::Foster(random_foster(&mut rng, m, terms));
    let mut check = validate(&f, tol, seed);
    if check.code != 0 {
        return Err(prokit::Error::Domain(format!("generated document failed validation:\n{}", check.text)));
    }
    let mut meta = BTreeMap::new();
    meta.insert("generator".into(), json!("random_foster/chacha8"));
    meta.insert("seed".into(), json!(seed));
    meta.insert("terms".into(), json!(terms));
    check.text = format!("generated {}; validation passed\n", describe(&f));
    check.document = Some(DocumentEnvelope::new(&f, meta));
    Ok(check)
}
