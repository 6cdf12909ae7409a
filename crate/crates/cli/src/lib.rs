//! Command-line front end: argument parsing, dispatch to `varregion-core`, and
//! the CSV/SVG/JSON emitters.

// `!(x < y)` is used deliberately so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::ffi::OsString;
use std::fmt;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use varregion_core::oracle::MembershipFailure;
use varregion_core::{
    cv_region, extremal_coefficients, h_function, make_domain, membership_trial, q_point, schur_parameters,
    CaratheodoryData, ClosedFormCurve, Constraint, DomainKind, DomainMap, MembershipReport, QuadratureConfig,
    Refinement, RegionPolygon, RegionRequest, RegionResult, SchurValue, TargetClass, VariabilityQuery,
    DEFAULT_TOL_UNIT,
};

/// Failure classes, mapped to exit codes 2 (usage) and 1 (everything else).
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Compute(String),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(_) | CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Compute(m) => write!(f, "computation failed: {m}"),
            CliError::Io(e) => write!(f, "write failed: {e}"),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<varregion_core::Error> for CliError {
    fn from(e: varregion_core::Error) -> Self {
        CliError::Compute(e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

// ---------------------------------------------------------------------------
// Parsing

fn is_real_literal(s: &str) -> bool {
    let b = s.as_bytes();
    let mut i = 0;
    if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
        i += 1;
    }
    let int_start = i;
    while i < b.len() && b[i].is_ascii_digit() {
        i += 1;
    }
    let mut digits = i - int_start;
    if i < b.len() && b[i] == b'.' {
        i += 1;
        let frac_start = i;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        digits += i - frac_start;
    }
    if digits == 0 {
        return false;
    }
    if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
        i += 1;
        if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
            i += 1;
        }
        let exp_start = i;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        if i == exp_start {
            return false;
        }
    }
    i == b.len()
}

fn parse_real_token(s: &str, whole: &str) -> Result<f64, String> {
    if !is_real_literal(s) {
        return Err(format!("malformed number '{whole}'"));
    }
    let v: f64 = s.parse().map_err(|_| format!("malformed number '{whole}'"))?;
    if !v.is_finite() {
        return Err(format!("number out of range '{whole}'"));
    }
    Ok(v)
}

/// Parses `<real>`, `<real>±<real>i` or `<real>i`; whitespace is ignored.
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex64::new(parse_real_token(&s, text)?, 0.0));
    };
    let b = body.as_bytes();
    let split = (1..b.len()).rev().find(|&k| (b[k] == b'+' || b[k] == b'-') && !matches!(b[k - 1], b'e' | b'E'));
    match split {
        Some(k) => Ok(Complex64::new(parse_real_token(&body[..k], text)?, parse_real_token(&body[k..], text)?)),
        None => Ok(Complex64::new(0.0, parse_real_token(body, text)?)),
    }
}

/// Comma-separated complex values.
pub fn parse_complex_list(text: &str) -> Result<Vec<Complex64>, String> {
    if text.trim().is_empty() {
        return Err("empty list".into());
    }
    text.split(',').map(parse_complex).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexList(pub Vec<Complex64>);

fn complex_list_arg(text: &str) -> Result<ComplexList, String> {
    parse_complex_list(text).map(ComplexList)
}

/// `halfplane[:alpha=r]`, `sector:beta=r`, `janowski:A=c,B=c`, `kucv:k=r`.
pub fn parse_domain_spec(text: &str) -> Result<DomainKind, String> {
    let text = text.trim();
    let (name, rest) = text.split_once(':').unwrap_or((text, ""));
    let mut params: Vec<(String, String)> = Vec::new();
    if !rest.trim().is_empty() {
        for item in rest.split(',') {
            let (k, v) =
                item.split_once('=').ok_or_else(|| format!("expected key=value in domain spec, got '{item}'"))?;
            let key = k.trim().to_string();
            if params.iter().any(|(seen, _)| *seen == key) {
                return Err(format!("duplicate key '{key}' in domain spec"));
            }
            params.push((key, v.trim().to_string()));
        }
    }
    let take = |params: &mut Vec<(String, String)>, key: &str| -> Option<String> {
        let pos = params.iter().position(|(k, _)| k == key)?;
        Some(params.remove(pos).1)
    };
    let real = |v: String| parse_real_token(v.trim(), &v);

    let kind = match name.trim().to_ascii_lowercase().as_str() {
        "halfplane" => {
            let alpha = take(&mut params, "alpha").map(real).transpose()?.unwrap_or(0.0);
            DomainKind::HalfPlaneOrder { alpha }
        }
        "sector" => {
            let beta = take(&mut params, "beta").ok_or("sector needs beta=<real>")?;
            DomainKind::Sector { beta: real(beta)? }
        }
        "janowski" => {
            let a = take(&mut params, "A").ok_or("janowski needs A=<complex>")?;
            let b = take(&mut params, "B").ok_or("janowski needs B=<complex>")?;
            DomainKind::Janowski { a: parse_complex(&a)?, b: parse_complex(&b)? }
        }
        "kucv" => {
            let k = take(&mut params, "k").ok_or("kucv needs k=<real>")?;
            DomainKind::Kucv { k: real(k)? }
        }
        other => return Err(format!("unknown domain '{other}'")),
    };
    if let Some((k, _)) = params.first() {
        return Err(format!("unknown key '{k}' for domain '{name}'"));
    }
    Ok(kind)
}

fn domain_arg(text: &str) -> Result<DomainMap, CliError> {
    let kind = parse_domain_spec(text).map_err(usage)?;
    make_domain(kind).map_err(|e| usage(e.to_string()))
}

fn z0_arg(z0: Complex64) -> Result<Complex64, CliError> {
    if !(z0.norm() > 0.0 && z0.norm() < 1.0) {
        return Err(usage(format!("--z0 must satisfy 0 < |z0| < 1, got {z0}")));
    }
    Ok(z0)
}

fn j_arg(j: i32, min: i32) -> Result<i32, CliError> {
    if j < min {
        return Err(usage(format!("--j must be >= {min}, got {j}")));
    }
    Ok(j)
}

fn at_least(name: &str, v: usize, min: usize) -> Result<usize, CliError> {
    if v < min {
        return Err(usage(format!("--{name} must be >= {min}, got {v}")));
    }
    Ok(v)
}

// ---------------------------------------------------------------------------
// Command line

#[derive(Debug, Parser)]
#[command(
    name = "varregion",
    version,
    about = "Variability regions for analytic functions with prescribed coefficients"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Schur parameters and classification of Carathéodory data
    Schur {
        #[arg(long, allow_hyphen_values = true, value_parser = complex_list_arg)]
        data: ComplexList,
    },
    /// Variability region of ∫₀^{z₀} ζ^j (g(ζ) − g(0)) dζ
    Region {
        #[arg(long)]
        domain: String,
        #[arg(long, allow_hyphen_values = true, value_parser = complex_list_arg)]
        data: ComplexList,
        #[arg(long, allow_hyphen_values = true)]
        j: i32,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        z0: Complex64,
        #[arg(long, default_value_t = 256)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Bisect trace edges until chords are within this distance of the curve
        #[arg(long)]
        refine: Option<f64>,
    },
    /// Taylor coefficients of the extremal convex function for Schur parameters (γ₁, γ₂, …)
    Extremal {
        #[arg(long)]
        domain: String,
        #[arg(long, allow_hyphen_values = true, value_parser = complex_list_arg)]
        gamma: ComplexList,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        eps: Complex64,
        #[arg(long)]
        order: usize,
    },
    /// Hausdorff distance between the closed-form half-plane curve and the engine trace
    CompareGronwall {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        z0: Complex64,
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long, default_value_t = 720)]
        samples: usize,
    },
    /// Monte-Carlo membership of random admissible functionals in the traced region
    Membership {
        #[arg(long)]
        domain: String,
        #[arg(long, allow_hyphen_values = true, value_parser = complex_list_arg)]
        gamma: ComplexList,
        #[arg(long, allow_hyphen_values = true)]
        j: i32,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        z0: Complex64,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Maximum deviation of the zero-data H-function identity over random points
    HCheck {
        #[arg(long)]
        domain: String,
        #[arg(long)]
        j: i32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

// ---------------------------------------------------------------------------
// Emitters

/// Serialises as `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cx(pub Complex64);

impl Serialize for Cx {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&self.0.re)?;
        seq.serialize_element(&self.0.im)?;
        seq.end()
    }
}

/// `[re, im]`, or `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JsonSchurValue(pub SchurValue);

impl Serialize for JsonSchurValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            SchurValue::Finite(v) => Cx(v).serialize(s),
            SchurValue::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Serialize)]
struct SchurOutput {
    gamma: Vec<JsonSchurValue>,
    classification: &'static str,
}

#[derive(Serialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
enum RegionOutput {
    Region { theta: Vec<f64>, points: Vec<Cx> },
    SinglePoint { w0: Cx },
    Empty,
}

impl From<&RegionResult> for RegionOutput {
    fn from(r: &RegionResult) -> Self {
        match r {
            RegionResult::Region(p) => {
                RegionOutput::Region { theta: p.thetas.clone(), points: p.points.iter().copied().map(Cx).collect() }
            }
            RegionResult::SinglePoint(w) => RegionOutput::SinglePoint { w0: Cx(*w) },
            RegionResult::Empty => RegionOutput::Empty,
        }
    }
}

#[derive(Serialize)]
struct ExtremalOutput {
    coefficients: Vec<Cx>,
}

#[derive(Serialize)]
struct HausdorffOutput {
    hausdorff: f64,
}

#[derive(Serialize)]
struct FailureOutput {
    trial: usize,
    value: Cx,
    distance: f64,
}

#[derive(Serialize)]
struct MembershipOutput {
    inside: usize,
    total: usize,
    max_signed_distance: f64,
    failures: Vec<FailureOutput>,
}

impl From<&MembershipReport> for MembershipOutput {
    fn from(r: &MembershipReport) -> Self {
        let failures = r
            .failures
            .iter()
            .map(|&MembershipFailure { trial, value, distance }| FailureOutput { trial, value: Cx(value), distance })
            .collect();
        MembershipOutput { inside: r.inside, total: r.total, max_signed_distance: r.max_signed_distance, failures }
    }
}

#[derive(Serialize)]
struct HCheckOutput {
    trials: usize,
    max_deviation: f64,
}

/// Compact JSON followed by a newline.
pub fn emit_json<T: Serialize>(value: &T, sink: &mut dyn Write) -> io::Result<()> {
    serde_json::to_writer(&mut *sink, value).map_err(io::Error::other)?;
    sink.write_all(b"\n")
}

/// Header `theta,re,im` and one row per vertex, 17 significant digits.
pub fn emit_csv(poly: &RegionPolygon, sink: &mut dyn Write) -> io::Result<()> {
    let mut buf = String::from("theta,re,im\n");
    for (i, w) in poly.points.iter().enumerate() {
        let t = poly.thetas.get(i).copied().unwrap_or(f64::NAN);
        buf.push_str(&format!("{t:.16e},{:.16e},{:.16e}\n", w.re, w.im));
    }
    sink.write_all(buf.as_bytes())
}

/// A single closed polyline; the imaginary axis points up.
pub fn emit_svg(poly: &RegionPolygon, sink: &mut dyn Write) -> io::Result<()> {
    let pts: Vec<(f64, f64)> = poly.points.iter().map(|w| (w.re, -w.im)).collect();
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for &(x, y) in &pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let (w, h) = ((x1 - x0).max(1e-12), (y1 - y0).max(1e-12));
    let (mx, my) = (0.025 * w, 0.025 * h);
    let (vw, vh) = (w + 2.0 * mx, h + 2.0 * my);
    let stroke = 0.005 * vw.max(vh);

    let mut coords: Vec<String> = pts.iter().map(|(x, y)| format!("{x},{y}")).collect();
    if let Some(first) = coords.first().cloned() {
        coords.push(first);
    }
    let svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n\
         <polyline fill=\"none\" stroke=\"black\" stroke-width=\"{}\" points=\"{}\"/>\n\
         </svg>\n",
        x0 - mx,
        y0 - my,
        vw,
        vh,
        stroke,
        coords.join(" ")
    );
    sink.write_all(svg.as_bytes())
}

// ---------------------------------------------------------------------------
// Dispatch

fn artifact_sink<'a>(out: &Option<PathBuf>, stdout: &'a mut dyn Write) -> Result<Box<dyn Write + 'a>, CliError> {
    match out {
        Some(path) => Ok(Box::new(io::BufWriter::new(std::fs::File::create(path)?))),
        None => Ok(Box::new(stdout)),
    }
}

/// Seeded points for `h-check`: `|z₀| ∈ [0.1, 0.8]`, `ε` on the circle.
fn h_check_points(seed: u64, trials: usize) -> Vec<(Complex64, Complex64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tau = std::f64::consts::TAU;
    (0..trials)
        .map(|_| {
            let z0 = Complex64::from_polar(rng.random_range(0.1..=0.8), rng.random_range(0.0..tau));
            (z0, Complex64::from_polar(1.0, rng.random_range(0.0..tau)))
        })
        .collect()
}

pub fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    let cfg = QuadratureConfig::default();
    match cli.command {
        Command::Schur { data: ComplexList(data) } => {
            let data = CaratheodoryData::new(data).map_err(|e| usage(e.to_string()))?;
            let p = schur_parameters(&data, DEFAULT_TOL_UNIT);
            let out = SchurOutput {
                gamma: p.gamma.iter().copied().map(JsonSchurValue).collect(),
                classification: p.classification.as_str(),
            };
            emit_json(&out, stdout)?;
        }
        Command::Region { domain, data: ComplexList(data), j, z0, samples, format, out, refine } => {
            let domain = domain_arg(&domain)?;
            let data = CaratheodoryData::new(data).map_err(|e| usage(e.to_string()))?;
            let j = j_arg(j, -1)?;
            let z0 = z0_arg(z0)?;
            let samples = at_least("samples", samples, 3)?;
            if let Some(tol) = refine {
                if !(tol > 0.0) {
                    return Err(usage(format!("--refine must be positive, got {tol}")));
                }
            }
            let mut req = RegionRequest::new(domain, data, j, z0);
            req.samples = samples;
            req.quad = cfg;
            req.refinement = refine.map(Refinement::new);
            let result = varregion_core::region_compute(&req)?;

            let poly = match (format, &result) {
                (Format::Json, _) => None,
                (_, RegionResult::Region(p)) => Some(p),
                (_, RegionResult::SinglePoint(_)) => {
                    return Err(CliError::Compute("result is a single point; use --format json".into()))
                }
                (_, RegionResult::Empty) => return Err(CliError::Compute("result is empty; use --format json".into())),
            };
            let mut sink = artifact_sink(&out, stdout)?;
            match (format, poly) {
                (Format::Csv, Some(p)) => emit_csv(p, &mut *sink)?,
                (Format::Svg, Some(p)) => emit_svg(p, &mut *sink)?,
                _ => emit_json(&RegionOutput::from(&result), &mut *sink)?,
            }
            sink.flush()?;
        }
        Command::Extremal { domain, gamma: ComplexList(gamma), eps, order } => {
            let domain = domain_arg(&domain)?;
            let order = at_least("order", order, 3)?;
            if eps.norm() > 1.0 || gamma.iter().any(|g| g.norm() >= 1.0) {
                return Err(usage("--gamma entries need |γ| < 1 and --eps needs |ε| <= 1"));
            }
            let f = extremal_coefficients(&domain, &gamma, eps, order)?;
            emit_json(&ExtremalOutput { coefficients: f.coeffs().iter().copied().map(Cx).collect() }, stdout)?;
        }
        Command::CompareGronwall { z0, lambda, samples } => {
            let z0 = z0_arg(z0)?;
            let samples = at_least("samples", samples, 3)?;
            if !(0.0..1.0).contains(&lambda) {
                return Err(usage(format!("--lambda must lie in [0, 1), got {lambda}")));
            }
            let curve = ClosedFormCurve::new(z0, lambda, samples)?.polygon()?;
            let q = VariabilityQuery {
                domain: make_domain(DomainKind::HalfPlaneOrder { alpha: 0.0 })?,
                z0,
                constraint: Constraint::A2 { lambda: Complex64::new(lambda, 0.0) },
                target: TargetClass::ConvexClass,
            };
            let engine = match cv_region(&q, samples, &cfg)? {
                RegionResult::Region(p) => p,
                other => return Err(CliError::Compute(format!("engine returned {other:?}"))),
            };
            emit_json(&HausdorffOutput { hausdorff: varregion_core::hausdorff(&curve, &engine) }, stdout)?;
        }
        Command::Membership { domain, gamma: ComplexList(gamma), j, z0, trials, seed } => {
            let domain = domain_arg(&domain)?;
            let j = j_arg(j, -1)?;
            let z0 = z0_arg(z0)?;
            let trials = at_least("trials", trials, 1)?;
            if gamma.is_empty() || gamma.iter().any(|g| g.norm() >= 1.0) {
                return Err(usage("--gamma needs interior Schur parameters (|γ| < 1)"));
            }
            let report = membership_trial(&domain, &gamma, j, z0, trials, seed, &cfg)?;
            emit_json(&MembershipOutput::from(&report), stdout)?;
        }
        Command::HCheck { domain, j, n, trials, seed } => {
            let domain = domain_arg(&domain)?;
            let j = j_arg(j, 0)?;
            let trials = at_least("trials", trials, 1)?;
            if n == 0 {
                return Err(usage("--n must be >= 1"));
            }
            let zeros = vec![Complex64::default(); n as usize];
            let mut max_deviation = 0.0f64;
            for (z0, eps) in h_check_points(seed, trials) {
                let q = q_point(&domain, &zeros, j, z0, eps, &cfg)?;
                let lhs = (j + 1) as f64 * q / z0.powi(j + 1);
                let rhs = h_function(&domain, j, n, eps * z0.powi(n as i32), &cfg)?;
                max_deviation = max_deviation.max((lhs - rhs).norm());
            }
            emit_json(&HCheckOutput { trials, max_deviation }, stdout)?;
        }
    }
    Ok(())
}

/// Runs one invocation. `argv` includes the program name. Artifacts go to
/// `stdout` (or `--out`), diagnostics to `stderr`. Returns the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    2
                }
            };
        }
    };
    match execute(cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "{e}");
            e.exit_code()
        }
    }
}
