//! Command-line front end for `ascurves`: curve descriptions, subcommands
//! and reports.

use ascurves::curve::{classify_exceptional, make_curve, ArtinSchreierCurve, ExceptionalClass};
use ascurves::ff::{make_field, Field, FieldElement};
use ascurves::invariants::invariants_of;
use ascurves::iso::{are_isomorphic, census, orbit};
use ascurves::polyrat::{parse_prime_poly_in_t, parse_rational_at, RationalFunction};
use ascurves::standard::{standardize, IsomorphismRecord};
use ascurves::strata::{descriptor_for, enumerate_strata, StratumDescriptor};
use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] ascurves::Error),
    #[error("cannot read {0}: {1}")]
    Io(String, String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 2 for parse and validation errors, 3 for strata without invariants,
    /// 4 for internal inconsistencies.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(ascurves::Error::UnsupportedStratum { .. }) => 3,
            CliError::Lib(ascurves::Error::Inconsistency(_)) => 4,
            _ => 2,
        }
    }
}

impl CliError {
    /// The diagnostic printed on failure.
    pub fn diagnostic(&self) -> String {
        match self {
            CliError::Lib(ascurves::Error::UnsupportedStratum { g, p, s }) => format!(
                "{self}\nreconstructing invariants exist only for genus 3 (p = 3, 7) and genus 4 (p = 3, 5); \
                 got g={g}, p={p}, s={s}"
            ),
            _ => self.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

/// A parsed and validated curve description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSpec {
    pub p: u32,
    /// Modulus of the extension field (constant term first), if declared.
    pub modulus: Option<Vec<u32>>,
    pub f: RationalFunction,
}

impl CurveSpec {
    pub fn field(&self) -> &Field {
        self.f.field()
    }

    pub fn curve(&self) -> Result<ArtinSchreierCurve> {
        Ok(make_curve(self.p, &self.f)?)
    }
}

impl fmt::Display for CurveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p={}", self.p)?;
        if self.modulus.is_some() {
            writeln!(f, "field={}", self.field().modulus_string())?;
        }
        write!(f, "f={}", self.f)
    }
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> CliError {
    CliError::Lib(ascurves::Error::Parse {
        line,
        column,
        message: message.into(),
    })
}

/// Parses "p=<int>", optional "field=<poly in t>" and "f=<rational function>"
/// entries, one per line or separated by ';'. Whitespace is ignored and '#'
/// starts a comment.
pub fn parse_curve(text: &str) -> Result<CurveSpec> {
    let mut p: Option<(u64, usize)> = None;
    let mut field_text: Option<(String, usize, usize)> = None;
    let mut f_text: Option<(String, usize, usize)> = None;
    for (ln, line) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = line.split('#').next().unwrap_or("");
        let mut col = 0;
        for entry in line.split(';') {
            let start = col;
            col += entry.chars().count() + 1;
            if entry.trim().is_empty() {
                continue;
            }
            let Some((key, value)) = entry.split_once('=') else {
                return Err(parse_error(line_no, start + 1, format!("expected key=value, got '{}'", entry.trim())));
            };
            let value_col = start + key.chars().count() + 1;
            match key.trim() {
                "p" => {
                    let v: u64 = value
                        .trim()
                        .parse()
                        .map_err(|_| parse_error(line_no, value_col + 1, format!("invalid prime '{}'", value.trim())))?;
                    p = Some((v, line_no));
                }
                "field" => field_text = Some((value.to_string(), line_no, value_col)),
                "f" => f_text = Some((value.to_string(), line_no, value_col)),
                other => {
                    return Err(parse_error(line_no, start + 1, format!("unknown key '{other}'")));
                }
            }
        }
    }
    let (p, _) = p.ok_or_else(|| parse_error(1, 1, "missing p="))?;
    if p == 2 {
        return Err(ascurves::Error::EvenCharacteristic.into());
    }
    let (field, modulus) = match field_text {
        Some((text, line, col)) if !text.trim().is_empty() => {
            let m = parse_prime_poly_in_t(&text, p, line, col)?;
            if m.len() < 3 {
                return Err(parse_error(line, col + 1, "field modulus must have degree at least 2"));
            }
            (make_field(p, m.len() - 1, Some(&m))?, Some(m))
        }
        _ => (make_field(p, 1, None)?, None),
    };
    let (text, line, col) = f_text.ok_or_else(|| parse_error(1, 1, "missing f="))?;
    let f = parse_rational_at(&text, &field, line, col)?;
    Ok(CurveSpec {
        p: p as u32,
        modulus,
        f,
    })
}

/// Reads a curve from a file, from stdin ("-"), or from inline text such
/// as "p=3; f=x^4+x^2".
pub fn load_curve(arg: &str) -> Result<CurveSpec> {
    let text = if arg == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| CliError::Io("stdin".into(), e.to_string()))?
    } else if arg.contains('=') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| CliError::Io(arg.into(), e.to_string()))?
    };
    parse_curve(&text)
}

#[derive(Parser, Debug)]
#[command(name = "ascurves", version, about = "Classify Artin-Schreier curves y^p - y = f(x) over finite fields")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Maximum number of tuples the census may enumerate.
    #[arg(long, global = true, default_value_t = ascurves::iso::DEFAULT_CENSUS_BUDGET)]
    pub field_budget: u128,
    /// Seed for the randomized root finding.
    #[arg(long, global = true, default_value_t = ascurves::polyrat::DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the components of the p-rank strata for genus g.
    Strata {
        #[arg(long)]
        g: u64,
        #[arg(long)]
        p: u32,
    },
    /// Stratum, standard form, invariants and exceptional type of a curve.
    Classify {
        /// File, "-" for stdin, or inline text like "p=3; f=x^4+x^2".
        curve: String,
    },
    /// Reconstructing invariants of a curve.
    Invariants { curve: String },
    /// Decide whether two curves are isomorphic and print a witness.
    Isomorphic { first: String, second: String },
    /// The orbit of a curve's standard form under its isomorphism group.
    Orbit { curve: String },
    /// Isomorphism classes of standard forms with coefficients in F_q.
    Census {
        #[arg(long)]
        p: u32,
        /// Partition E, e.g. "3,2".
        #[arg(long, value_delimiter = ',')]
        partition: Vec<u64>,
        /// Field size, a power of p.
        #[arg(long)]
        q: u64,
    },
}

impl Command {
    fn echo(&self) -> String {
        match self {
            Command::Strata { g, p } => format!("strata --g {g} --p {p}"),
            Command::Classify { curve } => format!("classify {curve}"),
            Command::Invariants { curve } => format!("invariants {curve}"),
            Command::Isomorphic { first, second } => format!("isomorphic {first} {second}"),
            Command::Orbit { curve } => format!("orbit {curve}"),
            Command::Census { p, partition, q } => {
                let e: Vec<String> = partition.iter().map(|x| x.to_string()).collect();
                format!("census --p {p} --partition {} --q {q}", e.join(","))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumBlock {
    pub g: u64,
    pub p: u32,
    pub s: u64,
    #[serde(rename = "E")]
    pub partition: Vec<u64>,
    pub dim: u64,
}

impl From<&StratumDescriptor> for StratumBlock {
    fn from(d: &StratumDescriptor) -> Self {
        StratumBlock {
            g: d.g,
            p: d.p,
            s: d.s,
            partition: d.partition.clone(),
            dim: d.dim,
        }
    }
}

impl fmt::Display for StratumBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.partition.iter().map(|x| x.to_string()).collect();
        write!(f, "g={} p={} s={} E={{{}}} dim={}", self.g, self.p, self.s, e.join(","), self.dim)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveBlock {
    pub p: u32,
    pub field: String,
    pub f: String,
    pub genus: u64,
    pub p_rank: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessBlock {
    pub field: String,
    pub lambda: String,
    #[serde(rename = "M")]
    pub m: [[String; 2]; 2],
    pub h: String,
}

impl From<&IsomorphismRecord> for WitnessBlock {
    fn from(r: &IsomorphismRecord) -> Self {
        let m = r.m().canonical();
        WitnessBlock {
            field: r.field().descriptor(),
            lambda: r.lambda().to_string(),
            m: [
                [m.alpha.to_string(), m.beta.to_string()],
                [m.gamma.to_string(), m.delta.to_string()],
            ],
            h: r.h().to_string(),
        }
    }
}

impl fmt::Display for WitnessBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.m;
        write!(
            f,
            "lambda={}, M=({}, {}; {}, {}), h={} [over {}]",
            self.lambda, m[0][0], m[0][1], m[1][0], m[1][1], self.h, self.field
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardBlock {
    pub shape: Option<String>,
    pub field: String,
    pub coefficients: BTreeMap<String, String>,
    pub f: String,
    /// The isomorphism from the input curve to the standard form.
    pub transcript: WitnessBlock,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsomorphicBlock {
    pub isomorphic: bool,
    pub witness: Option<WitnessBlock>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitBlock {
    pub field: String,
    pub size: usize,
    pub points: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusBlock {
    pub field: String,
    pub q: u64,
    pub domain_size: u64,
    pub class_count: usize,
    pub invariant_classes: usize,
    pub representatives: Vec<BTreeMap<String, String>>,
}

/// Everything a subcommand reports; blocks that do not apply are omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub curves: Vec<CurveBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stratum: Option<StratumBlock>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub strata: Vec<StratumBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub standard_form: Option<StandardBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariants: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exceptional: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isomorphic: Option<IsomorphicBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit: Option<OrbitBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub census: Option<CensusBlock>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Human-readable rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if !self.strata.is_empty() {
            for s in &self.strata {
                let _ = writeln!(out, "{s}");
            }
        }
        for c in &self.curves {
            let _ = writeln!(out, "curve: y^{} - y = {} over {} (genus {}, p-rank {})", c.p, c.f, c.field, c.genus, c.p_rank);
        }
        if let Some(s) = &self.stratum {
            let _ = writeln!(out, "stratum: {s}");
        }
        if let Some(s) = &self.standard_form {
            let _ = writeln!(out, "standard form: y^p - y = {} over {}", s.f, s.field);
            if let Some(shape) = &s.shape {
                let _ = writeln!(out, "  shape: {shape}");
            }
            for (k, v) in &s.coefficients {
                let _ = writeln!(out, "  {k} = {v}");
            }
            let _ = writeln!(out, "  transcript: {}", s.transcript);
        }
        if let Some(inv) = &self.invariants {
            let _ = writeln!(out, "invariants:");
            for (k, v) in inv {
                let _ = writeln!(out, "  {k} = {v}");
            }
        }
        if let Some(e) = &self.exceptional {
            let _ = writeln!(out, "exceptional: {e}");
        }
        if let Some(i) = &self.isomorphic {
            let _ = writeln!(out, "isomorphic: {}", if i.isomorphic { "yes" } else { "no" });
            if let Some(w) = &i.witness {
                let _ = writeln!(out, "  witness: {w}");
            }
        }
        if let Some(o) = &self.orbit {
            let _ = writeln!(out, "orbit over {} ({} points):", o.field, o.size);
            for pt in &o.points {
                let _ = writeln!(out, "  ({})", pt.join(", "));
            }
        }
        if let Some(c) = &self.census {
            let _ = writeln!(out, "census over {} ({} tuples):", c.field, c.domain_size);
            let _ = writeln!(out, "  classes: {}", c.class_count);
            let _ = writeln!(out, "  invariant classes: {}", c.invariant_classes);
            let _ = writeln!(out, "  representatives:");
            for r in &c.representatives {
                let parts: Vec<String> = r.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let _ = writeln!(out, "    {}", parts.join(", "));
            }
        }
        for d in &self.diagnostics {
            let _ = writeln!(out, "note: {d}");
        }
        out
    }
}

fn curve_block(c: &ArtinSchreierCurve) -> CurveBlock {
    CurveBlock {
        p: c.p(),
        field: c.field().descriptor(),
        f: c.f().to_string(),
        genus: c.genus(),
        p_rank: c.p_rank(),
    }
}

fn element_map<'a>(pairs: impl IntoIterator<Item = &'a (String, FieldElement)>) -> BTreeMap<String, String> {
    pairs.into_iter().map(|(k, v)| (k.clone(), v.to_string())).collect()
}

fn exceptional_text(e: &ExceptionalClass) -> String {
    match e {
        ExceptionalClass::TypeA(a) => format!("type A (a = {a})"),
        ExceptionalClass::TypeB(d) => format!("type B (x^{d})"),
        ExceptionalClass::NotExceptional => "none".into(),
    }
}

fn classify(c: &ArtinSchreierCurve, report: &mut Report, want_invariants: bool) -> Result<()> {
    let st = c.stratum()?;
    report.curves.push(curve_block(c));
    report.stratum = Some((&st).into());
    let (std, rec) = standardize(c)?;
    report.standard_form = Some(StandardBlock {
        shape: st.table().map(|t| t.name().to_string()),
        field: std.field().descriptor(),
        coefficients: element_map(std.coefficients()),
        f: std.f().to_string(),
        transcript: (&rec).into(),
    });
    match invariants_of(&std) {
        Ok(v) => report.invariants = Some(element_map(v.values())),
        Err(e @ ascurves::Error::UnsupportedStratum { .. }) if !want_invariants => {
            report.diagnostics.push(format!("no invariants: {e}"));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

/// Executes one subcommand.
pub fn run(cli: &Cli) -> Result<Report> {
    let mut report = Report {
        command: cli.command.echo(),
        ..Report::default()
    };
    match &cli.command {
        Command::Strata { g, p } => {
            Field::prime(*p as u64)?;
            report.strata = enumerate_strata(*g, *p).iter().map(StratumBlock::from).collect();
            if report.strata.is_empty() {
                report.diagnostics.push(format!("(p-1) = {} does not divide 2g = {}", p - 1, 2 * g));
            }
        }
        Command::Classify { curve } => {
            let c = load_curve(curve)?.curve()?;
            classify(&c, &mut report, false)?;
            report.exceptional = Some(exceptional_text(&classify_exceptional(&c)?));
        }
        Command::Invariants { curve } => {
            let c = load_curve(curve)?.curve()?;
            classify(&c, &mut report, true)?;
        }
        Command::Isomorphic { first, second } => {
            let c1 = load_curve(first)?.curve()?;
            let c2 = load_curve(second)?.curve()?;
            report.curves = vec![curve_block(&c1), curve_block(&c2)];
            let found = are_isomorphic(&c1, &c2)?;
            report.isomorphic = Some(IsomorphicBlock {
                isomorphic: found.is_some(),
                witness: found.as_ref().map(WitnessBlock::from),
            });
        }
        Command::Orbit { curve } => {
            let c = load_curve(curve)?.curve()?;
            classify(&c, &mut report, true)?;
            let (std, _) = standardize(&c)?;
            let o = orbit(&std)?;
            report.orbit = Some(OrbitBlock {
                field: o.extension.target().descriptor(),
                size: o.points.len(),
                points: o
                    .points
                    .iter()
                    .map(|pt| pt.iter().map(|x| x.to_string()).collect())
                    .collect(),
            });
        }
        Command::Census { p, partition, q } => {
            let st = descriptor_for(*p, partition)?;
            let k = field_degree(*p, *q)?;
            let field = make_field(*p as u64, k, None)?;
            let r = census(&st, &field, cli.field_budget)?;
            report.stratum = Some((&st).into());
            report.census = Some(CensusBlock {
                field: field.descriptor(),
                q: *q,
                domain_size: r.domain_size as u64,
                class_count: r.class_count,
                invariant_classes: r.invariant_classes,
                representatives: r
                    .representatives
                    .iter()
                    .map(|v| r.names.iter().cloned().zip(v.iter().map(|x| x.to_string())).collect())
                    .collect(),
            });
        }
    }
    Ok(report)
}

fn field_degree(p: u32, q: u64) -> Result<usize> {
    let mut k = 0;
    let mut acc = 1u64;
    while acc < q {
        acc = acc.saturating_mul(p as u64);
        k += 1;
    }
    if acc != q || k == 0 {
        return Err(CliError::Usage(format!("q = {q} is not a power of p = {p}")));
    }
    Ok(k)
}
