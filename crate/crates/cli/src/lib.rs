//! Command-line front end for `pencil_heights`.
//!
//! Inputs are JSON or TOML documents, given as a path, as inline JSON, or as `-`
//! for standard input. Reports go to standard output; errors go to standard
//! error as `{"error": {"kind": ..., "message": ...}}`.
//!
//! Exit codes: 0 on success, 1 on domain errors and failed verification suites,
//! 2 on usage errors and malformed input.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::ops::RangeInclusive;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use pencil_heights::algebra::rational;
use pencil_heights::algebra::{FormInput, MultiForm, Rational};
use pencil_heights::git_binary::{self, BinaryPencil, BinaryPencilInput, FiberRecord, GitHeightReport};
use pencil_heights::pencils::{self, DescriptorInput, PencilDescriptor};
use pencil_heights::semistability::{
    binary_semistable, criteria_engine, torus_semistable, SingularityProfile, StabilityVerdict,
};
use pencil_heights::verify::{self, SuiteReport};
use pencil_heights::{coeffs, Error};

#[derive(Parser, Debug)]
#[command(name = "pencil-heights", version, about = "Exact heights and GIT semistability for pencils of hypersurfaces")]
struct Cli {
    /// Print nothing on standard output; rely on the exit code.
    #[arg(long, global = true)]
    quiet: bool,

    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate F_stab(d, N), w(N, delta) or g(N, delta) exactly.
    Coeff(CoeffArgs),
    /// Heights and bounds of a pencil descriptor.
    Griffiths {
        /// Path to a JSON or TOML descriptor, inline JSON, or `-` for stdin.
        input: String,
    },
    /// GIT height of a pencil of binary cubics or quartics.
    GitHeight {
        input: String,
        /// Append the semistability of the special fibers.
        #[arg(long)]
        profile: bool,
    },
    /// Semistability of a form, or of a singularity profile.
    Semistable {
        input: String,
        /// Use the torus test even for binary forms.
        #[arg(long)]
        torus: bool,
    },
    /// Re-run a verification suite.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Table of F_stab(d, N) and w(N, d) over a grid.
    Sweep {
        #[arg(long, default_value = "2..10", value_parser = parse_span)]
        d: Span,
        #[arg(long = "N", default_value = "1..6", value_parser = parse_span)]
        n: Span,
        /// Comma-separated output.
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct CoeffArgs {
    #[arg(long, num_args = 2, value_names = ["D", "N"])]
    fstab: Option<Vec<u32>>,
    #[arg(long, num_args = 2, value_names = ["N", "DELTA"])]
    w: Option<Vec<u32>>,
    #[arg(long, num_args = 2, value_names = ["N", "DELTA"])]
    g: Option<Vec<u32>>,
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Integrality of the coefficients and F = F_stab on a grid.
    Identities {
        #[arg(long = "N", default_value = "1..12", value_parser = parse_span)]
        n: Span,
        #[arg(long, default_value = "1..50", value_parser = parse_span)]
        d: Span,
    },
    /// Monotonicity of g_N in delta.
    Monotonicity {
        #[arg(long = "N", default_value = "1..12", value_parser = parse_span)]
        n: Span,
        #[arg(long, default_value = "2..200", value_parser = parse_span)]
        delta: Span,
    },
    /// Contact identity on random pencils of binary quartics and cubics.
    Contact {
        #[arg(long, env = "PENCIL_HEIGHTS_SEED", default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        quartics: usize,
        #[arg(long, default_value_t = 100)]
        cubics: usize,
    },
    /// Griffiths height reduction on random budget-consistent descriptors.
    Griffiths {
        #[arg(long, env = "PENCIL_HEIGHTS_SEED", default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        count: usize,
    },
}

/// Inclusive range written `a..b`, `a..=b` or `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Span(u32, u32);

impl Span {
    fn range(&self) -> RangeInclusive<u32> {
        self.0..=self.1
    }
}

fn parse_span(s: &str) -> Result<Span, String> {
    let num = |x: &str| x.trim().parse::<u32>().map_err(|e| format!("`{x}`: {e}"));
    let span = match s.split_once("..") {
        Some((a, b)) => Span(num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let x = num(s)?;
            Span(x, x)
        }
    };
    if span.0 > span.1 {
        return Err(format!("empty range {s}"));
    }
    Ok(span)
}

enum Failure {
    Usage(String),
    Domain(Error),
    /// A suite ran and found failures; carries the rendered report.
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = Result<String, Failure>;

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    let quiet = cli.quiet;
    let result = dispatch(cli);
    let (code, stdout) = match result {
        Ok(text) => (0, Some(text)),
        Err(Failure::Usage(message)) => {
            let _ = writeln!(err, "{}", error_json("malformed-input", &message, None));
            (2, None)
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "{}", error_json(e.kind(), &e.to_string(), e.field()));
            (1, None)
        }
        Err(Failure::Verification(report)) => {
            if quiet {
                let _ = write!(err, "{report}");
                (1, None)
            } else {
                (1, Some(report))
            }
        }
    };
    if let Some(text) = stdout {
        if !quiet {
            let _ = write!(out, "{text}");
        }
    }
    code
}

fn error_json(kind: &str, message: &str, field: Option<&str>) -> Value {
    let mut e = json!({ "kind": kind, "message": message });
    if let Some(f) = field {
        e["field"] = json!(f);
    }
    json!({ "error": e })
}

fn dispatch(cli: Cli) -> Outcome {
    let format = cli.format;
    match cli.command {
        Command::Coeff(args) => coeff(args, format),
        Command::Griffiths { input } => {
            let p: PencilDescriptor = decode::<DescriptorInput>(read_input(&input)?)?.try_into()?;
            let report = pencils::full_report(&p)?;
            match format.unwrap_or(Format::Json) {
                Format::Json => to_json(&report),
                Format::Table => Ok(report.to_table()),
            }
        }
        Command::GitHeight { input, profile } => {
            let p: BinaryPencil = decode::<BinaryPencilInput>(read_input(&input)?)?.try_into()?;
            let report = git_binary::git_height(&p)?;
            let fibers = if profile {
                Some(git_binary::fiber_semistability_profile(&p)?)
            } else {
                None
            };
            match format.unwrap_or(Format::Json) {
                Format::Json => to_json(&GitHeightOutput { report, fibers }),
                Format::Table => Ok(git_height_table(&report, fibers.as_deref())),
            }
        }
        Command::Semistable { input, torus } => {
            let value = read_input(&input)?;
            let verdict = if value.get("numVars").is_some() {
                let form: MultiForm<Rational> = decode::<FormInput>(value)?.try_into()?;
                if form.num_vars() == 2 && !torus {
                    binary_semistable(&form)?
                } else {
                    torus_semistable(&form)?
                }
            } else {
                criteria_engine(&decode::<SingularityProfile>(value)?)?
            };
            match format.unwrap_or(Format::Json) {
                Format::Json => to_json(&verdict),
                Format::Table => Ok(verdict_table(&verdict)),
            }
        }
        Command::Verify(v) => {
            let report = match v {
                VerifyCommand::Identities { n, d } => verify::identities(n.range(), d.range())?,
                VerifyCommand::Monotonicity { n, delta } => verify::monotonicity(n.range(), delta.range())?,
                VerifyCommand::Contact { seed, quartics, cubics } => verify::contact(seed, quartics, cubics)?,
                VerifyCommand::Griffiths { seed, count } => verify::griffiths_reduction(seed, count)?,
            };
            let text = render_suite(&report, format)?;
            if report.passed() {
                Ok(text)
            } else {
                Err(Failure::Verification(text))
            }
        }
        Command::Sweep { d, n, csv } => {
            let rows = verify::sweep(d.range(), n.range())?;
            if csv {
                sweep_csv(&rows)
            } else {
                match format.unwrap_or(Format::Table) {
                    Format::Json => to_json(&rows),
                    Format::Table => Ok(sweep_table(&rows)),
                }
            }
        }
    }
}

fn coeff(args: CoeffArgs, format: Option<Format>) -> Outcome {
    let (name, a, b, value) = if let Some(v) = args.fstab {
        ("fStab", v[0], v[1], coeffs::f_stab(v[0], v[1])?)
    } else if let Some(v) = args.w {
        ("w", v[0], v[1], coeffs::w(v[0], v[1])?)
    } else if let Some(v) = args.g {
        ("g", v[0], v[1], coeffs::g(v[0], v[1])?)
    } else {
        unreachable!("clap requires one coefficient")
    };
    let text = rational::to_string(&value);
    match format {
        Some(Format::Json) => to_json(&json!({ "coefficient": name, "args": [a, b], "value": text })),
        _ => Ok(format!("{text}\n")),
    }
}

/// Reads a path, inline JSON (starting with `{`) or `-` for standard input.
/// Files ending in `.toml` are read as TOML.
fn read_input(spec: &str) -> Result<Value, Failure> {
    let (text, toml) = if spec == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("cannot read standard input: {e}")))?;
        (s, false)
    } else if spec.trim_start().starts_with('{') {
        (spec.to_string(), false)
    } else {
        let path = Path::new(spec);
        let s = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {spec}: {e}")))?;
        (s, path.extension().is_some_and(|x| x == "toml"))
    };
    if toml {
        toml::from_str(&text).map_err(|e| Failure::Usage(format!("malformed TOML: {e}")))
    } else {
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("malformed JSON: {e}")))
    }
}

fn decode<T: DeserializeOwned>(value: Value) -> Result<T, Failure> {
    serde_json::from_value(value).map_err(|e| Failure::Usage(format!("input does not match the schema: {e}")))
}

fn to_json<T: Serialize>(value: &T) -> Outcome {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    Ok(s)
}

#[derive(Serialize)]
struct GitHeightOutput {
    #[serde(flatten)]
    report: GitHeightReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    fibers: Option<Vec<FiberRecord>>,
}

fn aligned(rows: &[(String, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
}

fn git_height_table(r: &GitHeightReport, fibers: Option<&[FiberRecord]>) -> String {
    let mut rows = vec![
        ("htGIT".to_string(), rational::to_string(&r.ht_git)),
        ("htInt".to_string(), rational::to_string(&r.ht_int)),
        ("contactLength".to_string(), r.contact_length.to_string()),
        ("delta".to_string(), r.delta.to_string()),
        ("allFibersSemistable".to_string(), r.all_fibers_semistable.to_string()),
    ];
    for f in fibers.unwrap_or_default() {
        rows.push((format!("fiber {}", f.locus), format!("{:?}", f.verdict.status).to_lowercase()));
    }
    aligned(&rows)
}

fn verdict_table(v: &StabilityVerdict) -> String {
    let mut rows = vec![("status".to_string(), format!("{:?}", v.status).to_lowercase())];
    if let Some(c) = &v.certificate {
        rows.push(("certificate".to_string(), format!("{:?}", c.entries())));
    }
    rows.push(("rule".to_string(), v.rule.clone()));
    aligned(&rows)
}

fn render_suite(report: &SuiteReport, format: Option<Format>) -> Outcome {
    match format.unwrap_or(Format::Table) {
        Format::Json => to_json(report),
        Format::Table => Ok(report.to_string()),
    }
}

fn sweep_table(rows: &[verify::SweepRow]) -> String {
    let cells: Vec<[String; 4]> = rows
        .iter()
        .map(|r| [r.d.to_string(), r.n.to_string(), rational::to_string(&r.f_stab), rational::to_string(&r.w)])
        .collect();
    let header = ["d", "N", "fStab", "w"];
    let widths: Vec<usize> = (0..4)
        .map(|i| cells.iter().map(|c| c[i].len()).chain([header[i].len()]).max().unwrap())
        .collect();
    let mut s = String::new();
    for row in std::iter::once(header.map(String::from)).chain(cells) {
        let line: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        let _ = writeln!(s, "{}", line.join("  "));
    }
    s
}

fn sweep_csv(rows: &[verify::SweepRow]) -> Outcome {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}
