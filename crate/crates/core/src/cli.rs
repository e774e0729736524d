//! Command-line front end for the `doubles` binary.
//!
//! Every command writes its result to stdout and diagnostics to stderr. JSON output is
//! canonical (sorted keys, fixed indentation) so repeated runs are byte-identical.
//!
//! Exit codes: 0 success or independent, 1 criterion failed, 2 invalid input.

use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use crate::covers::{
    alexander_from_seifert, decompose_cover_with, determinant_from_seifert, double_seifert_matrix,
    h1_order, CurveConvention,
};
use crate::criterion::{
    canonical_json, certify_independence_with, generate_family, Certificate, CertifyOptions,
    FamilyMember, Verdict,
};
use crate::error::Error;
use crate::instanton::{dedekind_sum, moduli_dimension_with_tolerance, HARD_TOLERANCE};
use crate::ledger::{
    build_p, build_r, build_z, cover_to_splice, default_crossing_count, splice_to_surgery, Knot,
};
use crate::seifert::{moser_surgery, normalize_seifert, Sign, SurgerySlope, TorusKnot};

/// Environment variable holding the default moduli-dimension tolerance.
pub const TOLERANCE_ENV: &str = "DOUBLES_TOLERANCE";

#[derive(Debug, Parser)]
#[command(
    name = "doubles",
    version,
    about = "Certify independence of iterated Whitehead doubles of torus knots"
)]
struct Cli {
    /// JSON run configuration (tolerance, threads, curve_order, verbose)
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Agreement tolerance between evaluation paths, in (0, 1e-3]
    #[arg(long, global = true)]
    tolerance: Option<f64>,

    /// Print progress diagnostics on stderr
    #[arg(short, long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Certify that a family of doubled torus knots is independent
    Certify(CertifyArgs),
    /// Generate a family satisfying the ordering criterion
    Generate(GenerateArgs),
    /// Moduli-space dimension R(a1, a2, a3)
    RDim {
        a1: u64,
        a2: u64,
        a3: u64,
        #[arg(long)]
        json: bool,
    },
    /// Identify 1/n surgery on T(p,q) as a Seifert sphere
    Moser {
        p: u64,
        q: u64,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        slope: SurgerySlope,
    },
    /// Intersection ledger of one of the cobordism constructions
    Cobordism(CobordismArgs),
    /// Decomposition and homology of the double branched cover of D^r(T(p,q))
    Cover {
        p: u64,
        q: u64,
        #[arg(long, default_value_t = 1)]
        depth: u32,
        /// Reading of literal boundary curves: mu-lambda or lambda-mu
        #[arg(long)]
        curve_order: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Dedekind sum s(b, c)
    Dedekind {
        #[arg(allow_hyphen_values = true)]
        b: i64,
        c: i64,
    },
}

#[derive(Debug, Args)]
struct CertifyArgs {
    /// Family as a JSON file, `-` for stdin, or inline `p,q,r;p,q,r`
    #[arg(long)]
    family: Option<String>,
    /// Read the family from stdin and write JSON to stdout (`--json -`)
    #[arg(long, value_name = "-")]
    json: Option<String>,
    /// Also write the certificate to this file
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print a human-readable table instead of JSON on stdout
    #[arg(long)]
    table: bool,
    /// Worker threads for member-level checks
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    /// First pair as `p,q`
    #[arg(long, default_value = "2,3")]
    start: String,
    #[arg(long, default_value_t = 3)]
    count: usize,
    /// Doubling depth recorded on every member
    #[arg(long, default_value_t = 1)]
    depth: u32,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    table: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Construction {
    #[value(name = "Z")]
    Z,
    #[value(name = "P")]
    P,
    #[value(name = "R")]
    R,
    CoverToSplice,
    SpliceToSurgery,
}

#[derive(Debug, Args)]
struct CobordismArgs {
    construction: Construction,
    #[arg(long, default_value = "2,3")]
    knot: String,
    #[arg(long, default_value_t = 2)]
    depth: u32,
    /// Crossing changes in the unknotting sequence (default (p-1)(q-1)/2)
    #[arg(long)]
    crossings: Option<u64>,
}

/// Settings readable from `--config`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RunConfig {
    tolerance: Option<f64>,
    threads: Option<usize>,
    curve_order: Option<String>,
    #[serde(default)]
    verbose: bool,
}

enum Failure {
    /// Usage or input error; exit 2.
    Invalid(String),
    /// A certificate was produced but the family failed; exit 1.
    Criterion,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, S>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(rendered.as_bytes());
                    0
                }
                _ => {
                    let _ = stderr.write_all(rendered.as_bytes());
                    2
                }
            };
        }
    };
    let mut io = Io {
        stdin,
        stdout,
        stderr,
    };
    match dispatch(cli, &mut io) {
        Ok(()) => 0,
        Err(Failure::Criterion) => 1,
        Err(Failure::Invalid(message)) => {
            let _ = writeln!(io.stderr, "error: {message}");
            2
        }
    }
}

fn dispatch(cli: Cli, io: &mut Io) -> Result<(), Failure> {
    let config = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Invalid(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str::<RunConfig>(&text)
                .map_err(|e| Failure::Invalid(format!("bad config {}: {e}", path.display())))?
        }
        None => RunConfig::default(),
    };
    let tolerance = resolve_tolerance(cli.tolerance, config.tolerance)?;
    let verbose = cli.verbose || config.verbose;

    match cli.command {
        Command::Certify(args) => certify(args, &config, tolerance, verbose, io),
        Command::Generate(args) => generate(args, io),
        Command::RDim { a1, a2, a3, json } => {
            let sphere = normalize_seifert(a1, a2, a3, Sign::Positive)?;
            let report = moduli_dimension_with_tolerance(&sphere, tolerance)?;
            if json {
                write!(io.stdout, "{}", canonical_json(&report))?;
            } else {
                writeln!(io.stdout, "{}", report.dimension)?;
            }
            Ok(())
        }
        Command::Moser { p, q, slope } => {
            let sphere = moser_surgery(TorusKnot::new(p, q)?, slope)?;
            writeln!(io.stdout, "{sphere}")?;
            Ok(())
        }
        Command::Cobordism(args) => cobordism(args, io),
        Command::Cover {
            p,
            q,
            depth,
            curve_order,
            json,
        } => {
            let convention: CurveConvention = curve_order
                .or_else(|| config.curve_order.clone())
                .as_deref()
                .unwrap_or("mu-lambda")
                .parse()?;
            let decomposition = decompose_cover_with(TorusKnot::new(p, q)?, depth, convention)?;
            let order = h1_order(&decomposition);
            let seifert = double_seifert_matrix(0);
            let determinant = determinant_from_seifert(&seifert);
            let alexander = alexander_from_seifert(&seifert);
            if json {
                let value = json!({
                    "decomposition": decomposition,
                    "h1_order": order.to_string(),
                    "determinant": determinant.to_string(),
                    "alexander": alexander,
                });
                write!(io.stdout, "{}", canonical_json(&value))?;
            } else {
                writeln!(io.stdout, "{decomposition}")?;
                writeln!(io.stdout, "|H_1| = {order}")?;
                writeln!(io.stdout, "det = {determinant}")?;
                writeln!(io.stdout, "Δ(t) = {alexander}")?;
            }
            Ok(())
        }
        Command::Dedekind { b, c } => {
            writeln!(io.stdout, "{}", dedekind_sum(b, c)?)?;
            Ok(())
        }
    }
}

/// Flag, then config file, then environment, then the built-in default.
fn resolve_tolerance(flag: Option<f64>, config: Option<f64>) -> Result<f64, Failure> {
    let from_env =
        match std::env::var(TOLERANCE_ENV) {
            Ok(text) => Some(text.trim().parse::<f64>().map_err(|_| {
                Failure::Invalid(format!("{TOLERANCE_ENV} is not a number: {text:?}"))
            })?),
            Err(_) => None,
        };
    let tolerance = flag.or(config).or(from_env).unwrap_or(HARD_TOLERANCE);
    if !(tolerance > 0.0 && tolerance <= HARD_TOLERANCE) {
        return Err(Failure::Invalid(format!(
            "tolerance must lie in (0, {HARD_TOLERANCE}], got {tolerance}"
        )));
    }
    Ok(tolerance)
}

fn certify(
    args: CertifyArgs,
    config: &RunConfig,
    tolerance: f64,
    verbose: bool,
    io: &mut Io,
) -> Result<(), Failure> {
    let source = match (&args.family, &args.json) {
        (Some(_), Some(_)) => {
            return Err(Failure::Invalid(
                "give exactly one of --family and --json -".into(),
            ))
        }
        (None, None) => return Err(Failure::Invalid("missing --family".into())),
        (Some(family), None) => family.clone(),
        (None, Some(dash)) if dash == "-" => "-".to_string(),
        (None, Some(other)) => {
            return Err(Failure::Invalid(format!(
                "--json only accepts `-`, got {other:?}"
            )))
        }
    };
    let text = if source == "-" {
        let mut buffer = String::new();
        io.stdin.read_to_string(&mut buffer)?;
        buffer
    } else if looks_inline(&source) {
        source.clone()
    } else {
        fs::read_to_string(&source)
            .map_err(|e| Failure::Invalid(format!("cannot read {source}: {e}")))?
    };

    let family = match parse_family(&text) {
        Ok(family) => family,
        Err(reason) => {
            write!(
                io.stdout,
                "{}",
                Certificate::invalid(reason.clone()).to_canonical_json()
            )?;
            return Err(Failure::Invalid(reason));
        }
    };

    let threads = args.threads.or(config.threads);
    let options = CertifyOptions { tolerance };
    let certificate = match threads {
        Some(0) => return Err(Failure::Invalid("--threads must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Failure::Invalid(e.to_string()))?
            .install(|| certify_independence_with(&family, &options))?,
        None => certify_independence_with(&family, &options)?,
    };
    if verbose {
        writeln!(
            io.stderr,
            "checked {} members, {} checks",
            family.len(),
            certificate.checks.len()
        )?;
    }

    let rendered = certificate.to_canonical_json();
    if let Some(path) = &args.out {
        fs::write(path, &rendered)
            .map_err(|e| Failure::Invalid(format!("cannot write {}: {e}", path.display())))?;
    }
    if args.table {
        write!(io.stdout, "{}", certificate_table(&certificate))?;
    } else {
        write!(io.stdout, "{rendered}")?;
    }
    match certificate.verdict {
        Verdict::Independent => Ok(()),
        _ => Err(Failure::Criterion),
    }
}

fn looks_inline(source: &str) -> bool {
    !source.trim_start().starts_with('[')
        && source.contains(',')
        && source
            .chars()
            .all(|c| c.is_ascii_digit() || ",; ".contains(c))
}

/// JSON array of `{"p","q","r"}` (optional `"k"`) or inline `p,q,r;p,q,r`.
pub fn parse_family(text: &str) -> Result<Vec<FamilyMember>, String> {
    let trimmed = text.trim();
    if trimmed.starts_with('[') {
        return serde_json::from_str(trimmed).map_err(|e| format!("bad family JSON: {e}"));
    }
    trimmed
        .split(';')
        .filter(|chunk| !chunk.trim().is_empty())
        .enumerate()
        .map(|(i, chunk)| {
            let numbers = chunk
                .split(',')
                .map(|n| n.trim().parse::<u64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| format!("member {i}: {e}"))?;
            let member = match numbers[..] {
                [p, q, r] => FamilyMember::new(p, q, None, r as u32),
                [p, q, k, r] => FamilyMember::new(p, q, Some(k), r as u32),
                _ => return Err(format!("member {i}: expected p,q,r or p,q,k,r")),
            };
            member.map_err(|e| format!("member {i}: {e}"))
        })
        .collect()
}

fn parse_pair(text: &str) -> Result<(u64, u64), Failure> {
    let parts: Vec<_> = text.split(',').map(|s| s.trim().parse::<u64>()).collect();
    match parts[..] {
        [Ok(p), Ok(q)] => Ok((p, q)),
        _ => Err(Failure::Invalid(format!(
            "expected a pair `p,q`, got {text:?}"
        ))),
    }
}

fn generate(args: GenerateArgs, io: &mut Io) -> Result<(), Failure> {
    let start = parse_pair(&args.start)?;
    let pairs = generate_family(start, args.count)?;
    let family = pairs
        .iter()
        .map(|&(p, q)| FamilyMember::new(p, q, None, args.depth))
        .collect::<Result<Vec<_>, _>>()?;
    let rendered = canonical_json(&family);
    if let Some(path) = &args.out {
        fs::write(path, &rendered)
            .map_err(|e| Failure::Invalid(format!("cannot write {}: {e}", path.display())))?;
    }
    if args.table {
        writeln!(
            io.stdout,
            "{:>4}  {:>12}  {:>12}  {:>24}  {:>24}",
            "i", "p", "q", "pq(pq-1)", "pq(4pq-1)"
        )?;
        for (i, &(p, q)) in pairs.iter().enumerate() {
            let one = crate::instanton::ordering_key(p, q, 1)?;
            let four = crate::instanton::ordering_key(p, q, 4)?;
            writeln!(io.stdout, "{i:>4}  {p:>12}  {q:>12}  {one:>24}  {four:>24}")?;
        }
    } else {
        write!(io.stdout, "{rendered}")?;
    }
    Ok(())
}

fn cobordism(args: CobordismArgs, io: &mut Io) -> Result<(), Failure> {
    let (p, q) = parse_pair(&args.knot)?;
    let knot = TorusKnot::new(p, q)?;
    let r = args.depth;
    let ledger = match args.construction {
        Construction::Z => build_z(knot, r)?,
        Construction::P => build_p(knot, r)?,
        Construction::R => build_r(knot, r)?,
        Construction::CoverToSplice => cover_to_splice(
            knot,
            r,
            args.crossings
                .unwrap_or_else(|| default_crossing_count(knot)),
        )?,
        Construction::SpliceToSurgery => {
            if r < 2 {
                return Err(Error::Depth { depth: r, min: 2 }.into());
            }
            splice_to_surgery(Knot::Torus(knot), Knot::double(Knot::Unknot, r - 1, -2))
        }
    };
    write!(io.stdout, "{}", canonical_json(&ledger))?;
    Ok(())
}

fn certificate_table(certificate: &Certificate) -> String {
    let mut out = String::new();
    let family: Vec<String> = certificate
        .family
        .iter()
        .map(|m| format!("D^{}(T_{{{},{}}})", m.r, m.p, m.q))
        .collect();
    out.push_str(&format!("family: {}\n", family.join(", ")));
    let width = certificate
        .checks
        .iter()
        .map(|c| c.name.len())
        .max()
        .unwrap_or(0);
    for check in &certificate.checks {
        let mark = if check.passed() { "pass" } else { "FAIL" };
        out.push_str(&format!("{:<width$}  {mark}\n", check.name));
    }
    let verdict = match &certificate.verdict {
        Verdict::Independent => "independent".to_string(),
        Verdict::CriterionFailed {
            check,
            index,
            next: Some(next),
        } => {
            format!("criterion failed: {check} at {index}→{next}")
        }
        Verdict::CriterionFailed {
            check,
            index,
            next: None,
        } => {
            format!("criterion failed: {check} at {index}")
        }
        Verdict::InvalidInput { reason } => format!("invalid input: {reason}"),
    };
    out.push_str(&format!("verdict: {verdict}\n"));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut input = stdin.as_bytes();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("doubles").chain(args.iter().copied());
        let code = run(argv, &mut input, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn inline_family_parsing() {
        let family = parse_family("2,3,1;2,7,2").unwrap();
        assert_eq!(family.len(), 2);
        assert_eq!(family[1].r, 2);
        assert!(parse_family("2,4,1").is_err());
        assert!(parse_family("2,3").is_err());
        let json = parse_family(r#"[{"p":2,"q":3,"r":1}]"#).unwrap();
        assert_eq!(json[0].q, 3);
    }

    #[test]
    fn query_commands() {
        assert_eq!(
            run_capture(&["r-dim", "2", "3", "5"], ""),
            (0, "1\n".into(), String::new())
        );
        assert_eq!(
            run_capture(&["moser", "2", "3", "--slope", "1/4"], "").1,
            "−Σ(2,3,23)\n"
        );
        assert_eq!(run_capture(&["dedekind", "1", "3"], "").1, "1/18\n");
        let (code, _, err) = run_capture(&["moser", "2", "4"], "");
        assert_eq!(code, 2);
        assert!(err.contains("not coprime"));
    }

    #[test]
    fn tolerance_bounds() {
        assert_eq!(
            run_capture(&["--tolerance", "0.5", "r-dim", "2", "3", "5"], "").0,
            2
        );
        assert_eq!(
            run_capture(&["--tolerance", "1e-6", "r-dim", "2", "3", "5"], "").0,
            0
        );
    }

    #[test]
    fn certify_exit_codes() {
        assert_eq!(
            run_capture(&["certify", "--family", "2,3,1;2,7,2"], "").0,
            0
        );
        let (code, out, _) = run_capture(&["certify", "--family", "2,3,1;2,5,1"], "");
        assert_eq!(code, 1);
        assert!(out.contains("\"criterion-failed\""));
        assert!(out.contains("138 ≮ 90"));
        let (code, _, _) = run_capture(&["certify", "--json", "-"], r#"[{"p":2,"q":3,"r":1}]"#);
        assert_eq!(code, 0);
        assert_eq!(run_capture(&["certify"], "").0, 2);
        let (code, out, _) = run_capture(&["certify", "--family", "2,4,1"], "");
        assert_eq!(code, 2);
        assert!(out.contains("invalid-input"));
    }
}
