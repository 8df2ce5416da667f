//! The `theta-envelope` command line.
//!
//! Exit codes: 0 on success, 1 when a verification or table comparison
//! fails, 2 for usage and parse errors.

use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use crate::angle::Angle;
use crate::elliptic::{CurvePoint, PointOrder};
use crate::envelopes::generate_envelopes;
use crate::error::{Error, Result};
use crate::rational::{parse_rational, Rational};
use crate::records::{read_records, write_records, EnvelopeRecord, Format, RecordStatus};
use crate::reproduce::reproduce;
use crate::search::{
    find_envelope_adhoc, heuristic_rank_positive, theta_congruent_heuristic, Evidence, SearchBudget,
    DEFAULT_HEIGHT,
};
use crate::theta_curves::{classify_torsion, independent_point, make_e_theta, make_g_cubic};
use crate::transforms::{cubic_to_quartic, ct_to_et, et_to_ct, quartic_to_cubic, CtPoint};

#[derive(Parser, Debug)]
#[command(name = "theta-envelope", version, about = "Exact rational theta-parallelogram envelopes")]
struct Cli {
    /// Worker threads for parallel searches (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Jsonl,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Jsonl => Format::JsonLines,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check envelope records read from FILE or standard input.
    Verify {
        file: Option<String>,
        #[arg(long, value_enum, default_value = "jsonl")]
        format: FormatArg,
    },
    /// Torsion of G_theta^m with its witnesses.
    Classify {
        r: i64,
        #[arg(allow_hyphen_values = true)]
        s: i64,
        m: String,
    },
    /// Envelopes for n at a Pythagorean angle.
    Generate {
        r: i64,
        #[arg(allow_hyphen_values = true)]
        s: i64,
        n: u64,
        #[arg(long, default_value_t = 3)]
        count: usize,
        #[arg(long, value_enum, default_value = "jsonl")]
        format: FormatArg,
    },
    /// Recompute a reference table (1 to 5, or `all`) and report differences.
    Reproduce { table: String },
    /// Bounded searches; never reports impossibility.
    Search {
        #[arg(value_enum)]
        mode: SearchMode,
        r: i64,
        #[arg(allow_hyphen_values = true)]
        s: i64,
        /// `n` for envelope and congruent, `m` for rank.
        value: String,
        #[arg(long, default_value_t = DEFAULT_HEIGHT)]
        height: u64,
        /// Time limit in seconds.
        #[arg(long)]
        time: Option<f64>,
        #[arg(long, value_enum, default_value = "jsonl")]
        format: FormatArg,
    },
    /// Apply a birational map to explicit coordinates.
    Transform {
        #[command(subcommand)]
        map: Transform,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SearchMode {
    Envelope,
    Congruent,
    Rank,
}

#[derive(Subcommand, Debug)]
enum Transform {
    /// G_theta^m point (X, Y), or `inf`, to the quartic in (x, z).
    CubicToQuartic {
        r: i64,
        #[arg(allow_hyphen_values = true)]
        s: i64,
        m: String,
        n: u64,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: Option<String>,
    },
    /// Quartic point (x, z) back to G_theta^m.
    QuarticToCubic {
        r: i64,
        #[arg(allow_hyphen_values = true)]
        s: i64,
        m: String,
        n: u64,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        z: String,
    },
    /// C_T point (x, y) to E_T.
    CtToEt {
        t: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// E_T point (X, Y), or `inf`, to C_T.
    EtToCt {
        t: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: Option<String>,
    },
}

/// Runs the tool on the process arguments and standard streams.
pub fn run() -> i32 {
    let stdin = std::io::stdin();
    let mut input = stdin.lock();
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    run_with(std::env::args(), &mut input, &mut out, &mut err)
}

/// Runs the tool with explicit streams. The first argument is the program
/// name. Returns the exit code.
pub fn run_with<I, T>(args: I, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let mut stdin = Vec::new();
    if matches!(cli.command, Command::Verify { file: None, .. }) {
        if let Err(e) = input.read_to_end(&mut stdin) {
            let _ = writeln!(err, "error: cannot read standard input: {e}");
            return 2;
        }
    }
    let mut buffer = Vec::new();
    let result = match cli.workers {
        Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
            Ok(pool) => pool.install(|| dispatch(cli.command, &mut &stdin[..], &mut buffer)),
            Err(e) => Err(Error::Internal(e.to_string())),
        },
        None => dispatch(cli.command, &mut &stdin[..], &mut buffer),
    };
    if let Err(e) = out.write_all(&buffer).and_then(|_| out.flush()) {
        let _ = writeln!(err, "error: {e}");
        return 1;
    }
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Domain(_) | Error::Parse(_) => 2,
                _ => 1,
            }
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Internal(e.to_string())
}

fn dispatch(command: Command, input: &mut &[u8], out: &mut Vec<u8>) -> Result<i32> {
    match command {
        Command::Verify { file, format } => match file {
            Some(path) => {
                let f = File::open(&path).map_err(|e| Error::Parse(format!("cannot open {path}: {e}")))?;
                verify(&mut BufReader::new(f), format.into(), out)
            }
            None => verify(input, format.into(), out),
        },
        Command::Classify { r, s, m } => classify(&Angle::new(r, s)?, &parse_rational(&m)?, out),
        Command::Generate { r, s, n, count, format } => {
            let angle = Angle::new(r, s)?;
            let envelopes = generate_envelopes(&angle, n, count)?;
            let records = envelopes
                .iter()
                .map(|e| EnvelopeRecord::from_envelope(e, n))
                .collect::<Result<Vec<_>>>()?;
            write_records(out, &records, format.into())?;
            Ok(0)
        }
        Command::Reproduce { table } => {
            let ids: Vec<u8> = if table == "all" {
                (1..=5).collect()
            } else {
                vec![table
                    .parse()
                    .map_err(|_| Error::Parse(format!("table must be 1 to 5 or `all`, got {table:?}")))?]
            };
            let mut code = 0;
            for id in ids {
                let report = reproduce(id)?;
                for line in &report.lines {
                    writeln!(out, "{line}").map_err(io)?;
                }
                writeln!(out, "{}", report.summary()).map_err(io)?;
                if !report.ok() {
                    code = 1;
                }
            }
            Ok(code)
        }
        Command::Search { mode, r, s, value, height, time, format } => {
            let time = time
                .map(|t| Duration::try_from_secs_f64(t).map_err(|e| Error::Parse(format!("--time: {e}"))))
                .transpose()?;
            let budget = SearchBudget::new(height, time)?;
            search(mode, &Angle::new(r, s)?, &value, &budget, format.into(), out)
        }
        Command::Transform { map } => transform(map, out),
    }
}

fn verify(input: &mut dyn BufRead, format: Format, out: &mut dyn Write) -> Result<i32> {
    let (mut passed, mut failed, mut malformed) = (0usize, 0usize, 0usize);
    for (line, rec) in read_records(input, format) {
        let status = rec.and_then(|r| r.check());
        let text = match status {
            Ok(RecordStatus::Pass) => {
                passed += 1;
                "pass".to_string()
            }
            Ok(RecordStatus::NonPositive) => {
                failed += 1;
                "FAIL: components must be positive".to_string()
            }
            Ok(RecordStatus::Fail(relations)) => {
                failed += 1;
                let names: Vec<String> = relations.iter().map(ToString::to_string).collect();
                format!("FAIL {}", names.join("; "))
            }
            Err(e) => {
                malformed += 1;
                format!("parse error: {e}")
            }
        };
        writeln!(out, "line {line}: {text}").map_err(io)?;
    }
    writeln!(
        out,
        "{} records: {passed} passed, {failed} failed, {malformed} malformed",
        passed + failed + malformed
    )
    .map_err(io)?;
    Ok(if malformed > 0 {
        2
    } else if failed > 0 {
        1
    } else {
        0
    })
}

fn join(points: &[CurvePoint]) -> String {
    if points.is_empty() {
        return "none".into();
    }
    points.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn classify(angle: &Angle, m: &Rational, out: &mut dyn Write) -> Result<i32> {
    let class = classify_torsion(angle, m)?;
    let curve = make_g_cubic(angle, m)?;
    let q = &class.quantities;
    let root = |r: &Option<Rational>| r.as_ref().map_or("irrational".to_string(), |v| v.to_string());
    let p = independent_point(angle, m)?;
    let order = curve.point_order(&p)?;
    let mut lines = vec![
        format!("curve: {curve}"),
        format!("torsion: {}", class.structure),
        format!("M0 = {} (sqrt {})", q.m0, root(&q.sqrt_m0)),
        format!("M1 = {} (sqrt {})", q.m1, root(&q.sqrt_m1)),
        format!("M2 = {} (sqrt {})", q.m2, root(&q.sqrt_m2)),
        format!("order 2: {}", join(&class.two_torsion)),
        format!("order 4: {}", join(&class.order_four)),
        format!("order 8: {}", join(&class.order_eight)),
        format!("P = {p}, order {order}"),
    ];
    if order == PointOrder::Infinite {
        lines.push("rank witness: P has infinite order, so the rank is at least 1".into());
    }
    for line in lines {
        writeln!(out, "{line}").map_err(io)?;
    }
    Ok(0)
}

fn parse_n(value: &str) -> Result<u64> {
    value
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| Error::Parse(format!("n must be a positive integer, got {value:?}")))
}

fn search(
    mode: SearchMode,
    angle: &Angle,
    value: &str,
    budget: &SearchBudget,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32> {
    let unknown = format!("unknown within budget (height {})", budget.height_bound());
    match mode {
        SearchMode::Envelope => {
            let n = parse_n(value)?;
            match find_envelope_adhoc(angle, n, budget) {
                Some(env) => write_records(out, &[EnvelopeRecord::from_envelope(&env, n)?], format)?,
                None => writeln!(out, "{unknown}").map_err(io)?,
            }
        }
        SearchMode::Congruent => {
            let n = parse_n(value)?;
            let curve = make_e_theta(angle, &Rational::from_integer(n.into()))?;
            match theta_congruent_heuristic(angle, n, budget)? {
                Evidence::Witness(p) => writeln!(out, "witness: {p} on {curve}").map_err(io)?,
                Evidence::Unknown => writeln!(out, "{unknown}").map_err(io)?,
            }
        }
        SearchMode::Rank => {
            let m = parse_rational(value)?;
            match heuristic_rank_positive(angle, &m, budget)? {
                Evidence::Witness(p) => {
                    let via = if p == independent_point(angle, &m)? { " (the point P)" } else { "" };
                    writeln!(out, "rank >= 1: {p} has infinite order{via}").map_err(io)?
                }
                Evidence::Unknown => writeln!(out, "{unknown}").map_err(io)?,
            }
        }
    }
    Ok(0)
}

fn point(x: &str, y: Option<&str>) -> Result<CurvePoint> {
    match (x, y) {
        ("inf", None) => Ok(CurvePoint::Infinity),
        (x, Some(y)) => Ok(CurvePoint::affine(parse_rational(x)?, parse_rational(y)?)),
        (x, None) => Err(Error::Parse(format!("missing y coordinate after {x}"))),
    }
}

fn transform(map: Transform, out: &mut dyn Write) -> Result<i32> {
    let text = match map {
        Transform::CubicToQuartic { r, s, m, n, x, y } => {
            let p = point(&x, y.as_deref())?;
            let (x, z) = cubic_to_quartic(&Angle::new(r, s)?, &parse_rational(&m)?, n, &p)?;
            format!("({x}, {z})")
        }
        Transform::QuarticToCubic { r, s, m, n, x, z } => {
            let (x, z) = (parse_rational(&x)?, parse_rational(&z)?);
            quartic_to_cubic(&Angle::new(r, s)?, &parse_rational(&m)?, n, &x, &z)?.to_string()
        }
        Transform::CtToEt { t, x, y } => {
            ct_to_et(&parse_rational(&t)?, &parse_rational(&x)?, &parse_rational(&y)?)?.to_string()
        }
        Transform::EtToCt { t, x, y } => match et_to_ct(&parse_rational(&t)?, &point(&x, y.as_deref())?)? {
            CtPoint::Affine { x, y } => format!("({x}, {y})"),
            CtPoint::AtInfinity => "point at infinity".to_string(),
        },
    };
    writeln!(out, "{text}").map_err(io)?;
    Ok(0)
}
