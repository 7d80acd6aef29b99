//! Command-line surface: sequence generation, SVG rendering, similarity
//! verification, and convergence reporting.
//!
//! Exit codes: 0 all checks passed, 1 a verification found a counterexample,
//! 2 invalid input or an unsatisfied hypothesis.

mod parse;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use dekking::curves::{scaling_info, DekkingCurve};
use dekking::cyclotomic::embed_batch;
use dekking::hausdorff::{
    convergence_report, hausdorff_distance, koch_reference, scaled_prefix_set_with,
    DEFAULT_SEGMENT_CAP,
};
use dekking::similarity::certify_main_result;
use dekking::turtle::{Interpreter, TurtleCurve};
use dekking::words::{pair_parts, SequenceSpec};

const INSTRUCTION_GRAMMAR: &str = "\
Interpreter instructions are written TRANSLATION@ROTATION.
  TRANSLATION: a sum of terms, each RATIONAL, z(m,e), or RATIONAL*z(m,e),
               where z(m,e) denotes the root of unity zeta_m^e.
               Examples: 1, 0, -1, 3/2, 1-2*z(3,1)
  ROTATION:    1 (no turn) or E/M for zeta_M^E. Examples: 1/6, -1/6, 1
So --tau0 \"1@1\" --tau1 \"0@1/6\" steps forward on 0 and turns by zeta_6 on 1.
Numbers such as widths accept decimals (0.001), scientific (1e-9), or a/b.

The segment cap for convergence sets can be overridden with the
DEKKING_SEGMENT_CAP environment variable.";

#[derive(Parser)]
#[command(
    name = "dekking",
    version,
    about = "Thue-Morse turtle curves, Dekking sums, and their shared limit curves",
    after_long_help = INSTRUCTION_GRAMMAR
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a prefix of t_p, f_q, or z_(p,q)
    Seq(SeqArgs),
    /// Render a turtle curve as SVG
    Render(RenderArgs),
    /// Certify the similarity chain of a Thue-Morse turtle curve
    Verify(VerifyArgs),
    /// Convergence table of the scaled prefixes of a Dekking curve
    Converge(ConvergeArgs),
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Args)]
struct SeqArgs {
    /// Thue-Morse sequence over P symbols
    #[arg(long, value_name = "P", conflicts_with_all = ["periodic", "dekking"])]
    tm: Option<u32>,
    /// Periodic sequence n mod Q
    #[arg(long, value_name = "Q", conflicts_with = "dekking")]
    periodic: Option<u32>,
    /// Dekking sequence z_(P,Q)
    #[arg(long, num_args = 2, value_names = ["P", "Q"])]
    dekking: Option<Vec<u32>>,
    /// How many symbols to emit
    #[arg(long)]
    len: u64,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    /// Dekking curve parameters P Q K
    #[arg(long, num_args = 3, value_names = ["P", "Q", "K"])]
    dekking: Option<Vec<u32>>,
    /// Thue-Morse turtle curve over P symbols; requires --tau0 .. --tau(P-1)
    #[arg(long, value_name = "P", conflicts_with = "dekking")]
    tm: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    tau0: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    tau1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    tau2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    tau3: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    tau4: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    tau5: Option<String>,
    /// Number of curve steps to draw
    #[arg(long)]
    steps: u64,
    /// Pixels per unit length
    #[arg(long, default_value_t = 40.0)]
    scale: f64,
    /// Certified embedding width for the endpoints
    #[arg(long, default_value = "1e-12")]
    width: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Number of symbols of the driving Thue-Morse sequence (must be 2)
    #[arg(long, value_name = "P", default_value_t = 2)]
    tm: u32,
    #[arg(long, allow_hyphen_values = true)]
    tau0: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    tau1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    tau2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    tau3: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    tau4: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    tau5: Option<String>,
    /// Exact-check depth for every witness
    #[arg(long, default_value_t = 1000)]
    depth: u64,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConvergeArgs {
    /// Dekking curve parameters P Q K
    #[arg(long, num_args = 3, value_names = ["P", "Q", "K"], required = true)]
    dekking: Vec<u32>,
    /// Number of levels (rows n = 0 .. N-1)
    #[arg(long = "n", value_name = "N")]
    levels: u32,
    /// Arc-length sampling step for the Hausdorff distance
    #[arg(long, default_value_t = 1e-3)]
    resolution: f64,
    /// Certified embedding width for set endpoints
    #[arg(long, default_value = "1e-12")]
    width: String,
    /// Also report the distance of each S_n to the Koch reference polyline
    #[arg(long)]
    against_koch: bool,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<dekking::Error> for Failure {
    fn from(e: dekking::Error) -> Self {
        Failure::invalid(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Seq(args) => cmd_seq(args),
        Command::Render(args) => cmd_render(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Converge(args) => cmd_converge(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn write_output(out: &Option<PathBuf>, content: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Failure::invalid(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn parse_width(s: &str) -> Result<BigRational, Failure> {
    let w = parse::parse_rational(s).map_err(Failure::invalid)?;
    if !w.is_positive() {
        return Err(Failure::invalid("width must be positive"));
    }
    Ok(w)
}

fn segment_cap() -> Result<u64, Failure> {
    match std::env::var("DEKKING_SEGMENT_CAP") {
        Ok(v) => v
            .parse()
            .map_err(|_| Failure::invalid(format!("bad DEKKING_SEGMENT_CAP '{v}'"))),
        Err(_) => Ok(DEFAULT_SEGMENT_CAP),
    }
}

fn cmd_seq(args: SeqArgs) -> Result<u8, Failure> {
    let spec = if let Some(p) = args.tm {
        SequenceSpec::thue_morse(p)?
    } else if let Some(q) = args.periodic {
        SequenceSpec::periodic(q)?
    } else if let Some(pq) = &args.dekking {
        SequenceSpec::dekking(pq[0], pq[1])?
    } else {
        return Err(Failure::invalid("choose one of --tm, --periodic, --dekking"));
    };

    let pair_base = match spec {
        SequenceSpec::Dekking { q, .. } => Some(q),
        _ => None,
    };
    let symbols = (0..args.len).map(|n| spec.symbol(n));
    let content = match (args.format, pair_base) {
        (TableFormat::Csv, None) => {
            let row: Vec<String> = symbols.map(|s| s.index().to_string()).collect();
            format!("{}\n", row.join(","))
        }
        (TableFormat::Csv, Some(q)) => {
            let row: Vec<String> = symbols
                .map(|s| {
                    let (x, y) = pair_parts(s, q);
                    format!("\"({x},{y})\"")
                })
                .collect();
            format!("{}\n", row.join(","))
        }
        (TableFormat::Json, None) => {
            let row: Vec<u32> = symbols.map(|s| s.index()).collect();
            format!("{}\n", serde_json::to_string(&row).expect("serializing integers"))
        }
        (TableFormat::Json, Some(q)) => {
            let row: Vec<String> = symbols
                .map(|s| {
                    let (x, y) = pair_parts(s, q);
                    format!("({x},{y})")
                })
                .collect();
            format!("{}\n", serde_json::to_string(&row).expect("serializing strings"))
        }
    };
    write_output(&args.out, &content)?;
    Ok(0)
}

fn collect_taus(taus: [&Option<String>; 6], p: u32) -> Result<Interpreter, Failure> {
    if p as usize > taus.len() {
        return Err(Failure::invalid(format!(
            "at most {} interpreter slots supported",
            taus.len()
        )));
    }
    let mut images = Vec::with_capacity(p as usize);
    for (i, slot) in taus.iter().enumerate().take(p as usize) {
        let Some(text) = slot else {
            return Err(Failure::invalid(format!("--tau{i} is required for p = {p}")));
        };
        images.push(parse::parse_instruction(text).map_err(Failure::invalid)?);
    }
    for (i, slot) in taus.iter().enumerate().skip(p as usize) {
        if slot.is_some() {
            return Err(Failure::invalid(format!(
                "--tau{i} given but the alphabet has {p} symbols"
            )));
        }
    }
    Ok(Interpreter::new(images)?)
}

fn cmd_render(args: RenderArgs) -> Result<u8, Failure> {
    if args.steps == 0 {
        return Err(Failure::invalid("--steps must be at least 1"));
    }
    let width = parse_width(&args.width)?;
    let curve: TurtleCurve = if let Some(pqk) = &args.dekking {
        DekkingCurve::new(pqk[0], pqk[1], pqk[2])?.to_turtle()
    } else if let Some(p) = args.tm {
        let interp = collect_taus(
            [&args.tau0, &args.tau1, &args.tau2, &args.tau3, &args.tau4, &args.tau5],
            p,
        )?;
        TurtleCurve::new(SequenceSpec::thue_morse(p)?, interp)?
    } else {
        return Err(Failure::invalid("choose --dekking P Q K or --tm P with --tau flags"));
    };
    let points = curve.points(args.steps as usize + 1);
    let embedded = embed_batch(&points, &width)?;
    let content = svg::render_polyline(&embedded, args.scale);
    write_output(&args.out, &content)?;
    Ok(0)
}

#[derive(Serialize)]
struct WitnessRow {
    label: String,
    scale: String,
    lhs_stride: u64,
    rhs_stride: u64,
    passed: bool,
    first_counterexample: Option<u64>,
}

#[derive(Serialize)]
struct VerifyReport {
    b: u32,
    q: u32,
    k2: u32,
    d: u32,
    k1: u32,
    target: String,
    big_q: u64,
    r: String,
    modulus_lower: f64,
    modulus_upper: f64,
    regular: bool,
    koch: bool,
    depth: u64,
    witnesses: Vec<WitnessRow>,
    all_passed: bool,
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, Failure> {
    let interp = collect_taus(
        [&args.tau0, &args.tau1, &args.tau2, &args.tau3, &args.tau4, &args.tau5],
        args.tm,
    )?;
    let curve = TurtleCurve::new(SequenceSpec::thue_morse(args.tm)?, interp)?;
    let cert = certify_main_result(&curve)?;

    let rows: Vec<WitnessRow> = cert
        .verify(args.depth)
        .into_iter()
        .zip(cert.chain.iter().chain([&cert.composed]))
        .map(|((label, report), witness)| WitnessRow {
            label,
            scale: witness.scale.to_string(),
            lhs_stride: witness.lhs_stride,
            rhs_stride: witness.rhs_stride,
            passed: report.passed(),
            first_counterexample: report.violation,
        })
        .collect();
    let all_passed = rows.iter().all(|r| r.passed);

    let report = VerifyReport {
        b: cert.b,
        q: cert.q,
        k2: cert.k2,
        d: cert.d,
        k1: cert.k1,
        target: cert.target.to_string(),
        big_q: cert.target_scaling.big_q,
        r: cert.target_scaling.r.to_string(),
        modulus_lower: cert.target_scaling.modulus.lower.to_f64().unwrap_or(f64::NAN),
        modulus_upper: cert.target_scaling.modulus.upper.to_f64().unwrap_or(f64::NAN),
        regular: cert.target_scaling.regular,
        koch: cert.koch,
        depth: args.depth,
        witnesses: rows,
        all_passed,
    };

    let content = match args.format {
        ReportFormat::Json => {
            format!("{}\n", serde_json::to_string_pretty(&report).expect("serializable report"))
        }
        ReportFormat::Text => {
            let mut s = String::new();
            s.push_str(&format!(
                "heading order decomposition: 2^{} * {} with exponent k2 = {}\n",
                report.b, report.q, report.k2
            ));
            s.push_str(&format!(
                "target: {} via d = {}, k1 = {} (Q = {}, r = {}, |r| in [{:.12}, {:.12}], regular: {})\n",
                report.target,
                report.d,
                report.k1,
                report.big_q,
                report.r,
                report.modulus_lower,
                report.modulus_upper,
                report.regular
            ));
            s.push_str(&format!("koch case: {}\n", if report.koch { "yes" } else { "no" }));
            for w in &report.witnesses {
                match w.first_counterexample {
                    None => s.push_str(&format!(
                        "witness {} [c = {}, strides {}:{}]: pass (n <= {})\n",
                        w.label, w.scale, w.lhs_stride, w.rhs_stride, report.depth
                    )),
                    Some(n) => s.push_str(&format!(
                        "witness {} [c = {}, strides {}:{}]: FAIL at n = {}\n",
                        w.label, w.scale, w.lhs_stride, w.rhs_stride, n
                    )),
                }
            }
            s.push_str(if all_passed {
                "result: all witnesses verified\n"
            } else {
                "result: counterexample found\n"
            });
            s
        }
    };
    write_output(&args.out, &content)?;
    Ok(if all_passed { 0 } else { 1 })
}

#[derive(Serialize)]
struct ConvergeRowOut {
    level: u32,
    step_value: f64,
    step_error: f64,
    bound: f64,
    tail_bound: f64,
    within_bound: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    koch_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    koch_error: Option<f64>,
}

fn cmd_converge(args: ConvergeArgs) -> Result<u8, Failure> {
    if args.levels == 0 {
        return Err(Failure::invalid("--n must be at least 1"));
    }
    if !(args.resolution > 0.0) {
        return Err(Failure::invalid("--resolution must be positive"));
    }
    let width = parse_width(&args.width)?;
    let cap = segment_cap()?;
    let curve = DekkingCurve::new(args.dekking[0], args.dekking[1], args.dekking[2])?;
    let rows = convergence_report(&curve, args.levels, args.resolution, &width, cap)?;

    let mut out_rows = Vec::with_capacity(rows.len());
    let info = scaling_info(&curve)?;
    for row in &rows {
        let (koch_value, koch_error) = if args.against_koch {
            let set = scaled_prefix_set_with(&curve, &info, row.level, &width, cap)?;
            let d = hausdorff_distance(&set, &koch_reference(row.level), args.resolution)?;
            (Some(d.value), Some(d.error))
        } else {
            (None, None)
        };
        out_rows.push(ConvergeRowOut {
            level: row.level,
            step_value: row.step_distance.value,
            step_error: row.step_distance.error,
            bound: row.bound,
            tail_bound: row.tail_bound,
            within_bound: row.within_bound,
            koch_value,
            koch_error,
        });
    }

    let content = match args.format {
        TableFormat::Json => {
            format!("{}\n", serde_json::to_string_pretty(&out_rows).expect("serializable rows"))
        }
        TableFormat::Csv => {
            let mut s = String::new();
            if args.against_koch {
                s.push_str(
                    "level,step_value,step_error,bound,tail_bound,within_bound,koch_value,koch_error\n",
                );
            } else {
                s.push_str("level,step_value,step_error,bound,tail_bound,within_bound\n");
            }
            for r in &out_rows {
                s.push_str(&format!(
                    "{},{},{},{},{},{}",
                    r.level, r.step_value, r.step_error, r.bound, r.tail_bound, r.within_bound
                ));
                if args.against_koch {
                    s.push_str(&format!(
                        ",{},{}",
                        r.koch_value.unwrap_or(f64::NAN),
                        r.koch_error.unwrap_or(f64::NAN)
                    ));
                }
                s.push('\n');
            }
            s
        }
    };
    write_output(&args.out, &content)?;
    Ok(0)
}
