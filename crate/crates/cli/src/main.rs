use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use lefschetz_cli::sweep::{run_sweep, SweepPlan};
use lefschetz_cli::{
    compare_engines, hilbert_function_with_oracle, parse_range, report_json, verdict_exit_code,
};
use lefschetz_core::oracle::DEFAULT_PRIME;
use lefschetz_core::reduction::DimValue;
use lefschetz_core::{
    dim_linear_system, hilbert_function, oracle_linsys_dim, Error, LinearSystem, PowerSequence,
    PrimeFieldConfig, RankReport, Verdict,
};

/// Exit codes: 0 verified / computed, 1 counterexample or engine
/// disagreement, 2 malformed input, 3 inconclusive.
const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "lefschetz",
    version,
    about = "Hilbert functions, fat-point linear systems and maximal-rank checks \
             for quotients of K[x,y,z] by powers of general linear forms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hilbert function of the artinian quotient by the given powers
    Hf(HfArgs),
    /// Exact dimension of a plane fat-point linear system
    Linsys(LinsysArgs),
    /// Maximal-rank verdict for multiplication by a power of a general form
    Verify(VerifyArgs),
    /// Seeded verification campaign over random exponent sequences
    Sweep(SweepArgs),
}

#[derive(Args)]
struct FieldArgs {
    /// Prime modulus for the oracle
    #[arg(long, env = "LEFSCHETZ_PRIME", default_value_t = DEFAULT_PRIME)]
    prime: u64,
    /// Seed for the oracle's random specializations
    #[arg(long, env = "LEFSCHETZ_SEED", default_value_t = 0)]
    seed: u64,
    /// Random specializations per oracle query
    #[arg(long, default_value_t = 3)]
    trials: u32,
}

impl FieldArgs {
    fn config(&self) -> PrimeFieldConfig {
        PrimeFieldConfig {
            prime: self.prime,
            trials: self.trials,
            seed: self.seed,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum HfFormat {
    Table,
    Json,
    Csv,
}

#[derive(Args)]
struct HfArgs {
    /// Comma-separated exponents, e.g. 5,6,6,6,6,6
    #[arg(long, value_delimiter = ',', required = true)]
    powers: Vec<i64>,
    #[arg(long, value_enum, default_value_t = HfFormat::Table)]
    format: HfFormat,
    /// Fall back to the modular oracle for undetermined degrees
    #[arg(long)]
    oracle: bool,
    #[command(flatten)]
    field: FieldArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Human,
    Json,
}

#[derive(Args)]
struct LinsysArgs {
    /// Degree of the plane curves
    #[arg(long)]
    degree: i64,
    /// Comma-separated multiplicities, e.g. 3,2,2 (empty allowed)
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    mults: Vec<i64>,
    /// Print the reduction certificate
    #[arg(long)]
    trace: bool,
    /// Also compute the dimension with the modular oracle and compare
    #[arg(long)]
    oracle: bool,
    #[arg(long, value_enum, default_value_t = ReportFormat::Human)]
    format: ReportFormat,
    #[command(flatten)]
    field: FieldArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated exponents, e.g. 5,6,6,6,6,6
    #[arg(long, value_delimiter = ',', required = true)]
    powers: Vec<i64>,
    /// Power of the general form to multiply by
    #[arg(long, default_value_t = 2)]
    shift: i64,
    /// Double-check with the modular oracle
    #[arg(long)]
    oracle: bool,
    #[arg(long, value_enum, default_value_t = ReportFormat::Human)]
    format: ReportFormat,
    #[command(flatten)]
    field: FieldArgs,
}

#[derive(Args)]
struct SweepArgs {
    /// Inclusive range of sequence lengths, e.g. 5..10
    #[arg(long)]
    r: String,
    /// Inclusive range of exponents, e.g. 1..12
    #[arg(long)]
    a: String,
    /// Number of sequences to sample
    #[arg(long)]
    count: usize,
    /// Worker threads (default: all cores)
    #[arg(long)]
    jobs: Option<usize>,
    /// Output JSONL file, one record per verified sequence
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    field: FieldArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Hf(args) => cmd_hf(args),
        Command::Linsys(args) => cmd_linsys(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Sweep(args) => cmd_sweep(args),
    };
    ExitCode::from(code)
}

fn usage_error(msg: &str) -> u8 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}

fn cmd_hf(args: HfArgs) -> u8 {
    let powers = match PowerSequence::new(args.powers) {
        Ok(p) => p,
        Err(e) => return usage_error(&e.to_string()),
    };
    let hf = if args.oracle {
        hilbert_function_with_oracle(&powers, &args.field.config())
    } else {
        hilbert_function(&powers)
    };
    let hf = match hf {
        Ok(hf) => hf,
        Err(Error::Undetermined { degree }) => {
            eprintln!("degree {degree} is undetermined; rerun with --oracle");
            return EXIT_INCONCLUSIVE;
        }
        Err(e) => return usage_error(&e.to_string()),
    };
    match args.format {
        HfFormat::Table => {
            println!("degree  dimension");
            for (j, d) in hf.iter().enumerate() {
                println!("{j:>6}  {d}");
            }
            let compact: Vec<String> = hf.iter().map(i64::to_string).collect();
            println!("hf: {}", compact.join(","));
        }
        HfFormat::Csv => {
            println!("degree,dimension");
            for (j, d) in hf.iter().enumerate() {
                println!("{j},{d}");
            }
        }
        HfFormat::Json => {
            println!("{}", json!({ "powers": powers, "hilbert_function": hf }));
        }
    }
    0
}

fn cmd_linsys(args: LinsysArgs) -> u8 {
    if args.degree < 0 {
        return usage_error("degree must be nonnegative");
    }
    let sys = LinearSystem::new(args.degree, args.mults);
    let result = dim_linear_system(&sys);
    let oracle_dim = if args.oracle {
        match oracle_linsys_dim(&sys, &args.field.config()) {
            Ok(d) => Some(d),
            Err(e) => return usage_error(&e.to_string()),
        }
    } else {
        None
    };
    let agree = match (result.value, oracle_dim) {
        (DimValue::Exact(d), Some(o)) => Some(d == o),
        _ => None,
    };

    match args.format {
        ReportFormat::Human => {
            match result.value {
                DimValue::Exact(d) => println!("dim {sys} = Exact({d})"),
                DimValue::Undetermined => println!("dim {sys} = Undetermined"),
            }
            if args.trace {
                for (i, step) in result.trace.steps.iter().enumerate() {
                    println!(
                        "  step {:>2}: {:?}: {} -> {}",
                        i + 1,
                        step.kind,
                        step.before,
                        step.after
                    );
                }
                println!("  terminal: {}", result.trace.terminal);
            }
            if let Some(o) = oracle_dim {
                match agree {
                    Some(true) => println!("oracle: {o} AGREE"),
                    Some(false) => println!("oracle: {o} DISAGREE"),
                    None => println!("oracle: {o}"),
                }
            }
        }
        ReportFormat::Json => {
            let mut doc = json!({
                "degree": sys.degree,
                "mults": sys.mults,
                "value": result.value,
                "oracle": oracle_dim,
                "agree": agree,
            });
            if args.trace {
                doc.as_object_mut().expect("object").insert(
                    "trace".into(),
                    serde_json::to_value(&result.trace).expect("trace"),
                );
            }
            println!("{doc}");
        }
    }

    match (result.value, agree) {
        (DimValue::Undetermined, _) if oracle_dim.is_none() => EXIT_INCONCLUSIVE,
        (_, Some(false)) => EXIT_FAILURE,
        _ => 0,
    }
}

fn print_report_table(report: &RankReport) {
    println!("degree  source  target  quotient  rank  maximal  engine");
    for row in &report.rows {
        println!(
            "{:>6}  {:>6}  {:>6}  {:>8}  {:>4}  {:>7}  {:?}",
            row.degree,
            row.dim_source,
            row.dim_target,
            row.dim_quotient,
            row.rank,
            row.maximal,
            row.engine
        );
    }
}

fn cmd_verify(args: VerifyArgs) -> u8 {
    let powers = match PowerSequence::new(args.powers) {
        Ok(p) => p,
        Err(e) => return usage_error(&e.to_string()),
    };
    if powers.r() < 3 || args.shift < 1 {
        return usage_error("verify needs at least 3 powers and a positive shift");
    }
    let cfg = args.field.config();
    let comparison = match compare_engines(&powers, args.shift, args.oracle.then_some(&cfg)) {
        Ok(c) => c,
        Err(e) => return usage_error(&e.to_string()),
    };
    // The oracle settles anything the reduction engine left open.
    let authoritative: &RankReport = match (&comparison.combinatorial.verdict, &comparison.oracle) {
        (Verdict::Inconclusive { .. }, Some(oracle)) => oracle,
        _ => &comparison.combinatorial,
    };
    let engine_label = if comparison.oracle.is_some() {
        "combinatorial+oracle"
    } else {
        "combinatorial"
    };

    match args.format {
        ReportFormat::Human => {
            println!(
                "powers {:?}, shift {}: {:?}",
                powers.powers(),
                args.shift,
                authoritative.verdict
            );
            print_report_table(authoritative);
            if let (Some(oracle), Some(false)) = (&comparison.oracle, comparison.agree) {
                println!("engines disagree; oracle side:");
                print_report_table(oracle);
            }
        }
        ReportFormat::Json => {
            println!(
                "{}",
                report_json(authoritative, engine_label, cfg.prime, cfg.seed)
            );
        }
    }

    if comparison.agree == Some(false) {
        return EXIT_FAILURE;
    }
    verdict_exit_code(&authoritative.verdict)
}

fn cmd_sweep(args: SweepArgs) -> u8 {
    let Some(r_range) = parse_range(&args.r) else {
        return usage_error(&format!("invalid r range '{}'", args.r));
    };
    let Some(a_range) = parse_range(&args.a) else {
        return usage_error(&format!("invalid a range '{}'", args.a));
    };
    let plan = SweepPlan {
        r_range,
        a_range,
        count: args.count,
        seed: args.field.seed,
        prime: args.field.prime,
        trials: args.field.trials,
    };
    if let Err(msg) = plan.validate() {
        return usage_error(&msg);
    }
    if let Err(e) = args.field.config().check_degree(0) {
        return usage_error(&e.to_string());
    }
    let file = match File::create(&args.out) {
        Ok(f) => f,
        Err(e) => return usage_error(&format!("cannot create {}: {e}", args.out.display())),
    };
    let mut writer = BufWriter::new(file);
    let summary = match run_sweep(&plan, args.jobs, &mut writer) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("sweep failed: {e}");
            return EXIT_FAILURE;
        }
    };
    println!(
        "sweep: {} sequences (case_i: {}, case_ii: {})",
        summary.total, summary.case_i, summary.case_ii
    );
    println!(
        "failures: {}, engine disagreements: {}",
        summary.failures, summary.disagreements
    );
    println!("wrote {}", args.out.display());
    if summary.clean() {
        0
    } else {
        EXIT_FAILURE
    }
}
