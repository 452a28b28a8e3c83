use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use rskflags_core::flag::{
    make_nilpotent, relative_position, sample_flag_in_component_with,
    sample_stable_flag_by_component, sample_stable_flag_with, tableau_of_flag, ComponentSampler,
};
use rskflags_core::harness::{
    derive_rng, theorem_cases, thread_pool_from_env, verify_bijection, verify_cases, verify_lemma1,
    verify_lemma2, verify_oracle_equivalence, verify_steinberg, RunConfig, SweepSummary,
    TheoremCase, VerificationReport,
};
use rskflags_core::rsk::{
    array_to_matrix, matrix_to_array, rsk_classic, rsk_inverse_classic, rsk_inverse_variant,
    rsk_variant,
};
use rskflags_core::standardize::{
    std_array_classical, std_array_variant, std_inverse, std_tableau_classical, std_tableau_variant,
};
use rskflags_core::{
    BiArray, Composition, Convention, Flag, Partition, PrimeField, RelPosMatrix, Tableau,
};

#[derive(Parser)]
#[command(
    name = "rskflags",
    version,
    about = "RSK, standardization and stable flags over prime fields"
)]
struct Cli {
    /// Print a human-readable table instead of line-delimited JSON.
    #[arg(long, global = true)]
    summary: bool,
    /// TOML file with run parameters; command-line flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Variant or classic (--convention lex) RSK on arrays and matrices.
    #[command(subcommand)]
    Rsk(RskCmd),
    /// Standardization of tableaux and arrays.
    #[command(subcommand)]
    Std(StdCmd),
    /// Stable flags: sampling, tableaux and relative positions.
    #[command(subcommand)]
    Flag(FlagCmd),
    /// Verification campaigns.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Clone, Copy, ValueEnum)]
enum Conv {
    Paper,
    Lex,
}

impl From<Conv> for Convention {
    fn from(c: Conv) -> Self {
        match c {
            Conv::Paper => Convention::PaperOrder,
            Conv::Lex => Convention::Lexicographic,
        }
    }
}

#[derive(Args)]
struct ArrayInput {
    /// Two-row array, e.g. "1,2,2,3,3 / 1,3,1,2,2".
    #[arg(long, conflicts_with = "matrix")]
    array: Option<String>,
    /// Matrix, rows separated by ';', e.g. "1,0,2;3,1,0".
    #[arg(long)]
    matrix: Option<String>,
}

impl ArrayInput {
    fn read(&self, conv: Convention) -> Result<BiArray> {
        match (&self.array, &self.matrix) {
            (Some(a), _) => Ok(BiArray::parse(a, conv)?),
            (None, Some(m)) => Ok(matrix_to_array(&m.parse::<RelPosMatrix>()?, conv)),
            (None, None) => bail!("one of --array or --matrix is required"),
        }
    }
}

#[derive(Subcommand)]
enum RskCmd {
    /// Array or matrix to the tableau pair (P, Q).
    Forward {
        #[command(flatten)]
        input: ArrayInput,
        #[arg(long, value_enum, default_value = "paper")]
        convention: Conv,
    },
    /// Tableau pair (P, Q) back to the array and matrix.
    Inverse {
        #[arg(long = "P")]
        p: Tableau,
        #[arg(long = "Q")]
        q: Tableau,
        #[arg(long, value_enum, default_value = "paper")]
        convention: Conv,
    },
    /// Matrix to array in a given convention, or array to matrix.
    Convert {
        #[command(flatten)]
        input: ArrayInput,
        #[arg(long, value_enum, default_value = "paper")]
        convention: Conv,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TabConv {
    Paper,
    Classical,
}

#[derive(Subcommand)]
enum StdCmd {
    /// Standardize a semistandard tableau.
    Tableau {
        tableau: Tableau,
        #[arg(long, value_enum, default_value = "paper")]
        convention: TabConv,
    },
    /// Standardize an array (variant order or lexicographic).
    Array {
        array: String,
        #[arg(long, value_enum, default_value = "paper")]
        convention: Conv,
    },
    /// Recover the array with margins (nu, mu) from its standardization.
    Inverse {
        /// Permutation array, e.g. "1,2,3,4,5 / 2,5,1,4,3".
        array: String,
        #[arg(long)]
        mu: Composition,
        #[arg(long)]
        nu: Composition,
    },
}

#[derive(Subcommand)]
enum FlagCmd {
    /// Draw a stable flag, from the component of a tableau when --tableau is given.
    Sample {
        #[arg(long)]
        shape: Partition,
        /// Flag type; taken from the tableau when omitted.
        #[arg(long)]
        mu: Option<Composition>,
        #[arg(long)]
        tableau: Option<Tableau>,
        /// Without --tableau: pick a component first instead of extending step by step.
        #[arg(long)]
        by_component: bool,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Tableau of a stable flag read as JSON (file path or '-' for stdin).
    Tableau {
        #[arg(long)]
        shape: Partition,
        flag: String,
    },
    /// Relative position M(F, G) of two flags given as JSON files.
    Relpos { f: String, g: String },
}

#[derive(Args, Default)]
struct RunArgs {
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    prime: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    max_attempts: Option<usize>,
    /// Agreement a case needs with the expected matrix, on top of the mode check.
    #[arg(long)]
    min_agreement: Option<f64>,
    #[arg(long)]
    sampler: Option<ComponentSampler>,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Sample flag pairs for one (T, S) and compare with the RSK matrix.
    Theorem {
        #[arg(long)]
        shape: Option<Partition>,
        #[arg(long)]
        mu: Option<Composition>,
        #[arg(long)]
        nu: Option<Composition>,
        #[arg(long = "T")]
        t: Tableau,
        #[arg(long = "S")]
        s: Tableau,
        #[command(flatten)]
        run: RunArgs,
    },
    /// All pairs of tableaux of one shape (contents with parts <= --max-part).
    Shape {
        #[arg(long)]
        shape: Partition,
        #[arg(long)]
        max_part: Option<usize>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// All pairs of standard tableaux of one shape (complete flags).
    Steinberg {
        #[arg(long)]
        shape: Partition,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Standardization commutes with variant RSK, d <= dmax.
    Lemma2 {
        #[arg(long, default_value_t = 6)]
        dmax: usize,
    },
    /// Standardization commutes with classic RSK, d <= dmax.
    Lemma1 {
        #[arg(long, default_value_t = 6)]
        dmax: usize,
    },
    /// Variant RSK round trips and the counting identity, d <= dmax.
    Bijection {
        #[arg(long, default_value_t = 6)]
        dmax: usize,
        #[arg(long, default_value_t = 4)]
        max_parts: usize,
    },
    /// Direct RSK matrix against the standardization route, d <= dmax.
    Oracle {
        #[arg(long, default_value_t = 6)]
        dmax: usize,
    },
}

/// Contents of the `--config` file.
#[derive(Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    #[serde(default)]
    run: Option<RunConfig>,
}

fn run_config(file: Option<&Path>, args: &RunArgs) -> Result<RunConfig> {
    let mut cfg = match file {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let parsed: FileConfig =
                toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
            parsed.run.unwrap_or_default()
        }
        None => RunConfig::default(),
    };
    if let Some(v) = args.trials {
        cfg.trials = v;
    }
    if let Some(v) = args.prime {
        cfg.prime = v;
    }
    if let Some(v) = args.seed {
        cfg.seed = v;
    }
    if let Some(v) = args.max_attempts {
        cfg.max_attempts = v;
    }
    if let Some(v) = args.min_agreement {
        cfg.min_agreement = v;
    }
    if let Some(v) = args.sampler {
        cfg.sampler = v;
    }
    Ok(cfg)
}

fn read_source(src: &str) -> Result<String> {
    if src == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(src).with_context(|| format!("reading {src}"))
    }
}

fn read_flag(src: &str) -> Result<Flag> {
    serde_json::from_str(&read_source(src)?).with_context(|| format!("flag JSON in {src}"))
}

fn emit(value: serde_json::Value) {
    println!("{value}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Returns whether every verdict passed.
fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Rsk(cmd) => rsk(cmd).map(|()| true),
        Command::Std(cmd) => standardize(cmd).map(|()| true),
        Command::Flag(cmd) => flag(cmd, cli.config.as_deref()).map(|()| true),
        Command::Verify(cmd) => verify(cmd, cli),
    }
}

fn rsk(cmd: &RskCmd) -> Result<()> {
    match cmd {
        RskCmd::Forward { input, convention } => {
            let a = input.read((*convention).into())?;
            let (p, q) = match convention {
                Conv::Paper => rsk_variant(&a)?,
                Conv::Lex => rsk_classic(&a)?,
            };
            emit(json!({ "array": a.to_string(), "P": p.to_string(), "Q": q.to_string() }));
        }
        RskCmd::Inverse { p, q, convention } => {
            let a = match convention {
                Conv::Paper => rsk_inverse_variant(p, q)?,
                Conv::Lex => rsk_inverse_classic(p, q)?,
            };
            emit(json!({ "array": a.to_string(), "matrix": array_to_matrix(&a).to_string() }));
        }
        RskCmd::Convert { input, convention } => {
            let a = input.read((*convention).into())?;
            emit(json!({ "array": a.to_string(), "matrix": array_to_matrix(&a).to_string() }));
        }
    }
    Ok(())
}

fn standardize(cmd: &StdCmd) -> Result<()> {
    match cmd {
        StdCmd::Tableau {
            tableau,
            convention,
        } => {
            let out = match convention {
                TabConv::Paper => std_tableau_variant(tableau)?,
                TabConv::Classical => std_tableau_classical(tableau)?,
            };
            emit(json!({ "tableau": out.to_string() }));
        }
        StdCmd::Array { array, convention } => {
            let a = BiArray::parse(array, (*convention).into())?;
            let out = match convention {
                Conv::Paper => std_array_variant(&a)?,
                Conv::Lex => std_array_classical(&a)?,
            };
            emit(json!({ "array": out.to_string() }));
        }
        StdCmd::Inverse { array, mu, nu } => {
            let p = BiArray::parse(array, Convention::PaperOrder)?;
            let a = std_inverse(&p, mu, nu)?;
            emit(json!({ "array": a.to_string(), "matrix": array_to_matrix(&a).to_string() }));
        }
    }
    Ok(())
}

fn flag(cmd: &FlagCmd, config: Option<&Path>) -> Result<()> {
    match cmd {
        FlagCmd::Sample {
            shape,
            mu,
            tableau,
            by_component,
            run,
        } => {
            let cfg = run_config(config, run)?;
            let x = make_nilpotent(shape, PrimeField::new(cfg.prime)?);
            let mut rng = derive_rng(cfg.seed, &format!("flag-sample|{shape}"), 0, "F");
            let (f, attempts) = match (tableau, mu) {
                (Some(t), mu) => {
                    if let Some(mu) = mu {
                        if &t.content()? != mu {
                            bail!("tableau {t} does not have content {mu}");
                        }
                    }
                    let s = sample_flag_in_component_with(
                        &x,
                        t,
                        &mut rng,
                        cfg.max_attempts,
                        cfg.sampler,
                    )?;
                    (s.flag, s.attempts)
                }
                (None, Some(mu)) if *by_component => {
                    (sample_stable_flag_by_component(&x, mu, &mut rng)?, 1)
                }
                (None, Some(mu)) => sample_stable_flag_with(&x, mu, &mut rng, cfg.max_attempts)?,
                (None, None) => bail!("one of --mu or --tableau is required"),
            };
            let t = tableau_of_flag(&x, &f)?;
            emit(json!({ "flag": f, "tableau": t.to_string(), "attempts": attempts }));
        }
        FlagCmd::Tableau { shape, flag } => {
            let f = read_flag(flag)?;
            let x = make_nilpotent(shape, f.field());
            emit(json!({ "tableau": tableau_of_flag(&x, &f)?.to_string() }));
        }
        FlagCmd::Relpos { f, g } => {
            let m = relative_position(&read_flag(f)?, &read_flag(g)?)?;
            emit(json!({ "matrix": m.to_string() }));
        }
    }
    Ok(())
}

fn verify(cmd: &VerifyCmd, cli: &Cli) -> Result<bool> {
    let pool = thread_pool_from_env();
    let config = cli.config.as_deref();
    match cmd {
        VerifyCmd::Theorem {
            shape,
            mu,
            nu,
            t,
            s,
            run,
        } => {
            let case = TheoremCase::new(
                shape.clone().map_or_else(|| t.shape(), Ok)?,
                mu.clone().map_or_else(|| t.content(), Ok)?,
                nu.clone().map_or_else(|| s.content(), Ok)?,
                t.clone(),
                s.clone(),
            )?;
            let cfg = run_config(config, run)?;
            let reports = pool.install(|| verify_cases(std::slice::from_ref(&case), &cfg))?;
            Ok(report_cases(&reports, cli.summary))
        }
        VerifyCmd::Shape {
            shape,
            max_part,
            run,
        } => {
            let cfg = run_config(config, run)?;
            let reports = pool.install(|| verify_cases(&theorem_cases(shape, *max_part), &cfg))?;
            Ok(report_cases(&reports, cli.summary))
        }
        VerifyCmd::Steinberg { shape, run } => {
            let cfg = run_config(config, run)?;
            let reports = pool.install(|| verify_steinberg(shape, &cfg))?;
            Ok(report_cases(&reports, cli.summary))
        }
        VerifyCmd::Lemma2 { dmax } => Ok(report_sweeps(
            &[pool.install(|| verify_lemma2(*dmax))],
            cli.summary,
        )),
        VerifyCmd::Lemma1 { dmax } => Ok(report_sweeps(
            &[pool.install(|| verify_lemma1(*dmax))],
            cli.summary,
        )),
        VerifyCmd::Bijection { dmax, max_parts } => {
            let b = pool.install(|| verify_bijection(*dmax, *max_parts));
            Ok(report_sweeps(&[b.roundtrip, b.counting], cli.summary))
        }
        VerifyCmd::Oracle { dmax } => Ok(report_sweeps(
            &[pool.install(|| verify_oracle_equivalence(*dmax))],
            cli.summary,
        )),
    }
}

fn report_cases(reports: &[VerificationReport], summary: bool) -> bool {
    if summary {
        println!(
            "{:<10} {:<10} {:<10} {:<14} {:<14} {:>7} {:>6}  {:<16} result",
            "shape", "mu", "nu", "T", "S", "agree", "seen", "expected"
        );
        for r in reports {
            println!(
                "{:<10} {:<10} {:<10} {:<14} {:<14} {:>7.3} {:>6}  {:<16} {}",
                r.lambda.to_string(),
                r.mu.to_string(),
                r.nu.to_string(),
                r.t,
                r.s,
                r.agreement,
                r.distinct_matrices,
                r.expected_matrix.to_string(),
                if r.passed() { "pass" } else { "FAIL" }
            );
        }
        let failed = reports.iter().filter(|r| !r.passed()).count();
        println!("{} cases, {} failed", reports.len(), failed);
    } else {
        for r in reports {
            println!("{}", serde_json::to_string(r).expect("report serializes"));
        }
    }
    reports.iter().all(VerificationReport::passed)
}

fn report_sweeps(sweeps: &[SweepSummary], summary: bool) -> bool {
    for s in sweeps {
        if summary {
            println!(
                "{:<20} d<={} checked {:>8} failed {:>4}  {}",
                s.name,
                s.d_max,
                s.checked,
                s.failed,
                if s.passed() { "pass" } else { "FAIL" }
            );
            for f in &s.failures {
                println!("    {f}");
            }
        } else {
            println!("{}", serde_json::to_string(s).expect("summary serializes"));
        }
    }
    sweeps.iter().all(SweepSummary::passed)
}
