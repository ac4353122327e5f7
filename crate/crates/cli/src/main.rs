use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use obribe::check::{cross_check, run, Engine};
use obribe::document::instance_to_value;
use obribe::manip::parse_manipulation;
use obribe::{generate_random, parse_corpus, parse_instance, serialize_instance, GenParams, Instance};
use online_bribery::deciders::scoring_dichotomy;
use online_bribery::reductions::{reduce_manipulation, reduce_partition, reduce_qbf, QbfImage};
use online_bribery::solver::SolverConfig;
use online_bribery::{qbf::Qbf, Mode, Rule, ScoringVector, Variant};
use serde_json::{json, Value};

const YES: u8 = 0;
const NO: u8 = 1;
const ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "obribe", version, about = "Decide online bribery instances, build reductions, cross-check engines")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide an instance (exit 0 yes, 1 no, 2 error).
    Solve {
        file: PathBuf,
        #[arg(long, default_value = "general")]
        engine: Engine,
        #[command(flatten)]
        common: Common,
    },
    /// Decide with exhaustive search.
    Oracle {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Decide with the polynomial decider for the rule.
    Fast {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Complexity class of the instance's scoring rule and variant.
    Classify { file: PathBuf },
    /// Build an instance from another problem and print it.
    Reduce {
        #[command(subcommand)]
        from: Reduce,
    },
    /// Print random instances, one per line.
    Gen(GenArgs),
    /// Run several engines over documents and compare (exit 1 on disagreement).
    Check {
        /// Files or directories; a file may hold several documents.
        paths: Vec<PathBuf>,
        /// Engines to run; all three by default.
        #[arg(long = "engine")]
        engines: Vec<Engine>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// Largest candidate count for which all order ballots are enumerated.
    #[arg(long)]
    cap_ballots: Option<usize>,
    /// Also write the report as JSON to this file.
    #[arg(long)]
    json_report: Option<PathBuf>,
}

impl Common {
    fn config(&self) -> SolverConfig {
        let mut c = SolverConfig::default();
        if let Some(cap) = self.cap_ballots {
            c.caps = c.caps.with_order_cap(cap);
        }
        c
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Constructive,
    Destructive,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Constructive => Mode::Constructive,
            ModeArg::Destructive => Mode::Destructive,
        }
    }
}

#[derive(Subcommand)]
enum Reduce {
    /// From a QBF `A x ; E y ; A z ; matrix` read from a file (`-` for stdin).
    Qbf {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "constructive")]
        mode: ModeArg,
        /// Carry the bribe limit as `k` instead of a fixed `bribe_cap`.
        #[arg(long)]
        unbounded: bool,
    },
    /// From a Partition list.
    Partition {
        values: Vec<BigUint>,
        #[arg(long, value_enum, default_value = "constructive")]
        mode: ModeArg,
    },
    /// From a manipulation document.
    Manip {
        file: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        part: u8,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RuleKind {
    Plurality,
    Veto,
    Borda,
    Approval,
    Scoring,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum, default_value = "plurality")]
    rule: RuleKind,
    /// Scoring vector for `--rule scoring`, e.g. `2,1,0`.
    #[arg(long, value_delimiter = ',')]
    alpha: Vec<u64>,
    #[arg(long, default_value_t = 3)]
    candidates: usize,
    #[arg(long, value_enum, default_value = "constructive")]
    mode: ModeArg,
    #[arg(long)]
    priced: bool,
    #[arg(long)]
    weighted: bool,
    #[arg(long)]
    bribe_cap: Option<u64>,
    #[arg(long, default_value_t = 1)]
    past: usize,
    #[arg(long, default_value_t = 2)]
    future: usize,
    #[arg(long, default_value_t = 2)]
    max_weight: u32,
    #[arg(long, default_value_t = 2)]
    max_price: u32,
    #[arg(long, default_value_t = 3)]
    max_k: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    count: u64,
}

fn main() -> ExitCode {
    match execute(Cli::parse().command) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(ERROR)
        }
    }
}

fn read(path: &Path) -> Result<String, String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
    }
}

fn load(path: &Path) -> Result<Instance, String> {
    parse_instance(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_report(path: &Option<PathBuf>, value: &Value) -> Result<(), String> {
    if let Some(p) = path {
        let text = serde_json::to_string_pretty(value).expect("serializable");
        fs::write(p, text + "\n").map_err(|e| format!("{}: {e}", p.display()))?;
    }
    Ok(())
}

fn execute(command: Command) -> Result<u8, String> {
    match command {
        Command::Solve { file, engine, common } => decide(&file, engine, &common),
        Command::Oracle { file, common } => decide(&file, Engine::Naive, &common),
        Command::Fast { file, common } => decide(&file, Engine::Fast, &common),
        Command::Classify { file } => {
            let inst = load(&file)?;
            let Rule::Scoring(alpha) = &inst.rule else {
                return Err(format!("classify needs a scoring rule, found {}", inst.rule.name()));
            };
            println!("{}", scoring_dichotomy(alpha, &inst.variant));
            Ok(YES)
        }
        Command::Reduce { from } => {
            let inst: Instance = match from {
                Reduce::Qbf { file, mode, unbounded } => {
                    let q: Qbf = read(&file)?.trim().parse().map_err(|e| format!("{}: {e}", file.display()))?;
                    let image = if unbounded { QbfImage::Unbounded } else { QbfImage::Bounded };
                    reduce_qbf(&q, mode.into(), image).map_err(|e| e.to_string())?.into()
                }
                Reduce::Partition { values, mode } => reduce_partition(&values, mode.into()).into(),
                Reduce::Manip { file, part } => {
                    let (mi, rule) = parse_manipulation(&read(&file)?).map_err(|e| format!("{}: {e}", file.display()))?;
                    reduce_manipulation(&mi, &rule, part).map_err(|e| e.to_string())?.into()
                }
            };
            println!("{}", serialize_instance(&inst));
            Ok(YES)
        }
        Command::Gen(g) => {
            let mode: Mode = g.mode.into();
            let mut variant = Variant::new(mode, g.priced, g.weighted);
            if let Some(cap) = g.bribe_cap {
                variant = variant.with_cap(cap);
            }
            let m = g.candidates;
            let rule = match g.rule {
                RuleKind::Plurality => Rule::plurality(m),
                RuleKind::Veto => Rule::veto(m),
                RuleKind::Borda => Rule::borda(m),
                RuleKind::Approval => Rule::Approval,
                RuleKind::Scoring => Rule::Scoring(ScoringVector::from_u64s(&g.alpha).map_err(|e| format!("--alpha: {e}"))?),
            };
            if m == 0 && !matches!(g.rule, RuleKind::Scoring) {
                return Err("--candidates must be positive".into());
            }
            let params = GenParams {
                candidates: m,
                past: g.past,
                future: g.future,
                max_weight: g.max_weight,
                max_price: g.max_price,
                max_k: g.max_k,
            };
            for i in 0..g.count {
                let inst = generate_random(&rule, &variant, &params, g.seed.wrapping_add(i));
                println!("{}", serde_json::to_string(&instance_to_value(&inst)).expect("serializable"));
            }
            Ok(YES)
        }
        Command::Check { paths, engines, common } => check(&paths, engines, &common),
    }
}

fn decide(file: &Path, engine: Engine, common: &Common) -> Result<u8, String> {
    let inst = load(file)?;
    let report = run(&inst, engine, &common.config()).map_err(|e| e.to_string())?;
    println!("{}", if report.decision { "yes" } else { "no" });
    if let Some(w) = &report.witness {
        println!("witness: {w}");
    }
    write_report(&common.json_report, &serde_json::to_value(&report).expect("serializable"))?;
    Ok(if report.decision { YES } else { NO })
}

fn files(paths: &[PathBuf]) -> Result<Vec<PathBuf>, String> {
    let mut out = Vec::new();
    for p in paths {
        if p.is_dir() {
            let mut inner: Vec<PathBuf> = fs::read_dir(p)
                .map_err(|e| format!("{}: {e}", p.display()))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.is_file())
                .collect();
            inner.sort();
            out.extend(inner);
        } else {
            out.push(p.clone());
        }
    }
    Ok(out)
}

fn check(paths: &[PathBuf], engines: Vec<Engine>, common: &Common) -> Result<u8, String> {
    let engines = if engines.is_empty() { Engine::ALL.to_vec() } else { engines };
    let mut corpus = Vec::new();
    let mut origins = Vec::new();
    for file in files(paths)? {
        for (i, parsed) in parse_corpus(&read(&file)?).into_iter().enumerate() {
            let inst = parsed.map_err(|e| format!("{}: {e}", file.display()))?;
            corpus.push(inst);
            origins.push(format!("{}#{i}", file.display()));
        }
    }
    let summary = cross_check(&corpus, &engines, &common.config());
    for r in &summary.results {
        let origin = &origins[r.index];
        for (engine, reason) in &r.skipped {
            eprintln!("notice: {origin}: skipped {engine}: {reason}");
        }
        for (engine, err) in &r.errors {
            eprintln!("error: {origin}: {engine}: {err}");
        }
        let decisions: Vec<String> = r
            .reports
            .iter()
            .map(|rep| format!("{}={}", rep.engine, if rep.decision { "yes" } else { "no" }))
            .collect();
        let status = if !r.agrees() { "DISAGREE" } else if r.errors.is_empty() { "ok" } else { "ERROR" };
        println!("{status} {origin} {}", decisions.join(" "));
    }
    println!(
        "{} instances, {} disagreements, {} errors, {} with fewer than two engines",
        summary.instances(),
        summary.disagreements(),
        summary.errors(),
        summary.uncompared()
    );
    let report = json!({
        "instances": summary.results.iter().map(|r| json!({
            "source": origins[r.index],
            "reports": r.reports,
            "skipped": r.skipped.iter().map(|(e, why)| json!({"engine": e, "reason": why})).collect::<Vec<_>>(),
            "errors": r.errors.iter().map(|(e, why)| json!({"engine": e, "error": why})).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "disagreements": summary.disagreements(),
        "errors": summary.errors(),
    });
    write_report(&common.json_report, &report)?;
    Ok(if summary.all_agree() { YES } else { NO })
}
