//! `coclass`: build space-group quotients, verify filtration and
//! equivariance identities, and compute mod-p cohomology Betti numbers.
//!
//! Exit codes: 0 verified, 1 verification failed, 2 usage error,
//! 3 resource budget exceeded.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use coclass_core::cochain::{
    check_delta, check_eta_equivariance, check_eta_exhaustive, check_inflation_equivariance,
    EquivarianceReport,
};
use coclass_core::group_model::{frattini_rank, is_abelian, order_census, ElementTable};
use coclass_core::linalg::Lattice;
use coclass_core::resolution::{betti_numbers, verify_theorem, Budget, ResolutionCache};
use coclass_core::space_group::{b3r, quotient_group, verify_filtration, FiniteGroup, SpaceGroupParams};
use coclass_core::Error;

#[derive(Parser, Debug)]
#[command(name = "coclass", version, about = "Cohomology of uniserial space-group quotients")]
struct Cli {
    /// Resolution cache directory.
    #[arg(long, global = true, env = "COCLASS_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    /// Largest group order that may be enumerated.
    #[arg(long, global = true, default_value_t = 729)]
    budget_order: u128,

    /// Largest free-module dimension `β_n |G|` in a resolution.
    #[arg(long, global = true, default_value_t = 20_000)]
    budget_matrix: usize,

    /// Largest resolution degree.
    #[arg(long, global = true, default_value_t = 8)]
    budget_degree: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Construct a group and report on it.
    #[command(subcommand)]
    Group(GroupCommand),
    /// Check the filtration identities.
    #[command(subcommand)]
    Filtration(FiltrationCommand),
    /// Betti numbers of one group.
    Betti {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
    },
    /// Compare Betti vectors of R_0, …, R_{i_max}.
    Theorem {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        x: u32,
        #[arg(long)]
        i_max: usize,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
    },
    /// Pointwise equivariance checks.
    #[command(subcommand)]
    Equivariance(EquivarianceCommand),
    /// Inspect or empty the resolution cache.
    #[command(subcommand)]
    Cache(CacheCommand),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Quotient,
    B3r,
}

#[derive(Args, Debug, Clone)]
struct GroupArgs {
    #[arg(long, value_enum, default_value_t = Family::Quotient)]
    family: Family,
    #[arg(long, required_if_eq("family", "quotient"))]
    p: Option<u32>,
    #[arg(long, default_value_t = 1)]
    x: u32,
    #[arg(long, default_value_t = 0)]
    i: usize,
    #[arg(long, required_if_eq("family", "b3r"))]
    r: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum GroupCommand {
    /// Descriptor, order and translation invariants.
    Build(GroupArgs),
    /// Element-order census and Frattini rank.
    Census(GroupArgs),
    /// The bare descriptor JSON.
    Export(GroupArgs),
}

#[derive(Subcommand, Debug)]
enum FiltrationCommand {
    Verify {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        x: u32,
        #[arg(long, default_value_t = 10)]
        i_max: usize,
        /// Replace the lattice at this level by a wrong one.
        #[arg(long, hide = true)]
        inject_fault: Option<usize>,
    },
}

#[derive(Args, Debug, Clone)]
struct TrialArgs {
    #[arg(long)]
    p: u32,
    #[arg(long, default_value_t = 1)]
    x: u32,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum EquivarianceCommand {
    Eta {
        #[command(flatten)]
        run: TrialArgs,
        #[arg(long, default_value_t = 1)]
        degree: usize,
        /// Visit every case instead of sampling.
        #[arg(long)]
        exhaustive: bool,
    },
    Delta {
        #[command(flatten)]
        run: TrialArgs,
        #[arg(long, default_value_t = 0)]
        i: usize,
    },
    Inflation {
        #[command(flatten)]
        run: TrialArgs,
        #[arg(long, default_value_t = 1)]
        i: usize,
        #[arg(long, default_value_t = 1)]
        degree: usize,
    },
}

#[derive(Subcommand, Debug)]
enum CacheCommand {
    List,
    Clear,
}

enum Failure {
    Usage(String),
    Budget(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        if e.is_budget() {
            return Failure::Budget(e.to_string());
        }
        match e {
            Error::NotPrime(_)
            | Error::InvalidParameter(_)
            | Error::NotPGroup { .. }
            | Error::DimensionMismatch { .. } => Failure::Usage(e.to_string()),
            Error::AtLevel { ref source, .. } if !matches!(**source, Error::Io(_) | Error::Json(_)) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Other(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn emit<T: Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Other(e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn emit_csv(rows: &[(u32, u32, usize, &[usize])]) -> Result<(), Failure> {
    let mut out = std::io::stdout().lock();
    let mut write = || -> std::io::Result<()> {
        writeln!(out, "p,x,i,n,beta")?;
        for (p, x, i, betti) in rows {
            for (n, b) in betti.iter().enumerate() {
                writeln!(out, "{p},{x},{i},{n},{b}")?;
            }
        }
        Ok(())
    };
    write().map_err(|e| Failure::Other(e.to_string()))
}

fn params(p: u32, x: u32) -> Result<SpaceGroupParams, Failure> {
    Ok(SpaceGroupParams::new(p, x)?)
}

fn build_group(args: &GroupArgs) -> Result<FiniteGroup, Failure> {
    Ok(match args.family {
        Family::Quotient => {
            let p = args.p.ok_or_else(|| Failure::Usage("--p is required".into()))?;
            quotient_group(params(p, args.x)?, args.i)?.into()
        }
        Family::B3r => {
            let r = args.r.ok_or_else(|| Failure::Usage("--r is required".into()))?;
            b3r(r)?.into()
        }
    })
}

fn budget(cli: &Cli) -> Budget {
    Budget {
        order: cli.budget_order,
        degree: cli.budget_degree,
        matrix: cli.budget_matrix,
    }
}

fn cache(cli: &Cli) -> Option<ResolutionCache> {
    cli.cache_dir.as_ref().map(ResolutionCache::new)
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Group(cmd) => run_group(cli, cmd),
        Command::Filtration(FiltrationCommand::Verify {
            p,
            x,
            i_max,
            inject_fault,
        }) => {
            let prime = i128::from(*p);
            let hook = move |i: usize, l: Lattice| {
                if Some(i) == *inject_fault {
                    l.scaled(prime).expect("small scale")
                } else {
                    l
                }
            };
            let report = verify_filtration(params(*p, *x)?, *i_max, Some(&hook))?;
            for c in report.failures() {
                match c.level {
                    Some(l) => eprintln!("failed: {} at level {l}", c.name),
                    None => eprintln!("failed: {}", c.name),
                }
            }
            emit(&report)?;
            Ok(report.passed)
        }
        Command::Betti { group, max_degree } => {
            let g = build_group(group)?;
            let betti = betti_numbers(&g, *max_degree, &budget(cli), cache(cli).as_ref())?;
            let d = g.descriptor();
            match cli.format {
                Format::Json => emit(&json!({
                    "descriptor": d,
                    "maxDegree": max_degree,
                    "betti": betti,
                }))?,
                Format::Csv => emit_csv(&[(d.p, d.x, d.i, &betti)])?,
            }
            Ok(true)
        }
        Command::Theorem {
            p,
            x,
            i_max,
            max_degree,
        } => {
            let report = verify_theorem(params(*p, *x)?, *i_max, *max_degree, &budget(cli), cache(cli).as_ref())?;
            match cli.format {
                Format::Json => emit(&report)?,
                Format::Csv => {
                    let rows: Vec<_> = report
                        .levels
                        .iter()
                        .map(|l| (report.p, report.x, l.i, l.betti.as_slice()))
                        .collect();
                    emit_csv(&rows)?
                }
            }
            Ok(report.all_equal)
        }
        Command::Equivariance(cmd) => {
            let report: EquivarianceReport = match cmd {
                EquivarianceCommand::Eta {
                    run,
                    degree,
                    exhaustive,
                } => {
                    let pr = params(run.p, run.x)?;
                    if *exhaustive {
                        check_eta_exhaustive(pr, *degree)?
                    } else {
                        check_eta_equivariance(pr, *degree, run.trials, run.seed)?
                    }
                }
                EquivarianceCommand::Delta { run, i } => {
                    check_delta(params(run.p, run.x)?, *i, run.trials, run.seed)?
                }
                EquivarianceCommand::Inflation { run, i, degree } => {
                    check_inflation_equivariance(params(run.p, run.x)?, *i, *degree, run.trials, run.seed)?
                }
            };
            emit(&report)?;
            Ok(report.passed())
        }
        Command::Cache(cmd) => {
            let cache = cache(cli).ok_or_else(|| {
                Failure::Usage("no cache directory: pass --cache-dir or set COCLASS_CACHE_DIR".into())
            })?;
            match cmd {
                CacheCommand::List => {
                    let entries: Vec<_> = cache
                        .entries()?
                        .into_iter()
                        .map(|(key, m)| {
                            json!({
                                "key": key,
                                "model": m.descriptor.model,
                                "p": m.descriptor.p,
                                "order": m.descriptor.order,
                                "maxDegree": m.max_degree,
                                "betti": m.betti,
                            })
                        })
                        .collect();
                    emit(&json!({ "entries": entries }))?;
                }
                CacheCommand::Clear => {
                    let removed = cache.clear()?;
                    emit(&json!({ "removed": removed }))?;
                }
            }
            Ok(true)
        }
    }
}

fn run_group(cli: &Cli, cmd: &GroupCommand) -> Outcome {
    match cmd {
        GroupCommand::Build(args) => {
            let g = build_group(args)?;
            let d = g.descriptor();
            emit(&json!({
                "descriptor": d,
                "order": d.order.to_string(),
                "translationInvariants": d.snf,
            }))?;
        }
        GroupCommand::Export(args) => emit(&build_group(args)?.descriptor())?,
        GroupCommand::Census(args) => {
            let g = build_group(args)?;
            let table = ElementTable::enumerate(&g, cli.budget_order)?;
            let census: BTreeMap<u64, u64> = order_census(&table);
            emit(&json!({
                "descriptor": g.descriptor(),
                "order": table.len(),
                "abelian": is_abelian(&table),
                "frattiniRank": frattini_rank(&table),
                "census": census,
            }))?;
        }
    }
    Ok(true)
}
