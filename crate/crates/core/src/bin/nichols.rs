use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use nichols::cli::report::{render_human, render_machine};
use nichols::cli::{execute, Config, RunOptions, VerifyLevel};
use nichols::conjchar::toy_table;
use nichols::groups::{catalog, AbelianDecomposition, CATALOG_NAMES};
use nichols::scalars::{Field, FieldSpec};

#[derive(Parser)]
#[command(
    version,
    about = "Nichols algebras of group type and their graded characters"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build, trace and factor; compare against the expectations in the config.
    Run(RunArgs),
    /// Same as `run` with the full verification suite unless overridden.
    Verify(RunArgs),
    /// Conjugation characters of catalog groups against the cyclic-grading prediction.
    Toy {
        /// Catalog group names; all of them when omitted.
        #[arg(long = "group")]
        groups: Vec<String>,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    /// Directory for reports and the layer cache.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    no_cache: bool,
    #[arg(long, value_parser = ["fast", "full"])]
    verify_level: Option<String>,
}

fn run(
    args: RunArgs,
    default_level: Option<VerifyLevel>,
) -> Result<bool, Box<dyn std::error::Error>> {
    if let Some(t) = args.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()?;
    }
    let cfg = Config::load(&args.config)?;
    let level = match args.verify_level.as_deref() {
        Some(l) => Some(l.parse::<VerifyLevel>()?),
        None => default_level,
    };
    let cache_dir = match (&args.out, args.no_cache) {
        (Some(out), false) => Some(out.join("cache")),
        _ => None,
    };
    let start = Instant::now();
    let report = execute(
        &cfg,
        &RunOptions {
            cache_dir,
            verify_level: level,
        },
    )?;
    let human = render_human(&report);
    let machine = render_machine(&report);
    match &args.out {
        Some(out) => {
            fs::create_dir_all(out)?;
            fs::write(out.join(format!("{}.report.txt", report.title)), &human)?;
            fs::write(out.join(format!("{}.machine.txt", report.title)), &machine)?;
        }
        None => print!("{human}"),
    }
    eprintln!("{}: {:.2?}", report.title, start.elapsed());
    Ok(report.passed())
}

fn toy(groups: Vec<String>) -> Result<bool, Box<dyn std::error::Error>> {
    let f = Field::new(FieldSpec::rationals())?;
    let names = if groups.is_empty() {
        CATALOG_NAMES.iter().map(|s| s.to_string()).collect()
    } else {
        groups
    };
    let mut all = true;
    for name in names {
        let g = catalog(&name)?;
        let dec = AbelianDecomposition::abelianization(&g);
        for row in toy_table(&f, &g, &dec) {
            let tag = if row.holds { "PASS" } else { "FAIL" };
            println!(
                "{tag} {name} {}: character {} prediction {} x {:?}",
                g.format_element(row.rep),
                row.character.format_coeffs(&f),
                row.prediction.multiplier,
                row.prediction.symbols()
            );
            all &= row.holds;
        }
    }
    Ok(all)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(a) => run(a, None),
        Command::Verify(a) => run(a, Some(VerifyLevel::Full)),
        Command::Toy { groups } => toy(groups),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
