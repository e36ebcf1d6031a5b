//! `bql`: runs the verification checks from the command line.
//!
//! Exit status is 0 when no check failed (inconclusive checks are flagged but
//! do not fail), 1 when some check failed, and 2 on usage or input errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use bql_core::cosets::{enumerate, Budget};
use bql_core::harness::{
    self, budget_with_max_cosets, params, presentations, render_table, CheckId, CheckReport,
    HarnessError, Params, Summary, MAX_COSETS_ENV,
};
use bql_core::PresentationFile;

#[derive(Parser, Debug)]
#[command(
    name = "bql",
    version,
    about = "Certifies braid-group and alternating-group facts by exact computation"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Cap on live cosets per enumeration.
    #[arg(long, global = true, env = MAX_COSETS_ENV, value_name = "N")]
    max_cosets: Option<usize>,
    /// Emit a JSON array of reports instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Reserved: every algorithm is already deterministic.
    #[arg(long, global = true)]
    seedless: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Index of <σ1> modulo a single relator (σ2σ1⁻¹ or σ3σ1⁻¹).
    LemmaA {
        #[arg(long)]
        n: usize,
        /// Signed-integer word such as "2 -1", or a named element (u, c1, ...).
        #[arg(long, allow_hyphen_values = true)]
        relator: String,
    },
    /// Index of <σ1> modulo (σ2σ1⁻¹)².
    #[command(name = "lemma-2")]
    Lemma2 {
        #[arg(long)]
        n: usize,
    },
    /// Band-generator identities, far commutations, named elements and conjugators.
    Identities {
        #[arg(long)]
        n: usize,
    },
    /// Index n!/2 of <σ1> modulo the order-3 and order-2 relators.
    Carmichael {
        #[arg(long)]
        n: usize,
    },
    /// 3-cycle class and centralizer counts, and distinctness of the orbit images.
    Counts {
        #[arg(long)]
        n: usize,
    },
    /// Orbit–stabilizer lower bound n!·m/6.
    Bound {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        m: usize,
    },
    /// Brute-force automorphism count of A_n (n = 5 or 6).
    Aut {
        #[arg(long, default_value_t = 5)]
        n: usize,
    },
    /// Every check for n_min..=n_max.
    Pipeline {
        #[arg(long, default_value_t = 5)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
    },
    /// Runs one registered check with key=value parameters.
    Check {
        id: String,
        /// Parameters as key=value; integer values are passed as numbers.
        #[arg(value_name = "KEY=VALUE")]
        params: Vec<String>,
    },
    /// Lists the registered checks and the statements they certify.
    Catalog,
    /// Enumerates cosets for a presentation file.
    Enumerate { file: PathBuf },
    /// Writes the golden presentation files into a directory.
    ExportPresentations {
        #[arg(long)]
        dir: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let budget = match cli.global.max_cosets {
        Some(max) => budget_with_max_cosets(max).map_err(|e| e.to_string())?,
        None => Budget::default(),
    };
    let n_param = |n: usize| params([("n", n)]);
    let plan: Vec<(CheckId, Params)> = match cli.command {
        Command::LemmaA { n, relator } => {
            vec![(
                CheckId::LemmaA,
                params([("n", Value::from(n)), ("relator", relator.into())]),
            )]
        }
        Command::Lemma2 { n } => vec![(CheckId::Lemma2, n_param(n))],
        Command::Identities { n } => {
            let mut ids = vec![CheckId::LemmaBIdentities];
            if n >= 5 {
                ids.extend([
                    CheckId::LemmaCIdentities,
                    CheckId::NamedElements,
                    CheckId::OrbitConjugators,
                ]);
            }
            ids.into_iter().map(|id| (id, n_param(n))).collect()
        }
        Command::Carmichael { n } => vec![
            (CheckId::CarmichaelCollapse, n_param(n)),
            (CheckId::QuotientOrders, n_param(n)),
        ],
        Command::Counts { n } => vec![
            (CheckId::ThreeCycleCounts, n_param(n)),
            (CheckId::OrbitDistinctness, n_param(n)),
        ],
        Command::Bound { n, m } => vec![(CheckId::OrbitBound, params([("n", n), ("m", m)]))],
        Command::Aut { n } => vec![(CheckId::AutFootnote, n_param(n))],
        Command::Pipeline { n_min, n_max } => {
            let reports = harness::pipeline(n_min, n_max, &budget).map_err(|e| e.to_string())?;
            return Ok(emit(&reports, cli.global.json));
        }
        Command::Check { id, params } => {
            let id: CheckId = id.parse().map_err(|e: HarnessError| e.to_string())?;
            vec![(id, parse_params(&params)?)]
        }
        Command::Catalog => {
            print_catalog(cli.global.json);
            return Ok(ExitCode::SUCCESS);
        }
        Command::Enumerate { file } => return run_enumerate(&file, &budget, cli.global.json),
        Command::ExportPresentations { dir } => return export(&dir),
    };
    let reports = plan
        .iter()
        .map(|(id, p)| harness::run_check(id.as_str(), p, &budget))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    Ok(emit(&reports, cli.global.json))
}

fn parse_params(pairs: &[String]) -> Result<Params, String> {
    pairs
        .iter()
        .map(|pair| {
            let (k, v) = pair
                .split_once('=')
                .ok_or_else(|| format!("expected KEY=VALUE, got {pair:?}"))?;
            let value = v
                .parse::<u64>()
                .map_or_else(|_| Value::from(v), Value::from);
            Ok((k.to_string(), value))
        })
        .collect()
}

fn emit(reports: &[CheckReport], as_json: bool) -> ExitCode {
    if as_json {
        println!(
            "{}",
            serde_json::to_string_pretty(reports).expect("reports serialize")
        );
    } else {
        print!("{}", render_table(reports));
    }
    if Summary::of(reports).success() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn print_catalog(as_json: bool) {
    if as_json {
        let entries: Vec<Value> = CheckId::ALL
            .iter()
            .map(|id| json!({ "check_id": id.as_str(), "statement": id.statement() }))
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&entries).expect("catalog serializes")
        );
    } else {
        for id in CheckId::ALL {
            println!("{:<20} {}", id.as_str(), id.statement());
        }
    }
}

fn run_enumerate(file: &PathBuf, budget: &Budget, as_json: bool) -> Result<ExitCode, String> {
    let text = std::fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
    let parsed = PresentationFile::parse(&text).map_err(|e| format!("{}: {e}", file.display()))?;
    let subgroup = parsed.subgroup.unwrap_or_default();
    let result = enumerate(&parsed.presentation, &subgroup, budget).map_err(|e| e.to_string())?;
    if as_json {
        let mut value = serde_json::to_value(&result.outcome).expect("outcome serializes");
        value["stats"] = serde_json::to_value(&result.stats).expect("stats serialize");
        println!(
            "{}",
            serde_json::to_string_pretty(&value).expect("value serializes")
        );
    } else {
        match result.index() {
            Some(index) => println!("completed: index {index}"),
            None => println!("inconclusive: budget exceeded"),
        }
        let s = &result.stats;
        println!(
            "definitions {}, coincidences {}, max live {}, {:?}",
            s.definitions, s.coincidences, s.max_live, s.elapsed
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn export(dir: &PathBuf) -> Result<ExitCode, String> {
    std::fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    for (name, file) in presentations::golden_presentations() {
        let path = dir.join(&name);
        std::fs::write(&path, file.to_text()).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(ExitCode::SUCCESS)
}
