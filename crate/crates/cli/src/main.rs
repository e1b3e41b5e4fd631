use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ihtheta_cli::cache::TableCache;
use ihtheta_cli::commands::{betti_cmd, involution_cmd, strata_cmd, verify_cmd};
use ihtheta_cli::{Budgets, CliError, Context, Method, ReportDocument, Suite};

#[derive(Parser)]
#[command(
    name = "ihtheta",
    version,
    about = "Exact checks on the cohomology of the theta divisor"
)]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,

    /// Do not read or write the structure-constant cache.
    #[arg(long, global = true)]
    no_cache: bool,

    #[arg(long, global = true, env = "IHTHETA_MAX_DIRECT_GENUS", default_value_t = Budgets::default().direct)]
    max_direct_genus: u32,

    #[arg(long, global = true, env = "IHTHETA_MAX_FORMULA_GENUS", default_value_t = Budgets::default().formula)]
    max_formula_genus: u32,

    #[arg(long, global = true, env = "IHTHETA_MAX_CLOSED_FORM_GENUS", default_value_t = Budgets::default().closed_form)]
    max_closed_form_genus: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Betti numbers of the d-th symmetric power.
    Betti {
        #[arg(long)]
        genus: u32,
        /// Defaults to g - 1, the case that computes IH of the theta divisor.
        #[arg(long)]
        power: Option<u32>,
    },
    /// Builds ι and reports its traces.
    Involution {
        #[arg(long)]
        genus: u32,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
    },
    /// Runs verification suites; exits 1 if any check fails.
    Verify {
        #[arg(long)]
        genus: u32,
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
    /// Dimensions of the strata W^r and of the components Z^r.
    Strata {
        #[arg(long)]
        genus: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Direct,
    Formula,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Traces,
    Lefschetz,
    Filtration,
    Calc,
    Strata,
    Nonmult,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::All => Suite::ALL.to_vec(),
            SuiteArg::Traces => vec![Suite::Traces],
            SuiteArg::Lefschetz => vec![Suite::Lefschetz],
            SuiteArg::Filtration => vec![Suite::Filtration],
            SuiteArg::Calc => vec![Suite::Calc],
            SuiteArg::Strata => vec![Suite::Strata],
            SuiteArg::Nonmult => vec![Suite::Nonmult],
        }
    }
}

fn run(cli: &Cli) -> Result<ReportDocument, CliError> {
    let ctx = Context {
        budgets: Budgets {
            direct: cli.max_direct_genus,
            formula: cli.max_formula_genus,
            closed_form: cli.max_closed_form_genus,
        },
        cache: if cli.no_cache { None } else { TableCache::from_env() },
    };
    match cli.command {
        Command::Betti { genus, power } => betti_cmd(&ctx, genus, power),
        Command::Involution { genus, method } => {
            let method = match method {
                MethodArg::Direct => Method::Direct,
                MethodArg::Formula => Method::Formula,
                MethodArg::Both => Method::Both,
            };
            involution_cmd(&ctx, genus, method)
        }
        Command::Verify { genus, suite } => verify_cmd(&ctx, genus, &suite.suites()),
        Command::Strata { genus } => strata_cmd(&ctx, genus),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(&cli) {
        Ok(doc) => {
            let text = match cli.format {
                Format::Json => doc.to_json(),
                Format::Csv => doc.to_csv(),
                Format::Table => doc.to_text(),
            };
            let _ = std::io::stdout().write_all(text.as_bytes());
            if doc.failed() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("ihtheta: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
