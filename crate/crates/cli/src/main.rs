use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tsring_cli::{
    cmd_basis, cmd_oracle_check, cmd_table, cmd_verify, table_csv, Check, CliError, FieldSpec, Report, VerifyOptions,
};
use tsring_core::blocks::DEFAULT_SCAN_BOUND;
use tsring_core::{ModelParams, Strategy};

#[derive(Parser)]
#[command(name = "tsring", version, about = "Exact computations in the ring of perfect p-permutation bimodules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the canonical basis.
    Basis(Common),
    /// Emit the full structure-constant table.
    Table(Common),
    /// Run verification checks.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Comma list of oracle, assoc, theorem-a, theorem-b, theorem-c, theorem-d, semisimple.
        #[arg(long, default_value = "oracle,assoc,theorem-a,theorem-b,theorem-c,theorem-d,semisimple")]
        which: String,
        /// Comma list of Q and F<q>.
        #[arg(long, default_value = "Q")]
        field: String,
        /// Largest number of primitive central idempotents scanned.
        #[arg(long, default_value_t = DEFAULT_SCAN_BOUND)]
        scan_bound: usize,
    },
    /// Compare the closed-form table with the coset-enumeration oracle.
    OracleCheck(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    e: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Reserved; every computation is deterministic.
    #[arg(long)]
    seed: Option<u64>,
}

impl Common {
    fn params(&self) -> Result<ModelParams, CliError> {
        Ok(ModelParams::new(self.p, self.n, self.e)?)
    }

    fn emit(&self, text: &str) -> Result<(), CliError> {
        match &self.out {
            Some(path) => std::fs::write(path, text)?,
            None => print!("{text}"),
        }
        Ok(())
    }

    fn emit_report(&self, r: &Report) -> Result<(), CliError> {
        match self.format {
            Format::Json => self.emit(&r.render_json()),
            Format::Csv => self.emit(&r.render_csv()?),
        }
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let strategy = Strategy::default();
    match cli.command {
        Command::Basis(c) => {
            let r = cmd_basis(c.params()?);
            c.emit_report(&r)?;
            Ok(r.status.exit_code())
        }
        Command::Table(c) => {
            let params = c.params()?;
            match c.format {
                Format::Json => c.emit_report(&cmd_table(params, strategy))?,
                Format::Csv => c.emit(&table_csv(params, strategy)?)?,
            }
            Ok(0)
        }
        Command::Verify { common, which, field, scan_bound } => {
            let opts = VerifyOptions {
                which: Check::parse_list(&which)?,
                fields: FieldSpec::parse_list(&field)?,
                scan_bound,
                strategy,
            };
            let r = cmd_verify(common.params()?, &opts)?;
            common.emit_report(&r)?;
            Ok(r.status.exit_code())
        }
        Command::OracleCheck(c) => {
            let r = cmd_oracle_check(c.params()?, strategy)?;
            c.emit_report(&r)?;
            Ok(r.status.exit_code())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
