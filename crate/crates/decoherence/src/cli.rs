use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::error::{AppError, Result};
use crate::output::{closed_forms_csv, write_files, CLOSED_FORMS_CSV};
use crate::preset::{preset, Overrides};
use crate::{execute, Parallel, RunConfig};

#[derive(Debug, Parser)]
#[command(
    name = "decoherence",
    version,
    about = "Purity decay in random-matrix models of a bipartite system"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output directory.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Worker threads (default: one per core).
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the experiment described by a TOML config file.
    Run {
        config: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run a named figure preset (fig1 .. fig5); each ensemble goes to OUT/<label>/.
    Preset {
        name: String,
        #[arg(long)]
        ensemble: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        tmax: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Tabulate the closed-form purity values for every (n, m) pair.
    Tables {
        #[arg(long, num_args = 1.., value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, num_args = 1.., value_delimiter = ',', required = true)]
        m: Vec<usize>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

pub fn dispatch(command: Command) -> Result<Vec<PathBuf>> {
    match command {
        Command::Run { config, common } => {
            let text = fs::read_to_string(&config).map_err(|e| AppError::io(&config, e))?;
            let parsed = RunConfig::parse(&text, &config.display().to_string())?;
            parsed.experiment()?;
            execute(&parsed, &common.out, &Parallel::new(common.workers)?)
        }
        Command::Preset {
            name,
            ensemble,
            seed,
            tmax,
            points,
            common,
        } => {
            let runs = preset(
                &name,
                Overrides {
                    ensemble,
                    seed,
                    tmax,
                    points,
                },
            )?;
            for (_, c) in &runs {
                c.experiment()?;
            }
            let exec = Parallel::new(common.workers)?;
            let mut written = Vec::new();
            for (label, c) in &runs {
                written.extend(execute(c, &common.out.join(label), &exec)?);
            }
            Ok(written)
        }
        Command::Tables { n, m, out } => {
            let csv = closed_forms_csv(&n, &m)?;
            write_files(&out, &[(CLOSED_FORMS_CSV, csv)])
        }
    }
}

/// Entry point shared by the binary and tests.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(cli.command) {
        Ok(files) => {
            for f in files {
                println!("{}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
