mod checks;
mod config;
mod functions;
mod report;
mod run;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use checks::{builtin_checks, run_check, run_suite};
use config::JobArgs;
use report::Report;
use run::Job;

const EXIT_NUMERIC: u8 = 1;
const EXIT_CONFIG: u8 = 2;

#[derive(Parser)]
#[command(name = "fracbessel", version, about = "Fractional powers of the Bessel operator")]
#[command(after_help = after_help())]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate B^-alpha f on the grid.
    Eval(JobArgs),
    /// Evaluate the kernel at (x, y) for each grid x.
    Kernel(JobArgs),
    /// Check the Mellin identity at each s.
    MellinCheck(JobArgs),
    /// Check the group law on the grid (left_zero or right_infinite).
    GroupCheck(JobArgs),
    /// Check that B^-1 inverts B_nu on the grid.
    InverseCheck(JobArgs),
    /// Check the Hankel identity at each xi.
    HankelCheck(JobArgs),
    /// Evaluate the resolvent of the right-infinite integral on the grid.
    Resolvent(JobArgs),
    /// Reconstruct f from its Bessel Taylor formula about b on the grid.
    Taylor(JobArgs),
    /// Run every identity check that applies to the configuration.
    Suite(JobArgs),
}

fn after_help() -> String {
    let checks: Vec<_> = builtin_checks()
        .iter()
        .map(|c| format!("  {:<15} {} (tol {:e})", c.name(), c.summary(), c.tolerance()))
        .collect();
    format!(
        "Test functions:\n{}\n\nIdentity checks:\n{}\n\nExit status: 0 success, 1 numeric failure, 2 usage or configuration error.",
        functions::catalogue(),
        checks.join("\n")
    )
}

impl Command {
    fn args(&self) -> &JobArgs {
        match self {
            Command::Eval(a)
            | Command::Kernel(a)
            | Command::MellinCheck(a)
            | Command::GroupCheck(a)
            | Command::InverseCheck(a)
            | Command::HankelCheck(a)
            | Command::Resolvent(a)
            | Command::Taylor(a)
            | Command::Suite(a) => a,
        }
    }

    fn run(&self, job: &Job) -> Result<Report> {
        let check = |name: &str| run_check(builtin_checks().get(name).expect("built-in check"), job);
        Ok(match self {
            Command::Eval(_) => Report::Points(run::eval(job)?),
            Command::Kernel(_) => Report::Points(run::kernel(job)?),
            Command::Resolvent(_) => Report::Points(run::resolvent(job)?),
            Command::MellinCheck(_) => Report::Checks(check("mellin")?),
            Command::GroupCheck(_) => Report::Checks(check("group")?),
            Command::InverseCheck(_) => Report::Checks(check("inverse")?),
            Command::HankelCheck(_) => Report::Checks(check("hankel")?),
            Command::Taylor(_) => Report::Checks(check("taylor")?),
            Command::Suite(_) => Report::Checks(run_suite(job)?),
        })
    }
}

fn write_report(report: &Report, args: &JobArgs, job: &Job) -> Result<()> {
    let format = job.config.output;
    match &args.out {
        Some(path) => {
            let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            let mut w = BufWriter::new(file);
            report.write(format, &mut w)?;
            w.flush()?;
        }
        None => report.write(format, std::io::stdout().lock())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let args = cli.command.args();
    let outcome = args.resolve().and_then(Job::new).and_then(|job| {
        let report = cli.command.run(&job)?;
        write_report(&report, args, &job)?;
        Ok(report.success())
    });
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_NUMERIC),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}
