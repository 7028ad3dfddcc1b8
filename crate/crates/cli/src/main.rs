mod args;
mod commands;
mod config;
mod error;
mod output;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use error::CliResult;

fn dispatch(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::DfsRun(a) => commands::dfs_run(a),
        Command::CoverageVerify(a) => commands::coverage_verify(a),
        Command::ReductionSim(a) => commands::reduction_sim(a),
        Command::GwSample(a) => commands::gw_sample(a),
        Command::CalibrateC(a) => commands::calibrate_c(a),
        Command::MapBound(a) => commands::map_bound(a),
        Command::TreePaths(a) => commands::tree_paths(a),
        Command::ScalingStudy(a) => commands::scaling_study(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
