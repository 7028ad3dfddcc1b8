use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::args::OutputArgs;
use crate::error::{CliError, CliResult};

/// Everything needed to re-run a command: the subcommand, its resolved
/// configuration, the raw arguments and the output locations.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub version: String,
    pub args: Vec<String>,
    pub config: serde_json::Value,
    pub master_seed: u64,
    pub output_paths: Vec<String>,
    /// Seconds since the Unix epoch; not part of the reproducibility contract.
    pub timestamp: u64,
}

/// Writes `rows` as CSV with a header row to `--out` (or stdout) and, when
/// writing to a file, a JSON manifest next to it.
pub fn emit<R: Serialize>(
    output: &OutputArgs,
    subcommand: &str,
    config: &impl Serialize,
    master_seed: u64,
    rows: &[R],
) -> CliResult<()> {
    match &output.out {
        None => write_rows(csv::Writer::from_writer(std::io::stdout().lock()), rows),
        Some(path) => {
            let file = std::fs::File::create(path).map_err(|e| CliError::io(path, e))?;
            write_rows(csv::Writer::from_writer(file), rows)?;
            let manifest_path = output
                .manifest
                .clone()
                .unwrap_or_else(|| manifest_next_to(path));
            let manifest = RunManifest {
                subcommand: subcommand.to_string(),
                version: env!("CARGO_PKG_VERSION").to_string(),
                args: std::env::args().skip(1).collect(),
                config: serde_json::to_value(config)?,
                master_seed,
                output_paths: vec![path.display().to_string()],
                timestamp: SystemTime::now()
                    .duration_since(UNIX_EPOCH)
                    .map_or(0, |d| d.as_secs()),
            };
            let mut file = std::fs::File::create(&manifest_path)
                .map_err(|e| CliError::io(&manifest_path, e))?;
            serde_json::to_writer_pretty(&mut file, &manifest)?;
            writeln!(file).map_err(|e| CliError::io(&manifest_path, e))?;
            Ok(())
        }
    }
}

fn write_rows<W: Write, R: Serialize>(mut writer: csv::Writer<W>, rows: &[R]) -> CliResult<()> {
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush().map_err(|e| CliError::io("csv output", e))
}

/// `report.csv` -> `report.manifest.json`.
pub fn manifest_next_to(path: &Path) -> PathBuf {
    path.with_extension("manifest.json")
}

/// Fails with exit status 2 when `--check` is set and `ok` is false.
pub fn check(output: &OutputArgs, ok: bool, what: impl FnOnce() -> String) -> CliResult<()> {
    let message = what();
    if ok {
        eprintln!("check passed: {message}");
        Ok(())
    } else if output.check {
        Err(CliError::Check(message))
    } else {
        eprintln!("note: {message} (not met)");
        Ok(())
    }
}
