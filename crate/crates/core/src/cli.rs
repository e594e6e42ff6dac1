//! Command-line front end: one subcommand per verification plus `verify-all`.
//!
//! Exit codes: 0 when the report passes, 1 when a certification fails (the
//! report is still written), 2 for unusable input.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::config::{full_configuration_report, parse_params, ConfigError, ConfigRun, ParamsInput};
use crate::divisor::obstruction_report;
use crate::lattice::lattice_report;
use crate::report::{merge_as, CertReport, ReportDocument};
use crate::seifert::{seifert_report, sw_contradiction_check};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Curve basis, dectic genus, boundary groups and sampled lattice identities.
    VerifyLattice,
    /// Coincidences, charts, positivity and genus of the section configuration.
    VerifyConfig {
        /// Flat `key = value` file; missing keys keep their defaults.
        #[arg(long)]
        params: Option<PathBuf>,
    },
    /// Inequality chain, exhaustive scan and reverse reconstruction for `(g, b)`.
    VerifyObstruction {
        #[arg(long, default_value_t = 3)]
        g: i64,
        #[arg(long, default_value_t = 12)]
        b: i64,
    },
    /// Homology, Chern class, residue sets and spin type of the Seifert bundle.
    Seifert {
        #[arg(long, default_value_t = 2)]
        p: u64,
        /// Twelve comma-separated integers.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            default_value = "0,0,0,0,0,0,0,0,0,0,0,0"
        )]
        a: Vec<i64>,
    },
    /// Basic-class squares against Noether's formula.
    SwCheck,
    /// Every check above with default parameters.
    VerifyAll {
        #[arg(long)]
        params: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Parser)]
#[command(
    name = "kcontact-cert",
    version,
    about = "Certify the lattice, divisor, configuration and Seifert claims"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Output path for the JSON report, `-` for standard output.
    #[arg(long, global = true, default_value = "-")]
    pub report: String,
    /// Seed for the sampled property checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; defaults to the number of CPUs. Output does not depend on it.
    #[arg(long, global = true, env = "KCERT_PARALLELISM", value_parser = clap::value_parser!(u64).range(1..))]
    pub parallelism: Option<u64>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            report: "-".into(),
            seed: 0,
            parallelism: None,
        }
    }
}

/// Input that no certification can start from.
#[derive(Debug, thiserror::Error)]
pub enum UsageError {
    #[error("{path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Params { path: PathBuf, source: ConfigError },
    #[error("{0}")]
    Invalid(String),
}

fn load_params(path: Option<&Path>) -> Result<ParamsInput, UsageError> {
    let Some(path) = path else {
        return Ok(ParamsInput::default());
    };
    let text = std::fs::read_to_string(path).map_err(|source| UsageError::Read {
        path: path.into(),
        source,
    })?;
    parse_params(&text).map_err(|source| UsageError::Params {
        path: path.into(),
        source,
    })
}

fn config_report(input: &ParamsInput, origin: Option<&Path>) -> Result<CertReport, UsageError> {
    let failed = |e: ConfigError| {
        CertReport::check("config", false).text(
            "error",
            e.to_string(),
            crate::report::Origin::Derived,
        )
    };
    let resolved = match input.resolve() {
        Ok(r) => r,
        Err(e @ ConfigError::Params(_)) => {
            return Err(UsageError::Params {
                path: origin.map_or_else(|| "<defaults>".into(), Into::into),
                source: e,
            })
        }
        Err(e) => return Ok(failed(e)),
    };
    Ok(ConfigRun::run(resolved)
        .and_then(|run| full_configuration_report(&run))
        .unwrap_or_else(failed))
}

/// Builds the report for `cfg` on the current thread pool.
pub fn build_report(cfg: &RunConfig) -> Result<CertReport, UsageError> {
    let invalid = |e: &dyn std::fmt::Display| UsageError::Invalid(e.to_string());
    match &cfg.command {
        Command::VerifyLattice => Ok(lattice_report(cfg.seed)),
        Command::VerifyConfig { params } => {
            let input = load_params(params.as_deref())?;
            config_report(&input, params.as_deref())
        }
        Command::VerifyObstruction { g, b } => obstruction_report(*g, *b).map_err(|e| invalid(&e)),
        Command::Seifert { p, a } => seifert_report(*p, a).map_err(|e| invalid(&e)),
        Command::SwCheck => Ok(sw_contradiction_check()),
        Command::VerifyAll { params } => {
            let input = load_params(params.as_deref())?;
            let parts = vec![
                lattice_report(cfg.seed),
                config_report(&input, params.as_deref())?,
                obstruction_report(3, 12).map_err(|e| invalid(&e))?,
                seifert_report(2, &[0; 12]).map_err(|e| invalid(&e))?,
                sw_contradiction_check(),
            ];
            merge_as("verify-all", parts).map_err(|e| invalid(&e))
        }
    }
}

/// Writes `text` to `target`; files are replaced atomically through a
/// temporary file in the same directory.
pub fn write_report(target: &str, text: &str) -> std::io::Result<()> {
    if target == "-" {
        let mut out = std::io::stdout().lock();
        out.write_all(text.as_bytes())?;
        return out.flush();
    }
    let path = Path::new(target);
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    #[cfg(unix)]
    {
        // temporary files are created 0600; reports are ordinary output
        use std::os::unix::fs::PermissionsExt;
        tmp.as_file()
            .set_permissions(std::fs::Permissions::from_mode(0o644))?;
    }
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Runs one configuration and returns the process exit code.
pub fn run(cfg: &RunConfig) -> u8 {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cfg.parallelism {
        pool = pool.num_threads(n as usize);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return EXIT_USAGE;
        }
    };
    let report = match pool.install(|| build_report(cfg)) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let json = ReportDocument::new(report.clone()).to_json();
    if let Err(e) = write_report(&cfg.report, &json) {
        eprintln!("error: writing {}: {e}", cfg.report);
        return EXIT_FAIL;
    }
    eprintln!("{}", report.summary());
    if report.is_pass() {
        EXIT_PASS
    } else {
        for f in report.failures() {
            eprintln!("failed: {f}");
        }
        EXIT_FAIL
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> RunConfig {
        RunConfig::try_parse_from(std::iter::once("kcontact-cert").chain(args.iter().copied()))
            .unwrap()
    }

    #[test]
    fn flags() {
        let c = parse(&[
            "seifert",
            "--p",
            "3",
            "--a",
            "0,1,0,0,0,0,0,0,0,0,0,-2",
            "--report",
            "out.json",
        ]);
        assert_eq!(
            c.command,
            Command::Seifert {
                p: 3,
                a: vec![0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, -2]
            }
        );
        assert_eq!(c.report, "out.json");
        assert_eq!(
            parse(&["verify-obstruction"]).command,
            Command::VerifyObstruction { g: 3, b: 12 }
        );
        assert!(
            RunConfig::try_parse_from(["kcontact-cert", "sw-check", "--parallelism", "0"]).is_err()
        );
    }

    #[test]
    fn genus_one_is_certified() {
        let cfg = RunConfig::new(Command::VerifyObstruction { g: 1, b: 2 });
        let rep = build_report(&cfg).unwrap();
        assert!(rep.is_pass());
        assert!(rep.find("obstruction.case2").is_some());
    }

    #[test]
    fn bad_seifert_input_is_usage() {
        let cfg = RunConfig::new(Command::Seifert {
            p: 4,
            a: vec![0; 12],
        });
        assert!(build_report(&cfg).is_err());
    }

    #[test]
    fn atomic_write() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.json");
        write_report(path.to_str().unwrap(), "{}\n").unwrap();
        write_report(path.to_str().unwrap(), "[]\n").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "[]\n");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
