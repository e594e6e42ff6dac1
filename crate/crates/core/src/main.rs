use std::process::ExitCode;

use clap::Parser;
use kcontact_cert::cli::{run, RunConfig};

fn main() -> ExitCode {
    ExitCode::from(run(&RunConfig::parse()))
}
