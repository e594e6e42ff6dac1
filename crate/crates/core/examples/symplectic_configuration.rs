//! Certify the eleven sections and three meromorphic sections at the default
//! points: every pairwise coincidence, chart consistency, positivity and the
//! genus of the glued surface.
//!
//! cargo run --release --example symplectic_configuration [params-file]

use std::time::Instant;

use kcontact_cert::config::{full_configuration_report, parse_params, ConfigRun, ParamsInput};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let input = match std::env::args().nth(1) {
        Some(path) => parse_params(&std::fs::read_to_string(path)?)?,
        None => ParamsInput::default(),
    };
    let start = Instant::now();
    let resolved = input.resolve()?;
    let p = &resolved.params;
    println!(
        "lambda = {:.6e} (lambda_max = {:.6e})",
        p.lambda, resolved.bounds.lambda_max
    );
    println!("eps = {:e}, c = {:e}", p.eps, p.c);

    let run = ConfigRun::run(resolved)?;
    for (name, (pairs, roots)) in ["sigma-sigma", "sigma-tau", "tau-tau"]
        .iter()
        .zip(run.pair_groups())
    {
        let min = roots.iter().min().copied().unwrap_or(0);
        let max = roots.iter().max().copied().unwrap_or(0);
        println!("{name}: {pairs} pairs, {min}..={max} coincidence points each");
    }
    let worst = run
        .pairs
        .iter()
        .flat_map(|o| o.roots.iter().map(|r| r.residual / r.scale))
        .fold(0.0, f64::max);
    println!("largest relative residual: {worst:.2e}");

    let report = full_configuration_report(&run)?;
    println!("{}", report.summary());
    println!("elapsed: {:.2?}", start.elapsed());
    Ok(())
}
