//! Building, merging and serializing certification reports, the same way the
//! command-line tool does.
//!
//! cargo run --example report_json [out.json]

use kcontact_cert::cli::write_report;
use kcontact_cert::divisor::obstruction_report;
use kcontact_cert::lattice::curve_basis_report;
use kcontact_cert::report::{merge_as, CertReport, Origin, ReportDocument};
use kcontact_cert::seifert::sw_contradiction_check;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let custom = CertReport::check("example.arithmetic", 2 + 2 == 4)
        .relation("2 + 2", 2 + 2, "=", 4, true, Origin::Elementary)
        .note("any boolean check can become a claim");
    let merged = merge_as(
        "example",
        vec![
            sw_contradiction_check(),
            curve_basis_report(),
            obstruction_report(1, 2)?,
            custom,
        ],
    )?;
    println!("{}", merged.summary());
    println!(
        "leaves: {}, failures: {:?}",
        merged.count_leaves(),
        merged.failures()
    );

    let json = ReportDocument::new(merged).to_json();
    let back = ReportDocument::from_json(&json)?;
    assert_eq!(back.to_json(), json);

    match std::env::args().nth(1) {
        Some(path) => {
            write_report(&path, &json)?;
            println!("wrote {} bytes to {path}", json.len());
        }
        None => println!("{}", &json[..json.len().min(600)]),
    }
    Ok(())
}
