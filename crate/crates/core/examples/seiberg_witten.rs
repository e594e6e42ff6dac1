//! The basic-class arithmetic: every sign pattern of a candidate basic class
//! squares to -2, while Noether's formula forces K^2 = 22.
//!
//! cargo run --example seiberg_witten

use kcontact_cert::report::WitnessValue;
use kcontact_cert::seifert::sw_contradiction_check;

fn main() {
    let report = sw_contradiction_check();
    for w in &report.witnesses {
        let shown = match &w.value {
            WitnessValue::Relation {
                lhs,
                op,
                rhs,
                holds,
            } => format!(
                "{lhs} {op} {rhs} ({})",
                if *holds { "holds" } else { "fails" }
            ),
            WitnessValue::Exact { value } | WitnessValue::Text { value } => value.clone(),
            WitnessValue::Float { value, tolerance } => format!("{value:e} (tol {tolerance:e})"),
        };
        println!("{:<45} {shown}", w.label);
    }
    for n in &report.notes {
        println!("note: {n}");
    }
    println!("status: {}", report.status);
}
