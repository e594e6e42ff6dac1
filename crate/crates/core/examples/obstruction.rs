//! Why no algebraic surface carries twelve disjoint curves of genera
//! (3, 1, ..., 1) spanning rational homology: the inequality chain, the
//! exhaustive scan over self-intersections, and the reverse reconstruction.
//!
//! cargo run --release --example obstruction [g] [b]

use kcontact_cert::divisor::{
    b2_bound, bound_rhs, case1_scan, evaluate_chain, obstruction_report,
    reverse_reconstruction_check, Case1Scan, ObstructionInstance,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<i64>());
    let g = args.next().transpose()?.unwrap_or(3);
    let b = args.next().transpose()?.unwrap_or(12);

    if g >= 2 {
        println!("b2 <= {} for genus {g}", b2_bound(g)?);
        for m1 in [1, 2, 4, 8, 16] {
            println!("  m1 = {m1:>2}: 2 b2 <= {}", bound_rhs(g, m1)?);
        }

        // the most symmetric candidate: every curve has |D^2| = 1
        let inst = ObstructionInstance::without_fixed_part(g, vec![1; b as usize])?;
        let ev = evaluate_chain(&inst, b)?;
        println!("chain for m = (1, ..., 1):");
        for s in &ev.steps {
            println!(
                "  {:<40} {} {} {}  [{}]",
                s.label,
                s.lhs,
                s.op,
                s.rhs,
                if s.holds { "holds" } else { "fails" }
            );
        }

        let out = case1_scan(&Case1Scan::new(g, b))?;
        println!(
            "scan: {} instances over m1 in {:?}, {} admissible",
            out.instances,
            out.m1_feasible.iter().map(|f| f.m1).collect::<Vec<_>>(),
            out.admissible
        );
    }

    if (g, b) == (3, 12) {
        let rec = reverse_reconstruction_check();
        println!("reverse reconstruction: {}", rec.status);
        for n in &rec.notes {
            println!("  {n}");
        }
    }

    let report = obstruction_report(g, b)?;
    println!("{}", report.summary());
    Ok(())
}
