//! Certified zeros of a meromorphic function: the boundary winding count
//! fixes how many zeros a box holds, a quadtree isolates them, and Newton's
//! method polishes each one.
//!
//! cargo run --example root_finding

use kcontact_cert::config::{check_transversality, find_zeros, winding_count, Analytic, Rect, C64};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // (z^5 - 1/32)(z + 0.3i)^2 / (z - 0.1), a double zero and a pole inside
    let pole = C64::new(0.1, 0.0);
    let dbl = C64::new(0.0, -0.3);
    let h = Analytic {
        f: move |z: C64| (z.powi(5) - 1.0 / 32.0) * (z - dbl) * (z - dbl) / (z - pole),
        df: move |z: C64| {
            let p = z.powi(5) - 1.0 / 32.0;
            let q = (z - dbl) * (z - dbl);
            let dp = 5.0 * z.powi(4);
            let dq = 2.0 * (z - dbl);
            ((dp * q + p * dq) * (z - pole) - p * q) / ((z - pole) * (z - pole))
        },
        poles: vec![pole],
    };
    let rect = Rect::square(C64::new(0.0, 0.0), 0.75);
    println!(
        "zeros in the box (with multiplicity): {}",
        winding_count(&h, &rect)?
    );
    for r in find_zeros(&h, &rect)? {
        let kind = if r.multiplicity == 1 {
            let t = check_transversality(&h, r.z, 0.1)?;
            format!("|h'| = {:.4}", t.derivative_gap)
        } else {
            "repeated".to_string()
        };
        println!(
            "  {:>24}  multiplicity {}  residual {:.1e}  {kind}",
            format!("{:.12}", r.z),
            r.multiplicity,
            r.residual
        );
    }
    Ok(())
}
