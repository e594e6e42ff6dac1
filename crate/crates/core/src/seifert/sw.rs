//! Lattice consequence of the Seiberg-Witten product formula for the
//! fiber sum of the orbifold base with `E(1)`.

use num_bigint::BigInt;

use crate::divisor::{noether_canonical_square, noether_check};
use crate::lattice::{sum, LatticeBasis};
use crate::report::{CertReport, Origin};

/// Enumerates `κ = ±T₁₂ ± T₁₃ ± T₁₄ ± E₁ ± E₂` and compares `κ²` with the
/// `K²` forced by Noether's formula if the manifold were complex.
pub fn sw_contradiction_check() -> CertReport {
    let z = LatticeBasis::diagonal(
        "sw-basic",
        &["T12", "T13", "T14", "E1", "E2"],
        &[0, 0, 0, -1, -1],
    )
    .expect("diagonal lattice");
    let gens: Vec<_> = (0..5).map(|i| z.generator(i)).collect();

    let mut squares = Vec::with_capacity(32);
    for mask in 0u32..32 {
        let signed: Vec<_> = gens
            .iter()
            .enumerate()
            .map(|(i, g)| if mask >> i & 1 == 1 { -g } else { g.clone() })
            .collect();
        let kappa = sum(&z, &signed);
        squares.push(kappa.square());
    }
    let minus_two = BigInt::from(-2);
    let all_minus_two = squares.iter().all(|s| *s == minus_two);
    let off_diagonal_zero =
        (0..5).all(|i| (0..5).all(|j| i == j || z.gram()[(i, j)] == BigInt::from(0)));

    // Hodge bookkeeping as used for the contradiction: b2+ = 1 + p_g,
    // b2- = h11 + p_g - 1.
    let (p_g, h11, q) = (4i64, 28i64, 0i64);
    let b2_plus = 1 + p_g;
    let b2_minus = h11 + p_g - 1;
    let b2 = b2_plus + b2_minus;
    let c2 = 2 + b2;
    let chi = 1 - q + p_g;
    let k2 = noether_canonical_square(chi, c2);
    let noether = noether_check(&BigInt::from(k2), c2, chi);

    // The same Betti numbers read with b2+ = 1 + 2 p_g.
    let alt_pg = (b2_plus - 1) / 2;
    let alt_k2 = noether_canonical_square(1 - q + alt_pg, c2);

    CertReport::pass("seiberg-witten")
        .equal("sign patterns", squares.len(), 32, Origin::Elementary)
        .relation("basic classes pairwise orthogonal", off_diagonal_zero, "=", true, off_diagonal_zero, Origin::Elementary)
        .relation("kappa^2 for every sign pattern", "-2", "=", "-2", all_minus_two, Origin::Reference)
        .equal("b2+", b2_plus, 5, Origin::Reference)
        .equal("b2-", b2_minus, 31, Origin::Reference)
        .equal("c2 = 2 + b2", c2, 38, Origin::Derived)
        .equal("chi(O) = 1 - q + p_g", chi, 5, Origin::Reference)
        .relation("(K^2 + c2)/12 = chi", crate::divisor::fmt_rat(&noether.lhs), "=", chi, noether.pass, Origin::Reference)
        .equal("K^2 from Noether", k2, 22, Origin::Reference)
        .relation("K^2 differs from kappa^2", k2, "!=", -2, k2 != -2, Origin::Reference)
        .text(
            "Hodge convention",
            format!(
                "with b2+ = 1 + 2 p_g the same Betti numbers give p_g = {alt_pg}, chi = {}, K^2 = {alt_k2}",
                1 - q + alt_pg
            ),
            Origin::Derived,
        )
        .note("the contradiction depends on reading b2+ as 1 + p_g; under b2+ = 1 + 2 p_g, K^2 equals kappa^2")
        .with_data(serde_json::json!({
            "kappa_squares": squares.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "b2_plus": b2_plus,
            "b2_minus": b2_minus,
            "k_squared": k2,
            "k_squared_with_b2_plus_1_plus_2pg": alt_k2,
        }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn passes_with_expected_numbers() {
        let r = sw_contradiction_check();
        assert!(r.is_pass(), "{}", r.summary());
        let data = r.data.as_ref().unwrap();
        assert_eq!(data["k_squared"], 22);
        assert_eq!(data["kappa_squares"].as_array().unwrap().len(), 32);
        assert_eq!(data["k_squared_with_b2_plus_1_plus_2pg"], -2);
    }
}
