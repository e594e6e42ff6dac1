//! The `b = 12`, `g = 3` configuration rebuilt "in reverse" as a blow-up of
//! the plane, ending in two incompatible values of `h⁰(3D₁)`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::json;

use super::{
    adjunction_degree, clifford_bound, curve_h0, curve_h1, fmt_rat, ksq_from_config,
    noether_canonical_square, noether_check, riemann_roch_chi, ObstructionInstance,
};
use crate::lattice::{gram_of, sum, verify_basis, HomologyClass, IntMatrix, LatticeBasis};
use crate::report::{CertReport, Origin};

pub(crate) const B: usize = 12;
pub(crate) const G: i64 = 3;

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Scripted exact verification; never fails unless the arithmetic is wrong.
pub fn reverse_reconstruction_check() -> CertReport {
    let chi = 1;
    let c2 = 2 + B as i64;
    let k2 = noether_canonical_square(chi, c2);

    // Step 1: m₁ = 1 and all m_i = 1.
    let t = |m1: i64| (2 * G - 2 - m1) * (2 * G - 2 - m1);
    let mut equivalence_ok = true;
    let mut allowed = Vec::new();
    for m1 in 1..=100 {
        let ineq = t(m1) >= 9 * m1;
        let factored = (m1 - 16) * (m1 - 1) >= 0;
        equivalence_ok &= ineq == factored;
        if ineq && m1 < 16 {
            allowed.push(m1);
        }
    }
    // D₁² ≥ 2g + 1 would force b ≤ 2g + 3 = 9 < 12.
    let large_m1_excluded = (B as i64) > 2 * G + 3;
    let forced_tail = t(1) - k2;
    let all_ones = forced_tail == (B as i64 - 1);
    let inst = ObstructionInstance::without_fixed_part(G, vec![1; B]).expect("valid instance");
    let o1 = ksq_from_config(&inst);

    let multiplicities = CertReport::pass("reconstruction.multiplicities")
        .equal("K^2 = 10 - b", k2, -2, Origin::Reference)
        .relation(
            "(4-m1)^2 >= 9 m1  <=>  (m1-16)(m1-1) >= 0 on [1,100]",
            equivalence_ok,
            "=",
            true,
            equivalence_ok,
            Origin::Derived,
        )
        .equal(
            "m1 below 16 allowed",
            format!("{allowed:?}"),
            "[1]".to_string(),
            Origin::Derived,
        )
        .relation(
            "b > 2g + 3 excludes m1 >= 16",
            B,
            ">",
            2 * G + 3,
            large_m1_excluded,
            Origin::Reference,
        )
        .equal(
            "sum m_i forced by m1 = 1",
            forced_tail,
            B as i64 - 1,
            Origin::Derived,
        )
        .relation(
            "every m_i = 1",
            all_ones,
            "=",
            true,
            all_ones,
            Origin::Derived,
        )
        .equal(
            "K^2 from curve data",
            fmt_rat(&o1),
            k2.to_string(),
            Origin::Derived,
        )
        .note("the exclusion of D1^2 >= 2g + 1 uses the external bound b <= 2g + 3 as an axiom");

    // Step 2: lattice with D₁² = 1, D_j² = −1.
    let labels: Vec<String> = (1..=B).map(|i| format!("D{i}")).collect();
    let mut squares = vec![-1i64; B];
    squares[0] = 1;
    let s = LatticeBasis::new("S(D1..D12)", labels, IntMatrix::diagonal(&squares))
        .expect("diagonal basis");
    let d: Vec<HomologyClass> = (0..B).map(|i| s.generator(i)).collect();
    let tail = sum(&s, &d[1..]);
    let k = &d[0].scale(3) - &tail;
    let h = &d[0].scale(10) - &tail.scale(3);
    let e: Vec<HomologyClass> = (1..B).map(|j| &(&d[0].scale(3) + &d[j]) - &tail).collect();
    let sum_e = sum(&s, &e);

    let pair = |a: &HomologyClass, b: &HomologyClass| a.pair(b).expect("single basis");

    let mut adjunction_ok = adjunction_degree(&k, &d[0]).expect("single basis") == big(2 * G - 2);
    for dj in &d[1..] {
        adjunction_ok &= adjunction_degree(&k, dj).expect("single basis") == big(0);
    }

    // Back-substitution D₁ = 10H − 3ΣE, D_j = 3H − ΣE + E_j.
    let mut back_ok = d[0] == &h.scale(10) - &sum_e.scale(3);
    for (j, ej) in e.iter().enumerate() {
        back_ok &= d[j + 1] == &(&h.scale(3) - &sum_e) + ej;
    }

    let mut he = vec![h.clone()];
    he.extend(e.iter().cloned());
    let gram = gram_of(&he).expect("single basis");
    let mut expected = vec![-1i64; B];
    expected[0] = 1;
    let gram_ok = gram == IntMatrix::diagonal(&expected);
    let basis_ok = verify_basis(&he).expect("twelve classes").is_basis;
    let k_in_he = k == &h.scale(-3) + &sum_e;

    let mut ke_ok = true;
    let mut de_ok = true;
    for (j, ej) in e.iter().enumerate() {
        ke_ok &= pair(&k, ej) == big(-1);
        for (i, di) in d[1..].iter().enumerate() {
            let want = if i == j { 0 } else { 1 };
            de_ok &= pair(di, ej) == big(want);
        }
    }

    let lattice = CertReport::pass("reconstruction.lattice")
        .equal("K^2 in lattice", k.square(), big(-2), Origin::Reference)
        .relation(
            "adjunction for D1 (g=3) and D_j (g=1)",
            adjunction_ok,
            "=",
            true,
            adjunction_ok,
            Origin::Derived,
        )
        .relation(
            "D1 = 10H - 3sum E, D_j = 3H - sum E + E_j",
            back_ok,
            "=",
            true,
            back_ok,
            Origin::Derived,
        )
        .relation(
            "gram(H, E2..E12) = diag(1, -1 x11)",
            format!("{gram:?}"),
            "=",
            "diag(1, -1 x11)",
            gram_ok,
            Origin::Derived,
        )
        .relation(
            "{H, E_j} is a Z-basis",
            basis_ok,
            "=",
            true,
            basis_ok,
            Origin::Derived,
        )
        .relation(
            "K = -3H + sum E",
            k_in_he,
            "=",
            true,
            k_in_he,
            Origin::Reference,
        )
        .equal("K.H", pair(&k, &h), big(-3), Origin::Reference)
        .relation(
            "K.E_j = -1 for all j",
            ke_ok,
            "=",
            true,
            ke_ok,
            Origin::Reference,
        )
        .relation(
            "D_j.E_j = 0 and D_j.E_k = 1",
            de_ok,
            "=",
            true,
            de_ok,
            Origin::Reference,
        );

    // Step 3: Euler characteristics and sections.
    let chi_h = riemann_roch_chi(chi, &k, &h).expect("parity holds");
    let chi_e: Vec<BigInt> = e
        .iter()
        .map(|ej| riemann_roch_chi(chi, &k, ej).expect("parity holds"))
        .collect();
    let chi_e_ok = chi_e.iter().all(|c| c == &big(1));
    let k_plus_d_ok = e.iter().enumerate().all(|(j, ej)| &(&k + &d[j + 1]) == ej);
    let k_minus_e_ok = e.iter().enumerate().all(|(j, ej)| &k - ej == -&d[j + 1]);
    let noether = noether_check(&k.square(), c2 as i64, chi);

    // h⁰(E_j) = h⁰(K_{D_j}) = g(D_j) = 1 via 0 → K → K + D_j → K_{D_j} → 0 and h⁰(K) = h¹(K) = 0.
    let h0_e = 1i64;
    // h²(E_j) = h⁰(K − E_j) = h⁰(−D_j) = 0.
    let h2_e = 0i64;
    let h1_e = h0_e + h2_e - 1; // χ(E_j) = 1

    // 0 → O → O(ΣD_j) → ⊕ O_{D_j}(D_j) → 0, deg O_{D_j}(D_j) = −1 on an elliptic curve.
    let deg_dj = pair(&d[1], &d[1]).to_i64().expect("small");
    let h0_dj = curve_h0(deg_dj, 1).expect("negative degree");
    let h1_dj = curve_h1(h0_dj, deg_dj, 1);
    let h0_sum = 1 + (B as i64 - 1) * h0_dj;
    let h1_sum = (B as i64 - 1) * h1_dj;

    // 3D₁ ≡ D₂ + … + D₁₁ + E₁₂ and 0 → O(E₁₂) → O(3D₁) → ⊕_{j=2}^{11} O_{D_j}(E₁₂) → 0.
    let e_last = &e[B - 2];
    let middle = sum(&s, &d[1..B - 1]);
    let linear_equiv = d[0].scale(3) == &middle + e_last;
    let deg_on_dj = d[1..B - 1]
        .iter()
        .map(|dj| pair(dj, e_last).to_i64().expect("small"))
        .collect::<Vec<_>>();
    let h0_restrictions: i64 = deg_on_dj
        .iter()
        .map(|&dd| curve_h0(dd, 1).expect("positive degree"))
        .sum();
    let h0_3d1 = h0_e + h0_restrictions;

    // Clifford on D₁: degrees D₁·kD₁ = k.
    let degs: Vec<i64> = (1..=3)
        .map(|k| pair(&d[0], &d[0].scale(k)).to_i64().expect("small"))
        .collect();
    let cliff: Vec<i64> = degs
        .iter()
        .map(|&dd| clifford_bound(dd, G).expect("in range"))
        .collect();
    let ceiling = 1 + cliff.iter().sum::<i64>();

    let cohomology = CertReport::pass("reconstruction.sections")
        .equal("chi(H)", chi_h, big(3), Origin::Reference)
        .relation(
            "chi(E_j) = 1 for all j",
            chi_e_ok,
            "=",
            true,
            chi_e_ok,
            Origin::Reference,
        )
        .relation(
            "Noether (K^2 + c2)/12 = chi",
            fmt_rat(&noether.lhs),
            "=",
            noether.rhs,
            noether.pass,
            Origin::Reference,
        )
        .relation(
            "K + D_j = E_j",
            k_plus_d_ok,
            "=",
            true,
            k_plus_d_ok,
            Origin::Reference,
        )
        .relation(
            "K - E_j = -D_j",
            k_minus_e_ok,
            "=",
            true,
            k_minus_e_ok,
            Origin::Reference,
        )
        .equal("h0(E_j)", h0_e, 1, Origin::Reference)
        .equal("h1(E_j)", h1_e, 0, Origin::Reference)
        .equal("h2(E_j)", h2_e, 0, Origin::Reference)
        .equal("deg O_Dj(D_j)", deg_dj, -1, Origin::Elementary)
        .equal("h0(D2 + ... + D12)", h0_sum, 1, Origin::Reference)
        .equal(
            "h1(D2 + ... + D12)",
            h1_sum,
            B as i64 - 1,
            Origin::Reference,
        )
        .relation(
            "3D1 = D2 + ... + D11 + E12",
            linear_equiv,
            "=",
            true,
            linear_equiv,
            Origin::Reference,
        )
        .relation(
            "deg of E12 on D2..D11",
            format!("{deg_on_dj:?}"),
            "=",
            "all 1",
            deg_on_dj.iter().all(|&x| x == 1),
            Origin::Reference,
        )
        .equal(
            "h0(3D1) from the E12 sequence",
            h0_3d1,
            B as i64 - 1,
            Origin::Reference,
        )
        .equal(
            "Clifford bounds for deg 1, 2, 3 on genus 3",
            format!("{cliff:?}"),
            "[1, 2, 2]".to_string(),
            Origin::Reference,
        )
        .equal(
            "h0(3D1) ceiling 1 + 1 + 2 + 2",
            ceiling,
            6,
            Origin::Reference,
        )
        .note("h0(K) = h1(K) = 0 (p_g = q = 0) are inputs of the instance, not derived");

    let contradiction = h0_3d1 > ceiling;
    CertReport::pass("obstruction.reverse-reconstruction")
        .exact("b", B, Origin::Reference)
        .exact("g", G, Origin::Reference)
        .relation(
            "h0(3D1) exceeds its ceiling",
            h0_3d1,
            ">",
            ceiling,
            contradiction,
            Origin::Reference,
        )
        .with_data(json!({
            "axioms": ["h0(K) = 0", "h1(K) = 0", "D1^2 >= 2g + 1 implies b <= 2g + 3"],
            "h0_3D1_from_sequence": h0_3d1,
            "h0_3D1_clifford_ceiling": ceiling,
        }))
        .children([multiplicities, lattice, cohomology])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contradiction_is_certified() {
        let rep = reverse_reconstruction_check();
        assert!(rep.is_pass(), "{:#?}", rep.failures());
        assert_eq!(rep.children.len(), 3);
        let data = rep.data.as_ref().unwrap();
        assert_eq!(data["h0_3D1_from_sequence"], 11);
        assert_eq!(data["h0_3D1_clifford_ceiling"], 6);
    }
}
