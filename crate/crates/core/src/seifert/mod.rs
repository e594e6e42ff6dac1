//! Invariants of Seifert circle bundles over a 4-orbifold whose isotropy
//! locus is a union of disjoint smooth surfaces.
//!
//! The orbifold here is `X = CP² # 11 CP̄²` with branch curves
//! `C̃₁..C̃₁₁` (genus 1, self-intersection −1) and `G̃` (genus 3,
//! self-intersection +1), multiplicities `m_i = pⁱ`. The curve classes form
//! an orthogonal basis of `H₂(X)`, which is what every computation below
//! works in.

mod primes;
mod residue;
mod spin;
mod sw;

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow};
use serde::Serialize;
use serde_json::json;

use crate::lattice::{AbelianGroup, HomologyClass, IntMatrix, LatticeBasis};
use crate::report::{CertReport, Origin};

pub use primes::{factorize, is_prime};
pub use residue::{admissible_a1, bezout_residue, inverse_mod, ResidueSet};
pub use spin::{characteristic_vector, spin_class, spin_report, SpinClass};
pub use sw::sw_contradiction_check;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SeifertError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("gcd(b_{index}, m_{index}) = gcd({b}, {m}) != 1")]
    OrbitInvariant { index: usize, b: i64, m: BigInt },
    #[error("p^2 a2 + 1 = {0} does not fit the 64-bit factorization limit")]
    TooLarge(i128),
    #[error("{0}")]
    Domain(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchCurve {
    pub genus: i64,
    pub m: BigInt,
    pub selfint: i64,
}

#[derive(Debug, Clone)]
pub struct SeifertData {
    pub p: u64,
    pub curves: Vec<BranchCurve>,
    /// Orbit invariants `b_i`, coprime to `m_i`.
    pub b: Vec<i64>,
    /// `c₁(B) = Σ a_i [C̃_i]`.
    pub a: Vec<i64>,
    /// `lcm(m_i)`
    pub mu: BigInt,
}

impl SeifertData {
    /// General data: multiplicities given explicitly.
    pub fn new(
        p: u64,
        curves: Vec<BranchCurve>,
        b: Vec<i64>,
        a: Vec<i64>,
    ) -> Result<Self, SeifertError> {
        if !is_prime(p) {
            return Err(SeifertError::NotPrime(p));
        }
        if curves.is_empty() {
            return Err(SeifertError::Domain("no branch curves".into()));
        }
        if b.len() != curves.len() || a.len() != curves.len() {
            return Err(SeifertError::Domain(format!(
                "{} curves but {} orbit invariants and {} coefficients",
                curves.len(),
                b.len(),
                a.len()
            )));
        }
        for (i, (c, &bi)) in curves.iter().zip(&b).enumerate() {
            if c.m < BigInt::one() {
                return Err(SeifertError::Domain(format!(
                    "m_{} must be positive",
                    i + 1
                )));
            }
            if !BigInt::from(bi).gcd(&c.m).is_one() {
                return Err(SeifertError::OrbitInvariant {
                    index: i + 1,
                    b: bi,
                    m: c.m.clone(),
                });
            }
        }
        let mu = curves.iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.m));
        Ok(SeifertData {
            p,
            curves,
            b,
            a,
            mu,
        })
    }

    /// Branch curves of genera (1 ×11, 3), self-intersections (−1 ×11, +1),
    /// multiplicities `pⁱ` and `b_i = 1`.
    pub fn standard(p: u64, a: Vec<i64>) -> Result<Self, SeifertError> {
        let curves = (1..=12u32)
            .map(|i| BranchCurve {
                genus: if i == 12 { 3 } else { 1 },
                m: BigInt::from(p).pow(i),
                selfint: if i == 12 { 1 } else { -1 },
            })
            .collect();
        Self::new(p, curves, vec![1; 12], a)
    }

    /// Orthogonal lattice spanned by the branch curves.
    pub fn curve_lattice(&self) -> Arc<LatticeBasis> {
        let labels: Vec<String> = (1..=self.curves.len()).map(|i| format!("C{i}")).collect();
        let squares: Vec<i64> = self.curves.iter().map(|c| c.selfint).collect();
        LatticeBasis::new("branch-curves", labels, IntMatrix::diagonal(&squares))
            .expect("diagonal basis")
    }
}

/// `H₂(M) = Z^rank ⊕ ⊕ (Z/m)^count`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SecondHomology {
    pub rank: i64,
    /// `(modulus, count)` as decimal strings for the modulus.
    pub torsion: Vec<(String, i64)>,
}

impl SecondHomology {
    pub fn torsion_rank(&self) -> i64 {
        self.torsion.iter().map(|(_, c)| c).sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({ "rank": self.rank, "torsion": self.torsion })
    }
}

impl std::fmt::Display for SecondHomology {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Z^{}", self.rank)?;
        for (m, c) in &self.torsion {
            write!(f, " + (Z/{m})^{c}")?;
        }
        Ok(())
    }
}

/// `H₂(M) = Z^k ⊕ ⊕_i (Z/m_i)^{2g_i}` for `k + 1` disjoint branch curves
/// spanning rational homology. `curves` lists `(g_i, m_i)`.
pub fn seifert_homology(k: i64, curves: &[(i64, BigInt)]) -> Result<SecondHomology, SeifertError> {
    if k < 0 {
        return Err(SeifertError::Domain(format!("k = {k} is negative")));
    }
    if curves.is_empty() {
        return Err(SeifertError::Domain("empty curve list".into()));
    }
    if curves.len() as i64 != k + 1 {
        return Err(SeifertError::Domain(format!(
            "{} curves cannot span a rank-{} lattice with b2 = k + 1",
            curves.len(),
            k + 1
        )));
    }
    let torsion = curves
        .iter()
        .filter(|(g, m)| *g > 0 && m > &BigInt::one())
        .map(|(g, m)| (m.to_string(), 2 * g))
        .collect();
    Ok(SecondHomology { rank: k, torsion })
}

/// Independent check of the torsion part: the Smith form of the diagonal
/// presentation with each `m_i` repeated `2g_i` times.
pub fn torsion_via_smith(curves: &[(i64, BigInt)]) -> AbelianGroup {
    let diag: Vec<BigInt> = curves
        .iter()
        .flat_map(|(g, m)| std::iter::repeat_n(m.clone(), (2 * g) as usize))
        .collect();
    let n = diag.len();
    AbelianGroup::from_presentation(&IntMatrix::diagonal(&diag), n)
}

/// `true` at `i` when restriction `H²(X) → H²(D_i, Z/m_i) ≅ Z/m_i` is onto:
/// the pairings of a basis with `D_i` (column `i`) together with `m_i` have gcd 1.
pub fn surjectivity_check(pairing: &IntMatrix, m: &[BigInt]) -> Result<Vec<bool>, SeifertError> {
    if pairing.cols() != m.len() {
        return Err(SeifertError::Domain(format!(
            "pairing matrix has {} columns for {} multiplicities",
            pairing.cols(),
            m.len()
        )));
    }
    Ok(m.iter()
        .enumerate()
        .map(|(i, mi)| {
            pairing
                .column(i)
                .iter()
                .fold(mi.clone(), |acc, x| acc.gcd(x))
                .is_one()
        })
        .collect())
}

/// `μ·c₁(B) + Σ b_i (μ/m_i) [C̃_i]` in the curve basis.
pub fn chern_coefficients(data: &SeifertData) -> Result<HomologyClass, SeifertError> {
    let mut coords = Vec::with_capacity(data.curves.len());
    for (i, ((c, &bi), &ai)) in data.curves.iter().zip(&data.b).zip(&data.a).enumerate() {
        if !BigInt::from(bi).gcd(&c.m).is_one() {
            return Err(SeifertError::OrbitInvariant {
                index: i + 1,
                b: bi,
                m: c.m.clone(),
            });
        }
        coords.push(&data.mu * ai + BigInt::from(bi) * (&data.mu / &c.m));
    }
    Ok(data
        .curve_lattice()
        .class(coords)
        .expect("one coefficient per curve"))
}

/// The closed form `p^{12−i}(pⁱa_i + 1)` valid when `b_i = 1`, `m_i = pⁱ`.
pub fn chern_closed_form(p: u64, a: &[i64]) -> Vec<BigInt> {
    let n = a.len() as u32;
    let p = BigInt::from(p);
    a.iter()
        .enumerate()
        .map(|(i, &ai)| {
            let i = i as u32 + 1;
            Pow::pow(&p, n - i) * (Pow::pow(&p, i) * ai + 1)
        })
        .collect()
}

/// Homology, the three `H₁ = 0` conditions, the residue set for `a₁` and the
/// spin class, for the standard data with prime `p` and coefficients `a`.
pub fn seifert_report(p: u64, a: &[i64]) -> Result<CertReport, SeifertError> {
    if a.len() != 12 {
        return Err(SeifertError::Domain(format!(
            "expected 12 coefficients a_i, got {}",
            a.len()
        )));
    }
    let data = SeifertData::standard(p, a.to_vec())?;
    let curves: Vec<(i64, BigInt)> = data.curves.iter().map(|c| (c.genus, c.m.clone())).collect();
    let h2 = seifert_homology(11, &curves)?;
    let smith = torsion_via_smith(&curves);
    let expected_order = curves.iter().fold(BigInt::one(), |acc, (g, m)| {
        acc * Pow::pow(m, (2 * g) as u32)
    });
    let torsion_ok = smith.free_rank == 0 && smith.torsion_order() == expected_order;

    let homology = CertReport::pass("seifert.homology")
        .exact("p", p, Origin::Elementary)
        .exact("H2", h2.to_string(), Origin::Reference)
        .equal("free rank", h2.rank, 11, Origin::Reference)
        .equal("torsion summands", h2.torsion.len(), 12, Origin::Derived)
        .equal(
            "total torsion rank",
            h2.torsion_rank(),
            11 * 2 + 6,
            Origin::Derived,
        )
        .relation(
            "Smith form of the diagonal presentation has the same order",
            smith.torsion_order(),
            "=",
            &expected_order,
            torsion_ok,
            Origin::Derived,
        )
        .with_data(h2.to_json());

    let lattice = data.curve_lattice();
    let m: Vec<BigInt> = data.curves.iter().map(|c| c.m.clone()).collect();
    let surj = surjectivity_check(lattice.gram(), &m)?;
    let surj_ok = surj.iter().all(|&s| s);
    let chern = chern_coefficients(&data)?;
    let closed = chern_closed_form(p, a);
    let closed_ok = chern.coords() == closed.as_slice();
    let primitive = chern.is_primitive().unwrap_or(false);
    let pb = BigInt::from(p);
    let g12: BigInt = (&pb * a[0] + 1u32).gcd(&(&pb * &pb * a[1] + 1u32));

    let h1 = CertReport::pass("seifert.h1-vanishing")
        .relation("H1(X) = 0", true, "=", true, true, Origin::Elementary)
        .relation(
            "restriction onto each H2(D_i, Z/m_i)",
            format!("{surj:?}"),
            "=",
            "all true",
            surj_ok,
            Origin::Derived,
        )
        .relation(
            "closed form p^(12-i)(p^i a_i + 1)",
            closed_ok,
            "=",
            true,
            closed_ok,
            Origin::Derived,
        )
        .relation(
            "gcd(p a1 + 1, p^2 a2 + 1)",
            &g12,
            "=",
            1,
            g12.is_one(),
            Origin::Reference,
        )
        .relation(
            "c1 primitive",
            chern.content(),
            "=",
            1,
            primitive,
            Origin::Derived,
        )
        .with_data(json!({ "chern_coefficients": chern.to_serial().coords }));

    let rs = admissible_a1(p, a[1])?;
    let forbidden = rs.is_forbidden(a[0]);
    let residues = CertReport::check("seifert.a1-residues", !forbidden)
        .exact("p^2 a2 + 1", rs.n, Origin::Elementary)
        .exact(
            "factorization",
            format!(
                "{:?}",
                rs.primes.iter().map(|&(q, e)| (q, e)).collect::<Vec<_>>()
            ),
            Origin::Derived,
        )
        .exact(
            "forbidden residues alpha_j",
            format!("{:?}", rs.residues),
            Origin::Derived,
        )
        .exact(
            "allowed residues mod Q",
            rs.allowed_count(),
            Origin::Derived,
        )
        .relation(
            "a1 outside the forbidden set",
            a[0],
            "not in",
            "A",
            !forbidden,
            Origin::Derived,
        );

    let w2 = characteristic_vector(lattice.gram()).expect("gram is unimodular");
    let spin = spin_class(&data, &w2)?;
    let spin_rep = CertReport::pass("seifert.spin")
        .exact("w2(X) in curve basis", format!("{w2:?}"), Origin::Derived)
        .exact("kernel dimension", spin.kernel_dim, Origin::Derived)
        .exact("spin", spin.spin, Origin::Derived);

    Ok(CertReport::pass("seifert")
        .exact("p", p, Origin::Elementary)
        .exact("a", format!("{a:?}"), Origin::Elementary)
        .children([homology, h1, residues, spin_rep]))
}

/// Seeded property check: for each allowed residue `ā` and `t ∈ [0, translates)`,
/// `gcd(p(ā + tQ) + 1, p²a₂ + 1) = 1`; and every forbidden residue fails.
pub fn residue_property_report(
    cases: &[(u64, i64)],
    translates: u64,
) -> Result<CertReport, SeifertError> {
    let mut checked = 0u64;
    let mut failures = Vec::new();
    for &(p, a2) in cases {
        let rs = admissible_a1(p, a2)?;
        let q = rs.modulus();
        let n = BigInt::from(rs.n);
        let allowed = rs.allowed_residues(100_000)?;
        if allowed.len() as u128 != rs.allowed_count() {
            failures.push(format!("p={p} a2={a2}: allowed count mismatch"));
        }
        for r in 0..q.min(100_000) {
            let is_allowed = allowed.binary_search(&r).is_ok();
            for t in 0..translates {
                let a1 = BigInt::from(r) + BigInt::from(t) * BigInt::from(q);
                let coprime = (BigInt::from(p) * &a1 + 1u32).gcd(&n).is_one();
                checked += 1;
                if coprime != is_allowed {
                    failures.push(format!("p={p} a2={a2} a1={a1}"));
                }
            }
        }
    }
    Ok(
        CertReport::check("seifert.residue-property", failures.is_empty())
            .exact("cases", format!("{cases:?}"), Origin::Elementary)
            .exact("translates per residue", translates, Origin::Elementary)
            .exact("checks", checked, Origin::Derived)
            .equal("failures", failures.len(), 0, Origin::Derived),
    )
}

pub(crate) fn zero_one(v: &BigInt) -> u8 {
    u8::from(v.is_odd())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn standard_curves(p: u64) -> Vec<(i64, BigInt)> {
        (1..=12u32)
            .map(|i| (if i == 12 { 3 } else { 1 }, BigInt::from(p).pow(i)))
            .collect()
    }

    #[test]
    fn homology_for_small_primes() {
        for p in [2u64, 3, 5] {
            let h = seifert_homology(11, &standard_curves(p)).unwrap();
            assert_eq!(h.rank, 11);
            assert_eq!(h.torsion.len(), 12);
            assert_eq!(h.torsion[0], (p.to_string(), 2));
            assert_eq!(h.torsion[11], (BigInt::from(p).pow(12u32).to_string(), 6));
        }
    }

    #[test]
    fn thirty_six_curves() {
        let mut curves: Vec<(i64, BigInt)> = Vec::new();
        let genera: Vec<i64> = std::iter::repeat_n(1, 31).chain([2, 2, 3, 3, 3]).collect();
        for (i, g) in genera.iter().enumerate() {
            curves.push((*g, BigInt::from(2).pow(i as u32 + 1)));
        }
        let h = seifert_homology(35, &curves).unwrap();
        assert_eq!(h.rank, 35);
        assert_eq!(h.torsion_rank(), 31 * 2 + 2 * 4 + 3 * 6);
    }

    #[test]
    fn trivial_isotropy_has_no_torsion() {
        let h = seifert_homology(0, &[(2, BigInt::one())]).unwrap();
        assert!(h.torsion.is_empty());
        assert!(seifert_homology(-1, &[]).is_err());
        assert!(seifert_homology(2, &[(1, BigInt::from(2))]).is_err());
    }

    #[test]
    fn surjectivity() {
        let m = vec![BigInt::from(4), BigInt::from(9)];
        assert_eq!(
            surjectivity_check(&IntMatrix::diagonal(&[1, -1]), &m).unwrap(),
            vec![true, true]
        );
        let m = vec![BigInt::from(2)];
        assert_eq!(
            surjectivity_check(&IntMatrix::diagonal(&[2]), &m).unwrap(),
            vec![false]
        );
        let m = vec![BigInt::one()];
        assert_eq!(
            surjectivity_check(&IntMatrix::diagonal(&[6]), &m).unwrap(),
            vec![true]
        );
    }

    #[test]
    fn chern_for_p2_zero() {
        let data = SeifertData::standard(2, vec![0; 12]).unwrap();
        let c = chern_coefficients(&data).unwrap();
        let want: Vec<BigInt> = (0..12)
            .rev()
            .map(|e| BigInt::from(2).pow(e as u32))
            .collect();
        assert_eq!(c.coords(), want.as_slice());
        assert!(c.is_primitive().unwrap());
    }

    #[test]
    fn chern_general_matches_closed_form() {
        let a = vec![1, 2, 0, -1, 3, 0, 0, 5, 0, 0, 1, 0];
        let data = SeifertData::standard(3, a.clone()).unwrap();
        assert_eq!(
            chern_coefficients(&data).unwrap().coords(),
            chern_closed_form(3, &a).as_slice()
        );
        // gcd(3*1+1, 9*2+1) = gcd(4, 19) = 1
        assert!(chern_coefficients(&data).unwrap().is_primitive().unwrap());
    }

    #[test]
    fn invalid_data() {
        assert_eq!(
            SeifertData::standard(4, vec![0; 12]).unwrap_err(),
            SeifertError::NotPrime(4)
        );
        let curves = vec![BranchCurve {
            genus: 1,
            m: BigInt::from(4),
            selfint: -1,
        }];
        assert!(matches!(
            SeifertData::new(2, curves, vec![2], vec![0]),
            Err(SeifertError::OrbitInvariant { .. })
        ));
    }

    #[test]
    fn default_report_passes() {
        for p in [2u64, 3, 5] {
            let r = seifert_report(p, &[0; 12]).unwrap();
            assert!(r.is_pass(), "{:?}", r.failures());
        }
    }

    #[test]
    fn residue_property() {
        let r = residue_property_report(&[(2, 2), (3, 1), (5, 7), (7, -2)], 50).unwrap();
        assert!(r.is_pass());
    }
}
