//! Exact divisor arithmetic on a compact complex surface.
//!
//! Cohomology dimensions are never computed from sheaves here. What is
//! checked is the integer bookkeeping that the classical identities impose:
//! adjunction, Riemann-Roch, Noether's formula and Clifford's bound, plus the
//! two arguments that rule out an algebraic surface carrying twelve disjoint
//! curves of genera (3, 1, …, 1) spanning rational homology.

mod obstruction;
mod reconstruction;

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::lattice::{HomologyClass, LatticeBasis, LatticeError};
use crate::report::{CertReport, Origin};

pub use obstruction::{
    b2_bound, bound_rhs, canonical_from_curves, case1_inequality_chain, case1_report, case1_scan,
    case2_report, evaluate_chain, ksq_from_config, Case1Scan, ChainEvaluation, ChainStep,
    M1Summary, ObstructionInstance, ScanOutcome,
};
pub use reconstruction::reverse_reconstruction_check;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum DivisorError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(
        "curve `{label}` violates adjunction: K.D + D^2 = {value}, expected 2g - 2 = {expected}"
    )]
    Adjunction {
        label: String,
        value: BigInt,
        expected: i64,
    },
    #[error("c2 = {c2} but 2 - 2b1 + b2 = {expected}")]
    EulerCharacteristic { c2: i64, expected: i64 },
    #[error("D^2 - K.D = {0} is odd; the inputs are inconsistent")]
    Parity(BigInt),
    #[error("self-intersection of D{0} is zero")]
    ZeroSelfIntersection(usize),
    #[error("{0}")]
    Domain(String),
    #[error("degree {d} is outside the Clifford range [0, {max}]")]
    CliffordRange { d: i64, max: i64 },
}

#[derive(Debug, Clone)]
pub struct Curve {
    pub label: String,
    pub class: HomologyClass,
    pub genus: i64,
}

/// Numerical invariants of a surface together with a list of smooth curves.
#[derive(Debug, Clone)]
pub struct SurfaceInvariants {
    pub b1: i64,
    pub b2: i64,
    pub q: i64,
    pub p_g: i64,
    pub c2: i64,
    pub canonical: HomologyClass,
    pub curves: Vec<Curve>,
}

impl SurfaceInvariants {
    /// Checks that every curve lives in the canonical class's basis and
    /// satisfies adjunction, and that `c2 = 2 − 2b1 + b2`.
    pub fn new(
        b1: i64,
        b2: i64,
        q: i64,
        p_g: i64,
        c2: i64,
        canonical: HomologyClass,
        curves: Vec<Curve>,
    ) -> Result<Self, DivisorError> {
        let expected = 2 - 2 * b1 + b2;
        if c2 != expected {
            return Err(DivisorError::EulerCharacteristic { c2, expected });
        }
        for c in &curves {
            let value = adjunction_degree(&canonical, &c.class)?;
            if value != BigInt::from(2 * c.genus - 2) {
                return Err(DivisorError::Adjunction {
                    label: c.label.clone(),
                    value,
                    expected: 2 * c.genus - 2,
                });
            }
        }
        Ok(SurfaceInvariants {
            b1,
            b2,
            q,
            p_g,
            c2,
            canonical,
            curves,
        })
    }

    /// `χ(O) = 1 − q + p_g`.
    pub fn chi(&self) -> i64 {
        1 - self.q + self.p_g
    }

    pub fn basis(&self) -> &Arc<LatticeBasis> {
        self.canonical.basis()
    }

    pub fn canonical_square(&self) -> BigInt {
        self.canonical.square()
    }

    pub fn riemann_roch_chi(&self, d: &HomologyClass) -> Result<BigInt, DivisorError> {
        riemann_roch_chi(self.chi(), &self.canonical, d)
    }

    pub fn noether_check(&self) -> NoetherCheck {
        noether_check(&self.canonical_square(), self.c2, self.chi())
    }
}

/// `K·D + D²`, which equals `2g − 2` for a smooth curve of genus `g`.
pub fn adjunction_degree(k: &HomologyClass, d: &HomologyClass) -> Result<BigInt, DivisorError> {
    Ok(k.pair(d)? + d.square())
}

/// `χ(O(D)) = χ(O) + (D² − K·D)/2`.
pub fn riemann_roch_chi(
    chi_o: i64,
    k: &HomologyClass,
    d: &HomologyClass,
) -> Result<BigInt, DivisorError> {
    let twice = d.square() - k.pair(d)?;
    if twice.is_odd() {
        return Err(DivisorError::Parity(twice));
    }
    Ok(BigInt::from(chi_o) + twice / 2)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoetherCheck {
    /// `(K² + c₂)/12`
    pub lhs: BigRational,
    /// `χ(O)`
    pub rhs: i64,
    pub pass: bool,
}

pub fn noether_check(k_squared: &BigInt, c2: i64, chi: i64) -> NoetherCheck {
    let lhs = BigRational::new(k_squared + c2, BigInt::from(12));
    let pass = lhs == BigRational::from_integer(BigInt::from(chi));
    NoetherCheck {
        lhs,
        rhs: chi,
        pass,
    }
}

/// The value of `K²` that Noether's formula forces: `12χ − c₂`.
pub fn noether_canonical_square(chi: i64, c2: i64) -> i64 {
    12 * chi - c2
}

/// Clifford's bound `⌊d/2⌋ + 1` on `h⁰` of a degree-`d` divisor on a genus-`g`
/// curve, valid for `0 ≤ d ≤ 2g − 2`.
pub fn clifford_bound(d: i64, g: i64) -> Result<i64, DivisorError> {
    if g < 1 {
        return Err(DivisorError::Domain(format!(
            "Clifford needs genus >= 1, got {g}"
        )));
    }
    let max = 2 * g - 2;
    if !(0..=max).contains(&d) {
        return Err(DivisorError::CliffordRange { d, max });
    }
    Ok(d.div_euclid(2) + 1)
}

/// `h⁰` of a line bundle of degree `d` on a genus-`g` curve, when the degree
/// alone determines it. Returns `None` in the special range `0 ≤ d ≤ 2g − 2`.
pub fn curve_h0(d: i64, g: i64) -> Option<i64> {
    if d < 0 {
        Some(0)
    } else if d > 2 * g - 2 {
        Some(d + 1 - g)
    } else {
        None
    }
}

/// `h¹` of a degree-`d` bundle whose `h⁰` is known: Riemann-Roch on the curve.
pub fn curve_h1(h0: i64, d: i64, g: i64) -> i64 {
    h0 - (d + 1 - g)
}

/// Everything known about `(g, b)`: the genus-1 argument for `g = 1`, the
/// Case-1 bound and scan for `g ≥ 2`, and the reverse reconstruction when
/// `(g, b) = (3, 12)`.
pub fn obstruction_report(g: i64, b: i64) -> Result<CertReport, DivisorError> {
    if g < 1 || b < 1 {
        return Err(DivisorError::Domain(format!(
            "need g >= 1 and b >= 1, got g = {g}, b = {b}"
        )));
    }
    let mut children = Vec::new();
    if g == 1 {
        children.push(case2_report(b)?);
    } else {
        children.push(case1_report(g, b, &Case1Scan::new(g, b))?);
    }
    if (g, b) == (reconstruction::G, reconstruction::B as i64) {
        children.push(reverse_reconstruction_check());
    }
    Ok(CertReport::pass("obstruction")
        .exact("g", g, Origin::Elementary)
        .exact("b", b, Origin::Elementary)
        .children(children))
}

fn rational_to_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn fmt_rat(r: &BigRational) -> String {
    rational_to_string(r)
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn is_nonneg(r: &BigRational) -> bool {
    !(r < &BigRational::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{blown_up_plane, canonical_class, cubic_class, dectic_class};

    fn diag_surface(squares: &[i64]) -> Arc<LatticeBasis> {
        let labels: Vec<String> = (1..=squares.len()).map(|i| format!("D{i}")).collect();
        let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        LatticeBasis::diagonal("test", &refs, squares).unwrap()
    }

    #[test]
    fn adjunction_examples() {
        let s = diag_surface(&[1, -1]);
        let d1 = s.generator(0);
        let d2 = s.generator(1);
        // K chosen so that K.D1 = 3 and K.D2 = 1.
        let k = s.class_i64(&[3, -1]);
        assert_eq!(adjunction_degree(&k, &d1).unwrap(), BigInt::from(4));
        assert_eq!(adjunction_degree(&k, &d2).unwrap(), BigInt::from(0));
        // rational (-1)-curve: K.E = -1
        let x = blown_up_plane(1);
        let k = canonical_class(&x);
        assert_eq!(
            adjunction_degree(&k, &x.generator(1)).unwrap(),
            BigInt::from(-2)
        );
    }

    #[test]
    fn plane_blowup_invariants() {
        let x = blown_up_plane(11);
        let curves = (1..=11)
            .map(|k| Curve {
                label: format!("c{k}"),
                class: cubic_class(&x, k),
                genus: 1,
            })
            .chain([Curve {
                label: "d".into(),
                class: dectic_class(&x),
                genus: 3,
            }])
            .collect();
        let s = SurfaceInvariants::new(0, 12, 0, 0, 14, canonical_class(&x), curves).unwrap();
        assert_eq!(s.canonical_square(), BigInt::from(-2));
        assert!(s.noether_check().pass);
        assert_eq!(s.riemann_roch_chi(&x.zero()).unwrap(), BigInt::from(1));
        assert_eq!(
            s.riemann_roch_chi(&x.generator(0)).unwrap(),
            BigInt::from(3)
        );
    }

    #[test]
    fn constructor_rejects_bad_curves() {
        let x = blown_up_plane(1);
        let bad = Curve {
            label: "h".into(),
            class: x.generator(0),
            genus: 1,
        };
        let err =
            SurfaceInvariants::new(0, 2, 0, 0, 4, canonical_class(&x), vec![bad]).unwrap_err();
        assert!(matches!(err, DivisorError::Adjunction { .. }));
        let err = SurfaceInvariants::new(0, 2, 0, 0, 5, canonical_class(&x), vec![]).unwrap_err();
        assert!(matches!(err, DivisorError::EulerCharacteristic { .. }));
    }

    #[test]
    fn parity_error() {
        let s = diag_surface(&[1]);
        let k = s.class_i64(&[0]);
        assert!(matches!(
            riemann_roch_chi(1, &k, &s.generator(0)),
            Err(DivisorError::Parity(_))
        ));
    }

    #[test]
    fn noether_examples() {
        assert_eq!(noether_canonical_square(1, 14), -2);
        assert_eq!(noether_canonical_square(5, 38), 22);
        assert!(noether_check(&BigInt::from(9), 3, 1).pass);
        let off = noether_check(&BigInt::from(8), 3, 1);
        assert!(!off.pass);
        assert_eq!(fmt_rat(&off.lhs), "11/12");
    }

    #[test]
    fn clifford() {
        assert_eq!(clifford_bound(1, 3), Ok(1));
        assert_eq!(clifford_bound(2, 3), Ok(2));
        assert_eq!(clifford_bound(3, 3), Ok(2));
        assert_eq!(
            clifford_bound(5, 3),
            Err(DivisorError::CliffordRange { d: 5, max: 4 })
        );
        assert!(clifford_bound(-1, 3).is_err());
    }

    #[test]
    fn curve_cohomology() {
        assert_eq!(curve_h0(-1, 1), Some(0));
        assert_eq!(curve_h1(0, -1, 1), 1);
        assert_eq!(curve_h0(1, 1), Some(1));
        assert_eq!(curve_h0(2, 3), None);
    }
}
