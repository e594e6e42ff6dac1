//! The plane blown up at k points, with the classes used by the construction.

use std::sync::Arc;

use num_bigint::BigInt;

use super::{gram_of, verify_basis, HomologyClass, IntMatrix, LatticeBasis};

/// `H₂(CP² # k·CP̄²)` in the standard basis `{h, e₁..e_k}`, Gram `diag(1, −1, …, −1)`.
pub fn blown_up_plane(k: usize) -> Arc<LatticeBasis> {
    let mut labels = vec!["h".to_string()];
    labels.extend((1..=k).map(|i| format!("e{i}")));
    let mut squares = vec![-1i64; k + 1];
    squares[0] = 1;
    LatticeBasis::new(
        format!("CP2#{k}CP2bar"),
        labels,
        IntMatrix::diagonal(&squares),
    )
    .expect("standard blow-up basis is well formed")
}

pub fn projective_plane() -> Arc<LatticeBasis> {
    LatticeBasis::new("CP2", vec!["h".into()], IntMatrix::diagonal(&[1]))
        .expect("plane basis is well formed")
}

fn exceptional_count(x: &Arc<LatticeBasis>) -> usize {
    x.rank() - 1
}

/// `c_k = 3h − Σ_{i≠k} e_i`, the cubic through every blown-up point except the k-th (1-based).
pub fn cubic_class(x: &Arc<LatticeBasis>, k: usize) -> HomologyClass {
    let n = exceptional_count(x);
    assert!((1..=n).contains(&k), "cubic index out of range");
    let mut coords = vec![BigInt::from(-1); n + 1];
    coords[0] = BigInt::from(3);
    coords[k] = BigInt::from(0);
    x.class(coords).expect("length matches rank")
}

pub fn cubic_classes(x: &Arc<LatticeBasis>) -> Vec<HomologyClass> {
    (1..=exceptional_count(x))
        .map(|k| cubic_class(x, k))
        .collect()
}

/// `d = 10h − 3Σe_i`, the dectic with a triple point at each blown-up point.
pub fn dectic_class(x: &Arc<LatticeBasis>) -> HomologyClass {
    let n = exceptional_count(x);
    let mut coords = vec![BigInt::from(-3); n + 1];
    coords[0] = BigInt::from(10);
    x.class(coords).expect("length matches rank")
}

/// `K = −3h + Σe_i`.
pub fn canonical_class(x: &Arc<LatticeBasis>) -> HomologyClass {
    let n = exceptional_count(x);
    let mut coords = vec![BigInt::from(1); n + 1];
    coords[0] = BigInt::from(-3);
    x.class(coords).expect("length matches rank")
}

/// `{c₁, …, c_k, d}`.
pub fn curve_basis(x: &Arc<LatticeBasis>) -> Vec<HomologyClass> {
    let mut v = cubic_classes(x);
    v.push(dectic_class(x));
    v
}

/// Gram matrix and basis determinant of `{c₁..c₁₁, d}` on the 11-fold blow-up.
pub fn curve_basis_is_unimodular() -> (IntMatrix, BigInt, bool) {
    let x = blown_up_plane(11);
    let classes = curve_basis(&x);
    let gram = gram_of(&classes).expect("single basis");
    let check = verify_basis(&classes).expect("twelve classes");
    (gram, check.det, check.is_basis)
}

/// Geometric genus of a plane curve of `degree` whose only singularities are
/// ordinary points of the given multiplicities.
pub fn plane_curve_genus(degree: i64, multiplicities: &[i64]) -> i64 {
    (degree - 1) * (degree - 2) / 2 - multiplicities.iter().map(|m| m * (m - 1) / 2).sum::<i64>()
}
