//! Second Stiefel-Whitney class of the total space, computed mod 2 in the
//! curve basis.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use super::{admissible_a1, zero_one, SeifertData, SeifertError};
use crate::lattice::{blown_up_plane, canonical_class, curve_basis, IntMatrix};
use crate::report::{CertReport, Origin};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpinClass {
    pub spin: bool,
    /// Dimension over `Z/2` of the kernel of `π*: H²(X; Z/2) → H²(M; Z/2)`.
    pub kernel_dim: usize,
    /// Generator of the kernel when it is a line.
    pub kernel: Option<Vec<u8>>,
}

/// Solves `G·w ≡ diag(G) (mod 2)`: the characteristic vector `w` with
/// `w·x ≡ x·x` for every `x`. `None` if `G` is singular mod 2.
pub fn characteristic_vector(gram: &IntMatrix) -> Option<Vec<u8>> {
    let n = gram.rows();
    let mut rows: Vec<Vec<u8>> = (0..n)
        .map(|i| {
            let mut r: Vec<u8> = (0..n).map(|j| zero_one(&gram[(i, j)])).collect();
            r.push(zero_one(&gram[(i, i)]));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| rows[r][col] == 1)?;
        rows.swap(col, pivot);
        let pivot_row = rows[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != col && row[col] == 1 {
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x ^= y;
                }
            }
        }
    }
    Some(rows.iter().map(|r| r[n]).collect())
}

/// For `p = 2` the pullback kills all of `H²(X; Z/2)`, so `M` is spin. For odd
/// `p` the kernel is the line spanned by `c₁(B) + Σ b_i C̃_i`, and `M` is spin
/// exactly when `w₂(X)` lies on it.
pub fn spin_class(data: &SeifertData, w2: &[u8]) -> Result<SpinClass, SeifertError> {
    if !super::is_prime(data.p) {
        return Err(SeifertError::NotPrime(data.p));
    }
    if w2.len() != data.curves.len() {
        return Err(SeifertError::Domain(format!(
            "w2 has {} entries for {} curves",
            w2.len(),
            data.curves.len()
        )));
    }
    if data.p == 2 {
        return Ok(SpinClass {
            spin: true,
            kernel_dim: data.curves.len(),
            kernel: None,
        });
    }
    let v: Vec<u8> = data
        .a
        .iter()
        .zip(&data.b)
        .map(|(&a, &b)| zero_one(&BigInt::from(a + b)))
        .collect();
    let w2_zero = w2.iter().all(|&x| x & 1 == 0);
    let on_line = w2_zero || w2.iter().map(|x| x & 1).eq(v.iter().copied());
    let nonzero = v.iter().any(|&x| x == 1);
    Ok(SpinClass {
        spin: on_line,
        kernel_dim: usize::from(nonzero),
        kernel: nonzero.then_some(v),
    })
}

/// `w₂ = h + Σ e_i` of the blown-up plane rewritten in the curve basis, using
/// that the curve basis is orthogonal with squares ±1.
fn w2_from_plane() -> Vec<u8> {
    let x = blown_up_plane(11);
    let w = -canonical_class(&x);
    curve_basis(&x)
        .iter()
        .map(|c| {
            let (q, r) = w.pair(c).expect("same basis").div_rem(&c.square());
            debug_assert!(r == BigInt::from(0));
            zero_one(&q)
        })
        .collect()
}

/// The three spin scenarios for the standard twelve-curve data.
pub fn spin_report() -> Result<CertReport, SeifertError> {
    let probe = SeifertData::standard(2, vec![0; 12])?;
    let w2 = characteristic_vector(probe.curve_lattice().gram()).expect("unimodular");
    let from_plane = w2_from_plane();
    let all_ones = w2.iter().all(|&x| x == 1);

    let basis = CertReport::pass("seifert.spin.w2")
        .exact("characteristic vector", format!("{w2:?}"), Origin::Derived)
        .relation(
            "equals h + e1 + ... + e11 in the curve basis",
            format!("{from_plane:?}"),
            "=",
            format!("{w2:?}"),
            from_plane == w2,
            Origin::Derived,
        )
        .relation(
            "w2 = sum of all curve classes",
            all_ones,
            "=",
            true,
            all_ones,
            Origin::Reference,
        );

    let mut cases = Vec::new();
    for (label, a) in [
        ("p=2, a=(1,2,...,12)", (1..=12).collect::<Vec<i64>>()),
        ("p=2, a=0", vec![0; 12]),
    ] {
        let data = SeifertData::standard(2, a)?;
        let s = spin_class(&data, &w2)?;
        cases.push(
            CertReport::check(format!("seifert.spin.{label}"), s.spin).exact(
                "spin",
                s.spin,
                Origin::Reference,
            ),
        );
    }

    // a2 odd: a1 = 0 is admissible for 9 + 1 = 10.
    let mut a = vec![0i64; 12];
    a[1] = 1;
    let rs = admissible_a1(3, a[1])?;
    let data = SeifertData::standard(3, a.clone())?;
    let s = spin_class(&data, &w2)?;
    cases.push(
        CertReport::check("seifert.spin.p=3-a2-odd", !s.spin && !rs.is_forbidden(a[0]))
            .exact("a", format!("{a:?}"), Origin::Elementary)
            .relation(
                "a1 admissible",
                a[0],
                "not in",
                "A",
                !rs.is_forbidden(a[0]),
                Origin::Derived,
            )
            .relation("spin", s.spin, "=", false, !s.spin, Origin::Reference),
    );

    // All a_i even; a1 avoids the residues of p^2 a2 + 1 = 19 and of q0 = 2.
    let mut a = vec![0i64; 12];
    a[1] = 2;
    let rs = admissible_a1(3, a[1])?.with_prime_two()?;
    a[0] = (1..)
        .find(|&t| !rs.is_forbidden(t))
        .expect("allowed residues exist");
    let data = SeifertData::standard(3, a.clone())?;
    let s = spin_class(&data, &w2)?;
    let primitive = super::chern_coefficients(&data)?
        .is_primitive()
        .unwrap_or(false);
    cases.push(
        CertReport::check("seifert.spin.p=3-all-even", s.spin && primitive)
            .exact("a", format!("{a:?}"), Origin::Elementary)
            .exact("residue for q0 = 2", rs.residues[0], Origin::Derived)
            .relation(
                "a1 even",
                a[0],
                "even",
                true,
                a[0] % 2 == 0,
                Origin::Derived,
            )
            .relation(
                "c1 primitive",
                primitive,
                "=",
                true,
                primitive,
                Origin::Derived,
            )
            .relation("spin", s.spin, "=", true, s.spin, Origin::Reference),
    );

    Ok(basis.children(cases))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn characteristic_vectors() {
        assert_eq!(
            characteristic_vector(&IntMatrix::diagonal(&[1, -1, 1])),
            Some(vec![1, 1, 1])
        );
        // hyperbolic plane is even
        let u = IntMatrix::from_i64(2, 2, &[0, 1, 1, 0]);
        assert_eq!(characteristic_vector(&u), Some(vec![0, 0]));
        assert_eq!(characteristic_vector(&IntMatrix::diagonal(&[2])), None);
    }

    #[test]
    fn plane_w2_matches() {
        assert_eq!(w2_from_plane(), vec![1; 12]);
    }

    #[test]
    fn p2_always_spin() {
        for a in [vec![0; 12], vec![1; 12], (0..12).collect()] {
            let d = SeifertData::standard(2, a).unwrap();
            assert!(spin_class(&d, &[1; 12]).unwrap().spin);
        }
    }

    #[test]
    fn odd_p() {
        let even = SeifertData::standard(3, vec![0; 12]).unwrap();
        let s = spin_class(&even, &[1; 12]).unwrap();
        assert!(s.spin);
        assert_eq!(s.kernel_dim, 1);
        let mut a = vec![0; 12];
        a[1] = 1;
        let odd = SeifertData::standard(3, a).unwrap();
        assert!(!spin_class(&odd, &[1; 12]).unwrap().spin);
        assert!(spin_class(&odd, &[0; 12]).unwrap().spin);
    }

    #[test]
    fn report_passes() {
        let r = spin_report().unwrap();
        assert!(r.is_pass(), "{}", r.summary());
    }
}
