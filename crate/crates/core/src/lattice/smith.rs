use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// Result of [`smith_normal_form`]: `u · m · v = diag(factors)`.
#[derive(Debug, Clone)]
pub struct SmithForm {
    /// Non-negative invariant factors, `min(rows, cols)` of them, each dividing the next.
    /// Trailing zeros mark the rank deficiency.
    pub factors: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.iter().filter(|d| !d.is_zero()).count()
    }

    /// Rebuilds the diagonal matrix with the original shape.
    pub fn diagonal_matrix(&self, rows: usize, cols: usize) -> IntMatrix {
        let mut d = IntMatrix::zeros(rows, cols);
        for (i, f) in self.factors.iter().enumerate() {
            d[(i, i)] = f.clone();
        }
        d
    }
}

/// Smith normal form by row/column gcd elimination.
///
/// At each stage the smallest nonzero entry of the trailing block becomes the
/// pivot; its row and column are cleared by division with remainder, and a
/// pivot that fails to divide the remaining block absorbs the offending row.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let steps = rows.min(cols);

    for t in 0..steps {
        let Some((pi, pj)) = smallest_entry(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut dirty = false;

            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = a[(i, t)].div_floor(&a[(t, t)]);
                let nq = -q;
                a.add_row_multiple(i, t, &nq);
                u.add_row_multiple(i, t, &nq);
                if !a[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = a[(t, j)].div_floor(&a[(t, t)]);
                let nq = -q;
                a.add_col_multiple(j, t, &nq);
                v.add_col_multiple(j, t, &nq);
                if !a[(t, j)].is_zero() {
                    dirty = true;
                }
            }

            if dirty {
                // A nonzero remainder is smaller than the pivot: bring it in.
                let (pi, pj) = smallest_in_cross(&a, t);
                a.swap_rows(t, pi);
                u.swap_rows(t, pi);
                a.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }

            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&a[(t, t)])));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }

        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }

    let factors = (0..steps).map(|i| a[(i, i)].clone()).collect();
    SmithForm { factors, u, v }
}

fn smallest_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < a[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Smallest nonzero entry in row `t` or column `t` (pivot included).
fn smallest_in_cross(a: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let mut best_abs: Option<BigInt> = None;
    let cands = (t..a.rows())
        .map(|i| (i, t))
        .chain((t + 1..a.cols()).map(|j| (t, j)));
    for (i, j) in cands {
        let x = a[(i, j)].abs();
        if x.is_zero() {
            continue;
        }
        if best_abs.as_ref().is_none_or(|b| &x < b) {
            best = (i, j);
            best_abs = Some(x);
        }
    }
    best
}

/// Finitely generated abelian group `Z^free_rank ⊕ ⊕ Z/torsion_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    pub free_rank: usize,
    /// Invariant factors greater than one, in divisibility order.
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    /// Group presented by `generators` generators and the relations given by
    /// the rows of `relations` (one column per generator).
    pub fn from_presentation(relations: &IntMatrix, generators: usize) -> Self {
        assert!(
            relations.rows() == 0 || relations.cols() == generators,
            "relation width must equal the generator count"
        );
        if relations.rows() == 0 {
            return AbelianGroup {
                free_rank: generators,
                torsion: Vec::new(),
            };
        }
        let snf = smith_normal_form(relations);
        let torsion: Vec<BigInt> = snf
            .factors
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .cloned()
            .collect();
        AbelianGroup {
            free_rank: generators - snf.rank(),
            torsion,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }
}

impl std::fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Abelianization of the boundary group ⟨α, β, γ | [α, β]γ⟩.
///
/// The commutator dies, leaving the single relation γ = 0.
pub fn punctured_torus_boundary_abelianization() -> AbelianGroup {
    AbelianGroup::from_presentation(&IntMatrix::from_i64(1, 3, &[0, 0, 1]), 3)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_shape(m: &IntMatrix, snf: &SmithForm) {
        let d = snf.u.mul(m).mul(&snf.v);
        assert_eq!(d, snf.diagonal_matrix(m.rows(), m.cols()));
        assert!(snf.u.determinant().abs().is_one());
        assert!(snf.v.determinant().abs().is_one());
        for w in snf.factors.windows(2) {
            if !w[1].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]), "{:?}", snf.factors);
            }
        }
    }

    #[test]
    fn diag_two_three() {
        let m = IntMatrix::diagonal(&[2, 3]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.factors, vec![BigInt::from(1), BigInt::from(6)]);
        check_shape(&m, &snf);
    }

    #[test]
    fn identity_is_fixed() {
        let snf = smith_normal_form(&IntMatrix::identity(3));
        assert!(snf.factors.iter().all(One::is_one));
    }

    #[test]
    fn commutator_relation_leaves_rank_two() {
        let g = punctured_torus_boundary_abelianization();
        assert_eq!(g.free_rank, 2);
        assert!(g.torsion.is_empty());
    }

    #[test]
    fn rectangular_and_singular_inputs() {
        let m = IntMatrix::from_i64(2, 4, &[2, 4, 6, 8, 4, 8, 12, 16]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.factors, vec![BigInt::from(2), BigInt::zero()]);
        check_shape(&m, &snf);

        let z = IntMatrix::zeros(3, 2);
        let snf = smith_normal_form(&z);
        assert!(snf.factors.iter().all(Zero::is_zero));
    }

    #[test]
    fn torsion_group() {
        // Z/4 ⊕ Z/6 ≅ Z/2 ⊕ Z/12
        let g = AbelianGroup::from_presentation(&IntMatrix::diagonal(&[4, 6]), 2);
        assert_eq!(g.torsion, vec![BigInt::from(2), BigInt::from(12)]);
        assert_eq!(g.to_string(), "Z/2 + Z/12");
    }

    #[test]
    fn negative_entries() {
        let m = IntMatrix::from_i64(3, 3, &[-6, 4, 0, 2, -8, 10, 0, 3, -9]);
        let snf = smith_normal_form(&m);
        check_shape(&m, &snf);
    }
}
