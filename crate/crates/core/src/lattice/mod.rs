//! Exact integer arithmetic on second homology lattices.
//!
//! A [`LatticeBasis`] fixes a rank, generator labels and the Gram matrix of
//! the intersection pairing. Classes carry an `Arc` to their basis and two
//! classes are comparable only when they point at the *same* basis object,
//! so a class written in `{h, e_i}` can never be silently paired with one
//! written in another basis of the same rank.

mod blowup;
mod certify;
mod matrix;
mod smith;

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use blowup::{
    blown_up_plane, canonical_class, cubic_class, cubic_classes, curve_basis,
    curve_basis_is_unimodular, dectic_class, plane_curve_genus, projective_plane,
};
pub use certify::{
    boundary_groups_report, curve_basis_report, dectic_genus_report, lattice_report,
    pairing_sample_report, smith_sample_report, PAIRING_SAMPLES, SMITH_SAMPLES,
};
pub use matrix::IntMatrix;
pub use smith::{
    punctured_torus_boundary_abelianization, smith_normal_form, AbelianGroup, SmithForm,
};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("classes live in different bases (`{0}` vs `{1}`)")]
    BasisMismatch(String, String),
    #[error("expected {expected} classes, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("primitivity is undefined for the zero class")]
    ZeroClass,
    #[error("negative multiplicity {mult} at exceptional slot {slot}")]
    NegativeMultiplicity { slot: usize, mult: i64 },
    #[error("{0}")]
    Shape(String),
    #[error("malformed class: {0}")]
    Parse(String),
}

/// Generators and intersection pairing of a free lattice.
#[derive(Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    name: String,
    labels: Vec<String>,
    gram: IntMatrix,
}

impl LatticeBasis {
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        gram: IntMatrix,
    ) -> Result<Arc<Self>, LatticeError> {
        if labels.is_empty() {
            return Err(LatticeError::Shape(
                "a basis needs at least one generator".into(),
            ));
        }
        if gram.rows() != labels.len() || !gram.is_square() {
            return Err(LatticeError::Shape(format!(
                "gram matrix is {}x{} but there are {} labels",
                gram.rows(),
                gram.cols(),
                labels.len()
            )));
        }
        if !gram.is_symmetric() {
            return Err(LatticeError::Shape("gram matrix must be symmetric".into()));
        }
        Ok(Arc::new(LatticeBasis {
            name: name.into(),
            labels,
            gram,
        }))
    }

    /// Orthogonal basis with the given self-intersections.
    pub fn diagonal(
        name: impl Into<String>,
        labels: &[&str],
        squares: &[i64],
    ) -> Result<Arc<Self>, LatticeError> {
        if labels.len() != squares.len() {
            return Err(LatticeError::Shape("one square per label".into()));
        }
        Self::new(
            name,
            labels.iter().map(|s| s.to_string()).collect(),
            IntMatrix::diagonal(squares),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// The `i`-th generator as a class.
    pub fn generator(self: &Arc<Self>, i: usize) -> HomologyClass {
        let mut coords = vec![BigInt::zero(); self.rank()];
        coords[i] = BigInt::one();
        HomologyClass {
            coords,
            basis: Arc::clone(self),
        }
    }

    pub fn by_label(self: &Arc<Self>, label: &str) -> Option<HomologyClass> {
        self.index_of(label).map(|i| self.generator(i))
    }

    pub fn zero(self: &Arc<Self>) -> HomologyClass {
        HomologyClass {
            coords: vec![BigInt::zero(); self.rank()],
            basis: Arc::clone(self),
        }
    }

    pub fn class(self: &Arc<Self>, coords: Vec<BigInt>) -> Result<HomologyClass, LatticeError> {
        if coords.len() != self.rank() {
            return Err(LatticeError::Dimension {
                expected: self.rank(),
                got: coords.len(),
            });
        }
        Ok(HomologyClass {
            coords,
            basis: Arc::clone(self),
        })
    }

    /// Panics if the length is wrong; for literals in code and tests.
    pub fn class_i64(self: &Arc<Self>, coords: &[i64]) -> HomologyClass {
        self.class(coords.iter().map(|&x| BigInt::from(x)).collect())
            .expect("coordinate count must equal the rank")
    }

    pub fn determinant(&self) -> BigInt {
        self.gram.determinant()
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs().is_one()
    }
}

/// Integer coordinate vector in a fixed basis.
#[derive(Clone)]
pub struct HomologyClass {
    coords: Vec<BigInt>,
    basis: Arc<LatticeBasis>,
}

impl PartialEq for HomologyClass {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.basis, &other.basis) && self.coords == other.coords
    }
}

impl Eq for HomologyClass {}

impl HomologyClass {
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn basis(&self) -> &Arc<LatticeBasis> {
        &self.basis
    }

    pub fn coord(&self, i: usize) -> &BigInt {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn same_basis(&self, other: &HomologyClass) -> bool {
        Arc::ptr_eq(&self.basis, &other.basis)
    }

    fn require_same_basis(&self, other: &HomologyClass) -> Result<(), LatticeError> {
        if self.same_basis(other) {
            Ok(())
        } else {
            Err(LatticeError::BasisMismatch(
                self.basis.name.clone(),
                other.basis.name.clone(),
            ))
        }
    }

    /// Intersection number `aᵀ·G·b`.
    pub fn pair(&self, other: &HomologyClass) -> Result<BigInt, LatticeError> {
        self.require_same_basis(other)?;
        let g = &self.basis.gram;
        let mut total = BigInt::zero();
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mut gi = BigInt::zero();
            for (x, y) in g.row(i).iter().zip(&other.coords) {
                // Gram matrices here are mostly zero
                if !x.is_zero() && !y.is_zero() {
                    gi += x * y;
                }
            }
            total += a * gi;
        }
        Ok(total)
    }

    pub fn square(&self) -> BigInt {
        self.pair(self)
            .expect("a class always shares its own basis")
    }

    pub fn checked_add(&self, other: &HomologyClass) -> Result<HomologyClass, LatticeError> {
        self.require_same_basis(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &HomologyClass) -> Result<HomologyClass, LatticeError> {
        self.require_same_basis(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(
        &self,
        other: &HomologyClass,
        f: impl Fn(&BigInt, &BigInt) -> BigInt,
    ) -> HomologyClass {
        HomologyClass {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| f(a, b))
                .collect(),
            basis: Arc::clone(&self.basis),
        }
    }

    pub fn scale(&self, n: impl Into<BigInt>) -> HomologyClass {
        let n = n.into();
        HomologyClass {
            coords: self.coords.iter().map(|a| a * &n).collect(),
            basis: Arc::clone(&self.basis),
        }
    }

    /// gcd of the coordinates (zero for the zero class).
    pub fn content(&self) -> BigInt {
        self.coords.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
    }

    /// A class is primitive when it is not a proper multiple `n·y`, `n > 1`.
    pub fn is_primitive(&self) -> Result<bool, LatticeError> {
        if self.is_zero() {
            return Err(LatticeError::ZeroClass);
        }
        Ok(self.content().is_one())
    }

    /// Re-expresses the class in `target`, given the images of this basis's
    /// generators as classes of `target`.
    pub fn pushforward(
        &self,
        images: &[HomologyClass],
        target: &Arc<LatticeBasis>,
    ) -> Result<HomologyClass, LatticeError> {
        if images.len() != self.coords.len() {
            return Err(LatticeError::Dimension {
                expected: self.coords.len(),
                got: images.len(),
            });
        }
        let mut out = target.zero();
        for (c, img) in self.coords.iter().zip(images) {
            if !Arc::ptr_eq(&img.basis, target) {
                return Err(LatticeError::BasisMismatch(
                    img.basis.name.clone(),
                    target.name.clone(),
                ));
            }
            out = out.zip_with(img, |a, b| a + c * b);
        }
        Ok(out)
    }

    pub fn to_serial(&self) -> SerialClass {
        SerialClass {
            basis: self.basis.name.clone(),
            coords: self.coords.iter().map(ToString::to_string).collect(),
        }
    }

    /// Parses a serialized class, checking that it was written in `basis`.
    pub fn from_serial(
        s: &SerialClass,
        basis: &Arc<LatticeBasis>,
    ) -> Result<HomologyClass, LatticeError> {
        if s.basis != basis.name {
            return Err(LatticeError::BasisMismatch(
                s.basis.clone(),
                basis.name.clone(),
            ));
        }
        let coords = s
            .coords
            .iter()
            .map(|c| {
                c.parse::<BigInt>()
                    .map_err(|e| LatticeError::Parse(format!("{c:?}: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        basis.class(coords)
    }
}

/// JSON form of a class: decimal strings so that large coefficients survive
/// consumers that read numbers as doubles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerialClass {
    pub basis: String,
    pub coords: Vec<String>,
}

impl fmt::Debug for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.basis.name, self)
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (c, label) in self.coords.iter().zip(&self.basis.labels) {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() {
                "-"
            } else if wrote {
                "+"
            } else {
                ""
            };
            let mag = c.abs();
            if wrote {
                f.write_str(" ")?;
            }
            if mag.is_one() {
                write!(f, "{sign}{label}")?;
            } else {
                write!(f, "{sign}{mag}{label}")?;
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Add for &HomologyClass {
    type Output = HomologyClass;
    fn add(self, rhs: &HomologyClass) -> HomologyClass {
        self.checked_add(rhs)
            .expect("adding classes from different bases")
    }
}

impl Sub for &HomologyClass {
    type Output = HomologyClass;
    fn sub(self, rhs: &HomologyClass) -> HomologyClass {
        self.checked_sub(rhs)
            .expect("subtracting classes from different bases")
    }
}

impl Add for HomologyClass {
    type Output = HomologyClass;
    fn add(self, rhs: HomologyClass) -> HomologyClass {
        &self + &rhs
    }
}

impl Sub for HomologyClass {
    type Output = HomologyClass;
    fn sub(self, rhs: HomologyClass) -> HomologyClass {
        &self - &rhs
    }
}

impl Neg for &HomologyClass {
    type Output = HomologyClass;
    fn neg(self) -> HomologyClass {
        self.scale(-1)
    }
}

impl Neg for HomologyClass {
    type Output = HomologyClass;
    fn neg(self) -> HomologyClass {
        -&self
    }
}

/// Sum of classes in `basis`; the empty sum is zero.
pub fn sum<'a>(
    basis: &Arc<LatticeBasis>,
    classes: impl IntoIterator<Item = &'a HomologyClass>,
) -> HomologyClass {
    classes.into_iter().fold(basis.zero(), |acc, c| &acc + c)
}

/// Gram matrix `(a_i · a_j)` of a list of classes.
pub fn gram_of(classes: &[HomologyClass]) -> Result<IntMatrix, LatticeError> {
    let n = classes.len();
    let mut g = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = classes[i].pair(&classes[j])?;
            g[(j, i)] = v.clone();
            g[(i, j)] = v;
        }
    }
    Ok(g)
}

/// Matrix whose rows are the coordinate vectors of `classes`.
pub fn coordinate_matrix(classes: &[HomologyClass]) -> IntMatrix {
    let rows: Vec<Vec<BigInt>> = classes.iter().map(|c| c.coords.clone()).collect();
    IntMatrix::from_rows(&rows)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisCheck {
    pub is_basis: bool,
    pub det: BigInt,
}

/// Decides whether `classes` generate the whole lattice, via the determinant
/// of their coordinate matrix.
pub fn verify_basis(classes: &[HomologyClass]) -> Result<BasisCheck, LatticeError> {
    let Some(first) = classes.first() else {
        return Err(LatticeError::Dimension {
            expected: 1,
            got: 0,
        });
    };
    let rank = first.basis.rank();
    if classes.len() != rank {
        return Err(LatticeError::Dimension {
            expected: rank,
            got: classes.len(),
        });
    }
    for c in &classes[1..] {
        first.require_same_basis(c)?;
    }
    let det = coordinate_matrix(classes).determinant();
    Ok(BasisCheck {
        is_basis: det.abs().is_one(),
        det,
    })
}

/// Proper transform of a plane class through blown-up points.
///
/// `cls` must be a multiple of the line class `h` (coordinate 0 of `target`);
/// the result subtracts `mults[i]·e_{i+1}`.
pub fn proper_transform(cls: &HomologyClass, mults: &[i64]) -> Result<HomologyClass, LatticeError> {
    let basis = cls.basis();
    if mults.len() + 1 != basis.rank() {
        return Err(LatticeError::Dimension {
            expected: basis.rank() - 1,
            got: mults.len(),
        });
    }
    if cls.coords[1..].iter().any(|c| !c.is_zero()) {
        return Err(LatticeError::Shape(
            "proper transform expects a multiple of h".into(),
        ));
    }
    if let Some((slot, &mult)) = mults.iter().enumerate().find(|(_, m)| **m < 0) {
        return Err(LatticeError::NegativeMultiplicity {
            slot: slot + 1,
            mult,
        });
    }
    let mut coords = cls.coords.clone();
    for (c, &m) in coords[1..].iter_mut().zip(mults) {
        *c -= m;
    }
    basis.class(coords)
}
