//! Bounds on the perturbation terms `f_j`, `g_k` and the largest scale `λ`
//! for which the perturbed constants cannot collide.

use serde::Serialize;

use super::{ConfigError, C64};

/// Absolute margin subtracted from every centre distance.
pub const DISC_MARGIN: f64 = 1e-6;

/// `|z − c| ≥ distance` must exceed `λ·coefficient`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscConstraint {
    pub label: String,
    pub distance: f64,
    pub coefficient: f64,
    pub lambda_bound: f64,
}

impl DiscConstraint {
    fn new(label: String, distance: f64, coefficient: f64) -> Self {
        DiscConstraint {
            label,
            distance,
            coefficient,
            lambda_bound: (distance - DISC_MARGIN) / coefficient,
        }
    }

    pub fn holds(&self, lambda: f64) -> bool {
        self.distance - DISC_MARGIN > lambda * self.coefficient
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCertificate {
    /// Majorant of `|f_j|` valid for all `λ ≤ 1/4`, `|z| ≥ 1/2`.
    pub m0: f64,
    /// Same for `|g_k|`.
    pub m: f64,
    /// Largest sampled `|f_j|` and `|g_k|`.
    pub m0_grid: f64,
    pub m_grid: f64,
    pub lambda_max: f64,
    /// Constraint attaining `λ_max` (or `"lambda <= 1/4"`).
    pub binding: String,
    pub constraints: Vec<DiscConstraint>,
    #[serde(skip)]
    radii_z: Vec<f64>,
    #[serde(skip)]
    radii_w: Vec<f64>,
}

fn tail_product(radii: &[f64], skip: Option<usize>, lambda: f64) -> f64 {
    radii
        .iter()
        .enumerate()
        .filter(|&(i, _)| Some(i) != skip)
        .map(|(_, r)| 1.0 + lambda * r)
        .product()
}

impl BoundCertificate {
    /// Majorant of `|f_j|` at a fixed `λ`: `(Π_{i≠j}(1 + λr_i) − 1)/λ` with
    /// `r_i = 2|z_i|`, from `|Π(1 + x_i) − 1| ≤ Π(1 + |x_i|) − 1`.
    pub fn m0_at(&self, lambda: f64) -> f64 {
        (0..self.radii_z.len())
            .map(|j| (tail_product(&self.radii_z, Some(j), lambda) - 1.0) / lambda)
            .fold(0.0, f64::max)
    }

    /// Majorant of `|g_k|` at a fixed `λ`:
    /// `(Π(1 + λr_i) − 1 + λs_k) / (λ(1 − λs_k))`, `s_k = 2|w_k|`.
    pub fn m_at(&self, lambda: f64) -> f64 {
        let p = tail_product(&self.radii_z, None, lambda) - 1.0;
        self.radii_w
            .iter()
            .map(|s| (p + lambda * s) / (lambda * (1.0 - lambda * s)))
            .fold(0.0, f64::max)
    }

    pub fn check_lambda(&self, lambda: f64) -> Result<(), ConfigError> {
        let bad = disc_overlaps(self, lambda);
        if bad.is_empty() {
            Ok(())
        } else {
            Err(ConfigError::Disjointness(format!(
                "lambda = {lambda:e} exceeds lambda_max = {:e}; overlapping: {}",
                self.lambda_max,
                bad.join(", ")
            )))
        }
    }
}

/// Labels of the disc constraints violated at `λ`.
pub fn disc_overlaps(cert: &BoundCertificate, lambda: f64) -> Vec<String> {
    cert.constraints
        .iter()
        .filter(|c| !c.holds(lambda))
        .map(|c| c.label.clone())
        .collect()
}

fn f_value(z10: &[C64], j: usize, z: C64, lambda: f64) -> C64 {
    let p: C64 = z10
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != j)
        .map(|(_, zi)| 1.0 - zi * lambda / z)
        .product();
    (p - 1.0) / lambda
}

fn g_value(z10: &[C64], w: C64, z: C64, lambda: f64) -> C64 {
    let p: C64 = z10.iter().map(|zi| 1.0 - zi * lambda / z).product();
    (p / (1.0 - w * lambda / z) - 1.0) / lambda
}

/// Largest `|f_j|`, `|g_k|` over `1/2 ≤ |z| ≤ 1`, `0 < λ ≤ 1/4` on a grid
/// with `n` angles.
fn grid_sup(z10: &[C64], w: &[C64], n: usize) -> (f64, f64) {
    let mut f_max = 0.0f64;
    let mut g_max = 0.0f64;
    let nr = (n / 8).max(2);
    for il in 1..=nr {
        let lambda = 0.25 * il as f64 / nr as f64;
        for ir in 0..nr {
            let r = 0.5 + 0.5 * ir as f64 / nr as f64;
            for it in 0..n {
                let z = C64::from_polar(r, std::f64::consts::TAU * it as f64 / n as f64);
                for j in 0..z10.len() {
                    f_max = f_max.max(f_value(z10, j, z, lambda).norm());
                }
                for wk in w {
                    g_max = g_max.max(g_value(z10, *wk, z, lambda).norm());
                }
            }
        }
    }
    (f_max, g_max)
}

/// Majorants `M₀`, `M` and the largest `λ ≤ 1/4` for which
/// `B(z_j, M₀|z_j|λ)` are disjoint and miss 0, `B(w_k, M|w_k|λ)` are disjoint
/// and miss 0, and no `z`-disc meets a `w`-disc.
pub fn certify_bounds(z10: &[C64], w: &[C64]) -> Result<BoundCertificate, ConfigError> {
    let radii_z: Vec<f64> = z10.iter().map(|z| 2.0 * z.norm()).collect();
    let radii_w: Vec<f64> = w.iter().map(|w| 2.0 * w.norm()).collect();
    if radii_w.iter().any(|s| *s >= 4.0) {
        return Err(ConfigError::Params("|w_k| must be below 2".into()));
    }
    let mut cert = BoundCertificate {
        m0: 0.0,
        m: 0.0,
        m0_grid: 0.0,
        m_grid: 0.0,
        lambda_max: 0.25,
        binding: "lambda <= 1/4".into(),
        constraints: Vec::new(),
        radii_z,
        radii_w,
    };
    // both majorants increase with λ, so λ = 1/4 gives the uniform bound
    cert.m0 = cert.m0_at(0.25);
    cert.m = cert.m_at(0.25);

    let n = 64;
    let (f0, g0) = grid_sup(z10, w, n);
    let (f1, g1) = grid_sup(z10, w, 2 * n);
    for (coarse, fine) in [(f0, f1), (g0, g1)] {
        if fine > 1.1 * coarse {
            return Err(ConfigError::Resolution {
                coarse,
                fine,
                suggested: 4 * n,
            });
        }
    }
    cert.m0_grid = f1;
    cert.m_grid = g1;
    if f1 > cert.m0 || g1 > cert.m {
        return Err(ConfigError::Resolution {
            coarse: cert.m0.max(cert.m),
            fine: f1.max(g1),
            suggested: 4 * n,
        });
    }

    let (m0, m) = (cert.m0, cert.m);
    let mut cs = Vec::new();
    for (j, zj) in z10.iter().enumerate() {
        cs.push(DiscConstraint::new(
            format!("z{} / origin", j + 1),
            zj.norm(),
            m0 * zj.norm(),
        ));
        for (k, zk) in z10.iter().enumerate().skip(j + 1) {
            cs.push(DiscConstraint::new(
                format!("z{} / z{}", j + 1, k + 1),
                (zj - zk).norm(),
                m0 * (zj.norm() + zk.norm()),
            ));
        }
        for (k, wk) in w.iter().enumerate() {
            cs.push(DiscConstraint::new(
                format!("z{} / w{}", j + 1, k + 1),
                (zj - wk).norm(),
                m0 * zj.norm() + m * wk.norm(),
            ));
        }
    }
    for (j, wj) in w.iter().enumerate() {
        cs.push(DiscConstraint::new(
            format!("w{} / origin", j + 1),
            wj.norm(),
            m * wj.norm(),
        ));
        for (k, wk) in w.iter().enumerate().skip(j + 1) {
            cs.push(DiscConstraint::new(
                format!("w{} / w{}", j + 1, k + 1),
                (wj - wk).norm(),
                m * (wj.norm() + wk.norm()),
            ));
        }
    }
    for c in &cs {
        if c.lambda_bound < cert.lambda_max {
            cert.lambda_max = c.lambda_bound;
            cert.binding = c.label.clone();
        }
    }
    cert.constraints = cs;
    if !(cert.lambda_max > 1e-6) {
        return Err(ConfigError::Disjointness(format!(
            "{} leaves lambda_max = {:e}",
            cert.binding, cert.lambda_max
        )));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::ParamsInput;

    #[test]
    fn default_configuration() {
        let p = ParamsInput::default();
        let cert = certify_bounds(&p.z, &p.w).unwrap();
        assert!(cert.lambda_max > 0.0 && cert.lambda_max < 0.25);
        assert!(cert.m0_grid <= cert.m0 && cert.m_grid <= cert.m);
        assert!(disc_overlaps(&cert, 0.5 * cert.lambda_max).is_empty());
        assert!(!disc_overlaps(&cert, 1.01 * cert.lambda_max).is_empty());
        assert!(cert.m0_at(0.01) <= cert.m0);
    }

    #[test]
    fn majorants_bound_samples_at_fixed_lambda() {
        let p = ParamsInput::default();
        let cert = certify_bounds(&p.z, &p.w).unwrap();
        for lambda in [1e-4, 0.01, 0.1, 0.25] {
            let m0 = cert.m0_at(lambda);
            let m = cert.m_at(lambda);
            for t in 0..200 {
                let z = C64::from_polar(0.5, t as f64 * 0.0314159);
                for j in 0..10 {
                    assert!(f_value(&p.z, j, z, lambda).norm() <= m0 * (1.0 + 1e-12));
                }
                for wk in &p.w {
                    assert!(g_value(&p.z, *wk, z, lambda).norm() <= m * (1.0 + 1e-12));
                }
            }
        }
    }

    #[test]
    fn overlap_oracle() {
        // direct check that discs really are disjoint at lambda_max / 2
        let p = ParamsInput::default();
        let cert = certify_bounds(&p.z, &p.w).unwrap();
        let lam = cert.lambda_max / 2.0;
        let discs: Vec<(C64, f64)> =
            p.z.iter()
                .map(|z| (*z, cert.m0 * z.norm() * lam))
                .chain(p.w.iter().map(|w| (*w, cert.m * w.norm() * lam)))
                .collect();
        for (i, a) in discs.iter().enumerate() {
            assert!(a.0.norm() > a.1);
            for b in &discs[i + 1..] {
                assert!((a.0 - b.0).norm() > a.1 + b.1);
            }
        }
    }

    #[test]
    fn nearly_equal_points_fail() {
        let mut p = ParamsInput::default();
        p.z[1] = p.z[0] + C64::new(1e-9, 0.0);
        assert!(matches!(
            certify_bounds(&p.z, &p.w),
            Err(ConfigError::Disjointness(_))
        ));
    }
}
