//! Positivity of `dx∧dy + du∧dv` restricted to graphs `z ↦ (z, ε·s(z))`.

use std::f64::consts::TAU;

use serde::Serialize;

use super::{ConfigError, C64};

/// Densities at or below this count as failures.
pub const POSITIVITY_MARGIN: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymplecticCheck {
    pub min_positivity: f64,
    pub argmin: C64,
    pub samples: usize,
    pub pass: bool,
}

impl SymplecticCheck {
    pub fn into_result(self) -> Result<SymplecticCheck, ConfigError> {
        if self.pass {
            Ok(self)
        } else {
            Err(ConfigError::NotSymplectic {
                z: self.argmin,
                density: self.min_positivity,
            })
        }
    }
}

/// `nr × nθ` points with radii spread over `[r0, r1]` inclusive.
pub fn annulus_grid(center: C64, r0: f64, r1: f64, nr: usize, ntheta: usize) -> Vec<C64> {
    let mut out = Vec::with_capacity(nr * ntheta);
    for i in 0..nr {
        let r = if nr == 1 {
            r0
        } else {
            r0 + (r1 - r0) * i as f64 / (nr - 1) as f64
        };
        for t in 0..ntheta {
            // stagger rings so that no ray is sampled twice
            let theta = TAU * (t as f64 + 0.5 * (i % 2) as f64) / ntheta as f64;
            out.push(center + C64::from_polar(r, theta));
        }
    }
    out
}

pub fn disc_grid(center: C64, radius: f64, nr: usize, ntheta: usize) -> Vec<C64> {
    let mut out = vec![center];
    out.extend(annulus_grid(center, radius / nr as f64, radius, nr, ntheta));
    out
}

/// Minimum over `points` of `1 + |ε∂s|² − |ε∂̄s|²`, the Wirtinger derivatives
/// taken by central differences with step `1e−6·scale`.
pub fn check_symplectic_graph<S>(
    s: S,
    points: &[C64],
    eps: f64,
    scale: f64,
) -> Result<SymplecticCheck, ConfigError>
where
    S: Fn(C64) -> Result<C64, ConfigError>,
{
    let mut min = f64::INFINITY;
    let mut argmin = C64::new(0.0, 0.0);
    for &z in points {
        let h = 1e-6 * scale;
        let sx = (s(z + h)? - s(z - h)?) * (eps / (2.0 * h));
        let sy = (s(z + C64::new(0.0, h))? - s(z - C64::new(0.0, h))?) * (eps / (2.0 * h));
        let dz = (sx - C64::i() * sy) * 0.5;
        let dzbar = (sx + C64::i() * sy) * 0.5;
        let density = 1.0 + dz.norm_sqr() - dzbar.norm_sqr();
        if density < min || density.is_nan() {
            min = density;
            argmin = z;
        }
    }
    Ok(SymplecticCheck {
        min_positivity: min,
        argmin,
        samples: points.len(),
        pass: min > POSITIVITY_MARGIN,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn holomorphic_graph_has_density_at_least_one() {
        let pts = disc_grid(C64::new(0.0, 0.0), 0.5, 10, 32);
        let c = check_symplectic_graph(|z| Ok(z * z * z + 2.0 * z), &pts, 0.7, 0.5).unwrap();
        assert!(c.min_positivity >= 1.0 - 1e-6);
        assert!(c.pass);
    }

    #[test]
    fn anti_holomorphic_fails() {
        let pts = disc_grid(C64::new(0.0, 0.0), 1.0, 4, 8);
        let c = check_symplectic_graph(|z: C64| Ok(z.conj()), &pts, 2.0, 1.0).unwrap();
        assert!((c.min_positivity + 3.0).abs() < 1e-6);
        assert!(matches!(
            c.into_result(),
            Err(ConfigError::NotSymplectic { .. })
        ));
        // small eps rescues it
        let c = check_symplectic_graph(|z: C64| Ok(z.conj()), &pts, 0.5, 1.0).unwrap();
        assert!(c.pass);
    }

    #[test]
    fn grids() {
        assert_eq!(
            annulus_grid(C64::new(0.0, 0.0), 0.5, 1.0, 100, 100).len(),
            10_000
        );
        let g = annulus_grid(C64::new(1.0, 0.0), 0.5, 1.0, 3, 4);
        assert!(g
            .iter()
            .all(|z| ((z - 1.0).norm() - 0.75).abs() <= 0.25 + 1e-12));
    }
}
