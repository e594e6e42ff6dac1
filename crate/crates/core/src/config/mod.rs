//! Numerical model of eleven genus-1 sections and three meromorphic sections
//! of a degree-9 line bundle over an elliptic curve, glued to a line.
//!
//! The curve is covered by the unit disc `D` and `V = C − D̄(0, 1/2)`, with
//! transition `y_V = z⁻⁹·y_D`. Everything here lives in those two charts.

mod assembly;
mod bounds;
mod bump;
mod params_file;
mod report;
mod roots;
mod sections;
mod symplectic;

use num_complex::Complex64;
use serde::Serialize;

pub use assembly::{
    assemble_g, choose_eps, density_checks, section_sup, Assembly, EpsChoice, Pieces, Regime,
    SectionSup,
};
pub use bounds::{certify_bounds, disc_overlaps, BoundCertificate, DiscConstraint};
pub use bump::Bump;
pub use params_file::{format_params, parse_params};
pub use report::{
    expected_roots, full_configuration_report, pair_report, ConfigRun, PairOutcome, RootRecord,
};
pub use roots::{
    check_transversality, circle_count, find_zeros, winding_count, Analytic, Holomorphic, Rect,
    Root, Transversality,
};
pub use sections::{Chart, Coincidence, Rational, SectionFamily, SectionId};
pub use symplectic::{annulus_grid, check_symplectic_graph, disc_grid, SymplecticCheck};

pub type C64 = Complex64;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("{what} outside its chart domain at z = {z}")]
    Domain { what: String, z: C64 },
    #[error("pole of {0} at z = {1}")]
    Pole(String, C64),
    #[error("contour passes within numerical distance of a zero or pole near {0}")]
    NearZero(C64),
    #[error("{region}: winding count {winding} but {located} roots located")]
    UndetectedRoot {
        region: String,
        winding: i64,
        located: i64,
    },
    #[error("Newton polish did not converge in box [{lo}, {hi}]")]
    Polish { lo: C64, hi: C64 },
    #[error("derivative gap {gap:e} at {z} is below tolerance: tangency")]
    Tangency { z: C64, gap: f64 },
    #[error("graph density {density:e} is not positive at {z}")]
    NotSymplectic { z: C64, density: f64 },
    #[error("grid too coarse: supremum rose from {coarse:e} to {fine:e}; try {suggested} samples")]
    Resolution {
        coarse: f64,
        fine: f64,
        suggested: usize,
    },
    #[error("disc constraints cannot be met: {0}")]
    Disjointness(String),
    #[error("parameter regime violated: {0}")]
    Regime(String),
    #[error("params file line {line}: {msg}")]
    ParamsFile { line: usize, msg: String },
}

/// Fixed points, scale and radii of the model. `z` has eleven entries with
/// `z[10] = 0`; `w` has three.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelParams {
    pub z: Vec<C64>,
    pub w: Vec<C64>,
    pub lambda: f64,
    pub eps: f64,
    pub c: f64,
    pub rho_profile: String,
}

pub const RHO_PROFILE: &str = "exp-bump";

impl ModelParams {
    pub fn new(z10: &[C64], w: &[C64], lambda: f64, eps: f64, c: f64) -> Result<Self, ConfigError> {
        validate_points(z10, w)?;
        if !(lambda > 0.0 && lambda <= 0.25) {
            return Err(ConfigError::Params(format!(
                "lambda = {lambda} must lie in (0, 1/4]"
            )));
        }
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(ConfigError::Params(format!("eps = {eps} must be positive")));
        }
        if !(c > 0.0 && c.is_finite()) {
            return Err(ConfigError::Params(format!("c = {c} must be positive")));
        }
        let mut z: Vec<C64> = z10.to_vec();
        z.push(C64::new(0.0, 0.0));
        Ok(ModelParams {
            z,
            w: w.to_vec(),
            lambda,
            eps,
            c,
            rho_profile: RHO_PROFILE.into(),
        })
    }

    pub fn z10(&self) -> &[C64] {
        &self.z[..10]
    }

    /// `A = −(z₁⋯z₁₀)⁻¹`
    pub fn normalization(&self) -> C64 {
        -self.z10().iter().product::<C64>().inv()
    }

    /// Points `P_j = (λz_j, 0)` for `j ≤ 10`; `P₁₁` sits on the fibre over 0.
    pub fn base_points(&self) -> Vec<C64> {
        self.z.iter().map(|z| z * self.lambda).collect()
    }

    pub fn poles(&self) -> Vec<C64> {
        self.w.iter().map(|w| w * self.lambda).collect()
    }
}

fn validate_points(z10: &[C64], w: &[C64]) -> Result<(), ConfigError> {
    if z10.len() != 10 {
        return Err(ConfigError::Params(format!(
            "need 10 nonzero points z_j, got {}",
            z10.len()
        )));
    }
    if w.len() != 3 {
        return Err(ConfigError::Params(format!(
            "need 3 points w_k, got {}",
            w.len()
        )));
    }
    let all: Vec<(String, C64)> = z10
        .iter()
        .enumerate()
        .map(|(i, &z)| (format!("z{}", i + 1), z))
        .chain([("z11".to_string(), C64::new(0.0, 0.0))])
        .chain(
            w.iter()
                .enumerate()
                .map(|(k, &w)| (format!("w{}", k + 1), w)),
        )
        .collect();
    for (name, p) in &all {
        if !(p.re.is_finite() && p.im.is_finite()) || p.norm() >= 1.0 {
            return Err(ConfigError::Params(format!(
                "{name} = {p} is not in the open unit disc"
            )));
        }
    }
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            if all[i].1 == all[j].1 {
                return Err(ConfigError::Params(format!(
                    "{} and {} coincide",
                    all[i].0, all[j].0
                )));
            }
        }
    }
    Ok(())
}

/// User-facing parameter set: points are required, everything else may be
/// left for [`resolve`](ParamsInput::resolve) to choose.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamsInput {
    pub z: Vec<C64>,
    pub w: Vec<C64>,
    pub lambda: Option<f64>,
    pub eps: Option<f64>,
    pub c: Option<f64>,
}

impl Default for ParamsInput {
    /// `z_j = ½e^{2πij/10}`, `w_k = ¼e^{2πi(k−½)/3}`.
    fn default() -> Self {
        let tau = std::f64::consts::TAU;
        ParamsInput {
            z: (1..=10)
                .map(|j| C64::from_polar(0.5, tau * j as f64 / 10.0))
                .collect(),
            w: (1..=3)
                .map(|k| C64::from_polar(0.25, tau * (k as f64 - 0.5) / 3.0))
                .collect(),
            lambda: None,
            eps: None,
            c: None,
        }
    }
}

/// Parameters after the automatic choices, with the certificates that
/// justified them.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub params: ModelParams,
    pub bounds: BoundCertificate,
    pub eps: EpsChoice,
}

impl ParamsInput {
    /// `λ = min(1/4, λ_max/2)`, `c = min(c_user, 0.9/N)` and `ε` the largest
    /// power of two passing every regime gate, unless given explicitly.
    pub fn resolve(&self) -> Result<Resolved, ConfigError> {
        validate_points(&self.z, &self.w)?;
        let bounds = certify_bounds(&self.z, &self.w)?;
        let lambda = match self.lambda {
            Some(l) => l,
            None => (bounds.lambda_max / 2.0).min(0.25),
        };
        let provisional = ModelParams::new(&self.z, &self.w, lambda, 1.0, 1.0)?;
        bounds.check_lambda(lambda)?;
        let family = SectionFamily::new(&provisional);
        let n_bound = section_sup(&family)?;
        let c_user = self.c.unwrap_or(1.0);
        let c = c_user.min(0.9 / n_bound.n);
        let eps = choose_eps(&family, &n_bound, c, self.eps)?;
        let params = ModelParams::new(&self.z, &self.w, lambda, eps.eps, c)?;
        Ok(Resolved {
            params,
            bounds,
            eps,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_points_are_valid() {
        let p = ParamsInput::default();
        validate_points(&p.z, &p.w).unwrap();
        let m = ModelParams::new(&p.z, &p.w, 0.01, 1e-3, 0.5).unwrap();
        assert_eq!(m.z.len(), 11);
        assert_eq!(m.z[10], C64::new(0.0, 0.0));
        // product of the tenth roots of unity scaled by 1/2 is -(1/2)^10
        let a = m.normalization();
        assert!((a - C64::new(1024.0, 0.0)).norm() < 1e-9, "{a}");
    }

    #[test]
    fn invariants() {
        let p = ParamsInput::default();
        assert!(ModelParams::new(&p.z[..1], &p.w, 0.01, 1.0, 1.0).is_err());
        let mut z = p.z.clone();
        z[3] = z[2];
        assert!(ModelParams::new(&z, &p.w, 0.01, 1.0, 1.0).is_err());
        let mut w = p.w.clone();
        w[0] = p.z[0];
        assert!(ModelParams::new(&p.z, &w, 0.01, 1.0, 1.0).is_err());
        assert!(ModelParams::new(&p.z, &p.w, 0.3, 1.0, 1.0).is_err());
        assert!(ModelParams::new(&p.z, &p.w, 0.0, 1.0, 1.0).is_err());
        let mut z = p.z.clone();
        z[0] = C64::new(0.0, 0.0);
        assert!(ModelParams::new(&z, &p.w, 0.01, 1.0, 1.0).is_err());
    }
}
