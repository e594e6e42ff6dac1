//! The sections `σ_j`, `τ_k` in both charts and their glued versions.

use std::fmt;

use super::roots::Holomorphic;
use super::{Bump, ConfigError, ModelParams, C64};

/// Inner edge of the glued annulus, loosened by rounding so that points
/// produced by `from_polar(0.5, θ)` are accepted.
const RIM: f64 = 0.5 * (1.0 - 1e-12);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    D,
    V,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SectionId {
    /// `1..=11`
    Sigma(usize),
    /// `1..=3`
    Tau(usize),
}

impl fmt::Display for SectionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SectionId::Sigma(j) => write!(f, "sigma{j:02}"),
            SectionId::Tau(k) => write!(f, "tau{k}"),
        }
    }
}

impl SectionId {
    pub fn all() -> Vec<SectionId> {
        (1..=11)
            .map(SectionId::Sigma)
            .chain((1..=3).map(SectionId::Tau))
            .collect()
    }
}

/// `scale · Π(1 − z·a_i) / (1 − z·b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rational {
    pub scale: C64,
    pub zeros_inv: Vec<C64>,
    pub pole_inv: Option<C64>,
}

impl Rational {
    fn numerator(&self, z: C64) -> (C64, C64) {
        let one = C64::new(1.0, 0.0);
        self.zeros_inv
            .iter()
            .fold((one, C64::new(0.0, 0.0)), |(p, dp), a| {
                let t = one - z * a;
                (p * t, dp * t - p * a)
            })
    }

    pub fn value(&self, z: C64) -> C64 {
        let (p, _) = self.numerator(z);
        match self.pole_inv {
            Some(b) => self.scale * p / (1.0 - z * b),
            None => self.scale * p,
        }
    }

    pub fn derivative(&self, z: C64) -> C64 {
        let (p, dp) = self.numerator(z);
        match self.pole_inv {
            Some(b) => {
                let q = 1.0 - z * b;
                self.scale * (dp * q + p * b) / (q * q)
            }
            None => self.scale * dp,
        }
    }

    pub fn pole(&self) -> Option<C64> {
        self.pole_inv.map(|b| b.inv())
    }
}

#[derive(Debug, Clone)]
pub struct SectionFamily {
    pub params: ModelParams,
    /// `A = −(z₁⋯z₁₀)⁻¹`
    pub a: C64,
    /// `λ⁻⁹·A`
    pub lead: C64,
    sigma: Vec<Rational>,
    tau: Vec<Rational>,
}

impl SectionFamily {
    pub fn new(params: &ModelParams) -> Self {
        let lam = params.lambda;
        let inv: Vec<C64> = params.z10().iter().map(|z| (z * lam).inv()).collect();
        let one = C64::new(1.0, 0.0);
        let sigma = (0..11)
            .map(|j| {
                if j == 10 {
                    Rational {
                        scale: C64::new(0.0, 0.0),
                        zeros_inv: vec![],
                        pole_inv: None,
                    }
                } else {
                    Rational {
                        scale: one,
                        zeros_inv: inv
                            .iter()
                            .enumerate()
                            .filter(|&(i, _)| i != j)
                            .map(|(_, a)| *a)
                            .collect(),
                        pole_inv: None,
                    }
                }
            })
            .collect();
        let tau = params
            .w
            .iter()
            .map(|w| Rational {
                scale: one,
                zeros_inv: inv.clone(),
                pole_inv: Some((w * lam).inv()),
            })
            .collect();
        let a = params.normalization();
        SectionFamily {
            params: params.clone(),
            a,
            lead: a * lam.powi(-9),
            sigma,
            tau,
        }
    }

    pub fn lambda(&self) -> f64 {
        self.params.lambda
    }

    /// The holomorphic form of a section in the `D` chart.
    pub fn rational(&self, id: SectionId) -> &Rational {
        match id {
            SectionId::Sigma(j) => &self.sigma[j - 1],
            SectionId::Tau(k) => &self.tau[k - 1],
        }
    }

    /// `λ⁻⁹Az_j` or `λ⁻⁹Aw_k`: the value of the glued section for `|z| ≥ 3/4`
    /// in the `V` chart.
    pub fn constant(&self, id: SectionId) -> C64 {
        match id {
            SectionId::Sigma(11) => C64::new(0.0, 0.0),
            SectionId::Sigma(j) => self.lead * self.params.z[j - 1],
            SectionId::Tau(k) => self.lead * self.params.w[k - 1],
        }
    }

    fn check_sigma(j: usize) {
        assert!((1..=11).contains(&j), "sigma index {j} out of range");
    }

    fn check_tau(k: usize) {
        assert!((1..=3).contains(&k), "tau index {k} out of range");
    }

    /// `Π_{i≠j}(1 − λz_i/z)`, the factor shared by `σ̃_j` and `f_j`.
    fn sigma_tail(&self, j: usize, z: C64) -> C64 {
        let lam = self.lambda();
        self.params
            .z10()
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != j - 1)
            .map(|(_, zi)| 1.0 - zi * lam / z)
            .product()
    }

    fn tau_tail(&self, k: usize, z: C64) -> C64 {
        let lam = self.lambda();
        let num: C64 = self
            .params
            .z10()
            .iter()
            .map(|zi| 1.0 - zi * lam / z)
            .product();
        num / (1.0 - self.params.w[k - 1] * lam / z)
    }

    /// `σ_j` in the `D` chart (`|z| < 1`), or `z⁻⁹σ_j` in the `V` chart
    /// (`|z| > 1/2`), evaluated through the factored form `λ⁻⁹Az_jΠ(1 − λz_i/z)`.
    pub fn eval_sigma(&self, j: usize, z: C64, chart: Chart) -> Result<C64, ConfigError> {
        Self::check_sigma(j);
        match chart {
            Chart::D if z.norm() < 1.0 => Ok(self.sigma[j - 1].value(z)),
            Chart::V if z.norm() > 0.5 => {
                if j == 11 {
                    Ok(C64::new(0.0, 0.0))
                } else {
                    Ok(self.constant(SectionId::Sigma(j)) * self.sigma_tail(j, z))
                }
            }
            _ => Err(ConfigError::Domain {
                what: format!("sigma{j} in chart {chart:?}"),
                z,
            }),
        }
    }

    /// `f_j(z, λ) = (Π_{i≠j}(1 − λz_i/z) − 1)/λ`.
    pub fn f(&self, j: usize, z: C64) -> C64 {
        Self::check_sigma(j);
        if j == 11 {
            return C64::new(0.0, 0.0);
        }
        (self.sigma_tail(j, z) - 1.0) / self.lambda()
    }

    /// `g_k(z, λ)`, the analogue of `f_j` for `τ_k`.
    pub fn g(&self, k: usize, z: C64) -> C64 {
        Self::check_tau(k);
        (self.tau_tail(k, z) - 1.0) / self.lambda()
    }

    /// `λ⁻⁹Az_j(1 + λρ(|z|)f_j)` for `|z| ≥ 1/2`, `ρ` with plateau up to 2/3.
    pub fn eval_sigma_hat(&self, j: usize, z: C64) -> Result<C64, ConfigError> {
        Self::check_sigma(j);
        if z.norm() < RIM {
            return Err(ConfigError::Domain {
                what: format!("sigma-hat{j}"),
                z,
            });
        }
        if j == 11 {
            return Ok(C64::new(0.0, 0.0));
        }
        let rho = Bump::SIGMA.eval(z.norm());
        Ok(self.constant(SectionId::Sigma(j)) * (1.0 + self.lambda() * rho * self.f(j, z)))
    }

    /// `τ_k` in the `D` chart, or its `V`-chart form `λ⁻⁹Aw_kΠ(1 − λz_i/z)/(1 − λw_k/z)`.
    pub fn eval_tau(&self, k: usize, z: C64, chart: Chart) -> Result<C64, ConfigError> {
        Self::check_tau(k);
        match chart {
            Chart::D if z.norm() < 1.0 => {
                let pole = self.params.w[k - 1] * self.lambda();
                if (z - pole).norm() <= 1e-14 * pole.norm() {
                    return Err(ConfigError::Pole(format!("tau{k}"), z));
                }
                Ok(self.tau[k - 1].value(z))
            }
            Chart::V if z.norm() > 0.5 => {
                Ok(self.constant(SectionId::Tau(k)) * self.tau_tail(k, z))
            }
            _ => Err(ConfigError::Domain {
                what: format!("tau{k} in chart {chart:?}"),
                z,
            }),
        }
    }

    /// The glued `τ̂_k`: equal to `τ_k` for `|z| ≤ 1/2` and to
    /// `λ⁻⁹Aw_k(1 + ρ(|z|)λg_k)` beyond, `ρ` with plateau up to 1/2.
    pub fn eval_tau_hat(&self, k: usize, z: C64, chart: Chart) -> Result<C64, ConfigError> {
        Self::check_tau(k);
        let r = z.norm();
        match chart {
            Chart::D if r <= 0.5 => self.eval_tau(k, z, Chart::D),
            Chart::D if r < 1.0 => Ok(self.eval_tau_hat(k, z, Chart::V)? * z.powi(9)),
            Chart::V if r >= RIM => {
                let rho = Bump::TAU.eval(r);
                Ok(self.constant(SectionId::Tau(k)) * (1.0 + rho * self.lambda() * self.g(k, z)))
            }
            _ => Err(ConfigError::Domain {
                what: format!("tau-hat{k} in chart {chart:?}"),
                z,
            }),
        }
    }

    /// The glued section `σ̂_j` or `τ̂_k` in either chart.
    pub fn global(&self, id: SectionId, z: C64, chart: Chart) -> Result<C64, ConfigError> {
        match id {
            SectionId::Tau(k) => self.eval_tau_hat(k, z, chart),
            SectionId::Sigma(j) => {
                let r = z.norm();
                match chart {
                    Chart::D if r <= 0.5 => self.eval_sigma(j, z, Chart::D),
                    Chart::D if r < 1.0 => Ok(self.eval_sigma_hat(j, z)? * z.powi(9)),
                    Chart::V => self.eval_sigma_hat(j, z),
                    Chart::D => Err(ConfigError::Domain {
                        what: format!("{id} in chart D"),
                        z,
                    }),
                }
            }
        }
    }

    pub fn coincidence(&self, f: SectionId, g: SectionId) -> Coincidence<'_> {
        Coincidence { family: self, f, g }
    }
}

/// `f − g` in the `D` chart, where both sections are meromorphic.
#[derive(Debug, Clone, Copy)]
pub struct Coincidence<'a> {
    pub family: &'a SectionFamily,
    pub f: SectionId,
    pub g: SectionId,
}

impl Holomorphic for Coincidence<'_> {
    fn value(&self, z: C64) -> C64 {
        self.family.rational(self.f).value(z) - self.family.rational(self.g).value(z)
    }

    fn derivative(&self, z: C64) -> C64 {
        self.family.rational(self.f).derivative(z) - self.family.rational(self.g).derivative(z)
    }

    fn poles(&self) -> Vec<C64> {
        [self.f, self.g]
            .iter()
            .filter_map(|id| self.family.rational(*id).pole())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::ParamsInput;

    fn family(lambda: f64) -> SectionFamily {
        let p = ParamsInput::default();
        SectionFamily::new(&ModelParams::new(&p.z, &p.w, lambda, 1.0, 1.0).unwrap())
    }

    #[test]
    fn sigma_vanishes_at_other_points() {
        let fam = family(0.01);
        let pts = fam.params.base_points();
        for j in 1..=10 {
            for (i, p) in pts.iter().enumerate().take(10) {
                let v = fam.eval_sigma(j, *p, Chart::D).unwrap();
                if i + 1 == j {
                    assert!(v.norm() > 0.1);
                } else {
                    assert!(v.norm() < 1e-12, "sigma{j} at P{}: {v}", i + 1);
                }
            }
            assert_eq!(
                fam.eval_sigma(j, C64::new(0.0, 0.0), Chart::D).unwrap(),
                C64::new(1.0, 0.0)
            );
        }
        for z in [C64::new(0.1, 0.2), C64::new(0.7, 0.0)] {
            assert_eq!(fam.eval_sigma(11, z, Chart::D).unwrap(), C64::new(0.0, 0.0));
        }
    }

    #[test]
    fn chart_domains() {
        let fam = family(0.01);
        assert!(fam.eval_sigma(1, C64::new(1.2, 0.0), Chart::D).is_err());
        assert!(fam.eval_sigma(1, C64::new(0.3, 0.0), Chart::V).is_err());
        assert!(fam.eval_sigma_hat(1, C64::new(0.3, 0.0)).is_err());
    }

    #[test]
    fn chart_transition() {
        let fam = family(0.02);
        for z in [
            C64::new(0.6, 0.1),
            C64::new(-0.3, 0.7),
            C64::new(0.0, -0.95),
        ] {
            for j in 1..=10 {
                let v = fam.eval_sigma(j, z, Chart::V).unwrap();
                let d = fam.eval_sigma(j, z, Chart::D).unwrap() * z.powi(-9);
                assert!((v - d).norm() <= 1e-12 * v.norm());
            }
            for k in 1..=3 {
                let v = fam.eval_tau(k, z, Chart::V).unwrap();
                let d = fam.eval_tau(k, z, Chart::D).unwrap() * z.powi(-9);
                assert!((v - d).norm() <= 1e-12 * v.norm());
            }
        }
    }

    #[test]
    fn sigma_hat_regions() {
        let fam = family(0.01);
        let z = C64::from_polar(0.9, 1.0);
        assert_eq!(
            fam.eval_sigma_hat(3, z).unwrap(),
            fam.constant(SectionId::Sigma(3))
        );
        let z = C64::from_polar(0.55, 2.0);
        let hat = fam.eval_sigma_hat(3, z).unwrap();
        let tilde = fam.eval_sigma(3, z, Chart::V).unwrap();
        assert!((hat - tilde).norm() <= 1e-13 * tilde.norm());
        assert_eq!(fam.eval_sigma_hat(11, z).unwrap(), C64::new(0.0, 0.0));
    }

    #[test]
    fn tau_values() {
        let fam = family(0.01);
        for k in 1..=3 {
            assert_eq!(
                fam.eval_tau_hat(k, C64::new(0.0, 0.0), Chart::D).unwrap(),
                C64::new(1.0, 0.0)
            );
            for p in fam.params.base_points().iter().take(10) {
                assert!(fam.eval_tau_hat(k, *p, Chart::D).unwrap().norm() < 1e-12);
            }
            let far = C64::from_polar(0.8, 0.3);
            assert_eq!(
                fam.eval_tau_hat(k, far, Chart::V).unwrap(),
                fam.constant(SectionId::Tau(k))
            );
            let pole = fam.params.w[k - 1] * fam.lambda();
            assert!(matches!(
                fam.eval_tau(k, pole, Chart::D),
                Err(ConfigError::Pole(..))
            ));
        }
    }

    #[test]
    fn derivatives_match_differences() {
        let fam = family(0.02);
        let z = C64::new(0.003, -0.002);
        let h = 1e-7;
        for id in SectionId::all() {
            let r = fam.rational(id);
            let fd = (r.value(z + h) - r.value(z - h)) / (2.0 * h);
            let an = r.derivative(z);
            assert!(
                (fd - an).norm() <= 1e-5 * (1.0 + an.norm()),
                "{id}: {fd} vs {an}"
            );
        }
    }

    #[test]
    fn global_agrees_across_charts() {
        let fam = family(0.01);
        let z = C64::from_polar(0.7, 0.4);
        for id in SectionId::all() {
            let d = fam.global(id, z, Chart::D).unwrap();
            let v = fam.global(id, z, Chart::V).unwrap();
            assert!((d - v * z.powi(9)).norm() <= 1e-12 * (1.0 + d.norm()));
        }
    }
}
