//! Size bounds, the choice of `ε`, and the genus-3 surface glued from the
//! three meromorphic graphs and a thrice-punctured line.

use serde::Serialize;

use super::symplectic::{annulus_grid, check_symplectic_graph, disc_grid, SymplecticCheck};
use super::{Bump, Chart, ConfigError, SectionFamily, SectionId, C64};
use crate::lattice::plane_curve_genus;

/// `N`: 10% above the largest sampled `|σ̂_j|`, and above `|τ̂_k|` away from
/// the small balls `B(Q_k)` around the poles.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SectionSup {
    pub n: f64,
    pub sigma_sup: f64,
    pub tau_sup: f64,
    /// Radius of `B(Q_k)`.
    pub ball_radius: Vec<f64>,
}

impl SectionSup {
    pub fn ball_center(family: &SectionFamily, k: usize) -> C64 {
        family.params.w[k - 1] * family.lambda()
    }
}

/// Holomorphic parts attain their maximum on the boundary circles; the
/// glued annulus `1/2 ≤ |z| ≤ 1` is sampled in the `V` chart.
pub fn section_sup(family: &SectionFamily) -> Result<SectionSup, ConfigError> {
    let lam = family.lambda();
    let zero = C64::new(0.0, 0.0);
    let rim = annulus_grid(zero, 0.5, 0.5, 1, 2048);
    let outer = annulus_grid(zero, 0.5, 1.0, 32, 256);

    let mut sigma_sup = 0.0f64;
    for j in 1..=11 {
        let id = SectionId::Sigma(j);
        for z in &rim {
            sigma_sup = sigma_sup.max(family.global(id, *z, Chart::D)?.norm());
        }
        for z in &outer {
            sigma_sup = sigma_sup.max(family.global(id, *z, Chart::V)?.norm());
        }
    }

    let mut tau_sup = 0.0f64;
    let mut ball_radius = Vec::new();
    for k in 1..=3 {
        let id = SectionId::Tau(k);
        let w = family.params.w[k - 1];
        let sep = family
            .params
            .z
            .iter()
            .chain(family.params.w.iter().filter(|o| **o != w))
            .map(|p| (p - w).norm())
            .fold(f64::INFINITY, f64::min);
        let radius = 0.25 * lam * sep;
        ball_radius.push(radius);
        let ball_rim = annulus_grid(w * lam, radius, radius, 1, 512);
        for z in rim.iter().chain(&ball_rim) {
            tau_sup = tau_sup.max(family.global(id, *z, Chart::D)?.norm());
        }
        for z in &outer {
            tau_sup = tau_sup.max(family.global(id, *z, Chart::V)?.norm());
        }
    }
    Ok(SectionSup {
        n: 1.1 * sigma_sup.max(tau_sup),
        sigma_sup,
        tau_sup,
        ball_radius,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Regime {
    pub eps_n: f64,
    pub c: f64,
    pub eps_over_c: f64,
    /// `εN < c`
    pub inside_neighbourhood: bool,
    /// `ε/c ≤ c/2`
    pub cap_fits: bool,
}

impl Regime {
    pub fn new(eps: f64, n: f64, c: f64) -> Self {
        Regime {
            eps_n: eps * n,
            c,
            eps_over_c: eps / c,
            inside_neighbourhood: eps * n < c,
            cap_fits: eps / c <= c / 2.0,
        }
    }

    pub fn holds(&self) -> bool {
        self.inside_neighbourhood && self.cap_fits
    }

    fn check(&self) -> Result<(), ConfigError> {
        if !self.inside_neighbourhood {
            return Err(ConfigError::Regime(format!(
                "eps N = {:e} is not below c = {:e}",
                self.eps_n, self.c
            )));
        }
        if !self.cap_fits {
            return Err(ConfigError::Regime(format!(
                "eps / c = {:e} exceeds c / 2 = {:e}",
                self.eps_over_c,
                self.c / 2.0
            )));
        }
        Ok(())
    }
}

/// Cap profile `z' = ε ρ(|v|/c) / v`.
fn cap(eps: f64, c: f64, v: C64) -> C64 {
    v.inv() * (eps * Bump::TAU.eval(v.norm() / c))
}

/// Area densities of every glued graph at `ε`: each `σ̂_j` and `τ̂_k` in both
/// charts (the balls `B(Q_k)` excluded) and the three caps.
pub fn density_checks(
    family: &SectionFamily,
    sup: &SectionSup,
    eps: f64,
    c: f64,
) -> Result<Vec<(String, SymplecticCheck)>, ConfigError> {
    let zero = C64::new(0.0, 0.0);
    let inner = disc_grid(zero, 0.5, 24, 96);
    // the D-chart grid already covers |z| = 1/2; stay clear of it so the
    // difference stencil never leaves the V chart
    let outer = annulus_grid(zero, 0.5 + 1e-5, 1.0, 24, 96);
    let mut out = Vec::new();
    for id in SectionId::all() {
        let inner_pts: Vec<C64> = match id {
            SectionId::Tau(k) => {
                let q = SectionSup::ball_center(family, k);
                let r = sup.ball_radius[k - 1];
                inner
                    .iter()
                    .copied()
                    .filter(|z| (z - q).norm() > r)
                    .collect()
            }
            SectionId::Sigma(_) => inner.clone(),
        };
        let d = check_symplectic_graph(
            |z| family.global(id, z, Chart::D),
            &inner_pts,
            eps,
            family.lambda(),
        )?;
        out.push((format!("{id} D-chart"), d));
        let v = check_symplectic_graph(|z| family.global(id, z, Chart::V), &outer, eps, 0.5)?;
        out.push((format!("{id} V-chart"), v));
    }
    let r0 = eps / c;
    let cap_pts = annulus_grid(zero, r0, c, 48, 96);
    let caps = check_symplectic_graph(|v| Ok(cap(eps, c, v)), &cap_pts, 1.0, r0)?;
    out.push(("caps".into(), caps));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EpsChoice {
    pub eps: f64,
    /// How many times the starting power of two was halved for positivity.
    pub halvings: u32,
    pub regime: Regime,
    pub min_density: f64,
    pub explicit: bool,
}

/// With `explicit` set, checks it; otherwise takes the largest power of two
/// with `εN < c` and `ε/c ≤ c/2`, halving until every graph is symplectic.
pub fn choose_eps(
    family: &SectionFamily,
    sup: &SectionSup,
    c: f64,
    explicit: Option<f64>,
) -> Result<EpsChoice, ConfigError> {
    let min_density = |eps: f64| -> Result<(f64, Option<ConfigError>), ConfigError> {
        let checks = density_checks(family, sup, eps, c)?;
        let worst = checks
            .into_iter()
            .min_by(|a, b| a.1.min_positivity.total_cmp(&b.1.min_positivity))
            .expect("nonempty");
        let min = worst.1.min_positivity;
        Ok((min, worst.1.into_result().err()))
    };
    if let Some(eps) = explicit {
        let regime = Regime::new(eps, sup.n, c);
        regime.check()?;
        let (min, err) = min_density(eps)?;
        if let Some(e) = err {
            return Err(e);
        }
        return Ok(EpsChoice {
            eps,
            halvings: 0,
            regime,
            min_density: min,
            explicit: true,
        });
    }
    let ceiling = (c / sup.n).min(c * c / 2.0);
    let mut eps = 2f64.powi(ceiling.log2().floor() as i32);
    if eps * sup.n >= c {
        eps /= 2.0;
    }
    for halvings in 0..64 {
        let regime = Regime::new(eps, sup.n, c);
        regime.check()?;
        let (min, err) = min_density(eps)?;
        if err.is_none() {
            return Ok(EpsChoice {
                eps,
                halvings,
                regime,
                min_density: min,
                explicit: false,
            });
        }
        eps /= 2.0;
    }
    Err(ConfigError::Regime(
        "no power of two below the size bounds gives positive densities".into(),
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Pieces {
    /// Graphs of `τ̂_k` over the curve minus `B(Q_k)`: genus 1, one boundary circle.
    pub punctured_tori: i64,
    /// Annuli `ε/c ≤ |v| ≤ c`.
    pub caps: i64,
    /// The line minus three discs.
    pub holed_spheres: i64,
    pub gluing_circles: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Assembly {
    pub euler: i64,
    pub genus: i64,
    pub pieces: Pieces,
    /// `½(10−1)(10−2) − 11·3` for a degree-10 plane curve with eleven triple points.
    pub adjunction_genus: i64,
    pub regime: Regime,
    pub cap_min_v: f64,
    pub others_max_vertical: f64,
    pub no_new_intersections: bool,
}

fn euler_with_boundary(genus: i64, boundary: i64) -> i64 {
    2 - 2 * genus - boundary
}

/// Euler characteristic from the pieces and the separation between caps and
/// all other graphs over the balls `B(Q_k)`.
pub fn assemble_g(
    family: &SectionFamily,
    sup: &SectionSup,
    eps: f64,
    c: f64,
) -> Result<Assembly, ConfigError> {
    let regime = Regime::new(eps, sup.n, c);
    regime.check()?;
    let pieces = Pieces {
        punctured_tori: 3,
        caps: 3,
        holed_spheres: 1,
        gluing_circles: 6,
    };
    // circles have Euler characteristic 0, so gluing adds nothing
    let euler = pieces.punctured_tori * euler_with_boundary(1, 1)
        + pieces.caps * euler_with_boundary(0, 2)
        + pieces.holed_spheres * euler_with_boundary(0, 3);
    let genus = (2 - euler) / 2;

    let zero = C64::new(0.0, 0.0);
    let cap_pts = annulus_grid(zero, eps / c, c, 32, 64);
    let cap_min_v = cap_pts
        .iter()
        .map(|v| v.norm())
        .fold(f64::INFINITY, f64::min);
    let mut others_max = 0.0f64;
    for k in 1..=3 {
        let ball = disc_grid(
            SectionSup::ball_center(family, k),
            sup.ball_radius[k - 1],
            8,
            32,
        );
        for id in SectionId::all() {
            if id == SectionId::Tau(k) {
                continue;
            }
            for z in &ball {
                others_max = others_max.max(eps * family.global(id, *z, Chart::D)?.norm());
            }
        }
    }
    let separated = others_max < cap_min_v * (1.0 - 1e-12) && others_max <= eps * sup.n;
    Ok(Assembly {
        euler,
        genus,
        pieces,
        adjunction_genus: plane_curve_genus(10, &[3; 11]),
        regime,
        cap_min_v,
        others_max_vertical: others_max,
        no_new_intersections: separated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{ModelParams, ParamsInput};

    fn family() -> SectionFamily {
        let p = ParamsInput::default();
        SectionFamily::new(&ModelParams::new(&p.z, &p.w, 0.005, 1.0, 1.0).unwrap())
    }

    #[test]
    fn sup_dominates_constants() {
        let fam = family();
        let sup = section_sup(&fam).unwrap();
        for id in SectionId::all() {
            assert!(fam.constant(id).norm() < sup.n);
        }
        assert!(sup.ball_radius.iter().all(|r| *r > 0.0 && *r < 0.5));
    }

    #[test]
    fn eps_and_genus() {
        let fam = family();
        let sup = section_sup(&fam).unwrap();
        let c = (0.9 / sup.n).min(1.0);
        let choice = choose_eps(&fam, &sup, c, None).unwrap();
        assert!(choice.regime.holds());
        assert!(choice.min_density > 0.0);
        assert_eq!(choice.eps.log2().fract(), 0.0);
        let g = assemble_g(&fam, &sup, choice.eps, c).unwrap();
        assert_eq!(g.euler, -4);
        assert_eq!(g.genus, 3);
        assert_eq!(g.adjunction_genus, 3);
        assert!(g.no_new_intersections);
    }

    #[test]
    fn large_eps_is_rejected() {
        let fam = family();
        let sup = section_sup(&fam).unwrap();
        let c = (0.9 / sup.n).min(1.0);
        assert!(matches!(
            assemble_g(&fam, &sup, c, c),
            Err(ConfigError::Regime(_))
        ));
        assert!(matches!(
            choose_eps(&fam, &sup, c, Some(c)),
            Err(ConfigError::Regime(_))
        ));
    }
}
