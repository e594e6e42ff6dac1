//! Certification of the whole configuration: every pairwise coincidence set,
//! chart consistency, seams, positivity and the genus-3 assembly.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::assembly::{assemble_g, density_checks, section_sup};
use super::roots::{check_transversality, circle_count, find_zeros, Holomorphic, Rect};
use super::symplectic::annulus_grid;
use super::{Chart, ConfigError, Resolved, SectionFamily, SectionId, C64};
use crate::report::{CertReport, Origin};

pub const RESIDUAL_TOL: f64 = 1e-10;
pub const CHART_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootRecord {
    pub re: f64,
    pub im: f64,
    pub residual: f64,
    pub scale: f64,
    pub multiplicity: i64,
    pub derivative_gap: f64,
    pub positive: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairOutcome {
    pub label: String,
    /// Zeros of `f − g` in `|z| < 1/2` by the argument principle.
    pub winding: i64,
    pub expected: usize,
    pub roots: Vec<RootRecord>,
    /// Largest distance from a predicted point to the nearest located root.
    pub max_deviation: f64,
    /// `min |f̂ − ĝ| / |λ⁻⁹A|` over `1/2 ≤ |z| ≤ 1`.
    pub annulus_min_gap: f64,
    pub pass: bool,
}

/// Coincidence points predicted for a pair: the shared base points `λz_i`,
/// plus the origin when both sections take the value 1 there.
pub fn expected_roots(family: &SectionFamily, f: SectionId, g: SectionId) -> Vec<C64> {
    let pts = family.params.base_points();
    let through = |id: SectionId, i: usize| match id {
        SectionId::Sigma(j) => i != j,
        SectionId::Tau(_) => true,
    };
    let one_at_origin = |id: SectionId| !matches!(id, SectionId::Sigma(11));
    let mut out: Vec<C64> = (1..=10)
        .filter(|&i| through(f, i) && through(g, i))
        .map(|i| pts[i - 1])
        .collect();
    if one_at_origin(f) && one_at_origin(g) {
        out.push(C64::new(0.0, 0.0));
    }
    out
}

fn seam_value(family: &SectionFamily, id: SectionId, z: C64) -> Result<C64, ConfigError> {
    if z.norm() >= 0.5 {
        family.global(id, z, Chart::V)
    } else {
        Ok(family.global(id, z, Chart::D)? * z.powi(-9))
    }
}

pub fn pair_report(
    family: &SectionFamily,
    f: SectionId,
    g: SectionId,
) -> Result<PairOutcome, ConfigError> {
    let h = family.coincidence(f, g);
    let lam = family.lambda();
    let zero = C64::new(0.0, 0.0);
    let poles_inside = h.poles().iter().filter(|p| p.norm() < 0.5).count() as i64;
    let winding = circle_count(&h, zero, 0.5)? + poles_inside;
    let found = find_zeros(&h, &Rect::square(zero, 0.5))?;
    let expected = expected_roots(family, f, g);

    let mut roots = Vec::with_capacity(found.len());
    let mut ok = true;
    for r in &found {
        let fv = family.rational(f).value(r.z);
        let gv = family.rational(g).value(r.z);
        let scale = 1f64.max(fv.norm()).max(gv.norm());
        let t = check_transversality(&h, r.z, lam)?;
        ok &= r.residual < RESIDUAL_TOL * scale
            && r.multiplicity == 1
            && t.positive
            && r.z.norm() < 0.5;
        roots.push(RootRecord {
            re: r.z.re,
            im: r.z.im,
            residual: r.residual,
            scale,
            multiplicity: r.multiplicity,
            derivative_gap: t.derivative_gap,
            positive: t.positive,
        });
    }
    let located: i64 = found.iter().map(|r| r.multiplicity).sum();
    if located != winding {
        return Err(ConfigError::UndetectedRoot {
            region: format!("{f}-{g} on |z| < 1/2"),
            winding,
            located,
        });
    }
    let max_deviation = expected
        .iter()
        .map(|e| {
            found
                .iter()
                .map(|r| (r.z - e).norm())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max);
    ok &= found.len() == expected.len() && max_deviation < 1e-8 * lam;

    let norm = family.lead.norm();
    let mut gap = f64::INFINITY;
    for z in annulus_grid(zero, 0.5, 1.0, 16, 128) {
        let d = family.global(f, z, Chart::V)? - family.global(g, z, Chart::V)?;
        gap = gap.min(d.norm() / norm);
    }
    ok &= gap > 0.0;

    Ok(PairOutcome {
        label: format!("{f}-{g}"),
        winding,
        expected: expected.len(),
        roots,
        max_deviation,
        annulus_min_gap: gap,
        pass: ok,
    })
}

fn all_pairs() -> Vec<(SectionId, SectionId)> {
    let ids = SectionId::all();
    let mut out = Vec::new();
    for (i, &a) in ids.iter().enumerate() {
        for &b in &ids[i + 1..] {
            out.push((a, b));
        }
    }
    out
}

/// Everything computed for a configuration, before it is turned into a report.
#[derive(Debug, Clone)]
pub struct ConfigRun {
    pub resolved: Resolved,
    pub pairs: Vec<PairOutcome>,
}

impl ConfigRun {
    /// Runs the pairwise root searches on the current rayon pool.
    pub fn run(resolved: Resolved) -> Result<ConfigRun, ConfigError> {
        let family = SectionFamily::new(&resolved.params);
        let mut pairs = all_pairs()
            .par_iter()
            .map(|&(f, g)| pair_report(&family, f, g))
            .collect::<Result<Vec<_>, _>>()?;
        pairs.sort_by(|a, b| a.label.cmp(&b.label));
        Ok(ConfigRun { resolved, pairs })
    }

    pub fn family(&self) -> SectionFamily {
        SectionFamily::new(&self.resolved.params)
    }

    /// `(pairs, roots per pair)` grouped as σ-σ, σ-τ, τ-τ.
    pub fn pair_groups(&self) -> [(usize, Vec<usize>); 3] {
        let mut groups: [(usize, Vec<usize>); 3] = Default::default();
        for p in &self.pairs {
            let taus = p.label.matches("tau").count();
            groups[taus].0 += 1;
            groups[taus].1.push(p.roots.len());
        }
        groups
    }
}

fn chart_consistency(family: &SectionFamily) -> Result<CertReport, ConfigError> {
    let mut worst = 0.0f64;
    let mut count = 0usize;
    for i in 0..100 {
        let r = 0.5 + 0.5 * (i as f64 + 0.5) / 100.0;
        for t in 0..100 {
            let z = C64::from_polar(r, std::f64::consts::TAU * t as f64 / 100.0);
            let zi9 = z.powi(-9);
            for j in 1..=10 {
                let v = family.eval_sigma(j, z, Chart::V)?;
                let d = family.eval_sigma(j, z, Chart::D)? * zi9;
                worst = worst.max((v - d).norm() / v.norm());
            }
            for k in 1..=3 {
                let v = family.eval_tau(k, z, Chart::V)?;
                let d = family.eval_tau(k, z, Chart::D)? * zi9;
                worst = worst.max((v - d).norm() / v.norm());
            }
            count += 1;
        }
    }
    Ok(
        CertReport::check("config.chart-consistency", worst <= CHART_TOL)
            .exact("grid points in 1/2 < |z| < 1", count, Origin::Elementary)
            .float(
                "max relative deviation of z^-9 sigma_D from sigma_V",
                worst,
                CHART_TOL,
                Origin::Derived,
            ),
    )
}

/// One-sided radial differences agree across the circles where `ρ` starts
/// and stops varying.
fn seams(family: &SectionFamily) -> Result<CertReport, ConfigError> {
    let delta = 1e-5;
    let norm = family.lead.norm();
    let mut worst = 0.0f64;
    let mut jump = 0.0f64;
    let mut cases = 0;
    for id in SectionId::all() {
        let radii: &[f64] = match id {
            SectionId::Sigma(_) => &[2.0 / 3.0, 0.75],
            SectionId::Tau(_) => &[0.5, 0.75],
        };
        for &r in radii {
            for t in 0..32 {
                let u = C64::from_polar(1.0, std::f64::consts::TAU * (t as f64 + 0.25) / 32.0);
                let at = |s: f64| seam_value(family, id, u * s);
                let (lo, mid, hi) = (at(r - delta)?, at(r)?, at(r + delta)?);
                let dp = (hi - mid) / delta;
                let dm = (mid - lo) / delta;
                let excess = (dp - dm).norm() - 1e-2 * dp.norm().max(dm.norm());
                worst = worst.max(excess / norm);
                jump = jump.max((hi - lo).norm() / norm);
                cases += 1;
            }
        }
    }
    Ok(
        CertReport::check("config.gluing-seams", worst <= 1e-9 && jump <= 1e-3)
            .exact("seam samples", cases, Origin::Elementary)
            .float(
                "one-sided derivative mismatch beyond 1% (relative to lambda^-9 |A|)",
                worst.max(0.0),
                1e-9,
                Origin::Derived,
            )
            .float(
                "value jump across seams (relative)",
                jump,
                1e-3,
                Origin::Derived,
            ),
    )
}

fn incidence(family: &SectionFamily, eps: f64) -> CertReport {
    let base = family.params.base_points();
    let mut failures = Vec::new();
    for id in SectionId::all() {
        for (j, p) in base.iter().enumerate() {
            // P_j = (λz_j, 0) for j ≤ 10 and (0, ε) for j = 11
            let vertical = if j == 10 { eps } else { 0.0 };
            let v = family.rational(id).value(*p) * eps;
            let on = (v - vertical).norm() <= 1e-10 * eps;
            let want = match id {
                SectionId::Sigma(i) => i != j + 1,
                SectionId::Tau(_) => true,
            };
            if on != want {
                failures.push(format!("{id} at P{}", j + 1));
            }
        }
    }
    CertReport::check("config.incidence", failures.is_empty())
        .text(
            "rule",
            "C_i contains P_j exactly for j != i; every tau_k contains all eleven points",
            Origin::Reference,
        )
        .exact(
            "P11",
            format!("(0, eps) with eps = {eps:e}"),
            Origin::Reference,
        )
        .equal("mismatches", failures.len(), 0, Origin::Derived)
}

/// Roots of `(εf, εg)` equal those of `(f, g)` bit for bit when `ε` is a power of two.
fn scaling(family: &SectionFamily, eps: f64) -> Result<CertReport, ConfigError> {
    struct Scaled<'a, H>(&'a H, f64);
    impl<H: Holomorphic> Holomorphic for Scaled<'_, H> {
        fn value(&self, z: C64) -> C64 {
            self.0.value(z) * self.1
        }
        fn derivative(&self, z: C64) -> C64 {
            self.0.derivative(z) * self.1
        }
        fn poles(&self) -> Vec<C64> {
            self.0.poles()
        }
    }
    let rect = Rect::square(C64::new(0.0, 0.0), 0.5);
    let mut same = true;
    for (f, g) in [
        (SectionId::Sigma(1), SectionId::Sigma(2)),
        (SectionId::Sigma(4), SectionId::Tau(2)),
        (SectionId::Tau(1), SectionId::Tau(3)),
    ] {
        let h = family.coincidence(f, g);
        let a: Vec<C64> = find_zeros(&h, &rect)?.into_iter().map(|r| r.z).collect();
        let b: Vec<C64> = find_zeros(&Scaled(&h, eps), &rect)?
            .into_iter()
            .map(|r| r.z)
            .collect();
        same &= a == b;
    }
    Ok(CertReport::check("config.eps-scaling", same).relation(
        "roots of (eps f, eps g) equal roots of (f, g)",
        same,
        "=",
        true,
        same,
        Origin::Derived,
    ))
}

pub fn full_configuration_report(run: &ConfigRun) -> Result<CertReport, ConfigError> {
    let family = run.family();
    let p = &run.resolved.params;
    let b = &run.resolved.bounds;
    let choice = &run.resolved.eps;
    let sup = section_sup(&family)?;

    let params = CertReport::pass("config.params")
        .float("lambda", p.lambda, 0.0, Origin::Derived)
        .float("eps", p.eps, 0.0, Origin::Derived)
        .float("c", p.c, 0.0, Origin::Derived)
        .float("N", sup.n, 0.0, Origin::Derived)
        .text("rho profile", &p.rho_profile, Origin::Elementary)
        .text("rho for sigma-hat", "1 for r <= 2/3, 0 for r >= 3/4", Origin::Reference)
        .text("rho for tau-hat and caps", "1 for r <= 1/2, 0 for r >= 3/4", Origin::Reference)
        .note("sigma-hat carries the factor lambda^-9 in front of A z_j on |z| >= 3/4; the prose description of that constant omits it")
        .with_data(json!({
            "z": p.z.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
            "w": p.w.iter().map(|w| [w.re, w.im]).collect::<Vec<_>>(),
            "lambda": p.lambda,
            "eps": p.eps,
            "c": p.c,
            "N": sup.n,
            "eps_halvings": choice.halvings,
        }));

    let overlap_witness = if b.lambda_max < 0.25 {
        super::disc_overlaps(b, 1.01 * b.lambda_max)
    } else {
        Vec::new()
    };
    let lambda_ok = super::disc_overlaps(b, p.lambda).is_empty();
    let bounds = CertReport::check("config.bounds", lambda_ok)
        .float("M0 (uniform in lambda <= 1/4)", b.m0, 0.0, Origin::Derived)
        .float(
            "M0 at the chosen lambda",
            b.m0_at(p.lambda),
            0.0,
            Origin::Derived,
        )
        .float("M (uniform)", b.m, 0.0, Origin::Derived)
        .float(
            "M at the chosen lambda",
            b.m_at(p.lambda),
            0.0,
            Origin::Derived,
        )
        .relation(
            "sampled sup |f_j| <= M0",
            b.m0_grid,
            "<=",
            b.m0,
            b.m0_grid <= b.m0,
            Origin::Derived,
        )
        .relation(
            "sampled sup |g_k| <= M",
            b.m_grid,
            "<=",
            b.m,
            b.m_grid <= b.m,
            Origin::Derived,
        )
        .float("lambda_max", b.lambda_max, 0.0, Origin::Derived)
        .text("binding constraint", &b.binding, Origin::Derived)
        .relation(
            "lambda < lambda_max",
            p.lambda,
            "<",
            b.lambda_max,
            lambda_ok,
            Origin::Derived,
        )
        .text(
            "overlaps at 1.01 lambda_max",
            overlap_witness.join(", "),
            Origin::Derived,
        )
        .note("lambda_max uses the uniform majorants; per-lambda values are recorded alongside")
        .with_data(serde_json::to_value(b).expect("serializable"));

    let pair_children: Vec<CertReport> = run
        .pairs
        .iter()
        .map(|o| {
            CertReport::check(format!("config.pair.{}", o.label), o.pass)
                .equal(
                    "zeros in |z| < 1/2 (argument principle)",
                    o.winding,
                    o.expected as i64,
                    Origin::Reference,
                )
                .equal("located roots", o.roots.len(), o.expected, Origin::Derived)
                .float(
                    "max distance to predicted points",
                    o.max_deviation,
                    1e-8 * p.lambda,
                    Origin::Derived,
                )
                .float(
                    "min |f - g| on 1/2 <= |z| <= 1 (relative)",
                    o.annulus_min_gap,
                    0.0,
                    Origin::Derived,
                )
                .with_data(json!({ "roots": o.roots }))
        })
        .collect();
    let groups = run.pair_groups();
    let uniform = |g: &(usize, Vec<usize>), n: usize| g.1.iter().all(|&k| k == n);
    let coincidences = CertReport::pass("config.coincidences")
        .equal("sigma-sigma pairs", groups[0].0, 55, Origin::Elementary)
        .relation(
            "each sigma-sigma pair meets in 9 points",
            uniform(&groups[0], 9),
            "=",
            true,
            uniform(&groups[0], 9),
            Origin::Reference,
        )
        .equal("sigma-tau pairs", groups[1].0, 33, Origin::Elementary)
        .relation(
            "each sigma-tau pair meets in 10 points",
            uniform(&groups[1], 10),
            "=",
            true,
            uniform(&groups[1], 10),
            Origin::Reference,
        )
        .equal("tau-tau pairs", groups[2].0, 3, Origin::Elementary)
        .relation(
            "each tau-tau pair meets in 11 points",
            uniform(&groups[2], 11),
            "=",
            true,
            uniform(&groups[2], 11),
            Origin::Reference,
        )
        .children(pair_children);

    let densities = density_checks(&family, &sup, p.eps, p.c)?;
    let symplectic = densities.iter().fold(
        CertReport::pass("config.symplectic").float("eps", p.eps, 0.0, Origin::Derived),
        |rep, (label, c)| {
            rep.relation(
                format!("min density on {label}"),
                format!("{:.6e}", c.min_positivity),
                ">",
                0,
                c.pass,
                Origin::Derived,
            )
        },
    );

    let g = assemble_g(&family, &sup, p.eps, p.c)?;
    let assembly = CertReport::pass("config.assembly")
        .equal("Euler characteristic", g.euler, -4, Origin::Derived)
        .equal("genus", g.genus, 3, Origin::Reference)
        .equal(
            "adjunction genus (10-1)(10-2)/2 - 11*3",
            g.adjunction_genus,
            3,
            Origin::Reference,
        )
        .relation(
            "eps N < c",
            format!("{:e}", g.regime.eps_n),
            "<",
            format!("{:e}", g.regime.c),
            g.regime.inside_neighbourhood,
            Origin::Reference,
        )
        .relation(
            "eps / c <= c / 2",
            format!("{:e}", g.regime.eps_over_c),
            "<=",
            format!("{:e}", g.regime.c / 2.0),
            g.regime.cap_fits,
            Origin::Reference,
        )
        .relation(
            "other graphs stay below the caps over B(Q_k)",
            format!("{:e}", g.others_max_vertical),
            "<",
            format!("{:e}", g.cap_min_v),
            g.no_new_intersections,
            Origin::Derived,
        )
        .with_data(serde_json::to_value(&g).expect("serializable"));

    Ok(CertReport::pass("config").children([
        params,
        bounds,
        chart_consistency(&family)?,
        seams(&family)?,
        coincidences,
        incidence(&family, p.eps),
        symplectic,
        assembly,
        scaling(&family, p.eps)?,
    ]))
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
    fn expected_sets() {
        let fam = family();
        use SectionId::*;
        assert_eq!(expected_roots(&fam, Sigma(1), Sigma(2)).len(), 9);
        assert_eq!(expected_roots(&fam, Sigma(1), Sigma(11)).len(), 9);
        assert!(!expected_roots(&fam, Sigma(1), Sigma(11)).contains(&C64::new(0.0, 0.0)));
        assert_eq!(expected_roots(&fam, Sigma(3), Tau(1)).len(), 10);
        assert_eq!(expected_roots(&fam, Sigma(11), Tau(1)).len(), 10);
        assert_eq!(expected_roots(&fam, Tau(1), Tau(2)).len(), 11);
    }

    #[test]
    fn single_pairs() {
        let fam = family();
        use SectionId::*;
        for (f, g, n) in [
            (Sigma(2), Sigma(7), 9),
            (Sigma(5), Tau(3), 10),
            (Tau(1), Tau(2), 11),
            (Sigma(11), Sigma(4), 9),
        ] {
            let o = pair_report(&fam, f, g).unwrap();
            assert!(o.pass, "{o:?}");
            assert_eq!(o.winding, n);
            assert_eq!(o.roots.len() as i64, n);
        }
    }

    #[test]
    fn chart_and_seams() {
        let fam = family();
        assert!(chart_consistency(&fam).unwrap().is_pass());
        let s = seams(&fam).unwrap();
        assert!(s.is_pass(), "{s:?}");
    }
}
