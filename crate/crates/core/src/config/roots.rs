//! Zeros of meromorphic functions with known poles, located by quadtree
//! subdivision on argument-principle counts and polished by Newton's method.

use std::f64::consts::TAU;

use serde::Serialize;

use super::{ConfigError, C64};

pub trait Holomorphic: Sync {
    fn value(&self, z: C64) -> C64;
    fn derivative(&self, z: C64) -> C64;
    /// Simple poles inside the search region, if any.
    fn poles(&self) -> Vec<C64> {
        Vec::new()
    }
}

/// A function given by closures, mainly for tests and examples.
pub struct Analytic<F, D> {
    pub f: F,
    pub df: D,
    pub poles: Vec<C64>,
}

impl<F, D> Holomorphic for Analytic<F, D>
where
    F: Fn(C64) -> C64 + Sync,
    D: Fn(C64) -> C64 + Sync,
{
    fn value(&self, z: C64) -> C64 {
        (self.f)(z)
    }
    fn derivative(&self, z: C64) -> C64 {
        (self.df)(z)
    }
    fn poles(&self) -> Vec<C64> {
        self.poles.clone()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Rect {
    pub lo: C64,
    pub hi: C64,
}

impl Rect {
    pub fn square(center: C64, half: f64) -> Rect {
        Rect {
            lo: center - C64::new(half, half),
            hi: center + C64::new(half, half),
        }
    }

    pub fn width(&self) -> f64 {
        (self.hi.re - self.lo.re).max(self.hi.im - self.lo.im)
    }

    pub fn center(&self) -> C64 {
        (self.lo + self.hi) * 0.5
    }

    pub fn contains(&self, z: C64) -> bool {
        z.re > self.lo.re && z.re < self.hi.re && z.im > self.lo.im && z.im < self.hi.im
    }

    fn boundary_distance(&self, z: C64) -> f64 {
        let dx = (z.re - self.lo.re).abs().min((z.re - self.hi.re).abs());
        let dy = (z.im - self.lo.im).abs().min((z.im - self.hi.im).abs());
        if self.contains(z) {
            dx.min(dy)
        } else {
            // outside: distance to the closed rectangle
            let cx = z.re.clamp(self.lo.re, self.hi.re);
            let cy = z.im.clamp(self.lo.im, self.hi.im);
            (z - C64::new(cx, cy)).norm()
        }
    }

    fn corners(&self) -> [C64; 4] {
        [
            self.lo,
            C64::new(self.hi.re, self.lo.im),
            self.hi,
            C64::new(self.lo.re, self.hi.im),
        ]
    }

    fn split(&self, fx: f64, fy: f64) -> [Rect; 4] {
        let mx = self.lo.re + fx * (self.hi.re - self.lo.re);
        let my = self.lo.im + fy * (self.hi.im - self.lo.im);
        [
            Rect {
                lo: self.lo,
                hi: C64::new(mx, my),
            },
            Rect {
                lo: C64::new(mx, self.lo.im),
                hi: C64::new(self.hi.re, my),
            },
            Rect {
                lo: C64::new(self.lo.re, my),
                hi: C64::new(mx, self.hi.im),
            },
            Rect {
                lo: C64::new(mx, my),
                hi: self.hi,
            },
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Root {
    pub z: C64,
    /// `|F(z)|`
    pub residual: f64,
    /// Winding number of `F` on a small circle around `z`.
    pub multiplicity: i64,
}

fn usable(v: C64) -> bool {
    v.re.is_finite() && v.im.is_finite() && v != C64::new(0.0, 0.0)
}

/// `|F/F'|`, the Newton step, which is comparable to the distance to the
/// nearest zero or pole.
fn newton_radius<H: Holomorphic + ?Sized>(h: &H, z: C64, fz: C64) -> f64 {
    let d = h.derivative(z);
    if d == C64::new(0.0, 0.0) {
        f64::INFINITY
    } else {
        (fz / d).norm()
    }
}

/// Change of `arg F` along the segment `a → b`, bisecting until every step
/// turns by less than half a radian, halves agree with the whole, and the
/// step is short compared with the Newton radius at its ends and midpoint.
/// Three samples alone can step over a zero lying on the segment.
fn track<H: Holomorphic + ?Sized>(
    h: &H,
    a: C64,
    b: C64,
    fa: C64,
    fb: C64,
    min_len: f64,
) -> Result<f64, ConfigError> {
    let m = (a + b) * 0.5;
    let fm = h.value(m);
    if !usable(fa) || !usable(fb) || !usable(fm) {
        return Err(ConfigError::NearZero(m));
    }
    let d = (fb / fa).arg();
    let d1 = (fm / fa).arg();
    let d2 = (fb / fm).arg();
    let len = (b - a).norm();
    if d1.abs() < 0.5 && d2.abs() < 0.5 && (d1 + d2 - d).abs() < 1e-9 {
        let reach = newton_radius(h, a, fa)
            .min(newton_radius(h, b, fb))
            .min(newton_radius(h, m, fm));
        if len <= 0.5 * reach {
            return Ok(d);
        }
    }
    if len < min_len {
        return Err(ConfigError::NearZero(m));
    }
    Ok(track(h, a, m, fa, fm, min_len)? + track(h, m, b, fm, fb, min_len)?)
}

fn polygon_turns<H: Holomorphic + ?Sized>(
    h: &H,
    vertices: &[C64],
    pieces: usize,
    min_len: f64,
) -> Result<i64, ConfigError> {
    let mut total = 0.0;
    for (i, &a) in vertices.iter().enumerate() {
        let b = vertices[(i + 1) % vertices.len()];
        let mut prev = a;
        let mut fprev = h.value(a);
        for s in 1..=pieces {
            let next = a + (b - a) * (s as f64 / pieces as f64);
            let fnext = h.value(next);
            total += track(h, prev, next, fprev, fnext, min_len)?;
            prev = next;
            fprev = fnext;
        }
    }
    let turns = total / TAU;
    let rounded = turns.round();
    if (turns - rounded).abs() > 1e-6 {
        return Err(ConfigError::NearZero(vertices[0]));
    }
    Ok(rounded as i64)
}

/// Number of zeros of `h` inside `rect`: winding number of the boundary
/// image plus the known poles strictly inside.
pub fn winding_count<H: Holomorphic + ?Sized>(h: &H, rect: &Rect) -> Result<i64, ConfigError> {
    let min_len = 1e-7 * rect.width();
    let poles = h.poles();
    let mut inside = 0;
    for p in &poles {
        if rect.boundary_distance(*p) < 1e-6 * rect.width() {
            return Err(ConfigError::NearZero(*p));
        }
        if rect.contains(*p) {
            inside += 1;
        }
    }
    Ok(polygon_turns(h, &rect.corners(), 8, min_len)? + inside)
}

/// Zeros minus poles inside the circle `|z − center| = radius`, traced as a
/// 256-gon.
pub fn circle_count<H: Holomorphic + ?Sized>(
    h: &H,
    center: C64,
    radius: f64,
) -> Result<i64, ConfigError> {
    let n = 256;
    let vertices: Vec<C64> = (0..n)
        .map(|k| center + C64::from_polar(radius, TAU * k as f64 / n as f64))
        .collect();
    polygon_turns(h, &vertices, 1, 1e-7 * radius)
}

fn newton<H: Holomorphic + ?Sized>(h: &H, start: C64, size: f64) -> Option<C64> {
    let mut z = start;
    for _ in 0..100 {
        let d = h.derivative(z);
        if !usable(d) {
            return None;
        }
        let step = h.value(z) / d;
        if !(step.re.is_finite() && step.im.is_finite()) {
            return None;
        }
        z -= step;
        if step.norm() <= 1e-15 * (z.norm() + size) {
            return Some(z);
        }
    }
    None
}

/// Split fractions tried in order when a cut passes too close to a zero.
const SPLITS: [f64; 6] = [0.5, 0.5137, 0.4771, 0.5419, 0.4433, 0.5861];

/// All zeros of `h` in `rect`, counted with multiplicity. The total must
/// agree with the boundary winding count of `rect`.
pub fn find_zeros<H: Holomorphic + ?Sized>(h: &H, rect: &Rect) -> Result<Vec<Root>, ConfigError> {
    let total = winding_count(h, rect)?;
    let cluster = 1e-11 * rect.width();
    let mut found: Vec<(C64, i64)> = Vec::new();
    let mut stack = vec![(*rect, total)];
    while let Some((cell, n)) = stack.pop() {
        if n <= 0 {
            if n < 0 {
                return Err(ConfigError::UndetectedRoot {
                    region: format!("cell [{}, {}]", cell.lo, cell.hi),
                    winding: n,
                    located: 0,
                });
            }
            continue;
        }
        let size = cell.width();
        if n == 1 {
            if let Some(z) = newton(h, cell.center(), size) {
                if cell.contains(z) {
                    found.push((z, 1));
                    continue;
                }
            }
        }
        if size < cluster {
            match newton(h, cell.center(), size) {
                Some(z) if (z - cell.center()).norm() < size => found.push((z, n)),
                _ if n > 1 => found.push((cell.center(), n)),
                _ => {
                    return Err(ConfigError::Polish {
                        lo: cell.lo,
                        hi: cell.hi,
                    })
                }
            }
            continue;
        }
        let mut split = None;
        let mut mismatch = None;
        'tries: for (fx, fy) in SPLITS
            .iter()
            .flat_map(|&x| SPLITS.iter().map(move |&y| (x, y)))
        {
            {
                let children = cell.split(fx, fy);
                let mut counts = [0i64; 4];
                for (c, child) in counts.iter_mut().zip(&children) {
                    match winding_count(h, child) {
                        Ok(k) => *c = k,
                        Err(_) => continue 'tries,
                    }
                }
                let sum: i64 = counts.iter().sum();
                if sum == n {
                    split = Some((children, counts));
                    break 'tries;
                }
                mismatch = Some(sum);
            }
        }
        match split {
            Some((children, counts)) => stack.extend(children.into_iter().zip(counts)),
            None => {
                return Err(match mismatch {
                    Some(sum) => ConfigError::UndetectedRoot {
                        region: format!("cell [{}, {}]", cell.lo, cell.hi),
                        winding: n,
                        located: sum,
                    },
                    None => ConfigError::NearZero(cell.center()),
                })
            }
        }
    }

    let poles = h.poles();
    let mut roots = Vec::with_capacity(found.len());
    for (i, &(z, n)) in found.iter().enumerate() {
        let mut sep = 0.05 * rect.width();
        for (k, &(other, _)) in found.iter().enumerate() {
            if k != i {
                sep = sep.min((other - z).norm());
            }
        }
        for p in &poles {
            sep = sep.min((p - z).norm());
        }
        if sep == 0.0 {
            return Err(ConfigError::Polish { lo: z, hi: z });
        }
        let multiplicity = circle_count(h, z, 0.3 * sep)?;
        if multiplicity != n {
            return Err(ConfigError::UndetectedRoot {
                region: format!("circle around {z}"),
                winding: multiplicity,
                located: n,
            });
        }
        roots.push(Root {
            z,
            residual: h.value(z).norm(),
            multiplicity,
        });
    }
    roots.sort_by(|a, b| a.z.re.total_cmp(&b.z.re).then(a.z.im.total_cmp(&b.z.im)));
    let located: i64 = roots.iter().map(|r| r.multiplicity).sum();
    if located != total {
        return Err(ConfigError::UndetectedRoot {
            region: format!("rect [{}, {}]", rect.lo, rect.hi),
            winding: total,
            located,
        });
    }
    Ok(roots)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Transversality {
    /// `|d(f − g)/dz|` by central differences.
    pub derivative_gap: f64,
    /// `|∂̄(f − g)| / |∂(f − g)|`
    pub cr_residual: f64,
    pub positive: bool,
}

/// Finite-difference derivative of `h` at a root, step `1e−6·scale`. A
/// vanishing derivative is a tangency; `positive` records that `h` satisfies
/// Cauchy-Riemann there, so the local intersection is complex, hence positive.
pub fn check_transversality<H: Holomorphic + ?Sized>(
    h: &H,
    root: C64,
    scale: f64,
) -> Result<Transversality, ConfigError> {
    let step = 1e-6 * scale;
    let fx = (h.value(root + step) - h.value(root - step)) / (2.0 * step);
    let fy =
        (h.value(root + C64::new(0.0, step)) - h.value(root - C64::new(0.0, step))) / (2.0 * step);
    let dz = (fx - C64::i() * fy) * 0.5;
    let dzbar = (fx + C64::i() * fy) * 0.5;
    let gap = dz.norm();
    if !(gap > 1e-8) {
        return Err(ConfigError::Tangency { z: root, gap });
    }
    let cr = dzbar.norm() / gap;
    Ok(Transversality {
        derivative_gap: gap,
        cr_residual: cr,
        positive: cr < 1e-6,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(roots: Vec<C64>) -> Analytic<impl Fn(C64) -> C64 + Sync, impl Fn(C64) -> C64 + Sync> {
        let r2 = roots.clone();
        Analytic {
            f: move |z: C64| roots.iter().map(|r| z - r).product(),
            df: move |z: C64| {
                (0..r2.len())
                    .map(|i| {
                        r2.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != i)
                            .map(|(_, r)| z - r)
                            .product::<C64>()
                    })
                    .sum()
            },
            poles: vec![],
        }
    }

    #[test]
    fn finds_simple_roots() {
        let want = vec![
            C64::new(0.1, 0.2),
            C64::new(-0.3, 0.05),
            C64::new(0.0, -0.4),
            C64::new(0.25, 0.25),
        ];
        let f = poly(want.clone());
        let roots = find_zeros(&f, &Rect::square(C64::new(0.0, 0.0), 0.5)).unwrap();
        assert_eq!(roots.len(), 4);
        for w in &want {
            assert!(roots
                .iter()
                .any(|r| (r.z - w).norm() < 1e-12 && r.multiplicity == 1));
        }
    }

    #[test]
    fn double_root() {
        let f = poly(vec![
            C64::new(0.1, 0.1),
            C64::new(0.1, 0.1),
            C64::new(-0.2, 0.0),
        ]);
        let roots = find_zeros(&f, &Rect::square(C64::new(0.0, 0.0), 0.5)).unwrap();
        let total: i64 = roots.iter().map(|r| r.multiplicity).sum();
        assert_eq!(total, 3);
        assert!(roots
            .iter()
            .any(|r| r.multiplicity == 2 && (r.z - C64::new(0.1, 0.1)).norm() < 1e-4));
    }

    #[test]
    fn poles_are_subtracted() {
        // (z - 0.1)(z + 0.2) / (z - 0.3i)
        let f = Analytic {
            f: |z: C64| (z - 0.1) * (z + 0.2) / (z - C64::new(0.0, 0.3)),
            df: |z: C64| {
                let p = C64::new(0.0, 0.3);
                ((2.0 * z + 0.1) * (z - p) - (z - 0.1) * (z + 0.2)) / ((z - p) * (z - p))
            },
            poles: vec![C64::new(0.0, 0.3)],
        };
        let rect = Rect::square(C64::new(0.0, 0.0), 0.5);
        assert_eq!(winding_count(&f, &rect).unwrap(), 2);
        assert_eq!(find_zeros(&f, &rect).unwrap().len(), 2);
    }

    #[test]
    fn root_on_a_cut_is_still_found() {
        // the first split line goes straight through 0
        let f = poly(vec![C64::new(0.0, 0.0), C64::new(0.2, 0.0)]);
        let roots = find_zeros(&f, &Rect::square(C64::new(0.0, 0.0), 0.5)).unwrap();
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn transversality() {
        let sq = Analytic {
            f: |z: C64| z * z,
            df: |z: C64| 2.0 * z,
            poles: vec![],
        };
        assert!(matches!(
            check_transversality(&sq, C64::new(0.0, 0.0), 1.0),
            Err(ConfigError::Tangency { .. })
        ));
        let lin = poly(vec![C64::new(0.1, 0.0)]);
        let t = check_transversality(&lin, C64::new(0.1, 0.0), 1.0).unwrap();
        assert!((t.derivative_gap - 1.0).abs() < 1e-6);
        assert!(t.positive);
        let anti = Analytic {
            f: |z: C64| z.conj(),
            df: |_| C64::new(0.0, 0.0),
            poles: vec![],
        };
        assert!(!check_transversality(&anti, C64::new(0.0, 0.0), 1.0).is_ok_and(|t| t.positive));
    }
}
