use serde::Serialize;

/// Smooth non-increasing step: 1 for `r ≤ a`, 0 for `r ≥ b`, built from
/// `φ(t) = e^{−1/t}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bump {
    pub a: f64,
    pub b: f64,
}

fn phi(t: f64) -> f64 {
    if t > 0.0 {
        (-1.0 / t).exp()
    } else {
        0.0
    }
}

impl Bump {
    /// Plateau up to `2/3`, used for the genus-1 sections.
    pub const SIGMA: Bump = Bump {
        a: 2.0 / 3.0,
        b: 0.75,
    };
    /// Plateau up to `1/2`, used for the meromorphic sections and the caps.
    pub const TAU: Bump = Bump { a: 0.5, b: 0.75 };

    pub fn eval(&self, r: f64) -> f64 {
        if r <= self.a {
            return 1.0;
        }
        if r >= self.b {
            return 0.0;
        }
        let u = phi(self.b - r);
        let v = phi(r - self.a);
        u / (u + v)
    }

    /// Largest `|ρ'|`, estimated on a fine grid; used only for reporting.
    pub fn max_slope(&self) -> f64 {
        let n = 4096;
        let h = (self.b - self.a) / n as f64;
        (0..n)
            .map(|i| {
                let r = self.a + i as f64 * h;
                (self.eval(r) - self.eval(r + h)).abs() / h
            })
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plateaus_and_monotonicity() {
        for b in [Bump::SIGMA, Bump::TAU] {
            assert_eq!(b.eval(0.1), 1.0);
            assert_eq!(b.eval(b.a), 1.0);
            assert_eq!(b.eval(b.b), 0.0);
            assert_eq!(b.eval(2.0), 0.0);
            let mut prev = 1.0;
            for i in 0..=200 {
                let r = b.a + (b.b - b.a) * i as f64 / 200.0;
                let v = b.eval(r);
                assert!(v <= prev + 1e-15 && (0.0..=1.0).contains(&v));
                prev = v;
            }
        }
        let mid = Bump::TAU.eval(0.625);
        assert!((mid - 0.5).abs() < 1e-12);
        assert!(Bump::TAU.max_slope() > 4.0);
    }
}
