//! Residues of `a₁` that keep `gcd(p·a₁ + 1, p²·a₂ + 1) = 1`.

use num_integer::Integer;

use super::primes::factorize;
use super::SeifertError;

/// Forbidden residues for `a₁`: `a₁` is excluded exactly when
/// `a₁ ≡ α_j (mod q_j)` for some prime `q_j` of the modulus list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueSet {
    pub p: u64,
    pub a2: i64,
    /// `p²a₂ + 1`
    pub n: i128,
    /// `(q_j, exponent)` from the factorization of `|n|`, plus any primes
    /// added afterwards (exponent 0).
    pub primes: Vec<(u64, u32)>,
    /// `α_j` with `1 + α_j·p ≡ 0 (mod q_j)`, reduced to `[0, q_j)`.
    pub residues: Vec<u64>,
}

/// Inverse of `a` modulo `m` via the extended Euclidean algorithm.
pub fn inverse_mod(a: i128, m: i128) -> Option<i128> {
    let e = a.extended_gcd(&m);
    if e.gcd.abs() != 1 {
        return None;
    }
    Some((e.x * e.gcd).rem_euclid(m))
}

/// The `α` with `1 + α·p ≡ 0 (mod q)`, i.e. `α ≡ −p⁻¹`.
pub fn bezout_residue(p: u64, q: u64) -> Option<u64> {
    let inv = inverse_mod(p as i128, q as i128)?;
    Some(((-inv).rem_euclid(q as i128)) as u64)
}

pub fn admissible_a1(p: u64, a2: i64) -> Result<ResidueSet, SeifertError> {
    let n = (p as i128) * (p as i128) * (a2 as i128) + 1;
    if n == 0 {
        return Err(SeifertError::Domain("p^2 a2 + 1 = 0".into()));
    }
    if n.unsigned_abs() >= 1u128 << 64 {
        return Err(SeifertError::TooLarge(n));
    }
    let primes = factorize(n.unsigned_abs() as u64);
    let residues = primes
        .iter()
        .map(|&(q, _)| bezout_residue(p, q).expect("q divides p^2 a2 + 1, so it is coprime to p"))
        .collect();
    Ok(ResidueSet {
        p,
        a2,
        n,
        primes,
        residues,
    })
}

impl ResidueSet {
    pub fn modulus(&self) -> u128 {
        self.primes.iter().map(|&(q, _)| q as u128).product()
    }

    /// Number of allowed residues modulo [`modulus`](Self::modulus): `Π(q_j − 1)`.
    pub fn allowed_count(&self) -> u128 {
        self.primes.iter().map(|&(q, _)| q as u128 - 1).product()
    }

    pub fn is_forbidden(&self, a1: i64) -> bool {
        self.primes
            .iter()
            .zip(&self.residues)
            .any(|(&(q, _), &alpha)| (a1 as i128).rem_euclid(q as i128) == alpha as i128)
    }

    /// Adds the prime 2 with its Bezout residue (needed for the spin choice
    /// when `p` is odd). A no-op if 2 is already present.
    pub fn with_prime_two(&self) -> Result<ResidueSet, SeifertError> {
        if self.primes.iter().any(|&(q, _)| q == 2) {
            return Ok(self.clone());
        }
        let alpha = bezout_residue(self.p, 2)
            .ok_or_else(|| SeifertError::Domain("p = 2 has no residue modulo 2".into()))?;
        let mut out = self.clone();
        out.primes.insert(0, (2, 0));
        out.residues.insert(0, alpha);
        Ok(out)
    }

    /// Allowed residues modulo `Q`, in increasing order, built by the Chinese
    /// remainder theorem from the allowed classes modulo each prime.
    pub fn allowed_residues(&self, limit: usize) -> Result<Vec<u128>, SeifertError> {
        let count = self.allowed_count();
        if count > limit as u128 {
            return Err(SeifertError::Domain(format!(
                "{count} allowed residues exceed the limit {limit}"
            )));
        }
        let mut acc: Vec<(u128, u128)> = vec![(0, 1)]; // (residue, modulus)
        for (&(q, _), &alpha) in self.primes.iter().zip(&self.residues) {
            let q = q as u128;
            let mut next = Vec::with_capacity(acc.len() * (q as usize - 1));
            for &(r, m) in &acc {
                for x in (0..q).filter(|&x| x != alpha as u128) {
                    next.push((crt_pair(r, m, x, q), m * q));
                }
            }
            acc = next;
        }
        let mut out: Vec<u128> = acc.into_iter().map(|(r, _)| r).collect();
        out.sort_unstable();
        Ok(out)
    }
}

/// `x ≡ r (mod m)`, `x ≡ s (mod q)` with `gcd(m, q) = 1`.
fn crt_pair(r: u128, m: u128, s: u128, q: u128) -> u128 {
    if m == 1 {
        return s % q;
    }
    let inv = inverse_mod((m % q) as i128, q as i128).expect("coprime moduli") as u128;
    let t = ((s + q - r % q) % q) * inv % q;
    r + m * t
}
