//! 64-bit primality and factorization.

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all `u64`: the first twelve primes are a
/// sufficient witness set below 3.3·10²⁴.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Prime factorization `[(q, e)]` in increasing order, by trial division.
///
/// Trial division stops at the square root of what remains; once the
/// remainder is prime it is taken as the last factor without searching
/// further.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut push = |q: u64, n: &mut u64| {
        let mut e = 0;
        while *n % q == 0 {
            *n /= q;
            e += 1;
        }
        if e > 0 {
            out.push((q, e));
        }
    };
    push(2, &mut n);
    let mut q = 3u64;
    while n > 1 {
        if is_prime(n) {
            push(n, &mut n);
            break;
        }
        if q.checked_mul(q).is_none_or(|qq| qq > n) {
            push(n, &mut n);
            break;
        }
        push(q, &mut n);
        q += 2;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes_match_sieve() {
        let limit = 2000usize;
        let mut sieve = vec![true; limit];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..limit {
            if sieve[i] {
                for j in (i * i..limit).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        for (n, &p) in sieve.iter().enumerate() {
            assert_eq!(is_prime(n as u64), p, "{n}");
        }
    }

    #[test]
    fn large_values() {
        assert!(is_prime(18_446_744_073_709_551_557)); // largest u64 prime
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2, 3, 5, 7
        assert!(is_prime((1 << 61) - 1));
    }

    #[test]
    fn factorizations() {
        assert_eq!(factorize(9), vec![(3, 2)]);
        assert_eq!(factorize(10), vec![(2, 1), (5, 1)]);
        assert_eq!(factorize(1), vec![]);
        let n = 600_851_475_143;
        let f = factorize(n);
        assert_eq!(f.iter().map(|&(q, e)| q.pow(e)).product::<u64>(), n);
        assert!(f.iter().all(|&(q, _)| is_prime(q)));
    }
}
