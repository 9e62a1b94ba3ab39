//! Deterministic 128-bit factorization: trial division for small factors,
//! then Brent's cycle variant of the rho method with a fixed parameter
//! schedule so outputs are reproducible.

use crate::error::Error;
use crate::Result;

const TRIAL_LIMIT: u128 = 1_000_000;

/// Prime factorization as (prime, exponent) pairs sorted by prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pairs: Vec<(u128, u32)>,
}

impl Factorization {
    pub fn pairs(&self) -> &[(u128, u32)] {
        &self.pairs
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Product of prime^exponent, the factored integer.
    pub fn value(&self) -> u128 {
        self.pairs
            .iter()
            .map(|&(p, e)| p.pow(e))
            .product()
    }

    /// All positive divisors, unsorted count bounded by the divisor function.
    pub fn divisors(&self) -> Vec<u128> {
        let mut divs = vec![1u128];
        for &(p, e) in &self.pairs {
            let len = divs.len();
            let mut pk = 1u128;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs
    }

    pub fn is_squarefree(&self) -> bool {
        self.pairs.iter().all(|&(_, e)| e == 1)
    }
}

/// Exact prime factorization of n.
///
/// The empty factorization is returned for n = 1. Inputs above 2^127 are
/// rejected with a range error.
pub fn factorize(n: u128) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::Range("factorize requires n >= 1".into()));
    }
    if n > (1u128 << 127) {
        return Err(Error::Range(format!("{n} exceeds 2^127")));
    }
    let mut pairs: Vec<(u128, u32)> = Vec::new();
    let mut rest = n;
    let push = |p: u128, e: u32, pairs: &mut Vec<(u128, u32)>| {
        pairs.push((p, e));
    };
    for p in [2u128, 3, 5] {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            push(p, e, &mut pairs);
        }
    }
    // 2,3,5-wheel trial division
    let mut d = 7u128;
    const WHEEL: [u128; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut w = 0usize;
    while d <= TRIAL_LIMIT && d * d <= rest {
        if rest % d == 0 {
            let mut e = 0;
            while rest % d == 0 {
                rest /= d;
                e += 1;
            }
            push(d, e, &mut pairs);
        }
        d += WHEEL[w];
        w = (w + 1) % WHEEL.len();
    }
    if rest > 1 {
        if rest <= TRIAL_LIMIT * TRIAL_LIMIT {
            // whatever survived trial division to min(10^6, sqrt) is prime
            push(rest, 1, &mut pairs);
        } else {
            let mut stack = vec![rest];
            let mut found: Vec<u128> = Vec::new();
            while let Some(m) = stack.pop() {
                if is_prime(m) {
                    found.push(m);
                    continue;
                }
                let f = pollard_brent(m);
                stack.push(f);
                stack.push(m / f);
            }
            found.sort_unstable();
            let mut i = 0;
            while i < found.len() {
                let p = found[i];
                let mut e = 0;
                while i < found.len() && found[i] == p {
                    e += 1;
                    i += 1;
                }
                push(p, e, &mut pairs);
            }
        }
    }
    pairs.sort_unstable_by_key(|&(p, _)| p);
    Ok(Factorization { pairs })
}

/// Miller-Rabin with the 12-witness base set that is deterministic for all
/// n < 3.3 * 10^24; larger inputs additionally get a fixed extended set.
pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    let witnesses: &[u128] = if n < 3_317_044_064_679_887_385_961_981 {
        &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
    } else {
        &[
            2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73,
        ]
    };
    'next: for &a in witnesses {
        let mut x = pow_mod_u128(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u128(x, x, n);
            if x == n - 1 {
                continue 'next;
            }
        }
        return false;
    }
    true
}

fn mul_mod_u128(a: u128, b: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        return (a % m) * (b % m) % m;
    }
    // shift-add; only reached for moduli above 64 bits
    let mut a = a % m;
    let mut b = b % m;
    let mut acc = 0u128;
    while b > 0 {
        if b & 1 == 1 {
            acc = add_mod_u128(acc, a, m);
        }
        a = add_mod_u128(a, a, m);
        b >>= 1;
    }
    acc
}

fn add_mod_u128(a: u128, b: u128, m: u128) -> u128 {
    let r = a.wrapping_add(b);
    if r < a || r >= m {
        r.wrapping_sub(m)
    } else {
        r
    }
}

fn pow_mod_u128(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut acc = 1u128 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u128(acc, base, m);
        }
        base = mul_mod_u128(base, base, m);
        exp >>= 1;
    }
    acc
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Brent's rho with polynomial x^2 + c; c runs through 1, 2, 3, ... so the
/// search is deterministic. Input must be composite and odd.
fn pollard_brent(n: u128) -> u128 {
    debug_assert!(n > 3 && !is_prime(n));
    if n % 2 == 0 {
        return 2;
    }
    for c in 1u128.. {
        let f = |x: u128| add_mod_u128(mul_mod_u128(x, x, n), c % n, n);
        let mut y = 2u128;
        let mut r = 1u128;
        let mut q = 1u128;
        let (mut x, mut ys) = (0u128, 0u128);
        let mut g = 1u128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0u128;
            while k < r && g == 1 {
                ys = y;
                let lim = 128.min(r - k);
                for _ in 0..lim {
                    y = f(y);
                    q = mul_mod_u128(q, x.abs_diff(y), n);
                }
                g = gcd_u128(q, n);
                k += lim;
            }
            r *= 2;
        }
        if g == n {
            g = 1;
            while g == 1 {
                ys = f(ys);
                g = gcd_u128(x.abs_diff(ys), n);
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_one_is_empty() {
        let f = factorize(1).unwrap();
        assert!(f.is_empty());
        assert_eq!(f.value(), 1);
    }

    #[test]
    fn factorize_sixty() {
        let f = factorize(60).unwrap();
        assert_eq!(f.pairs(), &[(2, 2), (3, 1), (5, 1)]);
    }

    #[test]
    fn factorize_prime_oracle() {
        // trial division to sqrt confirms 10^9+7 prime, frozen here
        let n: u128 = 1_000_000_007;
        let mut d = 2u128;
        let mut composite = false;
        while d * d <= n {
            if n % d == 0 {
                composite = true;
                break;
            }
            d += 1;
        }
        assert!(!composite);
        let f = factorize(n).unwrap();
        assert_eq!(f.pairs(), &[(n, 1)]);
    }

    #[test]
    fn factorize_rejects_out_of_range() {
        assert!(matches!(factorize(0), Err(Error::Range(_))));
        assert!(matches!(factorize((1u128 << 127) + 1), Err(Error::Range(_))));
    }

    #[test]
    fn factorize_large_semiprime() {
        let p: u128 = 1_000_000_007;
        let q: u128 = 1_000_000_009;
        let f = factorize(p * q).unwrap();
        assert_eq!(f.pairs(), &[(p, 1), (q, 1)]);
    }

    #[test]
    fn factorize_roundtrip_range() {
        for n in 1u128..4000 {
            let f = factorize(n).unwrap();
            assert_eq!(f.value(), n, "n={n}");
            for &(p, _) in f.pairs() {
                assert!(is_prime(p), "claimed prime {p} of {n}");
            }
        }
    }

    #[test]
    fn divisors_of_sixty() {
        let mut d = factorize(60).unwrap().divisors();
        d.sort_unstable();
        assert_eq!(d, vec![1, 2, 3, 4, 5, 6, 10, 12, 15, 20, 30, 60]);
    }
}
