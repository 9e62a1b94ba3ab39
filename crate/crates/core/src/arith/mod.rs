//! Integer arithmetic substrate: factorization, Kronecker symbols, prime
//! sieves, and enumeration of fundamental discriminants.
//!
//! Everything here is pure, deterministic, and safe to call concurrently.

mod disc;
mod factor;
mod sieve;

pub use disc::{fundamental_discriminants, Discriminant, SignFilter};
pub use factor::{factorize, is_prime, Factorization};
pub use sieve::{primes_up_to, smallest_prime_factors};

/// Kronecker symbol (a/n) with the standard 2-adic convention.
///
/// Fully multiplicative in n. For n = 0 the symbol is 1 exactly when
/// a = ±1, else 0.
pub fn kronecker(a: i64, n: u64) -> i32 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut n = n;
    let mut result = 1i32;
    let twos = n.trailing_zeros();
    if twos > 0 {
        if a & 1 == 0 {
            return 0;
        }
        // (a/2) = +1 for a = ±1 mod 8, -1 for a = ±3 mod 8
        let a8 = a.rem_euclid(8);
        if twos % 2 == 1 && (a8 == 3 || a8 == 5) {
            result = -result;
        }
        n >>= twos;
    }
    // n is now odd; run binary reciprocity on (a/n).
    let mut a = a.rem_euclid(n as i64) as u64;
    while a != 0 {
        let z = a.trailing_zeros();
        if z > 0 {
            a >>= z;
            let n8 = n % 8;
            if z % 2 == 1 && (n8 == 3 || n8 == 5) {
                result = -result;
            }
        }
        // both odd: quadratic reciprocity flip
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        let t = n % a;
        n = a;
        a = t;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Floor of sqrt for i64 inputs that are known nonnegative.
pub fn isqrt64(n: i64) -> i64 {
    debug_assert!(n >= 0);
    (n as u64).isqrt() as i64
}

pub(crate) fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended gcd: returns (g, x, y) with a*x + b*y = g, g >= 0.
pub(crate) fn extgcd_i128(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Square root of a modulo odd prime p (Tonelli-Shanks), if it exists.
pub fn sqrt_mod_prime(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if p == 2 {
        return Some(a);
    }
    if a == 0 {
        return Some(0);
    }
    if mod_pow(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(mod_pow(a, (p + 1) / 4, p));
    }
    // Tonelli-Shanks
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2u64;
    while mod_pow(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = mod_pow(z, q, p);
    let mut t = mod_pow(a, q, p);
    let mut r = mod_pow(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = mod_pow(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_spec_values() {
        assert_eq!(kronecker(-4, 2), 0);
        assert_eq!(kronecker(-23, 2), 1);
        assert_eq!(kronecker(5, 11), 1);
    }

    #[test]
    fn kronecker_matches_square_search_small() {
        // For odd prime p not dividing D the symbol is +1 exactly when D is
        // a nonzero square mod p.
        for p in primes_up_to(100) {
            if p == 2 {
                continue;
            }
            let squares: std::collections::HashSet<u64> =
                (1..p).map(|x| (x * x) % p).collect();
            for d in -99i64..100 {
                if d == 0 || d.rem_euclid(p as i64) == 0 {
                    continue;
                }
                let expect = if squares.contains(&(d.rem_euclid(p as i64) as u64)) {
                    1
                } else {
                    -1
                };
                assert_eq!(kronecker(d, p), expect, "d={d} p={p}");
            }
        }
    }

    #[test]
    fn kronecker_multiplicative_in_n() {
        for d in [-23i64, -4, 5, 12, 21, -31] {
            for n1 in 1u64..40 {
                for n2 in 1u64..40 {
                    assert_eq!(
                        kronecker(d, n1 * n2),
                        kronecker(d, n1) * kronecker(d, n2),
                        "d={d} n1={n1} n2={n2}"
                    );
                }
            }
        }
    }

    #[test]
    fn sqrt_mod_prime_roundtrip() {
        for p in [3u64, 5, 7, 11, 13, 17, 101, 103] {
            for a in 0..p {
                if let Some(r) = sqrt_mod_prime(a, p) {
                    assert_eq!(mul_mod(r, r, p), a % p);
                }
            }
        }
    }
}
