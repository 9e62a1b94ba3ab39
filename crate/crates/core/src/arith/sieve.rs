//! Shared prime sieves. Built once per call; callers cache as needed.

/// All primes p <= limit by a simple sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::with_capacity((n as f64 / (n as f64).ln().max(2.0)) as usize + 8);
    for p in 2..=n {
        if !composite[p] {
            primes.push(p as u64);
            let mut m = p * p;
            while m <= n {
                composite[m] = true;
                m += p;
            }
        }
    }
    primes
}

/// Smallest prime factor table: spf[n] is the least prime dividing n, with
/// spf[0] = spf[1] = 0.
pub fn smallest_prime_factors(limit: usize) -> Vec<u32> {
    let mut spf = vec![0u32; limit + 1];
    for i in 2..=limit {
        if spf[i] == 0 {
            let mut m = i;
            while m <= limit {
                if spf[m] == 0 {
                    spf[m] = i as u32;
                }
                m += i;
            }
        }
    }
    spf
}

/// Flags squarefree integers in (lo, hi]; entry k corresponds to lo + 1 + k.
pub fn squarefree_flags(lo: u64, hi: u64) -> Vec<bool> {
    if hi <= lo {
        return Vec::new();
    }
    let len = (hi - lo) as usize;
    let mut flags = vec![true; len];
    let root = hi.isqrt();
    for p in primes_up_to(root) {
        let p2 = p * p;
        let mut m = ((lo + 1).div_ceil(p2)) * p2;
        while m <= hi {
            flags[(m - lo - 1) as usize] = false;
            m += p2;
        }
    }
    if lo == 0 && !flags.is_empty() {
        // 1 is squarefree; nothing to fix, but 0 never appears since the
        // interval is open at lo.
        debug_assert!(flags[0]);
    }
    flags
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_small() {
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(primes_up_to(1).len(), 0);
    }

    #[test]
    fn prime_count_1000() {
        assert_eq!(primes_up_to(1000).len(), 168);
    }

    #[test]
    fn spf_matches_division() {
        let spf = smallest_prime_factors(500);
        for n in 2..=500usize {
            let mut d = 2;
            while n % d != 0 {
                d += 1;
            }
            assert_eq!(spf[n] as usize, d);
        }
    }

    #[test]
    fn squarefree_window() {
        let flags = squarefree_flags(0, 20);
        let brute: Vec<bool> = (1u64..=20)
            .map(|n| (2..=n).all(|d| d * d > n || n % (d * d) != 0))
            .collect();
        assert_eq!(flags, brute);
    }
}
