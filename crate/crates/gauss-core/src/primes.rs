//! Small-prime machinery for the scan strategies: sieve, trial-division
//! factorization, divisor enumeration. Desk-scale only — the scans that
//! use these never look past √N ≤ 10⁶ or so.

/// Primes up to and including `limit`, by Eratosthenes.
pub fn sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Prime factors of n with multiplicity, ascending. n ≥ 2.
pub fn factorize(mut n: u64) -> Vec<u64> {
    let mut factors = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        while n % d == 0 {
            factors.push(d);
            n /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        factors.push(n);
    }
    factors
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).len() == 1
}

/// Product of exactly two primes (not necessarily distinct).
pub fn is_semiprime(n: u64) -> bool {
    n >= 4 && factorize(n).len() == 2
}

/// All divisors of n, ascending, including 1 and n.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}
