//! Exact integer helpers: modular arithmetic, deterministic primality, factoring.
//!
//! Everything here is deterministic; Pollard's rho walks a fixed sequence of
//! polynomial increments, so repeated runs factor identically.

/// `a * b mod n` without overflow.
pub fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

/// `a^e mod n` by square-and-multiply.
pub fn powmod(mut a: u64, mut e: u128, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut acc = 1u64;
    a %= n;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, n);
        }
        a = mulmod(a, a, n);
        e >>= 1;
    }
    acc
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Deterministic Miller-Rabin for u64 (fixed witness set covers all 64-bit inputs).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d as u128, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    // n is odd, composite, not a prime power of interest below 2^63.
    for c in 1..64u64 {
        let f = |x: u64| (mulmod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!("pollard rho failed for {n}");
}

/// Prime factorization as sorted (prime, exponent) pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut primes = Vec::new();
    for p in [2u64, 3, 5] {
        while n % p == 0 {
            primes.push(p);
            n /= p;
        }
    }
    let mut stack = Vec::new();
    if n > 1 {
        stack.push(n);
    }
    while let Some(m) = stack.pop() {
        if is_prime(m) {
            primes.push(m);
            continue;
        }
        let d = pollard_rho(m);
        stack.push(d);
        stack.push(m / d);
    }
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// Multiplicative order of `a` modulo `n`, given the factorization of `group`,
/// a multiple of the order (usually the group size).
pub fn order_given_group(a: u64, n: u64, group: u64) -> u64 {
    debug_assert_eq!(powmod(a, group as u128, n), 1);
    let mut ord = group;
    for (p, _) in factorize(group) {
        while ord % p == 0 && powmod(a, (ord / p) as u128, n) == 1 {
            ord /= p;
        }
    }
    ord
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small_and_carmichael() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(!is_prime(1));
        assert!(!is_prime(561)); // Carmichael
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(2u64.pow(61) - 3));
    }

    #[test]
    fn factoring_roundtrip() {
        for n in [2u64, 12, 360, 1023, 21845, 349525, 390624] {
            let f = factorize(n);
            let back: u64 = f.iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(back, n);
            assert!(f.iter().all(|&(p, _)| is_prime(p)));
        }
    }

    #[test]
    fn orders() {
        // 2 has order 10 mod 341 = 11 * 31.
        assert_eq!(order_given_group(2, 341, 340), 10);
        // 3^4 = 81 = 1 mod 80.
        assert_eq!(order_given_group(3, 80, 4), 4);
        assert_eq!(order_given_group(1, 7, 6), 1);
    }
}
