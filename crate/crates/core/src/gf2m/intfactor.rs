//! Deterministic u64 factorization: trial division, Miller-Rabin with the
//! known-exact base set for 64 bits, and Brent's variant of Pollard rho.
//! Used to factor group orders 2^m - 1 for m <= 64.

fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, n: u64) -> u64 {
    let mut r = 1u64 % n;
    a %= n;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, n);
        }
        a = mulmod(a, a, n);
        e >>= 1;
    }
    r
}

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
    // n-1 = d * 2^s with d odd
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    // This base set is deterministic for all n < 2^64.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
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
    if n % 2 == 0 {
        return 2;
    }
    // Brent's cycle detection with batched gcds; deterministic restarts.
    for c in 1u64.. {
        let f = |x: u64| (mulmod(x, x, n) + c) % n;
        let (mut x, mut q) = (2u64, 1u64);
        let (mut y, mut ys) = (x, x);
        let mut g = 1u64;
        let mut r = 1u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0u64;
            while k < r && g == 1 {
                ys = y;
                let m = 128.min(r - k);
                for _ in 0..m {
                    y = f(y);
                    q = mulmod(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            // Batch overshot; redo step by step from the saved point.
            g = 1;
            let mut y2 = ys;
            while g == 1 {
                y2 = f(y2);
                g = gcd_u64(x.abs_diff(y2), n);
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

pub(crate) fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Prime factorization as sorted (prime, exponent) pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut factors: Vec<u64> = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        while n % p == 0 {
            factors.push(p);
            n /= p;
        }
    }
    let mut stack = vec![n];
    while let Some(v) = stack.pop() {
        if v == 1 {
            continue;
        }
        if is_prime(v) {
            factors.push(v);
            continue;
        }
        let d = pollard_rho(v);
        stack.push(d);
        stack.push(v / d);
    }
    factors.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for f in factors {
        match out.last_mut() {
            Some((p, e)) if *p == f => *e += 1,
            _ => out.push((f, 1)),
        }
    }
    out
}
