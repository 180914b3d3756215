//! Polynomials over GF(2) stored as little-endian bit vectors (`Vec<u64>`).
//!
//! This layer backs modulus validation, the default-modulus table and the
//! element-level inverse. It trims trailing zero limbs eagerly; callers must
//! not rely on limb counts.

/// Degree of `a`, or `None` for the zero polynomial.
pub fn deg(a: &[u64]) -> Option<usize> {
    for (i, w) in a.iter().enumerate().rev() {
        if *w != 0 {
            return Some(i * 64 + 63 - w.leading_zeros() as usize);
        }
    }
    None
}

pub fn bit(a: &[u64], i: usize) -> bool {
    a.get(i / 64).map_or(false, |w| (w >> (i % 64)) & 1 == 1)
}

pub fn set_bit(a: &mut Vec<u64>, i: usize) {
    let limb = i / 64;
    if a.len() <= limb {
        a.resize(limb + 1, 0);
    }
    a[limb] |= 1u64 << (i % 64);
}

pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn is_zero(a: &[u64]) -> bool {
    a.iter().all(|w| *w == 0)
}

pub fn is_one(a: &[u64]) -> bool {
    deg(a) == Some(0)
}

pub fn from_u128(v: u128) -> Vec<u64> {
    trim(vec![v as u64, (v >> 64) as u64])
}

/// Monomial x^k.
pub fn monomial(k: usize) -> Vec<u64> {
    let mut v = Vec::new();
    set_bit(&mut v, k);
    v
}

pub fn add(a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        out[i] = a.get(i).copied().unwrap_or(0) ^ b.get(i).copied().unwrap_or(0);
    }
    trim(out)
}

fn xor_shifted(dst: &mut Vec<u64>, src: &[u64], shift: usize) {
    let (limb, off) = (shift / 64, shift % 64);
    let needed = src.len() + limb + 1;
    if dst.len() < needed {
        dst.resize(needed, 0);
    }
    if off == 0 {
        for (i, w) in src.iter().enumerate() {
            dst[limb + i] ^= w;
        }
    } else {
        let mut carry = 0u64;
        for (i, w) in src.iter().enumerate() {
            dst[limb + i] ^= (w << off) | carry;
            carry = w >> (64 - off);
        }
        dst[limb + src.len()] ^= carry;
    }
}

/// Carryless 64x64 -> 128 multiply.
fn clmul64(a: u64, mut b: u64) -> u128 {
    let a = a as u128;
    let mut acc = 0u128;
    while b != 0 {
        let i = b.trailing_zeros();
        acc ^= a << i;
        b &= b - 1;
    }
    acc
}

pub fn mul(a: &[u64], b: &[u64]) -> Vec<u64> {
    if is_zero(a) || is_zero(b) {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            if bj == 0 {
                continue;
            }
            let p = clmul64(ai, bj);
            out[i + j] ^= p as u64;
            out[i + j + 1] ^= (p >> 64) as u64;
        }
    }
    trim(out)
}

/// Spread the bits of `w` so bit k lands at position 2k.
fn spread32(w: u64) -> u64 {
    debug_assert!(w <= u32::MAX as u64);
    let mut x = w;
    x = (x | (x << 16)) & 0x0000_FFFF_0000_FFFF;
    x = (x | (x << 8)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x << 4)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333;
    x = (x | (x << 1)) & 0x5555_5555_5555_5555;
    x
}

/// Squaring over GF(2) is bit interleaving: (sum x^i)^2 = sum x^(2i).
pub fn square(a: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len() * 2];
    for (i, &w) in a.iter().enumerate() {
        out[2 * i] = spread32(w & 0xFFFF_FFFF);
        out[2 * i + 1] = spread32(w >> 32);
    }
    trim(out)
}

/// Remainder of `a` modulo nonzero `f`.
pub fn rem(a: &[u64], f: &[u64]) -> Vec<u64> {
    let df = deg(f).expect("rem by zero polynomial");
    let mut r = trim(a.to_vec());
    while let Some(dr) = deg(&r) {
        if dr < df {
            break;
        }
        xor_shifted(&mut r, f, dr - df);
        r = trim(r);
    }
    r
}

pub fn divrem(a: &[u64], f: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let df = deg(f).expect("division by zero polynomial");
    let mut r = trim(a.to_vec());
    let mut q = Vec::new();
    while let Some(dr) = deg(&r) {
        if dr < df {
            break;
        }
        set_bit(&mut q, dr - df);
        xor_shifted(&mut r, f, dr - df);
        r = trim(r);
    }
    (trim(q), r)
}

pub fn mulmod(a: &[u64], b: &[u64], f: &[u64]) -> Vec<u64> {
    rem(&mul(a, b), f)
}

pub fn sqrmod(a: &[u64], f: &[u64]) -> Vec<u64> {
    rem(&square(a), f)
}

pub fn powmod(base: &[u64], mut e: u64, f: &[u64]) -> Vec<u64> {
    let mut result = rem(&[1], f);
    let mut acc = rem(base, f);
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(&result, &acc, f);
        }
        acc = sqrmod(&acc, f);
        e >>= 1;
    }
    result
}

pub fn gcd(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !is_zero(&b) {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// Extended Euclid: returns (g, u) with u*a = g (mod f). Used for inverses,
/// so the second Bezout coefficient is not tracked.
pub fn xgcd_mod(a: &[u64], f: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let mut r0 = trim(f.to_vec());
    let mut r1 = trim(a.to_vec());
    let mut u0: Vec<u64> = Vec::new();
    let mut u1: Vec<u64> = vec![1];
    while !is_zero(&r1) {
        let (q, r) = divrem(&r0, &r1);
        let nu = add(&u0, &mul(&q, &u1));
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = nu;
    }
    (r0, rem(&u0, f))
}

/// Irreducibility over GF(2) via the distinct-degree sweep:
/// f is reducible iff gcd(x^(2^d) - x, f) is nontrivial for some d <= deg/2.
pub fn is_irreducible(f: &[u64]) -> bool {
    let n = match deg(f) {
        None | Some(0) => return false,
        Some(n) => n,
    };
    if n == 1 {
        return true;
    }
    // x | f iff the constant term vanishes.
    if !bit(f, 0) {
        return false;
    }
    let x = monomial(1);
    let mut h = x.clone();
    for _ in 1..=n / 2 {
        h = sqrmod(&h, f);
        let g = gcd(&add(&h, &x), f);
        if deg(&g) != Some(0) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u128) -> Vec<u64> {
        from_u128(v)
    }

    #[test]
    fn degree_and_bits() {
        assert_eq!(deg(&p(0)), None);
        assert_eq!(deg(&p(1)), Some(0));
        assert_eq!(deg(&p(0b1011)), Some(3));
        assert_eq!(deg(&monomial(130)), Some(130));
    }

    #[test]
    fn mul_matches_hand_reduction() {
        // (x+1)(x^2+x+1) = x^3 + 1 over GF(2)
        assert_eq!(mul(&p(0b11), &p(0b111)), p(0b1001));
        // x^63 * x^2 crosses the limb boundary
        assert_eq!(mul(&monomial(63), &monomial(2)), monomial(65));
    }

    #[test]
    fn square_is_mul_self() {
        for v in [0b1u128, 0b1011, 0xDEAD_BEEF, (1 << 90) | 0b1101] {
            assert_eq!(square(&p(v)), mul(&p(v), &p(v)));
        }
    }

    #[test]
    fn divrem_roundtrip() {
        let a = p(0b1_0011_0101_1101);
        let f = p(0b1_0011);
        let (q, r) = divrem(&a, &f);
        assert_eq!(add(&mul(&q, &f), &r), a);
        assert!(deg(&r) < deg(&f));
    }

    #[test]
    fn xgcd_inverts_mod_irreducible() {
        // x^3+x+1 is irreducible; the inverse of x is x^2+1 by hand:
        // x*(x^2+1) = x^3+x = (x+1)+x = 1
        let f = p(0b1011);
        let (g, u) = xgcd_mod(&p(0b10), &f);
        assert!(is_one(&g));
        assert_eq!(u, p(0b101));
    }

    #[test]
    fn irreducibility_small_cases() {
        assert!(is_irreducible(&p(0b111))); // x^2+x+1
        assert!(is_irreducible(&p(0b1011))); // x^3+x+1
        assert!(is_irreducible(&p(0b10_0001_0001))); // x^9+x^4+1
        assert!(!is_irreducible(&p(0b101))); // (x+1)^2
        assert!(!is_irreducible(&p(0b110))); // x(x+1)
        // x^10+x^2+1 = (x^5+x+1)^2 is reducible
        assert_eq!(square(&p(0b100011)), p(0b10000000101));
        assert!(!is_irreducible(&p(0b10000000101)));
        // x^10+x^3+1 is irreducible
        assert!(is_irreducible(&p(0b10000001001)));
    }

    #[test]
    fn irreducibility_agrees_with_trial_division_deg_le_8() {
        for bits in 0u128..512 {
            let f = p(bits);
            let Some(n) = deg(&f) else { continue };
            if n < 2 {
                continue;
            }
            let mut divisible = false;
            'outer: for d in 1..=n / 2 {
                for cand in (1u128 << d)..(1u128 << (d + 1)) {
                    if is_zero(&rem(&f, &p(cand))) {
                        divisible = true;
                        break 'outer;
                    }
                }
            }
            assert_eq!(is_irreducible(&f), !divisible, "mismatch at {bits:#b}");
        }
    }
}
