//! Raw-u64 arithmetic engine for fields with m <= 64, used by the exhaustive
//! search loops where boxed elements would dominate the cost. Elements are the
//! low m bits of a u64; the caller guarantees operands are reduced.

#[derive(Clone)]
pub struct SmallOps {
    pub m: u32,
    modulus: u128,
}

impl SmallOps {
    /// `modulus` is the full modulus with the degree-m bit set.
    pub fn new(m: u32, modulus: u128) -> Self {
        assert!(m >= 1 && m <= 64);
        debug_assert_eq!(127 - modulus.leading_zeros(), m);
        SmallOps { m, modulus }
    }

    #[inline]
    fn reduce(&self, mut p: u128) -> u64 {
        let m = self.m;
        while p >> m != 0 {
            let d = 127 - p.leading_zeros();
            p ^= self.modulus << (d - m);
        }
        p as u64
    }

    #[inline]
    pub fn mul(&self, a: u64, mut b: u64) -> u64 {
        let a = a as u128;
        let mut acc = 0u128;
        while b != 0 {
            let i = b.trailing_zeros();
            acc ^= a << i;
            b &= b - 1;
        }
        self.reduce(acc)
    }

    #[inline]
    pub fn sqr(&self, a: u64) -> u64 {
        self.mul(a, a)
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.sqr(a);
            e >>= 1;
        }
        r
    }

    /// a^(2^e)
    pub fn frobenius(&self, mut a: u64, e: u32) -> u64 {
        for _ in 0..e % self.m {
            a = self.sqr(a);
        }
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf8_hand_values() {
        // GF(2^3), x^3+x+1: a * a^2 = a^3 = a+1
        let ops = SmallOps::new(3, 0b1011);
        assert_eq!(ops.mul(0b010, 0b100), 0b011);
        assert_eq!(ops.pow(0b010, 7), 1);
        assert_eq!(ops.frobenius(0b010, 3), 0b010);
    }

    #[test]
    fn m64_reduction_stays_in_range() {
        // x^64 + x^4 + x^3 + x + 1 is a standard degree-64 irreducible.
        let ops = SmallOps::new(64, (1u128 << 64) | 0b11011);
        let a = 0xDEAD_BEEF_1234_5678u64;
        let b = 0x0F0F_0F0F_F0F0_F0F0u64;
        let _ = ops.mul(a, b); // must not panic/overflow
        assert_eq!(ops.frobenius(ops.pow(a, 3), 0), ops.pow(a, 3));
    }
}
