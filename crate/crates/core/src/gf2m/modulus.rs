//! Modulus validation and the default modulus table.
//!
//! The default modulus for degree m is the least irreducible polynomial of
//! degree m in bitstring-integer order that is also primitive, so the residue
//! class of x generates the multiplicative group. Two special cases:
//! degree 10 is pinned to x^10+x^3+1, and primitivity is only verified for
//! m <= 64 (beyond that the least irreducible is used and the context is
//! flagged as not primitivity-verified).

use super::{bitpoly, intfactor};
use crate::error::{Error, Result};

pub const DEGREE_CAP: u32 = 1024;

/// Pinned modulus for GF(2^10): x^10 + x^3 + 1.
pub const GF2_10_MODULUS: u64 = 0x409;

pub fn validate(m: u32, modulus: &[u64]) -> Result<()> {
    if m == 0 || m > DEGREE_CAP {
        return Err(Error::DegreeOutOfRange(m));
    }
    match bitpoly::deg(modulus) {
        Some(d) if d as u32 == m => {}
        Some(d) => {
            return Err(Error::ModulusDegreeMismatch {
                expected: m,
                found: d as u32,
            })
        }
        None => {
            return Err(Error::ModulusDegreeMismatch {
                expected: m,
                found: 0,
            })
        }
    }
    if !bitpoly::is_irreducible(modulus) {
        return Err(Error::ReducibleModulus);
    }
    Ok(())
}

/// Multiplicative-group order factors, available for m <= 64.
pub fn group_order_factors(m: u32) -> Option<Vec<(u64, u32)>> {
    if m > 64 {
        return None;
    }
    let order = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    Some(intfactor::factorize(order))
}

/// True iff the residue class of x has full multiplicative order modulo `f`.
/// Requires m <= 64; m = 1 is trivially primitive.
pub fn x_is_primitive(m: u32, f: &[u64], order_factors: &[(u64, u32)]) -> bool {
    if m == 1 {
        return true;
    }
    let order = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let x = bitpoly::monomial(1);
    for (p, _) in order_factors {
        if bitpoly::is_one(&bitpoly::powmod(&x, order / p, f)) {
            return false;
        }
    }
    true
}

/// Default modulus for degree m plus whether primitivity was verified.
pub fn default_modulus(m: u32) -> Result<(Vec<u64>, bool)> {
    if m == 0 || m > DEGREE_CAP {
        return Err(Error::DegreeOutOfRange(m));
    }
    if m == 1 {
        // GF(2) collapses to plain bit arithmetic; x is the conventional
        // degree-1 modulus.
        return Ok((bitpoly::monomial(1), true));
    }
    if m == 10 {
        return Ok((bitpoly::from_u128(GF2_10_MODULUS as u128), true));
    }
    let factors = group_order_factors(m);
    // Candidates are x^m + g with g odd, scanned in increasing integer order.
    // The least hit is always found with g far below 2^32.
    let mut g: u64 = 1;
    loop {
        let mut cand = bitpoly::monomial(m as usize);
        cand[0] |= g;
        if bitpoly::is_irreducible(&cand) {
            match &factors {
                Some(fs) => {
                    if x_is_primitive(m, &cand, fs) {
                        return Ok((cand, true));
                    }
                }
                None => return Ok((cand, false)),
            }
        }
        g = g.checked_add(2).expect("default modulus scan overflow");
        if g >= 1 << 32 {
            return Err(Error::Internal(format!(
                "no default modulus found for m={m} within scan bound"
            )));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pinned_degree_10_modulus() {
        let (bits, primitive) = default_modulus(10).unwrap();
        assert_eq!(bits, vec![0x409]);
        assert!(primitive);
        // and it really is primitive
        let fs = group_order_factors(10).unwrap();
        assert!(x_is_primitive(10, &bits, &fs));
    }

    #[test]
    fn small_defaults_match_known_primitive_polynomials() {
        // Least primitive polynomials in integer order, checked by hand
        // against the scan's own criteria for tiny degrees.
        assert_eq!(default_modulus(1).unwrap().0, vec![0b10]);
        assert_eq!(default_modulus(2).unwrap().0, vec![0b111]); // x^2+x+1
        assert_eq!(default_modulus(3).unwrap().0, vec![0b1011]); // x^3+x+1
        assert_eq!(default_modulus(4).unwrap().0, vec![0b10011]); // x^4+x+1
        // x^5+x^2+1
        assert_eq!(default_modulus(5).unwrap().0, vec![0b100101]);
    }

    #[test]
    fn defaults_are_irreducible_across_range() {
        for m in [6u32, 7, 8, 9, 11, 12, 16, 20, 24, 32, 48, 63, 64, 65, 80] {
            let (bits, primitive) = default_modulus(m).unwrap();
            assert_eq!(bitpoly::deg(&bits), Some(m as usize));
            assert!(bitpoly::is_irreducible(&bits), "m={m}");
            assert_eq!(primitive, m <= 64, "m={m}");
        }
    }

    #[test]
    fn rejects_reducible_modulus() {
        // x^10+x^2+1 = (x^5+x+1)^2
        let err = validate(10, &[0b10000000101]).unwrap_err();
        assert!(matches!(err, Error::ReducibleModulus));
    }

    #[test]
    fn rejects_degree_mismatch() {
        let err = validate(10, &[0b1011]).unwrap_err();
        assert!(matches!(err, Error::ModulusDegreeMismatch { .. }));
    }
}
