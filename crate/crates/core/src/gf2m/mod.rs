//! Arithmetic in GF(2^m) for 1 <= m <= 1024.
//!
//! Elements are residue-class bitstrings modulo a verified-irreducible modulus
//! held by a [`FieldCtx`]. Contexts are immutable and cheap to clone; all
//! element operations are pure. Mixing elements from different contexts is a
//! programming error and panics.

pub(crate) mod bitpoly;
mod embed;
pub(crate) mod engine;
pub(crate) mod intfactor;
mod modulus;

pub use embed::Embedding;
pub use modulus::DEGREE_CAP;

use crate::error::{Error, Result};
use smallvec::SmallVec;
use std::fmt;
use std::sync::Arc;

type Limbs = SmallVec<[u64; 2]>;

struct CtxInner {
    m: u32,
    limbs: usize,
    top_mask: u64,
    /// Full modulus including the degree-m bit.
    modulus: Vec<u64>,
    /// x's order was verified to be 2^m - 1.
    primitive: bool,
    /// Prime factorization of 2^m - 1, present for m <= 64.
    order_factors: Option<Vec<(u64, u32)>>,
    /// Single-limb fast path, present for m <= 64.
    small: Option<engine::SmallOps>,
}

/// An immutable GF(2^m) context. Clones share the same underlying field data;
/// two independently built contexts with equal (m, modulus) describe the same
/// field and interoperate.
#[derive(Clone)]
pub struct FieldCtx {
    inner: Arc<CtxInner>,
}

impl FieldCtx {
    /// Build GF(2^m) with the default modulus table (least primitive
    /// polynomial in integer order; degree 10 pinned to x^10+x^3+1).
    pub fn new(m: u32) -> Result<FieldCtx> {
        let (bits, primitive) = modulus::default_modulus(m)?;
        Self::build(m, bits, primitive)
    }

    /// Build GF(2^m) with an explicit modulus, given as little-endian u64
    /// limbs of the coefficient bitstring (degree-m bit included).
    pub fn with_modulus(m: u32, modulus_bits: &[u64]) -> Result<FieldCtx> {
        modulus::validate(m, modulus_bits)?;
        let bits = bitpoly::trim(modulus_bits.to_vec());
        let primitive = if m == 1 {
            true
        } else if m <= 64 {
            let fs = modulus::group_order_factors(m).expect("m <= 64");
            modulus::x_is_primitive(m, &bits, &fs)
        } else {
            false
        };
        Self::build(m, bits, primitive)
    }

    /// Convenience for moduli that fit in 128 bits (m <= 127).
    pub fn with_modulus_u128(m: u32, modulus: u128) -> Result<FieldCtx> {
        Self::with_modulus(m, &bitpoly::from_u128(modulus))
    }

    fn build(m: u32, modulus_bits: Vec<u64>, primitive: bool) -> Result<FieldCtx> {
        let limbs = (m as usize + 63) / 64;
        let top_mask = if m % 64 == 0 {
            u64::MAX
        } else {
            (1u64 << (m % 64)) - 1
        };
        let order_factors = if m <= 64 {
            modulus::group_order_factors(m)
        } else {
            None
        };
        let small = if m <= 64 {
            let mut wide = modulus_bits[0] as u128;
            if modulus_bits.len() > 1 {
                wide |= (modulus_bits[1] as u128) << 64;
            }
            Some(engine::SmallOps::new(m, wide))
        } else {
            None
        };
        Ok(FieldCtx {
            inner: Arc::new(CtxInner {
                m,
                limbs,
                top_mask,
                modulus: modulus_bits,
                primitive,
                order_factors,
                small,
            }),
        })
    }

    pub fn degree(&self) -> u32 {
        self.inner.m
    }

    pub fn limbs(&self) -> usize {
        self.inner.limbs
    }

    /// Full modulus bitstring (degree-m bit included), little-endian limbs.
    pub fn modulus_bits(&self) -> &[u64] {
        &self.inner.modulus
    }

    pub fn modulus_hex(&self) -> String {
        hex_of_bits(&self.inner.modulus)
    }

    /// Whether the designated generator was verified to have full order.
    pub fn is_primitive(&self) -> bool {
        self.inner.primitive
    }

    pub(crate) fn order_factors(&self) -> Option<&[(u64, u32)]> {
        self.inner.order_factors.as_deref()
    }

    /// Same mathematical field: equal degree and modulus.
    pub fn same_field(&self, other: &FieldCtx) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.m == other.inner.m && self.inner.modulus == other.inner.modulus)
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem {
            ctx: self.clone(),
            bits: SmallVec::from_elem(0, self.inner.limbs),
        }
    }

    pub fn one(&self) -> FieldElem {
        let mut e = self.zero();
        e.bits[0] = 1;
        e
    }

    /// The designated generator: the residue class of x (the element 1 for
    /// GF(2), whose multiplicative group is trivial).
    pub fn generator(&self) -> FieldElem {
        if self.inner.m == 1 {
            return self.one();
        }
        let mut e = self.zero();
        e.bits[0] = 2;
        e
    }

    /// Element from a residue bitstring; errors if a bit at index >= m is set.
    pub fn elem_from_bits(&self, bits: &[u64]) -> Result<FieldElem> {
        if let Some(d) = bitpoly::deg(bits) {
            if d as u32 >= self.inner.m {
                return Err(Error::Parse {
                    what: "field element",
                    text: format!("bitstring of degree {d} in GF(2^{})", self.inner.m),
                });
            }
        }
        let mut e = self.zero();
        for (i, w) in bits.iter().enumerate().take(self.inner.limbs) {
            e.bits[i] = *w;
        }
        Ok(e)
    }

    pub fn elem_from_u128(&self, v: u128) -> Result<FieldElem> {
        self.elem_from_bits(&bitpoly::from_u128(v))
    }

    /// Iterate all field elements in integer order. Only for m <= 24 —
    /// enumeration beyond desk scale is refused.
    pub fn elements(&self) -> Result<impl Iterator<Item = FieldElem> + '_> {
        if self.inner.m > 24 {
            return Err(Error::FieldTooLarge(self.inner.m, 24));
        }
        let n = 1u64 << self.inner.m;
        Ok((0..n).map(move |v| self.elem_from_u128(v as u128).expect("in range")))
    }

    /// Parse an element literal: hex (`0x1f`), generator power (`a^374`,
    /// requires a primitivity-verified modulus), or a decimal bitstring.
    pub fn parse_elem(&self, text: &str) -> Result<FieldElem> {
        let t = text.trim();
        let parse_err = || Error::Parse {
            what: "field element",
            text: t.to_string(),
        };
        if let Some(rest) = t.strip_prefix("a^").or_else(|| t.strip_prefix("g^")) {
            if !self.inner.primitive {
                return Err(Error::NotPrimitive);
            }
            let k: u64 = rest.parse().map_err(|_| parse_err())?;
            return Ok(self.generator().pow(k));
        }
        if t == "a" || t == "g" {
            if !self.inner.primitive {
                return Err(Error::NotPrimitive);
            }
            return Ok(self.generator());
        }
        if let Some(hex) = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
            let bits = bits_from_hex(hex).ok_or_else(parse_err)?;
            return self.elem_from_bits(&bits);
        }
        let v: u128 = t.parse().map_err(|_| parse_err())?;
        self.elem_from_u128(v)
    }

    /// Raw-u64 engine for hot loops; requires m <= 64.
    pub(crate) fn small_ops(&self) -> engine::SmallOps {
        assert!(self.inner.m <= 64, "small engine requires m <= 64");
        let mut modulus = self.inner.modulus[0] as u128;
        if self.inner.modulus.len() > 1 {
            modulus |= (self.inner.modulus[1] as u128) << 64;
        }
        engine::SmallOps::new(self.inner.m, modulus)
    }

    pub(crate) fn check_same(&self, other: &FieldCtx) {
        assert!(
            self.same_field(other),
            "field mismatch: GF(2^{}) vs GF(2^{})",
            self.inner.m,
            other.inner.m
        );
    }
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FieldCtx(GF(2^{}), modulus {})",
            self.inner.m,
            self.modulus_hex()
        )
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other)
    }
}
impl Eq for FieldCtx {}

/// An element of GF(2^m), tied to its owning [`FieldCtx`].
#[derive(Clone)]
pub struct FieldElem {
    ctx: FieldCtx,
    bits: Limbs,
}

impl FieldElem {
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|w| *w == 0)
    }

    pub fn is_one(&self) -> bool {
        self.bits[0] == 1 && self.bits[1..].iter().all(|w| *w == 0)
    }

    /// Residue bitstring, little-endian limbs, fixed width ceil(m/64).
    pub fn as_bits(&self) -> &[u64] {
        &self.bits
    }

    /// Low 64 bits; exact for m <= 64.
    pub fn to_u64(&self) -> u64 {
        self.bits[0]
    }

    pub fn to_hex(&self) -> String {
        hex_of_bits(&self.bits)
    }

    pub fn add_elem(&self, rhs: &FieldElem) -> FieldElem {
        self.ctx.check_same(&rhs.ctx);
        let mut out = self.clone();
        for (o, r) in out.bits.iter_mut().zip(rhs.bits.iter()) {
            *o ^= r;
        }
        out
    }

    pub fn mul_elem(&self, rhs: &FieldElem) -> FieldElem {
        self.ctx.check_same(&rhs.ctx);
        if let Some(ops) = &self.ctx.inner.small {
            let mut out = self.ctx.zero();
            out.bits[0] = ops.mul(self.bits[0], rhs.bits[0]);
            return out;
        }
        let prod = bitpoly::mul(&self.bits, &rhs.bits);
        self.ctx.reduce_into_elem(prod)
    }

    pub fn square(&self) -> FieldElem {
        if let Some(ops) = &self.ctx.inner.small {
            let mut out = self.ctx.zero();
            out.bits[0] = ops.sqr(self.bits[0]);
            return out;
        }
        let sq = bitpoly::square(&self.bits);
        self.ctx.reduce_into_elem(sq)
    }

    pub fn pow(&self, mut e: u64) -> FieldElem {
        let mut result = self.ctx.one();
        let mut acc = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_elem(&acc);
            }
            acc = acc.square();
            e >>= 1;
        }
        result
    }

    /// a^(2^e): e-fold Frobenius.
    pub fn frobenius(&self, e: u32) -> FieldElem {
        let steps = e % self.ctx.inner.m;
        let mut out = self.clone();
        for _ in 0..steps {
            out = out.square();
        }
        out
    }

    pub fn inverse(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::NotInvertible);
        }
        let (g, u) = bitpoly::xgcd_mod(&self.bits, &self.ctx.inner.modulus);
        debug_assert!(bitpoly::is_one(&g), "modulus is irreducible");
        Ok(self
            .ctx
            .elem_from_bits(&u)
            .expect("inverse is reduced"))
    }

    /// Exact multiplicative order; requires a nonzero element and m <= 64.
    pub fn order(&self) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::NotInvertible);
        }
        let m = self.ctx.inner.m;
        let factors = self
            .ctx
            .order_factors()
            .ok_or(Error::OrderUnavailable(m))?;
        let group = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
        let mut o = group;
        for (p, e) in factors {
            for _ in 0..*e {
                if o % p == 0 && self.pow(o / p).is_one() {
                    o /= p;
                } else {
                    break;
                }
            }
        }
        Ok(o)
    }

    /// True iff the element lies in the subfield GF(2^d); d must divide m.
    pub fn is_in_subfield(&self, d: u32) -> Result<bool> {
        let m = self.ctx.inner.m;
        if d == 0 || m % d != 0 {
            return Err(Error::NotASubfieldDegree(d, m));
        }
        Ok(self.frobenius(d) == *self)
    }
}

impl FieldCtx {
    fn reduce_into_elem(&self, mut wide: Vec<u64>) -> FieldElem {
        let m = self.inner.m as usize;
        loop {
            match bitpoly::deg(&wide) {
                Some(d) if d >= m => {
                    // xor modulus << (d - m)
                    let shift = d - m;
                    let (limb, off) = (shift / 64, shift % 64);
                    if wide.len() < self.inner.modulus.len() + limb + 1 {
                        wide.resize(self.inner.modulus.len() + limb + 1, 0);
                    }
                    if off == 0 {
                        for (i, w) in self.inner.modulus.iter().enumerate() {
                            wide[limb + i] ^= w;
                        }
                    } else {
                        let mut carry = 0u64;
                        for (i, w) in self.inner.modulus.iter().enumerate() {
                            wide[limb + i] ^= (w << off) | carry;
                            carry = w >> (64 - off);
                        }
                        wide[limb + self.inner.modulus.len()] ^= carry;
                    }
                }
                _ => break,
            }
        }
        let mut e = self.zero();
        for (i, w) in wide.iter().enumerate().take(self.inner.limbs) {
            e.bits[i] = *w;
        }
        debug_assert_eq!(e.bits[self.inner.limbs - 1] & !self.inner.top_mask, 0);
        e
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same_field(&other.ctx) && self.bits == other.bits
    }
}
impl Eq for FieldElem {}

impl std::hash::Hash for FieldElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ctx.inner.m.hash(state);
        self.bits.hash(state);
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_hex())
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in GF(2^{})", self.to_hex(), self.ctx.inner.m)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inherent:ident) => {
        impl std::ops::$trait<&FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                self.$inherent(rhs)
            }
        }
        impl std::ops::$trait<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                self.$inherent(&rhs)
            }
        }
    };
}
forward_binop!(Add, add, add_elem);
forward_binop!(Mul, mul, mul_elem);

fn hex_of_bits(bits: &[u64]) -> String {
    match bitpoly::deg(bits) {
        None => "0x0".to_string(),
        Some(d) => {
            let top = d / 64;
            let mut s = format!("{:x}", bits[top]);
            for w in bits[..top].iter().rev() {
                s.push_str(&format!("{w:016x}"));
            }
            format!("0x{s}")
        }
    }
}

fn bits_from_hex(hex: &str) -> Option<Vec<u64>> {
    if hex.is_empty() {
        return None;
    }
    let mut out: Vec<u64> = Vec::new();
    let chars: Vec<char> = hex.chars().collect();
    for (i, c) in chars.iter().rev().enumerate() {
        let v = c.to_digit(16)? as u64;
        let (limb, off) = (i / 16, (i % 16) * 4);
        if out.len() <= limb {
            out.push(0);
        }
        out[limb] |= v << off;
    }
    Some(bitpoly::trim(out))
}

/// Parse a modulus written in hex (`0x409`) into limbs.
pub fn parse_modulus_hex(text: &str) -> Result<Vec<u64>> {
    let t = text.trim();
    let hex = t
        .strip_prefix("0x")
        .or_else(|| t.strip_prefix("0X"))
        .unwrap_or(t);
    bits_from_hex(hex).ok_or_else(|| Error::Parse {
        what: "modulus",
        text: text.to_string(),
    })
}
