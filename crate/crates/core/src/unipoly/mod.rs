//! Dense univariate polynomials over a [`FieldCtx`], with division, gcd,
//! modular exponentiation, irreducibility testing and full factorization.

mod factor;
mod parse;

pub use factor::{factor, factor_with_rng, is_irreducible, roots, FactorRng, Factorization, DEFAULT_SEED};

use crate::error::{Error, Result};
use crate::gf2m::{FieldCtx, FieldElem};
use num_bigint::BigUint;
use std::fmt;

/// Polynomial in one variable; `coeffs[i]` is the coefficient of x^i and the
/// vector never has trailing zeros (the zero polynomial has no coefficients).
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    ctx: FieldCtx,
    coeffs: Vec<FieldElem>,
}

impl UniPoly {
    pub fn zero(ctx: &FieldCtx) -> UniPoly {
        UniPoly {
            ctx: ctx.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(ctx: &FieldCtx) -> UniPoly {
        UniPoly::constant(ctx.one())
    }

    pub fn x(ctx: &FieldCtx) -> UniPoly {
        UniPoly::monomial(ctx.one(), 1)
    }

    pub fn constant(c: FieldElem) -> UniPoly {
        let ctx = c.ctx().clone();
        UniPoly::from_coeffs(&ctx, vec![c])
    }

    pub fn monomial(c: FieldElem, degree: usize) -> UniPoly {
        let ctx = c.ctx().clone();
        let mut coeffs = vec![ctx.zero(); degree + 1];
        coeffs[degree] = c;
        UniPoly::from_coeffs(&ctx, coeffs)
    }

    pub fn from_coeffs(ctx: &FieldCtx, mut coeffs: Vec<FieldElem>) -> UniPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree of a nonzero polynomial; panics on zero.
    pub fn deg(&self) -> usize {
        self.degree().expect("degree of the zero polynomial")
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.ctx.zero())
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&FieldElem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add_elem(&rhs.coeff(i)));
        }
        UniPoly::from_coeffs(&self.ctx, out)
    }

    pub fn mul(&self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(&self.ctx);
        }
        let mut out = vec![self.ctx.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add_elem(&a.mul_elem(b));
            }
        }
        UniPoly::from_coeffs(&self.ctx, out)
    }

    /// Characteristic-2 squaring: coefficients square, exponents double.
    pub fn square(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut out = vec![self.ctx.zero(); 2 * self.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if !a.is_zero() {
                out[2 * i] = a.square();
            }
        }
        UniPoly::from_coeffs(&self.ctx, out)
    }

    pub fn scale(&self, c: &FieldElem) -> UniPoly {
        UniPoly::from_coeffs(
            &self.ctx,
            self.coeffs.iter().map(|a| a.mul_elem(c)).collect(),
        )
    }

    /// Multiply by x^k.
    pub fn shift(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut out = vec![self.ctx.zero(); k];
        out.extend(self.coeffs.iter().cloned());
        UniPoly::from_coeffs(&self.ctx, out)
    }

    pub fn divrem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = divisor
            .leading_coeff()
            .expect("nonzero divisor")
            .inverse()
            .expect("field leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((UniPoly::zero(&self.ctx), self.clone()));
        }
        let mut quot = vec![self.ctx.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = rem[i].mul_elem(&lc_inv);
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    rem[i - dd + j] = rem[i - dd + j].add_elem(&q.mul_elem(dc));
                }
            }
            debug_assert!(rem[i].is_zero());
            quot[i - dd] = q;
        }
        Ok((
            UniPoly::from_coeffs(&self.ctx, quot),
            UniPoly::from_coeffs(&self.ctx, rem),
        ))
    }

    pub fn rem(&self, modulus: &UniPoly) -> Result<UniPoly> {
        Ok(self.divrem(modulus)?.1)
    }

    /// Division that must be exact.
    pub fn div_exact(&self, divisor: &UniPoly) -> Result<UniPoly> {
        let (q, r) = self.divrem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::DoesNotDivide)
        }
    }

    /// (monic polynomial, leading unit) — zero stays zero with unit 1.
    pub fn monic(&self) -> (UniPoly, FieldElem) {
        match self.leading_coeff() {
            None => (self.clone(), self.ctx.one()),
            Some(lc) if lc.is_one() => (self.clone(), lc.clone()),
            Some(lc) => {
                let inv = lc.inverse().expect("nonzero");
                (self.scale(&inv), lc.clone())
            }
        }
    }

    pub fn eval(&self, x: &FieldElem) -> FieldElem {
        let mut acc = x.ctx().zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_elem(x).add_elem(c);
        }
        acc
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, rhs: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("b nonzero");
            a = b;
            b = r;
        }
        a.monic().0
    }

    /// Formal derivative; in characteristic 2 only odd-degree terms survive.
    pub fn derivative(&self) -> UniPoly {
        let mut out = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            if i % 2 == 1 {
                out.push(c.clone());
            } else {
                out.push(self.ctx.zero());
            }
        }
        // term i contributes to position i-1
        UniPoly::from_coeffs(&self.ctx, out)
    }

    pub fn mulmod(&self, rhs: &UniPoly, modulus: &UniPoly) -> Result<UniPoly> {
        self.mul(rhs).rem(modulus)
    }

    pub fn sqrmod(&self, modulus: &UniPoly) -> Result<UniPoly> {
        self.square().rem(modulus)
    }

    /// self^e mod modulus; the exponent may be astronomically large
    /// (e.g. 2^(m * deg) in Frobenius fixed-point checks).
    pub fn powmod(&self, e: &BigUint, modulus: &UniPoly) -> Result<UniPoly> {
        let mut result = UniPoly::one(&self.ctx).rem(modulus)?;
        let mut acc = self.rem(modulus)?;
        for i in 0..e.bits() {
            if e.bit(i) {
                result = result.mulmod(&acc, modulus)?;
            }
            if i + 1 < e.bits() {
                acc = acc.sqrmod(modulus)?;
            }
        }
        Ok(result)
    }

    pub fn powmod_u64(&self, e: u64, modulus: &UniPoly) -> Result<UniPoly> {
        self.powmod(&BigUint::from(e), modulus)
    }

    /// self^q mod modulus where q = 2^m is the field size: m squarings.
    pub fn pow_field_size_mod(&self, modulus: &UniPoly) -> Result<UniPoly> {
        let mut acc = self.rem(modulus)?;
        for _ in 0..self.ctx.degree() {
            acc = acc.sqrmod(modulus)?;
        }
        Ok(acc)
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
