//! Subfield embeddings GF(2^d) -> GF(2^m) for d | m.  The map is pinned by
//! sending the source generator to the least root (bitstring integer order)
//! of the source modulus inside the target field, so every run and every
//! caller agrees on the same homomorphism.

use super::{FieldCtx, FieldElem};
use crate::error::{Error, Result};
use crate::unipoly::{self, UniPoly};

pub struct Embedding {
    source: FieldCtx,
    target: FieldCtx,
    /// root^0 .. root^(d-1) where root is the chosen image of the source
    /// generator; applying the map is an XOR of these per set source bit.
    root_powers: Vec<FieldElem>,
}

impl Embedding {
    pub fn new(source: &FieldCtx, target: &FieldCtx) -> Result<Embedding> {
        let d = source.degree();
        let m = target.degree();
        if m % d != 0 {
            return Err(Error::NotASubfieldDegree(d, m));
        }
        let root = if source.same_field(target) {
            // The residue class of x is itself a root of the modulus, and no
            // conjugate has a smaller bitstring (0 and 1 are never roots).
            target.generator()
        } else {
            let f = modulus_over(source, target);
            let roots = unipoly::roots(&f)?;
            roots.into_iter().next().ok_or_else(|| {
                Error::Internal("irreducible modulus has no root in a compatible extension".into())
            })?
        };
        let mut root_powers = Vec::with_capacity(d as usize);
        let mut p = target.one();
        for _ in 0..d {
            root_powers.push(p.clone());
            p = p.mul_elem(&root);
        }
        Ok(Embedding {
            source: source.clone(),
            target: target.clone(),
            root_powers,
        })
    }

    pub fn source(&self) -> &FieldCtx {
        &self.source
    }

    pub fn target(&self) -> &FieldCtx {
        &self.target
    }

    /// Image of the source generator.
    pub fn generator_image(&self) -> FieldElem {
        if self.root_powers.len() > 1 {
            self.root_powers[1].clone()
        } else {
            // GF(2): the generator is 1.
            self.root_powers[0].clone()
        }
    }

    pub fn apply(&self, a: &FieldElem) -> FieldElem {
        assert!(
            a.ctx().same_field(&self.source),
            "element is not from the embedding's source field"
        );
        let mut acc = self.target.zero();
        for j in 0..self.source.degree() as usize {
            if a.as_bits()[j / 64] >> (j % 64) & 1 == 1 {
                acc = acc.add_elem(&self.root_powers[j]);
            }
        }
        acc
    }
}

/// The source modulus read as a polynomial with 0/1 coefficients over the
/// target field.
fn modulus_over(source: &FieldCtx, target: &FieldCtx) -> UniPoly {
    let bits = source.modulus_bits();
    let coeffs = (0..=source.degree() as usize)
        .map(|j| {
            if bits[j / 64] >> (j % 64) & 1 == 1 {
                target.one()
            } else {
                target.zero()
            }
        })
        .collect();
    UniPoly::from_coeffs(target, coeffs)
}

impl FieldElem {
    /// One-shot embedding; build an `Embedding` once if mapping many elements.
    pub fn embed_into(&self, target: &FieldCtx) -> Result<FieldElem> {
        Ok(Embedding::new(self.ctx(), target)?.apply(self))
    }
}
