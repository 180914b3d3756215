//! Univariate factorization over GF(2^m): squarefree decomposition,
//! distinct-degree splitting, and equal-degree splitting by the
//! characteristic-2 trace map T(h) = h + h^2 + h^4 + ...  Splitting is
//! randomized but seeded, so results are reproducible; the seed can be
//! overridden by the caller.

use super::UniPoly;
use crate::error::{Error, Result};
use crate::gf2m::{intfactor, FieldCtx, FieldElem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;

/// Fixed default seed for reproducible factorizations.
pub const DEFAULT_SEED: u64 = 0x5eed_0001;

/// Seeded randomness source for equal-degree splitting.
pub struct FactorRng(ChaCha8Rng);

impl FactorRng {
    pub fn from_seed(seed: u64) -> Self {
        FactorRng(ChaCha8Rng::seed_from_u64(seed))
    }

    fn rand_elem(&mut self, ctx: &FieldCtx) -> FieldElem {
        let m = ctx.degree();
        let mut bits = vec![0u64; ctx.limbs()];
        for w in bits.iter_mut() {
            *w = self.0.gen();
        }
        let last = bits.len() - 1;
        if m % 64 != 0 {
            bits[last] &= (1u64 << (m % 64)) - 1;
        }
        ctx.elem_from_bits(&bits).expect("masked bits")
    }

    fn rand_poly_below(&mut self, ctx: &FieldCtx, degree: usize) -> UniPoly {
        let coeffs = (0..degree).map(|_| self.rand_elem(ctx)).collect();
        UniPoly::from_coeffs(ctx, coeffs)
    }
}

impl Default for FactorRng {
    fn default() -> Self {
        Self::from_seed(DEFAULT_SEED)
    }
}

/// Result of a full factorization: `unit * prod factors^mult` = input.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub unit: FieldElem,
    /// Monic irreducible factors with multiplicities, canonically ordered
    /// (ascending degree, then ascending coefficient bitstrings).
    pub factors: Vec<(UniPoly, u32)>,
}

impl Factorization {
    pub fn product(&self) -> UniPoly {
        let mut acc = UniPoly::constant(self.unit.clone());
        for (f, mult) in &self.factors {
            for _ in 0..*mult {
                acc = acc.mul(f);
            }
        }
        acc
    }

    pub fn degrees(&self) -> Vec<(usize, u32)> {
        self.factors.iter().map(|(f, m)| (f.deg(), *m)).collect()
    }
}

/// Canonical ordering: by degree, then by coefficient bitstrings from the
/// highest coefficient down.
pub(crate) fn cmp_polys(a: &UniPoly, b: &UniPoly) -> Ordering {
    match a.coeffs().len().cmp(&b.coeffs().len()) {
        Ordering::Equal => {}
        o => return o,
    }
    for (ca, cb) in a.coeffs().iter().zip(b.coeffs().iter()).rev() {
        let o = ca.as_bits().iter().rev().cmp(cb.as_bits().iter().rev());
        if o != Ordering::Equal {
            return o;
        }
    }
    Ordering::Equal
}

/// Rabin's irreducibility test over GF(q), q = 2^m: f of degree n is
/// irreducible iff x^(q^n) = x (mod f) and gcd(x^(q^(n/p)) - x, f) = 1 for
/// every prime p dividing n.
pub fn is_irreducible(f: &UniPoly) -> Result<bool> {
    let n = match f.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        Some(n) => n,
    };
    if n == 1 {
        return Ok(true);
    }
    let x = UniPoly::x(f.ctx());
    for (p, _) in intfactor::factorize(n as u64) {
        let steps = n / p as usize;
        let mut h = x.rem(f)?;
        for _ in 0..steps {
            h = h.pow_field_size_mod(f)?;
        }
        if f.gcd(&h.add(&x)).degree() != Some(0) {
            return Ok(false);
        }
    }
    let mut h = x.rem(f)?;
    for _ in 0..n {
        h = h.pow_field_size_mod(f)?;
    }
    Ok(h == x.rem(f)?)
}

/// Replace f(x) = g(x^2) by g, taking square roots of coefficients
/// (a^(2^(m-1)) is the square root in GF(2^m)).
fn even_power_root(f: &UniPoly) -> UniPoly {
    let m = f.ctx().degree();
    let mut out = Vec::with_capacity(f.coeffs().len() / 2 + 1);
    for (i, c) in f.coeffs().iter().enumerate() {
        if i % 2 == 0 {
            out.push(c.frobenius(m.saturating_sub(1)));
        } else {
            debug_assert!(c.is_zero(), "polynomial was not an even power");
        }
    }
    UniPoly::from_coeffs(f.ctx(), out)
}

/// Squarefree decomposition of a monic polynomial (characteristic 2).
fn squarefree_parts(f: &UniPoly) -> Vec<(UniPoly, u32)> {
    debug_assert!(f.is_monic());
    if f.degree() == Some(0) {
        return Vec::new();
    }
    let fd = f.derivative();
    if fd.is_zero() {
        // All exponents even: f = g(x^2) = (root g)^2.
        let g = even_power_root(f);
        return squarefree_parts(&g)
            .into_iter()
            .map(|(p, e)| (p, 2 * e))
            .collect();
    }
    let mut out = Vec::new();
    let mut c = f.gcd(&fd);
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1u32;
    while w.degree() != Some(0) {
        let y = w.gcd(&c);
        let z = w.div_exact(&y).expect("gcd divides");
        if z.degree() != Some(0) {
            out.push((z, i));
        }
        w = y;
        c = c.div_exact(&w).expect("gcd divides");
        i += 1;
    }
    if c.degree() != Some(0) {
        // Remaining part has all multiplicities even.
        let g = even_power_root(&c);
        out.extend(
            squarefree_parts(&g)
                .into_iter()
                .map(|(p, e)| (p, 2 * e)),
        );
    }
    out
}

/// Distinct-degree phase: split a monic squarefree g into products of
/// irreducibles of equal degree.
fn distinct_degree_parts(g: &UniPoly) -> Vec<(UniPoly, usize)> {
    let mut out = Vec::new();
    let mut g = g.clone();
    let x = UniPoly::x(g.ctx());
    let mut h = x.rem(&g).expect("nonconstant");
    let mut d = 0usize;
    while let Some(dg) = g.degree() {
        if dg == 0 {
            break;
        }
        d += 1;
        if 2 * d > dg {
            out.push((g.clone(), dg));
            break;
        }
        h = h.pow_field_size_mod(&g).expect("nonzero modulus");
        let f = g.gcd(&h.add(&x));
        if f.degree() != Some(0) {
            out.push((f.clone(), d));
            g = g.div_exact(&f).expect("gcd divides");
            h = h.rem(&g).expect("nonzero");
        }
    }
    out
}

/// Equal-degree splitting by the trace map: for a product of k irreducibles
/// of degree d over GF(2^m), T(h) = h + h^2 + ... + h^(2^(m*d-1)) evaluates
/// to 0 or 1 on each factor, and gcd(T(h), f) separates them with
/// probability about 1/2 per random h.
fn equal_degree_split(f: &UniPoly, d: usize, rng: &mut FactorRng, out: &mut Vec<UniPoly>) {
    let df = f.deg();
    if df == d {
        out.push(f.clone());
        return;
    }
    let m = f.ctx().degree() as usize;
    for _attempt in 0..1000 {
        let h = rng.rand_poly_below(f.ctx(), df);
        if h.is_zero() {
            continue;
        }
        let mut trace = h.rem(f).expect("nonzero");
        let mut cur = trace.clone();
        for _ in 0..m * d - 1 {
            cur = cur.sqrmod(f).expect("nonzero");
            trace = trace.add(&cur);
        }
        let g = f.gcd(&trace);
        if let Some(dg) = g.degree() {
            if dg > 0 && dg < df {
                let cofactor = f.div_exact(&g).expect("gcd divides");
                equal_degree_split(&g, d, rng, out);
                equal_degree_split(&cofactor, d, rng, out);
                return;
            }
        }
    }
    panic!("equal-degree splitting failed to converge; degree {d}, modulus {f:?}");
}

/// Full factorization with the default seed.
pub fn factor(f: &UniPoly) -> Result<Factorization> {
    factor_with_rng(f, &mut FactorRng::default())
}

pub fn factor_with_rng(f: &UniPoly, rng: &mut FactorRng) -> Result<Factorization> {
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let (mut monic, unit) = f.monic();
    let mut factors: Vec<(UniPoly, u32)> = Vec::new();
    // Strip powers of x first so every later phase sees a nonzero constant term.
    let mut x_mult = 0u32;
    while monic.coeff(0).is_zero() {
        monic = monic.div_exact(&UniPoly::x(f.ctx())).expect("x divides");
        x_mult += 1;
        if monic.degree() == Some(0) {
            break;
        }
    }
    if x_mult > 0 {
        factors.push((UniPoly::x(f.ctx()), x_mult));
    }
    if monic.degree() > Some(0) {
        for (sqfree, mult) in squarefree_parts(&monic) {
            for (bucket, d) in distinct_degree_parts(&sqfree) {
                let mut split = Vec::new();
                equal_degree_split(&bucket, d, rng, &mut split);
                for piece in split {
                    factors.push((piece, mult));
                }
            }
        }
    }
    factors.sort_by(|(a, _), (b, _)| cmp_polys(a, b));
    Ok(Factorization { unit, factors })
}

/// All roots in the coefficient field, ascending in bitstring-integer order,
/// ignoring multiplicity.
pub fn roots(f: &UniPoly) -> Result<Vec<FieldElem>> {
    let fact = factor(f)?;
    let mut out: Vec<FieldElem> = fact
        .factors
        .iter()
        .filter(|(p, _)| p.deg() == 1)
        .map(|(p, _)| p.coeff(0))
        .collect();
    out.sort_by(|a, b| a.as_bits().iter().rev().cmp(b.as_bits().iter().rev()));
    Ok(out)
}
