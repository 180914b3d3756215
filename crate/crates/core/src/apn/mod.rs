//! Quadratic binomials f(x) = x^(2^i+1) + δ·x^(2^s(2^t+1)) over K = GF(2^m)
//! and the curve machinery attached to them: the symmetrized difference
//! polynomial Δ_f, its quotients F = Δ_f/(xy) and H = F/U, the multiplicity
//! table of points at infinity, and the decision pipeline that settles
//! whether H is absolutely irreducible (which rules out APN-ness over all
//! but finitely many extensions of K).

mod classify;
mod decide;

pub use classify::{classify, ClassificationReport, CriterionFired, Verdict};
pub use decide::{
    decide_absolute_irreducibility, decide_bipoly, eliminate_by_degree_arithmetic,
    eliminate_by_multiplicity, k_irreducibility_witness, specialization_obstruction,
    split_patterns, AIVerdict, Budget, Elimination, PatternStatus, ProofTrace, ReducibleWitness,
    SplitPattern, UndecidedInfo,
};

use crate::bipoly::{BiPoly, ProjPoint};
use crate::error::{Error, Result};
use crate::gf2m::{intfactor, FieldCtx, FieldElem};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// f(x) = x^(2^i+1) + δ·x^(2^s(2^t+1)) with δ ≠ 0.  The generic quadratic
/// binomial normal form: every quadratic binomial is affine-equivalent to
/// one of these (see [`normalize_binomial`]).
#[derive(Clone)]
pub struct QuadBinomial {
    ctx: FieldCtx,
    i: u32,
    s: u32,
    t: u32,
    delta: FieldElem,
}

impl QuadBinomial {
    pub fn new(ctx: &FieldCtx, i: u32, s: u32, t: u32, delta: FieldElem) -> Result<QuadBinomial> {
        ctx.check_same(delta.ctx());
        if i < 1 || t < 1 {
            return Err(Error::InvalidParameter(format!(
                "exponent parameters must satisfy i >= 1 and t >= 1 (got i={i}, t={t})"
            )));
        }
        if delta.is_zero() {
            return Err(Error::InvalidParameter(
                "delta must be nonzero (otherwise f is a monomial)".into(),
            ));
        }
        if s == 0 && i == t {
            return Err(Error::DegenerateBinomial);
        }
        if i >= 62 || s as u64 + t as u64 >= 62 {
            return Err(Error::InvalidParameter(format!(
                "exponents 2^i+1 and 2^s(2^t+1) must fit in 64 bits (got i={i}, s={s}, t={t})"
            )));
        }
        Ok(QuadBinomial {
            ctx: ctx.clone(),
            i,
            s,
            t,
            delta,
        })
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn i(&self) -> u32 {
        self.i
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn delta(&self) -> &FieldElem {
        &self.delta
    }

    /// d = gcd(i, t), the parameter of the forced factor U.
    pub fn d(&self) -> u32 {
        intfactor::gcd_u64(self.i as u64, self.t as u64) as u32
    }

    /// The two monomial exponents (2^i + 1, 2^s·(2^t + 1)).
    pub fn exponents(&self) -> (u64, u64) {
        (
            (1u64 << self.i) + 1,
            (1u64 << self.s) * ((1u64 << self.t) + 1),
        )
    }

    /// Δ_f(x,y) = f(x+y) + f(x) + f(y)
    ///          = x^(2^i)·y + x·y^(2^i) + δ·(x^(2^(t+s))·y^(2^s) + x^(2^s)·y^(2^(t+s))).
    pub fn delta_poly(&self) -> Result<BiPoly> {
        let (i, s, t) = (self.i, self.s, self.t);
        let one = self.ctx.one();
        let mut p = BiPoly::monomial(one.clone(), 1u64 << i, 1)?;
        p = p.add(&BiPoly::monomial(one, 1, 1u64 << i)?);
        p = p.add(&BiPoly::monomial(
            self.delta.clone(),
            1u64 << (t + s),
            1u64 << s,
        )?);
        p = p.add(&BiPoly::monomial(
            self.delta.clone(),
            1u64 << s,
            1u64 << (t + s),
        )?);
        Ok(p)
    }

    /// F(x,y) = Δ_f/(xy)
    ///        = x^(2^i−1) + y^(2^i−1) + δ·(x^(2^(t+s)−1)·y^(2^s−1) + x^(2^s−1)·y^(2^(t+s)−1)).
    pub fn construct_f(&self) -> Result<BiPoly> {
        let (i, s, t) = (self.i, self.s, self.t);
        let one = self.ctx.one();
        let mut p = BiPoly::monomial(one.clone(), (1u64 << i) - 1, 0)?;
        p = p.add(&BiPoly::monomial(one, 0, (1u64 << i) - 1)?);
        p = p.add(&BiPoly::monomial(
            self.delta.clone(),
            (1u64 << (t + s)) - 1,
            (1u64 << s) - 1,
        )?);
        p = p.add(&BiPoly::monomial(
            self.delta.clone(),
            (1u64 << s) - 1,
            (1u64 << (t + s)) - 1,
        )?);
        Ok(p)
    }

    /// U(x,y) = x^(2^d−1) + y^(2^d−1), the factor of F forced by d = gcd(i,t).
    pub fn construct_u(&self) -> BiPoly {
        let e = (1u64 << self.d()) - 1;
        let one = self.ctx.one();
        BiPoly::monomial(one.clone(), e, 0)
            .expect("d <= i stays under the cap")
            .add(&BiPoly::monomial(one, 0, e).expect("d <= i stays under the cap"))
    }

    /// Degrees of the two homogeneous components of H, ascending:
    /// {2^i − 2^d, 2^(t+s) + 2^s − 2^d − 1}.  These never coincide.
    pub fn component_degrees(&self) -> (u64, u64) {
        let plain = (1u64 << self.i) - (1u64 << self.d());
        let scaled = (1u64 << (self.t + self.s)) + (1u64 << self.s) - (1u64 << self.d()) - 1;
        (plain.min(scaled), plain.max(scaled))
    }

    /// Total degree of H.  Whenever t + s >= i (in particular whenever
    /// i divides t and s >= 1) this is 2^(t+s) + 2^s − 2^d − 1.
    pub fn h_degree(&self) -> u64 {
        self.component_degrees().1
    }

    /// H = F/U together with its homogeneous decomposition.  Division failure
    /// is an internal error: U divides F by construction.
    pub fn construct_h(&self) -> Result<(BiPoly, BTreeMap<u32, BiPoly>)> {
        let f = self.construct_f()?;
        let u = self.construct_u();
        let h = match f.exact_div(&u) {
            Ok(h) => h,
            Err(Error::DoesNotDivide) => {
                return Err(Error::Internal(
                    "U must divide F for every valid parameter set".into(),
                ))
            }
            Err(e) => return Err(e),
        };
        let comps = h.homogeneous_components();
        Ok((h, comps))
    }

    /// Multiplicities of every point at infinity of the projective closure
    /// of H, computed in the compositum GF(2^lcm(m,t)) and compared against
    /// the predicted values 2^s−1 (b in GF(2^i)), 2^s (b in GF(2^t) outside
    /// GF(2^i)), and 2^s−1 (the point [0:1:0]).  Requires i | t.
    pub fn infinity_multiplicity_table(&self) -> Result<InfinityTable> {
        let (i, s, t) = (self.i, self.s, self.t);
        if t % i != 0 {
            return Err(Error::InvalidParameter(format!(
                "the multiplicity table applies when i divides t (got i={i}, t={t})"
            )));
        }
        let m = self.ctx.degree();
        let lcm = m as u64 * t as u64 / intfactor::gcd_u64(m as u64, t as u64);
        if lcm > 64 {
            return Err(Error::FieldTooLarge(lcm as u32, 64));
        }
        let ambient = if lcm == m as u64 {
            self.ctx.clone()
        } else {
            FieldCtx::new(lcm as u32)?
        };
        if !ambient.is_primitive() {
            return Err(Error::Internal(
                "default compositum modulus should be primitive for degrees <= 64".into(),
            ));
        }
        let (h, _) = self.construct_h()?;
        let hdeg = h.total_degree().expect("H is nonzero") as u64;

        let mut rows = Vec::new();
        let order = if lcm == 64 {
            u64::MAX
        } else {
            (1u64 << lcm) - 1
        };
        let step = order / ((1u64 << t) - 1);
        let g = ambient.generator();
        // all of GF(2^t) inside the ambient field: 0 and the powers of a
        // generator of its multiplicative group
        let mut subfield: Vec<FieldElem> = vec![ambient.zero()];
        let gen_t = g.pow(step);
        let mut acc = ambient.one();
        for _ in 0..(1u64 << t) - 1 {
            subfield.push(acc.clone());
            acc = acc.mul_elem(&gen_t);
        }
        for b in subfield {
            let in_gf2i = b.is_in_subfield(i)?;
            let predicted = if in_gf2i { (1 << s) - 1 } else { 1 << s };
            let point = ProjPoint::new(ambient.one(), b.clone(), ambient.zero())?;
            let computed = h.multiplicity_at(&point, hdeg as u32)?;
            rows.push(InfinityRow {
                point: format!("[1:{}:0]", b.to_hex()),
                b_class: if in_gf2i {
                    BClass::InsideGf2i
                } else {
                    BClass::OutsideGf2i
                },
                computed,
                predicted,
            });
        }
        let yaxis = ProjPoint::new(ambient.zero(), ambient.one(), ambient.zero())?;
        rows.push(InfinityRow {
            point: "[0:1:0]".into(),
            b_class: BClass::YAxis,
            computed: h.multiplicity_at(&yaxis, hdeg as u32)?,
            predicted: (1 << s) - 1,
        });
        Ok(InfinityTable {
            ambient_degree: lcm as u32,
            rows,
        })
    }
}

impl std::fmt::Debug for QuadBinomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "x^{} + {}*x^{} over GF(2^{})",
            self.exponents().0,
            self.delta.to_hex(),
            self.exponents().1,
            self.ctx.degree()
        )
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum BClass {
    /// b lies in GF(2^i): predicted multiplicity 2^s − 1.
    #[serde(rename = "b in GF(2^i)")]
    InsideGf2i,
    /// b lies in GF(2^t) but not GF(2^i): predicted multiplicity 2^s.
    #[serde(rename = "b in GF(2^t) outside GF(2^i)")]
    OutsideGf2i,
    /// the point [0:1:0]: predicted multiplicity 2^s − 1.
    #[serde(rename = "[0:1:0]")]
    YAxis,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InfinityRow {
    pub point: String,
    pub b_class: BClass,
    pub computed: u32,
    pub predicted: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InfinityTable {
    pub ambient_degree: u32,
    pub rows: Vec<InfinityRow>,
}

impl InfinityTable {
    pub fn mismatches(&self) -> Vec<&InfinityRow> {
        self.rows
            .iter()
            .filter(|r| r.computed != r.predicted)
            .collect()
    }
}

/// How a raw binomial c·x^e1 + d2·x^e2 was brought to normal form.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NormalizationTrace {
    /// both exponents were divided by 2^frobenius_shift (an inverse
    /// Frobenius applied after f, conjugating the coefficients)
    pub frobenius_shift: u32,
    /// the two monomials were reordered so the odd exponent leads
    pub swapped: bool,
    /// the function was scaled by the inverse of this leading coefficient
    pub scale: String,
}

/// Write e = 2^hi + 2^lo with hi > lo, or reject.
fn two_power_split(e: u64) -> Result<(u32, u32)> {
    if e.count_ones() != 2 {
        return Err(Error::NotQuadraticExponent(e));
    }
    let lo = e.trailing_zeros();
    let hi = 63 - e.leading_zeros();
    Ok((hi, lo))
}

/// Bring c·x^e1 + d2·x^e2 (both coefficients nonzero, both exponents sums of
/// two powers of 2) to the normal form x^(2^i+1) + δ·x^(2^s(2^t+1)) by
/// dividing out the common 2-power of the exponents (an inverse Frobenius,
/// which is a linear bijection), reordering so the odd-type exponent leads,
/// and scaling by the leading coefficient's inverse.  All three steps
/// preserve differential uniformity exactly.
pub fn normalize_binomial(
    c: &FieldElem,
    e1: u64,
    d2: &FieldElem,
    e2: u64,
) -> Result<(QuadBinomial, NormalizationTrace)> {
    let ctx = c.ctx().clone();
    ctx.check_same(d2.ctx());
    if c.is_zero() || d2.is_zero() {
        return Err(Error::InvalidParameter(
            "both binomial coefficients must be nonzero".into(),
        ));
    }
    if e1 == e2 {
        return Err(Error::DegenerateBinomial);
    }
    let (hi1, lo1) = two_power_split(e1)?;
    let (hi2, lo2) = two_power_split(e2)?;
    let shift = lo1.min(lo2);
    let m = ctx.degree();
    let conj = |x: &FieldElem| {
        if shift == 0 {
            x.clone()
        } else {
            x.frobenius(m - (shift % m))
        }
    };
    // After the shift the leading monomial must be the odd one, 2^i + 1.
    let first_odd = lo1 == shift;
    let (odd_hi, odd_c, even_hi, even_lo, even_c) = if first_odd {
        (hi1 - shift, conj(c), hi2 - shift, lo2 - shift, conj(d2))
    } else {
        (hi2 - shift, conj(d2), hi1 - shift, lo1 - shift, conj(c))
    };
    let i = odd_hi;
    let s = even_lo;
    let t = even_hi - even_lo;
    let delta = even_c.mul_elem(&odd_c.inverse()?);
    let trace = NormalizationTrace {
        frobenius_shift: shift,
        swapped: !first_odd,
        scale: odd_c.to_hex(),
    };
    Ok((QuadBinomial::new(&ctx, i, s, t, delta)?, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unipoly::UniPoly;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(m: u32) -> FieldCtx {
        FieldCtx::new(m).unwrap()
    }

    fn rand_nonzero(ctx: &FieldCtx, rng: &mut ChaCha8Rng) -> FieldElem {
        loop {
            let mask = if ctx.degree() >= 128 {
                u128::MAX
            } else {
                (1u128 << ctx.degree()) - 1
            };
            let e = ctx.elem_from_u128(rng.gen::<u128>() & mask).unwrap();
            if !e.is_zero() {
                return e;
            }
        }
    }

    #[test]
    fn rejects_degenerate_parameters() {
        let k = gf(6);
        let a = k.generator();
        assert!(matches!(
            QuadBinomial::new(&k, 2, 0, 2, a.clone()),
            Err(Error::DegenerateBinomial)
        ));
        assert!(QuadBinomial::new(&k, 2, 0, 3, a.clone()).is_ok());
        assert!(QuadBinomial::new(&k, 1, 2, 3, k.zero()).is_err());
        assert!(QuadBinomial::new(&k, 0, 2, 3, a).is_err());
    }

    #[test]
    fn delta_poly_has_the_closed_form() {
        let k = gf(10);
        let u = k.parse_elem("a^374").unwrap();
        let f = QuadBinomial::new(&k, 1, 2, 3, u.clone()).unwrap();
        let d = f.delta_poly().unwrap();
        // x^2 y + x y^2 + u (x^32 y^4 + x^4 y^32)
        assert_eq!(d.num_terms(), 4);
        assert!(d.coeff(2, 1).is_one());
        assert!(d.coeff(1, 2).is_one());
        assert_eq!(d.coeff(32, 4), u);
        assert_eq!(d.coeff(4, 32), u);
    }

    #[test]
    fn delta_vanishes_on_axes_and_diagonal() {
        let k = gf(6);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (i, s, t) in [(1, 2, 3), (2, 1, 4), (3, 1, 3), (1, 1, 1)] {
            let f = QuadBinomial::new(&k, i, s, t, rand_nonzero(&k, &mut rng)).unwrap();
            let d = f.delta_poly().unwrap();
            let (at_zero, _) = d.substitute_y(&UniPoly::zero(&k)).unwrap();
            assert!(at_zero.is_zero());
            let (at_diag, _) = d.substitute_y(&UniPoly::x(&k)).unwrap();
            assert!(at_diag.is_zero());
        }
    }

    #[test]
    fn f_equals_delta_over_xy() {
        let k = gf(6);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let i = rng.gen_range(1..=4);
            let s = rng.gen_range(0..=4);
            let t = rng.gen_range(1..=4);
            if s == 0 && i == t {
                continue;
            }
            let f = QuadBinomial::new(&k, i, s, t, rand_nonzero(&k, &mut rng)).unwrap();
            let xy = BiPoly::monomial(k.one(), 1, 1).unwrap();
            let big_f = f.construct_f().unwrap();
            assert_eq!(xy.mul(&big_f).unwrap(), f.delta_poly().unwrap());
        }
    }

    #[test]
    fn f_closed_form_for_example_parameters() {
        let k = gf(10);
        let u = k.parse_elem("a^374").unwrap();
        let f = QuadBinomial::new(&k, 1, 2, 3, u.clone()).unwrap();
        let big_f = f.construct_f().unwrap();
        // x + y + u(x^31 y^3 + x^3 y^31), total degree 34
        assert_eq!(big_f.num_terms(), 4);
        assert!(big_f.coeff(1, 0).is_one());
        assert!(big_f.coeff(0, 1).is_one());
        assert_eq!(big_f.coeff(31, 3), u);
        assert_eq!(big_f.coeff(3, 31), u);
        assert_eq!(big_f.total_degree(), Some(34));
    }

    #[test]
    fn u_depends_on_gcd() {
        let k = gf(4);
        let a = k.generator();
        let f = QuadBinomial::new(&k, 1, 1, 3, a.clone()).unwrap();
        assert_eq!(f.construct_u().total_degree(), Some(1)); // x + y
        let f = QuadBinomial::new(&k, 2, 1, 4, a.clone()).unwrap();
        assert_eq!(f.construct_u().total_degree(), Some(3)); // x^3 + y^3
        let f = QuadBinomial::new(&k, 3, 1, 3, a).unwrap();
        assert_eq!(f.construct_u().total_degree(), Some(7)); // x^7 + y^7
    }

    #[test]
    fn division_identities_hold_across_fields() {
        // U·H = F and x·y·F = Δ for random δ over several fields
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for m in [4, 6, 10] {
            let k = gf(m);
            let xy = BiPoly::monomial(k.one(), 1, 1).unwrap();
            for _ in 0..20 {
                let i = rng.gen_range(1..=4);
                let s = rng.gen_range(1..=4);
                let t = rng.gen_range(1..=4);
                let f = QuadBinomial::new(&k, i, s, t, rand_nonzero(&k, &mut rng)).unwrap();
                let big_f = f.construct_f().unwrap();
                let (h, _) = f.construct_h().unwrap();
                assert_eq!(
                    f.construct_u().mul(&h).unwrap(),
                    big_f,
                    "params {:?}",
                    (m, i, s, t)
                );
                assert_eq!(
                    xy.mul(&big_f).unwrap(),
                    f.delta_poly().unwrap(),
                    "params {:?}",
                    (m, i, s, t)
                );
            }
        }
    }

    #[test]
    fn h_component_degrees_match_formulas() {
        let k = gf(6);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for i in 1..=4u32 {
            for s in 1..=4u32 {
                for t in 1..=4u32 {
                    let f = QuadBinomial::new(&k, i, s, t, rand_nonzero(&k, &mut rng)).unwrap();
                    let (h, comps) = f.construct_h().unwrap();
                    let (lo, hi) = f.component_degrees();
                    assert_eq!(h.total_degree(), Some(hi as u32), "params {:?}", (i, s, t));
                    let degs: Vec<u64> = comps.keys().map(|&d| d as u64).collect();
                    assert_eq!(degs, vec![lo, hi], "params {:?}", (i, s, t));
                    if t % i == 0 {
                        // with i | t and s >= 1 the scaled pair dominates
                        assert_eq!(
                            hi,
                            (1u64 << (t + s)) + (1u64 << s) - (1u64 << f.d()) - 1
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn h_for_the_sporadic_binomial() {
        // H = 1 + u·((x^7+y^7)/(x+y))·(x^8 y + x y^8)^3 over GF(2^10),
        // 29 terms, degree 33.
        let k = gf(10);
        let u = k.parse_elem("a^374").unwrap();
        let f = QuadBinomial::new(&k, 1, 2, 3, u.clone()).unwrap();
        let (h, comps) = f.construct_h().unwrap();
        assert_eq!(h.total_degree(), Some(33));
        assert_eq!(h.num_terms(), 29);
        assert_eq!(comps.len(), 2);
        assert!(comps[&0].coeff(0, 0).is_one());

        // independent reconstruction from the quoted closed form
        let mut quot = BiPoly::zero(&k); // (x^7+y^7)/(x+y) = sum x^j y^(6-j)
        for j in 0..=6 {
            quot = quot.add(&BiPoly::monomial(k.one(), j, 6 - j).unwrap());
        }
        let inner = BiPoly::monomial(k.one(), 8, 1)
            .unwrap()
            .add(&BiPoly::monomial(k.one(), 1, 8).unwrap());
        let cube = inner.mul(&inner).unwrap().mul(&inner).unwrap();
        let expected = BiPoly::constant(k.one()).add(&quot.mul(&cube).unwrap().scale(&u));
        assert_eq!(h, expected);
    }

    #[test]
    fn sporadic_h_multiplicities_at_rational_infinity() {
        let k = gf(10);
        let u = k.parse_elem("a^374").unwrap();
        let f = QuadBinomial::new(&k, 1, 2, 3, u).unwrap();
        let (h, _) = f.construct_h().unwrap();
        let inf_x = ProjPoint::new(k.one(), k.zero(), k.zero()).unwrap();
        assert_eq!(h.multiplicity_at(&inf_x, 33).unwrap(), 3);
        let inf_y = ProjPoint::new(k.zero(), k.one(), k.zero()).unwrap();
        assert_eq!(h.multiplicity_at(&inf_y, 33).unwrap(), 3);
        // The affine point (1,0) is NOT on the curve: H(1,0) = 1.
        assert!(h.eval(&k.one(), &k.zero()).is_one());
        let affine = ProjPoint::affine(k.one(), k.zero()).unwrap();
        assert_eq!(h.multiplicity_at(&affine, 33).unwrap(), 0);
    }

    #[test]
    fn infinity_table_for_the_sporadic_binomial() {
        let k = gf(10);
        let u = k.parse_elem("a^374").unwrap();
        let f = QuadBinomial::new(&k, 1, 2, 3, u).unwrap();
        let table = f.infinity_multiplicity_table().unwrap();
        assert_eq!(table.ambient_degree, 30);
        // 2^3 values of b plus [0:1:0]
        assert_eq!(table.rows.len(), 9);
        assert!(table.mismatches().is_empty());
        // b = 0 row: multiplicity 3 = 2^2 - 1
        let zero_row = &table.rows[0];
        assert_eq!(zero_row.b_class, BClass::InsideGf2i);
        assert_eq!(zero_row.computed, 3);
        // some b outside GF(2): multiplicity 4 = 2^2
        assert!(table
            .rows
            .iter()
            .any(|r| r.b_class == BClass::OutsideGf2i && r.computed == 4));
    }

    #[test]
    fn infinity_table_small_parameters() {
        // (1,1,2): predictions are 1 (b in GF(2)), 2 (outside), 1 ([0:1:0])
        let k = gf(4);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = QuadBinomial::new(&k, 1, 1, 2, rand_nonzero(&k, &mut rng)).unwrap();
        let table = f.infinity_multiplicity_table().unwrap();
        assert!(table.mismatches().is_empty());
        for row in &table.rows {
            let expect = match row.b_class {
                BClass::InsideGf2i => 1,
                BClass::OutsideGf2i => 2,
                BClass::YAxis => 1,
            };
            assert_eq!(row.predicted, expect);
        }
    }

    #[test]
    fn infinity_table_rejects_non_dividing_i() {
        let k = gf(4);
        let f = QuadBinomial::new(&k, 2, 1, 3, k.generator()).unwrap();
        assert!(f.infinity_multiplicity_table().is_err());
    }

    #[test]
    fn normalize_the_sporadic_exponents() {
        let k = gf(10);
        let u = k.parse_elem("a^374").unwrap();
        let (f, trace) = normalize_binomial(&k.one(), 3, &u, 36).unwrap();
        assert_eq!((f.i(), f.s(), f.t()), (1, 2, 3));
        assert_eq!(f.delta(), &u);
        assert_eq!(trace.frobenius_shift, 0);
        assert!(!trace.swapped);
    }

    #[test]
    fn normalize_small_cases() {
        let k = gf(6);
        let a = k.generator();
        // x^3 + δx^6: 6 = 2(2+1)
        let (f, _) = normalize_binomial(&k.one(), 3, &a, 6).unwrap();
        assert_eq!((f.i(), f.s(), f.t()), (1, 1, 1));
        // swapped input order: δx^6 first
        let (g, trace) = normalize_binomial(&a, 6, &k.one(), 3).unwrap();
        assert_eq!((g.i(), g.s(), g.t()), (1, 1, 1));
        assert!(trace.swapped);
        assert_eq!(g.delta(), &a);
        // common power of 2: 2x^6 + ... divide by 2: (6,12) -> (3,6)
        let (h, trace) = normalize_binomial(&a, 6, &a.square(), 12).unwrap();
        assert_eq!((h.i(), h.s(), h.t()), (1, 1, 1));
        assert_eq!(trace.frobenius_shift, 1);
        // coefficients are conjugated by the inverse Frobenius and divided:
        // δ = (a^2/a)^(2^-1) = a^(2^-1) = a^32... as an element: sqrt(a)
        assert_eq!(h.delta().square(), a);
    }

    #[test]
    fn normalize_rejects_bad_exponents() {
        let k = gf(6);
        let a = k.generator();
        assert!(matches!(
            normalize_binomial(&a, 6, &a, 6),
            Err(Error::DegenerateBinomial)
        ));
        assert!(matches!(
            normalize_binomial(&a, 4, &a, 6), // 4 = 2^2 is linear, not quadratic
            Err(Error::NotQuadraticExponent(4))
        ));
        assert!(matches!(
            normalize_binomial(&a, 7, &a, 6),
            Err(Error::NotQuadraticExponent(7))
        ));
        assert!(normalize_binomial(&k.zero(), 3, &a, 6).is_err());
        // x^3 + δx^5: 5 = 4+1 leads to (i,s,t) = (1,0,2) — valid, s=0
        let (f, _) = normalize_binomial(&k.one(), 3, &a, 5).unwrap();
        assert_eq!((f.i(), f.s(), f.t()), (1, 0, 2));
        // x^5 + δx^3 swaps to the same parameters with inverted delta
        let (g, _) = normalize_binomial(&k.one(), 5, &a, 3).unwrap();
        assert_eq!((g.i(), g.s(), g.t()), (2, 0, 1));
    }
}
