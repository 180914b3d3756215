//! Sparse bivariate polynomials over GF(2^m): substitution, exact division,
//! homogeneous decomposition, and multiplicity of projective points.

use crate::error::{Error, Result};
use crate::gf2m::{Embedding, FieldCtx, FieldElem};
use crate::unipoly::UniPoly;
use std::collections::BTreeMap;
use std::fmt;

/// Hard ceiling on any single exponent; parameter choices that blow past it
/// fail fast instead of exhausting memory.
pub const EXPONENT_CAP: u64 = 1 << 20;

fn cap_check(e: u64) -> Result<u32> {
    if e > EXPONENT_CAP {
        Err(Error::ExponentCap(e, EXPONENT_CAP))
    } else {
        Ok(e as u32)
    }
}

/// Terms keyed by exponent pair (x-degree, y-degree); zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    ctx: FieldCtx,
    terms: BTreeMap<(u32, u32), FieldElem>,
}

impl BiPoly {
    pub fn zero(ctx: &FieldCtx) -> BiPoly {
        BiPoly {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: FieldElem) -> BiPoly {
        let mut p = BiPoly::zero(c.ctx());
        p.accumulate(0, 0, c);
        p
    }

    pub fn monomial(coeff: FieldElem, xdeg: u64, ydeg: u64) -> Result<BiPoly> {
        let a = cap_check(xdeg)?;
        let b = cap_check(ydeg)?;
        let mut p = BiPoly::zero(coeff.ctx());
        p.accumulate(a, b, coeff);
        Ok(p)
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &FieldElem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, xdeg: u32, ydeg: u32) -> FieldElem {
        self.terms
            .get(&(xdeg, ydeg))
            .cloned()
            .unwrap_or_else(|| self.ctx.zero())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).max()
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, _)| a).max()
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, b)| b).max()
    }

    fn accumulate(&mut self, a: u32, b: u32, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((a, b)) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add_elem(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    o.insert(s);
                }
            }
        }
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        self.ctx.check_same(&other.ctx);
        let mut out = self.clone();
        for (&(a, b), c) in &other.terms {
            out.accumulate(a, b, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &BiPoly) -> Result<BiPoly> {
        self.ctx.check_same(&other.ctx);
        let mut out = BiPoly::zero(&self.ctx);
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &other.terms {
                let a = cap_check(a1 as u64 + a2 as u64)?;
                let b = cap_check(b1 as u64 + b2 as u64)?;
                out.accumulate(a, b, c1.mul_elem(c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &FieldElem) -> BiPoly {
        self.ctx.check_same(c.ctx());
        let mut out = BiPoly::zero(&self.ctx);
        for (&(a, b), t) in &self.terms {
            out.accumulate(a, b, t.mul_elem(c));
        }
        out
    }

    pub fn swap_xy(&self) -> BiPoly {
        let mut out = BiPoly::zero(&self.ctx);
        for (&(a, b), c) in &self.terms {
            out.accumulate(b, a, c.clone());
        }
        out
    }

    pub fn eval(&self, x0: &FieldElem, y0: &FieldElem) -> FieldElem {
        self.ctx.check_same(x0.ctx());
        self.ctx.check_same(y0.ctx());
        let mut acc = self.ctx.zero();
        for (&(a, b), c) in &self.terms {
            acc = acc.add_elem(&c.mul_elem(&x0.pow(a as u64)).mul_elem(&y0.pow(b as u64)));
        }
        acc
    }

    /// P(x, g(x)) together with a no-collapse flag: true iff the result's
    /// degree equals the weighted degree max over terms of a + b*deg(g).
    /// The flag is what makes specialization degree arguments sound.
    pub fn substitute_y(&self, g: &UniPoly) -> Result<(UniPoly, bool)> {
        self.ctx.check_same(g.ctx());
        if self.is_zero() {
            return Ok((UniPoly::zero(&self.ctx), true));
        }
        let gdeg = g.degree().map(|d| d as u64);
        let weighted = self
            .terms
            .keys()
            .filter_map(|&(a, b)| match (b, gdeg) {
                (0, _) => Some(a as u64),
                (_, None) => None, // g = 0 kills every y-bearing term
                (_, Some(d)) => Some(a as u64 + b as u64 * d),
            })
            .max();
        let weighted = match weighted {
            Some(w) => {
                cap_check(w)?;
                w
            }
            None => {
                return Ok((UniPoly::zero(&self.ctx), false));
            }
        };
        // Group coefficients of equal y-degree, then combine with powers of g
        // computed incrementally over the ascending (sparse) y-degrees.
        let mut by_y: BTreeMap<u32, Vec<(u32, FieldElem)>> = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            by_y.entry(b).or_default().push((a, c.clone()));
        }
        let mut acc = UniPoly::zero(&self.ctx);
        let mut gpow = UniPoly::one(&self.ctx);
        let mut gpow_exp = 0u32;
        for (b, row) in by_y {
            for _ in gpow_exp..b {
                gpow = gpow.mul(g);
            }
            gpow_exp = b;
            let mut slice = UniPoly::zero(&self.ctx);
            for (a, c) in row {
                slice = slice.add(&UniPoly::monomial(c, a as usize));
            }
            acc = acc.add(&slice.mul(&gpow));
        }
        let no_collapse = acc.degree().map(|d| d as u64) == Some(weighted);
        Ok((acc, no_collapse))
    }

    pub fn substitute_x(&self, g: &UniPoly) -> Result<(UniPoly, bool)> {
        self.swap_xy().substitute_y(g)
    }

    /// Division under graded-lex order; errors unless the remainder is zero.
    pub fn exact_div(&self, q: &BiPoly) -> Result<BiPoly> {
        self.ctx.check_same(&q.ctx);
        let (qa, qb, qc) = match q.leading_term() {
            Some(t) => t,
            None => return Err(Error::DivisionByZero),
        };
        let qc_inv = qc.inverse()?;
        let mut rem = self.clone();
        let mut quot = BiPoly::zero(&self.ctx);
        while let Some((ra, rb, rc)) = rem.leading_term() {
            if ra < qa || rb < qb {
                return Err(Error::DoesNotDivide);
            }
            let (ta, tb) = (ra - qa, rb - qb);
            let tc = rc.mul_elem(&qc_inv);
            quot.accumulate(ta, tb, tc.clone());
            // rem -= t * q
            for (&(a, b), c) in &q.terms {
                rem.accumulate(a + ta, b + tb, c.mul_elem(&tc));
            }
        }
        Ok(quot)
    }

    /// Leading term under graded-lex: highest total degree, ties broken by
    /// higher x-degree.
    fn leading_term(&self) -> Option<(u32, u32, FieldElem)> {
        self.terms
            .iter()
            .max_by_key(|(&(a, b), _)| (a + b, a))
            .map(|(&(a, b), c)| (a, b, c.clone()))
    }

    pub fn homogeneous_components(&self) -> BTreeMap<u32, BiPoly> {
        let mut out: BTreeMap<u32, BiPoly> = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            out.entry(a + b)
                .or_insert_with(|| BiPoly::zero(&self.ctx))
                .accumulate(a, b, c.clone());
        }
        out
    }

    /// Multiplicity of a projective point on the curve cut out by this
    /// polynomial homogenized to degree `homogenize_to`: translate the point
    /// to the origin in its affine chart and return the least total degree
    /// carrying a nonzero homogeneous part.  0 means the point is off the
    /// curve; 1 means nonsingular.
    pub fn multiplicity_at(&self, point: &ProjPoint, homogenize_to: u32) -> Result<u32> {
        let d = self
            .total_degree()
            .ok_or_else(|| Error::InvalidParameter("multiplicity of the zero polynomial".into()))?;
        if homogenize_to < d {
            return Err(Error::InvalidParameter(format!(
                "homogenization degree {homogenize_to} is below the total degree {d}"
            )));
        }
        let pctx = point.ctx();
        let emb = Embedding::new(&self.ctx, &pctx)?;
        // Dehomogenize x^a y^b z^(D-a-b) in the chart whose coordinate is 1
        // (the first nonzero one, since the point is normalized), leaving a
        // bivariate polynomial and an affine point (u0, v0).
        let mut chart: BTreeMap<(u32, u32), FieldElem> = BTreeMap::new();
        let mut put = |e1: u32, e2: u32, c: FieldElem| {
            match chart.entry((e1, e2)) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    let s = o.get().add_elem(&c);
                    if s.is_zero() {
                        o.remove();
                    } else {
                        o.insert(s);
                    }
                }
            };
        };
        let (u0, v0) = if point.x().is_one() {
            for (&(a, b), c) in &self.terms {
                put(b, homogenize_to - a - b, emb.apply(c));
            }
            (point.y(), point.z())
        } else if point.y().is_one() {
            for (&(a, b), c) in &self.terms {
                put(a, homogenize_to - a - b, emb.apply(c));
            }
            (point.x(), point.z())
        } else {
            for (&(a, b), c) in &self.terms {
                put(a, b, emb.apply(c));
            }
            (point.x(), point.y())
        };
        // Coefficient of u^j v^l after translating (u,v) -> (u+u0, v+v0):
        // sum over stored terms (e1,e2) with j ⊆ e1, l ⊆ e2 (Lucas: the
        // binomial C(e,k) is odd exactly when k is a submask of e) of
        // c * u0^(e1-j) * v0^(e2-l).  Scan total degrees from 0 up.
        let max_deg = chart.keys().map(|&(a, b)| a + b).max().unwrap_or(0);
        for k in 0..=max_deg {
            for j in 0..=k {
                let l = k - j;
                let mut acc = pctx.zero();
                for (&(e1, e2), c) in &chart {
                    if e1 & j == j && e2 & l == l {
                        let term = c
                            .mul_elem(&u0.pow((e1 - j) as u64))
                            .mul_elem(&v0.pow((e2 - l) as u64));
                        acc = acc.add_elem(&term);
                    }
                }
                if !acc.is_zero() {
                    return Ok(k);
                }
            }
        }
        unreachable!("translation of a nonzero polynomial cannot vanish identically")
    }

    /// Serialization shape for reports: [[xdeg, ydeg, coeff-hex], ...]
    /// ascending in (xdeg, ydeg).
    pub fn term_list(&self) -> Vec<(u32, u32, String)> {
        self.terms
            .iter()
            .map(|(&(a, b), c)| (a, b, c.to_hex()))
            .collect()
    }

    pub fn from_term_list(ctx: &FieldCtx, list: &[(u32, u32, String)]) -> Result<BiPoly> {
        let mut p = BiPoly::zero(ctx);
        for (a, b, hex) in list {
            cap_check(*a as u64)?;
            cap_check(*b as u64)?;
            p.accumulate(*a, *b, ctx.parse_elem(hex)?);
        }
        Ok(p)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // graded-lex descending for readability
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(a, b)| std::cmp::Reverse((a + b, a)));
        for (a, b) in keys {
            let c = &self.terms[&(a, b)];
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut wrote = false;
            if !c.is_one() || (a, b) == (0, 0) {
                write!(f, "{c}")?;
                wrote = true;
            }
            for (sym, e) in [("x", a), ("y", b)] {
                if e > 0 {
                    if wrote {
                        write!(f, "*")?;
                    }
                    wrote = true;
                    if e == 1 {
                        write!(f, "{sym}")?;
                    } else {
                        write!(f, "{sym}^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A point of the projective plane, stored normalized: the first nonzero
/// coordinate is scaled to 1, which also fixes the chart used for
/// multiplicity computations.
#[derive(Clone, PartialEq, Eq)]
pub struct ProjPoint {
    x: FieldElem,
    y: FieldElem,
    z: FieldElem,
}

impl ProjPoint {
    pub fn new(x: FieldElem, y: FieldElem, z: FieldElem) -> Result<ProjPoint> {
        let ctx = x.ctx();
        ctx.check_same(y.ctx());
        ctx.check_same(z.ctx());
        let pivot = [&x, &y, &z].into_iter().find(|c| !c.is_zero());
        let inv = match pivot {
            Some(c) => c.inverse()?,
            None => return Err(Error::ZeroPoint),
        };
        Ok(ProjPoint {
            x: x.mul_elem(&inv),
            y: y.mul_elem(&inv),
            z: z.mul_elem(&inv),
        })
    }

    /// The affine point (x, y), i.e. [x : y : 1].
    pub fn affine(x: FieldElem, y: FieldElem) -> Result<ProjPoint> {
        let one = x.ctx().one();
        ProjPoint::new(x, y, one)
    }

    pub fn ctx(&self) -> FieldCtx {
        self.x.ctx().clone()
    }

    pub fn x(&self) -> FieldElem {
        self.x.clone()
    }

    pub fn y(&self) -> FieldElem {
        self.y.clone()
    }

    pub fn z(&self) -> FieldElem {
        self.z.clone()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}:{}]", self.x, self.y, self.z)
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
