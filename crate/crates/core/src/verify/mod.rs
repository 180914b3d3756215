//! Exhaustive ground truth at desk scale: differential uniformity by direct
//! enumeration, off-diagonal zero counts of the difference polynomial across
//! extension towers, and the irreducibility ratio experiment for the
//! hexanomial companion polynomial. These routines are the measuring stick
//! the decision pipeline in [`crate::apn`] is checked against: slow, obvious,
//! and with no shared machinery beyond the field engine.

pub mod catalog;

use crate::apn::QuadBinomial;
use crate::error::{Error, Result};
use crate::gf2m::{intfactor, FieldCtx, FieldElem};
use crate::unipoly::{self, UniPoly};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::time::Instant;

/// Hard cap on enumerated field size: |L| <= 2^ENUM_CAP.
pub const ENUM_CAP: u32 = 24;

/// A polynomial function on a field, stored as a sparse list of
/// (coefficient, exponent) terms with distinct exponents and nonzero
/// coefficients. Exponents are kept exactly as given — no reduction modulo
/// 2^m−1 — so the same object still denotes a polynomial (not just a
/// function) and evaluates correctly after coefficient embedding into an
/// extension field.
#[derive(Clone)]
pub struct PolySpec {
    ctx: FieldCtx,
    terms: Vec<(FieldElem, u64)>,
}

impl PolySpec {
    /// Build from explicit terms. Exponents must be positive and pairwise
    /// distinct; coefficients must be nonzero.
    pub fn new(ctx: &FieldCtx, terms: Vec<(FieldElem, u64)>) -> Result<PolySpec> {
        let mut seen = std::collections::BTreeSet::new();
        for (c, e) in &terms {
            ctx.check_same(c.ctx());
            if *e == 0 {
                return Err(Error::InvalidParameter(
                    "polynomial term exponents must be positive".into(),
                ));
            }
            if c.is_zero() {
                return Err(Error::InvalidParameter(format!(
                    "zero coefficient on x^{e}"
                )));
            }
            if !seen.insert(*e) {
                return Err(Error::InvalidParameter(format!(
                    "duplicate exponent {e} in polynomial spec"
                )));
            }
        }
        let mut terms = terms;
        terms.sort_by_key(|(_, e)| *e);
        Ok(PolySpec {
            ctx: ctx.clone(),
            terms,
        })
    }

    /// Build from terms that may repeat exponents: coefficients on equal
    /// exponents are added (characteristic 2), and terms that cancel are
    /// dropped. Used by catalog families whose printed shape can collide at
    /// small parameters.
    pub fn sum_of_terms(ctx: &FieldCtx, terms: Vec<(FieldElem, u64)>) -> Result<PolySpec> {
        let mut acc: BTreeMap<u64, FieldElem> = BTreeMap::new();
        for (c, e) in terms {
            ctx.check_same(c.ctx());
            if e == 0 {
                return Err(Error::InvalidParameter(
                    "polynomial term exponents must be positive".into(),
                ));
            }
            let entry = acc.entry(e).or_insert_with(|| ctx.zero());
            *entry = entry.add_elem(&c);
        }
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (c, e))
            .collect();
        Ok(PolySpec {
            ctx: ctx.clone(),
            terms,
        })
    }

    /// The two-term spec x^(2^i+1) + δ·x^(2^s(2^t+1)).
    pub fn from_binomial(f: &QuadBinomial) -> PolySpec {
        let (e1, e2) = f.exponents();
        PolySpec {
            ctx: f.ctx().clone(),
            terms: vec![(f.ctx().one(), e1), (f.delta().clone(), e2)],
        }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> &[(FieldElem, u64)] {
        &self.terms
    }

    /// Evaluate at a point of the coefficient field.
    pub fn eval(&self, x: &FieldElem) -> FieldElem {
        self.ctx.check_same(x.ctx());
        let mut acc = self.ctx.zero();
        for (c, e) in &self.terms {
            acc = acc.add_elem(&c.mul_elem(&x.pow(*e)));
        }
        acc
    }
}

impl std::fmt::Debug for PolySpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self} over GF(2^{})", self.ctx.degree())
    }
}

impl std::fmt::Display for PolySpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (c, e)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "x^{e}")?;
            } else {
                write!(f, "{}*x^{e}", c.to_hex())?;
            }
        }
        Ok(())
    }
}

/// A field embedding GF(2^m) → GF(2^M) (m | M), realized by sending the
/// residue class of x to a fixed root of the small field's modulus in the
/// big field. Any root gives a valid embedding; the one with the smallest
/// bit pattern is chosen so results are deterministic.
pub struct Embedding {
    src: FieldCtx,
    dst: FieldCtx,
    /// powers[j] = ρ^j for j < m, where ρ is the chosen root.
    powers: Vec<FieldElem>,
}

impl Embedding {
    pub fn new(src: &FieldCtx, dst: &FieldCtx) -> Result<Embedding> {
        if src.same_field(dst) {
            let powers = (0..src.degree() as usize)
                .map(|j| {
                    let mut bits = vec![0u64; j / 64 + 1];
                    bits[j / 64] = 1u64 << (j % 64);
                    src.elem_from_bits(&bits).expect("basis element in range")
                })
                .collect();
            return Ok(Embedding {
                src: src.clone(),
                dst: dst.clone(),
                powers,
            });
        }
        if dst.degree() % src.degree() != 0 {
            return Err(Error::NotASubfieldDegree(src.degree(), dst.degree()));
        }
        // The small modulus has GF(2) coefficients, so it can be read as a
        // polynomial over the big field directly.
        let mut p = UniPoly::zero(dst);
        for (limb, w) in src.modulus_bits().iter().enumerate() {
            for b in 0..64 {
                if w >> b & 1 == 1 {
                    p = p.add(&UniPoly::monomial(dst.one(), limb * 64 + b));
                }
            }
        }
        let mut roots = unipoly::roots(&p)?;
        if roots.is_empty() {
            return Err(Error::Internal(format!(
                "modulus of GF(2^{}) has no root in GF(2^{})",
                src.degree(),
                dst.degree()
            )));
        }
        roots.sort_by(|a, b| cmp_bits(a.as_bits(), b.as_bits()));
        let rho = roots[0].clone();
        let mut powers = Vec::with_capacity(src.degree() as usize);
        let mut acc = dst.one();
        for _ in 0..src.degree() {
            powers.push(acc.clone());
            acc = acc.mul_elem(&rho);
        }
        Ok(Embedding {
            src: src.clone(),
            dst: dst.clone(),
            powers,
        })
    }

    pub fn dst(&self) -> &FieldCtx {
        &self.dst
    }

    /// Image of a small-field element: GF(2)-linear extension of x ↦ ρ.
    pub fn apply(&self, e: &FieldElem) -> FieldElem {
        self.src.check_same(e.ctx());
        let mut acc = self.dst.zero();
        for (limb, w) in e.as_bits().iter().enumerate() {
            for b in 0..64 {
                if w >> b & 1 == 1 {
                    acc = acc.add_elem(&self.powers[limb * 64 + b]);
                }
            }
        }
        acc
    }
}

fn cmp_bits(a: &[u64], b: &[u64]) -> std::cmp::Ordering {
    for i in (0..a.len().max(b.len())).rev() {
        let (x, y) = (
            a.get(i).copied().unwrap_or(0),
            b.get(i).copied().unwrap_or(0),
        );
        match x.cmp(&y) {
            std::cmp::Ordering::Equal => continue,
            ord => return ord,
        }
    }
    std::cmp::Ordering::Equal
}

/// The quadratic part of a polynomial function: terms c·x^(2^a+2^b) with
/// a > b ≥ 0. The symmetrized difference Δ(x,y) = f(x+y)+f(x)+f(y) of any
/// function depends only on this part — GF(2)-linear and constant terms
/// cancel — so this is the exact input for off-diagonal zero counting.
#[derive(Clone)]
pub struct QuadFunction {
    ctx: FieldCtx,
    terms: Vec<(FieldElem, u32, u32)>,
}

impl QuadFunction {
    /// Extract the quadratic terms of a spec. Exponents with a single set
    /// bit are Frobenius-linear and are dropped; exponents with three or
    /// more set bits make the function non-quadratic and are rejected.
    pub fn from_poly_spec(f: &PolySpec) -> Result<QuadFunction> {
        let mut terms = Vec::new();
        for (c, e) in f.terms() {
            match e.count_ones() {
                1 => continue,
                2 => {
                    let hi = 63 - e.leading_zeros();
                    let lo = e.trailing_zeros();
                    terms.push((c.clone(), hi, lo));
                }
                _ => return Err(Error::NotQuadraticExponent(*e)),
            }
        }
        Ok(QuadFunction {
            ctx: f.ctx().clone(),
            terms,
        })
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    /// Δ(x,y) = Σ c·(x^(2^a)·y^(2^b) + x^(2^b)·y^(2^a)), evaluated directly.
    pub fn delta_eval(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        let mut acc = self.ctx.zero();
        for (c, a, b) in &self.terms {
            let xa = x.frobenius(*a);
            let xb = x.frobenius(*b);
            let ya = y.frobenius(*a);
            let yb = y.frobenius(*b);
            acc = acc.add_elem(&c.mul_elem(&xa.mul_elem(&yb).add_elem(&xb.mul_elem(&ya))));
        }
        acc
    }
}

impl From<&QuadBinomial> for QuadFunction {
    fn from(f: &QuadBinomial) -> QuadFunction {
        QuadFunction {
            ctx: f.ctx().clone(),
            terms: vec![
                (f.ctx().one(), f.i(), 0),
                (f.delta().clone(), f.t() + f.s(), f.s()),
            ],
        }
    }
}

/// Result of a differential-uniformity enumeration.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DUResult {
    /// Degree of the field that was enumerated.
    pub field_degree: u32,
    /// max over a ≠ 0 and b of #{x : f(x+a)+f(x) = b}.
    pub du: u64,
    /// |D_a| (number of distinct difference values for a fixed a ≠ 0) →
    /// how many a attain it.
    pub histogram: BTreeMap<u64, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl DUResult {
    /// Differential uniformity 2 is the defining property of an APN function.
    pub fn is_apn(&self) -> bool {
        self.du == 2
    }
}

/// Count of solutions to f(x+a)+f(x)=b maximized over a ≠ 0 and b, by
/// exhaustive enumeration: one pass per a over all x, O(|L|²) total with
/// O(|L|) memory. The function is tabulated once; x+a is bitwise XOR.
pub fn differential_uniformity(f: &PolySpec, l: &FieldCtx) -> Result<DUResult> {
    let started = Instant::now();
    let m = l.degree();
    if m > ENUM_CAP {
        return Err(Error::FieldTooLarge(m, ENUM_CAP));
    }
    let table = value_table(f, l)?;
    let size = 1usize << m;

    // Per-a histogram without clearing: stamp entries with the current a.
    let sweep = |range: std::ops::Range<u64>,
                 last: &mut Vec<u32>,
                 cnt: &mut Vec<u32>|
     -> (u64, BTreeMap<u64, u64>) {
        let mut du = 0u64;
        let mut hist: BTreeMap<u64, u64> = BTreeMap::new();
        for a in range {
            let stamp = a as u32;
            let mut max_here = 0u32;
            let mut distinct = 0u64;
            for x in 0..size {
                let b = (table[x ^ a as usize] ^ table[x]) as usize;
                if last[b] != stamp {
                    last[b] = stamp;
                    cnt[b] = 0;
                    distinct += 1;
                }
                cnt[b] += 1;
                if cnt[b] > max_here {
                    max_here = cnt[b];
                }
            }
            du = du.max(max_here as u64);
            *hist.entry(distinct).or_insert(0) += 1;
        }
        (du, hist)
    };

    let chunk = 64u64;
    let stops: Vec<u64> = (1..size as u64).step_by(chunk as usize).collect();
    let (du, histogram) = stops
        .par_iter()
        .map_init(
            || (vec![u32::MAX; size], vec![0u32; size]),
            |(last, cnt), &start| {
                let end = (start + chunk).min(size as u64);
                sweep(start..end, last, cnt)
            },
        )
        .reduce(
            || (0u64, BTreeMap::new()),
            |(du1, mut h1), (du2, h2)| {
                for (k, v) in h2 {
                    *h1.entry(k).or_insert(0) += v;
                }
                (du1.max(du2), h1)
            },
        );

    Ok(DUResult {
        field_degree: m,
        du,
        histogram,
        elapsed_ms: Some(started.elapsed().as_millis() as u64),
    })
}

/// Tabulate f over all of L (indexed by element bit pattern). Coefficients
/// are embedded if L is a proper extension of the coefficient field. When
/// the designated generator is primitive the table is filled by walking
/// x = g^j and updating each term's power incrementally (one multiplication
/// per term per element); otherwise each entry is evaluated independently.
fn value_table(f: &PolySpec, l: &FieldCtx) -> Result<Vec<u64>> {
    let m = l.degree();
    if m > ENUM_CAP {
        return Err(Error::FieldTooLarge(m, ENUM_CAP));
    }
    let embed = Embedding::new(f.ctx(), l)?;
    let coeffs: Vec<u64> = f
        .terms()
        .iter()
        .map(|(c, _)| embed.apply(c).to_u64())
        .collect();
    let exps: Vec<u64> = f.terms().iter().map(|(_, e)| *e).collect();
    let ops = l.small_ops();
    let size = 1usize << m;
    let mut table = vec![0u64; size];
    if l.is_primitive() {
        let g = l.generator().to_u64();
        let step: Vec<u64> = exps.iter().map(|&e| ops.pow(g, e)).collect();
        let mut term_val = coeffs.clone();
        let mut x = 1u64;
        for _ in 0..size - 1 {
            let mut v = 0u64;
            for t in &term_val {
                v ^= t;
            }
            table[x as usize] = v;
            for (t, s) in term_val.iter_mut().zip(&step) {
                *t = ops.mul(*t, *s);
            }
            x = ops.mul(x, g);
        }
        debug_assert_eq!(x, 1, "generator order must be 2^m - 1");
    } else {
        for x in 1..size as u64 {
            let mut v = 0u64;
            for (c, e) in coeffs.iter().zip(&exps) {
                v ^= ops.mul(*c, ops.pow(x, *e));
            }
            table[x as usize] = v;
        }
    }
    // table[0] stays 0: every exponent is positive, so f(0) = 0.
    Ok(table)
}

/// Zero count of the symmetrized difference polynomial away from the
/// trivial lines.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointCount {
    /// Extension degree over the coefficient field (1 = the field itself).
    pub extension_degree: u32,
    /// #{(x,y) : Δ(x,y) = 0, x ≠ 0, y ≠ 0, x ≠ y}.
    pub count: u64,
}

/// Count pairs (x,y) ∈ L² with Δ(x,y) = 0 off the lines x=0, y=0, x=y.
///
/// For fixed y the slice x ↦ Δ(x,y) is GF(2)-linear, so its zeros form a
/// subspace: the count for that y is 2^dim(ker) − 2 (the kernel always
/// contains 0 and y). The kernel dimension comes from the rank of the m×m
/// GF(2) matrix assembled from precomputed Frobenius images of the
/// polynomial basis — O(|L|·m) field multiplications overall instead of the
/// O(|L|²) double loop.
pub fn count_points_off_diagonal(f: &QuadFunction, l: &FieldCtx) -> Result<PointCount> {
    let m = l.degree();
    if m > ENUM_CAP {
        return Err(Error::FieldTooLarge(m, ENUM_CAP));
    }
    let base_m = f.ctx().degree();
    if m % base_m != 0 {
        return Err(Error::NotASubfieldDegree(base_m, m));
    }
    let embed = Embedding::new(f.ctx(), l)?;
    let terms: Vec<(u64, u32, u32)> = f
        .terms
        .iter()
        .map(|(c, a, b)| (embed.apply(c).to_u64(), *a, *b))
        .collect();
    let ops = l.small_ops();

    // Distinct Frobenius exponents, reduced mod m (x^(2^m) = x on L).
    let mut exps: Vec<u32> = terms
        .iter()
        .flat_map(|&(_, a, b)| [a % m, b % m])
        .collect();
    exps.sort_unstable();
    exps.dedup();
    let idx_of = |k: u32| exps.binary_search(&(k % m)).expect("exponent present");

    // frob_basis[k][j] = (x^j)^(2^exps[k]) for the polynomial basis.
    let frob_basis: Vec<Vec<u64>> = exps
        .iter()
        .map(|&k| (0..m).map(|j| ops.frobenius(1u64 << j, k)).collect())
        .collect();

    let size = 1u64 << m;
    let count = (1..size)
        .into_par_iter()
        .map(|y| {
            // y^(2^k) for each needed k, walking the sorted exponents.
            let mut ypow = vec![0u64; exps.len()];
            let mut prev_e = 0;
            let mut acc = y;
            for (k, &e) in exps.iter().enumerate() {
                acc = ops.frobenius(acc, e - prev_e);
                ypow[k] = acc;
                prev_e = e;
            }
            // Slice coefficients: Δ(x,y) = Σ_k d_k · x^(2^exps[k]).
            let mut d = vec![0u64; exps.len()];
            for &(c, a, b) in &terms {
                d[idx_of(a)] ^= ops.mul(c, ypow[idx_of(b)]);
                d[idx_of(b)] ^= ops.mul(c, ypow[idx_of(a)]);
            }
            // Columns of the GF(2) matrix of the slice map.
            let mut cols = vec![0u64; m as usize];
            for (k, &dk) in d.iter().enumerate() {
                if dk == 0 {
                    continue;
                }
                for (j, col) in cols.iter_mut().enumerate() {
                    *col ^= ops.mul(dk, frob_basis[k][j]);
                }
            }
            let kernel_dim = m - rank_gf2(&mut cols);
            debug_assert!(kernel_dim >= 1, "the slice kernel must contain y");
            (1u64 << kernel_dim) - 2
        })
        .sum();

    Ok(PointCount {
        extension_degree: m / base_m,
        count,
    })
}

/// Rank of a set of GF(2) column vectors (bit-packed in u64), by Gaussian
/// elimination. Destroys its input.
fn rank_gf2(cols: &mut [u64]) -> u32 {
    let mut rank = 0;
    let mut pivots: Vec<u64> = Vec::with_capacity(cols.len());
    for i in 0..cols.len() {
        let mut v = cols[i];
        for &p in &pivots {
            let bit = 63 - p.leading_zeros();
            if v >> bit & 1 == 1 {
                v ^= p;
            }
        }
        if v != 0 {
            pivots.push(v);
            rank += 1;
        }
    }
    rank
}

/// Point counts across an extension tower, with the first degree at which
/// nontrivial zeros appear. Once the difference curve is known absolutely
/// irreducible, zero counts grow with the field and the zero set is
/// eventually (and then persistently) nonempty.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeilProbe {
    pub base_degree: u32,
    pub rows: Vec<PointCount>,
    /// Least probed extension degree with a nonzero count.
    pub first_nonzero: Option<u32>,
}

/// Count off-diagonal zeros of Δ_f over GF(2^(m·n)) for each n in the range.
/// The whole range is validated against the enumeration cap before any
/// counting starts.
pub fn weil_growth_probe(f: &QuadBinomial, n_range: &[u32]) -> Result<WeilProbe> {
    let base_m = f.ctx().degree();
    for &n in n_range {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "extension degrees must be positive".into(),
            ));
        }
        if base_m.checked_mul(n).filter(|&d| d <= ENUM_CAP).is_none() {
            return Err(Error::FieldTooLarge(base_m.saturating_mul(n), ENUM_CAP));
        }
    }
    let qf = QuadFunction::from(f);
    let mut rows = Vec::with_capacity(n_range.len());
    let mut first_nonzero = None;
    for &n in n_range {
        let total = base_m * n;
        let ext = if total == base_m {
            f.ctx().clone()
        } else {
            FieldCtx::new(total)?
        };
        let row = count_points_off_diagonal(&qf, &ext)?;
        if row.count > 0 && first_nonzero.is_none() {
            first_nonzero = Some(n);
        }
        rows.push(PointCount {
            extension_degree: n,
            count: row.count,
        });
    }
    Ok(WeilProbe {
        base_degree: base_m,
        rows,
        first_nonzero,
    })
}

/// Outcome of the hexanomial companion-polynomial sweep.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HexRatio {
    pub field_degree: u32,
    /// Number of c values swept (all of GF(2^2k)).
    pub total: u64,
    /// How many c make p_c irreducible over GF(2^2k).
    pub irreducible: u64,
    pub ratio: f64,
}

/// Fraction of c ∈ GF(2^2k) for which
/// p_c(x) = x^(2^i+1) + c·x^(2^i) + c^(2^k)·x + 1 is irreducible over
/// GF(2^2k). Each such c certifies an APN hexanomial on that field, and the
/// observed fraction sits near 3/10 across desk-scale fields.
pub fn hexanomial_ratio(k: u32, i: u32) -> Result<HexRatio> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!(
            "hexanomial sweep requires k >= 3 (got k={k})"
        )));
    }
    if intfactor::gcd_u64(i as u64, k as u64) != 1 {
        return Err(Error::InvalidParameter(format!(
            "hexanomial sweep requires gcd(i, k) = 1 (got i={i}, k={k})"
        )));
    }
    let m = 2 * k;
    if m > 16 {
        return Err(Error::FieldTooLarge(m, 16));
    }
    let ctx = FieldCtx::new(m)?;
    let e1 = (1usize << i) + 1;
    let e2 = 1usize << i;
    let mut irreducible = 0u64;
    let mut total = 0u64;
    for c in ctx.elements()? {
        let p = UniPoly::monomial(ctx.one(), e1)
            .add(&UniPoly::monomial(c.clone(), e2))
            .add(&UniPoly::monomial(c.frobenius(k), 1))
            .add(&UniPoly::constant(ctx.one()));
        if unipoly::is_irreducible(&p)? {
            irreducible += 1;
        }
        total += 1;
    }
    Ok(HexRatio {
        field_degree: m,
        total,
        irreducible,
        ratio: irreducible as f64 / total as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apn::normalize_binomial;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn gf(m: u32) -> FieldCtx {
        FieldCtx::new(m).unwrap()
    }

    #[test]
    fn gold_cube_is_apn_on_gf32() {
        let k = gf(5);
        let f = PolySpec::new(&k, vec![(k.one(), 3)]).unwrap();
        let r = differential_uniformity(&f, &k).unwrap();
        assert_eq!(r.du, 2);
        assert!(r.is_apn());
        // APN: every a hits exactly 2^(m-1) distinct differences.
        assert_eq!(r.histogram, BTreeMap::from([(16, 31)]));
    }

    #[test]
    fn the_sporadic_binomial_is_apn_on_its_home_field() {
        let k = FieldCtx::with_modulus_u128(10, 0x409).unwrap();
        let u = k.parse_elem("a^374").unwrap();
        let f = PolySpec::new(&k, vec![(k.one(), 3), (u, 36)]).unwrap();
        let r = differential_uniformity(&f, &k).unwrap();
        assert_eq!(r.du, 2);
    }

    #[test]
    fn squaring_is_linear_with_maximal_uniformity() {
        for m in [3u32, 5, 8] {
            let k = gf(m);
            let f = PolySpec::new(&k, vec![(k.one(), 2)]).unwrap();
            let r = differential_uniformity(&f, &k).unwrap();
            // f(x+a)+f(x) = a² is constant in x: one branch takes them all.
            assert_eq!(r.du, 1u64 << m);
            assert_eq!(r.histogram, BTreeMap::from([(1, (1u64 << m) - 1)]));
        }
    }

    #[test]
    fn du_rejects_oversized_fields() {
        let k = gf(4);
        let f = PolySpec::new(&k, vec![(k.one(), 3)]).unwrap();
        let l = FieldCtx::new(28).unwrap();
        assert!(matches!(
            differential_uniformity(&f, &l),
            Err(Error::FieldTooLarge(28, 24))
        ));
    }

    #[test]
    fn poly_spec_rejects_malformed_terms() {
        let k = gf(4);
        assert!(PolySpec::new(&k, vec![(k.one(), 0)]).is_err());
        assert!(PolySpec::new(&k, vec![(k.zero(), 3)]).is_err());
        assert!(PolySpec::new(&k, vec![(k.one(), 3), (k.generator(), 3)]).is_err());
        // The merging constructor folds the collision instead.
        let merged =
            PolySpec::sum_of_terms(&k, vec![(k.one(), 3), (k.one(), 3), (k.generator(), 5)])
                .unwrap();
        assert_eq!(merged.terms().len(), 1);
        assert_eq!(merged.terms()[0].1, 5);
    }

    #[test]
    fn embedding_preserves_arithmetic() {
        let small = gf(5);
        let big = gf(20);
        let emb = Embedding::new(&small, &big).unwrap();
        let g = small.generator();
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        for _ in 0..50 {
            let x = g.pow(rng.gen_range(0..31));
            let y = g.pow(rng.gen_range(0..31));
            assert_eq!(
                emb.apply(&x.mul_elem(&y)).to_u64(),
                emb.apply(&x).mul_elem(&emb.apply(&y)).to_u64()
            );
            assert_eq!(
                emb.apply(&x.add_elem(&y)).to_u64(),
                emb.apply(&x).add_elem(&emb.apply(&y)).to_u64()
            );
        }
        // The image of GF(2^5)* has order 31 inside GF(2^20)*.
        assert_eq!(emb.apply(&g).order().unwrap(), 31);
    }

    #[test]
    fn embedding_requires_a_subfield_degree() {
        assert!(matches!(
            Embedding::new(&gf(5), &gf(12)),
            Err(Error::NotASubfieldDegree(5, 12))
        ));
    }

    #[test]
    fn gold_cube_has_no_off_diagonal_zeros() {
        let k = gf(5);
        let f = PolySpec::new(&k, vec![(k.one(), 3)]).unwrap();
        let qf = QuadFunction::from_poly_spec(&f).unwrap();
        let r = count_points_off_diagonal(&qf, &k).unwrap();
        assert_eq!(r.extension_degree, 1);
        assert_eq!(r.count, 0);
    }

    #[test]
    fn non_apn_gold_exponent_has_off_diagonal_zeros() {
        // gcd(2, 4) = 2, so x^5 is not APN on GF(2^4).
        let k = gf(4);
        let f = PolySpec::new(&k, vec![(k.one(), 5)]).unwrap();
        let qf = QuadFunction::from_poly_spec(&f).unwrap();
        let r = count_points_off_diagonal(&qf, &k).unwrap();
        assert!(r.count > 0);
        let du = differential_uniformity(&f, &k).unwrap();
        assert!(du.du > 2);
    }

    #[test]
    fn linearized_functions_have_identically_zero_difference() {
        // f = x^4 = x^(2²): Δ ≡ 0, so every off-axis off-diagonal pair counts.
        let k = gf(4);
        let f = PolySpec::new(&k, vec![(k.one(), 4)]).unwrap();
        let qf = QuadFunction::from_poly_spec(&f).unwrap();
        let r = count_points_off_diagonal(&qf, &k).unwrap();
        assert_eq!(r.count, 15 * 14);
    }

    #[test]
    fn quad_function_rejects_cubic_exponents() {
        let k = gf(5);
        let f = PolySpec::new(&k, vec![(k.one(), 7)]).unwrap();
        assert!(matches!(
            QuadFunction::from_poly_spec(&f),
            Err(Error::NotQuadraticExponent(7))
        ));
    }

    #[test]
    fn kernel_count_matches_direct_enumeration() {
        // The fast slice-kernel count against the obvious double loop.
        let mut rng = ChaCha12Rng::seed_from_u64(40);
        for m in [4u32, 6, 7] {
            let k = gf(m);
            for _ in 0..5 {
                let i = rng.gen_range(1..4);
                let s = rng.gen_range(0..3);
                let t = rng.gen_range(1..4);
                if s == 0 && i == t {
                    continue;
                }
                let delta = k.generator().pow(rng.gen_range(0..(1 << m) - 1));
                let f = QuadBinomial::new(&k, i, s, t, delta).unwrap();
                let qf = QuadFunction::from(&f);
                let fast = count_points_off_diagonal(&qf, &k).unwrap().count;
                let mut slow = 0u64;
                for x in k.elements().unwrap() {
                    for y in k.elements().unwrap() {
                        if x.is_zero() || y.is_zero() || x == y {
                            continue;
                        }
                        if qf.delta_eval(&x, &y).is_zero() {
                            slow += 1;
                        }
                    }
                }
                assert_eq!(fast, slow, "mismatch at m={m} i={i} s={s} t={t}");
            }
        }
    }

    #[test]
    fn point_count_is_symmetric_in_the_two_variables() {
        // Each term contributes symmetrically in x and y, so reversing the
        // exponent pairs describes the same difference function. The count
        // must not secretly depend on the pairs arriving in sorted order.
        let mut rng = ChaCha12Rng::seed_from_u64(47);
        for m in [5u32, 6, 8] {
            let k = gf(m);
            for _ in 0..4 {
                let i = rng.gen_range(1..4);
                let s = rng.gen_range(0..3);
                let t = rng.gen_range(1..4);
                if s == 0 && i == t {
                    continue;
                }
                let delta = k.generator().pow(rng.gen_range(0..(1 << m) - 1));
                let f = QuadBinomial::new(&k, i, s, t, delta).unwrap();
                let qf = QuadFunction::from(&f);
                let mirrored = QuadFunction {
                    ctx: qf.ctx.clone(),
                    terms: qf.terms.iter().map(|(c, a, b)| (c.clone(), *b, *a)).collect(),
                };
                let forward = count_points_off_diagonal(&qf, &k).unwrap().count;
                let backward = count_points_off_diagonal(&mirrored, &k).unwrap().count;
                assert_eq!(forward, backward, "asymmetry at m={m} i={i} s={s} t={t}");
            }
        }
    }

    #[test]
    fn du_2_iff_no_off_diagonal_zeros() {
        let mut rng = ChaCha12Rng::seed_from_u64(41);
        for m in [4u32, 5, 6, 7, 8] {
            let k = gf(m);
            for _ in 0..8 {
                let i = rng.gen_range(1..5);
                let s = rng.gen_range(0..4);
                let t = rng.gen_range(1..5);
                if s == 0 && i == t {
                    continue;
                }
                let delta = k.generator().pow(rng.gen_range(0..(1 << m) - 1));
                let f = QuadBinomial::new(&k, i, s, t, delta).unwrap();
                let spec = PolySpec::from_binomial(&f);
                let du = differential_uniformity(&spec, &k).unwrap().du;
                let count = count_points_off_diagonal(&QuadFunction::from(&f), &k)
                    .unwrap()
                    .count;
                assert_eq!(du == 2, count == 0, "m={m} i={i} s={s} t={t}");
            }
        }
    }

    #[test]
    fn point_counts_lift_into_extension_fields() {
        // x^5 on GF(2^4) embeds into GF(2^8); its zeros must persist there.
        let k = gf(4);
        let f = PolySpec::new(&k, vec![(k.one(), 5)]).unwrap();
        let qf = QuadFunction::from_poly_spec(&f).unwrap();
        let small = count_points_off_diagonal(&qf, &k).unwrap();
        let big = count_points_off_diagonal(&qf, &gf(8)).unwrap();
        assert_eq!(big.extension_degree, 2);
        assert!(big.count >= small.count);
        assert!(small.count > 0);
    }

    #[test]
    fn gold_towers_over_gf2_match_the_gcd_law() {
        // x^(2^r+1) is APN on GF(2^n) exactly when gcd(r, n) = 1. For x³
        // that is every n: Δ = x²y + xy² = xy(x+y) has only trivial zeros.
        let k = gf(1);
        let cube = QuadFunction::from_poly_spec(&PolySpec::new(&k, vec![(k.one(), 3)]).unwrap())
            .unwrap();
        for n in [1u32, 2, 3, 5, 7, 8, 11] {
            let r = count_points_off_diagonal(&cube, &gf(n)).unwrap();
            assert_eq!(r.count, 0, "unexpected zeros for x^3 at n={n}");
        }
        // x⁵ (r = 2) drops out of APN-ness exactly on the even degrees.
        let fifth = QuadFunction::from_poly_spec(&PolySpec::new(&k, vec![(k.one(), 5)]).unwrap())
            .unwrap();
        for n in [3u32, 5, 7] {
            let r = count_points_off_diagonal(&fifth, &gf(n)).unwrap();
            assert_eq!(r.count, 0, "unexpected zeros for x^5 at n={n}");
        }
        for n in [2u32, 4, 6] {
            let r = count_points_off_diagonal(&fifth, &gf(n)).unwrap();
            assert!(r.count > 0, "expected zeros for x^5 at n={n}");
        }
    }

    #[test]
    fn weil_probe_reports_the_first_nonzero_degree() {
        let k = gf(1);
        let f = QuadBinomial::new(&k, 1, 1, 2, k.one()).unwrap();
        let probe = weil_growth_probe(&f, &(1..=12).collect::<Vec<_>>()).unwrap();
        assert_eq!(probe.base_degree, 1);
        assert_eq!(probe.rows.len(), 12);
        let n0 = probe.first_nonzero.expect("zeros must eventually appear");
        for row in &probe.rows {
            if row.extension_degree >= n0 {
                assert!(row.count > 0, "gap at n={}", row.extension_degree);
            }
        }
    }

    #[test]
    fn weil_probe_rejects_oversized_towers() {
        let k = gf(10);
        let u = k.parse_elem("a^374").unwrap();
        let f = QuadBinomial::new(&k, 1, 2, 3, u).unwrap();
        assert!(matches!(
            weil_growth_probe(&f, &[1, 2, 3]),
            Err(Error::FieldTooLarge(30, 24))
        ));
    }

    #[test]
    fn du_is_invariant_under_normalization() {
        let mut rng = ChaCha12Rng::seed_from_u64(42);
        for _ in 0..20 {
            let m = rng.gen_range(4..=8);
            let k = gf(m);
            let order = (1u64 << m) - 1;
            let g = k.generator();
            // Random raw binomial with two distinct 2-bit exponents.
            let (e1, e2) = loop {
                let mk = |rng: &mut ChaCha12Rng| {
                    let a = rng.gen_range(0..6u32);
                    let b = rng.gen_range(0..6u32);
                    if a == b {
                        None
                    } else {
                        Some((1u64 << a) + (1u64 << b))
                    }
                };
                if let (Some(e1), Some(e2)) = (mk(&mut rng), mk(&mut rng)) {
                    if e1 != e2 {
                        break (e1, e2);
                    }
                }
            };
            let c1 = g.pow(rng.gen_range(0..order));
            let c2 = g.pow(rng.gen_range(0..order));
            let raw = PolySpec::new(&k, vec![(c1.clone(), e1), (c2.clone(), e2)]).unwrap();
            let (f, _) = normalize_binomial(&c1, e1, &c2, e2).unwrap();
            let normal = PolySpec::from_binomial(&f);
            let du_raw = differential_uniformity(&raw, &k).unwrap().du;
            let du_normal = differential_uniformity(&normal, &k).unwrap().du;
            assert_eq!(du_raw, du_normal, "m={m} e1={e1} e2={e2}");
        }
    }

    #[test]
    fn hexanomial_ratio_sits_near_three_tenths() {
        let r = hexanomial_ratio(4, 1).unwrap();
        assert_eq!(r.field_degree, 8);
        assert_eq!(r.total, 256);
        assert!(r.ratio >= 0.2 && r.ratio <= 0.4, "ratio {}", r.ratio);
    }

    #[test]
    fn hexanomial_ratio_rejects_bad_parameters() {
        assert!(matches!(
            hexanomial_ratio(2, 1),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            hexanomial_ratio(4, 2),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            hexanomial_ratio(9, 2),
            Err(Error::FieldTooLarge(18, 16))
        ));
    }
}
