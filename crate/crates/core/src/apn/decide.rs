//! Absolute-irreducibility decision engine.
//!
//! A bivariate H over K = GF(2^m) that is irreducible over K but not over
//! the algebraic closure splits into n > 1 conjugate irreducible factors of
//! equal degree, so n divides deg H.  The engine enumerates every such
//! "split pattern" n and tries to eliminate each one:
//!
//!  * multiplicity: a point of multiplicity m0 whose coordinates generate a
//!    degree-r extension with gcd(n, r) = 1 forces n | m0;
//!  * degree arithmetic: for the binomial curves the multiplicities at
//!    infinity are known in closed form, which yields divisibility chains
//!    that kill most patterns without touching the polynomial;
//!  * specialization: if H(x, g(x)) keeps its full weighted degree D and
//!    has an irreducible factor over K of degree e with gcd(e, n) = 1 and
//!    e·n > D, pattern n is impossible (a root of that factor would
//!    generate a degree-e extension inside one of degree at most D/n · n/n
//!    over the field of definition of a conjugate factor).
//!
//! Absolute irreducibility is proved once some specialization is
//! irreducible of full weighted degree (irreducibility over K) and every
//! pattern has been eliminated.

use super::QuadBinomial;
use crate::bipoly::{BiPoly, ProjPoint};
use crate::error::{Error, Result};
use crate::gf2m::intfactor;
use crate::unipoly::{factor, UniPoly};
use serde::{Deserialize, Serialize};

/// Caps on the searching parts of the engine.  Exceeding one never yields a
/// wrong answer, only an undecided one.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Budget {
    /// how many substitutions y = x^2 + beta*x + 1 to try (beta walks the
    /// field in bit-pattern order starting from 0)
    pub max_beta_trials: u64,
    /// skip the scan entirely if the weighted degree of the specialization
    /// would exceed this
    pub max_specialization_degree: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_beta_trials: 4096,
            max_specialization_degree: 1 << 14,
        }
    }
}

/// One hypothetical split of H into n conjugate factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitPattern {
    pub n: u64,
    pub factor_degree: u64,
    pub status: PatternStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PatternStatus {
    Live,
    Eliminated(Elimination),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Elimination {
    /// n does not divide the multiplicity of a point with coprime
    /// coordinate degree
    Multiplicity {
        point: String,
        multiplicity: u64,
        coordinate_degree: u32,
    },
    /// one of the closed-form divisibility chains
    DegreeArithmetic { reason: String },
    /// a substitution produced an irreducible factor too large to fit the
    /// pattern
    Specialization {
        substitution: String,
        factor_degree: u64,
        specialization_degree: u64,
    },
}

impl SplitPattern {
    pub fn is_live(&self) -> bool {
        self.status == PatternStatus::Live
    }
}

/// Every split pattern for a curve of the given total degree: one entry per
/// divisor n > 1, ascending.
pub fn split_patterns(total_degree: u64) -> Vec<SplitPattern> {
    let mut divisors = vec![1u64];
    for (p, e) in intfactor::factorize(total_degree) {
        let snapshot = divisors.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            divisors.extend(snapshot.iter().map(|d| d * pk));
        }
    }
    divisors.sort_unstable();
    divisors
        .into_iter()
        .filter(|&n| n > 1)
        .map(|n| SplitPattern {
            n,
            factor_degree: total_degree / n,
            status: PatternStatus::Live,
        })
        .collect()
}

/// The multiplicity lemma: a split into n conjugate factors distributes the
/// multiplicity m0 of a point evenly whenever gcd(n, r) = 1, where r is the
/// degree of the extension generated by the point's coordinates.  Returns
/// true when the pattern is refuted (n does not divide m0); errors when the
/// lemma does not apply (gcd(n, r) > 1).
pub fn eliminate_by_multiplicity(n: u64, multiplicity: u32, coordinate_degree: u32) -> Result<bool> {
    if intfactor::gcd_u64(n, coordinate_degree as u64) != 1 {
        return Err(Error::InapplicableMultiplicity {
            n,
            r: coordinate_degree as u64,
        });
    }
    Ok(multiplicity as u64 % n != 0)
}

/// Closed-form eliminations for the binomial curve H with i | t and s >= 1,
/// based on the multiplicities at infinity (2^s − 1 over GF(2^i), 2^s on
/// the rest of GF(2^t)):
///
///  A. [1:0:0] is rational with multiplicity 2^s − 1, so n | 2^s − 1.
///  B. if t > i and gcd(n, t) = 1, a point of multiplicity 2^s with
///     coordinate degree dividing t forces n | 2^s, impossible alongside A.
///
/// A third chain combining A with n | deg H would give
/// n | 2^gcd(s, t−i) − 1, but that divisibility is automatic for any n
/// surviving A (reduce deg H = 2^(t+s) + 2^s − 2^i − 1 modulo n), so it
/// never eliminates anything on its own.  Its useful content is the special
/// case gcd(s, t−i) = 1, where it shows chain A already clears the board.
pub fn eliminate_by_degree_arithmetic(
    i: u32,
    s: u32,
    t: u32,
    patterns: &mut [SplitPattern],
) -> Result<()> {
    if i < 1 || t % i != 0 {
        return Err(Error::InvalidParameter(format!(
            "the divisibility chains need i >= 1 dividing t (got i={i}, t={t})"
        )));
    }
    if s < 1 || s + t >= 62 {
        return Err(Error::InvalidParameter(format!(
            "the divisibility chains need 1 <= s with s + t < 62 (got s={s}, t={t})"
        )));
    }
    let odd_part = (1u64 << s) - 1;
    for p in patterns.iter_mut() {
        if !p.is_live() {
            continue;
        }
        let n = p.n;
        if odd_part % n != 0 {
            p.status = PatternStatus::Eliminated(Elimination::Multiplicity {
                point: "[1:0:0]".into(),
                multiplicity: odd_part,
                coordinate_degree: 1,
            });
            continue;
        }
        if t > i && intfactor::gcd_u64(n, t as u64) == 1 {
            // n | 2^s - 1 already, so n cannot also divide 2^s unless n = 1
            p.status = PatternStatus::Eliminated(Elimination::DegreeArithmetic {
                reason: format!(
                    "gcd(n, t) = 1 applies the multiplicity-2^{s} points over GF(2^{t}), \
                     and n = {n} > 1 cannot divide both 2^{s} and 2^{s} - 1"
                ),
            });
        }
    }
    Ok(())
}

/// The weighted degree of H(x, g(x)): max over terms x^a y^b of
/// a + b·deg g.  This is an upper bound for the degree of the
/// specialization, attained exactly when nothing cancels.
fn weighted_degree(h: &BiPoly, g: &UniPoly) -> u64 {
    let dg = g.degree().unwrap_or(0) as u64;
    h.terms()
        .map(|((a, b), _)| *a as u64 + *b as u64 * dg)
        .max()
        .unwrap_or(0)
}

/// True when H(x, g(x)) keeps its full weighted degree and is irreducible
/// over K — which certifies that H itself is irreducible over K.  A
/// substitution that drops degree certifies nothing and is reported as
/// [`Error::DegreeCollapse`].
pub fn k_irreducibility_witness(h: &BiPoly, g: &UniPoly) -> Result<bool> {
    let (spec, full) = h.substitute_y(g)?;
    if !full {
        return Err(Error::DegreeCollapse);
    }
    crate::unipoly::is_irreducible(&spec)
}

/// Looks for an irreducible factor of H(x, g(x)) over K of degree e with
/// gcd(e, n) = 1 and e·n > deg H(x, g(x)); such a factor refutes the
/// n-conjugate split pattern.  Returns the witnessing factor degree.
pub fn specialization_obstruction(h: &BiPoly, g: &UniPoly, n: u64) -> Result<Option<u64>> {
    if n <= 1 {
        return Ok(None);
    }
    let (spec, full) = h.substitute_y(g)?;
    if !full {
        return Err(Error::DegreeCollapse);
    }
    let d_spec = spec.degree().unwrap_or(0) as u64;
    let fact = factor(&spec)?;
    for (f, _) in &fact.factors {
        let e = f.deg() as u64;
        if intfactor::gcd_u64(e, n) == 1 && e * n > d_spec {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProofMethod {
    /// the two homogeneous components of H have coprime degrees and the
    /// lower one is squarefree, which rules out any nontrivial factor
    #[serde(rename = "coprime-components")]
    ComponentCoprimality,
    /// irreducibility over K plus the elimination of every conjugate-split
    /// pattern
    #[serde(rename = "pattern-elimination")]
    PatternElimination,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProofTrace {
    pub method: ProofMethod,
    /// substitution whose specialization came out irreducible over K
    pub k_irreducibility_witness: Option<String>,
    pub patterns: Vec<SplitPattern>,
    pub beta_trials: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReducibleWitness {
    /// a proper factor of H, printed
    pub factor: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct UndecidedInfo {
    pub surviving_patterns: Vec<u64>,
    pub k_irreducibility_witness: Option<String>,
    pub patterns: Vec<SplitPattern>,
    pub beta_trials: u64,
    pub budget_exhausted: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum AIVerdict {
    ProvenAbsolutelyIrreducible(ProofTrace),
    ProvenReducible(ReducibleWitness),
    Undecided(UndecidedInfo),
}

impl AIVerdict {
    pub fn is_proven_irreducible(&self) -> bool {
        matches!(self, AIVerdict::ProvenAbsolutelyIrreducible(_))
    }
}

fn describe_substitution(beta: &crate::gf2m::FieldElem) -> String {
    format!("y = x^2 + {}*x + 1", beta.to_hex())
}

/// Shared scan: walk beta through the field, specialize with
/// y = x^2 + beta*x + 1, and use each factorization both as a potential
/// K-irreducibility witness and as a source of pattern obstructions.
fn scan_specializations(
    h: &BiPoly,
    patterns: &mut [SplitPattern],
    budget: &Budget,
) -> Result<(Option<String>, u64, bool)> {
    let ctx = h.ctx();
    let m = ctx.degree();
    let field_cap = if m >= 64 { u64::MAX } else { 1u64 << m };
    let trials_cap = budget.max_beta_trials.min(field_cap);

    // the weighted degree is the same for every monic quadratic g
    let probe = UniPoly::monomial(ctx.one(), 2);
    if weighted_degree(h, &probe) > budget.max_specialization_degree {
        return Ok((None, 0, true));
    }

    let mut k_witness: Option<String> = None;
    let mut trials = 0u64;
    for j in 0..trials_cap {
        if k_witness.is_some() && patterns.iter().all(|p| !p.is_live()) {
            break;
        }
        trials = j + 1;
        let beta = ctx
            .elem_from_u128(j as u128)
            .expect("j < 2^m by construction");
        let g = UniPoly::monomial(ctx.one(), 2)
            .add(&UniPoly::monomial(beta.clone(), 1))
            .add(&UniPoly::one(&ctx));
        let (spec, full) = h.substitute_y(&g)?;
        if !full {
            continue;
        }
        let d_spec = spec.degree().unwrap_or(0) as u64;
        let fact = factor(&spec)?;
        let irreducible =
            fact.factors.len() == 1 && fact.factors[0].1 == 1 && fact.factors[0].0.deg() as u64 == d_spec;
        if irreducible && k_witness.is_none() {
            k_witness = Some(describe_substitution(&beta));
        }
        for p in patterns.iter_mut().filter(|p| p.is_live()) {
            for (f, _) in &fact.factors {
                let e = f.deg() as u64;
                if intfactor::gcd_u64(e, p.n) == 1 && e * p.n > d_spec {
                    p.status = PatternStatus::Eliminated(Elimination::Specialization {
                        substitution: describe_substitution(&beta),
                        factor_degree: e,
                        specialization_degree: d_spec,
                    });
                    break;
                }
            }
        }
    }
    let done = k_witness.is_some() && patterns.iter().all(|p| !p.is_live());
    Ok((k_witness, trials, !done && trials == trials_cap))
}

fn conclude(
    method: ProofMethod,
    k_witness: Option<String>,
    patterns: Vec<SplitPattern>,
    trials: u64,
    budget_exhausted: bool,
) -> AIVerdict {
    let survivors: Vec<u64> = patterns.iter().filter(|p| p.is_live()).map(|p| p.n).collect();
    if k_witness.is_some() && survivors.is_empty() {
        AIVerdict::ProvenAbsolutelyIrreducible(ProofTrace {
            method,
            k_irreducibility_witness: k_witness,
            patterns,
            beta_trials: trials,
        })
    } else {
        AIVerdict::Undecided(UndecidedInfo {
            surviving_patterns: survivors,
            k_irreducibility_witness: k_witness,
            patterns,
            beta_trials: trials,
            budget_exhausted,
        })
    }
}

/// Decide absolute irreducibility of the curve H attached to a quadratic
/// binomial.  Requires s >= 1 (for s = 0 the function is never APN, so no
/// curve analysis is wanted).  For i not dividing t the answer is
/// unconditionally positive; otherwise the divisibility chains run first
/// and a specialization scan settles what is left.
pub fn decide_absolute_irreducibility(f: &QuadBinomial, budget: &Budget) -> Result<AIVerdict> {
    if f.s() == 0 {
        return Err(Error::InvalidParameter(
            "absolute irreducibility analysis applies to s >= 1 (for s = 0 the \
             binomial is never APN)"
                .into(),
        ));
    }
    let (i, s, t) = (f.i(), f.s(), f.t());
    if t % i != 0 {
        return Ok(AIVerdict::ProvenAbsolutelyIrreducible(ProofTrace {
            method: ProofMethod::ComponentCoprimality,
            k_irreducibility_witness: None,
            patterns: Vec::new(),
            beta_trials: 0,
        }));
    }
    let (h, _) = f.construct_h()?;
    let hdeg = h.total_degree().expect("H is nonzero") as u64;
    let mut patterns = split_patterns(hdeg);

    // cross-check the closed form for the rational point at infinity
    let ctx = f.ctx();
    let inf = ProjPoint::new(ctx.one(), ctx.zero(), ctx.zero())?;
    let m0 = h.multiplicity_at(&inf, hdeg as u32)?;
    if m0 as u64 != (1u64 << s) - 1 {
        return Err(Error::Internal(format!(
            "multiplicity at [1:0:0] is {m0}, expected 2^{s} - 1"
        )));
    }

    eliminate_by_degree_arithmetic(i, s, t, &mut patterns)?;
    let (k_witness, trials, exhausted) = scan_specializations(&h, &mut patterns, budget)?;
    Ok(conclude(
        ProofMethod::PatternElimination,
        k_witness,
        patterns,
        trials,
        exhausted,
    ))
}

/// Decide absolute irreducibility for an arbitrary bivariate polynomial.
/// Unlike the binomial entry point this can also certify reducibility, by
/// exhibiting a linear factor found through specialization.
pub fn decide_bipoly(h: &BiPoly, budget: &Budget) -> Result<AIVerdict> {
    let hdeg = match h.total_degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        Some(d) => d as u64,
    };
    let ctx = h.ctx();

    // axis factors x | H and y | H
    let (on_x_axis, _) = h.substitute_y(&UniPoly::zero(&ctx))?;
    if on_x_axis.is_zero() {
        return Ok(AIVerdict::ProvenReducible(ReducibleWitness {
            factor: "y".into(),
        }));
    }
    let (on_y_axis, _) = h.substitute_x(&UniPoly::zero(&ctx))?;
    if on_y_axis.is_zero() {
        return Ok(AIVerdict::ProvenReducible(ReducibleWitness {
            factor: "x".into(),
        }));
    }

    let mut patterns = split_patterns(hdeg);

    // multiplicity eliminations at the rational points at infinity
    for (px, py) in [
        (ctx.one(), ctx.zero()),
        (ctx.zero(), ctx.one()),
        (ctx.one(), ctx.one()),
    ] {
        let p = ProjPoint::new(px, py, ctx.zero())?;
        let m0 = h.multiplicity_at(&p, hdeg as u32)?;
        if m0 == 0 {
            continue;
        }
        for pat in patterns.iter_mut().filter(|p| p.is_live()) {
            if eliminate_by_multiplicity(pat.n, m0, 1)? {
                pat.status = PatternStatus::Eliminated(Elimination::Multiplicity {
                    point: format!("[{}:{}:0]", p.x().to_hex(), p.y().to_hex()),
                    multiplicity: m0 as u64,
                    coordinate_degree: 1,
                });
            }
        }
    }

    // linear-factor certificates from one specialization
    if let Some(witness) = find_linear_factor(h, budget)? {
        return Ok(AIVerdict::ProvenReducible(witness));
    }

    let (k_witness, trials, exhausted) = scan_specializations(h, &mut patterns, budget)?;
    Ok(conclude(
        ProofMethod::PatternElimination,
        k_witness,
        patterns,
        trials,
        exhausted,
    ))
}

/// Searches for factors of H of the shape y + a·x + b or x + c.  If H has
/// such a factor L, then L(x, g(x)) divides H(x, g(x)) for every g — this
/// needs no degree assumption, so even a collapsed specialization carries
/// all the candidates.  A specialization that vanishes identically is
/// itself a certificate: H(x, g(x)) = 0 means y + g(x) divides H.
fn find_linear_factor(h: &BiPoly, budget: &Budget) -> Result<Option<ReducibleWitness>> {
    let ctx = h.ctx();
    let m = ctx.degree();
    let field_cap = if m >= 64 { u64::MAX } else { 1u64 << m };
    let trials_cap = budget.max_beta_trials.min(field_cap).min(1);
    let probe = UniPoly::monomial(ctx.one(), 2);
    if weighted_degree(h, &probe) > budget.max_specialization_degree {
        return Ok(None);
    }
    for j in 0..trials_cap {
        let beta = ctx.elem_from_u128(j as u128).expect("j < 2^m");
        let g = UniPoly::monomial(ctx.one(), 2)
            .add(&UniPoly::monomial(beta.clone(), 1))
            .add(&UniPoly::one(&ctx));
        let (spec, _) = h.substitute_y(&g)?;
        if spec.is_zero() {
            return Ok(Some(ReducibleWitness {
                factor: format!("y + {g}"),
            }));
        }
        if spec.degree() == Some(0) {
            // a nonzero constant has no divisors of positive degree, so H
            // has no factor that is linear in y or free of y
            return Ok(None);
        }
        let fact = factor(&spec)?;

        // x + c | H needs x + c to divide the specialization
        for (f, _) in &fact.factors {
            if f.deg() != 1 {
                continue;
            }
            let c = f.monic().0.coeff(0);
            let section = h.substitute_x(&UniPoly::constant(c.clone()))?;
            if section.0.is_zero() {
                return Ok(Some(ReducibleWitness {
                    factor: format!("x + {}", c.to_hex()),
                }));
            }
        }

        // y + a*x + b | H forces x^2 + (beta+a)*x + (1+b) to divide the
        // specialization, so read (a, b) off its monic quadratic divisors
        let mut quadratics: Vec<(crate::gf2m::FieldElem, crate::gf2m::FieldElem)> = Vec::new();
        for (f, _) in &fact.factors {
            if f.deg() == 2 {
                let (monic, _) = f.monic();
                quadratics.push((monic.coeff(1), monic.coeff(0)));
            }
        }
        let linears: Vec<UniPoly> = fact
            .factors
            .iter()
            .flat_map(|(f, e)| {
                if f.deg() == 1 {
                    vec![f.monic().0; (*e).min(2) as usize]
                } else {
                    vec![]
                }
            })
            .collect();
        for a in 0..linears.len() {
            for b in a + 1..linears.len() {
                let prod = linears[a].mul(&linears[b]);
                quadratics.push((prod.coeff(1), prod.coeff(0)));
            }
        }
        for (c1, c0) in quadratics {
            let a = c1.add_elem(&beta);
            let b = c0.add_elem(&ctx.one());
            let mut candidate = BiPoly::monomial(ctx.one(), 0, 1)?.add(&BiPoly::constant(b));
            if !a.is_zero() {
                candidate = candidate.add(&BiPoly::monomial(a, 1, 0)?);
            }
            if h.exact_div(&candidate).is_ok() {
                return Ok(Some(ReducibleWitness {
                    factor: format!("{candidate}"),
                }));
            }
        }
    }
    // one specialization already carries every candidate, so reaching this
    // point rules the shapes out
    Ok(None)
}
