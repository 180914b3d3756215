//! The catalog of known APN families: six classical monomial families and
//! six polynomial families, instantiable at concrete parameters.
//!
//! Each family carries its constraint strings exactly as published —
//! typos included — together with an errata layer recording how any
//! uncheckable-as-printed condition was amended before being enforced.
//! Instantiation validates every constraint (naming the violated one on
//! failure) and produces a concrete [`PolySpec`] over the implied field.
//! Families with free coefficients accept caller-supplied values or scan
//! for one that makes the instance APN in a deterministic order.
//!
//! Exponents written with negative Frobenius powers (2^(-k)) are taken
//! modulo the multiplicative order: 2^(-k) means 2^(m-k).

use super::{differential_uniformity, PolySpec};
use crate::error::{Error, Result};
use crate::gf2m::{intfactor, FieldCtx, FieldElem};
use std::collections::BTreeMap;

/// Descriptive record for one family, for listings and reports.
#[derive(Clone, Debug)]
pub struct FamilyInfo {
    pub name: &'static str,
    /// Shape of the function, in the published notation.
    pub shape: &'static str,
    /// Constraint strings as published, verbatim.
    pub printed_constraints: &'static [&'static str],
    /// Amendments needed to make the printed row checkable, if any.
    pub errata: &'static [&'static str],
    /// Integer parameters accepted (those in parentheses are derivable).
    pub int_params: &'static [&'static str],
    /// Free coefficients (supplied or scanned).
    pub coeff_params: &'static [&'static str],
}

pub const FAMILIES: &[FamilyInfo] = &[
    FamilyInfo {
        name: "gold",
        shape: "x^(2^r+1)",
        printed_constraints: &["(r,m) = 1"],
        errata: &[],
        int_params: &["r", "m"],
        coeff_params: &[],
    },
    FamilyInfo {
        name: "kasami-welch",
        shape: "x^(2^(2r)-2^r+1)",
        printed_constraints: &["(r,m) = 1", "m odd"],
        errata: &[],
        int_params: &["r", "m"],
        coeff_params: &[],
    },
    FamilyInfo {
        name: "welch",
        shape: "x^(2^r+3)",
        printed_constraints: &["n = 2r+1"],
        errata: &["the published constraint names the degree n; it is read as m = 2r+1"],
        int_params: &["m", "(r)"],
        coeff_params: &[],
    },
    FamilyInfo {
        name: "niho",
        shape: "x^(2^r+2^(r/2)-1) for t even; x^(2^r+2^((3r+1)/2)-1) for t odd",
        printed_constraints: &["m = 2r+1", "t even (first form) / t odd (second form)"],
        errata: &[
            "the published branch condition is on t, which appears nowhere else in the row; \
             t is exposed as a raw parameter and defaults to r",
        ],
        int_params: &["m", "(r)", "(t)"],
        coeff_params: &[],
    },
    FamilyInfo {
        name: "inverse",
        shape: "x^(2^(2r)-1)",
        printed_constraints: &["m = 2r+1"],
        errata: &[],
        int_params: &["m", "(r)"],
        coeff_params: &[],
    },
    FamilyInfo {
        name: "dobbertin",
        shape: "x^(2^(4r)+2^(3r)+2^(2r)+2^r-1)",
        printed_constraints: &["m = 5r"],
        errata: &[],
        int_params: &["m", "(r)"],
        coeff_params: &[],
    },
    FamilyInfo {
        name: "family1",
        shape: "x^(2^i+1) + u*x^(2^(k+i)+2^(k(r-1)))",
        printed_constraints: &[
            "m = rk in {3k, 4k}",
            "(r,s) = (s,k) = (r,k) = 1",
            "r | (k+s)",
            "u is a (2^k-1)-th power in K",
        ],
        errata: &[
            "the published gcd constraints name s, which does not appear in the exponents; \
             the enforced conditions substitute i: (i,k) = (r,k) = (r,i) = 1 and r | (i+k)",
        ],
        int_params: &["i", "k", "r", "(m)"],
        coeff_params: &["u"],
    },
    FamilyInfo {
        name: "family2",
        shape: "u*x^(2^(-k)+2^(k+s)) + u^(2^k)*x^(2^s+1) + v*x^(2^(k+s)+2^s)",
        printed_constraints: &[
            "m = 3k",
            "(3,s) = (s,k) = (3,k) = 1",
            "uv != 1",
            "3 | (k+s)",
            "u is a (2^k-1)-th power",
        ],
        errata: &[],
        int_params: &["k", "s", "(m)"],
        coeff_params: &["u", "v"],
    },
    FamilyInfo {
        name: "family3",
        shape: "b*x^(2^s+1) + b^(2^k)*x^(2^(k+s)+2^k) + c*x^(2^k+1) \
                + sum_{j=1}^{k-1} r_j*x^(2^(j+k)+2^j)",
        printed_constraints: &["m = 2k", "r_j in GF(2^k)", "b, c not in GF(2^k)"],
        errata: &[
            "the published summation exponent reads 2^(j+k)+2^i with an index i foreign to \
             the sum; it is instantiated as 2^(j+k)+2^j",
        ],
        int_params: &["k", "s", "(m)"],
        coeff_params: &["b", "c", "r1..r(k-1)"],
    },
    FamilyInfo {
        name: "family4",
        shape: "x^3 + Tr(x^9)",
        printed_constraints: &[],
        errata: &[],
        int_params: &["m"],
        coeff_params: &[],
    },
    FamilyInfo {
        name: "family5",
        shape: "u^(2^k)*x^(2^(-k)+2^(k+s)) + u*x^(2^s+1) + v*x^(2^(k+s)+2^s)",
        printed_constraints: &[
            "m = 3k",
            "(3,s) = (s,k) = (3,k) = 1",
            "3 | (k+s)",
            "u primitive",
            "v in GF(2^k)",
        ],
        errata: &[],
        int_params: &["k", "s", "(m)"],
        coeff_params: &["u", "v"],
    },
    FamilyInfo {
        name: "family6",
        shape: "u^(2^k)*x^(2^(-k)+2^(k+s)) + u*x^(2^s+1) + v*x^(2^(-k)+1) \
                + w*u^(2^k+1)*x^(2^(k+s)+2^s)",
        printed_constraints: &[
            "m = 3k",
            "(3,s) = (s,k) = (3,k) = 1",
            "3 | (k+s)",
            "u primitive",
            "w, v in GF(2^k)",
            "wv != 1",
        ],
        errata: &[],
        int_params: &["k", "s", "(m)"],
        coeff_params: &["u", "v", "w"],
    },
];

pub fn family_info(name: &str) -> Result<&'static FamilyInfo> {
    FAMILIES
        .iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::UnknownFamily(name.to_string()))
}

/// A fully resolved catalog member: the field, the concrete polynomial, and
/// how its parameters were settled.
#[derive(Debug)]
pub struct CatalogInstance {
    pub family: &'static str,
    pub field: FieldCtx,
    pub spec: PolySpec,
    /// All integer parameters after derivation (always includes m).
    pub ints: BTreeMap<String, u64>,
    /// Coefficients in hex form, caller-supplied or found by scanning.
    pub coeffs: BTreeMap<String, String>,
    /// True when at least one coefficient was chosen by the APN scan.
    pub scanned: bool,
    /// Errata notes that applied to this instantiation.
    pub errata: Vec<String>,
}

/// The stock small parameter set for each family — the instances the test
/// battery checks for differential uniformity 2.
pub fn smallest_params(name: &str) -> Result<BTreeMap<String, u64>> {
    let ints: &[(&str, u64)] = match name {
        "gold" => &[("r", 1), ("m", 5)],
        "kasami-welch" => &[("r", 2), ("m", 5)],
        "welch" => &[("m", 5)],
        "niho" => &[("m", 5)],
        "inverse" => &[("m", 5)],
        "dobbertin" => &[("m", 5)],
        "family1" => &[("i", 1), ("k", 2), ("r", 3)],
        "family2" => &[("k", 2), ("s", 1)],
        "family3" => &[("k", 3), ("s", 1)],
        "family4" => &[("m", 7)],
        "family5" => &[("k", 2), ("s", 1)],
        "family6" => &[("k", 2), ("s", 1)],
        _ => return Err(Error::UnknownFamily(name.to_string())),
    };
    Ok(ints.iter().map(|&(k, v)| (k.to_string(), v)).collect())
}

/// Instantiate a family at concrete parameters. Integer parameters come in
/// `ints`; free coefficients come in `coeffs` as element literals (hex or
/// generator powers) and are scanned for an APN-making value when absent.
pub fn instantiate(
    name: &str,
    ints: &BTreeMap<String, u64>,
    coeffs: &BTreeMap<String, String>,
) -> Result<CatalogInstance> {
    let info = family_info(name)?;
    match info.name {
        "gold" => monomial_gcd_family(info, ints, false),
        "kasami-welch" => monomial_gcd_family(info, ints, true),
        "welch" => welch(info, ints),
        "niho" => niho(info, ints),
        "inverse" => inverse(info, ints),
        "dobbertin" => dobbertin(info, ints),
        "family1" => family1(info, ints, coeffs),
        "family2" => family2(info, ints, coeffs),
        "family3" => family3(info, ints, coeffs),
        "family4" => family4(info, ints),
        "family5" => family5(info, ints, coeffs),
        "family6" => family6(info, ints, coeffs),
        _ => unreachable!("family_info vetted the name"),
    }
}

fn get_int(ints: &BTreeMap<String, u64>, key: &'static str, family: &'static str) -> Result<u64> {
    ints.get(key)
        .copied()
        .ok_or(Error::MissingParameter(key, family))
}

fn violated(family: &str, constraint: &str) -> Error {
    Error::ConstraintViolated {
        family: family.to_string(),
        constraint: constraint.to_string(),
    }
}

fn degree_checked(m: u64, family: &str) -> Result<u32> {
    if !(1..=32).contains(&m) {
        return Err(Error::InvalidParameter(format!(
            "family {family}: degree m={m} outside the supported range 1..=32"
        )));
    }
    Ok(m as u32)
}

fn monomial_instance(
    info: &'static FamilyInfo,
    m: u64,
    exponent: u64,
    ints: BTreeMap<String, u64>,
) -> Result<CatalogInstance> {
    let field = FieldCtx::new(degree_checked(m, info.name)?)?;
    let spec = PolySpec::new(&field, vec![(field.one(), exponent)])?;
    Ok(CatalogInstance {
        family: info.name,
        field,
        spec,
        ints,
        coeffs: BTreeMap::new(),
        scanned: false,
        errata: info.errata.iter().map(|s| s.to_string()).collect(),
    })
}

/// Gold and Kasami-Welch: exponent families gated on gcd(r, m) = 1.
fn monomial_gcd_family(
    info: &'static FamilyInfo,
    ints: &BTreeMap<String, u64>,
    odd_degree: bool,
) -> Result<CatalogInstance> {
    let r = get_int(ints, "r", info.name)?;
    let m = get_int(ints, "m", info.name)?;
    if odd_degree && m % 2 == 0 {
        return Err(violated(info.name, "m odd"));
    }
    if intfactor::gcd_u64(r, m) != 1 {
        return Err(violated(info.name, "(r,m) = 1"));
    }
    if r >= 16 {
        return Err(Error::InvalidParameter(format!(
            "family {}: r={r} makes the exponent astronomically large",
            info.name
        )));
    }
    let exponent = if odd_degree {
        (1u64 << (2 * r)) - (1u64 << r) + 1
    } else {
        (1u64 << r) + 1
    };
    let resolved = BTreeMap::from([("r".to_string(), r), ("m".to_string(), m)]);
    monomial_instance(info, m, exponent, resolved)
}

/// Resolve (m, r) tied by m = c·r + d, accepting either or both.
fn resolve_linear(
    ints: &BTreeMap<String, u64>,
    family: &'static str,
    constraint: &'static str,
    c: u64,
    d: u64,
) -> Result<(u64, u64)> {
    match (ints.get("m").copied(), ints.get("r").copied()) {
        (Some(m), Some(r)) => {
            if m != c * r + d {
                return Err(violated(family, constraint));
            }
            Ok((m, r))
        }
        (Some(m), None) => {
            if m <= d || (m - d) % c != 0 {
                return Err(violated(family, constraint));
            }
            Ok((m, (m - d) / c))
        }
        (None, Some(r)) => Ok((c * r + d, r)),
        (None, None) => Err(Error::MissingParameter("m", family)),
    }
}

fn welch(info: &'static FamilyInfo, ints: &BTreeMap<String, u64>) -> Result<CatalogInstance> {
    let (m, r) = resolve_linear(ints, info.name, "n = 2r+1", 2, 1)?;
    let resolved = BTreeMap::from([("m".to_string(), m), ("r".to_string(), r)]);
    monomial_instance(info, m, (1u64 << r) + 3, resolved)
}

fn niho(info: &'static FamilyInfo, ints: &BTreeMap<String, u64>) -> Result<CatalogInstance> {
    let (m, r) = resolve_linear(ints, info.name, "m = 2r+1", 2, 1)?;
    let t = ints.get("t").copied().unwrap_or(r);
    let exponent = if t % 2 == 0 {
        if r % 2 != 0 {
            return Err(Error::InvalidParameter(format!(
                "family niho: the t-even form needs 2^(r/2) integral, but r={r} is odd"
            )));
        }
        (1u64 << r) + (1u64 << (r / 2)) - 1
    } else {
        if r % 2 == 0 {
            return Err(Error::InvalidParameter(format!(
                "family niho: the t-odd form needs 2^((3r+1)/2) integral, but r={r} is even"
            )));
        }
        (1u64 << r) + (1u64 << ((3 * r + 1) / 2)) - 1
    };
    let resolved = BTreeMap::from([
        ("m".to_string(), m),
        ("r".to_string(), r),
        ("t".to_string(), t),
    ]);
    monomial_instance(info, m, exponent, resolved)
}

fn inverse(info: &'static FamilyInfo, ints: &BTreeMap<String, u64>) -> Result<CatalogInstance> {
    let (m, r) = resolve_linear(ints, info.name, "m = 2r+1", 2, 1)?;
    let resolved = BTreeMap::from([("m".to_string(), m), ("r".to_string(), r)]);
    monomial_instance(info, m, (1u64 << (2 * r)) - 1, resolved)
}

fn dobbertin(info: &'static FamilyInfo, ints: &BTreeMap<String, u64>) -> Result<CatalogInstance> {
    let (m, r) = resolve_linear(ints, info.name, "m = 5r", 5, 0)?;
    let e = (1u64 << (4 * r)) + (1u64 << (3 * r)) + (1u64 << (2 * r)) + (1u64 << r) - 1;
    let resolved = BTreeMap::from([("m".to_string(), m), ("r".to_string(), r)]);
    monomial_instance(info, m, e, resolved)
}

fn family4(info: &'static FamilyInfo, ints: &BTreeMap<String, u64>) -> Result<CatalogInstance> {
    let m = get_int(ints, "m", info.name)?;
    let md = degree_checked(m, info.name)?;
    let field = FieldCtx::new(md)?;
    // Tr(x^9) expanded over this particular field: sum of (x^9)^(2^j).
    let mut terms = vec![(field.one(), 3u64)];
    for j in 0..md {
        terms.push((field.one(), 9u64 << j));
    }
    let spec = PolySpec::sum_of_terms(&field, terms)?;
    Ok(CatalogInstance {
        family: info.name,
        field,
        spec,
        ints: BTreeMap::from([("m".to_string(), m)]),
        coeffs: BTreeMap::new(),
        scanned: false,
        errata: Vec::new(),
    })
}

/// Shared machinery for families with free coefficients: build the
/// PolySpec from named coefficients, either the caller's values (validated)
/// or the first combination in a deterministic candidate stream that
/// yields differential uniformity 2.
struct CoeffSearch<'a> {
    info: &'static FamilyInfo,
    field: &'a FieldCtx,
    /// Candidate lists per coefficient name, in scan order.
    candidates: Vec<(&'static str, Vec<FieldElem>)>,
    /// Extra joint admissibility requirement (e.g. uv != 1), with the
    /// printed constraint it enforces.
    joint: Option<(&'static str, Box<dyn Fn(&BTreeMap<String, FieldElem>) -> bool + 'a>)>,
}

impl<'a> CoeffSearch<'a> {
    /// Resolve coefficients: caller-supplied values are parsed, validated
    /// against their candidate predicate, and checked jointly; unspecified
    /// ones are scanned (cartesian, rightmost fastest) for the first
    /// combination making `build` an APN function.
    fn resolve(
        self,
        supplied: &BTreeMap<String, String>,
        build: impl Fn(&BTreeMap<String, FieldElem>) -> Result<PolySpec>,
    ) -> Result<(BTreeMap<String, FieldElem>, PolySpec, bool)> {
        let mut fixed: BTreeMap<String, FieldElem> = BTreeMap::new();
        let mut open: Vec<(&'static str, Vec<FieldElem>)> = Vec::new();
        for (name, candidates) in self.candidates {
            if let Some(text) = supplied.get(name) {
                let v = self.field.parse_elem(text)?;
                if !candidates.iter().any(|c| *c == v) {
                    return Err(Error::InvalidParameter(format!(
                        "family {}: supplied {name}={text} violates its admissibility condition",
                        self.info.name
                    )));
                }
                fixed.insert(name.to_string(), v);
            } else {
                open.push((name, candidates));
            }
        }
        let joint_ok = |vals: &BTreeMap<String, FieldElem>| match &self.joint {
            Some((_, f)) => f(vals),
            None => true,
        };
        if open.is_empty() {
            if !joint_ok(&fixed) {
                let (constraint, _) = self.joint.as_ref().expect("joint check failed");
                return Err(violated(self.info.name, constraint));
            }
            let spec = build(&fixed)?;
            return Ok((fixed, spec, false));
        }
        if self.field.degree() > 16 {
            return Err(Error::InvalidParameter(format!(
                "family {}: coefficient scan is limited to m <= 16; supply {} explicitly",
                self.info.name,
                open.iter().map(|(n, _)| *n).collect::<Vec<_>>().join(", ")
            )));
        }
        // Odometer over the open coefficient lists.
        let mut idx = vec![0usize; open.len()];
        loop {
            let mut vals = fixed.clone();
            for (slot, (name, cands)) in idx.iter().zip(&open) {
                vals.insert(name.to_string(), cands[*slot].clone());
            }
            if joint_ok(&vals) {
                let spec = build(&vals)?;
                if differential_uniformity(&spec, self.field)?.du == 2 {
                    return Ok((vals, spec, true));
                }
            }
            // Advance, rightmost fastest.
            let mut pos = open.len();
            loop {
                if pos == 0 {
                    return Err(Error::InvalidParameter(format!(
                        "family {}: no coefficient assignment in the scan range is APN over \
                         GF(2^{})",
                        self.info.name,
                        self.field.degree()
                    )));
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < open[pos].1.len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }
}

/// All (2^k−1)-th powers in the field, identity last, deterministic order.
fn subgroup_of_kth_powers(field: &FieldCtx, k: u32) -> Vec<FieldElem> {
    let order = (1u64 << field.degree()) - 1;
    let step = (1u64 << k) - 1;
    debug_assert_eq!(order % step, 0, "k must divide the degree");
    let g = field.generator();
    (1..=order / step).map(|j| g.pow(j * step)).collect()
}

/// All primitive elements, as generator powers with exponent coprime to the
/// group order, in increasing exponent order.
fn primitive_elements(field: &FieldCtx) -> Vec<FieldElem> {
    let order = (1u64 << field.degree()) - 1;
    let g = field.generator();
    (1..order)
        .filter(|j| intfactor::gcd_u64(*j, order) == 1)
        .map(|j| g.pow(j))
        .collect()
}

/// The subfield GF(2^k) inside the field: zero, then the powers of the
/// subgroup generator.
fn subfield_elements(field: &FieldCtx, k: u32) -> Vec<FieldElem> {
    let order = (1u64 << field.degree()) - 1;
    let sub_order = (1u64 << k) - 1;
    debug_assert_eq!(order % sub_order, 0);
    let h = field.generator().pow(order / sub_order);
    let mut out = vec![field.zero()];
    let mut acc = field.one();
    for _ in 0..sub_order {
        out.push(acc.clone());
        acc = acc.mul_elem(&h);
    }
    out
}

/// Everything off the GF(2^k) subfield, in field enumeration order.
fn non_subfield_elements(field: &FieldCtx, k: u32) -> Result<Vec<FieldElem>> {
    let mut out = Vec::new();
    for e in field.elements()? {
        if !e.is_in_subfield(k)? {
            out.push(e);
        }
    }
    Ok(out)
}

fn coeffs_to_hex(vals: &BTreeMap<String, FieldElem>) -> BTreeMap<String, String> {
    vals.iter().map(|(k, v)| (k.clone(), v.to_hex())).collect()
}

fn family1(
    info: &'static FamilyInfo,
    ints: &BTreeMap<String, u64>,
    coeffs: &BTreeMap<String, String>,
) -> Result<CatalogInstance> {
    let i = get_int(ints, "i", info.name)?;
    let k = get_int(ints, "k", info.name)?;
    let r = get_int(ints, "r", info.name)?;
    let m = r * k;
    if let Some(given) = ints.get("m") {
        if *given != m {
            return Err(violated(info.name, "m = rk in {3k, 4k}"));
        }
    }
    if r != 3 && r != 4 {
        return Err(violated(info.name, "m = rk in {3k, 4k}"));
    }
    // Errata-amended gcd row: i substituted for the phantom s.
    if intfactor::gcd_u64(i, k) != 1
        || intfactor::gcd_u64(r, k) != 1
        || intfactor::gcd_u64(r, i) != 1
    {
        return Err(violated(info.name, "(r,s) = (s,k) = (r,k) = 1 [read with s = i]"));
    }
    if (i + k) % r != 0 {
        return Err(violated(info.name, "r | (k+s) [read with s = i]"));
    }
    let md = degree_checked(m, info.name)?;
    let field = FieldCtx::new(md)?;
    let e1 = (1u64 << i) + 1;
    let e2 = (1u64 << (k + i)) + (1u64 << (k * (r - 1)));
    let one = field.one();
    let search = CoeffSearch {
        info,
        field: &field,
        candidates: vec![("u", subgroup_of_kth_powers(&field, k as u32))],
        joint: None,
    };
    let (vals, spec, scanned) = search.resolve(coeffs, |vals| {
        let u = vals["u"].clone();
        PolySpec::sum_of_terms(&field, vec![(one.clone(), e1), (u, e2)])
    })?;
    let resolved = BTreeMap::from([
        ("i".to_string(), i),
        ("k".to_string(), k),
        ("r".to_string(), r),
        ("m".to_string(), m),
    ]);
    Ok(CatalogInstance {
        family: info.name,
        field: field.clone(),
        spec,
        ints: resolved,
        coeffs: coeffs_to_hex(&vals),
        scanned,
        errata: info.errata.iter().map(|s| s.to_string()).collect(),
    })
}

/// Shared constraint gate for the m = 3k families (2, 5, 6).
fn three_k_gate(info: &'static FamilyInfo, ints: &BTreeMap<String, u64>) -> Result<(u64, u64, u64)> {
    let k = get_int(ints, "k", info.name)?;
    let s = get_int(ints, "s", info.name)?;
    let m = 3 * k;
    if let Some(given) = ints.get("m") {
        if *given != m {
            return Err(violated(info.name, "m = 3k"));
        }
    }
    if intfactor::gcd_u64(3, s) != 1 || intfactor::gcd_u64(s, k) != 1 || intfactor::gcd_u64(3, k) != 1
    {
        return Err(violated(info.name, "(3,s) = (s,k) = (3,k) = 1"));
    }
    if (k + s) % 3 != 0 {
        return Err(violated(info.name, "3 | (k+s)"));
    }
    Ok((k, s, m))
}

fn family2(
    info: &'static FamilyInfo,
    ints: &BTreeMap<String, u64>,
    coeffs: &BTreeMap<String, String>,
) -> Result<CatalogInstance> {
    let (k, s, m) = three_k_gate(info, ints)?;
    let md = degree_checked(m, info.name)?;
    let field = FieldCtx::new(md)?;
    let e_inv = 1u64 << (m - k); // 2^(-k) as an exponent on this field
    let e1 = e_inv + (1u64 << (k + s));
    let e2 = (1u64 << s) + 1;
    let e3 = (1u64 << (k + s)) + (1u64 << s);
    let search = CoeffSearch {
        info,
        field: &field,
        candidates: vec![
            ("u", subgroup_of_kth_powers(&field, k as u32)),
            ("v", field.elements()?.collect()),
        ],
        joint: Some((
            "uv != 1",
            Box::new(|vals: &BTreeMap<String, FieldElem>| {
                !vals["u"].mul_elem(&vals["v"]).is_one()
            }),
        )),
    };
    let (vals, spec, scanned) = search.resolve(coeffs, |vals| {
        let u = vals["u"].clone();
        let v = vals["v"].clone();
        PolySpec::sum_of_terms(
            &field,
            vec![
                (u.clone(), e1),
                (u.frobenius(k as u32), e2),
                (v, e3),
            ],
        )
    })?;
    Ok(CatalogInstance {
        family: info.name,
        field: field.clone(),
        spec,
        ints: BTreeMap::from([
            ("k".to_string(), k),
            ("s".to_string(), s),
            ("m".to_string(), m),
        ]),
        coeffs: coeffs_to_hex(&vals),
        scanned,
        errata: Vec::new(),
    })
}

fn family3(
    info: &'static FamilyInfo,
    ints: &BTreeMap<String, u64>,
    coeffs: &BTreeMap<String, String>,
) -> Result<CatalogInstance> {
    let k = get_int(ints, "k", info.name)?;
    let s = get_int(ints, "s", info.name)?;
    let m = 2 * k;
    if let Some(given) = ints.get("m") {
        if *given != m {
            return Err(violated(info.name, "m = 2k"));
        }
    }
    let md = degree_checked(m, info.name)?;
    let field = FieldCtx::new(md)?;
    let kk = k as u32;
    // r_1 .. r_(k-1) must sit in GF(2^k); absent ones default to zero
    // rather than being scanned (the subfield grows too fast to sweep).
    let mut r_vals: Vec<FieldElem> = Vec::new();
    for j in 1..k {
        let key = format!("r{j}");
        let v = match coeffs.get(&key) {
            Some(text) => {
                let v = field.parse_elem(text)?;
                if !v.is_in_subfield(kk)? {
                    return Err(violated(info.name, "r_j in GF(2^k)"));
                }
                v
            }
            None => field.zero(),
        };
        r_vals.push(v);
    }
    let e1 = (1u64 << s) + 1;
    let e2 = (1u64 << (k + s)) + (1u64 << k);
    let e3 = (1u64 << k) + 1;
    let search = CoeffSearch {
        info,
        field: &field,
        candidates: vec![
            ("b", non_subfield_elements(&field, kk)?),
            ("c", non_subfield_elements(&field, kk)?),
        ],
        joint: None,
    };
    let r_terms: Vec<(FieldElem, u64)> = r_vals
        .iter()
        .enumerate()
        .map(|(jm1, rj)| {
            let j = jm1 as u64 + 1;
            (rj.clone(), (1u64 << (j + k)) + (1u64 << j))
        })
        .collect();
    let (vals, spec, scanned) = search.resolve(coeffs, |vals| {
        let b = vals["b"].clone();
        let c = vals["c"].clone();
        let mut terms = vec![
            (b.clone(), e1),
            (b.frobenius(kk), e2),
            (c, e3),
        ];
        terms.extend(r_terms.iter().cloned());
        PolySpec::sum_of_terms(&field, terms)
    })?;
    let mut hex = coeffs_to_hex(&vals);
    for (j, rv) in r_vals.iter().enumerate() {
        if !rv.is_zero() {
            hex.insert(format!("r{}", j + 1), rv.to_hex());
        }
    }
    Ok(CatalogInstance {
        family: info.name,
        field: field.clone(),
        spec,
        ints: BTreeMap::from([
            ("k".to_string(), k),
            ("s".to_string(), s),
            ("m".to_string(), m),
        ]),
        coeffs: hex,
        scanned,
        errata: info.errata.iter().map(|s| s.to_string()).collect(),
    })
}

fn family5(
    info: &'static FamilyInfo,
    ints: &BTreeMap<String, u64>,
    coeffs: &BTreeMap<String, String>,
) -> Result<CatalogInstance> {
    let (k, s, m) = three_k_gate(info, ints)?;
    let md = degree_checked(m, info.name)?;
    let field = FieldCtx::new(md)?;
    let kk = k as u32;
    let e_inv = 1u64 << (m - k);
    let e1 = e_inv + (1u64 << (k + s));
    let e2 = (1u64 << s) + 1;
    let e3 = (1u64 << (k + s)) + (1u64 << s);
    let search = CoeffSearch {
        info,
        field: &field,
        candidates: vec![
            ("u", primitive_elements(&field)),
            ("v", subfield_elements(&field, kk)),
        ],
        joint: None,
    };
    let (vals, spec, scanned) = search.resolve(coeffs, |vals| {
        let u = vals["u"].clone();
        let v = vals["v"].clone();
        PolySpec::sum_of_terms(
            &field,
            vec![
                (u.frobenius(kk), e1),
                (u.clone(), e2),
                (v, e3),
            ],
        )
    })?;
    Ok(CatalogInstance {
        family: info.name,
        field: field.clone(),
        spec,
        ints: BTreeMap::from([
            ("k".to_string(), k),
            ("s".to_string(), s),
            ("m".to_string(), m),
        ]),
        coeffs: coeffs_to_hex(&vals),
        scanned,
        errata: Vec::new(),
    })
}

fn family6(
    info: &'static FamilyInfo,
    ints: &BTreeMap<String, u64>,
    coeffs: &BTreeMap<String, String>,
) -> Result<CatalogInstance> {
    let (k, s, m) = three_k_gate(info, ints)?;
    let md = degree_checked(m, info.name)?;
    let field = FieldCtx::new(md)?;
    let kk = k as u32;
    let e_inv = 1u64 << (m - k);
    let e1 = e_inv + (1u64 << (k + s));
    let e2 = (1u64 << s) + 1;
    let e3 = e_inv + 1;
    let e4 = (1u64 << (k + s)) + (1u64 << s);
    let search = CoeffSearch {
        info,
        field: &field,
        candidates: vec![
            ("u", primitive_elements(&field)),
            ("v", subfield_elements(&field, kk)),
            ("w", subfield_elements(&field, kk)),
        ],
        joint: Some((
            "wv != 1",
            Box::new(|vals: &BTreeMap<String, FieldElem>| {
                !vals["w"].mul_elem(&vals["v"]).is_one()
            }),
        )),
    };
    let (vals, spec, scanned) = search.resolve(coeffs, |vals| {
        let u = vals["u"].clone();
        let v = vals["v"].clone();
        let w = vals["w"].clone();
        let u_k = u.frobenius(kk);
        let w_coeff = w.mul_elem(&u_k.mul_elem(&u)); // w·u^(2^k+1)
        PolySpec::sum_of_terms(
            &field,
            vec![
                (u_k.clone(), e1),
                (u.clone(), e2),
                (v, e3),
                (w_coeff, e4),
            ],
        )
    })?;
    Ok(CatalogInstance {
        family: info.name,
        field: field.clone(),
        spec,
        ints: BTreeMap::from([
            ("k".to_string(), k),
            ("s".to_string(), s),
            ("m".to_string(), m),
        ]),
        coeffs: coeffs_to_hex(&vals),
        scanned,
        errata: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::QuadFunction;

    fn ints(pairs: &[(&str, u64)]) -> BTreeMap<String, u64> {
        pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
    }

    fn coeffs(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
        pairs
            .iter()
            .map(|&(k, v)| (k.to_string(), v.to_string()))
            .collect()
    }

    #[test]
    fn gold_instance_matches_the_published_exponent() {
        let inst = instantiate("gold", &ints(&[("r", 2), ("m", 5)]), &coeffs(&[])).unwrap();
        assert_eq!(inst.spec.terms().len(), 1);
        assert_eq!(inst.spec.terms()[0].1, 5);
        assert_eq!(inst.ints["m"], 5);
    }

    #[test]
    fn kasami_rejects_even_degree() {
        let err = instantiate("kasami-welch", &ints(&[("r", 2), ("m", 4)]), &coeffs(&[]))
            .unwrap_err();
        match err {
            Error::ConstraintViolated { constraint, .. } => assert_eq!(constraint, "m odd"),
            other => panic!("wrong error: {other}"),
        }
    }

    #[test]
    fn gold_rejects_shared_factor_with_degree() {
        assert!(matches!(
            instantiate("gold", &ints(&[("r", 2), ("m", 4)]), &coeffs(&[])),
            Err(Error::ConstraintViolated { .. })
        ));
    }

    #[test]
    fn monomial_smallest_instances_are_all_apn() {
        for name in ["gold", "kasami-welch", "welch", "niho", "inverse", "dobbertin"] {
            let inst = instantiate(name, &smallest_params(name).unwrap(), &coeffs(&[])).unwrap();
            let du = differential_uniformity(&inst.spec, &inst.field).unwrap();
            assert_eq!(du.du, 2, "{name} smallest instance is not APN");
        }
    }

    #[test]
    fn welch_and_inverse_derive_their_exponents_from_m() {
        let welch = instantiate("welch", &ints(&[("m", 5)]), &coeffs(&[])).unwrap();
        assert_eq!(welch.spec.terms()[0].1, 7);
        let inverse = instantiate("inverse", &ints(&[("m", 5)]), &coeffs(&[])).unwrap();
        assert_eq!(inverse.spec.terms()[0].1, 15);
        let dobbertin = instantiate("dobbertin", &ints(&[("m", 5)]), &coeffs(&[])).unwrap();
        assert_eq!(dobbertin.spec.terms()[0].1, 29);
    }

    #[test]
    fn niho_branches_on_the_parity_of_t() {
        let even = instantiate("niho", &ints(&[("m", 5)]), &coeffs(&[])).unwrap();
        assert_eq!(even.spec.terms()[0].1, 5); // 2^2 + 2^1 - 1
        let odd = instantiate("niho", &ints(&[("m", 7)]), &coeffs(&[])).unwrap();
        assert_eq!(odd.spec.terms()[0].1, 39); // 2^3 + 2^5 - 1
        // Asking for the even form at odd r is not instantiable.
        assert!(instantiate("niho", &ints(&[("m", 7), ("t", 2)]), &coeffs(&[])).is_err());
    }

    #[test]
    fn welch_checks_the_degree_relation_when_overdetermined() {
        assert!(matches!(
            instantiate("welch", &ints(&[("m", 6), ("r", 2)]), &coeffs(&[])),
            Err(Error::ConstraintViolated { .. })
        ));
        assert!(matches!(
            instantiate("welch", &ints(&[("m", 6)]), &coeffs(&[])),
            Err(Error::ConstraintViolated { .. })
        ));
    }

    #[test]
    fn trace_family_expands_per_field() {
        let inst = instantiate("family4", &ints(&[("m", 4)]), &coeffs(&[])).unwrap();
        let exps: Vec<u64> = inst.spec.terms().iter().map(|(_, e)| *e).collect();
        assert_eq!(exps, vec![3, 9, 18, 36, 72]);
        // The trace part maps into GF(2): f(x) + x³ is 0 or 1 everywhere.
        for x in inst.field.elements().unwrap() {
            let tr = inst.spec.eval(&x).add_elem(&x.pow(3));
            assert!(tr.is_zero() || tr.is_one());
        }
    }

    #[test]
    fn trace_family_is_apn_at_the_stock_degree() {
        let inst = instantiate("family4", &smallest_params("family4").unwrap(), &coeffs(&[]))
            .unwrap();
        let du = differential_uniformity(&inst.spec, &inst.field).unwrap();
        assert_eq!(du.du, 2);
        // And it is quadratic: the difference count agrees.
        let qf = QuadFunction::from_poly_spec(&inst.spec).unwrap();
        let count = super::super::count_points_off_diagonal(&qf, &inst.field).unwrap();
        assert_eq!(count.count, 0);
    }

    #[test]
    fn family1_reproduces_the_degree_12_exponents() {
        let inst = instantiate(
            "family1",
            &ints(&[("i", 1), ("k", 3), ("r", 4)]),
            &coeffs(&[("u", "a^7")]),
        )
        .unwrap();
        assert_eq!(inst.ints["m"], 12);
        let exps: Vec<u64> = inst.spec.terms().iter().map(|(_, e)| *e).collect();
        assert_eq!(exps, vec![3, 528]); // 2^4 + 2^9 = 528
        assert!(!inst.scanned);
    }

    #[test]
    fn family1_rejects_a_non_kth_power_coefficient() {
        // a itself is not a 7th power in GF(2^12)*.
        assert!(instantiate(
            "family1",
            &ints(&[("i", 1), ("k", 3), ("r", 4)]),
            &coeffs(&[("u", "a^1")]),
        )
        .is_err());
    }

    #[test]
    fn family1_constraint_gates_fire() {
        // gcd(i, k) = 2
        assert!(matches!(
            instantiate("family1", &ints(&[("i", 2), ("k", 2), ("r", 3)]), &coeffs(&[])),
            Err(Error::ConstraintViolated { .. })
        ));
        // r must be 3 or 4
        assert!(matches!(
            instantiate("family1", &ints(&[("i", 1), ("k", 2), ("r", 5)]), &coeffs(&[])),
            Err(Error::ConstraintViolated { .. })
        ));
        // r must divide i + k
        assert!(matches!(
            instantiate("family1", &ints(&[("i", 1), ("k", 3), ("r", 3)]), &coeffs(&[])),
            Err(Error::ConstraintViolated { .. })
        ));
    }

    #[test]
    fn family1_scan_finds_an_apn_coefficient() {
        let inst = instantiate("family1", &smallest_params("family1").unwrap(), &coeffs(&[]))
            .unwrap();
        assert!(inst.scanned);
        assert!(inst.coeffs.contains_key("u"));
        let du = differential_uniformity(&inst.spec, &inst.field).unwrap();
        assert_eq!(du.du, 2);
    }

    #[test]
    fn family2_scan_finds_an_apn_instance() {
        let inst = instantiate("family2", &smallest_params("family2").unwrap(), &coeffs(&[]))
            .unwrap();
        let du = differential_uniformity(&inst.spec, &inst.field).unwrap();
        assert_eq!(du.du, 2, "family2 scan failed; coeffs {:?}", inst.coeffs);
    }

    #[test]
    fn family3_scan_finds_an_apn_instance() {
        let inst = instantiate("family3", &smallest_params("family3").unwrap(), &coeffs(&[]))
            .unwrap();
        let du = differential_uniformity(&inst.spec, &inst.field).unwrap();
        assert_eq!(du.du, 2, "family3 scan failed; coeffs {:?}", inst.coeffs);
    }

    #[test]
    fn family5_scan_finds_an_apn_instance() {
        let inst = instantiate("family5", &smallest_params("family5").unwrap(), &coeffs(&[]))
            .unwrap();
        let du = differential_uniformity(&inst.spec, &inst.field).unwrap();
        assert_eq!(du.du, 2, "family5 scan failed; coeffs {:?}", inst.coeffs);
    }

    #[test]
    fn family6_scan_finds_an_apn_instance() {
        let inst = instantiate("family6", &smallest_params("family6").unwrap(), &coeffs(&[]))
            .unwrap();
        let du = differential_uniformity(&inst.spec, &inst.field).unwrap();
        assert_eq!(du.du, 2, "family6 scan failed; coeffs {:?}", inst.coeffs);
    }

    #[test]
    fn family2_rejects_uv_equal_one() {
        // u = a^63 is the identity-adjacent cube... pick u, then v = u^(-1).
        let field = FieldCtx::new(6).unwrap();
        let u = field.generator().pow(3); // a cube, hence a (2^2-1)-th power
        let v = u.inverse().unwrap();
        let err = instantiate(
            "family2",
            &ints(&[("k", 2), ("s", 1)]),
            &coeffs(&[("u", &u.to_hex()), ("v", &v.to_hex())]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::ConstraintViolated { .. }), "{err}");
    }

    #[test]
    fn family3_rejects_subfield_b() {
        // b inside GF(2^3) violates its admissibility in GF(2^6).
        let field = FieldCtx::new(6).unwrap();
        let b = field.generator().pow(9); // a^9 = a^((64-1)/7 * 1) lies in GF(2^3)
        let err = instantiate(
            "family3",
            &ints(&[("k", 3), ("s", 1)]),
            &coeffs(&[("b", &b.to_hex()), ("c", "a^1")]),
        );
        assert!(err.is_err());
    }

    #[test]
    fn family5_requires_a_primitive_u() {
        // a^3 generates a proper subgroup of GF(2^6)*.
        let err = instantiate(
            "family5",
            &ints(&[("k", 2), ("s", 1)]),
            &coeffs(&[("u", "a^3"), ("v", "0x0")]),
        );
        assert!(err.is_err());
    }

    #[test]
    fn unknown_family_and_missing_parameters_error_cleanly() {
        assert!(matches!(
            instantiate("golde", &ints(&[]), &coeffs(&[])),
            Err(Error::UnknownFamily(_))
        ));
        assert!(matches!(
            instantiate("gold", &ints(&[("r", 1)]), &coeffs(&[])),
            Err(Error::MissingParameter("m", "gold"))
        ));
    }

    #[test]
    fn catalog_lists_all_twelve_families() {
        assert_eq!(FAMILIES.len(), 12);
        for info in FAMILIES {
            assert!(family_info(info.name).is_ok());
            assert!(smallest_params(info.name).is_ok());
        }
    }
}
