//! Command-line front end.  Parses fields, elements, and polynomials from
//! text, dispatches to the library, and emits versioned JSON reports.
//!
//! Exit codes: 0 for any computed result (Undetermined included), 2 for
//! usage and input errors, 3 when a size or search cap stopped the
//! computation before it could finish.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use apnforge::apn::{classify, normalize_binomial, Budget, QuadBinomial};
use apnforge::bipoly::{BiPoly, ProjPoint};
use apnforge::gf2m::{parse_modulus_hex, FieldCtx, FieldElem};
use apnforge::sweep::{run_sweep, SweepSpec};
use apnforge::unipoly::{factor_with_rng, is_irreducible, FactorRng, UniPoly, DEFAULT_SEED};
use apnforge::verify::catalog::{self, CatalogInstance};
use apnforge::verify::{
    count_points_off_diagonal, differential_uniformity, hexanomial_ratio, weil_growth_probe,
    PolySpec, QuadFunction,
};
use apnforge::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

const SCHEMA: &str = "apnforge/1";

#[derive(Parser)]
#[command(
    name = "apnforge",
    version,
    about = "APN analysis of quadratic binomials over binary fields",
    max_term_width = 100
)]
struct Cli {
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Include wall-clock timings in reports.  Off by default so that
    /// identical invocations produce byte-identical output.
    #[arg(long, global = true)]
    timings: bool,
    /// Seed for randomized factoring steps and sweep sampling.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

/// Field argument: "m" for the built-in modulus or "m:0xHEX" to choose one.
#[derive(Args)]
struct FieldArg {
    #[arg(long, value_name = "M[:0xHEX]")]
    field: String,
}

impl FieldArg {
    fn build(&self) -> Result<FieldCtx, Error> {
        parse_field(&self.field)
    }
}

/// The four binomial parameters: f(x) = x^(2^i+1) + delta*x^(2^s(2^t+1)).
#[derive(Args)]
struct BinomialArgs {
    #[arg(long)]
    i: u32,
    #[arg(long)]
    s: u32,
    #[arg(long)]
    t: u32,
    /// Coefficient of the second monomial: hex bits ("0x1d"), a decimal
    /// bit pattern, or a generator power ("a^374").
    #[arg(long)]
    delta: String,
}

impl BinomialArgs {
    fn build(&self, ctx: &FieldCtx) -> Result<QuadBinomial, Error> {
        let delta = ctx.parse_elem(&self.delta)?;
        QuadBinomial::new(ctx, self.i, self.s, self.t, delta)
    }
}

#[derive(Args)]
struct BudgetArgs {
    /// How many witness substitutions y = x^2 + beta*x + 1 to try.
    #[arg(long, default_value_t = Budget::default().max_beta_trials)]
    max_beta_trials: u64,
    /// Skip specialization scans whose degree would exceed this.
    #[arg(long, default_value_t = Budget::default().max_specialization_degree)]
    max_spec_degree: u64,
}

impl BudgetArgs {
    fn build(&self) -> Budget {
        Budget {
            max_beta_trials: self.max_beta_trials,
            max_specialization_degree: self.max_spec_degree,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the binomial can be APN on infinitely many extensions.
    Classify {
        #[command(flatten)]
        field: FieldArg,
        #[command(flatten)]
        binomial: BinomialArgs,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Differential uniformity of a function given by explicit terms.
    Du {
        #[command(flatten)]
        field: FieldArg,
        /// A term "coeff:exp", repeatable; e.g. --term 1:3 --term a^374:36.
        #[arg(long = "term", value_name = "COEFF:EXP", required = true)]
        terms: Vec<String>,
    },
    /// Count off-diagonal zeros of the difference polynomial, optionally in
    /// an extension of the coefficient field.
    CountPoints {
        #[command(flatten)]
        field: FieldArg,
        #[command(flatten)]
        binomial: BinomialArgs,
        /// Extension degree over the coefficient field.
        #[arg(long, default_value_t = 1)]
        ext: u32,
    },
    /// Build the curve tower Delta, F, U, H for a binomial — given either in
    /// normal form (--i/--s/--t/--delta) or as a raw pair of monomials
    /// (--c1/--e1/--c2/--e2), which is normalized first.
    Construct {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long, requires_all = ["s", "t", "delta"], conflicts_with_all = ["c1", "e1", "c2", "e2"])]
        i: Option<u32>,
        #[arg(long)]
        s: Option<u32>,
        #[arg(long)]
        t: Option<u32>,
        #[arg(long)]
        delta: Option<String>,
        #[arg(long, requires_all = ["e1", "c2", "e2"])]
        c1: Option<String>,
        #[arg(long)]
        e1: Option<u64>,
        #[arg(long)]
        c2: Option<String>,
        #[arg(long)]
        e2: Option<u64>,
    },
    /// Test a univariate polynomial for irreducibility.
    Irreducible {
        #[command(flatten)]
        field: FieldArg,
        /// Polynomial in x, e.g. "x^53 + a^5*x^2 + 0x2f".
        #[arg(long)]
        poly: String,
    },
    /// Factor a univariate polynomial into monic irreducibles.
    Factor {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        poly: String,
    },
    /// Multiplicities of points on the curve H attached to a binomial.
    Multiplicity {
        #[command(flatten)]
        field: FieldArg,
        #[command(flatten)]
        binomial: BinomialArgs,
        /// A point "x:y" (affine) or "x:y:z" (projective).
        #[arg(long, conflicts_with = "infinity_table")]
        point: Option<String>,
        /// Report every point at infinity with predicted and computed values.
        #[arg(long)]
        infinity_table: bool,
    },
    /// The published APN families: list them, or instantiate one.
    Catalog {
        /// Family name; omit to list every family at its smallest size.
        #[arg(long)]
        family: Option<String>,
        /// Integer parameter "name=value", repeatable.
        #[arg(long = "param", value_name = "NAME=VALUE")]
        params: Vec<String>,
        /// Coefficient "name=element", repeatable; omitted coefficients are
        /// searched for automatically.
        #[arg(long = "coeff", value_name = "NAME=ELEMENT")]
        coeffs: Vec<String>,
        /// Use the smallest published parameters for the chosen family.
        #[arg(long)]
        smallest: bool,
        /// Also measure differential uniformity (always on when listing).
        #[arg(long)]
        du: bool,
    },
    /// Fraction of irreducible members in the hexanomial family attached to
    /// the Kasami-Welch exponent 2^(2k) - 2^k + 1.
    Hexratio {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        i: u32,
    },
    /// Count off-diagonal zeros across an extension tower and report the
    /// first degree where they appear.
    WeilProbe {
        #[command(flatten)]
        field: FieldArg,
        #[command(flatten)]
        binomial: BinomialArgs,
        /// First extension degree to probe.
        #[arg(long, default_value_t = 1)]
        from: u32,
        /// Last extension degree to probe (inclusive).
        #[arg(long)]
        to: u32,
    },
    /// The full worked analysis of x^3 + a^374*x^36 over GF(2^10).
    Example2,
    /// Classify a grid of binomials and tally the verdicts.
    Sweep {
        /// Comma-separated fields, each "m" or "m:0xHEX".
        #[arg(long, value_name = "F1,F2,...")]
        fields: String,
        /// Range "a..b" (inclusive) or a single value.
        #[arg(long, default_value = "1..1")]
        i: String,
        #[arg(long, default_value = "1..1")]
        s: String,
        #[arg(long, default_value = "1..1")]
        t: String,
        /// Random nonzero delta values drawn per (field, i, s, t) cell.
        #[arg(long, default_value_t = 1)]
        delta_samples: u32,
        #[arg(long, value_enum, default_value_t = SweepFormat::Json)]
        format: SweepFormat,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepFormat {
    Json,
    Csv,
}

fn main() {
    if let Ok(text) = std::env::var("APNFORGE_THREADS") {
        if let Ok(n) = text.parse::<usize>() {
            if n > 0 {
                // Ignore failure: the global pool can only be set once.
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code(&e));
        }
    }
}

/// Caps and exhausted search budgets exit 3; everything else that fails is
/// a usage or input problem and exits 2.
fn exit_code(e: &Error) -> i32 {
    match e {
        Error::FieldTooLarge(..) | Error::ExponentCap(..) | Error::BudgetExhausted(..) => 3,
        _ => 2,
    }
}

fn run(cli: &Cli) -> Result<(), Error> {
    let payload = match &cli.command {
        Command::Classify { field, binomial, budget } => {
            let ctx = field.build()?;
            let f = binomial.build(&ctx)?;
            let report = classify(&f, &budget.build())?;
            json!({ "command": "classify", "report": report })
        }
        Command::Du { field, terms } => {
            let ctx = field.build()?;
            let spec = parse_terms(&ctx, terms)?;
            let mut result = differential_uniformity(&spec, &ctx)?;
            if !cli.timings {
                result.elapsed_ms = None;
            }
            json!({
                "command": "du",
                "function": spec.to_string(),
                "apn": result.is_apn(),
                "result": result,
            })
        }
        Command::CountPoints { field, binomial, ext } => {
            let ctx = field.build()?;
            let f = binomial.build(&ctx)?;
            let ambient = extension_field(&ctx, *ext)?;
            let count = count_points_off_diagonal(&QuadFunction::from(&f), &ambient)?;
            json!({
                "command": "count-points",
                "function": format!("{f:?}"),
                "result": count,
            })
        }
        Command::Construct { field, i, s, t, delta, c1, e1, c2, e2 } => {
            let ctx = field.build()?;
            let (f, trace) = match (i, c1) {
                (Some(i), None) => {
                    let d = ctx.parse_elem(delta.as_ref().expect("required by clap"))?;
                    (QuadBinomial::new(&ctx, *i, s.unwrap(), t.unwrap(), d)?, None)
                }
                (None, Some(c1)) => {
                    let c1 = ctx.parse_elem(c1)?;
                    let c2 = ctx.parse_elem(c2.as_ref().expect("required by clap"))?;
                    let (f, trace) =
                        normalize_binomial(&c1, e1.expect("required by clap"), &c2, e2.expect("required by clap"))?;
                    (f, Some(trace))
                }
                _ => {
                    return Err(Error::InvalidParameter(
                        "give either --i/--s/--t/--delta or --c1/--e1/--c2/--e2".into(),
                    ))
                }
            };
            construct_payload(&f, trace)?
        }
        Command::Irreducible { field, poly } => {
            let ctx = field.build()?;
            let p = UniPoly::parse(&ctx, poly)?;
            json!({
                "command": "irreducible",
                "poly": p.to_string(),
                "degree": p.deg(),
                "irreducible": is_irreducible(&p)?,
            })
        }
        Command::Factor { field, poly } => {
            let ctx = field.build()?;
            let p = UniPoly::parse(&ctx, poly)?;
            let mut rng = FactorRng::from_seed(cli.seed);
            let fact = factor_with_rng(&p, &mut rng)?;
            let factors: Vec<Value> = fact
                .factors
                .iter()
                .map(|(f, mult)| {
                    json!({
                        "poly": f.to_string(),
                        "degree": f.deg(),
                        "multiplicity": mult,
                    })
                })
                .collect();
            json!({
                "command": "factor",
                "poly": p.to_string(),
                "unit": fact.unit.to_hex(),
                "factors": factors,
            })
        }
        Command::Multiplicity { field, binomial, point, infinity_table } => {
            let ctx = field.build()?;
            let f = binomial.build(&ctx)?;
            if *infinity_table {
                let table = f.infinity_multiplicity_table()?;
                let clean = table.mismatches().is_empty();
                json!({
                    "command": "multiplicity",
                    "function": format!("{f:?}"),
                    "table": table,
                    "all_match": clean,
                })
            } else {
                let text = point
                    .as_ref()
                    .ok_or_else(|| Error::InvalidParameter("give --point or --infinity-table".into()))?;
                let p = parse_point(&ctx, text)?;
                let (h, _) = f.construct_h()?;
                let mult = h.multiplicity_at(&p, f.h_degree() as u32)?;
                json!({
                    "command": "multiplicity",
                    "function": format!("{f:?}"),
                    "point": text,
                    "h_degree": f.h_degree(),
                    "multiplicity": mult,
                })
            }
        }
        Command::Catalog { family, params, coeffs, smallest, du } => match family {
            None => {
                let mut rows = Vec::new();
                for info in catalog::FAMILIES {
                    let ints = catalog::smallest_params(info.name)?;
                    let instance = catalog::instantiate(info.name, &ints, &BTreeMap::new())?;
                    rows.push(catalog_row(&instance, true, cli.timings)?);
                }
                json!({ "command": "catalog", "rows": rows })
            }
            Some(name) => {
                let ints = if *smallest {
                    catalog::smallest_params(name)?
                } else {
                    parse_int_params(params)?
                };
                let supplied = parse_coeff_params(coeffs)?;
                let instance = catalog::instantiate(name, &ints, &supplied)?;
                let row = catalog_row(&instance, *du, cli.timings)?;
                json!({
                    "command": "catalog",
                    "row": row,
                    "function": instance.spec.to_string(),
                    "scanned": instance.scanned,
                    "errata": instance.errata,
                })
            }
        },
        Command::Hexratio { k, i } => {
            let ratio = hexanomial_ratio(*k, *i)?;
            json!({ "command": "hexratio", "result": ratio })
        }
        Command::WeilProbe { field, binomial, from, to } => {
            let ctx = field.build()?;
            let f = binomial.build(&ctx)?;
            if from > to {
                return Err(Error::InvalidParameter(format!(
                    "empty probe range {from}..{to}"
                )));
            }
            let range: Vec<u32> = (*from..=*to).collect();
            let probe = weil_growth_probe(&f, &range)?;
            json!({
                "command": "weil-probe",
                "function": format!("{f:?}"),
                "result": probe,
            })
        }
        Command::Example2 => example2_payload()?,
        Command::Sweep { fields, i, s, t, delta_samples, format, budget } => {
            return run_sweep_command(cli, fields, i, s, t, *delta_samples, *format, &budget.build());
        }
    };
    emit(cli, &with_schema(payload))
}

/// The full Delta/F/U/H stack for one binomial, with degrees and the
/// polynomials themselves.
fn construct_payload(f: &QuadBinomial, trace: Option<apnforge::apn::NormalizationTrace>) -> Result<Value, Error> {
    let delta = f.delta_poly()?;
    let big_f = f.construct_f()?;
    let u = f.construct_u();
    let (h, _) = f.construct_h()?;
    let (e1, e2) = f.exponents();
    Ok(json!({
        "command": "construct",
        "normal_form": format!("{f:?}"),
        "normalization": trace,
        "i": f.i(),
        "s": f.s(),
        "t": f.t(),
        "delta": f.delta().to_hex(),
        "exponents": [e1, e2],
        "component_degrees": f.component_degrees(),
        "h_degree": f.h_degree(),
        "polynomials": {
            "delta": delta.to_string(),
            "f": big_f.to_string(),
            "u": u.to_string(),
            "h": h.to_string(),
            "h_terms": h.terms().count(),
        },
    }))
}

/// One catalog listing row; differential uniformity is measured when asked.
fn catalog_row(instance: &CatalogInstance, with_du: bool, timings: bool) -> Result<Value, Error> {
    let m = instance.field.degree();
    let mut params = serde_json::Map::new();
    for (k, v) in &instance.ints {
        params.insert(k.clone(), json!(v));
    }
    for (k, v) in &instance.coeffs {
        params.insert(k.clone(), json!(v));
    }
    let (du, apn, elapsed) = if with_du {
        let mut result = differential_uniformity(&instance.spec, &instance.field)?;
        if !timings {
            result.elapsed_ms = None;
        }
        (json!(result.du), json!(result.is_apn()), result.elapsed_ms)
    } else {
        (Value::Null, Value::Null, None)
    };
    Ok(json!({
        "family": instance.family,
        "params": params,
        "m": m,
        "du": du,
        "apn": apn,
        "elapsed_ms": elapsed,
        "function": instance.spec.to_string(),
    }))
}

/// The worked walkthrough: x^3 + a^374*x^36 over GF(2^10), modulus 0x409.
fn example2_payload() -> Result<Value, Error> {
    let ctx = FieldCtx::with_modulus_u128(10, 0x409)?;
    let delta = ctx.parse_elem("a^374")?;
    let f = QuadBinomial::new(&ctx, 1, 2, 3, delta)?;
    let (h, _) = f.construct_h()?;
    let h_degree = f.h_degree();

    let infinity = ProjPoint::new(ctx.one(), ctx.zero(), ctx.zero())?;
    let infinity_multiplicity = h.multiplicity_at(&infinity, h_degree as u32)?;

    // One substitution certifies irreducibility over the coefficient field…
    let witness_beta = ctx.parse_elem("a^17")?;
    let witness_spec = substitute_quadratic(&h, &witness_beta)?;
    let witness_irreducible = is_irreducible(&witness_spec)?;

    // …and another eliminates the last splitting pattern by exhibiting a
    // factor too large for any conjugate block.
    let obstruction_beta = ctx.parse_elem("a^5")?;
    let obstruction_spec = substitute_quadratic(&h, &obstruction_beta)?;
    let spec_degree = obstruction_spec.deg();
    let fact = factor_with_rng(&obstruction_spec, &mut FactorRng::from_seed(DEFAULT_SEED))?;
    let factor_degrees: Vec<usize> = fact.factors.iter().map(|(p, _)| p.deg()).collect();
    // The surviving pattern after the multiplicity eliminations is n = 3; a
    // factor of degree e with gcd(e,3) = 1 and 3e > deg rules it out.
    let obstruction_degree = factor_degrees
        .iter()
        .copied()
        .find(|&d| d % 3 != 0 && 3 * d > spec_degree)
        .ok_or_else(|| Error::Internal("expected an obstruction factor for n = 3".into()))?;

    let report = classify(&f, &Budget::default())?;

    Ok(json!({
        "command": "example2",
        "field": { "m": 10, "modulus": ctx.modulus_hex() },
        "function": format!("{f:?}"),
        "h_degree": h_degree,
        "infinity_multiplicity": infinity_multiplicity,
        "k_irreducibility": {
            "beta": "a^17",
            "substitution": format!("y = x^2 + {}*x + 1", witness_beta.to_hex()),
            "irreducible": witness_irreducible,
        },
        "obstruction": {
            "beta": "a^5",
            "substitution": format!("y = x^2 + {}*x + 1", obstruction_beta.to_hex()),
            "specialization_degree": spec_degree,
            "factor_degrees": factor_degrees,
            "obstruction_factor_degree": obstruction_degree,
        },
        "report": report,
    }))
}

fn substitute_quadratic(h: &BiPoly, beta: &FieldElem) -> Result<UniPoly, Error> {
    let ctx = h.ctx();
    let g = UniPoly::monomial(ctx.one(), 2)
        .add(&UniPoly::monomial(beta.clone(), 1))
        .add(&UniPoly::one(&ctx));
    let (spec, full) = h.substitute_y(&g)?;
    if !full {
        return Err(Error::DegreeCollapse);
    }
    Ok(spec)
}

#[allow(clippy::too_many_arguments)]
fn run_sweep_command(
    cli: &Cli,
    fields: &str,
    i: &str,
    s: &str,
    t: &str,
    delta_samples: u32,
    format: SweepFormat,
    budget: &Budget,
) -> Result<(), Error> {
    let mut parsed_fields = Vec::new();
    for part in fields.split(',').filter(|p| !p.is_empty()) {
        parsed_fields.push(parse_field(part)?);
    }
    let spec = SweepSpec {
        fields: parsed_fields,
        i_values: parse_range(i)?,
        s_values: parse_range(s)?,
        t_values: parse_range(t)?,
        delta_samples,
        seed: cli.seed,
        budget: budget.clone(),
    };
    let result = run_sweep(&spec);

    let mut text = String::new();
    match format {
        SweepFormat::Json => {
            for row in &result.rows {
                text.push_str(&serde_json::to_string(row).map_err(serialize_err)?);
                text.push('\n');
            }
            let tail = json!({
                "schema": SCHEMA,
                "command": "sweep",
                "summary": result.summary,
            });
            text.push_str(&serde_json::to_string(&tail).map_err(serialize_err)?);
            text.push('\n');
        }
        SweepFormat::Csv => {
            text.push_str("m,modulus,i,s,t,delta,verdict,criterion,h_degree,error\n");
            for row in &result.rows {
                let (verdict, criterion, h_degree) = match &row.report {
                    Some(r) => (
                        json_name(&r.verdict),
                        json_name(&r.criterion),
                        r.h_degree.map(|d| d.to_string()).unwrap_or_default(),
                    ),
                    None => (String::new(), String::new(), String::new()),
                };
                let error = row.error.clone().unwrap_or_default().replace(',', ";");
                text.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{}\n",
                    row.m, row.modulus, row.i, row.s, row.t, row.delta,
                    verdict, criterion, h_degree, error
                ));
            }
        }
    }
    write_output(cli, &text)
}

fn with_schema(mut payload: Value) -> Value {
    if let Value::Object(map) = &mut payload {
        map.insert("schema".into(), json!(SCHEMA));
    }
    payload
}

fn emit(cli: &Cli, payload: &Value) -> Result<(), Error> {
    let mut text = serde_json::to_string_pretty(payload).map_err(serialize_err)?;
    text.push('\n');
    write_output(cli, &text)
}

fn write_output(cli: &Cli, text: &str) -> Result<(), Error> {
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::InvalidParameter(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Error::Internal(format!("stdout: {e}")))
        }
    }
}

fn serialize_err(e: serde_json::Error) -> Error {
    Error::Internal(format!("serialization: {e}"))
}

/// The serialized (JSON) name of a unit enum value, e.g. "condition-1".
fn json_name<T: serde::Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(Value::String(s)) => s,
        other => format!("{other:?}"),
    }
}

fn parse_field(text: &str) -> Result<FieldCtx, Error> {
    let (m_text, modulus) = match text.split_once(':') {
        Some((m, rest)) => (m, Some(rest)),
        None => (text, None),
    };
    let m: u32 = m_text.trim().parse().map_err(|_| Error::Parse {
        what: "field degree",
        text: text.into(),
    })?;
    match modulus {
        None => FieldCtx::new(m),
        Some(hex) => FieldCtx::with_modulus(m, &parse_modulus_hex(hex.trim())?),
    }
}

fn extension_field(base: &FieldCtx, ext: u32) -> Result<FieldCtx, Error> {
    if ext == 0 {
        return Err(Error::InvalidParameter("extension degree must be positive".into()));
    }
    if ext == 1 {
        return Ok(base.clone());
    }
    FieldCtx::new(base.degree() * ext)
}

fn parse_terms(ctx: &FieldCtx, terms: &[String]) -> Result<PolySpec, Error> {
    let mut parsed = Vec::new();
    for term in terms {
        let (coeff_text, exp_text) = term.rsplit_once(':').ok_or_else(|| Error::Parse {
            what: "term (expected coeff:exp)",
            text: term.clone(),
        })?;
        let coeff = ctx.parse_elem(coeff_text.trim())?;
        let exp: u64 = exp_text.trim().parse().map_err(|_| Error::Parse {
            what: "term exponent",
            text: term.clone(),
        })?;
        parsed.push((coeff, exp));
    }
    PolySpec::sum_of_terms(ctx, parsed)
}

fn parse_point(ctx: &FieldCtx, text: &str) -> Result<ProjPoint, Error> {
    let parts: Vec<&str> = text.split(':').collect();
    let coords: Vec<FieldElem> = parts
        .iter()
        .map(|p| ctx.parse_elem(p.trim()))
        .collect::<Result<_, _>>()?;
    match coords.len() {
        2 => ProjPoint::affine(coords[0].clone(), coords[1].clone()),
        3 => ProjPoint::new(coords[0].clone(), coords[1].clone(), coords[2].clone()),
        _ => Err(Error::Parse {
            what: "point (expected x:y or x:y:z)",
            text: text.into(),
        }),
    }
}

fn parse_int_params(params: &[String]) -> Result<BTreeMap<String, u64>, Error> {
    let mut out = BTreeMap::new();
    for p in params {
        let (name, value) = p.split_once('=').ok_or_else(|| Error::Parse {
            what: "parameter (expected name=value)",
            text: p.clone(),
        })?;
        let value: u64 = value.trim().parse().map_err(|_| Error::Parse {
            what: "parameter value",
            text: p.clone(),
        })?;
        out.insert(name.trim().to_string(), value);
    }
    Ok(out)
}

fn parse_coeff_params(coeffs: &[String]) -> Result<BTreeMap<String, String>, Error> {
    let mut out = BTreeMap::new();
    for c in coeffs {
        let (name, value) = c.split_once('=').ok_or_else(|| Error::Parse {
            what: "coefficient (expected name=element)",
            text: c.clone(),
        })?;
        out.insert(name.trim().to_string(), value.trim().to_string());
    }
    Ok(out)
}

/// "a..b" (inclusive) or a single "a".
fn parse_range(text: &str) -> Result<Vec<u32>, Error> {
    let bad = || Error::Parse {
        what: "range (expected a..b or a single value)",
        text: text.into(),
    };
    match text.split_once("..") {
        Some((lo, hi)) => {
            let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
            let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
            if lo > hi {
                return Ok(Vec::new());
            }
            Ok((lo..=hi).collect())
        }
        None => Ok(vec![text.trim().parse().map_err(|_| bad())?]),
    }
}
