//! Text form of univariate polynomials: `a^5*x^3 + 0x2*x + 1`.
//! Terms are '+'-separated (subtraction is the same operation here);
//! coefficients use the field element literal forms (hex bitstrings,
//! decimal, or generator powers `a^k` when the modulus is primitive).

use super::UniPoly;
use crate::error::{Error, Result};
use crate::gf2m::FieldCtx;
use std::fmt;

/// Keeps accidental huge exponents from allocating a dense coefficient
/// vector of that length.
const PARSE_EXPONENT_CAP: usize = 1 << 20;

fn parse_err(text: &str) -> Error {
    Error::Parse {
        what: "polynomial term".into(),
        text: text.into(),
    }
}

impl UniPoly {
    pub fn parse(ctx: &FieldCtx, text: &str) -> Result<UniPoly> {
        let mut acc = UniPoly::zero(ctx);
        let body = text.trim();
        if body.is_empty() {
            return Err(parse_err(text));
        }
        for term in body.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(parse_err(term));
            }
            // Split an optional coefficient from the x-part.
            let (coeff_text, x_text) = match term.find('x') {
                // 'x' also appears inside hex literals ("0x2*x"); the
                // variable is the first 'x' not preceded by '0'.
                Some(_) => {
                    let bytes = term.as_bytes();
                    let mut var_at = None;
                    for (idx, &b) in bytes.iter().enumerate() {
                        if b == b'x' && (idx == 0 || bytes[idx - 1] != b'0') {
                            var_at = Some(idx);
                            break;
                        }
                    }
                    match var_at {
                        Some(idx) => (term[..idx].trim_end_matches('*').trim(), &term[idx..]),
                        None => (term, ""),
                    }
                }
                None => (term, ""),
            };
            let coeff = if coeff_text.is_empty() {
                ctx.one()
            } else {
                ctx.parse_elem(coeff_text)?
            };
            let exp = if x_text.is_empty() {
                0usize
            } else if x_text == "x" {
                1
            } else if let Some(e) = x_text.strip_prefix("x^") {
                e.trim()
                    .parse::<usize>()
                    .map_err(|_| parse_err(term))?
            } else {
                return Err(parse_err(term));
            };
            if exp > PARSE_EXPONENT_CAP {
                return Err(parse_err(term));
            }
            acc = acc.add(&UniPoly::monomial(coeff, exp));
        }
        Ok(acc)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{c}*x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{c}*x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_mixed_literal_forms() {
        let k = FieldCtx::new(10).unwrap();
        let p = UniPoly::parse(&k, "a^374*x^3 + 0x2*x + x + 1").unwrap();
        assert_eq!(p.deg(), 3);
        assert_eq!(p.coeff(3), k.parse_elem("a^374").unwrap());
        // 0x2*x + x = (a + 1)*x
        assert_eq!(p.coeff(1), k.generator().add_elem(&k.one()));
        assert!(p.coeff(0).is_one());
        assert!(p.coeff(2).is_zero());
    }

    #[test]
    fn display_roundtrips() {
        let k = FieldCtx::new(10).unwrap();
        for text in ["x^5 + a^17*x^2 + 0x3", "x", "1", "a^1022*x^7 + x^6 + a*x"] {
            let p = UniPoly::parse(&k, text).unwrap();
            let q = UniPoly::parse(&k, &p.to_string()).unwrap();
            assert_eq!(p, q, "text {text} printed {p}");
        }
        assert_eq!(UniPoly::zero(&k).to_string(), "0");
    }

    #[test]
    fn duplicate_exponents_accumulate() {
        let k = FieldCtx::new(3).unwrap();
        // x + x cancels in characteristic 2
        let p = UniPoly::parse(&k, "x + x + 1").unwrap();
        assert_eq!(p.deg(), 0);
        assert!(p.coeff(0).is_one());
    }

    #[test]
    fn rejects_malformed_terms() {
        let k = FieldCtx::new(3).unwrap();
        for bad in ["", "x^", "y + 1", "x^^2", "x^999999999"] {
            assert!(UniPoly::parse(&k, bad).is_err(), "accepted {bad:?}");
        }
    }
}
