//! Arithmetic and decision machinery for quadratic binomials over GF(2^m):
//! field towers, univariate and bivariate polynomial algebra, an
//! absolute-irreducibility pipeline deciding whether such a binomial can stay
//! APN over infinitely many field extensions, and exhaustive desk-scale
//! verification (differential uniformity, point counts, catalog families).

pub mod apn;
pub mod bipoly;
pub mod error;
pub mod gf2m;
pub mod sweep;
pub mod unipoly;
pub mod verify;

pub use error::{Error, Result};
