//! Combinatorics of weighted blade arrangements on hypersimplices.
//!
//! The crate works over a cyclically ordered ground set `[n] = {1, .., n}`
//! (possibly with some labels removed) and provides, bottom up:
//!
//! * cyclic grounds, k-element subsets and their boundary maps ([`cyclic`]),
//! * weakly separated collections, flips and flip walks ([`wsep`]),
//! * blades, positive expressions, distances and multisplit cells ([`blades`]),
//! * weighted blade arrangements, the planar basis and boundary operators
//!   ([`arrangement`]),
//! * tropical Plücker vectors, octahedron classification and seed extension
//!   ([`tropical`]),
//! * cone analysis of blade-arrangement supports ([`cone`]),
//! * plabic tilings and their boundary procedure ([`plabic`]),
//! * JSON adapters for the CLI ([`json`]).
//!
//! All arithmetic is exact: weights are arbitrary-precision rationals and
//! every advertised equality in the test suite is literal equality.

pub mod arrangement;
pub mod blades;
pub mod cone;
pub mod cyclic;
mod error;
pub mod json;
mod linalg;
pub mod plabic;
pub mod tropical;
pub mod wsep;

pub use error::Error;

/// Exact rational scalar used for all weights and heights.
pub type Rat = num_rational::BigRational;

/// Shorthand for building a `Rat` from an integer.
pub fn rat(v: i64) -> Rat {
    Rat::from_integer(v.into())
}

/// Renders a rational as `p` or `p/q`, with no embedded spaces.
pub fn rat_to_string(v: &Rat) -> String {
    if num_traits::One::is_one(&v.denom().clone()) {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Parses `p` or `p/q` (optionally signed) into a rational.
pub fn rat_from_str(s: &str) -> Result<Rat, Error> {
    let bad = || Error::InvalidInput(format!("malformed rational `{s}`"));
    let parse_int = |t: &str| t.trim().parse::<num_bigint::BigInt>().map_err(|_| bad());
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let denom = parse_int(q)?;
            if denom == num_bigint::BigInt::from(0) {
                return Err(bad());
            }
            Ok(Rat::new(parse_int(p)?, denom))
        }
    }
}
