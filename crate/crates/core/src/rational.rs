//! Exact rational scalars and their `p/q` text form.
//!
//! All quantities in the library (values, bids, prices, welfare, slacks,
//! probabilities) are exact rationals. Floating point is never used: the
//! bounds checked here are exact equalities at tightness, and any rounding
//! would break them.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number used everywhere in the library.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `n/d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"` with optional sign, exactly.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational numerator in {s:?}")))?;
    let d: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational denominator in {s:?}")))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(n, d))
}

/// Renders a rational as `"p"` or `"p/q"` in lowest terms, `q > 0`.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Sum of an iterator of rationals.
pub fn rat_sum<'a, I: IntoIterator<Item = &'a Rat>>(iter: I) -> Rat {
    iter.into_iter().fold(Rat::zero(), |acc, x| acc + x)
}

pub fn is_nonnegative(r: &Rat) -> bool {
    !r.is_negative()
}
