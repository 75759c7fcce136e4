use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::{Error, Result};

/// Exact rational number, always kept in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for a small rational constant.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Fractional part `{x} = x - floor(x)`, in `[0, 1)`.
pub fn fract(x: &Rational) -> Rational {
    x - x.floor()
}

/// Image of `x` in `F_p`, or `None` when the denominator is divisible by `p`.
pub fn reduce_rational_mod_p(x: &Rational, p: u64) -> Option<u64> {
    let modulus = BigInt::from(p);
    let den = x.denom().mod_floor(&modulus);
    if den.is_zero() {
        return None;
    }
    let num = x.numer().mod_floor(&modulus);
    let num = u64::try_from(num).expect("residue fits in u64");
    let den = u64::try_from(den).expect("residue fits in u64");
    Some(super::fp::mul_mod(num, super::fp::mod_inv(den, p), p))
}

/// Parses `"n"` or `"n/d"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |part: &str| {
        part.trim()
            .parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("bad integer {part:?}: {e}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(parse_int(n)?, d))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

pub(crate) fn is_nonneg_integer(x: &Rational) -> bool {
    x.is_integer() && !x.is_negative()
}
