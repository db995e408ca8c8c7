//! Exact rational helpers.

use alloc::string::{String, ToString};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, One, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn from_int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn from_u64(value: u64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `"p"`, `"-p"` or `"p/q"` into a reduced rational.
pub fn parse(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::InvalidArgument(alloc::format!("not a rational: {text:?}"));
    match text.split_once('/') {
        None => text.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p = p.trim().parse::<BigInt>().map_err(|_| bad())?;
            let q = q.trim().parse::<BigInt>().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Renders as `"p/q"`, or `"p"` when the denominator is one.
pub fn format(value: &Rational) -> String {
    value.to_string()
}

/// Unsigned exact integers used by the search kernels (`u128` when the
/// magnitudes allow it, `BigUint` otherwise).
pub(crate) trait Magnitude:
    Clone + Ord + Zero + FromPrimitive + core::ops::Add<Output = Self> + core::ops::Mul<Output = Self>
{
}
impl<T> Magnitude for T where
    T: Clone + Ord + Zero + FromPrimitive + core::ops::Add<Output = T> + core::ops::Mul<Output = T>
{
}

/// Least common multiple of all denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Multiplies nonnegative values by their common denominator.
pub(crate) fn scale_to_integers(values: &[Rational]) -> alloc::vec::Vec<num_bigint::BigUint> {
    let denom = Rational::from_integer(common_denominator(values));
    values
        .iter()
        .map(|v| {
            let scaled = (v * &denom).to_integer();
            debug_assert!(scaled.sign() != num_bigint::Sign::Minus);
            scaled.magnitude().clone()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(format(&parse("6/4").unwrap()), "3/2");
        assert_eq!(format(&parse(" 7 ").unwrap()), "7");
        assert_eq!(format(&parse("-2/6").unwrap()), "-1/3");
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn lcm_of_denominators() {
        let vals = [parse("1/4").unwrap(), parse("5/6").unwrap(), from_int(3)];
        assert_eq!(common_denominator(&vals), BigInt::from(12));
    }
}
