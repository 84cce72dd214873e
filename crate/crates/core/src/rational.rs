//! Exact rational arithmetic used as a shadow next to the f64 fast path.
//!
//! All numeric literals in the modeling language are decimal text, so every
//! constant is exactly representable as a rational. Transition probabilities
//! therefore carry an exact value as long as the intermediate arithmetic does
//! not overflow `i64`; on overflow the shadow is dropped rather than wrong.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Machine-width exact rational. Checked helpers return `None` on overflow.
pub type Rat = Ratio<i64>;

pub fn rat(n: i64, d: i64) -> Rat {
    Ratio::new(n, d)
}

/// Parse a decimal literal (`"0.5"`, `"3"`, `"1e-3"` is *not* accepted) into
/// an exact rational.
pub fn parse_decimal(text: &str) -> Option<Rat> {
    let (int_part, frac_part) = match text.split_once('.') {
        Some((i, f)) => (i, f),
        None => (text, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let digits: String = format!("{int_part}{frac_part}");
    let numer: i64 = digits.parse().ok()?;
    let denom = 10i64.checked_pow(frac_part.len() as u32)?;
    Some(Ratio::new(numer, denom))
}

pub fn checked_add(a: Rat, b: Rat) -> Option<Rat> {
    let numer = a
        .numer()
        .checked_mul(*b.denom())?
        .checked_add(b.numer().checked_mul(*a.denom())?)?;
    let denom = a.denom().checked_mul(*b.denom())?;
    if denom == 0 {
        return None;
    }
    Some(Ratio::new(numer, denom))
}

pub fn checked_sub(a: Rat, b: Rat) -> Option<Rat> {
    checked_add(a, -b)
}

pub fn checked_mul(a: Rat, b: Rat) -> Option<Rat> {
    // Cross-reduce first to keep intermediates small.
    let x = Ratio::new(*a.numer(), *b.denom());
    let y = Ratio::new(*b.numer(), *a.denom());
    let numer = x.numer().checked_mul(*y.numer())?;
    let denom = x.denom().checked_mul(*y.denom())?;
    if denom == 0 {
        return None;
    }
    Some(Ratio::new(numer, denom))
}

pub fn checked_div(a: Rat, b: Rat) -> Option<Rat> {
    if b.is_zero() {
        return None;
    }
    checked_mul(a, Ratio::new(*b.denom(), *b.numer()))
}

pub fn to_f64(r: Rat) -> f64 {
    r.to_f64()
        .unwrap_or_else(|| *r.numer() as f64 / *r.denom() as f64)
}

pub fn to_big(r: Rat) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

pub fn big_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn big_zero() -> BigRational {
    BigRational::zero()
}

pub fn big_one() -> BigRational {
    BigRational::one()
}

pub fn is_exact_one(r: Rat) -> bool {
    r.is_one()
}

pub fn in_unit_interval(r: Rat) -> bool {
    !r.is_negative() && r <= Ratio::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_parsing_is_exact() {
        assert_eq!(parse_decimal("0.5"), Some(rat(1, 2)));
        assert_eq!(parse_decimal("3"), Some(rat(3, 1)));
        assert_eq!(parse_decimal("0.125"), Some(rat(1, 8)));
        assert_eq!(parse_decimal("10.25"), Some(rat(41, 4)));
        assert_eq!(parse_decimal(""), None);
        assert_eq!(parse_decimal("x"), None);
    }

    #[test]
    fn checked_ops_reduce_and_overflow() {
        assert_eq!(checked_add(rat(1, 2), rat(1, 2)), Some(rat(1, 1)));
        assert_eq!(checked_mul(rat(2, 3), rat(3, 2)), Some(rat(1, 1)));
        assert_eq!(checked_div(rat(1, 2), rat(0, 1)), None);
        let huge = rat(i64::MAX, 1);
        assert_eq!(checked_mul(huge, rat(3, 1)), None);
    }
}
