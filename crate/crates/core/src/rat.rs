//! Arbitrary-precision rational scalars.
//!
//! `Rat` is the exact coefficient type used everywhere in the crate.  It is
//! `num::BigRational`, which already maintains the invariants we need:
//! numerator and denominator are kept coprime and the denominator positive.

use num::bigint::Sign;
use num::{BigInt, BigRational};

pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn is_negative(r: &Rat) -> bool {
    r.numer().sign() == Sign::Minus
}

/// Parses "p/q" or "p" with optional sign, in exact integer arithmetic.
/// This is the format used for all rational-valued command line arguments;
/// floating point input is rejected by construction.
pub fn parse_rat(text: &str) -> Result<Rat, String> {
    let s = text.trim();
    let (p, q) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let pn: BigInt = p
        .parse()
        .map_err(|_| format!("invalid integer `{p}` in rational `{text}`"))?;
    let qn: BigInt = q
        .parse()
        .map_err(|_| format!("invalid integer `{q}` in rational `{text}`"))?;
    if qn == BigInt::from(0) {
        return Err(format!("zero denominator in rational `{text}`"));
    }
    Ok(Rat::new(pn, qn))
}

/// Exact square root test: returns `Some(s)` with `s >= 0` and `s^2 = r`
/// when `r` is the square of a rational, `None` otherwise.
pub fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if is_negative(r) {
        return None;
    }
    let ns = r.numer().sqrt();
    let ds = r.denom().sqrt();
    if &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom() {
        Some(Rat::new(ns, ds))
    } else {
        None
    }
}

pub fn to_f64(r: &Rat) -> f64 {
    use num::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // Fall back to a quotient of approximations when the parts overflow.
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_signed_fractions() {
        assert_eq!(parse_rat("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rat("-3/4").unwrap(), rat(-3, 4));
        assert_eq!(parse_rat("3/-4").unwrap(), rat(-3, 4));
        assert_eq!(parse_rat(" 7 ").unwrap(), rat_int(7));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("0.5").is_err());
    }

    #[test]
    fn square_root_detection() {
        assert_eq!(rat_sqrt(&rat(9, 64)), Some(rat(3, 8)));
        assert_eq!(rat_sqrt(&rat(2, 1)), None);
        assert_eq!(rat_sqrt(&rat(-9, 64)), None);
        assert_eq!(rat_sqrt(&rat(0, 1)), Some(rat(0, 1)));
    }
}
