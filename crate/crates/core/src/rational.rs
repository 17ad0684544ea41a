//! Exact rational scalars and the small combinatorial helpers built on them.
//!
//! Every coefficient in the engine is a `BigRational`; nothing here ever
//! touches floating point.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::ParseError;

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Canonical `p/q` rendering with `q > 0` and `gcd(p, q) = 1`.
///
/// Integers are rendered without a denominator, so `7` rather than `7/1`.
pub fn render(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `p/q`, `-p/q` (ASCII or Unicode minus) into a reduced rational.
pub fn parse(s: &str) -> Result<Rational, ParseError> {
    let t = s.trim().replace('\u{2212}', "-");
    let bad = || ParseError::Rational(s.to_string());
    if t.is_empty() {
        return Err(bad());
    }
    match t.split_once('/') {
        None => BigInt::from_str(&t).map(Rational::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Generalized binomial `binom(top, k)` as the falling factorial over `k!`.
/// Negative tops are allowed: `binom(-1, k) = (-1)^k`.
pub fn binomial(top: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc *= top - int(i as i64);
    }
    acc / Rational::from_integer(factorial(k))
}

pub fn binomial_int(top: i64, k: u32) -> Rational {
    binomial(&int(top), k)
}

pub fn sign(k: i64) -> Rational {
    if k.is_even() {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `x^k` for a nonnegative integer power.
pub fn pow(x: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..k {
        acc *= x;
    }
    acc
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_is_canonical() {
        assert_eq!(render(&frac(6, -4)), "-3/2");
        assert_eq!(render(&frac(14, 2)), "7");
        assert_eq!(render(&Rational::zero()), "0");
    }

    #[test]
    fn parse_round_trips() {
        assert_eq!(parse("-3/2").unwrap(), frac(-3, 2));
        assert_eq!(parse("\u{2212}1").unwrap(), int(-1));
        assert_eq!(parse(" 10/4 ").unwrap(), frac(5, 2));
        assert!(parse("1/0").is_err());
        assert!(parse("abc").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn generalized_binomial_negative_top() {
        // binom(-1-k, nu) = (-1)^nu binom(nu+k, k)
        for k in 0..3i64 {
            for nu in 0..6u32 {
                let lhs = binomial_int(-1 - k, nu);
                let rhs = sign(nu as i64) * binomial_int(nu as i64 + k, k as u32);
                assert_eq!(lhs, rhs, "k={k} nu={nu}");
            }
        }
        assert_eq!(binomial_int(0, 1), int(0));
        assert_eq!(binomial_int(5, 2), int(10));
        assert_eq!(binomial_int(2, 5), int(0));
    }
}
