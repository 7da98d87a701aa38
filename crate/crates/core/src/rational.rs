//! Exact rational helpers and directed-rounding float evaluation.
//!
//! Every threshold that decides a certificate is compared in exact
//! arithmetic. Bounds with rational exponents (`K^{59/20}`, `(K|A|)^{4/3}`)
//! are decided by raising both sides to the exponent's denominator and
//! comparing big integers. Floats only appear in displayed right-hand sides
//! and in the logarithmic budgets, where they are rounded outward.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rational {
    BigRational::new(num.into(), den.into())
}

pub fn int(n: impl Into<BigInt>) -> Rational {
    BigRational::from_integer(n.into())
}

pub fn to_f64(r: &Rational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Scale down huge operands through their bit lengths.
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(900);
            let n = (r.numer() >> shift).to_f64().unwrap_or(f64::INFINITY);
            let d = (r.denom() >> shift).to_f64().unwrap_or(f64::INFINITY);
            n / d
        }
    }
}

/// Largest rational with denominator `den` not exceeding `x`.
pub fn floor_from_f64(x: f64, den: u64) -> Rational {
    let scaled = (x * den as f64).floor();
    ratio(BigInt::from(scaled as i128), BigInt::from(den))
}

/// Parses `p/q`, an integer, or a finite decimal such as `1.25`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidParameter(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(ratio(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let w: BigInt = if whole.is_empty() || whole == "-" {
            BigInt::zero()
        } else {
            whole.parse().map_err(|_| bad())?
        };
        let f: BigInt = frac.parse().map_err(|_| bad())?;
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        let mag = w.abs() * &den + f;
        let num = if negative { -mag } else { mag };
        return Ok(ratio(num, den));
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(int(n))
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn pow_signed(base: &Rational, exp: &BigInt) -> Rational {
    let e = exp.abs().to_u32().expect("exponent numerator fits in u32");
    let p = Rational::new(base.numer().pow(e), base.denom().pow(e));
    if exp.is_negative() {
        p.recip()
    } else {
        p
    }
}

/// Decides `lhs <= factor * base^exp` exactly for `base > 0`, `factor > 0`.
pub fn le_scaled_power(lhs: &Rational, base: &Rational, exp: &Rational, factor: &Rational) -> bool {
    assert!(base.is_positive() && factor.is_positive(), "base and factor must be positive");
    if lhs <= &Rational::zero() {
        return true;
    }
    let q = exp.denom().to_u32().expect("exponent denominator fits in u32");
    // (lhs / factor)^q <= base^p
    let left = pow_signed(&(lhs / factor), &BigInt::from(q));
    let right = pow_signed(base, exp.numer());
    left <= right
}

/// Nudges a float upward by a few ulps plus a small relative margin so that a
/// float right-hand side never understates the exact value it approximates.
pub fn round_up(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let bumped = x + x.abs() * 1e-12;
    bumped.next_up().next_up()
}

/// `factor * base^exp` as a float, rounded up.
pub fn scaled_power_f64(base: &Rational, exp: &Rational, factor: &Rational) -> f64 {
    let ln = ln_rational(base) * to_f64(exp) + ln_rational(factor);
    round_up(ln.exp())
}

/// Natural log of a positive rational, robust for huge operands.
pub fn ln_rational(r: &Rational) -> f64 {
    ln_bigint(r.numer()) - ln_bigint(r.denom())
}

fn ln_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        n.to_f64().map(f64::ln).unwrap_or(f64::INFINITY)
    } else {
        let shift = bits - 64;
        (n >> shift).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// `ln(max(n, 2))`: keeps logarithmic budgets positive at tiny sizes.
pub fn ln_floor2(n: usize) -> f64 {
    (n.max(2) as f64).ln()
}

/// Exact `n/d` reduced; `d` must be nonzero.
pub fn frac(n: usize, d: usize) -> Rational {
    ratio(BigInt::from(n), BigInt::from(d))
}

/// Ceiling of a nonnegative rational.
pub fn ceil(r: &Rational) -> BigInt {
    let (q, rem) = r.numer().div_rem(r.denom());
    if rem.is_zero() {
        q
    } else {
        q + BigInt::one()
    }
}

pub mod serde_rational {
    use serde::Serializer;

    use super::{format_rational, Rational};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub mod option {
        use serde::Serializer;

        use super::super::{format_rational, Rational};

        pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match r {
                Some(r) => s.serialize_str(&format_rational(r)),
                None => s.serialize_none(),
            }
        }
    }
}
