use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{invalid, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Nearest `f64`. Exact for dyadic values that fit.
pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or_else(|| {
        if value.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Canonical `p/q` text form; integers keep the `/1`.
pub fn format_rational(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let parse_int = |s: &str| {
        s.trim()
            .parse::<BigInt>()
            .map_err(|e| crate::Error::InvalidInput(format!("bad rational {text:?}: {e}")))
    };
    match text.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return invalid(format!("zero denominator in {text:?}"));
            }
            Ok(Rational::new(parse_int(p)?, q))
        }
        None => Ok(Rational::from_integer(parse_int(text)?)),
    }
}

/// Best rational approximation of `x` with denominator at most `max_denom`,
/// taken from the continued-fraction convergents and semiconvergents.
/// Returns the approximation and its absolute error.
pub fn rationalize(x: f64, max_denom: u64) -> (Rational, f64) {
    assert!(x.is_finite(), "cannot rationalize {x}");
    assert!(max_denom >= 1);
    let negative = x < 0.0;
    let target = x.abs();

    // Convergents h/k of the continued fraction of `target`.
    let (mut h_prev, mut h) = (0i128, 1i128);
    let (mut k_prev, mut k) = (1i128, 0i128);
    let mut rest = target;
    let mut best = (target.round() as i128, 1i128);
    for _ in 0..64 {
        let a = rest.floor();
        let ai = a as i128;
        let h_next = ai * h + h_prev;
        let k_next = ai * k + k_prev;
        if k_next > max_denom as i128 {
            // Largest semiconvergent that still fits.
            let t = (max_denom as i128 - k_prev) / k;
            if t > 0 {
                let cand = (t * h + h_prev, t * k + k_prev);
                let err_c = (cand.0 as f64 / cand.1 as f64 - target).abs();
                let err_b = (h as f64 / k as f64 - target).abs();
                best = if err_c < err_b { cand } else { (h, k) };
            } else {
                best = (h, k);
            }
            break;
        }
        h_prev = h;
        k_prev = k;
        h = h_next;
        k = k_next;
        best = (h, k);
        let frac = rest - a;
        if frac < 1e-15 {
            break;
        }
        rest = 1.0 / frac;
    }
    let (p, q) = best;
    let p = if negative { -p } else { p };
    let value = Rational::new(BigInt::from(p), BigInt::from(q));
    let err = (p as f64 / q as f64 - x).abs();
    (value, err)
}

pub fn rpow(base: &Rational, exp: i32) -> Rational {
    if exp >= 0 {
        num_traits::pow(base.clone(), exp as usize)
    } else {
        Rational::one() / num_traits::pow(base.clone(), (-exp) as usize)
    }
}

pub fn binomial_exact(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
