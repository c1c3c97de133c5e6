//! Closed-form bounds for the antisymmetric state `α_d`.
//!
//! Every bit-valued quantity is the base-2 logarithm of an exact rational that
//! is formed first, so the only rounding is the final `log2`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{internal, invalid, Result};
use crate::exact::{binomial_exact, rat, Rational};

fn log2_of(r: &Rational) -> f64 {
    // log2(p/q) with p, q possibly beyond f64 range
    let p = r.numer();
    let q = r.denom();
    big_log2(p) - big_log2(q)
}

fn big_log2(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits < 1000 {
        return x.to_f64().expect("fits in f64").log2();
    }
    let shift = bits - 64;
    let top: BigInt = x >> shift;
    top.to_f64().unwrap().log2() + shift as f64
}

/// `dim ∧^k(C^d) = binomial(d, k)`.
pub fn antisym_dim(d: u64, k: u64) -> Result<BigInt> {
    if k > d {
        return invalid(format!("k = {k} exceeds d = {d}"));
    }
    Ok(binomial_exact(d, k))
}

/// `d_{k−1}² / (d_{k−2} d_k)` through the simplified product
/// `k/(k−1) · (d−k+2)/(d−k+1)`.
pub fn cmi_extension_ratio(d: u64, k: u64) -> Result<Rational> {
    check_extension(d, k)?;
    let (d, k) = (d as i64, k as i64);
    Ok(rat(k, k - 1) * rat(d - k + 2, d - k + 1))
}

fn check_extension(d: u64, k: u64) -> Result<()> {
    if k < 2 {
        return invalid(format!("extension needs k >= 2 (E has k-2 particles), got {k}"));
    }
    if k > d {
        return invalid(format!("k = {k} exceeds d = {d}"));
    }
    Ok(())
}

/// Binomials are only expanded for the cross-check below this size.
const BINOMIAL_CHECK_MAX_D: u64 = 400;

/// `I(A;B|E)` in bits for the extension `P_k / d_k` of `α_d`, with `E` made of
/// `k − 2` antisymmetric particles.
pub fn cmi_extension(d: u64, k: u64) -> Result<f64> {
    let ratio = cmi_extension_ratio(d, k)?;
    let bits = log2_of(&ratio);
    if d <= BINOMIAL_CHECK_MAX_D {
        let dk = |j: u64| Rational::from_integer(binomial_exact(d, j));
        let from_dims = dk(k - 1) * dk(k - 1) / (dk(k - 2) * dk(k));
        if from_dims != ratio {
            return internal(format!(
                "dimension ratio {from_dims} disagrees with product form {ratio} at d={d}, k={k}"
            ));
        }
        let dims_bits = log2_of(&from_dims);
        if (dims_bits - bits).abs() > 1e-12 {
            return internal(format!("cmi evaluations differ at d={d}, k={k}"));
        }
    }
    Ok(bits)
}

#[derive(Debug, Clone, PartialEq)]
pub struct EsqBound {
    /// Bits.
    pub value: f64,
    pub optimal_k: u64,
    /// `2^{2·value}`, the minimal extension ratio.
    pub ratio: Rational,
}

/// Squashed-entanglement upper bound `min_k ½ I(A;B|E)` over the
/// antisymmetric extensions, by exhaustive scan (smallest `k` on ties).
pub fn esq_upper(d: u64) -> Result<EsqBound> {
    if d < 2 {
        return invalid(format!("d must be >= 2, got {d}"));
    }
    // Minimize k(d−k+2) / ((k−1)(d−k+1)) by cross-multiplication.
    let mut best: Option<(u128, u128, u64)> = None;
    for k in 2..=d {
        let num = k as u128 * (d - k + 2) as u128;
        let den = (k - 1) as u128 * (d - k + 1) as u128;
        let better = match best {
            None => true,
            Some((bn, bd, _)) => num * bd < bn * den,
        };
        if better {
            best = Some((num, den, k));
        }
    }
    let (_, _, k) = best.expect("k range is nonempty");
    let ratio = cmi_extension_ratio(d, k)?;
    let value = 0.5 * cmi_extension(d, k)?;

    let closed = esq_closed_form(d);
    if (value - closed).abs() > 1e-12 {
        return internal(format!(
            "scan minimum {value} differs from closed form {closed} at d={d}"
        ));
    }
    Ok(EsqBound {
        value,
        optimal_k: k,
        ratio,
    })
}

/// `log2((d+2)/d)` for even `d`, `½ log2((d+3)/(d−1))` for odd `d`.
pub fn esq_closed_form(d: u64) -> f64 {
    let d = d as i64;
    if d % 2 == 0 {
        log2_of(&rat(d + 2, d))
    } else {
        0.5 * log2_of(&rat(d + 3, d - 1))
    }
}

/// Argmin of the closed form: `d/2 + 1` (even) or `(d+1)/2` (odd).
pub fn esq_closed_form_k(d: u64) -> u64 {
    if d.is_multiple_of(2) {
        d / 2 + 1
    } else {
        d.div_ceil(2)
    }
}

/// Distillable-key upper bound; inherits the squashed-entanglement bound.
pub fn kd_upper(d: u64) -> Result<f64> {
    Ok(esq_upper(d)?.value)
}

/// `2 log2(e) / (d − 1)`, the `O(1/d)` envelope of the squashed bound.
pub fn asymptotic_esq_bound(d: u64) -> f64 {
    2.0 * std::f64::consts::LOG2_E / (d as f64 - 1.0)
}

/// Argument of the entanglement-cost bound: `E_C ≥ log2(4/3)`.
pub fn ec_lower_ratio() -> Rational {
    rat(4, 3)
}

pub fn ec_lower() -> f64 {
    log2_of(&ec_lower_ratio())
}

/// `log2 ‖α_d^Γ‖₁ = log2((d+2)/d)`.
pub fn log_negativity(d: u64) -> Result<f64> {
    if d < 2 {
        return invalid(format!("d must be >= 2, got {d}"));
    }
    Ok(log2_of(&rat(d as i64 + 2, d as i64)))
}

/// `E^∞_{R,sep}(α_d) ≥ log2 √(4/3)`: the separable overlap is at most the
/// square root of the maximal purity.
pub fn er_sep_lower() -> f64 {
    0.5 * ec_lower()
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub d: u64,
    pub kd_upper: f64,
    pub esq_upper: f64,
    pub optimal_k: u64,
    pub ec_lower: f64,
    pub log_negativity: f64,
    pub er_sep_lower: f64,
    pub asymptotic_esq_bound: f64,
}

pub fn bound_report(d: u64) -> Result<BoundReport> {
    let esq = esq_upper(d)?;
    Ok(BoundReport {
        d,
        kd_upper: kd_upper(d)?,
        esq_upper: esq.value,
        optimal_k: esq.optimal_k,
        ec_lower: ec_lower(),
        log_negativity: log_negativity(d)?,
        er_sep_lower: er_sep_lower(),
        asymptotic_esq_bound: asymptotic_esq_bound(d),
    })
}

/// `log2` of an exact rational, without overflow for huge numerators.
pub fn bits(r: &Rational) -> f64 {
    log2_of(r)
}
