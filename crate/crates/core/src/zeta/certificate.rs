use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::reduced::SIMPLIFIED_MAX_N;
use crate::error::{invalid, Result};
use crate::exact::{binomial_exact, int, rat, rpow, Rational, RationalLp, Sense};

/// Feasible point `(z, δ_0, …, δ_n)` of the per-sequence dual of the
/// simplified program.
#[derive(Debug, Clone, PartialEq)]
pub struct DualCertificate {
    pub n: usize,
    pub z: Rational,
    pub deltas: Vec<Rational>,
}

impl DualCertificate {
    /// `z = (3/4)^n`, `δ_k = 2^{k-2n}` for `k < n` and `δ_n = 0`.
    pub fn published(n: usize) -> Self {
        let two = int(2);
        let mut deltas: Vec<Rational> = (0..n).map(|k| rpow(&two, k as i32 - 2 * n as i32)).collect();
        deltas.push(Rational::zero());
        Self {
            n,
            z: rpow(&rat(3, 4), n as i32),
            deltas,
        }
    }

    /// Dual point as `[z, δ_0, …, δ_n]`.
    pub fn as_vector(&self) -> Vec<Rational> {
        std::iter::once(self.z.clone()).chain(self.deltas.iter().cloned()).collect()
    }
}

/// Sum over the block sequences of type `k` of the PPT coefficient on one
/// fixed symbol sequence with `m` copies of `[1111]`:
/// `Σ_ℓ (−2)^ℓ C(m,ℓ) C(n−m,k−ℓ)`.
pub fn simplified_dual_coefficient(n: usize, k: usize, m: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for l in 0..=k.min(m) {
        if k - l > n - m {
            continue;
        }
        let term = binomial_exact(m as u64, l as u64) * binomial_exact((n - m) as u64, (k - l) as u64);
        let sign = BigInt::from(-2).pow(l as u32);
        acc += sign * term;
    }
    acc
}

fn dual_rhs(n: usize, m: usize) -> Rational {
    rpow(&int(-2), m as i32) * rpow(&int(2), -(n as i32))
}

/// `min z` subject to `z − Σ_k δ_k c(k,m) ≥ (−2)^m 2^{−n}` for every `m`,
/// with `z` free and `δ ≥ 0`. Variables are `[z, δ_0, …, δ_n]`.
pub fn simplified_dual_lp(n: usize) -> Result<RationalLp> {
    if n == 0 || n > SIMPLIFIED_MAX_N {
        return invalid(format!("n must lie in 1..={SIMPLIFIED_MAX_N}, got {n}"));
    }
    let mut objective = vec![Rational::zero(); n + 2];
    objective[0] = Rational::one();
    let mut lp = RationalLp::minimize(objective).free(0);
    for m in 0..=n {
        let mut row = vec![Rational::one()];
        row.extend((0..=n).map(|k| -Rational::from_integer(simplified_dual_coefficient(n, k, m))));
        lp.push_constraint(row, Sense::Ge, dual_rhs(n, m));
    }
    Ok(lp)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertificateReport {
    pub n: usize,
    pub value: Rational,
    pub feasible: bool,
    pub deltas_nonnegative: bool,
    /// `z − Σ_k δ_k c(k,m) − (−2)^m 2^{−n}` for `m = 0..=n`.
    pub slacks: Vec<Rational>,
    /// Indices `m` with negative slack.
    pub violated: Vec<usize>,
}

/// Checks every dual constraint exactly.
pub fn check_certificate(cert: &DualCertificate) -> Result<CertificateReport> {
    let n = cert.n;
    if n == 0 || n > SIMPLIFIED_MAX_N {
        return invalid(format!("n must lie in 1..={SIMPLIFIED_MAX_N}, got {n}"));
    }
    if cert.deltas.len() != n + 1 {
        return invalid(format!("expected {} deltas, got {}", n + 1, cert.deltas.len()));
    }
    let slacks: Vec<Rational> = (0..=n)
        .map(|m| {
            let used: Rational = cert
                .deltas
                .iter()
                .enumerate()
                .map(|(k, d)| d * Rational::from_integer(simplified_dual_coefficient(n, k, m)))
                .sum();
            &cert.z - used - dual_rhs(n, m)
        })
        .collect();
    let violated: Vec<usize> = slacks
        .iter()
        .enumerate()
        .filter(|(_, s)| s.is_negative())
        .map(|(m, _)| m)
        .collect();
    let deltas_nonnegative = cert.deltas.iter().all(|d| !d.is_negative());
    Ok(CertificateReport {
        n,
        value: cert.z.clone(),
        feasible: violated.is_empty() && deltas_nonnegative,
        deltas_nonnegative,
        slacks,
        violated,
    })
}

/// The published certificate with `z` lowered just past its tightest
/// constraint.
pub fn tampered_certificate(n: usize) -> Result<DualCertificate> {
    let mut cert = DualCertificate::published(n);
    let report = check_certificate(&cert)?;
    let tightest = report.slacks.iter().min().cloned().unwrap_or_else(Rational::zero);
    cert.z -= tightest + rpow(&int(2), -2 * n as i32);
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{solve_lp, verify_feasible, verify_optimality, LpStatus};
    use crate::zeta::zeta_simplified;

    #[test]
    fn one_copy_slacks() {
        let report = check_certificate(&DualCertificate::published(1)).unwrap();
        assert!(report.feasible);
        assert_eq!(report.slacks, vec![int(0), rat(3, 2)]);
        assert_eq!(DualCertificate::published(1).as_vector(), vec![rat(3, 4), rat(1, 4), int(0)]);
    }

    #[test]
    fn published_certificate_feasible_up_to_64() {
        for n in 1..=SIMPLIFIED_MAX_N {
            let report = check_certificate(&DualCertificate::published(n)).unwrap();
            assert!(report.feasible, "n={n}: violated {:?}", report.violated);
        }
    }

    #[test]
    fn certificate_is_a_dual_lp_point() {
        for n in 1..=6 {
            let lp = simplified_dual_lp(n).unwrap();
            assert!(verify_feasible(&lp, &DualCertificate::published(n).as_vector()).unwrap());
        }
        let lp = simplified_dual_lp(1).unwrap();
        assert!(verify_feasible(&lp, &[rat(3, 4), rat(1, 4), int(0)]).unwrap());
        assert!(!verify_feasible(&lp, &[rat(1, 2), rat(1, 4), int(0)]).unwrap());
    }

    #[test]
    fn dual_value_equals_primal_value() {
        for n in 1..=8 {
            let lp = simplified_dual_lp(n).unwrap();
            let sol = solve_lp(&lp).unwrap();
            assert_eq!(sol.status, LpStatus::Optimal);
            assert!(verify_optimality(&lp, &sol).unwrap());
            assert_eq!(sol.value.unwrap(), zeta_simplified(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn tampering_is_detected() {
        for n in [1, 2, 7, 30] {
            let report = check_certificate(&tampered_certificate(n).unwrap()).unwrap();
            assert!(!report.feasible);
            assert!(!report.violated.is_empty());
        }
        let mut negative = DualCertificate::published(3);
        negative.deltas[0] = rat(-1, 8);
        assert!(!check_certificate(&negative).unwrap().deltas_nonnegative);
        assert!(check_certificate(&DualCertificate { n: 2, z: int(1), deltas: vec![] }).is_err());
    }

    #[test]
    fn coefficients_match_row_sums() {
        // c(k,m) for n = 2 by hand: T = ((−2,1),(1,1)).
        let expected = [[1, 1, 1], [2, -1, -4], [1, -2, 4]];
        for (k, row) in expected.iter().enumerate() {
            for (m, &v) in row.iter().enumerate() {
                assert_eq!(simplified_dual_coefficient(2, k, m), BigInt::from(v), "k={k} m={m}");
            }
        }
    }
}
