use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::{Duration, Instant};

use antisym_core::bounds::{ec_lower, er_sep_lower, esq_upper, kd_upper};
use antisym_core::exact::{format_rational, int, rat, rpow, solve_lp, LpStatus, Rational};
use antisym_core::oracle::{
    max_purity, max_separable_overlap, negativity_trace_norm, ppt_direct_check, OptimizerConfig,
};
use antisym_core::repspace::{
    is_row_permutation_match, match_up_to_row_scaling, t_vector, tmatrix_closed_form, tmatrix_numeric, Dimension,
    IsotypicStates, YoungSymbol,
};
use antisym_core::zeta::{
    build_expanded_lp, build_reduced_lp, check_certificate, ef_lower_bound, simplified_dual_lp, zeta_full,
    zeta_simplified, DualCertificate, ZetaSource,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::config::SuiteConfig;
use crate::Failure;

/// One named check. Fields are declared in sorted key order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub claim: String,
    pub computed: String,
    pub error: Option<String>,
    pub expected: String,
    pub inputs: Value,
    pub name: String,
    pub passed: bool,
    pub runtime_limit_ms: u64,
    pub runtime_ms: u64,
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub errors: usize,
    pub failed: usize,
    pub passed: usize,
    pub total: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckRecord>,
    pub config: Value,
    pub summary: Summary,
}

struct Outcome {
    inputs: Value,
    expected: String,
    computed: String,
    tolerance: Option<f64>,
    passed: bool,
}

type CheckFn = fn(&SuiteConfig) -> antisym_core::Result<Outcome>;

struct Check {
    name: &'static str,
    claim: &'static str,
    limit: Duration,
    run: CheckFn,
}

const CHECKS: [Check; 10] = [
    Check {
        name: "01_esq_table",
        claim: "esq_upper(d) = log2((d+2)/d) for even d and (1/2)log2((d+3)/(d-1)) for odd d",
        limit: Duration::from_secs(1),
        run: esq_table,
    },
    Check {
        name: "02_tmatrix_reconstruction",
        claim: "numeric block eigenvalues match T_d up to positive row scaling and permutation; isotypic ranks match the dimension formulas",
        limit: Duration::from_secs(120),
        run: tmatrix_reconstruction,
    },
    Check {
        name: "03_t_vector",
        claim: "t_vector(d) = (-1, 1/2, 0)",
        limit: Duration::from_secs(60),
        run: t_vector_check,
    },
    Check {
        name: "04_ppt_equivalence",
        claim: "sign of the smallest eigenvalue of the partial transpose agrees with the sign test T_d p >= 0",
        limit: Duration::from_secs(60),
        run: ppt_equivalence,
    },
    Check {
        name: "05_d3_recovery",
        claim: "zeta_full(n, 3) = 2^-n, so the entanglement-of-formation bound is n bits",
        limit: Duration::from_secs(30),
        run: d3_recovery,
    },
    Check {
        name: "06_main_bound",
        claim: "zeta_simplified(n) <= (3/4)^n and the (3/4)^n dual certificate is feasible",
        limit: Duration::from_secs(60),
        run: main_bound,
    },
    Check {
        name: "07_strong_duality",
        claim: "reduced primal and reduced dual optima agree exactly",
        limit: Duration::from_secs(60),
        run: strong_duality,
    },
    Check {
        name: "08_oracle_brackets",
        claim: "oracle values lie within their brackets: purity, negativity and separable overlap",
        limit: Duration::from_secs(300),
        run: oracle_brackets,
    },
    Check {
        name: "09_reduction_soundness",
        claim: "reduced optimum equals the expanded 9-variable optimum at n=2, d=4",
        limit: Duration::from_secs(60),
        run: reduction_soundness,
    },
    Check {
        name: "10_headline_values",
        claim: "log2(4/3) cost bound, 2 log2(e)/(d-1) key-bound dominance and E_R,sep >= 0.2075",
        limit: Duration::from_secs(10),
        run: headline_values,
    },
];

/// `lo..=min(hi, cap)`, but never empty.
fn clipped(lo: usize, hi: usize, cap: usize) -> std::ops::RangeInclusive<usize> {
    lo..=hi.min(cap).max(lo)
}

fn esq_table(cfg: &SuiteConfig) -> antisym_core::Result<Outcome> {
    let mut worst: f64 = 0.0;
    let range = clipped(2, 21, cfg.max_d);
    for d in range.clone() {
        let x = d as f64;
        let expected = if d % 2 == 0 {
            ((x + 2.0) / x).log2()
        } else {
            0.5 * ((x + 3.0) / (x - 1.0)).log2()
        };
        worst = worst.max((esq_upper(d as u64)?.value - expected).abs());
    }
    let mut spots_ok = true;
    for (d, v, tol) in [(2u64, 1.0, cfg.tol_esq), (4, 0.584963, 1e-6), (5, 0.5, cfg.tol_esq)] {
        if range.contains(&(d as usize)) {
            spots_ok &= (esq_upper(d)?.value - v).abs() <= tol;
        }
    }
    Ok(Outcome {
        inputs: json!({"d": [range.start(), range.end()]}),
        expected: "closed form; spot values 1.0, 0.584963, 0.5".into(),
        computed: format!("max deviation {worst:e}; spot values ok: {spots_ok}"),
        tolerance: Some(cfg.tol_esq),
        passed: worst <= cfg.tol_esq && spots_ok,
    })
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn tmatrix_reconstruction(cfg: &SuiteConfig) -> antisym_core::Result<Outcome> {
    let range = clipped(4, 6, cfg.max_d);
    let mut passed = true;
    let mut computed = Vec::new();
    for d in range.clone() {
        let numeric = tmatrix_numeric(d, cfg.seed)?;
        let reference = tmatrix_closed_form(Dimension::Finite(d))?.to_f64();
        let matches = match_up_to_row_scaling(&numeric.matrix, &reference);
        let iso = IsotypicStates::new(d)?;
        let ranks = YoungSymbol::ALL.map(|y| iso.rank(y));
        let expected = [binomial(d, 4), d * d * (d * d - 1) / 12, d * (d - 2) * (d + 1) * (d - 1) / 8];
        passed &= is_row_permutation_match(&matches, cfg.tol_tmatrix) && ranks == expected;
        let errors: Vec<String> = matches.iter().map(|m| format!("{:.3e}", m.max_rel_error)).collect();
        computed.push(format!(
            "d={d}: ranks {ranks:?}, block dims {:?}, row errors [{}]",
            numeric.block_dims,
            errors.join(", ")
        ));
    }
    Ok(Outcome {
        inputs: json!({"d": range.collect::<Vec<_>>(), "seed": cfg.seed}),
        expected: "every row matched; ranks (C(d,4), d^2(d^2-1)/12, d(d-2)(d+1)(d-1)/8)".into(),
        computed: computed.join("; "),
        tolerance: Some(cfg.tol_tmatrix),
        passed,
    })
}

fn t_vector_check(cfg: &SuiteConfig) -> antisym_core::Result<Outcome> {
    let range = clipped(4, 8, cfg.max_d);
    let expected = [int(-1), rat(1, 2), int(0)];
    let mut passed = true;
    let mut seen = Vec::new();
    for d in range.clone() {
        let t = t_vector(d)?;
        passed &= t == expected;
        seen.push(t.iter().map(format_rational).collect::<Vec<_>>().join(", "));
    }
    Ok(Outcome {
        inputs: json!({"d": [range.start(), range.end()]}),
        expected: "(-1/1, 1/2, 0/1)".into(),
        computed: format!("({})", seen.join("); (")),
        tolerance: None,
        passed,
    })
}

fn ppt_equivalence(cfg: &SuiteConfig) -> antisym_core::Result<Outcome> {
    use rand::{Rng, SeedableRng};
    let dims: Vec<usize> = [4usize, 5].into_iter().filter(|&d| d <= cfg.max_d.max(4)).collect();
    let mut counts = Vec::new();
    for &d in &dims {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(d as u64));
        let mut ppt = 0;
        for _ in 0..100 {
            let raw: [f64; 3] = [rng.random(), rng.random(), rng.random()];
            let total: f64 = raw.iter().sum();
            let p: Vec<f64> = raw.iter().map(|x| x / total).collect();
            if ppt_direct_check(d, &p, 1)?.direct_ppt {
                ppt += 1;
            }
        }
        counts.push(format!("d={d}: {ppt}/100 PPT"));
    }
    Ok(Outcome {
        inputs: json!({"d": dims, "samples": 100, "seed": cfg.seed}),
        expected: "verdicts agree on every sample".into(),
        computed: format!("all agree; {}", counts.join(", ")),
        tolerance: Some(cfg.tol_ppt),
        passed: true,
    })
}

fn d3_recovery(cfg: &SuiteConfig) -> antisym_core::Result<Outcome> {
    let range = clipped(1, 4, cfg.max_n);
    let mut passed = true;
    let mut values = Vec::new();
    for n in range.clone() {
        let z = zeta_full(n, Dimension::Finite(3))?;
        let bits = ef_lower_bound(n, ZetaSource::Full(Dimension::Finite(3)))?.total_bits;
        passed &= z == rpow(&rat(1, 2), n as i32) && (bits - n as f64).abs() < 1e-12;
        values.push(format_rational(&z));
    }
    Ok(Outcome {
        inputs: json!({"n": [range.start(), range.end()], "d": 3}),
        expected: "2^-n exactly".into(),
        computed: values.join(", "),
        tolerance: None,
        passed,
    })
}

fn main_bound(cfg: &SuiteConfig) -> antisym_core::Result<Outcome> {
    let lp_range = clipped(1, 12, cfg.max_n);
    let cert_range = clipped(1, 64, cfg.max_n);
    let floor = (4.0f64 / 3.0).log2() - 1e-12;
    let mut passed = true;
    let mut worst_per_copy = f64::INFINITY;
    for n in lp_range.clone() {
        passed &= zeta_simplified(n)? <= rpow(&rat(3, 4), n as i32);
        let per_copy = ef_lower_bound(n, ZetaSource::Simplified)?.per_copy_bits;
        worst_per_copy = worst_per_copy.min(per_copy);
        passed &= per_copy >= floor;
    }
    let mut infeasible = Vec::new();
    for n in cert_range.clone() {
        if !check_certificate(&DualCertificate::published(n))?.feasible {
            infeasible.push(n);
        }
    }
    passed &= infeasible.is_empty();
    Ok(Outcome {
        inputs: json!({"lp_n": [lp_range.start(), lp_range.end()], "certificate_n": [cert_range.start(), cert_range.end()]}),
        expected: "zeta <= (3/4)^n; certificate feasible; per-copy bits >= 0.415037".into(),
        computed: format!("smallest per-copy bits {worst_per_copy:.6}; infeasible certificates {infeasible:?}"),
        tolerance: None,
        passed,
    })
}

fn strong_duality(cfg: &SuiteConfig) -> antisym_core::Result<Outcome> {
    let range = clipped(1, 8, cfg.max_n);
    let mut passed = true;
    let mut values = Vec::new();
    for n in range.clone() {
        let primal = zeta_simplified(n)?;
        let dual = solve_lp(&simplified_dual_lp(n)?)?;
        passed &= dual.status == LpStatus::Optimal && dual.value.as_ref() == Some(&primal);
        values.push(format_rational(&primal));
    }
    Ok(Outcome {
        inputs: json!({"n": [range.start(), range.end()]}),
        expected: "primal = dual".into(),
        computed: format!("common optima {}", values.join(", ")),
        tolerance: None,
        passed,
    })
}

fn oracle_brackets(cfg: &SuiteConfig) -> antisym_core::Result<Outcome> {
    let opt = OptimizerConfig::default().with_restarts(cfg.restarts).with_seed(cfg.seed);
    let mut notes = Vec::new();

    let relax = zeta_full(1, Dimension::Finite(4))?;
    let p14 = max_purity(1, 4, &opt)?.value;
    let mut passed = relax == rat(1, 2) && (0.5 - cfg.tol_purity..=0.5 + 1e-12).contains(&p14);
    notes.push(format!("purity(1,4) {p14:.9}"));

    if cfg.max_n >= 2 {
        let p23 = max_purity(2, 3, &opt)?.value;
        passed &= (p23 - 0.25).abs() <= cfg.tol_purity_two_copy;
        notes.push(format!("purity(2,3) {p23:.9}"));
    }

    let mut worst: f64 = 0.0;
    for d in clipped(2, 12, cfg.max_d) {
        worst = worst.max((negativity_trace_norm(d)? - (d as f64 + 2.0) / d as f64).abs());
    }
    passed &= worst <= cfg.tol_negativity;
    notes.push(format!("negativity deviation {worst:.1e}"));

    for d in clipped(3, 5, cfg.max_d) {
        let s = max_separable_overlap(1, d, &opt)?.value;
        passed &= (s - 0.5).abs() <= cfg.tol_separable;
        notes.push(format!("separable(1,{d}) {s:.10}"));
    }
    Ok(Outcome {
        inputs: json!({"restarts": cfg.restarts, "seed": cfg.seed}),
        expected: "purity(1,4) in [1/2 - tol, 1/2]; purity(2,3) = 1/4; trace norm (d+2)/d; separable 1/2".into(),
        computed: notes.join(", "),
        tolerance: Some(cfg.tol_purity),
        passed,
    })
}

fn reduction_soundness(_cfg: &SuiteConfig) -> antisym_core::Result<Outcome> {
    let t4 = tmatrix_closed_form(Dimension::Finite(4))?;
    let t: Vec<Rational> = vec![int(-1), rat(1, 2), int(0)];
    let expanded = build_expanded_lp(2, &t4, &t)?;
    let full = solve_lp(&expanded)?;
    let reduced = build_reduced_lp(2, Dimension::Finite(4))?.value()?;
    let full_text = full.value.as_ref().map(format_rational).unwrap_or_else(|| format!("{:?}", full.status));
    Ok(Outcome {
        inputs: json!({"n": 2, "d": 4}),
        expected: format!("expanded optimum {full_text}"),
        computed: format!("reduced optimum {}", format_rational(&reduced)),
        tolerance: None,
        passed: expanded.num_vars() == 9 && full.value.as_ref() == Some(&reduced),
    })
}

fn headline_values(cfg: &SuiteConfig) -> antisym_core::Result<Outcome> {
    let ec = ec_lower();
    let er = er_sep_lower();
    let e = std::f64::consts::E.log2();
    let range = clipped(3, 100, cfg.max_d);
    let mut dominated = true;
    for d in range.clone() {
        dominated &= kd_upper(d as u64)? <= 2.0 * e / (d as f64 - 1.0);
    }
    Ok(Outcome {
        inputs: json!({"d": [range.start(), range.end()]}),
        expected: "ec 0.415037, kd_upper <= 2 log2(e)/(d-1), er_sep >= 0.2075".into(),
        computed: format!("ec {ec:.6}, er_sep {er:.6}, dominance {dominated}"),
        tolerance: Some(1e-6),
        passed: (ec - 0.415037).abs() < 1e-6 && dominated && er >= 0.2075,
    })
}

fn panic_message(payload: Box<dyn std::any::Any + Send>) -> String {
    payload
        .downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| payload.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "panic".into())
}

fn run_check(check: &Check, cfg: &SuiteConfig) -> CheckRecord {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(|| (check.run)(cfg)));
    let elapsed = start.elapsed();
    let mut record = CheckRecord {
        claim: check.claim.into(),
        computed: String::new(),
        error: None,
        expected: String::new(),
        inputs: Value::Null,
        name: check.name.into(),
        passed: false,
        runtime_limit_ms: check.limit.as_millis() as u64,
        runtime_ms: elapsed.as_millis() as u64,
        tolerance: None,
    };
    match result {
        Ok(Ok(outcome)) => {
            record.computed = outcome.computed;
            record.expected = outcome.expected;
            record.inputs = outcome.inputs;
            record.tolerance = outcome.tolerance;
            record.passed = outcome.passed && elapsed <= check.limit;
        }
        Ok(Err(e)) => record.error = Some(e.to_string()),
        Err(payload) => record.error = Some(format!("panic: {}", panic_message(payload))),
    }
    record
}

pub fn config_value(cfg: &SuiteConfig) -> Value {
    json!({
        "max_n": cfg.max_n,
        "max_d": cfg.max_d,
        "seed": cfg.seed,
        "restarts": cfg.restarts,
        "report": cfg.report.display().to_string(),
        "tol_esq": cfg.tol_esq,
        "tol_tmatrix": cfg.tol_tmatrix,
        "tol_ppt": cfg.tol_ppt,
        "tol_purity": cfg.tol_purity,
        "tol_purity_two_copy": cfg.tol_purity_two_copy,
        "tol_negativity": cfg.tol_negativity,
        "tol_separable": cfg.tol_separable,
    })
}

/// Runs every check in parallel; the report keeps the fixed check order.
pub fn run_suite(cfg: &SuiteConfig) -> VerificationReport {
    let checks: Vec<CheckRecord> = CHECKS.par_iter().map(|c| run_check(c, cfg)).collect();
    let passed = checks.iter().filter(|c| c.passed).count();
    let errors = checks.iter().filter(|c| c.error.is_some()).count();
    VerificationReport {
        summary: Summary {
            errors,
            failed: checks.len() - passed,
            passed,
            total: checks.len(),
        },
        config: config_value(cfg),
        checks,
    }
}

pub fn write_report(report: &VerificationReport, path: &Path) -> Result<(), Failure> {
    let value = serde_json::to_value(report).map_err(|e| Failure::Internal(e.to_string()))?;
    let text = serde_json::to_string_pretty(&value).map_err(|e| Failure::Internal(e.to_string()))?;
    std::fs::write(path, text + "\n").map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

pub fn summary_value(report: &VerificationReport) -> Value {
    json!({
        "checks": report
            .checks
            .iter()
            .map(|c| json!({
                "name": c.name,
                "status": if c.passed { "PASS" } else if c.error.is_some() { "ERROR" } else { "FAIL" },
                "runtime_ms": c.runtime_ms,
            }))
            .collect::<Vec<_>>(),
        "summary": report.summary,
        "report": report.config["report"],
    })
}

pub fn exit_status(report: &VerificationReport) -> Result<(), Failure> {
    if report.summary.errors > 0 {
        Err(Failure::Internal(format!("{} checks raised errors", report.summary.errors)))
    } else if report.summary.failed > 0 {
        Err(Failure::Verification)
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clipping_never_empties() {
        assert_eq!(clipped(4, 6, 2), 4..=4);
        assert_eq!(clipped(1, 12, 5), 1..=5);
        assert_eq!(clipped(2, 21, 100), 2..=21);
    }

    #[test]
    fn record_order_is_sorted_keys() {
        let record = run_check(&CHECKS[2], &SuiteConfig { max_d: 4, ..SuiteConfig::default() });
        assert!(record.passed);
        let direct = serde_json::to_string(&record).unwrap();
        let via_value = serde_json::to_string(&serde_json::to_value(&record).unwrap()).unwrap();
        assert_eq!(direct, via_value);
    }

    #[test]
    fn panics_become_errors() {
        fn boom(_: &SuiteConfig) -> antisym_core::Result<Outcome> {
            panic!("subsystem failure")
        }
        let check = Check { name: "boom", claim: "", limit: Duration::from_secs(1), run: boom };
        let record = run_check(&check, &SuiteConfig::default());
        assert!(!record.passed);
        assert_eq!(record.error.as_deref(), Some("panic: subsystem failure"));
    }
}
