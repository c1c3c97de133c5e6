//! One test per acceptance criterion. Each prints a single PASS/FAIL line
//! before asserting, so `cargo test --test acceptance -- --nocapture` gives
//! the full table even when a criterion fails.

use std::time::{Duration, Instant};

use antisym_core::bounds::{ec_lower, er_sep_lower, esq_upper, kd_upper};
use antisym_core::exact::{int, rat, rpow, solve_lp, LpStatus, Rational};
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
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn verdict(id: u32, name: &str, pass: bool, elapsed: Duration, detail: &str) {
    let status = if pass { "PASS" } else { "FAIL" };
    println!("criterion {id:>2} {status} [{name}] ({:.2}s) {detail}", elapsed.as_secs_f64());
    assert!(pass, "criterion {id} ({name}) failed: {detail}");
}

fn log2(x: f64) -> f64 {
    x.log2()
}

#[test]
fn criterion_01_esq_table() {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for d in (2..=20u64).step_by(2) {
        let expected = log2((d as f64 + 2.0) / d as f64);
        worst = worst.max((esq_upper(d).unwrap().value - expected).abs());
    }
    for d in (3..=21u64).step_by(2) {
        let expected = 0.5 * log2((d as f64 + 3.0) / (d as f64 - 1.0));
        worst = worst.max((esq_upper(d).unwrap().value - expected).abs());
    }
    let spots = [(2, 1.0, 1e-12), (4, 0.584963, 1e-6), (5, 0.5, 1e-12)];
    let spots_ok = spots
        .iter()
        .all(|&(d, v, tol)| (esq_upper(d).unwrap().value - v).abs() <= tol);
    let elapsed = start.elapsed();
    let pass = worst <= 1e-12 && spots_ok && elapsed < Duration::from_secs(1);
    verdict(1, "esq/kd bound table", pass, elapsed, &format!("max deviation {worst:.2e}, spot values ok: {spots_ok}"));
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn criterion_02_tmatrix_reconstruction() {
    let start = Instant::now();
    let mut pass = true;
    let mut details = Vec::new();
    for d in 4..=6usize {
        let numeric = tmatrix_numeric(d, 0).unwrap();
        let reference = tmatrix_closed_form(Dimension::Finite(d)).unwrap().to_f64();
        let matches = match_up_to_row_scaling(&numeric.matrix, &reference);
        let rows_ok = is_row_permutation_match(&matches, 1e-8);

        let iso = IsotypicStates::new(d).unwrap();
        let expected = [binomial(d, 4), d * d * (d * d - 1) / 12, d * (d - 2) * (d + 1) * (d - 1) / 8];
        let ranks = YoungSymbol::ALL.map(|y| iso.rank(y));
        let dims_ok = ranks == expected;

        pass &= rows_ok && dims_ok;
        let errors: Vec<String> = matches
            .iter()
            .map(|m| match m.reference_row {
                Some(r) => format!("block{}->row{} err {:.1e}", m.numeric_row, r, m.max_rel_error),
                None => format!("block{} unmatched", m.numeric_row),
            })
            .collect();
        details.push(format!(
            "d={d}: ranks {ranks:?} (expected {expected:?}), blocks {:?}, {}",
            numeric.block_dims,
            errors.join(", ")
        ));
    }
    let elapsed = start.elapsed();
    pass &= elapsed < Duration::from_secs(120);
    verdict(2, "T-matrix reconstruction", pass, elapsed, &details.join("; "));
}

#[test]
fn criterion_03_t_vector() {
    let start = Instant::now();
    let expected = [int(-1), rat(1, 2), int(0)];
    let mut pass = true;
    for d in 4..=8 {
        pass &= t_vector(d).unwrap() == expected;
    }
    verdict(3, "t vector", pass, start.elapsed(), "d = 4..=8 against (-1, 1/2, 0)");
}

#[test]
fn criterion_04_ppt_equivalence() {
    let start = Instant::now();
    let mut outcome = Ok(());
    let mut ppt_count = [0usize; 2];
    'outer: for (slot, d) in [4usize, 5].into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(d as u64);
        for _ in 0..100 {
            let raw: [f64; 3] = [rng.random(), rng.random(), rng.random()];
            let total: f64 = raw.iter().sum();
            let p: Vec<f64> = raw.iter().map(|x| x / total).collect();
            match ppt_direct_check(d, &p, 1) {
                Ok(check) => {
                    if check.direct_ppt {
                        ppt_count[slot] += 1;
                    }
                }
                Err(e) => {
                    outcome = Err(format!("d={d} p={p:?}: {e}"));
                    break 'outer;
                }
            }
        }
    }
    let detail = match &outcome {
        Ok(()) => format!("200 samples agree; PPT count d=4: {}, d=5: {}", ppt_count[0], ppt_count[1]),
        Err(e) => e.clone(),
    };
    verdict(4, "PPT equivalence n=1", outcome.is_ok(), start.elapsed(), &detail);
}

#[test]
fn criterion_05_qutrit_recovery() {
    let start = Instant::now();
    let mut pass = true;
    for n in 1..=4usize {
        pass &= zeta_full(n, Dimension::Finite(3)).unwrap() == rpow(&rat(1, 2), n as i32);
        let ef = ef_lower_bound(n, ZetaSource::Full(Dimension::Finite(3))).unwrap();
        pass &= (ef.total_bits - n as f64).abs() < 1e-12;
    }
    let elapsed = start.elapsed();
    pass &= elapsed < Duration::from_secs(30);
    verdict(5, "d=3 recovery", pass, elapsed, "zeta_full(n,3) = 2^-n for n = 1..=4");
}

#[test]
fn criterion_06_main_bound() {
    let start = Instant::now();
    let mut pass = true;
    let mut gaps = Vec::new();
    for n in 1..=12usize {
        let z = zeta_simplified(n).unwrap();
        let cap = rpow(&rat(3, 4), n as i32);
        pass &= z <= cap;
        let ef = ef_lower_bound(n, ZetaSource::Simplified).unwrap();
        pass &= ef.per_copy_bits >= (4.0f64 / 3.0).log2() - 1e-12;
        if n <= 3 {
            gaps.push(format!("n={n}: {z}"));
        }
    }
    for n in 1..=64 {
        pass &= check_certificate(&DualCertificate::published(n)).unwrap().feasible;
    }
    let elapsed = start.elapsed();
    pass &= elapsed < Duration::from_secs(60);
    verdict(6, "main LP bound", pass, elapsed, &gaps.join(", "));
}

#[test]
fn criterion_07_strong_duality() {
    let start = Instant::now();
    let mut pass = true;
    for n in 1..=8usize {
        let primal = zeta_simplified(n).unwrap();
        let dual = solve_lp(&simplified_dual_lp(n).unwrap()).unwrap();
        pass &= dual.status == LpStatus::Optimal && dual.value.as_ref() == Some(&primal);
    }
    verdict(7, "strong duality", pass, start.elapsed(), "n = 1..=8");
}

#[test]
fn criterion_08_oracle_brackets() {
    let start = Instant::now();
    let cfg = OptimizerConfig::default();
    let mut notes = Vec::new();

    let relax = zeta_full(1, Dimension::Finite(4)).unwrap();
    let p14 = max_purity(1, 4, &cfg).unwrap().value;
    let mut pass = relax == rat(1, 2) && (0.5 - 1e-6..=0.5 + 1e-12).contains(&p14);
    notes.push(format!("purity(1,4) {p14:.9}"));

    let p23 = max_purity(2, 3, &cfg).unwrap().value;
    pass &= (p23 - 0.25).abs() <= 1e-5;
    notes.push(format!("purity(2,3) {p23:.9}"));

    let mut worst: f64 = 0.0;
    for d in 2..=12usize {
        worst = worst.max((negativity_trace_norm(d).unwrap() - (d as f64 + 2.0) / d as f64).abs());
    }
    pass &= worst <= 1e-9;
    notes.push(format!("negativity max dev {worst:.1e}"));

    for d in 3..=5 {
        let s = max_separable_overlap(1, d, &cfg).unwrap().value;
        pass &= (s - 0.5).abs() <= 1e-8;
        notes.push(format!("sep(1,{d}) {s:.10}"));
    }
    let elapsed = start.elapsed();
    pass &= elapsed < Duration::from_secs(300);
    verdict(8, "oracle brackets", pass, elapsed, &notes.join(", "));
}

#[test]
fn criterion_09_reduction_soundness() {
    let start = Instant::now();
    let t4 = tmatrix_closed_form(Dimension::Finite(4)).unwrap();
    let t: Vec<Rational> = vec![int(-1), rat(1, 2), int(0)];
    let expanded = build_expanded_lp(2, &t4, &t).unwrap();
    let full = solve_lp(&expanded).unwrap();
    let reduced = build_reduced_lp(2, Dimension::Finite(4)).unwrap().value().unwrap();
    let pass = expanded.num_vars() == 9 && full.value.as_ref() == Some(&reduced);
    verdict(9, "symmetry reduction", pass, start.elapsed(), &format!("reduced {reduced}, expanded {:?}", full.value.map(|v| v.to_string())));
}

#[test]
fn criterion_10_headline_values() {
    let start = Instant::now();
    let ec = ec_lower();
    let mut pass = (ec - 0.415037).abs() < 1e-6 && (ec - (4.0f64 / 3.0).log2()).abs() < 1e-15;
    let e = std::f64::consts::E.log2();
    for d in 3..=100u64 {
        pass &= kd_upper(d).unwrap() <= 2.0 * e / (d as f64 - 1.0);
    }
    let er = er_sep_lower();
    pass &= er >= 0.2075 && (er - ec / 2.0).abs() < 1e-15;
    verdict(10, "headline values", pass, start.elapsed(), &format!("ec {ec:.6}, er_sep {er:.6}"));
}
