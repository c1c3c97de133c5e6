use antisym_core::bounds::bound_report;
use antisym_core::exact::{format_rational, rat, rpow, to_f64, Rational};
use antisym_core::oracle::{
    max_purity, max_reduced_operator_norm, max_separable_overlap, negativity_trace_norm, ppt_direct_check,
    OptimizerConfig, OracleResult,
};
use antisym_core::repspace::{
    is_row_permutation_match, match_up_to_row_scaling, rational_tmatrix_numeric, tmatrix_closed_form,
    tmatrix_numeric, Dimension, TMatrix,
};
use antisym_core::zeta::{check_certificate, ef_lower_bound, tampered_certificate, DualCertificate, ZetaSource};
use serde_json::{json, Value};

use crate::args::{Cli, Command, OptimizerArgs, OracleCommand, ZetaArgs};
use crate::config::SuiteConfig;
use crate::render::emit;
use crate::suite;
use crate::Failure;

pub fn rational(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

fn rational_rows(t: &TMatrix<Rational>) -> Value {
    t.rows.iter().map(|row| row.iter().map(rational).collect::<Vec<_>>()).collect()
}

fn symbols(t: &TMatrix<impl Clone>) -> Value {
    t.columns.iter().map(|y| y.to_string()).collect()
}

/// Prints `value` and turns a failed check into exit status 1.
fn finish(value: Value, passed: bool, cli: &Cli) -> Result<(), Failure> {
    emit(&value, cli.format)?;
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

pub fn run(cli: Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Bounds { d } => {
            let r = bound_report(*d)?;
            let value = json!({
                "d": r.d,
                "kd_upper": r.kd_upper,
                "esq_upper": r.esq_upper,
                "optimal_k": r.optimal_k,
                "ec_lower": r.ec_lower,
                "log_negativity": r.log_negativity,
                "er_sep_lower": r.er_sep_lower,
                "asymptotic_esq_bound": r.asymptotic_esq_bound,
            });
            finish(value, true, &cli)
        }
        Command::Zeta(args) => zeta(args, &cli),
        Command::Certificate { n, tampered } => {
            let n = *n as usize;
            let cert = if *tampered {
                tampered_certificate(n)?
            } else {
                DualCertificate::published(n)
            };
            let report = check_certificate(&cert)?;
            let slacks: Vec<Value> = report
                .slacks
                .iter()
                .enumerate()
                .map(|(m, s)| json!({"m": m, "slack": rational(s), "slack_f64": to_f64(s)}))
                .collect();
            let value = json!({
                "n": n,
                "z": rational(&cert.z),
                "deltas": cert.deltas.iter().map(rational).collect::<Vec<_>>(),
                "feasible": report.feasible,
                "deltas_nonnegative": report.deltas_nonnegative,
                "violated": report.violated,
                "slacks": slacks,
            });
            finish(value, report.feasible, &cli)
        }
        Command::Tmatrix { d, compare } => tmatrix(*d, *compare, &cli),
        Command::Oracle(cmd) => oracle(cmd, &cli),
        Command::VerifyAll(args) => {
            let mut cfg = SuiteConfig {
                seed: cli.seed,
                ..SuiteConfig::default()
            };
            if let Some(path) = &args.config {
                cfg.load(path)?;
            }
            if let Some(n) = args.max_n {
                cfg.max_n = n;
            }
            if let Some(d) = args.max_d {
                cfg.max_d = d;
            }
            if let Some(path) = &args.report {
                cfg.report = path.clone();
            }
            let report = suite::run_suite(&cfg);
            suite::write_report(&report, &cfg.report)?;
            emit(&suite::summary_value(&report), cli.format)?;
            suite::exit_status(&report)
        }
    }
}

fn zeta(args: &ZetaArgs, cli: &Cli) -> Result<(), Failure> {
    let (source, label) = match (&args.source.d, args.source.inf, args.source.simplified) {
        (Some(d), _, _) => (ZetaSource::Full(Dimension::Finite(*d)), format!("d={d}")),
        (None, true, _) => (ZetaSource::Full(Dimension::Infinite), "d=inf".to_string()),
        _ => (ZetaSource::Simplified, "simplified".to_string()),
    };
    let bound = ef_lower_bound(args.n, source)?;
    let cap = rpow(&rat(3, 4), args.n as i32);
    let value = json!({
        "n": args.n,
        "source": label,
        "zeta": rational(&bound.zeta),
        "zeta_f64": to_f64(&bound.zeta),
        "total_bits": bound.total_bits,
        "bits_per_copy": bound.per_copy_bits,
        "three_quarters_power": rational(&cap),
        "within_three_quarters_power": bound.zeta <= cap,
    });
    finish(value, true, cli)
}

fn tmatrix(d: usize, compare: bool, cli: &Cli) -> Result<(), Failure> {
    let numeric = tmatrix_numeric(d, cli.seed)?;
    let (reference, origin) = if d >= 4 {
        (tmatrix_closed_form(Dimension::Finite(d))?, "closed_form")
    } else {
        (rational_tmatrix_numeric(d, cli.seed)?, "numeric_rationalized")
    };
    let mut value = json!({
        "d": d,
        "columns": symbols(&reference),
        "rows": rational_rows(&reference),
        "origin": origin,
        "numeric_rows": numeric.matrix.rows,
        "numeric_block_dims": numeric.block_dims,
        "max_commutator": numeric.max_commutator,
    });
    let mut passed = true;
    if compare {
        let matches = match_up_to_row_scaling(&numeric.matrix, &reference.to_f64());
        passed = is_row_permutation_match(&matches, 1e-8);
        value["comparison"] = json!({
            "tolerance": 1e-8,
            "match": passed,
            "rows": matches
                .iter()
                .map(|m| json!({
                    "numeric_row": m.numeric_row,
                    "reference_row": m.reference_row,
                    "scale": m.scale,
                    "max_rel_error": m.max_rel_error,
                    "within": m.within(1e-8),
                }))
                .collect::<Vec<_>>(),
        });
    }
    finish(value, passed, cli)
}

fn optimizer_config(args: &OptimizerArgs, seed: u64) -> OptimizerConfig {
    OptimizerConfig::default().with_restarts(args.restarts).with_seed(seed)
}

fn oracle_value(kind: &str, args: &OptimizerArgs, seed: u64, r: &OracleResult) -> Value {
    json!({
        "oracle": kind,
        "n": args.n,
        "d": args.d,
        "seed": seed,
        "restarts": args.restarts,
        "value": r.value,
        "best_restart": r.best_restart,
        "iterations": r.iterations,
        "converged": r.converged,
    })
}

fn oracle(cmd: &OracleCommand, cli: &Cli) -> Result<(), Failure> {
    let seed = cli.seed;
    match cmd {
        OracleCommand::Purity(args) => {
            let r = max_purity(args.n, args.d, &optimizer_config(args, seed))?;
            finish(oracle_value("purity", args, seed, &r), true, cli)
        }
        OracleCommand::Opnorm(args) => {
            let r = max_reduced_operator_norm(args.n, args.d, &optimizer_config(args, seed))?;
            finish(oracle_value("opnorm", args, seed, &r), true, cli)
        }
        OracleCommand::Separable(args) => {
            let r = max_separable_overlap(args.n, args.d, &optimizer_config(args, seed))?;
            finish(oracle_value("separable", args, seed, &r), true, cli)
        }
        OracleCommand::Negativity { d } => {
            let norm = negativity_trace_norm(*d)?;
            let value = json!({
                "oracle": "negativity",
                "d": d,
                "trace_norm": norm,
                "log_negativity": norm.log2(),
            });
            finish(value, true, cli)
        }
        OracleCommand::Ppt { d, n, p } => {
            let check = ppt_direct_check(*d, p, *n)?;
            let value = json!({
                "oracle": "ppt",
                "d": d,
                "n": n,
                "p": p,
                "min_eigenvalue": check.min_eigenvalue,
                "min_lp_entry": check.min_lp_entry,
                "direct_ppt": check.direct_ppt,
                "lp_ppt": check.lp_ppt,
            });
            finish(value, true, cli)
        }
    }
}
