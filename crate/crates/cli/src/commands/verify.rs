use rand::Rng as _;
use rayon::prelude::*;

use bhbounds::constants::{bh_mult_closed, ScalarField};
use bhbounds::error::{Error, Result};
use bhbounds::report::CheckReport;
use bhbounds::rng::{child_rng, child_seed};
use bhbounds::tensor_core::{
    check_blei_generalized, check_blei_pqs, check_dps, check_interpolation_holder, check_minkowski_embedding,
    pqs_outer_exponent, IndexSubset,
};
use bhbounds::witness::{
    bh_ratio, harris_check, khintchine_empirical, poly_khintchine_check, random_form, random_polynomial,
    unboundedness_probe, CoeffDistribution, HarrisConfig, ProbeEnsemble,
};
use bhbounds::{Exponent, Tensor};

use crate::args::{BhRatioArgs, Ensemble, Field, HarrisArgs, KhintchineArgs, PolyKhintchineArgs, ProbeArgs, Suite};
use crate::output::{Cell, Table};

/// Relative slack of the BH-ratio regression.
const BH_RATIO_SLACK: f64 = 1e-3;

pub const COLUMNS: [&str; 10] = ["check", "instance", "m", "n", "lhs", "rhs", "ratio", "slack", "holds", "detail"];

struct Row {
    check: &'static str,
    instance: usize,
    m: usize,
    n: usize,
    report: CheckReport,
}

fn into_table(rows: Vec<Row>) -> Table {
    let mut out = Table::new(&COLUMNS);
    for r in rows {
        if !r.report.holds {
            out.failures += 1;
        }
        out.push(vec![
            r.check.into(),
            r.instance.into(),
            r.m.into(),
            r.n.into(),
            r.report.lhs.into(),
            r.report.rhs.into(),
            r.report.ratio().into(),
            r.report.slack.into(),
            r.report.holds.into(),
            Cell::Text(serde_json::Value::Object(r.report.extra.clone()).to_string()),
        ]);
    }
    let checked = out.rows.len();
    out.note("checked", checked as u64);
    out.note("failures", out.failures as u64);
    out
}

fn field(f: Field) -> ScalarField {
    match f {
        Field::C => ScalarField::Complex,
        Field::R => ScalarField::Real,
    }
}

/// Instance `i` alternates complex and real Gaussian entries.
fn instance_tensor(m: usize, n: usize, seed: u64, i: usize) -> Result<Tensor> {
    let dist = if i % 2 == 0 { CoeffDistribution::Gaussian } else { CoeffDistribution::RealGaussian };
    Ok(random_form::<f64>(m, n, dist, child_seed(seed, i as u64))?.into_coeffs())
}

fn check_suite(suite: &Suite, what: impl Fn(usize) -> bool) -> Result<()> {
    if suite.trials == 0 || suite.n == 0 || !what(suite.m) {
        return Err(Error::Rejected("need trials >= 1, n >= 1 and a supported m".into()));
    }
    Ok(())
}

fn collect(rows: Vec<Result<Vec<Row>>>) -> Result<Table> {
    let rows: Vec<Row> = rows.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().collect();
    Ok(into_table(rows))
}

pub fn blei(suite: &Suite, seed: u64) -> Result<Table> {
    check_suite(suite, |m| m >= 1)?;
    let (m, n) = (suite.m, suite.n);
    let rows = (0..suite.trials)
        .into_par_iter()
        .map(|i| -> Result<Vec<Row>> {
            let a = instance_tensor(m, n, seed, i)?;
            let mut rng = child_rng(child_seed(seed, i as u64), 1);
            let mut rows = Vec::new();
            for k in 1..=m {
                rows.push(Row { check: "blei", instance: i, m, n, report: check_blei_generalized(&a, k)? });
                let s = rng.random_range(1.0..3.0);
                let q = s + rng.random_range(0.0..3.0);
                let p = pqs_outer_exponent(m, k, q, s);
                rows.push(Row { check: "blei_pqs", instance: i, m, n, report: check_blei_pqs(&a, k, p, q, s)? });
            }
            let members: Vec<usize> = (0..m).filter(|_| rng.random::<bool>()).collect();
            let subset = if members.is_empty() { IndexSubset::full(m) } else { IndexSubset::new(members, m)? };
            let lambda = rng.random_range(1.0..=2.0);
            rows.push(Row { check: "minkowski", instance: i, m, n, report: check_minkowski_embedding(&a, &subset, lambda)? });
            Ok(rows)
        })
        .collect();
    collect(rows)
}

pub fn dps(suite: &Suite, seed: u64) -> Result<Table> {
    check_suite(suite, |_| true)?;
    let n = suite.n;
    let rows = (0..suite.trials)
        .into_par_iter()
        .map(|i| -> Result<Vec<Row>> {
            let a = instance_tensor(2, n, seed, i)?;
            let mut rng = child_rng(child_seed(seed, i as u64), 1);
            let s1 = rng.random_range(1.0..3.0);
            let s2 = rng.random_range(1.0..3.0);
            let q = f64::max(s1, s2) + rng.random_range(0.05..4.0);
            Ok(vec![Row { check: "dps", instance: i, m: 2, n, report: check_dps(&a, q, s1, s2)? }])
        })
        .collect();
    collect(rows)
}

pub fn interp(suite: &Suite, seed: u64) -> Result<Table> {
    check_suite(suite, |m| m >= 1)?;
    let (m, n) = (suite.m, suite.n);
    let rows = (0..suite.trials)
        .into_par_iter()
        .map(|i| -> Result<Vec<Row>> {
            let a = instance_tensor(m, n, seed, i)?;
            let mut rng = child_rng(child_seed(seed, i as u64), 1);
            let p = Exponent::new((0..m).map(|_| rng.random_range(1.0..6.0)).collect())?;
            let q = Exponent::new((0..m).map(|_| rng.random_range(1.0..6.0)).collect())?;
            let theta = rng.random_range(0.01..0.99);
            Ok(vec![Row { check: "interp", instance: i, m, n, report: check_interpolation_holder(&a, &p, &q, theta)? }])
        })
        .collect();
    collect(rows)
}

pub fn khintchine(args: &KhintchineArgs, seed: u64) -> Result<Table> {
    let rows = (0..args.draws.max(1))
        .map(|i| -> Result<Vec<Row>> {
            let report = khintchine_empirical(args.p, args.n, args.trials, field(args.field), child_seed(seed, i as u64))?;
            Ok(vec![Row { check: "khintchine", instance: i, m: 1, n: args.n, report }])
        })
        .collect();
    collect(rows)
}

pub fn poly_khintchine(args: &PolyKhintchineArgs, seed: u64) -> Result<Table> {
    let rows = (0..args.draws.max(1))
        .map(|i| -> Result<Vec<Row>> {
            let s = child_seed(seed, i as u64);
            let p = random_polynomial::<f64>(args.m, args.n, CoeffDistribution::Gaussian, s)?;
            let report = poly_khintchine_check(&p, args.p, args.trials, child_seed(s, 1))?;
            Ok(vec![Row { check: "poly_khintchine", instance: i, m: args.m, n: args.n, report }])
        })
        .collect();
    collect(rows)
}

/// Every ordered partition of `m` into positive parts.
fn compositions(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    (1..=m)
        .flat_map(|first| {
            compositions(m - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

pub fn harris(args: &HarrisArgs, seed: u64) -> Result<Table> {
    let partitions = match &args.partition {
        Some(p) => vec![p.clone()],
        None => compositions(args.m),
    };
    let mut rows = Vec::new();
    for i in 0..args.draws.max(1) {
        let s = child_seed(seed, i as u64);
        let p = random_polynomial::<f64>(args.m, args.n, CoeffDistribution::Gaussian, s)?;
        for (j, part) in partitions.iter().enumerate() {
            let config = HarrisConfig {
                trials: args.trials,
                restarts: args.restarts,
                samples: args.samples,
                seed: child_seed(s, 1 + j as u64),
            };
            let report = harris_check(&p, part, &config)?.with("partition", part.clone());
            rows.push(Row { check: "harris", instance: i, m: args.m, n: args.n, report });
        }
    }
    Ok(into_table(rows))
}

pub fn bh_ratio_suite(args: &BhRatioArgs, seed: u64) -> Result<Table> {
    if args.trials == 0 || args.m == 0 || args.n == 0 {
        return Err(Error::Rejected("need trials, m, n >= 1".into()));
    }
    let constant = bh_mult_closed(args.m).value;
    let rows = (0..args.trials)
        .into_par_iter()
        .map(|i| -> Result<Vec<Row>> {
            let s = child_seed(seed, i as u64);
            let form = random_form::<f64>(args.m, args.n, CoeffDistribution::Gaussian, s)?;
            let r = bh_ratio(&form, None, args.restarts, child_seed(s, 1))?;
            let rhs = constant * r.norm_est;
            let report = CheckReport::with_abs_slack(r.lhs, rhs, BH_RATIO_SLACK * rhs)
                .with("norm_est", r.norm_est)
                .with("constant", constant)
                .with("bh_ratio", r.ratio);
            Ok(vec![Row { check: "bh_ratio", instance: i, m: args.m, n: args.n, report }])
        })
        .collect();
    collect(rows)
}

pub fn probe(args: &ProbeArgs, seed: u64) -> Result<Table> {
    let q = Exponent::new(args.q.clone())?;
    let ensemble = match args.ensemble {
        Ensemble::Character => ProbeEnsemble::Character,
        Ensemble::Rademacher => ProbeEnsemble::Rademacher,
        Ensemble::Steinhaus => ProbeEnsemble::Steinhaus,
    };
    let report = unboundedness_probe(&q, &args.n_list, ensemble, args.trials, args.restarts, seed)?;
    let mut out = Table::new(&["n", "max_ratio"]);
    for p in &report.points {
        out.push(vec![p.n.into(), p.max_ratio.into()]);
    }
    out.note("slope", report.slope);
    out.note("reciprocal_sum", args.q.iter().map(|x| 1.0 / x).sum::<f64>());
    out.note("bh_threshold", (args.q.len() as f64 + 1.0) / 2.0);
    Ok(out)
}
