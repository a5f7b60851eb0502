//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use bhbounds::bohr::{bohr_table, BohrConfig};
use bhbounds::constants::{
    bh_mult_closed, bh_mult_recursive, bh_pol_dfoos, bh_pol_step, growth_report, khintchine, KSchedule, PolTable,
    ScalarField,
};
use bhbounds::rng::{child_rng, rng_from};
use bhbounds::scalar::Cplx;
use bhbounds::tensor_core::{
    check_blei_generalized, check_blei_pqs, check_dps, check_interpolation_holder, check_minkowski_embedding,
    pqs_outer_exponent, IndexSubset,
};
use bhbounds::witness::{
    bh_ratio, harris_check, khintchine_empirical, poly_khintchine_check, random_form, random_polynomial,
    random_torus_point, sup_norm_multilinear, symmetrize, unboundedness_probe, CoeffDistribution, HarrisConfig,
    MultilinearForm, ProbeEnsemble,
};
use bhbounds::{Exponent, Tensor};
use rand::Rng as _;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn constant_spot_values() -> Outcome {
    let a2 = khintchine(2.0, ScalarField::Complex).unwrap().value;
    let closed = bh_mult_closed(2).value;
    let step = bh_pol_step(2, 1).unwrap().value;
    let pass = a2 == 1.0 && (closed - 1.1283791670955126).abs() < 1e-12 && (step - 4.0).abs() < 1e-12;
    outcome(pass, format!("A_C(2) = {a2}, closed(2) = {closed:.17}, step(2,1) = {step:.17}"))
}

fn formula_equivalence() -> Outcome {
    let worst_mult = (1..=200)
        .map(|m| {
            let rec = bh_mult_recursive(m, ScalarField::Complex, KSchedule::Predecessor).unwrap().value;
            rel_err(rec, bh_mult_closed(m).value)
        })
        .fold(0.0, f64::max);
    let worst_pol = (2..=100)
        .map(|m| rel_err(bh_pol_step(m, 1).unwrap().value, bh_pol_dfoos(m).unwrap().value))
        .fold(0.0, f64::max);
    outcome(
        worst_mult <= 1e-12 && worst_pol <= 1e-12,
        format!("max rel err recursion/closed {worst_mult:.2e} (m <= 200), step/dfoos {worst_pol:.2e} (m <= 100)"),
    )
}

fn growth_claims() -> Outcome {
    let rows = growth_report(10_000).unwrap();
    let (peak_m, peak) = rows.iter().fold((0, 0.0), |b, r| if r.ratio > b.1 { (r.m, r.ratio) } else { b });
    let monotone = rows.windows(2).all(|w| w[1].ratio <= w[0].ratio);
    let table = PolTable::new(10_000);
    let normalized: Vec<f64> = [100usize, 1000, 10_000]
        .iter()
        .map(|&m| {
            let mf = m as f64;
            table.best(m).bound.log_value / (mf * mf.ln()).sqrt()
        })
        .collect();
    let decreasing = normalized.windows(2).all(|w| w[1] < w[0]);
    let pass = peak.is_finite() && peak_m <= 3 && monotone && decreasing && normalized[2] <= 1.5;
    outcome(
        pass,
        format!(
            "closed/m^((1-γ)/2) peaks at m = {peak_m} ({peak:.5}), monotone after: {monotone}; \
             log pol_best/sqrt(m log m) at 1e2,1e3,1e4 = {:.5}, {:.5}, {:.5}",
            normalized[0], normalized[1], normalized[2]
        ),
    )
}

fn inequality_suites() -> Outcome {
    const INSTANCES: usize = 1000;
    let mut failures = [0usize; 5];
    let mut rng = rng_from(4);
    for i in 0..INSTANCES {
        let m = rng.random_range(1..=4);
        let n = rng.random_range(1..=4);
        let dist = if i % 2 == 0 { CoeffDistribution::Gaussian } else { CoeffDistribution::RealGaussian };
        let a = random_form::<f64>(m, n, dist, i as u64).unwrap().into_coeffs();
        let k = rng.random_range(1..=m);

        failures[0] += !check_blei_generalized(&a, k).unwrap().holds as usize;

        let members: Vec<usize> = (0..m).filter(|_| rng.random::<bool>()).collect();
        let subset = if members.is_empty() { IndexSubset::full(m) } else { IndexSubset::new(members, m).unwrap() };
        failures[1] += !check_minkowski_embedding(&a, &subset, rng.random_range(1.0..=2.0)).unwrap().holds as usize;

        let p = Exponent::new((0..m).map(|_| rng.random_range(1.0..6.0)).collect()).unwrap();
        let q = Exponent::new((0..m).map(|_| rng.random_range(1.0..6.0)).collect()).unwrap();
        let theta = rng.random_range(0.01..0.99);
        failures[2] += !check_interpolation_holder(&a, &p, &q, theta).unwrap().holds as usize;

        let mat = random_form::<f64>(2, n, dist, i as u64 + 7).unwrap().into_coeffs();
        let (s1, s2) = (rng.random_range(1.0..3.0), rng.random_range(1.0..3.0));
        let qd = f64::max(s1, s2) + rng.random_range(0.05..4.0);
        failures[3] += !check_dps(&mat, qd, s1, s2).unwrap().holds as usize;

        let s = rng.random_range(1.0..3.0);
        let qq = s + rng.random_range(0.0..3.0);
        failures[4] += !check_blei_pqs(&a, k, pqs_outer_exponent(m, k, qq, s), qq, s).unwrap().holds as usize;
    }
    outcome(
        failures.iter().all(|&f| f == 0),
        format!(
            "{INSTANCES} instances each; failures blei {}, minkowski {}, interpolation {}, dps {}, blei_pqs {}",
            failures[0], failures[1], failures[2], failures[3], failures[4]
        ),
    )
}

fn monte_carlo_suites() -> Outcome {
    let mut violations = Vec::new();
    let mut inconclusive = 0;
    let mut count = 0;
    let mut note = |name: String, rep: bhbounds::CheckReport| {
        count += 1;
        if rep.extra.get("inconclusive") == Some(&serde_json::Value::Bool(true)) {
            inconclusive += 1;
        }
        if !rep.holds {
            violations.push(name);
        }
    };
    for (p, field) in [
        (1.2, ScalarField::Complex),
        (4.0 / 3.0, ScalarField::Complex),
        (2.0, ScalarField::Complex),
        (1.9, ScalarField::Real),
        (2.0, ScalarField::Real),
    ] {
        note(format!("khintchine {p:.3} {field:?}"), khintchine_empirical(p, 8, 100_000, field, 1).unwrap());
    }
    let poly = random_polynomial::<f64>(2, 4, CoeffDistribution::Gaussian, 2).unwrap();
    for p in [1.0, 1.5, 2.0] {
        note(format!("poly_khintchine {p}"), poly_khintchine_check(&poly, p, 100_000, 3).unwrap());
    }
    let parts: [&[usize]; 7] = [&[1], &[2], &[1, 1], &[3], &[2, 1], &[1, 2], &[1, 1, 1]];
    for (j, part) in parts.iter().enumerate() {
        let m: usize = part.iter().sum();
        let p = random_polynomial::<f64>(m, 3, CoeffDistribution::Gaussian, 10 + m as u64).unwrap();
        let cfg = HarrisConfig { trials: 10_000, restarts: 8, samples: 1024, seed: j as u64 };
        note(format!("harris {part:?}"), harris_check(&p, part, &cfg).unwrap());
    }
    let mut worst = 0.0f64;
    for m in [2usize, 3] {
        let limit = bh_mult_closed(m).value * 1.001;
        for draw in 0..1000u64 {
            let n = 2 + (draw % 3) as usize;
            let f = random_form::<f64>(m, n, CoeffDistribution::Gaussian, draw).unwrap();
            let r = bh_ratio(&f, None, 16, draw).unwrap().ratio.unwrap();
            worst = worst.max(r / bh_mult_closed(m).value);
            if r > limit {
                violations.push(format!("bh_ratio m={m} draw={draw}"));
            }
        }
    }
    outcome(
        violations.is_empty(),
        format!(
            "{count} Monte-Carlo checks + 2000 BH ratios, violations {:?}, inconclusive {inconclusive}, \
             worst ratio/closed {worst:.4}",
            violations
        ),
    )
}

fn dichotomy_probe() -> Outcome {
    let ns = [2, 4, 8, 16, 32];
    let run = |q: Vec<f64>, ens| unboundedness_probe(&Exponent::new(q).unwrap(), &ns, ens, 200, 8, 6).unwrap().slope;
    let admissible = run(vec![4.0 / 3.0, 4.0 / 3.0], ProbeEnsemble::Character);
    let violating = run(vec![1.0, 1.0], ProbeEnsemble::Character);
    let random = run(vec![4.0 / 3.0, 4.0 / 3.0], ProbeEnsemble::Rademacher);
    outcome(
        admissible.abs() < 0.1 && (0.35..=0.65).contains(&violating),
        format!(
            "character forms: slope q=(4/3,4/3) {admissible:.4}, q=(1,1) {violating:.4}; \
             for reference random ±1 forms give {random:.4} at q=(4/3,4/3)"
        ),
    )
}

fn bohr_pipeline() -> Outcome {
    let cfg = BohrConfig::default();
    let ns = [100usize, 1000, 10_000, 100_000, 1_000_000];
    let rows = bohr_table(&ns, &cfg).unwrap();
    let replay = rows.iter().all(|r| r.replay(cfg.tol));
    let increasing = rows.windows(2).all(|w| w[1].b_lower > w[0].b_lower);
    let envelope = rows.iter().all(|r| r.r_lower <= r.classical_upper);
    let b: Vec<String> = rows.iter().map(|r| format!("{:.5}", r.b_lower)).collect();
    outcome(
        replay && increasing && envelope,
        format!("replay {replay}, b_lower {} increasing {increasing}, under 2√(log n/n) {envelope}", b.join(" < ")),
    )
}

fn small_case_oracles() -> Outcome {
    let t = Tensor::from_real(2, 2, &[1.0, 1.0, 1.0, -1.0]).unwrap();
    let est = sup_norm_multilinear(&MultilinearForm::new(t), 32, 500, 0).unwrap().value;
    // with one phase of each slot fixed the sup is max_θ |1+e^{iθ}| + |1−e^{iθ}|
    let oracle = (0..=6284)
        .map(|i| {
            let z = Cplx::from_polar(1.0, i as f64 * 1e-3);
            (Cplx::new(1.0, 0.0) + z).norm() + (Cplx::new(1.0, 0.0) - z).norm()
        })
        .fold(0.0, f64::max);
    let p = random_polynomial::<f64>(3, 4, CoeffDistribution::Gaussian, 12).unwrap();
    let l = symmetrize(&p).unwrap();
    let scale = p.coefficient_l1();
    let mut rng = child_rng(12, 0);
    let worst = (0..1000)
        .map(|_| {
            let z = random_torus_point(4, &mut rng);
            (l.eval(&[&z, &z, &z]).unwrap() - p.eval(&z)).norm() / scale
        })
        .fold(0.0, f64::max);
    outcome(
        (est - oracle).abs() < 1e-6 && worst <= 1e-12,
        format!("‖L‖ est {est:.12} vs grid {oracle:.12}; diagonal restriction max rel err {worst:.2e}"),
    )
}

fn cli(args: &[&str], threads: Option<&str>) -> (Vec<u8>, i32) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bhbounds"));
    cmd.args(args).env_remove("BHBOUNDS_OUTPUT_DIR");
    if let Some(t) = threads {
        cmd.env("RAYON_NUM_THREADS", t);
    }
    let out = cmd.output().expect("run bhbounds");
    (out.stdout, out.status.code().unwrap_or(-1))
}

fn determinism() -> Outcome {
    let runs: [&[&str]; 4] = [
        &["verify", "bh-ratio", "--m", "3", "--n", "3", "--trials", "64", "--seed", "11"],
        &["verify", "probe", "--n-list", "2,4,8", "--trials", "8", "--ensemble", "rademacher", "--seed", "3"],
        &["verify", "harris", "--m", "3", "--n", "2", "--trials", "2000", "--seed", "5", "--format", "json"],
        &["bohr", "table", "--n", "2,3,50", "--empirical", "--sign-trials", "4", "--seed", "9"],
    ];
    let mut identical = 0;
    for argv in runs {
        let (a, ca) = cli(argv, None);
        let (b, cb) = cli(argv, None);
        let (c, cc) = cli(argv, Some("1"));
        if ca == 0 && a == b && a == c && ca == cb && cb == cc && !a.is_empty() {
            identical += 1;
        }
    }
    outcome(identical == runs.len(), format!("{identical}/{} commands byte-identical across repeats and thread counts", runs.len()))
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 9] = [
        ("constant spot values", Duration::from_secs(1), constant_spot_values),
        ("formula equivalence", Duration::from_secs(5), formula_equivalence),
        ("growth claims", Duration::from_secs(120), growth_claims),
        ("inequality property suites", Duration::from_secs(60), inequality_suites),
        ("Monte-Carlo inequality suites", Duration::from_secs(300), monte_carlo_suites),
        ("exponent dichotomy probe", Duration::from_secs(120), dichotomy_probe),
        ("Bohr pipeline", Duration::from_secs(120), bohr_pipeline),
        ("small-case oracle equivalence", Duration::from_secs(60), small_case_oracles),
        ("determinism", Duration::from_secs(300), determinism),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let pass = result.pass && elapsed <= *budget;
        failed += !pass as usize;
        println!(
            "criterion {} {} {name}: {} [{:.2}s of {}s]",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            result.detail,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    if failed > 0 {
        println!("{failed} criterion/criteria failed");
        std::process::exit(1);
    }
}
