//! Regenerates `tests/fixtures/golden.json`:
//! `cargo run --release -p bhbounds --example golden > crates/core/tests/fixtures/golden.json`

use bhbounds::bohr::series_value;
use bhbounds::constants::PolTable;
use bhbounds::witness::{random_form, CoeffDistribution};
use serde_json::json;

const SEED: u64 = 20_110_415;

fn main() {
    let form = random_form::<f64>(2, 2, CoeffDistribution::Gaussian, SEED).unwrap();
    let draws: Vec<[f64; 2]> = form.coeffs().data().iter().map(|z| [z.re, z.im]).collect();

    let table = PolTable::new(10_000);
    let growth: Vec<_> = [100usize, 1000, 10_000]
        .iter()
        .map(|&m| {
            let best = table.best(m);
            let mf = m as f64;
            json!({"m": m, "k_star": best.k_star, "normalized_log": best.bound.log_value / (mf * mf.ln()).sqrt()})
        })
        .collect();

    let n = 10_000usize;
    let r = 0.5 * ((n as f64).ln() / n as f64).sqrt();
    let s = series_value(r, n, 200).unwrap();

    let doc = json!({
        "version": 1,
        "gaussian_form": {"m": 2, "n": 2, "seed": SEED, "coeffs": draws},
        "pol_best_growth": {"rows": growth, "threshold": 1.5},
        "series": {"n": n, "r": r, "truncation": 200, "sum": s.sum, "tail_bound": s.tail_bound, "rho": s.rho},
    });
    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
}
