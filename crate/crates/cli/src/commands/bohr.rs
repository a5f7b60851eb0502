use bhbounds::bohr::{bohr_table, bohr_upper_empirical, BohrConfig, EmpiricalConfig};
use bhbounds::error::Result;

use crate::args::{BohrTableArgs, BohrUpperArgs, Empirical};
use crate::output::{Cell, Table};

pub const TABLE_COLUMNS: [&str; 8] =
    ["n", "r_lower", "b_lower", "r_upper_emp", "M", "tail_bound", "classical_lower", "classical_upper"];

fn empirical(e: &Empirical, seed: u64) -> EmpiricalConfig {
    EmpiricalConfig {
        sign_trials: e.sign_trials,
        restarts: e.restarts,
        samples: e.samples,
        seed,
        max_monomials: e.max_monomials as u128,
    }
}

pub fn table(args: &BohrTableArgs, seed: u64) -> Result<Table> {
    let config = BohrConfig {
        tol: args.tol,
        m_cap: args.m_cap,
        empirical: args.empirical.then(|| empirical(&args.effort, seed)),
    };
    let records = bohr_table(&args.n, &config)?;
    let mut out = Table::new(&TABLE_COLUMNS);
    for r in records {
        out.push(vec![
            r.n.into(),
            r.r_lower.into(),
            r.b_lower.into(),
            r.r_upper_emp.into(),
            r.truncation.into(),
            r.tail_bound.into(),
            r.classical_lower.into(),
            r.classical_upper.into(),
        ]);
    }
    out.note("certified", "r_lower");
    Ok(out)
}

pub fn upper(args: &BohrUpperArgs, seed: u64) -> Result<Table> {
    let u = bohr_upper_empirical(args.n, args.m, &empirical(&args.effort, seed))?;
    let mut out = Table::new(&["n", "m", "r_upper_emp", "norm_est", "best_polynomial_seed"]);
    out.push(vec![
        args.n.into(),
        args.m.into(),
        u.r_upper_emp.into(),
        u.norm_est.into(),
        Cell::Int(u.best_polynomial_seed),
    ]);
    out.note("certified", "none: the norm estimate is a lower bound");
    Ok(out)
}
