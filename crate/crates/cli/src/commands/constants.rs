use bhbounds::constants::{
    bh_pol_dfoos, closed_log_table, BoundCache, BoundKind, KSchedule, MultAnchor, MultRecursion, PolTable, ScalarField,
};
use bhbounds::error::{Error, Result};

use crate::args::{ConstantsTable, Field, Schedule};
use crate::output::{Cell, Table};

pub const COLUMNS: [&str; 5] = ["m", "closed", "dfoos", "pol_best", "k_star"];

fn schedule(s: Schedule) -> KSchedule {
    match s {
        Schedule::Pred => KSchedule::Predecessor,
        Schedule::Half => KSchedule::Halving,
        Schedule::Opt => KSchedule::Optimal,
    }
}

pub fn table(args: &ConstantsTable) -> Result<Table> {
    if args.m_max < 2 {
        return Err(Error::Rejected("--m-max must be >= 2".into()));
    }
    let cache = match &args.cache {
        Some(path) => BoundCache::load(path)?,
        None => BoundCache::new(),
    };
    let mut out = Table::new(&COLUMNS);
    match args.field {
        Field::C => complex_rows(args.m_max, &cache, &mut out)?,
        Field::R => real_rows(args, &cache, &mut out)?,
    }
    if let Some(path) = &args.cache {
        cache.save(path)?;
    }
    out.note("field", match args.field {
        Field::C => "C",
        Field::R => "R",
    });
    Ok(out)
}

fn complex_rows(m_max: usize, cache: &BoundCache, out: &mut Table) -> Result<()> {
    let field = ScalarField::Complex;
    let missing = (2..=m_max).any(|m| {
        cache.get(field, BoundKind::Mult, m, "closed").is_none()
            || cache.get(field, BoundKind::Pol, m, "best").is_none()
            || cache.get(field, BoundKind::Pol, m, "best.k").is_none()
    });
    let table = missing.then(|| PolTable::new(m_max));
    let closed = missing.then(|| closed_log_table(m_max));
    for m in 2..=m_max {
        let closed_log = cache.get_or_insert_with(field, BoundKind::Mult, m, "closed", || {
            Ok(closed.as_ref().expect("computed when missing")[m])
        })?;
        let best = table.as_ref().map(|t| t.best(m));
        let pol_log = cache.get_or_insert_with(field, BoundKind::Pol, m, "best", || {
            Ok(best.expect("computed when missing").bound.log_value)
        })?;
        // for the `best.k` strategy the stored number is the split k itself
        let k_star = cache.get_or_insert_with(field, BoundKind::Pol, m, "best.k", || {
            Ok(best.expect("computed when missing").k_star as f64)
        })?;
        let dfoos = bh_pol_dfoos(m)?;
        out.push(vec![
            m.into(),
            closed_log.exp().into(),
            dfoos.value.into(),
            pol_log.exp().into(),
            (k_star as u64).into(),
        ]);
    }
    Ok(())
}

fn real_rows(args: &ConstantsTable, cache: &BoundCache, out: &mut Table) -> Result<()> {
    let (Some(m0), Some(value)) = (args.anchor_m, args.anchor_value) else {
        return Err(Error::Rejected(
            "--field R needs --anchor-m and --anchor-value: no closed form anchors the real recursion".into(),
        ));
    };
    if !(value > 0.0) {
        return Err(Error::Rejected("--anchor-value must be positive".into()));
    }
    let anchor = MultAnchor { m0, log_value: value.ln() };
    let sched = schedule(args.schedule);
    let strategy = format!("{}@{}:{:e}", sched.name(), m0, value);
    let field = ScalarField::Real;
    let rec = MultRecursion::compute(args.m_max.max(m0), field, sched, anchor)?;
    for m in m0.max(2)..=args.m_max {
        let log = cache.get_or_insert_with(field, BoundKind::Mult, m, &strategy, || {
            Ok(rec.bound(m).expect("inside the table").log_value)
        })?;
        out.push(vec![m.into(), log.exp().into(), Cell::Empty, Cell::Empty, Cell::Empty]);
    }
    Ok(())
}
