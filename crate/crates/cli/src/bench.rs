//! Greedy, k-swap and exhaustive search side by side on generated goals.

use std::io::Write;
use std::time::Instant;

use antiunify::{
    brute_lcg_inj, gen_pairs, generate_goals, greedy_lcg, kswap_generalize, Error, GenRelation, GeneratorConfig,
    OracleBounds, Relation, Variabilizer,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::{CliError, KValue};

/// One CSV row. Column order is frozen.
#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub instance: usize,
    pub seed: u64,
    pub size1: usize,
    pub size2: usize,
    pub candidates: usize,
    pub k: KValue,
    pub greedy: usize,
    pub kswap: usize,
    pub brute: Option<usize>,
    pub greedy_us: u128,
    pub kswap_us: u128,
    pub brute_us: Option<u128>,
}

impl Row {
    /// Bench invariants: k-swap never beats the exact search, and the
    /// unbounded variant matches it.
    pub fn violation(&self) -> Option<String> {
        let brute = self.brute?;
        if self.kswap > brute {
            return Some(format!("instance {}: kswap {} exceeds brute {brute}", self.instance, self.kswap));
        }
        if self.k == KValue::Inf && self.kswap != brute {
            return Some(format!("instance {}: unbounded kswap {} differs from brute {brute}", self.instance, self.kswap));
        }
        None
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, u128) {
    let t = Instant::now();
    let out = f();
    (out, t.elapsed().as_micros())
}

fn instance(index: usize, cfg: &GeneratorConfig, ks: &[KValue], bounds: OracleBounds) -> Result<Vec<Row>, Error> {
    let cfg = GeneratorConfig {
        seed: cfg.seed.wrapping_add(index as u64),
        ..cfg.clone()
    };
    let (g1, g2) = generate_goals(&cfg)?;
    let fresh = || Variabilizer::for_goals(&g1, &g2);
    let candidates = gen_pairs(&g1, &g2)?.len();
    let (greedy, greedy_us) = timed(|| greedy_lcg(&g1, &g2, GenRelation::Preceq, &mut fresh()));
    let greedy = greedy?.len();
    let (brute, brute_us) = match timed(|| brute_lcg_inj(&g1, &g2, Relation::PreceqInj, bounds)) {
        (Ok(out), us) => (Some(out.len()), Some(us)),
        (Err(Error::InstanceTooLarge { .. }), _) => (None, None),
        (Err(e), _) => return Err(e),
    };
    ks.iter()
        .map(|&k| {
            let (out, kswap_us) = timed(|| kswap_generalize(&g1, &g2, k.get(), &mut fresh()));
            Ok(Row {
                instance: index,
                seed: cfg.seed,
                size1: g1.len(),
                size2: g2.len(),
                candidates,
                k,
                greedy,
                kswap: out?.len(),
                brute,
                greedy_us,
                kswap_us,
                brute_us,
            })
        })
        .collect()
}

/// Runs every instance in parallel and writes the rows in instance order.
/// Returns the invariant violations found.
pub fn run(
    cfg: &GeneratorConfig,
    instances: usize,
    ks: &[KValue],
    bounds: OracleBounds,
    out: impl Write,
) -> Result<Vec<String>, CliError> {
    let rows: Vec<Vec<Row>> = (0..instances)
        .into_par_iter()
        .map(|i| instance(i, cfg, ks, bounds))
        .collect::<Result<_, _>>()?;
    let mut w = csv::Writer::from_writer(out);
    let mut violations = Vec::new();
    for row in rows.iter().flatten() {
        w.serialize(row).map_err(|e| CliError::Output(e.to_string()))?;
        violations.extend(row.violation());
    }
    w.flush().map_err(|e| CliError::Output(e.to_string()))?;
    Ok(violations)
}
