//! Experiment runner: enumerates or samples exponent vectors, classifies each
//! one, and aggregates the outcomes into a report.
//!
//! Items are processed in chunks of `checkpoint_interval`. Sample `i` is drawn
//! from its own ChaCha8 stream `i`, so the report does not depend on the
//! number of workers or on where a run was interrupted.

mod config;
mod report;
mod runs;

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::poly::SupportSet;

pub use config::{binomial, ExperimentConfig, ExperimentKind, Mode};
pub use report::{write_reports, CensusReport, WitnessRecord, CSV_HEADER};
pub use runs::{
    box_suite, classify_full, classify_noncyclotomic, conjecture1_census, dimitrov_sweep,
    nonreciprocal_census, polytope_suite, run, theorem2_census, trinomial_crosscheck, Class,
};

/// RNG for item `i` of a run seeded with `seed`.
pub fn stream_rng(seed: u64, i: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    rng
}

/// Uniform `k`-subset of `1..=n`: sorted distinct draws, redrawn on a repeat.
pub fn sample_subset<R: Rng>(rng: &mut R, n: u64, k: usize) -> Vec<u64> {
    assert!(k as u64 <= n);
    loop {
        let mut v: Vec<u64> = (0..k).map(|_| rng.random_range(1..=n)).collect();
        v.sort_unstable();
        if v.windows(2).all(|w| w[0] < w[1]) {
            return v;
        }
    }
}

/// The `idx`-th `k`-subset of `1..=n` in lexicographic order.
pub fn unrank_combination(n: u64, k: usize, mut idx: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(k);
    let mut c = 1;
    for pos in 0..k {
        loop {
            let rest = binomial(n - c, (k - pos - 1) as u64);
            if idx < rest {
                break;
            }
            idx -= rest;
            c += 1;
        }
        out.push(c);
        c += 1;
    }
    out
}

/// `{0} ∪ n`.
pub(crate) fn with_zero(n: &[u64]) -> SupportSet {
    SupportSet::from_exponents(std::iter::once(0).chain(n.iter().copied()))
}

/// Classification of one item.
pub(crate) struct Outcome {
    pub class: &'static str,
    /// Exponents and a description, for classes worth keeping.
    pub witness: Option<(Vec<u64>, String)>,
    pub tallies: Vec<(&'static str, u64)>,
}

impl Outcome {
    pub fn plain(class: &'static str) -> Self {
        Outcome {
            class,
            witness: None,
            tallies: Vec::new(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Checkpoint {
    fingerprint: String,
    processed: u64,
    counts: BTreeMap<String, u64>,
    tallies: BTreeMap<String, u64>,
    witnesses: Vec<WitnessRecord>,
    witnesses_total: u64,
}

fn save(path: &Path, cp: &Checkpoint) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, serde_json::to_vec(cp)?)?;
    std::fs::rename(tmp, path)?;
    Ok(())
}

/// Runs `classify` over items `0..total` and aggregates, resuming from and
/// updating the configured checkpoint.
pub(crate) fn drive<T, I, C>(cfg: &ExperimentConfig, total: u64, item: I, classify: C) -> Result<CensusReport>
where
    I: Fn(u64) -> T + Sync + Send,
    C: Fn(&T) -> Result<Outcome> + Sync + Send,
{
    let start = Instant::now();
    let exec = Exec::new(cfg.workers);
    let mut cp = Checkpoint {
        fingerprint: cfg.fingerprint(),
        processed: 0,
        counts: BTreeMap::new(),
        tallies: BTreeMap::new(),
        witnesses: Vec::new(),
        witnesses_total: 0,
    };
    if let Some(path) = cfg.checkpoint.as_deref().filter(|p| p.exists()) {
        let old: Checkpoint = serde_json::from_slice(&std::fs::read(path)?)?;
        if old.fingerprint != cp.fingerprint {
            return Err(Error::Config(format!(
                "checkpoint {} belongs to a different run ({})",
                path.display(),
                old.fingerprint
            )));
        }
        cp = old;
    }
    let mut done_here = 0u64;
    while cp.processed < total {
        let mut len = cfg.checkpoint_interval.min(total - cp.processed);
        if let Some(limit) = cfg.stop_after {
            if done_here >= limit {
                if let Some(path) = &cfg.checkpoint {
                    save(path, &cp)?;
                }
                return Err(Error::Resource {
                    message: format!("stopped after {done_here} items, {} of {total} done", cp.processed),
                    checkpoint: cfg.checkpoint.clone(),
                });
            }
            len = len.min(limit - done_here);
        }
        let base = cp.processed;
        let outcomes = exec.map_range(len as usize, |j| classify(&item(base + j as u64)));
        for o in outcomes {
            let o = o?;
            *cp.counts.entry(o.class.to_string()).or_default() += 1;
            for (name, v) in o.tallies {
                *cp.tallies.entry(name.to_string()).or_default() += v;
            }
            if let Some((exponents, detail)) = o.witness {
                cp.witnesses_total += 1;
                if cp.witnesses.len() < cfg.witness_cap {
                    cp.witnesses.push(WitnessRecord {
                        exponents,
                        class: o.class.to_string(),
                        detail,
                    });
                }
            }
        }
        cp.processed += len;
        done_here += len;
        if let Some(path) = &cfg.checkpoint {
            save(path, &cp)?;
        }
    }
    let mut report = CensusReport::empty(cfg);
    report.processed = cp.processed;
    report.counts = cp.counts;
    report.tallies = cp.tallies;
    report.witnesses = cp.witnesses;
    report.witnesses_total = cp.witnesses_total;
    report.runtime_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unrank_matches_lex_order() {
        let mut all = Vec::new();
        for a in 1..=6u64 {
            for b in a + 1..=6 {
                for c in b + 1..=6 {
                    all.push(vec![a, b, c]);
                }
            }
        }
        for (i, v) in all.iter().enumerate() {
            assert_eq!(unrank_combination(6, 3, i as u64), *v);
        }
    }

    #[test]
    fn sampling_is_reproducible() {
        let a = sample_subset(&mut stream_rng(9, 4), 50, 3);
        let b = sample_subset(&mut stream_rng(9, 4), 50, 3);
        assert_eq!(a, b);
        assert!(a.windows(2).all(|w| w[0] < w[1]) && a[2] <= 50);
        assert_ne!(a, sample_subset(&mut stream_rng(9, 5), 50, 3));
    }
}
