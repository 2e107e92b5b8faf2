use std::collections::BTreeMap;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use crate::error::Result;

/// An input that landed in a noteworthy class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub exponents: Vec<u64>,
    pub class: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    pub kind: String,
    pub k: usize,
    #[serde(rename = "N")]
    pub big_n: u64,
    pub n: Option<u32>,
    pub mode: String,
    pub seed: Option<u64>,
    pub processed: u64,
    /// Outcome classes; they sum to `processed`.
    pub counts: BTreeMap<String, u64>,
    /// Secondary totals that are not a partition of the inputs.
    pub tallies: BTreeMap<String, u64>,
    pub values: BTreeMap<String, serde_json::Value>,
    pub witnesses: Vec<WitnessRecord>,
    pub witnesses_total: u64,
    pub runtime_ms: u64,
}

impl CensusReport {
    pub(crate) fn empty(cfg: &ExperimentConfig) -> Self {
        CensusReport {
            kind: cfg.kind.name().to_string(),
            k: cfg.k,
            big_n: cfg.big_n,
            n: None,
            mode: format!("{:?}", cfg.mode).to_lowercase(),
            seed: cfg.seed,
            processed: 0,
            counts: BTreeMap::new(),
            tallies: BTreeMap::new(),
            values: BTreeMap::new(),
            witnesses: Vec::new(),
            witnesses_total: 0,
            runtime_ms: 0,
        }
    }

    pub fn count(&self, class: &str) -> u64 {
        self.counts.get(class).copied().unwrap_or(0)
    }

    pub fn tally(&self, name: &str) -> u64 {
        self.tallies.get(name).copied().unwrap_or(0)
    }

    pub fn fraction(&self, class: &str) -> f64 {
        if self.processed == 0 {
            0.0
        } else {
            self.count(class) as f64 / self.processed as f64
        }
    }

    /// Binomial standard error of [`fraction`](Self::fraction).
    pub fn sigma(&self, class: &str) -> f64 {
        let p = self.fraction(class);
        if self.processed == 0 {
            0.0
        } else {
            (p * (1.0 - p) / self.processed as f64).sqrt()
        }
    }

    pub fn is_consistent(&self) -> bool {
        self.counts.values().sum::<u64>() == self.processed
    }

    /// The report with the timing zeroed, for comparing runs.
    pub fn without_timing(&self) -> Self {
        CensusReport {
            runtime_ms: 0,
            ..self.clone()
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// `kind,k,N,n,mode,seed,class,count,fraction` rows, one per outcome class.
    pub fn csv_rows(&self) -> Vec<[String; 9]> {
        self.counts
            .iter()
            .map(|(class, &c)| {
                [
                    self.kind.clone(),
                    self.k.to_string(),
                    self.big_n.to_string(),
                    self.n.map_or(String::new(), |n| n.to_string()),
                    self.mode.clone(),
                    self.seed.map_or(String::new(), |s| s.to_string()),
                    class.clone(),
                    c.to_string(),
                    format!("{:.6}", self.fraction(class)),
                ]
            })
            .collect()
    }
}

pub const CSV_HEADER: [&str; 9] = ["kind", "k", "N", "n", "mode", "seed", "class", "count", "fraction"];

/// Appends the reports to `path` as JSON lines and writes a CSV summary next
/// to it (same stem, `.csv`).
pub fn write_reports(path: &Path, reports: &[CensusReport]) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    let mut f = OpenOptions::new().create(true).append(true).open(path)?;
    for r in reports {
        writeln!(f, "{}", r.to_json_line())?;
    }
    let csv_path = path.with_extension("csv");
    let fresh = !csv_path.exists();
    let file = OpenOptions::new().create(true).append(true).open(&csv_path)?;
    let mut w = csv::Writer::from_writer(file);
    if fresh {
        w.write_record(CSV_HEADER).map_err(csv_err)?;
    }
    for r in reports {
        for row in r.csv_rows() {
            w.write_record(&row).map_err(csv_err)?;
        }
    }
    w.flush()?;
    Ok(())
}

fn csv_err(e: csv::Error) -> crate::Error {
    crate::Error::Io(e.to_string())
}
