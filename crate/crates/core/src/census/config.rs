use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    Theorem2,
    Nonreciprocal,
    Trinomial,
    Conjecture1,
    Dimitrov,
    BoxSuite,
    PolytopeSuite,
}

impl ExperimentKind {
    pub fn name(&self) -> &'static str {
        match self {
            ExperimentKind::Theorem2 => "theorem2",
            ExperimentKind::Nonreciprocal => "nonreciprocal",
            ExperimentKind::Trinomial => "trinomial",
            ExperimentKind::Conjecture1 => "conjecture1",
            ExperimentKind::Dimitrov => "dimitrov",
            ExperimentKind::BoxSuite => "box-suite",
            ExperimentKind::PolytopeSuite => "polytope-suite",
        }
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_value(serde_json::Value::String(s.to_string()))
            .map_err(|_| Error::Config(format!("unknown experiment kind {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exhaustive,
    Sample,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(Mode::Exhaustive),
            "sample" => Ok(Mode::Sample),
            _ => Err(Error::Config(format!("unknown mode {s:?}"))),
        }
    }
}

fn default_k() -> usize {
    3
}
fn default_workers() -> usize {
    1
}
fn default_interval() -> u64 {
    1000
}
fn default_budget() -> u64 {
    10_000_000
}
fn default_cap() -> usize {
    1000
}
fn default_resultant_cap() -> usize {
    24
}
fn default_resultant_degree_cap() -> u64 {
    2000
}

/// One experiment run. Field names double as TOML keys and CLI flags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    #[serde(default = "default_k")]
    pub k: usize,
    /// Upper bound `N` on the exponents.
    #[serde(rename = "N", default)]
    pub big_n: u64,
    /// Range of `n` for the difference-multiset census, as `a-b` or a single value.
    #[serde(default)]
    pub n: Option<String>,
    #[serde(default = "mode_default")]
    pub mode: Mode,
    #[serde(default)]
    pub samples: Option<u64>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default = "default_workers")]
    pub workers: usize,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub checkpoint: Option<PathBuf>,
    #[serde(default = "default_interval")]
    pub checkpoint_interval: u64,
    /// Largest exhaustive enumeration accepted.
    #[serde(default = "default_budget")]
    pub budget: u64,
    /// Stop with a checkpointed resource error after this many items in one call.
    #[serde(default)]
    pub stop_after: Option<u64>,
    #[serde(default = "default_cap")]
    pub witness_cap: usize,
    /// Box suite: draw `ε` from the `N`-dependent schedule instead of a fixed list.
    #[serde(default)]
    pub schedule: bool,
    /// Polytope suite: largest Sylvester matrix computed.
    #[serde(default = "default_resultant_cap")]
    pub resultant_cap: usize,
    /// Polytope suite: largest `y`-degree bound of a computed resultant.
    #[serde(default = "default_resultant_degree_cap")]
    pub resultant_degree_cap: u64,
}

fn mode_default() -> Mode {
    Mode::Exhaustive
}

impl ExperimentConfig {
    pub fn new(kind: ExperimentKind) -> Self {
        ExperimentConfig {
            kind,
            k: default_k(),
            big_n: 0,
            n: None,
            mode: Mode::Exhaustive,
            samples: None,
            seed: None,
            workers: default_workers(),
            out: None,
            checkpoint: None,
            checkpoint_interval: default_interval(),
            budget: default_budget(),
            stop_after: None,
            witness_cap: default_cap(),
            schedule: false,
            resultant_cap: default_resultant_cap(),
            resultant_degree_cap: default_resultant_degree_cap(),
        }
    }

    pub fn exhaustive(kind: ExperimentKind, k: usize, big_n: u64) -> Self {
        ExperimentConfig {
            k,
            big_n,
            ..Self::new(kind)
        }
    }

    pub fn sampled(kind: ExperimentKind, k: usize, big_n: u64, samples: u64, seed: u64) -> Self {
        ExperimentConfig {
            k,
            big_n,
            mode: Mode::Sample,
            samples: Some(samples),
            seed: Some(seed),
            ..Self::new(kind)
        }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn n_range(&self) -> Result<RangeInclusive<u32>> {
        let s = self
            .n
            .as_deref()
            .ok_or_else(|| Error::Config("n is required".into()))?;
        let bad = || Error::Config(format!("bad n range {s:?}"));
        let (a, b) = match s.split_once('-') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s.trim(), s.trim()),
        };
        let (a, b): (u32, u32) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
        if a == 0 || a > b {
            return Err(bad());
        }
        Ok(a..=b)
    }

    /// Number of items the run visits.
    pub fn item_count(&self) -> Result<u64> {
        match (self.kind, self.mode) {
            (ExperimentKind::Conjecture1, _) => Ok(self.n_range()?.map(|n| 1u64 << n).sum()),
            (_, Mode::Sample) => self
                .samples
                .ok_or_else(|| Error::Config("sample mode needs samples".into())),
            (ExperimentKind::BoxSuite | ExperimentKind::PolytopeSuite, Mode::Exhaustive) => Err(
                Error::Config(format!("{} only runs in sample mode", self.kind.name())),
            ),
            (_, Mode::Exhaustive) => Ok(binomial(self.big_n, self.k as u64)),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let err = |m: String| Err(Error::Config(m));
        if self.mode == Mode::Sample && self.seed.is_none() {
            return err("sample mode requires a seed".into());
        }
        if self.checkpoint_interval == 0 {
            return err("checkpoint_interval must be positive".into());
        }
        match self.kind {
            ExperimentKind::Conjecture1 => {
                let r = self.n_range()?;
                if *r.end() > 30 {
                    return err(format!("n = {} is above the census limit 30", r.end()));
                }
            }
            ExperimentKind::BoxSuite | ExperimentKind::PolytopeSuite => {
                if !(2..=6).contains(&self.k) {
                    return err(format!("k = {} outside 2..=6", self.k));
                }
                if self.big_n < 2 {
                    return err("N must be at least 2".into());
                }
            }
            _ => {
                let min_k = if self.kind == ExperimentKind::Theorem2 { 2 } else { 1 };
                if self.k < min_k {
                    return err(format!("k = {} is too small", self.k));
                }
                if self.big_n < self.k as u64 {
                    return err(format!("N = {} < k = {}", self.big_n, self.k));
                }
            }
        }
        let count = self.item_count()?;
        if self.mode == Mode::Exhaustive && count > self.budget {
            return err(format!("{count} items exceed the budget {}", self.budget));
        }
        Ok(())
    }

    /// Identifies runs whose checkpoints are interchangeable.
    pub(crate) fn fingerprint(&self) -> String {
        format!(
            "{}|k={}|N={}|n={:?}|{:?}|samples={:?}|seed={:?}|schedule={}|cap={}/{}",
            self.kind.name(),
            self.k,
            self.big_n,
            self.n,
            self.mode,
            self.samples,
            self.seed,
            self.schedule,
            self.resultant_cap,
            self.resultant_degree_cap
        )
    }
}

/// `C(n, k)`, saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}
