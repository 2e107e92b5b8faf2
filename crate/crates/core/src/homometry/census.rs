//! Exhaustive census of `A ↦ A − A` over all `A ⊆ {0..n}` with `0 ∈ A`.
//!
//! The subset space is split by its high bits into partitions. Inside a
//! partition subsets are visited in Gray-code order, so each step toggles one
//! element and updates the positive-difference counts and a linear 128-bit
//! hash of them in `O(|A|)`. Equal hashes are resolved exactly from the sets.

use std::collections::{BTreeSet, HashMap};
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::difference_multiset;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::poly::SupportSet;

const MAX_N: u32 = 30;

#[derive(Clone, Debug)]
pub struct PhiCensusOptions {
    pub exec: Exec,
    /// Number of high-order bits fixed per partition.
    pub partition_bits: u32,
    /// Directory for per-partition result files; finished partitions are reused.
    pub checkpoint: Option<PathBuf>,
    /// Maximum number of partitions computed by one call.
    pub max_partitions: Option<usize>,
}

impl Default for PhiCensusOptions {
    fn default() -> Self {
        PhiCensusOptions {
            exec: Exec::sequential(),
            partition_bits: 6,
            checkpoint: None,
            max_partitions: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiCensus {
    pub n: u32,
    /// Number of distinct difference multisets.
    pub distinct: u64,
    /// Number of sets with `A = mirror(A)` (`R_n`).
    pub symmetric: u64,
    /// Number of mirror classes sharing their multiset with another class.
    pub exceptional_classes: u64,
}

impl PhiCensus {
    /// `distinct / 2^{n-1}`.
    pub fn ratio(&self) -> f64 {
        self.distinct as f64 / 2f64.powi(self.n as i32 - 1)
    }

    /// Number of mirror classes `(2^n + R_n)/2`, an upper bound on `distinct`.
    pub fn pairing_bound(&self) -> u64 {
        ((1u64 << self.n) + self.symmetric) / 2
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "distinct": self.distinct,
            "symmetric": self.symmetric,
            "ratio_to_2^{n-1}": self.ratio(),
        })
    }
}

struct Partition {
    /// `(hash, word)` sorted; bit `i` of `word` is element `i`.
    entries: Vec<(u128, u32)>,
    symmetric: u64,
}

fn hash_keys(n: u32) -> Vec<u128> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xd1ff_5e75);
    (0..=n).map(|_| rng.random::<u128>() | 1).collect()
}

fn is_symmetric_word(w: u32) -> bool {
    let top = 31 - w.leading_zeros();
    w.reverse_bits() >> (31 - top) == w
}

fn compute_partition(n: u32, low: u32, j: u32, keys: &[u128]) -> Partition {
    let mut w: u32 = 1 | (j << (low + 1));
    let mut counts = vec![0u32; n as usize + 1];
    let mut hash: u128 = 0;
    let elems = |w: u32| (0..=n).filter(move |&i| w >> i & 1 == 1);
    for a in elems(w) {
        for b in elems(w).filter(|&b| b < a) {
            counts[(a - b) as usize] += 1;
            hash = hash.wrapping_add(keys[(a - b) as usize]);
        }
        hash = hash.wrapping_add(keys[0]);
    }
    let total = 1usize << low;
    let mut entries = Vec::with_capacity(total);
    let mut symmetric = 0;
    for g in 0..total {
        if g > 0 {
            let e = g.trailing_zeros() + 1;
            let adding = w >> e & 1 == 0;
            let mut rest = w & !(1 << e);
            while rest != 0 {
                let x = rest.trailing_zeros();
                rest &= rest - 1;
                let s = x.abs_diff(e) as usize;
                if adding {
                    counts[s] += 1;
                    hash = hash.wrapping_add(keys[s]);
                } else {
                    counts[s] -= 1;
                    hash = hash.wrapping_sub(keys[s]);
                }
            }
            if adding {
                hash = hash.wrapping_add(keys[0]);
            } else {
                hash = hash.wrapping_sub(keys[0]);
            }
            w ^= 1 << e;
        }
        if is_symmetric_word(w) {
            symmetric += 1;
        }
        entries.push((hash, w));
    }
    entries.sort_unstable();
    Partition { entries, symmetric }
}

fn word_to_set(w: u32) -> SupportSet {
    SupportSet::from_exponents((0..32u32).filter(|&i| w >> i & 1 == 1).map(u64::from))
}

fn partition_file(dir: &Path, n: u32, bits: u32, j: u32) -> PathBuf {
    dir.join(format!("phi-n{n}-b{bits}-p{j:05}.bin"))
}

fn save_partition(path: &Path, p: &Partition) -> Result<()> {
    let mut buf = Vec::with_capacity(16 + p.entries.len() * 20);
    buf.extend_from_slice(&p.symmetric.to_le_bytes());
    buf.extend_from_slice(&(p.entries.len() as u64).to_le_bytes());
    for &(h, w) in &p.entries {
        buf.extend_from_slice(&h.to_le_bytes());
        buf.extend_from_slice(&w.to_le_bytes());
    }
    let tmp = path.with_extension("tmp");
    fs::File::create(&tmp)?.write_all(&buf)?;
    fs::rename(tmp, path)?;
    Ok(())
}

fn load_partition(path: &Path) -> Result<Option<Partition>> {
    let mut buf = Vec::new();
    match fs::File::open(path) {
        Ok(mut f) => f.read_to_end(&mut buf)?,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let bad = || Error::Io(format!("corrupt checkpoint {}", path.display()));
    if buf.len() < 16 {
        return Err(bad());
    }
    let symmetric = u64::from_le_bytes(buf[0..8].try_into().unwrap());
    let len = u64::from_le_bytes(buf[8..16].try_into().unwrap()) as usize;
    if buf.len() != 16 + 20 * len {
        return Err(bad());
    }
    let entries = buf[16..]
        .chunks_exact(20)
        .map(|c| {
            (
                u128::from_le_bytes(c[0..16].try_into().unwrap()),
                u32::from_le_bytes(c[16..20].try_into().unwrap()),
            )
        })
        .collect();
    Ok(Some(Partition { entries, symmetric }))
}

fn run(n: u32, opts: &PhiCensusOptions, collect: bool) -> Result<(PhiCensus, Vec<SupportSet>)> {
    if n == 0 || n > MAX_N {
        return Err(Error::Domain(format!("census needs 1 ≤ n ≤ {MAX_N}, got {n}")));
    }
    let bits = opts.partition_bits.min(n);
    let low = n - bits;
    let keys = hash_keys(n);
    let parts = 1u32 << bits;

    let mut done: Vec<Option<Partition>> = Vec::with_capacity(parts as usize);
    for j in 0..parts {
        done.push(match &opts.checkpoint {
            Some(dir) => load_partition(&partition_file(dir, n, bits, j))?,
            None => None,
        });
    }
    let todo: Vec<u32> = (0..parts).filter(|&j| done[j as usize].is_none()).collect();
    let budget = opts.max_partitions.unwrap_or(usize::MAX);
    let now = &todo[..todo.len().min(budget)];
    let fresh = opts.exec.map(now, |&j| compute_partition(n, low, j, &keys));
    if let Some(dir) = &opts.checkpoint {
        fs::create_dir_all(dir)?;
        for (&j, p) in now.iter().zip(&fresh) {
            save_partition(&partition_file(dir, n, bits, j), p)?;
        }
    }
    if todo.len() > now.len() {
        return Err(Error::Resource {
            message: format!(
                "census n={n}: {} of {parts} partitions left after budget of {budget}",
                todo.len() - now.len()
            ),
            checkpoint: opts.checkpoint.clone(),
        });
    }
    for (&j, p) in now.iter().zip(fresh) {
        done[j as usize] = Some(p);
    }

    let mut symmetric = 0;
    let mut all: Vec<(u128, u32)> = Vec::with_capacity(1 << n);
    for p in done.into_iter().flatten() {
        symmetric += p.symmetric;
        all.extend(p.entries);
    }
    all.sort_unstable();

    let mut distinct = 0u64;
    let mut exceptional_classes = 0u64;
    let mut exceptional = Vec::new();
    let mut i = 0;
    while i < all.len() {
        let mut j = i + 1;
        while j < all.len() && all[j].0 == all[i].0 {
            j += 1;
        }
        if j - i == 1 {
            distinct += 1;
        } else {
            let mut groups: HashMap<Vec<u64>, BTreeSet<SupportSet>> = HashMap::new();
            for &(_, w) in &all[i..j] {
                let a = word_to_set(w);
                let rep = a.clone().min(a.mirror());
                groups
                    .entry(difference_multiset(&a).encode())
                    .or_default()
                    .insert(rep);
            }
            distinct += groups.len() as u64;
            for classes in groups.into_values() {
                if classes.len() > 1 {
                    exceptional_classes += classes.len() as u64;
                    if collect {
                        exceptional.extend(classes);
                    }
                }
            }
        }
        i = j;
    }
    exceptional.sort();
    Ok((
        PhiCensus {
            n,
            distinct,
            symmetric,
            exceptional_classes,
        },
        exceptional,
    ))
}

/// Distinct difference multisets and symmetric sets among all `A ⊆ {0..n}`, `0 ∈ A`.
pub fn census_phi_image(n: u32, opts: &PhiCensusOptions) -> Result<PhiCensus> {
    run(n, opts, false).map(|r| r.0)
}

/// Mirror-class representatives (the smaller of `A` and `mirror(A)`) whose
/// difference multiset is shared with another mirror class.
pub fn exceptional_sets(n: u32, opts: &PhiCensusOptions) -> Result<Vec<SupportSet>> {
    run(n, opts, true).map(|r| r.1)
}

/// Hash-free recount: `(distinct, symmetric)` from exact encodings.
pub fn recount_exact(n: u32) -> (u64, u64) {
    let mut seen = BTreeSet::new();
    let mut symmetric = 0;
    for mask in 0u64..(1 << n) {
        let a = SupportSet::from_exponents((1..=n as u64).filter(|i| mask >> (i - 1) & 1 == 1));
        if a.is_symmetric() {
            symmetric += 1;
        }
        seen.insert(difference_multiset(&a).encode());
    }
    (seen.len() as u64, symmetric)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases_match_recount() {
        let opts = PhiCensusOptions {
            partition_bits: 2,
            ..Default::default()
        };
        let c1 = census_phi_image(1, &opts).unwrap();
        assert_eq!((c1.distinct, c1.symmetric), (2, 2));
        for n in 2..=10 {
            let c = census_phi_image(n, &opts).unwrap();
            assert_eq!((c.distinct, c.symmetric), recount_exact(n), "n={n}");
            assert!(c.distinct <= c.pairing_bound());
            assert_eq!(c.distinct == c.pairing_bound(), c.exceptional_classes == 0);
        }
    }

    #[test]
    fn symmetric_word_check() {
        assert!(is_symmetric_word(0b1));
        assert!(is_symmetric_word(0b11));
        assert!(is_symmetric_word(0b10101));
        assert!(!is_symmetric_word(0b1011));
    }

    #[test]
    fn budget_and_resume() {
        let dir = tempfile::tempdir().unwrap();
        let opts = PhiCensusOptions {
            partition_bits: 3,
            checkpoint: Some(dir.path().to_path_buf()),
            max_partitions: Some(3),
            ..Default::default()
        };
        let mut tries = 0;
        let c = loop {
            tries += 1;
            match census_phi_image(9, &opts) {
                Ok(c) => break c,
                Err(Error::Resource { checkpoint, .. }) => assert!(checkpoint.is_some()),
                Err(e) => panic!("{e}"),
            }
        };
        assert_eq!(tries, 3);
        assert_eq!((c.distinct, c.symmetric), recount_exact(9));
    }
}
