//! Difference multisets, the autocorrelation equation `F·F̃ = G·G̃` and the
//! census of the map `A ↦ A − A`.

mod census;
mod solver;

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::poly::{DensePoly, SupportSet};

pub use census::{census_phi_image, exceptional_sets, recount_exact, PhiCensus, PhiCensusOptions};
pub use solver::{solve_autocorrelation, uniqueness_report, UniquenessReport, Witness};

/// Multiset `A − A`, stored as its non-negative half.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DifferenceMultiset {
    /// Sorted `(difference, count)` pairs; `counts[0] = (0, |A|)`.
    counts: Vec<(u64, u64)>,
}

impl DifferenceMultiset {
    pub fn cardinality(&self) -> u64 {
        self.counts[0].1
    }

    pub fn count(&self, s: u64) -> u64 {
        self.counts
            .binary_search_by_key(&s, |p| p.0)
            .map_or(0, |i| self.counts[i].1)
    }

    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.counts
    }

    /// Largest difference, i.e. the diameter of `A`.
    pub fn diameter(&self) -> u64 {
        self.counts.last().unwrap().0
    }

    /// Number of ordered pairs, counting both signs: `|A|²`.
    pub fn total(&self) -> u64 {
        self.counts
            .iter()
            .map(|&(s, c)| if s == 0 { c } else { 2 * c })
            .sum()
    }

    /// Length-prefixed list `[len, s_0, c_0, s_1, c_1, ...]`.
    pub fn encode(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(1 + 2 * self.counts.len());
        out.push(self.counts.len() as u64);
        for &(s, c) in &self.counts {
            out.push(s);
            out.push(c);
        }
        out
    }
}

impl fmt::Debug for DifferenceMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(|(s, c)| format!("{s}:{c}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub fn difference_multiset(a: &SupportSet) -> DifferenceMultiset {
    let e = a.exponents();
    let mut tally = vec![0u64; a.degree() as usize + 1];
    for (i, &x) in e.iter().enumerate() {
        for &y in &e[..i] {
            tally[(x - y) as usize] += 1;
        }
    }
    tally[0] = e.len() as u64;
    DifferenceMultiset {
        counts: tally
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c > 0)
            .map(|(s, c)| (s as u64, c))
            .collect(),
    }
}

/// `F·F̃`; the coefficient of `x^{d+s}` is the number of pairs with difference `s`.
pub fn autocorrelation_poly(a: &SupportSet) -> DensePoly {
    let d = a.degree() as usize;
    let mut c = vec![BigInt::default(); 2 * d + 1];
    for &(s, n) in difference_multiset(a).pairs() {
        c[d + s as usize] = BigInt::from(n);
        c[d - s as usize] = BigInt::from(n);
    }
    DensePoly::from_coeffs(c)
}

/// `A' = {max A − a : a ∈ A}`.
pub fn mirror(a: &SupportSet) -> SupportSet {
    a.mirror()
}
