use serde::Serialize;

use super::difference_multiset;
use crate::poly::SupportSet;

struct Search {
    d: u64,
    k: usize,
    /// Remaining multiplicity of each positive difference.
    left: Vec<u32>,
    remaining: usize,
    points: Vec<u64>,
    out: Vec<SupportSet>,
}

impl Search {
    fn largest(&self) -> Option<u64> {
        (1..self.left.len()).rev().find(|&s| self.left[s] > 0).map(|s| s as u64)
    }

    /// Removes `|p - x|` for all placed `x`; restores and fails on a missing difference.
    fn take(&mut self, p: u64) -> bool {
        for i in 0..self.points.len() {
            let s = self.points[i].abs_diff(p) as usize;
            if s == 0 || self.left[s] == 0 {
                for &x in &self.points[..i] {
                    self.left[x.abs_diff(p) as usize] += 1;
                }
                return false;
            }
            self.left[s] -= 1;
        }
        self.remaining -= self.points.len();
        true
    }

    fn give_back(&mut self, p: u64) {
        for &x in &self.points {
            self.left[x.abs_diff(p) as usize] += 1;
        }
        self.remaining += self.points.len();
    }

    fn run(&mut self) {
        if self.points.len() == self.k {
            if self.remaining == 0 {
                let mut v = self.points.clone();
                v.sort_unstable();
                self.out.push(SupportSet::new(v).expect("sorted distinct"));
            }
            return;
        }
        let Some(y) = self.largest() else { return };
        // the largest unexplained difference ends at 0 or at d
        let first = self.d - y;
        for p in [first, y] {
            if self.take(p) {
                self.points.push(p);
                self.run();
                self.points.pop();
                self.give_back(p);
            }
            if first == y {
                break;
            }
        }
    }
}

/// All `B ⊆ {0..d}` with `0, d ∈ B` and `B − B = A − A`, sorted.
///
/// Turnpike backtracking: the largest unexplained difference `y` must be
/// realised by a new point at `d − y` or at `y`; both are tried in that order.
pub fn solve_autocorrelation(a: &SupportSet) -> Vec<SupportSet> {
    let d = a.degree();
    if a.len() == 1 {
        return vec![a.clone()];
    }
    let dm = difference_multiset(a);
    let mut left = vec![0u32; d as usize + 1];
    for &(s, c) in dm.pairs().iter().skip(1) {
        left[s as usize] = c as u32;
    }
    left[d as usize] -= 1;
    let k = a.len();
    let mut search = Search {
        d,
        k,
        left,
        remaining: k * (k - 1) / 2 - 1,
        points: vec![0, d],
        out: Vec::new(),
    };
    search.run();
    let mut out = search.out;
    out.sort();
    out.dedup();
    out
}

/// `(i, g, h)` with `m_k − m_i = n_g − n_h`, `g > h` and `g ≠ k`, where
/// `n` indexes `A` and `m` indexes the extra solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub i: usize,
    pub g: usize,
    pub h: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniquenessReport {
    pub set: SupportSet,
    pub unique: bool,
    /// Solutions outside `{A, mirror(A)}` with their witness triples.
    pub extra: Vec<(SupportSet, Vec<Witness>)>,
}

fn witnesses(a: &SupportSet, b: &SupportSet) -> Vec<Witness> {
    let n = a.exponents();
    let m = b.exponents();
    let k = n.len() - 1;
    let mut out = Vec::new();
    for i in 0..k {
        let target = m[k] - m[i];
        if target == n[k] - n[i] {
            continue;
        }
        for g in 1..k {
            for h in 0..g {
                if n[g] - n[h] == target {
                    out.push(Witness { i, g, h });
                }
            }
        }
    }
    out
}

pub fn uniqueness_report(a: &SupportSet) -> UniquenessReport {
    let mirror = a.mirror();
    let extra: Vec<_> = solve_autocorrelation(a)
        .into_iter()
        .filter(|b| *b != *a && *b != mirror)
        .map(|b| {
            let w = witnesses(a, &b);
            (b, w)
        })
        .collect();
    UniquenessReport {
        set: a.clone(),
        unique: extra.is_empty(),
        extra,
    }
}
