//! Complex roots with certified inclusion disks.
//!
//! Simultaneous Aberth–Ehrlich iteration in `f64`, followed by the
//! Weierstrass inclusion test: every root lies in the union of the disks
//! `D(z_i, n·|p(z_i)| / |a_n ∏_{j≠i}(z_i - z_j)|)` and a connected union of
//! `m` disks holds exactly `m` roots. Rounding in the evaluation is folded
//! into the radius.

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::poly::DensePoly;

const MAX_ITER: usize = 4000;
const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;

/// A disk known to contain at least one root.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootDisk {
    pub center: Complex64,
    pub radius: f64,
    /// Index of the connected component of overlapping disks.
    pub component: usize,
}

impl RootDisk {
    pub fn modulus_bounds(&self) -> (f64, f64) {
        let m = self.center.norm();
        ((m - self.radius).max(0.0), m + self.radius)
    }
}

fn to_f64_coeffs(f: &DensePoly) -> Result<Vec<f64>> {
    f.coeffs()
        .iter()
        .map(|c| {
            c.to_f64()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::Numeric(format!("coefficient {c} exceeds f64 range")))
        })
        .collect()
}

/// Horner value plus a running bound `Σ|a_k||z|^k`.
fn horner(c: &[f64], z: Complex64) -> (Complex64, Complex64, f64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    let mut abs = 0.0;
    let r = z.norm();
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
        abs = abs * r + a.abs();
    }
    (p, dp, abs)
}

/// Newton ratio `p(z)/p'(z)`, evaluated on the reversed polynomial outside the unit disk.
fn newton_ratio(c: &[f64], rev: &[f64], z: Complex64) -> Complex64 {
    let n = (c.len() - 1) as f64;
    if z.norm() <= 1.0 {
        let (p, dp, _) = horner(c, z);
        p / dp
    } else {
        let w = z.inv();
        let (q, dq, _) = horner(rev, w);
        z / (n - w * dq / q)
    }
}

/// `ln(|p(z)| + err)` with `err` bounding evaluation and coefficient rounding.
fn log_abs_upper(c: &[f64], rev: &[f64], z: Complex64) -> f64 {
    let n = c.len() - 1;
    let gamma = (2 * n + 2) as f64 * UNIT_ROUNDOFF / (1.0 - (2 * n + 2) as f64 * UNIT_ROUNDOFF);
    let r = z.norm();
    if r <= 1.0 {
        let (p, _, abs) = horner(c, z);
        (p.norm() + 2.0 * gamma * abs).ln()
    } else {
        let (q, _, abs) = horner(rev, z.inv());
        (q.norm() + 2.0 * gamma * abs).ln() + n as f64 * r.ln()
    }
}

fn initial_guesses(c: &[f64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let lc = c[n].abs();
    // Cauchy-style radius: max |a_i/a_n|^{1/(n-i)}
    let mut rad: f64 = 0.0;
    for (i, &a) in c.iter().enumerate().take(n) {
        if a != 0.0 {
            rad = rad.max((a.abs() / lc).powf(1.0 / (n - i) as f64));
        }
    }
    let rad = if rad > 0.0 { rad } else { 1.0 };
    (0..n)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(rad, t)
        })
        .collect()
}

/// Certified disks around all roots of a squarefree polynomial of degree ≥ 1.
pub fn root_disks(f: &DensePoly) -> Result<Vec<RootDisk>> {
    let n = f
        .degree()
        .filter(|&d| d >= 1)
        .ok_or_else(|| Error::Domain("root finding needs degree ≥ 1".into()))?;
    let c = to_f64_coeffs(f)?;
    let rev: Vec<f64> = c.iter().rev().copied().collect();
    if n == 1 {
        let z = Complex64::new(-c[0] / c[1], 0.0);
        let radius = z.norm() * 2.0 * UNIT_ROUNDOFF;
        return Ok(vec![RootDisk {
            center: z,
            radius,
            component: 0,
        }]);
    }
    let mut z = initial_guesses(&c);
    let mut converged = false;
    for _ in 0..MAX_ITER {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let ratio = newton_ratio(&c, &rev, z[i]);
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    s += (z[i] - z[j]).inv();
                }
            }
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / z[i].norm().max(1e-300));
            }
        }
        if max_step < 4.0 * f64::EPSILON {
            converged = true;
            break;
        }
    }
    if !converged && z.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numeric("root iteration diverged".into()));
    }
    let ln_lc = c[n].abs().ln();
    let mut disks: Vec<RootDisk> = (0..n)
        .map(|i| {
            let mut ln_prod = 0.0;
            for j in 0..n {
                if j != i {
                    ln_prod += (z[i] - z[j]).norm().ln();
                }
            }
            let ln_r = (n as f64).ln() + log_abs_upper(&c, &rev, z[i]) - ln_lc - ln_prod;
            // slack for rounding in the product and logarithms
            let radius = ln_r.exp() * (1.0 + 64.0 * n as f64 * f64::EPSILON)
                + 4.0 * f64::EPSILON * z[i].norm();
            RootDisk {
                center: z[i],
                radius,
                component: i,
            }
        })
        .collect();
    if disks.iter().any(|d| !d.radius.is_finite()) {
        return Err(Error::Numeric("inclusion radius is not finite".into()));
    }
    label_components(&mut disks);
    Ok(disks)
}

fn label_components(disks: &mut [RootDisk]) {
    let n = disks.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for i in 0..n {
        for j in i + 1..n {
            if (disks[i].center - disks[j].center).norm() <= disks[i].radius + disks[j].radius {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    for (i, disk) in disks.iter_mut().enumerate() {
        disk.component = find(&mut parent, i);
    }
}

/// Interval `[lo, hi]` certified to contain the largest root modulus.
pub fn house_bounds(disks: &[RootDisk]) -> (f64, f64) {
    let hi = disks
        .iter()
        .map(|d| d.modulus_bounds().1)
        .fold(0.0, f64::max);
    let mut lo: f64 = 0.0;
    for d in disks {
        let comp_min = disks
            .iter()
            .filter(|e| e.component == d.component)
            .map(|e| e.modulus_bounds().0)
            .fold(f64::INFINITY, f64::min);
        lo = lo.max(comp_min);
    }
    (lo, hi)
}

/// `f / gcd(f, f')`, primitive.
pub(crate) fn squarefree_part(f: &DensePoly) -> DensePoly {
    let g = f.gcd(&f.derivative());
    f.exact_div(&g)
        .expect("gcd divides f")
        .primitive_part()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disks_contain_known_roots() {
        // (x - 1)(x - 2)(x + 3)
        let f = DensePoly::from_i64(&[6, -7, 0, 1]);
        let disks = root_disks(&f).unwrap();
        for r in [1.0, 2.0, -3.0] {
            assert!(disks
                .iter()
                .any(|d| (d.center - Complex64::new(r, 0.0)).norm() <= d.radius));
        }
        let (lo, hi) = house_bounds(&disks);
        assert!(lo <= 3.0 && 3.0 <= hi && hi - lo < 1e-12);
    }

    #[test]
    fn unit_circle_roots() {
        let f = DensePoly::x_pow_minus_one(12);
        let (lo, hi) = house_bounds(&root_disks(&f).unwrap());
        assert!(lo <= 1.0 && 1.0 <= hi && hi - lo < 1e-12);
    }
}
