use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::Rng;
use serde::Serialize;

use super::{drive, sample_subset, stream_rng, unrank_combination, with_zero, Outcome};
use super::{CensusReport, ExperimentConfig, ExperimentKind, Mode};
use crate::cyclotomic::remove_cyclotomic_part_sparse;
use crate::diophant::{find_modulus, parameter_schedule, root_gap_check_poly, verify_bounds, BoxParameters};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::factor::{dimitrov_check, factor_over_integers, is_irreducible, FactorClass, DEFAULT_TOL};
use crate::homometry::{census_phi_image, uniqueness_report, PhiCensusOptions};
use crate::poly::{DensePoly, SupportSet};
use crate::polytope::{build_gh, sylvester_resultant_z};

/// What is left of `1 + Σ x^{n_j}` after dividing out cyclotomic factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Class {
    Constant,
    Irreducible,
    Reducible,
}

impl Class {
    fn name(self) -> &'static str {
        match self {
            Class::Constant => "constant",
            Class::Irreducible => "irreducible",
            Class::Reducible => "reducible",
        }
    }
}

/// Sieve path: remove cyclotomic factors, then test the rest for irreducibility.
pub fn classify_noncyclotomic(s: &SupportSet) -> Result<(Class, DensePoly)> {
    let part = remove_cyclotomic_part_sparse(s).noncyclotomic_part;
    let class = if part.deg() == 0 {
        Class::Constant
    } else if is_irreducible(&part)? {
        Class::Irreducible
    } else {
        Class::Reducible
    };
    Ok((class, part))
}

/// Full-factorization path: count non-cyclotomic irreducible factors with multiplicity.
pub fn classify_full(s: &SupportSet) -> Result<Class> {
    let report = factor_over_integers(&s.to_poly())?;
    let count: u32 = report
        .factors
        .iter()
        .filter(|f| !matches!(f.class, FactorClass::ReciprocalCyclotomic(_)))
        .map(|f| f.multiplicity)
        .sum();
    Ok(match count {
        0 => Class::Constant,
        1 => Class::Irreducible,
        _ => Class::Reducible,
    })
}

fn item_source(cfg: &ExperimentConfig) -> impl Fn(u64) -> SupportSet + Sync + Send {
    let (n, k, mode, seed) = (cfg.big_n, cfg.k, cfg.mode, cfg.seed.unwrap_or(0));
    move |i| match mode {
        Mode::Exhaustive => with_zero(&unrank_combination(n, k, i)),
        Mode::Sample => with_zero(&sample_subset(&mut stream_rng(seed, i), n, k)),
    }
}

fn expect_kind(cfg: &ExperimentConfig, kinds: &[ExperimentKind]) -> Result<()> {
    if !kinds.contains(&cfg.kind) {
        return Err(Error::Config(format!("config kind {} does not fit this run", cfg.kind.name())));
    }
    cfg.validate()
}

const CROSSCHECK: u64 = 100;
const CROSSCHECK_SALT: u64 = 0xc405_5c4e;

/// Fraction of exponent vectors whose non-cyclotomic part is reducible.
///
/// 100 random members of the same population are classified a second time
/// through the full factorization; any disagreement is a consistency error.
pub fn theorem2_census(cfg: &ExperimentConfig) -> Result<CensusReport> {
    expect_kind(cfg, &[ExperimentKind::Theorem2, ExperimentKind::Trinomial])?;
    let mut report = drive(cfg, cfg.item_count()?, item_source(cfg), |s: &SupportSet| {
        let (class, part) = classify_noncyclotomic(s)?;
        let witness = (class == Class::Reducible).then(|| {
            let degrees: Vec<String> = factor_over_integers(&part)
                .map(|r| {
                    r.factors
                        .iter()
                        .map(|f| format!("{}^{}", f.poly.deg(), f.multiplicity))
                        .collect()
                })
                .unwrap_or_default();
            (s.exponents().to_vec(), format!("factor degrees {}", degrees.join(" ")))
        });
        Ok(Outcome {
            class: class.name(),
            witness,
            tallies: Vec::new(),
        })
    })?;
    let seed = cfg.seed.unwrap_or(0) ^ CROSSCHECK_SALT;
    let (n, k) = (cfg.big_n, cfg.k);
    let checks = Exec::new(cfg.workers).map_range(CROSSCHECK as usize, |i| -> Result<bool> {
        let s = with_zero(&sample_subset(&mut stream_rng(seed, i as u64), n, k));
        Ok(classify_noncyclotomic(&s)?.0 == classify_full(&s)?)
    });
    let mut disagreements = 0;
    for c in checks {
        if !c? {
            disagreements += 1;
        }
    }
    report.values.insert("crosscheck_instances".into(), CROSSCHECK.into());
    report.values.insert("crosscheck_disagreements".into(), disagreements.into());
    report
        .values
        .insert("reducible_fraction".into(), report.fraction("reducible").into());
    if disagreements > 0 {
        return Err(Error::Consistency(format!(
            "sieve and full factorization disagree on {disagreements} of {CROSSCHECK} inputs"
        )));
    }
    Ok(report)
}

/// Every `1 + x^a + x^b`, `a < b ≤ N`; the run reports how many have a
/// reducible non-cyclotomic part (the expected number is zero).
pub fn trinomial_crosscheck(big_n: u64, workers: usize) -> Result<CensusReport> {
    if big_n < 2 {
        return Err(Error::Domain(format!("N = {big_n} < 2")));
    }
    let mut cfg = ExperimentConfig::exhaustive(ExperimentKind::Trinomial, 2, big_n);
    cfg.workers = workers;
    let mut report = theorem2_census(&cfg)?;
    let failures = report.count("reducible");
    report.values.insert("failures".into(), failures.into());
    Ok(report)
}

/// Histogram of the number of non-reciprocal irreducible factors.
///
/// Exceptions (`zero` or `many`) are kept as witnesses; for `many` the
/// difference-multiset solver is asked for a homometric set.
pub fn nonreciprocal_census(cfg: &ExperimentConfig) -> Result<CensusReport> {
    expect_kind(cfg, &[ExperimentKind::Nonreciprocal])?;
    let mut report = drive(cfg, cfg.item_count()?, item_source(cfg), |s: &SupportSet| {
        let f = factor_over_integers(&s.to_poly())?;
        let e = s.exponents().to_vec();
        Ok(match f.nonreciprocal_count() {
            1 => Outcome::plain("one"),
            0 => Outcome {
                class: "zero",
                witness: Some((e, "reciprocal".into())),
                tallies: Vec::new(),
            },
            c => {
                let u = uniqueness_report(s);
                let (detail, tally) = match u.extra.first() {
                    Some((b, _)) => (format!("{c} non-reciprocal factors, homometric to {b}"), "many_homometric"),
                    None => (format!("{c} non-reciprocal factors, no 0,1 homometric set"), "many_unflagged"),
                };
                Outcome {
                    class: "many",
                    witness: Some((e, detail)),
                    tallies: vec![(tally, 1)],
                }
            }
        })
    })?;
    let exceptions = report.count("zero") + report.count("many");
    report.values.insert(
        "exception_fraction".into(),
        (exceptions as f64 / report.processed.max(1) as f64).into(),
    );
    Ok(report)
}

const DIMITROV_MAX_DEGREE: usize = 50;

/// Irreducible non-cyclotomic factors of the non-cyclotomic part.
fn noncyclotomic_factors(s: &SupportSet) -> Result<Vec<DensePoly>> {
    let (class, part) = classify_noncyclotomic(s)?;
    Ok(match class {
        Class::Constant => Vec::new(),
        Class::Irreducible => vec![part],
        Class::Reducible => factor_over_integers(&part)?
            .factors
            .into_iter()
            .map(|f| f.poly)
            .collect(),
    })
}

/// House lower bound on every non-cyclotomic factor of degree ≤ 50 and the
/// root-gap inequality on every polynomial of the theorem2 population.
pub fn dimitrov_sweep(cfg: &ExperimentConfig) -> Result<CensusReport> {
    expect_kind(cfg, &[ExperimentKind::Dimitrov])?;
    drive(cfg, cfg.item_count()?, item_source(cfg), |s: &SupportSet| {
        let e = s.exponents().to_vec();
        let mut tallies = vec![("root_gap_checked", 1)];
        match root_gap_check_poly(s) {
            Ok(true) => {}
            Ok(false) => {
                return Ok(Outcome {
                    class: "fail",
                    witness: Some((e, "root gap inequality violated".into())),
                    tallies,
                })
            }
            Err(Error::Numeric(m)) => {
                return Ok(Outcome {
                    class: "numeric_error",
                    witness: Some((e, m)),
                    tallies,
                })
            }
            Err(err) => return Err(err),
        }
        let mut notes = Vec::new();
        for w in noncyclotomic_factors(s)? {
            if w.deg() > DIMITROV_MAX_DEGREE {
                continue;
            }
            let w = if w.leading().is_some_and(|c| *c < BigInt::from(0)) { -w } else { w };
            tallies.push(("factors_checked", 1));
            if w.is_reciprocal()? {
                tallies.push(("reciprocal_noncyclotomic", 1));
                notes.push(format!("reciprocal non-cyclotomic factor {w}"));
            }
            match dimitrov_check(&w, DEFAULT_TOL) {
                Ok(true) => {}
                Ok(false) => {
                    return Ok(Outcome {
                        class: "fail",
                        witness: Some((e, format!("house bound fails for {w}"))),
                        tallies,
                    })
                }
                Err(Error::Numeric(m)) => {
                    return Ok(Outcome {
                        class: "numeric_error",
                        witness: Some((e, m)),
                        tallies,
                    })
                }
                Err(err) => return Err(err),
            }
        }
        Ok(Outcome {
            class: "pass",
            witness: (!notes.is_empty()).then(|| (e, notes.join("; "))),
            tallies,
        })
    })
}

/// One report per `n`: distinct difference multisets among `A ⊆ {0..n}`,
/// `0 ∈ A`, with the pairing bound asserted.
pub fn conjecture1_census(cfg: &ExperimentConfig) -> Result<Vec<CensusReport>> {
    expect_kind(cfg, &[ExperimentKind::Conjecture1])?;
    let opts = PhiCensusOptions {
        exec: Exec::new(cfg.workers),
        checkpoint: cfg.checkpoint.clone(),
        ..Default::default()
    };
    let mut out = Vec::new();
    for n in cfg.n_range()? {
        let start = std::time::Instant::now();
        let c = census_phi_image(n, &opts)?;
        if c.distinct > c.pairing_bound() {
            return Err(Error::Consistency(format!(
                "n = {n}: {} distinct exceeds the pairing bound {}",
                c.distinct,
                c.pairing_bound()
            )));
        }
        let mut r = CensusReport::empty(cfg);
        r.n = Some(n);
        r.processed = 1 << n;
        r.counts.insert("first_occurrence".into(), c.distinct);
        r.counts.insert("repeat".into(), r.processed - c.distinct);
        r.values.insert("distinct".into(), c.distinct.into());
        r.values.insert("symmetric".into(), c.symmetric.into());
        r.values.insert("ratio".into(), c.ratio().into());
        r.values.insert("pairing_bound".into(), c.pairing_bound().into());
        r.values.insert("exceptional_classes".into(), c.exceptional_classes.into());
        r.runtime_ms = start.elapsed().as_millis() as u64;
        out.push(r);
    }
    Ok(out)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `ε ∈ {1/2, 2/5, 1/3, 1/4, ...}` with `V(k, ε) ≤ n`.
fn admissible_epsilons(k: usize, n: u64) -> Vec<BoxParameters> {
    let mut out = Vec::new();
    let within = |p: &BoxParameters| p.v <= BigRational::from_integer(n.into());
    for eps in [rat(1, 2), rat(2, 5)] {
        let p = BoxParameters::new(k, eps).expect("ε in range");
        if within(&p) {
            out.push(p);
        }
    }
    for j in 3.. {
        let p = BoxParameters::new(k, rat(1, j)).expect("ε in range");
        if !within(&p) {
            break;
        }
        out.push(p);
    }
    out
}

/// A box-suite instance: exponents with `n_k ≥ V`, the parameters and `N`.
struct BoxInstance {
    n: SupportSet,
    params: BoxParameters,
    big_n: u64,
}

fn ceil_u64(r: &BigRational) -> u64 {
    r.ceil().to_integer().to_u64().expect("V fits in 64 bits")
}

fn box_instance(cfg: &ExperimentConfig, i: u64) -> Result<BoxInstance> {
    let mut rng = stream_rng(cfg.seed.unwrap_or(0), i);
    let (params, big_n) = if cfg.schedule {
        let ks: Vec<usize> = (2..=cfg.k.min(4))
            .filter(|&k| 4u64.pow(2 * k as u32 + 1) <= cfg.big_n)
            .collect();
        if ks.is_empty() {
            return Err(Error::Config(format!("N = {} is too small for the schedule", cfg.big_n)));
        }
        let k = ks[rng.random_range(0..ks.len())];
        loop {
            let big_n = rng.random_range(4u64.pow(2 * k as u32 + 1)..=cfg.big_n);
            match parameter_schedule(k, big_n) {
                Ok(p) => break (p, big_n),
                Err(Error::Schedule(_)) => continue,
                Err(e) => return Err(e),
            }
        }
    } else {
        let choices: Vec<(usize, BoxParameters)> = (2..=cfg.k)
            .flat_map(|k| admissible_epsilons(k, cfg.big_n).into_iter().map(move |p| (k, p)))
            .collect();
        if choices.is_empty() {
            return Err(Error::Config(format!("no ε has V ≤ N = {}", cfg.big_n)));
        }
        let (_, p) = choices[rng.random_range(0..choices.len())].clone();
        let big_n = rng.random_range(ceil_u64(&p.v).max(p.k as u64)..=cfg.big_n);
        (p, big_n)
    };
    let k = params.k;
    let nk = rng.random_range(ceil_u64(&params.v).max(k as u64)..=big_n);
    let mut rest = sample_subset(&mut rng, nk - 1, k - 1);
    rest.push(nk);
    Ok(BoxInstance {
        n: with_zero(&rest),
        params,
        big_n,
    })
}

/// Random certificates; under the schedule the exact size bounds are checked too.
pub fn box_suite(cfg: &ExperimentConfig) -> Result<CensusReport> {
    expect_kind(cfg, &[ExperimentKind::BoxSuite])?;
    let schedule = cfg.schedule;
    drive(cfg, cfg.item_count()?, |i| box_instance(cfg, i), |inst: &Result<BoxInstance>| {
        let inst = inst.as_ref().map_err(Clone::clone)?;
        let e = inst.n.exponents().to_vec();
        let cert = match find_modulus(&inst.n, &inst.params) {
            Ok(c) => c,
            Err(err) => {
                return Ok(Outcome {
                    class: "failed",
                    witness: Some((e, format!("N = {}, ε = {}: {err}", inst.big_n, inst.params.epsilon))),
                    tallies: Vec::new(),
                })
            }
        };
        let mut tallies = vec![(k_tally(inst.params.k), 1)];
        if schedule {
            let bounds = verify_bounds(&cert, inst.params.k, inst.big_n);
            for c in &bounds.checks {
                if c.passed {
                    tallies.push((c.name, 1));
                }
            }
            if !bounds.exact_passed() {
                let failed: Vec<&str> = bounds
                    .checks
                    .iter()
                    .filter(|c| !c.passed && !c.asymptotic)
                    .map(|c| c.name)
                    .collect();
                return Ok(Outcome {
                    class: "bound_failed",
                    witness: Some((e, format!("N = {}: {}", inst.big_n, failed.join(", ")))),
                    tallies,
                });
            }
        }
        Ok(Outcome {
            class: "certified",
            witness: None,
            tallies,
        })
    })
}

fn k_tally(k: usize) -> &'static str {
    ["k0", "k1", "k2", "k3", "k4", "k5", "k6"][k.min(6)]
}

/// `G`, `H` for random certificates, with the resultant and its degree bound
/// whenever the Sylvester matrix is within `resultant_cap` and the degree
/// bound within `resultant_degree_cap`. Other instances only get the
/// substitution identities (`identities_only`).
pub fn polytope_suite(cfg: &ExperimentConfig) -> Result<CensusReport> {
    expect_kind(cfg, &[ExperimentKind::PolytopeSuite])?;
    let (schedule, cap, degree_cap) = (cfg.schedule, cfg.resultant_cap, cfg.resultant_degree_cap);
    drive(cfg, cfg.item_count()?, |i| box_instance(cfg, i), |inst: &Result<BoxInstance>| {
        let inst = inst.as_ref().map_err(Clone::clone)?;
        let e = inst.n.exponents().to_vec();
        let fail = |class, detail: String| Outcome {
            class,
            witness: Some((e.clone(), detail)),
            tallies: Vec::new(),
        };
        let cert = match find_modulus(&inst.n, &inst.params) {
            Ok(c) => c,
            Err(err) => return Ok(fail("gh_failed", err.to_string())),
        };
        let pair = match build_gh(&inst.n, &cert) {
            Ok(p) => p,
            Err(Error::Consistency(m)) => return Ok(fail("gh_failed", m)),
            Err(err) => return Err(err),
        };
        let dim = (pair.g.deg_z() + pair.h.deg_z()) as usize;
        let bezout = pair.g.deg_y() * pair.h.deg_z() + pair.g.deg_z() * pair.h.deg_y();
        if dim > cap || bezout > degree_cap || pair.g.deg_z() == 0 {
            return Ok(Outcome::plain("identities_only"));
        }
        let r = sylvester_resultant_z(&pair.g, &pair.h, cap)?;
        let mut tallies = vec![("resultants", 1)];
        if r.is_zero() {
            tallies.push(("resultant_zero", 1));
        }
        let coarse = 2 * (cert.tprime + cert.tdoubleprime) as u64 * cert.mprime as u64;
        let deg = r.degree().unwrap_or(0) as u64;
        let mut ok = deg <= bezout && deg <= coarse;
        if schedule {
            ok &= verify_bounds(&cert, inst.params.k, inst.big_n)
                .get("resultant_degree")
                .is_some_and(|c| c.passed);
        }
        if !ok {
            return Ok(fail(
                "degree_failed",
                format!("deg Res = {deg}, bounds {bezout} and {coarse}"),
            ));
        }
        Ok(Outcome {
            class: "ok",
            witness: None,
            tallies,
        })
    })
}

/// Dispatches on `cfg.kind`.
pub fn run(cfg: &ExperimentConfig) -> Result<Vec<CensusReport>> {
    let one = |r: Result<CensusReport>| r.map(|r| vec![r]);
    match cfg.kind {
        ExperimentKind::Theorem2 => one(theorem2_census(cfg)),
        ExperimentKind::Trinomial => {
            let mut c = cfg.clone();
            c.k = 2;
            c.mode = Mode::Exhaustive;
            let mut r = theorem2_census(&c)?;
            r.values.insert("failures".into(), r.count("reducible").into());
            Ok(vec![r])
        }
        ExperimentKind::Nonreciprocal => one(nonreciprocal_census(cfg)),
        ExperimentKind::Conjecture1 => conjecture1_census(cfg),
        ExperimentKind::Dimitrov => one(dimitrov_sweep(cfg)),
        ExperimentKind::BoxSuite => one(box_suite(cfg)),
        ExperimentKind::PolytopeSuite => one(polytope_suite(cfg)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem2_small() {
        let cfg = ExperimentConfig::exhaustive(ExperimentKind::Theorem2, 2, 10);
        let r = theorem2_census(&cfg).unwrap();
        assert_eq!(r.processed, 45);
        assert_eq!(r.count("reducible"), 0);
        assert!(r.is_consistent());
        let cfg = ExperimentConfig::exhaustive(ExperimentKind::Theorem2, 3, 10);
        let r = theorem2_census(&cfg).unwrap();
        assert_eq!(r.processed, 120);
        assert_eq!(r.values["crosscheck_disagreements"], 0);
    }

    #[test]
    fn trinomials() {
        let r = trinomial_crosscheck(10, 1).unwrap();
        assert_eq!((r.processed, r.count("reducible")), (45, 0));
        let s = SupportSet::new(vec![0, 1, 2]).unwrap();
        assert_eq!(classify_noncyclotomic(&s).unwrap().0, Class::Constant);
    }

    #[test]
    fn nonreciprocal_small() {
        let cfg = ExperimentConfig::exhaustive(ExperimentKind::Nonreciprocal, 2, 12);
        let r = nonreciprocal_census(&cfg).unwrap();
        assert_eq!(r.processed, 66);
        assert!(r.count("zero") > 0);
        for w in &r.witnesses {
            let f = factor_over_integers(&SupportSet::new(w.exponents.clone()).unwrap().to_poly()).unwrap();
            assert_ne!(f.nonreciprocal_count(), 1);
        }
    }
}
