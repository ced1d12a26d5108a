//! Cross-checks of the closed forms against independent computations.
//!
//! The Hom function under test is a parameter so a deliberately broken one
//! can be fed in to confirm the suite notices.

use num_complex::Complex64;
use rand::Rng;

use crate::error::Result;
use crate::quiver::{
    ar_translate, oracle_hom_dim_bounded, AnQuiver, HomDims, IntervalObject, Translate,
};
use crate::stability::{hn_filtration, hn_filtrations_brute_force, CentralChargeChart};

pub type HomFn = dyn Fn(AnQuiver, &IntervalObject, &IntervalObject) -> Result<HomDims> + Sync;

/// The closed-form Hom criteria.
pub fn closed_form_hom(q: AnQuiver, x: &IntervalObject, y: &IntervalObject) -> Result<HomDims> {
    q.hom_dim(x, y)
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub instances: usize,
    pub failures: Vec<String>,
}

impl CheckResult {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            ..Default::default()
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Random chart: magnitudes in `(0.1, 1]`; phases uniform in `[0,1)`, or
/// with probability 1/4 snapped to eighths so that aligned sums and phase
/// ties show up.
pub fn random_chart<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<CentralChargeChart> {
    let snap = rng.random::<f64>() < 0.25;
    let charges = (0..n)
        .map(|_| {
            let mag = 1.0 - 0.9 * rng.random::<f64>();
            let mut phase = rng.random::<f64>();
            if snap {
                phase = (phase * 8.0).floor() / 8.0;
            }
            Complex64::from_polar(mag, std::f64::consts::PI * phase)
        })
        .collect();
    CentralChargeChart::new(charges)
}

pub fn check_hom_against_oracle(hom: &HomFn, n_max: usize, bound: usize) -> Result<CheckResult> {
    let mut out = CheckResult::new("hom vs matrix oracle");
    for n in 1..=n_max {
        let q = AnQuiver::new(n)?;
        for x in q.indecomposables() {
            for y in q.indecomposables() {
                let want = oracle_hom_dim_bounded(q, &x, &y, bound)?;
                let got = hom(q, &x, &y)?;
                out.record(got == want, || {
                    format!("A_{n}: {x} -> {y}: closed form {got:?}, oracle {want:?}")
                });
            }
        }
    }
    Ok(out)
}

/// `Ext^1(X, Y) = Hom(Y, tau X)` for non-projective `X`.
pub fn check_serre_duality(hom: &HomFn, n_max: usize) -> Result<CheckResult> {
    let mut out = CheckResult::new("Ext^1(X,Y) = Hom(Y, tau X)");
    for n in 1..=n_max {
        let q = AnQuiver::new(n)?;
        for x in q.indecomposables() {
            let Translate::Object(tx) = ar_translate(x) else {
                continue;
            };
            for y in q.indecomposables() {
                let ext = hom(q, &x, &y)?.degree(1);
                let dual = hom(q, &y, &tx)?.degree(0);
                out.record(ext == dual, || {
                    format!("A_{n}: Ext^1({x},{y}) = {ext} but Hom({y},{tx}) = {dual}")
                });
            }
        }
    }
    Ok(out)
}

/// Chord intersections against Hom totals in both directions.
pub fn check_intersections(hom: &HomFn, n_max: usize) -> Result<CheckResult> {
    let mut out = CheckResult::new("intersection count vs Hom totals");
    for n in 1..=n_max {
        let q = AnQuiver::new(n)?;
        for x in q.indecomposables() {
            for y in q.indecomposables() {
                if x.same_orbit(&y) {
                    continue;
                }
                let total = hom(q, &x, &y)?.total() + hom(q, &y, &x)?.total();
                let geo = q.geometric_int_count(&x, &y)?;
                out.record(total == geo, || {
                    format!("A_{n}: {x}, {y}: {geo} intersections, Hom total {total}")
                });
            }
        }
    }
    Ok(out)
}

/// Greedy HN against exhaustive enumeration.
pub fn check_hn<R: Rng + ?Sized>(n_max: usize, charts_per_rank: usize, rng: &mut R) -> Result<CheckResult> {
    let mut out = CheckResult::new("greedy HN vs brute force");
    for n in 1..=n_max {
        for _ in 0..charts_per_rank {
            let z = random_chart(n, rng)?;
            for x in z.quiver().indecomposables() {
                let greedy = hn_filtration(&z, &x)?;
                let brute = hn_filtrations_brute_force(&z, &x)?;
                out.record(brute.len() == 1 && brute[0] == greedy, || {
                    format!(
                        "A_{n}, Z = {:?}, {x}: greedy {:?}, brute force found {}",
                        z.charges(),
                        greedy.factors.iter().map(|f| f.object).collect::<Vec<_>>(),
                        brute.len()
                    )
                });
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }
}

/// All checks up to rank `n`; the oracle refuses ranks above `bound`.
pub fn run_oracle_suite<R: Rng + ?Sized>(
    hom: &HomFn,
    n: usize,
    bound: usize,
    hn_charts: usize,
    rng: &mut R,
) -> Result<SuiteReport> {
    Ok(SuiteReport {
        checks: vec![
            check_hom_against_oracle(hom, n, bound)?,
            check_serre_duality(hom, n)?,
            check_intersections(hom, n)?,
            check_hn(n, hn_charts, rng)?,
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn suite_passes_on_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let r = run_oracle_suite(&closed_form_hom, 5, 8, 20, &mut rng).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn corrupted_criterion_is_caught() {
        let broken = |q: AnQuiver, x: &IntervalObject, y: &IntervalObject| {
            let d = q.hom_dim(x, y)?;
            if x.lo == 2 && y.lo == 1 && x.hi == 2 && y.hi == 1 {
                return Ok(HomDims::from_module_degrees(0, 0));
            }
            Ok(d)
        };
        let r = check_hom_against_oracle(&broken, 3, 8).unwrap();
        assert!(!r.passed());
        assert_eq!(r.failures.len(), 2);
    }

    #[test]
    fn bound_refused() {
        assert_eq!(
            check_hom_against_oracle(&closed_form_hom, 9, 8).unwrap_err(),
            Error::OracleBound { rank: 9, bound: 8 }
        );
    }
}
