use serde::{Deserialize, Serialize};

use super::chart::CentralChargeChart;
use super::hn::{semistable_indecomposables, SemistableObject};
use crate::error::{Error, Result};
use crate::quiver::IntervalObject;

/// Default absolute tolerance, in phase units, for reporting a pair as extremal.
pub const DEFAULT_CP_TOL: f64 = 1e-9;

/// A nonzero `Hom(source, target[degree])` between semistables, with
/// `gap = phi(target) + degree - phi(source)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CpPair {
    pub source: IntervalObject,
    pub target: IntervalObject,
    pub degree: i32,
    pub gap: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CpReport {
    pub gldim: f64,
    pub pairs: Vec<CpPair>,
}

impl CpReport {
    /// Number of extremal pairs up to simultaneous shift. Each pair is stored
    /// with unshifted source, so distinct triples are distinct orbits.
    pub fn s(&self) -> usize {
        self.pairs.len()
    }
}

/// Every semistable Hom pair with its gap, identities included.
pub fn hom_pairs(chart: &CentralChargeChart) -> Result<Vec<CpPair>> {
    let ss = semistable_indecomposables(chart)?;
    Ok(hom_pairs_among(chart, &ss))
}

fn hom_pairs_among(chart: &CentralChargeChart, ss: &[SemistableObject]) -> Vec<CpPair> {
    let q = chart.quiver();
    let mut out = Vec::new();
    for a in ss {
        for b in ss {
            let dims = q
                .hom_dim(&a.object, &b.object)
                .expect("semistables belong to the chart's quiver");
            for (degree, _) in dims.nonzero() {
                out.push(CpPair {
                    source: a.object,
                    target: b.object,
                    degree,
                    gap: b.phase + degree as f64 - a.phase,
                });
            }
        }
    }
    out
}

/// Largest phase gap over nonzero morphisms between semistables.
pub fn gldim(chart: &CentralChargeChart) -> Result<f64> {
    Ok(hom_pairs(chart)?
        .iter()
        .map(|p| p.gap)
        .fold(f64::NEG_INFINITY, f64::max))
}

/// Pairs of stable objects in distinct shift-orbits whose gap is within
/// `tol` of gldim.
pub fn cp_pairs(chart: &CentralChargeChart, tol: f64) -> Result<CpReport> {
    if !(tol >= 0.0) {
        return Err(Error::InvalidConfig(format!("tolerance {tol} must be >= 0")));
    }
    let ss = semistable_indecomposables(chart)?;
    let all = hom_pairs_among(chart, &ss);
    let gldim = all.iter().map(|p| p.gap).fold(f64::NEG_INFINITY, f64::max);
    let stable = |x: &IntervalObject| ss.iter().any(|s| s.object == *x && s.stable);
    let pairs = all
        .into_iter()
        .filter(|p| p.gap >= gldim - tol)
        .filter(|p| !p.source.same_orbit(&p.target))
        .filter(|p| stable(&p.source) && stable(&p.target))
        .collect();
    Ok(CpReport { gldim, pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use std::f64::consts::PI;

    fn iv(lo: usize, hi: usize) -> IntervalObject {
        IntervalObject::new(lo, hi).unwrap()
    }

    fn gepner_a2() -> CentralChargeChart {
        CentralChargeChart::from_polar(&[1.0, 1.0], &[0.0, 2.0 / 3.0]).unwrap()
    }

    #[test]
    fn gepner_a2_value_and_pairs() {
        let r = cp_pairs(&gepner_a2(), 1e-12).unwrap();
        assert!((r.gldim - 1.0 / 3.0).abs() < 1e-12);
        let mut got: Vec<_> = r
            .pairs
            .iter()
            .map(|p| (p.source, p.target, p.degree))
            .collect();
        got.sort();
        let mut want = vec![
            (iv(2, 2), iv(1, 1), 1),
            (iv(1, 1), iv(1, 2), 0),
            (iv(1, 2), iv(2, 2), 0),
        ];
        want.sort();
        assert_eq!(got, want);
        assert_eq!(r.s(), 3);
    }

    #[test]
    fn aligned_a2_is_one() {
        let w = Complex64::from_polar(1.0, PI * 0.2);
        let z = CentralChargeChart::new(vec![w, w]).unwrap();
        assert!((gldim(&z).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn near_boundary_pairs() {
        // Equal magnitudes make S_1 -> M_12 and M_12 -> S_2 tie at 0.45.
        let z = CentralChargeChart::from_polar(&[1.0, 1.0], &[0.0, 0.9]).unwrap();
        let r = cp_pairs(&z, DEFAULT_CP_TOL).unwrap();
        assert!((r.gldim - 0.45).abs() < 1e-12);
        assert_eq!(r.s(), 2);

        let z = CentralChargeChart::from_polar(&[1.0, 2.0], &[0.0, 0.9]).unwrap();
        let r = cp_pairs(&z, DEFAULT_CP_TOL).unwrap();
        assert_eq!(r.s(), 1);
        assert_eq!((r.pairs[0].source, r.pairs[0].target), (iv(1, 1), iv(1, 2)));
    }

    #[test]
    fn huge_tolerance_takes_every_stable_pair() {
        let z = gepner_a2();
        let all = hom_pairs(&z).unwrap();
        let distinct = all.iter().filter(|p| p.source != p.target).count();
        assert_eq!(cp_pairs(&z, 10.0).unwrap().s(), distinct);
    }

    #[test]
    fn positive_scaling_keeps_gldim() {
        let z = CentralChargeChart::from_polar(&[1.0, 0.3, 2.0], &[0.1, 0.6, 0.35]).unwrap();
        let g = gldim(&z).unwrap();
        let g2 = gldim(&z.scaled(Complex64::new(3.7, 0.0)).unwrap()).unwrap();
        assert!((g - g2).abs() < 1e-12);
    }

    #[test]
    fn negative_tolerance_rejected() {
        assert!(cp_pairs(&gepner_a2(), -1.0).is_err());
    }
}
