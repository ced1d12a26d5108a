use num_complex::Complex64;

use super::chart::{phase_of, CentralChargeChart, PHASE_EPS};
use crate::error::{Error, Result};
use crate::quiver::IntervalObject;

#[derive(Clone, Debug, PartialEq)]
pub struct HnFactor {
    pub object: IntervalObject,
    pub phase: f64,
    pub charge: Complex64,
}

/// Harder-Narasimhan filtration of a heart object. Subobjects of `M_[a,b]`
/// are the prefixes `M_[a,t]`, so the factors are consecutive sub-intervals
/// listed from the bottom of the filtration up.
#[derive(Clone, Debug, PartialEq)]
pub struct HnFiltration {
    pub object: IntervalObject,
    pub factors: Vec<HnFactor>,
}

impl HnFiltration {
    pub fn is_semistable(&self) -> bool {
        self.factors.len() == 1
    }

    /// `phi^+`, the phase of the maximal destabilizing subobject.
    pub fn top_phase(&self) -> f64 {
        self.factors[0].phase
    }

    /// `phi^-`.
    pub fn bottom_phase(&self) -> f64 {
        self.factors[self.factors.len() - 1].phase
    }

    /// `sum |Z(A_i)|` over the factors.
    pub fn mass(&self) -> f64 {
        self.factors.iter().map(|f| f.charge.norm()).sum()
    }
}

fn factor(chart: &CentralChargeChart, lo: usize, hi: usize) -> Result<HnFactor> {
    let object = IntervalObject { lo, hi, shift: 0 };
    let charge = chart.charge(&object);
    Ok(HnFactor {
        object,
        phase: phase_of(charge)?,
        charge,
    })
}

/// Greedy HN filtration: the first factor is the largest prefix of maximal
/// phase; repeat on the quotient.
pub fn hn_filtration(chart: &CentralChargeChart, x: &IntervalObject) -> Result<HnFiltration> {
    chart.quiver().check(x)?;
    let object = x.unshifted();
    let mut factors = Vec::new();
    let mut start = object.lo;
    while start <= object.hi {
        let prefixes = (start..=object.hi)
            .map(|t| factor(chart, start, t))
            .collect::<Result<Vec<_>>>()?;
        let best = prefixes
            .iter()
            .map(|f| f.phase)
            .fold(f64::NEG_INFINITY, f64::max);
        let chosen = prefixes
            .into_iter()
            .rev()
            .find(|f| f.phase >= best - PHASE_EPS)
            .expect("nonempty prefix list");
        start = chosen.object.hi + 1;
        factors.push(chosen);
    }
    Ok(HnFiltration { object, factors })
}

/// Whether `M_[lo,hi]` is semistable: no prefix has larger phase.
fn piece_is_semistable(chart: &CentralChargeChart, piece: &HnFactor) -> Result<bool> {
    for t in piece.object.lo..piece.object.hi {
        if factor(chart, piece.object.lo, t)?.phase > piece.phase + PHASE_EPS {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All filtrations of `x` by prefixes whose factors are semistable with
/// strictly decreasing phases. By uniqueness of HN filtrations there is
/// exactly one; this enumerates all `2^(len-1)` chains to check that.
pub fn hn_filtrations_brute_force(
    chart: &CentralChargeChart,
    x: &IntervalObject,
) -> Result<Vec<HnFiltration>> {
    chart.quiver().check(x)?;
    let object = x.unshifted();
    let cuts = object.hi - object.lo;
    if cuts >= 24 {
        return Err(Error::Unsupported(
            "brute-force HN limited to intervals of length < 25".into(),
        ));
    }
    let mut found = Vec::new();
    'chains: for mask in 0u32..(1u32 << cuts) {
        let mut pieces = Vec::new();
        let mut start = object.lo;
        for k in 0..cuts {
            if mask & (1 << k) != 0 {
                let end = object.lo + k;
                pieces.push(factor(chart, start, end)?);
                start = end + 1;
            }
        }
        pieces.push(factor(chart, start, object.hi)?);
        for w in pieces.windows(2) {
            if w[0].phase <= w[1].phase + PHASE_EPS {
                continue 'chains;
            }
        }
        for p in &pieces {
            if !piece_is_semistable(chart, p)? {
                continue 'chains;
            }
        }
        found.push(HnFiltration {
            object,
            factors: pieces,
        });
    }
    Ok(found)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SemistableObject {
    pub object: IntervalObject,
    pub phase: f64,
    /// Every proper subobject has strictly smaller phase.
    pub stable: bool,
}

pub fn semistable_indecomposables(chart: &CentralChargeChart) -> Result<Vec<SemistableObject>> {
    let mut out = Vec::new();
    for x in chart.quiver().indecomposables() {
        let hn = hn_filtration(chart, &x)?;
        if !hn.is_semistable() {
            continue;
        }
        let phase = hn.top_phase();
        let mut stable = true;
        for t in x.lo..x.hi {
            if factor(chart, x.lo, t)?.phase >= phase - PHASE_EPS {
                stable = false;
                break;
            }
        }
        out.push(SemistableObject {
            object: x,
            phase,
            stable,
        });
    }
    Ok(out)
}
