use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quiver::{AnQuiver, IntervalObject};

/// Phases closer than this are treated as equal when comparing slopes.
pub const PHASE_EPS: f64 = 1e-12;

/// Whether `z` lies in `H = { r e^{i pi theta} : r > 0, theta in [0,1) }`.
pub fn in_half_plane(z: Complex64) -> bool {
    z.im > 0.0 || (z.im == 0.0 && z.re > 0.0)
}

/// Phase in `[0,1)` of a charge in `H`.
pub fn phase_of(z: Complex64) -> Result<f64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::DegenerateCharge(format!("non-finite charge {z}")));
    }
    if !in_half_plane(z) {
        return Err(Error::DegenerateCharge(format!(
            "charge {z} is not in the upper half plane"
        )));
    }
    let phase = z.im.atan2(z.re) / PI;
    // atan2 can round up to exactly pi for charges a hair above the negative axis.
    Ok(if phase >= 1.0 { 1.0 - f64::EPSILON } else { phase })
}

/// A stability condition with the standard heart `mod kQ`, given by the
/// central charges of the simples `S_1, ..., S_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct CentralChargeChart {
    quiver: AnQuiver,
    charges: Vec<Complex64>,
}

impl CentralChargeChart {
    pub fn new(charges: Vec<Complex64>) -> Result<Self> {
        let quiver = AnQuiver::new(charges.len())?;
        for (i, z) in charges.iter().enumerate() {
            if !in_half_plane(*z) || !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::ChartOutOfRange(format!(
                    "Z(S_{}) = {} has phase outside [0,1)",
                    i + 1,
                    z
                )));
            }
        }
        Ok(Self { quiver, charges })
    }

    /// Chart with `Z(S_i) = magnitudes[i] e^{i pi phases[i]}`.
    pub fn from_polar(magnitudes: &[f64], phases: &[f64]) -> Result<Self> {
        if magnitudes.len() != phases.len() {
            return Err(Error::ChartOutOfRange(
                "magnitude and phase lists differ in length".into(),
            ));
        }
        Self::new(
            magnitudes
                .iter()
                .zip(phases)
                .map(|(&m, &p)| Complex64::from_polar(m, PI * p))
                .collect(),
        )
    }

    pub fn quiver(&self) -> AnQuiver {
        self.quiver
    }

    pub fn rank(&self) -> usize {
        self.charges.len()
    }

    pub fn charges(&self) -> &[Complex64] {
        &self.charges
    }

    /// `Z(M_[lo,hi])`, ignoring the shift.
    pub fn charge(&self, x: &IntervalObject) -> Complex64 {
        self.charges[x.lo - 1..x.hi].iter().sum()
    }

    /// Phase of the heart object `M_[lo,hi]`.
    pub fn heart_phase(&self, x: &IntervalObject) -> Result<f64> {
        self.quiver.check(x)?;
        phase_of(self.charge(x))
    }

    /// Acts by `Z -> lambda Z`; fails if some simple leaves `H`.
    pub fn scaled(&self, lambda: Complex64) -> Result<Self> {
        Self::new(self.charges.iter().map(|z| z * lambda).collect())
    }
}

pub fn phase_of_heart_object(chart: &CentralChargeChart, x: &IntervalObject) -> Result<f64> {
    chart.heart_phase(x)
}
