use super::chart::CentralChargeChart;
use super::hn::hn_filtration;
use crate::error::{Error, Result};

/// `sup_E max(|dphi^-|, |dphi^+|, |log m_1/m_2|)` over indecomposables.
///
/// Shifting `E` moves both phase endpoints by the same integer and leaves the
/// mass alone, so unshifted intervals are enough.
pub fn metric_distance(z1: &CentralChargeChart, z2: &CentralChargeChart) -> Result<f64> {
    if z1.rank() != z2.rank() {
        return Err(Error::ChartOutOfRange(format!(
            "charts of rank {} and {} are not comparable",
            z1.rank(),
            z2.rank()
        )));
    }
    let mut sup = 0.0f64;
    for x in z1.quiver().indecomposables() {
        let a = hn_filtration(z1, &x)?;
        let b = hn_filtration(z2, &x)?;
        let d = (a.bottom_phase() - b.bottom_phase())
            .abs()
            .max((a.top_phase() - b.top_phase()).abs())
            .max((a.mass() / b.mass()).ln().abs());
        sup = sup.max(d);
    }
    Ok(sup)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn chart() -> CentralChargeChart {
        CentralChargeChart::from_polar(&[1.0, 0.5, 2.0], &[0.2, 0.7, 0.4]).unwrap()
    }

    #[test]
    fn zero_on_the_diagonal() {
        assert_eq!(metric_distance(&chart(), &chart()).unwrap(), 0.0);
    }

    #[test]
    fn real_scaling_is_log_ratio() {
        for r in [0.5, 2.0, 5.0] {
            let z2 = chart().scaled(Complex64::new(r, 0.0)).unwrap();
            let d = metric_distance(&chart(), &z2).unwrap();
            assert!((d - f64::ln(r).abs()).abs() < 1e-12, "r = {r}: {d}");
        }
    }

    #[test]
    fn rank_mismatch() {
        let z = CentralChargeChart::from_polar(&[1.0], &[0.0]).unwrap();
        assert!(metric_distance(&chart(), &z).is_err());
    }
}
