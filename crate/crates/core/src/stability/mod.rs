//! Stability conditions in the standard-heart chart.

mod chart;
mod gldim;
mod hn;
mod metric;

pub use chart::{in_half_plane, phase_of, phase_of_heart_object, CentralChargeChart, PHASE_EPS};
pub use gldim::{cp_pairs, gldim, hom_pairs, CpPair, CpReport, DEFAULT_CP_TOL};
pub use hn::{
    hn_filtration, hn_filtrations_brute_force, semistable_indecomposables, HnFactor, HnFiltration,
    SemistableObject,
};
pub use metric::metric_distance;
