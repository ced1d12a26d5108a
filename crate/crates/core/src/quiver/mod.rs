//! The bounded derived category of the linearly oriented `A_n` quiver:
//! indecomposables, graded Hom dimensions, the Auslander-Reiten translate and
//! the diagonal model on the `(n+1)`-gon.

mod hom;
mod interval;
pub mod oracle;

pub use hom::{chord_intersections, ChordIntersections, HomDegreeTable, HomDims};
pub use interval::{
    all_indecomposables, ar_translate, coxeter_number, AnQuiver, IntervalObject, Translate,
};
pub use oracle::{oracle_hom_dim, oracle_hom_dim_bounded, DEFAULT_ORACLE_BOUND};
