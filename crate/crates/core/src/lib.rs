//! Stability conditions, the global dimension function and gldim-descending
//! flows for the derived category of the `A_n` quiver, together with the
//! numerical invariants of graded marked surfaces.

pub mod error;
pub mod flow;
pub mod formats;
pub mod polygon;
pub mod quiver;
pub mod stability;
pub mod suite;
pub mod surface;

pub use error::{Error, Result};
pub use flow::{FlowConfig, FlowStatus, FlowTrace};
pub use polygon::{Polygon, PolygonGldim};
pub use quiver::{AnQuiver, HomDims, IntervalObject};
pub use stability::{CentralChargeChart, CpPair, CpReport, HnFiltration};
pub use surface::{AnnulusCertificate, IndexVariant, SurfaceData};
