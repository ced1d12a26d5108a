use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid rank {0}: the A_n quiver needs n >= 1")]
    InvalidRank(usize),

    #[error("[{lo},{hi}] is not an interval: need 1 <= lo <= hi")]
    InvalidInterval { lo: usize, hi: usize },

    #[error("interval [{lo},{hi}] is not an indecomposable of A_{rank}")]
    RankMismatch { rank: usize, lo: usize, hi: usize },

    #[error("rank {rank} exceeds the oracle bound {bound}")]
    OracleBound { rank: usize, bound: usize },

    #[error("degenerate central charge: {0}")]
    DegenerateCharge(String),

    #[error("chart out of range: {0}")]
    ChartOutOfRange(String),

    #[error("stability condition is not in the polygon chart: gldim = {0} >= 1")]
    NotInChart(f64),

    #[error("chart is not normalized: Z(S_1) = {re} + {im}i, expected 1")]
    Unnormalized { re: f64, im: f64 },

    #[error("malformed polygon: {0}")]
    MalformedPolygon(String),

    #[error("polygon is not strictly convex")]
    NonConvex,

    #[error("singular configuration: {0}")]
    SingularConfiguration(String),

    #[error("invalid surface: {0}")]
    InvalidSurface(String),

    #[error("unsupported parameters: {0}")]
    Unsupported(String),

    #[error("invalid flow configuration: {0}")]
    InvalidConfig(String),

    #[error("file format error: {0}")]
    Format(String),
}
