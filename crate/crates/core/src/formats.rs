//! Versioned JSON documents for polygons, charts, surfaces and flow traces.

use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::flow::{FlowConfig, FlowStatus, FlowTrace, StepRecord};
use crate::polygon::Polygon;
use crate::stability::CentralChargeChart;
use crate::surface::{Boundary, SurfaceData};

pub const FORMAT_VERSION: u32 = 1;
pub const POLYGON_SCHEMA: &str = "stabflow.polygon";
pub const CHART_SCHEMA: &str = "stabflow.chart";
pub const SURFACE_SCHEMA: &str = "stabflow.surface";
pub const TRACE_SCHEMA: &str = "stabflow.trace";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolygonFile {
    pub schema: String,
    pub version: u32,
    pub n: usize,
    pub vertices: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChartFile {
    pub schema: String,
    pub version: u32,
    pub n: usize,
    pub charges: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceFile {
    pub schema: String,
    pub version: u32,
    pub genus: u32,
    pub boundaries: Vec<Boundary>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceFile {
    pub schema: String,
    pub version: u32,
    pub n: usize,
    pub seed: Option<u64>,
    pub config: FlowConfig,
    pub status: FlowStatus,
    pub records: Vec<StepRecord>,
}

fn fmt_err(e: impl std::fmt::Display) -> Error {
    Error::Format(e.to_string())
}

/// Parses `text`, checks the schema tag and version, then decodes.
fn decode<T: DeserializeOwned>(text: &str, schema: &str) -> Result<T> {
    let value: Value = serde_json::from_str(text).map_err(fmt_err)?;
    let found = value.get("schema").and_then(Value::as_str);
    if found != Some(schema) {
        return Err(Error::Format(format!(
            "expected schema {schema:?}, found {:?}",
            found.unwrap_or("<missing>")
        )));
    }
    match value.get("version").and_then(Value::as_u64) {
        Some(v) if v == FORMAT_VERSION as u64 => {}
        Some(v) => return Err(Error::Format(format!("unsupported {schema} version {v}"))),
        None => return Err(Error::Format("missing version".into())),
    }
    serde_json::from_value(value).map_err(fmt_err)
}

fn encode<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn parse_polygon(text: &str) -> Result<Polygon> {
    let f: PolygonFile = decode(text, POLYGON_SCHEMA)?;
    if f.vertices.len() != f.n + 1 {
        return Err(Error::Format(format!(
            "n = {} needs {} vertices, found {}",
            f.n,
            f.n + 1,
            f.vertices.len()
        )));
    }
    Polygon::from_points(&f.vertices)
}

pub fn polygon_json(p: &Polygon) -> String {
    encode(&PolygonFile {
        schema: POLYGON_SCHEMA.into(),
        version: FORMAT_VERSION,
        n: p.n(),
        vertices: p.points(),
    })
}

pub fn parse_chart(text: &str) -> Result<CentralChargeChart> {
    let f: ChartFile = decode(text, CHART_SCHEMA)?;
    if f.charges.len() != f.n {
        return Err(Error::Format(format!(
            "n = {} but {} charges given",
            f.n,
            f.charges.len()
        )));
    }
    CentralChargeChart::new(f.charges.iter().map(|c| Complex64::new(c[0], c[1])).collect())
}

pub fn chart_json(z: &CentralChargeChart) -> String {
    encode(&ChartFile {
        schema: CHART_SCHEMA.into(),
        version: FORMAT_VERSION,
        n: z.rank(),
        charges: z.charges().iter().map(|c| [c.re, c.im]).collect(),
    })
}

pub fn parse_surface(text: &str) -> Result<SurfaceData> {
    let f: SurfaceFile = decode(text, SURFACE_SCHEMA)?;
    SurfaceData::new(f.genus, f.boundaries)
}

pub fn surface_json(s: &SurfaceData) -> String {
    encode(&SurfaceFile {
        schema: SURFACE_SCHEMA.into(),
        version: FORMAT_VERSION,
        genus: s.genus,
        boundaries: s.boundaries.clone(),
    })
}

pub fn trace_json(n: usize, seed: Option<u64>, config: &FlowConfig, trace: &FlowTrace) -> String {
    encode(&TraceFile {
        schema: TRACE_SCHEMA.into(),
        version: FORMAT_VERSION,
        n,
        seed,
        config: config.clone(),
        status: trace.status,
        records: trace.records.clone(),
    })
}

pub fn parse_trace(text: &str) -> Result<TraceFile> {
    decode(text, TRACE_SCHEMA)
}
