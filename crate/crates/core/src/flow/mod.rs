//! gldim-descending flow on convex polygons.
//!
//! Each step minimizes the prox-linear model
//! `max_k (theta_k + g_k . d) + |d|^2 / (2 tau)` over all bracket pairs and
//! backtracks along the result until the polygon stays convex and gldim
//! strictly drops. `tau` doubles after a full step and otherwise shrinks to
//! the accepted fraction. On a stratum interior this is a damped gradient
//! step; on a wall it moves along the wall.

mod gradient;
mod qp;
mod stratum;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

pub use gradient::gldim_gradient;
pub use qp::{min_norm_element, solve_prox_linear, QpSolution};
pub use stratum::{constraint_rank, locate_wall, stratum_rank, StratumReport, RANK_TOL};

use crate::error::{Error, Result};
use crate::polygon::{bracket_pairs, gldim_polygon, gldim_polygon_unchecked, Polygon};

/// Minimum-norm subgradients below this count as a stationarity certificate.
pub const STATIONARITY_TOL: f64 = 1e-10;
/// Steps over which the gldim plateau is measured.
pub const PLATEAU_WINDOW: usize = 10;
const TAU_MAX: f64 = 1e6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlowConfig {
    pub initial_step: f64,
    pub shrink: f64,
    pub max_steps: usize,
    pub stop_tol: f64,
    pub active_tol: f64,
    pub target: Option<f64>,
    pub max_backtracks: usize,
}

impl Default for FlowConfig {
    fn default() -> Self {
        Self {
            initial_step: 1.0,
            shrink: 0.5,
            max_steps: 1000,
            stop_tol: 1e-12,
            active_tol: 1e-7,
            target: None,
            max_backtracks: 60,
        }
    }
}

impl FlowConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidConfig(what.to_string()));
        if !(self.initial_step > 0.0 && self.initial_step.is_finite()) {
            return bad("initial_step must be positive");
        }
        if !(self.shrink > 0.0 && self.shrink < 1.0) {
            return bad("shrink must lie in (0,1)");
        }
        if self.max_steps == 0 {
            return bad("max_steps must be positive");
        }
        if !(self.stop_tol > 0.0) {
            return bad("stop_tol must be positive");
        }
        if !(self.active_tol > 0.0) {
            return bad("active_tol must be positive");
        }
        if self.max_backtracks == 0 {
            return bad("max_backtracks must be positive");
        }
        if let Some(t) = self.target {
            if !t.is_finite() {
                return bad("target must be finite");
            }
        }
        Ok(())
    }
}

/// Result of `descent_direction`.
#[derive(Clone, Debug, PartialEq)]
pub enum Descent {
    Direction(Vec<f64>),
    /// The hull of the active gradients contains a point of norm `min_norm`.
    Stationary { min_norm: f64 },
}

/// Negated minimum-norm element of the hull of the active gradients.
pub fn descent_direction(p: &Polygon, active: &[(usize, usize)]) -> Result<Descent> {
    if active.is_empty() {
        return Err(Error::InvalidConfig("no active pairs".into()));
    }
    let grads = active
        .iter()
        .map(|&ij| gldim_gradient(p, ij))
        .collect::<Result<Vec<_>>>()?;
    let v = min_norm_element(&grads);
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm < STATIONARITY_TOL {
        Ok(Descent::Stationary { min_norm: norm })
    } else {
        Ok(Descent::Direction(v.into_iter().map(|x| -x).collect()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlowStatus {
    /// Line search failed and the minimum-norm subgradient vanishes.
    Stationary,
    /// Subgradient test and plateau test both hold.
    Converged,
    TargetReached,
    /// Line search failed away from a certified stationary point.
    Stalled,
    MaxSteps,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub step: usize,
    pub gldim: f64,
    pub s: usize,
    pub rank: usize,
    /// Euclidean length of the accepted move in free coordinates.
    pub accepted_step: f64,
    pub vertices: Vec<[f64; 2]>,
    pub active: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlowTrace {
    pub status: FlowStatus,
    pub records: Vec<StepRecord>,
}

impl FlowTrace {
    pub fn final_gldim(&self) -> f64 {
        self.records[self.records.len() - 1].gldim
    }

    pub fn final_polygon(&self) -> Result<Polygon> {
        Polygon::from_points(&self.records[self.records.len() - 1].vertices)
    }

    pub fn is_monotone(&self) -> bool {
        self.records.windows(2).all(|w| w[1].gldim < w[0].gldim)
    }
}

pub enum StepOutcome {
    Accepted(StepRecord),
    /// No admissible step; carries the stationarity certificate, if any.
    Rejected { certified: bool },
}

/// Flow state: the current polygon, the prox parameter and the sticky active
/// set.
pub struct Flow {
    cfg: FlowConfig,
    polygon: Polygon,
    gldim: f64,
    tau: f64,
    active: BTreeSet<(usize, usize)>,
    steps: usize,
}

impl Flow {
    pub fn new(polygon: Polygon, cfg: FlowConfig) -> Result<Self> {
        cfg.validate()?;
        let g = gldim_polygon(&polygon)?;
        let mut flow = Self {
            tau: cfg.initial_step,
            cfg,
            gldim: g.value,
            polygon,
            active: BTreeSet::new(),
            steps: 0,
        };
        flow.refresh_active(&g.brackets);
        Ok(flow)
    }

    pub fn polygon(&self) -> &Polygon {
        &self.polygon
    }

    pub fn gldim(&self) -> f64 {
        self.gldim
    }

    pub fn active(&self) -> Vec<(usize, usize)> {
        self.active.iter().copied().collect()
    }

    /// Pairs within `active_tol` of the max, plus previously active pairs
    /// still within `10 * active_tol`.
    fn refresh_active(&mut self, brackets: &[((usize, usize), f64)]) {
        let tol = self.cfg.active_tol;
        let next = brackets
            .iter()
            .filter(|(ij, v)| {
                *v >= self.gldim - tol
                    || (self.active.contains(ij) && *v >= self.gldim - 10.0 * tol)
            })
            .map(|(ij, _)| *ij)
            .collect();
        self.active = next;
    }

    pub fn record(&self, accepted_step: f64) -> Result<StepRecord> {
        let active = self.active();
        Ok(StepRecord {
            step: self.steps,
            gldim: self.gldim,
            s: active.len(),
            rank: constraint_rank(&self.polygon, &active)?,
            accepted_step,
            vertices: self.polygon.points(),
            active,
        })
    }

    pub fn is_certified_stationary(&self) -> Result<bool> {
        Ok(matches!(
            descent_direction(&self.polygon, &self.active())?,
            Descent::Stationary { .. }
        ))
    }

    pub fn step(&mut self) -> Result<StepOutcome> {
        let n = self.polygon.n();
        let pairs = bracket_pairs(n);
        let x = self.polygon.free_coords();
        let grads = pairs
            .iter()
            .map(|&ij| gldim_gradient(&self.polygon, ij))
            .collect::<Result<Vec<_>>>()?;
        let brackets = gldim_polygon_unchecked(&self.polygon).brackets;
        let c: Vec<f64> = brackets.iter().map(|(_, v)| v - self.gldim).collect();

        let sol = solve_prox_linear(&grads, &c, self.tau);
        let mut alpha = 1.0;
        for _ in 0..self.cfg.max_backtracks {
            let trial: Vec<f64> = x.iter().zip(&sol.d).map(|(u, d)| u + alpha * d).collect();
            let cand = self.polygon.with_free_coords(&trial);
            if cand.is_convex() {
                let g = gldim_polygon_unchecked(&cand);
                if g.value < self.gldim {
                    let moved = alpha * sol.d.iter().map(|v| v * v).sum::<f64>().sqrt();
                    self.tau = if alpha == 1.0 {
                        (2.0 * self.tau).min(TAU_MAX)
                    } else {
                        (self.tau * alpha).max(f64::MIN_POSITIVE)
                    };
                    self.polygon = cand;
                    self.gldim = g.value;
                    self.steps += 1;
                    self.refresh_active(&g.brackets);
                    return Ok(StepOutcome::Accepted(self.record(moved)?));
                }
            }
            alpha *= self.cfg.shrink;
        }
        self.tau = (self.tau * self.cfg.shrink).max(f64::MIN_POSITIVE);
        Ok(StepOutcome::Rejected {
            certified: self.is_certified_stationary()?,
        })
    }
}

/// Single step from `p`; `None` when no admissible step exists.
pub fn flow_step(p: &Polygon, cfg: &FlowConfig) -> Result<Option<(Polygon, StepRecord)>> {
    let mut flow = Flow::new(p.clone(), cfg.clone())?;
    match flow.step()? {
        StepOutcome::Accepted(rec) => Ok(Some((flow.polygon.clone(), rec))),
        StepOutcome::Rejected { .. } => Ok(None),
    }
}

pub fn run_flow(p: &Polygon, cfg: &FlowConfig) -> Result<FlowTrace> {
    let mut flow = Flow::new(p.clone(), cfg.clone())?;
    let mut records = vec![flow.record(0.0)?];
    let reached = |g: f64| cfg.target.is_some_and(|t| g <= t);
    if reached(flow.gldim) {
        return Ok(FlowTrace {
            status: FlowStatus::TargetReached,
            records,
        });
    }
    for _ in 0..cfg.max_steps {
        match flow.step()? {
            StepOutcome::Accepted(rec) => {
                records.push(rec);
                if reached(flow.gldim) {
                    return Ok(FlowTrace {
                        status: FlowStatus::TargetReached,
                        records,
                    });
                }
                let k = records.len();
                if k > PLATEAU_WINDOW
                    && records[k - 1 - PLATEAU_WINDOW].gldim - flow.gldim < cfg.stop_tol
                    && flow.is_certified_stationary()?
                {
                    return Ok(FlowTrace {
                        status: FlowStatus::Converged,
                        records,
                    });
                }
            }
            StepOutcome::Rejected { certified } => {
                let status = if certified {
                    FlowStatus::Stationary
                } else {
                    FlowStatus::Stalled
                };
                return Ok(FlowTrace { status, records });
            }
        }
    }
    Ok(FlowTrace {
        status: FlowStatus::MaxSteps,
        records,
    })
}
