//! Convex `(n+1)`-gons normalized by `V_0 = 0`, `V_1 = 1`, and the angle
//! formula for gldim.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::stability::{gldim, CentralChargeChart};

/// Tolerance on the `V_0 = 0`, `V_1 = 1` normalization.
pub const NORMALIZATION_TOL: f64 = 1e-12;
/// Absolute tie tolerance when reporting argmax pairs.
pub const ARGMAX_TOL: f64 = 1e-9;

fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

#[derive(Clone, Debug, PartialEq)]
pub struct Polygon {
    vertices: Vec<Complex64>,
}

impl Polygon {
    /// Validates normalization, distinct vertices, simplicity and
    /// anticlockwise labeling. Convexity is not required.
    pub fn new(mut vertices: Vec<Complex64>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::MalformedPolygon(format!(
                "need at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        if vertices.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::MalformedPolygon("non-finite coordinate".into()));
        }
        if vertices[0].norm() > NORMALIZATION_TOL
            || (vertices[1] - Complex64::new(1.0, 0.0)).norm() > NORMALIZATION_TOL
        {
            return Err(Error::MalformedPolygon(format!(
                "expected V_0 = (0,0) and V_1 = (1,0), got {} and {}",
                vertices[0], vertices[1]
            )));
        }
        vertices[0] = Complex64::new(0.0, 0.0);
        vertices[1] = Complex64::new(1.0, 0.0);
        let p = Self { vertices };
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p.vertices[i] == p.vertices[j] {
                    return Err(Error::MalformedPolygon(format!(
                        "V_{i} and V_{j} coincide"
                    )));
                }
            }
        }
        if !p.is_simple() {
            return Err(Error::MalformedPolygon("edges intersect".into()));
        }
        if p.signed_area() <= 0.0 {
            return Err(Error::MalformedPolygon(
                "vertices are not in anticlockwise order".into(),
            ));
        }
        Ok(p)
    }

    pub fn from_points(points: &[[f64; 2]]) -> Result<Self> {
        Self::new(points.iter().map(|p| Complex64::new(p[0], p[1])).collect())
    }

    /// No validation; used for trial points during line searches.
    pub(crate) fn unchecked(vertices: Vec<Complex64>) -> Self {
        Self { vertices }
    }

    /// Rank `n` of the quiver; the polygon has `n+1` vertices.
    pub fn n(&self) -> usize {
        self.vertices.len() - 1
    }

    fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    /// Vertex with index taken mod `n+1`.
    pub fn vertex(&self, k: usize) -> Complex64 {
        self.vertices[k % self.len()]
    }

    pub fn points(&self) -> Vec<[f64; 2]> {
        self.vertices.iter().map(|v| [v.re, v.im]).collect()
    }

    /// Coordinates of `V_2..V_n` as `(x_2, y_2, ..., x_n, y_n)`.
    pub fn free_coords(&self) -> Vec<f64> {
        self.vertices[2..].iter().flat_map(|v| [v.re, v.im]).collect()
    }

    pub fn with_free_coords(&self, coords: &[f64]) -> Self {
        assert_eq!(coords.len(), 2 * (self.n() - 1));
        let mut vertices = self.vertices[..2].to_vec();
        vertices.extend(coords.chunks(2).map(|c| Complex64::new(c[0], c[1])));
        Self::unchecked(vertices)
    }

    pub fn signed_area(&self) -> f64 {
        (0..self.len())
            .map(|k| cross(self.vertex(k), self.vertex(k + 1)))
            .sum::<f64>()
            / 2.0
    }

    fn is_simple(&self) -> bool {
        let m = self.len();
        for a in 0..m {
            for b in a + 1..m {
                if b == a + 1 || (a == 0 && b == m - 1) {
                    continue;
                }
                if segments_meet(
                    self.vertex(a),
                    self.vertex(a + 1),
                    self.vertex(b),
                    self.vertex(b + 1),
                ) {
                    return false;
                }
            }
        }
        true
    }

    /// Strict convexity: every turn is a left turn and the edges wind once.
    /// Collinear triples count as non-convex.
    pub fn is_convex(&self) -> bool {
        let m = self.len();
        let mut turning = 0.0;
        for k in 0..m {
            let e0 = self.vertex(k + 1) - self.vertex(k);
            let e1 = self.vertex(k + 2) - self.vertex(k + 1);
            let c = cross(e0, e1);
            if !(c > 0.0) {
                return false;
            }
            turning += c.atan2(e0.re * e1.re + e0.im * e1.im);
        }
        (turning - TAU).abs() < 1e-6
    }

    /// Edge vectors `V_i - V_{i-1}`, `i = 1..n`.
    pub fn edges(&self) -> Vec<Complex64> {
        (1..self.len())
            .map(|i| self.vertices[i] - self.vertices[i - 1])
            .collect()
    }

    /// Largest vertex displacement from another polygon of the same rank.
    pub fn max_vertex_deviation(&self, other: &Polygon) -> f64 {
        self.vertices
            .iter()
            .zip(&other.vertices)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

fn orient(a: Complex64, b: Complex64, c: Complex64) -> f64 {
    cross(b - a, c - a)
}

fn on_segment(a: Complex64, b: Complex64, p: Complex64) -> bool {
    p.re >= a.re.min(b.re)
        && p.re <= a.re.max(b.re)
        && p.im >= a.im.min(b.im)
        && p.im <= a.im.max(b.im)
}

fn segments_meet(p1: Complex64, p2: Complex64, q1: Complex64, q2: Complex64) -> bool {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(q1, q2, p1))
        || (d2 == 0.0 && on_segment(q1, q2, p2))
        || (d3 == 0.0 && on_segment(p1, p2, q1))
        || (d4 == 0.0 && on_segment(p1, p2, q2))
}

/// Index pairs `(i, j)`, `0 <= i < j <= n`, of the angle formula; one per
/// indecomposable.
pub fn bracket_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .collect()
}

/// `(1/pi) [arg(V_i - V_j) - arg(V_{j+1} - V_{i+1})]`, indices mod `n+1`,
/// reduced into `[0, 2)`. On a convex polygon the angle lies in `(0, 1)`.
pub fn bracket(p: &Polygon, (i, j): (usize, usize)) -> f64 {
    let u = p.vertex(i) - p.vertex(j);
    let w = p.vertex(j + 1) - p.vertex(i + 1);
    (u.im.atan2(u.re) - w.im.atan2(w.re)).rem_euclid(TAU) / PI
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolygonGldim {
    pub value: f64,
    pub argmax: Vec<(usize, usize)>,
    /// `((i, j), value)` for every pair, in `bracket_pairs` order.
    pub brackets: Vec<((usize, usize), f64)>,
}

impl PolygonGldim {
    /// Pairs within `tol` of the maximum.
    pub fn active(&self, tol: f64) -> Vec<(usize, usize)> {
        self.brackets
            .iter()
            .filter(|(_, v)| *v >= self.value - tol)
            .map(|(ij, _)| *ij)
            .collect()
    }
}

pub fn gldim_polygon(p: &Polygon) -> Result<PolygonGldim> {
    if !p.is_convex() {
        return Err(Error::NonConvex);
    }
    Ok(gldim_polygon_unchecked(p))
}

pub(crate) fn gldim_polygon_unchecked(p: &Polygon) -> PolygonGldim {
    let brackets: Vec<_> = bracket_pairs(p.n())
        .into_iter()
        .map(|ij| (ij, bracket(p, ij)))
        .collect();
    let value = brackets
        .iter()
        .map(|(_, v)| *v)
        .fold(f64::NEG_INFINITY, f64::max);
    let mut out = PolygonGldim {
        value,
        argmax: Vec::new(),
        brackets,
    };
    out.argmax = out.active(ARGMAX_TOL);
    out
}

/// `Z(S_i) = V_i - V_{i-1}`.
pub fn polygon_to_chart(p: &Polygon) -> Result<CentralChargeChart> {
    if !p.is_convex() {
        return Err(Error::NonConvex);
    }
    CentralChargeChart::new(p.edges())
}

/// Partial sums of the charges; needs `Z(S_1) = 1` and gldim < 1.
pub fn chart_to_polygon(z: &CentralChargeChart) -> Result<Polygon> {
    let z1 = z.charges()[0];
    if (z1 - Complex64::new(1.0, 0.0)).norm() > NORMALIZATION_TOL {
        return Err(Error::Unnormalized {
            re: z1.re,
            im: z1.im,
        });
    }
    if z.rank() < 2 {
        return Err(Error::MalformedPolygon("rank 1 has no polygon".into()));
    }
    let g = gldim(z)?;
    if g >= 1.0 {
        return Err(Error::NotInChart(g));
    }
    let mut vertices = vec![Complex64::new(0.0, 0.0)];
    for c in z.charges() {
        vertices.push(vertices[vertices.len() - 1] + c);
    }
    let p = Polygon::new(vertices)?;
    if !p.is_convex() {
        return Err(Error::NotInChart(g));
    }
    Ok(p)
}

/// Regular `(n+1)`-gon with `V_0 = 0`, `V_1 = 1`.
pub fn regular_polygon(n: usize) -> Result<Polygon> {
    if n < 2 {
        return Err(Error::InvalidRank(n));
    }
    let w = Complex64::from_polar(1.0, TAU / (n + 1) as f64);
    let mut vertices = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
    let mut edge = Complex64::new(1.0, 0.0);
    for _ in 2..=n {
        edge *= w;
        vertices.push(vertices[vertices.len() - 1] + edge);
    }
    Polygon::new(vertices)
}

/// Sorted edge directions in `[0, pi)` with lengths in `(0.2, 1]`, rotated
/// and scaled so the first edge is `1`. All edges `V_i - V_{i-1}` lie in
/// the upper half plane, so the polygon is in the standard-heart chart.
pub fn random_convex_polygon<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Polygon> {
    if n < 2 {
        return Err(Error::InvalidRank(n));
    }
    loop {
        let mut dirs: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * PI).collect();
        dirs.sort_by(f64::total_cmp);
        let edges: Vec<Complex64> = dirs
            .iter()
            .map(|&t| Complex64::from_polar(1.0 - 0.8 * rng.random::<f64>(), t))
            .collect();
        let e0 = edges[0];
        let mut vertices = vec![Complex64::new(0.0, 0.0)];
        for e in &edges {
            vertices.push(vertices[vertices.len() - 1] + e / e0);
        }
        if let Ok(p) = Polygon::new(vertices) {
            if p.is_convex() && CentralChargeChart::new(p.edges()).is_ok() {
                return Ok(p);
            }
        }
    }
}
