//! Independent linear-algebra check of the interval Hom criteria.
//!
//! Interval modules are built as explicit representations of
//! `1 <- 2 <- ... <- n` over the rationals. `Hom` is the kernel of the usual
//! commutativity map on vertex-wise linear maps; `Ext^1(M_[a,b], N)` comes
//! from the projective presentation `0 -> P_{a-1} -> P_b -> M_[a,b] -> 0`,
//! which after applying `Hom(-, N)` leaves the cokernel of the path map
//! `N_b -> N_{a-1}`.

use num_rational::Rational64;
use num_traits::{One, Zero};

use super::hom::HomDims;
use super::interval::{AnQuiver, IntervalObject};
use crate::error::{Error, Result};

pub const DEFAULT_ORACLE_BOUND: usize = 8;

#[derive(Clone, Debug, PartialEq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational64>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational64::zero(); rows * cols],
        }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = Self::zeros(k, k);
        for i in 0..k {
            m.set(i, i, Rational64::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Rational64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Exact rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(pivot) = (rank..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            for c in 0..m.cols {
                let tmp = m.get(rank, c);
                m.set(rank, c, m.get(pivot, c));
                m.set(pivot, c, tmp);
            }
            let p = m.get(rank, col);
            for r in 0..m.rows {
                if r == rank {
                    continue;
                }
                let f = m.get(r, col) / p;
                if f.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = m.get(r, c) - f * m.get(rank, c);
                    m.set(r, c, v);
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }
}

/// A representation of `1 <- 2 <- ... <- n`: vector-space dimensions at each
/// vertex and, for every arrow `v+1 -> v`, a `dim(v) x dim(v+1)` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    dims: Vec<usize>,
    arrows: Vec<RationalMatrix>,
}

impl Representation {
    pub fn interval(n: usize, lo: usize, hi: usize) -> Self {
        let dims: Vec<usize> = (1..=n).map(|v| usize::from(lo <= v && v <= hi)).collect();
        let arrows = (0..n.saturating_sub(1))
            .map(|k| {
                let (target, source) = (dims[k], dims[k + 1]);
                if target == 1 && source == 1 {
                    RationalMatrix::identity(1)
                } else {
                    RationalMatrix::zeros(target, source)
                }
            })
            .collect();
        Self { dims, arrows }
    }

    pub fn rank(&self) -> usize {
        self.dims.len()
    }

    /// Dimension at vertex `v` (1-based).
    pub fn dim_at(&self, v: usize) -> usize {
        self.dims[v - 1]
    }

    /// Composite of the structure maps along the path `from -> ... -> to`
    /// (`from >= to`, 1-based).
    pub fn path_map(&self, from: usize, to: usize) -> RationalMatrix {
        assert!(from >= to && to >= 1);
        let mut acc = RationalMatrix::identity(self.dim_at(from));
        for v in (to..from).rev() {
            acc = self.arrows[v - 1].mul(&acc);
        }
        acc
    }
}

/// `dim Hom(m, n)` as the kernel of `(f_v) -> (f_v M_a - N_a f_{v+1})_a`.
pub fn hom_dimension(m: &Representation, n: &Representation) -> usize {
    assert_eq!(m.rank(), n.rank());
    let verts = m.rank();
    let mut offsets = Vec::with_capacity(verts + 1);
    let mut total = 0;
    for v in 1..=verts {
        offsets.push(total);
        total += n.dim_at(v) * m.dim_at(v);
    }
    if total == 0 {
        return 0;
    }
    // f_v is dim N_v x dim M_v, stored row-major from offsets[v-1].
    let var = |v: usize, r: usize, c: usize| offsets[v - 1] + r * m.dim_at(v) + c;

    let mut rows: Vec<Vec<Rational64>> = Vec::new();
    for v in 1..verts {
        let ma = &m.arrows[v - 1];
        let na = &n.arrows[v - 1];
        for r in 0..n.dim_at(v) {
            for c in 0..m.dim_at(v + 1) {
                let mut row = vec![Rational64::zero(); total];
                for k in 0..m.dim_at(v) {
                    row[var(v, r, k)] += ma.get(k, c);
                }
                for k in 0..n.dim_at(v + 1) {
                    row[var(v + 1, k, c)] -= na.get(r, k);
                }
                rows.push(row);
            }
        }
    }
    let mut system = RationalMatrix::zeros(rows.len(), total);
    for (i, row) in rows.into_iter().enumerate() {
        for (j, v) in row.into_iter().enumerate() {
            system.set(i, j, v);
        }
    }
    total - system.rank()
}

/// `dim Ext^1(M_[a,b], n)` from the projective presentation of the interval.
pub fn ext1_dimension_of_interval(x: &IntervalObject, n: &Representation) -> usize {
    if x.lo == 1 {
        return 0;
    }
    let top = x.hi;
    let below = x.lo - 1;
    n.dim_at(below) - n.path_map(top, below).rank()
}

pub fn oracle_hom_dim(
    quiver: AnQuiver,
    x: &IntervalObject,
    y: &IntervalObject,
) -> Result<HomDims> {
    oracle_hom_dim_bounded(quiver, x, y, DEFAULT_ORACLE_BOUND)
}

pub fn oracle_hom_dim_bounded(
    quiver: AnQuiver,
    x: &IntervalObject,
    y: &IntervalObject,
    bound: usize,
) -> Result<HomDims> {
    let n = quiver.rank();
    if n > bound {
        return Err(Error::OracleBound { rank: n, bound });
    }
    quiver.check(x)?;
    quiver.check(y)?;
    let mx = Representation::interval(n, x.lo, x.hi);
    let my = Representation::interval(n, y.lo, y.hi);
    let hom = hom_dimension(&mx, &my);
    let ext = ext1_dimension_of_interval(x, &my);
    Ok(HomDims::from_module_degrees(hom, ext).shifted(x.shift, y.shift))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: usize, hi: usize) -> IntervalObject {
        IntervalObject::new(lo, hi).unwrap()
    }

    fn oracle(n: usize, x: IntervalObject, y: IntervalObject) -> (usize, usize) {
        let d = oracle_hom_dim(AnQuiver::new(n).unwrap(), &x, &y).unwrap();
        (d.degree(0), d.degree(1))
    }

    #[test]
    fn explicit_matrix_examples() {
        assert_eq!(oracle(2, iv(1, 1), iv(1, 2)), (1, 0));
        assert_eq!(oracle(2, iv(1, 2), iv(1, 1)), (0, 0));
        assert_eq!(oracle(2, iv(1, 2), iv(1, 2)), (1, 0));
        assert_eq!(oracle(2, iv(2, 2), iv(1, 1)), (0, 1));
        assert_eq!(oracle(2, iv(1, 2), iv(2, 2)), (1, 0));
    }

    #[test]
    fn bound_is_enforced() {
        let q = AnQuiver::new(9).unwrap();
        assert_eq!(
            oracle_hom_dim(q, &iv(1, 1), &iv(1, 1)),
            Err(Error::OracleBound { rank: 9, bound: 8 })
        );
        assert!(oracle_hom_dim_bounded(q, &iv(1, 1), &iv(1, 1), 9).is_ok());
    }

    #[test]
    fn rank_of_small_matrices() {
        let mut m = RationalMatrix::zeros(2, 3);
        m.set(0, 0, Rational64::from_integer(1));
        m.set(0, 1, Rational64::from_integer(2));
        m.set(1, 0, Rational64::from_integer(2));
        m.set(1, 1, Rational64::from_integer(4));
        assert_eq!(m.rank(), 1);
        m.set(1, 2, Rational64::new(1, 3));
        assert_eq!(m.rank(), 2);
        assert_eq!(RationalMatrix::identity(4).rank(), 4);
    }

    #[test]
    fn path_maps_of_intervals() {
        let r = Representation::interval(5, 2, 4);
        assert_eq!(r.path_map(4, 2).rank(), 1);
        assert_eq!(r.path_map(5, 2).rank(), 0);
        assert_eq!(r.path_map(4, 1).rank(), 0);
    }

    #[test]
    fn agrees_with_closed_form_up_to_rank_six() {
        for n in 1..=6 {
            let q = AnQuiver::new(n).unwrap();
            for x in q.indecomposables() {
                for y in q.indecomposables() {
                    assert_eq!(
                        q.hom_dim(&x, &y).unwrap(),
                        oracle_hom_dim(q, &x, &y).unwrap(),
                        "{x} -> {y} in A_{n}"
                    );
                }
            }
        }
    }
}
