use nalgebra::DMatrix;

use super::gradient::gldim_gradient;
use crate::error::{Error, Result};
use crate::polygon::{gldim_polygon, Polygon};

/// Relative singular-value cutoff for the numerical rank.
pub const RANK_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct StratumReport {
    pub s: usize,
    pub rank: usize,
    pub active: Vec<(usize, usize)>,
}

/// Numerical rank of the Jacobian of `theta_k - theta_first` over the
/// active pairs.
pub fn constraint_rank(p: &Polygon, active: &[(usize, usize)]) -> Result<usize> {
    if active.len() < 2 {
        return Ok(0);
    }
    let grads = active
        .iter()
        .map(|&ij| gldim_gradient(p, ij))
        .collect::<Result<Vec<_>>>()?;
    let dim = grads[0].len();
    let jac = DMatrix::from_fn(grads.len() - 1, dim, |r, c| grads[r + 1][c] - grads[0][c]);
    let sv = jac.singular_values();
    let top = sv.max();
    if top == 0.0 {
        return Ok(0);
    }
    Ok(sv.iter().filter(|&&v| v > RANK_TOL * top).count())
}

pub fn stratum_rank(p: &Polygon, active_tol: f64) -> Result<StratumReport> {
    let g = gldim_polygon(p)?;
    let active = g.active(active_tol);
    Ok(StratumReport {
        s: active.len(),
        rank: constraint_rank(p, &active)?,
        active,
    })
}

/// Bisects along the vertex-wise segment from `a` to `b` for a polygon where
/// the unique maximizing pair of `a` ties with another pair. Needs `a` to
/// have a single argmax that is not an argmax of `b`, and every polygon on
/// the segment to be convex.
pub fn locate_wall(a: &Polygon, b: &Polygon) -> Result<Polygon> {
    if a.n() != b.n() {
        return Err(Error::MalformedPolygon("ranks differ".into()));
    }
    let ga = gldim_polygon(a)?;
    if ga.argmax.len() != 1 {
        return Err(Error::SingularConfiguration(
            "start of the segment is already on a wall".into(),
        ));
    }
    let pair = ga.argmax[0];
    let xa = a.free_coords();
    let xb = b.free_coords();
    let at = |t: f64| {
        let x: Vec<f64> = xa.iter().zip(&xb).map(|(u, v)| u + t * (v - u)).collect();
        a.with_free_coords(&x)
    };
    // margin of the starting pair over all others
    let margin = |t: f64| -> Result<f64> {
        let p = at(t);
        let g = gldim_polygon(&p)?;
        let own = g
            .brackets
            .iter()
            .find(|(ij, _)| *ij == pair)
            .map(|(_, v)| *v)
            .expect("pair present");
        let other = g
            .brackets
            .iter()
            .filter(|(ij, _)| *ij != pair)
            .map(|(_, v)| *v)
            .fold(f64::NEG_INFINITY, f64::max);
        Ok(own - other)
    };
    if margin(1.0)? > 0.0 {
        return Err(Error::SingularConfiguration(
            "both ends share the maximizing pair".into(),
        ));
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if margin(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(at(lo))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::{random_convex_polygon, regular_polygon};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn gepner_triangle() {
        let r = stratum_rank(&regular_polygon(2).unwrap(), 1e-7).unwrap();
        assert_eq!((r.s, r.rank), (3, 2));
    }

    #[test]
    fn generic_polygon_has_one_pair() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let p = random_convex_polygon(4, &mut rng).unwrap();
        let r = stratum_rank(&p, 1e-7).unwrap();
        assert_eq!((r.s, r.rank), (1, 0));
    }

    #[test]
    fn walls_have_rank_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut found = 0;
        while found < 5 {
            let a = random_convex_polygon(3, &mut rng).unwrap();
            let b = random_convex_polygon(3, &mut rng).unwrap();
            let (ga, gb) = (gldim_polygon(&a).unwrap(), gldim_polygon(&b).unwrap());
            if ga.argmax == gb.argmax {
                continue;
            }
            let Ok(w) = locate_wall(&a, &b) else { continue };
            let r = stratum_rank(&w, 1e-7).unwrap();
            if r.s == 2 {
                assert_eq!(r.rank, 1);
                found += 1;
            }
        }
    }
}
