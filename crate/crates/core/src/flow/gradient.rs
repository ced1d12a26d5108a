use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::polygon::Polygon;

/// Adds `sign * d arg(z) / d V_k` into the free-coordinate gradient.
fn add_arg(grad: &mut [f64], k: usize, z: Complex64, sign: f64) {
    if k < 2 {
        return;
    }
    let r2 = z.norm_sqr();
    let off = 2 * (k - 2);
    grad[off] += sign * -z.im / r2;
    grad[off + 1] += sign * z.re / r2;
}

/// Gradient of the bracket `theta_ij` in the free coordinates
/// `(x_2, y_2, ..., x_n, y_n)`.
pub fn gldim_gradient(p: &Polygon, (i, j): (usize, usize)) -> Result<Vec<f64>> {
    let n = p.n();
    if !(i < j && j <= n) {
        return Err(Error::SingularConfiguration(format!(
            "({i},{j}) is not an index pair for n = {n}"
        )));
    }
    let m = n + 1;
    let (i1, j1) = ((i + 1) % m, (j + 1) % m);
    let u = p.vertex(i) - p.vertex(j);
    let w = p.vertex(j1) - p.vertex(i1);
    if u.norm_sqr() == 0.0 || w.norm_sqr() == 0.0 {
        return Err(Error::SingularConfiguration(format!(
            "diagonal of pair ({i},{j}) has coincident endpoints"
        )));
    }
    let mut grad = vec![0.0; 2 * (n - 1)];
    // arg(V_i - V_j) - arg(V_{j+1} - V_{i+1})
    add_arg(&mut grad, i, u, 1.0);
    add_arg(&mut grad, j, u, -1.0);
    add_arg(&mut grad, j1, w, -1.0);
    add_arg(&mut grad, i1, w, 1.0);
    for g in &mut grad {
        *g /= PI;
    }
    Ok(grad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::{bracket, bracket_pairs, random_convex_polygon, regular_polygon};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn central_difference(p: &Polygon, ij: (usize, usize), h: f64) -> Vec<f64> {
        let x = p.free_coords();
        (0..x.len())
            .map(|k| {
                let mut a = x.clone();
                let mut b = x.clone();
                a[k] += h;
                b[k] -= h;
                (bracket(&p.with_free_coords(&a), ij) - bracket(&p.with_free_coords(&b), ij))
                    / (2.0 * h)
            })
            .collect()
    }

    #[test]
    fn matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 2..=6 {
            for _ in 0..10 {
                let p = random_convex_polygon(n, &mut rng).unwrap();
                for ij in bracket_pairs(n) {
                    let g = gldim_gradient(&p, ij).unwrap();
                    let fd = central_difference(&p, ij, 1e-6);
                    for (a, b) in g.iter().zip(&fd) {
                        assert!((a - b).abs() < 1e-5, "{ij:?}: {a} vs {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn argmax_rows_nonzero_at_regular_polygons() {
        for n in 2..=6 {
            let p = regular_polygon(n).unwrap();
            for ij in bracket_pairs(n) {
                let g = gldim_gradient(&p, ij).unwrap();
                assert!(g.iter().any(|v| v.abs() > 1e-3), "{ij:?} n={n}");
            }
        }
    }

    #[test]
    fn bad_pair() {
        let p = regular_polygon(3).unwrap();
        assert!(gldim_gradient(&p, (2, 2)).is_err());
        assert!(gldim_gradient(&p, (0, 4)).is_err());
    }
}
