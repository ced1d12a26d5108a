//! Prox-linear subproblem for a max of smooth pieces:
//!
//! `min_d max_k (c_k + g_k . d) + |d|^2 / (2 tau)`.
//!
//! Solved through its dual over the simplex,
//! `min_lambda (tau/2) |G lambda|^2 - c . lambda`, by a primal active-set
//! method; then `d = -tau G lambda`. With `c = 0`, `tau = 1` this gives
//! the minimum-norm element of the convex hull of the `g_k`.

use nalgebra::{DMatrix, DVector};

#[derive(Clone, Debug, PartialEq)]
pub struct QpSolution {
    pub weights: Vec<f64>,
    pub d: Vec<f64>,
    /// `max_k (c_k + g_k . d)`.
    pub model: f64,
    pub iterations: usize,
}

const MULTIPLIER_TOL: f64 = 1e-13;
const STEP_TOL: f64 = 1e-12;

pub fn solve_prox_linear(gradients: &[Vec<f64>], c: &[f64], tau: f64) -> QpSolution {
    let m = gradients.len();
    assert!(m > 0 && m == c.len());
    let dim = gradients[0].len();
    let g = DMatrix::from_fn(dim, m, |r, k| gradients[k][r]);
    let q = (g.transpose() * &g) * tau;
    let scale = 1.0 + q.amax() + c.iter().fold(0.0f64, |a, v| a.max(v.abs()));

    let start = (0..m)
        .max_by(|&a, &b| c[a].total_cmp(&c[b]))
        .expect("nonempty");
    let mut lambda = DVector::zeros(m);
    lambda[start] = 1.0;
    let mut fixed: Vec<bool> = (0..m).map(|k| k != start).collect();
    let cvec = DVector::from_column_slice(c);

    let mut iterations = 0;
    let cap = 50 * m + 100;
    while iterations < cap {
        iterations += 1;
        let free: Vec<usize> = (0..m).filter(|&k| !fixed[k]).collect();
        let f = free.len();
        let grad = &q * &lambda - &cvec;

        let mut kkt = DMatrix::zeros(f + 1, f + 1);
        let mut rhs = DVector::zeros(f + 1);
        for (a, &ka) in free.iter().enumerate() {
            for (b, &kb) in free.iter().enumerate() {
                kkt[(a, b)] = q[(ka, kb)];
            }
            kkt[(a, f)] = 1.0;
            kkt[(f, a)] = 1.0;
            rhs[a] = -grad[ka];
        }
        let svd = kkt.clone().svd(true, true);
        let eps = 1e-13 * svd.singular_values.max().max(1.0);
        let sol = svd.solve(&rhs, eps).expect("both factors computed");
        let resid = &rhs - &kkt * &sol;

        let step: DVector<f64> = if resid.norm() > 1e-11 * scale {
            // No minimizer on this face: the residual is a zero-curvature
            // descent direction that must run into a bound.
            resid.rows(0, f).into_owned()
        } else {
            sol.rows(0, f).into_owned()
        };

        // Weights live in [0,1], so an absolute cutoff is meaningful.
        if f == 1 || step.amax() <= STEP_TOL {
            let nu = sol[f];
            let worst = (0..m)
                .filter(|&k| fixed[k])
                .map(|k| (k, grad[k] + nu))
                .min_by(|a, b| a.1.total_cmp(&b.1));
            match worst {
                Some((k, mu)) if mu < -MULTIPLIER_TOL * scale => fixed[k] = false,
                _ => break,
            }
            continue;
        }

        let unbounded = resid.norm() > 1e-11 * scale;
        let mut alpha = if unbounded { f64::INFINITY } else { 1.0 };
        let mut blocking = None;
        for (a, &k) in free.iter().enumerate() {
            if step[a] < 0.0 {
                let r = -lambda[k] / step[a];
                if r < alpha {
                    alpha = r;
                    blocking = Some(k);
                }
            }
        }
        if !alpha.is_finite() {
            break;
        }
        for (a, &k) in free.iter().enumerate() {
            lambda[k] = (lambda[k] + alpha * step[a]).max(0.0);
        }
        if let Some(k) = blocking {
            lambda[k] = 0.0;
            fixed[k] = true;
        }
        let total = lambda.sum();
        lambda /= total;
    }

    let d = (&g * &lambda) * -tau;
    let model = (0..m)
        .map(|k| c[k] + g.column(k).dot(&d))
        .fold(f64::NEG_INFINITY, f64::max);
    QpSolution {
        weights: lambda.iter().copied().collect(),
        d: d.iter().copied().collect(),
        model,
        iterations,
    }
}

/// Minimum-norm element of the convex hull of `gradients`.
pub fn min_norm_element(gradients: &[Vec<f64>]) -> Vec<f64> {
    let c = vec![0.0; gradients.len()];
    solve_prox_linear(gradients, &c, 1.0)
        .d
        .into_iter()
        .map(|v| -v)
        .collect()
}
