//! Levenberg–Marquardt for small dense real least-squares problems.

use nalgebra::{DMatrix, DVector};

/// Adaptive damping: start at `initial`, multiply by `increase` after a
/// rejected step and by `decrease` after an accepted one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DampingSchedule {
    pub initial: f64,
    pub increase: f64,
    pub decrease: f64,
    pub max: f64,
}

impl Default for DampingSchedule {
    fn default() -> Self {
        DampingSchedule {
            initial: 1e-3,
            increase: 10.0,
            decrease: 0.3,
            max: 1e12,
        }
    }
}

pub(crate) struct LmOutcome {
    pub x: DVector<f64>,
    pub residual_norm: f64,
    pub iterations: usize,
}

/// Minimizes `‖r(x)‖` over the coordinates where `free[i]` is true,
/// holding the rest fixed. `eval` returns the residual and its Jacobian.
pub(crate) fn minimize<F>(
    mut x: DVector<f64>,
    free: &[bool],
    eval: F,
    max_iters: usize,
    tol: f64,
    damping: &DampingSchedule,
) -> LmOutcome
where
    F: Fn(&DVector<f64>) -> (DVector<f64>, DMatrix<f64>),
{
    let cols: Vec<usize> = (0..x.len()).filter(|&i| free[i]).collect();
    let (mut r, mut jac) = eval(&x);
    let mut norm = r.norm();
    let mut lambda = damping.initial;
    let mut iterations = 0;
    while iterations < max_iters && norm >= tol && !cols.is_empty() {
        iterations += 1;
        let j = jac.select_columns(&cols);
        let jt = j.transpose();
        let jtj = &jt * &j;
        let g = &jt * &r;
        let mut accepted = false;
        while lambda <= damping.max {
            let mut a = jtj.clone();
            for d in 0..a.nrows() {
                a[(d, d)] += lambda;
            }
            let Some(chol) = a.cholesky() else {
                lambda *= damping.increase;
                continue;
            };
            let step = chol.solve(&(-&g));
            let mut trial = x.clone();
            for (s, &c) in step.iter().zip(&cols) {
                trial[c] += s;
            }
            let (tr, tj) = eval(&trial);
            let tnorm = tr.norm();
            if tnorm.is_finite() && tnorm < norm {
                x = trial;
                r = tr;
                jac = tj;
                norm = tnorm;
                lambda = (lambda * damping.decrease).max(1e-15);
                accepted = true;
                break;
            }
            lambda *= damping.increase;
        }
        if !accepted {
            break;
        }
    }
    LmOutcome {
        x,
        residual_norm: norm,
        iterations,
    }
}
