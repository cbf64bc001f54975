//! Numerical search for flat torsion-free invariant connections.
//!
//! Writing `Γ = ½c + s` with `s` symmetric in its first two indices makes
//! the torsion vanish identically, leaving the curvature equations as a
//! quadratic system in `s`. The system is solved by Levenberg–Marquardt
//! from many seeded starts; converged points are moved to nearby
//! low-height rational points on the solution set, snapped to exact
//! Gaussian rationals, and re-verified exactly. Only exact survivors leave
//! this module.

mod lm;
mod rational;

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num::complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use lm::DampingSchedule;
pub use rational::{best_rational, snap};

use crate::connections::{InvariantConnection, Tensor3};
use crate::lie::LieAlgebra;
use crate::scalar::GaussRat;

/// Tunables for [`newton_multistart`] and [`rationalize_and_verify`].
#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub starts: usize,
    pub max_iters: usize,
    /// Euclidean norm of the complex residual counted as converged.
    pub residual_tol: f64,
    pub damping: DampingSchedule,
    pub seed: u64,
    pub rationalize_denominator_bound: u64,
    pub rationalize_tol: f64,
    /// Denominator bound for the rounding targets used while polishing a
    /// candidate towards a rational point.
    pub polish_denominator: u64,
    /// Half-width of the box starts are drawn from, per real coordinate.
    pub start_radius: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            starts: 200,
            max_iters: 100,
            residual_tol: 1e-10,
            damping: DampingSchedule::default(),
            seed: 1,
            rationalize_denominator_bound: 10_000,
            rationalize_tol: 1e-6,
            polish_denominator: 4,
            start_radius: 2.0,
        }
    }
}

/// Curvature equations of `Γ = ½c + s` over the symmetric unknowns `s`.
#[derive(Debug, Clone)]
pub struct FlatnessSystem {
    algebra: Arc<LieAlgebra>,
    c: Vec<Complex64>,
    /// `(i, j, k)` with `i ≤ j`: the unknown `s[i][j][k] = s[j][i][k]`.
    unknowns: Vec<[usize; 3]>,
    /// `(l, k, i, j)` with `i < j`: one curvature component each.
    components: Vec<[usize; 4]>,
}

impl FlatnessSystem {
    pub fn assemble(algebra: Arc<LieAlgebra>) -> Self {
        let n = algebra.dim();
        let c = algebra
            .structure_constants()
            .iter()
            .map(|x| {
                let (re, im) = x.to_f64_pair();
                Complex64::new(re, im)
            })
            .collect();
        let mut unknowns = Vec::new();
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    unknowns.push([i, j, k]);
                }
            }
        }
        let mut components = Vec::new();
        for l in 0..n {
            for k in 0..n {
                for i in 0..n {
                    for j in i + 1..n {
                        components.push([l, k, i, j]);
                    }
                }
            }
        }
        FlatnessSystem {
            algebra,
            c,
            unknowns,
            components,
        }
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn unknowns(&self) -> &[[usize; 3]] {
        &self.unknowns
    }

    pub fn components(&self) -> &[[usize; 4]] {
        &self.components
    }

    pub fn unknown_count(&self) -> usize {
        self.unknowns.len()
    }

    pub fn residual_count(&self) -> usize {
        self.components.len()
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        let n = self.dim();
        (i * n + j) * n + k
    }

    /// Dense `Γ = ½c + s` in `Γ[i][j][k]` order.
    pub fn gamma(&self, s: &[Complex64]) -> Vec<Complex64> {
        let mut gamma: Vec<Complex64> = self.c.iter().map(|x| x * 0.5).collect();
        self.add_symmetric(&mut gamma, s);
        gamma
    }

    fn add_symmetric(&self, gamma: &mut [Complex64], s: &[Complex64]) {
        for (&[i, j, k], v) in self.unknowns.iter().zip(s) {
            gamma[self.idx(i, j, k)] += v;
            if i != j {
                gamma[self.idx(j, i, k)] += v;
            }
        }
    }

    fn curvature_component(&self, gamma: &[Complex64], [l, k, i, j]: [usize; 4]) -> Complex64 {
        let n = self.dim();
        let g = |a, b, c| gamma[self.idx(a, b, c)];
        (0..n)
            .map(|m| {
                g(j, k, m) * g(i, m, l)
                    - g(i, k, m) * g(j, m, l)
                    - self.c[self.idx(i, j, m)] * g(m, k, l)
            })
            .sum()
    }

    /// One complex residual per independent curvature component.
    pub fn residual(&self, s: &[Complex64]) -> Vec<Complex64> {
        let gamma = self.gamma(s);
        self.components
            .iter()
            .map(|&comp| self.curvature_component(&gamma, comp))
            .collect()
    }

    pub fn residual_norm(&self, s: &[Complex64]) -> f64 {
        self.residual(s)
            .iter()
            .map(Complex64::norm_sqr)
            .sum::<f64>()
            .sqrt()
    }

    /// Complex Jacobian, `residual_count × unknown_count`, row-major.
    fn jacobian(&self, s: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim();
        let gamma = self.gamma(s);
        let g = |a, b, c| gamma[self.idx(a, b, c)];
        let u = self.unknown_count();
        let mut jac = vec![Complex64::new(0.0, 0.0); self.residual_count() * u];
        for (col, &[a, b, kk]) in self.unknowns.iter().enumerate() {
            // dΓ is 1 at (a, b, kk) and (b, a, kk).
            let d = |x: usize, y: usize, z: usize| -> f64 {
                if z == kk && ((x == a && y == b) || (x == b && y == a)) {
                    1.0
                } else {
                    0.0
                }
            };
            for (row, &[l, k, i, j]) in self.components.iter().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for m in 0..n {
                    acc += g(i, m, l) * d(j, k, m) + g(j, k, m) * d(i, m, l)
                        - g(j, m, l) * d(i, k, m)
                        - g(i, k, m) * d(j, m, l)
                        - self.c[self.idx(i, j, m)] * d(m, k, l);
                }
                jac[row * u + col] = acc;
            }
        }
        jac
    }

    fn to_complex(&self, x: &DVector<f64>) -> Vec<Complex64> {
        let u = self.unknown_count();
        (0..u).map(|p| Complex64::new(x[p], x[u + p])).collect()
    }

    fn to_real(s: &[Complex64]) -> DVector<f64> {
        let u = s.len();
        DVector::from_fn(2 * u, |p, _| if p < u { s[p].re } else { s[p - u].im })
    }

    /// Residual and Jacobian of the real-ified system `[Re r; Im r]` in the
    /// coordinates `[Re s; Im s]`. The residual is holomorphic in `s`, so
    /// the real Jacobian is `[[Re J, −Im J], [Im J, Re J]]`.
    fn real_eval(&self, x: &DVector<f64>) -> (DVector<f64>, DMatrix<f64>) {
        let s = self.to_complex(x);
        let r = self.residual(&s);
        let jc = self.jacobian(&s);
        let (m, u) = (self.residual_count(), self.unknown_count());
        let rr = DVector::from_fn(2 * m, |p, _| if p < m { r[p].re } else { r[p - m].im });
        let mut jr = DMatrix::zeros(2 * m, 2 * u);
        for row in 0..m {
            for col in 0..u {
                let z = jc[row * u + col];
                jr[(row, col)] = z.re;
                jr[(row, u + col)] = -z.im;
                jr[(m + row, col)] = z.im;
                jr[(m + row, u + col)] = z.re;
            }
        }
        (rr, jr)
    }

    /// The exact connection `½c + s` for exact symmetric unknowns.
    pub fn exact_connection(&self, s: &[GaussRat]) -> InvariantConnection {
        assert_eq!(s.len(), self.unknown_count(), "wrong number of unknowns");
        let n = self.dim();
        let half = GaussRat::ratio(1, 2);
        let data = self
            .algebra
            .structure_constants()
            .iter()
            .map(|x| x * &half)
            .collect();
        let mut gamma = Tensor3::from_vec(n, data).expect("n³ constants");
        for (&[i, j, k], v) in self.unknowns.iter().zip(s) {
            gamma.set(i, j, k, gamma.get(i, j, k) + v);
            if i != j {
                gamma.set(j, i, k, gamma.get(j, i, k) + v);
            }
        }
        InvariantConnection::new(self.algebra.clone(), gamma).expect("shape matches algebra")
    }

    /// Inverse of [`exact_connection`](Self::exact_connection) for torsion-free
    /// connections: the symmetric part `Γ − ½c`.
    pub fn unknowns_of(&self, conn: &InvariantConnection) -> Vec<GaussRat> {
        let half = GaussRat::ratio(1, 2);
        self.unknowns
            .iter()
            .map(|&[i, j, k]| conn.gamma().get(i, j, k) - &(self.algebra.c(i, j, k) * &half))
            .collect()
    }
}

/// A converged start.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub start_index: usize,
    pub s: Vec<Complex64>,
    /// Recomputed from scratch after convergence.
    pub residual_norm: f64,
    pub iterations: usize,
}

/// Start point for a given index: the origin for index 0, otherwise uniform
/// in the box `[−r, r]` for every real coordinate, from a stream keyed on
/// `(seed, index)`.
pub fn start_point(sys: &FlatnessSystem, cfg: &SearchConfig, index: usize) -> Vec<Complex64> {
    let u = sys.unknown_count();
    if index == 0 {
        return vec![Complex64::new(0.0, 0.0); u];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    let r = cfg.start_radius;
    (0..u)
        .map(|_| Complex64::new(rng.gen_range(-r..=r), rng.gen_range(-r..=r)))
        .collect()
}

fn run_start(sys: &FlatnessSystem, cfg: &SearchConfig, index: usize) -> Option<Candidate> {
    let x0 = FlatnessSystem::to_real(&start_point(sys, cfg, index));
    let free = vec![true; x0.len()];
    let out = lm::minimize(
        x0,
        &free,
        |x| sys.real_eval(x),
        cfg.max_iters,
        cfg.residual_tol,
        &cfg.damping,
    );
    let s = sys.to_complex(&out.x);
    let residual_norm = sys.residual_norm(&s);
    (residual_norm < cfg.residual_tol).then_some(Candidate {
        start_index: index,
        s,
        residual_norm,
        iterations: out.iterations,
    })
}

/// Runs every start (in parallel) and returns the converged ones ordered by
/// start index. The result depends only on `(sys, cfg)`.
pub fn newton_multistart(sys: &FlatnessSystem, cfg: &SearchConfig) -> Vec<Candidate> {
    (0..cfg.starts)
        .into_par_iter()
        .map(|i| run_start(sys, cfg, i))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Snaps every real coordinate to a Gaussian rational; `None` if any
/// coordinate has no rational within tolerance.
fn snap_all(s: &[Complex64], cfg: &SearchConfig) -> Option<Vec<GaussRat>> {
    s.iter()
        .map(|z| {
            let re = snap(z.re, cfg.rationalize_denominator_bound, cfg.rationalize_tol)?;
            let im = snap(z.im, cfg.rationalize_denominator_bound, cfg.rationalize_tol)?;
            Some(GaussRat::new(re, im))
        })
        .collect()
}

fn verify_exact(sys: &FlatnessSystem, s: &[GaussRat]) -> Option<InvariantConnection> {
    let conn = sys.exact_connection(s);
    (conn.is_torsion_free() && conn.is_flat()).then_some(conn)
}

/// Moves a converged point along the solution set to one whose coordinates
/// are small-denominator rationals: repeatedly pin the free coordinate that
/// is closest to such a rational and re-solve for the others, keeping the
/// pin only if the residual returns below tolerance.
fn polish(sys: &FlatnessSystem, s: &[Complex64], cfg: &SearchConfig) -> Option<Vec<Complex64>> {
    let mut x = FlatnessSystem::to_real(s);
    let mut free = vec![true; x.len()];
    while free.iter().any(|&f| f) {
        let mut targets: Vec<(f64, usize, f64)> = (0..x.len())
            .filter(|&p| free[p])
            .filter_map(|p| {
                let t = best_rational(x[p], cfg.polish_denominator)?;
                let t = num::ToPrimitive::to_f64(&t)?;
                Some(((t - x[p]).abs(), p, t))
            })
            .collect();
        targets.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let mut pinned = false;
        for (_, p, t) in targets {
            let mut trial = x.clone();
            trial[p] = t;
            free[p] = false;
            let out = lm::minimize(
                trial,
                &free,
                |v| sys.real_eval(v),
                cfg.max_iters,
                cfg.residual_tol,
                &cfg.damping,
            );
            if out.residual_norm < cfg.residual_tol {
                x = out.x;
                pinned = true;
                break;
            }
            free[p] = true;
        }
        if !pinned {
            return None;
        }
    }
    Some(sys.to_complex(&x))
}

/// Turns a numerical candidate into an exactly verified flat torsion-free
/// connection, or nothing. Tries a direct snap first, then polishing.
pub fn rationalize_and_verify(
    candidate: &Candidate,
    sys: &FlatnessSystem,
    cfg: &SearchConfig,
) -> Option<InvariantConnection> {
    if let Some(conn) = snap_all(&candidate.s, cfg).and_then(|s| verify_exact(sys, &s)) {
        return Some(conn);
    }
    let polished = polish(sys, &candidate.s, cfg)?;
    snap_all(&polished, cfg).and_then(|s| verify_exact(sys, &s))
}

/// Result of a full search: how many starts converged and the first exact
/// certificate by start index.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub starts: usize,
    pub converged: usize,
    pub certificate: Option<(usize, InvariantConnection)>,
}

pub fn find_certificate(sys: &FlatnessSystem, cfg: &SearchConfig) -> SearchOutcome {
    let candidates = newton_multistart(sys, cfg);
    let certificate = candidates
        .iter()
        .find_map(|c| rationalize_and_verify(c, sys, cfg).map(|conn| (c.start_index, conn)));
    SearchOutcome {
        starts: cfg.starts,
        converged: candidates.len(),
        certificate,
    }
}
