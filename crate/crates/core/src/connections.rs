//! Invariant affine connections as constant Christoffel arrays, and their
//! torsion, curvature, Ricci and projective Weyl tensors.
//!
//! Index conventions, fixed throughout the crate:
//!
//! * `Γ[i][j][k]`: `∇_{e_i} e_j = Σ_k Γ[i][j][k] e_k`
//! * `T[i][j][k]`: `T(e_i, e_j) = Σ_k T[i][j][k] e_k`
//! * `R[l][k][i][j]`: `R(e_i, e_j) e_k = Σ_l R[l][k][i][j] e_l`
//! * `Ric[j][k]`: `Ric(e_j, e_k) = trace(x ↦ R(x, e_j) e_k)`

use std::sync::Arc;

use thiserror::Error;

use crate::lie::LieAlgebra;
use crate::scalar::{ExactMatrix, GaussRat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectionError {
    #[error("Christoffel array has {found} entries, expected {expected}")]
    Shape { expected: usize, found: usize },
    #[error("connection has nonzero torsion")]
    NonzeroTorsion,
    #[error("projective flatness needs dimension at least 3, got {0}")]
    DimensionTooSmall(usize),
    #[error("covector has length {found}, expected {expected}")]
    CovectorLength { expected: usize, found: usize },
}

/// A rank-3 array `n × n × n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tensor3 {
    n: usize,
    data: Vec<GaussRat>,
}

impl Tensor3 {
    pub fn zeros(n: usize) -> Self {
        Tensor3 {
            n,
            data: vec![GaussRat::zero(); n * n * n],
        }
    }

    pub fn from_vec(n: usize, data: Vec<GaussRat>) -> Result<Self, ConnectionError> {
        if data.len() != n * n * n {
            return Err(ConnectionError::Shape {
                expected: n * n * n,
                found: data.len(),
            });
        }
        Ok(Tensor3 { n, data })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &GaussRat {
        &self.data[(i * self.n + j) * self.n + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: GaussRat) {
        let n = self.n;
        self.data[(i * n + j) * n + k] = v;
    }

    pub fn as_slice(&self) -> &[GaussRat] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(GaussRat::is_zero)
    }
}

/// A rank-4 array `n × n × n × n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tensor4 {
    n: usize,
    data: Vec<GaussRat>,
}

impl Tensor4 {
    pub fn zeros(n: usize) -> Self {
        Tensor4 {
            n,
            data: vec![GaussRat::zero(); n * n * n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> &GaussRat {
        let n = self.n;
        &self.data[((a * n + b) * n + c) * n + d]
    }

    pub fn set(&mut self, a: usize, b: usize, c: usize, d: usize, v: GaussRat) {
        let n = self.n;
        self.data[((a * n + b) * n + c) * n + d] = v;
    }

    pub fn as_slice(&self) -> &[GaussRat] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(GaussRat::is_zero)
    }

    /// Indices of the first nonzero component, if any.
    pub fn first_nonzero(&self) -> Option<[usize; 4]> {
        let n = self.n;
        self.data
            .iter()
            .position(|x| !x.is_zero())
            .map(|p| [p / (n * n * n), (p / (n * n)) % n, (p / n) % n, p % n])
    }
}

/// `T(e_i, e_j) = ∇_{e_i} e_j − ∇_{e_j} e_i − [e_i, e_j]`, stored `T[i][j][k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionTensor(pub Tensor3);

/// Curvature stored as `R[l][k][i][j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvatureTensor(pub Tensor4);

/// Ricci tensor `Ric[j][k]`; not symmetric in general.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RicciTensor(pub ExactMatrix);

/// A right-invariant connection on the group of `algebra`, determined by
/// its constant Christoffel symbols in the invariant frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantConnection {
    algebra: Arc<LieAlgebra>,
    gamma: Tensor3,
}

impl InvariantConnection {
    pub fn new(algebra: Arc<LieAlgebra>, gamma: Tensor3) -> Result<Self, ConnectionError> {
        let n = algebra.dim();
        if gamma.dim() != n {
            return Err(ConnectionError::Shape {
                expected: n * n * n,
                found: gamma.as_slice().len(),
            });
        }
        Ok(InvariantConnection { algebra, gamma })
    }

    /// The bi-invariant connection with all Christoffel symbols zero.
    pub fn zero(algebra: Arc<LieAlgebra>) -> Self {
        let n = algebra.dim();
        InvariantConnection {
            algebra,
            gamma: Tensor3::zeros(n),
        }
    }

    /// `∇_x y = ½[x, y]`.
    pub fn standard(algebra: Arc<LieAlgebra>) -> Self {
        let half = GaussRat::ratio(1, 2);
        let data = algebra
            .structure_constants()
            .iter()
            .map(|c| c * &half)
            .collect();
        let n = algebra.dim();
        InvariantConnection {
            algebra,
            gamma: Tensor3 { n, data },
        }
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn gamma(&self) -> &Tensor3 {
        &self.gamma
    }

    pub fn dim(&self) -> usize {
        self.gamma.dim()
    }

    fn g(&self, i: usize, j: usize, k: usize) -> &GaussRat {
        self.gamma.get(i, j, k)
    }

    pub fn torsion(&self) -> TorsionTensor {
        let n = self.dim();
        let mut t = Tensor3::zeros(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = self.g(i, j, k) - self.g(j, i, k) - self.algebra.c(i, j, k);
                    t.set(i, j, k, v);
                }
            }
        }
        TorsionTensor(t)
    }

    /// `R[l][k][i][j] = Σ_m Γ[j][k][m]Γ[i][m][l] − Γ[i][k][m]Γ[j][m][l] − c[i][j][m]Γ[m][k][l]`.
    pub fn curvature(&self) -> CurvatureTensor {
        let n = self.dim();
        let c = |i, j, k| self.algebra.c(i, j, k);
        let mut r = Tensor4::zeros(n);
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut acc = GaussRat::zero();
                        for m in 0..n {
                            let a = self.g(j, k, m);
                            if !a.is_zero() {
                                acc += a * self.g(i, m, l);
                            }
                            let b = self.g(i, k, m);
                            if !b.is_zero() {
                                acc -= b * self.g(j, m, l);
                            }
                            let cm = c(i, j, m);
                            if !cm.is_zero() {
                                acc -= cm * self.g(m, k, l);
                            }
                        }
                        r.set(l, k, j, i, -&acc);
                        r.set(l, k, i, j, acc);
                    }
                }
            }
        }
        CurvatureTensor(r)
    }

    pub fn ricci(&self) -> RicciTensor {
        self.curvature().ricci()
    }

    /// `Γ'[i][j][k] = Γ[i][j][k] + δ[i][k]·φ[j] + δ[j][k]·φ[i]`, i.e.
    /// `∇'_X Y = ∇_X Y + φ(X)Y + φ(Y)X`.
    pub fn projective_change(&self, phi: &[GaussRat]) -> Result<Self, ConnectionError> {
        let n = self.dim();
        if phi.len() != n {
            return Err(ConnectionError::CovectorLength {
                expected: n,
                found: phi.len(),
            });
        }
        let mut gamma = self.gamma.clone();
        for i in 0..n {
            for j in 0..n {
                let mut v = gamma.get(i, j, i).clone();
                v += &phi[j];
                gamma.set(i, j, i, v);
                let mut v = gamma.get(i, j, j).clone();
                v += &phi[i];
                gamma.set(i, j, j, v);
            }
        }
        Ok(InvariantConnection {
            algebra: self.algebra.clone(),
            gamma,
        })
    }

    /// Projective Weyl tensor, in the same `W[l][k][i][j]` layout as the
    /// curvature:
    ///
    /// `W(X,Y)Z = R(X,Y)Z − γ(Y,Z)X + γ(X,Z)Y + (γ(X,Y) − γ(Y,X))Z`
    ///
    /// with `γ = (n·Ric + Ricᵀ)/(n² − 1)`. Under `∇ ↦ ∇ + φ⊗id + id⊗φ`
    /// the tensor `γ` shifts by `−P`, `P(X,Z) = (∇_Xφ)Z − φ(X)φ(Z)`, which
    /// cancels the change in `R` term by term.
    pub fn projective_weyl(&self) -> Result<CurvatureTensor, ConnectionError> {
        let n = self.dim();
        if n < 3 {
            return Err(ConnectionError::DimensionTooSmall(n));
        }
        if !self.torsion().0.is_zero() {
            return Err(ConnectionError::NonzeroTorsion);
        }
        let r = self.curvature();
        let ric = r.ricci().0;
        let denom = GaussRat::from_int((n * n - 1) as i64);
        let nn = GaussRat::from_int(n as i64);
        let gamma_p = |a: usize, b: usize| (&nn * &ric[(a, b)] + &ric[(b, a)]) / &denom;
        let mut pg = ExactMatrix::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                pg[(a, b)] = gamma_p(a, b);
            }
        }
        let mut w = r.0.clone();
        // (X, Y, Z) = (e_i, e_j, e_k); output component l.
        for i in 0..n {
            for j in 0..n {
                let skew = &pg[(i, j)] - &pg[(j, i)];
                for k in 0..n {
                    let mut add = |l: usize, v: &GaussRat| {
                        let mut cur = w.get(l, k, i, j).clone();
                        cur += v;
                        w.set(l, k, i, j, cur);
                    };
                    add(i, &-&pg[(j, k)]);
                    add(j, &pg[(i, k)]);
                    add(k, &skew);
                }
            }
        }
        Ok(CurvatureTensor(w))
    }

    pub fn is_flat(&self) -> bool {
        self.curvature().0.is_zero()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion().0.is_zero()
    }

    pub fn is_projectively_flat(&self) -> Result<bool, ConnectionError> {
        Ok(self.projective_weyl()?.0.is_zero())
    }

    /// `x ∘ y = ∇_x y` on coordinate vectors.
    pub fn product(&self, x: &[GaussRat], y: &[GaussRat]) -> Vec<GaussRat> {
        let n = self.dim();
        let mut out = vec![GaussRat::zero(); n];
        for i in (0..n).filter(|&i| !x[i].is_zero()) {
            for j in (0..n).filter(|&j| !y[j].is_zero()) {
                let xy = &x[i] * &y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let g = self.g(i, j, k);
                    if !g.is_zero() {
                        *o += &xy * g;
                    }
                }
            }
        }
        out
    }
}

impl CurvatureTensor {
    /// `Ric[j][k] = Σ_i R[i][k][i][j]`.
    pub fn ricci(&self) -> RicciTensor {
        let n = self.0.dim();
        let mut ric = ExactMatrix::zeros(n, n);
        for j in 0..n {
            for k in 0..n {
                ric[(j, k)] = (0..n).map(|i| self.0.get(i, k, i, j).clone()).sum();
            }
        }
        RicciTensor(ric)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

/// Flatness, torsion-freeness and (when defined) projective flatness of a
/// connection, computed exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConnectionFlags {
    pub flat: bool,
    pub torsion_free: bool,
    /// `None` when the Weyl tensor is undefined (torsion or `n < 3`).
    pub projectively_flat: Option<bool>,
}

impl ConnectionFlags {
    pub fn of(conn: &InvariantConnection) -> Self {
        ConnectionFlags {
            flat: conn.is_flat(),
            torsion_free: conn.is_torsion_free(),
            projectively_flat: conn.is_projectively_flat().ok(),
        }
    }
}
