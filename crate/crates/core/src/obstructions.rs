//! Obstructions to flat torsion-free invariant connections, and the
//! decision pipeline that combines them with explicit certificates.
//!
//! Two computations back the semisimple case: the first Chevalley–Eilenberg
//! cohomology `H¹(g, V)` of a representation (which vanishes for semisimple
//! `g`, so every affine embedding is conjugate into `gl(n)`), and the
//! fundamental determinant polynomial `D(p) = det[ρ(e_1)p | … | ρ(e_n)p]`,
//! which vanishes identically exactly when the linear action has no open
//! orbit.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::affine::{catalog_embedding, etale_from_lsa, AffMap, SolvableCatalog};
use crate::connections::InvariantConnection;
use crate::lie::{Builtin, LieAlgebra};
use crate::scalar::{poly_det, ExactMatrix, MultiPoly, ScalarError};
use crate::search::{find_certificate, FlatnessSystem, SearchConfig};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructionError {
    #[error("expected {expected} matrices, found {found}")]
    MatrixCount { expected: usize, found: usize },
    #[error("representation matrix {index} is not {dim}x{dim}")]
    MatrixShape { index: usize, dim: usize },
    #[error("not a representation: bracket [e{0}, e{1}] is not preserved")]
    InvalidRep(usize, usize),
    #[error("representation space has dimension {vdim}, algebra has dimension {n}")]
    DimensionMismatch { n: usize, vdim: usize },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A finite-dimensional linear representation `ρ: g → gl(V)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearRep {
    algebra: Arc<LieAlgebra>,
    vdim: usize,
    rho: Vec<ExactMatrix>,
}

impl LinearRep {
    /// Checks `[ρ_i, ρ_j] = Σ_k c[i][j][k] ρ_k` exactly.
    pub fn new(algebra: Arc<LieAlgebra>, rho: Vec<ExactMatrix>) -> Result<Self, ObstructionError> {
        let n = algebra.dim();
        if rho.len() != n {
            return Err(ObstructionError::MatrixCount {
                expected: n,
                found: rho.len(),
            });
        }
        let vdim = rho[0].rows();
        for (index, m) in rho.iter().enumerate() {
            if m.rows() != vdim || m.cols() != vdim {
                return Err(ObstructionError::MatrixShape { index, dim: vdim });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let lhs = rho[i].commutator(&rho[j]);
                let rhs = (0..n).fold(ExactMatrix::zeros(vdim, vdim), |acc, k| {
                    acc.add(&rho[k].scale(algebra.c(i, j, k)))
                });
                if lhs != rhs {
                    return Err(ObstructionError::InvalidRep(i, j));
                }
            }
        }
        Ok(LinearRep { algebra, vdim, rho })
    }

    pub fn adjoint(algebra: Arc<LieAlgebra>) -> Self {
        let rho = (0..algebra.dim())
            .map(|i| algebra.ad_matrix(i).expect("index in range"))
            .collect();
        LinearRep::new(algebra, rho).expect("the adjoint action is a representation")
    }

    /// `ρ ≡ 0` on `ℂ^vdim`.
    pub fn trivial(algebra: Arc<LieAlgebra>, vdim: usize) -> Self {
        let rho = vec![ExactMatrix::zeros(vdim, vdim); algebra.dim()];
        LinearRep { algebra, vdim, rho }
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn vdim(&self) -> usize {
        self.vdim
    }

    pub fn matrices(&self) -> &[ExactMatrix] {
        &self.rho
    }

    pub fn is_trace_free(&self) -> bool {
        self.rho.iter().all(|m| m.trace().is_zero())
    }
}

/// Dimension of `H¹(g, V) = Z¹ / B¹`.
///
/// A cochain `f` is stored as the `n·vdim` coordinates of `f(e_1), …, f(e_n)`.
/// `Z¹` is the nullspace of the cocycle conditions
/// `f([e_i, e_j]) − ρ_i f(e_j) + ρ_j f(e_i) = 0`, and `B¹` is the image of
/// `v ↦ (ρ_i v)_i`.
pub fn h1_dim(rep: &LinearRep) -> usize {
    let n = rep.algebra.dim();
    let v = rep.vdim;
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut cocycle = ExactMatrix::zeros(pairs.len() * v, n * v);
    for (p, &(i, j)) in pairs.iter().enumerate() {
        for row in 0..v {
            let r = p * v + row;
            for k in 0..n {
                let c = rep.algebra.c(i, j, k);
                if !c.is_zero() {
                    cocycle[(r, k * v + row)] += c;
                }
            }
            for col in 0..v {
                cocycle[(r, j * v + col)] -= &rep.rho[i][(row, col)];
                cocycle[(r, i * v + col)] += &rep.rho[j][(row, col)];
            }
        }
    }
    let z1 = n * v - cocycle.rank();
    let mut coboundary = ExactMatrix::zeros(n * v, v);
    for (i, m) in rep.rho.iter().enumerate() {
        for row in 0..v {
            for col in 0..v {
                coboundary[(i * v + row, col)] = m[(row, col)].clone();
            }
        }
    }
    let b1 = coboundary.rank();
    z1 - b1
}

/// The fundamental determinant polynomial and whether it is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetPolynomial {
    pub poly: MultiPoly,
    pub has_open_orbit: bool,
}

/// `D(p) = det[ρ(e_1)p | … | ρ(e_n)p]` as a polynomial in `p_1, …, p_n`.
pub fn fundamental_det_poly(rep: &LinearRep) -> Result<DetPolynomial, ObstructionError> {
    let n = rep.algebra.dim();
    if rep.vdim != n {
        return Err(ObstructionError::DimensionMismatch { n, vdim: rep.vdim });
    }
    // entry (row, col) = (ρ(e_col) p)_row = Σ_k ρ_col[row][k] p_k
    let mut m = Vec::with_capacity(n);
    for row in 0..n {
        let mut r = Vec::with_capacity(n);
        for col in 0..n {
            r.push(MultiPoly::linear(rep.rho[col].row(row))?);
        }
        m.push(r);
    }
    let poly = poly_det(&m)?;
    Ok(DetPolynomial {
        has_open_orbit: !poly.is_zero(),
        poly,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "YES",
            Verdict::No => "NO",
            Verdict::Unknown => "UNKNOWN",
        })
    }
}

/// How a YES certificate was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateSource {
    ZeroConnection,
    CatalogEmbedding,
    Search { start_index: usize },
}

/// An exactly verified flat torsion-free connection and its étale
/// affine representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub source: CertificateSource,
    pub connection: InvariantConnection,
    pub embedding: AffMap,
}

/// The four exact checks every certificate must pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateChecks {
    pub flat: bool,
    pub torsion_free: bool,
    pub homomorphism: bool,
    pub etale: bool,
}

impl CertificateChecks {
    pub fn all(&self) -> bool {
        self.flat && self.torsion_free && self.homomorphism && self.etale
    }
}

impl Certificate {
    /// Re-runs every check from scratch, including that the embedding
    /// induces exactly this connection.
    pub fn verify(&self) -> CertificateChecks {
        let hom = self.embedding.check_homomorphism();
        let etale = hom.is_homomorphism()
            && self.embedding.is_etale() == Ok(true)
            && self.embedding.induced_connection().as_ref() == Ok(&self.connection);
        CertificateChecks {
            flat: self.connection.is_flat(),
            torsion_free: self.connection.is_torsion_free(),
            homomorphism: hom.is_homomorphism() && hom.injective,
            etale,
        }
    }
}

/// Computed evidence attached to a NO verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obstruction {
    pub killing_rank: usize,
    pub h1_adjoint: usize,
    pub adjoint_det_poly: MultiPoly,
    pub adjoint_trace_free: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionReport {
    pub verdict: Verdict,
    pub certificate: Option<Certificate>,
    pub obstruction: Option<Obstruction>,
    pub notes: Vec<String>,
}

fn certified(cert: Certificate, mut notes: Vec<String>) -> DecisionReport {
    let checks = cert.verify();
    if checks.all() {
        notes.push(
            "certificate re-verified exactly: flat, torsion-free, homomorphism, étale".into(),
        );
        DecisionReport {
            verdict: Verdict::Yes,
            certificate: Some(cert),
            obstruction: None,
            notes,
        }
    } else {
        notes.push(format!(
            "certificate failed exact re-verification: {checks:?}"
        ));
        DecisionReport {
            verdict: Verdict::Unknown,
            certificate: None,
            obstruction: None,
            notes,
        }
    }
}

fn from_connection(
    source: CertificateSource,
    connection: InvariantConnection,
    notes: Vec<String>,
) -> DecisionReport {
    match etale_from_lsa(&connection) {
        Ok(embedding) => certified(
            Certificate {
                source,
                connection,
                embedding,
            },
            notes,
        ),
        Err(e) => {
            let mut notes = notes;
            notes.push(format!("no étale embedding for candidate connection: {e}"));
            DecisionReport {
                verdict: Verdict::Unknown,
                certificate: None,
                obstruction: None,
                notes,
            }
        }
    }
}

/// Decides whether `g` admits a flat torsion-free invariant connection.
///
/// 1. abelian: the zero connection;
/// 2. exactly the heis3 or sol3 structure constants: the explicit embedding;
/// 3. Killing form nondegenerate: NO, by the semisimple obstruction, with
///    `H¹(g, g)` and the adjoint determinant polynomial attached;
/// 4. otherwise: numerical search, accepted only through exact verification.
pub fn decide_existence(g: &LieAlgebra, budget: &SearchConfig) -> DecisionReport {
    let algebra = Arc::new(g.clone());
    if g.is_abelian() {
        return from_connection(
            CertificateSource::ZeroConnection,
            InvariantConnection::zero(algebra),
            vec!["abelian: the zero connection is flat and its torsion −c vanishes".into()],
        );
    }
    for (builtin, kind) in [
        (Builtin::Heis3, SolvableCatalog::Heis),
        (Builtin::Sol3, SolvableCatalog::Sol),
    ] {
        if g.same_constants(&builtin.algebra()) {
            let embedding = catalog_embedding(kind);
            let embedding =
                AffMap::new(algebra.clone(), embedding.images().to_vec()).expect("same dimension");
            let notes = vec![format!(
                "structure constants equal {builtin}: explicit étale embedding e1 ↦ (A, f1), e2 ↦ (0, f2), e3 ↦ (0, f3)"
            )];
            return match embedding.induced_connection() {
                Ok(connection) => certified(
                    Certificate {
                        source: CertificateSource::CatalogEmbedding,
                        connection,
                        embedding,
                    },
                    notes,
                ),
                Err(e) => DecisionReport {
                    verdict: Verdict::Unknown,
                    certificate: None,
                    obstruction: None,
                    notes: vec![format!("catalog embedding rejected: {e}")],
                },
            };
        }
    }
    let profile = g.structural_profile();
    if profile.semisimple {
        let adjoint = LinearRep::adjoint(algebra);
        let h1 = h1_dim(&adjoint);
        let det = fundamental_det_poly(&adjoint).expect("adjoint has dim g");
        let notes = vec![
            format!("Killing form nondegenerate (rank {}): semisimple", profile.killing_rank),
            "NO by theorem: for semisimple g, H¹ vanishes (Whitehead), so any affine embedding is conjugate into gl(n), and a unimodular linear action has no open orbit".into(),
            format!("computed evidence: dim H¹(g, ad) = {h1}; adjoint determinant polynomial D = {}", det.poly),
            "conjugation into gl(n) is cited, not recomputed".into(),
        ];
        return DecisionReport {
            verdict: Verdict::No,
            certificate: None,
            obstruction: Some(Obstruction {
                killing_rank: profile.killing_rank,
                h1_adjoint: h1,
                adjoint_det_poly: det.poly,
                adjoint_trace_free: adjoint.is_trace_free(),
            }),
            notes,
        };
    }
    let sys = FlatnessSystem::assemble(algebra);
    let outcome = find_certificate(&sys, budget);
    let mut notes = vec![format!(
        "search: {} of {} starts converged (seed {})",
        outcome.converged, outcome.starts, budget.seed
    )];
    match outcome.certificate {
        Some((start_index, connection)) => {
            notes.push(format!(
                "start {start_index} rationalized to an exact connection"
            ));
            from_connection(CertificateSource::Search { start_index }, connection, notes)
        }
        None => {
            notes.push("no exactly verified certificate within budget".into());
            DecisionReport {
                verdict: Verdict::Unknown,
                certificate: None,
                obstruction: None,
                notes,
            }
        }
    }
}
