//! The affine Lie algebra `aff(n) = gl(n) ⋉ ℂⁿ`, étale affine
//! representations, and their correspondence with flat torsion-free
//! invariant connections (left-symmetric structures).

use std::sync::Arc;

use thiserror::Error;

use crate::connections::{InvariantConnection, Tensor3};
use crate::lie::{Builtin, LieAlgebra};
use crate::scalar::{ExactMatrix, GaussRat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AffineError {
    #[error("affine elements live in different dimensions ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("map has {found} images, algebra has dimension {expected}")]
    ImageCount { expected: usize, found: usize },
    #[error("map is not a Lie algebra homomorphism (fails on [e{0}, e{1}])")]
    NotHomomorphism(usize, usize),
    #[error("translation parts are linearly dependent; map is not étale")]
    NotEtale,
    #[error("connection is not flat and torsion-free")]
    NotFlatTorsionFree,
}

/// An element `(A, v)` of `gl(n) ⋉ ℂⁿ`, acting by `p ↦ A p + v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffElement {
    pub matrix: ExactMatrix,
    pub translation: Vec<GaussRat>,
}

impl AffElement {
    pub fn new(matrix: ExactMatrix, translation: Vec<GaussRat>) -> Result<Self, AffineError> {
        if !matrix.is_square() || matrix.rows() != translation.len() {
            return Err(AffineError::DimensionMismatch(
                matrix.rows(),
                translation.len(),
            ));
        }
        Ok(AffElement {
            matrix,
            translation,
        })
    }

    pub fn zero(n: usize) -> Self {
        AffElement {
            matrix: ExactMatrix::zeros(n, n),
            translation: vec![GaussRat::zero(); n],
        }
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        AffElement {
            matrix: self.matrix.add(&other.matrix),
            translation: self
                .translation
                .iter()
                .zip(&other.translation)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, s: &GaussRat) -> Self {
        AffElement {
            matrix: self.matrix.scale(s),
            translation: self.translation.iter().map(|x| x * s).collect(),
        }
    }

    /// `[(A, v), (B, w)] = (AB − BA, Aw − Bv)`.
    pub fn bracket(&self, other: &Self) -> Result<Self, AffineError> {
        if self.dim() != other.dim() {
            return Err(AffineError::DimensionMismatch(self.dim(), other.dim()));
        }
        let aw = self.matrix.mul_vec(&other.translation);
        let bv = other.matrix.mul_vec(&self.translation);
        Ok(AffElement {
            matrix: self.matrix.commutator(&other.matrix),
            translation: aw.iter().zip(&bv).map(|(a, b)| a - b).collect(),
        })
    }
}

/// Outcome of checking the bracket relations of an [`AffMap`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomomorphismVerdict {
    /// First pair `(i, j)`, `i < j`, where the bracket is not preserved.
    pub counterexample: Option<(usize, usize)>,
    /// The images span an `n`-dimensional subspace of `aff(m)`.
    pub injective: bool,
}

impl HomomorphismVerdict {
    pub fn is_homomorphism(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// A linear map `g → aff(m)` given by the images of the basis vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffMap {
    algebra: Arc<LieAlgebra>,
    images: Vec<AffElement>,
}

impl AffMap {
    pub fn new(algebra: Arc<LieAlgebra>, images: Vec<AffElement>) -> Result<Self, AffineError> {
        if images.len() != algebra.dim() {
            return Err(AffineError::ImageCount {
                expected: algebra.dim(),
                found: images.len(),
            });
        }
        if let Some(first) = images.first() {
            if let Some(bad) = images.iter().find(|x| x.dim() != first.dim()) {
                return Err(AffineError::DimensionMismatch(first.dim(), bad.dim()));
            }
        }
        Ok(AffMap { algebra, images })
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn images(&self) -> &[AffElement] {
        &self.images
    }

    /// Dimension of the affine space acted on.
    pub fn ambient_dim(&self) -> usize {
        self.images.first().map_or(0, AffElement::dim)
    }

    pub fn check_homomorphism(&self) -> HomomorphismVerdict {
        let n = self.algebra.dim();
        let m = self.ambient_dim();
        let mut counterexample = None;
        'outer: for i in 0..n {
            for j in i + 1..n {
                let lhs = self.images[i]
                    .bracket(&self.images[j])
                    .expect("uniform dimensions checked on construction");
                let rhs = (0..n)
                    .filter(|&k| !self.algebra.c(i, j, k).is_zero())
                    .fold(AffElement::zero(m), |acc, k| {
                        acc.add(&self.images[k].scale(self.algebra.c(i, j, k)))
                    });
                if lhs != rhs {
                    counterexample = Some((i, j));
                    break 'outer;
                }
            }
        }
        // Each image flattened to a row of length m² + m.
        let rows = self
            .images
            .iter()
            .map(|x| {
                x.matrix
                    .entries()
                    .iter()
                    .chain(&x.translation)
                    .cloned()
                    .collect()
            })
            .collect();
        let injective = ExactMatrix::from_rows(rows)
            .map(|flat| flat.rank() == n)
            .unwrap_or(false);
        HomomorphismVerdict {
            counterexample,
            injective,
        }
    }

    /// Matrix whose columns are the translation parts.
    pub fn translation_matrix(&self) -> ExactMatrix {
        let cols: Vec<Vec<GaussRat>> = self.images.iter().map(|x| x.translation.clone()).collect();
        ExactMatrix::from_columns(&cols).expect("uniform translation length")
    }

    /// True when the translation parts form a basis of `ℂⁿ`: the image meets
    /// the isotropy `gl(n)` trivially and the orbit of the origin is open.
    pub fn is_etale(&self) -> Result<bool, AffineError> {
        if let Some((i, j)) = self.check_homomorphism().counterexample {
            return Err(AffineError::NotHomomorphism(i, j));
        }
        Ok(self.etale_unchecked())
    }

    fn etale_unchecked(&self) -> bool {
        self.ambient_dim() == self.algebra.dim()
            && self.translation_matrix().rank() == self.algebra.dim()
    }

    /// The connection pulled back from the standard flat connection of `ℂⁿ`
    /// along the orbit map: `Γ[i][j][·] = V⁻¹ A_i v_j`, `V = [v_1 … v_n]`.
    pub fn induced_connection(&self) -> Result<InvariantConnection, AffineError> {
        if !self.is_etale()? {
            return Err(AffineError::NotEtale);
        }
        let n = self.algebra.dim();
        let v_inv = self
            .translation_matrix()
            .inverse()
            .map_err(|_| AffineError::NotEtale)?;
        let mut gamma = Tensor3::zeros(n);
        for i in 0..n {
            let li = v_inv
                .mul(&self.images[i].matrix)
                .mul(&self.translation_matrix());
            for j in 0..n {
                for k in 0..n {
                    gamma.set(i, j, k, li[(k, j)].clone());
                }
            }
        }
        Ok(InvariantConnection::new(self.algebra.clone(), gamma).expect("shape matches algebra"))
    }
}

/// Which of the explicit solvable embeddings to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolvableCatalog {
    Heis,
    Sol,
}

/// `e_1 ↦ (A, f_1)`, `e_2 ↦ (0, f_2)`, `e_3 ↦ (0, f_3)` with
/// `A f_2 = f_3, A f_3 = 0` (heis) or `A f_2 = f_2, A f_3 = −f_3` (sol).
/// `A f_1` is set to zero.
pub fn catalog_embedding(kind: SolvableCatalog) -> AffMap {
    let (algebra, a) = match kind {
        SolvableCatalog::Heis => {
            let mut a = ExactMatrix::zeros(3, 3);
            a[(2, 1)] = GaussRat::one();
            (Builtin::Heis3.algebra(), a)
        }
        SolvableCatalog::Sol => (
            Builtin::Sol3.algebra(),
            ExactMatrix::diagonal(&[GaussRat::zero(), GaussRat::one(), GaussRat::from_int(-1)]),
        ),
    };
    let f = ExactMatrix::identity(3).to_rows();
    let images = vec![
        AffElement::new(a, f[0].clone()).expect("3x3"),
        AffElement::new(ExactMatrix::zeros(3, 3), f[1].clone()).expect("3x3"),
        AffElement::new(ExactMatrix::zeros(3, 3), f[2].clone()).expect("3x3"),
    ];
    AffMap::new(Arc::new(algebra), images).expect("three images")
}

/// Flat torsion-free connection of an étale affine representation.
pub fn lsa_from_etale(m: &AffMap) -> Result<InvariantConnection, AffineError> {
    m.induced_connection()
}

/// Étale representation `e_i ↦ (L_i, e_i)` of a flat torsion-free
/// connection, where `L_i` is the matrix of `∇_{e_i}`.
pub fn etale_from_lsa(conn: &InvariantConnection) -> Result<AffMap, AffineError> {
    if !(conn.is_flat() && conn.is_torsion_free()) {
        return Err(AffineError::NotFlatTorsionFree);
    }
    let n = conn.dim();
    let basis = ExactMatrix::identity(n).to_rows();
    let images = (0..n)
        .map(|i| {
            let mut l = ExactMatrix::zeros(n, n);
            for j in 0..n {
                for k in 0..n {
                    l[(k, j)] = conn.gamma().get(i, j, k).clone();
                }
            }
            AffElement::new(l, basis[i].clone()).expect("n x n")
        })
        .collect();
    AffMap::new(conn.algebra().clone(), images)
}
