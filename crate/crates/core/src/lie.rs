//! Lie algebras given by structure constants, their classical invariants,
//! and the catalog of three-dimensional unimodular algebras.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{ExactMatrix, GaussRat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("dimension must be at least 1")]
    EmptyAlgebra,
    #[error("expected {expected} basis names, found {found}")]
    BasisNames { expected: usize, found: usize },
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("bracket [{left}, {right}] has {found} coefficients, expected {expected}")]
    ResultLength {
        left: usize,
        right: usize,
        expected: usize,
        found: usize,
    },
    #[error("bracket entries for ({left}, {right}) are not antisymmetric")]
    InconsistentEntry { left: usize, right: usize },
    #[error("Jacobi identity fails at (i, j, k, l) = ({i}, {j}, {k}, {l})")]
    JacobiViolation {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
    },
    #[error("unknown builtin algebra {0:?}")]
    UnknownBuiltin(String),
}

/// One bracket relation `[e_left, e_right] = Σ_k result[k]·e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketEntry {
    pub left: usize,
    pub right: usize,
    pub result: Vec<GaussRat>,
}

impl BracketEntry {
    pub fn new(left: usize, right: usize, result: Vec<GaussRat>) -> Self {
        BracketEntry {
            left,
            right,
            result,
        }
    }
}

/// A validated Lie algebra: `[e_i, e_j] = Σ_k c[i][j][k] e_k`, with
/// antisymmetry and the Jacobi identity checked exactly.
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    basis_names: Vec<String>,
    c: Vec<GaussRat>,
}

impl LieAlgebra {
    /// Builds an algebra from its nonzero bracket relations. Entries for
    /// `(j, i)` are folded into `(i, j)` by antisymmetry; unlisted pairs
    /// bracket to zero.
    pub fn from_structure_constants(
        name: impl Into<String>,
        basis_names: Vec<String>,
        entries: &[BracketEntry],
    ) -> Result<Self, LieError> {
        let n = basis_names.len();
        if n == 0 {
            return Err(LieError::EmptyAlgebra);
        }
        let mut c = vec![GaussRat::zero(); n * n * n];
        let mut seen = vec![false; n * n];
        for e in entries {
            for index in [e.left, e.right] {
                if index >= n {
                    return Err(LieError::IndexOutOfRange { index, dim: n });
                }
            }
            if e.result.len() != n {
                return Err(LieError::ResultLength {
                    left: e.left,
                    right: e.right,
                    expected: n,
                    found: e.result.len(),
                });
            }
            let inconsistent = LieError::InconsistentEntry {
                left: e.left.min(e.right),
                right: e.left.max(e.right),
            };
            if e.left == e.right {
                if e.result.iter().any(|x| !x.is_zero()) {
                    return Err(inconsistent);
                }
                continue;
            }
            let (i, j, sign) = if e.left < e.right {
                (e.left, e.right, GaussRat::one())
            } else {
                (e.right, e.left, GaussRat::from_int(-1))
            };
            let values: Vec<GaussRat> = e.result.iter().map(|x| x * &sign).collect();
            if seen[i * n + j] {
                if (0..n).any(|k| c[(i * n + j) * n + k] != values[k]) {
                    return Err(inconsistent);
                }
                continue;
            }
            seen[i * n + j] = true;
            for (k, v) in values.into_iter().enumerate() {
                c[(j * n + i) * n + k] = -&v;
                c[(i * n + j) * n + k] = v;
            }
        }
        LieAlgebra::from_tensor(name, basis_names, c)
    }

    /// Builds an algebra from a full `n³` structure-constant array in
    /// `c[i][j][k]` order.
    pub fn from_tensor(
        name: impl Into<String>,
        basis_names: Vec<String>,
        c: Vec<GaussRat>,
    ) -> Result<Self, LieError> {
        let n = basis_names.len();
        if n == 0 {
            return Err(LieError::EmptyAlgebra);
        }
        if c.len() != n * n * n {
            return Err(LieError::ResultLength {
                left: 0,
                right: 0,
                expected: n * n * n,
                found: c.len(),
            });
        }
        let g = LieAlgebra {
            name: name.into(),
            basis_names,
            c,
        };
        g.check_antisymmetry()?;
        g.check_jacobi()?;
        Ok(g)
    }

    /// Abelian algebra of dimension `n`.
    pub fn abelian(n: usize) -> Result<Self, LieError> {
        let names = (1..=n).map(|i| format!("e{i}")).collect();
        LieAlgebra::from_structure_constants(format!("abelian{n}"), names, &[])
    }

    fn check_antisymmetry(&self) -> Result<(), LieError> {
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    if self.c(i, j, k) != &-self.c(j, i, k) {
                        return Err(LieError::InconsistentEntry { left: i, right: j });
                    }
                }
            }
        }
        Ok(())
    }

    /// Jacobi in coordinates:
    /// `Σ_m c[i][j][m]c[m][k][l] + c[j][k][m]c[m][i][l] + c[k][i][m]c[m][j][l] = 0`.
    fn check_jacobi(&self) -> Result<(), LieError> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for l in 0..n {
                        let s: GaussRat = (0..n)
                            .map(|m| {
                                self.c(i, j, m) * self.c(m, k, l)
                                    + self.c(j, k, m) * self.c(m, i, l)
                                    + self.c(k, i, m) * self.c(m, j, l)
                            })
                            .sum();
                        if !s.is_zero() {
                            return Err(LieError::JacobiViolation { i, j, k, l });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    /// Coefficient of `e_k` in `[e_i, e_j]`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> &GaussRat {
        let n = self.dim();
        &self.c[(i * n + j) * n + k]
    }

    /// The full structure-constant array in `c[i][j][k]` order.
    pub fn structure_constants(&self) -> &[GaussRat] {
        &self.c
    }

    /// Nonzero brackets `[e_i, e_j]` with `i < j`.
    pub fn bracket_entries(&self) -> Vec<BracketEntry> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let result: Vec<GaussRat> = (0..n).map(|k| self.c(i, j, k).clone()).collect();
                if result.iter().any(|x| !x.is_zero()) {
                    out.push(BracketEntry::new(i, j, result));
                }
            }
        }
        out
    }

    /// Same structure constants, regardless of names.
    pub fn same_constants(&self, other: &LieAlgebra) -> bool {
        self.c == other.c
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().all(GaussRat::is_zero)
    }

    /// Bracket of two coordinate vectors.
    pub fn bracket(&self, x: &[GaussRat], y: &[GaussRat]) -> Vec<GaussRat> {
        let n = self.dim();
        let mut out = vec![GaussRat::zero(); n];
        for i in (0..n).filter(|&i| !x[i].is_zero()) {
            for j in (0..n).filter(|&j| !y[j].is_zero()) {
                let xy = &x[i] * &y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let ck = self.c(i, j, k);
                    if !ck.is_zero() {
                        *o += &xy * ck;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad e_i`: column `j` holds the coordinates of `[e_i, e_j]`.
    pub fn ad_matrix(&self, i: usize) -> Result<ExactMatrix, LieError> {
        let n = self.dim();
        if i >= n {
            return Err(LieError::IndexOutOfRange { index: i, dim: n });
        }
        let mut m = ExactMatrix::zeros(n, n);
        for j in 0..n {
            for k in 0..n {
                m[(k, j)] = self.c(i, j, k).clone();
            }
        }
        Ok(m)
    }

    fn ad_matrices(&self) -> Vec<ExactMatrix> {
        (0..self.dim())
            .map(|i| self.ad_matrix(i).expect("index in range"))
            .collect()
    }

    /// `K[i][j] = trace(ad e_i · ad e_j)`.
    pub fn killing_form(&self) -> ExactMatrix {
        let n = self.dim();
        let ads = self.ad_matrices();
        let mut k = ExactMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let t = ads[i].mul(&ads[j]).trace();
                k[(j, i)] = t.clone();
                k[(i, j)] = t;
            }
        }
        k
    }

    /// Basis of `[A, B]` for subspaces given by spanning vectors.
    fn bracket_span(&self, a: &[Vec<GaussRat>], b: &[Vec<GaussRat>]) -> Vec<Vec<GaussRat>> {
        let mut gens = Vec::new();
        for x in a {
            for y in b {
                gens.push(self.bracket(x, y));
            }
        }
        span_basis(self.dim(), gens)
    }

    fn full_basis(&self) -> Vec<Vec<GaussRat>> {
        ExactMatrix::identity(self.dim()).to_rows()
    }

    /// Dimensions of `g ⊇ [g,g] ⊇ ...`, stopping once the series stabilizes.
    pub fn derived_series_dims(&self) -> Vec<usize> {
        let mut current = self.full_basis();
        let mut dims = vec![current.len()];
        loop {
            let next = self.bracket_span(&current, &current);
            if next.len() == current.len() {
                return dims;
            }
            dims.push(next.len());
            current = next;
        }
    }

    /// Dimensions of `g ⊇ [g,g] ⊇ [g,[g,g]] ⊇ ...`, stopping at stabilization.
    pub fn lower_central_dims(&self) -> Vec<usize> {
        let full = self.full_basis();
        let mut current = full.clone();
        let mut dims = vec![current.len()];
        loop {
            let next = self.bracket_span(&full, &current);
            if next.len() == current.len() {
                return dims;
            }
            dims.push(next.len());
            current = next;
        }
    }

    pub fn structural_profile(&self) -> StructuralProfile {
        let n = self.dim();
        let derived = self.derived_series_dims();
        let lower = self.lower_central_dims();
        let killing_rank = self.killing_form().rank();
        let unimodular = self.ad_matrices().iter().all(|a| a.trace().is_zero());
        StructuralProfile {
            abelian: self.is_abelian(),
            solvable: derived.last() == Some(&0),
            nilpotent: lower.last() == Some(&0),
            unimodular,
            semisimple: killing_rank == n,
            killing_rank,
            derived_series_dims: derived,
            lower_central_dims: lower,
        }
    }
}

/// Row basis (in reduced echelon form) of the span of `vectors`.
pub(crate) fn span_basis(n: usize, vectors: Vec<Vec<GaussRat>>) -> Vec<Vec<GaussRat>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = ExactMatrix::from_rows(vectors).expect("uniform vector length");
    debug_assert_eq!(m.cols(), n);
    let r = m.rref();
    (0..r.pivots.len())
        .map(|i| r.matrix.row(i).to_vec())
        .collect()
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LieAlgebra")
            .field("name", &self.name)
            .field("basis", &self.basis_names)
            .field("brackets", &self.bracket_entries())
            .finish()
    }
}

impl fmt::Display for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {})", self.name, self.dim())?;
        for e in self.bracket_entries() {
            let terms: Vec<String> = e
                .result
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(k, x)| {
                    if x.is_one() {
                        self.basis_names[k].clone()
                    } else {
                        format!("({x}){}", self.basis_names[k])
                    }
                })
                .collect();
            write!(
                f,
                "; [{}, {}] = {}",
                self.basis_names[e.left],
                self.basis_names[e.right],
                terms.join(" + ")
            )?;
        }
        Ok(())
    }
}

/// Classical structural data of a Lie algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralProfile {
    pub abelian: bool,
    pub solvable: bool,
    pub nilpotent: bool,
    pub unimodular: bool,
    /// Killing form nondegenerate.
    pub semisimple: bool,
    pub killing_rank: usize,
    pub derived_series_dims: Vec<usize>,
    pub lower_central_dims: Vec<usize>,
}

/// The three-dimensional unimodular complex Lie algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Builtin {
    Abelian3,
    Heis3,
    Sol3,
    Sl2,
}

impl Builtin {
    pub const ALL: [Builtin; 4] = [
        Builtin::Abelian3,
        Builtin::Heis3,
        Builtin::Sol3,
        Builtin::Sl2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Abelian3 => "abelian3",
            Builtin::Heis3 => "heis3",
            Builtin::Sol3 => "sol3",
            Builtin::Sl2 => "sl2",
        }
    }

    pub fn algebra(self) -> LieAlgebra {
        let e = |ks: [i64; 3]| {
            ks.iter()
                .map(|&k| GaussRat::from_int(k))
                .collect::<Vec<_>>()
        };
        let names = |ns: [&str; 3]| ns.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        let (basis, entries) = match self {
            Builtin::Abelian3 => (names(["e1", "e2", "e3"]), vec![]),
            Builtin::Heis3 => (
                names(["e1", "e2", "e3"]),
                vec![BracketEntry::new(0, 1, e([0, 0, 1]))],
            ),
            Builtin::Sol3 => (
                names(["e1", "e2", "e3"]),
                vec![
                    BracketEntry::new(0, 1, e([0, 1, 0])),
                    BracketEntry::new(0, 2, e([0, 0, -1])),
                ],
            ),
            // Chevalley basis (h, e, f).
            Builtin::Sl2 => (
                names(["h", "e", "f"]),
                vec![
                    BracketEntry::new(0, 1, e([0, 2, 0])),
                    BracketEntry::new(0, 2, e([0, 0, -2])),
                    BracketEntry::new(1, 2, e([1, 0, 0])),
                ],
            ),
        };
        LieAlgebra::from_structure_constants(self.name(), basis, &entries)
            .expect("catalog algebras satisfy Jacobi")
    }
}

impl FromStr for Builtin {
    type Err = LieError;

    fn from_str(s: &str) -> Result<Self, LieError> {
        Builtin::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| LieError::UnknownBuiltin(s.to_string()))
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn builtin(name: &str) -> Result<LieAlgebra, LieError> {
    Ok(name.parse::<Builtin>()?.algebra())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<GaussRat> {
        v.iter().map(|&x| GaussRat::from_int(x)).collect()
    }

    fn names3() -> Vec<String> {
        vec!["e1".into(), "e2".into(), "e3".into()]
    }

    #[test]
    fn heis_and_sol_relations_are_valid() {
        let heis = LieAlgebra::from_structure_constants(
            "heis",
            names3(),
            &[BracketEntry::new(0, 1, ints(&[0, 0, 1]))],
        )
        .unwrap();
        assert!(heis.same_constants(&Builtin::Heis3.algebra()));
        assert_eq!(heis.c(1, 0, 2), &GaussRat::from_int(-1));

        let sol = LieAlgebra::from_structure_constants(
            "sol",
            names3(),
            &[
                BracketEntry::new(0, 1, ints(&[0, 1, 0])),
                BracketEntry::new(0, 2, ints(&[0, 0, -1])),
            ],
        )
        .unwrap();
        assert!(sol.same_constants(&Builtin::Sol3.algebra()));
    }

    #[test]
    fn cyclic_bracket_violates_jacobi() {
        // [e1,e2]=e1, [e2,e3]=e2, [e3,e1]=e3: the (1,2,3) Jacobi sum is
        // [[e1,e2],e3] + [[e2,e3],e1] + [[e3,e1],e2] = [e1,e3] + [e2,e1] + [e3,e2]
        // = -e3 - e1 - e2 != 0.
        let err = LieAlgebra::from_structure_constants(
            "bad",
            names3(),
            &[
                BracketEntry::new(0, 1, ints(&[1, 0, 0])),
                BracketEntry::new(1, 2, ints(&[0, 1, 0])),
                BracketEntry::new(2, 0, ints(&[0, 0, 1])),
            ],
        )
        .unwrap_err();
        assert!(matches!(
            err,
            LieError::JacobiViolation {
                i: 0,
                j: 1,
                k: 2,
                ..
            }
        ));
    }

    #[test]
    fn reversed_entries_fold_by_antisymmetry() {
        let g = LieAlgebra::from_structure_constants(
            "heis",
            names3(),
            &[
                BracketEntry::new(1, 0, ints(&[0, 0, -1])),
                BracketEntry::new(0, 1, ints(&[0, 0, 1])),
            ],
        )
        .unwrap();
        assert!(g.same_constants(&Builtin::Heis3.algebra()));
        let err = LieAlgebra::from_structure_constants(
            "bad",
            names3(),
            &[
                BracketEntry::new(0, 1, ints(&[0, 0, 1])),
                BracketEntry::new(1, 0, ints(&[0, 0, 1])),
            ],
        )
        .unwrap_err();
        assert_eq!(err, LieError::InconsistentEntry { left: 0, right: 1 });
        let err = LieAlgebra::from_structure_constants(
            "bad",
            names3(),
            &[BracketEntry::new(1, 1, ints(&[1, 0, 0]))],
        )
        .unwrap_err();
        assert_eq!(err, LieError::InconsistentEntry { left: 1, right: 1 });
    }

    #[test]
    fn malformed_entries() {
        assert!(matches!(
            LieAlgebra::from_structure_constants(
                "x",
                names3(),
                &[BracketEntry::new(0, 3, ints(&[0, 0, 0]))]
            ),
            Err(LieError::IndexOutOfRange { index: 3, dim: 3 })
        ));
        assert!(matches!(
            LieAlgebra::from_structure_constants(
                "x",
                names3(),
                &[BracketEntry::new(0, 1, ints(&[0, 0]))]
            ),
            Err(LieError::ResultLength { .. })
        ));
        assert_eq!(
            LieAlgebra::from_structure_constants("x", vec![], &[]),
            Err(LieError::EmptyAlgebra)
        );
        assert!(matches!(builtin("so3"), Err(LieError::UnknownBuiltin(_))));
    }

    #[test]
    fn ad_matrices() {
        let heis = Builtin::Heis3.algebra();
        let mut expected = ExactMatrix::zeros(3, 3);
        expected[(2, 1)] = GaussRat::one();
        assert_eq!(heis.ad_matrix(0).unwrap(), expected);
        assert!(heis.ad_matrix(3).is_err());

        let abelian = Builtin::Abelian3.algebra();
        for i in 0..3 {
            assert!(abelian.ad_matrix(i).unwrap().is_zero());
        }

        let sl2 = Builtin::Sl2.algebra();
        assert_eq!(
            sl2.ad_matrix(0).unwrap(),
            ExactMatrix::diagonal(&ints(&[0, 2, -2]))
        );
    }

    /// Killing form from explicit brackets, independent of `ad_matrix`:
    /// `K(x, y) = Σ_k coefficient of e_k in [x, [y, e_k]]`.
    fn killing_oracle(g: &LieAlgebra) -> ExactMatrix {
        let n = g.dim();
        let basis = ExactMatrix::identity(n).to_rows();
        let mut k = ExactMatrix::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                k[(a, b)] = (0..n)
                    .map(|m| g.bracket(&basis[a], &g.bracket(&basis[b], &basis[m]))[m].clone())
                    .sum();
            }
        }
        k
    }

    #[test]
    fn killing_forms() {
        let sl2 = Builtin::Sl2.algebra();
        let k = sl2.killing_form();
        assert_eq!(k, killing_oracle(&sl2));
        assert_eq!(k[(0, 0)], GaussRat::from_int(8));
        assert_eq!(k[(1, 2)], GaussRat::from_int(4));
        assert_eq!(k[(2, 1)], GaussRat::from_int(4));
        let nonzero = k.entries().iter().filter(|x| !x.is_zero()).count();
        assert_eq!(nonzero, 3);
        assert!(Builtin::Heis3.algebra().killing_form().is_zero());
        assert!(Builtin::Abelian3.algebra().killing_form().is_zero());
        for b in Builtin::ALL {
            let g = b.algebra();
            assert_eq!(g.killing_form(), killing_oracle(&g));
        }
    }

    #[test]
    fn profiles() {
        let sol = Builtin::Sol3.algebra().structural_profile();
        assert!(sol.solvable && sol.unimodular && !sol.nilpotent && !sol.semisimple);
        assert_eq!(sol.derived_series_dims, vec![3, 2, 0]);
        assert_eq!(sol.lower_central_dims, vec![3, 2]);

        let heis = Builtin::Heis3.algebra().structural_profile();
        assert!(heis.nilpotent && heis.unimodular && heis.solvable);
        assert_eq!(heis.killing_rank, 0);
        assert_eq!(heis.derived_series_dims, vec![3, 1, 0]);

        let sl2 = Builtin::Sl2.algebra().structural_profile();
        assert!(sl2.semisimple && sl2.unimodular && !sl2.solvable);
        assert_eq!(sl2.killing_rank, 3);
        assert_eq!(sl2.derived_series_dims, vec![3]);

        let ab = Builtin::Abelian3.algebra().structural_profile();
        assert!(ab.abelian && ab.nilpotent && ab.solvable && !ab.semisimple);
        assert_eq!(ab.derived_series_dims, vec![3, 0]);
    }

    #[test]
    fn non_unimodular_algebra() {
        // [e1, e2] = e2: the affine line algebra.
        let g = LieAlgebra::from_structure_constants(
            "aff1",
            vec!["x".into(), "y".into()],
            &[BracketEntry::new(0, 1, ints(&[0, 1]))],
        )
        .unwrap();
        let p = g.structural_profile();
        assert!(p.solvable && !p.unimodular && !p.nilpotent);
    }
}
