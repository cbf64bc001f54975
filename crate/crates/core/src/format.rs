//! JSON file formats for algebras, Christoffel arrays and affine maps.
//!
//! Every scalar is written as a `[re, im]` pair of rational strings
//! matching `-?digits(/digits)?`; floats never appear.
//!
//! ```json
//! { "name": "heis3", "dim": 3, "basis": ["e1", "e2", "e3"],
//!   "brackets": [ { "left": 0, "right": 1,
//!                   "result": [["0","0"], ["0","0"], ["1","0"]] } ] }
//! ```

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::affine::{AffElement, AffMap, AffineError};
use crate::connections::{ConnectionError, InvariantConnection, Tensor3};
use crate::lie::{BracketEntry, LieAlgebra, LieError};
use crate::scalar::{ExactMatrix, GaussRat};

/// A scalar as `[re, im]`.
pub type Coeff = [String; 2];

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Connection(#[from] ConnectionError),
    #[error(transparent)]
    Affine(#[from] AffineError),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

fn field_err(field: impl Into<String>, message: impl ToString) -> FormatError {
    FormatError::Field {
        field: field.into(),
        message: message.to_string(),
    }
}

pub fn coeff(x: &GaussRat) -> Coeff {
    x.to_strings()
}

pub fn parse_coeff(c: &Coeff, field: &str) -> Result<GaussRat, FormatError> {
    GaussRat::from_strings(&c[0], &c[1]).map_err(|e| field_err(field, e))
}

fn parse_vec(cs: &[Coeff], len: usize, field: &str) -> Result<Vec<GaussRat>, FormatError> {
    if cs.len() != len {
        return Err(field_err(
            field,
            format!("expected {len} entries, found {}", cs.len()),
        ));
    }
    cs.iter()
        .enumerate()
        .map(|(k, c)| parse_coeff(c, &format!("{field}[{k}]")))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketRecord {
    pub left: usize,
    pub right: usize,
    pub result: Vec<Coeff>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<BracketRecord>,
}

impl AlgebraFile {
    pub fn from_algebra(g: &LieAlgebra) -> Self {
        AlgebraFile {
            name: g.name().to_string(),
            dim: g.dim(),
            basis: g.basis_names().to_vec(),
            brackets: g
                .bracket_entries()
                .into_iter()
                .map(|e| BracketRecord {
                    left: e.left,
                    right: e.right,
                    result: e.result.iter().map(coeff).collect(),
                })
                .collect(),
        }
    }

    pub fn to_algebra(&self) -> Result<LieAlgebra, FormatError> {
        if self.basis.len() != self.dim {
            return Err(field_err(
                "basis",
                format!("has {} labels but dim is {}", self.basis.len(), self.dim),
            ));
        }
        let mut entries = Vec::with_capacity(self.brackets.len());
        for (b, rec) in self.brackets.iter().enumerate() {
            for (name, idx) in [("left", rec.left), ("right", rec.right)] {
                if idx >= self.dim {
                    return Err(field_err(
                        format!("brackets[{b}].{name}"),
                        format!("index {idx} out of range for dim {}", self.dim),
                    ));
                }
            }
            let result = parse_vec(&rec.result, self.dim, &format!("brackets[{b}].result"))?;
            entries.push(BracketEntry::new(rec.left, rec.right, result));
        }
        Ok(LieAlgebra::from_structure_constants(
            self.name.clone(),
            self.basis.clone(),
            &entries,
        )?)
    }
}

/// Parses and validates an algebra file.
pub fn parse_algebra(text: &str) -> Result<LieAlgebra, FormatError> {
    let file: AlgebraFile = serde_json::from_str(text)?;
    file.to_algebra()
}

pub fn emit_algebra(g: &LieAlgebra) -> String {
    serde_json::to_string_pretty(&AlgebraFile::from_algebra(g)).expect("serializable")
}

/// Christoffel array, `gamma[i][j][k]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GammaFile {
    pub dim: usize,
    pub gamma: Vec<Vec<Vec<Coeff>>>,
}

impl GammaFile {
    pub fn from_connection(conn: &InvariantConnection) -> Self {
        let n = conn.dim();
        let g = conn.gamma();
        GammaFile {
            dim: n,
            gamma: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| (0..n).map(|k| coeff(g.get(i, j, k))).collect())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_connection(
        &self,
        algebra: Arc<LieAlgebra>,
    ) -> Result<InvariantConnection, FormatError> {
        let n = algebra.dim();
        if self.dim != n {
            return Err(field_err(
                "dim",
                format!("is {} but the algebra has dim {n}", self.dim),
            ));
        }
        if self.gamma.len() != n {
            return Err(field_err("gamma", format!("expected {n} rows")));
        }
        let mut data = Vec::with_capacity(n * n * n);
        for (i, plane) in self.gamma.iter().enumerate() {
            if plane.len() != n {
                return Err(field_err(
                    format!("gamma[{i}]"),
                    format!("expected {n} rows"),
                ));
            }
            for (j, row) in plane.iter().enumerate() {
                data.extend(parse_vec(row, n, &format!("gamma[{i}][{j}]"))?);
            }
        }
        Ok(InvariantConnection::new(
            algebra,
            Tensor3::from_vec(n, data)?,
        )?)
    }
}

pub fn parse_gamma(
    text: &str,
    algebra: Arc<LieAlgebra>,
) -> Result<InvariantConnection, FormatError> {
    let file: GammaFile = serde_json::from_str(text)?;
    file.to_connection(algebra)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AffElementRecord {
    pub matrix: Vec<Vec<Coeff>>,
    pub translation: Vec<Coeff>,
}

/// Images of the basis vectors in `aff(dim)`: `dim × (dim² + dim)` entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub dim: usize,
    pub images: Vec<AffElementRecord>,
}

impl MapFile {
    pub fn from_map(m: &AffMap) -> Self {
        MapFile {
            dim: m.ambient_dim(),
            images: m
                .images()
                .iter()
                .map(|x| AffElementRecord {
                    matrix: x
                        .matrix
                        .to_rows()
                        .iter()
                        .map(|r| r.iter().map(coeff).collect())
                        .collect(),
                    translation: x.translation.iter().map(coeff).collect(),
                })
                .collect(),
        }
    }

    pub fn to_map(&self, algebra: Arc<LieAlgebra>) -> Result<AffMap, FormatError> {
        let m = self.dim;
        if self.images.len() != algebra.dim() {
            return Err(field_err(
                "images",
                format!(
                    "expected {} images, found {}",
                    algebra.dim(),
                    self.images.len()
                ),
            ));
        }
        let mut images = Vec::with_capacity(self.images.len());
        for (i, rec) in self.images.iter().enumerate() {
            if rec.matrix.len() != m {
                return Err(field_err(
                    format!("images[{i}].matrix"),
                    format!("expected {m} rows"),
                ));
            }
            let rows = rec
                .matrix
                .iter()
                .enumerate()
                .map(|(r, row)| parse_vec(row, m, &format!("images[{i}].matrix[{r}]")))
                .collect::<Result<Vec<_>, _>>()?;
            let matrix = ExactMatrix::from_rows(rows)
                .map_err(|e| field_err(format!("images[{i}].matrix"), e))?;
            let translation = parse_vec(&rec.translation, m, &format!("images[{i}].translation"))?;
            images.push(AffElement::new(matrix, translation)?);
        }
        Ok(AffMap::new(algebra, images)?)
    }
}

pub fn parse_map(text: &str, algebra: Arc<LieAlgebra>) -> Result<AffMap, FormatError> {
    let file: MapFile = serde_json::from_str(text)?;
    file.to_map(algebra)
}
