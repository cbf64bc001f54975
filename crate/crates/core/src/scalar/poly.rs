//! Sparse multivariate polynomials with Gaussian-rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use super::{GaussRat, ScalarError};

/// Most variables a [`MultiPoly`] may carry.
pub const MAX_VARS: usize = 6;
/// Highest total degree a [`MultiPoly`] may reach.
pub const MAX_DEGREE: u32 = 8;

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

/// A polynomial in `nvars` variables. Zero coefficients are never stored,
/// so equality of term maps is equality of polynomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, GaussRat>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Result<Self, ScalarError> {
        if nvars > MAX_VARS {
            return Err(ScalarError::TooManyVariables(nvars));
        }
        Ok(MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        })
    }

    pub fn constant(nvars: usize, c: GaussRat) -> Result<Self, ScalarError> {
        let mut p = MultiPoly::zero(nvars)?;
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        Ok(p)
    }

    /// The coordinate function `p_index`.
    pub fn var(nvars: usize, index: usize) -> Result<Self, ScalarError> {
        let mut p = MultiPoly::zero(nvars)?;
        if index >= nvars {
            return Err(ScalarError::VariableOutOfRange { index, nvars });
        }
        let mut mono = vec![0; nvars];
        mono[index] = 1;
        p.terms.insert(mono, GaussRat::one());
        Ok(p)
    }

    /// Linear form `Σ coeffs[k]·p_k`.
    pub fn linear(coeffs: &[GaussRat]) -> Result<Self, ScalarError> {
        let nvars = coeffs.len();
        let mut p = MultiPoly::zero(nvars)?;
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut mono = vec![0; nvars];
                mono[k] = 1;
                p.terms.insert(mono, c.clone());
            }
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, GaussRat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn coefficient(&self, mono: &[u32]) -> GaussRat {
        self.terms.get(mono).cloned().unwrap_or_default()
    }

    fn insert_add(&mut self, mono: Monomial, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, c);
            }
        }
    }

    fn check_vars(&self, other: &Self) {
        assert_eq!(
            self.nvars, other.nvars,
            "polynomial variable count mismatch"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_vars(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &GaussRat) -> Self {
        let mut out = MultiPoly {
            nvars: self.nvars,
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            out.insert_add(m.clone(), c * s);
        }
        out
    }

    /// Product, refusing results above [`MAX_DEGREE`].
    pub fn checked_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check_vars(other);
        if let (Some(a), Some(b)) = (self.degree(), other.degree()) {
            if a + b > MAX_DEGREE {
                return Err(ScalarError::DegreeTooHigh(a + b));
            }
        }
        let mut out = MultiPoly {
            nvars: self.nvars,
            terms: BTreeMap::new(),
        };
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mono = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                out.insert_add(mono, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[GaussRat]) -> GaussRat {
        assert_eq!(point.len(), self.nvars, "evaluation point has wrong arity");
        self.terms
            .iter()
            .map(|(mono, c)| {
                mono.iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (&e, x)| &acc * &x.pow(e))
            })
            .sum()
    }
}

/// Symbolic determinant of a square matrix of polynomials, by Laplace
/// expansion.
pub fn poly_det(m: &[Vec<MultiPoly>]) -> Result<MultiPoly, ScalarError> {
    let n = m.len();
    if let Some(row) = m.iter().find(|r| r.len() != n) {
        return Err(ScalarError::NotSquare {
            rows: n,
            cols: row.len(),
        });
    }
    let nvars = m
        .first()
        .and_then(|r| r.first())
        .map_or(0, MultiPoly::nvars);
    if m.iter().flatten().any(|p| p.nvars() != nvars) {
        return Err(ScalarError::Shape {
            expected: nvars,
            found: m
                .iter()
                .flatten()
                .map(MultiPoly::nvars)
                .find(|&v| v != nvars)
                .unwrap(),
        });
    }
    // Each term of the expansion picks one entry per row.
    let bound: u32 = m
        .iter()
        .map(|row| row.iter().filter_map(MultiPoly::degree).max().unwrap_or(0))
        .sum();
    if bound > MAX_DEGREE {
        return Err(ScalarError::DegreeTooHigh(bound));
    }
    Ok(poly_cofactor(m, nvars))
}

fn poly_cofactor(m: &[Vec<MultiPoly>], nvars: usize) -> MultiPoly {
    fn rec(m: &[Vec<MultiPoly>], row: usize, cols: &mut Vec<usize>, nvars: usize) -> MultiPoly {
        if cols.is_empty() {
            return MultiPoly::constant(nvars, GaussRat::one()).expect("checked nvars");
        }
        let mut acc = MultiPoly::zero(nvars).expect("checked nvars");
        for pos in 0..cols.len() {
            let c = cols.remove(pos);
            let a = &m[row][c];
            if !a.is_zero() {
                let minor = rec(m, row + 1, cols, nvars);
                let term = a.checked_mul(&minor).expect("degree bounded up front");
                acc = if pos % 2 == 0 {
                    acc.add(&term)
                } else {
                    acc.sub(&term)
                };
            }
            cols.insert(pos, c);
        }
        acc
    }
    let mut cols: Vec<usize> = (0..m.len()).collect();
    rec(m, 0, &mut cols, nvars)
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(mono, c)| {
                let vars: Vec<String> = mono
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(k, &e)| match e {
                        1 => format!("p{}", k + 1),
                        _ => format!("p{}^{e}", k + 1),
                    })
                    .collect();
                match (vars.is_empty(), c.is_one()) {
                    (true, _) => format!("({c})"),
                    (false, true) => vars.join("*"),
                    (false, false) => format!("({c})*{}", vars.join("*")),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_determinant_is_a_monomial() {
        let n = 3;
        let mut m = vec![vec![MultiPoly::zero(n).unwrap(); n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = MultiPoly::var(n, i).unwrap();
        }
        let d = poly_det(&m).unwrap();
        assert_eq!(d.terms().len(), 1);
        assert_eq!(d.coefficient(&[1, 1, 1]), GaussRat::one());
    }

    #[test]
    fn identity_determinant() {
        let one = MultiPoly::constant(2, GaussRat::one()).unwrap();
        let zero = MultiPoly::zero(2).unwrap();
        let m = vec![vec![one.clone(), zero.clone()], vec![zero, one.clone()]];
        assert_eq!(poly_det(&m).unwrap(), one);
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let x = MultiPoly::var(2, 0).unwrap();
        assert!(x.sub(&x).is_zero());
        assert_eq!(x.sub(&x), MultiPoly::zero(2).unwrap());
    }

    #[test]
    fn limits_are_enforced() {
        assert!(matches!(
            MultiPoly::zero(7),
            Err(ScalarError::TooManyVariables(7))
        ));
        let x = MultiPoly::var(1, 0).unwrap();
        let x4 = x
            .checked_mul(&x)
            .unwrap()
            .checked_mul(&x)
            .unwrap()
            .checked_mul(&x)
            .unwrap();
        let x8 = x4.checked_mul(&x4).unwrap();
        assert_eq!(x8.degree(), Some(8));
        assert!(matches!(
            x8.checked_mul(&x),
            Err(ScalarError::DegreeTooHigh(9))
        ));
        assert!(MultiPoly::var(2, 2).is_err());
    }

    #[test]
    fn evaluation() {
        let x = MultiPoly::var(2, 0).unwrap();
        let y = MultiPoly::var(2, 1).unwrap();
        let p = x
            .checked_mul(&y)
            .unwrap()
            .add(&x.scale(&GaussRat::from_int(3)));
        let v = p.eval(&[GaussRat::from_int(2), GaussRat::i()]);
        assert_eq!(v, GaussRat::complex(6, 2));
        assert!(p.to_string().contains("p1*p2"));
    }
}
