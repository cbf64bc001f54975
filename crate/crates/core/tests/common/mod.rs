#![allow(dead_code)]

use std::sync::Arc;

use lieaff::affine::AffMap;
use lieaff::connections::{InvariantConnection, Tensor3};
use lieaff::format::{parse_coeff, MapFile};
use lieaff::lie::{Builtin, LieAlgebra};
use lieaff::report::CertificateRecord;
use lieaff::scalar::{ExactMatrix, GaussRat, MultiPoly};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub fn gauss(re: (i64, i64), im: (i64, i64)) -> GaussRat {
    GaussRat::ratio(re.0, re.1) + GaussRat::ratio(im.0, im.1) * GaussRat::i()
}

/// Small Gaussian rationals, with integers and real values over-represented.
pub fn small_gauss() -> impl Strategy<Value = GaussRat> {
    prop_oneof![
        3 => (-4i64..=4).prop_map(GaussRat::from_int),
        2 => ((-4i64..=4, 1i64..=3), (-3i64..=3, 1i64..=3)).prop_map(|(a, b)| gauss(a, b)),
        1 => Just(GaussRat::zero()),
    ]
}

pub fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = ExactMatrix> {
    prop::collection::vec(small_gauss(), rows * cols)
        .prop_map(move |v| ExactMatrix::new(rows, cols, v).unwrap())
}

pub fn square_matrix(max: usize) -> impl Strategy<Value = ExactMatrix> {
    (1..=max).prop_flat_map(|n| matrix(n, n))
}

/// Integer matrices with entries in `[-3, 3]`.
pub fn int_matrix(n: usize) -> impl Strategy<Value = ExactMatrix> {
    prop::collection::vec(-3i64..=3, n * n).prop_map(move |v| {
        ExactMatrix::new(n, n, v.into_iter().map(GaussRat::from_int).collect()).unwrap()
    })
}

pub fn invertible_matrix(n: usize) -> impl Strategy<Value = ExactMatrix> {
    int_matrix(n).prop_filter("singular", |m| !m.det().unwrap().is_zero())
}

/// Polynomials of degree ≤ 1 in `nvars` variables.
pub fn linear_poly(nvars: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(small_gauss(), nvars + 1).prop_map(move |cs| {
        let mut p = MultiPoly::constant(nvars, cs[0].clone()).unwrap();
        for (k, c) in cs[1..].iter().enumerate() {
            p = p.add(&MultiPoly::var(nvars, k).unwrap().scale(c));
        }
        p
    })
}

pub fn point(nvars: usize) -> impl Strategy<Value = Vec<GaussRat>> {
    prop::collection::vec(small_gauss(), nvars)
}

pub fn tensor3(n: usize) -> impl Strategy<Value = Tensor3> {
    prop::collection::vec(small_gauss(), n * n * n)
        .prop_map(move |v| Tensor3::from_vec(n, v).unwrap())
}

pub fn builtin() -> impl Strategy<Value = Builtin> {
    prop::sample::select(Builtin::ALL.to_vec())
}

/// The same algebra in the basis `f_a = Σ_b P[b][a] e_b`.
pub fn change_basis(g: &LieAlgebra, p: &ExactMatrix) -> LieAlgebra {
    let n = g.dim();
    let q = p.inverse().expect("invertible change of basis");
    let mut c = vec![GaussRat::zero(); n * n * n];
    for a in 0..n {
        for b in 0..n {
            let mut image = vec![GaussRat::zero(); n];
            for i in 0..n {
                for j in 0..n {
                    let w = &p[(i, a)] * &p[(j, b)];
                    if w.is_zero() {
                        continue;
                    }
                    for (m, slot) in image.iter_mut().enumerate() {
                        *slot += &w * g.c(i, j, m);
                    }
                }
            }
            let coords = q.mul_vec(&image);
            for (k, v) in coords.into_iter().enumerate() {
                c[(a * n + b) * n + k] = v;
            }
        }
    }
    LieAlgebra::from_tensor(format!("{}'", g.name()), g.basis_names().to_vec(), c)
        .expect("a change of basis preserves Jacobi")
}

/// Direct sum with an abelian algebra of dimension `extra`.
pub fn abelian_extension(g: &LieAlgebra, extra: usize) -> LieAlgebra {
    let n = g.dim();
    let m = n + extra;
    let mut c = vec![GaussRat::zero(); m * m * m];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                c[(i * m + j) * m + k] = g.c(i, j, k).clone();
            }
        }
    }
    let names = (1..=m).map(|i| format!("x{i}")).collect();
    LieAlgebra::from_tensor(format!("{}+a{extra}", g.name()), names, c).unwrap()
}

/// Catalog algebras, rewritten in random integer bases and extended by an
/// abelian summand.
pub fn random_algebra() -> impl Strategy<Value = LieAlgebra> {
    (builtin(), invertible_matrix(3), 0usize..=1)
        .prop_map(|(b, p, extra)| abelian_extension(&change_basis(&b.algebra(), &p), extra))
}

pub fn random_connection() -> impl Strategy<Value = InvariantConnection> {
    random_algebra().prop_flat_map(|g| {
        let n = g.dim();
        let g = Arc::new(g);
        tensor3(n).prop_map(move |t| InvariantConnection::new(g.clone(), t).unwrap())
    })
}

pub fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg.into()))
    }
}

/// Rebuilds a certificate from its serialized form and re-runs every exact
/// check without trusting the recorded flags.
pub fn recheck_certificate(record: &CertificateRecord, algebra: &LieAlgebra) -> Result<(), String> {
    let g = Arc::new(algebra.clone());
    let n = g.dim();
    let mut gamma = Tensor3::zeros(n);
    for e in &record.gamma {
        let [i, j, k] = e.index;
        gamma.set(
            i,
            j,
            k,
            parse_coeff(&e.value, "gamma").map_err(|e| e.to_string())?,
        );
    }
    let conn = InvariantConnection::new(g.clone(), gamma).map_err(|e| e.to_string())?;
    let map: AffMap = MapFile::to_map(&record.embedding, g).map_err(|e| e.to_string())?;
    if !conn.is_flat() {
        return Err("connection not flat".into());
    }
    if !conn.is_torsion_free() {
        return Err("connection has torsion".into());
    }
    let hom = map.check_homomorphism();
    if !hom.is_homomorphism() || !hom.injective {
        return Err(format!(
            "embedding is not an injective homomorphism: {hom:?}"
        ));
    }
    if map.is_etale() != Ok(true) {
        return Err("embedding is not étale".into());
    }
    if map.induced_connection().as_ref() != Ok(&conn) {
        return Err("embedding does not induce the certified connection".into());
    }
    Ok(())
}

/// `½c + s` with `s` the symmetrization of `sym`, which is torsion-free.
pub fn torsion_free(g: Arc<LieAlgebra>, sym: &Tensor3) -> InvariantConnection {
    let n = g.dim();
    let mut gamma = InvariantConnection::standard(g.clone()).gamma().clone();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let s = sym.get(i.min(j), i.max(j), k);
                gamma.set(i, j, k, gamma.get(i, j, k) + s);
            }
        }
    }
    InvariantConnection::new(g, gamma).unwrap()
}

pub fn torsion_free_connection() -> impl Strategy<Value = InvariantConnection> {
    (random_algebra(), tensor3(4)).prop_map(|(g, s)| torsion_free(Arc::new(g), &s))
}

/// Torsion-free connections on the catalog used by projective-change checks.
pub fn weyl_test_connections() -> Vec<InvariantConnection> {
    use lieaff::affine::{catalog_embedding, SolvableCatalog};
    let sl2 = Arc::new(Builtin::Sl2.algebra());
    let sol = Arc::new(Builtin::Sol3.algebra());
    let arbitrary = |g: &Arc<LieAlgebra>, seed: i64| {
        let n = g.dim();
        let data = (0..(n * n * n) as i64)
            .map(|t| GaussRat::ratio((t * 7 + seed) % 5 - 2, 1 + (t + seed) % 3))
            .collect();
        torsion_free(g.clone(), &Tensor3::from_vec(n, data).unwrap())
    };
    vec![
        InvariantConnection::standard(sl2.clone()),
        catalog_embedding(SolvableCatalog::Heis)
            .induced_connection()
            .unwrap(),
        catalog_embedding(SolvableCatalog::Sol)
            .induced_connection()
            .unwrap(),
        arbitrary(&sl2, 3),
        arbitrary(&sol, 11),
    ]
}

pub fn rref_idempotent(m: &ExactMatrix) -> Result<(), TestCaseError> {
    let once = m.rref();
    let twice = once.matrix.rref();
    ensure(
        twice.matrix == once.matrix,
        format!("rref not idempotent on {m}"),
    )?;
    ensure(twice.pivots == once.pivots, "pivot columns changed")?;
    ensure(
        once.pivots.len() == m.rank(),
        "pivot count differs from Bareiss rank",
    )?;
    let (rank, null) = m.rank_nullspace();
    ensure(rank + null.len() == m.cols(), "rank–nullity")?;
    for v in &null {
        ensure(
            m.mul_vec(v).iter().all(GaussRat::is_zero),
            "nullspace vector not annihilated",
        )?;
    }
    Ok(())
}

pub fn determinants_agree(m: &ExactMatrix) -> Result<(), TestCaseError> {
    let bareiss = m.det().unwrap();
    let cofactor = m.det_cofactor().unwrap();
    ensure(
        bareiss == cofactor,
        format!("det {bareiss} vs cofactor {cofactor} on {m}"),
    )?;
    ensure(
        bareiss.is_zero() == (m.rank() < m.rows()),
        "det zero iff rank deficient",
    )
}

pub fn solve_substitutes(m: &ExactMatrix, b: &[GaussRat]) -> Result<(), TestCaseError> {
    match m.solve(b) {
        Some(x) => ensure(m.mul_vec(&x) == b, "m·x ≠ b after solve"),
        None => ensure(m.rank() < m.rows(), "solve failed on a nonsingular system"),
    }
}

/// Evaluating `poly_det(m)` agrees with the determinant of `m` evaluated.
pub fn poly_det_commutes(
    m: &[Vec<MultiPoly>],
    points: &[Vec<GaussRat>],
) -> Result<(), TestCaseError> {
    let d = lieaff::scalar::poly_det(m).unwrap();
    for p in points {
        let rows = m
            .iter()
            .map(|r| r.iter().map(|q| q.eval(p)).collect())
            .collect();
        let evaluated = ExactMatrix::from_rows(rows).unwrap().det().unwrap();
        ensure(
            d.eval(p) == evaluated,
            format!("poly_det disagrees at {p:?}"),
        )?;
    }
    Ok(())
}

pub fn poly_matrix() -> impl Strategy<Value = Vec<Vec<MultiPoly>>> {
    (1usize..=3)
        .prop_flat_map(|n| prop::collection::vec(prop::collection::vec(linear_poly(3), n), n))
}

pub fn solve_case() -> impl Strategy<Value = (ExactMatrix, Vec<GaussRat>)> {
    (1usize..=4).prop_flat_map(|n| (matrix(n, n), prop::collection::vec(small_gauss(), n)))
}

pub fn rref_case() -> impl Strategy<Value = ExactMatrix> {
    (1usize..=4, 1usize..=5).prop_flat_map(|(r, c)| matrix(r, c))
}

pub const POINTS_PER_POLY_CASE: usize = 100;
