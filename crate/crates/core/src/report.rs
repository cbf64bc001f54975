//! Serializable reports and their plain-text rendering.
//!
//! Every exact scalar is carried as a [`Coeff`] string pair, so
//! `from_json(to_json(r)) == r` holds for all report types without floats.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::affine::AffMap;
use crate::connections::{ConnectionFlags, InvariantConnection};
use crate::format::{coeff, AlgebraFile, Coeff, GammaFile, MapFile};
use crate::lie::{Builtin, LieAlgebra, StructuralProfile};
use crate::obstructions::{
    decide_existence, Certificate, CertificateChecks, CertificateSource, DecisionReport,
    Obstruction, Verdict,
};
use crate::search::{newton_multistart, rationalize_and_verify, FlatnessSystem, SearchConfig};

/// One nonzero Christoffel symbol.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaEntry {
    pub index: [usize; 3],
    pub value: Coeff,
}

fn sparse_gamma(conn: &InvariantConnection) -> Vec<GammaEntry> {
    let n = conn.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = conn.gamma().get(i, j, k);
                if !v.is_zero() {
                    out.push(GammaEntry {
                        index: [i, j, k],
                        value: coeff(v),
                    });
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub source: CertificateSource,
    pub gamma: Vec<GammaEntry>,
    pub embedding: MapFile,
    pub checks: CertificateChecks,
}

impl CertificateRecord {
    pub fn of(cert: &Certificate) -> Self {
        CertificateRecord {
            source: cert.source,
            gamma: sparse_gamma(&cert.connection),
            embedding: MapFile::from_map(&cert.embedding),
            checks: cert.verify(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionRecord {
    pub killing_rank: usize,
    pub h1_adjoint: usize,
    pub adjoint_det_poly: String,
    pub adjoint_det_poly_is_zero: bool,
    pub adjoint_trace_free: bool,
}

impl ObstructionRecord {
    pub fn of(ob: &Obstruction) -> Self {
        ObstructionRecord {
            killing_rank: ob.killing_rank,
            h1_adjoint: ob.h1_adjoint,
            adjoint_det_poly: ob.adjoint_det_poly.to_string(),
            adjoint_det_poly_is_zero: ob.adjoint_det_poly.is_zero(),
            adjoint_trace_free: ob.adjoint_trace_free,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecisionRecord {
    pub verdict: Verdict,
    pub certificate: Option<CertificateRecord>,
    pub obstruction: Option<ObstructionRecord>,
    pub notes: Vec<String>,
}

impl DecisionRecord {
    pub fn of(d: &DecisionReport) -> Self {
        DecisionRecord {
            verdict: d.verdict,
            certificate: d.certificate.as_ref().map(CertificateRecord::of),
            obstruction: d.obstruction.as_ref().map(ObstructionRecord::of),
            notes: d.notes.clone(),
        }
    }
}

/// Properties of one concrete connection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectionAnalysis {
    pub label: String,
    pub flat: bool,
    pub torsion_free: bool,
    /// `None` where the Weyl tensor is undefined: nonzero torsion or dim ≤ 2.
    pub projectively_flat: Option<bool>,
    pub torsion_nonzero_components: usize,
    pub curvature_nonzero_components: usize,
    pub ricci: Vec<Vec<Coeff>>,
}

impl ConnectionAnalysis {
    pub fn of(label: impl Into<String>, conn: &InvariantConnection) -> Self {
        let flags = ConnectionFlags::of(conn);
        let torsion = conn.torsion();
        let curvature = conn.curvature();
        let ricci = curvature.ricci();
        ConnectionAnalysis {
            label: label.into(),
            flat: flags.flat,
            torsion_free: flags.torsion_free,
            projectively_flat: flags.projectively_flat,
            torsion_nonzero_components: torsion
                .0
                .as_slice()
                .iter()
                .filter(|x| !x.is_zero())
                .count(),
            curvature_nonzero_components: curvature
                .0
                .as_slice()
                .iter()
                .filter(|x| !x.is_zero())
                .count(),
            ricci: ricci
                .0
                .to_rows()
                .iter()
                .map(|r| r.iter().map(coeff).collect())
                .collect(),
        }
    }
}

/// Output of `analyze`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub algebra: AlgebraFile,
    pub profile: StructuralProfile,
    pub decision: DecisionRecord,
    pub connection_analyses: Vec<ConnectionAnalysis>,
}

/// Full analysis: structure, existence decision, and the zero and standard
/// connections.
pub fn analyze(g: &LieAlgebra, cfg: &SearchConfig) -> Report {
    let algebra = Arc::new(g.clone());
    Report {
        algebra: AlgebraFile::from_algebra(g),
        profile: g.structural_profile(),
        decision: DecisionRecord::of(&decide_existence(g, cfg)),
        connection_analyses: vec![
            ConnectionAnalysis::of("zero", &InvariantConnection::zero(algebra.clone())),
            ConnectionAnalysis::of("standard", &InvariantConnection::standard(algebra)),
        ],
    }
}

/// Output of `check-connection`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectionCheck {
    pub analysis: ConnectionAnalysis,
    /// The étale affine representation, present when flat and torsion-free.
    pub embedding: Option<MapFile>,
}

pub fn check_connection(conn: &InvariantConnection) -> ConnectionCheck {
    let analysis = ConnectionAnalysis::of("input", conn);
    let embedding = (analysis.flat && analysis.torsion_free)
        .then(|| crate::affine::etale_from_lsa(conn).ok())
        .flatten()
        .map(|m| MapFile::from_map(&m));
    ConnectionCheck {
        analysis,
        embedding,
    }
}

/// Output of `check-embedding`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingCheck {
    pub homomorphism: bool,
    /// First basis pair `(i, j)` where the bracket is not preserved.
    pub counterexample: Option<[usize; 2]>,
    pub injective: bool,
    pub etale: bool,
    /// Induced connection, present when the map is an étale homomorphism.
    pub induced: Option<GammaFile>,
    pub induced_analysis: Option<ConnectionAnalysis>,
}

pub fn check_embedding(map: &AffMap) -> EmbeddingCheck {
    let hom = map.check_homomorphism();
    let etale = map.is_etale().unwrap_or(false);
    let induced = if hom.is_homomorphism() && etale {
        map.induced_connection().ok()
    } else {
        None
    };
    EmbeddingCheck {
        homomorphism: hom.is_homomorphism(),
        counterexample: hom.counterexample.map(|(i, j)| [i, j]),
        injective: hom.injective,
        etale,
        induced_analysis: induced
            .as_ref()
            .map(|c| ConnectionAnalysis::of("induced", c)),
        induced: induced.as_ref().map(GammaFile::from_connection),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateRecord {
    pub start_index: usize,
    pub residual_norm: f64,
    pub iterations: usize,
    pub verified: bool,
}

/// Output of `search`: every converged start, whether it rationalized to an
/// exact flat torsion-free connection, and the first such certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub algebra: String,
    pub seed: u64,
    pub starts: usize,
    pub converged: usize,
    pub verified: usize,
    pub candidates: Vec<CandidateRecord>,
    pub certificate: Option<CertificateRecord>,
}

pub fn search(g: &LieAlgebra, cfg: &SearchConfig) -> SearchReport {
    let sys = FlatnessSystem::assemble(Arc::new(g.clone()));
    let candidates = newton_multistart(&sys, cfg);
    let mut first = None;
    let mut records = Vec::with_capacity(candidates.len());
    for c in &candidates {
        let exact = rationalize_and_verify(c, &sys, cfg);
        let cert = exact.and_then(|conn| {
            let embedding = crate::affine::etale_from_lsa(&conn).ok()?;
            let cert = Certificate {
                source: CertificateSource::Search {
                    start_index: c.start_index,
                },
                connection: conn,
                embedding,
            };
            cert.verify().all().then_some(cert)
        });
        records.push(CandidateRecord {
            start_index: c.start_index,
            residual_norm: c.residual_norm,
            iterations: c.iterations,
            verified: cert.is_some(),
        });
        if first.is_none() {
            first = cert;
        }
    }
    SearchReport {
        algebra: g.name().to_string(),
        seed: cfg.seed,
        starts: cfg.starts,
        converged: candidates.len(),
        verified: records.iter().filter(|r| r.verified).count(),
        candidates: records,
        certificate: first.as_ref().map(CertificateRecord::of),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dim3Row {
    pub algebra: String,
    pub solvable: bool,
    pub unimodular: bool,
    pub decision: DecisionRecord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dim3Table {
    pub rows: Vec<Dim3Row>,
}

impl Dim3Table {
    /// True when YES is reported for exactly the solvable rows and NO for
    /// the others.
    pub fn verdicts_match_solvability(&self) -> bool {
        self.rows.iter().all(|r| {
            r.decision.verdict
                == if r.solvable {
                    Verdict::Yes
                } else {
                    Verdict::No
                }
        })
    }
}

/// Decides the four three-dimensional catalog algebras.
pub fn classify_dim3(cfg: &SearchConfig) -> Dim3Table {
    Dim3Table {
        rows: Builtin::ALL
            .iter()
            .map(|b| {
                let g = b.algebra();
                let profile = g.structural_profile();
                Dim3Row {
                    algebra: b.name().to_string(),
                    solvable: profile.solvable,
                    unimodular: profile.unimodular,
                    decision: DecisionRecord::of(&decide_existence(&g, cfg)),
                }
            })
            .collect(),
    }
}

/// Plain-text rendering.
pub trait Render {
    fn render(&self) -> String;
}

fn c2s(c: &Coeff) -> String {
    crate::format::parse_coeff(c, "")
        .map(|x| x.to_string())
        .unwrap_or_else(|_| format!("{}+{}i", c[0], c[1]))
}

fn yn(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn render_gamma(out: &mut String, gamma: &[GammaEntry]) {
    if gamma.is_empty() {
        out.push_str("    Γ = 0\n");
    }
    for e in gamma {
        let [i, j, k] = e.index;
        let _ = writeln!(out, "    Γ[{i}][{j}][{k}] = {}", c2s(&e.value));
    }
}

fn render_map(out: &mut String, m: &MapFile) {
    for (i, img) in m.images.iter().enumerate() {
        let rows: Vec<String> = img
            .matrix
            .iter()
            .map(|r| r.iter().map(c2s).collect::<Vec<_>>().join(" "))
            .collect();
        let t: Vec<String> = img.translation.iter().map(c2s).collect();
        let _ = writeln!(
            out,
            "    e{} ↦ A = [{}], v = ({})",
            i + 1,
            rows.join("; "),
            t.join(", ")
        );
    }
}

fn render_decision(out: &mut String, d: &DecisionRecord) {
    let _ = writeln!(out, "verdict: {}", d.verdict);
    if let Some(c) = &d.certificate {
        let source = match c.source {
            CertificateSource::ZeroConnection => "zero connection".to_string(),
            CertificateSource::CatalogEmbedding => "catalog embedding".to_string(),
            CertificateSource::Search { start_index } => format!("search, start {start_index}"),
        };
        let _ = writeln!(
            out,
            "  certificate ({source}): flat {}, torsion-free {}, homomorphism {}, étale {}",
            yn(c.checks.flat),
            yn(c.checks.torsion_free),
            yn(c.checks.homomorphism),
            yn(c.checks.etale)
        );
        render_gamma(out, &c.gamma);
        out.push_str("  embedding:\n");
        render_map(out, &c.embedding);
    }
    if let Some(o) = &d.obstruction {
        let _ = writeln!(
            out,
            "  obstruction: Killing rank {}, dim H¹(g, ad) = {}, adjoint trace-free {}",
            o.killing_rank,
            o.h1_adjoint,
            yn(o.adjoint_trace_free)
        );
        let _ = writeln!(
            out,
            "    adjoint determinant polynomial: {}",
            o.adjoint_det_poly
        );
    }
    for n in &d.notes {
        let _ = writeln!(out, "  note: {n}");
    }
}

impl Render for ConnectionAnalysis {
    fn render(&self) -> String {
        let pf = match self.projectively_flat {
            Some(b) => yn(b),
            None => "n/a",
        };
        let ricci: Vec<String> = self
            .ricci
            .iter()
            .map(|r| r.iter().map(c2s).collect::<Vec<_>>().join(" "))
            .collect();
        format!(
            "{}: flat {}, torsion-free {}, projectively flat {}, nonzero T {}, nonzero R {}, Ric = [{}]\n",
            self.label,
            yn(self.flat),
            yn(self.torsion_free),
            pf,
            self.torsion_nonzero_components,
            self.curvature_nonzero_components,
            ricci.join("; ")
        )
    }
}

impl Render for Report {
    fn render(&self) -> String {
        let p = &self.profile;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "algebra: {} (dim {})",
            self.algebra.name, self.algebra.dim
        );
        let _ = writeln!(
            out,
            "profile: abelian {}, nilpotent {}, solvable {}, unimodular {}, semisimple {}",
            yn(p.abelian),
            yn(p.nilpotent),
            yn(p.solvable),
            yn(p.unimodular),
            yn(p.semisimple)
        );
        let _ = writeln!(
            out,
            "  Killing rank {}, derived series {:?}, lower central series {:?}",
            p.killing_rank, p.derived_series_dims, p.lower_central_dims
        );
        render_decision(&mut out, &self.decision);
        out.push_str("connections:\n");
        for c in &self.connection_analyses {
            out.push_str("  ");
            out.push_str(&c.render());
        }
        out
    }
}

impl Render for ConnectionCheck {
    fn render(&self) -> String {
        let mut out = self.analysis.render();
        if let Some(m) = &self.embedding {
            out.push_str("étale affine representation:\n");
            render_map(&mut out, m);
        }
        out
    }
}

impl Render for EmbeddingCheck {
    fn render(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "homomorphism: {}", yn(self.homomorphism));
        if let Some([i, j]) = self.counterexample {
            let _ = write!(out, " (fails on [e{}, e{}])", i + 1, j + 1);
        }
        let _ = writeln!(
            out,
            "\ninjective: {}\nétale: {}",
            yn(self.injective),
            yn(self.etale)
        );
        if let Some(a) = &self.induced_analysis {
            out.push_str(&a.render());
        }
        if let Some(g) = &self.induced {
            let n = g.dim;
            let mut entries = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let c = &g.gamma[i][j][k];
                        if !(c[0] == "0" && c[1] == "0") {
                            entries.push(GammaEntry {
                                index: [i, j, k],
                                value: c.clone(),
                            });
                        }
                    }
                }
            }
            render_gamma(&mut out, &entries);
        }
        out
    }
}

impl Render for SearchReport {
    fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "search on {}: seed {}, {} starts, {} converged, {} verified",
            self.algebra, self.seed, self.starts, self.converged, self.verified
        );
        for c in &self.candidates {
            let _ = writeln!(
                out,
                "  start {:>4}: residual {:.3e} after {} iterations, exact {}",
                c.start_index,
                c.residual_norm,
                c.iterations,
                yn(c.verified)
            );
        }
        match &self.certificate {
            Some(c) => {
                out.push_str("certificate:\n");
                render_gamma(&mut out, &c.gamma);
                out.push_str("  embedding:\n");
                render_map(&mut out, &c.embedding);
            }
            None => out.push_str("no exactly verified certificate\n"),
        }
        out
    }
}

impl Render for Dim3Table {
    fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<10} {:<9} {:<11} verdict",
            "algebra", "solvable", "unimodular"
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:<10} {:<9} {:<11} {}",
                r.algebra,
                yn(r.solvable),
                yn(r.unimodular),
                r.decision.verdict
            );
        }
        for r in &self.rows {
            let _ = writeln!(out, "\n[{}]", r.algebra);
            render_decision(&mut out, &r.decision);
        }
        out
    }
}
