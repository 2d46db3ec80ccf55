//! Test corpora, the comparison with the canonical embedding
//! `π ∘ ι : mod H -> C`, and the suite runner behind the CLI.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::backend::{DerivedBackend, Triangulated};
use crate::cluster::{ClusterBackend, OrbitMorphism, OrbitObject};
use crate::complex::{ChainMap, ProjComplex};
use crate::decomp::{decompose_pieces, find_iso};
use crate::error::{Error, Result};
use crate::linalg::Field;
use crate::moore::{solve_rep, solve_stacked, Moore, MooreCert};
use crate::pathalg::PathMatrix;
use crate::quiver::Quiver;
use crate::rep::{
    ar_translate_inverse, ext_space, hom_space, indecomposable_injective, indecomposable_projective,
    projective_decomposition, projective_presentation, simple, RepMorphism, Representation,
};
use crate::resolve::stalk;
use crate::triangles::{delta_map, ladder_first, ladder_second, ses_to_triangle, Ses};

/// A backend that receives bounded complexes of projectives: the identity
/// for `K^b(proj H)`, the projection `π` for the orbit category.
pub trait StalkEmbedding: Triangulated {
    fn embed_complex(&self, x: &ProjComplex) -> Self::Obj;
    fn embed_map(&self, f: &ChainMap) -> Self::Mor;
    /// Certified Hom dimension and the sum over a doubled window.
    fn window_agreement(&self, _x: &Self::Obj, _y: &Self::Obj) -> Result<Option<(usize, usize)>> {
        Ok(None)
    }
    fn u(&self) -> Option<i64> {
        None
    }
}

impl StalkEmbedding for DerivedBackend {
    fn embed_complex(&self, x: &ProjComplex) -> ProjComplex {
        x.clone()
    }

    fn embed_map(&self, f: &ChainMap) -> ChainMap {
        f.clone()
    }
}

impl StalkEmbedding for ClusterBackend {
    fn embed_complex(&self, x: &ProjComplex) -> OrbitObject {
        OrbitObject::new(x.clone())
    }

    fn embed_map(&self, f: &ChainMap) -> OrbitMorphism {
        OrbitMorphism::lift_of(f.clone())
    }

    fn window_agreement(&self, x: &OrbitObject, y: &OrbitObject) -> Result<Option<(usize, usize)>> {
        let (d, wide, _) = ClusterBackend::window_agreement(self, x, y)?;
        Ok(Some((d, wide)))
    }

    fn u(&self) -> Option<i64> {
        Some(ClusterBackend::u(self))
    }
}

/// `ι(f)` between minimal presentations, lifting `f` degreewise.
pub fn stalk_map(f: &RepMorphism) -> Result<ChainMap> {
    let (a, b) = (f.source(), f.target());
    let q = a.quiver();
    let (sa, sb) = (stalk(a)?, stalk(b)?);
    let (pa, pb) = (projective_presentation(a)?, projective_presentation(b)?);
    let (f1, _) = solve_rep(&hom_space(&pa.p, &pb.p), |x| pb.proj.compose(x), &f.compose(&pa.proj)?)?;
    let f1 = f1.ok_or_else(|| Error::NoLift("top of the presentation".into()))?;
    let mut comps = BTreeMap::new();
    comps.insert(0, PathMatrix::from_projective_morphism(&f1, &pb.tops, &pa.tops, q));
    if !pa.k.is_zero() && !pb.k.is_zero() {
        let (f0, _) = solve_rep(&hom_space(&pa.k, &pb.k), |x| pb.incl.compose(x), &f1.compose(&pa.incl)?)?;
        let f0 = f0.ok_or_else(|| Error::NoLift("kernel of the presentation".into()))?;
        let (ta, ia) = projective_decomposition(&pa.k)?;
        let (tb, ib) = projective_decomposition(&pb.k)?;
        let std = ib.inverse().expect("cover is an isomorphism").compose(&f0.compose(&ia)?)?;
        comps.insert(-1, PathMatrix::from_projective_morphism(&std, &tb, &ta, q));
    }
    let m = ChainMap::from_parts(sa, sb, comps);
    if !m.is_chain_map() {
        return Err(Error::cert("stalk map", "degreewise lift is not a chain map"));
    }
    Ok(m)
}

#[derive(Clone, Debug)]
pub struct CorpusModule {
    pub name: String,
    pub rep: Representation,
}

/// All indecomposables of a Dynkin quiver, with Hom and Ext¹ tables.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub quiver: Arc<Quiver>,
    pub field: Field,
    pub modules: Vec<CorpusModule>,
    pub hom_dims: Vec<Vec<usize>>,
    pub ext_dims: Vec<Vec<usize>>,
    /// Number of positive roots; equals `modules.len()`.
    pub roots: usize,
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn index_of(&self, m: &Representation, seed: u64) -> Option<usize> {
        self.modules.iter().position(|c| find_iso(&c.rep, m, seed).is_some())
    }
}

fn is_indecomposable(m: &Representation) -> bool {
    !m.is_zero() && hom_space(m, m).dim() == 1
}

/// The preprojective component: τ⁻¹-orbits of the indecomposable
/// projectives. For Dynkin quivers this is every indecomposable; the
/// count is certified against the positive roots.
pub fn build_corpus(q: &Arc<Quiver>, field: Field, seed: u64) -> Result<Corpus> {
    let roots = q.positive_roots()?;
    let mut modules: Vec<CorpusModule> = Vec::new();
    let mut queue: Vec<(Representation, usize, usize)> =
        (0..q.num_vertices()).map(|v| Ok((indecomposable_projective(q, field, v)?, v, 0))).collect::<Result<_>>()?;
    while let Some((m, v, k)) = queue.pop() {
        if !is_indecomposable(&m) {
            return Err(Error::cert("corpus", format!("τ⁻¹-orbit member {:?} is not a brick", m.dims())));
        }
        if modules.iter().any(|c| find_iso(&c.rep, &m, seed).is_some()) {
            continue;
        }
        modules.push(CorpusModule { name: name_of(q, field, &m, v, k, seed)?, rep: m.clone() });
        if modules.len() > roots.len() {
            return Err(Error::NotDynkin(format!("more than {} indecomposables found", roots.len())));
        }
        let t = ar_translate_inverse(&m);
        for p in decompose_pieces(&t, seed) {
            queue.push((p.rep, v, k + 1));
        }
    }
    let mut found: Vec<Vec<i64>> = modules.iter().map(|c| c.rep.dims().iter().map(|&d| d as i64).collect()).collect();
    let mut expect = roots.clone();
    found.sort();
    expect.sort();
    if found != expect {
        return Err(Error::cert("corpus", "dimension vectors differ from the positive roots"));
    }
    modules.sort_by(|a, b| a.name.cmp(&b.name).then(a.rep.dims().cmp(b.rep.dims())));
    let hom_dims = modules.iter().map(|a| modules.iter().map(|b| hom_space(&a.rep, &b.rep).dim()).collect()).collect();
    let ext_dims = modules
        .iter()
        .map(|a| modules.iter().map(|b| Ok(ext_space(&a.rep, &b.rep, 1)?.dim)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    Ok(Corpus { quiver: q.clone(), field, modules, hom_dims, ext_dims, roots: roots.len() })
}

fn name_of(q: &Arc<Quiver>, field: Field, m: &Representation, v: usize, k: usize, seed: u64) -> Result<String> {
    for w in 0..q.num_vertices() {
        if find_iso(&indecomposable_projective(q, field, w)?, m, seed).is_some() {
            return Ok(format!("P{}", w + 1));
        }
    }
    for w in 0..q.num_vertices() {
        if find_iso(&simple(q, field, w)?, m, seed).is_some() {
            return Ok(format!("S{}", w + 1));
        }
    }
    for w in 0..q.num_vertices() {
        if find_iso(&indecomposable_injective(q, field, w)?, m, seed).is_some() {
            return Ok(format!("I{}", w + 1));
        }
    }
    Ok(format!("t^-{k}P{}", v + 1))
}

#[derive(Clone, Debug)]
pub struct CorpusSes {
    pub name: String,
    pub ses: Ses,
}

fn is_epi(f: &RepMorphism) -> bool {
    let t = f.target();
    f.components().iter().enumerate().all(|(v, c)| c.rank() == t.dim(v))
}

/// One epimorphism `X ->> Y` for every ordered pair of corpus members
/// that admits one with kernel in the corpus.
pub fn build_ses_corpus(corpus: &Corpus, seed: u64) -> Result<Vec<CorpusSes>> {
    let f = corpus.field;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for x in &corpus.modules {
        for y in &corpus.modules {
            if x.rep.total_dim() <= y.rep.total_dim() {
                continue;
            }
            let h = hom_space(&x.rep, &y.rep);
            if h.dim() == 0 {
                continue;
            }
            let mut cands: Vec<RepMorphism> = h.basis.clone();
            cands.push(h.combine(&vec![f.one(); h.dim()]));
            for _ in 0..8 {
                let c: Vec<_> = (0..h.dim()).map(|_| f.from_i64(rng.gen_range(-3..=3))).collect();
                cands.push(h.combine(&c));
            }
            let Some(epi) = cands.into_iter().find(is_epi) else { continue };
            let (k, incl) = epi.kernel()?;
            let Some(ki) = corpus.index_of(&k, seed) else { continue };
            let name = format!("0 -> {} -> {} -> {} -> 0", corpus.modules[ki].name, x.name, y.name);
            out.push(CorpusSes { name, ses: Ses::new(incl, epi)? });
        }
    }
    Ok(out)
}

/// `σ_P : M₀(P) -> π ι(P)` for projective `P`, matching summands.
fn sigma_projective<B: StalkEmbedding>(m: &Moore<B>, c: &MooreCert<B>) -> Result<B::Mor> {
    let b = m.backend();
    let (tops, _) = c.base.as_ref().expect("projective certificate");
    let target = b.embed_complex(&stalk(&c.module)?);
    let m0 = m.m0_object(tops)?;
    let s = stalk(&c.module)?;
    let q = b.quiver();
    let id = PathMatrix::identity(b.field(), &tops.clone());
    let all: Vec<usize> = (0..tops.len()).collect();
    let mut out = b.zero(c.object(), &target);
    for (i, &v) in tops.iter().enumerate() {
        let src = crate::complex::ProjComplex::concentrated(q.clone(), b.field(), vec![v], 0);
        let e = ChainMap::from_parts(src, s.clone(), [(0, id.select(&all, &[i]))].into_iter().collect());
        out = b.add(&out, &b.compose(&b.embed_map(&e), &m0.projections[i])?)?;
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct SigmaReport {
    pub module: String,
    /// `π ι(i^A) ∘ σ_K = σ_P ∘ M(i^A)`.
    pub left_square: bool,
    pub found: bool,
    pub iso: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SquareReport {
    pub source: String,
    pub target: String,
    pub basis_size: usize,
    /// `dim Hom(ΣM₀(K^A), π ι(B))`, the space containing the obstruction.
    pub obstruction_space: usize,
    pub gamma_zero: usize,
    pub pass: bool,
}

/// The natural isomorphism `σ : M -> π ∘ ι` on a corpus.
#[derive(Clone, Debug)]
pub struct ComparisonCert<B: Triangulated> {
    pub sigmas: Vec<B::Mor>,
    pub sigma_reports: Vec<SigmaReport>,
    pub squares: Vec<SquareReport>,
}

impl<B: Triangulated> ComparisonCert<B> {
    pub fn pass(&self) -> bool {
        self.sigma_reports.iter().all(|s| s.left_square && s.found && s.iso) && self.squares.iter().all(|s| s.pass)
    }
}

/// `σ_A : M(A) -> π ι(A)` completing the morphism of triangles over the
/// presentation of `A`.
pub fn sigma<B: StalkEmbedding>(m: &Moore<B>, a: &Representation) -> Result<(B::Mor, SigmaReport)> {
    let b = m.backend();
    let c = m.m(a)?;
    let name = format!("{:?}", a.dims());
    if c.is_projective() {
        let s = sigma_projective(m, &c)?;
        let iso = b.is_iso(&s)?;
        return Ok((s, SigmaReport { module: name, left_square: true, found: true, iso }));
    }
    let (ck, cp) = (m.m(&c.k)?, m.m(&c.p)?);
    let (sk, sp) = (sigma_projective(m, &ck)?, sigma_projective(m, &cp)?);
    let target = b.embed_complex(&stalk(a)?);
    let pi_incl = b.embed_map(&stalk_map(&c.incl)?);
    let pi_proj = b.embed_map(&stalk_map(&c.proj)?);
    let left_square = b.equal(&b.compose(&pi_incl, &sk)?, &b.compose(&sp, &c.triangle.f)?)?;
    // the image triangle π ι(K) -> π ι(P) -> π ι(A) -> Σ π ι(K)
    let cone = b.cone(&pi_incl)?;
    let op = |x: &B::Mor| b.compose(x, &cone.g);
    let (theta, _) = solve_stacked(b, &cone.object, &target, &[(&op, &pi_proj)])?;
    let theta_inv = match theta.map(|t| b.inverse(&t)).transpose()?.flatten() {
        Some(t) => t,
        None => return Err(Error::cert("comparison", "cone of π ι(i^A) is not π ι(A)")),
    };
    let h_pi = b.compose(&cone.h, &theta_inv)?;
    let top = b.compose(&pi_proj, &sp)?;
    let bottom = b.compose(&b.shift_mor(&sk, 1)?, &c.triangle.h)?;
    let op_g = |x: &B::Mor| b.compose(x, &c.triangle.g);
    let op_h = |x: &B::Mor| b.compose(&h_pi, x);
    let (s, _) = solve_stacked(b, c.object(), &target, &[(&op_g, &top), (&op_h, &bottom)])?;
    let found = s.is_some();
    let s = s.unwrap_or_else(|| b.zero(c.object(), &target));
    let iso = found && b.is_iso(&s)?;
    Ok((s, SigmaReport { module: name, left_square, found, iso }))
}

/// Builds every `σ_A` and checks `π ι(a) ∘ σ_A = σ_B ∘ M(a)` on bases.
pub fn compare_embeddings<B: StalkEmbedding>(m: &Moore<B>, corpus: &Corpus) -> Result<ComparisonCert<B>> {
    let b = m.backend();
    let mut sigmas = Vec::new();
    let mut sigma_reports = Vec::new();
    for c in &corpus.modules {
        let (s, mut r) = sigma(m, &c.rep)?;
        r.module = c.name.clone();
        sigmas.push(s);
        sigma_reports.push(r);
    }
    let mut squares = Vec::new();
    for (i, x) in corpus.modules.iter().enumerate() {
        let cx = m.m(&x.rep)?;
        for (j, y) in corpus.modules.iter().enumerate() {
            let target = b.embed_complex(&stalk(&y.rep)?);
            let obstruction_space = b.hom_dim(&b.shift(&b.source(&cx.triangle.f), 1), &target)?;
            let h = hom_space(&x.rep, &y.rep);
            let mut gamma_zero = 0;
            for a in &h.basis {
                let lhs = b.compose(&b.embed_map(&stalk_map(a)?), &sigmas[i])?;
                let rhs = b.compose(&sigmas[j], &m.m_mor(a)?)?;
                if b.equal(&lhs, &rhs)? {
                    gamma_zero += 1;
                }
            }
            squares.push(SquareReport {
                source: x.name.clone(),
                target: y.name.clone(),
                basis_size: h.dim(),
                obstruction_space,
                gamma_zero,
                pass: gamma_zero == h.dim(),
            });
        }
    }
    Ok(ComparisonCert { sigmas, sigma_reports, squares })
}

/// Canonical image `π ι(A)` of a module.
pub fn canonical_embed<B: StalkEmbedding>(b: &B, a: &Representation) -> Result<B::Obj> {
    Ok(b.embed_complex(&stalk(a)?))
}

/// The check groups, in dependency order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Setup,
    Moore,
    Triangles,
    Delta,
    Keller,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Setup, Suite::Moore, Suite::Triangles, Suite::Delta, Suite::Keller];

    pub fn parse(s: &str) -> Result<Suite> {
        match s.trim() {
            "setup" => Ok(Suite::Setup),
            "moore" => Ok(Suite::Moore),
            "triangles" => Ok(Suite::Triangles),
            "delta" => Ok(Suite::Delta),
            "keller" => Ok(Suite::Keller),
            other => Err(Error::Config(format!("unknown suite `{other}`"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Setup => "setup",
            Suite::Moore => "moore",
            Suite::Triangles => "triangles",
            Suite::Delta => "delta",
            Suite::Keller => "keller",
        }
    }
}

/// One machine-checked statement.
#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub check_id: String,
    pub statement: &'static str,
    pub quiver: String,
    pub field: String,
    pub u: Option<i64>,
    pub backend: String,
    pub inputs: Vec<String>,
    pub dimensions: BTreeMap<String, serde_json::Value>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// The mathematical statement a check id certifies.
pub fn statement(check_id: &str) -> &'static str {
    let group = check_id.split('.').take(2).collect::<Vec<_>>().join(".");
    match group.as_str() {
        "setup.global_dimension" => "End(C)^op is hereditary of global dimension n <= 1",
        "setup.vanishing" => "Hom(C, Σ^i C) = 0 for 0 < |i| <= n + 1",
        "setup.gate" => "the vanishing the construction of M depends on holds",
        "setup.end" => "End(C)^op is isomorphic to the path algebra",
        "corpus.build" => "the corpus lists every indecomposable once",
        "moore.unit" => "the unit A -> Hom(C, M A) is an isomorphism",
        "moore.membership" => "M A lies in M_n",
        "moore.full_faithfulness" => "M is fully faithful",
        "moore.adjunction" => "Hom(M A, X) -> Hom(A, Hom(C, X)) is bijective",
        "moore.independence" => "M A does not depend on the presentation",
        "moore.functoriality" => "M preserves identities and composition",
        "moore.hypothesis" => "the inductive hypotheses hold at every step",
        "triangles.ses" => "a short exact sequence gives a distinguished triangle",
        "delta.map" => "Ext^n(A, B) -> Hom(M A, Σ^n M B) is an isomorphism for n = 0, 1",
        "delta.ladder_first" => "the long exact sequences in the first variable are compatible",
        "delta.ladder_second" => "the long exact sequences in the second variable are compatible",
        "keller.sigma" => "σ_A : M A -> π ι A is an isomorphism",
        "keller.square" => "σ is natural",
        "keller.window" => "orbit Hom is supported on the certified window",
        _ => "unclassified check",
    }
}

/// All records of one run.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub n: Option<usize>,
    pub corpus: Vec<String>,
    pub ses: Vec<String>,
    pub records: Vec<Record>,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn first_failure(&self) -> Option<&Record> {
        self.records.iter().find(|r| !r.pass)
    }

    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| !r.pass).count()
    }

    /// `(passed, total)` per check group.
    pub fn summary(&self) -> BTreeMap<String, (usize, usize)> {
        let mut out: BTreeMap<String, (usize, usize)> = BTreeMap::new();
        for r in &self.records {
            let group = r.check_id.split('.').take(2).collect::<Vec<_>>().join(".");
            let e = out.entry(group).or_default();
            e.1 += 1;
            if r.pass {
                e.0 += 1;
            }
        }
        out
    }

    pub fn group_pass(&self, prefix: &str) -> Option<bool> {
        let mut seen = false;
        for r in self.records.iter().filter(|r| r.check_id.starts_with(prefix)) {
            seen = true;
            if !r.pass {
                return Some(false);
            }
        }
        seen.then_some(true)
    }
}

struct Recorder {
    quiver: String,
    field: String,
    u: Option<i64>,
    backend: String,
    records: Vec<Record>,
}

type Dims = Vec<(&'static str, serde_json::Value)>;

impl Recorder {
    fn push(&mut self, id: String, inputs: Vec<String>, dims: Dims, pass: bool, witness: Option<String>) {
        let statement = statement(&id);
        self.records.push(Record {
            check_id: id,
            statement,
            quiver: self.quiver.clone(),
            field: self.field.clone(),
            u: self.u,
            backend: self.backend.clone(),
            inputs,
            dimensions: dims.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            pass,
            witness: if pass { None } else { witness },
        });
    }

    /// Records the outcome of a fallible check; an error is a failure
    /// with the error text as witness.
    fn check(&mut self, id: String, inputs: Vec<String>, f: impl FnOnce() -> Result<(Dims, bool, Option<String>)>) {
        match f() {
            Ok((dims, pass, w)) => self.push(id, inputs, dims, pass, w),
            Err(e) => self.push(id, inputs, Vec::new(), false, Some(e.to_string())),
        }
    }
}

fn v<T: Serialize>(x: T) -> serde_json::Value {
    serde_json::to_value(x).expect("plain data serializes")
}

/// Runs the requested suites on a backend. Setup gates the rest: when
/// the construction of `M` is not available the later suites are skipped
/// and the gate record fails.
pub fn run_suites<B: StalkEmbedding>(b: &B, quiver_name: &str, suites: &[Suite], seed: u64) -> Result<Report> {
    let mut rec = Recorder {
        quiver: quiver_name.to_string(),
        field: b.field().label(),
        u: b.u(),
        backend: b.label(),
        records: Vec::new(),
    };
    let mut report = Report::default();
    let want = |s: Suite| suites.contains(&s);

    let setup = crate::moore::check_setup(b)?;
    report.n = Some(setup.n);
    if want(Suite::Setup) {
        rec.push("setup.global_dimension".into(), vec![], vec![("n", v(setup.n))], setup.n <= 1, None);
        for t in &setup.table {
            rec.push(
                format!("setup.vanishing.{}", t.shift),
                vec![format!("Hom(C, Σ^{} C)", t.shift)],
                vec![("dim", v(t.dim))],
                t.dim == 0,
                Some(format!("dim Hom(C, Σ^{} C) = {}", t.shift, t.dim)),
            );
        }
        rec.check("setup.end".into(), vec![], || {
            let e = crate::moore::end_identify(b)?;
            let paths = b.quiver().num_paths();
            Ok((vec![("dim", v(e.dim)), ("paths", v(paths)), ("products", v(e.products_checked))], e.dim == paths, None))
        });
    }
    let gate_witness = format!("nonzero: {:?}", setup.nonzero());
    rec.push("setup.gate".into(), vec![], vec![("n", v(setup.n))], setup.gate, Some(gate_witness));
    if !setup.gate || suites.iter().all(|&s| s == Suite::Setup) {
        report.records = rec.records;
        return Ok(report);
    }

    let m = Moore::new(b)?;
    let corpus = match build_corpus(b.quiver(), b.field(), seed) {
        Ok(c) => c,
        Err(e) => {
            rec.push("corpus.build".into(), vec![], vec![], false, Some(e.to_string()));
            report.records = rec.records;
            return Ok(report);
        }
    };
    rec.push("corpus.build".into(), vec![], vec![("modules", v(corpus.len())), ("roots", v(corpus.roots))], true, None);
    report.corpus = corpus.modules.iter().map(|c| c.name.clone()).collect();
    let names: Vec<&str> = corpus.modules.iter().map(|c| c.name.as_str()).collect();

    if want(Suite::Moore) {
        moore_suite(&m, &corpus, &mut rec);
    }
    let needs_ses = want(Suite::Triangles) || want(Suite::Delta);
    let ses = if needs_ses { build_ses_corpus(&corpus, seed)? } else { Vec::new() };
    report.ses = ses.iter().map(|s| s.name.clone()).collect();
    if want(Suite::Triangles) {
        for s in &ses {
            rec.check(format!("triangles.ses.{}", s.name), vec![s.name.clone()], || {
                let t = ses_to_triangle(&m, &s.ses)?;
                let r = &t.report;
                Ok((
                    vec![("connecting_space", v(r.connecting_space)), ("dims", v(&r.dims))],
                    r.pass,
                    Some(format!("{r:?}")),
                ))
            });
        }
    }
    if want(Suite::Delta) {
        for (i, x) in corpus.modules.iter().enumerate() {
            for (j, y) in corpus.modules.iter().enumerate() {
                for n in 0..=1usize {
                    rec.check(format!("delta.map.{n}.{}.{}", names[i], names[j]), vec![x.name.clone(), y.name.clone()], || {
                        let (_, r) = delta_map(&m, &x.rep, &y.rep, n)?;
                        let pass = r.well_defined && r.rank == r.ext_dim && r.hom_dim == r.ext_dim;
                        Ok((vec![("ext", v(r.ext_dim)), ("hom", v(r.hom_dim)), ("rank", v(r.rank))], pass, Some(format!("{r:?}"))))
                    });
                }
            }
        }
        for s in &ses {
            for c in &corpus.modules {
                let inputs = vec![s.name.clone(), c.name.clone()];
                rec.check(format!("delta.ladder_first.{}.{}", s.name, c.name), inputs.clone(), || {
                    let r = ladder_first(&m, &s.ses, &c.rep)?;
                    Ok((vec![("squares", v(r.squares)), ("nonzero", v(r.nonzero))], r.pass(), Some(r.failures.join("; "))))
                });
                rec.check(format!("delta.ladder_second.{}.{}", c.name, s.name), inputs, || {
                    let r = ladder_second(&m, &c.rep, &s.ses)?;
                    Ok((vec![("squares", v(r.squares)), ("nonzero", v(r.nonzero))], r.pass(), Some(r.failures.join("; "))))
                });
            }
        }
    }
    if want(Suite::Keller) {
        keller_suite(&m, &corpus, &mut rec);
    }
    if want(Suite::Moore) {
        for h in m.hypothesis_log() {
            rec.push(
                format!("moore.hypothesis.{}.{}", h.item.name(), h.subject),
                vec![h.subject.clone()],
                vec![("dims", v(&h.dims))],
                h.pass,
                Some(format!("dims {:?}", h.dims)),
            );
        }
    }
    report.records = rec.records;
    Ok(report)
}

fn moore_suite<B: StalkEmbedding>(m: &Moore<B>, corpus: &Corpus, rec: &mut Recorder) {
    let b = m.backend();
    for c in &corpus.modules {
        rec.check(format!("moore.unit.{}", c.name), vec![c.name.clone()], || {
            let cert = m.m(&c.rep)?;
            let dims = cert.hom.rep.dims().to_vec();
            let pass = cert.unit.is_iso() && dims == c.rep.dims();
            Ok((vec![("hom_c", v(&dims)), ("module", v(c.rep.dims()))], pass, None))
        });
        rec.check(format!("moore.membership.{}", c.name), vec![c.name.clone()], || {
            let r = m.membership(m.m(&c.rep)?.object(), m.n())?;
            Ok((vec![("dims", v(&r.dims))], r.member, Some(format!("{:?}", r.dims))))
        });
        if m.m(&c.rep).map(|x| !x.is_projective()).unwrap_or(false) {
            rec.check(format!("moore.independence.{}", c.name), vec![c.name.clone()], || {
                let gens = projective_presentation(&c.rep)?.tops.len();
                let r = m.presentation_independence(&c.rep, &reverse_perm(gens))?;
                Ok((vec![("generators", v(gens))], r.found && r.unique && r.iso, Some(format!("{r:?}"))))
            });
        }
    }
    for (i, x) in corpus.modules.iter().enumerate() {
        for (j, y) in corpus.modules.iter().enumerate() {
            let inputs = vec![x.name.clone(), y.name.clone()];
            rec.check(format!("moore.full_faithfulness.{}.{}", x.name, y.name), inputs.clone(), || {
                let r = m.full_faithfulness(&x.rep, &y.rep)?;
                let pass = r.pass && r.hom_module == corpus.hom_dims[i][j];
                Ok((vec![("hom_module", v(r.hom_module)), ("hom_t", v(r.hom_t)), ("rank", v(r.rank))], pass, Some(format!("{r:?}"))))
            });
            rec.check(format!("moore.adjunction.{}.{}", x.name, y.name), inputs.clone(), || {
                let r = m.adjunction(&x.rep, m.m(&y.rep)?.object())?;
                Ok((vec![("hom_module", v(r.hom_module)), ("hom_t", v(r.hom_t)), ("rank", v(r.rank))], r.pass, Some(format!("{r:?}"))))
            });
            rec.check(format!("moore.hypothesis.uniqueness.{}.{}", x.name, y.name), inputs, || {
                let d = m.check_uniqueness(&x.rep, m.m(&y.rep)?.object(), &y.name)?;
                Ok((vec![("dim", v(d))], d.unwrap_or(0) == 0, None))
            });
        }
    }
    for (i, x) in corpus.modules.iter().enumerate() {
        rec.check(format!("moore.functoriality.identity.{}", x.name), vec![x.name.clone()], || {
            let id = RepMorphism::identity(&x.rep);
            let mi = m.m_mor(&id)?;
            Ok((vec![], b.equal(&mi, &b.identity(m.m(&x.rep)?.object()))?, None))
        });
        for (j, y) in corpus.modules.iter().enumerate() {
            if corpus.hom_dims[i][j] == 0 {
                continue;
            }
            for z in &corpus.modules {
                let h1 = hom_space(&x.rep, &y.rep);
                let h2 = hom_space(&y.rep, &z.rep);
                if h2.dim() == 0 {
                    continue;
                }
                let inputs = vec![x.name.clone(), y.name.clone(), z.name.clone()];
                rec.check(format!("moore.functoriality.compose.{}.{}.{}", x.name, y.name, z.name), inputs, || {
                    let mut fails = 0;
                    for f in &h1.basis {
                        for g in &h2.basis {
                            let lhs = m.m_mor(&g.compose(f)?)?;
                            let rhs = b.compose(&m.m_mor(g)?, &m.m_mor(f)?)?;
                            if !b.equal(&lhs, &rhs)? {
                                fails += 1;
                            }
                        }
                    }
                    Ok((vec![("pairs", v(h1.dim() * h2.dim())), ("failures", v(fails))], fails == 0, None))
                });
            }
        }
    }
}

fn reverse_perm(n: usize) -> Vec<usize> {
    (0..n).rev().collect()
}

fn keller_suite<B: StalkEmbedding>(m: &Moore<B>, corpus: &Corpus, rec: &mut Recorder) {
    let b = m.backend();
    match compare_embeddings(m, corpus) {
        Ok(cert) => {
            for s in &cert.sigma_reports {
                let pass = s.left_square && s.found && s.iso;
                rec.push(format!("keller.sigma.{}", s.module), vec![s.module.clone()], vec![], pass, Some(format!("{s:?}")));
            }
            for s in &cert.squares {
                rec.push(
                    format!("keller.square.{}.{}", s.source, s.target),
                    vec![s.source.clone(), s.target.clone()],
                    vec![
                        ("basis", v(s.basis_size)),
                        ("commuting", v(s.gamma_zero)),
                        ("obstruction_space", v(s.obstruction_space)),
                    ],
                    s.pass,
                    Some(format!("{} of {} basis squares commute", s.gamma_zero, s.basis_size)),
                );
            }
        }
        Err(e) => rec.push("keller.sigma".into(), vec![], vec![], false, Some(e.to_string())),
    }
    for x in &corpus.modules {
        for y in &corpus.modules {
            let id = format!("keller.window.{}.{}", x.name, y.name);
            rec.check(id, vec![x.name.clone(), y.name.clone()], || {
                let (ox, oy) = (canonical_embed(b, &x.rep)?, canonical_embed(b, &y.rep)?);
                Ok(match b.window_agreement(&ox, &oy)? {
                    Some((d, wide)) => (vec![("window", v(d)), ("wide", v(wide))], d == wide, None),
                    None => (vec![("dim", v(b.hom_dim(&ox, &oy)?))], true, None),
                })
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;

    fn q(x: Quiver) -> Arc<Quiver> {
        Arc::new(x)
    }

    #[test]
    fn corpus_sizes() {
        let f = Field::Rational;
        let a2 = build_corpus(&q(Quiver::linear(2)), f, 1).unwrap();
        let names: Vec<_> = a2.modules.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, ["P1", "P2", "S1"]);
        assert_eq!(build_corpus(&q(Quiver::linear(3)), f, 1).unwrap().len(), 6);
        assert_eq!(build_corpus(&q(Quiver::d4()), Field::Prime(5), 1).unwrap().len(), 12);
        let kronecker = Quiver::new(2, vec![(0, 1), (0, 1)]).unwrap();
        assert!(build_corpus(&q(kronecker), f, 1).is_err());
    }

    #[test]
    fn ses_corpus_a2() {
        let c = build_corpus(&q(Quiver::linear(2)), Field::Rational, 1).unwrap();
        let s = build_ses_corpus(&c, 1).unwrap();
        assert_eq!(s.len(), 1, "{:?}", s.iter().map(|s| &s.name).collect::<Vec<_>>());
    }

    #[test]
    fn keller_a2() {
        let quiver = q(Quiver::linear(2));
        for u in [2, 3] {
            let b = ClusterBackend::new(quiver.clone(), Field::Rational, u);
            let m = Moore::new(&b).unwrap();
            let c = build_corpus(&quiver, Field::Rational, 1).unwrap();
            let cert = compare_embeddings(&m, &c).unwrap();
            assert!(cert.pass(), "{:?} {:?}", cert.sigma_reports, cert.squares);
        }
        let d = DerivedBackend::new(quiver.clone(), Field::Rational);
        let m = Moore::new(&d).unwrap();
        let c = build_corpus(&quiver, Field::Rational, 1).unwrap();
        assert!(compare_embeddings(&m, &c).unwrap().pass());
    }

    #[test]
    fn canonical_embed_simple() {
        let quiver = q(Quiver::linear(2));
        let d = DerivedBackend::new(quiver.clone(), Field::Rational);
        let s = simple(&quiver, Field::Rational, 0).unwrap();
        let x = canonical_embed(&d, &s).unwrap();
        assert_eq!(x.term(-1), &[1]);
        assert_eq!(x.term(0), &[0]);
        assert!(d.is_zero_object(&canonical_embed(&d, &Representation::zero(quiver.clone(), Field::Rational)).unwrap()).unwrap());
    }

    #[test]
    fn run_a2() {
        let quiver = q(Quiver::linear(2));
        let b = ClusterBackend::new(quiver, Field::Prime(5), 3);
        let r = run_suites(&b, "A2", &Suite::ALL, 7).unwrap();
        assert!(r.pass(), "{:?}", r.first_failure());
        assert_eq!(r.corpus.len(), 3);
    }
}
