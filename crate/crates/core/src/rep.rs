//! Finite-dimensional representations of an acyclic quiver and their
//! morphisms.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};
use crate::quiver::Quiver;

/// One vector space per vertex and one matrix per arrow, shaped
/// `dim(target) x dim(source)`.
#[derive(Clone)]
pub struct Representation {
    quiver: Arc<Quiver>,
    field: Field,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl PartialEq for Representation {
    fn eq(&self, o: &Self) -> bool {
        (Arc::ptr_eq(&self.quiver, &o.quiver) || self.quiver == o.quiver)
            && self.field == o.field
            && self.dims == o.dims
            && self.maps == o.maps
    }
}

impl Eq for Representation {}

impl std::hash::Hash for Representation {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.field.hash(h);
        self.dims.hash(h);
        self.maps.hash(h);
    }
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rep{:?}", self.dims)
    }
}

impl Representation {
    pub fn new(quiver: Arc<Quiver>, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Representation> {
        if dims.len() != quiver.num_vertices() {
            return Err(Error::Dimension(format!(
                "{} dimensions for {} vertices",
                dims.len(),
                quiver.num_vertices()
            )));
        }
        if maps.len() != quiver.arrows().len() {
            return Err(Error::Dimension(format!("{} maps for {} arrows", maps.len(), quiver.arrows().len())));
        }
        let field = match maps.first() {
            Some(m) => m.field(),
            None => return Err(Error::Dimension("field is ambiguous without arrows; use with_field".into())),
        };
        Representation::build(quiver, field, dims, maps)
    }

    pub fn with_field(quiver: Arc<Quiver>, field: Field, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Representation> {
        if dims.len() != quiver.num_vertices() || maps.len() != quiver.arrows().len() {
            return Err(Error::Dimension("dimension vector or arrow maps do not fit the quiver".into()));
        }
        Representation::build(quiver, field, dims, maps)
    }

    fn build(quiver: Arc<Quiver>, field: Field, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Representation> {
        for (a, (&(s, t), m)) in quiver.arrows().iter().zip(&maps).enumerate() {
            if m.rows() != dims[t] || m.cols() != dims[s] {
                return Err(Error::Dimension(format!(
                    "arrow {} map is {}x{}, expected {}x{}",
                    a,
                    m.rows(),
                    m.cols(),
                    dims[t],
                    dims[s]
                )));
            }
            if m.field() != field {
                return Err(Error::Dimension(format!("arrow {a} map is over {}", m.field())));
            }
        }
        Ok(Representation { quiver, field, dims, maps })
    }

    pub fn zero(quiver: Arc<Quiver>, field: Field) -> Representation {
        let dims = vec![0; quiver.num_vertices()];
        let maps = quiver.arrows().iter().map(|_| Matrix::zeros(field, 0, 0)).collect();
        Representation { quiver, field, dims, maps }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn arrow_map(&self, a: usize) -> &Matrix {
        &self.maps[a]
    }

    pub fn arrow_maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// The linear map along a path (identity on trivial paths).
    pub fn path_map(&self, p: usize) -> Matrix {
        let path = self.quiver.path(p);
        let mut m = Matrix::identity(self.field, self.dims[path.start]);
        for &a in &path.arrows {
            m = self.maps[a].mul(&m);
        }
        m
    }

    /// `self ⊕ other` with its canonical inclusions and projections.
    pub fn direct_sum(&self, o: &Representation) -> DirectSum {
        let f = self.field;
        let dims: Vec<usize> = self.dims.iter().zip(&o.dims).map(|(a, b)| a + b).collect();
        let maps = self
            .maps
            .iter()
            .zip(&o.maps)
            .map(|(a, b)| {
                let top = a.hstack(&Matrix::zeros(f, a.rows(), b.cols()));
                let bot = Matrix::zeros(f, b.rows(), a.cols()).hstack(b);
                top.vstack(&bot)
            })
            .collect();
        let sum = Representation { quiver: self.quiver.clone(), field: f, dims, maps };
        let n = self.quiver.num_vertices();
        let block = |v: usize, first: bool| {
            let (a, b) = (self.dims[v], o.dims[v]);
            let k = if first { a } else { b };
            Matrix::from_fn(f, a + b, k, |r, c| {
                let hit = if first { r == c } else { r == a + c };
                if hit { f.one() } else { f.zero() }
            })
        };
        let i1 = RepMorphism::new(self.clone(), sum.clone(), (0..n).map(|v| block(v, true)).collect());
        let i2 = RepMorphism::new(o.clone(), sum.clone(), (0..n).map(|v| block(v, false)).collect());
        let p1 = RepMorphism::new(sum.clone(), self.clone(), (0..n).map(|v| block(v, true).transpose()).collect());
        let p2 = RepMorphism::new(sum.clone(), o.clone(), (0..n).map(|v| block(v, false).transpose()).collect());
        DirectSum { sum, inclusions: [i1, i2], projections: [p1, p2] }
    }

    /// Subrepresentation spanned at each vertex by the columns of `bases[v]`
    /// (assumed linearly independent and arrow-stable), with its inclusion.
    pub fn subrep(&self, bases: &[Matrix]) -> Result<(Representation, RepMorphism)> {
        let mut maps = Vec::with_capacity(self.maps.len());
        for (a, &(s, t)) in self.quiver.arrows().iter().enumerate() {
            let img = self.maps[a].mul(&bases[s]);
            let mut m = Matrix::zeros(self.field, bases[t].cols(), bases[s].cols());
            for c in 0..img.cols() {
                let x = bases[t]
                    .solve(&img.column(c))?
                    .ok_or_else(|| Error::Dimension(format!("subspace not stable under arrow {a}")))?;
                for (r, val) in x.into_iter().enumerate() {
                    m.set(r, c, val);
                }
            }
            maps.push(m);
        }
        let dims = bases.iter().map(Matrix::cols).collect();
        let sub = Representation { quiver: self.quiver.clone(), field: self.field, dims, maps };
        let incl = RepMorphism::new(sub.clone(), self.clone(), bases.to_vec());
        Ok((sub, incl))
    }

    /// Quotient by the arrow-stable subspaces `bases[v]`, with its projection.
    pub fn quotient(&self, bases: &[Matrix]) -> (Representation, RepMorphism) {
        let f = self.field;
        let n = self.quiver.num_vertices();
        // complement coordinates: columns of the identity not in the span
        let mut proj = Vec::with_capacity(n);
        for v in 0..n {
            let id = Matrix::identity(f, self.dims[v]);
            let comp = id.complement_columns(&bases[v]);
            let full = bases[v].hstack(&id.select(&(0..self.dims[v]).collect::<Vec<_>>(), &comp));
            let inv = full.inverse().expect("basis plus complement is invertible");
            let rows: Vec<usize> = (bases[v].cols()..self.dims[v]).collect();
            proj.push(inv.select(&rows, &(0..self.dims[v]).collect::<Vec<_>>()));
        }
        let mut maps = Vec::with_capacity(self.maps.len());
        for (a, &(s, t)) in self.quiver.arrows().iter().enumerate() {
            // section of proj[s]: the complement basis vectors
            let id = Matrix::identity(f, self.dims[s]);
            let comp = id.complement_columns(&bases[s]);
            let sect = id.select(&(0..self.dims[s]).collect::<Vec<_>>(), &comp);
            maps.push(proj[t].mul(&self.maps[a]).mul(&sect));
        }
        let dims = proj.iter().map(Matrix::rows).collect();
        let q = Representation { quiver: self.quiver.clone(), field: f, dims, maps };
        let p = RepMorphism::new(self.clone(), q.clone(), proj);
        (q, p)
    }

    /// The `k`-fold direct sum, without structure maps.
    pub fn power(&self, k: usize) -> Representation {
        let mut out = Representation::zero(self.quiver.clone(), self.field);
        for _ in 0..k {
            out = out.direct_sum(self).sum;
        }
        out
    }
}

/// A binary direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub sum: Representation,
    pub inclusions: [RepMorphism; 2],
    pub projections: [RepMorphism; 2],
}

/// A morphism of representations: one matrix per vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RepMorphism {
    source: Representation,
    target: Representation,
    comps: Vec<Matrix>,
}

impl fmt::Debug for RepMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RepMorphism({:?} -> {:?})", self.source, self.target)
    }
}

impl RepMorphism {
    pub fn new(source: Representation, target: Representation, comps: Vec<Matrix>) -> RepMorphism {
        debug_assert_eq!(comps.len(), source.quiver.num_vertices());
        for (v, c) in comps.iter().enumerate() {
            assert!(
                c.rows() == target.dims[v] && c.cols() == source.dims[v],
                "component at vertex {v} has the wrong shape"
            );
        }
        RepMorphism { source, target, comps }
    }

    pub fn zero(source: &Representation, target: &Representation) -> RepMorphism {
        let f = source.field;
        let comps = (0..source.quiver.num_vertices())
            .map(|v| Matrix::zeros(f, target.dims[v], source.dims[v]))
            .collect();
        RepMorphism::new(source.clone(), target.clone(), comps)
    }

    pub fn identity(m: &Representation) -> RepMorphism {
        let comps = m.dims.iter().map(|&d| Matrix::identity(m.field, d)).collect();
        RepMorphism::new(m.clone(), m.clone(), comps)
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn component(&self, v: usize) -> &Matrix {
        &self.comps[v]
    }

    pub fn components(&self) -> &[Matrix] {
        &self.comps
    }

    /// Checks the commuting squares for every arrow.
    pub fn is_morphism(&self) -> bool {
        self.source.quiver.arrows().iter().enumerate().all(|(a, &(s, t))| {
            self.comps[t].mul(&self.source.maps[a]) == self.target.maps[a].mul(&self.comps[s])
        })
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Matrix::is_zero)
    }

    pub fn is_iso(&self) -> bool {
        self.source.dims == self.target.dims && self.comps.iter().all(|c| c.rank() == c.rows())
    }

    pub fn inverse(&self) -> Option<RepMorphism> {
        if self.source.dims != self.target.dims {
            return None;
        }
        let comps = self.comps.iter().map(Matrix::inverse).collect::<Option<Vec<_>>>()?;
        Some(RepMorphism::new(self.target.clone(), self.source.clone(), comps))
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &RepMorphism) -> Result<RepMorphism> {
        if g.target.dims != self.source.dims {
            return Err(Error::NotComposable(format!("{:?} after {:?}", self, g)));
        }
        let comps = self.comps.iter().zip(&g.comps).map(|(a, b)| a.mul(b)).collect();
        Ok(RepMorphism::new(g.source.clone(), self.target.clone(), comps))
    }

    pub fn add(&self, o: &RepMorphism) -> RepMorphism {
        let comps = self.comps.iter().zip(&o.comps).map(|(a, b)| a.add(b)).collect();
        RepMorphism::new(self.source.clone(), self.target.clone(), comps)
    }

    pub fn sub(&self, o: &RepMorphism) -> RepMorphism {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> RepMorphism {
        self.scale(&-self.source.field.one())
    }

    pub fn scale(&self, s: &Scalar) -> RepMorphism {
        let comps = self.comps.iter().map(|c| c.scale(s)).collect();
        RepMorphism::new(self.source.clone(), self.target.clone(), comps)
    }

    /// Components flattened vertex by vertex, column-major.
    pub fn to_vector(&self) -> Vec<Scalar> {
        let mut out = Vec::new();
        for c in &self.comps {
            for j in 0..c.cols() {
                out.extend(c.column(j));
            }
        }
        out
    }

    pub fn from_vector(source: &Representation, target: &Representation, x: &[Scalar]) -> RepMorphism {
        let mut comps = Vec::new();
        let mut k = 0;
        for v in 0..source.quiver.num_vertices() {
            let mut m = Matrix::zeros(source.field, target.dims[v], source.dims[v]);
            for j in 0..source.dims[v] {
                for i in 0..target.dims[v] {
                    m.set(i, j, x[k].clone());
                    k += 1;
                }
            }
            comps.push(m);
        }
        RepMorphism::new(source.clone(), target.clone(), comps)
    }

    /// Image subspaces and the kernel as a subrepresentation.
    pub fn kernel(&self) -> Result<(Representation, RepMorphism)> {
        let f = self.source.field;
        let bases: Vec<Matrix> = self
            .comps
            .iter()
            .map(|c| Matrix::from_columns(f, c.cols(), &c.kernel_basis()))
            .collect();
        self.source.subrep(&bases)
    }

    pub fn image_bases(&self) -> Vec<Matrix> {
        self.comps
            .iter()
            .map(|c| {
                let e = c.echelon();
                let all: Vec<usize> = (0..c.rows()).collect();
                c.select(&all, &e.pivots)
            })
            .collect()
    }

    pub fn cokernel(&self) -> (Representation, RepMorphism) {
        self.target.quotient(&self.image_bases())
    }
}

/// A basis of a space of representation morphisms, with coordinates.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: Representation,
    pub target: Representation,
    pub basis: Vec<RepMorphism>,
    matrix: Matrix,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coords(&self, f: &RepMorphism) -> Result<Vec<Scalar>> {
        self.matrix
            .solve(&f.to_vector())?
            .ok_or_else(|| Error::Dimension("morphism is not in the span of the basis".into()))
    }

    pub fn combine(&self, c: &[Scalar]) -> RepMorphism {
        let mut out = RepMorphism::zero(&self.source, &self.target);
        for (b, x) in self.basis.iter().zip(c) {
            if !x.is_zero() {
                out = out.add(&b.scale(x));
            }
        }
        out
    }
}

/// Basis of `Hom(M, N)` from the commuting-square linear system.
pub fn hom_space(m: &Representation, n: &Representation) -> HomSpace {
    let f = m.field;
    let q = &m.quiver;
    let nv = q.num_vertices();
    let mut off = vec![0; nv + 1];
    for v in 0..nv {
        off[v + 1] = off[v] + n.dims[v] * m.dims[v];
    }
    let unknowns = off[nv];
    // index of entry (i, j) of the component at v
    let idx = |v: usize, i: usize, j: usize| off[v] + j * n.dims[v] + i;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (a, &(s, t)) in q.arrows().iter().enumerate() {
        // N(a) f_s - f_t M(a) = 0, entry (i, j): i < dim N_t, j < dim M_s
        for i in 0..n.dims[t] {
            for j in 0..m.dims[s] {
                let mut row = vec![f.zero(); unknowns];
                for k in 0..n.dims[s] {
                    row[idx(s, k, j)] += n.maps[a].get(i, k);
                }
                for k in 0..m.dims[t] {
                    let c = -m.maps[a].get(k, j);
                    row[idx(t, i, k)] += &c;
                }
                rows.push(row);
            }
        }
    }
    let sys = Matrix::from_fn(f, rows.len(), unknowns, |r, c| rows[r][c].clone());
    let kb = sys.kernel_basis();
    let basis: Vec<RepMorphism> = kb.iter().map(|x| RepMorphism::from_vector(m, n, x)).collect();
    let matrix = Matrix::from_columns(f, unknowns, &kb);
    HomSpace { source: m.clone(), target: n.clone(), basis, matrix }
}

pub fn indecomposable_projective(q: &Arc<Quiver>, field: Field, v: usize) -> Result<Representation> {
    q.check_vertex(v)?;
    Ok(crate::pathalg::realize_summands(&vec![v], crate::pathalg::Kind::Projective, q, field))
}

pub fn indecomposable_injective(q: &Arc<Quiver>, field: Field, v: usize) -> Result<Representation> {
    q.check_vertex(v)?;
    Ok(crate::pathalg::realize_summands(&vec![v], crate::pathalg::Kind::Injective, q, field))
}

pub fn simple(q: &Arc<Quiver>, field: Field, v: usize) -> Result<Representation> {
    q.check_vertex(v)?;
    let dims = (0..q.num_vertices()).map(|w| usize::from(w == v)).collect::<Vec<_>>();
    let maps = q.arrows().iter().map(|&(s, t)| Matrix::zeros(field, dims[t], dims[s])).collect();
    Representation::with_field(q.clone(), field, dims, maps)
}

/// `H = ⊕_v P_v` as a representation.
pub fn regular(q: &Arc<Quiver>, field: Field) -> Representation {
    let all: Vec<usize> = (0..q.num_vertices()).collect();
    crate::pathalg::realize_summands(&all, crate::pathalg::Kind::Projective, q, field)
}

/// The Yoneda morphism `⊕ P_{v_i} -> M` sending the generator of the
/// `i`-th summand to `elems[i] ∈ M_{v_i}`.
pub fn map_from_projective(summands: &[usize], elems: &[Vec<Scalar>], m: &Representation) -> RepMorphism {
    use crate::pathalg::{realize_summands, Kind};
    let q = m.quiver.clone();
    let p = realize_summands(&summands.to_vec(), Kind::Projective, &q, m.field);
    let mut comps = Vec::new();
    for w in 0..q.num_vertices() {
        let mut mat = Matrix::zeros(m.field, m.dims[w], p.dims[w]);
        let mut col = 0;
        for (i, &v) in summands.iter().enumerate() {
            for &r in q.between(v, w) {
                let img = m.path_map(r).mul_vec(&elems[i]);
                for (row, x) in img.into_iter().enumerate() {
                    mat.set(row, col, x);
                }
                col += 1;
            }
        }
        comps.push(mat);
    }
    RepMorphism::new(p, m.clone(), comps)
}

/// The chosen projective presentation `0 -> K -> P -> A -> 0` with `P` the
/// projective cover.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub a: Representation,
    /// Vertex list of `P`'s indecomposable summands.
    pub tops: Vec<usize>,
    pub p: Representation,
    pub k: Representation,
    pub incl: RepMorphism,
    pub proj: RepMorphism,
}

impl Presentation {
    pub fn is_exact(&self) -> bool {
        let q = self.a.quiver();
        (0..q.num_vertices()).all(|v| {
            let (i, p) = (self.incl.component(v), self.proj.component(v));
            i.rank() == self.k.dim(v)
                && p.rank() == self.a.dim(v)
                && self.p.dim(v) == self.k.dim(v) + self.a.dim(v)
                && p.mul(i).is_zero()
        })
    }
}

/// Top generators of `A`: for each vertex, vectors complementing the
/// images of incoming arrows. Ordered by vertex, then basis index.
pub fn top_generators(a: &Representation) -> (Vec<usize>, Vec<Vec<Scalar>>) {
    let q = &a.quiver;
    let f = a.field;
    let (mut tops, mut elems) = (Vec::new(), Vec::new());
    for v in 0..q.num_vertices() {
        let mut rad = Matrix::zeros(f, a.dims[v], 0);
        for (ar, &(_, t)) in q.arrows().iter().enumerate() {
            if t == v {
                rad = rad.hstack(&a.maps[ar]);
            }
        }
        let id = Matrix::identity(f, a.dims[v]);
        for c in id.complement_columns(&rad) {
            tops.push(v);
            elems.push(id.column(c));
        }
    }
    (tops, elems)
}

/// Projective presentation with the generators reordered by `perm`
/// (`perm[i]` is the position of the `i`-th new generator in the default
/// order), or the default order when `perm` is `None`.
pub fn projective_presentation_with(a: &Representation, perm: Option<&[usize]>) -> Result<Presentation> {
    let (mut tops, mut elems) = top_generators(a);
    if let Some(perm) = perm {
        if perm.len() != tops.len() {
            return Err(Error::Dimension("permutation length differs from the number of generators".into()));
        }
        tops = perm.iter().map(|&i| tops[i]).collect();
        elems = perm.iter().map(|&i| elems[i].clone()).collect();
    }
    let proj = map_from_projective(&tops, &elems, a);
    let (k, incl) = proj.kernel()?;
    let pres = Presentation { a: a.clone(), tops, p: proj.source().clone(), k, incl, proj };
    debug_assert!(pres.is_exact());
    Ok(pres)
}

pub fn projective_presentation(a: &Representation) -> Result<Presentation> {
    projective_presentation_with(a, None)
}

/// For a projective `P`: the vertex list and an isomorphism
/// `⊕ P_{v_i} -> P`; `NotProjective` otherwise.
pub fn projective_decomposition(p: &Representation) -> Result<(Vec<usize>, RepMorphism)> {
    let (tops, elems) = top_generators(p);
    let cover = map_from_projective(&tops, &elems, p);
    if !cover.is_iso() {
        return Err(Error::NotProjective(format!("{:?}", p.dims())));
    }
    Ok((tops, cover))
}

pub fn is_projective(m: &Representation) -> bool {
    projective_decomposition(m).is_ok()
}

/// Projective dimension, by iterating projective covers.
pub fn projective_dimension(m: &Representation) -> Result<usize> {
    let mut cur = m.clone();
    for d in 0..=m.quiver().num_vertices() + 1 {
        if is_projective(&cur) {
            return Ok(d);
        }
        cur = projective_presentation(&cur)?.k;
    }
    Err(Error::Dimension("projective dimension exceeds the quiver bound".into()))
}

pub fn global_dimension(q: &Arc<Quiver>, field: Field) -> Result<usize> {
    let mut g = 0;
    for v in 0..q.num_vertices() {
        g = g.max(projective_dimension(&simple(q, field, v)?)?);
    }
    Ok(g)
}

/// `Ext^n(M, N)` as a quotient of `Hom(K^M, N)`.
#[derive(Clone, Debug)]
pub struct ExtSpace {
    pub n: usize,
    pub dim: usize,
    pub presentation: Option<Presentation>,
    /// `Hom(K^M, N)`, when `n = 1`.
    pub hom_k: Option<HomSpace>,
    /// Representatives in `Hom(K^M, N)` of a basis of the quotient.
    pub representatives: Vec<RepMorphism>,
    // columns: image of Hom(P, N) then representatives, in hom_k coordinates
    span: Option<Matrix>,
    image_rank: usize,
}

impl ExtSpace {
    /// Coordinates of the class of `phi: K^M -> N` (n = 1 only).
    pub fn coords(&self, phi: &RepMorphism) -> Result<Vec<Scalar>> {
        match (&self.hom_k, &self.span) {
            (Some(h), Some(span)) => {
                let x = h.coords(phi)?;
                let y = span.solve(&x)?.ok_or_else(|| Error::Dimension("class not in span".into()))?;
                Ok(y[self.image_rank..].to_vec())
            }
            _ => Ok(Vec::new()),
        }
    }
}

pub fn ext_space(m: &Representation, n_rep: &Representation, n: usize) -> Result<ExtSpace> {
    match n {
        0 => {
            let h = hom_space(m, n_rep);
            Ok(ExtSpace {
                n,
                dim: h.dim(),
                presentation: None,
                representatives: h.basis.clone(),
                hom_k: None,
                span: None,
                image_rank: 0,
            })
        }
        1 => {
            let pres = projective_presentation(m)?;
            let hk = hom_space(&pres.k, n_rep);
            let hp = hom_space(&pres.p, n_rep);
            let f = m.field();
            let restricted: Vec<Vec<Scalar>> = hp
                .basis
                .iter()
                .map(|g| hk.coords(&g.compose(&pres.incl).expect("composable")))
                .collect::<Result<_>>()?;
            let img = Matrix::from_columns(f, hk.dim(), &restricted);
            let e = img.echelon();
            let all: Vec<usize> = (0..hk.dim()).collect();
            let img_basis = img.select(&all, &e.pivots);
            let comp = Matrix::identity(f, hk.dim()).complement_columns(&img_basis);
            let reps: Vec<RepMorphism> = comp.iter().map(|&c| hk.basis[c].clone()).collect();
            let span = img_basis.hstack(&Matrix::identity(f, hk.dim()).select(&all, &comp));
            Ok(ExtSpace {
                n,
                dim: reps.len(),
                presentation: Some(pres),
                representatives: reps,
                hom_k: Some(hk),
                span: Some(span),
                image_rank: e.pivots.len(),
            })
        }
        _ => {
            // hereditary: every projective presentation has projective kernel
            Ok(ExtSpace {
                n,
                dim: 0,
                presentation: None,
                representatives: Vec::new(),
                hom_k: None,
                span: None,
                image_rank: 0,
            })
        }
    }
}

/// `τ⁻¹M = coker(ν⁻¹ I0 -> ν⁻¹ I1)` for the standard injective coresolution.
pub fn ar_translate_inverse(m: &Representation) -> Representation {
    use crate::pathalg::{std_injective, Kind};
    let res = std_injective(m);
    let d = res.d.realize(Kind::Projective, m.quiver(), m.field());
    d.cokernel().0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Arc<Quiver> {
        Arc::new(Quiver::linear(2))
    }

    #[test]
    fn projectives_of_a2() {
        let q = a2();
        let f = Field::Rational;
        let p1 = indecomposable_projective(&q, f, 0).unwrap();
        assert_eq!(p1.dims(), &[1, 1]);
        assert!(p1.arrow_map(0).is_identity());
        assert_eq!(indecomposable_projective(&q, f, 1).unwrap().dims(), &[0, 1]);
        let pt = Arc::new(Quiver::linear(1));
        assert_eq!(indecomposable_projective(&pt, f, 0).unwrap().dims(), &[1]);
        assert!(indecomposable_projective(&q, f, 2).is_err());
    }

    #[test]
    fn hom_dimensions_a2() {
        let q = a2();
        let f = Field::Rational;
        let p1 = indecomposable_projective(&q, f, 0).unwrap();
        let p2 = indecomposable_projective(&q, f, 1).unwrap();
        assert_eq!(hom_space(&p1, &p2).dim(), 0);
        assert_eq!(hom_space(&p2, &p1).dim(), 1);
        assert_eq!(hom_space(&p1, &p1).dim(), 1);
        for b in &hom_space(&p2, &p1).basis {
            assert!(b.is_morphism());
        }
    }

    #[test]
    fn presentations_a2() {
        let q = a2();
        let f = Field::Rational;
        let p1 = indecomposable_projective(&q, f, 0).unwrap();
        let pr = projective_presentation(&p1).unwrap();
        assert_eq!(pr.tops, vec![0]);
        assert!(pr.k.is_zero());
        let s1 = simple(&q, f, 0).unwrap();
        let pr = projective_presentation(&s1).unwrap();
        assert_eq!(pr.tops, vec![0]);
        assert_eq!(pr.k.dims(), &[0, 1]);
        assert!(pr.is_exact());
        let z = Representation::zero(q.clone(), f);
        let pr = projective_presentation(&z).unwrap();
        assert!(pr.p.is_zero() && pr.k.is_zero());
    }

    #[test]
    fn global_dimensions() {
        let f = Field::Rational;
        assert_eq!(global_dimension(&a2(), f).unwrap(), 1);
        assert_eq!(global_dimension(&Arc::new(Quiver::linear(1)), f).unwrap(), 0);
        assert_eq!(global_dimension(&Arc::new(Quiver::linear(3)), f).unwrap(), 1);
    }

    #[test]
    fn ext_a2() {
        let q = a2();
        let f = Field::Rational;
        let s1 = simple(&q, f, 0).unwrap();
        let p1 = indecomposable_projective(&q, f, 0).unwrap();
        let p2 = indecomposable_projective(&q, f, 1).unwrap();
        assert_eq!(ext_space(&s1, &p2, 1).unwrap().dim, 1);
        for m in [&s1, &p1, &p2] {
            assert_eq!(ext_space(&p1, m, 1).unwrap().dim, 0);
            assert_eq!(ext_space(m, &s1, 2).unwrap().dim, 0);
        }
    }

    #[test]
    fn tau_inverse_a2() {
        let q = a2();
        let f = Field::Rational;
        let s1 = simple(&q, f, 0).unwrap();
        let p2 = indecomposable_projective(&q, f, 1).unwrap();
        assert_eq!(ar_translate_inverse(&p2).dims(), &[1, 0]);
        assert!(ar_translate_inverse(&s1).is_zero());
        assert!(ar_translate_inverse(&Representation::zero(q, f)).is_zero());
    }

    #[test]
    fn kernel_and_cokernel() {
        let q = a2();
        let f = Field::Rational;
        let p1 = indecomposable_projective(&q, f, 0).unwrap();
        let p2 = indecomposable_projective(&q, f, 1).unwrap();
        let i = hom_space(&p2, &p1).basis[0].clone();
        let (c, pr) = i.cokernel();
        assert_eq!(c.dims(), &[1, 0]);
        assert!(pr.is_morphism());
        let (k, incl) = pr.kernel().unwrap();
        assert_eq!(k.dims(), &[0, 1]);
        assert!(incl.is_morphism());
    }
}
