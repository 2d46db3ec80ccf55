//! Bounded complexes of finitely generated projectives, chain maps, and
//! morphisms up to homotopy.
//!
//! Grading is cohomological: `d^k : X^k -> X^{k+1}`. `Σ` shifts degrees
//! down by one and negates differentials; the cone of `f : X -> Y` is
//! `X^{k+1} ⊕ Y^k` with differential `[[-d_X, 0], [f, d_Y]]`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};
use crate::pathalg::{Kind, PathElem, PathMatrix, Summands};
use crate::quiver::Quiver;
use crate::rep::RepMorphism;

/// A bounded complex whose degree-`k` term is `⊕ P_v` over `term(k)`.
#[derive(Clone)]
pub struct ProjComplex {
    quiver: Arc<Quiver>,
    field: Field,
    lo: i64,
    terms: Vec<Summands>,
    diffs: Vec<PathMatrix>,
}

impl PartialEq for ProjComplex {
    fn eq(&self, o: &Self) -> bool {
        self.field == o.field && self.lo == o.lo && self.terms == o.terms && self.diffs == o.diffs
    }
}

impl Eq for ProjComplex {}

impl std::hash::Hash for ProjComplex {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.lo.hash(h);
        self.terms.hash(h);
        self.diffs.hash(h);
    }
}

impl fmt::Debug for ProjComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " -> ")?;
            }
            let names: Vec<String> = t.iter().map(|v| format!("P{}", v + 1)).collect();
            write!(f, "{}@{}", if names.is_empty() { "0".into() } else { names.join("+") }, self.lo + i as i64)?;
        }
        write!(f, "]")
    }
}

impl ProjComplex {
    /// Builds and trims a complex; checks shapes and `d∘d = 0`.
    pub fn new(quiver: Arc<Quiver>, field: Field, lo: i64, terms: Vec<Summands>, diffs: Vec<PathMatrix>) -> Result<ProjComplex> {
        if diffs.len() + 1 != terms.len().max(1) {
            return Err(Error::Dimension(format!("{} terms need {} differentials", terms.len(), terms.len().saturating_sub(1))));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.cols() != &terms[i] || d.rows() != &terms[i + 1] {
                return Err(Error::Dimension(format!("differential in degree {} has the wrong shape", lo + i as i64)));
            }
        }
        for i in 1..diffs.len() {
            if !diffs[i].compose(&diffs[i - 1], &quiver).is_zero() {
                return Err(Error::Dimension(format!("d∘d ≠ 0 in degree {}", lo + i as i64 - 1)));
            }
        }
        Ok(ProjComplex { quiver, field, lo, terms, diffs }.trimmed())
    }

    pub(crate) fn new_unchecked(quiver: Arc<Quiver>, field: Field, lo: i64, terms: Vec<Summands>, diffs: Vec<PathMatrix>) -> ProjComplex {
        debug_assert!(diffs.windows(2).all(|w| w[1].compose(&w[0], &quiver).is_zero()));
        ProjComplex { quiver, field, lo, terms, diffs }.trimmed()
    }

    fn trimmed(mut self) -> ProjComplex {
        while self.terms.first().is_some_and(Vec::is_empty) {
            self.terms.remove(0);
            if !self.diffs.is_empty() {
                self.diffs.remove(0);
            }
            self.lo += 1;
        }
        while self.terms.last().is_some_and(Vec::is_empty) {
            self.terms.pop();
            self.diffs.pop();
        }
        if self.terms.is_empty() {
            self.lo = 0;
            self.diffs.clear();
        }
        self
    }

    pub fn zero(quiver: Arc<Quiver>, field: Field) -> ProjComplex {
        ProjComplex { quiver, field, lo: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    /// `⊕ P_v` concentrated in degree `deg`.
    pub fn concentrated(quiver: Arc<Quiver>, field: Field, summands: Summands, deg: i64) -> ProjComplex {
        ProjComplex { quiver, field, lo: deg, terms: vec![summands], diffs: Vec::new() }.trimmed()
    }

    /// Two-term complex `P1 -> P0` in degrees `-1, 0`.
    pub fn two_term(quiver: Arc<Quiver>, field: Field, d: PathMatrix) -> ProjComplex {
        let terms = vec![d.cols().clone(), d.rows().clone()];
        ProjComplex { quiver, field, lo: -1, terms, diffs: vec![d] }.trimmed()
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(lo, hi)` of the nonzero terms, `None` for the zero complex.
    pub fn amplitude(&self) -> Option<(i64, i64)> {
        if self.terms.is_empty() {
            None
        } else {
            Some((self.lo, self.lo + self.terms.len() as i64 - 1))
        }
    }

    pub fn degrees(&self) -> std::ops::Range<i64> {
        self.lo..self.lo + self.terms.len() as i64
    }

    pub fn term(&self, k: i64) -> &[usize] {
        if k < self.lo || k >= self.lo + self.terms.len() as i64 {
            &[]
        } else {
            &self.terms[(k - self.lo) as usize]
        }
    }

    /// `d^k : X^k -> X^{k+1}`.
    pub fn diff(&self, k: i64) -> PathMatrix {
        let i = k - self.lo;
        if i >= 0 && (i as usize) < self.diffs.len() {
            self.diffs[i as usize].clone()
        } else {
            PathMatrix::zero(self.term(k + 1).to_vec(), self.term(k).to_vec())
        }
    }

    pub fn total_rank(&self) -> usize {
        self.terms.iter().map(Vec::len).sum()
    }

    /// `Σ^n X`: `(Σ^n X)^k = X^{k+n}`, differentials times `(-1)^n`.
    pub fn shift(&self, n: i64) -> ProjComplex {
        let diffs = if n.rem_euclid(2) == 1 {
            self.diffs.iter().map(PathMatrix::neg).collect()
        } else {
            self.diffs.clone()
        };
        let lo = if self.terms.is_empty() { 0 } else { self.lo - n };
        ProjComplex { quiver: self.quiver.clone(), field: self.field, lo, terms: self.terms.clone(), diffs }
    }

    /// Degree-wise direct sum with inclusions and projections.
    pub fn direct_sum(&self, o: &ProjComplex) -> (ProjComplex, [ChainMap; 2], [ChainMap; 2]) {
        let range = union_range(self, o);
        let mut terms = Vec::new();
        let mut diffs = Vec::new();
        for k in range.clone() {
            terms.push(self.term(k).iter().chain(o.term(k)).copied().collect::<Vec<_>>());
            if k + 1 < range.end {
                diffs.push(PathMatrix::diag(&self.diff(k), &o.diff(k)));
            }
        }
        let sum = ProjComplex::new_unchecked(self.quiver.clone(), self.field, range.start, terms, diffs);
        let f = self.field;
        let mut maps: [BTreeMap<i64, PathMatrix>; 4] = Default::default();
        for k in sum.degrees() {
            let (a, b) = (self.term(k).len(), o.term(k).len());
            let id = PathMatrix::identity(f, &sum.term(k).to_vec());
            let all: Vec<usize> = (0..a + b).collect();
            let (fa, fb): (Vec<usize>, Vec<usize>) = ((0..a).collect(), (a..a + b).collect());
            maps[0].insert(k, id.select(&all, &fa));
            maps[1].insert(k, id.select(&all, &fb));
            maps[2].insert(k, id.select(&fa, &all));
            maps[3].insert(k, id.select(&fb, &all));
        }
        let [m0, m1, m2, m3] = maps;
        (
            sum.clone(),
            [ChainMap::from_parts(self.clone(), sum.clone(), m0), ChainMap::from_parts(o.clone(), sum.clone(), m1)],
            [ChainMap::from_parts(sum.clone(), self.clone(), m2), ChainMap::from_parts(sum, o.clone(), m3)],
        )
    }

    /// The complex of representations obtained by realizing each term.
    pub fn realize(&self, kind: Kind) -> crate::resolve::RepComplex {
        crate::resolve::RepComplex::from_path_complex(self, kind)
    }
}

fn union_range(a: &ProjComplex, b: &ProjComplex) -> std::ops::Range<i64> {
    match (a.amplitude(), b.amplitude()) {
        (None, None) => 0..0,
        (Some((l, h)), None) | (None, Some((l, h))) => l..h + 1,
        (Some((l1, h1)), Some((l2, h2))) => l1.min(l2)..h1.max(h2) + 1,
    }
}

/// A chain map given by its degree-wise path matrices (absent = zero).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ChainMap {
    source: ProjComplex,
    target: ProjComplex,
    comps: BTreeMap<i64, PathMatrix>,
}

impl fmt::Debug for ChainMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainMap({:?} -> {:?}, {} components)", self.source, self.target, self.comps.len())
    }
}

impl ChainMap {
    /// Drops zero and out-of-range components.
    pub fn from_parts(source: ProjComplex, target: ProjComplex, comps: BTreeMap<i64, PathMatrix>) -> ChainMap {
        let comps = comps
            .into_iter()
            .filter(|(k, m)| {
                !m.is_zero() && !source.term(*k).is_empty() && !target.term(*k).is_empty()
            })
            .collect::<BTreeMap<_, _>>();
        for (k, m) in &comps {
            debug_assert!(m.cols() == source.term(*k) && m.rows() == target.term(*k), "component {k} has the wrong shape");
        }
        ChainMap { source, target, comps }
    }

    pub fn zero(source: &ProjComplex, target: &ProjComplex) -> ChainMap {
        ChainMap { source: source.clone(), target: target.clone(), comps: BTreeMap::new() }
    }

    pub fn identity(x: &ProjComplex) -> ChainMap {
        let comps = x.degrees().map(|k| (k, PathMatrix::identity(x.field, &x.term(k).to_vec()))).collect();
        ChainMap::from_parts(x.clone(), x.clone(), comps)
    }

    pub fn source(&self) -> &ProjComplex {
        &self.source
    }

    pub fn target(&self) -> &ProjComplex {
        &self.target
    }

    pub fn comp(&self, k: i64) -> PathMatrix {
        self.comps
            .get(&k)
            .cloned()
            .unwrap_or_else(|| PathMatrix::zero(self.target.term(k).to_vec(), self.source.term(k).to_vec()))
    }

    pub fn is_zero_map(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn is_chain_map(&self) -> bool {
        let q = &self.source.quiver;
        let lo = self.source.lo.min(self.target.lo) - 1;
        let hi = self.source.lo.max(self.target.lo) + self.source.terms.len().max(self.target.terms.len()) as i64 + 1;
        (lo..hi).all(|k| {
            let a = self.target.diff(k).compose(&self.comp(k), q);
            let b = self.comp(k + 1).compose(&self.source.diff(k), q);
            a == b
        })
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &ChainMap) -> Result<ChainMap> {
        if g.target != self.source {
            return Err(Error::NotComposable(format!("{:?} after {:?}", self, g)));
        }
        let q = &self.source.quiver;
        let comps = g
            .comps
            .iter()
            .filter_map(|(k, m)| self.comps.get(k).map(|s| (*k, s.compose(m, q))))
            .collect();
        Ok(ChainMap::from_parts(g.source.clone(), self.target.clone(), comps))
    }

    pub fn add(&self, o: &ChainMap) -> ChainMap {
        debug_assert!(self.source == o.source && self.target == o.target);
        let mut comps = self.comps.clone();
        for (k, m) in &o.comps {
            let e = comps.remove(k).map(|c| c.add(m)).unwrap_or_else(|| m.clone());
            comps.insert(*k, e);
        }
        ChainMap::from_parts(self.source.clone(), self.target.clone(), comps)
    }

    pub fn scale(&self, s: &Scalar) -> ChainMap {
        let comps = self.comps.iter().map(|(k, m)| (*k, m.scale(s))).collect();
        ChainMap::from_parts(self.source.clone(), self.target.clone(), comps)
    }

    pub fn neg(&self) -> ChainMap {
        self.scale(&-self.source.field.one())
    }

    pub fn sub(&self, o: &ChainMap) -> ChainMap {
        self.add(&o.neg())
    }

    /// `Σ^n f`, componentwise reindexed.
    pub fn shift(&self, n: i64) -> ChainMap {
        let comps = self.comps.iter().map(|(k, m)| (k - n, m.clone())).collect();
        ChainMap::from_parts(self.source.shift(n), self.target.shift(n), comps)
    }

    /// Same components, reinterpreted between other complexes with
    /// identical terms (e.g. after retyping).
    pub fn retarget(&self, source: &ProjComplex, target: &ProjComplex, degree_shift: i64) -> ChainMap {
        let comps = self.comps.iter().map(|(k, m)| (k - degree_shift, m.clone())).collect();
        ChainMap::from_parts(source.clone(), target.clone(), comps)
    }

    pub fn components(&self) -> &BTreeMap<i64, PathMatrix> {
        &self.comps
    }

    /// Realized component in degree `k`.
    pub fn realize(&self, k: i64, kind: Kind) -> RepMorphism {
        self.comp(k).realize(kind, &self.source.quiver, self.source.field)
    }
}

/// Coordinates of maps `X^m -> Y^{m+s}` for all `m`, in the path basis.
#[derive(Clone, Debug)]
struct Layout {
    blocks: BTreeMap<(i64, usize, usize), (usize, Vec<usize>)>,
    size: usize,
}

impl Layout {
    fn new(x: &ProjComplex, y: &ProjComplex, s: i64) -> Layout {
        let q = &x.quiver;
        let mut blocks = BTreeMap::new();
        let mut size = 0;
        for m in x.degrees() {
            let (xs, ys) = (x.term(m), y.term(m + s));
            for (j, &yv) in ys.iter().enumerate() {
                for (i, &xv) in xs.iter().enumerate() {
                    let paths = q.between(yv, xv).to_vec();
                    if !paths.is_empty() {
                        let n = paths.len();
                        blocks.insert((m, j, i), (size, paths));
                        size += n;
                    }
                }
            }
        }
        Layout { blocks, size }
    }

    fn add_elem(&self, v: &mut [Scalar], m: i64, j: usize, i: usize, e: &PathElem) {
        if e.is_zero() {
            return;
        }
        let (off, paths) = &self.blocks[&(m, j, i)];
        for (p, c) in e.terms() {
            let pos = paths.iter().position(|z| z == p).expect("path lies in the block");
            v[off + pos] += c;
        }
    }

    fn slots(&self) -> impl Iterator<Item = (usize, i64, usize, usize, usize)> + '_ {
        self.blocks
            .iter()
            .flat_map(|(&(m, j, i), (off, paths))| paths.iter().enumerate().map(move |(k, &p)| (off + k, m, j, i, p)))
    }

    fn vectorize(&self, f: &BTreeMap<i64, PathMatrix>, field: Field) -> Vec<Scalar> {
        let mut v = vec![field.zero(); self.size];
        for (&m, mat) in f {
            for j in 0..mat.rows().len() {
                for i in 0..mat.cols().len() {
                    self.add_elem(&mut v, m, j, i, mat.get(j, i));
                }
            }
        }
        v
    }

    fn devectorize(&self, v: &[Scalar], x: &ProjComplex, y: &ProjComplex, s: i64) -> BTreeMap<i64, PathMatrix> {
        let mut out: BTreeMap<i64, PathMatrix> = BTreeMap::new();
        for (idx, m, j, i, p) in self.slots() {
            if v[idx].is_zero() {
                continue;
            }
            let mat = out
                .entry(m)
                .or_insert_with(|| PathMatrix::zero(y.term(m + s).to_vec(), x.term(m).to_vec()));
            mat.add_at(j, i, &PathElem::path(p, v[idx].clone()));
        }
        out
    }
}

/// `Hom_K(X, Y)`: chain maps modulo null-homotopic ones.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: ProjComplex,
    pub target: ProjComplex,
    pub basis: Vec<ChainMap>,
    layout: Layout,
    span: Matrix,
    boundary_rank: usize,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of the homotopy class of a chain map.
    pub fn coords(&self, f: &ChainMap) -> Result<Vec<Scalar>> {
        let v = self.layout.vectorize(&f.comps, self.source.field);
        let x = self
            .span
            .solve(&v)?
            .ok_or_else(|| Error::Dimension(format!("{:?} is not a chain map", f)))?;
        Ok(x[self.boundary_rank..].to_vec())
    }

    pub fn combine(&self, c: &[Scalar]) -> ChainMap {
        let mut out = ChainMap::zero(&self.source, &self.target);
        for (b, x) in self.basis.iter().zip(c) {
            if !x.is_zero() {
                out = out.add(&b.scale(x));
            }
        }
        out
    }

    pub fn is_null_homotopic(&self, f: &ChainMap) -> Result<bool> {
        Ok(self.coords(f)?.iter().all(Scalar::is_zero))
    }
}

/// Basis of `Hom_K(X, Y)` as cycles modulo boundaries.
pub fn hom_space(x: &ProjComplex, y: &ProjComplex) -> HomSpace {
    let f = x.field;
    let q = &x.quiver;
    let maps = Layout::new(x, y, 0);
    let cons = Layout::new(x, y, 1);
    let homs = Layout::new(x, y, -1);

    // d_Y f - f d_X, column per slot of f
    let mut dcols = Vec::with_capacity(maps.size);
    for (_, m, j, i, p) in maps.slots() {
        let mut col = vec![f.zero(); cons.size];
        let pe = PathElem::path(p, f.one());
        let dy = y.diff(m);
        for jj in 0..dy.rows().len() {
            let e = dy.get(jj, j);
            if !e.is_zero() {
                cons.add_elem(&mut col, m, jj, i, &e.mul(&pe, q));
            }
        }
        let dx = x.diff(m - 1);
        for ii in 0..dx.cols().len() {
            let e = dx.get(i, ii);
            if !e.is_zero() {
                cons.add_elem(&mut col, m - 1, j, ii, &pe.mul(e, q).neg());
            }
        }
        dcols.push(col);
    }
    let dmat = Matrix::from_columns(f, cons.size, &dcols);
    let cycles = dmat.kernel_basis();

    // d_Y h + h d_X, column per slot of h
    let mut hcols = Vec::with_capacity(homs.size);
    for (_, m, j, i, p) in homs.slots() {
        let mut col = vec![f.zero(); maps.size];
        let pe = PathElem::path(p, f.one());
        let dy = y.diff(m - 1);
        for jj in 0..dy.rows().len() {
            let e = dy.get(jj, j);
            if !e.is_zero() {
                maps.add_elem(&mut col, m, jj, i, &e.mul(&pe, q));
            }
        }
        let dx = x.diff(m - 1);
        for ii in 0..dx.cols().len() {
            let e = dx.get(i, ii);
            if !e.is_zero() {
                maps.add_elem(&mut col, m - 1, j, ii, &pe.mul(e, q));
            }
        }
        hcols.push(col);
    }
    let hmat = Matrix::from_columns(f, maps.size, &hcols);
    let e = hmat.echelon();
    let bnd = hmat.select(&(0..maps.size).collect::<Vec<_>>(), &e.pivots);
    let zmat = Matrix::from_columns(f, maps.size, &cycles);
    let chosen = zmat.complement_columns(&bnd);
    let basis_vecs: Vec<Vec<Scalar>> = chosen.iter().map(|&c| cycles[c].clone()).collect();
    let span = bnd.hstack(&Matrix::from_columns(f, maps.size, &basis_vecs));
    let basis: Vec<ChainMap> = basis_vecs
        .iter()
        .map(|v| ChainMap::from_parts(x.clone(), y.clone(), maps.devectorize(v, x, y, 0)))
        .collect();
    HomSpace {
        source: x.clone(),
        target: y.clone(),
        basis,
        span,
        boundary_rank: e.pivots.len(),
        layout: maps,
    }
}

/// A cone with its structure maps `Y -> C_f -> ΣX`.
#[derive(Clone, Debug)]
pub struct Cone {
    pub object: ProjComplex,
    pub incl: ChainMap,
    pub proj: ChainMap,
}

pub fn cone(f: &ChainMap) -> Cone {
    let (x, y) = (&f.source, &f.target);
    let sx = x.shift(1);
    let range = union_range(&sx, y);
    let q = &x.quiver;
    let fld = x.field;
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    for k in range.clone() {
        terms.push(x.term(k + 1).iter().chain(y.term(k)).copied().collect::<Vec<_>>());
        if k + 1 < range.end {
            diffs.push(PathMatrix::block(&x.diff(k + 1).neg(), &PathMatrix::zero(x.term(k + 2).to_vec(), y.term(k).to_vec()), &f.comp(k + 1), &y.diff(k)));
        }
    }
    let _ = q;
    let c = ProjComplex::new_unchecked(x.quiver.clone(), fld, range.start, terms, diffs);
    let mut gi = BTreeMap::new();
    let mut hp = BTreeMap::new();
    for k in range {
        let (a, b) = (x.term(k + 1).len(), y.term(k).len());
        let all: Vec<usize> = (0..a + b).collect();
        let ct: Vec<usize> = x.term(k + 1).iter().chain(y.term(k)).copied().collect();
        let id = PathMatrix::identity(fld, &ct);
        gi.insert(k, id.select(&all, &(a..a + b).collect::<Vec<_>>()));
        hp.insert(k, id.select(&(0..a).collect::<Vec<_>>(), &all));
    }
    Cone {
        incl: ChainMap::from_parts(y.clone(), c.clone(), gi),
        proj: ChainMap::from_parts(c.clone(), sx, hp),
        object: c,
    }
}

/// `true` iff the complex is contractible (its identity is null-homotopic).
pub fn is_contractible(x: &ProjComplex) -> bool {
    x.is_zero() || hom_space(x, x).dim() == 0
}

/// `f` is an isomorphism in the homotopy category iff its cone is contractible.
pub fn is_iso(f: &ChainMap) -> bool {
    is_contractible(&cone(f).object)
}
