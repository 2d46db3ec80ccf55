//! Morphisms between direct sums of indecomposable projectives (or
//! injectives) as matrices over the path algebra.
//!
//! A morphism `P_x -> P_y` is a linear combination of paths `y -> x`; the
//! same data describes `I_x -> I_y`, which is how the Nakayama functor acts
//! on this encoding: it is the identity on data.

use std::collections::BTreeMap;

use crate::linalg::{Field, Matrix, Scalar};
use crate::quiver::Quiver;
use crate::rep::{RepMorphism, Representation};
use std::sync::Arc;

/// Element of the path algebra: sorted `(path id, coefficient)` pairs, no zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PathElem(Vec<(usize, Scalar)>);

impl PathElem {
    pub fn zero() -> PathElem {
        PathElem(Vec::new())
    }

    pub fn path(p: usize, c: Scalar) -> PathElem {
        if c.is_zero() { PathElem::zero() } else { PathElem(vec![(p, c)]) }
    }

    pub fn from_map(m: BTreeMap<usize, Scalar>) -> PathElem {
        PathElem(m.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    pub fn terms(&self) -> &[(usize, Scalar)] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, p: usize) -> Option<&Scalar> {
        self.0.binary_search_by_key(&p, |(q, _)| *q).ok().map(|i| &self.0[i].1)
    }

    pub fn add(&self, o: &PathElem) -> PathElem {
        let mut m: BTreeMap<usize, Scalar> = self.0.iter().cloned().collect();
        for (p, c) in &o.0 {
            match m.get_mut(p) {
                Some(v) => *v += c,
                None => {
                    m.insert(*p, c.clone());
                }
            }
        }
        PathElem::from_map(m)
    }

    pub fn scale(&self, s: &Scalar) -> PathElem {
        if s.is_zero() {
            return PathElem::zero();
        }
        PathElem(self.0.iter().map(|(p, c)| (*p, c * s)).collect())
    }

    pub fn neg(&self) -> PathElem {
        PathElem(self.0.iter().map(|(p, c)| (*p, -c)).collect())
    }

    /// `self` followed by `o` (as paths); equals the composite morphism
    /// `self ∘ o` in the projective encoding.
    pub fn mul(&self, o: &PathElem, q: &Quiver) -> PathElem {
        if self.is_zero() || o.is_zero() {
            return PathElem::zero();
        }
        let mut m: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (p, a) in &self.0 {
            for (r, b) in &o.0 {
                if let Some(pr) = q.concat(*p, *r) {
                    let v = a * b;
                    match m.get_mut(&pr) {
                        Some(x) => *x += &v,
                        None => {
                            m.insert(pr, v);
                        }
                    }
                }
            }
        }
        PathElem::from_map(m)
    }
}

/// Which indecomposables a vertex list stands for when realized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Projective,
    Injective,
}

/// `P_{v_0} ⊕ P_{v_1} ⊕ ...` (or injectives), by vertex list.
pub type Summands = Vec<usize>;

/// Matrix over the path algebra. Entry `(j, i)` maps source summand `i`
/// (vertex `cols[i]`) to target summand `j` (vertex `rows[j]`) and is a
/// combination of paths `rows[j] -> cols[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathMatrix {
    rows: Summands,
    cols: Summands,
    entries: Vec<PathElem>,
}

impl PathMatrix {
    pub fn zero(rows: Summands, cols: Summands) -> PathMatrix {
        let n = rows.len() * cols.len();
        PathMatrix { rows, cols, entries: vec![PathElem::zero(); n] }
    }

    pub fn identity(field: Field, s: &Summands) -> PathMatrix {
        let mut m = PathMatrix::zero(s.clone(), s.clone());
        for (i, &v) in s.iter().enumerate() {
            m.set(i, i, PathElem::path(v, field.one()));
        }
        m
    }

    pub fn rows(&self) -> &Summands {
        &self.rows
    }

    pub fn cols(&self) -> &Summands {
        &self.cols
    }

    pub fn get(&self, j: usize, i: usize) -> &PathElem {
        &self.entries[j * self.cols.len() + i]
    }

    pub fn set(&mut self, j: usize, i: usize, e: PathElem) {
        let n = self.cols.len();
        self.entries[j * n + i] = e;
    }

    pub fn add_at(&mut self, j: usize, i: usize, e: &PathElem) {
        let n = self.cols.len();
        let cur = &self.entries[j * n + i];
        self.entries[j * n + i] = cur.add(e);
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(PathElem::is_zero)
    }

    pub fn add(&self, o: &PathMatrix) -> PathMatrix {
        assert_eq!((&self.rows, &self.cols), (&o.rows, &o.cols), "shape mismatch in path matrix add");
        PathMatrix {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn neg(&self) -> PathMatrix {
        PathMatrix { entries: self.entries.iter().map(PathElem::neg).collect(), ..self.clone() }
    }

    pub fn scale(&self, s: &Scalar) -> PathMatrix {
        PathMatrix { entries: self.entries.iter().map(|e| e.scale(s)).collect(), ..self.clone() }
    }

    /// Composite `self ∘ o`.
    pub fn compose(&self, o: &PathMatrix, q: &Quiver) -> PathMatrix {
        assert_eq!(self.cols, o.rows, "shape mismatch in path matrix compose");
        let mut out = PathMatrix::zero(self.rows.clone(), o.cols.clone());
        for j in 0..self.rows.len() {
            for k in 0..self.cols.len() {
                let a = self.get(j, k);
                if a.is_zero() {
                    continue;
                }
                for i in 0..o.cols.len() {
                    let b = o.get(k, i);
                    if !b.is_zero() {
                        out.add_at(j, i, &a.mul(b, q));
                    }
                }
            }
        }
        out
    }

    /// Rows and columns restricted to the given index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> PathMatrix {
        let mut out = PathMatrix::zero(
            rows.iter().map(|&j| self.rows[j]).collect(),
            cols.iter().map(|&i| self.cols[i]).collect(),
        );
        for (nj, &j) in rows.iter().enumerate() {
            for (ni, &i) in cols.iter().enumerate() {
                out.set(nj, ni, self.get(j, i).clone());
            }
        }
        out
    }

    /// Block matrix `[[a, b], [c, d]]` (row blocks `a|b` over `c|d`).
    pub fn block(a: &PathMatrix, b: &PathMatrix, c: &PathMatrix, d: &PathMatrix) -> PathMatrix {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let rows: Summands = a.rows.iter().chain(&c.rows).copied().collect();
        let cols: Summands = a.cols.iter().chain(&b.cols).copied().collect();
        let (ra, ca) = (a.rows.len(), a.cols.len());
        let mut out = PathMatrix::zero(rows, cols);
        for j in 0..out.rows.len() {
            for i in 0..out.cols.len() {
                let e = match (j < ra, i < ca) {
                    (true, true) => a.get(j, i),
                    (true, false) => b.get(j, i - ca),
                    (false, true) => c.get(j - ra, i),
                    (false, false) => d.get(j - ra, i - ca),
                };
                out.set(j, i, e.clone());
            }
        }
        out
    }

    /// Block-diagonal sum.
    pub fn diag(a: &PathMatrix, d: &PathMatrix) -> PathMatrix {
        PathMatrix::block(
            a,
            &PathMatrix::zero(a.rows.clone(), d.cols.clone()),
            &PathMatrix::zero(d.rows.clone(), a.cols.clone()),
            d,
        )
    }

    /// Realizes the morphism between the realized summand lists.
    pub fn realize(&self, kind: Kind, quiver: &Arc<Quiver>, field: Field) -> RepMorphism {
        let src = realize_summands(&self.cols, kind, quiver, field);
        let tgt = realize_summands(&self.rows, kind, quiver, field);
        let n = quiver.num_vertices();
        let mut comps = Vec::with_capacity(n);
        for w in 0..n {
            let mut m = Matrix::zeros(field, tgt.dim(w), src.dim(w));
            let src_off = block_offsets(&self.cols, kind, quiver, w);
            let tgt_off = block_offsets(&self.rows, kind, quiver, w);
            for (i, &x) in self.cols.iter().enumerate() {
                for (j, &y) in self.rows.iter().enumerate() {
                    let e = self.get(j, i);
                    if e.is_zero() {
                        continue;
                    }
                    for (pid, c) in e.terms() {
                        match kind {
                            Kind::Projective => {
                                // r: x -> w  maps to  p·r : y -> w
                                for (ri, &r) in quiver.between(x, w).iter().enumerate() {
                                    if let Some(pr) = quiver.concat(*pid, r) {
                                        let qi = quiver.between(y, w).iter().position(|&z| z == pr).unwrap();
                                        m.add_at(tgt_off[j] + qi, src_off[i] + ri, c);
                                    }
                                }
                            }
                            Kind::Injective => {
                                // δ_r (r: w -> x) maps to sum over q: w -> y with q·p = r of δ_q
                                for (qi, &qq) in quiver.between(w, y).iter().enumerate() {
                                    if let Some(qp) = quiver.concat(qq, *pid) {
                                        let ri = quiver.between(w, x).iter().position(|&z| z == qp).unwrap();
                                        m.add_at(tgt_off[j] + qi, src_off[i] + ri, c);
                                    }
                                }
                            }
                        }
                    }
                }
            }
            comps.push(m);
        }
        RepMorphism::new(src, tgt, comps)
    }

    /// Inverse of `realize` for the projective encoding: reads off each
    /// generator's image.
    pub fn from_projective_morphism(f: &RepMorphism, rows: &Summands, cols: &Summands, quiver: &Quiver) -> PathMatrix {
        let mut out = PathMatrix::zero(rows.clone(), cols.clone());
        for (i, &x) in cols.iter().enumerate() {
            let src_off = block_offsets(cols, Kind::Projective, quiver, x);
            let tgt_off = block_offsets(rows, Kind::Projective, quiver, x);
            let gen = src_off[i]; // trivial path e_x is listed first in between(x, x)
            let col = f.component(x).column(gen);
            for (j, &y) in rows.iter().enumerate() {
                let mut m = BTreeMap::new();
                for (pi, &p) in quiver.between(y, x).iter().enumerate() {
                    let c = &col[tgt_off[j] + pi];
                    if !c.is_zero() {
                        m.insert(p, c.clone());
                    }
                }
                out.set(j, i, PathElem::from_map(m));
            }
        }
        out
    }
}

/// Start offset of each summand's block at vertex `w`.
fn block_offsets(s: &Summands, kind: Kind, quiver: &Quiver, w: usize) -> Vec<usize> {
    let mut off = Vec::with_capacity(s.len());
    let mut acc = 0;
    for &v in s {
        off.push(acc);
        acc += match kind {
            Kind::Projective => quiver.between(v, w).len(),
            Kind::Injective => quiver.between(w, v).len(),
        };
    }
    off
}

/// `⊕ P_v` (basis at `w`: paths `v -> w`) or `⊕ I_v` (dual basis of paths `w -> v`).
pub fn realize_summands(s: &Summands, kind: Kind, quiver: &Arc<Quiver>, field: Field) -> Representation {
    let n = quiver.num_vertices();
    let dims: Vec<usize> = (0..n)
        .map(|w| {
            s.iter()
                .map(|&v| match kind {
                    Kind::Projective => quiver.between(v, w).len(),
                    Kind::Injective => quiver.between(w, v).len(),
                })
                .sum()
        })
        .collect();
    let mut maps = Vec::with_capacity(quiver.arrows().len());
    for (a, &(w, w2)) in quiver.arrows().iter().enumerate() {
        let b = quiver.arrow_path(a);
        let mut m = Matrix::zeros(field, dims[w2], dims[w]);
        let off = block_offsets(s, kind, quiver, w);
        let off2 = block_offsets(s, kind, quiver, w2);
        for (i, &v) in s.iter().enumerate() {
            match kind {
                Kind::Projective => {
                    for (ri, &r) in quiver.between(v, w).iter().enumerate() {
                        let rb = quiver.concat(r, b).expect("path extends by arrow");
                        let qi = quiver.between(v, w2).iter().position(|&z| z == rb).unwrap();
                        m.set(off2[i] + qi, off[i] + ri, field.one());
                    }
                }
                Kind::Injective => {
                    // φ ↦ (q' ↦ φ(b·q'))
                    for (qi, &q2) in quiver.between(w2, v).iter().enumerate() {
                        let bq = quiver.concat(b, q2).expect("arrow extends path");
                        let ri = quiver.between(w, v).iter().position(|&z| z == bq).unwrap();
                        m.set(off2[i] + qi, off[i] + ri, field.one());
                    }
                }
            }
        }
        maps.push(m);
    }
    Representation::with_field(quiver.clone(), field, dims, maps).expect("realized summands are well formed")
}

/// Standard projective resolution `0 -> P1 -> P0 -> M -> 0` of a
/// representation, functorial in `M`.
#[derive(Clone, Debug)]
pub struct StdProjective {
    pub p0: Summands,
    pub p1: Summands,
    /// `P1 -> P0`.
    pub d: PathMatrix,
    /// `realize(P0) -> M`.
    pub augmentation: RepMorphism,
}

/// Standard injective coresolution `0 -> M -> I0 -> I1 -> 0`.
#[derive(Clone, Debug)]
pub struct StdInjective {
    pub i0: Summands,
    pub i1: Summands,
    /// `I0 -> I1`, injective encoding.
    pub d: PathMatrix,
    /// `M -> realize(I0)`.
    pub coaugmentation: RepMorphism,
}

fn p0_summands(m: &Representation) -> Summands {
    (0..m.quiver().num_vertices()).flat_map(|v| std::iter::repeat(v).take(m.dim(v))).collect()
}

// index of (v, j) in P0 / I0
fn p0_index(m: &Representation) -> Vec<usize> {
    let mut off = Vec::new();
    let mut acc = 0;
    for v in 0..m.quiver().num_vertices() {
        off.push(acc);
        acc += m.dim(v);
    }
    off
}

/// Offsets of `(arrow, j)` blocks in `P1` (j over `M_source`) or `I1` (j over `M_target`).
fn arrow_blocks(m: &Representation, use_source: bool) -> (Summands, Vec<usize>) {
    let q = m.quiver();
    let mut s = Vec::new();
    let mut off = Vec::new();
    for &(src, tgt) in q.arrows() {
        off.push(s.len());
        let (vert, dim) = if use_source { (tgt, m.dim(src)) } else { (src, m.dim(tgt)) };
        s.extend(std::iter::repeat(vert).take(dim));
    }
    (s, off)
}

pub fn std_projective(m: &Representation) -> StdProjective {
    let q = m.quiver().clone();
    let field = m.field();
    let p0 = p0_summands(m);
    let off0 = p0_index(m);
    let (p1, off1) = arrow_blocks(m, true);
    let mut d = PathMatrix::zero(p0.clone(), p1.clone());
    for (a, &(s, t)) in q.arrows().iter().enumerate() {
        let ma = m.arrow_map(a);
        for i in 0..m.dim(s) {
            let col = off1[a] + i;
            d.set(off0[s] + i, col, PathElem::path(q.arrow_path(a), field.one()));
            for l in 0..m.dim(t) {
                let c = ma.get(l, i);
                if !c.is_zero() {
                    d.set(off0[t] + l, col, PathElem::path(q.trivial(t), -c));
                }
            }
        }
    }
    let real = realize_summands(&p0, Kind::Projective, &q, field);
    let mut comps = Vec::new();
    for w in 0..q.num_vertices() {
        let mut mat = Matrix::zeros(field, m.dim(w), real.dim(w));
        let mut col = 0;
        for v in 0..q.num_vertices() {
            for j in 0..m.dim(v) {
                for &r in q.between(v, w) {
                    let mr = m.path_map(r);
                    for row in 0..m.dim(w) {
                        mat.set(row, col, mr.get(row, j).clone());
                    }
                    col += 1;
                }
            }
        }
        comps.push(mat);
    }
    StdProjective { p0, p1, d, augmentation: RepMorphism::new(real, m.clone(), comps) }
}

/// `(P0(f), P1(f))` for `f: M -> N`.
pub fn std_projective_map(f: &RepMorphism) -> (PathMatrix, PathMatrix) {
    let (m, n) = (f.source(), f.target());
    let q = m.quiver();
    let field = m.field();
    let mut f0 = PathMatrix::zero(p0_summands(n), p0_summands(m));
    let (o0m, o0n) = (p0_index(m), p0_index(n));
    for v in 0..q.num_vertices() {
        let fv = f.component(v);
        for j in 0..m.dim(v) {
            for l in 0..n.dim(v) {
                let c = fv.get(l, j);
                if !c.is_zero() {
                    f0.set(o0n[v] + l, o0m[v] + j, PathElem::path(q.trivial(v), c.clone()));
                }
            }
        }
    }
    let (s1m, o1m) = arrow_blocks(m, true);
    let (s1n, o1n) = arrow_blocks(n, true);
    let mut f1 = PathMatrix::zero(s1n, s1m);
    for (a, &(s, t)) in q.arrows().iter().enumerate() {
        let fs = f.component(s);
        for j in 0..m.dim(s) {
            for l in 0..n.dim(s) {
                let c = fs.get(l, j);
                if !c.is_zero() {
                    f1.set(o1n[a] + l, o1m[a] + j, PathElem::path(q.trivial(t), c.clone()));
                }
            }
        }
    }
    let _ = field;
    (f0, f1)
}

pub fn std_injective(m: &Representation) -> StdInjective {
    let q = m.quiver().clone();
    let field = m.field();
    let i0 = p0_summands(m);
    let off0 = p0_index(m);
    let (i1, off1) = arrow_blocks(m, false);
    let mut d = PathMatrix::zero(i1.clone(), i0.clone());
    for (a, &(s, t)) in q.arrows().iter().enumerate() {
        let ma = m.arrow_map(a);
        for j in 0..m.dim(t) {
            // I_t ⊗ M_t -> I_s ⊗ M_t along a
            d.set(off1[a] + j, off0[t] + j, PathElem::path(q.arrow_path(a), field.one()));
        }
        for i in 0..m.dim(s) {
            for l in 0..m.dim(t) {
                let c = ma.get(l, i);
                if !c.is_zero() {
                    d.set(off1[a] + l, off0[s] + i, PathElem::path(q.trivial(s), -c));
                }
            }
        }
    }
    let real = realize_summands(&i0, Kind::Injective, &q, field);
    let mut comps = Vec::new();
    for w in 0..q.num_vertices() {
        let mut mat = Matrix::zeros(field, real.dim(w), m.dim(w));
        let mut row = 0;
        for v in 0..q.num_vertices() {
            for j in 0..m.dim(v) {
                for &qq in q.between(w, v) {
                    let mq = m.path_map(qq);
                    for col in 0..m.dim(w) {
                        mat.set(row, col, mq.get(j, col).clone());
                    }
                    row += 1;
                }
            }
        }
        comps.push(mat);
    }
    StdInjective { i0, i1, d, coaugmentation: RepMorphism::new(m.clone(), real, comps) }
}

/// `(I0(f), I1(f))` for `f: M -> N`.
pub fn std_injective_map(f: &RepMorphism) -> (PathMatrix, PathMatrix) {
    let (m, n) = (f.source(), f.target());
    let q = m.quiver();
    let mut f0 = PathMatrix::zero(p0_summands(n), p0_summands(m));
    let (o0m, o0n) = (p0_index(m), p0_index(n));
    for v in 0..q.num_vertices() {
        let fv = f.component(v);
        for j in 0..m.dim(v) {
            for l in 0..n.dim(v) {
                let c = fv.get(l, j);
                if !c.is_zero() {
                    f0.set(o0n[v] + l, o0m[v] + j, PathElem::path(q.trivial(v), c.clone()));
                }
            }
        }
    }
    let (s1m, o1m) = arrow_blocks(m, false);
    let (s1n, o1n) = arrow_blocks(n, false);
    let mut f1 = PathMatrix::zero(s1n, s1m);
    for (a, &(s, t)) in q.arrows().iter().enumerate() {
        let ft = f.component(t);
        for j in 0..m.dim(t) {
            for l in 0..n.dim(t) {
                let c = ft.get(l, j);
                if !c.is_zero() {
                    f1.set(o1n[a] + l, o1m[a] + j, PathElem::path(q.trivial(s), c.clone()));
                }
            }
        }
    }
    (f0, f1)
}
