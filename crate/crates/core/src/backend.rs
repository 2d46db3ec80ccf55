//! The interface a triangulated category must provide to run the Moore
//! construction, and the bounded homotopy category of projectives as the
//! first implementation.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::complex::{cone, hom_space, ChainMap, HomSpace, ProjComplex};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};
use crate::pathalg::{PathElem, PathMatrix};
use crate::quiver::Quiver;
use crate::resolve::minimize;

/// `X -> Y -> Z -> ΣX` produced by a cone: `g : Y -> Z`, `h : Z -> ΣX`.
#[derive(Clone, Debug)]
pub struct Triangle<O, M> {
    pub f: M,
    pub object: O,
    pub g: M,
    pub h: M,
}

/// A finite coproduct with its structure maps.
#[derive(Clone, Debug)]
pub struct Coproduct<O, M> {
    pub object: O,
    pub inclusions: Vec<M>,
    pub projections: Vec<M>,
}

/// A Hom-finite triangulated category over `field`, with a compact object
/// `C = ⊕_v C_v` indexed by the vertices of `quiver`.
pub trait Triangulated: Send + Sync {
    type Obj: Clone + fmt::Debug + Eq + std::hash::Hash + Send + Sync;
    type Mor: Clone + fmt::Debug + Send + Sync;

    fn label(&self) -> String;
    fn quiver(&self) -> &Arc<Quiver>;
    fn field(&self) -> Field;

    fn source(&self, f: &Self::Mor) -> Self::Obj;
    fn target(&self, f: &Self::Mor) -> Self::Obj;

    fn zero_object(&self) -> Self::Obj;
    fn is_zero_object(&self, x: &Self::Obj) -> Result<bool>;

    /// A basis of `Hom(x, y)`; stable across calls.
    fn hom_basis(&self, x: &Self::Obj, y: &Self::Obj) -> Result<Vec<Self::Mor>>;
    /// Coordinates of `f` in `hom_basis(source f, target f)`.
    fn coords(&self, f: &Self::Mor) -> Result<Vec<Scalar>>;

    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor>;
    fn identity(&self, x: &Self::Obj) -> Self::Mor;
    fn zero(&self, x: &Self::Obj, y: &Self::Obj) -> Self::Mor;
    fn add(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor>;
    fn scale(&self, f: &Self::Mor, s: &Scalar) -> Self::Mor;

    fn shift(&self, x: &Self::Obj, n: i64) -> Self::Obj;
    fn shift_mor(&self, f: &Self::Mor, n: i64) -> Result<Self::Mor>;

    /// A distinguished triangle on `f`.
    fn cone(&self, f: &Self::Mor) -> Result<Triangle<Self::Obj, Self::Mor>>;
    fn coproduct(&self, xs: &[Self::Obj]) -> Result<Coproduct<Self::Obj, Self::Mor>>;

    /// The summand `C_v` of the compact object.
    fn compact_summand(&self, v: usize) -> Self::Obj;
    /// A preferred morphism `C_t -> C_s` for the arrow `a : s -> t`.
    fn arrow_morphism(&self, a: usize) -> Option<Self::Mor>;

    fn hom_dim(&self, x: &Self::Obj, y: &Self::Obj) -> Result<usize> {
        Ok(self.hom_basis(x, y)?.len())
    }

    fn is_zero_mor(&self, f: &Self::Mor) -> Result<bool> {
        Ok(self.coords(f)?.iter().all(Scalar::is_zero))
    }

    fn sub(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor> {
        self.add(f, &self.scale(g, &-self.field().one()))
    }

    fn equal(&self, f: &Self::Mor, g: &Self::Mor) -> Result<bool> {
        self.is_zero_mor(&self.sub(f, g)?)
    }

    /// `Σ c_i b_i` over `hom_basis(x, y)`.
    fn combine(&self, x: &Self::Obj, y: &Self::Obj, c: &[Scalar]) -> Result<Self::Mor> {
        let basis = self.hom_basis(x, y)?;
        let mut out = self.zero(x, y);
        for (b, s) in basis.iter().zip(c) {
            if !s.is_zero() {
                out = self.add(&out, &self.scale(b, s))?;
            }
        }
        Ok(out)
    }

    /// A two-sided inverse, if `f` is an isomorphism.
    fn inverse(&self, f: &Self::Mor) -> Result<Option<Self::Mor>> {
        let (x, y) = (self.source(f), self.target(f));
        let idy = self.identity(&y);
        let psi = solve_in_hom(self, &y, &x, |p| self.compose(f, p), &idy)?;
        let Some(psi) = psi else { return Ok(None) };
        let back = self.compose(&psi, f)?;
        if self.equal(&back, &self.identity(&x))? {
            Ok(Some(psi))
        } else {
            Ok(None)
        }
    }

    fn is_iso(&self, f: &Self::Mor) -> Result<bool> {
        Ok(self.inverse(f)?.is_some())
    }

    /// `C = ⊕_v C_v`.
    fn compact(&self) -> Result<Coproduct<Self::Obj, Self::Mor>> {
        let xs: Vec<Self::Obj> = (0..self.quiver().num_vertices()).map(|v| self.compact_summand(v)).collect();
        self.coproduct(&xs)
    }
}

/// Some `ψ ∈ Hom(x, y)` with `op(ψ) = rhs`, where `op` is linear into the
/// Hom space containing `rhs`.
pub fn solve_in_hom<B: Triangulated + ?Sized>(
    b: &B,
    x: &B::Obj,
    y: &B::Obj,
    op: impl Fn(&B::Mor) -> Result<B::Mor>,
    rhs: &B::Mor,
) -> Result<Option<B::Mor>> {
    let basis = b.hom_basis(x, y)?;
    let target = b.coords(rhs)?;
    let cols = basis.iter().map(|p| b.coords(&op(p)?)).collect::<Result<Vec<_>>>()?;
    let m = Matrix::from_columns(b.field(), target.len(), &cols);
    match m.solve(&target)? {
        Some(c) => Ok(Some(b.combine(x, y, &c)?)),
        None => Ok(None),
    }
}

/// Matrix of a linear map out of `Hom(x, y)` in coordinates.
pub fn linear_map_matrix<B: Triangulated + ?Sized>(
    b: &B,
    domain: &[B::Mor],
    rows: usize,
    op: impl Fn(&B::Mor) -> Result<B::Mor>,
) -> Result<Matrix> {
    let cols = domain.iter().map(|p| b.coords(&op(p)?)).collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(b.field(), rows, &cols))
}

/// `K^b(proj H)` for `H` the path algebra, with `C = H` in degree 0.
pub struct DerivedBackend {
    quiver: Arc<Quiver>,
    field: Field,
    homs: Mutex<HashMap<(ProjComplex, ProjComplex), Arc<HomSpace>>>,
}

impl DerivedBackend {
    pub fn new(quiver: Arc<Quiver>, field: Field) -> DerivedBackend {
        DerivedBackend { quiver, field, homs: Mutex::new(HashMap::new()) }
    }

    pub fn hom(&self, x: &ProjComplex, y: &ProjComplex) -> Arc<HomSpace> {
        let key = (x.clone(), y.clone());
        if let Some(h) = self.homs.lock().expect("hom cache").get(&key) {
            return h.clone();
        }
        let h = Arc::new(hom_space(x, y));
        self.homs.lock().expect("hom cache").insert(key, h.clone());
        h
    }
}

/// The morphism `C_t -> C_s` given by the path `a`, in degree 0.
pub fn stalk_path_morphism(q: &Arc<Quiver>, field: Field, p: usize) -> ChainMap {
    let path = q.path(p);
    let src = ProjComplex::concentrated(q.clone(), field, vec![path.end], 0);
    let tgt = ProjComplex::concentrated(q.clone(), field, vec![path.start], 0);
    let mut m = PathMatrix::zero(vec![path.start], vec![path.end]);
    m.set(0, 0, PathElem::path(p, field.one()));
    ChainMap::from_parts(src, tgt, [(0, m)].into_iter().collect())
}

impl Triangulated for DerivedBackend {
    type Obj = ProjComplex;
    type Mor = ChainMap;

    fn label(&self) -> String {
        "derived".into()
    }

    fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    fn field(&self) -> Field {
        self.field
    }

    fn source(&self, f: &ChainMap) -> ProjComplex {
        f.source().clone()
    }

    fn target(&self, f: &ChainMap) -> ProjComplex {
        f.target().clone()
    }

    fn zero_object(&self) -> ProjComplex {
        ProjComplex::zero(self.quiver.clone(), self.field)
    }

    fn is_zero_object(&self, x: &ProjComplex) -> Result<bool> {
        Ok(x.is_zero() || self.hom(x, x).dim() == 0)
    }

    fn hom_basis(&self, x: &ProjComplex, y: &ProjComplex) -> Result<Vec<ChainMap>> {
        Ok(self.hom(x, y).basis.clone())
    }

    fn coords(&self, f: &ChainMap) -> Result<Vec<Scalar>> {
        self.hom(f.source(), f.target()).coords(f)
    }

    fn compose(&self, g: &ChainMap, f: &ChainMap) -> Result<ChainMap> {
        g.compose(f)
    }

    fn identity(&self, x: &ProjComplex) -> ChainMap {
        ChainMap::identity(x)
    }

    fn zero(&self, x: &ProjComplex, y: &ProjComplex) -> ChainMap {
        ChainMap::zero(x, y)
    }

    fn add(&self, f: &ChainMap, g: &ChainMap) -> Result<ChainMap> {
        if f.source() != g.source() || f.target() != g.target() {
            return Err(Error::NotComposable("sum of morphisms with different ends".into()));
        }
        Ok(f.add(g))
    }

    fn scale(&self, f: &ChainMap, s: &Scalar) -> ChainMap {
        f.scale(s)
    }

    fn shift(&self, x: &ProjComplex, n: i64) -> ProjComplex {
        x.shift(n)
    }

    fn shift_mor(&self, f: &ChainMap, n: i64) -> Result<ChainMap> {
        Ok(f.shift(n))
    }

    fn cone(&self, f: &ChainMap) -> Result<Triangle<ProjComplex, ChainMap>> {
        let c = cone(f);
        let m = minimize(&c.object);
        Ok(Triangle { f: f.clone(), object: m.object, g: m.fwd.compose(&c.incl)?, h: c.proj.compose(&m.bwd)? })
    }

    fn coproduct(&self, xs: &[ProjComplex]) -> Result<Coproduct<ProjComplex, ChainMap>> {
        coproduct_of_complexes(&self.quiver, self.field, xs)
    }

    fn compact_summand(&self, v: usize) -> ProjComplex {
        ProjComplex::concentrated(self.quiver.clone(), self.field, vec![v], 0)
    }

    fn arrow_morphism(&self, a: usize) -> Option<ChainMap> {
        Some(stalk_path_morphism(&self.quiver, self.field, self.quiver.arrow_path(a)))
    }
}

/// Iterated binary direct sums of complexes.
pub fn coproduct_of_complexes(q: &Arc<Quiver>, field: Field, xs: &[ProjComplex]) -> Result<Coproduct<ProjComplex, ChainMap>> {
    let mut object = ProjComplex::zero(q.clone(), field);
    let mut inclusions: Vec<ChainMap> = Vec::new();
    let mut projections: Vec<ChainMap> = Vec::new();
    for x in xs {
        let (sum, inc, pr) = object.direct_sum(x);
        inclusions = inclusions.iter().map(|i| inc[0].compose(i)).collect::<Result<_>>()?;
        projections = projections.iter().map(|p| p.compose(&pr[0])).collect::<Result<_>>()?;
        inclusions.push(inc[1].clone());
        projections.push(pr[1].clone());
        object = sum;
    }
    Ok(Coproduct { object, inclusions, projections })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_iso_and_sums() {
        let q = Arc::new(Quiver::linear(2));
        let b = DerivedBackend::new(q.clone(), Field::Rational);
        let c = b.compact().unwrap();
        assert_eq!(b.hom_dim(&c.object, &c.object).unwrap(), 3);
        assert!(b.is_iso(&b.identity(&c.object)).unwrap());
        assert!(!b.is_iso(&b.zero(&c.object, &c.object)).unwrap());
        for (i, p) in c.inclusions.iter().zip(&c.projections) {
            let e = b.compose(p, i).unwrap();
            assert!(b.equal(&e, &b.identity(&b.source(i))).unwrap());
        }
        let a = b.arrow_morphism(0).unwrap();
        let t = b.cone(&a).unwrap();
        assert_eq!(t.object.amplitude(), Some((-1, 0)));
        assert!(b.is_zero_mor(&b.compose(&t.g, &a).unwrap()).unwrap());
        assert!(b.is_zero_mor(&b.compose(&t.h, &t.g).unwrap()).unwrap());
        let id = b.identity(&c.object);
        assert!(b.is_zero_object(&b.cone(&id).unwrap().object).unwrap());
    }
}
