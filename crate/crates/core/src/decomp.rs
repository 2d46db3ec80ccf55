//! Direct-sum decomposition by Fitting's lemma, and isomorphism search.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{Field, Matrix, Scalar};
use crate::rep::{hom_space, RepMorphism, Representation};

/// An indecomposable summand with explicit split maps:
/// `proj ∘ incl = id` on the piece.
#[derive(Clone, Debug)]
pub struct Piece {
    pub rep: Representation,
    pub incl: RepMorphism,
    pub proj: RepMorphism,
}

fn column_space(m: &Matrix) -> Matrix {
    let e = m.echelon();
    m.select(&(0..m.rows()).collect::<Vec<_>>(), &e.pivots)
}

fn power(f: &RepMorphism, k: usize) -> RepMorphism {
    let mut out = RepMorphism::identity(f.source());
    for _ in 0..k {
        out = f.compose(&out).expect("endomorphism");
    }
    out
}

/// Splits `M = im φ^N ⊕ ker φ^N` when both parts are nonzero.
fn fitting_split(phi: &RepMorphism) -> Option<[Piece; 2]> {
    let m = phi.source();
    let f = m.field();
    let n = m.total_dim().max(1);
    let pn = power(phi, n);
    let im: Vec<Matrix> = pn.components().iter().map(column_space).collect();
    let ker: Vec<Matrix> = pn
        .components()
        .iter()
        .map(|c| Matrix::from_columns(f, c.cols(), &c.kernel_basis()))
        .collect();
    let di: usize = im.iter().map(Matrix::cols).sum();
    let dk: usize = ker.iter().map(Matrix::cols).sum();
    if di == 0 || dk == 0 {
        return None;
    }
    let nv = m.quiver().num_vertices();
    let mut proj_im = Vec::with_capacity(nv);
    let mut proj_ker = Vec::with_capacity(nv);
    for v in 0..nv {
        let both = im[v].hstack(&ker[v]);
        let inv = both.inverse().expect("Fitting decomposition is direct");
        let all: Vec<usize> = (0..m.dim(v)).collect();
        proj_im.push(inv.select(&(0..im[v].cols()).collect::<Vec<_>>(), &all));
        proj_ker.push(inv.select(&(im[v].cols()..m.dim(v)).collect::<Vec<_>>(), &all));
    }
    let (ri, ii) = m.subrep(&im).ok()?;
    let (rk, ik) = m.subrep(&ker).ok()?;
    let pi = RepMorphism::new(m.clone(), ri.clone(), proj_im);
    let pk = RepMorphism::new(m.clone(), rk.clone(), proj_ker);
    Some([Piece { rep: ri, incl: ii, proj: pi }, Piece { rep: rk, incl: ik, proj: pk }])
}

fn random_scalar(field: Field, rng: &mut ChaCha8Rng) -> Scalar {
    field.from_i64(rng.gen_range(-3..=3))
}

/// Candidate endomorphisms for Fitting splitting, deterministic in `seed`.
fn candidates(m: &Representation, seed: u64) -> Vec<RepMorphism> {
    let f = m.field();
    let end = hom_space(m, m);
    let id = RepMorphism::identity(m);
    let mut out = Vec::new();
    let shifts: Vec<Scalar> = [0, 1, -1, 2, -2, 3].iter().map(|&k| f.from_i64(k)).collect();
    for b in &end.basis {
        for s in &shifts {
            out.push(b.sub(&id.scale(s)));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..(4 * end.dim()) {
        let c: Vec<Scalar> = (0..end.dim()).map(|_| random_scalar(f, &mut rng)).collect();
        let r = end.combine(&c);
        for s in &shifts {
            out.push(r.sub(&id.scale(s)));
        }
    }
    // exhaustive over tiny prime-field endomorphism algebras
    if let Field::Prime(p) = f {
        let d = end.dim() as u32;
        if (p as f64).powi(d as i32) <= 4096.0 {
            let total = p.pow(d);
            for code in 0..total {
                let mut k = code;
                let c: Vec<Scalar> = (0..d)
                    .map(|_| {
                        let x = k % p;
                        k /= p;
                        f.from_i64(x as i64)
                    })
                    .collect();
                out.push(end.combine(&c));
            }
        }
    }
    out
}

/// Splits `m` into pieces none of which admits a Fitting splitting among
/// the candidate endomorphisms. Over a field where every indecomposable has
/// local endomorphism ring with residue field `k` (e.g. Dynkin quivers),
/// these are the indecomposable summands.
pub fn decompose_pieces(m: &Representation, seed: u64) -> Vec<Piece> {
    if m.is_zero() {
        return Vec::new();
    }
    let end_dim = hom_space(m, m).dim();
    if end_dim == 1 {
        return vec![Piece { rep: m.clone(), incl: RepMorphism::identity(m), proj: RepMorphism::identity(m) }];
    }
    for phi in candidates(m, seed) {
        if let Some([a, b]) = fitting_split(&phi) {
            let mut out = Vec::new();
            for part in [a, b] {
                for sub in decompose_pieces(&part.rep, seed.wrapping_add(1)) {
                    out.push(Piece {
                        rep: sub.rep,
                        incl: part.incl.compose(&sub.incl).expect("composable"),
                        proj: sub.proj.compose(&part.proj).expect("composable"),
                    });
                }
            }
            return out;
        }
    }
    vec![Piece { rep: m.clone(), incl: RepMorphism::identity(m), proj: RepMorphism::identity(m) }]
}

/// An isomorphism `m -> n`, if one is found among basis elements, their
/// sum and seeded random combinations of `Hom(m, n)`.
pub fn find_iso(m: &Representation, n: &Representation, seed: u64) -> Option<RepMorphism> {
    if m.dims() != n.dims() {
        return None;
    }
    if m.is_zero() {
        return Some(RepMorphism::zero(m, n));
    }
    let h = hom_space(m, n);
    for b in &h.basis {
        if b.is_iso() {
            return Some(b.clone());
        }
    }
    let f = m.field();
    let ones: Vec<Scalar> = vec![f.one(); h.dim()];
    let s = h.combine(&ones);
    if s.is_iso() {
        return Some(s);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let c: Vec<Scalar> = (0..h.dim()).map(|_| f.from_i64(rng.gen_range(-5..=5))).collect();
        let r = h.combine(&c);
        if r.is_iso() {
            return Some(r);
        }
    }
    None
}

/// Indecomposable summands grouped up to isomorphism, with multiplicities.
pub fn decompose(m: &Representation, seed: u64) -> Vec<(Representation, usize)> {
    let mut groups: Vec<(Representation, usize)> = Vec::new();
    for p in decompose_pieces(m, seed) {
        match groups.iter_mut().find(|(r, _)| find_iso(r, &p.rep, seed).is_some()) {
            Some(g) => g.1 += 1,
            None => groups.push((p.rep, 1)),
        }
    }
    groups
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;
    use crate::rep::{indecomposable_projective, regular};
    use std::sync::Arc;

    #[test]
    fn zero_and_sums() {
        let q = Arc::new(Quiver::linear(2));
        for f in [Field::Rational, Field::prime(5).unwrap()] {
            assert!(decompose(&Representation::zero(q.clone(), f), 0).is_empty());
            let p1 = indecomposable_projective(&q, f, 0).unwrap();
            let d = decompose(&p1.power(2), 0);
            assert_eq!(d.len(), 1);
            assert_eq!(d[0].1, 2);
            assert!(find_iso(&d[0].0, &p1, 0).is_some());
            let h = decompose(&regular(&q, f), 0);
            assert_eq!(h.len(), 2);
            assert!(h.iter().all(|(_, k)| *k == 1));
        }
    }

    #[test]
    fn pieces_split() {
        let q = Arc::new(Quiver::d4());
        let f = Field::Rational;
        let h = regular(&q, f);
        let pieces = decompose_pieces(&h, 7);
        assert_eq!(pieces.len(), 4);
        for p in &pieces {
            assert!(p.incl.is_morphism() && p.proj.is_morphism());
            let e = p.proj.compose(&p.incl).unwrap();
            assert!(e.components().iter().all(Matrix::is_identity));
        }
    }
}
