use std::sync::Arc;

use moore_core::backend::{DerivedBackend, Triangulated};
use moore_core::cluster::ClusterBackend;
use moore_core::linalg::Field;
use moore_core::moore::Moore;
use moore_core::quiver::Quiver;
use moore_core::rep::{indecomposable_projective, Representation};
use moore_core::verify::{build_corpus, canonical_embed, compare_embeddings};

fn a2() -> Arc<Quiver> {
    Arc::new(Quiver::linear(2))
}

fn shifted_compact_is_member<B: Triangulated>(b: &B) -> bool {
    let m = Moore::new(b).unwrap();
    let c = b.compact().unwrap().object;
    m.membership(&b.shift(&c, -1), 1).unwrap().member
}

#[test]
fn membership_of_desuspended_compact() {
    let q = a2();
    assert!(shifted_compact_is_member(&DerivedBackend::new(q.clone(), Field::Rational)));
    assert!(shifted_compact_is_member(&ClusterBackend::new(q.clone(), Field::Rational, 3)));
    // Hom(C, Σ^-2 C) ≅ Hom(H, τ⁻¹H) ≠ 0 when u = 2
    assert!(!shifted_compact_is_member(&ClusterBackend::new(q, Field::Rational, 2)));
}

#[test]
fn compact_is_a_member_of_every_level() {
    for u in [2, 3] {
        let b = ClusterBackend::new(a2(), Field::Prime(5), u);
        let m = Moore::new(&b).unwrap();
        let c = b.compact().unwrap().object;
        assert!(m.membership(&c, 1).unwrap().member);
        assert_eq!(m.membership(&c, 1).unwrap().dims, vec![0]);
    }
}

#[test]
fn canonical_embedding_of_h_and_zero() {
    let q = a2();
    let b = ClusterBackend::new(q.clone(), Field::Rational, 2);
    let h = indecomposable_projective(&q, Field::Rational, 0)
        .unwrap()
        .direct_sum(&indecomposable_projective(&q, Field::Rational, 1).unwrap())
        .sum;
    let x = canonical_embed(&b, &h).unwrap();
    let c = b.compact().unwrap().object;
    assert_eq!(b.hom_dim(&x, &c).unwrap(), 3);
    assert_eq!(b.hom_dim(&c, &x).unwrap(), 3);
    let z = canonical_embed(&b, &Representation::zero(q, Field::Rational)).unwrap();
    assert!(b.is_zero_object(&z).unwrap());
}

#[test]
fn m_of_a_projective_is_its_summand() {
    let q = a2();
    let b = DerivedBackend::new(q.clone(), Field::Rational);
    let m = Moore::new(&b).unwrap();
    for v in 0..2 {
        let p = indecomposable_projective(&q, Field::Rational, v).unwrap();
        let c = m.m(&p).unwrap();
        assert!(c.is_projective());
        let iso = b.hom_basis(c.object(), m.summand(v)).unwrap().into_iter().any(|f| b.is_iso(&f).unwrap());
        assert!(iso);
    }
}

#[test]
fn comparison_on_a3_with_u3() {
    let q = Arc::new(Quiver::linear(3));
    let b = ClusterBackend::new(q.clone(), Field::Rational, 3);
    let m = Moore::new(&b).unwrap();
    let corpus = build_corpus(&q, Field::Rational, 0).unwrap();
    let cert = compare_embeddings(&m, &corpus).unwrap();
    assert_eq!(cert.sigmas.len(), 6);
    assert!(cert.pass());
}
