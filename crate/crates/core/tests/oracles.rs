mod common;

use common::*;
use moore_core::backend::{DerivedBackend, Triangulated};
use moore_core::cluster::ClusterBackend;
use moore_core::linalg::Field;
use moore_core::moore::{check_setup, end_identify, Moore};
use moore_core::rep::{ar_translate_inverse, ext_space, hom_space, indecomposable_projective};
use moore_core::verify::build_corpus;

#[test]
fn corpus_matches_root_count_and_tits_form() {
    for (name, q) in quivers() {
        for f in fields() {
            let c = build_corpus(&q, f, 3).unwrap();
            assert_eq!(c.len(), expected_indecomposables(name), "{name} {f}");
            for m in &c.modules {
                assert_eq!(tits(&q, m.rep.dims()), 1, "{name} {}", m.name);
            }
            let mut dims: Vec<_> = c.modules.iter().map(|m| m.rep.dims().to_vec()).collect();
            dims.sort();
            dims.dedup();
            assert_eq!(dims.len(), c.len(), "dimension vectors are distinct for Dynkin quivers");
        }
    }
}

#[test]
fn hom_space_agrees_with_commuting_square_solver() {
    for (name, q) in quivers() {
        for f in fields() {
            let c = build_corpus(&q, f, 3).unwrap();
            for a in &c.modules {
                for b in &c.modules {
                    assert_eq!(hom_space(&a.rep, &b.rep).dim(), brute_hom_dim(&a.rep, &b.rep), "{name} {f} {} {}", a.name, b.name);
                }
            }
        }
    }
}

#[test]
fn ext_dims_satisfy_the_euler_form() {
    for (name, q) in quivers() {
        let c = build_corpus(&q, Field::Rational, 3).unwrap();
        for (i, a) in c.modules.iter().enumerate() {
            for (j, b) in c.modules.iter().enumerate() {
                let e = ext_space(&a.rep, &b.rep, 1).unwrap().dim;
                assert_eq!(e, c.ext_dims[i][j]);
                let lhs = c.hom_dims[i][j] as i64 - e as i64;
                assert_eq!(lhs, euler_form(&q, a.rep.dims(), b.rep.dims()), "{name} {} {}", a.name, b.name);
            }
        }
    }
}

#[test]
fn end_dimension_is_the_path_count() {
    for (name, q) in quivers() {
        let paths = count_paths(&q);
        let d = DerivedBackend::new(q.clone(), Field::Rational);
        assert_eq!(end_identify(&d).unwrap().dim, paths, "{name}");
        let c = ClusterBackend::new(q.clone(), Field::Prime(5), 3);
        assert_eq!(end_identify(&c).unwrap().dim, paths, "{name}");
    }
    assert_eq!(count_paths(&moore_core::quiver::Quiver::linear(2)), 3);
    assert_eq!(count_paths(&moore_core::quiver::Quiver::linear(4)), 10);
}

fn cartan(q: &std::sync::Arc<moore_core::quiver::Quiver>) -> Vec<Vec<i64>> {
    let n = q.num_vertices();
    let cols: Vec<Vec<usize>> =
        (0..n).map(|j| indecomposable_projective(q, Field::Rational, j).unwrap().dims().to_vec()).collect();
    (0..n).map(|i| (0..n).map(|j| cols[j][i] as i64).collect()).collect()
}

#[test]
fn inverse_translate_follows_the_coxeter_matrix() {
    for (name, q) in quivers() {
        let phi = coxeter_inverse(&cartan(&q));
        let c = build_corpus(&q, Field::Rational, 3).unwrap();
        for m in &c.modules {
            let t = ar_translate_inverse(&m.rep);
            let image = apply(&phi, m.rep.dims());
            if t.is_zero() {
                assert!(image.iter().any(|&x| x < 0), "{name} {}: injective but Φ⁻¹ is positive", m.name);
            } else {
                let td: Vec<i64> = t.dims().iter().map(|&x| x as i64).collect();
                assert_eq!(td, image, "{name} {}", m.name);
            }
        }
    }
}

/// For `u = 2`, `Σ^{-2} ≅ τ⁻¹` in the orbit category, so
/// `dim Hom(C, Σ^{-2} C) = dim_k τ⁻¹ H`, read off the Coxeter matrix.
#[test]
fn negative_shift_two_equals_inverse_translate_of_h() {
    for (name, q) in quivers() {
        let phi = coxeter_inverse(&cartan(&q));
        let expected: i64 = (0..q.num_vertices())
            .map(|j| {
                let p = indecomposable_projective(&q, Field::Rational, j).unwrap();
                let x = apply(&phi, p.dims());
                if x.iter().all(|&v| v >= 0) {
                    x.iter().sum::<i64>()
                } else {
                    0
                }
            })
            .sum();
        for f in fields() {
            let s = check_setup(&ClusterBackend::new(q.clone(), f, 2)).unwrap();
            let d = s.table.iter().find(|v| v.shift == -2).unwrap().dim;
            assert_eq!(d as i64, expected, "{name} {f}");
            assert!(s.table.iter().filter(|v| v.shift != -2).all(|v| v.dim == 0));
            let s3 = check_setup(&ClusterBackend::new(q.clone(), f, 3)).unwrap();
            assert!(s3.pass, "{name} {f} u=3: {:?}", s3.nonzero());
        }
    }
}

#[test]
fn functor_hom_dims_match_the_module_oracle() {
    for (name, q) in quivers() {
        let c = build_corpus(&q, Field::Prime(5), 3).unwrap();
        let d = DerivedBackend::new(q.clone(), Field::Prime(5));
        let m = Moore::new(&d).unwrap();
        for a in &c.modules {
            for b in &c.modules {
                let (ma, mb) = (m.m(&a.rep).unwrap(), m.m(&b.rep).unwrap());
                let t = d.hom_dim(ma.object(), mb.object()).unwrap();
                assert_eq!(t, brute_hom_dim(&a.rep, &b.rep), "{name} {} {}", a.name, b.name);
            }
        }
    }
}
