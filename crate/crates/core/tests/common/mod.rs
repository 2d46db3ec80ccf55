//! Oracles that share no code with the library's linear algebra.
#![allow(dead_code)]

use std::sync::Arc;

use moore_core::linalg::{Field, Matrix, Scalar};
use moore_core::quiver::Quiver;
use moore_core::rep::Representation;

/// Prime used to reduce rational data; large enough that the small
/// integer matrices of the corpus keep their rank.
pub const ORACLE_PRIME: u64 = 1_000_000_007;

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    r
}

fn reduce(s: &Scalar, p: u64) -> u64 {
    match s {
        Scalar::P { v, .. } => *v % p,
        Scalar::Q(_) => {
            let text = s.to_string_exact();
            let (n, d) = match text.split_once('/') {
                Some((n, d)) => (n.parse::<i128>().unwrap(), d.parse::<i128>().unwrap()),
                None => (text.parse::<i128>().unwrap(), 1),
            };
            let n = n.rem_euclid(p as i128) as u64;
            let d = d.rem_euclid(p as i128) as u64;
            (n as u128 * pow_mod(d, p - 2, p) as u128 % p as u128) as u64
        }
    }
}

pub fn oracle_prime(f: Field) -> u64 {
    match f {
        Field::Rational => ORACLE_PRIME,
        Field::Prime(p) => p,
    }
}

/// Rank of a dense matrix over `F_p` by plain row reduction.
pub fn rank_mod(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = pow_mod(rows[rank][c], p - 2, p);
        for x in rows[rank].iter_mut() {
            *x = (*x as u128 * inv as u128 % p as u128) as u64;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let k = rows[r][c];
                for j in 0..ncols {
                    let sub = (k as u128 * rows[rank][j] as u128 % p as u128) as u64;
                    rows[r][j] = (rows[r][j] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn entries(m: &Matrix, p: u64) -> Vec<Vec<u64>> {
    (0..m.rows()).map(|r| (0..m.cols()).map(|c| reduce(m.get(r, c), p)).collect()).collect()
}

/// `dim Hom(A, B)` as the solution space of the commuting squares
/// `φ_t A_a = B_a φ_s`, assembled entry by entry.
pub fn brute_hom_dim(a: &Representation, b: &Representation) -> usize {
    let p = oracle_prime(a.field());
    let q = a.quiver();
    let n = q.num_vertices();
    let mut offset = vec![0usize; n + 1];
    for v in 0..n {
        offset[v + 1] = offset[v] + b.dim(v) * a.dim(v);
    }
    let unknowns = offset[n];
    let var = |v: usize, i: usize, j: usize| offset[v] + i * a.dim(v) + j;
    let mut rows = Vec::new();
    for (k, &(s, t)) in q.arrows().iter().enumerate() {
        let (am, bm) = (entries(a.arrow_map(k), p), entries(b.arrow_map(k), p));
        for i in 0..b.dim(t) {
            for j in 0..a.dim(s) {
                let mut row = vec![0u64; unknowns];
                for l in 0..a.dim(t) {
                    let c = var(t, i, l);
                    row[c] = (row[c] + am[l][j]) % p;
                }
                for l in 0..b.dim(s) {
                    let c = var(s, l, j);
                    row[c] = (row[c] + p - bm[i][l]) % p;
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return unknowns;
    }
    unknowns - rank_mod(rows, p)
}

/// Number of paths, trivial ones included, by depth-first search.
pub fn count_paths(q: &Quiver) -> usize {
    fn from(q: &Quiver, v: usize) -> usize {
        1 + q.arrows().iter().filter(|&&(s, _)| s == v).map(|&(_, t)| from(q, t)).sum::<usize>()
    }
    (0..q.num_vertices()).map(|v| from(q, v)).sum()
}

/// `⟨x, y⟩ = Σ x_i y_i − Σ_{a : i -> j} x_i y_j`, which equals
/// `dim Hom − dim Ext¹` over a hereditary path algebra.
pub fn euler_form(q: &Quiver, x: &[usize], y: &[usize]) -> i64 {
    let d: i64 = x.iter().zip(y).map(|(&a, &b)| (a * b) as i64).sum();
    d - q.arrows().iter().map(|&(s, t)| (x[s] * y[t]) as i64).sum::<i64>()
}

/// Tits form `q(d) = ⟨d, d⟩`; positive roots of a Dynkin quiver are the
/// positive vectors with `q = 1`.
pub fn tits(q: &Quiver, d: &[usize]) -> i64 {
    euler_form(q, d, d)
}

pub fn expected_indecomposables(name: &str) -> usize {
    match name {
        "A2" => 3,
        "A3" => 6,
        "D4" => 12,
        _ => unreachable!(),
    }
}

pub fn quivers() -> Vec<(&'static str, Arc<Quiver>)> {
    vec![
        ("A2", Arc::new(Quiver::linear(2))),
        ("A3", Arc::new(Quiver::linear(3))),
        ("D4", Arc::new(Quiver::d4())),
    ]
}

pub fn fields() -> Vec<Field> {
    vec![Field::Rational, Field::Prime(5)]
}

/// The Coxeter matrix `Φ⁻¹ = −C (Cᵀ)⁻¹` acting on dimension vectors,
/// where the columns of `C` are the dimension vectors of the
/// indecomposable projectives. For a non-injective indecomposable `X`,
/// `dim τ⁻¹X = Φ⁻¹ dim X`.
pub fn coxeter_inverse(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let ct: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| cartan[j][i] as f64).collect()).collect();
    let inv = invert(ct);
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| -(0..n).map(|k| cartan[i][k] as f64 * inv[k][j]).sum::<f64>().round() as i64)
                .collect()
        })
        .collect()
}

fn invert(mut a: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut inv: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| f64::from(u8::from(i == j))).collect()).collect();
    for c in 0..n {
        let piv = (c..n).max_by(|&x, &y| a[x][c].abs().total_cmp(&a[y][c].abs())).unwrap();
        a.swap(c, piv);
        inv.swap(c, piv);
        let d = a[c][c];
        for j in 0..n {
            a[c][j] /= d;
            inv[c][j] /= d;
        }
        for r in 0..n {
            if r != c {
                let k = a[r][c];
                for j in 0..n {
                    a[r][j] -= k * a[c][j];
                    inv[r][j] -= k * inv[c][j];
                }
            }
        }
    }
    inv
}

pub fn apply(m: &[Vec<i64>], x: &[usize]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(x).map(|(a, &b)| a * b as i64).sum()).collect()
}
