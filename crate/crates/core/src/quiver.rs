//! Finite acyclic quivers and the path basis of their path algebras.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

const MAX_PATHS: usize = 20_000;

/// A path, read left to right: `arrows[0]` is traversed first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub start: usize,
    pub end: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// A finite quiver without oriented cycles. Vertices are `0..n`
/// internally and `1..=n` in text.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    n: usize,
    arrows: Vec<(usize, usize)>,
    paths: Vec<Path>,
    arrow_path: Vec<usize>,
    // concat[p][q]: p followed by q
    concat: Vec<Vec<Option<usize>>>,
    between: Vec<Vec<Vec<usize>>>,
}

impl Quiver {
    pub fn new(n: usize, arrows: Vec<(usize, usize)>) -> Result<Quiver> {
        for &(s, t) in &arrows {
            if s >= n {
                return Err(Error::UnknownVertex(s + 1));
            }
            if t >= n {
                return Err(Error::UnknownVertex(t + 1));
            }
            if s == t {
                return Err(Error::Config(format!("loop at vertex {}", s + 1)));
            }
        }
        if topological_order(n, &arrows).is_none() {
            return Err(Error::Config("quiver has an oriented cycle".into()));
        }

        let mut paths: Vec<Path> = (0..n).map(|v| Path { start: v, end: v, arrows: vec![] }).collect();
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut arrow_path = vec![0; arrows.len()];
        let mut frontier: Vec<usize> = (0..n).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &pid in &frontier {
                for (a, &(s, t)) in arrows.iter().enumerate() {
                    if s != paths[pid].end {
                        continue;
                    }
                    let mut seq = paths[pid].arrows.clone();
                    seq.push(a);
                    if index.contains_key(&seq) {
                        continue;
                    }
                    let id = paths.len();
                    if id >= MAX_PATHS {
                        return Err(Error::Config("too many paths".into()));
                    }
                    if seq.len() == 1 {
                        arrow_path[a] = id;
                    }
                    index.insert(seq.clone(), id);
                    paths.push(Path { start: paths[pid].start, end: t, arrows: seq });
                    next.push(id);
                }
            }
            frontier = next;
        }

        let np = paths.len();
        let mut concat = vec![vec![None; np]; np];
        for p in 0..np {
            for q in 0..np {
                if paths[p].end != paths[q].start {
                    continue;
                }
                concat[p][q] = if paths[p].is_trivial() {
                    Some(q)
                } else if paths[q].is_trivial() {
                    Some(p)
                } else {
                    let mut seq = paths[p].arrows.clone();
                    seq.extend_from_slice(&paths[q].arrows);
                    Some(index[&seq])
                };
            }
        }
        let mut between = vec![vec![Vec::new(); n]; n];
        for (id, p) in paths.iter().enumerate() {
            between[p.start][p.end].push(id);
        }
        Ok(Quiver { n, arrows, paths, arrow_path, concat, between })
    }

    /// Linear quiver `1 -> 2 -> ... -> n`.
    pub fn linear(n: usize) -> Quiver {
        Quiver::new(n, (1..n).map(|i| (i - 1, i)).collect()).expect("linear quiver is acyclic")
    }

    /// D4 with all arrows pointing into the central vertex 1.
    pub fn d4() -> Quiver {
        Quiver::new(4, vec![(1, 0), (2, 0), (3, 0)]).expect("D4 is acyclic")
    }

    /// Parses the text format: `vertices: n` then `arrow: i -> j` lines,
    /// 1-based. Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Quiver> {
        let mut n: Option<usize> = None;
        let mut arrows = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::QuiverParse { line: lineno + 1, msg: msg.to_string() };
            let (key, value) = line.split_once(':').ok_or_else(|| err("expected `key: value`"))?;
            match key.trim() {
                "vertices" => {
                    if n.is_some() {
                        return Err(err("duplicate `vertices` line"));
                    }
                    n = Some(value.trim().parse().map_err(|_| err("bad vertex count"))?);
                }
                "arrow" => {
                    let n = n.ok_or_else(|| err("`arrow` before `vertices`"))?;
                    let (s, t) = value.split_once("->").ok_or_else(|| err("expected `i -> j`"))?;
                    let s: usize = s.trim().parse().map_err(|_| err("bad source vertex"))?;
                    let t: usize = t.trim().parse().map_err(|_| err("bad target vertex"))?;
                    if s == 0 || s > n || t == 0 || t > n {
                        return Err(err("vertex out of range"));
                    }
                    arrows.push((s - 1, t - 1));
                }
                other => return Err(err(&format!("unknown key `{other}`"))),
            }
        }
        let n = n.ok_or(Error::QuiverParse { line: 0, msg: "missing `vertices` line".into() })?;
        Quiver::new(n, arrows).map_err(|e| match e {
            Error::Config(msg) => Error::QuiverParse { line: 0, msg },
            other => other,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("vertices: {}\n", self.n);
        for &(a, b) in &self.arrows {
            s.push_str(&format!("arrow: {} -> {}\n", a + 1, b + 1));
        }
        s
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn num_paths(&self) -> usize {
        self.paths.len()
    }

    pub fn path(&self, id: usize) -> &Path {
        &self.paths[id]
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    /// Path id of the trivial path at `v`.
    pub fn trivial(&self, v: usize) -> usize {
        v
    }

    pub fn arrow_path(&self, a: usize) -> usize {
        self.arrow_path[a]
    }

    /// `p` followed by `q`, if they meet.
    pub fn concat(&self, p: usize, q: usize) -> Option<usize> {
        self.concat[p][q]
    }

    /// Ids of the paths from `s` to `t`.
    pub fn between(&self, s: usize, t: usize) -> &[usize] {
        &self.between[s][t]
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n { Ok(()) } else { Err(Error::UnknownVertex(v + 1)) }
    }

    /// Tits form `q(d) = sum d_v^2 - sum_{arrows} d_s d_t`.
    pub fn tits_form(&self, d: &[i64]) -> i64 {
        let sq: i64 = d.iter().map(|x| x * x).sum();
        let cross: i64 = self.arrows.iter().map(|&(s, t)| d[s] * d[t]).sum();
        sq - cross
    }

    /// True when the symmetrized Tits form is positive definite, i.e. the
    /// underlying graph is a disjoint union of ADE diagrams.
    pub fn is_dynkin(&self) -> bool {
        let n = self.n;
        // 2q as an integer matrix; test leading principal minors exactly.
        let mut m = vec![vec![num_rational::BigRational::from_integer(0.into()); n]; n];
        for i in 0..n {
            m[i][i] = num_rational::BigRational::from_integer(2.into());
        }
        for &(s, t) in &self.arrows {
            m[s][t] -= num_rational::BigRational::from_integer(1.into());
            m[t][s] -= num_rational::BigRational::from_integer(1.into());
        }
        // Cholesky-style elimination: all pivots positive iff definite.
        for k in 0..n {
            let pivot = m[k][k].clone();
            if pivot <= num_rational::BigRational::from_integer(0.into()) {
                return false;
            }
            for i in k + 1..n {
                let f = &m[i][k] / &pivot;
                for j in k..n {
                    let v = &m[k][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        true
    }

    /// Positive roots of a Dynkin quiver: dimension vectors with `q(d) = 1`.
    pub fn positive_roots(&self) -> Result<Vec<Vec<i64>>> {
        if !self.is_dynkin() {
            return Err(Error::NotDynkin("Tits form is not positive definite".into()));
        }
        // Coefficients of positive roots in ADE types never exceed 6.
        let n = self.n;
        let mut out = Vec::new();
        let mut d = vec![0i64; n];
        fn rec(q: &Quiver, i: usize, d: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
            if i == d.len() {
                if d.iter().any(|&x| x > 0) && q.tits_form(d) == 1 {
                    out.push(d.clone());
                }
                return;
            }
            for v in 0..=6 {
                d[i] = v;
                rec(q, i + 1, d, out);
            }
            d[i] = 0;
        }
        if n > 8 {
            return Err(Error::NotDynkin("more than 8 vertices is outside the supported size cap".into()));
        }
        rec(self, 0, &mut d, &mut out);
        Ok(out)
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(n={}; ", self.n)?;
        let arrows: Vec<String> = self.arrows.iter().map(|(s, t)| format!("{}->{}", s + 1, t + 1)).collect();
        write!(f, "{})", arrows.join(", "))
    }
}

fn topological_order(n: usize, arrows: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    for &(_, t) in arrows {
        indeg[t] += 1;
    }
    let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop() {
        order.push(v);
        for &(s, t) in arrows {
            if s == v {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    ready.push(t);
                }
            }
        }
    }
    (order.len() == n).then_some(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_paths() {
        let q = Quiver::linear(2);
        assert_eq!(q.num_paths(), 3);
        assert_eq!(q.between(0, 1).len(), 1);
        assert_eq!(q.between(1, 0).len(), 0);
        let a = q.arrow_path(0);
        assert_eq!(q.concat(q.trivial(0), a), Some(a));
        assert_eq!(q.concat(a, q.trivial(1)), Some(a));
        assert_eq!(q.concat(a, a), None);
    }

    #[test]
    fn parse_and_reject_cycles() {
        let q = Quiver::parse("vertices: 3\narrow: 1 -> 2\narrow: 2 -> 3\n").unwrap();
        assert_eq!(q, Quiver::linear(3));
        assert_eq!(q.num_paths(), 6);
        let cyc = Quiver::parse("vertices: 2\narrow: 1 -> 2\narrow: 2 -> 1\n");
        assert!(matches!(cyc, Err(Error::QuiverParse { .. })));
        assert!(Quiver::parse("vertices: 2\narrow: 1 -> 1\n").is_err());
        assert!(Quiver::parse("vertices: 2\narrow: 1 -> 3\n").is_err());
        assert!(Quiver::parse("arrow: 1 -> 2\n").is_err());
    }

    #[test]
    fn roots() {
        assert_eq!(Quiver::linear(2).positive_roots().unwrap().len(), 3);
        assert_eq!(Quiver::linear(3).positive_roots().unwrap().len(), 6);
        assert_eq!(Quiver::d4().positive_roots().unwrap().len(), 12);
        let kronecker = Quiver::new(2, vec![(0, 1), (0, 1)]).unwrap();
        assert!(!kronecker.is_dynkin());
    }
}
