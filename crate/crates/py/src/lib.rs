//! Python bindings: quivers, the module corpus, and a `Session` that
//! builds the Moore functor on one backend and runs the check suites.

use std::sync::Arc;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use moore_core::backend::{DerivedBackend, Triangulated};
use moore_core::cluster::ClusterBackend;
use moore_core::error::Error;
use moore_core::linalg::Field;
use moore_core::moore::{check_setup, Moore};
use moore_core::quiver;
use moore_core::rep::{hom_space, Representation as Rep};
use moore_core::verify::{build_corpus, compare_embeddings, run_suites, StalkEmbedding, Suite};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Config(_) | Error::QuiverParse { .. } | Error::NotDynkin(_) => PyValueError::new_err(e.to_string()),
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

/// A finite acyclic quiver with vertices numbered from 1.
#[pyclass(frozen, from_py_object)]
#[derive(Clone)]
struct Quiver {
    inner: Arc<quiver::Quiver>,
}

#[pymethods]
impl Quiver {
    /// Parses `vertices: n` followed by `arrow: i -> j` lines.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Quiver { inner: Arc::new(quiver::Quiver::parse(text).map_err(py_err)?) })
    }

    #[staticmethod]
    fn linear(n: usize) -> Self {
        Quiver { inner: Arc::new(quiver::Quiver::linear(n)) }
    }

    #[staticmethod]
    fn d4() -> Self {
        Quiver { inner: Arc::new(quiver::Quiver::d4()) }
    }

    #[getter]
    fn num_vertices(&self) -> usize {
        self.inner.num_vertices()
    }

    /// Dimension of the path algebra.
    #[getter]
    fn num_paths(&self) -> usize {
        self.inner.num_paths()
    }

    fn is_dynkin(&self) -> bool {
        self.inner.is_dynkin()
    }

    fn positive_roots(&self) -> PyResult<Vec<Vec<i64>>> {
        self.inner.positive_roots().map_err(py_err)
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn __repr__(&self) -> String {
        self.inner.to_string()
    }
}

/// An indecomposable module from the corpus.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
struct Module {
    #[pyo3(get)]
    name: String,
    rep: Rep,
}

#[pymethods]
impl Module {
    #[getter]
    fn dims(&self) -> Vec<usize> {
        self.rep.dims().to_vec()
    }

    fn __repr__(&self) -> String {
        format!("Module({}, dims={:?})", self.name, self.rep.dims())
    }
}

fn parse_field(s: &str) -> PyResult<Field> {
    Field::parse(s).map_err(py_err)
}

/// Every indecomposable module of a Dynkin quiver.
#[pyfunction]
#[pyo3(signature = (quiver, field="Q", seed=0))]
fn corpus(quiver: &Quiver, field: &str, seed: u64) -> PyResult<Vec<Module>> {
    let c = build_corpus(&quiver.inner, parse_field(field)?, seed).map_err(py_err)?;
    Ok(c.modules.into_iter().map(|m| Module { name: m.name, rep: m.rep }).collect())
}

enum Inner {
    Cluster(ClusterBackend),
    Derived(DerivedBackend),
}

macro_rules! with_backend {
    ($inner:expr, $b:ident => $body:expr) => {
        match $inner {
            Inner::Cluster($b) => $body,
            Inner::Derived($b) => $body,
        }
    };
}

/// The Moore functor on a chosen backend: `"cluster"` (the u-cluster
/// category) or `"derived"` (bounded complexes of projectives).
#[pyclass(frozen)]
struct Session {
    quiver: Quiver,
    field: Field,
    inner: Inner,
}

fn hom_dims<B: Triangulated>(b: &B, a: &Rep, c: &Rep) -> PyResult<(usize, usize)> {
    let m = Moore::new(b).map_err(py_err)?;
    let r = m.full_faithfulness(a, c).map_err(py_err)?;
    Ok((hom_space(a, c).dim(), r.hom_t))
}

fn unit_iso<B: Triangulated>(b: &B, a: &Rep) -> PyResult<bool> {
    let m = Moore::new(b).map_err(py_err)?;
    Ok(m.m(a).map_err(py_err)?.unit.is_iso())
}

fn comparison<B: StalkEmbedding>(b: &B, q: &Arc<quiver::Quiver>, f: Field, seed: u64) -> PyResult<bool> {
    let m = Moore::new(b).map_err(py_err)?;
    let c = build_corpus(q, f, seed).map_err(py_err)?;
    Ok(compare_embeddings(&m, &c).map_err(py_err)?.pass())
}

#[pymethods]
impl Session {
    #[new]
    #[pyo3(signature = (quiver, field="Q", u=2, backend="cluster"))]
    fn new(quiver: Quiver, field: &str, u: i64, backend: &str) -> PyResult<Self> {
        let field = parse_field(field)?;
        let inner = match backend {
            "cluster" if u >= 2 => Inner::Cluster(ClusterBackend::new(quiver.inner.clone(), field, u)),
            "cluster" => return Err(PyValueError::new_err(format!("u must be at least 2, got {u}"))),
            "derived" => Inner::Derived(DerivedBackend::new(quiver.inner.clone(), field)),
            other => return Err(PyValueError::new_err(format!("unknown backend `{other}`"))),
        };
        Ok(Session { quiver, field, inner })
    }

    /// `(n, [(shift, dim Hom(C, Σ^shift C))], gate)`.
    fn setup(&self) -> PyResult<(usize, Vec<(i64, usize)>, bool)> {
        let r = with_backend!(&self.inner, b => check_setup(b)).map_err(py_err)?;
        Ok((r.n, r.table.iter().map(|v| (v.shift, v.dim)).collect(), r.gate))
    }

    /// `(dim Hom(A, B), dim Hom(M A, M B))`.
    fn hom_dims(&self, a: &Module, b: &Module) -> PyResult<(usize, usize)> {
        with_backend!(&self.inner, be => hom_dims(be, &a.rep, &b.rep))
    }

    /// Whether the unit `A -> Hom(C, M A)` is an isomorphism.
    fn unit_is_iso(&self, a: &Module) -> PyResult<bool> {
        with_backend!(&self.inner, b => unit_iso(b, &a.rep))
    }

    /// Whether `M` is naturally isomorphic to the canonical embedding on
    /// the whole corpus.
    #[pyo3(signature = (seed=0))]
    fn compare_embeddings(&self, seed: u64) -> PyResult<bool> {
        with_backend!(&self.inner, b => comparison(b, &self.quiver.inner, self.field, seed))
    }

    /// Runs the suites and returns the report as JSON.
    #[pyo3(signature = (suites=None, seed=0))]
    fn run(&self, suites: Option<Vec<String>>, seed: u64) -> PyResult<String> {
        let suites = match suites {
            None => Suite::ALL.to_vec(),
            Some(s) => s.iter().map(|x| Suite::parse(x)).collect::<Result<_, _>>().map_err(py_err)?,
        };
        let name = self.quiver.inner.to_string();
        let report = with_backend!(&self.inner, b => run_suites(b, &name, &suites, seed)).map_err(py_err)?;
        serde_json::to_string(&report).map_err(|e| PyRuntimeError::new_err(e.to_string()))
    }
}

#[pymodule]
pub fn moore_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Quiver>()?;
    m.add_class::<Module>()?;
    m.add_class::<Session>()?;
    m.add_function(wrap_pyfunction!(corpus, m)?)?;
    Ok(())
}
