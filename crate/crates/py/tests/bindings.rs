use pyo3::prelude::*;
use pyo3::types::PyModule;

#[test]
fn module_drives_a_session() {
    Python::initialize();
    Python::attach(|py| {
        let m = PyModule::new(py, "moore_py").unwrap();
        moore_py::moore_py(&m).unwrap();
        let sys = py.import("sys").unwrap();
        sys.getattr("modules").unwrap().set_item("moore_py", &m).unwrap();
        let code = c"
import json, moore_py
q = moore_py.Quiver.linear(3)
mods = moore_py.corpus(q, 'Fp:5')
assert len(mods) == 6
s = moore_py.Session(q, field='Fp:5', u=3, backend='cluster')
n, table, gate = s.setup()
assert n == 1 and gate
assert all(s.unit_is_iso(a) for a in mods)
assert s.compare_embeddings()
r = json.loads(s.run(['setup', 'moore']))
assert all(x['pass'] for x in r['records'])
try:
    moore_py.Session(q, u=1)
    raise SystemExit('u = 1 accepted')
except ValueError:
    pass
";
        py.run(code, None, None).unwrap();
    });
}
