use pyo3::prelude::*;
use pyo3::types::PyDict;

fn with_module<F: FnOnce(&Bound<'_, PyDict>)>(f: F) {
    Python::initialize();
    Python::attach(|py| {
        let m = pyo3::wrap_pymodule!(steinerpow_py::steinerpow_py)(py);
        let g = PyDict::new(py);
        g.set_item("sp", m).unwrap();
        f(&g);
    });
}

fn check(g: &Bound<'_, PyDict>, code: &str) {
    let c = std::ffi::CString::new(code).unwrap();
    g.py().run(&c, Some(g), None).unwrap_or_else(|e| panic!("{code}: {e}"));
}

#[test]
fn recognize_and_verify_from_python() {
    with_module(|g| {
        check(g, "r = sp.recognize_4_steiner(sp.Graph.complete(3))\nassert r.accepted and r.reason is None");
        check(g, "r = sp.recognize_4_steiner(sp.Graph.cycle(4))\nassert not r and r.reason == 'not-chordal'");
        check(
            g,
            "gr, t = sp.random_yes_instance(4, 10, 5, 3)\n\
             r = sp.recognize_4_steiner(gr)\n\
             assert r.tree.verify(gr, 4)\n\
             assert sp.witness_invariants(r.tree, gr) is None\n\
             assert sp.SteinerTree.parse(r.tree.to_text()).to_text() == r.tree.to_text()\n\
             assert r.tree.power(4) == gr",
        );
        check(
            g,
            "gr, t = sp.random_leaf_instance(6, 9, 4, 2)\n\
             r = sp.recognize_6_leaf(gr)\n\
             assert r.tree.verify(gr, 6, leaf=True)",
        );
    });
}

#[test]
fn parse_errors_raise_value_error() {
    with_module(|g| {
        check(
            g,
            "try:\n    sp.Graph.parse('2 1\\n0 x\\n')\n    raise AssertionError('no error')\nexcept ValueError as e:\n    assert 'line 2' in str(e)",
        );
    });
}

#[test]
fn oracle_outcomes() {
    with_module(|g| {
        check(g, "s, t = sp.oracle(sp.Graph.path(3), 4)\nassert s == 'found' and t.verify(sp.Graph.path(3), 4)");
        check(g, "assert sp.oracle(sp.Graph.cycle(4), 4) == ('not-found', None)");
        check(g, "assert sp.oracle(sp.Graph.complete(5), 4, node_cap=0)[0] == 'inconclusive'");
    });
}
