use pyo3::prelude::*;
use pyo3::types::PyDict;

fn run(code: &std::ffi::CStr) {
    Python::initialize();
    Python::attach(|py| {
        let module = pyo3::wrap_pymodule!(pydilate::pydilate)(py);
        let globals = PyDict::new(py);
        globals.set_item("pd", module).unwrap();
        if let Err(e) = py.run(code, Some(&globals), None) {
            e.print(py);
            panic!("python snippet failed");
        }
    });
}

#[test]
fn operators_match_functions() {
    run(c"
a = pd.GroupSet(range(6))
assert a + a == pd.sumset(a, a)
assert a - a == pd.difference_set(a, a)
assert 3 * a == pd.dilate(3, a)
assert len(pd.dilate_sum(a, 3, a)) == 4 * 6 - 3
assert str(pd.doubling(a)) == '11/6'
");
}

#[test]
fn reports_are_dicts() {
    run(c"
rs = pd.verify(['thm1', 'thm2'], 'structured', seed=3)
assert {'id', 'family', 'params', 'lhs', 'rhs', 'pass'} <= set(rs[0])
assert all(r['pass'] for r in rs)
assert pd.fp_formula(40, 40) > 2**64
");
}

#[test]
fn errors_map_to_value_error() {
    run(c"
try:
    pd.generate('no-such-family')
except ValueError as e:
    assert 'no-such-family' in str(e)
else:
    raise AssertionError
");
}
