"""Smoke test for the pydilate extension module.

Build first with `maturin develop` (or `pip install .`) from crates/py, then
run `python python/smoke_test.py` or `pytest python/smoke_test.py`.
"""

from fractions import Fraction

import pydilate as pd


def test_sumset_and_dilates():
    a = pd.GroupSet(range(5))
    assert len(a) == 5 and a.dim == 1
    assert (a + a).values() == list(range(9))
    assert len(a - a) == 9
    assert (2 * a).values() == [0, 2, 4, 6, 8]
    assert len(pd.dilate_sum(a, 2, a)) == 13
    assert pd.doubling(a) == Fraction(9, 5)
    assert 3 in a and 7 not in a


def test_points_and_text_round_trip():
    b = pd.GroupSet([(0, 0), (1, 0), (0, 1)])
    assert b.dim == 2 and (1, 0) in b
    assert pd.GroupSet.from_text(b.to_text()) == b
    assert b.translate((1, 1)).points() == [(1, 1), (1, 2), (2, 1)]


def test_families_and_exponent():
    g = pd.generate("geometric", n=6, ratio=3)
    assert len(g) == 6
    assert pd.doubling(g) == Fraction(7, 2)
    assert pd.exponent_emp(pd.GroupSet(range(20)), 2) > 1.0
    assert pd.fp_formula(1, 2) == 7


def test_verify_and_partition():
    reports = pd.verify("thm1", "structured")
    assert reports and all(r["pass"] for r in reports)
    trace = pd.partition(pd.generate("geometric", n=8, ratio=3), m=2)
    assert trace


def test_bad_input_raises_value_error():
    for bad in (lambda: pd.GroupSet([(0, 0), (1,)]),
                lambda: pd.partition(pd.GroupSet(range(16)), m=2)):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("bad input accepted")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            fn()
            print(f"ok {name}")
