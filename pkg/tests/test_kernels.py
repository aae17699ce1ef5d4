"""The numba kernels and their numpy fallbacks must agree bit for bit."""

import numpy as np
import pytest

from modlab import kernels
from modlab.modules import ScalarMode, build_module, free_module, ring_as_module
from modlab.rings import build_ring, zn

HAVE_NUMBA = kernels.numba_requested()

pytestmark = pytest.mark.skipif(not HAVE_NUMBA, reason="numba disabled or missing")


@pytest.fixture(scope="module")
def m12():
    return build_module(ring_as_module(zn(12)))


@pytest.fixture(scope="module")
def f82():
    return build_module(free_module(zn(8), 2))


def _pair(name):
    loop = kernels._compile(getattr(kernels, f"_{name}_loop"))
    vect = getattr(kernels, f"_{name}_np")
    return loop, vect


def test_closure_agreement(f82):
    loop, vect = _pair("closure_members")
    for seeds in ([], [9], [8, 1], [17, 34]):
        s = np.asarray(seeds, dtype=np.int64)
        a = loop(f82.add_table, f82.action_table, s, f82.size)
        b = vect(f82.add_table, f82.action_table, s, f82.size)
        assert np.array_equal(a, b)


def test_sumset_agreement(f82):
    loop, vect = _pair("sumset")
    A = f82.submodule((9,)).elements()
    B = f82.submodule((16,)).elements()
    assert np.array_equal(loop(f82.add_table, A, B, f82.size),
                          vect(f82.add_table, A, B, f82.size))


def test_axiom_scan_agreement(m12):
    for name, args in (
        ("assoc_violation", (m12.add_table,)),
        ("action_assoc_violation", (m12.ring.mul_table, m12.action_table)),
        ("action_distrib_violation", (m12.add_table, m12.action_table)),
    ):
        loop, vect = _pair(name)
        assert loop(*args) == vect(*args) == -1


def test_axiom_scan_detects_breakage(m12):
    broken = m12.add_table.copy()
    broken[3, 4] = broken[4, 3] = 0
    loop, vect = _pair("assoc_violation")
    assert loop(broken) >= 0
    assert vect(broken) >= 0


def test_hom_extend_agreement(m12, f82):
    loop, vect = _pair("hom_extend")
    gens = np.asarray(f82.generators_hint, dtype=np.int64)
    for images in ((0, 0), (8, 1), (1, 8), (9, 9)):
        im = np.asarray(images, dtype=np.int64)
        a = loop(f82.add_table, f82.action_table, f82.add_table, f82.action_table,
                 gens, im, f82.size)
        b = vect(f82.add_table, f82.action_table, f82.add_table, f82.action_table,
                 gens, im, f82.size)
        assert np.array_equal(a, b)
