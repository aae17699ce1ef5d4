"""Module construction, submodules, quotients, products, localization,
homomorphisms, free powers, and structure profiles."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from modlab import modules
from modlab.errors import CapExceededError, SpecError
from modlab.modules import (ScalarMode, build_module, colon_module, colon_ring,
                            colon_ring_integer, direct_product, enumerate_homs,
                            free_module, ideal_times_module, localize_module,
                            module_profile, multiplication_profile,
                            nonunit_representative, nonunit_scalars,
                            product_submodule, quotient_module, ring_as_module,
                            submodule_generated, tensor_free)
from modlab.rings import build_ring, product, zn

II = ScalarMode.INTEGER_IMAGE


@pytest.fixture(scope="module")
def cache():
    return {}


@pytest.fixture(scope="module")
def m12(cache):
    return build_module(ring_as_module(zn(12)), ring_cache=cache)


@pytest.fixture(scope="module")
def m30i(cache):
    return build_module(ring_as_module(zn(30), II), ring_cache=cache)


@pytest.fixture(scope="module")
def m8c(cache):
    return build_module(free_module(zn(8), 3, II), ring_cache=cache)


def test_build_sizes(cache, m30i, m8c):
    assert m30i.size == 30
    assert m8c.size == 512
    with pytest.raises(CapExceededError):
        build_module(free_module(zn(36), 2, II), cap=1024, ring_cache=cache)


def test_integer_image_needs_zn(cache):
    with pytest.raises(SpecError):
        build_module(ring_as_module(product(zn(2), zn(3)), II), ring_cache=cache)


def test_zero_module_rejected(m12):
    with pytest.raises(SpecError):
        quotient_module(m12, m12.full_submodule())


def test_submodule_generated(cache, m30i):
    m36s = build_module(free_module(zn(36), 2, II), cap=2048, ring_cache=cache)
    N = submodule_generated(m36s, [(2, 0), (0, 3)])
    assert N.size == 216  # 18 * 12
    assert submodule_generated(m30i, []).size == 1
    assert submodule_generated(m30i, [1]).size == 30


def test_lattice_counts(cache, m12, m30i):
    assert len(m12.submodule_lattice()) == 6
    f22 = build_module(free_module(zn(2), 2), ring_cache=cache)
    assert len(f22.submodule_lattice()) == 5
    assert len(m30i.submodule_lattice()) == 8


def test_lattice_closure_idempotence(m12):
    for sub in m12.submodule_lattice():
        again = m12.submodule(tuple(int(x) for x in sub.elements()))
        assert again == sub


def test_lattice_cap(m8c):
    with pytest.raises(CapExceededError):
        m8c.submodule_lattice()  # size 512 > full enumeration bound


def test_colon_ring(cache, m12, m30i):
    m36 = build_module(ring_as_module(zn(36), II), ring_cache=cache)
    zero = m36.zero_submodule()
    assert colon_ring_integer(zero, [2]) == 18
    assert colon_ring(zero, [0]).size == 36  # K = {0}: the whole ring
    faithful = colon_ring(m12.zero_submodule())
    assert faithful.is_zero()


def test_colon_module(cache, m12, m30i):
    assert sorted(colon_module(m12.zero_submodule(), 2).elements().tolist()) == [0, 6]
    J = m12.ring.zero_ideal()
    assert colon_module(m12.zero_submodule(), J).size == 12
    got = colon_module(m30i.zero_submodule(), 6)
    assert sorted(got.elements().tolist()) == [0, 5, 10, 15, 20, 25]


def test_colon_contains_n(m12):
    for N in m12.submodule_lattice():
        if not N.is_proper():
            continue
        for a in range(12):
            assert (N.members <= colon_module(N, a).members).all()


def test_quotient(cache, m8c):
    L = submodule_generated(m8c, [(1, 0, 0)])
    Q, proj = quotient_module(m8c, L)
    assert Q.size == 64
    # projection transport: pi^-1(pi(N)) == N for N containing L
    N = submodule_generated(m8c, [(1, 0, 0), (0, 2, 0)])
    assert proj.preimage_of(proj.image_of(N)) == N
    m12 = build_module(ring_as_module(zn(12)), ring_cache=cache)
    Q2, _ = quotient_module(m12, submodule_generated(m12, [6]))
    assert Q2.size == 6


def test_direct_product_same_ring(cache):
    m36 = build_module(ring_as_module(zn(36), II), ring_cache=cache)
    prod = direct_product(m36, m36)
    assert prod.size == 1296
    N = product_submodule(prod, submodule_generated(m36, [2]).members,
                          submodule_generated(m36, [3]).members)
    assert N.size == 18 * 12


def test_direct_product_rejects(cache, m12):
    m8 = build_module(ring_as_module(zn(8)), ring_cache=cache)
    with pytest.raises(SpecError):
        direct_product(m12, m8)  # different rings
    m12i = build_module(ring_as_module(zn(12), II), ring_cache=cache)
    with pytest.raises(SpecError):
        direct_product(m12, m12i)  # mode mismatch


def test_product_ring_variant(cache):
    rp = build_ring(product(zn(4), zn(9)))
    m4 = build_module(ring_as_module(zn(4)), ring_cache={zn(4): rp.factor_rings[0]})
    m9 = build_module(ring_as_module(zn(9)), ring_cache={zn(9): rp.factor_rings[1]})
    prod = direct_product(m4, m9, product_ring=rp)
    assert prod.size == 36
    assert len(prod.submodule_lattice()) == 9
    assert module_profile(prod).faithful


def test_localize_module(cache, m12):
    loc, info = localize_module(m12, [3])
    assert loc.size == 4
    m30 = build_module(ring_as_module(zn(30)), ring_cache=cache)
    loc30, _ = localize_module(m30, [6])
    assert loc30.size == 5
    # localization at units is an isomorphism
    locu, infou = localize_module(m12, m12.ring.unit_elements().tolist())
    assert locu.size == m12.size
    emap = infou["element_map"]
    assert np.unique(emap).size == m12.size
    assert np.array_equal(emap[m12.add_table], locu.add_table[np.ix_(emap, emap)])


def test_localize_needs_ring_mode(m30i):
    with pytest.raises(SpecError):
        localize_module(m30i, [6])


def test_enumerate_homs(cache, m12):
    homs = enumerate_homs(m12, m12)
    assert len(homs) == 12  # multiplication by each element
    assert sum(h.is_mono() for h in homs) == 4  # the units
    zero_present = any((h.table == 0).all() for h in homs)
    assert zero_present
    for h in homs:
        assert np.array_equal(h.table[m12.add_table],
                              m12.add_table[np.ix_(h.table, h.table)])
    m12i = build_module(ring_as_module(zn(12), II), ring_cache=cache)
    with pytest.raises(SpecError):
        enumerate_homs(m12, m12i)


def test_hom_cap(cache):
    big = build_module(free_module(zn(8), 3, II), ring_cache=cache)
    with pytest.raises(CapExceededError):
        enumerate_homs(big, big, candidate_cap=100)


def test_tensor_free(cache, m12, m30i):
    power, Nk = tensor_free(m12, 2, submodule_generated(m12, [2]))
    assert power.size == 144 and Nk.size == 36
    _, zeros = tensor_free(m30i, 2, m30i.zero_submodule())
    assert zeros.size == 1
    # flat-colon identity instance: (N^2 : 2) = (N : 2)^2 for N = (0) in Z12
    zero = m12.zero_submodule()
    p2, z2 = tensor_free(m12, 2, zero)
    lhs = colon_module(z2, 2)
    col = colon_module(zero, 2).members.astype(bool)
    rhs = np.repeat(col, 12) & np.tile(col, 12)
    assert np.array_equal(lhs.members.astype(bool), rhs)


def test_multiplication_profile(cache, m12):
    prof = multiplication_profile(m12)
    assert prof.is_multiplication
    two, three = submodule_generated(m12, [2]), submodule_generated(m12, [3])
    assert sorted(prof.submodule_product(two, three).elements().tolist()) == [0, 6]
    assert prof.submodule_product(two, m12.full_submodule()) == two
    f22 = build_module(free_module(zn(2), 2), ring_cache=cache)
    assert not multiplication_profile(f22).is_multiplication


def test_cyclic_modules_are_multiplication(workspace):
    for mid in workspace.module_ids():
        module = workspace.module(mid)
        if module.size > 128:
            continue
        if module_profile(module).cyclic:
            assert multiplication_profile(module).is_multiplication, mid


def test_module_profile(cache, m12):
    m36 = build_module(ring_as_module(zn(36)), ring_cache=cache)
    p = module_profile(m36)
    assert p.cyclic and p.faithful and not p.reduced
    p12 = module_profile(m12)
    torsion = sorted(np.flatnonzero(p12.torsion_mask).tolist())
    assert torsion == [0, 2, 3, 4, 6, 8, 9, 10]
    assert p12.non_torsion
    field = build_module(ring_as_module(zn(2)), ring_cache=cache)
    assert module_profile(field).reduced
    # finite integer-scalar modules are all-torsion and never faithful
    m30i = build_module(ring_as_module(zn(30), II), ring_cache=cache)
    pi = module_profile(m30i)
    assert pi.torsion_module and not pi.faithful and not pi.non_torsion


def test_integer_image_quantifier_soundness():
    # every residue class mod n contains a nonunit integer r + k*n, k <= 2
    for n in range(2, 40):
        module = build_module(ring_as_module(zn(n), II))
        assert nonunit_scalars(module).size == n
        for r in range(n):
            rep = nonunit_representative(module, r)
            assert rep % n == r and abs(rep) != 1
            assert (rep - r) // n <= 2


def test_ideal_times_module(cache, m12):
    I = m12.ring.ideal([2])
    assert ideal_times_module(I, m12) == submodule_generated(m12, [2])


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=2, max_value=20),
       st.lists(st.integers(min_value=0, max_value=400), max_size=2))
def test_submodule_closure_idempotence_random(n, gens):
    module = build_module(free_module(zn(n), 2, II), cap=2048)
    N = module.submodule([g % module.size for g in gens])
    assert module.submodule(tuple(int(x) for x in N.elements())) == N
