"""Ring construction, ideals, localization, and ideal predicates."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from modlab import rings
from modlab.errors import CapExceededError, SpecError
from modlab.rings import (build_ring, classify_ideal, every_proper_ideal_w1a,
                          ideal_product, is_product_of_two_fields, is_u_ring,
                          jacobson_radical, localize_ring, product,
                          rings_isomorphic, stabilized_power, trunc_poly,
                          z_ideal_w1a, z_w1a_bounded_search, zn)


@pytest.fixture(scope="module")
def z12():
    return build_ring(zn(12))


@pytest.fixture(scope="module")
def tp():
    return build_ring(trunc_poly(2, 3))


def test_zn_units():
    r30 = build_ring(zn(30))
    assert r30.size == 30
    assert int(r30.units.sum()) == 8  # residues coprime to 30
    r2 = build_ring(zn(2))
    assert r2.unit_elements().tolist() == [1]


def test_trunc_poly_shape(tp):
    assert tp.size == 16
    assert tp.is_local
    # the radical squares to zero
    rad = jacobson_radical(tp)
    assert rad.size == 8
    assert ideal_product(rad, rad).is_zero()


def test_ring_cap():
    with pytest.raises(CapExceededError):
        build_ring(zn(300))


def test_bad_specs():
    with pytest.raises(SpecError):
        build_ring(zn(1))
    with pytest.raises(SpecError):
        build_ring(trunc_poly(4, 2))  # p must be prime
    with pytest.raises(SpecError):
        build_ring(rings.RingSpec(kind="mystery"))


def test_broken_table_rejected(z12):
    add = np.array(z12.add_table)
    add[5, 7] = add[7, 5] = 1  # true value is 0; breaks associativity
    with pytest.raises(SpecError):
        rings.FiniteRing(z12.spec, add, z12.mul_table, 0, 1,
                         list(z12.element_names))


def test_ideal_generated(z12):
    I = z12.ideal([8, 6])
    assert sorted(I.elements().tolist()) == [0, 2, 4, 6, 8, 10]
    assert z12.ideal([5]).size == 12  # unit generator
    assert z12.ideal([]).elements().tolist() == [0]


def test_ideal_closure_idempotence(z12, tp):
    for ring in (z12, tp):
        for I in ring.ideal_lattice():
            again = ring.ideal(tuple(int(x) for x in I.elements()))
            assert again == I


def test_ideal_lattice_counts(z12):
    assert len(z12.ideal_lattice()) == 6  # divisors of 12
    assert len(build_ring(zn(2)).ideal_lattice()) == 2


def test_trunc_poly_lattice_has_lines(tp):
    sizes = sorted(i.size for i in tp.ideal_lattice())
    assert sizes.count(2) == 7  # seven lines inside the radical
    assert len(tp.ideal_lattice()) == 17


def test_ideal_product(z12):
    two, three = z12.ideal([2]), z12.ideal([3])
    assert sorted(ideal_product(two, three).elements().tolist()) == [0, 6]
    I = z12.ideal([4])
    assert ideal_product(I, z12.unit_ideal()) == I


def test_ideal_product_associative(z12, tp):
    for ring in (z12, tp):
        lattice = ring.ideal_lattice()
        sample = lattice[:: max(1, len(lattice) // 5)]
        for a in sample:
            for b in sample:
                for c in sample:
                    assert ideal_product(a, ideal_product(b, c)) == \
                        ideal_product(ideal_product(a, b), c)


def test_power_stabilization(z12, tp):
    rad = jacobson_radical(tp)
    stopped, k = stabilized_power(rad)
    assert stopped.is_zero() and k == 2
    stopped, _ = stabilized_power(z12.ideal([2]))
    assert sorted(stopped.elements().tolist()) == [0, 4, 8]


def test_jacobson(z12):
    assert sorted(jacobson_radical(z12).elements().tolist()) == [0, 6]
    assert jacobson_radical(build_ring(zn(7))).is_zero()


def test_localize_ring(z12):
    loc, _ = localize_ring(z12, [3])
    assert loc.size == 4
    assert rings_isomorphic(loc, build_ring(zn(4)))
    r30 = build_ring(zn(30))
    loc30, _ = localize_ring(r30, [6])
    assert loc30.size == 5
    assert rings_isomorphic(loc30, build_ring(zn(5)))


def test_localize_at_units_is_isomorphism(z12):
    loc, mapping = localize_ring(z12, z12.unit_elements().tolist())
    assert loc.size == z12.size
    assert mapping.is_bijective()
    # the map preserves both tables
    t = mapping.table
    assert np.array_equal(t[z12.add_table], loc.add_table[np.ix_(t, t)])
    assert np.array_equal(t[z12.mul_table], loc.mul_table[np.ix_(t, t)])


def test_localize_zero_rejected(z12):
    with pytest.raises(SpecError):
        localize_ring(z12, [6, 2])  # 12 = 6*2 -> 0 enters S


def test_classify_ideal(z12):
    rep = classify_ideal(z12, z12.ideal([6]))
    assert not rep.weakly_one_abs_prime
    assert rep.weakly_one_abs_witness == (3, 3, 2)
    rep2 = classify_ideal(z12, z12.ideal([2]))
    assert rep2.prime and rep2.maximal and rep2.weakly_one_abs_prime
    # an improper ideal is reported non-proper
    assert not classify_ideal(z12, z12.unit_ideal()).proper


def test_prime_implication_chain(workspace):
    # prime => 1-absorbing prime => weakly 1-absorbing prime
    for rid in workspace.ring_ids():
        ring = workspace.ring(rid)
        for I in ring.proper_ideals():
            rep = classify_ideal(ring, I)
            if rep.prime:
                assert rep.one_abs_prime, (rid, I.render())
            if rep.one_abs_prime:
                assert rep.weakly_one_abs_prime, (rid, I.render())


def test_every_proper_ideal_w1a():
    assert every_proper_ideal_w1a(build_ring(zn(8)))[0]
    ok, witness = every_proper_ideal_w1a(build_ring(zn(12)))
    assert not ok
    ideal, triple = witness
    assert sorted(ideal.elements().tolist()) == [0, 6]
    assert triple == (3, 3, 2)


def test_product_of_two_fields():
    assert is_product_of_two_fields(build_ring(product(zn(2), zn(3))))
    assert not is_product_of_two_fields(build_ring(zn(8)))
    assert not is_product_of_two_fields(build_ring(product(zn(4), zn(9))))


def test_u_ring():
    for n in range(2, 65):
        assert is_u_ring(build_ring(zn(n))).holds, n
    verdict = is_u_ring(build_ring(trunc_poly(2, 3)))
    assert not verdict.holds
    I = verdict.witness_ideal
    assert I.size == 4
    family = verdict.covering_family
    assert len(family) == 3 and all(J.size == 2 for J in family)
    union = np.zeros(16, dtype=bool)
    for J in family:
        assert not (I.members <= J.members).all()
        union |= J.members.astype(bool)
    assert (I.members.astype(bool) <= union).all()


def test_u_ring_reduction_statement(tp):
    # is_u_ring(R) false gives a family of non-containing ideals covering I
    verdict = is_u_ring(tp)
    I = verdict.witness_ideal
    for J in verdict.covering_family:
        assert not (I.members <= J.members).all()


def test_z_ideal_w1a_closed_form():
    assert z_ideal_w1a(0).holds
    assert z_ideal_w1a(5).holds
    assert z_ideal_w1a(29).holds
    v18 = z_ideal_w1a(18)
    assert not v18.holds and v18.witness == (2, 3, 3)
    assert not z_ideal_w1a(1).holds  # the improper ideal Z
    assert not z_ideal_w1a(4).holds


def test_z_ideal_w1a_validation_gate():
    # the closed form must match the bounded brute-force search for d <= 30
    for d in range(2, 31):
        found = z_w1a_bounded_search(d, d * d)
        rule = z_ideal_w1a(d).holds
        if d == 1 or rule:
            assert found is None, (d, found)
        else:
            assert found is not None, d
            x, y, z = found
            assert (x * y * z) % d == 0 and (x * y) % d != 0 and z % d != 0


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=2, max_value=24),
       st.lists(st.integers(min_value=0, max_value=23), max_size=3))
def test_closure_idempotence_random(n, gens):
    ring = build_ring(zn(n))
    I = ring.ideal([g % n for g in gens])
    assert ring.ideal(tuple(int(x) for x in I.elements())) == I


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=2, max_value=16), st.integers(min_value=2, max_value=16))
def test_product_ring_axioms_random(a, b):
    ring = build_ring(product(zn(a), zn(b)))  # the build itself runs the scan
    assert ring.size == a * b
    assert int(ring.units.sum()) >= 1
