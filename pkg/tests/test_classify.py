"""Predicate decisions, witness order and replay, quadruple zeros, and the
characterization-theorem conditions."""

import numpy as np
import pytest

from modlab import oracle
from modlab.classify import (ConditionFamily, PredicateId,
                             characterization_condition, check_predicate,
                             classify_submodule, find_quadruple_zeros,
                             is_quadruple_zero, ordered_scalar_tuples,
                             scan_context, violates)
from modlab.errors import SpecError
from modlab.modules import (ScalarMode, build_module, free_module,
                            module_profile, quotient_module, ring_as_module,
                            submodule_generated)
from modlab.rings import build_ring, zn, z_ideal_w1a

II = ScalarMode.INTEGER_IMAGE
P = PredicateId


@pytest.fixture(scope="module")
def cache():
    return {}


@pytest.fixture(scope="module")
def m30i(cache):
    return build_module(ring_as_module(zn(30), II), ring_cache=cache)


@pytest.fixture(scope="module")
def m9i(cache):
    return build_module(ring_as_module(zn(9), II), ring_cache=cache)


def test_z30_examples(m30i):
    zero = m30i.zero_submodule()
    assert check_predicate(zero, P.WC1A).holds
    v = check_predicate(zero, P.C1A)
    assert not v.holds and v.witness == (2, 3, 5, 1)
    zeros, truncated = find_quadruple_zeros(zero, 3)
    assert zeros[0].as_tuple() == (2, 3, 5, 1)
    assert truncated


def test_z9_examples(m9i):
    zero = m9i.zero_submodule()
    assert check_predicate(zero, P.WEAKLY_CLASSICAL_PRIME).holds
    v = check_predicate(zero, P.CLASSICAL_PRIME)
    assert not v.holds and v.witness == (3, 3, 1)


def test_zero_submodule_always_wc1a(workspace):
    for mid in ("Z8_ring", "Z12_ring", "Z36_int", "TP_ring"):
        module = workspace.module(mid)
        assert check_predicate(module.zero_submodule(), P.WC1A).holds


def test_z8cube_example(cache):
    m8c = build_module(free_module(zn(8), 3, II), ring_cache=cache)
    L = submodule_generated(m8c, [(1, 0, 0)])
    v = check_predicate(L, P.WC1A)
    assert not v.holds
    a, b, c, m = v.witness
    assert violates(L, P.WC1A, (a, b, c), m)   # the witness replays
    Q, _ = quotient_module(m8c, L)
    assert check_predicate(Q.zero_submodule(), P.WC1A).holds


def test_z36sq_example(cache):
    m36s = build_module(free_module(zn(36), 2, II), cap=2048, ring_cache=cache)
    N = submodule_generated(m36s, [(2, 0), (0, 3)])
    v = check_predicate(N, P.WC1A)
    assert not v.holds
    assert v.witness[:3] == (2, 2, 3)
    assert divmod(v.witness[3], 36) == (1, 1)
    # colon summary ties into the integer-ideal rule
    m36 = build_module(ring_as_module(zn(36), II), ring_cache=cache)
    report = classify_submodule(m36.zero_submodule())
    by_m = {s.m: s for s in report.colon_summaries}
    assert by_m[2].integer_generator == 18
    assert not by_m[2].weakly_one_abs
    assert not z_ideal_w1a(18).holds


def test_ring_mode_witness(cache):
    m16 = build_module(ring_as_module(zn(16)), ring_cache=cache)
    N8 = submodule_generated(m16, [8])
    v = check_predicate(N8, P.WC1A)
    assert not v.holds and v.witness == (2, 2, 2, 1)


def test_improper_rejected(m30i):
    with pytest.raises(SpecError):
        check_predicate(m30i.full_submodule(), P.WC1A)


def test_nilpotent(cache):
    m12 = build_module(ring_as_module(zn(12)), ring_cache=cache)
    v = check_predicate(submodule_generated(m12, [6]), P.NILPOTENT)
    assert v.holds and v.witness == (1,)
    m16 = build_module(ring_as_module(zn(16)), ring_cache=cache)
    v2 = check_predicate(submodule_generated(m16, [2]), P.NILPOTENT)
    assert v2.holds and v2.witness == (3,)  # (2Z)^3 * 2Z = 16Z = 0 in Z16
    # the colon of 4Z12 stabilizes at 4Z12 without reaching zero
    v3 = check_predicate(submodule_generated(m12, [4]), P.NILPOTENT)
    assert not v3.holds and v3.witness is None


def test_witness_order_integer_mode(m30i):
    tuples = ordered_scalar_tuples(m30i, 2, True)
    # products of nonunit representatives ascend; residue 1 lifts to 31
    reps = [(a if a != 1 else 31) * (b if b != 1 else 31) for a, b in tuples]
    assert reps == sorted(reps)
    assert tuples[0] == (0, 0)


def test_witness_replay_all_false_verdicts(workspace):
    checked = 0
    for mid in ("Z30_int", "Z9_int", "Z12_ring", "Z16_ring", "TP_ring", "Z12_int"):
        module = workspace.module(mid)
        for _, N in workspace.submodules_for(mid)[0]:
            for pid in P:
                if pid is P.NILPOTENT:
                    continue
                v = check_predicate(N, pid)
                if not v.holds:
                    checked += 1
                    assert violates(N, pid, v.witness[:-1], v.witness[-1]), \
                        (mid, pid, v.witness)
    assert checked > 20


def test_quadruple_zero_replay(m30i):
    zeros, _ = find_quadruple_zeros(m30i.zero_submodule(), 16)
    for qz in zeros:
        assert is_quadruple_zero(m30i.zero_submodule(), *qz.as_tuple())


def test_field_ring_mode_has_no_quadruple_zeros(workspace):
    # nonunits = {0} forces abm = 0 inside N: no violation survives
    module = workspace.module("Z2_ring")
    zeros, _ = find_quadruple_zeros(module.zero_submodule(), 4)
    assert zeros == []


def test_implication_lattice(workspace):
    # PRIME => CP => WCP => WC1A ; C1A => WC1A ; W1ABS => WC1A ; WCP => WSP
    for mid in workspace.module_ids():
        module = workspace.module(mid)
        if module.size > 100:
            continue
        for name, N in workspace.submodules_for(mid)[0]:
            v = {pid: check_predicate(N, pid).holds for pid in P
                 if pid is not P.NILPOTENT}
            if v[P.PRIME]:
                assert v[P.CLASSICAL_PRIME], (mid, name)
            if v[P.CLASSICAL_PRIME]:
                assert v[P.WEAKLY_CLASSICAL_PRIME], (mid, name)
            if v[P.WEAKLY_CLASSICAL_PRIME]:
                assert v[P.WC1A] and v[P.WEAKLY_SEMIPRIME], (mid, name)
            if v[P.C1A]:
                assert v[P.WC1A], (mid, name)
            if v[P.WEAKLY_1ABS_SUBMODULE]:
                assert v[P.WC1A], (mid, name)


def test_reduced_equivalence(workspace):
    # reduced modules: WCP <=> weakly semiprime + WC1A
    hit = 0
    for mid in workspace.module_ids():
        module = workspace.module(mid)
        if module.size > 100 or not module_profile(module).reduced:
            continue
        hit += 1
        for name, N in workspace.submodules_for(mid)[0]:
            wcp = check_predicate(N, P.WEAKLY_CLASSICAL_PRIME).holds
            rhs = (check_predicate(N, P.WEAKLY_SEMIPRIME).holds
                   and check_predicate(N, P.WC1A).holds)
            assert wcp == rhs, (mid, name)
    assert hit >= 3


def test_cyclic_equivalence(workspace):
    hit = 0
    for mid in workspace.module_ids():
        module = workspace.module(mid)
        if module.size > 64 or not module_profile(module).cyclic:
            continue
        hit += 1
        for name, N in workspace.submodules_for(mid)[0]:
            assert (check_predicate(N, P.WEAKLY_1ABS_SUBMODULE).holds
                    == check_predicate(N, P.WC1A).holds), (mid, name)
    assert hit >= 5


def test_characterization_condition_examples(m30i, cache):
    zero = m30i.zero_submodule()
    assert characterization_condition(zero, ConditionFamily.ELEMENTWISE, 2).holds
    m8 = build_module(ring_as_module(zn(8)), ring_cache=cache)
    assert characterization_condition(m8.zero_submodule(), ConditionFamily.SUBMODULEWISE, 3).holds
    m8c = build_module(free_module(zn(8), 3, II), ring_cache=cache)
    L = submodule_generated(m8c, [(1, 0, 0)])
    assert not characterization_condition(L, ConditionFamily.ELEMENTWISE, 2).holds


def test_elementwise_equivalence_small(workspace):
    for mid in ("Z30_int", "Z12_ring", "Z9_int", "TP_ring"):
        subs, _ = workspace.submodules_for(mid)
        for name, N in subs:
            base = check_predicate(N, P.WC1A).holds
            for k in range(2, 9):
                assert characterization_condition(N, ConditionFamily.ELEMENTWISE, k).holds == base, \
                    (mid, name, k)


def test_submodulewise_chain_small(workspace):
    for mid in ("Z12_ring", "Z8_ring", "Z9_int"):
        subs, _ = workspace.submodules_for(mid)
        for name, N in subs:
            conds = {1: check_predicate(N, P.WC1A).holds}
            for k in range(2, 9):
                conds[k] = characterization_condition(N, ConditionFamily.SUBMODULEWISE, k).holds
            for a, b in ((2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8)):
                assert not (conds[a] and not conds[b]), (mid, name, a, b)
            assert not (conds[8] and not conds[1]), (mid, name)


def test_colon_at_outside_elements_has_no_units(workspace):
    # when abm is outside N the colon (N :_R abm) cannot contain a unit
    module = workspace.module("Z12_ring")
    units = module.ring.units
    for name, N in workspace.submodules_for("Z12_ring")[0]:
        ctx = scan_context(N)
        for e in range(module.size):
            if N.contains(e):
                continue
            colset = ctx.IN[:, e]   # x with x*e in N
            assert not (colset & units).any(), (name, e)


def test_theo5_restatement(workspace):
    # WC1A N, abcK inside N, no quadruple-zero on K: abK or cK inside N
    module = workspace.module("Z30_int")
    lattice = module.submodule_lattice()
    for name, N in workspace.submodules_for("Z30_int")[0]:
        if not check_predicate(N, P.WC1A).holds:
            continue
        nus = [int(x) for x in range(30)]
        for K in lattice:
            ke = [int(x) for x in K.elements()]
            for a in nus[:10]:
                for b in nus[:10]:
                    for c in nus[:10]:
                        prod3 = (a * b * c) % 30
                        if not all((prod3 * k) % 30 in
                                   set(N.elements().tolist()) for k in ke):
                            continue
                        if any(is_quadruple_zero(N, a, b, c, k) for k in ke):
                            continue
                        ab = (a * b) % 30
                        abk = all(N.contains((ab * k) % 30) for k in ke)
                        ck = all(N.contains((c * k) % 30) for k in ke)
                        assert abk or ck, (name, a, b, c)


def test_oracle_agreement_smoke(workspace):
    for mid in ("Z30_int", "Z12_ring", "Z9_int", "TP_ring", "Z16_ring"):
        for name, N in workspace.submodules_for(mid)[0]:
            opt = check_predicate(N, P.WC1A)
            holds, witness = oracle.wc1a_naive(N)
            assert holds == opt.holds, (mid, name)
            if not holds:
                assert witness == opt.witness, (mid, name)
