"""Acceptance gate: every release criterion, one pass/fail line per
criterion.  Run with `pytest tests/test_acceptance.py -v -s`.

The criteria are exact (integer equality, zero tolerance); the only
numeric budgets are wall-clock ceilings.
"""

import time

import numpy as np
import pytest

from modlab import catalog as cat
from modlab import oracle, theorems
from modlab.classify import (PredicateId, check_predicate, classify_submodule,
                             find_quadruple_zeros, violates)
from modlab.modules import (ScalarMode, build_module, free_module,
                            module_profile, quotient_module, ring_as_module,
                            submodule_generated)
from modlab.rings import (build_ring, ideal_power, is_u_ring, trunc_poly,
                          z_ideal_w1a, zn)

P = PredicateId
II = ScalarMode.INTEGER_IMAGE


def _report(tag: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {tag}: {status}" + (f" - {detail}" if detail else ""))
    assert ok, f"criterion {tag} failed: {detail}"


@pytest.fixture(scope="module")
def suite_once(workspace):
    return theorems.run_suite(workspace, None, jobs=1)


def test_criterion_1_paper_example_regression():
    start = time.perf_counter()
    cache = {}

    # (a) Z30 integer scalars, N = (0)
    m30 = build_module(ring_as_module(zn(30), II), ring_cache=cache)
    zero30 = m30.zero_submodule()
    wc1a = check_predicate(zero30, P.WC1A)
    c1a = check_predicate(zero30, P.C1A)
    _report("1a", wc1a.holds and not c1a.holds and c1a.witness == (2, 3, 5, 1),
            f"WC1A={wc1a.holds} C1A={c1a.holds} witness={c1a.witness}")

    # (b) Z36, N = (0), m = 2: colon generator 18, 18Z not weakly 1-absorbing
    m36 = build_module(ring_as_module(zn(36), II), ring_cache=cache)
    report36 = classify_submodule(m36.zero_submodule())
    colon2 = {s.m: s for s in report36.colon_summaries}[2]
    v18 = z_ideal_w1a(18)
    _report("1b", colon2.integer_generator == 18 and not v18.holds
            and v18.witness == (2, 3, 3),
            f"generator={colon2.integer_generator} witness={v18.witness}")

    # (c) Z9, N = (0)
    m9 = build_module(ring_as_module(zn(9), II), ring_cache=cache)
    zero9 = m9.zero_submodule()
    wcp = check_predicate(zero9, P.WEAKLY_CLASSICAL_PRIME)
    cp = check_predicate(zero9, P.CLASSICAL_PRIME)
    _report("1c", wcp.holds and not cp.holds and cp.witness == (3, 3, 1),
            f"witness={cp.witness}")

    # (d) Z8^3, N = Z8 x 0 x 0: not WC1A with a replayable derived witness;
    #     N/L = (0) in M/L is WC1A
    m8c = build_module(free_module(zn(8), 3, II), ring_cache=cache)
    L = submodule_generated(m8c, [(1, 0, 0)])
    vL = check_predicate(L, P.WC1A)
    replay = (not vL.holds) and violates(L, P.WC1A, vL.witness[:3], vL.witness[3])
    quotient, _ = quotient_module(m8c, L)
    qzero = check_predicate(quotient.zero_submodule(), P.WC1A)
    _report("1d", replay and qzero.holds,
            f"witness={vL.witness} replay={replay} quotient WC1A={qzero.holds}")

    # (e) Z36^2, N = 2Z x 3Z: witness (2,2,3,(1,1)); both factors WC1A by
    #     the naive oracle
    m36s = build_module(free_module(zn(36), 2, II), cap=2048, ring_cache=cache)
    N23 = submodule_generated(m36s, [(2, 0), (0, 3)])
    v = check_predicate(N23, P.WC1A)
    enc = (1, 1)
    ok_witness = (not v.holds and v.witness[:3] == (2, 2, 3)
                  and divmod(v.witness[3], 36) == enc)
    f2 = oracle.wc1a_naive(submodule_generated(m36, [2]))[0]
    f3 = oracle.wc1a_naive(submodule_generated(m36, [3]))[0]
    _report("1e", ok_witness and f2 and f3,
            f"witness={v.witness} factors WC1A=({f2},{f3})")

    # (f) trunc_poly(2,3) is not a u-ring, witnessed by a covered ideal
    verdict = is_u_ring(build_ring(trunc_poly(2, 3)))
    union = np.zeros(16, dtype=bool)
    for J in verdict.covering_family:
        union |= J.members.astype(bool)
    covered = bool((verdict.witness_ideal.members.astype(bool) <= union).all())
    _report("1f", (not verdict.holds) and verdict.witness_ideal.size == 4
            and len(verdict.covering_family) == 3 and covered,
            f"witness size={verdict.witness_ideal.size} "
            f"family={[J.size for J in verdict.covering_family]}")

    elapsed = time.perf_counter() - start
    _report("1-runtime", elapsed < 60.0, f"{elapsed:.1f}s < 60s")


def test_criterion_2_characterization_equivalence(workspace):
    start = time.perf_counter()
    report = theorems.run_check("T14", workspace)
    elapsed = time.perf_counter() - start
    _report("2", report.status == "verified"
            and report.instances_checked >= 10_000 and elapsed < 300.0,
            f"status={report.status} evaluations={report.instances_checked} "
            f"time={elapsed:.1f}s")


def test_criterion_3_implication_lattice(workspace):
    failures = []
    instances = 0
    for mid in workspace.module_ids():
        module = workspace.module(mid)
        profile = module_profile(module)
        for name, N in workspace.submodules_for(mid)[0]:
            instances += 1
            v = {pid: check_predicate(N, pid).holds for pid in P
                 if pid is not P.NILPOTENT}
            checks = [
                (not v[P.PRIME]) or v[P.CLASSICAL_PRIME],
                (not v[P.CLASSICAL_PRIME]) or v[P.WEAKLY_CLASSICAL_PRIME],
                (not v[P.WEAKLY_CLASSICAL_PRIME]) or v[P.WC1A],
                (not v[P.C1A]) or v[P.WC1A],
                (not v[P.WEAKLY_1ABS_SUBMODULE]) or v[P.WC1A],
                (not v[P.WEAKLY_CLASSICAL_PRIME]) or v[P.WEAKLY_SEMIPRIME],
            ]
            if profile.reduced:
                checks.append(v[P.WEAKLY_CLASSICAL_PRIME]
                              == (v[P.WEAKLY_SEMIPRIME] and v[P.WC1A]))
            if profile.cyclic:
                checks.append(v[P.WEAKLY_1ABS_SUBMODULE] == v[P.WC1A])
            if not all(checks):
                failures.append((mid, name, v))
    _report("3", not failures and instances > 100,
            f"{instances} instances, {len(failures)} failures")


def test_criterion_4_theorem_suite(suite_once):
    exhaustive = [f"T{i:02d}" for i in range(1, 28) if f"T{i:02d}" not in ("T18", "T24")]
    problems = []
    for cid in exhaustive:
        check = suite_once.checks[cid]
        if check.status != "verified":
            problems.append(f"{cid}:{check.status}")
        if check.qualifying_instances < 3:
            problems.append(f"{cid}:only {check.qualifying_instances} instances")
    for cid in ("T18", "T24"):
        check = suite_once.checks[cid]
        if check.status != "verified":
            problems.append(f"{cid}:{check.status}")
        if not isinstance(check.findings, list):
            problems.append(f"{cid}: findings log missing")
    _report("4", not problems, "; ".join(problems) or
            f"all 27 checks verified, min instances="
            f"{min(c.qualifying_instances for c in suite_once.checks.values())}")


def test_criterion_5_tfinal_concrete(workspace):
    # Z8: every proper submodule of R, R^2, R/I is WC1A, and m^3 M = 0
    all_ok = True
    details = []
    ring8 = workspace.ring("zn8")
    m_cubed = ideal_power(ring8.maximal_ideals[0], 3)
    for mid in ("Z8_ring", "Z8sq_ring", "Z8q_ring"):
        module = workspace.module(mid)
        subs, complete = workspace.submodules_for(mid)
        wc1a_all = all(check_predicate(N, P.WC1A).holds for _, N in subs)
        annihilates = bool((module.action_table[m_cubed.elements()]
                            == module.zero).all())
        all_ok &= complete and wc1a_all and annihilates
        details.append(f"{mid}: all-WC1A={wc1a_all} m3M=0={annihilates}")
    # Z16: both sides false with the documented witness
    m16 = workspace.module("Z16_ring")
    N8 = submodule_generated(m16, [8])
    v = check_predicate(N8, P.WC1A)
    witness_ok = (not v.holds and v.witness == (2, 2, 2, 1)
                  and violates(N8, P.WC1A, v.witness[:3], v.witness[3]))
    ring16 = workspace.ring("zn16")
    cube16 = ideal_power(ring16.maximal_ideals[0], 3)
    rhs16 = bool((m16.action_table[cube16.elements()] == m16.zero).all())
    _report("5", all_ok and witness_ok and not rhs16,
            "; ".join(details) + f"; Z16 witness={v.witness} m3M=0={rhs16}")


def test_criterion_6_oracle_equivalence(workspace):
    instances = 0
    mismatches = []
    seen_pairs = []
    for mid in workspace.module_ids():
        module = workspace.module(mid)
        if module.ring.size > 16 or module.size > 64:
            continue
        subs, complete = workspace.submodules_for(mid)
        if complete:
            seen_pairs.append((mid, module))
    extra_specs = [
        ("F2^5", free_module(zn(2), 5)),
        ("F2^4", free_module(zn(2), 4)),
        ("F3^3", free_module(zn(3), 3)),
        ("Z4^2-int", free_module(zn(4), 2, II)),
        ("Z8x8-int", free_module(zn(8), 2, II)),
    ]
    for label, spec in extra_specs:
        seen_pairs.append((label, build_module(spec)))
    for label, module in seen_pairs:
        for N in module.submodule_lattice():
            if not N.is_proper():
                continue
            instances += 1
            fast = check_predicate(N, P.WC1A)
            slow_holds, slow_witness = oracle.wc1a_naive(N)
            if fast.holds != slow_holds or (not fast.holds
                                            and fast.witness != slow_witness):
                mismatches.append((label, N.gens()))
    _report("6", instances >= 500 and not mismatches,
            f"{instances} instances, {len(mismatches)} mismatches")


def test_criterion_7_determinism(default_cat, suite_once, workspace):
    # a second full run over a fresh workspace must serialize identically
    ws2 = cat.Workspace(default_cat)
    again = theorems.run_suite(ws2, None, jobs=8)
    b1 = cat.dump_report(suite_once.doc(), include_runtime=False)
    b2 = cat.dump_report(again.doc(), include_runtime=False)
    _report("7", b1 == b2, f"jobs=1 vs jobs=8 bytes equal={b1 == b2}")


def test_criterion_8_eda14(workspace):
    from modlab.rings import every_proper_ideal_w1a
    ok8, _ = every_proper_ideal_w1a(workspace.ring("zn8"))
    ok23, _ = every_proper_ideal_w1a(workspace.ring("r2x3"))
    ok12, witness12 = every_proper_ideal_w1a(workspace.ring("zn12"))
    witness_ok = False
    if witness12 is not None:
        ideal, triple = witness12
        witness_ok = (sorted(int(x) for x in ideal.elements()) == [0, 6]
                      and triple == (3, 3, 2))
    _report("8", ok8 and ok23 and not ok12 and witness_ok,
            f"Z8={ok8} Z2xZ3={ok23} Z12={ok12} witness={witness12 and witness12[1]}")
