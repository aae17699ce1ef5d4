"""Executable registry of the classification theorems over a catalog.

Every statement is a check with one of three modes:

* EXHAUSTIVE  -- hypotheses are satisfiable on the catalog; the conclusion
                 is asserted on every qualifying instance and any
                 counterexample fails the run (it would be a build bug).
* CONDITIONAL -- the statement needs the union-avoiding module hypothesis
                 that no finite ring satisfies (every residue field makes
                 (R/m)^2 a union of |R/m|+1 proper lines, see
                 `um_obstruction`); the directions whose proofs avoid that
                 hypothesis are asserted exhaustively, the remaining
                 direction is only evaluated and logged as findings.
* MINER       -- pure search for separating examples; never fails.

Checks are independent and deterministic; `run_suite` aggregates by check
id so worker count never changes the report.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

import numpy as np

from .catalog import Workspace
from .classify import (ConditionFamily, PredicateId,
                       characterization_condition, check_predicate,
                       find_quadruple_zeros, scan_context, _pair_products)
from .errors import CapExceededError, SpecError
from .modules import (FiniteModule, ScalarMode, Submodule, build_module,
                      colon_ring, colon_ring_integer, direct_product,
                      enumerate_homs, ideal_times_module, localize_module,
                      module_profile, multiplication_profile,
                      product_submodule, quantifier_ideals, quotient_module,
                      ring_as_module, tensor_free)
from .rings import (FiniteRing, classify_ideal, every_proper_ideal_w1a,
                    ideal_power, is_product_of_two_fields, jacobson_radical,
                    z_ideal_1abs, z_ideal_w1a, zn)


class CheckMode(str, Enum):
    EXHAUSTIVE = "EXHAUSTIVE"
    CONDITIONAL = "CONDITIONAL"
    MINER = "MINER"


@dataclass
class CheckReport:
    check_id: str
    mode: str
    status: str = "verified"
    qualifying_instances: int = 0
    instances_checked: int = 0
    counterexamples: list = field(default_factory=list)
    findings: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    runtime_ms: int = 0

    def counterexample(self, instance: str, detail: str, witness=None) -> None:
        self.counterexamples.append(
            {"instance": instance, "detail": detail,
             "witness": list(witness) if witness is not None else None})

    def finding(self, instance: str, detail: str, witness=None) -> None:
        self.findings.append(
            {"instance": instance, "detail": detail,
             "witness": list(witness) if witness is not None else None})

    def skip(self, instance: str, reason: str) -> None:
        self.skipped.append({"instance": instance, "reason": reason})

    def doc(self) -> dict:
        return {
            "check_id": self.check_id,
            "mode": self.mode,
            "status": self.status,
            "qualifying_instances": self.qualifying_instances,
            "instances_checked": self.instances_checked,
            "counterexamples": self.counterexamples,
            "findings": self.findings,
            "skipped": self.skipped,
            "runtime_ms": self.runtime_ms,
        }


@dataclass
class SuiteReport:
    catalog_digest: str
    checks: dict[str, CheckReport] = field(default_factory=dict)

    def exit_status(self) -> int:
        return 1 if any(c.status == "counterexample" for c in self.checks.values()) else 0

    def doc(self) -> dict:
        return {
            "schema_version": 1,
            "catalog_digest": self.catalog_digest,
            "checks": [self.checks[k].doc() for k in sorted(self.checks)],
        }


# --------------------------------------------------------------------------- #
# Shared helpers
# --------------------------------------------------------------------------- #

def _evict_one(cache: dict) -> None:
    # tolerant under concurrent eviction: losing a race just skips a round
    try:
        cache.pop(next(iter(cache)), None)
    except (StopIteration, RuntimeError):
        pass


_verdicts: dict[tuple[int, bytes, PredicateId], object] = {}


def cached_predicate(N: Submodule, pid: PredicateId):
    key = (id(N.module), N.key(), pid)
    v = _verdicts.get(key)
    if v is None:
        v = check_predicate(N, pid)
        _verdicts[key] = v
        if len(_verdicts) > 4096:
            _evict_one(_verdicts)
    return v


def _holds(N: Submodule, pid: PredicateId) -> bool:
    return bool(cached_predicate(N, pid).holds)


def _colon_is_w1a(N: Submodule, m: int) -> bool:
    """Whether (N :_R m) is a weakly 1-absorbing prime ideal, mode-aware."""
    module = N.module
    if module.scalar_mode is ScalarMode.INTEGER_IMAGE:
        return z_ideal_w1a(colon_ring_integer(N, [m])).holds
    ideal = colon_ring(N, [m])
    return classify_ideal(module.ring, ideal).weakly_one_abs_prime


def _module_instances(ws: Workspace, need_lattice: bool = True,
                      max_size: Optional[int] = None):
    """Yield (module id, module, [(name, proper submodule)], lattice_complete)."""
    for mid in ws.module_ids():
        module = ws.module(mid)
        if max_size is not None and module.size > max_size:
            continue
        subs, complete = ws.submodules_for(mid)
        if need_lattice and not complete:
            continue
        yield mid, module, subs, complete


def _all_instances(ws: Workspace, max_size: Optional[int] = None):
    """Like _module_instances but keeps targeted-only modules too."""
    for mid in ws.module_ids():
        module = ws.module(mid)
        if max_size is not None and module.size > max_size:
            continue
        subs, complete = ws.submodules_for(mid)
        yield mid, module, subs, complete


def _qz_class_array(N: Submodule):
    """(V, P, cs): V[pi, cj, m] true when (any ab=P[pi], cs[cj], m) is a
    classical 1-quadruple-zero pattern of N."""
    ctx = scan_context(N)
    cs = ctx.scalars(True)
    P = _pair_products(ctx, cs)
    T = ctx.mul[np.ix_(P, cs)]
    V = (ctx.act[T] == N.module.zero) & ~ctx.IN[P][:, None, :] & ~ctx.IN[cs][None, :, :]
    return V, P, cs


def um_obstruction(ring: FiniteRing) -> dict:
    """Why no finite ring meets the union-avoiding module hypothesis: for a
    maximal ideal m, (R/m)^2 is the union of its |R/m|+1 proper lines
    (spans of (1, t) for t in the residue field, plus the span of (0, 1))."""
    m = ring.maximal_ideals[0]
    base = build_module(ring_as_module(ring.spec), ring_cache={ring.spec: ring})
    L = base.submodule(tuple(int(g) for g in m.elements()))
    F, proj = quotient_module(base, L)
    f_one = proj(ring.one)
    plane = direct_product(F, F)
    lines = []
    union = np.zeros(plane.size, dtype=bool)
    for t in range(F.size):
        line = plane.submodule((f_one * F.size + t,))
        lines.append(line)
        union |= line.members.astype(bool)
    line = plane.submodule((F.zero * F.size + f_one,))
    lines.append(line)
    union |= line.members.astype(bool)
    return {
        "ring": ring.describe(),
        "field_size": F.size,
        "lines": len(lines),
        "all_lines_proper": all(l.is_proper() for l in lines),
        "union_is_whole_plane": bool(union.all()),
    }


# --------------------------------------------------------------------------- #
# Check implementations
# --------------------------------------------------------------------------- #

def _check_t01(ws: Workspace, rep: CheckReport) -> None:
    # colons weakly 1-absorbing for every m outside N  =>  N is WC1A
    for mid, module, subs, _ in _all_instances(ws):
        for name, N in subs:
            rep.instances_checked += 1
            outside = np.flatnonzero(~N.members.astype(bool))
            if not all(_colon_is_w1a(N, int(m)) for m in outside):
                continue
            rep.qualifying_instances += 1
            if not _holds(N, PredicateId.WC1A):
                rep.counterexample(f"{mid}/{name}", "all colons w1a but N not WC1A")


def _check_t02(ws: Workspace, rep: CheckReport) -> None:
    # N WC1A and Ann(m)=0  =>  (N :_R m) weakly 1-absorbing
    for mid, module, subs, _ in _all_instances(ws):
        if module.scalar_mode is ScalarMode.INTEGER_IMAGE:
            continue  # finite integer-scalar modules have no Ann(m)=0 elements
        zero_sub = module.zero_submodule()
        free_elems = [int(m) for m in range(module.size)
                      if colon_ring(zero_sub, [m]).is_zero()]
        if not free_elems:
            continue
        for name, N in subs:
            if not _holds(N, PredicateId.WC1A):
                continue
            qualified = False
            for m in free_elems:
                if N.contains(m):
                    continue
                qualified = True
                rep.instances_checked += 1
                if not _colon_is_w1a(N, m):
                    rep.counterexample(f"{mid}/{name}", f"(N:{m}) not weakly 1-absorbing",
                                       (m,))
            if qualified:
                rep.qualifying_instances += 1


def _check_t03(ws: Workspace, rep: CheckReport) -> None:
    # non-torsion M with torsion set inside N: WC1A(N) <=> all colons w1a
    for mid, module, subs, _ in _all_instances(ws):
        profile = module_profile(module)
        if not profile.non_torsion:
            continue
        for name, N in subs:
            if not (profile.torsion_mask <= N.members.astype(bool)).all():
                continue
            rep.qualifying_instances += 1
            rep.instances_checked += int(module.size - N.size)
            lhs = _holds(N, PredicateId.WC1A)
            rhs = all(_colon_is_w1a(N, int(m))
                      for m in np.flatnonzero(~N.members.astype(bool)))
            if lhs != rhs:
                rep.counterexample(f"{mid}/{name}",
                                   f"WC1A={lhs} but colons-w1a={rhs}")


def _check_t04(ws: Workspace, rep: CheckReport) -> None:
    # on M = R: WC1A as a submodule <=> weakly 1-absorbing prime as an ideal
    for mid, module, subs, _ in _all_instances(ws):
        if module.spec.kind != "ring_as_module" or module.scalar_mode is not ScalarMode.RING:
            continue
        ring = module.ring
        qualified = False
        for I in ring.proper_ideals():
            qualified = True
            rep.instances_checked += 1
            N = module.submodule_from_mask(I.members, generators=I.generators)
            lhs = _holds(N, PredicateId.WC1A)
            rhs = classify_ideal(ring, I).weakly_one_abs_prime
            if lhs != rhs:
                rep.counterexample(f"{mid}/<{I.render()}>",
                                   f"submodule WC1A={lhs}, ideal w1a={rhs}")
        if qualified:
            rep.qualifying_instances += 1


def _hom_pairs(ws: Workspace):
    mids = ws.module_ids()
    for mid1 in mids:
        M1 = ws.module(mid1)
        for mid2 in mids:
            M2 = ws.module(mid2)
            if M1.ring is not M2.ring or M1.scalar_mode is not M2.scalar_mode:
                continue
            yield mid1, M1, mid2, M2


_hom_cache: dict[tuple[int, int], list] = {}


def _homs_between(M1, M2, ws: Workspace):
    key = (id(M1), id(M2))
    if key not in _hom_cache:
        _hom_cache[key] = enumerate_homs(
            M1, M2, candidate_cap=ws.caps["hom_candidates"],
            work_cap=ws.caps["hom_work"])
        if len(_hom_cache) > 64:
            _evict_one(_hom_cache)
    return _hom_cache[key]


def _check_t05(ws: Workspace, rep: CheckReport) -> None:
    # monomorphism preimage of a WC1A submodule stays WC1A
    for mid1, M1, mid2, M2 in _hom_pairs(ws):
        try:
            homs = _homs_between(M1, M2, ws)
        except CapExceededError as exc:
            rep.skip(f"{mid1}->{mid2}", str(exc))
            continue
        monos = [h for h in homs if h.is_mono()]
        if not monos:
            continue
        subs2, _ = ws.submodules_for(mid2)
        for name2, N2 in subs2:
            if not _holds(N2, PredicateId.WC1A):
                continue
            for fi, f in enumerate(monos):
                pre = f.preimage_of(N2)
                if not pre.is_proper():
                    continue
                rep.qualifying_instances += 1
                rep.instances_checked += 1
                if not _holds(pre, PredicateId.WC1A):
                    rep.counterexample(f"{mid1}->{mid2}#mono{fi}/{name2}",
                                       "preimage of WC1A not WC1A")


def _check_t06(ws: Workspace, rep: CheckReport) -> None:
    # epimorphism image of a WC1A submodule containing the kernel stays WC1A
    for mid1, M1, mid2, M2 in _hom_pairs(ws):
        try:
            homs = _homs_between(M1, M2, ws)
        except CapExceededError as exc:
            rep.skip(f"{mid1}->{mid2}", str(exc))
            continue
        epis = [h for h in homs if h.is_epi()]
        if not epis:
            continue
        subs1, _ = ws.submodules_for(mid1)
        for name1, N in subs1:
            if not _holds(N, PredicateId.WC1A):
                continue
            for fi, f in enumerate(epis):
                ker = f.kernel()
                if not (ker.members <= N.members).all():
                    continue
                img = f.image_of(N)
                if not img.is_proper():
                    continue
                rep.qualifying_instances += 1
                rep.instances_checked += 1
                if not _holds(img, PredicateId.WC1A):
                    rep.counterexample(f"{mid1}->{mid2}#epi{fi}/{name1}",
                                       "image of WC1A not WC1A")


def _check_t07(ws: Workspace, rep: CheckReport) -> None:
    # N WC1A and L <= N: N/L is WC1A in M/L
    for mid, module, subs, complete in _module_instances(ws):
        for lname, L in subs:
            quotient, proj = quotient_module(module, L)
            for name, N in subs:
                if not (L.members <= N.members).all():
                    continue
                if not _holds(N, PredicateId.WC1A):
                    continue
                rep.qualifying_instances += 1
                rep.instances_checked += 1
                img = proj.image_of(N)
                if not img.is_proper():
                    continue
                if not _holds(img, PredicateId.WC1A):
                    rep.counterexample(f"{mid}/{name} mod {lname}", "N/L not WC1A")


def _check_t08(ws: Workspace, rep: CheckReport) -> None:
    # K WC1A in M and N/K WC1A in M/K  =>  N WC1A in M
    for mid, module, subs, complete in _module_instances(ws):
        for kname, K in subs:
            if not _holds(K, PredicateId.WC1A):
                continue
            quotient, proj = quotient_module(module, K)
            for name, N in subs:
                if not (K.members <= N.members).all():
                    continue
                img = proj.image_of(N)
                if not img.is_proper():
                    continue
                if not _holds(img, PredicateId.WC1A):
                    continue
                rep.qualifying_instances += 1
                rep.instances_checked += 1
                if not _holds(N, PredicateId.WC1A):
                    rep.counterexample(f"{mid}/{name} via {kname}",
                                       "hypotheses hold but N not WC1A")


def _mult_closure(ring: FiniteRing, gens: list[int]) -> list[int]:
    s_set = {ring.one}
    frontier = [ring.one] + [int(g) for g in gens]
    s_set.update(frontier)
    while frontier:
        x = frontier.pop()
        for y in sorted(s_set):
            z = int(ring.mul_table[x, y])
            if z not in s_set:
                s_set.add(z)
                frontier.append(z)
    return sorted(s_set)


def _check_t09(ws: Workspace, rep: CheckReport) -> None:
    # N WC1A, (N:M) disjoint from S: S^-1 N is WC1A in S^-1 M
    for mid, module, subs, _ in _module_instances(ws, max_size=64):
        if module.scalar_mode is not ScalarMode.RING:
            continue
        ring = module.ring
        seen_sets: set[tuple] = set()
        for s in range(ring.size):
            s_elems = tuple(_mult_closure(ring, [s]))
            if ring.zero in s_elems or s_elems in seen_sets:
                continue
            seen_sets.add(s_elems)
            try:
                loc_mod, info = localize_module(module, [s])
            except SpecError as exc:
                rep.skip(f"{mid}@S<{s}>", str(exc))
                continue
            for name, N in subs:
                if not _holds(N, PredicateId.WC1A):
                    continue
                colon = colon_ring(N)
                if any(colon.members[u] for u in s_elems):
                    continue
                image = info["submodule_image"](N)
                if not image.is_proper():
                    rep.counterexample(f"{mid}/{name}@S<{s}>",
                                       "localized submodule unexpectedly improper")
                    continue
                rep.qualifying_instances += 1
                rep.instances_checked += 1
                if not _holds(image, PredicateId.WC1A):
                    rep.counterexample(f"{mid}/{name}@S<{s}>", "S^-1 N not WC1A")


def _check_t10(ws: Workspace, rep: CheckReport) -> None:
    # weakly 1-absorbing => WC1A;  WCP => WC1A and weakly semiprime;
    # on reduced modules WCP <=> (weakly semiprime and WC1A)
    for mid, module, subs, _ in _all_instances(ws):
        reduced = module_profile(module).reduced
        for name, N in subs:
            rep.qualifying_instances += 1
            rep.instances_checked += 3
            w1abs = _holds(N, PredicateId.WEAKLY_1ABS_SUBMODULE)
            wcp = _holds(N, PredicateId.WEAKLY_CLASSICAL_PRIME)
            wc1a = _holds(N, PredicateId.WC1A)
            wsp = _holds(N, PredicateId.WEAKLY_SEMIPRIME)
            if w1abs and not wc1a:
                rep.counterexample(f"{mid}/{name}", "weakly 1-absorbing but not WC1A")
            if wcp and not (wc1a and wsp):
                rep.counterexample(f"{mid}/{name}", "WCP without WC1A+WSP")
            if reduced and (wcp != (wsp and wc1a)):
                rep.counterexample(f"{mid}/{name}",
                                   f"reduced equivalence fails: WCP={wcp}, WSP={wsp}, WC1A={wc1a}")


def _check_t11(ws: Workspace, rep: CheckReport) -> None:
    # cyclic modules: weakly 1-absorbing <=> WC1A
    for mid, module, subs, _ in _all_instances(ws):
        if not module_profile(module).cyclic:
            continue
        for name, N in subs:
            rep.qualifying_instances += 1
            rep.instances_checked += 1
            w1abs = _holds(N, PredicateId.WEAKLY_1ABS_SUBMODULE)
            wc1a = _holds(N, PredicateId.WC1A)
            if w1abs != wc1a:
                rep.counterexample(f"{mid}/{name}",
                                   f"cyclic equivalence fails: W1ABS={w1abs}, WC1A={wc1a}")


def _check_t12(ws: Workspace, rep: CheckReport) -> None:
    # N WC1A, abcK inside N, no quadruple-zero (a,b,c,k) on K:
    #   abK inside N or cK inside N
    for mid, module, subs, complete in _module_instances(ws):
        lattice = module.submodule_lattice()
        for name, N in subs:
            if not _holds(N, PredicateId.WC1A):
                continue
            ctx = scan_context(N)
            cs = ctx.scalars(True)
            P = _pair_products(ctx, cs)
            T = ctx.mul[np.ix_(P, cs)]
            rep.qualifying_instances += 1
            for K in lattice:
                ke = K.elements()
                rep.instances_checked += int(P.size * cs.size)
                in_all = ctx.IN[:, ke].all(axis=1)          # sK inside N, per scalar
                qz = (ctx.ZE[:, ke][T] & ~ctx.IN[:, ke][P][:, None, :]
                      & ~ctx.IN[:, ke][cs][None, :, :]).any(axis=2)
                hyp = in_all[T] & ~qz
                viol = hyp & ~in_all[P][:, None] & ~in_all[cs][None, :]
                if viol.any():
                    i, j = np.argwhere(viol)[0]
                    rep.counterexample(
                        f"{mid}/{name}",
                        "abcK inside N, quadruple-zero-free, but neither abK nor cK inside N",
                        (int(P[i]), int(cs[j]), [int(x) for x in K.gens()]))


def _check_t13(ws: Workspace, rep: CheckReport) -> None:
    # N WC1A, IJLK inside N, free of quadruple-zeros on I x J x L x K:
    #   IJK inside N or LK inside N
    for mid, module, subs, complete in _module_instances(ws):
        lattice = module.submodule_lattice()
        ideals = quantifier_ideals(module)
        n_ideals = len(ideals)
        gens = [np.asarray(I.generators or (module.ring.zero,), dtype=np.int64)
                for I in ideals]
        elems = [I.elements() for I in ideals]
        mul = module.ring.mul_table
        pair_prods = [[np.unique(mul[np.ix_(elems[i1], elems[i2])])
                       for i2 in range(n_ideals)] for i1 in range(n_ideals)]
        pair_gens = [[np.unique(mul[np.ix_(gens[i1], gens[i2])])
                      for i2 in range(n_ideals)] for i1 in range(n_ideals)]
        triple_gens = [[[np.unique(mul[np.ix_(pair_gens[i1][i2], gens[i3])])
                         for i3 in range(n_ideals)] for i2 in range(n_ideals)]
                       for i1 in range(n_ideals)]
        for name, N in subs:
            if not _holds(N, PredicateId.WC1A):
                continue
            rep.qualifying_instances += 1
            ctx = scan_context(N)
            for K in lattice:
                ke = K.elements()
                sub_scalar = ctx.IN[:, ke].all(axis=1)       # sK inside N
                zek = ctx.ZE[:, ke]
                ink = ctx.IN[:, ke]
                # QZ_any[p, c] = exists k in K: pck == 0, pk not in N, ck not in N
                QZ_any = (zek[mul] & ~ink[:, None, :] & ~ink[None, :, :]).any(axis=2)
                rep.instances_checked += n_ideals ** 3
                for i1 in range(n_ideals):
                    for i2 in range(n_ideals):
                        ijk_ok = bool(sub_scalar[pair_gens[i1][i2]].all())
                        qz_rows = QZ_any[pair_prods[i1][i2]]
                        for i3 in range(n_ideals):
                            if not sub_scalar[triple_gens[i1][i2][i3]].all():
                                continue  # IJLK not inside N
                            if qz_rows[:, elems[i3]].any():
                                continue  # not free of quadruple-zeros
                            lk_ok = bool(sub_scalar[gens[i3]].all())
                            if not (ijk_ok or lk_ok):
                                rep.counterexample(
                                    f"{mid}/{name}",
                                    "free-quadruple hypothesis holds but conclusion fails",
                                    (i1, i2, i3, [int(x) for x in K.gens()]))


def _check_t14(ws: Workspace, rep: CheckReport) -> None:
    # the element/ideal characterization: conditions (1)-(8) all agree
    for mid, module, subs, complete in _module_instances(ws):
        for name, N in subs:
            rep.qualifying_instances += 1
            base = _holds(N, PredicateId.WC1A)
            rep.instances_checked += cached_predicate(N, PredicateId.WC1A).instances_scanned
            for k in range(2, 9):
                v = characterization_condition(N, ConditionFamily.ELEMENTWISE, k)
                rep.instances_checked += v.instances_scanned
                if v.holds != base:
                    rep.counterexample(f"{mid}/{name}",
                                       f"condition ({k})={v.holds} vs WC1A={base}",
                                       v.witness)


def _zero_products_table(ctx, elems: np.ndarray) -> np.ndarray:
    """Z[s, m]: s * x * m == 0 for every x in elems."""
    R = ctx.mul.shape[0]
    M = ctx.act.shape[1]
    if elems.size == 0:
        return np.ones((R, M), dtype=bool)
    sp = ctx.mul[:, elems]                      # (R, |elems|)
    E = ctx.act[sp.ravel()].reshape(R, elems.size, M)
    return (E == ctx.module.zero).all(axis=1)


def _check_t15(ws: Workspace, rep: CheckReport) -> None:
    # consequences of a classical 1-quadruple-zero (a,b,c,m):
    # (1) abcN = 0 = ab(N:M)m
    # (2) if acm, bcm outside N: the five pairwise annihilations and (N:M)^3 m = 0
    for mid, module, subs, _ in _all_instances(ws):
        for name, N in subs:
            if not _holds(N, PredicateId.WC1A):
                continue
            V, P, cs = _qz_class_array(N)
            if not V.any():
                continue
            rep.qualifying_instances += 1
            ctx = scan_context(N)
            ne = N.elements()
            colon_elems = np.flatnonzero(ctx.colon)
            col2 = np.unique(ctx.mul[np.ix_(colon_elems, colon_elems)]) \
                if colon_elems.size else colon_elems
            col3 = np.unique(ctx.mul[np.ix_(col2, colon_elems)]) \
                if colon_elems.size else colon_elems
            ann_n = (ctx.act[:, ne] == module.zero).all(axis=1)      # sN == 0
            zcol = _zero_products_table(ctx, colon_elems)            # s(N:M)m == 0
            zcol2 = _zero_products_table(ctx, col2)                  # s(N:M)^2 m == 0
            zcol3 = (ctx.act[col3] == module.zero).all(axis=0) \
                if col3.size else np.ones(module.size, dtype=bool)   # (N:M)^3 m == 0
            T = ctx.mul[np.ix_(P, cs)]
            rep.instances_checked += int(V.sum())
            bad1 = V & ~(ann_n[T][:, :, None] & zcol[P][:, None, :])
            if bad1.any():
                i, j, m = np.argwhere(bad1)[0]
                rep.counterexample(f"{mid}/{name}", "part (1) annihilation fails",
                                   (int(P[i]), int(cs[j]), int(m)))
            # part (2): group V by the product rows for each first factor a
            pindex = np.full(module.ring.size, -1, dtype=np.int64)
            pindex[P] = np.arange(P.size)
            nus = cs
            pcm_out = ~ctx.IN[ctx.mul[np.ix_(nus, cs)]]              # (a, c, m): acm not in N
            for ai, a in enumerate(nus):
                rows = pindex[ctx.mul[a, nus]]
                Va = V[rows]                                          # (b, c, m)
                exists_b = (Va & pcm_out).any(axis=0)                 # (c, m)
                req = exists_b & pcm_out[ai]
                if not req.any():
                    continue
                conc = (zcol[ctx.mul[a, cs]] & zcol2[a][None, :]
                        & zcol2[cs][:, :] & zcol3[None, :])
                bad2 = req & ~conc
                if bad2.any():
                    cj, m = np.argwhere(bad2)[0]
                    rep.counterexample(f"{mid}/{name}", "part (2) annihilation fails",
                                       (int(a), int(cs[cj]), int(m)))


def _check_t16(ws: Workspace, rep: CheckReport) -> None:
    # WC1A but not C1A: a quadruple-zero exists; with the side condition
    # (N:M)^3 N = 0, N nilpotent; on multiplication modules N^4 = 0
    for mid, module, subs, complete in _all_instances(ws):
        mult = None
        for name, N in subs:
            if not (_holds(N, PredicateId.WC1A) and not _holds(N, PredicateId.C1A)):
                continue
            rep.qualifying_instances += 1
            rep.instances_checked += 1
            zeros, _ = find_quadruple_zeros(N, limit=1)
            if not zeros:
                rep.counterexample(f"{mid}/{name}", "WC1A not C1A but no quadruple-zero")
                continue
            ctx = scan_context(N)
            V, P, cs = _qz_class_array(N)
            pcm_out = ~ctx.IN[ctx.mul[np.ix_(cs, cs)]]
            pindex = np.full(module.ring.size, -1, dtype=np.int64)
            pindex[P] = np.arange(P.size)
            side = False
            for ai, a in enumerate(cs):
                Va = V[pindex[ctx.mul[a, cs]]]
                if (Va & pcm_out & pcm_out[ai][None, :, :]).any():
                    side = True
                    break
            if not side:
                continue
            colon_elems = np.flatnonzero(ctx.colon)
            ne = N.elements()
            if colon_elems.size:
                col2 = np.unique(ctx.mul[np.ix_(colon_elems, colon_elems)])
                col3 = np.unique(ctx.mul[np.ix_(col2, colon_elems)])
                prods = ctx.act[np.ix_(col3, ne)]
                nilpotent3 = bool((prods == module.zero).all())
            else:
                nilpotent3 = True
            if not nilpotent3:
                rep.counterexample(f"{mid}/{name}", "(N:M)^3 N != 0 despite quadruple-zero")
            if not _holds(N, PredicateId.NILPOTENT):
                rep.counterexample(f"{mid}/{name}", "N not nilpotent despite quadruple-zero")
            if complete:
                if mult is None:
                    mult = multiplication_profile(module)
                if mult.is_multiplication:
                    p2 = mult.submodule_product(N, N)
                    p4 = mult.submodule_product(p2, p2)
                    if not p4.is_zero():
                        rep.counterexample(f"{mid}/{name}", "N^4 != 0 on multiplication module")


def _check_t17(ws: Workspace, rep: CheckReport) -> None:
    # multiplication modules: WC1A <=> submodule-product splitting condition.
    # The splitting-to-WC1A direction substitutes K := IM for the quantifier
    # ideals I, which is only faithful to the ideal condition when IM stays
    # proper (automatic for faithful finitely generated multiplication
    # modules); the filter computes exactly that requirement.
    for mid, module, subs, complete in _module_instances(ws):
        mult = multiplication_profile(module)
        if not mult.is_multiplication:
            continue
        if any(ideal_times_module(I, module).size == module.size
               for I in quantifier_ideals(module)):
            continue
        lattice = module.submodule_lattice()
        proper = [S for S in lattice if S.is_proper()]
        colon_gens = [np.asarray(colon_ring(S).generators or (module.ring.zero,),
                                 dtype=np.int64) for S in proper]
        rep.qualifying_instances += 1
        for name, N in subs:
            ctx = scan_context(N)
            lhs = _holds(N, PredicateId.WC1A)
            rhs = True
            witness = None
            rep.instances_checked += len(proper) ** 3 * module.size
            for i1, g1 in enumerate(colon_gens):
                for i2, g2 in enumerate(colon_gens):
                    t12 = np.unique(ctx.mul[np.ix_(g1, g2)])
                    klm_ok = ctx.SUBOK[ctx.act[t12]].all(axis=0)
                    for i3, g3 in enumerate(colon_gens):
                        t123 = np.unique(ctx.mul[np.ix_(t12, g3)])
                        e = ctx.act[t123]
                        hyp = ctx.SUBOK[e].all(axis=0) & (e != module.zero).any(axis=0)
                        pm_ok = ctx.SUBOK[ctx.act[g3]].all(axis=0)
                        bad = hyp & ~klm_ok & ~pm_ok
                        if bad.any():
                            rhs = False
                            witness = (i1, i2, i3, int(np.flatnonzero(bad)[0]))
                            break
                    if not rhs:
                        break
                if not rhs:
                    break
            if lhs != rhs:
                rep.counterexample(f"{mid}/{name}",
                                   f"WC1A={lhs} vs product condition={rhs}", witness)


def _check_t18(ws: Workspace, rep: CheckReport) -> None:
    # second characterization: (2)=>(3)=>...=>(8)=>(1) asserted on every
    # instance; (1)=>(2) needs the union-avoiding hypothesis and is logged
    rings_seen: set[int] = set()
    for mid, module, subs, complete in _module_instances(ws):
        if id(module.ring) not in rings_seen:
            rings_seen.add(id(module.ring))
            obstruction = um_obstruction(module.ring)
            if not (obstruction["all_lines_proper"] and obstruction["union_is_whole_plane"]):
                rep.counterexample(f"ring {module.ring.describe()}",
                                   "union-avoidance obstruction failed to verify")
        for name, N in subs:
            rep.qualifying_instances += 1
            conds = {1: _holds(N, PredicateId.WC1A)}
            for k in range(2, 9):
                v = characterization_condition(N, ConditionFamily.SUBMODULEWISE, k)
                conds[k] = v.holds
                rep.instances_checked += v.instances_scanned
            chain = [(2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8)]
            for a, b in chain:
                if conds[a] and not conds[b]:
                    rep.counterexample(f"{mid}/{name}", f"({a}) holds but ({b}) fails")
            if conds[8] and not conds[1]:
                rep.counterexample(f"{mid}/{name}", "(8) holds but (1) fails")
            if conds[1] and not conds[2]:
                rep.finding(f"{mid}/{name}",
                            "WC1A without condition (2): separating instance "
                            "for the union-avoiding hypothesis")


def _ann_generator(module: FiniteModule) -> int:
    return colon_ring_integer(module.zero_submodule(), None)


def _check_t19(ws: Workspace, rep: CheckReport) -> None:
    # finitely generated multiplication module, annihilator 1-absorbing prime:
    # (1) WC1A(N) <=> (2) product splitting <=> (3) (N:M) w1a <=> (4) N = PM
    for mid, module, subs, complete in _module_instances(ws):
        mult = multiplication_profile(module)
        if not mult.is_multiplication:
            continue
        ann = colon_ring(module.zero_submodule())
        if module.scalar_mode is ScalarMode.INTEGER_IMAGE:
            if not z_ideal_1abs(_ann_generator(module)):
                continue
        else:
            if not (ann.is_proper() and classify_ideal(module.ring, ann).one_abs_prime):
                continue
        rep.qualifying_instances += 1
        lattice = module.submodule_lattice()
        proper = [S for S in lattice if S.is_proper()]
        gens_of = [np.asarray(colon_ring(S).generators or (module.ring.zero,),
                              dtype=np.int64) for S in lattice]
        proper_idx = [i for i, S in enumerate(lattice) if S.is_proper()]
        for name, N in subs:
            ctx = scan_context(N)
            ann_full = (ctx.act == module.zero).all(axis=1)
            c1 = _holds(N, PredicateId.WC1A)
            # (2): proper N1,N2,N3 and any N4
            c2 = True
            rep.instances_checked += len(proper_idx) ** 3 * len(lattice)
            for i1 in proper_idx:
                for i2 in proper_idx:
                    t12 = np.unique(ctx.mul[np.ix_(gens_of[i1], gens_of[i2])])
                    for i3 in proper_idx:
                        t123 = np.unique(ctx.mul[np.ix_(t12, gens_of[i3])])
                        for i4 in range(len(lattice)):
                            t1234 = np.unique(ctx.mul[np.ix_(t123, gens_of[i4])])
                            if not ctx.colon[t1234].all():
                                continue
                            if ann_full[t1234].all():
                                continue  # product is zero
                            t124 = np.unique(ctx.mul[np.ix_(t12, gens_of[i4])])
                            t34 = np.unique(ctx.mul[np.ix_(gens_of[i3], gens_of[i4])])
                            if not (ctx.colon[t124].all() or ctx.colon[t34].all()):
                                c2 = False
                                break
                        if not c2:
                            break
                    if not c2:
                        break
                if not c2:
                    break
            # (3): (N:M) weakly 1-absorbing
            if module.scalar_mode is ScalarMode.INTEGER_IMAGE:
                c3 = z_ideal_w1a(colon_ring_integer(N, None)).holds
            else:
                c3 = classify_ideal(module.ring, colon_ring(N)).weakly_one_abs_prime
            # (4): N = PM for a weakly 1-absorbing prime ideal P containing Ann
            c4 = False
            if module.scalar_mode is ScalarMode.INTEGER_IMAGE:
                d = _ann_generator(module)
                for e in range(2, d + 1):
                    if d % e == 0 and z_ideal_w1a(e).holds:
                        P = module.ring.ideal([e % module.ring.size])
                        if ideal_times_module(P, module) == N:
                            c4 = True
                            break
            else:
                for P in module.ring.proper_ideals():
                    if not (ann.members <= P.members).all():
                        continue
                    if not classify_ideal(module.ring, P).weakly_one_abs_prime:
                        continue
                    if ideal_times_module(P, module) == N:
                        c4 = True
                        break
            if not (c1 == c2 == c3 == c4):
                rep.counterexample(f"{mid}/{name}",
                                   f"equivalence fails: ({c1},{c2},{c3},{c4})")


def _check_t20(ws: Workspace, rep: CheckReport) -> None:
    # faithful module, N WC1A: (N:M) is weakly 1-absorbing prime
    for mid, module, subs, _ in _all_instances(ws):
        if not module_profile(module).faithful:
            continue
        qualified = False
        for name, N in subs:
            if not _holds(N, PredicateId.WC1A):
                continue
            qualified = True
            rep.instances_checked += 1
            ideal = colon_ring(N)
            if not classify_ideal(module.ring, ideal).weakly_one_abs_prime:
                rep.counterexample(f"{mid}/{name}", "(N:M) not weakly 1-absorbing")
        if qualified:
            rep.qualifying_instances += 1


def _product_parts(ws: Workspace, mid: str):
    module = ws.module(mid)
    if module.spec.kind != "product" or not hasattr(module, "factor_modules"):
        return None
    return module, module.factor_modules


def _check_t21(ws: Workspace, rep: CheckReport) -> None:
    # N1 x M2 is WC1A  <=>  N1 WC1A and every quadruple-zero product of N1
    # annihilates M2
    for mid in ws.module_ids():
        parts = _product_parts(ws, mid)
        if parts is None:
            continue
        module, (M1, M2) = parts
        try:
            lat1 = M1.submodule_lattice()
        except CapExceededError as exc:
            rep.skip(mid, str(exc))
            continue
        ann2 = (M2.action_table == M2.zero).all(axis=1)
        rep.qualifying_instances += 1
        for N1 in lat1:
            if not N1.is_proper():
                continue
            rep.instances_checked += 1
            N = product_submodule(module, N1.members,
                                  np.ones(M2.size, dtype=np.uint8))
            lhs = _holds(N, PredicateId.WC1A)
            n1_wc1a = _holds(N1, PredicateId.WC1A)
            V, P, cs = _qz_class_array(N1)
            ctx1 = scan_context(N1)
            T = ctx1.mul[np.ix_(P, cs)]
            qz_ok = not (V & ~ann2[T][:, :, None]).any()
            rhs = n1_wc1a and qz_ok
            if lhs != rhs:
                rep.counterexample(f"{mid}/<{N1.render()}> x M2",
                                   f"WC1A(N1 x M2)={lhs} but rhs={rhs}")


def _check_t22(ws: Workspace, rep: CheckReport) -> None:
    # N1 x N2 WC1A (both proper) => N1 WC1A and N2 WC1A
    for mid in ws.module_ids():
        parts = _product_parts(ws, mid)
        if parts is None:
            continue
        module, (M1, M2) = parts
        try:
            lat1 = [S for S in M1.submodule_lattice() if S.is_proper()]
            lat2 = [S for S in M2.submodule_lattice() if S.is_proper()]
        except CapExceededError as exc:
            rep.skip(mid, str(exc))
            continue
        qualified = False
        for N1 in lat1:
            for N2 in lat2:
                N = product_submodule(module, N1.members, N2.members)
                if not _holds(N, PredicateId.WC1A):
                    continue
                qualified = True
                rep.instances_checked += 1
                if not (_holds(N1, PredicateId.WC1A) and _holds(N2, PredicateId.WC1A)):
                    rep.counterexample(f"{mid}/<{N1.render()}>x<{N2.render()}>",
                                       "product WC1A but a factor is not")
        if qualified:
            rep.qualifying_instances += 1


def _check_t23(ws: Workspace, rep: CheckReport) -> None:
    # decomposed ring, faithful multiplication factors, factors not fields:
    # WC1A <=> (N1 x M2 or M1 x N2 with classical prime factor)
    #       <=> classical prime <=> weakly classical prime
    for mid in ws.module_ids():
        module = ws.module(mid)
        if (module.spec.kind != "ring_as_module"
                or module.scalar_mode is not ScalarMode.RING):
            continue
        factors = getattr(module.ring, "factor_rings", None)
        if factors is None or len(factors) != 2:
            continue
        R1, R2 = factors
        # hypothesis: a nonzero nonunit exists in each factor (the
        # annihilator of the faithful factor is 0, never the maximal ideal)
        if not ((~R1.units).sum() > 1 and (~R2.units).sum() > 1):
            continue
        M1 = build_module(ring_as_module(R1.spec), ring_cache={R1.spec: R1})
        M2 = build_module(ring_as_module(R2.spec), ring_cache={R2.spec: R2})
        if not (module_profile(M1).faithful and module_profile(M2).faithful):
            continue
        if not (multiplication_profile(M1).is_multiplication
                and multiplication_profile(M2).is_multiplication):
            continue
        rep.qualifying_instances += 1
        lat1 = M1.submodule_lattice()
        lat2 = M2.submodule_lattice()
        for I1 in lat1:
            for I2 in lat2:
                if I1.is_zero() and I2.is_zero():
                    continue  # N must be nonzero
                if not I1.is_proper() and not I2.is_proper():
                    continue  # N must be proper
                mask = (np.repeat(I1.members.astype(bool), M2.size)
                        & np.tile(I2.members.astype(bool), M1.size)).astype(np.uint8)
                N = module.submodule_from_mask(mask)
                rep.instances_checked += 1
                c1 = _holds(N, PredicateId.WC1A)
                c2 = False
                if not I1.is_proper() and I2.is_proper():
                    c2 = _holds(I2, PredicateId.CLASSICAL_PRIME)
                if I1.is_proper() and not I2.is_proper():
                    c2 = _holds(I1, PredicateId.CLASSICAL_PRIME)
                c3 = _holds(N, PredicateId.CLASSICAL_PRIME)
                c4 = _holds(N, PredicateId.WEAKLY_CLASSICAL_PRIME)
                if not (c1 == c2 == c3 == c4):
                    rep.counterexample(
                        f"{mid}/<{I1.render()}>x<{I2.render()}>",
                        f"equivalence fails: ({c1},{c2},{c3},{c4})")


def _check_t24(ws: Workspace, rep: CheckReport) -> None:
    # free power direction that avoids the union hypothesis: WC1A(N^k) =>
    # WC1A(N); the converse is evaluated and logged
    for mid, module, subs, _ in _all_instances(ws, max_size=32):
        power = None
        for name, N in subs:
            try:
                if power is None:
                    power = direct_product(module, module)
                _, Nk = tensor_free(module, 2, N, cap=ws.caps["module_size"],
                                    power=power)
            except CapExceededError as exc:
                rep.skip(f"{mid}/{name}", str(exc))
                continue
            rep.qualifying_instances += 1
            rep.instances_checked += 1
            up = _holds(Nk, PredicateId.WC1A)
            down = _holds(N, PredicateId.WC1A)
            if up and not down:
                rep.counterexample(f"{mid}/{name}", "WC1A(N^2) but not WC1A(N)")
            if down and not up:
                rep.finding(f"{mid}/{name}",
                            "WC1A(N) without WC1A(N^2): separating instance "
                            "for the union-avoiding hypothesis")


def _radical_cubed_annihilates(module: FiniteModule) -> bool:
    if module.scalar_mode is ScalarMode.INTEGER_IMAGE:
        # the scalar ring is Z, whose maximal-ideal intersection is 0
        return True
    jac = jacobson_radical(module.ring)
    cube = ideal_power(jac, 3)
    return bool((module.action_table[cube.elements()] == module.zero).all())


def _check_t25(ws: Workspace, rep: CheckReport) -> None:
    # every proper submodule WC1A => Jac^3 M = 0
    for mid, module, subs, complete in _module_instances(ws):
        rep.instances_checked += 1
        if not all(_holds(N, PredicateId.WC1A) for _, N in subs):
            continue
        rep.qualifying_instances += 1
        if not _radical_cubed_annihilates(module):
            rep.counterexample(mid, "all proper submodules WC1A but Jac^3 M != 0")


def _check_t26(ws: Workspace, rep: CheckReport) -> None:
    # local rings: every proper submodule WC1A <=> m^3 M = 0
    for mid, module, subs, complete in _module_instances(ws):
        if module.scalar_mode is not ScalarMode.RING or not module.ring.is_local:
            continue
        rep.qualifying_instances += 1
        rep.instances_checked += len(subs)
        lhs = all(_holds(N, PredicateId.WC1A) for _, N in subs)
        mx = module.ring.maximal_ideals[0]
        cube = ideal_power(mx, 3)
        rhs = bool((module.action_table[cube.elements()] == module.zero).all())
        if lhs != rhs:
            witness = None
            if not lhs:
                for name, N in subs:
                    v = cached_predicate(N, PredicateId.WC1A)
                    if not v.holds:
                        witness = (name, v.witness)
                        break
            rep.counterexample(mid, f"all-WC1A={lhs} but m^3M=0 is {rhs}",
                               witness)


def _check_t27(ws: Workspace, rep: CheckReport) -> None:
    # ring-level: every proper ideal weakly 1-absorbing <=> local with
    # m^3 = 0, or a product of two fields
    seen: set[int] = set()
    for rid in ws.ring_ids():
        ring = ws.ring(rid)
        if id(ring) in seen:
            continue
        seen.add(id(ring))
        rep.qualifying_instances += 1
        rep.instances_checked += len(ring.proper_ideals())
        lhs, witness = every_proper_ideal_w1a(ring)
        local_cubed = ring.is_local and ideal_power(ring.maximal_ideals[0], 3).is_zero()
        rhs = local_cubed or is_product_of_two_fields(ring)
        if lhs != rhs:
            detail = f"every-ideal-w1a={lhs} but structure says {rhs}"
            wtuple = None
            if witness is not None:
                ideal, triple = witness
                wtuple = ([int(x) for x in ideal.elements()], list(triple))
            rep.counterexample(rid, detail, wtuple)


# --------------------------------------------------------------------------- #
# Registry
# --------------------------------------------------------------------------- #

@dataclass(frozen=True)
class CheckDef:
    check_id: str
    mode: CheckMode
    summary: str
    runner: Callable[[Workspace, CheckReport], None]


REGISTRY: dict[str, CheckDef] = {
    d.check_id: d for d in [
        CheckDef("T01", CheckMode.EXHAUSTIVE,
                 "all colon ideals weakly 1-absorbing forces WC1A", _check_t01),
        CheckDef("T02", CheckMode.EXHAUSTIVE,
                 "WC1A gives weakly 1-absorbing colons at zero-annihilator elements",
                 _check_t02),
        CheckDef("T03", CheckMode.EXHAUSTIVE,
                 "non-torsion modules: WC1A iff all colons weakly 1-absorbing",
                 _check_t03),
        CheckDef("T04", CheckMode.EXHAUSTIVE,
                 "on M = R: WC1A iff weakly 1-absorbing prime ideal", _check_t04),
        CheckDef("T05", CheckMode.EXHAUSTIVE,
                 "monomorphism preimages preserve WC1A", _check_t05),
        CheckDef("T06", CheckMode.EXHAUSTIVE,
                 "epimorphism images preserve WC1A over the kernel", _check_t06),
        CheckDef("T07", CheckMode.EXHAUSTIVE, "quotients preserve WC1A", _check_t07),
        CheckDef("T08", CheckMode.EXHAUSTIVE, "WC1A lifts through quotients", _check_t08),
        CheckDef("T09", CheckMode.EXHAUSTIVE, "localization preserves WC1A", _check_t09),
        CheckDef("T10", CheckMode.EXHAUSTIVE,
                 "implications among the weak predicate family", _check_t10),
        CheckDef("T11", CheckMode.EXHAUSTIVE,
                 "cyclic modules: weakly 1-absorbing equals WC1A", _check_t11),
        CheckDef("T12", CheckMode.EXHAUSTIVE,
                 "quadruple-zero-free products split over submodules", _check_t12),
        CheckDef("T13", CheckMode.EXHAUSTIVE,
                 "free-quadruple ideal products split", _check_t13),
        CheckDef("T14", CheckMode.EXHAUSTIVE,
                 "first characterization: conditions (1)-(8) agree", _check_t14),
        CheckDef("T15", CheckMode.EXHAUSTIVE,
                 "quadruple-zero annihilation consequences", _check_t15),
        CheckDef("T16", CheckMode.EXHAUSTIVE,
                 "WC1A-not-C1A forces nilpotence", _check_t16),
        CheckDef("T17", CheckMode.EXHAUSTIVE,
                 "multiplication modules: product splitting characterizes WC1A",
                 _check_t17),
        CheckDef("T18", CheckMode.CONDITIONAL,
                 "second characterization: union-free directions", _check_t18),
        CheckDef("T19", CheckMode.EXHAUSTIVE,
                 "multiplication modules with 1-absorbing annihilator: four-way "
                 "equivalence", _check_t19),
        CheckDef("T20", CheckMode.EXHAUSTIVE,
                 "faithful modules: (N:M) weakly 1-absorbing", _check_t20),
        CheckDef("T21", CheckMode.EXHAUSTIVE,
                 "N1 x M2 characterization via quadruple-zero annihilation",
                 _check_t21),
        CheckDef("T22", CheckMode.EXHAUSTIVE,
                 "WC1A products have WC1A factors", _check_t22),
        CheckDef("T23", CheckMode.EXHAUSTIVE,
                 "decomposed rings: WC1A equals classical prime", _check_t23),
        CheckDef("T24", CheckMode.CONDITIONAL,
                 "free powers: descent asserted, ascent logged", _check_t24),
        CheckDef("T25", CheckMode.EXHAUSTIVE,
                 "all proper submodules WC1A forces Jac^3 M = 0", _check_t25),
        CheckDef("T26", CheckMode.EXHAUSTIVE,
                 "local rings: all proper submodules WC1A iff m^3 M = 0",
                 _check_t26),
        CheckDef("T27", CheckMode.EXHAUSTIVE,
                 "rings whose proper ideals are all weakly 1-absorbing",
                 _check_t27),
    ]
}


def run_check(check_id: str, ws: Workspace) -> CheckReport:
    definition = REGISTRY.get(check_id)
    if definition is None:
        raise SpecError(f"unknown check id {check_id!r}")
    report = CheckReport(check_id=check_id, mode=definition.mode.value)
    start = time.perf_counter()
    definition.runner(ws, report)
    report.runtime_ms = int((time.perf_counter() - start) * 1000)
    if report.counterexamples:
        report.status = "counterexample"
    elif report.qualifying_instances == 0:
        report.status = "skipped_no_instances"
    else:
        report.status = "verified"
    return report


def prewarm(ws: Workspace) -> None:
    """Build every module, lattice and named submodule once, sequentially,
    so parallel check execution only reads shared state."""
    for mid in ws.module_ids():
        ws.module(mid)
        ws.submodules_for(mid)
    for sid in sorted(ws.catalog.submodules):
        ws.submodule(sid)


def run_suite(ws: Workspace, selection=None, jobs: int = 1) -> SuiteReport:
    if selection in (None, "all"):
        ids = sorted(REGISTRY)
    else:
        ids = sorted(selection)
        unknown = [i for i in ids if i not in REGISTRY]
        if unknown:
            raise SpecError(f"unknown check ids: {', '.join(unknown)}")
    suite = SuiteReport(catalog_digest=ws.catalog.digest())
    prewarm(ws)
    if jobs <= 1:
        for cid in ids:
            suite.checks[cid] = run_check(cid, ws)
        return suite
    from concurrent.futures import ThreadPoolExecutor
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        futures = {cid: pool.submit(run_check, cid, ws) for cid in ids}
        for cid in ids:
            suite.checks[cid] = futures[cid].result()
    return suite


# --------------------------------------------------------------------------- #
# Miner
# --------------------------------------------------------------------------- #

MINER_PATTERNS = ("wc1a_not_c1a", "wcp_not_cp", "submodule_char_converse",
                  "free_power_ascent")


def mine(pattern: str, max_ring: int, max_module: int, limit: int = 16) -> list[dict]:
    """Search Z_n ring-as-module instances (integer scalars first, then ring
    scalars) for separating examples.  Deterministic enumeration order:
    n ascending, mode, then lattice order."""
    if pattern not in MINER_PATTERNS:
        raise SpecError(f"unknown miner pattern {pattern!r}; "
                        f"known: {', '.join(MINER_PATTERNS)}")
    findings: list[dict] = []
    for n in range(2, max_ring + 1):
        for mode in (ScalarMode.INTEGER_IMAGE, ScalarMode.RING):
            if n > max_module:
                continue
            spec = ring_as_module(zn(n), mode)
            module = build_module(spec)
            try:
                lattice = module.submodule_lattice()
            except CapExceededError:
                continue
            for N in lattice:
                if not N.is_proper():
                    continue
                entry = _mine_instance(pattern, module, N, n, mode, max_module)
                if entry is not None:
                    findings.append(entry)
                    if len(findings) >= limit:
                        return findings
    return findings


def _mine_instance(pattern: str, module: FiniteModule, N: Submodule, n: int,
                   mode: ScalarMode, max_module: int) -> Optional[dict]:
    base = {"ring": f"Z{n}", "scalar_mode": mode.value,
            "submodule": [int(g) for g in N.gens()], "size": N.size}
    if pattern == "wc1a_not_c1a":
        if _holds(N, PredicateId.WC1A) and not _holds(N, PredicateId.C1A):
            v = cached_predicate(N, PredicateId.C1A)
            return {**base, "detail": "weakly classical 1-absorbing, not classical",
                    "witness": list(v.witness)}
        return None
    if pattern == "wcp_not_cp":
        if (_holds(N, PredicateId.WEAKLY_CLASSICAL_PRIME)
                and not _holds(N, PredicateId.CLASSICAL_PRIME)):
            v = cached_predicate(N, PredicateId.CLASSICAL_PRIME)
            return {**base, "detail": "weakly classical prime, not classical prime",
                    "witness": list(v.witness)}
        return None
    if pattern == "submodule_char_converse":
        if _holds(N, PredicateId.WC1A):
            v = characterization_condition(N, ConditionFamily.SUBMODULEWISE, 2)
            if not v.holds:
                return {**base, "detail": "WC1A without second-characterization (2)",
                        "witness": list(v.witness)}
        return None
    if pattern == "free_power_ascent":
        if module.size * module.size > max_module:
            return None
        if not _holds(N, PredicateId.WC1A):
            return None
        _, Nk = tensor_free(module, 2, N, cap=max_module)
        if not _holds(Nk, PredicateId.WC1A):
            v = cached_predicate(Nk, PredicateId.WC1A)
            return {**base, "detail": "WC1A(N) without WC1A(N^2)",
                    "witness": list(v.witness)}
        return None
    return None
