"""Prime-like predicates on submodules, with minimal replayable witnesses.

Predicate formulas (N a proper submodule, quantifiers per the module's
scalar mode; "nonunit" ranges over ring nonunits in RING mode and over all
residues in INTEGER_IMAGE mode, every residue class containing nonunit
integers):

* PRIME                   xm in N         => x in (N:M) or m in N
* CLASSICAL_PRIME         xym in N        => xm in N or ym in N
* WEAKLY_CLASSICAL_PRIME  0 != xym in N   => xm in N or ym in N
* C1A                     abcm in N       => abm in N or cm in N   (nonunits)
* WC1A                    0 != abcm in N  => abm in N or cm in N   (nonunits)
* WEAKLY_1ABS_SUBMODULE   0 != abm in N   => ab in (N:M) or m in N (nonunits)
* WEAKLY_SEMIPRIME        0 != a^2 m in N => am in N
* NILPOTENT               (N:M)^k N = 0 for some k >= 1 (powers iterated to
                          stabilization; finite rings stabilize)

Witness order
-------------
False verdicts carry the first violating tuple under the canonical order:

* ring scalars: plain lexicographic over (scalar indices..., m index);
* integer scalars: m index first, then the smallest integer product of the
  scalar representatives, then the representative tuple lexicographically.
  The representative of residue r is r itself except that residue 1 lifts
  to 1+n for nonunit quantifiers (1 is an integer unit).

The integer-scalar order reproduces the natural textbook witnesses
(smallest module element, then cheapest integer factorization).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from .errors import SpecError
from .modules import (FiniteModule, ScalarMode, Submodule, colon_ring,
                      colon_ring_integer, nonunit_representative,
                      nonunit_scalars, all_scalars, quantifier_ideals)
from .rings import ideal_product, z_ideal_w1a

# elements per chunk in the vectorized scans
_CHUNK_BUDGET = 2 ** 24


class PredicateId(str, Enum):
    PRIME = "PRIME"
    CLASSICAL_PRIME = "CLASSICAL_PRIME"
    WEAKLY_CLASSICAL_PRIME = "WEAKLY_CLASSICAL_PRIME"
    C1A = "C1A"
    WC1A = "WC1A"
    WEAKLY_1ABS_SUBMODULE = "WEAKLY_1ABS_SUBMODULE"
    WEAKLY_SEMIPRIME = "WEAKLY_SEMIPRIME"
    NILPOTENT = "NILPOTENT"


# (arity of the scalar tuple, whether the quantifier is nonunit-restricted)
_PREDICATE_SHAPE = {
    PredicateId.PRIME: (1, False),
    PredicateId.CLASSICAL_PRIME: (2, False),
    PredicateId.WEAKLY_CLASSICAL_PRIME: (2, False),
    PredicateId.C1A: (3, True),
    PredicateId.WC1A: (3, True),
    PredicateId.WEAKLY_1ABS_SUBMODULE: (2, True),
    PredicateId.WEAKLY_SEMIPRIME: (1, False),
}


@dataclass
class Verdict:
    holds: bool
    witness: Optional[tuple] = None
    instances_scanned: int = 0


@dataclass(frozen=True)
class QuadrupleZero:
    a: int
    b: int
    c: int
    m: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.m)


@dataclass
class ColonSummary:
    m: int
    ideal_size: int
    weakly_one_abs: bool
    integer_generator: Optional[int] = None


@dataclass
class ClassificationReport:
    module: FiniteModule
    submodule: Submodule
    verdicts: dict[PredicateId, Verdict] = field(default_factory=dict)
    quadruple_zeros: list[QuadrupleZero] = field(default_factory=list)
    quadruple_zeros_truncated: bool = False
    colon_summaries: list[ColonSummary] = field(default_factory=list)


# --------------------------------------------------------------------------- #
# Scan context
# --------------------------------------------------------------------------- #

class ScanContext:
    """Per-(module, N) precomputation shared by the predicate scans.

    IN[s, m]  : s*m in N            ZE[s, m] : s*m == 0
    SUBOK[e]  : R*e subset of N     colon[s] : s*M subset of N
    """

    def __init__(self, N: Submodule):
        module = N.module
        self.module = module
        self.N = N
        self.in_n = N.members.astype(bool)
        act = module.action_table
        self.IN = self.in_n[act]
        self.ZE = act == module.zero
        self.SUBOK = self.IN.all(axis=0)
        self.colon = self.IN.all(axis=1)
        self.mul = module.ring.mul_table
        self.act = act

    def scalars(self, nonunit: bool) -> np.ndarray:
        return nonunit_scalars(self.module) if nonunit else all_scalars(self.module)


def _evict_one(cache: dict) -> None:
    # tolerant under concurrent eviction: losing a race just skips a round
    try:
        cache.pop(next(iter(cache)), None)
    except (StopIteration, RuntimeError):
        pass


_ctx_cache: dict[tuple[int, bytes], ScanContext] = {}


def scan_context(N: Submodule) -> ScanContext:
    key = (id(N.module), N.key())
    ctx = _ctx_cache.get(key)
    if ctx is None or ctx.N.module is not N.module:
        ctx = ScanContext(N)
        _ctx_cache[key] = ctx
        if len(_ctx_cache) > 64:
            _evict_one(_ctx_cache)
    return ctx


# --------------------------------------------------------------------------- #
# Canonical witness order
# --------------------------------------------------------------------------- #

def ordered_scalar_tuples(module: FiniteModule, arity: int, nonunit: bool) -> list[tuple]:
    """Scalar tuples in canonical witness order (see module docstring)."""
    base = nonunit_scalars(module) if nonunit else all_scalars(module)
    idx = [int(x) for x in base]
    if module.scalar_mode is ScalarMode.RING:
        return list(itertools.product(sorted(idx), repeat=arity))
    if nonunit:
        reps = {r: nonunit_representative(module, r) for r in idx}
    else:
        reps = {r: r for r in idx}
    tuples = list(itertools.product(idx, repeat=arity))

    def key(t: tuple) -> tuple:
        rep = [reps[x] for x in t]
        prod = 1
        for v in rep:
            prod *= v
        return (prod, tuple(rep))

    return sorted(tuples, key=key)


def witness_is_m_major(module: FiniteModule) -> bool:
    return module.scalar_mode is ScalarMode.INTEGER_IMAGE


_order_cache: dict[tuple[int, int, bool], list[tuple]] = {}


def _ordered_tuples_cached(module: FiniteModule, arity: int, nonunit: bool) -> list[tuple]:
    key = (id(module), arity, nonunit)
    if key not in _order_cache:
        _order_cache[key] = ordered_scalar_tuples(module, arity, nonunit)
        if len(_order_cache) > 48:
            _evict_one(_order_cache)
    return _order_cache[key]


# --------------------------------------------------------------------------- #
# Violation formulas (pointwise, used for witness search and replay)
# --------------------------------------------------------------------------- #

def violates(N: Submodule, pid: PredicateId, scalars: tuple, m: int) -> bool:
    """Replay a candidate witness against the predicate formula."""
    ctx = scan_context(N)
    mul, act, in_n = ctx.mul, ctx.act, ctx.in_n
    zero = N.module.zero
    if pid is PredicateId.PRIME:
        (x,) = scalars
        return bool(in_n[act[x, m]] and not ctx.colon[x] and not in_n[m])
    if pid in (PredicateId.CLASSICAL_PRIME, PredicateId.WEAKLY_CLASSICAL_PRIME):
        x, y = scalars
        e = act[mul[x, y], m]
        weak = pid is PredicateId.WEAKLY_CLASSICAL_PRIME
        return bool(in_n[e] and (e != zero or not weak)
                    and not in_n[act[x, m]] and not in_n[act[y, m]])
    if pid in (PredicateId.C1A, PredicateId.WC1A):
        a, b, c = scalars
        p = mul[a, b]
        e = act[mul[p, c], m]
        weak = pid is PredicateId.WC1A
        return bool(in_n[e] and (e != zero or not weak)
                    and not in_n[act[p, m]] and not in_n[act[c, m]])
    if pid is PredicateId.WEAKLY_1ABS_SUBMODULE:
        a, b = scalars
        p = mul[a, b]
        e = act[p, m]
        return bool(in_n[e] and e != zero and not ctx.colon[p] and not in_n[m])
    if pid is PredicateId.WEAKLY_SEMIPRIME:
        (a,) = scalars
        e = act[mul[a, a], m]
        return bool(in_n[e] and e != zero and not in_n[act[a, m]])
    raise SpecError(f"no pointwise formula for {pid}")


def is_quadruple_zero(N: Submodule, a: int, b: int, c: int, m: int) -> bool:
    ctx = scan_context(N)
    p = ctx.mul[a, b]
    return bool(ctx.act[ctx.mul[p, c], m] == N.module.zero
                and not ctx.in_n[ctx.act[p, m]] and not ctx.in_n[ctx.act[c, m]])


# --------------------------------------------------------------------------- #
# Vectorized decisions
# --------------------------------------------------------------------------- #

def _pair_products(ctx: ScanContext, scalars: np.ndarray) -> np.ndarray:
    return np.unique(ctx.mul[np.ix_(scalars, scalars)])


def _triple_violations(ctx: ScanContext, pid: PredicateId):
    """Any-violation data for the 3-scalar predicates, grouped by (ab, c).

    Returns (any_m, pc_any, P, cs): per-m violation vector, per-(product,
    c) violation matrix, the distinct pair products and the c quantifier.
    """
    weak = pid is PredicateId.WC1A
    cs = ctx.scalars(True)
    P = _pair_products(ctx, cs)
    M = ctx.module.size
    any_m = np.zeros(M, dtype=bool)
    pc_any = np.zeros((P.size, cs.size), dtype=bool)
    rows = max(1, _CHUNK_BUDGET // max(1, cs.size * M))
    for start in range(0, P.size, rows):
        p_chunk = P[start:start + rows]
        T = ctx.mul[np.ix_(p_chunk, cs)]
        viol = ctx.in_n[ctx.act[T]]
        if weak:
            viol &= ctx.act[T] != ctx.module.zero
        viol &= ~ctx.IN[p_chunk][:, None, :]
        viol &= ~ctx.IN[cs][None, :, :]
        any_m |= viol.any(axis=(0, 1))
        pc_any[start:start + rows] = viol.any(axis=2)
    return any_m, pc_any, P, cs


def _find_witness_3(N: Submodule, pid: PredicateId, any_m: np.ndarray,
                    pc_any: np.ndarray, P: np.ndarray, cs: np.ndarray):
    ctx = scan_context(N)
    module = N.module
    triples = _ordered_tuples_cached(module, 3, True)
    if witness_is_m_major(module):
        m_star = int(np.flatnonzero(any_m)[0])
        for (a, b, c) in triples:
            if violates(N, pid, (a, b, c), m_star):
                return (a, b, c, m_star)
        raise SpecError("witness bookkeeping mismatch")
    pindex = {int(p): i for i, p in enumerate(P)}
    cindex = {int(c): j for j, c in enumerate(cs)}
    for (a, b, c) in triples:
        p = int(ctx.mul[a, b])
        if not pc_any[pindex[p], cindex[c]]:
            continue
        T = int(ctx.mul[p, c])
        viol = ctx.in_n[ctx.act[T]]
        if pid is PredicateId.WC1A:
            viol &= ctx.act[T] != module.zero
        viol &= ~ctx.IN[p] & ~ctx.IN[c]
        return (a, b, c, int(np.flatnonzero(viol)[0]))
    raise SpecError("witness bookkeeping mismatch")


def _decide_3(N: Submodule, pid: PredicateId) -> Verdict:
    ctx = scan_context(N)
    any_m, pc_any, P, cs = _triple_violations(ctx, pid)
    count = int(cs.size) ** 3 * ctx.module.size
    if not any_m.any():
        return Verdict(holds=True, instances_scanned=count)
    witness = _find_witness_3(N, pid, any_m, pc_any, P, cs)
    return Verdict(holds=False, witness=witness, instances_scanned=count)


def _decide_pointwise(N: Submodule, pid: PredicateId, viol: np.ndarray,
                      rows: np.ndarray, arity: int, nonunit: bool,
                      count: int) -> Verdict:
    """Shared tail for predicates whose violation array is (|rows|, M)."""
    module = N.module
    if not viol.any():
        return Verdict(holds=True, instances_scanned=count)
    tuples = _ordered_tuples_cached(module, arity, nonunit)
    if witness_is_m_major(module):
        m_star = int(np.flatnonzero(viol.any(axis=0))[0])
        for t in tuples:
            if violates(N, pid, t, m_star):
                return Verdict(holds=False, witness=(*t, m_star), instances_scanned=count)
    else:
        # rows are exact for these predicates: the formula depends on the
        # tuple only through its row key (the scalar, or the pair product)
        rindex = {int(r): i for i, r in enumerate(rows)}
        for t in tuples:
            row = viol[rindex[_row_key(N, pid, t)]]
            if row.any():
                m = int(np.flatnonzero(row)[0])
                return Verdict(holds=False, witness=(*t, m), instances_scanned=count)
    raise SpecError("witness bookkeeping mismatch")


def _row_key(N: Submodule, pid: PredicateId, t: tuple) -> int:
    ctx = scan_context(N)
    if pid is PredicateId.WEAKLY_1ABS_SUBMODULE:
        return int(ctx.mul[t[0], t[1]])
    if len(t) == 1:
        return int(t[0])
    raise SpecError("unexpected grouped predicate")


def check_predicate(N: Submodule, pid: PredicateId) -> Verdict:
    """Exhaustive decision of one predicate with a minimal witness on failure."""
    if not N.is_proper():
        raise SpecError("predicates are defined for proper submodules only")
    ctx = scan_context(N)
    module = N.module
    M = module.size
    if pid in (PredicateId.C1A, PredicateId.WC1A):
        return _decide_3(N, pid)
    if pid in (PredicateId.CLASSICAL_PRIME, PredicateId.WEAKLY_CLASSICAL_PRIME):
        xs = ctx.scalars(False)
        count = int(xs.size) ** 2 * M
        weak = pid is PredicateId.WEAKLY_CLASSICAL_PRIME
        viol_any_m = np.zeros(M, dtype=bool)
        found = False
        rows = max(1, _CHUNK_BUDGET // max(1, xs.size * M))
        pair_any = np.zeros((xs.size, xs.size), dtype=bool)
        for start in range(0, xs.size, rows):
            x_chunk = xs[start:start + rows]
            T = ctx.mul[np.ix_(x_chunk, xs)]
            viol = ctx.in_n[ctx.act[T]]
            if weak:
                viol &= ctx.act[T] != module.zero
            viol &= ~ctx.IN[x_chunk][:, None, :]
            viol &= ~ctx.IN[xs][None, :, :]
            viol_any_m |= viol.any(axis=(0, 1))
            pair_any[start:start + rows] = viol.any(axis=2)
            found = found or viol.any()
        if not found:
            return Verdict(holds=True, instances_scanned=count)
        tuples = _ordered_tuples_cached(module, 2, False)
        xindex = {int(x): i for i, x in enumerate(xs)}
        if witness_is_m_major(module):
            m_star = int(np.flatnonzero(viol_any_m)[0])
            for t in tuples:
                if violates(N, pid, t, m_star):
                    return Verdict(holds=False, witness=(*t, m_star),
                                   instances_scanned=count)
        else:
            for (x, y) in tuples:
                if not pair_any[xindex[x], xindex[y]]:
                    continue
                e = ctx.act[ctx.mul[x, y]]
                row = ctx.in_n[e]
                if weak:
                    row = row & (e != module.zero)
                row = row & ~ctx.IN[x] & ~ctx.IN[y]
                return Verdict(holds=False, witness=(x, y, int(np.flatnonzero(row)[0])),
                               instances_scanned=count)
        raise SpecError("witness bookkeeping mismatch")
    if pid is PredicateId.PRIME:
        xs = ctx.scalars(False)
        count = int(xs.size) * M
        viol = ctx.IN[xs] & ~ctx.colon[xs][:, None] & ~ctx.in_n[None, :]
        return _decide_pointwise(N, pid, viol, xs, 1, False, count)
    if pid is PredicateId.WEAKLY_SEMIPRIME:
        xs = ctx.scalars(False)
        count = int(xs.size) * M
        sq = ctx.mul[xs, xs]
        e = ctx.act[sq]
        viol = ctx.in_n[e] & (e != module.zero) & ~ctx.IN[xs]
        return _decide_pointwise(N, pid, viol, xs, 1, False, count)
    if pid is PredicateId.WEAKLY_1ABS_SUBMODULE:
        nus = ctx.scalars(True)
        P = _pair_products(ctx, nus)
        count = int(nus.size) ** 2 * M
        e = ctx.act[P]
        viol = ctx.in_n[e] & (e != module.zero) & ~ctx.colon[P][:, None] & ~ctx.in_n[None, :]
        return _decide_pointwise(N, pid, viol, P, 2, True, count)
    if pid is PredicateId.NILPOTENT:
        return _decide_nilpotent(N)
    raise SpecError(f"unknown predicate {pid}")


def _decide_nilpotent(N: Submodule) -> Verdict:
    module = N.module
    I = colon_ring(N)
    n_elems = N.elements()
    power = I
    seen: set[bytes] = set()
    k = 1
    scanned = 0
    while True:
        scanned += 1
        prods = module.action_table[np.ix_(power.elements(), n_elems)]
        if (prods == module.zero).all():
            return Verdict(holds=True, witness=(k,), instances_scanned=scanned)
        key = power.key()
        if key in seen:
            return Verdict(holds=False, instances_scanned=scanned)
        seen.add(key)
        power = ideal_product(power, I)
        k += 1


# --------------------------------------------------------------------------- #
# Quadruple zeros
# --------------------------------------------------------------------------- #

def find_quadruple_zeros(N: Submodule, limit: int = 16) -> tuple[list[QuadrupleZero], bool]:
    """Classical 1-quadruple-zeros (abcm = 0, abm and cm outside N) in
    canonical order, truncated at `limit`.  Returns (zeros, truncated)."""
    if not N.is_proper():
        raise SpecError("quadruple zeros are defined for proper submodules only")
    ctx = scan_context(N)
    module = N.module
    cs = ctx.scalars(True)
    P = _pair_products(ctx, cs)
    T = ctx.mul[np.ix_(P, cs)]
    viol = (ctx.act[T] == module.zero) & ~ctx.IN[P][:, None, :] & ~ctx.IN[cs][None, :, :]
    out: list[QuadrupleZero] = []
    triples = _ordered_tuples_cached(module, 3, True)
    pindex = {int(p): i for i, p in enumerate(P)}
    cindex = {int(c): j for j, c in enumerate(cs)}
    if witness_is_m_major(module):
        m_any = viol.any(axis=(0, 1))
        for m in np.flatnonzero(m_any):
            for (a, b, c) in triples:
                if viol[pindex[int(ctx.mul[a, b])], cindex[c], m]:
                    out.append(QuadrupleZero(a, b, c, int(m)))
                    if len(out) > limit:
                        return out[:limit], True
        return out, False
    for (a, b, c) in triples:
        row = viol[pindex[int(ctx.mul[a, b])], cindex[c]]
        for m in np.flatnonzero(row):
            out.append(QuadrupleZero(a, b, c, int(m)))
            if len(out) > limit:
                return out[:limit], True
    return out, False


def has_quadruple_zero(N: Submodule) -> bool:
    zeros, _ = find_quadruple_zeros(N, limit=1)
    return bool(zeros)


# --------------------------------------------------------------------------- #
# Aggregate report
# --------------------------------------------------------------------------- #

def classify_submodule(N: Submodule, quadruple_limit: int = 16) -> ClassificationReport:
    """All predicate verdicts plus quadruple zeros and colon summaries."""
    if not N.is_proper():
        raise SpecError("classification is defined for proper submodules only")
    module = N.module
    report = ClassificationReport(module=module, submodule=N)
    for pid in PredicateId:
        report.verdicts[pid] = check_predicate(N, pid)
    zeros, truncated = find_quadruple_zeros(N, quadruple_limit)
    report.quadruple_zeros = zeros
    report.quadruple_zeros_truncated = truncated
    integer_mode = module.scalar_mode is ScalarMode.INTEGER_IMAGE
    for m in np.flatnonzero(~N.members.astype(bool)):
        ideal = colon_ring(N, [int(m)])
        if integer_mode:
            d = colon_ring_integer(N, [int(m)])
            w1a = z_ideal_w1a(d).holds
            report.colon_summaries.append(ColonSummary(
                m=int(m), ideal_size=ideal.size, weakly_one_abs=w1a,
                integer_generator=d))
        else:
            from .rings import classify_ideal
            rep = classify_ideal(module.ring, ideal)
            report.colon_summaries.append(ColonSummary(
                m=int(m), ideal_size=ideal.size,
                weakly_one_abs=rep.weakly_one_abs_prime))
    return report


# --------------------------------------------------------------------------- #
# Characterization-theorem conditions
# --------------------------------------------------------------------------- #

class ConditionFamily(str, Enum):
    """The two long characterization theorems, named by what their numbered
    conditions quantify: ELEMENTWISE ranges over module elements (plus
    ideals), SUBMODULEWISE ranges over whole submodules."""

    ELEMENTWISE = "ELEMENTWISE"
    SUBMODULEWISE = "SUBMODULEWISE"


def _lattice_for_conditions(module: FiniteModule, **caps) -> list[Submodule]:
    return module.submodule_lattice(**caps)


def _subset_stats(ctx: ScanContext, gens: tuple[int, ...]):
    """Per-scalar data for a generated subset X: s.X subset-of-N and s.X != 0."""
    if not gens:
        # the zero submodule: s*X = {0} always
        R = ctx.mul.shape[0]
        return np.ones(R, dtype=bool), np.zeros(R, dtype=bool)
    h = np.asarray(gens, dtype=np.int64)
    cols = ctx.act[:, h]
    sub_ok = ctx.SUBOK[cols].all(axis=1)
    nonzero = (cols != ctx.module.zero).any(axis=1)
    return sub_ok, nonzero


def characterization_condition(N: Submodule, family: ConditionFamily, k: int,
                               **caps) -> Verdict:
    """Evaluate condition (k), 2 <= k <= 8, of the two characterization
    theorems, exactly as written (with the phantom quantifiers of
    ELEMENTWISE(3) and SUBMODULEWISE(7) dropped: the displayed formulas
    never use them)."""
    if not N.is_proper():
        raise SpecError("conditions are defined for proper submodules only")
    if not 2 <= k <= 8:
        raise SpecError("condition index must be between 2 and 8")
    if family is ConditionFamily.ELEMENTWISE:
        return _elementwise_condition(N, k, **caps)
    return _submodulewise_condition(N, k, **caps)


def _elementwise_condition(N: Submodule, k: int, **caps) -> Verdict:
    ctx = scan_context(N)
    module = N.module
    M = module.size
    nus = ctx.scalars(True)
    P = _pair_products(ctx, nus)
    triples = None

    def triple_witness(check) -> Optional[tuple]:
        nonlocal triples
        triples = triples or _ordered_tuples_cached(module, 3, True)
        for t in triples:
            w = check(*t)
            if w is not None:
                return w
        return None

    if k == 2:
        # (N :_M abc) = (0 :_M abc) u (N :_M ab) u (N :_M c)
        count = int(nus.size) ** 3
        T = ctx.mul[np.ix_(P, nus)]
        lhs = ctx.IN[T]
        rhs = ctx.ZE[T] | ctx.IN[P][:, None, :] | ctx.IN[nus][None, :, :]
        bad = (lhs & ~rhs).any(axis=2)
        if not bad.any():
            return Verdict(holds=True, instances_scanned=count)
        pindex = {int(p): i for i, p in enumerate(P)}
        cindex = {int(c): j for j, c in enumerate(cs_list(nus))}

        def check(a, b, c):
            i = pindex[int(ctx.mul[a, b])]
            j = cindex[int(c)]
            if bad[i, j]:
                m = int(np.flatnonzero(lhs[i, j] & ~rhs[i, j])[0])
                return (a, b, c, m)
            return None

        return Verdict(holds=False, witness=triple_witness(check), instances_scanned=count)

    if k in (3, 4):
        # colon identities at elements abm with abm outside N
        count = int(nus.size) ** 2 * M
        INT = ctx.IN.T    # [m-ish element, x] after transpose: INT[e] = column over x
        # we use columns directly: (N:_R e) = IN[:, e]
        viol_found = None
        pair_list = _ordered_tuples_cached(module, 2, True)
        any_m = np.zeros(M, dtype=bool)
        records = {}
        for p in P:
            E = ctx.act[p]
            hyp = ~ctx.in_n[E]
            lhs = ctx.IN[:, E]
            if k == 3:
                rhs = ctx.ZE[:, E] | ctx.IN
                bad = (lhs & ~rhs).any(axis=0) & hyp
            else:
                eq1 = (lhs == ctx.ZE[:, E]).all(axis=0)
                eq2 = (lhs == ctx.IN).all(axis=0)
                bad = ~(eq1 | eq2) & hyp
            records[int(p)] = bad
            any_m |= bad
        if not any_m.any():
            return Verdict(holds=True, instances_scanned=count)
        if witness_is_m_major(module):
            m_star = int(np.flatnonzero(any_m)[0])
            for (a, b) in pair_list:
                if records[int(ctx.mul[a, b])][m_star]:
                    return Verdict(holds=False, witness=(a, b, m_star),
                                   instances_scanned=count)
        else:
            for (a, b) in pair_list:
                row = records[int(ctx.mul[a, b])]
                if row.any():
                    return Verdict(holds=False, witness=(a, b, int(np.flatnonzero(row)[0])),
                                   instances_scanned=count)
        raise SpecError("witness bookkeeping mismatch")

    ideals = quantifier_ideals(module)
    if k in (5, 6):
        count = int(nus.size) ** 2 * len(ideals) * M
        gen_data = [np.asarray(I.generators or (module.ring.zero,), dtype=np.int64)
                    for I in ideals]
        if k == 5:
            quant = P
        else:
            quant = None  # (6) needs the (a, b) pair, not just the product
        for idx, I in enumerate(ideals):
            g = gen_data[idx]
            g_elems = ctx.act[g]                       # (|g|, M): g_t * m
            im_ok = ctx.SUBOK[g_elems].all(axis=0)     # Im subset N
            if k == 5:
                for p in P:
                    pg = ctx.mul[p, g]
                    e = ctx.act[pg]
                    hyp = ctx.SUBOK[e].all(axis=0) & (e != module.zero).any(axis=0)
                    bad = hyp & ~ctx.IN[p] & ~im_ok
                    if bad.any():
                        pair_list = _ordered_tuples_cached(module, 2, True)
                        if witness_is_m_major(module):
                            m_star = int(np.flatnonzero(bad)[0])
                        else:
                            m_star = None
                        for (a, b) in pair_list:
                            if int(ctx.mul[a, b]) != int(p):
                                continue
                            m = m_star if m_star is not None else int(np.flatnonzero(bad)[0])
                            return Verdict(holds=False, witness=(a, b, idx, m),
                                           instances_scanned=count)
            else:
                for a in nus:
                    ag = ctx.mul[a, g]
                    aIm_ok = ctx.SUBOK[ctx.act[ag]].all(axis=0)
                    for b in nus:
                        pg = ctx.mul[int(ctx.mul[a, b]), g]
                        e = ctx.act[pg]
                        hyp = ctx.SUBOK[e].all(axis=0) & (e != module.zero).any(axis=0)
                        bad = hyp & ~aIm_ok & ~ctx.IN[b]
                        if bad.any():
                            return Verdict(holds=False,
                                           witness=(int(a), int(b), idx,
                                                    int(np.flatnonzero(bad)[0])),
                                           instances_scanned=count)
        return Verdict(holds=True, instances_scanned=count)

    if k == 7:
        count = int(nus.size) * len(ideals) * M
        for idx, I in enumerate(ideals):
            g = np.asarray(I.generators or (module.ring.zero,), dtype=np.int64)
            for a in nus:
                ag = ctx.mul[int(a), g]
                hyp = ~ctx.SUBOK[ctx.act[ag]].all(axis=0)      # aIm not subset N
                if not hyp.any():
                    continue
                xs_ag = ctx.mul[:, ag]                          # (R, |g|): x*a*g_t
                e = ctx.act[xs_ag.ravel()].reshape(xs_ag.shape[0], xs_ag.shape[1], M)
                colset = ctx.SUBOK[e].all(axis=1)               # (R, M): x in (N:R aIm)
                zeroset = (e == module.zero).all(axis=1)        # (R, M)
                eq1 = (colset == zeroset).all(axis=0)
                eq2 = (colset == ctx.IN).all(axis=0)
                bad = hyp & ~(eq1 | eq2)
                if bad.any():
                    return Verdict(holds=False,
                                   witness=(int(a), idx, int(np.flatnonzero(bad)[0])),
                                   instances_scanned=count)
        return Verdict(holds=True, instances_scanned=count)

    # k == 8: 0 != IJKm subset N => IJm subset N or Km subset N
    count = len(ideals) ** 3 * M
    gens = [np.asarray(I.generators or (module.ring.zero,), dtype=np.int64) for I in ideals]
    km_ok = []
    for g in gens:
        km_ok.append(ctx.SUBOK[ctx.act[g]].all(axis=0))
    for i, I in enumerate(ideals):
        for j, J in enumerate(ideals):
            t2 = np.unique(ctx.mul[np.ix_(gens[i], gens[j])])
            ij_ok = ctx.SUBOK[ctx.act[t2]].all(axis=0)
            for kk, K in enumerate(ideals):
                t3 = np.unique(ctx.mul[np.ix_(t2, gens[kk])])
                e = ctx.act[t3]
                hyp = ctx.SUBOK[e].all(axis=0) & (e != module.zero).any(axis=0)
                bad = hyp & ~ij_ok & ~km_ok[kk]
                if bad.any():
                    return Verdict(holds=False,
                                   witness=(i, j, kk, int(np.flatnonzero(bad)[0])),
                                   instances_scanned=count)
    return Verdict(holds=True, instances_scanned=count)


def cs_list(arr: np.ndarray) -> list[int]:
    return [int(x) for x in arr]


def _submodulewise_condition(N: Submodule, k: int, **caps) -> Verdict:
    ctx = scan_context(N)
    module = N.module
    nus = ctx.scalars(True)
    P = _pair_products(ctx, nus)

    if k == 2:
        # (N:_M abc) equals one of (N:_M ab), (0:_M abc), (N:_M c)
        count = int(nus.size) ** 3
        T = ctx.mul[np.ix_(P, nus)]
        lhs = ctx.IN[T]
        eq_ab = (lhs == ctx.IN[P][:, None, :]).all(axis=2)
        eq_ze = (lhs == ctx.ZE[T]).all(axis=2)
        eq_c = (lhs == ctx.IN[nus][None, :, :]).all(axis=2)
        bad = ~(eq_ab | eq_ze | eq_c)
        if not bad.any():
            return Verdict(holds=True, instances_scanned=count)
        pindex = {int(p): i for i, p in enumerate(P)}
        cindex = {int(c): j for j, c in enumerate(cs_list(nus))}
        for (a, b, c) in _ordered_tuples_cached(module, 3, True):
            if bad[pindex[int(ctx.mul[a, b])], cindex[int(c)]]:
                return Verdict(holds=False, witness=(a, b, c), instances_scanned=count)
        raise SpecError("witness bookkeeping mismatch")

    lattice = _lattice_for_conditions(module, **caps)
    stats = [_subset_stats(ctx, L.gens()) for L in lattice]

    if k == 3:
        count = int(nus.size) ** 3 * len(lattice)
        for li, (subL, nzL) in enumerate(stats):
            T = ctx.mul[np.ix_(P, nus)]
            hyp = subL[T] & nzL[T]
            bad = hyp & ~subL[P][:, None] & ~subL[nus][None, :]
            if bad.any():
                pindex = {int(p): i for i, p in enumerate(P)}
                cindex = {int(c): j for j, c in enumerate(cs_list(nus))}
                for (a, b, c) in _ordered_tuples_cached(module, 3, True):
                    if bad[pindex[int(ctx.mul[a, b])], cindex[int(c)]]:
                        return Verdict(holds=False, witness=(a, b, c, li),
                                       instances_scanned=count)
        return Verdict(holds=True, instances_scanned=count)

    if k == 4:
        count = int(nus.size) ** 2 * len(lattice)
        for li, (subL, nzL) in enumerate(stats):
            for p in P:
                if subL[p]:
                    continue  # hypothesis abL not subset of N fails
                col = subL[ctx.mul[:, p]]
                zero_col = ~nzL[ctx.mul[:, p]]
                if not (np.array_equal(col, zero_col) or np.array_equal(col, subL)):
                    pair_list = _ordered_tuples_cached(module, 2, True)
                    for (a, b) in pair_list:
                        if int(ctx.mul[a, b]) == int(p):
                            return Verdict(holds=False, witness=(a, b, li),
                                           instances_scanned=count)
        return Verdict(holds=True, instances_scanned=count)

    ideals = quantifier_ideals(module)
    gens = [np.asarray(I.generators or (module.ring.zero,), dtype=np.int64) for I in ideals]

    if k == 5:
        count = int(nus.size) ** 2 * len(ideals) * len(lattice)
        for li, (subL, nzL) in enumerate(stats):
            for ji, g in enumerate(gens):
                jl_ok = bool(subL[g].all())
                pg = ctx.mul[np.ix_(P, g)]
                hyp = subL[pg].all(axis=1) & nzL[pg].any(axis=1)
                bad = hyp & ~subL[P] & ~jl_ok
                if bad.any():
                    p_bad = int(P[np.flatnonzero(bad)[0]])
                    for (a, b) in _ordered_tuples_cached(module, 2, True):
                        if int(ctx.mul[a, b]) == p_bad:
                            return Verdict(holds=False, witness=(a, b, ji, li),
                                           instances_scanned=count)
        return Verdict(holds=True, instances_scanned=count)

    if k == 6:
        count = int(nus.size) * len(ideals) ** 2 * len(lattice)
        for li, (subL, nzL) in enumerate(stats):
            for ji, gj in enumerate(gens):
                jl_ok = bool(subL[gj].all())
                if jl_ok:
                    continue  # conclusion always satisfied
                for ii, gi in enumerate(gens):
                    t2 = np.unique(ctx.mul[np.ix_(gi, gj)])
                    at2 = ctx.mul[np.ix_(nus, t2)]
                    hyp = subL[at2].all(axis=1) & nzL[at2].any(axis=1)
                    ail = subL[ctx.mul[np.ix_(nus, gi)]].all(axis=1)
                    bad = hyp & ~ail
                    if bad.any():
                        a = int(nus[np.flatnonzero(bad)[0]])
                        return Verdict(holds=False, witness=(a, ii, ji, li),
                                       instances_scanned=count)
        return Verdict(holds=True, instances_scanned=count)

    if k == 7:
        count = len(ideals) ** 2 * len(lattice)
        R = module.ring.size
        for li, (subL, nzL) in enumerate(stats):
            for ii, gi in enumerate(gens):
                for ji, gj in enumerate(gens):
                    t2 = np.unique(ctx.mul[np.ix_(gi, gj)])
                    if subL[t2].all():
                        continue  # IJL subset N: hypothesis fails
                    xt2 = ctx.mul[:, t2]
                    colset = subL[xt2].all(axis=1)        # (R,)
                    zeroset = (~nzL[xt2]).all(axis=1)
                    if not (np.array_equal(colset, zeroset)
                            or np.array_equal(colset, subL)):
                        return Verdict(holds=False, witness=(ii, ji, li),
                                       instances_scanned=count)
        return Verdict(holds=True, instances_scanned=count)

    # k == 8
    count = len(ideals) ** 3 * len(lattice)
    for li, (subL, nzL) in enumerate(stats):
        kl_ok = [bool(subL[g].all()) for g in gens]
        for ii, gi in enumerate(gens):
            for ji, gj in enumerate(gens):
                t2 = np.unique(ctx.mul[np.ix_(gi, gj)])
                ij_ok = bool(subL[t2].all())
                if ij_ok:
                    continue
                for ki, gk in enumerate(gens):
                    if kl_ok[ki]:
                        continue
                    t3 = np.unique(ctx.mul[np.ix_(t2, gk)])
                    if subL[t3].all() and nzL[t3].any():
                        return Verdict(holds=False, witness=(ii, ji, ki, li),
                                       instances_scanned=count)
    return Verdict(holds=True, instances_scanned=count)


# --------------------------------------------------------------------------- #
# Witness rendering
# --------------------------------------------------------------------------- #

def render_witness(N: Submodule, pid: PredicateId, witness: tuple) -> str:
    """Human-readable witness; the index tuple stays normative."""
    module = N.module
    arity, nonunit = _PREDICATE_SHAPE.get(pid, (len(witness) - 1, True))
    scalars = witness[:-1] if pid is not PredicateId.NILPOTENT else ()
    m = witness[-1] if pid is not PredicateId.NILPOTENT else None
    if pid is PredicateId.NILPOTENT:
        return f"power {witness[0]}"
    parts = []
    for s in scalars:
        if module.scalar_mode is ScalarMode.INTEGER_IMAGE and nonunit:
            rep = nonunit_representative(module, int(s))
            parts.append(str(rep) if rep == s else f"{rep}(={s} mod n)")
        else:
            parts.append(module.ring.render_element(int(s)))
    return "·".join(parts) + f"·[{module.render_element(int(m))}]" if m is not None else "·".join(parts)
