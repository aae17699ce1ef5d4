"""Deliberately naive reference decision for the weakly-classical
1-absorbing predicate.

This is the semantic reference the optimized classifier is tested against:
a plain quadruple loop straight off the definition, no grouping by
products, no vectorization.  It shares nothing with `classify` except the
raw tables and the documented witness order (which it rebuilds itself with
`sorted`).  The loop body is numba-compiled when available because the
equivalence suite runs it over hundreds of instances; the fallback is the
identical Python loop.
"""

from __future__ import annotations

import itertools
import os
from typing import Optional

import numpy as np

from .modules import FiniteModule, ScalarMode, Submodule


def _scan(triples, mul, act, in_n, zero, weak, m_outer, n_m):
    # returns (a, b, c, m) of the first violation in scan order, else (-1,..)
    if m_outer:
        for m in range(n_m):
            for t in range(triples.shape[0]):
                a = triples[t, 0]
                b = triples[t, 1]
                c = triples[t, 2]
                ab = mul[a, b]
                e = act[mul[ab, c], m]
                if in_n[e] and (not weak or e != zero):
                    if not in_n[act[ab, m]] and not in_n[act[c, m]]:
                        return a, b, c, m
    else:
        for t in range(triples.shape[0]):
            a = triples[t, 0]
            b = triples[t, 1]
            c = triples[t, 2]
            ab = mul[a, b]
            abc = mul[ab, c]
            for m in range(n_m):
                e = act[abc, m]
                if in_n[e] and (not weak or e != zero):
                    if not in_n[act[ab, m]] and not in_n[act[c, m]]:
                        return a, b, c, m
    return -1, -1, -1, -1


if os.environ.get("MODLAB_NO_NUMBA", "").strip().lower() in {"1", "true", "yes"}:
    _scan_compiled = _scan
else:
    try:
        from numba import njit
        _scan_compiled = njit(cache=False, nogil=True)(_scan)
    except ImportError:
        _scan_compiled = _scan


def _ordered_triples(module: FiniteModule) -> np.ndarray:
    n = module.ring.size
    if module.scalar_mode is ScalarMode.INTEGER_IMAGE:
        scalars = list(range(n))

        def rep(r: int) -> int:
            return r if r != 1 else 1 + n

        triples = sorted(
            itertools.product(scalars, repeat=3),
            key=lambda t: (rep(t[0]) * rep(t[1]) * rep(t[2]),
                           (rep(t[0]), rep(t[1]), rep(t[2]))))
    else:
        scalars = sorted(int(x) for x in np.flatnonzero(~module.ring.units))
        triples = list(itertools.product(scalars, repeat=3))
    return np.asarray(triples, dtype=np.int64).reshape(-1, 3)


def wc1a_naive(N: Submodule, weak: bool = True) -> tuple[bool, Optional[tuple]]:
    """(holds, first violating (a,b,c,m) or None), by exhaustive quadruple loop."""
    module = N.module
    triples = _ordered_triples(module)
    m_outer = module.scalar_mode is ScalarMode.INTEGER_IMAGE
    a, b, c, m = _scan_compiled(
        triples, module.ring.mul_table, module.action_table,
        N.members.astype(np.bool_), module.zero, weak, m_outer, module.size)
    if a < 0:
        return True, None
    return False, (int(a), int(b), int(c), int(m))
