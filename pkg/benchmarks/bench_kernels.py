#!/usr/bin/env python3
"""Benchmark the numba kernels against their numpy fallbacks.

Runs each kernel pair on representative inputs and prints per-call times
plus the speedup.  `MODLAB_NO_NUMBA=1` selects the fallback package-wide;
this script always times both paths explicitly (when numba is available)
and verifies they agree bit for bit.

Usage: python benchmarks/bench_kernels.py [--repeats N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from modlab import kernels
from modlab.rings import build_ring, zn
from modlab.modules import ScalarMode, build_module, ring_as_module, free_module
from modlab import oracle


def _time(fn, *args, repeats: int = 5) -> tuple[float, object]:
    best = float("inf")
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench(repeats: int) -> None:
    try:
        from numba import njit  # noqa: F401
        have_numba = True
    except ImportError:
        have_numba = False
    if not have_numba:
        print("numba unavailable: timing the numpy fallback only")

    ring36 = build_ring(zn(36))
    m36sq = build_module(free_module(zn(36), 2, ScalarMode.INTEGER_IMAGE), cap=2048)
    m16sq = build_module(free_module(zn(16), 2))
    z2_5 = build_module(free_module(zn(2), 5))

    def compiled(name):
        return kernels._compile(getattr(kernels, f"_{name}_loop"))

    cases = [
        ("closure_members (Z16^2, one seed)",
         "closure_members",
         (m16sq.add_table, m16sq.action_table, np.array([37], dtype=np.int64),
          m16sq.size)),
        ("sumset (two Z2^5 subgroups)",
         "sumset",
         (z2_5.add_table, np.arange(0, 32, 2, dtype=np.int64),
          np.arange(0, 32, 4, dtype=np.int64), z2_5.size)),
        ("assoc_violation (Z36^2 addition)",
         "assoc_violation",
         (m36sq.add_table,)),
        ("action_distrib_violation (Z36^2)",
         "action_distrib_violation",
         (m36sq.add_table, m36sq.action_table)),
        ("hom_extend (Z36^2 -> Z36^2)",
         "hom_extend",
         (m36sq.add_table, m36sq.action_table, m36sq.add_table, m36sq.action_table,
          np.array(m36sq.generators_hint, dtype=np.int64),
          np.array([1, 36], dtype=np.int64), m36sq.size)),
    ]

    print(f"{'kernel':<42} {'numpy':>10} {'numba':>10} {'speedup':>8}")
    for label, name, args in cases:
        np_fn = getattr(kernels, f"_{name}_np")
        t_np, out_np = _time(np_fn, *args, repeats=repeats)
        if have_numba:
            nb_fn = compiled(name)
            nb_fn(*args)  # compile outside the timer
            t_nb, out_nb = _time(nb_fn, *args, repeats=repeats)
            same = np.array_equal(np.asarray(out_np), np.asarray(out_nb))
            if not same:
                raise SystemExit(f"MISMATCH in {name}")
            print(f"{label:<42} {t_np*1e3:>8.2f}ms {t_nb*1e3:>8.2f}ms "
                  f"{t_np/max(t_nb, 1e-9):>7.1f}x")
        else:
            print(f"{label:<42} {t_np*1e3:>8.2f}ms {'-':>10} {'-':>8}")

    # the naive reference scan (quadruple loop): python vs numba
    m30 = build_module(ring_as_module(zn(30), ScalarMode.INTEGER_IMAGE))
    N = m30.submodule((4,))
    triples = oracle._ordered_triples(m30)
    args = (triples, m30.ring.mul_table, m30.action_table,
            N.members.astype(np.bool_), m30.zero, True, True, m30.size)
    t_py, out_py = _time(oracle._scan, *args, repeats=max(1, repeats // 2))
    if have_numba:
        from numba import njit
        scan_nb = njit(cache=False)(oracle._scan)
        scan_nb(*args)
        t_nb, out_nb = _time(scan_nb, *args, repeats=repeats)
        assert tuple(out_py) == tuple(out_nb)
        print(f"{'oracle quadruple loop (Z30, 4Z)':<42} {t_py*1e3:>8.2f}ms "
              f"{t_nb*1e3:>8.2f}ms {t_py/max(t_nb, 1e-9):>7.1f}x")
    else:
        print(f"{'oracle quadruple loop (Z30, 4Z)':<42} {t_py*1e3:>8.2f}ms")


if __name__ == "__main__":
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeats", type=int, default=5)
    bench(parser.parse_args().repeats)
