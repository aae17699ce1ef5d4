"""Hot loops shared by the ring and module layers.

Each kernel exists in two semantically identical forms: a tight index loop
compiled with numba (``*_nb``) and a vectorized numpy fallback (``*_np``).
The active form is chosen once at import time; setting ``MODLAB_NO_NUMBA=1``
(or running without numba installed) selects the numpy path.
``benchmarks/bench_kernels.py`` times the two against each other and the
test suite asserts they agree bit for bit.
"""

from __future__ import annotations

import os

import numpy as np

_ENV_FLAG = "MODLAB_NO_NUMBA"


def numba_requested() -> bool:
    if os.environ.get(_ENV_FLAG, "").strip().lower() in {"1", "true", "yes"}:
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


USING_NUMBA = numba_requested()


def _compile(fn):
    from numba import njit

    return njit(cache=False, nogil=True)(fn)


# --- closure of a subset under addition and the scalar action ---------------
#
# `add` is the size x size addition table, `act` the (scalar x element) action
# table (for ideal closure this is the multiplication table).  Worklist BFS:
# whenever an element enters, all its scalar multiples and all sums with
# already-present elements are pushed.  O(|closure| * (|closure| + |R|)).

def _closure_members_loop(add, act, seeds, n_elems):
    members = np.zeros(n_elems, dtype=np.uint8)
    order = np.empty(n_elems, dtype=np.int64)
    members[0] = 1
    order[0] = 0
    count = 1
    head = 0
    for s in seeds:
        if members[s] == 0:
            members[s] = 1
            order[count] = s
            count += 1
    n_scalars = act.shape[0]
    while head < count:
        x = order[head]
        head += 1
        for r in range(n_scalars):
            y = act[r, x]
            if members[y] == 0:
                members[y] = 1
                order[count] = y
                count += 1
        i = 0
        while i < count:
            y = add[x, order[i]]
            if members[y] == 0:
                members[y] = 1
                order[count] = y
                count += 1
            i += 1
    return members


def _closure_members_np(add, act, seeds, n_elems):
    members = np.zeros(n_elems, dtype=np.uint8)
    members[0] = 1
    queue = [0]
    for s in seeds:
        if members[s] == 0:
            members[s] = 1
            queue.append(int(s))
    head = 0
    while head < len(queue):
        x = queue[head]
        head += 1
        present = np.flatnonzero(members)
        fresh = np.unique(np.concatenate((act[:, x], add[x, present])))
        fresh = fresh[members[fresh] == 0]
        if fresh.size:
            members[fresh] = 1
            queue.extend(int(v) for v in fresh)
    return members


# --- sum set of two additively closed subsets --------------------------------

def _sumset_loop(add, a_elems, b_elems, n_elems):
    members = np.zeros(n_elems, dtype=np.uint8)
    for i in range(a_elems.shape[0]):
        row = add[a_elems[i]]
        for j in range(b_elems.shape[0]):
            members[row[b_elems[j]]] = 1
    return members


def _sumset_np(add, a_elems, b_elems, n_elems):
    members = np.zeros(n_elems, dtype=np.uint8)
    members[np.unique(add[np.ix_(a_elems, b_elems)])] = 1
    return members


# --- binary-operation axiom scans --------------------------------------------
# Each returns -1 when the law holds and a flattened witness index otherwise.

def _assoc_violation_loop(table):
    n = table.shape[0]
    for a in range(n):
        for b in range(n):
            ab = table[a, b]
            for c in range(n):
                if table[ab, c] != table[a, table[b, c]]:
                    return a * n * n + b * n + c
    return -1


def _assoc_violation_np(table):
    n = table.shape[0]
    for a in range(n):
        lhs = table[table[a]]
        rhs = table[a][table]
        if not np.array_equal(lhs, rhs):
            b, c = np.argwhere(lhs != rhs)[0]
            return a * n * n + int(b) * n + int(c)
    return -1


def _action_assoc_violation_loop(mul, act):
    # (r*s)m == r(sm) for all scalars r, s and module elements m
    n_r = mul.shape[0]
    n_m = act.shape[1]
    for r in range(n_r):
        for s in range(n_r):
            rs = mul[r, s]
            for m in range(n_m):
                if act[rs, m] != act[r, act[s, m]]:
                    return r * n_r * n_m + s * n_m + m
    return -1


def _action_assoc_violation_np(mul, act):
    n_r = mul.shape[0]
    n_m = act.shape[1]
    for r in range(n_r):
        lhs = act[mul[r]]
        rhs = act[r][act]
        if not np.array_equal(lhs, rhs):
            s, m = np.argwhere(lhs != rhs)[0]
            return r * n_r * n_m + int(s) * n_m + int(m)
    return -1


def _action_distrib_violation_loop(add_m, act):
    # r(m + m') == rm + rm'
    n_r = act.shape[0]
    n_m = act.shape[1]
    for r in range(n_r):
        for m1 in range(n_m):
            rm1 = act[r, m1]
            for m2 in range(n_m):
                if act[r, add_m[m1, m2]] != add_m[rm1, act[r, m2]]:
                    return r * n_m * n_m + m1 * n_m + m2
    return -1


def _action_distrib_violation_np(add_m, act):
    n_m = act.shape[1]
    for r in range(act.shape[0]):
        row = act[r]
        lhs = row[add_m]
        rhs = add_m[np.ix_(row, row)]
        if not np.array_equal(lhs, rhs):
            m1, m2 = np.argwhere(lhs != rhs)[0]
            return r * n_m * n_m + int(m1) * n_m + int(m2)
    return -1


# --- homomorphism extension ---------------------------------------------------
#
# Extends an assignment gens[i] -> images[i] to a full map by BFS from zero
# along edges m -> m + r*gens[i], checking every such edge.  Edge-complete
# checking makes a consistent extension additive and action-compatible, so
# survivors are genuine homomorphisms.  Returns the image table, or an empty
# array when the assignment is inconsistent or misses part of the source.

def _hom_extend_loop(add_s, act_s, add_t, act_t, gens, images, n_src):
    fmap = np.full(n_src, -1, dtype=np.int64)
    order = np.empty(n_src, dtype=np.int64)
    fmap[0] = 0
    order[0] = 0
    count = 1
    head = 0
    n_scalars = act_s.shape[0]
    k = gens.shape[0]
    while head < count:
        x = order[head]
        fx = fmap[x]
        head += 1
        for i in range(k):
            g = gens[i]
            fg = images[i]
            for r in range(n_scalars):
                y = add_s[x, act_s[r, g]]
                fy = add_t[fx, act_t[r, fg]]
                if fmap[y] == -1:
                    fmap[y] = fy
                    order[count] = y
                    count += 1
                elif fmap[y] != fy:
                    return np.empty(0, dtype=np.int64)
    if count != n_src:
        return np.empty(0, dtype=np.int64)
    return fmap


def _hom_extend_np(add_s, act_s, add_t, act_t, gens, images, n_src):
    fmap = np.full(n_src, -1, dtype=np.int64)
    fmap[0] = 0
    queue = [0]
    head = 0
    src_steps = add_s[:, act_s[:, gens].ravel()]
    tgt_steps = add_t[:, act_t[:, images].ravel()]
    while head < len(queue):
        x = queue[head]
        head += 1
        ys = src_steps[x]
        fys = tgt_steps[fmap[x]]
        known = fmap[ys]
        if np.any((known != -1) & (known != fys)):
            return np.empty(0, dtype=np.int64)
        fresh_mask = known == -1
        if np.any(fresh_mask):
            ys_f = ys[fresh_mask]
            fys_f = fys[fresh_mask]
            first = np.unique(ys_f, return_index=True)[1]
            ys_u = ys_f[first]
            fys_u = fys_f[first]
            clash = fys_f != fys_u[np.searchsorted(ys_u, ys_f)]
            if np.any(clash):
                return np.empty(0, dtype=np.int64)
            fmap[ys_u] = fys_u
            queue.extend(int(v) for v in ys_u)
    if len(queue) != n_src:
        return np.empty(0, dtype=np.int64)
    return fmap


if USING_NUMBA:
    closure_members = _compile(_closure_members_loop)
    sumset = _compile(_sumset_loop)
    assoc_violation = _compile(_assoc_violation_loop)
    action_assoc_violation = _compile(_action_assoc_violation_loop)
    action_distrib_violation = _compile(_action_distrib_violation_loop)
    hom_extend = _compile(_hom_extend_loop)
else:
    closure_members = _closure_members_np
    sumset = _sumset_np
    assoc_violation = _assoc_violation_np
    action_assoc_violation = _action_assoc_violation_np
    action_distrib_violation = _action_distrib_violation_np
    hom_extend = _hom_extend_np
