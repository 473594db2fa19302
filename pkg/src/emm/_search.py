"""Backtracking kernel for the signed-rotation embedding search.

The kernel enumerates signed rotation systems of a connected graph and
counts the faces each one produces, looking for an assignment with a
prescribed face count.  It is written against flat numpy arrays so the
same source compiles under numba when available; `embed` falls back to
running it as plain Python otherwise.

State encoding: dart d of edge e = d >> 1 together with a side bit, as
state 2*d + sbit (sbit 0 means the positive side).  Walking a face from
(d, s) crosses to the mate dart, flips the side by the sign of the edge,
and turns by the rotation at the new vertex, clockwise on one side and
counterclockwise on the other.  Faces come in mirror pairs of state
orbits, so a closed surface with F faces has exactly 2*F orbits on the
4*m states.

The search assigns one vertex rotation at a time, maintaining the known
part of the orbit structure as disjoint chains with O(1) merge/undo, and
prunes with two exact bounds: every final orbit needs at least `girth_b`
states and at least one open chain, and closed orbits never reopen.
"""
from __future__ import annotations

import numpy as np


def search_kernel(n, m, pdeg, pcnt, poff, rot_data,
                  cot, f_target, girth_b, nth, budget,
                  out_choice, out_mask):
    """Returns (status, nodes, seen): status 1 = found (outputs filled),
    0 = search space exhausted, 2 = node budget exceeded."""
    four_m = 4 * m
    succ = np.full(four_m, -1, np.int32)
    pred = np.full(four_m, -1, np.int32)
    head_of = np.empty(four_m, np.int32)
    tail_of = np.empty(four_m, np.int32)
    len_of = np.empty(four_m, np.int32)
    lam = np.empty(m, np.int8)
    nxt = np.empty(2 * m, np.int32)
    prv = np.empty(2 * m, np.int32)
    cap = four_m + 4
    log_u = np.empty(cap, np.int32)
    log_v = np.empty(cap, np.int32)
    log_h = np.empty(cap, np.int32)
    log_t = np.empty(cap, np.int32)
    log_c = np.empty(cap, np.int8)
    level_base = np.zeros(n + 1, np.int32)
    choice = np.empty(n + 1, np.int32)
    g = cot.shape[0]
    nodes = 0
    seen = 0
    target2 = 2 * f_target
    for mask in range(1 << g):
        nodes += 1
        if nodes > budget:
            return 2, nodes, seen
        for e in range(m):
            lam[e] = 1
        for i in range(g):
            if (mask >> i) & 1:
                lam[cot[i]] = -1
        for s in range(four_m):
            succ[s] = -1
            pred[s] = -1
            head_of[s] = s
            tail_of[s] = s
            len_of[s] = 1
        cp = 0
        oc = four_m
        s_open = four_m
        log_ptr = 0
        dp = 0
        choice[0] = -1
        while dp >= 0:
            choice[dp] += 1
            if choice[dp] >= pcnt[dp]:
                dp -= 1
                if dp >= 0:
                    while log_ptr > level_base[dp]:
                        log_ptr -= 1
                        uu = log_u[log_ptr]
                        vv = log_v[log_ptr]
                        succ[uu] = -1
                        pred[vv] = -1
                        if log_c[log_ptr] == 1:
                            cp -= 1
                            oc += 1
                            s_open += len_of[vv]
                        else:
                            hh = log_h[log_ptr]
                            tt = log_t[log_ptr]
                            oc += 1
                            len_of[hh] -= len_of[vv]
                            tail_of[hh] = uu
                            head_of[tt] = vv
                continue
            nodes += 1
            if nodes > budget:
                return 2, nodes, seen
            level_base[dp] = log_ptr
            deg = pdeg[dp]
            base = poff[dp] + choice[dp] * deg
            for i in range(deg):
                a = rot_data[base + i]
                j = i + 1
                if j == deg:
                    j = 0
                nxt[a] = rot_data[base + j]
                j = i - 1
                if j < 0:
                    j = deg - 1
                prv[a] = rot_data[base + j]
            for i in range(deg):
                a = rot_data[base + i]
                d = a ^ 1
                e = a >> 1
                for sbit in range(2):
                    u = 2 * d + sbit
                    if (sbit == 0) == (lam[e] == 1):
                        w = nxt[a]
                        vstate = 2 * w
                    else:
                        w = prv[a]
                        vstate = 2 * w + 1
                    h1 = head_of[u]
                    t2 = tail_of[vstate]
                    succ[u] = vstate
                    pred[vstate] = u
                    if h1 == vstate:
                        cp += 1
                        oc -= 1
                        s_open -= len_of[vstate]
                        log_c[log_ptr] = 1
                    else:
                        oc -= 1
                        len_of[h1] += len_of[vstate]
                        tail_of[h1] = t2
                        head_of[t2] = h1
                        log_c[log_ptr] = 0
                    log_u[log_ptr] = u
                    log_v[log_ptr] = vstate
                    log_h[log_ptr] = h1
                    log_t[log_ptr] = t2
                    log_ptr += 1
            open_max = s_open // girth_b
            if oc < open_max:
                open_max = oc
            bad = cp + open_max < target2
            if not bad and oc == 0 and cp != target2:
                bad = True
            if not bad and cp + (1 if oc > 0 else 0) > target2:
                bad = True
            done = dp == n - 1
            hit = False
            if done and not bad:
                if cp == target2 and oc == 0:
                    seen += 1
                    if seen > nth:
                        hit = True
            if hit:
                for p in range(n):
                    out_choice[p] = choice[p]
                out_mask[0] = mask
                return 1, nodes, seen
            if bad or done:
                while log_ptr > level_base[dp]:
                    log_ptr -= 1
                    uu = log_u[log_ptr]
                    vv = log_v[log_ptr]
                    succ[uu] = -1
                    pred[vv] = -1
                    if log_c[log_ptr] == 1:
                        cp -= 1
                        oc += 1
                        s_open += len_of[vv]
                    else:
                        hh = log_h[log_ptr]
                        tt = log_t[log_ptr]
                        oc += 1
                        len_of[hh] -= len_of[vv]
                        tail_of[hh] = uu
                        head_of[tt] = vv
                continue
            dp += 1
            choice[dp] = -1
    return 0, nodes, seen


try:  # compiled twin; the plain function stays as the reference fallback
    from numba import njit

    search_kernel_jit = njit(cache=True)(search_kernel)
except Exception:  # pragma: no cover - exercised only without numba
    search_kernel_jit = None
