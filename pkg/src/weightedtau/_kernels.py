"""Compiled inner loops of the engine.

Every kernel works on arrays that are already laid out in list order: entry
``p`` of ``keys``, ``fw`` and ``gw`` belong to the item at position ``p``.
``fw``/``gw`` hold the left/right weight of that item's rank.  Lists are
sorted in decreasing key order.
"""

import numba
import numpy as np

_jit = numba.njit(cache=True, nogil=True)


_MAX_DEPTH = 128


@_jit
def _merge(keys, fw, gw, idx, tk, tf, tg, ti, start, l0, l1, residual, mult):
    """Merge two adjacent sorted sublists; return the weight of the exchanges."""
    mid = start + l0
    e = 0.0
    i = 0
    j = 0
    k = 0
    while j < l0 and k < l1:
        # the second sublist wins only when its key is strictly larger
        if keys[mid + k] > keys[start + j]:
            q = mid + k
            k += 1
            if mult:
                e += gw[q] * residual
            else:
                e += gw[q] * (l0 - j) + residual
        else:
            q = start + j
            j += 1
            residual -= fw[q]
        tk[i] = keys[q]
        tf[i] = fw[q]
        tg[i] = gw[q]
        ti[i] = idx[q]
        i += 1

    for p in range(l0 - j - 1, -1, -1):
        keys[start + i + p] = keys[start + j + p]
        fw[start + i + p] = fw[start + j + p]
        gw[start + i + p] = gw[start + j + p]
        idx[start + i + p] = idx[start + j + p]
    for p in range(i):
        keys[start + p] = tk[p]
        fw[start + p] = tf[p]
        gw[start + p] = tg[p]
        idx[start + p] = ti[p]
    return e


@_jit
def exchange_weight(keys, fw, gw, idx, mult):
    """Stably sort all four arrays by decreasing key; return the exchange weight.

    Top-down merge sort splitting each sublist of length ``l`` into
    ``l // 2`` and ``l - l // 2`` items, driven by an explicit stack instead of
    recursion.  The residual of a merge is the ``fw`` sum of its first
    sublist, which the finished child returns on the value stack.
    """
    n = keys.shape[0]
    if n < 2:
        return 0.0
    tk = np.empty(n, dtype=keys.dtype)
    tf = np.empty(n, dtype=fw.dtype)
    tg = np.empty(n, dtype=gw.dtype)
    ti = np.empty(n, dtype=idx.dtype)
    f_start = np.empty(_MAX_DEPTH, dtype=np.int64)
    f_len = np.empty(_MAX_DEPTH, dtype=np.int64)
    f_phase = np.empty(_MAX_DEPTH, dtype=np.int64)
    sums = np.empty(_MAX_DEPTH, dtype=np.float64)
    top = 0
    nsums = 0
    f_start[0] = 0
    f_len[0] = n
    f_phase[0] = 0
    top = 1
    e = 0.0
    while top > 0:
        s = f_start[top - 1]
        length = f_len[top - 1]
        if length == 1:
            top -= 1
            sums[nsums] = fw[s]
            nsums += 1
            continue
        l0 = length // 2
        phase = f_phase[top - 1]
        if phase == 0:
            f_phase[top - 1] = 1
            f_start[top] = s
            f_len[top] = l0
            f_phase[top] = 0
            top += 1
        elif phase == 1:
            f_phase[top - 1] = 2
            f_start[top] = s + l0
            f_len[top] = length - l0
            f_phase[top] = 0
            top += 1
        else:
            top -= 1
            second = sums[nsums - 1]
            first = sums[nsums - 2]
            nsums -= 2
            e += _merge(keys, fw, gw, idx, tk, tf, tg, ti, s, l0, length - l0, first, mult)
            sums[nsums] = first + second
            nsums += 1
    return e


@_jit
def _merge_ap(keys, ranks, tk, tr, start, l0, l1):
    mid = start + l0
    e = 0.0
    i = 0
    j = 0
    k = 0
    while j < l0 and k < l1:
        if keys[mid + k] > keys[start + j]:
            q = mid + k
            k += 1
            e += (l0 - j) / ranks[q]
        else:
            q = start + j
            j += 1
        tk[i] = keys[q]
        tr[i] = ranks[q]
        i += 1

    for p in range(l0 - j - 1, -1, -1):
        keys[start + i + p] = keys[start + j + p]
        ranks[start + i + p] = ranks[start + j + p]
    for p in range(i):
        keys[start + p] = tk[p]
        ranks[start + p] = tr[p]
    return e


@_jit
def ap_exchange_weight(keys, ranks):
    """Exchange weight when only the worse end of a pair weighs, as ``1/rank``.

    No residual is needed, so the traversal keeps no value stack.
    """
    n = keys.shape[0]
    if n < 2:
        return 0.0
    tk = np.empty(n, dtype=keys.dtype)
    tr = np.empty(n, dtype=ranks.dtype)
    f_start = np.empty(_MAX_DEPTH, dtype=np.int64)
    f_len = np.empty(_MAX_DEPTH, dtype=np.int64)
    f_phase = np.empty(_MAX_DEPTH, dtype=np.int64)
    f_start[0] = 0
    f_len[0] = n
    f_phase[0] = 0
    top = 1
    e = 0.0
    while top > 0:
        s = f_start[top - 1]
        length = f_len[top - 1]
        if length == 1:
            top -= 1
            continue
        l0 = length // 2
        phase = f_phase[top - 1]
        if phase == 0:
            f_phase[top - 1] = 1
            f_start[top] = s
            f_len[top] = l0
            f_phase[top] = 0
            top += 1
        elif phase == 1:
            f_phase[top - 1] = 2
            f_start[top] = s + l0
            f_len[top] = length - l0
            f_phase[top] = 0
            top += 1
        else:
            top -= 1
            e += _merge_ap(keys, ranks, tk, tr, s, l0, length - l0)
    return e


@_jit
def total_weight(fw, gw, mult):
    """Weight of all pairs of the list, taking list order as rank order."""
    acc = 0.0
    before = 0.0
    for p in range(fw.shape[0]):
        if p > 0:
            if mult:
                acc += gw[p] * before
            else:
                acc += before + p * gw[p]
        before += fw[p]
    return acc


@_jit
def tie_weights(k1, k2, fw, gw, mult):
    """Weight of pairs inside runs of equal ``k1`` and of equal ``(k1, k2)``.

    Both accumulations follow exactly the arithmetic of :func:`total_weight`,
    so a single run spanning the whole list reproduces it bit for bit.
    """
    outer = 0.0
    inner = 0.0
    before_o = 0.0
    before_i = 0.0
    pos_o = 0
    pos_i = 0
    for p in range(k1.shape[0]):
        if p > 0 and k1[p] != k1[p - 1]:
            before_o = 0.0
            pos_o = 0
            before_i = 0.0
            pos_i = 0
        elif p > 0 and k2[p] != k2[p - 1]:
            before_i = 0.0
            pos_i = 0
        if pos_o > 0:
            if mult:
                outer += gw[p] * before_o
            else:
                outer += before_o + pos_o * gw[p]
        if pos_i > 0:
            if mult:
                inner += gw[p] * before_i
            else:
                inner += before_i + pos_i * gw[p]
        before_o += fw[p]
        before_i += fw[p]
        pos_o += 1
        pos_i += 1
    return outer, inner


@_jit
def _before(a1, b1, a2, b2):
    # strictly earlier in decreasing lexicographic order
    return a1 > a2 or (a1 == a2 and b1 > b2)


@_jit
def lex_order(a, b):
    """Indices sorting ``(a, b)`` by decreasing value, stably, as ``int64``.

    Bottom-up merge sort over key copies, seeded with insertion-sorted runs.
    """
    n = a.shape[0]
    ka = a.copy()
    kb = b.copy()
    ki = np.arange(n)
    run = 16
    for lo in range(0, n, run):
        hi = min(lo + run, n)
        for p in range(lo + 1, hi):
            xa = ka[p]
            xb = kb[p]
            xi = ki[p]
            q = p - 1
            while q >= lo and _before(xa, xb, ka[q], kb[q]):
                ka[q + 1] = ka[q]
                kb[q + 1] = kb[q]
                ki[q + 1] = ki[q]
                q -= 1
            ka[q + 1] = xa
            kb[q + 1] = xb
            ki[q + 1] = xi
    ta = np.empty_like(ka)
    tb = np.empty_like(kb)
    tix = np.empty_like(ki)
    width = run
    while width < n:
        for lo in range(0, n, 2 * width):
            mid = min(lo + width, n)
            hi = min(lo + 2 * width, n)
            i = lo
            j = mid
            k = lo
            while i < mid and j < hi:
                if _before(ka[j], kb[j], ka[i], kb[i]):
                    ta[k] = ka[j]
                    tb[k] = kb[j]
                    tix[k] = ki[j]
                    j += 1
                else:
                    ta[k] = ka[i]
                    tb[k] = kb[i]
                    tix[k] = ki[i]
                    i += 1
                k += 1
            while i < mid:
                ta[k] = ka[i]
                tb[k] = kb[i]
                tix[k] = ki[i]
                i += 1
                k += 1
            while j < hi:
                ta[k] = ka[j]
                tb[k] = kb[j]
                tix[k] = ki[j]
                j += 1
                k += 1
        ka, ta = ta, ka
        kb, tb = tb, kb
        ki, tix = tix, ki
        width *= 2
    return ki
