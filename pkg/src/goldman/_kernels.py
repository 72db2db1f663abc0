"""Ball scan: find every reduced word ``g`` with ``g . axis(y)`` crossing ``axis(x)``.

Both implementations walk the Cayley tree of the free group up to a radius,
carrying ``K rho(g)`` where ``K`` is the frame of ``axis(x)``.  A translated
axis of ``y`` crosses the imaginary axis iff its two endpoints have opposite
signs, so each node costs one 2x2 product and a sign test.

Set ``GOLDMAN_DISABLE_NUMBA=1`` to force the numpy path.  The numba path runs
the depth-2 subtrees in parallel; ``GOLDMAN_NUM_THREADS`` caps the threads.
"""

from __future__ import annotations

import math
import os

import numpy as np

_EPS = 1e-13

USE_NUMBA = os.environ.get("GOLDMAN_DISABLE_NUMBA", "").strip().lower() not in ("1", "true", "yes")

if USE_NUMBA:
    try:
        import numba
        from numba import njit, prange
    except ImportError:  # pragma: no cover
        USE_NUMBA = False

if USE_NUMBA:
    _threads = os.environ.get("GOLDMAN_NUM_THREADS")
    if _threads:
        numba.set_num_threads(max(1, min(int(_threads), numba.config.NUMBA_NUM_THREADS)))

    @njit(cache=True, inline="always")
    def _test(p00, p01, p10, p11, ey):
        # Returns (hit, s, phi, sign) for the geodesic K g . axis(y).
        u0 = p00 * ey[0, 0] + p01 * ey[1, 0]
        v0 = p10 * ey[0, 0] + p11 * ey[1, 0]
        u1 = p00 * ey[0, 1] + p01 * ey[1, 1]
        v1 = p10 * ey[0, 1] + p11 * ey[1, 1]
        n0 = math.hypot(u0, v0)
        n1 = math.hypot(u1, v1)
        if (abs(u0) <= _EPS * n0 or abs(v0) <= _EPS * n0
                or abs(u1) <= _EPS * n1 or abs(v1) <= _EPS * n1):
            return False, 0.0, 0.0, 0
        x0 = u0 / v0
        x1 = u1 / v1
        pr = x0 * x1
        if pr >= 0.0:
            return False, 0.0, 0.0, 0
        h = math.sqrt(-pr)
        phi = math.atan2(2.0 * h / abs(x1 - x0), (x0 + x1) / (x1 - x0))
        sign = 1 if x1 < x0 else -1
        return True, 0.5 * math.log(-pr), phi, sign

    @njit(cache=True)
    def _dfs(start, first, radius, gens, ey, words, lens, s_out, phi_out, sign_out):
        # Depth-first walk below a depth-2 node; start is K rho(first word).
        cap = words.shape[0]
        n = 0
        overflow = False
        stack = np.empty((radius + 1, 4))
        letter = np.empty(radius + 1, np.int64)
        nxt = np.zeros(radius + 1, np.int64)
        stack[2, 0] = start[0, 0]
        stack[2, 1] = start[0, 1]
        stack[2, 2] = start[1, 0]
        stack[2, 3] = start[1, 1]
        letter[0] = first[0]
        letter[1] = first[1]
        depth = 2
        nxt[2] = -1
        while depth >= 2:
            if nxt[depth] == -1:
                hit, s, phi, sg = _test(stack[depth, 0], stack[depth, 1], stack[depth, 2], stack[depth, 3], ey)
                if hit:
                    if n < cap:
                        for k in range(depth):
                            words[n, k] = letter[k]
                        lens[n] = depth
                        s_out[n] = s
                        phi_out[n] = phi
                        sign_out[n] = sg
                        n += 1
                    else:
                        overflow = True
                nxt[depth] = 0
            if depth == radius or nxt[depth] >= 4:
                depth -= 1
                continue
            c = nxt[depth]
            nxt[depth] += 1
            if c == (letter[depth - 1] ^ 1):
                continue
            g = gens[c]
            a, b, cc, d = stack[depth, 0], stack[depth, 1], stack[depth, 2], stack[depth, 3]
            stack[depth + 1, 0] = a * g[0, 0] + b * g[1, 0]
            stack[depth + 1, 1] = a * g[0, 1] + b * g[1, 1]
            stack[depth + 1, 2] = cc * g[0, 0] + d * g[1, 0]
            stack[depth + 1, 3] = cc * g[0, 1] + d * g[1, 1]
            letter[depth] = c
            depth += 1
            nxt[depth] = -1
        return n, overflow

    @njit(cache=True, parallel=True)
    def _scan_numba(K, gens, ey, radius, cap, roots, firsts, words, lens, s_out, phi_out, sign_out, counts, over):
        for t in prange(roots.shape[0]):
            n, ov = _dfs(roots[t], firsts[t], radius, gens, ey,
                         words[t], lens[t], s_out[t], phi_out[t], sign_out[t])
            counts[t] = n
            over[t] = ov


def _test_np(P, ey):
    F = P @ ey
    u0, v0, u1, v1 = F[:, 0, 0], F[:, 1, 0], F[:, 0, 1], F[:, 1, 1]
    n0 = np.hypot(u0, v0)
    n1 = np.hypot(u1, v1)
    ok = ((np.abs(u0) > _EPS * n0) & (np.abs(v0) > _EPS * n0)
          & (np.abs(u1) > _EPS * n1) & (np.abs(v1) > _EPS * n1))
    with np.errstate(divide="ignore", invalid="ignore"):
        x0 = u0 / v0
        x1 = u1 / v1
        pr = x0 * x1
        hit = ok & (pr < 0)
        x0, x1, pr = x0[hit], x1[hit], pr[hit]
        h = np.sqrt(-pr)
        phi = np.arctan2(2.0 * h / np.abs(x1 - x0), (x0 + x1) / (x1 - x0))
    sign = np.where(x1 < x0, 1, -1)
    return np.nonzero(hit)[0], 0.5 * np.log(-pr), phi, sign


def _scan_numpy(K, gens, ey, radius):
    # Level-by-level breadth-first walk, keeping parent pointers per level.
    P = K[None, :, :].copy()
    last = np.array([-1])
    parents, letters = [np.array([-1])], [np.array([-1])]
    hits = []
    for depth in range(radius + 1):
        idx, s, phi, sign = _test_np(P, ey)
        for i, si, pi, gi in zip(idx, s, phi, sign):
            hits.append((depth, int(i), float(si), float(pi), int(gi)))
        if depth == radius:
            break
        newP, newlast, newpar = [], [], []
        for c in range(4):
            keep = np.nonzero(last != (c ^ 1))[0] if depth > 0 else np.array([0])
            newP.append(P[keep] @ gens[c])
            newlast.append(np.full(len(keep), c))
            newpar.append(keep)
        P = np.concatenate(newP)
        last = np.concatenate(newlast)
        parents.append(np.concatenate(newpar))
        letters.append(last)
    out = []
    for depth, i, s, phi, sign in hits:
        word = []
        d, j = depth, i
        while d > 0:
            word.append(int(letters[d][j]))
            j = int(parents[d][j])
            d -= 1
        out.append((tuple(reversed(word)), s, phi, sign))
    return out


_SUBTREES = None


def _depth2():
    global _SUBTREES
    if _SUBTREES is None:
        _SUBTREES = np.array([(c1, c2) for c1 in range(4) for c2 in range(4) if c2 != (c1 ^ 1)], dtype=np.int64)
    return _SUBTREES


def scan_ball(K: np.ndarray, gens: np.ndarray, ey: np.ndarray, radius: int, use_numba: bool | None = None):
    """Crossings of ``axis(x)`` with ``g . axis(y)`` for all reduced ``|g| <= radius``.

    ``K`` is the frame matrix of ``axis(x)``, ``gens`` the four generator
    matrices in letter order ``a, A, b, B`` and ``ey`` holds the homogeneous
    source and target of ``axis(y)`` as columns.  Returns a list of
    ``(letters, s, phi, sign)`` with ``letters`` a tuple of letter indices and
    ``s`` the signed height ``log|crossing|`` in the frame.
    """
    K = np.ascontiguousarray(K, dtype=np.float64)
    gens = np.ascontiguousarray(gens, dtype=np.float64)
    ey = np.ascontiguousarray(ey, dtype=np.float64)
    # The env flag wins over an explicit request.
    use_numba = USE_NUMBA if use_numba is None else (use_numba and USE_NUMBA)
    if not use_numba or radius < 2:
        return _scan_numpy(K, gens, ey, radius)

    out = []
    # Depth 0 and 1 are tested here; the kernel starts at depth 2.
    for word, P in [((), K)] + [((c,), K @ gens[c]) for c in range(4)]:
        hit, s, phi, sign = _test(P[0, 0], P[0, 1], P[1, 0], P[1, 1], ey)
        if hit and len(word) <= radius:
            out.append((word, s, phi, sign))
    firsts = _depth2()
    roots = np.einsum("ij,njk,nkl->nil", K, gens[firsts[:, 0]], gens[firsts[:, 1]])
    cap = 256
    nt = len(firsts)
    while True:
        words = np.empty((nt, cap, radius), np.int64)
        lens = np.empty((nt, cap), np.int64)
        s_out = np.empty((nt, cap))
        phi_out = np.empty((nt, cap))
        sign_out = np.empty((nt, cap), np.int64)
        counts = np.zeros(nt, np.int64)
        over = np.zeros(nt, np.bool_)
        _scan_numba(K, gens, ey, radius, cap, roots, firsts, words, lens, s_out, phi_out, sign_out, counts, over)
        if not over.any():
            break
        cap *= 4
    for t in range(nt):
        for j in range(counts[t]):
            out.append((tuple(words[t, j, :lens[t, j]].tolist()),
                        float(s_out[t, j]), float(phi_out[t, j]), int(sign_out[t, j])))
    return out


def warmup():
    """Compile the numba kernels on a tiny input."""
    if USE_NUMBA:
        g = np.stack([np.diag([2.0, 0.5]), np.diag([0.5, 2.0]), np.eye(2), np.eye(2)])
        scan_ball(np.eye(2), g, np.array([[1.0, -1.0], [1.0, 1.0]]), 3)
