"""Compiled depth-first generation core for brick configurations.

Connected placement sets are enumerated with the classic frontier discipline
(Wernicke's ESU / Redelmeier-style): when a frontier brick is consumed, the
new frontier receives only contact neighbours never offered before on the
current path, so every connected set containing the search root is visited
exactly once.  Collision-freeness is hereditary, so colliding pops prune
whole subtrees without losing any valid set.

Modes
-----
ORBITS        translation classes rooted at their least placement, counted
              only when the set is the least of its four rotation images
              (gives totals per size and per height).
ANCHORED      sets containing the fixed base brick, everything else in
              layers >= 1.
SINGLE_TOP    anchored sets whose top layer holds exactly one brick.
NO_BOTTLENECK single-top sets with no interior layer holding exactly one
              brick, searched with a layer-deficit lower bound that prunes
              branches which cannot be repaired within the brick budget.

All coordinates are kept small and packed into order-preserving int64 codes
``((z*xr + x+off)*xr + y+off)*2 + rot`` so that lexicographic comparisons on
codes equal comparisons on (z, x, y, rot) tuples.
"""

from __future__ import annotations

import numpy as np
from numba import njit, prange

from .geometry import BrickShape

MODE_ORBITS = 0
MODE_ANCHORED = 1
MODE_SINGLE_TOP = 2
MODE_NO_BOTTLENECK = 3

MAXN = 8  # highest supported brick count

# out-row layout
_NODES = 0
_ABORT = 1
_CNT0 = 2                    # counts for sizes 1..MAXN
_H0 = _CNT0 + MAXN           # by-height counts, (size-1)*MAXN + (m-1)
OUT_WIDTH = _H0 + MAXN * MAXN


def build_tables(shape: BrickShape) -> tuple[np.ndarray, np.ndarray, np.ndarray, int, int]:
    """Relative contact offsets (dx, dy, rot_q) per lower-brick orientation.

    Returns flat arrays with one segment of length L per lower orientation
    (one segment for square bricks) plus the largest absolute offset, used
    to size the coordinate range.
    """
    rots = (0,) if shape.square else (0, 1)
    dxs: list[int] = []
    dys: list[int] = []
    rqs: list[int] = []
    seg_len = None
    for rot_p in rots:
        pex, pey = (shape.w, shape.b) if rot_p == 0 else (shape.b, shape.w)
        count = 0
        for rot_q in rots:
            qex, qey = (shape.w, shape.b) if rot_q == 0 else (shape.b, shape.w)
            for dx in range(-qex + 1, pex):
                for dy in range(-qey + 1, pey):
                    dxs.append(dx)
                    dys.append(dy)
                    rqs.append(rot_q)
                    count += 1
        if seg_len is None:
            seg_len = count
        assert count == seg_len
    max_step = max(max(abs(v) for v in dxs), max(abs(v) for v in dys))
    return (np.asarray(dxs, np.int64), np.asarray(dys, np.int64),
            np.asarray(rqs, np.int64), seg_len, max_step)


@njit(cache=True)
def _norm_codes(k, px, py, pz, pr, out_codes, off2, xr2):
    # Translate so the lexicographically least (z, x, y, rot) placement is at
    # the origin, then pack.  Ties on (z, x, y) cannot occur between distinct
    # non-colliding placements.
    mi = 0
    for i in range(1, k):
        if (pz[i] < pz[mi]
                or (pz[i] == pz[mi]
                    and (px[i] < px[mi]
                         or (px[i] == px[mi] and py[i] < py[mi])))):
            mi = i
    mx = px[mi]
    my = py[mi]
    mz = pz[mi]
    for i in range(k):
        out_codes[i] = (((pz[i] - mz) * xr2 + (px[i] - mx + off2)) * xr2
                        + (py[i] - my + off2)) * 2 + pr[i]


@njit(cache=True)
def _isort(a, k):
    for i in range(1, k):
        v = a[i]
        j = i - 1
        while j >= 0 and a[j] > v:
            a[j + 1] = a[j]
            j -= 1
        a[j + 1] = v


@njit(cache=True)
def _is_canonical(k, px, py, pz, pr, tx, ty, tr, ac, bc, b, w, sq, off2, xr2):
    # True iff the set's normalized code sequence is <= those of its three
    # nontrivial rotation images.
    _norm_codes(k, px, py, pz, pr, ac, off2, xr2)
    _isort(ac, k)
    for q in range(1, 4):
        for i in range(k):
            x = px[i]
            y = py[i]
            r = pr[i]
            ex = w if r == 0 else b
            ey = b if r == 0 else w
            if q == 1:
                nx = -y - ey
                ny = x
                nr = 0 if sq else r ^ 1
            elif q == 2:
                nx = -x - ex
                ny = -y - ey
                nr = r
            else:
                nx = y
                ny = -x - ex
                nr = 0 if sq else r ^ 1
            tx[i] = nx
            ty[i] = ny
            tr[i] = nr
        _norm_codes(k, tx, ty, pz, tr, bc, off2, xr2)
        _isort(bc, k)
        for i in range(k):
            if bc[i] < ac[i]:
                return False
            if bc[i] > ac[i]:
                break
    return True


@njit(cache=True)
def _masks(mode, occ, maxz, nmax_t, cursize):
    """Per-layer count/descend admissibility bitmasks for the next brick.

    For the predicate modes a brick added at layer z yields a countable set
    iff the top layer stays single (and, for NO_BOTTLENECK, every interior
    layer keeps at least two bricks); descending stays admissible iff the
    remaining brick budget covers the layer-deficit lower bound.
    """
    if mode <= MODE_ANCHORED:
        return np.int64(-1), np.int64(-1)
    cm = np.int64(0)
    dm = np.int64(0)
    rem = nmax_t - cursize - 1
    for z in range(1, maxz + 2):
        # count bit
        if z == maxz + 1:
            ok = True
            if mode == MODE_NO_BOTTLENECK:
                for y in range(1, maxz + 1):
                    if occ[y] < 2:
                        ok = False
                        break
        elif z == maxz:
            ok = False
        else:
            ok = occ[maxz] == 1
            if ok and mode == MODE_NO_BOTTLENECK:
                for y in range(1, maxz):
                    if y != z and occ[y] < 2:
                        ok = False
                        break
        if ok:
            cm |= np.int64(1) << z
        # descend bit
        if rem > 0:
            mz2 = maxz if z <= maxz else z
            need = 0
            if mode == MODE_NO_BOTTLENECK:
                for y in range(1, mz2):
                    o = occ[y] + (1 if y == z else 0)
                    if o < 2:
                        need += 2 - o
            otop = occ[mz2] + (1 if z == mz2 else 0)
            if otop != 1:
                need += 1
            if need <= rem:
                dm |= np.int64(1) << z
    return cm, dm


@njit(cache=True)
def _run_task(root_rot, i1, i2, nmax_t, count_min,
              mode, nmax, b, w, sq, nb_dx, nb_dy, nb_rot, L,
              off, xr, off2, xr2, zmin_cand, max_nodes,
              out, collecting, cbuf, cofs):
    N = nmax
    seen = np.zeros(N * xr * xr * 2, np.uint8)
    Sx = np.empty(N, np.int64)
    Sy = np.empty(N, np.int64)
    Sz = np.empty(N, np.int64)
    Sr = np.empty(N, np.int64)
    occ = np.zeros(N + 2, np.int64)
    cap = (N + 1) * (2 * L + 4) + 16
    cand = np.empty(cap, np.int64)
    undo = np.empty(cap + 8, np.int64)
    lo = np.empty(N + 1, np.int64)
    hi = np.empty(N + 1, np.int64)
    ptr = np.empty(N + 1, np.int64)
    lim = np.empty(N + 1, np.int64)
    ulo = np.empty(N + 1, np.int64)
    uhi = np.empty(N + 1, np.int64)
    maxzs = np.empty(N + 1, np.int64)
    cmasks = np.empty(N + 1, np.int64)
    dmasks = np.empty(N + 1, np.int64)
    wx = np.empty(N + 1, np.int64)
    wy = np.empty(N + 1, np.int64)
    wz = np.empty(N + 1, np.int64)
    wr = np.empty(N + 1, np.int64)
    tx = np.empty(N + 1, np.int64)
    ty = np.empty(N + 1, np.int64)
    tr = np.empty(N + 1, np.int64)
    ac = np.empty(N + 1, np.int64)
    bc = np.empty(N + 1, np.int64)

    nodes = np.int64(0)
    ccur = cofs

    root_code = (off * xr + off) * 2 + root_rot
    Sx[0] = 0
    Sy[0] = 0
    Sz[0] = 0
    Sr[0] = root_rot
    occ[0] = 1
    maxzs[0] = 0
    seen[root_code] = 1

    if i1 == -1:
        # dedicated size-1 task
        counted = True
        if mode == MODE_ORBITS:
            wx[0] = 0
            wy[0] = 0
            wz[0] = 0
            wr[0] = root_rot
            counted = _is_canonical(1, wx, wy, wz, wr, tx, ty, tr, ac, bc,
                                    b, w, sq, off2, xr2)
        if counted:
            out[_CNT0] += 1
            if mode == MODE_ORBITS:
                out[_H0] += 1
        out[_NODES] += 1
        return

    # offers from the root
    k0 = 0
    seg = root_rot * L
    for dzi in range(2):
        z2 = 1 if dzi == 0 else -1
        if z2 < zmin_cand or z2 >= N:
            continue
        for t in range(L):
            code = ((z2 * xr + (nb_dx[seg + t] + off)) * xr
                    + (nb_dy[seg + t] + off)) * 2 + nb_rot[seg + t]
            if mode == MODE_ORBITS and code <= root_code:
                continue
            if seen[code]:
                continue
            seen[code] = 1
            undo[k0] = code
            cand[k0] = code
            k0 += 1

    if i1 >= k0:
        return
    lo[0] = 0
    hi[0] = k0
    ulo[0] = 0
    uhi[0] = k0
    ptr[0] = i1
    lim[0] = i1 + 1
    cm, dm = _masks(mode, occ, 0, nmax_t, 1)
    cmasks[0] = cm
    dmasks[0] = dm
    utop = k0
    d = 0

    while True:
        if ptr[d] >= lim[d]:
            if d == 0:
                break
            for t in range(ulo[d], uhi[d]):
                seen[undo[t]] = 0
            utop = ulo[d]
            occ[Sz[d]] -= 1
            d -= 1
            continue
        idx = ptr[d]
        ptr[d] += 1
        code = cand[idx]
        nodes += 1
        if nodes > max_nodes:
            out[_ABORT] = 1
            break
        rot = code & 1
        rem_ = code >> 1
        yy = rem_ % xr - off
        rem_ //= xr
        xx = rem_ % xr - off
        zz = rem_ // xr
        zbit = np.int64(1) << zz
        sz = d + 2
        do_count = (cmasks[d] & zbit) != 0 and sz >= count_min
        do_descend = sz < nmax_t and (dmasks[d] & zbit) != 0
        if not (do_count or do_descend):
            continue
        ex = w if rot == 0 else b
        ey = b if rot == 0 else w
        ok = True
        for q2 in range(d + 1):
            if Sz[q2] == zz:
                qex = w if Sr[q2] == 0 else b
                qey = b if Sr[q2] == 0 else w
                if (xx < Sx[q2] + qex and Sx[q2] < xx + ex
                        and yy < Sy[q2] + qey and Sy[q2] < yy + ey):
                    ok = False
                    break
        if not ok:
            continue
        nz = maxzs[d]
        if zz > nz:
            nz = zz
        if do_count:
            if mode == MODE_ORBITS:
                for q2 in range(d + 1):
                    wx[q2] = Sx[q2]
                    wy[q2] = Sy[q2]
                    wz[q2] = Sz[q2]
                    wr[q2] = Sr[q2]
                wx[d + 1] = xx
                wy[d + 1] = yy
                wz[d + 1] = zz
                wr[d + 1] = rot
                if _is_canonical(sz, wx, wy, wz, wr, tx, ty, tr, ac, bc,
                                 b, w, sq, off2, xr2):
                    out[_CNT0 + sz - 1] += 1
                    out[_H0 + (sz - 1) * MAXN + nz] += 1
            else:
                out[_CNT0 + sz - 1] += 1
                if collecting and sz == nmax:
                    base = ccur * sz * 4
                    for q2 in range(d + 1):
                        cbuf[base + 4 * q2] = Sx[q2] + 100
                        cbuf[base + 4 * q2 + 1] = Sy[q2] + 100
                        cbuf[base + 4 * q2 + 2] = Sz[q2]
                        cbuf[base + 4 * q2 + 3] = Sr[q2]
                    cbuf[base + 4 * sz - 4] = xx + 100
                    cbuf[base + 4 * sz - 3] = yy + 100
                    cbuf[base + 4 * sz - 2] = zz
                    cbuf[base + 4 * sz - 1] = rot
                    ccur += 1
        if do_descend:
            d += 1
            Sx[d] = xx
            Sy[d] = yy
            Sz[d] = zz
            Sr[d] = rot
            occ[zz] += 1
            maxzs[d] = nz
            ulo[d] = utop
            newc = 0
            seg2 = rot * L
            for dzi in range(2):
                z2 = zz + (1 if dzi == 0 else -1)
                if z2 < zmin_cand or z2 >= N:
                    continue
                for t in range(L):
                    code2 = ((z2 * xr + (xx + nb_dx[seg2 + t] + off)) * xr
                             + (yy + nb_dy[seg2 + t] + off)) * 2 + nb_rot[seg2 + t]
                    if mode == MODE_ORBITS and code2 <= root_code:
                        continue
                    if seen[code2]:
                        continue
                    seen[code2] = 1
                    undo[utop] = code2
                    utop += 1
                    cand[hi[d - 1] + newc] = code2
                    newc += 1
            uhi[d] = utop
            lo[d] = ptr[d - 1]
            hi[d] = hi[d - 1] + newc
            ptr[d] = lo[d]
            lim[d] = hi[d]
            if d == 1 and i2 >= 0:
                p2 = lo[1] + i2
                if p2 >= hi[1]:
                    ptr[d] = hi[d]
                else:
                    ptr[d] = p2
                    lim[d] = p2 + 1
            cm, dm = _masks(mode, occ, nz, nmax_t, d + 1)
            cmasks[d] = cm
            dmasks[d] = dm

    out[_NODES] += nodes


@njit(cache=True, parallel=True)
def _run_tasks(tasks, mode, nmax, b, w, sq, nb_dx, nb_dy, nb_rot, L,
               off, xr, off2, xr2, zmin_cand, max_nodes,
               out, collecting, cbuf, cofs):
    for t in prange(tasks.shape[0]):
        _run_task(tasks[t, 0], tasks[t, 1], tasks[t, 2], tasks[t, 3], tasks[t, 4],
                  mode, nmax, b, w, sq, nb_dx, nb_dy, nb_rot, L,
                  off, xr, off2, xr2, zmin_cand, max_nodes,
                  out[t], collecting, cbuf, cofs[t])


def make_tasks(shape: BrickShape, nmax: int, mode: int) -> np.ndarray:
    """Deterministic task list: (root_rot, i1, i2, nmax_t, count_min) rows.

    Splitting happens at depth 1 for small jobs and depth 2 for large ones;
    results are exact-integer sums over tasks, so any worker count yields
    identical totals.
    """
    L = build_tables(shape)[3]
    roots = [0, 1] if (mode == MODE_ORBITS and not shape.square) else [0]
    rows: list[tuple[int, int, int, int, int]] = []
    for r in roots:
        rows.append((r, -1, -1, nmax, 1))
    if nmax == 1:
        return np.asarray(rows, np.int64).reshape(-1, 5)
    if nmax <= 4:
        for r in roots:
            for i in range(L):
                rows.append((r, i, -1, nmax, 2))
    else:
        for r in roots:
            for i in range(L):
                rows.append((r, i, -2, 2, 2))
                for j in range((L - i - 1) + 2 * L):
                    rows.append((r, i, j, nmax, 3))
    return np.asarray(rows, np.int64).reshape(-1, 5)


def kernel_params(shape: BrickShape, nmax: int) -> dict:
    nb_dx, nb_dy, nb_rot, L, max_step = build_tables(shape)
    if not 1 <= nmax <= MAXN - 1:
        raise ValueError(f"brick count must be in 1..{MAXN - 1}")
    off = nmax * max_step + 2
    xr = 2 * off
    off2 = 2 * off + 2 * max(shape.b, shape.w) + 4
    xr2 = 2 * off2
    return dict(nb_dx=nb_dx, nb_dy=nb_dy, nb_rot=nb_rot, L=L,
                off=off, xr=xr, off2=off2, xr2=xr2)
