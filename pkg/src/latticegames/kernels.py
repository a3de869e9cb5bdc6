"""Dense bottom-up outcome kernels.

Positions inside a bounded region are processed in increasing order of their
pairing with the pointedness functional phi; every legal move strictly
decreases that pairing, so all options of a cell are finished before the cell
itself is reached.  Outcome codes: 0 unvisited, 1 P, 2 N, 3 defeated.

Two interchangeable backends compute the sweep: a numba @njit kernel and a
pure-numpy level-batched one.  They produce bit-identical arrays.  The numba
path is the default when importable; set LATTICEGAMES_NO_NUMBA=1 to force the
numpy path.  benchmarks/solver_bench.py compares the two.
"""

from __future__ import annotations

import os

import numpy as np

CODE_UNSEEN = 0
CODE_P = 1
CODE_N = 2
CODE_DEFEATED = 3

_FORCE_NUMPY = os.environ.get("LATTICEGAMES_NO_NUMBA", "") not in ("", "0")

if not _FORCE_NUMPY:
    try:
        from numba import njit

        HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - exercised only without numba
        HAVE_NUMBA = False
else:
    HAVE_NUMBA = False

if HAVE_NUMBA:

    @njit(cache=True)
    def _sweep_numba(order, coords, moves, offsets, out, defeated):
        n_moves = moves.shape[0]
        d = coords.shape[1]
        has_defeated = defeated.size > 0
        for i in range(order.size):
            f = order[i]
            if has_defeated and defeated[f]:
                out[f] = 3
                continue
            res = np.uint8(1)
            for mi in range(n_moves):
                legal = True
                for k in range(d):
                    if coords[i, k] < moves[mi, k]:
                        legal = False
                        break
                if not legal:
                    continue
                if out[f - offsets[mi]] == 1:
                    res = np.uint8(2)
                    break
            out[f] = res


def _sweep_numpy(order, coords, levels, moves, offsets, out, defeated):
    has_defeated = defeated.size > 0
    # cells of equal level are independent: options sit at strictly lower
    # levels, so each level batch is resolved with vectorised gathers
    starts = np.flatnonzero(np.diff(levels)) + 1
    starts = np.concatenate(([0], starts, [levels.size]))
    for bi in range(starts.size - 1):
        a, b = starts[bi], starts[bi + 1]
        f = order[a:b]
        c = coords[a:b]
        any_p = np.zeros(b - a, dtype=bool)
        for mi in range(moves.shape[0]):
            legal = (c >= moves[mi]).all(axis=1)
            q = np.where(legal, f - offsets[mi], 0)
            any_p |= legal & (out[q] == 1)
        res = np.where(any_p, 2, 1).astype(np.uint8)
        if has_defeated:
            dead = defeated[f].astype(bool)
            res[dead] = 3
        out[f] = res


def pick_backend(backend=None) -> str:
    if backend is None:
        return "numba" if HAVE_NUMBA else "numpy"
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is unavailable")
    return backend


def solve_region(moves, phi, level_cap, axis_caps, defeated_mask=None, backend=None):
    """Solve every cell p with 0 <= p <= axis_caps and phi . p <= level_cap.

    moves: (n, d) int array; phi: length-d positive int array with
    phi . move >= 1 for every move.  Returns the uint8 outcome array of shape
    axis_caps + 1; cells outside the level cap stay CODE_UNSEEN.
    """
    moves = np.asarray(moves, dtype=np.int64)
    phi = np.asarray(phi, dtype=np.int64)
    d = phi.size
    shape = tuple(int(c) + 1 for c in axis_caps)
    cells = 1
    for s in shape:
        cells *= s
    if cells > 2**31 or int(level_cap) > 2**40:
        raise ValueError(
            f"solve region of {cells} cells (level cap {level_cap}) exceeds the "
            "exact-arithmetic desk scale this kernel is sized for"
        )

    levels = np.zeros(shape, dtype=np.int64)
    for k in range(d):
        axis_shape = [1] * d
        axis_shape[k] = shape[k]
        levels += phi[k] * np.arange(shape[k], dtype=np.int64).reshape(axis_shape)

    flat_levels = levels.reshape(-1)
    order = np.flatnonzero(flat_levels <= level_cap)
    lv = flat_levels[order]
    perm = np.argsort(lv, kind="stable")  # (level, flat index) lexicographic
    order = order[perm]
    lv = lv[perm]
    coords = np.stack(np.unravel_index(order, shape), axis=1).astype(np.int64)

    strides = np.empty(d, dtype=np.int64)
    acc = 1
    for k in range(d - 1, -1, -1):
        strides[k] = acc
        acc *= shape[k]
    offsets = moves @ strides

    out = np.zeros(acc, dtype=np.uint8)
    if defeated_mask is not None:
        defeated = np.ascontiguousarray(defeated_mask.reshape(-1).astype(np.uint8))
    else:
        defeated = np.zeros(0, dtype=np.uint8)

    chosen = pick_backend(backend)
    if chosen == "numba":
        _sweep_numba(order, coords, moves, offsets, out, defeated)
    else:
        _sweep_numpy(order, coords, lv, moves, offsets, out, defeated)
    return out.reshape(shape)
