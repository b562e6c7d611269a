"""Hot loops of the cyclotomic oracle.

Each kernel has a numba ``@njit`` implementation and a pure-numpy one.
The numba path is used when numba imports and ``CYCLOTRACE_DISABLE_NUMBA``
is unset (or ``0``); set it to ``1`` to force numpy.  All arithmetic is
int64 and exact; callers guard the magnitude bound.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        def decorator(func):
            return func

        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return decorator


def _env_disabled() -> bool:
    return os.environ.get("CYCLOTRACE_DISABLE_NUMBA", "0").strip().lower() not in ("", "0", "false", "no")


USE_NUMBA = NUMBA_AVAILABLE and not _env_disabled()
BACKEND = "numba" if USE_NUMBA else "numpy"

# rows*cols of the temporary index block in the numpy path
_BLOCK = 1 << 22


@njit(cache=True)
def _fiber_pair_traces_numba(units, labels, n, ram, f):
    T = np.zeros((n, n), dtype=np.int64)
    m = units.shape[0]
    for a in range(m):
        u = units[a]
        la = labels[a]
        for b in range(m):
            s = u + units[b]
            if s >= f:
                s -= f
            T[la, labels[b]] += ram[s]
    return T


def _fiber_pair_traces_numpy(units, labels, n, ram, f):
    order = np.argsort(labels, kind="stable")
    units = units[order]
    labels = labels[order]
    counts = np.bincount(labels, minlength=n)
    starts = np.concatenate(([0], np.cumsum(counts)[:-1]))
    T = np.zeros((n, n), dtype=np.int64)
    m = units.shape[0]
    rows_per_block = max(1, _BLOCK // max(m, 1))
    for i in range(n):
        fib = units[starts[i] : starts[i] + counts[i]]
        acc = np.zeros(m, dtype=np.int64)
        for lo in range(0, fib.shape[0], rows_per_block):
            idx = (fib[lo : lo + rows_per_block, None] + units[None, :]) % f
            acc += ram[idx].sum(axis=0)
        T[i] = np.add.reduceat(acc, starts) if m else 0
        T[i, counts == 0] = 0
    return T


def fiber_pair_traces(units, labels, n: int, ram, f: int, backend: str | None = None) -> np.ndarray:
    """``T[a, b] = sum over u in fiber a, v in fiber b of ram[(u + v) mod f]``.

    ``units`` are residues mod ``f``, ``labels`` their fiber indices in
    ``range(n)``, ``ram`` a length-``f`` int64 lookup table.
    """
    backend = backend or BACKEND
    units = np.ascontiguousarray(units, dtype=np.int64)
    labels = np.ascontiguousarray(labels, dtype=np.int64)
    ram = np.ascontiguousarray(ram, dtype=np.int64)
    if backend == "numba":
        if not NUMBA_AVAILABLE:
            raise RuntimeError("numba backend requested but numba is not importable")
        return _fiber_pair_traces_numba(units, labels, int(n), ram, int(f))
    if backend == "numpy":
        return _fiber_pair_traces_numpy(units, labels, int(n), ram, int(f))
    raise ValueError(f"unknown backend {backend!r}")
