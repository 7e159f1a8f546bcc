"""Order-preserving map over a process pool, with a serial fallback."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor


def default_jobs() -> int:
    return os.cpu_count() or 1


def pmap(func, items, jobs=1, initializer=None, initargs=(), progress=None):
    """``[func(x) for x in items]``, optionally spread over ``jobs`` processes.

    ``initializer(*initargs)`` runs once per worker (and once in-process for
    the serial path). ``progress(done, total)`` is called as results arrive.
    """
    items = list(items)
    total = len(items)
    out = []
    if jobs is None:
        jobs = default_jobs()
    if jobs <= 1 or total < 2:
        if initializer is not None:
            initializer(*initargs)
        for x in items:
            out.append(func(x))
            if progress is not None:
                progress(len(out), total)
        return out
    chunk = max(1, total // (jobs * 16))
    with ProcessPoolExecutor(jobs, initializer=initializer, initargs=initargs) as pool:
        for res in pool.map(func, items, chunksize=chunk):
            out.append(res)
            if progress is not None:
                progress(len(out), total)
    return out
