"""Exact residual bookkeeping for identity checks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np


@dataclass(frozen=True)
class Residual:
    """Outcome of checking one identity over a finite set of basis tuples.

    ``sample`` holds the first failing index tuple and its residual, so a
    failure can be reproduced by hand.
    """

    name: str
    evaluations: int
    nonzero: int
    sample: tuple | None = None

    @property
    def passed(self) -> bool:
        return self.nonzero == 0


def from_array(name: str, arr, vector: bool = True) -> Residual:
    """Residual of an array of differences.

    With ``vector=True`` the last axis is a vector component and each leading
    index tuple counts as one evaluation.
    """
    a = np.asarray(arr, dtype=object)
    if vector and a.ndim >= 1:
        lead = a.shape[:-1]
        flat = a.reshape((-1, a.shape[-1])) if a.size else a.reshape((0, 0))
        bad = [i for i in range(flat.shape[0]) if any(x != 0 for x in flat[i])]
        sample = None
        if bad:
            idx = np.unravel_index(bad[0], lead) if lead else ()
            sample = (tuple(int(i) for i in idx), tuple(flat[bad[0]]))
        return Residual(name, int(np.prod(lead)) if lead else 1, len(bad), sample)
    flat = a.ravel()
    bad = [i for i in range(flat.size) if flat[i] != 0]
    sample = None
    if bad:
        idx = np.unravel_index(bad[0], a.shape) if a.shape else ()
        sample = (tuple(int(i) for i in idx), flat[bad[0]])
    return Residual(name, int(flat.size), len(bad), sample)


def from_pairs(name: str, pairs: Iterable[tuple[tuple, object]]) -> Residual:
    """Residual from an iterable of ``(index_tuple, difference)`` items."""
    n = 0
    bad = 0
    sample = None
    for idx, diff in pairs:
        n += 1
        d = np.asarray(diff, dtype=object)
        if any(x != 0 for x in d.ravel()):
            bad += 1
            if sample is None:
                sample = (tuple(idx), tuple(d.ravel()) if d.ndim else diff)
    return Residual(name, n, bad, sample)


def all_passed(ledger: dict[str, Residual]) -> bool:
    return all(r.passed for r in ledger.values())
