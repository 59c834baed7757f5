"""Seeded property batteries shared by the test suite and the ``fuzz`` command."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from . import linalg as la
from . import norden as nd
from .catalog import SeededGenerator, random_holomorphic_subspace, random_subspace
from .errors import TheoremViolation
from .lie import LieAlgebraAmbient


@dataclass
class FuzzSummary:
    seeds: int = 0
    holomorphic: Counter = field(default_factory=Counter)
    degeneracy: Counter = field(default_factory=Counter)
    complex_kinds: Counter = field(default_factory=Counter)
    radical_transversal: Counter = field(default_factory=Counter)
    asserted: int = 0
    cr_frames: int = 0
    signature_checks: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {
            "seeds": self.seeds,
            "holomorphic": dict(sorted(self.holomorphic.items())),
            "degeneracy_g": dict(sorted(self.degeneracy.items())),
            "complex_kinds_g": dict(sorted(self.complex_kinds.items())),
            "radical_transversal_g": dict(sorted(self.radical_transversal.items())),
            "correspondences_asserted": self.asserted,
            "cr_frames_checked": self.cr_frames,
            "signature_checks": self.signature_checks,
            "failures": list(self.failures),
            "ok": self.ok,
        }


_CR_WITH_NORMAL_PART = ("cr", "generic", "totally_real", "lagrangian")


def holomorphic_nondegeneracy(pair: nd.NordenPair, w) -> tuple[bool, bool]:
    """Whether ``w`` is nondegenerate for ``g`` and for ``gtilde``."""
    return la.radical(pair.g, w).dim == 0, la.radical(pair.g_assoc, w).dim == 0


def _dim(gen: SeededGenerator, hi: int) -> int:
    return int(gen.integers((1,), salt=7)[0]) % hi + 1


def run_battery(
    ambient: LieAlgebraAmbient, seeds: int, base_seed: int = 0, bound: int = 1
) -> FuzzSummary:
    """For each seed: one holomorphic subspace, one arbitrary subspace, one basis change.

    Coefficients in ``{-1, 0, 1}`` (the default ``bound``) hit null and
    degenerate configurations far more often than wider ranges do.
    """
    pair = ambient.norden
    n = pair.dim
    out = FuzzSummary()
    sig = la.signature(pair.g)
    for s in range(seeds):
        gen = SeededGenerator((base_seed + s) % 2**64, bound)
        out.seeds += 1
        hgen, rgen, pgen = gen.child(0), gen.child(1), gen.child(2)

        w = random_holomorphic_subspace(hgen, pair, _dim(hgen, pair.half_dim - 1))
        a, b = holomorphic_nondegeneracy(pair, w)
        out.holomorphic["nondegenerate" if a else "degenerate"] += 1
        if a != b:
            out.failures.append(f"seed {base_seed + s}: holomorphic subspace nondegenerate for one metric only")

        w = random_subspace(rgen, n, _dim(rgen, n - 1))
        try:
            rep = nd.cross_classify(pair, w)
        except TheoremViolation as exc:
            out.failures.append(f"seed {base_seed + s}: {exc}")
        else:
            out.asserted += len(rep.asserted)
            out.degeneracy[rep.g.degeneracy.kind] += 1
            if rep.g.complex_type is not None:
                out.complex_kinds[rep.g.complex_type.kind] += 1
            if rep.g.radical_transversal is not None:
                out.radical_transversal[str(rep.g.radical_transversal).lower()] += 1
            for side in (rep.g, rep.gtilde):
                if side.complex_type is not None and side.complex_type.kind in _CR_WITH_NORMAL_PART:
                    out.cr_frames += 1
                    bad = [k for k, v in nd.cr_structure_checks(pair, w, side.metric).items() if not v]
                    if bad:
                        out.failures.append(f"seed {base_seed + s}: {side.metric} CR frame: {', '.join(bad)}")

        p, _ = pgen.invertible(n)
        out.signature_checks += 1
        if la.signature(la.BilinearForm(p @ pair.g.gram @ p.T)) != sig:
            out.failures.append(f"seed {base_seed + s}: signature changed under a basis change")
    return out
