"""Left-invariant geometry of a Lie algebra carrying a Norden pair.

Tensors are evaluated on left-invariant fields only, so every covariant
derivative is a bilinear table: ``nabla[i, j]`` is the coordinate vector of
``nabla_{e_i} e_j``.  Directional derivatives of invariant functions vanish,
which turns the metric condition into ``g(nabla_X Y, Z) + g(Y, nabla_X Z) = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import linalg as la
from . import residuals as rs
from .errors import InputError, PreconditionError, TheoremViolation
from .linalg import BilinearForm, Subspace
from .norden import NordenPair, Which, validate_norden_pair


def _ein(spec: str, *ops) -> np.ndarray:
    return np.einsum(spec, *ops, optimize=False)


def _along(m: np.ndarray, t: np.ndarray, axis: int) -> np.ndarray:
    """Apply the matrix ``m`` to index ``axis`` of ``t``, skipping zero entries of ``m``."""
    t = np.moveaxis(t, axis, 0)
    out = np.empty((m.shape[0],) + t.shape[1:], dtype=object)
    out.fill(Fraction(0))
    for k, l in zip(*np.nonzero(m)):
        out[k] = out[k] + m[k, l] * t[l]
    return np.moveaxis(out, 0, axis)


def _chain(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """``out[..., m] = sum_l left[..., l] * right[l, ...]`` over the nonzeros of ``left``."""
    out = np.empty(left.shape[:-1] + right.shape[1:], dtype=object)
    out.fill(Fraction(0))
    for idx in zip(*np.nonzero(left)):
        out[idx[:-1]] = out[idx[:-1]] + left[idx] * right[idx[-1]]
    return out


def levi_civita(structure_constants: np.ndarray, metric: BilinearForm) -> np.ndarray:
    """Connection table of the left-invariant metric solved from the Koszul formula.

    ``2 g(nabla_X Y, Z) = g([X,Y],Z) + g([Z,X],Y) + g([Z,Y],X)`` is solved for
    each basis pair against the Gram matrix.
    """
    c = structure_constants
    gram = metric.gram
    try:
        ginv = la.inverse(gram)
    except InputError as exc:
        raise InputError("metric is singular; no Levi-Civita connection") from exc
    gc = _ein("ijl,lk->ijk", c, gram)  # g([e_i, e_j], e_k)
    rhs = (gc + _ein("kij->ijk", gc) + _ein("kji->ijk", gc)) / 2
    return la._freeze(_ein("lk,ijk->ijl", ginv, rhs))


def _bilinear(table: np.ndarray, x, y) -> np.ndarray:
    # loops over nonzero coordinates only; much faster than einsum on object arrays
    x, y = la._as_object(x), la._as_object(y)
    out = la.zeros(table.shape[-1])
    yi = np.flatnonzero(y)
    for i in np.flatnonzero(x):
        for j in yi:
            out = out + (x[i] * y[j]) * table[i, j]
    return out


def covariant(table: np.ndarray, x, y) -> np.ndarray:
    """``nabla_X Y`` for left-invariant ``X``, ``Y`` given in coordinates."""
    return _bilinear(table, x, y)


def curvature_table(structure_constants: np.ndarray, table: np.ndarray) -> np.ndarray:
    """``R[a, b, c] = nabla_a nabla_b e_c - nabla_b nabla_a e_c - nabla_[a,b] e_c``."""
    # t1[b, c, a, m] = nabla_a (nabla_b e_c), component m
    t1 = _chain(table, np.moveaxis(table, 0, 1))
    t1 = _ein("bcam->abcm", t1)
    return la._freeze(t1 - _ein("bacm->abcm", t1) - _chain(structure_constants, table))


@dataclass(frozen=True, eq=False)
class LieAlgebraAmbient:
    structure_constants: np.ndarray
    norden: NordenPair
    nabla: np.ndarray
    nabla_tilde: np.ndarray
    name: str = ""

    @property
    def dim(self) -> int:
        return self.norden.dim

    @property
    def J(self):
        return self.norden.J

    def connection(self, which: Which) -> np.ndarray:
        if which == "g":
            return self.nabla
        if which == "gtilde":
            return self.nabla_tilde
        raise InputError(f"unknown connection {which!r}")

    def metric(self, which: Which) -> BilinearForm:
        return self.norden.metric(which)

    def bracket(self, x, y) -> np.ndarray:
        return bracket(self, x, y)

    @cached_property
    def kaehler_report(self) -> "KaehlerReport":
        return kaehler_check(self)

    def is_subalgebra(self, w: Subspace) -> bool:
        return all(w.contains(self.bracket(x, y)) for x in w.vectors() for y in w.vectors())


def make_ambient(structure_constants, J, g, name: str = "") -> LieAlgebraAmbient:
    """Validate a Lie algebra with Norden pair and precompute both connections."""
    pair = J if isinstance(J, NordenPair) else validate_norden_pair(J, g)
    c = np.array(la._as_object(structure_constants), dtype=object, copy=True)
    n = pair.dim
    if c.shape != (n, n, n):
        raise InputError(f"structure constants have shape {c.shape}, expected {(n, n, n)}")
    if not np.all(c == -_ein("jik->ijk", c)):
        raise InputError("structure constants are not antisymmetric")
    t = _chain(c, c)  # [[e_i, e_j], e_k]
    jac = t + _ein("jkim->ijkm", t) + _ein("kijm->ijkm", t)
    if not la.is_zero(jac):
        raise InputError("structure constants violate the Jacobi identity")
    c = la._freeze(c)
    return LieAlgebraAmbient(
        c,
        pair,
        levi_civita(c, pair.g),
        levi_civita(c, pair.g_assoc),
        name,
    )


def abelian(ambient_or_pair, name: str = "abelian") -> LieAlgebraAmbient:
    """Same Norden pair, all brackets zero."""
    pair = ambient_or_pair.norden if isinstance(ambient_or_pair, LieAlgebraAmbient) else ambient_or_pair
    n = pair.dim
    return make_ambient(la.zeros((n, n, n)), pair, None, name)


def change_basis(a: LieAlgebraAmbient, p) -> LieAlgebraAmbient:
    """Re-express the ambient in the basis whose vectors are the rows of ``p``."""
    p = la._as_object(p)
    q = la.inverse(p)  # old coordinates v -> new coordinates v @ q
    c = _along(q.T, _along(p, _along(p, a.structure_constants, 0), 1), 2)
    g = p @ a.norden.g.gram @ p.T
    # new J column b = coordinates of J f_b = (J @ p[b]) @ q
    j = (p @ a.norden.J.J.T @ q).T
    return make_ambient(c, j, g, a.name)


def bracket(a: LieAlgebraAmbient, x, y) -> np.ndarray:
    x, y = la._as_object(x), la._as_object(y)
    if x.shape != (a.dim,) or y.shape != (a.dim,):
        raise InputError("vector length does not match the Lie algebra dimension")
    return _bilinear(a.structure_constants, x, y)


def f3_table(a: LieAlgebraAmbient) -> np.ndarray:
    """``F[a, b, c] = g((nabla_a J) e_b, e_c)``."""
    j = a.J.J
    gam = a.nabla
    nj = _ein("lb,alm->abm", j, gam)  # nabla_a (J e_b)
    jn = _ein("ml,abl->abm", j, gam)  # J (nabla_a e_b)
    return _ein("abm,mc->abc", nj - jn, a.norden.g.gram)


def f3_tensor(a: LieAlgebraAmbient, x, y, z):
    return _ein("a,b,c,abc->", la._as_object(x), la._as_object(y), la._as_object(z), f3_table(a))


@dataclass(frozen=True, eq=False)
class PhiSplit:
    """Difference tensor of the two connections, optionally split along a decomposition."""

    phi_table: np.ndarray  # Phi(e_a, e_b) as vectors
    phi3: np.ndarray  # g(Phi(e_a, e_b), e_c)
    parts: tuple = ()
    components: tuple = ()

    def reconstructs(self) -> bool:
        if not self.components:
            return True
        return bool(np.all(sum(self.components[1:], self.components[0]) == self.phi_table))


def phi(a: LieAlgebraAmbient, parts: tuple[Subspace, ...] = ()) -> PhiSplit:
    """``Phi(X, Y) = nabla~_X Y - nabla_X Y`` and its components along ``parts``."""
    table = a.nabla_tilde - a.nabla
    phi3 = _ein("abm,mc->abc", table, a.norden.g.gram)
    comps = ()
    if parts:
        projs = la.projectors(*parts)
        comps = tuple(_ein("ml,abl->abm", p, table) for p in projs)
    return PhiSplit(la._freeze(table), phi3, tuple(parts), comps)


def curvature(a: LieAlgebraAmbient, which: Which, x, y, z) -> np.ndarray:
    gam = a.connection(which)
    br = bracket(a, x, y)
    return (
        covariant(gam, x, covariant(gam, y, z))
        - covariant(gam, y, covariant(gam, x, z))
        - covariant(gam, br, z)
    )


def curvature_04(a: LieAlgebraAmbient, which: Which) -> np.ndarray:
    """``R(X, Y, Z, U) = B(R(X, Y, Z), U)`` with ``B`` the metric of the same connection."""
    r = curvature_table(a.structure_constants, a.connection(which))
    return _along(a.metric(which).gram.T, r, 3)


def bridge_checks(a: LieAlgebraAmbient) -> dict[str, rs.Residual]:
    """The two algebraic relations linking ``F`` and ``Phi`` on all basis triples."""
    j = a.J.J
    f = f3_table(a)
    p3 = phi(a).phi3
    rhs_phi = (
        _ein("lc,lab->abc", j, f) - _ein("lc,abl->abc", j, f) - _ein("lc,bla->abc", j, f)
    ) / 2
    rhs_f = _ein("lc,abl->abc", j, p3) + _ein("lb,acl->abc", j, p3)
    return {
        "phi_from_f": rs.from_array("phi_from_f", p3 - rhs_phi, vector=False),
        "f_from_phi": rs.from_array("f_from_phi", f - rhs_f, vector=False),
    }


def structure_checks(a: LieAlgebraAmbient) -> dict[str, rs.Residual]:
    """Torsion-freeness and metricity of both connections, plus Phi symmetry and Bianchi."""
    c = a.structure_constants
    out = {}
    for which in ("g", "gtilde"):
        gam = a.connection(which)
        gram = a.metric(which).gram
        out[f"torsion_free[{which}]"] = rs.from_array(
            f"torsion_free[{which}]", gam - _ein("jik->ijk", gam) - c
        )
        met = _ein("ijm,mk->ijk", gam, gram)  # g(nabla_i e_j, e_k)
        out[f"metric[{which}]"] = rs.from_array(
            f"metric[{which}]", met + _ein("ikj->ijk", met), vector=False
        )
        koszul = 2 * met - (
            _ein("ijl,lk->ijk", c, gram)
            + _ein("kil,lj->ijk", c, gram)
            + _ein("kjl,li->ijk", c, gram)
        )
        out[f"koszul[{which}]"] = rs.from_array(f"koszul[{which}]", koszul, vector=False)
        r = curvature_table(c, gam)
        bianchi = r + _ein("bcam->abcm", r) + _ein("cabm->abcm", r)
        out[f"bianchi[{which}]"] = rs.from_array(f"bianchi[{which}]", bianchi)
    t = phi(a).phi_table
    out["phi_symmetric"] = rs.from_array("phi_symmetric", t - _ein("bam->abm", t))
    return out


def j_bi_invariant(a: LieAlgebraAmbient) -> bool:
    """``[JX, Y] = J[X, Y]`` on all basis pairs."""
    j = a.J.J
    c = a.structure_constants
    lhs = _ein("la,lbk->abk", j, c)
    rhs = _ein("kl,abl->abk", j, c)
    return bool(np.all(lhs == rhs))


@dataclass(frozen=True)
class KaehlerReport:
    kaehler: bool
    checks: dict

    @property
    def passed(self) -> bool:
        return rs.all_passed(self.checks)


def kaehler_checks(a: LieAlgebraAmbient) -> dict[str, rs.Residual]:
    """Residuals of the Kaehler-case identities; all zero exactly when ``F = 0`` holds."""
    j = a.J.J
    c = a.structure_constants
    r = curvature_table(c, a.nabla)
    r4 = curvature_04(a, "g")
    rt4 = curvature_04(a, "gtilde")
    out = {
        "F_vanishes": rs.from_array("F_vanishes", f3_table(a), vector=False),
        "phi_vanishes": rs.from_array("phi_vanishes", phi(a).phi_table),
        "connections_equal": rs.from_array("connections_equal", a.nabla_tilde - a.nabla),
    }
    jt = j.T

    def on_both_last(t):
        # t(X, Y, J Z, J U)
        return _along(jt, _along(jt, t, 2), 3)

    lhs = _along(jt, r, 2)  # R(X, Y) J Z
    rhs = _along(j, r, 3)  # J R(X, Y) Z
    out["curvature_commutes_with_J"] = rs.from_array("curvature_commutes_with_J", lhs - rhs)
    out["curvature_kaehler"] = rs.from_array("curvature_kaehler", on_both_last(r4) + r4, vector=False)
    out["tilde_curvature_04"] = rs.from_array(
        "tilde_curvature_04", rt4 - _along(jt, r4, 3), vector=False
    )
    out["tilde_curvature_kaehler"] = rs.from_array(
        "tilde_curvature_kaehler", on_both_last(rt4) + rt4, vector=False
    )
    return out


def kaehler_check(a: LieAlgebraAmbient) -> KaehlerReport:
    """Decide ``F = 0``; when it holds, certify the consequences or raise."""
    checks = kaehler_checks(a)
    is_k = checks["F_vanishes"].passed
    if is_k:
        bad = [k for k, v in checks.items() if not v.passed]
        if bad:
            raise TheoremViolation(f"Kaehler ambient fails: {', '.join(bad)}")
    return KaehlerReport(is_k, checks)


def require_kaehler(a: LieAlgebraAmbient) -> None:
    if not a.kaehler_report.kaehler:
        raise PreconditionError("ambient is not Kaehler (F does not vanish)")
