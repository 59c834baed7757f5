"""Gauss-Weingarten calculus for a totally real subalgebra and its isotropic partner.

For a subalgebra ``W`` that is nondegenerate and totally real for ``g`` the
ambient splits g-orthogonally as ``W + J(W) + J(W)^perp``; the same three
pieces form the lightlike splitting ``TM + ltr + S(TM_perp)`` of ``W`` for the
associated metric.  Projecting the two ambient connections along this
decomposition yields every induced object (``plain`` for g, ``tilde`` for
gtilde).  All identities are evaluated on basis tuples, which by
multilinearity is the same as checking them everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Callable, Iterator

import numpy as np

from . import linalg as la
from . import lie
from . import norden as nd
from . import residuals as rs
from .errors import PreconditionError, TheoremViolation
from .lie import LieAlgebraAmbient
from .linalg import Subspace

Vec = np.ndarray


@dataclass(frozen=True, eq=False)
class TotallyRealSetting:
    ambient: LieAlgebraAmbient
    W: Subspace
    jtm: Subspace
    jtm_perp: Subspace
    P_W: np.ndarray
    P1: np.ndarray
    P2: np.ndarray

    @property
    def normal(self) -> Subspace:
        return la.subspace_sum(self.jtm, self.jtm_perp)

    @property
    def tangent_basis(self) -> list[Vec]:
        return self.W.vectors()

    @property
    def ltr_basis(self) -> list[Vec]:
        # N_i = J X_i, so J maps the tangent frame onto this one
        return [self.ambient.J(x) for x in self.W.vectors()]

    @property
    def screen_transversal_basis(self) -> list[Vec]:
        return self.jtm_perp.vectors()

    def checks(self) -> dict[str, bool]:
        g = self.ambient.norden.g
        J = self.ambient.J
        n = self.ambient.dim

        def orth(u: Subspace, v: Subspace) -> bool:
            return all(g(x, y) == 0 for x in u.vectors() for y in v.vectors())

        ident = self.P_W + self.P1 + self.P2
        return {
            "orthogonal decomposition": orth(self.W, self.jtm)
            and orth(self.W, self.jtm_perp)
            and orth(self.jtm, self.jtm_perp)
            and self.W.dim + self.jtm.dim + self.jtm_perp.dim == n,
            "J(W)^perp holomorphic": J.is_invariant(self.jtm_perp),
            "projectors complete": bool(np.all(ident == la.identity(n))),
            "projectors idempotent": all(
                bool(np.all(p @ p == p)) for p in (self.P_W, self.P1, self.P2)
            ),
        }


def totally_real_setting(ambient: LieAlgebraAmbient, w: Subspace) -> TotallyRealSetting:
    """Validate ``w`` and build the three-way decomposition with its projectors.

    ``w`` must be a subalgebra (so it is the tangent space of a Lie subgroup),
    nondegenerate and totally real for ``g`` with ``1 < dim w < n``.
    """
    pair = ambient.norden
    ct = nd.classify_complex_type(pair, w, "g")
    if ct.kind != "totally_real" or not 1 < w.dim < pair.half_dim:
        raise PreconditionError(
            f"need a totally real subspace with 1 < m < {pair.half_dim}; got {ct.kind}, m = {w.dim}"
        )
    if not ambient.is_subalgebra(w):
        raise PreconditionError("subspace is not closed under the bracket")
    jtm = ambient.J.image(w)
    w_perp = la.orthogonal_complement(pair.g, w)
    jtm_perp = la.intersect(w_perp, la.orthogonal_complement(pair.g, jtm))
    p_w, p1, p2 = la.projectors(w, jtm, jtm_perp)
    setting = TotallyRealSetting(ambient, w, jtm, jtm_perp, p_w, p1, p2)
    bad = [k for k, v in setting.checks().items() if not v]
    if bad:
        raise TheoremViolation(f"totally real decomposition fails: {', '.join(bad)}")
    return setting


def _key(*vs: Vec) -> tuple:
    return tuple(tuple(v) for v in vs)


def _memo(fn):
    """Cache a map of vector arguments; suites evaluate the same basis tuples many times."""
    cache: dict = {}

    def wrapped(*vs):
        k = _key(*vs)
        if k not in cache:
            cache[k] = la._freeze(fn(*vs))
        return cache[k]

    return wrapped


def _apply(m: np.ndarray, v: Vec) -> Vec:
    out = la.zeros(m.shape[0])
    for i in np.flatnonzero(v):
        out = out + v[i] * m[:, i]
    return out


class _Family:
    """Induced objects of one ambient connection projected along the setting."""

    def __init__(self, setting: TotallyRealSetting, table: np.ndarray):
        self.s = setting
        self.table = table
        self.P_N = setting.P1 + setting.P2
        self._bar = _memo(lambda x, y: lie.covariant(table, x, y))

    def bar(self, x: Vec, y: Vec) -> Vec:
        return self._bar(x, y)

    # Gauss formula pieces
    def nabla(self, x: Vec, y: Vec) -> Vec:
        return _apply(self.s.P_W, self.bar(x, y))

    def h(self, x: Vec, y: Vec) -> Vec:
        return _apply(self.P_N, self.bar(x, y))

    def h1(self, x: Vec, y: Vec) -> Vec:
        return _apply(self.s.P1, self.bar(x, y))

    def h2(self, x: Vec, y: Vec) -> Vec:
        return _apply(self.s.P2, self.bar(x, y))

    # Weingarten formula pieces; v is a normal vector
    def shape(self, v: Vec, x: Vec) -> Vec:
        """``A_v x``."""
        return -_apply(self.s.P_W, self.bar(x, v))

    def normal(self, x: Vec, v: Vec) -> Vec:
        return _apply(self.P_N, self.bar(x, v))

    def first(self, x: Vec, v: Vec) -> Vec:
        """Component in J(W): ``nabla^1`` on J(W), ``D^1`` on J(W)^perp."""
        return _apply(self.s.P1, self.bar(x, v))

    def second(self, x: Vec, v: Vec) -> Vec:
        """Component in J(W)^perp: ``D^2`` on J(W), ``nabla^2`` on J(W)^perp."""
        return _apply(self.s.P2, self.bar(x, v))

    # covariant derivatives of h2 and A
    def nabla_h2(self, x: Vec, y: Vec, z: Vec) -> Vec:
        return self.second(x, self.h2(y, z)) - self.h2(self.nabla(x, y), z) - self.h2(y, self.nabla(x, z))

    def nabla_shape(self, x: Vec, w: Vec, y: Vec) -> Vec:
        """``(nabla_x A)(w, y)`` for ``w`` in J(W)^perp."""
        return (
            self.nabla(x, self.shape(w, y))
            - self.shape(self.second(x, w), y)
            - self.shape(w, self.nabla(x, y))
        )


def _curv(step: Callable[[Vec, Vec], Vec], bracket: Callable[[Vec, Vec], Vec]):
    def r(x: Vec, y: Vec, z: Vec) -> Vec:
        return step(x, step(y, z)) - step(y, step(x, z)) - step(bracket(x, y), z)

    return _memo(r)


@dataclass(frozen=True, eq=False)
class GaussWeingartenData:
    setting: TotallyRealSetting
    plain: _Family
    tilde: _Family

    @property
    def ambient(self) -> LieAlgebraAmbient:
        return self.setting.ambient

    def _table(self, f, left: list[Vec], right: list[Vec]) -> np.ndarray:
        n = self.ambient.dim
        out = la.zeros((len(left), len(right), n))
        for i, a in enumerate(left):
            for j, b in enumerate(right):
                out[i, j] = f(a, b)
        return out

    @cached_property
    def tables(self) -> dict[str, np.ndarray]:
        """Every induced object on basis pairs, as ambient coordinate vectors.

        Tangent-normal pairs are indexed ``[tangent, normal]``; the shape
        operators ``A_N``, ``A_W`` (and tilde versions) are indexed
        ``[normal, tangent]``.
        """
        s = self.setting
        xs, ns, ws = s.tangent_basis, s.ltr_basis, s.screen_transversal_basis
        out = {}
        for pre, fam in (("", self.plain), ("tilde_", self.tilde)):
            out[pre + "nabla"] = self._table(fam.nabla, xs, xs)
            out[pre + "h1"] = self._table(fam.h1, xs, xs)
            out[pre + "h2"] = self._table(fam.h2, xs, xs)
            out[pre + "A_N"] = self._table(fam.shape, ns, xs)
            out[pre + "A_W"] = self._table(fam.shape, ws, xs)
            out[pre + "nabla1"] = self._table(fam.first, xs, ns)
            out[pre + "d2"] = self._table(fam.second, xs, ns)
            out[pre + "d1"] = self._table(fam.first, xs, ws)
            out[pre + "nabla2"] = self._table(fam.second, xs, ws)
        return out


# names of the tilde-family tables in the usual notation
TILDE_NAMES = {
    "tilde_nabla": "nabla~",
    "tilde_h1": "h^l",
    "tilde_h2": "h^s",
    "tilde_A_N": "A~_N",
    "tilde_A_W": "A~_W",
    "tilde_nabla1": "nabla^l",
    "tilde_d2": "D^s",
    "tilde_d1": "D^l",
    "tilde_nabla2": "nabla^s",
}


def gauss_weingarten(setting: TotallyRealSetting) -> GaussWeingartenData:
    """Project both ambient connections along the setting's decomposition."""
    a = setting.ambient
    data = GaussWeingartenData(setting, _Family(setting, a.nabla), _Family(setting, a.nabla_tilde))
    recon = _reconstruction(data)
    bad = [k for k, v in recon.items() if not v.passed]
    if bad:
        raise TheoremViolation(f"Gauss-Weingarten reconstruction fails: {', '.join(bad)}")
    return data


def _res(name: str, items: Iterator[tuple[tuple, object]]) -> rs.Residual:
    return rs.from_pairs(name, items)


def _reconstruction(data: GaussWeingartenData) -> dict[str, rs.Residual]:
    s = data.setting
    xs, ns, ws = s.tangent_basis, s.ltr_basis, s.screen_transversal_basis
    out = {}
    for pre, f in (("", data.plain), ("tilde_", data.tilde)):
        out[pre + "reconstruct_tangent"] = _res(
            pre + "reconstruct_tangent",
            (((i, j), f.bar(x, y) - (f.nabla(x, y) + f.h1(x, y) + f.h2(x, y)))
             for (i, x), (j, y) in product(enumerate(xs), enumerate(xs))),
        )
        out[pre + "reconstruct_ltr"] = _res(
            pre + "reconstruct_ltr",
            (((i, k), f.bar(x, nv) - (-f.shape(nv, x) + f.first(x, nv) + f.second(x, nv)))
             for (i, x), (k, nv) in product(enumerate(xs), enumerate(ns))),
        )
        out[pre + "reconstruct_screen_transversal"] = _res(
            pre + "reconstruct_screen_transversal",
            (((i, k), f.bar(x, wv) - (-f.shape(wv, x) + f.first(x, wv) + f.second(x, wv)))
             for (i, x), (k, wv) in product(enumerate(xs), enumerate(ws))),
        )
    return out


def _sym(name: str, fn, xs) -> rs.Residual:
    return _res(name, (((i, j), fn(x, y) - fn(y, x))
                       for (i, x), (j, y) in product(enumerate(xs), enumerate(xs))))


def _metric_res(name: str, b, step, x_list, v_list) -> rs.Residual:
    """``b(step(X, V), V') + b(V, step(X, V')) = 0`` on basis tuples."""
    return _res(
        name,
        (((i, j, k), b(step(x, v), u) + b(v, step(x, u)))
         for (i, x), (j, v), (k, u) in product(enumerate(x_list), enumerate(v_list), enumerate(v_list))),
    )


def identity_suite(data: GaussWeingartenData) -> dict[str, rs.Residual]:
    """Exact residuals of the Gauss-Weingarten identities.

    The metric relations and the Phi comparison hold for every ambient; the
    Kaehler-specific relations (and their tilde counterparts) are added only
    when ``F`` vanishes.
    """
    s = data.setting
    a = s.ambient
    g, gt = a.norden.g, a.norden.g_assoc
    J = a.J
    p, t = data.plain, data.tilde
    xs, ns, ws = s.tangent_basis, s.ltr_basis, s.screen_transversal_basis
    ex, en, ew = list(enumerate(xs)), list(enumerate(ns)), list(enumerate(ws))
    br = a.bracket
    out = dict(_reconstruction(data))

    out["h1_symmetric"] = _sym("h1_symmetric", p.h1, xs)
    out["h2_symmetric"] = _sym("h2_symmetric", p.h2, xs)
    out["hs_symmetric"] = _sym("hs_symmetric", t.h2, xs)
    out["hl_vanishes"] = _res("hl_vanishes", (((i, j), t.h1(x, y)) for (i, x), (j, y) in product(ex, ex)))
    for name, f in (("nabla", p), ("tilde_nabla", t)):
        out[f"{name}_torsion_free"] = _res(
            f"{name}_torsion_free",
            (((i, j), f.nabla(x, y) - f.nabla(y, x) - br(x, y)) for (i, x), (j, y) in product(ex, ex)),
        )
    out["nabla_metric"] = _metric_res("nabla_metric", g, p.nabla, xs, xs)
    out["tilde_nabla_metric"] = _metric_res("tilde_nabla_metric", gt, t.nabla, xs, xs)
    out["nabla1_metric"] = _metric_res("nabla1_metric", g, p.first, xs, ns)
    out["nabla2_metric"] = _metric_res("nabla2_metric", g, p.second, xs, ws)
    out["nablal_metric"] = _metric_res("nablal_metric", gt, t.first, xs, ns)
    out["nablas_metric"] = _metric_res("nablas_metric", gt, t.second, xs, ws)

    out["h1_shape_ltr"] = _res(
        "h1_shape_ltr",
        (((i, j, k), g(p.h1(x, y), nv) - g(p.shape(nv, x), y))
         for (i, x), (j, y), (k, nv) in product(ex, ex, en)),
    )
    out["h2_shape_screen_transversal"] = _res(
        "h2_shape_screen_transversal",
        (((i, j, k), g(p.h2(x, y), wv) - g(p.shape(wv, x), y))
         for (i, x), (j, y), (k, wv) in product(ex, ex, ew)),
    )
    out["d2_d1_skew"] = _res(
        "d2_d1_skew",
        (((i, k, l), g(p.second(x, nv), wv) + g(p.first(x, wv), nv))
         for (i, x), (k, nv), (l, wv) in product(ex, en, ew)),
    )
    out["tilde_hs_dl"] = _res(
        "tilde_hs_dl",
        (((i, j, k), gt(t.h2(x, y), wv) + gt(y, t.first(x, wv)))
         for (i, x), (j, y), (k, wv) in product(ex, ex, ew)),
    )
    out["tilde_ds_shape"] = _res(
        "tilde_ds_shape",
        (((i, k, l), gt(t.second(x, nv), wv) - gt(nv, t.shape(wv, x)))
         for (i, x), (k, nv), (l, wv) in product(ex, en, ew)),
    )
    out["tilde_shape_ltr_skew"] = _res(
        "tilde_shape_ltr_skew",
        (((i, k, l), gt(t.shape(nv, x), nu) + gt(t.shape(nu, x), nv))
         for (i, x), (k, nv), (l, nu) in product(ex, en, en)),
    )

    # compare both families through Phi = nabla~ - nabla split along the decomposition
    def phi_parts(x, y):
        v = t.bar(x, y) - p.bar(x, y)
        return s.P_W @ v, s.P1 @ v, s.P2 @ v

    def rel(name, items):
        out[name] = _res(name, items)

    rel("phi_nabla", (((i, j), t.nabla(x, y) - p.nabla(x, y) - phi_parts(x, y)[0])
                      for (i, x), (j, y) in product(ex, ex)))
    rel("phi_hs", (((i, j), t.h2(x, y) - p.h2(x, y) - phi_parts(x, y)[2])
                   for (i, x), (j, y) in product(ex, ex)))
    rel("phi_h1", (((i, j), p.h1(x, y) + phi_parts(x, y)[1]) for (i, x), (j, y) in product(ex, ex)))
    rel("phi_shape_ltr", (((i, k), t.shape(nv, x) - p.shape(nv, x) + phi_parts(x, nv)[0])
                          for (i, x), (k, nv) in product(ex, en)))
    rel("phi_nablal", (((i, k), t.first(x, nv) - p.first(x, nv) - phi_parts(x, nv)[1])
                       for (i, x), (k, nv) in product(ex, en)))
    rel("phi_ds", (((i, k), t.second(x, nv) - p.second(x, nv) - phi_parts(x, nv)[2])
                   for (i, x), (k, nv) in product(ex, en)))
    rel("phi_shape_screen_transversal", (((i, k), t.shape(wv, x) - p.shape(wv, x) + phi_parts(x, wv)[0])
                                         for (i, x), (k, wv) in product(ex, ew)))
    rel("phi_dl", (((i, k), t.first(x, wv) - p.first(x, wv) - phi_parts(x, wv)[1])
                   for (i, x), (k, wv) in product(ex, ew)))
    rel("phi_nablas", (((i, k), t.second(x, wv) - p.second(x, wv) - phi_parts(x, wv)[2])
                       for (i, x), (k, wv) in product(ex, ew)))

    if not a.kaehler_report.kaehler:
        return out

    for pre, f in (("", p), ("tilde_", t)):
        rel(pre + "kaehler_h1_vanishes", (((i, j), f.h1(x, y)) for (i, x), (j, y) in product(ex, ex)))
        rel(pre + "kaehler_shape_of_JY_vanishes",
            (((i, j), f.shape(J(y), x)) for (i, x), (j, y) in product(ex, ex)))
        rel(pre + "kaehler_nabla1_J", (((i, j), f.first(x, J(y)) - J(f.nabla(x, y)))
                                       for (i, x), (j, y) in product(ex, ex)))
        rel(pre + "kaehler_d2_J", (((i, j), f.second(x, J(y)) - J(f.h2(x, y)))
                                   for (i, x), (j, y) in product(ex, ex)))
        rel(pre + "kaehler_shape_screen_transversal",
            (((i, k), f.shape(wv, x) - J(f.first(x, J(wv)))) for (i, x), (k, wv) in product(ex, ew)))
        rel(pre + "kaehler_nabla2_J", (((i, k), f.second(x, J(wv)) - J(f.second(x, wv)))
                                       for (i, x), (k, wv) in product(ex, ew)))

    # with Phi = 0 the two families coincide object by object
    for key, fn_p, fn_t, left, right in (
        ("nabla", p.nabla, t.nabla, ex, ex),
        ("h2", p.h2, t.h2, ex, ex),
        ("h1", p.h1, lambda x, y: la.zeros(a.dim), ex, ex),
        ("shape_ltr", lambda x, v: p.shape(v, x), lambda x, v: t.shape(v, x), ex, en),
        ("nabla1", p.first, t.first, ex, en),
        ("d2", p.second, t.second, ex, en),
        ("shape_screen_transversal", lambda x, v: p.shape(v, x), lambda x, v: t.shape(v, x), ex, ew),
        ("d1", p.first, t.first, ex, ew),
        ("nabla2", p.second, t.second, ex, ew),
    ):
        rel(f"kaehler_equal_{key}", (((i, j), fn_p(x, y) - fn_t(x, y))
                                      for (i, x), (j, y) in product(left, right)))
    return out


# --------------------------------------------------------------------------
# Otsuki connections and total geodesy
# --------------------------------------------------------------------------


def _vanishes(fn, left, right) -> bool:
    return all(la.is_zero(fn(x, y)) for x in left for y in right)


def _otsuki_metric(b, step, xs, vs) -> bool:
    """``(D_X b)(V, V') = -b(D_X V, V') - b(V, D_X V')`` vanishes on basis tuples."""
    return all(b(step(x, v), u) + b(v, step(x, u)) == 0 for x in xs for v in vs for u in vs)


@dataclass(frozen=True)
class OtsukiReport:
    d1_metric: bool
    d1_form_vanishes: bool
    d2_form_vanishes: bool
    d2_metric: bool

    @property
    def verdict(self) -> bool:
        return self.d1_metric


def otsuki_report(data: GaussWeingartenData) -> OtsukiReport:
    """Evaluate the four equivalent conditions on ``D^1`` and ``D^2``; they must agree."""
    s = data.setting
    g = s.ambient.norden.g
    p = data.plain
    xs, ns, ws = s.tangent_basis, s.ltr_basis, s.screen_transversal_basis
    normals = ns + ws
    rep = OtsukiReport(
        d1_metric=_otsuki_metric(g, p.first, xs, normals),
        d1_form_vanishes=_vanishes(p.first, xs, ws),
        d2_form_vanishes=_vanishes(p.second, xs, ns),
        d2_metric=_otsuki_metric(g, p.second, xs, normals),
    )
    vals = {rep.d1_metric, rep.d1_form_vanishes, rep.d2_form_vanishes, rep.d2_metric}
    if len(vals) != 1:
        raise TheoremViolation(f"Otsuki conditions disagree: {rep}")
    return rep


@dataclass(frozen=True)
class GeodesicReport:
    conditions: dict[str, bool]

    @property
    def verdict(self) -> bool:
        return next(iter(self.conditions.values()))


def geodesic_report(data: GaussWeingartenData) -> GeodesicReport:
    """Total geodesy of ``(W, g)`` and ``(W, gtilde)`` via ten equivalent conditions.

    Requires a Kaehler ambient.  Raises :class:`TheoremViolation` when the
    conditions do not all agree.
    """
    s = data.setting
    a = s.ambient
    lie.require_kaehler(a)
    g, gt = a.norden.g, a.norden.g_assoc
    p, t = data.plain, data.tilde
    xs, ns, ws = s.tangent_basis, s.ltr_basis, s.screen_transversal_basis
    normals = ns + ws
    cond = {
        "h vanishes": _vanishes(p.h, xs, xs),
        "h2 vanishes": _vanishes(p.h2, xs, xs),
        "A_W vanishes": _vanishes(lambda w, x: p.shape(w, x), ws, xs),
        "D1 form vanishes": _vanishes(p.first, xs, ws),
        "D2 form vanishes": _vanishes(p.second, xs, ns),
        "gtilde totally geodesic": _vanishes(t.h, xs, xs),
        "D1 metric": _otsuki_metric(g, p.first, xs, normals),
        "D2 metric": _otsuki_metric(g, p.second, xs, normals),
        "transversal connection metric": _otsuki_metric(gt, t.normal, xs, normals),
        "Ds metric": _otsuki_metric(gt, t.second, xs, normals),
        "hs equals h2": all(
            la.is_zero(t.h2(x, y) - p.h2(x, y)) for x in xs for y in xs
        ),
    }
    # the last entry is a consistency check, not one of the equivalent conditions
    consistent = cond.pop("hs equals h2")
    if not consistent:
        raise TheoremViolation("h^s differs from h2 on a Kaehler ambient")
    if len(set(cond.values())) != 1:
        raise TheoremViolation(f"total geodesy conditions disagree: {cond}")
    return GeodesicReport(cond)


# --------------------------------------------------------------------------
# curvature
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CurvatureReport:
    tables: dict[str, np.ndarray]
    residuals: dict[str, rs.Residual]
    flatness: dict[str, bool]

    @property
    def passed(self) -> bool:
        return rs.all_passed(self.residuals)


def _table3(fn, a_list, b_list, c_list, n) -> np.ndarray:
    out = la.zeros((len(a_list), len(b_list), len(c_list), n))
    for (i, x), (j, y), (k, z) in product(enumerate(a_list), enumerate(b_list), enumerate(c_list)):
        out[i, j, k] = fn(x, y, z)
    return out


def curvature_suite(setting: TotallyRealSetting) -> CurvatureReport:
    """Curvature tables and the structure equations of both induced geometries.

    Requires a Kaehler ambient.  Nonzero residuals are returned as data; the
    flatness equivalence is enforced with :class:`TheoremViolation`.
    """
    a = setting.ambient
    lie.require_kaehler(a)
    data = gauss_weingarten(setting)
    g, gt = a.norden.g, a.norden.g_assoc
    J = a.J
    p, t = data.plain, data.tilde
    br = a.bracket
    n = a.dim
    xs, ns, ws = setting.tangent_basis, setting.ltr_basis, setting.screen_transversal_basis
    ex, en, ew = list(enumerate(xs)), list(enumerate(ns)), list(enumerate(ws))

    rbar = _memo(lambda x, y, z: lie.curvature(a, "g", x, y, z))
    rbar_t = _memo(lambda x, y, z: lie.curvature(a, "gtilde", x, y, z))

    R = _curv(p.nabla, br)
    Rt = _curv(t.nabla, br)
    Rperp = _curv(p.normal, br)
    R1 = _curv(p.first, br)
    R2 = _curv(p.second, br)
    Rl = _curv(t.first, br)
    Rs = _curv(t.second, br)

    tables = {
        "R_ambient": lie.curvature_table(a.structure_constants, a.nabla),
        "R_ambient_tilde": lie.curvature_table(a.structure_constants, a.nabla_tilde),
        "R": _table3(R, xs, xs, xs, n),
        "R_tilde": _table3(Rt, xs, xs, xs, n),
        "R_normal": _table3(Rperp, xs, xs, ns + ws, n),
        "R_perp1": _table3(R1, xs, xs, ns, n),
        "R_perp2": _table3(R2, xs, xs, ws, n),
        "R_l": _table3(Rl, xs, xs, ns, n),
        "R_s": _table3(Rs, xs, xs, ws, n),
    }

    res: dict[str, rs.Residual] = dict(a.kaehler_report.checks)

    def rel(name, items):
        res[name] = _res(name, items)

    xyz = list(product(ex, ex, ex))
    xyw = list(product(ex, ex, ew))

    for pre, f, Rb, Rf, R2f in (("", p, rbar, R, R2), ("tilde_", t, rbar_t, Rt, Rs)):
        A = f.shape
        h2 = f.h2

        def tangent_expansion(x, y, z, f=f, A=A, h2=h2, Rf=Rf):
            return (
                Rf(x, y, z)
                - A(h2(y, z), x)
                + A(h2(x, z), y)
                + J(A(J(h2(y, z)), x) - A(J(h2(x, z)), y))
                + f.nabla_h2(x, y, z)
                - f.nabla_h2(y, x, z)
            )

        rel(pre + "gauss_codazzi_expansion",
            (((i, j, k), Rb(x, y, z) - tangent_expansion(x, y, z)) for (i, x), (j, y), (k, z) in xyz))

        def screen_expansion(x, y, w, f=f, A=A, h2=h2, R2f=R2f):
            return (
                R2f(x, y, w)
                - h2(x, A(w, y))
                + h2(y, A(w, x))
                + J(h2(x, A(J(w), y)) - h2(y, A(J(w), x)))
                - f.nabla_shape(x, w, y)
                + f.nabla_shape(y, w, x)
                + J(f.nabla_shape(x, J(w), y) - f.nabla_shape(y, J(w), x))
            )

        rel(pre + "screen_transversal_expansion",
            (((i, j, k), Rb(x, y, w) - screen_expansion(x, y, w)) for (i, x), (j, y), (k, w) in xyw))

        rel(pre + "curvature_J_on_tangent",
            (((i, j, k), Rb(x, y, J(z)) - J(Rb(x, y, z))) for (i, x), (j, y), (k, z) in xyz))

        def j_expansion(x, y, z, f=f, A=A, h2=h2, Rf=Rf):
            return (
                J(Rf(x, y, z))
                - J(A(h2(y, z), x) - A(h2(x, z), y))
                - A(J(h2(y, z)), x)
                + A(J(h2(x, z)), y)
                + J(f.nabla_h2(x, y, z) - f.nabla_h2(y, x, z))
            )

        rel(pre + "curvature_of_J_tangent_expansion",
            (((i, j, k), Rb(x, y, J(z)) - j_expansion(x, y, z)) for (i, x), (j, y), (k, z) in xyz))

    A, h2 = p.shape, p.h2
    rel("normal_curvature_on_ltr",
        (((i, j, k), Rperp(x, y, J(z)) - (
            J(R(x, y, z))
            + J(p.nabla_h2(x, y, z) - p.nabla_h2(y, x, z))
            - J(A(h2(y, z), x) - A(h2(x, z), y))))
         for (i, x), (j, y), (k, z) in xyz))
    rel("normal_curvature_on_screen_transversal",
        (((i, j, k), Rperp(x, y, w) - (
            R2(x, y, w)
            + J(p.nabla_shape(x, J(w), y) - p.nabla_shape(y, J(w), x))
            - J(h2(y, A(J(w), x)) - h2(x, A(J(w), y)))))
         for (i, x), (j, y), (k, w) in xyw))

    rel("tangent_curvature_chain",
        (((i, j, k), np.concatenate([
            J(R(x, y, z)) - R1(x, y, J(z)),
            R1(x, y, J(z)) - Rl(x, y, J(z)),
            Rl(x, y, J(z)) - J(Rt(x, y, z)),
        ])) for (i, x), (j, y), (k, z) in xyz))
    rel("screen_transversal_curvature_chain",
        (((i, j, k), np.concatenate([
            J(R2(x, y, w)) - R2(x, y, J(w)),
            R2(x, y, J(w)) - Rs(x, y, J(w)),
            Rs(x, y, J(w)) - J(Rs(x, y, w)),
        ])) for (i, x), (j, y), (k, w) in xyw))

    # Gauss, Codazzi, Ricci
    rel("gauss_equation",
        (((i, j, k, l), g(rbar(x, y, z), u) - (
            g(R(x, y, z), u) - g(A(h2(y, z), x), u) + g(A(h2(x, z), y), u)))
         for (i, x), (j, y), (k, z), (l, u) in product(ex, ex, ex, ex)))
    rel("codazzi_equation",
        (((i, j, k), p.P_N @ rbar(x, y, z) - (
            p.nabla_h2(x, y, z) - p.nabla_h2(y, x, z)
            + J(A(J(h2(y, z)), x) - A(J(h2(x, z)), y))))
         for (i, x), (j, y), (k, z) in xyz))
    rel("ricci_tangent",
        (((i, j, k, l), g(rbar(x, y, J(z)), J(u)) + g(rbar(x, y, z), u))
         for (i, x), (j, y), (k, z), (l, u) in product(ex, ex, ex, ex)))
    rel("ricci_mixed",
        (((i, j, k, l), g(rbar(x, y, J(z)), w) - g(p.nabla_h2(x, y, z) - p.nabla_h2(y, x, z), J(w)))
         for (i, x), (j, y), (k, z), (l, w) in product(ex, ex, ex, ew)))
    rel("ricci_screen_transversal",
        (((i, j, k, l), g(rbar(x, y, w), w2) - (
            g(R2(x, y, w), w2)
            - g(A(J(w2), y), A(J(w), x))
            + g(A(J(w2), x), A(J(w), y))
            + g(A(w, x), A(w2, y))
            - g(A(w2, x), A(w, y))))
         for (i, x), (j, y), (k, w), (l, w2) in product(ex, ex, ew, ew)))

    # structure equations of the isotropic side, in the displayed form
    At, hs = t.shape, t.h2

    def nabla_t_shape(x, w, y):
        return t.nabla_shape(x, w, y)

    def nabla_t_hs(x, y, z):
        return t.nabla_h2(x, y, z)

    def rbar_t4(x, y, z, u):
        return gt(rbar_t(x, y, z), u)

    rel("tilde_structure_tangent_ltr",
        (((i, j, k, l), rbar_t4(x, y, z, nv) - (
            gt(Rt(x, y, z), nv) - gt(At(hs(y, z), x), nv) + gt(At(hs(x, z), y), nv)))
         for (i, x), (j, y), (k, z), (l, nv) in product(ex, ex, ex, en)))
    rel("tilde_structure_ltr_ltr",
        (((i, j, k, l), rbar_t4(x, y, n2, nv) - (
            gt(At(J(hs(y, J(nv))), x), n2) - gt(At(J(hs(x, J(nv))), y), n2)))
         for (i, x), (j, y), (k, n2), (l, nv) in product(ex, ex, en, en)))
    rel("tilde_structure_screen_transversal_ltr",
        (((i, j, k, l), rbar_t4(x, y, w, nv) - (
            gt(nabla_t_shape(y, w, x), nv) - gt(nabla_t_shape(x, w, y), nv)))
         for (i, x), (j, y), (k, w), (l, nv) in product(ex, ex, ew, en)))
    rel("tilde_structure_tangent_tangent",
        (((i, j, k, l), rbar_t4(x, y, z, u) - (gt(hs(y, u), hs(x, z)) - gt(hs(x, u), hs(y, z))))
         for (i, x), (j, y), (k, z), (l, u) in product(ex, ex, ex, ex)))
    rel("tilde_structure_screen_transversal_tangent",
        (((i, j, k, l), rbar_t4(x, y, w, u) - (
            gt(nabla_t_hs(y, x, u), w) - gt(nabla_t_hs(x, y, u), w)))
         for (i, x), (j, y), (k, w), (l, u) in product(ex, ex, ew, ex)))
    rel("tilde_structure_screen_transversal_pair",
        (((i, j, k, l), rbar_t4(x, y, w2, w) - (
            gt(Rs(x, y, w2), w)
            - gt(At(w, y), J(At(J(w2), x)))
            + gt(At(w, x), J(At(J(w2), y)))
            - gt(At(w2, x), J(At(J(w), y)))
            + gt(At(w2, y), J(At(J(w), x)))))
         for (i, x), (j, y), (k, w2), (l, w) in product(ex, ex, ew, ew)))
    rel("tilde_structure_ltr_duality",
        (((i, j, k, l), gt(Rt(x, y, z), nv) + gt(Rl(x, y, nv), z))
         for (i, x), (j, y), (k, z), (l, nv) in product(ex, ex, ex, en)))

    flat = {
        "nabla flat": la.is_zero(tables["R"]),
        "nabla~ flat": la.is_zero(tables["R_tilde"]),
        "nabla^1 flat": la.is_zero(tables["R_perp1"]),
        "nabla^l flat": la.is_zero(tables["R_l"]),
    }
    if len(set(flat.values())) != 1:
        raise TheoremViolation(f"flatness conditions disagree: {flat}")
    return CurvatureReport(tables, res, flat)
