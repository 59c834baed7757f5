"""Norden pairs, lightlike splittings and the submanifold classification dictionary.

A *Norden pair* ``(J, g)`` on a 2n-dimensional space has ``J^2 = -1`` and
``g(JX, JY) = -g(X, Y)``.  Its associated metric ``g~(X, Y) = g(JX, Y)`` is a
second Norden metric.  A subspace ``W`` (the tangent space of a left-invariant
submanifold) can be nondegenerate for one of them and lightlike for the other;
:func:`cross_classify` checks the correspondences between the two pictures.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from . import linalg as la
from .errors import InputError, MetricError, PreconditionError, StructureError, TheoremViolation
from .linalg import BilinearForm, Subspace

Which = Literal["g", "gtilde"]

CASE_TAGS = ("r-lightlike", "coisotropic", "isotropic", "totally_lightlike")
COMPLEX_KINDS = ("holomorphic", "totally_real", "lagrangian", "cr", "generic", "unclassified")


@dataclass(frozen=True, eq=False)
class ComplexStructure:
    """Matrix of J acting on column coordinate vectors."""

    J: np.ndarray

    def __post_init__(self):
        m = np.array(la._as_object(self.J), dtype=object, copy=True)
        n = m.shape[0]
        if m.ndim != 2 or m.shape != (n, n):
            raise InputError("J must be a square matrix")
        if not np.all(m @ m == -la.identity(n)):
            raise StructureError("J does not satisfy J^2 = -Id")
        object.__setattr__(self, "J", la._freeze(m))

    @property
    def dim(self) -> int:
        return self.J.shape[0]

    def __call__(self, v) -> np.ndarray:
        return self.J @ la._as_object(v)

    def image(self, w: Subspace) -> Subspace:
        return w.image(self.J)

    def is_invariant(self, w: Subspace) -> bool:
        return self.image(w) == w


@dataclass(frozen=True, eq=False)
class NordenPair:
    J: ComplexStructure
    g: BilinearForm
    g_assoc: BilinearForm

    @property
    def dim(self) -> int:
        return self.g.dim

    @property
    def half_dim(self) -> int:
        return self.g.dim // 2

    def metric(self, which: Which) -> BilinearForm:
        if which == "g":
            return self.g
        if which == "gtilde":
            return self.g_assoc
        raise InputError(f"unknown metric {which!r}; expected 'g' or 'gtilde'")


def other_metric(which: Which) -> Which:
    return "gtilde" if which == "g" else "g"


def validate_norden_pair(J, g) -> NordenPair:
    """Check the Norden conditions and build the pair with its associated metric."""
    jm = J if isinstance(J, ComplexStructure) else None
    gm = g if isinstance(g, BilinearForm) else BilinearForm(g)
    n = gm.dim
    raw = jm.J if jm is not None else np.asarray(J, dtype=object)
    if raw.ndim != 2 or raw.shape != (n, n):
        raise InputError(f"J has shape {raw.shape}, metric is {n}x{n}")
    if n % 2:
        raise InputError(f"Norden pairs live in even dimension, got {n}")
    if jm is None:
        jm = ComplexStructure(J)
    if not gm.symmetric:
        raise MetricError("metric is not symmetric")
    if la.rank(gm.gram) != n:
        raise MetricError("metric is degenerate")
    if not np.all(jm.J.T @ gm.gram @ jm.J == -gm.gram):
        raise MetricError("J is not an anti-isometry: g(JX, JY) != -g(X, Y)")
    return NordenPair(jm, gm, BilinearForm(jm.J.T @ gm.gram))


def associated_metric(pair: NordenPair) -> BilinearForm:
    return pair.g_assoc


def _metric_of(pair: NordenPair, which) -> BilinearForm:
    return which if isinstance(which, BilinearForm) else pair.metric(which)


# --------------------------------------------------------------------------
# degeneracy and lightlike splittings
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class DegeneracyReport:
    kind: str  # "nondegenerate" or one of CASE_TAGS
    r: int
    m: int
    n: int  # codimension

    @property
    def degenerate(self) -> bool:
        return self.r > 0


def case_tag(r: int, m: int, n: int) -> str:
    """Lightlike case for radical rank ``r``, dimension ``m``, codimension ``n``.

    Boundary cases with ``m = 1`` are tagged by the same rules as the rest.
    """
    if r <= 0:
        return "nondegenerate"
    if r < min(m, n):
        return "r-lightlike"
    if r == n and r < m:
        return "coisotropic"
    if r == m and r < n:
        return "isotropic"
    if r == m == n:
        return "totally_lightlike"
    raise InputError(f"impossible radical rank r={r} for m={m}, n={n}")


def _check_proper(pair: NordenPair, w: Subspace) -> None:
    if w.ambient_dim != pair.dim:
        raise InputError(f"subspace lives in dimension {w.ambient_dim}, ambient is {pair.dim}")
    if not 0 < w.dim < pair.dim:
        raise PreconditionError(f"need 0 < dim W < {pair.dim}, got dim W = {w.dim}")


def classify_degeneracy(pair: NordenPair, w: Subspace, which: Which = "g") -> DegeneracyReport:
    _check_proper(pair, w)
    b = _metric_of(pair, which)
    r = la.radical(b, w).dim
    m, n = w.dim, pair.dim - w.dim
    return DegeneracyReport(case_tag(r, m, n), r, m, n)


@dataclass(frozen=True, eq=False)
class LightlikeSplitting:
    """Radical, screen and transversal data of a degenerate subspace.

    ``xi``/``N`` form the null pairing ``B(xi_i, N_j) = delta_ij``; ``X`` spans
    the screen and ``Wa`` the screen transversal bundle.
    """

    metric: BilinearForm
    W: Subspace
    W_perp: Subspace
    rad: Subspace
    screen: Subspace
    screen_perp: Subspace
    ltr: Subspace
    tr: Subspace
    xi: tuple
    N: tuple
    X: tuple
    Wa: tuple
    case_tag: str
    r: int

    def invariant_checks(self) -> dict[str, bool]:
        b = self.metric
        n = self.W.ambient_dim
        ok = {}
        ok["W = Rad + S(TM)"] = (
            la.subspace_sum(self.rad, self.screen) == self.W
            and self.rad.dim + self.screen.dim == self.W.dim
        )
        ok["Rad orthogonal to S(TM)"] = all(
            b(x, s) == 0 for x in self.rad.vectors() for s in self.screen.vectors()
        )
        ok["W_perp = Rad + S(TM_perp)"] = (
            la.subspace_sum(self.rad, self.screen_perp) == self.W_perp
            and self.rad.dim + self.screen_perp.dim == self.W_perp.dim
        )
        ok["Rad orthogonal to S(TM_perp)"] = all(
            b(x, s) == 0 for x in self.rad.vectors() for s in self.screen_perp.vectors()
        )
        ok["tr = ltr + S(TM_perp)"] = (
            la.subspace_sum(self.ltr, self.screen_perp) == self.tr
            and self.ltr.dim + self.screen_perp.dim == self.tr.dim
        )
        ok["ltr orthogonal to S(TM_perp)"] = all(
            b(x, s) == 0 for x in self.ltr.vectors() for s in self.screen_perp.vectors()
        )
        ok["ambient = W (+) tr"] = (
            la.intersect(self.W, self.tr).dim == 0 and self.W.dim + self.tr.dim == n
        )
        r = self.r
        pairing = all(
            b(self.xi[i], self.N[j]) == (1 if i == j else 0) for i in range(r) for j in range(r)
        )
        null_n = all(b(self.N[i], self.N[j]) == 0 for i in range(r) for j in range(r))
        n_screen = all(b(nv, x) == 0 for nv in self.N for x in self.X)
        n_sperp = all(b(nv, x) == 0 for nv in self.N for x in self.Wa)
        ok["frame pairing"] = pairing and null_n and n_screen and n_sperp
        m, cod = self.W.dim, n - self.W.dim
        ok["case tag"] = self.case_tag == case_tag(r, m, cod)
        return ok

    @property
    def valid(self) -> bool:
        return all(self.invariant_checks().values())


def _dual_frame(b: BilinearForm, xi: list, candidates: list) -> list:
    """Combinations ``M_i`` of ``candidates`` with ``b(M_i, xi_j) = delta_ij``."""
    r = len(xi)
    p = la.matrix([[b(c, x) for x in xi] for c in candidates]) if r else la.zeros((0, 0))
    try:
        a = la.inverse(p) if r else p
    except InputError as exc:
        raise PreconditionError("transversal candidates do not pair with the radical") from exc
    # rows of a @ C, where C stacks candidates, pair dually with xi
    return [sum((a[i, k] * candidates[k] for k in range(r)), la.zeros(b.dim)) for i in range(r)]


def build_lightlike_splitting(
    pair: NordenPair,
    w: Subspace,
    which: Which = "g",
    screen: Subspace | None = None,
    screen_perp: Subspace | None = None,
    ltr: Subspace | None = None,
) -> LightlikeSplitting:
    """Quasi-orthonormal splitting of a degenerate subspace.

    By default the screen and screen transversal bundles are the canonical
    echelon complements of the radical; ``ltr`` is then produced by choosing
    ``M_i`` dual to the radical inside ``(S(TM) + S(TM_perp))^perp`` and
    correcting ``N_i = M_i - 1/2 sum_j B(M_i, M_j) xi_j`` so the ``N_i`` are null.
    Explicit ``screen``/``screen_perp``/``ltr`` override the defaults and are
    validated.
    """
    _check_proper(pair, w)
    b = _metric_of(pair, which)
    rad = la.radical(b, w)
    if rad.dim == 0:
        raise PreconditionError("subspace is nondegenerate; nothing to split")
    w_perp = la.orthogonal_complement(b, w)
    if screen is None:
        screen = la.complement_in(rad, w)
    if screen_perp is None:
        screen_perp = la.complement_in(rad, w_perp)
    for name, sub, host in (("screen", screen, w), ("screen_perp", screen_perp, w_perp)):
        if not sub <= host or la.intersect(sub, rad).dim or sub.dim + rad.dim != host.dim:
            raise PreconditionError(f"{name} is not a complement of the radical")
    xi = rad.vectors()
    if ltr is None:
        e = la.orthogonal_complement(b, la.subspace_sum(screen, screen_perp))
        cands = la.complement_in(rad, e).vectors()
        m = _dual_frame(b, xi, cands)
        r = len(xi)
        nvecs = [
            m[i] - sum((b(m[i], m[j]) / 2 * xi[j] for j in range(r)), la.zeros(pair.dim))
            for i in range(r)
        ]
        ltr = Subspace(nvecs, pair.dim)
    else:
        if ltr.dim != rad.dim:
            raise PreconditionError("ltr must have the rank of the radical")
        nvecs = _dual_frame(b, xi, ltr.vectors())
    split = LightlikeSplitting(
        metric=b,
        W=w,
        W_perp=w_perp,
        rad=rad,
        screen=screen,
        screen_perp=screen_perp,
        ltr=ltr,
        tr=la.subspace_sum(ltr, screen_perp),
        xi=tuple(xi),
        N=tuple(la._freeze(v) for v in nvecs),
        X=tuple(screen.vectors()),
        Wa=tuple(screen_perp.vectors()),
        case_tag=case_tag(rad.dim, w.dim, pair.dim - w.dim),
        r=rad.dim,
    )
    bad = [k for k, v in split.invariant_checks().items() if not v]
    if bad:
        raise PreconditionError(f"splitting invariants fail: {', '.join(bad)}")
    return split


# --------------------------------------------------------------------------
# Radical transversal lightlike subspaces
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class RadicalTransversalReport:
    holds: bool
    proper: bool
    j_rad_is_ltr: bool
    j_screen_invariant: bool
    screen_perp_holomorphic: bool
    case_tag: str
    r: int


def is_radical_transversal(split: LightlikeSplitting, J: ComplexStructure) -> RadicalTransversalReport:
    """Check ``J(Rad) = ltr`` and ``J(S(TM)) = S(TM)`` on a concrete splitting.

    When both hold, the screen transversal bundle is necessarily J-invariant;
    a failure of that consequence raises :class:`TheoremViolation`.
    """
    j_rad = J.image(split.rad) == split.ltr
    j_scr = J.is_invariant(split.screen)
    holo = J.is_invariant(split.screen_perp)
    holds = j_rad and j_scr
    if holds and not holo:
        raise TheoremViolation(
            "radical transversal splitting with non-holomorphic screen transversal bundle"
        )
    return RadicalTransversalReport(
        holds=holds,
        proper=split.screen.dim > 0,
        j_rad_is_ltr=j_rad,
        j_screen_invariant=j_scr,
        screen_perp_holomorphic=holo,
        case_tag=split.case_tag,
        r=split.r,
    )


def _max_invariant(J: ComplexStructure, k: Subspace) -> Subspace:
    # K cap JK is J-invariant because J^2 = -1
    return la.intersect(k, J.image(k))


def radical_transversal_splitting(
    pair: NordenPair, w: Subspace, which: Which = "g"
) -> LightlikeSplitting | None:
    """The unique splitting with ``ltr = J(Rad)`` and J-invariant screen, if one exists.

    Any such screen lies in ``W cap J(Rad)^perp`` and is J-invariant, and a
    J-invariant complement of the radical there is forced to be the maximal
    J-invariant subspace; likewise ``S(TM_perp) = W_perp cap J(Rad)^perp``.
    Returns ``None`` when the subspace is not radical transversal.
    """
    _check_proper(pair, w)
    b = _metric_of(pair, which)
    J = pair.J
    rad = la.radical(b, w)
    if rad.dim == 0:
        raise PreconditionError("subspace is nondegenerate")
    j_rad = J.image(rad)
    if la.intersect(j_rad, w).dim:
        return None
    j_perp = la.orthogonal_complement(b, j_rad)
    screen = _max_invariant(J, la.intersect(w, j_perp))
    w_perp = la.orthogonal_complement(b, w)
    screen_perp = la.intersect(w_perp, j_perp)
    try:
        split = build_lightlike_splitting(pair, w, b, screen, screen_perp, j_rad)
    except PreconditionError:
        return None
    return split if is_radical_transversal(split, J).holds else None


# --------------------------------------------------------------------------
# complex type of nondegenerate subspaces
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ComplexClassification:
    kind: str
    D: Subspace | None
    D_perp: Subspace | None
    m: int
    n: int  # half the ambient dimension
    r: int  # dim D_perp (0 when absent)
    proper: bool = False

    @property
    def is_cr(self) -> bool:
        return self.kind in ("cr", "generic", "totally_real", "lagrangian", "holomorphic")


def classify_complex_type(pair: NordenPair, w: Subspace, which: Which = "g") -> ComplexClassification:
    """Holomorphic / totally real / Lagrangian / CR / generic test for a nondegenerate W.

    ``D`` is taken to be the maximal J-invariant part ``W cap J(W)`` and
    ``D_perp`` its orthogonal complement inside ``W``.
    """
    _check_proper(pair, w)
    b = _metric_of(pair, which)
    if la.radical(b, w).dim:
        raise PreconditionError("subspace is degenerate for this metric; use classify_degeneracy")
    J = pair.J
    m, half, codim = w.dim, pair.half_dim, pair.dim - w.dim
    w_perp = la.orthogonal_complement(b, w)
    d = _max_invariant(J, w)
    d_perp = la.intersect(w, la.orthogonal_complement(b, d))
    if d == w:
        return ComplexClassification("holomorphic", d, d_perp, m, half, 0)
    if d.dim == 0:
        if J.image(w) <= w_perp:
            kind = "lagrangian" if m == half else "totally_real"
            return ComplexClassification(kind, d, w, m, half, m)
        return ComplexClassification("unclassified", None, None, m, half, 0)
    complementary = la.intersect(d, d_perp).dim == 0 and d.dim + d_perp.dim == m
    nondeg = complementary and la.radical(b, d_perp).dim == 0
    if nondeg and J.image(d_perp) <= w_perp:
        kind = "generic" if d_perp.dim == codim else "cr"
        return ComplexClassification(kind, d, d_perp, m, half, d_perp.dim, proper=True)
    return ComplexClassification("unclassified", None, None, m, half, 0)


# --------------------------------------------------------------------------
# tangential / normal parts of J
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class JSplitData:
    """``J X = T X + F X`` on W and ``J V = t V + f V`` on the complement.

    All four maps are stored as ambient matrices; apply them only to vectors
    of the stated domain.
    """

    W: Subspace
    complement: Subspace
    T_map: np.ndarray
    F_part: np.ndarray
    t_map: np.ndarray
    f_map: np.ndarray


def j_split(pair: NordenPair, w: Subspace, complement: Subspace) -> JSplitData:
    try:
        p_w, p_c = la.projectors(w, complement)
    except InputError as exc:
        raise InputError("W and complement are not complementary") from exc
    J = pair.J.J
    return JSplitData(w, complement, p_w @ J, p_c @ J, p_w @ J, p_c @ J)


def j_split_checks(pair: NordenPair, data: JSplitData) -> dict[str, bool]:
    """Reconstruction and adjointness identities of the J-splitting."""
    J = pair.J
    ws, cs = data.W.vectors(), data.complement.vectors()
    ok = {
        "JX = TX + FX": all(np.all(J(x) == data.T_map @ x + data.F_part @ x) for x in ws),
        "JV = tV + fV": all(np.all(J(v) == data.t_map @ v + data.f_map @ v) for v in cs),
    }
    for name, b in (("g", pair.g), ("gtilde", pair.g_assoc)):
        ok[f"T self-adjoint ({name})"] = all(
            b(data.T_map @ x, y) == b(x, data.T_map @ y) for x in ws for y in ws
        )
        ok[f"f self-adjoint ({name})"] = all(
            b(data.f_map @ u, v) == b(u, data.f_map @ v) for u in cs for v in cs
        )
    ok["g(FX, V) = g(X, tV)"] = all(
        pair.g(data.F_part @ x, v) == pair.g(x, data.t_map @ v) for x in ws for v in cs
    )
    return ok


# --------------------------------------------------------------------------
# CR <-> Radical transversal frames
# --------------------------------------------------------------------------


def cr_structure_checks(pair: NordenPair, w: Subspace, which: Which = "g") -> dict[str, bool]:
    """Frame and decomposition identities for a proper or totally real CR subspace.

    With ``xi_i`` an orthogonal basis of ``D_perp`` and
    ``N_i = -J xi_i / B(xi_i, xi_i)`` (``+J xi_i`` when ``B`` is gtilde, since
    ``g(J x, y) = gtilde(x, y)`` but ``gtilde(J x, y) = -g(x, y)``), the ``N_i``
    are null and dual to the ``xi_i`` for the other metric, and the ambient splits orthogonally (for the
    other metric) into ``D``, ``(J D_perp)^perp`` and ``D_perp + J D_perp``.
    """
    b = _metric_of(pair, which)
    bt = pair.metric(other_metric(which))
    cls = classify_complex_type(pair, w, which)
    if cls.kind not in ("cr", "generic", "totally_real", "lagrangian"):
        raise PreconditionError(f"subspace is {cls.kind}, not a CR subspace with D_perp != 0")
    J = pair.J
    dp = cls.D_perp
    d = cls.D
    diag, p = la.diagonalize(la.restrict_form(b, dp).gram)
    xi = [p[i] @ dp.basis for i in range(dp.dim)]
    sign = -1 if b == pair.g else 1
    nv = [sign * J(xi[i]) / diag[i] for i in range(dp.dim)]
    r = dp.dim
    w_perp = la.orthogonal_complement(b, w)
    jdp = J.image(dp)
    sperp = la.intersect(w_perp, la.orthogonal_complement(b, jdp))
    parts = [d, sperp, la.subspace_sum(dp, jdp)]

    def orth(u: Subspace, v: Subspace, form: BilinearForm = bt) -> bool:
        return all(form(x, y) == 0 for x in u.vectors() for y in v.vectors())

    ok = {
        "N null for other metric": all(bt(nv[i], nv[j]) == 0 for i in range(r) for j in range(r)),
        "N dual to xi for other metric": all(
            bt(nv[i], xi[j]) == (1 if i == j else 0) for i in range(r) for j in range(r)
        ),
        "ambient = D + S(TM_perp) + (Rad + J D_perp)": sum(x.dim for x in parts) == pair.dim
        and la.subspace_sum(la.subspace_sum(parts[0], parts[1]), parts[2]).dim == pair.dim,
        "decomposition orthogonal for other metric": orth(parts[0], parts[1])
        and orth(parts[0], parts[2])
        and orth(parts[1], parts[2]),
        "(J D_perp)^perp holomorphic": J.is_invariant(sperp),
        "other-metric normal space = D_perp + (J D_perp)^perp": la.orthogonal_complement(bt, w)
        == la.subspace_sum(dp, sperp),
    }
    split = radical_transversal_splitting(pair, w, other_metric(which))
    ok["radical transversal for other metric"] = split is not None
    if split is not None:
        bundles = [split.screen, split.rad, split.ltr, split.screen_perp]
        ok["RT bundles mutually orthogonal for this metric"] = all(
            orth(bundles[i], bundles[j], b) for i in range(4) for j in range(i + 1, 4)
        )
        ok["RT normal space = tr"] = w_perp == split.tr
    return ok


# --------------------------------------------------------------------------
# the dictionary
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SideReport:
    """What one metric sees on W."""

    metric: str
    degeneracy: DegeneracyReport
    complex_type: ComplexClassification | None = None
    radical_transversal: bool | None = None
    rt_proper: bool | None = None
    split: LightlikeSplitting | None = field(default=None, compare=False)


@dataclass(frozen=True)
class CrossReport:
    g: SideReport
    gtilde: SideReport
    asserted: tuple[str, ...]


def _side(pair: NordenPair, w: Subspace, which: Which) -> SideReport:
    deg = classify_degeneracy(pair, w, which)
    if not deg.degenerate:
        return SideReport(which, deg, complex_type=classify_complex_type(pair, w, which))
    split = radical_transversal_splitting(pair, w, which)
    return SideReport(
        which,
        deg,
        radical_transversal=split is not None,
        rt_proper=None if split is None else split.screen.dim > 0,
        split=split,
    )


def _expected_partner(ct: ComplexClassification, pair: NordenPair) -> tuple[str, int] | None:
    """Lightlike case the other metric must show for a CR subspace, if stated."""
    m, half = ct.m, pair.half_dim
    codim = pair.dim - m
    if ct.kind == "generic":
        return "coisotropic", ct.r
    if ct.kind == "cr" and 1 <= ct.r < min(m, codim):
        return "r-lightlike", ct.r
    if ct.kind == "totally_real" and 1 < m < half:
        return "isotropic", m
    if ct.kind == "lagrangian":
        return "totally_lightlike", m
    return None


def _dictionary(pair: NordenPair, a: SideReport, b: SideReport) -> list[str]:
    """Assert the correspondences between a CR type on ``a`` and a lightlike type on ``b``."""
    asserted = []
    tag = f"{a.metric}->{b.metric}"

    def need(cond: bool, what: str) -> None:
        if not cond:
            raise TheoremViolation(f"{tag}: {what}")
        asserted.append(f"{tag}: {what}")

    ct = a.complex_type
    if ct is not None and ct.kind == "holomorphic":
        need(b.complex_type is not None and b.complex_type.kind == "holomorphic",
             "holomorphic <-> holomorphic")
    if ct is not None:
        want = _expected_partner(ct, pair)
        if want is not None:
            kind, r = want
            need(
                b.degeneracy.kind == kind
                and b.degeneracy.r == r
                and bool(b.radical_transversal),
                f"{ct.kind} (dim D_perp={ct.r}) <-> {kind} radical transversal (r={r})",
            )
            need(b.split.rad == ct.D_perp, "radical of the partner equals D_perp")
            need(b.split.screen == ct.D, "radical transversal screen equals D")
    # converse: radical transversal lightlike on b forces the CR type on a
    if b.degeneracy.degenerate and b.radical_transversal:
        kind, r, m = b.degeneracy.kind, b.degeneracy.r, b.degeneracy.m
        expected = {
            "coisotropic": ("generic",),
            "r-lightlike": ("cr",),
            "totally_lightlike": ("lagrangian",),
            "isotropic": ("totally_real",) if 1 < m < pair.half_dim else None,
        }.get(kind)
        if expected is not None:
            need(
                ct is not None and ct.kind in expected and ct.r == r,
                f"{kind} radical transversal (r={r}) <-> {expected[0]}",
            )
    return asserted


def cross_classify(pair: NordenPair, w: Subspace) -> CrossReport:
    """Classify ``W`` against both metrics and enforce the correspondence theorems.

    Every stated correspondence is checked in both directions, and again with
    the roles of the two metrics exchanged.  A failed correspondence raises
    :class:`TheoremViolation`.
    """
    sg = _side(pair, w, "g")
    st = _side(pair, w, "gtilde")
    asserted: list[str] = []
    # nondegeneracy of a J-invariant subspace is shared by both metrics
    if pair.J.is_invariant(w):
        if sg.degeneracy.degenerate != st.degeneracy.degenerate:
            raise TheoremViolation("holomorphic subspace nondegenerate for only one metric")
        asserted.append("holomorphic: g nondegenerate <-> gtilde nondegenerate")
    for a, b in ((sg, st), (st, sg)):
        asserted += _dictionary(pair, a, b)
    return CrossReport(sg, st, tuple(asserted))
