"""Built-in ambients (matrix Lie algebras gl(2, R) and gl(2, C)) and seeded generators.

Structure constants are derived at load time from exact 2x2 matrix
commutators and compared with a stored checksum, so a transcription error in
the basis can never silently change the geometry.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import linalg as la
from . import norden as nd
from .errors import InputError, NordenError
from .lie import LieAlgebraAmbient, abelian, j_bi_invariant, kaehler_check, make_ambient
from .linalg import Subspace

BUILTIN_NAMES = ("gl2r", "gl2c")

# Complex 2x2 matrices as pairs (real part, imaginary part) of Fraction arrays.
_CMat = tuple[np.ndarray, np.ndarray]


def _cmul(a: _CMat, b: _CMat) -> _CMat:
    return a[0] @ b[0] - a[1] @ b[1], a[0] @ b[1] + a[1] @ b[0]


def _unit(p: int, q: int) -> np.ndarray:
    m = la.zeros((2, 2))
    m[p, q] = Fraction(1)
    return m


def _structure_from_matrices(basis: list[_CMat], coords: Callable[[_CMat], np.ndarray]) -> np.ndarray:
    n = len(basis)
    c = la.zeros((n, n, n))
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            ab, ba = _cmul(a, b), _cmul(b, a)
            c[i, j] = coords((ab[0] - ba[0], ab[1] - ba[1]))
    return c


def _gl2r_structure() -> np.ndarray:
    z = la.zeros((2, 2))
    basis = [(_unit(0, 0), z), (_unit(0, 1), z), (_unit(1, 0), z), (_unit(1, 1), z)]

    def coords(m: _CMat) -> np.ndarray:
        return la.vector([m[0][0, 0], m[0][0, 1], m[0][1, 0], m[0][1, 1]])

    return _structure_from_matrices(basis, coords)


def _gl2c_structure() -> np.ndarray:
    z = la.zeros((2, 2))
    basis = []
    for p, q in ((0, 0), (0, 1), (1, 0), (1, 1)):
        basis += [(_unit(p, q), z), (z, _unit(p, q))]

    def coords(m: _CMat) -> np.ndarray:
        out = []
        for p, q in ((0, 0), (0, 1), (1, 0), (1, 1)):
            out += [m[0][p, q], m[1][p, q]]
        return la.vector(out)

    return _structure_from_matrices(basis, coords)


def structure_digest(c: np.ndarray) -> str:
    """SHA-256 of the nonzero structure constants as ``i,j,k,value`` lines."""
    lines = [
        f"{i},{j},{k},{c[i, j, k]}"
        for i, j, k in np.ndindex(c.shape)
        if c[i, j, k] != 0
    ]
    return hashlib.sha256("\n".join(lines).encode()).hexdigest()


# Regression guard: nonzero brackets [X_i, X_j] for i < j (1-based) of gl(2, R).
_GL2R_BRACKETS = {
    (1, 2): {2: 1},
    (1, 3): {3: -1},
    (2, 3): {1: 1, 4: -1},
    (2, 4): {2: 1},
    (3, 4): {3: -1},
}
_GL2C_DIGEST = "9c62760a8bfb687eb16a96e8bc5a46469ae439078a9e874a5d868afeea076154"


def _check_gl2r(c: np.ndarray) -> None:
    for i in range(4):
        for j in range(i + 1, 4):
            want = _GL2R_BRACKETS.get((i + 1, j + 1), {})
            got = {k + 1: c[i, j, k] for k in range(4) if c[i, j, k] != 0}
            if got != want:
                raise NordenError(f"gl2r bracket [X{i + 1}, X{j + 1}] = {got}, expected {want}")


@dataclass(frozen=True)
class GoldenFact:
    key: str
    statement: str
    check: Callable[["CatalogEntry"], bool] = field(repr=False, compare=False)


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    name: str
    ambient: LieAlgebraAmbient
    named_subspaces: dict[str, Subspace]
    expected: tuple[GoldenFact, ...]
    named_vectors: dict[str, np.ndarray] = field(default_factory=dict)

    def subspace(self, name: str) -> Subspace:
        try:
            return self.named_subspaces[name]
        except KeyError:
            raise InputError(
                f"no subspace {name!r} in {self.name}; known: {sorted(self.named_subspaces)}"
            ) from None

    def verify_golden(self) -> dict[str, bool]:
        return {fact.key: bool(fact.check(self)) for fact in self.expected}


def _e(n: int, *terms: tuple[int, int]) -> np.ndarray:
    """Vector ``sum coeff * X_idx`` with 1-based indices."""
    v = la.zeros(n)
    for coeff, idx in terms:
        v[idx - 1] += Fraction(coeff)
    return v


def _span(n: int, *vecs: np.ndarray) -> Subspace:
    return la.span(list(vecs), n)


def _diag(vals) -> np.ndarray:
    m = la.zeros((len(vals), len(vals)))
    for i, v in enumerate(vals):
        m[i, i] = Fraction(v)
    return m


def _gram_on(entry: CatalogEntry, names: list[str], which: str = "g") -> np.ndarray:
    b = entry.ambient.metric(which)
    vs = [entry.named_vectors[k] for k in names]
    return la.matrix([[b(x, y) for y in vs] for x in vs])


def _gl2r() -> CatalogEntry:
    c = _gl2r_structure()
    _check_gl2r(c)
    X = {i: _e(4, (1, i)) for i in range(1, 5)}
    # J as columns: J X1 = X4, J X2 = X3, J X3 = -X2, J X4 = -X1
    j = np.stack([X[4], X[3], -X[2], -X[1]], axis=1)
    g = _diag([-1, 1, -1, 1])
    amb = make_ambient(c, j, g, "gl2r")
    sl2r = _span(4, X[1] - X[4], X[2], X[3])
    vecs = {f"X{i}": X[i] for i in X}
    subs = {
        "sl2r": sl2r,
        "diagonal": _span(4, X[1], X[4]),
        "off_diagonal": _span(4, X[2], X[3]),
    }

    def sl2r_lightlike(e: CatalogEntry) -> bool:
        pair = e.ambient.norden
        w = e.subspace("sl2r")
        split = nd.radical_transversal_splitting(pair, w, "g")
        return (
            split is not None
            and split.rad == _span(4, X[1] - X[4])
            and split.screen == _span(4, X[2], X[3])
            and pair.J.is_invariant(split.screen)
            and split.screen_perp.dim == 0
            and split.case_tag == "coisotropic"
            and split.r == 1
        )

    def sl2r_normal(e: CatalogEntry) -> bool:
        perp = la.orthogonal_complement(e.ambient.metric("g"), e.subspace("sl2r"))
        return perp == _span(4, X[1] - X[4])

    def sl2r_generic(e: CatalogEntry) -> bool:
        ct = nd.classify_complex_type(e.ambient.norden, e.subspace("sl2r"), "gtilde")
        return (
            ct.kind == "generic"
            and ct.D == _span(4, X[2], X[3])
            and ct.D_perp == _span(4, X[1] - X[4])
        )

    facts = (
        GoldenFact(
            "sl2r_coisotropic_radical_transversal",
            "sl(2,R) is 1-lightlike for g: Rad = <X1-X4>, holomorphic screen <X2,X3>, "
            "S(TM_perp) = 0, coisotropic radical transversal",
            sl2r_lightlike,
        ),
        GoldenFact(
            "sl2r_normal_space",
            "the g-normal space of sl(2,R) is <X1-X4> (it equals the radical)",
            sl2r_normal,
        ),
        GoldenFact(
            "sl2r_generic_for_gtilde",
            "sl(2,R) is a generic CR subspace for gtilde with D = <X2,X3>, D_perp = <X1-X4>",
            sl2r_generic,
        ),
    )
    return CatalogEntry("gl2r", amb, subs, facts, vecs)


def _gl2c() -> CatalogEntry:
    c = _gl2c_structure()
    digest = structure_digest(c)
    if digest != _GL2C_DIGEST:
        raise NordenError(f"gl2c structure constants digest mismatch: {digest}")
    X = {i: _e(8, (1, i)) for i in range(1, 9)}
    cols = []
    for k in range(1, 9, 2):
        cols += [X[k + 1], -X[k]]  # J X_k = X_{k+1}, J X_{k+1} = -X_k
    j = np.stack(cols, axis=1)
    g = _diag([-1, 1, 1, -1, 1, -1, -1, 1])
    amb = make_ambient(c, j, g, "gl2c")
    if not j_bi_invariant(amb):
        raise NordenError("gl2c: J does not commute with brackets")
    J = amb.J
    F = [X[2], X[3] - X[5], X[4] + X[6], X[8]]
    xi = [X[2] - X[8], X[3] - X[5], X[4] + X[6], X[1] + X[7]]
    vecs = {f"X{i}": X[i] for i in X}
    vecs.update({f"F{i + 1}": F[i] for i in range(4)})
    vecs.update({f"xi{i + 1}": xi[i] for i in range(4)})
    subs = {
        "u2": _span(8, *F),
        "su2": _span(8, *xi[:3]),
        "sl2r": _span(8, X[1] - X[7], X[3], X[5]),
        "gl2r": _span(8, X[1], X[3], X[5], X[7]),
        "borel_real": _span(8, X[1], X[3], X[7]),
        "diagonal": _span(8, X[1], X[2], X[7], X[8]),
    }

    def u2_gram(e: CatalogEntry) -> bool:
        gram = _gram_on(e, ["F1", "F2", "F3", "F4"])
        return bool(np.all(gram == _diag([1, 2, -2, 1]))) and la.signature(
            la.BilinearForm(gram)
        ) == (3, 1, 0)

    def u2_lagrangian(e: CatalogEntry) -> bool:
        pair = e.ambient.norden
        w = e.subspace("u2")
        ct = nd.classify_complex_type(pair, w, "g")
        perp = la.orthogonal_complement(pair.g, w)
        jw = J.image(w)
        return ct.kind == "lagrangian" and perp == jw and la.intersect(jw, w).dim == 0

    def u2_totally_lightlike(e: CatalogEntry) -> bool:
        pair = e.ambient.norden
        w = e.subspace("u2")
        split = nd.radical_transversal_splitting(pair, w, "gtilde")
        return (
            split is not None
            and split.case_tag == "totally_lightlike"
            and split.rad == w
            and split.ltr == J.image(w)
        )

    def su2_gram(e: CatalogEntry) -> bool:
        gram = _gram_on(e, ["xi1", "xi2", "xi3"])
        return bool(np.all(gram == _diag([2, 2, -2]))) and la.signature(
            la.BilinearForm(gram)
        ) == (2, 1, 0)

    def su2_totally_real(e: CatalogEntry) -> bool:
        pair = e.ambient.norden
        w = e.subspace("su2")
        ct = nd.classify_complex_type(pair, w, "g")
        perp = la.orthogonal_complement(pair.g, w)
        want = _span(8, J(xi[1]), J(xi[2]), X[1], X[7], X[2] + X[8])
        return ct.kind == "totally_real" and perp == want and J.image(w) <= perp

    def su2_isotropic(e: CatalogEntry) -> bool:
        pair = e.ambient.norden
        w = e.subspace("su2")
        split = nd.radical_transversal_splitting(pair, w, "gtilde")
        s = _span(8, xi[3], J(xi[3]))
        return (
            split is not None
            and split.case_tag == "isotropic"
            and split.ltr == J.image(w)
            and split.screen_perp == s
            and J.is_invariant(s)
        )

    def kaehler(e: CatalogEntry) -> bool:
        return kaehler_check(e.ambient).kaehler

    def bi_invariant(e: CatalogEntry) -> bool:
        return j_bi_invariant(e.ambient)

    facts = (
        GoldenFact("u2_gram", "g on u(2) is diag(1, 2, -2, 1) in F1..F4, signature (3,1,0)", u2_gram),
        GoldenFact(
            "u2_lagrangian",
            "u(2) is Lagrangian for g; its normal space is J(u(2)) and J(u(2)) meets u(2) trivially",
            u2_lagrangian,
        ),
        GoldenFact(
            "u2_totally_lightlike_for_gtilde",
            "u(2) is totally lightlike radical transversal for gtilde with ltr = J(u(2))",
            u2_totally_lightlike,
        ),
        GoldenFact("su2_gram", "g on su(2) is diag(2, 2, -2) in xi1..xi3, signature (2,1,0)", su2_gram),
        GoldenFact(
            "su2_totally_real",
            "su(2) is totally real (not Lagrangian) for g with normal space "
            "<J xi2, J xi3, X1, X7, X2+X8>",
            su2_totally_real,
        ),
        GoldenFact(
            "su2_isotropic_for_gtilde",
            "su(2) is isotropic radical transversal for gtilde, ltr = J(su(2)), "
            "S(TM_perp) = <xi4, J xi4> holomorphic",
            su2_isotropic,
        ),
        GoldenFact("kaehler", "F vanishes identically on gl(2,C)", kaehler),
        GoldenFact("j_bi_invariant", "[JX, Y] = J[X, Y] on gl(2,C)", bi_invariant),
    )
    return CatalogEntry("gl2c", amb, subs, facts, vecs)


_BUILDERS = {"gl2r": _gl2r, "gl2c": _gl2c}
_CACHE: dict[str, CatalogEntry] = {}


def load_builtin(name: str) -> CatalogEntry:
    if name not in _BUILDERS:
        raise InputError(f"unknown built-in ambient {name!r}; choose from {', '.join(BUILTIN_NAMES)}")
    if name not in _CACHE:
        _CACHE[name] = _BUILDERS[name]()
    return _CACHE[name]


def abelian_entry(name: str = "gl2c") -> CatalogEntry:
    """The Norden pair of a built-in entry on the abelian Lie algebra of the same dimension."""
    base = load_builtin(name)
    amb = abelian(base.ambient, f"abelian_{name}")
    return CatalogEntry(amb.name, amb, dict(base.named_subspaces), (), dict(base.named_vectors))


# --------------------------------------------------------------------------
# seeded generators
# --------------------------------------------------------------------------

_MAX_TRIES = 1000


@dataclass(frozen=True)
class SeededGenerator:
    """Deterministic source of small rational data.

    A generator is a value: drawing never mutates it.  ``advance`` and
    ``child`` produce successor generators with independent streams.
    """

    seed: int
    bound: int = 5
    step: int = 0

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise InputError("seed must be a 64-bit unsigned integer")
        if self.bound < 1:
            raise InputError("coefficient bound must be positive")

    def _rng(self, salt: int = 0) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64([self.seed, self.step, salt]))

    def advance(self) -> "SeededGenerator":
        return SeededGenerator(self.seed, self.bound, self.step + 1)

    def child(self, k: int) -> "SeededGenerator":
        mixed = int(np.random.SeedSequence([self.seed, self.step, k]).generate_state(2, np.uint32)
                    .astype(np.uint64) @ np.array([1 << 32, 1], dtype=np.uint64))
        return SeededGenerator(mixed, self.bound)

    def integers(self, shape, sparse: bool = False, salt: int = 0) -> np.ndarray:
        rng = self._rng(salt)
        vals = rng.integers(-self.bound, self.bound + 1, size=shape)
        if sparse:
            vals = vals * (rng.random(size=shape) < 0.5)
        out = np.empty(vals.shape, dtype=object)
        out.ravel()[:] = [Fraction(int(v)) for v in vals.ravel()]
        return out

    def matrix(self, rows: int, cols: int, sparse: bool = False) -> tuple[np.ndarray, "SeededGenerator"]:
        return self.integers((rows, cols), sparse), self.advance()

    def invertible(self, n: int) -> tuple[np.ndarray, "SeededGenerator"]:
        gen = self
        for _ in range(_MAX_TRIES):
            m, gen = gen.matrix(n, n)
            if la.rank(m) == n:
                return m, gen
        raise NordenError("could not draw an invertible matrix")


def _dim_of(ambient) -> int:
    if isinstance(ambient, (LieAlgebraAmbient, nd.NordenPair)):
        return ambient.dim
    if isinstance(ambient, CatalogEntry):
        return ambient.ambient.dim
    return int(ambient)


def _pair_of(ambient) -> nd.NordenPair:
    if isinstance(ambient, CatalogEntry):
        return ambient.ambient.norden
    if isinstance(ambient, LieAlgebraAmbient):
        return ambient.norden
    if isinstance(ambient, nd.NordenPair):
        return ambient
    raise InputError("a Norden pair is needed to build holomorphic subspaces")


def random_subspace(gen: SeededGenerator, ambient, dim: int, sparse: bool = True) -> Subspace:
    """A ``dim``-dimensional subspace with small integer generators, resampled until independent."""
    n = _dim_of(ambient)
    if not 0 < dim < n:
        raise InputError(f"need 0 < dim < {n}, got {dim}")
    for _ in range(_MAX_TRIES):
        m = gen.integers((dim, n), sparse)
        if la.rank(m) == dim:
            return Subspace(list(m), n)
        gen = gen.advance()
    raise NordenError("random_subspace exhausted its resampling budget")


def random_holomorphic_subspace(gen: SeededGenerator, ambient, half_dim: int, sparse: bool = True) -> Subspace:
    """``span{v_1, J v_1, ..., v_k, J v_k}`` for random ``v_i``; always J-invariant."""
    pair = _pair_of(ambient)
    n = pair.dim
    if not 0 < 2 * half_dim < n:
        raise InputError(f"need 0 < 2*half_dim < {n}, got half_dim={half_dim}")
    for _ in range(_MAX_TRIES):
        vs = list(gen.integers((half_dim, n), sparse))
        w = Subspace(vs + [pair.J(v) for v in vs], n)
        if w.dim == 2 * half_dim:
            return w
        gen = gen.advance()
    raise NordenError("random_holomorphic_subspace exhausted its resampling budget")
