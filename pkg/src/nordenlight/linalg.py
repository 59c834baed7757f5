"""Exact rational linear algebra over spaces carrying symmetric bilinear forms.

Every scalar is a :class:`fractions.Fraction`; vectors and matrices are numpy
arrays of ``dtype=object`` holding Fractions, so ``@``, ``einsum`` and
slicing work as usual while arithmetic stays exact.  Degeneracy questions are
answered by exact rank computations only.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError

Scalar = Fraction

__all__ = [
    "Scalar",
    "frac",
    "vector",
    "matrix",
    "zeros",
    "identity",
    "is_zero",
    "rref",
    "rank",
    "nullspace",
    "inverse",
    "Subspace",
    "span",
    "subspace_sum",
    "intersect",
    "contains",
    "equal",
    "complement_in",
    "projectors",
    "BilinearForm",
    "restrict_form",
    "radical",
    "orthogonal_complement",
    "diagonalize",
    "signature",
]


def frac(x) -> Fraction:
    """Convert ``x`` to a Fraction, refusing floats (they are not exact)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InputError(f"boolean is not a scalar: {x!r}")
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational literal: {x!r}") from exc
    raise InputError(f"cannot use {type(x).__name__} {x!r} as an exact scalar")


def _freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def vector(values: Iterable) -> np.ndarray:
    vals = [frac(v) for v in values]
    out = np.empty(len(vals), dtype=object)
    out[:] = vals
    return out


def matrix(rows: Iterable[Iterable]) -> np.ndarray:
    rows = [[frac(v) for v in row] for row in rows]
    if not rows:
        return np.empty((0, 0), dtype=object)
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise InputError("ragged matrix rows")
    out = np.empty((len(rows), width), dtype=object)
    for i, r in enumerate(rows):
        out[i, :] = r
    return out


def zeros(shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out


def identity(n: int) -> np.ndarray:
    out = zeros((n, n))
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def is_zero(a) -> bool:
    return all(x == 0 for x in np.asarray(a, dtype=object).ravel())


def _as_object(a) -> np.ndarray:
    a = np.asarray(a, dtype=object)
    if a.size and not all(isinstance(x, Fraction) for x in a.ravel()):
        a = np.vectorize(frac, otypes=[object])(a)
    return a


def rref(m) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form with zero rows dropped.

    Returns ``(R, pivots)``.  Each row of ``R`` has leading entry 1 at column
    ``pivots[k]`` and every other row is zero in that column, so the result is
    a canonical basis of the row space.
    """
    a = np.array(_as_object(m), dtype=object, copy=True)
    if a.ndim != 2:
        raise InputError("rref expects a 2-d array")
    nrows, ncols = a.shape
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        p = next((i for i in range(row, nrows) if a[i, col] != 0), None)
        if p is None:
            continue
        if p != row:
            a[[row, p]] = a[[p, row]]
        a[row] = a[row] / a[row, col]
        for i in range(nrows):
            if i != row and a[i, col] != 0:
                a[i] = a[i] - a[i, col] * a[row]
        pivots.append(col)
        row += 1
    return a[:row], pivots


def rank(m) -> int:
    m = np.asarray(m, dtype=object)
    if m.size == 0:
        return 0
    return len(rref(m)[1])


def nullspace(m) -> np.ndarray:
    """Basis (as rows) of ``{x : m @ x = 0}``, in canonical echelon form."""
    m = _as_object(m)
    ncols = m.shape[1]
    if m.shape[0] == 0:
        return identity(ncols)
    r, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = zeros((len(free), ncols))
    for k, f in enumerate(free):
        basis[k, f] = Fraction(1)
        for i, p in enumerate(pivots):
            basis[k, p] = -r[i, f]
    if len(free):
        basis, _ = rref(basis)
    return basis


def inverse(m) -> np.ndarray:
    m = _as_object(m)
    n = m.shape[0]
    if m.shape != (n, n):
        raise InputError("inverse of a non-square matrix")
    aug = np.concatenate([m, identity(n)], axis=1)
    r, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise InputError("matrix is singular")
    return r[:, n:]


class Subspace:
    """A linear subspace of an ``ambient_dim``-dimensional coordinate space.

    The canonical basis is the reduced row echelon form of the generators,
    so two Subspaces are equal exactly when their ``basis`` arrays agree.
    """

    __slots__ = ("ambient_dim", "basis", "pivots", "generators")

    def __init__(self, generators, ambient_dim: int | None = None):
        gens = [np.asarray(_as_object(g), dtype=object) for g in generators]
        if ambient_dim is None:
            if not gens:
                raise InputError("ambient_dim required for an empty generator list")
            ambient_dim = len(gens[0])
        for g in gens:
            if g.shape != (ambient_dim,):
                raise InputError(
                    f"generator of length {g.shape} in a {ambient_dim}-dimensional ambient"
                )
        self.ambient_dim = int(ambient_dim)
        if gens:
            basis, pivots = rref(np.stack(gens))
        else:
            basis, pivots = zeros((0, ambient_dim)), []
        self.basis = _freeze(basis)
        self.pivots = tuple(pivots)
        self.generators = tuple(_freeze(g.copy()) for g in gens)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls([], n)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(list(identity(n)), n)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def vectors(self) -> list[np.ndarray]:
        return [self.basis[i] for i in range(self.dim)]

    def _check(self, other: "Subspace") -> None:
        if other.ambient_dim != self.ambient_dim:
            raise InputError(
                f"ambient dimensions differ: {self.ambient_dim} vs {other.ambient_dim}"
            )

    def contains(self, v) -> bool:
        v = _as_object(v)
        if v.shape != (self.ambient_dim,):
            raise InputError("vector length does not match the ambient dimension")
        return is_zero(v - self.coordinates(v, check=False) @ self.basis) if self.dim else is_zero(v)

    def coordinates(self, v, check: bool = True) -> np.ndarray:
        """Coefficients ``c`` with ``v == c @ basis``; raises if ``v`` is outside."""
        v = _as_object(v)
        c = vector(v[p] for p in self.pivots)
        if check and not is_zero(v - c @ self.basis if self.dim else v):
            raise InputError("vector does not lie in the subspace")
        return c

    def image(self, m) -> "Subspace":
        """Image of the subspace under the linear map with matrix ``m``."""
        m = _as_object(m)
        return Subspace([m @ b for b in self.vectors()], self.ambient_dim)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.basis.shape == other.basis.shape
            and bool(np.all(self.basis == other.basis))
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, tuple(self.basis.ravel())))

    def __le__(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(b) for b in self.vectors())

    def __repr__(self) -> str:
        rows = ", ".join("[" + " ".join(str(x) for x in b) + "]" for b in self.vectors())
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, basis=[{rows}])"


def span(vectors: Sequence, ambient_dim: int | None = None) -> Subspace:
    return Subspace(list(vectors), ambient_dim)


def subspace_sum(u: Subspace, w: Subspace) -> Subspace:
    u._check(w)
    return Subspace(u.vectors() + w.vectors(), u.ambient_dim)


def intersect(u: Subspace, w: Subspace) -> Subspace:
    u._check(w)
    if u.dim == 0 or w.dim == 0:
        return Subspace.zero(u.ambient_dim)
    # a @ U == b @ W  <=>  (a, -b) in the left kernel of [U; W]
    stacked = np.concatenate([u.basis, w.basis], axis=0)
    kernel = nullspace(stacked.T)
    return Subspace([k[: u.dim] @ u.basis for k in kernel], u.ambient_dim)


def contains(w: Subspace, v) -> bool:
    return w.contains(v)


def equal(u: Subspace, w: Subspace) -> bool:
    u._check(w)
    return u == w


def complement_in(u: Subspace, w: Subspace) -> Subspace:
    """A complement of ``u`` inside ``w`` chosen greedily from ``w``'s basis."""
    u._check(w)
    if not u <= w:
        raise InputError("complement_in: first subspace is not contained in the second")
    chosen: list[np.ndarray] = []
    current = u.vectors()
    r = u.dim
    for b in w.vectors():
        if rank(np.stack(current + [b])) > r:
            current.append(b)
            chosen.append(b)
            r += 1
    return Subspace(chosen, u.ambient_dim)


def projectors(*parts: Subspace) -> list[np.ndarray]:
    """Projection matrices for a direct-sum decomposition of the ambient.

    ``P[i] @ v`` is the component of ``v`` in ``parts[i]`` along the others.
    Raises ``InputError`` unless the parts are independent and fill the space.
    """
    n = parts[0].ambient_dim
    for p in parts:
        parts[0]._check(p)
    if sum(p.dim for p in parts) != n:
        raise InputError("parts do not have complementary dimensions")
    rows = np.concatenate([p.basis for p in parts if p.dim], axis=0)
    try:
        inv = inverse(rows)  # v @ inv gives coefficients on the stacked rows
    except InputError as exc:
        raise InputError("parts are not linearly independent") from exc
    out = []
    start = 0
    for p in parts:
        sel = zeros((n, n))
        for k in range(start, start + p.dim):
            sel[k, k] = Fraction(1)
        # v -> (v @ inv @ sel @ rows); as a matrix acting on columns: (inv @ sel @ rows).T
        out.append(_freeze((inv @ sel @ rows).T.copy()))
        start += p.dim
    return out


class BilinearForm:
    """A bilinear form given by its Gram matrix in the ambient basis."""

    __slots__ = ("gram",)

    def __init__(self, gram):
        g = np.array(_as_object(gram), dtype=object, copy=True)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise InputError("Gram matrix must be square")
        self.gram = _freeze(g)

    @property
    def dim(self) -> int:
        return self.gram.shape[0]

    @property
    def symmetric(self) -> bool:
        return bool(np.all(self.gram == self.gram.T))

    def __call__(self, x, y) -> Fraction:
        return _as_object(x) @ self.gram @ _as_object(y)

    def __neg__(self) -> "BilinearForm":
        return BilinearForm(-self.gram)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BilinearForm):
            return NotImplemented
        return self.gram.shape == other.gram.shape and bool(np.all(self.gram == other.gram))

    def __hash__(self) -> int:
        return hash(tuple(self.gram.ravel()))

    def __repr__(self) -> str:
        return f"BilinearForm({self.gram.tolist()})"


def _check_dims(b: BilinearForm, w: Subspace) -> None:
    if w.ambient_dim != b.dim:
        raise InputError(f"subspace lives in dimension {w.ambient_dim}, form in {b.dim}")


def restrict_form(b: BilinearForm, w: Subspace) -> BilinearForm:
    """Gram matrix of ``b`` on the canonical basis of ``w``."""
    _check_dims(b, w)
    return BilinearForm(w.basis @ b.gram @ w.basis.T)


def radical(b: BilinearForm, w: Subspace) -> Subspace:
    """``{x in w : b(x, y) = 0 for all y in w}``."""
    _check_dims(b, w)
    if w.dim == 0:
        return Subspace.zero(b.dim)
    kernel = nullspace(restrict_form(b, w).gram)
    return Subspace([k @ w.basis for k in kernel], b.dim)


def orthogonal_complement(b: BilinearForm, w: Subspace) -> Subspace:
    """``{v : b(v, y) = 0 for all y in w}`` taken in the whole ambient."""
    _check_dims(b, w)
    if w.dim == 0:
        return Subspace.full(b.dim)
    # row k of w.basis @ gram is the functional v -> b(w_k, v)
    return Subspace(list(nullspace(w.basis @ b.gram)), b.dim)


def diagonalize(gram) -> tuple[list[Fraction], np.ndarray]:
    """Congruence diagonalization of a symmetric matrix.

    Returns ``(d, P)`` with ``P @ gram @ P.T == diag(d)`` and ``P`` invertible;
    the rows of ``P`` are therefore a ``gram``-orthogonal basis.  Uses
    simultaneous row/column elimination; a zero diagonal with a nonzero
    off-diagonal entry is repaired by adding one basis vector to another.
    """
    a = np.array(_as_object(gram), dtype=object, copy=True)
    n = a.shape[0]
    if a.shape != (n, n) or not bool(np.all(a == a.T)):
        raise InputError("diagonalize expects a symmetric square matrix")
    p = identity(n)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i, i] != 0), None)
        if piv is None:
            pair = next(
                ((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i, j] != 0),
                None,
            )
            if pair is None:
                break
            i, j = pair
            # e_i <- e_i + e_j gives new diagonal 2 a_ij
            a[i, :] += a[j, :]
            a[:, i] += a[:, j]
            p[i, :] += p[j, :]
            piv = i
        if piv != k:
            a[[k, piv], :] = a[[piv, k], :]
            a[:, [k, piv]] = a[:, [piv, k]]
            p[[k, piv], :] = p[[piv, k], :]
        for i in range(k + 1, n):
            if a[i, k] != 0:
                f = a[i, k] / a[k, k]
                a[i, :] -= f * a[k, :]
                a[:, i] -= f * a[:, k]
                p[i, :] -= f * p[k, :]
    return [a[i, i] for i in range(n)], p


def signature(b: BilinearForm) -> tuple[int, int, int]:
    """Sylvester signature ``(p, q, z)``: counts of positive, negative, zero squares."""
    if not b.symmetric:
        raise InputError("signature of a non-symmetric form")
    d, _ = diagonalize(b.gram)
    pos = sum(1 for x in d if x > 0)
    neg = sum(1 for x in d if x < 0)
    return pos, neg, len(d) - pos - neg
