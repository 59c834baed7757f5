"""Manifold specification files (JSON) and their exact round trip.

A file looks like::

    {
      "name": "gl2r",
      "dimension": 4,
      "structure_constants": [[1, 2, 2, "1"], [2, 3, 1, "1"], ...],
      "J": [["0", "0", "0", "-1"], ...],
      "g": [["-1", "0", "0", "0"], ...],
      "subspaces": {"sl2r": [["1", "0", "0", "-1"], ...]}
    }

Indices in ``structure_constants`` are 1-based and ``[i, j, k, c]`` means the
coefficient of ``X_k`` in ``[X_i, X_j]``; the antisymmetric partner is
implied.  ``J`` acts on column vectors.  Scalars are integers or strings
``"p/q"``; floats are rejected because they are not exact.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import linalg as la
from .errors import InputError
from .lie import LieAlgebraAmbient, make_ambient
from .linalg import Subspace
from .norden import ComplexStructure, validate_norden_pair

FIELDS = ("name", "dimension", "structure_constants", "J", "g", "subspaces")


class SpecError(InputError):
    """A spec file could not be parsed; ``where`` names the line or field."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where
        self.message = message


def _line_of(text: str, field: str) -> int | None:
    key = f'"{field}"'
    for no, line in enumerate(text.splitlines(), 1):
        if key in line:
            return no
    return None


@dataclass(frozen=True, eq=False)
class ManifoldSpec:
    name: str
    ambient: LieAlgebraAmbient
    subspaces: dict[str, Subspace]

    def subspace(self, name: str) -> Subspace:
        try:
            return self.subspaces[name]
        except KeyError:
            raise InputError(
                f"no subspace {name!r} in {self.name}; known: {sorted(self.subspaces)}"
            ) from None


def format_scalar(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _scalar(value, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise SpecError(where, f"expected an integer or a 'p/q' string, got {json.dumps(value)}")
    try:
        return la.frac(value)
    except InputError as exc:
        raise SpecError(where, str(exc)) from None


def _matrix(value, n: int, where: str) -> np.ndarray:
    if not isinstance(value, list) or len(value) != n:
        raise SpecError(where, f"expected a list of {n} rows")
    out = la.zeros((n, n))
    for i, row in enumerate(value):
        if not isinstance(row, list) or len(row) != n:
            raise SpecError(f"{where}[{i}]", f"expected a row of {n} entries")
        for j, x in enumerate(row):
            out[i, j] = _scalar(x, f"{where}[{i}][{j}]")
    return out


def _structure(value, n: int) -> np.ndarray:
    where = "structure_constants"
    if not isinstance(value, list):
        raise SpecError(where, "expected a list of [i, j, k, value] entries")
    c = la.zeros((n, n, n))
    seen: dict[tuple[int, int, int], Fraction] = {}
    for t, entry in enumerate(value):
        here = f"{where}[{t}]"
        if not isinstance(entry, list) or len(entry) != 4:
            raise SpecError(here, "expected [i, j, k, value]")
        idx = []
        for pos, v in enumerate(entry[:3]):
            if isinstance(v, bool) or not isinstance(v, int) or not 1 <= v <= n:
                raise SpecError(f"{here}[{pos}]", f"index must be an integer in 1..{n}")
            idx.append(v - 1)
        i, j, k = idx
        val = _scalar(entry[3], f"{here}[3]")
        for key, x in (((i, j, k), val), ((j, i, k), -val)):
            if key in seen and seen[key] != x:
                raise SpecError(here, "conflicts with an earlier entry for the same bracket")
            seen[key] = x
        if i == j and val != 0:
            raise SpecError(here, "[X_i, X_i] must vanish")
    for (i, j, k), x in seen.items():
        c[i, j, k] = x
    return c


def parse_spec(text: str, source: str = "<spec>") -> ManifoldSpec:
    """Parse and validate a spec document.

    Errors name ``source:line`` (the line where the offending top-level field
    starts) and the field path, e.g. ``spec.json:7: g[1][0]``.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{source}:{exc.lineno}:{exc.colno}", exc.msg) from None
    try:
        return _build(doc, source)
    except SpecError as exc:
        if exc.where.startswith(source):
            raise
        top = re.split(r"[.\[]", exc.where, maxsplit=1)[0]
        line = _line_of(text, top)
        prefix = f"{source}:{line}" if line else source
        raise SpecError(f"{prefix}: {exc.where}", exc.message) from None


def _build(doc, source: str) -> ManifoldSpec:
    if not isinstance(doc, dict):
        raise SpecError(source, "top level must be an object")
    missing = [f for f in FIELDS if f not in doc]
    if missing:
        raise SpecError(source, f"missing field(s): {', '.join(missing)}")
    unknown = sorted(set(doc) - set(FIELDS))
    if unknown:
        raise SpecError(source, f"unknown field(s): {', '.join(unknown)}")
    name = doc["name"]
    if not isinstance(name, str):
        raise SpecError("name", "expected a string")
    n = doc["dimension"]
    if isinstance(n, bool) or not isinstance(n, int) or n <= 0:
        raise SpecError("dimension", "expected a positive integer")
    if n % 2:
        raise SpecError("dimension", "a Norden pair needs an even dimension")
    c = _structure(doc["structure_constants"], n)
    j = _matrix(doc["J"], n, "J")
    g = _matrix(doc["g"], n, "g")
    try:
        jm = ComplexStructure(j)
    except InputError as exc:
        raise SpecError("J", str(exc)) from None
    try:
        pair = validate_norden_pair(jm, g)
    except InputError as exc:
        raise SpecError("g", str(exc)) from None
    try:
        ambient = make_ambient(c, pair, None, name)
    except InputError as exc:
        raise SpecError("structure_constants", str(exc)) from None
    subs_doc = doc["subspaces"]
    if not isinstance(subs_doc, dict):
        raise SpecError("subspaces", "expected an object mapping names to row lists")
    subs = {}
    for key in subs_doc:
        rows = subs_doc[key]
        where = f"subspaces.{key}"
        if not isinstance(rows, list) or not rows:
            raise SpecError(where, "expected a non-empty list of coordinate rows")
        vecs = []
        for r, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != n:
                raise SpecError(f"{where}[{r}]", f"expected a row of {n} entries")
            vecs.append(la.vector(_scalar(x, f"{where}[{r}][{q}]") for q, x in enumerate(row)))
        subs[key] = Subspace(vecs, n)
    return ManifoldSpec(name, ambient, subs)


def load_spec(path: str | Path) -> ManifoldSpec:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise SpecError(str(p), f"cannot read file ({exc.strerror})") from None
    return parse_spec(text, str(p))


def spec_document(name: str, ambient: LieAlgebraAmbient, subspaces: dict[str, Subspace]) -> dict:
    c = ambient.structure_constants
    n = ambient.dim
    entries = [
        [i + 1, j + 1, k + 1, format_scalar(c[i, j, k])]
        for i in range(n)
        for j in range(i + 1, n)
        for k in range(n)
        if c[i, j, k] != 0
    ]

    def mat(m):
        return [[format_scalar(x) for x in row] for row in m]

    return {
        "name": name,
        "dimension": n,
        "structure_constants": entries,
        "J": mat(ambient.J.J),
        "g": mat(ambient.norden.g.gram),
        "subspaces": {k: mat(subspaces[k].basis) for k in sorted(subspaces)},
    }


def dump_spec(name: str, ambient: LieAlgebraAmbient, subspaces: dict[str, Subspace]) -> str:
    return json.dumps(spec_document(name, ambient, subspaces), indent=2, sort_keys=True) + "\n"
