from fractions import Fraction

import numpy as np
import pytest
import sympy

from nordenlight import catalog, lie
from nordenlight import linalg as la
from nordenlight.catalog import SeededGenerator
from nordenlight.errors import InputError, PreconditionError
from nordenlight.residuals import all_passed


def _unit(p, q):
    return sympy.Matrix(2, 2, lambda i, j: 1 if (i, j) == (p, q) else 0)


POSITIONS = [(0, 0), (0, 1), (1, 0), (1, 1)]


def sympy_structure_constants(complex_basis):
    """Brackets of the matrix basis straight from sympy commutators."""
    basis = []
    for p, q in POSITIONS:
        basis.append(_unit(p, q))
        if complex_basis:
            basis.append(sympy.I * _unit(p, q))

    def coords(m):
        out = []
        for p, q in POSITIONS:
            z = sympy.expand(m[p, q])
            out.append(sympy.re(z))
            if complex_basis:
                out.append(sympy.im(z))
        return out

    n = len(basis)
    return [[coords(basis[i] * basis[j] - basis[j] * basis[i]) for j in range(n)] for i in range(n)]


def sympy_connection(c, gram):
    """Koszul formula solved with sympy matrices."""
    n = len(gram)
    g = sympy.Matrix(gram)
    ginv = g.inv()

    def gv(x, y):
        return (sympy.Matrix([x]) * g * sympy.Matrix(y))[0]

    e = [[int(i == j) for j in range(n)] for i in range(n)]
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            rhs = sympy.Matrix(
                [(gv(c[i][j], e[k]) + gv(c[k][i], e[j]) + gv(c[k][j], e[i])) / 2 for k in range(n)]
            )
            row.append(list(ginv * rhs))
        out.append(row)
    return out


def as_fractions(nested):
    return np.vectorize(lambda x: Fraction(int(sympy.fraction(x)[0]), int(sympy.fraction(x)[1])), otypes=[object])(
        np.array(nested, dtype=object)
    )


@pytest.mark.parametrize("name, complex_basis", [("gl2r", False), ("gl2c", True)])
def test_structure_constants_match_matrix_commutators(name, complex_basis):
    amb = catalog.load_builtin(name).ambient
    want = as_fractions(sympy_structure_constants(complex_basis))
    assert np.all(amb.structure_constants == want)


def test_named_brackets(gl2r):
    a = gl2r.ambient
    X = gl2r.named_vectors
    assert np.all(a.bracket(X["X2"], X["X3"]) == X["X1"] - X["X4"])
    assert la.is_zero(a.bracket(X["X1"], X["X4"]))
    assert np.all(a.bracket(X["X1"], X["X2"]) == X["X2"])


@pytest.mark.parametrize("name", ["gl2r", "gl2c"])
def test_levi_civita_matches_independent_koszul_solve(name):
    amb = catalog.load_builtin(name).ambient
    c = amb.structure_constants.tolist()
    for which in ("g", "gtilde"):
        gram = amb.metric(which).gram.tolist()
        want = as_fractions(sympy_connection(c, gram))
        assert np.all(amb.connection(which) == want), which


def test_frozen_connection_values(gl2r):
    nab = gl2r.ambient.nabla
    half = Fraction(1, 2)
    assert nab[1, 2].tolist() == [half, 0, 0, -half]
    assert nab[2, 1].tolist() == [-half, 0, 0, half]
    assert nab[0, 1].tolist() == [0, 0, -half, 0]
    assert la.is_zero(nab[0, 0])


@pytest.mark.parametrize("seed", range(2))
def test_connection_is_basis_independent(gl2c, seed):
    a = gl2c.ambient
    p, _ = SeededGenerator(seed, bound=2).invertible(a.dim)
    moved = lie.change_basis(a, p)
    # moved.nabla is expressed in the rows of p; pull back to old coordinates
    for i in range(a.dim):
        for j in range(a.dim):
            old = lie.covariant(a.nabla, p[i], p[j])
            assert np.all(moved.nabla[i, j] @ p == old)
    assert moved.kaehler_report.kaehler


def test_permuted_basis_permutes_tables(gl2r):
    a = gl2r.ambient
    perm = [2, 0, 3, 1]
    p = la.identity(4)[perm]
    moved = lie.change_basis(a, p)
    assert np.all(moved.nabla == a.nabla[np.ix_(perm, perm, perm)])
    assert np.all(moved.structure_constants == a.structure_constants[np.ix_(perm, perm, perm)])


@pytest.mark.parametrize("name", ["gl2r", "gl2c"])
def test_structure_and_bridge_identities(name):
    a = catalog.load_builtin(name).ambient
    assert all_passed(lie.structure_checks(a))
    assert all_passed(lie.bridge_checks(a))


def test_gl2r_is_not_kaehler(gl2r):
    rep = lie.kaehler_check(gl2r.ambient)
    assert not rep.kaehler
    assert rep.checks["F_vanishes"].nonzero > 0
    assert not lie.j_bi_invariant(gl2r.ambient)
    with pytest.raises(PreconditionError):
        lie.require_kaehler(gl2r.ambient)


def test_gl2c_kaehler_certificate(gl2c):
    a = gl2c.ambient
    rep = lie.kaehler_check(a)
    assert rep.kaehler and rep.passed
    assert rep.checks["F_vanishes"].evaluations == 512
    assert la.is_zero(lie.f3_table(a))
    assert np.all(a.nabla == a.nabla_tilde)
    lie.require_kaehler(a)


def _random_norden_metric(ambient, seed):
    """Project a random symmetric matrix onto ``J^T S J = -S``; retry until nondegenerate."""
    J = ambient.J.J
    gen = SeededGenerator(seed, bound=2)
    while True:
        m, gen = gen.matrix(ambient.dim, ambient.dim, sparse=True)
        s = m + m.T
        g = (s - J.T @ s @ J) / 2
        if la.rank(g) == ambient.dim:
            return g


@pytest.mark.parametrize("seed", range(3))
def test_bi_invariant_structure_makes_every_norden_metric_kaehler(gl2c, seed):
    a = gl2c.ambient
    b = lie.make_ambient(a.structure_constants, a.J.J, _random_norden_metric(a, seed))
    assert lie.j_bi_invariant(b)
    rep = lie.kaehler_check(b)
    assert rep.kaehler and rep.passed


def test_non_bi_invariant_structure_breaks_kaehler(gl2c):
    a = gl2c.ambient
    e = la.identity(8)
    cols = [None] * 8
    for p, q in ((0, 2), (1, 3), (4, 6), (5, 7)):
        cols[p], cols[q] = e[q], -e[p]
    g = np.diag(np.array([Fraction(v) for v in (1, 1, -1, -1, 1, 1, -1, -1)], dtype=object))
    b = lie.make_ambient(a.structure_constants, np.stack(cols, axis=1), g, "mixed")
    assert not lie.j_bi_invariant(b)
    rep = lie.kaehler_check(b)
    assert not rep.kaehler
    assert all_passed(lie.bridge_checks(b))
    assert all_passed(lie.structure_checks(b))
    assert not la.is_zero(lie.phi(b).phi_table)


def test_abelian_ambient_is_flat(gl2c):
    a = lie.abelian(gl2c.ambient)
    assert la.is_zero(a.nabla) and la.is_zero(a.nabla_tilde)
    assert la.is_zero(lie.curvature_04(a, "g"))
    assert a.kaehler_report.kaehler and a.kaehler_report.passed


def test_curvature_agrees_with_table(gl2r):
    a = gl2r.ambient
    e = la.identity(4)
    for which in ("g", "gtilde"):
        table = lie.curvature_table(a.structure_constants, a.connection(which))
        for i in range(4):
            for j in range(4):
                for k in range(4):
                    assert np.all(lie.curvature(a, which, e[i], e[j], e[k]) == table[i, j, k])


def test_f3_tensor_is_trilinear(gl2r):
    a = gl2r.ambient
    f = lie.f3_table(a)
    x, y, z = la.vector([1, 2, 0, -1]), la.vector([0, 1, 1, 0]), la.vector([3, 0, 0, 1])
    want = sum(x[i] * y[j] * z[k] * f[i, j, k] for i in range(4) for j in range(4) for k in range(4))
    assert lie.f3_tensor(a, x, y, z) == want


def test_phi_components_reconstruct(gl2r):
    a = gl2r.ambient
    w = gl2r.subspace("sl2r")
    rest = la.complement_in(w, la.Subspace.full(4))
    split = lie.phi(a, (w, rest))
    assert split.reconstructs()
    assert len(split.components) == 2


def test_make_ambient_validation(gl2r):
    a = gl2r.ambient
    c = np.array(a.structure_constants, copy=True)
    c[0, 1, 1] = Fraction(2)
    with pytest.raises(InputError, match="antisymmetric"):
        lie.make_ambient(c, a.J.J, a.norden.g.gram)
    # antisymmetric but not a Lie bracket
    bad = la.zeros((4, 4, 4))
    bad[0, 1, 2], bad[1, 0, 2] = Fraction(1), Fraction(-1)
    bad[1, 2, 1], bad[2, 1, 1] = Fraction(1), Fraction(-1)
    with pytest.raises(InputError, match="Jacobi"):
        lie.make_ambient(bad, a.J.J, a.norden.g.gram)
    with pytest.raises(InputError):
        lie.make_ambient(la.zeros((2, 2, 2)), a.J.J, a.norden.g.gram)
    with pytest.raises(InputError):
        lie.bracket(a, la.zeros(3), la.zeros(4))


def test_subalgebra_detection(gl2r, gl2c):
    assert gl2r.ambient.is_subalgebra(gl2r.subspace("sl2r"))
    assert not gl2r.ambient.is_subalgebra(gl2r.subspace("off_diagonal"))
    for name in ("u2", "su2", "sl2r", "gl2r", "borel_real", "diagonal"):
        assert gl2c.ambient.is_subalgebra(gl2c.subspace(name)), name
