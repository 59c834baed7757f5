from fractions import Fraction

import numpy as np
import pytest

from nordenlight import catalog, lie
from nordenlight import linalg as la
from nordenlight import submanifold as sm
from nordenlight.errors import PreconditionError
from nordenlight.residuals import all_passed

SUBALGEBRAS = ("su2", "sl2r", "borel_real")


@pytest.fixture(scope="module")
def prepared():
    entry = catalog.load_builtin("gl2c")
    out = {}
    for name in SUBALGEBRAS:
        setting = sm.totally_real_setting(entry.ambient, entry.subspace(name))
        out[name] = (setting, sm.gauss_weingarten(setting))
    return out


@pytest.fixture(scope="module")
def mixed_ambient():
    """gl(2, C) with a complex structure that does not commute with brackets."""
    base = catalog.load_builtin("gl2c").ambient
    e = la.identity(8)
    cols = [None] * 8
    for p, q in ((0, 2), (1, 3), (4, 6), (5, 7)):
        cols[p], cols[q] = e[q], -e[p]
    g = np.diag(np.array([Fraction(v) for v in (1, 1, -1, -1, 1, 1, -1, -1)], dtype=object))
    return lie.make_ambient(base.structure_constants, np.stack(cols, axis=1), g, "mixed")


def _intrinsic_connection(ambient, w, which):
    """Levi-Civita connection of the restricted metric, from the subalgebra's own brackets."""
    basis = w.vectors()
    m = len(basis)
    c = la.zeros((m, m, m))
    for i in range(m):
        for j in range(m):
            c[i, j] = w.coordinates(ambient.bracket(basis[i], basis[j]))
    return lie.levi_civita(c, la.restrict_form(ambient.metric(which), w))


def test_setting_decomposition(prepared):
    for name, (setting, _) in prepared.items():
        assert all(setting.checks().values()), name
        assert setting.normal == la.orthogonal_complement(setting.ambient.norden.g, setting.W)


@pytest.mark.parametrize("name", SUBALGEBRAS)
def test_induced_connection_is_intrinsic(prepared, name):
    setting, data = prepared[name]
    w = setting.W
    want = _intrinsic_connection(setting.ambient, w, "g")
    got = data.tables["nabla"]
    for i in range(w.dim):
        for j in range(w.dim):
            assert np.all(w.coordinates(got[i, j]) == want[i, j])


def test_su2_second_fundamental_forms_vanish(prepared):
    _, data = prepared["su2"]
    for key in ("h1", "h2", "A_N", "A_W", "tilde_h1", "tilde_h2", "tilde_A_W"):
        assert la.is_zero(data.tables[key]), key
    assert not la.is_zero(data.tables["nabla"])


def test_borel_has_nonzero_screen_transversal_form(prepared):
    _, data = prepared["borel_real"]
    assert la.is_zero(data.tables["h1"])
    assert la.is_zero(data.tables["A_N"])
    for key in ("h2", "A_W", "d1", "d2", "tilde_h2"):
        assert not la.is_zero(data.tables[key]), key


@pytest.mark.parametrize("name", SUBALGEBRAS)
def test_identity_suite_is_exact(prepared, name):
    _, data = prepared[name]
    ids = sm.identity_suite(data)
    failing = [k for k, v in ids.items() if not v.passed]
    assert not failing
    assert any(k.startswith("kaehler_equal") for k in ids)
    assert all(v.evaluations > 0 for v in ids.values())


@pytest.mark.parametrize("name, geodesic", [("su2", True), ("sl2r", True), ("borel_real", False)])
def test_otsuki_and_geodesic_verdicts(prepared, name, geodesic):
    _, data = prepared[name]
    ot = sm.otsuki_report(data)
    assert ot.verdict is geodesic
    geo = sm.geodesic_report(data)
    assert len(geo.conditions) == 10
    assert set(geo.conditions.values()) == {geodesic}


@pytest.mark.parametrize("name", SUBALGEBRAS)
def test_curvature_suite_is_exact(prepared, name):
    setting, _ = prepared[name]
    rep = sm.curvature_suite(setting)
    failing = [k for k, v in rep.residuals.items() if not v.passed]
    assert not failing
    assert sum(k.startswith("tilde_structure_") for k in rep.residuals) == 7
    assert len(set(rep.flatness.values())) == 1


def test_su2_curvature_tables(prepared):
    setting, _ = prepared["su2"]
    rep = sm.curvature_suite(setting)
    assert not any(rep.flatness.values())
    # both induced connections coincide on a Kaehler ambient
    assert np.all(rep.tables["R"] == rep.tables["R_tilde"])


def test_identity_suite_without_kaehler(mixed_ambient):
    e = la.identity(8)
    w = la.span([e[1], e[6] + e[7]])
    setting = sm.totally_real_setting(mixed_ambient, w)
    data = sm.gauss_weingarten(setting)
    ids = sm.identity_suite(data)
    assert all_passed(ids)
    assert not any(k.startswith("kaehler") for k in ids)
    sm.otsuki_report(data)
    with pytest.raises(PreconditionError):
        sm.geodesic_report(data)
    with pytest.raises(PreconditionError):
        sm.curvature_suite(setting)


def test_abelian_ambient_is_trivially_geodesic_and_flat(gl2c):
    amb = catalog.abelian_entry("gl2c").ambient
    setting = sm.totally_real_setting(amb, gl2c.subspace("su2"))
    data = sm.gauss_weingarten(setting)
    assert all(la.is_zero(t) for t in data.tables.values())
    assert sm.geodesic_report(data).verdict
    rep = sm.curvature_suite(setting)
    assert rep.passed and all(rep.flatness.values())


@pytest.mark.parametrize(
    "name, reason",
    [("u2", "m <"), ("gl2r", "totally real"), ("diagonal", "totally real")],
)
def test_setting_preconditions(gl2c, name, reason):
    with pytest.raises(PreconditionError, match=reason):
        sm.totally_real_setting(gl2c.ambient, gl2c.subspace(name))


def test_setting_requires_a_subalgebra(gl2c):
    e = la.identity(8)
    w = la.span([e[2] + e[7], e[4] - e[7]])
    with pytest.raises(PreconditionError, match="bracket"):
        sm.totally_real_setting(gl2c.ambient, w)
