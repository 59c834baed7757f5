import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nordenlight import linalg as la
from nordenlight import norden as nd
from nordenlight.catalog import SeededGenerator, random_subspace
from nordenlight.errors import InputError, MetricError, PreconditionError, StructureError, TheoremViolation

J2 = [[0, -1], [1, 0]]
G2 = [[1, 0], [0, -1]]


def test_smallest_norden_pair():
    pair = nd.validate_norden_pair(J2, G2)
    assert pair.dim == 2 and pair.half_dim == 1
    assert pair.g_assoc.symmetric
    assert la.signature(pair.g) == (1, 1, 0)
    # the associated metric is itself a Norden metric for the same J
    nd.validate_norden_pair(pair.J, pair.g_assoc)


@pytest.mark.parametrize(
    "J, g, error",
    [
        ([[1, 0], [0, 1]], G2, StructureError),
        (J2, [[1, 1], [0, -1]], MetricError),
        (J2, [[1, 0], [0, 0]], MetricError),
        (J2, [[1, 0], [0, 1]], MetricError),
        ([[0]], [[1]], InputError),
        (J2, la.identity(4), InputError),
    ],
)
def test_invalid_pairs_are_rejected(J, g, error):
    with pytest.raises(error):
        nd.validate_norden_pair(J, g)


def test_unknown_metric_name(gl2r):
    with pytest.raises(InputError):
        gl2r.ambient.norden.metric("h")


@pytest.mark.parametrize(
    "r, m, n, tag",
    [
        (0, 2, 2, "nondegenerate"),
        (1, 3, 3, "r-lightlike"),
        (1, 3, 1, "coisotropic"),
        (2, 2, 6, "isotropic"),
        (4, 4, 4, "totally_lightlike"),
        (1, 1, 3, "isotropic"),
        (1, 1, 1, "totally_lightlike"),
    ],
)
def test_case_tags(r, m, n, tag):
    assert nd.case_tag(r, m, n) == tag


def test_case_tag_rejects_impossible_rank():
    with pytest.raises(InputError):
        nd.case_tag(3, 2, 5)


def test_improper_subspaces_are_refused(gl2c):
    pair = gl2c.ambient.norden
    with pytest.raises(PreconditionError):
        nd.classify_degeneracy(pair, la.Subspace.full(8))
    with pytest.raises(PreconditionError):
        nd.classify_degeneracy(pair, la.Subspace.zero(8))
    with pytest.raises(InputError):
        nd.classify_degeneracy(pair, la.Subspace.full(4))


def test_sl2r_lightlike_data(gl2r):
    pair = gl2r.ambient.norden
    X = gl2r.named_vectors
    w = gl2r.subspace("sl2r")
    deg = nd.classify_degeneracy(pair, w, "g")
    assert (deg.kind, deg.r, deg.m, deg.n) == ("coisotropic", 1, 3, 1)
    split = nd.build_lightlike_splitting(pair, w, "g")
    assert split.valid
    assert split.rad == la.span([X["X1"] - X["X4"]])
    rt = nd.radical_transversal_splitting(pair, w, "g")
    assert rt is not None
    assert rt.ltr == pair.J.image(rt.rad)
    assert rt.screen == la.span([X["X2"], X["X3"]])
    assert nd.is_radical_transversal(rt, pair.J).holds


def test_default_splitting_frame_pairs_with_radical(gl2c):
    pair = gl2c.ambient.norden
    split = nd.build_lightlike_splitting(pair, gl2c.subspace("su2"), "gtilde")
    b = pair.g_assoc
    assert split.case_tag == "isotropic" and split.r == 3
    assert [[b(x, n) for n in split.N] for x in split.xi] == la.identity(3).tolist()
    assert all(b(n, m) == 0 for n in split.N for m in split.N)


def test_explicit_bundles_are_validated(gl2r):
    pair = gl2r.ambient.norden
    w = gl2r.subspace("sl2r")
    X = gl2r.named_vectors
    # a screen containing the radical is not a complement of it
    bad_screen = la.span([X["X1"] - X["X4"], X["X2"]])
    with pytest.raises((InputError, PreconditionError)):
        nd.build_lightlike_splitting(pair, w, "g", screen=bad_screen)


def test_splitting_needs_degeneracy(gl2c):
    with pytest.raises(PreconditionError):
        nd.build_lightlike_splitting(gl2c.ambient.norden, gl2c.subspace("u2"), "g")
    with pytest.raises(PreconditionError):
        nd.radical_transversal_splitting(gl2c.ambient.norden, gl2c.subspace("u2"), "g")


def test_complex_types_of_named_subspaces(gl2r, gl2c):
    cases = [
        (gl2r, "off_diagonal", "g", "holomorphic"),
        (gl2r, "sl2r", "gtilde", "generic"),
        (gl2c, "diagonal", "g", "holomorphic"),
        (gl2c, "u2", "g", "lagrangian"),
        (gl2c, "su2", "g", "totally_real"),
    ]
    for entry, name, which, kind in cases:
        ct = nd.classify_complex_type(entry.ambient.norden, entry.subspace(name), which)
        assert ct.kind == kind, (entry.name, name)
        assert ct.is_cr


def test_complex_type_refuses_degenerate(gl2r):
    with pytest.raises(PreconditionError):
        nd.classify_complex_type(gl2r.ambient.norden, gl2r.subspace("sl2r"), "g")


def test_holomorphic_subspace_is_holomorphic_for_both_metrics(gl2c):
    pair = gl2c.ambient.norden
    w = gl2c.subspace("diagonal")
    rep = nd.cross_classify(pair, w)
    assert rep.g.complex_type.kind == rep.gtilde.complex_type.kind == "holomorphic"
    assert "holomorphic: g nondegenerate <-> gtilde nondegenerate" in rep.asserted


def test_j_split_identities(gl2c):
    pair = gl2c.ambient.norden
    w = gl2c.subspace("su2")
    data = nd.j_split(pair, w, la.orthogonal_complement(pair.g, w))
    assert all(nd.j_split_checks(pair, data).values())
    # totally real: J sends W entirely into the complement
    assert all(la.is_zero(data.T_map @ x) for x in w.vectors())
    with pytest.raises(InputError):
        nd.j_split(pair, w, w)


def test_cr_frames(gl2r, gl2c):
    for entry, name, which in ((gl2r, "sl2r", "gtilde"), (gl2c, "su2", "g"), (gl2c, "u2", "g")):
        checks = nd.cr_structure_checks(entry.ambient.norden, entry.subspace(name), which)
        assert all(checks.values()), (name, checks)
    with pytest.raises(PreconditionError):
        nd.cr_structure_checks(gl2c.ambient.norden, gl2c.subspace("diagonal"), "g")


def test_dictionary_pairs_named_subspaces(gl2r, gl2c):
    rep = nd.cross_classify(gl2r.ambient.norden, gl2r.subspace("sl2r"))
    assert rep.g.degeneracy.kind == "coisotropic" and rep.g.radical_transversal
    assert rep.gtilde.complex_type.kind == "generic"
    assert any("generic" in a and "coisotropic" in a for a in rep.asserted)
    rep = nd.cross_classify(gl2c.ambient.norden, gl2c.subspace("u2"))
    assert rep.gtilde.degeneracy.kind == "totally_lightlike"
    rep = nd.cross_classify(gl2c.ambient.norden, gl2c.subspace("su2"))
    assert rep.gtilde.degeneracy.kind == "isotropic" and rep.gtilde.radical_transversal


def test_dictionary_raises_on_a_broken_correspondence(gl2r):
    pair = gl2r.ambient.norden
    w = gl2r.subspace("sl2r")
    real = nd.cross_classify(pair, w)
    fake = nd.SideReport("g", real.g.degeneracy, radical_transversal=False)
    with pytest.raises(TheoremViolation):
        nd._dictionary(pair, real.gtilde, fake)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["gl2r", "gl2c"]), st.integers(0, 2**63))
def test_random_subspaces_split_and_cross_classify(name, seed):
    from nordenlight import catalog

    pair = catalog.load_builtin(name).ambient.norden
    gen = SeededGenerator(seed, bound=1)
    dim = seed % (pair.dim - 1) + 1
    w = random_subspace(gen, pair, dim)
    rep = nd.cross_classify(pair, w)
    for side in (rep.g, rep.gtilde):
        if side.degeneracy.degenerate:
            split = nd.build_lightlike_splitting(pair, w, side.metric)
            assert split.valid
            assert split.case_tag == side.degeneracy.kind
            if side.split is not None:
                assert side.split.valid
                assert side.split.ltr == pair.J.image(side.split.rad)
        else:
            assert side.complex_type.kind in nd.COMPLEX_KINDS


def _shifted(vectors, rad, gen):
    """Move each vector by a random radical combination: another complement of Rad."""
    coeffs = gen.integers((len(vectors), len(rad)), salt=5)
    return [v + sum((c * x for c, x in zip(row, rad)), la.zeros(len(v))) for v, row in zip(vectors, coeffs)]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["gl2r", "gl2c"]), st.integers(0, 2**63))
def test_classification_ignores_the_screen_choice(name, seed):
    from nordenlight import catalog

    pair = catalog.load_builtin(name).ambient.norden
    gen = SeededGenerator(seed, bound=1)
    w = random_subspace(gen, pair, seed % (pair.dim - 1) + 1)
    for which in ("g", "gtilde"):
        deg = nd.classify_degeneracy(pair, w, which)
        if not deg.degenerate:
            continue
        base = nd.build_lightlike_splitting(pair, w, which)
        rad = base.rad.vectors()
        alt_gen = gen.child(9)
        screen = la.span(_shifted(list(base.X), rad, alt_gen), pair.dim)
        screen_perp = la.span(_shifted(list(base.Wa), rad, alt_gen.advance()), pair.dim)
        other = nd.build_lightlike_splitting(pair, w, which, screen=screen, screen_perp=screen_perp)
        assert other.valid
        assert other.case_tag == base.case_tag == deg.kind
        assert other.rad == base.rad and other.W_perp == base.W_perp
