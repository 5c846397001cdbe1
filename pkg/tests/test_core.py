import random

import pytest
from hypothesis import given, settings, strategies as st

from pascalconf import (
    BinomialSignature,
    ConfigurationType,
    IncidenceError,
    IncidenceStructure,
    binomial_signature,
    build,
    configuration_type,
    dual,
    is_partial_linear_space,
    line_size,
    lines_through,
    point_rank,
    points_on,
    structurally_equal,
)
from pascalconf.core import line_sizes, point_ranks
from pascalconf.families import complete_graph, gras_space, grassmannian_G, veblen, veronesian

from oracles import binom, desargues, fano, k4, naive_is_pls, random_structure, triangle


def test_build_triangle():
    K = triangle()
    assert K.num_points == 3
    assert K.num_lines == 3
    assert K.points == ("a", "b", "c")
    assert K.points_on("ca") == ["a", "c"]


def test_build_empty():
    K = build([], [])
    assert K.num_points == 0 and K.num_lines == 0
    assert is_partial_linear_space(K)
    assert configuration_type(K) == ConfigurationType(0, 0, 0, 0)


@pytest.mark.parametrize(
    "points, lines",
    [
        (["a", "b", "a"], []),
        (["a", "b"], [("l", ["a"]), ("l", ["b"])]),
        (["a", "b"], [("l", ["a", "z"])]),
        (["a", "b"], [("a", ["b"])]),
    ],
    ids=["duplicate-point", "duplicate-line", "unknown-point", "id-clash"],
)
def test_build_rejects(points, lines):
    with pytest.raises(IncidenceError):
        build(points, lines)


def test_incidence_pairs_must_reference_known_elements():
    with pytest.raises(IncidenceError):
        IncidenceStructure(["a"], ["l"], [("a", "m")])


def test_ranks_and_sizes_k4():
    K = k4()
    assert all(point_rank(K, p) == 3 for p in K.points)
    assert all(line_size(K, ln) == 2 for ln in K.lines)
    assert sorted(lines_through(K, "a")) == ["ab", "ac", "ad"]


def test_rank_zero_and_empty_line():
    K = build(["a", "b", "c"], [("l", ["a", "b"]), ("e", [])])
    assert point_rank(K, "c") == 0
    assert line_size(K, "e") == 0
    assert points_on(K, "e") == []


def test_unknown_element_errors():
    K = k4()
    with pytest.raises(IncidenceError):
        point_rank(K, "zz")
    with pytest.raises(IncidenceError):
        points_on(K, "zz")


def test_desargues_ranks():
    K = desargues()
    assert set(point_ranks(K)) == {3}
    assert set(line_sizes(K)) == {3}
    assert all(len(lines_through(K, p)) == 3 for p in K.points)


def test_veblen_line_sizes():
    assert set(line_sizes(veblen())) == {3}


@pytest.mark.parametrize(
    "K, expected",
    [
        (k4(), True),
        (fano(), True),
        (veronesian(3, 3), True),
        (build(list("abcd"), [("l", list("abc")), ("m", list("abd"))]), False),
    ],
)
def test_partial_linear_space(K, expected):
    assert is_partial_linear_space(K) is expected


def test_configuration_types():
    assert configuration_type(k4()) == ConfigurationType(4, 3, 6, 2)
    assert configuration_type(veblen()) == ConfigurationType(6, 2, 4, 3)
    assert configuration_type(fano()) == ConfigurationType(7, 3, 7, 3)
    mixed = build(list("abcdefg"), [("l", list("abc")), ("m", list("defg"))])
    assert configuration_type(mixed) is None


def test_configuration_type_rejects_non_pls():
    K = build(list("abc"), [("l", list("abc")), ("m", list("abc"))])
    assert configuration_type(K) is None


@pytest.mark.parametrize(
    "t, sig",
    [
        (ConfigurationType(10, 3, 10, 3), (3, 3)),
        (ConfigurationType(4, 3, 6, 2), (3, 2)),
        (ConfigurationType(6, 2, 4, 3), (2, 3)),
        (ConfigurationType(7, 3, 7, 3), None),
        (ConfigurationType(1, 1, 1, 1), (1, 1)),
        (ConfigurationType(0, 0, 0, 0), None),
    ],
)
def test_binomial_signature(t, sig):
    got = binomial_signature(t)
    assert (None if got is None else (got.k, got.m)) == sig


def test_binomial_signature_none_input():
    assert binomial_signature(None) is None


@pytest.mark.parametrize("k", range(1, 7))
@pytest.mark.parametrize("m", range(1, 7))
def test_binomial_signature_against_factorials(k, m):
    n = k + m - 1
    t = ConfigurationType(binom(n, k), k, binom(n, m), m)
    assert binomial_signature(t) == BinomialSignature(k, m)
    # perturb the point count: no longer binomial
    assert binomial_signature(ConfigurationType(t.nu + 1, k, t.beta, m)) is None


def test_signature_type_and_dual():
    sig = BinomialSignature(3, 2)
    assert sig.n == 4
    assert sig.configuration_type() == ConfigurationType(4, 3, 6, 2)
    assert sig.dual() == BinomialSignature(2, 3)
    with pytest.raises(ValueError):
        BinomialSignature(0, 2)


def test_type_str():
    assert str(ConfigurationType(10, 3, 10, 3)) == "(10_3 10_3)"


def test_dual_k4_type():
    assert configuration_type(dual(k4())) == ConfigurationType(6, 2, 4, 3)


def test_dual_is_involution():
    K = desargues()
    assert structurally_equal(dual(dual(K)), K)
    assert dual(dual(K)) == K


def test_dual_swaps_incidence():
    K = k4()
    D = dual(K)
    assert D.points == K.lines and D.lines == K.points
    assert D.incidence == frozenset((ln, p) for p, ln in K.incidence)


def test_grassmannian_g33_ranks():
    K = grassmannian_G(3, 3)
    assert set(point_ranks(K)) == {3}


def test_relabel():
    K = k4()
    R = K.relabel(str.upper, lambda ln: ln + "!")
    assert R.points == ("A", "B", "C", "D")
    assert R.incident("A", "ab!")


# -- properties -------------------------------------------------------------------

structures = st.builds(
    lambda seed, n, b, s: random_structure(random.Random(seed), n, b, s),
    st.integers(0, 10**6),
    st.integers(0, 8),
    st.integers(0, 8),
    st.integers(1, 4),
)


@settings(max_examples=150, deadline=None)
@given(structures)
def test_double_counting(K):
    assert sum(point_ranks(K)) == sum(line_sizes(K)) == K.num_incidences == len(K.incidence)


@settings(max_examples=150, deadline=None)
@given(structures)
def test_pls_matches_naive(K):
    assert is_partial_linear_space(K) == naive_is_pls(K)


@settings(max_examples=150, deadline=None)
@given(structures)
def test_dual_type_swap(K):
    t = configuration_type(K)
    td = configuration_type(dual(K))
    if t is None:
        assert td is None
    else:
        assert td == t.dual()
        # equation nu * rho = beta * kappa
        assert t.nu * t.rho == t.beta * t.kappa


@pytest.mark.parametrize("n, k", [(4, 1), (4, 2), (5, 2), (6, 3)])
def test_signature_symmetric_under_dual(n, k):
    K = gras_space(n, k)
    sig = binomial_signature(configuration_type(K))
    dsig = binomial_signature(configuration_type(dual(K)))
    assert dsig == sig.dual()


def test_complete_graph_type():
    assert configuration_type(complete_graph(2)) == ConfigurationType(2, 1, 1, 2)
