import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from pascalconf import (
    are_isomorphic,
    canonical_form,
    classify,
    dual,
    find_isomorphism,
    glue,
    reduct,
)
from pascalconf.families import (
    complete_graph,
    dual_veronesian,
    gras_space,
    grassmannian_hyperplane,
    veblen,
    veronesian,
)
from pascalconf.glue import enumerate_gluings
from pascalconf.iso import SizeGuardError, verify_isomorphism

from oracles import brute_isomorphic, fano, k4, random_structure, relabel_randomly, small_corpus


CORPUS = small_corpus()


def test_corpus_within_bounds():
    assert all(K.num_points <= 7 and K.num_lines <= 7 for K in CORPUS)


def test_agrees_with_brute_force():
    for K1, K2 in itertools.combinations_with_replacement(CORPUS, 2):
        expected = brute_isomorphic(K1, K2)
        assert are_isomorphic(K1, K2) == expected
        same_cert = canonical_form(K1).certificate == canonical_form(K2).certificate
        assert same_cert == expected


def test_witness_is_verified():
    for K in CORPUS:
        other = relabel_randomly(K, random.Random(K.num_points * 31 + K.num_lines))
        w = find_isomorphism(K, other)
        assert w is not None
        assert verify_isomorphism(K, other, w)
        assert set(w.point_map) == set(K.points)
        assert set(w.point_map.values()) == set(other.points)


def test_canonical_form_relabelling():
    rng = random.Random(5)
    for K in [veronesian(3, 3), gras_space(5, 2), dual_veronesian(3, 4)]:
        c = canonical_form(K)
        for _ in range(3):
            assert canonical_form(relabel_randomly(K, rng)) == c


def test_certificates_distinguish_families():
    assert canonical_form(veronesian(3, 3)) != canonical_form(gras_space(5, 2))
    assert canonical_form(dual_veronesian(3, 3)) == canonical_form(veronesian(3, 3))


def test_relabeling_is_canonical():
    K = veblen()
    cf = canonical_form(K)
    assert sorted(cf.relabeling[p] for p in K.points) == list(range(K.num_points))
    assert len(cf.hex) == 2 * len(cf.certificate)


def test_reduct_of_grassmannian_is_k4():
    H, _ = grassmannian_hyperplane(5, 2)
    assert are_isomorphic(complete_graph(4), reduct(gras_space(5, 2), H))


def test_self_duality_boundary():
    V33, V44 = veronesian(3, 3), veronesian(4, 4)
    assert are_isomorphic(V33, dual(V33))
    assert not are_isomorphic(V44, dual(V44))
    assert not are_isomorphic(dual_veronesian(4, 4), V44)


def test_dual_dual_certificate():
    for K in CORPUS[:10]:
        assert canonical_form(dual(dual(K))) == canonical_form(K)


def test_points_never_swap_with_lines():
    # K4 and Veblen have the same Levi graph; only the point/line colouring differs
    assert not are_isomorphic(k4(), veblen())
    assert canonical_form(k4()) != canonical_form(veblen())
    assert are_isomorphic(dual(k4()), veblen())


def test_size_guards():
    K = veronesian(4, 4)  # 35 + 35 elements
    with pytest.raises(SizeGuardError):
        canonical_form(K)
    assert canonical_form(K, max_size=None).certificate
    with pytest.raises(SizeGuardError):
        find_isomorphism(K, K, max_size=10)


def test_classify_relabellings():
    rng = random.Random(1)
    K = fano()
    assert classify([relabel_randomly(K, rng) for _ in range(3)]) == [[0, 1, 2]]


def test_classify_glued_k4_veblen():
    K1, K2 = k4(), veblen()
    glued = [glue(K1, K2, g) for g in enumerate_gluings(K1, K2)]
    classes = classify(glued)
    assert len(classes) == 6
    assert sorted(i for c in classes for i in c) == list(range(720))


def test_classify_order_by_certificate():
    items = [fano(), k4(), veblen(), k4()]
    classes = classify(items)
    certs = [canonical_form(items[c[0]]).certificate for c in classes]
    assert certs == sorted(certs)
    assert [1, 3] in classes


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_random_pairs_against_brute_force(seed):
    rng = random.Random(seed)
    n, b = rng.randint(2, 6), rng.randint(1, 6)
    K1 = random_structure(rng, n, b, 3)
    if rng.random() < 0.5:
        K2 = relabel_randomly(K1, rng)
    else:
        K2 = random_structure(rng, n, b, 3)
    assert are_isomorphic(K1, K2) == brute_isomorphic(K1, K2)
