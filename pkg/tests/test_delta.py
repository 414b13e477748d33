import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from burnside_kit.delta import (
    EPSILON,
    ID,
    KAPPA,
    OP,
    DeltaMorphism,
    EndoWord,
    adjunction_check,
    all_words,
    distinct_words_witness,
    edgewise,
    epsilon_lower_star,
    epsilon_shriek,
    eval_endoword,
    join_maps,
    join_objects,
)
from burnside_kit.simplicial import (
    ChainSSet,
    SimplicialMap,
    iso_check,
    iter_maps,
    monotone_maps,
    nd,
    pushout,
    spine,
    standard_simplex,
)


def morphisms(m, n):
    return [DeltaMorphism(m, n, t) for t in monotone_maps(m, n)]


def test_join_objects():
    assert join_objects(0, 0) == 1
    assert join_objects(1, 1) == 3
    assert join_objects(join_objects(1, 1), 2) == join_objects(1, join_objects(1, 2)) == 6


def test_join_maps_concatenates_with_offset():
    f = DeltaMorphism(0, 1, (1,))
    g = DeltaMorphism(1, 1, (0, 0))
    assert join_maps(f, g) == DeltaMorphism(2, 3, (1, 2, 2))


def test_delta_morphism_validation():
    with pytest.raises(ValueError):
        DeltaMorphism(1, 1, (1, 0))
    with pytest.raises(ValueError):
        DeltaMorphism(1, 1, (0,))


def test_endoword_validation():
    with pytest.raises(ValueError):
        EndoWord(())
    with pytest.raises(ValueError):
        EndoWord(("id", "swap"))


def test_eval_examples():
    phi = DeltaMorphism(1, 2, (0, 2))
    assert eval_endoword([ID], phi) == phi
    assert eval_endoword([KAPPA], phi) == DeltaMorphism(0, 0, (0,))
    assert eval_endoword(EPSILON, DeltaMorphism.identity(1)) == DeltaMorphism.identity(3)


@pytest.mark.parametrize("w", list(all_words(3)) + [EndoWord((OP, KAPPA, ID, OP))], ids=lambda w: ".".join(w))
def test_functoriality(w):
    for n in range(3):
        assert eval_endoword(w, DeltaMorphism.identity(n)) == DeltaMorphism.identity(w.on_object(n))
    for a, b, c in itertools.product(range(3), repeat=3):
        for f in morphisms(a, b):
            for g in morphisms(b, c):
                assert eval_endoword(w, f.then(g)) == eval_endoword(w, f).then(eval_endoword(w, g))


def test_distinct_words_examples():
    phi = distinct_words_witness([ID], [OP], 3)
    assert phi is not None and eval_endoword([ID], phi) != eval_endoword([OP], phi)
    assert distinct_words_witness([ID], [OP], 1) is not None
    psi = distinct_words_witness([ID, KAPPA], [KAPPA, ID], 2)
    assert psi is not None and max(psi.m, psi.n) <= 2
    assert distinct_words_witness([OP, ID], [OP, ID], 3) is None


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(list(all_words(3))), st.sampled_from(list(all_words(3))))
def test_witness_really_distinguishes(w1, w2):
    phi = distinct_words_witness(w1, w2, 3)
    if w1 == w2:
        assert phi is None
    else:
        assert phi is not None
        assert eval_endoword(w1, phi) != eval_endoword(w2, phi)


# --- edgewise subdivision -------------------------------------------------------


def test_edgewise_examples():
    E1 = edgewise(standard_simplex(1))
    assert E1.count(0) == 3
    nondeg = [x for x in E1.simplices(1) if not E1.is_degenerate(x)]
    assert len(nondeg) == 2
    # cospan: both edges end at the middle vertex (0, 1)
    ends = {E1.vertex(1, e) for e in nondeg}
    assert len(ends) == 1
    assert edgewise(standard_simplex(2)).count(1) == 15
    assert edgewise(standard_simplex(0)).count(3) == 1


@pytest.mark.parametrize("n", [0, 1, 2])
def test_edgewise_counts_match_odd_dimensions(n):
    for X in (standard_simplex(2), spine(3).source):
        assert edgewise(X).count(n) == X.count(2 * n + 1)


def test_edgewise_simplicial_identities():
    E = edgewise(standard_simplex(2))
    for x in E.simplices(2):
        for i, j in itertools.combinations(range(3), 2):
            assert E.face(i, E.face(j, x)) == E.face(j - 1, E.face(i, x))


# --- epsilon_! and epsilon_* ------------------------------------------------------


@pytest.mark.parametrize("n", [0, 1, 2])
def test_shriek_of_simplex(n):
    assert iso_check(epsilon_shriek(standard_simplex(n)), standard_simplex(2 * n + 1)) is not None


def test_shriek_preserves_the_spine_gluing():
    D3, D1 = standard_simplex(3), standard_simplex(1)
    # Delta^3 u_{Delta^1} Delta^3 along the last edge 12 of one and the first edge 01 of the other:
    # eps[0] at vertex 1 of I^2 is the pair (1bar, 1) = positions (0, 3) and (1, 2)
    f = SimplicialMap(D1, D3, {(0,): nd((0,), 0), (1,): nd((3,), 0), (0, 1): nd((0, 3), 1)})
    g = SimplicialMap(D1, D3, {(0,): nd((1,), 0), (1,): nd((2,), 0), (0, 1): nd((1, 2), 1)})
    P, _, _ = pushout(f, g)
    assert iso_check(epsilon_shriek(spine(2).source), P) is not None


def test_lower_star_examples():
    E = epsilon_lower_star(standard_simplex(0))
    assert [E.count(n) for n in range(3)] == [1, 1, 1]
    E1 = epsilon_lower_star(standard_simplex(1))
    assert E1.count(0) == 2
    cospan = ChainSSet([(0, 1), (2, 1)])
    assert E1.count(1) == sum(1 for _ in iter_maps(cospan, standard_simplex(1)))


@pytest.mark.parametrize("X,Y", [(0, 1), (0, 0), (1, 1), (2, 1)])
def test_adjunction_counts(X, Y):
    r = adjunction_check(standard_simplex(X), standard_simplex(Y))
    assert r.ok
    if (X, Y) == (0, 1):
        assert r.shriek_left == r.shriek_right == 3
    if (X, Y) == (0, 0):
        assert r.shriek_left == 1
