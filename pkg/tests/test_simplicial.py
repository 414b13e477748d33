import itertools
import json
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from burnside_kit.simplicial import (
    EMPTY,
    ChainSSet,
    J_complex,
    Simplex,
    SimplicialMap,
    boundary,
    codegeneracy,
    coface,
    compose,
    ez_word,
    first_map,
    horn,
    identity_map,
    iso_check,
    iter_maps,
    map_from_json,
    map_to_json,
    monotone_maps,
    nd,
    opposite,
    product,
    pushout,
    quotient,
    same_subobject_up_to_iso,
    spine,
    sset_from_json,
    sset_to_json,
    standard_simplex,
    word_to_sigma,
)


def edges(X):
    return sorted(X.nondeg(1))


# --- standard objects ------------------------------------------------------


@pytest.mark.parametrize("n", range(5))
def test_standard_simplex_binomial_counts(n):
    D = standard_simplex(n)
    assert D.counts() == [comb(n + 1, d + 1) for d in range(n + 1)]


def test_delta1_has_five_3_simplices():
    assert standard_simplex(1).count(3) == 5
    assert len(list(standard_simplex(1).simplices(3))) == 5
    assert len(list(monotone_maps(3, 1))) == 5


def test_spine_examples():
    s = spine(2)
    assert s.source.counts() == [3, 2]
    assert s.is_mono()
    s0 = spine([0])
    assert s0.source.counts() == s0.target.counts() == [1]
    assert spine(3).source.counts() == [4, 3]
    with pytest.raises(ValueError):
        spine([])


def test_horn_examples():
    L = horn(2, {1}).source
    assert L.counts() == [3, 2]
    assert edges(L) == [(0, 1), (1, 2)]
    assert edges(horn(2, 0).source) == [(0, 1), (0, 2)]
    # faces 012 and 023 share the edge 02
    assert horn(3, {0, 2}).source.counts() == [4, 5, 2]
    for bad in (set(), {0, 1, 2}):
        with pytest.raises(ValueError):
            horn(2, bad)


@pytest.mark.parametrize("n,S", [(3, {0, 2}), (3, {1}), (4, {0, 3}), (4, {1, 2, 3})])
def test_horn_against_brute_force(n, S):
    faces = [set(range(n + 1)) - {s} for s in range(n + 1) if s not in S]
    expected = [sum(1 for c in itertools.combinations(range(n + 1), d + 1)
                    if any(set(c) <= f for f in faces)) for d in range(n)]
    assert horn(n, S).source.counts() == expected


def test_J_complex_examples():
    assert edges(J_complex(2).source) == edges(horn(2, 0).source)
    assert edges(J_complex(3).source) == [(0, 1), (0, 2), (2, 3)]
    assert J_complex(3).source.counts() == [4, 3]
    assert edges(J_complex(4).source) == [(0, 1), (0, 2), (2, 3), (3, 4)]
    with pytest.raises(ValueError):
        J_complex(1)


def test_boundary_counts():
    assert boundary(2).source.counts() == [3, 3]
    assert boundary(0).source.counts() == []


# --- colimits ----------------------------------------------------------------


def test_pushout_over_empty_is_coproduct():
    pt = standard_simplex(0)
    e = SimplicialMap(EMPTY, pt, {})
    P, inl, inr = pushout(e, e)
    assert P.counts() == [2]


def test_gluing_two_edges_gives_the_spine():
    D1 = standard_simplex(1)
    pt = standard_simplex(0)
    f = SimplicialMap(pt, D1, {(0,): nd((1,), 0)})
    g = SimplicialMap(pt, D1, {(0,): nd((0,), 0)})
    P, inl, inr = pushout(f, g)
    assert iso_check(P, spine(2).source) is not None
    inl.check()
    inr.check()


def test_collapsing_an_edge_renormalizes_to_a_point():
    D1 = standard_simplex(1)
    P, proj = quotient(D1, [(D1.ref((0, 1)), D1.act((0, 0), D1.ref((0,))))])
    assert P.counts() == [1]
    image = proj[(0, 1)]
    assert not image.nondegenerate and image.dim == 1


def test_identifying_endpoints_gives_a_loop():
    D1 = standard_simplex(1)
    P, proj = quotient(D1, [(D1.ref((0,)), D1.ref((1,)))])
    assert P.counts() == [1, 1]


def cocones(f, g, W):
    """Pairs of maps X -> W, Y -> W agreeing on the common source."""
    out = []
    for a in iter_maps(f.target, W):
        fa = SimplicialMap(f.target, W, a)
        for b in iter_maps(g.target, W):
            gb = SimplicialMap(g.target, W, b)
            if all(fa(f.assign[x]) == gb(g.assign[x]) for x in f.source.cells):
                out.append((fa, gb))
    return out


def test_pushout_universal_property_exhaustively():
    # glue two edges along a vertex, test against maps into Delta^2
    D1, pt, W = standard_simplex(1), standard_simplex(0), standard_simplex(2)
    f = SimplicialMap(pt, D1, {(0,): nd((1,), 0)})
    g = SimplicialMap(pt, D1, {(0,): nd((0,), 0)})
    P, inl, inr = pushout(f, g)
    maps_from_P = [SimplicialMap(P, W, m) for m in iter_maps(P, W)]
    pairs = cocones(f, g, W)
    assert len(maps_from_P) == len(pairs)
    restricted = {(tuple(sorted(inl.then(h).assign.items())), tuple(sorted(inr.then(h).assign.items())))
                  for h in maps_from_P}
    assert restricted == {(tuple(sorted(a.assign.items())), tuple(sorted(b.assign.items()))) for a, b in pairs}


# --- products and opposites ---------------------------------------------------


def test_square_counts():
    D1 = standard_simplex(1)
    assert product(D1, D1).counts() == [4, 5, 2]


@pytest.mark.parametrize("n", [0, 1, 2])
def test_product_with_point(n):
    D = standard_simplex(n)
    assert iso_check(product(D, standard_simplex(0)), D) is not None


def test_product_dimensionwise_counts():
    X, Y = horn(2, 1).source, standard_simplex(1)
    P = product(X, Y)
    for m in range(4):
        assert P.count(m) == X.count(m) * Y.count(m)


def test_opposite_involution_and_simplex():
    D3 = standard_simplex(3)
    assert iso_check(opposite(opposite(D3)), D3) is not None
    assert iso_check(opposite(D3), D3) is not None


def test_opposite_of_cospan_is_span():
    cospan = ChainSSet([(0, 1), (2, 1)], key=None)
    span = ChainSSet([(1, 0), (1, 2)])
    assert iso_check(opposite(cospan), span) is not None
    assert iso_check(cospan, span) is None


def test_iso_check_examples():
    D1 = standard_simplex(1)
    assert iso_check(D1, D1) is not None
    assert iso_check(D1, spine(2).source) is None
    assert iso_check(horn(2, 0).source, J_complex(2).source) is not None


def test_same_subobject_up_to_iso():
    found = same_subobject_up_to_iso(horn(2, 0), J_complex(2))
    assert found is not None
    alpha, beta = found
    alpha.check()
    beta.check()
    # Delta^2 has no nontrivial automorphism
    assert same_subobject_up_to_iso(horn(2, 0), horn(2, 1)) is None
    assert same_subobject_up_to_iso(horn(2, 1), spine(2)) is not None
    assert same_subobject_up_to_iso(horn(3, 0), horn(3, {0, 1})) is None


def test_first_map_injective_refusal():
    assert first_map(standard_simplex(1), boundary(1).source) is not None
    assert first_map(standard_simplex(1), boundary(1).source, injective=True) is None


# --- simplicial identities and EZ normal form ---------------------------------


def objects():
    return [standard_simplex(3), horn(3, {0, 2}).source, product(standard_simplex(1), standard_simplex(1)),
            opposite(horn(3, 1).source), spine(3).source]


@pytest.mark.parametrize("X", objects(), ids=lambda X: X.name)
def test_simplicial_identities(X):
    X.validate()
    for n in range(1, 4):
        for x in X.simplices(n):
            for i, j in itertools.combinations(range(n + 1), 2):
                if n < 2:
                    break
                assert X.face(i, X.face(j, x)) == X.face(j - 1, X.face(i, x))
            for i in range(n + 1):
                assert X.face(i, X.degen(i, x)) == x
                assert X.face(i + 1, X.degen(i, x)) == x


@given(st.lists(st.integers(0, 3), min_size=1, max_size=6).map(lambda w: sorted(w)))
def test_ez_word_round_trip(seq):
    # a surjection [m] -> [d] in normal form
    values = sorted(set(seq))
    sigma = tuple(values.index(v) for v in seq)
    d = len(values) - 1
    assert word_to_sigma(ez_word(sigma), d) == sigma


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 3), st.data())
def test_renormalization_is_idempotent(n, data):
    X = horn(3, {0, 2}).source
    x = data.draw(st.sampled_from(list(X.simplices(n))))
    # apply a random degeneracy then a face that undoes it
    i = data.draw(st.integers(0, n))
    y = X.degen(i, x)
    assert X.face(i, y) == x
    sigma, z = X.ez(y)
    assert X.act(sigma, z) == y


@given(st.integers(0, 4), st.integers(0, 4))
def test_cosimplicial_identities(n, i):
    i = min(i, n)
    assert compose(codegeneracy(n + 1, i), coface(n + 1, i)) == tuple(range(n + 1))


# --- JSON --------------------------------------------------------------------


@pytest.mark.parametrize("X", objects(), ids=lambda X: X.name)
def test_sset_json_round_trip(X):
    data = json.loads(json.dumps(sset_to_json(X)))
    Y = sset_from_json(data)
    assert Y.counts() == X.counts()
    assert iso_check(X, Y) is not None


def test_sset_json_rejects_bad_face():
    data = sset_to_json(standard_simplex(1))
    data["dims"][1]["simplices"][0]["faces"][0]["target"] = "nowhere"
    with pytest.raises(ValueError):
        sset_from_json(data)


def test_map_json_round_trip():
    i = horn(2, 1)
    data = map_to_json(i)
    j = map_from_json(data, i.source, i.target)
    assert j.assign == i.assign
    data["assign"][0]["target"] = "missing"
    with pytest.raises(ValueError):
        map_from_json(data, i.source, i.target)


def test_identity_map_checks():
    identity_map(standard_simplex(2)).check()
