import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from burnside_kit.category import (
    CategoryError,
    Diagram,
    FunctorData,
    Nerve,
    category_from_json,
    category_iso,
    category_to_json,
    chain_category,
    constant_functor,
    cyclic_group,
    discrete_category,
    grothendieck,
    homotopy_category,
    identity_functor,
    is_cocartesian,
    is_discrete_opfibration,
    poset_category,
    terminal_category,
    twisted_arrow_cat,
    twisted_comparison,
    twisted_projection,
    walking_isomorphism,
)
from burnside_kit.corpus import corpus_categories
from burnside_kit.delta import edgewise
from burnside_kit.simplicial import iso_check, standard_simplex


def nondegenerate_arrows(C):
    return [f for f in C.morphisms if not C.is_identity(f)]


def test_nerve_of_chains_is_a_simplex():
    for n in (1, 2):
        N = Nerve(chain_category(n)).materialize(n + 1)
        assert iso_check(N, standard_simplex(n)) is not None


def test_nerve_of_z2_has_one_cell_per_dimension():
    N = Nerve(cyclic_group(2))
    for n in range(5):
        assert sum(1 for x in N.simplices(n) if not N.is_degenerate(x)) == 1


def test_twisted_arrow_examples():
    T = twisted_arrow_cat(chain_category(1))
    assert len(T.objects) == 3
    arrows = nondegenerate_arrows(T)
    assert len(arrows) == 2
    # a cospan: both arrows end at the nonidentity arrow 0 -> 1
    assert len({T.tgt(f) for f in arrows}) == 1
    assert T.tgt(arrows[0]) not in {T.src(f) for f in arrows}
    assert len(twisted_arrow_cat(terminal_category()).morphisms) == 1
    T2 = twisted_arrow_cat(chain_category(2))
    assert len(T2.objects) == 6 and len(nondegenerate_arrows(T2)) == 9


def test_twisted_arrow_matches_edgewise_on_a_chain():
    C = chain_category(2)
    T = Nerve(twisted_arrow_cat(C)).materialize(3)
    E = edgewise(standard_simplex(2)).materialize(3)
    assert iso_check(T, E) is not None


@pytest.mark.parametrize("name", ["poset3.2", "Z/3", "Iso"])
def test_explicit_comparison(name):
    rep = twisted_comparison(corpus_categories()[name], 3)
    assert rep["ok"], rep


@pytest.mark.parametrize("name", sorted(corpus_categories()))
def test_corpus_categories_validate_and_twisted_is_discrete_opfibration(name):
    C = corpus_categories()[name]
    C.validate()
    assert is_discrete_opfibration(twisted_projection(C))


def test_discrete_opfibration_oracle_refuses():
    # the unique functor {0<1} -> pt does not lift the identity uniquely
    C = chain_category(1)
    assert not is_discrete_opfibration(constant_functor(C, terminal_category(), "*"))


@pytest.mark.parametrize("name", ["poset2.1", "poset4.7", "Z/2", "Iso", "poset3.3"])
def test_homotopy_category_of_nerve(name):
    C = corpus_categories()[name]
    h = homotopy_category(Nerve(C))
    assert category_iso(h, C) is not None


def test_homotopy_category_of_point():
    h = homotopy_category(standard_simplex(0))
    assert len(h.objects) == len(h.morphisms) == 1


def test_category_iso_refuses():
    assert category_iso(chain_category(1), discrete_category([0, 1])) is None
    assert category_iso(cyclic_group(2), walking_isomorphism()) is None


def test_composition_table_is_checked():
    # in Z/3 set g o g = e while g o h = e: then (g o g) o h = h but g o (g o h) = g
    C = cyclic_group(3)
    g = next(f for f in C.morphisms if not C.is_identity(f))
    e = next(f for f in C.morphisms if C.is_identity(f))
    comp = dict(C.comp)
    comp[(g, g)] = e
    with pytest.raises(CategoryError):
        type(C)(C.objects, C.morphisms, C.ids, comp).validate()
    C.validate()


# --- Grothendieck constructions -------------------------------------------------


def test_grothendieck_over_the_point():
    C = corpus_categories()["poset3.2"]
    G = Diagram(terminal_category(), {"*": C}, {terminal_category().ids["*"]: identity_functor(C)})
    X, p, marked = grothendieck(G)
    assert category_iso(X, C) is not None
    assert {m for m in X.morphisms if X.is_iso(m)} == marked


def test_grothendieck_of_constant_point():
    S = chain_category(1)
    pt = terminal_category()
    pushes = {u: identity_functor(pt) for u in S.morphisms}
    X, p, marked = grothendieck(Diagram(S, {0: pt, 1: pt}, pushes))
    assert category_iso(X, S) is not None


def test_grothendieck_discrete_to_point():
    S = chain_category(1)
    D, pt = discrete_category(["a", "b"]), terminal_category()
    u = next(f for f in S.morphisms if not S.is_identity(f))
    pushes = {S.ids[0]: identity_functor(D), S.ids[1]: identity_functor(pt), u: constant_functor(D, pt, "*")}
    X, p, marked = grothendieck(Diagram(S, {0: D, 1: pt}, pushes))
    assert len(X.objects) == 3
    arrows = nondegenerate_arrows(X)
    assert len(arrows) == 2 and set(arrows) <= marked
    assert all(is_cocartesian(p, f) for f in marked)


def test_marked_edges_are_exactly_cocartesian():
    from burnside_kit.corpus import diagram

    for name in ("chain-top", "span-to-chain", "chain2"):
        X, p, marked = grothendieck(diagram(name))
        assert {f for f in X.morphisms if is_cocartesian(p, f)} == marked


def test_diagram_rejects_non_functorial_data():
    S = chain_category(1)
    C = chain_category(1)
    u = next(f for f in S.morphisms if not S.is_identity(f))
    with pytest.raises(CategoryError):
        Diagram(S, {0: C, 1: C}, {S.ids[0]: identity_functor(C), S.ids[1]: identity_functor(C),
                                    u: identity_functor(terminal_category())})


# --- JSON ------------------------------------------------------------------------


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(sorted(corpus_categories())))
def test_category_json_round_trip(name):
    C = corpus_categories()[name]
    D = category_from_json(json.loads(json.dumps(category_to_json(C))))
    assert category_to_json(D) == category_to_json(C)


def test_category_json_rejects_unknown_endpoint():
    data = category_to_json(chain_category(1))
    data["morphisms"][0]["src"] = "zzz"
    with pytest.raises(ValueError):
        category_from_json(data)


def test_poset_category_is_thin():
    P = poset_category("abc", lambda a, b: a <= b)
    assert all(len(P.hom(a, b)) <= 1 for a in P.objects for b in P.objects)
    assert isinstance(identity_functor(P), FunctorData)
