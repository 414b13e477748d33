import itertools
import json
from dataclasses import replace

import pytest

from burnside_kit import certificates as cert
from burnside_kit.certificates import (
    INNER_ANODYNE,
    JOYAL_TRIVIAL,
    LEFT_FROM_SPINES,
    MARBLED_TRIVIAL,
    MARKED_LEFT_FROM_SPINES,
    Compose,
    Exhausted,
    Generator,
    Mono,
    Pushout,
    RightCancel,
    certificate_from_json,
    certificate_to_json,
    find_cell_decomposition,
    identity_certificate,
    verify_certificate,
)
from burnside_kit.category import Nerve
from burnside_kit.corpus import posets
from burnside_kit.lifting import LiftingProblem, has_lift
from burnside_kit.simplicial import (
    SimplicialMap,
    horn,
    identity_map,
    iter_maps,
    same_subobject_up_to_iso,
    spine,
    standard_simplex,
)


def inner_horn_generator(m, k):
    return Generator(INNER_ANODYNE.instance("inner_horn", (m, k)), "inner_horn", (m, k))


def test_generator_is_accepted():
    assert verify_certificate(inner_horn_generator(2, 1), INNER_ANODYNE).ok


def test_generator_outside_the_class_is_rejected():
    g = Generator(LEFT_FROM_SPINES.instance("i1"), "i1", ())
    v = verify_certificate(g, INNER_ANODYNE)
    assert not v.ok and "not in class" in v.errors[0][1]


def test_generator_with_the_wrong_subject_is_rejected():
    g = Generator(Mono.of(horn(2, 0)), "inner_horn", (2, 1))
    assert not verify_certificate(g, INNER_ANODYNE).ok


def hand_built_spine_certificate():
    # I^2 -> Delta^2 is the cobase change of Lambda^2_1 -> Delta^2 along the identity of Delta^2
    s = spine(2)
    arm = inner_horn_generator(2, 1)
    attach = identity_map(s.target)
    attach = SimplicialMap(arm.subject.target.sset, s.target, dict(attach.assign))
    return Pushout(Mono.of(s), arm, attach)


def test_hand_built_pushout_is_accepted():
    assert verify_certificate(hand_built_spine_certificate(), INNER_ANODYNE).ok


def test_pushout_with_a_bad_attaching_map_is_rejected():
    c = hand_built_spine_certificate()
    D2 = c.subject.target.sset
    # swap the images of the vertices 1 and 2: not simplicial
    assign = dict(c.attach.assign)
    assign[(1,)], assign[(2,)] = assign[(2,)], assign[(1,)]
    c.attach = SimplicialMap(c.attach.source, D2, assign)
    v = verify_certificate(c, INNER_ANODYNE)
    assert not v.ok
    assert v.errors[0][0] == "root:Pushout"


def test_right_cancel_needs_the_flag():
    rc = cert.cert_left_horn(3)
    assert isinstance(rc, RightCancel)
    assert verify_certificate(rc, LEFT_FROM_SPINES).ok
    v = verify_certificate(rc, replace(LEFT_FROM_SPINES, right_cancel=False))
    assert not v.ok and any("right cancellation" in m for _, m in v.errors)


def test_identity_certificate():
    c = identity_certificate(standard_simplex(2))
    assert verify_certificate(c, INNER_ANODYNE).ok
    found = find_cell_decomposition(identity_map(standard_simplex(0)), INNER_ANODYNE)
    assert isinstance(found, Compose) and found.parts == []


def test_search_finds_the_spine_of_delta2():
    c = find_cell_decomposition(spine(2), INNER_ANODYNE)
    assert len(c.parts) == 1 and isinstance(c.parts[0], Pushout)
    assert c.parts[0].arm.params == (2, 1)
    assert verify_certificate(c, INNER_ANODYNE).ok


@pytest.mark.parametrize("budget", [1, 4, 64])
def test_left_horn_is_not_inner_anodyne(budget):
    with pytest.raises(Exhausted):
        find_cell_decomposition(horn(2, 0), INNER_ANODYNE, budget=budget)


@pytest.mark.parametrize("n", [3, 4])
def test_search_finds_longer_spines(n):
    c = find_cell_decomposition(spine(n), INNER_ANODYNE)
    assert verify_certificate(c, INNER_ANODYNE).ok


# --- left horns from spines -------------------------------------------------------


@pytest.mark.parametrize("n,S", [(2, {0}), (3, {0}), (3, {0, 2}), (4, {0, 2}), (4, {0, 2, 3})])
def test_J_to_horn(n, S):
    c = cert.cert_J_to_horn(n, S)
    assert verify_certificate(c, LEFT_FROM_SPINES).ok


def test_J_to_horn_for_n2_is_an_identity():
    c = cert.cert_J_to_horn(2, {0})
    assert same_subobject_up_to_iso(c.subject.map, identity_map(c.subject.source.sset)) is not None


@pytest.mark.parametrize("S", [{1}, {0, 1}, {0, 2, 3}, set()])
def test_J_to_horn_rejects_bad_index_sets(S):
    with pytest.raises(ValueError):
        cert.cert_J_to_horn(3, S)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_left_horns(n):
    c = cert.cert_left_horn(n)
    assert verify_certificate(c, LEFT_FROM_SPINES).ok
    assert same_subobject_up_to_iso(c.subject.map, horn(n, 0)) is not None


def test_left_horn_uses_only_spines_and_i1_i2():
    c = cert.cert_left_horn(4)

    def generators(node):
        if isinstance(node, Generator):
            yield node.name
        for _, child in node.children():
            yield from generators(child)

    assert set(generators(c)) <= {"spine", "i1", "i2"}


@pytest.mark.parametrize("n", [2, 3])
def test_marked_left_horns(n):
    assert verify_certificate(cert.cert_left_horn(n, marked=True), MARKED_LEFT_FROM_SPINES).ok


def test_unmarked_certificate_fails_the_marked_class():
    assert not verify_certificate(cert.cert_left_horn(3), MARKED_LEFT_FROM_SPINES).ok


# --- corner maps ----------------------------------------------------------------


def test_corner_models():
    assert cert.pr11_model("i1").target.sset.counts() == [4, 6, 4, 1]
    assert cert.pr11_model(2).target.sset.counts()[0] == 6
    assert cert.pr11_model("i2").target.sset.counts()[0] == 6
    assert cert.pr11_model(3).target.sset.counts()[0] == 8


def test_i1_corner_is_the_spine_of_delta3():
    c = cert.cert_pr11("i1")
    assert same_subobject_up_to_iso(c.subject.map, spine(3)) is not None


@pytest.mark.parametrize("case", ["i1", 2, "i2"])
def test_corner_map_matches_the_model(case):
    corner = cert.corner_map(cert._pr11_source(case))
    model = cert.pr11_model(case)
    assert same_subobject_up_to_iso(corner.map, model.map) is not None


# --- marbled spines ---------------------------------------------------------------


def test_marbled_spine_stage_sizes():
    c = cert.cert_marbled_spine(2)
    assert c.subject.source.sset.counts()[0] == 7
    assert [p.subject.target.sset.counts()[0] for p in c.parts] == [9, 9, 10]
    assert verify_certificate(c, MARBLED_TRIVIAL).ok


def test_marbled_certificate_rejected_in_plain_class():
    assert not verify_certificate(cert.cert_marbled_spine(2), INNER_ANODYNE).ok


# --- JSON ----------------------------------------------------------------------


@pytest.mark.parametrize("build,spec", [
    (lambda: cert.cert_left_horn(3), LEFT_FROM_SPINES),
    (lambda: cert.cert_pr11("i1"), JOYAL_TRIVIAL),
    (lambda: cert.cert_left_horn(2, marked=True), MARKED_LEFT_FROM_SPINES),
    (hand_built_spine_certificate, INNER_ANODYNE),
])
def test_certificate_json_round_trip(build, spec):
    c = build()
    data = json.loads(json.dumps(certificate_to_json(c, spec)))
    assert data["schema"] == "cert/v1"
    back = certificate_from_json(data)
    assert verify_certificate(back, spec).ok
    assert back.size() == c.size()
    assert certificate_to_json(back, spec) == data


def test_tampered_certificate_is_rejected():
    data = certificate_to_json(cert.cert_left_horn(3), LEFT_FROM_SPINES)
    root = data["root"]
    root["u"], root["vu"] = root["vu"], root["u"]
    assert not verify_certificate(certificate_from_json(data), LEFT_FROM_SPINES).ok


def test_malformed_certificate_reports_the_path():
    data = certificate_to_json(cert.cert_left_horn(3), LEFT_FROM_SPINES)
    data["root"]["u"]["kind"] = "Bogus"
    with pytest.raises(ValueError, match="root"):
        certificate_from_json(data)


# --- soundness against inner fibrations ---------------------------------------------


def test_inner_anodyne_certificates_lift_against_nerves():
    pt = standard_simplex(0)
    v = pt.ref((0,))
    for n in (2, 3):
        i = spine(n)
        assert verify_certificate(find_cell_decomposition(i, INNER_ANODYNE), INNER_ANODYNE).ok
        for C in posets(3):
            N = Nerve(C)
            p = lambda x, N=N: pt.act((0,) * (N.dim(x) + 1), v)
            bottom = {c: pt.act((0,) * len(c), v) for c in i.target.cells}
            for top in itertools.islice(iter_maps(i.source, N), 25):
                assert has_lift(LiftingProblem(i, p, N, pt, dict(top), bottom)) is not None
