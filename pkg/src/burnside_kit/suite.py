"""Named verification checks over the shipped corpus.

Every check returns a dict with ``name``, ``statement``, ``ok`` and a
witness (counts, a certificate summary, an isomorphism, or the first
counterexample found).  :func:`run_suite` groups them by selection.
"""

from __future__ import annotations

import itertools
import time

from . import certificates as cert
from .burnside import (
    base_triple,
    check_adequate,
    check_pr22,
    check_thm24,
    compare_with_spans,
    dual_comparisons,
    fibration_triple,
    full_triple,
)
from .category import Nerve, grothendieck, is_discrete_opfibration, twisted_comparison, twisted_projection
from .corpus import adjunction_corpus, corpus_categories, diagram, diagrams, marbled_family
from .delta import TwistedProjection, adjunction_check, all_words, distinct_words_witness
from .lifting import check_fibration
from .marbled import (
    F_inclusion,
    F_marked,
    aeff_fibrewise,
    fiber_comparison,
    flat,
    is_constant_square,
    marbled_trivial_cofib_test,
    representability_check,
    sharp,
    verify_thm310,
)
from .simplicial import spine, standard_simplex

DEFAULT_BOUNDS = {
    "pr11": 4, "pr22": 4, "thm24": 3, "lm16": 4, "lm311": 3, "lm313": 3, "lm314": 4,
    "thm310": 3, "twisted-classical": 4, "duals": 2, "adjunctions": 2, "freeness": 3,
}
SELECTIONS = tuple(DEFAULT_BOUNDS)
# largest n for which the marbled spine certificate and the F(s_n) lift test run
MARBLED_MAX_N = 3


class SuiteError(ValueError):
    pass


def _check(name: str, statement: str, passed: bool, **witness) -> dict:
    witness.pop("ok", None)
    return {"name": name, "statement": statement, "ok": bool(passed), **witness}


# ---------------------------------------------------------------------------
# section 1


def twisted_classical_checks(bound: int = 4) -> list[dict]:
    out = []
    for name, C in corpus_categories().items():
        rep = twisted_comparison(C, bound)
        out.append(_check(f"twisted-classical/{name}", "N(Tw C) = Tw(N C)", rep["ok"],
                          witness="explicit comparison map, bijective and simplicial", **rep))
    return out


def twisted_fibration_checks(bound: int = 4) -> list[dict]:
    out = []
    for name, C in corpus_categories().items():
        P = TwistedProjection(Nerve(C))
        rep = check_fibration(P, P.source, P.target, "left", bound, coskeletal=2)
        oracle = is_discrete_opfibration(twisted_projection(C))
        out.append(_check(f"pr11/left-fibration/{name}", "Tw(N C) -> (N C)^op x N C is left",
                          rep.ok and oracle and rep.ok == oracle, fibration=rep.as_dict(),
                          discrete_opfibration=oracle))
    return out


def corner_certificate_checks(cases=("i1", 2, 3, "i2")) -> list[dict]:
    out = []
    for case in cases:
        label = f"s{case}" if isinstance(case, int) else case
        c = cert.cert_pr11(case)
        v = cert.verify_certificate(c, cert.JOYAL_TRIVIAL)
        model = c.inner.subject
        out.append(_check(f"pr11/corner/{label}", "corner map of eps_! is Joyal-trivial", v.ok,
                          model={"source": model.source.sset.counts(), "target": model.target.sset.counts()},
                          verdict=v.as_dict()))
    return out


def left_horn_checks(max_n: int = 4, marked: bool = False) -> list[dict]:
    spec = cert.MARKED_LEFT_FROM_SPINES if marked else cert.LEFT_FROM_SPINES
    tag = "lm314" if marked else "lm16"
    out = []
    for n in range(2, max_n + 1):
        v = cert.verify_certificate(cert.cert_left_horn(n, marked), spec)
        out.append(_check(f"{tag}/left-horn/{n}", f"Lambda^{n}_0 -> Delta^{n} from spines, i1, i2",
                          v.ok, verdict=v.as_dict()))
    for n, S in ((3, {0, 2}), (4, {0, 3}), (4, {0, 2, 3})):
        if n <= max_n:
            v = cert.verify_certificate(cert.cert_J_to_horn(n, S, marked), spec)
            out.append(_check(f"{tag}/J-to-horn/{n}/{sorted(S)}", f"J^{n} -> Lambda^{n}_S",
                              v.ok, verdict=v.as_dict()))
    return out


def freeness_checks(length: int = 3, bound: int = 3) -> list[dict]:
    words = list(all_words(length))
    missing, witnesses = [], 0
    for a, b in itertools.combinations(words, 2):
        phi = distinct_words_witness(a, b, bound)
        if phi is None:
            missing.append([list(a), list(b)])
        else:
            witnesses += 1
    return [_check(f"freeness/len{length}/bound{bound}", "words in id, op, kappa are distinct",
                   not missing, pairs=witnesses + len(missing), undistinguished=missing[:5])]


def adjunction_checks() -> list[dict]:
    out = []
    objs = adjunction_corpus()
    for X, Y in itertools.product(objs, repeat=2):
        r = adjunction_check(X, Y)
        out.append(_check(f"adjunctions/{X.name}/{Y.name}", "eps_! -| eps^* -| eps_*", r.ok,
                          shriek=[r.shriek_left, r.shriek_right], star=[r.star_left, r.star_right],
                          transposes_ok=r.transposes_ok))
    return out


# ---------------------------------------------------------------------------
# section 2


def pr22_checks(bound: int = 4) -> list[dict]:
    out = []
    for name, C in corpus_categories().items():
        t = full_triple(C)
        adequacy = check_adequate(t)
        if not adequacy.ok:
            continue
        rep = check_pr22(t, bound)
        spans = compare_with_spans(t)
        out.append(_check(f"pr22/{name}", "A^eff(C) is a quasi-category; h matches spans",
                          rep.ok and spans["ok"], fibration=rep.as_dict(), spans=spans))
    return out


def thm24_checks(bound: int = 3) -> list[dict]:
    out = []
    for d in diagrams():
        G = diagram(d, "contra")
        if len(G.base.objects) != 2:
            continue
        _, p, _ = grothendieck(G)
        tC, tD = fibration_triple(p), base_triple(G.base)
        adequate = check_adequate(tC).ok and check_adequate(tD).ok
        rep = check_thm24(p, tC, tD, bound) if adequate else {"ok": False}
        out.append(_check(f"thm24/{d}", "A^eff(p) is cocartesian with the asserted edges",
                          adequate and rep["ok"], adequate=adequate, report=rep))
    return out


def dual_checks(bound: int = 2) -> list[dict]:
    out = []
    for d in diagrams():
        for variance in ("co", "contra"):
            rep = dual_comparisons(diagram(d, variance), bound)
            out.append(_check(f"duals/{d}/{variance}", "duals classify the same diagram", rep["ok"], **rep))
    return out


# ---------------------------------------------------------------------------
# section 3


def _triple_label(cell) -> str:
    x, chain = cell
    i, j, h = (x[k] for k in chain[0])
    return f"{i}{j}{h}"


def figure_checks() -> list[dict]:
    out = []
    F0 = F_marked(flat(standard_simplex(0)))
    point = sharp(standard_simplex(0))
    out.append(_check("figures/F(Delta^0)", "F(Delta^0 flat) = Delta^0 sharp",
                      F0.sset.counts() == point.sset.counts() and set(F0.marked) == set(point.marked)
                      and not [sq for sq in F0.blazed if not is_constant_square(F0.sset, sq)],
                      cells=F0.sset.counts()))
    F1 = F_marked(flat(standard_simplex(1)))
    c1 = F1.sset.counts()
    nc1 = [sq for sq in F1.blazed if not is_constant_square(F1.sset, sq)]
    out.append(_check("figures/F(Delta^1)", "4 vertices, 3 edges, 1 marked",
                      c1[:2] == [4, 3] and len(F1.marked) == 1 and not nc1, cells=c1,
                      marked=[f"{_triple_label((e[0], e[1][:1]))}->{_triple_label((e[0], e[1][1:]))}"
                              for e in F1.marked]))
    F2 = F_marked(flat(standard_simplex(2)))
    squares = {frozenset(sq) for sq in F2.blazed if not is_constant_square(F2.sset, sq)}
    corners = []
    for sq in squares:
        top, bottom = sorted(sq, key=repr)
        verts = set()
        for s in (top, bottom):
            for k in range(3):
                v = F2.sset.act((k,), s)
                verts.add(_triple_label(v.target))
        corners.append(sorted(verts))
    expected = [["012", "022", "112", "122"]]
    out.append(_check("figures/F(Delta^2)", "10 vertices, one nonconstant blazed square",
                      F2.sset.counts()[0] == 10 and len(squares) == 1 and corners == expected,
                      cells=F2.sset.counts(), blazed_corners=corners))
    return out


def marbled_spine_checks(max_n: int = MARBLED_MAX_N) -> list[dict]:
    out = []
    for n in range(2, min(max_n, MARBLED_MAX_N) + 1):
        c = cert.cert_marbled_spine(n)
        v = cert.verify_certificate(c, cert.MARBLED_TRIVIAL)
        steps = [p.subject.target.sset.counts() for p in c.parts]
        out.append(_check(f"lm311/certificate/{n}", f"F(Delta^n) from the spine stages, n={n}", v.ok,
                          start=c.subject.source.sset.counts(), stages=steps, verdict=v.as_dict()))
    return out


def spine_lift_checks(max_n: int = MARBLED_MAX_N) -> list[dict]:
    out = []
    family = marbled_family()
    for n in range(2, min(max_n, MARBLED_MAX_N) + 1):
        i, FK, FL = F_inclusion(spine(n))
        for P in family:
            rep = marbled_trivial_cofib_test(i, FK, FL, [P], over=FL.projection())
            out.append(_check(f"lm311/lift/{n}/{P.name}", "F(s_n) lifts against marbled fibrations",
                              rep["ok"], **rep))
    return out


def _base_edge(P):
    NS = P.base.sset
    edge = next(e for e in NS.simplices(1) if e[0] == (0, 1))
    assign = {(0,): NS.act((0,), edge), (1,): NS.act((1,), edge), (0, 1): edge}
    return lambda s: NS.act(s.sigma, assign[s.target])


def lm313_checks(bound: int = 3) -> list[dict]:
    out = []
    for P in marbled_family():
        A = aeff_fibrewise(P)
        rep = check_fibration(A.rho, A, A.NS, "inner", bound)
        out.append(_check(f"lm313/inner/{P.name}", "rho: A^eff_S(X) -> S is inner", rep.ok,
                          fibration=rep.as_dict()))
        if len(P.S.objects) == 2:
            sigma = _base_edge(P)
            for K in (flat(standard_simplex(1)), sharp(standard_simplex(1))):
                r = representability_check(P, K, sigma)
                kind = "sharp" if K.marked else "flat"
                out.append(_check(f"lm313/represent/{P.name}/{kind}", "maps K -> A^eff_S(X) = maps F(K) -> X",
                                  r["ok"], **r))
    return out


def thm310_checks(bound: int = 3) -> list[dict]:
    out = []
    for P in marbled_family():
        if len(P.S.objects) != 2:
            continue
        rep = verify_thm310(P, bound)
        out.append(_check(f"thm310/{P.name}", "rho is cocartesian, marked = cocartesian", rep["ok"], **rep))
        for s in P.S.objects:
            r = fiber_comparison(P, s, bound)
            out.append(_check(f"thm310/fiber/{P.name}/{s}", "fiber comparison is a trivial fibration",
                              r.ok, fibration=r.as_dict()))
    return out


# ---------------------------------------------------------------------------


def _plan(selection: str, bound: int, length: int) -> list:
    return {
        "pr11": [lambda: twisted_fibration_checks(bound), corner_certificate_checks],
        "pr22": [lambda: pr22_checks(bound)],
        "thm24": [lambda: thm24_checks(bound)],
        "lm16": [lambda: left_horn_checks(bound)],
        "lm311": [figure_checks, lambda: marbled_spine_checks(bound), lambda: spine_lift_checks(bound)],
        "lm313": [lambda: lm313_checks(bound)],
        "lm314": [lambda: left_horn_checks(bound, marked=True)],
        "thm310": [lambda: thm310_checks(bound)],
        "twisted-classical": [lambda: twisted_classical_checks(bound)],
        "duals": [lambda: dual_checks(bound)],
        "adjunctions": [adjunction_checks],
        "freeness": [lambda: freeness_checks(length, bound)],
    }[selection]


def run_suite(selection, bound: int | None = None, length: int = 3) -> dict:
    """Run one selection (or a list of them; ``"all"`` for every one) and report."""
    if isinstance(selection, str):
        selection = list(SELECTIONS) if selection == "all" else [selection]
    unknown = [s for s in selection if s not in DEFAULT_BOUNDS]
    if unknown:
        raise SuiteError(f"unknown selection {unknown[0]!r}; choose from {', '.join(SELECTIONS)}")
    if bound is not None and bound < 2:
        raise SuiteError(f"bound must be at least 2, got {bound}")
    if length < 1:
        raise SuiteError(f"word length must be at least 1, got {length}")
    checks, timings = [], {}
    for sel in selection:
        b = DEFAULT_BOUNDS[sel] if bound is None else bound
        start = time.perf_counter()
        for step in _plan(sel, b, length):
            checks.extend(step())
        timings[sel] = round(time.perf_counter() - start, 3)
    checks.sort(key=lambda c: c["name"])
    return {"schema": "report/v1", "selection": selection, "bound": bound,
            "ok": all(c["ok"] for c in checks), "passed": sum(c["ok"] for c in checks),
            "failed": sum(not c["ok"] for c in checks), "seconds": timings, "checks": checks}
