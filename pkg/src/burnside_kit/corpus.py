"""The shipped test corpus: small categories and diagrams of posets.

The data lives in ``data/corpus.json``; :func:`build_corpus_data` regenerates
it from first principles and the test-suite checks the two agree.
"""

from __future__ import annotations

import itertools
import json
from functools import lru_cache
from importlib import resources

from .category import (
    Diagram,
    FiniteCategory,
    category_from_json,
    category_to_json,
    corpus_functor,
    cyclic_group,
    identity_functor,
    poset_category,
    subset_lattice,
    walking_isomorphism,
)

CORPUS_VERSION = 1
LETTERS = "abcd"


def _closure(n: int, rel: set) -> set:
    rel = set(rel) | {(a, a) for a in range(n)}
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(rel), repeat=2):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    return rel


def _canonical(n: int, rel: set) -> tuple:
    return min(tuple(sorted((p[a], p[b]) for a, b in rel)) for p in itertools.permutations(range(n)))


def posets_up_to_iso(n: int) -> list[frozenset]:
    """Partial orders on ``range(n)`` up to isomorphism, as sets of pairs ``a <= b``."""
    strict = [(a, b) for a in range(n) for b in range(n) if a != b]
    seen, out = set(), []
    for bits in itertools.product((0, 1), repeat=len(strict)):
        rel = {e for e, on in zip(strict, bits) if on}
        if any((b, a) in rel for a, b in rel):
            continue
        full = _closure(n, rel)
        if full != rel | {(a, a) for a in range(n)}:
            continue
        key = _canonical(n, full)
        if key not in seen:
            seen.add(key)
            out.append(frozenset(key))
    return sorted(out, key=lambda r: (len(r), sorted(r)))


def _poset(n: int, rel, name: str) -> FiniteCategory:
    return poset_category(LETTERS[:n], lambda a, b: (LETTERS.index(a), LETTERS.index(b)) in rel,
                          name=name)


def has_pullbacks(C: FiniteCategory) -> bool:
    """In a thin category: every pair with a common upper bound has a meet."""
    for a, b in itertools.combinations(C.objects, 2):
        if not any(C.hom(a, c) and C.hom(b, c) for c in C.objects):
            continue
        lower = [x for x in C.objects if C.hom(x, a) and C.hom(x, b)]
        if not any(all(C.hom(y, x) for y in lower) for x in lower):
            return False
    return True


def build_corpus_data() -> dict:
    cats = []
    for n in range(1, 5):
        for k, rel in enumerate(posets_up_to_iso(n)):
            cats.append(_poset(n, rel, f"poset{n}.{k}"))
    cats += [cyclic_group(2), cyclic_group(3), walking_isomorphism()]
    out = {"version": CORPUS_VERSION, "categories": []}
    for C in cats:
        data = category_to_json(C)
        data["name"] = C.name
        out["categories"].append(data)
    out["diagrams"] = [
        {"name": "point-chain", "base": 0, "fibers": ["poset2.1"], "pushes": []},
        {"name": "point-span", "base": 0, "fibers": ["poset3.2"], "pushes": []},
        {"name": "point-square", "base": 0, "fibers": ["P(12)"], "pushes": []},
        {"name": "const-a", "base": 1, "fibers": ["poset1.0", "poset1.0"], "pushes": [{"a": "a"}]},
        {"name": "chain-collapse", "base": 1, "fibers": ["poset2.1", "poset1.0"],
         "pushes": [{"a": "a", "b": "a"}]},
        {"name": "chain-top", "base": 1, "fibers": ["poset1.0", "poset2.1"], "pushes": [{"a": "b"}]},
        {"name": "span-to-chain", "base": 1, "fibers": ["poset3.2", "poset2.1"],
         "pushes": [{"a": "a", "b": "b", "c": "b"}]},
        {"name": "chain2", "base": 2, "fibers": ["poset1.0", "poset2.1", "poset1.0"],
         "pushes": [{"a": "b"}, {"a": "a", "b": "a"}]},
    ]
    from .simplicial import boundary, horn, sset_to_json, standard_simplex

    small = [standard_simplex(0), standard_simplex(1), boundary(1).source, horn(2, 0).source,
             boundary(2).source, standard_simplex(2)]
    out["ssets"] = []
    for X in small:
        data = sset_to_json(X)
        data["name"] = X.name
        out["ssets"].append(data)
    return out


@lru_cache(maxsize=1)
def corpus_data() -> dict:
    text = resources.files(__package__).joinpath("data/corpus.json").read_text()
    return json.loads(text)


@lru_cache(maxsize=None)
def corpus_categories() -> dict[str, FiniteCategory]:
    return {d["name"]: category_from_json(d, name=d["name"]) for d in corpus_data()["categories"]}


def category(name: str) -> FiniteCategory:
    cats = corpus_categories()
    if name == "P(12)":
        return subset_lattice((1, 2))
    if name not in cats:
        raise KeyError(f"unknown corpus category {name!r}")
    return cats[name]


def posets(max_size: int = 4) -> list[FiniteCategory]:
    return [C for name, C in corpus_categories().items()
            if name.startswith("poset") and len(C.objects) <= max_size]


def pullback_posets(max_size: int = 4) -> list[FiniteCategory]:
    return [C for C in posets(max_size) if has_pullbacks(C)]


def diagram_from_data(spec: dict, variance: str = "co") -> Diagram:
    """A diagram over ``[n]`` from consecutive object maps between posets.

    ``fibers`` entries are corpus names or inline ``cat/v1`` objects.  The
    data is read covariantly; the contravariant reading reverses the order
    of the fibers, so fiber ``k`` of the result is stored fiber ``n - k``.
    """
    from .category import chain_category

    if variance not in ("co", "contra"):
        raise ValueError("variance is 'co' or 'contra'")
    fibers = {k: category(f) if isinstance(f, str) else category_from_json(f, name=f"F{k}")
              for k, f in enumerate(spec["fibers"])}
    n = len(fibers) - 1
    if len(spec["pushes"]) != n:
        raise ValueError("need one object map per consecutive pair of fibers")
    S = chain_category(n)
    steps = [corpus_functor(fibers[k], fibers[k + 1], m) for k, m in enumerate(spec["pushes"])]
    pushes = {}
    for a, b in S.morphisms:
        F = identity_functor(fibers[a])
        for k in range(a, b):
            F = F.then(steps[k])
        pushes[(a, b)] = F
    if variance == "co":
        return Diagram(S, fibers, pushes)
    return Diagram(S, {k: fibers[n - k] for k in fibers},
                   {(a, b): pushes[(n - b, n - a)] for (a, b) in S.morphisms}, "contra")


def diagram(name: str, variance: str = "co") -> Diagram:
    """The corpus diagram ``name`` (see :func:`diagram_from_data`)."""
    spec = next((d for d in corpus_data()["diagrams"] if d["name"] == name), None)
    if spec is None:
        raise KeyError(f"unknown corpus diagram {name!r}")
    return diagram_from_data(spec, variance)


def diagrams() -> list[str]:
    return [d["name"] for d in corpus_data()["diagrams"]]


def marbled_family(names=None) -> list:
    """Marbled fibrations of the corpus diagrams (bases ``[0]``, ``[1]``, ``[2]``)."""
    from .marbled import MarbledFibration

    return [MarbledFibration(diagram(d), name=d) for d in (names or diagrams())]


def adjunction_corpus() -> list:
    """Six small simplicial sets used for the adjunction counts."""
    from .simplicial import sset_from_json

    return [sset_from_json(d, name=d["name"]) for d in corpus_data()["ssets"]]
