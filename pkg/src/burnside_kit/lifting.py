"""Lifting problems decided by exhaustive search.

Targets may carry extra structure: anything with ``sset`` plus ``is_marked``
(and for the marbled flavor ``is_blazed``) is accepted on the target side,
and finite sources expose ``marked_cells`` / ``blazed_squares``.
"""
from __future__ import annotations

import itertools
from collections.abc import Callable, Iterator
from dataclasses import dataclass, field

from .simplicial import (
    SimplicialMap,
    VirtualSSet,
    iter_maps,
    search_order,
)

FLAVORS = ("plain", "marked", "marbled")


class InsufficientBound(ValueError):
    """The target was materialized below the dimension the question needs."""


def underlying(X):
    return getattr(X, "sset", X)


def _flavor_check(B, X, flavor: str) -> Callable | None:
    """Pruning callback enforcing marks and blazes during map search."""
    if flavor == "plain":
        return None
    if flavor not in FLAVORS:
        raise ValueError(f"unknown flavor {flavor!r}")
    Bs = underlying(B)
    marked = set(getattr(B, "marked_cells", ()))
    squares_at: dict = {}
    if flavor == "marbled":
        order = {x: k for k, x in enumerate(search_order(Bs))}
        for sq in getattr(B, "blazed_squares", ()):
            last = max((s.target for s in sq), key=order.__getitem__)
            squares_at.setdefault(last, []).append(sq)
    Xs = underlying(X)

    def check(x, c, assign):
        if x in marked and not X.is_marked(c):
            return False
        for sq in squares_at.get(x, ()):
            img = tuple(
                c if s.target == x and s.nondegenerate else Xs.act(s.sigma, c if s.target == x else assign[s.target])
                for s in sq
            )
            if not X.is_blazed(img):
                return False
        return True

    return check


def enumerate_maps(B, X, partial: dict | None = None, flavor: str = "plain",
                   check: Callable | None = None) -> Iterator[dict]:
    """Maps ``B -> X`` as assignments on nondegenerate cells of ``B``.

    ``partial`` pins cells; ``flavor`` requires marked edges (and blazed
    squares) to go to marked edges (blazed squares).
    """
    Bs, Xs = underlying(B), underlying(X)
    bound = getattr(Xs, "bound", None)
    if bound is not None and Bs.dimension > bound:
        raise InsufficientBound(
            f"{Xs.name} is materialized to dimension {bound} but {Bs.name} has dimension {Bs.dimension}")
    structural = _flavor_check(B, X, flavor)
    if structural is None:
        test = check
    elif check is None:
        test = structural
    else:
        def test(x, c, assign):
            return structural(x, c, assign) and check(x, c, assign)
    return iter_maps(Bs, Xs, fixed=partial, check=test)


# ---------------------------------------------------------------------------
# lifting problems


@dataclass
class LiftingProblem:
    """Square ``top: A -> X``, ``bottom: B -> Y`` over a mono ``i: A -> B`` and ``p: X -> Y``.

    ``B`` and ``X`` may be marked or marbled; ``i.target`` must be the
    underlying simplicial set of ``B``.
    """

    i: SimplicialMap
    p: Callable
    X: object
    Y: VirtualSSet
    top: dict
    bottom: dict
    B: object = None
    flavor: str = "plain"

    def __post_init__(self):
        if self.B is None:
            self.B = self.i.target
        if underlying(self.B) is not self.i.target:
            raise ValueError("structured source does not match the monomorphism")
        for a, t in self.top.items():
            ref = self.i.assign[a]
            low = self.Y.act(ref.sigma, self.bottom[ref.target])
            if self.p(t) != low:
                raise ValueError(f"lifting square does not commute at {a!r}")


def has_lift(prob: LiftingProblem) -> dict | None:
    """A lift ``B -> X`` as an assignment, or ``None`` after exhausting the search."""
    i = prob.i
    if not i.is_mono():
        raise ValueError("lifting problems are posed along monomorphisms")
    fixed = {i.assign[a].target: t for a, t in prob.top.items()}

    def over(x, c, assign):
        return prob.p(c) == prob.bottom[x]

    return next(enumerate_maps(prob.B, prob.X, partial=fixed, flavor=prob.flavor, check=over), None)


# ---------------------------------------------------------------------------
# fibrations


@dataclass
class FibrationReport:
    property: str
    bound: int
    verdict: str
    definitive: bool
    checked: int = 0
    counterexample: dict | None = None
    note: str = ""
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.verdict == "passes"

    def as_dict(self) -> dict:
        return {"property": self.property, "bound": self.bound, "verdict": self.verdict,
                "definitive": self.definitive, "checked": self.checked,
                "counterexample": self.counterexample, "note": self.note}


def compatible_facets(E: VirtualSSet, n: int, present, first_filter: Callable | None = None,
                      accept: Callable | None = None):
    """Tuples of ``(n-1)``-simplices forming a map from the union of the given facets of ``Delta^n``.

    Facets ``i < j`` must satisfy ``d_i y_j = d_{j-1} y_i``.  The first
    facet in ``present`` can be filtered by ``first_filter``, and every
    facet ``y`` in position ``j`` by ``accept(j, y)``.
    """
    present = list(present)
    if n == 1:
        for choice in _vertex_tuples(E, present):
            yield choice
        return
    chosen: dict = {}

    def grow(idx):
        if idx == len(present):
            yield dict(chosen)
            return
        j = present[idx]
        cons = {}
        for i, y in chosen.items():
            if i < j:
                cons[i] = E.face(j - 1, y)
            else:
                cons[i - 1] = E.face(j, y)
        pool = E.fill(n - 1, cons) if cons else E.simplices(n - 1)
        for y in pool:
            if idx == 0 and first_filter is not None and not first_filter(y):
                continue
            if accept is not None and not accept(j, y):
                continue
            chosen[j] = y
            yield from grow(idx + 1)
            del chosen[j]

    yield from grow(0)


def _vertex_tuples(E, present):
    verts = list(E.simplices(0))
    for combo in itertools.product(verts, repeat=len(present)):
        yield dict(zip(present, combo))


def horn_indices(kind: str, n: int) -> list[int]:
    if kind == "inner":
        return list(range(1, n))
    if kind == "left":
        return list(range(0, n))
    if kind == "right":
        return list(range(1, n + 1))
    raise ValueError(f"unknown fibration kind {kind!r}")


def _caveat(bound: int, coskeletal: int | None) -> tuple[bool, str]:
    if coskeletal is not None and coskeletal + 1 <= bound:
        return True, f"definitive: both sides are {coskeletal}-coskeletal"
    return False, f"verified up to dimension {bound}"


def check_fibration(p: Callable, E: VirtualSSet, B: VirtualSSet, kind: str, bound: int,
                    coskeletal: int | None = None, start: int = 1,
                    horn_filter: Callable | None = None) -> FibrationReport:
    """Right lifting property of ``p: E -> B`` against horns or boundaries up to ``bound``.

    ``horn_filter(n)`` may return a facet predicate restricting the horns
    searched to a set of orbit representatives; the caller is responsible
    for fillability being invariant along the orbits.
    """
    if kind not in ("inner", "left", "right", "trivial"):
        raise ValueError(f"unknown fibration kind {kind!r}")
    definitive, note = _caveat(bound, coskeletal)
    checked = 0
    if kind == "trivial":
        for n in range(0, bound + 1):
            if n == 0:
                hit = {p(v) for v in E.simplices(0)}
                for b in B.simplices(0):
                    checked += 1
                    if b not in hit:
                        return FibrationReport(kind, bound, "fails", True, checked,
                                               {"n": 0, "bottom": repr(b)}, note)
                continue
            for faces in compatible_facets(E, n, range(n + 1)):
                for b in B.fill(n, {i: p(f) for i, f in faces.items()}):
                    checked += 1
                    if not any(p(e) == b for e in E.fill(n, faces)):
                        return FibrationReport(kind, bound, "fails", True, checked,
                                               {"n": n, "sphere": repr(faces), "bottom": repr(b)}, note)
        return FibrationReport(kind, bound, "passes", definitive, checked, None, note)
    for n in range(max(start, 1), bound + 1):
        for k in horn_indices(kind, n):
            accept = horn_filter(n) if horn_filter is not None else None
            for faces in compatible_facets(E, n, [i for i in range(n + 1) if i != k], accept=accept):
                for b in B.fill(n, {i: p(f) for i, f in faces.items()}):
                    checked += 1
                    if not any(p(e) == b for e in E.fill(n, faces)):
                        return FibrationReport(
                            kind, bound, "fails", True, checked,
                            {"n": n, "k": k, "horn": repr(faces), "bottom": repr(b)}, note)
    return FibrationReport(kind, bound, "passes", definitive, checked, None, note)


def check_cocartesian_edge(p: Callable, E: VirtualSSet, B: VirtualSSet, e, bound: int,
                           coskeletal: int | None = None) -> FibrationReport:
    """Every ``Lambda^n_0`` problem whose initial edge is ``e`` has a solution, 2 <= n <= bound."""
    definitive, note = _caveat(bound, coskeletal)
    checked = 0
    for n in range(2, bound + 1):
        present = [n] + list(range(1, n))
        for faces in compatible_facets(E, n, present, lambda y: E.act((0, 1), y) == e):
            for b in B.fill(n, {i: p(f) for i, f in faces.items()}):
                checked += 1
                if not any(p(x) == b for x in E.fill(n, faces)):
                    return FibrationReport("cocartesian", bound, "fails", True, checked,
                                           {"n": n, "horn": repr(faces), "bottom": repr(b)}, note)
    return FibrationReport("cocartesian", bound, "passes", definitive, checked, None, note)
