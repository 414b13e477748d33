"""Checkable derivations that a monomorphism lies in a saturated class.

A certificate is a tree of nodes, each carrying its subject mono:

* ``Generator``: an instance of a generating mono of the class;
* ``Pushout``: the cobase change of a certified arm along an attaching map;
* ``Compose``: a composite of certified monos (the empty composite is an identity);
* ``IsoTransport``: transport of a certified mono along isomorphisms of
  source and target;
* ``RightCancel``: ``v`` is certified from certificates of ``u`` and ``v u``.

Objects are always :class:`MarbledSSet` instances; plain simplicial sets
carry no marks and marked ones carry no blazes.  The verifier rechecks every
side condition from the simplicial data and reports failures with the path of
the offending node.
"""
from __future__ import annotations

import ast
import json
from dataclasses import dataclass, field

from .marbled import MarbledSSet, MarkedSSet, is_constant_square, transpose
from .simplicial import (
    ChainSSet,
    Simplex,
    SimplicialMap,
    SimplicialSet,
    coproduct,
    horn,
    horn_chains,
    identity_map,
    inclusion,
    j_chains,
    nd,
    opposite,
    poset_chains,
    same_subobject_up_to_iso,
    spine,
    standard_simplex,
)

FLAVORS = ("plain", "marked", "marbled")


def decorated(X, marked=(), blazed=()) -> MarbledSSet:
    """Coerce a simplicial, marked or marbled set to a :class:`MarbledSSet`."""
    if isinstance(X, MarbledSSet):
        return X
    if isinstance(X, MarkedSSet):
        return MarbledSSet(X.sset, X.marked, blazed, name=X.name)
    return MarbledSSet(X, marked, blazed, name=X.name)


@dataclass
class Mono:
    """A monomorphism ``map: source -> target`` of decorated simplicial sets."""

    map: SimplicialMap
    source: MarbledSSet
    target: MarbledSSet

    @classmethod
    def of(cls, i: SimplicialMap, A=None, B=None) -> Mono:
        return cls(i, decorated(A if A is not None else i.source),
                   decorated(B if B is not None else i.target))

    def __repr__(self):
        return f"<Mono {self.source.name} -> {self.target.name}>"


def sub_inclusion(A, B) -> Mono:
    """Inclusion of a decorated subobject whose cells are named as in ``B``."""
    A, B = decorated(A), decorated(B)
    return Mono(inclusion(A.sset, B.sset), A, B)


# ---------------------------------------------------------------------------
# generators


def _l_marks(P: ChainSSet) -> tuple:
    return ((0, 1),) if (0, 1) in P.cells else ()


def _square() -> tuple[ChainSSet, tuple]:
    a00, a01, a10, a11 = (0, 0), (0, 1), (1, 0), (1, 1)
    Q = ChainSSet([(a00, a01, a11), (a00, a10, a11)], name="Delta1xDelta1")
    sq = (Q.simplex_of((a00, a01, a11)), Q.simplex_of((a00, a10, a11)))
    return Q, sq


def _rectangle() -> tuple[ChainSSet, tuple, tuple, tuple]:
    """``Delta^1 x Delta^2`` with its left, right and outer squares."""
    els = [(r, c) for r in (0, 1) for c in (0, 1, 2)]
    R = ChainSSet(poset_chains(els, lambda a, b: a != b and a[0] <= b[0] and a[1] <= b[1]),
                  name="Delta1xDelta2")

    def sq(a00, a01, a10, a11):
        return (R.simplex_of((a00, a01, a11)), R.simplex_of((a00, a10, a11)))

    return (R, sq((0, 0), (0, 1), (1, 0), (1, 1)), sq((0, 1), (0, 2), (1, 1), (1, 2)),
            sq((0, 0), (0, 2), (1, 0), (1, 2)))


def _cube() -> tuple[ChainSSet, tuple, tuple, list]:
    """``Delta^1 x Delta^1 x Delta^1`` with its bottom and top squares and vertical edges."""
    els = [(h, r, c) for h in (0, 1) for r in (0, 1) for c in (0, 1)]
    K = ChainSSet(poset_chains(els, lambda a, b: a != b and all(x <= y for x, y in zip(a, b))),
                  name="Delta1xDelta1xDelta1")

    def sq(h):
        return (K.simplex_of(((h, 0, 0), (h, 0, 1), (h, 1, 1))),
                K.simplex_of(((h, 0, 0), (h, 1, 0), (h, 1, 1))))

    verticals = [((0, r, c), (1, r, c)) for r in (0, 1) for c in (0, 1)]
    return K, sq(0), sq(1), verticals


def generator_instance(name: str, params: tuple, flavor: str) -> Mono:
    """The generating mono ``name(params)`` in the given flavor, on canonical vertices."""
    decorate = flavor != "plain"
    if name == "inner_horn":
        m, k = params
        if not 0 < k < m:
            raise ValueError(f"inner_horn{params}: need 0 < k < m")
        return Mono.of(horn(m, {k}))
    if name == "spine":
        (m,) = params
        if m < 2:
            raise ValueError("spine generators need m >= 2")
        return Mono.of(spine(m))
    if name in ("i1", "i2"):
        m = int(name[1])
        if params:
            raise ValueError(f"{name} takes no parameters")
        i = horn(m, {0})
        if not decorate:
            return Mono.of(i)
        return Mono(i, decorated(i.source, _l_marks(i.source)),
                    decorated(i.target, _l_marks(i.target)))
    if name == "marked_composite":
        if not decorate:
            raise ValueError("marked_composite needs a marked flavor")
        i = horn(2, {1})
        return Mono(i, decorated(i.source, [(0, 1), (1, 2)]),
                    decorated(i.target, [(0, 1), (1, 2), (0, 2)]))
    if name == "left_horn":
        (m,) = params
        if m < 3:
            raise ValueError("left_horn generators need m >= 3 (use i1, i2 below)")
        i = horn(m, {0})
        if not decorate:
            return Mono.of(i)
        return Mono(i, decorated(i.source, _l_marks(i.source)),
                    decorated(i.target, _l_marks(i.target)))
    if name == "i2_marked":
        if not decorate:
            raise ValueError("i2_marked needs a marked flavor")
        i = horn(2, {0})
        return Mono(i, decorated(i.source, [(0, 1), (0, 2)]),
                    decorated(i.target, [(0, 1), (0, 2), (1, 2)]))
    if name == "pasting":
        if flavor != "marbled":
            raise ValueError("pasting needs the marbled flavor")
        R, left, right, outer = _rectangle()
        inner = [left, transpose(left), right, transpose(right)]
        return Mono(identity_map(R), decorated(R, (), inner),
                    decorated(R, (), inner + [outer, transpose(outer)]))
    if name == "pushforward":
        if flavor != "marbled":
            raise ValueError("pushforward needs the marbled flavor")
        K, bottom, top, verticals = _cube()
        below = [bottom, transpose(bottom)]
        return Mono(identity_map(K), decorated(K, verticals, below),
                    decorated(K, verticals, below + [top, transpose(top)]))
    if name == "pullback_cone":
        if flavor != "marbled":
            raise ValueError("pullback_cone needs the marbled flavor")
        Q, sq = _square()
        A = ChainSSet([((0, 1), (1, 1)), ((1, 0), (1, 1))], name="cospan")
        return Mono(inclusion(A, Q), decorated(A), decorated(Q, (), [sq, transpose(sq)]))
    raise ValueError(f"unknown generator {name!r}")


@dataclass(frozen=True)
class ClassSpec:
    """A saturated class presented by generators.

    ``generators`` names the admissible generator families.  ``right_cancel``
    records that the class is known to have the right cancellation property
    (for instance because it is the class of trivial cofibrations of a model
    structure whose cofibrations are the monomorphisms); it is trusted, not
    verified.
    """

    name: str
    flavor: str
    generators: tuple
    right_cancel: bool = False
    max_dim: int = 8

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {self.flavor!r}")

    def allows(self, name: str, params: tuple) -> bool:
        if name not in self.generators:
            return False
        if name in ("inner_horn", "spine", "left_horn"):
            return params[0] <= self.max_dim
        return True

    def instance(self, name: str, params: tuple = ()) -> Mono:
        return generator_instance(name, tuple(params), self.flavor)

    def as_dict(self) -> dict:
        return {"name": self.name, "flavor": self.flavor, "generators": list(self.generators),
                "right_cancel": self.right_cancel, "max_dim": self.max_dim}


INNER_ANODYNE = ClassSpec("inner-anodyne", "plain", ("inner_horn",))
JOYAL_TRIVIAL = ClassSpec("joyal-trivial", "plain", ("inner_horn",), right_cancel=True)
SPINE_CLASS = ClassSpec("spines", "plain", ("spine",), right_cancel=True)
LEFT_FROM_SPINES = ClassSpec("spines+i1+i2", "plain", ("spine", "i1", "i2"), right_cancel=True)
MARKED_LEFT_FROM_SPINES = ClassSpec("marked spines+i1+i2", "marked", ("spine", "i1", "i2"),
                                    right_cancel=True)
MARBLED_TRIVIAL = ClassSpec("marbled", "marbled",
                            ("inner_horn", "marked_composite", "i1", "i2", "i2_marked",
                             "left_horn", "pullback_cone", "pasting", "pushforward"),
                            max_dim=4)
SPECS = {s.name: s for s in (INNER_ANODYNE, JOYAL_TRIVIAL, SPINE_CLASS, LEFT_FROM_SPINES,
                             MARKED_LEFT_FROM_SPINES, MARBLED_TRIVIAL)}


# ---------------------------------------------------------------------------
# certificate nodes


@dataclass
class Certificate:
    subject: Mono

    kind = "node"

    def children(self) -> list[tuple[str, Certificate]]:
        return []

    def size(self) -> int:
        return 1 + sum(c.size() for _, c in self.children())


@dataclass
class Generator(Certificate):
    name: str = ""
    params: tuple = ()

    kind = "Generator"


@dataclass
class Pushout(Certificate):
    """``subject: A -> B`` is the cobase change of ``arm: G0 -> G1`` along ``attach: G1 -> B``."""

    arm: Certificate = None
    attach: SimplicialMap = None

    kind = "Pushout"

    def children(self):
        return [("arm", self.arm)]


@dataclass
class Compose(Certificate):
    parts: list = field(default_factory=list)

    kind = "Compose"

    def children(self):
        return [(f"parts[{k}]", c) for k, c in enumerate(self.parts)]


@dataclass
class IsoTransport(Certificate):
    """``subject = beta . inner . alpha`` with ``alpha``, ``beta`` isomorphisms."""

    inner: Certificate = None
    alpha: SimplicialMap = None
    beta: SimplicialMap = None

    kind = "IsoTransport"

    def children(self):
        return [("inner", self.inner)]


@dataclass
class RightCancel(Certificate):
    """``subject = v`` from certificates of ``u`` and of ``v u``."""

    u: Certificate = None
    vu: Certificate = None

    kind = "RightCancel"

    def children(self):
        return [("u", self.u), ("vu", self.vu)]


def identity_certificate(X) -> Compose:
    X = decorated(X)
    return Compose(Mono(identity_map(X.sset), X, X), [])


# ---------------------------------------------------------------------------
# verification


@dataclass
class Verdict:
    ok: bool
    errors: list = field(default_factory=list)
    nodes: int = 0

    def as_dict(self) -> dict:
        return {"ok": self.ok, "nodes": self.nodes,
                "errors": [{"path": p, "message": m} for p, m in self.errors]}


def same_object(X: MarbledSSet, Y: MarbledSSet) -> bool:
    if X is Y:
        return True
    return (X.sset is Y.sset or (X.sset.cells == Y.sset.cells and X.sset.faces == Y.sset.faces)) \
        and X.marked == Y.marked and X.blazed == Y.blazed


def same_map(f: SimplicialMap, g: SimplicialMap) -> bool:
    return f.assign.keys() == g.assign.keys() and all(f.assign[x] == g.assign[x] for x in f.assign)


def _marks_image(f: SimplicialMap, X: MarbledSSet) -> set:
    return {f(nd(e, 1)) for e in X.marked}


def _blazes_image(f: SimplicialMap, X: MarbledSSet, Y: MarbledSSet) -> set:
    out = set()
    for t, b in X.blazed:
        sq = (f(t), f(b))
        if not is_constant_square(Y.sset, sq):
            out.add(sq)
    return out


def _nondeg_targets(simplices) -> set:
    return {s.target for s in simplices if s.nondegenerate}


def mono_problems(m: Mono) -> list[str]:
    """Side conditions every subject must satisfy: a decorated monomorphism."""
    f = m.map
    out = []
    if f.source.cells != m.source.sset.cells or f.target is not m.target.sset and (
            getattr(f.target, "cells", None) != m.target.sset.cells):
        out.append("map endpoints differ from the decorated objects")
        return out
    try:
        f.check()
    except (ValueError, KeyError) as exc:
        out.append(f"not a simplicial map: {exc}")
        return out
    if not f.is_mono():
        out.append("not a monomorphism")
    if not all(m.target.is_marked(e) for e in _marks_image(f, m.source)):
        out.append("a marked edge is sent to an unmarked edge")
    if not all(m.target.is_blazed(sq) for sq in _blazes_image(f, m.source, m.target)):
        out.append("a blazed square is sent to an unblazed square")
    return out


def _is_iso(f: SimplicialMap, X: MarbledSSet, Y: MarbledSSet) -> bool:
    if len(X.sset.cells) != len(Y.sset.cells) or not f.is_mono():
        return False
    try:
        f.check()
    except (ValueError, KeyError):
        return False
    return _nondeg_targets(_marks_image(f, X)) == set(Y.marked) and \
        _blazes_image(f, X, Y) == set(Y.blazed)


def _composite(f: SimplicialMap, g: SimplicialMap) -> SimplicialMap:
    return f.then(g)


def verify_certificate(c: Certificate, spec: ClassSpec, path: str = "root") -> Verdict:
    """Check every node of ``c`` against ``spec``; errors carry node paths."""
    errors: list = []
    count = [0]
    _verify(c, spec, path, errors, count)
    return Verdict(not errors, errors, count[0])


def _verify(c: Certificate, spec: ClassSpec, path: str, errors: list, count: list) -> None:
    count[0] += 1
    here = f"{path}:{c.kind}"
    for msg in mono_problems(c.subject):
        errors.append((here, msg))
    check = getattr(_Checks, c.kind, None)
    if check is None:
        errors.append((here, f"unknown node kind {c.kind!r}"))
        return
    for msg in check(c, spec):
        errors.append((here, msg))
    for label, child in c.children():
        if child is None:
            errors.append((here, f"missing child {label}"))
        else:
            _verify(child, spec, f"{here}/{label}", errors, count)


class _Checks:
    @staticmethod
    def Generator(c: Generator, spec: ClassSpec) -> list[str]:
        if not spec.allows(c.name, c.params):
            return [f"generator {c.name}{c.params} is not in class {spec.name}"]
        try:
            g = spec.instance(c.name, c.params)
        except ValueError as exc:
            return [str(exc)]
        s = c.subject
        if not (same_object(g.source, s.source) and same_object(g.target, s.target)
                and same_map(g.map, s.map)):
            return [f"subject is not the generator {c.name}{c.params}"]
        return []

    @staticmethod
    def Pushout(c: Pushout, spec: ClassSpec) -> list[str]:
        if c.arm is None or c.attach is None:
            return ["pushout node without arm or attaching map"]
        g, i, phi = c.arm.subject, c.subject.map, c.attach
        A, B = c.subject.source, c.subject.target
        G0, G1 = g.source, g.target
        out = []
        if phi.source.cells != G1.sset.cells or getattr(phi.target, "cells", None) != B.sset.cells:
            return ["attaching map has the wrong endpoints"]
        try:
            phi.check()
        except (ValueError, KeyError) as exc:
            return [f"attaching map is not simplicial: {exc}"]
        image = {i.assign[a].target for a in A.sset.cells}
        old = {g.map.assign[x].target for x in G0.sset.cells}
        for x in G0.sset.cells:
            if phi(g.map.assign[x]).target not in image:
                out.append(f"attaching map does not send {x!r} of the arm source into the source")
        new = set()
        for y, d in G1.sset.cells.items():
            if y in old:
                continue
            z = phi(nd(y, d))
            if not z.nondegenerate or z.target in image or z.target in new:
                out.append(f"new cell {y!r} is not attached freely")
            new.add(z.target)
        if image | new != set(B.sset.cells):
            out.append("source and attached cells do not exhaust the target")
        want_marks = _nondeg_targets(_marks_image(i, A) | _marks_image(phi, G1))
        if want_marks != set(B.marked):
            out.append("target marking is not the pushout marking")
        if _blazes_image(i, A, B) | _blazes_image(phi, G1, B) != set(B.blazed):
            out.append("target blazing is not the pushout blazing")
        corner = _composite(g.map, phi)
        for e in G0.marked:
            s = corner(nd(e, 1))
            if s.nondegenerate and s.target not in _nondeg_targets(_marks_image(i, A)):
                out.append("corner map does not preserve marks")
        for t, b in G0.blazed:
            sq = (corner(t), corner(b))
            if not is_constant_square(B.sset, sq) and sq not in _blazes_image(i, A, B):
                out.append("corner map does not preserve blazes")
        return out

    @staticmethod
    def Compose(c: Compose, spec: ClassSpec) -> list[str]:
        s = c.subject
        if not c.parts:
            if same_object(s.source, s.target) and same_map(s.map, identity_map(s.source.sset)):
                return []
            return ["empty composite whose subject is not an identity"]
        out = []
        for k, (p, q) in enumerate(zip(c.parts, c.parts[1:])):
            if not same_object(p.subject.target, q.subject.source):
                out.append(f"parts {k} and {k + 1} are not composable")
        if not same_object(c.parts[0].subject.source, s.source) or \
                not same_object(c.parts[-1].subject.target, s.target):
            out.append("composite endpoints differ from the subject")
            return out
        f = c.parts[0].subject.map
        for p in c.parts[1:]:
            f = _composite(f, p.subject.map)
        if not same_map(f, s.map):
            out.append("mismatched composite")
        return out

    @staticmethod
    def IsoTransport(c: IsoTransport, spec: ClassSpec) -> list[str]:
        s, i = c.subject, c.inner.subject
        out = []
        if not _is_iso(c.alpha, s.source, i.source):
            out.append("alpha is not an isomorphism of decorated objects")
        if not _is_iso(c.beta, i.target, s.target):
            out.append("beta is not an isomorphism of decorated objects")
        if out:
            return out
        if not same_map(_composite(_composite(c.alpha, i.map), c.beta), s.map):
            out.append("transported map differs from the subject")
        return out

    @staticmethod
    def RightCancel(c: RightCancel, spec: ClassSpec) -> list[str]:
        if not spec.right_cancel:
            return [f"class {spec.name} is not known to have the right cancellation property"]
        u, w, v = c.u.subject, c.vu.subject, c.subject
        out = []
        if not same_object(u.target, v.source):
            out.append("u does not end where v starts")
        if not same_object(w.source, u.source) or not same_object(w.target, v.target):
            out.append("v u has the wrong endpoints")
        if not out and not same_map(_composite(u.map, v.map), w.map):
            out.append("certified composite is not v u")
        return out


# ---------------------------------------------------------------------------
# search for cell decompositions


class Exhausted(Exception):
    """No decomposition was found within the budget (not a proof of absence)."""


def subobject(B: SimplicialSet, cells) -> SimplicialSet:
    """The simplicial subset of ``B`` on a face-closed set of cells, named as in ``B``."""
    cells = set(cells)
    if len(cells) == len(B.cells):
        return B
    keep = {x: d for x, d in B.cells.items() if x in cells}
    return SimplicialSet(keep, {x: B.faces[x] for x in keep if keep[x]}, name=f"{B.name}|sub",
                         check=False)


@dataclass
class _Move:
    name: str
    params: tuple
    attach: dict
    new: tuple
    marks: frozenset
    blazes: frozenset


_T_POS = {(0, 0): 0, (0, 1): 1, (1, 1): 2}
_B_POS = {(0, 0): 0, (1, 0): 1, (1, 1): 2}


class _Search:
    def __init__(self, spec: ClassSpec, B: MarbledSSet):
        self.spec, self.B = spec, B
        self.S = B.sset
        self.marked = set(B.marked)
        self.blazed = set(B.blazed)
        self.instances: dict = {}
        self.halves: dict = {}
        self.cone_cells: dict = {}
        for t, b in self.blazed:
            self.halves.setdefault(t.target, []).append((t, b))
            self.halves.setdefault(b.target, []).append((t, b))
            S = self.S
            for z in (S.act((0,), t), S.act((0, 1), t), S.act((0, 1), b), S.act((0, 2), t), t, b):
                self.cone_cells.setdefault(z.target, []).append((t, b))
        self.current_marks: set = set()
        self.current_blazes: set = set()
        self.derived = self._derivations()

    def _derivations(self) -> dict:
        """Ways a blazed square arises from other blazed squares without new cells.

        ``pasting``: the outer square of two blazed squares; ``pushforward``:
        the top of a cube whose bottom square is blazed and whose vertical
        edges are marked.
        """
        S = self.S
        gens = self.spec.generators
        if not isinstance(S, ChainSSet):
            return {}
        out: dict = {}
        if "pasting" in gens:
            R, left, right, outer = _rectangle()
            for t, b in self.blazed:
                a00, a01, a11 = S.vertex_seq(t)
                a10 = S.vertex_seq(b)[1]
                for (m,) in S.nondeg(0):
                    if (a00, m, a01) not in S.cells:
                        continue
                    for (m2,) in S.nondeg(0):
                        if (a10, m2, a11) not in S.cells:
                            continue
                        vmap = {(0, 0): a00, (0, 1): m, (0, 2): a01, (1, 0): a10, (1, 1): m2,
                                (1, 2): a11}
                        self._record(out, "pasting", (t, b), R, vmap, (left, right), ())
        if "pushforward" in gens:
            K, bottom, top, verticals = _cube()
            into: dict = {}
            for e in self.marked:
                into.setdefault(e[1], []).append(e[0])
            for t, b in self.blazed:
                a00, a01, a11 = S.vertex_seq(t)
                a10 = S.vertex_seq(b)[1]
                for p00 in into.get(a00, ()):
                    for p01 in into.get(a01, ()):
                        for p10 in into.get(a10, ()):
                            for p11 in into.get(a11, ()):
                                vmap = {(0, 0, 0): p00, (0, 0, 1): p01, (0, 1, 0): p10,
                                        (0, 1, 1): p11, (1, 0, 0): a00, (1, 0, 1): a01,
                                        (1, 1, 0): a10, (1, 1, 1): a11}
                                self._record(out, "pushforward", (t, b), K, vmap, (bottom,),
                                             verticals)
        for sq in list(out):
            out.setdefault(transpose(sq), out[sq])
        return out

    def _record(self, out, name, sq, G, vmap, needed, marked_edges):
        S = self.S
        if len(set(vmap.values())) < len(vmap):
            return
        images = {c: tuple(vmap[v] for v in c) for c in G.cells}
        if any(z not in S.cells for z in images.values()):
            return
        phi = SimplicialMap(G, S, {c: nd(z, len(z) - 1) for c, z in images.items()})
        sub = [(phi(x), phi(y)) for x, y in needed]
        if not all(q in self.blazed for q in sub):
            return
        marks = [images[e] for e in marked_edges]
        if not all(e in self.marked for e in marks):
            return
        out.setdefault(sq, []).append((name, phi, sub, frozenset(marks),
                                       frozenset(images.values())))

    def derived_moves(self, have: set):
        for sq, options in self.derived.items():
            if sq in self.current_blazes:
                continue
            for name, phi, sub, marks, cells in options:
                if cells <= have and marks <= self.current_marks and \
                        all(x in self.current_blazes for x in sub):
                    yield _Move(name, (), phi, (), frozenset(), frozenset((sq, transpose(sq))))
                    break

    def instance(self, name, params):
        key = (name, params)
        if key not in self.instances:
            self.instances[key] = self.spec.instance(name, params)
        return self.instances[key]

    def families(self, m: int):
        gens = self.spec.generators
        if "inner_horn" in gens and 2 <= m <= self.spec.max_dim:
            for k in range(1, m):
                yield "inner_horn", (m, k)
        if "marked_composite" in gens and m == 2:
            yield "marked_composite", ()
        if m == 1 and "i1" in gens:
            yield "i1", ()
        if m == 2 and "i2" in gens:
            yield "i2", ()
        if m == 2 and "i2_marked" in gens:
            yield "i2_marked", ()
        if "left_horn" in gens and 3 <= m <= self.spec.max_dim:
            yield "left_horn", (m,)
        if "spine" in gens and 2 <= m <= self.spec.max_dim:
            yield "spine", (m,)

    def simplex_moves(self, have: set, y, m: int):
        S = self.S
        top = nd(y, m)
        for name, params in self.families(m):
            g = self.instance(name, params)
            G1 = g.target.sset
            old = {g.map.assign[x].target for x in g.source.sset.cells}
            attach, new, ok = {}, [], True
            for c, d in G1.cells.items():
                z = S.act(c, top)
                attach[c] = z
                if c in old:
                    ok = z.target in have
                else:
                    ok = z.nondegenerate and z.target not in have
                    new.append(z.target)
                if not ok:
                    break
            if not ok or len(set(new)) != len(new):
                continue
            phi = SimplicialMap(G1, S, attach)
            move = self._decorate(name, params, g, phi, attach, new, have)
            if move is not None:
                yield move

    def _decorate(self, name, params, g, phi, attach, new, have, blazes=()):
        marks = frozenset(phi(nd(e, 1)).target for e in g.target.marked
                          if phi(nd(e, 1)).nondegenerate)
        for e in new:
            if self.S.cells[e] == 1 and (e in self.marked) != (e in marks):
                return None
        for e in g.source.marked:
            s = phi(g.map.assign[e])
            if s.nondegenerate and s.target not in self.current_marks:
                return None
        after = have | set(new)
        for e in new:
            for sq in self.cone_cells.get(e, ()):
                if sq not in self.current_blazes and sq not in blazes and sq not in self.derived:
                    return None
            for t, b in self.halves.get(e, ()):
                if t.target in after and b.target in after and (t, b) not in blazes and \
                        (t, b) not in self.derived:
                    return None
        return _Move(name, params, phi, tuple(new), marks, frozenset(blazes))

    def cone_moves(self, have: set):
        if "pullback_cone" not in self.spec.generators:
            return
        S = self.S
        g = self.instance("pullback_cone", ())
        Q = g.target.sset
        seen = set()
        for t, b in self.blazed:
            if t.target in have or b.target in have or frozenset((t, b)) in seen:
                continue
            seen.add(frozenset((t, b)))
            attach = {}
            for c in Q.cells:
                if (1, 0) in c:
                    attach[c] = S.act(tuple(_B_POS[v] for v in c), b)
                else:
                    attach[c] = S.act(tuple(_T_POS[v] for v in c), t)
            old = {g.map.assign[x].target for x in g.source.sset.cells}
            new, ok = [], True
            for c, z in attach.items():
                present = z.nondegenerate and z.target in have
                if c in old:
                    ok &= present
                else:
                    ok &= z.nondegenerate and not present
                    new.append(z.target)
            if not ok or len(set(new)) != len(new):
                continue
            phi = SimplicialMap(Q, S, attach)
            move = self._decorate("pullback_cone", (), g, phi, attach, new, have,
                                  blazes=((t, b), transpose((t, b))))
            if move is not None and all(sq in self.blazed for sq in move.blazes):
                yield move

    def moves(self, have: set):
        S = self.S
        eager = next(self.derived_moves(have), None)
        if eager is not None:
            return [eager]
        out = []
        for d in range(S.dimension + 1):
            for y in S.nondeg(d):
                if y not in have:
                    out.extend(self.simplex_moves(have, y, d))
        out.extend(self.cone_moves(have))
        out.sort(key=lambda mv: (max(S.cells[e] for e in mv.new), len(mv.new),
                                 mv.name != "inner_horn"))
        return out


def find_cell_decomposition(i, spec: ClassSpec, budget: int = 64, A=None, B=None,
                            max_nodes: int = 200000) -> Compose:
    """Backtracking search for a filtration of ``i`` by pushouts of generators.

    ``budget`` bounds the number of attachments.  Raises :class:`Exhausted`
    when the search space is exhausted within the budget.
    """
    m = i if isinstance(i, Mono) else Mono.of(i, A, B)
    A, B, f = m.source, m.target, m.map
    search = _Search(spec, B)
    start = {f.assign[x].target for x in A.sset.cells}
    marks0 = _nondeg_targets(_marks_image(f, A))
    blazes0 = _blazes_image(f, A, B)
    total = len(B.sset.cells)
    dead: set = set()
    path: list = []
    nodes = [0]

    def done(have, mk, bz):
        return len(have) == total and mk == search.marked and bz == search.blazed

    def dfs(have, mk, bz) -> bool:
        if done(have, mk, bz):
            return True
        key = (frozenset(have), frozenset(bz))
        if key in dead or len(path) >= budget or nodes[0] >= max_nodes:
            return False
        nodes[0] += 1
        search.current_marks, search.current_blazes = mk, bz
        for mv in search.moves(have):
            path.append(mv)
            if dfs(have | set(mv.new), mk | mv.marks, bz | mv.blazes):
                return True
            path.pop()
            search.current_marks, search.current_blazes = mk, bz
        if nodes[0] < max_nodes:
            dead.add(key)
        return False

    if not dfs(set(start), marks0, blazes0):
        raise Exhausted(f"no decomposition of {A.name} -> {B.name} in class {spec.name} "
                        f"within {budget} attachments ({nodes[0]} states)")
    return _assemble(m, search, path, start, marks0, blazes0)


def _assemble(m: Mono, search: _Search, path: list, start, marks0, blazes0) -> Compose:
    A, B, f = m.source, m.target, m.map
    if not path:
        if same_object(A, B) and same_map(f, identity_map(B.sset)):
            return identity_certificate(B)
        alpha = SimplicialMap(A.sset, B.sset, f.assign)
        return Compose(m, [IsoTransport(m, identity_certificate(B), alpha, identity_map(B.sset))])
    have, mk, bz = set(start), set(marks0), set(blazes0)
    prev, prev_map = A, f
    parts = []
    for k, mv in enumerate(path):
        have |= set(mv.new)
        mk |= mv.marks
        bz |= mv.blazes
        if k == len(path) - 1:
            C = B
        else:
            C = MarbledSSet(subobject(B.sset, have), mk, bz, name=f"{B.name}[{k + 1}]")
        step_map = SimplicialMap(prev.sset, C.sset, prev_map.assign)
        g = search.instance(mv.name, mv.params)
        phi = SimplicialMap(g.target.sset, C.sset, mv.attach.assign)
        parts.append(Pushout(Mono(step_map, prev, C), Generator(g, mv.name, mv.params), phi))
        prev, prev_map = C, identity_map(C.sset)
    return Compose(m, parts)


# ---------------------------------------------------------------------------
# the factorization of F of a spine inclusion


def _full(X: ChainSSet, keep) -> set:
    return {c for c in X.cells if all(keep(t) for t in c)}


def marbled_spine_steps(n: int) -> list[MarbledSSet]:
    """``A0 c A1 c A2 c A3 = F(Delta^n)``, each a union of full subobjects with inherited marbling.

    Each displayed stage is read as containing the previous one.
    """
    from .marbled import F_direct

    if n < 2:
        raise ValueError("the factorization needs n >= 2")
    X = F_direct(standard_simplex(n))
    C = X.sset
    a0 = _full(C, lambda t: max(t) <= n - 1) | _full(C, lambda t: min(t) >= n - 1)
    a1 = a0 | _full(C, lambda t: t[0] < n - 1 and t[1] < n) | \
        _full(C, lambda t: t in ((n - 2, n - 1, n - 1), (n - 1, n - 1, n - 1)))
    a2 = a1 | _full(C, lambda t: t[1] < n) | _full(C, lambda t: t[0] >= n - 1)
    out = [X.restrict(C.sub(a, name=f"A{k}"), name=f"A{k}") for k, a in enumerate((a0, a1, a2))]
    return out + [X]


def cert_marbled_spine(n: int, budget: int = 64) -> Compose:
    """Certificate for ``A0 -> F(Delta^n)`` through the three displayed stages."""
    steps = marbled_spine_steps(n)
    parts = [find_cell_decomposition(sub_inclusion(a, b), MARBLED_TRIVIAL, budget=budget)
             for a, b in zip(steps, steps[1:])]
    return Compose(sub_inclusion(steps[0], steps[-1]), parts)


# ---------------------------------------------------------------------------
# chain subobjects of a simplex


def chain_object(chains, marked: bool = False, name: str = "P") -> MarbledSSet:
    """A simplicial subset of a simplex, l-marked when ``marked``."""
    P = ChainSSet(chains, name=name)
    return decorated(P, _l_marks(P) if marked else ())


def _attach(A: MarbledSSet, arm: Certificate, vertices, marked: bool, name: str = "P") -> Pushout:
    """Glue the target of ``arm`` to ``A`` along the order-preserving relabelling ``vertices``."""
    g = arm.subject
    relabel = dict(enumerate(vertices))
    images = {c: tuple(relabel[v] for v in c) for c in g.target.sset.cells}
    B = chain_object(list(A.sset.cells) + list(images.values()), marked, name=name)
    phi = SimplicialMap(g.target.sset, B.sset, {c: nd(z, len(z) - 1) for c, z in images.items()})
    return Pushout(sub_inclusion(A, B), arm, phi)


def _generator(spec: ClassSpec, name: str, *params) -> Generator:
    return Generator(spec.instance(name, params), name, params)


def _spine_attach(A: MarbledSSet, vertices, spec: ClassSpec, marked: bool) -> list[Pushout]:
    """Attach the simplex on ``vertices`` along its spine (nothing for fewer than three)."""
    vertices = sorted(vertices)
    if len(vertices) < 3:
        return []
    return [_attach(A, _generator(spec, "spine", len(vertices) - 1), vertices, marked)]


def _chain_of(parts: list, start: MarbledSSet) -> Compose:
    if not parts:
        return identity_certificate(start)
    return Compose(Mono(_compose_maps(parts), parts[0].subject.source, parts[-1].subject.target),
                   parts)


def _compose_maps(parts):
    f = parts[0].subject.map
    for p in parts[1:]:
        f = f.then(p.subject.map)
    return f


def _left_spec(marked: bool) -> ClassSpec:
    return MARKED_LEFT_FROM_SPINES if marked else LEFT_FROM_SPINES


def _horn_object(n: int, S, marked: bool) -> MarbledSSet:
    return chain_object(horn_chains(n, S), marked, name=f"Lambda^{n}_{sorted(S)}")


def _j_object(n: int, marked: bool) -> MarbledSSet:
    return chain_object(j_chains(n), marked, name=f"J^{n}")


def cert_J_to_simplex(n: int, marked: bool = False) -> Certificate:
    """``J^n -> Delta^n`` through ``K = Delta^{012} u Delta^{2..n}``, using right cancellation."""
    spec = _left_spec(marked)
    full = chain_object([tuple(range(n + 1))], marked, name=f"Delta^{n}")
    J = _j_object(n, marked)
    step = _attach(J, _generator(spec, "i2"), (0, 1, 2), marked)
    to_K = [step] + _spine_attach(step.subject.target, range(2, n + 1), spec, marked)
    cJK = _chain_of(to_K, J)
    K = cJK.subject.target
    if same_object(K, full):
        return cJK
    I = chain_object([(k, k + 1) for k in range(n)], marked, name=f"I^{n}")
    first = _attach(I, _generator(spec, "spine", 2), (0, 1, 2), marked)
    cIK = _chain_of([first] + _spine_attach(first.subject.target, range(2, n + 1), spec, marked), I)
    cID = _attach(I, _generator(spec, "spine", n), range(n + 1), marked)
    cKD = RightCancel(sub_inclusion(K, full), cIK, cID)
    return Compose(sub_inclusion(J, full), [cJK, cKD])


def _cert_J_to_edge_and_face(n: int, marked: bool) -> Certificate:
    """``J^n -> Delta^{01} u Delta^{(1)}`` by attaching the face opposite 1 along its spine."""
    spec = _left_spec(marked)
    J = _j_object(n, marked)
    return _chain_of(_spine_attach(J, [v for v in range(n + 1) if v != 1], spec, marked), J)


def cert_J_to_horn(n: int, S, marked: bool = False) -> Certificate:
    """``J^n -> Lambda^n_S`` for ``{0} c S`` properly inside ``{0, 2, ..., n}``.

    Double induction on ``n`` and ``n - |S|``.  In the base case
    ``S = {0, 2, .., n} - {a}`` the face opposite ``a`` meets
    ``Delta^{01} u Delta^{(1)}`` in ``Delta^{01}`` together with the face
    opposite ``{1, a}``; otherwise one more face is glued along a smaller
    generalized horn.
    """
    S = frozenset({S} if isinstance(S, int) else S)
    allowed = frozenset({0} | set(range(2, n + 1)))
    if n < 2 or 0 not in S or not S < allowed:
        raise ValueError(f"need n >= 2 and {{0}} c S properly inside {sorted(allowed)}, got {sorted(S)}")
    spec = _left_spec(marked)
    J = _j_object(n, marked)
    target = _horn_object(n, S, marked)
    if n == 2:
        return identity_certificate(target)
    missing = sorted(allowed - S)
    if len(missing) == 1:
        (a,) = missing
        first = _cert_J_to_edge_and_face(n, marked)
        X = chain_object([(0, 1), tuple(v for v in range(n) if v != 1)], marked)
        face = _cert_face_arm(n - 1, marked, u=_cert_J_to_edge_and_face(n - 1, marked), sub=X)
        step = _attach(first.subject.target, face, [v for v in range(n + 1) if v != a], marked)
        return Compose(sub_inclusion(J, target), _flatten([first]) + [step])
    a = missing[0]
    first = cert_J_to_horn(n, S | {a}, marked)
    relabel = [v for v in range(n + 1) if v != a]
    S2 = frozenset(relabel.index(s) for s in S)
    sub = _horn_object(n - 1, S2, marked)
    face = _cert_face_arm(n - 1, marked, u=cert_J_to_horn(n - 1, S2, marked), sub=sub)
    step = _attach(first.subject.target, face, relabel, marked)
    return Compose(sub_inclusion(J, target), _flatten([first]) + [step])


def _cert_face_arm(m: int, marked: bool, u: Certificate, sub: MarbledSSet) -> Certificate:
    """``sub -> Delta^m`` by right cancellation against ``J^m -> Delta^m``."""
    full = chain_object([tuple(range(m + 1))], marked, name=f"Delta^{m}")
    return RightCancel(sub_inclusion(sub, full), u, cert_J_to_simplex(m, marked))


def _flatten(certs: list) -> list:
    out = []
    for c in certs:
        if isinstance(c, Compose):
            out.extend(c.parts)
        else:
            out.append(c)
    return out


def cert_horn(n: int, S, marked: bool = False) -> Certificate:
    """``Lambda^n_S -> Delta^n`` for ``{0} c S`` properly inside ``{0, 2, .., n}``."""
    full = chain_object([tuple(range(n + 1))], marked, name=f"Delta^{n}")
    return RightCancel(sub_inclusion(_horn_object(n, S, marked), full),
                       cert_J_to_horn(n, S, marked), cert_J_to_simplex(n, marked))


def cert_left_horn(n: int, marked: bool = False) -> Certificate:
    """``Lambda^n_0 -> Delta^n`` from spines, ``i1`` and ``i2`` (l-marked when ``marked``)."""
    if n == 1:
        return _generator(_left_spec(marked), "i1")
    return cert_horn(n, {0}, marked)


# ---------------------------------------------------------------------------
# corner maps of epsilon_!


def corner_map(i: SimplicialMap) -> Mono:
    """``eps_!(X) u_{X^op + X} (Y^op + Y) -> eps_!(Y)`` for a mono ``i: X -> Y``."""
    from .delta import EpsilonShriek
    from .simplicial import pushout, induced_map

    X, Y = i.source, i.target
    EX, EY = EpsilonShriek(X), EpsilonShriek(Y)
    ex_op, ex_id = EX.unit_maps()
    ey_op, ey_id = EY.unit_maps()
    XX = coproduct(opposite(X), X, tags=("op", "id"))
    YY = coproduct(opposite(Y), Y, tags=("op", "id"))

    def tagged(maps, source, target):
        assign = {}
        for (tag, x) in source.cells:
            s = maps[tag].assign[x]
            assign[(tag, x)] = Simplex(s.sigma, (tag, s.target)) if target is YY else s
        return SimplicialMap(source, target, assign)

    into_E = tagged({"op": ex_op, "id": ex_id}, XX, EX.sset)
    into_YY = tagged({"op": i, "id": i}, XX, YY)
    P, inl, inr = pushout(into_E, into_YY, name="corner")
    legs = (EX.functor(i, EY), tagged({"op": ey_op, "id": ey_id}, YY, EY.sset))
    m = induced_map((inl, inr), legs, P)
    return Mono(m, decorated(P), decorated(EY.sset))


def _invert(f: SimplicialMap) -> SimplicialMap:
    assign = {}
    for x, s in f.assign.items():
        if s.nondegenerate:
            assign[s.target] = nd(x, f.source.cells[x])
    return SimplicialMap(f.target, f.source, assign, name="inverse")


def pr11_model(case) -> Mono:
    """The displayed union inside a simplex modelling the corner map of ``case``.

    ``case`` is ``n >= 2`` for the spine ``s_n``, ``"i1"`` or ``"i2"``.  For
    ``s_n`` the vertices of ``Delta^{2n+1}`` are ``n-bar, .., 0-bar, 0, .., n``.
    """
    if case == "i1":
        return sub_inclusion(chain_object([(0, 1), (1, 2), (2, 3)], name="I^3"),
                             chain_object([(0, 1, 2, 3)], name="Delta^3"))
    if case == "i2":
        V = [(0, 1, 2), (0, 2, 3, 5), (1, 2, 3, 4), (3, 4, 5)]
        return sub_inclusion(chain_object(V, name="V"), chain_object([tuple(range(6))], name="Delta^5"))
    n = int(case)
    top = 2 * n + 1
    U = [tuple(range(n + 1)), (n, n + 1), tuple(range(n + 1, top + 1))]
    U += [(n - k, n - k + 1, n + k, n + k + 1) for k in range(1, n + 1)]
    return sub_inclusion(chain_object(U, name="U"), chain_object([tuple(range(top + 1))], name=f"Delta^{top}"))


def _pr11_source(case) -> SimplicialMap:
    if case == "i1":
        return horn(1, 0)
    if case == "i2":
        return horn(2, 0)
    return spine(int(case))


def _cert_model(case, budget: int) -> Certificate:
    model = pr11_model(case)
    spec = JOYAL_TRIVIAL
    if case == "i1":
        return find_cell_decomposition(model, spec, budget=budget)
    B = model.target
    top = max(B.sset.cells, key=len)
    if case == "i2":
        base = chain_object([(v, v + 1) for v in range(len(top) - 1)], name="I")
    else:
        n = int(case)
        base = chain_object([tuple(range(n + 1)), (n, n + 1), tuple(range(n + 1, 2 * n + 2))], name="W")
    u = find_cell_decomposition(sub_inclusion(base, model.source), spec, budget=budget)
    vu = find_cell_decomposition(sub_inclusion(base, B), spec, budget=budget)
    return RightCancel(model, u, vu)


def cert_pr11(case, budget: int = 512) -> Certificate:
    """Certificate that the corner map of ``eps_!`` at ``case`` is Joyal-trivial.

    The corner map is built, matched against :func:`pr11_model` by an explicit
    isomorphism, and the model inclusion is certified from inner horns with
    right cancellation.
    """
    corner = corner_map(_pr11_source(case))
    model = pr11_model(case)
    found = same_subobject_up_to_iso(model.map, corner.map)
    if found is None:
        raise ValueError(f"corner map for {case!r} is not isomorphic to the model union")
    alpha, beta = found
    return IsoTransport(corner, _cert_model(case, budget), _invert(alpha), beta)


# ---------------------------------------------------------------------------
# cert/v1


def _key(x):
    from .simplicial import _sid

    return _sid(x)


def _restore_name(s: str):
    """Undo the string encoding of hashable cell names where it is unambiguous."""
    try:
        value = ast.literal_eval(s)
    except (ValueError, SyntaxError):
        return s
    try:
        hash(value)
    except TypeError:
        return s
    return value if _key(value) == s else s


def _restored(X: MarbledSSet) -> MarbledSSet:
    S = X.sset
    ren = {x: _restore_name(x) for x in S.cells}
    if len(set(ren.values())) != len(ren):
        return X

    def r(s: Simplex) -> Simplex:
        return Simplex(s.sigma, ren[s.target])

    cells = {ren[x]: d for x, d in S.cells.items()}
    faces = {ren[x]: tuple(r(f) for f in fs) for x, fs in S.faces.items()}
    T = SimplicialSet(cells, faces, name=X.name, check=False)
    return MarbledSSet(T, [ren[e] for e in X.marked],
                       [(r(t), r(b)) for t, b in X.blazed], name=X.name)


class _Writer:
    def __init__(self):
        self.objects, self.index = [], {}

    def obj(self, X: MarbledSSet) -> int:
        from .marbled import marbled_to_json

        data = marbled_to_json(X)
        key = json.dumps(data, sort_keys=True)
        if key not in self.index:
            self.index[key] = len(self.objects)
            self.objects.append(data)
        return self.index[key]

    def node(self, c: Certificate) -> dict:
        from .simplicial import map_to_json

        s = c.subject
        out = {"kind": c.kind,
               "subject": {"source": self.obj(s.source), "target": self.obj(s.target),
                           "map": map_to_json(s.map)}}
        if isinstance(c, Generator):
            out.update(name=c.name, params=list(c.params))
        elif isinstance(c, Pushout):
            out.update(arm=self.node(c.arm), attach=map_to_json(c.attach))
        elif isinstance(c, Compose):
            out["parts"] = [self.node(p) for p in c.parts]
        elif isinstance(c, IsoTransport):
            out.update(inner=self.node(c.inner), alpha=map_to_json(c.alpha), beta=map_to_json(c.beta))
        elif isinstance(c, RightCancel):
            out.update(u=self.node(c.u), vu=self.node(c.vu))
        return out


def certificate_to_json(c: Certificate, spec: ClassSpec | None = None) -> dict:
    w = _Writer()
    root = w.node(c)
    out = {"schema": "cert/v1", "objects": w.objects, "root": root}
    if spec is not None:
        out["class"] = spec.as_dict()
    return out


def certificate_from_json(data: dict) -> Certificate:
    from .marbled import marbled_from_json
    from .simplicial import map_from_json

    if data.get("schema") != "cert/v1":
        raise ValueError(f"expected schema cert/v1, got {data.get('schema')!r}")
    objects = [_restored(marbled_from_json(o, name=o.get("name", f"X{k}")))
               for k, o in enumerate(data["objects"])]

    def build(d: dict, path: str) -> Certificate:
        try:
            sd = d["subject"]
            A, B = objects[sd["source"]], objects[sd["target"]]
            subject = Mono(map_from_json(sd["map"], A.sset, B.sset), A, B)
            kind = d["kind"]
            if kind == "Generator":
                return Generator(subject, d["name"], tuple(d["params"]))
            if kind == "Pushout":
                arm = build(d["arm"], path + ":Pushout/arm")
                return Pushout(subject, arm, map_from_json(d["attach"], arm.subject.target.sset, B.sset))
            if kind == "Compose":
                return Compose(subject, [build(p, f"{path}:Compose/parts[{k}]")
                                         for k, p in enumerate(d["parts"])])
            if kind == "IsoTransport":
                inner = build(d["inner"], path + ":IsoTransport/inner")
                return IsoTransport(subject, inner,
                                    map_from_json(d["alpha"], A.sset, inner.subject.source.sset),
                                    map_from_json(d["beta"], inner.subject.target.sset, B.sset))
            if kind == "RightCancel":
                return RightCancel(subject, build(d["u"], path + ":RightCancel/u"),
                                   build(d["vu"], path + ":RightCancel/vu"))
        except (KeyError, IndexError, TypeError) as exc:
            raise ValueError(f"{path}: malformed node ({exc!r})") from None
        raise ValueError(f"{path}: unknown node kind {d.get('kind')!r}")

    return build(data["root"], "root")
