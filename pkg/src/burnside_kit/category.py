"""Finite categories, functors, nerves and Grothendieck constructions."""
from __future__ import annotations

import itertools
from collections import defaultdict
from collections.abc import Iterable

from .simplicial import VirtualSSet, iso_check


class CategoryError(ValueError):
    pass


class FiniteCategory:
    """Objects, morphisms with source/target, identities and a composition table.

    ``compose[(g, f)]`` is ``g o f`` for ``tgt(f) == src(g)``.
    """

    def __init__(self, objects, morphisms: dict, ids: dict, compose: dict, name: str = "C",
                 check: bool = True):
        self.objects = list(objects)
        self.morphisms = dict(morphisms)
        self.ids = dict(ids)
        self.comp = dict(compose)
        self.name = name
        self._hom: dict = defaultdict(list)
        for f, (a, b) in self.morphisms.items():
            self._hom[(a, b)].append(f)
        self._id_set = set(self.ids.values())
        if check:
            self.validate()

    # basic structure ---------------------------------------------------
    def src(self, f):
        return self.morphisms[f][0]

    def tgt(self, f):
        return self.morphisms[f][1]

    def hom(self, a, b) -> list:
        return self._hom.get((a, b), [])

    def out_of(self, a) -> list:
        return [f for b in self.objects for f in self.hom(a, b)]

    def into(self, b) -> list:
        return [f for a in self.objects for f in self.hom(a, b)]

    def compose(self, g, f):
        """``g o f``."""
        try:
            return self.comp[(g, f)]
        except KeyError:
            raise CategoryError(f"{g!r} o {f!r} is not defined in {self.name}") from None

    def chain(self, fs: Iterable, start=None):
        """Composite of a path given in order of traversal."""
        out = self.ids[start] if start is not None else None
        for f in fs:
            out = f if out is None else self.compose(f, out)
        return out

    def is_identity(self, f) -> bool:
        return f in self._id_set

    def inverse(self, f):
        a, b = self.morphisms[f]
        for g in self.hom(b, a):
            if self.comp[(g, f)] == self.ids[a] and self.comp[(f, g)] == self.ids[b]:
                return g
        return None

    def is_iso(self, f) -> bool:
        return self.inverse(f) is not None

    def isos(self) -> set:
        return {f for f in self.morphisms if self.is_iso(f)}

    def validate(self) -> None:
        for a in self.objects:
            if self.morphisms.get(self.ids.get(a)) != (a, a):
                raise CategoryError(f"identity of {a!r} missing or misplaced")
        for f, (a, b) in self.morphisms.items():
            if a not in self._hom_objects() or b not in self._hom_objects():
                raise CategoryError(f"morphism {f!r} has unknown endpoints")
            if self.comp.get((f, self.ids[a])) != f or self.comp.get((self.ids[b], f)) != f:
                raise CategoryError(f"unit law fails at {f!r}")
            for g in self.out_of(b):
                gf = self.comp.get((g, f))
                if gf is None or self.morphisms[gf] != (a, self.tgt(g)):
                    raise CategoryError(f"composite {g!r} o {f!r} missing or misplaced")
        for f in self.morphisms:
            for g in self.out_of(self.tgt(f)):
                for h in self.out_of(self.tgt(g)):
                    if self.comp[(h, self.comp[(g, f)])] != self.comp[(self.comp[(h, g)], f)]:
                        raise CategoryError(f"associativity fails at {h!r}, {g!r}, {f!r}")

    def _hom_objects(self):
        if not hasattr(self, "_objset"):
            self._objset = set(self.objects)
        return self._objset

    def __repr__(self):
        return f"<FiniteCategory {self.name}: {len(self.objects)} objects, {len(self.morphisms)} morphisms>"

    # derived categories -------------------------------------------------
    def opposite(self) -> FiniteCategory:
        return FiniteCategory(
            self.objects,
            {f: (b, a) for f, (a, b) in self.morphisms.items()},
            self.ids,
            {(f, g): gf for (g, f), gf in self.comp.items()},
            name=f"{self.name}^op",
            check=False,
        )

    def product(self, other: FiniteCategory) -> FiniteCategory:
        objs = [(a, b) for a in self.objects for b in other.objects]
        mors = {(f, g): ((self.src(f), other.src(g)), (self.tgt(f), other.tgt(g)))
                for f in self.morphisms for g in other.morphisms}
        ids = {(a, b): (self.ids[a], other.ids[b]) for a, b in objs}
        comp = {((f2, g2), (f1, g1)): (self.comp[(f2, f1)], other.comp[(g2, g1)])
                for (f2, f1) in self.comp for (g2, g1) in other.comp}
        return FiniteCategory(objs, mors, ids, comp, name=f"{self.name}x{other.name}", check=False)

    def full_subcategory(self, objects) -> FiniteCategory:
        keep = set(objects)
        mors = {f: ab for f, ab in self.morphisms.items() if ab[0] in keep and ab[1] in keep}
        comp = {k: v for k, v in self.comp.items() if k[0] in mors and k[1] in mors}
        return FiniteCategory([a for a in self.objects if a in keep], mors,
                              {a: self.ids[a] for a in keep}, comp, name=f"{self.name}|", check=False)


# ---------------------------------------------------------------------------
# constructors


def poset_category(elements, leq, name: str = "P") -> FiniteCategory:
    elements = list(elements)
    mors = {(a, b): (a, b) for a in elements for b in elements if leq(a, b)}
    ids = {a: (a, a) for a in elements}
    comp = {((b, c), (a, b)): (a, c) for (a, b) in mors for (b2, c) in mors if b2 == b}
    return FiniteCategory(elements, mors, ids, comp, name=name)


def chain_category(n: int) -> FiniteCategory:
    """The poset ``0 < 1 < ... < n``."""
    return poset_category(range(n + 1), lambda a, b: a <= b, name=f"[{n}]")


def subset_lattice(ground) -> FiniteCategory:
    ground = tuple(ground)
    elems = [frozenset(c) for r in range(len(ground) + 1) for c in itertools.combinations(ground, r)]
    names = {s: "".join(map(str, sorted(s))) or "e" for s in elems}
    back = {v: k for k, v in names.items()}
    return poset_category([names[s] for s in elems], lambda a, b: back[a] <= back[b],
                          name=f"P({''.join(map(str, ground))})")


def cyclic_group(n: int) -> FiniteCategory:
    mors = {k: ("*", "*") for k in range(n)}
    comp = {(g, f): (g + f) % n for g in range(n) for f in range(n)}
    return FiniteCategory(["*"], mors, {"*": 0}, comp, name=f"Z/{n}")


def walking_isomorphism() -> FiniteCategory:
    mors = {"id0": (0, 0), "id1": (1, 1), "f": (0, 1), "g": (1, 0)}
    comp = {
        ("id0", "id0"): "id0", ("id1", "id1"): "id1",
        ("f", "id0"): "f", ("id1", "f"): "f", ("g", "id1"): "g", ("id0", "g"): "g",
        ("g", "f"): "id0", ("f", "g"): "id1",
    }
    return FiniteCategory([0, 1], mors, {0: "id0", 1: "id1"}, comp, name="Iso")


def terminal_category() -> FiniteCategory:
    return FiniteCategory(["*"], {"id": ("*", "*")}, {"*": "id"}, {("id", "id"): "id"}, name="pt")


def discrete_category(objects, name: str = "D") -> FiniteCategory:
    objects = list(objects)
    return FiniteCategory(objects, {("id", a): (a, a) for a in objects},
                          {a: ("id", a) for a in objects},
                          {(("id", a), ("id", a)): ("id", a) for a in objects}, name=name)


# ---------------------------------------------------------------------------
# functors


class FunctorData:
    def __init__(self, source: FiniteCategory, target: FiniteCategory, obj: dict, mor: dict,
                 name: str = "F", check: bool = True):
        self.source, self.target = source, target
        self.obj, self.mor = dict(obj), dict(mor)
        self.name = name
        if check:
            self.validate()

    def validate(self) -> None:
        S, T = self.source, self.target
        for f, (a, b) in S.morphisms.items():
            if T.morphisms.get(self.mor.get(f)) != (self.obj[a], self.obj[b]):
                raise CategoryError(f"{self.name}: image of {f!r} has the wrong endpoints")
        for a in S.objects:
            if self.mor[S.ids[a]] != T.ids[self.obj[a]]:
                raise CategoryError(f"{self.name}: identity of {a!r} not preserved")
        for (g, f), gf in S.comp.items():
            if T.comp[(self.mor[g], self.mor[f])] != self.mor[gf]:
                raise CategoryError(f"{self.name}: composition {g!r} o {f!r} not preserved")

    def __call__(self, f):
        return self.mor[f]

    def then(self, other: FunctorData) -> FunctorData:
        return FunctorData(self.source, other.target,
                           {a: other.obj[b] for a, b in self.obj.items()},
                           {f: other.mor[g] for f, g in self.mor.items()}, check=False)

    def opposite(self) -> FunctorData:
        return FunctorData(self.source.opposite(), self.target.opposite(), self.obj, self.mor,
                           name=f"{self.name}^op", check=False)

    def fiber(self, s) -> FiniteCategory:
        """Strict fiber over the object ``s``."""
        X, S = self.source, self.target
        objs = [x for x in X.objects if self.obj[x] == s]
        sid = S.ids[s]
        mors = {f: ab for f, ab in X.morphisms.items() if self.mor[f] == sid and ab[0] in objs}
        comp = {k: v for k, v in X.comp.items() if k[0] in mors and k[1] in mors}
        return FiniteCategory(objs, mors, {x: X.ids[x] for x in objs}, comp,
                              name=f"{X.name}_{s}", check=False)


def identity_functor(C: FiniteCategory) -> FunctorData:
    return FunctorData(C, C, {a: a for a in C.objects}, {f: f for f in C.morphisms}, name="id")


def constant_functor(C: FiniteCategory, D: FiniteCategory, d) -> FunctorData:
    return FunctorData(C, D, {a: d for a in C.objects}, {f: D.ids[d] for f in C.morphisms})


def is_cocartesian(p: FunctorData, f) -> bool:
    """1-categorical p-cocartesian test: precomposition with ``f`` is bijective over the base."""
    X, S = p.source, p.target
    x, y = X.morphisms[f]
    pf = p.mor[f]
    for z in X.objects:
        seen = {}
        for g in X.hom(y, z):
            seen[X.comp[(g, f)]] = seen.get(X.comp[(g, f)], 0) + 1
        for h in X.hom(x, z):
            need = [u for u in S.hom(p.obj[y], p.obj[z]) if S.comp[(u, pf)] == p.mor[h]]
            lifts = [g for g in X.hom(y, z) if X.comp[(g, f)] == h]
            for u in need:
                if sum(1 for g in lifts if p.mor[g] == u) != 1:
                    return False
    return True


def is_cartesian(p: FunctorData, f) -> bool:
    return is_cocartesian(p.opposite(), f)


def is_discrete_opfibration(p: FunctorData) -> bool:
    X, S = p.source, p.target
    for x in X.objects:
        for u in S.out_of(p.obj[x]):
            if sum(1 for f in X.out_of(x) if p.mor[f] == u) != 1:
                return False
    return True


# ---------------------------------------------------------------------------
# nerves


class Nerve(VirtualSSet):
    """Nerve of a finite category; simplices are ``(objects, morphisms)`` chains."""

    def __init__(self, C: FiniteCategory):
        self.C = C
        self.name = f"N({C.name})"

    def dim(self, x):
        return len(x[0]) - 1

    def simplices(self, n):
        C = self.C
        if n == 0:
            for a in C.objects:
                yield ((a,), ())
            return

        def grow(objs, mors):
            if len(mors) == n:
                yield (objs, mors)
                return
            for f in C.out_of(objs[-1]):
                yield from grow(objs + (C.tgt(f),), mors + (f,))

        for a in C.objects:
            yield from grow((a,), ())

    def count(self, n):
        return sum(1 for _ in self.simplices(n))

    def act(self, theta, x):
        objs, mors = x
        comp, ids = self.C.comp, self.C.ids
        new_mors = []
        for a in range(len(theta) - 1):
            lo, hi = theta[a], theta[a + 1]
            if lo == hi:
                new_mors.append(ids[objs[lo]])
                continue
            f = mors[lo]
            for g in mors[lo + 1:hi]:
                f = comp[(g, f)]
            new_mors.append(f)
        return (tuple(objs[t] for t in theta), tuple(new_mors))

    def is_degenerate(self, x):
        return any(self.C.is_identity(f) for f in x[1])

    def fill(self, n, faces):
        C = self.C
        if n == 0 or len(faces) < 2:
            return super().fill(n, faces)
        objs = [None] * (n + 1)
        mors = [None] * n
        for i, (fo, fm) in faces.items():
            pos = [v for v in range(n + 1) if v != i]
            for k, v in enumerate(pos):
                if objs[v] is not None and objs[v] != fo[k]:
                    return []
                objs[v] = fo[k]
            for k in range(len(fm)):
                a, b = pos[k], pos[k + 1]
                if b == a + 1:
                    if mors[a] is not None and mors[a] != fm[k]:
                        return []
                    mors[a] = fm[k]
        if any(o is None for o in objs):
            return super().fill(n, faces)
        choices = [[m] if m is not None else C.hom(objs[a], objs[a + 1]) for a, m in enumerate(mors)]
        out = []
        for combo in itertools.product(*choices):
            x = (tuple(objs), tuple(combo))
            if all(self.face(i, x) == f for i, f in faces.items()):
                out.append(x)
        return out


def nerve(C: FiniteCategory) -> Nerve:
    return Nerve(C)


class NerveMap:
    """Simplicial map of nerves induced by a functor."""

    def __init__(self, F: FunctorData):
        self.F = F
        self.source, self.target = Nerve(F.source), Nerve(F.target)

    def __call__(self, x):
        objs, mors = x
        return (tuple(self.F.obj[a] for a in objs), tuple(self.F.mor[f] for f in mors))


# ---------------------------------------------------------------------------
# twisted arrows


def twisted_arrow_cat(C: FiniteCategory) -> FiniteCategory:
    """Objects are morphisms ``f``; a morphism ``f -> v f u`` is the pair ``(u, v)``."""
    objs = list(C.morphisms)
    mors, comp = {}, {}
    for f in objs:
        a, b = C.morphisms[f]
        for u in C.into(a):
            for v in C.out_of(b):
                g = C.compose(v, C.compose(f, u))
                mors[(f, u, v)] = (f, g)
    ids = {f: (f, C.ids[C.src(f)], C.ids[C.tgt(f)]) for f in objs}
    for (f, u, v), (_, g) in mors.items():
        for (g2, u2, v2), (_, h) in ((k, ab) for k, ab in mors.items() if k[0] == g):
            comp[((g2, u2, v2), (f, u, v))] = (f, C.compose(u, u2), C.compose(v2, v))
    return FiniteCategory(objs, mors, ids, comp, name=f"Tw({C.name})", check=False)


def twisted_projection(C: FiniteCategory) -> FunctorData:
    """``Tw(C) -> C^op x C``."""
    T = twisted_arrow_cat(C)
    B = C.opposite().product(C)
    return FunctorData(T, B, {f: C.morphisms[f] for f in T.objects},
                       {k: (k[1], k[2]) for k in T.morphisms}, check=False)


def twisted_comparison_simplex(C: FiniteCategory, x):
    """The ``(2n+1)``-simplex of ``N(C)`` read off an ``n``-simplex of ``N(Tw(C))``.

    A chain ``f_0 -> f_1 -> ... -> f_n`` with arrows ``(u_k, v_k)`` goes to the
    path ``u_n, ..., u_1, f_0, v_1, ..., v_n``.
    """
    fs, ms = x
    objs = tuple(C.src(f) for f in reversed(fs)) + tuple(C.tgt(f) for f in fs)
    mors = tuple(m[1] for m in reversed(ms)) + (fs[0],) + tuple(m[2] for m in ms)
    return (objs, mors)


def twisted_comparison(C: FiniteCategory, bound: int) -> dict:
    """Check that the explicit comparison ``N(Tw(C)) -> Tw(N(C))`` is bijective
    and commutes with all faces and degeneracies up to ``bound``."""
    from .delta import edgewise
    from .simplicial import codegeneracy, coface

    T = Nerve(twisted_arrow_cat(C))
    E = edgewise(Nerve(C))
    counts = []
    for n in range(bound + 1):
        images = set()
        size = 0
        for x in T.simplices(n):
            y = twisted_comparison_simplex(C, x)
            size += 1
            images.add(y)
            for i in range(n + 1):
                if n and twisted_comparison_simplex(C, T.face(i, x)) != E.act(coface(n, i), y):
                    return {"ok": False, "dimension": n, "simplex": repr(x), "operator": f"d{i}"}
                if twisted_comparison_simplex(C, T.degen(i, x)) != E.act(codegeneracy(n, i), y):
                    return {"ok": False, "dimension": n, "simplex": repr(x), "operator": f"s{i}"}
        if len(images) != size or size != E.count(n):
            return {"ok": False, "dimension": n, "reason": "not a bijection",
                    "counts": [size, len(images), E.count(n)]}
        counts.append(size)
    return {"ok": True, "counts": counts}


# ---------------------------------------------------------------------------
# homotopy categories


class MissingFiller(ValueError):
    pass


def homotopy_category(X: VirtualSSet, name: str | None = None) -> FiniteCategory:
    """Homotopy category of a (boundedly checked) quasi-category."""
    from .simplicial import _DSU

    verts = list(X.simplices(0))
    edges = list(X.simplices(1))
    tri = list(X.simplices(2))
    dsu = _DSU()
    for s in tri:
        if X.face(0, s) == X.degen(0, X.vertex(1, s)):
            dsu.union(X.face(2, s), X.face(1, s))
    members: dict = defaultdict(list)
    for e in edges:
        members[dsu.find(e)].append(e)
    cls = {}
    for root, es in members.items():
        rep = min(es, key=repr)
        for e in es:
            cls[e] = rep
    mors = {cls[e]: (X.face(1, e), X.face(0, e)) for e in edges}
    ids = {v: cls[X.degen(0, v)] for v in verts}
    comp = {}
    for s in tri:
        key = (cls[X.face(0, s)], cls[X.face(2, s)])
        val = cls[X.face(1, s)]
        if comp.setdefault(key, val) != val:
            raise CategoryError(f"composition ill-defined on {key}")
    for f, (a, b) in mors.items():
        for g, (b2, c) in mors.items():
            if b2 == b and (g, f) not in comp:
                raise MissingFiller(f"no inner Lambda^2_1 filler for ({f!r}, {g!r})")
    return FiniteCategory(verts, mors, ids, comp, name=name or f"h({X.name})")


def category_iso(C: FiniteCategory, D: FiniteCategory) -> FunctorData | None:
    """An isomorphism of categories, via 2-truncated nerves."""
    if len(C.objects) != len(D.objects) or len(C.morphisms) != len(D.morphisms):
        return None
    NC, ND = Nerve(C).materialize(2), Nerve(D).materialize(2)
    phi = iso_check(NC, ND)
    if phi is None:
        return None
    obj = {x[0][0]: phi.assign[x].target[0][0] for x in NC.nondeg(0)}
    mor = {}
    for x in NC.nondeg(1):
        mor[x[1][0]] = phi.assign[x].target[1][0]
    for a in C.objects:
        mor[C.ids[a]] = D.ids[obj[a]]
    return FunctorData(C, D, obj, mor, name="iso")


# ---------------------------------------------------------------------------
# Grothendieck constructions


class Diagram:
    """A strict functor from a finite category into finite categories."""

    def __init__(self, base: FiniteCategory, fibers: dict, pushes: dict, variance: str = "co"):
        if variance not in ("co", "contra"):
            raise ValueError("variance is 'co' or 'contra'")
        self.base, self.fibers, self.pushes, self.variance = base, fibers, pushes, variance
        for f, F in pushes.items():
            a, b = base.morphisms[f]
            src, tgt = (a, b) if variance == "co" else (b, a)
            if F.source is not fibers[src] or F.target is not fibers[tgt]:
                raise CategoryError(f"functor on {f!r} has the wrong endpoints")
        for (g, f), gf in base.comp.items():
            first, second = (pushes[f], pushes[g]) if variance == "co" else (pushes[g], pushes[f])
            composite = first.then(second)
            if composite.obj != pushes[gf].obj or composite.mor != pushes[gf].mor:
                raise CategoryError(f"diagram is not strictly functorial at {g!r} o {f!r}")
        for s in base.objects:
            e = pushes[base.ids[s]]
            if any(e.obj[x] != x for x in e.obj) or any(e.mor[m] != m for m in e.mor):
                raise CategoryError(f"identity of {s!r} does not act as the identity")

    def on_opposite_base(self) -> Diagram:
        """The same data read as a diagram on the opposite base with the other variance."""
        return Diagram(self.base.opposite(), self.fibers, self.pushes,
                       "contra" if self.variance == "co" else "co")


def grothendieck(G: Diagram):
    """Returns ``(X, p, marked)``; ``marked`` holds the canonical (co)cartesian edges.

    A morphism is ``(u, x, a)``: covariantly ``a: u_! x -> y`` out of the source
    ``x``; contravariantly ``a: x -> u^* y`` into the pullback of the target ``y``.
    """
    S = G.base
    objs = [(s, x) for s in S.objects for x in G.fibers[s].objects]
    mors, comp = {}, {}
    if G.variance == "co":
        for u, (s, t) in S.morphisms.items():
            F, Ft = G.pushes[u], G.fibers[t]
            for x in G.fibers[s].objects:
                for y in Ft.objects:
                    for a in Ft.hom(F.obj[x], y):
                        mors[(u, x, a)] = ((s, x), (t, y))
        for (u, x, a), (sx, ty) in mors.items():
            for (v, y, b), (ty2, rz) in mors.items():
                if ty2 == ty:
                    Fv, Fr = G.pushes[v], G.fibers[rz[0]]
                    comp[((v, y, b), (u, x, a))] = (S.comp[(v, u)], x, Fr.compose(b, Fv.mor[a]))
        marked = {m for m in mors if G.fibers[mors[m][1][0]].is_iso(m[2])}
    else:
        for u, (s, t) in S.morphisms.items():
            F, Fs = G.pushes[u], G.fibers[s]
            for x in Fs.objects:
                for y in G.fibers[t].objects:
                    for a in Fs.hom(x, F.obj[y]):
                        mors[(u, y, a)] = ((s, x), (t, y))
        for (u, y, a), (sx, ty) in mors.items():
            for (v, z, b), (ty2, rz) in mors.items():
                if ty2 == ty:
                    Fu, Fs = G.pushes[u], G.fibers[sx[0]]
                    comp[((v, z, b), (u, y, a))] = (S.comp[(v, u)], z, Fs.compose(Fu.mor[b], a))
        marked = {m for m in mors if G.fibers[mors[m][0][0]].is_iso(m[2])}
    ids = {(s, x): (S.ids[s], x, G.fibers[s].ids[x]) for s, x in objs}
    X = FiniteCategory(objs, mors, ids, comp, name=f"Gr({S.name})")
    p = FunctorData(X, S, {o: o[0] for o in objs}, {m: m[0] for m in mors}, name="p")
    return X, p, marked


def fiber_functor(G: Diagram, u) -> FunctorData:
    return G.pushes[u]


def corpus_functor(source: FiniteCategory, target: FiniteCategory, obj: dict) -> FunctorData:
    """Functor between posets (or thin categories) determined by its object map."""
    mor = {}
    for f, (a, b) in source.morphisms.items():
        hs = target.hom(obj[a], obj[b])
        if len(hs) != 1:
            raise CategoryError("object map does not determine a functor")
        mor[f] = hs[0]
    return FunctorData(source, target, obj, mor)


# ---------------------------------------------------------------------------
# cat/v1


def category_to_json(C: FiniteCategory) -> dict:
    def s(x):
        return x if isinstance(x, str) else repr(x)

    return {
        "schema": "cat/v1",
        "objects": [s(a) for a in C.objects],
        "morphisms": [{"id": s(f), "src": s(a), "tgt": s(b)} for f, (a, b) in C.morphisms.items()],
        "compose": [[s(g), s(f), s(gf)] for (g, f), gf in C.comp.items()],
        "ids": {s(a): s(C.ids[a]) for a in C.objects},
    }


def category_from_json(data: dict, name: str = "C") -> FiniteCategory:
    if data.get("schema", "cat/v1") != "cat/v1":
        raise ValueError(f"expected schema cat/v1, got {data.get('schema')!r}")
    mors = {}
    for k, m in enumerate(data["morphisms"]):
        if m["src"] not in data["objects"] or m["tgt"] not in data["objects"]:
            raise ValueError(f"morphisms[{k}]: unknown endpoint")
        mors[m["id"]] = (m["src"], m["tgt"])
    comp = {}
    for k, (g, f, gf) in enumerate(data["compose"]):
        if g not in mors or f not in mors or gf not in mors:
            raise ValueError(f"compose[{k}]: unknown morphism")
        comp[(g, f)] = gf
    return FiniteCategory(data["objects"], mors, data["ids"], comp, name=data.get("name", name))
