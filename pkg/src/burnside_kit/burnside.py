"""Adequate triples, effective Burnside simplicial sets and fibration duals.

An ``n``-simplex of ``A^eff`` is stored as ``(n, objs, ls, rs)``: ``objs``
lists ``X_ij`` over the pairs ``i <= j`` in :func:`pairs` order, and for
each pair with ``i < j`` the generating arrows ``L_ij: X_ij -> X_(i+1)j``
(ingressive) and ``R_ij: X_ij -> X_i(j-1)`` (egressive).  Every other
arrow of the diagram is a composite of these, and every pullback condition
follows by pasting from the elementary squares at ``(i, j)`` with ``j - i >= 2``.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field

from .category import CategoryError, FiniteCategory
from .simplicial import VirtualSSet


@functools.lru_cache(maxsize=None)
def pairs(n: int) -> tuple[tuple[int, int], ...]:
    return tuple((i, j) for i in range(n + 1) for j in range(i, n + 1))


@functools.lru_cache(maxsize=None)
def arrow_pairs(n: int) -> tuple[tuple[int, int], ...]:
    return tuple((i, j) for i, j in pairs(n) if i < j)


@functools.lru_cache(maxsize=None)
def _index(n: int) -> tuple[dict, dict]:
    return ({p: k for k, p in enumerate(pairs(n))}, {p: k for k, p in enumerate(arrow_pairs(n))})


@functools.lru_cache(maxsize=None)
def _path(n: int, src, dst) -> tuple:
    """Generating arrows from ``src`` to ``dst`` as ``(0, L index)`` / ``(1, R index)``."""
    ai = _index(n)[1]
    (i, j), (k, l) = src, dst
    return tuple((0, ai[(a, j)]) for a in range(i, k)) + tuple((1, ai[(k, b)]) for b in range(j, l, -1))


@functools.lru_cache(maxsize=None)
def _act_plan(theta: tuple, n: int):
    m = len(theta) - 1
    oi = _index(n)[0]
    obj_src = tuple(oi[(theta[a], theta[b])] for a, b in pairs(m))
    l_paths = tuple((_path(n, (theta[a], theta[b]), (theta[a + 1], theta[b])), oi[(theta[a], theta[b])])
                    for a, b in arrow_pairs(m))
    r_paths = tuple((_path(n, (theta[a], theta[b]), (theta[a], theta[b - 1])), oi[(theta[a], theta[b])])
                    for a, b in arrow_pairs(m))
    return m, obj_src, l_paths, r_paths


@functools.lru_cache(maxsize=None)
def _face_plan(n: int, k: int):
    """How the ``k``-th face of an ``n``-simplex reads the big table.

    Returns direct object/L/R positions and the composite constraints.
    """
    delta = tuple(v if v < k else v + 1 for v in range(n))
    m = n - 1
    objs = tuple((delta[a], delta[b]) for a, b in pairs(m))
    direct_l, direct_r, composite = [], [], []
    for idx, (a, b) in enumerate(arrow_pairs(m)):
        p = (delta[a], delta[b])
        if delta[a + 1] == delta[a] + 1:
            direct_l.append((idx, p))
        else:
            composite.append((0, idx, _path(n, p, (delta[a + 1], delta[b])), p))
        if delta[b - 1] == delta[b] - 1:
            direct_r.append((idx, p))
        else:
            composite.append((1, idx, _path(n, p, (delta[a], delta[b - 1])), p))
    return objs, tuple(direct_l), tuple(direct_r), tuple(composite)


# ---------------------------------------------------------------------------
# pullbacks and triples


def commutes(C: FiniteCategory, square) -> bool:
    a, b, f, g = square
    return C.compose(f, a) == C.compose(g, b)


def is_pullback(C: FiniteCategory, square) -> bool:
    """``square = (a, b, f, g)`` with ``a: P -> X``, ``b: P -> Y``, ``f: X -> Z``, ``g: Y -> Z``.

    Checks ``f a = g b`` and that every cone factors uniquely through ``P``.
    """
    a, b, f, g = square
    if C.tgt(a) != C.src(f) or C.tgt(b) != C.src(g) or C.tgt(f) != C.tgt(g) or C.src(a) != C.src(b):
        raise CategoryError("square has mismatched endpoints")
    if not commutes(C, square):
        raise CategoryError("square does not commute")
    P, X, Y = C.src(a), C.tgt(a), C.tgt(b)
    for Q in C.objects:
        through = {}
        for h in C.hom(Q, P):
            key = (C.comp[(a, h)], C.comp[(b, h)])
            if key in through:
                return False
            through[key] = h
        for x in C.hom(Q, X):
            fx = C.comp[(f, x)]
            for y in C.hom(Q, Y):
                if C.comp[(g, y)] == fx and (x, y) not in through:
                    return False
    return True


class AdequateTriple:
    """``(C, ingressives, egressives)``; both classes must contain the isomorphisms
    and be closed under composition."""

    def __init__(self, C: FiniteCategory, ingressive=None, egressive=None, name: str | None = None):
        self.C = C
        self.ing = set(C.morphisms) if ingressive is None else set(ingressive)
        self.egr = set(C.morphisms) if egressive is None else set(egressive)
        self.name = name or C.name
        isos = C.isos()
        for label, cls in (("ingressive", self.ing), ("egressive", self.egr)):
            if not isos <= cls:
                raise CategoryError(f"{label} morphisms miss an isomorphism of {C.name}")
            for f in cls:
                for g in cls:
                    if C.src(g) == C.tgt(f) and C.comp[(g, f)] not in cls:
                        raise CategoryError(f"{label} morphisms not closed under {g!r} o {f!r}")
        self._cones: dict = {}
        self._spans: dict = {}

    def ambigressive_cones(self, f, g) -> list:
        """Pullbacks ``(P, a, b)`` of ingressive ``f: Y -> X`` and egressive ``g: X' -> X``
        with ``a: P -> X'`` ingressive and ``b: P -> Y`` egressive."""
        key = (f, g)
        if key not in self._cones:
            C = self.C
            out = []
            Y, Xp = C.src(f), C.src(g)
            for P in C.objects:
                for a in C.hom(P, Xp):
                    if a not in self.ing:
                        continue
                    for b in C.hom(P, Y):
                        if b in self.egr and C.comp[(g, a)] == C.comp[(f, b)] \
                                and is_pullback(C, (a, b, g, f)):
                            out.append((P, a, b))
            self._cones[key] = out
        return self._cones[key]

    def spans(self, x, y) -> list:
        """Spans ``x <- u -> y`` as ``(u, l, r)`` with ``l: u -> y`` ingressive, ``r: u -> x`` egressive."""
        if (x, y) not in self._spans:
            C = self.C
            self._spans[(x, y)] = [
                (u, l, r) for u in C.objects for r in C.hom(u, x) if r in self.egr
                for l in C.hom(u, y) if l in self.ing
            ]
        return self._spans[(x, y)]


@dataclass
class AdequacyReport:
    ok: bool
    witnesses: dict = field(default_factory=dict)
    failure: tuple | None = None


def check_adequate(t: AdequateTriple) -> AdequacyReport:
    """For every ingressive/egressive cospan find an ambigressive pullback."""
    C = t.C
    witnesses = {}
    for f in sorted(t.ing, key=repr):
        for g in sorted(t.egr, key=repr):
            if C.tgt(f) != C.tgt(g):
                continue
            cones = t.ambigressive_cones(f, g)
            if not cones:
                return AdequacyReport(False, witnesses, (f, g))
            witnesses[(f, g)] = cones[0]
    return AdequacyReport(True, witnesses)


def full_triple(C: FiniteCategory) -> AdequateTriple:
    return AdequateTriple(C, name=C.name)


def minimal_ingressive_triple(C: FiniteCategory) -> AdequateTriple:
    """Ingressives are the isomorphisms; egressives are everything."""
    return AdequateTriple(C, C.isos(), None, name=f"({C.name},iso,all)")


# ---------------------------------------------------------------------------
# the effective Burnside simplicial set


class AEff(VirtualSSet):
    """``A^eff(C, C_dagger, C^dagger)`` enumerated dimension by dimension."""

    def __init__(self, t: AdequateTriple):
        self.t = t
        self.C = t.C
        self.name = f"Aeff({t.name})"
        self.restrict = None

    def dim(self, x):
        return x[0]

    def arrow(self, x, src, dst):
        """Composite ``X_src -> X_dst`` inside the simplex ``x``."""
        n, objs, ls, rs = x
        oi, ai = _index(n)
        (i, j), (k, l) = src, dst
        if not (i <= k <= l <= j):
            raise ValueError(f"no arrow {src} -> {dst}")
        return self._compose_path(x, _path(n, src, dst), objs[oi[src]])

    def _compose_path(self, x, path, start):
        if not path:
            return self.C.ids[start]
        comp = self.C.comp
        _, _, ls, rs = x
        side, k = path[0]
        f = ls[k] if side == 0 else rs[k]
        for side, k in path[1:]:
            f = comp[((ls[k] if side == 0 else rs[k]), f)]
        return f

    def act(self, theta, x):
        n = x[0]
        m, obj_src, l_paths, r_paths = _act_plan(tuple(theta), n)
        objs = x[1]
        return (m, tuple(objs[k] for k in obj_src),
                tuple(self._compose_path(x, pth, objs[o]) for pth, o in l_paths),
                tuple(self._compose_path(x, pth, objs[o]) for pth, o in r_paths))

    # construction by increasing width -----------------------------------
    def _build(self, n, kobj, kl, kr):
        t, C = self.t, self.C
        objs: dict = {}
        ls: dict = {}
        rs: dict = {}
        order = sorted(pairs(n), key=lambda p: (p[1] - p[0], p[0]))

        def options(p):
            i, j = p
            if i == j:
                if p in kobj:
                    return [(kobj[p], None, None)]
                return [(o, None, None) for o in C.objects]
            if j == i + 1:
                pool = t.spans(objs[(i, i)], objs[(j, j)])
            else:
                pool = t.ambigressive_cones(ls[(i, j - 1)], rs[(i + 1, j)])
            if self.restrict is not None:
                pool = [c for c in pool if self.restrict(c)]
            return [c for c in pool
                    if (p not in kobj or kobj[p] == c[0]) and (p not in kl or kl[p] == c[1])
                    and (p not in kr or kr[p] == c[2])]

        def grow(k):
            if k == len(order):
                yield (n, tuple(objs[p] for p in pairs(n)),
                       tuple(ls[p] for p in arrow_pairs(n)), tuple(rs[p] for p in arrow_pairs(n)))
                return
            p = order[k]
            for o, l, r in options(p):
                objs[p] = o
                if l is not None:
                    ls[p], rs[p] = l, r
                yield from grow(k + 1)

        yield from grow(0)

    def simplices(self, n):
        return self._build(n, {}, {}, {})

    def fill(self, n, faces):
        if n == 0 or not faces:
            return list(self.simplices(n)) if not faces else super().fill(n, faces)
        kobj: dict = {}
        kl: dict = {}
        kr: dict = {}

        def put(table, key, value):
            if table.setdefault(key, value) != value:
                raise _Conflict

        try:
            for k, y in faces.items():
                _, yobjs, yls, yrs = y
                objs, direct_l, direct_r, _ = _face_plan(n, k)
                for p, o in zip(objs, yobjs):
                    put(kobj, p, o)
                for idx, p in direct_l:
                    put(kl, p, yls[idx])
                for idx, p in direct_r:
                    put(kr, p, yrs[idx])
        except _Conflict:
            return []
        oi = _index(n)[0]
        checks = [(side, idx, path, oi[p], faces[k]) for k in faces
                  for side, idx, path, p in _face_plan(n, k)[3]]
        out = []
        for x in self._build(n, kobj, kl, kr):
            for side, idx, path, o, y in checks:
                if self._compose_path(x, path, x[1][o]) != y[2 + side][idx]:
                    break
            else:
                out.append(x)
        return out

    def vertex_object(self, v):
        return v[1][0]

    def edge_span(self, e):
        """``(x, u, y, r, l)`` for the span ``x <-r- u -l-> y``."""
        _, (x, u, y), (l,), (r,) = e
        return (x, u, y, r, l)

    def span_edge(self, x, u, y, r, l):
        return (1, (x, u, y), (l,), (r,))


class _Conflict(Exception):
    pass


def aeff(t: AdequateTriple) -> AEff:
    return AEff(t)


class AEffMap:
    """``A^eff(p)`` for a functor ``p`` of triples."""

    def __init__(self, p, source: AEff, target: AEff):
        self.p, self.source, self.target = p, source, target

    def __call__(self, x):
        n, objs, ls, rs = x
        return (n, tuple(self.p.obj[o] for o in objs), tuple(self.p.mor[f] for f in ls),
                tuple(self.p.mor[f] for f in rs))


class ToPoint:
    """The map to the terminal object ``Delta^0``, whose simplices are dimensions."""

    def __call__(self, x):
        return x[0]


class PointSSet(VirtualSSet):
    name = "pt"

    def simplices(self, n):
        return [n]

    def act(self, theta, x):
        return len(theta) - 1

    def dim(self, x):
        return x

    def fill(self, n, faces):
        return [n] if all(f == n - 1 for f in faces.values()) else []


POINT = PointSSet()


def gauge_filter(A: AEff):
    """Facet predicate keeping one horn per gauge orbit (up to overlap).

    Replacing ``X_ij`` (``i < j``) by an isomorphic object along
    ``phi: X' -> X_ij``, precomposing the arrows out of it with ``phi`` and
    postcomposing the arrows into it with ``phi^-1`` is an isomorphism of
    diagrams: pullbacks, both arrow classes, horn data and fillers over the
    point correspond.  Normalizing positions by increasing width shows every
    horn is equivalent to one in which each ``X_ij`` is the least object of
    its isomorphism class and each ``R_ij`` is least in ``{R_ij o phi}``
    over automorphisms ``phi`` of ``X_ij``.
    """
    C = A.C
    autos = {o: [f for f in C.hom(o, o) if C.is_iso(f)] for o in C.objects}
    canonical = {}
    for o in C.objects:
        iso_class = [b for b in C.objects if any(C.is_iso(f) for f in C.hom(o, b))]
        canonical[o] = min(iso_class, key=repr)
    if all(len(a) == 1 for a in autos.values()) and all(canonical[o] == o for o in C.objects):
        return None
    minimal: dict = {}

    def is_min(r):
        if r not in minimal:
            minimal[r] = min((C.comp[(r, phi)] for phi in autos[C.src(r)]), key=repr) == r
        return minimal[r]

    def for_dimension(n):
        def accept(j, y):
            objs, _, direct_r, _ = _face_plan(n, j)
            if any(p[0] < p[1] and canonical[o] != o for p, o in zip(objs, y[1])):
                return False
            return all(is_min(y[3][idx]) for idx, _ in direct_r)
        return accept

    return for_dimension


# ---------------------------------------------------------------------------
# the span category oracle


def span_category(t: AdequateTriple) -> FiniteCategory:
    """Spans up to isomorphism, composed along lexicographically least pullbacks."""
    C = t.C

    def key(s):
        return repr(s)

    classes: dict = {}
    reps: dict = {}
    for x in C.objects:
        for y in C.objects:
            for u, l, r in t.spans(x, y):
                s = (u, r, l)
                if s in classes:
                    continue
                orbit = [(C.tgt(phi), C.compose(r, _inv(C, phi)), C.compose(l, _inv(C, phi)))
                         for phi in C.out_of(u) if C.is_iso(phi)]
                rep = min(orbit, key=key)
                for o in orbit:
                    classes[o] = rep
                reps[rep] = (x, y)
    ids = {x: classes[(x, C.ids[x], C.ids[x])] for x in C.objects}
    comp = {}
    for s1, (x, y) in reps.items():
        for s2, (y2, z) in reps.items():
            if y2 != y:
                continue
            (u, r1, l1), (v, r2, l2) = s1, s2
            cones = t.ambigressive_cones(l1, r2)
            if not cones:
                raise CategoryError(f"no ambigressive pullback to compose {s1!r} and {s2!r}")
            P, a, b = min(cones, key=key)
            comp[(s2, s1)] = classes[(P, C.compose(r1, b), C.compose(l2, a))]
    return FiniteCategory(C.objects, reps, ids, comp, name=f"Span({t.name})")


def _inv(C: FiniteCategory, f):
    return C.inverse(f)


def span_of_edge(t: AdequateTriple, e) -> tuple:
    _, (x, u, y), (l,), (r,) = e
    return (u, r, l)


def compare_with_spans(t: AdequateTriple) -> dict:
    """Match the homotopy category of ``A^eff`` with the span oracle exactly.

    The comparison is the identity on objects and sends an edge class to
    its span class; it must be a bijection on every hom-set and preserve
    identities and composition.
    """
    from .category import FunctorData, homotopy_category

    A = aeff(t)
    h = homotopy_category(A)
    S = span_category(t)
    oracle_class = {}
    for rep in S.morphisms:
        oracle_class[rep] = rep
    C = t.C

    def span_class(e):
        u, r, l = span_of_edge(t, e)
        orbit = [(C.tgt(phi), C.compose(r, _inv(C, phi)), C.compose(l, _inv(C, phi)))
                 for phi in C.out_of(u) if C.is_iso(phi)]
        return min(orbit, key=repr)

    obj = {v: v[1][0] for v in h.objects}
    mor = {e: span_class(e) for e in h.morphisms}
    if len(set(mor.values())) != len(mor) or set(mor.values()) != set(S.morphisms):
        return {"ok": False, "reason": "edge classes and span classes differ",
                "edges": len(mor), "spans": len(S.morphisms)}
    try:
        FunctorData(h, S, obj, mor, name="h(Aeff)->Span")
    except CategoryError as exc:
        return {"ok": False, "reason": str(exc)}
    return {"ok": True, "objects": len(h.objects), "morphisms": len(h.morphisms)}


# ---------------------------------------------------------------------------
# the two inclusions


def ingressive_simplex(C: FiniteCategory, x):
    """Image of a chain of ingressive arrows: ``X_ij = x_i``."""
    objs, mors = x
    n = len(objs) - 1
    table = {(i, j): objs[i] for i, j in pairs(n)}
    ls = tuple(mors[i] for i, j in arrow_pairs(n))
    rs = tuple(C.ids[objs[i]] for i, j in arrow_pairs(n))
    return (n, tuple(table[p] for p in pairs(n)), ls, rs)


def egressive_simplex(C: FiniteCategory, x):
    """Image of a chain ``x_0 <- x_1 <- ... <- x_n`` of egressive arrows: ``X_ij = x_j``.

    ``x`` is a simplex of the nerve of ``C^op`` so its arrows ``x_k -> x_(k+1)``
    are arrows ``x_(k+1) -> x_k`` of ``C``.
    """
    objs, mors = x
    n = len(objs) - 1
    ls = tuple(C.ids[objs[j]] for i, j in arrow_pairs(n))
    rs = tuple(mors[j - 1] for i, j in arrow_pairs(n))
    return (n, tuple(objs[j] for i, j in pairs(n)), ls, rs)


def subcategory(C: FiniteCategory, morphisms, name: str) -> FiniteCategory:
    keep = set(morphisms)
    mors = {f: C.morphisms[f] for f in C.morphisms if f in keep}
    comp = {k: v for k, v in C.comp.items() if k[0] in keep and k[1] in keep}
    return FiniteCategory(C.objects, mors, C.ids, comp, name=name)


def triple_inclusions(t: AdequateTriple, bound: int = 3) -> dict:
    """Check the maps ``N(C_dagger) -> A^eff`` and ``N(C^dagger)^op -> A^eff`` up to ``bound``.

    Both must land in ``A^eff``, commute with faces and degeneracies, be
    injective, and send edges to spans with an identity leg.
    """
    from .category import Nerve

    C = t.C
    A = aeff(t)
    out = {}
    for label, sub, fn, leg in (
        ("ingressive", subcategory(C, t.ing, f"{C.name}_ing"), ingressive_simplex, 3),
        ("egressive", subcategory(C, t.egr, f"{C.name}^egr").opposite(), egressive_simplex, 2),
    ):
        N = Nerve(sub)
        ok, counts = True, []
        for n in range(bound + 1):
            members = set(A.simplices(n))
            images = set()
            size = 0
            for x in N.simplices(n):
                y = fn(C, x)
                size += 1
                images.add(y)
                if y not in members:
                    ok = False
                for i in range(n + 1):
                    if n and fn(C, N.face(i, x)) != A.face(i, y):
                        ok = False
                    if fn(C, N.degen(i, x)) != A.degen(i, y):
                        ok = False
                if n == 1 and not C.is_identity(y[leg][0]):
                    ok = False
            ok = ok and len(images) == size
            counts.append(size)
        out[label] = {"ok": ok, "counts": counts}
    out["ok"] = all(v["ok"] for v in out.values())
    return out


# ---------------------------------------------------------------------------
# inner fibration checks


def check_pr22(t: AdequateTriple, bound: int = 4):
    """``A^eff(t) -> pt`` against inner horns up to ``bound``.

    ``A^eff`` of a 1-category is 3-coskeletal, so bound 4 is definitive.
    """
    from .lifting import check_fibration

    A = aeff(t)
    return check_fibration(ToPoint(), A, POINT, "inner", bound, coskeletal=3,
                           horn_filter=gauge_filter(A))


def _ambigressive_squares(t: AdequateTriple):
    """All ambigressive pullbacks ``(P, a, b, f, g)`` over cospans ``f`` ingressive, ``g`` egressive."""
    C = t.C
    for f in t.ing:
        for g in t.egr:
            if C.tgt(f) == C.tgt(g):
                for P, a, b in t.ambigressive_cones(f, g):
                    yield P, a, b, f, g


def _restricted(p, tC: AdequateTriple, tD: AdequateTriple):
    from .category import FunctorData

    src = subcategory(tC.C, tC.ing, f"{tC.C.name}_ing")
    tgt = subcategory(tD.C, tD.ing, f"{tD.C.name}_ing")
    return FunctorData(src, tgt, p.obj, {f: p.mor[f] for f in tC.ing}, name="p_ing")


def check_thm24(p, tC: AdequateTriple, tD: AdequateTriple, bound: int = 3,
                inner: bool = True) -> dict:
    """Instance check of the cocartesian-edge criterion for ``A^eff(p)``.

    Verifies that ``p`` preserves both arrow classes and ambigressive
    pullbacks, the existence of doubly cocartesian ingressive lifts, and the
    square criterion for cocartesian ingressives.  Then checks that
    ``A^eff(p)`` is an inner fibration up to ``bound`` and that every span
    with egressive p-cartesian backward leg and ingressive p-cocartesian
    forward leg passes :func:`check_cocartesian_edge`.
    """
    from .category import is_cartesian, is_cocartesian
    from .lifting import check_cocartesian_edge, check_fibration

    C, D = tC.C, tD.C
    report: dict = {"ok": False}
    bad = [f for f in tC.ing if p.mor[f] not in tD.ing]
    bad += [f for f in tC.egr if p.mor[f] not in tD.egr]
    if bad:
        report["preservation"] = {"ok": False, "arrow": repr(bad[0])}
        return report
    for P, a, b, f, g in _ambigressive_squares(tC):
        if not is_pullback(D, (p.mor[a], p.mor[b], p.mor[g], p.mor[f])):
            report["preservation"] = {"ok": False, "square": repr((a, b, f, g))}
            return report
    report["preservation"] = {"ok": True}

    cocart = {f: is_cocartesian(p, f) for f in C.morphisms}
    p_ing = _restricted(p, tC, tD)
    for g in sorted(tD.ing, key=repr):
        s = D.src(g)
        for x in C.objects:
            if p.obj[x] != s:
                continue
            if not any(p.mor[f] == g and cocart[f] and is_cocartesian(p_ing, f)
                       for f in C.out_of(x) if f in tC.ing):
                report["cocartesian_lifts"] = {"ok": False, "g": repr(g), "x": repr(x)}
                return report
    report["cocartesian_lifts"] = {"ok": True}

    checked = 0
    for f in C.morphisms:
        if not cocart[f]:
            continue
        x, y = C.morphisms[f]
        for phi in C.into(x):
            if phi not in tC.egr:
                continue
            xp = C.src(phi)
            for fp in C.out_of(xp):
                if fp not in tC.ing:
                    continue
                for psi in C.hom(C.tgt(fp), y):
                    if C.comp[(psi, fp)] != C.comp[(f, phi)]:
                        continue
                    image = (p.mor[fp], p.mor[phi], p.mor[psi], p.mor[f])
                    if not (image[0] in tD.ing and image[1] in tD.egr and image[2] in tD.egr
                            and image[3] in tD.ing and is_pullback(D, image)):
                        continue
                    checked += 1
                    ambi = (psi in tC.egr and f in tC.ing and is_pullback(C, (fp, phi, psi, f)))
                    if cocart[fp] != ambi:
                        report["square_criterion"] = {
                            "ok": False, "square": repr((fp, phi, psi, f)),
                            "cocartesian": cocart[fp], "ambigressive_pullback": ambi}
                        return report
    report["square_criterion"] = {"ok": True, "squares": checked}

    AC, AD = aeff(tC), aeff(tD)
    Ap = AEffMap(p, AC, AD)
    if inner:
        rep = check_fibration(Ap, AC, AD, "inner", bound, coskeletal=3)
        report["inner"] = rep.as_dict()
        if not rep.ok:
            return report
    cart = {f: is_cartesian(p, f) for f in C.morphisms}
    edges, failures = 0, []
    for e in AC.simplices(1):
        _, _, (l,), (r,) = e
        if r in tC.egr and cart[r] and l in tC.ing and cocart[l]:
            edges += 1
            rep = check_cocartesian_edge(Ap, AC, AD, e, bound, coskeletal=3)
            if not rep.ok:
                failures.append({"edge": repr(e), "counterexample": rep.counterexample})
    report["edges"] = {"ok": not failures, "checked": edges, "failures": failures}
    report["ok"] = not failures
    return report


def fibration_triple(p, name: str = "X") -> AdequateTriple:
    """``(X, X_dagger, X^dagger)``: ingressive over isomorphisms, egressive p-cartesian."""
    from .category import is_cartesian

    X, S = p.source, p.target
    ing = {f for f in X.morphisms if S.is_iso(p.mor[f])}
    egr = {f for f in X.morphisms if is_cartesian(p, f)}
    return AdequateTriple(X, ing, egr, name=f"({name},over-iso,cart)")


def base_triple(S: FiniteCategory) -> AdequateTriple:
    """``(S, iota S, S)``."""
    return AdequateTriple(S, S.isos(), None, name=f"({S.name},iso,all)")


# ---------------------------------------------------------------------------
# duals of fibrations


class _DualToBase:
    """Sends a dual simplex to the chain of its backward legs, a simplex of ``N(S^op)``."""

    def __init__(self, p, legs: int):
        self.p, self.legs = p, legs

    def __call__(self, x):
        n, objs, *arrows = x
        oi = _index(n)[0]
        chain = tuple(self.p.obj[objs[oi[(k, k)]]] for k in range(n + 1))
        ai = _index(n)[1]
        return (chain, tuple(self.p.mor[arrows[self.legs][ai[(k, k + 1)]]] for k in range(n)))


def right_dual(p):
    """``X^dual -> S^op`` for a cartesian fibration ``p: X -> S``.

    The pullback of ``A^eff(p)`` along ``S^op -> A^eff(S, iota S, S)``:
    simplices of ``A^eff(X, X_dagger, X^dagger)`` whose forward legs all lie
    over identities.
    """
    S = p.target
    A = AEff(fibration_triple(p))
    A.name = f"{p.source.name}^dual"
    A.restrict = lambda c: S.is_identity(p.mor[c[1]])
    return A, _DualToBase(p, 1)


class CospanTables(VirtualSSet):
    """Left dual ``_dual X -> S^op`` of a cocartesian fibration, built from cospans.

    An ``n``-simplex is ``(n, objs, es, gs)`` with ``W_ab`` for ``a <= b``
    and, for ``a < b``, arrows ``E_ab: W_a(b-1) -> W_ab`` lying over
    identities and p-cocartesian ``G_ab: W_(a+1)b -> W_ab``; each square
    ``W_(a+1)(b-1) -> W_(a+1)b, W_a(b-1) -> W_ab`` is a pushout.
    """

    def __init__(self, p):
        from .category import is_cocartesian

        self.p, self.X = p, p.source
        X, S = self.X, p.target
        self.name = f"dual_{X.name}"
        self.E = {f for f in X.morphisms if S.is_identity(p.mor[f])}
        self.G = {f for f in X.morphisms if is_cocartesian(p, f)}
        self._Xop = X.opposite()
        self._cocones: dict = {}

    def dim(self, x):
        return x[0]

    def cocones(self, e, g):
        """Pushouts ``(W, e', g')`` of ``e: A -> B`` (over an identity) and ``g: A -> B'`` (cocartesian)."""
        key = (e, g)
        if key not in self._cocones:
            X = self.X
            B, Bp = X.tgt(e), X.tgt(g)
            out = []
            for W in X.objects:
                for g2 in X.hom(B, W):
                    if g2 not in self.G:
                        continue
                    for e2 in X.hom(Bp, W):
                        if e2 in self.E and X.comp[(g2, e)] == X.comp[(e2, g)] \
                                and is_pullback(self._Xop, (g2, e2, e, g)):
                            out.append((W, e2, g2))
            self._cocones[key] = out
        return self._cocones[key]

    def simplices(self, n):
        X = self.X
        order = sorted(pairs(n), key=lambda q: (q[1] - q[0], q[0]))
        objs: dict = {}
        es: dict = {}
        gs: dict = {}

        def options(q):
            a, b = q
            if a == b:
                return [(o, None, None) for o in X.objects]
            if b == a + 1:
                x, y = objs[(a, a)], objs[(b, b)]
                return [(X.tgt(e), e, g) for e in X.out_of(x) if e in self.E
                        for g in X.hom(y, X.tgt(e)) if g in self.G]
            return self.cocones(es[(a + 1, b)], gs[(a, b - 1)])

        def grow(k):
            if k == len(order):
                yield (n, tuple(objs[q] for q in pairs(n)),
                       tuple(es[q] for q in arrow_pairs(n)), tuple(gs[q] for q in arrow_pairs(n)))
                return
            q = order[k]
            for o, e, g in options(q):
                objs[q] = o
                if e is not None:
                    es[q], gs[q] = e, g
                yield from grow(k + 1)

        yield from grow(0)

    def act(self, theta, x):
        n, objs, es, gs = x
        X = self.X
        oi, ai = _index(n)
        m = len(theta) - 1

        def run(table, steps, start):
            f = X.ids[start]
            for q in steps:
                f = X.comp[(table[ai[q]], f)]
            return f

        new_objs = tuple(objs[oi[(theta[a], theta[b])]] for a, b in pairs(m))
        new_e, new_g = [], []
        for a, b in arrow_pairs(m):
            lo, hi, row = theta[b - 1], theta[b], theta[a]
            new_e.append(run(es, [(row, c) for c in range(lo + 1, hi + 1)], objs[oi[(row, lo)]]))
            lo, hi, col = theta[a], theta[a + 1], theta[b]
            new_g.append(run(gs, [(c, col) for c in range(hi - 1, lo - 1, -1)], objs[oi[(hi, col)]]))
        return (m, new_objs, tuple(new_e), tuple(new_g))


def left_dual(p):
    """``_dual X -> S^op`` for a cocartesian fibration ``p: X -> S``, built directly from cospans."""
    D = CospanTables(p)
    return D, _DualToBase(p, 2)


def dual_comparisons(G, bound: int = 2) -> dict:
    """Compare the duals of the Grothendieck construction ``p`` of ``G`` with their expected forms.

    Contravariant ``G`` gives a cartesian ``p``: the homotopy category of
    ``p^dual`` must be the covariant construction of ``G`` over ``S^op``, and
    ``(p^dual)^op`` must match the left dual of ``p^op``.  Covariant ``G``
    gives a cocartesian ``p``: the homotopy category of the left dual must
    be the contravariant construction over ``S^op``, and ``(p^op)^dual``
    must match the opposite of the left dual.
    """
    from .category import category_iso, grothendieck, homotopy_category
    from .simplicial import iso_check, opposite

    _, p, _ = grothendieck(G)
    expected, _, _ = grothendieck(G.on_opposite_base())
    if G.variance == "contra":
        D, _ = right_dual(p)
        one, other = opposite(D.materialize(bound)), left_dual(p.opposite())[0].materialize(bound)
    else:
        D, _ = left_dual(p)
        one, other = right_dual(p.opposite())[0].materialize(bound), opposite(D.materialize(bound))
    out = {"side": "right" if G.variance == "contra" else "left",
           "homotopy_category": category_iso(homotopy_category(D), expected) is not None,
           "opposite_duals": iso_check(one, other) is not None}
    out["ok"] = out["homotopy_category"] and out["opposite_duals"]
    return out
