"""Finite and virtual simplicial sets.

A simplex is stored in Eilenberg-Zilber normal form as a pair
``(sigma, target)`` where ``target`` names a nondegenerate simplex and
``sigma`` is the monotone surjection ``[m] -> [d]`` along which it is
degenerated.  Monotone maps ``[k] -> [n]`` are plain value tuples.

Infinite or large objects (nerves of categories with isomorphisms,
edgewise subdivisions, right Kan extensions) implement the
:class:`VirtualSSet` protocol: dimensionwise enumeration plus an ``act``
method for the simplicial operators.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from collections.abc import Callable, Hashable, Iterable, Iterator
from typing import NamedTuple

# ---------------------------------------------------------------------------
# the simplex category


def identity(n: int) -> tuple[int, ...]:
    return tuple(range(n + 1))


def compose(f: tuple[int, ...], g: tuple[int, ...]) -> tuple[int, ...]:
    """``f o g`` (apply ``g`` first)."""
    return tuple(f[x] for x in g)


def coface(n: int, i: int) -> tuple[int, ...]:
    """The injection ``[n-1] -> [n]`` missing ``i``."""
    return tuple(v if v < i else v + 1 for v in range(n))


def codegeneracy(n: int, i: int) -> tuple[int, ...]:
    """The surjection ``[n+1] -> [n]`` hitting ``i`` twice."""
    return tuple(v if v <= i else v - 1 for v in range(n + 2))


def op_map(theta: tuple[int, ...], n: int) -> tuple[int, ...]:
    """Conjugate ``theta: [k] -> [n]`` by order reversal."""
    k = len(theta) - 1
    return tuple(n - theta[k - a] for a in range(k + 1))


def epi_mono(theta: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Factor ``theta`` as a surjection followed by an injection.

    Returns ``(epi, image)`` with ``image`` the sorted image (the injection).
    """
    image = tuple(sorted(set(theta)))
    index = {v: i for i, v in enumerate(image)}
    return tuple(index[v] for v in theta), image


def monotone_maps(k: int, n: int) -> Iterator[tuple[int, ...]]:
    return itertools.combinations_with_replacement(range(n + 1), k + 1)


def surjections(k: int, d: int) -> Iterator[tuple[int, ...]]:
    """Monotone surjections ``[k] -> [d]``."""
    for jumps in itertools.combinations(range(1, k + 1), d):
        table, value, it = [], 0, iter(jumps)
        nxt = next(it, None)
        for a in range(k + 1):
            if a == nxt:
                value += 1
                nxt = next(it, None)
            table.append(value)
        yield tuple(table)


def ez_word(sigma: tuple[int, ...]) -> list[int]:
    """Degeneracy indices ``i1 > ... > ik`` with ``sigma* = s_i1 ... s_ik``."""
    return [j for j in range(len(sigma) - 2, -1, -1) if sigma[j] == sigma[j + 1]]


def word_to_sigma(word: Iterable[int], d: int) -> tuple[int, ...]:
    word = list(word)
    if any(a <= b for a, b in zip(word, word[1:])):
        raise ValueError(f"degeneracy word {word} is not strictly decreasing")
    m = d + len(word)
    table = list(range(m + 1))
    for level, i in enumerate(word):
        if not 0 <= i < m - level:
            raise ValueError(f"degeneracy index {i} out of range in {word}")
        table = [v if v <= i else v - 1 for v in table]
    return tuple(table)


class Simplex(NamedTuple):
    """A simplex ``sigma^*(target)`` of a finite simplicial set."""

    sigma: tuple[int, ...]
    target: Hashable

    @property
    def dim(self) -> int:
        return len(self.sigma) - 1

    @property
    def nondegenerate(self) -> bool:
        # sigma is a surjection, so it is the identity iff it ends at its length
        return self.sigma[-1] == len(self.sigma) - 1


def nd(target: Hashable, d: int) -> Simplex:
    return Simplex(identity(d), target)


# ---------------------------------------------------------------------------
# the virtual protocol


class VirtualSSet:
    """Dimensionwise-enumerable simplicial set.

    Subclasses implement :meth:`simplices`, :meth:`act` and :meth:`dim`.
    Simplices must be hashable and compare equal exactly when they are
    the same simplex.
    """

    name = "X"

    def simplices(self, n: int) -> Iterable[Hashable]:
        raise NotImplementedError

    def act(self, theta: tuple[int, ...], x: Hashable) -> Hashable:
        raise NotImplementedError

    def dim(self, x: Hashable) -> int:
        raise NotImplementedError

    # derived operators --------------------------------------------------
    def face(self, i: int, x: Hashable) -> Hashable:
        return self.act(coface(self.dim(x), i), x)

    def degen(self, i: int, x: Hashable) -> Hashable:
        return self.act(codegeneracy(self.dim(x), i), x)

    def vertex(self, k: int, x: Hashable) -> Hashable:
        return self.act((k,), x)

    def vertices(self, x: Hashable) -> tuple:
        return tuple(self.act((k,), x) for k in range(self.dim(x) + 1))

    def is_degenerate(self, x: Hashable) -> bool:
        d = self.dim(x)
        return any(self.degen(i, self.face(i, x)) == x for i in range(d))

    def ez(self, x: Hashable) -> tuple[tuple[int, ...], Hashable]:
        """Eilenberg-Zilber decomposition ``x = sigma^* y`` with ``y`` nondegenerate."""
        d = self.dim(x)
        for i in range(d):
            y = self.face(i, x)
            if self.degen(i, y) == x:
                tau, z = self.ez(y)
                return compose(tau, codegeneracy(d - 1, i)), z
        return identity(d), x

    def count(self, n: int) -> int:
        return sum(1 for _ in self.simplices(n))

    def fill(self, n: int, faces: dict[int, Hashable]) -> list:
        """All ``n``-simplices whose ``i``-th face is ``faces[i]`` for the given keys."""
        keys = tuple(sorted(faces))
        cache = self.__dict__.setdefault("_fill_cache", {})
        index = cache.get((n, keys))
        if index is None:
            index = defaultdict(list)
            for s in self.simplices(n):
                index[tuple(self.face(i, s) for i in keys)].append(s)
            cache[(n, keys)] = index
        return index.get(tuple(faces[i] for i in keys), [])

    def materialize(self, bound: int) -> SimplicialSet:
        """Finite truncation: all nondegenerate simplices of dimension <= bound."""
        cells: dict = {}
        faces: dict = {}
        for d in range(bound + 1):
            for x in self.simplices(d):
                if d and self.is_degenerate(x):
                    continue
                cells[x] = d
                if d:
                    faces[x] = tuple(Simplex(*self.ez(self.face(i, x))) for i in range(d + 1))
        out = SimplicialSet(cells, faces, name=f"{self.name}<={bound}")
        out.bound = bound
        return out

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"


# ---------------------------------------------------------------------------
# finite simplicial sets


class SimplicialSet(VirtualSSet):
    """Finite simplicial set given by nondegenerate cells and their faces.

    ``cells`` maps identifiers to dimensions (insertion order is kept and used
    for deterministic output); ``faces`` maps each positive-dimensional
    identifier to its ``d+1`` faces as :class:`Simplex` references.
    """

    def __init__(self, cells: dict, faces: dict, name: str = "X", check: bool = True):
        self.cells = dict(cells)
        self.faces = {x: tuple(Simplex(tuple(s[0]), s[1]) for s in fs) for x, fs in faces.items()}
        self.name = name
        self._by_dim: dict[int, list] = defaultdict(list)
        for x, d in self.cells.items():
            self._by_dim[d].append(x)
        self.dimension = max(self.cells.values(), default=-1)
        self._restrict_memo: dict = {}
        if check:
            self.validate()

    # structure -----------------------------------------------------------
    def nondeg(self, d: int) -> list:
        return self._by_dim.get(d, [])

    def all_cells(self) -> list:
        return list(self.cells)

    def counts(self) -> list[int]:
        return [len(self.nondeg(d)) for d in range(self.dimension + 1)]

    def validate(self) -> None:
        for x, d in self.cells.items():
            fs = self.faces.get(x, ())
            if d == 0:
                if fs:
                    raise ValueError(f"vertex {x!r} has faces")
                continue
            if len(fs) != d + 1:
                raise ValueError(f"simplex {x!r} of dimension {d} has {len(fs)} faces")
            for s in fs:
                if s.target not in self.cells:
                    raise ValueError(f"face of {x!r} refers to unknown simplex {s.target!r}")
                if s.dim != d - 1 or self.cells[s.target] != len(set(s.sigma)) - 1:
                    raise ValueError(f"face {s} of {x!r} has the wrong dimension")
                if s.sigma != epi_mono(s.sigma)[0] or s.sigma[0] != 0:
                    raise ValueError(f"face {s} of {x!r} is not in normal form")
        for x, d in self.cells.items():
            for i in range(d + 1):
                for j in range(i + 1, d + 1):
                    if d >= 2 and self.face(i, self.face(j, nd(x, d))) != self.face(
                        j - 1, self.face(i, nd(x, d))
                    ):
                        raise ValueError(f"simplicial identity d{i}d{j} fails on {x!r}")

    # VirtualSSet protocol -------------------------------------------------
    def dim(self, x: Simplex) -> int:
        return len(x.sigma) - 1

    def simplices(self, n: int) -> Iterator[Simplex]:
        for d in range(min(n, self.dimension) + 1):
            sigmas = list(surjections(n, d))
            for x in self.nondeg(d):
                for s in sigmas:
                    yield Simplex(s, x)

    def count(self, n: int) -> int:
        from math import comb

        return sum(len(self.nondeg(d)) * comb(n, d) for d in range(min(n, self.dimension) + 1))

    def act(self, theta: tuple[int, ...], x: Simplex) -> Simplex:
        epi, image = epi_mono(compose(x.sigma, theta))
        tau, y = self.restrict(x.target, image)
        return Simplex(compose(tau, epi), y)

    def restrict(self, x: Hashable, image: tuple[int, ...]) -> tuple[tuple[int, ...], Hashable]:
        """The face of the nondegenerate ``x`` spanned by the vertex positions ``image``."""
        d = self.cells[x]
        if len(image) == d + 1:
            return identity(d), x
        key = (x, image)
        hit = self._restrict_memo.get(key)
        if hit is not None:
            return hit
        missing = max(set(range(d + 1)) - set(image))
        rel = tuple(v if v < missing else v - 1 for v in image)
        res = self.act(rel, self.faces[x][missing])
        out = (res.sigma, res.target)
        self._restrict_memo[key] = out
        return out

    def is_degenerate(self, x: Simplex) -> bool:
        return not x.nondegenerate

    def ez(self, x: Simplex):
        return x.sigma, nd(x.target, self.cells[x.target])

    def vertex_ids(self, x: Hashable) -> tuple:
        d = self.cells[x]
        return tuple(self.restrict(x, (k,))[1] for k in range(d + 1))

    def ref(self, x: Hashable) -> Simplex:
        return nd(x, self.cells[x])

    def __len__(self) -> int:
        return len(self.cells)


class ChainSSet(SimplicialSet):
    """Simplicial subset of the nerve of a poset, cells named by strict chains.

    Covers standard simplices ``Delta^K`` (chains in a total order), their
    unions of faces, and nerves of finite posets.
    """

    def __init__(self, chains: Iterable[tuple], name: str = "X", key: Callable | None = None):
        closed = set()
        for c in chains:
            c = tuple(c)
            for r in range(1, len(c) + 1):
                closed.update(itertools.combinations(c, r))
        order = sorted(closed, key=lambda c: (len(c), tuple(map(key, c)) if key else c))
        cells = {c: len(c) - 1 for c in order}
        faces = {
            c: tuple(nd(c[:i] + c[i + 1:], len(c) - 2) for i in range(len(c)))
            for c in order
            if len(c) > 1
        }
        super().__init__(cells, faces, name=name, check=False)

    def restrict(self, x, image):
        return identity(len(image) - 1), tuple(x[i] for i in image)

    def simplex_of(self, seq: Iterable) -> Simplex:
        """The (possibly degenerate) simplex with vertex sequence ``seq``."""
        seq = tuple(seq)
        chain, sigma = [], []
        for v in seq:
            if not chain or chain[-1] != v:
                chain.append(v)
            sigma.append(len(chain) - 1)
        chain = tuple(chain)
        if chain not in self.cells:
            raise KeyError(f"{seq} is not a simplex of {self.name}")
        return Simplex(tuple(sigma), chain)

    def vertex_seq(self, x: Simplex) -> tuple:
        return tuple(x.target[i] for i in x.sigma)

    def sub(self, chains: Iterable[tuple], name: str = "A") -> ChainSSet:
        return ChainSSet(chains, name=name)


def poset_chains(elements: Iterable, less: Callable[[Hashable, Hashable], bool]) -> list[tuple]:
    """All nonempty strict chains of a finite poset, each listed in increasing order."""
    elements = list(elements)
    up = {a: [b for b in elements if less(a, b)] for a in elements}
    out = []

    def grow(chain):
        out.append(chain)
        for b in up[chain[-1]]:
            grow(chain + (b,))

    for a in elements:
        grow((a,))
    return out


def poset_nerve(elements: Iterable, less: Callable, name: str = "N(P)") -> ChainSSet:
    return ChainSSet(poset_chains(elements, less), name=name)


# ---------------------------------------------------------------------------
# maps


class SimplicialMap:
    """Map out of a finite simplicial set, given on nondegenerate cells."""

    def __init__(self, source: SimplicialSet, target: VirtualSSet, assign: dict, name: str = "f"):
        self.source = source
        self.target = target
        self.assign = dict(assign)
        self.name = name

    def __call__(self, x: Simplex) -> Hashable:
        return self.target.act(x.sigma, self.assign[x.target])

    def on_cell(self, x: Hashable) -> Hashable:
        return self.assign[x]

    def check(self) -> None:
        for x, d in self.source.cells.items():
            y = self.assign[x]
            if self.target.dim(y) != d:
                raise ValueError(f"{self.name}: image of {x!r} has the wrong dimension")
            for i, f in enumerate(self.source.faces.get(x, ())):
                if self.target.face(i, y) != self(f):
                    raise ValueError(f"{self.name}: face {i} of {x!r} does not commute")

    def is_mono(self) -> bool:
        seen = set()
        for x in self.source.cells:
            y = self.assign[x]
            if self.target.is_degenerate(y) or y in seen:
                return False
            seen.add(y)
        return True

    def then(self, g: SimplicialMap | FunctionMap) -> SimplicialMap:
        return SimplicialMap(self.source, g.target, {x: g(y) for x, y in self.assign.items()})


class FunctionMap:
    """Map between virtual simplicial sets given by a function on simplices."""

    def __init__(self, source: VirtualSSet, target: VirtualSSet, fn: Callable, name: str = "p"):
        self.source, self.target, self.fn, self.name = source, target, fn, name

    def __call__(self, x):
        return self.fn(x)


def identity_map(X: SimplicialSet) -> SimplicialMap:
    return SimplicialMap(X, X, {x: X.ref(x) for x in X.cells}, name="id")


def inclusion(A: SimplicialSet, B: SimplicialSet, name: str = "i") -> SimplicialMap:
    """Inclusion of a simplicial subset whose cells are named as in ``B``."""
    return SimplicialMap(A, B, {x: B.ref(x) for x in A.cells}, name=name)


# ---------------------------------------------------------------------------
# standard objects


def standard_simplex(n, name: str | None = None) -> ChainSSet:
    """``Delta^n``; ``n`` may also be a sorted vertex collection ``K``."""
    verts = tuple(range(n + 1)) if isinstance(n, int) else tuple(sorted(n))
    if not verts:
        raise ValueError("a simplex needs at least one vertex")
    return ChainSSet([verts], name=name or f"Delta^{len(verts) - 1}")


def spine_chains(K) -> list[tuple]:
    K = tuple(sorted(K))
    if len(K) == 1:
        return [K]
    return [(a, b) for a, b in zip(K, K[1:])]


def spine(K) -> SimplicialMap:
    """Inclusion ``I^K -> Delta^K`` of the spine."""
    K = tuple(range(K + 1)) if isinstance(K, int) else tuple(sorted(K))
    if not K:
        raise ValueError("spine of an empty vertex set")
    D = standard_simplex(K)
    return inclusion(ChainSSet(spine_chains(K), name=f"I^{len(K) - 1}"), D, name="s")


def horn_chains(n: int, S) -> list[tuple]:
    S = set(S)
    if not S or not S < set(range(n + 1)):
        raise ValueError(f"horn index set {sorted(S)} must be nonempty and proper in [0..{n}]")
    return [tuple(v for v in range(n + 1) if v != s) for s in range(n + 1) if s not in S]


def horn(n: int, S) -> SimplicialMap:
    """Inclusion of the generalized horn (union of faces containing ``Delta^S``)."""
    S = {S} if isinstance(S, int) else set(S)
    A = ChainSSet(horn_chains(n, S), name=f"Lambda^{n}_{sorted(S)}")
    return inclusion(A, standard_simplex(n))


def boundary(n: int) -> SimplicialMap:
    B = ChainSSet([tuple(v for v in range(n + 1) if v != s) for s in range(n + 1)] if n else [],
                  name=f"dDelta^{n}")
    return inclusion(B, standard_simplex(n))


def j_chains(n: int) -> list[tuple]:
    if n < 2:
        raise ValueError("J^n needs n >= 2")
    return [(0, 1), (0, 2)] + [(i, i + 1) for i in range(2, n)]


def J_complex(n: int) -> SimplicialMap:
    return inclusion(ChainSSet(j_chains(n), name=f"J^{n}"), standard_simplex(n))


EMPTY = SimplicialSet({}, {}, name="empty")


# ---------------------------------------------------------------------------
# colimits


def coproduct(X: SimplicialSet, Y: SimplicialSet, tags=(0, 1)) -> SimplicialSet:
    cells, faces = {}, {}
    for tag, Z in zip(tags, (X, Y)):
        for x, d in Z.cells.items():
            cells[(tag, x)] = d
            if d:
                faces[(tag, x)] = tuple(Simplex(s.sigma, (tag, s.target)) for s in Z.faces[x])
    return SimplicialSet(cells, faces, name=f"{X.name}+{Y.name}", check=False)


class _DSU:
    def __init__(self):
        self.parent = {}

    def find(self, a):
        parent = self.parent
        root = a
        while parent.get(root, root) != root:
            root = parent[root]
        while a != root:
            a, parent[a] = parent.get(a, a), root
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if repr(rb) < repr(ra):
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def quotient(Z: SimplicialSet, pairs: Iterable[tuple[Simplex, Simplex]], name: str = "Q"):
    """Quotient of ``Z`` by the simplicial congruence generated by ``pairs``.

    Returns ``(Q, proj)`` with ``proj`` mapping each cell of ``Z`` to a
    simplex of ``Q`` in normal form.  Cells of ``Q`` keep the name of a
    nondegenerate representative.
    """
    D = Z.dimension
    dsu = _DSU()
    queue = list(pairs)
    while queue:
        a, b = queue.pop()
        if a == b or not dsu.union(a, b):
            continue
        k = a.dim
        for i in range(k + 1):
            if k:
                queue.append((Z.face(i, a), Z.face(i, b)))
            if k < D:
                queue.append((Z.degen(i, a), Z.degen(i, b)))
    classes: dict = defaultdict(list)
    for d in range(D + 1):
        for s in Z.simplices(d):
            classes[dsu.find(s)].append(s)
    degenerate_rep = {}
    for root, members in classes.items():
        degs = sorted((m for m in members if not m.nondegenerate), key=repr)
        if degs:
            degenerate_rep[root] = degs[0]
    rep_name = {}
    for root, members in classes.items():
        if root not in degenerate_rep:
            rep_name[root] = min((m.target for m in members), key=repr)

    memo: dict = {}

    def decompose(s: Simplex) -> Simplex:
        root = dsu.find(s)
        hit = memo.get(root)
        if hit is None:
            if root in rep_name:
                hit = nd(rep_name[root], s.dim)
            else:
                r = degenerate_rep[root]
                inner = decompose(nd(r.target, Z.cells[r.target]))
                hit = Simplex(compose(inner.sigma, r.sigma), inner.target)
            memo[root] = hit
        return hit

    cells, faces = {}, {}
    for d in range(D + 1):
        for x in Z.nondeg(d):
            s = decompose(nd(x, d))
            if s.nondegenerate and s.target not in cells:
                cells[s.target] = d
                if d:
                    faces[s.target] = tuple(decompose(Z.face(i, nd(x, d))) for i in range(d + 1))
    Q = SimplicialSet(cells, faces, name=name, check=False)
    proj = {x: decompose(nd(x, d)) for x, d in Z.cells.items()}
    return Q, proj


def pushout(f: SimplicialMap, g: SimplicialMap, name: str | None = None):
    """Pushout of ``X <-f- A -g-> Y``; returns ``(P, inl, inr)``."""
    if f.source is not g.source and f.source.cells.keys() != g.source.cells.keys():
        raise ValueError("pushout legs must share their source")
    X, Y = f.target, g.target
    Z = coproduct(X, Y, tags=("L", "R"))
    pairs = [
        (Simplex(f.assign[a].sigma, ("L", f.assign[a].target)),
         Simplex(g.assign[a].sigma, ("R", g.assign[a].target)))
        for a in f.source.cells
    ]
    P, proj = quotient(Z, pairs, name=name or f"{X.name}+_{f.source.name}{Y.name}")
    inl = SimplicialMap(X, P, {x: proj[("L", x)] for x in X.cells})
    inr = SimplicialMap(Y, P, {y: proj[("R", y)] for y in Y.cells})
    return P, inl, inr


def induced_map(P_maps: tuple[SimplicialMap, SimplicialMap], legs: tuple, P: SimplicialSet):
    """Map out of a pushout ``P`` determined by two cocone legs."""
    inl, inr = P_maps
    assign = {}
    for m, leg in ((inl, legs[0]), (inr, legs[1])):
        for x, s in m.assign.items():
            if s.nondegenerate:
                y = leg.assign[x]
                if s.target in assign and assign[s.target] != y:
                    raise ValueError("cocone legs disagree on the pushout")
                assign[s.target] = y
    return SimplicialMap(P, legs[0].target, assign)


# ---------------------------------------------------------------------------
# products and opposites


class VirtualProduct(VirtualSSet):
    def __init__(self, X: VirtualSSet, Y: VirtualSSet):
        self.X, self.Y = X, Y
        self.name = f"{X.name}x{Y.name}"

    def simplices(self, n):
        ys = list(self.Y.simplices(n))
        for x in self.X.simplices(n):
            for y in ys:
                yield (x, y)

    def act(self, theta, p):
        return (self.X.act(theta, p[0]), self.Y.act(theta, p[1]))

    def dim(self, p):
        return self.X.dim(p[0])

    def count(self, n):
        return self.X.count(n) * self.Y.count(n)

    def fill(self, n, faces):
        xs = self.X.fill(n, {i: f[0] for i, f in faces.items()})
        if not xs:
            return []
        ys = self.Y.fill(n, {i: f[1] for i, f in faces.items()})
        return [(x, y) for x in xs for y in ys]


def product(X: VirtualSSet, Y: VirtualSSet, bound: int | None = None) -> SimplicialSet:
    """Finite product; nondegenerate cells are pairs not simultaneously degenerate."""
    if bound is None:
        bound = X.dimension + Y.dimension
    return VirtualProduct(X, Y).materialize(bound)


class VirtualOpposite(VirtualSSet):
    def __init__(self, X: VirtualSSet):
        self.X = X
        self.name = f"{X.name}^op"

    def simplices(self, n):
        return self.X.simplices(n)

    def act(self, theta, x):
        return self.X.act(op_map(theta, self.X.dim(x)), x)

    def dim(self, x):
        return self.X.dim(x)

    def count(self, n):
        return self.X.count(n)

    def fill(self, n, faces):
        return self.X.fill(n, {n - i: f for i, f in faces.items()})


def opposite(X: VirtualSSet) -> VirtualSSet:
    """Opposite simplicial set; finite input gives finite output with the same cells."""
    if isinstance(X, VirtualOpposite):
        return X.X
    if not isinstance(X, SimplicialSet):
        return VirtualOpposite(X)
    faces = {}
    for x, fs in X.faces.items():
        d = X.cells[x]
        faces[x] = tuple(
            Simplex(op_map(fs[d - i].sigma, X.cells[fs[d - i].target]), fs[d - i].target)
            for i in range(d + 1)
        )
    return SimplicialSet(X.cells, faces, name=f"{X.name}^op", check=False)


# ---------------------------------------------------------------------------
# map search


def search_order(B: SimplicialSet) -> list:
    """Cells ordered so that each follows its faces and vertices arrive connected."""
    verts = list(B.nondeg(0))
    adj: dict = defaultdict(set)
    for e in B.nondeg(1):
        a, b = B.vertex_ids(e)
        adj[a].add(b)
        adj[b].add(a)
    pos: dict = {}
    for start in sorted(verts, key=lambda v: -len(adj[v])):
        if start in pos:
            continue
        frontier = [start]
        while frontier:
            v = frontier.pop(0)
            if v in pos:
                continue
            pos[v] = len(pos)
            frontier.extend(sorted((w for w in adj[v] if w not in pos), key=lambda w: -len(adj[w])))
    index = {x: k for k, x in enumerate(B.cells)}

    def key(x):
        return (max(pos[v] for v in B.vertex_ids(x)), B.cells[x], index[x])

    return sorted(B.cells, key=key)


def iter_maps(
    B: SimplicialSet,
    X: VirtualSSet,
    fixed: dict | None = None,
    check: Callable | None = None,
    injective: bool = False,
    vertex_candidates: Callable | None = None,
) -> Iterator[dict]:
    """Backtracking enumeration of simplicial maps ``B -> X``.

    Maps are yielded as assignments on the nondegenerate cells of ``B``.
    ``fixed`` pins some cells, ``check(x, image, assign)`` prunes, and
    ``injective`` restricts to maps sending nondegenerate cells injectively
    to nondegenerate simplices.
    """
    fixed = fixed or {}
    order = search_order(B)
    if not order:
        yield {}
        return
    assign: dict = {}
    used: set = set()

    plan = {x: [(i, f.target, None if f.nondegenerate else f.sigma) for i, f in enumerate(B.faces[x])]
            for x in order if B.cells[x]}

    def candidates(x):
        d = B.cells[x]
        if d:
            bd = {}
            for i, t, sigma in plan[x]:
                bd[i] = assign[t] if sigma is None else X.act(sigma, assign[t])
        if x in fixed:
            c = fixed[x]
            pool = [c] if not d or all(X.face(i, c) == y for i, y in bd.items()) else []
        elif d == 0:
            pool = vertex_candidates(x) if vertex_candidates else X.simplices(0)
        else:
            pool = X.fill(d, bd)
        for c in pool:
            if injective and (c in used or (d and X.is_degenerate(c))):
                continue
            if check is not None and not check(x, c, assign):
                continue
            yield c

    last = len(order) - 1
    stack = [candidates(order[0])]
    while stack:
        depth = len(stack) - 1
        x = order[depth]
        old = assign.pop(x, None)
        if old is not None and injective:
            used.discard(old)
        c = next(stack[-1], _DONE)
        if c is _DONE:
            stack.pop()
            continue
        assign[x] = c
        if injective:
            used.add(c)
        if depth == last:
            yield dict(assign)
        else:
            stack.append(candidates(order[depth + 1]))


_DONE = object()


def first_map(B, X, **kw) -> dict | None:
    return next(iter_maps(B, X, **kw), None)


def _vertex_signature(X: SimplicialSet) -> dict:
    sig: dict = defaultdict(lambda: defaultdict(int))
    for v in X.nondeg(0):
        sig[v]
    for x, d in X.cells.items():
        for k, v in enumerate(X.vertex_ids(x)):
            sig[v][(d, k)] += 1
    return {v: tuple(sorted(c.items())) for v, c in sig.items()}


def iso_check(X: SimplicialSet, Y: SimplicialSet) -> SimplicialMap | None:
    """An isomorphism ``X -> Y`` or ``None`` when the search is exhausted."""
    if X.counts() != Y.counts():
        return None
    sx, sy = _vertex_signature(X), _vertex_signature(Y)
    if sorted(sx.values()) != sorted(sy.values()):
        return None
    by_sig: dict = defaultdict(list)
    for v, s in sy.items():
        by_sig[s].append(nd(v, 0))
    found = first_map(X, Y, injective=True, vertex_candidates=lambda x: by_sig[sx[x]])
    return None if found is None else SimplicialMap(X, Y, found, name="iso")


def same_subobject_up_to_iso(i: SimplicialMap, j: SimplicialMap) -> tuple | None:
    """Isomorphism of monos ``i: A -> B`` and ``j: A' -> B'`` as a pair ``(alpha, beta)``."""
    A, B = i.source, i.target
    A2, B2 = j.source, j.target
    if A.counts() != A2.counts() or B.counts() != B2.counts():
        return None
    image_i = {i.assign[a] for a in A.cells}
    image_j = {j.assign[a]: a for a in A2.cells}
    sb, sb2 = _vertex_signature(B), _vertex_signature(B2)
    by_sig: dict = defaultdict(list)
    for v, s in sb2.items():
        by_sig[s].append(nd(v, 0))

    def check(x, c, assign):
        return (nd(x, B.cells[x]) in image_i) == (c in image_j)

    for beta in iter_maps(B, B2, injective=True, check=check,
                          vertex_candidates=lambda x: by_sig[sb[x]]):
        alpha = {a: image_j[beta[i.assign[a].target]] for a in A.cells}
        return (SimplicialMap(A, A2, {a: nd(t, A.cells[a]) for a, t in alpha.items()}),
                SimplicialMap(B, B2, beta))
    return None


# ---------------------------------------------------------------------------
# sset/v1


def _sid(x) -> str:
    return x if isinstance(x, str) else repr(x)


def _ref_json(s: Simplex) -> dict:
    return {"word": ez_word(s.sigma), "target": _sid(s.target)}


def sset_to_json(X: SimplicialSet) -> dict:
    names = {}
    for x in X.cells:
        sx = _sid(x)
        if sx in names.values():
            raise ValueError(f"identifier collision on {sx!r}")
        names[x] = sx
    return {
        "schema": "sset/v1",
        "dims": [
            {
                "d": d,
                "simplices": [
                    {"id": names[x], "faces": [_ref_json(f) for f in X.faces.get(x, ())]}
                    for x in X.nondeg(d)
                ],
            }
            for d in range(X.dimension + 1)
        ],
    }


def sset_from_json(data: dict, name: str = "X") -> SimplicialSet:
    if data.get("schema", "sset/v1") != "sset/v1":
        raise ValueError(f"expected schema sset/v1, got {data.get('schema')!r}")
    cells, faces = {}, {}
    for k, block in enumerate(data["dims"]):
        d = block["d"]
        for j, s in enumerate(block["simplices"]):
            where = f"dims[{k}].simplices[{j}]"
            if s["id"] in cells:
                raise ValueError(f"{where}: duplicate id {s['id']!r}")
            cells[s["id"]] = d
            if len(s.get("faces", [])) != (d + 1 if d else 0):
                raise ValueError(f"{where}: expected {d + 1 if d else 0} faces")
            if d:
                refs = []
                for f in s["faces"]:
                    if f["target"] not in cells:
                        raise ValueError(f"{where}: unknown face target {f['target']!r}")
                    refs.append(Simplex(word_to_sigma(f["word"], cells[f["target"]]), f["target"]))
                faces[s["id"]] = tuple(refs)
    return SimplicialSet(cells, faces, name=name)


def map_to_json(f: SimplicialMap) -> dict:
    if not isinstance(f.target, SimplicialSet):
        raise TypeError("only maps between finite simplicial sets serialize")
    return {
        "schema": "smap/v1",
        "assign": [
            {"src": _sid(x), "word": ez_word(f.assign[x].sigma), "target": _sid(f.assign[x].target)}
            for x in f.source.cells
        ],
    }


def map_from_json(data: dict, source: SimplicialSet, target: SimplicialSet) -> SimplicialMap:
    src = {_sid(x): x for x in source.cells}
    tgt = {_sid(x): x for x in target.cells}
    assign = {}
    for k, a in enumerate(data["assign"]):
        if a["src"] not in src or a["target"] not in tgt:
            raise ValueError(f"assign[{k}]: unknown simplex")
        t = tgt[a["target"]]
        assign[src[a["src"]]] = Simplex(word_to_sigma(a["word"], target.cells[t]), t)
    f = SimplicialMap(source, target, assign)
    f.check()
    return f
