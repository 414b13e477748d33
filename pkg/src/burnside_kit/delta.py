"""The simplex category, its join, and the functors induced by ``op * id``."""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

from .simplicial import (
    ChainSSet,
    Simplex,
    SimplicialMap,
    SimplicialSet,
    VirtualProduct,
    VirtualSSet,
    compose,
    identity,
    iter_maps,
    monotone_maps,
    nd,
    op_map,
    opposite,
    quotient,
)

ID, OP, KAPPA = "id", "op", "kappa"
LETTERS = (ID, OP, KAPPA)


@dataclass(frozen=True)
class DeltaMorphism:
    """Monotone map ``[m] -> [n]``."""

    m: int
    n: int
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != self.m + 1 or any(not 0 <= v <= self.n for v in self.table):
            raise ValueError(f"bad value table {self.table} for [{self.m}] -> [{self.n}]")
        if any(a > b for a, b in zip(self.table, self.table[1:])):
            raise ValueError(f"{self.table} is not monotone")

    @classmethod
    def identity(cls, n: int) -> DeltaMorphism:
        return cls(n, n, identity(n))

    def then(self, other: DeltaMorphism) -> DeltaMorphism:
        return DeltaMorphism(self.m, other.n, compose(other.table, self.table))


def join_objects(m: int, n: int) -> int:
    return m + n + 1


def join_maps(f: DeltaMorphism, g: DeltaMorphism) -> DeltaMorphism:
    off = f.n + 1
    return DeltaMorphism(
        join_objects(f.m, g.m), join_objects(f.n, g.n), f.table + tuple(v + off for v in g.table)
    )


class EndoWord(tuple):
    """Nonempty word over ``id``, ``op`` and ``kappa`` read as an iterated join."""

    def __new__(cls, letters):
        letters = tuple(letters)
        if not letters or any(a not in LETTERS for a in letters):
            raise ValueError(f"invalid endofunctor word {letters}")
        return super().__new__(cls, letters)

    def on_object(self, n: int) -> int:
        sizes = [0 if a == KAPPA else n for a in self]
        return sum(sizes) + len(sizes) - 1


EPSILON = EndoWord((OP, ID))


def _letter(a: str, phi: DeltaMorphism) -> DeltaMorphism:
    if a == ID:
        return phi
    if a == OP:
        return DeltaMorphism(phi.m, phi.n, op_map(phi.table, phi.n))
    return DeltaMorphism(0, 0, (0,))


def eval_endoword(w, phi: DeltaMorphism) -> DeltaMorphism:
    w = EndoWord(w)
    out = _letter(w[0], phi)
    for a in w[1:]:
        out = join_maps(out, _letter(a, phi))
    return out


@functools.lru_cache(maxsize=None)
def epsilon(theta: tuple[int, ...], n: int) -> tuple[int, ...]:
    """Value table of ``epsilon(theta)`` for ``theta: [k] -> [n]``."""
    return eval_endoword(EPSILON, DeltaMorphism(len(theta) - 1, n, tuple(theta))).table


def all_words(max_len: int):
    for k in range(1, max_len + 1):
        for w in itertools.product(LETTERS, repeat=k):
            yield EndoWord(w)


def distinct_words_witness(w1, w2, bound: int) -> DeltaMorphism | None:
    """A morphism of arity <= bound on which the two endofunctors differ."""
    w1, w2 = EndoWord(w1), EndoWord(w2)
    if w1 == w2:
        return None
    for total in range(2 * bound + 1):
        for m in range(total + 1):
            n = total - m
            if m > bound or n > bound:
                continue
            for t in monotone_maps(m, n):
                phi = DeltaMorphism(m, n, t)
                if eval_endoword(w1, phi) != eval_endoword(w2, phi):
                    return phi
    return None


# ---------------------------------------------------------------------------
# edgewise subdivision


class Edgewise(VirtualSSet):
    """``epsilon^* X``: n-simplices are the (2n+1)-simplices of ``X``."""

    def __init__(self, X: VirtualSSet):
        self.X = X
        self.name = f"Tw({X.name})"

    def simplices(self, n):
        return self.X.simplices(2 * n + 1)

    def count(self, n):
        return self.X.count(2 * n + 1)

    def dim(self, x):
        return (self.X.dim(x) - 1) // 2

    def act(self, theta, x):
        return self.X.act(epsilon(theta, self.dim(x)), x)


def edgewise(X: VirtualSSet) -> Edgewise:
    return Edgewise(X)


def twisted_simplex(n: int) -> ChainSSet:
    """``epsilon^* Delta^n`` as the nerve of the poset of intervals of ``[n]`` under widening."""
    elems = [(i, j) for i in range(n + 1) for j in range(i, n + 1)]
    from .simplicial import poset_chains

    return ChainSSet(
        poset_chains(elems, lambda a, b: a != b and b[0] <= a[0] and a[1] <= b[1]),
        name=f"Tw(Delta^{n})",
    )


def interval_chain(seq: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    """Read a monotone ``[2m+1] -> [n]`` as a widening chain of intervals."""
    m = (len(seq) - 2) // 2
    return tuple((seq[m - a], seq[m + 1 + a]) for a in range(m + 1))


def chain_sequence(chain) -> tuple[int, ...]:
    return tuple(c[0] for c in reversed(chain)) + tuple(c[1] for c in chain)


# ---------------------------------------------------------------------------
# left Kan extension


class EpsilonShriek:
    """``epsilon_! X`` with its canonical simplices and structure maps."""

    def __init__(self, X: SimplicialSet):
        self.X = X
        cells, faces = {}, {}
        for x, d in X.cells.items():
            top = tuple(range(2 * d + 2))
            for r in range(1, len(top) + 1):
                for c in itertools.combinations(top, r):
                    cells[(x, c)] = r - 1
                    if r > 1:
                        faces[(x, c)] = tuple(nd((x, c[:i] + c[i + 1:]), r - 2) for i in range(r))
        Z = SimplicialSet(cells, faces, name="glue", check=False)
        pairs = []
        for x, d in X.cells.items():
            for i, f in enumerate(X.faces.get(x, ())):
                e = X.cells[f.target]
                here = epsilon(tuple(v if v < i else v + 1 for v in range(d)), d)
                there = epsilon(f.sigma, e)
                pairs.append((nd((x, here), 2 * d - 1), _chain_ref(f.target, there)))
        self.sset, proj = quotient(Z, pairs, name=f"eps_!({X.name})")
        self.sset.name = f"eps_!({X.name})"
        self._proj = proj

    def canonical(self, x) -> Simplex:
        d = self.X.cells[x]
        return self._proj[(x, tuple(range(2 * d + 2)))]

    def image(self, x, seq: tuple[int, ...]) -> Simplex:
        """``seq^*`` of the canonical simplex of ``x``."""
        return self.sset.act(seq, self.canonical(x))

    def unit_maps(self) -> tuple[SimplicialMap, SimplicialMap]:
        """The maps ``X^op -> eps_! X`` and ``X -> eps_! X`` from ``op, id -> op * id``."""
        X = self.X
        lower = {x: self.image(x, tuple(range(d + 1))) for x, d in X.cells.items()}
        upper = {x: self.image(x, tuple(range(d + 1, 2 * d + 2))) for x, d in X.cells.items()}
        return (SimplicialMap(opposite(X), self.sset, lower, name="op-unit"),
                SimplicialMap(X, self.sset, upper, name="id-unit"))

    def functor(self, f: SimplicialMap, other: EpsilonShriek) -> SimplicialMap:
        """``epsilon_!(f)`` for ``f: X -> Y``."""
        assign = {}
        for cell in self.sset.cells:
            x, chain = cell
            s = f.assign[x]
            ey = other.X.cells[s.target]
            assign[cell] = other.image(s.target, compose(epsilon(s.sigma, ey), chain))
        return SimplicialMap(self.sset, other.sset, assign, name="eps_!f")


def _chain_ref(x, seq):
    chain, sigma = [], []
    for v in seq:
        if not chain or chain[-1] != v:
            chain.append(v)
        sigma.append(len(chain) - 1)
    return Simplex(tuple(sigma), (x, tuple(chain)))


def epsilon_shriek(X: SimplicialSet) -> SimplicialSet:
    return EpsilonShriek(X).sset


# ---------------------------------------------------------------------------
# right Kan extension


class EpsilonLowerStar(VirtualSSet):
    """``epsilon_* Y``: n-simplices are the maps ``Tw(Delta^n) -> Y``."""

    def __init__(self, Y: VirtualSSet):
        self.Y = Y
        self.name = f"eps_*({Y.name})"
        self._tw: dict[int, ChainSSet] = {}

    def tw(self, n: int) -> ChainSSet:
        if n not in self._tw:
            self._tw[n] = twisted_simplex(n)
        return self._tw[n]

    def simplices(self, n):
        T = self.tw(n)
        cells = list(T.cells)
        for a in iter_maps(T, self.Y):
            yield (n, tuple(a[c] for c in cells))

    def dim(self, x):
        return x[0]

    def act(self, theta, x):
        n, values = x
        T, S = self.tw(n), self.tw(len(theta) - 1)
        table = dict(zip(T.cells, values))
        out = []
        for c in S.cells:
            s = T.simplex_of(tuple((theta[i], theta[j]) for i, j in c))
            out.append(self.Y.act(s.sigma, table[s.target]))
        return (len(theta) - 1, tuple(out))

    def as_map(self, x) -> SimplicialMap:
        n, values = x
        T = self.tw(n)
        return SimplicialMap(T, self.Y, dict(zip(T.cells, values)))


def epsilon_lower_star(Y: VirtualSSet) -> EpsilonLowerStar:
    return EpsilonLowerStar(Y)


# ---------------------------------------------------------------------------
# adjunctions


@dataclass
class AdjunctionReport:
    shriek_left: int
    shriek_right: int
    star_left: int
    star_right: int
    transposes_ok: bool

    @property
    def ok(self) -> bool:
        return (self.shriek_left == self.shriek_right and self.star_left == self.star_right
                and self.transposes_ok)


def adjunction_check(X: SimplicialSet, Y: SimplicialSet) -> AdjunctionReport:
    """Count both sides of ``eps_! -| eps^* -| eps_*`` and check the transposes."""
    E = EpsilonShriek(X)
    TwY = edgewise(Y)
    left = list(iter_maps(E.sset, Y))
    right = list(iter_maps(X, TwY))
    transposes = set()
    ok = True
    for g in left:
        t = {x: SimplicialMap(E.sset, Y, g)(E.canonical(x)) for x in X.cells}
        try:
            SimplicialMap(X, TwY, t).check()
        except ValueError:
            ok = False
        transposes.add(tuple(t[x] for x in X.cells))
    ok = ok and len(transposes) == len(left)

    TwX = edgewise(X).materialize(max(X.dimension, 0))
    star_left = list(iter_maps(TwX, Y))
    Ey = EpsilonLowerStar(Y)
    star_right = sum(1 for _ in iter_maps(X, Ey))
    seen = set()
    for h in star_left:
        hm = SimplicialMap(TwX, Y, h)
        t = {}
        for x, d in X.cells.items():
            T = Ey.tw(d)
            vals = []
            for c in T.cells:
                z = X.act(chain_sequence(c), nd(x, d))
                sigma, cell = edgewise(X).ez(z)
                vals.append(Y.act(sigma, hm.assign[cell]))
            t[x] = (d, tuple(vals))
        try:
            SimplicialMap(X, Ey, t).check()
        except ValueError:
            ok = False
        seen.add(tuple(t[x] for x in X.cells))
    ok = ok and len(seen) == len(star_left)
    return AdjunctionReport(len(left), len(right), len(star_left), star_right, ok)


# ---------------------------------------------------------------------------
# the projection to X^op x X


class TwistedProjection:
    """``Tw(X) -> X^op x X`` induced by ``op, id -> op * id``."""

    def __init__(self, X: VirtualSSet):
        self.X = X
        self.source = edgewise(X)
        self.target = VirtualProduct(opposite(X), X)

    def __call__(self, x):
        n = self.source.dim(x)
        return (self.X.act(tuple(range(n + 1)), x), self.X.act(tuple(range(n + 1, 2 * n + 2)), x))
