"""Concrete finite groups: element arithmetic, enumeration, conjugacy data.

Three element representations are supported, all hashable tuples:

* permutations      -- tuple of 0-based point images (degree fixed per group);
* matrices          -- tuple of row tuples with entries mod a prime p;
* semidirect pairs  -- (vector over F_p, complement element index) realizing
                       K x| H with the complement acting by matrices on the
                       left: (v, h)(w, k) = (v + A_h w, hk).

A GroupHandle is immutable after construction; element lists and conjugacy
data are computed once and shared, so concurrent readers are safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from .arith import factorize, prime_divisors, units_mod
from .config import DEFAULT_CAP
from .cyclo import UnitClassSet


class EnumerationCapError(RuntimeError):
    def __init__(self, cap: int, detail: str = ""):
        self.cap = cap
        msg = f"group too large to enumerate (cap {cap} elements)"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


# ---------------------------------------------------------------------------
# element arithmetic backends


class PermOps:
    kind = "perm"

    def __init__(self, degree: int):
        self.degree = degree
        self._identity = tuple(range(degree))

    def identity(self):
        return self._identity

    def mul(self, a, b):
        # (a*b)(i) = a(b(i))
        return tuple(a[x] for x in b)

    def inv(self, a):
        out = [0] * self.degree
        for i, x in enumerate(a):
            out[x] = i
        return tuple(out)


class MatOps:
    kind = "matrix"

    def __init__(self, p: int, d: int):
        self.p = p
        self.d = d
        self._identity = tuple(
            tuple(1 if i == j else 0 for j in range(d)) for i in range(d)
        )

    def identity(self):
        return self._identity

    def mul(self, a, b):
        p, d = self.p, self.d
        return tuple(
            tuple(sum(a[i][k] * b[k][j] for k in range(d)) % p for j in range(d))
            for i in range(d)
        )

    def inv(self, a):
        # Gauss-Jordan mod p; matrices here are always invertible
        p, d = self.p, self.d
        aug = [list(row) + [1 if i == j else 0 for j in range(d)] for i, row in enumerate(a)]
        for col in range(d):
            piv = next(r for r in range(col, d) if aug[r][col] % p)
            aug[col], aug[piv] = aug[piv], aug[col]
            inv_p = pow(aug[col][col], p - 2, p)
            aug[col] = [x * inv_p % p for x in aug[col]]
            for r in range(d):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [(x - f * y) % p for x, y in zip(aug[r], aug[col])]
        return tuple(tuple(row[d:]) for row in aug)


class SemidirectOps:
    """Arithmetic of K x| H for K = F_p^d and a fully enumerated complement H.

    mats[i] is the action matrix of the i-th complement element (in the
    complement's enumeration order); the module object that produced the
    action is kept for routing decisions elsewhere.
    """

    kind = "semidirect"

    def __init__(self, p: int, d: int, complement: "GroupHandle", mats, module=None):
        self.p = p
        self.d = d
        self.complement = complement
        self.mats = list(mats)
        self.module = module
        elems = complement.elements()
        self.comp_index = {e: i for i, e in enumerate(elems)}
        n = len(elems)
        self.mul_table = [
            [self.comp_index[complement.ops.mul(elems[i], elems[j])] for j in range(n)]
            for i in range(n)
        ]
        self.inv_table = [self.comp_index[complement.ops.inv(e)] for e in elems]
        zero = tuple(0 for _ in range(d))
        self._identity = (zero, self.comp_index[complement.identity])

    def identity(self):
        return self._identity

    def _matvec(self, m, v):
        p, d = self.p, self.d
        return tuple(sum(m[i][k] * v[k] for k in range(d)) % p for i in range(d))

    def mul(self, a, b):
        (v, h), (w, k) = a, b
        p = self.p
        mv = self._matvec(self.mats[h], w)
        return (tuple((x + y) % p for x, y in zip(v, mv)), self.mul_table[h][k])

    def inv(self, a):
        v, h = a
        hi = self.inv_table[h]
        w = self._matvec(self.mats[hi], v)
        return (tuple(-x % self.p for x in w), hi)


# ---------------------------------------------------------------------------
# conjugacy data


@dataclass(frozen=True)
class ConjugacyData:
    """Classes sorted by (element order, class size, minimal representative)."""

    reps: tuple
    sizes: tuple[int, ...]
    orders: tuple[int, ...]
    class_index: dict  # element -> class position
    power_map: tuple[tuple[int, ...], ...]  # power_map[c][j] = class of rep^j

    def class_of(self, x) -> int:
        return self.class_index[x]

    def num_classes(self) -> int:
        return len(self.reps)


class GroupHandle:
    """A finite group held by generators with concrete element arithmetic."""

    def __init__(self, ops, generators, cap: int = DEFAULT_CAP, name: str | None = None,
                 _elements=None):
        self.ops = ops
        self.generators = tuple(generators)
        self.cap = cap
        self.name = name
        self._elements = list(_elements) if _elements is not None else None
        self._conjugacy = None
        self._index = None

    # -- basic structure ---------------------------------------------------

    @property
    def identity(self):
        return self.ops.identity()

    def mul(self, a, b):
        return self.ops.mul(a, b)

    def inv(self, a):
        return self.ops.inv(a)

    def elements(self) -> list:
        if self._elements is None:
            self._elements = self._enumerate()
        return self._elements

    def _enumerate(self) -> list:
        if isinstance(self.ops, SemidirectOps):
            total = self.ops.p ** self.ops.d * len(self.ops.comp_index)
            if total > self.cap:
                raise EnumerationCapError(self.cap, f"order would be {total}")
            return [
                (v, h)
                for h in range(len(self.ops.comp_index))
                for v in _all_vectors(self.ops.p, self.ops.d)
            ]
        seen = {self.identity}
        order_list = [self.identity]
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = self.ops.mul(x, g)
                    if y not in seen:
                        if len(seen) >= self.cap:
                            raise EnumerationCapError(self.cap)
                        seen.add(y)
                        order_list.append(y)
                        nxt.append(y)
            frontier = nxt
        return order_list

    def index(self) -> dict:
        if self._index is None:
            self._index = {e: i for i, e in enumerate(self.elements())}
        return self._index

    def order(self) -> int:
        return len(self.elements())

    def __contains__(self, x) -> bool:
        return x in self.index()

    def element_order(self, g) -> int:
        k, x = 1, g
        e = self.identity
        while x != e:
            x = self.ops.mul(x, g)
            k += 1
        return k

    def exponent(self) -> int:
        conj = self.conjugacy()
        out = 1
        for o in conj.orders:
            out = lcm(out, o)
        return out

    def is_abelian(self) -> bool:
        gs = self.generators
        return all(
            self.ops.mul(a, b) == self.ops.mul(b, a) for a in gs for b in gs
        )

    def subgroup(self, elements, name: str | None = None) -> "GroupHandle":
        elems = sorted(set(elements))
        return GroupHandle(self.ops, tuple(elems), cap=self.cap, name=name,
                           _elements=elems)

    # -- conjugacy ----------------------------------------------------------

    def conjugacy(self) -> ConjugacyData:
        if self._conjugacy is None:
            self._conjugacy = self._compute_conjugacy()
        return self._conjugacy

    def _compute_conjugacy(self) -> ConjugacyData:
        elems = self.elements()
        gens = [g for g in self.generators if g != self.identity]
        if not gens:
            gens = [self.identity]
        inv_gens = [self.ops.inv(g) for g in gens]
        assigned: dict = {}
        classes = []  # (order, size, min_rep)
        for x in elems:
            if x in assigned:
                continue
            cid = len(classes)
            orbit = [x]
            assigned[x] = cid
            best = x
            i = 0
            while i < len(orbit):
                y = orbit[i]
                i += 1
                for g, gi in zip(gens, inv_gens):
                    z = self.ops.mul(g, self.ops.mul(y, gi))
                    if z not in assigned:
                        assigned[z] = cid
                        orbit.append(z)
                        if z < best:
                            best = z
            classes.append((self.element_order(x), len(orbit), best))
        # deterministic class order
        perm = sorted(range(len(classes)), key=lambda c: classes[c])
        relabel = {old: new for new, old in enumerate(perm)}
        reps = tuple(classes[old][2] for old in perm)
        sizes = tuple(classes[old][1] for old in perm)
        orders = tuple(classes[old][0] for old in perm)
        class_index = {e: relabel[c] for e, c in assigned.items()}
        pm = []
        for rep, m in zip(reps, orders):
            row = []
            x = self.identity
            for _ in range(m):
                row.append(class_index[x])
                x = self.ops.mul(x, rep)
            pm.append(tuple(row))
        return ConjugacyData(reps, sizes, orders, class_index, tuple(pm))


def _all_vectors(p: int, d: int):
    if d == 0:
        yield ()
        return
    for v in _all_vectors(p, d - 1):
        for x in range(p):
            yield v + (x,)


# ---------------------------------------------------------------------------
# handle constructors


def perm_group(generators, cap: int = DEFAULT_CAP, name: str | None = None) -> GroupHandle:
    """Group generated by 0-based image tuples of a common degree."""
    gens = [tuple(g) for g in generators]
    degree = len(gens[0])
    for g in gens:
        if sorted(g) != list(range(degree)):
            raise ValueError(f"not a permutation of degree {degree}: {g}")
    return GroupHandle(PermOps(degree), gens, cap=cap, name=name)


def cyclic_group(n: int, name: str | None = None) -> GroupHandle:
    gen = tuple((i + 1) % n for i in range(n))
    return perm_group([gen], name=name or f"C{n}")


def matrix_group(p: int, generators, cap: int = DEFAULT_CAP, name: str | None = None) -> GroupHandle:
    gens = [tuple(tuple(x % p for x in row) for row in g) for g in generators]
    d = len(gens[0])
    return GroupHandle(MatOps(p, d), gens, cap=cap, name=name)


# ---------------------------------------------------------------------------
# structural subgroup computations (enumeration based; all cap-guarded)


def centralizer(G: GroupHandle, x) -> GroupHandle:
    got = [g for g in G.elements() if G.mul(g, x) == G.mul(x, g)]
    return G.subgroup(got, name="centralizer")


def center(G: GroupHandle) -> GroupHandle:
    gens = G.generators
    got = [g for g in G.elements() if all(G.mul(g, h) == G.mul(h, g) for h in gens)]
    return G.subgroup(got, name="center")


def closure(G: GroupHandle, seeds, conjugating=()) -> list:
    """Subgroup closure of the seeds, optionally also under conjugation."""
    conj_pairs = [(g, G.inv(g)) for g in conjugating]
    got = {G.identity}
    frontier = list({s for s in seeds})
    got.update(frontier)
    while frontier:
        x = frontier.pop()
        new = []
        for y in list(got):
            new.append(G.mul(x, y))
            new.append(G.mul(y, x))
        for g, gi in conj_pairs:
            new.append(G.mul(g, G.mul(x, gi)))
        for z in new:
            if z not in got:
                got.add(z)
                frontier.append(z)
    return sorted(got)


def derived_subgroup(G: GroupHandle) -> GroupHandle:
    elems = G.elements()
    comms = set()
    for a in G.generators:
        ai = G.inv(a)
        for b in G.generators:
            comms.add(G.mul(G.inv(b), G.mul(ai, G.mul(b, a))))
    sub = closure(G, comms, conjugating=G.generators)
    return G.subgroup(sub, name="derived")


def sylow(G: GroupHandle, p: int) -> GroupHandle:
    """A Sylow p-subgroup by greedy closure over p-elements."""
    n = G.order()
    target = 1
    while n % p == 0:
        target *= p
        n //= p
    if target == 1:
        return G.subgroup([G.identity], name=f"sylow{p}")
    p_elems = [g for g in G.elements() if _is_p_element(G, g, p)]
    current = {G.identity}
    while len(current) < target:
        # any proper p-subgroup extends inside a Sylow, so greedy always succeeds
        for y in p_elems:
            if y in current:
                continue
            cand = closure(G, set(current) | {y})
            if len(cand) <= target and _is_p_power(len(cand), p):
                current = set(cand)
                break
        else:
            raise RuntimeError(f"could not grow a p-subgroup past order {len(current)}")
    return G.subgroup(sorted(current), name=f"sylow{p}")


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def _is_p_element(G: GroupHandle, g, p: int) -> bool:
    return _is_p_power(G.element_order(g), p)


def nilpotency_class(G: GroupHandle) -> int | None:
    """Length of the lower central series, or None if it stabilizes nontrivially."""
    current = G.elements()
    cls = 0
    while len(current) > 1:
        comms = set()
        for x in current:
            xi = G.inv(x)
            for g in G.generators:
                comms.add(G.mul(xi, G.mul(G.inv(g), G.mul(x, g))))
        nxt = closure(G, comms, conjugating=G.generators)
        if len(nxt) == len(current):
            return None
        current = nxt
        cls += 1
        if cls > 64:
            return None
    return cls


def power_residues(G: GroupHandle, x) -> UnitClassSet:
    """Residues j with x^j conjugate to x, as a subgroup of U(Z/|x|Z).

    This is the image of N_G(<x>)/C_G(x) acting on the generators of <x>.
    """
    if x == G.identity:
        return UnitClassSet.full(1)
    conj = G.conjugacy()
    c = conj.class_of(x)
    m = conj.orders[c]
    pm = conj.power_map[c]
    members = [j for j in units_mod(m) if pm[j % m] == c]
    return UnitClassSet.subgroup_from_members(m, members)


@dataclass(frozen=True)
class PrimeGraph:
    vertices: tuple[int, ...]
    edges: frozenset[frozenset]

    def components(self) -> list[set[int]]:
        remaining = set(self.vertices)
        comps = []
        while remaining:
            seed = remaining.pop()
            comp = {seed}
            frontier = [seed]
            while frontier:
                v = frontier.pop()
                for e in self.edges:
                    if v in e:
                        for w in e:
                            if w in remaining:
                                remaining.discard(w)
                                comp.add(w)
                                frontier.append(w)
            comps.append(comp)
        return sorted(comps, key=min)

    def is_connected(self) -> bool:
        return len(self.components()) <= 1


def prime_graph(G: GroupHandle) -> PrimeGraph:
    """Vertices are primes dividing |G|; p,q joined iff some element has order pq."""
    verts = prime_divisors(G.order())
    orders = set(G.conjugacy().orders)
    edges = set()
    for i, p in enumerate(verts):
        for q in verts[i + 1:]:
            if any(o % (p * q) == 0 for o in orders):
                edges.add(frozenset((p, q)))
    return PrimeGraph(verts, frozenset(edges))


def enumerate_group(G: GroupHandle) -> list:
    return G.elements()


def element_order(g, G: GroupHandle) -> int:
    return G.element_order(g)
