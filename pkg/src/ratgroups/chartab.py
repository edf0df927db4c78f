"""Irreducible character tables by two independent routes.

The general route follows the classical eigenvalue method on class
multiplication matrices over a prime field F_q with q = 1 mod exp(G) and
q > 2 sqrt(|G|), lifting values to exact cyclotomics through discrete
Fourier sums over the power map. The second route constructs the table of a
Frobenius semidirect product with elementary abelian kernel directly from
the complement's table (inflation) and kernel character orbits (induction).

Both routes share the deterministic class ordering of the group layer and
sort rows by (degree, value encoding), so agreement can be tested as literal
matrix equality.
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .arith import canon_residue, euler_phi, factorize, is_prime, units_mod
from .config import DEFAULT_DIXON_CAP
from .cyclo import Cyclotomic, UnitClassSet, field_degree, parse_e, render_e
from .groups import ConjugacyData, GroupHandle, SemidirectOps
from .modules import (
    FpModule,
    is_frobenius_semidirect,
    mat_transpose,
    mat_vec,
)


class CapExceeded(RuntimeError):
    pass


class TableError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# table type


@dataclass(frozen=True)
class CharacterTable:
    group: GroupHandle
    conj: ConjugacyData
    conductor: int
    degrees: tuple[int, ...]
    rows: tuple[tuple[Cyclotomic, ...], ...]

    def num_classes(self) -> int:
        return len(self.conj.reps)

    def row_stabilizer(self, i: int) -> UnitClassSet:
        """Galois stabilizer of row i inside U(Z/conductor), via the power map
        identity sigma_j(chi(g)) = chi(g^j); no field arithmetic needed."""
        row = self.rows[i]
        pm = self.conj.power_map
        orders = self.conj.orders
        good = []
        for j in units_mod(self.conductor):
            if all(
                row[pm[c][j % orders[c]]] == row[c] for c in range(len(row))
            ):
                good.append(j)
        return UnitClassSet.subgroup_from_members(self.conductor, good)

    def field_degree(self, i: int) -> int:
        return euler_phi(self.conductor) // len(self.row_stabilizer(i))

    def field_tag(self, i: int) -> str:
        stab = self.row_stabilizer(i)
        deg = euler_phi(self.conductor) // len(stab)
        if deg == 1:
            return "rational"
        if deg > 2:
            return "higher-degree"
        conj_res = canon_residue(self.conductor - 1 if self.conductor > 1 else 1,
                                 self.conductor)
        return "real-quadratic" if conj_res in stab.members else "imaginary-quadratic"


def field_of_values(table: CharacterTable, i: int) -> tuple[str, int]:
    """Classification and degree over Q of the field of values of row i."""
    return table.field_tag(i), table.field_degree(i)


def _row_sort_key(deg: int, row) -> tuple:
    # principal row pinned first, then degree, then value encodings
    principal = all(v.is_rational() and v.coeffs[0] == 1 for v in row)
    return (0 if principal else 1, deg, tuple(v.encoding() for v in row))


def is_quadratic_table(t: CharacterTable) -> bool:
    return all(t.field_degree(i) <= 2 for i in range(len(t.rows)))


def is_rational_table(t: CharacterTable) -> bool:
    return all(t.field_degree(i) == 1 for i in range(len(t.rows)))


def is_cut_table(t: CharacterTable) -> bool:
    return all(t.field_tag(i) in ("rational", "imaginary-quadratic") for i in range(len(t.rows)))


# ---------------------------------------------------------------------------
# linear algebra over F_q (q prime)


def _rref(rows: list[list[int]], q: int) -> tuple[list[list[int]], list[int]]:
    rows = [r[:] for r in rows]
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % q), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], q - 2, q)
        rows[r] = [x * inv % q for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % q for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _nullspace(mat: list[list[int]], q: int) -> list[tuple[int, ...]]:
    n = len(mat)
    rref, pivots = _rref(mat, q)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for row, pc in zip(rref, pivots):
            v[pc] = (-row[fc]) % q
        basis.append(tuple(v))
    return basis


def _solve_coords(basis: list, y, q: int) -> list[int]:
    """Coefficients x with sum x_r basis[r] = y (basis independent)."""
    k = len(y)
    m = len(basis)
    aug = [[basis[r][i] for r in range(m)] + [y[i]] for i in range(k)]
    rref, pivots = _rref(aug, q)
    out = [0] * m
    for row, pc in zip(rref, pivots):
        if pc == m:
            raise TableError("vector not in subspace")
        out[pc] = row[m]
    return out


def _poly_divmod(a: list[int], b: list[int], q: int):
    a = a[:]
    while b and b[-1] == 0:
        b = b[:-1]
    inv_lead = pow(b[-1], q - 2, q)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    for k in range(len(quot) - 1, -1, -1):
        if k + len(b) - 1 >= len(a):
            continue
        c = a[k + len(b) - 1] * inv_lead % q
        quot[k] = c
        for i, d in enumerate(b):
            a[k + i] = (a[k + i] - c * d) % q
    while a and a[-1] == 0:
        a.pop()
    return quot, a


def _poly_gcd(a, b, q):
    a, b = a[:], b[:]
    while b:
        _, r = _poly_divmod(a, b, q)
        a, b = b, r
    if a:
        inv = pow(a[-1], q - 2, q)
        a = [x * inv % q for x in a]
    return a


def _poly_lcm(a, b, q):
    if not a:
        return b
    if not b:
        return a
    g = _poly_gcd(a, b, q)
    quot, rem = _poly_divmod(_poly_mul(a, b, q), g, q)
    assert not rem
    return quot


def _poly_mul(a, b, q):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % q
    return out


def _min_poly(A: list[list[int]], q: int) -> list[int]:
    """Minimal polynomial of a (diagonalizable) matrix over F_q, low to high."""
    m = len(A)
    f: list[int] = [1]
    for seed in range(m):
        v = tuple(1 if i == seed else 0 for i in range(m))
        chain = [v]
        span: list[tuple[list[int], list[int]]] = []  # (reduced vec, combo)
        combo0 = [0] * (m + 1)
        combo0[0] = 1
        cur, curc = list(v), combo0
        t = 0
        while True:
            red, redc = cur[:], curc[:]
            for vec, cb in span:
                piv = next(i for i, x in enumerate(vec) if x)
                if red[piv]:
                    fpiv = red[piv]
                    red = [(x - fpiv * y) % q for x, y in zip(red, vec)]
                    redc = [(x - fpiv * y) % q for x, y in zip(redc, cb)]
            piv = next((i for i, x in enumerate(red) if x), None)
            if piv is None:
                g = redc
                while g and g[-1] == 0:
                    g.pop()
                inv = pow(g[-1], q - 2, q)
                g = [x * inv % q for x in g]
                f = _poly_lcm(f, g, q)
                break
            inv = pow(red[piv], q - 2, q)
            red = [x * inv % q for x in red]
            redc = [x * inv % q for x in redc]
            span.append((red, redc))
            t += 1
            nxt = [sum(A[i][k] * cur[k] for k in range(m)) % q for i in range(m)]
            cur = nxt
            curc = [0] * (m + 1)
            curc[t] = 1
            chain.append(tuple(nxt))
        if len(f) - 1 == m:
            break
    return f


def _poly_roots(f: list[int], q: int) -> list[int]:
    return [x for x in range(q) if _horner(f, x, q) == 0]


def _horner(f, x, q):
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % q
    return acc


# ---------------------------------------------------------------------------
# the eigenvalue route


def _admissible_primes(exponent: int, order: int):
    q = exponent + 1
    while True:
        if q * q > 4 * order and is_prime(q):
            yield q
        q += exponent if exponent > 1 else 1


def _element_of_order(e: int, q: int) -> int:
    target_factors = [p for p, _ in factorize(e)] if e > 1 else []
    for z in range(2, q):
        if pow(z, e, q) != 1:
            continue
        if all(pow(z, e // p, q) != 1 for p in target_factors):
            return z
    if e == 1:
        return 1
    raise TableError(f"no element of order {e} in F_{q}")


def dixon_table(G: GroupHandle, dixon_cap: int = DEFAULT_DIXON_CAP,
                cache_dir: str | None = None) -> CharacterTable:
    """Character table by simultaneous eigenvector splitting over F_q."""
    order = G.order()
    if order > dixon_cap:
        raise CapExceeded(
            f"order {order} exceeds the eigenvalue-method cap {dixon_cap}"
        )
    conj = G.conjugacy()
    if cache_dir:
        cached = _cache_load(G, conj, cache_dir)
        if cached is not None:
            return cached
    if order == 1:
        table = CharacterTable(G, conj, 1, (1,), ((Cyclotomic.rational(1),),))
        return table
    e = G.exponent()
    tried = []
    table = None
    for q in _admissible_primes(e, order):
        tried.append(q)
        try:
            table = _dixon_with_prime(G, conj, e, q)
            break
        except TableError:
            if len(tried) >= 8:
                raise TableError(
                    f"eigenvalue splitting failed for primes {tried}"
                ) from None
    if cache_dir:
        _cache_store(G, conj, table, cache_dir)
    return table


def _dixon_with_prime(G: GroupHandle, conj: ConjugacyData, e: int, q: int) -> CharacterTable:
    order = G.order()
    k = conj.num_classes()
    members: list[list] = [[] for _ in range(k)]
    for x in G.elements():
        members[conj.class_of(x)].append(x)
    reps = conj.reps
    sizes = conj.sizes

    mats: dict[int, list[list[int]]] = {}

    def class_matrix(j: int) -> list[list[int]]:
        if j not in mats:
            M = [[0] * k for _ in range(k)]
            for l in range(k):
                z = reps[l]
                for u in members[j]:
                    row = conj.class_of(G.mul(G.inv(u), z))
                    M[row][l] += 1
            mats[j] = M
        return mats[j]

    spaces: list[list[tuple[int, ...]]] = [
        [tuple(1 if i == r else 0 for i in range(k)) for r in range(k)]
    ]
    for j in range(1, k):
        if all(len(W) == 1 for W in spaces):
            break
        M = class_matrix(j)
        new_spaces: list[list[tuple[int, ...]]] = []
        for W in spaces:
            if len(W) == 1:
                new_spaces.append(W)
                continue
            m = len(W)
            cols = [
                _solve_coords(W, tuple(
                    sum(M[i][t] * b[t] for t in range(k)) % q for i in range(k)
                ), q)
                for b in W
            ]
            A = [[cols[c][r] for c in range(m)] for r in range(m)]
            minp = _min_poly(A, q)
            for lam in sorted(_poly_roots(minp, q)):
                shifted = [[(A[i][j2] - (lam if i == j2 else 0)) % q for j2 in range(m)]
                           for i in range(m)]
                sub = []
                for nv in _nullspace(shifted, q):
                    vec = [0] * k
                    for r2, ccoef in enumerate(nv):
                        if ccoef:
                            for i in range(k):
                                vec[i] = (vec[i] + ccoef * W[r2][i]) % q
                    sub.append(tuple(vec))
                if sub:
                    new_spaces.append(sub)
        spaces = new_spaces
    if any(len(W) != 1 for W in spaces):
        raise TableError("eigenspaces did not split to dimension one")

    inv_class = [conj.power_map[c][(conj.orders[c] - 1) % conj.orders[c]] for c in range(k)]
    inv_sizes = [pow(s, q - 2, q) for s in sizes]
    omegas = []
    for W in spaces:
        v = W[0]
        if v[0] == 0:
            raise TableError("eigenvector vanishes on the identity class")
        inv0 = pow(v[0], q - 2, q)
        omegas.append(tuple(x * inv0 % q for x in v))

    z = _element_of_order(e, q)
    chars = []
    for w in omegas:
        s = sum(w[j] * w[inv_class[j]] % q * inv_sizes[j] for j in range(k)) % q
        if s == 0:
            raise TableError("degenerate norm sum")
        rhs = order * pow(s, q - 2, q) % q
        deg = next((d for d in range(1, isqrt(order) + 1) if d * d % q == rhs), None)
        if deg is None:
            raise TableError("no admissible degree")
        vals_q = [deg * w[j] % q * inv_sizes[j] % q for j in range(k)]
        row = []
        for j in range(k):
            m = conj.orders[j]
            zm_inv = pow(z, (e // m) * (q - 2), q) if m > 1 else 1
            minv = pow(m, q - 2, q)
            terms: dict[int, int] = {}
            total = 0
            for kk in range(m):
                acc = 0
                zpow = 1
                base = pow(zm_inv, kk, q)
                for t in range(m):
                    acc = (acc + vals_q[conj.power_map[j][t]] * zpow) % q
                    zpow = zpow * base % q
                c = acc * minv % q
                if c >= q // 2 + 1:
                    raise TableError("negative multiplicity in value lift")
                if c:
                    terms[(e // m) * kk] = c
                    total += c
            if total != deg:
                raise TableError("value lift does not sum to the degree")
            row.append(Cyclotomic.from_terms(e, terms))
        chars.append((deg, tuple(row)))
    if sum(d * d for d, _ in chars) != order:
        raise TableError("degree squares do not sum to the order")
    chars.sort(key=lambda t: _row_sort_key(t[0], t[1]))
    degrees = tuple(d for d, _ in chars)
    rows = tuple(r for _, r in chars)
    return CharacterTable(G, conj, e, degrees, rows)


# ---------------------------------------------------------------------------
# the Frobenius route


def frobenius_table(M: FpModule, H_table: CharacterTable | None = None,
                    G: GroupHandle | None = None,
                    dixon_cap: int = DEFAULT_DIXON_CAP) -> CharacterTable:
    """Table of K x| H for Frobenius action on elementary abelian K.

    Rows are inflations of the complement table plus one induced character
    per complement orbit of nonprincipal kernel characters.
    """
    from .modules import build_semidirect

    if not is_frobenius_semidirect(M):
        raise TableError("module action is not fixed point free")
    H = M.group
    if H_table is None:
        H_table = dixon_table(H, dixon_cap=dixon_cap)
    if G is None:
        G = build_semidirect(M)
    if not isinstance(G.ops, SemidirectOps) or G.ops.module is not M:
        raise TableError("group handle does not carry this module")
    conj = G.conjugacy()
    e = G.exponent()
    p, d = M.p, M.d
    k = conj.num_classes()

    h_elems = H.elements()
    h_conj = H.conjugacy()
    id_idx = G.ops.comp_index[H.identity]

    # inflations
    rows: list[tuple[int, tuple[Cyclotomic, ...]]] = []
    eh = H_table.conductor
    for i, hrow in enumerate(H_table.rows):
        vals = []
        for c in range(k):
            _, h_idx = conj.reps[c]
            hcls = h_conj.class_of(h_elems[h_idx])
            vals.append(hrow[hcls].embed(e))
        rows.append((H_table.degrees[i], tuple(vals)))

    # induced characters from kernel duals, one per H-orbit
    tmats = {idx: mat_transpose(m) for idx, m in enumerate(G.ops.mats)}
    from .groups import _all_vectors

    zero = tuple(0 for _ in range(d))
    seen: set = set()
    orbit_reps = []
    for w in _all_vectors(p, d):
        if w == zero or w in seen:
            continue
        orbit = {w}
        frontier = [w]
        while frontier:
            u = frontier.pop()
            for idx in range(len(h_elems)):
                u2 = mat_vec(tmats[idx], u, p)
                if u2 not in orbit:
                    orbit.add(u2)
                    frontier.append(u2)
        if len(orbit) != len(h_elems):
            raise TableError("dual orbit is not regular; action not fixed point free")
        seen |= orbit
        orbit_reps.append(w)

    all_mats = list(G.ops.mats)
    for w in orbit_reps:
        vals = []
        for c in range(k):
            v, h_idx = conj.reps[c]
            if h_idx != id_idx:
                vals.append(Cyclotomic.zero(e))
                continue
            counts: dict[int, int] = {}
            for m in all_mats:
                av = mat_vec(m, v, p)
                ex = sum(w[i] * av[i] for i in range(d)) % p
                key = (e // p) * ex
                counts[key] = counts.get(key, 0) + 1
            vals.append(Cyclotomic.from_terms(e, counts))
        rows.append((len(h_elems), tuple(vals)))

    if len(rows) != k:
        raise TableError("row count does not match class count")
    if sum(dd * dd for dd, _ in rows) != G.order():
        raise TableError("degree squares do not sum to the order")
    rows.sort(key=lambda t: _row_sort_key(t[0], t[1]))
    return CharacterTable(G, conj, e, tuple(dd for dd, _ in rows),
                          tuple(r for _, r in rows))


# ---------------------------------------------------------------------------
# routing


def character_table_for(G: GroupHandle, dixon_cap: int = DEFAULT_DIXON_CAP,
                        cache_dir: str | None = None) -> CharacterTable:
    """Pick a route: direct construction for Frobenius semidirect products
    with elementary abelian kernel, the eigenvalue method otherwise."""
    ops = G.ops
    if isinstance(ops, SemidirectOps) and ops.module is not None:
        M = ops.module
        if is_frobenius_semidirect(M):
            return frobenius_table(M, G=G, dixon_cap=dixon_cap)
    if G.order() <= dixon_cap:
        return dixon_table(G, dixon_cap=dixon_cap, cache_dir=cache_dir)
    raise CapExceeded(
        f"no table route: order {G.order()} exceeds cap {dixon_cap} and the "
        "group is not a Frobenius semidirect product with elementary abelian kernel"
    )


def is_quadratic_rational(G: GroupHandle, dixon_cap: int = DEFAULT_DIXON_CAP) -> bool:
    return is_quadratic_table(character_table_for(G, dixon_cap=dixon_cap))


def is_rational_group(G: GroupHandle, dixon_cap: int = DEFAULT_DIXON_CAP) -> bool:
    return is_rational_table(character_table_for(G, dixon_cap=dixon_cap))


def is_cut_group(G: GroupHandle, dixon_cap: int = DEFAULT_DIXON_CAP) -> bool:
    return is_cut_table(character_table_for(G, dixon_cap=dixon_cap))


# ---------------------------------------------------------------------------
# inertia machinery for kernel characters


@dataclass(frozen=True)
class InertiaPair:
    inertia: GroupHandle
    semi_inertia: GroupHandle
    image: UnitClassSet  # Galois twists realized by the stabilizing coset


def semi_inertia(G: GroupHandle, w: tuple) -> InertiaPair:
    """Inertia and semi-inertia subgroups of the kernel character indexed by
    the dual vector w, for G = K x| H with K elementary abelian."""
    ops = G.ops
    if not isinstance(ops, SemidirectOps) or ops.module is None:
        raise TableError("semi-inertia requires a semidirect product handle")
    M: FpModule = ops.module
    p, d = M.p, M.d
    w = tuple(x % p for x in w)
    elems = G.elements()
    if all(x == 0 for x in w):
        full = G.subgroup(elems, name="inertia")
        return InertiaPair(full, full, UnitClassSet.subgroup_from_members(p, [1]))
    h_count = len(ops.comp_index)
    stab_idx = []
    proj = {}
    lead = next(i for i, x in enumerate(w) if x)
    lead_inv = pow(w[lead], p - 2, p)
    for idx in range(h_count):
        tw = mat_vec(mat_transpose(ops.mats[idx]), w, p)
        a = tw[lead] * lead_inv % p
        if a and all(tw[i] == a * w[i] % p for i in range(d)):
            proj[idx] = a
            if a == 1:
                stab_idx.append(idx)
    kernel_vectors = [v for v, h in elems if h == ops.identity()[1]]
    inertia_elems = [(v, h) for v in kernel_vectors for h in stab_idx]
    semi_elems = [(v, h) for v in kernel_vectors for h in proj]
    image = UnitClassSet.subgroup_from_members(p, set(proj.values()))
    pair = InertiaPair(
        G.subgroup(inertia_elems, name="inertia"),
        G.subgroup(semi_elems, name="semi-inertia"),
        image,
    )
    # cross-check the quotient size against the induced character's field
    vals = _induced_dual_values(G, M, w)
    deg, _ = field_degree(vals, p)
    lhs = pair.semi_inertia.order() // pair.inertia.order()
    if lhs != (p - 1) // deg:
        raise TableError("semi-inertia quotient disagrees with the induced field")
    return pair


def _induced_dual_values(G: GroupHandle, M: FpModule, w: tuple) -> list[Cyclotomic]:
    p, d = M.p, M.d
    vals = []
    conj = G.conjugacy()
    id_idx = G.ops.comp_index[M.group.identity]
    for c in range(conj.num_classes()):
        v, h_idx = conj.reps[c]
        if h_idx != id_idx:
            vals.append(Cyclotomic.zero(p))
            continue
        counts: dict[int, int] = {}
        for m in G.ops.mats:
            av = mat_vec(m, v, p)
            ex = sum(w[i] * av[i] for i in range(d)) % p
            counts[ex] = counts.get(ex, 0) + 1
        vals.append(Cyclotomic.from_terms(p, counts))
    return vals


def quadratic_rational_in(K: GroupHandle | None, G: GroupHandle,
                          dixon_cap: int = DEFAULT_DIXON_CAP) -> bool:
    """Whether every character of the normal subgroup K induces to G with a
    field of values of degree at most 2.

    K = None selects the kernel of a semidirect product handle. Otherwise K
    must be cyclic (kernel characters are then explicit powers)."""
    ops = G.ops
    if K is None or (isinstance(ops, SemidirectOps) and ops.module is not None
                     and _is_kernel_handle(K, G)):
        M: FpModule = ops.module
        if M is None:
            raise TableError("no module attached to this handle")
        e = G.exponent()
        p = M.p
        from .groups import _all_vectors

        zero = tuple(0 for _ in range(M.d))
        for w in _all_vectors(p, M.d):
            if w == zero:
                continue
            vals = _induced_dual_values(G, M, w)
            deg, _ = field_degree(vals, p)
            if deg > 2:
                return False
        return True
    return _quadratic_rational_in_cyclic(K, G)


def _is_kernel_handle(K: GroupHandle, G: GroupHandle) -> bool:
    ops = G.ops
    id_idx = ops.identity()[1]
    elems = K.elements()
    return (K.ops is G.ops and len(elems) == ops.p ** ops.d
            and all(h == id_idx for _, h in elems))


def _quadratic_rational_in_cyclic(K: GroupHandle, G: GroupHandle) -> bool:
    m = K.order()
    gen = next((x for x in K.elements() if K.element_order(x) == m), None)
    if gen is None:
        raise TableError("kernel characters implemented for cyclic or "
                         "elementary abelian normal subgroups only")
    logs = {}
    x = G.identity
    for t in range(m):
        logs[x] = t
        x = G.mul(x, gen)
    conj = G.conjugacy()
    gsize = G.order()
    for kk in range(1, m):
        vals = []
        for c in range(conj.num_classes()):
            g = conj.reps[c]
            counts: dict[int, int] = {}
            for s in G.elements():
                y = G.mul(s, G.mul(g, G.inv(s)))
                if y in logs:
                    ex = logs[y] * kk % m
                    counts[ex] = counts.get(ex, 0) + 1
            total = Cyclotomic.from_terms(m, {k2: Fraction(v, m) for k2, v in counts.items()})
            vals.append(total)
        deg, _ = field_degree(vals, m)
        if deg > 2:
            return False
    return True


# ---------------------------------------------------------------------------
# exact orthogonality helpers (used by the test suites)


def row_inner(t: CharacterTable, i: int, j: int) -> Cyclotomic:
    acc = Cyclotomic.zero(t.conductor)
    pm = t.conj.power_map
    orders = t.conj.orders
    for c in range(t.num_classes()):
        inv_c = pm[c][(orders[c] - 1) % orders[c]]
        acc = acc + t.rows[i][c] * t.rows[j][inv_c] * t.conj.sizes[c]
    return acc * Fraction(1, t.group.order())


def column_norm(t: CharacterTable, c: int) -> Cyclotomic:
    acc = Cyclotomic.zero(t.conductor)
    pm = t.conj.power_map
    orders = t.conj.orders
    inv_c = pm[c][(orders[c] - 1) % orders[c]]
    for i in range(len(t.rows)):
        acc = acc + t.rows[i][c] * t.rows[i][inv_c]
    return acc


# ---------------------------------------------------------------------------
# advisory cache


_CACHE_VERSION = "ratgroups-table v1"


def group_fingerprint(G: GroupHandle, conj: ConjugacyData) -> str:
    """Order, exponent, class sizes and a hash equivalent to the full
    multiplication table: for concrete element representations the sorted
    element encodings determine every product."""
    h = hashlib.sha256()
    ops = G.ops
    h.update(ops.kind.encode())
    if hasattr(ops, "p"):
        h.update(str(ops.p).encode())
    for e in sorted(G.elements()):
        h.update(repr(e).encode())
    sizes = ",".join(str(s) for s in conj.sizes)
    head = f"{G.order()}|{G.exponent()}|{sizes}|"
    return head + h.hexdigest()[:24]


def _cache_path(cache_dir: str, fp: str) -> str:
    safe = fp.replace("|", "_").replace(",", "-")
    return os.path.join(cache_dir, f"table_{hashlib.sha1(safe.encode()).hexdigest()}.txt")


def _cache_store(G: GroupHandle, conj: ConjugacyData, t: CharacterTable, cache_dir: str):
    os.makedirs(cache_dir, exist_ok=True)
    fp = group_fingerprint(G, conj)
    lines = [_CACHE_VERSION, f"fingerprint {fp}", f"conductor {t.conductor}",
             "degrees " + " ".join(str(d) for d in t.degrees)]
    for row in t.rows:
        lines.append("row " + " ".join(render_e(v) for v in row))
    with open(_cache_path(cache_dir, fp), "w") as fh:
        fh.write("\n".join(lines) + "\n")


def _cache_load(G: GroupHandle, conj: ConjugacyData, cache_dir: str) -> CharacterTable | None:
    fp = group_fingerprint(G, conj)
    path = _cache_path(cache_dir, fp)
    if not os.path.exists(path):
        return None
    try:
        with open(path) as fh:
            lines = [ln.rstrip("\n") for ln in fh]
        if lines[0] != _CACHE_VERSION or lines[1] != f"fingerprint {fp}":
            return None
        conductor = int(lines[2].split()[1])
        degrees = tuple(int(x) for x in lines[3].split()[1:])
        rows = []
        for ln in lines[4:]:
            if not ln.strip():
                continue
            body = ln.split(" ", 1)[1]
            rows.append(tuple(parse_e(tok, conductor) for tok in body.split()))
        t = CharacterTable(G, conj, conductor, degrees, tuple(rows))
        if len(rows) != conj.num_classes() or sum(d * d for d in degrees) != G.order():
            return None
        return t
    except Exception:
        return None  # advisory: any damage means recompute
