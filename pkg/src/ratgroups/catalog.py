"""Canonical constructions of every named group and module in the library.

Complements are realized concretely (permutations, 2x2 matrix groups over
small prime fields, or semidirect products); nothing is left as an abstract
presentation. Matrix generators inside SL_2 of a finite field are located by
deterministic lexicographic searches pinned down by the defining relations,
so rebuilding the catalog always yields identical objects.

Modules of dimension 4 arise by restricting scalars of 2-dimensional
representations over a quadratic extension field, except for the order-48
complement with a normal three-element subgroup and quaternion quotient of
order 16, whose 4-dimensional module is genuinely primitive; that one is cut
out of an induced module by splitting off an invariant subspace.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .groups import (
    GroupHandle,
    cyclic_group,
    matrix_group,
    perm_group,
)
from .modules import (
    FpModule,
    ModuleError,
    build_semidirect,
    is_frobenius_semidirect,
    is_irreducible,
    mat_identity,
    mat_inv,
    mat_mul,
    mat_order,
    mat_vec,
    power_module,
    _Span,
)


class CatalogError(ValueError):
    pass


# ---------------------------------------------------------------------------
# quadratic extension fields F_{p^2} = F_p[t]/(t^2 + a1 t + a0)


@lru_cache(maxsize=None)
def quad_field(p: int) -> tuple[int, int]:
    """Coefficients (a1, a0) of the lexicographically least irreducible monic
    quadratic over F_p."""
    for a1 in range(p):
        for a0 in range(p):
            if all((x * x + a1 * x + a0) % p for x in range(p)):
                return (a1, a0)
    raise CatalogError(f"no irreducible quadratic over F_{p}")


def f2_add(x, y, p):
    return ((x[0] + y[0]) % p, (x[1] + y[1]) % p)


def f2_neg(x, p):
    return ((-x[0]) % p, (-x[1]) % p)


def f2_mul(x, y, p):
    a1, a0 = quad_field(p)
    a, b = x
    c, d = y
    # (a + bt)(c + dt) with t^2 = -a1 t - a0
    hi = b * d % p
    return ((a * c - hi * a0) % p, (a * d + b * c - hi * a1) % p)


def f2_pow(x, k, p):
    out = (1, 0)
    base = x
    while k:
        if k & 1:
            out = f2_mul(out, base, p)
        base = f2_mul(base, base, p)
        k >>= 1
    return out


def f2_inv(x, p):
    return f2_pow(x, p * p - 2, p)


def f2_order(x, p):
    if x == (0, 0):
        raise CatalogError("zero has no multiplicative order")
    k, y = 1, x
    while y != (1, 0):
        y = f2_mul(y, x, p)
        k += 1
    return k


def f2_elements(p):
    for a in range(p):
        for b in range(p):
            yield (a, b)


def f2_element_of_order(p: int, k: int) -> tuple[int, int]:
    for x in f2_elements(p):
        if x != (0, 0) and f2_order(x, p) == k:
            return x
    raise CatalogError(f"no element of order {k} in F_{p}^2")


# 2x2 matrices over F_{p^2}, entries as pairs


def m2q_mul(x, y, p):
    return tuple(
        tuple(
            f2_add(f2_mul(x[i][0], y[0][j], p), f2_mul(x[i][1], y[1][j], p), p)
            for j in range(2)
        )
        for i in range(2)
    )


def m2q_det(x, p):
    return f2_add(f2_mul(x[0][0], x[1][1], p), f2_neg(f2_mul(x[0][1], x[1][0], p), p), p)


def m2q_inv(x, p):
    det = m2q_det(x, p)
    di = f2_inv(det, p)
    return (
        (f2_mul(di, x[1][1], p), f2_mul(di, f2_neg(x[0][1], p), p)),
        (f2_mul(di, f2_neg(x[1][0], p), p), f2_mul(di, x[0][0], p)),
    )


def m2q_identity():
    return (((1, 0), (0, 0)), ((0, 0), (1, 0)))


def m2q_order(x, p):
    e = m2q_identity()
    k, y = 1, x
    while y != e:
        y = m2q_mul(y, x, p)
        k += 1
        if k > 4 * p * p * p:
            raise CatalogError("matrix order ran away")
    return k


def lift_prime_matrix(m, p):
    """View a matrix over F_p inside F_{p^2}."""
    return tuple(tuple((x % p, 0) for x in row) for row in m)


def scalar_restrict(m, p):
    """4x4 matrix over F_p from a 2x2 matrix over F_{p^2} (basis 1, t per entry)."""
    a1, a0 = quad_field(p)
    big = [[0] * 4 for _ in range(4)]
    for i in range(2):
        for j in range(2):
            a, b = m[i][j]
            block = ((a % p, (-a0 * b) % p), (b % p, (a - a1 * b) % p))
            for r in range(2):
                for c in range(2):
                    big[2 * i + r][2 * j + c] = block[r][c]
    return tuple(tuple(row) for row in big)


@lru_cache(maxsize=None)
def sl2q_elements(p: int) -> tuple:
    """All of SL_2(F_{p^2}), deterministic lexicographic order."""
    one = (1, 0)
    out = []
    for a in f2_elements(p):
        for b in f2_elements(p):
            for c in f2_elements(p):
                for d in f2_elements(p):
                    m = ((a, b), (c, d))
                    if m2q_det(m, p) == one:
                        out.append(m)
    return tuple(out)


@lru_cache(maxsize=None)
def sl2p_elements(p: int) -> tuple:
    out = []
    for a in range(p):
        for b in range(p):
            for c in range(p):
                for d in range(p):
                    if (a * d - b * c) % p == 1:
                        out.append(((a, b), (c, d)))
    return tuple(out)


def _mulclose(gens, mul, identity, limit=100000):
    got = {identity}
    frontier = [identity]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = mul(x, g)
            if y not in got:
                if len(got) >= limit:
                    raise CatalogError("closure exceeded limit")
                got.add(y)
                frontier.append(y)
    return got


# ---------------------------------------------------------------------------
# small deterministic matrix searches


def sqrt_mod(a: int, p: int) -> int | None:
    a %= p
    for x in range(p):
        if x * x % p == a:
            return x
    return None


@lru_cache(maxsize=None)
def quaternion_pair(p: int):
    """Canonical pair (i, j) generating an order-8 quaternion subgroup of SL_2(p)."""
    s = sqrt_mod(p - 1, p)
    if s is not None:
        i = ((s, 0), (0, (-s) % p))
        j = ((0, p - 1), (1, 0))
        return i, j
    i = ((0, p - 1), (1, 0))
    for a in range(p):
        b2 = (-1 - a * a) % p
        b = sqrt_mod(b2, p)
        if b is not None:
            j = ((a, b), (b, (-a) % p))
            return i, j
    raise CatalogError(f"no quaternion pair over F_{p}")


@lru_cache(maxsize=None)
def binary_tetrahedral_triple(p: int):
    """(i, j, w) in SL_2(p) with w of order 3 cycling i -> j -> ij."""
    i, j = quaternion_pair(p)
    ij = mat_mul(i, j, p)
    for w in sl2p_elements(p):
        if (w[0][0] + w[1][1]) % p != p - 1:  # order 3 needs trace -1
            continue
        wi = mat_inv(w, p)
        if mat_mul(mat_mul(w, i, p), wi, p) == j and mat_mul(mat_mul(w, j, p), wi, p) == ij:
            triple = (i, j, w)
            size = len(_mulclose(triple, lambda x, y: mat_mul(x, y, p), mat_identity(2)))
            if size == 24:
                return triple
    raise CatalogError(f"no binary tetrahedral triple over F_{p}")


def _subgroup_map(src_group: GroupHandle, src_gens, dst_gens, mul, identity):
    """Map elements of <src_gens> to the destination by matched Cayley walks,
    checking consistency on every edge."""
    src_mul = src_group.ops.mul
    out = {src_group.identity: identity}
    frontier = [src_group.identity]
    pairs = list(zip(src_gens, dst_gens))
    while frontier:
        x = frontier.pop()
        mx = out[x]
        for g, mg in pairs:
            y = src_mul(x, g)
            my = mul(mx, mg)
            if y in out:
                if out[y] != my:
                    raise CatalogError("generator matching is not a homomorphism")
            else:
                out[y] = my
                frontier.append(y)
    return out


@lru_cache(maxsize=None)
def binary_icosahedral_pair(p: int):
    """(s, t) in SL_2(p) with |s| = 6, |t| = 10, |st| = 4 generating a group
    of order 120 (the binary icosahedral presentation)."""
    elems = sl2p_elements(p)
    s = next(m for m in elems if mat_order(m, p) == 6)
    for t in elems:
        if mat_order(t, p) != 10:
            continue
        if mat_order(mat_mul(s, t, p), p) != 4:
            continue
        size = len(_mulclose((s, t), lambda x, y: mat_mul(x, y, p), mat_identity(2)))
        if size == 120:
            return s, t
    raise CatalogError(f"no binary icosahedral pair over F_{p}")


def _unique_involution(elems, mul, identity) -> bool:
    count = 0
    for x in elems:
        if x != identity and mul(x, x) == identity:
            count += 1
    return count == 1


# ---------------------------------------------------------------------------
# complements


COMPLEMENT_NAMES = (
    "C2", "C3", "C4", "C6", "Q8", "C3:C4", "Q16", "H1", "SL2_3",
    "C3:Q8", "C3xQ8", "SL2_3.C2", "H2", "SL2_5",
)
NEGATIVE_COMPLEMENT_NAMES = ("Q32", "SL2_5.C2")
TWO_GROUP_NAMES = ("C2", "C4", "C2xC2", "C4xC4", "Q8", "Q16", "Q32")


@lru_cache(maxsize=None)
def complement(name: str) -> GroupHandle:
    builder = _COMPLEMENT_BUILDERS.get(name)
    if builder is None:
        raise CatalogError(f"unknown catalog group {name!r}")
    g = builder()
    expected = _EXPECTED_ORDERS[name]
    if g.order() != expected:
        raise CatalogError(f"{name} built with order {g.order()}, expected {expected}")
    return g


def _build_q8() -> GroupHandle:
    i, j = quaternion_pair(3)
    return matrix_group(3, [i, j], name="Q8")


def _build_q2n(order: int) -> GroupHandle:
    # generalized quaternion inside SL_2(17): diagonal of 2-power order + swap
    k = order // 2  # order of the cyclic part
    a0 = next(a for a in range(2, 17) if _order_mod(a, 17) == k)
    a = ((a0, 0), (0, pow(a0, 15, 17)))
    b = ((0, 16), (1, 0))
    return matrix_group(17, [a, b], name=f"Q{order}")


def _order_mod(a: int, p: int) -> int:
    k, x = 1, a % p
    while x != 1:
        x = x * a % p
        k += 1
    return k


def _build_sl23() -> GroupHandle:
    i, j, w = binary_tetrahedral_triple(3)
    return matrix_group(3, [i, j, w], name="SL2_3")


def _build_sl25() -> GroupHandle:
    s, t = binary_icosahedral_pair(5)
    return matrix_group(5, [s, t], name="SL2_5")


@lru_cache(maxsize=None)
def binary_octahedral_quad(p: int):
    """(i, j, w, u) in SL_2(p): tetrahedral triple extended by u with closure
    of order 48 and a unique involution."""
    i, j, w = binary_tetrahedral_triple(p)
    mul = lambda x, y: mat_mul(x, y, p)
    sub24 = _mulclose((i, j, w), mul, mat_identity(2))
    for u in sl2p_elements(p):
        if u in sub24:
            continue
        ui = mat_inv(u, p)
        if mul(u, u) not in sub24:
            continue
        if any(mul(mul(u, x, ), ui) not in sub24 for x in (i, j, w)):
            continue
        full = _mulclose((i, j, w, u), mul, mat_identity(2))
        if len(full) == 48 and _unique_involution(full, mul, mat_identity(2)):
            return i, j, w, u
    raise CatalogError(f"no binary octahedral extension over F_{p}")


def _build_sl23c2() -> GroupHandle:
    i, j, w, u = binary_octahedral_quad(7)
    return matrix_group(7, [i, j, w, u], name="SL2_3.C2")


def _build_sl25c2() -> GroupHandle:
    # extend SL_2(5) inside SL_2(25) by the diagonal twist diag(mu, mu^-1)
    # with mu^2 a nonsquare of F_5, then push down to 4x4 over F_5
    p = 5
    s, t = binary_icosahedral_pair(5)
    nonsquare = next(a for a in range(2, p) if sqrt_mod(a, p) is None)
    mu = next(x for x in f2_elements(p) if f2_mul(x, x, p) == (nonsquare, 0))
    m = ((mu, (0, 0)), ((0, 0), f2_inv(mu, p)))
    gens_q = [lift_prime_matrix(s, p), lift_prime_matrix(t, p), m]
    gens = [scalar_restrict(g, p) for g in gens_q]
    g = matrix_group(5, gens, name="SL2_5.C2")
    mul = g.ops.mul
    if not _unique_involution(g.elements(), mul, g.identity):
        raise CatalogError("order-240 extension lacks a unique involution")
    return g


def _semidirect_complement(p, images, comp_name, name):
    H = complement(comp_name)
    mod = FpModule(p, H, images)
    return build_semidirect(mod, name=name)


_COMPLEMENT_BUILDERS = {
    "C2": lambda: cyclic_group(2),
    "C3": lambda: cyclic_group(3),
    "C4": lambda: cyclic_group(4),
    "C6": lambda: cyclic_group(6),
    "Q8": _build_q8,
    "Q16": lambda: _build_q2n(16),
    "Q32": lambda: _build_q2n(32),
    "C3:C4": lambda: _semidirect_complement(3, [((2,),)], "C4", "C3:C4"),
    "C3:Q8": lambda: _semidirect_complement(3, [((1,),), ((2,),)], "Q8", "C3:Q8"),
    "C3xQ8": lambda: _semidirect_complement(3, [((1,),), ((1,),)], "Q8", "C3xQ8"),
    "H1": lambda: _semidirect_complement(5, [((4,),)], "C4", "H1"),
    "H2": lambda: _semidirect_complement(3, [((2,),), ((1,),)], "Q16", "H2"),
    "SL2_3": _build_sl23,
    "SL2_5": _build_sl25,
    "SL2_3.C2": _build_sl23c2,
    "SL2_5.C2": _build_sl25c2,
    "C2xC2": lambda: perm_group([(1, 0, 2, 3), (0, 1, 3, 2)], name="C2xC2"),
    "C4xC4": lambda: perm_group(
        [(1, 2, 3, 0, 4, 5, 6, 7), (0, 1, 2, 3, 5, 6, 7, 4)], name="C4xC4"
    ),
}

_EXPECTED_ORDERS = {
    "C2": 2, "C3": 3, "C4": 4, "C6": 6, "Q8": 8, "C3:C4": 12, "Q16": 16,
    "H1": 20, "SL2_3": 24, "C3:Q8": 24, "C3xQ8": 24, "SL2_3.C2": 48,
    "H2": 48, "SL2_5": 120, "SL2_5.C2": 240, "Q32": 32,
    "C2xC2": 4, "C4xC4": 16,
}


# ---------------------------------------------------------------------------
# fixed-point-free modules for the kernel constructions


def _companion(p, c0, c1):
    # companion matrix of t^2 + c1 t + c0
    return ((0, (-c0) % p), (1, (-c1) % p))


def _dicyclic_12_images(p: int):
    """Images (x, y) for the order-12 complement with inverted C_3."""
    a = _companion(p, 1, 1)  # order 3
    ainv = mat_inv(a, p)
    for b in sl2p_elements(p):
        if (b[0][0] + b[1][1]) % p:
            continue  # order 4 in SL_2 means trace 0
        if mat_mul(mat_mul(b, a, p), mat_inv(b, p), p) == ainv:
            return a, b
    raise CatalogError(f"no dicyclic pair over F_{p}")


def _q2n_f2_images(p: int, half_order: int):
    """(diag(s, s^-1), antidiagonal) over F_{p^2} for a generalized quaternion
    group of order 2*half_order; scalar-restricted to dimension 4."""
    s = f2_element_of_order(p, half_order)
    a = ((s, (0, 0)), ((0, 0), f2_inv(s, p)))
    b = (((0, 0), f2_neg((1, 0), p)), ((1, 0), (0, 0)))
    return [scalar_restrict(a, p), scalar_restrict(b, p)]


def _h1_f9_images():
    """(x, y) over F_9 with |x| = 5, |y| = 4, x^y = x^-1, restricted to F_3^4."""
    p = 3
    # lex-least monic quadratic factor of t^4+t^3+t^2+t+1 over F_9
    phi5 = [(1, 0), (1, 0), (1, 0), (1, 0), (1, 0)]
    target = None
    for u0 in f2_elements(p):
        for u1 in f2_elements(p):
            if _f2poly_divides([u0, u1, (1, 0)], phi5, p):
                target = (u0, u1)
                break
        if target:
            break
    if target is None:
        raise CatalogError("quadratic factor not found")
    u0, u1 = target
    x = ((f2_neg((0, 0), p), f2_neg(u0, p)), ((1, 0), f2_neg(u1, p)))
    x = (((0, 0), f2_neg(u0, p)), ((1, 0), f2_neg(u1, p)))
    xinv = m2q_inv(x, p)
    for y in _gl2q_elements(p):
        y2 = m2q_mul(y, y, p)
        if y2 == m2q_identity():
            continue
        if m2q_mul(y2, y2, p) != m2q_identity():
            continue
        if m2q_mul(m2q_mul(y, x, p), m2q_inv(y, p), p) == xinv:
            return [scalar_restrict(x, 3), scalar_restrict(y, 3)]
    raise CatalogError("no order-4 inverting element over F_9")


def _f2poly_divides(div, poly, p):
    # both low-to-high over F_{p^2}; div monic of degree 2
    rem = list(poly)
    for k in range(len(rem) - 1, 1, -1):
        c = rem[k]
        if c == (0, 0):
            continue
        for i, dcoef in enumerate(div):
            rem[k - 2 + i] = f2_add(rem[k - 2 + i], f2_neg(f2_mul(c, dcoef, p), p), p)
    return all(x == (0, 0) for x in rem[:2])


@lru_cache(maxsize=None)
def _gl2q_elements(p: int) -> tuple:
    out = []
    for a in f2_elements(p):
        for b in f2_elements(p):
            for c in f2_elements(p):
                for d in f2_elements(p):
                    m = ((a, b), (c, d))
                    if m2q_det(m, p) != (0, 0):
                        out.append(m)
    return tuple(out)


def _c3q8_f2_images(p: int, central: bool, omega_power: int = 1):
    """Images (x, i, j) over F_{p^2}: x an order-3 (scalar if central) element,
    (i, j) the quaternion pair from the prime field; restricted to dim 4."""
    w = f2_element_of_order(p, 3)
    w = f2_pow(w, omega_power, p)
    if central:
        x = ((w, (0, 0)), ((0, 0), w))
    else:
        x = ((w, (0, 0)), ((0, 0), f2_mul(w, w, p)))
    i0, j0 = quaternion_pair(p)
    i = lift_prime_matrix(i0, p)
    j = lift_prime_matrix(j0, p)
    if not central:
        # i must commute with diag(w, w^2): replace by a diagonal sqrt of -1
        s = sqrt_mod(p - 1, p)
        if s is None:
            raise CatalogError("need -1 to be a square for the diagonal pair")
        i = (((s, 0), (0, 0)), ((0, 0), ((-s) % p, 0)))
        j = (((0, 0), ((p - 1), 0)), (((1), 0), ((0), 0)))
    return [scalar_restrict(m, p) for m in (x, i, j)]


def _c3xq8_prime_images(p: int, omega_power: int):
    w = next(a for a in range(2, p) if _order_mod(a, p) == 3)
    w = pow(w, omega_power, p)
    x = ((w, 0), (0, w))
    i, j = quaternion_pair(p)
    return [x, i, j]


def _sl23_module_images(p: int):
    i, j, w = binary_tetrahedral_triple(p)
    return [i, j, w]


def _sl23c2_f25_images():
    """Images for (i, j, w, u) over F_25, matched to the F_7 realization."""
    p = 5
    G = complement("SL2_3.C2")
    i7, j7, w7, u7 = G.generators
    i5, j5, w5 = binary_tetrahedral_triple(5)
    iq = lift_prime_matrix(i5, p)
    jq = lift_prime_matrix(j5, p)
    wq = lift_prime_matrix(w5, p)
    mul = lambda x, y: m2q_mul(x, y, p)
    m24 = _subgroup_map(G, (i7, j7, w7), (iq, jq, wq), mul, m2q_identity())
    u7i = G.inv(u7)
    targets = {
        "sq": m24[G.mul(u7, u7)],
        "i": m24[G.mul(u7, G.mul(i7, u7i))],
        "j": m24[G.mul(u7, G.mul(j7, u7i))],
        "w": m24[G.mul(u7, G.mul(w7, u7i))],
    }
    for u in sl2q_elements(p):
        if mul(u, u) != targets["sq"]:
            continue
        ui = m2q_inv(u, p)
        if (mul(mul(u, iq), ui) == targets["i"]
                and mul(mul(u, jq), ui) == targets["j"]
                and mul(mul(u, wq), ui) == targets["w"]):
            return [scalar_restrict(m, p) for m in (iq, jq, wq, u)]
    raise CatalogError("no matched octahedral extension over F_25")


def _sl25_f11_images(twist: bool):
    p = 11
    G = complement("SL2_5")
    s5, t5 = G.generators
    s11, t11 = binary_icosahedral_pair(11)
    mul = lambda x, y: mat_mul(x, y, p)
    full = _subgroup_map(G, (s5, t5), (s11, t11), mul, mat_identity(2))
    if not twist:
        return [s11, t11]
    # precompose with the diagonal outer automorphism over F_5
    nonsquare = next(a for a in range(2, 5) if sqrt_mod(a, 5) is None)
    mconj = ((1, 0), (0, nonsquare))
    mconj_i = mat_inv(mconj, 5)
    alpha = lambda g: mat_mul(mat_mul(mconj, g, 5), mconj_i, 5)
    return [full[alpha(s5)], full[alpha(t5)]]


def _h2_module_images():
    """4-dimensional images for (x, y, z) over F_5 via an induced module.

    Start from the index-2 subgroup generated by x, y^2, z, which acts on a
    2-dimensional F_25 space (x as the scalar omega, (y^2, z) as a quaternion
    pair); induce along y and split the restricted 8-dimensional module."""
    p = 5
    w3 = f2_element_of_order(p, 3)
    A = ((2, 0), (0, 0)), ((0, 0), (3, 0))  # tau(y^2)
    A = (((2, 0), (0, 0)), ((0, 0), (3, 0)))
    B = (((0, 0), (4, 0)), ((1, 0), (0, 0)))  # tau(z)
    Ainv = m2q_inv(A, p)
    AinvB = m2q_mul(Ainv, B, p)
    wI = ((w3, (0, 0)), ((0, 0), w3))
    w2I = ((f2_mul(w3, w3, p), (0, 0)), ((0, 0), f2_mul(w3, w3, p)))
    zero2 = (((0, 0), (0, 0)), ((0, 0), (0, 0)))
    ident2 = m2q_identity()

    def blocks(tl, tr, bl, br):
        rows = []
        for r in range(2):
            rows.append(tuple(tl[r]) + tuple(tr[r]))
        for r in range(2):
            rows.append(tuple(bl[r]) + tuple(br[r]))
        return tuple(rows)

    Rx = blocks(wI, zero2, zero2, w2I)
    Ry = blocks(zero2, A, ident2, zero2)
    Rz = blocks(B, zero2, zero2, AinvB)

    def restrict4(m4q):
        big = [[0] * 8 for _ in range(8)]
        a1, a0 = quad_field(p)
        for i in range(4):
            for j in range(4):
                a, b = m4q[i][j]
                big[2 * i][2 * j] = a % p
                big[2 * i][2 * j + 1] = (-a0 * b) % p
                big[2 * i + 1][2 * j] = b % p
                big[2 * i + 1][2 * j + 1] = (a - a1 * b) % p
        return tuple(tuple(row) for row in big)

    X8, Y8, Z8 = restrict4(Rx), restrict4(Ry), restrict4(Rz)
    sub = _split_invariant_subspace([X8, Y8, Z8], p, 8)
    if len(sub) != 4:
        raise CatalogError(f"expected a 4-dimensional summand, got {len(sub)}")
    return [_restrict_to_subspace(m, sub, p) for m in (X8, Y8, Z8)]


def _split_invariant_subspace(gens, p, dim):
    """A proper nonzero invariant subspace of a homogeneous module, found by
    averaging elementary matrices into endomorphisms and splitting kernels."""
    mul = lambda x, y: mat_mul(x, y, p)
    group = _mulclose(tuple(gens), mul, mat_identity(dim))
    pairs = [(g, mat_inv(g, p)) for g in group]
    for ei in range(dim):
        for ej in range(dim):
            E = tuple(
                tuple(1 if (r, c) == (ei, ej) else 0 for c in range(dim))
                for r in range(dim)
            )
            phi = [[0] * dim for _ in range(dim)]
            for g, gi in pairs:
                t = mat_mul(mat_mul(g, E, p), gi, p)
                for r in range(dim):
                    for c in range(dim):
                        phi[r][c] = (phi[r][c] + t[r][c]) % p
            for lam in range(p):
                shifted = [
                    [(phi[r][c] - (lam if r == c else 0)) % p for c in range(dim)]
                    for r in range(dim)
                ]
                basis = _nullspace_modp(shifted, p)
                if 0 < len(basis) < dim:
                    return basis
    raise CatalogError("no splitting endomorphism found")


def _nullspace_modp(mat, p):
    n = len(mat)
    rows = [list(r) for r in mat]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for row, pc in zip(rows[:r], pivots):
            v[pc] = (-row[fc]) % p
        basis.append(tuple(v))
    return basis


def _restrict_to_subspace(m, basis, p):
    span = _Span(p, len(m))
    for b in basis:
        span.add(b)
    eb = span.basis()
    cols = []
    for b in eb:
        y = mat_vec(m, b, p)
        coords = _coords_in(eb, y, p)
        cols.append(coords)
    d = len(eb)
    return tuple(tuple(cols[c][r] for c in range(d)) for r in range(d))


def _coords_in(basis, y, p):
    n = len(y)
    m = len(basis)
    aug = [[basis[r][i] for r in range(m)] + [y[i]] for i in range(n)]
    rows = [row[:] for row in aug]
    pivots = []
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y2) % p for x, y2 in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    out = [0] * m
    for row, pc in zip(rows[:r], pivots):
        out[pc] = row[m]
    # consistency
    for i in range(n):
        if sum(basis[t][i] * out[t] for t in range(m)) % p != y[i] % p:
            raise CatalogError("vector escaped the invariant subspace")
    return out


# ---------------------------------------------------------------------------
# module registry


def _images_for(comp: str, p: int, d: int, variant: str):
    key = (comp, p, d)
    if key == ("C2", 3, 1):
        return [((2,),)]
    if key == ("C2", 5, 1):
        return [((4,),)]
    if key == ("C4", 3, 2):
        return [_companion(3, 1, 0)]
    if key == ("C4", 5, 1):
        return [((2,),)] if variant == "a" else [((3,),)]
    if key == ("C6", 5, 2):
        return [_companion(5, 1, 4)]  # t^2 - t + 1
    if key == ("C6", 7, 1):
        return [((3,),)] if variant == "a" else [((5,),)]
    if key == ("C6", 13, 1):
        return [((4,),)] if variant == "a" else [((10,),)]
    if key == ("C3", 7, 1):
        return [((2,),)]
    if key == ("C3", 2, 2):
        return [_companion(2, 1, 1)]
    if key == ("Q8", 3, 2):
        return list(quaternion_pair(3))
    if key == ("Q8", 5, 2):
        return list(quaternion_pair(5))
    if key == ("C3:C4", 5, 2):
        return list(_dicyclic_12_images(5))
    if key == ("Q16", 3, 4):
        return _q2n_f2_images(3, 8)
    if key == ("Q16", 5, 4):
        return _q2n_f2_images(5, 8)
    if key == ("H1", 3, 4):
        return _h1_f9_images()
    if key == ("SL2_3", 5, 2):
        return _sl23_module_images(5)
    if key == ("SL2_3", 7, 2):
        return _sl23_module_images(7)
    if key == ("C3:Q8", 5, 4):
        return _c3q8_f2_images(5, central=False)
    if key == ("C3xQ8", 5, 4):
        return _c3q8_f2_images(5, central=True)
    if key == ("C3xQ8", 7, 2):
        return _c3xq8_prime_images(7, 1 if variant == "a" else 2)
    if key == ("C3xQ8", 13, 2):
        return _c3xq8_prime_images(13, 1 if variant == "a" else 2)
    if key == ("H2", 5, 4):
        return _h2_module_images()
    if key == ("SL2_3.C2", 5, 4):
        return _sl23c2_f25_images()
    if key == ("SL2_3.C2", 7, 2):
        imgs = [m for m in complement("SL2_3.C2").generators]
        if variant == "b":
            imgs[-1] = tuple(tuple((-x) % 7 for x in row) for row in imgs[-1])
        return imgs
    if key == ("SL2_5", 11, 2):
        return _sl25_f11_images(twist=(variant == "b"))
    if key == ("C4", 5, 2):
        # non-homogeneous: the two faithful 1-dimensional actions side by side
        return [((2, 0), (0, 3))]
    raise CatalogError(f"no module recipe for {key}")


@lru_cache(maxsize=None)
def find_fpf_module(comp_name: str, p: int, d: int, variant: str = "a") -> FpModule:
    """The canonical fixed-point-free module for a catalog complement.

    Raises with the list of failed checks when the target cannot be realized.
    """
    H = complement(comp_name)
    images = _images_for(comp_name, p, d, variant)
    mod = FpModule(p, H, images)
    problems = []
    if not mod.is_faithful():
        problems.append("not faithful")
    if not is_frobenius_semidirect(mod):
        problems.append("action has fixed points")
    homogeneous = (comp_name, p, d) != ("C4", 5, 2)
    if homogeneous and not is_irreducible(mod):
        problems.append("reducible")
    if problems:
        raise CatalogError(
            f"module ({comp_name}, {p}, {d}, {variant}) failed: {', '.join(problems)}"
        )
    return mod


# ---------------------------------------------------------------------------
# Frobenius instances


@dataclass(frozen=True)
class InstanceSpec:
    kernel: str          # display form of K
    comp: str            # complement catalog name
    p: int
    d: int
    copies: int = 1      # diagonal copies of the module
    variants: tuple[str, ...] = ("a",)
    minimal_normal: bool = True


INSTANCES: dict[str, InstanceSpec] = {
    # complement C2
    "C3:C2": InstanceSpec("C3", "C2", 3, 1),
    "C5:C2": InstanceSpec("C5", "C2", 5, 1),
    "C3^2:C2": InstanceSpec("C3^2", "C2", 3, 1, copies=2, minimal_normal=False),
    # complement C4
    "C3^2:C4": InstanceSpec("C3^2", "C4", 3, 2),
    "C5:C4": InstanceSpec("C5", "C4", 5, 1, variants=("a", "b")),
    "C5xC5:C4": InstanceSpec("C5xC5", "C4", 5, 2, minimal_normal=False),
    # complement C6
    "C5^2:C6": InstanceSpec("C5^2", "C6", 5, 2),
    "C7:C6": InstanceSpec("C7", "C6", 7, 1, variants=("a", "b")),
    "C13:C6": InstanceSpec("C13", "C6", 13, 1, variants=("a", "b")),
    # complement Q8
    "C3^2:Q8": InstanceSpec("C3^2", "Q8", 3, 2),
    "C5^2:Q8": InstanceSpec("C5^2", "Q8", 5, 2),
    # complement C3:C4
    "C5^2:(C3:C4)": InstanceSpec("C5^2", "C3:C4", 5, 2),
    # complement Q16
    "C3^4:Q16": InstanceSpec("C3^4", "Q16", 3, 4),
    "C5^4:Q16": InstanceSpec("C5^4", "Q16", 5, 4),
    # complement H1
    "C3^4:H1": InstanceSpec("C3^4", "H1", 3, 4),
    # complement SL2_3
    "C5^2:SL2_3": InstanceSpec("C5^2", "SL2_3", 5, 2),
    "C7^2:SL2_3": InstanceSpec("C7^2", "SL2_3", 7, 2),
    # complement C3:Q8
    "C5^4:(C3:Q8)": InstanceSpec("C5^4", "C3:Q8", 5, 4),
    # complement C3xQ8
    "C5^4:(C3xQ8)": InstanceSpec("C5^4", "C3xQ8", 5, 4),
    "C7^2:(C3xQ8)": InstanceSpec("C7^2", "C3xQ8", 7, 2, variants=("a", "b")),
    "C13^2:(C3xQ8)": InstanceSpec("C13^2", "C3xQ8", 13, 2, variants=("a", "b")),
    # complement H2
    "C5^4:H2": InstanceSpec("C5^4", "H2", 5, 4),
    # complement SL2_3.C2
    "C5^4:(SL2_3.C2)": InstanceSpec("C5^4", "SL2_3.C2", 5, 4),
    "C7^2:(SL2_3.C2)": InstanceSpec("C7^2", "SL2_3.C2", 7, 2, variants=("a", "b")),
    # complement SL2_5
    "C11^2:SL2_5": InstanceSpec("C11^2", "SL2_5", 11, 2, variants=("a", "b")),
    # odd complement C3
    "C7:C3": InstanceSpec("C7", "C3", 7, 1),
    "C7^2:C3": InstanceSpec("C7^2", "C3", 7, 1, copies=2, minimal_normal=False),
    "A4": InstanceSpec("C2^2", "C3", 2, 2),
    "C2^4:C3": InstanceSpec("C2^4", "C3", 2, 2, copies=2, minimal_normal=False),
}

# rows of the classification table of minimal-normal-kernel instances
TABLE2_NAMES = (
    "C3:C2", "C5:C2",
    "C3^2:C4", "C5:C4",
    "C5^2:C6", "C7:C6", "C13:C6",
    "C3^2:Q8", "C5^2:Q8",
    "C5^2:(C3:C4)",
    "C3^4:Q16", "C5^4:Q16",
    "C3^4:H1",
    "C5^2:SL2_3", "C7^2:SL2_3",
    "C5^4:(C3:Q8)",
    "C5^4:(C3xQ8)", "C7^2:(C3xQ8)", "C13^2:(C3xQ8)",
    "C5^4:H2",
    "C5^4:(SL2_3.C2)", "C7^2:(SL2_3.C2)",
    "C11^2:SL2_5",
)


@lru_cache(maxsize=None)
def frobenius_instance(name: str, variant: str = "a"):
    """Build a named Frobenius group: (group, module, complement)."""
    spec = INSTANCES.get(name)
    if spec is None:
        raise CatalogError(f"unknown Frobenius instance {name!r}")
    if variant not in spec.variants:
        raise CatalogError(f"instance {name} has no variant {variant!r}")
    H = complement(spec.comp)
    mod = find_fpf_module(spec.comp, spec.p, spec.d, variant) \
        if (spec.comp, spec.p, spec.d) != ("C4", 5, 2) \
        else FpModule(5, H, _images_for("C4", 5, 2, variant))
    if spec.copies > 1:
        mod = power_module(mod, spec.copies)
    disp = name if variant == "a" else f"{name}[{variant}]"
    G = build_semidirect(mod, name=disp)
    if not is_frobenius_semidirect(mod):
        raise CatalogError(f"instance {name} is not a Frobenius action")
    return G, mod, H


# ---------------------------------------------------------------------------
# counterexamples and odd-complement instances


def _regular_perm(H: GroupHandle):
    elems = H.elements()
    idx = {e: i for i, e in enumerate(elems)}
    def right_mult(g):
        return tuple(idx[H.mul(e, g)] for e in elems)
    return right_mult


@lru_cache(maxsize=None)
def counterexample(name: str) -> GroupHandle:
    if name == "neg_120":
        # C_15 x| Q_8, the quaternion generators acting by the residues 11 and 4
        q8 = complement("Q8")
        reg = _regular_perm(q8)
        ra, rb = reg(q8.generators[0]), reg(q8.generators[1])
        deg = 15 + 8
        x = tuple([(k + 1) % 15 for k in range(15)] + [15 + i for i in range(8)])
        a = tuple([11 * k % 15 for k in range(15)] + [15 + v for v in ra])
        b = tuple([4 * k % 15 for k in range(15)] + [15 + v for v in rb])
        g = perm_group([x, a, b], name="neg_120")
        if g.order() != 120:
            raise CatalogError(f"neg_120 has order {g.order()}")
        return g
    if name == "neg_240":
        # C_5 x| (order-48 complement), the outer generator inverting
        H = complement("SL2_3.C2")
        images = [((1,),), ((1,),), ((1,),), ((4,),)]
        mod = FpModule(5, H, images)
        g = build_semidirect(mod, name="neg_240")
        if g.order() != 240:
            raise CatalogError(f"neg_240 has order {g.order()}")
        return g
    if name == "C15:C4":
        x = tuple((k + 1) % 15 for k in range(15))
        y = tuple(2 * k % 15 for k in range(15))
        g = perm_group([x, y], name="C15:C4")
        if g.order() != 60:
            raise CatalogError(f"C15:C4 has order {g.order()}")
        return g
    if name.startswith("C5:Q16"):
        tag = name[-1]
        hom = {"a": [((4,),), ((1,),)], "b": [((1,),), ((4,),)], "c": [((4,),), ((4,),)]}
        if tag not in hom:
            raise CatalogError(f"unknown counterexample {name!r}")
        mod = FpModule(5, complement("Q16"), hom[tag])
        g = build_semidirect(mod, name=name)
        if g.order() != 80:
            raise CatalogError(f"{name} has order {g.order()}")
        return g
    raise CatalogError(f"unknown counterexample {name!r}")


def neg40_actions() -> list[GroupHandle]:
    """All four homomorphism types from the quaternion group of order 8 into
    Aut(C_5); index 0 is the direct product (trivial action)."""
    q8 = complement("Q8")
    homs = [
        [((1,),), ((1,),)],
        [((4,),), ((1,),)],
        [((1,),), ((4,),)],
        [((4,),), ((4,),)],
    ]
    out = []
    for k, images in enumerate(homs):
        mod = FpModule(5, q8, images)
        out.append(build_semidirect(mod, name=f"C5:Q8[{k}]"))
    return out


def odd_complement_instances() -> list[tuple[str, GroupHandle]]:
    names = ("C7:C3", "C7^2:C3", "A4", "C2^4:C3")
    return [(n, frobenius_instance(n)[0]) for n in names]


# ---------------------------------------------------------------------------
# listing


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    kind: str
    description: str


def catalog_entries() -> list[CatalogEntry]:
    out = []
    for n in COMPLEMENT_NAMES:
        out.append(CatalogEntry(n, "complement",
                                f"quadratic rational Frobenius complement, order {_EXPECTED_ORDERS[n]}"))
    for n in NEGATIVE_COMPLEMENT_NAMES:
        out.append(CatalogEntry(n, "complement",
                                f"complement-shaped negative case, order {_EXPECTED_ORDERS[n]}"))
    for n in ("C2xC2", "C4xC4"):
        out.append(CatalogEntry(n, "2-group", "abelian 2-group for the class-2 checks"))
    for n in sorted(INSTANCES):
        spec = INSTANCES[n]
        var = "" if spec.variants == ("a",) else f" (module variants {','.join(spec.variants)})"
        out.append(CatalogEntry(n, "frobenius",
                                f"{spec.kernel} x| {spec.comp}{var}"))
    for n in ("neg_120", "neg_240", "C15:C4", "C5:Q16a", "C5:Q16b", "C5:Q16c"):
        out.append(CatalogEntry(n, "counterexample", "fails a classification property"))
    return out


def build_from_catalog(name: str) -> GroupHandle:
    """Resolve any catalog name to a group handle."""
    if name in _COMPLEMENT_BUILDERS:
        return complement(name)
    base, _, var = name.partition("#")
    if base in INSTANCES:
        return frobenius_instance(base, var or "a")[0]
    try:
        return counterexample(name)
    except CatalogError:
        raise CatalogError(f"unknown catalog name {name!r}") from None
