"""Modules over F_p for a finite complement group H.

An FpModule carries matrix images for the generators of H and the full
element-to-matrix map, built by walking the Cayley graph of H and checking
consistency on every edge (so a successfully constructed module really is a
homomorphism, not just a generator assignment).

Includes the machinery that replaces brute force for the diagonal powers
G_n = K^n x| H: scalar subgroups, the k-eigenvalue property, dual modules,
and the semi-rationality transfer criterion for n >= 2.
"""

from __future__ import annotations

from .arith import canon_residue, multiplicative_order, units_mod
from .config import DEFAULT_CAP
from .cyclo import UnitClassSet
from .groups import GroupHandle, SemidirectOps


class ModuleError(ValueError):
    pass


# ---------------------------------------------------------------------------
# F_p matrix helpers (tuples of row tuples)


def mat_identity(d: int):
    return tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d))


def mat_mul(a, b, p: int):
    d = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(d)) % p for j in range(d))
        for i in range(d)
    )


def mat_vec(a, v, p: int):
    d = len(a)
    return tuple(sum(a[i][k] * v[k] for k in range(d)) % p for i in range(d))


def mat_transpose(a):
    d = len(a)
    return tuple(tuple(a[j][i] for j in range(d)) for i in range(d))


def mat_inv(a, p: int):
    d = len(a)
    aug = [list(row) + [1 if i == j else 0 for j in range(d)] for i, row in enumerate(a)]
    for col in range(d):
        piv = next((r for r in range(col, d) if aug[r][col] % p), None)
        if piv is None:
            raise ModuleError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv_p = pow(aug[col][col], p - 2, p)
        aug[col] = [x * inv_p % p for x in aug[col]]
        for r in range(d):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [(x - f * y) % p for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[d:]) for row in aug)


def mat_rank(a, p: int) -> int:
    rows = [list(r) for r in a]
    d = len(rows)
    cols = len(rows[0]) if rows else 0
    rank = 0
    for col in range(cols):
        piv = next((r for r in range(rank, d) if rows[r][col] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv_p = pow(rows[rank][col], p - 2, p)
        rows[rank] = [x * inv_p % p for x in rows[rank]]
        for r in range(d):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [(x - f * y) % p for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def mat_order(a, p: int) -> int:
    d = len(a)
    e = mat_identity(d)
    k, x = 1, a
    while x != e:
        x = mat_mul(x, a, p)
        k += 1
        if k > p ** (d * d):
            raise ModuleError("order computation ran away")
    return k


class _Span:
    """Incremental row space over F_p with reduced pivots."""

    def __init__(self, p: int, d: int):
        self.p = p
        self.d = d
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []

    def reduce(self, v):
        p = self.p
        w = list(v)
        for row, piv in zip(self.rows, self.pivots):
            if w[piv]:
                f = w[piv]
                w = [(x - f * y) % p for x, y in zip(w, row)]
        return w

    def add(self, v) -> bool:
        w = self.reduce(v)
        piv = next((i for i, x in enumerate(w) if x), None)
        if piv is None:
            return False
        inv_p = pow(w[piv], self.p - 2, self.p)
        w = [x * inv_p % self.p for x in w]
        for row in self.rows:
            if row[piv]:
                f = row[piv]
                row[:] = [(x - f * y) % self.p for x, y in zip(row, w)]
        self.rows.append(w)
        self.pivots.append(piv)
        return True

    def dim(self) -> int:
        return len(self.rows)

    def basis(self):
        # sorted by pivot for a canonical echelon basis
        order = sorted(range(len(self.rows)), key=lambda i: self.pivots[i])
        return [tuple(self.rows[i]) for i in order]


# ---------------------------------------------------------------------------
# the module type


class FpModule:
    """A d-dimensional F_p module for the complement group H."""

    def __init__(self, p: int, group: GroupHandle, gen_images, check: bool = True):
        self.p = p
        self.group = group
        self.gen_images = tuple(
            tuple(tuple(x % p for x in row) for row in m) for m in gen_images
        )
        if len(self.gen_images) != len(group.generators):
            raise ModuleError("one matrix image per group generator is required")
        self.d = len(self.gen_images[0])
        self.image = self._build_image(check)

    def _build_image(self, check: bool) -> dict:
        """Element -> matrix map along the Cayley graph, edge-checked."""
        p = self.p
        image = {self.group.identity: mat_identity(self.d)}
        frontier = [self.group.identity]
        gen_pairs = list(zip(self.group.generators, self.gen_images))
        while frontier:
            x = frontier.pop()
            mx = image[x]
            for g, mg in gen_pairs:
                y = self.group.mul(x, g)
                my = mat_mul(mx, mg, p)
                if y in image:
                    if check and image[y] != my:
                        raise ModuleError(
                            "generator images do not define a homomorphism"
                        )
                else:
                    image[y] = my
                    frontier.append(y)
        if len(image) != self.group.order():
            raise ModuleError("generator walk did not cover the group")
        return image

    def is_faithful(self) -> bool:
        return len(set(self.image.values())) == len(self.image)

    def matrices(self) -> list:
        """Images in the complement's enumeration order."""
        return [self.image[e] for e in self.group.elements()]

    def __repr__(self):
        return f"FpModule(p={self.p}, d={self.d}, |H|={self.group.order()})"


def is_irreducible(M: FpModule, scan_cap: int = 10**6) -> bool:
    """True iff every nonzero vector spins to the whole space.

    Exhaustive by design; the catalog stays far below the scan cap.
    """
    p, d = M.p, M.d
    if p**d > scan_cap:
        raise ModuleError(f"vector scan {p}^{d} exceeds cap {scan_cap}")
    if d == 0:
        return False
    gens = list(M.gen_images)
    for v in _nonzero_vectors(p, d):
        span = _Span(p, d)
        span.add(v)
        frontier = [v]
        while frontier and span.dim() < d:
            w = frontier.pop()
            for m in gens:
                u = mat_vec(m, w, p)
                if span.add(u):
                    frontier.append(u)
        if span.dim() < d:
            return False
    return True


def _nonzero_vectors(p: int, d: int):
    from .groups import _all_vectors

    zero = tuple(0 for _ in range(d))
    for v in _all_vectors(p, d):
        if v != zero:
            yield v


def is_frobenius_semidirect(M: FpModule, H: GroupHandle | None = None) -> bool:
    """True iff every nontrivial complement element fixes only the zero vector."""
    if H is not None and H is not M.group:
        raise ModuleError("module does not belong to the supplied complement")
    H = M.group
    if H.order() == 1 or M.d == 0:
        return False
    p, d = M.p, M.d
    ident = mat_identity(d)
    for e, m in M.image.items():
        if e == H.identity:
            continue
        shifted = tuple(
            tuple((m[i][j] - (1 if i == j else 0)) % p for j in range(d)) for i in range(d)
        )
        if mat_rank(shifted, p) < d:
            return False
        if m == ident:
            return False
    return True


def scalar_spectrum(M: FpModule, v) -> set[int]:
    """All scalars a with h.v = a v for some h in H."""
    p = M.p
    out = set()
    lead = next(i for i, x in enumerate(v) if x)
    lead_inv = pow(v[lead], p - 2, p)
    for m in M.image.values():
        w = mat_vec(m, v, p)
        a = w[lead] * lead_inv % p
        if a and all(w[i] == a * v[i] % p for i in range(M.d)):
            out.add(a)
    return out


def has_k_eigenvalue_property(M: FpModule, k: int) -> tuple[bool, int | None]:
    """Whether one scalar of multiplicative order k serves every nonzero vector.

    Returns (holds, witness scalar).
    """
    p = M.p
    if (p - 1) % k != 0:
        raise ModuleError(f"k={k} does not divide p-1={p - 1}")
    common: set[int] | None = None
    for v in _nonzero_vectors(p, M.d):
        spec = scalar_spectrum(M, v)
        common = spec if common is None else (common & spec)
        if not common:
            return False, None
    if common is None:
        return False, None
    for a in sorted(common):
        if multiplicative_order(a, p) == k:
            return True, a
    return False, None


def dual_module(M: FpModule) -> FpModule:
    """Inverse-transpose images; the action on Irr(K) for K = F_p^d."""
    imgs = [mat_transpose(mat_inv(m, M.p)) for m in M.gen_images]
    return FpModule(M.p, M.group, imgs, check=False)


def z_subgroup(M: FpModule) -> UnitClassSet:
    """Scalars lambda with lambda*I in the image of H, inside U(Z/pZ).

    These are the automorphisms of <x> induced by central elements of the
    matrix image; the set is independent of the nontrivial kernel vector x.
    """
    p, d = M.p, M.d
    scalars = set()
    for m in M.image.values():
        a = m[0][0]
        if a and all(m[i][j] == (a if i == j else 0) for i in range(d) for j in range(d)):
            scalars.add(a)
    return UnitClassSet.subgroup_from_members(p, scalars)


def power_module(M: FpModule, n: int) -> FpModule:
    """Diagonal action on K^n: block-diagonal matrices with n copies."""
    if n < 1:
        raise ModuleError("n must be positive")
    p, d = M.p, M.d
    D = d * n
    imgs = []
    for m in M.gen_images:
        big = [[0] * D for _ in range(D)]
        for b in range(n):
            for i in range(d):
                for j in range(d):
                    big[b * d + i][b * d + j] = m[i][j]
        imgs.append(tuple(tuple(row) for row in big))
    return FpModule(p, M.group, imgs, check=False)


def build_semidirect(M: FpModule, H: GroupHandle | None = None,
                     cap: int = DEFAULT_CAP, name: str | None = None) -> GroupHandle:
    """The group K x| H with K = F_p^d and H acting through the module."""
    if H is not None and H is not M.group:
        raise ModuleError("module does not belong to the supplied complement")
    H = M.group
    ops = SemidirectOps(M.p, M.d, H, M.matrices(), module=M)
    zero = tuple(0 for _ in range(M.d))
    gens = []
    for i in range(M.d):
        gens.append((tuple(1 if j == i else 0 for j in range(M.d)), ops.identity()[1]))
    for g in H.generators:
        gens.append((zero, ops.comp_index[g]))
    return GroupHandle(ops, gens, cap=cap, name=name)


# ---------------------------------------------------------------------------
# diagonal powers without enumeration


def gn_semi_rationality(M: FpModule, r: int, base_set: UnitClassSet | None = None) -> bool:
    """Whether K^n x| H stays r-semi-rational for every n >= 2.

    Requires the n = 1 group to be r-semi-rational already; the criterion is
    that the scalar subgroup has index at most 2 in U(Z/pZ) and together with
    r generates all of it.
    """
    p = M.p
    base = base_set if base_set is not None else _base_semirationality(M)
    n_exp = base.n
    rr = canon_residue(r, n_exp)
    if rr not in base:
        raise ModuleError("base group not r-semi-rational")
    z = z_subgroup(M)
    if z.index_in_full() > 2:
        return False
    joined = UnitClassSet.subgroup_generated(p, z.members + (canon_residue(r, p),))
    return joined.is_full()


def gn_set(M: FpModule, base_set: UnitClassSet | None = None) -> UnitClassSet:
    """The semi-rationality coset shared by all K^n x| H with n >= 2.

    Empty when those powers are not uniformly semi-rational.
    """
    p = M.p
    base = base_set if base_set is not None else _base_semirationality(M)
    z = z_subgroup(M)
    if base.is_empty() or z.index_in_full() > 2:
        return UnitClassSet.plain(base.n if not base.is_empty() else p, ())
    keep = []
    for r in base.members:
        joined = UnitClassSet.subgroup_generated(p, z.members + (canon_residue(r, p),))
        if joined.is_full():
            keep.append(r)
    return UnitClassSet.plain(base.n, keep)


def _base_semirationality(M: FpModule) -> UnitClassSet:
    from .rationality import semi_rationality_set

    return semi_rationality_set(build_semidirect(M))
