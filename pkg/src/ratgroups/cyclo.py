"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Values are stored on the power basis 1, z, ..., z^(phi(n)-1) with z a fixed
primitive n-th root of unity, reduced modulo the n-th cyclotomic polynomial.
Coefficients are exact rationals; no floating point enters anywhere.

The Galois group of Q_n/Q is identified with U(Z/nZ) acting by z -> z^j.
Subsets of U(Z/nZ) with subgroup/coset structure are carried by UnitClassSet;
these house rationality subgroups, semi-rationality cosets and power-residue
data elsewhere in the package.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .arith import canon_residue, divisors, euler_phi, units_mod

_ZERO = Fraction(0)
_ONE = Fraction(1)


# ---------------------------------------------------------------------------
# cyclotomic polynomials and power-reduction tables


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (low-to-high coefficients)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        if c % den[-1] != 0:
            raise ArithmeticError("inexact polynomial division")
        q = c // den[-1]
        out[k] = q
        for i, d in enumerate(den):
            num[k + i] -= q * d
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, low to high."""
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in divisors(n):
        if d < n:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_rows(n: int) -> tuple[tuple[int, ...], ...]:
    """Row k is x^k reduced mod Phi_n, for 0 <= k < max(n, 2*phi(n)) + 1."""
    phi = euler_phi(n)
    mod = cyclotomic_polynomial(n)
    rows: list[tuple[int, ...]] = []
    for k in range(phi):
        rows.append(tuple(1 if i == k else 0 for i in range(phi)))
    bound = max(n, 2 * phi) + 1
    for k in range(phi, bound):
        prev = rows[k - 1]
        shifted = [0] + list(prev[: phi - 1])
        top = prev[phi - 1]
        if top:
            # x^phi = -(mod[0] + mod[1] x + ...)
            for i in range(phi):
                shifted[i] -= top * mod[i]
        rows.append(tuple(shifted))
    return tuple(rows)


def _reduce_terms(n: int, terms: dict[int, Fraction]) -> tuple[Fraction, ...]:
    phi = euler_phi(n)
    rows = _power_rows(n)
    out = [_ZERO] * phi
    for k, c in terms.items():
        if not c:
            continue
        row = rows[k]
        for i in range(phi):
            if row[i]:
                out[i] += c * row[i]
    return tuple(out)


# ---------------------------------------------------------------------------
# values


class Cyclotomic:
    """An exact element of Q(zeta_n); immutable and hashable."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != euler_phi(n):
            raise ValueError("coefficient vector has wrong length")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *_):
        raise AttributeError("Cyclotomic values are immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_terms(n: int, terms: dict[int, Fraction | int]) -> "Cyclotomic":
        clean: dict[int, Fraction] = {}
        for k, c in terms.items():
            clean[k % n] = clean.get(k % n, _ZERO) + Fraction(c)
        return Cyclotomic(n, _reduce_terms(n, clean))

    @staticmethod
    def zeta(n: int, k: int = 1) -> "Cyclotomic":
        return Cyclotomic.from_terms(n, {k: 1})

    @staticmethod
    def rational(q, n: int = 1) -> "Cyclotomic":
        return Cyclotomic.from_terms(n, {0: Fraction(q)})

    @staticmethod
    def zero(n: int = 1) -> "Cyclotomic":
        return Cyclotomic(n, [0] * euler_phi(n))

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def is_integral_rational(self) -> bool:
        return self.is_rational() and self.coeffs[0].denominator == 1

    # -- ring structure ----------------------------------------------------

    def _coerce(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            if other.n != self.n:
                raise ValueError(
                    f"mixed conductors {self.n} and {other.n}; embed() first"
                )
            return other
        return Cyclotomic.rational(other, self.n)

    def __add__(self, other):
        other = self._coerce(other)
        return Cyclotomic(self.n, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.n, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Cyclotomic):
            q = Fraction(other)
            return Cyclotomic(self.n, [a * q for a in self.coeffs])
        other = self._coerce(other)
        terms: dict[int, Fraction] = {}
        nz_a = [(i, c) for i, c in enumerate(self.coeffs) if c]
        nz_b = [(j, c) for j, c in enumerate(other.coeffs) if c]
        for i, a in nz_a:
            for j, b in nz_b:
                k = i + j
                terms[k] = terms.get(k, _ZERO) + a * b
        return Cyclotomic(self.n, _reduce_terms(self.n, terms))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        """Exact multiplicative inverse of a nonzero value."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic value")
        if self.is_rational():
            return Cyclotomic.rational(1 / self.coeffs[0], self.n)
        # extended Euclid in Q[x] against Phi_n
        mod = [Fraction(c) for c in cyclotomic_polynomial(self.n)]
        a = list(self.coeffs)
        r0, r1 = mod, a
        s0, s1 = [], [_ONE]
        while True:
            while r1 and not r1[-1]:
                r1.pop()
            if len(r1) == 1:
                inv_c = 1 / r1[0]
                coeffs = [c * inv_c for c in s1]
                coeffs += [_ZERO] * (euler_phi(self.n) - len(coeffs))
                return Cyclotomic(self.n, coeffs[: euler_phi(self.n)])
            q, r = _poly_divmod_q(r0, r1)
            s = _poly_sub_q(s0, _poly_mul_q(q, s1))
            r0, r1, s0, s1 = r1, r, s1, s

    def __truediv__(self, other):
        if isinstance(other, Cyclotomic):
            return self * other.inverse()
        return self * (1 / Fraction(other))

    # -- comparisons -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Cyclotomic):
            if other.n == self.n:
                return self.coeffs == other.coeffs
            return same_value(self, other)
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == Fraction(other)
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        v = self.to_minimal_conductor()
        return hash((v.n, v.coeffs))

    def encoding(self):
        """Canonical sortable encoding (used for deterministic row orders)."""
        return tuple((c.numerator, c.denominator) for c in self.coeffs)

    # -- field structure ---------------------------------------------------

    def galois(self, j: int) -> "Cyclotomic":
        return galois_apply(j, self)

    def conjugate(self) -> "Cyclotomic":
        return galois_apply(self.n - 1 if self.n > 1 else 1, self)

    def embed(self, m: int) -> "Cyclotomic":
        """Rewrite in Q(zeta_m) for a multiple m of the conductor."""
        if m == self.n:
            return self
        if m % self.n != 0:
            raise ValueError(f"{m} is not a multiple of conductor {self.n}")
        step = m // self.n
        terms = {i * step: c for i, c in enumerate(self.coeffs) if c}
        return Cyclotomic(m, _reduce_terms(m, terms))

    def minimal_conductor(self) -> int:
        for d in divisors(self.n):
            if _fixed_by_subfield_stabilizer(self, d):
                return d
        return self.n

    def to_minimal_conductor(self) -> "Cyclotomic":
        d = self.minimal_conductor()
        if d == self.n:
            return self
        return _express_in_subfield(self, d)

    def __repr__(self):
        return f"Cyclotomic({self.n}, {render_e(self)!r})"

    def __str__(self):
        return render_e(self)


def _poly_divmod_q(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    while b and not b[-1]:
        b = b[:-1]
    q = [_ZERO] * max(len(a) - len(b) + 1, 0)
    for k in range(len(q) - 1, -1, -1):
        if k + len(b) - 1 >= len(a):
            continue
        c = a[k + len(b) - 1] / b[-1]
        q[k] = c
        for i, d in enumerate(b):
            a[k + i] -= c * d
    while a and not a[-1]:
        a.pop()
    return q, a


def _poly_mul_q(a, b):
    out = [_ZERO] * (len(a) + len(b) - 1 if a and b else 0)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub_q(a, b):
    out = list(a) + [_ZERO] * max(0, len(b) - len(a))
    for i, y in enumerate(b):
        out[i] -= y
    return out


def galois_apply(j: int, v: Cyclotomic) -> Cyclotomic:
    """The field automorphism zeta -> zeta^j for j coprime to the conductor."""
    n = v.n
    if gcd(j, n) != 1:
        raise ValueError(f"{j} is not coprime to the conductor {n}")
    j %= n
    if j == 1 or n == 1:
        return v
    terms: dict[int, Fraction] = {}
    for i, c in enumerate(v.coeffs):
        if c:
            k = (i * j) % n
            terms[k] = terms.get(k, _ZERO) + c
    return Cyclotomic(n, _reduce_terms(n, terms))


def same_value(a: Cyclotomic, b: Cyclotomic) -> bool:
    """Equality across conductors, via embedding into the lcm field."""
    from math import lcm

    m = lcm(a.n, b.n)
    return a.embed(m).coeffs == b.embed(m).coeffs


def _fixed_by_subfield_stabilizer(v: Cyclotomic, d: int) -> bool:
    # v lies in Q_d iff every automorphism j == 1 (mod d) fixes it
    for j in units_mod(v.n):
        if j % max(d, 1) == 1 % max(d, 1) and galois_apply(j, v) != v:
            return False
    return True


def _express_in_subfield(v: Cyclotomic, d: int) -> Cyclotomic:
    """Rewrite v (known to lie in Q_d) on the power basis of Q_d."""
    phi_d = euler_phi(d)
    basis = [Cyclotomic.zeta(d, t).embed(v.n).coeffs for t in range(phi_d)]
    # solve sum a_t basis[t] = v.coeffs by Gaussian elimination over Q
    phi_n = euler_phi(v.n)
    rows = [[basis[t][i] for t in range(phi_d)] + [v.coeffs[i]] for i in range(phi_n)]
    sol: list[Fraction | None] = [None] * phi_d
    r = 0
    for col in range(phi_d):
        piv = next((i for i in range(r, phi_n) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(phi_n):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    # back-substitute from reduced rows
    out = [_ZERO] * phi_d
    r = 0
    for col in range(phi_d):
        if r < phi_n and rows[r][col] == 1 and all(rows[r][c] == 0 for c in range(col)):
            out[col] = rows[r][-1]
            r += 1
    cand = Cyclotomic(d, out)
    if cand.embed(v.n).coeffs != v.coeffs:
        raise ArithmeticError("value does not lie in the requested subfield")
    return cand


# ---------------------------------------------------------------------------
# field degrees


def field_degree(values, n: int) -> tuple[int, "UnitClassSet"]:
    """Degree over Q of the field generated by the values inside Q_n.

    Returns (degree, stabilizer) where the stabilizer is the subgroup of
    U(Z/nZ) fixing every value.
    """
    vals = [v if isinstance(v, Cyclotomic) else Cyclotomic.rational(v, n) for v in values]
    vals = [v.embed(n) if v.n != n else v for v in vals]
    stab = [j for j in units_mod(n) if all(galois_apply(j, v) == v for v in vals)]
    degree = euler_phi(n) // len(stab)
    return degree, UnitClassSet.subgroup_from_members(n, stab)


def classify_quadratic(values, n: int) -> str:
    """Tag the field generated by the values: rational, real-quadratic,
    imaginary-quadratic or higher-degree."""
    degree, stab = field_degree(values, n)
    if degree == 1:
        return "rational"
    if degree > 2:
        return "higher-degree"
    conj = canon_residue(n - 1 if n > 1 else 1, n)
    return "real-quadratic" if conj in stab.members else "imaginary-quadratic"


# ---------------------------------------------------------------------------
# subsets of U(Z/nZ)


@dataclass(frozen=True)
class UnitClassSet:
    """A subset of U(Z/nZ) that knows whether it is a subgroup or a coset.

    Members are canonical residues (see units_mod). For kind "coset" the
    recorded base subgroup and representative satisfy members == rep * base.
    """

    n: int
    members: tuple[int, ...]
    kind: str = "set"  # "subgroup" | "coset" | "set"
    rep: int | None = None
    base: tuple[int, ...] | None = None
    gens: tuple[int, ...] | None = None

    def __post_init__(self):
        for r in self.members:
            canon_residue(r, self.n)

    # constructors

    @staticmethod
    def subgroup_generated(n: int, gens) -> "UnitClassSet":
        gens = tuple(canon_residue(g, n) for g in gens)
        members = {1 if n > 1 else 1}
        frontier = list(members)
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = canon_residue(x * g, n)
                if y not in members:
                    members.add(y)
                    frontier.append(y)
        return UnitClassSet(n, tuple(sorted(members)), "subgroup", gens=gens)

    @staticmethod
    def subgroup_from_members(n: int, members) -> "UnitClassSet":
        members = tuple(sorted(canon_residue(m, n) for m in members))
        s = set(members)
        for a in members:
            for b in members:
                if canon_residue(a * b, n) not in s:
                    raise ValueError("member set is not multiplicatively closed")
        return UnitClassSet(n, members, "subgroup")

    @staticmethod
    def coset(r: int, sub: "UnitClassSet") -> "UnitClassSet":
        if sub.kind != "subgroup":
            raise ValueError("coset base must be a subgroup")
        r = canon_residue(r, sub.n)
        members = tuple(sorted(canon_residue(r * m, sub.n) for m in sub.members))
        return UnitClassSet(sub.n, members, "coset", rep=r, base=sub.members)

    @staticmethod
    def full(n: int) -> "UnitClassSet":
        return UnitClassSet(n, units_mod(n), "subgroup")

    @staticmethod
    def plain(n: int, members) -> "UnitClassSet":
        return UnitClassSet(n, tuple(sorted(canon_residue(m, n) for m in members)), "set")

    # queries

    def __contains__(self, r: int) -> bool:
        try:
            return canon_residue(r, self.n) in self.members
        except ValueError:
            return False

    def __len__(self) -> int:
        return len(self.members)

    def is_full(self) -> bool:
        return len(self.members) == euler_phi(self.n)

    def index_in_full(self) -> int:
        if not self.members:
            raise ValueError("empty set has no index")
        return euler_phi(self.n) // len(self.members)

    def is_empty(self) -> bool:
        return not self.members

    def pullback(self, m: int) -> "UnitClassSet":
        """Residues of U(Z/mZ) reducing into this set, for n | m."""
        if m % self.n != 0:
            raise ValueError("pullback target must be a multiple of the modulus")
        mem = set(self.members)
        lifted = tuple(j for j in units_mod(m) if canon_residue(j, self.n) in mem)
        kind = "subgroup" if self.kind == "subgroup" else "set"
        return UnitClassSet(m, lifted, kind)

    def intersect(self, other: "UnitClassSet") -> "UnitClassSet":
        if other.n != self.n:
            raise ValueError("moduli differ")
        mem = tuple(sorted(set(self.members) & set(other.members)))
        kind = "subgroup" if self.kind == other.kind == "subgroup" else "set"
        return UnitClassSet(self.n, mem, kind)

    def minimal_generators(self) -> tuple[int, ...]:
        if self.kind != "subgroup":
            raise ValueError("generators only make sense for subgroups")
        if self.gens is not None:
            return self.gens
        want = set(self.members)
        have = UnitClassSet.subgroup_generated(self.n, ())
        gens: list[int] = []
        for r in self.members:
            if r in have.members:
                continue
            gens.append(r)
            have = UnitClassSet.subgroup_generated(self.n, gens)
            if set(have.members) == want:
                break
        return tuple(gens)

    def as_coset_of(self, sub: "UnitClassSet") -> "UnitClassSet | None":
        """Recognize this plain set as r*sub, preferring small representatives."""
        if len(self.members) != len(sub.members):
            return None
        for r in self.members:
            c = UnitClassSet.coset(r, sub)
            if c.members == self.members:
                return c
        return None

    def render(self) -> str:
        if not self.members:
            return f"(empty) mod {self.n}"
        if self.kind == "coset":
            base = UnitClassSet.subgroup_from_members(self.n, self.base)
            gens = ",".join(str(g) for g in base.minimal_generators())
            return f"{self.rep}*<{gens}> mod {self.n}"
        if self.kind == "subgroup":
            gens = ",".join(str(g) for g in self.minimal_generators())
            return f"<{gens}> mod {self.n}"
        body = ",".join(str(m) for m in self.members)
        return f"{{{body}}} mod {self.n}"


def units_subgroup_generated(n: int, gens) -> UnitClassSet:
    return UnitClassSet.subgroup_generated(n, gens)


def units_coset(r: int, sub: UnitClassSet) -> UnitClassSet:
    return UnitClassSet.coset(r, sub)


# ---------------------------------------------------------------------------
# E(n) notation


def render_e(v: Cyclotomic) -> str:
    """Render in computer-algebra style: rational combinations of E(n)^k."""
    if v.is_zero():
        return "0"
    if v.is_rational():
        return str(v.coeffs[0])
    parts = []
    for k, c in enumerate(v.coeffs):
        if not c:
            continue
        if k == 0:
            parts.append(str(c))
            continue
        power = f"E({v.n})" if k == 1 else f"E({v.n})^{k}"
        if c == 1:
            parts.append(power)
        elif c == -1:
            parts.append(f"-{power}")
        else:
            parts.append(f"{c}*{power}")
    out = parts[0]
    for p in parts[1:]:
        out += p if p.startswith("-") else "+" + p
    return out


_TERM_RE = re.compile(
    r"^(?P<coef>[+-]?\d+(?:/\d+)?)?(?P<star>\*)?(?:E\((?P<n>\d+)\)(?:\^(?P<k>\d+))?)?$"
)


def parse_e(text: str, n: int | None = None) -> Cyclotomic:
    """Parse a string produced by render_e (optionally forcing conductor n)."""
    text = text.strip().replace(" ", "")
    if not text:
        raise ValueError("empty cyclotomic literal")
    chunks = re.findall(r"[+-]?[^+-]+", text)
    terms: list[tuple[Fraction, int | None, int]] = []
    for chunk in chunks:
        m = _TERM_RE.match(chunk)
        if not m or (m.group("coef") is None and m.group("n") is None):
            raise ValueError(f"bad cyclotomic term {chunk!r}")
        coef = m.group("coef")
        if coef in (None, "+", "-"):
            c = Fraction(-1 if coef == "-" else 1)
        else:
            c = Fraction(coef)
        cond = int(m.group("n")) if m.group("n") else None
        k = int(m.group("k")) if m.group("k") else (1 if cond else 0)
        terms.append((c, cond, k))
    conds = {c for _, c, _ in terms if c is not None}
    if n is None:
        if len(conds) > 1:
            raise ValueError("mixed conductors in literal")
        n = conds.pop() if conds else 1
    elif any(n % c != 0 for c in conds):
        raise ValueError("literal conductor does not divide requested one")
    acc: dict[int, Fraction] = {}
    for c, cond, k in terms:
        exp = 0 if cond is None else k * (n // cond)
        acc[exp] = acc.get(exp, _ZERO) + c
    return Cyclotomic.from_terms(n, acc)
