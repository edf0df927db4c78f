"""Element- and group-level rationality classifiers built on power maps.

For a group of exponent n the residues j in U(Z/nZ) with x^j conjugate to x
for every x form the rationality subgroup; the residues r making the group
r-semi-rational form the semi-rationality set, which is a coset of the former
whenever it is nonempty.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .arith import canon_residue, multiplicative_order, units_mod
from .cyclo import UnitClassSet
from .groups import ConjugacyData, GroupHandle


def _class_residues(conj: ConjugacyData, c: int) -> UnitClassSet:
    m = conj.orders[c]
    pm = conj.power_map[c]
    members = [j for j in units_mod(m) if pm[j % m] == c]
    return UnitClassSet.subgroup_from_members(m, members)


def is_semi_rational_element(x, G: GroupHandle) -> bool:
    """Generators of <x> meet at most two conjugacy classes."""
    conj = G.conjugacy()
    res = _class_residues(conj, conj.class_of(x))
    return res.index_in_full() <= 2


def is_r_semi_rational_element(x, G: GroupHandle, r: int) -> bool:
    """True iff every generator of <x> is conjugate to x or to x^r."""
    conj = G.conjugacy()
    c = conj.class_of(x)
    m = conj.orders[c]
    canon_residue(r, m)  # raises if r shares a factor with |x|
    res = _class_residues(conj, c)
    if res.is_full():
        return True
    return res.index_in_full() == 2 and canon_residue(r, m) not in res


def rationality_group(G: GroupHandle) -> UnitClassSet:
    """Residues acting trivially on every class: a subgroup of U(Z/exp(G)Z)."""
    n = G.exponent()
    conj = G.conjugacy()
    members = set(units_mod(n))
    for c in range(conj.num_classes()):
        res = _class_residues(conj, c)
        members &= set(res.pullback(n).members)
        if len(members) == 1:
            break
    return UnitClassSet.subgroup_from_members(n, members)


def semi_rationality_set(G: GroupHandle) -> UnitClassSet:
    """All r for which G is r-semi-rational; empty iff not uniformly so.

    Sieved per class: rational classes admit every r, index-2 classes demand
    r outside their residue subgroup, anything wider kills the whole set.
    """
    n = G.exponent()
    conj = G.conjugacy()
    candidates = set(units_mod(n))
    for c in range(conj.num_classes()):
        res = _class_residues(conj, c)
        if res.is_full():
            continue
        if res.index_in_full() > 2:
            return UnitClassSet.plain(n, ())
        lifted = set(res.pullback(n).members)
        candidates -= lifted
        if not candidates:
            return UnitClassSet.plain(n, ())
    result = UnitClassSet.plain(n, candidates)
    if not result.is_empty():
        coset = result.as_coset_of(rationality_group(G))
        if coset is None:
            raise AssertionError("semi-rationality set is not a coset of the rationality")
        return coset
    return result


@dataclass
class RationalityReport:
    exponent: int
    rationality: UnitClassSet
    semirationality: UnitClassSet
    rational: bool
    semi_rational: bool
    uniformly_semi_rational: bool
    inverse_semi_rational: bool
    quadratic_rational: bool | None
    class_residues: list[tuple[int, int, UnitClassSet]]  # (class, order, residues)
    witnesses: dict[str, str] = field(default_factory=dict)
    cut_cross_check: bool | None = None

    def flag(self, name: str) -> bool | None:
        return getattr(self, name)


def classify(G: GroupHandle, with_table: bool = True) -> RationalityReport:
    """Full rationality report; the character-side flag is delegated to the
    table machinery and cross-checked against the power-map cut criterion."""
    n = G.exponent()
    conj = G.conjugacy()
    per_class = [
        (c, conj.orders[c], _class_residues(conj, c)) for c in range(conj.num_classes())
    ]
    rat = rationality_group(G)
    semi = semi_rationality_set(G)
    rational = rat.is_full()
    semi_rational = all(res.is_full() or res.index_in_full() == 2 for _, _, res in per_class)
    usr = not semi.is_empty()
    minus_one = canon_residue(n - 1 if n > 1 else 1, n)
    inverse_sr = minus_one in semi
    witnesses: dict[str, str] = {}
    if not rational:
        c, o, res = next(t for t in per_class if not t[2].is_full())
        j = next(j for j in units_mod(o) if j not in res)
        witnesses["rational"] = f"class {c} (order {o}): power {j} leaves the class"
    if not semi_rational:
        c, o, res = next(t for t in per_class if t[2].index_in_full() > 2)
        witnesses["semi_rational"] = (
            f"class {c} (order {o}): residue subgroup has index {res.index_in_full()}"
        )
    if not usr:
        witnesses["uniformly_semi_rational"] = "no residue serves every class"
    if not inverse_sr:
        witnesses["inverse_semi_rational"] = f"-1 = {minus_one} mod {n} not in the set"

    qr: bool | None = None
    cut_check: bool | None = None
    if with_table:
        from .chartab import character_table_for, CapExceeded, is_cut_table, is_quadratic_table

        try:
            table = character_table_for(G)
            qr = is_quadratic_table(table)
            cut_check = is_cut_table(table) == inverse_sr
            if not qr:
                i = next(
                    i for i in range(len(table.rows)) if table.field_degree(i) > 2
                )
                witnesses["quadratic_rational"] = (
                    f"character {i} has field degree {table.field_degree(i)}"
                )
        except CapExceeded:
            qr = None
    return RationalityReport(
        exponent=n,
        rationality=rat,
        semirationality=semi,
        rational=rational,
        semi_rational=semi_rational,
        uniformly_semi_rational=usr,
        inverse_semi_rational=inverse_sr,
        quadratic_rational=qr,
        class_residues=per_class,
        witnesses=witnesses,
        cut_cross_check=cut_check,
    )


def r_order_class(G: GroupHandle) -> str:
    """Bucket by the minimal order of a serving residue: rational, cut,
    order-2 or order-4."""
    semi = semi_rationality_set(G)
    if semi.is_empty():
        raise ValueError("group is not uniformly semi-rational")
    n = semi.n
    if rationality_group(G).is_full():
        return "rational"
    if canon_residue(n - 1 if n > 1 else 1, n) in semi:
        return "cut"
    best = min(multiplicative_order(r, n) for r in semi.members)
    if best <= 2:
        return "order-2"
    if best == 4:
        return "order-4"
    return f"order-{best}"
