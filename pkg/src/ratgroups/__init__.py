"""Exact rationality classifiers for finite groups.

Decides rational / semi-rational / uniformly semi-rational / inverse
semi-rational (cut) / quadratic rational, with exact cyclotomic character
tables by two independent routes and a verification harness reproducing the
classification of quadratic rational Frobenius groups at concrete scale.
"""

from .arith import euler_phi, factorize, multiplicative_order, units_mod
from .catalog import (
    CatalogError,
    catalog_entries,
    complement,
    counterexample,
    find_fpf_module,
    frobenius_instance,
    odd_complement_instances,
)
from .chartab import (
    CapExceeded,
    CharacterTable,
    character_table_for,
    dixon_table,
    field_of_values,
    frobenius_table,
    is_cut_group,
    is_quadratic_rational,
    is_rational_group,
    quadratic_rational_in,
    semi_inertia,
)
from .config import Config
from .cyclo import (
    Cyclotomic,
    UnitClassSet,
    classify_quadratic,
    field_degree,
    galois_apply,
    parse_e,
    render_e,
    units_coset,
    units_subgroup_generated,
)
from .descr import DescriptionError, parse_description
from .groups import (
    ConjugacyData,
    EnumerationCapError,
    GroupHandle,
    center,
    centralizer,
    cyclic_group,
    derived_subgroup,
    element_order,
    enumerate_group,
    matrix_group,
    nilpotency_class,
    perm_group,
    power_residues,
    prime_graph,
    sylow,
)
from .modules import (
    FpModule,
    build_semidirect,
    dual_module,
    gn_semi_rationality,
    gn_set,
    has_k_eigenvalue_property,
    is_frobenius_semidirect,
    is_irreducible,
    power_module,
    z_subgroup,
)
from .rationality import (
    RationalityReport,
    classify,
    is_r_semi_rational_element,
    is_semi_rational_element,
    r_order_class,
    rationality_group,
    semi_rationality_set,
)
from .verify import run_verification, render_rows

__version__ = "0.1.0"
