"""Exact K-theory ranks, subgroup census and cohomology for Z^n ⋊ Z/m."""

from .burnside import BurnsideElement, MarkVector, from_marks, induce_from_sylow, kg, marks_of, multiply, perm_dim_fixed, quot
from .census import SubgroupCensus, census_bruteforce, census_closed_form, cross_check, h1_class_closed_form
from .cohomology import (
    FiniteAbelianGroupWithAction,
    TateGroup,
    burnside_class_of_h1,
    fixed_point_count,
    h1_as_gset,
    orbit_count,
    tate,
)
from .errors import (
    CrossCheckMismatch,
    CrystalKTheoryError,
    DimensionOverflow,
    InternalInconsistency,
    InvalidInput,
    NotFreeOutsideOrigin,
    WrongOrder,
)
from .lattice import CyclicLattice, SylowData, cyclotomic_lattice, subgroup_generator, sylow_data, validate
from .linalg import characteristic_polynomial, exterior_power, rational_rank, smith_normal_form
from .report import (
    GradedGroup,
    KTheoryReport,
    build_report,
    euler_class,
    gamma_cohomology,
    lambda_ranks,
    orbifold_cohomology,
    s_values,
)

__version__ = "0.1.0"
