"""Two-block group-algebra CSS codes on lattice quotients.

Construction and exact parameters of abelian two-block codes, their
embedding on quotients of integer lattices, evaluation of the geometric
minimum-distance bound, and a constructive certificate: a nontrivial
logical operator confined to a single slab of a fundamental-domain
partition.
"""

from .bounds import BoundReport, HermiteValue, bt_bound, hermite, two_block_bound
from .cleaning import (
    PauliOperator,
    StabilizerCodeView,
    clean,
    css_sector_logical_in_region,
    localize_logical,
    logical_in_region,
    symplectic_commutes,
)
from .codes import (
    CodeParams,
    CssCode,
    SearchLimits,
    SectorDistance,
    TwoBlockCode,
    build_two_block,
    decompose,
    dimension,
    distance,
    normalize,
)
from .embedding import (
    PsiMap,
    QubitLayout,
    apply_psi,
    build_psi,
    is_surjective,
    kernel_lattice,
    qubit_layout,
    verify_locality,
)
from .gf2 import BitMatrix, in_rowspace, nullspace_basis, rank, solve
from .groups import (
    FiniteAbelianGroup,
    GroupAlgebraElement,
    algebra_to_matrix,
    regular_representation,
    shift,
    subgroup_closure,
)
from .lattices import (
    GoodBasis,
    IntegerLattice,
    ParallelotopePartition,
    build_partition,
    count_integral_points,
    enumerate_quotient,
    good_basis,
    hermite_normal_form,
    kernel_of_mod_map,
    quotient_distance,
    random_lattice,
    shortest_vector,
    slab_index,
    smith_normal_form,
)

__version__ = "0.1.0"
