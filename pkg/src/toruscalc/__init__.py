"""toruscalc: exact computation of orbit-space surgeries, equivariant sphere
sums, their graded models and cohomology rings."""

from .betti import (
    BettiVector,
    WedgeDecomposition,
    conn_sum_betti_closed,
    conn_sum_betti_mv,
    euler_characteristic,
    orbit_complement_recursive,
    orbit_complement_wedge,
    poincare_symmetric,
    torus_betti,
)
from .charfun import (
    CharacteristicFunction,
    TorusManifoldDescriptor,
    characteristic_submanifolds,
    fixed_point_count,
    merge_characteristic,
    standard_orbit_charfun,
    validate_characteristic,
)
from .exactla import IntMatrix, RatMatrix, SmithForm, is_direct_summand, rank_and_kernel, smith_normal_form
from .gradedring import FiniteGradedRing, sphere_ring
from .polytope import (
    FaceLattice,
    SurgerySpec,
    cube_lattice,
    face_connected_sum,
    holes_betti,
    orbit_space_lattice,
    simplex_lattice,
    vertex_connected_sum,
)
from .toricring import (
    betti_of_ring,
    connected_sum_ring,
    equivariant_connected_sum_ring,
    h_vector,
    pairing_matrix,
    quasitoric_ring,
)

__version__ = "0.1.0"
