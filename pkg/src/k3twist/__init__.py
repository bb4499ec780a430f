"""Exact lattice computations for twisted sheaves and moduli of sheaves on K3 surfaces."""

from .brauer import (
    BrauerClass,
    ModNClass,
    brauer_from_h2_class,
    kernel,
    kummer_torsion_order,
    obstruction_from_bundle,
    order,
    p_map,
    restrict,
    topological_twisting_class,
    zero_class,
)
from .cech import (
    Cochain,
    GluingData,
    Nerve,
    cech_cohomology,
    coboundary,
    hom_gluing,
    inverse_gluing,
    is_cohomologous,
    tensor_gluing,
    verify_gluing,
)
from .dp import TwistedPair, dp_identity_check, kernel_intersection
from .errors import (
    AdmissibilityError,
    InvalidInputError,
    InvariantViolation,
    K3TwistError,
)
from .intmat import IntMatrix, smith_normal_form
from .lattice import (
    FiniteAbelianGroup,
    Lattice,
    LatticeEmbedding,
    Sublattice,
    classify_form,
    e8_lattice,
    hyperbolic_plane,
    k3_lattice,
    orthogonal_complement,
    pairing,
    saturation,
    signature,
)
from .moduli import (
    ModuliProblem,
    ModuliReport,
    fineness_index,
    moduli_lattice,
    mukai_lambda,
    obstruction_group,
    phi_transcendental,
    verify_theorem_suite,
)
from .mukai import (
    K3Surface,
    MukaiVector,
    euler_pairing,
    is_admissible_mukai_vector,
    k3,
    mukai_lattice,
    mukai_pairing,
    mukai_vector_of_sheaf,
)

__version__ = "0.1.0"
