"""fibra: finite models of fibered correspondences, relations, quotients and group actions."""

from .bundle import (
    Bundle,
    Section,
    SubbundleWitness,
    Trivialization,
    degenerate_fibers,
    is_subbundle,
    product,
    reduced_product,
    sections,
)
from .errors import FibraError
from .fibered import (
    FiberedCorrespondence,
    FiberedRelation,
    ReducedFiberedCorrespondence,
    base_is_injective_map,
    classify,
    fibered_compose,
    fibered_diagonal,
    fibered_inverse,
    image_of_subbundle,
    lift_of_diagonal,
    nary_relation_check,
    reduce_over_diagonal,
    reduced_compose,
    reduced_diagonal,
    reduced_inverse,
    relation_counterexample,
    relation_is,
    sections_correspondence,
)
from .group import (
    FiberedGroup,
    FiniteGroup,
    OrbitQuotient,
    Tower,
    TstarRepresentation,
    cyclic_group,
    is_free,
    little_group,
    orbit_equivalence,
    orbit_quotient,
    stabilizer,
    tower_project,
    tower_validate,
    trivial_group,
)
from .quotient import FiberedMorphism, QuotientResult, factorize, kernel_equivalence, quotient_bundle
from .relations import (
    Correspondence,
    FiniteAlgebra,
    compose,
    diagonal,
    image,
    inverse,
    is_continuous,
    is_continuous_at_every_point,
    is_continuous_on,
    is_homomorphism_correspondence,
    limit_characterization,
    limit_of_correspondence,
    restrict,
    square_commutes,
)
from .topology import (
    Filter,
    FilterBase,
    FiniteTopology,
    all_topologies,
    discrete,
    filter_converges,
    filterbase_converges,
    generate_topology,
    generated_filter,
    indiscrete,
    neighborhood_filter,
    principal_filter,
)

__version__ = "0.1.0"
