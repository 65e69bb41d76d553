"""Flag complexes whose f-vectors are gamma-vectors of flag nestohedra."""

from .analysis import VerifyReport, ffk_check, graphs_isomorphic, verify_triple
from .gammacomplex import (
    FlagComplex,
    build_gamma_complex,
    compute_uv,
    contracted_ordering,
    f_vector_cliques,
    induced_subcomplex,
    join,
    restricted_ordering,
)
from .oracle import gamma_oracle, nested_f_vector
from .ordering import (
    FlagOrdering,
    find_flag_ordering,
    ordering_kn,
    ordering_pathn,
    ordering_star,
    verify_flag_ordering,
)
from .polyvec import CoeffVector, f_to_h, gamma_via_volodin, h_to_gamma
from .setcore import (
    BuildingSet,
    ElementSet,
    closure,
    contraction,
    graphical_building_set,
    is_flag,
    make_building_set,
    named_building_set,
    restriction,
)

__version__ = "0.1.0"
