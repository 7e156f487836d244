"""tropabel: exact curve counts on tropical abelian surfaces.

All values are immutable after construction and safe to share between
threads and worker processes.
"""

from .core import (
    CRat,
    Rat,
    SkewForm,
    comatrix,
    det2,
    is_pos_def_herm,
    is_pos_def_sym,
    pfaffian,
)
from .curve import (
    AbstractCurve,
    Edge,
    Leg,
    Multiplicity,
    ParamCurve,
    canonical_key,
    contract,
    curve_gcd,
    degree,
    degree_by_crossing,
    dilate,
    mikhalkin_multiplicity,
    validate,
)
from .combtypes import CombType, generate_comb_types, trivalent_base_graphs
from .enumeration import (
    EnumerationResult,
    SearchBounds,
    certify_bounds_stability,
    default_bounds,
    enumerate_curves,
    stratum_bijection_check,
    tropical_invariant,
)
from .multicover import ComplexCount, MultiCoverReport, complex_count, mc_rhs, verify_multiple_cover
from .mumford import (
    MumfordFamily,
    SigmaExponent,
    build_Z,
    check_family_polarization,
    is_realizable,
    sigma,
)
from .polarization import PeriodData, PoincareDual, check_riemann, poincare_dual, polarization_type
from .surface import (
    PointConfig,
    TorusPoint,
    TropicalTorus,
    check_tropical_polarization,
    degree_polarization_duality,
    reduce_point,
    sample_config,
)

__version__ = "0.1.0"
