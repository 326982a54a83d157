"""Exact celestial integration on smooth toric varieties and towers of toric blow-ups."""

from .celestial import (CelestialClass, Report, additivity_check,
                        check_change_of_variables, evaluate_manifestation,
                        integrate, local_value, resolution_independence)
from .chow import (ChowClass, cycle_class, degree, divisor_class, equal,
                   format_class, log_chern, multiply, pullback_divisor,
                   pushforward, total_chern)
from .errors import *  # noqa: F401,F403
from .fan import (Fan, StarSubdivision, barycentric_coords, is_smooth_cone,
                  orbit_euler, primitive_vector, star_subdivide, validate_fan)
from .invariants import (StringyClass, ZetaFunction, chern_numbers, csm_class,
                         stringy_chern, zeta_global, zeta_local)
from .models import (AMBIENT, BoundaryAtom, ConstructibleSet, HypersurfaceAtom,
                     NewtonPolygon, OrbitAtom, QUADRANT, ResolutionTower,
                     SystemDivisor, exceptional_over, newton_data,
                     newton_resolution, relative_canonical, resolve,
                     restrict_to_point)
from .scalar import Scalar, format_scalar, parse_scalar

__version__ = "0.1.0"
