"""Boltzmann billiard: Kepler motion with a reflecting straight wall."""
from .cayley import (CayleyCurve, PeriodicityVerdict, cayley_coefficients, cayley_curve,
                     cayley_determinant, cayley_determinants, closed_form_condition,
                     divisor_contamination, periodicity_verdict, proper_divisors)
from .errors import *  # noqa: F401,F403
from .fomenko import (Atom, AtomKind, Edge, Family, FomenkoGraph, fomenko_graph,
                      half_ellipse_billiard_graph)
from .geometry import (FOCUS_POINT, CausticReport, ConicKind, ConicSection, FocalReport,
                       SingularOrbit, TangencyData, caustic, caustics, focal_property_run,
                       singular_orbit_description, tangency, verify_caustic_along_orbit)
from .kepler import (KeplerArc, ParameterClass, ParameterTag, SystemParams, WallState,
                     arc_from_state, boltzmann_step, classify_parameters, involution_i,
                     involution_j, make_params, orbit, reconstruct_arc, state_from_angle,
                     state_from_physical, wall_crossings)
from .numeric import QuadExt, Tolerances, exact_sqrt, get_tolerances, parse_number
from .series import TruncatedSeries, series_sqrt

__version__ = "0.1.0"
