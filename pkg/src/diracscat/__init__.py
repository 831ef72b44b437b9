"""Scattering for the one-dimensional Dirac operator with step-like potentials.

Numerical Jost solutions and S-matrices, semiclassical predictions for
comparison, and an exact solver for piecewise-constant potentials.
"""
from .errors import (DegenerateChannelError, DiracScatError, DomainError, HypothesisError,
                     InconclusiveRootError, IntegrationQualityError, NumericalError,
                     PathCrossesTurningPointError, PrecisionError, ProfileError, RegionError,
                     ResolutionError, SingularPointError, TailNotConvergedError, ValidationError)
from .jost import (ReflectionCoefficients, ScatteringMatrix, SolverSettings, TransferMatrix,
                   jost_solution, scattering_matrix, total_reflection_solve, transfer_matrix)
from .model import (ErfStep, PhysicalParams, PiecewiseConstant, RationalStep, Tabulated,
                    TanhStep, load_profile, parse_profile, tail_cutoffs)
from .oracle import StepPotential, staircase_approximation, step_scattering
from .phase import classical_action, phase_at_infinity, phase_T, phase_T0, phase_Ttilde
from .spectral import EnergyRegion, classify_energy, essential_spectrum, find_turning_points
from .wkb import (predict_klein, predict_total_reflection, predict_total_transmission,
                  predict_zero_mass, wkb_series)

__version__ = "0.1.0"
