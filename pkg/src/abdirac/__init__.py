"""Self-adjoint extensions and bound states of the 2+1-dimensional Dirac
Hamiltonian in an Aharonov-Bohm flux."""

__version__ = "0.1.0"

from .domain import decompose_flux, domain_theta, domain_theta_star, map_theta, unmap_theta
from .errors import (
    ConvergenceError,
    DomainError,
    IntegerFluxError,
    NoBoundStateError,
    NoCrossingError,
    NotNormalizableError,
)
from .spectrum import (
    BoundState,
    Branch,
    coefficient_b,
    energy_residual,
    find_zero_mode,
    solve_bound_energy,
    sweep_energy_curve,
)
from .wavefunctions import bound_spinor, extension_spinor, normalize, zero_mode
