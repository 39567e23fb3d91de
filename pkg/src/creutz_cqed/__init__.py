"""Modulated circuit-QED lattices: transmon parameters, Floquet sidebands and the bosonic Creutz ladder."""
from .errors import (
    AmbiguousPumpError,
    BesselRangeError,
    DomainError,
    GapClosingError,
    ResonanceError,
    SingularMatrixError,
    StepSizeError,
    TransmonRegimeWarning,
    UnsupportedCouplingError,
    WeakModulationWarning,
)
from .model import Hop, LatticeModel
from .circuitqed import (
    CoupledCircuitSpec,
    ModulationSpec,
    PumpTerm,
    TransmonSpec,
    coupled_params,
    modulation_depth,
    pump_term_select,
    transmon_params,
)
from .floquet import DriveSpec, effective_hamiltonian, sideband_coupling, sideband_quadrature
from .lattice import band_structure, bloch_matrices, build_creutz, symmetry_check
from .topology import berry_phase, domain_wall_mode, edge_zero_modes, wannier_modes, winding_number
from .dynamics import evolve_driven, evolve_static, oscillation_period, plaquette_model
from .netlist import dump, load, parse, validate

__version__ = "0.1.0"
