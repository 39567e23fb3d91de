"""Circuit-element values -> lattice-model parameters.

Inputs are SI (farads, henries, joules); every frequency returned is an
angular frequency in rad/s (energies divided by hbar).
"""
from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import constants

from .errors import (
    AmbiguousPumpError,
    DomainError,
    SingularMatrixError,
    TransmonRegimeWarning,
    UnsupportedCouplingError,
    WeakModulationWarning,
)

HBAR = constants.hbar
E_CHARGE = constants.e
#: reduced flux quantum hbar / 2e, so that the junction potential is E_J cos(phi / PHI0)
PHI0 = HBAR / (2 * E_CHARGE)

MAX_MODULATION_RATIO = 0.2


def _positive(name, value):
    if not (value > 0 and math.isfinite(value)):
        raise DomainError(f"{name} must be positive and finite, got {value!r}")


@dataclass(frozen=True)
class TransmonSpec:
    """A capacitor shunting a Josephson junction.

    Give exactly one of ``capacitance`` or ``charging_energy``; the other is
    derived from E_C = e^2 / 2C.
    """

    junction_energy: float
    capacitance: float | None = None
    charging_energy: float | None = None

    def __post_init__(self):
        if (self.capacitance is None) == (self.charging_energy is None):
            raise DomainError("give exactly one of capacitance or charging_energy")
        _positive("junction_energy", self.junction_energy)
        if self.capacitance is not None:
            _positive("capacitance", self.capacitance)
        else:
            _positive("charging_energy", self.charging_energy)

    @property
    def C(self):
        if self.capacitance is not None:
            return self.capacitance
        return E_CHARGE**2 / (2 * self.charging_energy)

    @property
    def E_C(self):
        if self.charging_energy is not None:
            return self.charging_energy
        return E_CHARGE**2 / (2 * self.capacitance)

    @property
    def E_J(self):
        return self.junction_energy

    @property
    def epsilon(self):
        return math.sqrt(8 * self.E_C / self.E_J)

    @property
    def inductance(self):
        """Linearised junction inductance phi0^2 / E_J."""
        return PHI0**2 / self.E_J


@dataclass(frozen=True)
class TransmonParams:
    omega0: float
    delta_omega0: float
    kerr: float
    kerr6: float
    epsilon: float


def kerr_coefficients(E_J, E_C):
    """Frequency shift and Kerr terms in energy units.

    Returns ``(epsilon, delta, kerr, kerr6)`` with delta = sqrt(2 E_J E_C)(1 - e^{-eps/4}),
    kerr = (E_C / 2) e^{-eps/4} and kerr6 = (eps / 3) kerr.
    """
    eps = math.sqrt(8 * E_C / E_J)
    damp = math.exp(-eps / 4)
    delta = math.sqrt(2 * E_J * E_C) * -math.expm1(-eps / 4)
    kerr = 0.5 * E_C * damp
    return eps, delta, kerr, (eps / 3) * kerr


def transmon_params(spec: TransmonSpec) -> TransmonParams:
    eps, delta, kerr, _ = kerr_coefficients(spec.E_J, spec.E_C)
    if eps >= 1:
        warnings.warn(
            f"epsilon = sqrt(8 E_C / E_J) = {eps:.4g} >= 1: outside the transmon regime",
            TransmonRegimeWarning,
            stacklevel=2,
        )
    omega0 = 1 / math.sqrt(spec.inductance * spec.C)
    kerr = kerr / HBAR
    return TransmonParams(
        omega0=omega0,
        delta_omega0=delta / HBAR,
        kerr=kerr,
        kerr6=(eps / 3) * kerr,
        epsilon=eps,
    )


def capacitance_matrix(C_l, C_r, C_J=0.0):
    return np.array([[C_l + C_J, -C_J], [-C_J, C_r + C_J]])


def capacitance_inverse(C_l, C_r, C_J=0.0):
    """Closed-form inverse of the two-node capacitance matrix."""
    _positive("C_l", C_l)
    _positive("C_r", C_r)
    if not (C_J >= 0 and math.isfinite(C_J)):
        raise DomainError(f"C_J must be non-negative and finite, got {C_J!r}")
    D = C_l * C_r + C_l * C_J + C_r * C_J
    if D == 0 or not math.isfinite(D):
        raise SingularMatrixError(f"capacitance determinant is {D!r}")
    return np.array([[C_r + C_J, C_J], [C_J, C_l + C_J]]) / D


@dataclass(frozen=True)
class CoupledCircuitSpec:
    """Two transmons joined by an inductor ``L_J`` or a capacitor ``C_J``.

    ``L_J = inf`` means no inductive branch. Only one coupling type at a time is
    supported.
    """

    left: TransmonSpec
    right: TransmonSpec
    L_J: float = math.inf
    C_J: float = 0.0

    def __post_init__(self):
        if not self.L_J > 0:
            raise DomainError(f"L_J must be positive or inf, got {self.L_J!r}")
        if not (self.C_J >= 0 and math.isfinite(self.C_J)):
            raise DomainError(f"C_J must be non-negative, got {self.C_J!r}")

    @property
    def capacitive(self):
        return self.C_J > 0

    def swapped(self):
        return CoupledCircuitSpec(self.right, self.left, self.L_J, self.C_J)


@dataclass(frozen=True)
class CoupledParams:
    """Site frequencies and RWA hopping for two coupled transmons.

    The hopping enters as ``-hbar * hopping_J * (a_l^dag a_r + h.c.)``. It is
    non-negative for inductive coupling. The capacitive branch flips its sign.
    """

    omega0_left: float
    omega0_right: float
    hopping_J: float
    L_left: float
    L_right: float
    capacitive: bool = False


def coupled_params(spec: CoupledCircuitSpec) -> CoupledParams:
    l, r = spec.left, spec.right
    if spec.capacitive and math.isfinite(spec.L_J):
        raise UnsupportedCouplingError(
            "mixed capacitive and inductive coupling is not supported; use one branch"
        )
    if spec.capacitive:
        # charging terms of C^{-1}: the diagonal sets each effective shunt capacitance,
        # the off-diagonal couples the charges with the opposite sign to the inductor
        cinv = capacitance_inverse(l.C, r.C, spec.C_J)
        C_l, C_r = 1 / cinv[0, 0], 1 / cinv[1, 1]
        L_l, L_r = l.inductance, r.inductance
        w_l, w_r = 1 / math.sqrt(C_l * L_l), 1 / math.sqrt(C_r * L_r)
        J = -0.5 * cinv[0, 1] * math.sqrt(C_l * C_r) * math.sqrt(w_l * w_r)
        return CoupledParams(w_l, w_r, J, L_l, L_r, capacitive=True)

    inv_LJ = 0.0 if math.isinf(spec.L_J) else 1 / spec.L_J
    L_l = 1 / (inv_LJ + l.E_J / PHI0**2)
    L_r = 1 / (inv_LJ + r.E_J / PHI0**2)
    w_l, w_r = 1 / math.sqrt(l.C * L_l), 1 / math.sqrt(r.C * L_r)
    J = 0.5 * math.sqrt(L_l * L_r * inv_LJ**2) * math.sqrt(w_l * w_r)
    return CoupledParams(w_l, w_r, J, L_l, L_r)


@dataclass(frozen=True)
class ModulationSpec:
    """Harmonic modulation ``E_J(t) = E_J0 + e_J cos(omega_M t + phase)``."""

    e_J: float
    omega_M: float
    phase: float = 0.0

    def __post_init__(self):
        if not (self.e_J >= 0 and math.isfinite(self.e_J)):
            raise DomainError(f"e_J must be non-negative, got {self.e_J!r}")
        _positive("omega_M", self.omega_M)


def modulation_depth(spec: CoupledCircuitSpec, mod: ModulationSpec, side="left"):
    """First-order swing of a site frequency (rad/s) under junction modulation."""
    if side not in ("left", "right"):
        raise DomainError(f"side must be 'left' or 'right', got {side!r}")
    site = spec.left if side == "left" else spec.right
    E0 = site.E_J
    if mod.e_J / E0 >= MAX_MODULATION_RATIO:
        warnings.warn(
            f"e_J / E_J0 = {mod.e_J / E0:.3g} is not small; first-order depth is unreliable",
            WeakModulationWarning,
            stacklevel=2,
        )
    params = coupled_params(spec)
    omega0 = params.omega0_left if side == "left" else params.omega0_right
    if math.isinf(spec.L_J):
        return 0.5 * omega0 * mod.e_J / E0
    return 0.5 * omega0 * mod.e_J * spec.L_J / (PHI0**2 + E0 * spec.L_J)


# pump_term_select

BEAM_SPLITTER = "beam-splitter"
TWO_MODE_SQUEEZE = "two-mode-squeeze"
SELF = "self"


@dataclass(frozen=True)
class PumpTerm:
    """One quadratic term made resonant by the pump.

    ``modes = (i, j)`` reads as ``a_i a_j^dag`` for beam-splitter terms and
    ``a_i^dag a_j^dag`` for squeezing terms (``i == j`` for single-mode squeezing).
    """

    kind: str
    modes: tuple[int, int]
    detuning: float
    phase: float = 0.0
    conjugate: bool = False


def default_pump_tolerance(mode_freqs):
    f = np.sort(np.asarray(mode_freqs, dtype=float))
    if f.size < 2:
        return 1e-3 * abs(f[0]) if f.size else 0.0
    return 1e-3 * np.min(np.diff(f))


def pump_term_select(mode_freqs, pump_freq, tolerance=None, pump_phase=0.0):
    """Quadratic terms of ``[sum_i (a_i + a_i^dag)]^2`` resonant with a pump.

    Every ordered product ``(a_i + a_i^dag)(a_j + a_j^dag)`` is expanded and each
    term's rotating-frame frequency compared with the pump frequency. Returns terms
    together with their Hermitian partners. Raises ``AmbiguousPumpError`` if terms
    of different kinds resonate at once.
    """
    f = [float(x) for x in mode_freqs]
    if tolerance is None:
        tolerance = default_pump_tolerance(f)
    if not tolerance > 0:
        raise DomainError(f"tolerance must be positive, got {tolerance!r}")
    for i, j in itertools.combinations(range(len(f)), 2):
        if abs(f[i] - f[j]) <= tolerance:
            raise DomainError(f"modes {i} and {j} are not distinct within tolerance")

    found = {}
    for i, j in itertools.product(range(len(f)), repeat=2):
        candidates = []
        if i != j:
            candidates.append((BEAM_SPLITTER, abs(f[i] - f[j])))
            candidates.append((TWO_MODE_SQUEEZE, f[i] + f[j]))
        else:
            candidates.append((SELF, 2 * f[i]))
        for kind, freq in candidates:
            detuning = abs(pump_freq - freq)
            if detuning <= tolerance:
                key = (kind, min(i, j), max(i, j))
                found[key] = detuning

    families = sorted({k[0] for k in found})
    if len(families) > 1:
        raise AmbiguousPumpError(families)

    terms = []
    for (kind, i, j), detuning in sorted(found.items(), key=lambda kv: (kv[0][1], kv[0][2])):
        if kind == BEAM_SPLITTER:
            # a_i a_j^dag carries the locked pump phase, its partner the opposite
            terms.append(PumpTerm(kind, (i, j), detuning, pump_phase))
            terms.append(PumpTerm(kind, (j, i), detuning, -pump_phase, conjugate=True))
        else:
            terms.append(PumpTerm(kind, (i, j), detuning, pump_phase))
            terms.append(PumpTerm(kind, (i, j), detuning, -pump_phase, conjugate=True))
    return terms
