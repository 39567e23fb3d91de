"""Harmonic on-site modulation -> static complex hoppings.

In the frame that absorbs each site's modulated frequency, the bond
``a_i^dag a_j`` picks up the factor

    exp(i (w0_i - w0_j) t) * exp(i A sin(w_M t + Theta)),
    A exp(i Theta) = (D_i exp(i phi_i) - D_j exp(i phi_j)) / w_M,

with ``D`` the modulation depths. Its n-th Fourier harmonic is
``J_n(A) exp(i n Theta)`` (Jacobi-Anger), and harmonic
``n = round((w0_j - w0_i) / w_M)`` is the one left static.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .bessel import bessel_jn
from .errors import DomainError, ResonanceError
from .model import Hop, LatticeModel

RESONANCE_TOL = 0.05


def wrap_phase(phi):
    """Map an angle into (-pi, pi]."""
    w = math.remainder(float(phi), 2 * math.pi)
    return math.pi if w == -math.pi else w


@dataclass(frozen=True)
class DriveSpec:
    """Per-site drive ``w0_m + depth_m cos(omega_M t + phase_m)``.

    ``omega0`` is optional; when absent the static frequencies come from the
    lattice model the drive is applied to.
    """

    depths: tuple[float, ...]
    omega_M: float
    phases: tuple[float, ...]
    omega0: tuple[float, ...] | None = None

    def __post_init__(self):
        depths = tuple(float(d) for d in np.atleast_1d(self.depths))
        phases = tuple(wrap_phase(p) for p in np.atleast_1d(self.phases))
        if len(depths) != len(phases):
            raise DomainError(f"{len(depths)} depths but {len(phases)} phases")
        if not (self.omega_M > 0 and math.isfinite(self.omega_M)):
            raise DomainError(f"omega_M must be positive, got {self.omega_M!r}")
        if any(not (d >= 0 and math.isfinite(d)) for d in depths):
            raise DomainError("modulation depths must be finite and non-negative")
        object.__setattr__(self, "depths", depths)
        object.__setattr__(self, "phases", phases)
        if self.omega0 is not None:
            omega0 = tuple(float(w) for w in np.atleast_1d(self.omega0))
            if len(omega0) != len(depths):
                raise DomainError(f"{len(omega0)} static frequencies for {len(depths)} sites")
            object.__setattr__(self, "omega0", omega0)

    @property
    def size(self):
        return len(self.depths)

    @classmethod
    def uniform(cls, n_sites, depth, omega_M, phases, omega0=None):
        return cls((depth,) * n_sites, omega_M, phases, omega0)

    def modulation(self, t):
        """On-site frequency swing at time ``t`` (array over sites)."""
        return np.asarray(self.depths) * np.cos(self.omega_M * t + np.asarray(self.phases))


@dataclass(frozen=True)
class SidebandCoupling:
    """Static amplitude of harmonic ``order``: ``J * J_order(argument) * exp(i order angle)``."""

    order: int
    amplitude: complex
    argument: float
    angle: float


def _check_bond(drive, i, j):
    if not (0 <= i < drive.size and 0 <= j < drive.size) or i == j:
        raise DomainError(f"bond ({i}, {j}) invalid for a {drive.size}-site drive")


def sideband_coupling(J, drive: DriveSpec, n, i=1, j=0) -> SidebandCoupling:
    """Closed-form harmonic ``n`` of the modulated bond ``a_i^dag a_j``.

    The default bond (1, 0) is the two-site hop ``a_2^dag a_1``. With equal depths
    this is ``J i^n exp(i n (phi_1 + phi_2) / 2) J_n((2 D / w_M) sin((phi_2 - phi_1) / 2))``.
    Unequal depths use the general phasor.
    """
    _check_bond(drive, i, j)
    n = int(n)
    Di, Dj = drive.depths[i], drive.depths[j]
    pi_, pj = drive.phases[i], drive.phases[j]
    if Di == Dj:
        x = 2 * Di / drive.omega_M * math.sin((pi_ - pj) / 2)
        theta = (math.pi + pi_ + pj) / 2
        amp = J * (1j**n) * np.exp(1j * n * (pi_ + pj) / 2) * bessel_jn(n, x)
        return SidebandCoupling(n, complex(amp), x, theta)
    phasor = (Di * np.exp(1j * pi_) - Dj * np.exp(1j * pj)) / drive.omega_M
    x = abs(phasor)
    theta = float(np.angle(phasor))
    amp = J * bessel_jn(n, x) * np.exp(1j * n * theta)
    return SidebandCoupling(n, complex(amp), x, theta)


def sideband_quadrature(J, drive: DriveSpec, n, tau=0.0, i=1, j=0):
    """Harmonic ``n`` of the modulated bond by direct time averaging.

    Averages ``J exp(i [x_i sin(w t + phi_i) - x_j sin(w t + phi_j)]) exp(-i n w t)``
    over one period starting at ``tau``, using adaptive Gauss-Kronrod quadrature
    on the real and imaginary parts. Serves as the oracle for
    :func:`sideband_coupling`.
    """
    _check_bond(drive, i, j)
    w = drive.omega_M
    xi, xj = drive.depths[i] / w, drive.depths[j] / w
    pi_, pj = drive.phases[i], drive.phases[j]
    T = 2 * math.pi / w

    def integrand(s):
        # s in [0, 1] spans one period starting at tau
        theta = w * (tau + s * T)
        return np.exp(1j * (xi * math.sin(theta + pi_) - xj * math.sin(theta + pj) - n * theta))

    opts = dict(epsabs=1e-13, epsrel=1e-13, limit=400)
    re = quad(lambda s: integrand(s).real, 0.0, 1.0, **opts)[0]
    im = quad(lambda s: integrand(s).imag, 0.0, 1.0, **opts)[0]
    return J * complex(re, im)


def floquet_zone_shifts(omega0, omega_M):
    """Integer shifts K_m folding every site frequency next to site 0's."""
    omega0 = np.asarray(omega0, dtype=float)
    return np.rint((omega0[0] - omega0) / omega_M).astype(int)


def effective_hamiltonian(model: LatticeModel, drive: DriveSpec, order=None) -> LatticeModel:
    """Time-averaged static model of a harmonically driven lattice.

    Each bond keeps its resonant harmonic ``n = round((w0_j - w0_i) / w_M)``
    unless ``order`` forces one harmonic for every bond, in which case the
    resonance check is skipped. On-site energies are folded into site 0's
    Floquet zone. The leftover fractional detuning is stored on each bond.
    """
    if drive.size != model.size:
        raise DomainError(f"drive has {drive.size} sites, model has {model.size}")
    omega0 = model.onsite
    if drive.omega0 is not None and not np.allclose(drive.omega0, omega0, rtol=1e-12, atol=0):
        raise DomainError("drive static frequencies disagree with the model's on-site energies")
    w = drive.omega_M

    hops = []
    for h in model.hops:
        ratio = (omega0[h.j] - omega0[h.i]) / w
        if order is None:
            n = int(np.rint(ratio))
            if abs(ratio - n) >= RESONANCE_TOL:
                raise ResonanceError((h.i, h.j), ratio - n)
        else:
            n = int(order)
        # n-th harmonic of a_i^dag a_j, per unit amplitude
        factor = sideband_coupling(1.0, drive, n, h.i, h.j).amplitude
        hops.append(Hop(h.i, h.j, h.amplitude * factor, detuning=ratio - n))

    onsite = omega0 + floquet_zone_shifts(omega0, w) * w
    meta = dict(model.meta, drive=drive, order=order)
    return LatticeModel(onsite, tuple(hops), model.labels, model.boundary, meta)
