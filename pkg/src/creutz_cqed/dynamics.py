"""Single-particle time evolution on static and driven lattices.

Time is measured in inverse units of the model energies (leg hopping = 1 for
the ladder and plaquette, so the plaquette's eta modes rotate as exp(-+2 i t)).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import DomainError, StepSizeError
from .floquet import DriveSpec
from .model import Hop, LatticeModel

NORM_TOL = 1e-9
RENORM_THRESHOLD = 1e-12
MAX_STEP_DRIFT = 1e-6
STEPS_PER_PERIOD = 200


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: np.ndarray  # (len(times), n_sites)
    renormalizations: int = 0

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        if times.ndim != 1 or np.any(np.diff(times) <= 0):
            raise DomainError("trajectory times must be strictly increasing")
        for arr in (times, self.states):
            arr.flags.writeable = False
        object.__setattr__(self, "times", times)

    @property
    def occupations(self):
        return np.abs(self.states) ** 2

    def state_at(self, index):
        return self.states[index]


def occupations(psi):
    return np.abs(np.asarray(psi)) ** 2


def _normalized(psi0):
    psi0 = np.asarray(psi0, dtype=complex).reshape(-1)
    norm = np.linalg.norm(psi0)
    if abs(norm - 1) > NORM_TOL:
        raise DomainError(f"initial state must be normalised, |psi| = {norm!r}")
    return psi0


def _sample_times(times):
    times = np.atleast_1d(np.asarray(times, dtype=float))
    if np.any(np.diff(times) <= 0):
        raise DomainError("sample times must be strictly increasing")
    return times


def site_state(n_sites, site):
    psi = np.zeros(n_sites, dtype=complex)
    psi[site] = 1.0
    return psi


def evolve_static(model: LatticeModel, psi0, times) -> Trajectory:
    """Exact evolution by spectral decomposition, sampled at ``times``."""
    psi0 = _normalized(psi0)
    times = _sample_times(times)
    E, U = model.eigh()
    coeffs = U.conj().T @ psi0
    phases = np.exp(-1j * np.outer(times, E))
    states = (phases * coeffs) @ U.T
    # t = 0 is the identity, not an eigenbasis round trip
    states[times == 0] = psi0
    return Trajectory(times, states)


def max_time_step(model: LatticeModel, drive: DriveSpec):
    fastest = max(drive.omega_M, float(np.max(np.abs(model.onsite))))
    return 2 * math.pi / (STEPS_PER_PERIOD * fastest)


def evolve_driven(
    model: LatticeModel,
    drive: DriveSpec,
    psi0,
    t_final,
    dt,
    times=None,
) -> Trajectory:
    """Integrate ``i dpsi/dt = H(t) psi`` with fixed-step classical RK4.

    ``H(t)`` is the model's matrix plus ``depth_m cos(omega_M t + phase_m)`` on
    the diagonal. Samples are recorded at ``times`` (default: every step), with
    steps between samples no longer than ``dt``. The norm is restored after any
    step that drifts by more than 1e-12. Such repairs are counted in
    ``Trajectory.renormalizations``. A single-step drift above 1e-6 raises
    ``StepSizeError``.
    """
    psi = _normalized(psi0)
    if drive.size != model.size:
        raise DomainError(f"drive has {drive.size} sites, model has {model.size}")
    if not (t_final > 0 and dt > 0):
        raise DomainError("t_final and dt must be positive")
    cap = max_time_step(model, drive)
    if dt > cap * (1 + 1e-12):
        raise StepSizeError(f"dt = {dt:.4g} exceeds the stability cap {cap:.4g}")

    if times is None:
        n_steps = math.ceil(t_final / dt - 1e-9)
        times = np.linspace(0.0, t_final, n_steps + 1)
    else:
        times = _sample_times(times)
        if times[0] < 0 or times[-1] > t_final * (1 + 1e-12):
            raise DomainError("sample times must lie within [0, t_final]")

    H0 = model.matrix()
    depths = np.asarray(drive.depths)
    phases = np.asarray(drive.phases)
    w = drive.omega_M

    def rhs(t, y):
        return -1j * (H0 @ y + (depths * np.cos(w * t + phases)) * y)

    states = np.empty((times.size, model.size), dtype=complex)
    t = 0.0
    repairs = 0
    for k, target in enumerate(times):
        span = target - t
        if span > 0:
            n_sub = math.ceil(span / dt - 1e-9)
            h = span / n_sub
            t0 = t
            for s in range(n_sub):
                ts = t0 + s * h
                k1 = rhs(ts, psi)
                k2 = rhs(ts + h / 2, psi + (h / 2) * k1)
                k3 = rhs(ts + h / 2, psi + (h / 2) * k2)
                k4 = rhs(ts + h, psi + h * k3)
                psi = psi + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
                drift = abs(np.linalg.norm(psi) - 1)
                if drift > MAX_STEP_DRIFT:
                    raise StepSizeError(
                        f"norm drift {drift:.3g} at t = {ts + h:.6g}; reduce dt"
                    )
                if drift > RENORM_THRESHOLD:
                    psi = psi / np.linalg.norm(psi)
                    repairs += 1
            t = target
        states[k] = psi
    return Trajectory(times, states, repairs)


# the single plaquette

PLAQUETTE_SITES = ("a1", "a2", "a3", "a4")
#: plaquette site -> site of the open N = 2 Creutz ladder (order a0, b0, a1, b1)
PLAQUETTE_TO_LADDER = (1, 3, 0, 2)


def plaquette_model() -> LatticeModel:
    """Four-mode plaquette with real diagonals and +-i legs.

    ``H = -(a3^dag a2 + a1^dag a4 + h.c.) - i (a1^dag a2 + a4^dag a3 - h.c.)``
    (sites 0-3 here stand for modes 1-4).
    """
    hops = (
        Hop(2, 1, -1.0),
        Hop(0, 3, -1.0),
        Hop(0, 1, -1j),
        Hop(3, 2, -1j),
    )
    return LatticeModel(np.zeros(4), hops, PLAQUETTE_SITES)


def plaquette_closed_form(t):
    """Amplitudes and occupations of |a1(t)> on the plaquette.

    Returns ``(amplitudes, occupations)`` with shapes ``(..., 4)``.
    """
    t = np.asarray(t, dtype=float)
    c, s = np.cos(2 * t), np.sin(2 * t)
    amps = 0.5 * np.stack([1 + c + 0j, s + 0j, 1j * (1 - c), 1j * s], axis=-1)
    return amps, np.abs(amps) ** 2


def plaquette_modes():
    """The eigenmodes (eta_+, eta_-, eta_1, eta_2) as single-particle states.

    Each state is ``eta^dag |vac>``, so its amplitudes are the complex conjugates
    of the mode operator's coefficients. Returns ``(states, energies)`` with
    ``states`` of shape (4, 4), one state per row.
    """
    w = np.exp(1j * np.pi / 4)
    wc = w.conjugate()
    coeffs = np.array(
        [
            [w / 2, wc / 2, -wc / 2, -w / 2],
            [wc / 2, w / 2, w / 2, wc / 2],
            [w / math.sqrt(2), 0, wc / math.sqrt(2), 0],
            [0, wc / math.sqrt(2), 0, w / math.sqrt(2)],
        ]
    )
    return coeffs.conj(), np.array([2.0, -2.0, 0.0, 0.0])


# period extraction

def oscillation_period(times, signal, max_omega=None, min_cycles=1.0):
    """Period of the dominant sinusoid in ``signal``.

    A least-squares sinusoid ``a + b cos(w t) + c sin(w t)`` is scanned over a
    frequency grid. The best grid point is then refined by bounded scalar
    minimisation of the residual.
    """
    t = np.asarray(times, dtype=float)
    y = np.asarray(signal, dtype=float)
    span = t[-1] - t[0]
    w_min = 2 * math.pi * min_cycles / span
    if max_omega is None:
        max_omega = math.pi / np.median(np.diff(t))
    if max_omega <= w_min:
        raise DomainError("signal too short to resolve a full oscillation")

    def residual(w):
        A = np.column_stack([np.ones_like(t), np.cos(w * t), np.sin(w * t)])
        coef, *_ = np.linalg.lstsq(A, y, rcond=None)
        r = y - A @ coef
        return float(r @ r)

    step = 0.25 * math.pi / span
    grid = np.arange(w_min, max_omega, step)
    res = np.concatenate([_scan(t, y, grid[i : i + 256]) for i in range(0, grid.size, 256)])
    best = int(np.argmin(res))
    lo = grid[max(best - 1, 0)]
    hi = grid[min(best + 1, grid.size - 1)]
    opt = minimize_scalar(residual, bounds=(lo, hi), method="bounded", options={"xatol": 1e-10})
    return 2 * math.pi / opt.x


def _scan(t, y, ws):
    # batched least squares through the 3x3 normal equations
    c, s = np.cos(np.outer(ws, t)), np.sin(np.outer(ws, t))
    one = np.ones_like(c)
    basis = np.stack([one, c, s], axis=1)  # (w, 3, T)
    gram = basis @ basis.transpose(0, 2, 1)
    rhs = basis @ y
    coef = np.linalg.solve(gram, rhs[..., None])[..., 0]
    return y @ y - np.einsum("wi,wi->w", coef, rhs)


def two_site_model(J=1.0, omega0=(0.0, 0.0)):
    """The driven dimer ``w0_1 n_1 + w0_2 n_2 - J (a_2^dag a_1 + h.c.)``."""
    return LatticeModel(np.asarray(omega0, dtype=float), (Hop(1, 0, -J),), ("1", "2"))
