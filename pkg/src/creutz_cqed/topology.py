"""Topological characterisation of the Creutz ladder and its zero modes."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, GapClosingError
from .lattice import (
    a_site,
    b_site,
    band_structure,
    bloch_components,
    build_creutz,
)

GAP_TOL = 1e-8
MIN_SAMPLES = 64


@dataclass(frozen=True)
class TopologyReport:
    winding: int
    ratio: float | None
    critical: bool
    berry_phase: float | None = None
    curve: np.ndarray | None = None  # (samples, 2): (nx, nz) points

    def as_dict(self):
        return {"winding": self.winding, "ratio": self.ratio, "critical": self.critical}


def _ratio(td, tv):
    return None if td == 0 else tv / td


def winding_number(td, tv, phi, samples=256):
    """Winding of the closed curve (nx_k, nz_k) around the origin.

    Counterclockwise is positive. The angle increments between consecutive
    samples are summed and the total rounded to a multiple of 2 pi.
    """
    if samples < MIN_SAMPLES:
        raise DomainError(f"need at least {MIN_SAMPLES} samples, got {samples}")
    kappa = 2 * np.pi * np.arange(samples) / samples
    _, nx, nz = bloch_components(kappa, td, tv, phi)
    z = nx + 1j * nz
    if np.min(np.abs(z)) < GAP_TOL:
        raise GapClosingError(
            f"(nx, nz) curve touches the origin: gapless point at tv/td = {_ratio(td, tv)}"
        )
    steps = np.angle(np.roll(z, -1) / z)
    nu = int(np.rint(steps.sum() / (2 * np.pi)))
    degenerate = abs(np.sin(phi)) < GAP_TOL
    return TopologyReport(
        winding=nu,
        ratio=_ratio(td, tv),
        critical=bool(degenerate),
        curve=np.column_stack([nx, nz]),
    )


def wilson_loop_phase(vectors):
    """Berry phase in [0, 2 pi) of a closed loop of band vectors.

    ``vectors`` has shape (N, dim); the loop closes from the last vector back to
    the first. Independent of the phase of each individual vector.
    """
    v = np.asarray(vectors)
    overlaps = np.einsum("ki,ki->k", v.conj(), np.roll(v, -1, axis=0))
    phase = -np.angle(np.prod(overlaps / np.abs(overlaps)))
    return float(np.mod(phase, 2 * np.pi))


def berry_phase(N, td, tv, phi):
    """Berry (Zak) phase of the lower band from a discrete Wilson loop."""
    bands = band_structure(N, td, tv, phi)
    if np.min(bands.gap) < GAP_TOL:
        raise GapClosingError("lower and upper bands touch; Berry phase undefined")
    # momenta run over (-N/2, N/2] in order, so the loop closes back to the first
    return wilson_loop_phase(bands.vectors[:, :, 0])


def circular_distance(a, b):
    d = np.mod(a - b, 2 * np.pi)
    return min(d, 2 * np.pi - d)


def wannier_modes(N):
    """Strong-coupling Wannier states centred between rungs ``n`` and ``n + 1``.

    Returns an array of shape (N, 2, 2N): entry ``[n, 0]`` is the upper-band
    state (energy +2) and ``[n, 1]`` the lower-band state (energy -2) of the
    periodic ladder with phi = pi/2, td = 1, tv = 0.
    """
    w = np.exp(1j * np.pi / 4)
    out = np.zeros((N, 2, 2 * N), dtype=complex)
    for n in range(N):
        m = (n + 1) % N
        up, down = out[n]
        up[a_site(m)] += w.conjugate()
        up[b_site(n)] -= w.conjugate()
        up[a_site(n)] += w
        up[b_site(m)] -= w
        down[a_site(m)] -= w
        down[b_site(n)] -= w
        down[a_site(n)] -= w.conjugate()
        down[b_site(m)] -= w.conjugate()
    return out / 2


def wannier_center(state):
    """Mean rung position of a ladder state, rungs indexed 0..N-1."""
    p = np.abs(np.asarray(state)) ** 2
    rungs = np.arange(p.size) // 2
    return float(np.sum(p * rungs) / np.sum(p))


def edge_zero_modes(N):
    """The two edge states of the open strong-coupling ladder: (left, right)."""
    w = np.exp(1j * np.pi / 4)
    left = np.zeros(2 * N, dtype=complex)
    right = np.zeros(2 * N, dtype=complex)
    left[a_site(0)] = w
    left[b_site(0)] = w.conjugate()
    right[a_site(N - 1)] = w.conjugate()
    right[b_site(N - 1)] = w
    return left / np.sqrt(2), right / np.sqrt(2)


@dataclass(frozen=True)
class DomainWallMode:
    state: np.ndarray
    energy: float
    half_gap: float
    kink: float  # position between rungs where the mass changes sign
    rung_density: np.ndarray
    mass: np.ndarray
    envelope: np.ndarray  # continuum |psi|^2 prediction, normalised to the peak
    decay_rates: tuple[float, float]  # fitted amplitude decay rate (left, right)
    predicted_rates: tuple[float, float]  # continuum |m| / v_F on each side
    lattice_rates: tuple[float, float]  # exact lattice |ln(tv / 2 td)| on each side
    correlation: float  # log |psi|^2 vs continuum log-envelope over the tails


def _half_gap(td, tv_values, phi):
    kappa = np.linspace(0, 2 * np.pi, 4097)
    gaps = []
    for tv in np.unique(tv_values):
        _, nx, nz = bloch_components(kappa, td, tv, phi)
        gaps.append(np.min(np.hypot(nx, nz)))
    return float(min(gaps))


def _continuum_exponent(mass, kink_index, v_F):
    """-|int_{x0}^{x} m / v_F| at rung centres, with x0 between rungs kink_index-1 and kink_index."""
    N = mass.size
    F = np.zeros(N)
    F[kink_index] = 0.5 * mass[kink_index]
    for n in range(kink_index + 1, N):
        F[n] = F[n - 1] + 0.5 * (mass[n - 1] + mass[n])
    F[kink_index - 1] = -0.5 * mass[kink_index - 1]
    for n in range(kink_index - 2, -1, -1):
        F[n] = F[n + 1] - 0.5 * (mass[n] + mass[n + 1])
    # the normalisable solution decays on both sides
    sign = np.sign(mass[-1])
    return -sign * F / v_F


def domain_wall_mode(N, td, tv_profile, phi=np.pi / 2, boundary="open", floor=1e-12):
    """Near-zero mode bound to a sign change of the mass m = 2 td - tv.

    Near-zero eigenstates (|E| below 5% of the bulk half-gap) are mixed so that the
    returned state is the one centred closest to the kink; the open ladder's
    topological end also hosts an edge state at nearly the same energy.
    """
    tv = np.asarray(tv_profile, dtype=float)
    if tv.shape != (N,):
        raise DomainError(f"tv profile needs {N} entries, got shape {tv.shape}")
    mass = 2 * td - tv
    signs = np.sign(mass[mass != 0])
    flips = np.flatnonzero(np.diff(signs) != 0)
    if len(flips) != 1:
        raise DomainError(
            f"mass 2 td - tv must change sign exactly once along the ladder, "
            f"found {len(flips)} sign changes"
        )
    nonzero = np.flatnonzero(mass != 0)
    kink_index = int(nonzero[flips[0] + 1])
    kink = kink_index - 0.5

    model = build_creutz(N, td, tv, phi, boundary)
    H = model.matrix()
    E, U = np.linalg.eigh(H)
    half_gap = _half_gap(td, tv, phi)
    near = np.flatnonzero(np.abs(E) < 0.05 * half_gap)
    if near.size == 0:
        raise DomainError("no in-gap mode found near zero energy")
    sub = U[:, near]
    rung = np.arange(2 * N) // 2
    # position operator restricted to the near-zero subspace
    X = sub.conj().T @ (rung[:, None] * sub)
    centers, mix = np.linalg.eigh(X)
    pick = int(np.argmin(np.abs(centers - kink)))
    state = sub @ mix[:, pick]
    state = state / np.linalg.norm(state)
    energy = float(np.real(state.conj() @ H @ state))

    p = np.abs(state) ** 2
    density = p[0::2] + p[1::2]
    v_F = 2 * abs(np.sin(phi))
    exponent = _continuum_exponent(mass, kink_index, v_F)
    envelope = np.exp(2 * (exponent - exponent.max()))

    # tails only down to `floor` relative to the peak; below that is round-off
    floor = floor * density.max()
    keep = density > floor
    correlation = float(np.corrcoef(np.log(density[keep]), 2 * exponent[keep])[0, 1])

    def fit_rate(idx):
        idx = idx[density[idx] > floor]
        if idx.size < 3:
            return float("nan")
        slope = np.polyfit(np.abs(idx - kink), np.log(density[idx]), 1)[0]
        return float(-slope / 2)

    rungs = np.arange(N)
    left = rungs[(rungs < kink_index - 1)]
    right = rungs[(rungs > kink_index)]
    rates = (fit_rate(left), fit_rate(right))
    predicted = (abs(mass[0]) / v_F, abs(mass[-1]) / v_F)
    with np.errstate(divide="ignore"):
        lattice = tuple(float(abs(np.log(abs(t / (2 * td))))) for t in (tv[0], tv[-1]))
    return DomainWallMode(
        state=state,
        energy=energy,
        half_gap=half_gap,
        kink=kink,
        rung_density=density,
        mass=mass,
        envelope=envelope,
        decay_rates=rates,
        predicted_rates=predicted,
        lattice_rates=lattice,
        correlation=correlation,
    )
