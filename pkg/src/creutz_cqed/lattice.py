"""The bosonic Creutz ladder: real-space builder, Bloch form, bands, symmetries.

Energies are in units of the leg hopping. Site ``2n`` is ``a_n`` and site
``2n + 1`` is ``b_n``. Bloch states carry amplitude ``exp(-i k n)`` on rung
``n`` (``k = 2 pi k_index / N``), which makes the real-space ladder reproduce

    n0 = -2 cos k cos(phi),  nx = -2 td cos k - tv,  nz = 2 sin k sin(phi).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .model import Hop, LatticeModel

SIGMA_0 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]])
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

SYMMETRY_TOL = 1e-10


def a_site(n):
    return 2 * n


def b_site(n):
    return 2 * n + 1


def build_creutz(N, td, tv, phi, boundary="open"):
    """Real-space Creutz ladder with ``N`` rungs.

    ``tv`` may be a scalar or a length-``N`` per-rung profile. Each rung carries
    hopping ``-tv[n] (b_n^dag a_n + h.c.)``.
    """
    if int(N) != N or N < 2:
        raise DomainError(f"ladder needs N >= 2 rungs, got {N!r}")
    N = int(N)
    if boundary not in ("open", "periodic"):
        raise DomainError(f"boundary must be 'open' or 'periodic', got {boundary!r}")
    tv = np.asarray(tv, dtype=float)
    if tv.ndim > 1 or (tv.ndim == 1 and tv.size != N):
        raise DomainError(f"tv profile needs {N} entries, got shape {tv.shape}")
    tv = np.broadcast_to(tv, (N,))
    leg = -np.exp(1j * phi)

    hops = []
    n_links = N if boundary == "periodic" else N - 1
    for n in range(n_links):
        m = (n + 1) % N
        hops.append(Hop(b_site(n), a_site(m), -td))
        hops.append(Hop(a_site(n), b_site(m), -td))
        hops.append(Hop(a_site(m), a_site(n), leg))
        hops.append(Hop(b_site(n), b_site(m), leg))
    for n in range(N):
        if tv[n] != 0:
            hops.append(Hop(b_site(n), a_site(n), -tv[n]))

    labels = tuple(f"{leg_name}{n}" for n in range(N) for leg_name in "ab")
    meta = {"N": N, "td": td, "tv": tv.copy(), "phi": phi}
    return LatticeModel(np.zeros(2 * N), tuple(hops), labels, boundary, meta)


@dataclass(frozen=True)
class BlochPoint:
    k: int
    n0: float
    nx: float
    nz: float

    @property
    def matrix(self):
        return self.n0 * SIGMA_0 + self.nx * SIGMA_X + self.nz * SIGMA_Z


def momentum_indices(N):
    """Integer momenta in (-N/2, N/2]."""
    return np.arange(-((N - 1) // 2), N // 2 + 1)


def bloch_components(kappa, td, tv, phi):
    """(n0, nx, nz) at wavenumber ``kappa`` (radians); vectorised over ``kappa``."""
    c, s = np.cos(kappa), np.sin(kappa)
    return -2 * c * np.cos(phi), -2 * td * c - tv, 2 * s * np.sin(phi)


def bloch_point(k, N, td, tv, phi):
    n0, nx, nz = bloch_components(2 * np.pi * k / N, td, tv, phi)
    return BlochPoint(int(k), float(n0), float(nx), float(nz))


def bloch_matrices(N, td, tv, phi, ks=None):
    """Stack of 2x2 Bloch matrices, one per momentum in ``ks``."""
    ks = momentum_indices(N) if ks is None else np.asarray(ks)
    n0, nx, nz = bloch_components(2 * np.pi * ks / N, td, tv, phi)
    return (
        n0[:, None, None] * SIGMA_0
        + nx[:, None, None] * SIGMA_X
        + nz[:, None, None] * SIGMA_Z
    )


@dataclass(frozen=True)
class BandStructure:
    k: np.ndarray
    n0: np.ndarray
    nx: np.ndarray
    nz: np.ndarray
    E_minus: np.ndarray
    E_plus: np.ndarray
    vectors: np.ndarray  # (N, 2, 2): columns are the lower and upper eigenvectors

    @property
    def gap(self):
        return np.sqrt(self.nx**2 + self.nz**2)

    @property
    def flatness(self):
        return (np.ptp(self.E_minus), np.ptp(self.E_plus))

    def energies(self):
        return np.concatenate([self.E_minus, self.E_plus])


def band_structure(N, td, tv, phi):
    ks = momentum_indices(N)
    n0, nx, nz = bloch_components(2 * np.pi * ks / N, td, tv, phi)
    lam = np.hypot(nx, nz)
    _, vecs = np.linalg.eigh(bloch_matrices(N, td, tv, phi, ks))
    return BandStructure(ks, n0, nx, nz, n0 - lam, n0 + lam, vecs)


def symmetry_check(N, td, tv, phi):
    """Worst-case residuals of the three ladder symmetries over the zone.

    Returns a dict with ``trs`` = max ||sx h_k sx - h_-k||, ``phs`` =
    max ||sz h_k sz + h_-k|| and ``chiral`` = max ||sy h_k sy + h_k||.
    """
    ks = momentum_indices(N)
    h = bloch_matrices(N, td, tv, phi, ks)
    h_minus = bloch_matrices(N, td, tv, phi, -ks)
    norm = lambda m: np.linalg.norm(m, ord=2, axis=(1, 2)).max()
    return {
        "trs": norm(SIGMA_X @ h @ SIGMA_X - h_minus),
        "phs": norm(SIGMA_Z @ h @ SIGMA_Z + h_minus),
        "chiral": norm(SIGMA_Y @ h @ SIGMA_Y + h),
    }
