"""Single-particle tight-binding models."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class Hop:
    """The term ``amplitude * a_i^dag a_j + h.c.``.

    ``detuning`` is bookkeeping left by the Floquet reduction: the fractional
    part of the bond's frequency mismatch in units of the drive frequency.
    """

    i: int
    j: int
    amplitude: complex
    detuning: float = 0.0


@dataclass(frozen=True)
class LatticeModel:
    """N sites with real on-site energies and a list of complex hoppings.

    Each hop stores one direction only; its Hermitian partner is implied.
    """

    onsite: np.ndarray
    hops: tuple[Hop, ...] = ()
    labels: tuple[str, ...] = ()
    boundary: str = "open"
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        onsite = np.array(self.onsite, dtype=float).reshape(-1)
        onsite.flags.writeable = False
        object.__setattr__(self, "onsite", onsite)
        n = onsite.size
        hops = tuple(h if isinstance(h, Hop) else Hop(*h) for h in self.hops)
        object.__setattr__(self, "hops", hops)
        for h in hops:
            if not (0 <= h.i < n and 0 <= h.j < n):
                raise DomainError(f"hop ({h.i}, {h.j}) out of range for {n} sites")
            if h.i == h.j:
                raise DomainError(f"self-hop on site {h.i}; use the on-site energy")
        labels = tuple(self.labels) or tuple(str(k) for k in range(n))
        if len(labels) != n:
            raise DomainError(f"{len(labels)} labels for {n} sites")
        object.__setattr__(self, "labels", labels)
        if self.boundary not in ("open", "periodic"):
            raise DomainError(f"boundary must be 'open' or 'periodic', got {self.boundary!r}")

    def __eq__(self, other):
        if not isinstance(other, LatticeModel):
            return NotImplemented
        return (
            np.array_equal(self.onsite, other.onsite)
            and self.hops == other.hops
            and self.labels == other.labels
            and self.boundary == other.boundary
        )

    __hash__ = None

    @property
    def size(self):
        return self.onsite.size

    def matrix(self):
        """Dense Hamiltonian; ``H[i, j]`` is the coefficient of ``a_i^dag a_j``."""
        H = np.diag(self.onsite.astype(complex))
        for h in self.hops:
            H[h.i, h.j] += h.amplitude
            H[h.j, h.i] += np.conj(h.amplitude)
        return H

    def bond(self, i, j):
        """Summed amplitude of ``a_i^dag a_j`` over all listed hops."""
        total = 0j
        for h in self.hops:
            if (h.i, h.j) == (i, j):
                total += h.amplitude
            elif (h.i, h.j) == (j, i):
                total += np.conj(h.amplitude)
        return total

    def eigh(self):
        return np.linalg.eigh(self.matrix())

    def with_onsite(self, onsite):
        return LatticeModel(onsite, self.hops, self.labels, self.boundary, dict(self.meta))
