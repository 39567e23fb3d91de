"""Exception and warning types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the domain of an operation."""


class SingularMatrixError(DomainError):
    pass


class UnsupportedCouplingError(DomainError):
    pass


class BesselRangeError(DomainError, OverflowError):
    pass


class ResonanceError(DomainError):
    """A bond is too far from any integer multiple of the modulation frequency."""

    def __init__(self, bond, detuning):
        self.bond = bond
        self.detuning = detuning
        super().__init__(
            f"bond {bond} is off-resonant: fractional detuning {detuning:.4g} "
            f"(|detuning| must be < 0.05)"
        )


class AmbiguousPumpError(DomainError):
    def __init__(self, families):
        self.families = families
        super().__init__(
            "pump frequency resonates with more than one term family: "
            + ", ".join(families)
        )


class GapClosingError(DomainError):
    """The Bloch spectrum is gapless, so the topological quantity is undefined."""


class StepSizeError(DomainError):
    pass


class TransmonRegimeWarning(UserWarning):
    pass


class WeakModulationWarning(UserWarning):
    pass
