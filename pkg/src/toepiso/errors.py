"""Exception types shared across the package."""


class ToepisoError(Exception):
    """Base class for all package-specific errors."""


class ShapeError(ToepisoError, ValueError):
    """Operands have incompatible or invalid dimensions."""


class ContractError(ToepisoError, ValueError):
    """An input violates a documented precondition."""


class NotNilpotentError(ContractError):
    """A matrix required to be nilpotent is not, within tolerance."""

    def __init__(self, power_norm):
        self.power_norm = float(power_norm)
        super().__init__(
            "matrix is not nilpotent within tolerance: "
            f"norm of its n-th power is {self.power_norm:.6e}"
        )


class NotJordanBlockError(ContractError):
    """A matrix is not unitarily similar to the full shift block."""

    def __init__(self, quantity, value):
        self.quantity = quantity
        self.value = float(value)
        super().__init__(f"not shift-like: {quantity} = {self.value:.6e}")


class CertificateError(ToepisoError):
    """An internally produced certificate failed re-validation."""


class SymbolicSizeError(ToepisoError):
    """A symbolic computation exceeds the configured size cap."""
