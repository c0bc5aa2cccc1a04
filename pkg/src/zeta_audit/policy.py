from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidInput


@dataclass(frozen=True)
class PrecisionPolicy:
    """Numerical knobs shared by every evaluator.

    All arithmetic runs in IEEE double precision; ``working_digits`` is
    validated and recorded in reports but cannot exceed what a double holds.
    """

    working_digits: int = 15
    series_terms: int = 64
    tol_ref: float = 1e-10
    tol_claim: float = 1e-9
    residual_floor: float = 1e-300

    def __post_init__(self) -> None:
        if not 15 <= self.working_digits <= 17:
            raise InvalidInput(f"working_digits must be in [15, 17] for double precision, got {self.working_digits}")
        if self.series_terms < 16:
            raise InvalidInput(f"series_terms must be >= 16, got {self.series_terms}")
        if not 0 < self.tol_ref < self.tol_claim:
            raise InvalidInput(f"need 0 < tol_ref < tol_claim, got {self.tol_ref} / {self.tol_claim}")
        if self.residual_floor <= 0:
            raise InvalidInput("residual_floor must be positive")


DEFAULT_POLICY = PrecisionPolicy()
