"""Parameter pair of the generalized Baker's transformation."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Params:
    """Horizontal contraction rates of the two branches, each in (0, 1).

    beta1 contracts the upper-half image (symbol +1), beta2 the lower-half
    image (symbol -1).
    """

    beta1: float
    beta2: float

    def __post_init__(self):
        for name in ("beta1", "beta2"):
            v = getattr(self, name)
            if not 0.0 < v < 1.0:
                raise ValueError(f"{name} must lie in the open interval (0, 1), got {v!r}")

    @property
    def contracting(self) -> bool:
        """Branch images leave a gap: beta1 + beta2 < 1 (Cantor-band attractor)."""
        return self.beta1 + self.beta2 < 1.0

    @property
    def covering(self) -> bool:
        """Branch images cover the square: beta1 + beta2 >= 1."""
        return self.beta1 + self.beta2 >= 1.0

    @property
    def subcritical_product(self) -> bool:
        """beta1 * beta2 < 1/4, the side of the bifurcation without full-dimension measures."""
        return self.beta1 * self.beta2 < 0.25

    @property
    def max_rate(self) -> float:
        return max(self.beta1, self.beta2)
