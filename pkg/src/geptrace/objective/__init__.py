"""The unconstrained objective h(W; A, B), its gradient and the perspective functional."""

from .varobj import (
    Objective,
    h_value,
    h_gradient,
    perspective_value,
    perspective_radius,
    b_orthonormalize,
)

__all__ = [
    "Objective",
    "h_value",
    "h_gradient",
    "perspective_value",
    "perspective_radius",
    "b_orthonormalize",
]
