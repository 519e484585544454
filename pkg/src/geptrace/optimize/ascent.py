"""
Plain gradient ascent on h(W; A, B).

No line search and no momentum: W <- W + eta_t * grad h(W), stopping on the
gradient norm. Every call owns its random generator, so ascents on a shared
problem may run concurrently.
"""

import math
from dataclasses import dataclass
from typing import Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..errors import BadK, Diverged
from ..gep.problem import whiten
from ..linalg.matcore import Matrix, Vector, max_abs, op_norm, sym_eig
from ..objective.varobj import Objective, h_gradient, h_value
from ..utils.logging import get_logger

logger = get_logger(__name__)

DIVERGENCE_FACTOR = 10.0
AUTO_STEP_NUMERATOR = 0.1


class AscentConfig(BaseModel):
    """Gradient ascent settings; unset max_iters and grad_tol take size-dependent defaults."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    step_size: Union[Literal["auto"], float] = "auto"
    max_iters: Optional[int] = Field(default=None, ge=1)
    grad_tol: Optional[float] = Field(default=None, gt=0)
    seed: int = 0
    schedule: Literal["constant", "inverse-sqrt"] = "constant"

    @field_validator("step_size")
    @classmethod
    def _positive_step(cls, value):
        if value != "auto" and not (math.isfinite(value) and value > 0):
            raise ValueError(f"step_size must be positive and finite or 'auto', got {value}")
        return value

    @field_validator("grad_tol")
    @classmethod
    def _finite_tol(cls, value):
        if value is not None and not math.isfinite(value):
            raise ValueError("grad_tol must be finite")
        return value

    def resolved_max_iters(self, obj: Objective) -> int:
        return self.max_iters if self.max_iters is not None else 50 * obj.d * obj.k

    def resolved_grad_tol(self, obj: Objective) -> float:
        if self.grad_tol is not None:
            return self.grad_tol
        return 1e-8 * (1.0 + max_abs(obj.problem.A))


@dataclass(frozen=True, eq=False)
class AscentResult:
    """Outcome of one ascent run."""

    W: Matrix
    history: Vector
    iterations: int
    converged: bool
    final_grad_norm: float
    step_size: float
    final_h: float

    @property
    def best_h(self) -> float:
        return float(np.max(self.history))


def _result(w, history, iterations, converged, grad_norm, step, h_at_w) -> AscentResult:
    w = np.array(w)
    w.setflags(write=False)
    hist = np.array(history, dtype=np.float64)
    hist.setflags(write=False)
    return AscentResult(w, hist, iterations, converged, float(grad_norm), step, float(h_at_w))


def auto_step(obj: Objective) -> float:
    """
    eta = 0.1 / (||A||_F (1 + ||B||_F)), or 0.1 when A = 0.
    """
    a_norm = float(np.linalg.norm(obj.problem.A))
    if a_norm == 0.0:
        return AUTO_STEP_NUMERATOR
    b_norm = float(np.linalg.norm(obj.problem.B))
    return AUTO_STEP_NUMERATOR / (a_norm * (1.0 + b_norm))


def init_random(d: int, k: int, B: Matrix, seed: int) -> Matrix:
    """
    Uniform [-1, 1] entries from a seeded generator, rescaled so ||W^T B W||_op <= 1.

    Raises:
        BadK: If k is outside 1..d
    """
    if not 1 <= k <= d:
        raise BadK(f"k must be in 1..{d}, got {k}")
    rng = np.random.default_rng(seed)
    w = rng.uniform(-1.0, 1.0, size=(d, k))
    gram = w.T @ (np.asarray(B) @ w)
    norm = op_norm(0.5 * (gram + gram.T))
    if norm > 0.0:
        w = w / math.sqrt(norm)
    return w


def _step_at(base: float, schedule: str, t: int) -> float:
    if schedule == "inverse-sqrt":
        return base / math.sqrt(1.0 + t)
    return base


def ascend(
    obj: Objective,
    cfg: Optional[AscentConfig] = None,
    w0: Optional[Matrix] = None,
) -> AscentResult:
    """
    Maximize h by gradient ascent from w0 or a seeded random start.

    The loop evaluates h and its gradient at W_t, stops once
    ||grad||_F <= grad_tol, and otherwise takes W_{t+1} = W_t + eta_t grad.
    `iterations` counts the updates taken.

    Args:
        obj: Objective to maximize
        cfg: Ascent settings (defaults when omitted)
        w0: Optional d x k starting point

    Returns:
        AscentResult holding the converged iterate, or the best-h iterate
        with converged=False when max_iters runs out

    Raises:
        Diverged: If h or the gradient becomes non-finite, or h drops below
            -10 * sum(|lambda|)
        ShapeMismatch: If w0 is not d x k
    """
    cfg = cfg or AscentConfig()
    step = auto_step(obj) if cfg.step_size == "auto" else float(cfg.step_size)
    max_iters = cfg.resolved_max_iters(obj)
    grad_tol = cfg.resolved_grad_tol(obj)

    a_tilde, _ = whiten(obj.problem)
    floor = -DIVERGENCE_FACTOR * float(np.sum(np.abs(sym_eig(a_tilde).eigenvalues)))

    if w0 is None:
        w = init_random(obj.d, obj.k, obj.problem.B, cfg.seed)
    else:
        w = np.array(obj.check_shape(w0))

    logger.debug(
        f"ascend: d={obj.d}, k={obj.k}, eta={step:.3e} ({cfg.schedule}), "
        f"max_iters={max_iters}, grad_tol={grad_tol:.3e}"
    )

    history = []
    best = (float("-inf"), w, float("inf"))

    for t in range(max_iters + 1):
        h = h_value(obj, w)
        grad = h_gradient(obj, w)
        if not math.isfinite(h) or not np.all(np.isfinite(grad)) or h < floor:
            raise Diverged(
                f"gradient ascent diverged at iteration {t} (h={h:.6g}, floor {floor:.6g}); "
                f"reduce the step size",
                iteration=t,
                value=h,
            )

        history.append(h)
        grad_norm = float(np.linalg.norm(grad))
        if h > best[0]:
            best = (h, w, grad_norm)

        if grad_norm <= grad_tol:
            logger.debug(f"ascend: converged after {t} iterations, h={h:.12g}")
            return _result(w, history, t, True, grad_norm, step, h)

        if t == max_iters:
            break
        w = w + _step_at(step, cfg.schedule, t) * grad

    best_h, best_w, best_norm = best
    logger.warning(
        f"gradient ascent stopped after {max_iters} iterations without converging "
        f"(best h={best_h:.12g}, gradient norm {best_norm:.3e} > {grad_tol:.3e})"
    )
    return _result(best_w, history, max_iters, False, best_norm, step, best_h)
