"""Suites for the trace inequalities and the perspective bound."""

from typing import List

import numpy as np

from ..gep import generate
from ..inequalities.report import CheckReport
from ..inequalities.trace import (
    m_spectrum_report,
    perspective_bound,
    psd_svd_is_eig,
    psd_von_neumann,
    trace_chain,
    von_neumann,
)
from ..linalg.matcore import op_norm
from ..objective.varobj import perspective_radius
from .base import BaseSuite, SuiteInputs


def _shared_frame_pair(rng: np.random.Generator, rows: int, cols: int):
    n = min(rows, cols)
    u = generate.random_orthonormal_columns(rows, n, rng)
    v = generate.random_orthonormal_columns(cols, n, rng)
    sx = np.sort(rng.uniform(0.0, 3.0, size=n))[::-1]
    sy = np.sort(rng.uniform(0.0, 3.0, size=n))[::-1]
    return (u * sx) @ v.T, (u * sy) @ v.T


class VonNeumannSuite(BaseSuite):
    """Frobenius inner product against the sum of matched singular values."""

    @property
    def name(self) -> str:
        return "vonneumann"

    @property
    def description(self) -> str:
        return "<X, Y> <= sum sigma_j(X) sigma_j(Y), equality on shared singular frames"

    def random_trial(self, rng: np.random.Generator, trial: int) -> List[CheckReport]:
        rows = self.dimension(rng, 1, 7)
        cols = self.dimension(rng, 1, 7)
        scale = generate.heavy_tailed_scale(rng)
        x = scale * rng.standard_normal((rows, cols))
        y = rng.standard_normal((rows, cols))
        shared_x, shared_y = _shared_frame_pair(rng, rows, cols)
        return [
            von_neumann(x, y, self.ineq_tol, self.eq_tol),
            von_neumann(shared_x, shared_y, self.ineq_tol, self.eq_tol),
        ]

    def from_inputs(self, inputs: SuiteInputs, rng: np.random.Generator) -> List[CheckReport]:
        (x,) = inputs.require(self.name, "A")
        y = inputs.W if inputs.W is not None else inputs.require(self.name, "B")[0]
        return [von_neumann(x, y, self.ineq_tol, self.eq_tol)]


class PsdVonNeumannSuite(BaseSuite):
    """Trace inequality for a PSD matrix against a symmetric one."""

    @property
    def name(self) -> str:
        return "psd-vn"

    @property
    def description(self) -> str:
        return "<A, M> <= sum lambda_i(A) mu_i(M), equality on shared eigenframes"

    def random_trial(self, rng: np.random.Generator, trial: int) -> List[CheckReport]:
        d = self.dimension(rng, 1, 8)
        a = generate.random_psd(d, rng, scale=generate.heavy_tailed_scale(rng))
        m = generate.random_symmetric(d, rng)

        q = generate.random_orthogonal(d, rng)
        lam = np.sort(rng.uniform(0.0, 4.0, size=d))[::-1]
        mu = np.sort(rng.uniform(-2.0, 2.0, size=d))[::-1]
        shared_a = (q * lam) @ q.T
        shared_m = (q * mu) @ q.T
        return [
            psd_von_neumann(a, m, self.ineq_tol, self.eq_tol),
            psd_von_neumann(0.5 * (shared_a + shared_a.T), 0.5 * (shared_m + shared_m.T), self.ineq_tol, self.eq_tol),
        ]

    def from_inputs(self, inputs: SuiteInputs, rng: np.random.Generator) -> List[CheckReport]:
        (a,) = inputs.require(self.name, "A")
        m = inputs.W if inputs.W is not None else inputs.require(self.name, "B")[0]
        return [psd_von_neumann(a, m, self.ineq_tol, self.eq_tol)]


class SvdEigSuite(BaseSuite):
    """The SVD of a PSD matrix is an eigendecomposition."""

    @property
    def name(self) -> str:
        return "svd-eig"

    @property
    def description(self) -> str:
        return "left and right singular vectors of PSD A coincide and are eigenvectors"

    def random_trial(self, rng: np.random.Generator, trial: int) -> List[CheckReport]:
        d = self.dimension(rng, 1, 7)
        rank = int(rng.integers(1, d + 1))
        x = rng.standard_normal(d)
        x /= np.linalg.norm(x)
        return [
            psd_svd_is_eig(generate.random_psd(d, rng, rank=rank, scale=generate.heavy_tailed_scale(rng))),
            psd_svd_is_eig(np.outer(x, x)),
        ]

    def from_inputs(self, inputs: SuiteInputs, rng: np.random.Generator) -> List[CheckReport]:
        (a,) = inputs.require(self.name, "A")
        return [psd_svd_is_eig(a)]


class MSpectrumSuite(BaseSuite):
    """Spectrum of W W^T (2I - W W^T) against 2 d^2 - d^4."""

    @property
    def name(self) -> str:
        return "m-spectrum"

    @property
    def description(self) -> str:
        return "eigenvalues of W W^T (2I - W W^T) equal 2 d_i^2 - d_i^4 and stay <= 1"

    def random_trial(self, rng: np.random.Generator, trial: int) -> List[CheckReport]:
        d = self.dimension(rng, 2, 8)
        k = int(rng.integers(1, d + 1))
        return [
            m_spectrum_report(generate.heavy_tailed_scale(rng, 1.0) * rng.standard_normal((d, k))),
            m_spectrum_report(generate.random_orthonormal_columns(d, k, rng)),
            m_spectrum_report(np.zeros((d, k))),
        ]

    def from_inputs(self, inputs: SuiteInputs, rng: np.random.Generator) -> List[CheckReport]:
        (w,) = inputs.require(self.name, "W")
        return [m_spectrum_report(w)]


class TraceChainSuite(BaseSuite):
    """The trace-inequality chain behind the unconstrained bound with B = I."""

    @property
    def name(self) -> str:
        return "chain"

    @property
    def description(self) -> str:
        return "h(W; A, I) = <A, M> <= sum lambda_i mu_i <= sum of top-k eigenvalues"

    def random_trial(self, rng: np.random.Generator, trial: int) -> List[CheckReport]:
        d = self.dimension(rng, 2, 8)
        k = int(rng.integers(1, d + 1))
        a = generate.random_psd(d, rng, rank=int(rng.integers(1, d + 1)))
        w = generate.heavy_tailed_scale(rng, 1.0) * rng.standard_normal((d, k))
        return trace_chain(a, w, k, self.ineq_tol, self.eq_tol)

    def from_inputs(self, inputs: SuiteInputs, rng: np.random.Generator) -> List[CheckReport]:
        a, w = inputs.require(self.name, "A", "W")
        return trace_chain(a, w, int(w.shape[1]), self.ineq_tol, self.eq_tol)


class PerspectiveSuite(BaseSuite):
    """Matrix perspective functional trace(Lambda M (2I - M)) against trace(Lambda)."""

    @property
    def name(self) -> str:
        return "perspective"

    @property
    def description(self) -> str:
        return "trace(Lambda M (2I - M)) <= trace(Lambda), equality only at M = I, <= 0 beyond R*"

    def random_trial(self, rng: np.random.Generator, trial: int) -> List[CheckReport]:
        p = self.dimension(rng, 1, 6)
        weights = np.diag(rng.uniform(0.1, 10.0, size=p))
        m = generate.random_psd(p, rng, scale=generate.heavy_tailed_scale(rng, 2.0))

        radius = perspective_radius(weights)
        direction = generate.random_psd(p, rng, rank=int(rng.integers(1, p + 1)))
        beyond = direction * (radius * rng.uniform(1.01, 3.0) / op_norm(direction))
        return (
            perspective_bound(weights, m, self.ineq_tol, self.eq_tol)
            + perspective_bound(weights, np.eye(p), self.ineq_tol, self.eq_tol)
            + perspective_bound(weights, beyond, self.ineq_tol, self.eq_tol)
        )

    def from_inputs(self, inputs: SuiteInputs, rng: np.random.Generator) -> List[CheckReport]:
        weights, m = inputs.require(self.name, "A", "W")
        return perspective_bound(weights, m, self.ineq_tol, self.eq_tol)
