"""Suites for the eigenvalue bounds: Rayleigh, interlacing, constrained, unconstrained, improvement."""

from typing import List

import numpy as np

from ..gep import generate
from ..gep.problem import GepProblem, solve_dense, top_k
from ..inequalities.report import CheckReport
from ..inequalities.spectral import (
    constrained_bound,
    haemers_interlace,
    improvement_bound,
    rayleigh_bounds,
    unconstrained_bound,
)
from ..linalg.matcore import SymEig, sym_eig
from ..objective.varobj import Objective, b_orthonormalize
from .base import BaseSuite, SuiteInputs


class RayleighSuite(BaseSuite):
    """Rayleigh quotient bounds on vectors inside and orthogonal to leading eigenspaces."""

    @property
    def name(self) -> str:
        return "rayleigh"

    @property
    def description(self) -> str:
        return "u^T A u / u^T u against lambda_i for containment hypotheses"

    def _probe(self, eig: SymEig, rng: np.random.Generator) -> List[CheckReport]:
        d = eig.dim
        i = int(rng.integers(1, d + 1))
        frame = eig.eigenvectors
        probes = [
            (frame[:, :i] @ rng.standard_normal(i), "in_top"),
            (frame[:, i - 1:] @ rng.standard_normal(d - i + 1), "orth_top"),
            (np.array(frame[:, i - 1]), "in_top"),
        ]
        reports = []
        for u, case in probes:
            report, follow_up = rayleigh_bounds(eig, u, i, case, self.ineq_tol, self.eq_tol)
            reports.append(report)
            if follow_up is not None:
                reports.append(follow_up)
        return reports

    def random_trial(self, rng: np.random.Generator, trial: int) -> List[CheckReport]:
        d = self.dimension(rng, 2, 8)
        a = generate.random_symmetric(d, rng, generate.heavy_tailed_scale(rng))
        return self._probe(sym_eig(a), rng)

    def from_inputs(self, inputs: SuiteInputs, rng: np.random.Generator) -> List[CheckReport]:
        (a,) = inputs.require(self.name, "A")
        eig = sym_eig(a)
        reports = []
        for i in range(1, eig.dim + 1):
            report, follow_up = rayleigh_bounds(
                eig, eig.eigenvectors[:, i - 1], i, "in_top", self.ineq_tol, self.eq_tol
            )
            reports.extend(r for r in (report, follow_up) if r is not None)
        return reports + self._probe(eig, rng)


class HaemersSuite(BaseSuite):
    """Interlacing of compressions S^T A S."""

    @property
    def name(self) -> str:
        return "haemers"

    @property
    def description(self) -> str:
        return "mu_i(S^T A S) <= lambda_i(A) for orthonormal S, with eigenvector propagation"

    def random_trial(self, rng: np.random.Generator, trial: int) -> List[CheckReport]:
        d = self.dimension(rng, 3, 9)
        k = int(rng.integers(1, d + 1))
        a = generate.random_symmetric(d, rng, generate.heavy_tailed_scale(rng))
        s = generate.random_orthonormal_columns(d, k, rng)
        top = sym_eig(a).eigenvectors[:, :k]
        return haemers_interlace(a, s, self.ineq_tol, self.eq_tol) + haemers_interlace(
            a, top, self.ineq_tol, self.eq_tol
        )

    def from_inputs(self, inputs: SuiteInputs, rng: np.random.Generator) -> List[CheckReport]:
        (a,) = inputs.require(self.name, "A")
        if inputs.W is not None:
            return haemers_interlace(a, inputs.W, self.ineq_tol, self.eq_tol)
        k = inputs.resolve_k(self.name, a.shape[0])
        return haemers_interlace(a, sym_eig(a).eigenvectors[:, :k], self.ineq_tol, self.eq_tol)


def _random_problem(rng: np.random.Generator, d: int, psd: bool) -> GepProblem:
    scale = generate.heavy_tailed_scale(rng)
    a = generate.random_psd(d, rng, scale=scale) if psd else generate.random_symmetric(d, rng, scale)
    b = generate.spd_with_condition(d, float(rng.uniform(1.0, 20.0)), rng)
    return GepProblem(a, b)


class ConstrainedSuite(BaseSuite):
    """trace(W^T A W) on B-orthonormal W against the top-k eigenvalue sum."""

    @property
    def name(self) -> str:
        return "constrained"

    @property
    def description(self) -> str:
        return "trace(W^T A W) <= sum of top-k eigenvalues, equality exactly on top-k frames"

    def _frames(self, p: GepProblem, k: int, rng: np.random.Generator) -> List[CheckReport]:
        sol = solve_dense(p)
        frames = [
            generate.random_b_orthonormal(p, k, rng),
            top_k(sol, k, self.gap_tol).basis,
            sol.eigenvectors[:, p.d - k:],
        ]
        return [
            constrained_bound(p, w, k, sol, self.ineq_tol, self.eq_tol, self.gap_tol)
            for w in frames
        ]

    def random_trial(self, rng: np.random.Generator, trial: int) -> List[CheckReport]:
        d = self.dimension(rng, 2, 10)
        k = int(rng.integers(1, d + 1))
        return self._frames(_random_problem(rng, d, psd=False), k, rng)

    def from_inputs(self, inputs: SuiteInputs, rng: np.random.Generator) -> List[CheckReport]:
        p = self.problem(inputs)
        k = inputs.resolve_k(self.name, p.d)
        if inputs.W is not None:
            return [constrained_bound(p, inputs.W, k, None, self.ineq_tol, self.eq_tol, self.gap_tol)]
        return self._frames(p, k, rng)


class UnconstrainedSuite(BaseSuite):
    """h(W) on arbitrary W against the top-k eigenvalue sum, including the rank-deficient case."""

    @property
    def name(self) -> str:
        return "unconstrained"

    @property
    def description(self) -> str:
        return "h(W) <= sum of top-k eigenvalues for A PSD; maximizers span top-k subspaces"

    def _checks(self, p: GepProblem, k: int, rng: np.random.Generator) -> List[CheckReport]:
        sol = solve_dense(p)
        scale = generate.heavy_tailed_scale(rng)
        candidates = [
            scale * rng.standard_normal((p.d, k)),
            top_k(sol, k, self.gap_tol).basis,
        ]
        return [
            unconstrained_bound(p, w, k, sol, self.eq_tol, self.gap_tol) for w in candidates
        ]

    def _degenerate(self, rng: np.random.Generator) -> List[CheckReport]:
        # rank q < k: W* Phi stays a maximizer when Phi stretches the zero block
        d = self.dimension(rng, 4, 10)
        k = int(rng.integers(2, d))
        q = int(rng.integers(1, k))
        instance = generate.make_instance(
            d,
            generate.rank_deficient_spectrum(d, q),
            b_cond=float(rng.uniform(1.0, 10.0)),
            seed=int(rng.integers(0, 2**31)),
            planted=True,
        )
        p = instance.problem()
        sol = solve_dense(p)
        phi = np.eye(k)
        phi[q:, q:] = np.diag(rng.uniform(1.5, 2.5, size=k - q))
        w = top_k(sol, k, self.gap_tol).basis @ phi
        return [unconstrained_bound(p, w, k, sol, self.eq_tol, self.gap_tol)]

    def random_trial(self, rng: np.random.Generator, trial: int) -> List[CheckReport]:
        d = self.dimension(rng, 2, 10)
        k = int(rng.integers(1, d + 1))
        return self._checks(_random_problem(rng, d, psd=True), k, rng) + self._degenerate(rng)

    def from_inputs(self, inputs: SuiteInputs, rng: np.random.Generator) -> List[CheckReport]:
        p = self.problem(inputs)
        k = inputs.resolve_k(self.name, p.d)
        if inputs.W is not None:
            return [unconstrained_bound(p, inputs.W, k, None, self.eq_tol, self.gap_tol)]
        return self._checks(p, k, rng)


class ImprovementSuite(BaseSuite):
    """B-orthonormalization never lowers h."""

    @property
    def name(self) -> str:
        return "improve"

    @property
    def description(self) -> str:
        return "h(W) <= h(W (W^T B W)^{-1/2}) for A PSD"

    def random_trial(self, rng: np.random.Generator, trial: int) -> List[CheckReport]:
        d = self.dimension(rng, 2, 10)
        k = int(rng.integers(1, d + 1))
        obj = Objective(_random_problem(rng, d, psd=True), k)
        w = generate.heavy_tailed_scale(rng, 1.0) * rng.standard_normal((d, k))
        improved = b_orthonormalize(obj, w)
        return [
            improvement_bound(obj, w, self.ineq_tol),
            improvement_bound(obj, improved, self.ineq_tol),
        ]

    def from_inputs(self, inputs: SuiteInputs, rng: np.random.Generator) -> List[CheckReport]:
        p = self.problem(inputs)
        (w,) = inputs.require(self.name, "W")
        return [improvement_bound(Objective(p, int(w.shape[1])), w, self.ineq_tol)]
