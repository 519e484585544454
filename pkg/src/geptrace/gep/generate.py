"""Seeded instance generation for GEP experiments and check suites."""

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from ..errors import BadSpectrumSpec
from ..linalg.matcore import Matrix, Vector
from .problem import GepProblem


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _symmetrize(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + m.T)


def random_orthogonal(d: int, rng: np.random.Generator) -> Matrix:
    """Haar-distributed orthogonal matrix (QR of a Gaussian matrix with sign fix)."""
    q, r = np.linalg.qr(rng.standard_normal((d, d)))
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    return q * signs


def parse_spectrum(spec: Union[str, Sequence[float]], d: int) -> Vector:
    """
    Parse a spectrum specification.

    Accepts an explicit descending, non-negative list of d values (as a
    sequence or a comma-separated string) or "gap:g", meaning
    lambda_i = 1 + g (d - i) for i = 1..d.

    Raises:
        BadSpectrumSpec: If the specification is malformed
    """
    if isinstance(spec, str):
        text = spec.strip()
        if text.startswith("gap:"):
            try:
                g = float(text[4:])
            except ValueError:
                raise BadSpectrumSpec(f"invalid gap in spectrum spec '{spec}'")
            if not np.isfinite(g) or g < 0:
                raise BadSpectrumSpec(f"gap must be finite and non-negative, got {g}")
            return _frozen(1.0 + g * (d - np.arange(1, d + 1, dtype=np.float64)))
        try:
            values = [float(token) for token in text.split(",") if token.strip()]
        except ValueError:
            raise BadSpectrumSpec(f"spectrum spec '{spec}' is neither a number list nor 'gap:g'")
    else:
        values = [float(v) for v in spec]

    spectrum = np.array(values, dtype=np.float64)
    if spectrum.size != d:
        raise BadSpectrumSpec(f"spectrum has {spectrum.size} values, expected d={d}")
    if not np.all(np.isfinite(spectrum)):
        raise BadSpectrumSpec("spectrum values must be finite")
    if np.any(spectrum < 0):
        raise BadSpectrumSpec("spectrum values must be non-negative")
    if np.any(np.diff(spectrum) > 0):
        raise BadSpectrumSpec("spectrum values must be in descending order")
    return _frozen(spectrum)


def rank_deficient_spectrum(d: int, q: int) -> Vector:
    """q positive eigenvalues q, q-1, ..., 1 followed by d - q exact zeros."""
    if not 0 <= q <= d:
        raise BadSpectrumSpec(f"rank q must be in 0..{d}, got {q}")
    spectrum = np.zeros(d)
    spectrum[:q] = np.arange(q, 0, -1, dtype=np.float64)
    return _frozen(spectrum)


def from_spectrum(spectrum: Vector, rng: np.random.Generator) -> Matrix:
    """Q diag(spectrum) Q^T for a random orthogonal Q."""
    q = random_orthogonal(len(spectrum), rng)
    return _symmetrize((q * np.asarray(spectrum)) @ q.T)


def spd_with_condition(d: int, cond: float, rng: np.random.Generator) -> Matrix:
    """
    Random symmetric positive definite matrix with eigenvalues geometrically spaced in [1, cond].

    cond = 1 yields the identity exactly.
    """
    if not np.isfinite(cond) or cond < 1.0:
        raise BadSpectrumSpec(f"B condition number must be >= 1, got {cond}")
    if cond == 1.0:
        return np.eye(d)
    eigenvalues = np.geomspace(cond, 1.0, d) if d > 1 else np.array([1.0])
    return from_spectrum(eigenvalues, rng)


def random_symmetric(d: int, rng: np.random.Generator, scale: float = 1.0) -> Matrix:
    """Symmetric matrix with Gaussian entries."""
    g = rng.standard_normal((d, d))
    return _symmetrize(g) * scale


def random_psd(
    d: int,
    rng: np.random.Generator,
    rank: Optional[int] = None,
    scale: float = 1.0,
) -> Matrix:
    """G G^T / cols for a Gaussian d x rank factor (rank d by default)."""
    cols = d if rank is None else rank
    g = rng.standard_normal((d, cols))
    return _symmetrize(g @ g.T) * (scale / max(cols, 1))


def random_pd(d: int, rng: np.random.Generator, floor: float = 0.5) -> Matrix:
    """Random PSD matrix shifted by floor * I."""
    return random_psd(d, rng) + floor * np.eye(d)


def random_orthonormal_columns(d: int, k: int, rng: np.random.Generator) -> Matrix:
    """d x k matrix with orthonormal columns."""
    return random_orthogonal(d, rng)[:, :k]


def random_b_orthonormal(p: GepProblem, k: int, rng: np.random.Generator) -> Matrix:
    """Random W with W^T B W = I_k (W = B^{-1/2} Q for orthonormal Q)."""
    return p.b_power(-1) @ random_orthonormal_columns(p.d, k, rng)


def heavy_tailed_scale(rng: np.random.Generator, max_exponent: float = 3.0) -> float:
    """Log-uniform scale in [10^-max_exponent, 10^max_exponent]."""
    return float(10.0 ** rng.uniform(-max_exponent, max_exponent))


@dataclass(frozen=True, eq=False)
class GeneratedInstance:
    """A generated (A, B) pair with the recipe that produced it."""

    A: Matrix
    B: Matrix
    spectrum: Vector
    b_condition: float
    seed: int
    planted: bool

    def problem(self) -> GepProblem:
        return GepProblem(self.A, self.B)


def make_instance(
    d: int,
    spectrum: Union[str, Sequence[float]],
    b_cond: float = 1.0,
    seed: int = 0,
    planted: bool = False,
) -> GeneratedInstance:
    """
    Generate A = Q Lambda Q^T and B = P Lambda_B P^T from one seeded generator.

    With planted=True, A = B^{1/2} Q Lambda Q^T B^{1/2}, so that the
    generalized spectrum of (A, B) is exactly Lambda. Otherwise only the
    ordinary spectrum of A is Lambda.

    Raises:
        BadSpectrumSpec: If the spectrum or condition number is invalid
    """
    if d < 1:
        raise BadSpectrumSpec(f"dimension must be positive, got {d}")
    lam = parse_spectrum(spectrum, d)
    rng = np.random.default_rng(seed)

    a = from_spectrum(lam, rng)
    b = spd_with_condition(d, b_cond, rng)

    if planted:
        b_half = GepProblem(np.eye(d), b).b_power(1)
        a = _symmetrize(b_half @ a @ b_half)

    return GeneratedInstance(_frozen(a), _frozen(b), lam, float(b_cond), seed, planted)
