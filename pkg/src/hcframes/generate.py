"""Seeded pseudo-random atomic frames.

Samples are complex Gaussian algebra elements, weights are uniform in
[0.5, 2).  Per block the synthesis matrix is (m n_i) x (k n_i), so a
generic instance is a frame iff m >= k and a Riesz basis iff m == k.
"""
from __future__ import annotations

import numpy as np

from . import algebra as alg
from .algebra import AlgebraShape
from .frames import Frame, frame_bounds, gram_realization
from .measure import make_atomic
from .module import ModuleVector

RIESZ_MIN_GRAM_EIGENVALUE = 1e-3
MAX_ATTEMPTS = 10_000

# shapes with small total dimension; k * dim(A) <= 16 is enforced separately
SHAPES = [(1,), (2,), (1, 1), (2, 1), (1, 1, 1), (3,), (1, 2)]


class InfeasibleError(ValueError):
    pass


def random_atomic_frame(rng: np.random.Generator, shape: AlgebraShape, rank: int, atoms: int,
                        zero_atoms=()) -> Frame:
    if atoms < 1:
        raise InfeasibleError("need at least one atom")
    if rank < 1:
        raise InfeasibleError("rank must be positive")
    weights = rng.uniform(0.5, 2.0, size=atoms)
    nodes = np.arange(atoms, dtype=float)
    vectors = []
    for j in range(atoms):
        f = ModuleVector.random(shape, rank, rng)
        vectors.append(0.0 * f if j in zero_atoms else f)
    return Frame.from_vectors(make_atomic(nodes, weights), vectors)


def gram_min_eigenvalue(F: Frame) -> float:
    return alg.spectrum_bounds(gram_realization(F))[0]


def random_riesz_basis(rng: np.random.Generator, shape: AlgebraShape, rank: int, atoms: int,
                       max_attempts: int = MAX_ATTEMPTS) -> Frame:
    """Rejection-sample until lambda_min(V) >= 1e-3."""
    if atoms != rank:
        raise InfeasibleError(
            f"a Riesz basis of A^{rank} over {shape} needs exactly {rank} atoms, got {atoms}")
    for _ in range(max_attempts):
        F = random_atomic_frame(rng, shape, rank, atoms)
        if gram_min_eigenvalue(F) >= RIESZ_MIN_GRAM_EIGENVALUE:
            return F
    raise InfeasibleError(f"no Riesz basis found in {max_attempts} attempts")


def _near(value: float, top: float, tol: float) -> bool:
    rel = value / (1.0 + max(top, 0.0))
    return tol / 10 <= rel <= 10 * tol


def random_instance(rng: np.random.Generator, tol: float = 1e-9, kind: str = None,
                    max_dim: int = 16) -> Frame:
    """A random atomic frame with k * dim(A) <= max_dim.

    ``kind`` is one of "riesz" (m = k), "overcomplete" (m > k) or "degenerate"
    (overcomplete with zero samples); chosen at random when omitted.
    Instances whose frame or Gram spectra fall within a decade of the
    decision threshold are redrawn.
    """
    while True:
        dims = SHAPES[int(rng.integers(len(SHAPES)))]
        shape = AlgebraShape(dims)
        k_max = max(1, min(3, max_dim // shape.dim))
        rank = int(rng.integers(1, k_max + 1))
        which = kind or ("riesz", "overcomplete", "degenerate")[int(rng.integers(3))]
        if which == "riesz":
            F = random_atomic_frame(rng, shape, rank, rank)
        elif which == "overcomplete":
            F = random_atomic_frame(rng, shape, rank, rank + int(rng.integers(1, 4)))
        else:
            atoms = rank + int(rng.integers(1, 3))
            F = random_atomic_frame(rng, shape, rank, atoms, zero_atoms={int(rng.integers(atoms))})
        b = frame_bounds(F)
        if b.lower <= tol * (1 + b.upper):
            continue
        lo_v, hi_v = alg.spectrum_bounds(gram_realization(F))
        if _near(b.lower, b.upper, tol) or _near(lo_v, hi_v, tol):
            continue
        return F


def generate_frame(seed: int, atoms: int, rank: int, blocks, riesz: bool = False) -> Frame:
    shape = AlgebraShape(tuple(blocks))
    rng = np.random.default_rng(seed)
    if riesz:
        return random_riesz_basis(rng, shape, rank, atoms)
    return random_atomic_frame(rng, shape, rank, atoms)
