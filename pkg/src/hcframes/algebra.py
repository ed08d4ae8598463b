"""Finite-dimensional C*-algebras realized as direct sums of full matrix
algebras M_{n_1} + ... + M_{n_r}.

Elements are immutable tuples of square complex blocks.  The unit is the
identity in every block; the norm is the largest singular value over blocks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from numbers import Number

import numpy as np

from ._linalg import gauss_inverse, jacobi_eigh, min_singular_value
from .errors import ShapeError, SingularError

DEFAULT_TOL = 1e-9
HERMITIAN_TOL = 1e-10


@dataclass(frozen=True)
class AlgebraShape:
    block_dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(n) for n in self.block_dims)
        if not dims:
            raise ValueError("an algebra shape needs at least one block")
        if any(n < 1 for n in dims):
            raise ValueError(f"block dimensions must be >= 1, got {dims}")
        object.__setattr__(self, "block_dims", dims)

    @property
    def dim(self) -> int:
        """Complex dimension of the algebra."""
        return sum(n * n for n in self.block_dims)

    def amplify(self, k: int) -> "AlgebraShape":
        """Shape of M_k(A), which is again a direct sum of matrix blocks."""
        return AlgebraShape(tuple(k * n for n in self.block_dims))

    def __str__(self):
        return "+".join(f"M{n}" for n in self.block_dims)


def _frozen(m):
    m = np.array(m, dtype=complex)
    m.setflags(write=False)
    return m


class AlgebraElement:
    def __init__(self, shape: AlgebraShape, blocks):
        blocks = tuple(_frozen(b) for b in blocks)
        if len(blocks) != len(shape.block_dims):
            raise ShapeError(f"{len(blocks)} blocks for shape {shape}")
        for i, (b, n) in enumerate(zip(blocks, shape.block_dims)):
            if b.shape != (n, n):
                raise ShapeError(f"block {i} has shape {b.shape}, expected ({n}, {n})")
        self.shape = shape
        self.blocks = blocks

    # constructors

    @classmethod
    def scalar(cls, shape: AlgebraShape, z: complex = 1.0) -> "AlgebraElement":
        return cls(shape, [z * np.eye(n) for n in shape.block_dims])

    @classmethod
    def zeros(cls, shape: AlgebraShape) -> "AlgebraElement":
        return cls.scalar(shape, 0.0)

    @classmethod
    def identity(cls, shape: AlgebraShape) -> "AlgebraElement":
        return cls.scalar(shape, 1.0)

    @classmethod
    def diag(cls, *values) -> "AlgebraElement":
        """Element of the commutative algebra C + ... + C."""
        shape = AlgebraShape((1,) * len(values))
        return cls(shape, [[[v]] for v in values])

    @classmethod
    def random(cls, shape: AlgebraShape, rng: np.random.Generator, scale: float = 1.0):
        return cls(shape, [
            scale * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2)
            for n in shape.block_dims
        ])

    # arithmetic sugar; module-level functions below are the reference surface

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, -other)

    def __neg__(self):
        return AlgebraElement(self.shape, [-b for b in self.blocks])

    def __mul__(self, other):
        if isinstance(other, Number):
            return AlgebraElement(self.shape, [other * b for b in self.blocks])
        return NotImplemented

    __rmul__ = __mul__

    def __matmul__(self, other):
        return mul(self, other)

    def __repr__(self):
        inner = ", ".join(np.array2string(b, precision=4) for b in self.blocks)
        return f"AlgebraElement({self.shape}, [{inner}])"

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.shape == other.shape and all(
            np.array_equal(x, y) for x, y in zip(self.blocks, other.blocks))

    __hash__ = None

    # cached spectral data; safe because elements are immutable

    @cached_property
    def _eigen(self):
        return [jacobi_eigh(b) for b in self.blocks]

    @cached_property
    def _norm(self):
        return max(math.sqrt(max(float(jacobi_eigh(b.conj().T @ b)[0][-1]), 0.0))
                   for b in self.blocks)

    def to_dense(self) -> np.ndarray:
        """Block-diagonal complex matrix of total size sum(n_i)."""
        size = sum(self.shape.block_dims)
        out = np.zeros((size, size), dtype=complex)
        o = 0
        for b in self.blocks:
            n = b.shape[0]
            out[o:o + n, o:o + n] = b
            o += n
        return out


def _check_same(a: AlgebraElement, b: AlgebraElement):
    if a.shape != b.shape:
        raise ShapeError(f"algebra shapes differ: {a.shape} vs {b.shape}")


def add(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    _check_same(a, b)
    return AlgebraElement(a.shape, [x + y for x, y in zip(a.blocks, b.blocks)])


def mul(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    _check_same(a, b)
    return AlgebraElement(a.shape, [x @ y for x, y in zip(a.blocks, b.blocks)])


def star(a: AlgebraElement) -> AlgebraElement:
    return AlgebraElement(a.shape, [x.conj().T for x in a.blocks])


def abs_sq_star(a: AlgebraElement) -> AlgebraElement:
    """|a*|^2 = a a*, the integrand of the L^2(Omega, A) inner product."""
    return mul(a, star(a))


def hermitian_defect(a: AlgebraElement) -> float:
    return max(float(np.max(np.abs(b - b.conj().T), initial=0.0)) for b in a.blocks)


def is_hermitian(a: AlgebraElement, tol: float = HERMITIAN_TOL) -> bool:
    return hermitian_defect(a) <= tol * (1.0 + norm(a))


def hermitian_eigen(a: AlgebraElement):
    """Per-block ``(eigenvalues, eigenvectors)`` of a Hermitian element.

    Eigenvalues ascend within each block; eigenvectors are the columns.
    """
    if not is_hermitian(a):
        raise ValueError(f"element is not Hermitian (defect {hermitian_defect(a):.3e})")
    return a._eigen


def spectrum_bounds(a: AlgebraElement) -> tuple[float, float]:
    """(min, max) eigenvalue over all blocks of a Hermitian element."""
    eig = hermitian_eigen(a)
    return (min(float(w[0]) for w, _ in eig), max(float(w[-1]) for w, _ in eig))


def norm(a: AlgebraElement) -> float:
    return a._norm


def is_positive(a: AlgebraElement, tol: float = DEFAULT_TOL) -> bool:
    scale = tol * (1.0 + norm(a))
    if hermitian_defect(a) > scale:
        return False
    return all(float(w[0]) >= -scale for w, _ in a._eigen)


def leq(a: AlgebraElement, b: AlgebraElement, tol: float = DEFAULT_TOL) -> bool:
    """a <= b in the positivity order."""
    _check_same(a, b)
    return is_positive(b - a, tol)


def inverse(a: AlgebraElement) -> AlgebraElement:
    out = []
    for i, b in enumerate(a.blocks):
        try:
            out.append(gauss_inverse(b))
        except SingularError as exc:
            raise SingularError(
                f"block {i} is singular (min singular value {exc.min_singular_value:.3e})",
                block=i, min_singular_value=exc.min_singular_value) from None
    return AlgebraElement(a.shape, out)


def sqrt_positive(a: AlgebraElement, tol: float = DEFAULT_TOL) -> AlgebraElement:
    if not is_positive(a, tol):
        raise ValueError("square root requested for a non-positive element")
    out = []
    for w, v in a._eigen:
        root = np.sqrt(np.clip(w, 0.0, None))
        out.append((v * root) @ v.conj().T)
    return AlgebraElement(a.shape, out)


def min_singular_values(a: AlgebraElement) -> list[float]:
    return [min_singular_value(b) for b in a.blocks]


def allclose(a: AlgebraElement, b: AlgebraElement, atol: float = 1e-10) -> bool:
    _check_same(a, b)
    return all(np.allclose(x, y, rtol=0.0, atol=atol) for x, y in zip(a.blocks, b.blocks))
