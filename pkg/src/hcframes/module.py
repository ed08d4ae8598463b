"""The standard Hilbert A-module A^k and its adjointable operators.

Vectors are k-tuples of algebra elements with <f, g> = sum_q f_q g_q*.
Operators are k x k matrices over A acting on the right of the tuple,
(Tf)_p = sum_q f_q c[q][p], which keeps them A-linear for the left action.
Since End*(A^k) = M_k(A) is itself a direct sum of matrix blocks (block i
has size k*n_i), an operator is stored as an AlgebraElement of the amplified
shape; products, adjoints, inverses and the positivity order come for free.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import algebra as alg
from .algebra import AlgebraElement, AlgebraShape
from .errors import ShapeError


@dataclass(frozen=True, eq=False)
class ModuleVector:
    shape: AlgebraShape
    entries: tuple[AlgebraElement, ...]

    def __post_init__(self):
        entries = tuple(self.entries)
        if not entries:
            raise ShapeError("module vectors need rank >= 1")
        for e in entries:
            if e.shape != self.shape:
                raise ShapeError(f"entry of shape {e.shape} in a vector over {self.shape}")
        object.__setattr__(self, "entries", entries)

    @property
    def rank(self) -> int:
        return len(self.entries)

    @classmethod
    def of(cls, *entries: AlgebraElement) -> "ModuleVector":
        return cls(entries[0].shape, entries)

    @classmethod
    def zeros(cls, shape: AlgebraShape, rank: int) -> "ModuleVector":
        return cls(shape, (AlgebraElement.zeros(shape),) * rank)

    @classmethod
    def basis(cls, shape: AlgebraShape, rank: int, q: int) -> "ModuleVector":
        """The vector with the unit in slot q and zeros elsewhere."""
        zero, one = AlgebraElement.zeros(shape), AlgebraElement.identity(shape)
        return cls(shape, tuple(one if p == q else zero for p in range(rank)))

    @classmethod
    def random(cls, shape: AlgebraShape, rank: int, rng: np.random.Generator, scale=1.0):
        return cls(shape, tuple(AlgebraElement.random(shape, rng, scale) for _ in range(rank)))

    @classmethod
    def from_row_blocks(cls, shape: AlgebraShape, rows) -> "ModuleVector":
        """Inverse of :meth:`row_blocks`."""
        k = rows[0].shape[1] // shape.block_dims[0]
        entries = []
        for q in range(k):
            entries.append(AlgebraElement(shape, [
                r[:, q * n:(q + 1) * n] for r, n in zip(rows, shape.block_dims)]))
        return cls(shape, tuple(entries))

    def row_blocks(self) -> list[np.ndarray]:
        """Per algebra block i, the n_i x (k n_i) matrix [f_1 ... f_k]."""
        return [np.hstack([e.blocks[i] for e in self.entries])
                for i in range(len(self.shape.block_dims))]

    def __add__(self, other):
        _check_vectors(self, other)
        return ModuleVector(self.shape, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other):
        _check_vectors(self, other)
        return ModuleVector(self.shape, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self):
        return ModuleVector(self.shape, tuple(-a for a in self.entries))

    def __mul__(self, z):
        return ModuleVector(self.shape, tuple(z * a for a in self.entries))

    __rmul__ = __mul__


def _check_vectors(f: ModuleVector, g: ModuleVector):
    if f.shape != g.shape or f.rank != g.rank:
        raise ShapeError(f"vectors differ: rank {f.rank} over {f.shape} vs rank {g.rank} over {g.shape}")


def inner(f: ModuleVector, g: ModuleVector) -> AlgebraElement:
    """A-valued inner product, A-linear in the first slot."""
    _check_vectors(f, g)
    blocks = [fr @ gr.conj().T for fr, gr in zip(f.row_blocks(), g.row_blocks())]
    return AlgebraElement(f.shape, blocks)


def module_action(a: AlgebraElement, f: ModuleVector) -> ModuleVector:
    if a.shape != f.shape:
        raise ShapeError(f"cannot act by {a.shape} on a module over {f.shape}")
    return ModuleVector(f.shape, tuple(alg.mul(a, e) for e in f.entries))


def vec_norm(f: ModuleVector) -> float:
    return math.sqrt(alg.norm(inner(f, f)))


def vec_max_abs(f: ModuleVector) -> float:
    return max(float(np.max(np.abs(r))) for r in f.row_blocks())


@dataclass(frozen=True, eq=False)
class ModuleOperator:
    """Adjointable operator on A^k stored as an element of M_k(A)."""

    shape: AlgebraShape
    rank: int
    matrix: AlgebraElement

    def __post_init__(self):
        if self.matrix.shape != self.shape.amplify(self.rank):
            raise ShapeError(
                f"operator matrix of shape {self.matrix.shape} does not fit rank {self.rank} over {self.shape}")

    @classmethod
    def from_coeffs(cls, coeffs) -> "ModuleOperator":
        k = len(coeffs)
        shape = coeffs[0][0].shape
        if any(len(row) != k for row in coeffs):
            raise ShapeError("operator coefficient matrix must be square")
        blocks = [np.block([[coeffs[q][p].blocks[i] for p in range(k)] for q in range(k)])
                  for i in range(len(shape.block_dims))]
        return cls(shape, k, AlgebraElement(shape.amplify(k), blocks))

    @classmethod
    def from_blocks(cls, shape: AlgebraShape, rank: int, blocks) -> "ModuleOperator":
        return cls(shape, rank, AlgebraElement(shape.amplify(rank), blocks))

    @classmethod
    def identity(cls, shape: AlgebraShape, rank: int) -> "ModuleOperator":
        return cls(shape, rank, AlgebraElement.identity(shape.amplify(rank)))

    @classmethod
    def zeros(cls, shape: AlgebraShape, rank: int) -> "ModuleOperator":
        return cls(shape, rank, AlgebraElement.zeros(shape.amplify(rank)))

    @classmethod
    def random(cls, shape: AlgebraShape, rank: int, rng: np.random.Generator) -> "ModuleOperator":
        return cls(shape, rank, AlgebraElement.random(shape.amplify(rank), rng))

    def coeff(self, q: int, p: int) -> AlgebraElement:
        blocks = [b[q * n:(q + 1) * n, p * n:(p + 1) * n]
                  for b, n in zip(self.matrix.blocks, self.shape.block_dims)]
        return AlgebraElement(self.shape, blocks)

    @property
    def coeffs(self) -> list[list[AlgebraElement]]:
        return [[self.coeff(q, p) for p in range(self.rank)] for q in range(self.rank)]


def _check_ops(s: ModuleOperator, t: ModuleOperator):
    if s.shape != t.shape or s.rank != t.rank:
        raise ShapeError("operators act on different modules")


def op_apply(t: ModuleOperator, f: ModuleVector) -> ModuleVector:
    if t.shape != f.shape or t.rank != f.rank:
        raise ShapeError(f"rank-{t.rank} operator applied to a rank-{f.rank} vector")
    rows = [r @ c for r, c in zip(f.row_blocks(), t.matrix.blocks)]
    return ModuleVector.from_row_blocks(f.shape, rows)


def op_adjoint(t: ModuleOperator) -> ModuleOperator:
    return ModuleOperator(t.shape, t.rank, alg.star(t.matrix))


def op_compose(t1: ModuleOperator, t2: ModuleOperator) -> ModuleOperator:
    """The operator applying t1 first, then t2."""
    _check_ops(t1, t2)
    return ModuleOperator(t1.shape, t1.rank, alg.mul(t1.matrix, t2.matrix))


def op_add(t1: ModuleOperator, t2: ModuleOperator) -> ModuleOperator:
    _check_ops(t1, t2)
    return ModuleOperator(t1.shape, t1.rank, alg.add(t1.matrix, t2.matrix))


def op_scale(z: complex, t: ModuleOperator) -> ModuleOperator:
    return ModuleOperator(t.shape, t.rank, z * t.matrix)


def op_invert(t: ModuleOperator) -> ModuleOperator:
    return ModuleOperator(t.shape, t.rank, alg.inverse(t.matrix))


def op_norm(t: ModuleOperator) -> float:
    return alg.norm(t.matrix)


def flatten(f: ModuleVector) -> np.ndarray:
    """Concatenate the row blocks of f, each read row-major."""
    return np.concatenate([r.reshape(-1) for r in f.row_blocks()])


def unflatten(shape: AlgebraShape, rank: int, x) -> ModuleVector:
    x = np.asarray(x, dtype=complex)
    rows, o = [], 0
    for n in shape.block_dims:
        size = n * rank * n
        rows.append(x[o:o + size].reshape(n, rank * n))
        o += size
    return ModuleVector.from_row_blocks(shape, rows)


def complex_realization(t: ModuleOperator) -> np.ndarray:
    """Complex matrix R with flatten(op_apply(t, f)) == R @ flatten(f).

    Block i is kron(I_{n_i}, C_i^T), C_i being the i-th block of t.matrix;
    self-adjoint operators give Hermitian R.
    """
    parts = [np.kron(np.eye(n), c.T) for n, c in zip(t.shape.block_dims, t.matrix.blocks)]
    size = sum(p.shape[0] for p in parts)
    out = np.zeros((size, size), dtype=complex)
    o = 0
    for p in parts:
        m = p.shape[0]
        out[o:o + m, o:o + m] = p
        o += m
    return out


def lift_eigenvector(shape: AlgebraShape, rank: int, block: int, v) -> ModuleVector:
    """Module vector whose block ``block`` has v^H as its first row.

    For a Hermitian operator with C v = lam v in that block, the returned f
    satisfies <Tf, f> = lam <f, f>.
    """
    rows = [np.zeros((n, rank * n), dtype=complex) for n in shape.block_dims]
    rows[block][0, :] = np.conj(v)
    return ModuleVector.from_row_blocks(shape, rows)
