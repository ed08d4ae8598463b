"""Discretized measure spaces and the discretized L^2(Omega, A).

Two kinds of space are supported: finite atomic measures, where every
integral is an exact finite sum, and real intervals carrying a quadrature
rule, where integrals of smooth integrands are approximated.  Measurable
subsets are index subsets of the node list.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import singledispatch
from typing import Optional, Union

import numpy as np

from . import algebra as alg
from ._linalg import pairwise_sum
from .algebra import AlgebraElement, AlgebraShape
from .errors import ShapeError
from .module import ModuleVector

ATOMIC = "atomic"
INTERVAL = "interval"
RULES = ("gauss-legendre", "trapezoid")
DEFAULT_RULE = "gauss-legendre"
DEFAULT_NODES = 32


@dataclass(frozen=True)
class MeasureSpace:
    kind: str
    nodes: tuple[float, ...]
    weights: tuple[float, ...]
    a: Optional[float] = None
    b: Optional[float] = None
    rule: Optional[str] = None
    m: Optional[int] = None

    def __post_init__(self):
        if self.kind not in (ATOMIC, INTERVAL):
            raise ValueError(f"unknown measure kind {self.kind!r}")
        if len(self.nodes) != len(self.weights):
            raise ValueError(f"{len(self.nodes)} nodes but {len(self.weights)} weights")
        if not self.nodes:
            raise ValueError("a measure space needs at least one node")
        if any(not w > 0 for w in self.weights):
            raise ValueError(f"weights must be positive, got {list(self.weights)}")

    def __len__(self):
        return len(self.nodes)

    @property
    def total_mass(self) -> float:
        return float(pairwise_sum(self.weights))

    @property
    def is_atomic(self) -> bool:
        return self.kind == ATOMIC


def make_atomic(nodes, weights) -> MeasureSpace:
    return MeasureSpace(ATOMIC, tuple(float(x) for x in nodes), tuple(float(w) for w in weights))


def quadrature(a: float, b: float, rule: str, m: int) -> tuple[np.ndarray, np.ndarray]:
    if rule == "gauss-legendre":
        x, w = np.polynomial.legendre.leggauss(m)
        half = 0.5 * (b - a)
        return a + half * (x + 1.0), half * w
    if rule == "trapezoid":
        if m == 1:
            return np.array([0.5 * (a + b)]), np.array([b - a])
        x = np.linspace(a, b, m)
        w = np.full(m, (b - a) / (m - 1))
        w[0] = w[-1] = 0.5 * (b - a) / (m - 1)
        return x, w
    raise ValueError(f"unknown quadrature rule {rule!r}; expected one of {RULES}")


def make_interval(a: float, b: float, rule: str = DEFAULT_RULE, m: int = DEFAULT_NODES) -> MeasureSpace:
    """Lebesgue measure on [a, b] discretized by a quadrature rule with m nodes."""
    a, b, m = float(a), float(b), int(m)
    if not a < b:
        raise ValueError(f"invalid interval [{a}, {b}]")
    if m < 1:
        raise ValueError(f"need at least one quadrature node, got {m}")
    x, w = quadrature(a, b, rule, m)
    return MeasureSpace(INTERVAL, tuple(x.tolist()), tuple(w.tolist()), a, b, rule, m)


Payload = Union[AlgebraElement, ModuleVector]


@dataclass(frozen=True, eq=False)
class SampledField:
    """One payload per node: an element of L^2(Omega, A) when the payloads are
    algebra elements, a sampled map Omega -> A^k when they are vectors."""

    space: MeasureSpace
    values: tuple = field(default=())

    def __post_init__(self):
        values = tuple(self.values)
        if len(values) != len(self.space):
            raise ShapeError(f"{len(values)} values on a space with {len(self.space)} nodes")
        first = values[0]
        for v in values:
            if type(v) is not type(first) or v.shape != first.shape:
                raise ShapeError("field values must share kind and shape")
            if isinstance(v, ModuleVector) and v.rank != first.rank:
                raise ShapeError("field values must share rank")
        object.__setattr__(self, "values", values)

    @property
    def shape(self) -> AlgebraShape:
        return self.values[0].shape

    @property
    def is_algebra_valued(self) -> bool:
        return isinstance(self.values[0], AlgebraElement)

    @classmethod
    def constant(cls, space: MeasureSpace, value: Payload) -> "SampledField":
        return cls(space, (value,) * len(space))

    @classmethod
    def random(cls, space: MeasureSpace, shape: AlgebraShape, rng: np.random.Generator):
        return cls(space, tuple(AlgebraElement.random(shape, rng) for _ in range(len(space))))

    def __add__(self, other: "SampledField") -> "SampledField":
        _check_fields(self, other)
        return SampledField(self.space, tuple(x + y for x, y in zip(self.values, other.values)))

    def __sub__(self, other: "SampledField") -> "SampledField":
        _check_fields(self, other)
        return SampledField(self.space, tuple(x - y for x, y in zip(self.values, other.values)))

    def __mul__(self, z):
        return SampledField(self.space, tuple(z * v for v in self.values))

    __rmul__ = __mul__


def _check_fields(phi: SampledField, psi: SampledField):
    if phi.space != psi.space:
        raise ShapeError("fields live on different measure spaces")
    if phi.shape != psi.shape or phi.is_algebra_valued != psi.is_algebra_valued:
        raise ShapeError("fields have different payloads")


def integrate(field: SampledField):
    """Weighted pairwise sum of the node values (algebra- or module-valued)."""
    return pairwise_sum(w * v for w, v in zip(field.space.weights, field.values))


def integrate_algebra(field: SampledField) -> AlgebraElement:
    if not field.is_algebra_valued:
        raise ShapeError("integrate_algebra needs an algebra-valued field")
    return integrate(field)


def l2_inner(phi: SampledField, psi: SampledField) -> AlgebraElement:
    """<phi, psi> = sum_j w_j phi_j psi_j*."""
    _check_fields(phi, psi)
    if not phi.is_algebra_valued:
        raise ShapeError("l2_inner is defined on algebra-valued fields")
    return pairwise_sum(w * alg.mul(x, alg.star(y))
                        for w, x, y in zip(phi.space.weights, phi.values, psi.values))


def l2_norm(phi: SampledField) -> float:
    return alg.norm(l2_inner(phi, phi)) ** 0.5


def _check_subset(space: MeasureSpace, subset) -> list[int]:
    idx = sorted(set(int(i) for i in subset))
    for i in idx:
        if not 0 <= i < len(space):
            raise IndexError(f"node index {i} out of range for {len(space)} nodes")
    return idx


def indicator(space: MeasureSpace, subset, shape: AlgebraShape) -> SampledField:
    """chi_{Omega_1} as an element of L^2(Omega, A)."""
    idx = set(_check_subset(space, subset))
    one, zero = AlgebraElement.identity(shape), AlgebraElement.zeros(shape)
    return SampledField(space, tuple(one if j in idx else zero for j in range(len(space))))


def complement(space: MeasureSpace, removed) -> list[int]:
    gone = set(_check_subset(space, removed))
    return [j for j in range(len(space)) if j not in gone]


@singledispatch
def restrict(obj, removed):
    """Restrict a space or a field to the complement of the index set ``removed``."""
    raise TypeError(f"cannot restrict {type(obj).__name__}")


@restrict.register
def _(space: MeasureSpace, removed) -> MeasureSpace:
    keep = complement(space, removed)
    if not keep:
        raise ValueError("restriction removes every node")
    if len(keep) == len(space):
        return space
    # a restricted interval rule no longer integrates over [a, b]
    return make_atomic([space.nodes[j] for j in keep], [space.weights[j] for j in keep])


@restrict.register
def _(field: SampledField, removed) -> SampledField:
    keep = complement(field.space, removed)
    sub = restrict(field.space, removed)
    return SampledField(sub, tuple(field.values[j] for j in keep))
