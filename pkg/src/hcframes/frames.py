"""Continuous frames F: Omega -> A^k on a discretized measure space.

Operators:
    synthesis   T phi = sum_j w_j phi_j F_j                (L^2(Omega, A) -> A^k)
    analysis    (T* f)_j = <f, F_j>                        (A^k -> L^2(Omega, A))
    frame       S = T T*, a positive operator on A^k
    Gram        V = T* T, (V phi)_l = sum_j w_j phi_j <F_j, F_l>

Per algebra block i, stack the weighted samples into M_i = [sqrt(w_j) F_j^(i)]_j,
an (m n_i) x (k n_i) matrix.  Then S_i = M_i^H M_i and the Gram operator,
conjugated to the unweighted inner product, is M_i M_i^H.  Every spectral
decision below reads one of these two Hermitian matrices.

Decisions compare eigenvalues against ``tol * (1 + lambda_max)`` so that
they do not depend on the overall scale of F.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import algebra as alg
from ._linalg import gauss_inverse, pairwise_sum
from .algebra import AlgebraElement, AlgebraShape
from .errors import NotAFrameError, NotRieszError, ShapeError, SingularError
from .measure import MeasureSpace, SampledField, l2_inner, restrict
from .module import (
    ModuleOperator,
    ModuleVector,
    inner,
    lift_eigenvector,
    module_action,
    op_adjoint,
    op_apply,
    op_compose,
    op_invert,
    vec_norm,
)

DEFAULT_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Frame:
    samples: SampledField

    def __post_init__(self):
        if self.samples.is_algebra_valued:
            raise ShapeError("frame samples must be module vectors")

    @classmethod
    def from_vectors(cls, space: MeasureSpace, vectors) -> "Frame":
        return cls(SampledField(space, tuple(vectors)))

    @classmethod
    def polynomial(cls, space: MeasureSpace, coefficients) -> "Frame":
        """F(w) = sum_d w^d c_d sampled at the nodes of ``space``."""
        coefficients = list(coefficients)
        if not coefficients:
            raise ValueError("a polynomial family needs at least one coefficient")
        vectors = []
        for x in space.nodes:
            vectors.append(pairwise_sum([x ** d * c for d, c in enumerate(coefficients)]))
        return cls.from_vectors(space, vectors)

    @property
    def space(self) -> MeasureSpace:
        return self.samples.space

    @property
    def values(self) -> tuple[ModuleVector, ...]:
        return self.samples.values

    @property
    def shape(self) -> AlgebraShape:
        return self.samples.shape

    @property
    def rank(self) -> int:
        return self.values[0].rank

    def __len__(self):
        return len(self.space)

    def stacked(self) -> list[np.ndarray]:
        """Per block i, the matrix M_i of weighted samples (see module doc)."""
        rows = [f.row_blocks() for f in self.values]
        out = []
        for i in range(len(self.shape.block_dims)):
            out.append(np.vstack([math.sqrt(w) * r[i] for w, r in zip(self.space.weights, rows)]))
        return out

    def restricted(self, removed) -> "Frame":
        return Frame(restrict(self.samples, removed))


@dataclass(frozen=True)
class FrameBounds:
    lower: float
    upper: float


@dataclass
class Flags:
    bessel: bool = True
    frame: bool = False
    tight: bool = False
    mu_complete: bool = False
    l2_independent: bool = False
    riesz: bool = False
    riesz_type: bool = False
    exact: Optional[bool] = False


@dataclass
class FrameDiagnostics:
    bounds: FrameBounds
    flags: Flags
    riesz_bounds: Optional[FrameBounds] = None
    reconstruction_residual: Optional[float] = None
    notes: list[str] = field(default_factory=list)


def _check_compatible(F: Frame, other):
    if F.space != other.space:
        raise ShapeError("frame and field live on different measure spaces")
    if F.shape != other.shape:
        raise ShapeError(f"algebra shapes differ: {F.shape} vs {other.shape}")


def _threshold(tol: float, top: float) -> float:
    return tol * (1.0 + max(top, 0.0))


# operators

def synthesis(F: Frame, phi: SampledField) -> ModuleVector:
    _check_compatible(F, phi)
    if not phi.is_algebra_valued:
        raise ShapeError("synthesis takes an algebra-valued field")
    return pairwise_sum(w * module_action(a, f)
                        for w, a, f in zip(F.space.weights, phi.values, F.values))


def analysis(F: Frame, f: ModuleVector) -> SampledField:
    if f.shape != F.shape or f.rank != F.rank:
        raise ShapeError("vector does not belong to the frame's module")
    return SampledField(F.space, tuple(inner(f, g) for g in F.values))


def frame_operator(F: Frame) -> ModuleOperator:
    """S with S f = sum_j w_j <f, F_j> F_j."""
    return ModuleOperator.from_blocks(F.shape, F.rank, [m.conj().T @ m for m in F.stacked()])


def cross_operator(F: Frame, G: Frame) -> ModuleOperator:
    """T_F T_G^*, i.e. f -> sum_j w_j <f, G_j> F_j."""
    _check_compatible(F, G)
    blocks = [g.conj().T @ f for f, g in zip(F.stacked(), G.stacked())]
    return ModuleOperator.from_blocks(F.shape, F.rank, blocks)


def gram_operator(F: Frame) -> ModuleOperator:
    """V as an m x m matrix over A with entries w_j <F_j, F_l>.

    It acts on node-value vectors (phi_1, ..., phi_m) by the same right
    action as module operators and is self-adjoint for the weighted inner
    product of L^2(Omega, A).
    """
    m = len(F)
    w = np.asarray(F.space.weights)
    blocks = []
    for i, n in enumerate(F.shape.block_dims):
        r = np.vstack([f.row_blocks()[i] for f in F.values])
        blocks.append(np.repeat(w, n)[:, None] * (r @ r.conj().T))
    return ModuleOperator.from_blocks(F.shape, m, blocks)


def gram_realization(F: Frame) -> AlgebraElement:
    """Hermitian form of V: entries sqrt(w_j w_l) <F_j, F_l>, blocks M_i M_i^H."""
    return AlgebraElement(F.shape.amplify(len(F)), [m @ m.conj().T for m in F.stacked()])


def field_to_vector(phi: SampledField) -> ModuleVector:
    return ModuleVector(phi.shape, phi.values)


def apply_gram(F: Frame, phi: SampledField) -> SampledField:
    _check_compatible(F, phi)
    out = op_apply(gram_operator(F), field_to_vector(phi))
    return SampledField(F.space, out.entries)


# bounds and frame property

def frame_bounds(F: Frame, tol: float = DEFAULT_TOL) -> FrameBounds:
    """Optimal constants A, B with A<f,f> <= <Sf,f> <= B<f,f>."""
    lo, hi = alg.spectrum_bounds(frame_operator(F).matrix)
    return FrameBounds(max(lo, 0.0), max(hi, 0.0))


def extremal_vectors(F: Frame) -> tuple[ModuleVector, ModuleVector]:
    """Vectors attaining the lower and upper frame bounds."""
    eig = alg.hermitian_eigen(frame_operator(F).matrix)
    i_lo = min(range(len(eig)), key=lambda i: eig[i][0][0])
    i_hi = max(range(len(eig)), key=lambda i: eig[i][0][-1])
    f_lo = lift_eigenvector(F.shape, F.rank, i_lo, eig[i_lo][1][:, 0])
    f_hi = lift_eigenvector(F.shape, F.rank, i_hi, eig[i_hi][1][:, -1])
    return f_lo, f_hi


def is_bessel(F: Frame, tol: float = DEFAULT_TOL) -> bool:
    # finite weighted sums always have a finite upper bound
    return True


def is_frame(F: Frame, tol: float = DEFAULT_TOL) -> bool:
    b = frame_bounds(F)
    return b.lower > _threshold(tol, b.upper)


def is_tight(F: Frame, tol: float = DEFAULT_TOL) -> bool:
    b = frame_bounds(F)
    return is_frame(F, tol) and abs(b.upper - b.lower) <= tol * (1.0 + b.upper)


# duals

def canonical_dual(F: Frame, tol: float = DEFAULT_TOL) -> Frame:
    if not is_frame(F, tol):
        raise NotAFrameError("canonical dual requested for a map that is not a frame")
    s_inv = op_invert(frame_operator(F))
    return Frame.from_vectors(F.space, [op_apply(s_inv, f) for f in F.values])


def dual_defect(F: Frame, G: Frame) -> float:
    """max(||T_F T_G* - I||, ||T_G T_F* - I||) in operator norm."""
    one = AlgebraElement.identity(F.shape.amplify(F.rank))
    d1 = alg.norm(cross_operator(F, G).matrix - one)
    d2 = alg.norm(cross_operator(G, F).matrix - one)
    return max(d1, d2)


def is_dual(F: Frame, G: Frame, tol: float = DEFAULT_TOL) -> bool:
    if F.rank != G.rank:
        raise ShapeError("frames act on modules of different rank")
    return dual_defect(F, G) <= tol


def reconstruct(F: Frame, G: Frame, f: ModuleVector) -> ModuleVector:
    """sum_j w_j <f, G_j> F_j."""
    return synthesis(F, analysis(G, f))


def sampled_norm(F: Frame) -> float:
    """||sum_j w_j <F_j, F_j>||^(1/2), the L^2 norm of the sampled map."""
    total = pairwise_sum(w * inner(f, f) for w, f in zip(F.space.weights, F.values))
    return math.sqrt(alg.norm(total))


def frame_difference(F: Frame, G: Frame) -> Frame:
    _check_compatible(F, G)
    return Frame.from_vectors(F.space, [f - g for f, g in zip(F.values, G.values)])


# structural properties

def mu_complete(F: Frame, tol: float = DEFAULT_TOL) -> bool:
    """No nonzero f with <f, F_j> = 0 at every node (analysis injective)."""
    lo, hi = alg.spectrum_bounds(frame_operator(F).matrix)
    return lo > _threshold(tol, hi)


def l2_independent(F: Frame, tol: float = DEFAULT_TOL) -> bool:
    """sum_j w_j phi_j F_j = 0 forces phi = 0 (synthesis injective)."""
    lo, hi = alg.spectrum_bounds(gram_realization(F))
    return lo > _threshold(tol, hi)


def kernel_witness(F: Frame, tol: float = DEFAULT_TOL) -> Optional[SampledField]:
    """A unit-norm phi with synthesis(F, phi) = 0, or None if synthesis is injective."""
    v_real = gram_realization(F)
    eig = alg.hermitian_eigen(v_real)
    hi = max(float(w[-1]) for w, _ in eig)
    i = min(range(len(eig)), key=lambda i: eig[i][0][0])
    if eig[i][0][0] > _threshold(tol, hi):
        return None
    m = len(F)
    x = lift_eigenvector(F.shape, m, i, eig[i][1][:, 0])
    values = [e * (1.0 / math.sqrt(w)) for e, w in zip(x.entries, F.space.weights)]
    return SampledField(F.space, tuple(values))


def riesz_bounds(F: Frame) -> FrameBounds:
    """Spectral extremes of V: A ||<phi,phi>|| <= ||T phi||^2 <= B ||<phi,phi>||."""
    lo, hi = alg.spectrum_bounds(gram_realization(F))
    return FrameBounds(max(lo, 0.0), max(hi, 0.0))


def riesz_inequality_defect(F: Frame, bounds: FrameBounds, rng: np.random.Generator,
                            trials: int = 8) -> float:
    """Largest relative violation of the Riesz inequalities over random phi and
    random subsets Omega_1 (restriction realized by multiplying with chi)."""
    worst = 0.0
    m = len(F)
    for _ in range(trials):
        phi = SampledField.random(F.space, F.shape, rng)
        keep = [j for j in range(m) if rng.random() < 0.6] or [int(rng.integers(m))]
        zero = AlgebraElement.zeros(F.shape)
        phi = SampledField(F.space, tuple(v if j in keep else zero for j, v in enumerate(phi.values)))
        mass = alg.norm(l2_inner(phi, phi))
        image = vec_norm(synthesis(F, phi)) ** 2
        scale = 1.0 + bounds.upper * mass
        worst = max(worst, (bounds.lower * mass - image) / scale, (image - bounds.upper * mass) / scale)
    return worst


def is_riesz(F: Frame, tol: float = DEFAULT_TOL) -> bool:
    return mu_complete(F, tol) and l2_independent(F, tol)


def is_riesz_type(F: Frame, tol: float = DEFAULT_TOL) -> bool:
    """Unique dual, decided as surjectivity of the analysis operator.

    The Gram realization is inverted by Gauss elimination; a pivot below
    ``tol * (1 + max|entry|)`` means it is singular.  This deliberately avoids
    the eigenvalue route used by :func:`l2_independent`.
    """
    if not is_frame(F, tol):
        raise NotAFrameError("Riesz-type is defined for frames only")
    for block in gram_realization(F).blocks:
        scale = float(np.max(np.abs(block)))
        if scale == 0.0:
            return False
        try:
            gauss_inverse(block, pivot_tol=tol * (1.0 + scale) / scale)
        except SingularError:
            return False
    return True


def non_canonical_dual(F: Frame, tol: float = DEFAULT_TOL) -> Optional[Frame]:
    """A dual of F different from the canonical one, or None if F has a unique dual.

    With psi in the kernel of synthesis, G_j = S^{-1} F_j + psi_j* e_1 is again
    a dual since sum_j w_j <f, psi_j* e_1> F_j = <f, e_1> T psi = 0.  The
    correction is scaled to unit sampled norm.
    """
    dual = canonical_dual(F, tol)
    psi = kernel_witness(F, tol)
    if psi is None:
        return None
    e1 = ModuleVector.basis(F.shape, F.rank, 0)
    corr = Frame.from_vectors(F.space, [module_action(alg.star(p), e1) for p in psi.values])
    corr_vectors = [(1.0 / sampled_norm(corr)) * d for d in corr.values]
    return Frame.from_vectors(F.space, [g + d for g, d in zip(dual.values, corr_vectors)])


def is_exact(F: Frame, tol: float = DEFAULT_TOL) -> bool:
    """No single atom can be removed with the rest still a frame."""
    if not F.space.is_atomic:
        raise ValueError("exactness is only decided on atomic measure spaces")
    if not is_frame(F, tol):
        raise NotAFrameError("exactness is defined for frames only")
    if len(F) == 1:
        return True
    return not any(is_frame(F.restricted([j]), tol) for j in range(len(F)))


def riesz_link_operator(F: Frame, G: Frame, tol: float = DEFAULT_TOL) -> ModuleOperator:
    """K = (T_G T_F*)^{-1}; for Riesz bases F and G, G = S_G K* F."""
    _check_compatible(F, G)
    if not is_riesz(F, tol):
        raise NotRieszError("first argument is not a Riesz basis")
    if not is_riesz(G, tol):
        raise NotRieszError("second argument is not a Riesz basis")
    return op_invert(cross_operator(G, F))


def link_reconstruction(F: Frame, G: Frame, K: ModuleOperator) -> list[ModuleVector]:
    """Samples of S_G K* F."""
    op = op_compose(op_adjoint(K), frame_operator(G))
    return [op_apply(op, f) for f in F.values]


# report

def diagnose(F: Frame, tol: float = DEFAULT_TOL, seed: int = 0) -> FrameDiagnostics:
    bounds = frame_bounds(F)
    flags = Flags()
    diag = FrameDiagnostics(bounds=bounds, flags=flags)
    notes = diag.notes
    flags.frame = bounds.lower > _threshold(tol, bounds.upper)
    flags.mu_complete = mu_complete(F, tol)
    flags.l2_independent = l2_independent(F, tol)
    if not flags.frame:
        flags.exact = False
        notes.append("not a frame: lower bound %.3e within tolerance of zero" % bounds.lower)
        return diag

    flags.tight = abs(bounds.upper - bounds.lower) <= tol * (1.0 + bounds.upper)
    flags.riesz = flags.mu_complete and flags.l2_independent
    flags.riesz_type = is_riesz_type(F, tol)
    if flags.riesz != flags.riesz_type:
        notes.append("inconsistent: riesz=%s but riesz_type=%s" % (flags.riesz, flags.riesz_type))

    dual = canonical_dual(F, tol)
    diag.reconstruction_residual = dual_defect(F, dual)

    if flags.riesz:
        rb = riesz_bounds(F)
        diag.riesz_bounds = rb
        defect = riesz_inequality_defect(F, rb, np.random.default_rng(seed))
        if defect > tol:
            notes.append("riesz inequality violated by %.3e on sampled phi (seed %d)" % (defect, seed))
    else:
        witness = non_canonical_dual(F, tol)
        if witness is None:
            notes.append("inconsistent: not riesz but no second dual was found")
        else:
            notes.append("second dual found: distance %.6g from the canonical dual, dual defect %.3e"
                         % (sampled_norm(frame_difference(witness, dual)), dual_defect(F, witness)))

    if F.space.is_atomic:
        flags.exact = is_exact(F, tol)
        if flags.riesz and not flags.exact:
            notes.append("inconsistent: riesz basis that is not exact")
    else:
        flags.exact = None
        notes.append("exactness: not decidable under quadrature")
    return diag


__all__ = [
    "Frame", "FrameBounds", "Flags", "FrameDiagnostics",
    "synthesis", "analysis", "frame_operator", "cross_operator", "gram_operator",
    "gram_realization", "apply_gram", "field_to_vector", "frame_bounds", "extremal_vectors",
    "is_bessel", "is_frame", "is_tight", "canonical_dual", "dual_defect", "is_dual",
    "reconstruct", "sampled_norm", "frame_difference", "mu_complete", "l2_independent",
    "kernel_witness", "riesz_bounds", "riesz_inequality_defect", "is_riesz", "is_riesz_type",
    "non_canonical_dual", "is_exact", "riesz_link_operator", "link_reconstruction", "diagnose",
]
