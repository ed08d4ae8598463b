"""Executable checks of the structural results on a single frame.

:func:`check_frame` returns human-readable violation strings; an empty list
means every applicable property held on the sampled data.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from . import algebra as alg
from . import frames as fr
from . import measure as ms
from .algebra import AlgebraElement
from .generate import random_instance, random_riesz_basis
from .module import ModuleVector, inner, op_apply, op_invert, vec_norm

TOL = 1e-9


def _close_vectors(f: ModuleVector, g: ModuleVector, rel: float) -> bool:
    d = vec_norm(f - g)
    return d <= rel * (1.0 + max(vec_norm(f), vec_norm(g)))


def _close_elements(a: AlgebraElement, b: AlgebraElement, rel: float) -> bool:
    return alg.norm(a - b) <= rel * (1.0 + max(alg.norm(a), alg.norm(b)))


def frame_form(F: fr.Frame, f: ModuleVector) -> AlgebraElement:
    """sum_j w_j <f, F_j> <F_j, f>, the middle term of the frame inequality."""
    values = [alg.mul(inner(f, g), inner(g, f)) for g in F.values]
    return ms.integrate(ms.SampledField(F.space, tuple(values)))


def cauchy_schwarz_holds(f: ModuleVector, g: ModuleVector, tol: float = TOL) -> bool:
    """Norm form and the module form <f,g><g,f> <= ||<g,g>|| <f,f>."""
    fg, ff, gg = inner(f, g), inner(f, f), inner(g, g)
    scale = 1.0 + alg.norm(ff) * alg.norm(gg)
    norm_form = alg.norm(fg) ** 2 <= alg.norm(ff) * alg.norm(gg) + tol * scale
    order_form = alg.leq(alg.mul(fg, inner(g, f)), alg.norm(gg) * ff, tol)
    return norm_form and order_form


def sandwich_holds(t_star_t: AlgebraElement, t_norm_sq: float, tol: float = TOL) -> bool:
    """||X^{-1}||^{-1} <= X <= ||T||^2 for X = T*T (or TT*) invertible."""
    one = AlgebraElement.identity(t_star_t.shape)
    lower = 1.0 / alg.norm(alg.inverse(t_star_t))
    return alg.leq(lower * one, t_star_t, tol) and alg.leq(t_star_t, t_norm_sq * one, tol)


def check_frame(F: fr.Frame, rng: np.random.Generator, tol: float = TOL,
                partner: Optional[fr.Frame] = None) -> list[str]:
    out: list[str] = []
    shape, k = F.shape, F.rank
    S = fr.frame_operator(F)
    bounds = fr.frame_bounds(F)
    frame = fr.is_frame(F, tol)

    # factorizations S = T T*, V = T* T
    f = ModuleVector.random(shape, k, rng)
    if not _close_vectors(fr.synthesis(F, fr.analysis(F, f)), op_apply(S, f), 1e-10):
        out.append("S != T T*")
    phi = ms.SampledField.random(F.space, shape, rng)
    tv = fr.analysis(F, fr.synthesis(F, phi))
    vphi = fr.apply_gram(F, phi)
    if any(not _close_elements(a, b, 1e-10) for a, b in zip(tv.values, vphi.values)):
        out.append("V != T* T")

    # adjoint relation between synthesis and analysis
    lhs = inner(fr.synthesis(F, phi), f)
    rhs = alg.star(ms.l2_inner(fr.analysis(F, f), phi))
    if not _close_elements(lhs, rhs, 1e-10):
        out.append("<T phi, f> != <phi, T* f>")

    # Cauchy-Schwarz
    g = ModuleVector.random(shape, k, rng)
    if not cauchy_schwarz_holds(f, g, tol):
        out.append("Cauchy-Schwarz violated")

    # frame inequality and optimality of the bounds
    form, ff = frame_form(F, f), inner(f, f)
    if not (alg.leq(bounds.lower * ff, form, tol) and alg.leq(form, bounds.upper * ff, tol)):
        out.append("frame inequality violated at computed bounds")
    f_lo, f_hi = fr.extremal_vectors(F)
    for vec, bound, name in ((f_lo, bounds.lower, "lower"), (f_hi, bounds.upper, "upper")):
        gap = alg.norm(frame_form(F, vec) - bound * inner(vec, vec))
        if gap > 1e-8:
            out.append(f"{name} bound not attained (gap {gap:.3e})")

    gram = fr.gram_realization(F)
    t_norm_sq = alg.norm(gram)
    if frame:
        if not sandwich_holds(S.matrix, t_norm_sq, tol):
            out.append("TT* sandwich violated")
    riesz = fr.is_riesz(F, tol)
    if riesz and not sandwich_holds(gram, t_norm_sq, tol):
        out.append("T*T sandwich violated")

    if not frame:
        return out

    # Ker(T) + R(T*) decomposition: q = T* S^{-1} T phi, p = phi - q
    s_inv = op_invert(S)
    q = fr.analysis(F, op_apply(s_inv, fr.synthesis(F, phi)))
    p = phi - q
    if vec_norm(fr.synthesis(F, p)) > 1e-9 * (1.0 + ms.l2_norm(phi)):
        out.append("p not in ker T")
    if alg.norm(ms.l2_inner(p, q)) > 1e-9 * (1.0 + ms.l2_norm(phi) ** 2):
        out.append("ker T not orthogonal to R(T*)")

    # equivalence chain
    complete_and_independent = fr.mu_complete(F, tol) and fr.l2_independent(F, tol)
    riesz_type = fr.is_riesz_type(F, tol)
    second = fr.non_canonical_dual(F, tol)
    chain = (riesz, complete_and_independent, riesz_type, second is None)
    if len(set(chain)) != 1:
        out.append(f"equivalence chain disagrees: riesz, complete&independent, riesz_type, unique dual = {chain}")

    # duals
    dual = fr.canonical_dual(F, tol)
    if fr.is_dual(F, dual, tol) != fr.is_dual(dual, F, tol):
        out.append("is_dual not symmetric")
    if not fr.is_dual(F, dual, tol):
        out.append(f"canonical dual defect {fr.dual_defect(F, dual):.3e}")
    for _ in range(3):
        h = ModuleVector.random(shape, k, rng)
        if vec_norm(h - fr.reconstruct(F, dual, h)) > 1e-8 * (1.0 + vec_norm(h)):
            out.append("reconstruction with the canonical dual failed")
            break
    db = fr.frame_bounds(dual)
    if abs(db.lower - 1.0 / bounds.upper) > 1e-8 * db.upper or abs(db.upper - 1.0 / bounds.lower) > 1e-8 * db.upper:
        out.append("canonical dual bounds are not (1/B, 1/A)")
    if second is not None:
        if not fr.is_dual(F, second, tol):
            out.append(f"second dual defect {fr.dual_defect(F, second):.3e}")
        if fr.sampled_norm(fr.frame_difference(second, dual)) < 1e-3:
            out.append("second dual coincides with the canonical dual")

    if riesz:
        rb = fr.riesz_bounds(F)
        if fr.riesz_inequality_defect(F, rb, rng) > tol:
            out.append("Riesz inequality violated")
        if F.space.is_atomic and not fr.is_exact(F, tol):
            out.append("Riesz basis is not exact")
        if partner is not None:
            K = fr.riesz_link_operator(F, partner, tol)
            for gj, hj in zip(partner.values, fr.link_reconstruction(F, partner, K)):
                if vec_norm(gj - hj) > 1e-8 * (1.0 + vec_norm(gj)):
                    out.append("G != S_G K* F")
                    break
    return out


@dataclass
class Summary:
    cases: int
    seed: int
    violations: dict[int, list[str]] = field(default_factory=dict)
    dumped: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify(cases: int, seed: int, tol: float = TOL, dump_dir=None) -> Summary:
    """Run :func:`check_frame` on ``cases`` generated instances, in case order."""
    from .specfile import dumps, frame_to_json

    summary = Summary(cases, seed)
    children = np.random.SeedSequence(seed).spawn(cases) if cases else []
    for idx, child in enumerate(children):
        rng = np.random.default_rng(child)
        F = random_instance(rng, tol)
        partner = None
        if fr.is_riesz(F, tol):
            partner = random_riesz_basis(rng, F.shape, F.rank, F.rank)
            partner = fr.Frame.from_vectors(F.space, partner.values)
            if not fr.is_riesz(partner, tol):
                partner = None
        try:
            problems = check_frame(F, rng, tol, partner)
        except Exception as exc:  # a crash is a violation too
            problems = [f"{type(exc).__name__}: {exc}"]
        if problems:
            summary.violations[idx] = problems
            if dump_dir is not None:
                path = Path(dump_dir)
                path.mkdir(parents=True, exist_ok=True)
                target = path / f"case-{seed}-{idx}.spec"
                target.write_text(dumps(frame_to_json(F, {"tol": tol})))
                summary.dumped.append(str(target))
    return summary
