import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hcframes import algebra as alg
from hcframes.algebra import AlgebraElement, AlgebraShape
from hcframes.errors import ShapeError
from hcframes.measure import (
    SampledField,
    indicator,
    integrate,
    integrate_algebra,
    l2_inner,
    l2_norm,
    make_atomic,
    make_interval,
    restrict,
)

from conftest import SHAPES, scalar_el

S1 = AlgebraShape((1,))


def scalar_field(space, values):
    return SampledField(space, tuple(scalar_el(v) for v in values))


def integrate_scalar(space, fn):
    return integrate_algebra(scalar_field(space, [fn(x) for x in space.nodes])).blocks[0][0, 0]


def test_make_atomic():
    sp = make_atomic([0], [1])
    assert len(sp) == 1 and sp.total_mass == 1
    assert len(make_atomic([0, 1], [1, 1])) == 2
    with pytest.raises(ValueError):
        make_atomic([0, 1], [1, -1])
    with pytest.raises(ValueError):
        make_atomic([0, 1], [1])


def test_make_interval():
    # closed form: int_0^1 3 w^2 dw = 1
    gl = make_interval(0, 1, "gauss-legendre", 2)
    assert integrate_scalar(gl, lambda x: 3 * x * x) == pytest.approx(1.0, abs=1e-15)
    for rule in ("gauss-legendre", "trapezoid"):
        for m in (1, 2, 7):
            sp = make_interval(0, 1, rule, m)
            assert integrate_scalar(sp, lambda x: 1.0) == pytest.approx(1.0, rel=1e-12)
            assert sp.total_mass == pytest.approx(1.0, rel=1e-12)
    # composite trapezoid error bound: (b - a) h^2 / 12 * max|f''| = 0.01^2 / 12 * 6 = 5e-5
    tr = make_interval(0, 1, "trapezoid", 101)
    err = abs(integrate_scalar(tr, lambda x: 3 * x * x) - 1.0)
    assert err <= 0.01 ** 2 / 12 * 6 + 1e-15
    assert err <= 1e-4
    with pytest.raises(ValueError):
        make_interval(1, 0, "trapezoid", 3)
    with pytest.raises(ValueError):
        make_interval(0, 1, "simpson", 3)
    with pytest.raises(ValueError):
        make_interval(0, 1, "gauss-legendre", 0)


def test_gauss_legendre_exactness_degree():
    for m in (1, 3, 8):
        sp = make_interval(-1, 2, "gauss-legendre", m)
        d = 2 * m - 1
        exact = (2 ** (d + 1) - (-1) ** (d + 1)) / (d + 1)
        assert integrate_scalar(sp, lambda x: x ** d) == pytest.approx(exact, rel=1e-12)


def test_refinement_decreases_error():
    errs = [abs(integrate_scalar(make_interval(0, 1, "trapezoid", m), lambda x: 3 * x * x) - 1)
            for m in (2, 3, 5, 9, 17, 33)]
    assert all(a > b for a, b in zip(errs, errs[1:]))
    gl = [abs(integrate_scalar(make_interval(0, 1, "gauss-legendre", 1), lambda x: 3 * x * x) - 1)]
    gl.append(abs(integrate_scalar(make_interval(0, 1, "gauss-legendre", 2), lambda x: 3 * x * x) - 1))
    assert gl[1] < gl[0]


def test_integrate_algebra_examples():
    sp = make_atomic([0], [1])
    one = AlgebraElement.identity(AlgebraShape((2,)))
    assert integrate_algebra(SampledField.constant(sp, one)) == one
    assert integrate_algebra(SampledField.constant(sp, 0 * one)) == 0 * one
    two = make_atomic([0, 1], [1, 1])
    assert integrate_algebra(scalar_field(two, [1, -1])) == scalar_el(0)


def test_l2_inner_examples(rng):
    sp = make_atomic([0, 1, 2], [0.25, 0.5, 0.25])
    chi = indicator(sp, range(3), S1)
    assert l2_inner(chi, chi) == scalar_el(1)
    phi = SampledField.random(sp, S1, rng)
    assert l2_inner(phi, 0 * phi) == scalar_el(0)
    two = make_atomic([0, 1], [1, 1])
    assert l2_inner(scalar_field(two, [1, 1j]), scalar_field(two, [1, 1])) == scalar_el(1 + 1j)
    with pytest.raises(ShapeError):
        l2_inner(phi, scalar_field(two, [1, 1]))


def test_l2_norm_examples():
    sp = make_atomic([0], [1])
    assert l2_norm(SampledField.constant(sp, scalar_el(0))) == 0
    assert l2_norm(SampledField.constant(make_atomic([0], [4]), scalar_el(1))) == pytest.approx(2)
    for m in (2, 5, 16):
        gl = make_interval(0, 1, "gauss-legendre", m)
        phi = scalar_field(gl, [math.sqrt(3) * x for x in gl.nodes])
        assert l2_norm(phi) == pytest.approx(1.0, abs=1e-14)


def test_indicator_examples():
    sp = make_atomic([0, 1], [1, 1])
    assert all(v == scalar_el(1) for v in indicator(sp, [0, 1], S1).values)
    assert all(v == scalar_el(0) for v in indicator(sp, [], S1).values)
    assert [v.blocks[0][0, 0] for v in indicator(sp, [0], S1).values] == [1, 0]
    with pytest.raises(IndexError):
        indicator(sp, [2], S1)


def test_restrict_examples():
    sp = make_atomic([0, 1], [1, 2])
    assert restrict(sp, []) == sp
    sub = restrict(sp, [0])
    assert sub.nodes == (1.0,) and sub.weights == (2.0,)
    with pytest.raises(ValueError):
        restrict(sp, [0, 1])
    field = scalar_field(sp, [5, 7])
    assert restrict(field, [0]).values[0] == scalar_el(7)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SHAPES).map(AlgebraShape), st.integers(1, 8), st.integers(0, 2**32 - 1))
def test_l2_axioms_and_additivity(shape, m, seed):
    r = np.random.default_rng(seed)
    sp = make_atomic(range(m), r.uniform(0.1, 2, m))
    phi, psi = SampledField.random(sp, shape, r), SampledField.random(sp, shape, r)
    a = AlgebraElement.random(shape, r)
    scale = 1 + l2_norm(phi) * l2_norm(psi) * (1 + alg.norm(a))
    assert alg.is_positive(l2_inner(phi, phi))
    assert alg.norm(alg.star(l2_inner(phi, psi)) - l2_inner(psi, phi)) <= 1e-12 * scale
    a_phi = SampledField(sp, tuple(a @ v for v in phi.values))
    assert alg.norm(l2_inner(a_phi, psi) - a @ l2_inner(phi, psi)) <= 1e-12 * scale
    # integrate(Omega) = integrate(Omega_1) + integrate(Omega \ Omega_1)
    subset = [j for j in range(m) if r.random() < 0.5]
    total = integrate(phi)
    inside = integrate(SampledField(sp, tuple(v if j in subset else 0 * v for j, v in enumerate(phi.values))))
    outside = integrate(SampledField(sp, tuple(0 * v if j in subset else v for j, v in enumerate(phi.values))))
    assert alg.norm(total - inside - outside) <= 1e-12 * (1 + alg.norm(total))


def test_summation_order_independence(rng):
    m = 64
    sp = make_atomic(range(m), rng.uniform(0.1, 2, m))
    phi = SampledField.random(sp, AlgebraShape((2,)), rng)
    perm = rng.permutation(m)
    sp2 = make_atomic([sp.nodes[j] for j in perm], [sp.weights[j] for j in perm])
    phi2 = SampledField(sp2, tuple(phi.values[j] for j in perm))
    assert alg.norm(integrate(phi) - integrate(phi2)) <= 1e-12 * (1 + alg.norm(integrate(phi)))
