"""Unit tests for boundary points, atomic Herglotz functions, and the
reciprocal map on the rational subclass."""

import cmath
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from diskflow import (
    AtomAtPoint,
    AtomicHerglotz,
    BoundaryPoint,
    DomainError,
    QuadratureFailure,
    RationalHerglotz,
    add_herglotz,
    caratheodory_extreme,
    contact_value,
    counterexample_P,
    counterexample_divergence,
    eval_herglotz,
    extract_atom,
    herglotz_derivative,
    herglotz_kernel,
    herglotz_second_derivative,
    p_sharp,
    p_star,
    reciprocal,
    scale_herglotz,
)

TWO_PI = 2.0 * math.pi


def atoms(*pairs):
    return tuple((BoundaryPoint(t), m) for t, m in pairs)


# ----------------------------------------------------------------------
# BoundaryPoint
# ----------------------------------------------------------------------


def test_boundary_point_normalizes_angle():
    assert BoundaryPoint(TWO_PI + 0.5).theta == pytest.approx(0.5, abs=1e-15)
    assert BoundaryPoint(-0.25).theta == pytest.approx(TWO_PI - 0.25, abs=1e-15)
    assert 0.0 <= BoundaryPoint(123.456).theta < TWO_PI


def test_boundary_point_value_on_circle():
    s = BoundaryPoint(1.2)
    assert abs(abs(s.value) - 1.0) < 1e-15
    assert s.value == pytest.approx(cmath.exp(1.2j), abs=1e-15)


def test_from_complex_projects_and_rejects():
    s = BoundaryPoint.from_complex(2.0 * cmath.exp(0.7j))
    assert s.theta == pytest.approx(0.7, abs=1e-12)
    with pytest.raises((ValueError, DomainError)):
        BoundaryPoint.from_complex(0.0)


def test_angular_distance_wraps():
    a = BoundaryPoint(0.1)
    b = BoundaryPoint(TWO_PI - 0.1)
    assert a.angular_distance(b) == pytest.approx(0.2, abs=1e-14)
    assert a.same_point(BoundaryPoint(0.1 + TWO_PI))
    assert not a.same_point(b)


@given(st.floats(min_value=-50.0, max_value=50.0, allow_nan=False))
def test_boundary_point_angle_round_trip(theta):
    s = BoundaryPoint(theta)
    again = BoundaryPoint.from_complex(s.value)
    assert s.angular_distance(again) < 1e-9


# ----------------------------------------------------------------------
# AtomicHerglotz invariants
# ----------------------------------------------------------------------


def test_zero_masses_are_dropped():
    p = AtomicHerglotz(atoms((0.3, 0.0), (1.1, 2.0)), 0.5)
    assert len(p.atoms) == 1
    assert p.total_mass == pytest.approx(2.0)


def test_negative_mass_rejected():
    with pytest.raises(ValueError):
        AtomicHerglotz(atoms((0.3, -1.0)), 0.0)


def test_coincident_atoms_merge():
    p = AtomicHerglotz(atoms((0.4, 1.0), (0.4, 2.5)), 0.0)
    assert len(p.atoms) == 1
    assert p.atoms[0][1] == pytest.approx(3.5)


def test_atoms_sorted_by_angle():
    p = AtomicHerglotz(atoms((5.0, 1.0), (0.2, 1.0), (2.0, 1.0)), 0.0)
    thetas = [pt.theta for pt, _ in p.atoms]
    assert thetas == sorted(thetas)


def test_trivial_detection():
    # trivial means purely imaginary constant: a tilt alone still counts
    assert AtomicHerglotz().is_trivial()
    assert AtomicHerglotz(gamma=1.0).is_trivial()
    assert not AtomicHerglotz(atoms((0.0, 1.0))).is_trivial()


def test_rational_requires_atom():
    with pytest.raises(ValueError):
        RationalHerglotz((), 1.0)


# ----------------------------------------------------------------------
# evaluation and derivatives
# ----------------------------------------------------------------------


def test_eval_matches_direct_kernel_sum():
    p = AtomicHerglotz(atoms((0.3, 0.7), (2.1, 1.4), (4.0, 0.2)), -0.9)
    z = 0.31 - 0.44j
    expect = complex(0.0, -0.9)
    for t, m in ((0.3, 0.7), (2.1, 1.4), (4.0, 0.2)):
        s = cmath.exp(1j * t)
        expect += m * (s + z) / (s - z)
    assert eval_herglotz(p, z) == pytest.approx(expect, abs=1e-14)


def test_eval_at_origin_is_mass_plus_tilt():
    p = AtomicHerglotz(atoms((0.3, 0.7), (2.1, 1.4)), 0.25)
    assert eval_herglotz(p, 0.0) == pytest.approx(complex(2.1, 0.25), abs=1e-15)


def test_eval_rejects_closed_boundary():
    p = AtomicHerglotz(atoms((0.3, 1.0)))
    with pytest.raises(DomainError):
        eval_herglotz(p, 1.0 + 0.0j)
    with pytest.raises(DomainError):
        eval_herglotz(p, 1.2j)


@given(
    st.floats(min_value=0.0, max_value=6.28, allow_nan=False),
    st.floats(min_value=0.01, max_value=5.0, allow_nan=False),
    st.floats(min_value=-5.0, max_value=5.0, allow_nan=False),
    st.complex_numbers(max_magnitude=0.95, allow_nan=False, allow_infinity=False),
)
def test_positive_real_part_everywhere(theta, mass, gamma, z):
    p = AtomicHerglotz(atoms((theta, mass)), gamma)
    assert eval_herglotz(p, z).real > 0.0


def test_derivative_matches_finite_difference():
    p = AtomicHerglotz(atoms((0.9, 0.8), (3.3, 1.1)), 0.4)
    z = -0.2 + 0.35j
    h = 1e-6
    fd = (eval_herglotz(p, z + h) - eval_herglotz(p, z - h)) / (2 * h)
    assert herglotz_derivative(p, z) == pytest.approx(fd, rel=1e-8)


def test_second_derivative_matches_finite_difference():
    p = AtomicHerglotz(atoms((0.9, 0.8), (3.3, 1.1)), 0.4)
    z = -0.2 + 0.35j
    h = 1e-5
    fd = (
        eval_herglotz(p, z + h) - 2 * eval_herglotz(p, z) + eval_herglotz(p, z - h)
    ) / h**2
    assert herglotz_second_derivative(p, z) == pytest.approx(fd, rel=1e-6)


# ----------------------------------------------------------------------
# boundary functionals
# ----------------------------------------------------------------------


def test_p_star_is_twice_atom_mass():
    s = BoundaryPoint(1.0)
    p = AtomicHerglotz(((s, 0.75), (BoundaryPoint(2.0), 3.0)), 1.0)
    assert p_star(p, s) == pytest.approx(1.5)
    assert p_star(p, BoundaryPoint(0.1)) == 0.0


def test_p_star_as_radial_limit():
    # (1 - conj(s) r s) p(r s) -> 2 m as r -> 1
    s = BoundaryPoint(1.0)
    p = AtomicHerglotz(((s, 0.75), (BoundaryPoint(2.0), 3.0)), 1.0)
    r = 1.0 - 1e-9
    approx = (1.0 - r) * eval_herglotz(p, r * s.value)
    assert approx.real == pytest.approx(p_star(p, s), abs=1e-6)


def test_p_sharp_finite_case_and_radial_limit():
    s = BoundaryPoint(0.0)
    p = AtomicHerglotz(atoms((2.0, 1.3), (4.5, 0.2)), -2.0)
    direct = 2.0 * (
        1.3 / abs(cmath.exp(2.0j) - 1.0) ** 2 + 0.2 / abs(cmath.exp(4.5j) - 1.0) ** 2
    )
    assert p_sharp(p, s) == pytest.approx(direct, rel=1e-14)
    r = 1.0 - 1e-7
    limit = eval_herglotz(p, r).real / (1.0 - r)
    assert p_sharp(p, s) == pytest.approx(limit, rel=1e-5)


def test_p_sharp_infinite_on_atom():
    s = BoundaryPoint(1.0)
    p = AtomicHerglotz(((s, 1.0),))
    assert math.isinf(p_sharp(p, s))


def test_contact_value_purely_imaginary():
    s = BoundaryPoint(0.0)
    p = AtomicHerglotz(atoms((2.0, 1.3), (4.5, 0.2)), -2.0)
    c = contact_value(p, s)
    assert c.real == 0.0
    # radial limit agreement
    r = 1.0 - 1e-8
    assert eval_herglotz(p, r).imag == pytest.approx(c.imag, abs=1e-6)


def test_contact_value_raises_on_atom():
    s = BoundaryPoint(1.0)
    p = AtomicHerglotz(((s, 1.0),))
    with pytest.raises(AtomAtPoint):
        contact_value(p, s)


def test_extract_atom_round_trip():
    s = BoundaryPoint(1.0)
    p = AtomicHerglotz(((s, 0.6), (BoundaryPoint(3.0), 1.0)), 0.3)
    mass, rest = extract_atom(p, s)
    assert mass == pytest.approx(0.6)
    assert rest.atom_mass_at(s) == 0.0
    assert rest.gamma == p.gamma
    rebuilt = add_herglotz(rest, AtomicHerglotz(((s, mass),)))
    z = 0.2 + 0.1j
    assert eval_herglotz(rebuilt, z) == pytest.approx(eval_herglotz(p, z), abs=1e-15)


def test_extract_missing_atom_is_identity():
    p = AtomicHerglotz(atoms((3.0, 1.0)), 0.3)
    mass, rest = extract_atom(p, BoundaryPoint(1.0))
    assert mass == 0.0
    assert rest is p


def test_caratheodory_extreme_is_unit_kernel():
    s = BoundaryPoint(2.2)
    p = caratheodory_extreme(s)
    assert p.total_mass == 1.0
    assert p.gamma == 0.0
    z = 0.4 - 0.1j
    assert eval_herglotz(p, z) == pytest.approx(herglotz_kernel(s, z), abs=1e-15)


@given(
    st.floats(min_value=0.0, max_value=6.0),
    st.floats(min_value=0.1, max_value=3.0),
    st.floats(min_value=0.0, max_value=4.0),
)
def test_add_and_scale_are_pointwise(theta, mass, c):
    p = AtomicHerglotz(atoms((theta, mass)), 0.7)
    q = AtomicHerglotz(atoms((theta + 1.0, 2.0)), -0.2)
    z = 0.3 + 0.2j
    lhs = eval_herglotz(add_herglotz(p, q), z)
    assert lhs == pytest.approx(eval_herglotz(p, z) + eval_herglotz(q, z), abs=1e-12)
    assert eval_herglotz(scale_herglotz(p, c), z) == pytest.approx(
        c * eval_herglotz(p, z), abs=1e-12
    )


def test_scale_rejects_negative():
    with pytest.raises(ValueError):
        scale_herglotz(AtomicHerglotz(atoms((0.0, 1.0))), -1.0)


# ----------------------------------------------------------------------
# reciprocal map
# ----------------------------------------------------------------------


def test_reciprocal_single_kernel():
    # 1/K_sigma = K_{-sigma}
    s = BoundaryPoint(0.8)
    p = RationalHerglotz(((s, 1.0),), 0.0)
    q = reciprocal(p)
    z = 0.25 - 0.3j
    assert eval_herglotz(q, z) * eval_herglotz(p, z) == pytest.approx(1.0, abs=1e-12)
    assert len(q.atoms) == 1
    assert q.atoms[0][0].same_point(BoundaryPoint(0.8 + math.pi), tol=1e-9)


def test_reciprocal_pointwise_inverse():
    p = RationalHerglotz(atoms((0.5, 0.9), (2.4, 0.3), (4.4, 1.7)), 0.6)
    q = reciprocal(p)
    for z in (0.0, 0.3 + 0.4j, -0.7j, 0.85):
        prod = eval_herglotz(p, z) * eval_herglotz(q, z)
        assert prod == pytest.approx(1.0, abs=1e-10)


def test_reciprocal_involution():
    p = RationalHerglotz(atoms((0.5, 0.9), (2.4, 0.3), (4.4, 1.7)), 0.6)
    back = reciprocal(reciprocal(p))
    assert back.gamma == pytest.approx(p.gamma, abs=1e-10)
    assert len(back.atoms) == len(p.atoms)
    for (s0, m0), (s1, m1) in zip(p.atoms, back.atoms):
        assert s0.angular_distance(s1) < 1e-9
        assert m1 == pytest.approx(m0, abs=1e-10)


def test_reciprocal_interlaces_atoms():
    # poles of 1/p are the zeros of p, which interlace the atoms of p
    p = RationalHerglotz(atoms((0.0, 1.0), (2.0, 1.0), (4.0, 1.0)), 0.0)
    q = reciprocal(p)
    assert len(q.atoms) == 3
    p_angles = sorted(pt.theta for pt, _ in p.atoms)
    for pt, _ in q.atoms:
        assert all(abs(pt.theta - a) > 1e-6 for a in p_angles)


# ----------------------------------------------------------------------
# counterexample integrals
# ----------------------------------------------------------------------


def test_decay_values_frozen():
    assert counterexample_P(1e-1) == pytest.approx(0.5601066973887631, abs=1e-12)
    assert counterexample_P(1e-2) == pytest.approx(0.37071078304254806, abs=1e-12)
    assert counterexample_P(1e-6) == pytest.approx(0.11528381262656391, abs=1e-12)


def test_decay_strictly_monotone():
    vals = [counterexample_P(10.0**-k) for k in range(1, 7)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_decay_rejects_nonpositive():
    with pytest.raises((ValueError, DomainError)):
        counterexample_P(0.0)
    with pytest.raises((ValueError, DomainError)):
        counterexample_P(-1.0)


def test_divergence_is_iterated_log():
    for k in range(1, 5):
        delta = math.exp(-math.exp(float(k)))
        v = counterexample_divergence(delta)
        assert v == pytest.approx(float(k), abs=1e-9)


def test_divergence_rejects_bad_delta():
    with pytest.raises((ValueError, DomainError)):
        counterexample_divergence(0.5)  # not below 1/e
    with pytest.raises((ValueError, DomainError)):
        counterexample_divergence(0.0)
