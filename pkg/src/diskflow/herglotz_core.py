"""Finite-atomic Herglotz functions and their boundary functionals.

A Herglotz function is holomorphic on the unit disk with nonnegative real
part.  Everything in this package works with the finite-atomic subclass

    p(z) = sum_j m_j * (s_j + z)/(s_j - z) + i*gamma,

where the s_j are distinct points of the unit circle, m_j >= 0, and gamma
is real.  The kernel K_s(z) = (s+z)/(s-z) maps the disk onto the right
half-plane, so Re p >= 0 is automatic.  The module provides evaluation,
the mass functional p_star, the derivative-type functional p_sharp,
contact values, atom surgery, reciprocals within the rational class, and
the two quadrature routines used by the decay/divergence counterexample.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from .errors import (
    AtomAtPoint,
    DomainError,
    QuadratureFailure,
    RootFindingFailure,
)

TWO_PI = 2.0 * math.pi

# Angular tolerance for identifying boundary points; two atoms closer than
# this are considered the same point and their masses are merged.
ANGLE_TOL = 1e-12


@dataclass(frozen=True)
class BoundaryPoint:
    """A point of the unit circle stored as an angle in [0, 2*pi).

    Storing the angle keeps |value| = 1 exact by construction.  Equality is
    tolerance-based: two points are equal when their angles differ by an
    integer multiple of 2*pi within 1e-12.
    """

    theta: float

    def __post_init__(self) -> None:
        t = float(self.theta) % TWO_PI
        if t >= TWO_PI:  # guard against rounding in the modulo itself
            t -= TWO_PI
        object.__setattr__(self, "theta", t)

    @classmethod
    def from_complex(cls, w: complex) -> "BoundaryPoint":
        """Radial projection of a nonzero complex number onto the circle."""
        if w == 0:
            raise DomainError("cannot project 0 onto the unit circle")
        return cls(cmath.phase(w))

    @property
    def value(self) -> complex:
        return complex(math.cos(self.theta), math.sin(self.theta))

    def angular_distance(self, other: "BoundaryPoint") -> float:
        d = abs(self.theta - other.theta) % TWO_PI
        return min(d, TWO_PI - d)

    def same_point(self, other: "BoundaryPoint", tol: float = ANGLE_TOL) -> bool:
        return self.angular_distance(other) <= tol

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BoundaryPoint):
            return NotImplemented
        return self.same_point(other)

    # Tolerance equality admits no finer consistent hash.
    def __hash__(self) -> int:
        return 0


@dataclass(frozen=True)
class AtomicHerglotz:
    """A Herglotz function given by finitely many boundary atoms plus i*gamma.

    Construction normalizes the atom list: zero-mass atoms are dropped,
    coincident points (within 1e-12 in angle) are merged by adding masses,
    and atoms are sorted by angle.  Negative masses are rejected.
    """

    atoms: tuple[tuple[BoundaryPoint, float], ...] = field(default_factory=tuple)
    gamma: float = 0.0

    def __post_init__(self) -> None:
        merged: list[tuple[BoundaryPoint, float]] = []
        for point, mass in self.atoms:
            m = float(mass)
            if m < 0.0:
                raise ValueError(f"atom mass must be nonnegative, got {m}")
            if m == 0.0:
                continue
            for i, (q, existing) in enumerate(merged):
                if q.same_point(point):
                    merged[i] = (q, existing + m)
                    break
            else:
                merged.append((point, m))
        merged.sort(key=lambda pm: pm[0].theta)
        object.__setattr__(self, "atoms", tuple(merged))
        object.__setattr__(self, "gamma", float(self.gamma))

    @property
    def total_mass(self) -> float:
        return sum(m for _, m in self.atoms)

    def atom_mass_at(self, sigma: BoundaryPoint) -> float:
        for point, mass in self.atoms:
            if point.same_point(sigma):
                return mass
        return 0.0

    def is_trivial(self) -> bool:
        """True when p is a purely imaginary constant."""
        return not self.atoms


@dataclass(frozen=True)
class RationalHerglotz(AtomicHerglotz):
    """Atomic Herglotz function with at least one atom, all masses positive.

    These are rational of degree m (the number of atoms) with simple poles
    on the unit circle; the class is closed under pointwise reciprocal.
    """

    def __post_init__(self) -> None:
        super().__post_init__()
        if not self.atoms:
            raise ValueError("RationalHerglotz requires at least one atom")


def herglotz_kernel(s: BoundaryPoint, z: complex) -> complex:
    sv = s.value
    return (sv + z) / (sv - z)


def eval_herglotz(p: AtomicHerglotz, z: complex) -> complex:
    """Evaluate p at an interior point."""
    if abs(z) >= 1.0:
        raise DomainError(f"evaluation point must lie in the open disk, |z|={abs(z)}")
    total = complex(0.0, p.gamma)
    for point, mass in p.atoms:
        total += mass * herglotz_kernel(point, z)
    return total


def herglotz_derivative(p: AtomicHerglotz, z: complex) -> complex:
    """p'(z).  Each kernel differentiates to 2s/(s-z)^2."""
    if abs(z) >= 1.0:
        raise DomainError(f"evaluation point must lie in the open disk, |z|={abs(z)}")
    total = 0.0 + 0.0j
    for point, mass in p.atoms:
        sv = point.value
        total += mass * 2.0 * sv / (sv - z) ** 2
    return total


def herglotz_second_derivative(p: AtomicHerglotz, z: complex) -> complex:
    """p''(z).  Each kernel contributes 4s/(s-z)^3."""
    if abs(z) >= 1.0:
        raise DomainError(f"evaluation point must lie in the open disk, |z|={abs(z)}")
    total = 0.0 + 0.0j
    for point, mass in p.atoms:
        sv = point.value
        total += mass * 4.0 * sv / (sv - z) ** 3
    return total


def p_star(p: AtomicHerglotz, sigma: BoundaryPoint) -> float:
    """Angular limit of (1 - conj(sigma) z) p(z): twice the atom mass at sigma."""
    return 2.0 * p.atom_mass_at(sigma)


def p_sharp(p: AtomicHerglotz, sigma: BoundaryPoint) -> float:
    """Derivative-type boundary functional; +inf when sigma carries an atom.

    For atom-free sigma this is 2 * sum_j m_j / |s_j - sigma|^2, the limit of
    Re p(r sigma)/(1-r) as r -> 1.
    """
    sv = sigma.value
    total = 0.0
    for point, mass in p.atoms:
        if point.same_point(sigma):
            return math.inf
        total += mass / abs(point.value - sv) ** 2
    return 2.0 * total


def contact_value(p: AtomicHerglotz, sigma: BoundaryPoint) -> complex:
    """Angular limit of p at sigma, purely imaginary for atom-free sigma."""
    sv = sigma.value
    total = complex(0.0, p.gamma)
    for point, mass in p.atoms:
        if point.same_point(sigma):
            raise AtomAtPoint(f"p carries an atom at angle {sigma.theta}")
        total += mass * herglotz_kernel(point, sv)
    # the limit is purely imaginary; drop the rounding residue
    return complex(0.0, total.imag)


def extract_atom(p: AtomicHerglotz, sigma: BoundaryPoint) -> tuple[float, AtomicHerglotz]:
    """Split off the atom at sigma; returns (mass, remainder without it)."""
    mass = p.atom_mass_at(sigma)
    if mass == 0.0:
        return 0.0, p
    rest = tuple(pm for pm in p.atoms if not pm[0].same_point(sigma))
    return mass, AtomicHerglotz(rest, p.gamma)


def caratheodory_extreme(sigma: BoundaryPoint) -> AtomicHerglotz:
    """The single-kernel function K_sigma, an extreme point of the class p(0)=1."""
    return AtomicHerglotz(((sigma, 1.0),), 0.0)


def add_herglotz(p: AtomicHerglotz, q: AtomicHerglotz) -> AtomicHerglotz:
    return AtomicHerglotz(p.atoms + q.atoms, p.gamma + q.gamma)


def scale_herglotz(p: AtomicHerglotz, c: float) -> AtomicHerglotz:
    if c < 0:
        raise ValueError("scale factor must be nonnegative")
    return AtomicHerglotz(tuple((pt, m * c) for pt, m in p.atoms), p.gamma * c)


# ----------------------------------------------------------------------
# reciprocal within the rational class
# ----------------------------------------------------------------------

_ROOT_TOL = 1e-8


def _numerator_coefficients(p: RationalHerglotz) -> np.ndarray:
    """Coefficients (descending powers) of N where p = N / prod_j (s_j - z).

    N(z) = i*gamma*D(z) + sum_j m_j (s_j + z) prod_{l != j} (s_l - z) with
    D(z) = prod_j (s_j - z).  Degree is exactly m: the leading coefficient is
    (-1)^m (i*gamma - sum m_j), never zero since the total mass is positive.
    """
    points = [pt.value for pt, _ in p.atoms]
    masses = [m for _, m in p.atoms]
    m = len(points)
    sign = (-1.0) ** m
    n = np.asarray(1j * p.gamma * sign * np.poly(points), dtype=complex)
    for j in range(m):
        others = points[:j] + points[j + 1 :]
        if others:
            base = (-1.0) ** (m - 1) * np.poly(others)
        else:
            base = np.array([1.0 + 0.0j])
        term = masses[j] * np.convolve(np.array([1.0, points[j]], dtype=complex), base)
        n[-len(term):] += term
    return n


def reciprocal(p: RationalHerglotz) -> RationalHerglotz:
    """Pointwise reciprocal 1/p, again rational Herglotz of the same degree.

    The atoms of 1/p sit at the zeros of p, which are simple and lie on the
    unit circle; they are located as companion-matrix roots of the numerator
    polynomial and projected radially onto the circle.  Each zero k receives
    mass 1/(2 p#(k)) with p#(k) = -k p'(k), and the imaginary constant is
    fixed by matching 1/p at the origin.
    """
    coeffs = _numerator_coefficients(p)
    roots = np.roots(coeffs)
    # two Newton steps against the numerator sharpen companion-matrix roots,
    # which drift when atoms nearly collide
    deriv = np.polyder(coeffs)
    for _ in range(2):
        slope = np.polyval(deriv, roots)
        good = slope != 0
        roots[good] -= np.polyval(coeffs, roots[good]) / slope[good]
    m = len(p.atoms)
    if len(roots) != m:
        raise RootFindingFailure(f"numerator degree dropped: {len(roots)} roots for {m} atoms")
    radii_err = np.abs(np.abs(roots) - 1.0)
    if np.any(radii_err >= _ROOT_TOL):
        raise RootFindingFailure(
            f"root off the unit circle by {radii_err.max():.3e} (tolerance {_ROOT_TOL})"
        )
    if m > 1:
        dists = np.abs(roots[:, None] - roots[None, :])[np.triu_indices(m, k=1)]
        if np.any(dists <= _ROOT_TOL):
            raise RootFindingFailure("numerator roots are not simple within tolerance")

    zeros = [BoundaryPoint.from_complex(r) for r in roots]
    new_atoms = []
    for kappa in zeros:
        kv = kappa.value
        # At a regular zero on the circle, p# reduces to -kappa p'(kappa);
        # evaluation there is finite because zeros and poles are disjoint.
        sharp = (-kv * herglotz_derivative_circle(p, kv)).real
        new_atoms.append((kappa, 1.0 / (2.0 * sharp)))
    p0 = complex(p.total_mass, p.gamma)
    new_gamma = (1.0 / p0).imag
    return RationalHerglotz(tuple(new_atoms), new_gamma)


def herglotz_derivative_circle(p: AtomicHerglotz, w: complex) -> complex:
    """p' by direct summation, valid anywhere off the atom set."""
    total = 0.0 + 0.0j
    for point, mass in p.atoms:
        sv = point.value
        total += mass * 2.0 * sv / (sv - w) ** 2
    return total


# ----------------------------------------------------------------------
# decay/divergence counterexample quadrature
# ----------------------------------------------------------------------

_E_INV = math.exp(-1.0)


def counterexample_P(y: float) -> float:
    """P(iy)/(2i) = integral over (0, 1/e) of y / ((t^2+y^2) log(1/t)) dt.

    The integrand peaks on the scale t ~ y; the quadrature is told about
    that scale through breakpoints.  Tends to 0 as y -> 0 even though the
    generating measure fails the reciprocal-integrability test.
    """
    if not 0.0 < y < 1.0:
        raise DomainError(f"y must lie in (0,1), got {y}")

    def integrand(t: float) -> float:
        return y / ((t * t + y * y) * math.log(1.0 / t))

    breakpoints = sorted({min(y, 0.9 * _E_INV), min(10.0 * y, 0.9 * _E_INV)})
    value, err = quad(
        integrand, 0.0, _E_INV, points=breakpoints, limit=500, epsabs=1e-10, epsrel=1e-10
    )
    if err > 1e-8:
        raise QuadratureFailure(f"decay integral error estimate {err:.2e} exceeds 1e-8")
    return value


def counterexample_divergence(delta: float) -> float:
    """Integral over (delta, 1/e) of dt / (t log(1/t)), evaluated by quadrature.

    Substituting s = log(1/t) turns this into the integral of 1/s over
    [1, log(1/delta)], which adaptive quadrature handles at any delta in
    (0, 1/e); the closed form is log log(1/delta).  Grows without bound as
    delta -> 0.
    """
    if not 0.0 < delta < _E_INV:
        raise DomainError(f"delta must lie in (0, 1/e), got {delta}")
    upper = math.log(1.0 / delta)
    value, err = quad(lambda s: 1.0 / s, 1.0, upper, limit=500, epsabs=1e-12, epsrel=1e-12)
    if err > 1e-9:
        raise QuadratureFailure(f"divergence integral error estimate {err:.2e} exceeds 1e-9")
    return value
