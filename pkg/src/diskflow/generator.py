"""Infinitesimal generators with a prescribed Denjoy-Wolff point and
boundary repelling fixed points.

A configuration fixes the attracting point tau (|tau| <= 1), the repelling
boundary points sigma_1..sigma_n and target spectral values lambda_k < 0.
Every generator of the class arises as

    G(z) = (tau - z)(1 - conj(tau) z) / (p(z) + p0(z)),

where p is any Herglotz function and p0 is the configuration's base
function, the atomic Herglotz function with mass alpha_k at sigma_k,
alpha_k = |tau - sigma_k|^2 / (2 |lambda_k|).  The actual spectral value at
sigma_k is lambda_k exactly when p carries no atom there, and moves toward
zero as mass accumulates at sigma_k.

The raw product form G(z) = (tau - z)(1 - conj(tau) z) p*(z) is available
as BerksonPortaSpec; it characterizes all generators, without fixed-point
bookkeeping.  The zero field has its own marker type since it belongs to
every class but has no Herglotz denominator.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .errors import DegenerateConfig, DomainError
from .herglotz_core import (
    AtomicHerglotz,
    BoundaryPoint,
    RationalHerglotz,
    contact_value,
    eval_herglotz,
    herglotz_derivative,
    herglotz_second_derivative,
    p_sharp,
    p_star,
    reciprocal,
    scale_herglotz,
)

BOUNDARY_TOL = 1e-12

# |contact value| below this reads as zero when classifying a boundary
# Denjoy-Wolff point as hyperbolic; designed inputs cancel to ~1e-16 while
# generic random ones sit far above.
CONTACT_TOL = 1e-9


def _is_on_circle(tau: complex) -> bool:
    return abs(abs(tau) - 1.0) <= BOUNDARY_TOL


@dataclass(frozen=True)
class FixedPointConfig:
    """(tau, sigma_1..sigma_n, lambda_1..lambda_n) with derived quantities."""

    tau: complex
    sigmas: tuple[BoundaryPoint, ...]
    lambdas: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "tau", complex(self.tau))
        object.__setattr__(self, "sigmas", tuple(self.sigmas))
        object.__setattr__(self, "lambdas", tuple(float(v) for v in self.lambdas))
        if len(self.sigmas) == 0:
            raise DegenerateConfig("at least one repelling boundary point is required")
        if len(self.sigmas) != len(self.lambdas):
            raise DegenerateConfig("sigmas and lambdas must have equal length")
        if any(v >= 0.0 for v in self.lambdas):
            raise DegenerateConfig("repelling spectral values must be negative")
        if abs(self.tau) > 1.0 + BOUNDARY_TOL:
            raise DomainError(f"|tau| must not exceed 1, got {abs(self.tau)}")
        for i in range(len(self.sigmas)):
            for j in range(i + 1, len(self.sigmas)):
                if self.sigmas[i].same_point(self.sigmas[j]):
                    raise DegenerateConfig("repelling boundary points must be distinct")
        if self.is_boundary:
            tau_bp = BoundaryPoint.from_complex(self.tau)
            if any(tau_bp.same_point(s) for s in self.sigmas):
                raise DegenerateConfig("tau must not coincide with a repelling point")

    @property
    def n(self) -> int:
        return len(self.sigmas)

    @property
    def is_boundary(self) -> bool:
        return _is_on_circle(self.tau)

    @cached_property
    def alphas(self) -> tuple[float, ...]:
        return tuple(
            abs(self.tau - s.value) ** 2 / (2.0 * abs(v))
            for s, v in zip(self.sigmas, self.lambdas)
        )

    @cached_property
    def capA(self) -> float:
        """Sum of the alpha_k; also Re of the base function at the origin."""
        return sum(self.alphas)

    @cached_property
    def capB(self) -> float:
        return sum(
            (s.value.conjugate() * self.tau).imag / abs(v)
            for s, v in zip(self.sigmas, self.lambdas)
        )

    @cached_property
    def inv_lambda_sum(self) -> float:
        return sum(1.0 / abs(v) for v in self.lambdas)

    @cached_property
    def base_herglotz(self) -> AtomicHerglotz:
        """p0: mass alpha_k at sigma_k, no imaginary constant."""
        return AtomicHerglotz(tuple(zip(self.sigmas, self.alphas)), 0.0)


@dataclass(frozen=True)
class GeneratorSpec:
    """A generator of the class over ``config`` selected by a Herglotz p."""

    config: FixedPointConfig
    p: AtomicHerglotz = field(default_factory=AtomicHerglotz)


@dataclass(frozen=True)
class BerksonPortaSpec:
    """Raw product form (tau - z)(1 - conj(tau) z) (p*(z) + const).

    The nonnegative real ``const`` extends the atomic type to constants with
    positive real part (an atomic measure alone cannot represent them).
    """

    tau: complex
    pstar: AtomicHerglotz = field(default_factory=AtomicHerglotz)
    const: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "tau", complex(self.tau))
        object.__setattr__(self, "const", float(self.const))
        if abs(self.tau) > 1.0 + BOUNDARY_TOL:
            raise DomainError(f"|tau| must not exceed 1, got {abs(self.tau)}")
        if self.const < 0.0:
            raise DomainError("constant part must be nonnegative")


@dataclass(frozen=True)
class TrivialGenerator:
    """Marker for the zero field G = 0 (every point fixed)."""


TRIVIAL_GENERATOR = TrivialGenerator()

GeneratorLike = GeneratorSpec | BerksonPortaSpec | TrivialGenerator


def _mobius_factor(tau: complex, z: complex) -> complex:
    return (tau - z) * (1.0 - tau.conjugate() * z)


def _mobius_factor_d1(tau: complex, z: complex) -> complex:
    return -(1.0 + abs(tau) ** 2) + 2.0 * tau.conjugate() * z


def eval_p0(config: FixedPointConfig, z: complex) -> complex:
    """The base function p0 at an interior point; Re of the result is positive."""
    return eval_herglotz(config.base_herglotz, z)


def denominator_herglotz(spec: GeneratorSpec) -> RationalHerglotz:
    """p + p0 as a single rational Herglotz function (atoms merged)."""
    merged = spec.p.atoms + spec.config.base_herglotz.atoms
    return RationalHerglotz(merged, spec.p.gamma)


def eval_denominator(spec: GeneratorSpec, z: complex) -> complex:
    return eval_herglotz(spec.p, z) + eval_p0(spec.config, z)


def eval_generator(gen: GeneratorLike, z: complex) -> complex:
    if isinstance(gen, TrivialGenerator):
        if abs(z) >= 1.0:
            raise DomainError("evaluation point must lie in the open disk")
        return 0.0 + 0.0j
    if isinstance(gen, BerksonPortaSpec):
        value = eval_herglotz(gen.pstar, z) + gen.const
        return _mobius_factor(gen.tau, z) * value
    return _mobius_factor(gen.config.tau, z) / eval_denominator(gen, z)


def eval_generator_derivative(gen: GeneratorLike, z: complex) -> complex:
    """Exact analytic derivative of eval_generator."""
    if isinstance(gen, TrivialGenerator):
        if abs(z) >= 1.0:
            raise DomainError("evaluation point must lie in the open disk")
        return 0.0 + 0.0j
    if isinstance(gen, BerksonPortaSpec):
        value = eval_herglotz(gen.pstar, z) + gen.const
        d1 = herglotz_derivative(gen.pstar, z)
        return _mobius_factor_d1(gen.tau, z) * value + _mobius_factor(gen.tau, z) * d1
    tau = gen.config.tau
    u = _mobius_factor(tau, z)
    du = _mobius_factor_d1(tau, z)
    q = eval_denominator(gen, z)
    dq = herglotz_derivative(gen.p, z) + herglotz_derivative(gen.config.base_herglotz, z)
    return (du * q - u * dq) / q**2


def eval_generator_second_derivative(gen: GeneratorLike, z: complex) -> complex:
    if isinstance(gen, TrivialGenerator):
        if abs(z) >= 1.0:
            raise DomainError("evaluation point must lie in the open disk")
        return 0.0 + 0.0j
    if isinstance(gen, BerksonPortaSpec):
        value = eval_herglotz(gen.pstar, z) + gen.const
        d1 = herglotz_derivative(gen.pstar, z)
        d2 = herglotz_second_derivative(gen.pstar, z)
        u = _mobius_factor(gen.tau, z)
        du = _mobius_factor_d1(gen.tau, z)
        ddu = 2.0 * gen.tau.conjugate()
        return ddu * value + 2.0 * du * d1 + u * d2
    tau = gen.config.tau
    u = _mobius_factor(tau, z)
    du = _mobius_factor_d1(tau, z)
    ddu = 2.0 * tau.conjugate()
    q = eval_denominator(gen, z)
    dq = herglotz_derivative(gen.p, z) + herglotz_derivative(gen.config.base_herglotz, z)
    ddq = herglotz_second_derivative(gen.p, z) + herglotz_second_derivative(
        gen.config.base_herglotz, z
    )
    return ((ddu * q - u * ddq) * q - 2.0 * dq * (du * q - u * dq)) / q**3


def dw_spectral_value(
    gen: GeneratorLike, contact_tol: float = CONTACT_TOL
) -> complex | float:
    """Spectral value at the Denjoy-Wolff point.

    Interior tau: the complex number (1-|tau|^2) / (p(tau) + p0(tau)),
    with nonnegative real part.  Boundary tau: a real value >= 0; it is
    zero when p carries an atom at tau or the denominator's contact value
    there does not vanish, and 1/(p#(tau) + sum_k 1/|lambda_k|) otherwise.
    """
    if isinstance(gen, TrivialGenerator):
        return 0.0
    if isinstance(gen, BerksonPortaSpec):
        raise DomainError("spectral value by formula requires the fixed-point form")
    config = gen.config
    tau = config.tau
    if not config.is_boundary:
        return (1.0 - abs(tau) ** 2) / eval_denominator(gen, tau)
    tau_bp = BoundaryPoint.from_complex(tau)
    if gen.p.atom_mass_at(tau_bp) > 0.0:
        return 0.0
    contact = contact_value(gen.p, tau_bp) + contact_value(config.base_herglotz, tau_bp)
    if abs(contact) > contact_tol:
        return 0.0
    return 1.0 / (p_sharp(gen.p, tau_bp) + config.inv_lambda_sum)


def brfp_spectral_value(spec: GeneratorSpec, k: int) -> float:
    """Actual spectral value at sigma_k (0-based index).

    Equals lambda_k exactly when p has no atom at sigma_k; an atom of mass
    m relaxes it to -|lambda_k| / (1 + m/alpha_k), still negative.
    """
    config = spec.config
    if not 0 <= k < config.n:
        raise DomainError(f"index {k} out of range for {config.n} fixed points")
    mass = p_star(spec.p, config.sigmas[k]) / 2.0
    return -abs(config.lambdas[k]) / (1.0 + mass / config.alphas[k])


def beta(spec: GeneratorSpec) -> float:
    """Parabolic third-order coefficient at a boundary Denjoy-Wolff point.

    Equals the denominator's atom functional at tau, which reduces to
    p_star of p there (the base function is holomorphic across tau).
    """
    if not spec.config.is_boundary:
        raise DomainError("beta is defined for a boundary Denjoy-Wolff point only")
    return p_star(spec.p, BoundaryPoint.from_complex(spec.config.tau))


def is_generator(bp: GeneratorLike) -> bool:
    """Witness API: every well-formed spec of any of the three kinds is a
    generator (the product form is necessary and sufficient)."""
    return isinstance(bp, (GeneratorSpec, BerksonPortaSpec, TrivialGenerator))


def to_berkson_porta(spec: GeneratorSpec) -> BerksonPortaSpec:
    """Rewrite in raw product form via the reciprocal of p + p0."""
    return BerksonPortaSpec(spec.config.tau, reciprocal(denominator_herglotz(spec)))


def spec_from_denominator(
    tau: complex,
    sigmas: tuple[BoundaryPoint, ...],
    q: RationalHerglotz,
    match_tol: float = 1e-9,
) -> GeneratorSpec:
    """Recover a fixed-point spec from a denominator function q = p + p0.

    Each sigma_k must carry an atom of q (that is what makes it a repelling
    fixed point); its mass determines the spectral value, and the remaining
    atoms plus the imaginary constant form p.  ``match_tol`` absorbs root
    drift when q came out of a reciprocal computation.
    """
    lambdas = []
    remaining = list(q.atoms)
    for s in sigmas:
        hit = None
        for i, (pt, mass) in enumerate(remaining):
            if pt.same_point(s, tol=match_tol):
                hit = i
                break
        if hit is None:
            raise DegenerateConfig(
                f"denominator lacks an atom at angle {s.theta}; not a repelling point"
            )
        _, mass = remaining.pop(hit)
        lambdas.append(-abs(tau - s.value) ** 2 / (2.0 * mass))
    config = FixedPointConfig(tau, tuple(sigmas), tuple(lambdas))
    return GeneratorSpec(config, AtomicHerglotz(tuple(remaining), q.gamma))


def scale_generator(spec: GeneratorSpec, factor: float) -> GeneratorSpec:
    """The generator ``factor * G`` (factor > 0), again in fixed-point form.

    Scaling multiplies every spectral value by the factor; the denominator
    scales by its reciprocal.
    """
    if factor <= 0.0:
        raise DomainError("scale factor must be positive")
    config = spec.config
    scaled = FixedPointConfig(
        config.tau,
        config.sigmas,
        tuple(v * factor for v in config.lambdas),
    )
    return GeneratorSpec(scaled, scale_herglotz(spec.p, 1.0 / factor))


def convex_combination(
    first: GeneratorSpec, second: GeneratorSpec, weight: float
) -> GeneratorSpec:
    """Pointwise convex combination, reconstructed in fixed-point form.

    Both specs must share tau and the repelling set.  The combination's
    denominator is the reciprocal of the weighted mean of the two
    reciprocal denominators; the result is re-split into spectral data and
    a Herglotz remainder.
    """
    if not 0.0 <= weight <= 1.0:
        raise DomainError("weight must lie in [0, 1]")
    ca, cb = first.config, second.config
    if abs(ca.tau - cb.tau) > BOUNDARY_TOL or ca.n != cb.n:
        raise DegenerateConfig("specs must share the fixed-point skeleton")
    if any(not a.same_point(b) for a, b in zip(ca.sigmas, cb.sigmas)):
        raise DegenerateConfig("specs must share the repelling set")
    if weight == 0.0:
        return second
    if weight == 1.0:
        return first
    ra = reciprocal(denominator_herglotz(first))
    rb = reciprocal(denominator_herglotz(second))
    mixed = RationalHerglotz(
        tuple((pt, weight * m) for pt, m in ra.atoms)
        + tuple((pt, (1.0 - weight) * m) for pt, m in rb.atoms),
        weight * ra.gamma + (1.0 - weight) * rb.gamma,
    )
    return spec_from_denominator(ca.tau, ca.sigmas, reciprocal(mixed))
