"""Numerical semiflow of a generator: the initial value problem

    d/dt phi_t(z) = G(phi_t(z)),   phi_0(z) = z,

solved inside the unit disk, optionally together with the variational
equation d/dt (d phi_t/dz) = G'(phi_t) (d phi_t/dz) for the spatial
derivative along the orbit.

Boundary spectral data is recovered from the flow without ever evaluating
on the circle: the quotient

    [(1-|z|^2) / |z - sigma|^2] * [|phi(z) - sigma|^2 / (1 - |phi(z)|^2)]

along the radius z = r sigma tends to phi'(sigma) as r -> 1, and a
Richardson step in h = 1 - r removes the first-order error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from .errors import (
    BoundaryEscape,
    DomainError,
    ExtrapolationDivergence,
    StepFailure,
)
from .generator import (
    GeneratorLike,
    eval_generator,
    eval_generator_derivative,
)
from .herglotz_core import BoundaryPoint


@dataclass(frozen=True)
class ODESettings:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_step: float = 0.01
    boundary_guard: float = 1e-13

    def __post_init__(self) -> None:
        for name in ("rel_tol", "abs_tol", "max_step", "boundary_guard"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive")


DEFAULT_SETTINGS = ODESettings()


@dataclass(frozen=True)
class Trajectory:
    """Sampled orbit; derivatives are d phi_t/dz along it when requested."""

    times: tuple[float, ...]
    points: tuple[complex, ...]
    derivatives: tuple[complex, ...] | None = None

    def __post_init__(self) -> None:
        if len(self.times) != len(self.points):
            raise ValueError("times and points must have equal length")
        if self.derivatives is not None and len(self.derivatives) != len(self.times):
            raise ValueError("derivatives must match times in length")


def _solve(
    rhs: Callable,
    y0: np.ndarray,
    t_final: float,
    settings: ODESettings,
    t_eval: np.ndarray | None = None,
):
    guard = 1.0 - settings.boundary_guard

    def escape(t: float, y: np.ndarray) -> float:
        return abs(y[0]) - guard

    escape.terminal = True
    escape.direction = 1.0

    sol = solve_ivp(
        rhs,
        (0.0, t_final),
        y0,
        method="RK45",
        rtol=settings.rel_tol,
        atol=settings.abs_tol,
        max_step=settings.max_step,
        t_eval=t_eval,
        events=[escape],
    )
    if sol.status == 1:
        raise BoundaryEscape("orbit reached the boundary guard radius")
    if sol.status != 0:
        raise StepFailure(f"integrator failed: {sol.message}")
    return sol


def _require_interior(z0: complex) -> complex:
    z0 = complex(z0)
    if abs(z0) >= 1.0:
        raise DomainError(f"initial point must lie in the open disk, |z0|={abs(z0)}")
    return z0


def integrate_flow(
    gen: GeneratorLike,
    z0: complex,
    t: float,
    settings: ODESettings = DEFAULT_SETTINGS,
) -> complex:
    """phi_t(z0)."""
    z0 = _require_interior(z0)
    if t < 0.0:
        raise DomainError("semigroup time must be nonnegative")
    if t == 0.0:
        return z0

    def rhs(_: float, y: np.ndarray) -> np.ndarray:
        return np.array([eval_generator(gen, complex(y[0]))])

    sol = _solve(rhs, np.array([z0], dtype=complex), t, settings)
    return complex(sol.y[0, -1])


def integrate_flow_with_derivative(
    gen: GeneratorLike,
    z0: complex,
    t: float,
    settings: ODESettings = DEFAULT_SETTINGS,
) -> tuple[complex, complex]:
    """(phi_t(z0), d phi_t/dz at z0) via the variational equation."""
    z0 = _require_interior(z0)
    if t < 0.0:
        raise DomainError("semigroup time must be nonnegative")
    if t == 0.0:
        return z0, 1.0 + 0.0j

    def rhs(_: float, y: np.ndarray) -> np.ndarray:
        z = complex(y[0])
        return np.array(
            [eval_generator(gen, z), eval_generator_derivative(gen, z) * y[1]]
        )

    sol = _solve(rhs, np.array([z0, 1.0], dtype=complex), t, settings)
    return complex(sol.y[0, -1]), complex(sol.y[1, -1])


def flow_trajectory(
    gen: GeneratorLike,
    z0: complex,
    t: float,
    settings: ODESettings = DEFAULT_SETTINGS,
    samples: int = 200,
) -> Trajectory:
    """Orbit and derivative sampled on a uniform time grid of ``samples`` points."""
    z0 = _require_interior(z0)
    if t <= 0.0:
        raise DomainError("trajectory horizon must be positive")
    if samples < 2:
        raise DomainError("at least two samples are required")

    def rhs(_: float, y: np.ndarray) -> np.ndarray:
        z = complex(y[0])
        return np.array(
            [eval_generator(gen, z), eval_generator_derivative(gen, z) * y[1]]
        )

    grid = np.linspace(0.0, t, samples)
    sol = _solve(rhs, np.array([z0, 1.0], dtype=complex), t, settings, t_eval=grid)
    return Trajectory(
        tuple(float(s) for s in sol.t),
        tuple(complex(w) for w in sol.y[0]),
        tuple(complex(w) for w in sol.y[1]),
    )


DEFAULT_RADII = tuple(1.0 - 2.0**-k for k in range(4, 15))


def julia_quotient(
    map_fn: Callable[[complex], complex], sigma: BoundaryPoint, r: float
) -> float:
    """The boundary-derivative quotient of ``map_fn`` at radius r along sigma."""
    if not 0.0 < r < 1.0:
        raise DomainError("radius must lie in (0, 1)")
    sv = sigma.value
    z = r * sv
    w = map_fn(z)
    if abs(w) >= 1.0:
        raise BoundaryEscape("map value left the open disk")
    return ((1.0 - r * r) / abs(z - sv) ** 2) * (abs(w - sv) ** 2 / (1.0 - abs(w) ** 2))


def julia_quotient_estimate(
    map_fn: Callable[[complex], complex],
    sigma: BoundaryPoint,
    radii: Sequence[float] = DEFAULT_RADII,
    tol: float = 1e-3,
) -> float:
    """Radial limit of the quotient, Richardson-extrapolated in h = 1 - r.

    ``radii`` must increase toward 1 with h halving each step, as the
    default ladder does.  The final two extrapolants must agree within
    10 * tol, otherwise the limit is declared unreachable.
    """
    if len(radii) < 3:
        raise DomainError("at least three radii are required for extrapolation")
    quotients = [julia_quotient(map_fn, sigma, r) for r in radii]
    extrapolated = [
        2.0 * quotients[i + 1] - quotients[i] for i in range(len(quotients) - 1)
    ]
    last, prev = extrapolated[-1], extrapolated[-2]
    if abs(last - prev) > 10.0 * tol * max(1.0, abs(last)):
        raise ExtrapolationDivergence(
            f"extrapolants disagree: {prev!r} vs {last!r} at tolerance {tol!r}"
        )
    return extrapolated[-1]


def estimate_boundary_derivative(
    gen: GeneratorLike,
    sigma: BoundaryPoint,
    t: float,
    settings: ODESettings = DEFAULT_SETTINGS,
    radii: Sequence[float] = DEFAULT_RADII,
    tol: float = 1e-3,
) -> float:
    """phi_t'(sigma) at a boundary fixed point, from interior orbits only."""
    return julia_quotient_estimate(
        lambda z: integrate_flow(gen, z, t, settings), sigma, radii, tol
    )


@dataclass(frozen=True)
class AttractionReport:
    entries: tuple[tuple[complex, float, float], ...]
    all_decreased: bool


def dw_attraction_check(
    gen: GeneratorLike,
    tau: complex,
    samples: int = 20,
    t: float = 1.0,
    settings: ODESettings = DEFAULT_SETTINGS,
    rng: np.random.Generator | None = None,
) -> AttractionReport:
    """Empirical check that orbits approach tau.

    Interior tau: the pseudo-hyperbolic distance |(w-tau)/(1-conj(tau)w)|
    to tau strictly decreases along every nontrivial orbit, so the check
    compares it at times 0 and t.  Boundary tau: Euclidean distance to tau
    is compared at times t and 2t (attraction is only asymptotic there).
    """
    if rng is None:
        rng = np.random.default_rng(0)
    tau = complex(tau)
    boundary = abs(abs(tau) - 1.0) <= 1e-12
    entries = []
    all_dec = True
    for _ in range(samples):
        z0 = 0.9 * math.sqrt(rng.uniform()) * np.exp(1j * rng.uniform(0.0, 2 * math.pi))
        z0 = complex(z0)
        if boundary:
            before = abs(integrate_flow(gen, z0, t, settings) - tau)
            after = abs(integrate_flow(gen, z0, 2.0 * t, settings) - tau)
        else:
            before = abs((z0 - tau) / (1.0 - tau.conjugate() * z0))
            w = integrate_flow(gen, z0, t, settings)
            after = abs((w - tau) / (1.0 - tau.conjugate() * w))
        entries.append((z0, before, after))
        if after >= before:
            all_dec = False
    return AttractionReport(tuple(entries), all_dec)
