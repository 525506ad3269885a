"""Independent finite-difference verification of wave-equation residuals.

This module never looks at constraint expressions or closed-form currents:
it samples wave functions pointwise through `PlaneWaveSolution.evaluate`,
applies the momentum operators with central-difference stencils, and
measures how far the result is from zero.  Agreement with the algebraic
checkers is therefore evidence, not tautology.

Quaternionic derivatives honor the multiplication side: the right-operator
momentum multiplies the sampled derivative by i on the right, which differs
from the left variant on any wave with a j-component.

Residuals are reported relative to the largest magnitude among the
operator's additive pieces at the point, keeping them scale-free; for an
exact solution they are dominated by the stencil truncation error O(h^order).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    FourVector,
    qarr_conj,
    qarr_mul,
    qarr_mul_i_right,
    qarr_norm_sq,
    qarr_scale,
)
from .errors import NoisePlateau, PreconditionError, StencilOverflow
from .observables import gamma
from .planewave import Case, PlaneWaveSolution

__all__ = [
    "StencilSpec",
    "kge_residual_fd",
    "continuity_residual_fd",
    "current_fd",
    "current_fd_with_residue",
    "convergence_study",
]

#: relative residual floor treated as machine noise by convergence studies
PLATEAU_FLOOR = 1e-11

# central-difference weights per order: {order: [(shift, weight/h)]}
_FIRST_DERIVATIVE = {
    2: ((1, 0.5), (-1, -0.5)),
    4: ((2, -1.0 / 12.0), (1, 8.0 / 12.0), (-1, -8.0 / 12.0), (-2, 1.0 / 12.0)),
}


@dataclass(frozen=True)
class StencilSpec:
    """Central-difference stencil: step h per axis, order 2 or 4.

    `axes` restricts which coordinate axes are differentiated; exclude an
    axis only when the sampled functions are constant along it (as in the
    one-dimensional barrier problem).
    """

    h: float = 1e-3
    order: int = 2
    axes: tuple = (0, 1, 2, 3)

    def __post_init__(self):
        if self.h <= 0:
            raise ValueError("stencil step must be positive")
        if self.order not in _FIRST_DERIVATIVE:
            raise ValueError("stencil order must be 2 or 4")
        if not set(self.axes) <= {0, 1, 2, 3}:
            raise ValueError("axes must be a subset of {0, 1, 2, 3}")


def _check_finite(values: np.ndarray):
    if not np.all(np.isfinite(values)):
        raise StencilOverflow(
            "stencil samples left floating-point range; shrink the region or rescale"
        )


def _partial(f, points: np.ndarray, axis: int, stencil: StencilSpec) -> np.ndarray:
    """d/dx^axis of a quaternion-array-valued function, at points (...,4)."""
    h = stencil.h
    acc = None
    for shift, weight in _FIRST_DERIVATIVE[stencil.order]:
        shifted = points.copy()
        shifted[..., axis] += shift * h
        val = f(shifted) * (weight / h)
        acc = val if acc is None else acc + val
    _check_finite(acc)
    return acc


def _partial_upper(f, points, axis, stencil):
    """Contravariant derivative d^axis: metric sign on spatial axes."""
    d = _partial(f, points, axis, stencil)
    return d if axis == 0 else -d


def _potential_quaternion(solution: PlaneWaveSolution, points: np.ndarray, mu: int):
    """Quaternion-array samples of the full potential component A^mu(x)."""
    pots = solution.potentials
    u = solution.units
    a0 = pots.A.value(points, u)[..., mu] + 1j * pots.B.value(points, u)[..., mu]
    a1 = pots.A1.value(points, u)[..., mu]
    return np.stack([a0, a1], axis=-1)


def momentum_fd(solution: PlaneWaveSolution, mu: int, stencil: StencilSpec):
    """The mu-th generalized momentum operator applied by finite differences.

    Returns a function of point batches, so it can be composed with itself.
    """
    s = solution
    hbar, c = s.units.hbar, s.units.c
    qc = s.charge / c
    side = s.case.operator_side
    has_potential = not s.potentials.is_zero

    def apply(f):
        def g(points):
            pts = np.asarray(points, dtype=float)
            if mu in stencil.axes:
                d = _partial_upper(f, pts, mu, stencil)
            else:
                d = np.zeros_like(f(pts))
            if side == "L":
                p = qarr_scale(1j * hbar, d)
            else:
                p = qarr_mul_i_right(hbar * d)
            if has_potential:
                p = p - qc * qarr_mul(_potential_quaternion(s, pts, mu), f(pts))
            return p

        return g

    return apply


def _wave(solution):
    def f(points):
        # overflow surfaces as StencilOverflow, not as a numpy warning
        with np.errstate(over="ignore", invalid="ignore"):
            val = solution.evaluate(points)
        _check_finite(val)
        return val

    return f


def kge_residual_fd(solution: PlaneWaveSolution, point, stencil: StencilSpec = StencilSpec()) -> float:
    """Relative wave-equation residual |(P_mu P^mu - m^2 c^2) Phi| at a point.

    Both momentum applications are finite differences on exact samples; the
    result is O(h^order) for true solutions and O(1) for off-shell inputs.
    """
    s = solution
    pts = np.asarray(point, dtype=float)
    f = _wave(s)
    mc2 = (s.mass * s.units.c) ** 2
    signs = (1.0, -1.0, -1.0, -1.0)
    terms = []
    for mu in range(4):
        op = momentum_fd(s, mu, stencil)
        g = op(op(f))
        terms.append(signs[mu] * g(pts))
    mass_term = mc2 * f(pts)
    terms.append(-mass_term)
    residual = np.sum(terms, axis=0)
    scale = max(float(np.sqrt(np.max(qarr_norm_sq(t)))) for t in terms)
    if scale == 0.0:
        return float(np.sqrt(np.max(qarr_norm_sq(residual))))
    return float(np.sqrt(np.max(qarr_norm_sq(residual))) / scale)


def _bracket(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Real bracket {a, b}: symmetric half-sum, returns its real part."""
    return _bracket_complex(a, b).real


def _bracket_complex(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Scalar part of (conj(a) b + conj(b) a)/2 before taking the real part.

    The imaginary residue is structurally zero; it is exposed so tests can
    confirm the bracket realness numerically.
    """
    first = qarr_mul(qarr_conj(a), b)[..., 0]
    second = qarr_mul(qarr_conj(b), a)[..., 0]
    return 0.5 * (first + second)


def _current_fn(solution: PlaneWaveSolution, stencil: StencilSpec):
    """J^mu(points) by finite differences, shape (..., 4)."""
    f = _wave(solution)
    ops = [momentum_fd(solution, mu, stencil) for mu in range(4)]

    def jfun(points):
        pts = np.asarray(points, dtype=float)
        phi = f(pts)
        comps = [_bracket(phi, ops[mu](f)(pts)) for mu in range(4)]
        return np.stack(comps, axis=-1)

    return jfun


def current_fd_with_residue(
    solution: PlaneWaveSolution, point, stencil: StencilSpec = StencilSpec()
):
    """Finite-difference current at one point plus the bracket's imag residue."""
    pts = np.asarray(point, dtype=float)
    f = _wave(solution)
    phi = f(pts)
    comps = []
    residue = 0.0
    for mu in range(4):
        op = momentum_fd(solution, mu, stencil)
        val = _bracket_complex(phi, op(f)(pts))
        comps.append(float(val.real))
        scale = max(1.0, abs(val))
        residue = max(residue, float(abs(val.imag) / scale))
    return FourVector(*comps), residue


def current_fd(solution: PlaneWaveSolution, point, stencil: StencilSpec = StencilSpec()) -> FourVector:
    """Probability-density four-current by finite differences."""
    vec, _ = current_fd_with_residue(solution, point, stencil)
    return vec


def continuity_residual_fd(
    solution: PlaneWaveSolution,
    point,
    stencil: StencilSpec = StencilSpec(),
    include_gamma: bool = True,
) -> float:
    """Relative residual of (d_mu + gamma_mu) J^mu at a point.

    The divergence is a finite difference of the finite-difference current;
    the gamma term is evaluated pointwise.  `include_gamma=False` drops the
    non-conservative term, exposing its size for detection tests.
    """
    s = solution
    pts = np.asarray(point, dtype=float)
    if pts.shape != (4,):
        raise PreconditionError("continuity residual takes a single point")
    jfun = _current_fn(s, stencil)
    terms = []
    for mu in range(4):
        if mu not in stencil.axes:
            continue

        def jmu(p, mu=mu):
            return jfun(p)[..., mu : mu + 1]

        terms.append(float(_partial(jmu, pts, mu, stencil)[..., 0]))
    if include_gamma:
        g = gamma(s, FourVector.from_array(pts))
        j_here = jfun(pts)
        terms.append(
            float(np.sum(g.as_array() * np.array([1.0, -1.0, -1.0, -1.0]) * j_here))
        )
    total = sum(terms)
    # scale by the largest contribution, or by the current magnitude per
    # unit length when every term happens to vanish (conserved flat current)
    scale = max((abs(t) for t in terms), default=0.0)
    scale = max(scale, float(np.max(np.abs(jfun(pts)))))
    if scale == 0.0:
        return abs(total)
    return abs(total) / scale


def convergence_study(
    solution: PlaneWaveSolution,
    residual_kind: str,
    h_list,
    point=(0.11, 0.07, -0.05, 0.03),
    order: int = 2,
) -> float:
    """Least-squares log-log slope of residual vs step size.

    Expects at least three geometrically spaced steps.  Raises NoisePlateau
    when every residual sits on the precision floor: that means the
    solution is exact and the steps are too small to expose truncation
    error, which callers should count as a pass.
    """
    hs = [float(h) for h in h_list]
    if len(hs) < 3:
        raise PreconditionError("need at least three step sizes")
    ratios = [hs[i] / hs[i + 1] for i in range(len(hs) - 1)]
    if any(r <= 1.0 for r in ratios):
        raise PreconditionError("step sizes must decrease")
    if max(ratios) / min(ratios) > 1.5:
        raise PreconditionError("step sizes should be geometrically spaced")

    kinds = {
        "kge": kge_residual_fd,
        "continuity": continuity_residual_fd,
    }
    if residual_kind not in kinds:
        raise PreconditionError(f"unknown residual kind {residual_kind!r}")
    fn = kinds[residual_kind]
    residuals = [fn(solution, point, StencilSpec(h=h, order=order)) for h in hs]
    if all(r <= PLATEAU_FLOOR for r in residuals):
        raise NoisePlateau(
            "residuals at machine precision for every step (exact solution)",
            residuals=residuals,
        )
    logs = np.log(np.maximum(residuals, 1e-300))
    slope = float(np.polyfit(np.log(hs), logs, 1)[0])
    return slope
