"""Currents, continuity vectors, and box expectation values.

Everything here is an expectation built from the real bracket
{a, b} = (1/2)[conj(a) b + conj(b) a]: probability-density four-currents
J^mu = {Phi, P^mu Phi}, the non-hermiticity vector gamma entering
(d_mu + gamma_mu) J^mu = 0, and energy/momentum moments integrated over a
finite rectangular box at a fixed time slice (plane waves are not
normalizable over all of space, so every reported expectation is a
(coefficient, norm-integral) pair; ratios of expectations are
box-independent whenever P = 0).

Closed-form currents by case, with D = |phi0|^2 - |phi1|^2 and
N = |phi0|^2 + |phi1|^2, all times exp(2 P.x / hbar):

* complex cases, shared-exponent left, right-exponent right:
      J^mu = -(K + qA/c)^mu N
* right-exponent left (second) and shared-exponent right (first):
      J^mu = -[K^mu D + (q/c) A^mu N]

The sign of the measured momentum in the D-weighted cases flips across
|phi0| = |phi1|: the j-component carries opposite-sign momentum content.

The continuity vector gamma is -(2/hbar)(q/c) B for the complex
non-hermitian case and for both left-operator quaternionic cases (the
quaternion expression (q/c)(i A - conj(A) i) collapses to it exactly).  For
right-operator cases gamma is the sandwich expression built from Phi i
conj(Phi), which expands to the B and Im(A1 cross-amplitude) combination
implemented in `gamma_right_expanded`; both paths are exposed and must
agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    ComplexFourVector,
    FourVector,
    I as QUAT_I,
    Quaternion,
    minkowski_dot,
    quat_mul,
)
from .errors import PreconditionError
from .planewave import (
    Case,
    ORIGIN,
    PlaneWaveSolution,
    second_moment_density,
)
from .units import Units

__all__ = [
    "Box",
    "CurrentSample",
    "ExpectationSet",
    "current",
    "current_coefficient",
    "gamma",
    "gamma_left_quaternion_form",
    "gamma_right_expanded",
    "expectations",
    "conservation_residual",
    "norm_integral",
]


@dataclass(frozen=True)
class Box:
    """Rectangular integration region at a fixed time slice."""

    t: float = 0.0
    bounds: tuple = ((0.0, 1.0), (0.0, 1.0), (0.0, 1.0))

    def __post_init__(self):
        if len(self.bounds) != 3 or any(len(b) != 2 for b in self.bounds):
            raise ValueError("bounds must be three (lo, hi) pairs")
        if any(hi <= lo for lo, hi in self.bounds):
            raise ValueError("box must have positive extent on every axis")

    @property
    def volume(self) -> float:
        return float(np.prod([hi - lo for lo, hi in self.bounds]))


@dataclass(frozen=True)
class CurrentSample:
    point: FourVector
    J: FourVector
    case: Case


def _amplitude_weights(solution: PlaneWaveSolution):
    w0 = abs(solution.phi0) ** 2
    w1 = abs(solution.phi1) ** 2
    return w0 + w1, w0 - w1


_SUM_WEIGHTED = (
    Case.USUAL,
    Case.GENERALIZED,
    Case.NON_HERMITIAN,
    Case.QUAT_LEFT_FIRST,
    Case.QUAT_RIGHT_SECOND,
)


def current_coefficient(solution: PlaneWaveSolution, point: FourVector = ORIGIN) -> FourVector:
    """J^mu(x) / exp(2 P.x / hbar): the case's closed-form current vector."""
    s = solution
    qc = s.charge / s.units.c
    a = s.potentials.a_at(point, s.units).as_array()
    k = s.K.as_array()
    n, d = _amplitude_weights(s)
    if s.case in _SUM_WEIGHTED:
        coef = -(k + qc * a) * n
    else:
        coef = -(k * d + qc * a * n)
    return FourVector.from_array(coef)


def current(solution: PlaneWaveSolution, point) -> FourVector:
    """Probability-density four-current at a spacetime point (closed form)."""
    pt = point if isinstance(point, FourVector) else FourVector.from_array(point)
    s = solution
    grow = float(
        np.exp(2.0 * minkowski_dot(s.P, pt) / s.units.hbar)
    )
    return grow * current_coefficient(s, pt)


def current_sample(solution: PlaneWaveSolution, point) -> CurrentSample:
    pt = point if isinstance(point, FourVector) else FourVector.from_array(point)
    return CurrentSample(pt, current(solution, pt), solution.case)


# ---------------------------------------------------------------------------
# Non-hermiticity vectors
# ---------------------------------------------------------------------------

def gamma(solution: PlaneWaveSolution, point=ORIGIN) -> FourVector:
    """Continuity-equation vector gamma with (d_mu + gamma_mu) J^mu = 0.

    Zero for the hermitian cases; -(2/hbar)(q/c) B^mu for the complex
    non-hermitian and left-operator quaternionic cases; the sandwich
    expression for right-operator cases (possibly point-dependent).
    """
    s = solution
    pt = point if isinstance(point, FourVector) else FourVector.from_array(point)
    if s.case in (Case.USUAL, Case.GENERALIZED):
        return FourVector.zero()
    if s.case in (Case.NON_HERMITIAN, Case.QUAT_LEFT_FIRST, Case.QUAT_LEFT_SECOND):
        b = s.potentials.b_at(pt, s.units)
        return (-2.0 * s.charge / (s.units.hbar * s.units.c)) * b
    return _gamma_right_sandwich(s, pt)


def gamma_left_quaternion_form(solution: PlaneWaveSolution, point=ORIGIN) -> FourVector:
    """(q/(hbar c)) (i A^mu - conj(A^mu) i) evaluated with quaternion algebra.

    Collapses to -(2/hbar)(q/c) B^mu identically (the A1 j terms cancel);
    kept as an independent expression path for testing.
    """
    s = solution
    pt = point if isinstance(point, FourVector) else FourVector.from_array(point)
    a0 = s.potentials.A.value_vec(pt, s.units).as_array() + 1j * s.potentials.B.value_vec(
        pt, s.units
    ).as_array()
    a1 = s.potentials.a1_at(pt, s.units).as_array()
    out = np.empty(4)
    for mu in range(4):
        aq = Quaternion(complex(a0[mu]), complex(a1[mu]))
        g = quat_mul(QUAT_I, aq) - quat_mul(aq.conj(), QUAT_I)
        _require_real_quaternion(g, "gamma left")
        out[mu] = g.z0.real
    return (solution.charge / (s.units.hbar * s.units.c)) * FourVector.from_array(out)


def _wave_quaternion(solution: PlaneWaveSolution, pt: FourVector) -> Quaternion:
    z = solution.evaluate(pt.as_array())
    return Quaternion(complex(z[..., 0]), complex(z[..., 1]))


def _gamma_right_sandwich(solution: PlaneWaveSolution, pt: FourVector) -> FourVector:
    s = solution
    phi = _wave_quaternion(s, pt)
    norm_sq = phi.norm_sq()
    if norm_sq == 0.0:
        raise PreconditionError("gamma undefined where the wave function vanishes")
    u = quat_mul(quat_mul(phi, QUAT_I), phi.conj())
    a0 = s.potentials.A.value_vec(pt, s.units).as_array() + 1j * s.potentials.B.value_vec(
        pt, s.units
    ).as_array()
    a1 = s.potentials.a1_at(pt, s.units).as_array()
    out = np.empty(4)
    for mu in range(4):
        aq = Quaternion(complex(a0[mu]), complex(a1[mu]))
        g = quat_mul(aq, u) - quat_mul(u, aq.conj())
        _require_real_quaternion(g, "gamma right")
        out[mu] = g.z0.real
    scale = s.charge / (s.units.hbar * s.units.c * norm_sq)
    return scale * FourVector.from_array(out)


def gamma_right_expanded(solution: PlaneWaveSolution, point=ORIGIN) -> FourVector:
    """-(2q/(hbar c)) [B^mu (|Phi0|^2-|Phi1|^2) + 2 Im(conj(A1^mu) Phi0 Phi1)] / |Phi|^2.

    Expansion of the sandwich form; the cross term carries the coefficient
    following from Phi i conj(Phi) = i(|Phi0|^2-|Phi1|^2) - 2i Phi0 Phi1 j.
    """
    s = solution
    pt = point if isinstance(point, FourVector) else FourVector.from_array(point)
    z = s.evaluate(pt.as_array())
    p0, p1 = complex(z[..., 0]), complex(z[..., 1])
    n = abs(p0) ** 2 + abs(p1) ** 2
    if n == 0.0:
        raise PreconditionError("gamma undefined where the wave function vanishes")
    d = abs(p0) ** 2 - abs(p1) ** 2
    b = s.potentials.b_at(pt, s.units).as_array()
    a1 = s.potentials.a1_at(pt, s.units).as_array()
    vec = b * d + 2.0 * (np.conj(a1) * (p0 * p1)).imag
    scale = -2.0 * s.charge / (s.units.hbar * s.units.c * n)
    return scale * FourVector.from_array(vec)


def _require_real_quaternion(g: Quaternion, what: str, tol: float = 1e-10):
    scale = max(1.0, g.norm())
    if abs(g.z0.imag) > tol * scale or abs(g.z1) > tol * scale:
        raise RuntimeError(f"{what} expression not real: {g}")


# ---------------------------------------------------------------------------
# Box expectations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExpectationSet:
    """Expectation values as (coefficient, norm-integral) pairs.

    energy and momentum come from the current's closed form; the squared
    moments come from exact second applications of the momentum operator.
    Every expectation value is coefficient * norm.
    """

    energy: tuple           # (coefficient, norm)
    momentum: tuple         # (3-vector coefficient, norm)
    energy_sq: tuple
    momentum_sq: tuple
    box: Box
    case: Case

    @property
    def energy_value(self) -> float:
        return self.energy[0] * self.energy[1]

    @property
    def momentum_value(self) -> np.ndarray:
        return self.momentum[0] * self.momentum[1]

    @property
    def energy_sq_value(self) -> float:
        return self.energy_sq[0] * self.energy_sq[1]

    @property
    def momentum_sq_value(self) -> float:
        return self.momentum_sq[0] * self.momentum_sq[1]


def _axis_integral(alpha: float, lo: float, hi: float) -> float:
    """integral of exp(-alpha x) over [lo, hi]."""
    if alpha == 0.0:
        return hi - lo
    return (np.exp(-alpha * lo) - np.exp(-alpha * hi)) / alpha


def norm_integral(solution: PlaneWaveSolution, box: Box) -> float:
    """integral of |Phi|^2 over the box at its time slice, in closed form.

    |Phi|^2 = (|phi0|^2 + |phi1|^2) exp(2(P0 x0 - P.x)/hbar) factorizes per
    axis; each axis integral is elementary.
    """
    s = solution
    hbar = s.units.hbar
    p = s.P.as_array()
    n, _ = _amplitude_weights(s)
    value = n * float(np.exp(2.0 * p[0] * (s.units.c * box.t) / hbar))
    for i, (lo, hi) in enumerate(box.bounds):
        value *= _axis_integral(2.0 * p[i + 1] / hbar, lo, hi)
    return value


def _require_constant_gauge(solution: PlaneWaveSolution):
    pots = solution.potentials
    if not (pots.A.is_constant and pots.B.is_constant):
        raise PreconditionError(
            "box expectations need constant A and B (coefficient form)"
        )


def expectations(solution: PlaneWaveSolution, box: Box) -> ExpectationSet:
    """Energy/momentum first and second moments over the box.

    Second moments are exact operator applications evaluated at the origin;
    for constant potentials the corresponding densities are proportional to
    |Phi|^2, which makes the coefficient representation exact.
    """
    _require_constant_gauge(solution)
    s = solution
    c = s.units.c
    norm = norm_integral(s, box)
    jcoef = current_coefficient(s).as_array()
    base = s.norm_density(ORIGIN.as_array())
    if base == 0.0:
        raise PreconditionError("expectations undefined for zero amplitudes")
    e2 = (c * c) * second_moment_density(s, 0, 0, ORIGIN.as_array()) / base
    p2 = sum(second_moment_density(s, i, i, ORIGIN.as_array()) for i in (1, 2, 3)) / base
    # the norm integral already carries |Phi|^2; coefficients are per unit norm
    n_amp, _ = _amplitude_weights(s)
    jcoef = jcoef / n_amp
    return ExpectationSet(
        energy=(float(c * jcoef[0]), norm),
        momentum=(jcoef[1:4].copy(), norm),
        energy_sq=(float(e2), norm),
        momentum_sq=(float(p2), norm),
        box=box,
        case=s.case,
    )


def conservation_residual(solution: PlaneWaveSolution, box: Box) -> float:
    """|(1/c^2) <E^2> - <|p|^2> - m^2 c^2 <1>| / max(1, m^2 c^2 <1>)."""
    s = solution
    c = s.units.c
    exps = expectations(solution, box)
    norm = exps.energy[1]
    mass_term = (s.mass * c) ** 2 * norm
    value = exps.energy_sq_value / (c * c) - exps.momentum_sq_value - mass_term
    return abs(value) / max(1.0, abs(mass_term))
