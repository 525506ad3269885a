"""Step-barrier scattering: reflection and transmission analysis.

A particle of energy E > 0 hits a constant step at x = 0 occupying x > 0.
Region I (x < 0) carries the incident and reflected waves with purely
imaginary spatial exponent Q = iK, K = sqrt(E^2 - m^2 c^4)/c; region II
carries a single transmitted wave with exponent Q' = P' + iK' fixed by the
step's energy relation and the orthogonality constraint:

    K'^2 - P'^2 = [(E - q V0)^2 - m^2 c^4 - (q V1)^2] / c^2
    K' P'       = q V1 (E - q V0) / c^2

V1 is the imaginary part of the step height; V1 = 0 decouples the system
into a purely propagating branch (P' = 0) or a purely decaying one
(K' = 0, total reflection).  A nonzero V1 couples oscillation and decay,
and can trade against P' entirely: the `stationary` branch pins K' = 0 and
solves the energy relation alone, leaving the orthogonality residual as a
reported diagnostic.

Amplitudes follow from continuity of the wave and its slope at x = 0:

    R = (Q - Q') / (Q + Q'),    T = 2Q / (Q + Q') * exp(i phi0)

with the boundary identities 1 + R = T exp(-i phi0) and
Q (1 - R) = Q' T exp(-i phi0).  Coefficients are flux ratios:
refl = |R|^2 and trans = (K'/K) |T|^2 exp[(P' - P).x / hbar]; in the
step-down regime E - q V0 < -m c^2 the transmitted branch with outgoing
group velocity has K' < 0, which produces refl > 1, trans < 0 and
refl + trans = 1: reversed beams on the far side, reflection above unity.
The general sum satisfies refl + trans = 1 + correction with the correction
term implemented separately in `rt_sum_correction`, zero exactly in the
propagating hermitian regime.

The quaternionic step (complex pair A0 + A1 j) is treated through the
boundary-phase check (a unitary quaternion relates the two sides) and the
effective-mass comparison: the A1 contribution enters the region-II energy
relation with the sign that increases the effective mass, opposite to the
V1^2 contribution.  A full quaternionic amplitude solve is not defined in
this model and is deliberately not implemented.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from .algebra import ComplexFourVector, FourVector, Quaternion, minkowski_dot, quat_mul
from .errors import (
    BelowRest,
    DegenerateDenominator,
    NonUnitaryPhase,
    NotSpecifiedByPaper,
    PreconditionError,
)
from .planewave import Case, ExponentSide, PlaneWaveSolution, PotentialBundle
from .units import NATURAL, Units

__all__ = [
    "BarrierSpec",
    "Regime",
    "ScatteringResult",
    "solve_real_barrier",
    "solve_complex_barrier",
    "rt_sum_correction",
    "quaternionic_mass_shift",
    "quaternionic_boundary_check",
    "solve_quaternionic_barrier",
    "region_solutions",
    "MassShiftComparison",
]


class Regime(str, Enum):
    PROPAGATING = "propagating"
    EVANESCENT = "evanescent"
    KLEIN_PARADOX = "klein-paradox"


@dataclass(frozen=True)
class BarrierSpec:
    """Constant step at x = 0: zero for x < 0, V0 + i V1 (time component) for x > 0."""

    E: float
    V0: float
    V1: float = 0.0
    m: float = 1.0
    q: float = 1.0
    phi0: float = 0.0
    quat: Optional[tuple] = None          # (A0, A1) complex pair for the quaternionic step
    unitary_phase: Optional[Quaternion] = None
    units: Units = field(default_factory=lambda: NATURAL)

    def __post_init__(self):
        if self.m < 0:
            raise PreconditionError("mass must be non-negative")
        if self.unitary_phase is not None:
            if abs(self.unitary_phase.norm() - 1.0) > 1e-12:
                raise NonUnitaryPhase(
                    f"boundary phase norm {self.unitary_phase.norm()!r} != 1"
                )


@dataclass(frozen=True)
class ScatteringResult:
    spec: BarrierSpec
    Q: complex
    Qprime: complex
    R: complex
    T: complex
    refl_coeff: float
    trans_coeff: float
    rt_sum: float
    correction: float
    regime: Regime
    energy_residual: float
    orthogonality_residual: float
    branch: str

    @property
    def K(self) -> float:
        return self.Q.imag

    @property
    def Kprime(self) -> float:
        return self.Qprime.imag

    @property
    def Pprime(self) -> float:
        return self.Qprime.real

    def boundary_residuals(self) -> tuple:
        """(continuity, slope-matching) residuals of the x = 0 conditions."""
        phase = np.exp(-1j * self.spec.phi0)
        r1 = abs(1.0 + self.R - self.T * phase)
        r2 = abs(self.Q * (1.0 - self.R) - self.Qprime * self.T * phase)
        return float(r1), float(r2)

    def trans_coeff_at(self, x) -> float:
        """Transmission coefficient with its exponential factor at a point."""
        return _trans_coeff(self, _decay_exponent(self, x))

    def rt_sum_at(self, x) -> float:
        return self.refl_coeff + self.trans_coeff_at(x)


def _decay_exponent(result: ScatteringResult, x) -> float:
    """(P' - P).x / hbar for the transmitted-flux exponential factor."""
    pt = x if isinstance(x, FourVector) else FourVector.from_array(np.asarray(x, float))
    p_prime = FourVector(0.0, result.Pprime, 0.0, 0.0)
    return minkowski_dot(p_prime, pt) / result.spec.units.hbar


def _trans_coeff(result: ScatteringResult, w: float) -> float:
    k = result.K
    kp = result.Kprime
    if k == 0.0:
        raise DegenerateDenominator("incident wave is not propagating")
    return (kp / k) * abs(result.T) ** 2 * math.exp(w)


def _classify(shifted: float, rest: float) -> Regime:
    if shifted < -rest:
        return Regime.KLEIN_PARADOX
    if abs(shifted) <= rest:
        return Regime.EVANESCENT
    return Regime.PROPAGATING


def solve_complex_barrier(
    spec: BarrierSpec, branch: str = "auto", paradox_branch: str = "outgoing"
) -> ScatteringResult:
    """Solve the step with complex height V0 + i V1.

    branch="auto" solves energy relation and orthogonality jointly (both
    residuals vanish); branch="stationary" pins K' = 0 and solves the energy
    relation alone, reporting the orthogonality residual it leaves behind
    (the branch exists when the energy relation's right side is negative
    enough for V1 to stand in for the oscillation).

    paradox_branch="outgoing" picks the transmitted wave whose beam moves
    away from the step in the Klein regime (trans < 0, refl > 1); "opposite"
    exposes the other sign choice.
    """
    u = spec.units
    c = u.c
    E, m, q = spec.E, spec.m, spec.q
    if E <= 0:
        raise PreconditionError("incident energy must be positive")
    rest = m * c * c
    if E < rest:
        raise BelowRest(f"E = {E} below rest energy {rest}")
    if branch not in ("auto", "stationary"):
        raise PreconditionError(f"unknown branch {branch!r}")
    if paradox_branch not in ("outgoing", "opposite"):
        raise PreconditionError(f"unknown paradox branch {paradox_branch!r}")

    k = math.sqrt(E * E - rest * rest) / c
    shifted = E - q * spec.V0
    regime = _classify(shifted, rest)

    # region II invariants: K'^2 - P'^2 = a, K' P' = b
    a = (shifted * shifted - rest * rest - (q * spec.V1) ** 2) / (c * c)
    b = q * spec.V1 * shifted / (c * c)

    if branch == "stationary":
        if a > 0:
            raise PreconditionError(
                "stationary branch needs a non-positive oscillation invariant"
            )
        kp, pp = 0.0, math.sqrt(-a)
    elif b == 0.0:
        if a >= 0:
            kp, pp = math.sqrt(a), 0.0
        else:
            kp, pp = 0.0, math.sqrt(-a)
    else:
        kp = math.sqrt((a + math.sqrt(a * a + 4.0 * b * b)) / 2.0)
        pp = b / kp
    # step-down regime: the outgoing-beam branch flips the transmitted
    # oscillation sign (and the decay sign with it, preserving K'P' = b)
    if regime is Regime.KLEIN_PARADOX and kp != 0.0 and paradox_branch == "outgoing":
        kp = -kp
        if b != 0.0:
            pp = b / kp

    q_inc = 1j * k
    q_tr = complex(pp, kp)
    if q_inc + q_tr == 0:
        raise DegenerateDenominator("Q + Q' = 0: amplitudes undefined")
    big_r = (q_inc - q_tr) / (q_inc + q_tr)
    big_t = 2.0 * q_inc / (q_inc + q_tr) * np.exp(1j * spec.phi0)

    refl = abs(big_r) ** 2
    energy_residual = abs(kp * kp - pp * pp - a)
    orthogonality_residual = abs(kp * pp - b)

    result = ScatteringResult(
        spec=spec,
        Q=q_inc,
        Qprime=q_tr,
        R=complex(big_r),
        T=complex(big_t),
        refl_coeff=float(refl),
        trans_coeff=0.0,
        rt_sum=0.0,
        correction=0.0,
        regime=regime,
        energy_residual=float(energy_residual),
        orthogonality_residual=float(orthogonality_residual),
        branch=branch,
    )
    trans = _trans_coeff(result, 0.0)
    correction = rt_sum_correction(result, FourVector.zero())
    object.__setattr__(result, "trans_coeff", float(trans))
    object.__setattr__(result, "rt_sum", float(refl + trans))
    object.__setattr__(result, "correction", float(correction))
    return result


def solve_real_barrier(spec: BarrierSpec, paradox_branch: str = "outgoing") -> ScatteringResult:
    """Solve the real step (V1 is ignored must be zero)."""
    if spec.V1 != 0.0:
        raise PreconditionError("real barrier requires V1 = 0")
    return solve_complex_barrier(spec, branch="auto", paradox_branch=paradox_branch)


def rt_sum_correction(result: ScatteringResult, x) -> float:
    """Additive term of refl + trans = 1 + correction, at a region-II point.

    correction = 2 [Q+^2 Q' - Q^2 Q'+ + (2 e^w - 1) |Q|^2 (Q' - Q'+)]
                   / [|Q + Q'|^2 (Q - Q+)]

    with w the decay exponent (P' - P).x / hbar and + denoting complex
    conjugation.  Zero whenever both exponents are purely imaginary (the
    propagating hermitian regime).
    """
    q_inc, q_tr = result.Q, result.Qprime
    if q_inc == np.conj(q_inc):
        raise DegenerateDenominator("incident exponent is not propagating (Q = conj Q)")
    w = _decay_exponent(result, x)
    numerator = (
        np.conj(q_inc) ** 2 * q_tr
        - q_inc ** 2 * np.conj(q_tr)
        + (2.0 * math.exp(w) - 1.0) * abs(q_inc) ** 2 * (q_tr - np.conj(q_tr))
    )
    denominator = abs(q_inc + q_tr) ** 2 * (q_inc - np.conj(q_inc))
    value = 2.0 * numerator / denominator
    if abs(value.imag) > 1e-10 * max(1.0, abs(value)):
        raise RuntimeError(f"correction came out non-real: {value}")
    return float(value.real)


# ---------------------------------------------------------------------------
# Region solutions: the barrier algebra expressed as plane-wave solutions,
# so the finite-difference oracle can verify the scattering construction.
# ---------------------------------------------------------------------------

def region_solutions(result: ScatteringResult):
    """(incident, reflected, transmitted) as verifiable plane-wave solutions.

    Region I waves are free solutions with K = (-E/c, ±K, 0, 0); the sign
    convention keeps the measured energy -c K_0 positive.  The transmitted
    wave couples to the constant potential A = (V0, 0), B = (V1, 0) through
    the charge q.
    """
    spec = result.spec
    u = spec.units
    e_over_c = spec.E / u.c
    k_inc = FourVector(-e_over_c, result.K, 0.0, 0.0)
    k_ref = FourVector(-e_over_c, -result.K, 0.0, 0.0)
    incident = PlaneWaveSolution(
        case=Case.USUAL,
        Q=ComplexFourVector.from_parts(FourVector.zero(), k_inc),
        phi0=1.0 + 0j,
        mass=spec.m,
        units=u,
    )
    reflected = PlaneWaveSolution(
        case=Case.USUAL,
        Q=ComplexFourVector.from_parts(FourVector.zero(), k_ref),
        phi0=result.R,
        mass=spec.m,
        units=u,
    )
    a_vec = FourVector(spec.V0, 0.0, 0.0, 0.0)
    if spec.V1 == 0.0:
        case = Case.GENERALIZED
        bundle = PotentialBundle.constant(A=a_vec)
    else:
        case = Case.NON_HERMITIAN
        bundle = PotentialBundle.constant(A=a_vec, B=FourVector(spec.V1, 0.0, 0.0, 0.0))
    transmitted = PlaneWaveSolution(
        case=case,
        Q=ComplexFourVector.from_parts(
            FourVector(0.0, result.Pprime, 0.0, 0.0),
            FourVector(-e_over_c, result.Kprime, 0.0, 0.0),
        ),
        phi0=result.T,
        potentials=bundle,
        mass=spec.m,
        charge=spec.q,
        units=u,
    )
    return incident, reflected, transmitted


# ---------------------------------------------------------------------------
# Quaternionic step
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MassShiftComparison:
    complex_shift: float
    quaternionic_shift: float
    signs_opposite: bool


def quaternionic_mass_shift(spec: BarrierSpec) -> MassShiftComparison:
    """Effective-mass contributions of the two step components.

    In the region-II energy relation the imaginary complex component V1
    enters as -(q/c)^2 V1^2 (lowering the effective mass) while the
    quaternionic component enters as +(q/c)^2 |A1|^2 (raising it): the two
    interfere with opposite signs.
    """
    if spec.quat is None:
        raise PreconditionError("quaternionic step components missing")
    a0, a1 = spec.quat
    qc = spec.q / spec.units.c
    v1 = complex(a0).imag
    complex_shift = -(qc * v1) ** 2
    quaternionic_shift = (qc * abs(complex(a1))) ** 2
    return MassShiftComparison(
        complex_shift=complex_shift,
        quaternionic_shift=quaternionic_shift,
        signs_opposite=complex_shift < 0.0 < quaternionic_shift,
    )


def quaternionic_boundary_check(
    phi_I: Quaternion,
    phi_II: Quaternion,
    U: Quaternion,
    side: ExponentSide,
) -> float:
    """Residual of the boundary condition phi_I = phi_II U (or U phi_II).

    The unitary phase multiplies on the right for the shared-exponent wave
    form and on the left for the right-exponent form.  Region I is complex,
    so phi_I must have no j-component; a correct phase turns the phased
    region-II value complex as well, and any leftover j-part simply shows
    up in the residual.
    """
    if abs(U.norm() - 1.0) > 1e-12:
        raise NonUnitaryPhase(f"phase norm {U.norm()!r} != 1")
    if abs(phi_I.z1) > 1e-12 * max(1.0, phi_I.norm()):
        raise PreconditionError("region-I value must be complex (no j-component)")
    if side is ExponentSide.LEFT:
        phased = quat_mul(phi_II, U)
    else:
        phased = quat_mul(U, phi_II)
    return (phi_I - phased).norm()


def solve_quaternionic_barrier(spec: BarrierSpec):
    """Full quaternionic amplitude solve: intentionally not implemented.

    The model defines the quaternionic step only through the unitary
    boundary phase and the mass-shift comparison; inventing amplitude
    dynamics beyond that is out of scope.
    """
    raise NotSpecifiedByPaper(
        "quaternionic scattering amplitudes are not defined by this model; "
        "use quaternionic_boundary_check and quaternionic_mass_shift"
    )
