"""Shared scenario factories: exact solutions across all seven case tags.

Construction notes that the factories rely on:

* orthogonal pairs (A, B) with A.B = 0 and both scaling-solvable need a
  spacelike A and a B that is "more spacelike" (|B.B| > |A.A|), since the
  Minkowski-orthogonal complement of a timelike vector is spacelike;
* the right-operator families additionally need A.A1 = 0 (and for the
  first solution A.K = A1.K = 0), which the factories build axis-aligned.
"""

import numpy as np

from kgrhs.algebra import ComplexFourVector, FourVector, minkowski_dot
from kgrhs.errors import NoRealRoot
from kgrhs.planewave import (
    Case,
    ExponentialField,
    make_generalized_solution,
    make_nonhermitian_solution,
    make_quat_left_first_solution,
    oscillating_a1,
    solve_generalized,
    solve_nonhermitian,
    solve_quat_left_first,
    solve_quat_left_second,
    solve_quat_right_first,
    solve_quat_right_second,
    solve_usual,
)


def _unit(v):
    return v / np.linalg.norm(v)


def _complex_vec(rng, n, scale=0.4):
    return scale * (rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n))


def spacelike_pair(rng, a_scale=0.8, b_factor=(1.3, 2.0)):
    """(A, B) with A.B = 0, A spacelike, |B.B| > |A.A|."""
    a_sp = _unit(rng.uniform(-1, 1, 3)) * rng.uniform(0.4, a_scale)
    A = FourVector(0.0, *a_sp)
    b_dir = rng.uniform(-1, 1, 3)
    b_dir -= (b_dir @ a_sp) / (a_sp @ a_sp) * a_sp
    b_dir = _unit(b_dir)
    b0 = rng.uniform(0.0, 0.5)
    target = abs(minkowski_dot(A, A)) * rng.uniform(*b_factor)
    b_norm = np.sqrt(b0 * b0 + target)
    B = FourVector(b0, *(b_dir * b_norm))
    return A, B


def orthogonal_complex(rng, A, time_free=True):
    """Constant complex four-vector with A.A1 = 0 (A purely spatial)."""
    a_sp = A.as_array()[1:]
    w = _complex_vec(rng, 3)
    w -= (w @ a_sp) / (a_sp @ a_sp) * a_sp
    t = _complex_vec(rng, 1)[0] if time_free else 0j
    return ComplexFourVector.from_array(np.concatenate([[t], w]))


def make_usual(rng):
    return solve_usual(
        rng.uniform(-1, 1, 3),
        rng.uniform(0.1, 1.5),
        positive_root=bool(rng.integers(0, 2)),
    )


def make_generalized(rng):
    if rng.integers(0, 2):
        a0 = rng.uniform(0.6, 1.2)
        A = FourVector(a0, *rng.uniform(-0.3, 0.3, 3) * a0)
        return solve_generalized(A, rng.uniform(0.1, 1.0), rng.uniform(0.5, 1.5))
    A, _ = spacelike_pair(rng)
    direction = FourVector(0.0, *_unit(np.cross(A.as_array()[1:], rng.uniform(-1, 1, 3))))
    return make_generalized_solution(
        A, rng.uniform(1.3, 2.2), rng.uniform(0.05, 0.3), rng.uniform(0.5, 1.5), direction
    )


def make_nonhermitian(rng):
    if rng.integers(0, 2):
        A, B = spacelike_pair(rng)
        return solve_nonhermitian(A, B, rng.uniform(0.1, 0.8), rng.uniform(0.5, 1.5))
    return make_nh_effective(rng)


def make_nh_effective(rng, k0=None, p0=None):
    """Effective-vector family: B.(K + qA/c) generally nonzero."""
    k0 = rng.uniform(0.8, 1.6) if k0 is None else k0
    p0 = rng.uniform(0.3, 0.9) * k0 if p0 is None else p0
    kx = rng.uniform(0.2, 0.9)
    px = p0 * k0 / kx
    K_eff = FourVector(k0, kx, 0.0, 0.0)
    P_eff = FourVector(p0, px, 0.0, 0.0)
    if minkowski_dot(K_eff, K_eff) < minkowski_dot(P_eff, P_eff):
        raise NoRealRoot("retry")
    A = FourVector(*rng.uniform(-0.4, 0.4, 4))
    B = FourVector(*rng.uniform(-0.4, 0.4, 4))
    return make_nonhermitian_solution(K_eff, P_eff, A, B, q=rng.uniform(0.5, 1.5))


def make_ql1(rng):
    A, B = spacelike_pair(rng)
    amps = (complex(*rng.uniform(-1, 1, 2)), complex(*rng.uniform(-1, 1, 2)))
    q = rng.uniform(0.5, 1.5)
    if rng.integers(0, 2):
        a1 = oscillating_a1(_complex_vec(rng, 4), 2.0 * A, q)
    else:
        a1 = ExponentialField.constant(orthogonal_complex(rng, A))
    return solve_quat_left_first(A, B, a1, rng.uniform(0.05, 0.6), q, amplitudes=amps)


def make_ql2(rng):
    A, B = spacelike_pair(rng)
    a1 = ComplexFourVector.from_array(_complex_vec(rng, 4))
    return solve_quat_left_second(A, B, a1, rng.uniform(0.05, 0.6), rng.uniform(0.5, 1.5))


def make_qr1(rng):
    a = rng.uniform(0.3, 0.9)
    theta = rng.uniform(0, 2 * np.pi)
    A = FourVector(0.0, 0.0, a * np.cos(theta), a * np.sin(theta))
    w = complex(*rng.uniform(-0.6, 0.6, 2))
    A1 = ComplexFourVector(0j, 0j, -a * np.sin(theta) * w, a * np.cos(theta) * w)
    amps = (complex(*rng.uniform(-1, 1, 2)), complex(*rng.uniform(-1, 1, 2)))
    return solve_quat_right_first(
        A, A1, (rng.uniform(0.2, 1.0), 0.0, 0.0), rng.uniform(0.1, 0.8),
        rng.uniform(0.5, 1.5), amplitudes=amps,
    )


def make_qr2(rng):
    A, B = spacelike_pair(rng)
    a1 = orthogonal_complex(rng, A)
    return solve_quat_right_second(A, B, a1, rng.uniform(0.05, 0.6), rng.uniform(0.5, 1.5))


_FACTORIES = {
    Case.USUAL: make_usual,
    Case.GENERALIZED: make_generalized,
    Case.NON_HERMITIAN: make_nonhermitian,
    Case.QUAT_LEFT_FIRST: make_ql1,
    Case.QUAT_LEFT_SECOND: make_ql2,
    Case.QUAT_RIGHT_FIRST: make_qr1,
    Case.QUAT_RIGHT_SECOND: make_qr2,
}


def make_solution(case, rng, attempts=60):
    factory = _FACTORIES[case]
    last = None
    for _ in range(attempts):
        try:
            return factory(rng)
        except NoRealRoot as exc:
            last = exc
    raise RuntimeError(f"could not build a {case.value} scenario: {last}")


def scenario_suite(seed=20240811, per_case=8):
    """At least 7 * per_case exact solutions spanning every case tag."""
    rng = np.random.default_rng(seed)
    return [make_solution(case, rng) for case in Case for _ in range(per_case)]
