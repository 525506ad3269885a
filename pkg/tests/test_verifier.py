import numpy as np
import pytest

from conftest import make_nh_effective, make_solution, scenario_suite
from kgrhs.algebra import ComplexFourVector, FourVector
from kgrhs.errors import NoisePlateau, PreconditionError, StencilOverflow
from kgrhs.planewave import Case, PlaneWaveSolution, solve_usual
from kgrhs.units import Units
from kgrhs.verifier import (
    StencilSpec,
    continuity_residual_fd,
    convergence_study,
    current_fd,
    kge_residual_fd,
)

ST2 = StencilSpec(h=1e-3, order=2)
PT = np.array([0.11, 0.07, -0.05, 0.03])


def test_rest_solution_residual_small():
    s = solve_usual((0.0, 0.0, 0.0), 1.0)
    assert kge_residual_fd(s, PT, ST2) < 1e-5


def test_off_shell_detected():
    # deliberately wrong K (off-shell by 0.1) produces an O(1) residual
    s = solve_usual((0.5, 0.0, 0.0), 1.0)
    bad = PlaneWaveSolution(
        case=Case.USUAL,
        Q=ComplexFourVector.from_parts(
            FourVector.zero(), FourVector(s.K.t + 0.1, 0.5, 0.0, 0.0)
        ),
        phi0=1.0,
        mass=1.0,
    )
    good = kge_residual_fd(s, PT, ST2)
    off = kge_residual_fd(bad, PT, ST2)
    # residual tracks |K.K - m^2| = |2 K0 * 0.1 + 0.01| relative to m^2-scale
    expected = 2 * s.K.t * 0.1 + 0.01
    assert off > 1e4 * good
    assert abs(off * max(1.0, (s.K.t + 0.1) ** 2) / expected - 1.0) < 0.5


def test_order4_beats_order2():
    s = solve_usual((0.7, -0.2, 0.4), 1.2)
    h = 0.05
    r2 = kge_residual_fd(s, PT, StencilSpec(h=h, order=2))
    r4 = kge_residual_fd(s, PT, StencilSpec(h=h, order=4))
    # ratio consistent with the extra h^2 factor (order-of-magnitude band)
    assert r4 / r2 < 10.0 * h * h


def test_convergence_order_2():
    s = solve_usual((0.7, -0.2, 0.4), 1.2)
    slope = convergence_study(s, "kge", [0.04, 0.02, 0.01, 0.005], order=2)
    assert 1.7 <= slope <= 2.3


def test_convergence_order_4():
    s = solve_usual((0.7, -0.2, 0.4), 1.2)
    slope = convergence_study(s, "kge", [0.2, 0.1, 0.05], order=4)
    assert 3.7 <= slope <= 4.3


def test_convergence_noise_plateau():
    s = PlaneWaveSolution(
        case=Case.USUAL, Q=ComplexFourVector.zero(), phi0=1.0, mass=0.0
    )
    with pytest.raises(NoisePlateau):
        convergence_study(s, "kge", [0.04, 0.02, 0.01])


def test_convergence_input_validation():
    s = solve_usual((0.1, 0.0, 0.0), 1.0)
    with pytest.raises(PreconditionError):
        convergence_study(s, "kge", [0.04, 0.02])
    with pytest.raises(PreconditionError):
        convergence_study(s, "kge", [0.04, 0.02, 0.03])
    with pytest.raises(PreconditionError):
        convergence_study(s, "nonsense", [0.04, 0.02, 0.01])


def test_continuity_residual_small_for_solutions():
    rng = np.random.default_rng(51)
    for case in Case:
        s = make_solution(case, rng)
        assert continuity_residual_fd(s, PT, ST2) < 1e-5, case


def test_gamma_term_detection():
    s = make_nh_effective(np.random.default_rng(52))
    with_g = continuity_residual_fd(s, PT, ST2, include_gamma=True)
    without_g = continuity_residual_fd(s, PT, ST2, include_gamma=False)
    assert without_g >= 1e3 * max(with_g, 1e-300)


def test_left_right_momentum_sides_differ_on_j_component():
    # identical data, opposite operator side: the FD momentum must differ
    # whenever phi1 != 0, and coincide on complex waves
    rng = np.random.default_rng(53)
    s = make_solution(Case.QUAT_LEFT_FIRST, rng)
    from kgrhs.verifier import momentum_fd, _wave

    left = momentum_fd(s, 1, ST2)
    mirror = PlaneWaveSolution(
        case=Case.QUAT_RIGHT_FIRST, Q=s.Q, phi0=s.phi0, phi1=s.phi1,
        potentials=s.potentials, mass=s.mass, charge=s.charge,
    )
    right = momentum_fd(mirror, 1, ST2)
    lv = left(_wave(s))(PT)
    rv = right(_wave(mirror))(PT)
    assert np.max(np.abs(lv - rv)) > 1e-3

    s0 = solve_usual((0.4, 0.1, 0.0), 1.0)
    mirror0 = PlaneWaveSolution(
        case=Case.QUAT_RIGHT_FIRST, Q=s0.Q, phi0=s0.phi0, phi1=0j, mass=1.0,
        potentials=s0.potentials,
    )
    l0 = momentum_fd(s0, 1, ST2)(_wave(s0))(PT)
    r0 = momentum_fd(mirror0, 1, ST2)(_wave(mirror0))(PT)
    assert np.max(np.abs(l0 - r0)) <= 1e-14


def test_stencil_overflow():
    huge = PlaneWaveSolution(
        case=Case.USUAL,
        Q=ComplexFourVector.from_parts(
            FourVector(900.0, 0, 0, 0), FourVector(900.0, 0, 0, 0)
        ),
        phi0=1.0,
        mass=0.0,
    )
    with pytest.raises(StencilOverflow):
        kge_residual_fd(huge, np.array([1.0, 0, 0, 0]), ST2)


def test_stencil_validation():
    with pytest.raises(ValueError):
        StencilSpec(h=-1.0)
    with pytest.raises(ValueError):
        StencilSpec(order=3)
    with pytest.raises(ValueError):
        StencilSpec(axes=(0, 5))


def test_restricted_axes_match_full_for_1d_wave():
    s = solve_usual((0.8, 0.0, 0.0), 1.1)
    full = kge_residual_fd(s, PT, ST2)
    restricted = kge_residual_fd(s, PT, StencilSpec(h=1e-3, order=2, axes=(0, 1)))
    assert abs(full - restricted) <= 1e-12


def test_nonnatural_units_residuals():
    u = Units(hbar=0.7, c=1.8)
    s = solve_usual((0.4, -0.2, 0.1), 0.9, units=u)
    assert kge_residual_fd(s, PT, ST2) < 1e-5
    assert continuity_residual_fd(s, PT, ST2) < 1e-5
    s2 = make_nh_effective(np.random.default_rng(54))
    # rebuild the same effective solution in non-natural units
    from kgrhs.planewave import make_nonhermitian_solution

    s2u = make_nonhermitian_solution(
        FourVector(1.1, 0.5, 0, 0), FourVector(0.4, 0.88, 0, 0),
        FourVector(0.2, 0.1, -0.3, 0.0), FourVector(0.1, 0.2, 0.3, -0.1),
        q=1.2, units=u,
    )
    assert kge_residual_fd(s2u, PT, ST2) < 1e-5
    assert continuity_residual_fd(s2u, PT, ST2) < 1e-5


def test_fd_current_matches_at_origin():
    s = solve_usual((0.3, 0.2, -0.1), 1.0, phi0=0.7 - 0.2j)
    from kgrhs.observables import current

    jf = current_fd(s, np.zeros(4), ST2).as_array()
    jc = current(s, FourVector.zero()).as_array()
    assert np.max(np.abs(jf - jc)) <= 1e-6
