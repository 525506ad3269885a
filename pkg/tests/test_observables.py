import numpy as np
import pytest

from conftest import (
    make_nh_effective,
    make_solution,
    scenario_suite,
    spacelike_pair,
)
from kgrhs.algebra import ComplexFourVector, FourVector, minkowski_dot
from kgrhs.errors import PreconditionError
from kgrhs.observables import (
    Box,
    conservation_residual,
    current,
    current_coefficient,
    expectations,
    gamma,
    gamma_left_quaternion_form,
    gamma_right_expanded,
    norm_integral,
)
from kgrhs.planewave import Case, PlaneWaveSolution, PotentialBundle, solve_usual
from kgrhs.verifier import StencilSpec, current_fd, current_fd_with_residue

ST = StencilSpec(h=1e-3, order=2)
POINTS = [
    np.zeros(4),
    np.array([0.3, -0.1, 0.2, 0.4]),
    np.array([-0.5, 0.3, 0.1, -0.2]),
]


# --- currents -------------------------------------------------------------------

def test_rest_solution_current_direction():
    s = solve_usual((0.0, 0.0, 0.0), 1.0, phi0=0.8 + 0.3j)
    j = current(s, FourVector.zero())
    # J = -K |phi0|^2: energy coefficient matches -c K0 per unit norm
    assert abs(j.t - (-1.0) * abs(s.phi0) ** 2) <= 1e-14
    jf = current_fd(s, np.zeros(4), ST)
    assert np.allclose(jf.as_array(), j.as_array(), atol=1e-8)


def test_currents_match_fd_all_cases():
    rng = np.random.default_rng(31)
    for case in Case:
        s = make_solution(case, rng)
        for pt in POINTS:
            jc = current(s, pt).as_array()
            jf = current_fd(s, pt, ST).as_array()
            scale = max(1.0, np.max(np.abs(jc)))
            assert np.max(np.abs(jc - jf)) <= 1e-6 * scale, case


def test_bracket_realness():
    rng = np.random.default_rng(32)
    for case in Case:
        s = make_solution(case, rng)
        _, residue = current_fd_with_residue(s, POINTS[1], ST)
        assert residue <= 1e-12, case


def test_p_zero_current_constant():
    s = solve_usual((0.7, -0.2, 0.1), 1.3)
    values = [current(s, pt).as_array() for pt in POINTS]
    for v in values[1:]:
        assert np.allclose(v, values[0], atol=1e-14)


def test_left_second_amplitude_swap_flips_k_coefficient():
    s = make_solution(Case.QUAT_LEFT_SECOND, np.random.default_rng(33))
    swapped = PlaneWaveSolution(
        case=s.case, Q=s.Q, phi0=s.phi1, phi1=s.phi0,
        potentials=s.potentials, mass=s.mass, charge=s.charge, units=s.units,
    )
    qc = s.charge / s.units.c
    a = s.potentials.a_at().as_array()
    n = abs(s.phi0) ** 2 + abs(s.phi1) ** 2
    d = abs(s.phi0) ** 2 - abs(s.phi1) ** 2
    j1 = current_coefficient(s).as_array()
    j2 = current_coefficient(swapped).as_array()
    k_coef_1 = j1 + qc * a * n
    k_coef_2 = j2 + qc * a * n
    assert np.allclose(k_coef_1, -s.K.as_array() * d, atol=1e-13)
    assert np.allclose(k_coef_2, -k_coef_1, atol=1e-13)


def test_equal_amplitudes_kill_k_part():
    # |phi0| = |phi1| removes the oscillation part of the D-weighted current
    rng = np.random.default_rng(34)
    A, B = spacelike_pair(rng)
    from kgrhs.planewave import solve_quat_left_second

    base = solve_quat_left_second(
        A, B, ComplexFourVector.from_array(0.3 * (rng.uniform(-1, 1, 4) + 1j * rng.uniform(-1, 1, 4))),
        m=0.4, q=1.1,
    )
    # null vectors of the special branch have |phi0| = |phi1| whenever the
    # solver lands on F = 0, G = H; force equal moduli explicitly instead
    s = PlaneWaveSolution(
        case=base.case, Q=base.Q, phi0=0.6 + 0.0j, phi1=0.6j,
        potentials=base.potentials, mass=base.mass, charge=base.charge,
    )
    qc = s.charge / s.units.c
    j = current_coefficient(s).as_array()
    expected = -qc * s.potentials.a_at().as_array() * (2 * 0.36)
    assert np.allclose(j, expected, atol=1e-14)


# --- gamma ----------------------------------------------------------------------

def test_gamma_zero_for_hermitian():
    s = solve_usual((0.1, 0.2, 0.3), 1.0)
    assert np.allclose(gamma(s).as_array(), 0.0)


def test_gamma_nonhermitian_matches_b():
    s = make_nh_effective(np.random.default_rng(35))
    b = s.potentials.b_at().as_array()
    expected = -2.0 * s.charge * b / (s.units.hbar * s.units.c)
    assert np.allclose(gamma(s).as_array(), expected, atol=1e-14)


def test_gamma_left_quaternion_form_matches():
    rng = np.random.default_rng(36)
    for case in (Case.QUAT_LEFT_FIRST, Case.QUAT_LEFT_SECOND):
        s = make_solution(case, rng)
        g1 = gamma(s, FourVector.zero()).as_array()
        g2 = gamma_left_quaternion_form(s, FourVector.zero()).as_array()
        assert np.max(np.abs(g1 - g2)) <= 1e-12


def test_gamma_right_sandwich_equals_expanded():
    rng = np.random.default_rng(37)
    for case in (Case.QUAT_RIGHT_FIRST, Case.QUAT_RIGHT_SECOND):
        for _ in range(25):
            s = make_solution(case, rng)
            for pt in POINTS:
                g1 = gamma(s, FourVector.from_array(pt)).as_array()
                g2 = gamma_right_expanded(s, FourVector.from_array(pt)).as_array()
                scale = max(1.0, np.max(np.abs(g1)))
                assert np.max(np.abs(g1 - g2)) <= 1e-12 * scale, case


def test_gamma_right_expanded_on_arbitrary_quaternion_inputs():
    # dual-path identity holds for any wave/potential data, solution or not
    rng = np.random.default_rng(38)
    for _ in range(50):
        bundle = PotentialBundle.constant(
            A=FourVector(*rng.uniform(-1, 1, 4)),
            B=FourVector(*rng.uniform(-1, 1, 4)),
            A1=ComplexFourVector.from_array(
                rng.uniform(-1, 1, 4) + 1j * rng.uniform(-1, 1, 4)
            ),
        )
        s = PlaneWaveSolution(
            case=Case.QUAT_RIGHT_SECOND,
            Q=ComplexFourVector.from_parts(
                FourVector(*rng.uniform(-1, 1, 4)), FourVector(*rng.uniform(-1, 1, 4))
            ),
            phi0=complex(*rng.uniform(-1, 1, 2)),
            phi1=complex(*rng.uniform(-1, 1, 2)),
            potentials=bundle,
            mass=rng.uniform(0, 1),
            charge=rng.uniform(0.5, 1.5),
        )
        pt = FourVector(*rng.uniform(-0.5, 0.5, 4))
        g1 = gamma(s, pt).as_array()
        g2 = gamma_right_expanded(s, pt).as_array()
        assert np.max(np.abs(g1 - g2)) <= 1e-12 * max(1.0, np.max(np.abs(g1)))


# --- expectations ----------------------------------------------------------------

def test_rest_expectations_unit_box():
    s = solve_usual((0.0, 0.0, 0.0), 1.0, phi0=0.5)
    box = Box()
    exps = expectations(s, box)
    assert exps.energy[0] == -1.0                      # -c K0
    assert abs(exps.energy[1] - 0.25) <= 1e-15         # |phi0|^2 * volume
    assert np.allclose(exps.momentum[0], 0.0)
    assert exps.energy_sq[0] == 1.0
    assert conservation_residual(s, box) <= 1e-15


def test_norm_integral_growth_directions():
    s = make_nh_effective(np.random.default_rng(39))
    box = Box(t=0.3, bounds=((0, 0.5), (-0.2, 0.4), (0.1, 0.9)))
    # brute-force the closed form on a grid
    ns = 24
    total = 0.0
    widths = []
    axes = []
    for lo, hi in box.bounds:
        axes.append(np.linspace(lo, hi, ns + 1)[:-1] + (hi - lo) / (2 * ns))
        widths.append((hi - lo) / ns)
    xs, ys, zs = np.meshgrid(*axes, indexing="ij")
    pts = np.stack(
        [np.full(xs.shape, s.units.c * box.t), xs, ys, zs], axis=-1
    ).reshape(-1, 4)
    total = float(np.sum(s.norm_density(pts))) * np.prod(widths)
    closed = norm_integral(s, box)
    assert abs(total - closed) <= 2e-3 * abs(closed)


def test_negative_energy_sq_demo():
    # effective time components (1, 2): <E^2> coefficient = c^2 (1 - 4) = -3
    s = make_nh_effective(np.random.default_rng(40), k0=1.0, p0=2.0)
    exps = expectations(s, Box())
    assert abs(exps.energy_sq[0] + 3.0) <= 1e-12
    assert exps.energy_sq[0] < 0
    assert conservation_residual(s, Box()) <= 1e-12


def test_conservation_across_cases():
    for s in scenario_suite(seed=41, per_case=2):
        assert conservation_residual(s, Box()) <= 1e-9, s.case


def test_nonhermitian_first_moments_match_generalized():
    # <E>, <p> ignore B entirely; only squared moments differ
    rng = np.random.default_rng(42)
    s = make_nh_effective(rng)
    bundle_g = PotentialBundle.constant(A=s.potentials.a_at())
    twin = PlaneWaveSolution(
        case=Case.GENERALIZED, Q=s.Q, phi0=s.phi0,
        potentials=bundle_g, mass=s.mass, charge=s.charge,
    )
    box = Box()
    e1 = expectations(s, box)
    e2 = expectations(twin, box)
    assert e1.energy == e2.energy
    assert np.allclose(e1.momentum[0], e2.momentum[0])
    assert e1.energy_sq != e2.energy_sq  # B shifts the squared moment


def test_expectations_reject_nonconstant_gauge():
    from kgrhs.planewave import ExponentialField

    A0 = FourVector(0.0, 1.0, 0.0, 0.0)
    R0 = FourVector(0.3, 0.0, 0.4, 0.0)
    s = PlaneWaveSolution(
        case=Case.GENERALIZED,
        Q=ComplexFourVector.from_parts(FourVector.zero(), FourVector(1, 0, 0, 0)),
        phi0=1.0,
        potentials=PotentialBundle(A=ExponentialField.exponential(A0, R0)),
        mass=1.0,
        charge=1.0,
    )
    with pytest.raises(PreconditionError):
        expectations(s, Box())


def test_box_validation():
    with pytest.raises(ValueError):
        Box(bounds=((0, 0), (0, 1), (0, 1)))
