"""Walk through all seven plane-wave solution families.

Each block constructs an exact solution, prints its exponent content and
constraint residuals, and cross-checks the closed-form construction with
the finite-difference wave-equation oracle at a random spacetime point.
"""

import numpy as np

from kgrhs import (
    ComplexFourVector,
    FourVector,
    minkowski_dot,
    solve_nonhermitian,
    solve_quat_left_first,
    solve_quat_left_second,
    solve_quat_right_first,
    solve_quat_right_second,
    solve_usual,
)
from kgrhs.planewave import make_generalized_solution, oscillating_a1
from kgrhs.verifier import StencilSpec, kge_residual_fd

rng = np.random.default_rng(1)
stencil = StencilSpec(h=1e-3, order=2)
point = np.array([0.2, -0.1, 0.3, 0.05])


def show(title, solution):
    report = solution.constraint_report()
    fd = kge_residual_fd(solution, point, stencil)
    print(f"\n{title}")
    print(f"  K = {solution.K.as_array()}")
    print(f"  P = {solution.P.as_array()}")
    print(f"  amplitudes: phi0 = {solution.phi0:.4f}, phi1 = {solution.phi1:.4f}")
    for name, value in report.residuals.items():
        print(f"  {name:22s} {value:.3e}")
    print(f"  fd wave-equation residual: {fd:.3e}")


# free particle: the 3-4-5 dispersion triangle
show("usual (free), |k| = 3, m = 4 -> K0 = 5", solve_usual((3.0, 0.0, 0.0), 4.0))

# minimal coupling with a growth direction: P != 0 needs a potential
A = FourVector(0.0, 0.8, 0.3, 0.0)
show(
    "generalized with nonzero P (damped/forced mode)",
    make_generalized_solution(
        A, alpha0=1.7, m=0.4, q=1.1, direction=FourVector(0.0, -0.3, 0.8, 0.5)
    ),
)

# complex coupling: B drives non-conservative behavior
B = FourVector(0.2, 0.0, 0.0, 1.2)
show("non-hermitian (A, B orthogonal constants)", solve_nonhermitian(A, B, m=0.7, q=1.1))

# quaternionic, shared exponent: A1 shifts the effective mass
w = 0.3 + 0.2j
A1_perp = ComplexFourVector(0.25j, 0.3 * w, -0.8 * w, 0.4 - 0.1j)
print("\nA.A1 =", minkowski_dot(ComplexFourVector.from_array(A.as_array() + 0j), A1_perp))
show(
    "quaternionic left, first solution (constant A1, A.A1 = 0)",
    solve_quat_left_first(A, B, A1_perp, m=0.7, q=1.1, amplitudes=(1.0, 0.6 - 0.3j)),
)

# same family with an oscillating potential locked to 2A
amp = ComplexFourVector(0.3 + 0.1j, 0.2j, 0.1 + 0j, 0.25 - 0.15j)
show(
    "quaternionic left, first solution (oscillating A1, exponent -i q 2A)",
    solve_quat_left_first(A, B, oscillating_a1(amp, 2.0 * A, q=1.1), m=0.7, q=1.1),
)

# quaternionic, right-side exponent: amplitudes from the null space of M
A1_any = ComplexFourVector(0.2 + 0.1j, 0j, 0.05 - 0.2j, 0.1j)
show("quaternionic left, second solution (coupled amplitudes)",
     solve_quat_left_second(A, B, A1_any, m=0.7, q=1.1))

# right-operator families
A_y = FourVector(0.0, 0.0, 0.9, 0.0)
A1_z = ComplexFourVector(0j, 0j, 0j, 0.5 - 0.2j)
show(
    "quaternionic right, first solution (massless-capable energy balance)",
    solve_quat_right_first(A_y, A1_z, (0.8, 0.0, 0.0), m=0.6, q=1.2,
                           amplitudes=(1.0, 0.4 + 0.7j)),
)

u = 0.4 - 0.25j
A1_r = ComplexFourVector(0.15 + 0.2j, 0.3 * u, -0.8 * u, 0.1 - 0.3j)
show("quaternionic right, second solution (null space of N)",
     solve_quat_right_second(A, B, A1_r, m=0.7, q=1.1))

print("\nall families constructed and verified against the FD oracle")
