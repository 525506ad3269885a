"""Plane-wave Klein-Gordon solutions in the real-bracket formalism.

Library layout:

* `algebra`     four-vectors, quaternions, metric contraction
* `planewave`   solution construction and constraint checking
* `observables` currents, continuity vectors, box expectations
* `verifier`    independent finite-difference residual oracle
* `klein`       step-barrier scattering, reflection/transmission analysis
* `cli`         scenario-file command line (`kg-rhs`)
"""

from .algebra import (
    ComplexFourVector,
    FourVector,
    Quaternion,
    QuaternionFourVector,
    conjugate_sandwich,
    minkowski_dot,
    quat_mul,
)
from .errors import (
    BelowRest,
    CaseMismatch,
    DegenerateDenominator,
    KGRHSError,
    NoRealRoot,
    NoisePlateau,
    NonUnitaryPhase,
    NotSpecifiedByPaper,
    PreconditionError,
    StencilOverflow,
)
from .planewave import (
    Case,
    ConstraintReport,
    ExponentialField,
    ExponentSide,
    PlaneWaveSolution,
    PotentialBundle,
    build_left_matrix,
    build_right_matrix,
    check_generalized,
    check_nonhermitian,
    check_quat_left_first,
    check_quat_left_second,
    check_quat_right_first,
    check_quat_right_second,
    check_solution,
    check_usual,
    make_generalized_solution,
    oscillating_a1,
    solve_generalized,
    solve_nonhermitian,
    solve_quat_left_first,
    solve_quat_left_second,
    solve_quat_right_first,
    solve_quat_right_second,
    solve_usual,
)
from .units import NATURAL, Units

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
