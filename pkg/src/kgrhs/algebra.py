"""Minkowski four-vector and quaternion arithmetic.

Conventions fixed here and relied on by every other module:

* Metric signature (+, -, -, -).  Components are stored contravariant
  (upper index); `lower()` flips the spatial signs, and contraction is
  a_mu b^mu = a0 b0 - a1 b1 - a2 b2 - a3 b3.  Contraction of complex
  four-vectors is bilinear, never sesquilinear: conjugate explicitly
  when a hermitian-type product is wanted.

* Quaternions are kept in symplectic (complex-pair) form q = z0 + z1 j
  with i j = -j i.  The product rule follows from j z = conj(z) j:

      (a0 + a1 j)(b0 + b1 j) = (a0 b0 - a1 conj(b1)) + (a0 b1 + a1 conj(b0)) j

  The pair form is the working representation because every wave function
  and potential in the model is manipulated through its two complex
  components, never through four real ones.

A complex number embeds as z0 + 0*j, and a complex four-vector embeds as a
quaternion four-vector with vanishing second component; all embedded
operations agree with the plain complex ones at the value level.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_METRIC_SIGNS = np.array([1.0, -1.0, -1.0, -1.0])


@dataclass(frozen=True)
class FourVector:
    """Real four-vector, contravariant components (t, x, y, z)."""

    t: float
    x: float
    y: float
    z: float

    @classmethod
    def zero(cls) -> "FourVector":
        return cls(0.0, 0.0, 0.0, 0.0)

    @classmethod
    def from_array(cls, arr) -> "FourVector":
        a = np.asarray(arr, dtype=float)
        if a.shape != (4,):
            raise ValueError(f"expected 4 components, got shape {a.shape}")
        return cls(float(a[0]), float(a[1]), float(a[2]), float(a[3]))

    def as_array(self) -> np.ndarray:
        return np.array([self.t, self.x, self.y, self.z], dtype=float)

    def spatial(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)

    def lower(self) -> "FourVector":
        """Lower the index: an involution under this metric."""
        return FourVector(self.t, -self.x, -self.y, -self.z)

    def dot(self, other) -> float:
        return minkowski_dot(self, other)

    def __add__(self, other: "FourVector") -> "FourVector":
        return FourVector.from_array(self.as_array() + other.as_array())

    def __sub__(self, other: "FourVector") -> "FourVector":
        return FourVector.from_array(self.as_array() - other.as_array())

    def __neg__(self) -> "FourVector":
        return FourVector(-self.t, -self.x, -self.y, -self.z)

    def __mul__(self, scalar: float) -> "FourVector":
        return FourVector.from_array(self.as_array() * float(scalar))

    __rmul__ = __mul__


@dataclass(frozen=True)
class ComplexFourVector:
    """Complex four-vector Q^mu = P^mu + i K^mu, contravariant components."""

    t: complex
    x: complex
    y: complex
    z: complex

    @classmethod
    def zero(cls) -> "ComplexFourVector":
        return cls(0j, 0j, 0j, 0j)

    @classmethod
    def from_array(cls, arr) -> "ComplexFourVector":
        a = np.asarray(arr, dtype=complex)
        if a.shape != (4,):
            raise ValueError(f"expected 4 components, got shape {a.shape}")
        return cls(complex(a[0]), complex(a[1]), complex(a[2]), complex(a[3]))

    @classmethod
    def from_parts(cls, real: FourVector, imag: FourVector) -> "ComplexFourVector":
        return cls.from_array(real.as_array() + 1j * imag.as_array())

    def as_array(self) -> np.ndarray:
        return np.array([self.t, self.x, self.y, self.z], dtype=complex)

    @property
    def real(self) -> FourVector:
        return FourVector.from_array(self.as_array().real)

    @property
    def imag(self) -> FourVector:
        return FourVector.from_array(self.as_array().imag)

    def conjugate(self) -> "ComplexFourVector":
        """Hermitian conjugate: flips the sign of the imaginary part only."""
        return ComplexFourVector.from_array(self.as_array().conj())

    def lower(self) -> "ComplexFourVector":
        a = self.as_array() * _METRIC_SIGNS
        return ComplexFourVector.from_array(a)

    def dot(self, other) -> complex:
        return minkowski_dot(self, other)

    def __add__(self, other) -> "ComplexFourVector":
        return ComplexFourVector.from_array(self.as_array() + _cfv_array(other))

    def __sub__(self, other) -> "ComplexFourVector":
        return ComplexFourVector.from_array(self.as_array() - _cfv_array(other))

    def __neg__(self) -> "ComplexFourVector":
        return ComplexFourVector.from_array(-self.as_array())

    def __mul__(self, scalar) -> "ComplexFourVector":
        return ComplexFourVector.from_array(self.as_array() * complex(scalar))

    __rmul__ = __mul__


def _cfv_array(v) -> np.ndarray:
    if isinstance(v, (FourVector, ComplexFourVector)):
        return v.as_array().astype(complex)
    a = np.asarray(v)
    if a.shape != (4,):
        raise TypeError(f"not a four-vector: {v!r}")
    return a.astype(complex)


def minkowski_dot(a, b):
    """Metric contraction a_mu b^mu with signature (+, -, -, -).

    Accepts real or complex four-vectors (or plain length-4 arrays); the
    result is real when both inputs are real.  Total function: no branch
    ever raises for valid four-vectors.
    """
    aa = _cfv_array(a)
    bb = _cfv_array(b)
    val = complex(np.sum(aa * bb * _METRIC_SIGNS))
    if isinstance(a, FourVector) and isinstance(b, FourVector):
        return val.real
    return val


@dataclass(frozen=True)
class Quaternion:
    """Quaternion q = z0 + z1 j in complex-pair form.

    The basis identification is 1, i inside z0 and j, k = i j inside the
    z1 j term: q = w + x i + y j + z k has z0 = w + x i, z1 = y + z i.
    """

    z0: complex
    z1: complex

    @classmethod
    def from_reals(cls, w: float, x: float, y: float, z: float) -> "Quaternion":
        return cls(complex(w, x), complex(y, z))

    @classmethod
    def from_complex(cls, z) -> "Quaternion":
        return cls(complex(z), 0j)

    def as_reals(self) -> tuple:
        return (self.z0.real, self.z0.imag, self.z1.real, self.z1.imag)

    def __mul__(self, other) -> "Quaternion":
        if isinstance(other, Quaternion):
            return quat_mul(self, other)
        # right multiplication by a complex scalar: j z = conj(z) j
        z = complex(other)
        return Quaternion(self.z0 * z, self.z1 * z.conjugate())

    def __rmul__(self, other) -> "Quaternion":
        # other is complex/real here (quaternion * quaternion hits __mul__);
        # left multiplication by a complex scalar is NOT the same as right.
        z = complex(other)
        return Quaternion(z * self.z0, z * self.z1)

    def __add__(self, other) -> "Quaternion":
        if not isinstance(other, Quaternion):
            other = Quaternion.from_complex(other)
        return Quaternion(self.z0 + other.z0, self.z1 + other.z1)

    def __sub__(self, other) -> "Quaternion":
        if not isinstance(other, Quaternion):
            other = Quaternion.from_complex(other)
        return Quaternion(self.z0 - other.z0, self.z1 - other.z1)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.z0, -self.z1)

    def conj(self) -> "Quaternion":
        """Quaternion conjugate; satisfies conj(a b) = conj(b) conj(a)."""
        return Quaternion(self.z0.conjugate(), -self.z1)

    def norm_sq(self) -> float:
        return abs(self.z0) ** 2 + abs(self.z1) ** 2

    def norm(self) -> float:
        return float(np.sqrt(self.norm_sq()))

    @property
    def real(self) -> float:
        return self.z0.real

    def to_complex(self, tol: float = 0.0) -> complex:
        """Return z0, failing if the j-part exceeds tol (exact by default)."""
        if abs(self.z1) > tol:
            raise ValueError(f"quaternion has j-component {self.z1!r}")
        return self.z0

    def is_close(self, other: "Quaternion", tol: float = 1e-12) -> bool:
        return (self - other).norm() <= tol


ONE = Quaternion(1 + 0j, 0j)
I = Quaternion(1j, 0j)
J = Quaternion(0j, 1 + 0j)
K = Quaternion(0j, 1j)


def quat_mul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Non-commutative quaternion product in symplectic form."""
    z0 = a.z0 * b.z0 - a.z1 * b.z1.conjugate()
    z1 = a.z0 * b.z1 + a.z1 * b.z0.conjugate()
    return Quaternion(z0, z1)


def conjugate_sandwich(q: Quaternion, u: Quaternion) -> Quaternion:
    """u q conj(u); preserves norm(q) when u is unitary."""
    return quat_mul(quat_mul(u, q), u.conj())


@dataclass(frozen=True)
class QuaternionFourVector:
    """Quaternion-valued four-vector A^mu = A0^mu + A1^mu j.

    Stored as the symplectic pair of complex four-vectors; `component`
    reassembles a single Quaternion entry when needed.
    """

    a0: ComplexFourVector
    a1: ComplexFourVector

    @classmethod
    def zero(cls) -> "QuaternionFourVector":
        return cls(ComplexFourVector.zero(), ComplexFourVector.zero())

    @classmethod
    def from_complex(cls, a0: ComplexFourVector) -> "QuaternionFourVector":
        return cls(a0, ComplexFourVector.zero())

    def split(self) -> tuple:
        return (self.a0, self.a1)

    @classmethod
    def assemble(cls, parts) -> "QuaternionFourVector":
        a0, a1 = parts
        return cls(a0, a1)

    def component(self, mu: int) -> Quaternion:
        arr0 = self.a0.as_array()
        arr1 = self.a1.as_array()
        return Quaternion(complex(arr0[mu]), complex(arr1[mu]))

    def conjugate(self) -> "QuaternionFourVector":
        """Componentwise quaternion conjugate."""
        return QuaternionFourVector(self.a0.conjugate(), -1 * self.a1)

    def __neg__(self) -> "QuaternionFourVector":
        return QuaternionFourVector(-self.a0, -self.a1)


# ---------------------------------------------------------------------------
# Vectorized quaternion arrays.
#
# Wave functions are evaluated on batches of spacetime points; a quaternion
# field sample batch is an array of shape (..., 2) holding (z0, z1) in the
# last axis.  These helpers implement the same algebra as Quaternion on such
# arrays and are what the finite-difference verifier operates on.
# ---------------------------------------------------------------------------

def qarr(z0, z1=None) -> np.ndarray:
    """Stack complex arrays (z0, z1) into quaternion-array layout."""
    z0 = np.asarray(z0, dtype=complex)
    if z1 is None:
        z1 = np.zeros_like(z0)
    z1 = np.broadcast_to(np.asarray(z1, dtype=complex), z0.shape)
    return np.stack([z0, z1], axis=-1)


def qarr_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a0, a1 = a[..., 0], a[..., 1]
    b0, b1 = b[..., 0], b[..., 1]
    return np.stack(
        [a0 * b0 - a1 * np.conj(b1), a0 * b1 + a1 * np.conj(b0)], axis=-1
    )


def qarr_conj(a: np.ndarray) -> np.ndarray:
    return np.stack([np.conj(a[..., 0]), -a[..., 1]], axis=-1)


def qarr_mul_i_right(a: np.ndarray) -> np.ndarray:
    """a * i:  (z0, z1) -> (i z0, -i z1), from j i = -i j."""
    return np.stack([1j * a[..., 0], -1j * a[..., 1]], axis=-1)


def qarr_scale(z, a: np.ndarray) -> np.ndarray:
    """Left-multiply by a complex scalar/array z (commutes into both slots)."""
    z = np.asarray(z, dtype=complex)
    return np.stack([z * a[..., 0], z * a[..., 1]], axis=-1)


def qarr_real(a: np.ndarray) -> np.ndarray:
    """Quaternion real (scalar) part."""
    return a[..., 0].real


def qarr_norm_sq(a: np.ndarray) -> np.ndarray:
    return np.abs(a[..., 0]) ** 2 + np.abs(a[..., 1]) ** 2
