"""Vectorized quaternion algebra.

A quaternion q = w + x i + y j + z k is stored as the last axis of a numpy
array, ``q[..., :] = [w, x, y, z]``. Every function broadcasts over the
leading axes, so a single quaternion, a row of nodes and a whole grid field
are all handled by the same code.
"""
from collections import namedtuple
from functools import reduce

import numpy as np

from ..utils.errors import NotImaginary, NotUnit


UNIT_TOLERANCE = 1e-9

ONE = np.array([1.0, 0.0, 0.0, 0.0])
I = np.array([0.0, 1.0, 0.0, 0.0])
J = np.array([0.0, 0.0, 1.0, 0.0])
K = np.array([0.0, 0.0, 0.0, 1.0])

_CONJUGATION = np.array([1.0, -1.0, -1.0, -1.0])

QuaternionParts = namedtuple(
    "QuaternionParts", ["conjugate", "real", "imaginary", "norm", "inverse"]
)


def quaternion(w=0.0, x=0.0, y=0.0, z=0.0):
    """Builds a single quaternion from its four real components."""
    return np.array([w, x, y, z], dtype=float)


def as_quaternion(value):
    """Coerces ``value`` to a float array with a last axis of length four.

    Real scalars become real quaternions.
    """
    array = np.asarray(value, dtype=float)
    if array.ndim == 0:
        return array * ONE
    if array.shape[-1] != 4:
        raise ValueError(
            f"Quaternion arrays need a last axis of length 4, got shape {array.shape}."
        )
    return array


def mul(a, b):
    """Hamilton product ``a b``, broadcast over leading axes."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    aw, ax, ay, az = np.moveaxis(a, -1, 0)
    bw, bx, by, bz = np.moveaxis(b, -1, 0)
    return np.stack(
        [
            aw * bw - ax * bx - ay * by - az * bz,
            aw * bx + ax * bw + ay * bz - az * by,
            aw * by - ax * bz + ay * bw + az * bx,
            aw * bz + ax * by - ay * bx + az * bw,
        ],
        axis=-1,
    )


def mul_chain(*factors):
    """Product of several quaternions, taken from left to right."""
    return reduce(mul, factors)


def conj(a):
    return np.asarray(a, dtype=float) * _CONJUGATION


def real(a):
    return np.asarray(a, dtype=float)[..., 0]


def imag(a):
    result = np.array(a, dtype=float, copy=True)
    result[..., 0] = 0.0
    return result


def norm2(a):
    a = np.asarray(a, dtype=float)
    return np.sum(a * a, axis=-1)


def norm(a):
    return np.sqrt(norm2(a))


def inverse(a):
    """Inverse ā/|a|².

    Raises
    ------
    ZeroDivisionError
        If any entry of ``a`` is the zero quaternion.
    """
    a = np.asarray(a, dtype=float)
    square = norm2(a)
    if np.any(square == 0.0):
        raise ZeroDivisionError("The zero quaternion has no inverse.")
    return conj(a) / np.expand_dims(square, -1)


def masked_inverse(a, floor=0.0):
    """Inverse of a field, NaN wherever ``|a| <= floor`` or ``a`` is NaN.

    Returns
    -------
    inverse : numpy array
        Pointwise inverse with NaN on the masked nodes.
    mask : numpy array of bool
        True on the masked nodes.
    """
    a = np.asarray(a, dtype=float)
    magnitude = norm(a)
    mask = ~(magnitude > floor)
    safe = np.where(np.expand_dims(mask, -1), ONE, a)
    result = conj(safe) / np.expand_dims(norm2(safe), -1)
    result[mask] = np.nan
    return result, mask


def conj_re_im_norm_inv(a):
    """Conjugate, real part, imaginary part, norm and inverse of ``a``.

    The real part is returned as a real quaternion so that
    ``real + imaginary == a``.
    """
    a = as_quaternion(a)
    real_part = np.zeros_like(a)
    real_part[..., 0] = a[..., 0]
    return QuaternionParts(conj(a), real_part, imag(a), norm(a), inverse(a))


def inner(a, b):
    """Euclidean inner product Re(ā b)."""
    return np.sum(np.asarray(a, dtype=float) * np.asarray(b, dtype=float), axis=-1)


def exp_imaginary(v, tol=UNIT_TOLERANCE):
    """Exponential of an imaginary quaternion, cos|v| + (v/|v|) sin|v|.

    Raises
    ------
    NotImaginary
        If the real part of ``v`` exceeds ``tol`` anywhere.
    """
    v = as_quaternion(v)
    real_part = np.max(np.abs(real(v)))
    if real_part > tol:
        raise NotImaginary(
            "exp_imaginary needs an imaginary argument.",
            residual=float(real_part),
            tolerance=tol,
        )
    theta = np.asarray(norm(imag(v)))
    result = imag(v) * np.expand_dims(np.sinc(theta / np.pi), -1)
    result[..., 0] = np.cos(theta)
    return result


def rotation_about_k(angle):
    """Unit quaternion exp(k angle / 2): conjugation by it rotates Im H
    by ``angle`` about the k-axis."""
    angle = np.asarray(angle, dtype=float)
    return exp_imaginary(0.5 * angle[..., np.newaxis] * K)


def unit_imaginary_defect(q):
    """Pointwise |q² + 1|, zero exactly on the unit imaginary quaternions."""
    return norm(mul(q, q) + ONE)


def is_unit_imaginary(q, tol=UNIT_TOLERANCE):
    q = as_quaternion(q)
    return bool(
        np.all(np.abs(real(q)) <= tol) and np.all(np.abs(norm(q) - 1.0) <= tol)
    )


def is_unit(q, tol=UNIT_TOLERANCE):
    return bool(np.all(np.abs(norm(q) - 1.0) <= tol))


def apply_motion(r, s, t, a, tol=UNIT_TOLERANCE):
    """Euclidean motion a -> r a s^-1 + t.

    Raises
    ------
    NotUnit
        If ``r`` or ``s`` is not a unit quaternion within ``tol``.
    """
    return EuclideanMotion(r, s, t, tol=tol)(a)


class EuclideanMotion:
    """Orientation preserving isometry a -> r a s^-1 + t of H.

    Parameters
    ----------
    r, s : array_like
        Unit quaternions.
    t : array_like
        Translation.
    tol : float
        Tolerance of the unit checks.
    """

    def __init__(self, r=ONE, s=ONE, t=0.0, tol=UNIT_TOLERANCE):
        self.r = as_quaternion(r)
        self.s = as_quaternion(s)
        self.t = as_quaternion(t)
        for name, value in (("r", self.r), ("s", self.s)):
            defect = float(np.max(np.abs(norm(value) - 1.0)))
            if defect > tol:
                raise NotUnit(
                    f"Motion factor {name} must be a unit quaternion.",
                    residual=defect,
                    tolerance=tol,
                )

    def __call__(self, a):
        return mul_chain(self.r, as_quaternion(a), inverse(self.s)) + self.t

    def linear(self, a):
        """Action on tangent data, a -> r a s^-1."""
        return mul_chain(self.r, as_quaternion(a), inverse(self.s))

    def inverse(self):
        r_inverse = inverse(self.r)
        return EuclideanMotion(
            r_inverse, inverse(self.s), -mul_chain(r_inverse, self.t, self.s)
        )

    def to_dict(self):
        return {
            "r": self.r.tolist(),
            "s": self.s.tolist(),
            "t": self.t.tolist(),
        }


def complex_matrix(q):
    """2x2 complex matrix of left multiplication by ``q``.

    H is identified with C^2 through q = c + j d with c, d in span{1, k};
    the complex unit acts as right multiplication by k, so left
    multiplication is complex linear and right multiplication by
    ``alpha + beta k`` is multiplication by the complex number
    ``alpha + 1j beta``.
    """
    w, x, y, z = as_quaternion(q)
    c = complex(w, z)
    d = complex(y, x)
    return np.array([[c, -np.conj(d)], [d, np.conj(c)]])


def complex_vector(q):
    """Coordinates (c, d) of ``q`` with q = c + j d."""
    w, x, y, z = as_quaternion(q)
    return np.array([complex(w, z), complex(y, x)])


def quaternion_from_complex(vector):
    """Inverse of ``complex_vector``."""
    c, d = vector
    return quaternion(c.real, d.imag, d.real, c.imag)


def complex_to_quaternion(number):
    """The element alpha + beta k of H that acts like ``alpha + 1j beta``."""
    return quaternion(number.real, 0.0, 0.0, number.imag)
