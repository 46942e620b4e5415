import numpy as np
import pytest

from ghimc.quaternion import (
    ONE,
    I,
    J,
    K,
    quaternion,
    as_quaternion,
    mul,
    mul_chain,
    conj,
    norm,
    inverse,
    masked_inverse,
    conj_re_im_norm_inv,
    exp_imaginary,
    rotation_about_k,
    unit_imaginary_defect,
    is_unit_imaginary,
    is_unit,
    EuclideanMotion,
    apply_motion,
    complex_matrix,
    complex_vector,
    quaternion_from_complex,
    complex_to_quaternion,
)
from ghimc.utils.errors import NotImaginary, NotUnit


def random_quaternions(count, seed=7):
    rng = np.random.default_rng(seed)
    return rng.normal(size=(count, 4))


def test_hamilton_rules():
    test1 = np.allclose(mul(I, J), K)
    test2 = np.allclose(mul(J, K), I)
    test3 = np.allclose(mul(K, I), J)
    test4 = np.allclose(mul(J, I), -K)
    test5 = np.allclose(mul_chain(I, J, K), -ONE)
    test6 = np.allclose(mul(I, I), -ONE)

    print(f"ij = k: {test1}")
    print(f"jk = i: {test2}")
    print(f"ki = j: {test3}")
    print(f"ji = -k: {test4}")
    print(f"ijk = -1: {test5}")
    print(f"i^2 = -1: {test6}")

    assert all([test1, test2, test3, test4, test5, test6])


def test_algebra_axioms():
    a, b, c = (random_quaternions(10000, seed) for seed in (1, 2, 3))
    associativity = np.max(np.abs(mul(mul(a, b), c) - mul(a, mul(b, c))))
    distributivity = np.max(np.abs(mul(a, b + c) - mul(a, b) - mul(a, c)))
    conjugation = np.max(np.abs(conj(mul(a, b)) - mul(conj(b), conj(a))))
    multiplicative_norm = np.max(np.abs(norm(mul(a, b)) - norm(a) * norm(b)))
    inverses = np.max(np.abs(mul(a, inverse(a)) - ONE))

    test1 = associativity < 1e-12
    test2 = distributivity < 1e-12
    test3 = conjugation < 1e-12
    test4 = multiplicative_norm < 1e-12
    test5 = inverses < 1e-12

    print(f"Associativity: {test1}")
    print(f"Distributivity: {test2}")
    print(f"Conjugate of products: {test3}")
    print(f"Norm is multiplicative: {test4}")
    print(f"a a^-1 = 1: {test5}")

    assert all([test1, test2, test3, test4, test5])


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        inverse(np.zeros(4))


def test_masked_inverse():
    field = np.array([[1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0], [0.0, 2.0, 0.0, 0.0]])
    result, mask = masked_inverse(field, floor=1e-12)

    test1 = np.array_equal(mask, [False, True, False])
    test2 = np.all(np.isnan(result[1]))
    test3 = np.allclose(result[2], [0.0, -0.5, 0.0, 0.0])

    print(f"Zero is masked: {test1}")
    print(f"Masked values are NaN: {test2}")
    print(f"Inverse of 2i is -i/2: {test3}")

    assert all([test1, test2, test3])


def test_parts():
    q = quaternion(1.0, 2.0, -3.0, 0.5)
    parts = conj_re_im_norm_inv(q)

    test1 = np.allclose(parts.real + parts.imaginary, q)
    test2 = np.isclose(parts.norm, np.sqrt(14.25))
    test3 = np.allclose(mul(q, parts.inverse), ONE)
    test4 = np.allclose(parts.conjugate, [1.0, -2.0, 3.0, -0.5])
    test5 = np.allclose(as_quaternion(2.0), [2.0, 0.0, 0.0, 0.0])

    print(f"Re + Im = q: {test1}")
    print(f"Norm: {test2}")
    print(f"Inverse: {test3}")
    print(f"Conjugate: {test4}")
    print(f"Scalars become real quaternions: {test5}")

    assert all([test1, test2, test3, test4, test5])


def test_exponential():
    v = 0.3 * I + 0.4 * K
    rotation = rotation_about_k(np.pi / 2)
    rotated_i = mul_chain(rotation, I, inverse(rotation))

    test1 = np.allclose(exp_imaginary(v), [np.cos(0.5), 0.6 * np.sin(0.5), 0.0, 0.8 * np.sin(0.5)])
    test2 = np.allclose(exp_imaginary(np.zeros(4)), ONE)
    test3 = np.allclose(rotated_i, J)
    test4 = is_unit(rotation)

    print(f"exp of imaginary quaternion: {test1}")
    print(f"exp(0) = 1: {test2}")
    print(f"Conjugation by exp(k pi/4) rotates i to j: {test3}")
    print(f"Rotation factor is unit: {test4}")

    assert all([test1, test2, test3, test4])

    with pytest.raises(NotImaginary):
        exp_imaginary(ONE)


def test_unit_imaginary_predicates():
    test1 = is_unit_imaginary(I)
    test2 = is_unit_imaginary((I + J) / np.sqrt(2.0))
    test3 = not is_unit_imaginary(ONE)
    test4 = not is_unit_imaginary(2.0 * K)
    test5 = np.isclose(unit_imaginary_defect(K), 0.0)
    test6 = np.isclose(unit_imaginary_defect(ONE), 2.0)

    print(f"i is unit imaginary: {test1}")
    print(f"(i + j)/sqrt(2) is unit imaginary: {test2}")
    print(f"1 is not: {test3}")
    print(f"2k is not: {test4}")
    print(f"Defect of k vanishes: {test5}")
    print(f"Defect of 1 is 2: {test6}")

    assert all([test1, test2, test3, test4, test5, test6])


def test_euclidean_motion():
    r = rotation_about_k(0.7)
    s = exp_imaginary(0.2 * I - 0.5 * J)
    t = quaternion(0.1, -1.0, 2.0, 0.3)
    motion = EuclideanMotion(r, s, t)
    a = random_quaternions(50)

    moved = motion(a)
    back = motion.inverse()(moved)

    test1 = np.allclose(back, a)
    test2 = np.allclose(moved - motion(np.zeros(4)), motion.linear(a))
    test3 = np.allclose(norm(motion.linear(a)), norm(a))

    print(f"Inverse motion: {test1}")
    print(f"Affine structure: {test2}")
    print(f"Isometry: {test3}")

    assert all([test1, test2, test3])

    with pytest.raises(NotUnit):
        EuclideanMotion(2.0 * ONE, ONE, 0.0)


def test_apply_motion_with_equal_factors():
    r = exp_imaginary(0.4 * I + 0.3 * K)
    a = random_quaternions(50)
    imaginary = a.copy()
    imaginary[:, 0] = 0.0

    moved = apply_motion(r, r, 0.0, a)
    moved_imaginary = apply_motion(r, r, 0.0, imaginary)

    test1 = np.allclose(moved[:, 0], a[:, 0])
    test2 = np.allclose(moved_imaginary[:, 0], 0.0)
    test3 = np.allclose(norm(moved_imaginary), norm(imaginary))

    print(f"Real part is fixed: {test1}")
    print(f"Im H is preserved: {test2}")
    print(f"Lengths are preserved: {test3}")

    assert all([test1, test2, test3])

    with pytest.raises(NotUnit):
        apply_motion(ONE, 2.0 * ONE, 0.0, a)


def test_complex_representation():
    p, q = random_quaternions(2, seed=11)
    product = complex_matrix(p) @ complex_vector(q)
    right = complex_to_quaternion(0.3 + 0.4j)

    test1 = np.allclose(quaternion_from_complex(product), mul(p, q))
    test2 = np.allclose(quaternion_from_complex(complex_vector(q)), q)
    # right multiplication by alpha + beta k is complex scalar multiplication
    test3 = np.allclose(complex_vector(mul(q, right)), (0.3 + 0.4j) * complex_vector(q))
    test4 = np.allclose(complex_matrix(p) @ complex_matrix(q), complex_matrix(mul(p, q)))

    print(f"Left multiplication is a complex matrix: {test1}")
    print(f"Coordinates round trip: {test2}")
    print(f"Right multiplication by span(1, k) is complex: {test3}")
    print(f"Matrix representation is multiplicative: {test4}")

    assert all([test1, test2, test3, test4])


if __name__ == "__main__":
    test_hamilton_rules()
    test_algebra_axioms()
    test_masked_inverse()
    test_parts()
    test_exponential()
    test_unit_imaginary_predicates()
    test_euclidean_motion()
    test_complex_representation()
