from .algebra import (
    UNIT_TOLERANCE,
    ONE,
    I,
    J,
    K,
    quaternion,
    as_quaternion,
    mul,
    mul_chain,
    conj,
    real,
    imag,
    norm,
    norm2,
    inverse,
    masked_inverse,
    conj_re_im_norm_inv,
    inner,
    exp_imaginary,
    rotation_about_k,
    unit_imaginary_defect,
    is_unit_imaginary,
    is_unit,
    apply_motion,
    EuclideanMotion,
    complex_matrix,
    complex_vector,
    quaternion_from_complex,
    complex_to_quaternion,
)


__all__ = [
    "UNIT_TOLERANCE",
    "ONE",
    "I",
    "J",
    "K",
    "quaternion",
    "as_quaternion",
    "mul",
    "mul_chain",
    "conj",
    "real",
    "imag",
    "norm",
    "norm2",
    "inverse",
    "masked_inverse",
    "conj_re_im_norm_inv",
    "inner",
    "exp_imaginary",
    "rotation_about_k",
    "unit_imaginary_defect",
    "is_unit_imaginary",
    "is_unit",
    "apply_motion",
    "EuclideanMotion",
    "complex_matrix",
    "complex_vector",
    "quaternion_from_complex",
    "complex_to_quaternion",
]
