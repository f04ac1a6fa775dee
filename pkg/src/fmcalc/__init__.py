"""Exact charge calculus for fibrewise Fourier-Mukai transforms on elliptic Calabi-Yau threefolds."""
from .chow import (BaseSurfaceData, K3Class, VerticalClass, exp_divisor, integrate,
                   pi_pushforward, projective_plane, series_inverse, series_sqrt, todd_N,
                   todd_rel, todd_X, vmul)
from .exact import MultiPoly, RMatrix, linear_solve, mat_inverse, mat_mul, poly_shift
from .transforms import double_transform, fm_forward, fm_inverse, twisted_charge

__all__ = [
    "BaseSurfaceData", "K3Class", "VerticalClass", "exp_divisor", "integrate", "pi_pushforward",
    "projective_plane", "series_inverse", "series_sqrt", "todd_N", "todd_rel", "todd_X", "vmul",
    "MultiPoly", "RMatrix", "linear_solve", "mat_inverse", "mat_mul", "poly_shift",
    "double_transform", "fm_forward", "fm_inverse", "twisted_charge",
]
