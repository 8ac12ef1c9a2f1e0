"""Kazhdan-Lusztig-Stanley and Chow functions in the incidence algebra of a
graded poset, with the characteristic, Eulerian and Coxeter (R-polynomial)
kernels as the main examples."""
from .incidence import (IncElem, KernelData, check_kernel, chow, convolve, invert, kernel_from_chow,
                        kls_left, kls_right, rev_elem, z_function)
from .kernels import adhoc_b3, characteristic, eulerian, from_spec, kernel_from_g
from .poly import Poly, PropertyReport, analyze, gamma_extract, real_root_count, rev
from .poset import Poset, RankFn, build, from_json, graded_rank, load

__all__ = [
    "IncElem", "KernelData", "Poly", "Poset", "PropertyReport", "RankFn",
    "adhoc_b3", "analyze", "build", "characteristic", "check_kernel", "chow", "convolve", "eulerian",
    "from_json", "from_spec", "gamma_extract", "graded_rank", "invert", "kernel_from_chow", "kernel_from_g",
    "kls_left", "kls_right", "load", "real_root_count", "rev", "rev_elem", "z_function",
]
