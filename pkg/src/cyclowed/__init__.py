"""Exact elementary divisors and tie systems of cyclotomic Dedekind and Wedderburn embeddings.

Submodules:

* :mod:`cyclowed.cyclotomic` -- exact arithmetic in Q(zeta_m) and t-adic valuations
* :mod:`cyclowed.linalg` -- exact matrices, Smith forms over Z and over Z_(p)[zeta_{p^n}]
* :mod:`cyclowed.vandermonde` -- Vandermonde factorizations and minimal orderings
* :mod:`cyclowed.ties` -- triangular congruence systems
* :mod:`cyclowed.dedekind` -- the cyclotomic Dedekind embedding, Hochschild descriptors
* :mod:`cyclowed.wedderburn` -- the cyclic Wedderburn embedding, Pascal tie rings
* :mod:`cyclowed.absolute` -- the absolute embedding of Z C_m
* :mod:`cyclowed.cli` -- the ``cyclowed`` command
"""

__version__ = "0.1.0"

from .cyclotomic import INFINITY, CycElement, t_valuation  # noqa: E402
from .linalg import ExactMatrix, smith_divisors_z, smith_valuations_dvr  # noqa: E402

__all__ = [
    "INFINITY",
    "CycElement",
    "ExactMatrix",
    "__version__",
    "smith_divisors_z",
    "smith_valuations_dvr",
    "t_valuation",
]
