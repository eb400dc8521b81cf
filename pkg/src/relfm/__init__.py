"""Exact arithmetic in groups of relative Fourier-Mukai transforms.

Modules:

* :mod:`relfm.lattice`   rank/degree lattice of a genus-one fibre, SL(2, Z)
* :mod:`relfm.genus1`    Weierstrass fibrations: ch~, factorization, WIT, Aut^0
* :mod:`relfm.abelian`   abelian schemes: dagger, U, U_0, xi, trivial kernel
* :mod:`relfm.groups`    f.g. abelian groups, semidirect products, Fano group
* :mod:`relfm.oracle`    brute-force cross-checks
* :mod:`relfm.cli`       command-line interface
"""
from .errors import ConfigError, DomainError
from .lattice import IDENTITY, KClass, SL2Matrix, apply, euler_form, invert, multiply

__version__ = "0.1.0"

__all__ = [
    "ConfigError", "DomainError", "IDENTITY", "KClass", "SL2Matrix",
    "apply", "euler_form", "invert", "multiply",
]
