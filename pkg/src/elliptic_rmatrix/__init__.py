"""Elliptic R-matrices of Baxter-Belavin type and their symmetric extension.

Submodules
----------
elliptic
    Theta function, Kronecker function, E1, E2 and Weierstrass functions.
heisenberg
    Finite Heisenberg basis ``T_alpha`` and tensor-slot helpers.
rmatrix
    Baxter-Belavin and Yang R-matrices, classical terms, block Lax matrix.
symmetric
    R-matrices on ``Mat(N)^2 (x) Mat(M)^2`` with two Planck constants.
algebra
    Quantum Lax operators and Sklyanin-type relation tables.
harness
    Identity registry and the ``verify`` command.
"""

from ._kernel import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
