"""Exact computational algebra for Lie brackets, their deformations, and
q-deformed ladder-operator calculus.

Everything runs over the Gaussian rationals Q(i) (module ``exactnum``), so
all verification results are exact yes/no answers, never floating-point
residuals.  The only floating-point corner is the orthonormal matrix mode
of module ``fock``, which is kept strictly separate from the exact paths.
"""

from .exactnum import GaussRat, LaurentPoly
from .liealg import LieAlgebra, Subspace

__version__ = "0.1.0"

__all__ = ["GaussRat", "LaurentPoly", "LieAlgebra", "Subspace", "__version__"]
