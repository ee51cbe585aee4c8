"""taurec: exact-arithmetic torsion-pair and tau-tilting calculus.

Finite-dimensional algebras are given by quivers with relations or raw
structure constants; modules are exact matrix representations.  On top of
that sit the Auslander-Reiten translate, AR-quiver knitting, torsion-class
and support-tau-tilting enumeration, and the six-functor calculus for the
module-category recollement of a triangular matrix algebra, with a CLI
(``taurec``) that reproduces a fully worked example end to end.
"""

from taurec.linalg import KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = ["KERNEL_BACKEND", "__version__"]
