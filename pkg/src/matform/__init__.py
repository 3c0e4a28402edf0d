"""Exact-arithmetic toolkit for matrix-composed forms of degree 2-8 and the
integer-solution sequences of the associated equations f(x1,...,xn) = 1.

Modules:
    polyring  -- sparse multivariate integer polynomials and determinants
    linstruct -- matrices linear in coordinates; closure checks; block lifting
    compose   -- bilinear/trilinear composition maps and identity verification
    catalog   -- the built-in form families
    dioph     -- solution sequences and a brute-force search oracle
    cli       -- command-line interface
"""

from .polyring import Polynomial, PolyMatrix, VarTable
from .linstruct import ExtractionRecipe, LinearStructure
from .compose import MultilinearMap, identity_element, invert, verify_identity
from .catalog import FormFamily, family, list_families

__version__ = "0.1.0"

__all__ = [
    "Polynomial", "PolyMatrix", "VarTable",
    "ExtractionRecipe", "LinearStructure",
    "MultilinearMap", "identity_element", "invert", "verify_identity",
    "FormFamily", "family", "list_families",
    "__version__",
]
