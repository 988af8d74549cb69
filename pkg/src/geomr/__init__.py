"""Exact geometric R-matrix on Grassmannian crystals and its tropicalization.

Subpackage map:

* ``exactfield``  -- exact rationals and rational functions of a formal
                     infinitesimal (the valuation engine's scalar field)
* ``tableaux``    -- rectangular tableaux, Gelfand-Tsetlin patterns, the
                     combinatorial R and coenergy, classical crystal operators
* ``grassmann``   -- Grassmannian points, Pluecker coordinates, planar
                     networks, the tableau-to-subspace coordinatization
* ``loopgroup``   -- matrices over Laurent polynomials in the loop variable,
                     the fundamental matrix of a point, minors, symmetries
* ``geomcrystal`` -- the geometric crystal on products of Grassmannians
* ``rmatrix``     -- the geometric R-matrix, energy, tropical evaluation
* ``cli``         -- the ``geomr`` command-line interface
"""

__version__ = "0.1.0"

from .errors import DegenerateInput, EngineMisuse, GeomRError, MalformedInput

__all__ = [
    "DegenerateInput",
    "EngineMisuse",
    "GeomRError",
    "MalformedInput",
    "__version__",
]
