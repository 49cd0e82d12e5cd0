"""Scattered linearized trinomials over F_{q^6} for even q.

Library layout:

- :mod:`scatlin.field`    arithmetic in F_{2^{6e}} and its subfield lattice
- :mod:`scatlin.linpoly`  sigma-linearized polynomial algebra, Dickson matrices
- :mod:`scatlin.scatter`  scatteredness oracles, subspaces, system polynomials
- :mod:`scatlin.family`   the admissible coefficient set and its certificates
- :mod:`scatlin.mrd`      rank-metric codes, idealizers, equivalence
- :mod:`scatlin.linset`   linear sets on the projective line PG(1, q^6)
- :mod:`scatlin.cli`      command-line verification campaigns
"""

from .errors import (
    DegenerateInputError,
    FeasibilityError,
    ModulusError,
    ParameterError,
    ScatlinError,
)
from .field import FieldCtx, make_field

__all__ = [
    "DegenerateInputError",
    "FeasibilityError",
    "FieldCtx",
    "ModulusError",
    "ParameterError",
    "ScatlinError",
    "make_field",
]

__version__ = "0.1.0"
