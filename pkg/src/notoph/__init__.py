"""Exact-arithmetic engine for coupled photon/notoph field equations.

Submodules:

* ``exact``        - Gaussian-rational scalars, float fallback, on-shell momenta
* ``clifford``     - gamma matrices, reflection operator, Clifford decomposition
* ``bw``           - multispinor assembly and machine derivation of field equations
* ``proca``        - residual evaluators for the spin-1 systems and duality helpers
* ``polarization`` - polarization vectors, tensor potential, strengths, mass scans
* ``spin2``        - residual evaluators for the spin-2 system
* ``cli``          - deterministic verification command line
* ``figures``      - CSV + matplotlib rendering of massless-limit scans
"""

__version__ = "1.0.0"

from .exceptions import (
    DivisionByZero,
    MasslessSingular,
    NotExactlyOnShell,
    OffShellMomentum,
    RepresentationInvalid,
)

__all__ = [
    "DivisionByZero",
    "MasslessSingular",
    "NotExactlyOnShell",
    "OffShellMomentum",
    "RepresentationInvalid",
    "__version__",
]
