"""spincert: exact-arithmetic certificates for Clifford algebra identities,
the charge-1 instanton Dirac construction, sl2 symplectic module structure,
hyperelliptic Riemann-Roch data, spin-structure parity counts, and genus-2
moduli incidence geometry.

Everything is computed over the rationals or the Gaussian rationals with
no floating point and no tolerances; a check either holds exactly or the
library reports the offending value.
"""

__version__ = "0.1.0"


class VerificationError(Exception):
    """An exact check that was expected to pass did not."""
