"""Global numeric tolerances.

Three scales are used throughout the package: ``algebra`` for algebraic
identities (orthogonality, row checks, reconstruction), ``psd`` as the
eigenvalue slack when testing positive semidefiniteness, and
``roundtrip`` for conversion round-trips.  All are configurable at
runtime; library functions that take an explicit ``tol`` argument fall
back to these values when ``tol`` is None.
"""

from dataclasses import dataclass


@dataclass
class Tolerances:
    algebra: float = 1e-10
    psd: float = 1e-9
    roundtrip: float = 1e-12


tolerances = Tolerances()


def set_tolerances(algebra=None, psd=None, roundtrip=None):
    """Override one or more global tolerances; returns the live object."""
    if algebra is not None:
        tolerances.algebra = float(algebra)
    if psd is not None:
        tolerances.psd = float(psd)
    if roundtrip is not None:
        tolerances.roundtrip = float(roundtrip)
    return tolerances
