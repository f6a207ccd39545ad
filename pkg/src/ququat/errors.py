"""Exception types shared across the package.

The CLI maps these onto process exit codes: schema problems exit with 2,
numeric contract violations with 3 and zero-probability post-selection
with 4.
"""


class QuquatError(Exception):
    """Base class for all errors raised by this package."""


class SchemaError(QuquatError):
    """A JSON document does not match the expected schema.

    Messages are path-qualified, e.g. ``steps[2].unitary[0][1]: expected
    a [re, im] pair``.
    """


class NumericContractError(QuquatError):
    """An input violates a numeric contract (non-unitary matrix,
    dimension mismatch, trace-increasing Kraus set, ...)."""


class ZeroProbabilityError(QuquatError):
    """Post-selection on a measurement branch of (numerically) zero
    probability; no renormalized state exists."""
