"""Exceptions shared across the package."""


class SizeCapError(ValueError):
    """An enumeration cap was exceeded.

    The message names the cap so callers know which knob to raise
    (see :mod:`haarsym.caps`).
    """


class RegimeError(ValueError):
    """A Weingarten table was requested outside its invertibility regime.

    The Gram matrices used here are only guaranteed nonsingular for
    n >= k (unitary) resp. n >= l (orthogonal, symplectic).
    """


class StructureError(ValueError):
    """A matrix fails a required structural property (unitarity, quaternion
    block structure, membership of a parameter space) beyond tolerance."""
