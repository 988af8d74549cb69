"""Exception types shared across the package."""


class GeomRError(Exception):
    """Base class for all package errors."""


class MalformedInput(GeomRError):
    """Input does not parse or fails structural validation (CLI exit 1)."""


class DegenerateInput(GeomRError):
    """Structurally valid input on which the requested map is undefined.

    Raised for vanishing minors, division by zero, valuation of zero, and
    similar degeneracies (CLI exit 2).  The library never perturbs its way
    around a degenerate configuration; it reports it.
    """


class EngineMisuse(GeomRError):
    """The valuation engine was applied to a map it is not sound for.

    The engine reads valuations off exact arithmetic; that is only meaningful
    for subtraction-free maps.  A zero where the engine needs a valuation is
    the symptom, and it is reported as misuse rather than silently patched.
    """
