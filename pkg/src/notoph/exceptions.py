"""Exception types shared across the package."""


class DivisionByZero(ZeroDivisionError):
    """Division by an exactly (or numerically) zero scalar."""


class NotExactlyOnShell(ValueError):
    """|p|^2 + m^2 is not the square of a rational, so no exact energy exists.

    Callers should either switch to approximate mode or pick a Pythagorean
    sample point instead.
    """


class MasslessSingular(ValueError):
    """m = 0 requested on a path that divides by m before simplification."""


class RepresentationInvalid(RuntimeError):
    """A gamma-matrix representation failed its defining identity suite."""


class OffShellMomentum(ValueError):
    """Momentum does not satisfy p^2 = m^2 for the mass in use."""
