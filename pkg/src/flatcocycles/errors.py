"""Exception hierarchy.

Every failure the library can report maps to one of these classes; the CLI
partitions them into exit codes (geometry = 3, identity/snap = 4, caps = 5).
"""


class CocycleError(Exception):
    """Base class for all library errors."""


class GeometryError(CocycleError):
    """Input geometry is degenerate for the requested evaluation."""


class AntipodalDegeneracy(GeometryError):
    pass


class PoleProximity(GeometryError):
    pass


class QuadratureNonConvergence(GeometryError):
    pass


class SnapFailure(CocycleError):
    """A value that should be an integer is further than snap_tol from one."""

    def __init__(self, raw, residual, tol):
        super().__init__(f"value {raw!r} is {residual:.3g} from an integer (tol {tol:.1g})")
        self.raw = raw
        self.residual = residual
        self.tol = tol


class DimensionMismatch(CocycleError):
    pass


class NotACycle(CocycleError):
    pass


class NotCommuting(CocycleError):
    pass


class CapExceeded(CocycleError):
    pass
