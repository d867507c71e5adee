"""Exception and warning types shared across the package."""


class DomainError(ValueError):
    """An input violates an operation's physical or numerical domain."""


class BpforgeWarning(UserWarning):
    """Base class for all warnings emitted by this package."""


class GridLeakageWarning(BpforgeWarning):
    """The joint amplitude has not decayed enough at the grid boundary."""


class SpectrumShapeWarning(BpforgeWarning):
    """A profile is not single-peaked; widths use the outermost crossings."""


class InconsistentDataWarning(BpforgeWarning):
    """Inputs are mutually inconsistent under the model; a value was clamped
    or falls outside its physical range."""


class GainRegimeWarning(BpforgeWarning):
    """A pair-rate request left the linear low-gain regime."""


class OptimizationWarning(BpforgeWarning):
    """An optimizer terminated at a bracket edge or failed to reach its goal."""
