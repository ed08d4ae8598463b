"""Continuous frames and Riesz bases in finite-dimensional Hilbert C*-modules."""
from .algebra import AlgebraElement, AlgebraShape
from .errors import NotAFrameError, NotRieszError, ShapeError, SingularError
from .frames import Frame, FrameBounds, FrameDiagnostics, diagnose
from .measure import MeasureSpace, SampledField, make_atomic, make_interval
from .module import ModuleOperator, ModuleVector

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement", "AlgebraShape", "ModuleVector", "ModuleOperator",
    "MeasureSpace", "SampledField", "make_atomic", "make_interval",
    "Frame", "FrameBounds", "FrameDiagnostics", "diagnose",
    "ShapeError", "SingularError", "NotAFrameError", "NotRieszError",
]
