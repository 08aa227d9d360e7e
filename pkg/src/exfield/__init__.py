"""Chart-based exterior calculus of multivector and multiform fields."""

from .algebra import (
    AlgebraError,
    DimensionMismatch,
    GradeError,
    Multiform,
    Multivector,
    blade_name,
    duality_scalar,
    grade_part,
    left_contract,
    parse_blade_name,
    reversion,
    right_contract,
    wedge,
)
from .extensor import Extensor, SingularExtensor

__version__ = "0.1.0"
