"""Sequential products of effects on finite-dimensional von Neumann algebras."""
from .config import DEFAULTS, Tolerances, get_tolerances, tolerances
from .effects import (Algebra, Effect, Element, Projection, ceil, ceil_by_limit, check_connected, floor,
                      is_projection, seq_product)
from .errors import SeqProdError
from .processes import BlockLinearMap, Process

__all__ = [
    "Algebra", "BlockLinearMap", "DEFAULTS", "Effect", "Element", "Process", "Projection", "SeqProdError",
    "Tolerances", "ceil", "ceil_by_limit", "check_connected", "floor", "get_tolerances", "is_projection",
    "seq_product", "tolerances",
]
