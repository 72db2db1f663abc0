"""Goldman brackets and separability of loops on the pair of pants."""

from .errors import (
    ConstructionError,
    DegenerateConfiguration,
    DomainError,
    GoldmanError,
    ParseError,
    Unsupported,
)
from .words import CyclicWord, FormalSum, Word, cyclic_canonical, parse_cyclic, parse_word, power, primitive_root

__version__ = "0.1.0"
