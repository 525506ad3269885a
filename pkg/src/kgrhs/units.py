"""Unit context.

All internal formulas carry hbar and c explicitly, so switching between
natural units (the default) and any other convention is a matter of passing
a different `Units` value at the API boundary.  Nothing in the package reads
global state.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Units:
    hbar: float = 1.0
    c: float = 1.0

    def __post_init__(self):
        if self.hbar <= 0 or self.c <= 0:
            raise ValueError("hbar and c must be positive")


#: Natural units hbar = c = 1, the internal default everywhere.
NATURAL = Units(1.0, 1.0)
