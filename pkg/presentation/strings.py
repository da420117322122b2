"""
Typed strings over 1-cell generators

A string is stored together with its boundary cells: boundary 0 is the
codomain of the whole string, boundary n its domain, and generator i sits
between boundary i (its cod) and boundary i+1 (its dom). The leftmost
generator is outermost, so concatenation s1 . s2 needs dom(s1) = cod(s2).
"""

from __future__ import annotations

from dataclasses import dataclass

from core.errors import TypingError
from core.logging_setup import logger


@dataclass(frozen=True)
class Cell:
    """0-cell"""
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Gen:
    """1-cell generator dom -> cod"""
    name: str
    dom: str
    cod: str

    def __str__(self):
        return f"{self.name} : {self.dom} -> {self.cod}"


@dataclass(frozen=True)
class TypedString:
    gens: tuple
    boundaries: tuple

    def __post_init__(self):
        assert len(self.boundaries) == len(self.gens) + 1, "boundary count mismatch"

    @classmethod
    def identity(cls, cell):
        return cls((), (cell,))

    @property
    def dom(self):
        return self.boundaries[-1]

    @property
    def cod(self):
        return self.boundaries[0]

    @property
    def is_identity(self):
        return not self.gens

    def __len__(self):
        return len(self.gens)

    def cell_at(self, position):
        """Cell at boundary `position` (0..len)"""
        return self.boundaries[position]

    def slice(self, start, stop):
        return TypedString(self.gens[start:stop], self.boundaries[start:stop + 1])

    def prefix(self, stop):
        return self.slice(0, stop)

    def suffix(self, start):
        return self.slice(start, len(self.gens))

    def concat(self, other):
        """self . other; other is applied first"""
        if self.dom != other.cod:
            msg = f"boundary mismatch: dom {self} = {self.dom} but cod {other} = {other.cod}"
            logger.error(msg)
            raise TypingError(msg, position=len(self.gens))
        return TypedString(self.gens + other.gens, self.boundaries + other.boundaries[1:])

    def __add__(self, other):
        return self.concat(other)

    def occurrences(self, word):
        """Start positions where the generator word occurs as a substring"""
        k = len(word.gens)
        if k == 0:
            return [p for p in range(len(self.gens) + 1) if self.boundaries[p] == word.cod]
        return [p for p in range(len(self.gens) - k + 1) if self.gens[p:p + k] == word.gens]

    def __str__(self):
        if not self.gens:
            return f"1_{self.boundaries[0]}"
        return " ".join(self.gens)

    def compact(self):
        """Juxtaposed rendering used in reports and DOT labels, e.g. TPT"""
        if not self.gens:
            return "I"
        return "".join(self.gens) if all(len(g) == 1 for g in self.gens) else " ".join(self.gens)


def concat(s1, s2):
    """Concatenate two typed strings (module-level form of TypedString.concat)"""
    return s1.concat(s2)
