"""Milnor k2 of the residue field: symbol sums and the vanishing decision.

A SymbolSum is a presentation, never canonical; equality and vanishing are
decided through the differential symbol (a, b) -> da/a ^ db/b, which is
injective on k2, so a symbol sum vanishes iff its image 2-form is zero.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ZeroEntry
from .fields import Embedding, FieldDescriptor, embed_element
from .differentials import Omega2Form, dlog, wedge


@dataclass(frozen=True)
class SymbolSum:
    """Formal sum of symbols (a_i, b_i) with nonzero entries."""

    fld: FieldDescriptor
    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(tuple(e) for e in self.entries))

    @classmethod
    def of(cls, *pairs) -> "SymbolSum":
        if not pairs:
            raise ValueError("empty; use SymbolSum(field, ()) for the zero sum")
        return cls(pairs[0][0].field, pairs)

    def __add__(self, other: "SymbolSum") -> "SymbolSum":
        return SymbolSum(self.fld, self.entries + other.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __repr__(self):
        if not self.entries:
            return "0"
        return " + ".join("sym(%r, %r)" % (a, b) for a, b in self.entries)


def h2p(s: SymbolSum) -> Omega2Form:
    """Differential symbol: sum of dlog(a_i) ^ dlog(b_i)."""
    total = Omega2Form.zero(s.fld)
    for a, b in s.entries:
        if not a or not b:
            raise ZeroEntry("symbol entries must be nonzero")
        total = total + wedge(dlog(a), dlog(b))
    return total


def k2_is_zero(s: SymbolSum) -> bool:
    """Vanishing in k2: exact because the differential symbol is injective."""
    return not h2p(s)


def k2_restrict(s: SymbolSum, e: Embedding) -> SymbolSum:
    return SymbolSum(e.target,
                     tuple((embed_element(a, e), embed_element(b, e))
                           for a, b in s.entries))
