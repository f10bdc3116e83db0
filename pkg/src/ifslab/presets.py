"""Named IFSs used by the CLI examples, the test corpus and the suite."""
from __future__ import annotations

from fractions import Fraction

from .similarity import IFS, Similarity, as_fraction


def cantor(rho) -> IFS:
    """The central-rho Cantor set {rho*x, rho*x + 1 - rho} on [0, 1]."""
    r = as_fraction(rho)
    return IFS((Similarity(r, Fraction(0)), Similarity(r, 1 - r)),
               label=f"cantor({r})")


#: middle-thirds Cantor set, ternary digits {0, 2}
C13 = IFS((Similarity(Fraction(1, 3), Fraction(0)),
           Similarity(Fraction(1, 3), Fraction(2, 3))), "C13")

#: base-9 digits {0, 8}; a subset of C13 (digit pairs 00 and 22 in base 3)
C19 = IFS((Similarity(Fraction(1, 9), Fraction(0)),
           Similarity(Fraction(1, 9), Fraction(8, 9))), "C19")

#: central quarter Cantor set, dimension 1/2
C14 = IFS((Similarity(Fraction(1, 4), Fraction(0)),
           Similarity(Fraction(1, 4), Fraction(3, 4))), "C14")

#: the full interval [0, 1] as two half-scale copies
HALVES = IFS((Similarity(Fraction(1, 2), Fraction(0)),
              Similarity(Fraction(1, 2), Fraction(1, 2))), "halves")
