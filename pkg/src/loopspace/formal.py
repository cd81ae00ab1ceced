"""Integer-coefficient formal sums over arbitrary hashable generators.

Every chain-level object in this package (cobar words, bar generators,
necklaces) is manipulated as a FormalSum with exact integer coefficients.
Coefficient-ring reductions happen only when boundary matrices are handed
to the linear algebra layer.
"""

from __future__ import annotations

from typing import Callable, Dict, Hashable, Iterable, Iterator, Tuple


class FormalSum:
    """A finite Z-linear combination of hashable generators.

    Zero coefficients are never stored.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Dict[Hashable, int] | None = None):
        self.coeffs: Dict[Hashable, int] = {}
        if coeffs:
            for g, c in coeffs.items():
                if c:
                    self.coeffs[g] = c

    @classmethod
    def zero(cls) -> "FormalSum":
        return cls()

    @classmethod
    def term(cls, gen: Hashable, coeff: int = 1) -> "FormalSum":
        s = cls()
        if coeff:
            s.coeffs[gen] = coeff
        return s

    def add_term(self, gen: Hashable, coeff: int) -> None:
        """In-place accumulation; removes the key if it cancels."""
        if not coeff:
            return
        c = self.coeffs.get(gen, 0) + coeff
        if c:
            self.coeffs[gen] = c
        else:
            del self.coeffs[gen]

    def __add__(self, other: "FormalSum") -> "FormalSum":
        out = FormalSum(dict(self.coeffs))
        for g, c in other.coeffs.items():
            out.add_term(g, c)
        return out

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        out = FormalSum(dict(self.coeffs))
        for g, c in other.coeffs.items():
            out.add_term(g, -c)
        return out

    def __neg__(self) -> "FormalSum":
        return FormalSum({g: -c for g, c in self.coeffs.items()})

    def scale(self, k: int) -> "FormalSum":
        if k == 0:
            return FormalSum()
        return FormalSum({g: k * c for g, c in self.coeffs.items()})

    def map_terms(self, fn: Callable[[Hashable], "FormalSum"]) -> "FormalSum":
        """Linear extension of a generator-level map gen -> FormalSum."""
        out = FormalSum()
        for g, c in self.coeffs.items():
            for g2, c2 in fn(g).coeffs.items():
                out.add_term(g2, c * c2)
        return out

    def is_zero(self) -> bool:
        return not self.coeffs

    def items(self) -> Iterable[Tuple[Hashable, int]]:
        return self.coeffs.items()

    def __iter__(self) -> Iterator[Tuple[Hashable, int]]:
        return iter(self.coeffs.items())

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        raise TypeError("FormalSum is mutable; not hashable")

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for g, c in sorted(self.coeffs.items(), key=lambda t: repr(t[0])):
            parts.append(f"{c:+d}*{g!r}")
        return " ".join(parts)


def linear(fn: Callable[[Hashable], FormalSum]) -> Callable[[FormalSum], FormalSum]:
    """Lift a generator-level map to formal sums."""

    def lifted(s: FormalSum) -> FormalSum:
        return s.map_terms(fn)

    return lifted
