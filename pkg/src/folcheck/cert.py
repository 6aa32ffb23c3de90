"""Certified integers: exact values or lower bounds imposed by truncation."""
from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True, order=False)
class CertInt:
    """Either ``Exact(k)`` or ``AtLeast(N)``.

    ``value`` may be ``math.inf`` for the exact order of an exactly-zero object.
    """

    value: int | float
    exact: bool = True

    @classmethod
    def at_least(cls, n) -> "CertInt":
        return cls(n, exact=False)

    @classmethod
    def infinity(cls) -> "CertInt":
        return cls(math.inf, exact=True)

    @property
    def is_infinite(self) -> bool:
        return self.value == math.inf

    def require(self) -> int:
        """Return the exact value or raise ``TruncationInsufficient``."""
        from .errors import TruncationInsufficient

        if not self.exact:
            raise TruncationInsufficient(f"only know value >= {self.value}; raise trunc")
        return self.value

    def __add__(self, other):
        if isinstance(other, int):
            other = CertInt(other)
        return CertInt(self.value + other.value, self.exact and other.exact)

    __radd__ = __add__

    def gt(self, bound) -> bool | None:
        """Three-valued ``self > bound``: True/False when decided, None otherwise."""
        if self.exact:
            return self.value > bound
        return True if self.value > bound else None

    def eq(self, k) -> bool | None:
        if self.exact:
            return self.value == k
        return False if self.value > k else None

    def __str__(self):
        if self.is_infinite:
            return "inf"
        return str(self.value) if self.exact else f">={self.value}"


def cmin(*items: CertInt) -> CertInt:
    """Minimum of certified integers, certified when the smallest candidate is exact."""
    best = min(items, key=lambda c: (c.value, not c.exact))
    if best.exact:
        # an AtLeast(b) with b < best.value could still hide a smaller value
        if any(not c.exact and c.value < best.value for c in items):
            return CertInt.at_least(min(c.value for c in items))
        return best
    return CertInt.at_least(best.value)
