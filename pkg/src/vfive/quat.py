"""Exact Lipschitz quaternion arithmetic.

A Lipschitz quaternion ``a + b i + c j + d k`` has integer components of
unbounded size.  The V-basis generators are the six quaternions of norm 5
of the form ``1 +/- 2u`` for ``u`` in ``{i, j, k}``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import NotDivisible


@dataclass(frozen=True)
class LipschitzQuaternion:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            if not isinstance(getattr(self, name), int):
                raise TypeError(f"component {name} must be an int")

    def __iter__(self):
        return iter((self.a, self.b, self.c, self.d))

    def __mul__(self, other: LipschitzQuaternion) -> LipschitzQuaternion:
        if not isinstance(other, LipschitzQuaternion):
            return NotImplemented
        a1, b1, c1, d1 = self
        a2, b2, c2, d2 = other
        return LipschitzQuaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def __neg__(self) -> LipschitzQuaternion:
        return LipschitzQuaternion(-self.a, -self.b, -self.c, -self.d)

    def scale(self, k: int) -> LipschitzQuaternion:
        return LipschitzQuaternion(k * self.a, k * self.b, k * self.c, k * self.d)

    def conjugate(self) -> LipschitzQuaternion:
        return LipschitzQuaternion(self.a, -self.b, -self.c, -self.d)

    def norm(self) -> int:
        return self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d

    def try_right_divide(self, d: LipschitzQuaternion) -> LipschitzQuaternion:
        """Return ``q'`` with ``self == q' * d``.

        Raises:
            NotDivisible: if the quotient has a non-integral component.
        """
        n = d.norm()
        if n == 0:
            raise ZeroDivisionError("division by the zero quaternion")
        p = self * d.conjugate()
        if p.a % n or p.b % n or p.c % n or p.d % n:
            raise NotDivisible(f"{d} does not right-divide {self}")
        return LipschitzQuaternion(p.a // n, p.b // n, p.c // n, p.d // n)

    def is_unit(self) -> bool:
        return self.norm() == 1

    @classmethod
    def parse(cls, text: str) -> LipschitzQuaternion:
        """Parse the ``"a,b,c,d"`` text form (signed base-10 integers)."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 4:
            raise ValueError(f"expected four comma-separated integers, got {text!r}")
        try:
            return cls(*(int(p, 10) for p in parts))
        except ValueError:
            raise ValueError(f"malformed quaternion {text!r}") from None

    def __str__(self):
        return f"{self.a},{self.b},{self.c},{self.d}"


ONE = LipschitzQuaternion(1, 0, 0, 0)

UNITS = (
    ONE,
    LipschitzQuaternion(-1, 0, 0, 0),
    LipschitzQuaternion(0, 1, 0, 0),
    LipschitzQuaternion(0, -1, 0, 0),
    LipschitzQuaternion(0, 0, 1, 0),
    LipschitzQuaternion(0, 0, -1, 0),
    LipschitzQuaternion(0, 0, 0, 1),
    LipschitzQuaternion(0, 0, 0, -1),
)

# Probe order used by exact synthesis; first divisor found wins.
GENERATORS = (
    LipschitzQuaternion(1, 2, 0, 0),
    LipschitzQuaternion(1, -2, 0, 0),
    LipschitzQuaternion(1, 0, 2, 0),
    LipschitzQuaternion(1, 0, -2, 0),
    LipschitzQuaternion(1, 0, 0, 2),
    LipschitzQuaternion(1, 0, 0, -2),
)


def multiply(p: LipschitzQuaternion, q: LipschitzQuaternion) -> LipschitzQuaternion:
    return p * q


def conjugate(q: LipschitzQuaternion) -> LipschitzQuaternion:
    return q.conjugate()


def norm(q: LipschitzQuaternion) -> int:
    return q.norm()


def try_right_divide(q: LipschitzQuaternion, d: LipschitzQuaternion) -> LipschitzQuaternion:
    return q.try_right_divide(d)


def generator_set() -> list[LipschitzQuaternion]:
    """The eight Lipschitz units followed by the six norm-5 generators."""
    return list(UNITS) + list(GENERATORS)
