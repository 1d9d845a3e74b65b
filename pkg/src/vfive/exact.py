"""Exact synthesis of W circuits from Lipschitz quaternions of norm 5^L."""
from __future__ import annotations

from dataclasses import dataclass

from .core import Circuit, GateToken, UnitVector4
from .errors import NotAGenerator, NotDivisible, NotRepresentable
from .quat import GENERATORS, LipschitzQuaternion

_GENERATOR_TOKENS = {
    LipschitzQuaternion(1, 2, 0, 0): GateToken.V1,
    LipschitzQuaternion(1, -2, 0, 0): GateToken.V1d,
    LipschitzQuaternion(1, 0, 2, 0): GateToken.V2,
    LipschitzQuaternion(1, 0, -2, 0): GateToken.V2d,
    LipschitzQuaternion(1, 0, 0, 2): GateToken.V3,
    LipschitzQuaternion(1, 0, 0, -2): GateToken.V3d,
}

# Units up to the sign that PSU(2) forgets.
_UNIT_TOKENS = {
    (1, 0, 0, 0): GateToken.I,
    (0, 1, 0, 0): GateToken.X,
    (0, 0, 1, 0): GateToken.Y,
    (0, 0, 0, 1): GateToken.Z,
}


def level_of_norm(n: int) -> int | None:
    """``L`` with ``n == 5**L``, or None."""
    if n < 1:
        return None
    level = 0
    while n % 5 == 0:
        n //= 5
        level += 1
    return level if n == 1 else None


def is_exactly_representable(q: LipschitzQuaternion) -> int | None:
    return level_of_norm(q.norm())


@dataclass(frozen=True)
class ExactUnitary:
    """The gate ``(a I + b iX + c iY + d iZ) / 5^(L/2)`` with ``norm(q) == 5^L``."""

    q: LipschitzQuaternion
    level: int

    def __post_init__(self):
        if self.level < 0 or self.q.norm() != 5**self.level:
            raise NotRepresentable(f"norm({self.q}) = {self.q.norm()} is not 5^{self.level}")

    @classmethod
    def from_quaternion(cls, q: LipschitzQuaternion) -> ExactUnitary:
        level = is_exactly_representable(q)
        if level is None:
            raise NotRepresentable(f"norm({q}) = {q.norm()} is not a power of 5")
        return cls(q, level)

    def reduced(self) -> ExactUnitary:
        """Same gate at the smallest level (divide out common factors of 5)."""
        q, level = self.q, self.level
        while level >= 2 and all(x % 5 == 0 for x in q):
            q = LipschitzQuaternion(q.a // 5, q.b // 5, q.c // 5, q.d // 5)
            level -= 2
        return ExactUnitary(q, level)

    def unit_vector(self) -> UnitVector4:
        return UnitVector4.from_quaternion(self.q, 5**self.level)

    def same_gate(self, other: ExactUnitary) -> bool:
        """PSU(2) equality: ``q == +/- q'`` once both are reduced."""
        a, b = self.reduced(), other.reduced()
        return a.level == b.level and (a.q == b.q or a.q == -b.q)


def gate_of_generator(g: LipschitzQuaternion) -> GateToken:
    """Token for a generator or a Lipschitz unit (unit signs are dropped)."""
    if g in _GENERATOR_TOKENS:
        return _GENERATOR_TOKENS[g]
    if g.norm() == 1:
        key = tuple(abs(x) for x in g)
        return _UNIT_TOKENS[key]
    raise NotAGenerator(f"{g} is not a unit or a V generator")


def exact_synthesize(u: ExactUnitary | LipschitzQuaternion) -> Circuit:
    """Factor an exact unitary into V gates plus at most one Pauli.

    Each step peels off a right factor from the generator list, so the
    quotient norm drops by 5.  Tokens come out in product order: the
    product of the token quaternions equals ``+/- q``.
    """
    if isinstance(u, LipschitzQuaternion):
        u = ExactUnitary.from_quaternion(u)
    u = u.reduced()
    q = u.q
    tokens: list[GateToken] = []
    for _ in range(u.level):
        for g in GENERATORS:
            try:
                q = q.try_right_divide(g)
            except NotDivisible:
                continue
            tokens.append(_GENERATOR_TOKENS[g])
            break
        else:  # pragma: no cover - excluded by the factorization theorem
            raise RuntimeError(f"no generator right-divides {q}")
    unit = gate_of_generator(q)
    if unit is not GateToken.I:
        tokens.append(unit)
    tokens.reverse()
    return Circuit(tuple(tokens))
