"""Gate alphabet, circuits, PSU(2) unit vectors and the trace distance.

A single-qubit gate is carried as a real unit 4-vector ``(alpha, beta, gamma,
delta)`` standing for ``alpha*I + i*beta*X + i*gamma*Y + i*delta*Z``.  The
same four numbers are read as the quaternion ``alpha + beta i + gamma j +
delta k``, and circuits are evaluated by multiplying token quaternions in
token order.  Under this identification quaternion products reverse matrix
products, so a circuit string is read in time order: the leftmost token acts
first on a state.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from .errors import UnknownToken
from .quat import LipschitzQuaternion


class GateToken(str, Enum):
    V1 = "V1"
    V1d = "V1d"
    V2 = "V2"
    V2d = "V2d"
    V3 = "V3"
    V3d = "V3d"
    X = "X"
    Y = "Y"
    Z = "Z"
    H = "H"
    S = "S"
    Sd = "Sd"
    I = "I"  # noqa: E741

    def __str__(self):
        return self.value

    @property
    def is_v(self) -> bool:
        return self.value[0] == "V"


V_TOKENS = frozenset(t for t in GateToken if t.is_v)

# Integer quaternion and its norm for every token; the gate is q / sqrt(norm).
TOKEN_QUATERNIONS: dict[GateToken, tuple[LipschitzQuaternion, int]] = {
    GateToken.V1: (LipschitzQuaternion(1, 2, 0, 0), 5),
    GateToken.V1d: (LipschitzQuaternion(1, -2, 0, 0), 5),
    GateToken.V2: (LipschitzQuaternion(1, 0, 2, 0), 5),
    GateToken.V2d: (LipschitzQuaternion(1, 0, -2, 0), 5),
    GateToken.V3: (LipschitzQuaternion(1, 0, 0, 2), 5),
    GateToken.V3d: (LipschitzQuaternion(1, 0, 0, -2), 5),
    GateToken.X: (LipschitzQuaternion(0, 1, 0, 0), 1),
    GateToken.Y: (LipschitzQuaternion(0, 0, 1, 0), 1),
    GateToken.Z: (LipschitzQuaternion(0, 0, 0, 1), 1),
    GateToken.I: (LipschitzQuaternion(1, 0, 0, 0), 1),
    # H = (X + Z)/sqrt 2 and S = diag(1, i), each up to global phase.
    GateToken.H: (LipschitzQuaternion(0, 1, 0, 1), 2),
    GateToken.S: (LipschitzQuaternion(1, 0, 0, -1), 2),
    GateToken.Sd: (LipschitzQuaternion(1, 0, 0, 1), 2),
}

_UNIT_TOL = 1e-12


@dataclass(frozen=True)
class UnitVector4:
    """Canonical PSU(2) representative ``(alpha, beta, gamma, delta)``.

    The constructor checks the unit norm and flips the overall sign so that
    alpha > 0, or alpha == 0 and the first nonzero remaining entry is positive.
    """

    alpha: float
    beta: float
    gamma: float
    delta: float

    def __post_init__(self):
        comps = [float(x) for x in (self.alpha, self.beta, self.gamma, self.delta)]
        n2 = math.fsum(x * x for x in comps)
        if not math.isfinite(n2) or abs(n2 - 1.0) > _UNIT_TOL:
            raise ValueError(f"not a unit vector (norm^2 = {n2!r})")
        if _needs_flip(comps):
            comps = [-x for x in comps]
        for name, value in zip(("alpha", "beta", "gamma", "delta"), comps):
            object.__setattr__(self, name, value + 0.0)

    @classmethod
    def normalized(cls, components: Iterable[float]) -> UnitVector4:
        comps = [float(x) for x in components]
        if len(comps) != 4:
            raise ValueError("expected four components")
        n = math.sqrt(math.fsum(x * x for x in comps))
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return cls(*(x / n for x in comps))

    @classmethod
    def from_quaternion(cls, q: LipschitzQuaternion, norm: int | None = None) -> UnitVector4:
        """The gate ``q / sqrt(norm(q))`` computed from exact integers."""
        n = q.norm() if norm is None else norm
        if n <= 0:
            raise ValueError("zero quaternion")
        return cls(*_scaled_components(q, n))

    @classmethod
    def rz(cls, theta: float) -> UnitVector4:
        """``cos(theta/2) I + i sin(theta/2) Z``."""
        return cls(math.cos(theta / 2), 0.0, 0.0, math.sin(theta / 2))

    @classmethod
    def parse(cls, text: str) -> UnitVector4:
        """Parse ``"a,b,c,d"`` or a JSON array; the vector is normalized."""
        text = text.strip()
        if text.startswith("["):
            values = json.loads(text)
        else:
            values = [float(p) for p in text.split(",")]
        return cls.normalized(values)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.alpha, self.beta, self.gamma, self.delta)

    def __iter__(self):
        return iter(self.as_tuple())

    def __mul__(self, other: UnitVector4) -> UnitVector4:
        if not isinstance(other, UnitVector4):
            return NotImplemented
        return UnitVector4.normalized(qmul(self.as_tuple(), other.as_tuple()))

    def to_json(self) -> str:
        return "[" + ", ".join(f"{x:.17g}" for x in self.as_tuple()) + "]"

    def matrix(self):
        """The 2x2 complex matrix ``alpha I + i(beta X + gamma Y + delta Z)``."""
        import numpy as np

        a, b, c, d = self.as_tuple()
        return np.array([[a + 1j * d, c + 1j * b], [-c + 1j * b, a - 1j * d]])


def _needs_flip(comps: Sequence[float]) -> bool:
    for x in comps:
        if x > 0:
            return False
        if x < 0:
            return True
    return False


def _scaled_components(q: LipschitzQuaternion, n: int) -> list[float]:
    # Exact integers may exceed the float range; shift both sides first.
    shift = max(0, (n.bit_length() - 1000) // 2 * 2)
    if shift:
        n >>= shift
        comps = [x >> (shift // 2) if x >= 0 else -((-x) >> (shift // 2)) for x in q]
    else:
        comps = list(q)
    root = math.sqrt(n)
    return [x / root for x in comps]


def qmul(p: Sequence[float], q: Sequence[float]) -> tuple[float, float, float, float]:
    """Hamilton product of two real 4-tuples."""
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return (
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


def trace_distance(u: UnitVector4, v: UnitVector4) -> float:
    """``sqrt(1 - |<u, v>|)``, evaluated as ``min(|u - v|, |u + v|) / sqrt 2``.

    The two expressions agree for unit vectors; the second keeps full relative
    precision when the distance is tiny.
    """
    minus = math.fsum((x - y) ** 2 for x, y in zip(u, v))
    plus = math.fsum((x + y) ** 2 for x, y in zip(u, v))
    return min(1.0, math.sqrt(min(minus, plus) / 2.0))


@dataclass(frozen=True)
class Circuit:
    """Immutable sequence of gate tokens in time order."""

    tokens: tuple[GateToken, ...] = ()
    v_count: int = field(init=False, compare=False)

    def __post_init__(self):
        toks = tuple(GateToken(t) for t in self.tokens)
        object.__setattr__(self, "tokens", toks)
        object.__setattr__(self, "v_count", sum(1 for t in toks if t.is_v))

    def __add__(self, other: Circuit) -> Circuit:
        if not isinstance(other, Circuit):
            return NotImplemented
        return Circuit(self.tokens + other.tokens)

    def __len__(self):
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    def __str__(self):
        return format_circuit(self)


def parse_circuit(text: str) -> Circuit:
    tokens = []
    for pos, lexeme in enumerate(text.split()):
        try:
            tokens.append(GateToken(lexeme))
        except ValueError:
            raise UnknownToken(pos, lexeme) from None
    return Circuit(tuple(tokens))


def format_circuit(circuit: Circuit) -> str:
    return " ".join(t.value for t in circuit.tokens)


def circuit_quaternion(circuit: Circuit) -> tuple[LipschitzQuaternion, int]:
    """Exact integer quaternion of a circuit together with its norm."""
    q = LipschitzQuaternion(1, 0, 0, 0)
    n = 1
    for tok in circuit.tokens:
        g, gn = TOKEN_QUATERNIONS[tok]
        q = q * g
        n *= gn
    # Two H/S factors contribute (norm 2)^2; pull out common factors of 2.
    while n % 4 == 0 and q.a % 2 == 0 and q.b % 2 == 0 and q.c % 2 == 0 and q.d % 2 == 0:
        q = LipschitzQuaternion(q.a // 2, q.b // 2, q.c // 2, q.d // 2)
        n //= 4
    return q, n


def evaluate(circuit: Circuit) -> UnitVector4:
    q, n = circuit_quaternion(circuit)
    return UnitVector4.from_quaternion(q, n)


def circuit_matrix(circuit: Circuit):
    """Independent 2x2 matrix evaluation (later tokens multiply on the left)."""
    import numpy as np

    m = np.eye(2, dtype=complex)
    for tok in circuit.tokens:
        g, gn = TOKEN_QUATERNIONS[tok]
        m = UnitVector4.from_quaternion(g, gn).matrix() @ m
    return m
