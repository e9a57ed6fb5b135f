"""Weighted projective spaces, coordinate strata and cyclic quotient types."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

from .errors import NotIsolated
from .exactmath import Ring, gcd_all


@dataclass(frozen=True)
class WeightedSpace:
    weights: tuple[int, ...]
    names: tuple[str, ...] = ()

    def __post_init__(self):
        ws = tuple(int(w) for w in self.weights)
        object.__setattr__(self, "weights", ws)
        if not self.names:
            object.__setattr__(self, "names", tuple(f"x{i}" for i in range(len(ws))))
        if len(self.names) != len(ws):
            raise ValueError("one name per weight")
        if any(w < 1 for w in ws):
            raise ValueError(f"weights must be positive: {ws}")
        if gcd_all(ws) != 1:
            raise ValueError(f"weights have a common factor: {ws}")

    @property
    def dim(self) -> int:
        return len(self.weights) - 1

    def ring(self, p: int | None) -> Ring:
        return Ring(self.names, self.weights, p)

    def __str__(self) -> str:
        return "P(" + ",".join(map(str, self.weights)) + ")"


@dataclass(frozen=True, order=True)
class SingType:
    """Cyclic quotient singularity 1/order (1, a), stored in canonical form."""

    order: int
    a: int

    def __str__(self) -> str:
        return f"1/{self.order}(1,{self.a})"


@dataclass(frozen=True)
class Stratum:
    support: tuple[int, ...]
    order: int
    transverse: tuple[tuple[int, int], ...] = field(default=())  # (index, weight mod order)

    @property
    def dim(self) -> int:
        return len(self.support) - 1

    def label(self, names: Sequence[str]) -> str:
        return "{" + ",".join(names[i] for i in self.support) + "}"


def wellformed_space(ws: WeightedSpace | Sequence[int]) -> tuple[int, ...] | None:
    """``None`` if every N of the N+1 weights are coprime, else a violating index subset."""
    weights = ws.weights if isinstance(ws, WeightedSpace) else tuple(ws)
    n = len(weights)
    for sub in itertools.combinations(range(n), n - 1):
        if gcd_all(weights[i] for i in sub) > 1:
            return sub
    return None


def is_wellformed(ws) -> bool:
    return wellformed_space(ws) is None


def normalize_sing(rho: int, a: int, b: int) -> SingType | None:
    """Canonical 1/rho(1, a') for the action 1/rho(a, b); ``None`` when rho = 1."""
    if rho < 1:
        raise ValueError("order must be positive")
    if rho == 1:
        return None
    if gcd(a, rho) != 1 or gcd(b, rho) != 1:
        raise NotIsolated(f"1/{rho}({a},{b}) is not an isolated quotient singularity")
    a1 = b * pow(a, -1, rho) % rho
    a2 = pow(a1, -1, rho)
    return SingType(rho, min(a1, a2))


def strata_of(ws: WeightedSpace) -> list[Stratum]:
    """Coordinate strata with nontrivial stabilizer, smallest support first."""
    n = len(ws.weights)
    out = []
    for k in range(1, n + 1):
        for sub in itertools.combinations(range(n), k):
            g = gcd_all(ws.weights[i] for i in sub)
            if g > 1:
                trans = tuple((i, ws.weights[i] % g) for i in range(n) if i not in sub)
                out.append(Stratum(sub, g, trans))
    return out


def wellformed_member(inst, **kwargs):
    """Check that ``inst`` meets each positive-dimensional singular stratum in finitely many points.

    Returns ``(True, None)`` or ``(False, stratum)``.
    """
    from .quasismooth import stratum_intersection_dims

    for st, dim in stratum_intersection_dims(inst, **kwargs):
        if dim >= 1:
            return False, st
    return True, None
