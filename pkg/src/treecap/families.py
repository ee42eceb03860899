"""Generators for the example sequences and their closed-form analytics.

Bit-path layouts are fixed so that generated instances serialize
byte-for-byte reproducibly:

* comb: ``z0 = '0' * (depth0 - 1)``, stem ``w_n = z0 + '0' * n``, tooth
  ``z_n = w_n + '1' + '0' * (b - 1)``;
* Cantor: the level-0 point is ``'0' * (D_0 - 1)``; a level-k point ``p``
  has the two level-(k+1) descendants ``p + c + '0' * (D_{k+1} - D_k - 1)``
  for ``c`` in ``'0', '1'``, where ``D_k = floor(a^k b)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .tree import NodeId, TreeSeq


class SpecError(ValueError):
    pass


class LevelCollisionError(SpecError):
    """Consecutive Cantor levels would not be strictly deeper."""


@dataclass(frozen=True)
class CombSpec:
    depth0: int
    N: int
    b: int

    def validate(self) -> None:
        for name in ("depth0", "N", "b"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise SpecError(f"{name} must be a positive integer, got {v!r}")

    @property
    def beta(self) -> Fraction:
        return Fraction(1, self.b)


def comb_stem(spec: CombSpec) -> list[NodeId]:
    """The stem ``[w_0 = z0, w_1, ..., w_N]``."""
    spec.validate()
    z0 = "0" * (spec.depth0 - 1)
    return [z0 + "0" * n for n in range(spec.N + 1)]


def gen_comb(spec: CombSpec) -> TreeSeq:
    """``{z0} | {z_1..z_N}``: teeth of length ``b`` hanging off a stem below ``z0``."""
    stem = comb_stem(spec)
    teeth = [stem[n] + "1" + "0" * (spec.b - 1) for n in range(1, spec.N + 1)]
    return TreeSeq.from_nodes([stem[0], *teeth])


@dataclass(frozen=True)
class CantorSpec:
    """``Z_{a,b,N}``: ``2^k`` points at depth ``floor(a^k b)`` for ``k = 0..N``.

    ``a`` and ``b`` are converted to ``Fraction`` (strings like ``"3/2"`` are
    accepted), so the floors are computed exactly.
    """

    a: Fraction | int | str | float
    b: Fraction | int | str | float
    N: int

    def levels(self) -> list[int]:
        a, b = Fraction(self.a), Fraction(self.b)
        if a <= 1 or b <= 1:
            raise SpecError("Cantor parameters need a > 1 and b > 1")
        if not isinstance(self.N, int) or self.N < 0:
            raise SpecError("truncation level N must be a nonnegative integer")
        depths = [math.floor(a ** k * b) for k in range(self.N + 1)]
        for k in range(self.N):
            if depths[k + 1] < depths[k] + 1:
                raise LevelCollisionError(
                    f"floor(a^{k + 1} b) = {depths[k + 1]} is not deeper than "
                    f"floor(a^{k} b) = {depths[k]}")
        return depths


def cantor_levels(spec: CantorSpec, root: NodeId | None = None) -> list[list[NodeId]]:
    """Points of each level, in generation order.

    ``root`` overrides the position of the level-0 point (used for nesting);
    it must have depth ``floor(b)``.
    """
    depths = spec.levels()
    top = "0" * (depths[0] - 1) if root is None else root
    if len(top) + 1 != depths[0]:
        raise SpecError("level-0 point has the wrong depth")
    levels = [[top]]
    for k in range(spec.N):
        pad = "0" * (depths[k + 1] - depths[k] - 1)
        levels.append([p + c + pad for p in levels[-1] for c in "01"])
    return levels


def gen_cantor(spec: CantorSpec) -> TreeSeq:
    return TreeSeq.from_nodes(p for level in cantor_levels(spec) for p in level)


def gen_nested(blocks: Sequence[tuple[int, int]]) -> TreeSeq:
    """Union ``W`` of truncated Cantor blocks ``Z_{2, b(n), N(n)}``, n = 1, 2, ...

    Block ``n + 1`` starts below the first deepest point of block ``n``.
    Validated: ``N(n) / b(n) <= 2^-n`` and each block root strictly deeper
    than the point it hangs from.
    """
    pts: list[NodeId] = []
    anchor: NodeId | None = None
    for n, (b, N) in enumerate(blocks, start=1):
        if Fraction(N, b) > Fraction(1, 2 ** n):
            raise SpecError(f"block {n}: N/b = {N}/{b} exceeds 2^-{n}")
        spec = CantorSpec(2, b, N)
        depths = spec.levels()
        root = None
        if anchor is not None:
            if depths[0] <= len(anchor) + 1:
                raise SpecError(f"block {n} root depth {depths[0]} does not clear "
                                f"the previous block (depth {len(anchor) + 1})")
            root = anchor + "0" * (depths[0] - len(anchor) - 1)
        levels = cantor_levels(spec, root)
        pts.extend(p for level in levels for p in level)
        anchor = levels[-1][0]
    return TreeSeq.from_nodes(pts)


def total_mass(Z: TreeSeq, exact: bool = True):
    """``||mu_Z|| = sum 1/d(z)`` for the canonical measure."""
    if exact:
        return sum((Fraction(1, len(z) + 1) for z in Z), Fraction(0))
    return math.fsum(1.0 / (len(z) + 1) for z in Z)


# continued fractions for the comb

def phi_beta(beta, x):
    """``1 / (1 + 1/(beta + x))``, the one-tooth step of the comb recursion."""
    if beta + x <= 0:
        raise ValueError("phi_beta needs beta + x > 0")
    return 1 / (1 + 1 / (beta + x))


def gamma_n(beta, n: int):
    """``gamma_N = phi_beta^N(0)``; keeps ``Fraction`` input exact."""
    x = 0 * beta
    for _ in range(n):
        x = phi_beta(beta, x)
    return x


def gamma_sequence(beta, n: int) -> list:
    """``[gamma_0, ..., gamma_n]``."""
    out = [0 * beta]
    for _ in range(n):
        out.append(phi_beta(beta, out[-1]))
    return out


def gamma_inf(beta: float) -> float:
    """Fixed point of ``phi_beta``: ``(sqrt(beta^2 + 4 beta) - beta) / 2``."""
    return (math.sqrt(beta * beta + 4 * beta) - beta) / 2


def psi_beta(beta: float, x: float) -> float:
    """Affine minorant ``beta/2 + (1 - 3 sqrt(beta)) x`` of ``phi_beta``."""
    return beta / 2 + (1 - 3 * math.sqrt(beta)) * x


def delta_n(beta: float, n: int) -> float:
    """``delta_N = (sqrt(beta)/6) (1 - (1 - 3 sqrt(beta))^N)``, closed form."""
    s = math.sqrt(beta)
    return s / 6 * (1 - (1 - 3 * s) ** n)


def delta_n_iterated(beta: float, n: int) -> float:
    x = 0.0
    for _ in range(n):
        x = psi_beta(beta, x)
    return x
