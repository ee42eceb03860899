"""Rooted dyadic tree: node addressing, order structure and geodesics.

A node is addressed by its binary path from the root, stored as a ``str``
of ``'0'``/``'1'`` characters; the root ``o`` is the empty string.  Only
finite pieces of the infinite tree (hulls of finite sequences) are ever
materialized.

Conventions
-----------
* ``depth(a)`` counts *vertices* on ``[o, a]``, so ``depth(ROOT) == 1``.
* ``dist(a, b)`` counts *edges* on the geodesic between ``a`` and ``b``.
* The ``'0'`` child of a node is its ``+`` child, the ``'1'`` child its
  ``-`` child.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from typing import Iterable

ROOT = ""

NodeId = str


class RootError(ValueError):
    """Raised when an operation needs a predecessor of the root."""


def check_node(a: str) -> NodeId:
    if not isinstance(a, str) or a.strip("01"):
        raise ValueError(f"not a node path: {a!r}")
    return a


def depth(a: NodeId) -> int:
    return len(a) + 1


def predecessor(a: NodeId) -> NodeId:
    if not a:
        raise RootError("the root has no predecessor")
    return a[:-1]


def children(a: NodeId) -> tuple[NodeId, NodeId]:
    return a + "0", a + "1"


def meet(a: NodeId, b: NodeId) -> NodeId:
    """Deepest common ancestor of ``a`` and ``b``."""
    return os.path.commonprefix([a, b])


def dist(a: NodeId, b: NodeId) -> int:
    return len(a) + len(b) - 2 * len(meet(a, b))


def is_ancestor(a: NodeId, b: NodeId, strict: bool = False) -> bool:
    """True if ``a <= b`` in the tree order (``a < b`` when ``strict``)."""
    return b.startswith(a) and (not strict or len(a) < len(b))


def ancestors(a: NodeId, include_self: bool = True) -> list[NodeId]:
    """Nodes of ``[o, a]`` ordered from the root down."""
    stop = len(a) + 1 if include_self else len(a)
    return [a[:k] for k in range(stop)]


def geodesic(a: NodeId, b: NodeId) -> list[NodeId]:
    """Nodes of the geodesic from ``a`` to ``b``, both endpoints included."""
    m = len(meet(a, b))
    up = [a[:k] for k in range(len(a), m, -1)]
    down = [b[:k] for k in range(m, len(b) + 1)]
    return up + down


def node_at_distance(a: NodeId, b: NodeId, k: int) -> NodeId:
    """The node on ``[a, b]`` at distance ``k`` from ``a``, for ``a <= b``."""
    if not is_ancestor(a, b):
        raise ValueError(f"{a!r} is not an ancestor of {b!r}")
    if not 0 <= k <= len(b) - len(a):
        raise ValueError("distance out of range")
    return b[: len(a) + k]


def shadow_members(alpha: NodeId, S: Iterable[NodeId]) -> set[NodeId]:
    """Members of ``S`` lying in the shadow ``S(alpha) = {beta >= alpha}``."""
    return {s for s in S if s.startswith(alpha)}


def is_stopping_region(S: Iterable[NodeId]) -> bool:
    """True iff no member of ``S`` is a strict ancestor of another."""
    # after a lexicographic sort a prefix is immediately followed by one of its extensions
    ordered = sorted(set(S))
    return not any(b.startswith(a) for a, b in zip(ordered, ordered[1:]))


def hull(nodes: Iterable[NodeId]) -> frozenset[NodeId]:
    """The predecessor-closed hull ``T_inf = U [o, z]``; always contains the root."""
    out = {ROOT}
    for z in nodes:
        # walk up until we hit something already present
        for k in range(len(z), -1, -1):
            p = z[:k]
            if p in out:
                break
            out.add(p)
    return frozenset(out)


def is_predecessor_closed(domain: Iterable[NodeId]) -> bool:
    dom = set(domain)
    return all(not a or a[:-1] in dom for a in dom)


def order_key(a: NodeId) -> tuple[int, str]:
    """Nondecreasing depth, ties broken lexicographically."""
    return (len(a), a)


@dataclass(frozen=True)
class TreeSeq:
    """A finite sequence ``Z`` of distinct nodes together with its hull.

    Nodes are kept sorted by :func:`order_key`, so two ``TreeSeq`` built from
    the same set compare equal.
    """

    nodes: tuple[NodeId, ...]
    hull: frozenset[NodeId] = field(repr=False, compare=False)

    @classmethod
    def from_nodes(cls, nodes: Iterable[NodeId]) -> "TreeSeq":
        nodes = [check_node(a) for a in nodes]
        if len(set(nodes)) != len(nodes):
            raise ValueError("sequence nodes must be pairwise distinct")
        ordered = tuple(sorted(nodes, key=order_key))
        return cls(ordered, hull(ordered))

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self):
        return iter(self.nodes)

    def __contains__(self, a: object) -> bool:
        return a in self.points

    @cached_property
    def points(self) -> frozenset[NodeId]:
        return frozenset(self.nodes)

    def without(self, z: NodeId) -> "TreeSeq":
        return TreeSeq.from_nodes(a for a in self.nodes if a != z)

    def with_root(self) -> "TreeSeq":
        """The sequence with the root adjoined (``z_0 = o``)."""
        if ROOT in self.points:
            return self
        return TreeSeq.from_nodes((ROOT,) + self.nodes)


def canonical_measure(nodes: Iterable[NodeId], exact: bool = False) -> dict[NodeId, float]:
    """The tree measure ``mu(a) = 1/d(a)`` on the given nodes."""
    if exact:
        return {a: Fraction(1, depth(a)) for a in nodes}
    return {a: 1.0 / depth(a) for a in nodes}


def minimal_points(alpha: NodeId, Z: Iterable[NodeId]) -> set[NodeId]:
    """Points of ``Z`` strictly below ``alpha`` with an unobstructed view of it.

    ``beta`` qualifies when ``alpha < beta`` and no point of ``Z`` lies
    strictly between them.  ``alpha`` itself is never returned, so the result
    is always a stopping region.
    """
    pts = set(Z)
    out = set()
    for b in pts:
        if len(b) <= len(alpha) or not b.startswith(alpha):
            continue
        if not any(b[:k] in pts for k in range(len(alpha) + 1, len(b))):
            out.add(b)
    return out
