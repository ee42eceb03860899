"""Condenser capacities on the dyadic tree.

Two independent routes compute ``Cap(E, F) = inf{ ||h||^2 : Ih = 1 on E,
Ih = 0 on F }`` (root left free):

* :func:`cap_condenser` solves the Dirichlet problem on the hull and reads
  the capacity off the extremal potential;
* :func:`cap_recursive` reduces the tree spanned by the plates with the
  series-parallel law of :func:`series_parallel`, never touching the hull.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .dirichlet import EdgeFn, PotentialFn, _sumsq, difference, dirichlet_solve
from .tree import (ROOT, NodeId, TreeSeq, depth, hull as make_hull,
                   is_predecessor_closed, meet)

log = logging.getLogger(__name__)


class PlateError(ValueError):
    """Empty or overlapping condenser plates."""


@dataclass
class CondenserResult:
    """Capacity, extremal edge function and its boundary derivatives.

    For a one-point plate ``E = {z}`` the energy splits over the part of the
    support above ``z`` and the two parts below it:
    ``cap = gamma_P + gamma_plus + gamma_minus`` with ``gamma_P = h(z)``
    (the edge entering ``z``) and ``gamma_pm = -h(z+-)``.  For larger plates
    the components are ``None``.
    """

    cap: float
    h: EdgeFn = field(repr=False)
    gamma_P: float | None = None
    gamma_plus: float | None = None
    gamma_minus: float | None = None
    potential: PotentialFn | None = field(default=None, repr=False)

    def to_json(self) -> dict:
        num = _json_number
        return {
            "cap": num(self.cap),
            "gamma_P": None if self.gamma_P is None else num(self.gamma_P),
            "gamma_plus": None if self.gamma_plus is None else num(self.gamma_plus),
            "gamma_minus": None if self.gamma_minus is None else num(self.gamma_minus),
            "h": {k: num(v) for k, v in sorted(self.h.items())},
        }


def _json_number(v):
    return str(v) if isinstance(v, Fraction) else float(v)


def cap_condenser(E: Iterable[NodeId], F: Iterable[NodeId],
                  hull: Iterable[NodeId] | None = None,
                  exact: bool = False) -> CondenserResult:
    """Capacity of the condenser ``(E, F)`` by solving for the extremal potential.

    Parameters
    ----------
    E, F : node sets
        The plates, held at potential 1 and 0.
    hull : node set, optional
        Predecessor-closed domain of the minimization; defaults to the hull
        of ``E | F``.  Extra dangling branches do not change the answer.
    exact : bool
        Work in ``Fraction`` arithmetic.
    """
    E, F = set(E), set(F)
    if not E or not F:
        raise PlateError("condenser plates must be nonempty")
    if E & F:
        raise PlateError(f"plates overlap at {sorted(E & F)[:3]}")
    dom = make_hull(E | F) if hull is None else frozenset(hull)
    if not (E | F) <= dom:
        raise ValueError("plates must lie in the hull")
    if not is_predecessor_closed(dom):
        raise ValueError("hull must be closed under predecessor")

    one = Fraction(1) if exact else 1.0
    boundary = {e: one for e in E}
    boundary.update({f: 0 * one for f in F})
    H = dirichlet_solve(dom, boundary)
    h = difference(H)
    cap = _sumsq(h.values())
    res = CondenserResult(cap=cap, h=h, potential=H)
    if len(E) == 1:
        (z,) = E
        zero = 0 * one
        res.gamma_P = h.get(z, zero) if z != ROOT else zero
        res.gamma_plus = -h.get(z + "0", zero)
        res.gamma_minus = -h.get(z + "1", zero)
    return res


def gamma(z: NodeId, Z: TreeSeq, exact: bool = False,
          method: str = "condenser") -> CondenserResult | float:
    """``gamma(z, Z) = Cap(z, Z \\ {z})``.

    ``method="condenser"`` returns the full :class:`CondenserResult`;
    ``method="recursive"`` returns only the number.
    """
    if z not in Z:
        raise ValueError(f"{z!r} is not a point of the sequence")
    if len(Z) < 2:
        raise ValueError("gamma needs at least two points")
    rest = [w for w in Z if w != z]
    if method == "condenser":
        return cap_condenser({z}, rest, Z.hull, exact=exact)
    if method == "recursive":
        return cap_recursive(z, rest, exact=exact)
    raise ValueError(f"unknown method {method!r}")


def series_parallel(cap_plus, cap_minus, n: int):
    """Capacity seen through a stem of ``n`` edges ending at a branch point.

    ``Cap(z, U+ | U-) = (c+ + c-) / (1 + n (c+ + c-))`` where ``c+-`` are the
    capacities of the two branches measured from the far end of the stem.
    Two empty branches give capacity 0.
    """
    if n < 1:
        raise ValueError("stem length must be a positive integer")
    if cap_plus < 0 or cap_minus < 0:
        raise ValueError("capacities are nonnegative")
    total = cap_plus + cap_minus
    if total == 0:
        log.debug("series_parallel: both branches empty, capacity 0")
        return total
    return total / (1 + n * total)


def _virtual_tree(terminals: list[NodeId]) -> dict[NodeId, NodeId | None]:
    """Parent map of the tree spanned by ``terminals`` and their pairwise meets."""
    pts = sorted(set(terminals))
    nodes = set(pts)
    nodes.update(meet(a, b) for a, b in zip(pts, pts[1:]))
    parent: dict[NodeId, NodeId | None] = {}
    stack: list[NodeId] = []
    for v in sorted(nodes):
        while stack and not v.startswith(stack[-1]):
            stack.pop()
        parent[v] = stack[-1] if stack else None
        stack.append(v)
    return parent


def cap_recursive(z: NodeId, U: Iterable[NodeId], exact: bool = False):
    """``Cap(z, U)`` by series-parallel reduction of the spanned subtree.

    The tree spanned by ``U | {z}`` is compressed to its branch points and
    re-rooted at ``z``.  Working leaves-first, each branch point ``zeta``
    reached through a stem of ``n`` edges contributes
    ``series_parallel(Cap(zeta, U+), Cap(zeta, U-), n)``; a stem ending at a
    plate point contributes ``1/n``.  Points of ``U`` shield whatever lies
    beyond them.  The root is free, so nothing above the top branch point
    matters.
    """
    U = set(U)
    if not U:
        raise PlateError("U must be nonempty")
    if z in U:
        raise PlateError("z must not belong to U")
    parent = _virtual_tree([z, *U])
    adj: dict[NodeId, list[NodeId]] = {v: [] for v in parent}
    for v, p in parent.items():
        if p is not None:
            adj[v].append(p)
            adj[p].append(v)

    def inv(n):
        return Fraction(1, n) if exact else 1.0 / n

    # iterative post-order from z over the compressed tree
    order, came_from = [], {z: None}
    stack = [z]
    while stack:
        v = stack.pop()
        order.append(v)
        if v in U:
            continue
        for w in adj[v]:
            if w not in came_from:
                came_from[w] = v
                stack.append(w)
    beyond: dict[NodeId, list] = {v: [] for v in order}
    for v in reversed(order[1:]):
        src = came_from[v]
        n = abs(len(v) - len(src))
        if v in U:
            val = inv(n)
        else:
            # away from z a dyadic branch point has at most two further branches
            plus, minus = (beyond[v] + [0, 0])[:2]
            val = series_parallel(plus, minus, n)
        beyond[src].append(val)
    total = sum(beyond[z], Fraction(0) if exact else 0.0)
    return total


def tree_capacity_constant(Z: TreeSeq, exact: bool = False,
                           method: str = "recursive") -> tuple[float, NodeId]:
    """Best constant in ``gamma(a, Z) <= C / d(a)`` and a point attaining it."""
    if len(Z) < 2:
        raise ValueError("the tree capacity condition needs at least two points")
    best, witness = None, None
    for a in Z:
        g = gamma(a, Z, exact=exact, method=method)
        val = depth(a) * (g.cap if isinstance(g, CondenserResult) else g)
        if best is None or val > best:
            best, witness = val, a
    return best, witness
