"""Functions on the tree: difference/summation operators, norms, harmonicity
and the discrete Dirichlet solver.

An *edge function* ``h`` is a dict ``{node: value}``; the value at ``b`` lives
on the edge ``(b^-, b]`` so the root never carries one.  A *potential* ``H``
is a dict over a node set (its domain).  Values may be ``float`` or
``Fraction``; the solver keeps whatever number type the boundary data uses.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping

from .tree import ROOT, NodeId, is_predecessor_closed

EdgeFn = dict
PotentialFn = dict

HARMONIC_TOL = 1e-9


class DomainError(ValueError):
    """Domain not closed under predecessor, or node outside the domain."""


class NotInteriorError(ValueError):
    pass


class DisconnectedDomainError(ValueError):
    """A connected component of the domain carries no boundary value."""


def _depth_order(domain: Iterable[NodeId]) -> list[NodeId]:
    return sorted(domain, key=len)


def integrate(h: Mapping[NodeId, float], domain: Iterable[NodeId]) -> PotentialFn:
    """``(Ih)(x) = sum of h over (o, x]``, so ``(Ih)(o) = 0``."""
    dom = set(domain)
    if not is_predecessor_closed(dom):
        raise DomainError("domain is not closed under predecessor")
    stray = [b for b in h if b not in dom or b == ROOT]
    if stray:
        raise DomainError(f"edge function supported off the domain: {sorted(stray)[:3]}")
    zero = sum((0 * v for v in h.values()), 0)
    H = {}
    for x in _depth_order(dom):
        H[x] = zero if x == ROOT else H[x[:-1]] + h.get(x, 0)
    return H


def difference(H: Mapping[NodeId, float]) -> EdgeFn:
    """``DH(b) = H(b) - H(b^-)``; exact zeros are dropped from the result."""
    if not is_predecessor_closed(H):
        raise DomainError("domain is not closed under predecessor")
    out = {}
    for b, v in H.items():
        if b:
            d = v - H[b[:-1]]
            if d != 0:
                out[b] = d
    return out


def edge_differences(H: Mapping[NodeId, float]) -> EdgeFn:
    """``DH`` over edges with both ends in the domain of ``H``.

    Unlike :func:`difference` the domain may be any node set; edges leaving
    it are treated as absent.
    """
    out = {}
    for b, v in H.items():
        if b and b[:-1] in H:
            d = v - H[b[:-1]]
            if d != 0:
                out[b] = d
    return out


def _sumsq(values) -> float:
    values = list(values)
    if any(isinstance(v, Fraction) for v in values):
        return sum((v * v for v in values), Fraction(0))
    return math.fsum(v * v for v in values)


def energy(H: Mapping[NodeId, float]) -> float:
    """Dirichlet energy ``sum |DH|^2`` over in-domain edges, no root term."""
    return _sumsq(edge_differences(H).values())


def b2_norm_sq(f: Mapping[NodeId, float]) -> float:
    """``|f(o)|^2 + sum |Df(b)|^2``; a root missing from the domain counts as 0."""
    root = f.get(ROOT, 0)
    return _sumsq([root, *edge_differences(f).values()])


def is_harmonic_at(H: Mapping[NodeId, float], x: NodeId, tol: float = HARMONIC_TOL) -> bool:
    """Mean-value test ``H(x) = (H(x^-) + H(x+) + H(x-)) / 3`` at an interior point."""
    return abs(harmonic_residual(H, x)) <= tol * max(1.0, abs(H[x]))


def harmonic_residual(H: Mapping[NodeId, float], x: NodeId) -> float:
    nbrs = [x[:-1], x + "0", x + "1"] if x else []
    if not nbrs or x not in H or any(n not in H for n in nbrs):
        raise NotInteriorError(f"{x!r} is not an interior point of the domain")
    return H[x] - sum(H[n] for n in nbrs) / 3


def dirichlet_solve(domain: Iterable[NodeId], boundary: Mapping[NodeId, float]) -> PotentialFn:
    """Energy-minimizing extension of ``boundary`` to ``domain``.

    Minimizes the energy over edges with both ends in ``domain`` subject to
    the boundary values.  Every free node ends up at the mean of its
    in-domain neighbours.  The domain is a forest, so Gaussian elimination
    from the leaves upward has no fill-in: each free node is written as
    ``H(x) = a_x + b_x * H(parent)`` on the way up and resolved on the way
    down.
    """
    dom = set(domain)
    missing = [b for b in boundary if b not in dom]
    if missing:
        raise DomainError(f"boundary nodes outside the domain: {sorted(missing)[:3]}")
    exact = any(isinstance(v, Fraction) for v in boundary.values())
    one = Fraction(1) if exact else 1.0
    zero = 0 * one

    order = sorted(dom, key=len, reverse=True)
    coef: dict[NodeId, tuple] = {}
    H: dict[NodeId, float] = {}
    acc: dict[NodeId, list] = {}  # parent -> [known sum, sum a, sum b, child count]
    for x in order:
        has_parent = bool(x) and x[:-1] in dom
        known, sa, sb, nc = acc.pop(x, (zero, zero, zero, 0))
        if x in boundary:
            val = one * boundary[x]
            H[x] = val
            contrib = (val, zero, zero)
        else:
            deg = nc + (1 if has_parent else 0)
            denom = deg - sb
            if denom == 0:
                raise DisconnectedDomainError(
                    f"component containing {x!r} has no boundary value")
            if has_parent:
                a, b = (known + sa) / denom, one / denom
                coef[x] = (a, b)
                contrib = (zero, a, b)
            else:
                H[x] = (known + sa) / denom
                contrib = None
        if has_parent:
            p = acc.setdefault(x[:-1], [zero, zero, zero, 0])
            p[0] += contrib[0]
            p[1] += contrib[1]
            p[2] += contrib[2]
            p[3] += 1
    for x in reversed(order):
        if x in coef:
            a, b = coef[x]
            H[x] = a + b * H[x[:-1]]
    return H
