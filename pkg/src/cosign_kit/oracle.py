"""Cosigning when the family is only reachable through a membership oracle.

Each subfamily F_uv (members containing u and missing v) of a crossing family
is closed under union and intersection, so it is the set of closed sets of a
preorder squeezed between its smallest and largest member. Forcing checks then
become minimisations of a 0/1 modular function over such lattice families.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Protocol

import networkx as nx

from .core import (NEG, POS, Family, GroundSet, Signing, elements, find_crossing_violation,
                   mask_of)
from .errors import Conflict, Inconsistent, NotCrossing


@dataclass(frozen=True)
class LatticeFamily:
    """Sets U with min_set <= U <= max_set and x in U implying y in U per edge (x, y)."""

    n: int
    min_set: int
    max_set: int
    preorder: tuple[tuple[int, int], ...] = ()

    def closure(self, mask: int) -> int:
        succ: dict[int, list[int]] = {}
        for x, y in self.preorder:
            succ.setdefault(x, []).append(y)
        stack = elements(mask)
        while stack:
            x = stack.pop()
            for y in succ.get(x, ()):
                if not mask >> y & 1:
                    mask |= 1 << y
                    stack.append(y)
        return mask

    def is_member(self, mask: int) -> bool:
        if mask & self.min_set != self.min_set or mask & ~self.max_set:
            return False
        return all(not (mask >> x & 1) or mask >> y & 1 for x, y in self.preorder)

    def check(self) -> None:
        if self.min_set & ~self.max_set:
            raise Inconsistent("min_set is not inside max_set")
        if self.closure(self.min_set) & ~self.max_set or not self.is_member(self.max_set):
            raise Inconsistent("preorder closure escapes max_set")

    def members(self) -> list[int]:
        """All members, by brute force over the free part (small instances only)."""
        free = elements(self.max_set & ~self.min_set)
        out = []
        for bits in range(1 << len(free)):
            m = self.min_set | mask_of(f for k, f in enumerate(free) if bits >> k & 1)
            if self.is_member(m):
                out.append(m)
        return sorted(out)

    def complemented(self, full: int) -> "LatticeFamily":
        """Lattice family of the complements (relative to ``full``) of the members."""
        return LatticeFamily(self.n, full & ~self.max_set, full & ~self.min_set,
                             tuple((y, x) for x, y in self.preorder))


def lattice_min_modular(L: LatticeFamily, a: list[int]) -> tuple[int, int]:
    """Minimum of sum(a[v] for v in U) over members U, with the smallest minimiser.

    Nonnegative weights are minimised by the closure of min_set. Otherwise
    this is a closure problem solved as a minimum s-t cut.
    """
    L.check()
    bottom = L.closure(L.min_set)
    free = L.max_set & ~bottom
    base = sum(a[v] for v in elements(bottom))
    if all(a[v] >= 0 for v in elements(free)):
        return base, bottom
    g = nx.DiGraph()
    g.add_nodes_from(["s", "t"])
    neg_total = 0
    for v in elements(L.max_set):
        g.add_node(v)
        if bottom >> v & 1:
            g.add_edge("s", v)  # no capacity attribute means infinite
        elif a[v] > 0:
            g.add_edge(v, "t", capacity=a[v])
        elif a[v] < 0:
            g.add_edge("s", v, capacity=-a[v])
            neg_total += a[v]
    for x, y in L.preorder:
        if L.max_set >> x & 1:
            if L.max_set >> y & 1:
                g.add_edge(x, y)
            else:
                g.add_edge(x, "t")
    try:
        cut, (src, _) = nx.minimum_cut(g, "s", "t")
    except nx.NetworkXUnbounded as exc:
        raise Inconsistent("forced elements reach outside max_set") from exc
    u = mask_of(v for v in src if v != "s")
    value = sum(a[v] for v in elements(u))
    if value != base + round(cut) + neg_total:
        raise Inconsistent("cut value disagrees with the minimiser")
    return value, u


class Membership(Protocol):
    def __contains__(self, mask: int) -> bool: ...


class ExplicitMembership:
    def __init__(self, F: Family):
        self._sets = frozenset(F.sets)
        self.queries = 0

    def __contains__(self, mask: int) -> bool:
        self.queries += 1
        return mask in self._sets


@dataclass(frozen=True)
class WellProvidedFamily:
    ground: GroundSet
    sub: dict  # (u, v) -> LatticeFamily for nonempty F_uv
    membership: Membership

    def complement(self) -> "WellProvidedFamily":
        """Representation of {V - U : U in F}; its (u, v) entry comes from F_vu."""
        full = self.ground.full
        sub = {(u, v): L.complemented(full) for (v, u), L in self.sub.items()}
        return WellProvidedFamily(self.ground, sub, _ComplementMembership(self.membership, full))


class _ComplementMembership:
    def __init__(self, inner: Membership, full: int):
        self.inner = inner
        self.full = full

    def __contains__(self, mask: int) -> bool:
        return (self.full & ~mask) in self.inner


def subfamily(F: Family, u: int, v: int) -> list[int]:
    return [s for s in F.sets if s >> u & 1 and not s >> v & 1]


def explicit_to_well_provided(F: Family) -> WellProvidedFamily:
    bad = find_crossing_violation(F)
    if bad is not None:
        raise NotCrossing(bad)
    act = elements(F.full)
    sub = {}
    for u in act:
        for v in act:
            if u == v:
                continue
            members = subfamily(F, u, v)
            if not members:
                continue
            lo, hi = members[0], members[0]
            for s in members[1:]:
                lo &= s
                hi |= s
            edges = []
            free = elements(hi & ~lo)
            for x in free:
                holding = [s for s in members if s >> x & 1]
                for y in free:
                    if x != y and all(s >> y & 1 for s in holding):
                        edges.append((x, y))
            sub[(u, v)] = LatticeFamily(F.n, lo, hi, tuple(edges))
    return WellProvidedFamily(F.ground, sub, ExplicitMembership(F))


@dataclass
class OracleStats:
    iterations: int = 0
    minimizations: int = 0
    max_per_iteration: int = 0


def oracle_is_forced(u: int, sign: int, sigma: Signing, W: WellProvidedFamily,
                     stats: Optional[OracleStats] = None,
                     complement: Optional[WellProvidedFamily] = None) -> Optional[int]:
    """A member proving that unsigned ``u`` must take ``sign``, or None.

    For a positive forcing the witness contains u and otherwise only negatives.
    For a negative forcing it misses u and everything else outside it is positive.
    """
    if sign == POS:
        fam, zero = W, sigma.neg
    else:
        fam, zero = (complement or W.complement()), sigma.pos
    a = [0 if (zero >> v & 1 or v == u) else 1 for v in range(W.ground.n)]
    for v in elements(W.ground.full):
        if v == u:
            continue
        L = fam.sub.get((u, v))
        if L is None:
            continue
        if stats is not None:
            stats.minimizations += 1
        value, witness = lattice_min_modular(L, a)
        if value == 0:
            return witness if sign == POS else W.ground.complement(witness)
    return None


def oracle_cosign(W: WellProvidedFamily, stats: Optional[OracleStats] = None) -> Signing:
    stats = stats if stats is not None else OracleStats()
    g = W.ground
    n = g.n
    comp = W.complement()
    signs = [0] * n
    for v in elements(g.full):
        single, cosingle = 1 << v, g.complement(1 << v)
        pos = single != g.full and single in W.membership
        neg = cosingle != 0 and cosingle in W.membership
        if pos and neg:
            raise Conflict(v)
        if pos or neg:
            signs[v] = POS if pos else NEG
    while any(signs[v] == 0 for v in elements(g.full)):
        stats.iterations += 1
        before = stats.minimizations
        sigma = Signing(signs)
        chosen = None
        for v in elements(g.full):
            if signs[v] != 0:
                continue
            p = oracle_is_forced(v, POS, sigma, W, stats, comp)
            q = oracle_is_forced(v, NEG, sigma, W, stats, comp)
            if p is not None and q is not None:
                raise Conflict(v)
            if p is not None or q is not None:
                chosen = (v, POS if p is not None else NEG)
                break
        if chosen is None:
            chosen = (next(v for v in elements(g.full) if signs[v] == 0), POS)
        signs[chosen[0]] = chosen[1]
        stats.max_per_iteration = max(stats.max_per_iteration, stats.minimizations - before)
    return Signing([s if s else POS for s in signs])


def lattice_matches(L: LatticeFamily, members: Iterable[int]) -> bool:
    return L.members() == sorted(members)
