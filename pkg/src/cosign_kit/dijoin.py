"""Two disjoint dijoins inside the weight-1 arcs of a proper plane digraph.

The driver shrinks the instance until it is super-proper, removes weight-0
vertices one at a time by replacing their star with a planar gadget chosen
by the circle solver, contracts cycles of the weight-1 subgraph and finally
splits the remaining spanning tree by exhaustive search. Each reduction
records how a dijoin pair of the smaller instance lifts back to the larger.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

import networkx as nx

from .circle import CircleInstance, debug_default, solve_circle, validate_instance
from .core import Family, GroundSet, Signing, NEG, POS, elements, mask_of
from .errors import (ConfigurationAbsent, Infeasible, InternalInvariantBreach, NoSuchDicut,
                     NotPlanar, NotProper, NotSuperProper, TooLarge)
from .plane import (DICUT_LIMIT, Dicut, PlaneDigraph, Surgery, contract,
                    delete_vertex, enumerate_dicuts, is_proper,
                    proper_violation, shore_key, validate_plane, weight1_connected)

BASE_LIMIT = 24

KINDS = ("contract_cycle", "split_min_dicut", "cut_vertex", "two_cut_set",
         "near_source_sink", "bridge_eliminate", "undirected_cycle_contract")


@dataclass(frozen=True)
class DijoinPair:
    J1: frozenset
    J2: frozenset

    @classmethod
    def of(cls, J1, J2) -> "DijoinPair":
        return cls(frozenset(J1), frozenset(J2))

    def swapped(self) -> "DijoinPair":
        return DijoinPair(self.J2, self.J1)


EMPTY_PAIR = DijoinPair(frozenset(), frozenset())


@dataclass
class ReductionRecord:
    """One reduction step: the instance before, the reduced instance(s) and lift data.

    Arc ids survive every reduction unchanged, so the forward map is the
    identity on the arcs that are still present.
    """

    kind: str
    before: PlaneDigraph
    after: tuple[PlaneDigraph, ...]
    vertex_maps: tuple[tuple[Optional[int], ...], ...]
    detail: dict = field(default_factory=dict)

    @property
    def forward(self) -> tuple[dict[int, int], ...]:
        return tuple({e: e for e in g.arc_ids if self.before.has_arc(e)} for g in self.after)

    def lift(self, pairs: Sequence[DijoinPair]) -> DijoinPair:
        if len(pairs) != len(self.after):
            raise ValueError(f"{self.kind} expects {len(self.after)} pairs, got {len(pairs)}")
        if len(pairs) == 2:
            return _merge(pairs[0], pairs[1], self.detail["e"], self.detail["f"])
        p = pairs[0]
        if self.kind == "undirected_cycle_contract":
            J1, J2 = set(p.J1), set(p.J2)
            for c1, c2 in self.detail["cycles"]:
                J1 |= set(c1)
                J2 |= set(c2)
            return DijoinPair.of(J1, J2)
        return p


def _merge(p: DijoinPair, q: DijoinPair, e: int, f: int) -> DijoinPair:
    """Union of two pairs after aligning so e lands in J1 and f in J2 on both sides."""
    if e not in p.J1:
        p = p.swapped()
    if e not in q.J1:
        q = q.swapped()
    if e not in p.J1 or f not in p.J2 or e not in q.J1 or f not in q.J2:
        raise InternalInvariantBreach("shared dicut arcs are not split between the dijoins")
    return DijoinPair(p.J1 | q.J1, p.J2 | q.J2)


# ---------------------------------------------------------------- checks


def verify_dijoin_pair(D: PlaneDigraph, pair: DijoinPair, limit: int = DICUT_LIMIT
                       ) -> tuple[bool, Optional[Dicut]]:
    """Disjoint, inside the weight-1 arcs and hitting every dicut twice over.

    The second item is a dicut missed by one of the two sets, when there is one.
    """
    w1 = set(D.weight1)
    if pair.J1 & pair.J2 or not (pair.J1 | pair.J2) <= w1:
        return False, None
    for c in enumerate_dicuts(D, limit):
        arcs = set(c.arcs)
        if not arcs & pair.J1 or not arcs & pair.J2:
            return False, c
    return True, None


@dataclass(frozen=True)
class SuperProperViolation:
    prop: str  # proper A1 A2 A3 A4 A5
    witness: Any


def weight0_vertices(D: PlaneDigraph) -> list[int]:
    return [v for v in range(D.n) if D.is_weight0(v)]


def find_directed_cycle(D: PlaneDigraph) -> Optional[list[int]]:
    """Arc ids of some directed cycle, or None when acyclic."""
    g = nx.MultiDiGraph()
    g.add_nodes_from(range(D.n))
    for a in D.arcs:
        g.add_edge(a.tail, a.head, key=a.id)
    try:
        cyc = nx.find_cycle(g)
    except nx.NetworkXNoCycle:
        return None
    return [k for _, _, k in cyc]


def find_nontrivial_min_dicut(D: PlaneDigraph, dicuts: Sequence[Dicut]) -> Optional[Dicut]:
    """A non-trivial weight-2 dicut that is minimal among the non-trivial ones.

    Only weight 2 is considered: the split needs exactly two weight-1 arcs
    in the cut, and heavier minimum dicuts never enter the bridge argument.
    """
    cands = [c for c in dicuts if c.weight == 2 and not c.is_trivial(D.n)]
    if not cands:
        return None
    cur = min(cands, key=lambda c: shore_key(D, c.shore))
    while True:
        inner = [c for c in cands if set(c.arcs) < set(cur.arcs)]
        if not inner:
            return cur
        cur = min(inner, key=lambda c: shore_key(D, c.shore))


def _undirected(D: PlaneDigraph, drop: Sequence[int] = ()) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(v for v in range(D.n) if v not in drop)
    g.add_edges_from((a.tail, a.head) for a in D.arcs if a.tail not in drop and a.head not in drop)
    return g


def find_weight0_cut_vertex(D: PlaneDigraph) -> Optional[int]:
    cuts = set(nx.articulation_points(_undirected(D)))
    return next((x for x in weight0_vertices(D) if x in cuts), None)


def _two_cut_partner(D: PlaneDigraph, x: int, v: int) -> Optional[list[set]]:
    """Components of D - {x, v} if the two weight-1 arcs of v end in different ones."""
    if v == x or D.weighted_degree(v) != 2:
        return None
    ins, outs = D.in_nbrs(v), D.out_nbrs(v)
    if (ins and outs) or not (ins or outs):
        return None
    comps = [set(c) for c in nx.connected_components(_undirected(D, (x, v)))]
    if len(comps) < 2:
        return None
    ends = [a.head if a.tail == v else a.tail for a in D.incident(v) if a.w == 1]
    where = [next(i for i, c in enumerate(comps) if u in c) for u in ends]
    if where[0] == where[1]:
        return None
    return sorted(comps, key=min)


def find_two_cut_set(D: PlaneDigraph) -> Optional[tuple[int, int]]:
    for x in weight0_vertices(D):
        for v in range(D.n):
            if _two_cut_partner(D, x, v) is not None:
                return x, v
    return None


def find_near_source_sink(D: PlaneDigraph) -> Optional[int]:
    for v in weight0_vertices(D):
        ins, outs = D.in_nbrs(v), D.out_nbrs(v)
        if (len(ins) == 1 and outs) or (len(outs) == 1 and ins):
            return v
    return None


def is_super_proper(D: PlaneDigraph, limit: int = DICUT_LIMIT) -> Optional[SuperProperViolation]:
    """None when proper and A1..A5 hold, else the first failing property with a witness."""
    dicuts = enumerate_dicuts(D, limit)
    bad = proper_violation(D, limit, dicuts)
    if bad is not None:
        return SuperProperViolation("proper", bad)
    cyc = find_directed_cycle(D)
    if cyc is not None:
        return SuperProperViolation("A1", cyc)
    cut = find_nontrivial_min_dicut(D, dicuts)
    if cut is not None:
        return SuperProperViolation("A2", cut)
    x = find_weight0_cut_vertex(D)
    if x is not None:
        return SuperProperViolation("A3", x)
    xv = find_two_cut_set(D)
    if xv is not None:
        return SuperProperViolation("A4", xv)
    v = find_near_source_sink(D)
    if v is not None:
        return SuperProperViolation("A5", v)
    return None


# ---------------------------------------------------------------- reductions


def reduce_acyclic(D: PlaneDigraph) -> Optional[ReductionRecord]:
    """Contract one directed cycle; None when there is none."""
    cyc = find_directed_cycle(D)
    if cyc is None:
        return None
    verts = sorted({D.arc(e).tail for e in cyc})
    D2, vm = contract(D, [verts])
    return ReductionRecord("contract_cycle", D, (D2,), (vm,), {"cycle": cyc})


def make_acyclic(D: PlaneDigraph) -> tuple[PlaneDigraph, list[ReductionRecord]]:
    recs = []
    while (r := reduce_acyclic(D)) is not None:
        recs.append(r)
        D = r.after[0]
    return D, recs


def _split(D: PlaneDigraph, side_a: set, side_b: set, kind: str, e: int, f: int,
           detail: dict) -> ReductionRecord:
    D1, m1 = contract(D, [sorted(side_a)])
    D2, m2 = contract(D, [sorted(side_b)])
    if D1.n >= D.n or D2.n >= D.n:
        raise InternalInvariantBreach(f"{kind} split does not shrink the instance")
    detail.update(e=e, f=f)
    return ReductionRecord(kind, D, (D1, D2), (m1, m2), detail)


def reduce_min_dicut_split(D: PlaneDigraph, cut: Optional[Dicut] = None,
                           limit: int = DICUT_LIMIT) -> ReductionRecord:
    """Split along a non-trivial weight-2 dicut by contracting each side in turn.

    The first reduced instance has the shore contracted, the second the
    co-shore. Lifting aligns both pairs on the two weight-1 cut arcs.
    """
    if cut is None:
        cut = find_nontrivial_min_dicut(D, enumerate_dicuts(D, limit))
    if cut is None or cut.weight != 2 or cut.is_trivial(D.n):
        raise NoSuchDicut("no non-trivial dicut of weight 2")
    e, f = sorted(a for a in cut.arcs if D.arc(a).w == 1)
    U = set(elements(cut.shore))
    return _split(D, U, set(range(D.n)) - U, "split_min_dicut", e, f, {"shore": cut.shore})


def reduce_cut_vertex(D: PlaneDigraph, x: Optional[int] = None) -> ReductionRecord:
    """Contract every component hanging off a weight-0 cut vertex except the weighted one."""
    if x is None:
        x = find_weight0_cut_vertex(D)
    if x is None or not D.is_weight0(x):
        raise ConfigurationAbsent("no weight-0 cut vertex")
    comps = sorted((set(c) for c in nx.connected_components(_undirected(D, (x,)))), key=min)
    if len(comps) < 2:
        raise ConfigurationAbsent(f"{D.label(x)} is not a cut vertex")
    heavy = [c for c in comps if any(a.w and a.tail in c for a in D.arcs)]
    main = heavy[0] if heavy else comps[0]
    groups = [sorted(c) for c in comps if c is not main and len(c) > 1]
    if not groups:
        # every satellite is already a single vertex, contracting changes nothing
        raise ConfigurationAbsent(f"components around {D.label(x)} are single vertices")
    D2, vm = contract(D, groups)
    return ReductionRecord("cut_vertex", D, (D2,), (vm,), {"x": x, "groups": groups})


def reduce_two_cut_set(D: PlaneDigraph, x: Optional[int] = None, v: Optional[int] = None
                       ) -> ReductionRecord:
    """Weight-0 x with a degree-2 source or sink v whose removal separates v's weight-1 arcs.

    With more than two components a weight-0 one is contracted, or, if it is
    a single vertex, merged into x. With exactly two components the graph is
    split as for a non-trivial minimum dicut, aligned on the arcs at v.
    """
    if x is None or v is None:
        found = find_two_cut_set(D)
        if found is None:
            raise ConfigurationAbsent("no weight-0 two-cut-set")
        x, v = found
    comps = _two_cut_partner(D, x, v)
    if comps is None or not D.is_weight0(x):
        raise ConfigurationAbsent(f"({D.label(x)}, {D.label(v)}) is not a two-cut-set of that kind")
    w1 = sorted((a for a in D.incident(v) if a.w == 1), key=lambda a: a.id)
    ends = [a.head if a.tail == v else a.tail for a in w1]
    U = next(c for c in comps if ends[0] in c)
    Ubar = next(c for c in comps if ends[1] in c)
    detail = {"x": x, "v": v, "source": not D.in_nbrs(v)}
    if len(comps) > 2:
        C = next(c for c in comps if c is not U and c is not Ubar)
        if len(C) > 1:
            D2, vm = contract(D, [sorted(C)])
            detail["contracted"] = sorted(C)
        else:
            c = next(iter(C))
            link = [a.id for a in D.arcs if {a.tail, a.head} == {c, x}]
            if not link:
                raise InternalInvariantBreach("lone component is not adjacent to the cut vertex")
            D2, vm = contract(D, [[c, x]])
            detail["identified"] = c
        return ReductionRecord("two_cut_set", D, (D2,), (vm,), detail)
    return _split(D, U, Ubar, "two_cut_set", w1[0].id, w1[1].id, detail)


def reduce_near_source_sink(D: PlaneDigraph, v: Optional[int] = None) -> ReductionRecord:
    """Weight-0 v with a single in-neighbour l: replace l -> v -> r by l -> r.

    This is the contraction of one arc l -> v; the arcs v -> r keep their ids
    and become l -> r. Near-sinks are handled the same way on the out-side.
    """
    if v is None:
        v = find_near_source_sink(D)
    if v is None or not D.is_weight0(v):
        raise ConfigurationAbsent("no weight-0 near-source or near-sink")
    ins, outs = D.in_nbrs(v), D.out_nbrs(v)
    if len(ins) == 1 and outs:
        link = min(a.id for a in D.arcs if a.head == v)
        side = "source"
    elif len(outs) == 1 and ins:
        link = min(a.id for a in D.arcs if a.tail == v)
        side = "sink"
    else:
        raise ConfigurationAbsent(f"{D.label(v)} is neither a near-source nor a near-sink")
    s = Surgery(D)
    s.contract_arc(link)
    D2, vm = s.freeze()
    return ReductionRecord("near_source_sink", D, (D2,), (vm,), {"v": v, "side": side, "arc": link})


# ---------------------------------------------------------------- bridge


@dataclass(frozen=True)
class BridgeInstance:
    """The circle instance around a weight-0 vertex, with links back to the graph.

    ``neighbors[i]`` is the graph vertex at circle position i and
    ``spokes[i]`` the arc joining it to the centre. ``shores`` maps each
    member of the circle family to the dicut shores of D - v it came from,
    as masks over D's vertices.
    """

    vertex: int
    neighbors: tuple[int, ...]
    spokes: tuple[int, ...]
    dropped: tuple[int, ...]
    instance: CircleInstance
    shores: dict


def build_circle_instance(D: PlaneDigraph, v: int, check: bool = True,
                          limit: int = DICUT_LIMIT) -> BridgeInstance:
    if check:
        bad = is_super_proper(D, limit)
        if bad is not None:
            raise NotSuperProper(f"{bad.prop} fails: {bad.witness}")
    if not D.is_weight0(v):
        raise NotSuperProper(f"{D.label(v)} is not a weight-0 vertex")
    # parallel spokes carry the same dicut constraint; keep the first of each
    seen: dict[int, int] = {}
    dropped = []
    for e in D.rotation[v]:
        a = D.arc(e)
        u = a.head if a.tail == v else a.tail
        if u in seen:
            dropped.append(e)
        else:
            seen[u] = e
    nbrs = tuple(seen)
    spokes = tuple(seen[u] for u in nbrs)
    signs = [POS if D.arc(e).tail == v else NEG for e in spokes]

    Dm, vm = delete_vertex(D, v)
    back = [None] * Dm.n
    for old, new in enumerate(vm):
        if new is not None:
            back[new] = old
    where = {u: i for i, u in enumerate(nbrs)}
    traces: dict[int, list[int]] = {}
    for c in enumerate_dicuts(Dm, limit):
        if c.weight > 1:
            continue
        if c.weight == 0:
            raise InternalInvariantBreach("removing a weight-0 vertex left a weight-0 dicut")
        shore = mask_of(back[i] for i in elements(c.shore))
        t = mask_of(where[u] for u in elements(shore) if u in where)
        if t == 0 or t == (1 << len(nbrs)) - 1:
            raise InternalInvariantBreach("a light dicut shore misses the circle or covers it")
        traces.setdefault(t, []).append(shore)
    ground = GroundSet(len(nbrs), tuple(D.label(u) for u in nbrs))
    inst = CircleInstance(Signing(signs), Family(ground, tuple(traces)))
    bad = validate_instance(inst)
    if bad is not None:
        raise InternalInvariantBreach(
            f"circle instance at {D.label(v)} breaks {bad.describe(ground)}")
    return BridgeInstance(v, nbrs, spokes, tuple(dropped), inst, traces)


def bridge_eliminate(D: PlaneDigraph, v: int, check: bool = True, debug: Optional[bool] = None,
                     limit: int = DICUT_LIMIT) -> ReductionRecord:
    """Delete weight-0 ``v`` and wire its in-neighbours to its out-neighbours by circle chords.

    At every neighbour the new chords replace the old spoke in its rotation,
    ordered by clockwise circular offset to their other end; seen from that
    neighbour this is the nesting order of the non-crossing chords.
    """
    B = build_circle_instance(D, v, check, limit)
    arcs, trace = solve_circle(B.instance, debug=debug)
    d = len(B.neighbors)
    s = Surgery(D)
    for e in B.dropped:
        s.drop_arc(e)
    chords = sorted(arcs)
    ids = [s.add_arc(B.neighbors[a.tail], B.neighbors[a.head], 0) for a in chords]
    for i, u in enumerate(B.neighbors):
        mine = [(((a.head if a.tail == i else a.tail) - i) % d, e)
                for a, e in zip(chords, ids) if i in (a.tail, a.head)]
        rot = s.rot[u]
        k = rot.index(B.spokes[i])
        s.rot[u] = rot[:k] + [e for _, e in sorted(mine)] + rot[k + 1:]
        del s.arcs[B.spokes[i]]
    s.rot[v] = []
    s.delete_vertex(v)
    D2, vm = s.freeze()
    detail = {"v": v, "bridge": B, "circle_arcs": chords, "new_arcs": ids,
              "steps": [r.step for r in trace.records]}
    return ReductionRecord("bridge_eliminate", D, (D2,), (vm,), detail)


# ---------------------------------------------------------------- spanning stage


def _weight1_cycle(D: PlaneDigraph) -> Optional[tuple[list[int], list[int]]]:
    """A cycle of the undirected weight-1 subgraph split into forward and backward arcs."""
    parent = list(range(D.n))
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(D.n)}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for e in D.weight1:
        a = D.arc(e)
        if find(a.tail) != find(a.head):
            parent[find(a.tail)] = find(a.head)
            adj[a.tail].append((a.head, e))
            adj[a.head].append((a.tail, e))
            continue
        # walk the forest from head back to tail, then close with e
        prev = {a.head: None}
        stack = [a.head]
        while stack:
            x = stack.pop()
            for y, f in adj[x]:
                if y not in prev:
                    prev[y] = (x, f)
                    stack.append(y)
        fwd, bwd = [e], []
        y = a.tail
        steps = []
        while prev[y] is not None:
            x, f = prev[y]
            steps.append((x, y, f))
            y = x
        # steps run tail <- ... <- head; traverse them head -> tail
        for x, y, f in reversed(steps):
            (fwd if D.arc(f).tail == x else bwd).append(f)
        return fwd, bwd
    return None


def _weight1_spanning(D: PlaneDigraph) -> bool:
    if D.n == 1:
        return True
    touched = {x for e in D.weight1 for x in (D.arc(e).tail, D.arc(e).head)}
    return len(touched) == D.n and weight1_connected(D)


def contract_undirected_cycles(D: PlaneDigraph) -> Optional[ReductionRecord]:
    """Contract weight-1 cycles until the weight-1 arcs form a tree; None if already a forest.

    Each cycle is split by a fixed traversal direction into the arcs that
    agree with it and those that oppose it; the lift adds the first group to
    J1 and the second to J2.
    """
    if not _weight1_spanning(D):
        raise NotProper("weight-1 arcs must span the vertex set and be connected")
    cur = D
    cycles = []
    vm: tuple[Optional[int], ...] = tuple(range(D.n))
    while (cyc := _weight1_cycle(cur)) is not None:
        fwd, bwd = cyc
        verts = sorted({x for e in fwd + bwd for x in (cur.arc(e).tail, cur.arc(e).head)})
        cur, step = contract(cur, [verts])
        vm = tuple(None if x is None else step[x] for x in vm)
        cycles.append((tuple(fwd), tuple(bwd)))
    if not cycles:
        return None
    return ReductionRecord("undirected_cycle_contract", D, (cur,), (vm,), {"cycles": cycles})


def base_solve_spanning(D: PlaneDigraph, limit: int = BASE_LIMIT,
                        dicut_limit: int = DICUT_LIMIT) -> DijoinPair:
    """Split a spanning weight-1 tree into two dijoins by backtracking.

    Arcs are decided in id order, J1 before J2, so the answer is the first
    feasible split in that order. A dicut is checked as soon as its last
    weight-1 arc is decided.
    """
    if D.n == 1:
        return EMPTY_PAIR
    w1 = D.weight1
    if len(w1) != D.n - 1 or not _weight1_spanning(D):
        raise NotProper("weight-1 arcs must form a spanning tree")
    if len(w1) > limit:
        raise TooLarge(f"{len(w1)} weight-1 arcs exceeds the base solver limit {limit}")
    pos = {e: k for k, e in enumerate(w1)}
    due: list[list[int]] = [[] for _ in w1]
    for c in enumerate_dicuts(D, dicut_limit):
        m = mask_of(pos[e] for e in c.arcs if e in pos)
        if bin(m).count("1") < 2:
            raise NotProper(f"dicut with shore {elements(c.shore)} has weight {c.weight}")
        due[m.bit_length() - 1].append(m)

    def go(k: int, in1: int) -> Optional[int]:
        if k == len(w1):
            return in1
        for take in (1, 0):
            m = in1 | (take << k)
            if all(dm & m and dm & ~m for dm in due[k]):
                got = go(k + 1, m)
                if got is not None:
                    return got
        return None

    got = go(0, 0)
    if got is None:
        raise Infeasible("no split of the spanning weight-1 tree into two dijoins")
    return DijoinPair.of((e for e in w1 if got >> pos[e] & 1),
                         (e for e in w1 if not got >> pos[e] & 1))


# ---------------------------------------------------------------- driver


def next_reduction(D: PlaneDigraph, debug: bool = False, limit: int = DICUT_LIMIT
                   ) -> Optional[ReductionRecord]:
    """The reduction the driver applies next, or None when the base solver takes over."""
    if D.n == 1:
        return None
    r = reduce_acyclic(D)
    if r is not None:
        return r
    cut = find_nontrivial_min_dicut(D, enumerate_dicuts(D, limit))
    if cut is not None:
        return reduce_min_dicut_split(D, cut)
    x = find_weight0_cut_vertex(D)
    if x is not None:
        return reduce_cut_vertex(D, x)
    xv = find_two_cut_set(D)
    if xv is not None:
        return reduce_two_cut_set(D, *xv)
    v = find_near_source_sink(D)
    if v is not None:
        return reduce_near_source_sink(D, v)
    zero = weight0_vertices(D)
    if zero:
        # A1..A5 hold at this point, so the super-proper check is only repeated in debug mode
        return bridge_eliminate(D, zero[0], check=debug, debug=debug, limit=limit)
    return contract_undirected_cycles(D)


def _solve(D: PlaneDigraph, records: list, debug: bool, limit: int) -> DijoinPair:
    rec = next_reduction(D, debug, limit)
    if rec is None:
        return base_solve_spanning(D, dicut_limit=limit)
    records.append(rec)
    if debug:
        for part in rec.after:
            bad = validate_plane(part)
            if bad is not None:
                raise InternalInvariantBreach(f"{rec.kind} broke the embedding: {bad.detail}")
            if not is_proper(part, limit):
                raise InternalInvariantBreach(f"{rec.kind} produced an improper instance")
    pair = rec.lift([_solve(part, records, debug, limit) for part in rec.after])
    if debug:
        ok, cut = verify_dijoin_pair(rec.before, pair, limit)
        if not ok:
            raise InternalInvariantBreach(f"lift through {rec.kind} fails on dicut {cut}")
    return pair


def decompose_dijoins(D: PlaneDigraph, debug: Optional[bool] = None, limit: int = DICUT_LIMIT
                      ) -> tuple[DijoinPair, list[ReductionRecord]]:
    """Two disjoint dijoins among the weight-1 arcs, plus every reduction applied.

    Records are listed in the order they were applied; a split is followed
    by the records of its first part, then those of its second.
    """
    if debug is None:
        debug = debug_default()
    bad = validate_plane(D)
    if bad is not None:
        raise NotPlanar(f"{bad.kind}: {bad.detail}")
    if D.n > limit:
        raise TooLarge(f"{D.n} vertices exceeds the dicut enumeration limit {limit}")
    why = proper_violation(D, limit)
    if why is not None:
        raise NotProper(why[0] if why[1] is None else
                        f"dicut with shore {elements(why[1].shore)} has weight {why[1].weight}")
    records: list[ReductionRecord] = []
    pair = _solve(D, records, debug, limit)
    ok, cut = verify_dijoin_pair(D, pair, limit)
    if not ok:
        raise InternalInvariantBreach(f"final pair misses dicut {cut}")
    return pair, records
