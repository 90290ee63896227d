"""Plane digraphs given by rotation systems.

A drawing is never computed here. Callers hand over, for every vertex, the
clockwise cyclic order of its incident arc ids, and every operation that
changes the graph (contraction, vertex deletion, chord insertion) edits that
order directly so the result is still a plane drawing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .core import elements
from .errors import GenerationFailed, InternalInvariantBreach, MalformedInput, TooLarge

DICUT_LIMIT = 24
NUMPY_LIMIT = 16


@dataclass(frozen=True)
class ArcRecord:
    id: int
    tail: int
    head: int
    w: int


@dataclass(frozen=True)
class PlaneDigraph:
    """Vertices 0..n-1, weighted arcs with stable ids and a rotation system.

    Arc records are structurally checked on construction. The rotation is
    stored as given; :func:`validate_plane` reports whether it is a sound
    plane embedding.
    """

    n: int
    arcs: tuple[ArcRecord, ...]
    rotation: tuple[tuple[int, ...], ...]
    names: Optional[tuple[str, ...]] = None
    _by_id: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self.n < 1:
            raise MalformedInput("a plane digraph needs a vertex")
        arcs = tuple(sorted((a if isinstance(a, ArcRecord) else ArcRecord(*a) for a in self.arcs),
                            key=lambda a: a.id))
        by_id = {}
        for a in arcs:
            if a.id in by_id:
                raise MalformedInput(f"duplicate arc id {a.id}")
            if not (0 <= a.tail < self.n and 0 <= a.head < self.n):
                raise MalformedInput(f"arc {a.id} has an endpoint out of range")
            if a.tail == a.head:
                raise MalformedInput(f"arc {a.id} is a loop")
            if a.w not in (0, 1):
                raise MalformedInput(f"arc {a.id} has weight {a.w}, expected 0 or 1")
            by_id[a.id] = a
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "rotation", tuple(tuple(int(e) for e in r) for r in self.rotation))
        if self.names is not None:
            names = tuple(str(x) for x in self.names)
            if len(names) != self.n:
                raise MalformedInput("one name per vertex")
            object.__setattr__(self, "names", names)
        object.__setattr__(self, "_by_id", by_id)

    def arc(self, aid: int) -> ArcRecord:
        return self._by_id[aid]

    def has_arc(self, aid: int) -> bool:
        return aid in self._by_id

    @property
    def arc_ids(self) -> list[int]:
        return [a.id for a in self.arcs]

    @property
    def weight1(self) -> list[int]:
        return [a.id for a in self.arcs if a.w == 1]

    def label(self, v: int) -> str:
        return self.names[v] if self.names else f"v{v + 1}"

    def incident(self, v: int) -> list[ArcRecord]:
        return [a for a in self.arcs if a.tail == v or a.head == v]

    def in_nbrs(self, v: int) -> set[int]:
        return {a.tail for a in self.arcs if a.head == v}

    def out_nbrs(self, v: int) -> set[int]:
        return {a.head for a in self.arcs if a.tail == v}

    def weighted_degree(self, v: int) -> int:
        return sum(a.w for a in self.incident(v))

    def is_weight0(self, v: int) -> bool:
        inc = self.incident(v)
        return bool(inc) and all(a.w == 0 for a in inc)

    def reversed(self) -> "PlaneDigraph":
        return PlaneDigraph(self.n, tuple(ArcRecord(a.id, a.head, a.tail, a.w) for a in self.arcs),
                            self.rotation, self.names)

    def next_id(self) -> int:
        return max(self._by_id, default=-1) + 1


@dataclass(frozen=True)
class PlaneViolation:
    kind: str  # rotation | euler
    detail: str


def _components(n: int, pairs: Iterable[tuple[int, int]]) -> list[int]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    return [find(x) for x in range(n)]


def count_faces(D: PlaneDigraph) -> dict[int, int]:
    """Faces traced from the rotation system, per weakly connected component.

    A dart is an arc leaving one of its ends. The dart after (e, from u)
    leaves the far end w of e along the arc following e clockwise at w.
    """
    pos = [{e: i for i, e in enumerate(r)} for r in D.rotation]
    seen = set()
    comp = _components(D.n, ((a.tail, a.head) for a in D.arcs))
    faces = {c: 0 for c in comp}
    for a in D.arcs:
        for start in ((a.id, a.tail), (a.id, a.head)):
            if start in seen:
                continue
            faces[comp[start[1]]] += 1
            d = start
            while d not in seen:
                seen.add(d)
                e, u = d
                rec = D.arc(e)
                w = rec.head if rec.tail == u else rec.tail
                rot = D.rotation[w]
                d = (rot[(pos[w][e] + 1) % len(rot)], w)
    for v in range(D.n):
        if not D.rotation[v] and not any(a.tail == v or a.head == v for a in D.arcs):
            faces[comp[v]] = 1
    return faces


def validate_plane(D: PlaneDigraph) -> Optional[PlaneViolation]:
    """Rotation consistency, then V - E + F = 2 on every connected component."""
    if len(D.rotation) != D.n:
        return PlaneViolation("rotation", f"{len(D.rotation)} rotations for {D.n} vertices")
    for v, rot in enumerate(D.rotation):
        if len(set(rot)) != len(rot):
            return PlaneViolation("rotation", f"{D.label(v)} lists an arc twice")
        for e in rot:
            if not D.has_arc(e):
                return PlaneViolation("rotation", f"{D.label(v)} lists unknown arc {e}")
            a = D.arc(e)
            if v not in (a.tail, a.head):
                return PlaneViolation("rotation", f"{D.label(v)} lists arc {e} it is not on")
    for a in D.arcs:
        for x in (a.tail, a.head):
            if a.id not in D.rotation[x]:
                return PlaneViolation("rotation", f"arc {a.id} missing at {D.label(x)}")
    comp = _components(D.n, ((a.tail, a.head) for a in D.arcs))
    faces = count_faces(D)
    for c in sorted(set(comp)):
        nv = comp.count(c)
        ne = sum(1 for a in D.arcs if comp[a.tail] == c)
        if nv - ne + faces[c] != 2:
            return PlaneViolation(
                "euler", f"component of {D.label(c)}: V={nv} E={ne} F={faces[c]}")
    return None


# ---------------------------------------------------------------- dicuts


@dataclass(frozen=True)
class Dicut:
    shore: int
    arcs: tuple[int, ...]
    weight: int

    def is_trivial(self, n: int) -> bool:
        k = bin(self.shore).count("1")
        return k == 1 or k == n - 1


def _shores_numpy(D: PlaneDigraph) -> list[int]:
    idx = np.arange(1, (1 << D.n) - 1, dtype=np.int64)
    ok = np.ones(idx.shape, dtype=bool)
    for a in D.arcs:
        ok &= ~(((idx >> a.head) & 1).astype(bool) & ~((idx >> a.tail) & 1).astype(bool))
    return [int(x) for x in idx[ok]]


def _shores_backtrack(D: PlaneDigraph) -> list[int]:
    # arcs are checked as soon as both ends have been decided
    last = [[] for _ in range(D.n)]
    for a in D.arcs:
        last[max(a.tail, a.head)].append((a.tail, a.head))
    full = (1 << D.n) - 1
    out = []

    def go(k: int, mask: int) -> None:
        if k == D.n:
            if mask and mask != full:
                out.append(mask)
            return
        for take in (0, 1):
            m = mask | (take << k)
            if all(not (m >> h & 1) or m >> t & 1 for t, h in last[k]):
                go(k + 1, m)

    go(0, 0)
    return sorted(out)


def dicut_of(D: PlaneDigraph, shore: int) -> Dicut:
    out = [a for a in D.arcs if shore >> a.tail & 1 and not shore >> a.head & 1]
    return Dicut(shore, tuple(a.id for a in out), sum(a.w for a in out))


def enumerate_dicuts(D: PlaneDigraph, limit: int = DICUT_LIMIT, method: str = "auto"
                     ) -> list[Dicut]:
    """Every dicut, ordered by shore mask.

    ``method`` is "numpy" (all 2^n masks at once), "backtrack" (grow
    predecessor-closed sets vertex by vertex) or "auto".
    """
    if D.n > limit:
        raise TooLarge(f"{D.n} vertices exceeds the dicut enumeration limit {limit}")
    if method == "auto":
        method = "numpy" if D.n <= NUMPY_LIMIT else "backtrack"
    shores = _shores_numpy(D) if method == "numpy" else _shores_backtrack(D)
    return [dicut_of(D, s) for s in shores]


def shore_key(D: PlaneDigraph, shore: int) -> tuple[int, ...]:
    return tuple(elements(shore))


def min_weight_dicut(D: PlaneDigraph, limit: int = DICUT_LIMIT,
                     dicuts: Optional[Sequence[Dicut]] = None) -> Optional[tuple[int, Dicut]]:
    """Lightest dicut, ties broken by the lexicographically smallest shore; None if acyclic-free."""
    cuts = enumerate_dicuts(D, limit) if dicuts is None else dicuts
    if not cuts:
        return None
    best = min(cuts, key=lambda c: (c.weight, shore_key(D, c.shore)))
    return best.weight, best


def weight1_connected(D: PlaneDigraph) -> bool:
    w1 = [D.arc(e) for e in D.weight1]
    if not w1:
        return True
    comp = _components(D.n, ((a.tail, a.head) for a in w1))
    return len({comp[a.tail] for a in w1}) == 1


def proper_violation(D: PlaneDigraph, limit: int = DICUT_LIMIT,
                     dicuts: Optional[Sequence[Dicut]] = None) -> Optional[tuple[str, Optional[Dicut]]]:
    """("dicut", lightest dicut) if some dicut weighs under 2, ("weight1", None) if disconnected."""
    best = min_weight_dicut(D, limit, dicuts)
    if best is not None and best[0] < 2:
        return "dicut", best[1]
    if not weight1_connected(D):
        return "weight1", None
    return None


def is_proper(D: PlaneDigraph, limit: int = DICUT_LIMIT) -> bool:
    return proper_violation(D, limit) is None


# ---------------------------------------------------------------- surgery


class Surgery:
    """Mutable copy of a plane digraph for embedding-preserving edits.

    Vertices keep their original indices until :meth:`freeze`, which drops
    deleted vertices, renumbers the rest in order and reports where every
    original vertex went.
    """

    def __init__(self, D: PlaneDigraph):
        self.n0 = D.n
        self.arcs = {a.id: [a.tail, a.head, a.w] for a in D.arcs}
        self.rot = {v: list(D.rotation[v]) for v in range(D.n)}
        self.names = {v: D.label(v) for v in range(D.n)}
        self.rep: list[Optional[int]] = list(range(D.n))
        self.fresh = D.next_id()
        self.named = D.names is not None

    def find(self, v: int) -> Optional[int]:
        while v is not None and self.rep[v] != v:
            v = self.rep[v]
        return v

    def drop_arc(self, e: int) -> None:
        t, h, _ = self.arcs.pop(e)
        for x in {t, h}:
            self.rot[x] = [a for a in self.rot[x] if a != e]

    def contract_arc(self, e: int) -> int:
        """Merge the head of ``e`` into its tail; parallel arcs that become loops vanish."""
        a, b, _ = self.arcs[e]
        ra, rb = self.rot[a], self.rot[b]
        i, j = ra.index(e), rb.index(e)
        merged = ra[i + 1:] + ra[:i] + rb[j + 1:] + rb[:j]
        del self.arcs[e]
        del self.rot[b]
        for x in set(rb):
            if x == e:
                continue
            rec = self.arcs[x]
            if rec[0] == b:
                rec[0] = a
            if rec[1] == b:
                rec[1] = a
        loops = {x for x in merged if self.arcs[x][0] == self.arcs[x][1]}
        for x in loops:
            del self.arcs[x]
        self.rot[a] = [x for x in merged if x not in loops]
        self.rep[b] = a
        self.names[a] = self.names[a] + "+" + self.names.pop(b)
        return a

    def contract_set(self, vertices: Iterable[int]) -> int:
        """Contract a weakly connected vertex set (current indices) to one vertex."""
        S = set(vertices)
        while len(S) > 1:
            inner = sorted(e for e, (t, h, _) in self.arcs.items() if t in S and h in S)
            if not inner:
                raise InternalInvariantBreach("contracted set is not connected")
            e = inner[0]
            gone = self.arcs[e][1]
            self.contract_arc(e)
            S.discard(gone)
        return next(iter(S))

    def delete_vertex(self, v: int) -> None:
        for e in list(self.rot[v]):
            if e in self.arcs:
                self.drop_arc(e)
        del self.rot[v]
        self.rep[v] = None
        self.names.pop(v)

    def add_arc(self, tail: int, head: int, w: int = 0) -> int:
        e = self.fresh
        self.fresh += 1
        self.arcs[e] = [tail, head, w]
        return e

    def freeze(self) -> tuple[PlaneDigraph, tuple[Optional[int], ...]]:
        alive = sorted(self.rot)
        new = {v: i for i, v in enumerate(alive)}
        arcs = tuple(ArcRecord(e, new[t], new[h], w) for e, (t, h, w) in sorted(self.arcs.items()))
        rotation = tuple(tuple(self.rot[v]) for v in alive)
        names = tuple(self.names[v] for v in alive) if self.named else None
        D = PlaneDigraph(len(alive), arcs, rotation, names)
        vmap = []
        for v in range(self.n0):
            r = self.find(v)
            vmap.append(None if r is None else new[r])
        return D, tuple(vmap)


def contract(D: PlaneDigraph, groups: Sequence[Iterable[int]]
             ) -> tuple[PlaneDigraph, tuple[Optional[int], ...]]:
    """Contract each weakly connected group of vertices to a single vertex."""
    s = Surgery(D)
    for g in groups:
        s.contract_set(s.find(v) for v in g)
    return s.freeze()


def delete_vertex(D: PlaneDigraph, v: int) -> tuple[PlaneDigraph, tuple[Optional[int], ...]]:
    s = Surgery(D)
    s.delete_vertex(v)
    return s.freeze()


# ---------------------------------------------------------------- generator


def _rotation_from_coords(n: int, edges: Sequence[tuple[int, int]],
                          xy: Sequence[tuple[float, float]]) -> list[list[int]]:
    rot = [[] for _ in range(n)]
    for i, (u, v) in enumerate(edges):
        rot[u].append(i)
        rot[v].append(i)
    out = []
    for v in range(n):
        def angle(i, v=v):
            u, w = edges[i]
            o = w if u == v else u
            return math.atan2(xy[o][1] - xy[v][1], xy[o][0] - xy[v][0])
        # clockwise means decreasing angle
        out.append(sorted(rot[v], key=lambda i: -angle(i)))
    return out


def _template(kind: str, rng, nmax: int, max_arcs: int):
    if kind == "grid":
        shapes = [(r, c) for r in range(2, 5) for c in range(2, 6) if r * c <= nmax]
        r, c = rng.choice(shapes)
        xy = [(j, i) for i in range(r) for j in range(c)]
        edges = []
        for i in range(r):
            for j in range(c):
                v = i * c + j
                if j + 1 < c:
                    edges.append((v, v + 1))
                if i + 1 < r:
                    edges.append((v, v + c))
        cells = [(i, j) for i in range(r - 1) for j in range(c - 1)]
        rng.shuffle(cells)
        for i, j in cells[:rng.randint(0, len(cells))]:
            if len(edges) >= max_arcs:
                break
            v = i * c + j
            edges.append((v, v + c + 1) if rng.random() < 0.5 else (v + 1, v + c))
        return r * c, edges, xy
    if kind == "wheel":
        k = rng.randint(3, max(3, min(nmax - 1, max_arcs // 2)))
        xy = [(0.0, 0.0)] + [(math.cos(2 * math.pi * i / k), math.sin(2 * math.pi * i / k))
                             for i in range(k)]
        edges = [(0, i + 1) for i in range(k)] + [(i + 1, (i + 1) % k + 1) for i in range(k)]
        return k + 1, edges, xy
    if kind == "fan":
        k = rng.randint(3, max(3, min(nmax - 1, (max_arcs + 1) // 2)))
        xy = [(i, 0.0) for i in range(k)] + [((k - 1) / 2, 1.0)]
        edges = [(i, i + 1) for i in range(k - 1)] + [(k, i) for i in range(k)]
        return k + 1, edges, xy
    raise MalformedInput(f"unknown template {kind}")


def digon() -> PlaneDigraph:
    """Two vertices joined by two parallel weight-1 arcs."""
    return PlaneDigraph(2, (ArcRecord(0, 0, 1, 1), ArcRecord(1, 0, 1, 1)), ((0, 1), (1, 0)))


def generate_plane_instance(cfg) -> PlaneDigraph:
    """Random proper plane digraph from a template.

    A template drawing (grid with some diagonals, wheel or fan) is oriented
    along a random vertex order, so it is acyclic unless ``cyclic`` asks for
    a few reversed arcs. Weights start at 1; ``weight0`` vertices lose all
    their weight and a ``zero`` fraction of the other arcs is zeroed. Drafts
    that are not proper are thrown away.

    Weight-0 vertices are picked among the highest degrees unless ``hubs`` is
    false. Knobs in ``cfg.extra``: template, weight0, hubs, zero, cyclic, max_arcs.
    """
    rng = cfg.rng("plane")
    nmax = max(2, cfg.n)
    max_arcs = cfg.extra.get("max_arcs", 26)
    if cfg.extra.get("template") == "digon" or nmax < 4:
        return digon()
    for _ in range(cfg.attempts):
        kind = cfg.extra.get("template") or rng.choice(["grid", "grid", "wheel", "fan"])
        n, edges, xy = _template(kind, rng, nmax, max_arcs)
        if len(edges) > max_arcs or n > nmax:
            continue
        rank = list(range(n))
        rng.shuffle(rank)
        oriented = [(u, v) if rank[u] < rank[v] else (v, u) for u, v in edges]
        if cfg.extra.get("cyclic"):
            oriented = [(v, u) if rng.random() < 0.25 else (u, v) for u, v in oriented]
        w = [1] * len(edges)
        k0 = cfg.extra.get("weight0", rng.choice([0, 1, 1, 2]))
        deg = [sum(v in e for e in edges) for v in range(n)]
        pool = sorted(range(n), key=lambda v: (-deg[v], rng.random()))
        if not cfg.extra.get("hubs", True):
            rng.shuffle(pool)
        for v in pool[:min(k0, n)]:
            for i, (a, b) in enumerate(edges):
                if v in (a, b):
                    w[i] = 0
        zero = cfg.extra.get("zero", 0.15)
        for i in range(len(w)):
            if w[i] and rng.random() < zero:
                w[i] = 0
        rot = _rotation_from_coords(n, edges, xy)
        D = PlaneDigraph(n, tuple(ArcRecord(i, t, h, w[i]) for i, (t, h) in enumerate(oriented)),
                         tuple(tuple(r) for r in rot))
        if is_proper(D):
            return D
    raise GenerationFailed("no proper draft within the attempt budget")


def to_dot(D: PlaneDigraph, pair=None) -> str:
    """Graphviz text. Weight-0 arcs are dashed; arcs of a dijoin pair are coloured."""
    colour = {}
    if pair is not None:
        colour.update({e: "red" for e in pair.J1})
        colour.update({e: "blue" for e in pair.J2})
    lines = ["digraph D {"]
    for v in range(D.n):
        lines.append(f'  {v} [label="{D.label(v)}"];')
    for a in D.arcs:
        attrs = [f'label="{a.id}"']
        if a.w == 0:
            attrs.append("style=dashed")
        if a.id in colour:
            attrs.append(f"color={colour[a.id]}")
        lines.append(f"  {a.tail} -> {a.head} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
