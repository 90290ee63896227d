"""Covering a crossing family of circular intervals with non-crossing arcs.

Vertices sit on a circle in index order and carry signs. Every member must
receive an arc from a negative vertex outside it to a positive vertex inside
it, and no two chosen chords may cross. The solver shrinks the instance one
reduction at a time: each reduction fixes a few arcs, deletes a run of
vertices, and leaves a smaller valid instance behind.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .core import (NEG, POS, Arc, Family, GroundSet, Signing, covers, elements,
                   find_crossing_violation, mask_of, popcount)
from .errors import InternalInvariantBreach, InvalidInstance, MalformedInput, TooLarge


def debug_default() -> bool:
    return os.environ.get("COSIGN_KIT_DEBUG", "") not in ("", "0")


@dataclass(frozen=True)
class CircleInstance:
    """Signed vertices 0..n-1 around a circle and a family of intervals."""

    sigma: Signing
    family: Family

    def __post_init__(self):
        if len(self.sigma) != self.family.n:
            raise MalformedInput("signing length differs from ground size")
        if not self.sigma.is_complete():
            raise MalformedInput("circle instances need a complete signing")

    @classmethod
    def build(cls, signs: str, sets: Iterable[Iterable[int]], names=None) -> "CircleInstance":
        sigma = Signing.parse(signs)
        return cls(sigma, Family.from_lists(len(sigma), sets, names))

    @property
    def n(self) -> int:
        return self.family.n


@dataclass(frozen=True)
class CircleViolation:
    prop: str  # P0 P1 P2 complementary P3 P4 AP1 AP2
    sets: tuple[int, ...]

    def describe(self, ground: GroundSet) -> str:
        return f"{self.prop}: " + ", ".join(ground.format(s) for s in self.sets)


class Ring:
    """Cyclic order of the alive vertices."""

    def __init__(self, alive: int):
        self.seq = elements(alive)
        self.alive = alive
        self.pos = {v: i for i, v in enumerate(self.seq)}

    def __len__(self):
        return len(self.seq)

    def step(self, v: int, d: int) -> int:
        return self.seq[(self.pos[v] + d) % len(self.seq)]

    def runs(self, mask: int) -> list[list[int]]:
        """Maximal cyclic runs of ``mask`` members."""
        seq = self.seq
        k = len(seq)
        inside = [bool(mask >> v & 1) for v in seq]
        if all(inside):
            return [list(seq)]
        starts = [i for i in range(k) if inside[i] and not inside[i - 1]]
        out = []
        for s in starts:
            run = []
            i = s
            while inside[i % k]:
                run.append(seq[i % k])
                i += 1
            out.append(run)
        return out

    def is_interval(self, mask: int) -> bool:
        return len(self.runs(mask)) == 1

    def ends(self, mask: int) -> tuple[int, int]:
        """First and last vertex of an interval, walking in index order."""
        run = self.runs(mask)[0]
        return run[0], run[-1]

    def walk(self, v: int, d: int, keep) -> list[int]:
        """Vertices from ``v`` in direction ``d`` while ``keep`` holds (at most one lap)."""
        out = []
        for _ in range(len(self.seq)):
            if not keep(v):
                break
            out.append(v)
            v = self.step(v, d)
        return out


def _sign_changes(seq: Sequence[int], sigma: Signing) -> int:
    return sum(1 for a, b in zip(seq, seq[1:]) if sigma[a] != sigma[b])


@dataclass(frozen=True)
class BlockView:
    one_block: bool
    two_block: bool
    co_two_block: bool


def block_view(U: int, ring: Ring, sigma: Signing) -> BlockView:
    inside = ring.runs(U)[0]
    outside = ring.runs(ring.alive & ~U)[0]
    c_in = _sign_changes(inside, sigma)
    c_out = _sign_changes(outside, sigma)
    return BlockView(c_in == 0, c_in == 1, c_out == 1)


def sign_block(v: int, ring: Ring, sigma: Signing) -> list[int]:
    s = sigma[v]
    same = lambda x: sigma[x] == s  # noqa: E731
    back = ring.walk(v, -1, same)
    if len(back) == len(ring):
        return list(ring.seq)
    fwd = ring.walk(v, 1, same)
    return list(reversed(back[1:])) + fwd


# ---------------------------------------------------------------- validation


def _validate(sets: Sequence[int], alive: int, sigma: Signing) -> Optional[CircleViolation]:
    ring = Ring(alive)
    pos = sigma.pos & alive
    neg = sigma.neg & alive
    for s in sets:
        if not ring.is_interval(s):
            return CircleViolation("P0", (s,))
    fam = Family(GroundSet(sigma.__len__(), active=alive), tuple(sets))
    bad = find_crossing_violation(fam)
    if bad is not None:
        return CircleViolation("P1", (sets[bad[0]], sets[bad[1]]))
    for s in sets:
        if not (s & pos) or not (alive & ~s & neg):
            return CircleViolation("P2", (s,))
    lookup = set(sets)
    for s in sets:
        if alive & ~s in lookup:
            return CircleViolation("complementary", (s, alive & ~s))
    for a, b in combinations(sets, 2):
        if not (a & b) and not (alive & ~(a | b) & neg):
            return CircleViolation("P3", (a, b))
    for a, b in combinations(sets, 2):
        if (a | b) == alive and not (a & b & pos):
            return CircleViolation("P4", (a, b))
    return None


def validate_instance(inst: CircleInstance) -> Optional[CircleViolation]:
    """None when the instance is valid, else the first failed property with its witness.

    Properties are checked in the order P0, P1, P2, complementary pair, P3, P4.
    """
    return _validate(inst.family.sets, inst.family.full, inst.sigma)


def _ap_violation(sets: Sequence[int], alive: int, sigma: Signing, which: int
                  ) -> Optional[CircleViolation]:
    """AP1 (which=POS) or AP2 (which=NEG): an end vertex of that sign has a same-sign out-neighbour."""
    ring = Ring(alive)
    for s in sets:
        first, last = ring.ends(s)
        for v, d in ((first, -1), (last, 1)):
            if sigma[v] == which and sigma[ring.step(v, d)] != which:
                return CircleViolation("AP1" if which == POS else "AP2", (s,))
    return None


# ---------------------------------------------------------------- arcs


def _chord_cross(a: Arc, b: Arc) -> bool:
    x1, y1 = sorted(a)
    x2, y2 = sorted(b)
    if len({x1, y1, x2, y2}) < 4:
        return False
    return (x1 < x2 < y1) != (x1 < y2 < y1)


def is_outer_planar(arcs: Sequence[Arc], n: Optional[int] = None
                    ) -> tuple[bool, Optional[tuple[Arc, Arc]]]:
    arcs = [Arc(*a) for a in arcs]
    if n is not None and any(not (0 <= v < n) for a in arcs for v in a):
        raise MalformedInput("arc endpoint out of range")
    for a, b in combinations(arcs, 2):
        if _chord_cross(a, b):
            return False, (a, b)
    return True, None


def uncovered(F: Family, arcs: Sequence[Arc]) -> list[int]:
    return [s for s in F.sets if not any(covers(a, s) for a in arcs)]


def check_solution(inst: CircleInstance, arcs: Sequence[Arc]) -> Optional[str]:
    """None if ``arcs`` is a solution, else a short reason."""
    for a in arcs:
        if not (0 <= a.tail < inst.n and 0 <= a.head < inst.n):
            return f"arc {tuple(a)} out of range"
        if inst.sigma[a.tail] != NEG or inst.sigma[a.head] != POS:
            return f"arc {tuple(a)} does not run from a negative to a positive vertex"
    ok, pair = is_outer_planar(arcs)
    if not ok:
        return f"arcs {tuple(pair[0])} and {tuple(pair[1])} cross"
    left = uncovered(inst.family, arcs)
    if left:
        return "uncovered set " + inst.family.ground.format(left[0])
    return None


# ---------------------------------------------------------------- solver state


@dataclass(frozen=True)
class DangerousWitness:
    vertex: int
    kind: str  # "set" or "pair"
    payload: tuple[int, ...]


@dataclass(frozen=True)
class StepRecord:
    step: str
    arcs: tuple[Arc, ...]
    deleted: tuple[int, ...]
    covered: tuple[int, ...]
    note: str = ""


@dataclass
class SolveTrace:
    records: list[StepRecord] = field(default_factory=list)
    arcs: tuple[Arc, ...] = ()
    ops: int = 0


@dataclass
class CircleState:
    sigma: Signing
    alive: int
    sets: list[int]
    arcs: list[Arc] = field(default_factory=list)
    trace: SolveTrace = field(default_factory=SolveTrace)
    debug: bool = False

    @classmethod
    def start(cls, inst: CircleInstance, debug: bool = False) -> "CircleState":
        return cls(inst.sigma, inst.family.full, list(inst.family.sets), debug=debug)

    def copy(self) -> "CircleState":
        t = SolveTrace(list(self.trace.records), self.trace.arcs, self.trace.ops)
        return CircleState(self.sigma, self.alive, list(self.sets), list(self.arcs), t, self.debug)

    @property
    def ring(self) -> Ring:
        return Ring(self.alive)

    @property
    def pos(self) -> int:
        return self.sigma.pos & self.alive

    @property
    def neg(self) -> int:
        return self.sigma.neg & self.alive

    def tick(self, k: int = 1) -> None:
        self.trace.ops += k

    def family(self) -> Family:
        return Family(GroundSet(len(self.sigma), active=self.alive), tuple(self.sets))

    def apply(self, step: str, arcs: Sequence[Arc], delete: Iterable[int], note: str = "") -> None:
        arcs = [Arc(*a) for a in arcs]
        fresh = [a for a in arcs if a not in self.arcs]
        for a in arcs:
            if self.sigma[a.tail] != NEG or self.sigma[a.head] != POS:
                raise InternalInvariantBreach(f"{step}: arc {a} is not negative to positive")
            if not (self.alive >> a.tail & 1 and self.alive >> a.head & 1):
                raise InternalInvariantBreach(f"{step}: arc {a} touches a deleted vertex")
        for a in fresh:
            for b in self.arcs:
                if _chord_cross(a, b):
                    raise InternalInvariantBreach(f"{step}: arc {a} crosses earlier arc {b}")
        delete = list(delete)
        dmask = mask_of(delete)
        if dmask & ~self.alive:
            raise InternalInvariantBreach(f"{step}: deleting a vertex twice")
        if self.debug and delete and len(self.ring.runs(dmask)) != 1:
            raise InternalInvariantBreach(f"{step}: deleted vertices are not consecutive")
        self.tick(len(self.sets) * max(1, len(arcs)))
        covered = [s for s in self.sets if any(covers(a, s) for a in arcs)]
        keep = [s for s in self.sets if s not in covered]
        self.alive &= ~dmask
        if self.alive == 0:
            raise InternalInvariantBreach(f"{step}: every vertex deleted")
        out, seen = [], set()
        for s in keep:
            t = s & self.alive
            if t and t not in seen:
                if t == self.alive:
                    raise InternalInvariantBreach(f"{step}: a set became the whole circle")
                seen.add(t)
                out.append(t)
        self.sets = out
        self.arcs.extend(fresh)
        self.trace.records.append(StepRecord(step, tuple(arcs), tuple(delete), tuple(covered), note))
        if self.debug:
            bad = _validate(self.sets, self.alive, self.sigma)
            if bad is None:
                bad = _ap_violation(self.sets, self.alive, self.sigma, POS)
            if bad is not None:
                raise InternalInvariantBreach(f"after {step}: {bad.prop} fails")


# ---------------------------------------------------------------- dangerous vertices


def find_dangerous(v: int, state: CircleState) -> list[DangerousWitness]:
    alive, pos, neg = state.alive, state.pos, state.neg
    bit = 1 << v
    out = []
    sets = state.sets
    state.tick(len(sets) + len(sets) ** 2)
    if pos & bit:
        for s in sets:
            if s & pos == bit:
                out.append(DangerousWitness(v, "set", (s,)))
        for a, b in combinations(sets, 2):
            if (a | b) == alive and a & b & pos == bit:
                out.append(DangerousWitness(v, "pair", (a, b)))
    elif neg & bit:
        for s in sets:
            if alive & ~s & neg == bit:
                out.append(DangerousWitness(v, "set", (s,)))
        for a, b in combinations(sets, 2):
            if not (a & b) and alive & ~(a | b) & neg == bit:
                out.append(DangerousWitness(v, "pair", (a, b)))
    return out


def is_removable(v: int, state: CircleState) -> bool:
    return not find_dangerous(v, state)


# ---------------------------------------------------------------- steps


def step1_adjacent(state: CircleState) -> CircleState:
    state = state.copy()
    ring = state.ring
    arcs = []
    for v in ring.seq:
        w = ring.step(v, 1)
        if w == v or state.sigma[v] == state.sigma[w]:
            continue
        arc = Arc(v, w) if state.sigma[v] == NEG else Arc(w, v)
        if arc not in arcs:
            arcs.append(arc)
    state.apply("1", arcs, ())
    return state


def _minus_end_candidate(state: CircleState):
    ring = state.ring
    sigma = state.sigma
    for s in state.sets:
        state.tick()
        first, last = ring.ends(s)
        for m, d in ((first, -1), (last, 1)):
            if sigma[m] == NEG and sigma[ring.step(m, d)] == POS:
                return s, m, d
    return None


def step2_minus_end(state: CircleState) -> Optional[CircleState]:
    found = _minus_end_candidate(state)
    if found is None:
        return None
    w_star, m, d = found
    state = state.copy()
    ring = state.ring
    sigma = state.sigma
    p1 = ring.step(m, d)
    if not block_view(w_star, ring, sigma).co_two_block:
        ps = ring.walk(p1, d, lambda x: sigma[x] == POS)
        m_next = ring.step(ps[-1], d)
        arcs = [Arc(m, p) for p in ps] + [Arc(m_next, ps[-1])]
        # the normalised choice used in the correctness argument; arcs do not depend on it
        ends_here = [s for s in state.sets if not s >> p1 & 1 and s >> m & 1
                     and (ring.ends(s)[1] if d == 1 else ring.ends(s)[0]) == m]
        smallest = min(ends_here, key=popcount)
        state.apply("2a", arcs, ps, note=f"W*={elements(w_star)} smallest={elements(smallest)}")
    else:
        ms = ring.walk(m, -d, lambda x: sigma[x] == NEG)
        p_next = ring.step(ms[-1], -d)
        arcs = [Arc(x, p1) for x in ms] + [Arc(ms[-1], p_next)]
        state.apply("2b", arcs, ms, note=f"W*={elements(w_star)}")
    return state


def _pattern(state: CircleState, want: tuple[int, int, int, int]):
    ring = state.ring
    if len(ring) < 4:
        return None
    sigma = state.sigma
    seq = ring.seq
    k = len(seq)
    for i in range(k):
        state.tick()
        quad = [seq[(i + t) % k] for t in range(4)]
        if tuple(sigma[v] for v in quad) == want:
            return quad
    return None


def step3_mmpp(state: CircleState, co_rule: str = "max") -> Optional[CircleState]:
    """The -,-,+,+ reduction.

    ``co_rule`` picks the extremal pair in the co-2-block case. "max" is the
    mirror image of the 2-block case under complementation; "min" is kept
    only to reproduce the instance on which that choice breaks P4.
    """
    quad = _pattern(state, (NEG, NEG, POS, POS))
    if quad is None:
        return None
    m2, m1, p1, p2 = quad
    state = state.copy()
    ring = state.ring
    sigma = state.sigma
    alive, pos, neg = state.alive, state.pos, state.neg
    if is_removable(m1, state):
        state.apply("3a", [Arc(m2, p1)], [m1], note="removed negative")
        return state
    if is_removable(p1, state):
        state.apply("3a", [Arc(m1, p2)], [p1], note="removed positive")
        return state
    pair = (1 << m1) | (1 << p1)
    sets = state.sets
    state.tick(len(sets) ** 2 * max(1, len(ring)))
    if pair in sets:
        ps = ring.walk(p1, 1, lambda x: sigma[x] == POS)
        best = None
        for a, b in combinations(sets, 2):
            if a & b or alive & ~(a | b) & neg != 1 << m1:
                continue
            outs = [x for x in (a, b) if not x >> m2 & 1]
            if len(outs) != 1:
                raise InternalInvariantBreach("3b: expected exactly one set without m2")
            w = outs[0]
            f = next((i for i in range(1, len(ps)) if w >> ps[i] & 1 and not w >> ps[i - 1] & 1),
                     None)
            if f is None:
                raise InternalInvariantBreach("3b: no entry point into the positive block")
            if best is None or f > best:
                best = f
        if best is None:
            raise InternalInvariantBreach("3b: no disjoint pair pins the negative vertex")
        j = best + 1  # 1-based position in the positive block
        arcs = [Arc(m2, ps[k]) for k in range(j)] + [Arc(m1, p1)]
        state.apply("3b", arcs, [m1] + ps[:j - 1], note=f"j={j}")
        return state
    if alive & ~pair in sets:
        ms = ring.walk(m1, -1, lambda x: sigma[x] == NEG)
        best = None
        for a, b in combinations(sets, 2):
            if (a | b) != alive or a & b & pos != 1 << p1:
                continue
            ins = [x for x in (a, b) if x >> p2 & 1]
            if len(ins) != 1:
                raise InternalInvariantBreach("3c: expected exactly one set with p2")
            w = ins[0]
            f = next((i for i in range(1, len(ms)) if w >> ms[i - 1] & 1 and not w >> ms[i] & 1),
                     None)
            if f is None:
                raise InternalInvariantBreach("3c: no exit point from the negative block")
            if best is None or (f > best if co_rule == "max" else f < best):
                best = f
        if best is None:
            raise InternalInvariantBreach("3c: no covering pair pins the positive vertex")
        j = best + 1
        arcs = [Arc(ms[k], p2) for k in range(j)] + [Arc(m1, p1)]
        state.apply("3c", arcs, ms[:j - 1][::-1] + [p1], note=f"j={j}")
        return state
    raise InternalInvariantBreach("3: neither vertex removable and no two-element blocker")


def step4_mmpm(state: CircleState) -> Optional[CircleState]:
    quad = _pattern(state, (NEG, NEG, POS, NEG))
    if quad is None:
        return None
    m2, m1, p, _ = quad
    state = state.copy()
    if state.debug and not is_removable(m1, state):
        raise InternalInvariantBreach("4: negative vertex is not removable")
    state.apply("4", [Arc(m2, p)], [m1])
    return state


def step5_ppmp(state: CircleState) -> Optional[CircleState]:
    quad = _pattern(state, (POS, POS, NEG, POS))
    if quad is None:
        return None
    p2, p1, m, _ = quad
    state = state.copy()
    if state.debug and not is_removable(p1, state):
        raise InternalInvariantBreach("5: positive vertex is not removable")
    state.apply("5", [Arc(m, p2)], [p1])
    return state


def op_bound(n: int, m: int) -> int:
    return 10 * (n + 1) ** 2 * (m + 1) ** 2


def solve_circle(inst: CircleInstance, debug: Optional[bool] = None,
                 assume_valid: bool = False, co_rule: str = "max"
                 ) -> tuple[list[Arc], SolveTrace]:
    """Outer-planar arcs covering every member, plus the reduction trace.

    ``assume_valid`` skips the up-front validation; the result is then only
    trustworthy if :func:`check_solution` accepts it.
    """
    if debug is None:
        debug = debug_default()
    if not assume_valid:
        bad = validate_instance(inst)
        if bad is not None:
            raise InvalidInstance(bad)
    if not inst.family.sets:
        return [], SolveTrace()
    state = step1_adjacent(CircleState.start(inst, debug))
    while state.sets:
        nxt = step2_minus_end(state)
        if nxt is None:
            if debug:
                ap2 = _ap_violation(state.sets, state.alive, state.sigma, NEG)
                if ap2 is not None:
                    raise InternalInvariantBreach("AP2 fails with no minus-end step available")
            nxt = step3_mmpp(state, co_rule) or step4_mmpm(state) or step5_ppmp(state)
        if nxt is None:
            raise InternalInvariantBreach("no reduction applies but sets remain")
        state = nxt
    arcs = list(state.arcs)
    state.trace.arcs = tuple(arcs)
    if debug:
        reason = check_solution(inst, arcs)
        if reason is not None:
            raise InternalInvariantBreach(f"solver output rejected: {reason}")
    return arcs, state.trace


# ---------------------------------------------------------------- dual and brute force


def dual_instance(inst: CircleInstance) -> CircleInstance:
    F = inst.family
    return CircleInstance(inst.sigma.flipped(), F.with_sets(F.full & ~s for s in F.sets))


def reverse_arcs(arcs: Iterable[Arc]) -> list[Arc]:
    return [Arc(a.head, a.tail) for a in arcs]


def brute_force_circle(inst: CircleInstance, max_n: int = 10, max_candidates: int = 24
                       ) -> Optional[list[Arc]]:
    """Exhaustive search for a covering non-crossing arc set; None certifies infeasibility."""
    negs = elements(inst.sigma.neg & inst.family.full)
    poss = elements(inst.sigma.pos & inst.family.full)
    if inst.n > max_n or len(negs) * len(poss) > max_candidates:
        raise TooLarge("instance too large for exhaustive circle search")
    cand = [Arc(m, p) for m in negs for p in poss]
    sets = list(inst.family.sets)

    def search(chosen: list[Arc], todo: list[int]) -> Optional[list[Arc]]:
        if not todo:
            return list(chosen)
        target = todo[0]
        for a in cand:
            if covers(a, target) and not any(_chord_cross(a, b) for b in chosen):
                chosen.append(a)
                got = search(chosen, [s for s in todo[1:] if not covers(a, s)])
                if got is not None:
                    return got
                chosen.pop()
        return None

    return search([], sets)
