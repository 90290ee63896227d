"""Forcing algorithms for cosignings and intersection/union-closed cosignings.

Both algorithms sign elements one at a time. An unsigned element is forced
positive when some region that must hold a positive has every other element
negative, and forced negative in the mirrored situation. When nothing is
forced the lowest unsigned element is signed positive.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import (NEG, POS, Family, Signing, elements, find_crossing_violation,
                   lowest, popcount)
from .errors import ConditionViolationError, Conflict, NotCrossing, TooLarge

BRUTE_FORCE_LIMIT = 20


@dataclass(frozen=True)
class ForcingWitness:
    element: int
    sign: int
    witness_sets: tuple[int, ...]
    trivial: bool


@dataclass(frozen=True)
class ConditionViolation:
    kind: str  # missing_u | missing_v | cc_missing_u | cc_missing_v
    sets: tuple[int, ...]


@dataclass
class RunStats:
    iterations: int = 0
    set_scans: int = 0
    pair_scans: int = 0
    forced_count: int = 0
    free_count: int = 0
    # cc only: hits of the four conflict-case shapes, see _record_cases
    case_hits: Counter = field(default_factory=Counter)


CASE_NAMES = {
    ("proper", "meet"): 1,
    ("proper", "disjoint"): 2,
    ("covering", "meet"): 3,
    ("covering", "disjoint"): 4,
}


def _require_crossing(F: Family) -> None:
    bad = find_crossing_violation(F)
    if bad is not None:
        raise NotCrossing(bad)


# ---------------------------------------------------------------- plain


def check_cosign_condition(F: Family) -> Optional[ConditionViolation]:
    _require_crossing(F)
    full = F.full
    for s in F.sets:
        if not any((full & ~(1 << u)) not in F for u in elements(s)):
            return ConditionViolation("missing_u", (s,))
        if not any((1 << v) not in F for v in elements(full & ~s)):
            return ConditionViolation("missing_v", (s,))
    return None


def _pick(found: list[ForcingWitness]) -> Optional[ForcingWitness]:
    signs: dict[int, int] = {}
    for w in found:
        prev = signs.setdefault(w.element, w.sign)
        if prev != w.sign:
            raise Conflict(w.element)
    return found[0] if found else None


def find_forced(F: Family, sigma: Signing, stats: Optional[RunStats] = None
                ) -> Optional[ForcingWitness]:
    """First forcing in family order; raises Conflict if the scan forces an element both ways."""
    full = F.full
    pos, neg, free = sigma.pos, sigma.neg, sigma.unsigned_mask
    found = []
    for s in F.sets:
        if stats is not None:
            stats.set_scans += 1
        rest = s & ~neg
        if rest & free and popcount(rest) == 1:
            found.append(ForcingWitness(lowest(rest), POS, (s,), popcount(s) == 1))
        out = full & ~s & ~pos
        if out & free and popcount(out) == 1:
            found.append(ForcingWitness(lowest(out), NEG, (s,), popcount(full & ~s) == 1))
    return _pick(found)


def _run(F: Family, trivial: list[tuple[int, int]], step, stats: RunStats) -> Signing:
    n = F.n
    signs = [0] * n
    for v, sgn in trivial:
        if signs[v] == -sgn:
            raise Conflict(v)
        if signs[v] == 0:
            signs[v] = sgn
            stats.iterations += 1
            stats.forced_count += 1
    # elements outside the active ground never occur in any set
    todo = F.full
    while any(signs[i] == 0 for i in elements(todo)):
        w = step(Signing(signs), stats)
        if w is not None:
            signs[w.element] = w.sign
            stats.forced_count += 1
        else:
            first = next(i for i in elements(todo) if signs[i] == 0)
            signs[first] = POS
            stats.free_count += 1
        stats.iterations += 1
    for i in range(n):
        if signs[i] == 0:
            signs[i] = POS
    return Signing(signs)


def cosign(F: Family) -> tuple[Signing, RunStats]:
    bad = check_cosign_condition(F)
    if bad is not None:
        raise ConditionViolationError(bad)
    stats = RunStats()
    full = F.full
    trivial = []
    for s in F.sets:
        stats.set_scans += 1
        if popcount(s) == 1:
            trivial.append((lowest(s), POS))
        if popcount(full & ~s) == 1:
            trivial.append((lowest(full & ~s), NEG))
    return _run(F, trivial, lambda sg, st: find_forced(F, sg, st), stats), stats


# ---------------------------------------------------------------- cc


def _pairs(m: int):
    for i in range(m):
        for j in range(i, m):
            yield i, j


def check_cc_condition(F: Family) -> Optional[ConditionViolation]:
    _require_crossing(F)
    full = F.full
    sets = F.sets
    bad_u = 0  # u with V - {u} a pairwise union
    bad_v = 0  # v with {v} a pairwise intersection
    for i, j in _pairs(len(sets)):
        a, b = sets[i], sets[j]
        c = full & ~(a | b)
        if popcount(c) == 1:
            bad_u |= c
        if popcount(a & b) == 1:
            bad_v |= a & b
    for i, j in _pairs(len(sets)):
        a, b = sets[i], sets[j]
        if a & b and not (a & b & ~bad_u):
            return ConditionViolation("cc_missing_u", (a, b))
        out = full & ~(a | b)
        if out and not (out & ~bad_v):
            return ConditionViolation("cc_missing_v", (a, b))
    return None


def cc_find_forced(F: Family, sigma: Signing, stats: Optional[RunStats] = None
                   ) -> Optional[ForcingWitness]:
    """Pair-scan analogue of :func:`find_forced` over pairs i <= j, diagonal first."""
    full = F.full
    pos, neg, free = sigma.pos, sigma.neg, sigma.unsigned_mask
    sets = F.sets
    found = []
    for i, j in _pairs(len(sets)):
        if stats is not None:
            stats.pair_scans += 1 if i == j else 2
        a, b = sets[i], sets[j]
        meet, join = a & b, a | b
        rest = meet & ~neg
        if meet and rest & free and popcount(rest) == 1:
            found.append(ForcingWitness(lowest(rest), POS, (a, b), popcount(meet) == 1))
        out = full & ~join
        rest = out & ~pos
        if out and rest & free and popcount(rest) == 1:
            found.append(ForcingWitness(lowest(rest), NEG, (a, b), popcount(out) == 1))
    w = _pick(found)
    if w is not None and stats is not None:
        _record_cases(F, w, stats)
    return w


def _record_cases(F: Family, w: ForcingWitness, stats: RunStats) -> None:
    """Count the conflict shapes the forced element would take part in.

    A conflict at v needs a positive witness pair (X1, X2) and a negative one
    (Y1, Y2). The proof splits on whether X1 | X2 is the whole ground set and
    whether Y1 & Y2 is empty. Here the applied witness fixes one side and every
    opposite-type pair around v supplies the other.
    """
    full = F.full
    v = 1 << w.element
    a, b = w.witness_sets
    sets = F.sets
    if w.sign == POS:
        p = "proper" if (a | b) != full else "covering"
        qs = {"meet" if x & y else "disjoint"
              for i, j in _pairs(len(sets)) for x, y in [(sets[i], sets[j])]
              if not (x | y) & v}
        pairs = [(p, q) for q in qs]
    else:
        q = "meet" if a & b else "disjoint"
        ps = {"proper" if (x | y) != full else "covering"
              for i, j in _pairs(len(sets)) for x, y in [(sets[i], sets[j])]
              if x & y & v}
        pairs = [(p, q) for p in ps]
    for key in pairs:
        stats.case_hits[CASE_NAMES[key]] += 1


def cc_cosign(F: Family) -> tuple[Signing, RunStats]:
    bad = check_cc_condition(F)
    if bad is not None:
        raise ConditionViolationError(bad)
    stats = RunStats()
    full = F.full
    sets = F.sets
    trivial = []
    for i, j in _pairs(len(sets)):
        stats.pair_scans += 1 if i == j else 2
        a, b = sets[i], sets[j]
        if popcount(a & b) == 1:
            trivial.append((lowest(a & b), POS))
        out = full & ~(a | b)
        if popcount(out) == 1:
            trivial.append((lowest(out), NEG))
    return _run(F, trivial, lambda sg, st: cc_find_forced(F, sg, st), stats), stats


def plain_scan_bound(m: int, n: int) -> int:
    return m * n * (n + 1) // 2


def cc_scan_bound(m: int, n: int) -> int:
    return 2 * (m * (m - 1) // 2) * n * (n + 1) // 2 + m * n * (n + 1) // 2


# ---------------------------------------------------------------- brute force


def _all_signings(F: Family, limit: int):
    """Element masks of the negatives for every signing, in lexicographic order.

    '+' sorts before '-', and the lowest active element is the most significant.
    """
    act = elements(F.full)
    k = len(act)
    if k > limit or (act and act[-1] >= 62):
        raise TooLarge(f"{k} elements exceeds brute-force limit {limit}")
    idx = np.arange(1 << k, dtype=np.int64)
    neg = np.zeros_like(idx)
    for pos_in_word, e in enumerate(act):
        neg |= ((idx >> (k - 1 - pos_in_word)) & 1) << e
    return neg


def _first_valid(F: Family, neg: np.ndarray, plus_regions, minus_regions) -> Optional[Signing]:
    full = F.full
    pos = full & ~neg
    ok = np.ones(neg.shape, dtype=bool)
    for r in plus_regions:
        ok &= (pos & r) != 0
    for r in minus_regions:
        ok &= (neg & r) != 0
    hits = np.flatnonzero(ok)
    if hits.size == 0:
        return None
    nm = int(neg[hits[0]])
    return Signing.from_masks(F.n, full & ~nm, nm)


def brute_force_cosign(F: Family, limit: int = BRUTE_FORCE_LIMIT) -> Optional[Signing]:
    neg = _all_signings(F, limit)
    full = F.full
    return _first_valid(F, neg, set(F.sets), {full & ~s for s in F.sets})


def brute_force_cc_cosign(F: Family, limit: int = BRUTE_FORCE_LIMIT) -> Optional[Signing]:
    neg = _all_signings(F, limit)
    full = F.full
    plus, minus = set(), set()
    for i, j in _pairs(len(F.sets)):
        a, b = F.sets[i], F.sets[j]
        if a & b:
            plus.add(a & b)
        if (a | b) != full:
            minus.add(full & ~(a | b))
    return _first_valid(F, neg, plus, minus)
