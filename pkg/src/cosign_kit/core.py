"""Ground sets, signings, set families and the checks shared by every solver.

Subsets are plain Python ints used as bit masks, so there is no separate
fixed-width fast path: arbitrary precision ints cover any ground size.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import CapacityExceeded, EmptyGround, MalformedInput

POS = 1
NEG = -1
UNSIGNED = 0


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def elements(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def lowest(mask: int) -> int:
    """Index of the lowest set bit (mask must be nonzero)."""
    return (mask & -mask).bit_length() - 1


@dataclass(frozen=True)
class GroundSet:
    """A universe of ``n`` indexed elements, of which ``active`` are in play.

    Restricting a family keeps the original indices and shrinks ``active``,
    so nested restrictions compose without any re-indexing.
    """

    n: int
    names: Optional[tuple[str, ...]] = None
    active: int = -1

    def __post_init__(self):
        if self.n < 1:
            raise MalformedInput("ground set needs at least one element")
        if self.names is not None:
            names = tuple(self.names)
            if len(names) != self.n or len(set(names)) != self.n:
                raise MalformedInput("names must be unique and match n")
            object.__setattr__(self, "names", names)
        full = (1 << self.n) - 1
        if self.active == -1:
            object.__setattr__(self, "active", full)
        if self.active & ~full or self.active == 0:
            raise MalformedInput("active mask out of range or empty")

    @property
    def full(self) -> int:
        return self.active

    @property
    def size(self) -> int:
        return popcount(self.active)

    def complement(self, mask: int) -> int:
        return self.active & ~mask

    def label(self, i: int) -> str:
        return self.names[i] if self.names else f"v{i + 1}"

    def format(self, mask: int) -> str:
        return "{" + ",".join(self.label(i) for i in elements(mask)) + "}"

    def with_active(self, active: int) -> "GroundSet":
        return GroundSet(self.n, self.names, active)


@dataclass(frozen=True)
class Family:
    ground: GroundSet
    sets: tuple[int, ...] = ()
    _index: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        sets = tuple(int(s) for s in self.sets)
        full = self.ground.full
        seen = {}
        for i, s in enumerate(sets):
            if s == 0 or s == full or s & ~full:
                raise MalformedInput(f"member {s:#x} is empty, full, or out of range")
            if s in seen:
                raise MalformedInput(f"duplicate member {self.ground.format(s)}")
            seen[s] = i
        object.__setattr__(self, "sets", sets)
        object.__setattr__(self, "_index", seen)

    @classmethod
    def from_lists(cls, n: int, sets: Iterable[Iterable[int]], names=None) -> "Family":
        return cls(GroundSet(n, tuple(names) if names else None), tuple(mask_of(s) for s in sets))

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def __contains__(self, mask: int) -> bool:
        return mask in self._index

    def index(self, mask: int) -> int:
        return self._index[mask]

    @property
    def n(self) -> int:
        return self.ground.n

    @property
    def full(self) -> int:
        return self.ground.full

    def with_sets(self, sets: Iterable[int]) -> "Family":
        return Family(self.ground, tuple(sets))

    def as_lists(self) -> list[list[int]]:
        return [elements(s) for s in self.sets]


class Signing:
    """Per-element sign in {+1, -1, 0}; 0 means not signed yet."""

    __slots__ = ("signs",)

    def __init__(self, signs: Sequence[int]):
        signs = tuple(int(s) for s in signs)
        if any(s not in (POS, NEG, UNSIGNED) for s in signs):
            raise MalformedInput("signs must be +1, -1 or 0")
        self.signs = signs

    @classmethod
    def unsigned(cls, n: int) -> "Signing":
        return cls((UNSIGNED,) * n)

    @classmethod
    def from_masks(cls, n: int, pos: int, neg: int) -> "Signing":
        return cls(tuple(POS if pos >> i & 1 else NEG if neg >> i & 1 else UNSIGNED
                         for i in range(n)))

    @classmethod
    def parse(cls, text: Iterable[str]) -> "Signing":
        table = {"+": POS, "-": NEG, "?": UNSIGNED}
        return cls(tuple(table[c] for c in text))

    def __len__(self):
        return len(self.signs)

    def __getitem__(self, i):
        return self.signs[i]

    def __eq__(self, other):
        return isinstance(other, Signing) and self.signs == other.signs

    def __hash__(self):
        return hash(self.signs)

    def __repr__(self):
        return f"Signing('{self.text()}')"

    def text(self) -> str:
        return "".join({POS: "+", NEG: "-", UNSIGNED: "?"}[s] for s in self.signs)

    @property
    def pos(self) -> int:
        return mask_of(i for i, s in enumerate(self.signs) if s == POS)

    @property
    def neg(self) -> int:
        return mask_of(i for i, s in enumerate(self.signs) if s == NEG)

    @property
    def unsigned_mask(self) -> int:
        return mask_of(i for i, s in enumerate(self.signs) if s == UNSIGNED)

    def is_complete(self, active: Optional[int] = None) -> bool:
        if active is None:
            return UNSIGNED not in self.signs
        return all(self.signs[i] != UNSIGNED for i in elements(active))

    def with_sign(self, i: int, s: int) -> "Signing":
        signs = list(self.signs)
        signs[i] = s
        return Signing(signs)

    def flipped(self) -> "Signing":
        return Signing(tuple(-s for s in self.signs))


PartialSigning = Signing


class Arc(NamedTuple):
    """Directed arc from a negative ``tail`` to a positive ``head``."""

    tail: int
    head: int


def _crossing(u: int, w: int, full: int) -> bool:
    return bool(u & w) and (u | w) != full


def find_crossing_violation(F: Family) -> Optional[tuple[int, int]]:
    """Indices (i, j), i < j, of the first crossing pair whose meet or join is missing."""
    full = F.full
    sets = F.sets
    for i in range(len(sets)):
        u = sets[i]
        for j in range(i + 1, len(sets)):
            w = sets[j]
            if _crossing(u, w, full) and ((u & w) not in F or (u | w) not in F):
                return (i, j)
    return None


def is_crossing_family(F: Family) -> bool:
    return find_crossing_violation(F) is None


def crossing_closure(generators: Family, limit: Optional[int] = None) -> Family:
    """Smallest crossing family containing ``generators``.

    Members keep generator order, followed by new sets in discovery order.
    """
    full = generators.full
    sets = list(generators.sets)
    seen = set(sets)
    k = 0
    # every set is paired with all earlier ones exactly once
    while k < len(sets):
        u = sets[k]
        for j in range(k):
            w = sets[j]
            if not _crossing(u, w, full):
                continue
            for x in (u & w, u | w):
                if x not in seen:
                    seen.add(x)
                    sets.append(x)
                    if limit is not None and len(sets) > limit:
                        raise CapacityExceeded(f"closure exceeds {limit} members")
        k += 1
    return generators.with_sets(sets)


def restrict_raw(F: Family, keep: int) -> list[int]:
    """The literal restriction: nonempty traces on ``keep``, first occurrence order.

    Unlike :func:`restrict` the result may contain ``keep`` itself.
    """
    if keep & F.full == 0:
        raise EmptyGround("restriction to an empty ground set")
    out = []
    seen = set()
    for s in F.sets:
        t = s & keep
        if t and t not in seen:
            seen.add(t)
            out.append(t)
    return out


def restrict(F: Family, keep: int) -> tuple[Family, int]:
    """Restrict ``F`` to ``keep``; returns the family and how many full traces were dropped."""
    keep &= F.full
    raw = restrict_raw(F, keep)
    kept = [t for t in raw if t != keep]
    return Family(F.ground.with_active(keep), tuple(kept)), len(raw) - len(kept)


def dual(F: Family, sigma: Signing) -> tuple[Family, Signing]:
    g = F.ground
    return F.with_sets(g.complement(s) for s in F.sets), sigma.flipped()


def covers(a: Arc, U: int) -> bool:
    return not (U >> a.tail & 1) and bool(U >> a.head & 1)


def covered_sets(F: Family, arcs: Iterable[Arc]) -> Family:
    arcs = list(arcs)
    return F.with_sets(s for s in F.sets if any(covers(a, s) for a in arcs))


def has_complementary_pair(F: Family) -> Optional[tuple[int, int]]:
    for i, s in enumerate(F.sets):
        c = F.ground.complement(s)
        if c in F:
            j = F.index(c)
            return (min(i, j), max(i, j))
    return None


def cosigning_violation(F: Family, sigma: Signing) -> Optional[int]:
    """Index of the first member lacking a positive inside or a negative outside."""
    pos, neg = sigma.pos, sigma.neg
    for i, s in enumerate(F.sets):
        if not (s & pos) or not (F.ground.complement(s) & neg):
            return i
    return None


def verify_cosigning(F: Family, sigma: Signing) -> bool:
    return cosigning_violation(F, sigma) is None


def cc_cosigning_violation(F: Family, sigma: Signing) -> Optional[tuple[int, int, str]]:
    """First pair (i, j, kind), i <= j, breaking the intersection/union requirement.

    kind is "meet" when an intersecting pair has no positive in common and
    "join" when a co-intersecting pair leaves no negative outside.
    """
    pos, neg, full = sigma.pos, sigma.neg, F.full
    sets = F.sets
    for i in range(len(sets)):
        for j in range(i, len(sets)):
            a, b = sets[i], sets[j]
            if a & b and not (a & b & pos):
                return (i, j, "meet")
            if (a | b) != full and not (full & ~(a | b) & neg):
                return (i, j, "join")
    return None


def verify_cc_cosigning(F: Family, sigma: Signing) -> bool:
    return cc_cosigning_violation(F, sigma) is None
