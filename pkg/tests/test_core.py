import itertools
import random

import pytest

from cosign_kit.core import (Arc, Family, GroundSet, Signing, covered_sets, covers,
                             crossing_closure, dual, elements, find_crossing_violation,
                             has_complementary_pair, is_crossing_family, mask_of, restrict,
                             restrict_raw, verify_cc_cosigning, verify_cosigning)
from cosign_kit.errors import CapacityExceeded, EmptyGround, MalformedInput
from cosign_kit.testkit import GeneratorConfig, gen_crossing_family


def naive_crossing(sets, full):
    """Pure-Python pair scan, independent of the bitmask helpers."""
    as_sets = [set(elements(s)) for s in sets]
    universe = set(elements(full))
    for a, b in itertools.combinations(as_sets, 2):
        if a & b and (a | b) != universe:
            if a & b not in as_sets or a | b not in as_sets:
                return False
    return True


def random_families(count, seed=0):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(2, 7)
        full = (1 << n) - 1
        sets = list({rng.randint(1, full - 1) for _ in range(rng.randint(0, 5))})
        yield Family(GroundSet(n), tuple(sets))


# ---------------------------------------------------------------- ground sets and families


def test_ground_set_rejects_bad_names():
    with pytest.raises(MalformedInput):
        GroundSet(2, ("a", "a"))
    with pytest.raises(MalformedInput):
        GroundSet(2, ("a",))
    with pytest.raises(MalformedInput):
        GroundSet(0)


def test_family_rejects_empty_full_and_duplicate_members():
    g = GroundSet(3)
    for bad in [(0,), (7,), (1, 1), (8,)]:
        with pytest.raises(MalformedInput):
            Family(g, bad)


def test_family_keeps_insertion_order():
    F = Family.from_lists(4, [[2], [0, 1], [1]])
    assert F.as_lists() == [[2], [0, 1], [1]]
    assert F.index(mask_of([1])) == 2


def test_labels_default_and_named():
    assert GroundSet(3).format(0b101) == "{v1,v3}"
    assert GroundSet(3, ("a", "b", "c")).format(0b110) == "{b,c}"


def test_wide_ground_set_beyond_64_elements():
    n = 80
    F = Family.from_lists(n, [[70, 71], [71, 72], [71], [70, 71, 72]])
    assert is_crossing_family(F)
    assert covers(Arc(5, 70), F.sets[0])


# ---------------------------------------------------------------- crossing checks


def test_worked_family_is_not_crossing(worked_family):
    # {v1,v9} and {v1,v2,v3} cross but {v1} is missing
    assert not is_crossing_family(worked_family)
    assert find_crossing_violation(worked_family) == (0, 1)


def test_empty_family_is_crossing():
    assert is_crossing_family(Family(GroundSet(3), ()))


def test_crossing_counterexample_pair():
    # over {a,b,c} the union is everything, so the pair does not cross at all
    assert is_crossing_family(Family.from_lists(3, [[0, 1], [1, 2]]))
    F = Family.from_lists(4, [[0, 1], [1, 2]])
    assert find_crossing_violation(F) == (0, 1)


def test_crossing_check_matches_naive_scan():
    for F in random_families(400, seed=7):
        assert is_crossing_family(F) == naive_crossing(F.sets, F.full)


# ---------------------------------------------------------------- closure


def test_closure_of_two_crossing_sets():
    F = crossing_closure(Family.from_lists(4, [[0, 1], [1, 2]]))
    assert F.as_lists() == [[0, 1], [1, 2], [1], [0, 1, 2]]


def test_closure_is_idempotent_and_crossing():
    for F in random_families(200, seed=3):
        C = crossing_closure(F)
        assert naive_crossing(C.sets, C.full)
        assert crossing_closure(C) == C
        assert set(F.sets) <= set(C.sets)


def test_closure_of_empty_family():
    assert len(crossing_closure(Family(GroundSet(4), ()))) == 0


def test_closure_cap():
    F = Family.from_lists(6, [[0, 1], [1, 2], [2, 3], [3, 4]])
    with pytest.raises(CapacityExceeded):
        crossing_closure(F, limit=5)


def test_worked_family_closure(worked_family):
    C = crossing_closure(worked_family)
    assert C.as_lists() == [[0, 8], [0, 1, 2], [3, 4, 5], [0, 3, 4, 5, 6, 7, 8], [0], [0, 1, 2, 8]]


# ---------------------------------------------------------------- restriction


def test_restrict_worked_family_to_first_five(worked_family):
    R, dropped = restrict(worked_family, mask_of(range(5)))
    # U4 leaves {v1,v4,v5} behind as well
    assert R.as_lists() == [[0], [0, 1, 2], [3, 4], [0, 3, 4]]
    assert dropped == 0
    assert R.full == mask_of(range(5))


def test_restrict_to_whole_ground_is_identity(worked_family):
    R, dropped = restrict(worked_family, worked_family.full)
    assert R.sets == worked_family.sets and dropped == 0


def test_restrict_drops_empty_traces():
    R, _ = restrict(Family.from_lists(2, [[0]]), mask_of([1]))
    assert len(R) == 0


def test_restrict_reports_full_traces_and_raw_keeps_them():
    F = Family.from_lists(4, [[0, 1, 2], [0]])
    R, dropped = restrict(F, mask_of([0, 1]))
    assert R.as_lists() == [[0]] and dropped == 1
    assert restrict_raw(F, mask_of([0, 1])) == [mask_of([0, 1]), mask_of([0])]


def test_restrict_merges_duplicate_traces():
    F = Family.from_lists(4, [[0, 2], [0, 3]])
    R, _ = restrict(F, mask_of([0, 1]))
    assert R.as_lists() == [[0]]


def test_restrict_to_empty_ground():
    with pytest.raises(EmptyGround):
        restrict(Family.from_lists(2, [[0]]), 0)


def test_restrict_composes():
    rng = random.Random(11)
    for F in random_families(200, seed=5):
        outer = rng.randint(1, F.full)
        inner = outer & rng.randint(1, F.full)
        if not inner:
            continue
        once, _ = restrict(F, inner)
        twice, _ = restrict(restrict(F, outer)[0], inner)
        assert set(once.sets) == set(twice.sets)


# ---------------------------------------------------------------- duality and coverage


def test_dual_small_example():
    F, s = dual(Family.from_lists(3, [[0, 1]]), Signing.parse("++-"))
    assert F.as_lists() == [[2]]
    assert s.text() == "--+"


def test_dual_is_involution(worked_family, worked_signing):
    F, s = dual(*dual(worked_family, worked_signing))
    assert F == worked_family and s == worked_signing


def test_dual_of_worked_family(worked_family, worked_signing):
    F, s = dual(worked_family, worked_signing)
    assert F.as_lists() == [[1, 2, 3, 4, 5, 6, 7], [3, 4, 5, 6, 7, 8], [0, 1, 2, 6, 7, 8], [1, 2]]
    assert s.text() == "--+--+--+"


def test_covers():
    U1, U3 = mask_of([0, 8]), mask_of([3, 4, 5])
    assert covers(Arc(5, 0), U1)
    assert not covers(Arc(5, 0), U3)


def test_reference_arcs_cover_every_worked_set(worked_family):
    got = covered_sets(worked_family, [Arc(5, 0), Arc(2, 4)])
    assert got.sets == worked_family.sets
    assert covered_sets(worked_family, [Arc(5, 0)]).as_lists() == [[0, 8], [0, 1, 2]]


def test_covered_sets_union_law():
    rng = random.Random(2)
    for F in random_families(150, seed=9):
        n = F.n
        A = [Arc(rng.randrange(n), rng.randrange(n)) for _ in range(2)]
        B = [Arc(rng.randrange(n), rng.randrange(n)) for _ in range(2)]
        both = set(covered_sets(F, A + B).sets)
        assert both == set(covered_sets(F, A).sets) | set(covered_sets(F, B).sets)


# ---------------------------------------------------------------- complementary pairs


def test_complementary_pair_found():
    assert has_complementary_pair(Family.from_lists(4, [[0, 1], [2, 3]])) == (0, 1)


def test_no_complementary_pair(worked_family):
    assert has_complementary_pair(worked_family) is None
    assert has_complementary_pair(Family(GroundSet(2), ())) is None


# ---------------------------------------------------------------- cosigning checks


def test_worked_signing_is_a_cosigning(worked_family, worked_signing):
    assert verify_cosigning(worked_family, worked_signing)


def test_worked_signing_is_cc_on_the_four_sets(worked_family, worked_signing):
    assert verify_cc_cosigning(worked_family, worked_signing)


def test_all_positive_signing_fails():
    F = Family.from_lists(3, [[0]])
    assert not verify_cosigning(F, Signing.parse("+++"))


def test_forced_two_element_case():
    assert verify_cosigning(Family.from_lists(2, [[0]]), Signing.parse("+-"))


def test_cc_example_on_closure():
    F = crossing_closure(Family.from_lists(4, [[0, 1], [1, 2]]))
    assert verify_cc_cosigning(F, Signing.parse("-+--"))
    assert not verify_cc_cosigning(F, Signing.parse("+-+-"))


def test_cc_implies_plain():
    rng = random.Random(4)
    for F in random_families(200, seed=12):
        s = Signing([rng.choice((1, -1)) for _ in range(F.n)])
        if verify_cc_cosigning(F, s):
            assert verify_cosigning(F, s)


def test_generated_families_are_crossing():
    for seed in range(50):
        try:
            F = gen_crossing_family(GeneratorConfig(seed=seed, n=7, sets=4))
        except CapacityExceeded:
            continue
        assert naive_crossing(F.sets, F.full)
