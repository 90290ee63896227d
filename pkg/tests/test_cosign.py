import itertools

import pytest

from cosign_kit.core import (NEG, POS, Family, GroundSet, Signing, crossing_closure, mask_of,
                             verify_cc_cosigning, verify_cosigning)
from cosign_kit.cosign import (brute_force_cc_cosign, brute_force_cosign, cc_cosign,
                               cc_find_forced, cc_scan_bound, check_cc_condition,
                               check_cosign_condition, cosign, find_forced, plain_scan_bound)
from cosign_kit.errors import (CapacityExceeded, ConditionViolationError, Conflict, NotCrossing,
                               TooLarge)
from cosign_kit.testkit import GeneratorConfig, gen_crossing_family


def corpus(count, nmax, seed0=0):
    out = []
    seed = seed0
    while len(out) < count:
        n = 3 + seed % (nmax - 2)
        try:
            out.append(gen_crossing_family(GeneratorConfig(seed=seed, n=n, sets=2 + seed % 5)))
        except CapacityExceeded:
            pass
        seed += 1
    return out


def slow_first_signing(F, ok):
    """Lexicographic search over '+'/'-' strings, '+' first."""
    for combo in itertools.product((POS, NEG), repeat=F.n):
        s = Signing(combo)
        if ok(F, s):
            return s
    return None


@pytest.fixture
def worked_closure(worked_family):
    return crossing_closure(worked_family)


# ---------------------------------------------------------------- conditions


def test_condition_on_worked_closure(worked_closure):
    assert check_cosign_condition(worked_closure) is None
    assert check_cc_condition(worked_closure) is None


def test_condition_needs_crossing(worked_family):
    with pytest.raises(NotCrossing):
        check_cosign_condition(worked_family)
    with pytest.raises(NotCrossing):
        cosign(worked_family)


def test_two_singletons_violate():
    bad = check_cosign_condition(Family.from_lists(2, [[0], [1]]))
    assert bad.kind == "missing_u" and bad.sets == (mask_of([0]),)


def test_empty_family_conditions():
    F = Family(GroundSet(3), ())
    assert check_cosign_condition(F) is None
    assert check_cc_condition(F) is None


def test_cc_trivial_conflict_is_reported():
    F = crossing_closure(Family.from_lists(5, [[0, 1], [0, 2], [1, 2, 3], [2, 3, 4]]))
    bad = check_cc_condition(F)
    assert bad is not None and bad.kind == "cc_missing_u"
    assert brute_force_cc_cosign(F) is None
    with pytest.raises(ConditionViolationError):
        cc_cosign(F)


# ---------------------------------------------------------------- forcing scans


def test_singleton_forces_positive():
    w = find_forced(Family.from_lists(2, [[0]]), Signing.unsigned(2))
    assert (w.element, w.sign, w.witness_sets, w.trivial) == (0, POS, (1,), True)


def test_last_element_standing():
    w = find_forced(Family.from_lists(3, [[0, 1]]), Signing.parse("-??"))
    assert (w.element, w.sign, w.trivial) == (1, POS, False)
    assert w.witness_sets == (mask_of([0, 1]),)


def test_negative_forcing():
    w = find_forced(Family.from_lists(3, [[0]]), Signing.parse("++?"))
    assert (w.element, w.sign) == (2, NEG)


def test_no_forcing_on_worked_family(worked_family):
    assert find_forced(worked_family, Signing.unsigned(9)) is None


def test_conflicting_scan_raises():
    # {a} and V - {a} would force a both ways
    F = Family(GroundSet(3), (mask_of([0]), mask_of([1, 2])))
    with pytest.raises(Conflict):
        find_forced(F, Signing.unsigned(3))


def test_cc_forcing_by_intersection():
    F = crossing_closure(Family.from_lists(4, [[0, 1], [1, 2]]))
    w = cc_find_forced(F, Signing.parse("-???"))
    assert (w.element, w.sign) == (1, POS)


def test_cc_diagonal_matches_plain_on_single_set():
    F = Family.from_lists(3, [[0, 1]])
    for s in ["-??", "?-?", "??+", "+??"]:
        plain = find_forced(F, Signing.parse(s))
        pair = cc_find_forced(F, Signing.parse(s))
        assert (plain is None) == (pair is None)
        if plain:
            assert (plain.element, plain.sign) == (pair.element, pair.sign)


def test_cc_forcing_mid_run_on_worked_closure(worked_closure):
    sigma = Signing.parse("?+-++-++-")
    w = cc_find_forced(worked_closure, sigma)
    # the first pair in scan order is ({v1,v9}, {v1,v9}) and v9 is negative
    assert (w.element, w.sign, w.trivial) == (0, POS, False)
    assert w.witness_sets == (mask_of([0, 8]), mask_of([0, 8]))


# ---------------------------------------------------------------- the loops


def test_cosign_forced_pair():
    s, stats = cosign(Family.from_lists(2, [[0]]))
    assert s.text() == "+-"
    assert stats.iterations == 2 and stats.forced_count == 2


def test_cosign_worked_closure(worked_closure, worked_signing):
    s, stats = cosign(worked_closure)
    assert verify_cosigning(worked_closure, s)
    assert verify_cosigning(worked_closure, worked_signing)
    assert s.text() == "++-++++-+"
    assert stats.iterations == 9
    assert stats.forced_count + stats.free_count == 9
    assert stats.set_scans <= plain_scan_bound(len(worked_closure), 9)


def test_cosign_two_singletons_fails():
    with pytest.raises(ConditionViolationError) as exc:
        cosign(Family.from_lists(2, [[0], [1]]))
    assert exc.value.violation.kind == "missing_u"


def test_cc_cosign_worked_closure(worked_closure):
    s, stats = cc_cosign(worked_closure)
    assert verify_cc_cosigning(worked_closure, s)
    assert stats.pair_scans <= cc_scan_bound(len(worked_closure), 9)


def test_cc_cosign_empty_family_is_all_positive():
    s, _ = cc_cosign(Family(GroundSet(3), ()))
    assert s.text() == "+++"


def test_deterministic():
    F = corpus(1, 9, seed0=40)[0]
    assert cosign(F) == cosign(F)
    assert cc_cosign(F) == cc_cosign(F)


@pytest.mark.parametrize("seed", range(8))
def test_cc_cosign_random_n8(seed):
    F = corpus(1, 9, seed0=100 + 9 * seed)[0]
    if check_cc_condition(F) is None:
        s, _ = cc_cosign(F)
        assert verify_cc_cosigning(F, s)
        assert brute_force_cc_cosign(F) is not None
    else:
        assert brute_force_cc_cosign(F) is None


# ---------------------------------------------------------------- brute force


def test_brute_force_small_cases():
    assert brute_force_cosign(Family.from_lists(2, [[0], [1]])) is None
    assert brute_force_cosign(Family.from_lists(2, [[0]])).text() == "+-"


def test_brute_force_worked_family(worked_family):
    s = brute_force_cosign(worked_family)
    assert s is not None and verify_cosigning(worked_family, s)


def test_brute_force_is_lexicographically_first():
    for F in corpus(60, 7, seed0=500):
        assert brute_force_cosign(F) == slow_first_signing(F, verify_cosigning)
        assert brute_force_cc_cosign(F) == slow_first_signing(F, verify_cc_cosigning)


def test_brute_force_limit():
    with pytest.raises(TooLarge):
        brute_force_cosign(Family(GroundSet(22), ()))


# ---------------------------------------------------------------- equivalences


def test_plain_equivalence_and_bound():
    for F in corpus(150, 12, seed0=1000):
        ok = check_cosign_condition(F) is None
        assert ok == (brute_force_cosign(F) is not None)
        if ok:
            s, stats = cosign(F)
            assert verify_cosigning(F, s)
            assert stats.set_scans <= plain_scan_bound(len(F), F.n)


def test_cc_equivalence_and_bound():
    for F in corpus(150, 10, seed0=2000):
        ok = check_cc_condition(F) is None
        assert ok == (brute_force_cc_cosign(F) is not None)
        if ok:
            s, stats = cc_cosign(F)
            assert verify_cc_cosigning(F, s)
            assert stats.pair_scans <= cc_scan_bound(len(F), F.n)
