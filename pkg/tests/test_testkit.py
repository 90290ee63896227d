import itertools

import pytest

from cosign_kit.circle import brute_force_circle, validate_instance
from cosign_kit.core import elements, is_crossing_family
from cosign_kit.errors import CapacityExceeded, GenerationFailed
from cosign_kit.plane import digon, is_proper, validate_plane
from cosign_kit.testkit import (GeneratorConfig, check_fixture, fixture, gen_circle_instance,
                                gen_crossing_family, gen_plane_digraph, paper_fixtures,
                                plane_fixtures)


def pairwise_crossing(F):
    sets = [set(elements(s)) for s in F.sets]
    universe = set(range(F.n))
    for a, b in itertools.combinations(sets, 2):
        if a & b and a | b != universe and (a & b not in sets or a | b not in sets):
            return False
    return True


def test_family_seed_one():
    F = gen_crossing_family(GeneratorConfig(seed=1, n=8))
    assert F.as_lists() == [[0, 1, 4, 6, 7], [4], [0, 1, 2, 3, 4, 5, 6], [0, 3, 4], [0, 4],
                            [0, 1, 3, 4, 6, 7]]
    assert pairwise_crossing(F)


def test_family_without_generators_is_empty():
    assert len(gen_crossing_family(GeneratorConfig(seed=3, n=6, sets=0))) == 0


def test_family_determinism_and_crossing():
    for seed in range(60):
        cfg = GeneratorConfig(seed=seed, n=4 + seed % 7, sets=3)
        try:
            F = gen_crossing_family(cfg)
        except CapacityExceeded:
            continue
        assert F == gen_crossing_family(cfg)
        assert is_crossing_family(F) and pairwise_crossing(F)


def test_family_cap():
    with pytest.raises(CapacityExceeded):
        gen_crossing_family(GeneratorConfig(seed=2, n=12, sets=8, cap=3))


def test_uniform_shape():
    F = gen_crossing_family(GeneratorConfig(seed=7, n=6, extra={"shape": "uniform"}))
    assert pairwise_crossing(F)


def test_circle_determinism_and_validity():
    for seed in range(200):
        cfg = GeneratorConfig(seed=seed, n=3 + seed % 9, sets=10)
        inst = gen_circle_instance(cfg)
        assert inst == gen_circle_instance(cfg)
        assert validate_instance(inst) is None


def test_circle_instances_are_mostly_nonempty():
    hits = sum(1 for s in range(1000) if len(gen_circle_instance(GeneratorConfig(seed=s, n=9)).family))
    assert hits >= 500


def test_circle_generation_failures():
    with pytest.raises(GenerationFailed):
        gen_circle_instance(GeneratorConfig(n=1))
    with pytest.raises(GenerationFailed):
        gen_circle_instance(GeneratorConfig(seed=0, n=4, sets=0, extra={"nonempty": True}))


def test_plane_generator():
    assert gen_plane_digraph(GeneratorConfig(n=2)) == digon()
    for seed in range(30):
        cfg = GeneratorConfig(seed=seed, n=10)
        D = gen_plane_digraph(cfg)
        assert D == gen_plane_digraph(cfg)
        assert validate_plane(D) is None and is_proper(D)


def test_plane_generation_can_fail_loudly():
    with pytest.raises(GenerationFailed):
        gen_plane_digraph(GeneratorConfig(seed=0, n=10, attempts=3, extra={"zero": 1.0}))


def test_fixture_lists():
    assert [f.id for f in paper_fixtures()] == [
        "worked_example", "nested_chords_p0", "uncrossed_pair_p1", "disjoint_pair_p3",
        "nested_pair_p3_a", "nested_pair_p3_b", "dual_pair_p4", "complementary_pair"]
    assert [f.id for f in plane_fixtures()] == ["digon", "bridge_grid_813", "bridge_grid_3522"]
    with pytest.raises(KeyError):
        fixture("nope")


@pytest.mark.parametrize("fid", [f.id for f in paper_fixtures() + plane_fixtures()])
def test_fixture_verdicts_rederive(fid):
    assert check_fixture(fixture(fid)) is None


def test_worked_fixture_verdicts():
    fx = fixture("worked_example")
    assert fx.expected["reference"] == [[5, 0], [2, 4]]
    assert brute_force_circle(fx.payload) is not None


def test_check_fixture_notices_a_wrong_verdict():
    fx = fixture("nested_chords_p0")
    fx.expected = dict(fx.expected, violation="P1")
    assert "validation gave P0" in check_fixture(fx)
    fx = fixture("digon")
    fx.expected = dict(fx.expected, weight0=[0])
    assert "weight-0" in check_fixture(fx)
