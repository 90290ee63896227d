"""Seeded instance generators, brute-force oracles and the shipped fixtures."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from importlib import resources
from typing import Any, Optional

from .core import Family, GroundSet, Signing, crossing_closure, mask_of
from .errors import CapacityExceeded, GenerationFailed


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int = 0
    n: int = 8
    sets: int = 4          # generator sets (family) or interval attempts (circle)
    cap: int = 40          # member limit after closure
    attempts: int = 200
    extra: dict = field(default_factory=dict)

    def rng(self, salt: str = "") -> random.Random:
        return random.Random(f"{salt}:{self.seed}:{self.n}:{self.sets}")


def gen_crossing_family(cfg: GeneratorConfig) -> Family:
    """Random generators closed under uncrossing. Raises CapacityExceeded past ``cap``."""
    rng = cfg.rng("family")
    full = (1 << cfg.n) - 1
    shape = cfg.extra.get("shape", "mixed")
    gens: list[int] = []
    for _ in range(cfg.sets):
        if cfg.n < 2:
            break
        if shape == "uniform":
            s = rng.randint(1, full - 1)
        else:
            k = rng.choice([1, 2, 2, 3, cfg.n // 2, cfg.n - 3, cfg.n - 2, cfg.n - 2, cfg.n - 1])
            k = max(1, min(cfg.n - 1, k))
            s = mask_of(rng.sample(range(cfg.n), k))
        if s not in gens:
            gens.append(s)
    return crossing_closure(Family(GroundSet(cfg.n), tuple(gens)), cfg.cap)


def gen_circle_instance(cfg: GeneratorConfig):
    """Random valid circle instance.

    Signs are drawn first. Random intervals are then offered one at a time and
    kept only when the uncrossing closure of everything kept so far is still a
    valid instance, so each offer is a rejection-sampling trial.
    """
    from .circle import CircleInstance, _validate

    rng = cfg.rng("circle")
    n = cfg.n
    if n < 2:
        raise GenerationFailed("circle instances need two vertices")
    for _ in range(cfg.attempts):
        signs = [rng.choice((1, -1)) for _ in range(n)]
        if len(set(signs)) == 2:
            break
    else:
        raise GenerationFailed("could not draw mixed signs")
    sigma = Signing(signs)
    full = (1 << n) - 1
    ground = GroundSet(n)
    kept = Family(ground, ())
    for _ in range(cfg.sets):
        start = rng.randrange(n)
        length = rng.randint(1, n - 1)
        iv = mask_of((start + i) % n for i in range(length))
        if iv in kept:
            continue
        try:
            cand = crossing_closure(Family(ground, kept.sets + (iv,)), cfg.cap)
        except CapacityExceeded:
            continue
        if _validate(cand.sets, full, sigma) is None:
            kept = cand
    if cfg.extra.get("nonempty") and not kept.sets:
        raise GenerationFailed("no interval survived")
    return CircleInstance(sigma, kept)


def gen_plane_digraph(cfg: GeneratorConfig):
    from .plane import generate_plane_instance
    return generate_plane_instance(cfg)


# ---------------------------------------------------------------- fixtures


@dataclass
class Fixture:
    id: str
    kind: str
    payload: Any
    expected: dict


def _load(name: str) -> dict:
    return json.loads(resources.files("cosign_kit.fixtures").joinpath(name).read_text())


def paper_fixtures() -> list[Fixture]:
    """The worked circle example and the necessity counterexamples."""
    from . import io
    data = _load("circle_fixtures.json")
    out = []
    for item in data["fixtures"]:
        inst = io.circle_from_json(item["instance"])
        out.append(Fixture(item["id"], "circle", inst, item["expected"]))
    return out


def plane_fixtures() -> list[Fixture]:
    """Small proper plane digraphs, two of them with a bridge step that has sets to cover."""
    from . import io
    return [Fixture(item["id"], "plane", io.plane_from_json(item["instance"]), item["expected"])
            for item in _load("plane_fixtures.json")["fixtures"]]


def fixture(fid: str) -> Fixture:
    for f in paper_fixtures() + plane_fixtures():
        if f.id == fid:
            return f
    raise KeyError(fid)


def check_fixture(fx: Fixture) -> Optional[str]:
    """Re-derive a fixture's verdicts; None when they all hold."""
    from .circle import Arc, brute_force_circle, check_solution, validate_instance
    exp = fx.expected
    if fx.kind == "plane":
        return _check_plane_fixture(fx)
    bad = validate_instance(fx.payload)
    got = bad.prop if bad else None
    if got != exp.get("violation"):
        return f"{fx.id}: validation gave {got}, expected {exp.get('violation')}"
    if "feasible" in exp:
        sol = brute_force_circle(fx.payload)
        if (sol is not None) != exp["feasible"]:
            return f"{fx.id}: exhaustive search disagrees on feasibility"
    if "reference" in exp:
        reason = check_solution(fx.payload, [Arc(*a) for a in exp["reference"]])
        if reason is not None:
            return f"{fx.id}: reference answer rejected ({reason})"
    return None


def _check_plane_fixture(fx: Fixture) -> Optional[str]:
    from .dijoin import build_circle_instance, is_super_proper, weight0_vertices
    from .plane import is_proper, validate_plane
    D, exp = fx.payload, fx.expected
    if validate_plane(D) is not None:
        return f"{fx.id}: embedding rejected"
    if is_proper(D) != exp["proper"]:
        return f"{fx.id}: properness differs"
    if (is_super_proper(D) is None) != exp["super_proper"]:
        return f"{fx.id}: super-properness differs"
    if weight0_vertices(D) != exp["weight0"]:
        return f"{fx.id}: weight-0 vertices differ"
    if "bridge_vertex" in exp:
        got = len(build_circle_instance(D, exp["bridge_vertex"]).instance.family)
        if got != exp["circle_sets"]:
            return f"{fx.id}: bridge instance has {got} sets, expected {exp['circle_sets']}"
    return None
