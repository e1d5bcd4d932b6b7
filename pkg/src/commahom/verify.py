"""The bundled-example verification suite.

Runs every headline computation on the shipped example (the hexagon
algebra S, the one-point algebra R, their 16-dimensional gluing) and
compares against the frozen expected values.  Used both by the CLI
``verify-example`` command and by the acceptance tests.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .comma import TriangularSetup, functor_q, h_as_lambda, to_triplet, in_class_D
from .cotorsion import (
    SetupUniverses,
    check_lifting,
    extension_closed,
    injective_members,
    is_frobenius_hull,
    left_perp,
    special_preenvelope,
)
from .decomp import ObjectClass, Universe, enumerate_universe
from .errors import IterationCapExceededError, PostconditionFailedError
from .gorenstein import GIResult, check_cocompatible, gorenstein_injectives, verify_gi_transfer
from .rep import hom_dim, is_iso, zero_rep
from .sample import example_setup


@dataclass(frozen=True)
class SuiteCheck:
    name: str
    ok: bool | None
    detail: str = ""
    seconds: float = 0.0


EXPECTED_GI_SUPPORTS_S = {(1,), (2,), (3,), (4, 6), (6,), (2, 3), (1, 2), (3, 4, 6), (3, 4, 5), (1, 4, 6)}
EXPECTED_GI_SUPPORTS_L = EXPECTED_GI_SUPPORTS_S | {(5, 7)}
EXPECTED_INJ_SUPPORTS_L = {(6,), (5, 7), (2, 3), (1, 2), (3, 4, 6), (3, 4, 5), (1, 4, 6)}


@dataclass
class ExampleData:
    setup: TriangularSetup
    universes: SetupUniverses
    gi_r: GIResult
    gi_s: GIResult
    gi_lam: GIResult


def build_example_data(bound: int = 3, seed: int = 0) -> ExampleData:
    setup = example_setup()
    universes = SetupUniverses(
        enumerate_universe(setup.r_alg, bound, seed=seed),
        enumerate_universe(setup.s_alg, bound, seed=seed),
        enumerate_universe(setup.lambda_alg, bound, seed=seed),
    )
    gi_r = gorenstein_injectives(setup.r_alg, universes.r)
    gi_s = gorenstein_injectives(setup.s_alg, universes.s)
    gi_lam = gorenstein_injectives(setup.lambda_alg, universes.lam)
    return ExampleData(setup, universes, gi_r, gi_s, gi_lam)


def _supports(cls: ObjectClass) -> set:
    return {m.support() for m in cls.members}


def run_example_suite(bound: int = 3, seed: int = 0) -> list[SuiteCheck]:
    checks: list[SuiteCheck] = []

    def record(name, ok, detail="", t0=None):
        checks.append(SuiteCheck(name, ok, detail, round(time.time() - t0, 2) if t0 else 0.0))

    t0 = time.time()
    data = build_example_data(bound, seed)
    setup, univ = data.setup, data.universes
    record(
        "gluing dimensions 1 + 14 + 1 = 16 verified",
        setup.r_alg.dim == 1 and setup.s_alg.dim == 14 and setup.lambda_alg.dim == 16,
        f"dims {setup.r_alg.dim}/{setup.s_alg.dim}/{setup.lambda_alg.dim}",
        t0,
    )

    t0 = time.time()
    inj_l = injective_members(univ.lam)
    record(
        "census: 16 side / 18 glued indecomposables, 7 glued injectives",
        len(univ.s.members) == 16 and len(univ.lam.members) == 18 and len(inj_l.members) == 7,
        f"{len(univ.s.members)}/{len(univ.lam.members)}/{len(inj_l.members)}",
        t0,
    )

    t0 = time.time()
    brute_s = enumerate_universe(setup.s_alg, bound, strategy="brute", seed=seed)
    brute_l = enumerate_universe(setup.lambda_alg, bound, strategy="brute", seed=seed)
    record(
        "matrix and string enumerations agree",
        univ.s.indecomposables.same_members(brute_s.indecomposables)
        and univ.lam.indecomposables.same_members(brute_l.indecomposables),
        f"side {len(brute_s.members)} glued {len(brute_l.members)}",
        t0,
    )

    t0 = time.time()
    gi_ok = (
        _supports(data.gi_s.object_class) == EXPECTED_GI_SUPPORTS_S
        and len(data.gi_s.object_class.members) == 10
        and _supports(data.gi_lam.object_class) == EXPECTED_GI_SUPPORTS_L
        and len(data.gi_lam.object_class.members) == 11
        and len(data.gi_r.object_class.members) == 1
    )
    witness_ok = all(
        cert in ("injective", "periodic-complex") for cert in data.gi_lam.certificates.values()
    ) and all(cert in ("injective", "periodic-complex") for cert in data.gi_s.certificates.values())
    record(
        "Gorenstein-injective classes: 10 side / 11 glued / 1 ground, all witnessed",
        gi_ok and witness_ok,
        f"{len(data.gi_s.object_class.members)}/{len(data.gi_lam.object_class.members)}/{len(data.gi_r.object_class.members)}",
        t0,
    )

    t0 = time.time()
    cocompat = check_cocompatible(setup, data.gi_r, data.gi_s, univ.r)
    record(
        "connecting functor cocompatible by criterion",
        cocompat.c1 == "holds_by_criterion"
        and cocompat.c2 == "holds_by_criterion"
        and cocompat.pd_bimodule_over_source.value == 0
        and cocompat.fd_bimodule_over_target.is_finite(),
        f"pd={cocompat.pd_bimodule_over_source.value} fd={cocompat.fd_bimodule_over_target.value}",
        t0,
    )

    t0 = time.time()
    lifting = check_lifting(setup, injective_members(univ.r), injective_members(univ.s), univ)
    verdict = True if lifting.all_pass else (None if lifting.any_unknown else False)
    record(
        "orthogonal-class lifting battery on the injective classes",
        verdict,
        "; ".join(f"{c.name}: {c.verdict}" for c in lifting.checks),
        t0,
    )

    t0 = time.time()
    lifting_gi = check_lifting(setup, data.gi_r.object_class, data.gi_s.object_class, univ)
    verdict = True if lifting_gi.all_pass else (None if lifting_gi.any_unknown else False)
    record(
        "orthogonal-class lifting battery on the Gorenstein-injective classes",
        verdict,
        "; ".join(f"{c.name}: {c.verdict}" for c in lifting_gi.checks),
        t0,
    )

    t0 = time.time()
    transfer = verify_gi_transfer(setup, univ, data.gi_r, data.gi_s, data.gi_lam, cocompat)
    verdict = True if transfer.all_pass else (None if any(c.verdict is None for c in transfer.checks) else False)
    record(
        "Gorenstein-injective transfer battery",
        verdict,
        "; ".join(f"{c.name}: {c.verdict}" for c in transfer.checks),
        t0,
    )

    t0 = time.time()
    env_count = 0
    env_fail = ""
    for universe, gi in ((univ.r, data.gi_r), (univ.s, data.gi_s), (univ.lam, data.gi_lam)):
        perp = left_perp(gi.object_class, universe)
        for m in universe.members:
            try:
                special_preenvelope(m, perp, gi.object_class)
                env_count += 1
            except (IterationCapExceededError, PostconditionFailedError) as exc:
                env_fail = f"dim {m.total_dim} over {universe.algebra.dim}-dim algebra: {exc}"
    record(
        "verified special preenvelopes into GI for every universe member",
        not env_fail and env_count == len(univ.r.members) + len(univ.s.members) + len(univ.lam.members),
        env_fail or f"{env_count} preenvelopes",
        t0,
    )

    t0 = time.time()
    mismatches = 0
    for z in univ.lam.members:
        trip = to_triplet(setup, z)
        za, zb = functor_q(trip)
        for a_rep in list(univ.r.members) + [zero_rep(setup.r_alg)]:
            for b_rep in list(univ.s.members) + [zero_rep(setup.s_alg)]:
                lhs = hom_dim(z, h_as_lambda(setup, a_rep, b_rep))
                rhs = hom_dim(za, a_rep) + hom_dim(zb, b_rep)
                if lhs != rhs:
                    mismatches += 1
    record(
        "adjunction dimension identity across the universes",
        mismatches == 0,
        f"{mismatches} mismatches over {len(univ.lam.members)}x{(len(univ.r.members)+1)*(len(univ.s.members)+1)} pairs",
        t0,
    )

    t0 = time.time()
    x_closed, _ = extension_closed(data.gi_r.object_class)
    y_closed, _ = extension_closed(data.gi_s.object_class)
    d_members = [
        z for z in univ.lam.members
        if in_class_D(to_triplet(setup, z), data.gi_r.object_class, data.gi_s.object_class)
    ]
    d_class = ObjectClass(setup.lambda_alg, tuple(d_members), name="triplet-class")
    d_closed, _ = extension_closed(d_class)
    record(
        "GI classes and their triplet class are extension closed",
        x_closed and y_closed and d_closed,
        f"side classes {x_closed}/{y_closed}, triplet class {d_closed} ({len(d_members)} members)",
        t0,
    )

    t0 = time.time()
    d_match = len(d_members) == len(data.gi_lam.object_class.members) and all(
        any(is_iso(z, g) for g in data.gi_lam.object_class.members) for z in d_members
    )
    record(
        "glued GI members are exactly the passing triplets",
        d_match,
        f"{len(d_members)} triplets vs {len(data.gi_lam.object_class.members)} GI members",
        t0,
    )

    t0 = time.time()
    record(
        "the gluing is not a Frobenius hull (side algebra not self-injective)",
        is_frobenius_hull(setup, univ) is False,
        "",
        t0,
    )

    return checks
