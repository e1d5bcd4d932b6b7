"""Orthogonal classes, cotorsion pairs, and special approximations.

Everything here is relative to a Universe (the finite stand-in for the
module category) and reports are stamped with its bound by the callers.
"Complete" is certified constructively: a pair counts as complete only
when every universe member receives a verified special approximation on
both sides, never by an enough-projectives shortcut.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .comma import TriangularSetup, closure_h, functor_T, h_as_lambda, is_X_exact, to_triplet
from .decomp import ObjectClass, Universe, decompose
from .errors import IterationCapExceededError, PostconditionFailedError
from .homalg import ext1_space, ext1_middle_terms, is_injective, is_projective, syzygy, syzygy_orbit
from .rep import (
    Rep,
    RepMor,
    direct_sum,
    hom_basis,
    identity_mor,
    is_iso,
    kernel,
    cokernel,
    zero_mor,
    zero_rep,
)

DEFAULT_ITERATION_CAP = 16
DEFAULT_EPI_SEARCH_CAP = 2**12


class ExtTable:
    """Memoized dim Ext^1 between universe members (and ad hoc modules)."""

    def __init__(self, universe: Universe):
        self.universe = universe
        self._cache: dict = {}

    def dim(self, i: int, j: int) -> int:
        key = (i, j)
        if key not in self._cache:
            self._cache[key] = ext1_space(self.universe.members[i], self.universe.members[j]).dim
        return self._cache[key]


def left_perp(c: ObjectClass, universe: Universe) -> ObjectClass:
    """{ M in U : Ext^1(M, X) = 0 for every X in the class }."""
    members = [
        m
        for m in universe.members
        if all(ext1_space(m, x).dim == 0 for x in c.members)
    ]
    return ObjectClass(universe.algebra, tuple(members), name=f"perp({c.name})")


def right_perp(c: ObjectClass, universe: Universe) -> ObjectClass:
    """{ M in U : Ext^1(X, M) = 0 for every X in the class }."""
    members = [
        m
        for m in universe.members
        if all(ext1_space(x, m).dim == 0 for x in c.members)
    ]
    return ObjectClass(universe.algebra, tuple(members), name=f"({c.name})perp")


def is_cotorsion_pair(x: ObjectClass, y: ObjectClass, universe: Universe) -> bool:
    return left_perp(y, universe).same_members(x) and right_perp(x, universe).same_members(y)


def is_hereditary(x: ObjectClass, y: ObjectClass, budget: int = 64) -> bool | None:
    """Ext^i(X, Y) = 0 for all i >= 1, decided along syzygy orbits.

    None means a syzygy orbit failed to close within budget (unknown).
    """
    for xm in x.members:
        orbit, closed = syzygy_orbit(xm, budget)
        if not closed:
            return None
        for stage in [xm] + orbit:
            for ym in y.members:
                if ext1_space(stage, ym).dim != 0:
                    return False
    return True


def extension_closed(c: ObjectClass, class_limit: int = 512) -> tuple[bool, tuple | None]:
    """Closure under extensions, checked through realized middle terms."""
    for x3 in c.members:
        for x1 in c.members:
            for elem, middle in ext1_middle_terms(x3, x1, class_limit):
                if not c.contains(middle):
                    return False, (x1, x3, elem.class_id, middle)
    return True, None


def smd(c: ObjectClass) -> ObjectClass:
    """Close the member list under indecomposable direct summands."""
    out: list[Rep] = []
    for m in c.members:
        for part in decompose(m):
            if not any(is_iso(part, x) for x in out):
                out.append(part)
    return ObjectClass(c.algebra, tuple(out), name=f"smd({c.name})")


@dataclass(frozen=True)
class Approximation:
    """A verified special approximation 0 -> M -> Y -> X' -> 0 (or its dual)."""

    kind: str  # "preenvelope" | "precover"
    module: Rep
    arrow: RepMor  # mono M -> Y, or epi X0 -> M
    middle: Rep
    complement: Rep  # cokernel of the mono / kernel of the epi
    steps: int
    outside_universe: tuple = ()


def _block_diag_mor(parts: list[RepMor], src_sum, tgt_sum) -> RepMor:
    total = zero_mor(src_sum.rep, tgt_sum.rep)
    for f, incl, proj in zip(parts, tgt_sum.inclusions, src_sum.projections):
        total = total.add(incl.compose(f).compose(proj))
    return total


def _universal_extension(e: Rep, demands: list[tuple[Rep, "object"]]):
    """One universal extension 0 -> e -> e' -> sum of demanded modules -> 0.

    demands: pairs (U, ext1_space(U, e)) with positive dimension; every
    class-basis cocycle of every demand is realized in one pushout.
    """
    from .homalg import pushout_extension

    u_parts = []
    p_parts = []
    omega_parts = []
    epi_parts = []
    incl_parts = []
    cocycles = []
    f = e.algebra.field
    for u, space in demands:
        for ell in range(space.dim):
            unit = [f.zero()] * space.dim
            unit[ell] = f.one()
            u_parts.append(u)
            p_parts.append(space.p0)
            omega_parts.append(space.omega)
            epi_parts.append(space.epi)
            incl_parts.append(space.incl)
            cocycles.append(space.cocycle(unit))
    w_sum = direct_sum(u_parts)
    p_sum = direct_sum(p_parts)
    omega_sum = direct_sum(omega_parts)
    epi_w = _block_diag_mor(epi_parts, p_sum, w_sum)
    incl_w = _block_diag_mor(incl_parts, omega_sum, p_sum)
    cocycle_w = zero_mor(omega_sum.rep, e)
    for c, proj in zip(cocycles, omega_sum.projections):
        cocycle_w = cocycle_w.add(c.compose(proj))
    presentation = (omega_sum.rep, incl_w, p_sum.rep, epi_w)
    return pushout_extension(e, presentation, cocycle_w)


def special_preenvelope(
    m: Rep, x: ObjectClass, y: ObjectClass, cap: int = DEFAULT_ITERATION_CAP
) -> Approximation:
    """Special Y-preenvelope 0 -> M -> Y0 -> X' -> 0 for a cotorsion pair (X, Y).

    Iterated universal extensions against the X-indecomposables; stops when
    Ext^1(U, E) vanishes for every U in X.  Postconditions are verified and
    failures raised, never returned silently.
    """
    e = m
    mono = identity_mor(m)
    steps = 0
    while True:
        demands = []
        for u in x.members:
            space = ext1_space(u, e)
            if space.dim:
                demands.append((u, space))
        if not demands:
            break
        if steps >= cap:
            raise IterationCapExceededError(f"no convergence after {cap} universal extensions")
        e, incl_e, _ = _universal_extension(e, demands)
        mono = incl_e.compose(mono)
        steps += 1
    coker, _ = cokernel(mono)
    outside = []
    if not mono.is_injective():
        raise PostconditionFailedError("preenvelope map is not injective")
    for part in decompose(coker):
        if x.member_index(part) is None:
            if all(ext1_space(part, ym).dim == 0 for ym in y.members):
                outside.append(part)
            else:
                raise PostconditionFailedError(f"cokernel summand of dim {part.total_dim} outside the left class")
    for part in decompose(e):
        if y.member_index(part) is None:
            if all(ext1_space(u, part).dim == 0 for u in x.members):
                outside.append(part)
            else:
                raise PostconditionFailedError(f"envelope summand of dim {part.total_dim} outside the right class")
    return Approximation("preenvelope", m, mono, e, coker, steps, tuple(outside))


def special_precover(
    m: Rep, x: ObjectClass, y: ObjectClass, cap: int = DEFAULT_ITERATION_CAP
) -> Approximation:
    """Special X-precover 0 -> Y' -> X0 -> M -> 0; dual iteration against Y."""
    from .homalg import pushout_extension

    e = m
    epi = identity_mor(m)
    steps = 0
    f = m.algebra.field
    while True:
        pres = syzygy(e)
        omega = pres[0]
        demands = []
        for v in y.members:
            space = ext1_space(e, v, presentation=pres)
            if space.dim:
                demands.append((v, space))
        if not demands:
            break
        if steps >= cap:
            raise IterationCapExceededError(f"no convergence after {cap} universal coextensions")
        v_parts = []
        cocycles = []
        for v, space in demands:
            for ell in range(space.dim):
                unit = [f.zero()] * space.dim
                unit[ell] = f.one()
                v_parts.append(v)
                cocycles.append(space.cocycle(unit))
        w_sum = direct_sum(v_parts)
        cocycle_w = zero_mor(omega, w_sum.rep)
        for c, incl in zip(cocycles, w_sum.inclusions):
            cocycle_w = cocycle_w.add(incl.compose(c))
        e_new, _, proj = pushout_extension(w_sum.rep, (pres[0], pres[1], pres[2], pres[3]), cocycle_w)
        epi = epi.compose(proj)
        e = e_new
        steps += 1
    ker, _ = kernel(epi)
    outside = []
    if not epi.is_surjective():
        raise PostconditionFailedError("precover map is not surjective")
    for part in decompose(ker):
        if y.member_index(part) is None:
            if all(ext1_space(u, part).dim == 0 for u in x.members):
                outside.append(part)
            else:
                raise PostconditionFailedError(f"kernel summand of dim {part.total_dim} outside the right class")
    for part in decompose(e):
        if x.member_index(part) is None:
            if all(ext1_space(part, v).dim == 0 for v in y.members):
                outside.append(part)
            else:
                raise PostconditionFailedError(f"cover summand of dim {part.total_dim} outside the left class")
    return Approximation("precover", m, epi, e, ker, steps, tuple(outside))


@dataclass(frozen=True)
class CotorsionReport:
    left: ObjectClass
    right: ObjectClass
    is_pair: bool
    is_hereditary_pair: bool | None
    is_complete: bool | None
    witnesses: tuple = ()


def cotorsion_report(
    x: ObjectClass, y: ObjectClass, universe: Universe, cap: int = DEFAULT_ITERATION_CAP
) -> CotorsionReport:
    pair = is_cotorsion_pair(x, y, universe)
    hered = is_hereditary(x, y) if pair else None
    complete = None
    witnesses = []
    if pair:
        complete = True
        for m in universe.members:
            try:
                env = special_preenvelope(m, x, y, cap)
                cov = special_precover(m, x, y, cap)
                witnesses.append((m, env, cov))
            except (IterationCapExceededError, PostconditionFailedError) as exc:
                complete = False
                witnesses.append((m, exc))
    return CotorsionReport(x, y, pair, hered, complete, tuple(witnesses))


# ---------------------------------------------------------------------------
# class-shape predicates and the lifting checker


def projective_members(universe: Universe) -> ObjectClass:
    return ObjectClass(
        universe.algebra,
        tuple(m for m in universe.members if is_projective(m)),
        name="projectives",
    )


def injective_members(universe: Universe) -> ObjectClass:
    return ObjectClass(
        universe.algebra,
        tuple(m for m in universe.members if is_injective(m)),
        name="injectives",
    )


def _epis_between(m2: Rep, m3: Rep, cap: int = DEFAULT_EPI_SEARCH_CAP):
    basis = hom_basis(m2, m3)
    f = m2.algebra.field
    d = len(basis)
    if d == 0 or not f.is_finite or f.order**d > cap:
        return
    for coeffs in itertools.product(range(f.order), repeat=d):
        if all(c == 0 for c in coeffs):
            continue
        g = basis[0].scale(coeffs[0])
        for c, b in zip(coeffs[1:], basis[1:]):
            if c:
                g = g.add(b.scale(c))
        if g.is_surjective():
            yield g


def is_resolving(c: ObjectClass, universe: Universe) -> bool:
    """Contains the projectives, extension closed, kernels of epis stay inside.

    The kernel condition is checked over epimorphisms between class members
    (a bounded proxy for the additive closure).
    """
    for p in projective_members(universe).members:
        if c.member_index(p) is None:
            return False
    ok, _ = extension_closed(c)
    if not ok:
        return False
    for m2 in c.members:
        for m3 in c.members:
            for g in _epis_between(m2, m3):
                ker, _ = kernel(g)
                if not c.contains(ker):
                    return False
    return True


def is_coresolving(c: ObjectClass, universe: Universe) -> bool:
    """Dual of is_resolving: injectives inside, cokernels of monos stay inside."""
    for e in injective_members(universe).members:
        if c.member_index(e) is None:
            return False
    ok, _ = extension_closed(c)
    if not ok:
        return False
    for m1 in c.members:
        for m2 in c.members:
            basis = hom_basis(m1, m2)
            f = m1.algebra.field
            d = len(basis)
            if d == 0 or not f.is_finite or f.order**d > DEFAULT_EPI_SEARCH_CAP:
                continue
            for coeffs in itertools.product(range(f.order), repeat=d):
                if all(x == 0 for x in coeffs):
                    continue
                g = basis[0].scale(coeffs[0])
                for ccf, b in zip(coeffs[1:], basis[1:]):
                    if ccf:
                        g = g.add(b.scale(ccf))
                if g.is_injective():
                    cok, _ = cokernel(g)
                    if not c.contains(cok):
                        return False
    return True


@dataclass(frozen=True)
class CheckResult:
    name: str
    verdict: bool | None
    detail: str = ""


@dataclass(frozen=True)
class LiftingReport:
    checks: tuple[CheckResult, ...]

    @property
    def all_pass(self) -> bool:
        return all(c.verdict is True for c in self.checks)

    @property
    def any_unknown(self) -> bool:
        return any(c.verdict is None for c in self.checks)


@dataclass
class SetupUniverses:
    r: Universe
    s: Universe
    lam: Universe


def pair_class_members(setup: TriangularSetup, lam_universe: Universe, x: ObjectClass, y: ObjectClass) -> list[Rep]:
    """Universe modules whose triplet components lie in (add X, add Y)."""
    out = []
    for z in lam_universe.members:
        trip = to_triplet(setup, z)
        if x.contains(trip.a) and y.contains(trip.b):
            out.append(z)
    return out


def _same_rep_sets(a: list[Rep], b: list[Rep]) -> bool:
    if len(a) != len(b):
        return False
    used = set()
    for m in a:
        hit = None
        for k, n in enumerate(b):
            if k not in used and is_iso(m, n):
                hit = k
                break
        if hit is None:
            return False
        used.add(hit)
    return True


def check_lifting(
    setup: TriangularSetup,
    x: ObjectClass,
    y: ObjectClass,
    universes: SetupUniverses,
) -> LiftingReport:
    """The cotorsion-lifting battery over the finite universes.

    (a) the left orthogonal of <h(X, Y)> is the componentwise class;
    (b) <h(all, all)> matches the right orthogonal of (0, projectives);
    (c) <h(X-perp, Y-perp)> matches (X;Y)-perp intersect (0;P)-perp;
    (d) the pair-lifting biconditional, plus its hereditary variant;
    (e) resolving/coresolving biconditionals.
    """
    checks: list[CheckResult] = []
    if not is_X_exact(setup, x):
        return LiftingReport((CheckResult("precondition: T X-exact", False, "Ext^1_R(M, X) != 0"),))
    lam_members = list(universes.lam.members)

    # (a)
    closure = closure_h(setup, x, y, universes.lam)
    h_members = [z for z in lam_members if closure.contains(z)]
    lhs = [
        z
        for z in lam_members
        if all(ext1_space(z, w).dim == 0 for w in h_members)
    ]
    perp_x = left_perp(x, universes.r)
    perp_y = left_perp(y, universes.s)
    rhs = pair_class_members(setup, universes.lam, perp_x, perp_y)
    checks.append(
        CheckResult(
            "left orthogonal of <h(X,Y)> is componentwise",
            _same_rep_sets(lhs, rhs),
            f"|lhs|={len(lhs)} |rhs|={len(rhs)} (closure mode: {closure.mode})",
        )
    )

    # (b)
    all_r = universes.r.whole_class()
    all_s = universes.s.whole_class()
    closure_all = closure_h(setup, all_r, all_s, universes.lam)
    lhs_b = [z for z in lam_members if closure_all.contains(z)]
    proj_s = projective_members(universes.s)
    zero_padded = [h_as_lambda(setup, zero_rep(setup.r_alg), p) for p in proj_s.members]
    rhs_b = [
        z
        for z in lam_members
        if all(ext1_space(c, z).dim == 0 for c in zero_padded)
    ]
    checks.append(
        CheckResult(
            "<h(all, all)> equals right orthogonal of (0, projectives)",
            _same_rep_sets(lhs_b, rhs_b),
            f"|lhs|={len(lhs_b)} |rhs|={len(rhs_b)}",
        )
    )

    # (c)
    xperp = right_perp(x, universes.r)
    yperp = right_perp(y, universes.s)
    closure_perp = closure_h(setup, xperp, yperp, universes.lam)
    lhs_c = [z for z in lam_members if closure_perp.contains(z)]
    xy_members = pair_class_members(setup, universes.lam, x, y)
    rhs_c = [
        z
        for z in lam_members
        if all(ext1_space(c, z).dim == 0 for c in xy_members)
        and all(ext1_space(c, z).dim == 0 for c in zero_padded)
    ]
    checks.append(
        CheckResult(
            "<h(X-perp, Y-perp)> equals the double orthogonal intersection",
            _same_rep_sets(lhs_c, rhs_c),
            f"|lhs|={len(lhs_c)} |rhs|={len(rhs_c)}",
        )
    )

    # (d)
    bot_x = left_perp(x, universes.r)
    bot_y = left_perp(y, universes.s)
    pair_r = is_cotorsion_pair(bot_x, x, universes.r)
    pair_s = is_cotorsion_pair(bot_y, y, universes.s)
    componentwise = pair_class_members(setup, universes.lam, bot_x, bot_y)
    lam_left = [z for z in lam_members if all(ext1_space(z, w).dim == 0 for w in h_members)]
    lam_right = [z for z in lam_members if all(ext1_space(w, z).dim == 0 for w in componentwise)]
    pair_lam = _same_rep_sets(lam_left, componentwise) and _same_rep_sets(lam_right, h_members)
    x_closed, _ = extension_closed(x)
    y_closed, _ = extension_closed(y)
    forward = (pair_r and pair_s) == (pair_lam and x_closed and y_closed)
    checks.append(
        CheckResult(
            "pair lifting biconditional",
            forward,
            f"pairs R/S: {pair_r}/{pair_s}; glued pair: {pair_lam}; closures: {x_closed}/{y_closed}",
        )
    )
    hered_r = is_hereditary(bot_x, x) if pair_r else False
    hered_s = is_hereditary(bot_y, y) if pair_s else False
    comp_class = ObjectClass(setup.lambda_alg, tuple(componentwise), name="componentwise")
    h_class = ObjectClass(setup.lambda_alg, tuple(h_members), name="h-closure")
    hered_lam = is_hereditary(comp_class, h_class) if pair_lam else False
    if None in (hered_r, hered_s, hered_lam):
        checks.append(CheckResult("hereditary lifting biconditional", None, "syzygy orbit unresolved"))
    else:
        left_side = pair_r and pair_s and hered_r and hered_s
        right_side = pair_lam and hered_lam and x_closed and y_closed
        checks.append(
            CheckResult(
                "hereditary lifting biconditional",
                left_side == right_side,
                f"hereditary R/S/glued: {hered_r}/{hered_s}/{hered_lam}",
            )
        )

    # (e)
    res_r = is_resolving(left_perp(x, universes.r), universes.r)
    res_s = is_resolving(left_perp(y, universes.s), universes.s)
    res_lam = is_resolving(
        ObjectClass(setup.lambda_alg, tuple(componentwise), name="pair-class"), universes.lam
    )
    checks.append(
        CheckResult(
            "resolving biconditional for the componentwise class",
            res_lam == (res_r and res_s),
            f"R/S/glued: {res_r}/{res_s}/{res_lam}",
        )
    )
    if x_closed and y_closed:
        cores_r = is_coresolving(x, universes.r)
        cores_s = is_coresolving(y, universes.s)
        cores_lam = is_coresolving(h_class, universes.lam)
        checks.append(
            CheckResult(
                "coresolving biconditional for the h-closure",
                cores_lam == (cores_r and cores_s),
                f"R/S/glued: {cores_r}/{cores_s}/{cores_lam}",
            )
        )
    else:
        checks.append(CheckResult("coresolving biconditional for the h-closure", None, "classes not extension closed"))
    return LiftingReport(tuple(checks))


def is_frobenius_hull(setup: TriangularSetup, universes: SetupUniverses) -> bool:
    """Projectives coincide with injectives on both sides and T preserves injectives."""
    if not is_X_exact(setup, universes.r.whole_class()):
        raise PostconditionFailedError("T is not exact; the hull criterion needs exactness")
    for uni in (universes.r, universes.s):
        proj = projective_members(uni)
        inj = injective_members(uni)
        if not proj.same_members(inj):
            return False
    inj_r = injective_members(universes.r)
    inj_s = injective_members(universes.s)
    for i_rep in inj_r.members:
        t_rep = functor_T(setup, i_rep)
        if not inj_s.contains(t_rep):
            return False
    return True
