"""Projective covers, injective envelopes, Ext groups, and homological dimensions.

Ext^1(M, N) is computed from the minimal presentation 0 -> omega M -> P0 -> M -> 0
as the cokernel of Hom(P0, N) -> Hom(omega M, N); higher Ext by dimension
shifting along syzygies.  Extension classes are realized as middle terms by
pushing 0 -> omega M -> P0 -> M -> 0 out along a cocycle.  Infinite pd/id is
only ever reported with a periodicity certificate (a repeated (co)syzygy up
to isomorphism); past the budget the answer is unknown, never a guess.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import ClassCountExceededError, InvalidRepresentationError, PostconditionFailedError
from .exactla import ExactMatrix, column_space_basis, extend_to_basis, kernel_basis, rank, solve_matrix
from .quiver import QuiverAlgebra, standard_module
from .rep import (
    DirectSum,
    Rep,
    RepMor,
    cokernel,
    direct_sum,
    hom_basis,
    identity_mor,
    is_iso,
    kernel,
    mor_coordinates,
    zero_mor,
    zero_rep,
)

DEFAULT_DIMENSION_BUDGET = 64
DEFAULT_CLASS_LIMIT = 512


def radical_dims(m: Rep) -> dict:
    """Vertex-wise dimension of rad M = sum of arrow images."""
    out = {}
    for v in m.algebra.quiver.vertices:
        incoming = [m.action[a.name] for a in m.algebra.quiver.arrows_into(v)]
        cols = []
        for mat in incoming:
            cols.extend(mat.column(j) for j in range(mat.cols))
        if cols:
            out[v] = rank(ExactMatrix.from_columns(m.algebra.field, cols, m.dims[v]))
        else:
            out[v] = 0
    return out


def top_sections(m: Rep) -> dict:
    """For each vertex, basis vectors of M_v spanning a complement of rad M_v."""
    f = m.algebra.field
    out = {}
    for v in m.algebra.quiver.vertices:
        incoming = [m.action[a.name] for a in m.algebra.quiver.arrows_into(v)]
        cols = []
        for mat in incoming:
            cols.extend(mat.column(j) for j in range(mat.cols))
        chosen = extend_to_basis(f, cols, m.dims[v])
        vecs = []
        for k in chosen:
            e = [f.zero()] * m.dims[v]
            e[k] = f.one()
            vecs.append(tuple(e))
        out[v] = vecs
    return out


def socle_vectors(m: Rep) -> dict:
    """For each vertex, a basis of soc M_v = joint kernel of the outgoing arrows."""
    f = m.algebra.field
    out = {}
    for v in m.algebra.quiver.vertices:
        outgoing = [m.action[a.name] for a in m.algebra.quiver.arrows_from(v)]
        if not outgoing:
            out[v] = [
                tuple(f.one() if i == k else f.zero() for i in range(m.dims[v]))
                for k in range(m.dims[v])
            ]
            continue
        stacked = outgoing[0]
        for mat in outgoing[1:]:
            stacked = stacked.vstack(mat)
        out[v] = kernel_basis(stacked)
    return out


def projective_cover(m: Rep) -> tuple[Rep, RepMor]:
    """(P, epi) with P the projective cover built from top M."""
    alg = m.algebra
    f = alg.field
    tops = top_sections(m)
    pieces = []
    generators = []  # (vertex, generator vector in M_vertex)
    for v in alg.quiver.vertices:
        for vec in tops[v]:
            pieces.append(standard_module(alg, "projective", v))
            generators.append((v, vec))
    if not pieces:
        z = zero_rep(alg)
        return z, zero_mor(z, m)
    ds = direct_sum(pieces)
    blocks = {
        w: [[f.zero()] * ds.rep.dims[w] for _ in range(m.dims[w])] for w in alg.quiver.vertices
    }
    col_offset = {w: 0 for w in alg.quiver.vertices}
    for piece, (v, vec) in zip(pieces, generators):
        paths_by_vertex = {w: [p for p in alg.paths_from(v) if p.end == w] for w in alg.quiver.vertices}
        for w in alg.quiver.vertices:
            for local_col, path in enumerate(paths_by_vertex[w]):
                target_vec = m.path_action(path).matvec(vec)
                for i, x in enumerate(target_vec):
                    blocks[w][i][col_offset[w] + local_col] = x
        for w in alg.quiver.vertices:
            col_offset[w] += piece.dims[w]
    epi_blocks = {
        w: (
            ExactMatrix.from_rows(f, blocks[w])
            if m.dims[w] and ds.rep.dims[w]
            else ExactMatrix.zeros(f, m.dims[w], ds.rep.dims[w])
        )
        for w in alg.quiver.vertices
    }
    epi = RepMor(ds.rep, m, epi_blocks)
    if not epi.is_surjective():
        raise PostconditionFailedError("projective cover is not surjective")
    return ds.rep, epi


def injective_envelope(m: Rep) -> tuple[Rep, RepMor]:
    """(E, mono) with E the injective envelope built from soc M."""
    alg = m.algebra
    f = alg.field
    socs = socle_vectors(m)
    pieces = []
    functionals = []  # (vertex, functional row on M_vertex)
    for v in alg.quiver.vertices:
        basis = socs[v]
        if not basis:
            continue
        mat = ExactMatrix.from_columns(f, basis, m.dims[v])
        # left inverse: rows are functionals dual to the socle basis
        left = solve_matrix(mat.transpose(), ExactMatrix.identity(f, len(basis)))
        if left is None:
            raise PostconditionFailedError("socle basis has no dual (internal error)")
        xi = left.transpose()
        for k in range(len(basis)):
            pieces.append(standard_module(alg, "injective", v))
            functionals.append((v, xi.row(k)))
    if not pieces:
        z = zero_rep(alg)
        return z, zero_mor(m, z)
    ds = direct_sum(pieces)
    blocks = {
        w: [[f.zero()] * m.dims[w] for _ in range(ds.rep.dims[w])] for w in alg.quiver.vertices
    }
    row_offset = {w: 0 for w in alg.quiver.vertices}
    for piece, (v, xi) in zip(pieces, functionals):
        paths_by_vertex = {w: [p for p in alg.paths_into(v) if p.start == w] for w in alg.quiver.vertices}
        for w in alg.quiver.vertices:
            for local_row, path in enumerate(paths_by_vertex[w]):
                # row = xi . (action of path): functional m |-> xi(path . m)
                pa = m.path_action(path)
                row = [
                    _row_dot(f, xi, pa.column(j)) for j in range(m.dims[w])
                ]
                for j, x in enumerate(row):
                    blocks[w][row_offset[w] + local_row][j] = x
        for w in alg.quiver.vertices:
            row_offset[w] += piece.dims[w]
    mono_blocks = {
        w: (
            ExactMatrix.from_rows(f, blocks[w])
            if ds.rep.dims[w] and m.dims[w]
            else ExactMatrix.zeros(f, ds.rep.dims[w], m.dims[w])
        )
        for w in alg.quiver.vertices
    }
    mono = RepMor(m, ds.rep, mono_blocks)
    if not mono.is_injective():
        raise PostconditionFailedError("injective envelope map is not injective")
    return ds.rep, mono


def _row_dot(f, row, col):
    acc = f.zero()
    for a, b in zip(row, col):
        acc = f.add(acc, f.mul(a, b))
    return acc


_presentation_cache: dict = {}


def syzygy(m: Rep) -> tuple[Rep, RepMor, Rep, RepMor]:
    """(omega, incl, P0, epi): the minimal presentation of m (memoized)."""
    hit = _presentation_cache.get(id(m))
    if hit is not None and hit[0] is m:
        return hit[1]
    p0, epi = projective_cover(m)
    om, incl = kernel(epi)
    pres = (om, incl, p0, epi)
    if len(_presentation_cache) > 4096:
        _presentation_cache.clear()
    _presentation_cache[id(m)] = (m, pres)
    return pres


def cosyzygy(m: Rep) -> tuple[Rep, RepMor, Rep, RepMor]:
    """(coker, proj, E0, mono): the minimal copresentation of m."""
    e0, mono = injective_envelope(m)
    co, proj = cokernel(mono)
    return co, proj, e0, mono


def is_projective(m: Rep) -> bool:
    om, _, _, _ = syzygy(m)
    return om.is_zero()


def is_injective(m: Rep) -> bool:
    co, _, _, _ = cosyzygy(m)
    return co.is_zero()


@dataclass(frozen=True)
class Resolution:
    """A finite stretch of a minimal (projective or injective) resolution."""

    direction: str  # "projective" | "injective"
    terms: tuple[Rep, ...]
    maps: tuple[RepMor, ...]
    syzygies: tuple[Rep, ...]

    def check_exact(self) -> bool:
        for f, g in zip(self.maps, self.maps[1:]):
            # consecutive composites vanish: g then f along the resolution
            comp = f.compose(g) if self.direction == "projective" else g.compose(f)
            if not comp.is_zero():
                return False
        return True


def projective_resolution(m: Rep, length: int) -> Resolution:
    """Terms P_0 .. P_length of the minimal projective resolution."""
    terms = []
    maps = []
    syzygies = []
    current = m
    prev_incl = None
    for _ in range(length + 1):
        om, incl, p0, epi = syzygy(current)
        terms.append(p0)
        maps.append(prev_incl.compose(epi) if prev_incl is not None else epi)
        syzygies.append(om)
        current = om
        prev_incl = incl
        if om.is_zero():
            break
    return Resolution("projective", tuple(terms), tuple(maps), tuple(syzygies))


@dataclass(frozen=True)
class Ext1Space:
    """Ext^1(M, N) presented on the minimal presentation of M."""

    m: Rep
    n: Rep
    p0: Rep
    epi: RepMor
    omega: Rep
    incl: RepMor
    hom_omega: tuple[RepMor, ...]
    restriction_rank: int
    class_coords: tuple[tuple, ...]  # coordinates (in hom_omega) of class representatives

    @property
    def dim(self) -> int:
        return len(self.class_coords)

    def cocycle(self, coeffs) -> RepMor:
        """The cocycle with the given coordinates in the class basis."""
        f = self.m.algebra.field
        total = zero_mor(self.omega, self.n)
        for c, coords in zip(coeffs, self.class_coords):
            if c == f.zero():
                continue
            part = zero_mor(self.omega, self.n)
            for x, b in zip(coords, self.hom_omega):
                if x != f.zero():
                    part = part.add(b.scale(x))
            total = total.add(part.scale(c))
        return total


def ext1_space(m: Rep, n: Rep, presentation: tuple | None = None) -> Ext1Space:
    om, incl, p0, epi = presentation if presentation is not None else syzygy(m)
    hom_om = hom_basis(om, n)
    f = m.algebra.field
    if not hom_om:
        return Ext1Space(m, n, p0, epi, om, incl, (), 0, ())
    hom_p = hom_basis(p0, n)
    restricted = []
    for g in hom_p:
        coords = mor_coordinates(hom_om, g.compose(incl))
        if coords is None:
            raise InvalidRepresentationError("restriction left the Hom space (internal error)")
        restricted.append(coords)
    dim_h = len(hom_om)
    if restricted:
        img = ExactMatrix.from_columns(f, restricted, dim_h)
        img_basis = column_space_basis(img)
    else:
        img_basis = []
    complement = extend_to_basis(f, img_basis, dim_h)
    class_coords = []
    for k in complement:
        e = [f.zero()] * dim_h
        e[k] = f.one()
        class_coords.append(tuple(e))
    return Ext1Space(m, n, p0, epi, om, incl, tuple(hom_om), len(img_basis), tuple(class_coords))


def ext_dim(i: int, m: Rep, n: Rep) -> int:
    """dim Ext^i(M, N), i >= 1, by dimension shifting along minimal syzygies."""
    if i < 1:
        raise ValueError("ext_dim needs i >= 1")
    current = m
    for _ in range(i - 1):
        current, _, _, _ = syzygy(current)
        if current.is_zero():
            return 0
    if current.is_zero():
        return 0
    return ext1_space(current, n).dim


@dataclass(frozen=True)
class ExtElement:
    m: Rep
    n: Rep
    cocycle: RepMor
    class_id: tuple


def pushout_extension(
    n: Rep,
    presentation: tuple[Rep, RepMor, Rep, RepMor],
    cocycle: RepMor,
) -> tuple[Rep, RepMor, RepMor]:
    """Push 0 -> omega -> P0 -> M -> 0 out along cocycle: omega -> N.

    Returns (E, incl: N -> E, proj: E -> M), a short exact sequence.
    """
    om, incl, p0, epi = presentation
    m = epi.target
    f = m.algebra.field
    pair = direct_sum([n, p0])
    # graph map omega -> N (+) P0, w |-> (cocycle w, -incl w)
    graph = pair.inclusions[0].compose(cocycle).add(pair.inclusions[1].compose(incl).scale(f.neg(f.one())))
    e, proj_to_e = cokernel(graph)
    incl_e = proj_to_e.compose(pair.inclusions[0])
    # E -> M induced by (0, epi): kill the N part via a section of proj_to_e
    blocks = {}
    for v in m.algebra.quiver.vertices:
        pmat = proj_to_e.blocks[v]
        zero_then_epi = ExactMatrix.zeros(f, m.dims[v], n.dims[v]).hstack(epi.blocks[v])
        sol = solve_matrix(pmat.transpose(), zero_then_epi.transpose())
        if sol is None:
            raise InvalidRepresentationError("pushout projection not induced (internal error)")
        blocks[v] = sol.transpose()
    proj_e = RepMor(e, m, blocks)
    if not incl_e.is_injective() or not proj_e.is_surjective():
        raise PostconditionFailedError("pushout failed exactness")
    if not proj_e.compose(incl_e).is_zero():
        raise PostconditionFailedError("pushout composite nonzero")
    if e.total_dim != n.total_dim + m.total_dim:
        raise PostconditionFailedError("pushout dimension mismatch")
    return e, incl_e, proj_e


def ext1_middle_terms(
    m: Rep, n: Rep, class_limit: int = DEFAULT_CLASS_LIMIT
) -> list[tuple[ExtElement, Rep]]:
    """One middle term per Ext^1 class (the zero class gives the split term)."""
    space = ext1_space(m, n)
    f = m.algebra.field
    d = space.dim
    if d == 0:
        split = direct_sum([n, m]).rep
        return [(ExtElement(m, n, zero_mor(space.omega, n), ()), split)]
    if not f.is_finite or f.order**d > class_limit:
        raise ClassCountExceededError(f"{f.order if f.is_finite else 'inf'}^{d} classes exceed the limit")
    out = []
    presentation = (space.omega, space.incl, space.p0, space.epi)
    for coeffs in itertools.product(range(f.order), repeat=d):
        co = space.cocycle([f.coerce(c) for c in coeffs])
        e, _, _ = pushout_extension(n, presentation, co)
        out.append((ExtElement(m, n, co, tuple(coeffs)), e))
    return out


@dataclass(frozen=True)
class HomDim:
    status: str  # "finite" | "infinite" | "unknown"
    value: int | None = None
    certificate: tuple | None = None  # (first_index, repeat_index) for infinite

    def is_finite(self) -> bool:
        return self.status == "finite"


def homological_dimension(kind: str, m: Rep, budget: int = DEFAULT_DIMENSION_BUDGET) -> HomDim:
    """pd or id of m; "fd" delegates to pd (flat = projective at this scale).

    Infinite is reported only with a periodicity certificate: some
    (co)syzygy isomorphic to an earlier one.
    """
    if kind == "fd":
        kind = "pd"
    if kind not in ("pd", "id"):
        raise ValueError(f"unknown dimension kind {kind!r}")
    step = syzygy if kind == "pd" else cosyzygy
    chain = [m]
    current = m
    for n in range(budget):
        if current.is_zero():
            return HomDim("finite", n if n > 0 else 0)
        nxt = step(current)[0]
        if nxt.is_zero():
            return HomDim("finite", n)
        for j, earlier in enumerate(chain):
            if earlier.total_dim == nxt.total_dim and is_iso(earlier, nxt):
                return HomDim("infinite", None, (j, len(chain)))
        chain.append(nxt)
        current = nxt
    return HomDim("unknown")


def syzygy_orbit(m: Rep, budget: int = DEFAULT_DIMENSION_BUDGET) -> tuple[list[Rep], bool]:
    """Syzygies omega^1 m, omega^2 m, ... until zero or a repeat; flag = closed."""
    orbit: list[Rep] = []
    seen = [m]
    current = m
    for _ in range(budget):
        nxt = syzygy(current)[0]
        if nxt.is_zero():
            return orbit, True
        if any(is_iso(nxt, earlier) for earlier in seen if earlier.total_dim == nxt.total_dim):
            return orbit + [nxt], True
        orbit.append(nxt)
        seen.append(nxt)
        current = nxt
    return orbit, False
