"""Finite-dimensional modules as quiver representations.

A Rep assigns to each vertex a space dimension and to each arrow a matrix
from the source space to the target space; a relation-free path acts by
composing its arrow matrices in walking order.  Morphisms are vertex-wise
blocks satisfying the intertwining equations.  Everything is validated on
construction: a silent non-module would corrupt every downstream Ext
computation, so invalid action matrices are a hard error.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field

from .errors import AlgebraMismatchError, InvalidRepresentationError, MorphismError, UndecidedError
from .exactla import ExactMatrix, column_space_basis, extend_to_basis, invert, kernel_basis, rank, rref, solve_matrix
from .quiver import Path, QuiverAlgebra

DEFAULT_ISO_SEARCH_LIMIT = 2**14


@dataclass(frozen=True)
class Rep:
    algebra: QuiverAlgebra
    dims: dict
    action: dict
    _skip_check: bool = dc_field(default=False, compare=False, repr=False)

    def __post_init__(self):
        dims = {v: int(self.dims.get(v, 0)) for v in self.algebra.quiver.vertices}
        object.__setattr__(self, "dims", dims)
        if any(d < 0 for d in dims.values()):
            raise InvalidRepresentationError("negative dimension")
        for a in self.algebra.quiver.arrows:
            m = self.action.get(a.name)
            if m is None:
                raise InvalidRepresentationError(f"missing action matrix for arrow {a.name}")
            if (m.rows, m.cols) != (dims[a.target], dims[a.source]):
                raise InvalidRepresentationError(
                    f"arrow {a.name}: expected {dims[a.target]}x{dims[a.source]}, got {m.rows}x{m.cols}"
                )
            if m.field != self.algebra.field:
                raise InvalidRepresentationError(f"arrow {a.name}: wrong field")
        if not self._skip_check:
            for rel in self.algebra.relations:
                if not self.path_action(rel).is_zero():
                    raise InvalidRepresentationError(f"relation {rel} acts nonzero")

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def dim_vector(self) -> tuple:
        return tuple(self.dims[v] for v in self.algebra.quiver.vertices)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def path_action(self, p: Path) -> ExactMatrix:
        """The matrix of a path: composite of its arrow actions in walking order."""
        f = self.algebra.field
        if p.is_trivial:
            return ExactMatrix.identity(f, self.dims[p.start])
        mat = self.action[p.arrows[0]]
        for name in p.arrows[1:]:
            mat = self.action[name].mul(mat)
        return mat

    def support(self) -> tuple:
        return tuple(v for v in self.algebra.quiver.vertices if self.dims[v] > 0)

    def __hash__(self):
        return hash((id(self.algebra), tuple(sorted(self.dims.items(), key=str))))


def zero_rep(alg: QuiverAlgebra) -> Rep:
    dims = {v: 0 for v in alg.quiver.vertices}
    action = {a.name: ExactMatrix.zeros(alg.field, 0, 0) for a in alg.quiver.arrows}
    return Rep(alg, dims, action)


@dataclass(frozen=True)
class RepMor:
    source: Rep
    target: Rep
    blocks: dict
    _skip_check: bool = dc_field(default=False, compare=False, repr=False)

    def __post_init__(self):
        if self.source.algebra != self.target.algebra:
            raise AlgebraMismatchError("morphism between different algebras")
        blocks = {v: self.blocks[v] for v in self.source.algebra.quiver.vertices}
        object.__setattr__(self, "blocks", blocks)
        for v, b in blocks.items():
            if (b.rows, b.cols) != (self.target.dims[v], self.source.dims[v]):
                raise MorphismError(f"block at {v}: wrong shape")
        if not self._skip_check:
            for a in self.source.algebra.quiver.arrows:
                lhs = self.target.action[a.name].mul(blocks[a.source])
                rhs = blocks[a.target].mul(self.source.action[a.name])
                if lhs != rhs:
                    raise MorphismError(f"intertwining fails at arrow {a.name}")

    def compose(self, other: "RepMor") -> "RepMor":
        """self after other (other first)."""
        if other.target is not self.source and other.target != self.source:
            raise MorphismError("composition mismatch")
        blocks = {v: self.blocks[v].mul(other.blocks[v]) for v in self.blocks}
        return RepMor(other.source, self.target, blocks, _skip_check=True)

    def add(self, other: "RepMor") -> "RepMor":
        blocks = {v: self.blocks[v].add(other.blocks[v]) for v in self.blocks}
        return RepMor(self.source, self.target, blocks, _skip_check=True)

    def sub(self, other: "RepMor") -> "RepMor":
        blocks = {v: self.blocks[v].sub(other.blocks[v]) for v in self.blocks}
        return RepMor(self.source, self.target, blocks, _skip_check=True)

    def scale(self, c) -> "RepMor":
        return RepMor(self.source, self.target, {v: b.scale(c) for v, b in self.blocks.items()}, _skip_check=True)

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks.values())

    def is_injective(self) -> bool:
        return all(rank(b) == b.cols for b in self.blocks.values())

    def is_surjective(self) -> bool:
        return all(rank(b) == b.rows for b in self.blocks.values())

    def is_isomorphism(self) -> bool:
        return all(b.rows == b.cols and rank(b) == b.rows for b in self.blocks.values())

    def flatten(self) -> tuple:
        """All block entries in vertex order; coordinates in Hom as a plain vector."""
        out = []
        for v in self.source.algebra.quiver.vertices:
            out.extend(self.blocks[v].entries)
        return tuple(out)


def identity_mor(m: Rep) -> RepMor:
    blocks = {v: ExactMatrix.identity(m.algebra.field, m.dims[v]) for v in m.algebra.quiver.vertices}
    return RepMor(m, m, blocks, _skip_check=True)


def zero_mor(m: Rep, n: Rep) -> RepMor:
    blocks = {v: ExactMatrix.zeros(m.algebra.field, n.dims[v], m.dims[v]) for v in m.algebra.quiver.vertices}
    return RepMor(m, n, blocks, _skip_check=True)


def mor_from_vector(m: Rep, n: Rep, vec, skip_check=True) -> RepMor:
    """Inverse of RepMor.flatten for a given source/target pair."""
    f = m.algebra.field
    blocks = {}
    pos = 0
    for v in m.algebra.quiver.vertices:
        r, c = n.dims[v], m.dims[v]
        blocks[v] = ExactMatrix(f, r, c, tuple(vec[pos : pos + r * c]))
        pos += r * c
    return RepMor(m, n, blocks, _skip_check=skip_check)


def hom_basis(m: Rep, n: Rep) -> list[RepMor]:
    """A basis of Hom(m, n): kernel of the stacked intertwining system."""
    if m.algebra != n.algebra:
        raise AlgebraMismatchError("Hom between different algebras")
    f = m.algebra.field
    verts = m.algebra.quiver.vertices
    offsets = {}
    nvars = 0
    for v in verts:
        offsets[v] = nvars
        nvars += n.dims[v] * m.dims[v]
    if nvars == 0:
        return []
    rows = []
    z = f.zero()
    for a in m.algebra.quiver.arrows:
        na, ma = n.action[a.name], m.action[a.name]
        i, j = a.source, a.target
        # equation block: n.action[a] * f_i - f_j * m.action[a] = 0
        for r in range(n.dims[j]):
            for c in range(m.dims[i]):
                row = [z] * nvars
                for k in range(n.dims[i]):
                    coeff = na.entry(r, k)
                    if coeff != z:
                        row[offsets[i] + k * m.dims[i] + c] = f.add(row[offsets[i] + k * m.dims[i] + c], coeff)
                for k in range(m.dims[j]):
                    coeff = ma.entry(k, c)
                    if coeff != z:
                        idx = offsets[j] + r * m.dims[j] + k
                        row[idx] = f.sub(row[idx], coeff)
                if any(x != z for x in row):
                    rows.append(row)
    if not rows:
        # no constraints: all block tuples are morphisms
        basis_vectors = []
        for k in range(nvars):
            vec = [z] * nvars
            vec[k] = f.one()
            basis_vectors.append(tuple(vec))
    else:
        mat = ExactMatrix.from_rows(f, rows)
        basis_vectors = kernel_basis(mat)
    return [mor_from_vector(m, n, vec) for vec in basis_vectors]


def hom_dim(m: Rep, n: Rep) -> int:
    return len(hom_basis(m, n))


def mor_coordinates(basis: list[RepMor], g: RepMor) -> tuple | None:
    """Coordinates of g in the span of basis, or None if outside it."""
    if not basis:
        return () if g.is_zero() else None
    f = g.source.algebra.field
    cols = [list(b.flatten()) for b in basis]
    mat = ExactMatrix.from_columns(f, cols, len(cols[0]))
    from .exactla import solve

    return solve(mat, list(g.flatten()))


def kernel(fmor: RepMor) -> tuple[Rep, RepMor]:
    """Vertex-wise kernel with induced action; returns (K, inclusion)."""
    m = fmor.source
    f = m.algebra.field
    incl_blocks = {}
    kdims = {}
    for v in m.algebra.quiver.vertices:
        basis = kernel_basis(fmor.blocks[v])
        kdims[v] = len(basis)
        incl_blocks[v] = ExactMatrix.from_columns(f, basis, m.dims[v])
    action = {}
    for a in m.algebra.quiver.arrows:
        rhs = m.action[a.name].mul(incl_blocks[a.source])
        sol = solve_matrix(incl_blocks[a.target], rhs)
        if sol is None:
            raise InvalidRepresentationError("kernel is not a subrepresentation (internal error)")
        action[a.name] = sol
    k = Rep(m.algebra, kdims, action)
    return k, RepMor(k, m, incl_blocks, _skip_check=True)


def image(fmor: RepMor) -> tuple[Rep, RepMor]:
    """Vertex-wise image with induced action; returns (Im, inclusion into target)."""
    n = fmor.target
    f = n.algebra.field
    incl_blocks = {}
    idims = {}
    for v in n.algebra.quiver.vertices:
        basis = column_space_basis(fmor.blocks[v])
        idims[v] = len(basis)
        incl_blocks[v] = ExactMatrix.from_columns(f, basis, n.dims[v])
    action = {}
    for a in n.algebra.quiver.arrows:
        rhs = n.action[a.name].mul(incl_blocks[a.source])
        sol = solve_matrix(incl_blocks[a.target], rhs)
        if sol is None:
            raise InvalidRepresentationError("image is not a subrepresentation (internal error)")
        action[a.name] = sol
    im = Rep(n.algebra, idims, action)
    return im, RepMor(im, n, incl_blocks, _skip_check=True)


def cokernel(fmor: RepMor) -> tuple[Rep, RepMor]:
    """Vertex-wise cokernel with induced action; returns (Q, projection)."""
    n = fmor.target
    f = n.algebra.field
    proj_blocks = {}
    sect_blocks = {}
    qdims = {}
    for v in n.algebra.quiver.vertices:
        img = column_space_basis(fmor.blocks[v])
        complement = extend_to_basis(f, img, n.dims[v])
        qdims[v] = len(complement)
        std = []
        for k in complement:
            e = [f.zero()] * n.dims[v]
            e[k] = f.one()
            std.append(tuple(e))
        full = ExactMatrix.from_columns(f, img + std, n.dims[v])
        inv = invert(full)
        if inv is None:
            raise InvalidRepresentationError("basis completion failed (internal error)")
        # projection = last rows of the inverse change-of-basis
        proj_rows = [inv.row(len(img) + t) for t in range(len(complement))]
        proj_blocks[v] = (
            ExactMatrix.from_rows(f, [list(r) for r in proj_rows])
            if complement
            else ExactMatrix.zeros(f, 0, n.dims[v])
        )
        sect_blocks[v] = ExactMatrix.from_columns(f, std, n.dims[v])
    action = {}
    for a in n.algebra.quiver.arrows:
        action[a.name] = proj_blocks[a.target].mul(n.action[a.name]).mul(sect_blocks[a.source])
    q = Rep(n.algebra, qdims, action)
    return q, RepMor(n, q, proj_blocks, _skip_check=True)


@dataclass(frozen=True)
class DirectSum:
    rep: Rep
    inclusions: tuple[RepMor, ...]
    projections: tuple[RepMor, ...]


def direct_sum(parts: list[Rep], algebra: QuiverAlgebra | None = None) -> DirectSum:
    """Block-diagonal sum with its canonical inclusions and projections."""
    if not parts:
        if algebra is None:
            raise ValueError("empty sum needs an explicit algebra")
        return DirectSum(zero_rep(algebra), (), ())
    alg = parts[0].algebra
    if any(p.algebra != alg for p in parts):
        raise AlgebraMismatchError("direct sum across algebras")
    f = alg.field
    dims = {v: sum(p.dims[v] for p in parts) for v in alg.quiver.vertices}
    offsets = []
    running = {v: 0 for v in alg.quiver.vertices}
    for p in parts:
        offsets.append(dict(running))
        for v in alg.quiver.vertices:
            running[v] += p.dims[v]
    action = {}
    for a in alg.quiver.arrows:
        rows_n, cols_n = dims[a.target], dims[a.source]
        data = [[f.zero()] * cols_n for _ in range(rows_n)]
        for p, off in zip(parts, offsets):
            block = p.action[a.name]
            r0, c0 = off[a.target], off[a.source]
            for i in range(block.rows):
                for j in range(block.cols):
                    data[r0 + i][c0 + j] = block.entry(i, j)
        action[a.name] = (
            ExactMatrix.from_rows(f, data) if rows_n and cols_n else ExactMatrix.zeros(f, rows_n, cols_n)
        )
    total = Rep(alg, dims, action, _skip_check=True)
    incls, projs = [], []
    for p, off in zip(parts, offsets):
        iblocks, pblocks = {}, {}
        for v in alg.quiver.vertices:
            imat = [[f.zero()] * p.dims[v] for _ in range(dims[v])]
            for t in range(p.dims[v]):
                imat[off[v] + t][t] = f.one()
            iblocks[v] = (
                ExactMatrix.from_rows(f, imat) if dims[v] and p.dims[v] else ExactMatrix.zeros(f, dims[v], p.dims[v])
            )
            pblocks[v] = iblocks[v].transpose()
        incls.append(RepMor(p, total, iblocks, _skip_check=True))
        projs.append(RepMor(total, p, pblocks, _skip_check=True))
    return DirectSum(total, tuple(incls), tuple(projs))


def stack_mors_to_common_target(parts: list[RepMor], sum_source: DirectSum) -> RepMor:
    """Combine f_k: M_k -> N into one morphism from the direct sum of the M_k."""
    target = parts[0].target
    combined = zero_mor(sum_source.rep, target)
    for fmor, proj in zip(parts, sum_source.projections):
        combined = combined.add(fmor.compose(proj))
    return combined


def stack_mors_from_common_source(parts: list[RepMor], sum_target: DirectSum) -> RepMor:
    """Combine f_k: M -> N_k into one morphism into the direct sum of the N_k."""
    source = parts[0].source
    combined = zero_mor(source, sum_target.rep)
    for fmor, incl in zip(parts, sum_target.inclusions):
        combined = combined.add(incl.compose(fmor))
    return combined


def _quick_invariants(m: Rep) -> tuple:
    return (
        m.dim_vector(),
        tuple(rank(m.action[a.name]) for a in m.algebra.quiver.arrows),
    )


def is_iso(m: Rep, n: Rep, search_limit: int = DEFAULT_ISO_SEARCH_LIMIT, seed: int = 0) -> bool:
    """Certified isomorphism test.

    Cheap invariants first, then a complete search for an invertible
    element in the span of a Hom basis when the field is small enough;
    beyond the limit, randomized sampling with UndecidedError instead of
    a guess.
    """
    if m.algebra != n.algebra:
        raise AlgebraMismatchError("iso test across algebras")
    if m.dim_vector() != n.dim_vector():
        return False
    if m.total_dim == 0:
        return True
    if _quick_invariants(m) != _quick_invariants(n):
        return False
    basis = hom_basis(m, n)
    if not basis:
        return False
    f = m.algebra.field
    d = len(basis)
    if f.is_finite and f.order**d <= search_limit:
        for coeffs in itertools.product(range(f.order), repeat=d):
            if all(c == 0 for c in coeffs):
                continue
            cand = basis[0].scale(coeffs[0])
            for c, b in zip(coeffs[1:], basis[1:]):
                if c:
                    cand = cand.add(b.scale(c))
            if cand.is_isomorphism():
                return True
        return False
    # randomized fallback: certify only a positive answer
    rng = random.Random(seed)
    trials = 256
    for _ in range(trials):
        if f.is_finite:
            coeffs = [rng.randrange(f.order) for _ in range(d)]
        else:
            coeffs = [rng.randint(-3, 3) for _ in range(d)]
        cand = basis[0].scale(coeffs[0])
        for c, b in zip(coeffs[1:], basis[1:]):
            cand = cand.add(b.scale(c))
        if cand.is_isomorphism():
            return True
    if hom_dim(m, m) != hom_dim(n, n) or hom_dim(m, n) != hom_dim(n, m):
        return False
    raise UndecidedError("iso search budget exhausted without certificate")


def find_iso(m: Rep, n: Rep, search_limit: int = DEFAULT_ISO_SEARCH_LIMIT) -> RepMor | None:
    """An explicit isomorphism m -> n, or None when certified non-isomorphic."""
    if m.algebra != n.algebra:
        raise AlgebraMismatchError("iso search across algebras")
    if m.dim_vector() != n.dim_vector():
        return None
    if m.total_dim == 0:
        return identity_mor(m) if m is n else RepMor(m, n, {v: ExactMatrix.zeros(m.algebra.field, 0, 0) for v in m.algebra.quiver.vertices}, _skip_check=True)
    basis = hom_basis(m, n)
    if not basis:
        return None
    f = m.algebra.field
    d = len(basis)
    if not f.is_finite or f.order**d > search_limit:
        raise UndecidedError("explicit iso search beyond budget")
    for coeffs in itertools.product(range(f.order), repeat=d):
        if all(c == 0 for c in coeffs):
            continue
        cand = basis[0].scale(coeffs[0])
        for c, b in zip(coeffs[1:], basis[1:]):
            if c:
                cand = cand.add(b.scale(c))
        if cand.is_isomorphism():
            return cand
    return None
