"""Quivers, monomial admissible ideals, and path-basis enumeration.

Composition is left to right: in a product ``p		q`` the path ``p`` is walked
first, so ``pq`` is defined when ``p`` ends where ``q`` starts.  A
representation assigns to an arrow a: i -> j a matrix mapping the space at
``i`` into the space at ``j``; the composite path ``ab`` therefore acts as
act(b) . act(a).  Only monomial relations are supported: enforcing a
general linear-combination ideal would need noncommutative Groebner bases,
which is out of scope, so such input is rejected.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .errors import MalformedPathError, NonAdmissibleError
from .exactla import Field

DEFAULT_PATH_LENGTH_BOUND = 64


@dataclass(frozen=True)
class Arrow:
    name: str
    source: object
    target: object


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise MalformedPathError("duplicate vertex ids")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise MalformedPathError("duplicate arrow ids")
        vset = set(self.vertices)
        for a in self.arrows:
            if a.source not in vset or a.target not in vset:
                raise MalformedPathError(f"arrow {a.name} has endpoints outside the vertex set")

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(name)

    def arrows_from(self, v) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def arrows_into(self, v) -> list[Arrow]:
        return [a for a in self.arrows if a.target == v]

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, tuple(Arrow(a.name, a.target, a.source) for a in self.arrows))


@dataclass(frozen=True)
class Path:
    """A path in a quiver: start vertex, arrow names in walking order, end vertex."""

    start: object
    arrows: tuple[str, ...]
    end: object

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    def contains_word(self, word: tuple[str, ...]) -> bool:
        n, m = len(self.arrows), len(word)
        return any(self.arrows[i : i + m] == word for i in range(n - m + 1))

    def __str__(self) -> str:
        if self.is_trivial:
            return f"e_{self.start}"
        return "*".join(self.arrows)


def trivial_path(v) -> Path:
    return Path(v, (), v)


def make_path(quiver: Quiver, arrow_names: Sequence[str]) -> Path:
    """Build a path from composable arrow names; raises on malformed input."""
    if not arrow_names:
        raise MalformedPathError("empty arrow list; use trivial_path for a vertex")
    arrows = []
    for name in arrow_names:
        try:
            arrows.append(quiver.arrow(name))
        except KeyError:
            raise MalformedPathError(f"unknown arrow {name!r}") from None
    for a, b in zip(arrows, arrows[1:]):
        if a.target != b.source:
            raise MalformedPathError(f"arrows {a.name} and {b.name} do not compose")
    return Path(arrows[0].source, tuple(a.name for a in arrows), arrows[-1].target)


@dataclass(frozen=True)
class QuiverAlgebra:
    """A bound path algebra kQ/I with monomial relations and enumerated basis."""

    field: Field
    quiver: Quiver
    relations: tuple[Path, ...]
    path_basis: tuple[Path, ...]
    _basis_index: dict = dc_field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if not self._basis_index:
            self._basis_index.update({(p.start, p.arrows): k for k, p in enumerate(self.path_basis)})

    @property
    def dim(self) -> int:
        return len(self.path_basis)

    def basis_index(self, p: Path) -> int:
        return self._basis_index[(p.start, p.arrows)]

    def in_basis(self, p: Path) -> bool:
        return (p.start, p.arrows) in self._basis_index

    def paths_from(self, v) -> list[Path]:
        return [p for p in self.path_basis if p.start == v]

    def paths_into(self, v) -> list[Path]:
        return [p for p in self.path_basis if p.end == v]

    def compose(self, p: Path, q: Path) -> Path | None:
        """Product pq (walk p, then q); None when it lies in the ideal."""
        if p.end != q.start:
            raise MalformedPathError("paths do not compose")
        word = p.arrows + q.arrows
        cand = Path(p.start, word, q.end)
        for rel in self.relations:
            if cand.contains_word(rel.arrows):
                return None
        return cand

    def opposite(self) -> "QuiverAlgebra":
        """The opposite algebra: arrows and relation words reversed."""
        op_quiver = self.quiver.opposite()
        op_rels = [make_path(op_quiver, list(reversed(r.arrows))) for r in self.relations]
        return build_algebra(self.field, op_quiver, op_rels)

    def __hash__(self):
        return hash((self.field, self.quiver, self.relations))


def build_algebra(
    field: Field,
    quiver: Quiver,
    relations: Sequence[Path | Sequence[str]],
    max_path_length: int = DEFAULT_PATH_LENGTH_BOUND,
) -> QuiverAlgebra:
    """Enumerate the path basis of kQ/I by BFS, pruning relation subwords.

    Raises NonAdmissibleError when a relation-free path exceeds
    ``max_path_length`` (the ideal is not admissible), MalformedPathError
    on bad relation input.
    """
    rels: list[Path] = []
    for r in relations:
        p = r if isinstance(r, Path) else make_path(quiver, list(r))
        if p.length < 2:
            raise MalformedPathError(f"relation {p} has length < 2")
        rels.append(p)
    rel_words = [r.arrows for r in rels]

    basis: list[Path] = [trivial_path(v) for v in quiver.vertices]
    frontier = list(basis)
    while frontier:
        new_frontier = []
        for p in frontier:
            for a in quiver.arrows_from(p.end):
                word = p.arrows + (a.name,)
                # p is already relation-free, so only suffixes can die
                if any(word[len(word) - len(w) :] == w for w in rel_words):
                    continue
                q = Path(p.start, word, a.target)
                if q.length > max_path_length:
                    raise NonAdmissibleError(
                        f"path of length > {max_path_length} survives the relations; "
                        "the ideal is not admissible within the bound"
                    )
                new_frontier.append(q)
        basis.extend(new_frontier)
        frontier = new_frontier
    basis.sort(key=_path_sort_key(quiver))
    return QuiverAlgebra(field, quiver, tuple(rels), tuple(basis))


def _path_sort_key(quiver: Quiver):
    vorder = {v: k for k, v in enumerate(quiver.vertices)}
    aorder = {a.name: k for k, a in enumerate(quiver.arrows)}

    def key(p: Path):
        return (p.length, vorder[p.start], tuple(aorder[a] for a in p.arrows))

    return key


def standard_module(alg: QuiverAlgebra, which: str, vertex):
    """The simple, indecomposable projective, or indecomposable injective at a vertex.

    P(i) has basis the relation-free paths starting at i (arrows act by
    concatenation); E(i) is dual to the opposite projective, with basis the
    paths ending at i.
    """
    from .rep import Rep
    from .exactla import ExactMatrix

    def to_matrix(mat, nrows, ncols):
        if nrows == 0 or ncols == 0:
            return ExactMatrix.zeros(f, nrows, ncols)
        return ExactMatrix.from_rows(f, mat)

    if vertex not in alg.quiver.vertices:
        raise KeyError(f"unknown vertex {vertex!r}")
    f = alg.field
    if which == "simple":
        dims = {v: (1 if v == vertex else 0) for v in alg.quiver.vertices}
        action = {
            a.name: ExactMatrix.zeros(f, dims[a.target], dims[a.source]) for a in alg.quiver.arrows
        }
        return Rep(alg, dims, action)

    if which == "projective":
        by_vertex = {v: [p for p in alg.paths_from(vertex) if p.end == v] for v in alg.quiver.vertices}
        dims = {v: len(by_vertex[v]) for v in alg.quiver.vertices}
        action = {}
        for a in alg.quiver.arrows:
            src, tgt = by_vertex[a.source], by_vertex[a.target]
            mat = [[f.zero()] * len(src) for _ in range(len(tgt))]
            for j, p in enumerate(src):
                q = alg.compose(p, Path(a.source, (a.name,), a.target))
                if q is not None:
                    mat[tgt.index(q)][j] = f.one()
            action[a.name] = to_matrix(mat, len(tgt), len(src))
        return Rep(alg, dims, action)

    if which == "injective":
        by_vertex = {v: [p for p in alg.paths_into(vertex) if p.start == v] for v in alg.quiver.vertices}
        dims = {v: len(by_vertex[v]) for v in alg.quiver.vertices}
        action = {}
        for a in alg.quiver.arrows:
            src, tgt = by_vertex[a.source], by_vertex[a.target]
            mat = [[f.zero()] * len(src) for _ in range(len(tgt))]
            # dual of pre-concatenation: row q (path a.target -> vertex) hits
            # column p exactly when p = a*q
            for i, q in enumerate(tgt):
                p = alg.compose(Path(a.source, (a.name,), a.target), q)
                if p is not None and p in src:
                    mat[i][src.index(p)] = f.one()
            action[a.name] = to_matrix(mat, len(tgt), len(src))
        return Rep(alg, dims, action)

    raise ValueError(f"unknown standard module kind {which!r}")
