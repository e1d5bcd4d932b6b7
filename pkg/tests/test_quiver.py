import pytest

from commahom.errors import MalformedPathError, NonAdmissibleError
from commahom.exactla import GF2
from commahom.quiver import Arrow, Quiver, build_algebra, make_path, standard_module, trivial_path


def test_a2_basis(a2):
    assert a2.dim == 3
    assert {str(p) for p in a2.path_basis} == {"e_1", "e_2", "a"}


def test_hexagon_basis(hexagon):
    assert hexagon.dim == 14
    length_two = {p.arrows for p in hexagon.path_basis if p.length == 2}
    assert length_two == {("a5", "a4"), ("a3", "a6")}


def test_glued_dimension(glued, hexagon, point):
    assert glued.dim == hexagon.dim + point.dim + 1


def test_relations_must_compose():
    q = Quiver((1, 2, 3), (Arrow("a", 1, 2), Arrow("b", 2, 3)))
    with pytest.raises(MalformedPathError):
        make_path(q, ["b", "a"])
    with pytest.raises(MalformedPathError):
        build_algebra(GF2, q, [["a"]])


def test_non_admissible_detected():
    q = Quiver((1,), (Arrow("x", 1, 1),))
    with pytest.raises(NonAdmissibleError):
        build_algebra(GF2, q, [], max_path_length=8)


def test_loop_algebra_basis(loop):
    assert loop.dim == 2


def test_projective_at_source(hexagon):
    p1 = standard_module(hexagon, "projective", 1)
    assert p1.dim_vector() == (1, 1, 0, 0, 0, 0)


def test_simple_total_dim(hexagon):
    for v in hexagon.quiver.vertices:
        assert standard_module(hexagon, "simple", v).total_dim == 1


def test_injective_at_five(hexagon):
    e5 = standard_module(hexagon, "injective", 5)
    assert e5.support() == (3, 4, 5)
    assert e5.total_dim == 3


def test_unknown_vertex_rejected(hexagon):
    with pytest.raises(KeyError):
        standard_module(hexagon, "simple", 99)


def test_projective_dims_sum_to_algebra_dim(hexagon, glued, a2):
    for alg in (hexagon, glued, a2):
        total = sum(standard_module(alg, "projective", v).total_dim for v in alg.quiver.vertices)
        assert total == alg.dim


def test_basis_closed_under_subpaths(hexagon):
    words = {p.arrows for p in hexagon.path_basis}
    for w in words:
        for i in range(len(w)):
            for j in range(i, len(w) + 1):
                assert w[i:j] in words or w[i:j] == ()


def test_a2_projective_is_injective(a2):
    from commahom.rep import is_iso

    p1 = standard_module(a2, "projective", 1)
    e2 = standard_module(a2, "injective", 2)
    assert is_iso(p1, e2)


def test_opposite_involution(hexagon):
    op = hexagon.opposite()
    assert op.dim == hexagon.dim
    assert {(a.source, a.target) for a in op.quiver.arrows} == {
        (a.target, a.source) for a in hexagon.quiver.arrows
    }


def test_compose_kills_relations(hexagon):
    a1 = make_path(hexagon.quiver, ["a1"])
    a2_path = make_path(hexagon.quiver, ["a2"])
    assert hexagon.compose(a1, a2_path) is None
    a5 = make_path(hexagon.quiver, ["a5"])
    a4 = make_path(hexagon.quiver, ["a4"])
    composite = hexagon.compose(a5, a4)
    assert composite is not None and composite.arrows == ("a5", "a4")
    assert hexagon.compose(trivial_path(6), a5) is not None
