import pytest

from commahom.errors import AlgebraMismatchError, InvalidRepresentationError, MorphismError
from commahom.exactla import GF2, QQ, ExactMatrix, rank
from commahom.quiver import standard_module
from commahom.rep import (
    RepMor,
    Rep,
    cokernel,
    direct_sum,
    hom_basis,
    hom_dim,
    identity_mor,
    image,
    is_iso,
    kernel,
    zero_mor,
    zero_rep,
)
from commahom.sample import a2_algebra


def rep_a2(alg, d1, d2, entries):
    action = {"a": ExactMatrix(alg.field, d2, d1, tuple(entries))}
    return Rep(alg, {1: d1, 2: d2}, action)


def test_invalid_shape_rejected(a2):
    with pytest.raises(InvalidRepresentationError):
        Rep(a2, {1: 1, 2: 1}, {"a": ExactMatrix.zeros(GF2, 2, 1)})


def test_relation_violation_rejected(loop):
    bad = {"x": ExactMatrix.from_rows(GF2, [[1]])}
    with pytest.raises(InvalidRepresentationError):
        Rep(loop, {1: 1}, bad)


def test_intertwining_enforced(a2):
    p1 = standard_module(a2, "projective", 1)
    s1 = standard_module(a2, "simple", 1)
    with pytest.raises(MorphismError):
        RepMor(p1, s1, {1: ExactMatrix.zeros(GF2, 1, 1), 2: ExactMatrix.zeros(GF2, 0, 1)})
        # wrong only if the blocks fail the equations; build a failing one
    blocks = {1: ExactMatrix.from_rows(GF2, [[1]]), 2: ExactMatrix.zeros(GF2, 0, 1)}
    mor = RepMor(p1, s1, blocks)
    assert mor.is_surjective()


def test_hom_contains_identity(hexagon):
    p3 = standard_module(hexagon, "projective", 3)
    assert hom_dim(p3, p3) >= 1


def test_hom_examples(a2):
    p1 = standard_module(a2, "projective", 1)
    s1 = standard_module(a2, "simple", 1)
    s2 = standard_module(a2, "simple", 2)
    assert hom_dim(p1, s1) == 1
    assert hom_dim(s1, s2) == 0


def test_hom_algebra_mismatch(a2, hexagon):
    with pytest.raises(AlgebraMismatchError):
        hom_basis(standard_module(a2, "simple", 1), standard_module(hexagon, "simple", 1))


def test_kernel_of_identity_zero(a2):
    p1 = standard_module(a2, "projective", 1)
    k, incl = kernel(identity_mor(p1))
    assert k.is_zero()
    assert incl.target == p1


def test_cokernel_of_zero_map(a2):
    s1 = standard_module(a2, "simple", 1)
    s2 = standard_module(a2, "simple", 2)
    q, proj = cokernel(zero_mor(s1, s2))
    assert is_iso(q, s2)
    assert proj.is_surjective()


def test_kernel_of_cover_map(a2):
    p1 = standard_module(a2, "projective", 1)
    s1 = standard_module(a2, "simple", 1)
    mor = hom_basis(p1, s1)[0]
    k, _ = kernel(mor)
    assert is_iso(k, standard_module(a2, "simple", 2))


def test_rank_nullity_per_vertex(a2):
    p1 = standard_module(a2, "projective", 1)
    for f in hom_basis(p1, p1):
        k, _ = kernel(f)
        im, _ = image(f)
        for v in a2.quiver.vertices:
            assert k.dims[v] + im.dims[v] == p1.dims[v]


def test_direct_sum_zero_and_unit(a2):
    s1 = standard_module(a2, "simple", 1)
    assert direct_sum([], algebra=a2).rep.is_zero()
    ds = direct_sum([s1, zero_rep(a2)])
    assert is_iso(ds.rep, s1)


def test_direct_sum_not_projective(a2):
    s1 = standard_module(a2, "simple", 1)
    s2 = standard_module(a2, "simple", 2)
    p1 = standard_module(a2, "projective", 1)
    ds = direct_sum([s1, s2])
    assert ds.rep.dim_vector() == (1, 1)
    assert ds.rep.action["a"].is_zero()
    assert not is_iso(ds.rep, p1)


def test_direct_sum_projections_compose_to_identity(a2):
    s1 = standard_module(a2, "simple", 1)
    p1 = standard_module(a2, "projective", 1)
    ds = direct_sum([s1, p1])
    for incl, proj in zip(ds.inclusions, ds.projections):
        assert proj.compose(incl).blocks == identity_mor(incl.source).blocks


def test_is_iso_reflexive_and_negative(a2):
    s1 = standard_module(a2, "simple", 1)
    s2 = standard_module(a2, "simple", 2)
    assert is_iso(s1, s1)
    assert not is_iso(s1, s2)


def test_first_isomorphism_theorem(a2):
    p1 = standard_module(a2, "projective", 1)
    s1 = standard_module(a2, "simple", 1)
    f = hom_basis(p1, s1)[0]
    im, _ = image(f)
    k, incl = kernel(f)
    quot, _ = cokernel(incl)
    assert is_iso(im, quot)


def test_rationals_hom(a2):
    alg = a2_algebra(QQ)
    p1 = standard_module(alg, "projective", 1)
    s1 = standard_module(alg, "simple", 1)
    assert hom_dim(p1, p1) == 1
    assert hom_dim(p1, s1) == 1


def test_path_action_composition(hexagon):
    p6 = standard_module(hexagon, "projective", 6)
    for rel in hexagon.relations:
        assert p6.path_action(rel).is_zero()
    basis_path = next(p for p in hexagon.path_basis if p.arrows == ("a5", "a4"))
    assert rank(p6.path_action(basis_path)) == 1
