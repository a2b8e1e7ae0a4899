from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from framed_moduli import GF, QQ, FramedShape, Matrix, Quiver
from framed_moduli.errors import ShapeMismatch
from framed_moduli.oracle import stability_bruteforce
from framed_moduli.quiver import enumerate_framed_paths, framing_path
from framed_moduli.rep import (FramedRep, GroupElement, act, build_row_bundle, is_stable, max_submodule_in_kernel,
                               random_group_element, row_of_path, saturate)
from framed_moduli.sampling import random_rep

from support import SHAPES, all_reps, example21_rep, loop_rep, stable_sample


def paths_of(rep, bound=None):
    bound = sum(rep.shape.alpha) - 1 if bound is None else bound
    return enumerate_framed_paths(rep.extended, bound)


def naive_stable(rep) -> bool:
    """Rank of all path rows up to length sum(alpha)-1, vertex by vertex."""
    b = build_row_bundle(rep, paths_of(rep))
    return all(b.matrix(v).rank == n for v, n in enumerate(rep.shape.alpha, 1) if n)


def test_rows_along_single_loop():
    rep = loop_rep([[0, 1], [2, 3]], [[1, 0]])
    eq = rep.extended
    assert row_of_path(rep, eq.parse("f1.1")) == (1, 0)
    assert row_of_path(rep, eq.parse("f1.1*a")) == (0, 1)
    assert row_of_path(rep, eq.parse("f1.1*a*a")) == (2, 3)


def test_row_bundle_blocks_follow_canonical_order():
    rep = loop_rep([[1, 2], [3, 4]], [[1, 0], [0, 1]])
    b = build_row_bundle(rep, paths_of(rep, 1))
    assert [rep.extended.format(p) for p in b.paths(1)] == ["f1.1", "f1.2", "f1.1*a", "f1.2*a"]
    assert b.matrix(1) == Matrix(QQ, [[1, 0], [0, 1], [1, 2], [3, 4]])


def test_rows_in_multi_vertex_quiver():
    rep = example21_rep()
    eq = rep.extended
    p = eq.parse("f3.1*c*b")
    assert p.start == 1
    expected = Matrix(QQ, [[3]]) @ rep.arrow_map("c") @ rep.arrow_map("b")
    assert row_of_path(rep, p) == expected.row(0)


def test_build_fills_missing_with_zeros_and_checks_shapes():
    rep = FramedRep.build(Quiver.loops(1), FramedShape((2,), (1,)), {}, {})
    assert rep.arrow_map("a").is_zero() and rep.framing_map(1).is_zero()
    with pytest.raises(ShapeMismatch):
        FramedRep.build(Quiver.loops(1), FramedShape((2,), (1,)), {"a": [[1, 2, 3]]}, {})


def test_act_identity_and_scalars():
    rep = loop_rep([[1, 2], [3, 4]], [[1, 0]])
    assert act(GroupElement.identity((2,)), rep) == rep
    two = Matrix(QQ, [[2, 0], [0, 2]])
    scaled = act(GroupElement((two,), (two.inverse(),)), rep)
    assert scaled.arrow_map("a") == rep.arrow_map("a")
    assert scaled.framing_map(1) == Matrix(QQ, [[Fraction(1, 2), 0]])


def test_act_rejects_wrong_shape():
    with pytest.raises(ShapeMismatch):
        act(GroupElement.identity((3,)), loop_rep([[1, 2], [3, 4]], [[1, 0]]))


def test_group_law():
    rng = random.Random(0)
    rep = example21_rep()
    g = random_group_element(rep.shape.alpha, QQ, rng)
    h = random_group_element(rep.shape.alpha, QQ, rng)
    assert act(g, act(h, rep)) == act(g @ h, rep)
    assert act(g.inverse(), act(g, rep)) == rep


def test_submodule_in_kernel_examples():
    assert max_submodule_in_kernel(loop_rep([[0, 1], [2, 3]], [[1, 0]])).is_zero()
    # f kills e2 and a preserves span(e2)
    sub = max_submodule_in_kernel(loop_rep([[1, 0], [0, 1]], [[1, 0]]))
    assert sub.dims == (1,)
    assert sub.bases[0].column(0) == (0, 1)
    assert max_submodule_in_kernel(loop_rep([[1, 2], [3, 4]], [[0, 0]])).dims == (2,)


def test_stability_examples():
    assert is_stable(loop_rep([[0, 1], [2, 3]], [[1, 0]]))
    assert not is_stable(loop_rep([[1, 0], [0, 1]], [[1, 0]]))
    assert is_stable(loop_rep([[0, 0], [0, 0]], [[1, 0], [0, 1]]))
    assert not is_stable(loop_rep([[5, 0], [0, 5]], [[1, 1], [2, 2]]))
    assert is_stable(example21_rep(3)) == naive_stable(example21_rep(3))


def test_zero_dimensional_vertices_are_harmless():
    q = Quiver.from_edges(2, [("a", 1, 2)])
    rep = FramedRep.build(q, FramedShape((0, 1), (0, 1)), {}, {2: [[1]]})
    assert is_stable(rep)


@pytest.mark.parametrize("shape_index", [0, 2, 5])
def test_stability_agrees_with_bruteforce_over_gf2(shape_index):
    quiver, shape = SHAPES[shape_index]
    for rep in all_reps(quiver, shape, GF(2)):
        expected = stability_bruteforce(rep)
        assert is_stable(rep) == expected
        assert naive_stable(rep) == expected


@given(st.integers(0, 10_000))
def test_stability_is_invariant_under_the_group(seed):
    rng = random.Random(seed)
    quiver, shape = SHAPES[seed % len(SHAPES)]
    rep = random_rep(quiver, shape, rng, QQ, 2)
    g = random_group_element(shape.alpha, QQ, rng)
    assert is_stable(act(g, rep)) == is_stable(rep) == naive_stable(rep)


@given(st.integers(0, 10_000))
def test_row_bundle_is_equivariant(seed):
    rep = stable_sample(seed)
    g = random_group_element(rep.shape.alpha, QQ, random.Random(seed))
    universe = paths_of(rep)
    assert build_row_bundle(act(g, rep), universe) == build_row_bundle(rep, universe).scaled(g)


@given(st.integers(0, 10_000))
def test_saturation_rounds_and_kernel_property(seed):
    rng = random.Random(seed)
    quiver, shape = SHAPES[seed % len(SHAPES)]
    rep = random_rep(quiver, shape, rng, QQ, 1)
    sat = saturate(rep)
    assert sat.rounds <= sum(shape.alpha) + 1
    sub = max_submodule_in_kernel(rep)
    assert tuple(n - r for n, r in zip(shape.alpha, sat.ranks)) == sub.dims
    # the submodule lies in ker f and is closed under every arrow
    for i, basis in enumerate(sub.bases):
        assert (rep.framing[i] @ basis).is_zero()
    for a, m in zip(quiver.arrows, rep.maps):
        image = m @ sub.bases[a.tail - 1]
        target = sub.bases[a.head - 1]
        if image.ncols:
            joined = Matrix(QQ, [list(target.row(k)) + list(image.row(k)) for k in range(target.nrows)])
            assert joined.rank == target.rank


@given(st.integers(0, 10_000))
def test_extending_a_path_multiplies_its_row(seed):
    rep = stable_sample(seed)
    eq = rep.extended
    for p in paths_of(rep, 2):
        for e in eq.extensions(p):
            m = rep.maps[e.word[-1]]
            assert row_of_path(rep, e) == tuple((Matrix(QQ, [row_of_path(rep, p)]) @ m).row(0))


def test_framing_rows_are_framing_matrix_rows():
    rep = example21_rep()
    assert row_of_path(rep, framing_path(2, 2)) == (4, 2)
