"""Max-affine functions: evaluation, algebra, composition, pruning.

Pointwise identities are checked on exact rational grids (the independent
oracle for every algebraic operation) and piece lists are compared as sets
once pruning has canonicalized them.
"""

import pytest
from hypothesis import given, settings, strategies as st

from convval import DimensionMismatch, MaxAffineFn, Q, add, compose_linear, max_of, prune, scale
from convval.linalg import RationalMatrix

from conftest import eval_all_pieces, grid_points, hinge, same_function_on_grid


def mf(dim, *pieces):
    return MaxAffineFn(dim, [(tuple(Q(v) for v in a), Q(b)) for a, b in pieces])


def piece_set(f):
    return {(tuple(a), b) for a, b in f.pieces}


def test_evaluate_three_piece_function():
    f = mf(2, ((1, 0), 1), ((-1, 0), 0), ((0, 1), 0))
    assert f((Q(1), Q(0))) == Q(2)
    assert f((Q(0), Q(0))) == Q(1)
    assert f((Q(-5), Q(0))) == Q(5)
    assert f((Q(0), Q(7))) == Q(7)


def test_evaluate_accepts_strings_and_rejects_floats():
    f = mf(1, ((1,), 0))
    assert f(("1/2",)) == Q(1, 2)
    with pytest.raises(TypeError):
        f((0.5,))


def test_dimension_mismatch_on_evaluate():
    f = mf(2, ((1, 0), 0))
    with pytest.raises(DimensionMismatch):
        f((Q(1),))


def test_empty_piece_list_rejected():
    with pytest.raises(ValueError):
        MaxAffineFn(1, [])


def test_constructors():
    aff = MaxAffineFn.affine((Q(2), Q(0)), Q(-1))
    assert aff((Q(3), Q(5))) == Q(5)
    const = MaxAffineFn.constant(2, Q(7))
    assert const((Q(100), Q(-3))) == Q(7)
    z = MaxAffineFn.zero(3)
    assert z((Q(1), Q(2), Q(3))) == Q(0)


def test_add_produces_absolute_value():
    f = mf(1, ((1,), 0), ((0,), 0))  # max(x, 0)
    h = mf(1, ((-1,), 0), ((0,), 0))  # max(-x, 0)
    s = add(f, h)
    assert piece_set(s) == {((Q(1),), Q(0)), ((Q(-1),), Q(0))}
    for x in grid_points(1, 4, 3):
        assert s(x) == abs(x[0])


def test_add_matches_pointwise_sum_on_grid():
    f = mf(2, ((1, 1), 0), ((0, -1), 2))
    h = mf(2, ((2, 0), -1), ((0, 0), 0), ((-1, 1), 1))
    s = add(f, h)
    for x in grid_points(2, 3, 2):
        assert s(x) == f(x) + h(x)


def test_scale_by_positive_rational():
    f = mf(1, ((1,), 0), ((-1,), 0))  # |x|
    g = scale(f, Q(2))
    assert g((Q(3),)) == Q(6)
    for x in grid_points(1, 4, 2):
        assert g(x) == 2 * f(x)


def test_scale_zero_gives_zero_function_and_negative_rejected():
    f = mf(1, ((1,), 5), ((-1,), 0))
    z = scale(f, Q(0))
    for x in grid_points(1, 3, 1):
        assert z(x) == Q(0)
    with pytest.raises(ValueError):
        scale(f, Q(-1))


def test_max_of_builds_hinge_absolute_value():
    f = mf(2, ((1, 0), -1), ((0, 0), 0))  # max(x1 - 1, 0)
    h = mf(2, ((-1, 0), 1), ((0, 0), 0))  # max(1 - x1, 0)
    m = max_of(f, h)
    for x in grid_points(2, 3, 2):
        assert m(x) == max(f(x), h(x))
        assert m(x) == abs(x[0] - 1)


def test_compose_with_shear():
    # f = max(x1, 0) in three variables, sheared so x1 picks up x2.
    f = hinge(3)
    g = RationalMatrix.shear(3, 0, 1, Q(1))
    fg = compose_linear(f, g)
    assert piece_set(fg) == {
        ((Q(1), Q(1), Q(0)), Q(0)),
        ((Q(0), Q(0), Q(0)), Q(0)),
    }
    for x in grid_points(3, 2, 1):
        assert fg(x) == f(g.matvec(x))


def test_compose_round_trip_with_inverse():
    f = mf(2, ((1, 2), 1), ((-1, 0), 0), ((0, -2), -1))
    g = RationalMatrix([[Q(2), Q(1)], [Q(1), Q(1)]])
    back = compose_linear(compose_linear(f, g), g.inverse())
    assert back == prune(f)


def test_compose_with_singular_map_stays_pointwise_correct():
    # A rank-one map collapses x2; dominated pieces must be re-pruned.
    f = mf(2, ((1, 0), 0), ((0, 1), 0), ((0, 0), 0))
    g = RationalMatrix([[Q(1), Q(0)], [Q(0), Q(0)]])
    fg = compose_linear(f, g)
    for x in grid_points(2, 3, 1):
        assert fg(x) == f(g.matvec(x))
    assert fg == prune(fg)


def test_prune_drops_strictly_dominated_piece():
    f = mf(1, ((1,), 0), ((1,), -1))
    p = prune(f)
    assert piece_set(p) == {((Q(1),), Q(0))}


def test_prune_keeps_tied_extreme_pieces_only():
    # Middle slope 1/2 at the same offset is a convex combination of the ends.
    f = mf(1, ((0,), 0), ((1,), 0), ((Q(1, 2),), 0))
    p = prune(f)
    assert piece_set(p) == {((Q(0),), Q(0)), ((Q(1),), Q(0))}


def test_prune_preserves_values_and_is_idempotent():
    f = mf(
        2,
        ((1, 0), 0),
        ((0, 1), 0),
        ((1, 1), -1),
        ((Q(1, 2), Q(1, 2)), Q(-1, 2)),  # midpoint of the first pair, redundant
        ((0, 0), -5),
    )
    p = prune(f)
    assert len(p.pieces) < len(f.pieces)
    for x in grid_points(2, 3, 2):
        assert p(x) == f(x)
    assert prune(p) == p


def test_prune_canonical_for_equal_functions():
    # Two presentations of the same function prune to the identical object.
    a = mf(1, ((1,), 0), ((-1,), 0), ((0,), 0))
    b = mf(1, ((-1,), 0), ((1,), 0))
    assert prune(a) == prune(b)
    assert hash(prune(a)) == hash(prune(b))


def test_offset_translates_values():
    f = hinge(2)
    g = f.offset(Q(3, 2))
    for x in grid_points(2, 2, 1):
        assert g(x) == f(x) + Q(3, 2)


def test_equality_is_semantic_after_prune():
    a = prune(mf(2, ((1, 0), 0), ((0, 0), 0), ((1, 0), -2)))
    b = prune(mf(2, ((0, 0), 0), ((1, 0), 0)))
    assert a == b


rational = st.fractions(min_value=-6, max_value=6, max_denominator=3)


def qq(fr):
    return Q(fr.numerator, fr.denominator)


@st.composite
def random_fn(draw, dim):
    count = draw(st.integers(min_value=1, max_value=4))
    pieces = []
    for _ in range(count):
        a = tuple(qq(draw(rational)) for _ in range(dim))
        b = qq(draw(rational))
        pieces.append((a, b))
    return MaxAffineFn(dim, pieces)


@settings(max_examples=40, deadline=None)
@given(random_fn(2), random_fn(2))
def test_add_commutes_pointwise(f, h):
    s1, s2 = add(f, h), add(h, f)
    for x in grid_points(2, 2, 1):
        assert s1(x) == f(x) + h(x) == s2(x)


@settings(max_examples=40, deadline=None)
@given(random_fn(2))
def test_prune_never_changes_values(f):
    p = prune(f)
    for x in grid_points(2, 2, 1):
        assert p(x) == eval_all_pieces(f.pieces, x)


@settings(max_examples=30, deadline=None)
@given(random_fn(2), st.integers(min_value=0, max_value=5))
def test_scale_homogeneous(f, k):
    lam = Q(k, 2)
    g = scale(f, lam)
    for x in grid_points(2, 2, 1):
        assert g(x) == lam * f(x)


def test_same_function_on_grid_helper_sanity():
    f = mf(2, ((1, 0), 1), ((-1, 0), 0), ((0, 1), 0))
    assert same_function_on_grid(f, f.pieces)
