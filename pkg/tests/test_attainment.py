import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ballclimb import attainment_surface, eas50
from ballclimb.archive import dominates, non_dominated
from ballclimb.attainment import weakly_dominated_fraction


def grid_surface(fronts, level=0.5):
    """Count attaining runs at every grid point built from the merged coordinates."""
    import math

    need = max(1, math.ceil(level * len(fronts) - 1e-12))
    xs = sorted({p[0] for fr in fronts for p in fr})
    ys = sorted({p[1] for fr in fronts for p in fr})
    attained = []
    for a in xs:
        for b in ys:
            runs = sum(any(p[0] >= a and p[1] >= b for p in fr) for fr in fronts)
            if runs >= need:
                attained.append((a, b))
    return sorted(non_dominated(attained))


def test_single_run_is_its_own_front():
    front = [(1, 9), (4, 6), (7, 2)]
    assert eas50([front]) == front


def test_identical_fronts():
    front = [(1, 9), (4, 6), (7, 2)]
    assert eas50([front, list(front)]) == front


def test_three_single_point_runs():
    fronts = [[(1, 3)], [(3, 1)], [(2, 2)]]
    expected = grid_surface(fronts)
    assert expected == [(1, 2), (2, 1)]
    assert eas50(fronts) == expected


def test_dominated_points_in_input_are_harmless():
    assert eas50([[(1, 1), (2, 2)]]) == [(2, 2)]


def test_rejects_other_dimensions():
    with pytest.raises(ValueError):
        eas50([[(1, 2, 3)]])
    with pytest.raises(ValueError):
        eas50([[(1, 2)]], d=3)
    with pytest.raises(ValueError):
        eas50([])


fronts_strategy = st.lists(
    st.lists(st.tuples(st.integers(0, 15), st.integers(0, 15)), min_size=1, max_size=8),
    min_size=1,
    max_size=7,
)


@settings(max_examples=200, deadline=None)
@given(fronts_strategy, st.sampled_from([0.25, 0.5, 0.75, 1.0]))
def test_matches_grid_counting(fronts, level):
    surface = attainment_surface(fronts, level)
    assert surface == grid_surface(fronts, level)
    assert not any(dominates(a, b) for a in surface for b in surface)


def test_weakly_dominated_fraction():
    better = [(2, 5), (5, 2)]
    assert weakly_dominated_fraction(better, [(1, 5), (5, 2), (4, 4)]) == pytest.approx(2 / 3)
    assert weakly_dominated_fraction(better, []) == 1.0
