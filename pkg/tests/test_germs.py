"""Depth calculus for one-parameter hypersurface germs."""

import pytest

from wresolve.baskets import CyclicQuotient, TerminalClass, basket_of, xi
from wresolve.baskets import aw as basket_aw
from wresolve.errors import InvalidParameter, InvalidSplit, SearchLimitExceeded
from wresolve.germs import (
    CARGerm,
    DepthBound,
    admissible_splits,
    axial_weight,
    blowup_step,
    cyclic_depth_search,
    depth_bound,
    depth_formula,
    depth_search,
    nu,
    resolution_tree,
    tvalue,
)

G1 = CARGerm(4, 1, frozenset({(0, 2), (1, 1), (2, 0)}))
G2 = CARGerm(3, 1, frozenset({(0, 1), (2, 3)}))
G3 = CARGerm(5, 2, frozenset({(0, 2), (1, 1)}))  # the CLI depth example
G4 = CARGerm(3, 1, frozenset({(0, 2), (1, 0)}))  # needs two blow-up stages
G5 = CARGerm(2, 1, frozenset({(0, 2), (1, 0)}))


def test_invariants_frozen():
    # minima over the support, computed by hand
    assert axial_weight(G1) == 2
    assert nu(G1, 1) == 2  # (0,2)->2, (1,1)->2, (2,0)->2
    assert tvalue(G1) == 1

    assert axial_weight(G2) == 1
    assert nu(G2, 1) == 1
    assert tvalue(G2) == 1

    assert axial_weight(G3) == 2
    assert nu(G3, 1) == 2
    assert tvalue(G3) == 1

    assert axial_weight(G4) == 2
    assert nu(G4, 1) == 1  # (1,0) is cheaper than the axial monomial
    assert nu(G4, 2) == 2
    assert tvalue(G4) == 2


def test_depth_formula_frozen():
    assert depth_formula(G1) == 2 * 4 - 1 == 7
    assert depth_formula(G2) == 1 * 3 - 1 == 2
    assert depth_formula(G3) == 2 * 5 - 1 == 9
    assert depth_formula(G4) == 2 * 3 - 2 == 4
    assert depth_formula(G5) == 2 * 2 - 2 == 2


def test_smooth_axis_depth_zero():
    g = CARGerm(1, 0, frozenset({(0, 1)}))
    assert depth_formula(g) == 0
    assert depth_search(g) == 0


def test_depth_search_matches_formula():
    for g in (G1, G2, G3, G4, G5):
        assert depth_search(g) == depth_formula(g)


def test_admissible_splits():
    assert list(admissible_splits(G3)) == [(2, 8), (7, 3)]
    assert list(admissible_splits(G2)) == [(1, 2)]
    assert list(admissible_splits(G1)) == [(1, 7), (5, 3)]
    for g in (G1, G2, G3, G4):
        splits = list(admissible_splits(g))
        assert len(splits) == nu(g, 1)
        for r1, r2 in splits:
            assert r1 + r2 == g.r * nu(g, 1)
            assert r1 % g.r == g.beta % g.r
            assert (-r2) % g.r == g.beta % g.r


def test_blowup_residual_example():
    res = blowup_step(G5, 1, 1)
    assert [q.r for q in res.cyclic_points] == [1, 1]
    assert all(q.smooth for q in res.cyclic_points)
    assert res.residual is not None
    assert res.residual.r == 2
    assert res.residual.support == frozenset({(0, 1), (1, 0)})


def test_blowup_no_residual_when_nu1_is_axial():
    # nu_1 equals the axial weight, so nothing is left behind
    res = blowup_step(G3, 2, 8)
    assert res.residual is None
    res = blowup_step(G2, 1, 2)
    assert res.residual is None


def test_blowup_quotient_weights():
    res = blowup_step(G3, 2, 8)
    (q1, q2) = res.cyclic_points
    assert (q1.r, q2.r) == (2, 8)
    # each point is 1/r_i(r, -r, -1) with weights reduced mod r_i
    assert q2.weights == (5 % 8, (-5) % 8, (-1) % 8)


def test_blowup_invalid_splits():
    with pytest.raises(InvalidSplit):
        blowup_step(G3, 2, 7)  # wrong sum
    with pytest.raises(InvalidSplit):
        blowup_step(G3, 3, 7)  # wrong congruence class
    with pytest.raises(InvalidSplit):
        blowup_step(G3, 0, 10)  # indices must be positive


def test_residual_recursion_identities():
    for g in (G4, G5):
        splits = list(admissible_splits(g))
        res = blowup_step(g, *splits[0]).residual
        assert res is not None
        assert axial_weight(res) == axial_weight(g) - nu(g, 1)
        assert tvalue(res) == tvalue(g) - 1
        for s in range(1, tvalue(res) + 1):
            assert nu(res, s) == nu(g, s + 1) - nu(g, 1)
        assert depth_formula(res) == depth_formula(g) - (g.r * nu(g, 1) - 1)


def test_cyclic_depth_search_frozen():
    assert cyclic_depth_search(1) == 0
    assert cyclic_depth_search(2) == 1
    assert cyclic_depth_search(5) == 4
    for r in range(1, 40):
        assert cyclic_depth_search(r) == r - 1


def test_split_invariance():
    # every admissible split of a germ yields the same total depth
    for g in (G1, G2, G3, G4, G5):
        totals = set()
        for r1, r2 in admissible_splits(g):
            res = blowup_step(g, r1, r2)
            used = 1 + cyclic_depth_search(r1) + cyclic_depth_search(r2)
            rest = depth_search(res.residual) if res.residual else 0
            totals.add(used + rest)
        assert totals == {depth_formula(g)}


def test_search_limit():
    with pytest.raises(SearchLimitExceeded):
        depth_search(G3, limit=3)
    with pytest.raises(SearchLimitExceeded):
        depth_search(G3, limit=8)
    assert depth_search(G3, limit=9) == 9


def test_resolution_tree_shape():
    tree = resolution_tree(G3)
    assert tree["dep"] == 9
    assert tree["index"] == 5
    assert tree["split"] in ([2, 8], [7, 3])
    assert tree["residual"] is None
    assert tree["splits_considered"] == 2


def test_resolution_tree_with_residual():
    tree = resolution_tree(G4)
    assert tree["dep"] == 4
    assert tree["residual"] is not None
    assert tree["residual"]["dep"] == 2


def test_depth_bound_by_class():
    assert depth_bound(TerminalClass.gorenstein()) == DepthBound.exactly(0)
    b = depth_bound(TerminalClass.cyclic(CyclicQuotient(5, (2, 3, 1))))
    assert b == DepthBound.exactly(4)
    b = depth_bound(TerminalClass.ca_r(G3))
    assert b == DepthBound.exactly(9)
    # non-cA classes carry only a hard ceiling, read off the elephant
    assert depth_bound(TerminalClass.cax4(3)) == DepthBound(upper=7)
    assert depth_bound(TerminalClass.cd2(4)) == DepthBound(upper=8)
    assert depth_bound(TerminalClass.cd3()) == DepthBound(upper=6)
    assert depth_bound(TerminalClass.ce2()) == DepthBound(upper=7)


def test_cax2_bound_requires_k():
    with pytest.raises(InvalidParameter):
        depth_bound(TerminalClass.cax2())
    assert depth_bound(TerminalClass.cax2(2)) == DepthBound(upper=4)


def test_germ_validation():
    with pytest.raises(ValueError):
        CARGerm(5, 2, frozenset())  # empty support
    with pytest.raises(ValueError):
        CARGerm(5, 0, frozenset({(0, 1)}))  # beta must be a unit mod r
    with pytest.raises(ValueError):
        CARGerm(5, 2, frozenset({(1, 1)}))  # no axial monomial
    with pytest.raises(ValueError):
        CARGerm(5, 2, frozenset({(0, 0), (0, 2)}))  # unit constant term
    with pytest.raises(ValueError):
        CARGerm(5, 2, frozenset({(-1, 2), (0, 2)}))


def test_depth_family_window():
    # Xi - aw <= dep <= Xi - 1 whenever the singular content is nonempty
    for g in (G1, G2, G3, G4, G5):
        b = basket_of(TerminalClass.ca_r(g))
        dep = depth_formula(g)
        assert xi(b) - basket_aw(b) <= dep <= xi(b) - 1
