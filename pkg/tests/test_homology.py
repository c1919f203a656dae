import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import GF, QQ
from sympy.polys.matrices import DomainMatrix

from oracles import independent_sets, power_edges
from sqfdepth.errors import CapExceededError, DegenerateError, InvalidInputError
from sqfdepth.graphs import complete_graph, cycle_power, edge_ideal, path_power
from sqfdepth.homology import (
    SimplicialComplex,
    betti_table,
    depth_ideal,
    depth_quotient,
    independence_complex,
    pd_with_witness,
    projective_dimension,
    reduced_homology_ranks,
)
from sqfdepth.ideal import MonomialIdeal, mask_of
from sqfdepth.linalg import is_prime, rank


def sympy_rank(dense, p=0):
    dom = QQ if p == 0 else GF(p)
    if not dense or not dense[0]:
        return 0
    return DomainMatrix([[dom(v) for v in row] for row in dense], (len(dense), len(dense[0])), dom).rank()


def to_sparse(dense):
    return [{c: v for c, v in enumerate(row) if v} for row in dense]


@settings(max_examples=80)
@given(
    st.integers(min_value=1, max_value=7),
    st.integers(min_value=1, max_value=7),
    st.sampled_from([0, 2, 3, 32003]),
    st.data(),
)
def test_rank_matches_sympy(rows, cols, p, data):
    dense = [[data.draw(st.integers(min_value=-3, max_value=3)) for _ in range(cols)] for _ in range(rows)]
    assert rank(to_sparse(dense), p) == sympy_rank(dense, p)


def test_rank_of_structured_matrices():
    rng = random.Random(7)
    for _ in range(20):
        r, c = rng.randint(5, 25), rng.randint(5, 25)
        base = [[rng.choice([-1, 0, 0, 1]) for _ in range(c)] for _ in range(4)]
        # rows are integer combinations of four base rows, so the rank is at most 4
        dense = [[sum(rng.randint(-2, 2) * b[j] for b in base) for j in range(c)] for _ in range(r)]
        assert rank(to_sparse(dense)) == sympy_rank(dense)


def test_rank_rejects_non_prime_field():
    with pytest.raises(InvalidInputError):
        rank([{0: 1}], 4)
    assert is_prime(32003) and not is_prime(1) and not is_prime(9)


# -- complexes ---------------------------------------------------------------


def test_independence_complex_examples():
    assert independence_complex(edge_ideal(complete_graph(3))).faces == {0, 1, 2, 4}
    cx = independence_complex(edge_ideal(path_power(4, 1)))
    assert set(cx.facets) == {mask_of([1, 3]), mask_of([1, 4]), mask_of([2, 4])}
    assert len(independence_complex(MonomialIdeal(3)).faces) == 8


def test_independence_complex_rejects_unit_and_caps():
    with pytest.raises(DegenerateError):
        independence_complex(MonomialIdeal(3, (0,)))
    with pytest.raises(CapExceededError):
        independence_complex(MonomialIdeal(10), max_faces=100)


@given(st.sampled_from(["path", "cycle"]), st.integers(min_value=3, max_value=10), st.integers(min_value=1, max_value=4))
def test_faces_are_independent_sets(family, n, k):
    edges = power_edges(family, n, k)
    cx = independence_complex(edge_ideal((path_power if family == "path" else cycle_power)(n, k)))
    assert cx.faces == {mask_of(s) for s in independent_sets(n, edges)}


def test_complex_must_be_down_closed():
    with pytest.raises(InvalidInputError):
        SimplicialComplex(3, frozenset({0, 0b11}))


def test_homology_examples():
    circle = SimplicialComplex.from_facets(3, [[1, 2], [1, 3], [2, 3]])
    assert reduced_homology_ranks(circle, [1, 2, 3]) == [0, 0, 1, 0]
    simplex = SimplicialComplex.from_facets(4, [[1, 2, 3, 4]])
    for sigma in ([1], [1, 2], [2, 3, 4], [1, 2, 3, 4]):
        assert not any(reduced_homology_ranks(simplex, sigma))
    # the empty restriction has H~_{-1} = K
    assert reduced_homology_ranks(simplex, []) == [1]


def test_five_cycle_homology():
    cx = independence_complex(edge_ideal(cycle_power(5, 1)))
    assert reduced_homology_ranks(cx, range(1, 6)) == [0, 0, 1, 0, 0, 0]
    assert reduced_homology_ranks(cx, range(1, 6), 2) == [0, 0, 1, 0, 0, 0]


def test_real_projective_plane_depends_on_characteristic():
    # six-vertex triangulation of RP^2: H~_1 = Z/2, so the field matters
    facets = [
        [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 2, 6],
        [2, 3, 5], [3, 4, 6], [2, 4, 5], [3, 5, 6], [2, 4, 6],
    ]
    cx = SimplicialComplex.from_facets(6, facets)
    assert reduced_homology_ranks(cx, range(1, 7), 0) == [0, 0, 0, 0, 0, 0, 0]
    assert reduced_homology_ranks(cx, range(1, 7), 2) == [0, 0, 1, 1, 0, 0, 0]


def test_homology_rejects_sigma_outside():
    cx = SimplicialComplex.from_facets(2, [[1, 2]])
    with pytest.raises(InvalidInputError):
        reduced_homology_ranks(cx, [3])


# -- projective dimension and depth -----------------------------------------


def test_pd_examples():
    assert projective_dimension(MonomialIdeal.from_lists([[1, 2]], 2)) == 1
    for n in range(2, 8):
        assert projective_dimension(edge_ideal(complete_graph(n))) == n - 1
    assert projective_dimension(edge_ideal(path_power(7, 1))) == 4


def test_depth_examples():
    assert depth_quotient(edge_ideal(path_power(5, 2))) == 1
    assert depth_quotient(edge_ideal(cycle_power(8, 2))) == 2
    assert depth_quotient(edge_ideal(cycle_power(7, 2))) in (1, 2)
    assert depth_quotient(MonomialIdeal(4)) == 4
    assert depth_ideal(edge_ideal(path_power(5, 2))) == 2
    assert depth_ideal(MonomialIdeal.from_lists([[1]], 1)) == 1
    assert depth_ideal(edge_ideal(complete_graph(4))) == 2


def test_depth_errors():
    with pytest.raises(DegenerateError):
        depth_quotient(MonomialIdeal(3, (0,)))
    with pytest.raises(DegenerateError):
        depth_ideal(MonomialIdeal(3))


def test_free_variables_add_to_depth():
    base = edge_ideal(path_power(5, 1))
    for extra in range(1, 4):
        assert depth_quotient(base.with_ambient(5 + extra)) == depth_quotient(base) + extra


def test_witness_realizes_pd():
    i = edge_ideal(cycle_power(9, 2))
    pd, sigma = pd_with_witness(i)
    table = betti_table(i)
    assert table.entries.get((pd - 1, sigma), 0) > 0
    assert max(j for j, _ in table.entries) == pd - 1


@pytest.mark.parametrize("family,n,k", [("path", 6, 1), ("cycle", 6, 1), ("path", 7, 2), ("cycle", 7, 2)])
def test_betti_row_zero_is_generators(family, n, k):
    i = edge_ideal((path_power if family == "path" else cycle_power)(n, k))
    table = betti_table(i)
    assert table.positions(0) == set(i.gens)
    assert table.total(0) == len(i.gens)


def test_betti_csv():
    table = betti_table(edge_ideal(path_power(3, 1)))
    assert table.to_csv().splitlines() == ["i,sigma,beta", "0,1 2,1", "0,2 3,1", "1,1 2 3,1"]


@pytest.mark.parametrize("family", ["path", "cycle"])
def test_depth_plus_pd_and_field_agreement(family):
    for n in range(3, 11):
        for k in range(1, 4):
            i = edge_ideal((path_power if family == "path" else cycle_power)(n, k))
            pd = projective_dimension(i)
            assert pd >= 1
            assert depth_quotient(i) + pd == n
            assert depth_quotient(i, 32003) == depth_quotient(i)
