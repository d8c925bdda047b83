import pytest

from ..certificate import HOMOTOPICAL, ConnectingVector, HomWitness
from ..group import CharacterError, template_spec, validate_character
from ..rips import Chain, apply_tables, boundary, enumerate_rep_simplices, is_k_small, valuation
from ..search import WINDOW_EXHAUSTED, Maybe, NotFound, SearchBudget
from ..sigma_hom import (
    build_mu,
    run_algorithm1,
    search_step,
    solve_boundary_equation,
    suggest_connecting_vector,
    widen_witness,
)
from ..verify import verify_hom_witness


def _phi0(t):
    return {("",): Chain.from_simplex((t,))}


def _assert_chain_map(spec, tables, k_of_degree):
    """Raises assertion errors unless the tables commute with the boundary and have small images"""
    for q in range(1, len(tables)):
        for simplex, image in tables[q].items():
            assert boundary(image) == apply_tables(spec, tables[q - 1], boundary(Chain.from_simplex(simplex)))
            for s in image.support():
                assert is_k_small(spec, s, k_of_degree(q))


def test_connecting_vector():
    cv = ConnectingVector.parse("(0,1,2)")
    assert cv.entries == (0, 1, 2)
    assert cv.m == 2 and cv.n == 2
    assert cv.to_text() == "(0,1,2)"
    with pytest.raises(ValueError):
        ConnectingVector.parse("0,x")
    with pytest.raises(ValueError):
        ConnectingVector([0, -1])


def test_search_step_single_edge():
    z2 = template_spec("Z2")
    chi = validate_character(z2, [1, 0])
    result = search_step(z2, 1, ("", "b"), _phi0("a"), chi, "a", 1, SearchBudget())
    assert result == Chain.from_simplex(("a", "ab"))


def test_search_step_degenerate_simplex():
    z2 = template_spec("Z2")
    chi = validate_character(z2, [1, 0])
    result = search_step(z2, 1, ("", ""), _phi0("a"), chi, "a", 1, SearchBudget())
    assert result == Chain(1)


def test_search_step_free_group_fails():
    f2 = template_spec("F2")
    chi = validate_character(f2, [1, 0])
    result = search_step(f2, 1, ("", "b"), _phi0("a"), chi, "a", 1, SearchBudget(max_radius=3))
    assert isinstance(result, NotFound)
    assert result.reason == WINDOW_EXHAUSTED
    assert result.radius == 3


def test_solve_boundary_equation_fills_cycle():
    z2 = template_spec("Z2")
    chi = validate_character(z2, [1, 0])
    # boundary of the square a, aa, aab, ab
    cycle = Chain(1, {("a", "aa"): 1, ("aa", "aab"): 1, ("aab", "ab"): 1, ("ab", "a"): 1})
    result = solve_boundary_equation(z2, 2, cycle, 2, chi, 1, SearchBudget())
    assert boundary(result) == cycle
    assert valuation(chi, result) >= 1
    assert all(is_k_small(z2, s, 2) for s in result.support())

    budget = SearchBudget(improve_with_kernel=True)
    shorter = solve_boundary_equation(z2, 2, cycle, 2, chi, 1, budget)
    assert boundary(shorter) == cycle
    assert sum(abs(c) for _, c in shorter.items()) <= sum(abs(c) for _, c in result.items())


def test_algorithm1_z2():
    z2 = template_spec("Z2")
    chi = validate_character(z2, [1, 0])
    witness = run_algorithm1(z2, ConnectingVector([0, 1, 2]), chi)
    assert isinstance(witness, HomWitness)
    assert witness.t == "a"
    assert witness.n == 2 and witness.m == 2
    assert set(witness.tables[1]) == set(enumerate_rep_simplices(z2, 1, 2))
    assert set(witness.tables[2]) == set(enumerate_rep_simplices(z2, 2, 2))
    _assert_chain_map(z2, witness.tables, lambda q: 2)
    assert verify_hom_witness(witness, z2)


def test_algorithm1_parallel_matches_sequential():
    z2 = template_spec("Z2")
    chi = validate_character(z2, [0, -1])
    first = run_algorithm1(z2, ConnectingVector([0, 1]), chi, jobs=1)
    second = run_algorithm1(z2, ConnectingVector([0, 1]), chi, jobs=4)
    assert first.tables == second.tables


def test_algorithm1_degree_zero():
    z2 = template_spec("Z2")
    witness = run_algorithm1(z2, ConnectingVector([0]), validate_character(z2, [0, 1]))
    assert witness.m == 0
    assert witness.tables == [{("",): Chain.from_simplex(("b",))}]
    assert verify_hom_witness(witness, z2)


def test_algorithm1_free_group_gives_maybe():
    f2 = template_spec("F2")
    chi = validate_character(f2, [1, 0])
    result = run_algorithm1(f2, ConnectingVector([0, 1]), chi, SearchBudget(max_radius=3))
    assert isinstance(result, Maybe)
    assert not result
    assert result.q == 1
    assert result.simplex == ("", "b")
    assert result.level == 1
    assert result.reason == WINDOW_EXHAUSTED
    assert "MAYBE" in result.to_text()


def test_algorithm1_free_group_larger_radius_gives_maybe():
    f2 = template_spec("F2")
    chi = validate_character(f2, [1, 0])
    result = run_algorithm1(f2, ConnectingVector([0, 3]), chi, SearchBudget(max_radius=6))
    assert isinstance(result, Maybe)
    assert result.q == 1
    assert result.reason == WINDOW_EXHAUSTED
    assert result.radius == 6


def test_algorithm1_rejects_bad_input():
    z2 = template_spec("Z2")
    with pytest.raises(CharacterError):
        run_algorithm1(z2, ConnectingVector([0, 1]), validate_character(z2, [0, 0]))
    with pytest.raises(ValueError):
        run_algorithm1(z2, ConnectingVector([0, 1], HOMOTOPICAL), validate_character(z2, [1, 0]))
    with pytest.raises(ValueError):
        run_algorithm1(z2, ConnectingVector([0, 1]), validate_character(z2, [1, 0]), m=2)
    with pytest.raises(ValueError):
        run_algorithm1(z2, ConnectingVector([0, 0]), validate_character(z2, [1, 0]))


def test_build_mu():
    z2 = template_spec("Z2")
    cv = ConnectingVector([0, 1, 2])
    mu = build_mu(z2, cv, 2)
    assert mu[0] == {("",): Chain.from_simplex(("",))}
    assert set(mu[1]) == set(enumerate_rep_simplices(z2, 1, 2))
    _assert_chain_map(z2, mu, lambda q: cv[q])
    # edges that are already 1-small are mapped to paths of one step
    assert mu[1][("", "a")] == Chain.from_simplex(("", "a"))

    with pytest.raises(ValueError):
        build_mu(z2, cv, 1)


def test_widen_witness():
    z2 = template_spec("Z2")
    chi = validate_character(z2, [1, 0])
    cv = ConnectingVector([0, 1])
    witness = run_algorithm1(z2, cv, chi)
    mu = build_mu(z2, cv, 2)
    wide = widen_witness(z2, witness, mu, 2)
    assert wide.n == 2
    assert wide.connecting_vector.entries == (2, 2)
    assert set(wide.tables[1]) == set(enumerate_rep_simplices(z2, 1, 2))
    assert verify_hom_witness(wide, z2)


def test_suggest_z2():
    z2 = template_spec("Z2")
    suggestions = suggest_connecting_vector(z2, 2, 3, 2)
    assert len(suggestions) == 1
    assert suggestions[0].vector.entries == (0, 1, 2)
    assert suggestions[0].complete
    assert suggestions[0].to_text() == "(0,1,2) [HEURISTIC]"


def test_suggest_with_homology():
    z2 = template_spec("Z2")
    suggestion = suggest_connecting_vector(z2, 2, 3, 1, with_homology=True)[0]
    # VR_0 of the ball of radius 1 is five points, VR_1 is a star (a tree)
    assert suggestion.homology[0] == (0, 0, (4, []))
    assert suggestion.homology[1][2] == (0, [])


def test_suggest_without_room():
    z2 = template_spec("Z2")
    suggestion = suggest_connecting_vector(z2, 1, 0, 0)[0]
    assert suggestion.vector.entries == (0,)
    assert not suggestion.complete
