from __future__ import annotations

import json

import pytest

from kgc import (
    HalfInteger,
    SolveOptions,
    apsp,
    build_profile,
    exact_optimum,
    family_eccentricity,
    four_point_delta,
    is_isometric,
    path_graph,
    random_tree,
    solve,
    solve_tree,
    star_graph,
    subdivide,
    tau_hat_from_delta,
)
from conftest import small_graph_corpus, tree_corpus


def test_solve_path_k1():
    res = solve(path_graph(5), 1)
    assert res.radius == 0
    assert res.paths == ((0, 1, 2, 3, 4),)
    assert res.rooted.radius == 0
    assert res.bounds.lower == 0


def test_solve_star5_k2_matches_oracle():
    g = star_graph(5)
    res = solve(g, 2)
    assert res.radius == 1
    oracle = exact_optimum(g, apsp(g), 2)
    assert oracle.optimum == 1
    # the packing witness certifies no rooted family works at radius 0
    assert res.rooted.packing_witness is not None
    assert res.rooted.packing_witness.radius == 0


def test_solve_spider_k1_exact():
    g = subdivide(star_graph(3), 2)
    res = solve(g, 1)
    oracle = exact_optimum(g, apsp(g), 1)
    assert res.radius == oracle.optimum == 2


def test_solve_tree_examples():
    g = random_tree(20, 1)
    res = solve_tree(g, 2)
    assert res.exact
    assert res.radius == exact_optimum(g, apsp(g), 2).optimum

    star = star_graph(4)
    res = solve_tree(star, 2)
    assert res.radius == 0
    assert res.radius == exact_optimum(star, apsp(star), 2).optimum

    assert solve_tree(path_graph(5), 3).radius == 0


def test_solve_tree_rejects_non_tree():
    from kgc import cycle_graph

    with pytest.raises(ValueError, match="not a tree"):
        solve_tree(cycle_graph(4), 1)


def test_solve_rejects_bad_k():
    g = path_graph(4)
    with pytest.raises(ValueError):
        solve(g, 0)
    with pytest.raises(ValueError):
        solve(g, 5)


def test_profile_shape():
    res = solve(star_graph(5), 2)
    profile = build_profile(res.rooted, 2)
    assert len(profile) == 4
    assert profile[0] == res.rooted.root
    # every non-root cover endpoint shows up
    for p in res.rooted.cover:
        assert p[-1] in profile


def test_result_structure_invariants():
    for g in small_graph_corpus(12, 11, seed=171):
        D = apsp(g)
        for k in (1, 2, 3):
            res = solve(g, k)
            assert 1 <= len(res.paths) <= k
            for p in res.paths:
                assert is_isometric(D, p)
            # radius is recomputed from the paths, never trusted
            assert res.radius == family_eccentricity(g, res.paths)
            assert res.radius <= res.bounds.upper
            assert len(res.pairing.pairs) == k


def test_guarantee_chain_random():
    # radius <= R_u + 5*tau + 1 whenever the pairing is at most 2*tau + 1/2
    for g in small_graph_corpus(15, 12, seed=181):
        D = apsp(g)
        tau = tau_hat_from_delta(four_point_delta(D))
        for k in (1, 2):
            res = solve(g, k)
            cover_ecc = family_eccentricity(g, res.rooted.cover)
            # the greedy cover stays within 2*tau of the search radius
            assert 2 * cover_ecc <= 2 * res.rooted.radius + 2 * tau.doubled
            if res.pairing.gamma.doubled <= 2 * tau.doubled + 1:
                assert res.radius <= res.rooted.radius + (5 * tau.doubled) // 2 + 1
                # pairing recombination loses at most 3*tau + 1 over the cover
                assert 2 * res.radius <= 2 * cover_ecc + 3 * tau.doubled + 2


def test_tree_radius_equals_rooted_radius():
    for g in tree_corpus(10, 5, 25, seed=191):
        for k in (1, 2, 3):
            res = solve_tree(g, k)
            assert res.radius == res.rooted.radius


def test_fixed_gamma_mode():
    g = star_graph(5)
    D = apsp(g)
    tau = tau_hat_from_delta(four_point_delta(D))
    res = solve(g, 2, SolveOptions(gamma_doubled=2 * tau.doubled + 1))
    assert res.pairing.gamma == HalfInteger(2 * tau.doubled + 1)
    assert res.radius == 1
    with pytest.raises(ValueError, match="no shallow pairing"):
        solve(path_graph(6), 2, SolveOptions(gamma_doubled=-2))


def test_supplied_tau_recorded():
    g = star_graph(4)
    res = solve(g, 1, SolveOptions(tau_hat_doubled=6))
    assert res.bounds.tau_source == "supplied"
    assert res.bounds.tau_hat == HalfInteger(6)
    res = solve(g, 1)
    assert res.bounds.tau_source == "computed"


def test_best_effort_never_worse():
    for g in small_graph_corpus(8, 11, seed=201):
        for k in (1, 2):
            plain = solve(g, k)
            tuned = solve(g, k, SolveOptions(best_effort=True))
            assert tuned.radius <= plain.radius


def test_optimality_sandwich_small():
    for g in small_graph_corpus(10, 9, seed=211):
        D = apsp(g)
        tau = tau_hat_from_delta(four_point_delta(D))
        for k in (1, 2):
            res = solve(g, k)
            opt = exact_optimum(g, D, k).optimum
            assert opt <= res.radius
            assert res.bounds.lower <= opt
            assert 2 * (res.radius - opt) <= 6 * tau.doubled + 2


def test_solve_tiny_graphs():
    res = solve(path_graph(1), 1)
    assert res.radius == 0 and res.paths == ((0,),)
    res = solve(path_graph(2), 1)
    assert res.radius == 0
    res = solve(path_graph(2), 2)
    assert res.radius == 0


def test_deterministic_serialization():
    for g in small_graph_corpus(5, 10, seed=221):
        a = json.dumps(solve(g, 2).as_dict(), sort_keys=True)
        b = json.dumps(solve(g, 2).as_dict(), sort_keys=True)
        c = json.dumps(
            solve(g, 2, SolveOptions(threads=4)).as_dict(), sort_keys=True
        )
        d = json.dumps(
            solve(g, 2, SolveOptions(prune=False)).as_dict(), sort_keys=True
        )
        assert a == b == c == d
