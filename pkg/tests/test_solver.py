"""Exact branch-and-bound solver: optima, certificates, determinism."""

from itertools import combinations

import pytest

from trbroadcast import (
    GraphSpec,
    InputError,
    SignalParams,
    SolveResult,
    TowerSet,
    is_broadcasting,
    solve,
    verify_witness,
)


def brute_force_gamma(spec, params):
    """Smallest broadcasting set by exhaustive subset enumeration."""
    nv = spec.num_vertices
    for size in range(1, nv + 1):
        for combo in combinations(range(nv), size):
            if is_broadcasting(TowerSet(spec, combo), params).ok:
                return size
    return None


def test_path_example():
    result = solve(GraphSpec.path_power(10, 1), SignalParams(3, 2))
    assert result.gamma == 3
    assert result.witness.vertices == (0, 4, 8)
    assert result.proof_of_optimality
    assert verify_witness(result, GraphSpec.path_power(10, 1), SignalParams(3, 2))


def test_cycle_example():
    result = solve(GraphSpec.cycle_power(12, 1), SignalParams(3, 2))
    assert result.gamma == 3
    assert result.proof_of_optimality
    assert verify_witness(result, GraphSpec.cycle_power(12, 1), SignalParams(3, 2))


def test_single_vertex():
    for k in (1, 4):
        for t, r in [(1, 1), (3, 2), (5, 5)]:
            result = solve(GraphSpec.path_power(1, k), SignalParams(t, r))
            assert result.gamma == 1
            assert result.witness.vertices == (0,)


def test_grid_and_torus_spot_values():
    result = solve(GraphSpec.grid(3, 3), SignalParams(2, 1))
    assert result.gamma == 3
    assert result.witness.vertices == (0, 2, 7)
    # 5x5 torus at (2,1): the classic perfect radius-1 cover
    result = solve(GraphSpec.torus(5, 5), SignalParams(2, 1))
    assert result.gamma == 5
    assert verify_witness(result, GraphSpec.torus(5, 5), SignalParams(2, 1))


def test_matches_brute_force_on_small_instances():
    cases = [
        (GraphSpec.path_power(6, 1), SignalParams(2, 1)),
        (GraphSpec.path_power(7, 2), SignalParams(3, 3)),
        (GraphSpec.cycle_power(8, 1), SignalParams(3, 2)),
        (GraphSpec.cycle_power(9, 2), SignalParams(2, 2)),
        (GraphSpec.grid(2, 5), SignalParams(2, 1)),
        (GraphSpec.torus(3, 4), SignalParams(3, 2)),
    ]
    for spec, params in cases:
        result = solve(spec, params)
        assert result.proof_of_optimality
        assert result.gamma == brute_force_gamma(spec, params)
        assert verify_witness(result, spec, params)


def test_determinism_including_node_counts():
    spec = GraphSpec.path_power(10, 1)
    params = SignalParams(3, 2)
    first = solve(spec, params)
    second = solve(spec, params)
    assert first == second
    assert first.nodes_explored == 45
    assert solve(GraphSpec.cycle_power(12, 1), params).nodes_explored == 50


def test_gamma_monotone_in_strength_and_size():
    # stronger towers never need more of them
    gammas = [solve(GraphSpec.path_power(12, 2), SignalParams(t, 2)).gamma
              for t in range(2, 6)]
    assert gammas == sorted(gammas, reverse=True)
    # longer paths never need fewer
    gammas = [solve(GraphSpec.path_power(n, 1), SignalParams(3, 2)).gamma
              for n in range(4, 15)]
    assert gammas == sorted(gammas)


def test_engine_handles_demand_above_strength():
    # t < r is satisfiable here: all three towers together reach 3
    result = solve(GraphSpec.path_power(3, 1), SignalParams(2, 3))
    assert result.gamma == 3
    assert result.witness.vertices == (0, 1, 2)


def test_infeasible_demand_is_an_input_error():
    with pytest.raises(InputError):
        solve(GraphSpec.path_power(3, 1), SignalParams(1, 2))


def test_budget_exhaustion_is_explicit():
    result = solve(GraphSpec.path_power(18, 1), SignalParams(2, 1), node_budget=3)
    assert not result.proof_of_optimality
    assert result.gamma is None
    assert result.witness is None
    assert result.nodes_explored == 4
    assert not verify_witness(result, GraphSpec.path_power(18, 1), SignalParams(2, 1))
    with pytest.raises(InputError):
        solve(GraphSpec.path_power(5, 1), SignalParams(2, 1), node_budget=0)


def test_verify_witness_rejects_tampering():
    spec = GraphSpec.path_power(10, 1)
    params = SignalParams(3, 2)
    result = solve(spec, params)

    dropped = SolveResult(
        gamma=result.gamma - 1,
        witness=TowerSet(spec, result.witness.vertices[:-1]),
        nodes_explored=0,
        proof_of_optimality=True,
    )
    assert not verify_witness(dropped, spec, params)

    length_lie = SolveResult(
        gamma=result.gamma,
        witness=TowerSet(spec, result.witness.vertices[:-1]),
        nodes_explored=0,
        proof_of_optimality=True,
    )
    assert not verify_witness(length_lie, spec, params)

    wrong_graph = SolveResult(
        gamma=result.gamma,
        witness=result.witness,
        nodes_explored=0,
        proof_of_optimality=True,
    )
    assert not verify_witness(wrong_graph, GraphSpec.path_power(11, 1), params)

    empty = SolveResult(
        gamma=0,
        witness=TowerSet(spec, ()),
        nodes_explored=0,
        proof_of_optimality=True,
    )
    assert not verify_witness(empty, spec, params)
