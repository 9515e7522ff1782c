import numpy as np
import pytest
from hypothesis import given, settings

from hooknet.simulate import (
    GraphState,
    SimulationDefect,
    UniformStream,
    degree_counts,
    init,
    make_rng,
    pick,
    run,
    run_batch,
    step,
)
from hooknet.urn import build_replacement_matrix

from conftest import profile_for
from strategies import profiles

EXAMPLES = [("k4", 1), ("degenerate", 1), ("k4", 2), ("k4", 3)]


def test_forced_first_draw(binary):
    model = build_replacement_matrix(binary)
    state = init(model)
    step(state, model, 0.5, color=0)
    assert state.X == [8, 4, 1, 0]
    assert degree_counts(state, binary) == [4, 2, 1, 0, 0, 0]
    assert state.total_balls == 13


def test_zero_steps(binary):
    t = run(binary, 0, 1)
    assert t.D == [3, 1, 0, 0, 0, 0]
    assert t.X == [6, 2, 0, 0]


def test_pick_boundaries():
    assert pick([0, 3, 1], 4, 0.0) == (1, 0)
    assert pick([0, 3, 1], 4, 0.74) == (1, 2)
    assert pick([0, 3, 1], 4, 0.75) == (2, 0)
    assert pick([0, 3, 1], 4, np.nextafter(1.0, 0)) == (2, 0)


def test_forced_draw_from_empty_color(binary):
    model = build_replacement_matrix(binary)
    with pytest.raises(SimulationDefect):
        step(init(model), model, 0.1, color=2)


@pytest.mark.parametrize("name, m", EXAMPLES)
def test_coupling_holds(name, m):
    t = run(profile_for(name, m), 500, 11, "coupled")
    assert t.coupling_held is True
    p = profile_for(name, m)
    assert t.node_count == p.tau0 + 500 * (p.tau0 - 1)


@pytest.mark.parametrize("name, m", EXAMPLES)
def test_graph_mode_matches_urn(name, m):
    p = profile_for(name, m)
    assert run(p, 300, 5, "graph").D == run(p, 300, 5, "urn").D


@pytest.mark.parametrize("name, m", EXAMPLES)
def test_linear_identity_every_step(name, m):
    t = run(profile_for(name, m), 1000, 3, check_linear=True)
    assert sum(t.D) == profile_for(name, m).tau0 + 1000 * (profile_for(name, m).tau0 - 1)


@settings(max_examples=15, deadline=None)
@given(profiles(max_k=4, max_m=4, max_count=5))
def test_linear_identity_random_profiles(p):
    run(p, 200, 1, check_linear=True)
    assert run(p, 200, 1, "coupled").coupling_held


def test_graph_state_counts(binary):
    g = GraphState.from_profile(binary)
    assert g.slot_counts() == [6, 2, 0, 0]
    assert g.plain_counts() == {3: 3, 7: 1}
    # the degree-7 node takes a hooking; the fresh copy brings two 3s and a 7
    assert g.hook_at(1, 1) == g.color_nodes[3][0]
    assert g.slot_counts() == [10, 2, 0, 1]
    assert g.resolved_counts() == [5, 1, 0, 1, 0, 0]
    assert g.plain_counts() == {3: 5, 7: 1, 10: 1}
    assert g.edges == 16


def test_determinism_and_streams(binary):
    a = run(binary, 2000, 42)
    b = run(binary, 2000, 42)
    c = run(binary, 2000, 42, stream=1)
    assert a.D == b.D and a.X == b.X
    assert a.D != c.D


def test_uniform_stream_chunking():
    small = UniformStream(make_rng(9), chunk=7)
    large = UniformStream(make_rng(9))
    assert [small.next() for _ in range(50)] == [large.next() for _ in range(50)]


def test_checkpoints(binary):
    t = run(binary, 50, 2, checkpoints=[0, 10, 50])
    assert [s.step for s in t.snapshots] == [0, 10, 50]
    assert t.snapshots[0].D == (3, 1, 0, 0, 0, 0)
    assert list(t.snapshots[-1].D) == t.D


@pytest.mark.parametrize("name, m", EXAMPLES)
def test_batch_matches_single_runs(name, m):
    p = profile_for(name, m)
    batch = run_batch(p, 5000, 17, range(4))
    for r in range(4):
        assert batch[r].tolist() == run(p, 5000, 17, stream=r).D


def test_overflow_guard(binary):
    with pytest.raises(OverflowError):
        run(binary, 2**52, 0)
