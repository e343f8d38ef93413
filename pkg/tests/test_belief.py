"""Online belief tracking and the compiled predictor automaton."""

from __future__ import annotations

import random

import pytest

from faultcast import (
    INF,
    CapExceededError,
    ImpossibleObservationError,
    Interval,
    PredictionSession,
    belief_step,
    build_twin,
    compile_predictor,
    compute_distances,
    initial_belief,
    predict_sequence,
)
from faultcast.oracle import (
    OracleConfig,
    oracle_beliefs,
    random_live_model,
    sample_run,
)


def _member_names(model, belief):
    return {model.states[q] for q in belief.members}


def test_plant_initial_belief(plant):
    table = compute_distances(plant)
    belief = initial_belief(plant, table)
    assert _member_names(plant, belief) == {"A", "C"}
    assert belief.interval == Interval(3, INF)
    lo_w, hi_w = belief.witnesses
    assert table.dmin[lo_w] == belief.interval.lo
    assert table.dmax[hi_w] == belief.interval.hi
    assert {lo_w, hi_w} <= belief.members


def test_plant_belief_chain(plant):
    table = compute_distances(plant)
    belief = initial_belief(plant, table)
    expectations = [
        ("a", {"B", "D"}, Interval(2, INF)),
        ("d", {"E", "F"}, Interval(1, 2)),
        ("c", {"F"}, Interval(1, 1)),
        ("a", {"G"}, Interval(0, 0)),
    ]
    for name, members, interval in expectations:
        belief = belief_step(plant, table, belief, plant.event_index[name])
        assert _member_names(plant, belief) == members
        assert belief.interval == interval


def test_predict_sequence_equals_session_feeds(plant):
    table = compute_distances(plant)
    stream = ["a", "d", "c", "a"]
    session = PredictionSession(plant, table)
    intervals = [session.feed(name) for name in stream]
    for cut in range(len(stream) + 1):
        events = [plant.event_index[n] for n in stream[:cut]]
        expected = intervals[cut - 1] if cut else initial_belief(plant, table).interval
        assert predict_sequence(plant, table, events) == expected


def test_short_fuse_beliefs(fuse_short):
    table = compute_distances(fuse_short)
    session = PredictionSession(fuse_short, table)
    assert _member_names(fuse_short, session.belief) == {"S0"}
    assert session.interval == Interval(2, INF)
    assert session.feed("b") == Interval(2, INF)
    assert session.feed("a") == Interval(1, 1)
    assert session.feed("a") == Interval(0, 0)


def test_impossible_observations(plant):
    table = compute_distances(plant)
    belief = initial_belief(plant, table)
    # Unobservable events never appear in an observation stream.
    with pytest.raises(ImpossibleObservationError):
        belief_step(plant, table, belief, plant.event_index["t"])
    # No member of {A, C} can take b.
    with pytest.raises(ImpossibleObservationError):
        belief_step(plant, table, belief, plant.event_index["b"])
    session = PredictionSession(plant, table)
    with pytest.raises(ImpossibleObservationError):
        session.feed("nope")


def test_session_feed_accepts_indexes_and_names(plant):
    by_name = PredictionSession(plant)
    by_index = PredictionSession(plant)
    assert by_name.feed("a") == by_index.feed(plant.event_index["a"])
    assert by_name.belief.members == by_index.belief.members


def test_plant_compiled_predictor(plant):
    automaton = compile_predictor(plant)
    got = [
        (_member_names(plant, node), node.interval) for node in automaton.nodes
    ]
    assert got == [
        ({"A", "C"}, Interval(3, INF)),
        ({"B", "D"}, Interval(2, INF)),
        ({"C"}, Interval(3, INF)),
        ({"E", "F"}, Interval(1, 2)),
        ({"D"}, Interval(2, INF)),
        ({"G"}, Interval(0, 0)),
        ({"F"}, Interval(1, 1)),
    ]
    assert len(automaton.edges) == 11
    assert automaton.initial == 0


def test_fan_compiled_predictor(fan2):
    automaton = compile_predictor(fan2)
    assert [_member_names(fan2, node) for node in automaton.nodes] == [
        {"A"},
        {"B1", "B2", "C"},
        {"D1", "D2"},
    ]
    assert all(node.interval == Interval(INF, INF) for node in automaton.nodes)
    a = fan2.event_index["a"]
    assert automaton.step(0, a) == 1
    assert automaton.step(1, a) == 2
    assert automaton.step(2, a) == 2
    assert automaton.step(0, fan2.event_index["t"]) is None


def test_automaton_walk_matches_stepwise_tracking(plant):
    table = compute_distances(plant)
    automaton = compile_predictor(plant, table)
    session = PredictionSession(plant, table)
    node = automaton.initial
    for name in ["a", "b", "a", "d", "c", "a", "a"]:
        event = plant.event_index[name]
        session.feed(name)
        node = automaton.step(node, event)
        assert node is not None
        assert automaton.nodes[node].members == session.belief.members


def test_node_cap_is_enforced(plant):
    with pytest.raises(CapExceededError) as exc:
        compile_predictor(plant, cap=3)
    assert exc.value.cap == 3
    assert exc.value.explored == 3


def test_intervals_shrink_along_every_edge(
    plant, fuse_short, fuse_long, fan2
):
    # One more observation never loosens the promise: each successor
    # interval sits inside the predecessor's, shifted by the observation.
    for model in (plant, fuse_short, fuse_long, fan2):
        automaton = compile_predictor(model)
        assert automaton.edges
        for (src, _), dst in automaton.edges.items():
            before = automaton.nodes[src].interval
            after = automaton.nodes[dst].interval
            assert after.issubset(before.decrement())


def test_every_belief_interval_is_a_witness_pair_hull(
    plant, fuse_short, fuse_long, fan2
):
    # Two members suffice to pin the hull, and those two members are
    # confusable, so the interval also shows up as a reachable pair hull.
    for model in (plant, fuse_short, fuse_long, fan2):
        table = compute_distances(model)
        twin = build_twin(model)
        for node in compile_predictor(model, table).nodes:
            lo_w, hi_w = node.witnesses
            assert Interval(table.dmin[lo_w], table.dmax[hi_w]) == node.interval
            pair = (min(lo_w, hi_w), max(lo_w, hi_w))
            assert pair in twin.pairs


def test_random_runs_stay_inside_tracked_beliefs():
    rng = random.Random(77)
    for _ in range(40):
        model = random_live_model(rng, OracleConfig())
        table = compute_distances(model)
        states, events = _observable_walk(model, rng, 12)
        session = PredictionSession(model, table)
        assert states[0] in session.belief.members
        for state, event in zip(states[1:], events):
            session.feed(event)
            assert state in session.belief.members


def _observable_walk(model, rng, length):
    """Random walk reported as (states after each observation, events)."""
    state = model.initial
    states = [state]
    events: list[int] = []
    for _ in range(100):
        if len(events) == length:
            break
        src, ev, dst = rng.choice(model.outgoing[state])
        state = dst
        if model.events[ev].observable:
            events.append(ev)
            states.append(state)
    return states, events


def test_compiled_predictor_covers_oracle_beliefs(plant):
    automaton = compile_predictor(plant)
    assert [node.members for node in automaton.nodes] == oracle_beliefs(plant)


def coarse_rule(obs_names):
    """Hand predictor for the drifting plant, keyed on the alarm d.

    It is honest but coarse; the belief tracker must never announce a
    wider interval than this floor.
    """
    if "d" not in obs_names:
        return Interval(2, INF)
    tail = len(obs_names) - 1 - max(
        k for k, name in enumerate(obs_names) if name == "d"
    )
    if tail == 0:
        return Interval(1, 2)
    if tail == 1:
        return Interval(0, 1)
    return Interval(0, 0)


def test_tracked_intervals_never_exceed_the_coarse_rule(plant):
    automaton = compile_predictor(plant)
    frontier = [(automaton.initial, ())]
    for _ in range(7):
        nxt = []
        for node, obs in frontier:
            names = [plant.events[e].name for e in obs]
            assert automaton.nodes[node].interval.issubset(coarse_rule(names))
            for event in range(len(plant.events)):
                target = automaton.step(node, event)
                if target is not None:
                    nxt.append((target, obs + (event,)))
        frontier = nxt


def test_every_faulty_run_passes_a_tight_prefix(plant):
    # Before the fault arrives, some prefix already announced an interval
    # inside (1, 2): one observation of warning, at most two of waiting.
    table = compute_distances(plant)
    rng = random.Random(404)
    target = Interval(1, 2)
    faulty_runs = 0
    for _ in range(300):
        states, events = sample_run(plant, rng, 25)
        if states[-1] not in plant.faulty:
            continue
        faulty_runs += 1
        session = PredictionSession(plant, table)
        seen = [session.interval]
        for event in events:
            if plant.events[event].observable:
                seen.append(session.feed(event))
        assert any(interval.issubset(target) for interval in seen)
    assert faulty_runs >= 30
