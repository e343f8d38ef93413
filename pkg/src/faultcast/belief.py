"""Online fault prediction by tracking the set of possible states.

After an observation sequence o, the monitor's knowledge is the belief:
every state some run consistent with o could be in right now, including
states reached by trailing unobservable events.  The prediction emitted
for o is the hull of the member states' own intervals, so its bounds are
achieved by (at most) two members, recorded as witnesses.  Feeding one
more observation can only keep or sharpen the promise: the new interval
is contained in the old one shifted by one observation.

Beliefs are always closed under unobservable moves, and an observable
event maps a belief to the closure of its event successors.  An event
with no successors is impossible: no run of the model explains it, so the
stream and the model disagree and prediction stops with an error.

compile_predictor enumerates every reachable belief into a finite
automaton (the subset construction), which can be exported or used as a
zero-lookup online predictor.  The number of beliefs can be exponential
in the state count, hence the node cap.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union

from .distances import DistanceTable, compute_distances
from .errors import CapExceededError, ImpossibleObservationError
from .intervals import Interval
from .model import DesModel, unobservable_closure

#: Default ceiling for compile_predictor node counts.
DEFAULT_NODE_CAP = 1 << 16


@dataclass(frozen=True)
class BeliefState:
    """A non-empty set of possible states with its hull interval.

    witnesses holds one member achieving the lower bound and one
    achieving the upper bound, in that order.
    """

    members: frozenset[int]
    interval: Interval
    witnesses: tuple[int, int]


def _make_belief(table: DistanceTable, members: frozenset[int]) -> BeliefState:
    lo_witness = min(members, key=lambda q: (table.dmin[q], q))
    hi_witness = max(members, key=lambda q: (table.dmax[q], -q))
    return BeliefState(
        members=members,
        interval=Interval(table.dmin[lo_witness], table.dmax[hi_witness]),
        witnesses=(lo_witness, hi_witness),
    )


def initial_belief(model: DesModel, table: DistanceTable) -> BeliefState:
    """The belief before any observation: the initial state's closure."""
    members = unobservable_closure(model, (model.initial,))
    return _make_belief(table, members)


def belief_step(
    model: DesModel, table: DistanceTable, belief: BeliefState, event: int
) -> BeliefState:
    """Advance a belief by one observed event.

    Raises ImpossibleObservationError when the event is unobservable or
    no member can take it, since then no run of the model produces this
    observation.
    """
    if not model.events[event].observable:
        raise ImpossibleObservationError(
            f"event {model.events[event].name} is not observable"
        )
    targets = {
        dst for q in belief.members for dst in model.successors(q, event)
    }
    if not targets:
        raise ImpossibleObservationError(
            f"no run explains observing {model.events[event].name} here"
        )
    return _make_belief(table, unobservable_closure(model, targets))


def predict_sequence(
    model: DesModel, table: DistanceTable, events: Sequence[int]
) -> Interval:
    """The interval announced after observing the whole sequence."""
    belief = initial_belief(model, table)
    for event in events:
        belief = belief_step(model, table, belief, event)
    return belief.interval


class PredictionSession:
    """Mutable online predictor over a stream of observed events.

    Events may be given by index or by name.  The current belief and its
    interval are available between feeds.
    """

    def __init__(self, model: DesModel, table: DistanceTable | None = None):
        self.model = model
        self.table = table if table is not None else compute_distances(model)
        self._belief = initial_belief(model, self.table)

    @property
    def belief(self) -> BeliefState:
        return self._belief

    @property
    def interval(self) -> Interval:
        return self._belief.interval

    def feed(self, event: Union[int, str]) -> Interval:
        if isinstance(event, str):
            index = self.model.event_index.get(event)
            if index is None:
                raise ImpossibleObservationError(f"unknown event name: {event}")
            event = index
        self._belief = belief_step(self.model, self.table, self._belief, event)
        return self._belief.interval


@dataclass(frozen=True)
class BeliefAutomaton:
    """Every reachable belief, with one edge per feasible observation."""

    nodes: tuple[BeliefState, ...]
    edges: Mapping[tuple[int, int], int]
    initial: int = 0

    def step(self, node: int, event: int) -> int | None:
        return self.edges.get((node, event))


def compile_predictor(
    model: DesModel,
    table: DistanceTable | None = None,
    cap: int = DEFAULT_NODE_CAP,
) -> BeliefAutomaton:
    """Enumerate all reachable beliefs breadth-first.

    Raises CapExceededError as soon as a (cap+1)-th distinct belief shows
    up, reporting how many were explored.
    """
    if table is None:
        table = compute_distances(model)
    start = initial_belief(model, table)
    index: dict[frozenset[int], int] = {start.members: 0}
    nodes: list[BeliefState] = [start]
    edges: dict[tuple[int, int], int] = {}
    queue: deque[int] = deque([0])
    observable = [
        e for e in range(len(model.events)) if model.events[e].observable
    ]
    while queue:
        node = queue.popleft()
        belief = nodes[node]
        for event in observable:
            targets = {
                dst
                for q in belief.members
                for dst in model.successors(q, event)
            }
            if not targets:
                continue
            members = unobservable_closure(model, targets)
            nxt = index.get(members)
            if nxt is None:
                if len(nodes) >= cap:
                    raise CapExceededError(cap, len(nodes))
                nxt = len(nodes)
                index[members] = nxt
                nodes.append(_make_belief(table, members))
                queue.append(nxt)
            edges[(node, event)] = nxt
    return BeliefAutomaton(nodes=tuple(nodes), edges=edges, initial=0)


def reachable_beliefs(
    model: DesModel,
    table: DistanceTable | None = None,
    cap: int = DEFAULT_NODE_CAP,
) -> Iterable[BeliefState]:
    """The reachable beliefs in discovery order."""
    return compile_predictor(model, table, cap).nodes
