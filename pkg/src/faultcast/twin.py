"""Pairs of states an observer can confuse, via a self-product search.

Two states are related when some observation sequence leaves both of them
possible.  The search explores pairs: from (q1, q2), observable events
advance both components on the same event, while an unobservable event
advances one component and leaves the other in place.  Pairs are stored
unordered as (min, max); the relation is reflexive on reachable states and
symmetric but not transitive.

The search is a 0/1 breadth-first traversal (unobservable moves cost 0,
observable ones cost 1), so the recorded parent links spell out a shortest
observation sequence witnessing each pair.

When every event is observable and the model is deterministic, the
observer always knows the exact state, so the relation collapses to the
diagonal of the reachable states and a plain reachability walk suffices.
A nondeterministic model can confuse two states even with every event
observable, so determinism is part of the gate.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, Mapping, Optional

from .errors import NoWitnessError
from .model import DesModel

#: An unordered state pair, stored as (min index, max index).
Pair = tuple[int, int]

#: parent pair and the observable event taken, or None for a 0-cost move.
ParentLink = tuple[Optional[Pair], Optional[int]]


@dataclass(frozen=True)
class TwinReachability:
    """The confusable-pair relation of one model."""

    pairs: frozenset[Pair]
    parents: Mapping[Pair, ParentLink] | None
    fastpath: bool

    @property
    def pair_count(self) -> int:
        """Number of unordered pairs (diagonal included)."""
        return len(self.pairs)

    @property
    def relation_size(self) -> int:
        """Size of the relation as a set of ordered pairs."""
        return sum(1 if a == b else 2 for a, b in self.pairs)

    def related(self, q1: int, q2: int) -> bool:
        """True when some observation sequence allows both states."""
        return _canon(q1, q2) in self.pairs


def sim_related(twin: TwinReachability, q1: int, q2: int) -> bool:
    return twin.related(q1, q2)


def _canon(q1: int, q2: int) -> Pair:
    return (q1, q2) if q1 <= q2 else (q2, q1)


def build_twin(
    model: DesModel, *, witnesses: bool = False, use_fastpath: bool = True
) -> TwinReachability:
    """Explore every confusable pair reachable from the initial state.

    With witnesses=True, parent links are recorded so that
    witness_observations can replay a shortest observation sequence for
    any pair.
    """
    if use_fastpath and model.fully_observable and model.is_deterministic:
        return _diagonal_twin(model, witnesses)

    root = _canon(model.initial, model.initial)
    dist: dict[Pair, int] = {root: 0}
    parents: dict[Pair, ParentLink] | None = {root: (None, None)} if witnesses else None
    settled: set[Pair] = set()
    queue: deque[Pair] = deque([root])
    while queue:
        pair = queue.popleft()
        if pair in settled:
            continue
        settled.add(pair)
        d = dist[pair]
        for nxt, event, cost in _moves(model, pair):
            nd = d + cost
            if nxt not in dist or nd < dist[nxt]:
                dist[nxt] = nd
                if parents is not None:
                    parents[nxt] = (pair, event if cost else None)
                if cost == 0:
                    queue.appendleft(nxt)
                else:
                    queue.append(nxt)
    return TwinReachability(
        pairs=frozenset(dist),
        parents=parents,
        fastpath=False,
    )


def _moves(model: DesModel, pair: Pair) -> Iterator[tuple[Pair, int, int]]:
    # Yields (next pair, event, cost): observable events advance both
    # components together at cost 1, unobservable events advance one
    # component at cost 0.
    q1, q2 = pair
    succ1 = model.successors_by_event[q1]
    succ2 = model.successors_by_event[q2]
    for ev, targets1 in succ1.items():
        if not model.events[ev].observable:
            continue
        targets2 = succ2.get(ev)
        if targets2 is None:
            continue
        for t1 in targets1:
            for t2 in targets2:
                yield _canon(t1, t2), ev, 1
    for src, ev, dst in model.outgoing[q1]:
        if not model.events[ev].observable:
            yield _canon(dst, q2), ev, 0
    for src, ev, dst in model.outgoing[q2]:
        if not model.events[ev].observable:
            yield _canon(q1, dst), ev, 0


def reachable_edges(
    model: DesModel, twin: TwinReachability
) -> Iterator[tuple[Pair, int, bool, Pair]]:
    """Every move between reachable pairs, for export and inspection.

    Yields (source pair, event, observable flag, target pair), each
    combination once, sources in canonical order.
    """
    for pair in sorted(twin.pairs):
        seen: set[tuple[Pair, int]] = set()
        for nxt, event, cost in _moves(model, pair):
            if (nxt, event) in seen:
                continue
            seen.add((nxt, event))
            yield pair, event, cost == 1, nxt


def _diagonal_twin(model: DesModel, witnesses: bool) -> TwinReachability:
    # Fully observable and deterministic: the observation sequence pins the
    # state, so only diagonal pairs occur and edge count equals observation
    # count.
    root = (model.initial, model.initial)
    parents: dict[Pair, ParentLink] | None = {root: (None, None)} if witnesses else None
    seen = {model.initial}
    queue: deque[int] = deque([model.initial])
    while queue:
        q = queue.popleft()
        for _, ev, dst in model.outgoing[q]:
            if dst not in seen:
                seen.add(dst)
                if parents is not None:
                    parents[(dst, dst)] = ((q, q), ev)
                queue.append(dst)
    return TwinReachability(
        pairs=frozenset((q, q) for q in seen),
        parents=parents,
        fastpath=True,
    )


def witness_observations(twin: TwinReachability, pair: Pair) -> list[int]:
    """A shortest observation sequence making both states of pair possible.

    Returns event indices.  Requires the twin to have been built with
    witnesses=True and the pair to be in the relation.
    """
    pair = _canon(*pair)
    if twin.parents is None:
        raise NoWitnessError("twin was built without witness links")
    if pair not in twin.pairs:
        raise ValueError(f"pair {pair} is not in the relation")
    events: list[int] = []
    cursor: Optional[Pair] = pair
    while cursor is not None:
        parent, event = twin.parents[cursor]
        if event is not None:
            events.append(event)
        cursor = parent
    events.reverse()
    return events
