"""Observation distances from each state to the fault set.

For a state q, dmin(q) is the smallest number of observable events on any
path from q into the fault set, and dmax(q) is the largest number of
states-per-observation a run can spend outside the fault set, counted as
|observations| + 1 over runs from q that stay non-faulty (so a faulty q
has dmax 0, and a state that can avoid the fault set forever has dmax
INF).  Together they bound, from any state, how soon and how late the
fault can arrive, measured in observations.

The three computations:

* dmin: shortest path to the fault set where observable edges cost 1 and
  unobservable ones cost 0, run over reversed edges with a two-bucket
  queue (current distance and current distance + 1), linear in the
  transition count.
* avoid set: states able to stay outside the fault set forever, obtained
  by repeatedly deleting non-faulty states whose every non-faulty
  successor has already been deleted; what survives can always take one
  more step outside the fault set.
* dmax: on states outside both the fault set and the avoid set, the
  remaining non-faulty-successor graph is acyclic, so one pass in reverse
  topological order computes the longest weighted stay, with a floor of
  one because the empty stay already contains one state.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .intervals import INF, ExtNat, Interval
from .model import DesModel


@dataclass(frozen=True)
class DistanceTable:
    """dmin/dmax per state plus the avoid set they were derived from."""

    dmin: tuple[ExtNat, ...]
    dmax: tuple[ExtNat, ...]
    avoid: frozenset[int]

    def interval(self, q: int) -> Interval:
        """The prediction interval (dmin(q), dmax(q)) of a single state."""
        return Interval(self.dmin[q], self.dmax[q])


def state_interval(table: DistanceTable, q: int) -> Interval:
    return table.interval(q)


def compute_distances(model: DesModel) -> DistanceTable:
    """Bundle dmin, the avoid set, and dmax for a model."""
    avoid = compute_avoid_set(model)
    return DistanceTable(
        dmin=compute_dmin(model),
        dmax=compute_dmax(model, avoid),
        avoid=avoid,
    )


def compute_dmin(model: DesModel) -> tuple[ExtNat, ...]:
    """Least number of observations before the fault set, per state."""
    n = len(model.states)
    dist: list[ExtNat] = [INF] * n
    settled = [False] * n
    current: deque[int] = deque()
    following: deque[int] = deque()
    for q in model.faulty:
        dist[q] = 0
        current.append(q)
    d = 0
    while current or following:
        if not current:
            current, following = following, current
            d += 1
            continue
        q = current.popleft()
        if settled[q]:
            continue
        settled[q] = True
        for src, ev, _ in model.incoming[q]:
            nd = d + (1 if model.events[ev].observable else 0)
            if nd < dist[src]:
                dist[src] = nd
                (current if nd == d else following).append(src)
    return tuple(dist)


def compute_avoid_set(model: DesModel) -> frozenset[int]:
    """Non-faulty states from which the fault set can be dodged forever."""
    n = len(model.states)
    faulty = model.faulty
    escape_routes = [0] * n
    feeders: list[list[int]] = [[] for _ in range(n)]
    for src, _, dst in model.transitions:
        if src not in faulty and dst not in faulty:
            escape_routes[src] += 1
            feeders[dst].append(src)
    doomed = deque(
        q for q in range(n) if q not in faulty and escape_routes[q] == 0
    )
    eliminated = set(doomed)
    while doomed:
        q = doomed.popleft()
        for src in feeders[q]:
            if src in eliminated:
                continue
            escape_routes[src] -= 1
            if escape_routes[src] == 0:
                eliminated.add(src)
                doomed.append(src)
    return frozenset(
        q for q in range(n) if q not in faulty and q not in eliminated
    )


def compute_dmax(model: DesModel, avoid: frozenset[int]) -> tuple[ExtNat, ...]:
    """Largest stay outside the fault set, per state, as |obs| + 1."""
    n = len(model.states)
    faulty = model.faulty
    dmax: list[ExtNat] = [0] * n
    for q in avoid:
        dmax[q] = INF
    core = [q for q in range(n) if q not in faulty and q not in avoid]
    core_set = set(core)

    pending = [0] * n
    feeders: list[list[int]] = [[] for _ in range(n)]
    for src, _, dst in model.transitions:
        if src in core_set and dst in core_set:
            pending[src] += 1
            feeders[dst].append(src)
    ready = deque(q for q in core if pending[q] == 0)
    done = 0
    while ready:
        q = ready.popleft()
        done += 1
        best = 1
        for _, ev, dst in model.outgoing[q]:
            if dst in faulty:
                continue
            # dst is in the core: an avoid-set successor would have pulled
            # q into the avoid set as well.
            cost = 1 if model.events[ev].observable else 0
            candidate = dmax[dst] + cost
            if candidate > best:
                best = candidate
        dmax[q] = best
        for src in feeders[q]:
            pending[src] -= 1
            if pending[src] == 0:
                ready.append(src)
    if done != len(core):
        raise RuntimeError("cycle outside the avoid set; avoid-set computation is broken")
    return tuple(dmax)


def compute_dmax_fixpoint(model: DesModel, avoid: frozenset[int]) -> tuple[ExtNat, ...]:
    """Slow dmax via naive iteration to a fixpoint; debugging aid.

    Same pinned values as compute_dmax (0 on the fault set, INF on the
    avoid set, floor 1 elsewhere); repeatedly raises values along
    non-faulty edges until nothing changes.  Terminates because the core
    subgraph is acyclic.
    """
    n = len(model.states)
    faulty = model.faulty
    dmax: list[ExtNat] = [0] * n
    for q in range(n):
        if q in avoid:
            dmax[q] = INF
        elif q not in faulty:
            dmax[q] = 1
    changed = True
    while changed:
        changed = False
        for src, ev, dst in model.transitions:
            if src in faulty or src in avoid or dst in faulty:
                continue
            cost = 1 if model.events[ev].observable else 0
            candidate = dmax[dst] + cost
            if candidate > dmax[src]:
                dmax[src] = candidate
                changed = True
    return tuple(dmax)
