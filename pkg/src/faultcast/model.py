"""Partially observable finite-state models and their basic semantics.

A model is a finite set of named states and named events, a transition
relation (possibly nondeterministic), a single initial state, and a set of
permanently faulty states.  Events are split into observable ones, which an
outside monitor sees, and unobservable ones, which it does not.  Everything
downstream (distances, twin construction, belief tracking) works on the
dense integer indices this module assigns; names exist for people and for
the file format.

Four structural invariants make the later analyses meaningful:

* liveness: every state has at least one outgoing transition, so runs never
  get stuck and "time until the fault" is well defined;
* fault closure: transitions leaving a faulty state stay inside the fault
  set, so faults are permanent;
* the initial state is not faulty, otherwise there is nothing to predict;
* observation liveness: no cycle of only unobservable transitions, so any
  infinite run emits infinitely many observations.

`validate` checks all four and reports findings; it never raises.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence, Tuple

from .errors import InitialFaultyError, InvalidModelError

#: A transition (source state, event, target state), all dense indices.
Transition = Tuple[int, int, int]


@dataclass(frozen=True)
class Event:
    """A named event with its visibility flag."""

    name: str
    observable: bool


@dataclass(frozen=True, eq=False)
class DesModel:
    """An immutable discrete event system model.

    Equality and hashing are semantic: two models are equal when they have
    the same named states, events (with visibility), transitions, initial
    state and fault set, regardless of index assignment.
    """

    states: tuple[str, ...]
    events: tuple[Event, ...]
    transitions: tuple[Transition, ...]
    initial: int
    faulty: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "events", tuple(self.events))
        object.__setattr__(self, "transitions", tuple(self.transitions))
        object.__setattr__(self, "faulty", frozenset(self.faulty))
        _check_names(self.states, "state")
        _check_names([e.name for e in self.events], "event")
        if not self.states:
            raise ValueError("a model needs at least one state")
        n = len(self.states)
        if not 0 <= self.initial < n:
            raise ValueError(f"initial state index out of range: {self.initial}")
        for q in self.faulty:
            if not 0 <= q < n:
                raise ValueError(f"faulty state index out of range: {q}")
        for t in self.transitions:
            src, ev, dst = t
            if not 0 <= src < n or not 0 <= dst < n:
                raise ValueError(f"transition state index out of range: {t}")
            if not 0 <= ev < len(self.events):
                raise ValueError(f"transition event index out of range: {t}")

    # -- naming ---------------------------------------------------------

    @cached_property
    def state_index(self) -> Mapping[str, int]:
        return {name: q for q, name in enumerate(self.states)}

    @cached_property
    def event_index(self) -> Mapping[str, int]:
        return {e.name: i for i, e in enumerate(self.events)}

    def state_name(self, q: int) -> str:
        return self.states[q]

    def event_name(self, e: int) -> str:
        return self.events[e].name

    # -- adjacency ------------------------------------------------------

    @cached_property
    def outgoing(self) -> tuple[tuple[Transition, ...], ...]:
        out: list[list[Transition]] = [[] for _ in self.states]
        for t in self.transitions:
            out[t[0]].append(t)
        return tuple(tuple(ts) for ts in out)

    @cached_property
    def incoming(self) -> tuple[tuple[Transition, ...], ...]:
        inc: list[list[Transition]] = [[] for _ in self.states]
        for t in self.transitions:
            inc[t[2]].append(t)
        return tuple(tuple(ts) for ts in inc)

    @cached_property
    def successors_by_event(self) -> tuple[Mapping[int, tuple[int, ...]], ...]:
        """Per state: event index -> tuple of target states."""
        table: list[dict[int, list[int]]] = [{} for _ in self.states]
        for src, ev, dst in self.transitions:
            table[src].setdefault(ev, []).append(dst)
        return tuple(
            {ev: tuple(dsts) for ev, dsts in row.items()} for row in table
        )

    def successors(self, q: int, event: int) -> tuple[int, ...]:
        return self.successors_by_event[q].get(event, ())

    @cached_property
    def unobservable_successors(self) -> tuple[tuple[int, ...], ...]:
        table: list[list[int]] = [[] for _ in self.states]
        for src, ev, dst in self.transitions:
            if not self.events[ev].observable:
                table[src].append(dst)
        return tuple(tuple(row) for row in table)

    # -- simple facts ---------------------------------------------------

    @property
    def fully_observable(self) -> bool:
        return all(e.observable for e in self.events)

    @cached_property
    def is_deterministic(self) -> bool:
        seen: set[tuple[int, int]] = set()
        for src, ev, dst in set(self.transitions):
            if (src, ev) in seen:
                return False
            seen.add((src, ev))
        return True

    # -- semantic identity ----------------------------------------------

    @cached_property
    def _signature(self) -> tuple:
        return (
            tuple(sorted((e.name, e.observable) for e in self.events)),
            tuple(sorted(self.states)),
            self.states[self.initial],
            tuple(sorted(self.states[q] for q in self.faulty)),
            tuple(
                sorted(
                    {
                        (self.states[s], self.events[e].name, self.states[t])
                        for s, e, t in self.transitions
                    }
                )
            ),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DesModel):
            return NotImplemented
        return self._signature == other._signature

    def __hash__(self) -> int:
        return hash(self._signature)


def _check_names(names: Sequence[str], kind: str) -> None:
    seen: set[str] = set()
    for name in names:
        if not name or any(c.isspace() for c in name):
            raise ValueError(f"bad {kind} name: {name!r}")
        if name in seen:
            raise ValueError(f"duplicate {kind} name: {name}")
        seen.add(name)


def make_model(
    events: Iterable[tuple[str, bool]],
    transitions: Iterable[tuple[str, str, str]],
    initial: str,
    faulty: Iterable[str] = (),
    states: Iterable[str] = (),
) -> DesModel:
    """Assemble a model from names.

    State indices follow first mention (any names in `states` first, then
    the initial state, fault states, and transition endpoints in order);
    event indices follow the order of `events`.  Exact duplicate
    transitions collapse.  The result is not validated; run `validate` or
    `check_valid` separately.
    """
    event_list = [Event(name, bool(obs)) for name, obs in events]
    event_ids = {e.name: i for i, e in enumerate(event_list)}
    if len(event_ids) != len(event_list):
        raise ValueError("duplicate event name")

    order: list[str] = []
    ids: dict[str, int] = {}

    def intern(name: str) -> int:
        if name not in ids:
            ids[name] = len(order)
            order.append(name)
        return ids[name]

    for name in states:
        intern(name)
    init = intern(initial)
    fault_ids = frozenset(intern(name) for name in faulty)
    trans: list[Transition] = []
    seen: set[Transition] = set()
    for src, ev, dst in transitions:
        if ev not in event_ids:
            raise ValueError(f"undeclared event in transition: {ev}")
        t = (intern(src), event_ids[ev], intern(dst))
        if t not in seen:
            seen.add(t)
            trans.append(t)
    return DesModel(
        states=tuple(order),
        events=tuple(event_list),
        transitions=tuple(trans),
        initial=init,
        faulty=fault_ids,
    )


# -- validation -----------------------------------------------------------

#: Finding codes, one per structural invariant.
LIVENESS = "liveness"
FAULT_CLOSURE = "fault-closure"
INITIAL_FAULTY = "initial-faulty"
OBSERVATION_LIVENESS = "observation-liveness"


@dataclass(frozen=True)
class Finding:
    """One validation problem: what rule broke, where, and why."""

    severity: str
    code: str
    subject: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    findings: tuple[Finding, ...]

    @property
    def ok(self) -> bool:
        return not self.findings


def validate(model: DesModel) -> ValidationReport:
    """Check the four structural invariants and report every violation."""
    findings: list[Finding] = []

    for q, out in enumerate(model.outgoing):
        if not out:
            findings.append(
                Finding(
                    "error",
                    LIVENESS,
                    f"state {model.states[q]}",
                    f"state {model.states[q]} has no outgoing transition",
                )
            )

    for src, ev, dst in model.transitions:
        if src in model.faulty and dst not in model.faulty:
            text = _trans_text(model, (src, ev, dst))
            findings.append(
                Finding(
                    "error",
                    FAULT_CLOSURE,
                    f"transition {text}",
                    f"transition {text} leaves the fault set",
                )
            )

    if model.initial in model.faulty:
        findings.append(
            Finding(
                "error",
                INITIAL_FAULTY,
                f"state {model.states[model.initial]}",
                f"initial state {model.states[model.initial]} is faulty",
            )
        )

    cycle = _unobservable_cycle(model)
    if cycle is not None:
        text = " -> ".join(model.states[q] for q in cycle)
        findings.append(
            Finding(
                "error",
                OBSERVATION_LIVENESS,
                f"cycle {text}",
                f"cycle {text} uses only unobservable events",
            )
        )

    return ValidationReport(tuple(findings))


def check_valid(model: DesModel) -> None:
    """Raise InvalidModelError when validate finds anything."""
    report = validate(model)
    if not report.ok:
        raise InvalidModelError(report)


def _trans_text(model: DesModel, t: Transition) -> str:
    src, ev, dst = t
    return f"{model.states[src]} -{model.events[ev].name}-> {model.states[dst]}"


def _unobservable_cycle(model: DesModel) -> list[int] | None:
    # Iterative DFS over unobservable edges; returns one offending cycle.
    color = [0] * len(model.states)  # 0 new, 1 on stack, 2 done
    parent: dict[int, int] = {}
    for root in range(len(model.states)):
        if color[root]:
            continue
        stack: list[tuple[int, int]] = [(root, 0)]
        color[root] = 1
        while stack:
            q, i = stack[-1]
            succs = model.unobservable_successors[q]
            if i < len(succs):
                stack[-1] = (q, i + 1)
                nxt = succs[i]
                if color[nxt] == 0:
                    color[nxt] = 1
                    parent[nxt] = q
                    stack.append((nxt, 0))
                elif color[nxt] == 1:
                    cycle = [q]
                    while cycle[-1] != nxt:
                        cycle.append(parent[cycle[-1]])
                    cycle.reverse()
                    cycle.append(nxt)
                    return cycle
            else:
                color[q] = 2
                stack.pop()
    return None


# -- normalization and execution -------------------------------------------


def fault_closure(model: DesModel) -> DesModel:
    """Extend the fault set with everything reachable from it.

    Fault permanence then holds by construction.  Raises
    InitialFaultyError when the closure swallows the initial state, since
    such a model has no non-faulty behavior left to predict.
    """
    closed = set(model.faulty)
    queue = deque(closed)
    while queue:
        q = queue.popleft()
        for _, _, dst in model.outgoing[q]:
            if dst not in closed:
                closed.add(dst)
                queue.append(dst)
    if model.initial in closed:
        raise InitialFaultyError(
            f"fault closure reaches the initial state {model.states[model.initial]}"
        )
    if closed == model.faulty:
        return model
    return DesModel(
        states=model.states,
        events=model.events,
        transitions=model.transitions,
        initial=model.initial,
        faulty=frozenset(closed),
    )


def observe(model: DesModel, trace: Sequence[int]) -> list[int]:
    """Project a trace of event indices onto its observable part."""
    return [e for e in trace if model.events[e].observable]


def run(model: DesModel, trace: Sequence[int]) -> frozenset[int]:
    """States reachable from the initial state by executing trace exactly.

    Nondeterminism makes this a set; it is empty when no execution of the
    full trace exists.  The empty trace yields exactly the initial state.
    """
    current: frozenset[int] = frozenset({model.initial})
    for e in trace:
        current = frozenset(
            dst for q in current for dst in model.successors(q, e)
        )
        if not current:
            break
    return current


def unobservable_closure(model: DesModel, states: Iterable[int]) -> frozenset[int]:
    """All states reachable from `states` using unobservable events only."""
    closed = set(states)
    queue = deque(closed)
    while queue:
        q = queue.popleft()
        for dst in model.unobservable_successors[q]:
            if dst not in closed:
                closed.add(dst)
                queue.append(dst)
    return frozenset(closed)
