"""k-pebble two-way transducers.

The tape for input x is the |x|+2 squares  L x R  numbered from 0, where L
and R are the end markers.  Pebbles obey a stack discipline: with l pebbles
placed, push drops pebble l+1 on the current square and pop lifts pebble l,
which must sit on the current square.  A run halts the moment a final state
is entered; a deterministic machine that revisits a (state, head, pebbles)
triple can never halt, which is reported as divergence.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    BudgetExceededError,
    DivergentError,
    IllegalMoveError,
    StuckError,
)
from .words import check_word

__all__ = [
    "LEFT_MARK",
    "RIGHT_MARK",
    "ACTIONS",
    "PebbleMachine",
    "PbConfiguration",
    "initial_configuration",
    "pb_step",
    "pb_run",
    "pb_pipeline",
    "identity_pb",
]

LEFT_MARK = "L"
RIGHT_MARK = "R"
SYMBOLS = "01" + LEFT_MARK + RIGHT_MARK
ACTIONS = ("+1", "-1", "push", "pop")


class PebbleMachine:
    """Transition tables are partial maps keyed by
    (state, tape symbol, pebble-presence mask); mask bit j is set exactly
    when pebble j+1 sits on the current square."""

    __slots__ = (
        "n_states",
        "start",
        "finals",
        "pebbles",
        "transitions",
        "outputs",
        "state_names",
        "label",
        "_table",
    )

    def __init__(self, n_states, start, finals, pebbles, transitions,
                 outputs=None, state_names=None, label=""):
        if n_states < 1:
            raise ValueError("need at least one state")
        if not 0 <= start < n_states:
            raise ValueError("start state out of range")
        if not 0 <= pebbles <= 4:
            raise ValueError("pebble count capped at 4")
        finals = frozenset(finals)
        if not all(0 <= q < n_states for q in finals):
            raise ValueError("final state out of range")
        outputs = outputs or {}
        table = {}
        for key, (nxt, act) in transitions.items():
            q, sym, mask = key
            if q in finals:
                raise ValueError(f"transition out of final state {q}")
            if not (0 <= q < n_states and 0 <= nxt < n_states):
                raise ValueError(f"state out of range in {key}")
            if sym not in SYMBOLS:
                raise ValueError(f"bad tape symbol in {key}")
            if not 0 <= mask < (1 << pebbles):
                raise ValueError(f"bad pebble mask in {key}")
            if act not in ACTIONS:
                raise ValueError(f"bad action {act!r}")
            table[key] = (nxt, act, check_word(outputs.get(key, "")))
        self.n_states = n_states
        self.start = start
        self.finals = finals
        self.pebbles = pebbles
        self.transitions = {k: v[:2] for k, v in table.items()}
        self.outputs = {k: v[2] for k, v in table.items() if v[2]}
        self.state_names = state_names
        self.label = label
        self._table = table

    def name_of(self, q: int) -> str:
        if self.state_names and 0 <= q < len(self.state_names):
            return self.state_names[q]
        return str(q)

    def __repr__(self):
        return (f"<PebbleMachine {self.label or ''} |Q|={self.n_states} "
                f"k={self.pebbles}>")


@dataclass(frozen=True)
class PbConfiguration:
    """(state, head square, pebble squares, output so far); pebble slot j
    holds None while pebble j+1 is off the tape, and the stack discipline
    forbids a placed pebble above an absent one."""

    state: int
    head: int
    pebbles: tuple
    output: str


def initial_configuration(machine: PebbleMachine) -> PbConfiguration:
    return PbConfiguration(machine.start, 0, (None,) * machine.pebbles, "")


def _mask_of(pebbles, head) -> int:
    mask = 0
    for j, pos in enumerate(pebbles):
        if pos == head:
            mask |= 1 << j
    return mask


def pb_step(machine: PebbleMachine, x: str, cfg: PbConfiguration) -> PbConfiguration:
    """Single successor configuration; raises on undefined or illegal moves."""
    if cfg.state in machine.finals:
        raise ValueError("no successor: configuration is already final")
    tape = LEFT_MARK + x + RIGHT_MARK
    sym = tape[cfg.head]
    mask = _mask_of(cfg.pebbles, cfg.head)
    key = (cfg.state, sym, mask)
    hit = machine._table.get(key)
    if hit is None:
        raise StuckError(f"undefined transition at {key}")
    nxt, act, out = hit
    head = cfg.head
    pebbles = cfg.pebbles
    placed = sum(1 for p in pebbles if p is not None)
    if act == "+1":
        if sym == RIGHT_MARK:
            raise IllegalMoveError("+1 on the right end marker")
        head += 1
    elif act == "-1":
        if sym == LEFT_MARK:
            raise IllegalMoveError("-1 on the left end marker")
        head -= 1
    elif act == "push":
        if placed == machine.pebbles:
            raise IllegalMoveError("push with all pebbles placed")
        pebbles = pebbles[:placed] + (head,) + pebbles[placed + 1 :]
    else:  # pop
        if placed == 0 or pebbles[placed - 1] != head:
            raise IllegalMoveError("pop without the top pebble here")
        pebbles = pebbles[: placed - 1] + (None,) + pebbles[placed:]
    return PbConfiguration(nxt, head, pebbles, cfg.output + out)


def pb_run(machine: PebbleMachine, x: str, max_steps: int | None = None) -> str:
    """Run to the first final configuration and return its output.

    With max_steps=None divergence is detected exactly via a visited set of
    (state, head, pebbles) triples; output is excluded since it cannot
    influence transitions.  With a step budget the visited set is skipped
    (the memory-friendly mode for long inputs) and running out raises
    BudgetExceededError instead.
    """
    check_word(x)
    tape = LEFT_MARK + x + RIGHT_MARK
    table = machine._table
    finals = machine.finals
    q = machine.start
    head = 0
    placed = []  # positions of placed pebbles, lowest rank first
    out = []
    k = machine.pebbles
    right_end = len(tape) - 1
    seen = set() if max_steps is None else None
    steps = 0
    while q not in finals:
        mask = 0
        for j, pos in enumerate(placed):
            if pos == head:
                mask |= 1 << j
        if seen is not None:
            snap = (q, head, tuple(placed))
            if snap in seen:
                raise DivergentError(
                    f"configuration repeats at state {machine.name_of(q)}"
                )
            seen.add(snap)
        elif steps >= max_steps:
            raise BudgetExceededError(f"no final state within {max_steps} steps")
        steps += 1
        hit = table.get((q, tape[head], mask))
        if hit is None:
            raise StuckError(
                f"undefined transition at ({machine.name_of(q)}, "
                f"{tape[head]}, {mask:0{max(k, 1)}b})"
            )
        nxt, act, emitted = hit
        if act == "+1":
            if head == right_end:
                raise IllegalMoveError("+1 on the right end marker")
            head += 1
        elif act == "-1":
            if head == 0:
                raise IllegalMoveError("-1 on the left end marker")
            head -= 1
        elif act == "push":
            if len(placed) == k:
                raise IllegalMoveError("push with all pebbles placed")
            placed.append(head)
        else:
            if not placed or placed[-1] != head:
                raise IllegalMoveError("pop without the top pebble here")
            placed.pop()
        if emitted:
            out.append(emitted)
        q = nxt
    return "".join(out)


def pb_pipeline(machines, x: str, max_steps: int | None = None) -> str:
    """Left-to-right functional composition; stage errors propagate."""
    cur = x
    for m in machines:
        cur = pb_run(m, cur, max_steps=max_steps)
    return cur


def identity_pb() -> PebbleMachine:
    """0-pebble scanner that copies its input and halts at the right end."""
    trans = {
        (0, LEFT_MARK, 0): (0, "+1"),
        (0, "0", 0): (0, "+1"),
        (0, "1", 0): (0, "+1"),
        (0, RIGHT_MARK, 0): (1, "-1"),
    }
    outs = {(0, "0", 0): "0", (0, "1", 0): "1"}
    return PebbleMachine(2, 0, {1}, 0, trans, outs,
                         state_names=["scan", "done"], label="identity")
