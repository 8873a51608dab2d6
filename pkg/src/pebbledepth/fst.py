"""One-way finite-state transducers: runs, lossless checking, exact decoding.

A transducer here is total: every (state, bit) pair has a successor and an
output word.  Losslessness (the map x -> (output, end state) being
injective) is certified only up to a length bound; decoding inverts a run
given the end state by searching, it never builds an inverse machine.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AmbiguousPreimageError, NoPreimageError
from .words import BitStreamSource, check_word

__all__ = [
    "FstMachine",
    "IlVerdict",
    "fst_run",
    "il_check",
    "il_decode",
    "fst_compress_len",
    "identity_fst",
    "doubler_fst",
    "silent_fst",
    "counting_echo_fst",
]


class FstMachine:
    """Deterministic transducer with total transition and output maps."""

    __slots__ = ("n_states", "start", "transitions", "outputs", "label")

    def __init__(self, n_states, transitions, outputs, start=0, label=""):
        if n_states < 1:
            raise ValueError("need at least one state")
        if start != 0:
            raise ValueError("start state is 0 by convention")
        for q in range(n_states):
            for b in "01":
                if (q, b) not in transitions:
                    raise ValueError(f"missing transition ({q},{b})")
                nxt = transitions[(q, b)]
                if not 0 <= nxt < n_states:
                    raise ValueError(f"transition target {nxt} out of range")
                check_word(outputs.get((q, b), ""))
        self.n_states = n_states
        self.start = start
        self.transitions = dict(transitions)
        self.outputs = {k: outputs.get(k, "") for k in transitions}
        self.label = label

    def __repr__(self):
        return f"<FstMachine {self.label or ''} |Q|={self.n_states}>"


@dataclass(frozen=True)
class IlVerdict:
    limit: int
    ok: bool
    counterexample: tuple[str, str] | None = None


def fst_run(machine: FstMachine, x: str) -> tuple[str, int]:
    """Output and end state of the run on x; the empty run ends in state 0
    with empty output."""
    q = machine.start
    trans = machine.transitions
    emit = machine.outputs
    out = []
    for b in x:
        out.append(emit[(q, b)])
        q = trans[(q, b)]
    return "".join(out), q


def fst_compress_len(machine: FstMachine, source: BitStreamSource, n: int) -> int:
    return len(fst_run(machine, source.prefix(n))[0])


def il_check(machine: FstMachine, limit: int) -> IlVerdict:
    """Exhaustively verify injectivity of x -> (output, end state) over all
    inputs of length <= limit; returns the first colliding pair otherwise."""
    if not 0 <= limit <= 20:
        raise ValueError("limit must be in 0..20")
    seen = {("", machine.start): ""}
    frontier = [("", "", machine.start)]
    for _ in range(limit):
        grown = []
        for x, out, q in frontier:
            for b in "01":
                out2 = out + machine.outputs[(q, b)]
                q2 = machine.transitions[(q, b)]
                x2 = x + b
                key = (out2, q2)
                if key in seen:
                    return IlVerdict(limit, False, (seen[key], x2))
                seen[key] = x2
                grown.append((x2, out2, q2))
        frontier = grown
    return IlVerdict(limit, True, None)


def il_decode(machine: FstMachine, y: str, end_state: int, limit: int) -> str:
    """The unique x with |x| <= limit, run output y and end state end_state.

    Breadth-first over inputs, pruned to branches whose output is still a
    prefix of y.  Raises NoPreimageError / AmbiguousPreimageError; an
    ambiguity signals a losslessness violation past the checked bound.
    """
    if not 0 <= limit <= 20:
        raise ValueError("limit must be in 0..20")
    check_word(y)
    matches = []
    if y == "" and end_state == machine.start:
        matches.append("")
    frontier = [("", "", machine.start)]
    for _ in range(limit):
        grown = []
        for x, out, q in frontier:
            for b in "01":
                out2 = out + machine.outputs[(q, b)]
                if not y.startswith(out2):
                    continue
                q2 = machine.transitions[(q, b)]
                x2 = x + b
                if out2 == y and q2 == end_state:
                    matches.append(x2)
                grown.append((x2, out2, q2))
        frontier = grown
    if not matches:
        raise NoPreimageError(f"no input of length <= {limit} maps to the pair")
    if len(matches) > 1:
        raise AmbiguousPreimageError(
            f"{len(matches)} inputs map to the pair: {matches[:4]}"
        )
    return matches[0]


def identity_fst() -> FstMachine:
    t = {(0, "0"): 0, (0, "1"): 0}
    return FstMachine(1, t, {(0, "0"): "0", (0, "1"): "1"}, label="identity")


def doubler_fst() -> FstMachine:
    t = {(0, "0"): 0, (0, "1"): 0}
    return FstMachine(1, t, {(0, "0"): "00", (0, "1"): "11"}, label="doubler")


def silent_fst() -> FstMachine:
    """Single state, outputs nothing; maximally lossy."""
    t = {(0, "0"): 0, (0, "1"): 0}
    return FstMachine(1, t, {}, label="silent")


def counting_echo_fst(m: int) -> FstMachine:
    """Echo the input while counting the first m bits, then keep echoing.

    This is the transducer part of the counting front end of the mirror
    block compressor; it is lossless since the output equals the input.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    n = m + 1
    trans = {}
    outs = {}
    for q in range(n):
        nxt = q + 1 if q < m else m
        for b in "01":
            trans[(q, b)] = nxt
            outs[(q, b)] = b
    return FstMachine(n, trans, outs, label=f"counting-echo:{m}")
