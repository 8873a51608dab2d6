"""Bounded pushdown compressors with a budget on silent stack moves.

Stack alphabet is written '0', '1' and 'Z' (the bottom symbol); unary
machines use only '0' and 'Z'.  A transition maps (state, input, top) to
(state', replacement) where the replacement string, written top-first,
substitutes for the current top symbol: '' pops, a longer string pushes.
The input symbol '~' marks a silent move that consumes no input bit; at
most ``lambda_budget`` silent moves may run back to back, and determinism
demands that a (state, top) pair offers either a silent move or bit moves,
never both.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import LambdaBudgetError, StuckError
from .words import check_word

__all__ = [
    "LAMBDA_IN",
    "BOTTOM",
    "PdcMachine",
    "PdcRun",
    "pdc_validate",
    "pdc_run",
    "pdc_run_from",
    "pdc_il_check",
    "pdc_il_decode",
    "updc_height_invariance",
    "identity_pdc",
    "random_unary_compressor",
]

LAMBDA_IN = "~"
BOTTOM = "Z"
STACK_SYMS = "01" + BOTTOM


class PdcMachine:
    __slots__ = ("n_states", "start", "lambda_budget", "unary",
                 "transitions", "outputs", "state_names", "label")

    def __init__(self, n_states, start, lambda_budget, transitions,
                 outputs=None, unary=False, state_names=None, label=""):
        if n_states < 1:
            raise ValueError("need at least one state")
        if start != 0:
            raise ValueError("start state is 0 by convention")
        if lambda_budget < 0:
            raise ValueError("lambda budget must be >= 0")
        outputs = outputs or {}
        for key, (nxt, push) in transitions.items():
            q, a, top = key
            if not (0 <= q < n_states and 0 <= nxt < n_states):
                raise ValueError(f"state out of range in {key}")
            if a not in ("0", "1", LAMBDA_IN):
                raise ValueError(f"bad input symbol in {key}")
            if top not in STACK_SYMS:
                raise ValueError(f"bad stack symbol in {key}")
            if any(c not in STACK_SYMS for c in push):
                raise ValueError(f"bad replacement string in {key}")
            check_word(outputs.get(key, ""))
        self.n_states = n_states
        self.start = start
        self.lambda_budget = lambda_budget
        self.unary = unary
        self.transitions = dict(transitions)
        self.outputs = {k: outputs.get(k, "") for k in transitions}
        self.state_names = state_names
        self.label = label

    def name_of(self, q: int) -> str:
        if self.state_names and 0 <= q < len(self.state_names):
            return self.state_names[q]
        return str(q)

    def __repr__(self):
        kind = "updc" if self.unary else "pdc"
        return f"<PdcMachine {kind} {self.label or ''} |Q|={self.n_states}>"


def pdc_validate(machine: PdcMachine) -> list[str]:
    """Structural invariants; an empty list means the machine is valid.

    Checks: the bottom symbol is never popped and never buried, unary
    machines only push '0's, silent and bit moves never coexist on a
    (state, top) pair, and no chain (or cycle) of silent moves can exceed
    the declared budget.
    """
    bad = []
    t = machine.transitions
    for (q, a, top), (nxt, push) in t.items():
        if top == BOTTOM:
            if not push.endswith(BOTTOM):
                bad.append(f"bottom symbol popped at ({q},{a},{top})")
            if BOTTOM in push[:-1]:
                bad.append(f"bottom symbol buried at ({q},{a},{top})")
        else:
            if BOTTOM in push:
                bad.append(f"bottom symbol pushed above stack at ({q},{a},{top})")
        if machine.unary and "1" in push + (top if top != BOTTOM else ""):
            bad.append(f"unary machine touches '1' at ({q},{a},{top})")
    for q in range(machine.n_states):
        for top in STACK_SYMS:
            lam = (q, LAMBDA_IN, top) in t
            bits = any((q, b, top) in t for b in "01")
            if lam and bits:
                bad.append(f"silent and bit moves coexist at ({q},{top})")
    bad.extend(_lambda_chain_violations(machine))
    return bad


def _lambda_chain_violations(machine: PdcMachine) -> list[str]:
    """Longest possible run of silent moves over (state, top) pairs; a pop
    exposes an unknown symbol so it fans out to every stack symbol."""
    t = machine.transitions
    edges = {}
    for (q, a, top), (nxt, push) in t.items():
        if a != LAMBDA_IN:
            continue
        succs = []
        if push:
            succs.append((nxt, push[0]))
        else:
            succs.extend((nxt, s) for s in STACK_SYMS)
        edges[(q, top)] = succs
    depth = {}
    onpath = set()
    cyclic = []

    def longest(node):
        if node in depth:
            return depth[node]
        if node in onpath:
            cyclic.append(node)
            return machine.lambda_budget + 1
        if node not in edges:
            depth[node] = 0
            return 0
        onpath.add(node)
        best = 1 + max(longest(s) for s in edges[node])
        onpath.discard(node)
        depth[node] = best
        return best

    worst = 0
    for node in list(edges):
        worst = max(worst, longest(node))
        if cyclic:
            return [f"silent-move cycle through {cyclic[0]}"]
    if worst > machine.lambda_budget:
        return [f"silent chain of length {worst} exceeds budget "
                f"{machine.lambda_budget}"]
    return []


@dataclass(frozen=True)
class PdcRun:
    output: str
    end_state: int
    stack: str  # top-first, always ending with the bottom symbol


def pdc_run_from(machine: PdcMachine, state: int, x: str, stack: str,
                 terminal_closure: bool = True) -> PdcRun:
    """Run from an arbitrary state and stack (top-first string ending 'Z').

    Mandatory silent moves fire whenever defined; the consecutive count is
    bounded by the machine's budget and resets on every consumed bit.  The
    trailing closure after the last bit is optional so that mid-run output
    segments can be compared.
    """
    if not stack.endswith(BOTTOM) or BOTTOM in stack[:-1]:
        raise ValueError("stack must be top-first and end with the bottom symbol")
    t = machine.transitions
    emit = machine.outputs
    cells = list(reversed(stack))  # top at the end
    out = []
    q = state
    budget = machine.lambda_budget

    def closure():
        nonlocal q
        run = 0
        while True:
            key = (q, LAMBDA_IN, cells[-1])
            hit = t.get(key)
            if hit is None:
                return
            run += 1
            if run > budget:
                raise LambdaBudgetError(
                    f"{run} consecutive silent moves at state "
                    f"{machine.name_of(q)}"
                )
            o = emit[key]
            if o:
                out.append(o)
            nxt, push = hit
            cells.pop()
            cells.extend(reversed(push))
            q = nxt

    # silent closures run before each consumed bit; the optional trailing
    # closure completes a whole-input run.  Nothing fires for an empty
    # input unless the trailing closure is requested, so the output while
    # consuming x is bounded by (budget+1)*|x| stack pops.
    for b in x:
        closure()
        key = (q, b, cells[-1])
        hit = t.get(key)
        if hit is None:
            raise StuckError(
                f"no move on {b!r} at ({machine.name_of(q)}, top {cells[-1]})"
            )
        o = emit[key]
        if o:
            out.append(o)
        nxt, push = hit
        cells.pop()
        cells.extend(reversed(push))
        q = nxt
    if terminal_closure:
        closure()
    return PdcRun("".join(out), q, "".join(reversed(cells)))


def pdc_run(machine: PdcMachine, x: str, terminal_closure: bool = True) -> PdcRun:
    check_word(x)
    return pdc_run_from(machine, machine.start, x, BOTTOM, terminal_closure)


def pdc_il_check(machine: PdcMachine, limit: int):
    """Exhaustive injectivity check of x -> (output, end state) over all
    |x| <= limit; returns an IlVerdict like the transducer variant."""
    from .fst import IlVerdict

    if not 0 <= limit <= 18:
        raise ValueError("limit must be in 0..18")
    seen = {}
    words = [""]
    for length in range(limit + 1):
        for x in words:
            r = pdc_run(machine, x)
            key = (r.output, r.end_state)
            if key in seen:
                return IlVerdict(limit, False, (seen[key], x))
            seen[key] = x
        if length < limit:
            words = [x + b for x in words for b in "01"]
    return IlVerdict(limit, True, None)


def pdc_il_decode(machine: PdcMachine, y: str, end_state: int, limit: int) -> str:
    """Unique preimage of (output, end state) among inputs of length <=
    limit, by plain enumeration (outputs of a compressor grow with the
    input, so branches whose output escapes y are cut)."""
    from .errors import AmbiguousPreimageError, NoPreimageError

    matches = []
    frontier = [""]
    for length in range(limit + 1):
        keep = []
        for x in frontier:
            r = pdc_run(machine, x)
            if not y.startswith(r.output):
                continue
            if r.output == y and r.end_state == end_state:
                matches.append(x)
            keep.append(x)
        if length < limit:
            frontier = [x + b for x in keep for b in "01"]
    if not matches:
        raise NoPreimageError("no preimage within the length bound")
    if len(matches) > 1:
        raise AmbiguousPreimageError(f"{len(matches)} preimages: {matches[:4]}")
    return matches[0]


def updc_height_invariance(machine: PdcMachine, state: int, x: str,
                           h1: int, h2: int) -> bool:
    """Outputs while consuming x coincide for any two unary-stack heights of
    at least (budget+1)*|x|: the stack cannot drain, so its exact height is
    invisible.  Compares the consumption output (no trailing closure).
    """
    if not machine.unary:
        raise ValueError("height invariance applies to unary machines")
    floor = (machine.lambda_budget + 1) * len(x)
    if h1 < floor or h2 < floor:
        raise ValueError(f"heights must be at least {floor}")
    r1 = pdc_run_from(machine, state, x, "0" * h1 + BOTTOM, terminal_closure=False)
    r2 = pdc_run_from(machine, state, x, "0" * h2 + BOTTOM, terminal_closure=False)
    return r1.output == r2.output


def identity_pdc(unary: bool = False) -> PdcMachine:
    """Copies its input and never touches the stack."""
    tops = "0" + BOTTOM if unary else STACK_SYMS
    trans = {}
    outs = {}
    for b in "01":
        for top in tops:
            trans[(0, b, top)] = (0, top)
            outs[(0, b, top)] = b
    return PdcMachine(1, 0, 0, trans, outs, unary=unary,
                      label="identity-updc" if unary else "identity-pdc")


def random_unary_compressor(rng, max_states: int = 4,
                            max_budget: int = 3) -> PdcMachine:
    """Random valid unary-stack compressor for randomized property checks.

    Bit moves are total per (state, top); a few (state, top) pairs get a
    silent move instead.  Resamples until the silent-move chains respect
    the budget.
    """
    for _ in range(200):
        n = rng.randint(1, max_states)
        budget = rng.randint(0, max_budget)
        trans = {}
        outs = {}
        for q in range(n):
            for top in "0" + BOTTOM:
                silent = budget > 0 and rng.random() < 0.25
                if silent:
                    key = (q, LAMBDA_IN, top)
                    push = rng.choice(["", "0", "00"] if top == "0"
                                      else [BOTTOM, "0" + BOTTOM])
                    trans[key] = (rng.randrange(n), push)
                    outs[key] = rng.choice(["", "0", "1"])
                else:
                    for b in "01":
                        key = (q, b, top)
                        push = rng.choice(["", "0", "00"] if top == "0"
                                          else [BOTTOM, "0" + BOTTOM,
                                                "00" + BOTTOM])
                        trans[key] = (rng.randrange(n), push)
                        outs[key] = rng.choice(["", "0", "1", "01"])
        m = PdcMachine(n, 0, budget, trans, outs, unary=True, label="random")
        if not pdc_validate(m):
            return m
    raise RuntimeError("could not sample a valid unary compressor")
