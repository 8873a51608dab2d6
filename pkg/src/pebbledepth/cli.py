"""Command-line front end.

Exit codes: 0 success, 1 domain error (divergent/stuck/no-preimage/...),
2 usage error.  Bit inputs may come from --input, --input-file or stdin;
whitespace is ignored.  All randomised choices are governed by --seed, so
output is byte-identical across runs for fixed flags.
"""

from __future__ import annotations

import argparse
import sys

from .complexity import default_pb_pool, dk_fst, dk_fst_bruteforce, dk_pb_upper
from .constructions import (
    cprime_for,
    power_print_machine,
    pref_witness,
    print_reverse_machine,
    remark1_witness,
    thm4_witness,
)
from .errors import DomainError
from .fst import FstMachine, fst_run, il_check, il_decode
from .lz78 import lz78_decode, lz78_encoded_len, lz78_parse
from .machine_io import load_machine
from .pebble import PebbleMachine, pb_run
from .profiles import ProfileConfig, emit_csv, profile, sgl_experiment
from .pushdown import PdcMachine, pdc_il_check, pdc_run, pdc_validate
from .sequences import Remark1Source, Thm4Source, make_source, unit_out_len
from .words import check_word


def _read_bits(args) -> str:
    if getattr(args, "input", None) is not None:
        raw = args.input
    elif getattr(args, "input_file", None) is not None:
        with open(args.input_file, "r", encoding="ascii") as fh:
            raw = fh.read()
    else:
        raw = sys.stdin.read()
    bits = "".join(raw.split())
    check_word(bits)
    return bits


def _add_bits_flags(p):
    p.add_argument("--input", help="bits on the command line")
    p.add_argument("--input-file", help="read bits from a file")


def _source_from(args):
    return make_source(
        args.seq,
        pattern=getattr(args, "pattern", "0"),
        k=getattr(args, "k", None),
        v=getattr(args, "v", None),
        seed=getattr(args, "seed", 0),
        selector=getattr(args, "selector", "sample-max-lz"),
        inner=getattr(args, "of", None),
    )


def _seq_flags(p, seqs):
    p.add_argument("--seq", required=True, choices=seqs)
    p.add_argument("--k", type=int)
    p.add_argument("--v", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pattern", default="0")
    p.add_argument("--selector", default="sample-max-lz",
                   choices=["sample-max-lz", "hash"])
    p.add_argument("--of", help="inner sequence for prefseq")


def _n_list(text):
    return [int(float(tok)) for tok in text.split(",")]


def cmd_run(args) -> int:
    machine = load_machine(args.machine)
    bits = _read_bits(args)
    if isinstance(machine, FstMachine):
        out, end = fst_run(machine, bits)
        print(out)
        if args.show_state:
            print(f"end-state {end}", file=sys.stderr)
    elif isinstance(machine, PebbleMachine):
        print(pb_run(machine, bits, max_steps=args.max_steps))
    elif isinstance(machine, PdcMachine):
        bad = pdc_validate(machine)
        if bad:
            raise DomainError("; ".join(bad))
        print(pdc_run(machine, bits).output)
    return 0


def cmd_ilcheck(args) -> int:
    machine = load_machine(args.machine)
    if isinstance(machine, FstMachine):
        verdict = il_check(machine, args.max_len)
    elif isinstance(machine, PdcMachine):
        bad = pdc_validate(machine)
        if bad:
            raise DomainError("; ".join(bad))
        verdict = pdc_il_check(machine, args.max_len)
    else:
        raise DomainError("losslessness checking covers fst/pdc machines")
    if verdict.ok:
        print(f"IL-up-to-{verdict.limit}")
    else:
        a, b = verdict.counterexample
        print(f"counterexample {a or '-'} {b or '-'}")
    return 0


def cmd_decode(args) -> int:
    machine = load_machine(args.machine)
    if not isinstance(machine, FstMachine):
        raise DomainError("decode inverts fst machines")
    out = "" if args.output == "-" else args.output
    check_word(out)
    print(il_decode(machine, out, args.end_state, args.max_len) or "-")
    return 0


def cmd_lz78(args) -> int:
    if args.decode is not None:
        pairs = []
        if args.decode:
            for tok in args.decode.split(","):
                ptr, bit = tok.split(":")
                pairs.append((int(ptr), bit))
        print(lz78_decode(pairs))
        return 0
    bits = _read_bits(args)
    parse = lz78_parse(bits)
    if args.emit == "phrases":
        print(",".join(f"{p}:{b}" for p, b in parse.pairs()))
    elif args.emit == "len-plain":
        print(lz78_encoded_len(parse, "plain"))
    else:
        print(lz78_encoded_len(parse, "gamma"))
    return 0


def cmd_dk(args) -> int:
    bits = _read_bits(args)
    if args.family == "fst":
        if args.oracle:
            print(dk_fst_bruteforce(bits, args.k))
        else:
            result = dk_fst(bits, args.k)
            print(result.value if result.value != float("inf") else "inf")
    else:
        result = dk_pb_upper(bits, default_pb_pool(), args.max_witness)
        print(result.value if result.value != float("inf") else "inf")
    return 0


def cmd_gen(args) -> int:
    source = _source_from(args)
    if args.emit == "bits":
        print(source.prefix(args.n))
        return 0
    # structural metadata: unit table with offsets
    if not hasattr(source, "units_covering"):
        raise DomainError(f"{args.seq} has no unit structure to dump")
    print("index,kind,start,out_len")
    for i, (start, unit) in enumerate(source.units_covering(args.n)):
        print(f"{i},{unit[0]},{start},{unit_out_len(unit)}")
    return 0


def cmd_witness(args) -> int:
    if args.seq == "pref":
        w = pref_witness(args.x or "", args.z or "")
    elif args.seq == "thm4":
        src = Thm4Source(args.k if args.k is not None else 3,
                         args.v if args.v is not None else 1)
        w = thm4_witness(src, args.n)
    else:
        src = Remark1Source(args.k if args.k is not None else 9,
                            seed=args.seed, selector=args.selector)
        w = remark1_witness(src, args.n)
    print(w.input)
    print(w.expected)
    return 0


def cmd_profile(args) -> int:
    source = _source_from(args)
    config = ProfileConfig(
        dk_k=args.dk_k,
        cprime=tuple(int(x) for x in args.with_cprime.split(","))
        if args.with_cprime else None,
        normality_b=args.normality_b,
        verify_pb=args.verify_pb,
        pb_max_steps=args.max_steps,
    )
    rows = profile(source, _n_list(args.n_list), config)
    text = emit_csv(rows)
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_sgl(args) -> int:
    source = _source_from(args)
    machine = load_machine(args.machine)
    if not isinstance(machine, FstMachine):
        raise DomainError("the slow-growth experiment transforms by an fst")
    report = sgl_experiment(source, machine, _n_list(args.n_list))
    sys.stdout.write("n,gap_base,gap_image,retention,beta\n")
    for b, i, r in zip(report.base_rows, report.image_rows, report.retention):
        rtxt = "" if r is None else f"{r:.6f}"
        gb = "" if b.gap_fs_pb is None else f"{b.gap_fs_pb:.6f}"
        gi = "" if i.gap_fs_pb is None else f"{i.gap_fs_pb:.6f}"
        sys.stdout.write(f"{b.n},{gb},{gi},{rtxt},{report.beta:.6f}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="pebbledepth",
        description="transducer runs, compression measures and depth profiles",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run a machine file on input bits")
    p.add_argument("--machine", required=True)
    p.add_argument("--max-steps", type=int, default=None)
    p.add_argument("--show-state", action="store_true")
    _add_bits_flags(p)
    p.set_defaults(fn=cmd_run)

    p = sub.add_parser("ilcheck", help="bounded losslessness check")
    p.add_argument("--machine", required=True)
    p.add_argument("--max-len", type=int, default=12)
    p.set_defaults(fn=cmd_ilcheck)

    p = sub.add_parser("decode", help="invert a lossless transducer run")
    p.add_argument("--machine", required=True)
    p.add_argument("--output", required=True, help="bits, '-' for empty")
    p.add_argument("--end-state", type=int, required=True)
    p.add_argument("--max-len", type=int, default=12)
    p.set_defaults(fn=cmd_decode)

    p = sub.add_parser("lz78", help="parse/encode/decode")
    _add_bits_flags(p)
    p.add_argument("--emit", choices=["phrases", "len-plain", "len-gamma"],
                   default="phrases")
    p.add_argument("--decode", help="pointer:bit pairs, comma separated")
    p.set_defaults(fn=cmd_lz78)

    p = sub.add_parser("dk", help="minimal description-bounded input length")
    p.add_argument("--family", choices=["fst", "pb"], required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--oracle", action="store_true",
                   help="independent brute-force evaluation (fst only)")
    p.add_argument("--max-witness", type=int, default=0)
    _add_bits_flags(p)
    p.set_defaults(fn=cmd_dk)

    p = sub.add_parser("gen", help="emit a sequence prefix")
    _seq_flags(p, ["zeros", "ones", "periodic", "champernowne", "thm4",
                   "remark1", "prefseq"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--emit", choices=["bits", "meta"], default="bits")
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("witness", help="machine input + expected output")
    p.add_argument("--seq", required=True, choices=["pref", "thm4", "remark1"])
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--k", type=int)
    p.add_argument("--v", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--selector", default="sample-max-lz",
                   choices=["sample-max-lz", "hash"])
    p.add_argument("--x", help="pref witness: the doubled word")
    p.add_argument("--z", help="pref witness: the copied tail")
    p.set_defaults(fn=cmd_witness)

    p = sub.add_parser("profile", help="depth-profile CSV over prefix lengths")
    _seq_flags(p, ["zeros", "ones", "periodic", "champernowne", "thm4",
                   "remark1", "prefseq"])
    p.add_argument("--n-list", required=True)
    p.add_argument("--out")
    p.add_argument("--dk-k", type=int)
    p.add_argument("--with-cprime", help="count_prefix,flag_len,modulus")
    p.add_argument("--normality-b", type=int)
    p.add_argument("--verify-pb", action="store_true")
    p.add_argument("--max-steps", type=int)
    p.set_defaults(fn=cmd_profile)

    p = sub.add_parser("sgl", help="paired profiles under a transducer")
    _seq_flags(p, ["zeros", "ones", "periodic", "champernowne", "thm4",
                   "remark1", "prefseq"])
    p.add_argument("--machine", required=True)
    p.add_argument("--n-list", required=True)
    p.set_defaults(fn=cmd_sgl)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
