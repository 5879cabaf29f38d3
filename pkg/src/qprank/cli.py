"""Command line front end: ``qprank <command> <file.qp> [flags]``."""

import argparse
import json
import re
import sys

from . import __version__
from .errors import InputError, QPRankError, ValidationError
from .jacobian import build_algebra, mutate_qp
from .oracle import FieldConfig, Oracle
from .pairing import duality_condition_check, generic_pairing_test, hom_fluent_test, saturation_test
from .qpfile import emit_qp, load_qp
from .quiver import b_matrix_of, mutate_b, pfaffian, rational_rank
from .rank import OP_NAMES, RANK_CASES, Ops, SearchConfig, compute_rank, invariant_values
from .weights import WeightState, dim_solve, mutate_delta, mutate_delta_check, mutate_state

SCHEMA = "qprank/1"
VECTOR_FLAGS = {"--delta", "--check", "--eps", "--eps-check", "--seq", "--at"}


def parse_vector(text):
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ValidationError(f"not a comma-separated integer vector: {text!r}") from None


def _fmt(v):
    if isinstance(v, (tuple, list)):
        return ",".join(str(x) for x in v)
    return str(v)


class Report:
    def __init__(self, command, as_json, out):
        self.command = command
        self.as_json = as_json
        self.out = out

    def line(self, kind, value, provenance, **extra):
        if self.as_json:
            rec = {"schema": SCHEMA, "command": self.command, "kind": kind,
                   "value": list(value) if isinstance(value, tuple) else value,
                   "provenance": provenance}
            rec.update(extra)
            self.out.write(json.dumps(rec, sort_keys=True, default=_jsonable) + "\n")
        else:
            tail = "".join(f"  {k}={_fmt(v)}" for k, v in extra.items() if v is not None and not isinstance(v, (dict, list)))
            self.out.write(f"{kind:<22} {_fmt(value):<24} [{provenance}]{tail}\n")


def _jsonable(x):
    if isinstance(x, tuple):
        return list(x)
    raise TypeError(type(x))


def _fix_negative_vectors(argv):
    # "--delta -7,3,2" would otherwise be read as an unknown option
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in VECTOR_FLAGS and i + 1 < len(argv) and re.match(r"^-\d", argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--prime", type=int, default=32003)
    common.add_argument("--trials", type=int, default=7)
    common.add_argument("--depth", type=int, default=10)
    common.add_argument("--truncate", type=int, default=12, help="degree bound for path truncation")
    common.add_argument("--json", action="store_true", help="JSON-lines output")

    parser = argparse.ArgumentParser(prog="qprank", description="General ranks for quivers with potentials.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("file")
        return p

    add("validate", "parse and check a QP file")
    add("bmatrix", "print the exchange matrix")
    p = add("mutate", "mutate weight vectors along a sequence")
    p.add_argument("--delta", type=parse_vector)
    p.add_argument("--check", type=parse_vector)
    p.add_argument("--seq", type=parse_vector, required=True)
    p = add("qpmutate", "mutate the QP itself")
    p.add_argument("--at", type=parse_vector, required=True)
    p = add("dim", "generic dimension vector")
    p.add_argument("--delta", type=parse_vector)
    p.add_argument("--check", type=parse_vector)
    for name in ("hom", "e"):
        p = add(name, f"generic {name} between two components")
        p.add_argument("--delta", type=parse_vector, required=True)
        p.add_argument("--eps", type=parse_vector)
        p.add_argument("--eps-check", type=parse_vector)
    p = add("rank", "general rank via mutation")
    p.add_argument("--delta", type=parse_vector, required=True)
    p.add_argument("--eps", type=parse_vector)
    p.add_argument("--eps-check", type=parse_vector)
    p.add_argument("--oracle-verify", action="store_true")
    p.add_argument("--seq", type=parse_vector, help="use this mutation sequence instead of searching")
    p.add_argument("--case", choices=RANK_CASES, action="append",
                   help="only accept these extremal cases (repeatable)")
    p.add_argument("--extended", action="store_true", help="allow translation moves")
    p.add_argument("--augment", default=None, help="frozen:target pairs, e.g. 4:3")
    p = add("ops", "evaluate an operator")
    p.add_argument("--op", choices=OP_NAMES, required=True)
    p.add_argument("--delta", type=parse_vector)
    p.add_argument("--check", type=parse_vector)
    p.add_argument("--eps", type=parse_vector, required=True)
    p = add("invariants", "the four mutation invariants of a pair")
    p.add_argument("--delta", type=parse_vector, required=True)
    p.add_argument("--eps", type=parse_vector, required=True)
    p = add("pairing", "pairing, fluency and saturation tests")
    p.add_argument("--delta", type=parse_vector, required=True)
    p.add_argument("--eps-check", type=parse_vector, required=True)
    p.add_argument("--m", type=int, default=3)
    sub.add_parser("selftest", parents=[common], help="run the bundled regression corpus")
    return parser


def _cfg(args):
    return FieldConfig(p=args.prime, seed=args.seed, trials=args.trials, degree_bound=args.truncate)


def _need_len(v, n, name):
    if v is not None and len(v) != n:
        raise ValidationError(f"{name} has length {len(v)}, the quiver has {n} vertices")


def _eps_component(args, n):
    if (args.eps is None) == (args.eps_check is None):
        raise ValidationError("give exactly one of --eps and --eps-check")
    if args.eps is not None:
        _need_len(args.eps, n, "--eps")
        return ("delta", args.eps)
    _need_len(args.eps_check, n, "--eps-check")
    return ("check", args.eps_check)


def cmd_validate(args, qp, rep):
    J = build_algebra(qp, args.truncate, args.prime)
    rep.line("vertices", qp.n, "combinatorial")
    rep.line("arrows", len(qp.quiver.arrows), "combinatorial")
    rep.line("frozen", tuple(sorted(qp.quiver.frozen)), "combinatorial")
    rep.line("jacobian_dim", J.dim, "oracle", nilpotency=J.nilpotency)
    return 0


def cmd_bmatrix(args, qp, rep):
    b = b_matrix_of(qp)
    for i, row in enumerate(b, start=1):
        rep.line(f"row {i}", row, "combinatorial")
    rep.line("rank", rational_rank(b), "combinatorial")
    if len(b) % 2 == 0:
        rep.line("pfaffian", pfaffian(b), "combinatorial")
    return 0


def cmd_mutate(args, qp, rep):
    b = b_matrix_of(qp)
    frozen = qp.quiver.frozen
    _need_len(args.delta, qp.n, "--delta")
    _need_len(args.check, qp.n, "--check")
    if args.delta is None and args.check is None:
        raise ValidationError("give --delta and/or --check")
    if args.delta is not None and args.check is not None:
        state = WeightState(args.delta, args.check, dim_solve(args.delta, args.check, b), b)
        for u in args.seq:
            state = mutate_state(state, u, frozen)
        rep.line("delta", state.delta, "combinatorial")
        rep.line("delta_check", state.delta_check, "combinatorial")
        rep.line("dim", state.dim, "combinatorial")
        return 0
    if args.delta is not None:
        v, bb = args.delta, b
        for u in args.seq:
            v = mutate_delta(v, bb, u, frozen)
            bb = _mb(bb, u, frozen)
        rep.line("delta", v, "combinatorial")
    if args.check is not None:
        v, bb = args.check, b
        for u in args.seq:
            v = mutate_delta_check(v, bb, u, frozen)
            bb = _mb(bb, u, frozen)
        rep.line("delta_check", v, "combinatorial")
    return 0


def _mb(b, u, frozen):
    return mutate_b(b, u, frozen)


def cmd_qpmutate(args, qp, rep):
    cur = qp
    for u in args.at:
        cur = mutate_qp(cur, u, args.truncate)
    if rep.as_json:
        rep.line("qp", emit_qp(cur), "combinatorial")
    else:
        rep.out.write(emit_qp(cur))
    return 0


def cmd_dim(args, qp, rep):
    o = Oracle(qp, _cfg(args))
    if (args.delta is None) == (args.check is None):
        raise ValidationError("give exactly one of --delta and --check")
    if args.delta is not None:
        _need_len(args.delta, qp.n, "--delta")
        comp = ("delta", args.delta)
    else:
        _need_len(args.check, qp.n, "--check")
        comp = ("check", args.check)
    rep.line("dim", o.dim_of(comp), "oracle")
    rep.line("delta", o.delta_of(comp), "oracle")
    rep.line("delta_check", o.check_of(comp), "oracle")
    return 0


def _pair_cmd(args, qp, rep, which):
    o = Oracle(qp, _cfg(args))
    _need_len(args.delta, qp.n, "--delta")
    E = _eps_component(args, qp.n)
    D = ("delta", args.delta)
    val = o.hom(D, E) if which == "hom" else o.e(D, E)
    rep.line(which, val, "oracle", prime=args.prime, trials=args.trials, seed=args.seed)
    return 0


def _parse_augment(text):
    if text is None:
        return None
    pairs = []
    for chunk in text.split(","):
        f, t = chunk.split(":")
        pairs.append((int(f), int(t)))
    return pairs


def cmd_rank(args, qp, rep):
    if (args.eps is None) == (args.eps_check is None):
        raise ValidationError("give exactly one of --eps and --eps-check")
    config = SearchConfig(depth=args.depth, extended=args.extended)
    oracle = Oracle(qp, _cfg(args))
    gamma, cert, _ = compute_rank(
        qp, args.delta, eps=args.eps, eps_check=args.eps_check, config=config, oracle=oracle,
        augmentation=_parse_augment(args.augment), oracle_verify=args.oracle_verify,
        sequence=args.seq, cases=tuple(args.case) if args.case else RANK_CASES)
    if cert.augmentation:
        rep.line("augmentation", ";".join(f"{f}->{t}" for f, t in cert.augmentation), "combinatorial")
    rep.line("sequence", cert.sequence, "combinatorial")
    rep.line("case", cert.case, "combinatorial")
    rep.line("delta_end", cert.delta_states[-1].delta, "combinatorial")
    rep.line("eps_check_end", cert.eps_states[-1].delta_check, "combinatorial")
    rep.line("l", cert.l_value, "combinatorial")
    prov = "both-agree" if args.oracle_verify else "combinatorial"
    rep.line("gamma", gamma, prov, certificate=cert.as_dict() if rep.as_json else None)
    return 0


def cmd_ops(args, qp, rep):
    o = Oracle(qp, _cfg(args))
    ops = Ops(o)
    on_check = args.op in ("rhat", "lhat", "rc", "lc")
    arg = args.check if on_check else args.delta
    if arg is None:
        raise ValidationError(f"{args.op} acts on {'--check' if on_check else '--delta'}")
    _need_len(arg, qp.n, "argument")
    _need_len(args.eps, qp.n, "--eps")
    rep.line(args.op, ops.get(args.op)(arg, args.eps), "oracle")
    return 0


def cmd_invariants(args, qp, rep):
    o = Oracle(qp, _cfg(args))
    names = ("h_l", "hcheck_l", "e_r", "echeck_r")
    for name, v in zip(names, invariant_values(args.delta, args.eps, o)):
        rep.line(name, v, "oracle")
    return 0


def cmd_pairing(args, qp, rep):
    o = Oracle(qp, _cfg(args))
    fl = hom_fluent_test(o, args.delta, args.eps_check, args.m)
    rep.line("hom", fl["hom"], "oracle")
    rep.line("hom_fluent", fl["fluent"], "oracle")
    sat = saturation_test(o, args.delta, args.eps_check, args.m, args.m)
    rep.line("saturated", sat["saturated"], "oracle")
    cond = duality_condition_check(qp, args.delta, args.eps_check, args.depth, o)
    rep.line("duality_hypothesis", cond["hypothesis"] or "none", "combinatorial")
    try:
        gp = generic_pairing_test(o, args.delta, args.eps_check)
        rep.line("generic_pairing", gp["equal"], "oracle", f_eps_check=gp["f_eps_check"],
                 f_dual_delta=gp["f_dual_delta"])
    except QPRankError as exc:
        rep.line("generic_pairing", f"skipped: {exc}", "oracle")
    return 0


def cmd_selftest(args, rep):
    from .selftest import run_selftest

    results = run_selftest(_cfg(args))
    ok = True
    for name, passed, detail in results:
        rep.line(name, "pass" if passed else "FAIL", "both-agree", detail=detail)
        ok = ok and passed
    return 0 if ok else 1


COMMANDS = {
    "validate": cmd_validate,
    "bmatrix": cmd_bmatrix,
    "mutate": cmd_mutate,
    "qpmutate": cmd_qpmutate,
    "dim": cmd_dim,
    "hom": lambda a, q, r: _pair_cmd(a, q, r, "hom"),
    "e": lambda a, q, r: _pair_cmd(a, q, r, "e"),
    "rank": cmd_rank,
    "ops": cmd_ops,
    "invariants": cmd_invariants,
    "pairing": cmd_pairing,
}


def main(argv=None, out=None):
    out = out or sys.stdout
    argv = _fix_negative_vectors(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    rep = Report(args.command, args.json, out)
    try:
        if args.command == "selftest":
            return cmd_selftest(args, rep)
        qp = load_qp(args.file)
        return COMMANDS[args.command](args, qp, rep)
    except QPRankError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return exc.exit_code
    except (ValueError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return InputError.exit_code


if __name__ == "__main__":
    sys.exit(main())
