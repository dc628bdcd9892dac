"""Command-line front end.

Exit codes: 0 success, 1 domain precondition or predicate failure,
2 I/O or schema failure.  Reports are JSON with a stable field order;
--pretty adds indentation.
"""

from __future__ import annotations

import argparse
import itertools
import sys
from fractions import Fraction

from . import fan as fanmod
from . import gammasig, jsonio, polymat, structure
from .fan import InvalidFanError
from .gammasig import GammaSigError
from .jsonio import SchemaError
from .polymat import PolymatError
from .structure import PreconditionError, StructureError


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _load_fan(path):
    fan = jsonio.fan_from_json(jsonio.load(path))
    report = fanmod.validate(fan)
    if not report.passed:
        raise CliError(jsonio.dump(report.to_json(), pretty=True), 1)
    return fan


def _emit(report, args):
    sys.stdout.write(jsonio.dump(report, pretty=args.pretty) + "\n")


def cmd_validate(args):
    try:
        fan = jsonio.fan_from_json(jsonio.load(args.fan_file))
    except SchemaError as exc:
        raise CliError(str(exc), 2)
    report = fanmod.validate(fan)
    out = {"validation": report.to_json()}
    ok = report.passed
    if ok:
        flag, flag_witness = fanmod.is_flag(fan)
        lc, lc_witness = fanmod.is_locally_convex(fan)
        out["flag"] = {"passed": flag,
                       **({"witness": list(flag_witness)} if flag_witness else {})}
        out["locally_convex"] = {
            "passed": lc,
            **({"witness": {"ray": lc_witness[0],
                            "wall": list(lc_witness[1].tau)}} if lc_witness else {}),
        }
        ok = flag and lc
    _emit(out, args)
    return 0 if ok else 1


def cmd_signature(args):
    fan = _load_fan(args.fan_file)
    if fan.dim % 2 != 0:
        raise CliError(f"signature needs even dimension, got {fan.dim}", 1)
    lc, witness = fanmod.is_locally_convex(fan)
    if not lc:
        raise CliError(f"fan is not locally convex at ray {witness[0]}", 1)
    f = gammasig.f_vector(fan)
    h = gammasig.h_vector(f)
    report = gammasig.signature_zero_predicate(fan)
    _emit({
        "f": list(f.counts),
        "h": list(h.entries),
        "gamma": list(report.gamma),
        "signature": report.signature,
        "predicate": report.predicate,
        "witnesses": [{"p": w.p, "cone": list(w.pcone),
                       "tuple": list(w.exponents)} for w in report.witnesses],
        "consistent": report.consistent,
    }, args)
    return 0


def _pcones(fan, p_max):
    for face in sorted(fanmod.faces(fan)):
        if 1 <= len(face) <= p_max:
            yield face


def cmd_structure(args):
    fan = _load_fan(args.fan_file)
    p_max = args.p_max if args.p_max else fan.dim // 2
    if p_max > fan.dim // 2:
        raise CliError(f"p_max must be at most d/2 = {fan.dim // 2}", 1)
    lc, witness = fanmod.is_locally_convex(fan)
    if not lc:
        raise CliError(f"fan is not locally convex at ray {witness[0]}", 1)

    sub = args.subcommand
    if sub == "special-rays":
        out = []
        for pcone in _pcones(fan, p_max):
            for size in range(1, len(pcone) + 1):
                for A in itertools.combinations(pcone, size):
                    rep = structure.special_rays(fan, pcone, A)
                    out.append({"pcone": list(pcone), "A": list(A),
                                "special": list(rep.special),
                                "non_special": list(rep.non_special),
                                "subspace_dim": rep.subspace.dim})
        report = {"special_rays": out}
    elif sub == "suspensions":
        out = []
        for rho in range(fan.n_rays):
            dec = structure.suspension_structure(fan, rho)
            out.append({"ray": rho, "core_dim": dec.core.dim,
                        "core_rays": list(dec.core_rays),
                        "pairs": [list(p) for p in dec.pairs],
                        "valid": dec.valid,
                        "residual": [list(map(str, r)) for r in dec.residual]})
        report = {"suspensions": out}
    elif sub == "four-cycles":
        cover = structure.all_rays_in_4cycles(fan)
        report = {"witnessed": {str(k): list(v.rays)
                                for k, v in sorted(cover.witnessed.items())},
                  "unwitnessed": [{"ray": r, "reason": reason}
                                  for r, reason in cover.unwitnessed],
                  "cycles": [list(c.rays) for c in cover.cycles]}
    elif sub == "blocks":
        cov = structure.special_block_cover(fan)
        report = {"centers": {str(g): list(cs) for g, cs in sorted(cov.centers.items())},
                  "structure_failures": list(cov.structure_failures),
                  "sharing_failures": [list(map(list, f)) for f in cov.sharing_failures]}
    elif sub == "dichotomy":
        out = []
        for pcone in _pcones(fan, p_max):
            if len(pcone) < 2:
                continue
            tag = structure.pcone_dichotomy(fan, pcone)
            out.append({"pcone": list(pcone), "case": tag.case,
                        "data": _plain(tag.data)})
        report = {"dichotomy": out}
    else:
        raise CliError(f"unknown structure subcommand {sub}", 2)
    _emit(report, args)
    return 0


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (tuple, list)):
        return [_plain(x) for x in obj]
    if isinstance(obj, Fraction):
        return str(obj)
    return obj


def cmd_oddtuple(args):
    try:
        b = jsonio.dim_function_from_json(jsonio.load(args.dimfn_file))
    except SchemaError as exc:
        raise CliError(str(exc), 2)
    report = polymat.check_submodular(b)
    if not report.passed:
        raise CliError(f"invalid dimension function: submodular={report.submodular_ok} "
                       f"monotone={report.monotone_ok} floor={report.size_floor_ok}", 1)
    if (b.total - b.n) % 2 != 0:
        raise CliError(f"b_[N] = {b.total} and N = {b.n} have different parity", 1)

    if args.perm:
        perms = [tuple(int(c) for c in args.perm)]
    elif args.all_perms:
        perms = list(itertools.permutations(range(1, b.n + 1)))
    else:
        perms = [tuple(range(1, b.n + 1))]

    runs = []
    for perm in perms:
        a, trace = polymat.odd_tuple_algorithm(b, perm)
        compat = polymat.check_output_compat(b, a, trace)
        comparison = polymat.compare_to_extreme(b, trace)
        runs.append({
            "perm": list(perm),
            "tuple": list(a),
            "totals": list(trace.totals),
            "transitions": list(trace.transitions),
            "mus": list(trace.mus),
            "alphas": list(trace.alphas),
            "compatible": compat.compatible,
            "witness": list(compat.witness) if compat.witness else None,
            "extreme_comparison_ok": comparison.ok,
        })
    out = {"N": b.n, "b_total": b.total, "runs": runs}
    if args.oracle:
        oracle = polymat.brute_force_odd_tuples(b)
        out["oracle"] = [list(t) for t in oracle]
        compatible_tuples = {tuple(r["tuple"]) for r in runs if r["compatible"]}
        out["agreement"] = {
            "outputs_in_oracle": all(t in oracle for t in compatible_tuples),
            "oracle_empty_all_flagged": (not oracle)
                                        <= all(not r["compatible"] for r in runs),
        }
    _emit(out, args)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fanlab",
        description="Exact analysis of simplicial complete fans and odd exponent tuples")
    parser.add_argument("--pretty", action="store_true",
                        help="indent JSON reports")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("validate", help="validate a fan file")
    p.add_argument("fan_file")
    p.set_defaults(func=cmd_validate)

    p = subs.add_parser("signature", help="f/h/gamma vectors, signature, predicate")
    p.add_argument("fan_file")
    p.set_defaults(func=cmd_signature)

    p = subs.add_parser("structure", help="structural reports")
    p.add_argument("subcommand", choices=["special-rays", "suspensions",
                                          "four-cycles", "blocks", "dichotomy"])
    p.add_argument("fan_file")
    p.add_argument("--p-max", type=int, default=None)
    p.set_defaults(func=cmd_structure)

    p = subs.add_parser("oddtuple", help="odd-tuple algorithm runs and oracle")
    p.add_argument("dimfn_file")
    p.add_argument("--perm", help="a permutation as digits, e.g. 123")
    p.add_argument("--all-perms", action="store_true")
    p.add_argument("--oracle", action="store_true")
    p.set_defaults(func=cmd_oddtuple)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        sys.stderr.write(str(exc) + "\n")
        return exc.code
    except SchemaError as exc:
        sys.stderr.write(str(exc) + "\n")
        return 2
    except (InvalidFanError, GammaSigError, PolymatError, PreconditionError,
            StructureError, ValueError) as exc:
        sys.stderr.write(str(exc) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
