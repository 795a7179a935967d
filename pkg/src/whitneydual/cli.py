"""Command-line front end.

Exit codes: 0 all requested checks passed, 1 a check failed, 2 usage error,
3 size limit exceeded, 4 invalid poset or labeling input.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

from . import families as fam
from .dual import build_Q, build_R, verify_R_iso_Q
from .errors import LabelingError, NotWhitneyLabeling, PosetError, SizeLimit, WhitneyError
from .io import dumps, load_poset, poset_to_json, to_dot
from .labeling import Verdict, verify_whitney
from .poset import (
    Poset,
    find_isomorphism,
    is_bowtie_free,
    is_lattice,
    is_whitney_dual_pair,
    whitney_first,
    whitney_second,
)
from .qsym import characteristic, flag_qsym, hecke_action, hecke_on_dual, omega, verify_hecke_relations

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT, EXIT_INPUT = 0, 1, 2, 3, 4

FAMILY_LABELINGS = {
    "pi": ("min",),
    "nc": ("nc",),
    "piw": ("lambda_c", "lambda_e"),
    "sf": ("lambda_sf",),
    "isf": ("isf_star",),
    "ncdyck": (),
}


class UsageError(Exception):
    pass


@dataclass
class Resolved:
    poset: Poset
    labeling: object | None
    title: str


def resolve_family(family: str, n: int, labeling: str | None = None, cap: int | None = None) -> Resolved:
    allowed = FAMILY_LABELINGS[family]
    if labeling is None:
        labeling = allowed[0] if allowed else None
    elif labeling not in allowed:
        raise UsageError(f"labeling {labeling!r} is not available for family {family!r}")
    if family == "pi":
        P, lam = fam.partition_lattice(n, cap)
    elif family == "nc":
        P, lam = fam.noncrossing_lattice(n, cap)
    elif family == "piw":
        P = fam.weighted_partition_poset(n, cap)
        lam = fam.lambda_C(n, cap) if labeling == "lambda_c" else fam.lambda_E(n, cap)
    elif family == "sf":
        P, lam = fam.rooted_forest_poset(n, cap)
    elif family == "isf":
        P, lam = fam.increasing_forest_poset(n, cap)
    else:
        P, lam = fam.ncdyck_poset(n, cap), None
    return Resolved(P, lam, f"{family}{n}")


def resolve(args) -> Resolved:
    if (args.family is None) == (args.input is None):
        raise UsageError("give exactly one of --family or --input")
    if args.input is not None:
        if args.labeling is not None:
            raise UsageError("--labeling names a built-in labeling; input files carry their own labels")
        P, lam = load_poset(args.input)
        return Resolved(P, lam, os.path.splitext(os.path.basename(args.input))[0])
    if args.n is None:
        raise UsageError("--family needs --n")
    return resolve_family(args.family, args.n, args.labeling, args.cap)


def resolve_pair(target: str, cap: int | None) -> Resolved:
    if ":" in target and not os.path.exists(target):
        family, _, n = target.partition(":")
        if family not in FAMILY_LABELINGS or not n.isdigit():
            raise UsageError(f"--pair expects FAMILY:N or a JSON path, got {target!r}")
        return resolve_family(family, int(n), None, cap)
    P, lam = load_poset(target)
    return Resolved(P, lam, os.path.splitext(os.path.basename(target))[0])


def need_labeling(r: Resolved):
    if r.labeling is None:
        raise UsageError(f"{r.title} has no labeling; pick --labeling or add labels to the input")
    return r.labeling


def _vec(v) -> str:
    return "(" + ",".join(str(a) for a in v) + ")"


class Output:
    def __init__(self, fmt: str):
        self.fmt = fmt
        self.data: dict = {}
        self.lines: list[str] = []

    def add(self, key, value, text=None):
        self.data[key] = value
        if text is not None:
            self.lines.append(text)

    def emit(self, stream=None):
        stream = stream or sys.stdout
        if self.fmt == "json":
            stream.write(dumps(self.data) + "\n")
        else:
            stream.write("\n".join(self.lines) + ("\n" if self.lines else ""))


def _verdict_lines(v: Verdict) -> list[str]:
    lines = [f"verdict: {v.verdict}" + (f" ({v.reason})" if v.reason else "")]
    lines += ["  " + r.line() for r in v.reports]
    cx = v.counterexample()
    if cx:
        lines.append("  counterexample: " + dumps(cx).replace("\n", "\n  "))
    return lines


def cmd_whitney(args) -> int:
    r = resolve(args)
    out = Output(args.format)
    w, W = whitney_first(r.poset), whitney_second(r.poset)
    out.add("poset", r.title, f"{r.title}: {r.poset.n} elements")
    out.add("w", list(w), f"w={_vec(w)}")
    out.add("W", list(W), f"W={_vec(W)}")
    code = EXIT_OK
    if args.pair:
        other = resolve_pair(args.pair, args.cap)
        dual = is_whitney_dual_pair(r.poset, other.poset)
        out.add("pair", other.title)
        out.add("duals", dual, f"duals with {other.title}: {str(dual).lower()}")
        code = EXIT_OK if dual else EXIT_FAIL
    out.emit()
    return code


def _poset_text(P: Poset, lam=None) -> list[str]:
    lines = []
    for k, level in enumerate(P.by_rank):
        lines.append(f"rank {k}: " + "  ".join(P.names[x] for x in level))
    lines.append("covers:")
    for a, b in P.covers:
        lab = f"  [{lam.edge(a, b)}]" if lam is not None else ""
        lines.append(f"  {P.names[a]} < {P.names[b]}{lab}")
    return lines


def cmd_dual(args) -> int:
    r = resolve(args)
    lam = need_labeling(r)
    Q = build_Q(r.poset, lam, assume_verified=args.assume_verified, jobs=args.jobs)
    fmt = args.emit or args.format
    if fmt == "dot":
        sys.stdout.write(to_dot(Q.poset, Q.labeling, title=f"Q_{r.title}"))
        return EXIT_OK
    out = Output(fmt)
    dual = is_whitney_dual_pair(r.poset, Q.poset)
    probes = {"lattice": is_lattice(Q.poset), "bowtie_free": is_bowtie_free(Q.poset)}
    out.add("dual", poset_to_json(Q.poset, Q.labeling), f"Q of {r.title}: {Q.poset.n} elements")
    out.add("whitney_dual", dual, f"whitney dual of {r.title}: {str(dual).lower()}")
    out.add("probes", probes, f"lattice: {str(probes['lattice']).lower()}, bowtie-free: {str(probes['bowtie_free']).lower()}")
    if fmt == "text":
        out.lines += _poset_text(Q.poset, Q.labeling)
    ok = dual
    if args.via_r:
        R = build_R(r.poset, lam, assume_verified=True)
        iso = verify_R_iso_Q(r.poset, lam, assume_verified=True)
        out.add("R", poset_to_json(R.poset), f"R of {r.title}: {R.poset.n} elements")
        out.add("R_iso_Q", iso, f"R isomorphic to Q via the explicit map: {str(iso).lower()}")
        ok = ok and iso
    out.emit()
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args) -> int:
    r = resolve(args)
    lam = need_labeling(r)
    v = verify_whitney(r.poset, lam, jobs=args.jobs)
    out = Output(args.format)
    out.add("poset", r.title)
    out.add("labeling", lam.name)
    out.add("result", v.to_json())
    out.lines += _verdict_lines(v)
    out.emit()
    return EXIT_OK if v else EXIT_FAIL


def cmd_fqs(args) -> int:
    r = resolve(args)
    q = flag_qsym(r.poset)
    if args.omega:
        q = omega(q)
    out = Output(args.format)
    label = ("omega(F)" if args.omega else "F") + f" of {r.title}"
    out.add("poset", r.title)
    out.add("omega", bool(args.omega))
    out.add("qsym", q.to_json(), f"{label} = {q}")
    if args.pair:
        other = resolve_pair(args.pair, args.cap)
        q2 = flag_qsym(other.poset)
        same = q == q2
        out.add("pair", other.title)
        out.add("equal", same, f"equals F of {other.title}: {str(same).lower()}")
        out.emit()
        return EXIT_OK if same else EXIT_FAIL
    out.emit()
    return EXIT_OK


def cmd_hecke(args) -> int:
    r = resolve(args)
    lam = need_labeling(r)
    H = hecke_action(r.poset, lam, assume_verified=args.assume_verified)
    rep = verify_hecke_relations(H)
    ch_ok = characteristic(H) == flag_qsym(r.poset)
    Q = build_Q(r.poset, lam, assume_verified=True)
    HQ = hecke_on_dual(Q)
    rep_q = verify_hecke_relations(HQ)
    chq_ok = characteristic(HQ) == omega(flag_qsym(Q.poset))
    out = Output(args.format)
    out.add("poset", r.title)
    out.add("chains", len(H.chains))
    out.add("P", rep.to_json(), "P chains: " + "/".join(rep.details) + ": " + rep.status)
    out.add("Q", rep_q.to_json(), "Q chains: " + "/".join(rep_q.details) + ": " + rep_q.status)
    out.add("characteristic_equals_F", ch_ok, f"ch = F_P: {'pass' if ch_ok else 'fail'}")
    out.add("dual_characteristic_equals_omega_F", chq_ok,
            f"ch over Q chains = omega(F_Q): {'pass' if chq_ok else 'fail'}")
    out.emit()
    return EXIT_OK if (rep and rep_q and ch_ok and chq_ok) else EXIT_FAIL


def cmd_iso(args) -> int:
    r = resolve(args)
    if not args.pair:
        raise UsageError("iso needs --pair")
    other = resolve_pair(args.pair, args.cap)
    phi = find_isomorphism(r.poset, other.poset)
    out = Output(args.format)
    out.add("isomorphic", phi is not None, f"{r.title} isomorphic to {other.title}: {str(phi is not None).lower()}")
    if phi is not None:
        witness = {r.poset.names[a]: other.poset.names[b] for a, b in sorted(phi.items())}
        out.add("witness", witness)
        if args.format == "text":
            out.lines += [f"  {a} -> {b}" for a, b in witness.items()]
    out.emit()
    return EXIT_OK if phi is not None else EXIT_FAIL


def cmd_export(args) -> int:
    r = resolve(args)
    lam = r.labeling if r.labeling is not None and not r.labeling.is_chain_edge else None
    fmt = args.emit or args.format
    if fmt == "dot":
        sys.stdout.write(to_dot(r.poset, lam, title=r.title))
    elif fmt == "json":
        sys.stdout.write(dumps(poset_to_json(r.poset, lam)) + "\n")
    else:
        sys.stdout.write("\n".join(_poset_text(r.poset, lam)) + "\n")
    return EXIT_OK


COMMANDS = {
    "whitney": (cmd_whitney, "Whitney numbers of both kinds (and a duality check with --pair)"),
    "dual": (cmd_dual, "build the quotient Whitney dual Q (and R with --via-r)"),
    "verify": (cmd_verify, "EW / CW / generalized verdict for a labeling"),
    "fqs": (cmd_fqs, "flag quasisymmetric function in the fundamental basis"),
    "hecke": (cmd_hecke, "0-Hecke relations on maximal chains of P and of its dual"),
    "iso": (cmd_iso, "graded isomorphism test against --pair"),
    "export": (cmd_export, "write the poset as JSON, DOT or text"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", choices=sorted(FAMILY_LABELINGS))
    common.add_argument("--n", type=int)
    common.add_argument("--labeling", choices=["min", "nc", "lambda_e", "lambda_c", "lambda_sf", "isf_star"])
    common.add_argument("--input", help="poset JSON file")
    common.add_argument("--format", choices=["text", "json", "dot"], default="text")
    common.add_argument("--cap", type=int, help="override the family size cap on n")
    common.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    common.add_argument("--pair", help="FAMILY:N or a poset JSON file")
    common.add_argument("--via-r", action="store_true", help="also build R and check R = Q")
    common.add_argument("--omega", action="store_true", help="apply omega to the printed function")
    common.add_argument("--assume-verified", action="store_true", help="skip labeling verification")
    common.add_argument("--emit", choices=["text", "json", "dot"], help="output format for poset results")

    parser = argparse.ArgumentParser(prog="whitneydual", description="Whitney duals of graded posets.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text, description=help_text)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = COMMANDS[args.command][0]
    try:
        return handler(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SizeLimit as exc:
        print(f"size limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except NotWhitneyLabeling as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        if exc.report is not None:
            print("\n".join(_verdict_lines(exc.report)), file=sys.stderr)
        return EXIT_FAIL
    except (PosetError, LabelingError) as exc:
        print(f"invalid input: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except WhitneyError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (OSError, ValueError, KeyError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
