"""Command-line interface: ``lefschetz <subcommand> ...``.

Exit codes: 0 success / property holds, 1 property fails / nothing found,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import kernels
from .engine import WORKERS_ENV, check_lefschetz, default_workers
from .ideals import (
    MonomialIdeal,
    family_ideal,
    graph_of_rlex,
    mu_to_family,
    named_fixture,
    parse_ideal,
    power_family,
)
from .inverse import (
    apply_derivation,
    ell,
    identity_check,
    in_inverse_system,
    witness_fd,
    witness_fd_verifies,
    witness_n4,
    witness_n5,
)
from .linalg import QQ, FieldSpec
from .quotient import build_quotient
from .search import DEFAULT_PRIME, SearchSpec, search
from .sequences import IntSequence, closed_form_hs, quadratic_discriminant, shape_report


@dataclass(frozen=True)
class CliConfig:
    field: FieldSpec = QQ
    workers: int = 1
    output: str = "text"
    seed: int | None = None
    level: str = "fast"

    def __post_init__(self):
        if self.workers < 1:
            raise ValueError("worker count must be at least 1")
        if self.output not in ("json", "text"):
            raise ValueError(f"unknown output format {self.output!r}")


class UsageError(Exception):
    pass


def _emit(doc, as_json: bool, text: str | None = None) -> None:
    if as_json or text is None:
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        print(text)


def load_ideal(spec: str) -> MonomialIdeal:
    """Inline text, ``@fixture`` name, or a path to a file holding either form."""
    if spec.startswith("@"):
        return named_fixture(spec[1:])
    if os.path.isfile(spec):
        with open(spec) as fh:
            return parse_ideal(fh.read())
    return parse_ideal(spec)


def _ideal_from_args(args) -> MonomialIdeal:
    if getattr(args, "ideal", None):
        return load_ideal(args.ideal)
    if None not in (args.n, args.i, args.j):
        return family_ideal(args.n, args.i, args.j)
    raise UsageError("give --ideal or all of --n --i --j")


def _add_family_args(p, required=False):
    p.add_argument("--n", type=int, required=required)
    p.add_argument("--i", type=int)
    p.add_argument("--j", type=int)


def cmd_hilbert(args, cfg) -> int:
    q = build_quotient(_ideal_from_args(args))
    print(json.dumps(q.hilbert.to_list(), separators=(",", ":")))
    return 0


def cmd_analyze(args, cfg) -> int:
    doc = {}
    if args.seq:
        seq = IntSequence(int(x) for x in args.seq.replace(" ", "").strip("()[]").split(","))
    elif None not in (args.n, args.i, args.j):
        seq = closed_form_hs(args.n, args.i, args.j)
        doc["discriminant"] = quadratic_discriminant(args.i, args.j)
    else:
        raise UsageError("give --seq or all of --n --i --j")
    doc["sequence"] = seq.to_list()
    doc.update(shape_report(seq).to_json())
    _emit(doc, True)
    return 0


def cmd_family(args, cfg) -> int:
    if args.mu is not None:
        ideal = mu_to_family(args.n, args.mu)
    elif None not in (args.i, args.j):
        ideal = family_ideal(args.n, args.i, args.j)
    else:
        raise UsageError("give --i and --j, or --mu")
    doc = {"ideal": ideal.to_json(), "text": ideal.to_text(), "generators": len(ideal)}
    if args.i is not None and args.j is not None and args.mu is None:
        doc["graph_edges"] = [list(e) for e in graph_of_rlex(args.n, args.i, args.j).sorted_edges()]
    _emit(doc, cfg.output == "json", ideal.to_text())
    return 0


def cmd_lefschetz(args, cfg, strong: bool) -> int:
    ideal = _ideal_from_args(args)
    report = check_lefschetz(ideal, cfg.field, strong=strong, workers=cfg.workers)
    text = f"{report.property} over {report.field}: {report.verdict}"
    if report.failures:
        text += "; failing maps (i, t): " + ", ".join(f"({i}, {t})" for i, t in report.failing_maps())
    _emit(report.to_json(), cfg.output == "json", text)
    return 0 if report.passed else 1


def cmd_witness(args, cfg) -> int:
    kind = args.kind
    if kind == "identity":
        results = {str(d): identity_check(d) for d in range(3, args.d_max + 1)}
        ok = all(results.values())
        _emit({"kind": kind, "d_max": args.d_max, "results": results, "ok": ok}, True)
        return 0 if ok else 1
    if args.d is None:
        raise UsageError(f"witness {kind} needs --d")
    d = args.d
    if kind == "fd":
        f = witness_fd(d)
        ok = witness_fd_verifies(d)
        doc = {"kind": kind, "d": d, "f": f.to_text(), "l3_f_in_ideal": ok, "identity": identity_check(d)}
        ok = ok and doc["identity"]
    elif kind == "n4":
        F = witness_n4(d)
        checks = {
            "in_inverse_system": in_inverse_system(power_family(4, d), F),
            "l_kills_F": apply_derivation(ell(4), F).is_zero(),
        }
        doc = {"kind": kind, "d": d, "F": F.to_text("X"), "checks": checks}
        ok = all(checks.values())
    else:
        w = witness_n5(d)
        checks = w.checks()
        doc = {"kind": kind, "d": d, "kernel_f": w.kernel_f.to_text(), "perp_F": w.perp_F.to_text("X"), "checks": checks}
        ok = all(checks.values())
    doc["ok"] = ok
    _emit(doc, True)
    return 0 if ok else 1


def cmd_search(args, cfg) -> int:
    fld = cfg.field if args.field is not None else FieldSpec(DEFAULT_PRIME)
    spec = SearchSpec(
        n=args.n,
        d=args.d,
        mu=args.mu,
        strategy=args.strategy,
        seed=args.seed,
        max_trials=args.max_trials,
        field=fld,
        recertify=args.recertify,
    )
    cert = search(spec)
    text = f"found: {cert.ideal.to_text()}" if cert.found else "no SLP ideal found"
    _emit(cert.to_json(), cfg.output == "json", text + f" (trials: {cert.trials})")
    return 0 if cert.found else 1


def cmd_verify(args, cfg) -> int:
    from .suite import verify_suite

    def progress(k, total, m, verdict):
        print(f"[{k}/{total}] {m}: {verdict}", file=sys.stderr)

    report = verify_suite(cfg.level, progress=progress if args.progress else None)
    lines = [("PASS " if c.ok else "FAIL ") + c.name + ("" if c.ok else f" ({c.observed})") for c in report.checks]
    _emit(report.to_json(), cfg.output == "json", "\n".join(lines))
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lefschetz", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s 0.1.0 ({kernels.BACKEND} kernel)")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_field=False):
        p.add_argument("--json", action="store_true", help="print a JSON document")
        if with_field:
            p.add_argument("--field", default=None, help="q (default) or p:<prime>")
            p.add_argument("--workers", type=int, default=None, help=f"default from ${WORKERS_ENV}")

    p = sub.add_parser("hilbert", help="Hilbert function as a JSON array")
    _add_family_args(p)
    p.add_argument("--ideal")

    p = sub.add_parser("analyze", help="shape predicates of a sequence or family series")
    _add_family_args(p)
    p.add_argument("--seq", help="comma separated coefficients")

    p = sub.add_parser("family", help="generators of a quadratic family ideal")
    _add_family_args(p, required=True)
    p.add_argument("--mu", type=int)
    common(p)

    for name in ("slp", "wlp"):
        p = sub.add_parser(name, help=f"decide the {name.upper()} for l = x1 + ... + xn")
        _add_family_args(p)
        p.add_argument("--ideal", help="inline ideal, @fixture, or file path")
        common(p, with_field=True)

    p = sub.add_parser("witness", help="verify the explicit higher-degree witnesses")
    p.add_argument("kind", choices=("fd", "n4", "n5", "identity"))
    p.add_argument("--d", type=int)
    p.add_argument("--d-max", type=int, default=20)

    p = sub.add_parser("search", help="search for an SLP ideal with mu generators of degree d")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--mu", type=int, required=True)
    p.add_argument("--strategy", choices=("exhaustive", "random", "greedy"), default="exhaustive")
    p.add_argument("--seed", type=int)
    p.add_argument("--max-trials", type=int, default=1000)
    p.add_argument("--recertify", action="store_true", help="re-check the result over q")
    common(p, with_field=True)

    p = sub.add_parser("verify-paper", help="run the built-in fixture suite")
    p.add_argument("--level", choices=("fast", "full"), default="fast")
    p.add_argument("--progress", action="store_true")
    common(p)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        field_text = getattr(args, "field", None)
        workers = getattr(args, "workers", None)
        cfg = CliConfig(
            field=FieldSpec.parse(field_text) if field_text else QQ,
            workers=default_workers() if workers is None else workers,
            output="json" if getattr(args, "json", False) else "text",
            seed=getattr(args, "seed", None),
            level=getattr(args, "level", "fast"),
        )
        handlers = {
            "hilbert": cmd_hilbert,
            "analyze": cmd_analyze,
            "family": cmd_family,
            "slp": lambda a, c: cmd_lefschetz(a, c, True),
            "wlp": lambda a, c: cmd_lefschetz(a, c, False),
            "witness": cmd_witness,
            "search": cmd_search,
            "verify-paper": cmd_verify,
        }
        return handlers[args.command](args, cfg)
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main(argv: list[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
