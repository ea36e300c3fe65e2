"""Command-line entry point.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 size cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from typing import Any

from . import io as sio
from .exact import is_prime
from .groups import DEFAULT_MAX_ORDER, GroupTooLarge, superclasses_algebra_group, superclasses_triangular
from .groups import triangular, unitriangular
from .theory import Report, builtin_theory, schur_check, verify_theory, BUILTINS

log = logging.getLogger("superchar")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    n: int = 3
    p: int = 2
    out: str | None = None
    format: str = "json"
    verify_oracle: bool = False
    verify_kirillov: bool = False
    jobs: int = 1
    max_order: int = DEFAULT_MAX_ORDER
    extra: dict[str, Any] = field(default_factory=dict)

    def validate(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.max_order < 1 or self.jobs < 1:
            raise ValueError("caps and job counts must be positive")
        if self.format not in ("json", "csv"):
            raise ValueError("format must be json or csv")


class UsageError(Exception):
    pass


def _emit(cfg: RunConfig, payload: dict, csv_ok: bool = True):
    if cfg.format == "csv":
        if not csv_ok:
            raise UsageError("csv output is only available for tables")
        text = sio.table_csv(payload)
    else:
        text = sio.dumps(payload)
    sio.write_output(text, cfg.out)


# -- commands ------------------------------------------------------------------------

def cmd_ut_table(cfg: RunConfig) -> int:
    from .unitriangular import kirillov_forms, ut_theory

    th = ut_theory(cfg.n, cfg.p, cfg.max_order)
    reps = th.classes.reps
    table = [[th.closed_character(pair)(r) for r in reps] for pair in th.char_names]
    checks = Report()
    if cfg.verify_oracle:
        bad = [str(pair) for k, pair in enumerate(th.char_names)
               if [th.characters[k](r) for r in reps] != table[k]]
        checks.add("closed form = induced oracle", not bad, ", ".join(bad))
    if cfg.verify_kirillov:
        G = th.G
        ok = True
        for k, lam in enumerate(th.lambdas):
            for x in range(G.J.size):
                v = th.characters[k](G.unit_index[x])
                a, b = kirillov_forms(th, lam, x)
                if a != v or b != v:
                    ok = False
                    break
        checks.add("Kirillov orbit sums", ok)
    payload = sio.table_payload("UT", cfg.n, cfg.p, th.char_names, th.class_names, th.classes.sizes, table,
                                checks=checks.to_json())
    _emit(cfg, payload)
    return EXIT_OK if checks.passed else EXIT_FAIL


def cmd_t_table(cfg: RunConfig) -> int:
    from .triangular import closed_value, tri_kirillov, tri_norm, tri_theory

    th = tri_theory(cfg.n, cfg.p, cfg.max_order)
    uncorrected = bool(cfg.extra.get("uncorrected"))
    table = [[closed_value(a.theta, a.D, b.h, b.D, cfg.p, uncorrected=uncorrected) for b in th.class_names]
             for a in th.char_names]
    checks = Report()
    reps = th.classes.reps
    if cfg.verify_oracle:
        bad = [str(a) for k, a in enumerate(th.char_names) if [th.characters[k](r) for r in reps] != table[k]]
        checks.add("value formula = induced oracle", not bad, ", ".join(bad))
        checks.add("norms", all(tri_norm(th, a).passed for a in th.char_names))
    if cfg.verify_kirillov:
        ok = True
        for k, a in enumerate(th.char_names):
            for b, r in zip(th.class_names, reps):
                x, y = tri_kirillov(th, a, b.h, b.D)
                v = th.characters[k](r)
                ok &= x == v and y == v
        checks.add("Kirillov forms", ok)
    payload = sio.table_payload("T", cfg.n, cfg.p, th.char_names, th.class_names, th.classes.sizes, table,
                                value_formula="uncorrected" if uncorrected else "corrected", checks=checks.to_json())
    _emit(cfg, payload)
    return EXIT_OK if checks.passed else EXIT_FAIL


def cmd_verify_theory(cfg: RunConfig) -> int:
    name = cfg.extra.get("builtin")
    if name not in BUILTINS:
        raise UsageError(f"unknown builtin {name!r}; choose from {', '.join(sorted(BUILTINS))}")
    cand = builtin_theory(name)
    rep = verify_theory(cand)
    for check, ok, detail in schur_check(cand.group, cand.labels).checks:
        rep.add(f"schur: {check}", ok, detail)
    payload = {"schema_version": sio.SCHEMA_VERSION, "builtin": name, **rep.to_json()}
    _emit(cfg, payload, csv_ok=False)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_orbits(cfg: RunConfig) -> int:
    kind = cfg.extra.get("kind", "ut")
    if kind == "ut":
        G = unitriangular(cfg.n, cfg.p, cfg.max_order)
        J_dec, G_dec = superclasses_algebra_group(cfg.n, cfg.p, cfg.max_order)
        if cfg.extra.get("ambient") == "J":
            payload = sio.orbit_payload("UT", cfg.n, cfg.p, G.J.elements, J_dec, ambient="J")
        else:
            payload = sio.orbit_payload("UT", cfg.n, cfg.p, G.elements, G_dec)
    else:
        G = triangular(cfg.n, cfg.p, cfg.max_order)
        dec = superclasses_triangular(cfg.n, cfg.p, cfg.max_order, group=G)
        payload = sio.orbit_payload("T", cfg.n, cfg.p, G.elements, dec)
    _emit(cfg, payload, csv_ok=False)
    return EXIT_OK


def cmd_hopf(cfg: RunConfig) -> int:
    from . import hopf

    alg = hopf.algebra(cfg.extra.get("algebra", "ns"), cfg.extra.get("y", 1))
    action = cfg.extra["action"]
    if action == "verify":
        rep = hopf.hopf_axiom_suite(alg, cfg.extra.get("nmax", 3))
        payload = {"schema_version": sio.SCHEMA_VERSION, "algebra": str(alg), **rep.to_json()}
        _emit(cfg, payload, csv_ok=False)
        return EXIT_OK if rep.passed else EXIT_FAIL
    try:
        labels = [alg.parse(b) for b in cfg.extra.get("basis") or []]
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if action == "mult":
        if not labels:
            raise UsageError("mult needs at least one --basis")
        acc = {alg.unit_label(): 1}
        for lab in labels:
            acc = hopf.product(alg, acc, {lab: 1})
        terms = acc
    else:
        if len(labels) != 1:
            raise UsageError("coprod needs exactly one --basis")
        terms = hopf.coproduct(alg, {labels[0]: 1})
    _emit(cfg, sio.terms_payload(terms, algebra=str(alg), operation=action,
                                 inputs=[str(x) for x in labels]), csv_ok=False)
    return EXIT_OK


def cmd_acceptance(cfg: RunConfig) -> int:
    from .acceptance import run_all

    results = run_all(cfg.jobs)
    for r in results:
        print(r.line(), file=sys.stderr if cfg.out in (None, "-") and cfg.format == "json" else sys.stdout)
    payload = {"schema_version": sio.SCHEMA_VERSION, "passed": all(r.passed for r in results),
               "criteria": [r.to_json() for r in results]}
    _emit(cfg, payload, csv_ok=False)
    return EXIT_OK if payload["passed"] else EXIT_FAIL


COMMANDS = {
    "ut-table": cmd_ut_table,
    "t-table": cmd_t_table,
    "verify-theory": cmd_verify_theory,
    "orbits": cmd_orbits,
    "hopf": cmd_hopf,
    "acceptance": cmd_acceptance,
}


# -- argument parsing --------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--n", type=int, default=argparse.SUPPRESS, help="matrix size")
    common.add_argument("--p", type=int, default=argparse.SUPPRESS, help="prime field order")
    common.add_argument("--out", default=argparse.SUPPRESS, help="output file (default stdout)")
    common.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="worker processes")
    common.add_argument("--max-order", type=int, default=argparse.SUPPRESS, dest="max_order",
                        help="largest group order to enumerate")
    common.add_argument("--config", default=None, help="JSON file with defaults; flags override")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="superchar", description="Exact supercharacter theories and Hopf algebras.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in ("ut-table", "t-table"):
        sp = sub.add_parser(name, parents=[common], help=f"{name[:-6].upper()} supercharacter table")
        sp.add_argument("--verify-oracle", action="store_true", default=argparse.SUPPRESS, dest="verify_oracle")
        sp.add_argument("--verify-kirillov", action="store_true", default=argparse.SUPPRESS, dest="verify_kirillov")
        if name == "t-table":
            sp.add_argument("--uncorrected", action="store_true", default=argparse.SUPPRESS,
                            help="use the uncorrected (p-1) exponent in the value formula")
    sp = sub.add_parser("verify-theory", parents=[common], help="check a built-in supercharacter theory")
    sp.add_argument("--builtin", required=True)
    sp = sub.add_parser("orbits", parents=[common], help="superclass decomposition")
    sp.add_argument("--kind", choices=("ut", "t"), default="ut")
    sp.add_argument("--ambient", choices=("G", "J"), default="G")
    sp = sub.add_parser("hopf", parents=[common], help="NS / NPS operations")
    sp.add_argument("action", choices=("mult", "coprod", "verify"))
    sp.add_argument("--basis", action="append", default=[])
    sp.add_argument("--algebra", choices=("ns", "nps"), default="ns")
    sp.add_argument("--y", type=int, default=1, help="colour alphabet size for nps")
    sp.add_argument("--nmax", type=int, default=3)
    sub.add_parser("acceptance", parents=[common], help="run the acceptance suite")
    return parser


CONFIG_FIELDS = {"n", "p", "out", "format", "verify_oracle", "verify_kirillov", "jobs", "max_order"}


def make_config(ns: argparse.Namespace) -> RunConfig:
    values: dict[str, Any] = {}
    if ns.config:
        try:
            with open(ns.config, encoding="utf-8") as fh:
                values.update(json.load(fh))
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config: {exc}") from exc
    values.update({k: v for k, v in vars(ns).items() if k not in ("config", "verbose")})
    command = values.pop("command")
    known = {k: values.pop(k) for k in list(values) if k in CONFIG_FIELDS}
    cfg = RunConfig(command=command, **known, extra=values)
    try:
        cfg.validate()
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return cfg


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        logging.basicConfig(level=logging.DEBUG if ns.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        cfg = make_config(ns)
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"superchar: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GroupTooLarge as exc:
        print(f"superchar: size cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
