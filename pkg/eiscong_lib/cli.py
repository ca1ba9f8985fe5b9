# --- eiscong_lib/cli.py ---
"""
eiscong_lib/cli.py: Argument parsing and command dispatch for eiscong.py.

Results go to stdout as deterministic JSON (or rich tables with
--format text); logs go to stderr. Exit codes: 0 success, 1 domain error,
2 usage error.
"""
import argparse
import io
import json
import logging
import math

from rich.console import Console
from rich.table import Table
from sympy import primerange

from core.log_utils import setup_logging

from . import schema
from .bernoulli import bernoulli_char
from .config import ConfigService
from .criteria import (
    decide_level_raise,
    decide_strong_modularity,
    eta_character,
    scan_level_raise,
    verify_cuspidality,
)
from .dirichlet import from_file, from_shorthand, gauss_sum
from .eisenstein import (
    CuspMatrix,
    Variant,
    combo_cusp_constant,
    cusp_constant,
    eis_qexp,
    hecke_eigenvalue,
    level_raise_combo,
    reduce_qexp,
)
from .errors import DomainError
from .oracle import oracle_cusp_constant, oracle_lattice_2d, run_battery
from .reduction import place_above, place_extending, reduce_at

log = logging.getLogger("eiscong.cli")

CHAR_HELP = "Character: trivial, quad:Q or gen:Q:E:O[:E:O...]."


def _gamma_type(text: str) -> tuple[int, int, int, int]:
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(f"expected u,beta,v,delta, got '{text}'")
    try:
        return tuple(int(x) for x in parts)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def _add_char_arg(p: argparse.ArgumentParser, name: str):
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument(f"--{name}", help=CHAR_HELP)
    group.add_argument(f"--{name}-file", metavar="FILE", help="Character as a JSON file.")


def _add_pair_args(p: argparse.ArgumentParser, with_ell: bool = False):
    _add_char_arg(p, "char1")
    _add_char_arg(p, "char2")
    p.add_argument("--k", required=True, type=int, help="Weight k >= 2.")
    if with_ell:
        p.add_argument("--ell", required=True, type=int, help="The prime ell.")


def build_parser() -> argparse.ArgumentParser:
    """Configures the command-line interface."""
    p = argparse.ArgumentParser(
        prog="eiscong",
        description="Eisenstein congruences: exact Bernoulli numbers, cusp constants and "
        "modularity criteria for reducible mod-ell representations.",
    )
    p.add_argument(
        "--config", metavar="FILE", help="Config file (default ~/.eiscong/eiscong.cfg)."
    )
    p.add_argument(
        "--format",
        choices=["json", "text"],
        default="json",
        help="Output format (default: json).",
    )
    g_log = p.add_argument_group("Logging & Output")
    g_log.add_argument("-v", "--verbose", action="store_true", help="Enable INFO logging.")
    g_log.add_argument("--color-logs", action="store_true", help="Enable colored logging.")
    g_log.add_argument("--log-file", metavar="FILE", help="Redirect log output to a file.")
    g_log.add_argument(
        "-d",
        "--debug",
        nargs="?",
        const="all",
        dest="debug_topics",
        metavar="TOPICS",
        help="Enable DEBUG logging "
        "(all,arith,chars,bern,reduce,eis,criteria,oracle,cli,config).",
    )

    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("bernoulli", help="Generalized Bernoulli number B_{k,chi}.")
    s.add_argument("--k", required=True, type=int)
    _add_char_arg(s, "char")

    s = sub.add_parser("gauss", help="Gauss sum of a primitive character.")
    _add_char_arg(s, "char")

    eis = sub.add_parser("eis", help="Eisenstein series.")
    eis_sub = eis.add_subparsers(dest="eis_command", required=True)
    s = eis_sub.add_parser("qexp", help="q-expansion of E_k^{chi1,chi2}.")
    _add_pair_args(s)
    s.add_argument("--precision", type=int, help="Index of the last coefficient.")
    s.add_argument("--ell", type=int, help="Reduce the expansion at place_above(ell, n).")
    s = eis_sub.add_parser("cusp-constant", help="Exact constant term at a cusp.")
    _add_pair_args(s)
    s.add_argument("--gamma", required=True, type=_gamma_type, help="u,beta,v,delta")
    s.add_argument(
        "--M", type=int, default=1, help="alpha_M for E; the raising prime for F1 and F2."
    )
    s.add_argument("--variant", choices=[v.value for v in Variant], default="E")
    s = eis_sub.add_parser("combo", help="q-expansion of F1 or F2.")
    _add_pair_args(s)
    s.add_argument("--M", type=int, required=True)
    s.add_argument("--variant", choices=["F1", "F2"], required=True)
    s.add_argument("--precision", type=int)
    s = eis_sub.add_parser("eigenvalues", help="Reduced Hecke eigenvalues a_p for p <= bound.")
    _add_pair_args(s, with_ell=True)
    s.add_argument("--bound", type=int, default=50)

    decide = sub.add_parser("decide", help="Modularity criteria.")
    decide_sub = decide.add_subparsers(dest="decide_command", required=True)
    _add_pair_args(decide_sub.add_parser("strong-modularity"), with_ell=True)
    s = decide_sub.add_parser("level-raise")
    _add_pair_args(s, with_ell=True)
    s.add_argument("--M", type=int, required=True)

    scan = sub.add_parser("scan", help="Search for level-raising primes.")
    scan_sub = scan.add_subparsers(dest="scan_command", required=True)
    s = scan_sub.add_parser("level-raise")
    _add_pair_args(s, with_ell=True)
    s.add_argument("--bound", type=int, required=True)

    verify = sub.add_parser("verify", help="Cross-checks.")
    verify_sub = verify.add_subparsers(dest="verify_command", required=True)
    s = verify_sub.add_parser("cusp-constants", help="Seeded exact-versus-oracle battery.")
    s.add_argument("--battery", choices=["default"], default="default")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--cases", type=int, default=20)
    s = verify_sub.add_parser("oracles", help="Compare one cusp constant with both oracles.")
    _add_pair_args(s)
    s.add_argument("--gamma", required=True, type=_gamma_type, help="u,beta,v,delta")
    s.add_argument("--M", type=int, default=1)
    s = verify_sub.add_parser("cuspidality", help="Reduce constant terms at every cusp.")
    _add_pair_args(s, with_ell=True)
    s.add_argument("--M", type=int, default=1)
    s.add_argument("--variant", choices=[v.value for v in Variant], default="E")

    s = sub.add_parser("schema", help="Print the JSON Schemas of every payload.")
    s.add_argument("--out", metavar="DIR", help="Also write one <kind>.json file per payload.")
    return p


class Application:
    """Runs one parsed command and renders its result."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.config = ConfigService(args.config)

    def run(self) -> tuple[int, str]:
        setup_logging(
            project_name="eiscong",
            level=logging.INFO if self.args.verbose else logging.WARNING,
            color_logs=self.args.color_logs,
            debug_topics=self.args.debug_topics,
            log_file=self.args.log_file,
        )
        log.debug("Arguments received: %s", vars(self.args))
        try:
            kind, payload = self._dispatch()
            if kind in schema.PAYLOADS:
                payload = schema.validate(kind, payload)
        except DomainError as e:
            log.error("%s", e)
            return 1, schema.dumps(schema.validate("error", e.to_dict())) + "\n"
        except Exception as e:
            log.critical("An unexpected error occurred: %s", e, exc_info=True)
            return 1, schema.dumps({"error": "internal", "detail": str(e)}) + "\n"
        if self.args.format == "text":
            return 0, render_text(kind, payload)
        return 0, schema.dumps(payload) + "\n"

    def _dispatch(self) -> tuple[str, dict]:
        a = self.args
        # Parsed here rather than by argparse: failures exit 1 with an error code
        for name in ("char", "char1", "char2"):
            if getattr(a, f"{name}_file", None):
                setattr(a, name, from_file(getattr(a, f"{name}_file")))
            elif isinstance(getattr(a, name, None), str):
                setattr(a, name, from_shorthand(getattr(a, name)))
        if isinstance(getattr(a, "gamma", None), tuple):
            a.gamma = CuspMatrix(*a.gamma)
        if a.command == "bernoulli":
            value = bernoulli_char(a.k, a.char)
            character = a.char.to_json()
            return "bernoulli", {"k": a.k, "character": character, "value": value.to_json()}
        if a.command == "gauss":
            value = gauss_sum(a.char)
            return "gauss", {"character": a.char.to_json(), "value": value.to_json()}
        if a.command == "schema":
            if a.out:
                schema.write_schemas(a.out)
            return "schema", schema.json_schemas()
        action = getattr(a, f"{a.command}_command").replace("-", "_")
        return getattr(self, f"_{a.command}_{action}")()

    def _precision(self) -> int:
        if self.args.precision is not None:
            return self.args.precision
        return self.config.get_precision()

    # --- eis ---
    def _eis_qexp(self):
        a = self.args
        series = eis_qexp(a.char1, a.char2, a.k, self._precision())
        if a.ell is None:
            return "qexpansion", series.to_json()
        place = place_above(a.ell, series.coeffs[0].order)
        log.info("Reducing at %s", place)
        return "reduced-qexpansion", reduce_qexp(series, place).to_json()

    def _eis_cusp_constant(self):
        a = self.args
        if a.variant == Variant.E.value:
            # E itself: alpha_M E at gamma
            value = cusp_constant(a.char1, a.char2, a.k, a.gamma, a.M)
        else:
            value = combo_cusp_constant(a.char1, a.char2, a.k, a.gamma, a.M, a.variant)
        return "cusp-constant", {
            "k": a.k,
            "M": a.M,
            "variant": a.variant,
            "gamma": a.gamma.to_json(),
            "value": value.to_json(),
        }

    def _eis_combo(self):
        a = self.args
        series = level_raise_combo(a.char1, a.char2, a.k, a.M, a.variant, self._precision())
        return "qexpansion", series.to_json()

    def _eis_eigenvalues(self):
        a = self.args
        psi = eta_character(a.char1, a.char2)
        order = math.lcm(a.char1.order, a.char2.order)
        place = place_extending(place_above(a.ell, psi.order), order)
        eigenvalues = {
            str(p): reduce_at(hecke_eigenvalue(a.char1, a.char2, a.k, p), place).to_json()
            for p in primerange(2, a.bound + 1)
            if p != a.ell
        }
        return "eigenvalues", {"place": place.to_json(), "eigenvalues": eigenvalues}

    # --- decide / scan ---
    def _decide_strong_modularity(self):
        a = self.args
        return "decision", decide_strong_modularity(a.char1, a.char2, a.k, a.ell).to_json()

    def _decide_level_raise(self):
        a = self.args
        return "decision", decide_level_raise(a.char1, a.char2, a.k, a.ell, a.M).to_json()

    def _scan_level_raise(self):
        a = self.args
        primes = scan_level_raise(
            a.char1, a.char2, a.k, a.ell, a.bound, threads=self.config.get_threads()
        )
        place = place_above(a.ell, eta_character(a.char1, a.char2).order)
        return "scan", {"place": place.to_json(), "bound": a.bound, "primes": primes}

    # --- verify ---
    def _verify_cusp_constants(self):
        a = self.args
        cfg = self.config.get_oracle_config()
        report = run_battery(a.seed, cfg, a.cases, self.config.get_threads())
        return "battery", report.to_json()

    def _verify_oracles(self):
        a = self.args
        cfg = self.config.get_oracle_config()
        exact = cusp_constant(a.char1, a.char2, a.k, a.gamma, a.M).embed()
        rows = [
            _oracle_row(
                "one-dimensional",
                exact,
                oracle_cusp_constant(a.char1, a.char2, a.k, a.gamma, a.M, cfg),
                cfg.tolerance,
            )
        ]
        if a.k >= 3:
            rows.append(
                _oracle_row(
                    "lattice-2d",
                    exact,
                    oracle_lattice_2d(a.char1, a.char2, a.k, a.gamma, a.M, cfg),
                    1e-4,
                )
            )
        return "battery", {"seed": 0, "passed": all(r["passed"] for r in rows), "rows": rows}

    def _verify_cuspidality(self):
        a = self.args
        M = a.M if a.variant != "E" else 1
        cuspidal = verify_cuspidality(a.char1, a.char2, a.k, a.ell, M, a.variant)
        place = place_above(a.ell, eta_character(a.char1, a.char2).order)
        return "verify", {
            "variant": a.variant,
            "M": M,
            "place": place.to_json(),
            "cuspidal": cuspidal,
        }


def _oracle_row(name: str, exact: complex, approx: complex, tolerance: float) -> dict:
    gap = abs(exact - approx)
    failures = [] if gap < tolerance else [f"exact={exact:.10g} oracle={approx:.10g}"]
    return {
        "name": name,
        "cases": 1,
        "max_gap": gap,
        "tolerance": tolerance,
        "passed": not failures,
        "failures": failures,
    }


def render_text(kind: str, payload: dict) -> str:
    """Renders a payload as rich tables, without colour, for terminals and logs."""
    buf = io.StringIO()
    console = Console(file=buf, width=100, color_system=None, force_terminal=False)
    if kind == "battery":
        table = Table(title=f"Oracle battery (seed {payload['seed']})")
        for col in ("check", "cases", "max gap", "tolerance", "result"):
            table.add_column(col)
        for row in payload["rows"]:
            table.add_row(
                row["name"],
                str(row["cases"]),
                f"{row['max_gap']:.3e}",
                f"{row['tolerance']:.1e}",
                "pass" if row["passed"] else "FAIL",
            )
        console.print(table)
        for row in payload["rows"]:
            for failure in row["failures"]:
                console.print(f"{row['name']}: {failure}")
    else:
        table = Table(title=kind)
        table.add_column("field")
        table.add_column("value", overflow="fold")
        for key in sorted(payload):
            value = payload[key]
            text = value if isinstance(value, str) else json.dumps(value, sort_keys=True)
            table.add_row(key, text)
        console.print(table)
    return buf.getvalue()


def cmd_dispatch(argv: list[str]) -> tuple[int, str]:
    """Parses argv and runs the command; returns (exit code, stdout text)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse has already printed usage to stderr (or help to stdout)
        return (2 if e.code else 0), ""
    return Application(args).run()
