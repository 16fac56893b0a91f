"""Command-line front end: every operation with JSON in and JSON out.

stdout carries exactly one JSON report ``{"ok": ..., "result": ..., "error": ...}``;
logs go to stderr.  Exit codes: 0 ok, 1 domain error or failed check, 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from . import cohomo, finab, glred, lieverify, reductive, rootdata, torusconn
from .codec import parse_rational
from .config import get_settings
from .errors import ConfigError, InvDModError, MalformedInput

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1
EXIT_MALFORMED = 2


@dataclass
class Report:
    ok: bool
    result: Any = None
    error: Optional[Dict[str, str]] = None

    def to_json(self) -> Dict[str, Any]:
        return {"ok": self.ok, "result": self.result, "error": self.error}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise MalformedInput(f"{self.prog}: {message}")


def _load_json(path: str) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc.strerror}") from exc
    except UnicodeDecodeError as exc:
        raise MalformedInput(f"{path} is not UTF-8: {exc.reason}", f"byte {exc.start}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path} is not valid JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from exc


def _center(args: argparse.Namespace) -> Tuple[bool, Any]:
    factors = [rootdata.parse_cartan_type(text) for text in args.types]
    return True, rootdata.center_of_sc(factors).to_json()


def _classify(args: argparse.Namespace) -> Tuple[bool, Any]:
    group = rootdata.SemisimpleGroup.from_json(_load_json(args.group))
    classes = finab.classify_semisimple(group, args.rank)
    return True, {
        "group": group.to_json(),
        "rank": args.rank,
        "count": len(classes),
        "classes": [c.to_json() for c in classes],
    }


def _equiv(args: argparse.Namespace) -> Tuple[bool, Any]:
    a = torusconn.ConstantTorusConnection.from_json(_load_json(args.a))
    b = torusconn.ConstantTorusConnection.from_json(_load_json(args.b))
    verdict = torusconn.equivalent(a, b)
    return True, {"equivalent": "undecided" if verdict is None else verdict}


def _glr_equiv(args: argparse.Namespace) -> Tuple[bool, Any]:
    a = glred.GlrConnectionSpec.from_json(_load_json(args.a))
    b = glred.GlrConnectionSpec.from_json(_load_json(args.b))
    return True, {
        "equivalent": glred.glr_equivalent(a, b),
        "reduced": [torusconn.monodromy_class(glred.reduce_to_gm(s)).to_json() for s in (a, b)],
    }


def _cohomology(args: argparse.Namespace) -> Tuple[bool, Any]:
    group = rootdata.SemisimpleGroup.from_json(_load_json(args.group))
    rep = finab.RepClass.from_json(_load_json(args.rep))
    polynomial = cohomo.poincare(group)
    degrees = range(polynomial.degree + 1)
    return True, {
        "poincare": list(polynomial.coefficients),
        "invariants_dim": finab.invariants_dim(rep),
        "dmod_betti": [cohomo.dmod_betti(group, rep, i) for i in degrees],
        "local_system_betti": [cohomo.local_system_betti(group, rep, i) for i in degrees],
        "monodromy": cohomo.monodromy_factors_through(group, rep).to_json(),
    }


def _tensor(args: argparse.Namespace) -> Tuple[bool, Any]:
    a, b = _load_json(args.a), _load_json(args.b)
    if isinstance(a, dict) and "torus_part" in a:
        return True, reductive.tensor_classes(
            reductive.ReductiveClass.from_json(a), reductive.ReductiveClass.from_json(b)
        ).to_json()
    if isinstance(a, dict) and "matrices" in a:
        first = torusconn.monodromy_class(torusconn.ConstantTorusConnection.from_json(a))
        second = torusconn.monodromy_class(torusconn.ConstantTorusConnection.from_json(b))
        return True, torusconn.tensor_monodromy(first, second).to_json()
    u, w = finab.RepClass.from_json(a), finab.RepClass.from_json(b)
    return True, {
        "tensor": finab.tensor(u, w).to_json(),
        "hom_dim": finab.hom_dim(u, w),
    }


def _mu_der(args: argparse.Namespace) -> Tuple[bool, Any]:
    payload = _load_json(args.class_file)
    if not isinstance(payload, dict):
        raise MalformedInput("expected a JSON object", "$")
    group = reductive.ReductiveProductGroup.from_json(payload)
    if "class" not in payload:
        raise MalformedInput("missing key 'class'", "$")
    c = reductive.ReductiveClass.from_json(payload["class"], "$.class")
    reductive.validate_class(group, c)
    return True, {
        "mu_der": reductive.mu_der(c).to_json(),
        "in_ab_image": reductive.in_ab_image(c),
    }


def _verify_mc(args: argparse.Namespace) -> Tuple[bool, Any]:
    report = lieverify.maurer_cartan_check(args.r)
    return report.ok, report.to_json()


def _verify_tracedet(args: argparse.Namespace) -> Tuple[bool, Any]:
    report = lieverify.trace_dlogdet_check(args.r)
    return report.ok, report.to_json()


def _verify_gauge(args: argparse.Namespace) -> Tuple[bool, Any]:
    x = torusconn.LaurentMatrix.from_json(_load_json(args.x), "$")
    alpha = torusconn.ConstantTorusConnection.from_json(_load_json(args.alpha))
    beta = torusconn.ConstantTorusConnection.from_json(_load_json(args.beta))
    report = torusconn.verify_gauge(x, alpha, beta)
    return report.ok, report.to_json()


def _verify_liehom(args: argparse.Namespace) -> Tuple[bool, Any]:
    algebra = lieverify.builtin(args.algebra)
    rep = lieverify.LinearRep.from_json(_load_json(args.rep))
    if len(rep.matrices) != algebra.dim:
        raise MalformedInput(
            f"expected {algebra.dim} matrices for {algebra.name}, got {len(rep.matrices)}", "$.matrices"
        )
    report = lieverify.is_lie_hom(algebra, rep)
    return report.ok, report.to_json()


def _degrees(args: argparse.Namespace) -> Tuple[bool, Any]:
    t = rootdata.parse_cartan_type(args.type)
    data = cohomo.weyl_degrees(t).to_json()
    data["exponents"] = list(cohomo.exponents(t))
    data["coxeter_number"] = cohomo.coxeter_number(t)
    data["weyl_group_order"] = cohomo.weyl_group_order(t)
    return True, data


def _poincare(args: argparse.Namespace) -> Tuple[bool, Any]:
    payload = _load_json(args.group)
    if isinstance(payload, dict) and "ss" in payload:
        group = reductive.ReductiveProductGroup.from_json(payload)
        return True, reductive.reductive_poincare(group).to_json()
    semisimple = rootdata.SemisimpleGroup.from_json(payload)
    data = cohomo.poincare(semisimple).to_json()
    data["dimension"] = cohomo.group_dimension(semisimple)
    return True, data


def _classify_glr(args: argparse.Namespace) -> Tuple[bool, Any]:
    labels = None
    if args.labels is not None:
        labels = [
            parse_rational(text.strip(), f"--labels[{i}]")
            for i, text in enumerate(args.labels.split(","))
            if text.strip()
        ]
    return True, glred.classify_glr_statement(args.rank, labels).to_json()


def _parse_weight(text: str) -> List[int]:
    weight = []
    for i, token in enumerate(text.split(",")):
        try:
            weight.append(int(token.strip()))
        except ValueError as exc:
            raise MalformedInput(f"expected an integer, got {token.strip()!r}", f"--weight[{i}]") from exc
    return weight


def _descends(args: argparse.Namespace) -> Tuple[bool, Any]:
    group = rootdata.SemisimpleGroup.from_json(_load_json(args.group))
    weight = _parse_weight(args.weight)
    return True, {
        "weight": weight,
        "central_character": finab.central_character(group.factors, weight).to_json(),
        "descends": finab.descends(group, weight),
    }


def _monodromy(args: argparse.Namespace) -> Tuple[bool, Any]:
    connection = torusconn.ConstantTorusConnection.from_json(_load_json(args.a))
    flat = torusconn.check_flat(connection)
    if not flat.ok:
        return False, {"flat": flat.to_json()}
    return True, {"flat": flat.to_json(), "class": torusconn.monodromy_class(connection).to_json()}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="invdmod", description="Invariant D-modules on algebraic groups.")
    parser.add_argument("--verbose", action="store_true", help="Log at DEBUG level on stderr.")
    parser.add_argument("--indent", type=int, default=None, help="Pretty-print the JSON report.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("center", help="Center of the simply connected group.")
    p.add_argument("types", nargs="+", help="Cartan types such as A1 E6.")
    p.set_defaults(handler=_center)

    p = sub.add_parser("classify", help="Classes of rank N on a semisimple group.")
    p.add_argument("--group", required=True)
    p.add_argument("--rank", type=int, required=True)
    p.set_defaults(handler=_classify)

    for name, handler, help_text in (
        ("equiv", _equiv, "Equivalence of two torus connections."),
        ("glr-equiv", _glr_equiv, "Equivalence of two GL_r connections."),
        ("tensor", _tensor, "Tensor product of two classes."),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--a", required=True)
        p.add_argument("--b", required=True)
        p.set_defaults(handler=handler)

    p = sub.add_parser("cohomology", help="Betti numbers of the module of a Gamma-representation.")
    p.add_argument("--group", required=True)
    p.add_argument("--rep", required=True)
    p.set_defaults(handler=_cohomology)

    p = sub.add_parser("mu-der", help="Derived monodromy invariant of a reductive class.")
    p.add_argument("--class", dest="class_file", required=True)
    p.set_defaults(handler=_mu_der)

    verify = sub.add_parser("verify", help="Symbolic and exact checks.")
    checks = verify.add_subparsers(dest="check", parser_class=_Parser)
    checks.required = True
    p = checks.add_parser("mc", help="Maurer-Cartan equation on GL_r.")
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(handler=_verify_mc)
    p = checks.add_parser("tracedet", help="d(det)/det = tr(theta) on GL_r.")
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(handler=_verify_tracedet)
    p = checks.add_parser("gauge", help="Gauge equation for a Laurent matrix.")
    p.add_argument("--x", required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.set_defaults(handler=_verify_gauge)
    p = checks.add_parser("liehom", help="Lie algebra homomorphism check.")
    p.add_argument("--algebra", required=True)
    p.add_argument("--rep", required=True)
    p.set_defaults(handler=_verify_liehom)

    p = sub.add_parser("degrees", help="Fundamental degrees of a Weyl group.")
    p.add_argument("type")
    p.set_defaults(handler=_degrees)

    p = sub.add_parser("poincare", help="Poincare polynomial of a group.")
    p.add_argument("--group", required=True)
    p.set_defaults(handler=_poincare)

    p = sub.add_parser("classify-glr", help="Moduli of rank-N classes on GL_r.")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--labels", default=None, help="Comma-separated eigenvalue labels p/q.")
    p.set_defaults(handler=_classify_glr)

    p = sub.add_parser("descends", help="Whether an irreducible G^sc-module descends to G.")
    p.add_argument("--group", required=True)
    p.add_argument("--weight", required=True, help="Highest weight in fundamental-weight coordinates, e.g. 1,0.")
    p.set_defaults(handler=_descends)

    p = sub.add_parser("monodromy", help="Monodromy class of a torus connection.")
    p.add_argument("--a", required=True)
    p.set_defaults(handler=_monodromy)
    return parser


def _configure_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else get_settings().numeric_log_level
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def _error(exc: BaseException) -> Dict[str, str]:
    return {"type": type(exc).__name__, "message": str(exc)}


def _run(argv: Optional[Sequence[str]]) -> Tuple[int, Report, Optional[argparse.Namespace]]:
    args = None
    try:
        args = build_parser().parse_args(argv)
        _configure_logging(args.verbose)
        ok, result = args.handler(args)
    except (MalformedInput, ConfigError) as exc:
        return EXIT_MALFORMED, Report(False, error=_error(exc)), args
    except InvDModError as exc:
        return EXIT_DOMAIN_ERROR, Report(False, error=_error(exc)), args
    except RuntimeError as exc:
        logger.exception("internal error")
        return EXIT_DOMAIN_ERROR, Report(False, error=_error(exc)), args
    return (EXIT_OK if ok else EXIT_DOMAIN_ERROR), Report(ok, result), args


def run(argv: Optional[Sequence[str]] = None) -> Tuple[int, Report]:
    code, report, _ = _run(argv)
    return code, report


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, report, args = _run(sys.argv[1:] if argv is None else list(argv))
    indent = args.indent if args is not None else None
    print(json.dumps(report.to_json(), sort_keys=True, indent=indent))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
