"""Command-line front end.

Exit codes: 0 success (a Gap verdict included), 2 unreadable or malformed
input, 3 a computation's precondition failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any

import yaml

from .certify import CertificationError, certify_domain
from .invariants import Boundary, External, beta_form, mu_value, s_invariant_form, s_invariant_numeric
from .model import NonPseudoEffectiveError, default_names, level
from .plot import render_svg, render_tikz
from .polytope import UnboundedRegionError, necessary_region
from .serialize import (
    FORMAT_VERSION,
    SpecError,
    certify_report,
    domain_report,
    fmt,
    form_to_json,
    parse_family_spec,
    parse_point,
    parse_rational,
)

EXIT_OK, EXIT_PARSE, EXIT_CONTRACT = 0, 2, 3


class ContractError(Exception):
    pass


def load_spec(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: invalid JSON ({exc})") from exc
    return parse_family_spec(doc)


def parse_divisor(family, text: str):
    if text.startswith("external:"):
        return External(parse_rational(text.split(":", 1)[1], "external degree"))
    try:
        return Boundary(family.index(text))
    except KeyError as exc:
        raise SpecError(f"unknown divisor label {text!r}") from exc


def emit(doc: dict[str, Any], as_json: bool) -> str:
    if as_json:
        return json.dumps(doc, indent=2) + "\n"
    return yaml.safe_dump(doc, sort_keys=False, allow_unicode=True, width=1000)


def cmd_beta(args) -> str:
    family, _ = load_spec(args.spec)
    E = parse_divisor(family, args.divisor)
    form = beta_form(family, E)
    names = default_names(family.k)
    value = None
    if args.at is not None:
        value = form(parse_point(args.at, family.k, "--at"))
    if args.json:
        doc = {"format_version": FORMAT_VERSION, "divisor": args.divisor, **form_to_json(form, names)}
        if value is not None:
            doc["value"] = fmt(value)
        return emit(doc, True)
    return f"{fmt(value) if value is not None else form.render(names)}\n"


def cmd_domain(args) -> str:
    family, _ = load_spec(args.spec)
    if family.k < 1:
        raise ContractError("domain needs at least one boundary divisor")
    return emit(domain_report(family, necessary_region(family)), args.json)


def cmd_certify(args) -> str:
    family, anchors = load_spec(args.spec)
    if family.k < 1:
        raise ContractError("certify needs at least one boundary divisor")
    return emit(certify_report(family, certify_domain(family, anchors)), args.json)


def cmd_mu(args) -> str:
    family, anchors = load_spec(args.spec)
    if family.k < 1:
        raise ContractError("mu needs at least one boundary divisor")
    verdict = certify_domain(family, anchors)
    if verdict.necessary.is_empty:
        raise ContractError("the necessary region is empty; mu is undefined")
    lower = mu_value(verdict.necessary)
    upper = mu_value(verdict.certified) if not verdict.certified.is_empty else None
    if args.json:
        doc = {
            "format_version": FORMAT_VERSION,
            "verdict": verdict.status.value,
            "mu": fmt(lower) if verdict.determined else None,
            "mu_lower": fmt(lower),
            "mu_upper": None if upper is None else fmt(upper),
        }
        return emit(doc, True)
    if verdict.determined:
        return f"{fmt(lower)}\n"
    return f"gap: mu in [{fmt(lower)}, {'?' if upper is None else fmt(upper)}]\n"


def cmd_oracle(args) -> str:
    family, _ = load_spec(args.spec)
    E = parse_divisor(family, args.divisor)
    point = parse_point(args.at, family.k, "--at") if args.at is not None else (Fraction(0),) * family.k
    if args.subdivisions < 2:
        raise SpecError("--subdivisions must be at least 2")
    if level(family, point) < 0:
        raise ContractError(f"point {args.at} has negative level")
    exact = s_invariant_form(family, E)(point)
    numeric = s_invariant_numeric(family, point, E, args.subdivisions)
    diff = abs(numeric - float(exact))
    if args.json:
        doc = {
            "format_version": FORMAT_VERSION,
            "exact": fmt(exact),
            "numeric": f"{numeric:.12g}",
            "diff": f"{diff:.3e}",
        }
        return emit(doc, True)
    return f"exact {fmt(exact)}, numeric {numeric:.9f}, diff {diff:.3e}\n"


def cmd_plot(args) -> str:
    family, _ = load_spec(args.spec)
    if family.k != 2:
        raise ContractError(f"plot needs exactly 2 boundary divisors (got {family.k}); use 'domain' instead")
    region = necessary_region(family)
    render = render_svg if args.format == "svg" else render_tikz
    text = render(family, region, shade_excluded=args.shade_excluded)
    if args.out:
        Path(args.out).write_text(text)
        return ""
    return text


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kssdomain",
        description="Exact beta invariants and K-semistable domains of hypersurface pairs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("beta", help="print the beta invariant of a divisor as an affine form")
    p.add_argument("spec")
    p.add_argument("divisor", help="boundary label or 'external:<degree>'")
    p.add_argument("--at", help="comma-separated coefficient point to evaluate at")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_beta)

    for name, func, text in (
        ("domain", cmd_domain, "necessary region from the beta half-spaces"),
        ("certify", cmd_certify, "necessary region, certified anchors and verdict"),
        ("mu", cmd_mu, "minimum of sum(c) over the K-semistable domain"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("spec")
        p.add_argument("--json", action="store_true")
        p.set_defaults(func=func)

    p = sub.add_parser("oracle", help="compare the exact S-invariant with quadrature")
    p.add_argument("spec")
    p.add_argument("divisor")
    p.add_argument("--at")
    p.add_argument("--subdivisions", type=int, default=10_000)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("plot", help="draw a two-coordinate domain as SVG or TikZ")
    p.add_argument("spec")
    p.add_argument("--format", choices=("svg", "tikz"), default="svg")
    p.add_argument("--out")
    p.add_argument("--shade-excluded", action="store_true", help="shade box points removed by beta")
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        out = args.func(args)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (
        ContractError,
        CertificationError,
        NonPseudoEffectiveError,
        UnboundedRegionError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    sys.stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
