"""JSON family specs and domain reports.

Rationals always travel as strings (``"3/2"``, ``"0"``) so a JSON reader can
never round them through a float.  Every document carries
``"format_version": 1``.

Family spec::

    {
      "format_version": 1,
      "ambient": {"kind": "projective_space", "dim": 2},
      "boundary": [
        {"label": "Q1", "prime_degree": "2", "multiplier": "3/2"},
        {"label": "Q2", "prime_degree": "2", "multiplier": "3/2"}
      ],
      "anchors": [                                   # optional
        {"point": ["1/3", "2/3"], "certificate": {"kind": "LcCalabiYau", "payload": {}}}
      ]
    }
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Any, Mapping, Sequence

from .certify import Anchor, Certificate, CertificateKind, Verdict
from .invariants import Boundary, beta_form, mu_value
from .model import (
    AffineForm,
    AmbientKind,
    BoundaryEntry,
    PairFamily,
    default_names,
    make_projective_space,
    make_quadric,
)
from .polytope import Polytope

FORMAT_VERSION = 1

_RATIONAL = re.compile(r"^\s*-?\d+(\s*/\s*\d+)?\s*$")
_RATIONAL_KEYS = {"lambda", "bound", "r", "infinity_coefficient", "base_coefficient"}
_INT_KEYS = {"index", "n", "dim", "theorem", "quadric_index", "other_index"}


class SpecError(ValueError):
    """Malformed input document."""


def parse_rational(value: Any, where: str = "value") -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise SpecError(f"{where}: {value!r} is not an exact rational; write it as a 'p/q' string")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str) or not _RATIONAL.match(value):
        raise SpecError(f"{where}: malformed rational {value!r}")
    try:
        return Fraction(value.replace(" ", ""))
    except ZeroDivisionError as exc:
        raise SpecError(f"{where}: zero denominator in {value!r}") from exc


def parse_point(values: Any, k: int, where: str = "point") -> tuple[Fraction, ...]:
    if isinstance(values, str):
        values = [v for v in values.split(",") if v.strip()] if values.strip() else []
    if not isinstance(values, (list, tuple)):
        raise SpecError(f"{where}: expected a list of rationals")
    point = tuple(parse_rational(v, where) for v in values)
    if len(point) != k:
        raise SpecError(f"{where}: expected {k} coordinates, got {len(point)}")
    return point


def fmt(x: Fraction) -> str:
    return str(x)


def _check_version(doc: Mapping[str, Any]) -> None:
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise SpecError(f"unsupported format_version {version!r}; expected {FORMAT_VERSION}")


def parse_family_spec(doc: Any) -> tuple[PairFamily, list[Anchor]]:
    if not isinstance(doc, Mapping):
        raise SpecError("spec must be a JSON object")
    _check_version(doc)
    try:
        ambient_doc = doc["ambient"]
        kind = ambient_doc["kind"]
        dim = ambient_doc["dim"]
    except (KeyError, TypeError) as exc:
        raise SpecError(f"ambient: missing field {exc}") from exc
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise SpecError(f"ambient.dim must be an integer, got {dim!r}")
    try:
        if kind == AmbientKind.PROJECTIVE_SPACE.value:
            ambient = make_projective_space(dim)
        elif kind == AmbientKind.QUADRIC.value:
            ambient = make_quadric(dim)
        else:
            raise SpecError(f"ambient.kind must be 'projective_space' or 'quadric', got {kind!r}")
    except SpecError:
        raise
    except ValueError as exc:
        raise SpecError(f"ambient: {exc}") from exc

    entries = []
    for pos, item in enumerate(doc.get("boundary", [])):
        where = f"boundary[{pos}]"
        if not isinstance(item, Mapping):
            raise SpecError(f"{where}: expected an object")
        try:
            label = item["label"]
            degree = parse_rational(item["prime_degree"], f"{where}.prime_degree")
            mult = parse_rational(item.get("multiplier", "1"), f"{where}.multiplier")
        except KeyError as exc:
            raise SpecError(f"{where}: missing field {exc}") from exc
        if not isinstance(label, str) or not label:
            raise SpecError(f"{where}.label must be a non-empty string")
        try:
            entries.append(BoundaryEntry(label, degree, mult))
        except ValueError as exc:
            raise SpecError(f"{where}: {exc}") from exc
    try:
        family = PairFamily(ambient, tuple(entries))
    except ValueError as exc:
        raise SpecError(str(exc)) from exc

    anchors = [anchor_from_json(a, family.k, f"anchors[{i}]") for i, a in enumerate(doc.get("anchors", []))]
    return family, anchors


def family_to_spec(family: PairFamily, anchors: Sequence[Anchor] = ()) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "format_version": FORMAT_VERSION,
        "ambient": {"kind": family.ambient.kind.value, "dim": family.n},
        "boundary": [
            {"label": b.label, "prime_degree": fmt(b.prime_degree), "multiplier": fmt(b.multiplier)}
            for b in family.boundary
        ],
    }
    if anchors:
        doc["anchors"] = [anchor_to_json(a) for a in anchors]
    return doc


def _encode(value: Any) -> Any:
    if isinstance(value, Anchor):
        return anchor_to_json(value)
    if isinstance(value, Fraction):
        return fmt(value)
    if isinstance(value, (list, tuple)):
        return [_encode(v) for v in value]
    if isinstance(value, Mapping):
        return {key: _encode(v) for key, v in value.items()}
    return value


def anchor_to_json(anchor: Anchor) -> dict[str, Any]:
    cert = anchor.certificate
    out: dict[str, Any] = {
        "point": [fmt(x) for x in anchor.point],
        "certificate": {"kind": cert.kind.value, "payload": _encode(dict(cert.payload))},
    }
    if cert.axioms:
        out["certificate"]["axioms"] = list(cert.axioms)
    if cert.notes:
        out["certificate"]["notes"] = list(cert.notes)
    return out


def anchor_from_json(doc: Any, k: int, where: str = "anchor") -> Anchor:
    if not isinstance(doc, Mapping):
        raise SpecError(f"{where}: expected an object")
    try:
        point = parse_point(doc["point"], k, f"{where}.point")
        cert_doc = doc["certificate"]
        kind = CertificateKind(cert_doc["kind"])
    except KeyError as exc:
        raise SpecError(f"{where}: missing field {exc}") from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, SpecError):
            raise
        raise SpecError(f"{where}: bad certificate kind") from exc
    payload_doc = cert_doc.get("payload", {})
    if not isinstance(payload_doc, Mapping):
        raise SpecError(f"{where}.certificate.payload must be an object")
    payload: dict[str, Any] = {}
    for key, value in payload_doc.items():
        w = f"{where}.certificate.payload.{key}"
        if key in _RATIONAL_KEYS:
            payload[key] = parse_rational(value, w)
        elif key in _INT_KEYS:
            if not isinstance(value, int) or isinstance(value, bool):
                raise SpecError(f"{w}: expected an integer")
            payload[key] = value
        elif key == "weights":
            payload[key] = [parse_rational(v, w) for v in value]
        elif key == "anchors":
            payload[key] = [anchor_from_json(a, k, f"{w}[{i}]") for i, a in enumerate(value)]
        else:
            payload[key] = value
    cert = Certificate(
        kind,
        payload,
        tuple(cert_doc.get("axioms", ())),
        tuple(cert_doc.get("notes", ())),
    )
    return Anchor(point, cert)


# -- reports -----------------------------------------------------------------


def form_to_json(form: AffineForm, names: Sequence[str] | None = None) -> dict[str, Any]:
    return {
        "constant": fmt(form.constant),
        "coeffs": [fmt(a) for a in form.coeffs],
        "text": form.render(names),
    }


def polytope_vrep(P: Polytope) -> list[list[str]]:
    return [[fmt(x) for x in v] for v in P.vrep]


def domain_report(family: PairFamily, necessary: Polytope) -> dict[str, Any]:
    names = default_names(family.k)
    return {
        "format_version": FORMAT_VERSION,
        "family": family_to_spec(family),
        "coordinates": dict(zip(names, (b.label for b in family.boundary))),
        "beta_forms": [
            {"divisor": b.label, **form_to_json(beta_form(family, Boundary(i)), names)}
            for i, b in enumerate(family.boundary)
        ],
        "necessary": {
            "hrep": [form_to_json(h.form, names) for h in necessary.hrep],
            "vrep": polytope_vrep(necessary),
        },
        "mu_necessary": None if necessary.is_empty else fmt(mu_value(necessary)),
    }


def certify_report(family: PairFamily, verdict: Verdict) -> dict[str, Any]:
    report = domain_report(family, verdict.necessary)
    report["certified"] = {
        "vrep": polytope_vrep(verdict.certified),
        "certificates": [anchor_to_json(a) for a in verdict.anchors],
        "axioms": list(verdict.axioms),
    }
    report["verdict"] = verdict.status.value
    report["mu"] = fmt(mu_value(verdict.certified)) if verdict.determined else None
    return report
