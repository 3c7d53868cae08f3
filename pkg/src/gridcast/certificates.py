"""Certificate wire format (JSON, schema version 1) and its verifier.

A certificate carries a broadcast or a fractional weighting together with the
claim it is meant to support.  Verification never trusts the claim: cost and
feasibility are recomputed from the payload.

Layout::

    {
      "schema_version": 1,
      "graph": {"family": "pxp", "m": 4, "n": 6},
      "kind": "multipacking",
      "default": "0",                      # weight of vertices not in payload
      "default_strength": 2,               # fractional_broadcast only
      "payload": [{"row": 0, "col": 0, "value": "1/3"}, ...],
      "claim": {"direction": "lower", "bound": "6"},
      "provenance": "..."
    }

Broadcast payload values are integer strengths.  Fractional broadcast entries
also carry a "strength" of 1 or 2; a vertex may appear once per strength.
"""

from __future__ import annotations

import json
import math
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .broadcast import Broadcast, is_dominating
from .errors import GridcastError
from .grid import Family, GridGraph, Vertex, make_grid
from .multipack import (
    FractionalWeighting,
    WeightKind,
    is_feasible_fractional_broadcast,
    is_feasible_multipacking,
    mp_cost,
)

SCHEMA_VERSION = 1
KINDS = ("broadcast", "multipacking", "fractional_broadcast")
DIRECTIONS = ("upper", "lower", "lp_value")
# which claims each payload kind can back
SUPPORTED = {
    "broadcast": ("upper",),
    "multipacking": ("lower", "lp_value"),
    "fractional_broadcast": ("lp_value",),
}

_RATIONAL = re.compile(r"^(0|[1-9]\d*)(/([1-9]\d*))?$")


class CertificateError(GridcastError):
    """Malformed certificate: wrong schema, bad entry, unreduced rational."""


def format_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(text) -> Fraction:
    """Nonnegative "p" or "p/q" with q > 0 and gcd(p, q) = 1."""
    if not isinstance(text, str):
        raise CertificateError(f"rationals are serialized as strings, got {text!r}")
    hit = _RATIONAL.match(text)
    if not hit:
        raise CertificateError(f"not a nonnegative rational 'p/q': {text!r}")
    p = int(hit.group(1))
    q = int(hit.group(3) or 1)
    if hit.group(3) and (math.gcd(p, q) != 1 or q == 1):
        raise CertificateError(f"rational {text!r} is not in lowest terms")
    return Fraction(p, q)


@dataclass(frozen=True)
class Claim:
    direction: str
    bound: Fraction


@dataclass(frozen=True)
class Certificate:
    graph: GridGraph
    kind: str
    body: Union[Broadcast, FractionalWeighting]
    claim: Claim
    provenance: str = ""


@dataclass(frozen=True)
class Verdict:
    ok: bool
    message: str
    witness: Optional[tuple] = None


# ------------------------------------------------------------------ building

def broadcast_certificate(b: Broadcast, provenance: str, bound: Optional[int] = None) -> Certificate:
    return Certificate(b.graph, "broadcast", b, Claim("upper", Fraction(b.cost if bound is None else bound)), provenance)


def weighting_certificate(w: FractionalWeighting, direction: str, provenance: str,
                          bound: Optional[Fraction] = None) -> Certificate:
    kind = "multipacking" if w.kind is WeightKind.Multipacking else "fractional_broadcast"
    if bound is None:
        c = mp_cost(w)
        bound = Fraction(math.ceil(c)) if direction == "lower" else c
    return Certificate(w.graph, kind, w, Claim(direction, Fraction(bound)), provenance)


def _compact(g: GridGraph, weights: dict[Vertex, Fraction]) -> tuple[Fraction, list[tuple[Vertex, Fraction]]]:
    """Pick the most common weight as the default; list the rest row-major."""
    dense = [weights.get(v, Fraction(0)) for v in g.vertices()]
    common = Counter(dense).most_common()
    best = max(cnt for _, cnt in common)
    default = min(val for val, cnt in common if cnt == best)
    return default, [(v, x) for v, x in zip(g.vertices(), dense) if x != default]


def to_dict(cert: Certificate) -> dict:
    g = cert.graph
    out: dict = {
        "schema_version": SCHEMA_VERSION,
        "graph": {"family": g.family.value, "m": g.m, "n": g.n},
        "kind": cert.kind,
    }
    body = cert.body
    if cert.kind == "broadcast":
        out["payload"] = [{"row": v.row, "col": v.col, "value": s} for v, s in body.broadcasters()]
    elif cert.kind == "multipacking":
        default, rest = _compact(g, dict(body.weight))
        out["default"] = format_rational(default)
        out["payload"] = [{"row": v.row, "col": v.col, "value": format_rational(x)} for v, x in rest]
    else:
        x1, x2 = body.strength_parts()
        # uniform single-strength weightings compress to a default
        strength, part = (2, x2) if x2 else (1, x1)
        if x1 and x2:
            out["default"] = "0"
            entries = [(v, 1, x) for v, x in x1.items()] + [(v, 2, x) for v, x in x2.items()]
        else:
            default, rest = _compact(g, dict(part))
            out["default"] = format_rational(default)
            entries = [(v, strength, x) for v, x in rest]
        out["default_strength"] = strength
        entries.sort()
        out["payload"] = [
            {"row": v.row, "col": v.col, "strength": s, "value": format_rational(x)} for v, s, x in entries
        ]
    out["claim"] = {"direction": cert.claim.direction, "bound": format_rational(cert.claim.bound)}
    out["provenance"] = cert.provenance
    return out


def dumps(cert: Certificate) -> str:
    return json.dumps(to_dict(cert), indent=2) + "\n"


# ------------------------------------------------------------------- parsing

def _require(obj: dict, key: str, kind):
    if key not in obj:
        raise CertificateError(f"missing field {key!r}")
    val = obj[key]
    if not isinstance(val, kind) or isinstance(val, bool):
        raise CertificateError(f"field {key!r} has the wrong type")
    return val


def _cell(g: GridGraph, entry: dict) -> Vertex:
    if not isinstance(entry, dict):
        raise CertificateError(f"payload entries must be objects, got {entry!r}")
    v = Vertex(_require(entry, "row", int), _require(entry, "col", int))
    if v not in g:
        raise CertificateError(f"payload vertex {tuple(v)} lies outside {g.family.value} {g.m}x{g.n}")
    return v


def from_dict(data: dict) -> Certificate:
    if not isinstance(data, dict):
        raise CertificateError("a certificate is a JSON object")
    if data.get("schema_version") != SCHEMA_VERSION:
        raise CertificateError(f"unsupported schema_version {data.get('schema_version')!r}")
    gd = _require(data, "graph", dict)
    try:
        g = make_grid(Family.parse(_require(gd, "family", str)), _require(gd, "m", int), _require(gd, "n", int))
    except ValueError as exc:
        raise CertificateError(f"bad graph: {exc}") from exc
    kind = _require(data, "kind", str)
    if kind not in KINDS:
        raise CertificateError(f"unknown kind {kind!r}")
    payload = _require(data, "payload", list)

    body: Union[Broadcast, FractionalWeighting]
    if kind == "broadcast":
        strength: dict[Vertex, int] = {}
        for entry in payload:
            v = _cell(g, entry)
            s = _require(entry, "value", int)
            if s not in (0, 1, 2):
                raise CertificateError(f"strength at {tuple(v)} must be 0, 1 or 2, got {s}")
            if v in strength:
                raise CertificateError(f"vertex {tuple(v)} listed twice")
            strength[v] = s
        body = Broadcast(g, strength)
    else:
        default = parse_rational(data.get("default", "0"))
        if kind == "multipacking":
            dense = {v: default for v in g.vertices()}
            seen: set = set()
            for entry in payload:
                v = _cell(g, entry)
                if v in seen:
                    raise CertificateError(f"vertex {tuple(v)} listed twice")
                seen.add(v)
                dense[v] = parse_rational(_require(entry, "value", str))
            body = FractionalWeighting(g, dense)
        else:
            ds = data.get("default_strength", 2)
            if ds not in (1, 2):
                raise CertificateError(f"default_strength must be 1 or 2, got {ds!r}")
            parts: dict[int, dict[Vertex, Fraction]] = {1: {}, 2: {}}
            parts[ds] = {v: default for v in g.vertices()}
            seen_fb: set = set()
            for entry in payload:
                v = _cell(g, entry)
                s = _require(entry, "strength", int)
                if s not in (1, 2):
                    raise CertificateError(f"fractional strength at {tuple(v)} must be 1 or 2")
                if (v, s) in seen_fb:
                    raise CertificateError(f"vertex {tuple(v)} listed twice at strength {s}")
                seen_fb.add((v, s))
                parts[s][v] = parse_rational(_require(entry, "value", str))
            body = FractionalWeighting(g, parts[1], WeightKind.FractionalBroadcastMixed, parts[2])

    cd = _require(data, "claim", dict)
    direction = _require(cd, "direction", str)
    if direction not in DIRECTIONS:
        raise CertificateError(f"unknown claim direction {direction!r}")
    claim = Claim(direction, parse_rational(_require(cd, "bound", str)))
    prov = data.get("provenance", "")
    if not isinstance(prov, str):
        raise CertificateError("provenance must be a string")
    return Certificate(g, kind, body, claim, prov)


def loads(text: str) -> Certificate:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateError(f"invalid JSON: {exc}") from exc
    return from_dict(data)


# -------------------------------------------------------------- verification

def verify(cert: Certificate) -> Verdict:
    """Recompute cost and feasibility from the payload and test the claim."""
    d, bound = cert.claim.direction, cert.claim.bound
    if d not in SUPPORTED[cert.kind]:
        return Verdict(False, f"a {cert.kind} cannot support a {d} claim")
    body = cert.body
    if cert.kind == "broadcast":
        dom = is_dominating(body)
        if not dom.dominating:
            return Verdict(False, f"vertex {tuple(dom.witness)} hears no broadcast", tuple(dom.witness))
        if body.cost > bound:
            return Verdict(False, f"broadcast costs {body.cost}, more than the claimed {format_rational(bound)}")
        return Verdict(True, f"dominating broadcast of cost {body.cost} certifies gamma_b2 <= {body.cost}")

    c = mp_cost(body)
    if cert.kind == "multipacking":
        check = is_feasible_multipacking(body)
        if not check.feasible:
            v, r = check.witness
            return Verdict(False, f"radius-{r} ball at {tuple(v)} carries weight above {r}", (tuple(v), r))
        if d == "lower" and math.ceil(c) < bound:
            return Verdict(False, f"multipacking cost {format_rational(c)} rounds up to {math.ceil(c)}, "
                                  f"below the claimed {format_rational(bound)}")
        if d == "lp_value" and c != bound:
            return Verdict(False, f"multipacking cost {format_rational(c)} differs from the claimed "
                                  f"{format_rational(bound)}")
        return Verdict(True, f"feasible multipacking of cost {format_rational(c)} certifies "
                             f"gamma_b2 >= {math.ceil(c)}")

    check = is_feasible_fractional_broadcast(body)
    if not check.feasible:
        v = check.witness
        return Verdict(False, f"vertex {tuple(v)} hears total weight below 1", tuple(v))
    if c != bound:
        return Verdict(False, f"fractional broadcast cost {format_rational(c)} differs from the claimed "
                              f"{format_rational(bound)}")
    return Verdict(True, f"feasible fractional broadcast of cost {format_rational(c)}")
