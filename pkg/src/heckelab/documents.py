"""Versioned JSON documents for transitions, blow-up bundles and HN profiles.

Rationals travel as ``"p/q"`` strings in lowest terms so nothing passes
through floating point.  Unknown fields are rejected everywhere.
"""

import json
import re
from fractions import Fraction
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from .blowup_bundle import BlowupBundle
from .exact_algebra import JetLaurentMatrix, JetLaurentPoly, Scalar
from .hn_profile import HNProfile
from .p1_bundle import P1Transition

FORMAT_VERSION = "1"
KINDS = ("p1_transition", "blowup_bundle", "hn_profile")

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


class DocumentError(ValueError):
    """Schema or kind violation; the message names the offending field."""


def parse_rational(text):
    if not isinstance(text, str) or not _RATIONAL.match(text):
        raise ValueError(f"expected a rational string 'p/q', got {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ValueError("zero denominator")
    return Fraction(text)


def format_rational(q):
    return str(Fraction(q))


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", strict=True)


class Term(_Strict):
    t: int
    x: int = Field(default=0, ge=0)
    re: str = "0"
    im: str = "0"

    @field_validator("re", "im")
    @classmethod
    def _rational(cls, v):
        parse_rational(v)
        return v


class TransitionPayload(_Strict):
    matrix: list[list[list[Term]]]


class BundlePayload(_Strict):
    matrix: list[list[list[Term]]]
    jet_order: Optional[int] = Field(default=None, ge=0)


class ProfileBlock(_Strict):
    rank: int = Field(gt=0)
    slope: str
    label: Optional[str] = None

    @field_validator("slope")
    @classmethod
    def _rational(cls, v):
        parse_rational(v)
        return v


class ProfilePayload(_Strict):
    blocks: list[ProfileBlock] = Field(min_length=1)
    base_dimension: int = Field(default=2, ge=2)


class Envelope(_Strict):
    kind: Literal["p1_transition", "blowup_bundle", "hn_profile"]
    version: Literal["1"]
    payload: dict


_PAYLOADS = {
    "p1_transition": TransitionPayload,
    "blowup_bundle": BundlePayload,
    "hn_profile": ProfilePayload,
}


def _describe(exc, prefix=""):
    parts = []
    for err in exc.errors():
        loc = ".".join(str(p) for p in err["loc"])
        if prefix:
            loc = f"{prefix}.{loc}" if loc else prefix
        parts.append(f"{loc}: {err['msg']}")
    return "; ".join(parts)


def _matrix_from_terms(rows, field="payload.matrix"):
    r = len(rows)
    if r == 0:
        raise DocumentError(f"{field}: matrix must be nonempty")
    for i, row in enumerate(rows):
        if len(row) != r:
            raise DocumentError(f"{field}.{i}: expected {r} entries, got {len(row)}")
    jet = max((term.x for row in rows for entry in row for term in entry), default=0)
    out = []
    for i, row in enumerate(rows):
        new = []
        for j, entry in enumerate(row):
            terms = {}
            for k, term in enumerate(entry):
                key = (term.t, term.x)
                if key in terms:
                    raise DocumentError(f"{field}.{i}.{j}.{k}: duplicate monomial t^{term.t} x^{term.x}")
                terms[key] = Scalar(parse_rational(term.re), parse_rational(term.im))
            new.append(JetLaurentPoly(terms, jet))
        out.append(new)
    return JetLaurentMatrix(out, jet)


def parse_document(obj, expect=None, jet_order=None):
    """Validate a decoded JSON document and build the engine object.

    Returns ``(kind, value)``.  ``expect`` restricts the accepted kinds;
    ``jet_order`` overrides the working jet order of a blow-up bundle.
    """
    if not isinstance(obj, dict):
        raise DocumentError("document: expected a JSON object")
    try:
        env = Envelope.model_validate(obj)
    except ValidationError as exc:
        raise DocumentError(_describe(exc)) from None
    if expect is not None and env.kind not in expect:
        raise DocumentError(
            f"kind: expected one of {', '.join(expect)}, got {env.kind!r}"
        )
    try:
        payload = _PAYLOADS[env.kind].model_validate(env.payload)
    except ValidationError as exc:
        raise DocumentError(_describe(exc, "payload")) from None

    if env.kind == "hn_profile":
        blocks = [(b.rank, parse_rational(b.slope), b.label) for b in payload.blocks]
        return env.kind, HNProfile(blocks, base_dimension=payload.base_dimension)
    matrix = _matrix_from_terms(payload.matrix)
    if env.kind == "p1_transition":
        if matrix.x_degree() > 0:
            raise DocumentError("payload.matrix: a p1_transition may not contain x terms")
        return env.kind, P1Transition(matrix.truncate(0))
    if jet_order is None:
        jet_order = payload.jet_order
    return env.kind, BlowupBundle.from_polynomials(matrix, jet_order)


def load_document(text, expect=None, jet_order=None):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"document: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    return parse_document(obj, expect, jet_order)


def poly_to_json(p):
    return [
        {"t": te, "x": xe, "re": format_rational(c.re), "im": format_rational(c.im)}
        for (te, xe), c in p.sorted_terms()
    ]


def matrix_to_json(m):
    return [[poly_to_json(e) for e in row] for row in m.rows]


def _envelope(kind, payload):
    return {"kind": kind, "version": FORMAT_VERSION, "payload": payload}


def transition_document(transition):
    return _envelope("p1_transition", {"matrix": matrix_to_json(transition.matrix)})


def bundle_document(bundle):
    return _envelope(
        "blowup_bundle",
        {"matrix": matrix_to_json(bundle.transition), "jet_order": bundle.jet_order},
    )


def profile_blocks_json(profile):
    out = []
    for b in profile.blocks:
        item = {"rank": b.rank, "slope": format_rational(b.slope)}
        if b.labels:
            item["label"] = b.label
        out.append(item)
    return out


def profile_document(profile):
    return _envelope(
        "hn_profile",
        {"blocks": profile_blocks_json(profile), "base_dimension": profile.base_dimension},
    )


def to_document(value):
    if isinstance(value, HNProfile):
        return profile_document(value)
    if isinstance(value, BlowupBundle):
        return bundle_document(value)
    if isinstance(value, P1Transition):
        return transition_document(value)
    raise TypeError(f"no document kind for {type(value).__name__}")


def dumps(obj):
    """Canonical JSON text (sorted keys, fixed indentation, trailing newline)."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
