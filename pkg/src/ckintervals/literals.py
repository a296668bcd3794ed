"""JSON literals for spaces, fields and intervals.

Field literal::

    {"space": {"kind": "alphaN", "m": 100, "k": 2},
     "head": {"3": "1/2"}, "tail": {"classes": [["1", "1"], ["1", "-1"]]},
     "x0": "1", "bound": "2"}

On a Discrete space ``"values": [...]`` may replace ``head``.  Intervals are
``{"lower": <field>, "upper": <field>}`` (a top-level ``"space"`` is shared),
or the shorthand ``"[a,b]"`` for constants on ``Discrete(1)``.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import PreconditionError
from .exact import format_number, parse_number
from .interval import FnInterval, canonicalize
from .space import PolyTail, ScalarField, SpaceModel, discrete_field, make_space, seq_field


def parse_space(obj) -> SpaceModel:
    if isinstance(obj, SpaceModel):
        return obj
    if not isinstance(obj, dict) or "kind" not in obj:
        raise PreconditionError(f"space literal needs a 'kind': {obj!r}")
    params = {k: v for k, v in obj.items() if k != "kind"}
    return make_space(obj["kind"], **params)


def emit_space(space: SpaceModel) -> dict:
    if space.is_discrete:
        return {"kind": "discrete", "n": space.size}
    return {"kind": "alphaN", "m": space.m, "k": space.k}


def _num(v):
    try:
        return parse_number(v)
    except ValueError as exc:
        raise PreconditionError(str(exc)) from exc


def _classes(raw):
    if not isinstance(raw, list) or not all(isinstance(c, list) and c for c in raw):
        raise PreconditionError("tail classes must be a list of nonempty coefficient lists")
    return [[_num(c) for c in cl] for cl in raw]


def parse_field(obj, space: SpaceModel | None = None) -> ScalarField:
    if not isinstance(obj, dict):
        raise PreconditionError(f"field literal must be an object, got {obj!r}")
    if "space" in obj:
        space = parse_space(obj["space"])
    if space is None:
        raise PreconditionError("field literal has no space")
    bound = _num(obj["bound"]) if "bound" in obj else None
    if space.is_discrete:
        if "values" in obj:
            vals = [_num(v) for v in obj["values"]]
        else:
            head = {int(k): _num(v) for k, v in obj.get("head", {}).items()}
            if sorted(head) != list(range(space.size)):
                raise PreconditionError(f"Discrete({space.size}) field needs values at 0..{space.size - 1}")
            vals = [head[i] for i in range(space.size)]
        f = discrete_field(space, vals)
        return ScalarField(space, f.head, declared_bound=bound)
    tail = obj.get("tail")
    if not isinstance(tail, dict) or "classes" not in tail:
        raise PreconditionError("AlphaN field literal needs tail.classes")
    prefix = [(int(p["start"]), _classes(p["classes"])) for p in obj.get("pieces", [])]
    head = {int(k): _num(v) for k, v in obj.get("head", {}).items()}
    x0 = _num(obj["x0"]) if "x0" in obj else None
    return seq_field(
        space,
        _classes(tail["classes"]),
        x0=x0,
        head=head,
        prefix=prefix,
        tail_start=int(tail.get("start", 1)),
        bound=bound,
    )


def emit_field(f: ScalarField) -> dict:
    space = f.space
    out: dict = {"space": emit_space(space)}
    if f.declared_bound is not None:
        out["bound"] = format_number(f.declared_bound)
    if space.is_discrete:
        out["values"] = [format_number(v) for v in f.values()]
        return out
    out["x0"] = format_number(f.x0)
    if f.head:
        out["head"] = {str(n): format_number(v) for n, v in sorted(f.head.items())}
    if f.is_poly:
        pieces = [{"start": s, "classes": [[format_number(c) for c in cl] for cl in rule.classes]} for s, rule in f.pieces]
        last = pieces.pop()
        if pieces:
            out["pieces"] = pieces
        out["tail"] = {"classes": last["classes"]}
        if last["start"] != 1:
            out["tail"]["start"] = last["start"]
        return out
    # evaluator tails have no closed form: report samples and class limits
    out["tail"] = {
        "kind": "sampled",
        "samples": {str(n): format_number(f(n)) for n in space.sample_indices()},
        "limits": [format_number(c) for c in f.class_limits()],
    }
    return out


def _shorthand(text: str):
    try:
        val = json.loads(text)
    except json.JSONDecodeError:
        inner = text.strip()
        if not (inner.startswith("[") and inner.endswith("]")):
            raise PreconditionError(f"bad interval literal {text!r}") from None
        val = [p.strip() for p in inner[1:-1].split(",")]
    return val


def parse_interval(obj) -> FnInterval:
    """Interval literal from a dict, a JSON string or the ``"[a,b]"`` shorthand."""
    if isinstance(obj, str):
        obj = _shorthand(obj)
    if isinstance(obj, list):
        if len(obj) != 2:
            raise PreconditionError("interval shorthand is [lower, upper]")
        a, b = _num(obj[0]), _num(obj[1])
        space = make_space("discrete", n=1)
        return canonicalize(discrete_field(space, [a]), discrete_field(space, [b]))
    if not isinstance(obj, dict) or "lower" not in obj or "upper" not in obj:
        raise PreconditionError("interval literal needs 'lower' and 'upper'")
    space = parse_space(obj["space"]) if "space" in obj else None
    lower = parse_field(obj["lower"], space)
    upper = parse_field(obj["upper"], space or lower.space)
    if lower.space != upper.space:
        raise PreconditionError("interval bounds live on different spaces")
    return canonicalize(lower, upper)


def emit_interval(I: FnInterval):
    """``"[a,b]"`` on ``Discrete(1)``, otherwise a full literal."""
    if I.space.is_discrete and I.space.size == 1 and not I.empty:
        return f"[{format_number(I.lower(0))},{format_number(I.upper(0))}]"
    lo, hi = emit_field(I.lower), emit_field(I.upper)
    out = {"space": lo.pop("space"), "lower": lo, "upper": hi}
    hi.pop("space")
    if I.empty:
        out["empty"] = True
    return out


def emit_value(x):
    """JSON-ready form of numbers (exact ones become strings)."""
    if isinstance(x, (Fraction, int)) and not isinstance(x, bool):
        return format_number(Fraction(x))
    try:
        return format_number(x)
    except TypeError:
        return x
