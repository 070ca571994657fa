"""Job-file parsing and deterministic report construction.

A job is {"spec": ..., "commands": [...], "precision_bits": optional}.  The
spec carries either {"kind": "field", "minpoly": [...]} or {"kind":
"quaternion", "base_minpoly": [...], "alpha": [...], "beta": [...]} plus the
element and the dimension g.  Polynomial coefficient arrays are strings
"num/den", constant term first.  Validation errors carry a JSON-pointer-ish
path to the offending field.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp

from . import classify
from .enclosures import fraction_to_mpf
from .errors import ValidationError
from .lefschetz import (
    EndomorphismSpec,
    fixed_points_exact,
    fixed_points_via_eigenvalues,
    rational_eigenvalues,
)
from .numfield import NumberField, cm_structure
from .qpoly import QPoly
from .quaternion import QuatAlgebra, definiteness

KNOWN_OPS = ("check-algebra", "classify", "fixpoints", "entropy", "salem")


@dataclass
class Job:
    spec: EndomorphismSpec | None
    commands: list[dict]
    precision_bits: int | None


def _fail(path: str, detail: str):
    raise ValidationError(f"{detail} (at {path})")


def _poly(data, path: str) -> QPoly:
    if not isinstance(data, list) or not data:
        _fail(path, "expected a non-empty array of coefficient strings")
    try:
        return QPoly.from_json(data)
    except (ValidationError, ValueError, ZeroDivisionError) as exc:
        _fail(path, f"bad coefficient array: {exc}")


def parse_spec(data, path: str = "spec") -> EndomorphismSpec:
    if not isinstance(data, dict):
        _fail(path, "spec must be an object")
    for key in ("algebra", "element", "g"):
        if key not in data:
            _fail(f"{path}.{key}", "missing required field")
    alg = data["algebra"]
    if not isinstance(alg, dict) or "kind" not in alg:
        _fail(f"{path}.algebra.kind", "algebra needs a 'kind' of 'field' or 'quaternion'")
    g = data["g"]
    if not isinstance(g, int) or g < 1:
        _fail(f"{path}.g", "g must be a positive integer")

    if alg["kind"] == "field":
        field = NumberField(_poly(alg.get("minpoly"), f"{path}.algebra.minpoly"))
        elt = data["element"]
        if not isinstance(elt, dict) or "coords" not in elt:
            _fail(f"{path}.element.coords", "field element needs a 'coords' array")
        coords = _poly_or_zero(elt["coords"], f"{path}.element.coords")
        try:
            return EndomorphismSpec(field, field.element(coords), g)
        except ValidationError as exc:
            _fail(path, str(exc))
    elif alg["kind"] == "quaternion":
        algebra = QuatAlgebra(
            NumberField(_poly(alg.get("base_minpoly"), f"{path}.algebra.base_minpoly")),
            _poly_or_zero(alg.get("alpha"), f"{path}.algebra.alpha"),
            _poly_or_zero(alg.get("beta"), f"{path}.algebra.beta"),
        )
        elt = data["element"]
        if not isinstance(elt, dict):
            _fail(f"{path}.element", "quaternion element needs arrays a, b, c, d")
        coords = []
        for key in ("a", "b", "c", "d"):
            coords.append(_poly_or_zero(elt.get(key, []), f"{path}.element.{key}"))
        try:
            return EndomorphismSpec(algebra, algebra.element(*coords), g)
        except ValidationError as exc:
            _fail(path, str(exc))
    else:
        _fail(f"{path}.algebra.kind", f"unknown algebra kind {alg['kind']!r}")


def _poly_or_zero(data, path: str) -> QPoly:
    if data is None:
        _fail(path, "missing coefficient array")
    if not isinstance(data, list):
        _fail(path, "expected an array of coefficient strings")
    if not data:
        return QPoly()
    try:
        return QPoly.from_json(data)
    except (ValidationError, ValueError, ZeroDivisionError) as exc:
        _fail(path, f"bad coefficient array: {exc}")


def parse_job(data) -> Job:
    if not isinstance(data, dict):
        raise ValidationError("job must be a JSON object (at $)")
    commands = data.get("commands")
    if not isinstance(commands, list) or not commands:
        raise ValidationError("job needs a non-empty 'commands' array (at commands)")
    normalized = []
    needs_spec = False
    for k, cmd in enumerate(commands):
        if isinstance(cmd, str):
            cmd = {"op": cmd}
        if not isinstance(cmd, dict) or "op" not in cmd:
            _fail(f"commands[{k}]", "command must be a string or an object with 'op'")
        if cmd["op"] not in KNOWN_OPS:
            _fail(f"commands[{k}].op", f"unknown op {cmd['op']!r}; known: {', '.join(KNOWN_OPS)}")
        if cmd["op"] != "salem":
            needs_spec = True
        if cmd["op"] == "fixpoints":
            nmax = cmd.get("nmax", 10)
            if not isinstance(nmax, int) or nmax < 1:
                _fail(f"commands[{k}].nmax", "nmax must be a positive integer")
            cmd = {"op": "fixpoints", "nmax": nmax}
        if cmd["op"] == "salem":
            if "poly" not in cmd:
                _fail(f"commands[{k}].poly", "salem command needs a 'poly' array")
        normalized.append(cmd)
    precision = data.get("precision_bits")
    if precision is not None and (not isinstance(precision, int) or not 64 <= precision <= 2048):
        raise ValidationError("precision_bits must be an integer in [64, 2048] (at precision_bits)")
    spec = None
    if needs_spec:
        if "spec" not in data:
            raise ValidationError("commands need a 'spec' object (at spec)")
        spec = parse_spec(data["spec"], "spec")
    return Job(spec, normalized, precision)


# ---------------------------------------------------------------------------
# report builders (all values exact strings or JSON scalars, so output is
# byte-identical run to run)


def albert_json(at: classify.AlbertType) -> dict:
    return {"kind": at.kind, "d": at.d, "e": at.e}


def growth_json(rep: classify.GrowthReport) -> dict:
    return {
        "class": rep.growth_class,
        "period": rep.period,
        "unit_circle_roots_of_unity": rep.unit_circle_roots_of_unity,
        "witness": rep.witness,
    }


def _value_decimal(value) -> str:
    with mp.workprec(200):
        return mp.nstr(value, 18, strip_zeros=False)


def entropy_json(rep: classify.EntropyReport) -> dict:
    return {
        "value_decimal": _value_decimal(rep.value),
        "gamma_minpoly": rep.gamma_minpoly.to_json(),
        "is_salem": rep.is_salem,
        "structure_ok": rep.structure_ok,
        "structure_note": rep.structure_note,
    }


def salem_json(report: classify.SalemReport, poly: QPoly) -> dict:
    out = {
        "poly": poly.to_json(),
        "is_salem": report.is_salem,
        "reason": report.reason,
    }
    if report.lead_root is not None:
        with mp.workprec(200):
            out["lead_root"] = mp.nstr(fraction_to_mpf(report.lead_root.re), 18, strip_zeros=False)
    return out


def run_command(spec: EndomorphismSpec | None, cmd: dict, precision: int) -> dict:
    op = cmd["op"]
    if op == "salem":
        poly = _poly(cmd["poly"], "commands[..].poly")
        report = classify.is_salem_polynomial(poly, precision)
        return {"op": op, **salem_json(report, poly)}

    assert spec is not None
    if op == "check-algebra":
        at = classify.admissibility_check(spec)
        out = {"op": op, "albert_type": albert_json(at)}
        if spec.is_field_case:
            out["field_type"] = cm_structure(spec.algebra).kind
        else:
            rep = definiteness(spec.algebra)
            out["definiteness"] = {
                "kind": rep.kind,
                "signs": [[sa, sb] for sa, sb in rep.per_embedding_signs],
            }
        out["charpoly_q"] = spec.charpoly_q().to_json()
        return out
    if op == "fixpoints":
        nmax = cmd["nmax"]
        ev = rational_eigenvalues(spec, precision)
        rows = []
        for n in range(1, nmax + 1):
            exact = fixed_points_exact(spec, n)
            via = fixed_points_via_eigenvalues(ev, n)
            if exact != via:
                from .errors import CrossCheckError

                raise CrossCheckError(f"fixed-point paths disagree at n={n}: {exact} vs {via}")
            rows.append({"n": n, "fix": str(exact)})
        return {"op": op, "fix": rows}
    if op == "entropy":
        rep = classify.entropy(spec, precision)
        return {"op": op, "entropy": entropy_json(rep)}
    if op == "classify":
        at = classify.admissibility_check(spec)
        growth = classify.classify_growth(spec)
        rep = classify.entropy(spec, precision)
        return {
            "op": op,
            "albert_type": albert_json(at),
            "growth": growth_json(growth),
            "entropy": entropy_json(rep),
        }
    raise ValidationError(f"unknown op {op!r}")
