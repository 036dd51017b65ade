"""Execute scenario checks against the engine and assemble reports.

Each check runs in isolation: engine exceptions become per-check ``error``
records instead of aborting the run.  The report's ``checks`` array is sorted
by check id so repeated runs are byte-identical; wall-clock measurements are
kept in a separate top-level ``timing`` block that golden comparisons drop.
"""

from __future__ import annotations

import time
from typing import Any, Callable, Mapping

from . import __version__
from .charvar import simplicity_certificate
from .deltamod import (
    act_on_polynomial,
    delta_to_polynomial,
    fourier_transport_check,
    first_non_annihilating,
    certify_annihilator,
    interpolation_lift,
)
from .groebner import LeftIdeal, ideal_contains, module_multiply_ideal
from .lie import (
    apply_vector_field,
    parse_matrix_expr,
    rho,
    tangent_rank_at,
    twisted_generators,
)
from .scenario import CheckSpec, Scenario
from .weyl import WeylElement, partial_fourier

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"
ERROR = "error"

Verdict = tuple[str, dict[str, Any]]


def _expected(check: CheckSpec, default: Any = True) -> Any:
    return default if check.expect is None else check.expect


def _verdict_bool(actual: bool, expected: bool, witness: dict[str, Any]) -> Verdict:
    witness = dict(witness)
    witness["expected"] = expected
    return (PASS if actual == expected else FAIL), witness


def _check_annihilates(s: Scenario, check: CheckSpec, scope: Mapping[str, int]) -> Verdict:
    ideal = s.ideal(check.params["ideal"], scope)
    section = s.section(check.params["section"], scope)
    failure = first_non_annihilating(ideal.generators, section)
    if failure is None:
        return PASS, {"generators": len(ideal.generators)}
    index, image = failure
    return FAIL, {
        "index": index,
        "failing_generator": str(ideal.generators[index - 1]),
        "image": str(image),
    }


def _check_sections_agree(s: Scenario, check: CheckSpec, scope: Mapping[str, int]) -> Verdict:
    refs = check.params["sections"]
    sections = [s.section(ref, scope) for ref in refs]
    first = sections[0]
    for i, other in enumerate(sections[1:], start=2):
        if other != first:
            return FAIL, {
                "mismatch_index": i,
                "first": str(first),
                "other": str(other),
            }
    return PASS, {"forms": len(sections), "section": str(first)}


def _check_certify_annihilator(s: Scenario, check: CheckSpec, scope: Mapping[str, int]) -> Verdict:
    ideal = s.ideal(check.params["ideal"], scope)
    section = s.section(check.params["section"], scope)
    cert = certify_annihilator(ideal, section)
    if cert.verified:
        return PASS, {"verified": True, "simplicity": cert.simplicity.describe()}
    witness: dict[str, Any] = {"verified": False, "failing_stage": cert.failing}
    if cert.witness is not None:
        witness["index"] = cert.witness
        witness["failing_generator"] = str(ideal.generators[cert.witness - 1])
    if cert.simplicity is not None:
        witness["simplicity"] = cert.simplicity.describe()
        if cert.simplicity.simple == "undetermined":
            return INCONCLUSIVE, witness
    return FAIL, witness


def _check_fourier_transport(s: Scenario, check: CheckSpec, scope: Mapping[str, int]) -> Verdict:
    ideal = s.ideal(check.params["ideal"], scope)
    section = s.section(check.params["section"], scope)
    polynomial = s.polynomial(check.params["polynomial"], scope)
    spec = s.delta_module.fourier_spec()
    if fourier_transport_check(spec, ideal, section, polynomial):
        return PASS, {"polynomial": str(polynomial), "generators": len(ideal.generators)}
    image = delta_to_polynomial(section)
    if image != polynomial:
        return FAIL, {"section_image": str(image), "polynomial": str(polynomial)}
    for index, g in enumerate(ideal.generators, start=1):
        residue = act_on_polynomial(partial_fourier(g, spec), polynomial)
        if not residue.is_zero():
            return FAIL, {
                "index": index,
                "failing_generator": str(g),
                "image": str(residue),
            }
    return FAIL, {"reason": "transport check failed without a visible witness"}


def _check_membership(s: Scenario, check: CheckSpec, scope: Mapping[str, int]) -> Verdict:
    ideal = s.ideal(check.params["ideal"], scope)
    element = s.expression(check.params["element"], scope)
    remainder = ideal.reduce(element)
    contained = remainder.is_zero()
    return _verdict_bool(
        contained,
        bool(_expected(check)),
        {
            "element": str(element),
            "contained": contained,
            "normal_form": str(remainder),
        },
    )


def _check_ideal_contains(s: Scenario, check: CheckSpec, scope: Mapping[str, int]) -> Verdict:
    outer = s.ideal(check.params["outer"], scope)
    inner = s.ideal(check.params["inner"], scope)
    for index, g in enumerate(inner.generators, start=1):
        remainder = outer.reduce(g)
        if not remainder.is_zero():
            return _verdict_bool(
                False,
                bool(_expected(check)),
                {
                    "index": index,
                    "failing_generator": str(g),
                    "normal_form": str(remainder),
                },
            )
    return _verdict_bool(True, bool(_expected(check)), {"generators": len(inner.generators)})


def _check_module_multiply(s: Scenario, check: CheckSpec, scope: Mapping[str, int]) -> Verdict:
    ideal = s.ideal(check.params["ideal"], scope)
    factor = s.expression(check.params["factor"], scope)
    inside = s.ideal(check.params["inside"], scope)
    products = module_multiply_ideal(ideal, factor)
    for index, p in enumerate(products, start=1):
        remainder = inside.reduce(p)
        if not remainder.is_zero():
            return FAIL, {
                "index": index,
                "factor": str(factor),
                "product": str(p),
                "normal_form": str(remainder),
            }
    return PASS, {"factor": str(factor), "products": len(products)}


def _check_unit_ideal(s: Scenario, check: CheckSpec, scope: Mapping[str, int]) -> Verdict:
    ideal = s.ideal(check.params["ideal"], scope)
    return _verdict_bool(ideal.is_unit(), bool(_expected(check)), {})


def _check_simplicity(s: Scenario, check: CheckSpec, scope: Mapping[str, int]) -> Verdict:
    ideal = s.ideal(check.params["ideal"], scope)
    cert = simplicity_certificate(ideal)
    expected = _expected(check, {"verdict": "holonomic", "simple": "yes"})
    witness: dict[str, Any] = {
        "dimension": cert.dimension,
        "multiplicity": cert.multiplicity,
        "verdict": cert.verdict,
        "simple": cert.simple,
        "summary": cert.describe(),
        "expected": expected,
    }
    mismatched = [
        key for key, value in expected.items() if getattr(cert, key) != value
    ]
    if not mismatched:
        return PASS, witness
    witness["mismatched"] = mismatched
    if mismatched == ["simple"] and cert.simple == "undetermined":
        return INCONCLUSIVE, witness
    return FAIL, witness


def _check_interpolation(s: Scenario, check: CheckSpec, scope: Mapping[str, int]) -> Verdict:
    lmax = check.params["lmax"]
    targets = [
        (t["level"], s.expression(t["element"], scope)) for t in check.params["targets"]
    ]
    lift = interpolation_lift(targets, lmax)
    for level, element in targets:
        level_scope = dict(scope)
        level_scope["l"] = level
        ideal = s.ideal(check.params["ideal"], level_scope)
        remainder = ideal.reduce(lift - element)
        if not remainder.is_zero():
            return FAIL, {
                "level": level,
                "target": str(element),
                "normal_form": str(remainder),
                "lift": str(lift),
            }
    return PASS, {"lift": str(lift), "levels": [level for level, _ in targets]}


def _check_is_subalgebra(s: Scenario, check: CheckSpec, scope: Mapping[str, int]) -> Verdict:
    algebra = s.algebra(check.params["algebra"])
    defect = algebra.bracket_defect()
    if defect is None:
        return _verdict_bool(True, bool(_expected(check)), {"dimension": algebra.dimension})
    return _verdict_bool(
        False,
        bool(_expected(check)),
        {"dimension": algebra.dimension, "bracket_defect": list(defect)},
    )


def _check_character_valid(s: Scenario, check: CheckSpec, scope: Mapping[str, int]) -> Verdict:
    character = s.character(check.params["character"], scope)
    values = [str(v) for v in character.values]
    return _verdict_bool(
        character.vanishes_on_brackets(),
        bool(_expected(check)),
        {"values": values, "dimension": character.algebra.dimension},
    )


def _check_twisted_containment(s: Scenario, check: CheckSpec, scope: Mapping[str, int]) -> Verdict:
    algebra = s.algebra(check.params["algebra"])
    character = s.character(check.params["character"], scope)
    ideal = s.ideal(check.params["ideal"], scope)
    for index, op in enumerate(twisted_generators(algebra, character), start=1):
        remainder = ideal.reduce(op)
        if not remainder.is_zero():
            return FAIL, {
                "index": index,
                "operator": str(op),
                "normal_form": str(remainder),
            }
    return PASS, {"operators": algebra.dimension}


def _check_twisted_generates(s: Scenario, check: CheckSpec, scope: Mapping[str, int]) -> Verdict:
    algebra = s.algebra(check.params["algebra"])
    character = s.character(check.params["character"], scope)
    stated = s.ideal(check.params["ideal"], scope)
    twisted = LeftIdeal(twisted_generators(algebra, character))
    forward = ideal_contains(stated, twisted)
    reverse = ideal_contains(twisted, stated)
    witness = {
        "twisted_in_stated": forward,
        "stated_in_twisted": reverse,
        "twisted_generators": len(twisted.generators),
        "stated_generators": len(stated.generators),
    }
    return (PASS if forward and reverse else FAIL), witness


def _check_kernel_element(s: Scenario, check: CheckSpec, scope: Mapping[str, int]) -> Verdict:
    total = WeylElement.zero(s.ambient)
    rendered = []
    for term in check.params["terms"]:
        coeff = term.get("coeff", 1)
        product = WeylElement.constant(coeff, s.ambient)
        for factor in term["factors"]:
            product = product * rho(parse_matrix_expr(factor, s.ambient))
        total = total + product
        rendered.append({"coeff": coeff, "factors": list(term["factors"])})
    return _verdict_bool(
        total.is_zero(), bool(_expected(check)), {"image": str(total), "terms": rendered}
    )


def _check_variety_stable(s: Scenario, check: CheckSpec, scope: Mapping[str, int]) -> Verdict:
    algebra = s.algebra(check.params["algebra"])
    chart = s.chart(check.params["chart"], scope)
    equation_ideal = LeftIdeal(list(chart.equations))
    for index, mat in enumerate(algebra.basis, start=1):
        for equation in chart.equations:
            derivative = apply_vector_field(mat, equation)
            remainder = equation_ideal.reduce(derivative)
            if not remainder.is_zero():
                return _verdict_bool(
                    False,
                    bool(_expected(check)),
                    {
                        "basis_index": index,
                        "equation": str(equation),
                        "derivative": str(derivative),
                        "normal_form": str(remainder),
                    },
                )
    return _verdict_bool(
        True,
        bool(_expected(check)),
        {"equations": len(chart.equations), "fields": algebra.dimension},
    )


def _check_tangent_rank(s: Scenario, check: CheckSpec, scope: Mapping[str, int]) -> Verdict:
    algebra = s.algebra(check.params["algebra"])
    point = s.point(check.params["point"], scope)
    rank = tangent_rank_at(algebra.basis, point)
    expected = _expected(check)
    witness = {
        "rank": rank,
        "expected": expected,
        "point": [str(c) for c in point],
    }
    return (PASS if rank == expected else FAIL), witness


_HANDLERS: dict[str, Callable[[Scenario, CheckSpec, Mapping[str, int]], Verdict]] = {
    "annihilates": _check_annihilates,
    "sections_agree": _check_sections_agree,
    "certify_annihilator": _check_certify_annihilator,
    "fourier_transport": _check_fourier_transport,
    "membership": _check_membership,
    "ideal_contains": _check_ideal_contains,
    "module_multiply": _check_module_multiply,
    "unit_ideal": _check_unit_ideal,
    "simplicity": _check_simplicity,
    "interpolation": _check_interpolation,
    "is_subalgebra": _check_is_subalgebra,
    "character_valid": _check_character_valid,
    "twisted_containment": _check_twisted_containment,
    "twisted_generates": _check_twisted_generates,
    "kernel_element": _check_kernel_element,
    "variety_stable": _check_variety_stable,
    "tangent_rank": _check_tangent_rank,
}


def _inputs(check: CheckSpec, scope: Mapping[str, int]) -> dict[str, Any]:
    inputs: dict[str, Any] = {}
    for field, value in sorted(check.params.items()):
        inputs[field] = value
    if scope:
        inputs["parameters"] = dict(sorted(scope.items()))
    return inputs


def run_scenario(scenario: Scenario) -> dict[str, Any]:
    """Run every check and assemble the deterministic report dictionary."""
    records: list[dict[str, Any]] = []
    per_check: dict[str, float] = {}
    started = time.perf_counter()
    for check in scenario.checks:
        handler = _HANDLERS[check.kind]
        for instance_id, scope in check.instances():
            tick = time.perf_counter()
            try:
                verdict, witness = handler(scenario, check, scope)
            except Exception as exc:  # noqa: BLE001 -- per-check isolation is the contract
                verdict = ERROR
                witness = {"error": type(exc).__name__, "message": str(exc)}
            per_check[instance_id] = round(time.perf_counter() - tick, 6)
            record = {
                "id": instance_id,
                "kind": check.kind,
                "inputs": _inputs(check, scope),
                "verdict": verdict,
                "witness": witness,
                "provenance": check.provenance,
            }
            if check.anchor is not None:
                record["anchor"] = check.anchor
            if check.note is not None:
                record["note"] = check.note
            records.append(record)
    records.sort(key=lambda r: r["id"])
    counts = {verdict: 0 for verdict in (PASS, FAIL, INCONCLUSIVE, ERROR)}
    for record in records:
        counts[record["verdict"]] += 1
    return {
        "scenario": scenario.name,
        "ambient": scenario.ambient,
        "engine": {"name": "weylkit", "version": __version__},
        "summary": {
            "total": len(records),
            "pass": counts[PASS],
            "fail": counts[FAIL],
            "inconclusive": counts[INCONCLUSIVE],
            "error": counts[ERROR],
            "all_pass": counts[PASS] == len(records),
        },
        "checks": records,
        "timing": {
            "total_seconds": round(time.perf_counter() - started, 6),
            "per_check": per_check,
        },
    }


def all_pass(report: Mapping[str, Any]) -> bool:
    return bool(report["summary"]["all_pass"])
