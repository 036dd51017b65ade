"""Scenario files: declarative descriptions of verification runs.

A scenario is a JSON document naming an ambient coordinate count, a family of
ideals, delta-module sections, matrix subalgebras with characters, orbit
charts, and a list of checks.  Expression fields use the operator grammar
verbatim; occurrences of ``{...}`` inside them are integer templates filled
in from the active parameter scope (for example a sweep variable l), so one
ideal definition covers a whole parameter family.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from itertools import product
from pathlib import Path
from typing import Any, Mapping, Sequence

from .deltamod import DeltaModule, DeltaSection, delta, section_from_operator
from .groebner import LeftIdeal
from .lie import (
    Character,
    LieSubalgebra,
    character_from_values,
    conjugate_subalgebra,
    parse_matrix_expr,
)
from .parser import parse_expression, parse_polynomial
from .poly import Poly

BUILTIN_SCENARIOS = ("paper-n2", "paper-n3")

PROVENANCE_TAGS = ("PAPER", "DERIVED", "TRIVIAL")


class ScenarioError(ValueError):
    """A scenario file that does not meet the schema or fails to resolve."""


# -- Integer template expressions --------------------------------------------

_INT_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([-+*(),]))")


def _int_tokens(text: str) -> list[str]:
    out = []
    pos = 0
    while pos < len(text):
        match = _INT_TOKEN.match(text, pos)
        if match is None or match.end() == pos:
            raise ScenarioError(f"bad integer expression {text!r} at position {pos}")
        out.append(match.group(1) or match.group(2) or match.group(3))
        pos = match.end()
    return out


def eval_int_expr(text: str, scope: Mapping[str, int] | None = None) -> int:
    """Evaluate an integer expression over + - * max(,) and scope variables."""
    tokens = _int_tokens(text)
    scope = scope or {}
    pos = 0

    def peek() -> str | None:
        return tokens[pos] if pos < len(tokens) else None

    def take(expected: str | None = None) -> str:
        nonlocal pos
        if pos >= len(tokens):
            raise ScenarioError(f"unexpected end of integer expression {text!r}")
        tok = tokens[pos]
        if expected is not None and tok != expected:
            raise ScenarioError(f"expected {expected!r} in {text!r}, found {tok!r}")
        pos += 1
        return tok

    def expr() -> int:
        value = term()
        while peek() in {"+", "-"}:
            if take() == "+":
                value += term()
            else:
                value -= term()
        return value

    def term() -> int:
        value = unary()
        while peek() == "*":
            take()
            value *= unary()
        return value

    def unary() -> int:
        if peek() == "-":
            take()
            return -unary()
        if peek() == "+":
            take()
            return unary()
        return atom()

    def atom() -> int:
        tok = take()
        if tok.isdigit():
            return int(tok)
        if tok == "(":
            value = expr()
            take(")")
            return value
        if tok == "max":
            take("(")
            first = expr()
            take(",")
            second = expr()
            take(")")
            return max(first, second)
        if tok in scope:
            return int(scope[tok])
        raise ScenarioError(f"unknown variable {tok!r} in integer expression {text!r}")

    value = expr()
    if pos != len(tokens):
        raise ScenarioError(f"trailing input in integer expression {text!r}")
    return value


_TEMPLATE = re.compile(r"\{([^{}]*)\}")


def template_vars(text: str) -> frozenset[str]:
    """Scope variables referenced by ``{...}`` groups of a template string."""
    names: set[str] = set()
    for group in _TEMPLATE.findall(text):
        for tok in _int_tokens(group):
            if tok != "max" and (tok[0].isalpha() or tok[0] == "_"):
                names.add(tok)
    return frozenset(names)


def substitute(text: str, scope: Mapping[str, int] | None = None) -> str:
    """Replace every ``{expr}`` group by its integer value under ``scope``."""
    out = _TEMPLATE.sub(lambda m: str(eval_int_expr(m.group(1), scope)), text)
    if "{" in out or "}" in out:
        raise ScenarioError(f"unbalanced braces in template {text!r}")
    return out


def _scope_key(scope: Mapping[str, int]) -> tuple[tuple[str, int], ...]:
    return tuple(sorted(scope.items()))


# -- Schema ------------------------------------------------------------------

# Fields each check kind resolves, by reference type; used both by the runner
# dispatch and by load-time name validation.  A trailing "?" marks the field
# optional.
CHECK_SCHEMAS: dict[str, dict[str, str]] = {
    "annihilates": {"ideal": "ideal", "section": "section"},
    "sections_agree": {"sections": "section_list"},
    "certify_annihilator": {"ideal": "ideal", "section": "section"},
    "fourier_transport": {"ideal": "ideal", "section": "section", "polynomial": "polynomial"},
    "membership": {"ideal": "ideal", "element": "expression"},
    "ideal_contains": {"outer": "ideal", "inner": "ideal"},
    "module_multiply": {"ideal": "ideal", "factor": "expression", "inside": "ideal"},
    "unit_ideal": {"ideal": "ideal"},
    "simplicity": {"ideal": "ideal"},
    "interpolation": {"targets": "target_list", "lmax": "int", "ideal": "ideal"},
    "is_subalgebra": {"algebra": "algebra"},
    "character_valid": {"character": "character"},
    "twisted_containment": {"algebra": "algebra", "character": "character", "ideal": "ideal"},
    "twisted_generates": {"algebra": "algebra", "character": "character", "ideal": "ideal"},
    "kernel_element": {"terms": "kernel_terms"},
    "variety_stable": {"algebra": "algebra", "chart": "chart"},
    "tangent_rank": {"algebra": "algebra", "point": "point"},
}

_CHECK_META = {"id", "kind", "provenance", "anchor", "expect", "foreach", "note"}


@dataclass(frozen=True)
class CheckSpec:
    """One declared check, possibly expanding into several instances."""

    id: str
    kind: str
    provenance: str
    anchor: str | None
    expect: Any
    params: Mapping[str, Any]
    foreach: Mapping[str, tuple[int, ...]]
    note: str | None

    def instances(self) -> list[tuple[str, dict[str, int]]]:
        """(instance id, scope) pairs in declaration order."""
        if not self.foreach:
            return [(self.id, {})]
        keys = sorted(self.foreach)
        out = []
        for combo in product(*(self.foreach[k] for k in keys)):
            scope = dict(zip(keys, combo))
            suffix = ",".join(f"{k}={scope[k]}" for k in keys)
            out.append((f"{self.id}[{suffix}]", scope))
        return out


@dataclass(frozen=True)
class Chart:
    """Affine orbit chart: equations cut the closure, inequations stay nonzero."""

    equations: tuple[Poly, ...]
    inequations: tuple[Poly, ...]
    expected_dimension: int | None


class Scenario:
    """A resolved scenario with caching of ideals, sections, and algebras."""

    def __init__(self, raw: Mapping[str, Any], source: str = "<memory>"):
        self.raw = raw
        self.source = source
        self._validate_shape()
        self.name: str = raw["name"]
        self.ambient: int = raw["ambient"]
        self.sweep: dict[str, list[int]] = {
            key: list(values) for key, values in raw.get("sweep", {}).items()
        }
        support = raw.get("delta_module", [])
        self.delta_module = DeltaModule(self.ambient, frozenset(support))
        self.checks: list[CheckSpec] = [self._check_spec(c) for c in raw.get("checks", [])]
        self._ideals: dict[tuple, LeftIdeal] = {}
        self._sections: dict[tuple, DeltaSection] = {}
        self._polynomials: dict[tuple, Poly] = {}
        self._algebras: dict[str, LieSubalgebra] = {}
        self._characters: dict[tuple, Character] = {}
        self._validate_references()

    # -- construction and validation --

    def _validate_shape(self) -> None:
        raw = self.raw
        if not isinstance(raw, dict):
            raise ScenarioError(f"{self.source}: scenario must be a JSON object")
        name = raw.get("name")
        if not isinstance(name, str) or not name:
            raise ScenarioError(f"{self.source}: missing scenario name")
        ambient = raw.get("ambient")
        if not isinstance(ambient, int) or ambient < 1:
            raise ScenarioError(f"{name}: ambient must be a positive integer")
        for key, values in raw.get("sweep", {}).items():
            if not isinstance(values, list) or not values:
                raise ScenarioError(f"{name}: sweep {key!r} must be a non-empty list")
            if not all(isinstance(v, int) and v >= 0 for v in values):
                raise ScenarioError(
                    f"{name}: invalid sweep: {key!r} values must be non-negative integers"
                )
        support = raw.get("delta_module", [])
        if not isinstance(support, list) or not all(
            isinstance(i, int) and 1 <= i <= ambient for i in support
        ):
            raise ScenarioError(f"{name}: delta_module must list indices in 1..{ambient}")

    def _check_spec(self, raw: Any) -> CheckSpec:
        if not isinstance(raw, dict):
            raise ScenarioError(f"{self.name}: each check must be an object")
        cid = raw.get("id")
        kind = raw.get("kind")
        if not isinstance(cid, str) or not cid:
            raise ScenarioError(f"{self.name}: check without an id")
        if kind not in CHECK_SCHEMAS:
            raise ScenarioError(f"{self.name}: check {cid!r} has unknown kind {kind!r}")
        provenance = raw.get("provenance")
        if provenance not in PROVENANCE_TAGS:
            raise ScenarioError(
                f"{self.name}: check {cid!r} needs a provenance tag from {PROVENANCE_TAGS}"
            )
        anchor = raw.get("anchor")
        if provenance == "PAPER" and not anchor:
            raise ScenarioError(f"{self.name}: check {cid!r} is PAPER-tagged but has no anchor")
        foreach_raw = raw.get("foreach", {})
        foreach: dict[str, tuple[int, ...]] = {}
        for key, values in foreach_raw.items():
            if not isinstance(values, list) or not all(isinstance(v, int) for v in values):
                raise ScenarioError(
                    f"{self.name}: check {cid!r} foreach {key!r} must list integers"
                )
            foreach[key] = tuple(values)
        params = {k: v for k, v in raw.items() if k not in _CHECK_META}
        return CheckSpec(
            id=cid,
            kind=kind,
            provenance=provenance,
            anchor=anchor,
            expect=raw.get("expect"),
            params=params,
            foreach=foreach,
            note=raw.get("note"),
        )

    def _validate_references(self) -> None:
        ids = [c.id for c in self.checks]
        if len(set(ids)) != len(ids):
            dup = sorted({i for i in ids if ids.count(i) > 1})
            raise ScenarioError(f"{self.name}: duplicate check ids {dup}")
        for check in self.checks:
            for field, ftype in CHECK_SCHEMAS[check.kind].items():
                optional = ftype.endswith("?")
                ftype = ftype.rstrip("?")
                if field not in check.params:
                    if optional:
                        continue
                    raise ScenarioError(
                        f"{self.name}: check {check.id!r} is missing field {field!r}"
                    )
                self._validate_ref(check, field, check.params[field], ftype)
        self._validate_expressions()

    def _validate_ref(self, check: CheckSpec, field: str, value: Any, ftype: str) -> None:
        sections = {
            "ideal": "ideals",
            "section": "sections",
            "polynomial": "polynomials",
            "algebra": "subalgebras",
            "character": "characters",
            "chart": "charts",
            "point": "points",
        }
        def fail(message: str) -> ScenarioError:
            return ScenarioError(f"{self.name}: check {check.id!r}, field {field!r}: {message}")

        if ftype in sections:
            name = value["name"] if isinstance(value, dict) else value
            if not isinstance(name, str):
                raise fail("reference must be a name or an object with a name")
            if name not in self.raw.get(sections[ftype], {}):
                raise fail(f"unresolved name: no {ftype} called {name!r}")
        elif ftype == "section_list":
            if not isinstance(value, list) or len(value) < 2:
                raise fail("needs a list of at least two sections")
            for entry in value:
                self._validate_ref(check, field, entry, "section")
        elif ftype == "target_list":
            if not isinstance(value, list) or not value:
                raise fail("needs a non-empty list of {level, element} targets")
            for entry in value:
                if not isinstance(entry, dict) or "level" not in entry or "element" not in entry:
                    raise fail("each target needs level and element")
        elif ftype == "int":
            if not isinstance(value, int):
                raise fail("must be an integer")
        elif ftype == "expression":
            if not isinstance(value, str):
                raise fail("must be an expression string")
        elif ftype == "kernel_terms":
            if not isinstance(value, list) or not value:
                raise fail("needs a non-empty list of {coeff, factors} terms")
            for entry in value:
                if not isinstance(entry, dict) or "factors" not in entry:
                    raise fail("each term needs a factors list")

    def _sample_scopes(self, names: frozenset[str]) -> list[dict[str, int]]:
        """Scopes used for load-time parse validation of a template."""
        if not names:
            return [{}]
        pools: dict[str, list[int]] = {}
        for name in sorted(names):
            values = list(self.sweep.get(name, []))
            for check in self.checks:
                values.extend(check.foreach.get(name, ()))
            pools[name] = sorted(set(values)) or [0, 1]
        keys = sorted(pools)
        return [dict(zip(keys, combo)) for combo in product(*(pools[k] for k in keys))]

    def _validate_expressions(self) -> None:
        for name, spec in self.raw.get("ideals", {}).items():
            generators = spec.get("generators") if isinstance(spec, dict) else None
            if not isinstance(generators, list) or not generators:
                raise ScenarioError(f"{self.name}: ideal {name!r} needs a generator list")
            for text in generators:
                self._validate_template(f"ideal {name!r}", text, parse_expression)
        for name, text in self.raw.get("sections", {}).items():
            self._validate_template(f"section {name!r}", text, parse_expression)
        for name, text in self.raw.get("polynomials", {}).items():
            self._validate_template(f"polynomial {name!r}", text, parse_polynomial)
        for name, spec in self.raw.get("charts", {}).items():
            for text in list(spec.get("equations", [])) + list(spec.get("inequations", [])):
                self._validate_template(f"chart {name!r}", text, parse_polynomial)
        for name in self.raw.get("subalgebras", {}):
            self.algebra(name)
        for name, spec in self.raw.get("characters", {}).items():
            algebra_name = spec.get("algebra")
            if algebra_name not in self.raw.get("subalgebras", {}):
                raise ScenarioError(
                    f"{self.name}: character {name!r} references unknown subalgebra"
                )
            values = spec.get("values", [])
            if len(values) != self.algebra(algebra_name).dimension:
                raise ScenarioError(
                    f"{self.name}: character {name!r} needs one value per basis element"
                )

    def _validate_template(self, label: str, text: Any, parse) -> None:
        if not isinstance(text, str):
            raise ScenarioError(f"{self.name}: {label}: expression must be a string")
        for scope in self._sample_scopes(template_vars(text)):
            try:
                parse(substitute(text, scope), self.ambient)
            except ValueError as exc:
                raise ScenarioError(f"{self.name}: {label}: {exc}") from exc

    # -- resolution --

    def _named(self, section: str, name: str) -> Any:
        table = self.raw.get(section, {})
        if name not in table:
            raise ScenarioError(f"{self.name}: no {section} entry called {name!r}")
        return table[name]

    def _split_ref(self, ref: Any, scope: Mapping[str, int]) -> tuple[str, dict[str, int]]:
        """A reference is a name, or an object binding extra scope variables."""
        if isinstance(ref, str):
            return ref, dict(scope)
        if isinstance(ref, dict) and isinstance(ref.get("name"), str):
            bound = dict(scope)
            for key, value in ref.items():
                if key == "name":
                    continue
                bound[key] = value if isinstance(value, int) else eval_int_expr(str(value), scope)
            return ref["name"], bound
        raise ScenarioError(f"{self.name}: malformed reference {ref!r}")

    def _scoped(self, texts: Sequence[str], scope: Mapping[str, int]) -> tuple[tuple, dict]:
        used: set[str] = set()
        for text in texts:
            used |= template_vars(text)
        missing = sorted(used - set(scope))
        if missing:
            raise ScenarioError(
                f"{self.name}: template needs parameter(s) {missing} (pass e.g. --l)"
            )
        effective = {k: scope[k] for k in used}
        return _scope_key(effective), effective

    def ideal(self, ref: Any, scope: Mapping[str, int] | None = None) -> LeftIdeal:
        name, bound = self._split_ref(ref, scope or {})
        spec = self._named("ideals", name)
        generators = spec["generators"]
        key_scope, effective = self._scoped(generators, bound)
        key = (name, key_scope)
        if key not in self._ideals:
            elements = [
                parse_expression(substitute(text, effective), self.ambient)
                for text in generators
            ]
            self._ideals[key] = LeftIdeal(elements)
        return self._ideals[key]

    def section(self, ref: Any, scope: Mapping[str, int] | None = None) -> DeltaSection:
        name, bound = self._split_ref(ref, scope or {})
        text = self._named("sections", name)
        key_scope, effective = self._scoped([text], bound)
        key = (name, key_scope)
        if key not in self._sections:
            operator = parse_expression(substitute(text, effective), self.ambient)
            self._sections[key] = section_from_operator(self.delta_module, operator)
        return self._sections[key]

    def polynomial(self, ref: Any, scope: Mapping[str, int] | None = None) -> Poly:
        name, bound = self._split_ref(ref, scope or {})
        text = self._named("polynomials", name)
        key_scope, effective = self._scoped([text], bound)
        key = (name, key_scope)
        if key not in self._polynomials:
            self._polynomials[key] = parse_polynomial(substitute(text, effective), self.ambient)
        return self._polynomials[key]

    def matrix(self, name: str) -> list[list[Fraction]]:
        rows = self._named("matrices", name)
        return [[Fraction(e) for e in row] for row in rows]

    def algebra(self, name: str) -> LieSubalgebra:
        if name not in self._algebras:
            spec = self._named("subalgebras", name)
            if "conjugate_of" in spec:
                base = self.algebra(spec["conjugate_of"])
                conjugator = self.matrix(spec["by"])
                self._algebras[name] = conjugate_subalgebra(conjugator, base)
            else:
                basis = [parse_matrix_expr(text, self.ambient) for text in spec["basis"]]
                self._algebras[name] = LieSubalgebra(self.ambient, basis)
        return self._algebras[name]

    def character(self, ref: Any, scope: Mapping[str, int] | None = None) -> Character:
        name, bound = self._split_ref(ref, scope or {})
        spec = self._named("characters", name)
        texts = [str(v) for v in spec["values"]]
        used: set[str] = set()
        for text in texts:
            for tok in _int_tokens(text):
                if not tok.isdigit() and tok not in "+-*(),":
                    if tok != "max":
                        used.add(tok)
        missing = sorted(used - set(bound))
        if missing:
            raise ScenarioError(
                f"{self.name}: character {name!r} needs parameter(s) {missing}"
            )
        effective = {k: bound[k] for k in used}
        key = (name, _scope_key(effective))
        if key not in self._characters:
            algebra = self.algebra(spec["algebra"])
            values = [eval_int_expr(text, effective) for text in texts]
            self._characters[key] = character_from_values(algebra, values)
        return self._characters[key]

    def chart(self, ref: Any, scope: Mapping[str, int] | None = None) -> Chart:
        name, bound = self._split_ref(ref, scope or {})
        spec = self._named("charts", name)
        equations = [
            parse_polynomial(substitute(text, bound), self.ambient)
            for text in spec.get("equations", [])
        ]
        inequations = [
            parse_polynomial(substitute(text, bound), self.ambient)
            for text in spec.get("inequations", [])
        ]
        return Chart(tuple(equations), tuple(inequations), spec.get("expected_dimension"))

    def point(self, ref: Any, scope: Mapping[str, int] | None = None) -> list[Fraction]:
        name, bound = self._split_ref(ref, scope or {})
        coords = self._named("points", name)
        if len(coords) != self.ambient:
            raise ScenarioError(f"{self.name}: point {name!r} needs {self.ambient} coordinates")
        return [Fraction(eval_int_expr(str(c), bound)) for c in coords]

    def expression(self, text: str, scope: Mapping[str, int] | None = None):
        return parse_expression(substitute(text, scope or {}), self.ambient)


def load_scenario(ref: str | Path) -> Scenario:
    """Load a builtin scenario by name or any scenario from a JSON path."""
    text_source: str
    if isinstance(ref, str) and ref in BUILTIN_SCENARIOS:
        resource = resources.files("weylkit").joinpath("data", f"{ref}.json")
        payload = resource.read_text(encoding="utf-8")
        text_source = f"builtin {ref}"
    else:
        path = Path(ref)
        if not path.exists():
            raise ScenarioError(
                f"no such scenario: {ref!r} is neither a builtin "
                f"({', '.join(BUILTIN_SCENARIOS)}) nor a file"
            )
        payload = path.read_text(encoding="utf-8")
        text_source = str(path)
    try:
        raw = json.loads(payload)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{text_source}: parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return Scenario(raw, source=text_source)
