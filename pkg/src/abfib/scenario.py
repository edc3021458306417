"""Versioned text scenarios for torus-quotient computations.

A scenario declares factors, generators, and expected outputs:

    version 1
    name bielliptic
    factor torus e1
    factor torus e2
    factor k3 -1
    generator z1+1/2, -z2, -
    expect order 2
    expect free true
    expect hodge 1,1,0,1,1

One `factor` line per torus coordinate or formal factor, in order.  Each
`generator` line has one comma-separated field per factor line: torus fields
are coordinate maps (`-z4+1/4`, `z3+t3/2`; the period symbol t<i> belongs to
coordinate i), formal fields are `-` (act by the factor's sign) or `+` (act
trivially).  Lines starting with `#` and blank lines are skipped.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .torusquot import (
    CY3Factor,
    GroupElement,
    HodgeData,
    K3Factor,
    NonTrivialCanonical,
    TorusFactor,
    TorusModel,
    action_free,
    affine_auto,
    delegated_elements,
    generate_group,
    invariant_form_dims,
    quotient_hodge,
)

SCHEMA_VERSION = 1

_EXPECT_KEYS = ("order", "abelian", "max-order", "free", "forms", "hodge")


class ScenarioError(ValueError):
    """Malformed scenario input; carries the offending line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


@dataclass(frozen=True)
class Scenario:
    name: str
    version: int
    model: TorusModel
    factors: tuple  # TorusFactor / K3Factor / CY3Factor in declaration order
    generators: tuple[GroupElement, ...]
    expectations: tuple[tuple[str, object], ...]


@dataclass(frozen=True)
class ExpectationCheck:
    key: str
    expected: object
    actual: object
    ok: bool


@dataclass(frozen=True)
class ScenarioResult:
    scenario: Scenario
    order: int
    abelian: bool
    max_order: int
    free: bool
    delegated: int
    forms: tuple[int, ...]
    hodge: HodgeData | None
    canonical_failure: int | None
    checks: tuple[ExpectationCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


_Z_HEAD = re.compile(r"^(-?)z(\d+)")
_RATIONAL = re.compile(r"^(\d+)(?:/(\d+))?$")
_TAU = re.compile(r"^t(\d+)(?:/(\d+))?$")
_RATIONAL_TAU = re.compile(r"^(\d+)(?:/(\d+))?\*t(\d+)$")


def _parse_coord_field(field: str, coord: int, n: int, line: int):
    """One torus field: sign, source coordinate, (real, period) shift."""
    s = field.replace(" ", "")
    m = _Z_HEAD.match(s)
    if not m:
        raise ScenarioError(line, f"field {coord + 1}: expected a term like z{coord + 1}")
    sign = -1 if m.group(1) else 1
    src = int(m.group(2))
    if not 1 <= src <= n:
        raise ScenarioError(line, f"field {coord + 1}: z{src} out of range (n = {n})")
    rest = s[m.end() :]
    re_shift = Fraction(0)
    tau_shift = Fraction(0)
    pos = 0
    while pos < len(rest):
        tsign = rest[pos]
        if tsign not in "+-":
            raise ScenarioError(line, f"field {coord + 1}: expected + or - before a shift")
        pos += 1
        nxt = pos
        while nxt < len(rest) and rest[nxt] not in "+-":
            nxt += 1
        term = rest[pos:nxt]
        pos = nxt
        factor = -1 if tsign == "-" else 1
        if (m2 := _RATIONAL.match(term)) is not None:
            re_shift += factor * Fraction(int(m2.group(1)), int(m2.group(2) or 1))
        elif (m2 := _TAU.match(term)) is not None:
            idx = int(m2.group(1))
            if idx != coord + 1:
                raise ScenarioError(
                    line, f"field {coord + 1}: period symbol t{idx} belongs to coordinate {idx}"
                )
            tau_shift += factor * Fraction(1, int(m2.group(2) or 1))
        elif (m2 := _RATIONAL_TAU.match(term)) is not None:
            idx = int(m2.group(3))
            if idx != coord + 1:
                raise ScenarioError(
                    line, f"field {coord + 1}: period symbol t{idx} belongs to coordinate {idx}"
                )
            tau_shift += factor * Fraction(int(m2.group(1)), int(m2.group(2) or 1))
        else:
            raise ScenarioError(line, f"field {coord + 1}: cannot parse shift term {term!r}")
    return sign, src - 1, re_shift, tau_shift


def _parse_generator(body: str, labels, formal_count: int, torus_positions, line: int):
    fields = [f.strip() for f in body.split(",")]
    total_fields = len(torus_positions) + formal_count
    if len(fields) != total_fields:
        raise ScenarioError(
            line, f"generator has {len(fields)} fields, scenario declares {total_fields} factors"
        )
    n = len(labels)
    L = [[0] * n for _ in range(n)]
    shifts = [(Fraction(0), Fraction(0))] * n
    parities = []
    coord = 0
    for pos, field in enumerate(fields):
        if pos in torus_positions:
            sign, src, re_shift, tau_shift = _parse_coord_field(field, coord, n, line)
            L[coord][src] = sign
            shifts[coord] = (re_shift, tau_shift)
            coord += 1
        else:
            if field == "-":
                parities.append(1)
            elif field == "+":
                parities.append(0)
            else:
                raise ScenarioError(
                    line, f"field {pos + 1}: formal factor field must be + or -, got {field!r}"
                )
    model = TorusModel(tuple(labels))
    try:
        auto = affine_auto(model, L, shifts)
    except ValueError as e:
        raise ScenarioError(line, str(e)) from None
    return GroupElement(auto, tuple(parities))


def _parse_expect(body: str, line: int):
    parts = body.split(None, 1)
    if len(parts) != 2:
        raise ScenarioError(line, "expect needs a key and a value")
    key, value = parts[0], parts[1].strip()
    if key not in _EXPECT_KEYS:
        raise ScenarioError(line, f"unknown expectation {key!r} (one of {', '.join(_EXPECT_KEYS)})")
    if key in ("order", "max-order"):
        try:
            return key, int(value)
        except ValueError:
            raise ScenarioError(line, f"{key} expects an integer, got {value!r}") from None
    if key in ("abelian", "free"):
        if value not in ("true", "false"):
            raise ScenarioError(line, f"{key} expects true or false, got {value!r}")
        return key, value == "true"
    try:
        return key, tuple(int(x) for x in value.split(","))
    except ValueError:
        raise ScenarioError(line, f"{key} expects comma-separated integers, got {value!r}") from None


def parse_scenario(text: str) -> Scenario:
    version = None
    name = "unnamed"
    labels: list[str] = []
    factors: list = []
    torus_positions: set[int] = set()
    generator_lines: list[tuple[int, str]] = []
    expectations: list[tuple[str, object]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split(None, 1)
        keyword, body = parts[0], parts[1].strip() if len(parts) > 1 else ""
        if version is None:
            if keyword != "version":
                raise ScenarioError(line_no, "scenario must start with a version line")
            if body != str(SCHEMA_VERSION):
                raise ScenarioError(line_no, f"unsupported version {body!r} (expected {SCHEMA_VERSION})")
            version = SCHEMA_VERSION
            continue
        if keyword == "name":
            name = body or name
        elif keyword == "factor":
            sub = body.split()
            if not sub:
                raise ScenarioError(line_no, "factor needs a kind (torus, k3, cy3)")
            kind = sub[0]
            if kind == "torus":
                if len(sub) != 2:
                    raise ScenarioError(line_no, "torus factor needs a curve label")
                torus_positions.add(len(factors))
                factors.append(TorusFactor())
                labels.append(sub[1])
            elif kind in ("k3", "cy3"):
                if len(sub) != 2 or sub[1] not in ("-1", "1", "+1"):
                    raise ScenarioError(line_no, f"{kind} factor needs a sign +1 or -1")
                sign = -1 if sub[1] == "-1" else 1
                factors.append(K3Factor(sign) if kind == "k3" else CY3Factor(sign))
            else:
                raise ScenarioError(line_no, f"unknown factor kind {kind!r}")
        elif keyword == "generator":
            generator_lines.append((line_no, body))
        elif keyword == "expect":
            key, value = _parse_expect(body, line_no)
            if any(k == key for k, _ in expectations):
                raise ScenarioError(line_no, f"duplicate expectation {key!r}")
            expectations.append((key, value))
        else:
            raise ScenarioError(line_no, f"unknown keyword {keyword!r}")
    if version is None:
        raise ScenarioError(1, "empty scenario: missing version line")
    formal_count = len(factors) - len(torus_positions)
    gens = tuple(
        _parse_generator(body, labels, formal_count, torus_positions, line_no)
        for line_no, body in generator_lines
    )
    # a single torus block represents all torus coordinates in quotient_hodge
    hodge_factors = []
    torus_emitted = False
    for i, f in enumerate(factors):
        if i in torus_positions:
            if not torus_emitted:
                hodge_factors.append(TorusFactor())
                torus_emitted = True
        else:
            hodge_factors.append(f)
    return Scenario(
        name=name,
        version=version,
        model=TorusModel(tuple(labels)),
        factors=tuple(hodge_factors),
        generators=gens,
        expectations=tuple(expectations),
    )


def load_scenario(path) -> Scenario:
    return parse_scenario(Path(path).read_text())


def bundled_scenario_path(name: str) -> Path:
    """Path of a scenario shipped with the package, e.g. 'd8.scn'."""
    return Path(resources.files("abfib").joinpath("scenarios", name))


def resolve_scenario(name_or_path) -> Path:
    p = Path(name_or_path)
    if p.exists():
        return p
    names = [p.name] if p.suffix else [p.name + ".scn", p.name]
    for name in names:
        bundled = bundled_scenario_path(name)
        if bundled.exists():
            return bundled
    raise FileNotFoundError(f"no scenario file {name_or_path!r} (and no bundled {p.name!r})")


def run_scenario(sc: Scenario) -> ScenarioResult:
    formal_count = sum(1 for f in sc.factors if not isinstance(f, TorusFactor))
    group = generate_group(sc.generators, model=sc.model, parity_width=formal_count)
    forms = invariant_form_dims(group)
    total_dim = sc.model.n + sum(
        2 if isinstance(f, K3Factor) else 3 for f in sc.factors if not isinstance(f, TorusFactor)
    )
    hodge = None
    canonical_failure = None
    if total_dim == 4:
        try:
            hodge = quotient_hodge(sc.factors, group)
        except NonTrivialCanonical as e:
            canonical_failure = e.h40
    computed = {
        "order": group.order,
        "abelian": group.is_abelian,
        "max-order": group.max_element_order,
        "free": action_free(group),
        "forms": forms,
        "hodge": hodge.h_q if hodge else None,
    }
    checks = tuple(
        ExpectationCheck(key, expected, computed[key], computed[key] == expected)
        for key, expected in sc.expectations
    )
    return ScenarioResult(
        scenario=sc,
        order=group.order,
        abelian=group.is_abelian,
        max_order=group.max_element_order,
        free=computed["free"],
        delegated=len(delegated_elements(group)),
        forms=forms,
        hodge=hodge,
        canonical_failure=canonical_failure,
        checks=checks,
    )
