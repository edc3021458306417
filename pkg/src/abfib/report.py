"""Structured verification reports shared by the CLI subcommands.

A report is a versioned JSON-compatible tree: an invocation header plus a
flat list of records.  Every record carries a stable check id, a citation
string from the fixed table, a status, and a payload of exact values.

Statuses:

  DERIVED-PASS     a recomputation matched its expected value
  DERIVED-FAIL     it did not; the process exit code reflects this
  DOCUMENTED-RULE  the decisive content is imported rather than derived
                   here; the payload flags this and lists the side
                   conditions that were machine-checked
  DISCREPANCY      a recorded value disagrees with the recomputation; the
                   payload carries both sides, and each side's own
                   arithmetic is reproduced exactly

Sampling records report pass rates and verified degrees; rate thresholds
are regression guards that live in the acceptance tests, not here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import classifier, jacfib, scenario, weierstrass
from .citations import cite
from .classifier import DEFAULT_C1_WINDOW, HOLONOMY_CLASSES
from .sheafcalc import (
    ChernPair,
    chern,
    coh,
    coh_cotangent_twist,
    coh_line,
    riemann_roch,
)

SCHEMA_VERSION = 1

DERIVED_PASS = "DERIVED-PASS"
DERIVED_FAIL = "DERIVED-FAIL"
DOCUMENTED_RULE = "DOCUMENTED-RULE"
DISCREPANCY = "DISCREPANCY"


@dataclass(frozen=True)
class Record:
    check: str
    citation: str
    status: str
    payload: dict


@dataclass(frozen=True)
class Report:
    command: str
    arguments: dict
    seed: int
    records: tuple[Record, ...]

    @property
    def failed(self) -> tuple[Record, ...]:
        return tuple(r for r in self.records if r.status == DERIVED_FAIL)

    @property
    def exit_code(self) -> int:
        return 1 if self.failed else 0

    def to_tree(self) -> dict:
        counts = {
            "records": len(self.records),
            "derived_fail": sum(1 for r in self.records if r.status == DERIVED_FAIL),
            "documented": sum(1 for r in self.records if r.status == DOCUMENTED_RULE),
            "discrepancies": sum(1 for r in self.records if r.status == DISCREPANCY),
        }
        return {
            "schema": SCHEMA_VERSION,
            "invocation": {
                "command": self.command,
                "arguments": self.arguments,
                "seed": self.seed,
            },
            "records": [
                {
                    "check": r.check,
                    "citation": r.citation,
                    "status": r.status,
                    "payload": r.payload,
                }
                for r in self.records
            ],
            "summary": counts,
        }


def render_json(report: Report) -> str:
    return json.dumps(report.to_tree(), indent=2, sort_keys=True) + "\n"


def render_text(report: Report) -> str:
    tree = report.to_tree()
    inv = tree["invocation"]
    args = " ".join(f"{k}={inv['arguments'][k]}" for k in sorted(inv["arguments"]))
    s = tree["summary"]
    lines = [
        f"schema {tree['schema']}",
        f"command {inv['command']}",
        f"seed {inv['seed']}",
        f"arguments {args}" if args else "arguments -",
        (
            f"records {s['records']}"
            f" (fail {s['derived_fail']},"
            f" documented {s['documented']},"
            f" discrepancy {s['discrepancies']})"
        ),
    ]
    for r in tree["records"]:
        payload = json.dumps(r["payload"], sort_keys=True)
        lines.append(f"[{r['status']:<15}] {r['check']} | {r['citation']} | {payload}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# classify

# expected outcome and decisive rule per cohomology triple; (0,0,0) is
# class-dependent
_EXPECTED_TRIPLE = {
    (4, 6, 4): (classifier.ABELIAN_BASE_OBSTRUCTION, "abelian-albanese"),
    (3, 4, 3): (classifier.IMPOSSIBLE, "triple-343"),
    (2, 2, 2): (classifier.IMPOSSIBLE, "triple-222"),
    (1, 0, 1): (classifier.FORCED_SPLIT, "split-forced-101"),
    (0, 1, 0): (classifier.FORCED_COTANGENT, "matsushita-cotangent"),
    (0, 2, 0): (classifier.IMPOSSIBLE, "inequality-engine"),
}

_EXPECTED_000 = {
    "su2xsu2": (classifier.IMPOSSIBLE, "enriques-picard"),
    "su4": (classifier.FORCED_SPLIT, "split-forced-000"),
}

ADMISSIBLE_CLASS_IDS = frozenset({"trivial", "su2", "su3", "su4", "sp2"})


def _verdict_payload(v: classifier.Verdict) -> dict:
    return {
        "outcome": v.outcome,
        "documented": v.documented,
        "steps": [
            {"rule": s.rule, "checked": s.checked, "detail": s.detail} for s in v.steps
        ],
        "branches": [
            {"a": b.a, "b": b.b, "excluded_if": b.excluded_if} for b in v.branches
        ],
        "assumptions": list(v.assumptions),
    }


def _classify_records(h: classifier.HolonomyClass, window) -> list[Record]:
    out = []
    for t, v in classifier.classify(h, window):
        key = (t.h0, t.h1, t.h2)
        expected, rule = _EXPECTED_000[h.id] if key == (0, 0, 0) else _EXPECTED_TRIPLE[key]
        payload = _verdict_payload(v)
        payload["triple"] = list(key)
        payload["expected_outcome"] = expected
        if v.outcome != expected:
            status = DERIVED_FAIL
        elif v.documented:
            status = DOCUMENTED_RULE
            payload["asserted_without_derivation"] = True
            payload["checked_side_conditions"] = list(
                dict.fromkeys(s.rule for s in v.machine_steps)
            )
        else:
            status = DERIVED_PASS
        check = f"classify/{h.id}/({key[0]},{key[1]},{key[2]})"
        out.append(Record(check, cite(rule), status, payload))
    return out


def build_classify(selector: str, window=DEFAULT_C1_WINDOW, seed: int = 0) -> Report:
    """Report for one holonomy class (by id) or for the whole table."""
    classes = (
        HOLONOMY_CLASSES
        if selector == "all"
        else tuple(h for h in HOLONOMY_CLASSES if h.id == selector)
    )
    if not classes:
        raise ValueError(f"unknown holonomy class {selector!r}")
    records: list[Record] = []
    for h in classes:
        records.extend(_classify_records(h, window))
    if selector == "all":
        got = classifier.admissible_class_ids(window)
        records.append(
            Record(
                "classify/admissible-set",
                cite("split-enumeration"),
                DERIVED_PASS if got == ADMISSIBLE_CLASS_IDS else DERIVED_FAIL,
                {
                    "expected": sorted(ADMISSIBLE_CLASS_IDS),
                    "got": sorted(got),
                },
            )
        )
    return Report(
        "classify",
        {"class": selector, "window": list(window)},
        seed,
        tuple(records),
    )


# ---------------------------------------------------------------------------
# torus scenarios

_EXPECT_CITATIONS = {
    "order": "group-closure",
    "abelian": "group-closure",
    "max-order": "group-closure",
    "free": "snf-fixed-point",
    "forms": "invariant-forms",
    "hodge": "hodge-quotient",
}


def build_torus(path, seed: int = 0) -> Report:
    sc = scenario.load_scenario(scenario.resolve_scenario(path))
    res = scenario.run_scenario(sc)
    name = sc.name
    records = [
        Record(
            f"torus/{name}/group",
            cite("group-closure"),
            DERIVED_PASS,
            {
                "order": res.order,
                "abelian": res.abelian,
                "max_order": res.max_order,
                "generators": len(sc.generators),
            },
        )
    ]
    if sc.model.n > 0:
        records.append(
            Record(
                f"torus/{name}/free",
                cite("snf-fixed-point"),
                DERIVED_PASS if res.free else DERIVED_FAIL,
                {"free": res.free},
            )
        )
    if res.delegated:
        records.append(
            Record(
                f"torus/{name}/delegated",
                cite("formal-factor-action"),
                DOCUMENTED_RULE,
                {"elements": res.delegated, "asserted_without_derivation": True},
            )
        )
    records.append(
        Record(
            f"torus/{name}/forms",
            cite("invariant-forms"),
            DERIVED_PASS,
            {"dims": list(res.forms)},
        )
    )
    if res.canonical_failure is not None:
        records.append(
            Record(
                f"torus/{name}/hodge",
                cite("canonical-triviality"),
                DERIVED_FAIL,
                {"h40": res.canonical_failure, "expected_h40": 1},
            )
        )
    elif res.hodge is not None:
        records.append(
            Record(
                f"torus/{name}/hodge",
                cite("hodge-quotient"),
                DERIVED_PASS,
                {"h_q": list(res.hodge.h_q), "h_p0": list(res.hodge.h_p0)},
            )
        )
    for c in res.checks:
        records.append(
            Record(
                f"torus/{name}/expect/{c.key}",
                cite(_EXPECT_CITATIONS[c.key]),
                DERIVED_PASS if c.ok else DERIVED_FAIL,
                {"expected": _plain(c.expected), "actual": _plain(c.actual)},
            )
        )
    return Report("torus", {"scenario": str(path)}, seed, tuple(records))


def _plain(value):
    if isinstance(value, tuple):
        return list(value)
    return value


# ---------------------------------------------------------------------------
# Weierstrass sampling and parameter counts

# the two fixed configurations whose recorded dimension counts disagree
# with the plane cohomology recomputation
STATED_SINGLE = {"l": 3, "dims": (13, 19), "params": 23}
STATED_PRODUCT = {"l": 1, "l2": 2, "dims": (5, 7, 9, 13), "params": 24}


def _h0_via_rr(k: int) -> int:
    # second arithmetic path: chi(O(k)) with vanishing h^1, h^2 for k >= 0
    assert k >= 0
    return riemann_roch(ChernPair(1, k, 0))


def _param_record(check: str, degrees: tuple[int, ...], rescalings: int) -> Record:
    dims = [coh_line(k).h0 for k in degrees]
    cross = [_h0_via_rr(k) for k in degrees]
    params = weierstrass.param_count(dims, rescalings)
    return Record(
        check,
        cite("param-count"),
        DERIVED_PASS if dims == cross else DERIVED_FAIL,
        {
            "degrees": list(degrees),
            "dims": dims,
            "dims_via_riemann_roch": cross,
            "rescalings": rescalings,
            "params": params,
        },
    )


def _discrepancy_record(check: str, degrees, stated_dims, stated_params, rescalings) -> Record:
    recomputed_dims = [coh_line(k).h0 for k in degrees]
    stated_total = weierstrass.param_count(list(stated_dims), rescalings)
    recomputed_total = weierstrass.param_count(recomputed_dims, rescalings)
    return Record(
        check,
        cite("stated-dimension-count"),
        DISCREPANCY,
        {
            "degrees": list(degrees),
            "rescalings": rescalings,
            "stated": {
                "dims": list(stated_dims),
                "sum": sum(stated_dims),
                "params": stated_total,
            },
            "recomputed": {
                "dims": recomputed_dims,
                "sum": sum(recomputed_dims),
                "params": recomputed_total,
                "citation": cite("recomputed-dimension-count"),
            },
            "stated_arithmetic_ok": stated_total == stated_params,
        },
    )


def single_family_discrepancy() -> Record:
    l = STATED_SINGLE["l"]
    return _discrepancy_record(
        "weierstrass/param-count/elliptic-times-cy3",
        (4 * l, 6 * l),
        STATED_SINGLE["dims"],
        STATED_SINGLE["params"],
        rescalings=1,
    )


def fibre_product_discrepancy() -> Record:
    l, l2 = STATED_PRODUCT["l"], STATED_PRODUCT["l2"]
    return _discrepancy_record(
        "weierstrass/param-count/fibre-product",
        (4 * l, 6 * l, 4 * l2, 6 * l2),
        STATED_PRODUCT["dims"],
        STATED_PRODUCT["params"],
        rescalings=2,
    )


def _sampling_payload(rec: weierstrass.SamplingRecord) -> dict:
    failures = [
        {"trial": o.index, "witness": list(o.witness)}
        for o in rec.outcomes
        if not o.ok
    ]
    return {
        "p": rec.p,
        "seed": rec.seed,
        "trials": rec.trials,
        "passes": rec.passes,
        "rate": rec.rate,
        "discriminant_degree": rec.degree,
        "degree_ok": rec.degree_ok,
        "failures": failures,
        "caveat": weierstrass.CERT_CAVEAT,
    }


def build_weierstrass(
    l: int,
    p: int,
    seed: int,
    trials: int,
    fibre_product: bool = False,
    l2: int = 1,
) -> Report:
    bundle, coeff = weierstrass.weierstrass_bundle_degrees(l)
    smooth = weierstrass.smoothness_trials(l, p, seed, trials)
    records = [
        Record(
            "weierstrass/degrees",
            cite("weierstrass-model"),
            DERIVED_PASS if smooth.degree_ok else DERIVED_FAIL,
            {
                "l": l,
                "bundle_degrees": list(bundle),
                "coefficient_degrees": list(coeff),
                "discriminant_degree": smooth.degree,
                "degree_verified_on_samples": smooth.degree_ok,
            },
        ),
        Record(
            "weierstrass/smoothness",
            cite("finite-field-scan"),
            DERIVED_PASS if smooth.degree_ok else DERIVED_FAIL,
            _sampling_payload(smooth),
        ),
        _param_record("weierstrass/param-count", (4 * l, 6 * l), 1),
    ]
    if l == STATED_SINGLE["l"]:
        records.append(single_family_discrepancy())
    if fibre_product:
        trans = weierstrass.transversality_trials(l, l2, p, seed, trials)
        payload = _sampling_payload(trans)
        payload["l2"] = l2
        records.append(
            Record(
                "weierstrass/transversality",
                cite("finite-field-scan"),
                DERIVED_PASS if trans.degree_ok else DERIVED_FAIL,
                payload,
            )
        )
        records.append(
            _param_record(
                "weierstrass/param-count/product", (4 * l, 6 * l, 4 * l2, 6 * l2), 2
            )
        )
        if (l, l2) == (STATED_PRODUCT["l"], STATED_PRODUCT["l2"]):
            records.append(fibre_product_discrepancy())
    args = {"l": l, "p": p, "trials": trials}
    if fibre_product:
        args["fibre_product"] = True
        args["l2"] = l2
    return Report("weierstrass", args, seed, tuple(records))


# ---------------------------------------------------------------------------
# Jacobian fibrations

_JACFIB_EXPECTED = {
    "O(-1) + O(-2)": {"dimension": 84, "params": 75, "leray": (1, 0, 0, 0, 1)},
    "Omega1": {"dimension": 28, "params": 19, "leray": (1, 0, 1, 0, 1)},
}


def build_jacfib(seed: int = 0) -> Report:
    rows = jacfib.classify_jacobian_fibrations()
    records: list[Record] = []
    for row in rows:
        check = f"jacfib/case/{row.case_id}"
        if row.case_id in _JACFIB_EXPECTED:
            want = _JACFIB_EXPECTED[row.case_id]
            ok = (
                row.verdict.outcome == classifier.POSSIBLE
                and row.space.dimension == want["dimension"]
                and row.param_count == want["params"]
                and row.leray_h == want["leray"]
            )
            records.append(
                Record(
                    check,
                    cite("genus-two-branch"),
                    DERIVED_PASS if ok else DERIVED_FAIL,
                    {
                        "outcome": row.verdict.outcome,
                        "d": row.d,
                        "family_type": row.family_type,
                        "dimension": row.space.dimension,
                        "expected_dimension": want["dimension"],
                        "params": row.param_count,
                        "expected_params": want["params"],
                        "leray_h": list(row.leray_h),
                        "expected_leray_h": list(want["leray"]),
                        "assumptions": list(row.verdict.assumptions),
                    },
                )
            )
        elif row.verdict.documented:
            c = chern(row.w)
            records.append(
                Record(
                    check,
                    cite("nodal-c1"),
                    DOCUMENTED_RULE,
                    {
                        "outcome": row.verdict.outcome,
                        "asserted_without_derivation": True,
                        "checked_side_conditions": [
                            s.rule for s in row.verdict.machine_steps
                        ],
                        "c1": c.c1,
                        "required_c1": jacfib.CANONICAL_R2_DEGREE,
                    },
                )
            )
        else:
            forced_degrees = [row.space.degrees[i] for i in row.space.forced_zero]
            ok = (
                row.verdict.outcome == classifier.IMPOSSIBLE
                and forced_degrees == [-6, -3]
            )
            records.append(
                Record(
                    check,
                    cite("repeated-root"),
                    DERIVED_PASS if ok else DERIVED_FAIL,
                    {
                        "outcome": row.verdict.outcome,
                        "degrees": list(row.space.degrees),
                        "dims": list(row.space.dims),
                        "forced_zero_degrees": forced_degrees,
                        "assumptions": list(row.verdict.assumptions),
                    },
                )
            )
    admissible = {r.case_id: r.param_count for r in jacfib.admissible_cases()}
    records.append(
        Record(
            "jacfib/admissible-set",
            cite("param-count"),
            (
                DERIVED_PASS
                if admissible == {k: v["params"] for k, v in _JACFIB_EXPECTED.items()}
                else DERIVED_FAIL
            ),
            {"admissible": {k: admissible[k] for k in sorted(admissible)}},
        )
    )
    records.append(
        Record(
            "jacfib/beauville-mukai",
            cite("beauville-mukai"),
            DOCUMENTED_RULE,
            {"case": "Omega1", "asserted_without_derivation": True},
        )
    )
    records.append(
        Record(
            "jacfib/kummer-example",
            cite("kummer-13"),
            DOCUMENTED_RULE,
            {"polarization": [1, 3], "asserted_without_derivation": True},
        )
    )
    return Report("jacfib", {}, seed, tuple(records))


# ---------------------------------------------------------------------------
# cohomology property suite

SERRE_WINDOW = (-20, 20)
RR_WINDOW = (-15, 15)
EULER_WINDOW = (-10, 10)
BOREL_WEIL_MAX = 30


def _property_record(check: str, rule: str, window, failures: list) -> Record:
    return Record(
        check,
        cite(rule),
        DERIVED_PASS if not failures else DERIVED_FAIL,
        {"window": list(window), "failures": failures},
    )


def build_properties(seed: int = 0) -> Report:
    lo, hi = SERRE_WINDOW
    serre_fail = []
    for k in range(lo, hi + 1):
        v, w = coh_line(k), coh_line(-k - 3)
        if (v.h0, v.h1, v.h2) != (w.h2, w.h1, w.h0):
            serre_fail.append(k)

    lo, hi = RR_WINDOW
    rr_fail = []
    for a in range(lo, hi + 1):
        for b in range(lo, hi + 1):
            e = classifier.split_pair(a, b)
            v = coh(e)
            if v.h0 - v.h1 + v.h2 != riemann_roch(chern(e)):
                rr_fail.append([a, b])

    lo, hi = EULER_WINDOW
    euler_fail = []
    for k in range(lo, hi + 1):
        v = coh_cotangent_twist(k)
        chi = v.h0 - v.h1 + v.h2
        chi_seq = 3 * riemann_roch(ChernPair(1, k - 1, 0)) - riemann_roch(
            ChernPair(1, k, 0)
        )
        # Serre pairing: Omega^1 is self-dual up to the canonical twist
        dual = coh_cotangent_twist(-k)
        if chi != chi_seq or (v.h0, v.h1, v.h2) != (dual.h2, dual.h1, dual.h0):
            euler_fail.append(k)

    bw_fail = []
    for n in range(BOREL_WEIL_MAX + 1):
        if jacfib.borel_weil_dim(jacfib.GL3Weight(n, 0, 0)) != coh_line(n).h0:
            bw_fail.append(n)

    records = (
        _property_record("properties/serre-duality", "serre-duality", SERRE_WINDOW, serre_fail),
        _property_record("properties/riemann-roch", "riemann-roch", RR_WINDOW, rr_fail),
        _property_record("properties/euler-sequence", "euler-sequence", EULER_WINDOW, euler_fail),
        _property_record(
            "properties/borel-weil", "borel-weil", (0, BOREL_WEIL_MAX), bw_fail
        ),
    )
    return Report("properties", {}, seed, records)


# ---------------------------------------------------------------------------
# the aggregate run

BUNDLED_SCENARIOS = ("d8.scn", "bielliptic.scn", "enriques.scn", "empty.scn")


def build_report_all(seed: int = 0) -> Report:
    records: list[Record] = []
    records.extend(build_classify("all", seed=seed).records)
    for name in BUNDLED_SCENARIOS:
        records.extend(build_torus(name, seed=seed).records)
    records.extend(build_properties(seed=seed).records)
    records.extend(
        build_weierstrass(1, 101, seed, 20, fibre_product=True, l2=1).records
    )
    records.append(single_family_discrepancy())
    records.append(fibre_product_discrepancy())
    records.extend(build_jacfib(seed=seed).records)
    records.append(
        Record(
            "scope/substituted-checks",
            cite("scope-note"),
            DOCUMENTED_RULE,
            {
                "asserted_without_derivation": True,
                "not_recomputable": [
                    "moduli of K3 surfaces",
                    "hyperkahler metrics",
                    "holonomy group computation",
                ],
            },
        )
    )
    return Report("report", {"scope": "all"}, seed, tuple(records))
