"""Weierstrass families y^2 z = x^3 + a x z^2 + b z^3 over the plane.

a and b are homogeneous forms of degrees 4l and 6l; the discriminant
4a^3 + 27b^2 has degree 12l.  Smoothness and transversality are certified
by exhaustive scans over the F_p-rational points of the plane, exact but
explicitly NOT a statement about the algebraic closure.  Scans run in
lexicographic order over normalized representatives, so a reported witness
is always the lexicographically smallest one.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

MAX_SCAN_PRIME = 257

CERT_CAVEAT = (
    "certificate covers F_p-rational points only, not the algebraic closure"
)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class HomogPoly:
    """Homogeneous polynomial in x0, x1, x2 with exact coefficients.

    terms maps exponent triples to nonzero coefficients: ints in [1, p) over
    F_p, Fractions over QQ (p is None).  The zero polynomial is terms = ()
    with its declared degree.
    """

    degree: int
    terms: tuple[tuple[tuple[int, int, int], object], ...]
    p: int | None = None

    def __post_init__(self):
        for (i, j, k), c in self.terms:
            if i + j + k != self.degree:
                raise ValueError(f"term x0^{i}*x1^{j}*x2^{k} breaks homogeneity")
            if self.p is None:
                if not isinstance(c, Fraction) or c == 0:
                    raise ValueError("QQ coefficients must be nonzero Fractions")
            elif not isinstance(c, int) or not 0 < c < self.p:
                raise ValueError("F_p coefficients must be reduced nonzero ints")

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, i: int, j: int, k: int):
        for e, c in self.terms:
            if e == (i, j, k):
                return c
        return Fraction(0) if self.p is None else 0


def _make(degree: int, coeffs: dict, p: int | None) -> HomogPoly:
    clean = {}
    for e, c in coeffs.items():
        c = c % p if p is not None else Fraction(c)
        if c:
            clean[e] = c
    terms = tuple(sorted(clean.items(), reverse=True))
    return HomogPoly(degree, terms, p)


def poly(degree: int, coeffs: dict, p: int | None = None) -> HomogPoly:
    """Build a polynomial from {(i,j,k): coefficient}; reduces and validates."""
    return _make(degree, coeffs, p)


def zero_poly(degree: int, p: int | None = None) -> HomogPoly:
    return HomogPoly(degree, (), p)


def _same_field(f: HomogPoly, g: HomogPoly):
    if f.p != g.p:
        raise ValueError("mixed coefficient fields")


def poly_add(f: HomogPoly, g: HomogPoly) -> HomogPoly:
    _same_field(f, g)
    if f.degree != g.degree:
        raise ValueError("cannot add forms of different degrees")
    acc = dict(f.terms)
    for e, c in g.terms:
        acc[e] = acc.get(e, 0) + c
    return _make(f.degree, acc, f.p)


def poly_mul(f: HomogPoly, g: HomogPoly) -> HomogPoly:
    _same_field(f, g)
    acc = {}
    for (i1, j1, k1), c1 in f.terms:
        for (i2, j2, k2), c2 in g.terms:
            e = (i1 + i2, j1 + j2, k1 + k2)
            acc[e] = acc.get(e, 0) + c1 * c2
    return _make(f.degree + g.degree, acc, f.p)


def poly_scale(c, f: HomogPoly) -> HomogPoly:
    return _make(f.degree, {e: c * v for e, v in f.terms}, f.p)


def poly_pow(f: HomogPoly, n: int) -> HomogPoly:
    if n < 1:
        raise ValueError("exponent must be positive")
    out = f
    for _ in range(n - 1):
        out = poly_mul(out, f)
    return out


def derivative(f: HomogPoly, var: int) -> HomogPoly:
    acc = {}
    for e, c in f.terms:
        if e[var]:
            ne = list(e)
            ne[var] -= 1
            acc[tuple(ne)] = acc.get(tuple(ne), 0) + c * e[var]
    return _make(max(f.degree - 1, 0), acc, f.p)


# ---------------------------------------------------------------------------
# text format: sum of monomials c*x0^i*x1^j*x2^k


_TERM = re.compile(r"([+-])([^+-]+)")
_FACTOR = re.compile(r"^x([012])(?:\^(\d+))?$")


def parse_poly(text: str, p: int | None = None, degree: int | None = None) -> HomogPoly:
    s = text.replace(" ", "")
    if s in ("", "0"):
        return zero_poly(degree or 0, p)
    if s[0] not in "+-":
        s = "+" + s
    acc: dict = {}
    deg = None
    covered = 0
    for m in _TERM.finditer(s):
        if m.start() != covered:
            raise ValueError(f"cannot parse polynomial near {s[covered:m.start()]!r}")
        covered = m.end()
        sign = -1 if m.group(1) == "-" else 1
        exps = [0, 0, 0]
        coef = None
        for part in m.group(2).split("*"):
            fm = _FACTOR.match(part)
            if fm:
                exps[int(fm.group(1))] += int(fm.group(2) or 1)
            elif coef is None:
                try:
                    coef = int(part) if p is not None else Fraction(part)
                except ValueError:
                    raise ValueError(f"bad coefficient {part!r}") from None
            else:
                raise ValueError(f"bad factor {part!r}")
        if coef is None:
            coef = 1 if p is not None else Fraction(1)
        e = tuple(exps)
        if deg is None:
            deg = sum(e)
        elif sum(e) != deg:
            raise ValueError("terms have mixed total degrees")
        acc[e] = acc.get(e, 0) + sign * coef
    if covered != len(s):
        raise ValueError(f"cannot parse polynomial near {s[covered:]!r}")
    if degree is not None and deg != degree:
        raise ValueError(f"expected degree {degree}, parsed {deg}")
    return _make(deg, acc, p)


def format_poly(f: HomogPoly) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for (i, j, k), c in f.terms:
        factors = []
        for idx, e in enumerate((i, j, k)):
            if e == 1:
                factors.append(f"x{idx}")
            elif e > 1:
                factors.append(f"x{idx}^{e}")
        mag = abs(c) if f.p is None else c
        body = "*".join([str(mag)] + factors) if (mag != 1 or not factors) else "*".join(factors)
        if f.p is None and c < 0:
            parts.append(("- " if parts else "-") + body)
        else:
            parts.append(("+ " if parts else "") + body)
    return " ".join(parts)


# ---------------------------------------------------------------------------
# Weierstrass families


@dataclass(frozen=True)
class WeierstrassFamily:
    l: int
    a: HomogPoly
    b: HomogPoly

    def __post_init__(self):
        if self.l < 1:
            raise ValueError("l must be >= 1")
        if self.a.degree != 4 * self.l or self.b.degree != 6 * self.l:
            raise ValueError(f"need deg a = {4 * self.l} and deg b = {6 * self.l}")
        _same_field(self.a, self.b)


def weierstrass_bundle_degrees(l: int) -> tuple[tuple[int, int, int], tuple[int, int]]:
    """Dual-bundle summand degrees (2l, 3l, 0) and section degrees (4l, 6l)."""
    if l < 1:
        raise ValueError("l must be >= 1")
    return (2 * l, 3 * l, 0), (4 * l, 6 * l)


def discriminant(w: WeierstrassFamily) -> HomogPoly:
    """4 a^3 + 27 b^2, degree 12l; needs characteristic outside {2, 3}."""
    p = w.a.p
    if p in (2, 3):
        raise ValueError("discriminant arithmetic needs characteristic outside {2, 3}")
    four = 4 if p is not None else Fraction(4)
    twenty_seven = 27 if p is not None else Fraction(27)
    return poly_add(
        poly_scale(four, poly_pow(w.a, 3)), poly_scale(twenty_seven, poly_pow(w.b, 2))
    )


# ---------------------------------------------------------------------------
# finite-field scans


@lru_cache(maxsize=None)
def _plane_points(p: int) -> np.ndarray:
    """Normalized representatives (first nonzero coordinate 1), lex ascending."""
    pts = [(0, 0, 1)]
    pts += [(0, 1, t) for t in range(p)]
    pts += [(1, s, t) for s in range(p) for t in range(p)]
    return np.array(pts, dtype=np.int64)


def _pow_table(p: int, max_exp: int) -> np.ndarray:
    tab = np.ones((p, max_exp + 1), dtype=np.int64)
    for e in range(1, max_exp + 1):
        tab[:, e] = (tab[:, e - 1] * np.arange(p, dtype=np.int64)) % p
    return tab


def _eval_many(f: HomogPoly, pts: np.ndarray, tab: np.ndarray, p: int) -> np.ndarray:
    acc = np.zeros(len(pts), dtype=np.int64)
    for (i, j, k), c in f.terms:
        v = tab[pts[:, 0], i]
        v = (v * tab[pts[:, 1], j]) % p
        v = (v * tab[pts[:, 2], k]) % p
        acc = (acc + c * v) % p
    return acc


def _check_scan_args(*polys):
    p = polys[0].p
    if p is None:
        raise ValueError("scans run over a finite field; coefficients are in QQ")
    if not _is_prime(p) or p in (2, 3):
        raise ValueError(f"p = {p} must be a prime outside {{2, 3}}")
    if p > MAX_SCAN_PRIME:
        raise ValueError(f"p = {p} exceeds the scan budget {MAX_SCAN_PRIME}")
    for f in polys:
        if f.p != p:
            raise ValueError("mixed coefficient fields")
        if f.is_zero():
            raise ValueError("zero polynomial")
    return p


@dataclass(frozen=True)
class ScanResult:
    """Verdict of a projective F_p scan with the lex-smallest witness."""

    ok: bool
    witness: tuple[int, int, int] | None
    points: int
    caveat: str = CERT_CAVEAT

    def __bool__(self) -> bool:
        return self.ok


def is_smooth_curve(f: HomogPoly) -> ScanResult:
    """TRUE iff no F_p-point annihilates f and all three partials."""
    p = _check_scan_args(f)
    pts = _plane_points(p)
    tab = _pow_table(p, f.degree)
    mask = _eval_many(f, pts, tab, p) == 0
    for var in range(3):
        mask &= _eval_many(derivative(f, var), pts, tab, p) == 0
    if mask.any():
        w = pts[int(np.argmax(mask))]
        return ScanResult(False, (int(w[0]), int(w[1]), int(w[2])), len(pts))
    return ScanResult(True, None, len(pts))


def transversal_intersection(f: HomogPoly, g: HomogPoly) -> ScanResult:
    """TRUE iff the gradients are independent at every common F_p-zero."""
    p = _check_scan_args(f, g)
    pts = _plane_points(p)
    tab = _pow_table(p, max(f.degree, g.degree))
    common = (_eval_many(f, pts, tab, p) == 0) & (_eval_many(g, pts, tab, p) == 0)
    df = [_eval_many(derivative(f, v), pts, tab, p) for v in range(3)]
    dg = [_eval_many(derivative(g, v), pts, tab, p) for v in range(3)]
    dependent = np.ones(len(pts), dtype=bool)
    for u, v in ((0, 1), (0, 2), (1, 2)):
        dependent &= (df[u] * dg[v] - df[v] * dg[u]) % p == 0
    bad = common & dependent
    if bad.any():
        w = pts[int(np.argmax(bad))]
        return ScanResult(False, (int(w[0]), int(w[1]), int(w[2])), len(pts))
    return ScanResult(True, None, len(pts))


# ---------------------------------------------------------------------------
# parameter counts and sampling


def param_count(dims, rescalings: int) -> int:
    """Sum of section-space dimensions minus rescalings minus dim PGL(3) = 8."""
    return sum(dims) - rescalings - 8


def random_homog(degree: int, p: int, rng: random.Random) -> HomogPoly:
    coeffs = {
        (i, j, degree - i - j): rng.randrange(p)
        for i in range(degree + 1)
        for j in range(degree - i + 1)
    }
    return _make(degree, coeffs, p)


def random_family(l: int, p: int, rng: random.Random) -> WeierstrassFamily:
    return WeierstrassFamily(l, random_homog(4 * l, p, rng), random_homog(6 * l, p, rng))


@dataclass(frozen=True)
class TrialOutcome:
    index: int
    ok: bool
    witness: tuple[int, int, int] | None


@dataclass(frozen=True)
class SamplingRecord:
    """Pass rate of a seeded sampling run; failures are resampled, not fatal."""

    kind: str
    p: int
    seed: int
    trials: int
    passes: int
    degree: int
    degree_ok: bool
    outcomes: tuple[TrialOutcome, ...]

    @property
    def rate(self) -> str:
        return f"{self.passes}/{self.trials}"


def smoothness_trials(l: int, p: int, seed: int, trials: int) -> SamplingRecord:
    """Sample families, test discriminant smoothness, record the pass rate."""
    rng = random.Random(seed)
    outcomes = []
    degree_ok = True
    for t in range(trials):
        delta = discriminant(random_family(l, p, rng))
        degree_ok &= delta.degree == 12 * l
        scan = is_smooth_curve(delta)
        outcomes.append(TrialOutcome(t, scan.ok, scan.witness))
    return SamplingRecord(
        kind="discriminant-smoothness",
        p=p,
        seed=seed,
        trials=trials,
        passes=sum(o.ok for o in outcomes),
        degree=12 * l,
        degree_ok=degree_ok,
        outcomes=tuple(outcomes),
    )


def transversality_trials(l1: int, l2: int, p: int, seed: int, trials: int) -> SamplingRecord:
    """Sample two families and test that their discriminants meet transversally."""
    rng = random.Random(seed)
    outcomes = []
    degree_ok = True
    for t in range(trials):
        d1 = discriminant(random_family(l1, p, rng))
        d2 = discriminant(random_family(l2, p, rng))
        degree_ok &= d1.degree == 12 * l1 and d2.degree == 12 * l2
        scan = transversal_intersection(d1, d2)
        outcomes.append(TrialOutcome(t, scan.ok, scan.witness))
    return SamplingRecord(
        kind="discriminant-transversality",
        p=p,
        seed=seed,
        trials=trials,
        passes=sum(o.ok for o in outcomes),
        degree=12 * l1,
        degree_ok=degree_ok,
        outcomes=tuple(outcomes),
    )
