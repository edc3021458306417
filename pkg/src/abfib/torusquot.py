"""Finite affine group actions on products of elliptic curves.

A product of elliptic curves E_1 x ... x E_n is modelled as C^n / Z^{2n},
with lattice coordinates (real unit, period unit) per factor.  Periods are
opaque labels, never numbers: two coordinates may be swapped only when their
labels agree, and translations are exact rational combinations of 1 and the
factor's own period.  Every linear part is a signed permutation, which keeps
the induced lattice map integral no matter what the periods are.

Fixed-point analysis is exact: (L - I) z = -t over the torus is solved by
Smith normal form, and an independent exhaustive search over a torsion grid
backs the result (solutions, when they exist, have denominator dividing
twice the translation denominator, because the nonzero elementary divisors
of L - I are 1 or 2 for signed permutations).

Hodge bookkeeping for quotients multiplies graded characters of the torus
block with formal K3 / Calabi-Yau three-fold factors that are nothing but a
sign on their top holomorphic form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

CLOSURE_CAP = 1024


class ClosureError(RuntimeError):
    """Group closure exceeded the element cap."""


class NonTrivialCanonical(ValueError):
    """Quotient has h^{4,0} != 1; carries the offending value."""

    def __init__(self, h40):
        super().__init__(f"quotient canonical bundle is non-trivial: h^(4,0) = {h40}")
        self.h40 = h40


@dataclass(frozen=True)
class TorusModel:
    """Product of elliptic curves; equal labels mean the same curve."""

    labels: tuple[str, ...]

    @property
    def n(self) -> int:
        return len(self.labels)


def _mod1(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True)
class AffineAuto:
    """z -> L z + t with L a signed permutation, t in lattice coordinates.

    `that` interleaves (real, period) parts: coordinate i translates by
    that[2i] + that[2i+1] * tau_i.  Entries are canonical representatives
    in [0, 1).
    """

    model: TorusModel
    L: tuple[tuple[int, ...], ...]
    that: tuple[Fraction, ...]

    def __post_init__(self):
        n = self.model.n
        if len(self.L) != n or any(len(r) != n for r in self.L):
            raise ValueError("linear part has wrong shape")
        for i in range(n):
            row = [j for j in range(n) if self.L[i][j]]
            col = [j for j in range(n) if self.L[j][i]]
            if len(row) != 1 or len(col) != 1 or self.L[i][row[0]] not in (-1, 1):
                raise ValueError("linear part is not a signed permutation")
            j = row[0]
            if self.model.labels[i] != self.model.labels[j]:
                raise ValueError(
                    f"coordinate {j} maps onto coordinate {i} but the curves differ"
                )
        if len(self.that) != 2 * n:
            raise ValueError("translation has wrong shape")
        for x in self.that:
            if not (0 <= x < 1):
                raise ValueError("translation not reduced to [0,1)")

    @property
    def Lhat(self) -> tuple[tuple[int, ...], ...]:
        """Induced 2n x 2n lattice map: each L entry becomes a scalar 2-block."""
        n = self.model.n
        out = [[0] * (2 * n) for _ in range(2 * n)]
        for i in range(n):
            for j in range(n):
                out[2 * i][2 * j] = self.L[i][j]
                out[2 * i + 1][2 * j + 1] = self.L[i][j]
        return tuple(tuple(r) for r in out)

    @property
    def shifts(self) -> tuple[tuple[Fraction, Fraction], ...]:
        """Per-coordinate translation as (real, period-coefficient) pairs."""
        return tuple((self.that[2 * i], self.that[2 * i + 1]) for i in range(self.model.n))

    def is_identity(self) -> bool:
        n = self.model.n
        return all(self.L[i][j] == (i == j) for i in range(n) for j in range(n)) and not any(
            self.that
        )


def affine_auto(model: TorusModel, L, shifts) -> AffineAuto:
    """Build an automorphism from per-coordinate (real, period) shifts."""
    that = []
    for re, tau in shifts:
        that.append(_mod1(Fraction(re)))
        that.append(_mod1(Fraction(tau)))
    return AffineAuto(model, tuple(tuple(int(x) for x in row) for row in L), tuple(that))


def identity_auto(model: TorusModel) -> AffineAuto:
    n = model.n
    L = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    return AffineAuto(model, L, (Fraction(0),) * (2 * n))


def compose(f: AffineAuto, g: AffineAuto) -> AffineAuto:
    """f after g: z -> L_f L_g z + L_f t_g + t_f, translation reduced mod 1."""
    if f.model != g.model:
        raise ValueError("automorphisms live on different models")
    n = f.model.n
    L = tuple(
        tuple(sum(f.L[i][k] * g.L[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )
    that = list(f.that)
    for i in range(n):
        for j in range(n):
            if f.L[i][j]:
                that[2 * i] += f.L[i][j] * g.that[2 * j]
                that[2 * i + 1] += f.L[i][j] * g.that[2 * j + 1]
    return AffineAuto(f.model, L, tuple(_mod1(x) for x in that))


@dataclass(frozen=True)
class GroupElement:
    """Torus automorphism plus a parity bit per formal (K3/CY3) factor."""

    auto: AffineAuto
    parities: tuple[int, ...] = ()

    def __post_init__(self):
        if any(p not in (0, 1) for p in self.parities):
            raise ValueError("parities must be 0 or 1")

    def is_identity(self) -> bool:
        return self.auto.is_identity() and not any(self.parities)


def compose_elements(f: GroupElement, g: GroupElement) -> GroupElement:
    if len(f.parities) != len(g.parities):
        raise ValueError("elements carry different formal-factor counts")
    return GroupElement(
        compose(f.auto, g.auto), tuple(a ^ b for a, b in zip(f.parities, g.parities))
    )


class FiniteGroup:
    """Closure of a generating set, identity first, canonical translations."""

    def __init__(self, model: TorusModel, elements, generators):
        self.model = model
        self.elements = tuple(elements)
        self.generators = tuple(generators)
        self._index = {self._key(e): i for i, e in enumerate(self.elements)}

    @staticmethod
    def _key(e: GroupElement):
        return (e.auto.L, e.auto.that, e.parities)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> GroupElement:
        return self.elements[0]

    def index(self, e: GroupElement) -> int:
        return self._index[self._key(e)]

    def multiply(self, i: int, j: int) -> int:
        return self.index(compose_elements(self.elements[i], self.elements[j]))

    @property
    def is_abelian(self) -> bool:
        gens = self.generators or self.elements
        for a in gens:
            for b in gens:
                if self._key(compose_elements(a, b)) != self._key(compose_elements(b, a)):
                    return False
        return True

    def element_order(self, e: GroupElement) -> int:
        k, acc = 1, e
        while not acc.is_identity():
            acc = compose_elements(acc, e)
            k += 1
            if k > self.order:
                raise AssertionError("element order exceeds group order")
        return k

    @property
    def element_orders(self) -> tuple[int, ...]:
        return tuple(self.element_order(e) for e in self.elements)

    @property
    def max_element_order(self) -> int:
        return max(self.element_orders)


def generate_group(
    gens, model: TorusModel | None = None, parity_width: int | None = None
) -> FiniteGroup:
    """BFS closure under composition mod lattice; capped at CLOSURE_CAP."""
    gens = [g if isinstance(g, GroupElement) else GroupElement(g) for g in gens]
    if model is None:
        if not gens:
            raise ValueError("empty generating set needs an explicit model")
        model = gens[0].auto.model
    if parity_width is None:
        parity_width = len(gens[0].parities) if gens else 0
    width = parity_width
    for g in gens:
        if g.auto.model != model:
            raise ValueError("generators live on different models")
        if len(g.parities) != width:
            raise ValueError("generators carry different formal-factor counts")
    ident = GroupElement(identity_auto(model), (0,) * width)
    elements = [ident]
    seen = {FiniteGroup._key(ident)}
    frontier = [ident]
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                h = compose_elements(g, e)
                k = FiniteGroup._key(h)
                if k not in seen:
                    seen.add(k)
                    elements.append(h)
                    nxt.append(h)
                    if len(elements) > CLOSURE_CAP:
                        raise ClosureError(f"closure exceeded {CLOSURE_CAP} elements")
        frontier = nxt
    return FiniteGroup(model, elements, gens)


# ---------------------------------------------------------------------------
# Smith normal form and fixed points


def smith_normal_form(mat):
    """U M V = D with U, V unimodular and D diagonal, d_k | d_{k+1}.

    Plain integer row/column reduction; sizes here are at most 8x8.
    """
    A = [list(r) for r in mat]
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_sub(i, j, q):  # row_i -= q * row_j
        A[i] = [a - q * b for a, b in zip(A[i], A[j])]
        U[i] = [a - q * b for a, b in zip(U[i], U[j])]

    def col_sub(i, j, q):  # col_i -= q * col_j
        for r in A:
            r[i] -= q * r[j]
        for r in V:
            r[i] -= q * r[j]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def col_swap(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    t = 0
    while t < min(m, n):
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        row_swap(t, pivot[0])
        col_swap(t, pivot[1])
        while True:
            for i in range(t + 1, m):
                while A[i][t]:
                    q = A[i][t] // A[t][t]
                    row_sub(i, t, q)
                    if A[i][t]:
                        row_swap(t, i)
            for j in range(t + 1, n):
                while A[t][j]:
                    q = A[t][j] // A[t][t]
                    col_sub(j, t, q)
                    if A[t][j]:
                        col_swap(t, j)
            if any(A[i][t] for i in range(t + 1, m)):
                continue
            # enforce divisibility: pivot must divide the remaining block
            bad = next(
                (
                    (i, j)
                    for i in range(t + 1, m)
                    for j in range(t + 1, n)
                    if A[i][j] % A[t][t]
                ),
                None,
            )
            if bad is None:
                break
            row_sub(t, bad[0], -1)
        t += 1
    for i in range(min(m, n)):
        if A[i][i] < 0:
            A[i] = [-x for x in A[i]]
            U[i] = [-x for x in U[i]]
    D = tuple(tuple(r) for r in A)
    return tuple(tuple(r) for r in U), D, tuple(tuple(r) for r in V)


@dataclass(frozen=True)
class FreeCertificate:
    """Outcome of the fixed-point test with the data that proves it.

    free: no fixed point exists.  diag: SNF diagonal of Lhat - I.
    residues: the transformed translation at the zero rows; any non-integer
    entry obstructs solvability.  witness: a fixed point (lattice
    coordinates, mod 1) when one exists.
    """

    free: bool
    diag: tuple[int, ...]
    residues: tuple[Fraction, ...]
    obstructed_rows: tuple[int, ...]
    witness: tuple[Fraction, ...] | None

    def __bool__(self) -> bool:
        return self.free


def _mat_vec(M, v):
    return [sum(M[i][j] * v[j] for j in range(len(v))) for i in range(len(M))]


def fixed_point_free(f: AffineAuto) -> FreeCertificate:
    """Exact fixed-point test for (Lhat - I) z = -that on the torus."""
    if f.is_identity():
        raise ValueError("identity fixes everything; test non-identity elements")
    m = 2 * f.model.n
    Lhat = f.Lhat
    M = [[Lhat[i][j] - (i == j) for j in range(m)] for i in range(m)]
    U, D, V = smith_normal_form(M)
    c = [-x for x in f.that]
    Uc = _mat_vec(U, c)
    diag = tuple(D[i][i] for i in range(m))
    zero_rows = [i for i in range(m) if diag[i] == 0]
    residues = tuple(Uc[i] for i in zero_rows)
    obstructed = tuple(i for i in zero_rows if Uc[i].denominator != 1)
    if obstructed:
        return FreeCertificate(True, diag, residues, obstructed, None)
    w = [Uc[i] / diag[i] if diag[i] else Fraction(0) for i in range(m)]
    z = [_mod1(x) for x in _mat_vec(V, w)]
    check = _mat_vec(M, z)
    assert all((check[i] - c[i]).denominator == 1 for i in range(m))
    return FreeCertificate(False, diag, residues, (), tuple(z))


def fixed_point_free_brute(f: AffineAuto) -> bool:
    """Exhaustive grid search, independent of the SNF path.

    The lattice map splits into identical copies of L - I on the real and
    period coordinates, so the two n-dimensional systems are searched
    separately over the (1 / 2D)-grid, D = translation denominator lcm.
    """
    if f.is_identity():
        raise ValueError("identity fixes everything; test non-identity elements")
    n = f.model.n
    D = lcm(1, *(x.denominator for x in f.that))
    G = 2 * D
    M = np.array(
        [[f.L[i][j] - (i == j) for j in range(n)] for i in range(n)], dtype=np.int64
    )
    K = np.array(list(itertools.product(range(G), repeat=n)), dtype=np.int64)

    def solvable(part):
        rhs = np.array([int(G * x) for x in part], dtype=np.int64)
        return bool(((K @ M.T + rhs) % G == 0).all(axis=1).any())

    return not (solvable(f.that[0::2]) and solvable(f.that[1::2]))


def delegated_elements(G: FiniteGroup) -> tuple[GroupElement, ...]:
    """Non-identity elements acting trivially on the torus block.

    Their freeness lives on the formal factors and cannot be computed here.
    """
    return tuple(e for e in G.elements if not e.is_identity() and e.auto.is_identity())


def action_free(G: FiniteGroup) -> bool:
    """TRUE iff every element with a non-identity torus part is fixed-point free.

    Elements listed by delegated_elements are outside the torus test's reach
    and are not counted against freeness; callers report them separately.
    """
    return all(
        fixed_point_free(e.auto).free
        for e in G.elements
        if not e.is_identity() and not e.auto.is_identity()
    )


# ---------------------------------------------------------------------------
# invariant forms and quotient Hodge numbers


def _int_det(M) -> int:
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    total = 0
    for j in range(n):
        if M[0][j]:
            minor = [row[:j] + row[j + 1 :] for row in M[1:]]
            total += (-1) ** j * M[0][j] * _int_det(minor)
    return total


def exterior_trace(L, p: int) -> int:
    """Trace of the p-th exterior power: sum of p x p principal minors."""
    n = len(L)
    if p == 0:
        return 1
    if p > n:
        return 0
    total = 0
    for rows in itertools.combinations(range(n), p):
        total += _int_det([[L[i][j] for j in rows] for i in rows])
    return total


def invariant_forms(G: FiniteGroup, p: int) -> int:
    """dim of the G-invariant subspace of holomorphic p-forms on the torus."""
    n = G.model.n
    if not 0 <= p <= n:
        raise ValueError(f"p must lie in [0, {n}]")
    total = sum(exterior_trace(e.auto.L, p) for e in G.elements)
    avg = Fraction(total, G.order)
    assert avg.denominator == 1
    return int(avg)


def invariant_form_dims(G: FiniteGroup) -> tuple[int, ...]:
    return tuple(invariant_forms(G, p) for p in range(G.model.n + 1))


@dataclass(frozen=True)
class TorusFactor:
    """The torus block; its graded character comes from each element's L."""


@dataclass(frozen=True)
class K3Factor:
    """Formal K3 surface: H^{0,0} and H^{2,0} are lines, H^{1,0} = 0.

    An element with parity 1 scales the top form by `sign`.
    """

    sign: int = -1

    def __post_init__(self):
        if self.sign not in (-1, 1):
            raise ValueError("sign must be +1 or -1")


@dataclass(frozen=True)
class CY3Factor:
    """Formal Calabi-Yau three-fold: lines in degrees 0 and 3 only."""

    sign: int = -1

    def __post_init__(self):
        if self.sign not in (-1, 1):
            raise ValueError("sign must be +1 or -1")


def _factor_dim(factor, model: TorusModel) -> int:
    if isinstance(factor, TorusFactor):
        return model.n
    return 2 if isinstance(factor, K3Factor) else 3


def _factor_character(factor, element: GroupElement, slot: int, model: TorusModel):
    if isinstance(factor, TorusFactor):
        return [exterior_trace(element.auto.L, p) for p in range(model.n + 1)]
    s = factor.sign if element.parities[slot] else 1
    if isinstance(factor, K3Factor):
        return [1, 0, s]
    return [1, 0, 0, s]


def _poly_mult(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


@dataclass(frozen=True)
class HodgeData:
    h_p0: tuple[int, ...]  # h^{p,0}(X), p = 0..4
    h_q: tuple[int, ...]  # h^q(X, O_X), q = 0..4


def quotient_hodge(factors, G: FiniteGroup) -> HodgeData:
    """Hodge numbers of (product of factors) / G; requires total dimension 4.

    h^{p,0} is the invariant dimension of the degree-p part of the product
    of factor characters.  All characters here are real (signed permutations
    and literal signs), so h^q(O_X) = conj h^{q,0} = h^{q,0}.
    """
    factors = tuple(factors)
    total = sum(_factor_dim(f, G.model) for f in factors)
    if total != 4:
        raise ValueError(f"total complex dimension is {total}, need 4")
    formal = [f for f in factors if not isinstance(f, TorusFactor)]
    if any(len(e.parities) != len(formal) for e in G.elements):
        raise ValueError("group parities do not match the formal factor count")
    if sum(isinstance(f, TorusFactor) for f in factors) > 1:
        raise ValueError("at most one torus block")
    acc = [0] * 5
    for e in G.elements:
        char = [1]
        slot = 0
        for f in factors:
            char = _poly_mult(char, _factor_character(f, e, slot, G.model))
            if not isinstance(f, TorusFactor):
                slot += 1
        for p in range(5):
            acc[p] += char[p]
    dims = []
    for p in range(5):
        v = Fraction(acc[p], G.order)
        assert v.denominator == 1
        dims.append(int(v))
    if dims[4] != 1:
        raise NonTrivialCanonical(dims[4])
    h = tuple(dims)
    return HodgeData(h, h)
