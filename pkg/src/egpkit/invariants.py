"""Polynomial invariants: lattice-point counts of preorder cones, the
canonical polynomial of a submodular function, the character-sum route,
and the generic-function count for matroids.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct
from math import comb

from .conform import min_faces, pre_of
from .errors import ValidationError
from .generators import Matroid
from .ground import bit_indices, submasks
from .preorders import Preorder, bubble_masks
from .submod import SubmodFn, is_modular


class RationalPoly:
    """Polynomial with exact rational coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = [Fraction(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, *a):
        raise AttributeError("RationalPoly is immutable")

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __eq__(self, other):
        return isinstance(other, RationalPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * max(len(a), len(b))
        for i, c in enumerate(a):
            out[i] += c
        for i, c in enumerate(b):
            out[i] += c
        return RationalPoly(out)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalPoly([c * other for c in self.coeffs])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs))
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RationalPoly(out)

    def __neg__(self):
        return self * Fraction(-1)

    def eval_at(self, x) -> Fraction:
        x = Fraction(x)
        out = Fraction(0)
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def compose_linear(self, a, b) -> "RationalPoly":
        """p(a*x + b)."""
        lin = RationalPoly([b, a])
        out = RationalPoly([])
        power = RationalPoly([1])
        for c in self.coeffs:
            out = out + power * c
            power = power * lin
        return out

    def binomial_basis(self):
        """Coefficients c_j with p(k) = sum of c_j * C(k, j)."""
        d = max(self.degree, 0)
        vals = [self.eval_at(i) for i in range(d + 1)]
        out = []
        for j in range(d + 1):
            c = sum(
                (-1) ** (j - i) * comb(j, i) * vals[i] for i in range(j + 1)
            )
            out.append(Fraction(c))
        while out and out[-1] == 0:
            out.pop()
        return out

    def __repr__(self):
        return f"RationalPoly({[str(c) for c in self.coeffs]})"


def lagrange(points) -> RationalPoly:
    """Exact interpolation through (x, y) pairs with distinct x."""
    out = RationalPoly([])
    for i, (xi, yi) in enumerate(points):
        term = RationalPoly([Fraction(yi)])
        for j, (xj, _) in enumerate(points):
            if i == j:
                continue
            denom = Fraction(xi) - Fraction(xj)
            term = term * RationalPoly([Fraction(-xj) / denom, Fraction(1) / denom])
        out = out + term
    return out


def _bubble_strict_pairs(P: Preorder):
    bubs = bubble_masks(P)
    reps = [next(bit_indices(b)) for b in bubs]
    pairs = []
    for i, ri in enumerate(reps):
        for j, rj in enumerate(reps):
            if i != j and P.leq_idx(ri, rj) and not P.leq_idx(rj, ri):
                pairs.append((i, j))
    return len(bubs), pairs


def _count_strict(P, k):
    """Maps from bubbles into 1..k, strictly decreasing along the order."""
    d, pairs = _bubble_strict_pairs(P)
    count = 0
    for h in iproduct(range(1, k + 1), repeat=d):
        if all(h[i] > h[j] for i, j in pairs):
            count += 1
    return count


def _count_weak(P, k):
    """Maps from bubbles into 0..k, weakly decreasing along the order."""
    d, pairs = _bubble_strict_pairs(P)
    count = 0
    for h in iproduct(range(k + 1), repeat=d):
        if all(h[i] >= h[j] for i, j in pairs):
            count += 1
    return count


def ehr_star(P: Preorder) -> RationalPoly:
    d = len(bubble_masks(P))
    pts = [(k, _count_strict(P, k)) for k in range(1, d + 2)]
    poly = lagrange(pts)
    assert poly.degree <= d
    for k in (d + 2, d + 3):
        assert poly.eval_at(k) == _count_strict(P, k), "interpolation drift"
    return poly


def ehr(P: Preorder) -> RationalPoly:
    d = len(bubble_masks(P))
    pts = [(k, _count_weak(P, k)) for k in range(d + 1)]
    poly = lagrange(pts)
    assert poly.degree <= d
    for k in (d + 1, d + 2):
        assert poly.eval_at(k) == _count_weak(P, k), "interpolation drift"
    return poly


def chi(z: SubmodFn, max_n=None) -> RationalPoly:
    out = RationalPoly([])
    for f in min_faces(z, max_n):
        out = out + ehr_star(f.P)
    return out


def _basic_character(z: SubmodFn) -> int:
    """1 when the polyhedron is an affine subspace: modular with an
    equivalence as its finite-support preorder."""
    if not is_modular(z):
        return 0
    P = pre_of(z)
    return 1 if tuple(P.dn_rows()) == P.up else 0


def _flag_factor_character(z: SubmodFn, a: int, b: int):
    """Basic character of the piece between nested subsets a inside b;
    None marks an undefined (infinite-value) piece, killing the term."""
    if not (z.table[a].is_finite and z.table[b].is_finite):
        return None
    sub = z.ground.restricted(b & ~a)
    pos = [z.ground.index[x] for x in sub.labels]
    table = []
    for m in range(1 << sub.n):
        glob = a
        for k, p in enumerate(pos):
            if m >> k & 1:
                glob |= 1 << p
        table.append(z.table[glob] - z.table[a])
    if not table[-1].is_finite:
        return None
    w = SubmodFn(sub, table)
    return _basic_character(w)


def chi_character(z: SubmodFn, n: int, extended=False) -> Fraction:
    """Sum over ordered decompositions of the ground set into n possibly
    empty blocks of the product of basic characters of the pieces."""
    if n < 0:
        raise ValidationError("the argument must be a nonnegative integer")
    if not extended and not all(v.is_finite for v in z.table):
        raise ValidationError(
            "character sum needs a finite function (pass extended=True otherwise)"
        )
    full = z.ground.full
    total = 0

    def walk(prev, steps):
        nonlocal total
        if steps == 0:
            if prev == full:
                total += 1
            return
        rest = full & ~prev
        for extra in submasks(rest):
            cur = prev | extra
            beta = _flag_factor_character(z, prev, cur)
            if beta:
                walk(cur, steps - 1)

    walk(0, n)
    return Fraction(total)


def bjr_count(M: Matroid, n: int) -> Fraction:
    """Functions into 1..n with a unique weight-maximizing basis."""
    size = M.ground.n
    count = 0
    for y in iproduct(range(1, n + 1), repeat=size):
        best = None
        ties = False
        for b in M.bases:
            w = sum(y[i] for i in bit_indices(b))
            if best is None or w > best:
                best, ties = w, False
            elif w == best:
                ties = True
        if not ties:
            count += 1
    return Fraction(count)
