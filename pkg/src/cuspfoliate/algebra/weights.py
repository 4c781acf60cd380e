"""Weighted valuations and quasi-homogeneity detection."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from ..errors import UndefinedOrder
from .poly import SparsePoly


@dataclass(frozen=True)
class WeightVector:
    weights: tuple[int, ...]
    degree: int

    def __post_init__(self):
        if any(w <= 0 for w in self.weights) or self.degree <= 0:
            raise ValueError("weights and degree must be positive integers")
        if math.gcd(*self.weights, self.degree) != 1:
            raise ValueError("weights and degree must be coprime as a family")


def weighted_valuation(f: SparsePoly, p: int, q: int) -> Fraction:
    """``min (p*i + q*j) / gcd(p, q)`` over the support of a bivariate ``f``.

    The first declared variable carries weight ``p``.
    """
    if f.nvars != 2:
        raise ValueError(f"weighted valuation needs a bivariate polynomial, got {f.variables}")
    if p <= 0 or q <= 0:
        raise ValueError("weights must be positive")
    if f.is_zero:
        raise UndefinedOrder("the zero polynomial has no weighted valuation")
    delta = math.gcd(p, q)
    return Fraction(min(p * i + q * j for i, j in f.terms), delta)


def weighted_degree_bounds(f: SparsePoly, weights) -> tuple[int, int]:
    """(min, max) of ``<w, I>`` over the support."""
    vals = [sum(w * e for w, e in zip(weights, exp)) for exp in f.terms]
    return min(vals), max(vals)


def euler_identity_holds(f: SparsePoly, weights, degree) -> bool:
    """Check ``sum_i w_i x_i df/dx_i == degree * f`` exactly."""
    lhs = SparsePoly.zero(f.variables, f.field)
    for i, w in enumerate(weights):
        xi = SparsePoly.var(f.variables[i], f.variables, f.field)
        lhs = lhs + (xi * f.diff(i)).scale(w)
    return lhs == f.scale(degree)


def _nullspace(rows, ncols):
    """Basis of the rational nullspace of ``rows`` (list of lists)."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        lead = m[r][c]
        m[r] = [x / lead for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                fac = m[i][c]
                m[i] = [x - fac * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in zip(m, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def _primitive(v):
    den = 1
    for x in v:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = math.gcd(*ints) or 1
    return [x // g for x in ints]


def _solve_fixed_degree(support, present, d):
    """All positive integer weight vectors (on ``present``) with <w, I> = d."""
    n = len(present)
    rows = [[Fraction(exp[i]) for i in present] + [Fraction(-d)] for exp in support]
    # reduced row echelon form of the augmented system
    m = rows
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        lead = m[r][c]
        m[r] = [x / lead for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                fac = m[i][c]
                m[i] = [x - fac * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    if any(all(x == 0 for x in row[:n]) and row[n] != 0 for row in m):
        return []
    free = [c for c in range(n) if c not in pivots]
    caps = []
    for c in free:
        top = max(exp[present[c]] for exp in support)
        caps.append(range(1, d // top + 1))
    found = []
    for values in itertools.product(*caps):
        w = [Fraction(0)] * n
        for c, val in zip(free, values):
            w[c] = Fraction(val)
        ok = True
        for row, pc in zip(m, pivots):
            val = -row[n] - sum(row[fc] * w[fc] for fc in free)
            if val.denominator != 1 or val < 1:
                ok = False
                break
            w[pc] = val
        if ok:
            found.append(tuple(int(x) for x in w))
    return found


def _degree_upper_bound(support, present):
    """A degree at which some positive integer solution surely exists, or None.

    Uses a linear program minimising the degree subject to ``w >= 1``; the
    vertex is rationalised and verified exactly before being trusted.
    """
    from scipy.optimize import linprog

    n = len(present)
    base = support[0]
    a_eq = [[exp[i] - base[i] for i in present] for exp in support[1:]]
    c = [base[i] for i in present]
    res = linprog(c, A_eq=a_eq or None, b_eq=[0] * len(a_eq) if a_eq else None,
                  bounds=[(1, None)] * n, method="highs")
    if res.status != 0:
        return None, None
    lower = max(1, math.floor(res.fun - 1e-7))
    w = [Fraction(x).limit_denominator(10 ** 6) for x in res.x]
    if all(x > 0 for x in w) and all(sum(x * (e[i] - base[i]) for x, i in zip(w, present)) == 0
                                     for e in support[1:]):
        ints = _primitive(w)
        return lower, sum(x * base[i] for x, i in zip(ints, present))
    return lower, lower * 10 ** 3


def find_quasihomogeneous_weights(f: SparsePoly) -> WeightVector | None:
    """Positive weights making ``f`` quasi-homogeneous, or None.

    Among all solutions the one with the smallest integer degree is
    returned, ties broken by the lexicographically smallest weights.
    Variables absent from ``f`` get weight 1. The Euler identity is checked
    before returning.
    """
    if f.is_zero:
        raise UndefinedOrder("the zero polynomial has no quasi-homogeneous weights")
    support = sorted(f.terms)
    if any(not any(e) for e in support):
        return None  # a constant term forces degree 0
    n = f.nvars
    present = [i for i in range(n) if any(e[i] for e in support)]
    base = support[0]
    rows = [[e[i] - base[i] for i in present] for e in support[1:]]
    basis = _nullspace(rows, len(present)) if rows else [
        [Fraction(int(i == j)) for j in range(len(present))] for i in range(len(present))]

    if not basis:
        return None
    if len(basis) == 1:
        v = _primitive(basis[0])
        deg = sum(x * base[i] for x, i in zip(v, present))
        if deg < 0:
            v, deg = [-x for x in v], -deg
        if deg == 0 or any(x <= 0 for x in v):
            return None
        best = tuple(v)
        d = deg
    else:
        lower, upper = _degree_upper_bound(support, present)
        if lower is None:
            return None
        best, d = None, None
        for cand in range(lower, upper + 1):
            sols = _solve_fixed_degree(support, present, cand)
            if sols:
                best, d = min(sols), cand
                break
        if best is None:
            return None
    weights = [1] * n
    for i, w in zip(present, best):
        weights[i] = w
    g = math.gcd(*weights, d)
    weights = [w // g for w in weights]
    d //= g
    if not euler_identity_holds(f, weights, d):
        raise AssertionError("Euler identity failed for the computed weights")
    return WeightVector(tuple(weights), d)
