"""Exact-arithmetic certificates for the inequality catalog.

The heuristic pipelines lean on a fixed list of univariate and bivariate
sign claims (cubics staying negative on an interval, derivatives keeping
one sign on a box, monotonicity of penalty functions) plus a handful of
numeric constants.  This module verifies every one of them in exact
rational arithmetic and produces replayable verdicts:

* Polynomials of degree <= 3 get closed-form critical-point analysis.
  Critical points are roots of a quadratic, so each candidate value is
  u + w*sqrt(D) with rational u, w, D and its sign is decided exactly by
  integer comparisons; no floating point anywhere.

* Everything else (rational functions, two-variable derivative claims)
  goes through a grid certificate: the claim |f| keeps its sign on a
  cell if the exact midpoint value clears the cell's Lipschitz radius
  sum(max|df/dx_k| * halfwidth_k), where the derivative magnitudes are
  bounded by rational interval arithmetic.  Cells halve adaptively from
  width 1e-3 down to a 1e-6 floor; anything still unresolved is reported
  undecided rather than guessed.

Decimal constants (0.28, 1.18, 0.0739, ...) are parsed as exact
decimals.  The inequalities are near-tight (margins around 1e-3), which
is exactly where binary floats flip verdicts.

The catalog also carries falsification controls (claims doctored to be
false) whose expected verdict is "refuted"; they prove the machinery can
say no.  One genuine sign slip in the source chain is handled this way:
the printed derivative sign for the penalty f(alpha) on [1/2, 7/12] is
negative, but the derivative is in fact strictly positive there (which
is also what the chain's own conclusion f(alpha) <= f(7/12) needs, since
the maximum sits at the right endpoint).  The catalog therefore verifies
the corrected claims F_PRIME_ALPHA (> 0) and F_ALPHA (<= value at 7/12),
and keeps the printed "< 0" version as an expected-refuted control.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

F = Fraction

# ---------------------------------------------------------------------------
# rational interval arithmetic


class RInterval:
    """Closed interval with Fraction endpoints; outward rounding is free
    because every operation is exact."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = F(lo)
        hi = lo if hi is None else F(hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        self.lo, self.hi = lo, hi

    def __add__(self, other):
        other = _as_interval(other)
        return RInterval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return RInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-_as_interval(other))

    def __rsub__(self, other):
        return _as_interval(other) + (-self)

    def __mul__(self, other):
        other = _as_interval(other)
        vals = (self.lo * other.lo, self.lo * other.hi,
                self.hi * other.lo, self.hi * other.hi)
        return RInterval(min(vals), max(vals))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_interval(other)
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError("division by interval containing zero")
        vals = (self.lo / other.lo, self.lo / other.hi,
                self.hi / other.lo, self.hi / other.hi)
        return RInterval(min(vals), max(vals))

    def __rtruediv__(self, other):
        return _as_interval(other) / self

    def __pow__(self, k: int):
        if k == 0:
            return RInterval(1)
        out = self
        for _ in range(k - 1):
            out = out * self
        return out

    def mag(self) -> Fraction:
        return max(abs(self.lo), abs(self.hi))

    def __repr__(self):
        return f"[{self.lo}, {self.hi}]"


def _as_interval(x) -> RInterval:
    return x if isinstance(x, RInterval) else RInterval(F(x))


def sqrt_enclosure(x: Fraction, digits: int = 12) -> tuple[Fraction, Fraction]:
    """Rational [lo, hi] with lo <= sqrt(x) <= hi and hi - lo <= 10^-digits."""
    if x < 0:
        raise ValueError("negative radicand")
    scale = 10 ** digits
    num = x.numerator * scale * scale * x.denominator
    root = math.isqrt(num)
    lo = F(root, scale * x.denominator)
    hi = F(root + 1, scale * x.denominator)
    return lo, hi


# ---------------------------------------------------------------------------
# dense rational polynomials (coefficient tuples, low degree first)

Poly = tuple


def poly(*coeffs) -> Poly:
    c = [F(x) for x in coeffs]
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_eval(p: Poly, x):
    out = p[-1]
    for c in reversed(p[:-1]):
        out = out * x + c
    return out


def poly_add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return poly(*[(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0)
                  for i in range(n)])


def poly_scale(p: Poly, k) -> Poly:
    return poly(*[F(k) * c for c in p])


def poly_sub(p: Poly, q: Poly) -> Poly:
    return poly_add(p, poly_scale(q, -1))


def poly_mul(p: Poly, q: Poly) -> Poly:
    out = [F(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return poly(*out)


def poly_deriv(p: Poly) -> Poly:
    if len(p) == 1:
        return poly(0)
    return poly(*[F(i) * p[i] for i in range(1, len(p))])


def poly_divide_linear(p: Poly, root: Fraction) -> Poly:
    """Exact division of p by (x - root); raises if the remainder is nonzero."""
    carry = F(0)
    out = []
    for c in reversed(list(p)):
        carry = carry * root + c
        out.append(carry)
    remainder = out[-1]
    if remainder != 0:
        raise ValueError(f"{root} is not a root (remainder {remainder})")
    return poly(*reversed(out[:-1]))


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def sign_of_quadratic_ext(u: Fraction, w: Fraction, d: Fraction) -> int:
    """Exact sign of u + w*sqrt(d) for rational u, w and d >= 0."""
    if d < 0:
        raise ValueError("negative radicand")
    if w == 0 or d == 0:
        return _sign(u)
    if w > 0 and u >= 0:
        return 1
    if w < 0 and u <= 0:
        return -1
    lhs = w * w * d
    rhs = u * u
    if w > 0:                      # u < 0: sign of sqrt part vs |u|
        return _sign(lhs - rhs)
    return _sign(rhs - lhs)        # w < 0, u > 0


@dataclass(frozen=True)
class ExtremumCandidate:
    """A point where a degree-<=3 polynomial can attain its max on [lo, hi]:
    either rational, or (u + w*sqrt(d)) / v."""

    kind: str                      # "rational" | "quadratic"
    point_lo: Fraction
    point_hi: Fraction
    value_sign: int
    value_lo: Fraction
    value_hi: Fraction


def _quad_point_value(p: Poly, u: Fraction, w: Fraction, d: Fraction,
                      v: Fraction) -> tuple[int, Fraction, Fraction]:
    """Sign and enclosure of p((u + w sqrt(d)) / v) for quadratic p' roots.

    Reduces p modulo its derivative so the value is linear in the root,
    then decides the sign exactly."""
    dp = poly_deriv(p)
    # p = q * dp + r with deg r <= 1 (dp has degree 2, p degree 3)
    a3 = p[3] if len(p) > 3 else F(0)
    b2 = dp[2]
    q1 = a3 / b2
    rem = poly_sub(p, poly_mul(poly(0, q1), dp))
    q0 = rem[2] / b2 if len(rem) > 2 else F(0)
    rem = poly_sub(rem, poly_mul(poly(q0), dp))
    assert len(rem) <= 2
    lam = rem[1] if len(rem) > 1 else F(0)
    mu = rem[0]
    # value = lam * (u + w sqrt d)/v + mu  ->  (lam*u + mu*v + lam*w sqrt d)/v
    num_u = lam * u + mu * v
    num_w = lam * w
    sgn = sign_of_quadratic_ext(num_u, num_w, d) * _sign(v)
    slo, shi = sqrt_enclosure(d)
    cands = [(num_u + num_w * slo) / v, (num_u + num_w * shi) / v]
    return sgn, min(cands), max(cands)


def poly_max_candidates(p: Poly, lo: Fraction, hi: Fraction) -> list[ExtremumCandidate]:
    """Endpoint and interior-critical-point candidates with exact value signs."""
    p = poly(*p)
    if len(p) > 4:
        raise ValueError("closed-form analysis implemented for degree <= 3")
    out = []
    for x in (lo, hi):
        val = poly_eval(p, x)
        out.append(ExtremumCandidate("rational", x, x, _sign(val), val, val))
    dp = poly_deriv(p)
    if len(dp) == 1:               # constant derivative: no interior critical pts
        return out
    if len(dp) == 2:               # linear derivative, rational root
        root = -dp[0] / dp[1]
        if lo < root < hi:
            val = poly_eval(p, root)
            out.append(ExtremumCandidate("rational", root, root, _sign(val), val, val))
        return out
    a, b, c = dp[2], dp[1], dp[0]
    disc = b * b - 4 * a * c
    if disc < 0:
        return out
    if disc == 0:
        root = -b / (2 * a)
        if lo < root < hi:
            val = poly_eval(p, root)
            out.append(ExtremumCandidate("rational", root, root, _sign(val), val, val))
        return out
    for sgn_root in (1, -1):
        # root = (-b + sgn*sqrt(disc)) / (2a); interval membership decided exactly
        above_lo = sign_of_quadratic_ext(-b - 2 * a * lo, F(sgn_root), disc) * _sign(2 * a)
        below_hi = sign_of_quadratic_ext(-b - 2 * a * hi, F(sgn_root), disc) * _sign(2 * a)
        if above_lo > 0 and below_hi < 0:
            vsgn, vlo, vhi = _quad_point_value(p, -b, F(sgn_root), disc, 2 * a)
            slo, shi = sqrt_enclosure(disc)
            pts = [(-b + sgn_root * s) / (2 * a) for s in (slo, shi)]
            out.append(ExtremumCandidate("quadratic", min(pts), max(pts),
                                         vsgn, vlo, vhi))
    return out


# ---------------------------------------------------------------------------
# claim verdicts


@dataclass(frozen=True)
class IntervalClaim:
    claim_id: str
    statement: str
    verdict: str                   # verified | refuted | undecided
    worst_point: Optional[tuple[Fraction, ...]]
    worst_value_hi: Optional[Fraction]   # safe upper bound on the max seen
    detail: str = ""

    def as_json(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "statement": self.statement,
            "verdict": self.verdict,
            "worst_point": [str(x) for x in self.worst_point] if self.worst_point else None,
            "worst_value_upper_bound": (str(self.worst_value_hi)
                                        if self.worst_value_hi is not None else None),
            "detail": self.detail,
        }


def verify_poly_nonpositive(claim_id: str, statement: str, p: Poly,
                            lo: Fraction, hi: Fraction, strict: bool) -> IntervalClaim:
    """Exact verdict for p < 0 (strict) or p <= 0 on [lo, hi], degree <= 3."""
    cands = poly_max_candidates(p, F(lo), F(hi))
    worst = max(cands, key=lambda cand: cand.value_hi)
    bad = (lambda s: s >= 0) if strict else (lambda s: s > 0)
    for cand in cands:
        if bad(cand.value_sign):
            return IntervalClaim(claim_id, statement, "refuted",
                                 (cand.point_lo,), cand.value_hi,
                                 "maximum candidate violates the claimed sign")
    return IntervalClaim(claim_id, statement, "verified",
                         (worst.point_lo,), worst.value_hi,
                         f"max over {len(cands)} endpoint/critical candidates")


def verify_grid_negative(claim_id: str, statement: str,
                         fn: Callable, partials: Sequence[Callable],
                         box: Sequence[tuple[Fraction, Fraction]],
                         strict: bool = True,
                         cell: Fraction = F(1, 1000),
                         floor: Fraction = F(1, 10 ** 6)) -> IntervalClaim:
    """Grid certificate for fn < 0 (or <= 0) on a product of closed intervals."""
    worst_v: Optional[Fraction] = None
    worst_pt: Optional[tuple] = None

    def visit(cells: list[tuple[Fraction, Fraction]]) -> Optional[str]:
        nonlocal worst_v, worst_pt
        mid = tuple((a + b) / 2 for a, b in cells)
        v = fn(*mid)
        if worst_v is None or v > worst_v:
            worst_v, worst_pt = v, mid
        if (v >= 0) if strict else (v > 0):
            return "refuted"
        halves = [(b - a) / 2 for a, b in cells]
        radius = F(0)
        try:
            ivals = [RInterval(a, b) for a, b in cells]
            for part, h in zip(partials, halves):
                radius += part(*ivals).mag() * h
        except ZeroDivisionError:
            radius = None
        if radius is not None:
            ok = (v + radius < 0) if strict else (v + radius <= 0)
            if ok:
                return None
        if all(h * 2 <= floor for h in halves):
            return "undecided"
        mids = mid
        verdicts = []
        for corner in range(1 << len(cells)):
            sub = []
            for k, (a, b) in enumerate(cells):
                if corner >> k & 1:
                    sub.append((mids[k], b))
                else:
                    sub.append((a, mids[k]))
            res = visit(sub)
            if res == "refuted":
                return "refuted"
            verdicts.append(res)
        if any(r == "undecided" for r in verdicts):
            return "undecided"
        return None

    # initial grid of width <= cell per axis
    axes = []
    for a, b in box:
        a, b = F(a), F(b)
        steps = max(1, math.ceil((b - a) / cell))
        axes.append([(a + (b - a) * k / steps, a + (b - a) * (k + 1) / steps)
                     for k in range(steps)])

    def product(idx: int, chosen: list) -> Optional[str]:
        if idx == len(axes):
            return visit(chosen)
        for c in axes[idx]:
            res = product(idx + 1, chosen + [c])
            if res in ("refuted", "undecided"):
                return res
        return None

    res = product(0, [])
    verdict = res or "verified"
    return IntervalClaim(claim_id, statement, verdict, worst_pt, worst_v,
                         f"grid certificate, initial cell width {cell}")


def verify_poly_identity(claim_id: str, statement: str, p: Poly, q: Poly,
                         extra_match: bool = True, detail: str = "") -> IntervalClaim:
    same = poly(*p) == poly(*q) and extra_match
    return IntervalClaim(claim_id, statement,
                         "verified" if same else "refuted", None, None, detail)
