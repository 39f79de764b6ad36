"""The fixed claim catalog behind the case pipelines.

Claim groups (the case labels refer to the pipeline decision trees in
`pipelines`):

  CUBIC1..5     the five L43_C332 envelope cubics are negative on
                t in [39/100, 9/20]
  G1..5         the exact per-case bound G_i(t), defined as
                (F_i(c_i, t) - 739/10000) * (d_i - t) with c_i = 22/100 + i/100
                and d_i = 118/100 - c_i, is dominated by CUBIC_i there
  F1..5_at_c    the published partial-fraction transcription of
                F_i(c_i, t) matches the re-derivation from F_i's definition
  DFDC1..5      dF_i/dc < 0 on [c_i, c_i + 1/100] x [39/100, 9/20]
  CASE331_FPRIME   the L43_C331 filler bound 43/100 - t - (252/10000)/(t-1)^2
                   is negative on [39/100, 9/20]
  CASE31_QUAD   the L43_C31 density quadratic is decreasing past 79/100
  G_ALPHA       the JOIN_C3 penalty g_a(e0) = 1/16 + e0 - 4 e0^2/(1-a)^2 is
                non-increasing for e0 >= (1-a)^2/8 (several sample a)
  F_PRIME_ALPHA the JOIN_C3 endpoint function f(a) has strictly positive
                derivative on [1/2, 7/12] (the printed sign is negative;
                the printed version is kept as an expected-refuted control,
                see CONTROL_FPRIME_PRINTED)
  F_ALPHA       f(a) <= f(7/12) = 1/144 on [1/2, 7/12]
  E0_DOMAIN_GAP the JOIN_C3 feasibility gap identity and its positivity

plus numeric constants (verify_constant) and falsification controls.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .certify import (F, IntervalClaim, Poly, poly, poly_add, poly_divide_linear,
                      poly_eval, poly_mul, poly_scale, poly_sub,
                      sqrt_enclosure, verify_grid_negative,
                      verify_poly_identity, verify_poly_nonpositive)

T_LO, T_HI = F(39, 100), F(45, 100)
TARGET_0739 = F(739, 10000)


def _s(i: int) -> Fraction:
    return F(1, 2) - F(i, 100)


def _c(i: int) -> Fraction:
    return F(22, 100) + F(i, 100)


def _d(i: int) -> Fraction:
    return F(118, 100) - _c(i)       # pole of F_i at c = c_i


def derived_f_parts(i: int) -> tuple[Poly, Poly, Fraction]:
    """F_i(c_i, t) = P(t) + R(t) / (t - d_i), re-derived from the definition

        F_i(c, t) = (28/100) c (s_i - t) / (118/100 - t - c)
                    + (t - c)(s_i - t) + (t - c) c
                    + (s_i - t)^2 / 4 + s_i (i/100) + (i/100)^2 / 3
    """
    s, c, d = _s(i), _c(i), _d(i)
    ifrac = F(i, 100)
    lin_s_minus_t = poly(s, -1)
    lin_t_minus_c = poly(-c, 1)
    p = poly_mul(lin_t_minus_c, lin_s_minus_t)
    p = poly_add(p, poly_scale(lin_t_minus_c, c))
    p = poly_add(p, poly_scale(poly_mul(lin_s_minus_t, lin_s_minus_t), F(1, 4)))
    p = poly_add(p, poly(s * ifrac + ifrac * ifrac / 3))
    # (28/100) c (s - t) / (d - t) = (28/100) c (t - s) / (t - d)
    r = poly_scale(poly(-s, 1), F(28, 100) * c)
    return p, r, d


# published partial-fraction transcriptions of F_i(c_i, t)
PUBLISHED_F_AT_C = {
    1: (poly(F(-12077, 120000), F(141, 200), F(-3, 4)),
        poly(F(-7889, 250000), F(161, 2500)), F(19, 20)),
    2: (poly(F(-791, 7500), F(18, 25), F(-3, 4)),
        poly(F(-504, 15625), F(42, 625)), F(47, 50)),
    3: (poly(F(-883, 8000), F(147, 200), F(-3, 4)),
        poly(F(-329, 10000), F(7, 100)), F(93, 100)),
    4: (poly(F(-3461, 30000), F(3, 4), F(-3, 4)),
        poly(F(-2093, 62500), F(91, 1250)), F(23, 25)),
    5: (poly(F(-14453, 120000), F(153, 200), F(-3, 4)),
        poly(F(-1701, 50000), F(189, 2500)), F(91, 100)),
}

# the published cubic envelopes (decimal coefficients, exact decimals)
ENVELOPE_CUBICS = {
    1: poly(F(-13416, 100000), F(77990, 100000), F(-14175, 10000), F(75, 100)),
    2: poly(F(-13625, 100000), F(78898, 100000), F(-14250, 10000), F(75, 100)),
    3: poly(F(-13838, 100000), F(79783, 100000), F(-14325, 10000), F(75, 100)),
    4: poly(F(-14054, 100000), F(80648, 100000), F(-14400, 10000), F(75, 100)),
    5: poly(F(-14273, 100000), F(81490, 100000), F(-14475, 10000), F(75, 100)),
}


def case_bound_poly(i: int) -> Poly:
    """G_i(t) = (F_i(c_i, t) - 739/10000)(d_i - t), expanded; cubic in t.

    Multiplying by the positive factor (d_i - t) clears the pole, so
    G_i < 0 on [0.39, 0.45] is equivalent to F_i(c_i, t) < 739/10000."""
    p, r, d = derived_f_parts(i)
    shifted = poly_sub(p, poly(TARGET_0739))
    return poly_sub(poly_mul(shifted, poly(d, -1)), r)


def fprime_alpha(a):
    """Derivative of the JOIN_C3 endpoint function f on [1/2, 7/12]."""
    one = 1 - a
    return -6 * a + F(5, 2) + F(5, 18) / one ** 2 - F(25, 648) / one ** 3


def fprime_alpha_d(a):
    one = 1 - a
    return -6 + F(5, 9) / one ** 3 - F(25, 216) / one ** 4


def f_alpha(a):
    """f(a) = 5/72 + (a-1)(a-1/2) - (25/1296)/(1-a)^2
              + (5/9)(a-1/2)/(1-a) - 4(a-1/2)^2."""
    half = a - F(1, 2)
    one = 1 - a
    return (F(5, 72) + (a - 1) * half - F(25, 1296) / one ** 2
            + F(5, 9) * half / one - 4 * half ** 2)


def f_alpha_numerator() -> Poly:
    """(f(a) - 1/144) * (1-a)^2 as an exact polynomial (degree 4)."""
    one_minus = poly(1, -1)
    sq = poly_mul(one_minus, one_minus)
    base = poly_mul(poly(-1, 1), poly(F(-1, 2), 1))         # (a-1)(a-1/2)
    half_sq = poly_mul(poly(F(-1, 2), 1), poly(F(-1, 2), 1))
    p = poly_add(poly(F(5, 72) - F(1, 144)), base)
    p = poly_sub(p, poly_scale(half_sq, 4))
    out = poly_mul(p, sq)
    out = poly_sub(out, poly(F(25, 1296)))
    out = poly_add(out, poly_scale(poly_mul(poly(F(-1, 2), 1), one_minus), F(5, 9)))
    return out


def dfdc(i: int):
    """dF_i/dc as a closed-form callable (works on Fractions and intervals)."""
    s = _s(i)

    def h(c, t):
        den = F(118, 100) - t - c
        return (s - t) * (F(28, 100) * (F(118, 100) - t) / den ** 2 - 1) + t - 2 * c

    def h_dc(c, t):
        den = F(118, 100) - t - c
        return (s - t) * F(28, 100) * (F(118, 100) - t) * 2 / den ** 3 - 2

    def h_dt(c, t):
        den = F(118, 100) - t - c
        return (2 - F(28, 100) * (F(118, 100) - t) / den ** 2
                + F(28, 100) * (s - t) * ((F(118, 100) - t) + c) / den ** 3)

    return h, h_dc, h_dt


def case331_filler(t):
    return F(43, 100) - t - F(252, 10000) / (t - 1) ** 2


def case331_filler_d(t):
    return -1 + F(504, 10000) / (t - 1) ** 3


def e0_gap_poly() -> Poly:
    """5/72 - (1-a)(a-1/2) - (1-a)^2/8 expanded in a."""
    one_minus = poly(1, -1)
    p = poly_sub(poly(F(5, 72)), poly_mul(one_minus, poly(F(-1, 2), 1)))
    return poly_sub(p, poly_scale(poly_mul(one_minus, one_minus), F(1, 8)))


def e0_gap_factored() -> Poly:
    """(1/72)(21a - 16)(3a - 2)."""
    return poly_scale(poly_mul(poly(-16, 21), poly(-2, 3)), F(1, 72))


# ---------------------------------------------------------------------------
# claim runners


def verify_cubic_negativity(i: int) -> IntervalClaim:
    """CUBIC_i < 0 on [39/100, 9/20] by exact critical-point analysis."""
    if i not in ENVELOPE_CUBICS:
        raise KeyError(f"cubic index must be 1..5, got {i}")
    return verify_poly_nonpositive(
        f"CUBIC{i}", f"envelope cubic {i} < 0 on [{T_LO}, {T_HI}]",
        ENVELOPE_CUBICS[i], T_LO, T_HI, strict=True)


def _run_g_dominance(i: int) -> IntervalClaim:
    diff = poly_sub(case_bound_poly(i), ENVELOPE_CUBICS[i])
    return verify_poly_nonpositive(
        f"G{i}", f"G_{i}(t) <= envelope cubic {i} on [{T_LO}, {T_HI}]",
        diff, T_LO, T_HI, strict=False)


def _run_f_transcription(i: int) -> IntervalClaim:
    p, r, d = derived_f_parts(i)
    tp, tr, td = PUBLISHED_F_AT_C[i]
    mismatches = []
    if poly(*p) != poly(*tp):
        mismatches.append(f"polynomial part {p} != published {tp}")
    if poly(*r) != poly(*tr):
        mismatches.append(f"remainder numerator {r} != published {tr}")
    if d != td:
        mismatches.append(f"pole {d} != published {td}")
    return verify_poly_identity(
        f"F{i}_at_c",
        f"published partial-fraction form of F_{i}(c_{i}, t) matches re-derivation",
        p, tp, extra_match=not mismatches,
        detail="; ".join(mismatches) or "all three components identical")


def _run_dfdc(i: int) -> IntervalClaim:
    h, h_dc, h_dt = dfdc(i)
    box = [(_c(i), _c(i) + F(1, 100)), (T_LO, T_HI)]
    return verify_grid_negative(
        f"DFDC{i}",
        f"dF_{i}/dc < 0 on [{box[0][0]}, {box[0][1]}] x [{T_LO}, {T_HI}]",
        h, [h_dc, h_dt], box, strict=True)


def _run_case331() -> IntervalClaim:
    return verify_grid_negative(
        "CASE331_FPRIME",
        f"L43_C331 filler bound derivative < 0 on [{T_LO}, {T_HI}]",
        case331_filler, [case331_filler_d], [(T_LO, T_HI)], strict=True)


def _run_case31_quad() -> IntervalClaim:
    # d/dx of -(2/3)x^2 + (1/3 + 14/100)x + 1/3 on x in [79/100, 1]
    deriv = poly(F(1, 3) + F(14, 100), F(-4, 3))
    return verify_poly_nonpositive(
        "CASE31_QUAD", "L43_C31 density quadratic is decreasing on [79/100, 1]",
        deriv, F(79, 100), F(1), strict=True)


def _run_g_alpha() -> IntervalClaim:
    for a in (F(1, 2), F(11, 20), F(7, 12)):
        lo = (1 - a) ** 2 / 8
        deriv = poly(1, F(-8) / (1 - a) ** 2)      # d/d e0 of g_a
        res = verify_poly_nonpositive(
            "G_ALPHA", f"g_a non-increasing on [{lo}, 1] at a={a}",
            deriv, lo, F(1), strict=False)
        if res.verdict != "verified":
            return res
    return IntervalClaim(
        "G_ALPHA",
        "JOIN_C3 penalty non-increasing in e0 past (1-a)^2/8 for a in "
        "{1/2, 11/20, 7/12}", "verified", None, None,
        "derivative 1 - 8 e0/(1-a)^2 <= 0 on each domain, exact endpoint analysis")


def _run_fprime_alpha() -> IntervalClaim:
    res = verify_grid_negative(
        "F_PRIME_ALPHA_NEG_AUX", "auxiliary", lambda a: -fprime_alpha(a),
        [lambda a: -fprime_alpha_d(a)], [(F(1, 2), F(7, 12))], strict=True)
    verdict = res.verdict
    return IntervalClaim(
        "F_PRIME_ALPHA",
        "JOIN_C3 endpoint function has strictly positive derivative on "
        "[1/2, 7/12] (printed sign is negative; see CONTROL_FPRIME_PRINTED)",
        verdict, res.worst_point,
        -res.worst_value_hi if res.worst_value_hi is not None else None,
        "verified as -f' < 0 by grid certificate; the conclusion "
        "f <= f(7/12) needs exactly this sign")


def _run_f_alpha() -> IntervalClaim:
    num = f_alpha_numerator()
    # known equality point at a = 7/12: factor it out exactly
    try:
        quot = poly_divide_linear(num, F(7, 12))
    except ValueError:
        return IntervalClaim("F_ALPHA", "f(a) <= 1/144 on [1/2, 7/12]", "refuted",
                             (F(7, 12),), poly_eval(num, F(7, 12)),
                             "7/12 is not an equality point of the cleared claim")
    # on [1/2, 7/12]: (a - 7/12) <= 0, so need quot >= 0 there
    res = verify_poly_nonpositive(
        "F_ALPHA_AUX", "aux", poly_scale(quot, -1), F(1, 2), F(7, 12), strict=True)
    sanity = poly_eval(num, F(1, 2)) < 0
    verdict = res.verdict if sanity else "refuted"
    return IntervalClaim(
        "F_ALPHA", "f(a) <= f(7/12) = 1/144 on [1/2, 7/12], equality only at 7/12",
        verdict, (F(7, 12),), F(0),
        "cleared to (a-7/12) * cubic with cubic > 0 on the interval; "
        "cubic analyzed by exact critical points")


def _run_e0_gap() -> IntervalClaim:
    ident = verify_poly_identity(
        "E0_DOMAIN_GAP", "gap identity", e0_gap_poly(), e0_gap_factored())
    if ident.verdict != "verified":
        return ident
    res = verify_poly_nonpositive(
        "E0_DOMAIN_GAP_AUX", "aux", poly_scale(e0_gap_poly(), -1),
        F(1, 2), F(7, 12), strict=True)
    return IntervalClaim(
        "E0_DOMAIN_GAP",
        "JOIN_C3 threshold exceeds the penalty vertex: 5/72 - (1-a)(a-1/2) "
        "- (1-a)^2/8 = (21a-16)(3a-2)/72 > 0 on [1/2, 7/12]",
        res.verdict, res.worst_point,
        -res.worst_value_hi if res.worst_value_hi is not None else None,
        "identity checked exactly; positivity by exact quadratic analysis")


def _run_control_cubic() -> IntervalClaim:
    doctored = poly_add(ENVELOPE_CUBICS[1], poly(F(2, 10) + F(13416, 100000)))
    res = verify_poly_nonpositive(
        "CONTROL_CUBIC_POSITIVE",
        "falsification control: envelope cubic 1 with constant +0.2 still < 0",
        doctored, T_LO, T_HI, strict=True)
    return res


def _run_control_fprime() -> IntervalClaim:
    res = verify_grid_negative(
        "CONTROL_FPRIME_PRINTED",
        "printed claim: f'(a) < 0 on [1/2, 7/12] (sign slip in the source chain)",
        fprime_alpha, [fprime_alpha_d], [(F(1, 2), F(7, 12))], strict=True)
    return res


# ---------------------------------------------------------------------------
# constants


@dataclass(frozen=True)
class ConstantCheck:
    constant_id: str
    expected: Fraction
    computed_lo: Fraction
    computed_hi: Fraction
    match: bool
    detail: str = ""

    def as_json(self) -> dict:
        return {
            "constant_id": self.constant_id,
            "expected": str(self.expected),
            "computed": (str(self.computed_lo) if self.computed_lo == self.computed_hi
                         else f"[{self.computed_lo}, {self.computed_hi}]"),
            "match": self.match,
            "detail": self.detail,
        }


def _exact_const(cid: str, expected: Fraction, value: Fraction,
                 detail: str = "") -> ConstantCheck:
    return ConstantCheck(cid, expected, value, value, value == expected, detail)


def verify_constant(constant_id: str) -> ConstantCheck:
    c = {
        "CONST_CASE31": lambda: _exact_const(
            "CONST_CASE31", F(2912, 10000),
            F(-2, 3) * F(79, 100) ** 2 + (F(1, 3) + F(14, 100)) * F(79, 100) + F(1, 3),
            "L43_C31 density value at a1 + c = 79/100"),
        "CONST_CASE11": lambda: _exact_const(
            "CONST_CASE11", F(288, 1000), F(45, 100) * F(64, 100),
            "L41_C11 density: |Z|(n + |I|)/2 at |Z| = 0.45n, |I| = 0.28n"),
        "CONST_L41_EQ7": lambda: _exact_const(
            "CONST_L41_EQ7", F(737, 10000),
            F(1, 4) * (F(1, 2) - F(28, 100)) * (F(1, 2) + 3 * F(28, 100)),
            "L41_C12 side-A bound at |A| = n/2, |I| = 0.28n"),
        "CONST_CASE12": lambda: _exact_const(
            "CONST_CASE12", F(73125, 1000000),
            F(45, 100) * (F(1, 2) - F(3, 4) * F(45, 100)),
            "L41_C12 side-A^c bound: |Z0|(|A^c| - 3|Z0|/4) at |Z0| = 0.45n, "
            "|A^c| = 0.5n (the displayed 0.45n-0.45n form evaluates to "
            "0.050625, not the stated value; the 0.5n form is the coherent one)"),
        "CONST_JOIN_C1": lambda: _exact_const(
            "CONST_JOIN_C1", F(67925, 1000000),
            F(1, 4) * (F(1, 2) - F(31, 100)) * (F(1, 2) + 3 * F(31, 100)),
            "JOIN_C1 bound at slice size 0.31n"),
        "CONST_JOIN_C4_EDGE": lambda: _exact_const(
            "CONST_JOIN_C4_EDGE", F(65853, 1000000),
            F(486, 1000) * (F(1, 2) - F(3, 4) * F(486, 1000)),
            "JOIN_C4 bound at |I u I0| = 0.486n, |A| = n/2"),
        "F_AT_7_12": lambda: _exact_const(
            "F_AT_7_12", F(1, 144), f_alpha(F(7, 12)),
            "JOIN_C3 endpoint value, exact rational evaluation"),
        "SQRT_0553": lambda: _sqrt_0553(),
    }
    if constant_id not in c:
        raise KeyError(f"unknown constant id {constant_id!r}")
    return c[constant_id]()


def _sqrt_0553() -> ConstantCheck:
    lo, hi = sqrt_enclosure(F(553, 1000))
    val_lo, val_hi = 2 * lo - 1, 2 * hi - 1
    return ConstantCheck(
        "SQRT_0553", F(486, 1000), val_lo, val_hi,
        match=val_lo >= F(486, 1000),
        detail="2 sqrt(553/1000) - 1 enclosed; printed 0.486 is a valid lower bound")


CONSTANT_IDS = ("CONST_CASE31", "CONST_CASE11", "CONST_L41_EQ7", "CONST_CASE12",
                "CONST_JOIN_C1", "CONST_JOIN_C4_EDGE", "F_AT_7_12", "SQRT_0553")


# ---------------------------------------------------------------------------
# catalog


@dataclass(frozen=True)
class CatalogEntry:
    claim_id: str
    kind: str                      # "claim" | "control"
    expected_verdict: str
    runner: Callable[[], IntervalClaim]

    def passed(self, result: IntervalClaim) -> bool:
        return result.verdict == self.expected_verdict


def catalog() -> list[CatalogEntry]:
    entries: list[CatalogEntry] = []
    for i in range(1, 6):
        entries.append(CatalogEntry(f"CUBIC{i}", "claim", "verified",
                                    lambda i=i: verify_cubic_negativity(i)))
    for i in range(1, 6):
        entries.append(CatalogEntry(f"G{i}", "claim", "verified",
                                    lambda i=i: _run_g_dominance(i)))
    for i in range(1, 6):
        entries.append(CatalogEntry(f"F{i}_at_c", "claim", "verified",
                                    lambda i=i: _run_f_transcription(i)))
    for i in range(1, 6):
        entries.append(CatalogEntry(f"DFDC{i}", "claim", "verified",
                                    lambda i=i: _run_dfdc(i)))
    entries.append(CatalogEntry("CASE331_FPRIME", "claim", "verified", _run_case331))
    entries.append(CatalogEntry("CASE31_QUAD", "claim", "verified", _run_case31_quad))
    entries.append(CatalogEntry("G_ALPHA", "claim", "verified", _run_g_alpha))
    entries.append(CatalogEntry("F_PRIME_ALPHA", "claim", "verified", _run_fprime_alpha))
    entries.append(CatalogEntry("F_ALPHA", "claim", "verified", _run_f_alpha))
    entries.append(CatalogEntry("E0_DOMAIN_GAP", "claim", "verified", _run_e0_gap))
    entries.append(CatalogEntry("CONTROL_CUBIC_POSITIVE", "control", "refuted",
                                _run_control_cubic))
    entries.append(CatalogEntry("CONTROL_FPRIME_PRINTED", "control", "refuted",
                                _run_control_fprime))
    return entries


def run_claim(claim_id: str) -> IntervalClaim:
    for entry in catalog():
        if entry.claim_id == claim_id:
            return entry.runner()
    raise KeyError(f"unknown claim id {claim_id!r}")


def verify_rational_bound(claim_id: str) -> IntervalClaim:
    """Run one catalog claim by id (grid or exact, whichever it is wired to)."""
    return run_claim(claim_id)


@dataclass(frozen=True)
class CatalogReport:
    claims: list[tuple[CatalogEntry, IntervalClaim]]
    constants: list[ConstantCheck]

    @property
    def all_passed(self) -> bool:
        return (all(e.passed(r) for e, r in self.claims)
                and all(c.match for c in self.constants))


def run_all() -> CatalogReport:
    claims = [(entry, entry.runner()) for entry in catalog()]
    constants = [verify_constant(cid) for cid in CONSTANT_IDS]
    return CatalogReport(claims, constants)
