"""Exact-arithmetic layer: fixtures, independent oracles, ring properties."""

from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from jordanian.scalars import (
    InsufficientTruncation,
    LaurentScalar,
    MultiPoly,
    PoleSurvivesLimit,
    Q,
    RatFunc,
    ZeroDenominator,
    eta_series,
    limit_q_to_1,
    q_factorial,
    q_integer,
    series_exp,
    series_invert,
    sym,
)


def _expm1_coeffs(n):
    """Taylor coefficients of e^t - 1 through degree n, plain Fractions."""
    fact = 1
    out = [Fraction(0)]
    for k in range(1, n + 1):
        fact *= k
        out.append(Fraction(1, fact))
    return out


def _long_divide_one_by(a, n):
    """Oracle: coefficients b_{-1}..b_{n} of 1/a for a = t + a2 t^2 + ...

    Direct long division with Fractions, independent of LaurentScalar.
    """
    assert a[0] == 0 and a[1] == 1
    b = {}
    b[-1] = Fraction(1)  # t^0 equation: a_1 * b_{-1} = 1
    for d in range(0, n + 1):
        # t^{d+1} equation: sum_{i>=1} a_i b_{d+1-i} = 0 solves for b_d
        s = Fraction(0)
        for i in range(2, len(a)):
            j = d + 1 - i
            if j >= -1:
                s += a[i] * b[j]
        b[d] = -s
    return b


# ---------------------------------------------------------------------------
# polynomial and rational-function arithmetic
# ---------------------------------------------------------------------------


def test_difference_of_squares():
    h, alpha = sym("h"), sym("alpha")
    assert (h + alpha) * (h - alpha) == h * h - alpha * alpha


def test_poly_self_division_is_one():
    h = RatFunc.sym("h")
    assert h / h == RatFunc.one()


def test_square_expansion():
    z1 = sym("z1")
    alpha = sym("alpha")
    p = MultiPoly.one() + 2 * alpha * z1
    expanded = MultiPoly.one() + 4 * alpha * z1 + 4 * alpha**2 * z1**2
    assert p * p == expanded


def test_division_by_zero_poly():
    with pytest.raises(ZeroDenominator):
        RatFunc.sym("h") / RatFunc.zero()


def test_ratfunc_cross_equality():
    h, a = sym("h"), sym("alpha")
    lhs = RatFunc(h * h - a * a, h - a)
    assert lhs == RatFunc(h + a)


def test_subs_and_eval():
    h, a = sym("h"), sym("alpha")
    p = h * h + 3 * a
    assert p.subs({"alpha": Q(1, 3)}) == h * h + 1
    assert p.eval_all({"h": 2, "alpha": Q(1, 3), "z": 0, "z1": 0, "z2": 0, "z3": 0, "sigma": 0}) == 5


_consts = st.integers(min_value=-4, max_value=4)


@st.composite
def polys(draw):
    nterms = draw(st.integers(min_value=0, max_value=4))
    p = MultiPoly.zero()
    for _ in range(nterms):
        c = draw(_consts)
        eh = draw(st.integers(min_value=0, max_value=2))
        ea = draw(st.integers(min_value=0, max_value=2))
        ez = draw(st.integers(min_value=0, max_value=1))
        p = p + MultiPoly.sym("h", eh) * MultiPoly.sym("alpha", ea) * MultiPoly.sym("z1", ez) * c
    return p


@given(polys(), polys(), polys())
@settings(max_examples=120, deadline=None)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a


@given(polys(), polys())
@settings(max_examples=60, deadline=None)
def test_ratfunc_field_axioms(a, b):
    ra = RatFunc(a, MultiPoly.one() + sym("h"))
    rb = RatFunc(b)
    assert ra + rb - rb == ra
    if not rb.is_zero():
        assert (ra / rb) * rb == ra


# ---------------------------------------------------------------------------
# exponential series
# ---------------------------------------------------------------------------


def test_series_exp_zero():
    assert series_exp(MultiPoly.zero(), 5) == LaurentScalar.one()


def test_series_exp_alpha_order2():
    a = sym("alpha")
    s = series_exp(a, 2)
    assert s.coefficient(0) == RatFunc.one()
    assert s.coefficient(1) == RatFunc(a)
    assert s.coefficient(2) == RatFunc(a * a * Q(1, 2))
    assert s.trunc == 2


def test_series_exp_et():
    s = series_exp(MultiPoly.one(), 3)
    assert [s.coefficient(k) for k in range(4)] == [
        RatFunc.const(1),
        RatFunc.const(1),
        RatFunc.const(Q(1, 2)),
        RatFunc.const(Q(1, 6)),
    ]


# ---------------------------------------------------------------------------
# series inversion
# ---------------------------------------------------------------------------


def test_invert_one_plus_t():
    s = LaurentScalar(0, [RatFunc.one(), RatFunc.one()], 4)
    inv = series_invert(s)
    for k in range(5):
        assert inv.coefficient(k) == RatFunc.const((-1) ** k)


def test_invert_expm1_matches_long_division():
    n = 8
    a = _expm1_coeffs(n + 2)
    oracle = _long_divide_one_by(a, n)
    s = series_exp(MultiPoly.one(), n + 2) - LaurentScalar.one()
    inv = series_invert(s)
    assert inv.min_deg == -1
    for d in range(-1, n + 1):
        got = inv.coefficient(d)
        want = oracle[d]
        assert got == RatFunc.const(Q(want.numerator, want.denominator))


def test_invert_constant_term():
    s = LaurentScalar(0, [RatFunc.const(2), RatFunc.zero(), RatFunc.one()], 2)
    inv = series_invert(s)
    assert inv.coefficient(0) == RatFunc.const(Q(1, 2))


def test_invert_zero_series_raises():
    with pytest.raises(ZeroDenominator):
        series_invert(LaurentScalar.zero())


@given(st.lists(_consts, min_size=1, max_size=5), st.integers(min_value=-2, max_value=2))
@settings(max_examples=80, deadline=None)
def test_invert_involution(cs, m):
    if cs[0] == 0:
        cs[0] = 1
    s = LaurentScalar(m, [RatFunc.const(c) for c in cs], m + 6)
    twice = series_invert(series_invert(s))
    assert twice.agrees_with(s)


# ---------------------------------------------------------------------------
# eta and the q -> 1 limit
# ---------------------------------------------------------------------------


def test_eta_leading_coefficients():
    # oracle: long-divide 1 by (e^t - 1), multiply by h
    oracle = _long_divide_one_by(_expm1_coeffs(10), 6)
    eta = eta_series(6)
    h = RatFunc.sym("h")
    assert eta.min_deg == -1
    assert eta.coefficient(-1) == h
    assert eta.coefficient(0) == h * RatFunc.const(Q(-1, 2))
    for d in range(-1, 5):
        want = oracle[d]
        assert eta.coefficient(d) == h * RatFunc.const(Q(want.numerator, want.denominator))


def test_eta_defining_identity():
    N = 6
    eta = eta_series(N)
    qm1 = series_exp(MultiPoly.one(), N + 2) - LaurentScalar.one()
    prod = eta * qm1
    assert prod.agrees_with(LaurentScalar.const(sym("h")))


def test_limit_eta_times_qm1():
    N = 4
    eta = eta_series(N)
    qm1 = series_exp(MultiPoly.one(), N + 2) - LaurentScalar.one()
    assert limit_q_to_1(eta * qm1) == RatFunc.sym("h")


def test_limit_eta_times_one_minus_q_power():
    # eta * (1 - q^{-1-alpha}) -> h(1+alpha).  Oracle: convolve the two
    # expansions by hand at order t^0: h(1/t - 1/2 + ...) * ((1+a)t - (1+a)^2 t^2/2 + ...)
    a = sym("alpha")
    N = 6
    eta = eta_series(N)
    expo = -(MultiPoly.one() + a)
    one_minus = LaurentScalar.one() - series_exp(expo, N + 2)
    got = limit_q_to_1(eta * one_minus)

    inv = _long_divide_one_by(_expm1_coeffs(10), 6)  # coefficients of 1/(e^t-1)
    onepa = MultiPoly.one() + a
    want = MultiPoly.zero()
    # t^0 coefficient of sum_k [-(-(1+a))^k/k!] t^k * sum_j inv_j t^j, j = -k
    fact = 1
    for k in range(1, 6):
        fact *= k
        ck = -((-1) ** k) * (onepa**k) * Q(1, fact)
        j = -k
        if j in inv:
            want = want + ck * Q(inv[j].numerator, inv[j].denominator)
    want = want * sym("h")
    assert got == RatFunc(want)
    assert got == RatFunc(sym("h") * (MultiPoly.one() + a))


def test_limit_constant():
    assert limit_q_to_1(LaurentScalar.const(5)) == RatFunc.const(5)


def test_limit_pole_error():
    with pytest.raises(PoleSurvivesLimit):
        limit_q_to_1(eta_series(4))


def test_limit_insufficient_truncation():
    s = LaurentScalar(-2, [RatFunc.one()], -1)
    with pytest.raises(InsufficientTruncation):
        limit_q_to_1(s)


def test_truncation_stability_of_limit():
    # the adaptive-order contract: same limit at N and N+2
    a = sym("alpha")
    for N in (4, 6):
        eta = eta_series(N)
        one_minus = LaurentScalar.one() - series_exp(-(MultiPoly.one() + a), N + 2)
        val = limit_q_to_1(eta * one_minus)
        assert val == RatFunc(sym("h") * (MultiPoly.one() + a))


def test_q_brackets_tend_to_n():
    for n in range(1, 7):
        # {n}_q = (1-q^n)/(1-q)
        N = 4
        num = LaurentScalar.one() - series_exp(MultiPoly.const(n), N + 2)
        den = LaurentScalar.one() - series_exp(MultiPoly.one(), N + 2)
        assert limit_q_to_1(num / den) == RatFunc.const(n)
        # [n]_q symmetric bracket
        numb = series_exp(MultiPoly.const(n), N + 2) - series_exp(MultiPoly.const(-n), N + 2)
        denb = series_exp(MultiPoly.one(), N + 2) - series_exp(MultiPoly.const(-1), N + 2)
        assert limit_q_to_1(numb / denb) == RatFunc.const(n)
        assert limit_q_to_1(q_integer(n, N)) == RatFunc.const(n)


def test_q_integer_matches_ratio_form():
    N = 5
    for n in range(1, 5):
        numb = series_exp(MultiPoly.const(n), N + 2) - series_exp(MultiPoly.const(-n), N + 2)
        denb = series_exp(MultiPoly.one(), N + 2) - series_exp(MultiPoly.const(-1), N + 2)
        assert q_integer(n, N).agrees_with(numb / denb)


def test_q_factorial_limit():
    assert limit_q_to_1(q_factorial(3, 4)) == RatFunc.const(6)


def test_mpq_serialisable_roundtrip():
    x = mpq(-7, 3)
    s = f"{x.numerator}/{x.denominator}"
    num, den = s.split("/")
    assert mpq(int(num), int(den)) == x
