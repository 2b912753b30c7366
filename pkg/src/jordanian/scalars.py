"""Exact coefficient arithmetic.

Three layers, bottom up:

* exact rationals (gmpy2 ``mpq``),
* ``MultiPoly`` -- sparse multivariate polynomials over Q in the fixed
  symbol set (h, alpha, z, z1, z2, z3, sigma),
* ``RatFunc`` -- quotients of ``MultiPoly`` with exact cross-multiplied
  equality,
* ``LaurentScalar`` -- truncated Laurent series in the formal variable
  t = log q with ``RatFunc`` coefficients.

q never exists as a standalone symbol: every q-power q^c is realised as
the series e^{c t}, so the q -> 1 limit is a read-off of the t^0
coefficient once all negative-degree coefficients are seen to cancel.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Union

from gmpy2 import mpq

Q = mpq

SYMBOLS = ("h", "alpha", "z", "z1", "z2", "z3", "sigma")
NSYM = len(SYMBOLS)
_SYM_INDEX = {name: i for i, name in enumerate(SYMBOLS)}

# Exponent vectors are packed into one int, 6 bits per symbol.  Packed
# keys add like exponent vectors as long as every exponent stays < 64;
# multiplication guards that bound.
_BITS = 6
_MASK = (1 << _BITS) - 1
_EXP_LIMIT = 1 << _BITS


class EngineError(Exception):
    """Base class for engine failures that are reported, not bugs."""


class ZeroDenominator(EngineError):
    pass


class PoleSurvivesLimit(EngineError):
    pass


class InsufficientTruncation(EngineError):
    pass


def pack_exponents(exps: Iterable[int]) -> int:
    key = 0
    for i, e in enumerate(exps):
        if e < 0 or e >= _EXP_LIMIT:
            raise ValueError(f"exponent {e} out of range for packing")
        key |= e << (_BITS * i)
    return key


def unpack_exponents(key: int) -> tuple:
    return tuple((key >> (_BITS * i)) & _MASK for i in range(NSYM))


QLike = Union[int, mpq]


def _as_q(x) -> mpq:
    if isinstance(x, mpq):
        return x
    return mpq(x)


class MultiPoly:
    """Sparse polynomial over Q in the fixed symbol set; no zero terms stored."""

    __slots__ = ("terms", "_maxes")

    def __init__(self, terms: Mapping[int, mpq] | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}
        self._maxes = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "MultiPoly":
        return MultiPoly()

    @staticmethod
    def const(c) -> "MultiPoly":
        c = _as_q(c)
        return MultiPoly({0: c}) if c else MultiPoly()

    @staticmethod
    def one() -> "MultiPoly":
        return MultiPoly({0: mpq(1)})

    @staticmethod
    def sym(name: str, power: int = 1, coeff=1) -> "MultiPoly":
        if power == 0:
            return MultiPoly.const(coeff)
        key = pack_exponents(
            tuple(power if i == _SYM_INDEX[name] else 0 for i in range(NSYM))
        )
        return MultiPoly({key: _as_q(coeff)})

    # -- bookkeeping -------------------------------------------------------

    def max_exponents(self) -> tuple:
        if self._maxes is None:
            maxes = [0] * NSYM
            for key in self.terms:
                for i in range(NSYM):
                    e = (key >> (_BITS * i)) & _MASK
                    if e > maxes[i]:
                        maxes[i] = e
            self._maxes = tuple(maxes)
        return self._maxes

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def const_value(self) -> mpq:
        if not self.terms:
            return mpq(0)
        if len(self.terms) == 1 and 0 in self.terms:
            return self.terms[0]
        raise ValueError("not a constant polynomial")

    def degree_in(self, name: str) -> int:
        return self.max_exponents()[_SYM_INDEX[name]]

    def total_degree(self) -> int:
        return max((sum(unpack_exponents(k)) for k in self.terms), default=0)

    # -- ring ops ----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, mpq)):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if not self.terms:
            return other
        if not other.terms:
            return self
        terms = dict(self.terms)
        for k, v in other.terms.items():
            s = terms.get(k)
            if s is None:
                terms[k] = v
            else:
                s = s + v
                if s:
                    terms[k] = s
                else:
                    del terms[k]
        return MultiPoly(terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, mpq)):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, mpq)):
            c = _as_q(other)
            if not c:
                return MultiPoly()
            return MultiPoly({k: v * c for k, v in self.terms.items()})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if not self.terms or not other.terms:
            return MultiPoly()
        ma, mb = self.max_exponents(), other.max_exponents()
        for i in range(NSYM):
            if ma[i] + mb[i] >= _EXP_LIMIT:
                raise OverflowError("polynomial degree exceeds packed-exponent bound")
        acc: dict = {}
        small, big = (self.terms, other.terms)
        if len(small) > len(big):
            small, big = big, small
        get = acc.get
        for ka, va in small.items():
            for kb, vb in big.items():
                k = ka + kb
                s = get(k)
                acc[k] = va * vb if s is None else s + va * vb
        return MultiPoly({k: v for k, v in acc.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n >> 1
            if base_needed:
                base = base * base
            n = base_needed
        return result

    def __eq__(self, other):
        if isinstance(other, (int, mpq)):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    # -- substitution and evaluation ----------------------------------------

    def subs(self, assignments: Mapping[str, "MultiPoly | int | mpq"]) -> "MultiPoly":
        """Substitute polynomials or rationals for symbols; exact expansion."""
        vals = {}
        for name, v in assignments.items():
            vals[_SYM_INDEX[name]] = v if isinstance(v, MultiPoly) else MultiPoly.const(v)
        out = MultiPoly()
        for key, coeff in self.terms.items():
            term = MultiPoly.const(coeff)
            rest = 0
            for i in range(NSYM):
                e = (key >> (_BITS * i)) & _MASK
                if not e:
                    continue
                if i in vals:
                    term = term * (vals[i] ** e)
                else:
                    rest |= e << (_BITS * i)
            if rest:
                term = term * MultiPoly({rest: mpq(1)})
            out = out + term
        return out

    def eval_all(self, point: Mapping[str, QLike]) -> mpq:
        """Evaluate at a fully rational point (oracle/testing helper)."""
        total = mpq(0)
        for key, coeff in self.terms.items():
            v = coeff
            for i in range(NSYM):
                e = (key >> (_BITS * i)) & _MASK
                if e:
                    v = v * _as_q(point[SYMBOLS[i]]) ** e
            total += v
        return total

    def content(self) -> mpq:
        """gcd of coefficients with the sign of the largest packed key's coeff."""
        from gmpy2 import gcd, lcm

        if not self.terms:
            return mpq(1)
        num = 0
        den = 1
        for v in self.terms.values():
            num = gcd(num, v.numerator)
            den = lcm(den, v.denominator)
        c = mpq(num, den)
        if self.terms[max(self.terms)] < 0:
            c = -c
        return c

    def coefficient_of(self, name: str, power: int) -> "MultiPoly":
        """Collect the sub-polynomial multiplying name**power."""
        i = _SYM_INDEX[name]
        shift = _BITS * i
        out = {}
        for key, coeff in self.terms.items():
            if (key >> shift) & _MASK == power:
                out[key - (power << shift)] = coeff
        return MultiPoly(out)

    def truncate_in(self, name: str, max_power: int) -> "MultiPoly":
        i = _SYM_INDEX[name]
        shift = _BITS * i
        return MultiPoly(
            {k: v for k, v in self.terms.items() if (k >> shift) & _MASK <= max_power}
        )

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for key in sorted(self.terms):
            coeff = self.terms[key]
            exps = unpack_exponents(key)
            factors = [
                SYMBOLS[i] + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(exps)
                if e
            ]
            mono = "*".join(factors)
            if mono:
                bits.append(f"{coeff}*{mono}" if coeff != 1 else mono)
            else:
                bits.append(str(coeff))
        return " + ".join(bits)


def sym(name: str) -> MultiPoly:
    return MultiPoly.sym(name)


class RatFunc:
    """Quotient of two MultiPoly, reduced by the denominator's content.

    Equality is exact via cross-multiplication; no polynomial gcd is
    attempted beyond constant content.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly | None = None):
        if den is None:
            den = MultiPoly.one()
        if den.is_zero():
            raise ZeroDenominator("zero denominator")
        if den.is_const():
            c = den.const_value()
            num = num * (1 / c)
            den = MultiPoly.one()
        else:
            c = den.content()
            if c != 1:
                inv = 1 / c
                num = num * inv
                den = den * inv
        self.num = num
        self.den = den

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "RatFunc":
        return RatFunc(MultiPoly.zero())

    @staticmethod
    def one() -> "RatFunc":
        return RatFunc(MultiPoly.one())

    @staticmethod
    def const(c) -> "RatFunc":
        return RatFunc(MultiPoly.const(c))

    @staticmethod
    def sym(name: str) -> "RatFunc":
        return RatFunc(MultiPoly.sym(name))

    @staticmethod
    def of(x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, MultiPoly):
            return RatFunc(x)
        return RatFunc.const(x)

    def _den_is_one(self) -> bool:
        return self.den.is_const()

    def zero_like(self) -> "RatFunc":
        return RF_ZERO

    def one_like(self) -> "RatFunc":
        return RF_ONE

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self._den_is_one()

    def as_poly(self) -> MultiPoly:
        if not self._den_is_one():
            raise ValueError("rational function is not polynomial")
        return self.num

    def is_const(self) -> bool:
        return self.num.is_const() and self._den_is_one()

    def const_value(self) -> mpq:
        if not self._den_is_one():
            raise ValueError("not constant")
        return self.num.const_value()

    # -- field ops ----------------------------------------------------------

    def __add__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        if self._den_is_one() and other._den_is_one():
            return RatFunc(self.num + other.num)
        return RatFunc(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        if self._den_is_one() and other._den_is_one():
            return RatFunc(self.num * other.num)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDenominator("zero denominator")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _coerce_rf(other) / self

    def __pow__(self, n: int):
        if n >= 0:
            return RatFunc(self.num**n, self.den**n)
        if self.is_zero():
            raise ZeroDenominator("zero denominator")
        return RatFunc(self.den ** (-n), self.num ** (-n))

    def __eq__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        if self._den_is_one() and other._den_is_one():
            return self.num == other.num
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def subs(self, assignments: Mapping[str, "MultiPoly | int | mpq"]) -> "RatFunc":
        return RatFunc(self.num.subs(assignments), self.den.subs(assignments))

    def eval_all(self, point: Mapping[str, QLike]) -> mpq:
        d = self.den.eval_all(point)
        if not d:
            raise ZeroDenominator("denominator vanishes at evaluation point")
        return self.num.eval_all(point) / d

    def __repr__(self):
        if self._den_is_one():
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


def _coerce_rf(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, mpq)):
        return RatFunc.const(x)
    if isinstance(x, MultiPoly):
        return RatFunc(x)
    return NotImplemented


RF_ZERO = RatFunc.zero()
RF_ONE = RatFunc.one()


class LaurentScalar:
    """Truncated Laurent series in t = log q with RatFunc coefficients.

    ``coeffs[i]`` is the coefficient of t^(min_deg + i).  Degrees above
    ``trunc`` are unknown; ``trunc is None`` means the series is exact
    (a Laurent polynomial in t).  Degrees below the stored range are
    exactly zero.
    """

    __slots__ = ("min_deg", "coeffs", "trunc")

    def __init__(self, min_deg: int, coeffs: list, trunc: int | None):
        # strip leading and trailing zero coefficients
        i = 0
        n = len(coeffs)
        while i < n and coeffs[i].is_zero():
            i += 1
        j = n
        while j > i and coeffs[j - 1].is_zero():
            j -= 1
        if i == j:
            self.min_deg = 0
            self.coeffs = []
        else:
            self.min_deg = min_deg + i
            self.coeffs = coeffs[i:j]
        self.trunc = trunc
        if trunc is not None and self.coeffs and self.min_deg + len(self.coeffs) - 1 > trunc:
            raise ValueError("stored coefficients extend beyond truncation order")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "LaurentScalar":
        return LaurentScalar(0, [], None)

    @staticmethod
    def one() -> "LaurentScalar":
        return LaurentScalar(0, [RF_ONE], None)

    @staticmethod
    def const(x) -> "LaurentScalar":
        r = RatFunc.of(x)
        if r.is_zero():
            return LaurentScalar.zero()
        return LaurentScalar(0, [r], None)

    @staticmethod
    def t_power(n: int, coeff=1) -> "LaurentScalar":
        return LaurentScalar(n, [RatFunc.of(coeff)], None)

    @staticmethod
    def of(x) -> "LaurentScalar":
        if isinstance(x, LaurentScalar):
            return x
        return LaurentScalar.const(x)

    # -- bookkeeping -------------------------------------------------------

    def zero_like(self) -> "LaurentScalar":
        return LaurentScalar(0, [], None)

    def one_like(self) -> "LaurentScalar":
        return LaurentScalar.one()

    def is_zero(self) -> bool:
        """True when every *known* coefficient vanishes."""
        return not self.coeffs

    def is_exact_zero(self) -> bool:
        return not self.coeffs and self.trunc is None

    def valuation_bound(self) -> float:
        """Lowest degree at which a nonzero coefficient may occur."""
        if self.coeffs:
            return self.min_deg
        if self.trunc is None:
            return float("inf")
        return self.trunc + 1

    def coefficient(self, d: int) -> RatFunc:
        if self.trunc is not None and d > self.trunc:
            raise InsufficientTruncation(f"coefficient at degree {d} is unknown")
        i = d - self.min_deg
        if not self.coeffs or i < 0 or i >= len(self.coeffs):
            return RF_ZERO
        return self.coeffs[i]

    def known_through(self) -> int | None:
        return self.trunc

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _coerce_ls(other)
        if other is NotImplemented:
            return NotImplemented
        if self.trunc is None:
            trunc = other.trunc
        elif other.trunc is None:
            trunc = self.trunc
        else:
            trunc = min(self.trunc, other.trunc)
        if not self.coeffs:
            return LaurentScalar(other.min_deg, list(other.coeffs), trunc)
        if not other.coeffs:
            return LaurentScalar(self.min_deg, list(self.coeffs), trunc)
        lo = min(self.min_deg, other.min_deg)
        hi = max(self.min_deg + len(self.coeffs), other.min_deg + len(other.coeffs))
        if trunc is not None:
            hi = min(hi, trunc + 1)
        out = []
        for d in range(lo, hi):
            a = self._at(d)
            b = other._at(d)
            out.append(a + b)
        return LaurentScalar(lo, out, trunc)

    __radd__ = __add__

    def _at(self, d: int) -> RatFunc:
        i = d - self.min_deg
        if not self.coeffs or i < 0 or i >= len(self.coeffs):
            return RF_ZERO
        return self.coeffs[i]

    def __neg__(self):
        return LaurentScalar(self.min_deg, [-c for c in self.coeffs], self.trunc)

    def __sub__(self, other):
        other = _coerce_ls(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce_ls(other)
        if other is NotImplemented:
            return NotImplemented
        # truncation bound: min over operands of (own trunc + other's valuation)
        va, vb = self.valuation_bound(), other.valuation_bound()
        bounds = []
        if self.trunc is not None:
            bounds.append(self.trunc + vb)
        if other.trunc is not None:
            bounds.append(other.trunc + va)
        trunc = min(bounds) if bounds else None
        if trunc == float("inf"):
            trunc = None
        if trunc is not None:
            trunc = int(trunc)
        if not self.coeffs or not other.coeffs:
            return LaurentScalar(0, [], trunc)
        lo = self.min_deg + other.min_deg
        hi = (self.min_deg + len(self.coeffs) - 1) + (
            other.min_deg + len(other.coeffs) - 1
        )
        if trunc is not None:
            hi = min(hi, trunc)
        out = []
        for d in range(lo, hi + 1):
            acc = RF_ZERO
            kmin = max(self.min_deg, d - (other.min_deg + len(other.coeffs) - 1))
            kmax = min(self.min_deg + len(self.coeffs) - 1, d - other.min_deg)
            for k in range(kmin, kmax + 1):
                a = self.coeffs[k - self.min_deg]
                if a.is_zero():
                    continue
                b = other.coeffs[d - k - other.min_deg]
                if b.is_zero():
                    continue
                acc = acc + a * b
            out.append(acc)
        return LaurentScalar(lo, out, trunc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_ls(other)
        if other is NotImplemented:
            return NotImplemented
        return self * series_invert(other)

    def __eq__(self, other):
        other = _coerce_ls(other)
        if other is NotImplemented:
            return NotImplemented
        return (
            self.min_deg == other.min_deg
            and self.trunc == other.trunc
            and len(self.coeffs) == len(other.coeffs)
            and all(a == b for a, b in zip(self.coeffs, other.coeffs))
        )

    __hash__ = None

    def agrees_with(self, other: "LaurentScalar") -> bool:
        """Equality of all coefficients over the common known range."""
        other = LaurentScalar.of(other)
        hi = min(
            self.trunc if self.trunc is not None else float("inf"),
            other.trunc if other.trunc is not None else float("inf"),
        )
        if hi == float("inf"):
            hi = max(
                self.min_deg + len(self.coeffs) - 1 if self.coeffs else 0,
                other.min_deg + len(other.coeffs) - 1 if other.coeffs else 0,
            )
        lo = min(
            self.min_deg if self.coeffs else 0,
            other.min_deg if other.coeffs else 0,
        )
        return all(self._at(d) == other._at(d) for d in range(lo, int(hi) + 1))

    def map_coeffs(self, f) -> "LaurentScalar":
        return LaurentScalar(self.min_deg, [f(c) for c in self.coeffs], self.trunc)

    def subs(self, assignments) -> "LaurentScalar":
        return self.map_coeffs(lambda c: c.subs(assignments))

    def __repr__(self):
        if not self.coeffs:
            body = "0"
        else:
            bits = []
            for i, c in enumerate(self.coeffs):
                if c.is_zero():
                    continue
                d = self.min_deg + i
                td = "" if d == 0 else ("*t" if d == 1 else f"*t^{d}")
                bits.append(f"({c!r}){td}")
            body = " + ".join(bits) or "0"
        tail = "" if self.trunc is None else f" + O(t^{self.trunc + 1})"
        return body + tail


def _coerce_ls(x):
    if isinstance(x, LaurentScalar):
        return x
    if isinstance(x, (int, mpq, MultiPoly, RatFunc)):
        return LaurentScalar.const(x)
    return NotImplemented


# ---------------------------------------------------------------------------
# series operations
# ---------------------------------------------------------------------------


def series_exp(c: MultiPoly | RatFunc | int, N: int) -> LaurentScalar:
    """e^{c t} = sum_{k<=N} c^k t^k / k!, realising q^c for symbolic c."""
    if N < 0:
        raise ValueError("truncation order must be nonnegative")
    c = RatFunc.of(c)
    if c.is_zero():
        return LaurentScalar.one()
    coeffs = [RF_ONE]
    acc = RF_ONE
    fact = mpq(1)
    for k in range(1, N + 1):
        acc = acc * c
        fact = fact * k
        coeffs.append(acc * (1 / fact))
    return LaurentScalar(0, coeffs, N)


def series_invert(s: LaurentScalar, order: int | None = None) -> LaurentScalar:
    """Multiplicative inverse; requires a nonzero leading coefficient.

    For a truncated input the result is known through trunc - 2*min_deg.
    An exact input needs ``order`` unless it is a single monomial.
    """
    if not s.coeffs:
        raise ZeroDenominator("cannot invert the zero series")
    m = s.min_deg
    c0 = s.coeffs[0]
    if len(s.coeffs) == 1 and s.trunc is None:
        return LaurentScalar(-m, [RF_ONE / c0], None)
    if s.trunc is not None:
        rel = s.trunc - m
        if order is not None:
            rel = min(rel, order + m)
        out_trunc = rel - m
    else:
        if order is None:
            raise ValueError("inverting an exact multi-term series needs an order")
        rel = order + m
        out_trunc = order
    # s = c0 t^m (1 + u); 1/s = t^{-m} c0^{-1} sum (-u)^k
    inv_c0 = RF_ONE / c0
    u = [RF_ZERO] * (rel + 1)
    for i, c in enumerate(s.coeffs[1:], start=1):
        if i <= rel:
            u[i] = c * inv_c0
    # Newton-free direct recurrence: b_0 = 1, b_n = -sum_{k=1..n} u_k b_{n-k}
    b = [RF_ONE] + [RF_ZERO] * rel
    for n in range(1, rel + 1):
        acc = RF_ZERO
        for k in range(1, n + 1):
            if not u[k].is_zero() and not b[n - k].is_zero():
                acc = acc + u[k] * b[n - k]
        b[n] = -acc
    coeffs = [c * inv_c0 for c in b]
    return LaurentScalar(-m, coeffs, out_trunc)


def eta_series(N: int) -> LaurentScalar:
    """eta = h / (q - 1) as a Laurent series: h (1/t - 1/2 + t/12 - ...)."""
    if N < 1:
        raise ValueError("eta_series needs N >= 1")
    qm1 = series_exp(MultiPoly.one(), N + 2) - LaurentScalar.one()
    inv = series_invert(qm1)
    h = LaurentScalar.const(MultiPoly.sym("h"))
    out = h * inv
    return out


def limit_q_to_1(s: LaurentScalar) -> RatFunc:
    """Read off the t^0 coefficient, certifying all poles cancelled."""
    if s.trunc is not None and s.trunc < 0:
        raise InsufficientTruncation("insufficient truncation")
    for i, c in enumerate(s.coeffs):
        if s.min_deg + i < 0 and not c.is_zero():
            raise PoleSurvivesLimit(
                f"pole survives limit: nonzero coefficient at t^{s.min_deg + i}"
            )
    return s._at(0)


# ---------------------------------------------------------------------------
# q-number helpers
# ---------------------------------------------------------------------------


def q_integer(n: int, N: int) -> LaurentScalar:
    """[n]_q = (q^n - q^-n)/(q - q^-1) = sum_i q^{n-1-2i}, exact in e^t terms."""
    if n == 0:
        return LaurentScalar.zero()
    if n < 0:
        return -q_integer(-n, N)
    out = LaurentScalar.zero()
    for i in range(n):
        out = out + series_exp(MultiPoly.const(n - 1 - 2 * i), N)
    return out


def q_factorial(n: int, N: int) -> LaurentScalar:
    out = LaurentScalar.one()
    for k in range(2, n + 1):
        out = out * q_integer(k, N)
    return out


def basic_integer(n: int, N: int, base_exp: QLike = 1) -> LaurentScalar:
    """{n}_{q^b} = (1 - q^{bn})/(1 - q^b) = sum_i q^{b i}."""
    out = LaurentScalar.zero()
    for i in range(n):
        out = out + series_exp(MultiPoly.const(mpq(base_exp) * i), N)
    return out


def basic_factorial(n: int, N: int, base_exp: QLike = 1) -> LaurentScalar:
    out = LaurentScalar.one()
    for k in range(2, n + 1):
        out = out * basic_integer(k, N, base_exp)
    return out
