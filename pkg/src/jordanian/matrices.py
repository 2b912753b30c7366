"""Dense operator matrices over exact scalars, with tensor-product indexing.

The scalar type is anything with +, -, *, ``is_zero`` and
``zero_like``/``one_like`` (RatFunc, LaurentScalar, noncommutative
polynomials).  Tensor index convention: the first factor varies slowest,
row index = i1 * dim2 + i2 for two factors.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

from .scalars import LaurentScalar, MultiPoly, Q, RatFunc


class OperatorMatrix:
    __slots__ = ("dims", "rows", "labels")

    def __init__(self, dims: Sequence[int], rows: list, labels=None):
        self.dims = tuple(dims)
        self.rows = rows
        self.labels = labels
        n = math.prod(self.dims)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError("matrix shape does not match factor dimensions")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_rows(rows: list, dims=None, labels=None) -> "OperatorMatrix":
        n = len(rows)
        return OperatorMatrix(dims if dims is not None else (n,), rows, labels)

    @staticmethod
    def identity(dims, one, labels=None) -> "OperatorMatrix":
        n = math.prod(tuple(dims))
        zero = one.zero_like()
        rows = [[one if i == j else zero for j in range(n)] for i in range(n)]
        return OperatorMatrix(dims, rows, labels)

    @staticmethod
    def zeros(dims, zero, labels=None) -> "OperatorMatrix":
        n = math.prod(tuple(dims))
        rows = [[zero for _ in range(n)] for _ in range(n)]
        return OperatorMatrix(dims, rows, labels)

    # -- bookkeeping -------------------------------------------------------

    @property
    def dim(self) -> int:
        return math.prod(self.dims)

    def zero_entry(self):
        for row in self.rows:
            for x in row:
                return x.zero_like()
        raise ValueError("empty matrix")

    def entry(self, i: int, j: int):
        return self.rows[i][j]

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.rows for x in row)

    def is_identity(self) -> bool:
        one = self.zero_entry().one_like()
        for i, row in enumerate(self.rows):
            for j, x in enumerate(row):
                want_one = i == j
                if want_one and not (x == one):
                    return False
                if not want_one and not x.is_zero():
                    return False
        return True

    def __eq__(self, other):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        if self.dim != other.dim:
            return False
        return all(
            a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb)
        )

    __hash__ = None

    def agrees_with(self, other: "OperatorMatrix") -> bool:
        """Laurent-entry comparison over common known ranges."""
        if self.dim != other.dim:
            return False
        for ra, rb in zip(self.rows, other.rows):
            for a, b in zip(ra, rb):
                if isinstance(a, LaurentScalar) or isinstance(b, LaurentScalar):
                    if not LaurentScalar.of(a).agrees_with(LaurentScalar.of(b)):
                        return False
                elif not (a == b):
                    return False
        return True

    def first_mismatch(self, other: "OperatorMatrix"):
        for i, (ra, rb) in enumerate(zip(self.rows, other.rows)):
            for j, (a, b) in enumerate(zip(ra, rb)):
                if not (a == b):
                    return (i, j, a, b)
        return None

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        rows = [
            [a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)
        ]
        return OperatorMatrix(self.dims, rows, self.labels)

    def __sub__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        rows = [
            [a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)
        ]
        return OperatorMatrix(self.dims, rows, self.labels)

    def __neg__(self) -> "OperatorMatrix":
        return OperatorMatrix(self.dims, [[-x for x in r] for r in self.rows], self.labels)

    def scale(self, c) -> "OperatorMatrix":
        return OperatorMatrix(
            self.dims, [[c * x for x in r] for r in self.rows], self.labels
        )

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        n = self.dim
        zero = self.zero_entry()
        bcols = other.rows
        out = []
        for i in range(n):
            arow = self.rows[i]
            orow = [None] * n
            for k in range(n):
                a = arow[k]
                if a.is_zero():
                    continue
                brow = bcols[k]
                for j in range(n):
                    b = brow[j]
                    if b.is_zero():
                        continue
                    prod = a * b
                    orow[j] = prod if orow[j] is None else orow[j] + prod
            out.append([zero if x is None else x for x in orow])
        return OperatorMatrix(self.dims, out, self.labels)

    def __pow__(self, n: int) -> "OperatorMatrix":
        if n < 0:
            raise ValueError("negative matrix power; invert explicitly")
        result = OperatorMatrix.identity(self.dims, self.zero_entry().one_like())
        base = self
        while n:
            if n & 1:
                result = result @ base
            n >>= 1
            if n:
                base = base @ base
        return result

    def map_entries(self, f: Callable) -> "OperatorMatrix":
        return OperatorMatrix(
            self.dims, [[f(x) for x in r] for r in self.rows], self.labels
        )

    def subs(self, assignments) -> "OperatorMatrix":
        return self.map_entries(lambda x: x.subs(assignments))

    def det(self):
        """Cofactor-expansion determinant; matrices here are small."""
        n = self.dim
        one = self.zero_entry().one_like()

        def _det(rows):
            m = len(rows)
            if m == 1:
                return rows[0][0]
            acc = None
            for j in range(m):
                x = rows[0][j]
                if x.is_zero():
                    continue
                minor = [[row[c] for c in range(m) if c != j] for row in rows[1:]]
                term = x * _det(minor)
                if j % 2:
                    term = -term
                acc = term if acc is None else acc + term
            return acc if acc is not None else one.zero_like()

        if n == 0:
            return one
        return _det(self.rows)

    def __repr__(self):
        body = ",\n ".join("[" + ", ".join(repr(x) for x in r) + "]" for r in self.rows)
        return f"OperatorMatrix(dims={self.dims},\n {body})"


# ---------------------------------------------------------------------------
# tensor-product plumbing
# ---------------------------------------------------------------------------


def kron(a: OperatorMatrix, b: OperatorMatrix, labels=None) -> OperatorMatrix:
    na, nb = a.dim, b.dim
    zero = a.zero_entry()
    rows = []
    for ia in range(na):
        arow = a.rows[ia]
        for ib in range(nb):
            brow = b.rows[ib]
            row = []
            for ja in range(na):
                x = arow[ja]
                if x.is_zero():
                    row.extend([zero] * nb)
                else:
                    row.extend([x * y if not y.is_zero() else zero for y in brow])
            rows.append(row)
    return OperatorMatrix(a.dims + b.dims, rows, labels)


def kron_all(mats: Sequence[OperatorMatrix]) -> OperatorMatrix:
    out = mats[0]
    for m in mats[1:]:
        out = kron(out, m)
    return out


def embed_two_factor(
    R: OperatorMatrix, dims: Sequence[int], pos: tuple
) -> OperatorMatrix:
    """Embed a two-factor operator into a longer tensor product.

    ``pos = (p, q)`` with p < q names the factors R acts on (R's own
    factor order is (p, q)); identity on the rest.  Built with explicit
    Kronecker data, no in-place index tricks.
    """
    p, q_ = pos
    dims = tuple(dims)
    n = math.prod(dims)
    dp, dq = dims[p], dims[q_]
    if R.dim != dp * dq:
        raise ValueError("embedded operator has wrong dimension")
    zero = R.zero_entry()
    rows = [[zero] * n for _ in range(n)]
    strides = []
    acc = 1
    for d in reversed(dims):
        strides.append(acc)
        acc *= d
    strides.reverse()

    others = [i for i in range(len(dims)) if i not in (p, q_)]

    def other_indices(k):
        out = []
        for i in others:
            out.append((k // strides[i]) % dims[i])
        return out

    # iterate over all (row of R, col of R, spectator configuration)
    import itertools

    spect_ranges = [range(dims[i]) for i in others]
    for ip in range(dp):
        for iq in range(dq):
            rrow = R.rows[ip * dq + iq]
            for jp in range(dp):
                for jq in range(dq):
                    x = rrow[jp * dq + jq]
                    if x.is_zero():
                        continue
                    for spect in itertools.product(*spect_ranges):
                        ri = ip * strides[p] + iq * strides[q_]
                        ci = jp * strides[p] + jq * strides[q_]
                        for idx, i_ in zip(others, spect):
                            ri += i_ * strides[idx]
                            ci += i_ * strides[idx]
                        rows[ri][ci] = x
    return OperatorMatrix(dims, rows)


def flip_reindex(R: OperatorMatrix) -> OperatorMatrix:
    """Entrywise flip of a two-factor operator: returns R' with
    R'[(i2,i1),(j2,j1)] = R[(i1,i2),(j1,j2)], acting on V2 (x) V1."""
    d1, d2 = R.dims
    n = R.dim
    rows = [[None] * n for _ in range(n)]
    for i1 in range(d1):
        for i2 in range(d2):
            src_row = R.rows[i1 * d2 + i2]
            dst = rows[i2 * d1 + i1]
            for j1 in range(d1):
                for j2 in range(d2):
                    dst[j2 * d1 + j1] = src_row[j1 * d2 + j2]
    return OperatorMatrix((d2, d1), rows, None)


# ---------------------------------------------------------------------------
# terminating matrix series over exact scalars
# ---------------------------------------------------------------------------


class NotNilpotent(Exception):
    pass


def _nilpotent_powers(N: OperatorMatrix, cap: int | None = None):
    """Yield N^1, N^2, ... until the zero matrix; error past the cap."""
    cap = cap if cap is not None else N.dim + 1
    P = N
    k = 1
    while not P.is_zero():
        if k > cap:
            raise NotNilpotent("matrix power series fails to terminate")
        yield k, P
        P = P @ N
        k += 1


def mat_exp_nilpotent(A: OperatorMatrix) -> OperatorMatrix:
    one = A.zero_entry().one_like()
    out = OperatorMatrix.identity(A.dims, one, A.labels)
    fact = 1
    for k, P in _nilpotent_powers(A):
        fact *= k
        out = out + P.scale(_const_like(one, Q(1, fact)))
    return out


def mat_log_unipotent(U: OperatorMatrix) -> OperatorMatrix:
    one = U.zero_entry().one_like()
    N = U - OperatorMatrix.identity(U.dims, one, U.labels)
    out = OperatorMatrix.zeros(U.dims, one.zero_like(), U.labels)
    for k, P in _nilpotent_powers(N):
        c = Q(1, k) if k % 2 else Q(-1, k)
        out = out + P.scale(_const_like(one, c))
    return out


def _const_like(one, c):
    if isinstance(one, RatFunc):
        return RatFunc.const(c)
    if isinstance(one, LaurentScalar):
        return LaurentScalar.const(c)
    return one.const_like(c)


def _binom_series(U: OperatorMatrix, exponent_coeffs) -> OperatorMatrix:
    """sum_k binom(sigma, k) N^k for N = U - 1, with binom supplied lazily."""
    one = U.zero_entry().one_like()
    I = OperatorMatrix.identity(U.dims, one, U.labels)
    N = U - I
    out = I
    for k, P in _nilpotent_powers(N):
        out = out + P.scale(exponent_coeffs(k))
    return out


def nilpotent_sqrt(A: OperatorMatrix) -> OperatorMatrix:
    """(1 + N)^{1/2} for nilpotent N = A - 1; terminating binomial series."""

    def coeff(k):
        c = Q(1)
        num = Q(1, 2)
        for i in range(k):
            c = c * (num - i)
        c = c / math.factorial(k)
        return _const_like(A.zero_entry().one_like(), c)

    return _binom_series(A, coeff)


def nilpotent_inv_sqrt(A: OperatorMatrix) -> OperatorMatrix:
    def coeff(k):
        c = Q(1)
        num = Q(-1, 2)
        for i in range(k):
            c = c * (num - i)
        c = c / math.factorial(k)
        return _const_like(A.zero_entry().one_like(), c)

    return _binom_series(A, coeff)


def unipotent_power(U: OperatorMatrix, sigma) -> OperatorMatrix:
    """(1 + N)^sigma for unipotent U and polynomial exponent sigma.

    binom(sigma, k) = sigma (sigma-1) ... (sigma-k+1) / k! stays
    polynomial in the symbols of sigma; the series terminates on the
    nilpotency of N.
    """
    sig = sigma if isinstance(sigma, (MultiPoly, RatFunc)) else MultiPoly.const(sigma)
    one = U.zero_entry().one_like()

    def coeff(k):
        c = RatFunc.one()
        for i in range(k):
            c = c * (RatFunc.of(sig) - i)
        c = c * RatFunc.const(Q(1, math.factorial(k)))
        if isinstance(one, RatFunc):
            return c
        if isinstance(one, LaurentScalar):
            return LaurentScalar.const(c)
        raise TypeError("unipotent_power expects RatFunc or LaurentScalar entries")

    return _binom_series(U, coeff)


def unipotent_inverse(U: OperatorMatrix) -> OperatorMatrix:
    """(1 + N)^{-1} = sum (-N)^k, terminating."""
    one = U.zero_entry().one_like()
    I = OperatorMatrix.identity(U.dims, one, U.labels)
    N = U - I
    out = I
    for k, P in _nilpotent_powers(N):
        out = out + P.scale(_const_like(one, Q(-1) ** k))
    return out


def unitriangular_inverse(M: OperatorMatrix) -> OperatorMatrix:
    """Inverse of an upper unitriangular matrix by back substitution."""
    n = M.dim
    one = M.zero_entry().one_like()
    zero = one.zero_like()
    inv = [[one if i == j else zero for j in range(n)] for i in range(n)]
    for j in range(n):
        for i in range(j - 1, -1, -1):
            acc = None
            for k in range(i + 1, j + 1):
                x = M.rows[i][k]
                y = inv[k][j]
                if x.is_zero() or y.is_zero():
                    continue
                acc = x * y if acc is None else acc + x * y
            inv[i][j] = -acc if acc is not None else zero
    return OperatorMatrix(M.dims, inv, M.labels)


def q_exponential(A: OperatorMatrix, denominators) -> OperatorMatrix:
    """sum_k A^k / d_k for a nilpotent A; d_k given by ``denominators(k)``."""
    one = A.zero_entry().one_like()
    out = OperatorMatrix.identity(A.dims, one, A.labels)
    for k, P in _nilpotent_powers(A):
        dk = denominators(k)
        out = out + P.scale(dk)
    return out


def mat_truncate_h(M: OperatorMatrix, max_power: int) -> OperatorMatrix:
    """Drop monomials of h-degree above max_power (RatFunc entries with
    polynomial denominators in h are not supported here)."""

    def tr(x):
        if isinstance(x, RatFunc):
            if not x.is_poly():
                raise ValueError("h-truncation needs polynomial entries")
            return RatFunc(x.num.truncate_in("h", max_power))
        raise TypeError("h-truncation expects RatFunc entries")

    return M.map_entries(tr)
