"""Finite-dimensional representations: classical sl(2), standard q-deformed,
and the Jordanian h-deformed matrices obtained through the invertible
nonlinear map

    T = h J+ + (1 + (h J+)^2)^{1/2},
    Y = J- - (1/4) h^2 J+ (J0^2 - 1),
    H = (1 + (h J+)^2)^{1/2} J0.

Basis ordering is m = j, j-1, ..., -j (row 0 is the highest weight), with
J0 carrying diagonal entries 2m so that [J0, J+] = 2 J+ holds and the
displayed matrices of the source conventions are reproduced literally.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .matrices import OperatorMatrix, mat_log_unipotent, nilpotent_sqrt
from .scalars import LaurentScalar, MultiPoly, Q, RatFunc, q_integer


@dataclass(frozen=True)
class Spin:
    twice_j: int

    def __post_init__(self):
        if self.twice_j < 0:
            raise ValueError("spin must be nonnegative")

    @property
    def dimension(self) -> int:
        return self.twice_j + 1

    @staticmethod
    def parse(text: str) -> "Spin":
        text = text.strip()
        if "/" in text:
            num, den = text.split("/")
            if int(den) != 2:
                raise ValueError(f"spin must be a half-integer: {text}")
            return Spin(int(num))
        return Spin(2 * int(text))

    def __str__(self):
        if self.twice_j % 2 == 0:
            return str(self.twice_j // 2)
        return f"{self.twice_j}/2"


@dataclass
class RepMatrices:
    kind: str  # classical | q-deformed | jordanian
    j: Spin
    generators: dict


def _zeros(dim) -> list:
    z = RatFunc.zero()
    return [[z for _ in range(dim)] for _ in range(dim)]


@lru_cache(maxsize=None)
def build_classical_rep(j: Spin) -> RepMatrices:
    """J+|jm> = (j-m)(j+m+1)|j m+1>, J-|jm> = |j m-1>, J0 = diag(2m).

    Representations are immutable once built and shared via the cache.
    """
    d = j.dimension
    tj = j.twice_j
    jp = _zeros(d)
    jm = _zeros(d)
    j0 = _zeros(d)
    for k in range(1, d):
        # column k holds m = j - k; raising lands on row k-1
        jp[k - 1][k] = RatFunc.const(k * (tj - k + 1))
    for k in range(d - 1):
        jm[k + 1][k] = RatFunc.one()
    for k in range(d):
        j0[k][k] = RatFunc.const(tj - 2 * k)
    gens = {
        "J+": OperatorMatrix((d,), jp),
        "J-": OperatorMatrix((d,), jm),
        "J0": OperatorMatrix((d,), j0),
    }
    return RepMatrices("classical", j, gens)


@lru_cache(maxsize=None)
def build_q_rep(j: Spin, N: int) -> RepMatrices:
    """J+|jm> = [j-m]_q [j+m+1]_q |j m+1>; entries are t-series at order N."""
    d = j.dimension
    tj = j.twice_j
    z = LaurentScalar.zero()
    jp = [[z for _ in range(d)] for _ in range(d)]
    jm = [[z for _ in range(d)] for _ in range(d)]
    j0 = [[z for _ in range(d)] for _ in range(d)]
    for k in range(1, d):
        jp[k - 1][k] = q_integer(k, N) * q_integer(tj - k + 1, N)
    for k in range(d - 1):
        jm[k + 1][k] = LaurentScalar.one()
    for k in range(d):
        j0[k][k] = LaurentScalar.const(tj - 2 * k)
    gens = {
        "J+": OperatorMatrix((d,), jp),
        "J-": OperatorMatrix((d,), jm),
        "J0": OperatorMatrix((d,), j0),
    }
    return RepMatrices("q-deformed", j, gens)


def jordanian_from_classical(
    Jp: OperatorMatrix, Jm: OperatorMatrix, J0: OperatorMatrix
) -> dict:
    """Apply the nonlinear map to any classical triple (composite
    representations included); all series terminate on nilpotency of J+."""
    h = RatFunc.sym("h")
    one = RatFunc.one()
    I = OperatorMatrix.identity(Jp.dims, one)
    hJp = Jp.scale(h)
    S = nilpotent_sqrt(I + hJp @ hJp)
    T = hJp + S
    Tinv = S - hJp  # (hJ+ + S)(S - hJ+) = S^2 - (hJ+)^2 = 1, S commutes with J+
    X = _div_h_exact(mat_log_unipotent(T))
    H = S @ J0
    Y = Jm - (Jp @ (J0 @ J0 - I)).scale(h * h * RatFunc.const(Q(1, 4)))
    return {"X": X, "Y": Y, "H": H, "T": T, "Tinv": Tinv}


def _div_h_exact(M: OperatorMatrix) -> OperatorMatrix:
    def f(x: RatFunc) -> RatFunc:
        if x.is_zero():
            return x
        return RatFunc(_poly_div_sym(x.num, "h"), x.den)

    return M.map_entries(f)


def _poly_div_sym(p: MultiPoly, name: str) -> MultiPoly:
    from .scalars import _BITS, _SYM_INDEX  # exact monomial division

    shift = _BITS * _SYM_INDEX[name]
    out = {}
    for key, c in p.terms.items():
        e = (key >> shift) & ((1 << _BITS) - 1)
        if e < 1:
            raise ValueError("entry not divisible by h")
        out[key - (1 << shift)] = c
    return MultiPoly(out)


@lru_cache(maxsize=None)
def build_h_rep(j: Spin) -> RepMatrices:
    cl = build_classical_rep(j)
    gens = jordanian_from_classical(cl.generators["J+"], cl.generators["J-"], cl.generators["J0"])
    return RepMatrices("jordanian", j, gens)


def sinh_over_h(X: OperatorMatrix) -> OperatorMatrix:
    """sinh(hX)/h as a terminating series; h-division is exact."""
    from .matrices import _nilpotent_powers

    hX = X.scale(RatFunc.sym("h"))
    out = OperatorMatrix.zeros(X.dims, RatFunc.zero())
    fact = 1
    for k, P in _nilpotent_powers(hX):
        fact *= k
        if k % 2 == 1:
            out = out + P.scale(RatFunc.const(Q(1, fact)))
    return _div_h_exact(out)


def cosh_h(X: OperatorMatrix) -> OperatorMatrix:
    from .matrices import _nilpotent_powers

    hX = X.scale(RatFunc.sym("h"))
    out = OperatorMatrix.identity(X.dims, RatFunc.one())
    fact = 1
    for k, P in _nilpotent_powers(hX):
        fact *= k
        if k % 2 == 0:
            out = out + P.scale(RatFunc.const(Q(1, fact)))
    return out


def h_algebra_residuals(gens: dict) -> dict:
    """[H,X] - 2 sinh(hX)/h, [H,Y] + {Y, cosh hX}, [X,Y] - H."""
    X, Y, H = gens["X"], gens["Y"], gens["H"]
    res1 = (H @ X - X @ H) - sinh_over_h(X).scale(RatFunc.const(2))
    ch = cosh_h(X)
    res2 = (H @ Y - Y @ H) + (Y @ ch + ch @ Y)
    res3 = (X @ Y - Y @ X) - H
    return {"HX": res1, "HY": res2, "XY": res3}


def classical_commutator_residuals(rep: RepMatrices) -> dict:
    Jp, Jm, J0 = rep.generators["J+"], rep.generators["J-"], rep.generators["J0"]
    two = RatFunc.const(2)
    return {
        "J0J+": (J0 @ Jp - Jp @ J0) - Jp.scale(two),
        "J0J-": (J0 @ Jm - Jm @ J0) + Jm.scale(two),
        "J+J-": (Jp @ Jm - Jm @ Jp) - J0,
    }


def limit_rep(rep: RepMatrices) -> RepMatrices:
    """Entrywise q -> 1 limit of a q-deformed representation."""
    from .scalars import limit_q_to_1

    gens = {
        name: M.map_entries(limit_q_to_1) for name, M in rep.generators.items()
    }
    return RepMatrices("classical", rep.j, gens)


def classical_tensor_triple(r1: RepMatrices, r2: RepMatrices) -> tuple:
    """Coproduct images J -> J (x) 1 + 1 (x) J on the two-factor space."""
    from .matrices import kron

    out = []
    for name in ("J+", "J-", "J0"):
        a, b = r1.generators[name], r2.generators[name]
        Ia = OperatorMatrix.identity(a.dims, RatFunc.one())
        Ib = OperatorMatrix.identity(b.dims, RatFunc.one())
        out.append(kron(a, Ib) + kron(Ia, b))
    return tuple(out)
