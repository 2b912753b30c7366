"""R matrices: contraction limits of the standard q-deformed matrices and
direct evaluation of the Jordanian universal element, coloured and not,
plus the matrix identities that certify them (Yang-Baxter, triangularity,
intertwining, exchange symmetry, quasitriangularity).

Conventions: tensor row index = i1 * dim2 + i2; colour values z act as the
scalar of the central generator on their own leg.  The second deformation
parameter enters through the antisymmetric twist
exp[alpha h (X (x) Z - Z (x) X)], realised on representations as the
unipotent power T^{alpha z'} per leg.
"""

from __future__ import annotations

from dataclasses import dataclass

from .matrices import (
    OperatorMatrix,
    embed_two_factor,
    flip_reindex,
    kron,
    mat_exp_nilpotent,
    q_exponential,
    unipotent_power,
    unitriangular_inverse,
)
from .reps import Spin, build_h_rep, build_q_rep
from .scalars import (
    LaurentScalar,
    MultiPoly,
    Q,
    RatFunc,
    basic_factorial,
    eta_series,
    limit_q_to_1,
    q_factorial,
    series_exp,
    series_invert,
    sym,
)

ALPHA = MultiPoly.sym("alpha")


@dataclass
class RMatrix:
    body: OperatorMatrix
    labels: tuple  # ((Spin, colour-or-None), (Spin, colour-or-None))
    provenance: str  # contracted | direct-universal | twist-conjugated


def colour_of(value) -> MultiPoly | None:
    """Normalise a colour spec: None, a symbol name, or a rational."""
    if value is None:
        return None
    if isinstance(value, MultiPoly):
        return value
    if isinstance(value, str):
        return MultiPoly.sym(value)
    return MultiPoly.const(value)


def label_string(j1: Spin, z1, j2: Spin, z2) -> str:
    def fmt(z):
        return "-" if z is None else repr(z)

    return f"j1={j1},z1={fmt(z1)};j2={j2},z2={fmt(z2)}"


# ---------------------------------------------------------------------------
# transforming matrix M and the universal R_q
# ---------------------------------------------------------------------------


def build_M(j: Spin, N: int) -> OperatorMatrix:
    """M = E_q(eta J+) with E_q(x) = sum x^n / [n]_q!; unitriangular with
    poles of order up to 2j."""
    rq = build_q_rep(j, N)
    eta = eta_series(N)
    A = rq.generators["J+"].map_entries(lambda x: x * eta)
    return q_exponential(A, lambda k: series_invert(q_factorial(k, N)))


def eval_universal_Rq(j1: Spin, j2: Spin, N: int) -> RMatrix:
    """q^{(1/2) J0 (x) J0} exp_{q^-2}((1 - q^-2) q^{J0/2} J+ (x) q^{-J0/2} J-)."""
    r1, r2 = build_q_rep(j1, N), build_q_rep(j2, N)
    d1, d2 = j1.dimension, j2.dimension

    def half_weights(j: Spin):
        return [Q(j.twice_j - 2 * k, 2) for k in range(j.dimension)]

    m1, m2 = half_weights(j1), half_weights(j2)

    def diag(dim, exps):
        z = LaurentScalar.zero()
        rows = [[z] * dim for _ in range(dim)]
        for k in range(dim):
            rows[k][k] = series_exp(MultiPoly.const(exps[k]), N)
        return OperatorMatrix((dim,), rows)

    qJ0_half_1 = diag(d1, m1)
    qJ0_half_2_inv = diag(d2, [-m for m in m2])
    one_minus_qm2 = LaurentScalar.one() - series_exp(MultiPoly.const(-2), N)
    arg = kron(qJ0_half_1 @ r1.generators["J+"], qJ0_half_2_inv @ r2.generators["J-"])
    arg = arg.map_entries(lambda x: x * one_minus_qm2)
    qexp = q_exponential(arg, lambda k: series_invert(basic_factorial(k, N, -2)))
    # diagonal prefactor q^{2 m1 m2}
    z = LaurentScalar.zero()
    rows = [[z] * (d1 * d2) for _ in range(d1 * d2)]
    for k1 in range(d1):
        for k2 in range(d2):
            i = k1 * d2 + k2
            rows[i][i] = series_exp(MultiPoly.const(2 * m1[k1] * m2[k2]), N)
    pref = OperatorMatrix((d1, d2), rows)
    return RMatrix(pref @ qexp, ((j1, None), (j2, None)), "q-standard")


# ---------------------------------------------------------------------------
# contraction route
# ---------------------------------------------------------------------------


def _contract_core_at(j1: Spin, j2: Spin, N: int, eta_factor=None) -> OperatorMatrix:
    """lim_q->1 (M^-1 (x) M^-1) R_q (M (x) M) at a fixed truncation order.

    ``eta_factor`` (a scalar, or a callable N -> LaurentScalar) multiplies
    eta when deliberately mis-building M, for negative testing of the
    pole-cancellation certificate."""
    if eta_factor is None:
        M1, M2 = build_M(j1, N), build_M(j2, N)
    else:
        M1 = _build_M_wrong(j1, N, eta_factor)
        M2 = _build_M_wrong(j2, N, eta_factor)
    Rq = eval_universal_Rq(j1, j2, N).body
    MM = kron(M1, M2)
    MMinv = kron(unitriangular_inverse(M1), unitriangular_inverse(M2))
    prod = MMinv @ Rq @ MM
    return prod.map_entries(limit_q_to_1)


def _build_M_wrong(j: Spin, N: int, eta_factor) -> OperatorMatrix:
    rq = build_q_rep(j, N)
    factor = eta_factor(N) if callable(eta_factor) else LaurentScalar.of(eta_factor)
    eta = eta_series(N) * factor
    A = rq.generators["J+"].map_entries(lambda x: x * eta)
    return q_exponential(A, lambda k: series_invert(q_factorial(k, N)))


def _adaptive(compute, bound: int, trunc: int | None):
    """Run at N = 2*bound and N+2 and demand exact agreement, unless a
    truncation override pins a single order."""
    if trunc is not None:
        return compute(trunc)
    N = 2 * bound
    first = compute(N)
    second = compute(N + 2)
    if not (first == second):
        raise ArithmeticError(
            "adaptive truncation disagreement: raise the truncation order"
        )
    return first


def _leg_colour_factor_at(j: Spin, c: MultiPoly, N: int) -> OperatorMatrix:
    """lim_q->1 M^-1 diag(q^{c m}) M for one tensor leg; by the twist
    contraction identity this equals T~^{c} as a unipotent power."""
    M = build_M(j, N)
    Minv = unitriangular_inverse(M)
    d = j.dimension
    z = LaurentScalar.zero()
    rows = [[z] * d for _ in range(d)]
    for k in range(d):
        m = Q(j.twice_j - 2 * k, 2)
        rows[k][k] = series_exp(c * MultiPoly.const(m), N)
    D = OperatorMatrix((d,), rows)
    return (Minv @ D @ M).map_entries(limit_q_to_1)


def contract_colour_factor(j: Spin, c, trunc: int | None = None) -> OperatorMatrix:
    c = c if isinstance(c, MultiPoly) else MultiPoly.const(c)
    return _adaptive(
        lambda N: _leg_colour_factor_at(j, c, N), 2 * j.twice_j, trunc
    )


def contract_R(
    j1: Spin,
    j2: Spin,
    colours: tuple | None = None,
    trunc: int | None = None,
    monolithic: bool = False,
    eta_factor=None,
) -> RMatrix:
    """Contraction limit producing the Jordanian matrix.

    Uncoloured: lim (M^-1 (x) M^-1) R_q (M (x) M).  Coloured: the twist
    F^_lambda^-1 = D1 (x) D2 is diagonal and splits across the legs, so

      lim (MM)^-1 F^-1 R_q F^-1 (MM)
        = [lim (MM)^-1 F^-1 (MM)] [lim (MM)^-1 R_q (MM)] [lim (MM)^-1 F^-1 (MM)]

    with every bracket individually pole-free; each bracket's limit is
    certified separately.  ``monolithic=True`` computes the undivided
    product instead (slower; used to cross-check the factorisation).
    """
    bound = j1.twice_j + j2.twice_j
    core = _adaptive(
        lambda N: _contract_core_at(j1, j2, N, eta_factor=eta_factor), bound, trunc
    )
    if colours is None:
        return RMatrix(core, ((j1, None), (j2, None)), "contracted")
    z1, z2 = (colour_of(colours[0]), colour_of(colours[1]))
    if monolithic:
        body = _adaptive(
            lambda N: _contract_coloured_monolithic_at(j1, j2, z1, z2, N),
            2 * bound,
            trunc,
        )
        return RMatrix(body, ((j1, z1), (j2, z2)), "contracted")
    C1 = contract_colour_factor(j1, -ALPHA * z2, trunc)
    C2 = contract_colour_factor(j2, ALPHA * z1, trunc)
    K = kron(C1, C2)
    body = K @ core @ K
    return RMatrix(body, ((j1, z1), (j2, z2)), "contracted")


def _contract_coloured_monolithic_at(
    j1: Spin, j2: Spin, z1: MultiPoly, z2: MultiPoly, N: int
) -> OperatorMatrix:
    M1, M2 = build_M(j1, N), build_M(j2, N)
    Rq = eval_universal_Rq(j1, j2, N).body
    d1, d2 = j1.dimension, j2.dimension
    z = LaurentScalar.zero()
    rows = [[z] * (d1 * d2) for _ in range(d1 * d2)]
    for k1 in range(d1):
        m1 = Q(j1.twice_j - 2 * k1, 2)
        for k2 in range(d2):
            m2 = Q(j2.twice_j - 2 * k2, 2)
            i = k1 * d2 + k2
            expo = ALPHA * (z1 * MultiPoly.const(m2) - z2 * MultiPoly.const(m1))
            rows[i][i] = series_exp(expo, N)
    Finv = OperatorMatrix((d1, d2), rows)
    MM = kron(M1, M2)
    MMinv = kron(unitriangular_inverse(M1), unitriangular_inverse(M2))
    prod = MMinv @ Finv @ Rq @ Finv @ MM
    return prod.map_entries(limit_q_to_1)


# ---------------------------------------------------------------------------
# direct route through the universal element
# ---------------------------------------------------------------------------


def eval_universal_Rh(
    j1: Spin, j2: Spin, colours: tuple | None = None
) -> RMatrix:
    """exp(-h X (x) TH) exp(h TH (x) X), coloured by the antisymmetric
    twist.  The coloured matrix is built both by twist-conjugation and by
    the three-exponential closed form; their equality is asserted."""
    g1 = build_h_rep(j1).generators
    g2 = build_h_rep(j2).generators
    h = RatFunc.sym("h")
    TH1 = g1["T"] @ g1["H"]
    TH2 = g2["T"] @ g2["H"]
    R = mat_exp_nilpotent(kron(g1["X"], TH2).scale(-h)) @ mat_exp_nilpotent(
        kron(TH1, g2["X"]).scale(h)
    )
    if colours is None:
        return RMatrix(R, ((j1, None), (j2, None)), "direct-universal")
    z1, z2 = (colour_of(colours[0]), colour_of(colours[1]))
    # route 1: R_{h,alpha} = F_alpha^-1 R_h F_alpha^-1 with
    # F_alpha^-1 = T^{-alpha z2} (x) T^{alpha z1}
    Finv = kron(
        unipotent_power(g1["T"], -ALPHA * z2), unipotent_power(g2["T"], ALPHA * z1)
    )
    R_twist = Finv @ R @ Finv
    # route 2: the three-exponential closed form
    az1 = RatFunc(ALPHA * z1)
    az2 = RatFunc(ALPHA * z2)
    I1 = OperatorMatrix.identity(g1["T"].dims, RatFunc.one())
    I2 = OperatorMatrix.identity(g2["T"].dims, RatFunc.one())
    E0 = kron(
        unipotent_power(g1["T"], -2 * ALPHA * z2),
        unipotent_power(g2["T"], 2 * ALPHA * z1),
    )
    T2sq = g2["T"] @ g2["T"] - I2
    T1sq = g1["T"] @ g1["T"] - I1
    arg1 = kron(g1["X"], TH2 + T2sq.scale(az1)).scale(-h)
    arg2 = kron(TH1 - T1sq.scale(az2), g2["X"]).scale(h)
    R_three = E0 @ mat_exp_nilpotent(arg1) @ mat_exp_nilpotent(arg2)
    if not (R_twist == R_three):
        raise ArithmeticError(
            "coloured universal R: twist-conjugated and three-exponential "
            "evaluations disagree"
        )
    return RMatrix(R_twist, ((j1, z1), (j2, z2)), "direct-universal")


_R_CACHE: dict = {}


def _colour_key(colours):
    if colours is None:
        return None
    return tuple(repr(colour_of(z)) for z in colours)


def get_R(
    j1: Spin,
    j2: Spin,
    colours: tuple | None = None,
    route: str = "direct",
    trunc: int | None = None,
) -> RMatrix:
    """Memoised R-matrix access; matrices are immutable once built."""
    key = (route, j1.twice_j, j2.twice_j, _colour_key(colours), trunc)
    hit = _R_CACHE.get(key)
    if hit is not None:
        return hit
    if route == "direct":
        out = eval_universal_Rh(j1, j2, colours)
    elif route == "contract":
        out = contract_R(j1, j2, colours, trunc=trunc)
    else:
        raise ValueError(f"unknown route {route!r}")
    _R_CACHE[key] = out
    return out


# ---------------------------------------------------------------------------
# coloured coproducts on representation pairs
# ---------------------------------------------------------------------------


def _leg_scalars(colours):
    if colours is None:
        return RatFunc.zero(), RatFunc.zero(), RatFunc.zero()
    z1, z2 = colour_of(colours[0]), colour_of(colours[1])
    return RatFunc(z1), RatFunc(z2), RatFunc(ALPHA)


def coproduct_matrix(
    gen: str, j1: Spin, j2: Spin, colours: tuple | None = None, flipped: bool = False
) -> OperatorMatrix:
    """Delta_{h,alpha}(gen) or its flip sigma o Delta, evaluated on the
    (j1, z1) (x) (j2, z2) representation."""
    g1 = build_h_rep(j1).generators
    g2 = build_h_rep(j2).generators
    z1, z2, a = _leg_scalars(colours)
    h = RatFunc.sym("h")
    I1 = OperatorMatrix.identity(g1["T"].dims, RatFunc.one())
    I2 = OperatorMatrix.identity(g2["T"].dims, RatFunc.one())

    if flipped:
        ga, gb = g2, g1
        za, zb = z2, z1
        Ia, Ib = I2, I1
    else:
        ga, gb = g1, g2
        za, zb = z1, z2
        Ia, Ib = I1, I2
    # below, "left" factors live on leg a and carry colour za
    Ta, Tb = ga["T"], gb["T"]
    Tainv, Tbinv = ga["Tinv"], gb["Tinv"]
    dTa, dTb = Ta - Tainv, Tb - Tbinv

    def two(A, B):
        return kron(B, A) if flipped else kron(A, B)

    if gen == "X":
        return two(ga["X"], Ib) + two(Ia, gb["X"])
    if gen == "Z":
        return two(Ia.scale(za), Ib) + two(Ia, Ib.scale(zb))
    if gen == "H":
        out = two(ga["H"], Tb) + two(Tainv, gb["H"])
        out = out + two(Tainv.scale(za * a), dTb) - two(dTa, Tb.scale(zb * a))
        return out
    if gen == "Y":
        out = two(ga["Y"], Tb) + two(Tainv, gb["Y"])
        out = out + (two(ga["H"], Tb.scale(zb)) - two(Tainv.scale(za), gb["H"])).scale(
            a * h
        )
        half = RatFunc.const(Q(1, 2))
        out = out - (
            two(Tainv.scale(za * za), dTb) + two(dTa, Tb.scale(zb * zb))
        ).scale(a * a * h * half)
        return out
    raise ValueError(f"unknown generator {gen!r}")


# ---------------------------------------------------------------------------
# identity checks (raw booleans; report packaging lives in verify.py)
# ---------------------------------------------------------------------------


def check_contract_equals_direct(
    j1: Spin, j2: Spin, colours: tuple | None = None, trunc: int | None = None
):
    A = contract_R(j1, j2, colours, trunc=trunc)
    B = eval_universal_Rh(j1, j2, colours)
    return A.body.first_mismatch(B.body)


def ybe_residual_first_mismatch(labels, route: str = "direct"):
    """R12 R13 R23 = R23 R13 R12 on V1 (x) V2 (x) V3.

    ``labels`` is a sequence of three (Spin, colour-or-None) pairs; all
    coloured or all uncoloured.
    """
    (ja, za), (jb, zb), (jc, zc) = labels
    coloured = not (za is None and zb is None and zc is None)

    def pick(jx, zx, jy, zy):
        cols = (zx, zy) if coloured else None
        return get_R(jx, jy, cols, route=route).body

    R12 = pick(ja, za, jb, zb)
    R13 = pick(ja, za, jc, zc)
    R23 = pick(jb, zb, jc, zc)
    dims = (ja.dimension, jb.dimension, jc.dimension)
    E12 = embed_two_factor(R12, dims, (0, 1))
    E13 = embed_two_factor(R13, dims, (0, 2))
    E23 = embed_two_factor(R23, dims, (1, 2))
    lhs = E12 @ E13 @ E23
    rhs = E23 @ E13 @ E12
    return lhs.first_mismatch(rhs)


def triangularity_first_mismatch(j1: Spin, j2: Spin, colours=None, route="direct"):
    """R^{-1} = R21: verified multiplicatively as R . R21 = id."""
    R = get_R(j1, j2, colours, route=route).body
    swapped_cols = None if colours is None else (colours[1], colours[0])
    Rs = get_R(j2, j1, swapped_cols, route=route).body
    R21 = flip_reindex(Rs)
    I = OperatorMatrix.identity(R.dims, RatFunc.one())
    return (R @ R21).first_mismatch(I)


def exchange_symmetry_first_mismatch(j1: Spin, z1, j2: Spin, z2, route="direct"):
    """(R_{h,a}^{j1,z1;j2,z2})_{km,ln} = (R_{-h,a}^{j2,z2;j1,z1})_{mk,nl}."""
    z1, z2 = colour_of(z1), colour_of(z2)
    cols = None if (z1 is None and z2 is None) else (z1, z2)
    R = get_R(j1, j2, cols, route=route).body
    swapped = None if cols is None else (z2, z1)
    Rs = get_R(j2, j1, swapped, route=route).body
    minus_h = {"h": -sym("h")}
    return R.first_mismatch(flip_reindex(Rs.subs(minus_h)))


def intertwiner_first_mismatch(
    j1: Spin, j2: Spin, colours=None, gens=("X", "Y", "H", "Z")
):
    """sigma o Delta(gen) . R = R . Delta(gen) for every generator."""
    R = eval_universal_Rh(j1, j2, colours).body
    for gen in gens:
        if gen == "Z" and colours is None:
            continue
        D = coproduct_matrix(gen, j1, j2, colours, flipped=False)
        Df = coproduct_matrix(gen, j1, j2, colours, flipped=True)
        mism = (Df @ R).first_mismatch(R @ D)
        if mism is not None:
            return (gen,) + mism
    return None


def quasitriangularity_first_mismatch(j1: Spin, j2: Spin, j3: Spin):
    """(Delta (x) id) R = R13 R23 and (id (x) Delta) R = R13 R12,
    with Delta the Jordanian coproduct evaluated as a composite
    representation (uncoloured)."""
    g1, g2, g3 = (build_h_rep(j).generators for j in (j1, j2, j3))
    h = RatFunc.sym("h")

    def composite(ga, gb):
        Ia = OperatorMatrix.identity(ga["T"].dims, RatFunc.one())
        Ib = OperatorMatrix.identity(gb["T"].dims, RatFunc.one())
        X = kron(ga["X"], Ib) + kron(Ia, gb["X"])
        T = kron(ga["T"], gb["T"])
        H = kron(ga["H"], gb["T"]) + kron(ga["Tinv"], gb["H"])
        return {"X": X, "T": T, "H": H}

    def Rmat(ga, gb):
        THa = ga["T"] @ ga["H"]
        THb = gb["T"] @ gb["H"]
        return mat_exp_nilpotent(kron(ga["X"], THb).scale(-h)) @ mat_exp_nilpotent(
            kron(THa, gb["X"]).scale(h)
        )

    dims = (j1.dimension, j2.dimension, j3.dimension)
    c12 = composite(g1, g2)
    lhs1 = Rmat(c12, g3)  # already a matrix on V1 (x) V2 (x) V3
    lhs1 = OperatorMatrix(dims, lhs1.rows)
    R13 = embed_two_factor(Rmat(g1, g3), dims, (0, 2))
    R23 = embed_two_factor(Rmat(g2, g3), dims, (1, 2))
    m = lhs1.first_mismatch(R13 @ R23)
    if m is not None:
        return ("Delta x id",) + m
    c23 = composite(g2, g3)
    lhs2 = Rmat(g1, c23)
    lhs2 = OperatorMatrix(dims, lhs2.rows)
    R12 = embed_two_factor(Rmat(g1, g2), dims, (0, 1))
    m = lhs2.first_mismatch(R13 @ R12)
    if m is not None:
        return ("id x Delta",) + m
    return None


# ---------------------------------------------------------------------------
# twist-contraction identity (F-hF)
# ---------------------------------------------------------------------------


def twist_contraction_first_mismatch(j1: Spin, j2: Spin, trunc: int | None = None):
    """lim (M (x) M)^-1 F^_lambda^-1 (M (x) M) = T~^{-alpha z2} (x) T~^{alpha z1},
    the representation image of F_alpha^-1."""
    z1, z2 = MultiPoly.sym("z1"), MultiPoly.sym("z2")
    C1 = contract_colour_factor(j1, -ALPHA * z2, trunc)
    C2 = contract_colour_factor(j2, ALPHA * z1, trunc)
    contracted = kron(C1, C2)
    g1, g2 = build_h_rep(j1).generators, build_h_rep(j2).generators
    direct = kron(
        unipotent_power(g1["T"], -ALPHA * z2), unipotent_power(g2["T"], ALPHA * z1)
    )
    return contracted.first_mismatch(direct)
