"""The admissible coefficient set and its per-element certificate battery.

The trinomial X^q + X^{q^3} + cX^{q^5} is governed by five auxiliary
polynomials over F_q, evaluated at c through products of Frobenius powers.
A coefficient is admissible when the first two vanish, the last three do
not, and c lies outside F_{q^2}.  This module evaluates those polynomials
(scalar and vectorised), enumerates the admissible set, and checks the
derived identities: the rational expressions for c^{q^4} and c^{q^5}, the
three-factor splitting of the eliminant polynomial, and the subfield/norm
exclusions used by the code-equivalence theory.

Every monomial is stored as an exponent vector (k_0, ..., k_5) meaning
prod_j c^(k_j q^j); a second, independently typed transcription lives in
the test suite and the two are diffed there.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError, ParameterError
from .field import FieldCtx
from .linpoly import LinPoly, kernel_dim, trinomial
from .scatter import _eval_terms_on_logs, _merge_terms, is_scattered_fibers
from .sympoly import SymPoly

# ---------------------------------------------------------------------------
# Exponent tables: (k_0, ..., k_5) stands for the monomial prod c^(k_j q^j)
# ---------------------------------------------------------------------------

F_EXPONENTS = {
    1: (
        (1, 1, 1, 2, 1, 0),
        (1, 0, 1, 1, 1, 0),
        (1, 1, 0, 1, 0, 0),
        (1, 0, 0, 0, 0, 0),
        (0, 1, 1, 2, 0, 0),
        (0, 1, 1, 1, 0, 0),
        (0, 0, 0, 1, 0, 0),
        (0, 0, 0, 0, 0, 0),
    ),
    2: (
        (2, 2, 1, 1, 0, 0),
        (2, 1, 1, 0, 0, 0),
        (1, 2, 2, 1, 0, 0),
        (1, 1, 2, 2, 0, 0),
        (1, 1, 1, 0, 0, 0),
        (1, 1, 0, 1, 0, 0),
        (1, 0, 1, 1, 0, 0),
        (1, 0, 0, 0, 0, 0),
        (0, 1, 1, 2, 0, 0),
        (0, 1, 1, 1, 0, 0),
        (0, 0, 0, 1, 0, 0),
        (0, 0, 0, 0, 0, 0),
    ),
    3: (
        (1, 1, 1, 0, 0, 0),
        (0, 0, 0, 0, 0, 0),
    ),
    4: (
        (4, 1, 2, 0, 0, 0),
        (3, 2, 3, 0, 0, 0),
        (3, 2, 1, 0, 0, 0),
        (3, 1, 3, 0, 0, 0),
        (3, 1, 1, 0, 0, 0),
        (3, 0, 2, 0, 0, 0),
        (3, 0, 1, 0, 0, 0),
        (2, 1, 4, 0, 0, 0),
        (2, 1, 0, 0, 0, 0),
        (2, 0, 3, 0, 0, 0),
        (2, 0, 0, 0, 0, 0),
        (1, 2, 3, 0, 0, 0),
        (1, 2, 1, 0, 0, 0),
        (1, 1, 3, 0, 0, 0),
        (1, 1, 1, 0, 0, 0),
        (1, 0, 3, 0, 0, 0),
        (1, 0, 0, 0, 0, 0),
        (0, 1, 2, 0, 0, 0),
        (0, 0, 2, 0, 0, 0),
        (0, 0, 1, 0, 0, 0),
    ),
    5: (
        (2, 1, 2, 0, 0, 0),
        (2, 1, 1, 0, 0, 0),
        (2, 0, 2, 0, 0, 0),
        (1, 1, 2, 0, 0, 0),
        (1, 1, 1, 0, 0, 0),
        (0, 0, 0, 0, 0, 0),
    ),
}

A_EXPONENTS = {
    1: (
        (1, 2, 1, 1, 1, 1),
        (1, 2, 1, 1, 0, 1),
        (1, 2, 1, 0, 0, 0),
        (1, 2, 0, 0, 0, 0),
        (1, 1, 1, 1, 1, 0),
        (1, 1, 1, 1, 0, 0),
        (1, 1, 1, 0, 1, 1),
        (1, 1, 1, 0, 0, 1),
        (1, 0, 1, 0, 1, 0),
        (1, 0, 0, 0, 0, 0),
        (0, 2, 1, 0, 0, 0),
        (0, 2, 0, 1, 1, 1),
        (0, 2, 0, 1, 0, 1),
        (0, 2, 0, 0, 0, 0),
        (0, 1, 0, 1, 1, 0),
        (0, 1, 0, 1, 0, 0),
        (0, 1, 0, 0, 1, 1),
        (0, 1, 0, 0, 0, 1),
        (0, 0, 1, 0, 0, 0),
        (0, 0, 0, 0, 1, 0),
    ),
    2: (
        (1, 1, 1, 1, 1, 1),
        (1, 1, 0, 0, 0, 0),
        (1, 0, 1, 0, 1, 0),
        (1, 0, 0, 0, 0, 1),
        (0, 1, 1, 0, 0, 0),
        (0, 1, 0, 1, 0, 1),
        (0, 0, 1, 1, 0, 0),
        (0, 0, 0, 1, 1, 0),
        (0, 0, 0, 0, 1, 1),
        (0, 0, 0, 0, 0, 0),
    ),
    3: (
        (1, 1, 0, 0, 1, 1),
        (1, 1, 0, 0, 0, 1),
        (1, 1, 0, 0, 0, 0),
        (1, 0, 0, 0, 1, 0),
        (0, 1, 0, 0, 0, 0),
        (0, 0, 0, 0, 0, 0),
    ),
    4: (
        (0, 0, 1, 1, 1, 1),
        (0, 0, 1, 1, 1, 0),
        (0, 0, 1, 1, 0, 0),
        (0, 0, 1, 0, 0, 0),
        (0, 0, 0, 1, 0, 1),
        (0, 0, 0, 0, 0, 0),
    ),
}

# numerator of the rational expression for c^{q^4} once F_1(c) = 0;
# the denominator is c^{q^3+q^2+1} (c^{q^3+q} + 1)
PHI_NUMERATOR = (
    (1, 1, 0, 1, 0, 0),
    (1, 0, 0, 0, 0, 0),
    (0, 1, 1, 2, 0, 0),
    (0, 1, 1, 1, 0, 0),
    (0, 0, 0, 1, 0, 0),
    (0, 0, 0, 0, 0, 0),
)


def eval_monomial(ctx: FieldCtx, exps, c: int) -> int:
    """prod_j frobenius(c, j)^(k_j), multiplied out with small powers."""
    r = 1
    for j, k in enumerate(exps):
        if k:
            cj = ctx.frobenius(c, j)
            for _ in range(k):
                r = ctx.mul(r, cj)
            if r == 0:
                return 0
    return r


def eval_exponent_table(ctx: FieldCtx, table, c: int) -> int:
    acc = 0
    for exps in table:
        acc ^= eval_monomial(ctx, exps, c)
    return acc


def eval_F(ctx: FieldCtx, i: int, c: int) -> int:
    """F_i(c) for i in 1..5, via Frobenius-power products."""
    if i not in F_EXPONENTS:
        raise ParameterError(f"F index must be 1..5, got {i}")
    return eval_exponent_table(ctx, F_EXPONENTS[i], c)


def eval_A(ctx: FieldCtx, i: int, c: int) -> int:
    if i not in A_EXPONENTS:
        raise ParameterError(f"A index must be 1..4, got {i}")
    return eval_exponent_table(ctx, A_EXPONENTS[i], c)


def _table_orbit_terms(ctx: FieldCtx, table) -> list:
    raw = [(sum(k * ctx.q ** j for j, k in enumerate(exps)), 1) for exps in table]
    return _merge_terms(ctx, raw)


def eval_F_sweep(ctx: FieldCtx, i: int, cs: np.ndarray) -> np.ndarray:
    """Vectorised F_i over an array of nonzero field elements."""
    terms = _table_orbit_terms(ctx, F_EXPONENTS[i])
    return _eval_terms_on_logs(ctx, terms, ctx.np_log[cs])


# ---------------------------------------------------------------------------
# Membership and enumeration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FrakCRecord:
    """Certificate bundle for one coefficient candidate."""

    c: int
    f_values: tuple           # (F_1(c), ..., F_5(c))
    in_frak_c: bool
    not_in_Fq2: bool
    not_in_Fq3: bool
    norm_ne_1: bool
    norm_plus_trace_ne_0: bool
    scattered_s1: bool | None  # None when the fiber check was not run


def in_frak_c(ctx: FieldCtx, c: int) -> bool:
    if ctx.in_subfield(c, 2):
        return False
    if eval_F(ctx, 1, c) or eval_F(ctx, 2, c):
        return False
    return all(eval_F(ctx, i, c) for i in (3, 4, 5))


def candidate_roots(ctx: FieldCtx, batch: int = 1 << 22) -> np.ndarray:
    """All c with F_1(c) = F_2(c) = 0, ascending (canonical hex order)."""
    out = []
    if eval_F(ctx, 1, 0) == 0 and eval_F(ctx, 2, 0) == 0:  # never (F_1(0)=1)
        out.append(np.zeros(1, dtype=np.uint32))
    for lo in range(1, ctx.order, batch):
        cs = np.arange(lo, min(lo + batch, ctx.order), dtype=np.uint32)
        keep = cs[(eval_F_sweep(ctx, 1, cs) == 0) & (eval_F_sweep(ctx, 2, cs) == 0)]
        out.append(keep)
    return np.concatenate(out)


def build_record(ctx: FieldCtx, c: int, compute_scattered: bool = True) -> FrakCRecord:
    fv = tuple(eval_F(ctx, i, c) for i in range(1, 6))
    not2 = not ctx.in_subfield(c, 2)
    member = fv[0] == 0 and fv[1] == 0 and all(fv[2:]) and not2
    checks = lemma_checks(ctx, c)
    scat = is_scattered_fibers(trinomial(ctx, c)) if compute_scattered else None
    return FrakCRecord(
        c=c,
        f_values=fv,
        in_frak_c=member,
        not_in_Fq2=not2,
        not_in_Fq3=checks["not_in_Fq3"],
        norm_ne_1=checks["norm_ne_1"],
        norm_plus_trace_ne_0=checks["norm_plus_trace_ne_0"],
        scattered_s1=scat,
    )


def enumerate_frak_C(ctx: FieldCtx, compute_scattered: bool = True,
                     limit: int | None = None, seed: int = 1) -> list:
    """Scan F_{q^6} and return records for every root of F_1 = F_2 = 0.

    The record set contains the admissible set (flagged in_frak_c) plus the
    borderline roots excluded only by the subfield or F_3 F_4 F_5 tests,
    which are reported with their own scatteredness verdicts.  When `limit`
    is given, the expensive fiber check runs on a seeded random sample of
    that many records (membership fields are always exact).
    """
    if ctx.e > 4:
        warnings.warn(f"enumeration over q^6 = {ctx.order} elements is large",
                      stacklevel=2)
    roots = candidate_roots(ctx)
    chosen = None
    if limit is not None and limit < roots.size:
        rng = np.random.default_rng(seed)
        chosen = set(rng.choice(roots.size, size=limit, replace=False).tolist())
    records = []
    for idx, c in enumerate(roots.tolist()):
        want = compute_scattered and (chosen is None or idx in chosen)
        records.append(build_record(ctx, c, compute_scattered=want))
    return records


def frak_c_elements(ctx: FieldCtx) -> list:
    """Just the admissible coefficients, ascending."""
    return [int(c) for c in candidate_roots(ctx).tolist() if in_frak_c(ctx, c)]


# ---------------------------------------------------------------------------
# The Frobenius-power identities for c^{q^4} and c^{q^5}
# ---------------------------------------------------------------------------

def phi_identities(ctx: FieldCtx, c: int) -> tuple:
    """The rational expressions that pin down c^{q^4} and c^{q^5} once
    F_1(c) = 0 and c lies outside F_{q^2}.

    Raises DegenerateInputError when c is in F_{q^2} (precondition) or when
    either denominator vanishes.
    """
    if ctx.in_subfield(c, 2):
        raise DegenerateInputError("c lies in F_{q^2}")
    den1 = ctx.mul(eval_monomial(ctx, (1, 0, 1, 1, 0, 0), c),
                   eval_monomial(ctx, (0, 1, 0, 1, 0, 0), c) ^ 1)
    if den1 == 0:
        raise DegenerateInputError("denominator of the c^{q^4} expression vanishes")
    phi = ctx.div(eval_exponent_table(ctx, PHI_NUMERATOR, c), den1)

    cq = ctx.frobenius(c, 1)
    cq2 = ctx.frobenius(c, 2)
    cq3 = ctx.frobenius(c, 3)
    phi2 = ctx.mul(phi, phi)
    num2 = (ctx.mul(phi, ctx.mul(cq2, cq))
            ^ cq
            ^ ctx.mul(phi2, ctx.mul(cq3, cq2))
            ^ ctx.mul(phi, ctx.mul(cq3, cq2))
            ^ phi
            ^ 1)
    den2 = ctx.mul(ctx.mul(phi, ctx.mul(cq3, cq)), ctx.mul(phi, cq2) ^ 1)
    if den2 == 0:
        raise DegenerateInputError("denominator of the c^{q^5} expression vanishes")
    return phi, ctx.div(num2, den2)


# ---------------------------------------------------------------------------
# The factorization of the eliminant polynomial
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FactorData:
    alpha: int
    beta: int
    gamma: int
    A1: int
    A2: int
    A3: int
    A4: int


def factor_data(ctx: FieldCtx, c: int) -> FactorData:
    """alpha, beta, gamma and the four eliminant coefficients at c.

    Needs F_3(c) != 0, otherwise alpha = 0 and beta, gamma are undefined.
    """
    f3 = eval_F(ctx, 3, c)
    if f3 == 0:
        raise ParameterError("F_3(c) = 0: alpha vanishes, beta/gamma undefined")
    alpha = ctx.frobenius(f3, 3)
    a = tuple(eval_A(ctx, i, c) for i in range(1, 5))
    beta = ctx.div(a[2], ctx.frobenius(alpha, 1))
    gamma = ctx.div(a[3], alpha)
    return FactorData(alpha=alpha, beta=beta, gamma=gamma,
                      A1=a[0], A2=a[1], A3=a[2], A4=a[3])


def _eliminant_sympoly(ctx: FieldCtx, c: int) -> SymPoly:
    """The seven-term eliminant in the first three variables."""
    f3 = eval_F(ctx, 3, c)
    data = {
        (0, 0, 1, 0, 0, 0): eval_A(ctx, 1, c),
        (1, 0, 0, 0, 0, 0): ctx.frobenius(eval_A(ctx, 1, c), 1),
        (1, 1, 1, 0, 0, 0): eval_A(ctx, 2, c),
        (0, 1, 2, 0, 0, 0): eval_A(ctx, 3, c),
        (1, 2, 2, 0, 0, 0): ctx.frobenius(f3, 4),
        (2, 1, 0, 0, 0, 0): eval_A(ctx, 4, c),
        (2, 2, 1, 0, 0, 0): ctx.frobenius(f3, 3),
    }
    return SymPoly(ctx, data)


def verify_factorization(ctx: FieldCtx, c: int) -> bool:
    """Exact coefficient-wise check that the eliminant splits as
    (alpha X + alpha^q Z)(XY + beta)(YZ + gamma)."""
    fd = factor_data(ctx, c)
    x = SymPoly.var(ctx, 0)
    y = SymPoly.var(ctx, 1)
    z = SymPoly.var(ctx, 2)
    lhs = _eliminant_sympoly(ctx, c)
    rhs = ((x.scale(fd.alpha) + z.scale(ctx.frobenius(fd.alpha, 1)))
           * (x * y + SymPoly.const(ctx, fd.beta))
           * (y * z + SymPoly.const(ctx, fd.gamma)))
    return lhs == rhs


# ---------------------------------------------------------------------------
# Lemma battery
# ---------------------------------------------------------------------------

def lemma_checks(ctx: FieldCtx, c: int) -> dict:
    """Subfield/norm exclusions; all three hold on the admissible set."""
    n2 = ctx.norm(c, 2)
    return {
        "not_in_Fq3": not ctx.in_subfield(c, 3),
        "norm_ne_1": n2 != 1,
        "norm_plus_trace_ne_0": (n2 ^ ctx.trace(c, 2)) != 0,
    }


def is_bijective(f: LinPoly) -> bool:
    return kernel_dim(f) == 0
