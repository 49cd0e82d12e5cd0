"""Sigma-linearized polynomial algebra over F_{q^6}.

A :class:`LinPoly` with step ``s`` (gcd(s, 6) = 1) represents

    f(X) = a_0 X + a_1 X^{q^s} + a_2 X^{q^{2s}} + ... + a_5 X^{q^{5s}},

an F_q-linear endomorphism of F_{q^6}.  The module provides evaluation,
composition modulo X^{q^6} - X, the adjoint involution, the associated
twisted-circulant Dickson matrix, and rank/kernel computations, both as
scalar routines and as numpy batches (the batch elimination is the hot
path of every scatteredness sweep).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .field import N_EXT, FieldCtx
from . import gf2


@dataclass(frozen=True)
class LinPoly:
    """sum_i coeffs[i] * X^(q^(s*i)) over F_{q^6}."""

    ctx: FieldCtx
    s: int
    coeffs: tuple

    def __post_init__(self):
        if math.gcd(self.s, N_EXT) != 1:
            raise ParameterError(f"step s={self.s} must be coprime to 6")
        if len(self.coeffs) != N_EXT:
            raise ParameterError("exactly 6 coefficients required")
        for a in self.coeffs:
            if not 0 <= a < self.ctx.order:
                raise ParameterError(f"coefficient {a} out of field range")

    def eval(self, x: int) -> int:
        ctx = self.ctx
        r = 0
        for i, a in enumerate(self.coeffs):
            if a:
                r ^= ctx.mul(a, ctx.frobenius(x, (self.s * i) % N_EXT))
        return r

    def eval_vec(self, xs: np.ndarray) -> np.ndarray:
        ctx = self.ctx
        r = np.zeros_like(xs)
        for i, a in enumerate(self.coeffs):
            if a:
                r = r ^ ctx.vmul_scalar(a, ctx.vfrob(xs, (self.s * i) % N_EXT))
        return r

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coeffs)

    def sigma_degree(self) -> int:
        for i in range(N_EXT - 1, -1, -1):
            if self.coeffs[i]:
                return i
        return -1  # zero polynomial

    def __add__(self, other: "LinPoly") -> "LinPoly":
        _check_compatible(self, other)
        return LinPoly(self.ctx, self.s,
                       tuple(a ^ b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c: int) -> "LinPoly":
        """c * f, scalar on the left."""
        return LinPoly(self.ctx, self.s,
                       tuple(self.ctx.mul(c, a) for a in self.coeffs))

    def to_string(self) -> str:
        parts = ",".join(f"a{i}={self.ctx.to_hex(a)}"
                         for i, a in enumerate(self.coeffs))
        return f"s={self.s};{parts}"


def from_string(ctx: FieldCtx, text: str) -> LinPoly:
    """Parse the `s=<s>;a0=<hex>,...,a5=<hex>` format."""
    try:
        head, tail = text.split(";", 1)
        s = int(head.split("=", 1)[1])
        coeffs = [0] * N_EXT
        for item in tail.split(","):
            name, value = item.split("=", 1)
            coeffs[int(name[1:])] = ctx.from_hex(value)
    except (ValueError, IndexError) as exc:
        raise ParameterError(f"malformed LinPoly text {text!r}") from exc
    return LinPoly(ctx, s, tuple(coeffs))


def x_poly(ctx: FieldCtx, s: int = 1) -> LinPoly:
    return monomial(ctx, s, 0, 1)


def monomial(ctx: FieldCtx, s: int, i: int, coeff: int = 1) -> LinPoly:
    """coeff * X^(q^(s*i))."""
    coeffs = [0] * N_EXT
    coeffs[i % N_EXT] = coeff
    return LinPoly(ctx, s, tuple(coeffs))


def trinomial(ctx: FieldCtx, c: int, s: int = 1) -> LinPoly:
    """X^{q^s} + X^{q^{3s}} + c X^{q^{5s}}, the family under study."""
    coeffs = [0] * N_EXT
    coeffs[1] = 1
    coeffs[3] = 1
    coeffs[5] = c
    return LinPoly(ctx, s, tuple(coeffs))


def _check_compatible(f: LinPoly, g: LinPoly) -> None:
    if f.ctx is not g.ctx:
        raise ParameterError("mixed field contexts")
    if f.s != g.s:
        raise ParameterError(f"mixed steps s={f.s} and s={g.s}")


def compose(f: LinPoly, g: LinPoly) -> LinPoly:
    """f o g modulo X^{q^6} - X; coefficients h_k = sum a_i b_j^{sigma^i}."""
    _check_compatible(f, g)
    ctx = f.ctx
    h = [0] * N_EXT
    for i, a in enumerate(f.coeffs):
        if not a:
            continue
        for j, b in enumerate(g.coeffs):
            if not b:
                continue
            k = (i + j) % N_EXT
            h[k] ^= ctx.mul(a, ctx.frobenius(b, (f.s * i) % N_EXT))
    return LinPoly(ctx, f.s, tuple(h))


def adjoint(f: LinPoly) -> LinPoly:
    """The involution f_hat with coefficient a_{(6-i) mod 6}^{sigma^i} at i."""
    ctx = f.ctx
    coeffs = tuple(
        ctx.frobenius(f.coeffs[(N_EXT - i) % N_EXT], (f.s * i) % N_EXT)
        for i in range(N_EXT))
    return LinPoly(ctx, f.s, coeffs)


# ---------------------------------------------------------------------------
# Dickson matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DicksonMat:
    """6x6 twisted circulant of a sigma-polynomial (rows conjugated by sigma^i)."""

    ctx: FieldCtx
    step: int
    entries: tuple  # tuple of 6 row tuples


def dickson_matrix(f: LinPoly, diagonal_shift: int | None = None) -> DicksonMat:
    """Dickson matrix of f, or of mX + f when a diagonal shift m is given."""
    ctx = f.ctx
    base = list(f.coeffs)
    if diagonal_shift is not None:
        base[0] ^= diagonal_shift
    rows = []
    for i in range(N_EXT):
        rows.append(tuple(
            ctx.frobenius(base[(j - i) % N_EXT], (f.s * i) % N_EXT)
            for j in range(N_EXT)))
    return DicksonMat(ctx, f.s, tuple(rows))


def rank(mat: DicksonMat) -> int:
    """Rank over F_{q^6} by Gaussian elimination."""
    return matrix_rank(mat.ctx, [list(r) for r in mat.entries])


def matrix_rank(ctx: FieldCtx, rows: list) -> int:
    a = [list(r) for r in rows]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    rk = 0
    for col in range(ncols):
        piv = next((i for i in range(rk, nrows) if a[i][col]), None)
        if piv is None:
            continue
        a[rk], a[piv] = a[piv], a[rk]
        inv = ctx.inv(a[rk][col])
        for i in range(rk + 1, nrows):
            if a[i][col]:
                fac = ctx.mul(a[i][col], inv)
                a[i] = [x ^ ctx.mul(fac, y) for x, y in zip(a[i], a[rk])]
        rk += 1
        if rk == nrows:
            break
    return rk


def matrix_det(ctx: FieldCtx, rows: list) -> int:
    """Determinant over F_{q^6} (no signs to track in characteristic 2)."""
    a = [list(r) for r in rows]
    n = len(a)
    det = 1
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col]), None)
        if piv is None:
            return 0
        a[col], a[piv] = a[piv], a[col]
        det = ctx.mul(det, a[col][col])
        inv = ctx.inv(a[col][col])
        for i in range(col + 1, n):
            if a[i][col]:
                fac = ctx.mul(a[i][col], inv)
                a[i] = [x ^ ctx.mul(fac, y) for x, y in zip(a[i], a[col])]
    return det


# ---------------------------------------------------------------------------
# Kernel of f as an F_q-linear map
# ---------------------------------------------------------------------------

def _gf2_kernel(f: LinPoly) -> list[int]:
    images = [f.eval(1 << i) for i in range(f.ctx.dim)]
    return gf2.kernel_from_images(images)


def kernel_dim(f: LinPoly) -> int:
    """dim_{F_q} ker f; the GF(2) kernel dimension is always a multiple of e."""
    k2 = len(_gf2_kernel(f))
    assert k2 % f.ctx.e == 0, "kernel is an F_q-subspace"
    return k2 // f.ctx.e


def _fq_gf2_basis(ctx: FieldCtx) -> list[int]:
    """GF(2)-basis of the subfield F_q inside F_{q^6}."""
    images = [ctx.frobenius(1 << i, 1) ^ (1 << i) for i in range(ctx.dim)]
    return gf2.kernel_from_images(images)


def kernel_basis(f: LinPoly) -> list[int]:
    """Deterministic F_q-basis of ker f.

    The GF(2) kernel is echelonized first; basis vectors are then picked
    greedily in echelon order, each rejected if it already lies in the
    F_q-span of the chosen ones.
    """
    ctx = f.ctx
    k2 = _gf2_kernel(f)
    mus = _fq_gf2_basis(ctx)
    chosen: list[int] = []
    span: list[int] = []
    for v in k2:
        if not gf2.in_span(v, span):
            chosen.append(v)
            span = gf2.echelon(span + [ctx.mul(mu, v) for mu in mus])
    assert (ctx.q ** len(chosen)) == (1 << len(k2))
    return chosen


# ---------------------------------------------------------------------------
# Batched machinery for sweeps over many matrices
# ---------------------------------------------------------------------------

def dickson_stack(f: LinPoly, ms: np.ndarray) -> np.ndarray:
    """Dickson matrices of mX + f for a whole array of shifts m: (N, 6, 6)."""
    ctx = f.ctx
    mats = np.empty((len(ms), N_EXT, N_EXT), dtype=np.uint32)
    for i in range(N_EXT):
        for j in range(N_EXT):
            mats[:, i, j] = ctx.frobenius(f.coeffs[(j - i) % N_EXT],
                                          (f.s * i) % N_EXT)
    for i in range(N_EXT):
        mats[:, i, i] ^= ctx.vfrob(ms.astype(np.uint32), (f.s * i) % N_EXT)
    return mats


def rank_batch(ctx: FieldCtx, mats: np.ndarray) -> np.ndarray:
    """Ranks of a stack of 6x6 matrices over F_{q^6}, via masked elimination."""
    a = mats.astype(np.uint32, copy=True)
    nmat, n, _ = a.shape
    log = ctx.np_log
    exp = ctx.np_exp
    morder = np.uint32(ctx.mult_order)
    r = np.zeros(nmat, dtype=np.int64)
    rows = np.arange(n)
    bidx = np.arange(nmat)
    for col in range(n):
        colvals = a[:, :, col]
        cand = (colvals != 0) & (rows[None, :] >= r[:, None])
        has = cand.any(axis=1)
        prow = np.where(has, cand.argmax(axis=1), 0)
        rr = np.minimum(r, n - 1)
        # swap the pivot row into position rr (only where a pivot exists)
        sel = np.flatnonzero(has)
        if sel.size:
            tmp_p = a[sel, prow[sel], :].copy()
            tmp_r = a[sel, rr[sel], :].copy()
            a[sel, prow[sel], :] = tmp_r
            a[sel, rr[sel], :] = tmp_p
        piv = a[bidx, rr, col]
        colv = a[:, :, col]
        nz = (rows[None, :] > rr[:, None]) & has[:, None] & (colv != 0)
        lpiv = log[np.where(piv == 0, 1, piv)]
        fac = exp[(log[colv] + (morder - lpiv)[:, None]) % morder]
        fac = np.where(nz, fac, 0)
        pivrow = a[bidx, rr, :]
        prod = exp[log[fac][:, :, None] + log[pivrow][:, None, :]]
        prod = np.where((fac[:, :, None] != 0) & (pivrow[:, None, :] != 0),
                        prod, 0)
        a ^= prod
        r += has
    return r
