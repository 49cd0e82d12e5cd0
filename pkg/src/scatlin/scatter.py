"""Scatteredness decision procedures and the subspaces U_f of F_{q^6}^2.

A sigma-polynomial f is scattered when ker(mX + f) has F_q-dimension at
most 1 for every m.  Two independent oracles are provided and must agree:

* the fiber oracle: one pass over F_{q^6}^* counting distinct values of
  x -> f(x)/x (every fiber of that map has size q^d - 1 with d the kernel
  dimension of the matching mX + f);
* the Dickson oracle: rank(D_{mX+f}) >= 5 for every m, computed by batch
  Gaussian elimination.  Determinant and 5x5-minor expansions in powers of
  m serve as exact prefilters so elimination only touches the shifts that
  actually need it.

The module also hosts the six-variable determinant polynomials attached to
the trinomial X^{q}+X^{q^3}+cX^{q^5} together with the shift automorphism
that cycles them, and a brute-force GammaL(2, 2^6) equivalence search
gated to q = 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import FeasibilityError, ParameterError
from .field import N_EXT, FieldCtx
from .linpoly import (LinPoly, dickson_matrix, dickson_stack, matrix_det,
                      rank_batch)
from .sympoly import SymPoly, psi, sym_det

_BATCH = 1 << 19


# ---------------------------------------------------------------------------
# Subspaces U_f = {(x, f(x))}
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """The F_q-subspace {(x, f(x)) : x in F_{q^6}} of F_{q^6}^2."""

    ctx: FieldCtx
    f: LinPoly

    def pairs_vec(self):
        xs = np.arange(self.ctx.order, dtype=np.uint32)
        return xs, self.f.eval_vec(xs)

    def pair_set(self) -> frozenset:
        if self.ctx.e > 2:
            raise FeasibilityError("explicit pair sets only kept for e <= 2")
        xs, ys = self.pairs_vec()
        return frozenset(zip(xs.tolist(), ys.tolist()))


def subspace(f: LinPoly) -> Subspace:
    return Subspace(f.ctx, f)


def family_subspace(ctx: FieldCtx, kind: str, s: int = 1,
                    delta: int = 0) -> Subspace:
    """The known maximum scattered families as subspaces of F_{q^6}^2.

    kind 'a':      {(x, x^{q^s})}, gcd(s, 6) = 1
    kind 'b':      {(x, delta x^{q^s} + x^{q^{6-s}})}, gcd(s, 6) = 1 and
                   N_{q^6/q}(delta) not in {0, 1}
    kind 'c_half': {(x, delta x^{q^s} + x^{q^{s+3}})}, gcd(s, 3) = 1 and
                   N_{q^6/q^3}(delta) not in {0, 1}

    Scatteredness of the result is not assumed here; callers verify it.
    """
    coeffs = [0] * N_EXT
    if kind == "a":
        if math.gcd(s, N_EXT) != 1:
            raise ParameterError("family (a) needs gcd(s, 6) = 1")
        coeffs[s % N_EXT] = 1
    elif kind == "b":
        if math.gcd(s, N_EXT) != 1:
            raise ParameterError("family (b) needs gcd(s, 6) = 1")
        if ctx.norm(delta, 1) in (0, 1):
            raise ParameterError("family (b) needs N_{q^6/q}(delta) not in {0,1}")
        coeffs[s % N_EXT] = delta
        coeffs[(N_EXT - s) % N_EXT] ^= 1
    elif kind == "c_half":
        if math.gcd(s, 3) != 1:
            raise ParameterError("family (c) needs gcd(s, 3) = 1")
        if ctx.norm(delta, 3) in (0, 1):
            raise ParameterError("family (c) needs N_{q^6/q^3}(delta) not in {0,1}")
        coeffs[s % N_EXT] = delta
        coeffs[(s + 3) % N_EXT] ^= 1
    else:
        raise ParameterError(f"unknown family kind {kind!r}")
    return Subspace(ctx, LinPoly(ctx, 1, tuple(coeffs)))


# ---------------------------------------------------------------------------
# Fiber oracle
# ---------------------------------------------------------------------------

def fiber_values(f: LinPoly) -> np.ndarray:
    """f(x)/x over all nonzero x, in the order x = 1, 2, ..., q^6 - 1."""
    xs = f.ctx.all_nonzero()
    return f.ctx.vdiv(f.eval_vec(xs), xs)


def fiber_counts(f: LinPoly) -> np.ndarray:
    """Histogram of f(x)/x over nonzero x, indexed by field element."""
    return np.bincount(fiber_values(f), minlength=f.ctx.order)


def is_scattered_fibers(f: LinPoly) -> bool:
    """True iff x -> f(x)/x takes exactly (q^6-1)/(q-1) distinct values.

    Fibers are kernels of mX + f minus the origin, hence of size q^d - 1;
    the count of distinct values is maximal iff every d is at most 1.
    """
    ctx = f.ctx
    distinct = int(np.count_nonzero(fiber_counts(f)))
    return distinct == (ctx.order - 1) // (ctx.q - 1)


# ---------------------------------------------------------------------------
# Dickson oracle
# ---------------------------------------------------------------------------

def _merge_terms(ctx: FieldCtx, raw: list) -> list:
    merged: dict = {}
    for e_int, kappa in raw:
        if not kappa:
            continue
        e_int %= ctx.mult_order
        nk = merged.get(e_int, 0) ^ kappa
        if nk:
            merged[e_int] = nk
        else:
            merged.pop(e_int, None)
    return sorted(merged.items())


def dickson_det_terms(f: LinPoly) -> list:
    """det(D_{mX+f}) as sum of kappa_S m^{E_S}: multilinear expansion of the
    diagonal shifts against principal minors of the unshifted matrix.

    Valid for nonzero m after reducing E_S mod q^6 - 1; the m = 0 value is
    det of the unshifted matrix and is handled separately by callers.
    """
    ctx = f.ctx
    base = dickson_matrix(f).entries
    raw = []
    for s_mask in range(1 << N_EXT):
        keep = [i for i in range(N_EXT) if not (s_mask >> i) & 1]
        sub = [[base[i][j] for j in keep] for i in keep]
        kappa = matrix_det(ctx, sub) if keep else 1
        e_int = sum(ctx.q ** ((f.s * i) % N_EXT)
                    for i in range(N_EXT) if (s_mask >> i) & 1)
        raw.append((e_int, kappa))
    return _merge_terms(ctx, raw)


def dickson_minor_terms(f: LinPoly) -> list:
    """Same expansion for the 5x5 minor of D_{mX+f} obtained by deleting the
    first column and the last row (the second subresultant-style minor)."""
    ctx = f.ctx
    base = dickson_matrix(f).entries  # includes a_0 on the diagonal
    block = [[base[i][j + 1] for j in range(5)] for i in range(5)]
    # shifted diagonal entries sit at block positions (i, i-1), i = 1..4
    raw = []
    for s_mask in range(1 << 4):
        chosen = [i + 1 for i in range(4) if (s_mask >> i) & 1]
        rows = [r for r in range(5) if r not in chosen]
        cols = [c for c in range(5) if c + 1 not in chosen]
        sub = [[block[r][c] for c in cols] for r in rows]
        kappa = matrix_det(ctx, sub) if rows else 1
        e_int = sum(ctx.q ** ((f.s * i) % N_EXT) for i in chosen)
        raw.append((e_int, kappa))
    return _merge_terms(ctx, raw)


def _eval_terms_on_logs(ctx: FieldCtx, terms: list, logs: np.ndarray) -> np.ndarray:
    """Evaluate sum kappa m^E at elements given by their discrete logs."""
    acc = np.zeros(logs.shape, dtype=np.uint32)
    exp = ctx.np_exp
    log = ctx.np_log
    m = np.uint64(ctx.mult_order)
    logs64 = logs.astype(np.uint64)
    for e_int, kappa in terms:
        idx = ((logs64 * np.uint64(e_int)) % m).astype(np.uint32)
        acc = acc ^ exp[idx + log[kappa]]
    return acc


def dickson_det_sweep(f: LinPoly, batch: int = 1 << 22) -> np.ndarray:
    """Shifts m (including 0) where det(D_{mX+f}) vanishes."""
    ctx = f.ctx
    terms = dickson_det_terms(f)
    zeros = []
    if matrix_det(ctx, dickson_matrix(f).entries) == 0:
        zeros.append(np.zeros(1, dtype=np.uint32))
    log_all = ctx.np_log
    for lo in range(1, ctx.order, batch):
        ms = np.arange(lo, min(lo + batch, ctx.order), dtype=np.uint32)
        vals = _eval_terms_on_logs(ctx, terms, log_all[ms])
        zeros.append(ms[vals == 0])
    return np.concatenate(zeros) if zeros else np.empty(0, dtype=np.uint32)


def is_scattered_dickson(f: LinPoly) -> bool:
    """True iff rank(D_{mX+f}) >= 5 for every m in F_{q^6}.

    Shifts with nonzero determinant have rank 6 and are skipped; among the
    rest, those with a nonzero trailing 5x5 minor have rank exactly 5; the
    remaining handful is settled by batch Gaussian elimination.
    """
    ctx = f.ctx
    zeros = dickson_det_sweep(f)
    if zeros.size == 0:
        return True
    nz = zeros[zeros != 0]
    suspects = []
    if nz.size:
        minors = _eval_terms_on_logs(ctx, dickson_minor_terms(f), ctx.np_log[nz])
        suspects.append(nz[minors == 0])
    if nz.size != zeros.size:  # m = 0 was among the determinant zeros
        suspects.append(np.zeros(1, dtype=np.uint32))
    sus = np.concatenate(suspects) if suspects else np.empty(0, dtype=np.uint32)
    for lo in range(0, sus.size, _BATCH):
        chunk = sus[lo: lo + _BATCH]
        if np.any(rank_batch(ctx, dickson_stack(f, chunk)) < 5):
            return False
    return True


def dickson_rank_profile(f: LinPoly) -> np.ndarray:
    """rank(D_{mX+f}) for every m, by plain batch elimination (small e only)."""
    ctx = f.ctx
    if ctx.e > 3:
        raise FeasibilityError("full rank profile kept for e <= 3")
    out = np.empty(ctx.order, dtype=np.int64)
    for lo in range(0, ctx.order, _BATCH):
        ms = np.arange(lo, min(lo + _BATCH, ctx.order), dtype=np.uint32)
        out[lo: lo + ms.size] = rank_batch(ctx, dickson_stack(f, ms))
    return out


def is_scattered_bruteforce(f: LinPoly) -> bool:
    """Directly check |{x : mx + f(x) = 0}| <= q for every m (e <= 2)."""
    ctx = f.ctx
    if ctx.e > 2:
        raise FeasibilityError("brute-force kernel scan kept for e <= 2")
    xs = ctx.all_nonzero()
    fx = f.eval_vec(xs)
    for m in range(ctx.order):
        solutions = int(np.count_nonzero(ctx.vmul_scalar(m, xs) == fx))
        if solutions + 1 > ctx.q:  # +1 for x = 0
            return False
    return True


# ---------------------------------------------------------------------------
# The six-variable system polynomials of the trinomial X^q + X^{q^3} + cX^{q^5}
# ---------------------------------------------------------------------------

@lru_cache(maxsize=128)
def system_polys(ctx: FieldCtx, c: int):
    """(p, (q_0, ..., q_5)) for the coefficient c.

    p is the full 6x6 determinant with independent variables on the
    diagonal; q_0 drops the first column and last row; q_{i+1} applies the
    coefficient-Frobenius/variable-rotation automorphism to q_i.
    """
    rows = []
    for i in range(N_EXT):
        row = [SymPoly(ctx) for _ in range(N_EXT)]
        row[i] = SymPoly.var(ctx, i)
        row[(i + 1) % N_EXT] = SymPoly.const(ctx, 1)
        row[(i + 3) % N_EXT] = SymPoly.const(ctx, 1)
        row[(i + 5) % N_EXT] = SymPoly.const(ctx, ctx.frobenius(c, i))
        rows.append(row)
    p = sym_det(ctx, rows)
    q0 = sym_det(ctx, [rows[i][1:] for i in range(5)])
    qs = [q0]
    for _ in range(5):
        qs.append(psi(qs[-1]))
    return p, tuple(qs)


def system_poly_eval(ctx: FieldCtx, c: int, point, index) -> int:
    """Evaluate p (index 'p') or q_index at a 6-tuple of field elements."""
    p, qs = system_polys(ctx, c)
    poly = p if index == "p" else qs[int(index)]
    return poly.eval(tuple(point))


def orbit_point(ctx: FieldCtx, m: int) -> tuple:
    return tuple(ctx.frobenius(m, j) for j in range(N_EXT))


def is_scattered_h0h1(ctx: FieldCtx, c: int) -> bool:
    """Third scatteredness route for the trinomial with coefficient c at
    s = 1: the determinants p and q_0 evaluated along Frobenius orbits must
    not vanish simultaneously for any m."""
    p, qs = system_polys(ctx, c)
    zero = (0,) * N_EXT
    if p.eval(zero) == 0 and qs[0].eval(zero) == 0:
        return False
    logs = ctx.np_log[ctx.all_nonzero()]
    h0 = _eval_terms_on_logs(ctx, p.orbit_terms(), logs)
    h1 = _eval_terms_on_logs(ctx, qs[0].orbit_terms(), logs)
    return not bool(np.any((h0 == 0) & (h1 == 0)))


# ---------------------------------------------------------------------------
# Brute-force GammaL(2, 2^6) equivalence oracle (q = 2 only)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GammaLWitness:
    """phi(u) = M u^rho maps the first subspace onto the second; rho is the
    automorphism exponent, acting as x -> x^(2^rho)."""

    rho: int
    matrix: tuple  # (a, b, c, d) row-major


def _indep(ctx: FieldCtx, u, v) -> bool:
    return ctx.mul(u[0], v[1]) ^ ctx.mul(u[1], v[0]) != 0


def gammaL_equivalent_bruteforce(u1: Subspace, u2: Subspace):
    """Search all of GammaL(2, 2^6) for a map sending u1 onto u2.

    Any candidate matrix is pinned down by the images of two
    F_{2^6}-independent anchors of u1^rho, so the search enumerates image
    pairs in u2 instead of all of GL(2, 2^6); this is exact, not heuristic.
    Returns a validated GammaLWitness, or None.
    """
    ctx = u1.ctx
    if ctx is not u2.ctx:
        raise ParameterError("mixed field contexts")
    if ctx.e != 1:
        raise FeasibilityError("GammaL brute force gated to q = 2")

    pairs2 = [p for p in u2.pair_set() if p != (0, 0)]
    target = frozenset(pairs2)
    cand = [(u, v) for u in pairs2 for v in pairs2 if _indep(ctx, u, v)]

    base1 = [p for p in u1.pair_set() if p != (0, 0)]
    for rho in range(ctx.dim):
        w = [(pow2k(ctx, x, rho), pow2k(ctx, y, rho)) for x, y in base1]
        anchors = _first_indep(ctx, w)
        if anchors is None:
            if cand:
                continue  # u1^rho is a line, u2 is not
            wit = _line_witness(ctx, w, pairs2, rho)
            if wit is not None:
                return wit
            continue
        w1, w2 = anchors
        d = ctx.mul(w1[0], w2[1]) ^ ctx.mul(w1[1], w2[0])
        dinv = ctx.inv(d)
        # inverse of the column matrix [w1 w2]
        i00 = ctx.mul(dinv, w2[1])
        i01 = ctx.mul(dinv, w2[0])
        i10 = ctx.mul(dinv, w1[1])
        i11 = ctx.mul(dinv, w1[0])
        for u, v in cand:
            a = ctx.mul(u[0], i00) ^ ctx.mul(v[0], i10)
            b = ctx.mul(u[0], i01) ^ ctx.mul(v[0], i11)
            cc = ctx.mul(u[1], i00) ^ ctx.mul(v[1], i10)
            dd = ctx.mul(u[1], i01) ^ ctx.mul(v[1], i11)
            if all((ctx.mul(a, x) ^ ctx.mul(b, y),
                    ctx.mul(cc, x) ^ ctx.mul(dd, y)) in target for x, y in w):
                return GammaLWitness(rho, (a, b, cc, dd))
    return None


def pow2k(ctx: FieldCtx, x: int, k: int) -> int:
    """x^(2^k): the k-fold squaring automorphism."""
    return ctx.pow2k(x, k)


def _first_indep(ctx, pairs):
    first = next((p for p in pairs if p != (0, 0)), None)
    if first is None:
        return None
    for p in pairs:
        if _indep(ctx, first, p):
            return first, p
    return None


def _line_witness(ctx, w, pairs2, rho):
    w0 = next((p for p in w if p != (0, 0)), None)
    u0 = pairs2[0] if pairs2 else None
    if w0 is None or u0 is None:
        return None
    wex = _complete(ctx, w0)
    uex = _complete(ctx, u0)
    d = ctx.mul(w0[0], wex[1]) ^ ctx.mul(w0[1], wex[0])
    dinv = ctx.inv(d)
    i00, i01 = ctx.mul(dinv, wex[1]), ctx.mul(dinv, wex[0])
    i10, i11 = ctx.mul(dinv, w0[1]), ctx.mul(dinv, w0[0])
    a = ctx.mul(u0[0], i00) ^ ctx.mul(uex[0], i10)
    b = ctx.mul(u0[0], i01) ^ ctx.mul(uex[0], i11)
    cc = ctx.mul(u0[1], i00) ^ ctx.mul(uex[1], i10)
    dd = ctx.mul(u0[1], i01) ^ ctx.mul(uex[1], i11)
    target = frozenset(pairs2) | {(0, 0)}
    mapped = {(ctx.mul(a, x) ^ ctx.mul(b, y), ctx.mul(cc, x) ^ ctx.mul(dd, y))
              for x, y in w}
    if mapped | {(0, 0)} == target:
        return GammaLWitness(rho, (a, b, cc, dd))
    return None


def _complete(ctx, p):
    for cand in ((1, 0), (0, 1)):
        if _indep(ctx, p, cand):
            return cand
    raise AssertionError("unreachable: (1,0) or (0,1) completes any nonzero pair")


def witness_maps(ctx: FieldCtx, wit: GammaLWitness, u1: Subspace,
                 u2: Subspace) -> bool:
    """Re-validate a witness: M applied to u1^rho must equal u2 exactly."""
    a, b, cc, dd = wit.matrix
    xs, ys = u1.pairs_vec()
    mapped = set()
    for x, y in zip(xs.tolist(), ys.tolist()):
        xr, yr = pow2k(ctx, x, wit.rho), pow2k(ctx, y, wit.rho)
        mapped.add((ctx.mul(a, xr) ^ ctx.mul(b, yr),
                    ctx.mul(cc, xr) ^ ctx.mul(dd, yr)))
    return mapped == set(u2.pair_set())
