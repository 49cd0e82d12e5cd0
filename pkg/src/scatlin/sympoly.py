"""Sparse polynomials in six variables (X, Y, Z, T, U, V) over F_{q^6}.

Just enough symbolic machinery to expand determinants of matrices whose
entries are field constants plus at most one variable each, to apply the
coefficient-Frobenius/variable-rotation automorphism, and to evaluate the
result at points or along Frobenius orbits.  Terms are stored as a dict
mapping exponent 6-tuples to nonzero field coefficients.
"""

from __future__ import annotations

from .field import N_EXT, FieldCtx

VAR_NAMES = "XYZTUV"


class SymPoly:
    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: FieldCtx, terms: dict | None = None):
        self.ctx = ctx
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, ctx: FieldCtx, c: int) -> "SymPoly":
        return cls(ctx, {(0,) * N_EXT: c} if c else {})

    @classmethod
    def var(cls, ctx: FieldCtx, i: int) -> "SymPoly":
        e = [0] * N_EXT
        e[i] = 1
        return cls(ctx, {tuple(e): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, SymPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "SymPoly") -> "SymPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            nc = out.get(e, 0) ^ c
            if nc:
                out[e] = nc
            else:
                out.pop(e, None)
        return SymPoly(self.ctx, out)

    def __mul__(self, other: "SymPoly") -> "SymPoly":
        ctx = self.ctx
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = ctx.mul(c1, c2)
                nc = out.get(e, 0) ^ c
                if nc:
                    out[e] = nc
                else:
                    out.pop(e, None)
        return SymPoly(ctx, out)

    def scale(self, c: int) -> "SymPoly":
        ctx = self.ctx
        return SymPoly(ctx, {e: ctx.mul(c, v) for e, v in self.terms.items()})

    def eval(self, point) -> int:
        """Evaluate at a 6-tuple of field elements."""
        ctx = self.ctx
        acc = 0
        for exps, coeff in self.terms.items():
            t = coeff
            for v, e in zip(point, exps):
                if e:
                    t = ctx.mul(t, ctx.pow(v, e))
                if t == 0:
                    break
            acc ^= t
        return acc

    def orbit_terms(self) -> list:
        """Collapse each monomial to (E, coeff) with E = sum_i e_i q^i mod q^6-1.

        Evaluating at the Frobenius orbit (m, m^q, ..., m^(q^5)) of a nonzero
        m turns the monomial into m^E; terms with equal reduced E are merged.
        m = 0 must be handled separately by the caller.
        """
        ctx = self.ctx
        merged: dict = {}
        for exps, coeff in self.terms.items():
            e_int = sum(e * ctx.q ** i for i, e in enumerate(exps)) % ctx.mult_order
            nc = merged.get(e_int, 0) ^ coeff
            if nc:
                merged[e_int] = nc
            else:
                merged.pop(e_int, None)
        return sorted(merged.items())

    def __repr__(self):
        if not self.terms:
            return "SymPoly(0)"
        bits = []
        for exps, coeff in sorted(self.terms.items()):
            mono = "".join(
                f"{VAR_NAMES[i]}" + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(exps) if e)
            bits.append(f"{self.ctx.to_hex(coeff)}*{mono or '1'}")
        return "SymPoly(" + " + ".join(bits) + ")"


def psi(h: SymPoly) -> SymPoly:
    """Ring automorphism: coefficients to the q-th power, exponent vector
    rotated one step right (the X-exponent becomes the Y-exponent, and the
    V-exponent wraps to X)."""
    ctx = h.ctx
    out: dict = {}
    for exps, coeff in h.terms.items():
        ne = (exps[-1],) + exps[:-1]
        out[ne] = out.get(ne, 0) ^ ctx.frobenius(coeff, 1)
    return SymPoly(ctx, out)


def coefficient_frobenius(h: SymPoly) -> SymPoly:
    """Raise every coefficient to the q-th power, exponents untouched."""
    ctx = h.ctx
    return SymPoly(ctx, {e: ctx.frobenius(c, 1) for e, c in h.terms.items()})


def sym_det(ctx: FieldCtx, rows: list) -> SymPoly:
    """Determinant of a matrix of SymPoly entries (characteristic 2: no signs)."""
    n = len(rows)
    full = (1 << n) - 1
    memo: dict = {}

    def rec(r: int, colmask: int) -> SymPoly:
        if r == n:
            return SymPoly.const(ctx, 1)
        key = colmask  # row index is determined by popcount
        if key in memo:
            return memo[key]
        acc = SymPoly(ctx)
        for j in range(n):
            if not (colmask >> j) & 1:
                continue
            entry = rows[r][j]
            if entry.is_zero():
                continue
            acc = acc + entry * rec(r + 1, colmask & ~(1 << j))
        memo[key] = acc
        return acc

    return rec(0, full)
