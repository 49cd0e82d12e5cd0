"""Rank-metric codes spanned over F_{q^6} by X and a trinomial.

The code attached to a coefficient c and a step s in {1, 5} is the
F_{q^6}-span of X and X^{q^s} + X^{q^{3s}} + cX^{q^{5s}} inside the
36-dimensional algebra of sigma-polynomials: q^12 codewords, each an
F_q-linear map whose rank is read off its Dickson matrix.  This module
computes the code parameters (minimum distance via a projective sweep of
q^6 + 1 rank evaluations), both idealizers as GF(2)-linear solution
spaces of the membership constraints, the adjoint code as an F_q-span,
and decides equivalence inside the family by the two explicit criteria
(same step: a field automorphism matches the coefficients; opposite
steps: a rational expression in the second coefficient does), producing
witnesses that are re-validated by polynomial composition.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import FeasibilityError, ParameterError
from .field import N_EXT, FieldCtx
from .linpoly import (LinPoly, adjoint, compose, dickson_stack,
                      rank_batch, trinomial, x_poly)
from .scatter import dickson_det_sweep, dickson_minor_terms, _eval_terms_on_logs
from .family import in_frak_c, frak_c_elements
from . import gf2

_BATCH = 1 << 19


@dataclass(frozen=True)
class RMCode:
    """{aX + b f(X) : a, b in F_{q^6}}, an F_q-linear rank-metric code."""

    ctx: FieldCtx
    f: LinPoly


def build_code(ctx: FieldCtx, c: int, s: int = 1) -> RMCode:
    if c == 0:
        raise ParameterError("c = 0 collapses the trinomial generator")
    if s not in (1, 5):
        raise ParameterError(f"step must be 1 or 5, got {s}")
    return RMCode(ctx, trinomial(ctx, c, s))


def code_from_poly(f: LinPoly) -> RMCode:
    return RMCode(f.ctx, f)


# ---------------------------------------------------------------------------
# GF(2) encodings of sigma-polynomials and the code subspace
# ---------------------------------------------------------------------------

def poly_bits(f: LinPoly) -> int:
    bits = 0
    for i, a in enumerate(f.coeffs):
        bits |= a << (i * f.ctx.dim)
    return bits


def bits_poly(ctx: FieldCtx, s: int, bits: int) -> LinPoly:
    mask = ctx.order - 1
    return LinPoly(ctx, s, tuple((bits >> (i * ctx.dim)) & mask
                                 for i in range(N_EXT)))


def _fq_basis(ctx: FieldCtx) -> list:
    """F_q-basis of F_{q^6}: powers 0..5 of the multiplicative generator."""
    return [ctx.pow(ctx.generator, i) for i in range(N_EXT)]


def fq_generators(code: RMCode) -> list:
    """Twelve F_q-generators eps_i X, eps_i f of the code."""
    ctx = code.ctx
    gens = []
    for eps in _fq_basis(ctx):
        gens.append(x_poly(ctx, code.f.s).scale(eps))
    for eps in _fq_basis(ctx):
        gens.append(code.f.scale(eps))
    return gens


def gf2_generators(code: RMCode) -> list:
    """GF(2)-generators: every power-basis multiple of X and of f."""
    ctx = code.ctx
    gens = []
    for i in range(ctx.dim):
        gens.append(x_poly(ctx, code.f.s).scale(1 << i))
    for i in range(ctx.dim):
        gens.append(code.f.scale(1 << i))
    return gens


def code_gf2_basis(code: RMCode) -> list:
    return gf2.echelon([poly_bits(g) for g in gf2_generators(code)])


def dim_q(code: RMCode) -> int:
    """Dimension over F_q (GF(2)-rank of the generator set divided by e)."""
    bits = len(code_gf2_basis(code))
    assert bits % code.ctx.e == 0
    return bits // code.ctx.e


def contains(code: RMCode, g: LinPoly) -> bool:
    return gf2.in_span(poly_bits(g), code_gf2_basis(code))


# ---------------------------------------------------------------------------
# Minimum distance and the MRD bound
# ---------------------------------------------------------------------------

def dickson_min_rank(f: LinPoly) -> int:
    """min over m of rank(D_{mX+f}); the determinant sweep skips rank-6
    shifts and the trailing 5x5 minor certifies rank exactly 5, so batch
    elimination only touches shifts where both vanish."""
    ctx = f.ctx
    zeros = dickson_det_sweep(f)
    if zeros.size == 0:
        return 6
    best = 6
    nz = zeros[zeros != 0]
    suspects = []
    if nz.size:
        minors = _eval_terms_on_logs(ctx, dickson_minor_terms(f), ctx.np_log[nz])
        if np.any(minors != 0):
            best = 5
        suspects.append(nz[minors == 0])
    if nz.size != zeros.size:
        suspects.append(np.zeros(1, dtype=np.uint32))
    sus = np.concatenate(suspects) if suspects else np.empty(0, dtype=np.uint32)
    for lo in range(0, sus.size, _BATCH):
        chunk = sus[lo: lo + _BATCH]
        ranks = rank_batch(ctx, dickson_stack(f, chunk))
        best = min(best, int(ranks.min()))
    return best


def min_distance(code: RMCode) -> int:
    """Minimum rank over nonzero codewords, by the projective sweep
    rank(X) = 6 and rank(mX + f) for every m in F_{q^6}."""
    f = code.f
    if all(a == 0 for a in f.coeffs[1:]):
        return 6  # the code degenerates to <X>: every nonzero word is aX
    return min(6, dickson_min_rank(f))


def is_mrd(code: RMCode) -> bool:
    """Singleton-like equality: dim_q = 6 (6 - d + 1) with d = min_distance."""
    d = min_distance(code)
    return dim_q(code) == 6 * (6 - d + 1)


# ---------------------------------------------------------------------------
# Idealizers
# ---------------------------------------------------------------------------

def _membership_kernel(code: RMCode, conditions) -> list:
    """Solve for phi with cond(phi) in C for every condition, over GF(2).

    `conditions` maps a sigma-polynomial to a list of sigma-polynomials
    whose membership in the code is required; the solution space comes
    back as a list of LinPoly kernel-basis elements.
    """
    ctx = code.ctx
    basis = code_gf2_basis(code)
    width = N_EXT * ctx.dim
    images = []
    for bit in range(width):
        phi = bits_poly(ctx, code.f.s, 1 << bit)
        residue = 0
        for k, out in enumerate(conditions(phi)):
            residue |= gf2.reduce_vector(poly_bits(out), basis) << (k * width)
        images.append(residue)
    masks = gf2.kernel_from_images(images)
    return [bits_poly(ctx, code.f.s, m) for m in masks]


def right_idealizer_basis(code: RMCode) -> list:
    """GF(2)-basis of I_R = {phi : g o phi in C for all g in C}.

    Membership for the two F_{q^6}-generators suffices: composition on the
    right is F_{q^6}-linear in the left factor, so the conditions reduce
    to phi in C and f o phi in C.
    """
    return _membership_kernel(code, lambda phi: [phi, compose(code.f, phi)])


def left_idealizer_basis(code: RMCode) -> list:
    """GF(2)-basis of I_L = {phi : phi o g in C for all g in C}.

    Left composition is only F_q-linear in g, so all twelve F_q-generators
    of the code are constrained.
    """
    gens = fq_generators(code)
    return _membership_kernel(code, lambda phi: [compose(phi, g) for g in gens])


def _span_elements(ctx: FieldCtx, s: int, basis: list) -> list:
    if len(basis) > 20:
        raise FeasibilityError(f"idealizer has 2^{len(basis)} elements; "
                               "use the basis/order accessors instead")
    zero = LinPoly(ctx, s, (0,) * N_EXT)
    out = []
    for mask in range(1 << len(basis)):
        acc = zero
        for i, b in enumerate(basis):
            if (mask >> i) & 1:
                acc = acc + b
        out.append(acc)
    return out


def right_idealizer(code: RMCode) -> list:
    """The full right idealizer as a list of sigma-polynomials."""
    return _span_elements(code.ctx, code.f.s, right_idealizer_basis(code))


def left_idealizer(code: RMCode) -> list:
    return _span_elements(code.ctx, code.f.s, left_idealizer_basis(code))


def right_idealizer_order(code: RMCode) -> int:
    return 1 << len(right_idealizer_basis(code))


def left_idealizer_order(code: RMCode) -> int:
    return 1 << len(left_idealizer_basis(code))


def is_scalar_subfield_map(f: LinPoly, ell: int) -> bool:
    """True iff f = alpha X with alpha in F_{q^ell}."""
    return (all(a == 0 for a in f.coeffs[1:])
            and f.ctx.in_subfield(f.coeffs[0], ell))


# ---------------------------------------------------------------------------
# Adjoint code
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AdjointCode:
    """The set {f_hat : f in C}, an F_q-subspace of sigma-polynomials.

    It is closed under F_{q^2}- but in general not F_{q^6}-scaling, so it
    is carried as a GF(2) row space rather than a two-generator span; the
    adjoint of the trinomial generator is kept alongside for reporting.
    """

    ctx: FieldCtx
    step: int
    basis: tuple          # canonical GF(2) echelon of poly_bits encodings
    adjoint_generator: LinPoly

    def contains(self, g: LinPoly) -> bool:
        return gf2.in_span(poly_bits(g), list(self.basis))

    def codewords(self):
        if len(self.basis) > 16:
            raise FeasibilityError("adjoint code too large to enumerate")
        for mask in range(1 << len(self.basis)):
            bits = 0
            for i, b in enumerate(self.basis):
                if (mask >> i) & 1:
                    bits ^= b
            yield bits_poly(self.ctx, self.step, bits)


def adjoint_code(code) -> AdjointCode:
    """Adjoint of an RMCode, or of an AdjointCode (the involution)."""
    if isinstance(code, AdjointCode):
        rows = [poly_bits(adjoint(bits_poly(code.ctx, code.step, b)))
                for b in code.basis]
        return AdjointCode(code.ctx, code.step, tuple(gf2.echelon(rows)),
                           adjoint(code.adjoint_generator))
    rows = [poly_bits(adjoint(g)) for g in gf2_generators(code)]
    return AdjointCode(code.ctx, code.f.s, tuple(gf2.echelon(rows)),
                       adjoint(code.f))


def code_as_adjoint_form(code: RMCode) -> AdjointCode:
    """The code itself in row-space form, for involution comparisons."""
    return AdjointCode(code.ctx, code.f.s, tuple(code_gf2_basis(code)), code.f)


# ---------------------------------------------------------------------------
# Equivalence inside the family
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EquivWitness:
    """Validated witness for equivalence of two family codes.

    rho_exponent k means the automorphism x -> x^(2^k).  Branch 'same_s'
    carries (A, D) with D f_2(X) = f_1^rho(A X); branch 'opposite_s'
    carries (B, C) with f_1^rho(B f_2(X)) = C X.
    """

    rho_exponent: int
    branch: str
    A: int | None = None
    D: int | None = None
    B: int | None = None
    C: int | None = None


def poly_aut(f: LinPoly, k: int) -> LinPoly:
    """Apply x -> x^(2^k) to every coefficient."""
    ctx = f.ctx
    return LinPoly(ctx, f.s, tuple(ctx.pow2k(a, k) for a in f.coeffs))


def to_step1(f: LinPoly) -> LinPoly:
    """Rewrite as a step-1 polynomial (the underlying map is unchanged)."""
    coeffs = [0] * N_EXT
    for i, a in enumerate(f.coeffs):
        coeffs[(f.s * i) % N_EXT] ^= a
    return LinPoly(f.ctx, 1, tuple(coeffs))


def norm_plus_trace(ctx: FieldCtx, c: int) -> int:
    return ctx.norm(c, 2) ^ ctx.trace(c, 2)


def opposite_branch_target(ctx: FieldCtx, c2: int, s: int) -> int:
    """(c2^{q^{3s}+q^s} + 1)(c2^{q^{5s}} + 1) / (c2 + 1)^{q^s + q^{3s}}."""
    if c2 == 1:
        raise ParameterError("c2 = 1 makes the target expression degenerate")
    num = ctx.mul(ctx.mul(ctx.frobenius(c2, 3 * s), ctx.frobenius(c2, s)) ^ 1,
                  ctx.frobenius(c2, 5 * s) ^ 1)
    den = ctx.mul(ctx.frobenius(c2 ^ 1, s), ctx.frobenius(c2 ^ 1, 3 * s))
    return ctx.div(num, den)


def opposite_branch_witness(ctx: FieldCtx, rho: int, c2: int, s: int,
                            mu: int = 1) -> tuple:
    """(B, C) built from the solved linear system; mu is any nonzero
    element of F_{q^2} (the default 1 is always valid)."""
    npt = norm_plus_trace(ctx, c2)
    if npt == 0 or c2 == 1:
        raise ParameterError("degenerate c2 for the opposite-step witness")
    cval = ctx.div(mu, ctx.mul(ctx.frobenius(c2 ^ 1, s),
                               ctx.frobenius(c2 ^ 1, 3 * s)))
    b_qs = ctx.div(ctx.mul(ctx.frobenius(c2, 3 * s) ^ 1, cval),
                   ctx.frobenius(npt, s))
    return ctx.frobenius(b_qs, N_EXT - s), cval


def _validate_same_s(ctx, c1, c2, s, rho, a_val, d_val) -> bool:
    f1r = poly_aut(trinomial(ctx, c1, s), rho)
    f2 = trinomial(ctx, c2, s)
    lhs = f2.scale(d_val)
    rhs = compose(f1r, x_poly(ctx, s).scale(a_val))
    return lhs == rhs


def _validate_opposite_s(ctx, c1, c2, s, t, rho, b_val, c_val) -> bool:
    f1r = to_step1(poly_aut(trinomial(ctx, c1, s), rho))
    f2 = to_step1(trinomial(ctx, c2, t))
    lhs = compose(f1r, f2.scale(b_val))
    rhs = x_poly(ctx, 1).scale(c_val)
    return lhs == rhs


def codes_equivalent(ctx: FieldCtx, c1: int, s: int, c2: int, t: int):
    """Decide equivalence of the codes for (c1, s) and (c2, t).

    Implements exactly the two closed-form criteria over all 6e field
    automorphisms and returns a composition-validated witness, or None.
    Outside the admissible set the criteria are not known to be complete,
    so a warning marks the verdict as heuristic.
    """
    for cc in (c1, c2):
        if not in_frak_c(ctx, cc):
            warnings.warn(
                f"coefficient {ctx.to_hex(cc)} is outside the admissible set; "
                "the equivalence decision is heuristic", stacklevel=2)
    if s not in (1, 5) or t not in (1, 5):
        raise ParameterError("steps must lie in {1, 5}")
    for rho in range(ctx.dim):
        c1r = ctx.pow2k(c1, rho)
        if s == t:
            if c1r == c2:
                wit = EquivWitness(rho_exponent=rho, branch="same_s", A=1, D=1)
                assert _validate_same_s(ctx, c1, c2, s, rho, 1, 1)
                return wit
        else:  # s + t = 6
            try:
                target = opposite_branch_target(ctx, c2, s)
            except ParameterError:
                continue
            if c1r == target:
                b_val, c_val = opposite_branch_witness(ctx, rho, c2, s)
                assert _validate_opposite_s(ctx, c1, c2, s, t, rho, b_val, c_val)
                return EquivWitness(rho_exponent=rho, branch="opposite_s",
                                    B=b_val, C=c_val)
    return None


def equivalence_classes(ctx: FieldCtx, elements=None, steps=(1, 5)) -> list:
    """Partition of admissible (c, s) pairs into equivalence classes."""
    if elements is None:
        elements = frak_c_elements(ctx)
    items = [(c, s) for c in elements for s in steps]
    index = {it: i for i, it in enumerate(items)}
    parent = list(range(len(items)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    # same-step classes are automorphism orbits (closing over x -> x^2
    # reaches every rho); an opposite-step pair ((c1, s), (c2, t)) is joined
    # through its rho = 0 representative c1 = target(c2, s)
    for c, sigma in items:
        orb = ctx.pow2k(c, 1)
        if (orb, sigma) in index:
            union(index[(c, sigma)], index[(orb, sigma)])
        s_other = (N_EXT - sigma) % N_EXT
        if s_other in steps:
            try:
                target = opposite_branch_target(ctx, c, s_other)
            except ParameterError:
                continue
            if (target, s_other) in index:
                union(index[(target, s_other)], index[(c, sigma)])
    groups: dict = {}
    for it, i in index.items():
        groups.setdefault(find(i), []).append(it)
    return sorted(groups.values())


def class_count_bounds(frak_c_size: int, e: int) -> tuple:
    """The 1/(6e) lower bound on the class count, next to the weaker
    1/(12e+1) bound the orbit-counting argument certifies on its own;
    both reported, neither adjudicated."""
    return (Fraction(frak_c_size, 6 * e),
            Fraction(frak_c_size, 12 * e + 1))


def code_report(ctx: FieldCtx, c: int, s: int = 1) -> dict:
    code = build_code(ctx, c, s)
    return {
        "c": ctx.to_hex(c),
        "s": s,
        "min_distance": min_distance(code),
        "is_mrd": is_mrd(code),
        "right_idealizer_order": right_idealizer_order(code),
        "left_idealizer_order": left_idealizer_order(code),
    }
