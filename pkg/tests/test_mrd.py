"""Rank-metric codes: parameters, idealizers, adjoints, equivalence."""

import random
import warnings
from fractions import Fraction

import pytest

from scatlin.errors import ParameterError
from scatlin.field import make_field
from scatlin.gf2 import echelon
from scatlin.family import frak_c_elements
from scatlin.linpoly import (LinPoly, adjoint, compose, dickson_matrix,
                             monomial, rank, trinomial, x_poly)
from scatlin.mrd import (adjoint_code, bits_poly, build_code,
                         class_count_bounds, code_as_adjoint_form,
                         code_from_poly, code_gf2_basis, code_report,
                         codes_equivalent, contains, dim_q,
                         equivalence_classes, gf2_generators, is_mrd,
                         is_scalar_subfield_map, left_idealizer,
                         left_idealizer_order, min_distance, norm_plus_trace,
                         opposite_branch_target, opposite_branch_witness,
                         poly_aut, poly_bits, right_idealizer,
                         right_idealizer_order, to_step1)

CTX1 = make_field(1)
CTX2 = make_field(2)
FRAK4 = frak_c_elements(CTX2)


class TestBuild:
    def test_zero_rejected(self):
        with pytest.raises(ParameterError):
            build_code(CTX2, 0, 1)
        with pytest.raises(ParameterError):
            build_code(CTX2, 5, 3)

    def test_generators_independent(self):
        code = build_code(CTX2, FRAK4[0], 1)
        assert dim_q(code) == 12

    def test_s5_exponents(self):
        code = build_code(CTX1, 9, 5)
        f1 = to_step1(code.f)
        assert f1.coeffs == (0, 9, 0, 1, 0, 1)  # c X^q + X^{q^3} + X^{q^5}

    def test_code_size(self):
        # q^12 codewords: GF(2)-dimension of the span is 12e
        code = build_code(CTX1, 7, 1)
        assert len(code_gf2_basis(code)) == 12 * CTX1.e


class TestMinDistance:
    def test_family_codes_q4(self):
        for c in FRAK4[:5]:
            code = build_code(CTX2, c, 1)
            assert min_distance(code) == 5
            assert is_mrd(code)

    def test_trace_generator(self):
        code = code_from_poly(LinPoly(CTX1, 1, (1,) * 6))
        assert min_distance(code) == 1
        assert not is_mrd(code)

    def test_pseudoregulus_q2(self):
        code = code_from_poly(monomial(CTX1, 1, 1))
        assert min_distance(code) == 5
        assert is_mrd(code)

    def test_full_codeword_scan_oracle_q2(self):
        # the projective sweep must agree with scanning all q^12 codewords
        rng = random.Random(3)
        for c in (rng.randrange(1, 64) for _ in range(3)):
            code = code_from_poly(trinomial(CTX1, c, 1))
            basis = code_gf2_basis(code)
            best = 6
            for mask in range(1, 1 << len(basis)):
                bits = 0
                for i, b in enumerate(basis):
                    if (mask >> i) & 1:
                        bits ^= b
                g = bits_poly(CTX1, 1, bits)
                best = min(best, rank(dickson_matrix(g)))
            assert min_distance(code) == best

    def test_mrd_iff_scattered_random_trinomials_q2(self):
        from scatlin.scatter import is_scattered_fibers
        rng = random.Random(5)
        for _ in range(60):
            c1, c3, c5 = (rng.randrange(64) for _ in range(3))
            f = LinPoly(CTX1, 1, (0, c1, 0, c3, 0, c5))
            if f.is_zero() or all(a == 0 for a in f.coeffs[1:]):
                continue
            code = code_from_poly(f)
            assert is_mrd(code) == is_scattered_fibers(f)

    def test_singleton_bound(self):
        rng = random.Random(7)
        for _ in range(20):
            f = LinPoly(CTX1, 1, tuple(rng.randrange(64) for _ in range(6)))
            if all(a == 0 for a in f.coeffs[1:]):
                continue
            code = code_from_poly(f)
            d = min_distance(code)
            assert dim_q(code) <= 6 * (6 - d + 1)


class TestIdealizers:
    def test_family_code_idealizers_q4(self):
        code = build_code(CTX2, FRAK4[0], 1)
        right = right_idealizer(code)
        assert len(right) == CTX2.q ** 2
        assert all(is_scalar_subfield_map(p, 2) for p in right)
        assert left_idealizer_order(code) == CTX2.q ** 6

    def test_left_idealizer_is_scalar_field(self):
        code = build_code(CTX1, 9, 1)
        left = left_idealizer(code)
        assert len(left) == CTX1.q ** 6
        assert all(is_scalar_subfield_map(p, 6) for p in left)

    def test_pseudoregulus_right_idealizer(self):
        code = code_from_poly(monomial(CTX1, 1, 1))
        assert right_idealizer_order(code) == CTX1.q ** 6

    def test_full_scan_cross_check_q2(self):
        # both idealizers live inside the code, so scan all q^12 codewords
        from scatlin.mrd import fq_generators
        code = code_from_poly(trinomial(CTX1, CTX1.generator, 1))
        basis = code_gf2_basis(code)
        gens = fq_generators(code)
        scan_r, scan_l = [], []
        for mask in range(1 << len(basis)):
            bits = 0
            for i, b in enumerate(basis):
                if (mask >> i) & 1:
                    bits ^= b
            phi = bits_poly(CTX1, 1, bits)
            if contains(code, compose(code.f, phi)):
                scan_r.append(bits)
            if all(contains(code, compose(phi, g)) for g in gens):
                scan_l.append(bits)
        assert sorted(scan_r) == sorted(poly_bits(p)
                                        for p in right_idealizer(code))
        assert sorted(scan_l) == sorted(poly_bits(p)
                                        for p in left_idealizer(code))


class TestAdjointCode:
    def test_involution(self):
        code = build_code(CTX2, FRAK4[0], 1)
        assert adjoint_code(adjoint_code(code)).basis == \
            code_as_adjoint_form(code).basis

    def test_adjoint_generator_recorded(self):
        c = FRAK4[0]
        code = build_code(CTX2, c, 1)
        ac = adjoint_code(code)
        assert ac.adjoint_generator == adjoint(code.f)
        assert ac.adjoint_generator.coeffs == \
            (0, CTX2.frobenius(c, 1), 0, 1, 0, 1)

    def test_adjoint_set_is_not_an_fq6_span(self):
        # the adjoint set is closed under F_{q^2}- but not F_{q^6}-scaling,
        # so it differs from the two-generator span over F_{q^6}
        code = build_code(CTX2, FRAK4[0], 1)
        ac = adjoint_code(code)
        span = echelon([poly_bits(g) for g in
                        gf2_generators(code_from_poly(ac.adjoint_generator))])
        assert tuple(span) != ac.basis
        # membership check: X and the adjoint generator do lie in the set
        assert ac.contains(x_poly(CTX2))
        assert ac.contains(ac.adjoint_generator)
        lam = CTX2.generator  # not in F_{q^2}
        assert not ac.contains(ac.adjoint_generator.scale(lam))
        mu = next(x for x in range(2, CTX2.order) if CTX2.in_subfield(x, 2))
        assert ac.contains(ac.adjoint_generator.scale(mu))

    def test_rank_preserved_under_adjoint(self):
        rng = random.Random(11)
        for _ in range(30):
            g = LinPoly(CTX2, 1, tuple(rng.randrange(4096) for _ in range(6)))
            assert rank(dickson_matrix(g)) == rank(dickson_matrix(adjoint(g)))

    def test_adjoint_code_membership_q2(self):
        # exhaustive: the set {g_hat : g in C} equals the computed row space
        code = build_code(CTX1, 9, 1)
        ac = adjoint_code(code)
        basis = code_gf2_basis(code)
        expected = set()
        for mask in range(1 << len(basis)):
            bits = 0
            for i, b in enumerate(basis):
                if (mask >> i) & 1:
                    bits ^= b
            expected.add(poly_bits(adjoint(bits_poly(CTX1, 1, bits))))
        got = {poly_bits(p) for p in ac.codewords()}
        assert got == expected


class TestEquivalence:
    def test_reflexive_and_frobenius_orbit(self):
        c = FRAK4[0]
        for k in (0, 1, 3, 7):
            wit = codes_equivalent(CTX2, c, 1, CTX2.pow2k(c, k), 1)
            assert wit is not None and wit.branch == "same_s"

    def test_symmetry(self):
        c = FRAK4[0]
        c2 = CTX2.pow2k(c, 5)
        assert codes_equivalent(CTX2, c, 1, c2, 1) is not None
        assert codes_equivalent(CTX2, c2, 1, c, 1) is not None

    def test_same_s_distinct_orbits_inequivalent(self):
        orbit = {CTX2.pow2k(FRAK4[0], k) for k in range(CTX2.dim)}
        other = next(c for c in FRAK4 if c not in orbit)
        assert codes_equivalent(CTX2, FRAK4[0], 1, other, 1) is None

    def test_opposite_branch_constructed_instance(self):
        for c2 in FRAK4[:4]:
            c1 = opposite_branch_target(CTX2, c2, 1)
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                wit = codes_equivalent(CTX2, c1, 1, c2, 5)
            assert wit is not None and wit.branch == "opposite_s"
            # the returned witness was validated by composition internally;
            # re-validate here explicitly
            f1r = to_step1(poly_aut(trinomial(CTX2, c1, 1), wit.rho_exponent))
            f2 = to_step1(trinomial(CTX2, c2, 5))
            assert compose(f1r, f2.scale(wit.B)) == \
                x_poly(CTX2, 1).scale(wit.C)

    def test_witness_closed_form_matches_system_solution(self):
        mu = next(x for x in range(2, CTX2.order) if CTX2.in_subfield(x, 2))
        for c2 in FRAK4[:6]:
            for s in (1, 5):
                for m in (1, mu):
                    b_sys, c_sys = opposite_branch_witness(CTX2, 0, c2, s, m)
                    npt = norm_plus_trace(CTX2, c2)
                    c2p1 = c2 ^ 1
                    num = CTX2.mul(CTX2.frobenius(c2p1, 2 * s),
                                   CTX2.frobenius(m, s))
                    den = CTX2.mul(npt, CTX2.mul(c2p1,
                                                 CTX2.frobenius(c2p1, 2 * s)))
                    assert CTX2.div(num, den) == b_sys
                    assert c_sys == CTX2.div(
                        m, CTX2.mul(CTX2.frobenius(c2p1, s),
                                    CTX2.frobenius(c2p1, 3 * s)))

    def test_determinant_identity(self):
        # det of the 3x3 system matrix = c1^rho (N + Tr)(c2)^{q^s}
        rng = random.Random(13)
        from scatlin.linpoly import matrix_det
        for _ in range(30):
            c1 = rng.randrange(1, CTX2.order)
            c2 = rng.randrange(1, CTX2.order)
            rho = rng.randrange(CTX2.dim)
            s = rng.choice((1, 5))
            c1r = CTX2.pow2k(c1, rho)
            mat = [
                [CTX2.frobenius(c2, s), 1, c1r],
                [1, CTX2.frobenius(c2, 3 * s), c1r],
                [1, 1, CTX2.mul(c1r, CTX2.frobenius(c2, 5 * s))],
            ]
            lhs = matrix_det(CTX2, mat)
            rhs = CTX2.mul(c1r, CTX2.frobenius(norm_plus_trace(CTX2, c2), s))
            assert lhs == rhs

    def test_heuristic_warning_outside_frak(self):
        with pytest.warns(UserWarning):
            codes_equivalent(CTX2, 2, 1, 2, 1)


class TestPartition:
    def test_classes_and_bounds_q4(self):
        classes = equivalence_classes(CTX2)
        bp, bc = class_count_bounds(len(FRAK4), CTX2.e)
        assert bp == Fraction(len(FRAK4), 12)
        assert bc == Fraction(len(FRAK4), 25)
        assert len(classes) >= bp and len(classes) >= bc
        assert sum(len(cl) for cl in classes) == 2 * len(FRAK4)

    def test_partition_respects_pairwise_decision(self):
        classes = equivalence_classes(CTX2)
        lookup = {}
        for i, cl in enumerate(classes):
            for it in cl:
                lookup[it] = i
        rng = random.Random(17)
        items = [it for cl in classes for it in cl]
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            for _ in range(40):
                a = rng.choice(items)
                b = rng.choice(items)
                wit = codes_equivalent(CTX2, a[0], a[1], b[0], b[1])
                assert (wit is not None) == (lookup[a] == lookup[b])

    def test_bounds_edge_cases(self):
        assert class_count_bounds(0, 2) == (Fraction(0), Fraction(0))
        assert class_count_bounds(64, 2) == (Fraction(64, 12), Fraction(64, 25))


class TestReport:
    def test_report_for_family_member(self):
        rep = code_report(CTX2, FRAK4[0], 1)
        assert rep["min_distance"] == 5
        assert rep["is_mrd"] is True
        assert rep["right_idealizer_order"] == 16
        assert rep["left_idealizer_order"] == 4096

    def test_report_for_c_equal_one(self):
        rep = code_report(CTX2, 1, 1)
        assert rep["is_mrd"] is False
