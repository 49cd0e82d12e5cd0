"""Linear sets on PG(1, q^6): points, weights, comparisons."""

import random

import numpy as np
import pytest

from scatlin.errors import ParameterError
from scatlin.field import make_field
from scatlin.family import frak_c_elements
from scatlin.linpoly import LinPoly, compose, trinomial, x_poly
from scatlin.linset import (ProjPoint, is_maximum_scattered_linset,
                            linear_set, linset_report, set_difference_size,
                            sets_equal)
from scatlin.scatter import family_subspace, is_scattered_fibers, subspace

CTX1 = make_field(1)
CTX2 = make_field(2)


class TestProjPoint:
    def test_normalization(self):
        assert ProjPoint.of(CTX2, 3, 6).coords == (1, CTX2.div(6, 3))
        assert ProjPoint.of(CTX2, 0, 9).coords == (0, 1)
        with pytest.raises(ParameterError):
            ProjPoint.of(CTX2, 0, 0)


class TestLinearSet:
    def test_identity_graph_single_point(self):
        ls = linear_set(subspace(x_poly(CTX2)))
        assert ls.size() == 1
        assert ls.points()[0].coords == (1, 1)
        assert ls.weights.tolist() == [6]
        assert not is_maximum_scattered_linset(ls)

    def test_family_member_counts_q4(self):
        ls = linear_set(subspace(trinomial(CTX2, frak_c_elements(CTX2)[0])))
        assert ls.size() == 1365
        assert is_maximum_scattered_linset(ls)
        assert ls.weight_histogram() == {1: 1365}

    def test_weight_partition_identity_random(self):
        rng = random.Random(7)
        for ctx in (CTX1, CTX2):
            for _ in range(15):
                f = LinPoly(ctx, 1, tuple(rng.randrange(ctx.order)
                                          for _ in range(6)))
                if f.is_zero():
                    continue
                ls = linear_set(subspace(f))
                total = sum(ctx.q ** w - 1 for w in ls.weights.tolist())
                assert total == ctx.order - 1

    def test_agreement_with_fiber_oracle_random_q2(self):
        rng = random.Random(9)
        for _ in range(60):
            f = LinPoly(CTX1, 1, (0, rng.randrange(64), 0,
                                  rng.randrange(64), 0, rng.randrange(64)))
            if f.is_zero():
                continue
            ls = linear_set(subspace(f))
            assert is_maximum_scattered_linset(ls) == is_scattered_fibers(f)


class TestComparisons:
    def test_reflexive(self):
        ls = linear_set(subspace(trinomial(CTX1, 9)))
        assert sets_equal(ls, ls)
        assert set_difference_size(ls, ls) == 0

    def test_pseudoregulus_equal_both_steps(self):
        la = linear_set(family_subspace(CTX2, "a", 1))
        lb = linear_set(family_subspace(CTX2, "a", 5))
        assert sets_equal(la, lb)
        # and it is the set {(1 : x^{q-1})}
        xs = CTX2.all_nonzero()
        vals = np.unique(CTX2.vpow_index(CTX2.q - 1, CTX2.np_log[xs]))
        assert np.array_equal(la.values, vals)

    def test_family_sets_differ_from_pseudoregulus_q4(self):
        la = linear_set(family_subspace(CTX2, "a", 1))
        for c in frak_c_elements(CTX2)[:6]:
            lc = linear_set(subspace(trinomial(CTX2, c)))
            assert not sets_equal(lc, la)
            assert set_difference_size(lc, la) > 0

    def test_full_sweep_against_lp_type_sets_q4(self):
        # every admissible set differs from the pseudoregulus and from the
        # LP-type set of every admissible delta (set-level distinctness only)
        la = linear_set(family_subspace(CTX2, "a", 1))
        lp_keys = set()
        for d in range(1, CTX2.order):
            if CTX2.norm(d, 1) in (0, 1):
                continue
            lp_keys.add(linear_set(family_subspace(CTX2, "b", 1, d))
                        .values.tobytes())
        assert len(lp_keys) == 2730
        for c in frak_c_elements(CTX2):
            lc = linear_set(subspace(trinomial(CTX2, c)))
            assert not sets_equal(lc, la)
            assert lc.values.tobytes() not in lp_keys

    def test_scaling_invariance(self):
        # lambda U is the graph of x -> lam f(x / lam): same projective image
        c = frak_c_elements(CTX2)[0]
        f = trinomial(CTX2, c)
        lam = CTX2.generator
        g = compose(x_poly(CTX2).scale(lam),
                    compose(f, x_poly(CTX2).scale(CTX2.inv(lam))))
        assert sets_equal(linear_set(subspace(f)), linear_set(subspace(g)))

    def test_mixed_contexts_rejected(self):
        with pytest.raises(ParameterError):
            sets_equal(linear_set(subspace(x_poly(CTX1))),
                       linear_set(subspace(x_poly(CTX2))))


class TestReport:
    def test_report_shape(self):
        rep = linset_report(linear_set(subspace(trinomial(CTX1, 9))))
        assert set(rep) == {"size", "weight_histogram", "max_scattered"}
        assert sum((CTX1.q ** int(w) - 1) * n
                   for w, n in rep["weight_histogram"].items()) == CTX1.order - 1
