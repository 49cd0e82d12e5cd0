"""F_q-linear sets on the projective line PG(1, q^6).

The subspace U_f = {(x, f(x))} projects to the point set
{(1 : f(x)/x) : x != 0}; the weight of a point is the F_q-dimension of
the fiber over it, read off the fiber size q^w - 1.  Because every
subspace handled here is a graph, no point of the form (0 : 1) ever
occurs and a linear set is carried as the sorted array of second
coordinates plus per-point weights, which makes set comparisons exact
and cheap even at q = 16.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .field import FieldCtx
from .scatter import Subspace, fiber_counts


@dataclass(frozen=True)
class ProjPoint:
    """Point of PG(1, q^6), normalized so the first nonzero coordinate is 1."""

    coords: tuple

    @classmethod
    def of(cls, ctx: FieldCtx, x: int, y: int) -> "ProjPoint":
        if x == 0 and y == 0:
            raise ParameterError("(0, 0) is not a projective point")
        if x != 0:
            return cls((1, ctx.div(y, x)))
        return cls((0, 1))


@dataclass(frozen=True)
class LinearSet:
    """Point set of L_U with weights, for U the graph of a linearized map."""

    ctx: FieldCtx
    values: np.ndarray   # ascending second coordinates of the points (1 : v)
    weights: np.ndarray  # matching F_q-dimensions of the fibers

    def size(self) -> int:
        return int(self.values.size)

    def points(self) -> list:
        return [ProjPoint((1, int(v))) for v in self.values]

    def weight_histogram(self) -> dict:
        ws, counts = np.unique(self.weights, return_counts=True)
        return {int(w): int(n) for w, n in zip(ws, counts)}


def linear_set(u: Subspace) -> LinearSet:
    """Accumulate the projective image of U \\ {0} with fiber sizes."""
    ctx = u.ctx
    counts = fiber_counts(u.f)
    values = np.flatnonzero(counts).astype(np.uint32)  # includes 0 when f has kernel
    sizes = counts[values]
    weights = np.zeros(values.size, dtype=np.int64)
    for i, size in enumerate(sizes.tolist()):
        w = (size + 1).bit_length() - 1
        assert ctx.q ** (w // ctx.e) - 1 == size, "fiber size must be q^w - 1"
        weights[i] = w // ctx.e
    assert int((ctx.q ** weights - 1).sum()) == ctx.order - 1
    return LinearSet(ctx, values, weights)


def is_maximum_scattered_linset(ls: LinearSet) -> bool:
    """(q^6-1)/(q-1) points, all of weight 1."""
    full = (ls.ctx.order - 1) // (ls.ctx.q - 1)
    return ls.size() == full and bool(np.all(ls.weights == 1))


def sets_equal(a: LinearSet, b: LinearSet) -> bool:
    if a.ctx is not b.ctx:
        raise ParameterError("mixed field contexts")
    return bool(np.array_equal(a.values, b.values))


def set_difference_size(a: LinearSet, b: LinearSet) -> int:
    if a.ctx is not b.ctx:
        raise ParameterError("mixed field contexts")
    return int(np.setdiff1d(a.values, b.values).size)


def linset_report(ls: LinearSet) -> dict:
    return {
        "size": ls.size(),
        "weight_histogram": {str(w): n for w, n in
                             sorted(ls.weight_histogram().items())},
        "max_scattered": is_maximum_scattered_linset(ls),
    }
