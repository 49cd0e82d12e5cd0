"""Tiny GF(2) linear algebra on int-encoded bit vectors (bit i = coord i)."""

from __future__ import annotations


def echelon(rows: list[int]) -> list[int]:
    """Reduced row echelon form; rows returned sorted by leading bit, descending.

    The output is a canonical basis of the row span, so two spans are equal
    iff their echelon lists are equal.
    """
    basis: dict[int, int] = {}  # leading bit -> row
    for r in rows:
        while r:
            lead = r.bit_length() - 1
            if lead in basis:
                r ^= basis[lead]
            else:
                basis[lead] = r
                break
    for lead in sorted(basis):  # ascending: lower pivots are final first
        row = basis[lead]
        for l2 in basis:
            if l2 > lead and (basis[l2] >> lead) & 1:
                basis[l2] ^= row
    return [basis[lead] for lead in sorted(basis, reverse=True)]


def reduce_vector(v: int, basis: list[int]) -> int:
    """Reduce v against rows with pairwise distinct leading bits."""
    for b in basis:
        if (v >> (b.bit_length() - 1)) & 1:
            v ^= b
    return v


def in_span(v: int, basis: list[int]) -> bool:
    return reduce_vector(v, basis) == 0


def kernel_from_images(images: list[int]) -> list[int]:
    """Kernel basis of the GF(2)-linear map e_i -> images[i].

    Returned ints are coordinate masks: bit i set means e_i participates.
    The output is echelonized, hence deterministic for a given image list.
    """
    pivots: list[tuple[int, int]] = []  # (reduced image, combination mask)
    kernel: list[int] = []
    for i, img in enumerate(images):
        marker = 1 << i
        for pimg, pmark in pivots:
            if (img >> (pimg.bit_length() - 1)) & 1:
                img ^= pimg
                marker ^= pmark
        if img:
            pivots.append((img, marker))
            pivots.sort(key=lambda t: t[0], reverse=True)
        else:
            kernel.append(marker)
    return echelon(kernel)


def span_equal(rows_a: list[int], rows_b: list[int]) -> bool:
    return echelon(list(rows_a)) == echelon(list(rows_b))
