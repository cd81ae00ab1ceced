"""Assembly of boundary-matrix slices from generator enumerations.

The truncation policy keeps slices honest: the outgoing differential is
taken on the full length-capped basis at degree n (its image may leave
the window; that only adds rows), while the incoming differential is
restricted to generators of length <= cap - 1 at degree n + 1 so that
their images provably stay inside the degree-n basis.  The composite is
then the genuine differential squared, so im lies in ker exactly.
"""

from __future__ import annotations

from typing import Callable, Hashable, List, Optional, Sequence

from .formal import FormalSum
from .linalg import (CoefficientRing, HomologyResult, SparseMatrix,
                     homology_of_slice)


class SliceError(Exception):
    pass


def matrix_from_images(columns: Sequence[Hashable],
                       images: Sequence[FormalSum],
                       row_index: Optional[dict] = None,
                       strict_rows: bool = False):
    """Sparse matrix whose j-th column is the image of the j-th generator.

    When row_index is given, every term must hit it (strict_rows) or the
    rows are extended... rows outside a provided index are an error; with
    no index the rows are collected and sorted for determinism.
    """
    if row_index is None:
        rows = sorted({g for img in images for g in img.coeffs})
        row_index = {g: i for i, g in enumerate(rows)}
    m = SparseMatrix(len(row_index), len(columns))
    for j, img in enumerate(images):
        for g, c in img.items():
            i = row_index.get(g)
            if i is None:
                raise SliceError(f"image term {g!r} outside expected basis")
            m.entries[i, j] = c
    return m, row_index


def window_homology(enum: Callable[[int, Optional[int]], List[Hashable]],
                    diff: Callable[[Hashable], FormalSum],
                    degrees: Sequence[int],
                    ring: CoefficientRing,
                    max_length: Optional[int] = None,
                    complete: bool = False,
                    exact_at: Optional[Callable[[int, Optional[int]], bool]] = None,
                    length_increase: int = 1) -> HomologyResult:
    """Per-degree homology ker/im of a generator-level differential.

    enum(degree, length_cap) must return a deterministic basis list;
    with complete=True the caps are ignored by the enumerator and every
    degree is exact.  length_increase is the largest amount the
    differential can grow a generator's length by (0 makes the length
    cap a genuine subcomplex and the incoming basis keeps the full cap).
    """
    result = HomologyResult(ring=ring)
    for n in degrees:
        cap_n = None if complete else max_length
        cap_in = None if complete else (
            max(max_length - length_increase, 0) if max_length else 0)
        basis_n = enum(n, cap_n)
        basis_in = enum(n + 1, cap_in) if (complete or cap_in) else []
        idx_n = {g: i for i, g in enumerate(basis_n)}
        images_out = [diff(g) for g in basis_n]
        d_out, _ = matrix_from_images(basis_n, images_out)
        images_in = [diff(g) for g in basis_in]
        d_in = SparseMatrix(len(basis_n), len(basis_in))
        for j, img in enumerate(images_in):
            for g, c in img.items():
                i = idx_n.get(g)
                if i is None:
                    raise SliceError(
                        f"incoming image {g!r} escapes the degree-{n} basis")
                d_in.entries[i, j] = c
        exact = complete or (exact_at(n, cap_n) if exact_at else False)
        result.degrees[n] = homology_of_slice(d_in, d_out, ring, exact=exact)
    return result
