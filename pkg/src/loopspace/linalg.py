"""Exact sparse linear algebra over Z, Q and prime fields.

All matrices carry arbitrary-precision integer entries.  Ranks over Q are
computed by integer-preserving elimination (no floating point anywhere),
ranks over F_p by modular elimination, and homology over Z through Smith
normal form with minimal-absolute-value pivoting to limit coefficient
growth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple


class ExactLinalgError(Exception):
    pass


class CompositionNonzeroError(ExactLinalgError):
    """d_out . d_in != 0; signals a sign-convention bug upstream."""


# ---------------------------------------------------------------------------
# coefficient rings


@dataclass(frozen=True)
class CoefficientRing:
    """One of Z, Q, or F_p.  Tag object; arithmetic stays on ints."""

    kind: str  # "Z" | "Q" | "Fp"
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "Fp"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "Fp":
            if self.p is None or self.p < 2 or not _is_prime(self.p):
                raise ValueError(f"prime field needs a prime, got {self.p!r}")
        elif self.p is not None:
            raise ValueError("p only makes sense for prime fields")

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"

    def describe(self) -> str:
        return {"Z": "Z", "Q": "Q"}.get(self.kind, f"F{self.p}")


ZZ = CoefficientRing("Z")
QQ = CoefficientRing("Q")


def prime_field(p: int) -> CoefficientRing:
    return CoefficientRing("Fp", p)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# sparse matrices


class SparseMatrix:
    """Sparse integer matrix; entries maps (row, col) -> nonzero int."""

    __slots__ = ("nrows", "ncols", "entries")

    def __init__(self, nrows: int, ncols: int,
                 entries: Optional[Dict[Tuple[int, int], int]] = None):
        if nrows < 0 or ncols < 0:
            raise ValueError("negative dimensions")
        self.nrows = nrows
        self.ncols = ncols
        self.entries: Dict[Tuple[int, int], int] = {}
        if entries:
            for (i, j), v in entries.items():
                self[i, j] = v

    def __setitem__(self, key: Tuple[int, int], value: int):
        i, j = key
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(f"entry {key} out of bounds for {self.shape}")
        if value:
            self.entries[i, j] = value
        else:
            self.entries.pop((i, j), None)

    def __getitem__(self, key: Tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "SparseMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        m = cls(nrows, ncols)
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                if v:
                    m.entries[i, j] = v
        return m

    def to_rows(self) -> List[List[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def copy(self) -> "SparseMatrix":
        m = SparseMatrix(self.nrows, self.ncols)
        m.entries = dict(self.entries)
        return m

    def transpose(self) -> "SparseMatrix":
        m = SparseMatrix(self.ncols, self.nrows)
        m.entries = {(j, i): v for (i, j), v in self.entries.items()}
        return m

    def matmul(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        by_row: Dict[int, Dict[int, int]] = {}
        for (i, k), v in self.entries.items():
            by_row.setdefault(i, {})[k] = v
        other_rows: Dict[int, Dict[int, int]] = {}
        for (k, j), w in other.entries.items():
            other_rows.setdefault(k, {})[j] = w
        out = SparseMatrix(self.nrows, other.ncols)
        for i, row in by_row.items():
            acc: Dict[int, int] = {}
            for k, v in row.items():
                o = other_rows.get(k)
                if not o:
                    continue
                for j, w in o.items():
                    acc[j] = acc.get(j, 0) + v * w
            for j, s in acc.items():
                if s:
                    out.entries[i, j] = s
        return out

    def is_zero(self) -> bool:
        return not self.entries

    def column(self, j: int) -> Dict[int, int]:
        return {i: v for (i, jj), v in self.entries.items() if jj == j}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __repr__(self) -> str:
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={len(self.entries)})"


# ---------------------------------------------------------------------------
# rank by exact elimination


def rank(matrix: SparseMatrix, ring: CoefficientRing = QQ) -> int:
    """Matrix rank over the fraction field (Z, Q) or over F_p."""
    if ring.kind == "Fp":
        return _rank_mod_p(matrix, ring.p)  # type: ignore[arg-type]
    return _rank_int(matrix)


def _rows_of(matrix: SparseMatrix) -> List[Dict[int, int]]:
    rows: Dict[int, Dict[int, int]] = {}
    for (i, j), v in matrix.entries.items():
        rows.setdefault(i, {})[j] = v
    return [r for r in rows.values() if r]


def _rank_int(matrix: SparseMatrix) -> int:
    """Integer-preserving sparse Gaussian elimination (rank over Q).

    Rows are rescaled by their gcd after every combination, which keeps
    entries small without changing the row space over Q.
    """
    rows = _rows_of(matrix)
    rnk = 0
    while rows:
        # pivot: sparsest row, then smallest |entry| in it
        rows.sort(key=len)
        pivot_row = rows.pop(0)
        j, a = min(pivot_row.items(), key=lambda t: (abs(t[1]), t[0]))
        rnk += 1
        new_rows = []
        for r in rows:
            b = r.get(j)
            if b is None:
                new_rows.append(r)
                continue
            combined: Dict[int, int] = {}
            for k, v in r.items():
                combined[k] = a * v
            for k, v in pivot_row.items():
                combined[k] = combined.get(k, 0) - b * v
            combined = {k: v for k, v in combined.items() if v}
            if combined:
                g = math.gcd(*combined.values()) if len(combined) > 1 else abs(
                    next(iter(combined.values())))
                if g > 1:
                    combined = {k: v // g for k, v in combined.items()}
                new_rows.append(combined)
        rows = new_rows
    return rnk


def _rank_mod_p(matrix: SparseMatrix, p: int) -> int:
    rows = [{j: v % p for j, v in r.items() if v % p} for r in _rows_of(matrix)]
    rows = [r for r in rows if r]
    rnk = 0
    while rows:
        rows.sort(key=len)
        pivot_row = rows.pop(0)
        j = min(pivot_row)
        a_inv = pow(pivot_row[j], -1, p)
        rnk += 1
        new_rows = []
        for r in rows:
            b = r.get(j)
            if b is None:
                new_rows.append(r)
                continue
            factor = (b * a_inv) % p
            combined = dict(r)
            for k, v in pivot_row.items():
                w = (combined.get(k, 0) - factor * v) % p
                if w:
                    combined[k] = w
                else:
                    combined.pop(k, None)
            if combined:
                new_rows.append(combined)
        rows = new_rows
    return rnk


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass
class SNFResult:
    """U . M . V = diag(factors) with U, V unimodular.

    factors is the full diagonal including trailing zeros trimmed away:
    only the nonzero invariant factors d_1 | d_2 | ... are listed.
    Transform matrices are populated when requested.
    """

    factors: Tuple[int, ...]
    U: Optional[SparseMatrix] = None
    V: Optional[SparseMatrix] = None
    U_inv: Optional[SparseMatrix] = None
    V_inv: Optional[SparseMatrix] = None


def smith_normal_form(matrix: SparseMatrix, transforms: bool = False) -> SNFResult:
    """Diagonalize an integer matrix by unimodular row/column operations.

    Pivots are chosen with minimal absolute value among nonzero entries of
    the working submatrix, which keeps intermediate entries small on the
    sparse boundary matrices this package produces.
    """
    nrows, ncols = matrix.shape
    rows: Dict[int, Dict[int, int]] = {i: {} for i in range(nrows)}
    cols: Dict[int, Dict[int, int]] = {j: {} for j in range(ncols)}
    for (i, j), v in matrix.entries.items():
        rows[i][j] = v
        cols[j][i] = v

    # row ops track U (left), col ops track V (right), plus inverses
    U = _identity_rows(nrows) if transforms else None
    U_inv = _identity_rows(nrows) if transforms else None
    V = _identity_rows(ncols) if transforms else None
    V_inv = _identity_rows(ncols) if transforms else None

    def set_entry(i: int, j: int, v: int):
        if v:
            rows[i][j] = v
            cols[j][i] = v
        else:
            rows[i].pop(j, None)
            cols[j].pop(i, None)

    def row_combine(i_target: int, i_src: int, q: int):
        # row_target -= q * row_src
        if not q:
            return
        for j, v in list(rows[i_src].items()):
            set_entry(i_target, j, rows[i_target].get(j, 0) - q * v)
        if transforms:
            _row_axpy(U, i_target, i_src, -q)
            _col_axpy(U_inv, i_src, i_target, q)

    def col_combine(j_target: int, j_src: int, q: int):
        if not q:
            return
        for i, v in list(cols[j_src].items()):
            set_entry(i, j_target, rows[i].get(j_target, 0) - q * v)
        if transforms:
            _col_axpy(V, j_target, j_src, -q)
            _row_axpy(V_inv, j_src, j_target, q)

    def row_swap(i1: int, i2: int):
        if i1 == i2:
            return
        for j in set(rows[i1]) | set(rows[i2]):
            v1, v2 = rows[i1].get(j, 0), rows[i2].get(j, 0)
            set_entry(i1, j, v2)
            set_entry(i2, j, v1)
        if transforms:
            _swap_rows(U, i1, i2)
            _swap_cols(U_inv, i1, i2)

    def col_swap(j1: int, j2: int):
        if j1 == j2:
            return
        for i in set(cols[j1]) | set(cols[j2]):
            v1, v2 = cols[j1].get(i, 0), cols[j2].get(i, 0)
            set_entry(i, j1, v2)
            set_entry(i, j2, v1)
        if transforms:
            _swap_cols(V, j1, j2)
            _swap_rows(V_inv, j1, j2)

    def row_negate(i: int):
        for j in list(rows[i]):
            set_entry(i, j, -rows[i][j])
        if transforms:
            _negate_row(U, i)
            _negate_col(U_inv, i)

    t = 0
    limit = min(nrows, ncols)
    while t < limit:
        pivot = None
        best = None
        for i in range(t, nrows):
            for j, v in rows[i].items():
                if j < t:
                    continue
                a = abs(v)
                if best is None or a < best:
                    best = a
                    pivot = (i, j)
                    if a == 1:
                        break
            if best == 1:
                break
        if pivot is None:
            break
        row_swap(t, pivot[0])
        col_swap(t, pivot[1])
        # clear row and column t
        while True:
            a = rows[t].get(t, 0)
            assert a
            dirty = False
            for i in list(cols[t]):
                if i == t:
                    continue
                q = rows[i][t] // a
                row_combine(i, t, q)
                if rows[i].get(t):
                    # remainder smaller than |a|: make it the new pivot
                    row_swap(t, i)
                    dirty = True
                    break
            if dirty:
                continue
            for j in list(rows[t]):
                if j == t:
                    continue
                q = rows[t][j] // a
                col_combine(j, t, q)
                if rows[t].get(j):
                    col_swap(t, j)
                    dirty = True
                    break
            if not dirty:
                break
        if rows[t][t] < 0:
            row_negate(t)
        t += 1

    diag = [rows[i].get(i, 0) for i in range(limit)]
    # enforce the divisibility chain d_i | d_{i+1}
    r = sum(1 for d in diag if d)
    # move zeros to the end (they already are, by construction)
    changed = True
    while changed:
        changed = False
        for i in range(r - 1):
            a, b = diag[i], diag[i + 1]
            if b % a == 0:
                continue
            changed = True
            # standard gcd trick: col_{i} += col_{i+1}, rediagonalize 2x2 block
            # [[a,0],[0,b]] -> [[g,0],[0,a*b/g]]
            g = math.gcd(a, b)
            lcm = a * b // g
            if transforms:
                # find x,y with x*a + y*b = g; then
                # U' = [[x, y], [-b/g, a/g]], V' = [[1, -(y*b)/g], [1, (x*a)/g]]
                x, y = _bezout(a, b)
                _apply_2x2_left(U, U_inv, i, i + 1, x, y, -b // g, a // g)
                _apply_2x2_right(V, V_inv, i, i + 1, 1, -(y * b) // g, 1,
                                 (x * a) // g)
            diag[i], diag[i + 1] = g, lcm
    factors = tuple(d for d in diag if d)
    res = SNFResult(factors=factors)
    if transforms:
        res.U = _rows_to_matrix(U, nrows)
        res.U_inv = _rows_to_matrix(U_inv, nrows)
        res.V = _rows_to_matrix(V, ncols)
        res.V_inv = _rows_to_matrix(V_inv, ncols)
    return res


def _bezout(a: int, b: int) -> Tuple[int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_s, old_t


# transform bookkeeping on dict-of-dict rows


def _identity_rows(n: int) -> List[Dict[int, int]]:
    return [{i: 1} for i in range(n)]


def _row_axpy(rows: List[Dict[int, int]], target: int, src: int, q: int):
    for j, v in list(rows[src].items()):
        w = rows[target].get(j, 0) + q * v
        if w:
            rows[target][j] = w
        else:
            rows[target].pop(j, None)


def _col_axpy(rows: List[Dict[int, int]], target: int, src: int, q: int):
    # column op expressed on row-major storage: col_target += q * col_src
    for i in range(len(rows)):
        v = rows[i].get(src)
        if v is None:
            continue
        w = rows[i].get(target, 0) + q * v
        if w:
            rows[i][target] = w
        else:
            rows[i].pop(target, None)


def _swap_rows(rows: List[Dict[int, int]], i1: int, i2: int):
    rows[i1], rows[i2] = rows[i2], rows[i1]


def _swap_cols(rows: List[Dict[int, int]], j1: int, j2: int):
    for r in rows:
        v1, v2 = r.get(j1), r.get(j2)
        if v1 is None and v2 is None:
            continue
        if v2 is None:
            r[j2] = r.pop(j1)
        elif v1 is None:
            r[j1] = r.pop(j2)
        else:
            r[j1], r[j2] = v2, v1


def _negate_row(rows: List[Dict[int, int]], i: int):
    rows[i] = {j: -v for j, v in rows[i].items()}


def _negate_col(rows: List[Dict[int, int]], j: int):
    for r in rows:
        if j in r:
            r[j] = -r[j]


def _apply_2x2_left(U, U_inv, i, k, a, b, c, d):
    # rows i,k of U <- [[a,b],[c,d]] . rows; columns of U_inv <- inverse op
    row_i = dict(U[i])
    row_k = dict(U[k])
    U[i] = _combine(row_i, a, row_k, b)
    U[k] = _combine(row_i, c, row_k, d)
    # inverse of [[a,b],[c,d]] with det 1 is [[d,-b],[-c,a]], applied to cols
    det = a * d - b * c
    assert det in (1, -1)
    ai, bi, ci, di = d * det, -b * det, -c * det, a * det
    for r in U_inv:
        vi, vk = r.get(i, 0), r.get(k, 0)
        wi = vi * ai + vk * ci
        wk = vi * bi + vk * di
        for col, w in ((i, wi), (k, wk)):
            if w:
                r[col] = w
            else:
                r.pop(col, None)


def _apply_2x2_right(V, V_inv, j, k, a, b, c, d):
    # columns j,k of V <- cols . [[a,b],[c,d]]
    det = a * d - b * c
    assert det in (1, -1)
    for r in V:
        vj, vk = r.get(j, 0), r.get(k, 0)
        wj = vj * a + vk * c
        wk = vj * b + vk * d
        for col, w in ((j, wj), (k, wk)):
            if w:
                r[col] = w
            else:
                r.pop(col, None)
    ai, bi, ci, di = d * det, -b * det, -c * det, a * det
    row_j = dict(V_inv[j])
    row_k = dict(V_inv[k])
    V_inv[j] = _combine(row_j, ai, row_k, bi)
    V_inv[k] = _combine(row_j, ci, row_k, di)


def _combine(r1: Dict[int, int], c1: int, r2: Dict[int, int], c2: int) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for j, v in r1.items():
        out[j] = c1 * v
    for j, v in r2.items():
        w = out.get(j, 0) + c2 * v
        if w:
            out[j] = w
        else:
            out.pop(j, None)
    return {j: v for j, v in out.items() if v}


def _rows_to_matrix(rows: List[Dict[int, int]], n: int) -> SparseMatrix:
    m = SparseMatrix(n, n)
    for i, r in enumerate(rows):
        for j, v in r.items():
            if v:
                m.entries[i, j] = v
    return m


# ---------------------------------------------------------------------------
# homology of a two-step slice


@dataclass(frozen=True)
class DegreeHomology:
    free_rank: int
    torsion: Tuple[int, ...] = ()
    exact: bool = True

    def as_dict(self) -> Dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion),
                "exact": self.exact}


@dataclass
class HomologyResult:
    """Per-degree free rank plus torsion invariant factors."""

    ring: CoefficientRing
    degrees: Dict[int, DegreeHomology] = field(default_factory=dict)

    def as_dict(self) -> Dict:
        return {str(n): self.degrees[n].as_dict() for n in sorted(self.degrees)}

    def __getitem__(self, n: int) -> DegreeHomology:
        return self.degrees[n]


def homology_of_slice(d_in: SparseMatrix, d_out: SparseMatrix,
                      ring: CoefficientRing, exact: bool = True) -> DegreeHomology:
    """ker(d_out) / im(d_in) for one degree.

    d_in's columns and d_out's columns both index the degree-n basis, so
    d_in.nrows == d_out.ncols is required, and d_out . d_in must vanish.
    """
    n = d_out.ncols
    if d_in.nrows != n:
        raise ExactLinalgError(
            f"shape mismatch: d_in has {d_in.nrows} rows, d_out {n} cols")
    if not d_out.matmul(d_in).is_zero():
        raise CompositionNonzeroError("d_out . d_in != 0")
    if ring.is_field:
        free = (n - rank(d_out, ring)) - rank(d_in, ring)
        return DegreeHomology(free_rank=free, torsion=(), exact=exact)
    # integral case via SNF
    snf_out = smith_normal_form(d_out, transforms=True)
    r = len(snf_out.factors)
    k = n - r
    if k == 0:
        return DegreeHomology(free_rank=0, torsion=(), exact=exact)
    # kernel basis: columns r..n-1 of V; coordinates of d_in in that basis
    coords = snf_out.V_inv.matmul(d_in)
    reduced = SparseMatrix(k, d_in.ncols)
    for (i, j), v in coords.entries.items():
        if i < r:
            # im(d_in) must lie in ker(d_out); nonzero coefficient along a
            # non-kernel direction contradicts d_out . d_in = 0
            raise CompositionNonzeroError("image not contained in kernel")
        reduced.entries[i - r, j] = v
    snf_in = smith_normal_form(reduced)
    torsion = tuple(d for d in snf_in.factors if d > 1)
    free = k - len(snf_in.factors)
    return DegreeHomology(free_rank=free, torsion=torsion, exact=exact)
