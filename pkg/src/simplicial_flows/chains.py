"""Exact-rational chain complex algebra.

Everything here works over :class:`fractions.Fraction`; nothing is ever
rounded.  Simplices are strictly increasing vertex tuples and the
canonical orientation is the increasing vertex order, with an optional
per-top-simplex sign override.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Mapping, Sequence

__all__ = [
    "ComplexError",
    "SparseMatrix",
    "Chain",
    "Cochain",
    "SimplicialComplex",
    "ChainComplexData",
    "oriented_simplex",
    "boundary_matrix",
    "apply_boundary",
    "apply_coboundary",
    "inner_product",
    "rref",
    "rank",
    "solve_linear",
    "kernel_basis",
    "smith_normal_form",
    "relative_boundary_matrix",
    "is_null_homologous",
]


class ComplexError(ValueError):
    """Structural problem with a complex, chain or matrix."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError(f"floating point value {x!r} not accepted; use Fraction or str")
    return Fraction(x)


# ---------------------------------------------------------------------------
# Sparse matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SparseMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, int, Fraction], ...] = ()

    def __post_init__(self):
        seen = set()
        clean = []
        for i, j, v in self.entries:
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise ComplexError(f"entry ({i}, {j}) outside a {self.rows}x{self.cols} matrix")
            if (i, j) in seen:
                raise ComplexError(f"duplicate entry at ({i}, {j})")
            seen.add((i, j))
            v = _frac(v)
            if v:
                clean.append((i, j, v))
        clean.sort()
        object.__setattr__(self, "entries", tuple(clean))

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence], cols: int | None = None) -> "SparseMatrix":
        rows = len(dense)
        if cols is None:
            cols = len(dense[0]) if rows else 0
        entries = []
        for i, row in enumerate(dense):
            if len(row) != cols:
                raise ComplexError("ragged dense matrix")
            for j, v in enumerate(row):
                if v:
                    entries.append((i, j, _frac(v)))
        return cls(rows, cols, tuple(entries))

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Mapping[int, Fraction]]) -> "SparseMatrix":
        entries = [(i, j, v) for j, col in enumerate(columns) for i, v in col.items() if v]
        return cls(rows, len(columns), tuple(entries))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for i, j, v in self.entries:
            out[i][j] = v
        return out

    def column(self, j: int) -> dict[int, Fraction]:
        return {i: v for i, jj, v in self.entries if jj == j}

    def columns(self) -> list[dict[int, Fraction]]:
        cols: list[dict[int, Fraction]] = [{} for _ in range(self.cols)]
        for i, j, v in self.entries:
            cols[j][i] = v
        return cols

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, tuple((j, i, v) for i, j, v in self.entries))

    def matvec(self, x: Sequence) -> list[Fraction]:
        if len(x) != self.cols:
            raise ComplexError(f"vector of length {len(x)} does not match {self.cols} columns")
        out = [Fraction(0)] * self.rows
        for i, j, v in self.entries:
            if x[j]:
                out[i] += v * x[j]
        return out

    def rmatvec(self, y: Sequence) -> list[Fraction]:
        """Return ``A^T y``."""
        if len(y) != self.rows:
            raise ComplexError(f"vector of length {len(y)} does not match {self.rows} rows")
        out = [Fraction(0)] * self.cols
        for i, j, v in self.entries:
            if y[i]:
                out[j] += v * y[i]
        return out

    def matmul(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ComplexError(f"cannot multiply {self.shape} by {other.shape}")
        by_row: dict[int, list[tuple[int, Fraction]]] = {}
        for k, j, v in other.entries:
            by_row.setdefault(k, []).append((j, v))
        acc: dict[tuple[int, int], Fraction] = {}
        for i, k, v in self.entries:
            for j, w in by_row.get(k, ()):
                acc[(i, j)] = acc.get((i, j), Fraction(0)) + v * w
        return SparseMatrix(self.rows, other.cols, tuple((i, j, v) for (i, j), v in acc.items()))

    def select(self, rows: Sequence[int] | None = None, cols: Sequence[int] | None = None) -> "SparseMatrix":
        """Submatrix keeping ``rows`` and ``cols`` in the order given."""
        rmap = {r: a for a, r in enumerate(rows)} if rows is not None else None
        cmap = {c: b for b, c in enumerate(cols)} if cols is not None else None
        entries = []
        for i, j, v in self.entries:
            if rmap is not None and i not in rmap:
                continue
            if cmap is not None and j not in cmap:
                continue
            a = rmap[i] if rmap is not None else i
            b = cmap[j] if cmap is not None else j
            entries.append((a, b, v))
        return SparseMatrix(
            len(rows) if rows is not None else self.rows,
            len(cols) if cols is not None else self.cols,
            tuple(entries),
        )

    def hstack(self, column: Sequence) -> "SparseMatrix":
        """Append one dense column."""
        if len(column) != self.rows:
            raise ComplexError("column length mismatch")
        extra = tuple((i, self.cols, _frac(v)) for i, v in enumerate(column) if v)
        return SparseMatrix(self.rows, self.cols + 1, self.entries + extra)

    def is_zero(self) -> bool:
        return not self.entries

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for _, _, v in self.entries)


# ---------------------------------------------------------------------------
# Chains and cochains
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Vector:
    dimension: int
    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        if self.dimension < 0:
            raise ComplexError("negative dimension")
        object.__setattr__(self, "coefficients", tuple(_frac(c) for c in self.coefficients))

    @classmethod
    def zero(cls, dimension: int, size: int):
        return cls(dimension, (Fraction(0),) * size)

    @classmethod
    def unit(cls, dimension: int, size: int, index: int, value=1):
        c = [Fraction(0)] * size
        c[index] = _frac(value)
        return cls(dimension, tuple(c))

    @classmethod
    def from_dict(cls, dimension: int, size: int, coeffs: Mapping[int, object]):
        c = [Fraction(0)] * size
        for i, v in coeffs.items():
            c[i] += _frac(v)
        return cls(dimension, tuple(c))

    def __len__(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, i):
        return self.coefficients[i]

    def __iter__(self):
        return iter(self.coefficients)

    def _check(self, other):
        if type(other) is not type(self) or other.dimension != self.dimension or len(other) != len(self):
            raise ComplexError("incompatible operands")

    def __add__(self, other):
        self._check(other)
        return type(self)(self.dimension, tuple(a + b for a, b in zip(self, other)))

    def __sub__(self, other):
        self._check(other)
        return type(self)(self.dimension, tuple(a - b for a, b in zip(self, other)))

    def __neg__(self):
        return type(self)(self.dimension, tuple(-a for a in self))

    def __mul__(self, scalar):
        s = _frac(scalar)
        return type(self)(self.dimension, tuple(s * a for a in self))

    __rmul__ = __mul__

    def support(self) -> frozenset[int]:
        return frozenset(i for i, a in enumerate(self.coefficients) if a)

    def is_zero(self) -> bool:
        return not any(self.coefficients)


class Chain(_Vector):
    """A formal rational combination of ``dimension``-simplices."""


class Cochain(_Vector):
    """A rational functional on ``dimension``-chains, stored by its values on the basis."""


def inner_product(a: _Vector, b: _Vector) -> Fraction:
    if a.dimension != b.dimension or len(a) != len(b):
        raise ComplexError(
            f"length/dimension mismatch: ({a.dimension}, {len(a)}) vs ({b.dimension}, {len(b)})"
        )
    return sum((x * y for x, y in zip(a, b) if x and y), Fraction(0))


# ---------------------------------------------------------------------------
# Simplicial complexes
# ---------------------------------------------------------------------------


def oriented_simplex(vertices: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """Sort an ordered simplex, returning the sorted tuple and the permutation sign."""
    v = list(vertices)
    if len(set(v)) != len(v):
        raise ComplexError(f"repeated vertex in {tuple(vertices)}")
    sign = 1
    for i in range(len(v)):
        for j in range(i + 1, len(v)):
            if v[i] > v[j]:
                sign = -sign
    return tuple(sorted(v)), sign


@dataclass(frozen=True)
class SimplicialComplex:
    """Vertex-indexed simplices, one ordered list per dimension.

    ``orientation`` maps indices of top-dimensional simplices to -1 where
    the canonical (increasing) orientation is reversed.
    """

    n_vertices: int
    simplices: tuple[tuple[tuple[int, ...], ...], ...]
    orientation: Mapping[int, int] = field(default_factory=dict)
    vertex_labels: tuple[str, ...] | None = None

    def __post_init__(self):
        simplices = tuple(tuple(tuple(s) for s in dim) for dim in self.simplices)
        object.__setattr__(self, "simplices", simplices)
        object.__setattr__(self, "orientation", {int(k): int(v) for k, v in dict(self.orientation).items() if int(v) != 1})
        if self.vertex_labels is not None:
            labels = tuple(str(x) for x in self.vertex_labels)
            if len(labels) != self.n_vertices:
                raise ComplexError("one label per vertex required")
            object.__setattr__(self, "vertex_labels", labels)
        self._validate()

    def _validate(self):
        if not self.simplices:
            raise ComplexError("empty complex")
        for k, dim in enumerate(self.simplices):
            if len(set(dim)) != len(dim):
                raise ComplexError(f"duplicate {k}-simplex")
            for s in dim:
                if len(s) != k + 1:
                    raise ComplexError(f"{s} listed as a {k}-simplex")
                if any(a >= b for a, b in zip(s, s[1:])):
                    raise ComplexError(f"vertex tuple {s} is not strictly increasing")
                if any(not 0 <= v < self.n_vertices for v in s):
                    raise ComplexError(f"{s} uses a vertex outside 0..{self.n_vertices - 1}")
        for k in range(1, len(self.simplices)):
            lower = set(self.simplices[k - 1])
            for s in self.simplices[k]:
                for face in combinations(s, k):
                    if face not in lower:
                        raise ComplexError(f"complex is not closed: face {face} of {s} is missing")
        top = len(self.simplices[-1])
        for idx, sign in self.orientation.items():
            if not 0 <= idx < top or sign not in (-1, 1):
                raise ComplexError(f"bad orientation override {idx}: {sign}")

    @classmethod
    def from_simplices(
        cls,
        top: Iterable[Sequence[int]],
        n_vertices: int | None = None,
        vertex_labels: Sequence[str] | None = None,
    ) -> "SimplicialComplex":
        """Build the downward closure of ``top``.

        Each entry of ``top`` is an *ordered* simplex; its orientation relative
        to the sorted vertex order becomes an override.  Top simplices keep the
        order given, lower faces are sorted.
        """
        ordered = [tuple(s) for s in top]
        if not ordered:
            raise ComplexError("no simplices given")
        d = len(ordered[0]) - 1
        if any(len(s) != d + 1 for s in ordered):
            raise ComplexError("all top simplices must have the same dimension")
        sorted_top = []
        orientation = {}
        for idx, s in enumerate(ordered):
            key, sign = oriented_simplex(s)
            sorted_top.append(key)
            if sign < 0:
                orientation[idx] = -1
        if n_vertices is None:
            n_vertices = max(max(s) for s in sorted_top) + 1
        levels: list[list[tuple[int, ...]]] = [[] for _ in range(d + 1)]
        levels[d] = sorted_top
        for k in range(d - 1, -1, -1):
            faces = {f for s in levels[k + 1] for f in combinations(s, k + 1)}
            levels[k] = sorted(faces)
        if d >= 1:
            present = set(levels[0])
            levels[0] = sorted(present | {(v,) for v in range(n_vertices)})
        return cls(n_vertices, tuple(tuple(x) for x in levels), orientation, tuple(vertex_labels) if vertex_labels else None)

    @property
    def dimension(self) -> int:
        return len(self.simplices) - 1

    def index(self, simplex: Sequence[int]) -> int:
        key = tuple(sorted(simplex))
        try:
            return self.simplices[len(key) - 1].index(key)
        except (ValueError, IndexError):
            raise ComplexError(f"{tuple(simplex)} is not a simplex of the complex") from None

    def label(self, simplex: Sequence[int]) -> str:
        if self.vertex_labels is None:
            return ",".join(str(v) for v in simplex)
        return ",".join(self.vertex_labels[v] for v in simplex)

    def to_chain_complex(self) -> "ChainComplexData":
        d = self.dimension
        boundaries = tuple(boundary_matrix(self, k) for k in range(1, d + 1))
        labels = tuple(tuple(self.label(s) for s in dim) for dim in self.simplices)
        return ChainComplexData(tuple(len(x) for x in self.simplices), boundaries, labels)


def boundary_matrix(complex: SimplicialComplex, k: int) -> SparseMatrix:
    """The matrix of the boundary map from ``k``-chains to ``(k-1)``-chains."""
    d = complex.dimension
    if not 1 <= k <= d:
        raise ComplexError(f"boundary dimension {k} outside 1..{d}")
    lower = {s: i for i, s in enumerate(complex.simplices[k - 1])}
    entries = []
    for j, s in enumerate(complex.simplices[k]):
        flip = complex.orientation.get(j, 1) if k == d else 1
        for m in range(k + 1):
            face = s[:m] + s[m + 1:]
            try:
                i = lower[face]
            except KeyError:
                raise ComplexError(f"complex is not closed: face {face} of {s} is missing") from None
            entries.append((i, j, Fraction((-1) ** m * flip)))
    return SparseMatrix(len(complex.simplices[k - 1]), len(complex.simplices[k]), tuple(entries))


@dataclass(frozen=True)
class ChainComplexData:
    """Basis sizes ``n_0..n_d`` and boundary matrices ``boundaries[k-1]`` = ∂_k."""

    dims: tuple[int, ...]
    boundaries: tuple[SparseMatrix, ...]
    labels: tuple[tuple[str, ...], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(n) for n in self.dims))
        if len(self.boundaries) != len(self.dims) - 1:
            raise ComplexError("need exactly one boundary matrix per positive dimension")
        for k, b in enumerate(self.boundaries, start=1):
            if b.shape != (self.dims[k - 1], self.dims[k]):
                raise ComplexError(f"boundary {k} has shape {b.shape}, expected {(self.dims[k - 1], self.dims[k])}")
        for k in range(1, len(self.boundaries)):
            if not self.boundaries[k - 1].matmul(self.boundaries[k]).is_zero():
                raise ComplexError(f"boundary {k} composed with boundary {k + 1} is not zero")
        if self.labels is not None:
            labels = tuple(tuple(str(x) for x in dim) for dim in self.labels)
            if tuple(len(x) for x in labels) != self.dims:
                raise ComplexError("label counts do not match basis sizes")
            object.__setattr__(self, "labels", labels)

    @property
    def dimension(self) -> int:
        return len(self.dims) - 1

    def boundary(self, k: int) -> SparseMatrix:
        if not 1 <= k <= self.dimension:
            raise ComplexError(f"no boundary map in dimension {k}")
        return self.boundaries[k - 1]

    @property
    def top_boundary(self) -> SparseMatrix:
        return self.boundary(self.dimension)

    def chain(self, dimension: int, coeffs: Mapping[int, object] | Sequence | None = None) -> Chain:
        n = self.dims[dimension]
        if coeffs is None:
            return Chain.zero(dimension, n)
        if isinstance(coeffs, Mapping):
            return Chain.from_dict(dimension, n, coeffs)
        return Chain(dimension, tuple(coeffs))

    def cochain(self, dimension: int, coeffs: Mapping[int, object] | Sequence | None = None) -> Cochain:
        n = self.dims[dimension]
        if coeffs is None:
            return Cochain.zero(dimension, n)
        if isinstance(coeffs, Mapping):
            return Cochain.from_dict(dimension, n, coeffs)
        return Cochain(dimension, tuple(coeffs))


def apply_boundary(cx: ChainComplexData, c: Chain) -> Chain:
    if c.dimension == 0:
        raise ComplexError("0-chains have no boundary map")
    b = cx.boundary(c.dimension)
    if len(c) != b.cols:
        raise ComplexError(f"chain length {len(c)} does not match n_{c.dimension} = {b.cols}")
    return Chain(c.dimension - 1, tuple(b.matvec(c.coefficients)))


def apply_coboundary(cx: ChainComplexData, p: Cochain) -> Cochain:
    if p.dimension >= cx.dimension:
        raise ComplexError(f"no coboundary out of dimension {p.dimension}")
    b = cx.boundary(p.dimension + 1)
    if len(p) != b.rows:
        raise ComplexError(f"cochain length {len(p)} does not match n_{p.dimension} = {b.rows}")
    return Cochain(p.dimension + 1, tuple(b.rmatvec(p.coefficients)))


# ---------------------------------------------------------------------------
# Exact elimination
# ---------------------------------------------------------------------------


def _dense(A) -> list[list[Fraction]]:
    if isinstance(A, SparseMatrix):
        return A.to_dense()
    return [[_frac(v) for v in row] for row in A]


def rref(A, ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns.

    Columns are scanned left to right; the pivot of each column is the
    lowest-indexed remaining row with a nonzero entry.  ``ncols`` limits
    pivoting to the first ``ncols`` columns (used for augmented systems).
    """
    M = _dense(A)
    if not M:
        return M, []
    width = len(M[0])
    limit = width if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(limit):
        if r == len(M):
            break
        p = next((i for i in range(r, len(M)) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        prow = M[r]
        nz = [j for j in range(c, width) if prow[j]]
        for j in nz:
            prow[j] *= inv
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                row = M[i]
                for j in nz:
                    row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
    return M, pivots


def rank(A) -> int:
    return len(rref(A)[1])


def _shape(A) -> tuple[int, int]:
    if isinstance(A, SparseMatrix):
        return A.shape
    return (len(A), len(A[0]) if A else 0)


def solve_linear(A, b: Sequence) -> list[Fraction] | None:
    """Some exact solution of ``A x = b``, or ``None`` if the system is inconsistent.

    Free variables are set to zero.
    """
    m, n = _shape(A)
    if len(b) != m:
        raise ComplexError(f"right-hand side has length {len(b)}, matrix has {m} rows")
    M = _dense(A)
    aug = [row + [_frac(v)] for row, v in zip(M, b)]
    R, pivots = rref(aug, ncols=n)
    for i in range(len(pivots), len(R)):
        if R[i][n]:
            return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = R[i][n]
    return x


def kernel_basis(A) -> list[list[Fraction]]:
    """Exact basis of the null space, one vector per free column."""
    m, n = _shape(A)
    if m == 0:
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    R, pivots = rref(A)
    pivot_set = set(pivots)
    basis = []
    for f in range(n):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            if R[i][f]:
                v[c] = -R[i][f]
        basis.append(v)
    return basis


def smith_normal_form(A) -> list[int]:
    """Nonzero invariant factors ``d_1 | d_2 | ...`` of an integer matrix."""
    rows = _dense(A)
    if any(v.denominator != 1 for row in rows for v in row):
        raise ComplexError("Smith normal form needs an integer matrix")
    M = [[int(v) for v in row] for row in rows]
    m = len(M)
    n = len(M[0]) if m else 0
    factors = []
    t = 0
    while t < min(m, n):
        nonzero = [(abs(M[i][j]), i, j) for i in range(t, m) for j in range(t, n) if M[i][j]]
        if not nonzero:
            break
        _, pi, pj = min(nonzero)
        M[t], M[pi] = M[pi], M[t]
        for row in M:
            row[t], row[pj] = row[pj], row[t]
        while True:
            p = M[t][t]
            dirty = False
            for i in range(t + 1, m):
                if M[i][t]:
                    q = M[i][t] // p
                    for j in range(t, n):
                        M[i][j] -= q * M[t][j]
                    if M[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if M[t][j]:
                    q = M[t][j] // p
                    for i in range(t, m):
                        M[i][j] -= q * M[i][t]
                    if M[t][j]:
                        dirty = True
            if dirty:
                # a smaller remainder now exists in row/column t; move it to the corner
                _, pi, pj = min(
                    [(abs(M[i][t]), i, t) for i in range(t, m) if M[i][t]]
                    + [(abs(M[t][j]), t, j) for j in range(t, n) if M[t][j]]
                )
                M[t], M[pi] = M[pi], M[t]
                for row in M:
                    row[t], row[pj] = row[pj], row[t]
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if M[i][j] % p),
                None,
            )
            if bad is None:
                break
            i = bad[0]
            for j in range(t, n):
                M[t][j] += M[i][j]
        factors.append(abs(M[t][t]))
        t += 1
    # the pivoting above already yields divisibility; normalise defensively
    for i in range(len(factors)):
        for j in range(i + 1, len(factors)):
            a, b = factors[i], factors[j]
            g = gcd(a, b)
            factors[i], factors[j] = g, a * b // g
    return factors


def relative_boundary_matrix(
    cx: ChainComplexData,
    k: int,
    columns: Iterable[int] | None = None,
    excluded_rows: Iterable[int] = (),
) -> SparseMatrix:
    """∂_k restricted to ``columns`` with the rows in ``excluded_rows`` deleted."""
    b = cx.boundary(k)
    cols = sorted(set(columns)) if columns is not None else list(range(b.cols))
    drop = set(excluded_rows)
    rows = [i for i in range(b.rows) if i not in drop]
    return b.select(rows, cols)


def is_null_homologous(
    cx: ChainComplexData,
    z: Chain,
    restrict_to: Iterable[int] | None = None,
) -> bool:
    """Whether ``z`` bounds a top-dimensional chain supported on ``restrict_to``."""
    d = cx.dimension
    if z.dimension != d - 1 or len(z) != cx.dims[d - 1]:
        raise ComplexError(f"expected a {d - 1}-chain of length {cx.dims[d - 1]}")
    if d - 1 >= 1 and not apply_boundary(cx, z).is_zero():
        raise ComplexError("not a cycle")
    if z.is_zero():
        return True
    cols = sorted(set(restrict_to)) if restrict_to is not None else list(range(cx.dims[d]))
    if not cols:
        return False
    A = cx.top_boundary.select(None, cols)
    return solve_linear(A, z.coefficients) is not None
