"""Dense matrices over GF(p^e) with exact arithmetic.

Two row layouts share one interface: over GF(2) a row is a Python int used
as a bitset (bit j = column j), so row operations are single big-int XORs;
over every other field a row is a list of element encodings.  Raw rows in
either layout flow through the spinning and homomorphism machinery, which
is why several helpers here take or return them directly.

Everything is deterministic: pivot choices scan columns left to right and
reduced row-echelon form is fully reduced, so rref is idempotent and every
derived basis (kernels, subspace sums/intersections) is canonical.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .errors import NoSolutionError
from .field import Field

RawRow = object  # int bitset over GF(2), list[int] otherwise


def _bit_positions(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


class Matrix:
    """Immutable-by-convention dense matrix."""

    __slots__ = ("field", "nrows", "ncols", "_rows", "_q2")

    def __init__(self, field: Field, nrows: int, ncols: int, rows, _raw: bool = True):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self._q2 = field.q == 2
        if _raw:
            self._rows = rows
        else:
            self._rows = [self._pack(r) for r in rows]

    # -- construction ---------------------------------------------------

    def _pack(self, entries) -> RawRow:
        if self._q2:
            x = 0
            for j, v in enumerate(entries):
                if v:
                    x |= 1 << j
            return x
        return [v % 0x10000 for v in entries]

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        if field.q == 2:
            return cls(field, nrows, ncols, [0] * nrows)
        return cls(field, nrows, ncols, [[0] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        if field.q == 2:
            return cls(field, n, n, [1 << i for i in range(n)])
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = 1
        return cls(field, n, n, rows)

    @classmethod
    def from_rows(cls, field: Field, rows: Iterable[Iterable[int]], ncols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            for v in r:
                if not 0 <= v < field.q:
                    raise ValueError(f"entry {v} outside field of order {field.q}")
        return cls(field, len(rows), ncols, rows, _raw=False)

    @classmethod
    def from_raw_rows(cls, field: Field, ncols: int, raws: list) -> "Matrix":
        return cls(field, len(raws), ncols, list(raws))

    # -- access ---------------------------------------------------------

    @property
    def raw_rows(self) -> list:
        return self._rows

    def raw_row(self, i: int) -> RawRow:
        return self._rows[i]

    def entry(self, i: int, j: int) -> int:
        if self._q2:
            return (self._rows[i] >> j) & 1
        return self._rows[i][j]

    def row_list(self, i: int) -> list[int]:
        if self._q2:
            r = self._rows[i]
            return [(r >> j) & 1 for j in range(self.ncols)]
        return list(self._rows[i])

    def rows_as_lists(self) -> list[list[int]]:
        return [self.row_list(i) for i in range(self.nrows)]

    def is_zero(self) -> bool:
        if self._q2:
            return all(r == 0 for r in self._rows)
        return all(all(v == 0 for v in r) for r in self._rows)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self._rows == other._rows
        )

    def __hash__(self):
        raise TypeError("matrices are unhashable")

    def __repr__(self) -> str:
        return f"Matrix({self.field}, {self.nrows}x{self.ncols})"

    # -- arithmetic -----------------------------------------------------

    def add(self, other: "Matrix") -> "Matrix":
        self._shape_check(other, same=True)
        if self._q2:
            rows = [a ^ b for a, b in zip(self._rows, other._rows)]
        else:
            f = self.field
            rows = [[f.add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self._rows, other._rows)]
        return Matrix(self.field, self.nrows, self.ncols, rows)

    def sub(self, other: "Matrix") -> "Matrix":
        if self._q2:
            return self.add(other)
        self._shape_check(other, same=True)
        f = self.field
        rows = [[f.sub(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self._rows, other._rows)]
        return Matrix(self.field, self.nrows, self.ncols, rows)

    def neg(self) -> "Matrix":
        if self._q2:
            return self
        f = self.field
        return Matrix(self.field, self.nrows, self.ncols, [[f.neg(v) for v in r] for r in self._rows])

    def scale(self, c: int) -> "Matrix":
        if self._q2:
            return self if c else Matrix.zeros(self.field, self.nrows, self.ncols)
        f = self.field
        return Matrix(self.field, self.nrows, self.ncols, [[f.mul(c, v) for v in r] for r in self._rows])

    def matmul(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}")
        if self.field != other.field:
            raise ValueError("field mismatch")
        if self._q2:
            brows = other._rows
            rows = []
            for a in self._rows:
                acc = 0
                x = a
                while x:
                    low = x & -x
                    acc ^= brows[low.bit_length() - 1]
                    x ^= low
                rows.append(acc)
            return Matrix(self.field, self.nrows, other.ncols, rows)
        f = self.field
        n = other.ncols
        brows = other._rows
        rows = []
        for a in self._rows:
            acc = [0] * n
            for k, c in enumerate(a):
                if c:
                    b = brows[k]
                    if c == 1:
                        acc = [f.add(x, y) for x, y in zip(acc, b)]
                    else:
                        acc = [f.add(x, f.mul(c, y)) for x, y in zip(acc, b)]
            rows.append(acc)
        return Matrix(self.field, self.nrows, n, rows)

    __matmul__ = matmul

    def apply_row(self, raw: RawRow) -> RawRow:
        """raw (length nrows) times this matrix, as a raw row of length ncols."""
        if self._q2:
            acc = 0
            x = raw
            while x:
                low = x & -x
                acc ^= self._rows[low.bit_length() - 1]
                x ^= low
            return acc
        f = self.field
        acc = [0] * self.ncols
        for k, c in enumerate(raw):
            if c:
                b = self._rows[k]
                if c == 1:
                    acc = [f.add(x, y) for x, y in zip(acc, b)]
                else:
                    acc = [f.add(x, f.mul(c, y)) for x, y in zip(acc, b)]
        return acc

    def transpose(self) -> "Matrix":
        if self._q2:
            cols = [0] * self.ncols
            for i, r in enumerate(self._rows):
                bit = 1 << i
                for j in _bit_positions(r):
                    cols[j] |= bit
            return Matrix(self.field, self.ncols, self.nrows, cols)
        if not self._rows:
            return Matrix(self.field, self.ncols, 0, [[] for _ in range(self.ncols)])
        rows = [list(col) for col in zip(*self._rows)]
        return Matrix(self.field, self.ncols, self.nrows, rows)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows or self.field != other.field:
            raise ValueError("hstack shape/field mismatch")
        if self._q2:
            w = self.ncols
            rows = [a | (b << w) for a, b in zip(self._rows, other._rows)]
        else:
            rows = [a + b for a, b in zip(self._rows, other._rows)]
        return Matrix(self.field, self.nrows, self.ncols + other.ncols, rows)

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.ncols or self.field != other.field:
            raise ValueError("vstack shape/field mismatch")
        return Matrix(self.field, self.nrows + other.nrows, self.ncols, self._rows + other._rows)

    def take_rows(self, idxs: Iterable[int]) -> "Matrix":
        rows = [self._rows[i] for i in idxs]
        return Matrix(self.field, len(rows), self.ncols, rows)

    def take_cols(self, idxs: Iterable[int]) -> "Matrix":
        idxs = list(idxs)
        if self._q2:
            rows = []
            for r in self._rows:
                x = 0
                for out_j, j in enumerate(idxs):
                    if (r >> j) & 1:
                        x |= 1 << out_j
                rows.append(x)
        else:
            rows = [[r[j] for j in idxs] for r in self._rows]
        return Matrix(self.field, self.nrows, len(idxs), rows)

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product; block (i, k) scales other by self[i, k]."""
        f = self.field
        nb = other.ncols
        rows = []
        for i in range(self.nrows):
            arow = self._rows[i]
            for j in range(other.nrows):
                if self._q2:
                    acc = 0
                    brow = other._rows[j]
                    for k in _bit_positions(arow):
                        acc |= brow << (k * nb)
                    rows.append(acc)
                else:
                    brow = other._rows[j]
                    out = [0] * (self.ncols * nb)
                    for k, c in enumerate(arow):
                        if c:
                            base = k * nb
                            for m, b in enumerate(brow):
                                if b:
                                    out[base + m] = f.mul(c, b)
                    rows.append(out)
        return Matrix(f, self.nrows * other.nrows, self.ncols * other.ncols, rows)

    def _shape_check(self, other: "Matrix", same: bool = False) -> None:
        if self.field != other.field:
            raise ValueError("field mismatch")
        if same and (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")

    # -- elimination ----------------------------------------------------

    def rref(self) -> tuple["Matrix", int, tuple[int, ...]]:
        """Reduced row-echelon form, rank, and pivot columns."""
        if self._q2:
            piv: dict[int, int] = {}
            for row in self._rows:
                while row:
                    c = (row & -row).bit_length() - 1
                    if c in piv:
                        row ^= piv[c]
                    else:
                        piv[c] = row
                        break
            cols = sorted(piv)
            reduced: dict[int, int] = {}
            for c in reversed(cols):
                row = piv[c]
                x = row ^ (1 << c)
                for c2 in _bit_positions(x):
                    if c2 in reduced:
                        row ^= reduced[c2]
                reduced[c] = row
            rows = [reduced[c] for c in cols]
            rows += [0] * (self.nrows - len(rows))
            return Matrix(self.field, self.nrows, self.ncols, rows), len(cols), tuple(cols)
        f = self.field
        rows = [list(r) for r in self._rows]
        pivots = []
        r = 0
        for c in range(self.ncols):
            sel = None
            for i in range(r, len(rows)):
                if rows[i][c]:
                    sel = i
                    break
            if sel is None:
                continue
            rows[r], rows[sel] = rows[sel], rows[r]
            inv = f.inv(rows[r][c])
            if inv != 1:
                rows[r] = [f.mul(inv, v) for v in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][c]:
                    coef = rows[i][c]
                    rows[i] = [f.sub(a, f.mul(coef, b)) for a, b in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
        return Matrix(self.field, self.nrows, self.ncols, rows), r, tuple(pivots)

    def rank(self) -> int:
        return self.rref()[1]

    def row_space(self) -> "Matrix":
        """Canonical (rref, zero rows dropped) basis of the row space."""
        R, rank, _ = self.rref()
        return R.take_rows(range(rank))

    def kernel_basis(self) -> "Matrix":
        """Rows spanning the right null space: self @ x^T = 0 for each row x."""
        R, rank, pivots = self.rref()
        pivset = set(pivots)
        free = [c for c in range(self.ncols) if c not in pivset]
        f = self.field
        out = []
        for fc in free:
            if self._q2:
                v = 1 << fc
                for r, pc in enumerate(pivots):
                    if (R._rows[r] >> fc) & 1:
                        v |= 1 << pc
                out.append(v)
            else:
                v = [0] * self.ncols
                v[fc] = 1
                for r, pc in enumerate(pivots):
                    v[pc] = f.neg(R._rows[r][fc])
                out.append(v)
        return Matrix(self.field, len(out), self.ncols, out)

    def left_kernel(self) -> "Matrix":
        """Rows v with v @ self = 0, found by eliminating an augmented identity."""
        n = self.ncols
        m = self.nrows
        if self._q2:
            mask = (1 << n) - 1
            piv: dict[int, int] = {}
            kers = []
            for i, row in enumerate(self._rows):
                acc = row | (1 << (n + i))
                while True:
                    main = acc & mask
                    if main == 0:
                        kers.append(acc >> n)
                        break
                    c = (main & -main).bit_length() - 1
                    if c in piv:
                        acc ^= piv[c]
                    else:
                        piv[c] = acc
                        break
            return Matrix(self.field, len(kers), m, kers).row_space()
        f = self.field
        piv_g: dict[int, list[int]] = {}
        kers = []
        for i, row in enumerate(self._rows):
            acc = list(row) + [0] * m
            acc[n + i] = 1
            while True:
                lead = None
                for c in range(n):
                    if acc[c]:
                        lead = c
                        break
                if lead is None:
                    kers.append(acc[n:])
                    break
                if lead in piv_g:
                    prow = piv_g[lead]
                    coef = f.div(acc[lead], prow[lead])
                    acc = [f.sub(a, f.mul(coef, b)) for a, b in zip(acc, prow)]
                else:
                    piv_g[lead] = acc
                    break
        return Matrix(self.field, len(kers), m, kers).row_space()

    def solve(self, b: "Matrix") -> "Matrix":
        """x with self @ x = b (free variables zero); NoSolutionError if none."""
        if self.nrows != b.nrows:
            raise ValueError("row count mismatch")
        aug = self.hstack(b)
        R, _, pivots = aug.rref()
        n, k = self.ncols, b.ncols
        for c in pivots:
            if c >= n:
                raise NoSolutionError("inconsistent system")
        if self._q2:
            xrows = [0] * n
            for r, pc in enumerate(pivots):
                xrows[pc] = R._rows[r] >> n
            return Matrix(self.field, n, k, xrows)
        xrows = [[0] * k for _ in range(n)]
        for r, pc in enumerate(pivots):
            xrows[pc] = R._rows[r][n:]
        return Matrix(self.field, n, k, xrows)

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise ValueError("not square")
        x = self.solve(Matrix.identity(self.field, self.nrows))
        if self.nrows and self.matmul(x) != Matrix.identity(self.field, self.nrows):
            raise ValueError("matrix is singular")
        return x


# -- raw row helpers ----------------------------------------------------


def raw_zero(field: Field, n: int) -> RawRow:
    return 0 if field.q == 2 else [0] * n


def raw_is_zero(row: RawRow) -> bool:
    if isinstance(row, int):
        return row == 0
    return all(v == 0 for v in row)


def raw_from_list(field: Field, entries: list[int]) -> RawRow:
    if field.q == 2:
        x = 0
        for j, v in enumerate(entries):
            if v:
                x |= 1 << j
        return x
    return list(entries)


def raw_to_list(field: Field, row: RawRow, n: int) -> list[int]:
    if isinstance(row, int):
        return [(row >> j) & 1 for j in range(n)]
    return list(row)


def raw_unit(field: Field, n: int, j: int) -> RawRow:
    if field.q == 2:
        return 1 << j
    row = [0] * n
    row[j] = 1
    return row


def raw_addmul(field: Field, a: RawRow, b: RawRow, c: int) -> RawRow:
    """a + c*b."""
    if isinstance(a, int):
        return a ^ b if c else a
    if c == 0:
        return a
    if c == 1:
        return [field.add(x, y) for x, y in zip(a, b)]
    return [field.add(x, field.mul(c, y)) for x, y in zip(a, b)]


def raw_leading(row: RawRow) -> tuple[int, int] | None:
    """(column, entry) of the leftmost nonzero entry, or None."""
    if isinstance(row, int):
        if row == 0:
            return None
        return ((row & -row).bit_length() - 1, 1)
    for j, v in enumerate(row):
        if v:
            return (j, v)
    return None


class Echelon:
    """Incremental fully-reduced echelon basis over raw rows.

    The stored rows always form an rref basis (pivot entries 1, pivot
    columns cleared everywhere else), so residuals are canonical coset
    representatives.  With track=True every reduction also yields the
    coefficients of the input over the originally inserted vectors, which
    is what the spinning homomorphism machinery consumes."""

    def __init__(self, field: Field, width: int, track: bool = False):
        self.field = field
        self.width = width
        self.track = track
        self._piv: dict[int, tuple[RawRow, dict[int, int] | None]] = {}
        self._pivmask = 0  # GF(2) only
        self.inserted = 0

    @property
    def dim(self) -> int:
        return len(self._piv)

    @staticmethod
    def _combo_addmul(f: Field, combo: dict[int, int], other: dict[int, int], c: int) -> None:
        for i, v in other.items():
            nc = f.add(combo.get(i, 0), f.mul(c, v))
            if nc:
                combo[i] = nc
            else:
                combo.pop(i, None)

    def reduce(self, row: RawRow) -> tuple[RawRow, dict[int, int] | None]:
        """Canonical residual of row modulo the basis, plus (if tracking)
        coefficients c with row = residual + sum c[i] * original_i."""
        f = self.field
        combo: dict[int, int] | None = {} if self.track else None
        if isinstance(row, int):
            x = row & self._pivmask
            while x:
                low = x & -x
                x ^= low
                prow, pexpr = self._piv[low.bit_length() - 1]
                row ^= prow
                if self.track:
                    self._combo_addmul(f, combo, pexpr, 1)
            return row, combo
        touched = [c for c in self._piv if row[c]]
        if touched:
            row = list(row)
            for c in sorted(touched):
                val = row[c]
                if not val:
                    continue
                prow, pexpr = self._piv[c]
                neg = f.neg(val)
                for j, p in enumerate(prow):
                    if p:
                        row[j] = f.add(row[j], f.mul(neg, p))
                if self.track:
                    self._combo_addmul(f, combo, pexpr, val)
        return row, combo

    def insert(self, row: RawRow) -> tuple[int | None, dict[int, int] | None]:
        """Insert a vector; returns (new original index, None) if independent,
        else (None, combo) expressing it over previously inserted vectors."""
        f = self.field
        residual, combo = self.reduce(row)
        if raw_is_zero(residual):
            return None, combo
        idx = self.inserted
        self.inserted += 1
        col, val = raw_leading(residual)
        if val != 1:
            inv = f.inv(val)
            residual = [f.mul(inv, v) for v in residual]
        pexpr = None
        if self.track:
            scale = 1 if val == 1 else f.inv(val)
            pexpr = {idx: scale}
            for i, c in combo.items():
                pexpr[i] = f.neg(f.mul(scale, c))
        # clear the new pivot column from all existing basis rows
        if isinstance(residual, int):
            bit = 1 << col
            for c2, (prow, pe) in list(self._piv.items()):
                if prow & bit:
                    nrow = prow ^ residual
                    if self.track:
                        pe = dict(pe)
                        self._combo_addmul(f, pe, pexpr, 1)
                    self._piv[c2] = (nrow, pe)
            self._pivmask |= bit
        else:
            for c2, (prow, pe) in list(self._piv.items()):
                e = prow[col]
                if e:
                    neg = f.neg(e)
                    nrow = [f.add(a, f.mul(neg, b)) for a, b in zip(prow, residual)]
                    if self.track:
                        pe = dict(pe)
                        self._combo_addmul(f, pe, pexpr, neg)
                    self._piv[c2] = (nrow, pe)
        self._piv[col] = (residual, pexpr)
        return idx, None

    def contains(self, row: RawRow) -> bool:
        residual, _ = self.reduce(row)
        return raw_is_zero(residual)

    def clone_untracked(self) -> "Echelon":
        other = Echelon(self.field, self.width, track=False)
        other._piv = {c: (row, None) for c, (row, _) in self._piv.items()}
        other._pivmask = self._pivmask
        other.inserted = self.inserted
        return other

    def basis_matrix(self) -> Matrix:
        rows = [self._piv[c][0] for c in sorted(self._piv)]
        return Matrix(self.field, len(rows), self.width, rows)


# -- subspace operations ------------------------------------------------


def subspace_sum(u: Matrix, v: Matrix) -> Matrix:
    if u.ncols != v.ncols:
        raise ValueError("ambient dimension mismatch")
    return u.vstack(v).row_space()


def subspace_intersect(u: Matrix, v: Matrix) -> Matrix:
    """Basis of the intersection of two row spaces, via the kernel of the
    stacked matrix: coefficients (x, y) with x*U + y*V = 0 give x*U."""
    if u.ncols != v.ncols:
        raise ValueError("ambient dimension mismatch")
    if u.nrows == 0 or v.nrows == 0:
        return Matrix.zeros(u.field, 0, u.ncols)
    stacked = u.vstack(v)
    zk = stacked.left_kernel()
    xs = zk.take_cols(range(u.nrows))
    return xs.matmul(u).row_space()


def expand_in_rref_basis(basis: Matrix, pivots: tuple[int, ...], row: RawRow) -> RawRow:
    """Coordinates of a row known to lie in the row space of an rref basis."""
    field = basis.field
    coords = []
    for pc in pivots:
        if isinstance(row, int):
            coords.append((row >> pc) & 1)
        else:
            coords.append(row[pc])
    out = raw_from_list(field, coords)
    return out
