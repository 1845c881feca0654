"""Exact homology of finite free integer chain complexes.

Everything here runs over Python's arbitrary-precision integers: matrices
are dense lists of lists, Smith normal form is computed by the classical
pivoting algorithm while tracking the unimodular row and column transforms,
and homology groups come out as free ranks plus invariant-factor torsion.

Set :data:`VERIFY_SNF` (or the environment variable ``MTFLOER_SNF_VERIFY``)
to make every Smith decomposition re-check its own postconditions by direct
multiplication; the test suite runs with this on.
"""

from __future__ import annotations

import os
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import NotAComplex
from .graded import GradedGroup

# When true, every smith_normal_form call verifies U m V == D, unimodularity
# of U and V, and the divisibility chain before returning.
VERIFY_SNF = bool(os.environ.get("MTFLOER_SNF_VERIFY"))


class IntMatrix:
    """A dense integer matrix of explicit shape (zero rows/columns allowed)."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: Sequence[Sequence[int]] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix shape must be nonnegative")
        self.rows = rows
        self.cols = cols
        if data is None:
            self.data = [[0] * cols for _ in range(rows)]
        else:
            if len(data) != rows or any(len(r) != cols for r in data):
                raise ValueError("data does not match declared shape")
            self.data = [list(r) for r in data]

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = len(data)
        if cols is None:
            if rows == 0:
                raise ValueError("column count required for a matrix with no rows")
            cols = len(data[0])
        return cls(rows, cols, data)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        m = cls(n, n)
        for i in range(n):
            m.data[i][i] = 1
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols)

    def copy(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, self.data)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, IntMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.shape} @ {other.shape}")
        out = IntMatrix(self.rows, other.cols)
        for i in range(self.rows):
            row = self.data[i]
            orow = out.data[i]
            for t in range(self.cols):
                a = row[t]
                if a:
                    brow = other.data[t]
                    for j in range(other.cols):
                        orow[j] += a * brow[j]
        return out

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return all(all(x == 0 for x in row) for row in self.data)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, [list(col) for col in zip(*self.data)] if self.rows else [[ ] for _ in range(self.cols)])

    def diagonal(self) -> list[int]:
        return [self.data[i][i] for i in range(min(self.rows, self.cols))]

    def determinant(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = [row[:] for row in self.data]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                # pivot by a row swap; a fully zero column kills the determinant
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}x{self.cols})"


class SmithForm(NamedTuple):
    """Decomposition U @ m @ V == D with U, V unimodular and D diagonal."""

    u: IntMatrix
    d: IntMatrix
    v: IntMatrix


def smith_normal_form(m: IntMatrix, verify: bool | None = None) -> SmithForm:
    """Smith normal form over the integers, with transforms.

    Returns (U, D, V) with U m V = D, U and V unimodular, and D diagonal
    with nonnegative entries forming a divisibility chain d1 | d2 | ...

    The pivot is always a smallest-magnitude nonzero entry of the trailing
    block, which keeps intermediate entries from exploding on the small
    matrices this package produces.
    """
    R, C = m.rows, m.cols
    a = [row[:] for row in m.data]
    u = IntMatrix.identity(R).data
    v = IntMatrix.identity(C).data

    def row_add(dst: int, src: int, q: int) -> None:
        arow, srow = a[dst], a[src]
        for j in range(C):
            arow[j] += q * srow[j]
        urow, usrc = u[dst], u[src]
        for j in range(R):
            urow[j] += q * usrc[j]

    def col_add(dst: int, src: int, q: int) -> None:
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def row_swap(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def row_negate(i: int) -> None:
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    def find_pivot(t: int) -> tuple[int, int] | None:
        best = None
        best_abs = None
        for i in range(t, R):
            row = a[i]
            for j in range(t, C):
                x = row[j]
                if x:
                    if best_abs is None or abs(x) < best_abs:
                        best, best_abs = (i, j), abs(x)
                        if best_abs == 1:
                            return best
        return best

    for t in range(min(R, C)):
        while True:
            pivot = find_pivot(t)
            if pivot is None:
                break
            pi, pj = pivot
            if pi != t:
                row_swap(t, pi)
            if pj != t:
                col_swap(t, pj)
            if a[t][t] < 0:
                row_negate(t)
            p = a[t][t]
            # one reduction pass down the pivot column and along the pivot row;
            # any nonzero remainder is strictly smaller than the pivot, so the
            # outer loop terminates
            clean = True
            for i in range(t + 1, R):
                if a[i][t]:
                    row_add(i, t, -(a[i][t] // p))
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, C):
                if a[t][j]:
                    col_add(j, t, -(a[t][j] // p))
                    if a[t][j]:
                        clean = False
            if not clean:
                continue
            # the divisibility chain needs the pivot to divide the whole
            # trailing block; folding an offending row into row t strictly
            # shrinks the eventual pivot
            offender = None
            for i in range(t + 1, R):
                row = a[i]
                for j in range(t + 1, C):
                    if row[j] % p:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_add(t, offender, 1)
        if find_pivot(t) is None:
            break

    result = SmithForm(
        IntMatrix(R, R, u), IntMatrix(R, C, a), IntMatrix(C, C, v)
    )
    if verify if verify is not None else VERIFY_SNF:
        check_smith_form(m, result)
    return result


def check_smith_form(m: IntMatrix, f: SmithForm) -> None:
    """Verify every Smith postcondition by direct computation; raise on failure."""
    u, d, v = f
    if (u @ m) @ v != d:
        raise AssertionError("U m V != D")
    if abs(u.determinant()) != 1:
        raise AssertionError("U is not unimodular")
    if abs(v.determinant()) != 1:
        raise AssertionError("V is not unimodular")
    diag = d.diagonal()
    for i in range(d.rows):
        for j in range(d.cols):
            if i != j and d.data[i][j]:
                raise AssertionError("D is not diagonal")
    if any(x < 0 for x in diag):
        raise AssertionError("D has a negative entry")
    for s, t in zip(diag, diag[1:]):
        if s == 0 and t != 0:
            raise AssertionError("zero diagonal entry precedes a nonzero one")
        if s and t % s:
            raise AssertionError("diagonal violates the divisibility chain")


def matrix_rank(m: IntMatrix) -> int:
    return sum(1 for x in smith_normal_form(m).d.diagonal() if x)


class FreeComplex:
    """A finite chain complex of free abelian groups with labeled bases.

    ``basis`` maps a degree to the tuple of generator labels in that degree;
    ``differentials`` maps degree d to the matrix of the boundary map from
    degree d to degree d-1, with shape (len(basis[d-1]), len(basis[d])).
    Missing matrices are zero maps.  The constructor checks shapes and that
    consecutive boundaries compose to zero: a silently invalid complex is
    the worst failure mode this package could have.
    """

    def __init__(
        self,
        basis: Mapping[int, Sequence],
        differentials: Mapping[int, IntMatrix] | None = None,
    ):
        self.basis = {d: tuple(labels) for d, labels in basis.items() if len(labels)}
        self.differentials: dict[int, IntMatrix] = {}
        for d, mat in (differentials or {}).items():
            target = len(self.basis.get(d - 1, ()))
            source = len(self.basis.get(d, ()))
            if mat.shape != (target, source):
                raise NotAComplex(
                    f"differential at degree {d} has shape {mat.shape}, expected {(target, source)}"
                )
            if not mat.is_zero():
                self.differentials[d] = mat.copy()
        for d, mat in self.differentials.items():
            below = self.differentials.get(d - 1)
            if below is not None and not (below @ mat).is_zero():
                raise NotAComplex(f"boundary squared is nonzero from degree {d}")

    def degrees(self) -> list[int]:
        return sorted(self.basis)

    def size(self, degree: int) -> int:
        return len(self.basis.get(degree, ()))

    def total_size(self) -> int:
        return sum(len(labels) for labels in self.basis.values())

    def differential(self, degree: int) -> IntMatrix:
        mat = self.differentials.get(degree)
        if mat is None:
            return IntMatrix.zeros(self.size(degree - 1), self.size(degree))
        return mat

    def euler_characteristic(self) -> int:
        return sum(
            len(labels) if d % 2 == 0 else -len(labels) for d, labels in self.basis.items()
        )

    def homology(self) -> GradedGroup:
        """Integer homology via one Smith decomposition per differential.

        In each degree, the free rank is dim ker(boundary out) minus
        rank(boundary in), and the torsion is the set of invariant factors
        of the incoming boundary that exceed 1.
        """
        forms = {d: smith_normal_form(mat) for d, mat in self.differentials.items()}
        result: dict[int, tuple[int, tuple[int, ...]]] = {}
        for d in self.degrees():
            n = self.size(d)
            out_rank = 0
            if d in forms:
                out_rank = sum(1 for x in forms[d].d.diagonal() if x)
            in_rank = 0
            torsion: tuple[int, ...] = ()
            incoming = forms.get(d + 1)
            if incoming is not None:
                diag = [x for x in incoming.d.diagonal() if x]
                in_rank = len(diag)
                torsion = tuple(x for x in diag if x > 1)
            result[d] = (n - out_rank - in_rank, torsion)
        return GradedGroup.of(result)


def euler_characteristic(x: FreeComplex | GradedGroup) -> int:
    """Alternating rank sum of either a complex or a graded group.

    Homology preserves this number, which the pipeline uses as a cheap
    end-to-end consistency check.
    """
    return x.euler_characteristic()
