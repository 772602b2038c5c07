"""Dense exact matrices over a :class:`~twistconj.rings.Ring`.

Entries are stored as raw ring values in a tuple of row tuples.  Matrices are
immutable; every operation returns a fresh matrix.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NotInvertibleOverRing, ParseError, RingMismatch
from .rings import Integers, Ring, RingAutomorphism, RingElement

__all__ = [
    "Matrix", "BlockPartition",
    "multiply", "add", "transpose", "scalar_multiply",
    "determinant", "adjugate", "inverse", "trace", "antitrace", "congruence_antitrace",
    "contragredient", "entrywise", "corner_extend", "block_diag", "block_split", "recompose",
    "J2", "random_matrix", "random_invertible",
]


class Matrix:
    __slots__ = ("ring", "rows", "_hash")

    def __init__(self, ring: Ring, rows: Sequence[Sequence]):
        rows = tuple(tuple(r) for r in rows)
        if not rows or not rows[0]:
            raise DimensionMismatch("matrices must have at least one row and column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionMismatch("ragged rows")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # -- construction --
    @classmethod
    def from_entries(cls, ring: Ring, rows: Iterable[Iterable]) -> "Matrix":
        """Build from ints, literals or ring elements."""
        return cls(ring, [[ring.coerce_raw(x) for x in row] for row in rows])

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "Matrix":
        return cls.scalar(ring, n, ring.one)

    @classmethod
    def zero(cls, ring: Ring, nrows: int, ncols: int | None = None) -> "Matrix":
        ncols = nrows if ncols is None else ncols
        return cls(ring, [[ring.zero] * ncols for _ in range(nrows)])

    @classmethod
    def scalar(cls, ring: Ring, n: int, z) -> "Matrix":
        zv = z.value if isinstance(z, RingElement) else z
        return cls(ring, [[zv if i == j else ring.zero for j in range(n)] for i in range(n)])

    @classmethod
    def parse(cls, ring: Ring, text: str) -> "Matrix":
        """Parse ``1,1;0,1`` style literals (rows by ';', entries by ',')."""
        text = text.strip()
        if not text:
            raise ParseError("empty matrix literal")
        try:
            return cls(ring, [[ring.parse_raw(e) for e in row.split(",")] for row in text.split(";")])
        except DimensionMismatch as exc:
            raise ParseError(f"malformed matrix literal {text!r}: {exc}") from None

    def to_literal(self) -> str:
        fmt = self.ring.format_raw
        return ";".join(",".join(fmt(v) for v in row) for row in self.rows)

    # -- shape --
    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    @property
    def is_square(self) -> bool:
        r, c = self.shape
        return r == c

    @property
    def n(self) -> int:
        r, c = self.shape
        if r != c:
            raise DimensionMismatch(f"{r}x{c} matrix is not square")
        return r

    def __getitem__(self, ij) -> RingElement:
        i, j = ij
        return RingElement(self.ring, self.rows[i][j])

    def entries(self) -> list[list[RingElement]]:
        return [[RingElement(self.ring, v) for v in row] for row in self.rows]

    # -- comparisons --
    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.ring == other.ring and self.rows == other.rows

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.ring, self.rows))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        return f"Matrix({self.ring.spec}, {self.to_literal()!r})"

    def __str__(self):
        return self.to_literal()

    # -- arithmetic --
    def _same_ring(self, other: "Matrix"):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring.spec} vs {other.ring.spec}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_ring(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        radd = self.ring.add
        return Matrix(self.ring, [[radd(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        rneg = self.ring.neg
        return Matrix(self.ring, [[rneg(a) for a in r] for r in self.rows])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._same_ring(other)
        r, k = self.shape
        k2, c = other.shape
        if k != k2:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        ring = self.ring
        radd, rmul, zero = ring.add, ring.mul, ring.zero
        cols = list(zip(*other.rows))
        out = []
        for row in self.rows:
            out_row = []
            for col in cols:
                acc = zero
                for a, b in zip(row, col):
                    if a != zero and b != zero:
                        acc = radd(acc, rmul(a, b))
                out_row.append(acc)
            out.append(out_row)
        return Matrix(ring, out)

    def scale(self, z) -> "Matrix":
        zv = self.ring.coerce_raw(z)
        rmul = self.ring.mul
        return Matrix(self.ring, [[rmul(zv, a) for a in r] for r in self.rows])

    def __mul__(self, z):
        if isinstance(z, Matrix):
            return NotImplemented
        return self.scale(z)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Matrix":
        n = self.n
        base = self if e >= 0 else inverse(self)
        e = abs(e)
        result = Matrix.identity(self.ring, n)
        while e:
            if e & 1:
                result = result @ base
            e >>= 1
            if e:
                base = base @ base
        return result

    @property
    def T(self) -> "Matrix":
        return Matrix(self.ring, list(zip(*self.rows)))

    def map_entries(self, fn, ring: Ring | None = None) -> "Matrix":
        return Matrix(ring or self.ring, [[fn(a) for a in r] for r in self.rows])

    def change_ring(self, target: Ring) -> "Matrix":
        """Push entries through the canonical map into ``target`` (e.g. reduction mod p)."""
        if isinstance(self.ring, Integers):
            return self.map_entries(target.from_int, target)
        fmt = self.ring.format_raw
        return self.map_entries(lambda v: target.parse_raw(fmt(v)), target)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(self.ring, [[self.rows[i][j] for j in cols] for i in rows])

    # -- predicates --
    def is_scalar(self) -> bool:
        if not self.is_square:
            return False
        z = self.rows[0][0]
        zero = self.ring.zero
        return all(v == (z if i == j else zero) for i, row in enumerate(self.rows) for j, v in enumerate(row))

    def is_symmetric(self) -> bool:
        return self.is_square and self.rows == self.T.rows

    def is_identity(self) -> bool:
        return self.is_scalar() and self.rows[0][0] == self.ring.one

    # convenience accessors mirroring the module functions
    def det(self) -> RingElement:
        return determinant(self)

    def trace(self) -> RingElement:
        return trace(self)

    def inverse(self) -> "Matrix":
        return inverse(self)


def multiply(a: Matrix, b: Matrix) -> Matrix:
    return a @ b


def add(a: Matrix, b: Matrix) -> Matrix:
    return a + b


def transpose(a: Matrix) -> Matrix:
    return a.T


def scalar_multiply(z, a: Matrix) -> Matrix:
    return a.scale(z)


# ---------------------------------------------------------------------------
# Determinant, adjugate, inverse

def _det_cofactor(ring: Ring, rows: list) -> object:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return ring.sub(ring.mul(rows[0][0], rows[1][1]), ring.mul(rows[0][1], rows[1][0]))
    acc = ring.zero
    for j, a in enumerate(rows[0]):
        if a == ring.zero:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = ring.mul(a, _det_cofactor(ring, minor))
        acc = ring.add(acc, term) if j % 2 == 0 else ring.sub(acc, term)
    return acc


def _det_bareiss(ring: Ring, rows: list) -> object:
    # fraction-free elimination; every division below is exact in an integral domain
    m = [list(r) for r in rows]
    n = len(m)
    zero = ring.zero
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        if m[k][k] == zero:
            for i in range(k + 1, n):
                if m[i][k] != zero:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return zero
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = ring.sub(ring.mul(pivot, m[i][j]), ring.mul(m[i][k], m[k][j]))
                m[i][j] = ring.exact_div(num, prev)
        prev = pivot
    det = m[n - 1][n - 1]
    return det if sign > 0 else ring.neg(det)


def _det_raw(ring: Ring, rows) -> object:
    rows = [tuple(r) for r in rows]
    if len(rows) <= 4:
        return _det_cofactor(ring, rows)
    return _det_bareiss(ring, rows)


def determinant(m: Matrix) -> RingElement:
    n = m.n
    return RingElement(m.ring, _det_raw(m.ring, m.rows[:n]))


def adjugate(m: Matrix) -> Matrix:
    n = m.n
    ring = m.ring
    if n == 1:
        return Matrix(ring, [[ring.one]])
    adj = [[ring.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [r[:j] + r[j + 1:] for k, r in enumerate(m.rows) if k != i]
            c = _det_raw(ring, minor)
            adj[j][i] = c if (i + j) % 2 == 0 else ring.neg(c)
    return Matrix(ring, adj)


def inverse(m: Matrix) -> Matrix:
    """Adjugate divided by the determinant; the determinant must be a unit."""
    det = determinant(m)
    if not det.is_unit():
        raise NotInvertibleOverRing(f"determinant {det} is not a unit in {m.ring.spec}")
    return adjugate(m).scale(det.inverse())


def trace(m: Matrix) -> RingElement:
    ring = m.ring
    acc = ring.zero
    for i in range(m.n):
        acc = ring.add(acc, m.rows[i][i])
    return RingElement(ring, acc)


# ---------------------------------------------------------------------------
# Antitrace, contragredient and ring automorphisms

def J2(ring: Ring) -> Matrix:
    """The 2x2 matrix [[0, 1], [-1, 0]]."""
    return Matrix(ring, [[ring.zero, ring.one], [ring.neg(ring.one), ring.zero]])


def _require_2x2(*ms: Matrix):
    for m in ms:
        if m.shape != (2, 2):
            raise DimensionMismatch(f"antitrace is defined for 2x2 matrices only, got {m.shape}")


def antitrace(m: Matrix) -> RingElement:
    """Entry (1,2) minus entry (2,1) of a 2x2 matrix."""
    _require_2x2(m)
    return RingElement(m.ring, m.ring.sub(m.rows[0][1], m.rows[1][0]))


def congruence_antitrace(x: Matrix, a: Matrix) -> RingElement:
    """atr(X A X^T); always equal to atr(A) * det(X).  No invertibility needed."""
    _require_2x2(x, a)
    if x.ring != a.ring:
        raise RingMismatch(f"{x.ring.spec} vs {a.ring.spec}")
    return antitrace(x @ a @ x.T)


def contragredient(m: Matrix) -> Matrix:
    return inverse(m).T


def entrywise(delta: RingAutomorphism, m: Matrix) -> Matrix:
    if delta.ring != m.ring:
        raise RingMismatch(f"automorphism of {delta.ring.spec} applied to matrix over {m.ring.spec}")
    if delta.is_identity:
        return m
    return m.map_entries(delta.action)


def block_diag(*blocks: Matrix) -> Matrix:
    if not blocks:
        raise DimensionMismatch("block_diag needs at least one block")
    ring = blocks[0].ring
    for b in blocks:
        if b.ring != ring:
            raise RingMismatch("blocks over different rings")
    total = sum(b.n for b in blocks)
    out = [[ring.zero] * total for _ in range(total)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b.rows):
            out[off + i][off:off + b.n] = row
        off += b.n
    return Matrix(ring, out)


def corner_extend(x: Matrix, c) -> Matrix:
    """diag(X, c): append one row and column with ``c`` in the corner."""
    if isinstance(c, RingElement) and c.ring != x.ring:
        raise RingMismatch(f"corner entry from {c.ring.spec}, matrix over {x.ring.spec}")
    cv = x.ring.coerce_raw(c)
    return block_diag(x, Matrix(x.ring, [[cv]]))


@dataclass(frozen=True)
class BlockPartition:
    """Blocks of ``[[tl, tr], [bl, br]]`` with ``br`` of size k x k."""
    tl: Matrix
    tr: Matrix
    bl: Matrix
    br: Matrix


def block_split(c: Matrix, k: int) -> BlockPartition:
    n = c.n
    if not 1 <= k < n:
        raise DimensionMismatch(f"split size {k} out of range for {n}x{n} matrix")
    top, bot = range(n - k), range(n - k, n)
    return BlockPartition(
        tl=c.submatrix(top, top), tr=c.submatrix(top, bot),
        bl=c.submatrix(bot, top), br=c.submatrix(bot, bot),
    )


def recompose(p: BlockPartition) -> Matrix:
    rows = [a + b for a, b in zip(p.tl.rows, p.tr.rows)]
    rows += [a + b for a, b in zip(p.bl.rows, p.br.rows)]
    return Matrix(p.tl.ring, rows)


# ---------------------------------------------------------------------------
# Random sampling

def random_matrix(ring: Ring, n: int, rng: random.Random, bound: int = 10) -> Matrix:
    return Matrix(ring, [[ring.random_raw(rng, bound) for _ in range(n)] for _ in range(n)])


def random_invertible(
    ring: Ring,
    n: int,
    rng: random.Random,
    bound: int | None = None,
    steps: int | None = None,
    special: bool = False,
    max_tries: int = 10_000,
) -> Matrix:
    """A random matrix with unit determinant, built from elementary row operations
    and a unit corner.  ``special`` forces determinant 1; ``bound`` rejects
    samples with an entry of height above it."""
    steps = 2 * n if steps is None else steps
    for _ in range(max_tries):
        rows = [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]
        if not special:
            rows[0][0] = ring.random_unit_raw(rng)
        for _ in range(steps if n > 1 else 0):
            i, j = rng.sample(range(n), 2)
            t = ring.random_raw(rng, 1)
            rows[i] = [ring.add(a, ring.mul(t, b)) for a, b in zip(rows[i], rows[j])]
        if not special:
            rng.shuffle(rows)
        m = Matrix(ring, rows)
        if bound is not None and any(ring.height_raw(v) > bound for row in m.rows for v in row):
            continue
        return m
    raise RuntimeError("could not sample an invertible matrix within the entry bound")
