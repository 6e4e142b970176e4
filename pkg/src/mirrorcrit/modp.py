"""Linear algebra over Z/p for prime p.

Subspaces are kept in reduced row-echelon form, which makes equality of
spaces a plain matrix comparison.  p = 2 carries almost all of the
workload here, so its elimination runs on Python-int bitsets (one XOR
per row operation); other primes use per-entry arithmetic with the same
algorithm.
"""

from __future__ import annotations

import itertools

DEFAULT_ENUM_LIMIT = 1 << 20


class EnumerationLimitError(RuntimeError):
    pass


def _check_prime(p: int):
    if p < 2:
        raise ValueError(f"{p} is not prime")
    d = 2
    while d * d <= p:
        if p % d == 0:
            raise ValueError(f"{p} is not prime")
        d += 1


class ModpMatrix:
    """Immutable matrix over Z/p with entries reduced into {0, ..., p-1}."""

    __slots__ = ("p", "n_rows", "n_cols", "rows")

    def __init__(self, p, rows, shape=None):
        _check_prime(p)
        rows = tuple(tuple(int(x) % p for x in row) for row in rows)
        if shape is None:
            if not rows:
                raise ValueError("shape is required for a matrix with no rows")
            shape = (len(rows), len(rows[0]))
        n, m = shape
        if len(rows) != n or any(len(row) != m for row in rows):
            raise ValueError(f"rows do not match shape {shape}")
        self.p = p
        self.n_rows = n
        self.n_cols = m
        self.rows = rows

    @classmethod
    def identity(cls, p, n):
        return cls(p, [[int(i == j) for j in range(n)] for i in range(n)], shape=(n, n))

    @classmethod
    def zero(cls, p, n_rows, n_cols):
        return cls(p, [[0] * n_cols for _ in range(n_rows)], shape=(n_rows, n_cols))

    @classmethod
    def from_int_matrix(cls, m, p):
        return cls(p, m.rows, shape=m.shape)

    @classmethod
    def permutation(cls, p, images):
        """Matrix sending basis vector e_j to e_images[j]."""
        n = len(images)
        rows = [[0] * n for _ in range(n)]
        for j, i in enumerate(images):
            rows[i][j] = 1
        return cls(p, rows, shape=(n, n))

    @property
    def shape(self):
        return (self.n_rows, self.n_cols)

    def _compatible(self, other):
        if self.p != other.p:
            raise ValueError("modulus mismatch")

    def __matmul__(self, other):
        self._compatible(other)
        if self.n_cols != other.n_rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        p = self.p
        ot = list(zip(*other.rows)) if other.rows else []
        rows = [
            [sum(a * b for a, b in zip(row, col)) % p for col in ot]
            for row in self.rows
        ]
        return ModpMatrix(p, rows, shape=(self.n_rows, other.n_cols))

    def __sub__(self, other):
        self._compatible(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        p = self.p
        rows = [
            [(a - b) % p for a, b in zip(r1, r2)]
            for r1, r2 in zip(self.rows, other.rows)
        ]
        return ModpMatrix(p, rows, shape=self.shape)

    def transpose(self):
        return ModpMatrix(
            self.p,
            [[self.rows[i][j] for i in range(self.n_rows)] for j in range(self.n_cols)],
            shape=(self.n_cols, self.n_rows),
        )

    def apply(self, vec):
        vec = [x % self.p for x in vec]
        if len(vec) != self.n_cols:
            raise ValueError("vector length does not match n_cols")
        return tuple(sum(a * b for a, b in zip(row, vec)) % self.p for row in self.rows)

    def is_identity(self):
        return self.n_rows == self.n_cols and all(
            x == int(i == j) for i, row in enumerate(self.rows) for j, x in enumerate(row)
        )

    def is_involution(self):
        return self.n_rows == self.n_cols and (self @ self).is_identity()

    def __eq__(self, other):
        if not isinstance(other, ModpMatrix):
            return NotImplemented
        return self.p == other.p and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.p, self.shape, self.rows))

    def __repr__(self):
        return f"ModpMatrix(p={self.p}, {self.n_rows}x{self.n_cols})"


def _rref_bits(bitrows):
    """Reduced echelon form of GF(2) rows packed as ints (bit j = column j).

    Invariant: every stored row has zeros at all other pivot columns,
    so one pass over the pivots fully reduces an incoming row.
    """
    pivots = {}
    for r in bitrows:
        cur = r
        for c, prow in pivots.items():
            if (cur >> c) & 1:
                cur ^= prow
        if cur:
            c = (cur & -cur).bit_length() - 1
            for pc in pivots:
                if (pivots[pc] >> c) & 1:
                    pivots[pc] ^= cur
            pivots[c] = cur
    cols = sorted(pivots)
    return [pivots[c] for c in cols], cols


def _rref_general(rows, p):
    """Reduced echelon form over Z/p, rows as lists; same invariant as
    the bitset version."""
    pivots = {}
    for r in rows:
        cur = list(r)
        for c, prow in pivots.items():
            f = cur[c]
            if f:
                cur = [(a - f * b) % p for a, b in zip(cur, prow)]
        lead = next((j for j, x in enumerate(cur) if x), None)
        if lead is not None:
            inv = pow(cur[lead], p - 2, p)
            cur = [(a * inv) % p for a in cur]
            for pc in pivots:
                f = pivots[pc][lead]
                if f:
                    pivots[pc] = [(a - f * b) % p for a, b in zip(pivots[pc], cur)]
            pivots[lead] = cur
    cols = sorted(pivots)
    return [pivots[c] for c in cols], cols


def _bits_to_row(bits, n):
    return tuple((bits >> j) & 1 for j in range(n))


def _row_to_bits(row):
    b = 0
    for j, x in enumerate(row):
        if x:
            b |= 1 << j
    return b


def _echelonize(p, n_cols, rows):
    """Returns (rref rows as tuples, pivot columns)."""
    if p == 2:
        reduced, cols = _rref_bits([_row_to_bits(r) for r in rows])
        return [_bits_to_row(b, n_cols) for b in reduced], cols
    reduced, cols = _rref_general([list(r) for r in rows], p)
    return [tuple(r) for r in reduced], cols


class ModpSubspace:
    """Subspace of (Z/p)^n, canonically represented by an RREF basis."""

    __slots__ = ("p", "ambient_dim", "basis", "pivots")

    def __init__(self, p, ambient_dim, basis: ModpMatrix, pivots):
        self.p = p
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = tuple(pivots)

    @classmethod
    def from_rows(cls, p, ambient_dim, rows) -> "ModpSubspace":
        rows = [tuple(int(x) % p for x in r) for r in rows]
        if any(len(r) != ambient_dim for r in rows):
            raise ValueError("ambient dimension mismatch")
        reduced, cols = _echelonize(p, ambient_dim, rows)
        basis = ModpMatrix(p, reduced, shape=(len(reduced), ambient_dim))
        return cls(p, ambient_dim, basis, cols)

    @classmethod
    def zero(cls, p, ambient_dim) -> "ModpSubspace":
        return cls.from_rows(p, ambient_dim, [])

    @classmethod
    def full(cls, p, ambient_dim) -> "ModpSubspace":
        return cls.from_rows(
            p, ambient_dim, ModpMatrix.identity(p, ambient_dim).rows if ambient_dim else []
        )

    @property
    def dim(self):
        return self.basis.n_rows

    def _compatible(self, other):
        if self.p != other.p:
            raise ValueError("modulus mismatch")
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")

    def contains(self, vec) -> bool:
        vec = [int(x) % self.p for x in vec]
        if len(vec) != self.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        p = self.p
        cur = vec
        for prow, c in zip(self.basis.rows, self.pivots):
            f = cur[c]
            if f:
                cur = [(a - f * b) % p for a, b in zip(cur, prow)]
        return not any(cur)

    def intersection(self, other: "ModpSubspace") -> "ModpSubspace":
        """Intersection via the kernel of the stacked basis columns."""
        self._compatible(other)
        cols = [list(r) for r in self.basis.rows] + [list(r) for r in other.basis.rows]
        stacked = ModpMatrix(
            self.p,
            [[col[i] for col in cols] for i in range(self.ambient_dim)],
            shape=(self.ambient_dim, len(cols)),
        )
        coeffs = kernel(stacked)
        da = self.dim
        p = self.p
        vecs = []
        for crow in coeffs.basis.rows:
            vec = [0] * self.ambient_dim
            for i in range(da):
                f = crow[i]
                if f:
                    brow = self.basis.rows[i]
                    vec = [(a + f * b) % p for a, b in zip(vec, brow)]
            vecs.append(vec)
        return ModpSubspace.from_rows(self.p, self.ambient_dim, vecs)

    def plus(self, other: "ModpSubspace") -> "ModpSubspace":
        self._compatible(other)
        return ModpSubspace.from_rows(
            self.p, self.ambient_dim, list(self.basis.rows) + list(other.basis.rows)
        )

    def enumerate_elements(self, limit=DEFAULT_ENUM_LIMIT):
        """All p^dim elements, each exactly once, deterministically."""
        if self.p**self.dim > limit:
            raise EnumerationLimitError(
                f"{self.p}^{self.dim} elements exceed the limit {limit}"
            )
        p = self.p
        rows = self.basis.rows
        for coeffs in itertools.product(range(p), repeat=self.dim):
            vec = [0] * self.ambient_dim
            for f, row in zip(coeffs, rows):
                if f:
                    vec = [(a + f * b) % p for a, b in zip(vec, row)]
            yield tuple(vec)

    def __eq__(self, other):
        if not isinstance(other, ModpSubspace):
            return NotImplemented
        return (
            self.p == other.p
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.p, self.ambient_dim, self.basis))

    def __repr__(self):
        return f"ModpSubspace(p={self.p}, dim {self.dim} in {self.ambient_dim})"


def kernel(m: ModpMatrix) -> ModpSubspace:
    """Null space {x : M x = 0} in echelon form."""
    reduced, pivots = _echelonize(m.p, m.n_cols, m.rows)
    p = m.p
    pivot_set = set(pivots)
    free = [j for j in range(m.n_cols) if j not in pivot_set]
    vecs = []
    for f in free:
        vec = [0] * m.n_cols
        vec[f] = 1
        for prow, c in zip(reduced, pivots):
            vec[c] = (-prow[f]) % p
        vecs.append(vec)
    return ModpSubspace.from_rows(p, m.n_cols, vecs)


def row_space(m: ModpMatrix) -> ModpSubspace:
    """Row space of M (equivalently the image of its transpose)."""
    return ModpSubspace.from_rows(m.p, m.n_cols, m.rows)


def fixed_subspace(inv: ModpMatrix, space: ModpSubspace) -> ModpSubspace:
    """{x in space : inv x = x} for an involution matrix inv."""
    if inv.p != space.p or inv.n_cols != space.ambient_dim:
        raise ValueError("involution does not act on the ambient space")
    if not inv.is_involution():
        raise ValueError("matrix is not an involution")
    diff = inv - ModpMatrix.identity(inv.p, inv.n_rows)
    return kernel(diff).intersection(space)
