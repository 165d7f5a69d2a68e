"""Arithmetic in F_p and exact dense linear algebra over it.

Matrices are plain ``numpy`` int64 arrays holding canonical residues in
``[0, p)``.  With ``p < 2**31`` every product of two residues fits in 63 bits,
and the elimination below reduces after every rank-one update, so no
intermediate value ever overflows.

Elimination uses first-nonzero pivoting and no randomization: the same input
always produces the same echelon form, which keeps certificates stable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ZeroInverse

DEFAULT_PRIME = 32003
_MAX_PRIME = 2**31


def is_prime(m: int) -> bool:
    """Deterministic Miller-Rabin, exact for every ``m < 3.3e24``."""
    if m < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if m % q == 0:
            return m == q
    d, s = m - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, m)
        if x in (1, m - 1):
            continue
        for _ in range(s - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeField:
    """The prime field F_p for an odd prime ``p < 2**31``."""

    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if not (2 < self.p < _MAX_PRIME) or not is_prime(self.p):
            raise ValueError(f"need an odd prime below 2**31, got {self.p}")

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(value % self.p, self)

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroInverse("0 has no inverse")
        return pow(a, self.p - 2, self.p)

    def random(self, rng: np.random.Generator, size=None):
        return rng.integers(0, self.p, size=size, dtype=np.int64)

    def random_nonzero(self, rng: np.random.Generator) -> int:
        return int(rng.integers(1, self.p))


@dataclass(frozen=True)
class FieldElement:
    value: int
    field: PrimeField

    def __post_init__(self):
        if not 0 <= self.value < self.field.p:
            raise ValueError("value must be a canonical residue")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise TypeError("elements of different fields")
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(other) % self.field.p
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self.field(self.value + b)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self.field(self.value - b)

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self.field(b - self.value)

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self.field(self.value * b)

    __rmul__ = __mul__

    def __neg__(self):
        return self.field(-self.value)

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self * self.field.inv(b)

    def __pow__(self, e: int):
        if e < 0:
            return field_inverse(self) ** (-e)
        return self.field(pow(self.value, e, self.field.p))

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0


def field_inverse(a: FieldElement) -> FieldElement:
    return FieldElement(a.field.inv(a.value), a.field)


def as_matrix(M, p: int) -> np.ndarray:
    A = np.array(M, dtype=np.int64)
    if A.ndim == 1 and A.size == 0:
        A = A.reshape(0, 0)
    if A.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    return A % p


def row_reduce(M, p: int, reduced: bool = True) -> tuple[np.ndarray, list[int]]:
    """Echelon form of ``M`` over F_p and its pivot columns.

    With ``reduced=True`` the result is the reduced row-echelon form (pivots
    equal to 1, zeros above and below).  Otherwise only the entries below the
    pivots are cleared, which is all a rank computation needs.
    """
    A = as_matrix(M, p)
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r, c:] = A[r, c:] * inv % p
        below = r + 1 + np.flatnonzero(A[r + 1:, c])
        if reduced:
            above = np.flatnonzero(A[:r, c])
            targets = np.concatenate([above, below])
        else:
            targets = below
        if targets.size:
            factors = A[targets, c]
            A[np.ix_(targets, np.arange(c, cols))] = (
                A[targets, c:] - np.outer(factors, A[r, c:]) % p
            ) % p
        pivots.append(c)
        r += 1
    return A, pivots


def matrix_rank(M, p: int) -> int:
    A = as_matrix(M, p)
    if A.size == 0:
        return 0
    # eliminating along the shorter side touches fewer entries
    if A.shape[0] > A.shape[1]:
        A = A.T
    return len(row_reduce(A, p, reduced=False)[1])


def kernel_basis(M, p: int) -> np.ndarray:
    """Rows spanning ``{v : M v = 0}``; shape ``(cols - rank, cols)``."""
    A = as_matrix(M, p)
    cols = A.shape[1]
    R, pivots = row_reduce(A, p, reduced=True)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for j, f in enumerate(free):
        basis[j, f] = 1
        for i, c in enumerate(pivots):
            basis[j, c] = (-R[i, f]) % p
    return basis


def matrix_kernel_dim(M, p: int) -> int:
    A = as_matrix(M, p)
    return A.shape[1] - matrix_rank(A, p)


def matmul(A, B, p: int) -> np.ndarray:
    """Product mod p; safe while the inner dimension stays below ~8e9."""
    return (np.asarray(A, dtype=np.int64) @ np.asarray(B, dtype=np.int64)) % p


def solve_point(M, p: int) -> np.ndarray | None:
    """A single nonzero kernel vector of ``M`` when the kernel is a line."""
    K = kernel_basis(M, p)
    return K[0] if K.shape[0] == 1 else None


@dataclass(frozen=True, eq=False)
class DenseMatrix:
    """Thin immutable wrapper pairing an F_p matrix with its prime."""

    entries: np.ndarray
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        A = as_matrix(self.entries, self.p)
        A.setflags(write=False)
        object.__setattr__(self, "entries", A)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def rank(self) -> int:
        return matrix_rank(self.entries, self.p)

    def kernel_dim(self) -> int:
        return self.cols - self.rank()

    def kernel(self) -> np.ndarray:
        return kernel_basis(self.entries, self.p)

    def __eq__(self, other):
        return (isinstance(other, DenseMatrix) and self.p == other.p
                and np.array_equal(self.entries, other.entries))

    def __hash__(self):
        return hash((self.p, self.entries.shape, self.entries.tobytes()))
