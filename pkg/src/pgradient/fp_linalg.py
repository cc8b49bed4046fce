"""Dense linear algebra over the prime field F_p.

Vectors are rows; a matrix ``A`` acts by ``v -> v @ A``.  A hyperplane is
stored as the functional ``lam`` whose kernel it is, normalized so that its
first nonzero coefficient is 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

MAX_PRIME = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def check_prime(p: int) -> int:
    if not is_prime(p) or p > MAX_PRIME:
        raise ValueError(f"p must be a prime <= {MAX_PRIME}, got {p}")
    return p


@dataclass(frozen=True, eq=False)
class FpMatrix:
    p: int
    entries: np.ndarray

    def __post_init__(self):
        check_prime(self.p)
        a = np.asarray(self.entries, dtype=np.int64)
        if a.ndim != 2:
            a = a.reshape(0, 0) if a.size == 0 else a.reshape(1, -1)
        a = np.mod(a, self.p)
        a.flags.writeable = False
        object.__setattr__(self, "entries", a)

    @classmethod
    def zeros(cls, p, rows, cols):
        return cls(p, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, p, n):
        return cls(p, np.eye(n, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self):
        return self.entries.shape

    def __eq__(self, other):
        return (isinstance(other, FpMatrix) and self.p == other.p
                and self.shape == other.shape and np.array_equal(self.entries, other.entries))

    def __hash__(self):
        return hash((self.p, self.shape, self.entries.tobytes()))

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        if self.p != other.p:
            raise ValueError("moduli differ")
        return FpMatrix(self.p, (self.entries @ other.entries) % self.p)

    def T(self) -> "FpMatrix":
        return FpMatrix(self.p, self.entries.T.copy())

    def tolist(self):
        return self.entries.tolist()

    def __repr__(self):
        return f"FpMatrix(p={self.p}, {self.tolist()})"


def _inv(a: int, p: int) -> int:
    return pow(int(a), -1, p)


def rref(M: FpMatrix) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; pivot is the first nonzero entry scanning columns left to right."""
    p = M.p
    A = M.entries.copy()
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = (A[r] * _inv(A[r, c], p)) % p
        col = A[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            A[hit] = (A[hit] - np.outer(col[hit], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(M: FpMatrix) -> int:
    return len(rref(M)[1])


def nullspace(M: FpMatrix) -> np.ndarray:
    """Basis (as rows) of ``{x : M @ x = 0}``."""
    p = M.p
    R, pivots = rref(M)
    free = [c for c in range(M.cols) if c not in set(pivots)]
    basis = np.zeros((len(free), M.cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, c in enumerate(pivots):
            basis[i, c] = (-R[r, f]) % p
    return basis


def inverse(M: FpMatrix) -> FpMatrix:
    n = M.rows
    if M.cols != n:
        raise ValueError("matrix is not square")
    aug = FpMatrix(M.p, np.hstack([M.entries, np.eye(n, dtype=np.int64)]))
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ValueError("matrix is singular mod p")
    return FpMatrix(M.p, R[:, n:])


# ---------------------------------------------------------------- functionals

@dataclass(frozen=True)
class Functional:
    p: int
    coefficients: tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(x) % self.p for x in self.coefficients)
        if not any(c):
            raise ValueError("the zero functional does not define a hyperplane")
        object.__setattr__(self, "coefficients", c)

    @property
    def dim(self) -> int:
        return len(self.coefficients)

    def canonical(self) -> "Functional":
        lead = next(x for x in self.coefficients if x)
        s = _inv(lead, self.p)
        return Functional(self.p, tuple(x * s for x in self.coefficients))

    def is_canonical(self) -> bool:
        return next(x for x in self.coefficients if x) == 1

    def __call__(self, v) -> int:
        return int(np.dot(np.asarray(v, dtype=np.int64), np.asarray(self.coefficients, dtype=np.int64)) % self.p)

    def kernel_basis(self) -> np.ndarray:
        return nullspace(FpMatrix(self.p, np.array([self.coefficients], dtype=np.int64)))


def _canonical_vectors(basis: np.ndarray, p: int):
    """All canonical nonzero vectors in the row span of an independent ``basis``."""
    f = basis.shape[0]
    out = []
    for coeffs in itertools.product(range(p), repeat=f):
        if not any(coeffs):
            continue
        v = (np.asarray(coeffs, dtype=np.int64) @ basis) % p
        lead = v[np.nonzero(v)[0][0]]
        if lead == 1:
            out.append(tuple(int(x) for x in v))
    return out


def hyperplanes(dim: int, p: int) -> list[Functional]:
    check_prime(p)
    out = []
    for c in itertools.product(range(p), repeat=dim):
        if any(c) and next(x for x in c if x) == 1:
            out.append(Functional(p, c))
    return out


def _check_action(dim, p, action):
    mats = []
    for A in action:
        if A.p != p or A.shape != (dim, dim):
            raise ValueError(f"action matrix must be {dim}x{dim} over F_{p}, got {A.shape} over F_{A.p}")
        if rank(A) != dim:
            raise ValueError("action matrix is singular mod p")
        mats.append(A.entries)
    return mats


def is_invariant(lam: Functional, action) -> bool:
    """Kernel stability: every kernel basis vector, moved by every matrix, stays in the kernel."""
    K = lam.kernel_basis()
    c = np.asarray(lam.coefficients, dtype=np.int64)
    for A in action:
        if np.any(((K @ A.entries) % lam.p) @ c % lam.p):
            return False
    return True


def invariant_hyperplanes(dim: int, p: int, action) -> list[Functional]:
    """Hyperplanes of F_p^dim mapped onto themselves by every matrix in ``action``.

    ``ker lam`` is stable under ``v -> v @ A`` exactly when ``A @ lam`` is a
    multiple of ``lam``, so the answer is the set of common eigenvectors of
    the matrices acting on column vectors.  They are found by intersecting
    eigenspaces one matrix at a time.
    """
    check_prime(p)
    mats = _check_action(dim, p, action)
    if dim == 0:
        return []
    spaces = [np.eye(dim, dtype=np.int64)]  # rows span candidate subspaces (column vectors as rows)
    for A in mats:
        nxt = []
        for S in spaces:
            # lam = y @ S; need A @ lam^T = c lam^T  <=>  y @ (S @ A^T - c S) = 0
            SA = (S @ A.T) % p
            for c in range(1, p):
                N = FpMatrix(p, ((SA - c * S) % p).T)
                Y = nullspace(N)
                if Y.shape[0]:
                    sub = (Y @ S) % p
                    sub, _ = rref(FpMatrix(p, sub))
                    nxt.append(sub)
        spaces = nxt
        if not spaces:
            return []
    found = set()
    for S in spaces:
        found.update(_canonical_vectors(S, p))
    return [Functional(p, c) for c in sorted(found)]
