"""Exact linear algebra over prime fields and over the integers.

Mod-p work is done on numpy ``int64`` arrays with entries in ``[0, p)``.
Integer work goes through FLINT (``python-flint``) for Hermite/Smith normal
forms and LLL; matrices cross that boundary as numpy ``object`` arrays so no
entry is ever truncated.  A slow pure-Python HNF is kept for cross-checking.
"""
from __future__ import annotations

from math import gcd

import flint
import numpy as np


class LinalgError(ArithmeticError):
    pass


# ---------------------------------------------------------------------------
# mod p
# ---------------------------------------------------------------------------

def rref_mod(A, p: int):
    """Reduced row echelon form of ``A`` over F_p.  Returns ``(R, pivots)``
    where ``R`` has exactly ``len(pivots)`` rows."""
    if p >= 1 << 62:
        raise ValueError("modulus too large")
    A = np.array(np.asarray(A, dtype=object) % p if np.asarray(A).dtype == object else A,
                 dtype=np.int64) % p
    if A.ndim != 2:
        raise ValueError("expected a matrix")
    if p == 2 and A.size:
        return _rref_gf2(A)
    if A.size > _FLINT_RREF_SIZE or p >= 1 << 31:
        return _rref_flint(A, p)
    m, n = A.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), -1, p)
        if inv != 1:
            A[r, c:] = A[r, c:] * inv % p
        col = A[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            A[rows, c:] = (A[rows, c:] - np.outer(col[rows], A[r, c:])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


_FLINT_RREF_SIZE = 20000


def _rref_flint(A, p: int):
    m, n = A.shape
    R, r = flint.nmod_mat(m, n, A.ravel().tolist(), p).rref()
    R = np.array([int(x) for x in R.entries()], dtype=np.int64).reshape(m, n)[:r]
    pivots = [int(np.flatnonzero(row)[0]) for row in R]
    return R, pivots


def _rref_gf2(A):
    """Bit-packed elimination over F_2."""
    m, n = A.shape
    B = np.packbits(A.astype(np.uint8), axis=1)
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        byte, bit = divmod(c, 8)
        mask = np.uint8(0x80 >> bit)
        col = (B[:, byte] & mask) != 0
        nz = np.flatnonzero(col[r:])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            B[[r, i]] = B[[i, r]]
            col[[r, i]] = col[[i, r]]
        col[r] = False
        rows = np.flatnonzero(col)
        if rows.size:
            B[rows, byte:] ^= B[r, byte:]
        pivots.append(c)
        r += 1
    R = np.unpackbits(B[:r], axis=1, count=n).astype(np.int64)
    return R, pivots


def rank_mod(A, p: int) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    # eliminate along the short side
    if A.shape[0] > A.shape[1]:
        A = A.T
    return len(rref_mod(A, p)[1])


def nullspace_mod(A, p: int) -> np.ndarray:
    """Basis (as rows) of ``{x : A x = 0}`` over F_p."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = rref_mod(A, p)
    pset = set(piv)
    free = [c for c in range(n) if c not in pset]
    N = np.zeros((len(free), n), dtype=np.int64)
    N[np.arange(len(free)), free] = 1
    if piv:
        N[:, list(piv)] = (-R[:len(piv)][:, free].T) % p
    return N


def solve_mod(A, b, p: int):
    """One solution of ``A x = b`` over F_p, or ``None``."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    R, piv = rref_mod(np.hstack([A, b]), p)
    n = A.shape[1]
    if piv and piv[-1] == n:
        return None
    x = np.zeros(n, dtype=np.int64)
    for row, pc in enumerate(piv):
        x[pc] = R[row, n]
    return x


def det_mod(A, p: int) -> int:
    A = np.array(A, dtype=np.int64) % p
    n = A.shape[0]
    if n == 0:
        return 1
    return int(flint.nmod_mat(A.tolist(), p).det())


def matmul_mod(A, B, p: int) -> np.ndarray:
    """``A @ B mod p`` for reduced operands, through BLAS when exact."""
    k = A.shape[-1]
    if float(p - 1) ** 2 * max(k, 1) < 2.0 ** 52:
        C = np.asarray(A, dtype=np.float64) @ np.asarray(B, dtype=np.float64)
        return np.fmod(C, p).astype(np.int64)
    return (np.asarray(A, dtype=object) @ np.asarray(B, dtype=object) % p).astype(np.int64)


class Echelon:
    """Incrementally maintained RREF basis of a subspace of F_p^n.

    Used for spans that grow one vector at a time (submodule closures,
    greedy generator selection).
    """

    def __init__(self, n: int, p: int):
        self.n = n
        self.p = p
        self.rows = np.zeros((0, n), dtype=np.int64)
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=np.int64) % self.p
        if self.pivots:
            v = (v - matmul_mod(v[self.pivots], self.rows, self.p)) % self.p
        return v

    def contains(self, v) -> bool:
        return not self.reduce(v).any()

    def add(self, v) -> bool:
        """Insert ``v``; returns whether the span grew."""
        w = self.reduce(v)
        nz = np.flatnonzero(w)
        if nz.size == 0:
            return False
        c = int(nz[0])
        w = w * pow(int(w[c]), -1, self.p) % self.p
        if self.pivots:
            self.rows = (self.rows - np.outer(self.rows[:, c], w)) % self.p
        pos = int(np.searchsorted(self.pivots, c))
        self.rows = np.insert(self.rows, pos, w, axis=0)
        self.pivots.insert(pos, c)
        return True

    def add_many(self, V) -> int:
        """Insert all rows of ``V`` at once; returns how much the span grew."""
        V = np.atleast_2d(np.asarray(V, dtype=np.int64)) % self.p
        if V.shape[0] == 0 or self.dim == self.n:
            return 0
        if self.pivots:
            V = (V - matmul_mod(V[:, self.pivots], self.rows, self.p)) % self.p
        V = V[V.any(axis=1)]
        if V.shape[0] == 0:
            return 0
        R, piv = rref_mod(V, self.p)
        if self.pivots:
            self.rows = (self.rows - matmul_mod(self.rows[:, piv], R, self.p)) % self.p
        rows = np.vstack([self.rows, R])
        pivots = self.pivots + list(piv)
        order = np.argsort(pivots, kind="stable")
        self.rows = rows[order]
        self.pivots = [pivots[i] for i in order]
        return len(piv)


# ---------------------------------------------------------------------------
# integers
# ---------------------------------------------------------------------------

def _to_fmpz(A) -> flint.fmpz_mat:
    A = np.asarray(A)
    m, n = A.shape
    if A.dtype != object:
        return flint.fmpz_mat(m, n, A.astype(np.int64).ravel().tolist())
    return flint.fmpz_mat(m, n, [int(x) for x in A.flat])


def _from_fmpz(M: flint.fmpz_mat) -> np.ndarray:
    m, n = M.nrows(), M.ncols()
    out = np.empty((m, n), dtype=object)
    for i, row in enumerate(M.tolist()):
        out[i, :] = [int(x) for x in row]
    return out


def as_int_matrix(A) -> np.ndarray:
    A = np.asarray(A)
    if A.dtype != object:
        A = A.astype(np.int64).astype(object)
    return A


def hnf(A) -> np.ndarray:
    """Row Hermite normal form, zero rows dropped."""
    A = as_int_matrix(A)
    if A.shape[0] == 0 or A.shape[1] == 0:
        return np.zeros((0, A.shape[1]), dtype=object)
    H = _from_fmpz(_to_fmpz(A).hnf())
    keep = [i for i in range(H.shape[0]) if any(H[i])]
    return H[keep]


def lll_rows(A) -> np.ndarray:
    """LLL-reduce the row lattice of ``A`` (rows assumed independent)."""
    A = as_int_matrix(A)
    if A.shape[0] <= 1:
        return A
    L = _from_fmpz(_to_fmpz(A).lll())
    keep = [i for i in range(L.shape[0]) if any(L[i])]
    return L[keep]


def int_kernel(A, reduce: bool = True) -> np.ndarray:
    """Basis (rows) of the lattice ``{x in Z^n : A x = 0}``.

    Computed from the row HNF of ``[A^T | I]``: rows whose left block vanishes
    span the kernel over Z, so the result is saturated.
    """
    A = as_int_matrix(A)
    m, n = A.shape
    if n == 0:
        return np.zeros((0, 0), dtype=object)
    if m == 0:
        return np.eye(n, dtype=np.int64).astype(object)
    aug = np.hstack([A.T, np.eye(n, dtype=np.int64).astype(object)])
    H = _from_fmpz(_to_fmpz(aug).hnf())
    K = np.array([H[i, m:] for i in range(n) if not any(H[i, :m]) and any(H[i, m:])],
                 dtype=object).reshape(-1, n)
    if reduce and K.shape[0] > 1:
        K = lll_rows(K)
    return K


def int_matmul(A, B) -> np.ndarray:
    A, B = as_int_matrix(A), as_int_matrix(B)
    if A.shape[0] == 0 or B.shape[1] == 0 or A.shape[1] == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=object)
    return _from_fmpz(_to_fmpz(A) * _to_fmpz(B))


def int_rank(A) -> int:
    A = as_int_matrix(A)
    if A.size == 0:
        return 0
    return _to_fmpz(A).rank()


def int_det(A) -> int:
    A = as_int_matrix(A)
    if A.shape[0] == 0:
        return 1
    return int(_to_fmpz(A).det())


def prime_divisors(n: int) -> list[int]:
    """Prime divisors of a nonzero integer (via flint's factorization)."""
    n = abs(int(n))
    if n == 0:
        raise ValueError("zero has no finite prime factorization")
    return [int(q) for q, _ in flint.fmpz(n).factor()] if n > 1 else []


def smith_invariants(A) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form."""
    A = as_int_matrix(A)
    if A.size == 0:
        return []
    S = _to_fmpz(A).snf()
    k = min(S.nrows(), S.ncols())
    return [abs(int(S[i, i])) for i in range(k) if S[i, i] != 0]


def coordinates(basis, vectors) -> np.ndarray:
    """Integer coordinates of the rows of ``vectors`` in the row basis ``basis``.

    Raises ``LinalgError`` if some vector is not an integral combination.
    """
    B = as_int_matrix(basis)
    V = as_int_matrix(vectors)
    r = B.shape[0]
    if V.shape[0] == 0:
        return np.zeros((0, r), dtype=object)
    if r == 0:
        if any(x != 0 for x in V.flat):
            raise LinalgError("vector outside the zero lattice")
        return np.zeros((V.shape[0], 0), dtype=object)
    # pick r independent columns of B, solve on them, then verify everywhere
    H = flint.fmpq_mat(_to_fmpz(B)).rref()[0]
    cols = []
    for i in range(r):
        for j in range(H.ncols()):
            if H[i, j] != 0:
                cols.append(j)
                break
    Bs = flint.fmpq_mat(_to_fmpz(B[:, cols].T))
    Vs = flint.fmpq_mat(_to_fmpz(V[:, cols].T))
    Y = Bs.solve(Vs)
    out = np.empty((V.shape[0], r), dtype=object)
    for i in range(r):
        for j in range(V.shape[0]):
            q = Y[i, j]
            if q.q != 1:
                raise LinalgError("vector not an integral combination of the basis")
            out[j, i] = int(q.p)
    if np.any(int_matmul(out, B) != V):
        raise LinalgError("vector outside the lattice spanned by the basis")
    return out


class LatticeCoordinates:
    """Repeated coordinate solves against a fixed row basis of a lattice."""

    def __init__(self, basis):
        self.basis = as_int_matrix(basis)
        r = self.basis.shape[0]
        self.rank = r
        if r == 0:
            return
        for q in _SOLVE_PRIMES:
            _, cols = rref_mod(np.asarray(self.basis % q, dtype=np.int64), q)
            if len(cols) == r:
                break
        else:
            raise LinalgError("basis rows are dependent")
        self.cols = cols
        inv = flint.fmpq_mat(_to_fmpz(self.basis[:, cols])).inv()
        self.den = 1
        for x in inv.entries():
            self.den = self.den * int(x.q) // gcd(self.den, int(x.q))
        self.adj = flint.fmpz_mat(r, r, [int(x * self.den) for x in inv.entries()])
        self._B = _to_fmpz(self.basis)

    def __call__(self, vectors) -> np.ndarray:
        V = as_int_matrix(np.atleast_2d(vectors))
        r = self.rank
        if r == 0:
            if any(x != 0 for x in V.flat):
                raise LinalgError("vector outside the zero lattice")
            return np.zeros((V.shape[0], 0), dtype=object)
        Yn = _to_fmpz(V[:, self.cols]) * self.adj
        Y = _from_fmpz(Yn)
        if self.den != 1:
            if any(x % self.den for x in Y.flat):
                raise LinalgError("vector not an integral combination of the basis")
            Y = Y // self.den
        if _from_fmpz(_to_fmpz(Y) * self._B).tolist() != V.tolist():
            raise LinalgError("vector outside the lattice spanned by the basis")
        return Y


_SOLVE_PRIMES = (1000003, 1000033, 1000037)


def abelian_homology(d_in, d_out):
    """Homology ``ker(d_out) / im(d_in)`` of integer matrices acting on columns.

    ``d_in`` maps into the middle group (shape ``mid x a``), ``d_out`` maps out
    of it (shape ``b x mid``).  Returns ``(free_rank, torsion)`` with torsion
    the invariant factors ``> 1``.
    """
    Z = int_kernel(d_out)
    z = Z.shape[0]
    if z == 0:
        return 0, []
    B = as_int_matrix(d_in).T
    B = B[[i for i in range(B.shape[0]) if any(B[i])]] if B.shape[0] else B
    if B.shape[0] == 0:
        return z, []
    Y = coordinates(Z, B)
    inv = smith_invariants(Y)
    return z - len(inv), [d for d in inv if d != 1]


class IntLattice:
    """Sublattice of Z^n kept in row HNF, with a cheap membership test."""

    def __init__(self, n: int):
        self.n = n
        self.basis = np.zeros((0, n), dtype=object)
        self._pivots: list[int] = []

    @property
    def rank(self) -> int:
        return self.basis.shape[0]

    def _set(self, H):
        self.basis = H
        self._pivots = [next(j for j in range(self.n) if H[i, j] != 0) for i in range(H.shape[0])]

    def contains(self, v) -> bool:
        v = np.array(v, dtype=object)
        for i, c in enumerate(self._pivots):
            if v[c] == 0:
                continue
            q, r = divmod(v[c], self.basis[i, c])
            if r:
                return False
            v = v - q * self.basis[i]
        return not any(v)

    def add(self, V) -> None:
        V = as_int_matrix(np.atleast_2d(V))
        if V.shape[0] == 0:
            return
        self._set(hnf(np.vstack([self.basis, V])))


def hnf_reference(A) -> list[list[int]]:
    """Textbook row HNF with Python integers.  Slow; used as an oracle."""
    M = [[int(x) for x in row] for row in np.asarray(A, dtype=object)]
    m = len(M)
    n = len(M[0]) if m else 0
    r = 0
    for c in range(n):
        if r == m:
            break
        # gcd-combine column c into row r
        for i in range(r + 1, m):
            a, b = M[r][c], M[i][c]
            if b == 0:
                continue
            g, x, y = _xgcd(a, b)
            ra, rb = M[r], M[i]
            M[r] = [x * s + y * t for s, t in zip(ra, rb)]
            M[i] = [(a // g) * t - (b // g) * s for s, t in zip(ra, rb)]
        if M[r][c] == 0:
            continue
        if M[r][c] < 0:
            M[r] = [-x for x in M[r]]
        for i in range(r):
            q = M[i][c] // M[r][c]
            if q:
                M[i] = [s - q * t for s, t in zip(M[i], M[r])]
        r += 1
    return [row for row in M[:r] if any(row)]


def _xgcd(a: int, b: int):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def content(v) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g
