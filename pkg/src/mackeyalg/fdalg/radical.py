"""Jacobson radical and socle over prime fields.

Radical by the iterated trace-form method for characteristic p: starting from
``I_{-1} = A``, set ``I_i = {a in I_{i-1} : g_i(ab) = 0 for all b}`` where
``g_i(a) = Tr(a~^(p^i)) / p^i mod p`` for an integer lift ``a~`` of the left
regular matrix of ``a``.  ``I_l`` with ``p^(l+1) > dim A`` is the radical.
"""
from __future__ import annotations

import itertools

import numpy as np

from .. import linalg
from ..algebra import ConsistencyError, StructuredAlgebra
from ..grpcore import ResourceCapError

_CHUNK = 256
_MATRIX_BUDGET = 1 << 24         # entries per batch of product matrices
RADICAL_DIM_CAP = 128


def _traces_of_powers(mats: np.ndarray, e: int, q: int) -> np.ndarray:
    """``Tr(M^e) mod q`` for a stack of integer matrices with entries in [0, q)."""
    n = mats.shape[-1]
    if float(q) ** 2 * n >= 2.0 ** 52:
        raise OverflowError("modulus too large for exact float products")
    out = np.empty(mats.shape[0], dtype=np.int64)
    for s in range(0, mats.shape[0], _CHUNK):
        base = mats[s:s + _CHUNK].astype(np.float64)
        acc = None
        k = e
        while k:
            if k & 1:
                acc = base.copy() if acc is None else np.fmod(acc @ base, q)
            k >>= 1
            if k:
                base = np.fmod(base @ base, q)
        out[s:s + _CHUNK] = np.rint(np.trace(acc, axis1=1, axis2=2)).astype(np.int64) % q
    return out


def radical(A: StructuredAlgebra, validate: bool = True) -> np.ndarray:
    """Basis (RREF rows) of the Jacobson radical of ``A`` over F_p."""
    p = A.p
    if not A.ring.is_field:
        raise ValueError("radical needs a prime field")
    n = A.dim
    if n > RADICAL_DIM_CAP:
        raise ResourceCapError(f"radical of a {n}-dimensional algebra exceeds the cap "
                               f"{RADICAL_DIM_CAP} (the trace form needs n^2 matrices of size n)")
    L = A.left_regular  # L[i] acts on column vectors
    I = np.eye(n, dtype=np.int64)
    i = 0
    while True:
        pe = p ** i
        q = pe * p
        if I.shape[0] == 0:
            break
        # products a_r b_s as left-regular matrices, lifted to [0, p); a few
        # rows r at a time keeps the n^2 matrices of size n x n out of memory
        Lf = (L % p).reshape(n, n * n).astype(np.float64)
        step = max(1, _MATRIX_BUDGET // n ** 3)
        tr = np.empty((I.shape[0], n), dtype=np.int64)
        for r in range(0, I.shape[0], step):
            prods = np.tensordot(I[r:r + step], A.C, 1) % p
            # float64 products are exact here: entries below p, sums of n terms
            mats = np.fmod(prods.reshape(-1, n).astype(np.float64) @ Lf, p)
            mats = mats.astype(np.int64).reshape(-1, n, n)
            tr[r:r + step] = _traces_of_powers(mats, pe, q).reshape(-1, n)
        if (tr % pe).any():
            raise ConsistencyError("trace of p^i-th power not divisible by p^i")
        E = (tr // pe) % p          # E[r, s] = g_i(a_r b_s)
        null = linalg.nullspace_mod(E.T, p)
        I = (null @ I) % p
        if I.shape[0]:
            I = linalg.rref_mod(I, p)[0]
        if p ** (i + 1) > n:
            break
        i += 1
    J = I
    if validate:
        validate_radical(A, J)
    return J


def _products(A: StructuredAlgebra, X, Y) -> np.ndarray:
    """All products ``x_r y_s`` as rows, reduced mod p."""
    n = A.dim
    T = np.tensordot(np.asarray(X, dtype=np.int64), A.C, 1) % A.p    # (r, j, k)
    return np.matmul(np.asarray(Y, dtype=np.int64), T).reshape(-1, n) % A.p


def ideal_power_dims(A: StructuredAlgebra, J: np.ndarray, limit: int | None = None) -> list[int]:
    """Dimensions of ``J, J^2, J^3, ...`` until zero (or ``limit`` steps)."""
    p = A.p
    dims = []
    P = J
    steps = limit or A.dim + 1
    for _ in range(steps):
        dims.append(P.shape[0])
        if P.shape[0] == 0:
            break
        prods = _products(A, P, J)
        P = linalg.rref_mod(prods, p)[0]
    return dims


def is_two_sided_ideal(A: StructuredAlgebra, J: np.ndarray) -> bool:
    p = A.p
    if J.shape[0] == 0:
        return True
    E = linalg.Echelon(A.dim, p)
    E.add_many(J)
    eye = np.eye(A.dim, dtype=np.int64)
    left = _products(A, eye, J)
    right = _products(A, J, eye)
    return all(E.contains(v) for v in np.vstack([left, right]))


def validate_radical(A: StructuredAlgebra, J: np.ndarray) -> None:
    if not is_two_sided_ideal(A, J):
        raise ConsistencyError("computed radical is not a two-sided ideal")
    if ideal_power_dims(A, J)[-1] != 0:
        raise ConsistencyError("computed radical is not nilpotent")
    if J.shape[0] and J.shape[0] < A.dim:
        Q = A.quotient(J)
        if radical(Q, validate=False).shape[0]:
            raise ConsistencyError("quotient by the computed radical is not semisimple")


def socle_left(A: StructuredAlgebra, J: np.ndarray | None = None) -> np.ndarray:
    """``{x : J x = 0}``, the socle of the left regular module."""
    if J is None:
        J = radical(A)
    if J.shape[0] == 0:
        return np.eye(A.dim, dtype=np.int64)
    eqs = np.vstack([A.left_matrix(j) for j in J])
    N = linalg.nullspace_mod(eqs, A.p)
    return linalg.rref_mod(N, A.p)[0] if N.shape[0] else N


def _all_elements(n: int, p: int):
    return np.array(list(itertools.product(range(p), repeat=n)), dtype=np.int64)


def _nilpotent_batch(A: StructuredAlgebra, X: np.ndarray) -> np.ndarray:
    n = A.dim
    mats = np.einsum("ri,iab->rab", X, A.left_regular) % A.p
    P = mats.copy()
    for _ in range(max(1, (n - 1).bit_length())):
        P = np.einsum("rab,rbc->rac", P, P) % A.p
    # M^(2^k) with 2^k >= n vanishes iff M nilpotent
    return ~P.reshape(len(X), -1).any(axis=1)


def radical_bruteforce(A: StructuredAlgebra) -> np.ndarray:
    """Oracle: ``{a : a x nilpotent for every x in A}`` by full enumeration.

    Only for tiny algebras (``p^dim`` elements are enumerated twice over).
    """
    p, n = A.p, A.dim
    if p ** n > 1 << 12:
        raise ValueError("algebra too large for brute force")
    X = _all_elements(n, p)
    members = []
    for a in X:
        prods = np.einsum("i,rj,ijk->rk", a, X, A.C) % p
        if _nilpotent_batch(A, prods).all():
            members.append(a)
    M = np.array(members, dtype=np.int64).reshape(-1, n)
    R = linalg.rref_mod(M, p)[0] if M.shape[0] else M
    if p ** R.shape[0] != len(members):
        raise ConsistencyError("brute-force radical is not a subspace")
    return R


def _subspaces(n: int, p: int):
    """All subspaces of F_p^n as RREF matrices (small n only)."""
    for k in range(n + 1):
        for piv in itertools.combinations(range(n), k):
            free = [(r, c) for r in range(k) for c in range(piv[r] + 1, n) if c not in piv]
            for vals in itertools.product(range(p), repeat=len(free)):
                M = np.zeros((k, n), dtype=np.int64)
                for r, c in enumerate(piv):
                    M[r, c] = 1
                for (r, c), x in zip(free, vals):
                    M[r, c] = x
                yield M


def largest_nilpotent_ideal_bruteforce(A: StructuredAlgebra) -> np.ndarray:
    """Oracle: enumerate every subspace, keep nilpotent two-sided ideals,
    return the largest one."""
    if A.dim > 7 or (A.p > 2 and A.dim > 4):
        raise ValueError("algebra too large for subspace enumeration")
    best = np.zeros((0, A.dim), dtype=np.int64)
    for S in _subspaces(A.dim, A.p):
        if S.shape[0] <= best.shape[0]:
            continue
        if is_two_sided_ideal(A, S) and ideal_power_dims(A, S)[-1] == 0:
            best = S
    return best
