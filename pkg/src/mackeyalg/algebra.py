"""Coefficient rings and finite-rank algebras given by structure constants."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from . import linalg
from .grpcore import is_prime


class AlgebraError(ValueError):
    pass


class ConsistencyError(RuntimeError):
    """An internal validation of a computed object failed."""


@dataclass(frozen=True)
class CoefficientRing:
    """``Z``, ``F_p`` or ``Z/n``.  ``modulus == 0`` means the integers."""
    modulus: int = 0

    def __post_init__(self):
        if self.modulus < 0 or self.modulus == 1:
            raise ValueError(f"bad modulus {self.modulus}")

    @classmethod
    def integers(cls) -> "CoefficientRing":
        return cls(0)

    @classmethod
    def prime_field(cls, p: int) -> "CoefficientRing":
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        return cls(p)

    @classmethod
    def integers_mod(cls, n: int) -> "CoefficientRing":
        return cls(n)

    @property
    def tag(self) -> str:
        if self.modulus == 0:
            return "Integers"
        return f"PrimeField({self.modulus})" if self.is_field else f"IntegersModN({self.modulus})"

    @property
    def is_field(self) -> bool:
        return self.modulus != 0 and is_prime(self.modulus)

    def reduce(self, a):
        if self.modulus == 0:
            return a
        return np.asarray(a, dtype=np.int64) % self.modulus

    def is_unit(self, x: int) -> bool:
        x = int(x)
        if self.modulus == 0:
            return abs(x) == 1
        return gcd(x % self.modulus, self.modulus) == 1

    def __str__(self):
        return "Z" if self.modulus == 0 else (f"F{self.modulus}" if self.is_field
                                              else f"Z/{self.modulus}")


ZZ = CoefficientRing(0)


def GF(p: int) -> CoefficientRing:
    return CoefficientRing.prime_field(p)


@dataclass(frozen=True, eq=False)
class StructuredAlgebra:
    """Algebra with basis ``b_0..b_{n-1}`` and ``b_i b_j = sum_k C[i,j,k] b_k``."""
    ring: CoefficientRing
    labels: tuple
    C: np.ndarray
    unit: np.ndarray
    meta: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        n = len(self.labels)
        if self.C.shape != (n, n, n) or self.unit.shape != (n,):
            raise AlgebraError("structure constants do not match the basis")

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def p(self) -> int:
        return self.ring.modulus

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def mul(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        return self.ring.reduce(x @ np.tensordot(self.C, y, axes=([1], [0])))

    def left_matrix(self, x) -> np.ndarray:
        """Matrix of ``y -> x y`` acting on column vectors."""
        x = np.asarray(x, dtype=np.int64)
        return self.ring.reduce(np.einsum("i,ijk->kj", x, self.C))

    def right_matrix(self, y) -> np.ndarray:
        """Matrix of ``x -> x y`` acting on column vectors."""
        y = np.asarray(y, dtype=np.int64)
        return self.ring.reduce(np.einsum("j,ijk->ki", y, self.C))

    @property
    def left_regular(self) -> np.ndarray:
        """``L[i]`` is the matrix of left multiplication by ``b_i``."""
        return self.ring.reduce(np.transpose(self.C, (0, 2, 1)))

    def power(self, x, k: int) -> np.ndarray:
        y = self.unit.copy()
        for _ in range(k):
            y = self.mul(y, x)
        return y

    # --- checks -----------------------------------------------------------

    def unit_defect(self) -> int:
        """Number of basis elements on which the unit fails to be neutral."""
        L = self.left_matrix(self.unit)
        R = self.right_matrix(self.unit)
        I = np.eye(self.dim, dtype=np.int64)
        bad = (self.ring.reduce(L - I) != 0).any(axis=0) | (self.ring.reduce(R - I) != 0).any(axis=0)
        return int(bad.sum())

    def associativity_defect(self) -> int:
        """Number of basis triples with ``(b_i b_j) b_k != b_i (b_j b_k)``."""
        n = self.dim
        # float64 matmul is exact while |entries| * n * max|C| stays below 2^53
        C = self.C.astype(np.float64)
        if n and np.abs(C).max() ** 2 * n >= 2.0 ** 52:
            raise OverflowError("structure constants too large for the float check")
        flat_right = C.reshape(n, n * n)
        flat_left = C.reshape(n * n, n)
        bad = 0
        for i in range(n):
            lhs = (C[i] @ flat_right).reshape(n, n, n)      # (b_i b_j) b_k
            rhs = (flat_left @ C[i]).reshape(n, n, n)       # b_i (b_j b_k)
            diff = self.ring.reduce(np.rint(lhs - rhs).astype(np.int64))
            bad += int((diff != 0).any(axis=2).sum())
        return bad

    def is_commutative(self) -> bool:
        return not self.ring.reduce(self.C - self.C.transpose(1, 0, 2)).any()

    def validate(self) -> None:
        if self.unit_defect():
            raise ConsistencyError("unit is not two-sided neutral")
        if self.associativity_defect():
            raise ConsistencyError("multiplication is not associative")

    # --- constructions ----------------------------------------------------

    def base_change(self, ring: CoefficientRing) -> "StructuredAlgebra":
        if self.ring.modulus != 0 and ring.modulus != self.ring.modulus:
            raise AlgebraError("can only base-change from Z")
        return StructuredAlgebra(ring, self.labels, ring.reduce(self.C), ring.reduce(self.unit),
                                 dict(self.meta))

    def quotient(self, ideal_rows) -> "StructuredAlgebra":
        """``A / I`` over a prime field for a two-sided ideal spanned by rows."""
        p = self.p
        if not self.ring.is_field:
            raise AlgebraError("quotients only over prime fields")
        I = np.atleast_2d(np.asarray(ideal_rows, dtype=np.int64)).reshape(-1, self.dim)
        R, piv = linalg.rref_mod(I, p) if I.shape[0] else (I, [])
        keep = [i for i in range(self.dim) if i not in set(piv)]

        def coords(v):
            v = np.asarray(v) % p
            if piv:
                v = (v - v[piv] @ R) % p
            return v[keep]

        m = len(keep)
        Cq = np.zeros((m, m, m), dtype=np.int64)
        for a, i in enumerate(keep):
            for b, j in enumerate(keep):
                Cq[a, b] = coords(self.C[i, j])
        return StructuredAlgebra(self.ring, tuple(self.labels[i] for i in keep), Cq,
                                 coords(self.unit))

    def to_json(self) -> dict:
        return {"ring": str(self.ring), "basis": list(self.labels),
                "unit": [int(x) for x in self.unit],
                "structure_constants": [[[int(c) for c in self.C[i, j]]
                                         for j in range(self.dim)] for i in range(self.dim)]}


def algebra_from_table(ring: CoefficientRing, labels, products: dict, unit) -> StructuredAlgebra:
    """Convenience constructor: ``products[(i, j)]`` is the coefficient list of ``b_i b_j``."""
    n = len(labels)
    C = np.zeros((n, n, n), dtype=np.int64)
    for (i, j), v in products.items():
        C[i, j] = v
    return StructuredAlgebra(ring, tuple(labels), ring.reduce(C), ring.reduce(np.array(unit)))


def truncated_polynomial_algebra(p: int, k: int) -> StructuredAlgebra:
    """``F_p[x]/(x^k)`` with basis ``1, x, ..., x^{k-1}``."""
    C = np.zeros((k, k, k), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            if i + j < k:
                C[i, j, i + j] = 1
    unit = np.zeros(k, dtype=np.int64)
    unit[0] = 1
    return StructuredAlgebra(GF(p), tuple(["1"] + [f"x^{i}" for i in range(1, k)]), C, unit)


def matrix_algebra(p: int, n: int) -> StructuredAlgebra:
    """``M_n(F_p)`` with matrix-unit basis ``E_ab``."""
    labels = [f"E{a}{b}" for a in range(n) for b in range(n)]
    d = n * n
    C = np.zeros((d, d, d), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                C[a * n + b, b * n + c, a * n + c] = 1
    unit = np.zeros(d, dtype=np.int64)
    for a in range(n):
        unit[a * n + a] = 1
    return StructuredAlgebra(GF(p), tuple(labels), C, unit)


def product_algebra(*algs: StructuredAlgebra) -> StructuredAlgebra:
    ring = algs[0].ring
    d = sum(A.dim for A in algs)
    C = np.zeros((d, d, d), dtype=np.int64)
    unit = np.zeros(d, dtype=np.int64)
    labels = []
    o = 0
    for t, A in enumerate(algs):
        n = A.dim
        C[o:o + n, o:o + n, o:o + n] = A.C
        unit[o:o + n] = A.unit
        labels += [f"{t}:{l}" for l in A.labels]
        o += n
    return StructuredAlgebra(ring, tuple(labels), C, unit)


def upper_triangular_algebra(p: int, n: int) -> StructuredAlgebra:
    """Upper triangular ``n x n`` matrices over F_p."""
    idx = [(a, b) for a in range(n) for b in range(a, n)]
    pos = {e: i for i, e in enumerate(idx)}
    d = len(idx)
    C = np.zeros((d, d, d), dtype=np.int64)
    for (a, b) in idx:
        for (c, e) in idx:
            if b == c:
                C[pos[(a, b)], pos[(c, e)], pos[(a, e)]] = 1
    unit = np.zeros(d, dtype=np.int64)
    for a in range(n):
        unit[pos[(a, a)]] = 1
    return StructuredAlgebra(GF(p), tuple(f"E{a}{b}" for a, b in idx), C, unit)
