"""Left modules over F_p-algebras, free resolutions and Ext dimensions."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .. import linalg
from ..algebra import StructuredAlgebra
from ..grpcore import ResourceCapError
from .blocks import Layout, algebra_blocks

DEFAULT_RESOLUTION_CAP = 5
DEFAULT_FREE_DIM_CAP = 60000


@dataclass(frozen=True, eq=False)
class LeftModule:
    """``action[i]`` is the matrix of the basis element ``b_i`` (column vectors)."""
    algebra: StructuredAlgebra
    action: np.ndarray
    name: str = "M"

    @property
    def dim(self) -> int:
        return self.action.shape[1]

    @property
    def p(self) -> int:
        return self.algebra.p

    def act(self, a, x) -> np.ndarray:
        """``a . x`` for an algebra element ``a``."""
        return (np.tensordot(np.asarray(a), self.action, 1) @ np.asarray(x)) % self.p

    def rep(self, a) -> np.ndarray:
        return np.tensordot(np.asarray(a, dtype=np.int64), self.action, 1) % self.p

    def defect(self) -> int:
        """Number of basis pairs ``(i, j)`` violating ``rho(b_i) rho(b_j) = rho(b_i b_j)``,
        plus one if the unit does not act as the identity."""
        p = self.p
        A = self.algebra
        bad = int(((self.rep(A.unit) - np.eye(self.dim, dtype=np.int64)) % p).any())
        for i in range(A.dim):
            for j in range(A.dim):
                lhs = self.action[i] @ self.action[j] % p
                if ((lhs - self.rep(A.C[i, j])) % p).any():
                    bad += 1
        return bad


def regular_module(A: StructuredAlgebra) -> LeftModule:
    return LeftModule(A, A.left_regular % A.p, "A")


def free_action(A: StructuredAlgebra, n: int) -> np.ndarray:
    """Dense action of the basis on ``A^n`` with coordinates ``(copy, basis)``.

    Only for small ``n``; resolutions use ``free_orbit`` instead.
    """
    L = A.left_regular % A.p
    d = A.dim
    out = np.zeros((d, n * d, n * d), dtype=np.int64)
    for r in range(n):
        out[:, r * d:(r + 1) * d, r * d:(r + 1) * d] = L
    return out


def module_orbit(action: np.ndarray, v) -> np.ndarray:
    """Rows ``b_i . v`` for a module given by dense action matrices."""
    return np.matmul(action, np.asarray(v)).reshape(action.shape[0], -1)


def submodule_closure(M: LeftModule, vectors) -> linalg.Echelon:
    """Echelon basis of the submodule generated by ``vectors``."""
    E = linalg.Echelon(M.dim, M.p)
    for v in np.atleast_2d(vectors):
        E.add_many(module_orbit(M.action, v) % M.p)
    return E


def quotient_module(M: LeftModule, sub_rows, name: str = "M/N") -> LeftModule:
    p = M.p
    S = np.atleast_2d(np.asarray(sub_rows, dtype=np.int64)).reshape(-1, M.dim)
    R, piv = linalg.rref_mod(S, p) if S.shape[0] else (S, [])
    keep = [i for i in range(M.dim) if i not in set(piv)]

    def coords(v):
        v = v % p
        if piv:
            v = (v - v[piv] @ R) % p
        return v[keep]

    m = len(keep)
    act = np.zeros((M.algebra.dim, m, m), dtype=np.int64)
    for i in range(M.algebra.dim):
        for c, k in enumerate(keep):
            act[i, :, c] = coords(M.action[i][:, k])
    return LeftModule(M.algebra, act, name)


def submodule(M: LeftModule, rows, name: str = "N") -> LeftModule:
    """Submodule spanned by ``rows`` (must be closed), in the RREF basis of ``rows``."""
    p = M.p
    R, piv = linalg.rref_mod(np.atleast_2d(rows), p)
    k = R.shape[0]
    act = np.zeros((M.algebra.dim, k, k), dtype=np.int64)
    for i in range(M.algebra.dim):
        img = (M.action[i] @ R.T).T % p       # images of basis rows
        for c in range(k):
            act[i, :, c] = img[c][piv]
    return LeftModule(M.algebra, act, name)


def top_module(A: StructuredAlgebra, J: np.ndarray | None = None) -> LeftModule:
    """``A / rad(A)`` as a left module."""
    from .radical import radical
    if J is None:
        J = radical(A)
    return quotient_module(regular_module(A), J, "A/J")


def hom_dim(M: LeftModule, N: LeftModule) -> int:
    """``dim Hom_A(M, N)`` from the equations ``rho_N(b) X = X rho_M(b)``."""
    p = M.p
    m, n = M.dim, N.dim
    I_m, I_n = np.eye(m, dtype=np.int64), np.eye(n, dtype=np.int64)
    # vec(X) column-major: vec(P X Q) = (Q^T kron P) vec(X)
    eqs = [np.kron(I_m, N.action[i]) - np.kron(M.action[i].T, I_n)
           for i in range(M.algebra.dim)]
    E = np.vstack(eqs) % p
    return m * n - linalg.rank_mod(E, p)


# ---------------------------------------------------------------------------
# resolutions
# ---------------------------------------------------------------------------

def _ordered(rows: np.ndarray, order) -> np.ndarray:
    if order is None or order == "forward":
        return rows
    if order == "reverse":
        return rows[::-1]
    rng = np.random.default_rng(order)
    return rows[rng.permutation(rows.shape[0])]


def select_generators(orbit, candidates: np.ndarray, p: int,
                      target_dim: int | None = None) -> list:
    """Greedy module generators: keep a candidate when it lies outside the
    submodule generated so far.  ``orbit(v)`` returns the rows ``b_i . v``."""
    candidates = np.asarray(candidates)
    E = linalg.Echelon(candidates.shape[1], p)
    gens = []
    for v in candidates:
        if target_dim is not None and E.dim == target_dim:
            break
        if E.contains(v):
            continue
        gens.append(v % p)
        E.add_many(orbit(v) % p)
    return gens


def _image_basis(P: np.ndarray, p: int):
    """RREF rows and pivots of the column space of ``P``."""
    if P.shape[1] == 0:
        return np.zeros((0, P.shape[0]), dtype=np.int64), []
    R, piv = linalg.rref_mod(P.T % p, p)
    return R, piv


@dataclass
class Resolution:
    """Projective resolution ``... -> F_1 -> F_0 -> M`` with ``F_k`` a sum of
    summands ``A e_h`` (free modules when the only idempotent is the unit).

    ``gens[k][i]`` is the image of the generator ``e_{heads[k][i]}`` of the
    ``i``-th summand of ``F_k``: a vector of ``M`` for ``k = 0`` and of
    ``F_{k-1}`` otherwise, fixed by that idempotent.
    """
    module: LeftModule
    order: object = None
    cap: int = DEFAULT_RESOLUTION_CAP
    dim_cap: int = DEFAULT_FREE_DIM_CAP
    radical: np.ndarray | None = None   # if given, generators are pruned to a minimal set
    start: list | None = None           # preferred first candidates for generators of M
    gens: list = field(default_factory=list)
    heads: list = field(default_factory=list)
    kernels: list = field(default_factory=list)

    @property
    def algebra(self) -> StructuredAlgebra:
        return self.module.algebra

    @property
    def blocks(self):
        return algebra_blocks(self.algebra)

    def rank(self, k: int) -> int:
        """Number of summands of ``F_k``."""
        return len(self.gens[k])

    def layout(self, k: int) -> Layout:
        cache = self.__dict__.setdefault("_layouts", {})
        if k not in cache:
            cache[k] = Layout(self.algebra, self.heads[k])
        return cache[k]

    def _orbit(self, k: int):
        """Orbit map on the target of ``F_k -> ...``."""
        if k == 0:
            act = self.module.action
            return lambda v: module_orbit(act, v)
        return self.layout(k - 1).orbit

    def _target_dim(self, k: int) -> int:
        return self.module.dim if k == 0 else self.layout(k - 1).dim

    def _map_matrix(self, k: int) -> np.ndarray:
        """Linear matrix of ``F_k -> F_{k-1}`` (or ``-> M``)."""
        orbit = self._orbit(k)
        cols = [orbit(g)[self.blocks[h].cols].T for g, h in zip(self.gens[k], self.heads[k])]
        if not cols:
            return np.zeros((self._target_dim(k), 0), dtype=np.int64)
        return np.hstack(cols) % self.algebra.p

    def _select(self, orbit, candidates, target: int):
        p = self.algebra.p
        idems = [b.idempotent for b in self.blocks]
        E = linalg.Echelon(candidates.shape[1], p)
        gens, heads = [], []
        for v in candidates:
            if E.dim == target:
                break
            if E.contains(v):
                continue
            O = orbit(v) % p
            for h, e in enumerate(idems):
                w = e @ O % p
                if w.any() and not E.contains(w):
                    gens.append(w)
                    heads.append(h)
                    E.add_many(orbit(w) % p)
        if E.dim != target:
            raise linalg.LinalgError("generators do not span the module")
        return gens, heads

    def _prune(self, orbit, gens, heads):
        J = self.radical
        p = self.algebra.p
        if not gens or J is None or J.shape[0] == 0:
            return gens, heads
        J = np.asarray(J, dtype=np.int64)
        E = linalg.Echelon(len(gens[0]), p)
        for g in gens:
            E.add_many(J @ orbit(g) % p)
        kept = [(g, h) for g, h in zip(gens, heads) if E.add(g)]
        return [g for g, _ in kept], [h for _, h in kept]

    def extend(self, k: int) -> None:
        """Make sure ``F_0 .. F_k`` exist."""
        p = self.algebra.p
        while len(self.gens) <= k:
            j = len(self.gens)
            if j > self.cap:
                raise ResourceCapError(f"resolution length cap {self.cap} exceeded")
            orbit = self._orbit(j)
            if j == 0:
                cand = _ordered(np.eye(self.module.dim, dtype=np.int64), self.order)
                if self.start is not None:
                    cand = np.vstack([np.atleast_2d(self.start), cand]) % p
                target = self.module.dim
            else:
                cand = _ordered(self.kernel(j - 1), self.order)
                target = cand.shape[0]
            gens, heads = self._select(orbit, cand, target) if target else ([], [])
            gens, heads = self._prune(orbit, gens, heads)
            self.gens.append(gens)
            self.heads.append(heads)
            if self.layout(j).dim > self.dim_cap:
                raise ResourceCapError(f"projective module of dimension {self.layout(j).dim} "
                                       f"exceeds cap {self.dim_cap}")

    def kernel(self, k: int) -> np.ndarray:
        """Basis rows of ``ker(F_k -> F_{k-1})``, computed on demand."""
        self.extend(k)
        while len(self.kernels) <= k:
            j = len(self.kernels)
            D = self._map_matrix(j)
            p = self.algebra.p
            K = linalg.nullspace_mod(D, p) if D.shape[1] else np.zeros((0, 0), dtype=np.int64)
            self.kernels.append(K)
        return self.kernels[k]

    def component(self, k: int, i: int, r: int) -> np.ndarray:
        """Coefficient in ``A`` of generator ``i`` of ``F_k`` on summand ``r`` of ``F_{k-1}``."""
        return self.layout(k - 1).element(self.gens[k][i], r)

    def is_exact(self, upto: int) -> bool:
        """Rank check ``im d_{k+1} = ker d_k`` for ``k < upto``, plus surjectivity onto M."""
        self.extend(upto)
        p = self.algebra.p
        for k in range(upto):
            D = self._map_matrix(k + 1)
            K = self.kernel(k)
            if linalg.rank_mod(D, p) != K.shape[0]:
                return False
            if D.shape[1] and ((self._map_matrix(k) @ D) % p).any():
                return False
        return linalg.rank_mod(self._map_matrix(0), p) == self.module.dim


def hom_differential(res: Resolution, k: int, N: LeftModule) -> np.ndarray:
    """``delta_k: Hom(F_{k-1}, N) -> Hom(F_k, N)`` with ``Hom(A e, N) = e N``
    in the RREF coordinates of each ``e N``."""
    res.extend(k)
    p = N.p
    bases = [_image_basis(N.rep(b.idempotent), p) for b in res.blocks]
    prev, cur = res.heads[k - 1], res.heads[k]
    row_off = np.concatenate([[0], np.cumsum([bases[h][0].shape[0] for h in cur])]).astype(int)
    col_off = np.concatenate([[0], np.cumsum([bases[h][0].shape[0] for h in prev])]).astype(int)
    D = np.zeros((row_off[-1], col_off[-1]), dtype=np.int64)
    for i, hi in enumerate(cur):
        piv_i = bases[hi][1]
        for r, hr in enumerate(prev):
            Br = bases[hr][0]
            if Br.shape[0] == 0 or not piv_i:
                continue
            a = res.component(k, i, r)
            if not a.any():
                continue
            img = N.rep(a) @ Br.T % p
            D[row_off[i]:row_off[i + 1], col_off[r]:col_off[r + 1]] = img[piv_i]
    return D


def hom_space_dim(res: Resolution, k: int, N: LeftModule) -> int:
    res.extend(k)
    return sum(_image_basis(N.rep(res.blocks[h].idempotent), N.p)[0].shape[0]
               for h in res.heads[k])


def ext_dim(A: StructuredAlgebra, M: LeftModule, N: LeftModule, i: int,
            order=None, cap: int = DEFAULT_RESOLUTION_CAP, res: Resolution | None = None,
            J: np.ndarray | None = None, start=None) -> int:
    """``dim Ext^i_A(M, N)`` from the Hom complex of a projective resolution of ``M``."""
    if i < 0:
        raise ValueError("degree must be non-negative")
    if i + 1 > cap:
        raise ResourceCapError(f"degree {i} needs resolution length {i + 1} > cap {cap}")
    if res is None:
        res = Resolution(M, order=order, cap=cap, radical=J, start=start)
    res.extend(i + 1)
    p = A.p
    d_next = hom_differential(res, i + 1, N)
    z = hom_space_dim(res, i, N) - linalg.rank_mod(d_next, p)
    b = 0 if i == 0 else linalg.rank_mod(hom_differential(res, i, N), p)
    return z - b


def is_self_injective(A: StructuredAlgebra, J: np.ndarray | None = None, order=None) -> bool:
    """Self-injective iff ``Ext^1_A(A/J, A) = 0``."""
    from .radical import radical
    if J is None:
        J = radical(A)
    top = top_module(A, J)
    # A/J is cyclic, generated by the image of the unit
    one = quotient_coordinates(A.unit, J, A.p)
    return ext_dim(A, top, regular_module(A), 1, order=order, J=J, start=[one]) == 0


def quotient_coordinates(v, sub_rows, p: int) -> np.ndarray:
    """Coordinates of ``v`` in the basis of ``F_p^n / span(sub_rows)`` used by
    ``quotient_module``."""
    v = np.asarray(v, dtype=np.int64) % p
    S = np.atleast_2d(np.asarray(sub_rows, dtype=np.int64)).reshape(-1, v.shape[0])
    if S.shape[0] == 0:
        return v
    R, piv = linalg.rref_mod(S, p)
    keep = [i for i in range(v.shape[0]) if i not in set(piv)]
    return ((v - v[piv] @ R) % p)[keep]
