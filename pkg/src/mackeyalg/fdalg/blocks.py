"""Projective summands ``A e`` for basis-adapted idempotents.

An idempotent ``e`` is basis-adapted when every basis element satisfies
``b_j e = b_j`` or ``b_j e = 0``; then ``A e`` is spanned by a subset of the
basis and is a free abelian group even over Z.  The unit is always adapted,
so the trivial decomposition ``1 = 1`` recovers free modules.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..algebra import AlgebraError, StructuredAlgebra


@dataclass(frozen=True, eq=False)
class Block:
    idempotent: np.ndarray
    cols: np.ndarray            # basis indices spanning A e

    @property
    def dim(self) -> int:
        return len(self.cols)


def algebra_blocks(A: StructuredAlgebra) -> tuple:
    """Blocks for ``A.meta['idempotents']`` (default: the unit alone), checked
    to be orthogonal, adapted and summing to the unit."""
    cached = A.meta.get("_blocks")
    if cached is not None:
        return cached
    idems = A.meta.get("idempotents") or [A.unit]
    red = A.ring.reduce
    blocks = []
    total = np.zeros(A.dim, dtype=np.int64)
    for e in idems:
        e = np.asarray(e, dtype=np.int64)
        R = A.right_matrix(e)           # column j is b_j e
        cols = []
        for j in range(A.dim):
            col = red(R[:, j])
            if not np.any(col):
                continue
            if not (col[j] == 1 and np.count_nonzero(col) == 1):
                raise AlgebraError("idempotent is not adapted to the basis")
            cols.append(j)
        blocks.append(Block(e, np.array(cols, dtype=np.int64)))
        total = total + e
    if np.any(red(total - A.unit)):
        raise AlgebraError("idempotents do not sum to the unit")
    for a, x in enumerate(idems):
        for b, y in enumerate(idems):
            target = x if a == b else np.zeros(A.dim, dtype=np.int64)
            if np.any(red(A.mul(x, y) - target)):
                raise AlgebraError("idempotents are not orthogonal")
    blocks = tuple(blocks)
    A.meta["_blocks"] = blocks
    return blocks


class Layout:
    """A direct sum ``F = A e_{h_0} + A e_{h_1} + ...`` in compact coordinates."""

    def __init__(self, A: StructuredAlgebra, heads, dtype=np.int64):
        self.algebra = A
        self.blocks = algebra_blocks(A)
        self.heads = list(heads)
        sizes = [self.blocks[h].dim for h in self.heads]
        self.offsets = np.concatenate([[0], np.cumsum(sizes)]).astype(int)
        self.dim = int(self.offsets[-1])
        L = np.asarray(A.left_regular, dtype=np.int64)
        self._local = {h: np.ascontiguousarray(L[:, b.cols][:, :, b.cols])
                       for h, b in enumerate(self.blocks) if h in set(self.heads)}
        self._bound = int(np.abs(L).max()) * A.dim if L.size else 0
        self.dtype = dtype

    def part(self, v, r: int) -> np.ndarray:
        return np.asarray(v)[self.offsets[r]:self.offsets[r + 1]]

    def element(self, v, r: int) -> np.ndarray:
        """Summand ``r`` of ``v`` as an element of ``A``."""
        out = np.zeros(self.algebra.dim, dtype=np.asarray(v).dtype)
        out[self.blocks[self.heads[r]].cols] = self.part(v, r)
        return out

    def orbit(self, v) -> np.ndarray:
        """Rows ``b_i . v`` for all basis elements ``b_i``."""
        v = np.asarray(v)
        if not self.heads:
            return np.zeros((self.algebra.dim, 0), dtype=self.dtype)
        big = v.dtype == object and v.size and max(abs(int(x)) for x in v.flat)
        if big and big * self._bound >= 1 << 62:
            local = {h: M.astype(object) for h, M in self._local.items()}
        else:
            v = v.astype(np.int64)
            local = self._local
        parts = [local[h] @ self.part(v, r) for r, h in enumerate(self.heads)]
        out = np.concatenate(parts, axis=1)
        return out.astype(self.dtype) if out.dtype != self.dtype else out

    def generator_columns(self, g, h: int) -> np.ndarray:
        """Matrix of ``A e_h -> F``, ``x -> x g`` (columns indexed by ``cols(h)``)."""
        return self.orbit(g)[self.blocks[h].cols].T
