"""Necessary-condition battery for Mackey algebras.

For square-free group orders the integral Mackey algebra should have
``Ext^2(N, mu_Z) = 0`` for every test module ``N``; for other orders the
mod-p algebras at primes with ``p^2 | |G|`` should fail to be self-injective.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

import numpy as np

from ..algebra import GF, ZZ
from ..burncat import mackey_algebra
from ..grpcore import DEFAULT_ORDER_CAP, Group, build_group, is_square_free, parse_group_spec, prime_factors
from .integral import IntModule, from_modp, int_ext
from .modules import (DEFAULT_RESOLUTION_CAP, LeftModule, is_self_injective, quotient_module,
                      regular_module, submodule)
from .radical import radical

TEST_MODULES = ("top", "residue", "corner_projective")


@dataclass
class BatteryConfig:
    groups: list = field(default_factory=lambda: ["cyclic:2", "cyclic:3", "cyclic:6", "sym:3"])
    primes: list | None = None              # default: all primes dividing |G|
    degree: int = 2
    modules: list = field(default_factory=lambda: list(TEST_MODULES))
    order_cap: int = DEFAULT_ORDER_CAP
    resolution_cap: int = DEFAULT_RESOLUTION_CAP

    @classmethod
    def from_json(cls, text: str) -> "BatteryConfig":
        data = json.loads(text)
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValueError(f"unknown battery keys: {sorted(unknown)}")
        cfg = cls(**data)
        bad = set(cfg.modules) - set(TEST_MODULES)
        if bad:
            raise ValueError(f"unknown test modules: {sorted(bad)}")
        return cfg


@dataclass
class BatteryRecord:
    group: str
    check: str
    module: str | None
    p: int | None
    value: str
    expected: str
    passed: bool
    seconds: float

    def to_json(self, timestamps: bool = True) -> dict:
        d = dict(self.__dict__)
        if not timestamps:
            d.pop("seconds")
        return d


def _top_of_corner(A, J, e) -> LeftModule:
    """``A e / J e`` for an idempotent ``e``."""
    p = A.p
    Ae = np.array([A.mul(A.basis_vector(i), e) for i in range(A.dim)]) % p
    reg = regular_module(A)
    P = submodule(reg, Ae, "Ae")
    from .. import linalg
    R, piv = linalg.rref_mod(Ae, p)
    Je = np.array([A.mul(j, e) for j in J]) % p if len(J) else np.zeros((0, A.dim), dtype=np.int64)
    # coordinates of J e inside the basis R of A e
    rows = [v[piv] for v in Je] if len(Je) else []
    sub = np.array(rows, dtype=np.int64).reshape(-1, P.dim)
    return quotient_module(P, sub, "residue")


def test_modules(G: Group, p: int, names=TEST_MODULES) -> dict:
    """Named test modules over ``mu_Z(G)``: F_p-modules killed by ``p`` or lattices."""
    S = mackey_algebra(G, ZZ).algebra
    mu = mackey_algebra(G, GF(p))
    A = mu.algebra
    out = {}
    J = radical(A) if {"top", "residue"} & set(names) else None
    e = mu.idempotent(len(G.subgroup_classes()) - 1)
    for name in names:
        if name == "top":
            out[name] = from_modp(S, quotient_module(regular_module(A), J, "top"), p)
        elif name == "residue":
            out[name] = from_modp(S, _top_of_corner(A, J, e), p)
        elif name == "corner_projective":
            out[name] = _projective(S, e)
        else:
            raise ValueError(f"unknown test module {name!r}")
    return out


def _projective(S, e) -> IntModule:
    """The lattice ``S e`` spanned by the basis elements ``b_i e``."""
    from .. import linalg
    rows = np.array([S.mul(S.basis_vector(i), e) for i in range(S.dim)], dtype=object)
    B = linalg.hnf(rows)
    act = np.zeros((S.dim, B.shape[0], B.shape[0]), dtype=np.int64)
    for i in range(S.dim):
        img = np.array([S.mul(S.basis_vector(i), b.astype(np.int64)) for b in B], dtype=object)
        act[i] = linalg.coordinates(B, img).T
    return IntModule(S, act, 0, "Se")


def gorenstein_battery(G: Group | str, degree: int = 2, config: BatteryConfig | None = None) -> list:
    """Run the battery for one group; returns a list of ``BatteryRecord``."""
    cfg = config or BatteryConfig()
    if isinstance(G, str):
        G = build_group(parse_group_spec(G), cap=cfg.order_cap)
    name = G.name
    primes = cfg.primes or prime_factors(G.order)
    primes = [p for p in primes if G.order % p == 0]
    records = []
    if is_square_free(G.order):
        S = mackey_algebra(G, ZZ, cap=cfg.order_cap).algebra
        for p in primes:
            for mname, N in test_modules(G, p, cfg.modules).items():
                t0 = time.perf_counter()
                E = int_ext(S, N, degree, cap=max(cfg.resolution_cap, degree + 1))
                records.append(BatteryRecord(name, f"ext{degree}_vanishes", mname,
                                             p if N.modulus else None, str(E), "0", E.is_zero,
                                             time.perf_counter() - t0))
        return _dedupe(records)
    for p in primes:
        if G.order % (p * p):
            continue
        t0 = time.perf_counter()
        A = mackey_algebra(G, GF(p), cap=cfg.order_cap).algebra
        si = is_self_injective(A)
        records.append(BatteryRecord(name, "self_injective", None, p, str(si).lower(), "false",
                                     not si, time.perf_counter() - t0))
    return records


def _dedupe(records):
    # the corner projective is a lattice; it only needs to be checked once
    seen, out = set(), []
    for r in records:
        key = (r.check, r.module, r.p)
        if key not in seen:
            seen.add(key)
            out.append(r)
    return out


def run_battery(config: BatteryConfig) -> list:
    out = []
    for spec in config.groups:
        out += gorenstein_battery(spec, config.degree, config)
    return out
