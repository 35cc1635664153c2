"""Named checks behind the CLI commands and the reproduction suite.

Each function returns a plain dict of computed values; the callers attach
expectations (from the reference manifest or from theory) and judge them.
"""
from __future__ import annotations

import json
import re
from importlib import resources
from pathlib import Path

import numpy as np

from . import linalg
from .algebra import GF, ZZ, CoefficientRing
from .burncat import canonicalize_span, hom_basis, mackey_algebra, mackey_dimension_oracle, \
    socle_witness_check
from .burnring import (_render, _subgroup_label, burnside_algebra, class_names, form_certificate,
                       gustafson_form, klein_substituted_presentation, modp_burnside_socle,
                       order_p_sum, rognerud_compatibility, standard_presentation)
from .fdalg import (gorenstein_battery, is_self_injective, one_dimensional_module, radical,
                    rees_reduction_check, symmetric_form_space, unit_retraction_exists)
from .fdalg.battery import BatteryConfig
from .grpcore import Group, build_group, is_square_free, prime_factors, unique_class_per_divisor
from .gset import basis_product, table_of_marks
from .report import Record, timed

_LABEL = re.compile(r"G/([A-Za-z0-9]+)")


def load_manifest(path=None) -> dict:
    if path is None:
        text = resources.files("mackeyalg").joinpath("data/reference_values.json").read_text(
            encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    doc = json.loads(text)
    if "checks" not in doc:
        raise ValueError("manifest has no 'checks' list")
    return doc


def relabel(text: str, labels: dict | None) -> str:
    if not labels:
        return text
    return _LABEL.sub(lambda m: "G/" + labels.get(m.group(1), m.group(1)), text)


def class_index(G: Group, label: str) -> int:
    for i in range(len(G.subgroup_classes())):
        if _subgroup_label(G, i) == label:
            return i
    raise ValueError(f"no subgroup class labelled {label!r} in {G.name}")


def render_combo(mu, v, labels=None) -> dict:
    return {relabel(s.render(legs=False), labels): c for s, c in mu.combo(v).items()}


# --- groups and Burnside rings ---------------------------------------------

def group_info(G: Group) -> dict:
    cls = G.subgroup_classes()
    names = class_names(G)
    return {
        "name": G.name, "order": G.order, "abelian": G.is_abelian(),
        "square_free": is_square_free(G.order),
        "prime_factors": {str(p): e for p, e in prime_factors(G.order).items()},
        "one_class_per_divisor": unique_class_per_divisor(G),
        "subgroup_classes": [{"label": _subgroup_label(G, c.index), "name": names[c.index],
                              "order": c.order, "conjugates": c.size} for c in cls],
    }


def burnside_table(G: Group, R: CoefficientRing = ZZ) -> dict:
    A = burnside_algebra(G, R)
    names = A.meta["names"]
    T = table_of_marks(G)
    products = {}
    for i in range(A.dim):
        for j in range(i, A.dim):
            products[f"{names[i]}*{names[j]}"] = _render(A.C[i, j], names, A.p)
    return {"ring": str(R), "basis": dict(zip(names, A.labels)),
            "marks": T.to_json(), "products": products}


def burnside_present(G: Group, R: CoefficientRing = ZZ) -> dict:
    out = {"standard": standard_presentation(G, R)}
    p = R.modulus
    if p and sum(1 for c in G.subgroup_classes() if c.order == p) >= 2:
        out["substituted"] = klein_substituted_presentation(G, p)
    return out


def _socle_rows(G: Group, p: int) -> list[str]:
    names = class_names(G)
    return [_render(r, names, p) for r in modp_burnside_socle(G, p)]


def burnside_ring_check(entry: dict, cap: int) -> dict:
    G = build_group(entry["group"], cap=cap)
    p = entry["p"]
    out = {"relations_Z": standard_presentation(G)["relations"],
           "relations_mod_p": standard_presentation(G, GF(p))["relations"],
           "socle": _socle_rows(G, p)}
    soc = modp_burnside_socle(G, p)
    out["socle_dim"] = int(soc.shape[0])
    if entry.get("substitute"):
        sub = klein_substituted_presentation(G, p)
        out["substitution"] = sub["substitution"]
        out["relations_substituted"] = sub["relations"]
    words = entry.get("socle_words")
    if words:
        W = np.array([_word_element(G, w, p) for w in words], dtype=np.int64) % p
        both = np.vstack([soc, W])
        out["socle_spanned_by_words"] = bool(
            linalg.rank_mod(W, p) == soc.shape[0] == linalg.rank_mod(both, p))
    return out


def _word_element(G: Group, word: str, p: int) -> np.ndarray:
    """Element of ``F_pB(G)`` named by a product of class letters (``s`` is
    the sum over subgroups of order p)."""
    A = burnside_algebra(G, GF(p))
    names = A.meta["names"]
    x = A.unit
    for ch in word:
        y = order_p_sum(G, p) % p if ch == "s" else A.basis_vector(names.index(ch))
        x = A.mul(x, y)
    return x


def gustafson_report(G: Group, R: CoefficientRing = ZZ) -> dict:
    beta = gustafson_form(G, R)
    cert = form_certificate(beta)
    return {"ring": str(R), "gram": beta.gram, "det": cert.det, "symmetric": cert.symmetric,
            "associative": cert.associative, "unimodular": cert.nondegenerate,
            "compatible": rognerud_compatibility(G, R)}


# --- Mackey algebras -----------------------------------------------------------

def mackey_dim(G: Group, cap: int) -> dict:
    return {"dim": mackey_algebra(G, ZZ, cap=cap).dim}


def witnesses(G: Group, p: int) -> dict:
    """Corner elements ``g = [G/1]`` and ``s = sum of [G/H]`` over order-p
    subgroups, as integer vectors of the class basis."""
    cls = G.subgroup_classes()
    g = np.zeros(len(cls), dtype=np.int64)
    g[cls.trivial] = 1
    return {"g": g, "s": order_p_sum(G, p)}


def mackey_compose(G: Group, R: CoefficientRing, p: int, cap: int) -> dict:
    """Composites ``f o g`` and ``f o s`` for every basis span ``f: G/G -> G/H``
    with ``H`` proper."""
    mu = mackey_algebra(G, R, cap=cap)
    cls = G.subgroup_classes()
    wit = {k: mu.corner_embed(v) for k, v in witnesses(G, p).items()}
    out = {}
    for t in range(len(cls)):
        if t == cls.whole:
            continue
        for f in hom_basis(G, cls.whole, t):
            fv = mu.vector({f: 1})
            out[f.render(legs=False)] = {f"f{k}": render_combo(mu, mu.algebra.mul(fv, x))
                                         for k, x in wit.items()}
    return {"ring": str(R), "p_for_s": p, "composites": out}


def composites_check(entry: dict, cap: int) -> dict:
    G = build_group(entry["group"], cap=cap)
    p = entry["p"]
    labels = entry.get("labels")
    cls = G.subgroup_classes()
    mid = class_index(G, entry["f"]["middle"])
    tgt = class_index(G, entry["f"]["target"])
    f = canonicalize_span(G, cls[mid].rep, 0, 0, cls.whole, tgt)
    wit = witnesses(G, p)
    other = 3 if p == 2 else 2
    out = {"f": relabel(f.render(legs=False), labels)}
    for R, suffix in ((ZZ, ""), (GF(p), f"_mod_{p}"), (GF(other), f"_mod_{other}")):
        mu = mackey_algebra(G, R, cap=cap)
        fv = mu.vector({f: 1})
        for k, x in wit.items():
            out[f"f{k}{suffix}"] = render_combo(mu, mu.algebra.mul(fv, mu.corner_embed(x)), labels)
    if entry.get("products"):
        prods = {}
        for a, b in entry["products"]:
            X = basis_product(G, class_index(G, a), class_index(G, b))
            key = f"G/{labels.get(a, a)} x G/{labels.get(b, b)}" if labels else f"G/{a} x G/{b}"
            prods[key] = {relabel(f"G/{_subgroup_label(G, i)}", labels): int(m)
                          for i, m in enumerate(X.mult) if m}
        out["products"] = prods
    out["witnesses_in_socle"] = socle_witness_check(G, p).socle_not_simple
    out[f"self_injective_mod_{p}"] = is_self_injective(mackey_algebra(G, GF(p), cap=cap).algebra)
    return out


def hom_dimension_law(G: Group) -> dict:
    """``dim Hom(G/G, G/H)`` against the rank of ``B(H)``."""
    cls = G.subgroup_classes()
    dims = {}
    ok = True
    for c in cls:
        hom = len(hom_basis(G, cls.whole, c.index))
        rank = len(G.subgroup_as_group(c.rep).subgroup_classes())
        dims[_subgroup_label(G, c.index)] = [hom, rank]
        ok = ok and hom == rank
    return {"law_holds": ok, "dims": dims}


# --- homological checks --------------------------------------------------------

def self_injective_report(G: Group, p: int, cap: int) -> dict:
    A = mackey_algebra(G, GF(p), cap=cap).algebra
    J = radical(A)
    si = is_self_injective(A, J)
    return {"p": p, "dim": A.dim, "radical_dim": int(len(J)), "self_injective": si,
            "finding": "self-injective" if si else "not self-injective"}


def residue_module(G: Group, p: int):
    """``F_p`` with ``[G/H]`` acting by its number of ``G``-fixed points."""
    A = burnside_algebra(G, GF(p))
    cls = G.subgroup_classes()
    values = [1 if i == cls.whole else 0 for i in range(len(cls))]
    return one_dimensional_module(A, values, "residue")


def rees_report(G: Group, p: int, degrees, cap: int) -> dict:
    S = burnside_algebra(G, ZZ)
    N = residue_module(G, p)
    out = {}
    for i in degrees:
        out[str(i)] = rees_reduction_check(S, p, N, i, cap=max(cap, i + 2)).to_json()
    return out


def battery_report(G: Group, degree: int, cfg: BatteryConfig) -> dict:
    recs = gorenstein_battery(G, degree, cfg)
    return {"all_vanish" if is_square_free(G.order) else "all_obstructed":
            all(r.passed for r in recs),
            "records": [r.to_json(timestamps=False) for r in recs]}


def form_hypotheses(groups, negative: dict | None, cap: int) -> dict:
    detail = {}
    retract, forms = True, True
    for spec in groups:
        G = build_group(spec, cap=cap)
        r = unit_retraction_exists(mackey_algebra(G, ZZ, cap=cap).algebra)
        st = {str(p): symmetric_form_space(burnside_algebra(G, GF(p))).status
              for p in prime_factors(G.order)}
        detail[spec] = {"unit_retraction": r, "corner_forms": st}
        retract = retract and r
        forms = forms and all(s == "exists" for s in st.values())
    out = {"unit_retraction": retract, "corner_forms": "exists" if forms else "missing",
           "detail": detail}
    if negative:
        G = build_group(negative["group"], cap=cap)
        out["negative_forms"] = symmetric_form_space(
            burnside_algebra(G, GF(negative["p"]))).status
    return out


# --- reproduction suite ------------------------------------------------------------

def _per_group(entry, cap, fn) -> dict:
    return {spec: fn(build_group(spec, cap=cap)) for spec in entry["groups"]}


def run_entry(entry: dict, cap: int = 24, resolution_cap: int = 5) -> Record:
    kind = entry["kind"]
    if kind == "burnside_ring":
        fn = lambda: burnside_ring_check(entry, cap)
    elif kind == "composites":
        fn = lambda: composites_check(entry, cap)
    elif kind == "self_injective":
        fn = lambda: _per_group(entry, cap, lambda G: is_self_injective(
            mackey_algebra(G, GF(entry["p"]), cap=cap).algebra))
    elif kind == "gustafson":
        fn = lambda: _per_group(entry, cap, gustafson_report)
    elif kind == "hom_dimension":
        fn = lambda: _hom_law_many(entry, cap)
    elif kind == "form_hypotheses":
        fn = lambda: form_hypotheses(entry["groups"], entry.get("negative"), cap)
    elif kind == "rees":
        fn = lambda: rees_report(build_group(entry["group"], cap=cap), entry["p"],
                                 entry["degrees"], resolution_cap)
    elif kind == "battery":
        bcfg = BatteryConfig(order_cap=cap, resolution_cap=resolution_cap)
        fn = lambda: _per_group(entry, cap,
                                lambda G: battery_report(G, entry.get("degree", 2), bcfg))
    else:
        raise ValueError(f"unknown check kind {kind!r}")
    return timed(entry["id"], entry["anchor"], fn, entry.get("expected"), "manifest")


def _hom_law_many(entry, cap) -> dict:
    per = _per_group(entry, cap, hom_dimension_law)
    return {"law_holds": all(v["law_holds"] for v in per.values()), "groups": per}
