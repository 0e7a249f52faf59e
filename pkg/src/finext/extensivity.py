"""Decision procedures for decomposition-respecting morphisms.

A morphism f: A -> X is *extensive* when it interacts correctly with every
binary coproduct decomposition of X:

- condition one: f admits pullbacks along both legs of every certified
  coproduct cocone into X, and the two pulled-back legs into A form a
  certified coproduct cocone themselves (a missing pullback is a failure —
  the condition demands existence);
- condition two: in every commuting two-square diagram whose bottom row is
  a certified coproduct cocone into X and whose top row is a certified
  coproduct cocone into A, both squares are pullbacks.

*Coextensive* is the same property in the opposite category (products and
pushouts); every co-side check here literally runs the primal check in the
dual category and translates the witness vocabulary back.

All quantifications are exhaustive over the finite category.  Results are
three-valued (`pass` / `fail` / `inapplicable`) with serializable witnesses.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence

from .fincat import (
    FinCategory,
    dual_of,
    morphisms_of_class,
    _iso_info,
    _split_mono_witness,
)
from . import limits

__all__ = [
    "CheckStatus",
    "check_e1",
    "check_e2",
    "check_c1",
    "check_c2",
    "is_extensive_morphism",
    "is_coextensive_morphism",
    "category_report",
    "all_binary_coproducts_exist",
    "all_binary_products_exist",
    "coproduct_disjointness",
    "complement_uniqueness",
    "is_boolean_category",
    "has_binary_srp",
    "has_finite_srp",
    "is_M_extensive",
    "is_M_coextensive",
    "commutation_check",
]


@dataclass
class CheckStatus:
    """Outcome of one check: pass / fail / inapplicable + witness data.

    fail and inapplicable always carry a witness dict (with a "kind" key);
    pass may carry statistics in details."""

    status: str
    witness: dict | None = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    @property
    def failed(self) -> bool:
        return self.status == "fail"

    def as_dict(self) -> dict:
        out: dict[str, Any] = {"status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.details:
            out["details"] = self.details
        return out


def _ok(**details) -> CheckStatus:
    return CheckStatus("pass", None, details)


def _fail(witness: dict, **details) -> CheckStatus:
    return CheckStatus("fail", witness, details)


def _na(witness: dict, **details) -> CheckStatus:
    return CheckStatus("inapplicable", witness, details)


# Witness-kind translation between the primal vocabulary and the dual one.
_DUAL_KIND = {
    "missing-pullback": "missing-pushout",
    "top-row-not-coproduct": "bottom-row-not-product",
    "square-not-pullback": "square-not-pushout",
    "no-initial": "no-terminal",
    "pullback-legs-not-in-class": "pushout-legs-not-in-class",
    "square-legs-not-in-class": "square-legs-not-in-class",
}


def _dualized(st: CheckStatus) -> CheckStatus:
    if st.witness and st.witness.get("kind") in _DUAL_KIND:
        w = dict(st.witness)
        w["kind"] = _DUAL_KIND[w["kind"]]
        # In the co-side diagram the domain-side product row is the top row,
        # which the primal run on the dual category labels "bottom".
        if "top" in w and "bottom" in w:
            w["top"], w["bottom"] = w["bottom"], w["top"]
        if w["kind"] == "bottom-row-not-product":
            w["cospan"] = w.pop("span")
            w["cospan_apexes"] = w.pop("span_apexes")
        return CheckStatus(st.status, w, st.details)
    return st


# -- condition one ------------------------------------------------------------


def check_e1(cat: FinCategory, mid: str) -> CheckStatus:
    """Pullbacks along every certified coproduct cocone into cod f exist and
    the pulled-back span is itself a certified coproduct cocone."""
    f = cat.m(mid)
    x = cat._cod_l[f]
    bases = limits.coproduct_bases(cat, x)
    for u, v in bases:
        spans = []
        for leg in (u, v):
            w = limits.pullback(cat, f, leg)
            if w is None:
                return _fail(
                    {
                        "kind": "missing-pullback",
                        "morphism": mid,
                        "base": [cat.mid(u), cat.mid(v)],
                        "along": cat.mid(leg),
                    },
                    bases=len(bases),
                )
            spans.append(w)
        q1, q2 = spans[0].legs[0], spans[1].legs[0]
        if not limits.is_coproduct_cocone(cat, q1, q2):
            return _fail(
                {
                    "kind": "top-row-not-coproduct",
                    "morphism": mid,
                    "base": [cat.mid(u), cat.mid(v)],
                    "span": [cat.mid(q1), cat.mid(q2)],
                    "span_apexes": [cat.oid(spans[0].apex), cat.oid(spans[1].apex)],
                },
                bases=len(bases),
            )
    return _ok(bases=len(bases))


# -- condition two ------------------------------------------------------------


def _e2_side_index(cat: FinCategory, x: int):
    """Per-codomain index for the two-square quantification: maps
    (top-part object, composite leg into x) -> [(bottom-base idx, filler)].

    Independent of the middle morphism, so shared by every f into x."""
    cache = cat._cache.setdefault("e2_side_index", {})
    if x in cache:
        return cache[x]
    bottoms = limits.coproduct_bases(cat, x)
    n = len(cat.objects)
    side1: dict[tuple[int, int], list[tuple[int, int]]] = {}
    side2: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for bi, (u, v) in enumerate(bottoms):
        for t in range(n):
            for w, gs in cat.postcompose_fibers(u, t).items():
                side1.setdefault((t, w), []).extend((bi, g) for g in gs)
            for w, gs in cat.postcompose_fibers(v, t).items():
                side2.setdefault((t, w), []).extend((bi, g) for g in gs)
    cache[x] = (bottoms, side1, side2)
    return cache[x]


def _e2_instances(cat: FinCategory, f: int):
    """All (top base, bottom base, filler pair) instances for f's diagram."""
    a, x = cat._dom_l[f], cat._cod_l[f]
    tops = limits.coproduct_bases(cat, a)
    bottoms, side1, side2 = _e2_side_index(cat, x)
    for x1, x2 in tops:
        w1 = cat.compose(f, x1)
        w2 = cat.compose(f, x2)
        l1 = side1.get((cat._dom_l[x1], w1))
        if not l1:
            continue
        l2 = side2.get((cat._dom_l[x2], w2))
        if not l2:
            continue
        by_base: dict[int, list[int]] = {}
        for bi, g2 in l2:
            by_base.setdefault(bi, []).append(g2)
        for bi, g1 in l1:
            g2s = by_base.get(bi)
            if not g2s:
                continue
            u, v = bottoms[bi]
            for g2 in g2s:
                yield (x1, x2, u, v, g1, g2)


def check_e2(cat: FinCategory, mid: str) -> CheckStatus:
    """Whenever top and bottom rows are certified coproduct cocones and the
    verticals commute, both squares must be pullbacks."""
    f = cat.m(mid)
    count = 0
    for x1, x2, u, v, g1, g2 in _e2_instances(cat, f):
        count += 1
        for side, (leg, top, filler) in (("left", (u, x1, g1)), ("right", (v, x2, g2))):
            if not limits.is_pullback_square(cat, f, leg, top, filler):
                return _fail(
                    {
                        "kind": "square-not-pullback",
                        "morphism": mid,
                        "top": [cat.mid(x1), cat.mid(x2)],
                        "bottom": [cat.mid(u), cat.mid(v)],
                        "verticals": [cat.mid(g1), cat.mid(g2)],
                        "side": side,
                    },
                    instances=count,
                )
    return _ok(instances=count)


# -- dual side ------------------------------------------------------------------


def check_c1(cat: FinCategory, mid: str) -> CheckStatus:
    """Pushouts along every certified product cone out of dom f exist and the
    pushed-out cospan is a certified product cone (condition one, dualized)."""
    return _dualized(check_e1(dual_of(cat), mid))


def check_c2(cat: FinCategory, mid: str) -> CheckStatus:
    """Product rows force pushout squares (condition two, dualized)."""
    return _dualized(check_e2(dual_of(cat), mid))


def is_extensive_morphism(cat: FinCategory, mid: str) -> CheckStatus:
    e1 = check_e1(cat, mid)
    if e1.failed:
        return CheckStatus("fail", e1.witness, {"failed_condition": "one", **e1.details})
    e2 = check_e2(cat, mid)
    if e2.failed:
        return CheckStatus("fail", e2.witness, {"failed_condition": "two", **e2.details})
    return _ok(**{**e1.details, **e2.details})


def is_coextensive_morphism(cat: FinCategory, mid: str) -> CheckStatus:
    st = is_extensive_morphism(dual_of(cat), mid)
    return _dualized(st)


# -- category-level aggregates ----------------------------------------------------


def all_binary_coproducts_exist(cat: FinCategory) -> bool:
    n = len(cat.objects)
    return all(
        limits.coproduct(cat, a, b) is not None for a in range(n) for b in range(n)
    )


def all_binary_products_exist(cat: FinCategory) -> bool:
    return all_binary_coproducts_exist(dual_of(cat))


def _inclusion_set(cat: FinCategory) -> frozenset[int]:
    s = cat._cache.get("inclusions")
    if s is None:
        acc: set[int] = set()
        for x in range(len(cat.objects)):
            for u, v in limits.coproduct_bases(cat, x):
                acc.add(u)
                acc.add(v)
        s = frozenset(acc)
        cat._cache["inclusions"] = s
    return s


def category_report(cat: FinCategory, mode: str = "extensive") -> dict:
    """Per-morphism statuses plus the category verdict, and the reduced
    verdict quantified over split epis and coproduct inclusions only (the
    two verdicts must agree when all binary coproducts exist)."""
    if mode not in ("extensive", "coextensive"):
        raise ValueError("mode must be extensive or coextensive")
    work = cat if mode == "extensive" else dual_of(cat)
    per: dict[str, CheckStatus] = {}
    for i in range(work.n_mor):
        mid = work.mid(i)
        st = is_extensive_morphism(work, mid)
        per[mid] = st if mode == "extensive" else _dualized(st)
    reduced_scope = sorted(
        work.mid(m)
        for m in set(_inclusion_set(work))
        | {f for f in range(work.n_mor) if _split_mono_witness(dual_of(work), dual_of(work).m(work.mid(f))) is not None}
    )
    verdict = all(st.passed for st in per.values())
    reduced = all(per[m].passed for m in reduced_scope)
    has_cops = all_binary_coproducts_exist(work)
    return {
        "mode": mode,
        "morphisms": {m: per[m].as_dict() for m in sorted(per)},
        "verdict": "pass" if verdict else "fail",
        "reduced_scope": reduced_scope,
        "reduced_verdict": "pass" if reduced else "fail",
        "binary_coproducts_exist": has_cops,
        "verdicts_agree": (verdict == reduced) if has_cops else None,
    }


# -- disjointness / complements / boolean ------------------------------------------


def coproduct_disjointness(cat: FinCategory) -> CheckStatus:
    """Coproduct legs are monic (self-intersection square) and intersect in
    the initial object, for every certified coproduct cocone."""
    z = limits.initial(cat)
    if z is None:
        return _na({"kind": "no-initial"})
    checked = 0
    for x in range(len(cat.objects)):
        for u, v in limits.coproduct_bases(cat, x):
            checked += 1
            for leg in (u, v):
                d = cat._dom_l[leg]
                e = cat.identity_of[d]
                if not limits.is_pullback_square(cat, leg, leg, e, e):
                    return _fail(
                        {
                            "kind": "leg-not-mono-square",
                            "base": [cat.mid(u), cat.mid(v)],
                            "leg": cat.mid(leg),
                        },
                        bases=checked,
                    )
            p1 = cat.hom(z, cat._dom_l[u])[0]
            p2 = cat.hom(z, cat._dom_l[v])[0]
            if not limits.is_pullback_square(cat, u, v, p1, p2):
                return _fail(
                    {
                        "kind": "intersection-not-initial",
                        "base": [cat.mid(u), cat.mid(v)],
                    },
                    bases=checked,
                )
    return _ok(bases=checked)


def complement_uniqueness(cat: FinCategory) -> CheckStatus:
    """Any two cocones sharing their first leg have isomorphic second legs:
    an iso s with v' ∘ s = v.  Gated on initial object + disjointness."""
    z = limits.initial(cat)
    if z is None:
        return _na({"kind": "no-initial"})
    dis = coproduct_disjointness(cat)
    if not dis.passed:
        return _na({"kind": "disjointness-not-established", "disjointness": dis.as_dict()})
    isos = _iso_info(cat)[0]
    pairs = 0
    for x in range(len(cat.objects)):
        by_first: dict[int, list[int]] = {}
        for u, v in limits.coproduct_bases(cat, x):
            by_first.setdefault(u, []).append(v)
        for u, vs in by_first.items():
            for v, v2 in itertools.combinations(vs, 2):
                pairs += 1
                b, b2 = cat._dom_l[v], cat._dom_l[v2]
                found = None
                for s in cat.hom(b, b2):
                    if s in isos and cat.compose(v2, s) == v:
                        found = s
                        break
                if found is None:
                    return _fail(
                        {
                            "kind": "no-complement-iso",
                            "shared_leg": cat.mid(u),
                            "complements": [cat.mid(v), cat.mid(v2)],
                        },
                        pairs=pairs,
                    )
    return _ok(pairs=pairs)


def is_boolean_category(cat: FinCategory) -> CheckStatus:
    """Three clauses: pullbacks along coproduct legs exist and legs are
    pullback-stable as a class; every leg passes condition one; a cocone with
    two equal legs forces an initial apex."""
    z = limits.initial(cat)
    if z is None or not all_binary_coproducts_exist(cat):
        return _na({"kind": "missing-finite-coproducts"})
    inclusions = _inclusion_set(cat)
    n = len(cat.objects)
    pullbacks = 0
    for u in sorted(inclusions):
        x = cat._cod_l[u]
        for a in range(n):
            for g in cat.hom(a, x):
                w = limits.pullback(cat, g, u)
                if w is None:
                    return _fail(
                        {"kind": "missing-pullback", "leg": cat.mid(u), "along": cat.mid(g)},
                        pullbacks=pullbacks,
                    )
                pullbacks += 1
                if w.legs[0] not in inclusions:
                    return _fail(
                        {
                            "kind": "legs-not-pullback-stable",
                            "leg": cat.mid(u),
                            "along": cat.mid(g),
                            "pulled_back": cat.mid(w.legs[0]),
                        },
                        pullbacks=pullbacks,
                    )
        st = check_e1(cat, cat.mid(u))
        if not st.passed:
            return _fail(
                {"kind": "leg-fails-condition-one", "leg": cat.mid(u), "inner": st.witness},
                pullbacks=pullbacks,
            )
    for x in range(n):
        for u, v in limits.coproduct_bases(cat, x):
            if u == v:
                part = cat._dom_l[u]
                if any(cat._hom_counts_l[part][y] != 1 for y in range(n)):
                    return _fail(
                        {"kind": "equal-legs-part-not-initial", "leg": cat.mid(u), "part": cat.oid(part)},
                        pullbacks=pullbacks,
                    )
    return _ok(inclusions=len(inclusions), pullbacks=pullbacks)


# -- strict refinement --------------------------------------------------------------


def _product_cone_n(cat: FinCategory, legs: Sequence[int]) -> bool:
    d = dual_of(cat)
    dl = [d.m(cat.mid(m)) for m in legs]
    return _cocone_universal_n(d, dl)


def _cocone_universal_n(cat: FinCategory, legs: Sequence[int]) -> bool:
    """n-ary analogue of the coproduct certificate: h |-> (h∘leg_i)_i is a
    bijection hom(X,Y) -> prod_i hom(A_i,Y) for every Y."""
    import numpy as np

    x = cat._cod_l[legs[0]]
    if any(cat._cod_l[m] != x for m in legs):
        return False
    doms = [cat._dom_l[m] for m in legs]
    n = len(cat.objects)
    hc = cat._hom_counts_l
    for y in range(n):
        prod = 1
        for a in doms:
            prod *= hc[a][y]
        if hc[x][y] != prod:
            return False
    M = cat._M
    for y in range(n):
        k = hc[x][y]
        if k <= 1:
            continue
        code = None
        for m, a in zip(legs, doms):
            r = cat.block(a, x, y)[:, cat.pos_in_hom(m)].astype(np.int64)
            code = r if code is None else code * M + r
        if np.unique(code).size != k:
            return False
    return True


def _coproduct_bases_n(cat: FinCategory, x: int, arity: int) -> tuple[tuple[int, ...], ...]:
    """All certified arity-n coproduct cocones with apex x (cached)."""
    if arity == 2:
        return limits.coproduct_bases(cat, x)
    cache = cat._cache.setdefault("coproduct_bases_n", {})
    key = (x, arity)
    if key in cache:
        return cache[key]
    n = len(cat.objects)
    hc = cat._hom_counts_l
    out: list[tuple[int, ...]] = []
    for doms in itertools.product(range(n), repeat=arity):
        ok = True
        for y in range(n):
            prod = 1
            for a in doms:
                prod *= hc[a][y]
            if hc[x][y] != prod:
                ok = False
                break
        if not ok:
            continue
        for legs in itertools.product(*(cat.hom(a, x) for a in doms)):
            if _cocone_universal_n(cat, legs):
                out.append(legs)
    res = tuple(out)
    cache[key] = res
    return res


def _product_bases_n(cat: FinCategory, x: int, arity: int) -> tuple[tuple[int, ...], ...]:
    d = dual_of(cat)
    return tuple(
        tuple(cat.m(d.mid(m)) for m in legs)
        for legs in _coproduct_bases_n(d, d.o(cat.oid(x)), arity)
    )


def _grid_for(cat: FinCategory, cone_a: Sequence[int], cone_b: Sequence[int]) -> dict | None:
    """Try the canonical pushout grid for two product cones on the same apex:
    corners are pushouts of leg pairs, margins must be certified product cones."""
    la, lb = len(cone_a), len(cone_b)
    corner: dict[tuple[int, int], limits.UniversalWitness] = {}
    for i, ai in enumerate(cone_a):
        for j, bj in enumerate(cone_b):
            w = limits.pushout(cat, ai, bj)
            if w is None:
                return None
            corner[(i, j)] = w
    for i in range(la):
        if not _product_cone_n(cat, [corner[(i, j)].legs[0] for j in range(lb)]):
            return None
    for j in range(lb):
        if not _product_cone_n(cat, [corner[(i, j)].legs[1] for i in range(la)]):
            return None
    return {
        "corners": {f"{i},{j}": cat.oid(corner[(i, j)].apex) for i in range(la) for j in range(lb)},
        "a_margins": {str(i): [cat.mid(corner[(i, j)].legs[0]) for j in range(lb)] for i in range(la)},
        "b_margins": {str(j): [cat.mid(corner[(i, j)].legs[1]) for i in range(la)] for j in range(lb)},
    }


def _grid_search(cat: FinCategory, cone_a: Sequence[int], cone_b: Sequence[int]) -> dict | None:
    """Exhaustive grid search: choose a product cone on each A_i (fixing the
    corner row), recover the B_j legs by fiber lookup, and demand every B_j
    margin is a certified product cone.  Complete: any valid grid's rows are
    product cones on the A_i."""
    la, lb = len(cone_a), len(cone_b)
    doms_a = [cat._dom_l[m] for m in cone_a]
    doms_b = [cat._dom_l[m] for m in cone_b]
    row_choices = [_product_bases_n(cat, a, lb) for a in doms_a]

    def rec(i: int, rows: list[tuple[int, ...]]) -> dict | None:
        if i == la:
            comps = [[cat.compose(rows[i2][j], cone_a[i2]) for j in range(lb)] for i2 in range(la)]
            # Columns are independent once the rows are fixed: pick any
            # certified product-cone column for each j.
            chosen: list[tuple[int, ...]] = []
            for j in range(lb):
                opts: list[list[int]] = [[]]
                for i2 in range(la):
                    cands = cat.precompose_fibers(cone_b[j], cat._cod_l[rows[i2][j]]).get(comps[i2][j], ())
                    opts = [o + [b] for o in opts for b in cands]
                    if not opts:
                        break
                col = next((tuple(o) for o in opts if _product_cone_n(cat, o)), None)
                if col is None:
                    return None
                chosen.append(col)
            return {
                "corners": {
                    f"{i2},{j}": cat.oid(cat._cod_l[rows[i2][j]])
                    for i2 in range(la)
                    for j in range(lb)
                },
                "a_margins": {str(i2): [cat.mid(m) for m in rows[i2]] for i2 in range(la)},
                "b_margins": {str(j): [cat.mid(chosen[j][i2]) for i2 in range(la)] for j in range(lb)},
            }
        for row in row_choices[i]:
            res = rec(i + 1, rows + [row])
            if res is not None:
                return res
        return None

    return rec(0, [])


def has_binary_srp(cat: FinCategory, oid: str) -> CheckStatus:
    """Every pair of binary product cones on the object refines into a grid
    whose margins are certified binary product cones."""
    return has_finite_srp(cat, oid, 2)


def has_finite_srp(cat: FinCategory, oid: str, k: int) -> CheckStatus:
    """Strict refinement over all pairs of product cones of arities 2..k."""
    if k < 2:
        raise ValueError("max arity must be >= 2")
    x = cat.o(oid)
    pairs = 0
    for m in range(2, k + 1):
        cones_m = _product_bases_n(cat, x, m)
        for n_ar in range(2, k + 1):
            cones_n = cones_m if n_ar == m else _product_bases_n(cat, x, n_ar)
            for ca in cones_m:
                for cb in cones_n:
                    pairs += 1
                    grid = _grid_for(cat, ca, cb) or _grid_search(cat, ca, cb)
                    if grid is None:
                        return _fail(
                            {
                                "kind": "no-grid",
                                "object": oid,
                                "decomposition_a": [cat.mid(m2) for m2 in ca],
                                "decomposition_b": [cat.mid(m2) for m2 in cb],
                            },
                            pairs=pairs,
                        )
    return _ok(pairs=pairs)


# -- class-relative extensivity -------------------------------------------------------


def _class_set(cat: FinCategory, class_name: str) -> frozenset[int]:
    if class_name == "all":
        return frozenset(range(cat.n_mor))
    return frozenset(cat.m(m) for m in morphisms_of_class(cat, class_name))


def is_M_extensive(cat: FinCategory, oid: str, class_name: str) -> CheckStatus:
    """Class-relative extensivity of one object: every class morphism into it
    admits class pullbacks along every coproduct leg, and in class-vertical
    diagrams over a coproduct bottom row, the top row is a coproduct exactly
    when both squares are class pullbacks.

    The backward direction reduces to the span condition because every
    pullback square over the same cospan differs from the canonical one by an
    isomorphism of apexes, and the named classes are closed under composition
    with isomorphisms."""
    a = cat.o(oid)
    mcls = _class_set(cat, class_name)
    bases = limits.coproduct_bases(cat, a)
    checked = 0
    for f in sorted(mcls):
        if cat._cod_l[f] != a:
            continue
        mid = cat.mid(f)
        for u, v in bases:
            spans = []
            for leg in (u, v):
                w = limits.pullback(cat, f, leg)
                if w is None:
                    return _fail(
                        {"kind": "missing-pullback", "morphism": mid, "along": cat.mid(leg), "class": class_name}
                    )
                if w.legs[0] not in mcls or w.legs[1] not in mcls:
                    return _fail(
                        {
                            "kind": "pullback-legs-not-in-class",
                            "morphism": mid,
                            "along": cat.mid(leg),
                            "legs": [cat.mid(w.legs[0]), cat.mid(w.legs[1])],
                            "class": class_name,
                        }
                    )
                spans.append(w)
            checked += 1
            if not limits.is_coproduct_cocone(cat, spans[0].legs[0], spans[1].legs[0]):
                return _fail(
                    {
                        "kind": "top-row-not-coproduct",
                        "morphism": mid,
                        "base": [cat.mid(u), cat.mid(v)],
                        "span": [cat.mid(spans[0].legs[0]), cat.mid(spans[1].legs[0])],
                        "class": class_name,
                    },
                    checked=checked,
                )
        # forward direction: class-vertical coproduct tops force class pullbacks
        for x1, x2, u, v, g1, g2 in _e2_instances(cat, f):
            if g1 not in mcls or g2 not in mcls:
                continue
            checked += 1
            for side, (leg, top, filler) in (("left", (u, x1, g1)), ("right", (v, x2, g2))):
                if not limits.is_pullback_square(cat, f, leg, top, filler):
                    return _fail(
                        {
                            "kind": "square-not-pullback",
                            "morphism": mid,
                            "top": [cat.mid(x1), cat.mid(x2)],
                            "bottom": [cat.mid(u), cat.mid(v)],
                            "verticals": [cat.mid(g1), cat.mid(g2)],
                            "side": side,
                            "class": class_name,
                        },
                        checked=checked,
                    )
                if top not in mcls or filler not in mcls:
                    return _fail(
                        {
                            "kind": "square-legs-not-in-class",
                            "morphism": mid,
                            "top": [cat.mid(x1), cat.mid(x2)],
                            "bottom": [cat.mid(u), cat.mid(v)],
                            "side": side,
                            "class": class_name,
                        },
                        checked=checked,
                    )
    return _ok(checked=checked)


def is_M_coextensive(cat: FinCategory, oid: str, class_name: str) -> CheckStatus:
    return _dualized(is_M_extensive(dual_of(cat), oid, class_name))


# -- commutation of (co)products with (co)equalisers -------------------------------------


def _all_parallel_pairs(cat: FinCategory) -> list[tuple[int, int]]:
    out = []
    n = len(cat.objects)
    for a in range(n):
        for b in range(n):
            h = cat.hom(a, b)
            for u in h:
                for v in h:
                    out.append((u, v))
    return out


def commutation_check(cat: FinCategory, which: str, sample_bound: int = 50, seed: int = 0) -> CheckStatus:
    """Products applied to two coequaliser diagrams give a coequaliser
    diagram (or dually coproducts applied to equalisers give an equaliser),
    over a seeded sample of diagram pairs."""
    import random

    if which not in ("products-coequalisers", "coproducts-equalisers"):
        raise ValueError("which must be products-coequalisers or coproducts-equalisers")
    work = cat if which == "products-coequalisers" else dual_of(cat)
    pairs = _all_parallel_pairs(work)
    rng = random.Random(seed)

    def _squarable(x: int) -> bool:
        return limits.product(work, x, x) is not None

    # Forks whose objects admit self-products can actually be paired (for
    # size-capped categories a² ≤ N and b² ≤ N imply ab ≤ N), so sample those
    # first; the rest only waste the pairing budget.
    preferred, rest = [], []
    for i, (u, _v) in enumerate(pairs):
        good = _squarable(work._dom_l[u]) and _squarable(work._cod_l[u])
        (preferred if good else rest).append(i)
    rng.shuffle(preferred)
    rng.shuffle(rest)
    diagrams = []
    for idx in preferred + rest:
        u, v = pairs[idx]
        w = limits.coequaliser(work, u, v)
        if w is not None:
            diagrams.append((u, v, w.legs[0]))
        if len(diagrams) >= 8 * sample_bound:
            break
    if len(diagrams) < 2:
        return _na({"kind": "no-coequaliser-diagrams"})
    tested = 0
    inapplicable = 0
    combos = ((d1, d2) for d1 in diagrams for d2 in diagrams)
    for (u1, v1, q1), (u2, v2, q2) in combos:
        if tested >= sample_bound:
            break
        pd = limits.product(work, work._dom_l[u1], work._dom_l[u2])
        pm = limits.product(work, work._cod_l[u1], work._cod_l[u2])
        pc = limits.product(work, work._cod_l[q1], work._cod_l[q2])
        if pd is None or pm is None or pc is None:
            inapplicable += 1
            continue
        pu = limits.product_of_morphisms(work, u1, u2, tuple(pd.legs), tuple(pm.legs))
        pv = limits.product_of_morphisms(work, v1, v2, tuple(pd.legs), tuple(pm.legs))
        pq = limits.product_of_morphisms(work, q1, q2, tuple(pm.legs), tuple(pc.legs))
        if pu is None or pv is None or pq is None:
            inapplicable += 1
            continue
        tested += 1
        if not limits.is_coequaliser(work, pu, pv, pq):
            return _fail(
                {
                    "kind": "product-fork-not-coequaliser" if which == "products-coequalisers" else "coproduct-fork-not-equaliser",
                    "first": [work.mid(u1), work.mid(v1), work.mid(q1)],
                    "second": [work.mid(u2), work.mid(v2), work.mid(q2)],
                },
                tested=tested,
                inapplicable=inapplicable,
            )
    if tested == 0:
        return _na({"kind": "no-applicable-pairs"}, inapplicable=inapplicable)
    return _ok(tested=tested, inapplicable=inapplicable)
