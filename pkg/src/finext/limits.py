"""(Co)limits in an explicit finite category, by exhaustive universal-property
search.

A candidate diagram is *certified* by checking the defining bijection
directly: a cocone (u, v) on (A1, A2) with apex X is a coproduct iff for
every object Y the map h |-> (h∘u, h∘v) from hom(X,Y) to hom(A1,Y)×hom(A2,Y)
is a bijection.  Cardinality comparison plus an injectivity scan decides
that; both are vectorized over the composition blocks.  Limits run through
the same code on the opposite category.

Search order is fixed everywhere — apexes in object order, legs in hom-set
order — so the first certified witness is deterministic and cacheable.
All functions speak internal integer indexes; callers translate to string
ids at the reporting boundary.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fincat import FinCategory, dual_of, _iso_info, _mono_set, _epi_set

__all__ = [
    "UniversalWitness",
    "initial",
    "terminal",
    "is_coproduct_cocone",
    "coproduct",
    "coproduct_bases",
    "cotuple",
    "coproduct_of_morphisms",
    "is_product_cone",
    "product",
    "product_bases",
    "product_of_morphisms",
    "pullback",
    "is_pullback_square",
    "kernel_pair",
    "pushout",
    "is_pushout_square",
    "cokernel_pair",
    "is_coequaliser",
    "coequaliser",
    "is_equaliser",
    "equaliser",
    "image_factorisation",
]


@dataclass(frozen=True)
class UniversalWitness:
    """A certified universal diagram: its apex and legs, in internal indexes."""

    kind: str  # coproduct | product | pullback | pushout | coequaliser | equaliser
    apex: int
    legs: tuple[int, ...]

    def to_json(self, cat: FinCategory) -> dict:
        return {
            "kind": self.kind,
            "apex": cat.oid(self.apex),
            "legs": [cat.mid(m) for m in self.legs],
        }


# -- initial / terminal --------------------------------------------------------


def initial(cat: FinCategory) -> int | None:
    """First object with exactly one morphism to every object, if any."""
    if "initial" not in cat._cache:
        hit = None
        for x in range(len(cat.objects)):
            if all(cat._hom_counts_l[x][y] == 1 for y in range(len(cat.objects))):
                hit = x
                break
        cat._cache["initial"] = hit
    return cat._cache["initial"]


def terminal(cat: FinCategory) -> int | None:
    if "terminal" not in cat._cache:
        hit = None
        for x in range(len(cat.objects)):
            if all(cat._hom_counts_l[y][x] == 1 for y in range(len(cat.objects))):
                hit = x
                break
        cat._cache["terminal"] = hit
    return cat._cache["terminal"]


# -- coproducts -----------------------------------------------------------------


def _cocone_universal(cat: FinCategory, a1: int, a2: int, x: int, u: int, v: int) -> bool:
    """Bijectivity of h |-> (h∘u, h∘v) for all targets Y."""
    n = len(cat.objects)
    hc = cat._hom_counts_l
    for y in range(n):
        if hc[x][y] != hc[a1][y] * hc[a2][y]:
            return False
    M = cat._M
    pu, pv = cat.pos_in_hom(u), cat.pos_in_hom(v)
    for y in range(n):
        k = hc[x][y]
        if k <= 1:
            continue
        r1 = cat.block(a1, x, y)[:, pu].astype(np.int64)
        r2 = cat.block(a2, x, y)[:, pv].astype(np.int64)
        if np.unique(r1 * M + r2).size != k:
            return False
    return True


def is_coproduct_cocone(cat: FinCategory, u: int, v: int) -> bool:
    """Whether the cocone (u: A1 -> X, v: A2 -> X) exhibits X as A1 + A2."""
    if cat._cod_l[u] != cat._cod_l[v]:
        return False
    return _cocone_universal(cat, cat._dom_l[u], cat._dom_l[v], cat._cod_l[u], u, v)


def coproduct(cat: FinCategory, a1: int, a2: int) -> UniversalWitness | None:
    """First certified coproduct of (a1, a2) in apex-then-leg order, cached."""
    cache = cat._cache.setdefault("coproduct", {})
    key = (a1, a2)
    if key in cache:
        return cache[key]
    res = None
    hc = cat._hom_counts_l
    n = len(cat.objects)
    for x in range(n):
        if any(hc[x][y] != hc[a1][y] * hc[a2][y] for y in range(n)):
            continue
        found = None
        for u in cat.hom(a1, x):
            for v in cat.hom(a2, x):
                if _cocone_universal(cat, a1, a2, x, u, v):
                    found = UniversalWitness("coproduct", x, (u, v))
                    break
            if found:
                break
        if found:
            res = found
            break
    cache[key] = res
    return res


def coproduct_bases(cat: FinCategory, x: int) -> tuple[tuple[int, int], ...]:
    """Every certified binary coproduct cocone with apex x, in deterministic
    (part-pair, leg-lex) order.  Cached; this is the quantification set for
    the decomposition-respecting checks."""
    cache = cat._cache.setdefault("coproduct_bases", {})
    if x in cache:
        return cache[x]
    out: list[tuple[int, int]] = []
    n = len(cat.objects)
    hc = cat._hom_counts_l
    for a1 in range(n):
        for a2 in range(n):
            if any(hc[x][y] != hc[a1][y] * hc[a2][y] for y in range(n)):
                continue
            for u in cat.hom(a1, x):
                for v in cat.hom(a2, x):
                    if _cocone_universal(cat, a1, a2, x, u, v):
                        out.append((u, v))
    res = tuple(out)
    cache[x] = res
    return res


def cotuple(cat: FinCategory, u: int, v: int, t1: int, t2: int) -> int | None:
    """The mediating morphism h with h∘u = t1 and h∘v = t2, if one exists.

    Unique when (u, v) is a certified coproduct cocone; this only scans."""
    x = cat._cod_l[u]
    z = cat._cod_l[t1]
    if cat._cod_l[t2] != z:
        return None
    a1, a2 = cat._dom_l[u], cat._dom_l[v]
    r1 = cat.block(a1, x, z)[:, cat.pos_in_hom(u)]
    r2 = cat.block(a2, x, z)[:, cat.pos_in_hom(v)]
    hits = np.nonzero((r1 == t1) & (r2 == t2))[0]
    if hits.size == 0:
        return None
    return cat.hom(x, z)[int(hits[0])]


def coproduct_of_morphisms(
    cat: FinCategory,
    f1: int,
    f2: int,
    dom_base: tuple[int, int],
    cod_base: tuple[int, int],
) -> int | None:
    """f1 + f2 relative to chosen coproduct cocones on domains and codomains:
    the unique h with h∘u1 = v1∘f1 and h∘u2 = v2∘f2."""
    u1, u2 = dom_base
    v1, v2 = cod_base
    t1 = cat.compose(v1, f1)
    t2 = cat.compose(v2, f2)
    if t1 is None or t2 is None:
        return None
    return cotuple(cat, u1, u2, t1, t2)


# -- duality helpers -------------------------------------------------------------


def _to_dual_m(cat: FinCategory, m: int) -> int:
    return dual_of(cat).m(cat.mid(m))


def _from_dual_m(cat: FinCategory, m: int) -> int:
    return cat.m(dual_of(cat).mid(m))


def _from_dual_o(cat: FinCategory, x: int) -> int:
    return cat.o(dual_of(cat).oid(x))


# -- products (through the dual) ---------------------------------------------------


def is_product_cone(cat: FinCategory, p: int, q: int) -> bool:
    """Whether (p: X -> A1, q: X -> A2) exhibits X as A1 × A2."""
    d = dual_of(cat)
    return is_coproduct_cocone(d, _to_dual_m(cat, p), _to_dual_m(cat, q))


def product(cat: FinCategory, a1: int, a2: int) -> UniversalWitness | None:
    d = dual_of(cat)
    w = coproduct(d, d.o(cat.oid(a1)), d.o(cat.oid(a2)))
    if w is None:
        return None
    return UniversalWitness(
        "product", _from_dual_o(cat, w.apex), tuple(_from_dual_m(cat, m) for m in w.legs)
    )


def product_bases(cat: FinCategory, x: int) -> tuple[tuple[int, int], ...]:
    """Every certified binary product cone with apex x (legs in this
    category's indexes)."""
    d = dual_of(cat)
    return tuple(
        (_from_dual_m(cat, u), _from_dual_m(cat, v))
        for u, v in coproduct_bases(d, d.o(cat.oid(x)))
    )


def product_of_morphisms(
    cat: FinCategory,
    f1: int,
    f2: int,
    dom_base: tuple[int, int],
    cod_base: tuple[int, int],
) -> int | None:
    """f1 × f2 relative to chosen product cones on domain and codomain."""
    d = dual_of(cat)
    h = coproduct_of_morphisms(
        d,
        _to_dual_m(cat, f1),
        _to_dual_m(cat, f2),
        tuple(_to_dual_m(cat, m) for m in cod_base),
        tuple(_to_dual_m(cat, m) for m in dom_base),
    )
    return None if h is None else _from_dual_m(cat, h)


# -- pullbacks ------------------------------------------------------------------


def _cone_counts(cat: FinCategory, f: int, u: int) -> list[int]:
    """|{(s, t) : f∘s = u∘t}| indexed by the cone source Y."""
    n = len(cat.objects)
    out = [0] * n
    for y in range(n):
        fib_f = cat.postcompose_fibers(f, y)
        fib_u = cat.postcompose_fibers(u, y)
        if len(fib_u) < len(fib_f):
            fib_f, fib_u = fib_u, fib_f
        out[y] = sum(len(ss) * len(fib_u[w]) for w, ss in fib_f.items() if w in fib_u)
    return out


def _cone_universal(cat: FinCategory, a: int, b: int, p: int, p1: int, p2: int, counts: list[int]) -> bool:
    """Injectivity of h |-> (p1∘h, p2∘h) on hom(Y,P) for all Y; with the
    cardinality filter already matching ``counts`` this is bijectivity onto
    the commuting cones."""
    n = len(cat.objects)
    M = cat._M
    q1, q2 = cat.pos_in_hom(p1), cat.pos_in_hom(p2)
    for y in range(n):
        k = cat._hom_counts_l[y][p]
        if k != counts[y]:
            return False
        if k <= 1:
            continue
        r1 = cat.block(y, p, a)[q1].astype(np.int64)
        r2 = cat.block(y, p, b)[q2].astype(np.int64)
        if np.unique(r1 * M + r2).size != k:
            return False
    return True


def pullback(cat: FinCategory, f: int, u: int) -> UniversalWitness | None:
    """First certified pullback of the cospan (f: A -> X <- B : u), cached.

    Legs come back as (p1: P -> A, p2: P -> B) with f∘p1 = u∘p2."""
    if cat._cod_l[f] != cat._cod_l[u]:
        raise ValueError("pullback needs a cospan (shared codomain)")
    cache = cat._cache.setdefault("pullback", {})
    key = (f, u)
    if key in cache:
        return cache[key]
    a, b = cat._dom_l[f], cat._dom_l[u]
    counts = _cone_counts(cat, f, u)
    n = len(cat.objects)
    res = None
    for p in range(n):
        if any(cat._hom_counts_l[y][p] != counts[y] for y in range(n)):
            continue
        found = None
        for p1 in cat.hom(p, a):
            w = cat.compose(f, p1)
            for p2 in cat.postcompose_fibers(u, p).get(w, ()):
                if _cone_universal(cat, a, b, p, p1, p2, counts):
                    found = UniversalWitness("pullback", p, (p1, p2))
                    break
            if found:
                break
        if found:
            res = found
            break
    cache[key] = res
    return res


def _mediator_to_cone(cat: FinCategory, w1: int, w2: int, c1: int, c2: int) -> int | None:
    """h from dom(c1) to dom(w1)'s source with w1∘h = c1, w2∘h = c2, first hit."""
    p = cat._dom_l[w1]  # apex of the certified cone
    y = cat._dom_l[c1]
    r1 = cat.block(y, p, cat._cod_l[w1])[cat.pos_in_hom(w1)]
    r2 = cat.block(y, p, cat._cod_l[w2])[cat.pos_in_hom(w2)]
    hits = np.nonzero((r1 == c1) & (r2 == c2))[0]
    if hits.size == 0:
        return None
    return cat.hom(y, p)[int(hits[0])]


def is_pullback_square(cat: FinCategory, f: int, u: int, p1: int, p2: int) -> bool:
    """Whether the commuting square with sides p1 (to dom f), p2 (to dom u)
    and cospan (f, u) is a pullback: the mediator into the certified pullback
    must exist and be an isomorphism."""
    if cat.compose(f, p1) != cat.compose(u, p2):
        return False
    w = pullback(cat, f, u)
    if w is None:
        return False  # no pullback exists at all, so this square is not one
    h = _mediator_to_cone(cat, w.legs[0], w.legs[1], p1, p2)
    return h is not None and h in _iso_info(cat)[0]


def kernel_pair(cat: FinCategory, f: int) -> tuple[int, int, int] | None:
    """Pullback of f along itself: (apex, k1, k2), or None if missing."""
    w = pullback(cat, f, f)
    if w is None:
        return None
    return (w.apex, w.legs[0], w.legs[1])


# -- pushouts (through the dual) ----------------------------------------------------


def pushout(cat: FinCategory, f: int, g: int) -> UniversalWitness | None:
    """First certified pushout of the span (f: A -> B1, g: A -> B2).

    Legs come back as (q1: B1 -> Q, q2: B2 -> Q) with q1∘f = q2∘g."""
    d = dual_of(cat)
    w = pullback(d, _to_dual_m(cat, f), _to_dual_m(cat, g))
    if w is None:
        return None
    return UniversalWitness(
        "pushout", _from_dual_o(cat, w.apex), tuple(_from_dual_m(cat, m) for m in w.legs)
    )


def is_pushout_square(cat: FinCategory, f: int, g: int, q1: int, q2: int) -> bool:
    """Whether (q1: B1 -> Q, q2: B2 -> Q) is a pushout of the span (f, g)."""
    d = dual_of(cat)
    return is_pullback_square(
        d, _to_dual_m(cat, f), _to_dual_m(cat, g), _to_dual_m(cat, q1), _to_dual_m(cat, q2)
    )


def cokernel_pair(cat: FinCategory, f: int) -> tuple[int, int, int] | None:
    w = pushout(cat, f, f)
    if w is None:
        return None
    return (w.apex, w.legs[0], w.legs[1])


# -- (co)equalisers ------------------------------------------------------------------


def is_coequaliser(cat: FinCategory, u: int, v: int, f: int) -> bool:
    """Whether f coequalises the parallel pair (u, v) universally."""
    if cat._dom_l[u] != cat._dom_l[v] or cat._cod_l[u] != cat._cod_l[v]:
        return False
    a = cat._cod_l[u]
    if cat._dom_l[f] != a:
        return False
    if cat.compose(f, u) != cat.compose(f, v):
        return False
    q = cat._cod_l[f]
    y = cat._dom_l[u]
    n = len(cat.objects)
    pu, pv = cat.pos_in_hom(u), cat.pos_in_hom(v)
    pf = cat.pos_in_hom(f)
    for z in range(n):
        blk = cat.block(y, a, z)
        fork = int(np.count_nonzero(blk[:, pu] == blk[:, pv]))
        k = cat._hom_counts_l[q][z]
        if k != fork:
            return False
        if k <= 1:
            continue
        col = cat.block(a, q, z)[:, pf]
        if np.unique(col).size != k:
            return False
    return True


def coequaliser(cat: FinCategory, u: int, v: int) -> UniversalWitness | None:
    """First certified coequaliser of (u, v) in apex-then-leg order, cached."""
    cache = cat._cache.setdefault("coequaliser", {})
    key = (u, v)
    if key in cache:
        return cache[key]
    a = cat._cod_l[u]
    res = None
    for q in range(len(cat.objects)):
        for f in cat.hom(a, q):
            if is_coequaliser(cat, u, v, f):
                res = UniversalWitness("coequaliser", q, (f,))
                break
        if res:
            break
    cache[key] = res
    return res


def is_equaliser(cat: FinCategory, u: int, v: int, m: int) -> bool:
    d = dual_of(cat)
    return is_coequaliser(d, _to_dual_m(cat, u), _to_dual_m(cat, v), _to_dual_m(cat, m))


def equaliser(cat: FinCategory, u: int, v: int) -> UniversalWitness | None:
    d = dual_of(cat)
    w = coequaliser(d, _to_dual_m(cat, u), _to_dual_m(cat, v))
    if w is None:
        return None
    return UniversalWitness(
        "equaliser", _from_dual_o(cat, w.apex), tuple(_from_dual_m(cat, m) for m in w.legs)
    )


# -- image factorisation ---------------------------------------------------------------


def image_factorisation(cat: FinCategory, f: int) -> tuple[int, int] | None:
    """A (regular epi, mono) factorisation f = m∘e, first in
    (intermediate, e, m) order; None when the category has none for f.
    Such factorisations are unique up to unique isomorphism when they exist."""
    cache = cat._cache.setdefault("image_fact", {})
    if f in cache:
        return cache[f]
    from .fincat import _is_regular_epi  # deferred: fincat's own lazy use of this module

    monos = _mono_set(cat)
    a, b = cat._dom_l[f], cat._cod_l[f]
    res = None
    for i in range(len(cat.objects)):
        for e in cat.hom(a, i):
            if not _is_regular_epi(cat, e)[0]:
                continue
            for m in cat.precompose_fibers(e, b).get(f, ()):
                if m in monos:
                    res = (e, m)
                    break
            if res:
                break
        if res:
            break
    cache[f] = res
    return res
