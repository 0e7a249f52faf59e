"""Finite algebras and the category builders on top of them.

Supported structure kinds (each a variety or quasivariety of finite
structures, possibly with an order relation instead of operations):

- ``set``        plain finite sets (the empty set included)
- ``pointed``    pointed sets, maps preserve the point
- ``poset``      finite posets, maps are monotone
- ``cpos``       connected finite posets (full subcategory of ``poset``)
- ``slat``       meet-semilattices: one binary idempotent commutative
                 associative operation; maps preserve it
- ``lat``        lattices: meet and join with absorption; maps preserve both
- ``mon``        monoids: associative binary operation with unit; maps
                 preserve both

Structures are carried on ``0..n-1``.  Binary operations are tuples of
tuples, constants are ints, the order relation is a boolean matrix.
Enumeration is exhaustive up to isomorphism (canonical form = minimum
encoding over carrier permutations, with constants pinned).  Hom-sets are
enumerated by backtracking in lexicographic order of the function table, so
every id assigned downstream is deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence

from .fincat import FinCategory

__all__ = [
    "Signature",
    "FinAlgebra",
    "Universe",
    "VARIETIES",
    "validate_algebra",
    "enumerate_structures",
    "enumerate_homs",
    "build_category",
    "category_from_algebras",
    "dump_category",
    "load_category",
    "direct_product",
    "congruence_generate",
    "all_congruences",
    "congruence_lattice",
    "quotient",
    "kernel_partition",
    "pushout_surjections",
    "center_of_monoid",
]


@dataclass(frozen=True)
class Signature:
    """Operation/relation symbols for one structure kind."""

    kind: str
    constants: tuple[str, ...] = ()
    unary: tuple[str, ...] = ()
    binary: tuple[str, ...] = ()
    relations: tuple[str, ...] = ()


SIGNATURES: dict[str, Signature] = {
    "set": Signature("set"),
    "pointed": Signature("pointed", constants=("pt",)),
    "poset": Signature("poset", relations=("leq",)),
    "cpos": Signature("cpos", relations=("leq",)),
    "slat": Signature("slat", binary=("meet",)),
    "lat": Signature("lat", binary=("meet", "join")),
    "mon": Signature("mon", constants=("e",), binary=("op",)),
}

VARIETIES = tuple(sorted(SIGNATURES))

_PREFIX = {"set": "s", "pointed": "p", "poset": "P", "cpos": "c", "slat": "S", "lat": "L", "mon": "M"}


class FinAlgebra:
    """One finite structure: carrier 0..size-1 plus interpreted symbols."""

    def __init__(
        self,
        kind: str,
        size: int,
        ops: Mapping[str, Any] | None = None,
        rels: Mapping[str, Sequence[Sequence[bool]]] | None = None,
    ):
        if kind not in SIGNATURES:
            raise ValueError(f"unknown structure kind {kind!r} (expected one of {VARIETIES})")
        self.kind = kind
        self.signature = SIGNATURES[kind]
        self.size = size
        self.ops: dict[str, Any] = {}
        for name in self.signature.constants:
            self.ops[name] = int(ops[name])  # type: ignore[index]
        for name in self.signature.unary:
            self.ops[name] = tuple(ops[name])  # type: ignore[index]
        for name in self.signature.binary:
            self.ops[name] = tuple(tuple(row) for row in ops[name])  # type: ignore[index]
        self.rels: dict[str, tuple[tuple[bool, ...], ...]] = {}
        for name in self.signature.relations:
            self.rels[name] = tuple(tuple(bool(v) for v in row) for row in rels[name])  # type: ignore[index]

    def encode(self) -> tuple:
        """Flat, order-sensitive encoding; equal iff structures are equal."""
        parts: list[Any] = [self.size]
        for name in self.signature.constants:
            parts.append(self.ops[name])
        for name in self.signature.unary:
            parts.extend(self.ops[name])
        for name in self.signature.binary:
            for row in self.ops[name]:
                parts.extend(row)
        for name in self.signature.relations:
            for row in self.rels[name]:
                parts.extend(int(v) for v in row)
        return tuple(parts)

    def relabel(self, perm: Sequence[int]) -> "FinAlgebra":
        """The isomorphic copy along ``perm`` (element i becomes perm[i])."""
        n = self.size
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        ops: dict[str, Any] = {}
        for name in self.signature.constants:
            ops[name] = perm[self.ops[name]]
        for name in self.signature.unary:
            t = self.ops[name]
            ops[name] = tuple(perm[t[inv[i]]] for i in range(n))
        for name in self.signature.binary:
            t = self.ops[name]
            ops[name] = tuple(tuple(perm[t[inv[i]][inv[j]]] for j in range(n)) for i in range(n))
        rels: dict[str, Any] = {}
        for name in self.signature.relations:
            r = self.rels[name]
            rels[name] = tuple(tuple(r[inv[i]][inv[j]] for j in range(n)) for i in range(n))
        return FinAlgebra(self.kind, n, ops, rels)

    def canonical_key(self) -> tuple:
        """Minimum encoding over all permissible relabelings (constants pinned)."""
        n = self.size
        pinned = sorted({self.ops[c] for c in self.signature.constants})
        best: tuple | None = None
        for perm in itertools.permutations(range(n)):
            if any(perm[c] != c for c in pinned):
                continue
            key = self.relabel(perm).encode()
            if best is None or key < best:
                best = key
        return best if best is not None else self.encode()

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "size": self.size,
            "ops": {
                k: (v if isinstance(v, int) else [list(r) if isinstance(r, tuple) else r for r in v])
                for k, v in self.ops.items()
            },
            "rels": {k: [[int(x) for x in row] for row in v] for k, v in self.rels.items()},
        }

    @staticmethod
    def from_json(data: Mapping[str, Any]) -> "FinAlgebra":
        return FinAlgebra(data["kind"], data["size"], data.get("ops", {}), data.get("rels", {}))

    def __repr__(self):
        return f"FinAlgebra({self.kind}, n={self.size})"


# -- laws -------------------------------------------------------------------


def _check_aci(t: Sequence[Sequence[int]], n: int, name: str) -> list[str]:
    bad = []
    for x in range(n):
        if t[x][x] != x:
            bad.append(f"{name} not idempotent at {x}")
        for y in range(n):
            if t[x][y] != t[y][x]:
                bad.append(f"{name} not commutative at ({x},{y})")
            for z in range(n):
                if t[t[x][y]][z] != t[x][t[y][z]]:
                    bad.append(f"{name} not associative at ({x},{y},{z})")
    return bad


def _poset_components(leq: Sequence[Sequence[bool]], n: int) -> int:
    seen = [False] * n
    comps = 0
    for s in range(n):
        if seen[s]:
            continue
        comps += 1
        stack = [s]
        seen[s] = True
        while stack:
            x = stack.pop()
            for y in range(n):
                if not seen[y] and (leq[x][y] or leq[y][x]):
                    seen[y] = True
                    stack.append(y)
    return comps


def validate_algebra(alg: FinAlgebra) -> list[str]:
    """All violated laws of the structure's kind, as human-readable strings."""
    n = alg.size
    out: list[str] = []
    for name, v in alg.ops.items():
        if isinstance(v, int):
            if not (0 <= v < n):
                out.append(f"constant {name} out of range")
        elif isinstance(v, tuple) and v and isinstance(v[0], int):
            if len(v) != n or any(not (0 <= x < n) for x in v):
                out.append(f"unary {name} malformed")
        else:
            if len(v) != n or any(len(r) != n or any(not (0 <= x < n) for x in r) for r in v):
                out.append(f"binary {name} malformed")
    if out:
        return out
    k = alg.kind
    if k in ("poset", "cpos"):
        leq = alg.rels["leq"]
        for x in range(n):
            if not leq[x][x]:
                out.append(f"leq not reflexive at {x}")
            for y in range(n):
                if x != y and leq[x][y] and leq[y][x]:
                    out.append(f"leq not antisymmetric at ({x},{y})")
                for z in range(n):
                    if leq[x][y] and leq[y][z] and not leq[x][z]:
                        out.append(f"leq not transitive at ({x},{y},{z})")
        if k == "cpos":
            if n == 0 or _poset_components(leq, n) != 1:
                out.append("order not connected")
    elif k == "slat":
        if n == 0:
            out.append("empty carrier not allowed for slat")
        out += _check_aci(alg.ops["meet"], n, "meet")
    elif k == "lat":
        if n == 0:
            out.append("empty carrier not allowed for lat")
        m, j = alg.ops["meet"], alg.ops["join"]
        out += _check_aci(m, n, "meet") + _check_aci(j, n, "join")
        for x in range(n):
            for y in range(n):
                if m[x][j[x][y]] != x:
                    out.append(f"absorption meet/join fails at ({x},{y})")
                if j[x][m[x][y]] != x:
                    out.append(f"absorption join/meet fails at ({x},{y})")
    elif k == "mon":
        t, e = alg.ops["op"], alg.ops["e"]
        for x in range(n):
            if t[e][x] != x or t[x][e] != x:
                out.append(f"unit law fails at {x}")
            for y in range(n):
                for z in range(n):
                    if t[t[x][y]][z] != t[x][t[y][z]]:
                        out.append(f"op not associative at ({x},{y},{z})")
    elif k == "pointed":
        if n == 0:
            out.append("empty carrier not allowed for pointed")
    return out


# -- enumeration up to isomorphism -------------------------------------------


def _enumerate_posets_raw(n: int) -> list[tuple[tuple[bool, ...], ...]]:
    """All labeled partial orders on 0..n-1 as boolean matrices."""
    if n == 0:
        return [()]
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    out = []
    for bits in itertools.product((False, True), repeat=len(pairs)):
        leq = [[i == j for j in range(n)] for i in range(n)]
        for (i, j), b in zip(pairs, bits):
            if b:
                leq[i][j] = True
        ok = True
        for i, j in pairs:
            if leq[i][j] and leq[j][i]:
                ok = False
                break
        if ok:
            for x in range(n):
                for y in range(n):
                    if leq[x][y]:
                        for z in range(n):
                            if leq[y][z] and not leq[x][z]:
                                ok = False
        if ok:
            out.append(tuple(tuple(r) for r in leq))
    return out


def _meet_table(leq: Sequence[Sequence[bool]], n: int) -> tuple | None:
    """Greatest-lower-bound table, or None if some pair has no meet."""
    t = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            lower = [z for z in range(n) if leq[z][x] and leq[z][y]]
            best = [z for z in lower if all(leq[w][z] for w in lower)]
            if len(best) != 1:
                return None
            t[x][y] = best[0]
    return tuple(tuple(r) for r in t)


def _join_table(leq: Sequence[Sequence[bool]], n: int) -> tuple | None:
    t = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            upper = [z for z in range(n) if leq[x][z] and leq[y][z]]
            best = [z for z in upper if all(leq[z][w] for w in upper)]
            if len(best) != 1:
                return None
            t[x][y] = best[0]
    return tuple(tuple(r) for r in t)


def _enumerate_monoids(n: int) -> list[FinAlgebra]:
    """All monoids on 0..n-1 with unit 0, up to isomorphism, by backtracking."""
    if n == 0:
        return []
    t = [[-1] * n for _ in range(n)]
    for i in range(n):
        t[0][i] = i
        t[i][0] = i
    cells = [(i, j) for i in range(1, n) for j in range(1, n)]
    found: dict[tuple, FinAlgebra] = {}

    def determined_assoc_ok() -> bool:
        for x in range(n):
            for y in range(n):
                xy = t[x][y]
                if xy < 0:
                    continue
                for z in range(n):
                    yz = t[y][z]
                    if yz < 0:
                        continue
                    a, b = t[xy][z], t[x][yz]
                    if a >= 0 and b >= 0 and a != b:
                        return False
        return True

    def rec(k: int):
        if k == len(cells):
            alg = FinAlgebra("mon", n, {"e": 0, "op": [row[:] for row in t]})
            found.setdefault(alg.canonical_key(), alg)
            return
        i, j = cells[k]
        for v in range(n):
            t[i][j] = v
            if determined_assoc_ok():
                rec(k + 1)
        t[i][j] = -1

    rec(0)
    return [found[k] for k in sorted(found)]


def enumerate_structures(kind: str, max_size: int, include_empty: bool | None = None) -> list[FinAlgebra]:
    """All structures of the kind with carrier size up to ``max_size``, one per
    isomorphism class, in deterministic (size, canonical-form) order.

    The empty structure is included only for plain sets (and on request for
    posets); the ordered and algebraic kinds here are kept nonempty so every
    object has points to compare.
    """
    if kind not in SIGNATURES:
        raise ValueError(f"unknown structure kind {kind!r}")
    if include_empty is None:
        include_empty = kind == "set"
    out: list[FinAlgebra] = []
    lo = 0 if include_empty else 1
    for n in range(lo, max_size + 1):
        if kind == "set":
            out.append(FinAlgebra("set", n))
        elif kind == "pointed":
            if n >= 1:
                out.append(FinAlgebra("pointed", n, {"pt": 0}))
        elif kind in ("poset", "cpos"):
            seen: dict[tuple, FinAlgebra] = {}
            for leq in _enumerate_posets_raw(n):
                if kind == "cpos" and (n == 0 or _poset_components(leq, n) != 1):
                    continue
                alg = FinAlgebra(kind, n, {}, {"leq": leq})
                seen.setdefault(alg.canonical_key(), alg)
            out.extend(seen[k] for k in sorted(seen))
        elif kind == "slat":
            seen = {}
            for leq in _enumerate_posets_raw(n):
                meet = _meet_table(leq, n)
                if meet is None:
                    continue
                alg = FinAlgebra("slat", n, {"meet": meet})
                seen.setdefault(alg.canonical_key(), alg)
            out.extend(seen[k] for k in sorted(seen))
        elif kind == "lat":
            seen = {}
            for leq in _enumerate_posets_raw(n):
                meet = _meet_table(leq, n)
                if meet is None:
                    continue
                join = _join_table(leq, n)
                if join is None:
                    continue
                alg = FinAlgebra("lat", n, {"meet": meet, "join": join})
                seen.setdefault(alg.canonical_key(), alg)
            out.extend(seen[k] for k in sorted(seen))
        elif kind == "mon":
            out.extend(_enumerate_monoids(n))
    return out


# -- homomorphisms ------------------------------------------------------------


def enumerate_homs(a: FinAlgebra, b: FinAlgebra) -> list[tuple[int, ...]]:
    """All structure-preserving maps a -> b, in lexicographic table order."""
    n, m = a.size, b.size
    if n == 0:
        return [()]
    if m == 0:
        return []
    sig = a.signature
    f = [-1] * n
    # point constraints
    forced: dict[int, int] = {}
    for cname in sig.constants:
        ca, cb = a.ops[cname], b.ops[cname]
        if forced.get(ca, cb) != cb:
            return []
        forced[ca] = cb
    bin_ops = [(a.ops[o], b.ops[o]) for o in sig.binary]
    un_ops = [(a.ops[o], b.ops[o]) for o in sig.unary]
    rel_ps = [(a.rels[r], b.rels[r]) for r in sig.relations]
    out: list[tuple[int, ...]] = []

    def ok_after(k: int) -> bool:
        v = f[k]
        for ta, tb in bin_ops:
            for x in range(k + 1):
                fx = f[x]
                for y in range(k + 1):
                    if x != k and y != k and ta[x][y] != k:
                        continue
                    z = ta[x][y]
                    if z <= k and f[z] != tb[fx][f[y]]:
                        return False
        for ta, tb in un_ops:
            for x in range(k + 1):
                if x == k or ta[x] == k:
                    z = ta[x]
                    if z <= k and f[z] != tb[f[x]]:
                        return False
        for ra, rb in rel_ps:
            for x in range(k + 1):
                if ra[x][k] and not rb[f[x]][v]:
                    return False
                if ra[k][x] and not rb[v][f[x]]:
                    return False
        return True

    def rec(k: int):
        if k == n:
            out.append(tuple(f))
            return
        choices = (forced[k],) if k in forced else range(m)
        for v in choices:
            f[k] = v
            if ok_after(k):
                rec(k + 1)
        f[k] = -1

    rec(0)
    return out


def direct_product(a: FinAlgebra, b: FinAlgebra) -> tuple[FinAlgebra, list[tuple[int, int]]]:
    """Componentwise product structure; returns it plus the pair decoding
    (element i of the product is ``pairs[i]``, ordered lexicographically)."""
    if a.kind != b.kind:
        raise ValueError("product of different kinds")
    pairs = [(x, y) for x in range(a.size) for y in range(b.size)]
    idx = {p: i for i, p in enumerate(pairs)}
    sig = a.signature
    ops: dict[str, Any] = {}
    for c in sig.constants:
        ops[c] = idx[(a.ops[c], b.ops[c])]
    for u in sig.unary:
        ops[u] = tuple(idx[(a.ops[u][x], b.ops[u][y])] for x, y in pairs)
    for o in sig.binary:
        ta, tb = a.ops[o], b.ops[o]
        ops[o] = tuple(
            tuple(idx[(ta[x1][x2], tb[y1][y2])] for x2, y2 in pairs) for x1, y1 in pairs
        )
    rels: dict[str, Any] = {}
    for r in sig.relations:
        ra, rb = a.rels[r], b.rels[r]
        rels[r] = tuple(
            tuple(ra[x1][x2] and rb[y1][y2] for x2, y2 in pairs) for x1, y1 in pairs
        )
    return FinAlgebra(a.kind, len(pairs), ops, rels), pairs


# -- congruences ---------------------------------------------------------------


def _uf_find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _canon_partition(parent: list[int]) -> tuple[int, ...]:
    n = len(parent)
    return tuple(min(j for j in range(n) if _uf_find(parent, j) == _uf_find(parent, i)) for i in range(n))


def congruence_generate(alg: FinAlgebra, pairs: Iterable[tuple[int, int]]) -> tuple[int, ...]:
    """Smallest congruence containing ``pairs``: union-find closed under all
    operations (order relations play no part; congruences are for the
    operational kinds)."""
    n = alg.size
    parent = list(range(n))

    def union(x: int, y: int) -> bool:
        rx, ry = _uf_find(parent, x), _uf_find(parent, y)
        if rx == ry:
            return False
        parent[max(rx, ry)] = min(rx, ry)
        return True

    for x, y in pairs:
        union(x, y)
    changed = True
    bin_tables = [alg.ops[o] for o in alg.signature.binary]
    un_tables = [alg.ops[o] for o in alg.signature.unary]
    while changed:
        changed = False
        for t in bin_tables:
            for x in range(n):
                for y in range(n):
                    if _uf_find(parent, x) != _uf_find(parent, y):
                        continue
                    for z in range(n):
                        if union(t[x][z], t[y][z]):
                            changed = True
                        if union(t[z][x], t[z][y]):
                            changed = True
        for t in un_tables:
            for x in range(n):
                for y in range(n):
                    if _uf_find(parent, x) == _uf_find(parent, y) and union(t[x], t[y]):
                        changed = True
    return _canon_partition(parent)


def _partitions(n: int) -> Iterable[tuple[int, ...]]:
    """All partitions of 0..n-1 in restricted-growth form, mapped to
    min-representative form."""
    if n == 0:
        yield ()
        return
    rg = [0] * n

    def rec(k: int, mx: int):
        if k == n:
            first = {}
            rep = []
            for i, b in enumerate(rg):
                first.setdefault(b, i)
                rep.append(first[b])
            yield tuple(rep)
            return
        for b in range(mx + 2):
            rg[k] = b
            yield from rec(k + 1, max(mx, b))

    yield from rec(1, 0)


def _is_congruence(alg: FinAlgebra, rep: tuple[int, ...]) -> bool:
    for o in alg.signature.binary:
        t = alg.ops[o]
        n = alg.size
        for x in range(n):
            for y in range(x + 1, n):
                if rep[x] != rep[y]:
                    continue
                for z in range(n):
                    if rep[t[x][z]] != rep[t[y][z]] or rep[t[z][x]] != rep[t[z][y]]:
                        return False
    for o in alg.signature.unary:
        t = alg.ops[o]
        for x in range(alg.size):
            for y in range(x + 1, alg.size):
                if rep[x] == rep[y] and rep[t[x]] != rep[t[y]]:
                    return False
    return True


def all_congruences(alg: FinAlgebra) -> list[tuple[int, ...]]:
    """Every congruence of the structure, as min-representative tuples,
    sorted; found by filtering all partitions of the carrier."""
    return sorted(rep for rep in _partitions(alg.size) if _is_congruence(alg, rep))


def _refines(fine: tuple[int, ...], coarse: tuple[int, ...]) -> bool:
    pairs = {}
    for i in range(len(fine)):
        if pairs.setdefault(fine[i], coarse[i]) != coarse[i]:
            return False
    return True


def congruence_lattice(alg: FinAlgebra) -> dict:
    """The congruence lattice: elements, refinement order, meet and join
    tables (meet = common refinement, join = generated congruence)."""
    cons = all_congruences(alg)
    k = len(cons)
    pos = {c: i for i, c in enumerate(cons)}
    n = alg.size
    leq = [[_refines(cons[i], cons[j]) for j in range(k)] for i in range(k)]
    meet = [[0] * k for _ in range(k)]
    join = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            common = [0] * n
            seen: dict[tuple[int, int], int] = {}
            for x in range(n):
                key = (cons[i][x], cons[j][x])
                seen.setdefault(key, x)
                common[x] = seen[key]
            meet[i][j] = pos[tuple(common)]
            gen = congruence_generate(
                alg, [(x, cons[i][x]) for x in range(n)] + [(x, cons[j][x]) for x in range(n)]
            )
            join[i][j] = pos[gen]
    return {"elements": cons, "leq": leq, "meet": meet, "join": join}


def kernel_partition(table: Sequence[int], size_dom: int) -> tuple[int, ...]:
    """Kernel of a map as a min-representative partition of its domain."""
    first: dict[int, int] = {}
    return tuple(first.setdefault(table[i], i) for i in range(size_dom))


def quotient(alg: FinAlgebra, rep: tuple[int, ...]) -> tuple[FinAlgebra, tuple[int, ...]]:
    """Quotient structure by a congruence, plus the projection table.

    Blocks are numbered by first occurrence, so the projection is the
    identity-on-representatives map."""
    n = alg.size
    block_of: dict[int, int] = {}
    proj = []
    for i in range(n):
        proj.append(block_of.setdefault(rep[i], len(block_of)))
    m = len(block_of)
    reps = [0] * m
    for i in range(n):
        reps[proj[i]] = rep[i]
    sig = alg.signature
    ops: dict[str, Any] = {}
    for c in sig.constants:
        ops[c] = proj[alg.ops[c]]
    for u in sig.unary:
        ops[u] = tuple(proj[alg.ops[u][reps[i]]] for i in range(m))
    for o in sig.binary:
        t = alg.ops[o]
        ops[o] = tuple(tuple(proj[t[reps[i]][reps[j]]] for j in range(m)) for i in range(m))
    rels: dict[str, Any] = {}
    for r in sig.relations:
        raise ValueError("quotients are defined for operational kinds only")
    return FinAlgebra(alg.kind, m, ops, rels), tuple(proj)


def pushout_surjections(
    a: FinAlgebra,
    f: Sequence[int],
    b: FinAlgebra,
    g: Sequence[int],
    c: FinAlgebra,
) -> tuple[FinAlgebra, tuple[int, ...], tuple[int, ...]]:
    """Pushout of two surjective homs f: a ->> b and g: a ->> c.

    Computed as the quotient of ``a`` by the join of the two kernels; returns
    (apex, map b -> apex, map c -> apex)."""
    if sorted(set(f)) != list(range(b.size)) or sorted(set(g)) != list(range(c.size)):
        raise ValueError("pushout_surjections requires surjective maps")
    kf = kernel_partition(f, a.size)
    kg = kernel_partition(g, a.size)
    theta = congruence_generate(a, [(x, kf[x]) for x in range(a.size)] + [(x, kg[x]) for x in range(a.size)])
    apex, proj = quotient(a, theta)
    # b -> apex: pick any preimage under f
    fb = [0] * b.size
    for x in range(a.size):
        fb[f[x]] = proj[x]
    gc = [0] * c.size
    for x in range(a.size):
        gc[g[x]] = proj[x]
    return apex, tuple(fb), tuple(gc)


def center_of_monoid(alg: FinAlgebra) -> list[int]:
    """Elements commuting with every element."""
    if alg.kind != "mon":
        raise ValueError("center is defined for monoids")
    t = alg.ops["op"]
    n = alg.size
    return [x for x in range(n) if all(t[x][y] == t[y][x] for y in range(n))]


# -- category builders ----------------------------------------------------------


@dataclass
class Universe:
    """Concrete side of a built category: the structure behind each object
    and the function table behind each morphism."""

    kind: str
    algebras: dict[str, FinAlgebra] = field(default_factory=dict)
    maps: dict[str, tuple[int, ...]] = field(default_factory=dict)

    def size(self, oid: str) -> int:
        return self.algebras[oid].size


def default_names(kind: str, algs: Sequence[FinAlgebra]) -> list[str]:
    """Object ids: prefix + size, disambiguated by enumeration index when
    several structures share a size."""
    prefix = _PREFIX[kind]
    by_size: dict[int, list[int]] = {}
    for i, alg in enumerate(algs):
        by_size.setdefault(alg.size, []).append(i)
    names = []
    for i, alg in enumerate(algs):
        group = by_size[alg.size]
        suffix = "" if len(group) == 1 else f"_{group.index(i)}"
        names.append(f"{prefix}{alg.size}{suffix}")
    return names


def build_category(
    kind: str, max_size: int, include_empty: bool | None = None
) -> tuple[FinCategory, Universe]:
    """The full category of all structures of the kind up to ``max_size``
    (one object per isomorphism class) with every hom between them.

    Object ids: prefix + size, disambiguated by canonical index when several
    classes share a size.  Morphism ids: ``dom>cod#K`` with K the position of
    the function table in lexicographic order.  Composition is function
    composition, re-encoded through the table index.
    """
    algs = enumerate_structures(kind, max_size, include_empty)
    return category_from_algebras(kind, algs, max_size=max_size)


def category_from_algebras(
    kind: str,
    algs: Sequence[FinAlgebra],
    names: Sequence[str] | None = None,
    max_size: int | None = None,
) -> tuple[FinCategory, Universe]:
    """The full category on an explicit list of structures, with every hom
    between them.  Morphism ids: ``dom>cod#K`` with K the position of the
    function table in lexicographic order."""
    if names is None:
        names = default_names(kind, algs)
    if max_size is None:
        max_size = max((a.size for a in algs), default=0)
    uni = Universe(kind)
    for name, alg in zip(names, algs):
        uni.algebras[name] = alg

    morphisms: list[tuple[str, str, str]] = []
    identities: dict[str, str] = {}
    table_index: dict[tuple[str, str, tuple[int, ...]], str] = {}
    homs: dict[tuple[str, str], list[tuple[str, tuple[int, ...]]]] = {}
    for da, na in zip(algs, names):
        for db, nb in zip(algs, names):
            hs = enumerate_homs(da, db)
            entry = []
            for k, tbl in enumerate(hs):
                mid = f"{na}>{nb}#{k:04d}"
                morphisms.append((mid, na, nb))
                table_index[(na, nb, tbl)] = mid
                uni.maps[mid] = tbl
                entry.append((mid, tbl))
                if na == nb and tbl == tuple(range(da.size)):
                    identities[na] = mid
            homs[(na, nb)] = entry

    composition: dict[tuple[str, str], str] = {}
    for (na, nb), fs in homs.items():
        for (nb2, nc), gs in homs.items():
            if nb2 != nb:
                continue
            for gid, gt in gs:
                for fid, ft in fs:
                    comp = tuple(gt[x] for x in ft)
                    composition[(gid, fid)] = table_index[(na, nc, comp)]

    cat = FinCategory(
        objects=list(names),
        morphisms=morphisms,
        identities=identities,
        composition=composition,
        metadata={"kind": kind, "max_size": max_size, "sizes": {n: uni.algebras[n].size for n in names}},
    )
    return cat, uni


# -- category files -----------------------------------------------------------
#
# {"signature": [{"name", "arity"}...],
#  "algebras": [{"name", "carrier": n, "ops": {name: nested table},
#                "order": [[i, j]...]?, "basepoint": e?}...]}
#
# A pointed structure's point travels as "basepoint", an order relation as
# "order" (the list of related pairs, reflexive pairs included); everything
# else is an operation table under "ops" with the arity the signature
# declares (0 -> int, 1 -> flat list, 2 -> nested list).


def _signature_json(sig: Signature) -> list[dict]:
    out = [{"name": c, "arity": 0} for c in sig.constants if (sig.kind, c) != ("pointed", "pt")]
    out += [{"name": u, "arity": 1} for u in sig.unary]
    out += [{"name": b, "arity": 2} for b in sig.binary]
    return out


def dump_category(
    kind: str,
    algs: Sequence[FinAlgebra],
    names: Sequence[str] | None = None,
    **extra: Any,
) -> dict:
    """The category-file dict for an explicit list of structures."""
    if names is None:
        names = default_names(kind, algs)
    sig = SIGNATURES[kind]
    entries = []
    for name, alg in zip(names, algs):
        entry: dict[str, Any] = {"name": name, "carrier": alg.size}
        ops: dict[str, Any] = {}
        for c in sig.constants:
            if (kind, c) == ("pointed", "pt"):
                entry["basepoint"] = alg.ops[c]
            else:
                ops[c] = alg.ops[c]
        for u in sig.unary:
            ops[u] = list(alg.ops[u])
        for b in sig.binary:
            ops[b] = [list(row) for row in alg.ops[b]]
        if ops:
            entry["ops"] = ops
        for r in sig.relations:
            rel = alg.rels[r]
            entry["order"] = [
                [i, j] for i in range(alg.size) for j in range(alg.size) if rel[i][j]
            ]
        entries.append(entry)
    return {
        "format": "finext-category",
        "variety": kind,
        "signature": _signature_json(sig),
        "algebras": entries,
        **extra,
    }


def _infer_kind(data: Mapping[str, Any]) -> str | None:
    names = {e.get("name") for e in data.get("signature", []) if isinstance(e, Mapping)}
    algs = data.get("algebras", [])
    if names == {"meet"}:
        return "slat"
    if names == {"meet", "join"}:
        return "lat"
    if names == {"e", "op"}:
        return "mon"
    if names:
        return None
    if any(isinstance(a, Mapping) and "basepoint" in a for a in algs):
        return "pointed"
    if any(isinstance(a, Mapping) and "order" in a for a in algs):
        return "poset"
    return "set"


_VARIETY_ALIASES = {
    "set": "set", "pointed": "pointed", "poset": "poset", "cpos": "cpos",
    "semilattice": "slat", "slat": "slat", "lattice": "lat", "lat": "lat",
    "monoid": "mon", "mon": "mon",
}


def load_category(data: Mapping[str, Any]) -> tuple[tuple[str, list[FinAlgebra], list[str]] | None, list[str]]:
    """Parse and validate a category-file dict.

    Returns ``((kind, algebras, names), errors)``; the first component is
    None when errors make the file unusable."""
    errors: list[str] = []
    if not isinstance(data, Mapping):
        return None, ["top level: expected an object"]
    raw_algs = data.get("algebras")
    if not isinstance(raw_algs, list):
        return None, ["algebras: expected a list"]
    variety = data.get("variety")
    if variety is not None and variety not in _VARIETY_ALIASES:
        return None, [f"variety: unknown value {variety!r}"]
    kind = _VARIETY_ALIASES[variety] if variety is not None else _infer_kind(data)
    if kind is None:
        return None, ["signature: does not match any supported structure kind"]
    sig = SIGNATURES[kind]
    declared = {(e.get("name"), e.get("arity")) for e in data.get("signature", []) if isinstance(e, Mapping)}
    expected = {(e["name"], e["arity"]) for e in _signature_json(sig)}
    if data.get("signature") is not None and declared != expected:
        errors.append(
            f"signature: expected {sorted(expected)} for variety {kind!r}, got {sorted(declared)}"
        )

    algs: list[FinAlgebra] = []
    names: list[str] = []
    seen: set[str] = set()
    for idx, entry in enumerate(raw_algs):
        where = f"algebras[{idx}]"
        if not isinstance(entry, Mapping):
            errors.append(f"{where}: expected an object")
            continue
        name = entry.get("name", f"A{idx}")
        if not isinstance(name, str) or not name:
            errors.append(f"{where}: name must be a nonempty string")
            continue
        where = f"{where} ({name})"
        if name in seen:
            errors.append(f"{where}: duplicate object name")
            continue
        n = entry.get("carrier")
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            errors.append(f"{where}: carrier must be a nonnegative integer")
            continue
        ops: dict[str, Any] = {}
        rels: dict[str, Any] = {}
        bad = False
        raw_ops = entry.get("ops", {})
        if not isinstance(raw_ops, Mapping):
            errors.append(f"{where}: ops must be an object")
            continue
        known = set(sig.constants) | set(sig.unary) | set(sig.binary)
        for op_name in raw_ops:
            if op_name not in known or (kind, op_name) == ("pointed", "pt"):
                errors.append(f"{where}: unknown operation {op_name!r}")
                bad = True
        for c in sig.constants:
            if (kind, c) == ("pointed", "pt"):
                v = entry.get("basepoint")
                missing = "basepoint"
            else:
                v = raw_ops.get(c)
                missing = f"ops.{c}"
            if not isinstance(v, int) or isinstance(v, bool) or not (0 <= v < n):
                errors.append(f"{where}: {missing} must be an element index")
                bad = True
            else:
                ops[c] = v
        for u in sig.unary:
            t = raw_ops.get(u)
            if (
                not isinstance(t, list)
                or len(t) != n
                or any(not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < n for x in t)
            ):
                errors.append(f"{where}: ops.{u} must be a length-{n} table of element indices")
                bad = True
            else:
                ops[u] = tuple(t)
        for b in sig.binary:
            t = raw_ops.get(b)
            ok = (
                isinstance(t, list)
                and len(t) == n
                and all(
                    isinstance(row, list)
                    and len(row) == n
                    and all(isinstance(x, int) and not isinstance(x, bool) and 0 <= x < n for x in row)
                    for row in t
                )
            )
            if not ok:
                errors.append(f"{where}: ops.{b} must be an {n}x{n} table of element indices")
                bad = True
            else:
                ops[b] = tuple(tuple(row) for row in t)
        for r in sig.relations:
            pairs = entry.get("order", [[i, i] for i in range(n)])
            ok = isinstance(pairs, list) and all(
                isinstance(p, list)
                and len(p) == 2
                and all(isinstance(x, int) and not isinstance(x, bool) and 0 <= x < n for x in p)
                for p in pairs
            )
            if not ok:
                errors.append(f"{where}: order must be a list of [i, j] element pairs")
                bad = True
            else:
                mat = [[False] * n for _ in range(n)]
                for i, j in pairs:
                    mat[i][j] = True
                rels[r] = tuple(tuple(row) for row in mat)
        if bad:
            continue
        alg = FinAlgebra(kind, n, ops, rels)
        for msg in validate_algebra(alg):
            errors.append(f"{where}: {msg}")
            bad = True
        if not bad:
            algs.append(alg)
            names.append(name)
            seen.add(name)
    if errors:
        return None, errors
    return (kind, algs, names), []
