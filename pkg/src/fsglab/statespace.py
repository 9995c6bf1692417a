"""Friends-and-strangers state spaces over arrangements.

Three variants share one interface:

* ``fs``   -- both graphs simple; arrangements are label bijections.
* ``fsm``  -- positions simple, labels carry multiplicities; arrangements
  are label vectors with prescribed label counts.
* ``fsmm`` -- both sides carry multiplicities; arrangements are count
  matrices (rows = labels, columns = positions).

Arrangements are plain tuples so they hash cheaply into dense index tables.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .graphs import (
    IncompatibleSizesError,
    MultiplicityGraph,
    SimpleGraph,
    as_multiplicity,
    bipartition,
    contingency_count,
    find_k_bridges,
    lift,
    star_center,
)


class BudgetExceededError(RuntimeError):
    def __init__(self, required: int, budget: int, what: str = "states"):
        super().__init__(
            f"state space needs {required} {what}, budget is {budget}"
        )
        self.required = required
        self.budget = budget


class NonBipartiteError(ValueError):
    pass


class InvalidArrangementError(ValueError):
    pass


# -- spaces -------------------------------------------------------------------


class FSSpace:
    """FS(X, Y): bijections from positions V(X) to labels V(Y)."""

    variant = "fs"

    def __init__(self, x: SimpleGraph, y: SimpleGraph):
        if x.n != y.n:
            raise IncompatibleSizesError(
                f"|V(X)|={x.n} but |V(Y)|={y.n}"
            )
        self.x = x
        self.y = y

    def count(self) -> int:
        return math.factorial(self.x.n)

    def enumerate(self) -> Iterator[tuple[int, ...]]:
        return itertools.permutations(range(self.y.n))

    def is_valid(self, a: Sequence[int]) -> bool:
        return sorted(a) == list(range(self.y.n))

    def neighbors(self, a: tuple[int, ...]) -> list[tuple[int, ...]]:
        out = []
        for p, q in self.x.edge_list:
            if self.y.has_edge(a[p], a[q]):
                b = list(a)
                b[p], b[q] = b[q], b[p]
                out.append(tuple(b))
        return out


class FSmSpace:
    """FSm(X, Y): label vectors over positions V(X), label y used mult[y] times."""

    variant = "fsm"

    def __init__(self, x: SimpleGraph, y: MultiplicityGraph):
        if x.n != y.total:
            raise IncompatibleSizesError(
                f"|V(X)|={x.n} but total multiplicity of Y is {y.total}"
            )
        self.x = x
        self.y = y

    def count(self) -> int:
        c = math.factorial(self.y.total)
        for k in self.y.mult:
            c //= math.factorial(k)
        return c

    def enumerate(self) -> Iterator[tuple[int, ...]]:
        return _multiset_permutations(list(self.y.mult), self.x.n)

    def is_valid(self, a: Sequence[int]) -> bool:
        counts = [0] * self.y.base.n
        for lab in a:
            if not 0 <= lab < self.y.base.n:
                return False
            counts[lab] += 1
        return tuple(counts) == self.y.mult

    def neighbors(self, a: tuple[int, ...]) -> list[tuple[int, ...]]:
        ybase = self.y.base
        out = []
        for p, q in self.x.edge_list:
            if ybase.has_edge(a[p], a[q]):
                b = list(a)
                b[p], b[q] = b[q], b[p]
                out.append(tuple(b))
        return out


class FSmmSpace:
    """FSmm(X, Y): count matrices, row u = copies of label u on each position.

    A move swaps one copy of label u on position y1 with one copy of a
    different label v on an adjacent position y2, and needs uv in E(X) and
    y1y2 in E(Y).  With all X-multiplicities equal to 1 this is exactly the
    fsm variant.
    """

    variant = "fsmm"

    def __init__(self, x: MultiplicityGraph, y: MultiplicityGraph):
        if x.total != y.total:
            raise IncompatibleSizesError(
                f"total multiplicities differ: {x.total} vs {y.total}"
            )
        self.x = x
        self.y = y

    def count(self) -> int:
        return contingency_count(self.x.mult, self.y.mult)

    def enumerate(self) -> Iterator[tuple[tuple[int, ...], ...]]:
        rows = list(self.x.mult)
        cols = list(self.y.mult)

        def fill(i: int, remaining: list[int], acc: list[tuple[int, ...]]):
            if i == len(rows):
                yield tuple(acc)
                return
            for row in _bounded_compositions(rows[i], remaining):
                acc.append(row)
                left = [r - v for r, v in zip(remaining, row)]
                yield from fill(i + 1, left, acc)
                acc.pop()

        return fill(0, cols, [])

    def is_valid(self, a) -> bool:
        if len(a) != self.x.base.n:
            return False
        if any(len(row) != self.y.base.n for row in a):
            return False
        if any(v < 0 for row in a for v in row):
            return False
        if tuple(sum(row) for row in a) != self.x.mult:
            return False
        return tuple(sum(col) for col in zip(*a)) == self.y.mult

    def neighbors(self, a) -> list[tuple[tuple[int, ...], ...]]:
        out = []
        for u, v in self.x.base.edge_list:
            for y1, y2 in self.y.base.edge_list:
                if a[u][y1] > 0 and a[v][y2] > 0:
                    out.append(_matrix_swap(a, u, v, y1, y2))
                if a[u][y2] > 0 and a[v][y1] > 0:
                    out.append(_matrix_swap(a, u, v, y2, y1))
        return out


def _matrix_swap(a, u, v, y1, y2):
    b = [list(row) for row in a]
    b[u][y1] -= 1
    b[u][y2] += 1
    b[v][y2] -= 1
    b[v][y1] += 1
    return tuple(tuple(row) for row in b)


def _multiset_permutations(counts: list[int], length: int) -> Iterator[tuple[int, ...]]:
    """All vectors using label i exactly counts[i] times, lexicographically."""
    out: list[int] = []

    def rec():
        if len(out) == length:
            yield tuple(out)
            return
        for lab, c in enumerate(counts):
            if c > 0:
                counts[lab] -= 1
                out.append(lab)
                yield from rec()
                out.pop()
                counts[lab] += 1

    return rec()


def _bounded_compositions(total: int, bounds: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Compositions of ``total`` into len(bounds) parts with part i <= bounds[i],
    in lexicographic order."""
    k = len(bounds)
    acc: list[int] = []

    def rec(i: int, left: int):
        if i == k - 1:
            if left <= bounds[i]:
                acc.append(left)
                yield tuple(acc)
                acc.pop()
            return
        for take in range(min(bounds[i], left) + 1):
            acc.append(take)
            yield from rec(i + 1, left - take)
            acc.pop()

    if k == 0:
        if total == 0:
            yield ()
        return
    yield from rec(0, total)


def space_for(x, y, variant: str):
    if variant == "fs":
        return FSSpace(_as_simple(x), _as_simple(y))
    if variant == "fsm":
        return FSmSpace(_as_simple(x), as_multiplicity(y))
    if variant == "fsmm":
        return FSmmSpace(as_multiplicity(x), as_multiplicity(y))
    raise ValueError(f"unknown variant {variant!r}")


def _as_simple(g) -> SimpleGraph:
    if isinstance(g, MultiplicityGraph):
        if any(c != 1 for c in g.mult):
            raise IncompatibleSizesError(
                "variant requires unit multiplicities on this side"
            )
        return g.base
    return g


# -- components ---------------------------------------------------------------


@dataclass
class ComponentsReport:
    component_count: int
    component_sizes: list[int]
    vertex_count: int
    edge_count: int
    component_id: dict = field(repr=False)

    def component_of(self, a) -> int:
        return self.component_id[a]

    def to_json_dict(self, include_ids: bool = False) -> dict:
        d = {
            "vertices": self.vertex_count,
            "edges": self.edge_count,
            "components": list(self.component_sizes),
        }
        if include_ids:
            d["component_id"] = {
                _arrangement_key(a): i for a, i in self.component_id.items()
            }
        return d


def _arrangement_key(a) -> str:
    if a and isinstance(a[0], tuple):
        return ";".join(",".join(map(str, row)) for row in a)
    return ",".join(map(str, a))


class _UnionFind:
    __slots__ = ("parent", "rank")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, v: int) -> int:
        p = self.parent
        while p[v] != v:
            p[v] = p[p[v]]
            v = p[v]
        return v

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True


def build_components(
    x, y, budget: Optional[int] = None, variant: str = "fs", space=None
) -> ComponentsReport:
    """Exact component partition of the full arrangement space.

    Component ids are dense and assigned in order of each component's first
    arrangement in the canonical enumeration, so reports are deterministic.
    """
    if space is None:
        space = space_for(x, y, variant)
    total = space.count()
    if budget is not None and total > budget:
        raise BudgetExceededError(total, budget)
    arrangements = list(space.enumerate())
    index = {a: i for i, a in enumerate(arrangements)}
    uf = _UnionFind(total)
    links = 0
    for i, a in enumerate(arrangements):
        for b in space.neighbors(a):
            links += 1
            uf.union(i, index[b])
    ids: dict = {}
    root_id: dict[int, int] = {}
    sizes: list[int] = []
    for i, a in enumerate(arrangements):
        r = uf.find(i)
        if r not in root_id:
            root_id[r] = len(sizes)
            sizes.append(0)
        cid = root_id[r]
        sizes[cid] += 1
        ids[a] = cid
    return ComponentsReport(
        component_count=len(sizes),
        component_sizes=sizes,
        vertex_count=total,
        edge_count=links // 2,
        component_id=ids,
    )


def is_exchangeable(x, y, a, u: int, v: int, budget: Optional[int] = None,
                    variant: str = "fs") -> bool:
    """Whether a pair can be transposed by a chain of friendly swaps.

    For the bijective variant (u, v) are labels and the target is the
    arrangement with those labels exchanged.  For the multiplicity variant
    (u, v) are positions and the target swaps the two entries.
    """
    if u == v:
        raise ValueError("pair must be distinct")
    space = space_for(x, y, variant)
    a = tuple(a)
    if not space.is_valid(a):
        raise InvalidArrangementError(f"invalid arrangement {a!r}")
    if variant == "fs":
        target = tuple(u if t == v else v if t == u else t for t in a)
    elif variant == "fsm":
        b = list(a)
        b[u], b[v] = b[v], b[u]
        target = tuple(b)
    else:
        raise ValueError("exchangeability is defined for fs and fsm variants")
    if target == a:
        return True
    seen = {a}
    frontier = [a]
    while frontier:
        nxt = []
        for cur in frontier:
            for nb in space.neighbors(cur):
                if nb in seen:
                    continue
                if nb == target:
                    return True
                seen.add(nb)
                nxt.append(nb)
                if budget is not None and len(seen) > budget:
                    raise BudgetExceededError(len(seen), budget)
        frontier = nxt
    return False


# -- audits -------------------------------------------------------------------


def _sign(perm: Sequence[int]) -> int:
    n = len(perm)
    seen = [False] * n
    sign = 1
    for s in range(n):
        if seen[s]:
            continue
        length = 0
        v = s
        while not seen[v]:
            seen[v] = True
            v = perm[v]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def parity_audit(x: SimpleGraph, y: SimpleGraph,
                 report: Optional[ComponentsReport] = None,
                 budget: Optional[int] = None) -> bool:
    """Check the two-coloring parity invariant on every component of FS(X, Y).

    For arrangements sigma, tau in one component, sgn(sigma^-1 tau) must
    equal the parity of |tau(A_X) n A_Y| - |sigma(A_X) n A_Y|.
    """
    bx = bipartition(x)
    by = bipartition(y)
    if bx is None or by is None:
        raise NonBipartiteError("parity audit needs bipartite inputs")
    ax, ay = bx[0], by[0]
    if report is None:
        report = build_components(x, y, budget=budget, variant="fs")

    def a_count(s) -> int:
        return sum(1 for p in ax if s[p] in ay)

    reps: dict[int, tuple] = {}
    rep_inv: dict[int, list[int]] = {}
    rep_cnt: dict[int, int] = {}
    for a, cid in report.component_id.items():
        if cid not in reps:
            inv = [0] * len(a)
            for p, lab in enumerate(a):
                inv[lab] = p
            reps[cid] = a
            rep_inv[cid] = inv
            rep_cnt[cid] = a_count(a)
            continue
        inv = rep_inv[cid]
        rel = [inv[lab] for lab in a]  # rep^-1 . a as a permutation of positions
        sgn = _sign(rel)
        diff = a_count(a) - rep_cnt[cid]
        if (sgn == 1) != (diff % 2 == 0):
            return False
    return True


def quotient_audit(x: SimpleGraph, y: MultiplicityGraph,
                   budget: Optional[int] = None) -> bool:
    """Verify that collapsing lift arrangements by block projection yields
    exactly the multiplicity-variant component partition."""
    lifted, cliques = lift(y)
    space = FSSpace(x, lifted)
    total = space.count()
    if budget is not None and total > budget:
        raise BudgetExceededError(total, budget)
    arrangements = list(space.enumerate())
    index = {a: i for i, a in enumerate(arrangements)}
    block_of = cliques.block_of
    uf = _UnionFind(total)
    for i, a in enumerate(arrangements):
        for b in space.neighbors(a):
            uf.union(i, index[b])
    # glue equal-projection arrangements (label permutations within blocks)
    groups: dict[tuple[int, ...], int] = {}
    projections = []
    for i, a in enumerate(arrangements):
        proj = tuple(block_of[lab] for lab in a)
        projections.append(proj)
        if proj in groups:
            uf.union(i, groups[proj])
        else:
            groups[proj] = i
    projected: dict[int, set] = {}
    for i in range(total):
        projected.setdefault(uf.find(i), set()).add(projections[i])
    lifted_partition = {frozenset(s) for s in projected.values()}

    direct = build_components(x, y, budget=budget, variant="fsm")
    direct_parts: dict[int, set] = {}
    for a, cid in direct.component_id.items():
        direct_parts.setdefault(cid, set()).add(a)
    direct_partition = {frozenset(s) for s in direct_parts.values()}
    return lifted_partition == direct_partition


# -- bridge component invariant -----------------------------------------------


class KBridgeError(ValueError):
    pass


def kbridge_component_invariant(
    x: SimpleGraph,
    star: MultiplicityGraph,
    bridge: Sequence[int],
    leaf: int,
    start: Sequence[int],
    budget: Optional[int] = None,
) -> bool:
    """Explore the component of ``start`` and check the blank-tracking
    containment invariant at every arrangement.

    The invariant: every copy of ``leaf`` sits either in the endpoint-side
    region A or on one of the first x(tau) non-blank bridge positions,
    where x(tau) counts blanks inside A.
    """
    bridge = tuple(bridge)
    k = star.mult[star_center(star.base)]
    if len(bridge) != k:
        raise KBridgeError(f"bridge length {len(bridge)} != center multiplicity {k}")
    if bridge not in find_k_bridges(x, k) and tuple(reversed(bridge)) not in find_k_bridges(x, k):
        raise KBridgeError(f"{bridge} is not a {k}-bridge of the position graph")
    blank = star_center(star.base)
    interior = set(bridge[1:-1])
    rest, old = x.subgraph(set(range(x.n)) - interior)
    pos = {v: i for i, v in enumerate(old)}
    comps = rest.connected_components()
    side_a: set[int] = set()
    for comp in comps:
        if pos[bridge[0]] in comp:
            side_a = {old[i] for i in comp}
            break
    side_a.discard(bridge[0])

    space = FSmSpace(x, star)
    start = tuple(start)
    if not space.is_valid(start):
        raise InvalidArrangementError("start arrangement invalid")

    def invariant_holds(tau) -> bool:
        x_tau = sum(1 for p in side_a if tau[p] == blank)
        nonblank = [a for a in bridge if tau[a] != blank]
        allowed = set(nonblank[:x_tau]) | side_a
        return all(
            p in allowed for p in range(x.n) if tau[p] == leaf
        )

    if not invariant_holds(start):
        return False
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for cur in frontier:
            for nb in space.neighbors(cur):
                if nb in seen:
                    continue
                seen.add(nb)
                if budget is not None and len(seen) > budget:
                    raise BudgetExceededError(len(seen), budget)
                if not invariant_holds(nb):
                    return False
                nxt.append(nb)
        frontier = nxt
    return True
