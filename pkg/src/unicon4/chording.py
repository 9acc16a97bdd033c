"""Path predicates underlying quasi-4-compatibility.

A path is *quasi 3-circuit chording* when some subpath (any consecutive
segment, including the whole path and single edges) admits three
internally-disjoint detour paths between its endpoints that avoid every
other vertex of the host path.  The e-plus variant asks whether a path
acquires that property once a missing edge e is added.  A *quasi chord*
joins two non-consecutive vertices of some cycle while meeting the cycle
only at its endpoints.

The existence queries quantify over all simple u-v paths.  Enumeration is
exhaustive but budgeted: a truncated search that found no witness raises
BudgetExceeded instead of answering False.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .connectivity import _flow_paths
from .graph_core import Graph, GraphError, _mask_bits

PathVerts = Tuple[int, ...]
Pair = Tuple[int, int]


class BudgetExceeded(RuntimeError):
    """Search space exceeded the budget; the query is unresolved, not false."""


@dataclass(frozen=True)
class SearchBudget:
    max_paths: int = 1_000_000
    max_len: Optional[int] = None  # max vertices per path; None = graph order

    def __post_init__(self):
        if self.max_paths <= 0 or (self.max_len is not None and self.max_len <= 0):
            raise GraphError("search budget fields must be positive")


DEFAULT_BUDGET = SearchBudget()


@dataclass(frozen=True)
class ChordingWitness:
    path: PathVerts
    subpath_ends: Pair
    fan: Tuple[PathVerts, PathVerts, PathVerts]


def validate_path(g: Graph, path: Sequence[int]) -> PathVerts:
    p = tuple(path)
    if len(p) < 2:
        raise GraphError("a path needs at least one edge")
    if len(set(p)) != len(p):
        raise GraphError(f"repeated vertex in path {p}")
    for a, b in zip(p, p[1:]):
        if not (0 <= a < g.n and 0 <= b < g.n) or not g.has_edge(a, b):
            raise GraphError(f"consecutive pair ({a},{b}) not an edge")
    return p


# -- enumeration of simple paths ---------------------------------------------


@functools.lru_cache(maxsize=512)
def _simple_paths(g: Graph, u: int, v: int, max_paths: int,
                  max_len: int) -> Tuple[Tuple[PathVerts, ...], bool]:
    """All simple u-v paths sorted by (length, lex); second item is False
    when the budget truncated the sweep."""
    paths: List[PathVerts] = []
    complete = True
    adj = g._adj
    target_bit = 1 << v

    def dfs(stack: List[int], seen: int) -> bool:
        nonlocal complete
        here = stack[-1]
        nbrs = adj[here] & ~seen
        if nbrs & target_bit and len(stack) + 1 <= max_len:
            if len(paths) >= max_paths:
                complete = False
                return False
            paths.append(tuple(stack) + (v,))
        nbrs &= ~target_bit
        if len(stack) + 1 >= max_len:  # no room for another interior vertex
            if nbrs:
                complete = False
            return True
        for w in _mask_bits(nbrs):
            stack.append(w)
            ok = dfs(stack, seen | (1 << w))
            stack.pop()
            if not ok:
                return False
        return True

    dfs([u], 1 << u)
    paths.sort(key=lambda p: (len(p), p))
    return tuple(paths), complete


def _paths_for(g: Graph, u: int, v: int, budget: SearchBudget) -> Tuple[Tuple[PathVerts, ...], bool]:
    if u == v:
        raise GraphError("path endpoints must differ")
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise GraphError("vertex out of range")
    max_len = budget.max_len if budget.max_len is not None else g.n
    return _simple_paths(g, u, v, budget.max_paths, min(max_len, g.n))


# -- the 3-fan test per subpath ----------------------------------------------


def _subpaths(p: PathVerts):
    for i in range(len(p) - 1):
        for j in range(i + 1, len(p)):
            yield i, j


@functools.lru_cache(maxsize=200_000)
def _fan_levels(g: Graph, p: PathVerts) -> Tuple[int, ...]:
    """For every subpath (i,j) of p, the number of internally-disjoint
    detours between p[i] and p[j] in g minus the rest of p, capped at 3.

    "Detour" excludes the subpath itself: its interior is deleted with the
    rest of p, and for single-edge subpaths the edge itself is barred.
    """
    adj = g._adj
    full = (1 << g.n) - 1
    pmask = 0
    for x in p:
        pmask |= 1 << x
    out = []
    for i, j in _subpaths(p):
        a, b = p[i], p[j]
        alive = (full & ~pmask) | (1 << a) | (1 << b)
        banned = (a, b) if j == i + 1 else None
        da = bin(adj[a] & alive).count("1") - (1 if banned and g.has_edge(a, b) else 0)
        db = bin(adj[b] & alive).count("1") - (1 if banned and g.has_edge(a, b) else 0)
        if da < 3 or db < 3:
            cap = min(da, db, 3)
            if cap <= 0:
                out.append(0)
                continue
            out.append(len(_flow_paths(adj, a, b, cap, alive, banned)))
        else:
            out.append(len(_flow_paths(adj, a, b, 3, alive, banned)))
    return tuple(out)


def classify_quasi_3cc(g: Graph, path: Sequence[int]) -> Optional[ChordingWitness]:
    """A verified witness that the path is quasi 3-circuit chording, or None."""
    p = validate_path(g, path)
    levels = _fan_levels(g, p)
    for (i, j), level in zip(_subpaths(p), levels):
        if level < 3:
            continue
        a, b = p[i], p[j]
        full = (1 << g.n) - 1
        pmask = 0
        for x in p:
            pmask |= 1 << x
        alive = (full & ~pmask) | (1 << a) | (1 << b)
        banned = (a, b) if j == i + 1 else None
        fan = _flow_paths(g._adj, a, b, 3, alive, banned)
        witness = ChordingWitness(p, (a, b), tuple(tuple(q) for q in fan[:3]))
        assert verify_witness(g, witness)
        return witness
    return None


def verify_witness(g: Graph, w: ChordingWitness) -> bool:
    """Re-validate a witness independently of the search that found it."""
    try:
        p = validate_path(g, w.path)
    except GraphError:
        return False
    a, b = w.subpath_ends
    if a not in p or b not in p:
        return False
    i, j = p.index(a), p.index(b)
    if i >= j:
        return False
    if len(w.fan) != 3:
        return False
    subpath = p[i:j + 1]
    others = set(p) - {a, b}
    interiors = []
    for q in w.fan:
        try:
            validate_path(g, q)
        except GraphError:
            return False
        if q[0] != a or q[-1] != b or q == subpath:
            return False
        inner = set(q[1:-1])
        if inner & others:
            return False
        interiors.append(inner)
    for x in range(3):
        for y in range(x + 1, 3):
            if interiors[x] & interiors[y]:
                return False
    return True


def is_e_plus_quasi_3cc(g: Graph, path: Sequence[int], e: Pair) -> bool:
    """True iff the path is not quasi 3-circuit chording but becomes so in g+e."""
    p = validate_path(g, path)
    a, b = e
    if g.has_edge(a, b):
        raise GraphError(f"edge ({a},{b}) already present")
    if a == b or not (0 <= a < g.n and 0 <= b < g.n):
        raise GraphError(f"bad edge ({a},{b})")
    for x, y in zip(p, p[1:]):
        if {x, y} == {a, b}:
            raise GraphError("the added edge may not be an edge of the path")
    levels = _fan_levels(g, p)
    if any(lv >= 3 for lv in levels):
        return False
    return _eplus_hits(g, p, levels, e)


def _eplus_hits(g: Graph, p: PathVerts, levels: Tuple[int, ...], e: Pair) -> bool:
    # adding one edge raises any local connectivity by at most 1, so only
    # subpaths currently at level 2 can reach 3; the edge must also survive
    # the deletion of the path remainder
    a, b = e
    adj2 = list(g._adj)
    adj2[a] |= 1 << b
    adj2[b] |= 1 << a
    full = (1 << g.n) - 1
    pmask = 0
    for x in p:
        pmask |= 1 << x
    for (i, j), level in zip(_subpaths(p), levels):
        if level != 2:
            continue
        x, y = p[i], p[j]
        alive = (full & ~pmask) | (1 << x) | (1 << y)
        if not (alive >> a & 1) or not (alive >> b & 1):
            continue
        banned = (x, y) if j == i + 1 else None
        if len(_flow_paths(adj2, x, y, 3, alive, banned)) >= 3:
            return True
    return False


# -- existence queries over all u-v paths ------------------------------------

_verdicts: Dict[tuple, bool] = {}


def clear_caches() -> None:
    _verdicts.clear()
    _fan_levels.cache_clear()
    _simple_paths.cache_clear()


def _finish(key: tuple, found: bool, complete: bool, what: str):
    if found:
        _verdicts[key] = True
        return True
    if not complete:
        raise BudgetExceeded(f"path sweep for {what} truncated before a verdict")
    _verdicts[key] = False
    return False


def exists_quasi_3cc_path(g: Graph, u: int, v: int,
                          budget: SearchBudget = DEFAULT_BUDGET) -> bool:
    """Is some simple u-v path quasi 3-circuit chording in g?"""
    key = ("q3cc", g, u, v)
    if key in _verdicts:
        return _verdicts[key]
    paths, complete = _paths_for(g, u, v, budget)
    found = any(any(lv >= 3 for lv in _fan_levels(g, p)) for p in paths)
    return _finish(key, found, complete, f"quasi-3cc {u}-{v}")


def exists_e_plus_quasi_3cc_path(g: Graph, u: int, v: int, e: Pair,
                                 budget: SearchBudget = DEFAULT_BUDGET) -> bool:
    """Is some simple u-v path of g an e-plus quasi 3-circuit chording path?"""
    a, b = e
    if g.has_edge(a, b):
        raise GraphError(f"edge ({a},{b}) already present")
    key = ("eplus", g, u, v, (min(a, b), max(a, b)))
    if key in _verdicts:
        return _verdicts[key]
    paths, complete = _paths_for(g, u, v, budget)
    found = False
    for p in paths:
        levels = _fan_levels(g, p)
        if any(lv >= 3 for lv in levels):
            continue
        if _eplus_hits(g, p, levels, e):
            found = True
            break
    return _finish(key, found, complete, f"e-plus quasi-3cc {u}-{v}")


def find_quasi_3cc_path(g: Graph, u: int, v: int,
                        budget: SearchBudget = DEFAULT_BUDGET):
    """First (path, witness) pair in enumeration order, or None."""
    paths, complete = _paths_for(g, u, v, budget)
    for p in paths:
        w = classify_quasi_3cc(g, p)
        if w is not None:
            return p, w
    if not complete:
        raise BudgetExceeded(f"quasi-3cc witness sweep {u}-{v} truncated")
    return None


def find_e_plus_quasi_3cc_path(g: Graph, u: int, v: int, e: Pair,
                               budget: SearchBudget = DEFAULT_BUDGET):
    """First (path, witness-in-g+e) pair in enumeration order, or None."""
    a, b = e
    if g.has_edge(a, b):
        raise GraphError(f"edge ({a},{b}) already present")
    gplus = Graph(g.n, list(g.edges()) + [(a, b)])
    paths, complete = _paths_for(g, u, v, budget)
    for p in paths:
        if any(lv >= 3 for lv in _fan_levels(g, p)):
            continue
        w = classify_quasi_3cc(gplus, p)
        if w is not None:
            return p, w
    if not complete:
        raise BudgetExceeded(f"e-plus witness sweep {u}-{v} truncated")
    return None


def find_quasi_chord(g: Graph, u: int, v: int,
                     budget: SearchBudget = DEFAULT_BUDGET,
                     strict: bool = False):
    """First (path, cycle-as-two-arcs) making a quasi chord, or None."""
    if strict and g.has_edge(u, v):
        return None
    paths, complete = _paths_for(g, u, v, budget)
    full = (1 << g.n) - 1
    for p in paths:
        interior = 0
        for x in p[1:-1]:
            interior |= 1 << x
        alive = full & ~interior
        arcs = _flow_paths(g._adj, u, v, 2, alive, (u, v))
        if len(arcs) >= 2:
            return p, (tuple(arcs[0]), tuple(arcs[1]))
    if not complete:
        raise BudgetExceeded(f"quasi chord sweep {u}-{v} truncated")
    return None


def exists_quasi_chord(g: Graph, u: int, v: int,
                       budget: SearchBudget = DEFAULT_BUDGET,
                       strict: bool = False) -> bool:
    """Is some simple u-v path a quasi chord of some cycle of g?

    Default reading: the cycle passes through u and v non-consecutively.
    With strict=True, u and v must additionally be non-adjacent in g.
    """
    if u == v:
        raise GraphError("quasi chord endpoints must differ")
    if strict and g.has_edge(u, v):
        return False
    key = ("qchord", g, u, v, strict)
    if key in _verdicts:
        return _verdicts[key]
    paths, complete = _paths_for(g, u, v, budget)
    full = (1 << g.n) - 1
    found = False
    for p in paths:
        interior = 0
        for x in p[1:-1]:
            interior |= 1 << x
        alive = full & ~interior
        # a suitable cycle = two internally-disjoint u-v paths of length >= 2
        if len(_flow_paths(g._adj, u, v, 2, alive, (u, v))) >= 2:
            found = True
            break
    return _finish(key, found, complete, f"quasi chord {u}-{v}")
