"""Simple undirected graphs on dense 0-based vertex ids, with graph6 /
edge-list / DOT formats, exact canonical certificates and the fixture
graphs used throughout the toolkit.

Graphs are immutable values: every mutator returns a fresh Graph and never
aliases the input.  Adjacency is kept as per-vertex bitmasks, which keeps
the connectivity and search code elsewhere in the package fast without any
third-party dependency.
"""

from __future__ import annotations

import itertools
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

MAX_ORDER = 16  # canonical certificates and the file formats are only supported up to here

Edge = Tuple[int, int]


class GraphError(ValueError):
    """Malformed graph construction or a violated operation precondition."""


class FormatError(GraphError):
    """Unparseable or out-of-contract graph6 / edge-list input."""


def _norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple undirected graph with vertices 0..n-1."""

    __slots__ = ("n", "_adj", "_hash")

    def __init__(self, n: int, edges: Iterable[Edge] = ()):
        if n < 0:
            raise GraphError(f"vertex count must be non-negative, got {n}")
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) has an endpoint outside 0..{n - 1}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self._adj = tuple(adj)
        self._hash = hash((n, self._adj))

    # -- queries ---------------------------------------------------------

    def adj_mask(self, v: int) -> int:
        return self._adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return bin(self._adj[v]).count("1")

    def neighbors(self, v: int) -> List[int]:
        return _mask_bits(self._adj[v])

    def edges(self) -> List[Edge]:
        return [(u, v) for u in range(self.n) for v in _mask_bits(self._adj[u] >> (u + 1) << (u + 1))]

    @property
    def edge_count(self) -> int:
        return sum(self.degree(v) for v in range(self.n)) // 2

    def is_complete(self) -> bool:
        full = (1 << self.n) - 1
        return all(self._adj[v] == full ^ (1 << v) for v in range(self.n))

    def min_degree(self) -> int:
        return min((self.degree(v) for v in range(self.n)), default=0)

    # -- value semantics ---------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self._adj == other._adj

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


def _mask_bits(mask: int) -> List[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


# -- mutators (pure; inputs never change) ----------------------------------


def remove_edges(g: Graph, drop: Iterable[Edge]) -> Graph:
    dropset = {_norm_edge(u, v) for u, v in drop}
    for u, v in dropset:
        if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
            raise GraphError(f"edge ({u},{v}) not in graph")
    return Graph(g.n, [e for e in g.edges() if e not in dropset])


def add_edges(g: Graph, extra: Iterable[Edge]) -> Graph:
    return Graph(g.n, list(g.edges()) + [_norm_edge(u, v) for u, v in extra])


def add_vertex_with_neighbors(g: Graph, nbrs: Iterable[int]) -> Graph:
    nbrs = sorted(set(nbrs))
    if nbrs and not (0 <= nbrs[0] and nbrs[-1] < g.n):
        raise GraphError(f"neighbor set {nbrs} mentions unknown vertices")
    x = g.n
    return Graph(g.n + 1, list(g.edges()) + [(u, x) for u in nbrs])


def delete_vertex(g: Graph, v: int) -> Tuple[Graph, Dict[int, int]]:
    """Remove v, relabel the rest densely; returns (graph, old id -> new id)."""
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} not in graph")
    keep = [u for u in range(g.n) if u != v]
    remap = {old: new for new, old in enumerate(keep)}
    edges = [(remap[a], remap[b]) for a, b in g.edges() if a != v and b != v]
    return Graph(g.n - 1, edges), remap


def induced(g: Graph, verts: Iterable[int]) -> Graph:
    """Induced subgraph on verts, relabeled densely in ascending vertex order."""
    keep = sorted(set(verts))
    if not keep or keep[0] < 0 or keep[-1] >= g.n:
        raise GraphError(f"vertex set {keep} invalid for graph on {g.n} vertices")
    remap = {old: new for new, old in enumerate(keep)}
    edges = [(remap[a], remap[b]) for a, b in g.edges() if a in remap and b in remap]
    return Graph(len(keep), edges)


# -- fixtures ---------------------------------------------------------------


def complete_graph(n: int) -> Graph:
    return Graph(n, itertools.combinations(range(n), 2))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def square_of_cycle(n: int) -> Graph:
    """Cycle on n vertices plus all chords between vertices at circular distance 2."""
    if n < 5:
        raise GraphError("squared cycle is defined here for n >= 5")
    edges = []
    for i in range(n):
        for d in (1, 2):
            edges.append(_norm_edge(i, (i + d) % n))
    return Graph(n, set(edges))


def octahedron() -> Graph:
    return square_of_cycle(6)


def octahedron_plus() -> Graph:
    """Octahedron with one antipodal pair joined (6 vertices, 13 edges)."""
    return add_edges(octahedron(), [(0, 3)])


def k6_minus_edge() -> Graph:
    return remove_edges(complete_graph(6), [(0, 1)])


# -- graph6 (standard 6-bit encoding, bit exact) ---------------------------


def format_graph6(g: Graph) -> str:
    if g.n > MAX_ORDER:
        raise FormatError(f"graph6 support here stops at n={MAX_ORDER}, got {g.n}")
    bits = []
    for j in range(1, g.n):
        col = g.adj_mask(j)
        bits.extend((col >> i) & 1 for i in range(j))
    out = [chr(g.n + 63)]
    for k in range(0, len(bits), 6):
        chunk = bits[k:k + 6]
        chunk += [0] * (6 - len(chunk))
        val = 0
        for b in chunk:
            val = val << 1 | b
        out.append(chr(val + 63))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise FormatError("empty graph6 string")
    if any(not (63 <= ord(c) <= 126) for c in s):
        raise FormatError("graph6 characters must be in the ASCII range 63..126")
    n = ord(s[0]) - 63
    if n == 63:
        raise FormatError("multi-byte graph6 orders exceed the supported range")
    if n > MAX_ORDER:
        raise FormatError(f"graph6 order {n} exceeds the supported maximum {MAX_ORDER}")
    nbits = n * (n - 1) // 2
    body = s[1:]
    if len(body) != (nbits + 5) // 6:
        raise FormatError(f"graph6 body has {len(body)} characters, expected {(nbits + 5) // 6}")
    bits = []
    for c in body:
        val = ord(c) - 63
        bits.extend((val >> k) & 1 for k in range(5, -1, -1))
    if any(bits[nbits:]):
        raise FormatError("nonzero padding bits in graph6 body")
    edges = []
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                edges.append((i, j))
            idx += 1
    return Graph(n, edges)


# -- edge-list text ("n <count>" header, one "u v" line per edge) -----------


def format_edge_list(g: Graph) -> str:
    lines = [f"n {g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise FormatError("empty edge-list input")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "n":
        raise FormatError(f"expected header 'n <count>', got {lines[0]!r}")
    try:
        n = int(head[1])
    except ValueError:
        raise FormatError(f"bad vertex count {head[1]!r}") from None
    if not 0 <= n <= MAX_ORDER:
        raise FormatError(f"vertex count {n} outside supported range 0..{MAX_ORDER}")
    seen = set()
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise FormatError(f"expected 'u v', got {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(f"non-integer vertex id in {ln!r}") from None
        if u == v:
            raise FormatError(f"self-loop {ln!r}")
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"vertex id out of range in {ln!r}")
        e = _norm_edge(u, v)
        if e in seen:
            raise FormatError(f"duplicate edge {ln!r}")
        seen.add(e)
        edges.append(e)
    return Graph(n, edges)


def to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    lines.extend(f"  {v};" for v in range(g.n))
    lines.extend(f"  {u} -- {v};" for u, v in g.edges())
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- canonical certificates -------------------------------------------------
#
# Exact canonical form by iterated neighborhood refinement plus a
# backtracking search over the remaining cell choices.  Discovered
# automorphisms prune sibling branches, which keeps vertex-transitive
# graphs (complete graphs, squared cycles) cheap.  Exactness was the
# requirement; the n cap keeps the search trivially safe.


def _refine(adj: Sequence[int], cells: List[int]) -> List[int]:
    # cells: list of bitmasks, ordered; refined until equitable
    while True:
        changed = False
        new_cells: List[int] = []
        for cell in cells:
            if cell & (cell - 1) == 0:  # singleton
                new_cells.append(cell)
                continue
            groups: Dict[Tuple[int, ...], int] = {}
            for v in _mask_bits(cell):
                key = tuple(bin(adj[v] & c).count("1") for c in cells)
                groups[key] = groups.get(key, 0) | (1 << v)
            if len(groups) == 1:
                new_cells.append(cell)
            else:
                changed = True
                new_cells.extend(groups[k] for k in sorted(groups))
        cells = new_cells
        if not changed:
            return cells


def _leaf_code(adj: Sequence[int], order: Sequence[int]) -> int:
    # upper-triangle adjacency bits under the labeling, packed into one int
    code = 0
    for i, u in enumerate(order):
        row = adj[u]
        for j in range(i + 1, len(order)):
            code = code << 1 | (row >> order[j] & 1)
    return code


class _CanonSearch:
    def __init__(self, adj: Sequence[int], n: int):
        self.adj = adj
        self.n = n
        self.best_code: Optional[int] = None
        self.best_order: Optional[Tuple[int, ...]] = None
        self.autos: List[Dict[int, int]] = []

    def run(self) -> Tuple[int, ...]:
        cells = _refine(self.adj, [(1 << self.n) - 1]) if self.n else []
        self._descend(cells, [])
        assert self.best_order is not None
        return self.best_order

    def _descend(self, cells: List[int], fixed: List[int]) -> None:
        split_at = next((i for i, c in enumerate(cells) if c & (c - 1)), None)
        if split_at is None:
            order = tuple(c.bit_length() - 1 for c in cells)
            code = _leaf_code(self.adj, order)
            if self.best_code is None or code < self.best_code:
                self.best_code, self.best_order = code, order
            elif code == self.best_code and order != self.best_order:
                base = self.best_order
                self.autos.append({base[i]: order[i] for i in range(self.n)})
            return
        cell = cells[split_at]
        tried: List[int] = []
        for v in _mask_bits(cell):
            if tried and v in self._orbit_closure(tried, fixed):
                continue
            tried.append(v)
            split = cells[:split_at] + [1 << v, cell ^ (1 << v)] + cells[split_at + 1:]
            self._descend(_refine(self.adj, split), fixed + [v])

    def _orbit_closure(self, tried: List[int], fixed: List[int]) -> set:
        # orbit of the explored siblings under the group generated by the
        # automorphisms found so far that fix the individualized prefix
        # pointwise; a candidate inside it would open an equivalent subtree
        gens = [a for a in self.autos if all(a[f] == f for f in fixed)]
        orbit = set(tried)
        frontier = list(tried)
        while frontier:
            u = frontier.pop()
            for a in gens:
                w = a[u]
                if w not in orbit:
                    orbit.add(w)
                    frontier.append(w)
        return orbit


def canonical_labeling(g: Graph) -> Tuple[int, ...]:
    """Permutation as a tuple: position i holds the old id placed at i."""
    if g.n > MAX_ORDER:
        raise GraphError(f"canonical labeling supported up to n={MAX_ORDER}, got {g.n}")
    return _CanonSearch(g._adj, g.n).run()


def canonical_form(g: Graph) -> Graph:
    order = canonical_labeling(g)
    pos = {old: i for i, old in enumerate(order)}
    return Graph(g.n, [(pos[u], pos[v]) for u, v in g.edges()])


def canonical_cert(g: Graph) -> bytes:
    """Isomorphism-class certificate: graph6 of the canonical form."""
    return format_graph6(canonical_form(g)).encode("ascii")


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.edge_count != h.edge_count:
        return False
    return canonical_cert(g) == canonical_cert(h)


def find_isomorphism(g: Graph, h: Graph) -> Optional[Dict[int, int]]:
    """An explicit vertex bijection g -> h, or None."""
    if g.n != h.n or g.edge_count != h.edge_count:
        return None
    og, oh = canonical_labeling(g), canonical_labeling(h)
    if canonical_cert(g) != canonical_cert(h):
        return None
    pos_g = {old: i for i, old in enumerate(og)}
    mapping = {v: oh[pos_g[v]] for v in range(g.n)}
    assert all(h.has_edge(mapping[u], mapping[v]) for u, v in g.edges())
    return mapping


def relabel(g: Graph, mapping: Dict[int, int]) -> Graph:
    if sorted(mapping) != list(range(g.n)) or sorted(mapping.values()) != list(range(g.n)):
        raise GraphError("relabeling must be a permutation of the vertex ids")
    return Graph(g.n, [(mapping[u], mapping[v]) for u, v in g.edges()])


def permutations_isomorphic(g: Graph, h: Graph) -> bool:
    """Reference isomorphism test by exhaustive permutation search (small n only)."""
    if g.n != h.n or g.edge_count != h.edge_count:
        return False
    gedges = set(g.edges())
    for perm in itertools.permutations(range(g.n)):
        if all(h.has_edge(perm[u], perm[v]) for u, v in gedges):
            return True
    return False
