"""Executable form of the constructive characterization: breadth-first
generation of every uniformly 4-connected graph up to a target order by
compatible expansions of the two base graphs, an independent brute-force
oracle over complement graphs, decomposition of any uniformly 4-connected
graph back to a base with a replayable trace, and the report that compares
all three.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, List, Tuple

from .chording import DEFAULT_BUDGET, BudgetExceeded, SearchBudget
from .connectivity import _flow_paths, is_uniformly_4_connected
from .graph_core import (Graph, GraphError, add_edges, canonical_cert, canonical_form,
                         delete_vertex, find_isomorphism, square_of_cycle, _mask_bits)
from .transform import (CompatSet, Delta1Spec, Delta2Spec, SpecInvalid, apply_delta,
                        is_quasi_4_compatible, validate_delta)

TRACE_SCHEMA = "unicon4.trace/v1"

BASE_TAGS = ("C5SQ", "C6SQ")


class NotUniform(GraphError):
    """Decomposition requires a uniformly 4-connected input."""


class DecompositionError(RuntimeError):
    pass


class StepInvalid(RuntimeError):
    def __init__(self, index: int, cause: str):
        super().__init__(f"trace step {index}: {cause}")
        self.index = index
        self.cause = cause


class CertMismatch(RuntimeError):
    def __init__(self, index: int, expected: bytes, got: bytes):
        super().__init__(f"trace step {index}: certificate mismatch")
        self.index = index
        self.expected = expected
        self.got = got


class TraceFormatError(ValueError):
    pass


@dataclass(frozen=True)
class TraceStep:
    op: str  # "delta1" | "delta2"
    spec: CompatSet
    post_cert: bytes


@dataclass(frozen=True)
class ConstructionTrace:
    base: str  # "C5SQ" | "C6SQ"
    steps: Tuple[TraceStep, ...]


def base_graph(tag: str) -> Graph:
    if tag == "C5SQ":
        return square_of_cycle(5)
    if tag == "C6SQ":
        return square_of_cycle(6)
    raise TraceFormatError(f"unknown base tag {tag!r}")


# -- trace (de)serialization, schema v1 ---------------------------------------


def trace_to_json(trace: ConstructionTrace) -> str:
    steps = []
    for s in trace.steps:
        d = {"op": s.op, "x_set": list(s.spec.x_set),
             "ex_edges": [list(e) for e in s.spec.ex_edges],
             "post_cert": s.post_cert.decode("ascii")}
        if isinstance(s.spec, Delta1Spec):
            d["y_vertex"] = s.spec.y_vertex
        else:
            d["y_set"] = list(s.spec.y_set)
            d["ey_edges"] = [list(e) for e in s.spec.ey_edges]
        steps.append(d)
    return json.dumps({"schema": TRACE_SCHEMA, "base": trace.base, "steps": steps}, indent=2)


def trace_from_json(text: str) -> ConstructionTrace:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TraceFormatError(f"not JSON: {exc}") from None
    if not isinstance(doc, dict) or doc.get("schema") != TRACE_SCHEMA:
        raise TraceFormatError(f"expected schema {TRACE_SCHEMA}")
    if doc.get("base") not in BASE_TAGS:
        raise TraceFormatError(f"base must be one of {BASE_TAGS}")
    steps = []
    for i, d in enumerate(doc.get("steps", [])):
        try:
            op = d["op"]
            if op == "delta1":
                spec: CompatSet = Delta1Spec(d["x_set"], d["y_vertex"],
                                             [tuple(e) for e in d["ex_edges"]])
            elif op == "delta2":
                spec = Delta2Spec(d["x_set"], d["y_set"],
                                  [tuple(e) for e in d["ex_edges"]],
                                  [tuple(e) for e in d["ey_edges"]])
            else:
                raise TraceFormatError(f"step {i}: unknown op {op!r}")
            steps.append(TraceStep(op, spec, d["post_cert"].encode("ascii")))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, TraceFormatError):
                raise
            raise TraceFormatError(f"step {i}: malformed ({exc})") from None
    return ConstructionTrace(doc["base"], tuple(steps))


# -- replay --------------------------------------------------------------------


def replay(trace: ConstructionTrace, budget: SearchBudget = DEFAULT_BUDGET,
           check_compat: bool = True) -> Graph:
    """Rebuild the trace's graph from its base, validating every step.

    Each step is re-validated (defining clauses, compatibility when
    check_compat, uniformity of the result) and its certificate compared;
    the first divergence raises StepInvalid or CertMismatch.
    """
    g = base_graph(trace.base)
    for i, step in enumerate(trace.steps):
        want = Delta1Spec if step.op == "delta1" else Delta2Spec
        if not isinstance(step.spec, want):
            raise StepInvalid(i, f"op {step.op} does not match spec kind")
        try:
            validate_delta(g, step.spec)
        except SpecInvalid as exc:
            raise StepInvalid(i, str(exc)) from None
        if check_compat:
            rep = is_quasi_4_compatible(g, step.spec, budget)
            if not rep.compatible:
                raise StepInvalid(i, f"parameter set not quasi-4-compatible "
                                     f"({rep.violation.predicate} at {rep.violation.pair})")
        g = apply_delta(g, step.spec)
        uniform, _ = is_uniformly_4_connected(g)
        if not uniform:
            raise StepInvalid(i, "step output is not uniformly 4-connected")
        got = canonical_cert(g)
        if got != step.post_cert:
            raise CertMismatch(i, step.post_cert, got)
    return g


# -- decomposition ---------------------------------------------------------------


def _parent_candidates(g: Graph) -> Iterator[Tuple[str, Graph, CompatSet]]:
    """Smaller host graphs H with an expansion spec rebuilding g.

    Candidates are derived from the degree-4 vertices: removing such a
    vertex (or an adjacent degree-4 pair) and restoring edges inside its
    outer neighborhood inverts an expansion.  Full restorations (the edge
    reduction of the removed attachment edge) come first.
    """
    deg4 = [v for v in range(g.n) if g.degree(v) == 4]
    for x in deg4:
        for y in sorted(g.neighbors(x)):
            xset = tuple(sorted(set(g.neighbors(x)) - {y}))
            missing_x = [e for e in itertools.combinations(xset, 2) if not g.has_edge(*e)]
            if not missing_x:
                continue
            if g.degree(y) >= 5:
                core, remap = delete_vertex(g, x)
                mx = tuple(sorted((remap[a], remap[b]) for a, b in missing_x))
                my = remap[y]
                mxs = tuple(remap[a] for a in xset)
                for exs in _subsets_largest_first(mx):
                    host = add_edges(core, exs)
                    yield "delta1", host, Delta1Spec(mxs, my, exs)
            elif y > x:
                yset = tuple(sorted(set(g.neighbors(y)) - {x}))
                if len(set(xset) & set(yset)) > 2:
                    continue
                missing_y = [e for e in itertools.combinations(yset, 2) if not g.has_edge(*e)]
                if not missing_y:
                    continue
                core1, rm1 = delete_vertex(g, x)
                core, rm2 = delete_vertex(core1, rm1[y])
                remap = {v: rm2[rm1[v]] for v in range(g.n) if v not in (x, y)}
                mx = tuple(sorted((remap[a], remap[b]) for a, b in missing_x))
                my = tuple(sorted((remap[a], remap[b]) for a, b in missing_y))
                mxs = tuple(remap[a] for a in xset)
                mys = tuple(remap[a] for a in yset)
                for exs in _subsets_largest_first(mx):
                    for eys in _subsets_largest_first(my):
                        host = add_edges(core, set(exs) | set(eys))
                        yield "delta2", host, Delta2Spec(mxs, mys, exs, eys)


def _subsets_largest_first(edges: Tuple) -> Iterator[Tuple]:
    for size in range(len(edges), 0, -1):
        yield from itertools.combinations(edges, size)


def decompose(g: Graph, budget: SearchBudget = DEFAULT_BUDGET) -> ConstructionTrace:
    """A replayable construction of (a graph isomorphic to) g from a base.

    Depth-first search over parent candidates in a fixed order, descending
    only into uniformly 4-connected parents, so every emitted intermediate
    is itself uniformly 4-connected.  budget.max_paths caps the number of
    candidates examined across the whole search.
    """
    uniform, _ = is_uniformly_4_connected(g)
    if not uniform:
        raise NotUniform("decomposition is defined for uniformly 4-connected graphs")
    nodes = [0]

    def search(cur: Graph) -> Tuple[str, List[TraceStep], Graph]:
        cert = canonical_cert(cur)
        for tag in BASE_TAGS:
            if cert == canonical_cert(base_graph(tag)):
                return tag, [], base_graph(tag)
        for op, host, spec in _parent_candidates(cur):
            nodes[0] += 1
            if nodes[0] > budget.max_paths:
                raise BudgetExceeded(f"decomposition examined {nodes[0]} candidates")
            host_uniform, _ = is_uniformly_4_connected(host)
            if not host_uniform:
                continue
            try:
                validate_delta(host, spec)
            except SpecInvalid:
                continue
            try:
                tag, steps, rebuilt = search(host)
            except DecompositionError:
                continue
            iso = find_isomorphism(host, rebuilt)
            assert iso is not None
            moved = _map_spec(spec, iso)
            out = apply_delta(rebuilt, moved)
            assert canonical_cert(out) == cert
            steps.append(TraceStep(op, moved, cert))
            return tag, steps, out
        raise DecompositionError(f"no uniformly 4-connected parent found for {cur!r}")

    tag, steps, _ = search(g)
    return ConstructionTrace(tag, tuple(steps))


def _map_spec(spec: CompatSet, iso: Dict[int, int]) -> CompatSet:
    def me(edges):
        return tuple((iso[a], iso[b]) for a, b in edges)
    if isinstance(spec, Delta1Spec):
        return Delta1Spec(tuple(iso[v] for v in spec.x_set), iso[spec.y_vertex], me(spec.ex_edges))
    return Delta2Spec(tuple(iso[v] for v in spec.x_set), tuple(iso[v] for v in spec.y_set),
                      me(spec.ex_edges), me(spec.ey_edges))


# -- brute-force oracle ----------------------------------------------------------


def _mask_uniform4(adj, n: int) -> bool:
    """Uniformity test on raw adjacency masks for the oracle's candidates
    (n <= 8, minimum degree >= 4): no vertex cut of size < 4 and no pair
    joined by five disjoint paths.

    With minimum degree 4 and at most 8 vertices every component beside a
    cut of size s has at least 5-s vertices, which pins the possible cut
    shapes down to two patterns checked directly: a 3-cut is the shared
    outer neighborhood of an adjacent degree-4 pair, a 2-cut (n = 8 only)
    the joint attachment of a fully-joined triangle.  Pair checks use the
    common-neighborhood count before falling back to a flow.
    """
    full = (1 << n) - 1
    degs = [bin(adj[v]).count("1") for v in range(n)]
    deg4 = [v for v in range(n) if degs[v] == 4]
    if n >= 7:
        # at n <= 6 minimum degree 4 already forces 4-connectivity; from 7
        # on, the far side of the candidate cut is guaranteed nonempty
        for v in deg4:
            vb = 1 << v
            for w in _mask_bits(adj[v]):
                if w > v and degs[w] == 4 and adj[v] ^ (1 << w) == adj[w] ^ vb:
                    return False  # 3-cut: N(v) minus w equals N(w) minus v
    if n == 8:
        for v in deg4:
            vb = 1 << v
            hood = _mask_bits(adj[v])
            for a, b in itertools.combinations(hood, 2):
                ab = (1 << a) | (1 << b)
                if not adj[a] >> b & 1:
                    continue
                smask = adj[v] ^ ab
                if adj[a] == (vb | (1 << b) | smask) and adj[b] == (vb | (1 << a) | smask):
                    return False  # 2-cut behind the triangle {v,a,b}
    for u in range(n):
        if degs[u] < 5:
            continue
        au = adj[u]
        for v in range(u + 1, n):
            if degs[v] < 5:
                continue
            common = au & adj[v]
            c = bin(common).count("1")
            adjacent = au >> v & 1
            bound = 3 if adjacent else 4
            if c > bound:
                return False
            if c == bound:
                # a single detour path avoiding the common neighbors lifts
                # the pair to five disjoint paths
                if _mask_reaches(adj, u, v, full & ~common, skip_direct=adjacent):
                    return False
            elif adjacent:
                if len(_flow_paths(adj, u, v, 4, full, (u, v))) >= 4:
                    return False
            else:
                if len(_flow_paths(adj, u, v, 5, full, None)) >= 5:
                    return False
    return True


def _mask_reaches(adj, u: int, v: int, alive: int, skip_direct: bool) -> bool:
    """Is there a u-v path inside alive (not using the direct edge)?"""
    vb = 1 << v
    frontier = adj[u] & alive & ~(1 << u)
    if skip_direct:
        frontier &= ~vb
    seen = frontier | (1 << u)
    while frontier:
        if frontier & vb:
            return True
        grow = 0
        m = frontier
        while m:
            low = m & -m
            grow |= adj[low.bit_length() - 1]
            m ^= low
        frontier = grow & alive & ~seen
        seen |= frontier
    return False


_oracle_cache: Dict[int, Dict[bytes, Graph]] = {}


def _oracle(n: int) -> Dict[bytes, Graph]:
    """Every uniformly 4-connected graph on n vertices, keyed by certificate.

    Enumerates complement graphs of maximum degree n-5 (minimum degree 4
    is necessary) row by row, restricted to non-increasing complement
    degree sequences; every isomorphism class keeps at least one such
    labeling, and the result is deduplicated by certificate anyway.  Two
    counting facts prune branches early: a pair with c common neighbors
    has local connectivity at least c plus one when adjacent, at least c
    otherwise, so c must stay below 4 / 5.  Survivors pass a mask-level
    screen and then the authoritative uniformity test; nothing from the
    expansion machinery is consulted.
    """
    if n in _oracle_cache:
        return _oracle_cache[n]
    if not 5 <= n <= 8:
        raise GraphError("the oracle sweep is supported for 5 <= n <= 8")
    maxdeg = n - 5
    found: Dict[bytes, Graph] = {}
    hdeg = [0] * n
    gadj = [0] * n
    full = (1 << n) - 1

    def rec(i: int) -> None:
        if i == n:
            if not _mask_uniform4(gadj, n):
                return
            g = Graph(n, [(u, v) for u in range(n) for v in _mask_bits(gadj[u]) if u < v])
            if is_uniformly_4_connected(g)[0]:
                cert = canonical_cert(g)
                if cert not in found:
                    found[cert] = canonical_form(g)
            return
        cap = (maxdeg if i == 0 else hdeg[i - 1]) - hdeg[i]
        if cap < 0:
            return  # the degree sequence can no longer end up non-increasing
        avail = [j for j in range(i + 1, n) if hdeg[j] < maxdeg]
        above = full & ~((1 << (i + 1)) - 1)
        for size in range(cap + 1):
            if size > len(avail):
                break
            for comb in itertools.combinations(avail, size):
                smask = 0
                for j in comb:
                    smask |= 1 << j
                gmask = above & ~smask
                hdeg[i] += size
                gadj[i] |= gmask
                gjs = _mask_bits(gmask)
                for j in comb:
                    hdeg[j] += 1
                for j in gjs:
                    gadj[j] |= 1 << i
                di = hdeg[i]
                ok = all(hdeg[j] <= di for j in range(i + 1, n))
                if ok:
                    gi = gadj[i]
                    for u in range(i):
                        c = bin(gadj[u] & gi).count("1")
                        if c > (3 if gi >> u & 1 else 4):
                            ok = False
                            break
                if ok:
                    rec(i + 1)
                hdeg[i] -= size
                gadj[i] &= ~gmask
                for j in comb:
                    hdeg[j] -= 1
                for j in gjs:
                    gadj[j] &= ~(1 << i)

    rec(0)
    _oracle_cache[n] = found
    return found


def brute_force_uniform(n: int) -> FrozenSet[bytes]:
    return frozenset(_oracle(n))


def oracle_graphs(n: int) -> Tuple[Graph, ...]:
    """Canonical representatives of the oracle's certificates, sorted."""
    cat = _oracle(n)
    return tuple(cat[c] for c in sorted(cat))


# -- generation ---------------------------------------------------------------------


@dataclass(frozen=True)
class GenerationResult:
    n_max: int
    certs_by_n: Dict[int, FrozenSet[bytes]]
    representatives: Dict[bytes, Graph]
    complete: bool
    budget_hits: int
    soundness_failures: Tuple[Tuple[bytes, str], ...]

    def all_certs(self) -> FrozenSet[bytes]:
        out: set = set()
        for certs in self.certs_by_n.values():
            out |= certs
        return frozenset(out)


def _delta1_specs(h: Graph) -> Iterator[Delta1Spec]:
    for xs in itertools.combinations(range(h.n), 3):
        inside = [e for e in itertools.combinations(xs, 2) if h.has_edge(*e)]
        if not inside:
            continue
        for r in range(1, len(inside) + 1):
            for exs in itertools.combinations(inside, r):
                for y in range(h.n):
                    if y not in xs:
                        yield Delta1Spec(xs, y, exs)


def _delta2_specs(h: Graph) -> Iterator[Delta2Spec]:
    combos = []
    for xs in itertools.combinations(range(h.n), 3):
        inside = [e for e in itertools.combinations(xs, 2) if h.has_edge(*e)]
        if inside:
            subsets = [s for r in range(1, len(inside) + 1)
                       for s in itertools.combinations(inside, r)]
            combos.append((xs, subsets))
    # unordered pairs: swapping the two sides relabels the two new vertices
    for i in range(len(combos)):
        xs, xsubs = combos[i]
        for j in range(i + 1, len(combos)):
            ys, ysubs = combos[j]
            if len(set(xs) & set(ys)) > 2:
                continue
            for exs in xsubs:
                for eys in ysubs:
                    yield Delta2Spec(xs, ys, exs, eys)


_generation_cache: Dict[Tuple[int, SearchBudget], GenerationResult] = {}


def generate_catalog(n_max: int, budget: SearchBudget = DEFAULT_BUDGET) -> GenerationResult:
    """Closure of the two bases under compatible expansions, up to n_max."""
    if not 5 <= n_max <= 9:
        raise GraphError("generation is supported for 5 <= n_max <= 9")
    key = (n_max, budget)
    if key in _generation_cache:
        return _generation_cache[key]
    by_n: Dict[int, Dict[bytes, Graph]] = {n: {} for n in range(5, n_max + 1)}
    for tag in BASE_TAGS:
        b = base_graph(tag)
        if b.n <= n_max:
            by_n[b.n][canonical_cert(b)] = canonical_form(b)
    budget_hits = 0
    failures: List[Tuple[bytes, str]] = []

    def consider(host: Graph, spec: CompatSet) -> None:
        nonlocal budget_hits
        try:
            validate_delta(host, spec)
        except SpecInvalid:
            return
        try:
            rep = is_quasi_4_compatible(host, spec, budget)
        except BudgetExceeded:
            budget_hits += 1
            return
        if not rep.compatible:
            return
        out = apply_delta(host, spec)
        cert = canonical_cert(out)
        if not is_uniformly_4_connected(out)[0]:
            failures.append((cert, repr(spec)))
            return
        if cert not in by_n[out.n]:
            by_n[out.n][cert] = canonical_form(out)

    for n in range(5, n_max + 1):
        for cert in sorted(by_n[n]):
            host = by_n[n][cert]
            if n + 1 <= n_max:
                for spec in _delta1_specs(host):
                    consider(host, spec)
            if n + 2 <= n_max:
                for spec in _delta2_specs(host):
                    consider(host, spec)

    reps: Dict[bytes, Graph] = {}
    for n in range(5, n_max + 1):
        reps.update(by_n[n])
    result = GenerationResult(
        n_max=n_max,
        certs_by_n={n: frozenset(by_n[n]) for n in range(5, n_max + 1)},
        representatives=reps,
        complete=budget_hits == 0,
        budget_hits=budget_hits,
        soundness_failures=tuple(failures))
    _generation_cache[key] = result
    return result


def generate_all(n_max: int, budget: SearchBudget = DEFAULT_BUDGET) -> FrozenSet[bytes]:
    return generate_catalog(n_max, budget).all_certs()


# -- the comparison report -----------------------------------------------------------


@dataclass(frozen=True)
class VerificationReport:
    n_max: int
    oracle_by_n: Dict[int, FrozenSet[bytes]]
    generated_by_n: Dict[int, FrozenSet[bytes]]
    only_oracle: Dict[int, FrozenSet[bytes]]
    only_generated: Dict[int, FrozenSet[bytes]]
    decompose_ok: Dict[bytes, bool]
    soundness_failures: Tuple[Tuple[bytes, str], ...]
    timings: Dict[str, float] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return (all(not s for s in self.only_oracle.values())
                and all(not s for s in self.only_generated.values())
                and all(self.decompose_ok.values())
                and not self.soundness_failures)


def verify_theorem(n_max: int, budget: SearchBudget = DEFAULT_BUDGET) -> VerificationReport:
    """Oracle set vs generated set plus a decompose/replay round trip for
    every oracle graph; the characterization holds on this range iff all
    three agree."""
    if not 5 <= n_max <= 8:
        raise GraphError("verification is supported for 5 <= n_max <= 8")
    timings: Dict[str, float] = {}
    t0 = time.perf_counter()
    oracle_by_n = {n: brute_force_uniform(n) for n in range(5, n_max + 1)}
    timings["oracle"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    cat = generate_catalog(n_max, budget)
    timings["generate"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    decompose_ok: Dict[bytes, bool] = {}
    for n in range(5, n_max + 1):
        for g in oracle_graphs(n):
            cert = canonical_cert(g)
            try:
                trace = decompose(g, budget)
                rebuilt = replay(trace, budget)
                decompose_ok[cert] = canonical_cert(rebuilt) == cert
            except (DecompositionError, StepInvalid, CertMismatch, BudgetExceeded, NotUniform):
                decompose_ok[cert] = False
    timings["decompose"] = time.perf_counter() - t0
    only_oracle = {}
    only_generated = {}
    for n in range(5, n_max + 1):
        gen = cat.certs_by_n.get(n, frozenset())
        only_oracle[n] = frozenset(oracle_by_n[n] - gen)
        only_generated[n] = frozenset(gen - oracle_by_n[n])
    return VerificationReport(
        n_max=n_max,
        oracle_by_n=oracle_by_n,
        generated_by_n={n: cat.certs_by_n.get(n, frozenset()) for n in range(5, n_max + 1)},
        only_oracle=only_oracle,
        only_generated=only_generated,
        decompose_ok=decompose_ok,
        soundness_failures=cat.soundness_failures,
        timings=timings)
