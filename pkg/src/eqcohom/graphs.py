"""Finite symmetric directed graphs, their 0/1-cochains, and group actions.

A graph stores one chosen orientation per geometric edge; the reversed edge
is implicit and 1-cochains obey w(reversed e) = -w(e) through accessors.
Vertex permutations that induce graph automorphisms compile into a
LinearInstance (0-cochains as U, 1-cochains as W, coboundary as pi) so the
abstract quotient-dimension oracle applies directly.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import InputError, PreconditionError
from .instance import LinearInstance, oracle_quotient_dim, validate
from .linalg import Mat, kernel_basis, rat, rat_str, vec

GROUP_CLOSURE_CAP = 100000


@dataclass(frozen=True)
class Edge:
    id: int
    o: int  # origin
    t: int  # target


@dataclass(frozen=True)
class Graph:
    n_vertices: int
    edges: tuple[Edge, ...]  # sorted by id; row index in C^1 = position

    @classmethod
    def make(cls, n_vertices: int, edges: Sequence[tuple[int, int, int]]) -> "Graph":
        es = tuple(Edge(i, o, t) for i, o, t in sorted(edges))
        g = cls(n_vertices, es)
        g.validate()
        return g

    def validate(self) -> list[str]:
        """Raises on structural errors; returns warnings (loops)."""
        ids = [e.id for e in self.edges]
        if len(set(ids)) != len(ids):
            raise InputError("duplicate edge ids")
        warnings = []
        for e in self.edges:
            if not (0 <= e.o < self.n_vertices and 0 <= e.t < self.n_vertices):
                raise InputError(f"edge {e.id} has a dangling endpoint")
            if e.o == e.t:
                warnings.append(f"edge {e.id} is a loop; its 1-form value must be 0")
        return warnings

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def edge_index(self) -> dict[int, int]:
        return {e.id: i for i, e in enumerate(self.edges)}

    def to_json(self) -> dict:
        return {
            "vertices": self.n_vertices,
            "edges": [{"id": e.id, "o": e.o, "t": e.t} for e in self.edges],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Graph":
        try:
            n = int(obj["vertices"])
            edges = [(int(e["id"]), int(e["o"]), int(e["t"])) for e in obj["edges"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad graph JSON: {exc}") from exc
        return cls.make(n, edges)


@dataclass(frozen=True)
class Cochain0:
    values: tuple[Fraction, ...]  # indexed by vertex id

    @classmethod
    def make(cls, values: Sequence) -> "Cochain0":
        return cls(vec(values))

    def to_json(self) -> dict:
        return {str(i): rat_str(v) for i, v in enumerate(self.values)}


@dataclass(frozen=True)
class Cochain1:
    values: tuple[Fraction, ...]  # indexed by stored edge position

    @classmethod
    def make(cls, values: Sequence) -> "Cochain1":
        return cls(vec(values))

    def value(self, graph: Graph, edge_pos: int, reverse: bool = False) -> Fraction:
        v = self.values[edge_pos]
        return -v if reverse else v

    @classmethod
    def from_json(cls, graph: Graph, obj, forbid_loop_values: bool = True) -> "Cochain1":
        try:
            if isinstance(obj, dict):
                src = obj.get("values", obj)
                vals = [rat(src[str(e.id)]) for e in graph.edges]
            else:
                vals = [rat(x) for x in obj]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad 1-cochain JSON: {exc}") from exc
        if len(vals) != graph.n_edges:
            raise InputError("1-cochain length does not match edge count")
        if forbid_loop_values:
            for e, v in zip(graph.edges, vals):
                if e.o == e.t and v != 0:
                    raise InputError(f"loop edge {e.id} must carry value 0")
        return cls(tuple(vals))

    def to_json(self, graph: Graph) -> dict:
        return {str(e.id): rat_str(v) for e, v in zip(graph.edges, self.values)}


def coboundary(graph: Graph) -> Mat:
    """|E| x |V| matrix of f -> (e -> f(te) - f(oe)); loop rows are zero."""
    rows = []
    for e in graph.edges:
        row = [Fraction(0)] * graph.n_vertices
        if e.o != e.t:
            row[e.t] += 1
            row[e.o] -= 1
        rows.append(row)
    if not rows:
        return Mat.zeros(0, graph.n_vertices)
    return Mat(rows)


def components(graph: Graph) -> list[list[int]]:
    """Connected components by BFS from the smallest unvisited vertex id."""
    adj: list[list[int]] = [[] for _ in range(graph.n_vertices)]
    for e in graph.edges:
        adj[e.o].append(e.t)
        adj[e.t].append(e.o)
    seen = [False] * graph.n_vertices
    comps = []
    for start in range(graph.n_vertices):
        if seen[start]:
            continue
        comp = []
        queue = deque([start])
        seen[start] = True
        while queue:
            v = queue.popleft()
            comp.append(v)
            for u in sorted(adj[v]):
                if not seen[u]:
                    seen[u] = True
                    queue.append(u)
        comps.append(sorted(comp))
    return comps


def kernel_indicators(graph: Graph) -> list[Cochain0]:
    """Component indicator functions; they span ker(coboundary)."""
    comps = components(graph)
    out = []
    for comp in comps:
        vals = [Fraction(0)] * graph.n_vertices
        for v in comp:
            vals[v] = Fraction(1)
        out.append(Cochain0(tuple(vals)))
    return out


def _spanning_forest(graph: Graph) -> tuple[list[Optional[tuple[int, int]]], list[int]]:
    """BFS forest: per vertex (edge position, +1/-1 toward the vertex) or None
    for roots; plus the list of roots (smallest id per component)."""
    adj: list[list[tuple[int, int, int]]] = [[] for _ in range(graph.n_vertices)]
    for pos, e in enumerate(graph.edges):
        if e.o == e.t:
            continue
        adj[e.o].append((e.t, pos, +1))  # traverse forward: f(t) = f(o) + w
        adj[e.t].append((e.o, pos, -1))
    parent_edge: list[Optional[tuple[int, int]]] = [None] * graph.n_vertices
    roots = []
    seen = [False] * graph.n_vertices
    for start in range(graph.n_vertices):
        if seen[start]:
            continue
        roots.append(start)
        seen[start] = True
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for u, pos, sign in sorted(adj[v]):
                if not seen[u]:
                    seen[u] = True
                    parent_edge[u] = (pos, sign)
                    queue.append(u)
    return parent_edge, roots


def potential(graph: Graph, w: Cochain1) -> Optional[Cochain0]:
    """Integrate w along a BFS spanning forest, 0 at each component root.

    Returns None when w is not closed (some non-tree edge disagrees).
    """
    parent_edge, _ = _spanning_forest(graph)
    f: list[Optional[Fraction]] = [None] * graph.n_vertices
    # Resolve each vertex by walking up to its root.
    def value_at(v: int) -> Fraction:
        chain = []
        while f[v] is None and parent_edge[v] is not None:
            chain.append(v)
            pos, sign = parent_edge[v]
            e = graph.edges[pos]
            v = e.o if sign > 0 else e.t
        base = f[v] if f[v] is not None else Fraction(0)
        f[v] = base
        for u in reversed(chain):
            pos, sign = parent_edge[u]
            base = base + sign * w.values[pos]
            f[u] = base
        return f[chain[0]] if chain else base

    for v in range(graph.n_vertices):
        value_at(v)
    tree_positions = {
        parent_edge[v][0] for v in range(graph.n_vertices) if parent_edge[v]
    }
    for pos, e in enumerate(graph.edges):
        if pos in tree_positions:
            continue
        if w.values[pos] != f[e.t] - f[e.o]:
            return None
    return Cochain0(tuple(f))


def is_closed(graph: Graph, w: Cochain1) -> bool:
    return potential(graph, w) is not None


def apply_coboundary(graph: Graph, f: Cochain0) -> Cochain1:
    return Cochain1(tuple(coboundary(graph).mulvec(f.values)))


@dataclass(frozen=True)
class GraphAction:
    generators: tuple[tuple[int, ...], ...]  # vertex permutations
    orders: dict[int, int] = field(default_factory=dict)

    def to_json(self) -> dict:
        out: dict = {"generators": [list(p) for p in self.generators]}
        if self.orders:
            out["orders"] = {str(i): n for i, n in self.orders.items()}
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "GraphAction":
        try:
            gens = tuple(tuple(int(x) for x in p) for p in obj["generators"])
            orders = {
                int(i): int(n) for i, n in (obj.get("orders") or {}).items()
            }
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad action JSON: {exc}") from exc
        return cls(gens, orders)


def _edge_image_map(graph: Graph, perm: tuple[int, ...]) -> Optional[list[tuple[int, int]]]:
    """Per stored edge position: (image position, sign), or None if the
    permutation is not a graph automorphism. Parallel edges are matched
    greedily in id order."""
    by_endpoints: dict[tuple[int, int], list[int]] = {}
    for pos, e in enumerate(graph.edges):
        by_endpoints.setdefault((e.o, e.t), []).append(pos)
    used = [False] * graph.n_edges
    out: list[tuple[int, int]] = []
    for e in graph.edges:
        io, it = perm[e.o], perm[e.t]
        chosen = None
        for cand_pos in by_endpoints.get((io, it), []):
            if not used[cand_pos]:
                chosen = (cand_pos, +1)
                break
        if chosen is None and io != it:
            for cand_pos in by_endpoints.get((it, io), []):
                if not used[cand_pos]:
                    chosen = (cand_pos, -1)
                    break
        if chosen is None:
            return None
        used[chosen[0]] = True
        out.append(chosen)
    return out


def validate_action(graph: Graph, action: GraphAction) -> list[str]:
    issues = []
    n = graph.n_vertices
    for i, perm in enumerate(action.generators):
        if len(perm) != n or sorted(perm) != list(range(n)):
            issues.append(f"generator {i}: not a permutation of 0..{n - 1}")
            continue
        if _edge_image_map(graph, perm) is None:
            issues.append(f"generator {i}: does not map edges to edges")
    return issues


def _perm_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(a[b[i]] for i in range(len(a)))


def close_group(
    generators: Sequence[tuple[int, ...]], n: int, cap: int = GROUP_CLOSURE_CAP
) -> set[tuple[int, ...]]:
    """Closure of the generated permutation group, with an explicit cap."""
    ident = tuple(range(n))
    els = {ident}
    frontier = [ident]
    gens = [tuple(g) for g in generators]
    while frontier:
        new = []
        for g in gens:
            for h in frontier:
                p = _perm_mul(g, h)
                if p not in els:
                    els.add(p)
                    new.append(p)
                    if len(els) > cap:
                        raise PreconditionError(
                            "closure-cap",
                            f"group closure exceeded the cap of {cap} elements",
                        )
        frontier = new
    return els


@dataclass(frozen=True)
class ActionChecks:
    is_automorphism: bool
    is_free_on_generated_group: Optional[bool]
    is_closed_in_components: Optional[bool]
    group_order: Optional[int]


def action_checks(graph: Graph, action: GraphAction) -> ActionChecks:
    if validate_action(graph, action):
        return ActionChecks(False, None, None, None)
    group = close_group(action.generators, graph.n_vertices)
    ident = tuple(range(graph.n_vertices))
    free = all(
        all(p[v] != v for v in range(graph.n_vertices))
        for p in group
        if p != ident
    )
    comp_of = [0] * graph.n_vertices
    for k, comp in enumerate(components(graph)):
        for v in comp:
            comp_of[v] = k
    closed = all(
        comp_of[p[v]] == comp_of[v]
        for p in group
        for v in range(graph.n_vertices)
    )
    return ActionChecks(True, free, closed, len(group))


def to_instance(graph: Graph, action: GraphAction) -> LinearInstance:
    """Compile to a LinearInstance: gU permutes vertices, gW permutes signed
    edges; equivariance with the coboundary is asserted."""
    issues = validate_action(graph, action)
    if issues:
        raise InputError("invalid graph action: " + "; ".join(issues))
    pi = coboundary(graph)
    gens = []
    for perm in action.generators:
        gu = Mat(
            [
                [1 if perm[u] == v else 0 for u in range(graph.n_vertices)]
                for v in range(graph.n_vertices)
            ]
        )
        emap = _edge_image_map(graph, perm)
        gw_rows = [[Fraction(0)] * graph.n_edges for _ in range(graph.n_edges)]
        for src, (dst, sign) in enumerate(emap):
            gw_rows[dst][src] = Fraction(sign)
        gw = Mat(gw_rows) if graph.n_edges else Mat.zeros(0, 0)
        gens.append((gu, gw))
    inst = LinearInstance(
        graph.n_vertices,
        graph.n_edges,
        pi,
        tuple(gens),
        dict(action.orders),
    )
    report = validate(inst)
    assert report.ok, f"graph compilation broke instance invariants: {report.issues}"
    return inst


def analyze_graph_action(graph: Graph, action: GraphAction) -> dict:
    """Bundle action checks, the quotient-dimension oracle, and the
    finite-group prediction (dimension 0) into one report."""
    checks = action_checks(graph, action)
    if not checks.is_automorphism:
        raise InputError("action generators are not graph automorphisms")
    inst = to_instance(graph, action)
    oracle = oracle_quotient_dim(inst)
    comps = components(graph)
    m = len(comps)
    d = len(action.generators)
    # Finite permutation groups have no free abelianized part, so the
    # quotient dimension is predicted to vanish for nontrivial actions.
    predicted_zero = checks.group_order is not None and checks.group_order > 1
    notes = []
    if predicted_zero:
        notes.append("finite symmetry group: free abelian rank 0, expect dim 0")
        if d >= 1 and m >= 1:
            notes.append("hypothesis of a free-abelian symmetry group not satisfied")
    consistent = (not predicted_zero) or oracle.dim == 0
    return {
        "is_automorphism": checks.is_automorphism,
        "is_free": checks.is_free_on_generated_group,
        "is_closed_in_components": checks.is_closed_in_components,
        "group_order": checks.group_order,
        "components": m,
        "generators": d,
        "quotient_dim": oracle.dim,
        "md": m * d,
        "predicted_zero": predicted_zero,
        "consistent": consistent,
        "notes": notes,
    }
