"""Periodic graphs: finite quotient graphs carrying integer voltage labels.

The quotient graph plus a Z^d voltage per edge presents an infinite lift
with a free Z^d translation action. All invariant data lives on the
quotient: period lattices of fundamental-cycle voltages decide whether the
translation action is closed in lift components, and an invariant closed
1-form decomposes into period coefficients (one per generator and quotient
component) plus a periodic potential. The lift is only ever materialized by
the finite-window truncation oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

from .errors import InputError, PreconditionError
from .graphs import Cochain0, Cochain1, Graph, components, potential
from .linalg import Mat, column_space, kernel_basis, rat_str, solve, subspace_sum, Subspace


def hermite_normal_form(rows: Sequence[Sequence[int]], cols: int) -> list[list[int]]:
    """Row-style HNF of the lattice spanned by integer rows.

    Canonical form: positive pivots, entries above a pivot reduced into
    [0, pivot), zero rows dropped.
    """
    a = [list(map(int, r)) for r in rows]
    for r in a:
        if len(r) != cols:
            raise ValueError("row length mismatch")
    m = len(a)
    r = 0
    for c in range(cols):
        while True:
            nz = [i for i in range(r, m) if a[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: (abs(a[i][c]), i))
            a[r], a[i0] = a[i0], a[r]
            done = True
            for i in range(r + 1, m):
                if a[i][c] != 0:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if a[i][c] != 0:
                        done = False
            if done:
                break
        if r < m and a[r][c] != 0:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            for i in range(r):
                q = a[i][c] // a[r][c]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
            r += 1
    return a[:r]


@dataclass(frozen=True)
class PeriodLattice:
    d: int
    basis: tuple[tuple[int, ...], ...]  # HNF rows

    @property
    def rank(self) -> int:
        return len(self.basis)

    def is_full(self) -> bool:
        """True when the lattice is all of Z^d."""
        return self.rank == self.d and self.index() == 1

    def index(self) -> Optional[int]:
        """Index in Z^d (product of HNF pivots), or None when rank-deficient."""
        if self.rank < self.d:
            return None
        # Full-rank HNF rows have their (positive) pivots on the diagonal.
        idx = 1
        for i, row in enumerate(self.basis):
            idx *= row[i]
        return idx


@dataclass(frozen=True)
class PeriodicGraph:
    d: int
    quotient: Graph
    voltages: dict[int, tuple[int, ...]]  # edge id -> Z^d label

    @classmethod
    def make(cls, d: int, quotient: Graph, voltages: dict[int, Sequence[int]]) -> "PeriodicGraph":
        if d < 1:
            raise InputError("periodic rank d must be >= 1")
        volt = {}
        for e in quotient.edges:
            if e.id not in voltages:
                raise InputError(f"missing voltage for edge {e.id}")
            t = tuple(int(x) for x in voltages[e.id])
            if len(t) != d:
                raise InputError(f"voltage of edge {e.id} has length != d")
            volt[e.id] = t
        return cls(d, quotient, volt)

    def to_json(self) -> dict:
        obj = self.quotient.to_json()
        obj["d"] = self.d
        obj["voltages"] = {str(i): list(t) for i, t in sorted(self.voltages.items())}
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "PeriodicGraph":
        graph = Graph.from_json(obj)
        try:
            d = int(obj["d"])
            voltages = {int(i): [int(x) for x in t] for i, t in obj["voltages"].items()}
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad periodic graph JSON: {exc}") from exc
        return cls.make(d, graph, voltages)


@dataclass(frozen=True)
class _ForestData:
    comp_of: tuple[int, ...]  # vertex -> component index
    comps: tuple[tuple[int, ...], ...]
    tree_positions: frozenset[int]
    b: tuple[tuple[int, ...], ...]  # vertex -> Z^d translation along the tree
    # per component: list of (edge position, cycle voltage) for non-tree edges
    cycles: tuple[tuple[tuple[int, tuple[int, ...]], ...], ...]


def _forest(pg: PeriodicGraph) -> _ForestData:
    g = pg.quotient
    comps = components(g)
    comp_of = [0] * g.n_vertices
    for k, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = k
    adj: list[list[tuple[int, int, int]]] = [[] for _ in range(g.n_vertices)]
    for pos, e in enumerate(g.edges):
        if e.o == e.t:
            continue
        adj[e.o].append((e.t, pos, +1))
        adj[e.t].append((e.o, pos, -1))
    from collections import deque

    b: list[Optional[tuple[int, ...]]] = [None] * g.n_vertices
    tree_positions: set[int] = set()
    for comp in comps:
        root = comp[0]
        b[root] = (0,) * pg.d
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for u, pos, sign in sorted(adj[v]):
                if b[u] is None:
                    t = pg.voltages[g.edges[pos].id]
                    b[u] = tuple(x + sign * y for x, y in zip(b[v], t))
                    tree_positions.add(pos)
                    queue.append(u)
    cycles: list[list[tuple[int, tuple[int, ...]]]] = [[] for _ in comps]
    for pos, e in enumerate(g.edges):
        if pos in tree_positions:
            continue
        t = pg.voltages[e.id]
        cv = tuple(bo + ti - bt for bo, ti, bt in zip(b[e.o], t, b[e.t]))
        cycles[comp_of[e.o]].append((pos, cv))
    return _ForestData(
        tuple(comp_of),
        tuple(tuple(c) for c in comps),
        frozenset(tree_positions),
        tuple(b),  # type: ignore[arg-type]
        tuple(tuple(c) for c in cycles),
    )


def period_lattices(pg: PeriodicGraph) -> list[PeriodLattice]:
    """Per quotient component, the sublattice of Z^d spanned by the voltages
    of its fundamental cycles, in canonical HNF."""
    data = _forest(pg)
    out = []
    for comp_cycles in data.cycles:
        rows = [cv for _, cv in comp_cycles]
        out.append(
            PeriodLattice(pg.d, tuple(map(tuple, hermite_normal_form(rows, pg.d))))
        )
    return out


def action_is_closed(pg: PeriodicGraph) -> bool:
    """All translations keep every lift vertex in its component, i.e. every
    component's period lattice is all of Z^d."""
    return all(lat.is_full() for lat in period_lattices(pg))


def lift_component_count(pg: PeriodicGraph):
    """Number of connected components of the lift, or "infinite"."""
    total = 0
    for lat in period_lattices(pg):
        idx = lat.index()
        if idx is None:
            return "infinite"
        total += idx
    return total


def _cycle_sums(pg: PeriodicGraph, w: Cochain1, data: _ForestData):
    """w-sum along each fundamental cycle (per component), using a tree
    potential of w within each component."""
    g = pg.quotient
    pw = [Fraction(0)] * g.n_vertices
    adj: list[list[tuple[int, int, int]]] = [[] for _ in range(g.n_vertices)]
    for pos in data.tree_positions:
        e = g.edges[pos]
        adj[e.o].append((e.t, pos, +1))
        adj[e.t].append((e.o, pos, -1))
    from collections import deque

    seen = [False] * g.n_vertices
    for comp in data.comps:
        root = comp[0]
        seen[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for u, pos, sign in adj[v]:
                if not seen[u]:
                    seen[u] = True
                    pw[u] = pw[v] + sign * w.values[pos]
                    queue.append(u)
    sums = []
    for comp_cycles in data.cycles:
        comp_sums = []
        for pos, _cv in comp_cycles:
            e = g.edges[pos]
            comp_sums.append(w.values[pos] + pw[e.o] - pw[e.t])
        sums.append(comp_sums)
    return sums


def is_invariant_closed(pg: PeriodicGraph, w: Cochain1) -> bool:
    """Closedness of the G-invariant lift of w: the cycle-sum functional must
    vanish on every combination of fundamental cycles with zero total
    voltage."""
    if len(w.values) != pg.quotient.n_edges:
        raise InputError("1-cochain length does not match edge count")
    data = _forest(pg)
    voltage_rows = [cv for comp in data.cycles for _, cv in comp]
    sums = [s for comp in _cycle_sums(pg, w, data) for s in comp]
    if not voltage_rows:
        return True
    # Kernel of the cycle-space -> Z^d voltage map.
    t_mat = Mat(voltage_rows).transpose()  # d x n_cycles
    for c in kernel_basis(t_mat).basis_vectors():
        if sum((ci * si for ci, si in zip(c, sums)), Fraction(0)) != 0:
            return False
    return True


@dataclass(frozen=True)
class PeriodicDecomposition:
    a: tuple[tuple[Fraction, ...], ...]  # d x n_components
    f: Cochain0  # quotient potential, 0 at each component root
    lattices: tuple[PeriodLattice, ...]

    def to_json(self) -> dict:
        return {
            "a": [[rat_str(x) for x in row] for row in self.a],
            "f": [rat_str(x) for x in self.f.values],
            "certificate": {
                "closed": True,
                "lattices": [
                    [list(row) for row in lat.basis] for lat in self.lattices
                ],
            },
        }


def parse_invariant_cochain(pg: PeriodicGraph, obj) -> Cochain1:
    """Parse a 1-cochain on the quotient. Only zero-voltage loops lift to
    genuine loops, so only those are forced to carry value 0."""
    w = Cochain1.from_json(pg.quotient, obj, forbid_loop_values=False)
    for pos, e in enumerate(pg.quotient.edges):
        if e.o == e.t and all(x == 0 for x in pg.voltages[e.id]):
            if w.values[pos] != 0:
                raise InputError(
                    f"zero-voltage loop edge {e.id} must carry value 0"
                )
    return w


def decompose_periodic(pg: PeriodicGraph, w: Cochain1) -> PeriodicDecomposition:
    """Split an invariant closed 1-form into period coefficients plus a
    periodic potential: w(e) = f(te) - f(oe) + sum_j a_{j,k} t(e)_j on each
    edge of component k, exactly."""
    data = _forest(pg)
    lattices = period_lattices(pg)
    for k, lat in enumerate(lattices):
        if not lat.is_full():
            raise PreconditionError(
                "action-not-closed",
                f"period lattice not full in component {k}: "
                f"rank {lat.rank} of {pg.d}"
                + (f", index {lat.index()}" if lat.index() is not None else ""),
            )
    if not is_invariant_closed(pg, w):
        raise PreconditionError(
            "not-closed", "the invariant lift of w is not a closed 1-form"
        )
    g = pg.quotient
    sums = _cycle_sums(pg, w, data)
    per_comp_a: list[tuple[Fraction, ...]] = []
    for k, comp_cycles in enumerate(data.cycles):
        t_k = Mat([cv for _, cv in comp_cycles])
        a_k = solve(t_k, sums[k])
        if a_k is None:
            raise PreconditionError(
                "not-closed", f"inconsistent cycle sums in component {k}"
            )
        # Well-definedness: every fundamental cycle, not just a spanning
        # subset, must agree with these coefficients.
        assert t_k.mulvec(a_k) == tuple(sums[k])
        per_comp_a.append(a_k)
    residual = []
    for pos, e in enumerate(g.edges):
        k = data.comp_of[e.o]
        t = pg.voltages[e.id]
        residual.append(
            w.values[pos]
            - sum((per_comp_a[k][j] * t[j] for j in range(pg.d)), Fraction(0))
        )
    f = potential(g, Cochain1(tuple(residual)))
    assert f is not None, "residual 1-form must be exact on the quotient"
    m = len(data.comps)
    a = tuple(tuple(per_comp_a[k][j] for k in range(m)) for j in range(pg.d))
    dec = PeriodicDecomposition(a, f, tuple(lattices))
    assert reconstruct(pg, dec.a, dec.f).values == w.values
    return dec


def reconstruct(
    pg: PeriodicGraph, a: Sequence[Sequence], f: Cochain0
) -> Cochain1:
    """Inverse of decompose_periodic: build w from coefficients and potential."""
    data = _forest(pg)
    g = pg.quotient
    values = []
    for e in g.edges:
        k = data.comp_of[e.o]
        val = f.values[e.t] - f.values[e.o]
        for j in range(pg.d):
            val += Fraction(a[j][k]) * pg.voltages[e.id][j]
        values.append(val)
    return Cochain1(tuple(values))


def truncation_oracle(pg: PeriodicGraph, w: Cochain1, radius: int) -> dict:
    """Materialize the lift on the window [-radius, radius]^d and verify the
    decomposition edge by edge. Any mismatch is an implementation bug and
    raises; the returned report counts the exact checks performed."""
    dec = decompose_periodic(pg, w)
    data = _forest(pg)
    g = pg.quotient
    lo, hi = -radius, radius

    def big_f(v: int, cell: tuple[int, ...]) -> Fraction:
        k = data.comp_of[v]
        val = dec.f.values[v]
        for j in range(pg.d):
            val += dec.a[j][k] * cell[j]
        return val

    checks = 0
    for cell in product(range(lo, hi + 1), repeat=pg.d):
        for pos, e in enumerate(g.edges):
            target_cell = tuple(
                c + t for c, t in zip(cell, pg.voltages[e.id])
            )
            if any(not (lo <= c <= hi) for c in target_cell):
                continue
            lhs = w.values[pos]
            rhs = big_f(e.t, target_cell) - big_f(e.o, cell)
            if lhs != rhs:
                raise AssertionError(
                    f"truncation mismatch on edge {e.id} at cell {cell}"
                )
            checks += 1
    return {"radius": radius, "checks": checks, "ok": True}


def realized_quotient_dim(pg: PeriodicGraph) -> int:
    """Dimension spanned by the d*m period generator forms
    (e -> t(e)_j on component k) modulo quotient-exact forms."""
    data = _forest(pg)
    g = pg.quotient
    from .graphs import coboundary

    exact = column_space(coboundary(g))
    gens = []
    for j in range(pg.d):
        for k in range(len(data.comps)):
            gens.append(
                tuple(
                    Fraction(pg.voltages[e.id][j])
                    if data.comp_of[e.o] == k
                    else Fraction(0)
                    for e in g.edges
                )
            )
    span = subspace_sum(exact, Subspace(g.n_edges, gens))
    return span.dim - exact.dim


def change_of_basis(pg: PeriodicGraph, b: Sequence[Sequence[int]]) -> PeriodicGraph:
    """Re-express all voltages in a new Z^d coordinate system t' = B t.

    B must be unimodular. Period coefficients of a decomposition transform by
    the contragredient (inverse transpose) of B.
    """
    rows = [list(map(int, r)) for r in b]
    h = hermite_normal_form(rows, pg.d)
    if len(h) != pg.d or any(h[i][i] != 1 for i in range(pg.d)):
        raise InputError("change-of-basis matrix is not unimodular")
    bm = Mat(rows)
    voltages = {
        eid: tuple(int(x) for x in bm.mulvec(t)) for eid, t in pg.voltages.items()
    }
    return PeriodicGraph(pg.d, pg.quotient, voltages)
