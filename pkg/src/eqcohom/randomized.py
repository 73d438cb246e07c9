"""Seeded random instance generation and the property-verification harness.

Random equivariant instances are built in a basis adapted to ker pi, where
equivariance is a block-shape condition, and then conjugated by random
unimodular matrices. This guarantees validity by construction while still
sampling instances on both sides of the sharp characterization.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .graphs import Graph, GraphAction, to_instance, validate_action
from .instance import (
    LinearInstance,
    check_condition_i,
    check_condition_ii,
    decompose,
    find_ujk,
    invariant_subspace_U,
    oracle_quotient_dim,
    u_tilde,
    validate,
)
from .linalg import Mat, inverse, kernel_basis, vec


def random_invertible(rng: random.Random, n: int, lo: int = -2, hi: int = 2) -> Mat:
    if n == 0:
        return Mat.zeros(0, 0)
    while True:
        m = Mat([[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)])
        if m.is_invertible():
            return m


def random_unimodular(rng: random.Random, n: int, ops: Optional[int] = None) -> Mat:
    """Product of random elementary integer row operations; det = +-1."""
    if ops is None:
        ops = 2 * n
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(ops):
        kind = rng.randrange(3)
        i, j = rng.randrange(n), rng.randrange(n)
        if kind == 0 and i != j:
            k = rng.choice([-2, -1, 1, 2])
            rows[j] = [x + k * y for x, y in zip(rows[j], rows[i])]
        elif kind == 1:
            rows[i], rows[j] = rows[j], rows[i]
        else:
            rows[i] = [-x for x in rows[i]]
    return Mat(rows)


def random_linear_instance(
    rng: random.Random, max_dim: int = 6, max_gens: int = 3
) -> LinearInstance:
    """Valid random instance: adapted-basis block construction + conjugation."""
    if rng.random() < 0.35:
        return _designed_equality_instance(rng, max_dim, max_gens)
    dim_u = rng.randint(1, max_dim)
    m = rng.randint(0, min(2, dim_u))
    r = dim_u - m
    s_min = 0 if r > 0 else 1
    s = rng.randint(s_min, max_dim - r)
    dim_w = r + s
    d = rng.randint(1, max_gens)

    pi0 = Mat(
        [
            [1 if c == m + row else 0 for c in range(dim_u)]
            for row in range(r)
        ]
        + [[0] * dim_u for _ in range(s)]
    ) if dim_w else Mat.zeros(0, dim_u)

    gens0 = []
    for _ in range(d):
        a = Mat.identity(m) if rng.random() < 0.6 else random_invertible(rng, m)
        dmat = Mat.identity(r) if rng.random() < 0.5 else random_invertible(rng, r)
        b = [[rng.choice([-1, 0, 0, 1, 2]) for _ in range(r)] for _ in range(m)]
        f = [[rng.choice([-1, 0, 0, 1]) for _ in range(s)] for _ in range(r)]
        h = Mat.identity(s) if rng.random() < 0.5 else random_invertible(rng, s)
        gu0 = Mat(
            [list(a.row(i)) + b[i] for i in range(m)]
            + [[0] * m + list(dmat.row(i)) for i in range(r)]
        )
        gw0 = Mat(
            [list(dmat.row(i)) + f[i] for i in range(r)]
            + [[0] * r + list(h.row(i)) for i in range(s)]
        )
        gens0.append((gu0, gw0))

    p = random_unimodular(rng, dim_u)
    q = random_unimodular(rng, dim_w) if dim_w else Mat.zeros(0, 0)
    p_inv = inverse(p)
    q_inv = inverse(q) if dim_w else q
    pi = q * pi0 * p_inv if dim_w else pi0
    gens = tuple(
        (p * gu0 * p_inv, q * gw0 * q_inv if dim_w else gw0)
        for gu0, gw0 in gens0
    )
    inst = LinearInstance(dim_u, dim_w, pi, gens, {})
    report = validate(inst)
    assert report.ok, f"random construction broke invariants: {report.issues}"
    return inst


def _designed_equality_instance(
    rng: random.Random, max_dim: int, max_gens: int
) -> LinearInstance:
    """Instance where both sharp conditions hold by construction: each
    generator shears its own block of complement coordinates onto the
    kernel (a multi-generator version of the basic shear)."""
    choices = [
        (m, d)
        for m in (1, 2)
        for d in range(1, max_gens + 1)
        if m + m * d <= max_dim
    ]
    m, d = rng.choice(choices)
    r = m * d + rng.randint(0, max_dim - m - m * d)
    dim_u = m + r
    s = rng.randint(0, max(0, max_dim - r))
    dim_w = r + s
    pi0 = Mat(
        [[1 if c == m + row else 0 for c in range(dim_u)] for row in range(r)]
        + [[0] * dim_u for _ in range(s)],
        cols=dim_u,
    )
    gens0 = []
    for j in range(d):
        b = [[0] * r for _ in range(m)]
        for k in range(m):
            b[k][j * m + k] = 1
        gu0 = Mat(
            [
                [1 if i == c else 0 for c in range(m)] + b[i]
                for i in range(m)
            ]
            + [
                [0] * m + [1 if i == c else 0 for c in range(r)]
                for i in range(r)
            ]
        )
        f = [[rng.choice([-1, 0, 0, 1]) for _ in range(s)] for _ in range(r)]
        h = Mat.identity(s) if rng.random() < 0.5 else random_invertible(rng, s)
        gw0 = Mat(
            [
                [1 if i == c else 0 for c in range(r)] + f[i]
                for i in range(r)
            ]
            + [[0] * r + list(h.row(i)) for i in range(s)],
            cols=dim_w,
        )
        gens0.append((gu0, gw0))
    p = random_unimodular(rng, dim_u)
    q = random_unimodular(rng, dim_w)
    p_inv = inverse(p)
    q_inv = inverse(q) if dim_w else q
    pi = (q * pi0 * p_inv) if dim_w else pi0
    gens = tuple(
        (p * gu0 * p_inv, (q * gw0 * q_inv) if dim_w else gw0)
        for gu0, gw0 in gens0
    )
    inst = LinearInstance(dim_u, dim_w, pi, gens, {})
    report = validate(inst)
    assert report.ok, f"designed construction broke invariants: {report.issues}"
    return inst


def random_graph(rng: random.Random, max_vertices: int = 7) -> Graph:
    """Random graph allowing multi-edges, loops, and isolated vertices."""
    n = rng.randint(1, max_vertices)
    n_edges = rng.randint(0, 2 * n)
    edges = []
    for i in range(n_edges):
        o = rng.randrange(n)
        t = rng.randrange(n)
        edges.append((i, o, t))
    return Graph.make(n, edges)


def random_graph_instance(rng: random.Random) -> LinearInstance:
    """Instance from a small graph-with-automorphism family."""
    kind = rng.randrange(4)
    if kind == 0:
        # Cycle with a rotation.
        n = rng.randint(3, 6)
        g = Graph.make(n, [(i, i, (i + 1) % n) for i in range(n)])
        shift = rng.randint(1, n - 1)
        perm = tuple((v + shift) % n for v in range(n))
        act = GraphAction((perm,), {0: n // _gcd(n, shift)})
    elif kind == 1:
        # Two disjoint copies of a random graph, swapped.
        base = random_graph(rng, 3)
        n = base.n_vertices
        edges = [(e.id, e.o, e.t) for e in base.edges]
        edges += [
            (len(edges) + i, e.o + n, e.t + n) for i, e in enumerate(base.edges)
        ]
        g = Graph.make(2 * n, edges)
        perm = tuple(list(range(n, 2 * n)) + list(range(n)))
        act = GraphAction((perm,), {0: 2})
    elif kind == 2:
        # Path with the end-to-end reflection.
        n = rng.randint(2, 6)
        g = Graph.make(n, [(i, i, i + 1) for i in range(n - 1)])
        perm = tuple(n - 1 - v for v in range(n))
        act = GraphAction((perm,), {0: 2})
    else:
        # Identity action on an arbitrary random graph.
        g = random_graph(rng, 5)
        act = GraphAction((tuple(range(g.n_vertices)),), {0: 1})
    assert not validate_action(g, act)
    return to_instance(g, act)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@dataclass
class Violation:
    index: int
    kind: str
    detail: str
    instance_json: dict


@dataclass
class VerifyResult:
    seed: int
    count: int
    checked: int = 0
    decompositions: int = 0
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "count": self.count,
            "checked": self.checked,
            "decompositions": self.decompositions,
            "violations": [
                {"index": v.index, "kind": v.kind, "detail": v.detail}
                for v in self.violations
            ],
            "ok": self.ok,
        }


def _random_invariant_image_vector(
    rng: random.Random, inst: LinearInstance
) -> Optional[tuple[Fraction, ...]]:
    """Random w in im(pi) fixed by the action, as pi of a random preimage."""
    ut = u_tilde(inst)
    if ut.dim == 0:
        return None
    u = [Fraction(0)] * inst.dim_U
    for bv in ut.basis_vectors():
        c = rng.randint(-3, 3)
        u = [x + c * y for x, y in zip(u, bv)]
    return inst.pi.mulvec(u)


def check_one_instance(
    inst: LinearInstance,
    rng: random.Random,
    result: VerifyResult,
    index: int,
    cond_ii: Callable[[LinearInstance], bool] = check_condition_ii,
) -> None:
    """Run the bound/iff assertions and, when possible, a decomposition
    round-trip with a coefficient-invariance shift."""
    m = kernel_basis(inst.pi).dim
    d = len(inst.generators)
    dim = oracle_quotient_dim(inst).dim
    ci = check_condition_i(inst)
    cii = cond_ii(inst)

    def flag(kind: str, detail: str) -> None:
        result.violations.append(Violation(index, kind, detail, inst.to_json()))

    if dim > m * d:
        flag("bound", f"dim {dim} > m*d = {m * d}")
    if (dim == m * d) != (ci and cii):
        flag(
            "iff",
            f"dim {dim}, m*d {m * d}, condition_i {ci}, condition_ii {cii}",
        )
    result.checked += 1

    if not (ci and cii and m > 0):
        return
    kernel_vecs = [list(v) for v in kernel_basis(inst.pi).basis_vectors()]
    ujk = find_ujk(inst, kernel_vecs)
    if ujk is None:
        flag("find-ujk", "condition (ii) holds but the ujk solve failed")
        return
    w = _random_invariant_image_vector(rng, inst)
    if w is None:
        return
    try:
        dec = decompose(inst, w, ujk, kernel_vecs)
    except AssertionError as exc:
        flag("decompose", str(exc))
        return
    result.decompositions += 1
    # Shift every ujk by a random fixed vector: coefficients must not move.
    fixed = invariant_subspace_U(inst)
    if fixed.dim == 0:
        return
    shifted = []
    for j in range(d):
        row = []
        for k in range(m):
            shift = [Fraction(0)] * inst.dim_U
            for bv in fixed.basis_vectors():
                c = rng.randint(-2, 2)
                shift = [x + c * y for x, y in zip(shift, bv)]
            row.append(tuple(x + y for x, y in zip(vec(ujk[j][k]), shift)))
        shifted.append(row)
    dec2 = decompose(inst, w, shifted, kernel_vecs)
    if dec2.coefficients != dec.coefficients:
        flag("shift-invariance", "coefficients changed under a fixed-vector shift")


def run_verification(
    seed: int,
    count: int,
    max_dim: int = 6,
    max_gens: int = 3,
    cond_ii: Callable[[LinearInstance], bool] = check_condition_ii,
) -> VerifyResult:
    rng = random.Random(seed)
    result = VerifyResult(seed=seed, count=count)
    for i in range(count):
        if rng.random() < 0.8:
            inst = random_linear_instance(rng, max_dim=max_dim, max_gens=max_gens)
        else:
            inst = random_graph_instance(rng)
        check_one_instance(inst, rng, result, i, cond_ii=cond_ii)
    return result
