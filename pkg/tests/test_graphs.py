import random
from fractions import Fraction

import pytest

from eqcohom.errors import InputError, PreconditionError
from eqcohom.fixtures import (
    c4_graph,
    c4_rotation,
    k3_graph,
    k3_s3_action,
    p2_graph,
    p2_swap,
    two_triangles_graph,
    two_triangles_swap,
)
from eqcohom.graphs import (
    Cochain0,
    Cochain1,
    Graph,
    GraphAction,
    action_checks,
    analyze_graph_action,
    apply_coboundary,
    close_group,
    coboundary,
    components,
    is_closed,
    kernel_indicators,
    potential,
    to_instance,
    validate_action,
)
from eqcohom.instance import check_condition_i, oracle_quotient_dim, validate
from eqcohom.linalg import Mat, Subspace, kernel_basis
from eqcohom.randomized import random_graph


def test_coboundary_single_edge():
    g = Graph.make(2, [(0, 0, 1)])
    assert coboundary(g) == Mat([[-1, 1]])


def test_coboundary_path():
    g = Graph.make(3, [(0, 0, 1), (1, 1, 2)])
    pi = coboundary(g)
    assert pi.rank() == 2
    assert kernel_basis(pi) == Subspace(3, [[1, 1, 1]])


def test_coboundary_two_triangles_kernel():
    assert kernel_basis(coboundary(two_triangles_graph())).dim == 2


def test_coboundary_loop_row_zero():
    g = Graph.make(1, [(0, 0, 0)])
    assert coboundary(g) == Mat([[0]])
    assert g.validate() == ["edge 0 is a loop; its 1-form value must be 0"]


def test_components_connected():
    assert components(k3_graph()) == [[0, 1, 2]]
    inds = kernel_indicators(k3_graph())
    assert inds[0].values == (Fraction(1),) * 3


def test_components_edgeless():
    g = Graph.make(4, [])
    assert components(g) == [[0], [1], [2], [3]]
    assert len(kernel_indicators(g)) == 4


def test_components_two_triangles():
    assert components(two_triangles_graph()) == [[0, 1, 2], [3, 4, 5]]


def test_indicators_span_kernel():
    rng = random.Random(31)
    for _ in range(25):
        g = random_graph(rng)
        inds = kernel_indicators(g)
        span = Subspace(g.n_vertices, [f.values for f in inds])
        assert span == kernel_basis(coboundary(g))


def test_potential_recovers_function():
    rng = random.Random(5)
    for _ in range(20):
        g = random_graph(rng)
        f = Cochain0.make([rng.randint(-5, 5) for _ in range(g.n_vertices)])
        w = apply_coboundary(g, f)
        rec = potential(g, w)
        assert rec is not None
        # Agreement up to the per-component root normalization.
        for comp in components(g):
            root = comp[0]
            for v in comp:
                assert rec.values[v] == f.values[v] - f.values[root]
        assert apply_coboundary(g, rec).values == w.values


def test_triangle_circulation_not_closed():
    w = Cochain1.make([1, 1, 1])
    assert not is_closed(k3_graph(), w)
    assert potential(k3_graph(), w) is None


def test_tree_always_closed():
    g = Graph.make(4, [(0, 0, 1), (1, 1, 2), (2, 1, 3)])
    rng = random.Random(1)
    for _ in range(10):
        w = Cochain1.make([rng.randint(-4, 4) for _ in range(3)])
        assert is_closed(g, w)


def test_loop_forces_zero_value():
    g = Graph.make(1, [(0, 0, 0)])
    assert is_closed(g, Cochain1.make([0]))
    assert not is_closed(g, Cochain1.make([1]))
    with pytest.raises(InputError):
        Cochain1.from_json(g, ["1"])


def test_action_checks_c4():
    checks = action_checks(c4_graph(), c4_rotation())
    assert checks.is_automorphism
    assert checks.is_free_on_generated_group
    assert checks.is_closed_in_components
    assert checks.group_order == 4


def test_action_checks_p2_swap_free():
    checks = action_checks(p2_graph(), p2_swap())
    assert checks.is_free_on_generated_group  # no fixed vertex
    assert checks.is_closed_in_components
    assert checks.group_order == 2


def test_action_checks_p3_reflection_not_free():
    g = Graph.make(3, [(0, 0, 1), (1, 1, 2)])
    act = GraphAction(((2, 1, 0),), {0: 2})
    checks = action_checks(g, act)
    assert checks.is_automorphism
    assert not checks.is_free_on_generated_group  # vertex 1 is fixed


def test_action_rejects_non_automorphism():
    g = Graph.make(3, [(0, 0, 1)])
    act = GraphAction(((1, 2, 0),), {})
    assert validate_action(g, act)
    with pytest.raises(InputError):
        to_instance(g, act)


def test_close_group_cap():
    # S_6 has 720 elements; a tiny cap must trip the guardrail.
    gens = [(1, 0, 2, 3, 4, 5), (1, 2, 3, 4, 5, 0)]
    with pytest.raises(PreconditionError) as err:
        close_group(gens, 6, cap=10)
    assert err.value.code == "closure-cap"
    assert len(close_group(gens, 6)) == 720


def test_to_instance_identity():
    g = k3_graph()
    inst = to_instance(g, GraphAction((tuple(range(3)),), {0: 1}))
    assert inst.generators[0][0] == Mat.identity(3)
    assert inst.generators[0][1] == Mat.identity(3)


def test_to_instance_c4_equivariance():
    inst = to_instance(c4_graph(), c4_rotation())
    assert validate(inst).ok
    gu, gw = inst.generators[0]
    assert inst.pi * gu == gw * inst.pi


def test_to_instance_p2_swap_sign():
    inst = to_instance(p2_graph(), p2_swap())
    assert inst.generators[0][1] == Mat([[-1]])


def test_analyze_k3():
    rep = analyze_graph_action(k3_graph(), k3_s3_action())
    assert rep["quotient_dim"] == 0
    assert rep["predicted_zero"] and rep["consistent"]


def test_analyze_c6_rotation():
    g = Graph.make(6, [(i, i, (i + 1) % 6) for i in range(6)])
    act = GraphAction(((1, 2, 3, 4, 5, 0),), {0: 6})
    rep = analyze_graph_action(g, act)
    assert rep["quotient_dim"] == 0


def test_component_exchanging_action():
    # Two disjoint edges swapped: indicators are not invariant, so (i) fails.
    g = Graph.make(4, [(0, 0, 1), (1, 2, 3)])
    act = GraphAction(((2, 3, 0, 1),), {0: 2})
    inst = to_instance(g, act)
    assert not check_condition_i(inst)
    res = oracle_quotient_dim(inst)
    m = kernel_basis(inst.pi).dim
    assert res.dim < m * 1
    rep = analyze_graph_action(g, act)
    assert rep["consistent"]


def test_two_triangles_swap_condition_i_fails():
    inst = to_instance(two_triangles_graph(), two_triangles_swap())
    assert not check_condition_i(inst)
    assert oracle_quotient_dim(inst).dim == 0


def test_graph_json_roundtrip():
    g = two_triangles_graph()
    assert Graph.from_json(g.to_json()) == g
    act = k3_s3_action()
    again = GraphAction.from_json(act.to_json())
    assert again.generators == act.generators
    assert again.orders == act.orders


def test_multigraph_automorphism_matching():
    # Two parallel edges; swapping endpoints reverses both.
    g = Graph.make(2, [(0, 0, 1), (1, 0, 1)])
    inst = to_instance(g, GraphAction(((1, 0),), {0: 2}))
    assert validate(inst).ok
