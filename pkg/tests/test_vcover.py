"""Vertex-cover search: branching solver, oracles, promise-driven floors."""

from __future__ import annotations

import math

import pytest

from densat.errors import (
    DomainError,
    MalformedGraph,
    NodeBudgetExceeded,
    PromiseViolated,
)
from densat.vcover import (
    Graph,
    brute_min_cover,
    count_covers,
    gen_random_graph,
    greedy_complete,
    parse_graph,
    vc_bfs_promise,
    vc_branch,
    write_graph,
)


def path(p: int) -> Graph:
    return Graph.from_edges(p, [(i, i + 1) for i in range(1, p)])


def cycle(c: int) -> Graph:
    return Graph.from_edges(c, [(i, i + 1) for i in range(1, c)] + [(1, c)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(1, n) for v in range(u + 1, n + 1)])


# ---------------------------------------------------------------------------
# graph construction and DIMACS


def test_graph_validation():
    with pytest.raises(MalformedGraph):
        Graph(n=3, edges=((1, 1),))
    with pytest.raises(MalformedGraph):
        Graph(n=3, edges=((1, 4),))
    with pytest.raises(MalformedGraph):
        Graph(n=3, edges=((2, 1),))  # endpoints must be sorted
    with pytest.raises(MalformedGraph):
        Graph(n=3, edges=((1, 2), (1, 2)))


def test_from_edges_normalizes():
    g = Graph.from_edges(4, [(3, 1), (1, 3), (2, 4)])
    assert g.edges == ((1, 3), (2, 4))
    assert g.adjacency() == {1: {3}, 2: {4}, 3: {1}, 4: {2}}
    assert g.is_cover({1, 2})
    assert not g.is_cover({1})


def test_dimacs_roundtrip():
    g = gen_random_graph(9, 14, seed=5)
    assert parse_graph(write_graph(g)) == g
    # comments are skipped
    text = "c hello\np edge 3 1\nc mid\ne 1 3\n"
    assert parse_graph(text) == Graph(n=3, edges=((1, 3),))


@pytest.mark.parametrize(
    "text",
    [
        "e 1 2\np edge 2 1\n",  # edge before header
        "p edge 2 1\np edge 2 1\ne 1 2\n",  # second header
        "p edge two 1\ne 1 2\n",
        "p edge -2 1\n",
        "p edge 3 2\ne 1 2\n",  # count mismatch
        "p edge 3 1\ne 1 x\n",
        "p edge 3 1\nq 1 2\n",
        "e 1 2\n",
        "p edge 3 2\ne 1 2\ne 1 2\n",
    ],
)
def test_parse_graph_errors(text):
    with pytest.raises(MalformedGraph):
        parse_graph(text)


# ---------------------------------------------------------------------------
# oracles


def test_brute_min_cover_knowns():
    assert brute_min_cover(complete(4)) == 3
    assert brute_min_cover(path(4)) == 2
    assert brute_min_cover(Graph(n=5, edges=())) == 0
    with pytest.raises(DomainError):
        brute_min_cover(Graph(n=25, edges=()))


def test_count_covers_knowns():
    assert count_covers(complete(3), 2) == 3
    assert count_covers(path(3), 1) == 1  # only the middle vertex
    assert count_covers(Graph(n=5, edges=()), 2) == math.comb(5, 2)
    assert count_covers(complete(3), 3) == 1
    assert count_covers(complete(4), 1) == 0
    with pytest.raises(DomainError):
        count_covers(Graph(n=25, edges=()), 1)


def test_gen_random_graph():
    a = gen_random_graph(10, 20, seed=3)
    b = gen_random_graph(10, 20, seed=3)
    assert a == b and len(a.edges) == 20 and a.n == 10
    assert gen_random_graph(10, 20, seed=4) != a
    with pytest.raises(DomainError):
        gen_random_graph(4, 7, seed=0)  # only 6 pairs exist
    with pytest.raises(DomainError):
        gen_random_graph(4, -1, seed=0)


# ---------------------------------------------------------------------------
# branching solver


def test_vc_branch_paths_and_cycles():
    for p in range(2, 9):
        assert brute_min_cover(path(p)) == p // 2
        assert vc_branch(path(p), p // 2) is not None
        if p // 2 > 0:
            assert vc_branch(path(p), p // 2 - 1) is None
    for c in range(3, 9):
        want = (c + 1) // 2
        assert brute_min_cover(cycle(c)) == want
        cover = vc_branch(cycle(c), want)
        assert cover is not None and cycle(c).is_cover(cover)
        assert vc_branch(cycle(c), want - 1) is None


def test_vc_branch_matches_brute():
    for i in range(60):
        n = 3 + i % 8
        mmax = n * (n - 1) // 2
        m = (7 * i + 3) % (mmax + 1)
        g = gen_random_graph(n, m, seed=100 + i)
        opt = brute_min_cover(g)
        cover = vc_branch(g, opt)
        assert cover is not None
        assert g.is_cover(cover) and len(cover) <= opt
        if opt > 0:
            assert vc_branch(g, opt - 1) is None


def test_vc_branch_guard():
    with pytest.raises(DomainError):
        vc_branch(path(3), -1)
    assert vc_branch(Graph(n=3, edges=()), 0) == set()


# ---------------------------------------------------------------------------
# greedy completion


def test_greedy_complete():
    g = path(5)
    cover = greedy_complete(g, set())
    assert g.is_cover(cover)
    # an existing cover comes back unchanged
    assert greedy_complete(g, {2, 4}) == {2, 4}
    assert greedy_complete(complete(5), set(), k=2) is None


# ---------------------------------------------------------------------------
# promise search


def exact_epsilon(g: Graph, k: int) -> float:
    return count_covers(g, k) / math.comb(g.n, k)


def test_promise_returns_valid_cover():
    for i in range(40):
        n = 5 + i % 6
        mmax = n * (n - 1) // 2
        m = (5 * i + 2) % (mmax + 1)
        g = gen_random_graph(n, m, seed=300 + i)
        k = min(n - 1, brute_min_cover(g) + 1 + i % 2)
        eps = exact_epsilon(g, k)
        if eps == 0.0:
            continue
        res = vc_bfs_promise(g, k, eps)
        assert g.is_cover(res.cover) and len(res.cover) <= k
        for ell, width in res.census.items():
            assert width <= res.rho**ell + 1e-9
        assert res.epsilon == eps and res.k == k


def test_promise_eps_one_fires_at_floor_zero():
    res = vc_bfs_promise(complete(5), 4, 1.0)
    assert res.fired and res.floor_reached == 0
    assert len(res.cover) == 4 and complete(5).is_cover(res.cover)
    assert res.census == {0: 1}


def test_promise_violated_on_false_promise():
    # K4 has no cover of size 1 at any claimed density
    with pytest.raises(PromiseViolated):
        vc_bfs_promise(complete(4), 1, 0.9)


def test_promise_guards():
    with pytest.raises(DomainError):
        vc_bfs_promise(path(3), -1, 0.5)
    with pytest.raises(DomainError):
        vc_bfs_promise(path(3), 1, 0.0)
    with pytest.raises(DomainError):
        vc_bfs_promise(path(3), 1, 1.5)


def test_promise_node_budget():
    with pytest.raises(NodeBudgetExceeded):
        vc_bfs_promise(complete(6), 5, 1e-9, max_nodes=1)


def test_promise_ell_star_consistency():
    g = gen_random_graph(10, 25, seed=9)
    k = brute_min_cover(g) + 1
    eps = exact_epsilon(g, k)
    res = vc_bfs_promise(g, k, eps)
    if res.ell_star is not None and res.fired:
        # the firing floor cannot sit far above the analytic crossover
        assert res.floor_reached <= math.ceil(res.ell_star) + 1
