"""
Tests del bosque AIC/BIC, path-steps y exportación.
"""

import itertools
from typing import Dict, List, Sequence, Set, Tuple

import numpy as np
import pytest

from selvar.graph import (
    build_forest,
    components,
    cumulative_information,
    distance,
    export_dot,
    forest_to_dict,
    has_forbidden_path,
    path_steps,
)
from selvar.info import all_pairwise_scores
from selvar.models import Criterion, EdgeKind, EdgeScore, SameNodeError, VariableKind
from tests.conftest import build_table

D = VariableKind.DISCRETE
C = VariableKind.CONTINUOUS


def edge(u: int, v: int, weight: float, kinds: Sequence[VariableKind]) -> EdgeScore:
    """Puntuación sintética con el mismo peso para AIC y BIC."""
    if kinds[u] is D and kinds[v] is D:
        kind = EdgeKind.DD
    elif kinds[u] is C and kinds[v] is C:
        kind = EdgeKind.CC
    else:
        kind = EdgeKind.MIX_HOM
    return EdgeScore(u=min(u, v), v=max(u, v), mi=abs(weight) + 1.0, df=1,
                     weight_aic=weight, weight_bic=weight, kind=kind)


def _adjacency(p: int, edges: Sequence[Tuple[int, int]]) -> Dict[int, Set[int]]:
    adjacency = {node: set() for node in range(p)}
    for u, v in edges:
        adjacency[u].add(v)
        adjacency[v].add(u)
    return adjacency


def _reach(start: int, adjacency: Dict[int, Set[int]], allowed) -> Set[int]:
    seen, stack = {start}, [start]
    while stack:
        node = stack.pop()
        for other in adjacency[node]:
            if other not in seen and allowed(other):
                seen.add(other)
                stack.append(other)
    return seen


def _is_forest(p: int, edges: Sequence[Tuple[int, int]]) -> bool:
    parent = list(range(p))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def _admissible(p: int, kinds: Sequence[VariableKind], edges: Sequence[Tuple[int, int]]) -> bool:
    """Sin caminos prohibidos: las discretas de cada árbol se alcanzan sin pasar por continuas."""
    adjacency = _adjacency(p, edges)
    for node in range(p):
        if kinds[node] is not D:
            continue
        tree = _reach(node, adjacency, lambda other: True)
        discrete_part = _reach(node, adjacency, lambda other: kinds[other] is D)
        if {n for n in tree if kinds[n] is D} != discrete_part:
            return False
    return True


def exhaustive_best(p: int, kinds: Sequence[VariableKind],
                    weighted: Sequence[Tuple[int, int, float]]) -> float:
    """Peso máximo entre todos los bosques admisibles de aristas positivas."""
    positive = [(u, v, w) for u, v, w in weighted if w > 0]
    best = 0.0

    def search(start: int, chosen: List[Tuple[int, int]], total: float) -> None:
        nonlocal best
        best = max(best, total)
        for j in range(start, len(positive)):
            u, v, w = positive[j]
            candidate = chosen + [(u, v)]
            if _is_forest(p, candidate) and _admissible(p, kinds, candidate):
                search(j + 1, candidate, total + w)

    search(0, [], 0.0)
    return best


def random_graph(seed: int):
    rng = np.random.default_rng(seed)
    p = int(rng.integers(2, 7))
    kinds = tuple(D if rng.uniform() < 0.5 else C for _ in range(p))
    weighted = [
        (u, v, float(rng.uniform(0.0, 10.0) if rng.uniform() < 0.6 else -rng.uniform(0.0, 5.0)))
        for u, v in itertools.combinations(range(p), 2)
    ]
    scores = [edge(u, v, w, kinds) for u, v, w in weighted]
    return p, kinds, weighted, scores


@pytest.mark.unit
class TestForestOracle:
    """El Kruskal con admisibilidad alcanza el óptimo exhaustivo."""

    @pytest.mark.parametrize('seed', range(200))
    def test_matches_exhaustive_search(self, seed):
        p, kinds, weighted, scores = random_graph(seed)

        forest = build_forest(scores, Criterion.BIC, kinds)

        assert forest.total_weight == pytest.approx(exhaustive_best(p, kinds, weighted), abs=1e-9)
        assert not has_forbidden_path(forest)

    @pytest.mark.parametrize('seed', range(200))
    def test_component_rule_equals_bfs(self, seed):
        _, kinds, _, scores = random_graph(seed)

        bfs = build_forest(scores, Criterion.BIC, kinds, admissibility='bfs')
        component = build_forest(scores, Criterion.BIC, kinds, admissibility='component')

        assert bfs.edges == component.edges


@pytest.mark.unit
class TestBuildForest:

    def test_forbidden_path_rejected(self):
        """d1 - c - d2: la segunda arista crearía un camino prohibido."""
        kinds = (D, C, D)
        scores = [edge(0, 1, 3.0, kinds), edge(1, 2, 2.0, kinds), edge(0, 2, -1.0, kinds)]

        forest = build_forest(scores, Criterion.BIC, kinds, ['d1', 'c', 'd2'])

        assert forest.edges == ((0, 1),)
        assert forest.degree(2) == 0

    def test_discrete_link_accepted(self):
        kinds = (D, C, D)
        scores = [edge(0, 1, 3.0, kinds), edge(1, 2, 2.0, kinds), edge(0, 2, 1.0, kinds)]

        forest = build_forest(scores, Criterion.BIC, kinds)

        assert forest.edges == ((0, 1), (0, 2))

    def test_non_positive_weights_give_empty_forest(self):
        kinds = (C, C, C)
        scores = [edge(0, 1, 0.0, kinds), edge(0, 2, -1.0, kinds), edge(1, 2, -2.0, kinds)]

        forest = build_forest(scores, Criterion.AIC, kinds)

        assert forest.edges == ()
        assert components(forest) == [[0], [1], [2]]

    def test_unknown_admissibility(self):
        with pytest.raises(ValueError):
            build_forest([], Criterion.BIC, (C,), admissibility='otro')

    def test_chain_from_data(self, chain_table):
        scores = all_pairwise_scores(chain_table)

        forest = build_forest(scores, Criterion.BIC, chain_table.kinds, chain_table.names)

        assert forest.edges == ((0, 1), (1, 2))
        assert forest.criterion == 'bic'


@pytest.mark.unit
class TestPathSteps:
    """Capas alrededor del objetivo en el camino 0 - 1 - 2 - 3 más el nodo aislado 4."""

    @classmethod
    def setup_class(cls):
        kinds = (C,) * 5
        scores = [edge(0, 1, 5.0, kinds), edge(1, 2, 4.0, kinds), edge(2, 3, 3.0, kinds)]
        cls.forest = build_forest(scores, Criterion.BIC, kinds, ['Y', 'A', 'B', 'E', 'Z'])

    def test_neighbors_at_distance_one(self):
        assert distance(self.forest, 0, 1) == 1
        assert distance(self.forest, 0, 3) == 3

    def test_other_tree(self):
        assert distance(self.forest, 0, 4) is None

    def test_same_node(self):
        with pytest.raises(SameNodeError):
            distance(self.forest, 2, 2)

    def test_cumulative_layers(self):
        steps = path_steps(self.forest, 0)

        assert [step.members for step in steps] == [(1,), (1, 2), (1, 2, 3)]
        assert [step.added for step in steps] == [(1,), (2,), (3,)]

    def test_middle_target(self):
        steps = path_steps(self.forest, 2)

        assert [step.members for step in steps] == [(1, 3), (0, 1, 3)]

    def test_isolated_target(self):
        assert path_steps(self.forest, 4) == []

    def test_cumulative_information(self):
        kinds = (C,) * 3
        scores = [edge(0, 1, 5.0, kinds), edge(0, 2, -1.0, kinds), edge(1, 2, 4.0, kinds)]
        forest = build_forest(scores, Criterion.BIC, kinds)

        totals = cumulative_information(path_steps(forest, 0), scores)

        assert totals == pytest.approx([6.0, 8.0])


@pytest.mark.unit
class TestFifteenVariableForest:
    """Objetivo Y con dos vecinos directos y un segundo árbol X12 - X13 - X14 separado."""

    TREE = [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 9), (2, 11),
            (3, 6), (4, 7), (5, 8), (9, 10), (12, 13), (13, 14)]

    @classmethod
    def setup_class(cls):
        kinds = (C,) * 15
        rng = np.random.default_rng(4)
        cls.scores = [edge(u, v, float(rng.uniform(1.0, 10.0)), kinds) for u, v in cls.TREE]
        names = ['Y'] + [f"X{i}" for i in range(1, 15)]
        cls.forest = build_forest(cls.scores, Criterion.BIC, kinds, names)

    def test_layers(self):
        steps = path_steps(self.forest, 0)

        assert [step.members for step in steps] == [
            (1, 2),
            (1, 2, 3, 4, 5, 9, 11),
            (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11),
        ]

    def test_other_tree_is_never_reached(self):
        reached = set(path_steps(self.forest, 0)[-1].members)

        assert reached.isdisjoint({12, 13, 14})
        assert all(distance(self.forest, 0, node) is None for node in (12, 13, 14))

    def test_cumulative_information_is_monotone(self):
        totals = cumulative_information(path_steps(self.forest, 0), self.scores)

        assert all(a <= b for a, b in zip(totals, totals[1:]))

    @pytest.mark.parametrize('seed', range(20))
    def test_monotone_on_simulated_forests(self, seed):
        rng = np.random.default_rng([9, seed])
        columns = {f"V{i}": rng.normal(size=80) for i in range(6)}
        columns['V1'] = columns['V1'] + columns['V0']
        columns['V2'] = columns['V2'] + columns['V1']
        scores = all_pairwise_scores(build_table(columns))
        forest = build_forest(scores, Criterion.BIC, (C,) * 6)

        totals = cumulative_information(path_steps(forest, 0), scores)

        assert all(a <= b for a, b in zip(totals, totals[1:]))


@pytest.mark.unit
class TestExport:

    def test_empty_forest(self):
        kinds = (C, D, C)
        forest = build_forest([], Criterion.BIC, kinds, ['x', 'd', 'z'])

        dot = export_dot(forest)

        assert dot.startswith("graph forest {")
        assert dot.count('shape=') == 3
        assert '--' not in dot

    def test_single_edge(self):
        kinds = (C, C)
        forest = build_forest([edge(0, 1, 2.5, kinds)], Criterion.BIC, kinds, ['a', 'b'])

        lines = [line for line in export_dot(forest).splitlines() if '--' in line]

        assert lines == ['  "a" -- "b" [label="2.5"];']

    def test_target_is_highlighted(self):
        kinds = (D, C)
        forest = build_forest([edge(0, 1, 1.0, kinds)], Criterion.BIC, kinds, ['svi', 'lpsa'])

        dot = export_dot(forest, highlight=1)

        assert '"lpsa" [shape=ellipse, style=filled' in dot
        assert '"svi" [shape=box];' in dot

    def test_forest_dict(self):
        kinds = (C, C, D)
        forest = build_forest([edge(0, 1, 2.0, kinds)], Criterion.AIC, kinds, ['a', 'b', 'g'])

        data = forest_to_dict(forest)

        assert data['criterion'] == 'aic'
        assert data['edges'] == [{'u': 'a', 'v': 'b', 'weight': 2.0}]
        assert data['components'] == [['a', 'b'], ['g']]
        assert data['nodes'][2] == {'name': 'g', 'kind': 'discrete'}
