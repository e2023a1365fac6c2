"""
Bosque de máximo peso AIC/BIC sobre variables mixtas y consultas de distancia.

El bosque se construye con Kruskal sobre los pesos penalizados: se aceptan
aristas de peso estrictamente positivo, en orden decreciente de peso (empates
por ``(u, v)``), que unan componentes distintas y no creen caminos prohibidos
(un camino entre dos discretas que pase por una continua).
"""

import math
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.utils import UnionFind

from ..config import get_logger
from ..models import (
    Criterion,
    EdgeScore,
    Flags,
    Forest,
    PathStep,
    SameNodeError,
    VariableKind,
)

logger = get_logger(__name__)


def _discrete_part_connected(graph: nx.Graph, nodes, kinds: Sequence[VariableKind]) -> bool:
    discrete = [node for node in nodes if kinds[node] is VariableKind.DISCRETE]
    if len(discrete) <= 1:
        return True
    return nx.is_connected(graph.subgraph(discrete))


class _BfsCheck:
    """Fusión tentativa y comprobación de que las discretas del árbol resultante son conexas."""

    def __init__(self, p: int, kinds: Sequence[VariableKind]):
        self.kinds = kinds
        self.graph = nx.Graph()
        self.graph.add_nodes_from(range(p))

    def try_add(self, u: int, v: int, components: UnionFind) -> bool:
        self.graph.add_edge(u, v)
        tree = nx.node_connected_component(self.graph, u)
        if _discrete_part_connected(self.graph, tree, self.kinds):
            return True
        self.graph.remove_edge(u, v)
        return False


class _ComponentCheck:
    """
    Contabilidad por componente: dos árboles con discretas solo pueden unirse
    mediante una arista discreta-discreta.
    """

    def __init__(self, p: int, kinds: Sequence[VariableKind]):
        self.kinds = kinds
        self.discrete_count = {
            node: int(kind is VariableKind.DISCRETE) for node, kind in enumerate(kinds)
        }

    def try_add(self, u: int, v: int, components: UnionFind) -> bool:
        ru, rv = components[u], components[v]
        du, dv = self.discrete_count[ru], self.discrete_count[rv]
        both_discrete = (
            self.kinds[u] is VariableKind.DISCRETE and self.kinds[v] is VariableKind.DISCRETE
        )
        if du and dv and not both_discrete:
            return False
        self.discrete_count[ru] = self.discrete_count[rv] = du + dv
        return True


def build_forest(
    scores: Sequence[EdgeScore],
    criterion: Criterion,
    node_kinds: Sequence[VariableKind],
    names: Optional[Sequence[str]] = None,
    admissibility: str = 'bfs',
) -> Forest:
    """
    Construye el bosque mínimo AIC/BIC.

    Args:
        scores: Puntuaciones de todos los pares
        criterion: Criterio cuyo peso penalizado se maximiza
        node_kinds: Tipo de cada variable
        names: Nombres de las variables (por defecto, sus índices)
        admissibility: ``'bfs'`` (fusión tentativa) o ``'component'`` (contabilidad por árbol)

    Returns:
        Forest con las aristas aceptadas
    """
    p = len(node_kinds)
    names = tuple(names) if names is not None else tuple(str(i) for i in range(p))
    kinds = tuple(node_kinds)
    if admissibility == 'bfs':
        check = _BfsCheck(p, kinds)
    elif admissibility == 'component':
        check = _ComponentCheck(p, kinds)
    else:
        raise ValueError(f"Modo de admisibilidad desconocido: {admissibility}")

    candidates = sorted(scores, key=lambda s: (-s.weight(criterion), s.u, s.v))
    components = UnionFind(range(p))
    weights: Dict[Tuple[int, int], float] = {}
    rejected = 0

    for score in candidates:
        weight = score.weight(criterion)
        if not weight > 0:
            break
        u, v = score.u, score.v
        if components[u] == components[v]:
            continue
        if not check.try_add(u, v, components):
            rejected += 1
            logger.debug(f"Arista ({names[u]}, {names[v]}) rechazada: camino prohibido")
            continue
        components.union(u, v)
        weights[(u, v)] = weight

    flags = (Flags.INFINITE_EDGE,) if any(math.isinf(w) for w in weights.values()) else ()
    if flags:
        logger.warning("El bosque contiene aristas de peso infinito (correlación perfecta)")
    logger.info(
        f"Bosque {criterion.value.upper()}: {len(weights)} aristas sobre {p} nodos "
        f"({rejected} rechazadas por caminos prohibidos)"
    )
    return Forest(
        names=names,
        node_kinds=kinds,
        edges=tuple(sorted(weights)),
        edge_weights=weights,
        criterion=criterion.value,
        flags=flags,
    )


def has_forbidden_path(forest: Forest) -> bool:
    """True si algún árbol del bosque une dos discretas a través de una continua."""
    graph = forest.graph
    return not all(
        _discrete_part_connected(graph, tree, forest.node_kinds)
        for tree in nx.connected_components(graph)
    )


def components(forest: Forest) -> List[List[int]]:
    """Árboles del bosque como listas ordenadas de nodos."""
    trees = [sorted(tree) for tree in nx.connected_components(forest.graph)]
    return sorted(trees, key=lambda tree: tree[0])


def distance(forest: Forest, y: int, x: int) -> Optional[int]:
    """
    Número de aristas del camino entre ``y`` y ``x``.

    Los vecinos directos están a distancia 1; devuelve None si ``x`` está en
    otro árbol.
    """
    if y == x:
        raise SameNodeError("La distancia se define entre nodos distintos")
    try:
        return int(nx.shortest_path_length(forest.graph, y, x))
    except nx.NetworkXNoPath:
        return None


def path_steps(forest: Forest, y: int) -> List[PathStep]:
    """
    Capas BFS acumuladas desde el objetivo: ``w_k = {X : dist(Y, X) <= k}``.

    Un objetivo aislado devuelve una lista vacía.
    """
    layers = nx.single_source_shortest_path_length(forest.graph, y)
    depth = max(layers.values())
    steps = []
    for k in range(1, depth + 1):
        members = tuple(sorted(node for node, d in layers.items() if 1 <= d <= k))
        added = tuple(sorted(node for node, d in layers.items() if d == k))
        steps.append(PathStep(k=k, members=members, target=y, added=added))
    return steps


def cumulative_information(steps: Sequence[PathStep], scores: Sequence[EdgeScore]) -> List[float]:
    """Suma de la MI por pares entre el objetivo y cada miembro de cada path-step."""
    mi = {score.pair: score.mi for score in scores}
    totals = []
    for step in steps:
        y = step.target
        totals.append(float(sum(mi[(min(y, x), max(y, x))] for x in step.members)))
    return totals
