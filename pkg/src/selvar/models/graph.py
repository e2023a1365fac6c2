"""
Bosque de dependencias y path-steps alrededor de la variable objetivo.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import networkx as nx

from .enums import VariableKind


@dataclass(frozen=True)
class Forest:
    """
    Bosque no dirigido sobre los índices de variable.

    ``edges`` se guarda ordenado por ``(u, v)`` con ``u < v``; ``edge_weights``
    contiene el peso penalizado del criterio usado al construirlo.
    """
    names: Tuple[str, ...]
    node_kinds: Tuple[VariableKind, ...]
    edges: Tuple[Tuple[int, int], ...]
    edge_weights: Dict[Tuple[int, int], float]
    criterion: str = 'bic'
    flags: Tuple[str, ...] = ()
    _graph: nx.Graph = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        """Construye la vista networkx del bosque."""
        if len(self.names) != len(self.node_kinds):
            raise ValueError("names y node_kinds deben tener la misma longitud")
        graph = nx.Graph()
        graph.add_nodes_from(range(len(self.names)))
        for u, v in self.edges:
            graph.add_edge(u, v, weight=self.edge_weights.get((u, v), 0.0))
        object.__setattr__(self, '_graph', nx.freeze(graph))

    @property
    def p(self) -> int:
        return len(self.names)

    @property
    def graph(self) -> nx.Graph:
        """Grafo networkx congelado (solo lectura)."""
        return self._graph

    def neighbors(self, node: int) -> List[int]:
        return sorted(self._graph.neighbors(node))

    def degree(self, node: int) -> int:
        return int(self._graph.degree(node))

    def is_discrete(self, node: int) -> bool:
        return self.node_kinds[node] is VariableKind.DISCRETE

    @property
    def total_weight(self) -> float:
        return float(sum(self.edge_weights[edge] for edge in self.edges))


@dataclass(frozen=True)
class PathStep:
    """Variables a distancia ``<= k`` del objetivo; ``added`` es la capa nueva."""
    k: int
    members: Tuple[int, ...]
    target: int
    added: Tuple[int, ...] = ()

    def __post_init__(self):
        """Validaciones post-inicialización."""
        if self.k < 1:
            raise ValueError("El orden del path-step empieza en 1")
        if self.target in self.members:
            raise ValueError("El objetivo no puede pertenecer al path-step")

    @property
    def size(self) -> int:
        return len(self.members)
