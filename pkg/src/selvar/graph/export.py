"""
Exportación del bosque a DOT y a diccionario JSON.
"""

import math
from typing import Dict, Optional

from ..models import Forest
from .forest_builder import components


def _quote(name: str) -> str:
    return '"' + name.replace('\\', '\\\\').replace('"', '\\"') + '"'


def _format_weight(weight: float) -> str:
    return 'inf' if math.isinf(weight) else f"{weight:.4g}"


def export_dot(forest: Forest, highlight: Optional[int] = None) -> str:
    """
    Grafo DOT no dirigido del bosque.

    Discretas con ``shape=box``, continuas con ``shape=ellipse``; el objetivo
    (``highlight``) se rellena.

    Args:
        forest: Bosque a exportar
        highlight: Índice del nodo objetivo

    Returns:
        Texto DOT
    """
    output = []
    output.append("graph forest {")
    output.append('  node [fontname="Helvetica"];')
    for node, name in enumerate(forest.names):
        shape = 'box' if forest.is_discrete(node) else 'ellipse'
        style = ', style=filled, fillcolor=yellow' if node == highlight else ''
        output.append(f"  {_quote(name)} [shape={shape}{style}];")
    for u, v in forest.edges:
        label = _format_weight(forest.edge_weights[(u, v)])
        output.append(f'  {_quote(forest.names[u])} -- {_quote(forest.names[v])} [label="{label}"];')
    output.append("}")
    return "\n".join(output) + "\n"


def forest_to_dict(forest: Forest) -> Dict:
    """Volcado JSON ``{nodes, edges, components}`` del bosque."""
    return {
        'criterion': forest.criterion,
        'nodes': [
            {'name': name, 'kind': kind.value}
            for name, kind in zip(forest.names, forest.node_kinds)
        ],
        'edges': [
            {'u': forest.names[u], 'v': forest.names[v], 'weight': forest.edge_weights[(u, v)]}
            for u, v in forest.edges
        ],
        'components': [[forest.names[node] for node in tree] for tree in components(forest)],
        'flags': list(forest.flags),
    }
