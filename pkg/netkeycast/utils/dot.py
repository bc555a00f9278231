import logging
from pathlib import Path

import networkx as nx

from .utils import node_key

log = logging.getLogger(__name__)

SET_COLORSCHEME = 'set312'


def _base_graph(instance):
    graph = nx.MultiDiGraph(name='instance')
    for node in sorted(instance.nodes, key=node_key):
        graph.add_node(node, label=str(node))
    graph.nodes[instance.source]['shape'] = 'doublecircle'
    for j in instance.set_indices:
        for d in instance.terminal_set(j):
            graph.nodes[d].update(shape='box', style='filled',
                                  colorscheme=SET_COLORSCHEME,
                                  fillcolor=str((j - 1) % 12 + 1))
    for edge in instance.edges:
        graph.add_edge(edge.tail, edge.head, key=edge.id, id=str(edge.id))
    return graph


def keycast_graph(instance, coloring):
    """ Edges labelled 'α=<color> [stage]', terminals with their key index """
    graph = _base_graph(instance)
    for edge in instance.edges:
        color = coloring.color.get(edge.id)
        if color is None:
            continue
        graph.edges[edge.tail, edge.head, edge.id]['label'] = 'α={} [{}]'.format(
            color, coloring.stage[edge.id].value)
    for j in instance.set_indices:
        for d in instance.terminal_set(j):
            graph.nodes[d]['label'] = '{} K{}'.format(d, j)
    return graph


def secure_graph(instance, coloring):
    """ Nodes labelled 'c=<color> [N|P]', terminal sets grouped by fill color """
    graph = _base_graph(instance)
    for node in instance.nodes:
        color = coloring.color[node]
        kind = coloring.kind.get(node)
        label = '{}\\nc={}'.format(node, color)
        if kind is not None:
            label = '{} [{}]'.format(label, kind.short)
        graph.nodes[node]['label'] = label
    return graph


def write_dot(graph, path):
    """ Writes graph in graphviz DOT format

    :return bool: Success / Failure
    """
    path = Path(path)
    try:
        if not path.parent.exists():
            path.parent.mkdir(parents=True)
        nx.nx_pydot.write_dot(graph, path)
    except OSError as e:
        log.error('Could not write dot file {}: {}'.format(path, e))
        return False
    log.debug('Dot file written to {}'.format(path))
    return True
