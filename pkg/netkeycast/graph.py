"""
Acyclic multigraph instances of the multiple key-cast problem and the
connectivity queries (cut sets, tight sets, disjoint paths) the codes are
built from.
"""
import logging
from collections import namedtuple
from functools import cached_property

import networkx as nx

from .utils import SecrecyMode, load_json, node_key, save_json

log = logging.getLogger(__name__)


class InstanceError(ValueError):
    pass


class InfeasibleInstanceError(InstanceError):
    pass


Edge = namedtuple('Edge', ['id', 'tail', 'head'])


def _check_node_id(node):
    if isinstance(node, bool) or not isinstance(node, (int, str)):
        raise InstanceError('Node ids must be strings or integers, got {!r}'.format(node))
    return node


class Instance:
    """ An instance I = (G, s, {D_i}, {B_i}) of the multiple key-cast problem.

    Instances are immutable values. Terminal sets are addressed with 1 based
    indices (``j`` in ``1..ell``) everywhere in the public api.
    """

    def __init__(self, nodes, edges, source, terminal_sets, *,
                 secrecy_mode=SecrecyMode.NONE, secrecy_sets=None,
                 aliases=None):
        """ Create and validate an instance

        :param nodes: iterable of node ids (str or int)
        :param edges: iterable of (edge id, tail, head) tuples or Edge
        :param source: the source node
        :param terminal_sets: ordered iterable of terminal node collections
        :param SecrecyMode or str secrecy_mode: none, node_eavesdropper or custom
        :param secrecy_sets: for custom mode only: one list of edge-id
         collections per terminal set
        :param dict aliases: auxiliary terminal -> original terminal, recorded
         by normalize_terminals
        :raises InstanceError: if the instance violates any invariant
        """
        self.nodes = frozenset(_check_node_id(n) for n in nodes)
        edge_list = []
        for edge in edges:
            edge = Edge(*edge)
            if isinstance(edge.id, bool) or not isinstance(edge.id, int):
                raise InstanceError('Edge ids must be integers, got {!r}'.format(edge.id))
            edge_list.append(edge)
        self.edges = tuple(sorted(edge_list, key=lambda e: e.id))
        self.source = source
        self.terminal_sets = tuple(frozenset(d_set) for d_set in terminal_sets)
        self.secrecy_mode = SecrecyMode.get(secrecy_mode)
        self.aliases = dict(aliases or {})

        self._edge_map = {}
        for edge in self.edges:
            if edge.id in self._edge_map:
                raise InstanceError('Duplicated edge id {}'.format(edge.id))
            self._edge_map[edge.id] = edge

        self._in = {node: [] for node in self.nodes}
        self._out = {node: [] for node in self.nodes}
        for edge in self.edges:
            for endpoint in (edge.tail, edge.head):
                if endpoint not in self.nodes:
                    raise InstanceError('Edge {} uses unknown node {!r}'.format(edge.id, endpoint))
            self._out[edge.tail].append(edge.id)
            self._in[edge.head].append(edge.id)

        self._validate()

        if self.secrecy_mode is SecrecyMode.CUSTOM:
            secrecy_sets = secrecy_sets or [[] for _ in self.terminal_sets]
            if len(secrecy_sets) != self.ell:
                raise InstanceError('Expected {} secrecy collections, got {}'.format(
                    self.ell, len(secrecy_sets)))
            custom = []
            for collection in secrecy_sets:
                sets = tuple(frozenset(beta) for beta in collection)
                for beta in sets:
                    unknown = [e for e in beta if e not in self._edge_map]
                    if unknown:
                        raise InstanceError('Secrecy set uses unknown edges {}'.format(unknown))
                custom.append(sets)
            self._custom_secrecy = tuple(custom)
        else:
            if secrecy_sets and self.secrecy_mode is SecrecyMode.NONE and any(secrecy_sets):
                raise InstanceError('Secrecy sets given but secrecy_mode is "none"')
            self._custom_secrecy = tuple(() for _ in self.terminal_sets)

    def _validate(self):
        if self.source not in self.nodes:
            raise InstanceError('Source {!r} is not a node'.format(self.source))
        if not self.terminal_sets:
            raise InstanceError('An instance needs at least one terminal set')
        seen = set()
        for index, d_set in enumerate(self.terminal_sets, start=1):
            if not d_set:
                raise InstanceError('Terminal set {} is empty'.format(index))
            for d in d_set:
                if d not in self.nodes:
                    raise InstanceError('Terminal {!r} is not a node'.format(d))
                if d == self.source:
                    raise InstanceError('The source can not be a terminal')
                if d in seen:
                    raise InstanceError('Terminal sets are not disjoint ({!r})'.format(d))
                if self._out[d]:
                    raise InstanceError('Terminal {!r} has outgoing edges'.format(d))
                seen.add(d)
        if self._in[self.source]:
            raise InstanceError('The source has incoming edges')
        if not nx.is_directed_acyclic_graph(self.graph):
            raise InstanceError('The graph has a cycle')

    def __repr__(self):
        return 'Instance(nodes: {}, edges: {}, terminal sets: {}, secrecy: {})'.format(
            len(self.nodes), len(self.edges), self.ell, self.secrecy_mode.value)

    def __str__(self):
        return self.__repr__()

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return (self.nodes == other.nodes and self.edges == other.edges
                and self.source == other.source
                and self.terminal_sets == other.terminal_sets
                and self.secrecy_mode == other.secrecy_mode
                and self._custom_secrecy == other._custom_secrecy)

    def __hash__(self):
        return hash((self.nodes, self.edges, self.source, self.terminal_sets))

    @property
    def ell(self):
        """ Number of terminal sets """
        return len(self.terminal_sets)

    @property
    def set_indices(self):
        """ The 1 based terminal set indices """
        return range(1, self.ell + 1)

    @cached_property
    def terminals(self):
        """ All terminal nodes """
        return frozenset().union(*self.terminal_sets)

    @cached_property
    def graph(self):
        """ A networkx MultiDiGraph view of this instance (edge key = edge id) """
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(self.nodes)
        for edge in self.edges:
            graph.add_edge(edge.tail, edge.head, key=edge.id)
        return graph

    @cached_property
    def edge_order(self):
        """ The fixed topological EdgeOrder of this instance """
        return topological_edge_order(self)

    def edge(self, edge_id):
        """ Returns the Edge with this id

        :raises InstanceError: on unknown ids
        """
        try:
            return self._edge_map[edge_id]
        except KeyError:
            raise InstanceError('Unknown edge {!r}'.format(edge_id)) from None

    def has_edge(self, edge_id):
        return edge_id in self._edge_map

    def in_edges(self, node):
        """ Ids of the edges entering node, ascending """
        self._check_node(node)
        return list(self._in[node])

    def out_edges(self, node):
        """ Ids of the edges leaving node, ascending """
        self._check_node(node)
        return list(self._out[node])

    def terminal_set(self, j):
        """ The terminal set D_j (1 based) """
        self._check_set_index(j)
        return self.terminal_sets[j - 1]

    def set_index_of(self, node):
        """ The 1 based index of the terminal set containing node, or None """
        for j, d_set in enumerate(self.terminal_sets, start=1):
            if node in d_set:
                return j
        return None

    def secrecy_sets(self, j):
        """ The secrecy collection B_j as a list of edge-id frozensets """
        self._check_set_index(j)
        if self.secrecy_mode is SecrecyMode.NONE:
            return []
        if self.secrecy_mode is SecrecyMode.CUSTOM:
            return list(self._custom_secrecy[j - 1])
        return [frozenset(self._in[v]) for v in eavesdropper_nodes(self, j)]

    def _check_node(self, node):
        if node not in self.nodes:
            raise InstanceError('Unknown node {!r}'.format(node))

    def _check_set_index(self, j):
        if not isinstance(j, int) or not 1 <= j <= self.ell:
            raise InstanceError('Terminal set index must be in 1..{}, got {!r}'.format(self.ell, j))

    def replace(self, **kwargs):
        """ Returns a new instance with some attributes replaced """
        data = {
            'nodes': self.nodes,
            'edges': self.edges,
            'source': self.source,
            'terminal_sets': self.terminal_sets,
            'secrecy_mode': self.secrecy_mode,
            'secrecy_sets': self._custom_secrecy if self.secrecy_mode is SecrecyMode.CUSTOM else None,
            'aliases': self.aliases,
        }
        data.update(kwargs)
        nodes = data.pop('nodes')
        edges = data.pop('edges')
        source = data.pop('source')
        terminal_sets = data.pop('terminal_sets')
        return Instance(nodes, edges, source, terminal_sets, **data)

    @classmethod
    def from_dict(cls, data):
        """ Creates an Instance from its json document

        :param dict data: {"nodes", "edges", "source", "terminal_sets",
         "secrecy_mode", "secrecy_sets"}
        :raises InstanceError: on malformed documents
        """
        try:
            nodes = data['nodes']
            edges = [(edge['id'], edge['tail'], edge['head']) for edge in data['edges']]
            source = data['source']
            terminal_sets = data['terminal_sets']
        except (KeyError, TypeError) as e:
            raise InstanceError('Malformed instance document: missing {}'.format(e)) from None
        mode = SecrecyMode.from_value(data.get('secrecy_mode', 'none'))
        if mode is None:
            raise InstanceError('Unknown secrecy_mode {!r}'.format(data.get('secrecy_mode')))
        secrecy_sets = data.get('secrecy_sets')
        if mode is not SecrecyMode.CUSTOM:
            if mode is SecrecyMode.NODE_EAVESDROPPER and secrecy_sets:
                log.debug('Ignoring stored secrecy_sets: they are derived in node_eavesdropper mode')
            if mode is SecrecyMode.NODE_EAVESDROPPER:
                secrecy_sets = None
        aliases = {alias: original for alias, original in data.get('aliases', [])}
        return cls(nodes, edges, source, terminal_sets, secrecy_mode=mode,
                   secrecy_sets=secrecy_sets, aliases=aliases)

    def to_dict(self):
        """ Returns the json document of this instance """
        data = {
            'nodes': sorted(self.nodes, key=node_key),
            'edges': [{'id': e.id, 'tail': e.tail, 'head': e.head} for e in self.edges],
            'source': self.source,
            'terminal_sets': [sorted(d_set, key=node_key) for d_set in self.terminal_sets],
            'secrecy_mode': self.secrecy_mode.value,
            'secrecy_sets': [[sorted(beta) for beta in self.secrecy_sets(j)]
                             for j in self.set_indices],
        }
        if self.aliases:
            data['aliases'] = sorted(([k, v] for k, v in self.aliases.items()),
                                     key=lambda pair: node_key(pair[0]))
        return data


class EdgeOrder:
    """ A total topological order on the edges of an instance """

    def __init__(self, edges):
        """
        :param list edges: edge ids in order
        """
        self.edges = tuple(edges)
        self.rank = {edge_id: position for position, edge_id in enumerate(self.edges)}

    def __iter__(self):
        return iter(self.edges)

    def __len__(self):
        return len(self.edges)

    def __contains__(self, edge_id):
        return edge_id in self.rank

    def __repr__(self):
        return 'EdgeOrder({})'.format(list(self.edges))

    def sorted(self, edge_ids):
        """ Returns edge_ids sorted by this order """
        return sorted(edge_ids, key=self.rank.__getitem__)


def topological_node_order(instance):
    """ Kahn ordering of the nodes, smallest node id first on ties

    :raises InstanceError: if the graph has a cycle
    """
    simple = nx.DiGraph(instance.graph)
    try:
        return list(nx.lexicographical_topological_sort(simple, key=node_key))
    except nx.NetworkXUnfeasible:
        raise InstanceError('The graph has a cycle') from None


def topological_edge_order(instance):
    """ Edges sorted by (topological rank of the tail, edge id)

    :rtype: EdgeOrder
    """
    node_rank = {node: rank for rank, node in enumerate(topological_node_order(instance))}
    ordered = sorted(instance.edges, key=lambda e: (node_rank[e.tail], e.id))
    return EdgeOrder(e.id for e in ordered)


def reachable(instance, removed_edges=()):
    """ Nodes and edges reachable from the source avoiding removed_edges

    :param removed_edges: edge ids to remove
    :return: (frozenset of nodes, frozenset of edge ids)
    """
    removed = frozenset(removed_edges)
    for edge_id in removed:
        instance.edge(edge_id)  # raises on unknown ids
    hidden = [(e.tail, e.head, e.id) for e in map(instance.edge, removed)]
    view = nx.restricted_view(instance.graph, [], hidden)
    nodes = frozenset(nx.descendants(view, instance.source)) | {instance.source}
    edges = frozenset(e.id for e in instance.edges
                      if e.tail in nodes and e.id not in removed)
    return nodes, edges


def separating_edge(instance, d):
    """ The separating edge of minimum topological order for node d

    :return: an edge id or None when no single edge separates d from the source
    :raises InstanceError: if d is the source or is unreachable
    """
    if d == instance.source:
        raise InstanceError('The source can not be separated from itself')
    nodes, _ = reachable(instance)
    if d not in nodes:
        raise InstanceError('Node {!r} is not reachable from the source'.format(d))
    for edge_id in instance.edge_order:
        if instance.edge(edge_id).tail not in nodes:
            continue
        after, _ = reachable(instance, {edge_id})
        if d not in after:
            return edge_id
    return None


def cut_set(instance, j):
    """ The cut set C_j: separating edges of the terminals in D_j

    :rtype: frozenset
    """
    cut = set()
    for d in sorted(instance.terminal_set(j), key=node_key):
        edge_id = separating_edge(instance, d)
        if edge_id is not None:
            cut.add(edge_id)
    return frozenset(cut)


def _tight(instance, removed):
    _, before = reachable(instance)
    _, after = reachable(instance, removed)
    return frozenset(before - after - frozenset(removed))


def tight_set_edge(instance, edge_id):
    """ T_e: edges disconnected from the source by removing edge e """
    instance.edge(edge_id)
    return _tight(instance, {edge_id})


def tight_set_cut(instance, j):
    """ T_j: edges disconnected from the source by removing C_j """
    return _tight(instance, cut_set(instance, j))


def _check_target(instance, v):
    if v not in instance.nodes:
        raise InstanceError('Unknown node {!r}'.format(v))
    if v == instance.source:
        raise InstanceError('Disjoint paths are counted towards nodes other than the source')


def count_edge_disjoint_paths(instance, v):
    """ Max number of edge-disjoint source to v paths (unit edges) """
    _check_target(instance, v)
    flow_graph = nx.DiGraph()
    flow_graph.add_nodes_from(instance.nodes)
    for edge in instance.edges:
        if flow_graph.has_edge(edge.tail, edge.head):
            flow_graph[edge.tail][edge.head]['capacity'] += 1
        else:
            flow_graph.add_edge(edge.tail, edge.head, capacity=1)
    return int(nx.maximum_flow_value(flow_graph, instance.source, v))


def count_vertex_disjoint_paths(instance, v):
    """ Max number of internally vertex-disjoint source to v paths.

    Every node other than the source and v is split into an in and an out
    half joined by a unit capacity edge. Parallel edges between the same pair
    of nodes describe a single vertex path.
    """
    _check_target(instance, v)
    source = instance.source

    def out_half(node):
        return node if node in (source, v) else (node, 'out')

    def in_half(node):
        return node if node in (source, v) else (node, 'in')

    flow_graph = nx.DiGraph()
    for node in instance.nodes:
        if node not in (source, v):
            flow_graph.add_edge(in_half(node), out_half(node), capacity=1)
    flow_graph.add_nodes_from([source, v])
    for edge in instance.edges:
        flow_graph.add_edge(out_half(edge.tail), in_half(edge.head), capacity=1)
    return int(nx.maximum_flow_value(flow_graph, source, v))


def eavesdropper_nodes(instance, j):
    """ Nodes v not in D_j or {s} whose In(v) must not reveal K_j.

    Relays left behind by normalize_terminals stand for a terminal of D_j
    and are not eavesdroppers for K_j.
    """
    own = instance.terminal_set(j)
    relays = {instance.aliases[d] for d in own if d in instance.aliases}
    excluded = own | relays | {instance.source}
    return sorted((v for v in instance.nodes if v not in excluded), key=node_key)


def node_eavesdropper_sets(instance, j):
    """ B_j of the node eavesdropper model: [In(v) for every eavesdropper v] """
    return [frozenset(instance.in_edges(v)) for v in eavesdropper_nodes(instance, j)]


def _fresh_node(instance, base, taken):
    candidate = "{}'".format(base)
    while candidate in instance.nodes or candidate in taken:
        candidate = "{}'".format(candidate)
    return candidate


def normalize_terminals(instance):
    """ Gives every terminal a single incoming edge.

    Each terminal d with two or more incoming edges is replaced, in its
    terminal set, by a new node d' fed by the single new edge (d, d').
    Already normalized instances are returned unchanged.
    """
    to_split = [d for d in sorted(instance.terminals, key=node_key)
                if len(instance.in_edges(d)) >= 2]
    if not to_split:
        return instance

    nodes = set(instance.nodes)
    edges = list(instance.edges)
    next_id = max((e.id for e in edges), default=-1) + 1
    renamed = {}
    aliases = dict(instance.aliases)
    for d in to_split:
        new = _fresh_node(instance, d, nodes)
        nodes.add(new)
        edges.append(Edge(next_id, d, new))
        log.debug('Terminal {!r} split: added {!r} and edge {}'.format(d, new, next_id))
        next_id += 1
        renamed[d] = new
        aliases[new] = aliases.pop(d, d)

    terminal_sets = [[renamed.get(d, d) for d in d_set] for d_set in instance.terminal_sets]
    return instance.replace(nodes=nodes, edges=edges, terminal_sets=terminal_sets,
                            aliases=aliases)


def prune_unreachable(instance):
    """ Removes the nodes and edges not reachable from the source

    :raises InfeasibleInstanceError: if a terminal is not reachable
    """
    nodes, edges = reachable(instance)
    if len(nodes) == len(instance.nodes):
        return instance
    lost = sorted(instance.terminals - nodes, key=node_key)
    if lost:
        raise InfeasibleInstanceError('Terminals not reachable from the source: {}'.format(lost))
    log.debug('Pruned {} unreachable nodes'.format(len(instance.nodes) - len(nodes)))
    kwargs = {}
    if instance.secrecy_mode is SecrecyMode.CUSTOM:
        kwargs['secrecy_sets'] = [[beta & edges for beta in instance.secrecy_sets(j)]
                                  for j in instance.set_indices]
    aliases = {k: v for k, v in instance.aliases.items() if k in nodes}
    return instance.replace(nodes=nodes,
                            edges=[e for e in instance.edges if e.id in edges],
                            aliases=aliases, **kwargs)


def load_instance(path):
    """ Reads an instance json file

    :raises InstanceError: on missing, malformed or invalid files
    """
    try:
        document = load_json(path)
    except ValueError as e:
        raise InstanceError(str(e)) from None
    return Instance.from_dict(document)


def save_instance(instance, path):
    """ Writes an instance json file

    :return bool: Success / Failure
    """
    return save_json(instance.to_dict(), path)
