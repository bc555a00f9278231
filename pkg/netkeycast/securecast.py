"""
Secure multiple key-cast against an eavesdropper controlling one node.

Nodes are colored in topological order. Every node u ends up knowing the
pair ``s + c_u a`` and ``a + c_u b``; terminal set D_i decodes
``K_i = s + c_{d_i} a`` and a node of another color learns nothing about it.
"""
import logging

from .field import choose_field
from .graph import (InstanceError, count_edge_disjoint_paths, count_vertex_disjoint_paths,
                    prune_unreachable, topological_node_order)
from .keycast import InvariantError
from .lincode import LinearCode, rank, verify_code
from .utils import CheckResult, Report, SecrecyMode, VertexKind, node_key, verification

log = logging.getLogger(__name__)

SECURE_BASIS = ('s', 'a', 'b')
SOURCE_COLOR = 1


class ConditionError(ValueError):
    pass


class Conditions:
    """ Verdict of check_conditions. Truthy when every node qualifies """

    def __init__(self, witness=None, reason=None):
        self.witness = witness
        self.reason = reason

    @property
    def passed(self):
        return self.witness is None

    def __bool__(self):
        return self.passed

    def __repr__(self):
        return 'Conditions hold' if self.passed else 'Conditions fail at {!r}: {}'.format(
            self.witness, self.reason)


def check_conditions(instance):
    """ Every terminal has two vertex-disjoint paths from the source and every
    other node two edge-disjoint paths.

    :rtype: Conditions
    """
    for node in sorted(instance.nodes, key=node_key):
        if node == instance.source:
            continue
        if node in instance.terminals:
            paths = count_vertex_disjoint_paths(instance, node)
            if paths < 2:
                return Conditions(node, 'terminal with {} vertex-disjoint path(s)'.format(paths))
        else:
            paths = count_edge_disjoint_paths(instance, node)
            if paths < 2:
                return Conditions(node, 'node with {} edge-disjoint path(s)'.format(paths))
    return Conditions()


class VertexColoring:

    def __init__(self):
        self.color = {}
        self.kind = {}
        self.representative = {}
        self.counter = 0

    def __repr__(self):
        return 'VertexColoring(nodes: {}, colors: {})'.format(len(self.color), self.counter)

    def fresh(self):
        self.counter += 1
        return self.counter

    @property
    def num_colors(self):
        return self.counter

    def newly_colored(self):
        return sorted((v for v, kind in self.kind.items() if kind is VertexKind.NEWLY_COLORED),
                      key=node_key)

    def to_dict(self):
        return {
            'colors': {str(v): c for v, c in sorted(self.color.items(), key=lambda i: node_key(i[0]))},
            'kinds': {str(v): k.value for v, k in sorted(self.kind.items(), key=lambda i: node_key(i[0]))},
            'representatives': {str(j): d for j, d in sorted(self.representative.items())},
        }


def vertex_coloring(instance, *, enforce_conditions=True):
    """ Colors the nodes in topological order.

    The source has color 1. A node fed only by the source gets a fresh color
    and preserves it; a node with two in-neighbors of different colors gets
    a fresh color (newly colored); any other node takes the color of its
    in-neighbors. Finally every terminal takes the color of the lowest
    terminal of its set.

    :param bool enforce_conditions: raise if check_conditions fails
    :raises ConditionError: if the conditions do not hold
    """
    if enforce_conditions:
        conditions = check_conditions(instance)
        if not conditions:
            raise ConditionError(repr(conditions))
    coloring = VertexColoring()
    source = instance.source
    coloring.counter = SOURCE_COLOR
    coloring.color[source] = SOURCE_COLOR
    for node in topological_node_order(instance):
        if node == source:
            continue
        tails = {instance.edge(e).tail for e in instance.in_edges(node)}
        if not tails:
            raise InstanceError('Node {!r} is not reachable from the source'.format(node))
        colors = {coloring.color[v] for v in tails}
        if tails == {source}:
            coloring.color[node] = coloring.fresh()
            coloring.kind[node] = VertexKind.COLOR_PRESERVING
        elif len(colors) > 1:
            coloring.color[node] = coloring.fresh()
            coloring.kind[node] = VertexKind.NEWLY_COLORED
        else:
            coloring.color[node] = colors.pop()
            coloring.kind[node] = VertexKind.COLOR_PRESERVING
        log.debug('Node {!r}: color {} ({})'.format(node, coloring.color[node], coloring.kind[node].value))

    for j in instance.set_indices:
        d_set = sorted(instance.terminal_set(j), key=node_key)
        representative = d_set[0]
        coloring.representative[j] = representative
        for d in d_set[1:]:
            coloring.color[d] = coloring.color[representative]
    return coloring


def classify_oracle(instance, v):
    """ True if v has two internally vertex-disjoint paths from the source """
    return count_vertex_disjoint_paths(instance, v) >= 2


def node_messages(coloring, node):
    """ The pair (s + c a, a + c b) known by node """
    color = coloring.color[node]
    return (1, color, 0), (0, 1, color)


def _forward(field, tail_color, color):
    """ (s + c_v a) + c_u (a + c_v b) """
    return 1, field.add(tail_color, color), field.mul(tail_color, color)


def build_secure_code(instance, coloring, field=None):
    """ The secret sharing code of a vertex coloring over the basis (s, a, b).

    A newly colored node u receives ``(s + c_v a) + c_u (a + c_v b)`` from two
    in-neighbors of different colors. A color preserving node receives
    ``s + c_u a`` and ``a + c_u b`` on its first two incoming edges. Any other
    incoming edge carries the zero vector. ``K_i = s + c_{d_i} a``.

    :raises InvariantError: if a node lacks the required incoming edges
    """
    field = field or choose_field(coloring.num_colors)
    if coloring.num_colors >= field.order:
        raise InvariantError('{} colors do not fit in {}'.format(coloring.num_colors, field))
    source = instance.source
    order = instance.edge_order
    edges = {}
    for node in topological_node_order(instance):
        if node == source:
            continue
        in_edges = order.sorted(instance.in_edges(node))
        color = coloring.color[node]
        for edge_id in in_edges:
            edges[edge_id] = (0, 0, 0)
        if coloring.kind[node] is VertexKind.NEWLY_COLORED:
            first = in_edges[0]
            first_color = coloring.color[instance.edge(first).tail]
            second = next((e for e in in_edges[1:]
                           if coloring.color[instance.edge(e).tail] != first_color), None)
            if second is None:
                raise InvariantError('Newly colored node {!r} has one in-neighbor color'.format(node))
            for edge_id in (first, second):
                tail_color = coloring.color[instance.edge(edge_id).tail]
                edges[edge_id] = _forward(field, tail_color, color)
        else:
            if len(in_edges) < 2:
                raise InvariantError('Color preserving node {!r} has a single incoming edge'.format(node))
            edges[in_edges[0]], edges[in_edges[1]] = node_messages(coloring, node)
    keys = {j: (1, coloring.color[d], 0) for j, d in coloring.representative.items()}
    return LinearCode(SECURE_BASIS, field, edges, keys)


@verification
def check_node_messages(instance, code, coloring):
    """ Every node's incoming messages span exactly its pair (s + c a, a + c b) """
    results = []
    for node in sorted(instance.nodes, key=node_key):
        if node == instance.source:
            continue
        received = code.messages(instance.in_edges(node))
        pair = list(node_messages(coloring, node))
        passed = rank(received, code.field) == 2 and rank(received + pair, code.field) == 2
        results.append(CheckResult('node_messages', passed, subject=node,
                                   detail='' if passed else 'incoming span differs from the node pair'))
    return results


def verify_secure(instance, code, *, exhaustive=False):
    """ Decoding, pairwise independence and secrecy against every single
    eavesdropping node

    :raises ConditionError: if the instance is not in node eavesdropper mode
    """
    if instance.secrecy_mode is not SecrecyMode.NODE_EAVESDROPPER:
        raise ConditionError('Secure verification needs secrecy_mode "node_eavesdropper"')
    return verify_code(instance, code, exhaustive=exhaustive, title='securecast')


class SecureResult:
    """ Outcome of the secure pipeline. Truthy when a verified code was built """

    def __init__(self, instance, conditions=None, coloring=None, code=None, report=None,
                 reason=None):
        self.instance = instance
        self.conditions = conditions
        self.coloring = coloring
        self.code = code
        self.report = report or Report(title='securecast')
        self.reason = reason

    @property
    def witness(self):
        return self.conditions.witness if self.conditions is not None else None

    @property
    def verified(self):
        return self.code is not None and self.report.is_success

    def __bool__(self):
        return self.verified

    def __repr__(self):
        if self.verified:
            return 'SecureResult(rate 1, {})'.format(self.code.field)
        return 'SecureResult(failed: {})'.format(self.reason)


def construct(instance, *, exhaustive=False):
    """ Prunes, checks the conditions, colors, builds and verifies

    :rtype: SecureResult
    :raises InstanceError: if the instance is not in node eavesdropper mode
    """
    if instance.secrecy_mode is not SecrecyMode.NODE_EAVESDROPPER:
        raise InstanceError('The secure construction needs secrecy_mode "node_eavesdropper"')
    try:
        pruned = prune_unreachable(instance)
    except InstanceError as e:
        log.info('Secure key-cast infeasible: {}'.format(e))
        return SecureResult(instance, reason=str(e))
    conditions = check_conditions(pruned)
    if not conditions:
        log.info(repr(conditions))
        return SecureResult(pruned, conditions, reason=repr(conditions))

    coloring = vertex_coloring(pruned, enforce_conditions=False)
    code = build_secure_code(pruned, coloring)
    report = verify_secure(pruned, code, exhaustive=exhaustive)
    report.add(check_node_messages(pruned, code, coloring))
    report['colors'] = coloring.num_colors
    report['keys'] = {j: list(code.keys[j]) for j in sorted(code.keys)}
    result = SecureResult(pruned, conditions, coloring, code, report)
    if result.verified:
        log.info('Secure code built over {} with {} colors'.format(code.field, coloring.num_colors))
    else:
        result.reason = repr(report.first_failure)
        log.info('Secure code failed verification: {}'.format(result.reason))
    return result
