"""
Instance families: the star used by the non-secure gap, the secure tight
example and its many-set version, a designated infeasible instance and
seeded random DAGs for the property suites.
"""
import logging

import numpy as np

from .graph import Edge, Instance
from .utils import InstanceFamily, SecrecyMode

log = logging.getLogger(__name__)


def _check_ell(ell):
    if isinstance(ell, bool) or not isinstance(ell, int) or ell < 1:
        raise ValueError('The number of terminal sets must be a positive integer, got {!r}'.format(ell))


def gen_fig3(ell):
    """ s -> x over two parallel edges, then x -> d_i for i in 1..ell,
    with the singleton terminal sets D_i = {d_i} """
    _check_ell(ell)
    terminals = ['d{}'.format(i) for i in range(1, ell + 1)]
    edges = [Edge(0, 's', 'x'), Edge(1, 's', 'x')]
    edges += [Edge(2 + n, 'x', d) for n, d in enumerate(terminals)]
    return Instance(['s', 'x'] + terminals, edges, 's', [[d] for d in terminals])


def gen_fig4(ell):
    """ The secure tight topology with ell terminal sets.

    s feeds x and y over two parallel edges each, x and y feed z. Set i has
    the terminals d{i}_1, fed by x and z, and d{i}_2, fed by x and y when i
    is odd and by y and z when i is even. Node eavesdropper secrecy.
    """
    _check_ell(ell)
    edges = [('s', 'x'), ('s', 'x'), ('s', 'y'), ('s', 'y'), ('x', 'z'), ('y', 'z')]
    nodes = ['s', 'x', 'y', 'z']
    terminal_sets = []
    for i in range(1, ell + 1):
        first, second = 'd{}_1'.format(i), 'd{}_2'.format(i)
        nodes += [first, second]
        edges += [('x', first), ('z', first)]
        if i % 2:
            edges += [('x', second), ('y', second)]
        else:
            edges += [('y', second), ('z', second)]
        terminal_sets.append([first, second])
    return Instance(nodes, [Edge(n, tail, head) for n, (tail, head) in enumerate(edges)],
                    's', terminal_sets, secrecy_mode=SecrecyMode.NODE_EAVESDROPPER)


def gen_secure_tight():
    """ Two terminal sets of two terminals over the x, y, z core """
    return gen_fig4(2)


def designated_infeasible_instance():
    """ s => u -> v -> {d1, d2}: both sets hang off the single edge (u, v) """
    edges = [Edge(0, 's', 'u'), Edge(1, 's', 'u'), Edge(2, 'u', 'v'),
             Edge(3, 'v', 'd1'), Edge(4, 'v', 'd2')]
    return Instance(['s', 'u', 'v', 'd1', 'd2'], edges, 's', [['d1'], ['d2']])


def gen_random_dag(seed, nodes=8, edge_prob=0.4, ell=2, terminals_per_set=1, *,
                   parallel_prob=0.3, secrecy_mode=SecrecyMode.NONE):
    """ A seeded random DAG instance.

    Nodes are the integers 0..nodes-1 in topological order, 0 being the
    source. The last ``ell * terminals_per_set`` nodes are the terminals.
    Every node gets an incoming edge from an earlier non-terminal node so
    every terminal is reachable; other forward edges appear with
    ``edge_prob`` and are doubled with ``parallel_prob``.

    :param int seed: seed of the numpy generator
    :rtype: Instance
    """
    _check_ell(ell)
    if terminals_per_set < 1:
        raise ValueError('terminals_per_set must be positive')
    num_terminals = ell * terminals_per_set
    if nodes < num_terminals + 2:
        raise ValueError('{} nodes can not hold a source, a relay and {} terminals'.format(
            nodes, num_terminals))
    if not 0 <= edge_prob <= 1 or not 0 <= parallel_prob <= 1:
        raise ValueError('Probabilities must be in [0, 1]')

    rng = np.random.default_rng(seed)
    relays = nodes - num_terminals
    pairs = []
    for head in range(1, nodes):
        candidates = range(min(head, relays))
        anchor = int(rng.integers(len(candidates)))
        for tail in candidates:
            if tail == anchor or rng.random() < edge_prob:
                pairs.append((tail, head))
                if rng.random() < parallel_prob:
                    pairs.append((tail, head))

    terminals = [int(t) for t in rng.permutation(np.arange(relays, nodes))]
    terminal_sets = [terminals[i * terminals_per_set:(i + 1) * terminals_per_set] for i in range(ell)]
    edges = [Edge(n, tail, head) for n, (tail, head) in enumerate(pairs)]
    log.debug('Random DAG seed {}: {} nodes, {} edges'.format(seed, nodes, len(edges)))
    return Instance(range(nodes), edges, 0, terminal_sets, secrecy_mode=secrecy_mode)


def generate(family, **params):
    """ Dispatches to the generator of an InstanceFamily

    :param InstanceFamily or str family: fig3, fig4, secure_tight, random or infeasible
    :param params: generator parameters (ell, seed, nodes, edge_prob, ...)
    """
    family = InstanceFamily.get(family)
    if family is InstanceFamily.FIG3:
        return gen_fig3(params.get('ell', 2))
    if family is InstanceFamily.FIG4:
        return gen_fig4(params.get('ell', 2))
    if family is InstanceFamily.SECURE_TIGHT:
        return gen_secure_tight()
    if family is InstanceFamily.INFEASIBLE:
        return designated_infeasible_instance()
    return gen_random_dag(params.get('seed', 0), params.get('nodes', 8), params.get('edge_prob', 0.4),
                          params.get('ell', 2), params.get('terminals_per_set', 1),
                          secrecy_mode=params.get('secrecy_mode', SecrecyMode.NONE))
