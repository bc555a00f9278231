"""
Multiple key-cast without secrecy constraints.

An instance has a rate 1 scalar linear solution iff, for every pair of
terminal sets i != j, every terminal of D_i stays reachable from the source
once the cut set C_j is removed. Codes are built by a two stage edge
coloring: an edge colored ``alpha`` carries ``a + alpha * b``.
"""
import logging

from .field import choose_field
from .graph import (InfeasibleInstanceError, InstanceError, cut_set, normalize_terminals,
                    prune_unreachable, reachable, tight_set_cut, tight_set_edge)
from .lincode import (EnumerationCapError, LinearCode, decodable_space, in_span, rank,
                      validate_local_computability, verify_code)
from .utils import Report, Stage, get_max_enumeration, node_key

log = logging.getLogger(__name__)

KEYCAST_BASIS = ('a', 'b')


class InvariantError(RuntimeError):
    """ A property the constructions rely on did not hold """
    pass


class Feasibility:
    """ Verdict of check_feasibility. Truthy when feasible """

    def __init__(self, cut_sets, witness=None):
        """
        :param dict cut_sets: j -> C_j
        :param tuple witness: (i, j, d): d in D_i is cut off by C_j
        """
        self.cut_sets = cut_sets
        self.witness = witness

    @property
    def feasible(self):
        return self.witness is None

    def __bool__(self):
        return self.feasible

    def __repr__(self):
        if self.feasible:
            return 'Feasible'
        i, j, d = self.witness
        return 'Infeasible: terminal {!r} of D_{} is cut off by C_{}'.format(d, i, j)


def check_feasibility(instance):
    """ The rate 1 key-cast feasibility predicate.

    Terminal sets j are scanned in ascending order, then i, then the
    terminals of D_i by node id; the first terminal cut off gives the witness.

    :param Instance instance: a pruned and normalized instance
    :rtype: Feasibility
    """
    cut_sets = {j: cut_set(instance, j) for j in instance.set_indices}
    for j in instance.set_indices:
        nodes, _ = reachable(instance, cut_sets[j])
        for i in instance.set_indices:
            if i == j:
                continue
            for d in sorted(instance.terminal_set(i), key=node_key):
                if d not in nodes:
                    log.info('Infeasible: {!r} of D_{} is cut off by C_{}'.format(d, i, j))
                    return Feasibility(cut_sets, witness=(i, j, d))
    log.debug('Feasible: cut sets {}'.format(cut_sets))
    return Feasibility(cut_sets)


class EdgeColoring:
    """ Colors of the edges, the stage that set them and the second stage
    colors alpha_j of the terminal sets """

    def __init__(self):
        self.color = {}
        self.stage = {}
        self.second_stage_colors = {}
        self.counter = 0
        self.tight_sets = {}  # j -> T_j, recorded by the second stage

    def __repr__(self):
        return 'EdgeColoring(edges: {}, colors: {})'.format(len(self.color), self.counter)

    def fresh(self):
        self.counter += 1
        return self.counter

    def paint(self, edge_id, color, stage):
        self.color[edge_id] = color
        self.stage[edge_id] = stage

    @property
    def num_colors(self):
        """ Every color ever allocated (the largest color) """
        return self.counter

    def copy(self):
        other = EdgeColoring()
        other.color = dict(self.color)
        other.stage = dict(self.stage)
        other.second_stage_colors = dict(self.second_stage_colors)
        other.counter = self.counter
        other.tight_sets = dict(self.tight_sets)
        return other

    def to_dict(self):
        return {
            'colors': {str(e): c for e, c in sorted(self.color.items())},
            'stages': {str(e): s.value for e, s in sorted(self.stage.items())},
            'second_stage_colors': {str(j): c for j, c in sorted(self.second_stage_colors.items())},
        }


def _partial_code(instance, coloring):
    field = choose_field(len(instance.edges) + instance.ell)
    edges = {e: (1, color) for e, color in coloring.color.items()}
    return LinearCode(KEYCAST_BASIS, field, edges, {})


def _check_partial(instance, coloring, step):
    result = validate_local_computability(instance, _partial_code(instance, coloring), partial=True)
    if not result:
        raise InvariantError('Partial coloring invalid after {}: {!r}'.format(step, result))


def first_stage_coloring(instance, *, check_invariants=False):
    """ Colors each uncolored edge e (in EdgeOrder) and every edge of T_e
    with the next color.

    :param bool check_invariants: check local computability of the
     partial code after every step
    :raises InvariantError: if an edge of T_e was already colored
    """
    coloring = EdgeColoring()
    for edge_id in instance.edge_order:
        if edge_id in coloring.color:
            continue
        color = coloring.fresh()
        coloring.paint(edge_id, color, Stage.STAGE1)
        for tight in sorted(tight_set_edge(instance, edge_id)):
            if tight in coloring.color:
                raise InvariantError('Edge {} of T_{} is already colored'.format(tight, edge_id))
            coloring.paint(tight, color, Stage.STAGE1)
        log.debug('Stage 1: color {} on edge {} and its tight set'.format(color, edge_id))
        if check_invariants:
            _check_partial(instance, coloring, 'coloring edge {}'.format(edge_id))
    return coloring


def second_stage_coloring(instance, stage1, *, check_invariants=False):
    """ Gives every terminal set j a fresh color alpha_j on C_j and T_j.

    :param EdgeColoring stage1: output of first_stage_coloring
    :return: a new, complete EdgeColoring
    :raises InvariantError: if the tight sets T_j overlap or two cut edges
     share a first stage color (the instance was not feasible)
    """
    coloring = stage1.copy()
    cut_sets = {j: cut_set(instance, j) for j in instance.set_indices}
    tight_sets = {j: tight_set_cut(instance, j) for j in instance.set_indices}

    claimed = {}
    for j in instance.set_indices:
        for edge_id in tight_sets[j] | cut_sets[j]:
            if claimed.setdefault(edge_id, j) != j:
                raise InvariantError('Edge {} belongs to the cut closures of D_{} and D_{}'.format(
                    edge_id, claimed[edge_id], j))

    cut_colors = {}
    for j in instance.set_indices:
        for edge_id in cut_sets[j]:
            color = stage1.color[edge_id]
            if color in cut_colors and cut_colors[color] != edge_id:
                raise InvariantError('Cut edges {} and {} share stage 1 color {}'.format(
                    cut_colors[color], edge_id, color))
            cut_colors[color] = edge_id

    for j in instance.set_indices:
        alpha = coloring.fresh()
        coloring.second_stage_colors[j] = alpha
        coloring.tight_sets[j] = tight_sets[j]
        for edge_id in sorted(cut_sets[j] | tight_sets[j]):
            coloring.paint(edge_id, alpha, Stage.STAGE2)
        log.debug('Stage 2: alpha_{} = {} on {}'.format(j, alpha, sorted(cut_sets[j] | tight_sets[j])))
    if check_invariants:
        _check_partial(instance, coloring, 'second stage')
    return coloring


def build_code(instance, coloring, field=None):
    """ The code of a complete coloring: basis (a, b), an edge of color
    alpha carries (1, alpha) and K_j = a + alpha_j * b

    :param FieldSpec field: defaults to the smallest field holding every color
    :raises InvariantError: if a color does not fit in the field
    """
    field = field or choose_field(coloring.num_colors)
    missing = [e.id for e in instance.edges if e.id not in coloring.color]
    if missing:
        raise InvariantError('Edges without a color: {}'.format(missing))
    for color in set(coloring.color.values()) | set(coloring.second_stage_colors.values()):
        if color >= field.order:
            raise InvariantError('Color {} does not fit in {}'.format(color, field))
    edges = {edge_id: (1, color) for edge_id, color in coloring.color.items()}
    keys = {j: (1, alpha) for j, alpha in coloring.second_stage_colors.items()}
    return LinearCode(KEYCAST_BASIS, field, edges, keys)


class KeycastResult:
    """ Outcome of the key-cast pipeline. Truthy when a verified code was built """

    def __init__(self, instance, normalized=None, feasibility=None, coloring=None,
                 code=None, report=None, reason=None):
        self.instance = instance
        self.normalized = normalized
        self.feasibility = feasibility
        self.coloring = coloring
        self.code = code
        self.report = report or Report(title='keycast')
        self.reason = reason

    @property
    def witness(self):
        return self.feasibility.witness if self.feasibility is not None else None

    @property
    def verified(self):
        return self.code is not None and self.report.is_success

    def __bool__(self):
        return self.verified

    def __repr__(self):
        if self.verified:
            return 'KeycastResult(rate 1, {})'.format(self.code.field)
        return 'KeycastResult(failed: {})'.format(self.reason)


def construct(instance, *, exhaustive=False, check_invariants=False):
    """ Runs prune, normalize, the feasibility check, both coloring stages
    and the verification of the resulting code

    :param bool exhaustive: also cross check every clause with the
     exhaustive oracle
    :rtype: KeycastResult
    :raises InstanceError: if the instance has nonempty secrecy sets
    """
    if any(beta for j in instance.set_indices for beta in instance.secrecy_sets(j)):
        raise InstanceError('The key-cast construction has no secrecy: every secrecy set must be empty')
    try:
        pruned = prune_unreachable(instance)
    except InfeasibleInstanceError as e:
        log.info('Key-cast infeasible: {}'.format(e))
        return KeycastResult(instance, reason=str(e))
    normalized = normalize_terminals(pruned)

    feasibility = check_feasibility(normalized)
    if not feasibility:
        return KeycastResult(instance, normalized, feasibility, reason=repr(feasibility))

    stage1 = first_stage_coloring(normalized, check_invariants=check_invariants)
    coloring = second_stage_coloring(normalized, stage1, check_invariants=check_invariants)
    code = build_code(normalized, coloring)

    report = verify_code(normalized, code, exhaustive=exhaustive, title='keycast')
    report['colors'] = coloring.num_colors
    report['keys'] = {j: list(code.keys[j]) for j in sorted(code.keys)}
    result = KeycastResult(instance, normalized, feasibility, coloring, code, report)
    if result.verified:
        log.info('Key-cast code built over {} with {} colors'.format(code.field, coloring.num_colors))
    else:
        result.reason = repr(report.first_failure)
        log.info('Key-cast code failed verification: {}'.format(result.reason))
    return result


def _identity(size):
    return [tuple(1 if i == j else 0 for j in range(size)) for i in range(size)]


def find_linear_keycast(instance, field, *, max_codes=None):
    """ Exhaustive search for a rate 1 scalar linear key-cast.

    The source edges carry independent symbols; every other edge carries
    some vector of the span of its tail's incoming vectors. For every such
    code, a nonzero key decodable by all of D_j is searched for every j with
    pairwise independent keys.

    :param FieldSpec field: field to search over
    :param int max_codes: cap on the number of codes (default KEYCAST_MAX_ENUM)
    :return: the first LinearCode found or None
    :raises EnumerationCapError: if the cap is exceeded
    """
    instance = prune_unreachable(instance)
    cap = max_codes or get_max_enumeration()
    source_edges = instance.out_edges(instance.source)
    basis = ['x{}'.format(n) for n in range(len(source_edges))]
    assignment = dict(zip(source_edges, _identity(len(source_edges))))
    order = [e for e in instance.edge_order if e not in assignment]
    spans = {}
    explored = 0

    def span_of(vectors):
        key = tuple(sorted(set(vectors)))
        if key not in spans:
            spans[key] = sorted(decodable_space(list(key), field))
        return spans[key]

    def choose_keys(j, chosen):
        if j > instance.ell:
            return dict(chosen)
        d_set = sorted(instance.terminal_set(j), key=node_key)
        first = [assignment[e] for e in instance.in_edges(d_set[0])]
        for key in span_of(first):
            if not any(key):
                continue
            if not all(in_span(key, [assignment[e] for e in instance.in_edges(d)], field)
                       for d in d_set[1:]):
                continue
            if any(rank([key, other], field) < 2 for other in chosen.values()):
                continue
            chosen[j] = key
            found = choose_keys(j + 1, chosen)
            if found:
                return found
            del chosen[j]
        return None

    def search(position):
        nonlocal explored
        if position == len(order):
            explored += 1
            if explored > cap:
                raise EnumerationCapError('More than {} codes to enumerate'.format(cap))
            return choose_keys(1, {})
        edge_id = order[position]
        tail = instance.edge(edge_id).tail
        inputs = [assignment[e] for e in instance.in_edges(tail)]
        for vector in span_of(inputs):
            assignment[edge_id] = vector
            keys = search(position + 1)
            if keys:
                return keys
        del assignment[edge_id]
        return None

    keys = search(0)
    log.info('Exhaustive key-cast search over {}: {} codes, {}'.format(
        field, explored, 'found' if keys else 'none found'))
    if not keys:
        return None
    return LinearCode(basis, field, dict(assignment), keys)
