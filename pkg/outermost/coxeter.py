"""
Coxeter diagrams of acute-angled polyhedra: elliptic and parabolic subdiagrams,
finite-volume and compactness verdicts
"""
import dataclasses
import enum
import itertools
import logging
import math

import networkx as nx

from . import errors
from . import hyperbolic as hyp
from .lattice import Root

log = logging.getLogger(__name__)

BAD_NORM = 2


class Kind(enum.Enum):
    ELLIPTIC = 'elliptic'
    PARABOLIC = 'parabolic'
    OTHER = 'other'


class Volume(enum.Enum):
    COMPACT = 'compact'
    FINITE_VOLUME = 'finite volume'
    NOT_FINITE_VOLUME = 'not finite volume'


@dataclasses.dataclass(frozen=True)
class SubdiagramClass:
    """
    kind, rank and the catalog names of the connected components
    """
    kind: Kind
    rank: int
    components: tuple = ()

    def __str__(self):
        return f'{self.kind.value} rank {self.rank}: {" + ".join(self.components) or "empty"}'


#
#
#
def _path_order(graph):
    # vertices of a path graph from one end to the other
    ends = [v for v in graph if graph.degree(v) <= 1]
    out = [min(ends)]
    while len(out) < len(graph):
        out.append(next(u for u in graph[out[-1]] if u not in out[-2:]))
    return out


def _legs(graph, hub):
    legs = []
    for start in graph[hub]:
        weights = [graph[hub][start]['weight']]
        prev, cur = hub, start
        while graph.degree(cur) == 2:
            prev, cur = cur, next(u for u in graph[cur] if u != prev)
            weights.append(graph[prev][cur]['weight'])
        legs.append(weights)
    return sorted(legs, key=len)


def _classify_path(k, weights):
    if k == 2:
        m = weights[0]
        name = {3: 'A2', 4: 'B2', 6: 'G2'}.get(m, f'I2({m})')
        return Kind.ELLIPTIC, name
    odd = [(i, w) for i, w in enumerate(weights) if w != 3]
    if not odd:
        return Kind.ELLIPTIC, f'A{k}'
    ends = (0, len(weights) - 1)
    if len(odd) == 1:
        i, w = odd[0]
        if w == 4 and i in ends:
            return Kind.ELLIPTIC, f'B{k}'
        if w == 4 and k == 4:
            return Kind.ELLIPTIC, 'F4'
        if w == 5 and i in ends and k in (3, 4):
            return Kind.ELLIPTIC, f'H{k}'
        if w == 6 and i in ends and k == 3:
            return Kind.PARABOLIC, '~G2'
        if w == 4 and k == 5 and i in (1, 2):
            return Kind.PARABOLIC, '~F4'
    if len(odd) == 2 and k >= 3 and [i for i, _ in odd] == list(ends) and all(w == 4 for _, w in odd):
        return Kind.PARABOLIC, f'~C{k - 1}'
    return Kind.OTHER, None


def _classify_fork(k, legs):
    lengths = tuple(len(leg) for leg in legs)
    odd = [(n, j, w) for n, leg in enumerate(legs) for j, w in enumerate(leg) if w != 3]
    if not odd:
        if lengths[:2] == (1, 1):
            return Kind.ELLIPTIC, f'D{k}'
        named = {
            (1, 2, 2): (Kind.ELLIPTIC, 'E6'),
            (1, 2, 3): (Kind.ELLIPTIC, 'E7'),
            (1, 2, 4): (Kind.ELLIPTIC, 'E8'),
            (2, 2, 2): (Kind.PARABOLIC, '~E6'),
            (1, 3, 3): (Kind.PARABOLIC, '~E7'),
            (1, 2, 5): (Kind.PARABOLIC, '~E8'),
        }
        return named.get(lengths, (Kind.OTHER, None))
    if len(odd) == 1 and lengths[:2] == (1, 1):
        n, j, w = odd[0]
        if w == 4 and len(legs[n]) == lengths[2] and j == len(legs[n]) - 1:
            return Kind.PARABOLIC, f'~B{k - 1}'
    return Kind.OTHER, None


def classify_component(graph):
    """
    (kind, catalog name) of a connected Coxeter graph; edges carry the order m,
    math.inf for a parallel pair and None for anything else
    """
    k = len(graph)
    if k == 1:
        return Kind.ELLIPTIC, 'A1'
    weights = [w for _, _, w in graph.edges(data='weight')]
    if any(w is None for w in weights):
        return Kind.OTHER, None
    if math.inf in weights:
        return (Kind.PARABOLIC, '~A1') if k == 2 else (Kind.OTHER, None)
    degrees = sorted(d for _, d in graph.degree())
    if len(weights) == k:
        if k >= 3 and degrees[-1] == 2 and all(w == 3 for w in weights):
            return Kind.PARABOLIC, f'~A{k - 1}'
        return Kind.OTHER, None
    if len(weights) != k - 1:
        return Kind.OTHER, None
    if degrees[-1] <= 2:
        order = _path_order(graph)
        return _classify_path(k, [graph[u][v]['weight'] for u, v in zip(order, order[1:])])
    hubs = [v for v, d in graph.degree() if d >= 3]
    if degrees[-1] == 4:
        if k == 5 and all(w == 3 for w in weights):
            return Kind.PARABOLIC, '~D4'
        return Kind.OTHER, None
    if len(hubs) == 1:
        return _classify_fork(k, _legs(graph, hubs[0]))
    if len(hubs) == 2 and all(w == 3 for w in weights):
        leaves = [sum(1 for u in graph[h] if graph.degree(u) == 1) for h in hubs]
        if leaves == [2, 2]:
            return Kind.PARABOLIC, f'~D{k - 1}'
    return Kind.OTHER, None


#
#
#
class CoxeterDiagram:
    """
    Coxeter diagram of the polyhedron bounded by the mirrors of some roots
    >>> d = build_diagram([Root((0, 1, -1, 0), 2), Root((0, 0, 1, -1), 2)], ((2, -1), (-1, 2)))
    >>> classify_subdiagram(d, [0, 1])
    SubdiagramClass(kind=<Kind.ELLIPTIC: 'elliptic'>, rank=2, components=('A2',))
    """
    def __init__(self, roots, gram, dimension):
        self.roots = tuple(roots)
        self.gram = tuple(tuple(row) for row in gram)
        self.dimension = dimension
        self.relations = {}
        self.graph = nx.Graph()
        self.graph.add_nodes_from((i, {'norm': r.norm}) for i, r in enumerate(self.roots))
        for i, j in itertools.combinations(range(len(self.roots)), 2):
            rel = hyp.mirror_relation(self.gram[i][i], self.gram[j][j], self.gram[i][j])
            self.relations[i, j] = rel
            if rel.position is hyp.Position.PARALLEL:
                self.graph.add_edge(i, j, weight=math.inf)
            elif rel.position is hyp.Position.DIVERGENT or rel.order is None:
                self.graph.add_edge(i, j, weight=None)
            elif rel.order != 2:
                self.graph.add_edge(i, j, weight=rel.order)
        self._cache = {}

    def __len__(self):
        return len(self.roots)
    def __repr__(self):
        return f'<{self.__class__.__name__} {len(self)} roots in dimension {self.dimension}>'

    def relation(self, i, j):
        return self.relations[min(i, j), max(i, j)]
    @property
    def norms(self):
        return tuple(r.norm for r in self.roots)
    @property
    def bad(self):
        return tuple(i for i, r in enumerate(self.roots) if r.norm > BAD_NORM)


def build_diagram(roots, gram, dimension=None):
    """
    Diagram of roots (Root instances) with the given Gram matrix
    >>> build_diagram([Root((1, 0), 1), Root((0, 1), 1)], ((1, 0), (0, 1))).graph.number_of_edges()
    0
    """
    roots = tuple(roots)
    if len(gram) != len(roots):
        raise errors.RankMismatch(f'{len(roots)} roots but a Gram matrix of size {len(gram)}')
    for i, j in itertools.combinations(range(len(roots)), 2):
        if gram[i][j] > 0:
            raise errors.NotAcuteAngled(f'roots {i} and {j} have positive product {gram[i][j]}')
    if dimension is None:
        dimension = len(roots[0].vector) - 1 if roots else 0
    return CoxeterDiagram(roots, gram, dimension)


def classify_subdiagram(d, subset):
    key = frozenset(subset)
    if key in d._cache:
        return d._cache[key]
    kinds, names, rank = set(), [], 0
    sub = d.graph.subgraph(key)
    for component in sorted(nx.connected_components(sub), key=min):
        kind, name = classify_component(sub.subgraph(component))
        kinds.add(kind)
        names.append(name)
        rank += len(component) - (kind is Kind.PARABOLIC)
    if not key or kinds == {Kind.ELLIPTIC}:
        out = SubdiagramClass(Kind.ELLIPTIC, rank, tuple(names))
    elif kinds == {Kind.PARABOLIC}:
        out = SubdiagramClass(Kind.PARABOLIC, rank, tuple(names))
    else:
        out = SubdiagramClass(Kind.OTHER, len(key), tuple(n for n in names if n))
    d._cache[key] = out
    return out


def _is_elliptic(d, subset):
    return classify_subdiagram(d, subset).kind is Kind.ELLIPTIC


def _ends(d, edge):
    """
    Vertices and ideal vertices of the polyhedron lying on the edge given by
    an elliptic subdiagram of rank n-1
    """
    n = d.dimension
    rest = [v for v in range(len(d)) if v not in edge]
    for v in rest:
        cls = classify_subdiagram(d, edge + (v,))
        if cls.kind is Kind.ELLIPTIC or (cls.kind is Kind.PARABOLIC and cls.rank == n - 1):
            yield edge + (v,), cls.kind
    # parabolic ends with several components add one vertex to each
    near = []
    for v in rest:
        rels = [d.relation(v, s) for s in edge]
        if any(r.position is hyp.Position.DIVERGENT or not r.is_coxeter for r in rels):
            continue
        if any(d.graph.has_edge(v, s) for s in edge):
            near.append(v)
    for r in range(2, n):
        for extra in itertools.combinations(near, r):
            if any(d.graph.has_edge(u, v) for u, v in itertools.combinations(extra, 2)):
                continue
            cls = classify_subdiagram(d, edge + extra)
            if cls.kind is Kind.PARABOLIC and cls.rank == n - 1:
                yield edge + extra, cls.kind


def volume_verdict(d):
    """
    COMPACT, FINITE_VOLUME or NOT_FINITE_VOLUME: finite volume iff there is an
    edge and every edge has exactly two ends
    >>> roots = [Root((0, 1, 0), 1), Root((1, 1, 0), 1)]
    >>> volume_verdict(build_diagram(roots, ((1, -1), (-1, 1))))
    <Volume.NOT_FINITE_VOLUME: 'not finite volume'>
    """
    for (i, j), rel in d.relations.items():
        if not rel.is_coxeter:
            raise errors.NotCoxeter(f'roots {i} and {j} meet at a non-Coxeter angle (cos^2 = {rel.cos_sq})')
    n = d.dimension
    edges = 0
    ideal = False
    # The mirrors of pairwise non-obtuse roots bound an acute-angled polyhedron, and
    # in one the mirrors of an elliptic subset always meet in a face of the
    # polyhedron, of codimension the subset's rank. So the elliptic rank-(n-1) subsets
    # are exactly the edges, with no feasibility test. A root whose mirror misses the
    # polyhedron is obtuse to some facet and build_diagram refuses it.
    for edge in itertools.combinations(range(len(d)), n - 1):
        if not _is_elliptic(d, edge):
            continue
        edges += 1
        ends = []
        for end in _ends(d, edge):
            ends.append(end)
            if len(ends) > 2:
                break
        if len(ends) != 2:
            log.debug('edge %s has %d ends', edge, len(ends))
            return Volume.NOT_FINITE_VOLUME
        ideal = ideal or any(kind is Kind.PARABOLIC for _, kind in ends)
    if not edges:
        return Volume.NOT_FINITE_VOLUME
    return Volume.FINITE_VOLUME if ideal else Volume.COMPACT


def bad_group_finite(d):
    """
    Whether the reflections in the bad facets (norm > 2) generate a finite group
    """
    return _is_elliptic(d, d.bad)


def bad_witness(d):
    """
    Indices of bad roots generating an infinite group: the most divergent bad
    pair when there is one, else the whole bad set; None when the group is finite
    """
    if bad_group_finite(d):
        return None
    pairs = [(d.relation(i, j).cos_sq, (i, j)) for i, j in itertools.combinations(d.bad, 2)
             if d.relation(i, j).position is not hyp.Position.INTERSECTING]
    if pairs:
        return max(pairs)[1]
    return d.bad


def to_dot(d, name='coxeter'):
    """
    Graphviz source: bad roots filled black, parallel edges bold, divergent dashed
    >>> print(to_dot(build_diagram([Root((1, 0), 1), Root((1, 1), 2)], ((1, -1), (-1, 2)))))
    graph coxeter {
      0 [label="0:1"];
      1 [label="1:2"];
      0 -- 1 [label="4"];
    }
    """
    lines = [f'graph {name} {{']
    for i, r in enumerate(d.roots):
        style = ', style=filled, fillcolor=black, fontcolor=white' if r.norm > BAD_NORM else ''
        lines.append(f'  {i} [label="{i}:{r.norm}"{style}];')
    for (i, j), rel in sorted(d.relations.items()):
        if rel.position is hyp.Position.PARALLEL:
            lines.append(f'  {i} -- {j} [style=bold];')
        elif rel.position is hyp.Position.DIVERGENT:
            lines.append(f'  {i} -- {j} [style=dashed];')
        elif rel.order in (4, 6):
            lines.append(f'  {i} -- {j} [label="{rel.order}"];')
        elif rel.order == 3:
            lines.append(f'  {i} -- {j};')
    lines.append('}')
    return '\n'.join(lines)
