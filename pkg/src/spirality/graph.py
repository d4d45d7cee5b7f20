"""Decorated JSJ dual graphs and their holonomy in the nonzero rationals.

The graph is the dual multigraph of the almost fiber part of an immersed
subsurface: one vertex per virtual-fiber JSJ subsurface, one edge per JSJ
curve. Each edge end carries a positive integer h (a ratio of covering
degrees of the chosen fibered setup) and each edge carries a sign omega
recording orientation behaviour across the curve. The holonomy of a
directed cycle is the product over traversed edges of h at the entering
end over h at the leaving end, signed by the product of the omegas; it
depends only on the homology class of the cycle. Cycles that stay inside
one vertex cross no JSJ curves, so they contribute an empty product: value
+1, or -1 for each declared orientation-reversing internal loop.

The subsurface is aspiral exactly when every cycle has holonomy +-1, which
by the embedding criterion is equivalent to the surface being virtually
embedded, and in turn to being virtually a leaf of a taut foliation.

Graphs are immutable after validation and all computations here are pure,
so components may be processed in parallel without shared state.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import SpiralityError, error, warning


class InvalidGraph(SpiralityError):
    """Operation requires a graph that passes validation."""


class InvalidCycle(SpiralityError):
    """Cycle steps are not a closed edge path of the graph."""


class NotACovering(SpiralityError):
    """Cover data is not a degree-preserving local bijection on edge ends."""


class VertexKind(Enum):
    HORIZONTAL = "horizontal"
    GEOMETRICALLY_INFINITE = "geometrically_infinite"
    ELEMENTARY_BAND = "elementary_band"


@dataclass(frozen=True)
class Vertex:
    """A virtual-fiber JSJ subsurface of the almost fiber part.

    ``internal_omega_generators`` counts independent orientation-reversing
    loops supported inside the subsurface (crossing no JSJ curves); each
    contributes a holonomy value of -1 on its own.
    """

    id: str
    kind: VertexKind = VertexKind.HORIZONTAL
    orientable: bool = True
    internal_omega_generators: int = 0

    def __post_init__(self):
        if isinstance(self.kind, str):
            object.__setattr__(self, "kind", VertexKind(self.kind))


@dataclass(frozen=True)
class Edge:
    """A JSJ curve, with covering-degree ratios h at both ends and a sign."""

    id: str
    from_vertex: str
    to_vertex: str
    h_ini: int
    h_ter: int
    omega: int = 1


FORWARD = 1
BACKWARD = -1


@dataclass(frozen=True)
class DirectedCycle:
    """A closed edge path: steps (edge id, +1 forward / -1 backward)."""

    steps: tuple

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple((e, d) for e, d in self.steps))

    def reversed(self):
        return DirectedCycle(tuple((e, -d) for e, d in reversed(self.steps)))

    def __mul__(self, other):
        """Concatenation; the caller is responsible for matching basepoints."""
        return DirectedCycle(self.steps + other.steps)

    def __pow__(self, n):
        if n < 0:
            return self.reversed() ** (-n)
        return DirectedCycle(self.steps * n)

    def __str__(self):
        if not self.steps:
            return "(trivial)"
        return "·".join(e if d == FORWARD else "~" + e for e, d in self.steps)


class DecoratedJSJGraph:
    """Immutable decorated multigraph; loops and parallel edges are allowed."""

    def __init__(self, vertices, edges):
        self.vertices = tuple(vertices)
        self.edges = tuple(edges)
        self._vertex_by_id = {v.id: v for v in self.vertices}
        self._edge_by_id = {e.id: e for e in self.edges}

    def vertex(self, vertex_id):
        return self._vertex_by_id[vertex_id]

    def edge(self, edge_id):
        return self._edge_by_id[edge_id]

    def has_vertex(self, vertex_id):
        return vertex_id in self._vertex_by_id

    def __repr__(self):
        return "DecoratedJSJGraph(%d vertices, %d edges)" % (
            len(self.vertices), len(self.edges))


# Diagnostic codes reported by validate().
DANGLING_EDGE = "DanglingEdge"
NON_POSITIVE_H = "NonPositiveH"
NON_INTEGRAL_H = "NonIntegralH"
BAD_OMEGA = "BadOmega"
DUPLICATE_ID = "DuplicateId"
BAD_INTERNAL_GENERATORS = "BadInternalGenerators"
ELEMENTARY_ADJACENCY = "ElementaryAdjacency"
OMEGA_AMBIGUITY = "OmegaAmbiguity"


def _is_integral(h):
    return isinstance(h, int) or getattr(h, "denominator", 1) == 1


def validate(g):
    """Structural diagnostics for a decorated graph.

    Errors make the graph unusable for holonomy computations; warnings flag
    data that is legal but suspicious for an almost fiber part. The empty
    list means the graph is well-formed with nothing to remark.
    """
    out = []
    seen = set()
    for v in g.vertices:
        if v.id in seen:
            out.append(error(DUPLICATE_ID, "duplicate vertex id %r" % v.id))
        seen.add(v.id)
        if v.internal_omega_generators < 0:
            out.append(error(BAD_INTERNAL_GENERATORS,
                             "vertex %r has negative internal generator count" % v.id))
    seen = set()
    for e in g.edges:
        if e.id in seen:
            out.append(error(DUPLICATE_ID, "duplicate edge id %r" % e.id))
        seen.add(e.id)
        for end in (e.from_vertex, e.to_vertex):
            if not g.has_vertex(end):
                out.append(error(DANGLING_EDGE,
                                 "edge %r references missing vertex %r" % (e.id, end)))
        if e.h_ini <= 0 or e.h_ter <= 0:
            out.append(error(NON_POSITIVE_H,
                             "edge %r has non-positive h (%s, %s)" % (e.id, e.h_ini, e.h_ter)))
        elif not (_is_integral(e.h_ini) and _is_integral(e.h_ter)):
            out.append(warning(NON_INTEGRAL_H,
                               "edge %r carries non-integral h (%s, %s), accepted in "
                               "relaxed mode only" % (e.id, e.h_ini, e.h_ter)))
        if e.omega not in (1, -1):
            out.append(error(BAD_OMEGA, "edge %r has omega %r" % (e.id, e.omega)))
        if g.has_vertex(e.from_vertex) and g.has_vertex(e.to_vertex):
            u, v = g.vertex(e.from_vertex), g.vertex(e.to_vertex)
            kinds = {u.kind, v.kind}
            if kinds == {VertexKind.ELEMENTARY_BAND}:
                out.append(warning(ELEMENTARY_ADJACENCY,
                                   "edge %r joins two elementary bands; such pieces "
                                   "cannot be adjacent in a nonelementary manifold" % e.id))
            if VertexKind.ELEMENTARY_BAND in kinds and not (u.orientable and v.orientable):
                out.append(warning(OMEGA_AMBIGUITY,
                                   "edge %r touches an elementary band next to a "
                                   "non-orientable subsurface; omega sign data is taken "
                                   "as given" % e.id))
    return out


def is_valid(g):
    return not any(d.is_error for d in validate(g))


def _require_valid(g):
    problems = [d for d in validate(g) if d.is_error]
    if problems:
        raise InvalidGraph("; ".join(str(d) for d in problems))


def _step_endpoints(g, step):
    edge_id, direction = step
    try:
        e = g.edge(edge_id)
    except KeyError:
        raise InvalidCycle("unknown edge %r" % edge_id)
    if direction == FORWARD:
        return e.from_vertex, e.to_vertex
    if direction == BACKWARD:
        return e.to_vertex, e.from_vertex
    raise InvalidCycle("bad direction %r on edge %r" % (direction, edge_id))


def cycle_spirality(g, cycle):
    """Holonomy of a directed cycle: product of h(entering)/h(leaving), signed.

    Traversing an edge forward enters at the ini end and leaves at the ter
    end; backward traversal swaps them. The empty cycle has value 1.
    """
    value = Fraction(1)
    at = None
    start = None
    for step in cycle.steps:
        s, t = _step_endpoints(g, step)
        if at is None:
            start = s
        elif s != at:
            raise InvalidCycle("steps do not chain at %r (edge %r starts at %r)"
                               % (at, step[0], s))
        at = t
        e = g.edge(step[0])
        if step[1] == FORWARD:
            value *= Fraction(e.h_ini * e.omega, e.h_ter)
        else:
            value *= Fraction(e.h_ter * e.omega, e.h_ini)
    if at is not None and at != start:
        raise InvalidCycle("cycle is not closed: ends at %r, started at %r" % (at, start))
    return value


def spanning_forest(g):
    """Tree edge ids of the deterministic spanning forest (lowest id first)."""
    parent = {v.id: v.id for v in g.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree = []
    for e in sorted(g.edges, key=lambda e: e.id):
        ru, rv = find(e.from_vertex), find(e.to_vertex)
        if ru != rv:
            parent[ru] = rv
            tree.append(e.id)
    return frozenset(tree)


def _check_forest(g, forest):
    forest = frozenset(forest)
    unknown = [e for e in forest if e not in g._edge_by_id]
    if unknown:
        raise ValueError("forest contains unknown edges %r" % unknown)
    parent = {v.id: v.id for v in g.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for eid in sorted(forest):
        e = g.edge(eid)
        ru, rv = find(e.from_vertex), find(e.to_vertex)
        if ru == rv:
            raise ValueError("edge set is not a forest: %r closes a cycle" % eid)
        parent[ru] = rv
    # maximality: no non-tree edge may join two distinct components
    for e in g.edges:
        if e.id not in forest and find(e.from_vertex) != find(e.to_vertex):
            raise ValueError("forest is not spanning: %r joins two components" % e.id)
    return forest


def _parent_steps(g, forest):
    """BFS parent pointers within the forest: vertex -> (step to parent, parent)."""
    adjacency = {v.id: [] for v in g.vertices}
    for eid in sorted(forest):
        e = g.edge(eid)
        adjacency[e.from_vertex].append(((eid, FORWARD), e.to_vertex))
        adjacency[e.to_vertex].append(((eid, BACKWARD), e.from_vertex))
    parents = {}
    for root in (v.id for v in g.vertices):
        if root in parents:
            continue
        parents[root] = None
        queue = [root]
        while queue:
            current = queue.pop(0)
            for (eid, d), other in adjacency[current]:
                if other not in parents:
                    # stored step runs from the child back up to its parent
                    parents[other] = ((eid, -d), current)
                    queue.append(other)
    return parents


def _path_to_root(parents, v):
    steps = []
    while parents[v] is not None:
        step, parent = parents[v]
        steps.append(step)
        v = parent
    return steps


def fundamental_cycle(g, parents, edge):
    """The basis cycle of a non-tree edge: the edge forward, closed up in the tree."""
    up_to = _path_to_root(parents, edge.to_vertex)
    up_from = _path_to_root(parents, edge.from_vertex)
    while up_to and up_from and up_to[-1] == up_from[-1]:
        up_to.pop()
        up_from.pop()
    down_from = [(eid, -d) for eid, d in reversed(up_from)]
    return DirectedCycle(tuple([(edge.id, FORWARD)] + up_to + down_from))


@dataclass(frozen=True)
class SpiralityCharacter:
    """The holonomy character on a fundamental cycle basis.

    ``basis[i]`` is the cycle closing up the non-tree edge ``cycle_edges[i]``
    and ``values[i]`` its holonomy. ``internal_signs`` lists (vertex id, -1)
    once per vertex contributing orientation-reversing internal loops; those
    basis directions always have absolute value 1. Any cycle's value is
    recoverable from its homology decomposition, see evaluate_character().
    """

    basis: tuple
    values: tuple
    cycle_edges: tuple
    internal_signs: tuple

    def all_values(self):
        return tuple(self.values) + tuple(s for _, s in self.internal_signs)


def character(g, forest=None):
    """Compute the spirality character on the fundamental cycles of a forest.

    The forest defaults to the deterministic lowest-edge-id-first choice;
    passing one explicitly is supported so basis independence can be checked.
    Which basis is produced depends on the forest, but aspirality and the
    value on any fixed homology class do not.
    """
    _require_valid(g)
    forest = spanning_forest(g) if forest is None else _check_forest(g, forest)
    parents = _parent_steps(g, forest)
    basis, values, cycle_edges = [], [], []
    for e in sorted(g.edges, key=lambda e: e.id):
        if e.id in forest:
            continue
        cycle = fundamental_cycle(g, parents, e)
        basis.append(cycle)
        values.append(cycle_spirality(g, cycle))
        cycle_edges.append(e.id)
    internal = tuple((v.id, -1) for v in g.vertices if v.internal_omega_generators > 0)
    return SpiralityCharacter(tuple(basis), tuple(values), tuple(cycle_edges), internal)


def evaluate_character(char, cycle):
    """Value of an arbitrary cycle from its decomposition over the basis.

    The coefficient on the basis cycle of a non-tree edge is the signed
    number of times the cycle traverses that edge; tree edges contribute
    nothing in homology.
    """
    counts = {eid: 0 for eid in char.cycle_edges}
    for eid, direction in cycle.steps:
        if eid in counts:
            counts[eid] += direction
    value = Fraction(1)
    for eid, v in zip(char.cycle_edges, char.values):
        value *= v ** counts[eid]
    return value


@dataclass(frozen=True)
class AspiralityResult:
    aspiral: bool
    witness: object = None
    witness_value: object = None


def is_aspiral(g):
    """True iff every basis value is +-1; otherwise carries a witness cycle."""
    char = character(g)
    for cycle, value in zip(char.basis, char.values):
        if value != 1 and value != -1:
            return AspiralityResult(False, cycle, value)
    return AspiralityResult(True)


@dataclass(frozen=True)
class Verdict:
    """Embedding criterion verdict: the three properties are equivalent."""

    aspiral: bool
    virtually_embedded: bool
    virtually_taut_leaf: bool
    vacuous: bool = False
    witness: object = None
    witness_value: object = None


def verdict(g):
    result = is_aspiral(g)
    return Verdict(
        aspiral=result.aspiral,
        virtually_embedded=result.aspiral,
        virtually_taut_leaf=result.aspiral,
        vacuous=not g.vertices,
        witness=result.witness,
        witness_value=result.witness_value,
    )


@dataclass(frozen=True)
class CoverEdge:
    """An edge of the covering graph, lying over ``over`` with matched ends."""

    id: str
    from_vertex: str
    to_vertex: str
    over: str


@dataclass(frozen=True)
class GraphCover:
    """Combinatorial covering data: cover vertices/edges with their projections.

    ``vertex_map`` sends cover vertex ids to base vertex ids; each cover
    edge projects to its ``over`` edge preserving ends (from over from, to
    over to).
    """

    vertex_map: dict
    edges: tuple


def pullback(g, cover):
    """Pull the decorated graph back along a covering; decorations lift unchanged.

    A cycle lifting to a connected degree-d cover wraps d times and its
    value raises to the d-th power. Raises NotACovering when the data fails
    the local bijection on edge ends.
    """
    _require_valid(g)
    for cv, bv in cover.vertex_map.items():
        if not g.has_vertex(bv):
            raise NotACovering("cover vertex %r maps to unknown vertex %r" % (cv, bv))
    base_ends = {v.id: [] for v in g.vertices}
    for e in g.edges:
        base_ends[e.from_vertex].append((e.id, "ini"))
        base_ends[e.to_vertex].append((e.id, "ter"))

    lifted_ends = {cv: [] for cv in cover.vertex_map}
    for ce in cover.edges:
        if ce.over not in g._edge_by_id:
            raise NotACovering("cover edge %r lies over unknown edge %r" % (ce.id, ce.over))
        base = g.edge(ce.over)
        for end, base_end in ((ce.from_vertex, base.from_vertex),
                              (ce.to_vertex, base.to_vertex)):
            if end not in cover.vertex_map:
                raise NotACovering("cover edge %r touches unknown vertex %r" % (ce.id, end))
            if cover.vertex_map[end] != base_end:
                raise NotACovering("cover edge %r does not match endpoints of %r"
                                   % (ce.id, ce.over))
        lifted_ends[ce.from_vertex].append((ce.over, "ini"))
        lifted_ends[ce.to_vertex].append((ce.over, "ter"))

    for cv, bv in cover.vertex_map.items():
        if sorted(lifted_ends[cv]) != sorted(base_ends[bv]):
            raise NotACovering("ends at cover vertex %r do not biject onto ends at %r"
                               % (cv, bv))

    vertices = []
    for cv in cover.vertex_map:
        bv = g.vertex(cover.vertex_map[cv])
        vertices.append(Vertex(cv, bv.kind, bv.orientable, bv.internal_omega_generators))
    edges = []
    for ce in cover.edges:
        base = g.edge(ce.over)
        edges.append(Edge(ce.id, ce.from_vertex, ce.to_vertex,
                          base.h_ini, base.h_ter, base.omega))
    return DecoratedJSJGraph(vertices, edges)


def cyclic_cover(g, shifts, degree):
    """Covering data for the Z/degree cover twisted by integer edge shifts.

    Vertex layers are (v, i); the lift of edge e at layer i ends in layer
    i + shifts.get(e, 0). A single loop with shift 1 yields the connected
    degree-d cover that wraps d times.
    """
    if degree < 1:
        raise ValueError("degree must be positive")
    vertex_map = {}
    for v in g.vertices:
        for i in range(degree):
            vertex_map["%s@%d" % (v.id, i)] = v.id
    edges = []
    for e in g.edges:
        shift = shifts.get(e.id, 0)
        for i in range(degree):
            edges.append(CoverEdge("%s@%d" % (e.id, i),
                                   "%s@%d" % (e.from_vertex, i),
                                   "%s@%d" % (e.to_vertex, (i + shift) % degree),
                                   e.id))
    return GraphCover(vertex_map, tuple(edges))


def regauge(g, vertex_ids):
    """Flip omega on every edge with exactly one endpoint in the given set.

    This is a coboundary: every cycle value is unchanged, only the per-edge
    presentation of the sign data moves.
    """
    flipped = set(vertex_ids)
    edges = []
    for e in g.edges:
        crosses = (e.from_vertex in flipped) != (e.to_vertex in flipped)
        edges.append(Edge(e.id, e.from_vertex, e.to_vertex, e.h_ini, e.h_ter,
                          -e.omega if crosses else e.omega))
    return DecoratedJSJGraph(g.vertices, edges)
