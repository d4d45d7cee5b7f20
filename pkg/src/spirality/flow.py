"""Spirality of loops transverse to the suspension flows of a pseudo graph manifold.

Input data: every JSJ piece carries either a Seifert fibration or a
pseudo-Anosov suspension flow, each boundary torus of a piece has a
degeneracy slope (the class of a closed leaf) and a leaf length measured in
flowing-time units, and a loop is recorded as the cyclic sequence of its
transverse torus crossings. The spirality of the loop is then the product
over crossings of

    sigma(c) = i(c, slope on the side the loop leaves)
             / i(c, slope on the side it enters),

times the product over the in-piece segments of

    rho(segment) = leaf length at the entry boundary
                 / leaf length at the exit boundary.

Side convention (documented prominently, see SideConvention): by default a
crossing's ``from_side`` names the side of the torus the loop is leaving,
so the entered side plays the plus role in sigma; the opposite convention
reinterprets ``from_side`` as the side being entered and is normalized away
at ingestion.

Leaf lengths are exact positive rationals supplied as data; only their
ratios matter, and rescaling all lengths of one piece by a common factor
changes nothing.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import lcm

from .errors import SpiralityError, error, warning
from .lattice import intersection_number
from . import graph as jsj


class NotFlowTransverse(SpiralityError):
    """A crossing curve is parallel to a degeneracy slope."""


class BadSegment(SpiralityError):
    """Itinerary segment endpoints do not bound a path in one piece."""


class Side(Enum):
    PLUS = "plus"
    MINUS = "minus"

    @property
    def other(self):
        return Side.MINUS if self is Side.PLUS else Side.PLUS


class SideConvention(Enum):
    """How a crossing's ``from_side`` field is read.

    FROM_LEAVES (the default): the recorded side is the one the loop is
    leaving; it crosses from there into the other side, which takes the
    plus role in sigma. FROM_ENTERS flips this for users with the opposite
    recording habit; itineraries are normalized to FROM_LEAVES on input.
    """

    FROM_LEAVES = "from-leaves"
    FROM_ENTERS = "from-enters"


class PieceType(Enum):
    SEIFERT = "seifert"
    PSEUDO_ANOSOV = "pseudo_anosov"


@dataclass(frozen=True)
class PieceBoundary:
    """One boundary torus of a piece, with its degeneracy slope and leaf length."""

    id: str
    torus: str
    degeneracy_slope: object
    leaf_length: Fraction


@dataclass(frozen=True)
class Piece:
    id: str
    type: PieceType
    boundaries: tuple

    def __post_init__(self):
        if isinstance(self.type, str):
            object.__setattr__(self, "type", PieceType(self.type))
        object.__setattr__(self, "boundaries", tuple(self.boundaries))

    def boundary(self, boundary_id):
        for b in self.boundaries:
            if b.id == boundary_id:
                return b
        raise KeyError(boundary_id)


@dataclass(frozen=True)
class Torus:
    """A JSJ torus with its two sides, each a (piece id, boundary id) pair."""

    id: str
    plus: tuple
    minus: tuple
    frame: str = ""

    def side(self, which):
        return self.plus if which is Side.PLUS else self.minus


class FlowManifest:
    """Immutable pseudo graph manifold data: pieces and two-sided tori."""

    def __init__(self, pieces, tori):
        self.pieces = tuple(pieces)
        self.tori = tuple(tori)
        self._piece_by_id = {p.id: p for p in self.pieces}
        self._torus_by_id = {t.id: t for t in self.tori}

    def piece(self, piece_id):
        return self._piece_by_id[piece_id]

    def torus(self, torus_id):
        return self._torus_by_id[torus_id]

    def side_boundary(self, torus_id, side):
        """The (piece, boundary) records on one side of a torus."""
        piece_id, boundary_id = self.torus(torus_id).side(side)
        piece = self.piece(piece_id)
        return piece, piece.boundary(boundary_id)

    def __repr__(self):
        return "FlowManifest(%d pieces, %d tori)" % (len(self.pieces), len(self.tori))


@dataclass(frozen=True)
class Crossing:
    """One transverse torus crossing of the loop.

    ``from_side`` is stored in the canonical FROM_LEAVES reading: the side
    of the torus the loop leaves at this crossing.
    """

    torus: str
    curve: object
    from_side: Side

    def __post_init__(self):
        if isinstance(self.from_side, str):
            object.__setattr__(self, "from_side", Side(self.from_side))


@dataclass(frozen=True)
class LoopItinerary:
    """Cyclic crossing sequence; segment i runs between crossings i-1 and i."""

    crossings: tuple

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(self.crossings))
        if not self.crossings:
            raise ValueError("itinerary needs at least one crossing")


def normalize_itinerary(itinerary, convention):
    """Rewrite an itinerary into the canonical FROM_LEAVES reading."""
    if convention is SideConvention.FROM_LEAVES:
        return itinerary
    return LoopItinerary(tuple(
        Crossing(c.torus, c.curve, c.from_side.other) for c in itinerary.crossings))


def reverse_itinerary(itinerary):
    """The same loop traversed the other way: reversed order, flipped sides."""
    return LoopItinerary(tuple(
        Crossing(c.torus, c.curve, c.from_side.other)
        for c in reversed(itinerary.crossings)))


# Diagnostic codes for manifest/itinerary validation.
DUPLICATE_ID = "DuplicateId"
DANGLING_REF = "DanglingReference"
NON_POSITIVE_LEAF = "NonPositiveLeafLength"
SEIFERT_LEAF_MISMATCH = "SeifertLeafMismatch"
UNPAIRED_BOUNDARY = "UnpairedBoundary"
SLOPE_MULTIPLICITY = "DegeneracySlopeMultiplicity"
PIECE_MISMATCH = "PieceMismatch"
NOT_TRANSVERSE = "NotFlowTransverse"


def validate_manifest(m):
    """Structural diagnostics: two-sided tori, positive lengths, Seifert fibers."""
    out = []
    seen = set()
    side_refs = {}
    for p in m.pieces:
        if p.id in seen:
            out.append(error(DUPLICATE_ID, "duplicate piece id %r" % p.id))
        seen.add(p.id)
        lengths = set()
        bseen = set()
        for b in p.boundaries:
            if b.id in bseen:
                out.append(error(DUPLICATE_ID,
                                 "duplicate boundary id %r on piece %r" % (b.id, p.id)))
            bseen.add(b.id)
            if b.leaf_length <= 0:
                out.append(error(NON_POSITIVE_LEAF,
                                 "boundary %r of piece %r has leaf length %s"
                                 % (b.id, p.id, b.leaf_length)))
            if b.torus not in m._torus_by_id:
                out.append(error(DANGLING_REF,
                                 "boundary %r of piece %r references missing torus %r"
                                 % (b.id, p.id, b.torus)))
            if b.degeneracy_slope.multiplicity != 1:
                out.append(warning(SLOPE_MULTIPLICITY,
                                   "degeneracy slope on %r/%r has multiplicity %d; "
                                   "closed leaves are primitive curves"
                                   % (p.id, b.id, b.degeneracy_slope.multiplicity)))
            lengths.add(b.leaf_length)
        if p.type is PieceType.SEIFERT and len(lengths) > 1:
            out.append(error(SEIFERT_LEAF_MISMATCH,
                             "Seifert piece %r has unequal boundary leaf lengths "
                             "(the ordinary fiber has one length)" % p.id))
    seen = set()
    for t in m.tori:
        if t.id in seen:
            out.append(error(DUPLICATE_ID, "duplicate torus id %r" % t.id))
        seen.add(t.id)
        for side in (Side.PLUS, Side.MINUS):
            piece_id, boundary_id = t.side(side)
            piece = m._piece_by_id.get(piece_id)
            if piece is None:
                out.append(error(DANGLING_REF,
                                 "torus %r %s side references missing piece %r"
                                 % (t.id, side.value, piece_id)))
                continue
            try:
                b = piece.boundary(boundary_id)
            except KeyError:
                out.append(error(DANGLING_REF,
                                 "torus %r %s side references missing boundary %r/%r"
                                 % (t.id, side.value, piece_id, boundary_id)))
                continue
            if b.torus != t.id:
                out.append(error(DANGLING_REF,
                                 "torus %r %s side uses boundary %r/%r which belongs "
                                 "to torus %r" % (t.id, side.value, piece_id,
                                                  boundary_id, b.torus)))
            key = (piece_id, boundary_id)
            if key in side_refs:
                out.append(error(UNPAIRED_BOUNDARY,
                                 "boundary %r/%r is claimed by two torus sides"
                                 % key))
            side_refs[key] = t.id
    for p in m.pieces:
        for b in p.boundaries:
            if b.torus in m._torus_by_id and (p.id, b.id) not in side_refs:
                out.append(error(UNPAIRED_BOUNDARY,
                                 "boundary %r/%r is not a side of any torus"
                                 % (p.id, b.id)))
    return out


def validate_itinerary(itinerary, m):
    """Diagnostics for a loop: resolvable crossings, chained pieces, transversality."""
    out = []
    crossings = itinerary.crossings
    for i, c in enumerate(crossings):
        if c.torus not in m._torus_by_id:
            out.append(error(DANGLING_REF,
                             "crossing %d references missing torus %r" % (i, c.torus)))
    if any(d.is_error for d in out):
        return out
    n = len(crossings)
    for i, c in enumerate(crossings):
        for side, role in ((c.from_side, "leaves"), (c.from_side.other, "enters")):
            _, boundary = m.side_boundary(c.torus, side)
            if intersection_number(c.curve, boundary.degeneracy_slope) == 0:
                out.append(error(NOT_TRANSVERSE,
                                 "crossing %d on torus %r is parallel to the "
                                 "degeneracy slope it %s" % (i, c.torus, role)))
        entered_piece, _ = m.side_boundary(c.torus, c.from_side.other)
        next_c = crossings[(i + 1) % n]
        left_piece, _ = m.side_boundary(next_c.torus, next_c.from_side)
        if entered_piece.id != left_piece.id:
            out.append(error(PIECE_MISMATCH,
                             "crossing %d enters piece %r but crossing %d leaves "
                             "piece %r" % (i, entered_piece.id, (i + 1) % n,
                                           left_piece.id)))
    return out


def sigma(crossing, m, convention=SideConvention.FROM_LEAVES):
    """Intersection-number ratio of one sided crossing.

    With the canonical reading the numerator uses the degeneracy slope on
    the side being left and the denominator the side entered into; flipping
    the side assignment inverts the value.
    """
    if convention is SideConvention.FROM_ENTERS:
        crossing = Crossing(crossing.torus, crossing.curve, crossing.from_side.other)
    _, leave = m.side_boundary(crossing.torus, crossing.from_side)
    _, enter = m.side_boundary(crossing.torus, crossing.from_side.other)
    n_leave = intersection_number(crossing.curve, leave.degeneracy_slope)
    n_enter = intersection_number(crossing.curve, enter.degeneracy_slope)
    if n_leave == 0 or n_enter == 0:
        raise NotFlowTransverse(
            "curve %s on torus %r is parallel to a degeneracy slope"
            % (crossing.curve, crossing.torus))
    return Fraction(n_leave, n_enter)


@dataclass(frozen=True)
class Segment:
    """An in-piece subpath, named by its entry and exit boundaries."""

    piece: str
    entry_boundary: str
    exit_boundary: str


def segments_of(itinerary, m, convention=SideConvention.FROM_LEAVES):
    """The in-piece segments of a loop, one ending at each crossing."""
    itinerary = normalize_itinerary(itinerary, convention)
    crossings = itinerary.crossings
    n = len(crossings)
    segments = []
    for i in range(n):
        before, after = crossings[(i - 1) % n], crossings[i]
        entry_piece, entry = m.side_boundary(before.torus, before.from_side.other)
        exit_piece, exit_ = m.side_boundary(after.torus, after.from_side)
        if entry_piece.id != exit_piece.id:
            raise BadSegment("segment %d would run from piece %r to piece %r"
                             % (i, entry_piece.id, exit_piece.id))
        segments.append(Segment(entry_piece.id, entry.id, exit_.id))
    return tuple(segments)


def rho(segment, m):
    """Leaf-length ratio of a segment: entry boundary over exit boundary."""
    piece = m.piece(segment.piece)
    try:
        entry = piece.boundary(segment.entry_boundary)
        exit_ = piece.boundary(segment.exit_boundary)
    except KeyError as missing:
        raise BadSegment("boundary %s is not on piece %r" % (missing, segment.piece))
    return entry.leaf_length / exit_.leaf_length


def equiperiodic_rho_is_one(m):
    """True iff all boundary leaf lengths agree within each piece.

    In that case every segment ratio is 1 and the spirality of any loop
    reduces to the bare sigma product.
    """
    for p in m.pieces:
        lengths = {b.leaf_length for b in p.boundaries}
        if len(lengths) > 1:
            return False
    return True


def flow_spirality(itinerary, m, convention=SideConvention.FROM_LEAVES):
    """Spirality of a flow-transverse loop: product of sigmas times product of rhos."""
    itinerary = normalize_itinerary(itinerary, convention)
    value = Fraction(1)
    for c in itinerary.crossings:
        value *= sigma(c, m)
    for seg in segments_of(itinerary, m):
        value *= rho(seg, m)
    return value


def decorate_from_flow(itinerary, m, convention=SideConvention.FROM_LEAVES):
    """Build the decorated dual graph along the loop; its cycle matches flow_spirality.

    One vertex per in-piece segment, one edge per crossing. The raw weight
    at an edge end is i(curve, slope at that end) / leaf length at that
    end, an exact rational; clearing the least common denominator across
    all ends turns the weights into the positive integers h. The scaling
    cancels in every cycle product, so the emitted cycle's holonomy equals
    the spirality of the loop exactly.
    """
    itinerary = normalize_itinerary(itinerary, convention)
    crossings = itinerary.crossings
    n = len(crossings)
    segs = segments_of(itinerary, m)

    weights = []
    for c in crossings:
        _, leave = m.side_boundary(c.torus, c.from_side)
        _, enter = m.side_boundary(c.torus, c.from_side.other)
        n_leave = intersection_number(c.curve, leave.degeneracy_slope)
        n_enter = intersection_number(c.curve, enter.degeneracy_slope)
        if n_leave == 0 or n_enter == 0:
            raise NotFlowTransverse(
                "curve %s on torus %r is parallel to a degeneracy slope"
                % (c.curve, c.torus))
        weights.append((Fraction(n_leave) / leave.leaf_length,
                        Fraction(n_enter) / enter.leaf_length))

    scale = lcm(*(w.denominator for pair in weights for w in pair))
    vertices = []
    for i, seg in enumerate(segs):
        piece = m.piece(seg.piece)
        kind = (jsj.VertexKind.HORIZONTAL if piece.type is PieceType.SEIFERT
                else jsj.VertexKind.GEOMETRICALLY_INFINITE)
        vertices.append(jsj.Vertex("seg%03d" % i, kind))
    edges = []
    steps = []
    for i, (w_leave, w_enter) in enumerate(weights):
        edge_id = "x%03d" % i
        edges.append(jsj.Edge(edge_id, "seg%03d" % i, "seg%03d" % ((i + 1) % n),
                              int(w_leave * scale), int(w_enter * scale)))
        steps.append((edge_id, jsj.FORWARD))
    return jsj.DecoratedJSJGraph(vertices, edges), jsj.DirectedCycle(tuple(steps))
