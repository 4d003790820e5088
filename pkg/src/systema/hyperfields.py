"""Power-set systems built from hyperfields.

A hyperfield adds set-valued sums to a multiplicative group; its power
set becomes an ordinary carrier by extending hyperaddition to sets with
unions of pairwise hypersums.  Set inclusion is the surpassing relation,
and the tangibles are the singleton nonzero sets.

Shipped instances:

* Krasner  {0, 1}, 1 + 1 = {0, 1}
* sign     {0, +, -}, + + - = {0, +, -}
* tropical rationals with bottom; a + a is the closed down-ray at a
* phase    rational angles on the unit circle (measured in turns)

The tropical instance keeps down-rays symbolic (endpoint plus a ray tag);
the phase instance keeps exact unions of points and open arcs.  The
phase hypersum of two non-antipodal points is the *open* shorter arc
between them, x + x = {x}, and antipodal points sum to the whole circle
plus zero; this convention is local to this module and pinned by tests.
"""

from dataclasses import dataclass
from fractions import Fraction

from .core import Flags, System

HALF = Fraction(1, 2)


# ---------------------------------------------------------------------------
# finite hyperfields (Krasner, sign): generic power-set machinery


def set_hypersum(table, A, B):
    """Union of pairwise hypersums; the power-set addition."""
    out = set()
    for a in A:
        for b in B:
            out |= table[(a, b)]
    return frozenset(out)


KRASNER_SUM = {
    (0, 0): frozenset({0}),
    (0, 1): frozenset({1}),
    (1, 0): frozenset({1}),
    (1, 1): frozenset({0, 1}),
}

SIGN_SUM = {
    (0, 0): frozenset({0}),
    (0, 1): frozenset({1}), (1, 0): frozenset({1}),
    (0, -1): frozenset({-1}), (-1, 0): frozenset({-1}),
    (1, 1): frozenset({1}), (-1, -1): frozenset({-1}),
    (1, -1): frozenset({0, 1, -1}), (-1, 1): frozenset({0, 1, -1}),
}


def _powerset_system(name, sum_table, hyperneg, elements, tokens, kind):
    token_of = dict(zip(elements, tokens))
    of_token = dict(zip(tokens, elements))

    def parse(tok):
        if tok not in of_token:
            raise ValueError(f"bad {name} token {tok!r}")
        return of_token[tok]

    def invert(A):
        if len(A) != 1:
            return None
        a = next(iter(A))
        return frozenset({a}) if a in (1, -1) else None

    return System(
        name,
        zero=elements[0],
        one=frozenset({1}),
        add=lambda A, B: set_hypersum(sum_table, A, B),
        mul=lambda A, B: frozenset(a * b for a in A for b in B),
        negate=lambda A: frozenset(hyperneg(a) for a in A),
        is_tangible=lambda A: len(A) == 1 and 0 not in A,
        preceq=lambda A, B: A <= B,
        elements=elements,
        invert_tangible=invert,
        format_element=lambda A: token_of[A],
        parse_element=parse,
        flags=Flags(is_triple=True, negation_kind_hint=kind),
    )


def make_krasner():
    """Power set of the Krasner hyperfield: carrier {0}, {1}, {0,1}."""
    Z, I, T = frozenset({0}), frozenset({1}), frozenset({0, 1})
    return _powerset_system("krasner", KRASNER_SUM, lambda a: a,
                            (Z, I, T), ("0", "1", "T"), "first")


def make_sign():
    """Power set of the hyperfield of signs: {0}, {+}, {-}, {0,+,-}."""
    Z, P, M = frozenset({0}), frozenset({1}), frozenset({-1})
    T = frozenset({0, 1, -1})
    return _powerset_system("sign", SIGN_SUM, lambda a: -a,
                            (Z, P, M, T), ("0", "+", "-", "T"), "second")


# ---------------------------------------------------------------------------
# tropical hyperfield: points and symbolic down-rays
#
# payload: None (bottom) | ('p', q) point | ('r', q) closed down-ray at q


def make_tropical_hyperfield():
    def add(x, y):
        if x is None:
            return y
        if y is None:
            return x
        (tx, vx), (ty, vy) = x, y
        if tx == "p" and ty == "p":
            return ("r", vx) if vx == vy else ("p", max(vx, vy))
        if tx == "r" and ty == "r":
            return ("r", max(vx, vy))
        rv, pv = (vx, vy) if tx == "r" else (vy, vx)
        return ("p", pv) if pv > rv else ("r", rv)

    def mul(x, y):
        if x is None or y is None:
            return None
        (tx, vx), (ty, vy) = x, y
        tag = "p" if tx == "p" == ty else "r"
        return (tag, vx + vy)

    def preceq(x, y):
        # set inclusion on the symbolic representations
        if x == y:
            return True
        if x is None:
            return y is not None and y[0] == "r"
        if y is None or y[0] == "p":
            return False
        return x[1] <= y[1]

    def fmt(x):
        if x is None:
            return "-inf"
        tag, v = x
        return str(v) + ("r" if tag == "r" else "")

    def parse(tok):
        if tok == "-inf":
            return None
        if tok.endswith("r"):
            return ("r", Fraction(tok[:-1]))
        return ("p", Fraction(tok))

    values = [Fraction(v) for v in (-1, 0, 1, 2)]
    samples = ((None,) + tuple(("p", v) for v in values)
               + tuple(("r", v) for v in values))
    return System(
        "trophf",
        zero=None,
        one=("p", Fraction(0)),
        add=add,
        mul=mul,
        negate=lambda x: x,
        is_tangible=lambda x: x is not None and x[0] == "p",
        preceq=preceq,
        is_quasi_zero=lambda x: x is None or x[0] == "r",
        sample_elements=samples,
        sample_tangibles=tuple(("p", v) for v in values),
        invert_tangible=lambda x: ("p", -x[1]) if x and x[0] == "p" else None,
        format_element=fmt,
        parse_element=parse,
        flags=Flags(is_triple=True, negation_kind_hint="first"),
    )


# ---------------------------------------------------------------------------
# phase hyperfield: exact subsets of the circle
#
# Angles are rationals in turns, reduced mod 1.  A canonical PhaseSet is a
# zero flag plus disjoint maximal components, each a point ('pt', x) or an
# arc ('arc', s, e, li, ri): the open interval (s, e) counterclockwise,
# with s included iff li and e included iff ri; s in [0,1), s < e <= s+1.
# The full circle canonicalizes to ('arc', 0, 1, True, False).


def _mod1(x):
    return x % 1


@dataclass(frozen=True)
class PhaseSet:
    has_zero: bool
    pieces: tuple

    def __repr__(self):
        return f"PhaseSet({format_phase(self)!r})"


PHASE_ZERO = PhaseSet(True, ())
PHASE_FULL0 = PhaseSet(True, (("arc", Fraction(0), Fraction(1), True, False),))


def _interior(x, s, e):
    """Is angle x strictly inside the open arc (s, e)?"""
    d = _mod1(x - s)
    return 0 < d < e - s


def _canonical_pieces(raw):
    """Merge raw points and flagged arcs into maximal disjoint components."""
    points = set()
    arcs = []
    for piece in raw:
        if piece[0] == "pt":
            points.add(_mod1(piece[1]))
        else:
            _, s, e, li, ri = piece
            length = e - s
            if length <= 0:
                continue
            if length > 1:
                return PHASE_FULL0.pieces
            s = _mod1(s)
            arcs.append((s, s + length))
            if li:
                points.add(s)
            if ri:
                points.add(_mod1(s + length))
    if not arcs and not points:
        return ()

    criticals = sorted(points | {s for s, _ in arcs}
                       | {_mod1(e) for _, e in arcs})

    def covered_point(c):
        return c in points or any(_interior(c, s, e) for s, e in arcs)

    def covered_gap(lo, hi):
        mid = (lo + hi) / 2
        return any(_interior(mid, s, e) for s, e in arcs)

    # alternating cyclic positions: point c0, gap (c0,c1), point c1, ...
    k = len(criticals)
    positions = []
    for i, c in enumerate(criticals):
        nxt = criticals[(i + 1) % k] + (1 if i == k - 1 else 0)
        positions.append(("pt", c, c, covered_point(c)))
        positions.append(("gap", c, nxt, covered_gap(c, nxt)))
    if all(p[3] for p in positions):
        return PHASE_FULL0.pieces

    # rotate so the walk starts at an uncovered position, then linearise
    start = next(i for i, p in enumerate(positions) if not p[3])
    ordered = positions[start:] + positions[:start]
    shift = Fraction(0)
    linear = []
    prev_end = None
    for kind, lo, hi, cov in ordered:
        if prev_end is not None and lo + shift < prev_end:
            shift += 1
        linear.append((kind, lo + shift, hi + shift, cov))
        prev_end = hi + shift

    out = []
    run = []
    for pos in linear[1:] + [("gap", 0, 0, False)]:  # sentinel flushes
        if pos[3]:
            run.append(pos)
            continue
        if run:
            first, last = run[0], run[-1]
            if len(run) == 1 and first[0] == "pt":
                out.append(("pt", _mod1(first[1])))
            else:
                s, e = first[1], last[2]
                li, ri = first[0] == "pt", last[0] == "pt"
                s0 = _mod1(s)
                out.append(("arc", s0, s0 + (e - s), li, ri))
            run = []
    return tuple(sorted(out))


def _phase_set(has_zero, raw_pieces):
    return PhaseSet(has_zero, _canonical_pieces(raw_pieces))


def _primitives(piece):
    """Decompose a component into open arcs and points."""
    if piece[0] == "pt":
        return [piece]
    _, s, e, li, ri = piece
    out = [("oarc", s, e)]
    if li:
        out.append(("pt", s))
    if ri:
        out.append(("pt", _mod1(e)))
    return out


def _pt_pt_sum(x, y):
    """Hypersum of two circle points under the open-arc convention."""
    if x == y:
        return False, [("pt", x)]
    d = _mod1(y - x)
    if d == HALF:
        return True, list(PHASE_FULL0.pieces)
    if d < HALF:
        return False, [("arc", x, x + d, False, False)]
    return False, [("arc", y, y + (1 - d), False, False)]


def _arc_pt_sum(s, e, c):
    """Open arc (s, e) hypersummed with the point c."""
    u = _mod1(s - c)
    v = u + (e - s)
    if u < HALF < v or u < 3 * HALF < v:
        return True, list(PHASE_FULL0.pieces)
    pieces = []
    if u < 1 < v:
        pieces.append(("pt", c))
    for lo, hi, side in ((Fraction(0), HALF, "after"),
                         (HALF, Fraction(1), "before"),
                         (Fraction(1), 3 * HALF, "after"),
                         (3 * HALF, Fraction(2), "before")):
        p, q = max(u, lo), min(v, hi)
        if p >= q:
            continue
        if side == "after":
            # union of shorter arcs (c, c+t) for t sweeping (p, q)
            pieces.append(("arc", c, c + (q - lo), False, False))
        else:
            pieces.append(("arc", c + (p - hi) + 1, c + 1, False, False))
    return False, pieces


def _intersections(a1, a2, r1, r2):
    """Open sub-intervals of (a1, a2) that the circle arc (r1, r2) covers."""
    out = []
    for k in (-1, 0, 1):
        lo, hi = max(a1, r1 + k), min(a2, r2 + k)
        if lo < hi:
            out.append((lo, hi))
    return out


def _arc_arc_sum(a1, a2, b1, b2):
    """Hypersum of two open arcs."""
    if _intersections(a1, a2, b1 + HALF, b2 + HALF):
        return True, list(PHASE_FULL0.pieces)
    pieces = []
    if b2 - b1 < HALF:
        for p, q in _intersections(a1, a2, b2 - HALF, b1):
            # every point of B lies in the half circle after such a theta
            pieces.append(("arc", p, p + _mod1(b2 - p), False, False))
        for p, q in _intersections(a1, a2, b2, b1 + HALF):
            pieces.append(("arc", b1, b1 + _mod1(q - b1), False, False))
    if _intersections(a1, a2, b1, b2):
        pieces.append(("arc", b1, b2, False, False))
    for theta in {_mod1(t) for t in (b1, b2, b1 + HALF, b2 - HALF)}:
        if _interior(theta, a1, a2):
            full, ps = _arc_pt_sum(b1, b2, theta)
            if full:
                return True, list(PHASE_FULL0.pieces)
            pieces.extend(ps)
    return False, pieces


def _primitive_sum(px, py):
    if px[0] == "pt" and py[0] == "pt":
        return _pt_pt_sum(px[1], py[1])
    if px[0] == "pt":
        return _arc_pt_sum(py[1], py[2], px[1])
    if py[0] == "pt":
        return _arc_pt_sum(px[1], px[2], py[1])
    return _arc_arc_sum(px[1], px[2], py[1], py[2])


def phase_add(X, Y):
    has_zero = X.has_zero and Y.has_zero
    raw = []
    if X.has_zero:
        raw.extend(Y.pieces)
    if Y.has_zero:
        raw.extend(X.pieces)
    prims_x = [p for piece in X.pieces for p in _primitives(piece)]
    prims_y = [p for piece in Y.pieces for p in _primitives(piece)]
    for px in prims_x:
        for py in prims_y:
            full, ps = _primitive_sum(px, py)
            if full:
                return PHASE_FULL0
            raw.extend(ps)
    return _phase_set(has_zero, raw)


def phase_mul(X, Y):
    has_zero = X.has_zero or Y.has_zero
    raw = []
    prims_x = [p for piece in X.pieces for p in _primitives(piece)]
    prims_y = [p for piece in Y.pieces for p in _primitives(piece)]
    for px in prims_x:
        for py in prims_y:
            if px[0] == "pt" and py[0] == "pt":
                raw.append(("pt", _mod1(px[1] + py[1])))
            elif px[0] == "pt" or py[0] == "pt":
                c = px[1] if px[0] == "pt" else py[1]
                arc = py if px[0] == "pt" else px
                raw.append(("arc", arc[1] + c, arc[2] + c, False, False))
            else:
                s = px[1] + py[1]
                length = (px[2] - px[1]) + (py[2] - py[1])
                if length >= 1:
                    raw.extend(PHASE_FULL0.pieces)
                else:
                    raw.append(("arc", s, s + length, False, False))
    return _phase_set(has_zero, raw)


def phase_negate(X):
    raw = []
    for piece in X.pieces:
        if piece[0] == "pt":
            raw.append(("pt", _mod1(piece[1] + HALF)))
        else:
            _, s, e, li, ri = piece
            raw.append(("arc", s + HALF, e + HALF, li, ri))
    return PhaseSet(X.has_zero, _canonical_pieces(raw))


def phase_subset(X, Y):
    if X.has_zero and not Y.has_zero:
        return False
    merged = _canonical_pieces(X.pieces + Y.pieces)
    return merged == Y.pieces


def phase_point(q):
    return PhaseSet(False, (("pt", _mod1(Fraction(q))),))


def phase_arc(lo, hi, li=False, ri=False):
    lo, hi = Fraction(lo), Fraction(hi)
    length = _mod1(hi - lo)
    if length == 0:
        length = Fraction(1)
    s = _mod1(lo)
    return PhaseSet(False, _canonical_pieces([("arc", s, s + length, li, ri)]))


def phase_points(*qs):
    return PhaseSet(False, _canonical_pieces([("pt", _mod1(Fraction(q)))
                                              for q in qs]))


def format_phase(X):
    if X == PHASE_ZERO:
        return "z"
    if X == PHASE_FULL0:
        return "full"
    parts = ["z"] if X.has_zero else []
    for piece in X.pieces:
        if piece[0] == "pt":
            parts.append(str(piece[1]))
        else:
            _, s, e, li, ri = piece
            lo, hi = "[" if li else "(", "]" if ri else ")"
            parts.append(f"{lo}{s},{_mod1(e) if e != 1 else e}{hi}")
    return "|".join(parts)


def parse_phase(token):
    if token == "z":
        return PHASE_ZERO
    if token == "full":
        return PHASE_FULL0
    has_zero = False
    raw = []
    for part in token.split("|"):
        if part == "z":
            has_zero = True
        elif part[0] in "([":
            li, ri = part[0] == "[", part[-1] == "]"
            body = part[1:-1]
            lo, _, hi = body.partition(",")
            s = _mod1(Fraction(lo))
            length = _mod1(Fraction(hi) - Fraction(lo))
            if length == 0:
                length = Fraction(1)
            raw.append(("arc", s, s + length, li, ri))
        else:
            raw.append(("pt", _mod1(Fraction(part))))
    return PhaseSet(has_zero, _canonical_pieces(raw))


def make_phase():
    """Power set of the phase hyperfield over rational angles.

    Infinite carrier: audits run over the documented probe set below and
    are labelled sampled.  The probe includes a two-point set, which no
    sum of tangibles produces, so the generation axiom honestly fails:
    this instance is a pseudo-triple, not a triple.
    """
    samples = (
        PHASE_ZERO,
        phase_point(0),
        phase_point(Fraction(1, 4)),
        phase_point(Fraction(1, 2)),
        phase_point(Fraction(3, 4)),
        phase_arc(0, Fraction(1, 4)),
        phase_points(0, Fraction(1, 4)),
        PHASE_FULL0,
    )
    return System(
        "phase",
        zero=PHASE_ZERO,
        one=phase_point(0),
        add=phase_add,
        mul=phase_mul,
        negate=phase_negate,
        is_tangible=lambda X: (not X.has_zero and len(X.pieces) == 1
                               and X.pieces[0][0] == "pt"),
        preceq=phase_subset,
        is_quasi_zero=lambda X: X in (PHASE_ZERO, PHASE_FULL0),
        sample_elements=samples,
        sample_tangibles=tuple(s for s in samples[1:5]),
        invert_tangible=lambda X: phase_point(-X.pieces[0][1]),
        format_element=format_phase,
        parse_element=parse_phase,
        flags=Flags(is_triple=False, is_pseudo_triple_only=True,
                    negation_kind_hint="second"),
    )
