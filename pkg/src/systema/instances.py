"""Shipped carrier instances and the two system transformers.

Base carriers (Boolean, max-plus / min-plus rationals, finite chains) are
bipotent ordered monoids with a bottom element adjoined; they are *not*
triples themselves (with identity negation their tangibles are their own
quasi-zeros) but feed the two constructions that are:

* :func:`supertropicalize` doubles the nonzero carrier into tangible and
  ghost copies, collapsing ties to ghosts, with identity negation
  (first kind);
* :func:`symmetrize` squares the carrier into pairs with the twist
  product and switch negation (second kind).

All arithmetic is exact: rationals, never floats.

Element encodings
-----------------
base carriers      ``None`` for the bottom, else an int level or Fraction
supertropical      ``None`` | ``('t', v)`` | ``('g', v)``
symmetrized        pair ``(a0, a1)`` of base payloads
"""

from dataclasses import dataclass
from fractions import Fraction

from . import hyperfields
from .budgets import from_env
from .core import Flags, System, audit_axioms
from .errors import BudgetExceeded


@dataclass(frozen=True)
class OrderedMonoidSpec:
    """Value-level view of a bipotent base: total order and product.

    ``saturates(a, b)`` reports when the product collapses the strict
    order (a truncated chain hitting its cap).  Cancellative bases leave
    it None.
    """

    domain: str
    identity: object
    op: object       # (value, value) -> value
    le: object       # (value, value) -> bool, total
    saturates: object = None


def _bipotent_system(name, spec, *, elements=None, samples=None,
                     invert=None, fmt=None, parse=None):
    def add(x, y):
        if x is None:
            return y
        if y is None:
            return x
        return y if spec.le(x, y) else x

    def mul(x, y):
        if x is None or y is None:
            return None
        return spec.op(x, y)

    system = System(
        name,
        zero=None,
        one=spec.identity,
        add=add,
        mul=mul,
        negate=lambda b: b,
        is_tangible=lambda b: b is not None,
        # with identity negation b° = b + b = b, so every element differs
        # from some b° and the default search-based relation degenerates;
        # supply it directly: b2 is surpassed by b2 + c for any c
        preceq=lambda a, b: a == b or (b is not None and
                                       (a is None or spec.le(a, b))),
        is_quasi_zero=lambda b: True,   # b (-) b = b: everything is one
        elements=elements,
        sample_elements=samples,
        sample_tangibles=(tuple(v for v in samples if v is not None)
                          if samples is not None else None),
        invert_tangible=invert,
        format_element=fmt,
        parse_element=parse,
        flags=Flags(is_triple=False, negation_kind_hint="first"),
    )
    system.monoid = spec
    return system


def make_boolean():
    """Two-element bipotent semifield {0, 1} with 1 + 1 = 1."""
    spec = OrderedMonoidSpec("boolean", 1, lambda a, b: 1,
                             lambda a, b: True)

    def fmt(b):
        return "0" if b is None else "1"

    def parse(tok):
        if tok == "0":
            return None
        if tok == "1":
            return 1
        raise ValueError(f"bad boolean token {tok!r}")

    return _bipotent_system("boolean", spec, elements=(None, 1),
                            invert=lambda v: 1, fmt=fmt, parse=parse)


def _rational_tropical(name, le, zero_token):
    spec = OrderedMonoidSpec("rationals", Fraction(0),
                             lambda a, b: a + b, le)
    samples = (None, Fraction(-2), Fraction(-1), Fraction(0),
               Fraction(1), Fraction(2))

    def fmt(b):
        return zero_token if b is None else str(b)

    def parse(tok):
        if tok == zero_token:
            return None
        return Fraction(tok)

    return _bipotent_system(name, spec, samples=samples,
                            invert=lambda v: -v, fmt=fmt, parse=parse)


def make_max_plus():
    """Exact-rational max-plus: add = max, mul = +, bottom -inf."""
    return _rational_tropical("maxplus", lambda a, b: a <= b, "-inf")


def make_min_plus():
    """Order dual of max-plus: add = min, mul = +, bottom +inf.

    This is the orientation used by Puiseux valuations; the two are the
    same descriptor family with the order flipped.
    """
    return _rational_tropical("minplus", lambda a, b: a >= b, "inf")


def make_finite_chain(m):
    """Chain 0 < 1 < ... < m with truncated addition as the product."""
    if m < 1:
        raise ValueError("chain needs m >= 1")
    spec = OrderedMonoidSpec(f"chain:{m}", 0,
                             lambda a, b: min(a + b, m), lambda a, b: a <= b,
                             saturates=lambda a, b: a + b > m)

    def fmt(b):
        return "-inf" if b is None else str(b)

    def parse(tok):
        if tok == "-inf":
            return None
        v = int(tok)
        if not 0 <= v <= m:
            raise ValueError(f"chain level {v} out of range 0..{m}")
        return v

    return _bipotent_system(f"chain:{m}", spec,
                            elements=(None,) + tuple(range(m + 1)),
                            invert=lambda v: 0 if v == 0 else None,
                            fmt=fmt, parse=parse)


# ---------------------------------------------------------------------------
# supertropicalization


def supertropicalize(base):
    """Tangible/ghost double of a bipotent base.

    Addition compares the underlying values and keeps the larger; a tie
    collapses to the ghost of the shared value.  Ghosts absorb under
    multiplication and negation is the identity, so b (-) b is the ghost
    of b: the ghosts play the role of zero.

    Products that saturate the base monoid (a truncated chain hitting its
    cap) also land in the ghost layer; saturation collapses distinct
    tangibles, and keeping such products tangible would break scalar
    distributivity.
    """
    if getattr(base, "monoid", None) is None:
        raise ValueError(f"{base.name} is not a bipotent ordered-monoid base")
    spec = base.monoid
    saturates = spec.saturates or (lambda a, b: False)

    def add(x, y):
        if x is None:
            return y
        if y is None:
            return x
        (tx, vx), (ty, vy) = x, y
        if vx == vy:
            return ("g", vx)
        if spec.le(vx, vy):
            return y
        return x

    def mul(x, y):
        if x is None or y is None:
            return None
        (tx, vx), (ty, vy) = x, y
        tag = "t" if tx == "t" == ty and not saturates(vx, vy) else "g"
        return (tag, spec.op(vx, vy))

    def preceq(a, b):
        # b = a + c° forces b = a, or b a ghost at least as high as a
        if a == b:
            return True
        if b is None or b[0] != "g":
            return False
        if a is None:
            return True
        return a[1] == b[1] or spec.le(a[1], b[1])

    def invert(x):
        if x is None or x[0] != "t":
            return None
        inv = base.invert_tangible(x[1])
        return None if inv is None else ("t", inv)

    def fmt(b):
        if b is None:
            return base.format_element(None)
        tag, v = b
        return base.format_element(v) + ("v" if tag == "g" else "")

    def parse(tok):
        if tok == base.format_element(None):
            return None
        if tok.endswith("v"):
            return ("g", base.parse_element(tok[:-1]))
        return ("t", base.parse_element(tok))

    elements = samples = tangibles = None
    if base.is_finite:
        values = [v for v in base.elements if v is not None]
        elements = ((None,) + tuple(("t", v) for v in values)
                    + tuple(("g", v) for v in values))
    else:
        values = [v for v in base.sample_elements if v is not None]
        samples = ((None,) + tuple(("t", v) for v in values)
                   + tuple(("g", v) for v in values))
        tangibles = tuple(("t", v) for v in values)

    system = System(
        f"supertropical:{base.name}",
        zero=None,
        one=("t", spec.identity),
        add=add,
        mul=mul,
        negate=lambda b: b,
        is_tangible=lambda b: b is not None and b[0] == "t",
        preceq=preceq,
        is_quasi_zero=lambda b: b is None or b[0] == "g",
        elements=elements,
        sample_elements=samples,
        sample_tangibles=tangibles,
        invert_tangible=invert,
        format_element=fmt,
        parse_element=parse,
        flags=Flags(is_triple=True, negation_kind_hint="first"),
    )
    system.supertropical = True
    return system


# ---------------------------------------------------------------------------
# symmetrization


def symmetrize(base):
    """Pair construction with twist product and switch negation.

    The carrier is base x base with componentwise addition and

        (a0, a1) (b0, b1) = (a0 b0 + a1 b1, a0 b1 + a1 b0)

    Tangibles are the one-sided pairs; the switch makes the negation map
    second kind, and balanced pairs (a, a) are the quasi-zeros.
    """
    z = base.zero

    def add(x, y):
        return (base.add(x[0], y[0]), base.add(x[1], y[1]))

    def mul(x, y):
        (a0, a1), (b0, b1) = x, y
        return (base.add(base.mul(a0, b0), base.mul(a1, b1)),
                base.add(base.mul(a0, b1), base.mul(a1, b0)))

    def is_tangible(x):
        a0, a1 = x
        if (a0 == z) == (a1 == z):
            return False
        return base.is_tangible(a1 if a0 == z else a0)

    spec = getattr(base, "monoid", None)
    preceq = None
    if spec is not None and not base.is_finite:
        def preceq(x, y):
            # search for c with y_i = x_i + c in both coordinates; in a
            # bipotent base each coordinate either forces c or caps it
            if x == y:
                return True
            forced, capped = [], []
            for xi, yi in zip(x, y):
                if yi == xi:
                    capped.append(xi)
                elif base.add(xi, yi) == yi:
                    forced.append(yi)
                else:
                    return False
            if len(forced) == 2:
                return forced[0] == forced[1]
            c = forced[0]
            return all(base.add(xi, c) == xi for xi in capped)

    def invert(x):
        a0, a1 = x
        if a0 != z and a1 == z:
            inv = base.invert_tangible(a0)
            return None if inv is None else (inv, z)
        if a0 == z and a1 != z:
            inv = base.invert_tangible(a1)
            return None if inv is None else (z, inv)
        return None

    def fmt(x):
        return f"({base.format_element(x[0])},{base.format_element(x[1])})"

    def parse(tok):
        if not (tok.startswith("(") and tok.endswith(")")):
            raise ValueError(f"bad pair token {tok!r}")
        left, _, right = tok[1:-1].partition(",")
        return (base.parse_element(left), base.parse_element(right))

    elements = samples = tangibles = None
    if base.is_finite:
        elements = tuple((a, b) for a in base.elements for b in base.elements)
    else:
        vals = base.sample_elements[:3]
        samples = tuple((a, b) for a in vals for b in vals)
        tangibles = tuple(p for p in samples if is_tangible(p))

    return System(
        f"symmetrized:{base.name}",
        zero=(z, z),
        one=(base.one, z) if base.one is not None else None,
        add=add,
        mul=mul,
        negate=lambda x: (x[1], x[0]),
        is_tangible=is_tangible,
        preceq=preceq,
        is_quasi_zero=lambda x: x[0] == x[1],
        elements=elements,
        sample_elements=samples,
        sample_tangibles=tangibles,
        invert_tangible=invert,
        format_element=fmt,
        parse_element=parse,
        flags=Flags(is_triple=True, negation_kind_hint="second"),
    )


# ---------------------------------------------------------------------------
# twisted negation from a square root of the unit


def make_fuzzy_negation(base, one_prime):
    """Same carrier with negation b -> one_prime * b.

    Requires a tangible one_prime squaring to the unit.  The declared
    flags are refreshed from an audit of the result, so callers see the
    honest classification.
    """
    if base.one is None:
        raise ValueError("needs a unital base")
    if not base.is_tangible(one_prime):
        raise ValueError("one_prime must be tangible")
    if base.mul(one_prime, one_prime) != base.one:
        raise ValueError("one_prime squared must be the unit")

    negate = lambda b: base.mul(one_prime, b)
    if not base.is_finite:
        # the inherited quasi-zero closed form is tied to the base
        # negation; only accept twists that agree with it on the probes
        probes, _ = base.probe_elements()
        if any(negate(b) != base.negate(b) for b in probes):
            raise ValueError("twisted negation on an infinite carrier must "
                             "agree with the instance's own negation map")
    system = System(
        f"{base.name}[neg={base.format_element(one_prime)}]",
        zero=base.zero,
        one=base.one,
        add=base.add,
        mul=base.mul,
        negate=negate,
        is_tangible=base.is_tangible,
        preceq=base._preceq,
        is_quasi_zero=None if base.is_finite else base._is_quasi_zero,
        elements=base.elements,
        sample_elements=base.sample_elements,
        sample_tangibles=base.sample_tangibles,
        invert_tangible=base._invert_tangible,
        format_element=base._format,
        parse_element=base._parse,
        flags=base.flags,
    )
    summary = audit_axioms(system).summary
    system.flags = Flags(is_triple=summary.is_triple,
                         is_pseudo_triple_only=False,
                         negation_kind_hint=None)
    return system


# ---------------------------------------------------------------------------
# brute-force isomorphism between small finite instances


def find_isomorphism(s1, s2, max_size=None):
    """Bijection preserving add, mul, negate and tangibility, or None.

    Backtracking over the canonical enumeration with incremental closure
    checks; feasible for the shipped instances (caps at the isomorphism
    budget).
    """
    if not (s1.is_finite and s2.is_finite):
        raise ValueError("isomorphism search needs finite carriers")
    cap = max_size if max_size is not None else from_env().iso_size
    if len(s1.elements) > cap or len(s2.elements) > cap:
        raise BudgetExceeded(f"carriers exceed {cap} elements")
    if len(s1.elements) != len(s2.elements):
        return None
    if len(s1.tangibles) != len(s2.tangibles):
        return None

    def compatible(mapping, x, y):
        if s1.is_tangible(x) != s2.is_tangible(y):
            return False
        if (x == s1.zero) != (y == s2.zero):
            return False
        if s1.one is not None and s2.one is not None:
            if (x == s1.one) != (y == s2.one):
                return False
        trial = dict(mapping)
        trial[x] = y
        for u, fu in trial.items():
            nu = s1.negate(u)
            if nu in trial and trial[nu] != s2.negate(fu):
                return False
            for v, fv in trial.items():
                for op1, op2 in ((s1.add, s2.add), (s1.mul, s2.mul)):
                    r = op1(u, v)
                    if r in trial and trial[r] != op2(fu, fv):
                        return False
        return True

    order = s1.elements
    used = set()
    mapping = {}

    def extend(i):
        if i == len(order):
            return True
        x = order[i]
        for y in s2.elements:
            if y in used or not compatible(mapping, x, y):
                continue
            mapping[x] = y
            used.add(y)
            if extend(i + 1):
                return True
            del mapping[x]
            used.discard(y)
        return False

    return dict(mapping) if extend(0) else None


def isomorphic_finite(s1, s2, max_size=None):
    """(bool, witness map or None) for the brute-force search."""
    witness = find_isomorphism(s1, s2, max_size)
    return witness is not None, witness


# ---------------------------------------------------------------------------
# name registry (the CLI's instance vocabulary)

_CACHE = {}


def resolve(name):
    """Instance for a registry name; descriptors are cached per process.

    Grammar: boolean | maxplus | minplus | chain:<m> | krasner | sign |
    trophf | phase | supertropical:<base> | symmetrized:<base>
    """
    if name in _CACHE:
        return _CACHE[name]
    system = _build(name)
    _CACHE[name] = system
    return system


def _build(name):
    if name == "boolean":
        return make_boolean()
    if name == "maxplus":
        return make_max_plus()
    if name == "minplus":
        return make_min_plus()
    if name == "krasner":
        return hyperfields.make_krasner()
    if name == "sign":
        return hyperfields.make_sign()
    if name == "trophf":
        return hyperfields.make_tropical_hyperfield()
    if name == "phase":
        return hyperfields.make_phase()
    head, _, rest = name.partition(":")
    if head == "chain" and rest:
        return make_finite_chain(int(rest))
    if head == "supertropical" and rest:
        return supertropicalize(resolve(rest))
    if head == "symmetrized" and rest:
        return symmetrize(resolve(rest))
    known = ("boolean, maxplus, minplus, chain:<m>, krasner, sign, trophf, "
             "phase, supertropical:<base>, symmetrized:<base>")
    raise ValueError(f"unknown instance {name!r}; expected one of {known}")
