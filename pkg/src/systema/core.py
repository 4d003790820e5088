"""Carrier descriptors for triples and systems, and the axiom audit.

A *system* here is a carrier set with addition and multiplication, a
distinguished subset of *tangible* elements, a *negation map* standing in
for subtraction, and a *surpassing relation* standing in for equality.
Everything an instance knows is bundled into one :class:`System`
descriptor: plain callables over opaque, canonical, hashable payloads.
Structural equality of payloads is semantic equality, so ``==`` on
elements is always meaningful.

The audit in :func:`audit_axioms` replays every defining law over the
whole carrier (finite instances) or over a documented probe set (infinite
ones, with results labelled as sampled), and records a concrete
counterexample for every failure.
"""

from dataclasses import dataclass
from itertools import product

from .budgets import from_env
from .errors import NotUnital

# An Element is any hashable canonical payload; descriptors own the encoding.
Element = object


@dataclass(frozen=True)
class Flags:
    """Declared classification of an instance, checked by the audit."""

    is_triple: bool = False
    is_pseudo_triple_only: bool = False
    negation_kind_hint: str | None = None


class System:
    """Runtime description of one carrier: operations, tangibles, order.

    Treat instances as immutable.  ``elements`` (when given) fixes the
    canonical enumeration order used by every deterministic search;
    infinite carriers supply ``sample_elements``/``sample_tangibles``
    probe sets instead, and any verdict derived from them is sampled.
    """

    def __init__(self, name, *, zero, add, mul, negate, is_tangible,
                 one=None, preceq=None, is_quasi_zero=None,
                 elements=None, sample_elements=None, sample_tangibles=None,
                 invert_tangible=None, format_element=None,
                 parse_element=None, flags=Flags()):
        self.name = name
        self.zero = zero
        self.one = one
        self.add = add
        self.mul = mul
        self.negate = negate
        self.is_tangible = is_tangible
        self.flags = flags
        self._preceq = preceq
        self._is_quasi_zero = is_quasi_zero
        self._invert_tangible = invert_tangible
        self._format = format_element
        self._parse = parse_element

        if elements is not None:
            self.elements = tuple(elements)
            self.tangibles = tuple(e for e in self.elements if is_tangible(e))
            self._index = {e: i for i, e in enumerate(self.elements)}
            self._quasi_zeros = frozenset(add(b, negate(b))
                                          for b in self.elements)
        else:
            self.elements = None
            self.tangibles = None
            self._index = None
            self._quasi_zeros = None
        self.sample_elements = (tuple(sample_elements)
                                if sample_elements is not None else None)
        self.sample_tangibles = (tuple(sample_tangibles)
                                 if sample_tangibles is not None else None)

    def __repr__(self):
        return f"System({self.name!r})"

    @property
    def is_finite(self):
        return self.elements is not None

    @property
    def is_unital(self):
        return self.one is not None

    def probe_elements(self):
        """(elements, exhaustive) — full carrier or the probe set."""
        if self.elements is not None:
            return self.elements, True
        if self.sample_elements is not None:
            return self.sample_elements, False
        raise ValueError(f"{self.name}: no enumeration or probe set")

    def probe_tangibles(self):
        if self.tangibles is not None:
            return self.tangibles, True
        if self.sample_tangibles is not None:
            return self.sample_tangibles, False
        raise ValueError(f"{self.name}: no tangible enumeration or probe set")

    def quasi_zero(self, b):
        """b (-) b, the quasi-zero built from b."""
        return self.add(b, self.negate(b))

    def is_quasi_zero(self, b):
        """Membership in the set of quasi-zeros.

        Finite instances decide by enumeration; infinite ones must supply
        a closed form (the existential definition is undecidable
        generically).
        """
        if self._is_quasi_zero is not None:
            return self._is_quasi_zero(b)
        if self._quasi_zeros is not None:
            return b in self._quasi_zeros
        raise ValueError(f"{self.name}: no quasi-zero test available")

    def preceq(self, a, b):
        """The surpassing relation: does b surpass a?

        Defaults to the "differs by adding a quasi-zero" relation, decided
        by searching the witness over the enumerated carrier; instances
        with infinite carriers supply a closed form instead.
        """
        if self._preceq is not None:
            return self._preceq(a, b)
        if self.elements is None:
            raise ValueError(f"{self.name}: no surpassing decision procedure")
        if a == b:
            return True
        return any(self.add(a, self.quasi_zero(c)) == b
                   for c in self.elements)

    def invert_tangible(self, a):
        """Multiplicative inverse of a tangible, or None if there is none."""
        if self._invert_tangible is not None:
            return self._invert_tangible(a)
        if self.one is None or self.tangibles is None:
            return None
        for t in self.tangibles:
            if self.mul(a, t) == self.one:
                return t
        return None

    def special_elements(self):
        """(e, e', e°) where e = 1 (-) 1, e' = e + 1, e° = e + e."""
        if self.one is None:
            raise NotUnital(f"{self.name} has no unit")
        e = self.quasi_zero(self.one)
        return e, self.add(e, self.one), self.add(e, e)

    def index(self, b):
        """Position of b in the canonical enumeration (finite only)."""
        return self._index[b]

    def format_element(self, b):
        if self._format is not None:
            return self._format(b)
        return repr(b)

    def parse_element(self, token):
        if self._parse is not None:
            return self._parse(token)
        raise ValueError(f"{self.name}: no element parser")


# ---------------------------------------------------------------------------
# derived classification predicates


@dataclass(frozen=True)
class NegationKindResult:
    kind: str            # "first" | "second" | "mixed"
    inspected: tuple     # the tangibles actually examined
    exhaustive: bool


def negation_kind(system):
    """Classify the negation map by its action on tangibles.

    "first" fixes every inspected tangible, "second" fixes none, "mixed"
    otherwise.  The result records the inspected set so callers know the
    scope of the claim.
    """
    tangibles, exhaustive = system.probe_tangibles()
    if not tangibles:
        raise ValueError(f"{system.name}: no tangibles to inspect")
    fixed = sum(1 for a in tangibles if system.negate(a) == a)
    if fixed == len(tangibles):
        kind = "first"
    elif fixed == 0:
        kind = "second"
    else:
        kind = "mixed"
    return NegationKindResult(kind, tuple(tangibles), exhaustive)


def characteristic(system, bound=None):
    """Least k with (k+1)·a = a for every probed a; 0 if provably none.

    n·a means the n-fold sum.  Walking each additive orbit up to the bound
    detects two proofs: a common recurrence period k (returned), or an
    orbit that enters a cycle not containing its start, which rules out
    every k at once and proves characteristic 0.  Returns None when the
    bound is exhausted without either proof.
    """
    bound = bound if bound is not None else from_env().characteristic
    probes, exhaustive = system.probe_elements()
    common = None
    for a in probes:
        recurs = set()
        seen = {a: 1}
        acc = a
        for m in range(2, bound + 2):
            acc = system.add(acc, a)
            if acc == a:
                recurs.add(m - 1)
            if acc in seen and acc != a:
                # orbit cycles without returning to a: no k can ever work
                break
            seen[acc] = m
        else:
            if not recurs:
                return None  # walk exhausted the bound, nothing proven
        if not recurs:
            # a provably never recurs; characteristic 0, but only an
            # exhaustively enumerated carrier may claim the proof
            return 0 if exhaustive else None
        # a recurs with fundamental period p; exactly its multiples work
        p = min(recurs)
        ks = {k for k in range(p, bound + 1) if k % p == 0}
        common = ks if common is None else (common & ks)
        if not common:
            return None
    if common is None:
        return None
    return min(common)


def height_of(system, b, bound=None):
    """Minimal number of tangibles summing to b, by breadth-first search.

    The zero element has height 0.  Returns None when no decomposition
    shows up within the bound (for finite instances with a stabilised
    level set this is a proof of non-generation).
    """
    bound = bound if bound is not None else from_env().height
    if b == system.zero:
        return 0
    tangibles, _ = system.probe_tangibles()
    level = set(tangibles)
    if b in level:
        return 1
    reached = set(level)
    for t in range(2, bound + 1):
        level = {system.add(x, a) for x in level for a in tangibles}
        if b in level:
            return t
        if level <= reached:
            return None  # level sets stabilised; b is unreachable
        reached |= level
    return None


def is_meta_tangible(system):
    """Sums of tangibles stay tangible unless they are quasi-negatives."""
    tangibles, _ = system.probe_tangibles()
    for a in tangibles:
        for b in tangibles:
            if b == system.negate(a):
                continue
            if not system.is_tangible(system.add(a, b)):
                return False
    return True


def is_minus_bipotent(system):
    """a + b lands in {a, b} for tangibles that are not quasi-negatives."""
    tangibles, _ = system.probe_tangibles()
    for a in tangibles:
        for b in tangibles:
            if b == system.negate(a):
                continue
            if system.add(a, b) not in (a, b):
                return False
    return True


def check_reversibility(system):
    """a <= b + c implies b <= a (-) c, for tangible a, b and any c.

    Exhaustive over the carrier; returns (True, None) or (False, (a, b, c)).
    """
    tangibles, _ = system.probe_tangibles()
    elements, _ = system.probe_elements()
    for a in tangibles:
        for b in tangibles:
            for c in elements:
                if system.preceq(a, system.add(b, c)):
                    if not system.preceq(b, system.add(a, system.negate(c))):
                        return False, (a, b, c)
    return True, None


def tangible_sum_trichotomy(system):
    """For tangibles a, b: a = (-)b, or a + b = a, or a° + b = b.

    Returns (True, None) or (False, (a, b)).  Only meaningful on
    meta-tangible instances; callers guard the precondition.
    """
    tangibles, _ = system.probe_tangibles()
    for a in tangibles:
        for b in tangibles:
            if a == system.negate(b):
                continue
            if system.add(a, b) == a:
                continue
            if system.add(system.quasi_zero(a), b) == b:
                continue
            return False, (a, b)
    return True, None


@dataclass(frozen=True)
class HeightTwoProfile:
    """Three equivalent descriptions of meta-tangible height-2 instances.

    cover:        tangibles plus quasi-zeros of tangibles-and-zero exhaust
                  the carrier
    height_le_2:  meta-tangible with every element of height at most 2
    e_prime_rule: meta-tangible with e' in {1, e}
    """

    cover: bool
    height_le_2: bool
    e_prime_rule: bool

    @property
    def agree(self):
        return self.cover == self.height_le_2 == self.e_prime_rule


def height_two_profile(system):
    """Evaluate the three height-2 characterisations on a finite instance."""
    if not system.is_finite:
        raise ValueError("height_two_profile needs a finite carrier")
    if system.one is None:
        raise NotUnital(f"{system.name} has no unit")
    covered = set(system.tangibles)
    covered.add(system.zero)
    for a in system.tangibles + (system.zero,):
        covered.add(system.quasi_zero(a))
    cover = covered == set(system.elements)

    meta = is_meta_tangible(system)
    heights = [height_of(system, b) for b in system.elements]
    height_le_2 = meta and all(h is not None and h <= 2 for h in heights)

    e, e_prime, _ = system.special_elements()
    e_prime_rule = meta and e_prime in (system.one, e)
    return HeightTwoProfile(cover, height_le_2, e_prime_rule)


# ---------------------------------------------------------------------------
# axiom audit


@dataclass(frozen=True)
class Axiom:
    name: str
    slots: str                  # one char per argument: e=element, t=tangible
    check: object               # check(system, *args) -> bool
    group: str                  # module | semiring | negation | triple | surpassing
    needs_unit: bool = False


def _uniquely_negated(s, a):
    tangibles, _ = s.probe_tangibles()
    hits = sum(1 for b in tangibles if s.is_quasi_zero(s.add(a, b)))
    return hits == 1


AXIOMS = tuple(
    Axiom(*spec) for spec in [
        ("add-associative", "eee",
         lambda s, a, b, c: s.add(s.add(a, b), c) == s.add(a, s.add(b, c)),
         "module"),
        ("add-commutative", "ee",
         lambda s, a, b: s.add(a, b) == s.add(b, a), "module"),
        ("add-identity", "e",
         lambda s, b: s.add(s.zero, b) == b, "module"),
        ("scalar-annihilates-zero", "t",
         lambda s, a: s.mul(a, s.zero) == s.zero, "module"),
        ("scalar-distributive", "tee",
         lambda s, a, b, c: s.mul(a, s.add(b, c))
         == s.add(s.mul(a, b), s.mul(a, c)), "module"),
        ("scalar-associative", "tte",
         lambda s, a, b, c: s.mul(s.mul(a, b), c) == s.mul(a, s.mul(b, c)),
         "module"),
        ("unit-scalar", "e",
         lambda s, b: s.mul(s.one, b) == b, "module", True),
        ("mul-associative", "eee",
         lambda s, a, b, c: s.mul(s.mul(a, b), c) == s.mul(a, s.mul(b, c)),
         "semiring"),
        ("mul-commutative", "ee",
         lambda s, a, b: s.mul(a, b) == s.mul(b, a), "semiring"),
        ("negate-involution", "e",
         lambda s, b: s.negate(s.negate(b)) == b, "negation"),
        ("negate-additive", "ee",
         lambda s, a, b: s.negate(s.add(a, b))
         == s.add(s.negate(a), s.negate(b)), "negation"),
        ("negate-scalar", "te",
         lambda s, a, b: s.negate(s.mul(a, b)) == s.mul(s.negate(a), b)
         == s.mul(a, s.negate(b)), "negation"),
        ("negate-preserves-tangibles", "t",
         lambda s, a: s.is_tangible(s.negate(a)), "negation"),
        ("tangibles-not-quasi-zero", "t",
         lambda s, a: not s.is_quasi_zero(a), "triple"),
        ("tangibles-generate", "e",
         lambda s, b: height_of(s, b) is not None, "triple"),
        ("uniquely-negated", "t", _uniquely_negated, "triple"),
        ("preceq-reflexive", "e",
         lambda s, b: s.preceq(b, b), "surpassing"),
        ("preceq-antisymmetric", "ee",
         lambda s, a, b: not (s.preceq(a, b) and s.preceq(b, a)) or a == b,
         "surpassing"),
        ("preceq-transitive", "eee",
         lambda s, a, b, c: not (s.preceq(a, b) and s.preceq(b, c))
         or s.preceq(a, c), "surpassing"),
        ("preceq-add-compatible", "eee",
         lambda s, a, b, c: not s.preceq(a, b)
         or s.preceq(s.add(a, c), s.add(b, c)), "surpassing"),
        ("preceq-scalar-compatible", "tee",
         lambda s, a, b, c: not s.preceq(b, c)
         or s.preceq(s.mul(a, b), s.mul(a, c)), "surpassing"),
        ("preceq-quasi-zero-witness", "ee",
         lambda s, a, b: s.preceq(a, s.add(a, s.quasi_zero(b))),
         "surpassing"),
        ("zero-surpassed-forces-negation", "tt",
         lambda s, a, b: not s.preceq(s.zero, s.add(a, b))
         or b == s.negate(a), "surpassing"),
    ]
)

AXIOMS_BY_NAME = {ax.name: ax for ax in AXIOMS}


@dataclass(frozen=True)
class AuditEntry:
    axiom: str
    passed: bool
    counterexample: tuple | None
    sampled: bool


@dataclass(frozen=True)
class AuditSummary:
    is_t_module: bool
    is_triple: bool
    is_system: bool
    is_meta_tangible: bool
    is_minus_bipotent: bool
    is_reversible: bool
    negation_kind: str | None
    characteristic: int | None
    max_height_observed: int | None
    sampled: bool


@dataclass(frozen=True)
class AxiomReport:
    system_name: str
    entries: tuple
    summary: AuditSummary

    def entry(self, name):
        for e in self.entries:
            if e.axiom == name:
                return e
        raise KeyError(name)

    def failures(self):
        return tuple(e for e in self.entries if not e.passed)

    def group_passed(self, group):
        return all(e.passed for e in self.entries
                   if AXIOMS_BY_NAME[e.axiom].group == group)

    def consistent_with_flags(self, flags):
        """Do the audited triple axioms match the declared classification?

        A pseudo-triple keeps the negation-map axioms but misses a
        triple-specific one (disjointness of tangibles from quasi-zeros,
        or additive generation by tangibles).  Other failures still show
        up as entries; this only checks the declared classification.
        """
        triple_ok = (self.group_passed("module")
                     and self.group_passed("negation")
                     and self.entry("tangibles-not-quasi-zero").passed
                     and self.entry("tangibles-generate").passed)
        if flags.is_triple:
            return triple_ok
        if flags.is_pseudo_triple_only:
            return (self.group_passed("negation")
                    and not (self.entry("tangibles-not-quasi-zero").passed
                             and self.entry("tangibles-generate").passed))
        return not triple_ok


def recheck_entry(system, entry):
    """Re-evaluate a failed entry's axiom on its stored counterexample.

    Returns True when the counterexample still falsifies the axiom.
    """
    axiom = AXIOMS_BY_NAME[entry.axiom]
    return not axiom.check(system, *entry.counterexample)


def audit_axioms(system):
    """Replay every axiom over the carrier (or probe set) and classify.

    Failures become report entries carrying a concrete counterexample;
    nothing raises.  The audit is pure: two runs return equal reports.
    """
    elements, exhaustive = system.probe_elements()
    tangibles, t_exhaustive = system.probe_tangibles()
    sampled = not (exhaustive and t_exhaustive)
    domains = {"e": elements, "t": tangibles}

    entries = []
    for axiom in AXIOMS:
        if axiom.needs_unit and system.one is None:
            continue
        counterexample = None
        for args in product(*(domains[slot] for slot in axiom.slots)):
            if not axiom.check(system, *args):
                counterexample = args
                break
        entries.append(AuditEntry(axiom.name, counterexample is None,
                                  counterexample, sampled))
    report = AxiomReport(system.name, tuple(entries), None)

    heights = [height_of(system, b) for b in elements]
    max_height = (max((h for h in heights if h is not None), default=0)
                  if all(h is not None for h in heights) else None)
    is_t_module = report.group_passed("module")
    is_triple = (is_t_module and report.group_passed("negation")
                 and report.entry("tangibles-not-quasi-zero").passed
                 and report.entry("tangibles-generate").passed
                 and bool(tangibles))
    is_system = is_triple and report.group_passed("surpassing")
    summary = AuditSummary(
        is_t_module=is_t_module,
        is_triple=is_triple,
        is_system=is_system,
        is_meta_tangible=is_meta_tangible(system) if tangibles else False,
        is_minus_bipotent=is_minus_bipotent(system) if tangibles else False,
        is_reversible=check_reversibility(system)[0] if tangibles else True,
        negation_kind=negation_kind(system).kind if tangibles else None,
        characteristic=characteristic(system),
        max_height_observed=max_height,
        sampled=sampled,
    )
    return AxiomReport(system.name, tuple(entries), summary)
