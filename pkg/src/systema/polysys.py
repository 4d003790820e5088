"""Polynomials over a carrier, viewed as functions.

Polynomials are formal lists of monomials with tangible coefficients
(the monomials are the tangibles of the polynomial carrier).  Formal and
functional views stay distinct: nothing is ever identified by values
implicitly; only the equivalences below compare behaviours.

The strict constructor combines repeated exponent tuples when the
combined coefficient stays tangible and rejects the input otherwise;
:meth:`Polynomial.formal_sum` keeps the repeats as a formal multiset,
which the bend machinery needs (deleting one copy of a repeated monomial
is a legitimate move).
"""

from dataclasses import dataclass
from itertools import combinations_with_replacement, product

from .budgets import from_env
from .errors import BudgetExceeded, FormatError, ShapeError, SystemMismatch


@dataclass(frozen=True)
class Monomial:
    exponents: tuple
    coeff: object


@dataclass(frozen=True)
class Polynomial:
    system: object
    nvars: int
    monomials: tuple

    @classmethod
    def of(cls, system, nvars, terms):
        """Strict constructor: equal exponent tuples are pre-combined,
        and the input is rejected when the combined coefficient leaves
        the tangibles."""
        merged = {}
        order = []
        for exps, coeff in terms:
            exps = tuple(exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ShapeError(f"bad exponent tuple {exps}")
            if not system.is_tangible(coeff):
                raise ValueError("monomial coefficients must be tangible")
            if exps in merged:
                combined = system.add(merged[exps], coeff)
                if not system.is_tangible(combined):
                    raise ValueError(
                        "repeated exponents combine to a non-tangible "
                        "coefficient; use formal_sum to keep the repeats")
                merged[exps] = combined
            else:
                merged[exps] = coeff
                order.append(exps)
        monos = [Monomial(e, merged[e]) for e in order]
        return cls(system, nvars, cls._sorted(system, monos))

    @classmethod
    def formal_sum(cls, system, nvars, terms):
        """Formal multiset of monomials; repeated exponents stay."""
        monos = []
        for exps, coeff in terms:
            exps = tuple(exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ShapeError(f"bad exponent tuple {exps}")
            if not system.is_tangible(coeff):
                raise ValueError("monomial coefficients must be tangible")
            monos.append(Monomial(exps, coeff))
        return cls(system, nvars, cls._sorted(system, monos))

    @staticmethod
    def _sorted(system, monos):
        key = lambda m: (m.exponents, system.format_element(m.coeff))
        return tuple(sorted(monos, key=key))

    def __len__(self):
        return len(self.monomials)

    def eval(self, point):
        """Sum over monomials of coeff times the monomial at the point."""
        s = self.system
        if len(point) != self.nvars:
            raise ShapeError(f"expected {self.nvars} coordinates")
        acc = None
        for mono in self.monomials:
            term = mono.coeff
            for value, e in zip(point, mono.exponents):
                for _ in range(e):
                    term = s.mul(term, value)
            acc = term if acc is None else s.add(acc, term)
        return acc if acc is not None else s.zero

    def degree(self):
        return max((sum(m.exponents) for m in self.monomials), default=0)

    def format(self):
        s = self.system
        parts = []
        for mono in self.monomials:
            body = [s.format_element(mono.coeff)]
            for i, e in enumerate(mono.exponents):
                if e == 1:
                    body.append(f"x{i + 1}")
                elif e > 1:
                    body.append(f"x{i + 1}^{e}")
            parts.append(" * ".join([body[0]] + [" ".join(body[1:])])
                         if len(body) > 1 else body[0])
        terms = " + ".join(parts) if parts else "<empty>"
        return f"{s.name}; vars={self.nvars}; {terms}"


def eval_poly(f, point):
    return f.eval(point)


def poly_add(f, g):
    """Formal sum of the monomial lists."""
    if f.system is not g.system or f.nvars != g.nvars:
        raise SystemMismatch("polynomials must share system and arity")
    return Polynomial(f.system, f.nvars,
                      Polynomial._sorted(f.system,
                                         list(f.monomials) + list(g.monomials)))


def scale_poly(f, a):
    """Left-multiply every coefficient by a tangible scalar."""
    s = f.system
    if not s.is_tangible(a):
        raise ValueError("scalar must be tangible")
    monos = [Monomial(m.exponents, s.mul(a, m.coeff)) for m in f.monomials]
    if any(not s.is_tangible(m.coeff) for m in monos):
        raise ValueError("scaling left the tangibles")
    return Polynomial(s, f.nvars, Polynomial._sorted(s, monos))


def default_domain(system):
    """(points, exhaustive): the full carrier, or the documented probes."""
    return system.probe_elements()


def circ_supp(f, domain):
    """Points where the evaluation lands in the tangibles."""
    s = f.system
    return tuple(p for p in domain if s.is_tangible(f.eval([p] if f.nvars == 1
                                                           else p)))


def _point(f, p):
    return [p] if f.nvars == 1 else p


def is_preceq_root(f, point):
    """Does the evaluation surpass zero?"""
    s = f.system
    return s.preceq(s.zero, f.eval(point))


def preceq_roots(f, domain):
    return tuple(p for p in domain if is_preceq_root(f, _point(f, p)))


def circ_equivalent(f, g, domain):
    """Equal quasi-zeros of the evaluations at every domain point.

    Returns (equivalent, distinguishing point or None).
    """
    if f.system is not g.system or f.nvars != g.nvars:
        raise SystemMismatch("polynomials must share system and arity")
    s = f.system
    for p in domain:
        pt = _point(f, p)
        if s.quasi_zero(f.eval(pt)) != s.quasi_zero(g.eval(pt)):
            return False, p
    return True, None


def bend_neighbors(f):
    """One-step deletions: f with one monomial removed, per occurrence."""
    out = []
    seen = set()
    for i in range(len(f.monomials)):
        rest = f.monomials[:i] + f.monomials[i + 1:]
        poly = Polynomial(f.system, f.nvars, rest)
        if poly.monomials not in seen:
            seen.add(poly.monomials)
            out.append(poly)
    return tuple(out)


def bend_equivalent(f, g, domain):
    """The bend relation, decided through the equality of quasi-zero
    behaviours (the two relations coincide); (bool, distinguishing point).
    """
    return circ_equivalent(f, g, domain)


def bend_chain_search(f, g, domain, depth=None):
    """Bounded chain search validating bend equivalence directly.

    States are formal monomial multisets drawn from the two inputs'
    monomial pool (multiplicity capped by the pool count); a legal move
    deletes or re-adds one pool monomial while preserving quasi-zero
    behaviour on the domain.  Returns True when a chain reaches g, False
    when the reachable component is exhausted without meeting g, None
    when the depth cap cuts the search early.
    """
    if f.system is not g.system or f.nvars != g.nvars:
        raise SystemMismatch("polynomials must share system and arity")
    depth = depth if depth is not None else from_env().bend_depth
    s = f.system

    pool = {}
    for mono in f.monomials + g.monomials:
        pool[mono] = pool.get(mono, 0) + 1
    pool_items = sorted(pool, key=lambda m: (m.exponents,
                                             s.format_element(m.coeff)))

    def state_of(poly):
        counts = {}
        for mono in poly.monomials:
            counts[mono] = counts.get(mono, 0) + 1
        return tuple(sorted(((pool_items.index(m), c)
                             for m, c in counts.items())))

    def poly_of(state):
        monos = []
        for idx, c in state:
            monos.extend([pool_items[idx]] * c)
        return Polynomial(s, f.nvars, Polynomial._sorted(s, monos))

    if any(m not in pool for m in f.monomials + g.monomials):
        return None
    start, goal = state_of(f), state_of(g)
    if start == goal:
        return True

    def neighbors(state):
        counts = dict(state)
        for idx in range(len(pool_items)):
            c = counts.get(idx, 0)
            if c > 0:
                nxt = dict(counts)
                nxt[idx] = c - 1
                if nxt[idx] == 0:
                    del nxt[idx]
                yield tuple(sorted(nxt.items()))
            if c < pool[pool_items[idx]]:
                nxt = dict(counts)
                nxt[idx] = c + 1
                yield tuple(sorted(nxt.items()))

    frontier = [start]
    seen = {start}
    for _ in range(depth):
        new_frontier = []
        for state in frontier:
            p_state = poly_of(state)
            for nxt in neighbors(state):
                if nxt in seen:
                    continue
                ok, _ = circ_equivalent(p_state, poly_of(nxt), domain)
                if not ok:
                    continue
                if nxt == goal:
                    return True
                seen.add(nxt)
                new_frontier.append(nxt)
        frontier = new_frontier
        if not frontier:
            return False
    return None if frontier else False


def tropical_ideal_check(polys, domain, budget=None):
    """Pairwise cancellation on shared tangible support.

    For every pair f, g and every point s where both evaluate tangibly,
    some tangible scalars a, b must drive a f(s) (-) b g(s) out of the
    tangibles.  Returns (True, None) or (False, (i, j, s)); the scalar
    search is exhaustive over the tangible enumeration within the budget.
    """
    if not polys:
        return True, None
    s = polys[0].system
    tangibles, exhaustive = s.probe_tangibles()
    if not exhaustive:
        raise ValueError("coefficient search needs an enumerable tangible "
                         "set")
    budget = budget if budget is not None else from_env().search_nodes
    count = 0
    supports = [circ_supp(f, domain) for f in polys]
    for i in range(len(polys)):
        for j in range(i, len(polys)):
            shared = [p for p in supports[i] if p in supports[j]]
            for p in shared:
                fi = polys[i].eval(_point(polys[i], p))
                gj = polys[j].eval(_point(polys[j], p))
                found = False
                for a, b in product(tangibles, repeat=2):
                    count += 1
                    if count > budget:
                        raise BudgetExceeded("scalar search exceeded budget")
                    value = s.add(s.mul(a, fi), s.negate(s.mul(b, gj)))
                    if not s.is_tangible(value):
                        found = True
                        break
                if not found:
                    return False, (i, j, p)
    return True, None


def enumerate_polynomials(system, nvars, max_degree):
    """Every strict polynomial with exponents bounded by the degree.

    Univariate only; used by exhaustive cross-checks on finite carriers.
    """
    if nvars != 1:
        raise ValueError("enumeration is univariate")
    tangibles, exhaustive = system.probe_tangibles()
    if not exhaustive:
        raise ValueError("needs an enumerable tangible set")
    slots = list(range(max_degree + 1))
    out = []
    for choices in product([None] + list(tangibles), repeat=len(slots)):
        terms = [((e,), c) for e, c in zip(slots, choices) if c is not None]
        out.append(Polynomial.of(system, 1, terms))
    return out


# ---------------------------------------------------------------------------
# text format: "<instance>; vars=n; c * x1^2 x3 + c * x2 + c"


def parse_poly(text, resolve):
    head, sep, rest = text.strip().partition(";")
    if not sep:
        raise FormatError("expected '<instance>; vars=n; terms'")
    try:
        system = resolve(head.strip())
    except ValueError as exc:
        raise FormatError(str(exc))
    vars_part, sep, body = rest.strip().partition(";")
    if not sep or not vars_part.strip().startswith("vars="):
        raise FormatError("expected 'vars=n' after the instance name")
    try:
        nvars = int(vars_part.strip()[5:])
    except ValueError:
        raise FormatError("vars= needs an integer")
    body = body.strip()
    terms = []
    if body and body != "<empty>":
        for chunk in body.split(" + "):
            chunk = chunk.strip()
            coeff_tok, sep, factors = chunk.partition("*")
            coeff_tok = coeff_tok.strip()
            try:
                coeff = system.parse_element(coeff_tok)
            except (ValueError, ZeroDivisionError) as exc:
                raise FormatError(f"bad coefficient {coeff_tok!r}: {exc}")
            exps = [0] * nvars
            if sep:
                for factor in factors.split():
                    if not factor.startswith("x"):
                        raise FormatError(f"bad factor {factor!r}")
                    name, _, power = factor.partition("^")
                    try:
                        idx = int(name[1:])
                        e = int(power) if power else 1
                    except ValueError:
                        raise FormatError(f"bad factor {factor!r}")
                    if not 1 <= idx <= nvars:
                        raise FormatError(f"variable x{idx} out of range")
                    exps[idx - 1] += e
            terms.append((tuple(exps), coeff))
    return Polynomial.of(system, nvars, terms)
