"""Puiseux series, the minimum-exponent valuation, tropicalization, and
valuated matroids.

Series are finite formal sums c * t^(k/N) with exact rational
coefficients and exponents; the valuation reads the least exponent and
sends the zero series to the +inf sentinel, which is exactly the zero of
the min-plus carrier that tropicalized polynomials live in.  (The other
shipped carriers run max-plus; the two are order-dual builds of the same
family.)

Valuated-matroid tables take values in min-plus-encoded rationals with
the +inf sentinel for non-bases.  In the multiplicative order of that
value group the sentinel sits at the bottom, so the exchange-axiom
comparison reverses the usual rational order; the tables built from
Puiseux minors satisfy the axiom in exactly this orientation.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from math import lcm

from .budgets import from_env
from .errors import BudgetExceeded, FormatError, ShapeError
from .polysys import Polynomial


@dataclass(frozen=True)
class PuiseuxSeries:
    terms: tuple   # ((exponent, coefficient), ...) sorted, no zeros

    @classmethod
    def from_terms(cls, pairs):
        acc = {}
        for exp, coeff in pairs:
            exp, coeff = Fraction(exp), Fraction(coeff)
            acc[exp] = acc.get(exp, Fraction(0)) + coeff
        return cls(tuple(sorted((e, c) for e, c in acc.items() if c != 0)))

    @classmethod
    def zero(cls):
        return cls(())

    @classmethod
    def monomial(cls, coeff, exp=Fraction(0)):
        return cls.from_terms([(exp, coeff)])

    @property
    def is_zero(self):
        return not self.terms

    @property
    def denominator(self):
        """Common denominator N of the support exponents (1 when empty)."""
        return lcm(*(e.denominator for e, _ in self.terms)) if self.terms else 1

    def val(self):
        """Least exponent of the support; None (the +inf sentinel) for
        the zero series."""
        return self.terms[0][0] if self.terms else None

    def __add__(self, other):
        return PuiseuxSeries.from_terms(self.terms + other.terms)

    def __neg__(self):
        return PuiseuxSeries(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        pairs = [(e1 + e2, c1 * c2) for e1, c1 in self.terms
                 for e2, c2 in other.terms]
        return PuiseuxSeries.from_terms(pairs)

    def format(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            parts.append(str(c) if e == 0 else f"{c}*t^({e})")
        return "+".join(parts)


def parse_puiseux(token):
    """Parse "c*t^(k/N)" terms joined by '+' (spaces allowed)."""
    token = token.replace(" ", "")
    if token in ("", "0"):
        return PuiseuxSeries.zero()
    terms = []
    depth = 0
    chunk = ""
    chunks = []
    for ch in token:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "+" and depth == 0 and chunk:
            chunks.append(chunk)
            chunk = ""
        else:
            chunk += ch
    if chunk:
        chunks.append(chunk)
    for part in chunks:
        coeff_tok, sep, exp_tok = part.partition("*t^(")
        try:
            if sep:
                if not exp_tok.endswith(")"):
                    raise ValueError("unbalanced exponent")
                terms.append((Fraction(exp_tok[:-1]), Fraction(coeff_tok)))
            else:
                terms.append((Fraction(0), Fraction(part)))
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"bad series term {part!r}: {exc}")
    return PuiseuxSeries.from_terms(terms)


def puiseux_val(p):
    return p.val()


# ---------------------------------------------------------------------------
# polynomials with Puiseux coefficients


@dataclass(frozen=True)
class PuiseuxPolynomial:
    nvars: int
    terms: tuple   # ((exponent tuple, PuiseuxSeries), ...) sorted, no zeros

    @classmethod
    def of(cls, nvars, pairs):
        acc = {}
        for exps, series in pairs:
            exps = tuple(exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ShapeError(f"bad exponent tuple {exps}")
            acc[exps] = acc.get(exps, PuiseuxSeries.zero()) + series
        return cls(nvars, tuple(sorted((e, s) for e, s in acc.items()
                                       if not s.is_zero)))

    def __add__(self, other):
        return PuiseuxPolynomial.of(self.nvars,
                                    self.terms + other.terms)

    def __mul__(self, other):
        pairs = []
        for e1, s1 in self.terms:
            for e2, s2 in other.terms:
                pairs.append((tuple(a + b for a, b in zip(e1, e2)), s1 * s2))
        return PuiseuxPolynomial.of(self.nvars, pairs)

    def coefficient(self, exps):
        for e, s in self.terms:
            if e == tuple(exps):
                return s
        return PuiseuxSeries.zero()

    def support(self):
        return tuple(e for e, _ in self.terms)

    def format(self):
        parts = []
        for exps, series in self.terms:
            body = series.format()
            factors = " ".join(f"x{i + 1}^{e}" if e > 1 else f"x{i + 1}"
                               for i, e in enumerate(exps) if e)
            parts.append(f"{body} * {factors}" if factors else body)
        return f"puiseux; vars={self.nvars}; " + (" + ".join(parts)
                                                  if parts else "<empty>")


def parse_puiseux_poly(text):
    head, sep, rest = text.strip().partition(";")
    if not sep or head.strip() != "puiseux":
        raise FormatError("expected 'puiseux; vars=n; terms'")
    vars_part, sep, body = rest.strip().partition(";")
    if not sep or not vars_part.strip().startswith("vars="):
        raise FormatError("expected 'vars=n'")
    nvars = int(vars_part.strip()[5:])
    pairs = []
    body = body.strip()
    if body and body != "<empty>":
        for chunk in body.split(" + "):
            coeff_tok, sep, factors = chunk.strip().partition(" * ")
            series = parse_puiseux(coeff_tok.strip())
            exps = [0] * nvars
            if sep:
                for factor in factors.split():
                    if not factor.startswith("x"):
                        raise FormatError(f"bad factor {factor!r}")
                    name, _, power = factor.partition("^")
                    idx = int(name[1:])
                    if not 1 <= idx <= nvars:
                        raise FormatError(f"variable x{idx} out of range")
                    exps[idx - 1] += int(power) if power else 1
            pairs.append((tuple(exps), series))
    return PuiseuxPolynomial.of(nvars, pairs)


def trop_poly(P, resolve):
    """Coefficient-wise valuation into the min-plus carrier.

    Zero-series coefficients have no support and drop their monomials.
    """
    target = resolve("minplus")
    terms = [(exps, series.val()) for exps, series in P.terms]
    return Polynomial.of(target, P.nvars,
                         [(e, v) for e, v in terms if v is not None])


def supertropicalize_poly(P, resolve):
    """Same valuation map, taken to the supertropical min-plus carrier."""
    target = resolve("supertropical:minplus")
    terms = [(exps, series.val()) for exps, series in P.terms]
    return Polynomial.of(target, P.nvars,
                         [(e, ("t", v)) for e, v in terms if v is not None])


def normalize_at(P, exps):
    """Scale so the chosen coefficient becomes the unit series.

    Exact only when that coefficient is a single-term series; a general
    series inverse has infinite support, so anything else is rejected.
    """
    series = P.coefficient(exps)
    if series.is_zero:
        raise ValueError(f"{tuple(exps)} is not in the support")
    if len(series.terms) != 1:
        raise ValueError("normalization needs a single-term coefficient")
    exp, coeff = series.terms[0]
    scale = PuiseuxSeries.monomial(Fraction(1) / coeff, -exp)
    return PuiseuxPolynomial.of(P.nvars,
                                [(e, s * scale) for e, s in P.terms])


# ---------------------------------------------------------------------------
# valuated matroids (min-plus encoded: None is the +inf sentinel)


def gamma_le(x, y):
    """The value-group order with the sentinel at the bottom.

    Encoded min-plus, the multiplicative order of the value group runs
    opposite to the rational order, with the +inf sentinel least.
    """
    if x is None:
        return True
    if y is None:
        return False
    return x >= y


def gamma_mul(x, y):
    if x is None or y is None:
        return None
    return x + y


@dataclass(frozen=True)
class ValuatedMatroidTable:
    ground: tuple
    rank: int
    values: dict   # tuple of ground labels -> Fraction; missing means 0

    def value(self, labels):
        return self.values.get(tuple(labels))

    @classmethod
    def from_basis_values(cls, ground, rank, basis_values):
        """Build a total table from values on sorted label tuples,
        spreading them over all permutations."""
        values = {}
        for labels, v in basis_values.items():
            if v is None:
                continue
            for perm in permutations(labels):
                values[perm] = v
        return cls(tuple(ground), rank, values)


def valuated_matroid_check(M, bounds=None):
    """The three defining laws, checked exhaustively.

    (i) some basis value is not the sentinel; (ii) values are invariant
    under permutations and vanish on repeated entries; (iii) for every
    pair of tuples some single swap of the lead element does not decrease
    the product of values (in the value-group order).  Returns (True,
    None) or (False, ("i"|"ii"|"iii", witness)).
    """
    b = bounds if bounds is not None else from_env()
    if len(M.ground) > b.matroid_ground or M.rank > b.matroid_rank:
        raise BudgetExceeded("ground set or rank exceeds the check budget")
    E, m = M.ground, M.rank

    if not any(M.value(t) is not None for t in product(E, repeat=m)):
        return False, ("i", None)

    for t in product(E, repeat=m):
        v = M.value(t)
        if len(set(t)) < m:
            if v is not None:
                return False, ("ii", t)
            continue
        for perm in permutations(t):
            if M.value(perm) != v:
                return False, ("ii", (t, perm))

    for left in product(E, repeat=m + 1):
        e0, rest = left[0], left[1:]
        for right_tail in product(E, repeat=m - 1):
            lhs = gamma_mul(M.value(rest), M.value((e0,) + right_tail))
            ok = False
            for i in range(m):
                swapped = (e0,) + rest[:i] + rest[i + 1:]
                other = (rest[i],) + right_tail
                rhs = gamma_mul(M.value(swapped), M.value(other))
                if gamma_le(lhs, rhs):
                    ok = True
                    break
            if not ok:
                return False, ("iii", (left, right_tail))
    return True, None


def puiseux_det(rows):
    """Classical signed determinant over the Puiseux field."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ShapeError("determinant needs a square matrix")
    acc = PuiseuxSeries.zero()
    for perm in permutations(range(n)):
        term = PuiseuxSeries.monomial(Fraction(1))
        for i in range(n):
            term = term * rows[i][perm[i]]
        inversions = sum(1 for i, j in combinations(range(n), 2)
                         if perm[i] > perm[j])
        acc = acc + (-term if inversions & 1 else term)
    return acc


def matroid_from_minors(rows, rank, bounds=None):
    """Valuations of maximal minors of a Puiseux matrix, as a table.

    The matrix has `rank` rows; ground labels are the 1-based column
    numbers; each tuple's value is the valuation of the corresponding
    square minor (repeats give the zero series, hence the sentinel).
    """
    b = bounds if bounds is not None else from_env()
    if len(rows) != rank:
        raise ShapeError("matrix must have `rank` rows")
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise ShapeError("ragged matrix")
    if ncols > b.matroid_ground or rank > b.matroid_rank:
        raise BudgetExceeded("matrix exceeds the matroid budget")
    ground = tuple(range(1, ncols + 1))
    values = {}
    for labels in product(ground, repeat=rank):
        minor = [[rows[i][j - 1] for j in labels] for i in range(rank)]
        v = puiseux_det(minor).val()
        if v is not None:
            values[labels] = v
    return ValuatedMatroidTable(ground, rank, values)


# ---------------------------------------------------------------------------
# matrix-of-series files reuse the matrix envelope with the name "puiseux"


def parse_puiseux_matrix(text):
    lines = text.splitlines()
    header = None
    body_start = 0
    for i, ln in enumerate(lines):
        if ln.strip():
            header = ln.split()
            body_start = i + 1
            break
    if header is None or len(header) != 3 or header[2] != "puiseux":
        raise FormatError("expected header 'rows cols puiseux'", line=1)
    rows, cols = int(header[0]), int(header[1])
    tokens = []
    for i, ln in enumerate(lines[body_start:], start=body_start + 1):
        tokens.extend((tok, i) for tok in ln.split())
    if len(tokens) != rows * cols:
        raise FormatError(f"expected {rows * cols} entries, found "
                          f"{len(tokens)}")
    series = [parse_puiseux(tok) for tok, _ in tokens]
    return [series[r * cols:(r + 1) * cols] for r in range(rows)]
