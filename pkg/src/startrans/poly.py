"""Sparse exact multivariate polynomials over a weighted-graded ring.

Monomials are exponent tuples; a polynomial is an immutable wrapper around a
``{exponents: coefficient}`` dict with no zero coefficients.  The ring fixes
the coefficient field, the variable names and their (positive integer)
weights, and the active monomial order.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from .errors import DimensionMismatch, IncompatibleField, ParseError


class Homogeneity(enum.Enum):
    NOT_HOMOGENEOUS = "not_homogeneous"
    ZERO = "zero"


@dataclass(frozen=True)
class MonomialOrder:
    """Order tags; only the defaults are implemented.

    ``graded reverse lexicographic`` on ring monomials (graded by weighted
    degree, declared variable order) and, for module terms, degree first
    (twists included), then position (lower basis index wins), then the ring
    order.  ``elim_first`` makes the first variable dominate everything;
    used internally for tag-variable elimination.
    """

    ring_order: str = "grevlex"
    module_order: str = "graded_pot"
    elim_first: bool = False


class PolyRing:
    """A weighted-graded polynomial ring over an exact field.

    ``quotient`` optionally carries the generators of a homogeneous ideal J;
    submodule computations then work modulo J by adjoining J-multiples of
    the basis vectors.  Rings compare equal on (field, names, weights) so
    that polynomials created before a quotient was attached stay usable.
    """

    __slots__ = ("field", "names", "weights", "order", "quotient", "_index")

    def __init__(self, field, names, weights=None, order=None, quotient=()):
        names = tuple(names)
        if weights is None:
            weights = (1,) * len(names)
        weights = tuple(int(w) for w in weights)
        if len(weights) != len(names):
            raise ValueError("one weight per variable required")
        if any(w < 1 for w in weights):
            raise ValueError("variable weights must be positive integers")
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        self.field = field
        self.names = names
        self.weights = weights
        self.order = order or MonomialOrder()
        self.quotient = tuple(quotient)
        self._index = {n: i for i, n in enumerate(names)}

    @property
    def nvars(self):
        return len(self.names)

    def compatible(self, other):
        return (
            self.field == other.field
            and self.names == other.names
            and self.weights == other.weights
        )

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.compatible(other)

    def __hash__(self):
        return hash((self.field, self.names, self.weights))

    def __repr__(self):
        vars_ = ", ".join(self.names)
        return f"PolyRing({self.field.name}; {vars_}; weights={self.weights})"

    def with_quotient(self, gens):
        return PolyRing(self.field, self.names, self.weights, self.order, tuple(gens))

    def with_order(self, order):
        return PolyRing(self.field, self.names, self.weights, order, self.quotient)

    # monomial helpers -------------------------------------------------

    def mono_degree(self, exps):
        return sum(w * e for w, e in zip(self.weights, exps))

    def mono_key(self, exps):
        """Sort key realizing the ring order (larger key = larger monomial)."""
        if self.order.elim_first:
            rest = exps[1:]
            deg = sum(w * e for w, e in zip(self.weights[1:], rest))
            return (exps[0], deg, tuple(-e for e in reversed(rest)))
        return (self.mono_degree(exps), tuple(-e for e in reversed(exps)))

    def mono_mul(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def mono_divides(self, a, b):
        return all(x <= y for x, y in zip(a, b))

    def mono_div(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def mono_lcm(self, a, b):
        return tuple(max(x, y) for x, y in zip(a, b))

    # constructors ------------------------------------------------------

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.constant(self.field.one)

    def constant(self, c):
        if self.field.is_zero(c):
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, i):
        exps = [0] * self.nvars
        exps[i] = 1
        return Polynomial(self, {tuple(exps): self.field.one})

    def monomial(self, exps, coeff=None):
        coeff = self.field.one if coeff is None else coeff
        if self.field.is_zero(coeff):
            return self.zero()
        return Polynomial(self, {tuple(exps): coeff})

    def from_terms(self, terms):
        acc = {}
        f = self.field
        for exps, c in terms:
            exps = tuple(exps)
            c0 = f.add(acc.get(exps, f.zero), c)
            if f.is_zero(c0):
                acc.pop(exps, None)
            else:
                acc[exps] = c0
        return Polynomial(self, acc)

    def parse(self, text):
        return parse_polynomial(self, text)


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to
    nonzero field scalars."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    def _check(self, other):
        if not self.ring.compatible(other.ring):
            raise IncompatibleField(
                f"operands over {self.ring!r} and {other.ring!r}"
            )

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        self._check(other)
        f = self.ring.field
        res = dict(self.terms)
        for m, c in other.terms.items():
            c0 = f.add(res.get(m, f.zero), c)
            if f.is_zero(c0):
                res.pop(m, None)
            else:
                res[m] = c0
        return Polynomial(self.ring, res)

    def __sub__(self, other):
        self._check(other)
        f = self.ring.field
        res = dict(self.terms)
        for m, c in other.terms.items():
            c0 = f.sub(res.get(m, f.zero), c)
            if f.is_zero(c0):
                res.pop(m, None)
            else:
                res[m] = c0
        return Polynomial(self.ring, res)

    def __neg__(self):
        f = self.ring.field
        return Polynomial(self.ring, {m: f.neg(c) for m, c in self.terms.items()})

    def __mul__(self, other):
        self._check(other)
        f = self.ring.field
        mul = self.ring.mono_mul
        res = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mul(m1, m2)
                c0 = f.add(res.get(m, f.zero), f.mul(c1, c2))
                if f.is_zero(c0):
                    res.pop(m, None)
                else:
                    res[m] = c0
        return Polynomial(self.ring, res)

    def scale(self, c):
        f = self.ring.field
        if f.is_zero(c):
            return self.ring.zero()
        return Polynomial(self.ring, {m: f.mul(c, v) for m, v in self.terms.items()})

    def mul_term(self, coeff, exps):
        """Multiply by the single term ``coeff * x^exps``."""
        f = self.ring.field
        if f.is_zero(coeff):
            return self.ring.zero()
        mul = self.ring.mono_mul
        return Polynomial(
            self.ring, {mul(m, exps): f.mul(coeff, c) for m, c in self.terms.items()}
        )

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.ring.compatible(other.ring)
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def lead(self):
        """The term that is largest in the ring order, as (exps, coeff)."""
        if not self.terms:
            return None
        m = max(self.terms, key=self.ring.mono_key)
        return m, self.terms[m]

    def sorted_terms(self):
        """Terms in decreasing ring order."""
        return sorted(
            self.terms.items(), key=lambda t: self.ring.mono_key(t[0]), reverse=True
        )

    def constant_coeff(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    def degree(self):
        """Largest weighted degree of a term; None for the zero polynomial."""
        if not self.terms:
            return None
        return max(self.ring.mono_degree(m) for m in self.terms)

    def homogeneous_degree(self):
        """Common weighted degree of all terms, or a Homogeneity sentinel."""
        if not self.terms:
            return Homogeneity.ZERO
        degs = {self.ring.mono_degree(m) for m in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return Homogeneity.NOT_HOMOGENEOUS

    def is_homogeneous_of(self, degree):
        if not self.terms:
            return True
        return self.homogeneous_degree() == degree

    def __repr__(self):
        return f"<{format_polynomial(self)}>"

    def __str__(self):
        return format_polynomial(self)


def order_compare(ring, exps1, exps2):
    """Compare monomials in the ring order: -1, 0 or 1."""
    if len(exps1) != len(exps2) or len(exps1) != ring.nvars:
        raise DimensionMismatch("monomials over different variable counts")
    k1, k2 = ring.mono_key(tuple(exps1)), ring.mono_key(tuple(exps2))
    if k1 < k2:
        return -1
    if k1 > k2:
        return 1
    return 0


# -- text syntax ---------------------------------------------------------
#
#   poly  :=  [sign] term { ('+'|'-') term }
#   term  :=  coeff [['*'] mono]  |  mono
#   coeff :=  INT [ '/' INT ]
#   mono  :=  NAME ['^' INT] { '*' NAME ['^' INT] }
#
# Whitespace is ignored everywhere.

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([-+*/^()]))")


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at position {pos}: {text[pos:]!r}")
        if m.group(1) is not None:
            out.append(("int", int(m.group(1))))
        elif m.group(2) is not None:
            out.append(("name", m.group(2)))
        else:
            out.append(("op", m.group(3)))
        pos = m.end()
    return out


def parse_polynomial(ring, text):
    """Parse the textual polynomial syntax into a Polynomial."""
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty polynomial")
    f = ring.field
    terms = []
    i = 0
    n = len(toks)

    def fail(msg):
        raise ParseError(f"{msg} in polynomial {text!r}")

    while i < n:
        sign = 1
        if toks[i] == ("op", "+"):
            i += 1
        elif toks[i] == ("op", "-"):
            sign = -1
            i += 1
        if i >= n:
            fail("dangling sign")
        coeff = None
        if toks[i][0] == "int":
            num = toks[i][1]
            i += 1
            den = 1
            if i < n and toks[i] == ("op", "/"):
                i += 1
                if i >= n or toks[i][0] != "int":
                    fail("bad fraction")
                den = toks[i][1]
                if den == 0:
                    fail("zero denominator")
                i += 1
            coeff = f.from_fraction(sign * num, den)
            if i < n and toks[i] == ("op", "*"):
                i += 1
                if i >= n or toks[i][0] != "name":
                    fail("expected variable after '*'")
        elif toks[i][0] == "name":
            coeff = f.from_int(sign)
        else:
            fail(f"unexpected token {toks[i][1]!r}")
        exps = [0] * ring.nvars
        while i < n and toks[i][0] == "name":
            name = toks[i][1]
            if name not in ring._index:
                fail(f"unknown variable {name!r}")
            i += 1
            e = 1
            if i < n and toks[i] == ("op", "^"):
                i += 1
                if i >= n or toks[i][0] != "int":
                    fail("bad exponent")
                e = toks[i][1]
                i += 1
            exps[ring._index[name]] += e
            if i < n and toks[i] == ("op", "*"):
                nxt = toks[i + 1] if i + 1 < n else None
                if nxt is not None and nxt[0] == "name":
                    i += 1
                    continue
                fail("expected variable after '*'")
        terms.append((tuple(exps), coeff))
        if i < n and toks[i][0] == "op" and toks[i][1] in "+-":
            continue
        if i < n:
            fail(f"unexpected token {toks[i][1]!r}")
    return ring.from_terms(terms)


def _coeff_is_negative(field, c):
    # only meaningful over the rationals; prime-field residues are canonical
    try:
        return c < 0
    except TypeError:
        return False


def format_polynomial(p):
    """Canonical text form: terms in decreasing order, exactpoly syntax."""
    ring = p.ring
    f = ring.field
    if p.is_zero():
        return "0"
    parts = []
    for exps, c in p.sorted_terms():
        factors = []
        for name, e in zip(ring.names, exps):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mono = "*".join(factors)
        neg = _coeff_is_negative(f, c)
        mag = f.neg(c) if neg else c
        if not mono:
            body = f.to_str(mag)
        elif mag == f.one:
            body = mono
        else:
            body = f"{f.to_str(mag)}*{mono}"
        parts.append((neg, body))
    first_neg, first_body = parts[0]
    out = ("-" if first_neg else "") + first_body
    for neg, body in parts[1:]:
        out += (" - " if neg else " + ") + body
    return out


# -- matrices ------------------------------------------------------------


class PolyMatrix:
    """Dense matrix of polynomials; rows index the target, columns the
    source (columns are images of source basis vectors)."""

    __slots__ = ("ring", "nrows", "ncols", "entries")

    def __init__(self, ring, entries, nrows=None, ncols=None):
        entries = tuple(tuple(row) for row in entries)
        if nrows is None:
            nrows = len(entries)
        if ncols is None:
            ncols = len(entries[0]) if entries else 0
        if len(entries) != nrows or any(len(row) != ncols for row in entries):
            raise DimensionMismatch(
                f"entries do not form a {nrows}x{ncols} matrix"
            )
        self.ring = ring
        self.nrows = nrows
        self.ncols = ncols
        self.entries = entries

    @classmethod
    def zeros(cls, ring, nrows, ncols):
        z = ring.zero()
        return cls(ring, [[z] * ncols for _ in range(nrows)], nrows, ncols)

    @classmethod
    def identity(cls, ring, n):
        z, o = ring.zero(), ring.one()
        return cls(ring, [[o if i == j else z for j in range(n)] for i in range(n)])

    def entry(self, i, j):
        return self.entries[i][j]

    def column(self, j):
        return tuple(self.entries[i][j] for i in range(self.nrows))

    def row(self, i):
        return self.entries[i]

    def __eq__(self, other):
        return (
            isinstance(other, PolyMatrix)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.entries == other.entries
        )

    def is_zero(self):
        return all(e.is_zero() for row in self.entries for e in row)

    def __add__(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionMismatch("matrix addition shape mismatch")
        return PolyMatrix(
            self.ring,
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ],
            self.nrows,
            self.ncols,
        )

    def __sub__(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionMismatch("matrix subtraction shape mismatch")
        return PolyMatrix(
            self.ring,
            [
                [a - b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ],
            self.nrows,
            self.ncols,
        )

    def scale(self, c):
        return PolyMatrix(
            self.ring,
            [[e.scale(c) for e in row] for row in self.entries],
            self.nrows,
            self.ncols,
        )

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise DimensionMismatch(
                f"cannot multiply {self.nrows}x{self.ncols} by "
                f"{other.nrows}x{other.ncols}"
            )
        z = self.ring.zero()
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = z
                for k in range(self.ncols):
                    e = self.entries[i][k]
                    g = other.entries[k][j]
                    if e.terms and g.terms:
                        acc = acc + e * g
                row.append(acc)
            out.append(row)
        return PolyMatrix(self.ring, out, self.nrows, other.ncols)

    def apply(self, coords):
        """Matrix-vector product; ``coords`` is a sequence of polynomials."""
        if len(coords) != self.ncols:
            raise DimensionMismatch("vector length does not match columns")
        z = self.ring.zero()
        out = []
        for i in range(self.nrows):
            acc = z
            for j, c in enumerate(coords):
                e = self.entries[i][j]
                if e.terms and c.terms:
                    acc = acc + e * c
            out.append(acc)
        return tuple(out)

    def transpose(self):
        return PolyMatrix(
            self.ring,
            [
                [self.entries[i][j] for i in range(self.nrows)]
                for j in range(self.ncols)
            ],
            self.ncols,
            self.nrows,
        )

    def hstack(self, other):
        if self.nrows != other.nrows:
            raise DimensionMismatch("hstack row mismatch")
        return PolyMatrix(
            self.ring,
            [r1 + r2 for r1, r2 in zip(self.entries, other.entries)],
            self.nrows,
            self.ncols + other.ncols,
        )

    def vstack(self, other):
        if self.ncols != other.ncols:
            raise DimensionMismatch("vstack column mismatch")
        return PolyMatrix(
            self.ring,
            self.entries + other.entries,
            self.nrows + other.nrows,
            self.ncols,
        )

    def check_homogeneous(self, target_degs, source_degs):
        """Verify entry (i, j) is zero or homogeneous of degree
        ``source_degs[j] - target_degs[i]``; returns the first offender as
        (i, j) or None."""
        if len(target_degs) != self.nrows or len(source_degs) != self.ncols:
            raise DimensionMismatch("degree vectors do not match matrix shape")
        for i in range(self.nrows):
            for j in range(self.ncols):
                e = self.entries[i][j]
                if e.is_zero():
                    continue
                if e.homogeneous_degree() != source_degs[j] - target_degs[i]:
                    return (i, j)
        return None

    def __repr__(self):
        rows = "; ".join(
            ", ".join(format_polynomial(e) for e in row) for row in self.entries
        )
        return f"PolyMatrix[{self.nrows}x{self.ncols}]({rows})"


def block_matrix(ring, blocks, row_dims, col_dims):
    """Assemble a block matrix; ``blocks[i][j]`` is a PolyMatrix or None for
    a zero block, with shapes prescribed by row_dims x col_dims."""
    out_rows = []
    for bi, rdim in enumerate(row_dims):
        rows = [[] for _ in range(rdim)]
        for bj, cdim in enumerate(col_dims):
            blk = blocks[bi][bj]
            if blk is None:
                z = ring.zero()
                for r in rows:
                    r.extend([z] * cdim)
            else:
                if blk.nrows != rdim or blk.ncols != cdim:
                    raise DimensionMismatch(
                        f"block ({bi},{bj}) is {blk.nrows}x{blk.ncols}, "
                        f"expected {rdim}x{cdim}"
                    )
                for r, src in zip(rows, blk.entries):
                    r.extend(src)
        out_rows.extend(rows)
    total_cols = sum(col_dims)
    return PolyMatrix(ring, out_rows, sum(row_dims), total_cols)
