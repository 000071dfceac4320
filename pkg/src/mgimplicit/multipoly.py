"""Exact multivariate polynomials over Q, in two flavours of ring.

A *parameter ring* is a polynomial ring whose variables come in blocks
(one block per projective factor) and is graded by the per-block total
degree, an integer vector.  A *target ring* is an ordinary standard-graded
polynomial ring ``k[T_0..T_n]``.  Both are carried by a :class:`PolyRing`
value; a polynomial never mixes variables of two rings.

Representation: a term map ``exponent tuple -> coefficient`` with dense
exponent tuples (variable counts here are tiny) and no zero coefficients
stored.  Coefficients are exact rationals; integral values are stored as
plain ``int`` for speed.

The canonical term order is graded lexicographic, blocks by index,
variables by position inside a block, ``T_0 > T_1 > ... > T_n``; printing
and iteration are always in descending canonical order, so rendered
polynomials are byte-stable.

Text grammar (also in the README)::

    poly   ::= ['+'|'-'] term (('+'|'-') term)*
    term   ::= coeff ['*' factors] | factors
    factors::= factor ('*' factor)*
    factor ::= var ['^' nat]
    coeff  ::= nat ['/' nat]

with explicit ``*`` between all factors.  ``"0"`` denotes the zero
polynomial.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm

from .linalg import Rational, _whole


class PolyParseError(ValueError):
    """Malformed polynomial text (carries a character position)."""

    def __init__(self, message, pos=None):
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)
        self.pos = pos


class RingMismatchError(ValueError):
    """Operands live in different rings."""


class NotMultihomogeneousError(ValueError):
    """Polynomial has terms of different block degrees (or is zero)."""


@dataclass(frozen=True)
class PolyRing:
    """Variable context for :class:`MultiPoly`.

    ``kind`` is ``"parameter"`` or ``"target"``; ``block_sizes`` gives the
    number of variables per block for parameter rings (``r_i + 1`` each)
    and is ``None`` for target rings.
    """

    kind: str
    names: tuple[str, ...]
    block_sizes: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("parameter", "target"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        if self.kind == "parameter":
            if self.block_sizes is None or sum(self.block_sizes) != len(self.names):
                raise ValueError("block sizes do not cover the variable names")
            if any(b < 1 for b in self.block_sizes):
                raise ValueError("every block needs at least one variable")
        elif self.block_sizes is not None:
            raise ValueError("target rings have no blocks")

    @cached_property
    def index(self):
        return {name: i for i, name in enumerate(self.names)}

    @cached_property
    def block_slices(self):
        if self.block_sizes is None:
            return ((0, len(self.names)),)
        out = []
        start = 0
        for size in self.block_sizes:
            out.append((start, start + size))
            start += size
        return tuple(out)

    @property
    def nvars(self):
        return len(self.names)

    def block_degrees(self, exps):
        """Per-block total degree of an exponent tuple."""
        return tuple(sum(exps[a:b]) for a, b in self.block_slices)


def parameter_ring(blocks) -> PolyRing:
    """Build the block-graded ring from name groups, e.g. ``[["s","u"],["t","v"]]``."""
    groups = [tuple(g) for g in blocks]
    if not groups:
        raise ValueError("need at least one block")
    names = tuple(n for g in groups for n in g)
    return PolyRing("parameter", names, tuple(len(g) for g in groups))


def target_ring(names_or_count) -> PolyRing:
    """Build the standard-graded ring, from names or as ``T_0..T_{n}``."""
    if isinstance(names_or_count, int):
        names = tuple(f"T_{i}" for i in range(names_or_count))
    else:
        names = tuple(names_or_count)
    return PolyRing("target", names)


def _term_key(exps):
    return (sum(exps), exps)


class MultiPoly:
    """Immutable-by-convention exact polynomial attached to a :class:`PolyRing`."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, ring):
        return cls(ring, {})

    @classmethod
    def constant(cls, ring, c):
        c = _whole(Fraction(c) if not isinstance(c, (int, Fraction)) else c)
        if c == 0:
            return cls.zero(ring)
        return cls(ring, {(0,) * ring.nvars: c})

    @classmethod
    def monomial(cls, ring, exps, coeff=1):
        coeff = _whole(coeff)
        if coeff == 0:
            return cls.zero(ring)
        return cls(ring, {tuple(exps): coeff})

    @classmethod
    def variable(cls, ring, name):
        i = ring.index.get(name)
        if i is None:
            raise ValueError(f"unknown variable {name!r}")
        exps = [0] * ring.nvars
        exps[i] = 1
        return cls.monomial(ring, exps)

    @classmethod
    def from_terms(cls, ring, items):
        acc = {}
        for exps, c in items:
            exps = tuple(exps)
            c0 = acc.get(exps, 0) + c
            if c0:
                acc[exps] = c0
            else:
                acc.pop(exps, None)
        return cls(ring, {e: _whole(c) for e, c in acc.items()})

    # -- basic queries -----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def total_degree(self):
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return max(sum(e) for e in self.terms)

    def coeff(self, exps):
        return self.terms.get(tuple(exps), 0)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _term_key(kv[0]), reverse=True)

    def leading(self):
        """(exponents, coefficient) of the canonical leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms, key=_term_key)
        return exps, self.terms[exps]

    # -- arithmetic --------------------------------------------------------

    def _check_ring(self, other):
        if self.ring != other.ring:
            raise RingMismatchError("operands live in different rings")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.ring, other)
        self._check_ring(other)
        acc = dict(self.terms)
        for e, c in other.terms.items():
            c0 = acc.get(e, 0) + c
            if c0:
                acc[e] = _whole(c0)
            else:
                acc.pop(e, None)
        return MultiPoly(self.ring, acc)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.ring, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = _whole(c)
        if c == 0:
            return MultiPoly.zero(self.ring)
        return MultiPoly(self.ring, {e: _whole(k * c) for e, k in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_ring(other)
        if not self.terms or not other.terms:
            return MultiPoly.zero(self.ring)
        acc = {}
        get = acc.get
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                c0 = get(e, 0) + ca * cb
                if c0:
                    acc[e] = c0
                else:
                    del acc[e]
        return MultiPoly(self.ring, {e: _whole(c) for e, c in acc.items()})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        out = MultiPoly.constant(self.ring, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.ring, other)
        return (
            isinstance(other, MultiPoly)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- printing ----------------------------------------------------------

    def _monomial_str(self, exps):
        parts = []
        for name, e in zip(self.ring.names, exps):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for exps, c in self.sorted_terms():
            mono = self._monomial_str(exps)
            neg = c < 0
            a = -c if neg else c
            if mono:
                body = mono if a == 1 else f"{a}*{mono}"
            else:
                body = str(a)
            pieces.append((neg, body))
        neg0, body0 = pieces[0]
        out = [("-" if neg0 else "") + body0]
        for neg, body in pieces[1:]:
            out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"MultiPoly({self})"


def monomial_str(ring, exps):
    """Canonical rendering of a single monomial (``1`` for the constant one)."""
    s = MultiPoly.monomial(ring, exps, 1)._monomial_str(tuple(exps))
    return s if s else "1"


# --------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"(?P<ws>\s+)|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[*^+\-/])")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise PolyParseError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            tokens.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    return tokens


def parse_poly(text: str, ring: PolyRing) -> MultiPoly:
    """Parse polynomial text in the module grammar against ``ring``.

    Raises :class:`PolyParseError` on malformed input and unknown
    variables (including variables of the other ring).
    """
    tokens = _tokenize(text)
    if not tokens:
        raise PolyParseError("empty polynomial text")
    n = len(tokens)
    i = 0
    terms = []

    def peek(kind):
        return i < n and tokens[i][0] == kind

    def peek_op(op):
        return i < n and tokens[i][0] == "op" and tokens[i][1] == op

    while i < n:
        sign = 1
        if peek_op("+") or peek_op("-"):
            if tokens[i][1] == "-":
                sign = -1
            i += 1
            if i >= n:
                raise PolyParseError("dangling sign", tokens[i - 1][2])
        coeff = Fraction(1)
        exps = [0] * ring.nvars
        saw_factor = False
        if peek("int"):
            num = int(tokens[i][1])
            i += 1
            if peek_op("/"):
                i += 1
                if not peek("int"):
                    pos = tokens[i][2] if i < n else len(tokens[-1][1]) + tokens[-1][2]
                    raise PolyParseError("expected denominator after '/'", pos)
                den = int(tokens[i][1])
                if den == 0:
                    raise PolyParseError("zero denominator", tokens[i][2])
                i += 1
                coeff = Fraction(num, den)
            else:
                coeff = Fraction(num)
            if peek_op("*"):
                i += 1
            else:
                # bare constant term
                terms.append((tuple(exps), sign * coeff))
                if i < n and not (peek_op("+") or peek_op("-")):
                    raise PolyParseError("expected '+' or '-' between terms", tokens[i][2])
                continue
        while True:
            if not peek("name"):
                pos = tokens[i][2] if i < n else tokens[-1][2] + len(tokens[-1][1])
                raise PolyParseError("expected a variable name", pos)
            name = tokens[i][1]
            var = ring.index.get(name)
            if var is None:
                raise PolyParseError(
                    f"unknown variable {name!r} for this ring (expected one of {', '.join(ring.names)})",
                    tokens[i][2],
                )
            i += 1
            power = 1
            if peek_op("^"):
                i += 1
                if not peek("int"):
                    pos = tokens[i][2] if i < n else tokens[-1][2] + len(tokens[-1][1])
                    raise PolyParseError("malformed exponent: expected a non-negative integer", pos)
                power = int(tokens[i][1])
                i += 1
            exps[var] += power
            saw_factor = True
            if peek_op("*"):
                i += 1
                continue
            break
        if not saw_factor:
            raise PolyParseError("empty term")
        terms.append((tuple(exps), sign * coeff))
        if i < n and not (peek_op("+") or peek_op("-")):
            raise PolyParseError("expected '+' or '-' between terms", tokens[i][2])
    return MultiPoly.from_terms(ring, terms)


# --------------------------------------------------------------------------
# grading

def multidegree_of(p: MultiPoly):
    """Common per-block degree vector of a multihomogeneous parameter-ring polynomial."""
    if p.ring.kind != "parameter":
        raise ValueError("multidegree is defined on parameter-ring polynomials")
    if p.is_zero():
        raise NotMultihomogeneousError("zero polynomial has no multidegree")
    degs = {p.ring.block_degrees(e) for e in p.terms}
    if len(degs) > 1:
        listing = ", ".join(str(d) for d in sorted(degs))
        raise NotMultihomogeneousError(f"terms of different block degrees: {listing}")
    return next(iter(degs))


def is_multihomogeneous(p: MultiPoly) -> bool:
    if p.ring.kind != "parameter" or p.is_zero():
        return False
    return len({p.ring.block_degrees(e) for e in p.terms}) == 1


# --------------------------------------------------------------------------
# substitution / evaluation

def substitute_targets(p: MultiPoly, images) -> MultiPoly:
    """Replace each target variable of ``p`` by the corresponding image polynomial.

    ``images`` must be one parameter-ring polynomial per target variable,
    all multihomogeneous of one common multidegree; the result is the exact
    expansion.  Partial products over the exponent prefixes are cached, so a
    dense degree-d input costs far less than d-fold naive expansion.
    """
    if p.ring.kind != "target":
        raise ValueError("substitute_targets expects a target-ring polynomial")
    images = list(images)
    if len(images) != p.ring.nvars:
        raise ValueError(
            f"arity mismatch: {p.ring.nvars} target variables, {len(images)} images"
        )
    ring = images[0].ring
    degs = set()
    for im in images:
        if im.ring != ring:
            raise RingMismatchError("images live in different rings")
        degs.add(multidegree_of(im))
    if len(degs) > 1:
        raise ValueError("images do not share one multidegree")
    if p.is_zero():
        return MultiPoly.zero(ring)

    one = MultiPoly.constant(ring, 1)
    nv = p.ring.nvars
    powers = [[one] for _ in range(nv)]

    def power(j, e):
        col = powers[j]
        while len(col) <= e:
            col.append(col[-1] * images[j])
        return col[e]

    cache = {(): one}
    acc = {}
    for exps in sorted(p.terms):
        c = p.terms[exps]
        key = ()
        cur = one
        for j in range(nv):
            key = key + (exps[j],)
            nxt = cache.get(key)
            if nxt is None:
                nxt = cur * power(j, exps[j]) if exps[j] else cur
                cache[key] = nxt
            cur = nxt
        for e, k in cur.terms.items():
            c0 = acc.get(e, 0) + c * k
            if c0:
                acc[e] = c0
            else:
                del acc[e]
    return MultiPoly(ring, {e: _whole(c) for e, c in acc.items()})


def eval_at(p: MultiPoly, assignment) -> Rational:
    """Exact value of ``p`` at a point given as ``{variable name: rational}``."""
    values = [None] * p.ring.nvars
    used = set()
    for e in p.terms:
        for i, k in enumerate(e):
            if k:
                used.add(i)
    for i in used:
        name = p.ring.names[i]
        if name not in assignment:
            raise ValueError(f"missing assignment for variable {name!r}")
        values[i] = Fraction(assignment[name])
    total = Fraction(0)
    for e, c in p.terms.items():
        v = Fraction(c)
        for i, k in enumerate(e):
            if k:
                v *= values[i] ** k
        total += v
    return _whole(total)


# --------------------------------------------------------------------------
# exact division, normalization, gcd

def try_exact_div(p: MultiPoly, q: MultiPoly):
    """Quotient ``p / q`` when the division is exact, else ``None``."""
    p._check_ring(q)
    if q.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if p.is_zero():
        return MultiPoly.zero(p.ring)
    lq_e, lq_c = q.leading()
    quot = {}
    r = p
    while r.terms:
        lr_e, lr_c = r.leading()
        diff = tuple(a - b for a, b in zip(lr_e, lq_e))
        if any(d < 0 for d in diff):
            return None
        c = _whole(Fraction(lr_c) / Fraction(lq_c))
        quot[diff] = quot.get(diff, 0) + c
        r = r - q * MultiPoly.monomial(p.ring, diff, c)
    return MultiPoly(p.ring, {e: c for e, c in quot.items() if c})


def exact_div(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Quotient of an exact polynomial division; raises if ``q`` does not divide ``p``."""
    out = try_exact_div(p, q)
    if out is None:
        raise ValueError("inexact polynomial division")
    return out


def divides(q: MultiPoly, p: MultiPoly) -> bool:
    return try_exact_div(p, q) is not None


def normalize_poly(p: MultiPoly) -> MultiPoly:
    """Integer-primitive representative with positive leading coefficient."""
    if p.is_zero():
        return p
    den = 1
    for c in p.terms.values():
        den = lcm(den, c.denominator)
    num = 0
    for c in p.terms.values():
        num = gcd(num, int(c * den))
    factor = Fraction(den, num)
    _, lead = p.leading()
    if lead < 0:
        factor = -factor
    return p.scale(factor)


def _clear_denominators(p):
    den = 1
    for c in p.terms.values():
        den = lcm(den, c.denominator)
    return p.scale(den) if den != 1 else p


def _active_vars(p):
    active = set()
    for e in p.terms:
        for i, k in enumerate(e):
            if k:
                active.add(i)
    return active


def _deg_in(p, k):
    return max((e[k] for e in p.terms), default=-1)


def _univariate_coeffs(p, k):
    """View ``p`` as univariate in variable ``k``: degree -> coefficient poly."""
    out = {}
    for e, c in p.terms.items():
        d = e[k]
        stripped = e[:k] + (0,) + e[k + 1 :]
        bucket = out.setdefault(d, {})
        bucket[stripped] = bucket.get(stripped, 0) + c
    return {d: MultiPoly(p.ring, t) for d, t in out.items()}


def _coeff_in(p, k, d):
    t = {}
    for e, c in p.terms.items():
        if e[k] == d:
            t[e[:k] + (0,) + e[k + 1 :]] = c
    return MultiPoly(p.ring, t)


def _mul_var_pow(p, k, d):
    if d == 0:
        return p
    return MultiPoly(p.ring, {e[:k] + (e[k] + d,) + e[k + 1 :]: c for e, c in p.terms.items()})


def _abs_lead(p):
    if p.is_zero():
        return p
    _, lead = p.leading()
    return -p if lead < 0 else p


def _prem(f, g, k):
    """Pseudo-remainder of ``f`` by ``g``, both univariate in variable ``k``."""
    d2 = _deg_in(g, k)
    lc2 = _coeff_in(g, k, d2)
    r = f
    n = _deg_in(f, k) - d2 + 1
    while r.terms and _deg_in(r, k) >= d2:
        dr = _deg_in(r, k)
        lr = _coeff_in(r, k, dr)
        r = r * lc2 - _mul_var_pow(lr, k, dr - d2) * g
        n -= 1
    if n > 0:
        r = r * lc2**n
    return r


def _content_primitive(p, k):
    coeffs = _univariate_coeffs(p, k)
    cont = MultiPoly.zero(p.ring)
    for d in sorted(coeffs):
        cont = _gcd_z(cont, coeffs[d])
        if cont == 1:
            break
    return cont, exact_div(p, cont)


def _gcd_z(p, q):
    """Gcd of integer-coefficient polynomials, by primitive subresultant PRS
    in the highest active variable (positive-leading normalization)."""
    if p.is_zero():
        return _abs_lead(q)
    if q.is_zero():
        return _abs_lead(p)
    active = _active_vars(p) | _active_vars(q)
    if not active:
        a = int(next(iter(p.terms.values())))
        b = int(next(iter(q.terms.values())))
        return MultiPoly.constant(p.ring, gcd(a, b))
    k = max(active)
    cont_p, pp_p = _content_primitive(p, k)
    cont_q, pp_q = _content_primitive(q, k)
    d = _gcd_z(cont_p, cont_q)
    f1, f2 = (pp_p, pp_q) if _deg_in(pp_p, k) >= _deg_in(pp_q, k) else (pp_q, pp_p)
    if _deg_in(f2, k) == 0:
        # primitive w.r.t. x_k and constant in it: a unit
        return d
    one = MultiPoly.constant(p.ring, 1)
    g = h = one
    while True:
        delta = _deg_in(f1, k) - _deg_in(f2, k)
        rem = _prem(f1, f2, k)
        if rem.is_zero():
            cand = f2
            break
        if _deg_in(rem, k) == 0:
            cand = None
            break
        f1, f2 = f2, exact_div(rem, g * h**delta)
        g = _coeff_in(f1, k, _deg_in(f1, k))
        if delta == 1:
            h = g
        elif delta > 1:
            h = exact_div(g**delta, h ** (delta - 1))
    if cand is None:
        return d
    _, pp_cand = _content_primitive(cand, k)
    return _abs_lead(d * pp_cand)


def gcd_poly(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """A gcd of ``p`` and ``q``, integer-primitive with positive leading
    coefficient; ``gcd(p, 0) = normalize(p)`` and ``gcd(0, 0) = 0``."""
    p._check_ring(q)
    if p.is_zero() and q.is_zero():
        return p
    g = _gcd_z(_clear_denominators(p), _clear_denominators(q))
    return normalize_poly(g)
