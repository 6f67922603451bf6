"""Exact sparse multivariate polynomials over the integers.

Two variables, ``l`` (lambda) and ``xi``, are Laurent: they may carry negative
exponents.  All other variables (per-element ``x_e``/``y_e`` and plain names
such as ``x``, ``y``) only ever carry nonnegative exponents.

A monomial is a tuple of ``(Var, exponent)`` pairs sorted by variable with no
zero exponents; a polynomial maps monomials to nonzero Python ints.
"""

import re
from functools import lru_cache
from typing import NamedTuple


class PolyError(ValueError):
    pass


class SubstitutionError(PolyError):
    pass


LAMBDA, XI, XVAR, YVAR, PLAIN = range(5)
_LAURENT_KINDS = (LAMBDA, XI)


class Var(NamedTuple):
    kind: int
    name: str = ""

    @property
    def laurent(self):
        return self.kind in _LAURENT_KINDS

    def spelling(self):
        if self.kind == LAMBDA:
            return "l"
        if self.kind == XI:
            return "xi"
        if self.kind == XVAR:
            return "x_" + self.name
        if self.kind == YVAR:
            return "y_" + self.name
        return self.name

    def __repr__(self):
        return self.spelling()


LAM = Var(LAMBDA)
XIV = Var(XI)
_RESERVED = {"l", "xi"}


def xvar(label):
    return Var(XVAR, str(label))


def yvar(label):
    return Var(YVAR, str(label))


def plain(name):
    name = str(name)
    if name in _RESERVED or name.startswith(("x_", "y_")) or not _NAME_RE.fullmatch(name):
        raise PolyError(f"invalid plain variable name {name!r}")
    return Var(PLAIN, name)


_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9]*")


@lru_cache(maxsize=1 << 18)
def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        s = d.get(v, 0) + e
        if s:
            d[v] = s
        else:
            del d[v]
    return tuple(sorted(d.items()))


def _check_mono(mono):
    for v, e in mono:
        if e < 0 and not v.laurent:
            raise PolyError(f"negative exponent {e} on non-Laurent variable {v.spelling()}")
        if e == 0:
            raise PolyError("zero exponent stored in monomial")


class Poly:
    """Immutable sparse polynomial with Laurent exponents allowed on ``l`` and ``xi``."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None, _trusted=False):
        if terms is None:
            terms = {}
        if not _trusted:
            clean = {}
            for mono, c in dict(terms).items():
                mono = tuple(sorted((v, e) for v, e in mono if e != 0))
                _check_mono(mono)
                c = int(c)
                s = clean.get(mono, 0) + c
                if s:
                    clean[mono] = s
                else:
                    clean.pop(mono, None)
            terms = clean
        self.terms = terms
        self._hash = None

    # constructors

    @classmethod
    def const(cls, c):
        c = int(c)
        return cls({(): c} if c else {}, _trusted=True)

    @classmethod
    def var(cls, v, exp=1):
        if exp == 0:
            return cls.const(1)
        mono = ((v, exp),)
        _check_mono(mono)
        return cls({mono: 1}, _trusted=True)

    @classmethod
    def monomial(cls, exps, coeff=1):
        return cls({tuple(exps.items()) if isinstance(exps, dict) else tuple(exps): coeff})

    # basic protocol

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"Poly({serialize(self)!r})"

    def __str__(self):
        return serialize(self)

    def is_zero(self):
        return not self.terms

    def variables(self):
        return {v for mono in self.terms for v, _ in mono}

    def coefficient(self, mono):
        return self.terms.get(tuple(sorted(mono)), 0)

    # arithmetic

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if len(other.terms) > len(self.terms):
            self, other = other, self
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = out.get(mono, 0) + c
            if s:
                out[mono] = s
            else:
                del out[mono]
        return Poly(out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return Poly()
        if len(self.terms) < len(other.terms):
            self, other = other, self
        if len(other.terms) == 1:
            (m2, c2), = other.terms.items()
            if not m2:
                if c2 == 1:
                    return self
                return Poly({m: c * c2 for m, c in self.terms.items()}, _trusted=True)
            # multiplying by a monomial is injective on monomials: no merging needed
            return Poly({_mono_mul(m, m2): c * c2 for m, c in self.terms.items()}, _trusted=True)
        out = {}
        get = out.get
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                s = get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Poly(out, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse_monomial() ** (-k)
        result = Poly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse_monomial(self):
        """Inverse of ``+-m`` where ``m`` is a monomial in Laurent variables only."""
        if len(self.terms) != 1:
            raise SubstitutionError(f"{serialize(self)} is not invertible in the Laurent ring")
        (mono, c), = self.terms.items()
        if c not in (1, -1) or any(not v.laurent for v, _ in mono):
            raise SubstitutionError(f"{serialize(self)} is not invertible in the Laurent ring")
        return Poly({tuple((v, -e) for v, e in mono): c}, _trusted=True)

    def scale(self, c):
        return self * Poly.const(c)


def _coerce(other):
    if isinstance(other, Poly):
        return other
    if isinstance(other, int):
        return Poly.const(other)
    return NotImplemented


ZERO = Poly()
ONE = Poly.const(1)


def add(p, q):
    return p + q


def mul(p, q):
    return p * q


def product(factors):
    out = ONE
    for f in factors:
        out = out * f
    return out


def poly_sum(polys):
    out = {}
    for p in polys:
        for mono, c in p.terms.items():
            s = out.get(mono, 0) + c
            if s:
                out[mono] = s
            else:
                del out[mono]
    return Poly(out, _trusted=True)


def divide_monomial(p, exps):
    """Exact division of ``p`` by the monomial ``exps`` (a mapping Var -> exponent).

    Raises PolyError when the quotient would carry a negative exponent on a
    non-Laurent variable.
    """
    inv = tuple((v, -e) for v, e in sorted(exps.items()) if e)
    out = {}
    for mono, c in p.terms.items():
        m = _mono_mul(mono, inv)
        _check_mono(m)
        out[m] = c
    return Poly(out, _trusted=True)


def substitute(p, sigma):
    """Simultaneous substitution ``v -> sigma[v]`` followed by full expansion.

    A variable occurring with a negative exponent may only be sent to an image
    invertible in the Laurent ring: ``+-`` a monomial in ``l``/``xi``, or a
    nonzero integer ``c`` with ``c**k`` dividing the affected coefficient.
    """
    sigma = {v: _coerce(q) if not isinstance(q, Poly) else q for v, q in sigma.items()}
    for v, q in sigma.items():
        if q is NotImplemented:
            raise SubstitutionError(f"image of {v.spelling()} must be a Poly or int")
    powers = {}

    def power(v, e):
        key = (v, e)
        if key not in powers:
            powers[key] = sigma[v] ** e
        return powers[key]

    acc = {}
    for mono, c in p.terms.items():
        kept = []
        factor = ONE
        for v, e in mono:
            if v not in sigma:
                kept.append((v, e))
                continue
            img = sigma[v]
            if e < 0:
                scalar = _constant_value(img)
                if scalar is not None:
                    if scalar == 0:
                        raise SubstitutionError(f"{v.spelling()} -> 0 under a negative power")
                    div = scalar ** (-e)
                    if c % div:
                        raise SubstitutionError(
                            f"{v.spelling()} -> {scalar}: coefficient {c} not divisible by {div}")
                    c //= div
                    continue
                try:
                    factor = factor * power(v, e)
                except SubstitutionError as exc:
                    raise SubstitutionError(
                        f"cannot substitute {v.spelling()} -> {serialize(img)} "
                        f"into a term with exponent {e}; clear denominators first") from exc
            else:
                factor = factor * power(v, e)
        base = Poly({tuple(kept): c}, _trusted=True)
        for m, cc in (base * factor).terms.items():
            s = acc.get(m, 0) + cc
            if s:
                acc[m] = s
            else:
                del acc[m]
    return Poly(acc, _trusted=True)


def _constant_value(q):
    if not q.terms:
        return 0
    if len(q.terms) == 1 and () in q.terms:
        return q.terms[()]
    return None


def rename(p, mapping):
    """Substitution by variables only (``v -> w``); cheaper than ``substitute``."""
    out = {}
    for mono, c in p.terms.items():
        m = tuple(sorted((mapping.get(v, v), e) for v, e in mono))
        merged = {}
        for v, e in m:
            merged[v] = merged.get(v, 0) + e
        m = tuple((v, e) for v, e in sorted(merged.items()) if e)
        s = out.get(m, 0) + c
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return Poly(out)


# canonical text form

def _var_rank(v, order_index):
    if v.kind in (XVAR, YVAR):
        pos = order_index.get(v.name)
        return (v.kind, 0, pos, "") if pos is not None else (v.kind, 1, 0, v.name)
    return (v.kind, 0, 0, v.name)


def term_sort_key(mono, order_index):
    """Total |degree| descending, then variables in canonical order with higher powers first."""
    degree = sum(abs(e) for _, e in mono)
    ranked = sorted((_var_rank(v, order_index), -e) for v, e in mono)
    return (-degree, ranked)


def serialize(p, order=None):
    """Canonical text: ``l^-1 + x_a + 1``.  ``order`` fixes the ranking of element labels."""
    if not p.terms:
        return "0"
    order_index = {lab: i for i, lab in enumerate(order or ())}
    monos = sorted(p.terms, key=lambda m: term_sort_key(m, order_index))
    parts = []
    for i, mono in enumerate(monos):
        c = p.terms[mono]
        ordered = sorted(mono, key=lambda ve: (_var_rank(ve[0], order_index), -ve[1]))
        factors = [v.spelling() + (f"^{e}" if e != 1 else "") for v, e in ordered]
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = str(mag) + "*" + "*".join(factors)
        if i == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\^-?\d+)|([+\-*]))")


def parse_var(name):
    if name == "l":
        return LAM
    if name == "xi":
        return XIV
    if name.startswith("x_") and len(name) > 2:
        return xvar(name[2:])
    if name.startswith("y_") and len(name) > 2:
        return yvar(name[2:])
    return plain(name)


def parse(text):
    """Inverse of ``serialize``; also accepts any sum of ``*``-separated products."""
    text = text.strip()
    if not text:
        raise PolyError("empty polynomial text")
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise PolyError(f"unexpected character at {pos} in {text!r}")
        pos = m.end()
        num, name, caret, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif name is not None:
            tokens.append(("name", name))
        elif caret is not None:
            tokens.append(("pow", int(caret[1:])))
        elif op is not None:
            tokens.append(("op", op))
    terms = {}
    i = 0
    sign = 1
    expect_term = True
    coeff, mono = 1, {}
    seen_factor = False

    def flush():
        if not seen_factor:
            raise PolyError(f"dangling operator in {text!r}")
        m = tuple(sorted(mono.items()))
        terms[m] = terms.get(m, 0) + sign * coeff

    while i < len(tokens):
        kind, val = tokens[i]
        if kind == "op" and val in "+-":
            if expect_term and not seen_factor:
                if val == "-":
                    sign = -sign
                i += 1
                continue
            flush()
            sign, coeff, mono, seen_factor = (1 if val == "+" else -1), 1, {}, False
            expect_term = True
            i += 1
            continue
        if kind == "op" and val == "*":
            if not seen_factor:
                raise PolyError(f"misplaced '*' in {text!r}")
            expect_term = True
            i += 1
            continue
        if seen_factor and not expect_term:
            raise PolyError(f"missing operator in {text!r}")
        if kind == "num":
            coeff *= val
        elif kind == "name":
            v = parse_var(val)
            e = 1
            if i + 1 < len(tokens) and tokens[i + 1][0] == "pow":
                e = tokens[i + 1][1]
                i += 1
            mono[v] = mono.get(v, 0) + e
        else:
            raise PolyError(f"misplaced exponent in {text!r}")
        seen_factor = True
        expect_term = False
        i += 1
    flush()
    return Poly(terms)


# shorthands used throughout the package

def lam(exp=1):
    return Poly.var(LAM, exp)


def xi(exp=1):
    return Poly.var(XIV, exp)


def x_(label):
    return Poly.var(xvar(label))


def y_(label):
    return Poly.var(yvar(label))


X = plain("x")
Y = plain("y")


def px(exp=1):
    return Poly.var(X, exp)


def py(exp=1):
    return Poly.var(Y, exp)


def negate_vars(p, which):
    """Substitute ``v -> -v`` for every variable ``v`` in ``which``."""
    which = set(which)
    out = {}
    for mono, c in p.terms.items():
        parity = sum(e for v, e in mono if v in which) & 1
        out[mono] = -c if parity else c
    return Poly(out, _trusted=True)
