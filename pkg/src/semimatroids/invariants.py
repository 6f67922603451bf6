"""Polynomial invariants of semimatroids, each computable by several routes.

Routes:

* ``sum``         -- direct sum over central sets
* ``dc``          -- deletion-contraction on the smallest element, memoized
* ``activities``  -- sum over bases weighted by internal/external activity
* ``via-z``       -- (tutte, subset-corank only) derived from the multivariate Z

Per-element variables are ``x_<label>``; scalar invariants use ``x``.  The
Laurent variable ``l`` plays the role of lambda.
"""

import enum
from functools import lru_cache
from collections import Counter
from dataclasses import dataclass, field

from . import poly as P
from .core import (DomainError, SemimatroidError, bits, canonical_sorted, popcount,
                   submasks)
from .core import bases as list_bases
from .minors import canonical_key, contract, delete


class Route(str, enum.Enum):
    SUM = "sum"
    DC = "dc"
    ACTIVITIES = "activities"
    VIA_Z = "via-z"


INVARIANTS = ("z", "dichromatic", "tutte", "characteristic",
              "subset-corank", "size-corank", "rank-gen")
MULTIVARIATE = ("z", "subset-corank")


class DecompositionError(SemimatroidError):
    """The basis intervals fail to partition the central family."""

    def __init__(self, message, missed=(), doubled=(), rank_law=()):
        super().__init__(message)
        self.missed = list(missed)
        self.doubled = list(doubled)
        self.rank_law = list(rank_law)


# ---------------------------------------------------------------------------
# activities

@dataclass
class ActivityRecord:
    basis: int
    internally_active: int
    externally_active: int
    fund_circuits: dict = field(default_factory=dict)
    fund_cocircuits: dict = field(default_factory=dict)


@dataclass
class Interval:
    basis: int
    lower: int
    upper: int
    record: ActivityRecord

    @property
    def size(self):
        return 1 << popcount(self.upper & ~self.lower)

    def members(self):
        free = self.upper & ~self.lower
        return [self.lower | s for s in submasks(free)]


@dataclass
class Decomposition:
    intervals: list

    def sizes(self):
        return [iv.size for iv in self.intervals]


def _lowest(mask):
    return mask & -mask


def _element_bit(sm, e):
    if isinstance(e, int) and not isinstance(e, bool):
        return 1 << e
    return sm.mask([e])


def _require_basis(sm, basis):
    if not (sm.ranks.get(basis) == popcount(basis) == sm.rank):
        raise DomainError(f"{sm.format(basis)} is not a basis")


def _fund_circuit(sm, basis, bit):
    union = basis | bit
    if union not in sm.ranks:
        raise DomainError(
            f"{sm.format(union)} is not central: no fundamental circuit for "
            f"{sm.format(bit)} against {sm.format(basis)}")
    out = 0
    for i in bits(union):
        f = 1 << i
        rest = union & ~f
        if sm.ranks[rest] == popcount(rest):
            out |= f
    return out


def _fund_cocircuit(sm, basis, bit, basis_set):
    out = bit
    rest = basis & ~bit
    for i in range(sm.n):
        f = 1 << i
        if not basis & f and (rest | f) in basis_set:
            out |= f
    return out


def fundamental_circuit(sm, basis, e):
    """The unique circuit inside B + e (requires B + e central)."""
    _require_basis(sm, basis)
    bit = _element_bit(sm, e)
    if basis & bit:
        raise DomainError("element already lies in the basis")
    return _fund_circuit(sm, basis, bit)


def fundamental_cocircuit(sm, basis, e):
    """{e} together with every f outside B such that B - e + f is again a basis."""
    _require_basis(sm, basis)
    bit = _element_bit(sm, e)
    if not basis & bit:
        raise DomainError("element is not in the basis")
    return _fund_cocircuit(sm, basis, bit, set(list_bases(sm)))


def activities(sm, basis, basis_set=None):
    _require_basis(sm, basis)
    if basis_set is None:
        basis_set = set(list_bases(sm))
    rec = ActivityRecord(basis, 0, 0)
    for i in range(sm.n):
        bit = 1 << i
        label = sm.elements[i]
        if basis & bit:
            cc = _fund_cocircuit(sm, basis, bit, basis_set)
            rec.fund_cocircuits[label] = cc
            if _lowest(cc) == bit:
                rec.internally_active |= bit
        elif (basis | bit) in sm.ranks:
            c = _fund_circuit(sm, basis, bit)
            rec.fund_circuits[label] = c
            if _lowest(c) == bit:
                rec.externally_active |= bit
    return rec


def all_activities(sm):
    blist = list_bases(sm)
    bset = set(blist)
    return [activities(sm, b, bset) for b in blist]


def interval_decomposition(sm):
    """Intervals [B - IA(B), B + EA(B)] over all bases, verified to partition C.

    Also checks r(C) - r(B - I + S) = |I| for all I in IA(B), S in EA(B).
    """
    intervals = []
    cover = Counter()
    rank_law = []
    for rec in all_activities(sm):
        b = rec.basis
        iv = Interval(b, b & ~rec.internally_active, b | rec.externally_active, rec)
        intervals.append(iv)
        for i_set in submasks(rec.internally_active):
            for s_set in submasks(rec.externally_active):
                a = (b & ~i_set) | s_set
                cover[a] += 1
                r = sm.ranks.get(a)
                if r is None or sm.rank - r != popcount(i_set):
                    rank_law.append(a)
    missed = [a for a in sm.central if cover[a] == 0]
    doubled = [a for a, c in cover.items() if c > 1]
    outside = [a for a in cover if a not in sm.ranks]
    if missed or doubled or outside or rank_law:
        parts = []
        if missed:
            parts.append("missed " + ", ".join(sm.format(a) for a in missed))
        if doubled:
            parts.append("double-covered " + ", ".join(sm.format(a) for a in canonical_sorted(doubled)))
        if outside:
            parts.append("non-central " + ", ".join(sm.format(a) for a in canonical_sorted(outside)))
        if rank_law:
            parts.append("rank law fails at " + ", ".join(sm.format(a) for a in rank_law))
        raise DecompositionError("basis intervals do not partition C: " + "; ".join(parts),
                                 missed, doubled + outside, rank_law)
    return Decomposition(intervals)


# ---------------------------------------------------------------------------
# subset sums

def _x_mono(sm, mask):
    return P.product(P.x_(sm.elements[i]) for i in bits(mask))


def _size_rank_counts(sm):
    return Counter((popcount(a), r) for a, r in sm.ranks.items())


def _sum_route(sm, name):
    r = sm.rank
    lam, x = P.lam(), P.px()
    if name in MULTIVARIATE:
        shift = 0 if name == "z" else r
        return P.poly_sum(P.lam(shift - ra) * _x_mono(sm, a) for a, ra in sm.ranks.items())
    terms = []
    for (size, ra), count in _size_rank_counts(sm).items():
        if name == "dichromatic":
            t = P.lam(-ra) * x ** size
        elif name == "size-corank":
            t = lam ** (r - ra) * x ** size
        elif name == "rank-gen":
            t = lam ** (r - ra) * x ** (size - ra)
        elif name == "tutte":
            t = (lam - 1) ** (r - ra) * (x - 1) ** (size - ra)
        elif name == "characteristic":
            t = (-1) ** size * lam ** (r - ra)
        else:
            raise ValueError(f"unknown invariant {name!r}")
        terms.append(t * count)
    return P.poly_sum(terms)


# ---------------------------------------------------------------------------
# deletion-contraction

@lru_cache(maxsize=None)
def _dc_rule(name, label):
    """(loop factor, isthmus factor, factor on the contraction term)."""
    lam, x = P.lam(), P.px()
    if name == "z":
        xe = P.x_(label)
        return xe + 1, xe * P.lam(-1) + 1, xe * P.lam(-1)
    if name == "subset-corank":
        xe = P.x_(label)
        return xe + 1, xe + lam, xe
    if name == "dichromatic":
        return x + 1, x * P.lam(-1) + 1, x * P.lam(-1)
    if name == "size-corank":
        return x + 1, x + lam, x
    if name == "rank-gen":
        return x + 1, lam + 1, P.ONE
    if name == "tutte":
        return x, lam, P.ONE
    if name == "characteristic":
        return P.ZERO, lam - 1, P.Poly.const(-1)
    raise ValueError(f"unknown invariant {name!r}")


def pivot_kind(sm):
    """Case of the deletion-contraction recursion for the smallest element."""
    r1 = sm.ranks.get(1)
    if r1 is None:
        return "noncentral"
    if r1 == 0:
        return "loop"
    # e lies in every basis iff the sets avoiding e have smaller maximal rank
    if max(r for m, r in sm.ranks.items() if not m & 1) < sm.rank:
        return "isthmus"
    return "ordinary"


def _dc_route(sm, name, memo=True):
    cache = {} if memo else None
    labelled = name in MULTIVARIATE

    def rec(m):
        if m.n == 0:
            return P.ONE
        if cache is not None:
            key = canonical_key(m)
            key = key if labelled else key.structure
            hit = cache.get(key)
            if hit is not None:
                return hit
        loop_f, isthmus_f, con_f = _dc_rule(name, m.elements[0] if labelled else "")
        kind = pivot_kind(m)
        deleted = rec(delete(m, 1))
        if kind == "loop":
            out = loop_f * deleted
        elif kind == "isthmus":
            out = isthmus_f * deleted
        elif kind == "ordinary":
            out = deleted + con_f * rec(contract(m, 1))
        else:
            out = deleted
        if cache is not None:
            cache[key] = out
        return out

    return rec(sm)


# ---------------------------------------------------------------------------
# basis activities expansions

def _activities_route(sm, name):
    r = sm.rank
    lam, x = P.lam(), P.px()
    terms = []
    for rec in all_activities(sm):
        ia, ea = rec.internally_active, rec.externally_active
        nia, nea = popcount(ia), popcount(ea)
        if name in MULTIVARIATE:
            # (l/x_i + 1) cleared of denominators: x_i divides x^B since IA is inside B
            t = _x_mono(sm, rec.basis & ~ia)
            t = t * P.product(P.x_(sm.elements[i]) + 1 for i in bits(ea))
            t = t * P.product(P.x_(sm.elements[i]) + lam for i in bits(ia))
            if name == "z":
                t = t * P.lam(-r)
        elif name in ("dichromatic", "size-corank"):
            t = x ** (r - nia) * (lam + x) ** nia * (x + 1) ** nea
            if name == "dichromatic":
                t = t * P.lam(-r)
        elif name == "rank-gen":
            t = (lam + 1) ** nia * (x + 1) ** nea
        elif name == "tutte":
            t = lam ** nia * x ** nea
        elif name == "characteristic":
            if nea:
                continue
            t = (-1) ** r * (1 - lam) ** nia
        else:
            raise ValueError(f"unknown invariant {name!r}")
        terms.append(t)
    return P.poly_sum(terms)


# ---------------------------------------------------------------------------
# derived routes

_T = P.plain("t")


def tutte_from_subset_corank(sc, rank):
    """T(l, x) = t^-r SC((l-1) t, t) evaluated at t = x - 1.

    Every term of SC((l-1)t, t) carries t^(r - r(A) + |A|) with |A| >= r(A),
    so the division by t^r is exact.
    """
    sigma = {P.LAM: (P.lam() - 1) * P.Poly.var(_T)}
    for v in sc.variables():
        if v.kind == P.XVAR:
            sigma[v] = P.Poly.var(_T)
    shifted = P.substitute(sc, sigma)
    reduced = P.divide_monomial(shifted, {_T: rank})
    return P.substitute(reduced, {_T: P.px() - 1})


def collapse_x(p):
    """Send every per-element x_e to the scalar x."""
    sigma = {v: P.X for v in p.variables() if v.kind == P.XVAR}
    return P.rename(p, sigma)


def _via_z_route(sm, name):
    z = polynomial(sm, "z", Route.DC)
    sc = z * P.lam(sm.rank)
    if name == "subset-corank":
        return sc
    if name == "tutte":
        return tutte_from_subset_corank(sc, sm.rank)
    raise ValueError(f"route via-z is not defined for {name!r}")


def polynomial(sm, name, route=Route.SUM, memo=True):
    """Invariant ``name`` of ``sm`` computed along ``route``."""
    route = Route(route)
    if name not in INVARIANTS:
        raise ValueError(f"unknown invariant {name!r}")
    if route is Route.SUM:
        return _sum_route(sm, name)
    if route is Route.DC:
        return _dc_route(sm, name, memo=memo)
    if route is Route.ACTIVITIES:
        return _activities_route(sm, name)
    return _via_z_route(sm, name)


def routes_for(name):
    base = [Route.SUM, Route.DC, Route.ACTIVITIES]
    if name in ("tutte", "subset-corank"):
        base.append(Route.VIA_Z)
    return base


def z_multivariate(sm, route=Route.SUM, memo=True):
    return polynomial(sm, "z", route, memo)


def dichromatic(sm, route=Route.SUM, memo=True):
    return polynomial(sm, "dichromatic", route, memo)


def tutte(sm, route=Route.SUM, memo=True):
    return polynomial(sm, "tutte", route, memo)


def subset_corank(sm, route=Route.SUM, memo=True):
    return polynomial(sm, "subset-corank", route, memo)


def size_corank(sm, route=Route.SUM, memo=True):
    return polynomial(sm, "size-corank", route, memo)


def rank_generating(sm, route=Route.SUM, memo=True):
    return polynomial(sm, "rank-gen", route, memo)


def characteristic(sm, route=Route.SUM, memo=True, crosscheck=True):
    """chi(C; l); with ``crosscheck`` also compared against (-1)^r T(1-l, 0)
    and l^r Z(C; l, -1)."""
    chi = polynomial(sm, "characteristic", route, memo)
    if crosscheck:
        r = sm.rank
        lam = P.lam()
        t = tutte(sm, Route.DC)
        via_t = P.substitute(t, {P.LAM: 1 - lam, P.X: 0}) * (-1) ** r
        z = z_multivariate(sm, Route.DC)
        via_z = P.substitute(z, {P.xvar(e): -1 for e in sm.elements}) * P.lam(r)
        if not (chi == via_t == via_z):
            raise SemimatroidError(
                f"characteristic polynomial routes disagree: {chi} / {via_t} / {via_z}")
    return chi
