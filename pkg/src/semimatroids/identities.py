"""Symbolic verification of convolution, weighted-sum and specialization identities.

Every check expands both sides as exact polynomials on one semimatroid.  Left
sides come from the subset-sum route; the restriction and contraction
factors on the right come from memoized deletion-contraction, so a pass is a
genuine differential test of the two evaluators.
"""

from dataclasses import dataclass, field

from . import poly as P
from .core import bits, flats, is_cyclic_flat, popcount
from .invariants import (DecompositionError, Route, collapse_x, interval_decomposition,
                         polynomial, tutte_from_subset_corank)
from .minors import contract, restrict

MULTIVARIATE_LIMIT = 8
SCALAR_LIMIT = 12

IDENTITIES = (
    "conv-multivariate", "conv-multivariate-special", "key-property",
    "conv-scalar", "conv-scalar-special",
    "char-conv", "char-conv-flats",
    "weighted-sum", "weighted-full-multivariate", "weighted-flats-multivariate",
    "weighted-full-scalar", "weighted-flats-scalar",
    "sc-conv", "sc-conv-special", "sc-weighted", "sc-weighted-flats",
    "szc-conv", "szc-conv-special", "szc-weighted-flats",
    "rg-conv", "rg-conv-special", "rg-semi", "rg-semi-flats", "rg-semi-cyclic",
    "lattice-sc-z", "lattice-dichromatic", "lattice-size-corank", "lattice-sc-rank-gen",
    "lattice-tutte-rank-gen", "lattice-tutte-z", "lattice-chi-sc", "lattice-chi-tutte",
    "lattice-chi-rank-gen", "lattice-chi-z", "crapo", "decomposition",
)
MULTIVARIATE_IDENTITIES = frozenset({
    "conv-multivariate", "conv-multivariate-special", "key-property", "weighted-sum",
    "weighted-full-multivariate", "weighted-flats-multivariate",
    "sc-conv", "sc-conv-special", "sc-weighted", "sc-weighted-flats",
    "lattice-sc-z", "lattice-dichromatic", "lattice-size-corank", "lattice-tutte-z",
})


@dataclass
class IdentityReport:
    identity_id: str
    lhs: P.Poly
    rhs: P.Poly
    partials: list = field(default_factory=list, repr=False)

    @property
    def diff(self):
        return self.lhs - self.rhs

    @property
    def passed(self):
        return self.diff.is_zero()

    @property
    def verdict(self):
        return "pass" if self.passed else "fail"

    def __str__(self):
        line = f"{self.identity_id}: {self.verdict}"
        if not self.passed:
            line += f" (diff {self.diff})"
        return line


LAM, XI, X, Y = P.LAM, P.XIV, P.X, P.Y


class _Lab:
    """Per-semimatroid cache of minors and their invariants."""

    def __init__(self, sm, verbose=False, route=Route.DC):
        self.sm = sm
        self.verbose = verbose
        self.route = route
        self.r = sm.rank
        self._minors = {}
        self._polys = {}
        self.xs = [P.xvar(e) for e in sm.elements]
        self.ys = [P.yvar(e) for e in sm.elements]
        self.x_to_y = {P.xvar(e): P.yvar(e) for e in sm.elements}
        self.x_to_y[X] = Y

    def minor(self, side, t):
        key = (side, t)
        if key not in self._minors:
            self._minors[key] = restrict(self.sm, t) if side == "res" else contract(self.sm, t)
        return self._minors[key]

    def inv(self, side, t, name):
        key = (side, t, name)
        if key not in self._polys:
            self._polys[key] = polynomial(self.minor(side, t), name, self.route)
        return self._polys[key]

    def top(self, name):
        key = ("top", name)
        if key not in self._polys:
            self._polys[key] = polynomial(self.sm, name, Route.SUM)
        return self._polys[key]

    def central(self):
        return self.sm.central

    def flats(self):
        if "flats" not in self._minors:
            self._minors["flats"] = flats(self.sm)
        return self._minors["flats"]

    def y_mono(self, t):
        return P.product(P.y_(self.sm.elements[i]) for i in bits(t))

    def x_plus_one(self, t):
        return P.product(P.x_(self.sm.elements[i]) + 1 for i in bits(t))

    def summed(self, identity_id, lhs, ts, summand):
        parts = []
        total = P.ZERO
        for t in ts:
            s = summand(t)
            total = total + s
            if self.verbose:
                parts.append((t, s))
        return IdentityReport(identity_id, lhs, total, parts)


def _lam_xi(p):
    return P.substitute(p, {LAM: P.lam() * P.xi()})


def _to_xi(p):
    return P.rename(p, {LAM: XI})


def _xy_multi(lab, p):
    return P.substitute(p, {v: P.Poly.var(v) * P.Poly.var(w) for v, w in zip(lab.xs, lab.ys)})


def _xy_scalar(p):
    return P.substitute(p, {X: P.px() * P.py()})


def _at(p, values):
    return P.substitute(p, values)


# ---------------------------------------------------------------------------
# multivariate Tutte polynomial

def _conv_multivariate(lab):
    r = lab.r
    # Z(l*xi, x*y): substitute into SC (no negative powers), then restore (l*xi)^-r
    lhs = _xy_multi(lab, _lam_xi(lab.top("subset-corank"))) * P.lam(-r) * P.xi(-r)

    def summand(t):
        zr = P.negate_vars(lab.inv("res", t, "z"), lab.xs)
        zc = P.rename(_to_xi(lab.inv("con", t, "z")), lab.x_to_y)
        return P.xi(-lab.sm.ranks[t]) * (-1) ** popcount(t) * lab.y_mono(t) * zr * zc

    return lab.summed("conv-multivariate", lhs, lab.central(), summand)


def _conv_multivariate_special(lab):
    lhs = P.rename(lab.top("z"), lab.x_to_y)

    def summand(t):
        zr = _at(lab.inv("res", t, "z"), {v: -1 for v in lab.xs})
        zc = P.rename(_at(lab.inv("con", t, "z"), {LAM: 1}), lab.x_to_y)
        return (-1) ** popcount(t) * lab.y_mono(t) * zr * zc

    return lab.summed("conv-multivariate-special", lhs, lab.central(), summand)


def _key_property(lab):
    # tag each T with y^T so a mismatch at one T cannot cancel against another
    ts = lab.central()
    lhs = P.poly_sum(lab.y_mono(t) * _at(lab.inv("res", t, "z"), {LAM: 1}) for t in ts)
    return lab.summed("key-property", lhs, ts, lambda t: lab.y_mono(t) * lab.x_plus_one(t))


def _weighted_sum(lab):
    lhs = _xy_multi(lab, _to_xi(lab.top("z")))

    def summand(t):
        zc = P.negate_vars(P.rename(_to_xi(lab.inv("con", t, "z")), lab.x_to_y), lab.ys)
        return P.xi(-lab.sm.ranks[t]) * lab.y_mono(t) * lab.x_plus_one(t) * zc

    return lab.summed("weighted-sum", lhs, lab.central(), summand)


def _weighted_chi(lab, identity_id, ts, scalar):
    r = lab.r
    lhs = _to_xi(lab.top("dichromatic" if scalar else "z"))

    def summand(t):
        chi = _to_xi(lab.inv("con", t, "characteristic"))
        weight = (P.px() + 1) ** popcount(t) if scalar else lab.x_plus_one(t)
        return P.xi(-r) * weight * chi

    return lab.summed(identity_id, lhs, ts, summand)


# ---------------------------------------------------------------------------
# dichromatic and characteristic polynomials

def _conv_scalar(lab):
    r = lab.r
    lhs = _xy_scalar(_lam_xi(lab.top("size-corank"))) * P.lam(-r) * P.xi(-r)

    def summand(t):
        zr = P.negate_vars(lab.inv("res", t, "dichromatic"), [X])
        zc = P.rename(_to_xi(lab.inv("con", t, "dichromatic")), {X: Y})
        return P.xi(-lab.sm.ranks[t]) * (-P.py()) ** popcount(t) * zr * zc

    return lab.summed("conv-scalar", lhs, lab.central(), summand)


def _conv_scalar_special(lab):
    lhs = P.rename(lab.top("dichromatic"), {X: Y})

    def summand(t):
        zr = _at(lab.inv("res", t, "dichromatic"), {X: -1})
        zc = P.rename(_at(lab.inv("con", t, "dichromatic"), {LAM: 1}), {X: Y})
        return (-P.py()) ** popcount(t) * zr * zc

    return lab.summed("conv-scalar-special", lhs, lab.central(), summand)


def _char_conv(lab, identity_id, ts):
    r = lab.r
    lhs = _lam_xi(lab.top("characteristic"))

    def summand(t):
        return (P.lam(r - lab.sm.ranks[t]) * lab.inv("res", t, "characteristic")
                * _to_xi(lab.inv("con", t, "characteristic")))

    return lab.summed(identity_id, lhs, ts, summand)


# ---------------------------------------------------------------------------
# subset-corank and size-corank polynomials

def _sc_conv(lab):
    r = lab.r
    lhs = _xy_multi(lab, _lam_xi(lab.top("subset-corank")))

    def summand(t):
        sr = P.negate_vars(lab.inv("res", t, "subset-corank"), lab.xs)
        sc = P.rename(_to_xi(lab.inv("con", t, "subset-corank")), lab.x_to_y)
        return P.lam(r - lab.sm.ranks[t]) * (-1) ** popcount(t) * lab.y_mono(t) * sr * sc

    return lab.summed("sc-conv", lhs, lab.central(), summand)


def _sc_conv_special(lab):
    r = lab.r
    lhs = P.rename(lab.top("subset-corank"), lab.x_to_y)

    def summand(t):
        sr = _at(lab.inv("res", t, "subset-corank"), {v: -1 for v in lab.xs})
        sc = P.rename(_at(lab.inv("con", t, "subset-corank"), {LAM: 1}), lab.x_to_y)
        return P.lam(r - lab.sm.ranks[t]) * (-1) ** popcount(t) * lab.y_mono(t) * sr * sc

    return lab.summed("sc-conv-special", lhs, lab.central(), summand)


def _sc_weighted(lab):
    lhs = _xy_multi(lab, _to_xi(lab.top("subset-corank")))

    def summand(t):
        sc = P.negate_vars(P.rename(_to_xi(lab.inv("con", t, "subset-corank")), lab.x_to_y),
                           lab.ys)
        return lab.y_mono(t) * lab.x_plus_one(t) * sc

    return lab.summed("sc-weighted", lhs, lab.central(), summand)


def _flats_chi(lab, identity_id, name, scalar):
    lhs = _to_xi(lab.top(name))

    def summand(t):
        weight = (P.px() + 1) ** popcount(t) if scalar else lab.x_plus_one(t)
        return weight * _to_xi(lab.inv("con", t, "characteristic"))

    return lab.summed(identity_id, lhs, lab.flats(), summand)


def _szc_conv(lab):
    r = lab.r
    lhs = _xy_scalar(_lam_xi(lab.top("size-corank")))

    def summand(t):
        sr = P.negate_vars(lab.inv("res", t, "size-corank"), [X])
        sc = P.rename(_to_xi(lab.inv("con", t, "size-corank")), {X: Y})
        return P.lam(r - lab.sm.ranks[t]) * (-P.py()) ** popcount(t) * sr * sc

    return lab.summed("szc-conv", lhs, lab.central(), summand)


def _szc_conv_special(lab):
    r = lab.r
    lhs = P.rename(lab.top("size-corank"), {X: Y})

    def summand(t):
        sr = _at(lab.inv("res", t, "size-corank"), {X: -1})
        sc = P.rename(_at(lab.inv("con", t, "size-corank"), {LAM: 1}), {X: Y})
        return P.lam(r - lab.sm.ranks[t]) * (-P.py()) ** popcount(t) * sr * sc

    return lab.summed("szc-conv-special", lhs, lab.central(), summand)


# ---------------------------------------------------------------------------
# rank generating polynomial

def _rg_conv(lab):
    r = lab.r
    lhs = _xy_scalar(_lam_xi(lab.top("rank-gen")))

    def summand(t):
        rt = lab.sm.ranks[t]
        rr = P.negate_vars(lab.inv("res", t, "rank-gen"), [LAM, X])
        rc = P.rename(_to_xi(lab.inv("con", t, "rank-gen")), {X: Y})
        return P.lam(r - rt) * (-P.py()) ** (popcount(t) - rt) * rr * rc

    return lab.summed("rg-conv", lhs, lab.central(), summand)


def _rg_conv_special(lab):
    r = lab.r
    lhs = P.rename(lab.top("rank-gen"), {X: Y})

    def summand(t):
        rt = lab.sm.ranks[t]
        rr = _at(lab.inv("res", t, "rank-gen"), {X: -1})
        rc = P.rename(_at(lab.inv("con", t, "rank-gen"), {LAM: -1}), {X: Y})
        return (-P.lam()) ** (r - rt) * (-P.py()) ** (popcount(t) - rt) * rr * rc

    return lab.summed("rg-conv-special", lhs, lab.central(), summand)


def _rg_semi(lab, identity_id, ts):
    lhs = _to_xi(lab.top("rank-gen"))

    def summand(t):
        rr = _at(lab.inv("res", t, "rank-gen"), {LAM: -1})
        rc = _to_xi(_at(lab.inv("con", t, "rank-gen"), {X: -1}))
        return rr * rc

    return lab.summed(identity_id, lhs, ts, summand)


# ---------------------------------------------------------------------------
# specialization lattice

def _specializations(lab, multivariate):
    sm, r = lab.sm, lab.r
    lam = P.lam()
    dc = {name: polynomial(sm, name, Route.DC) for name in
          ("tutte", "rank-gen", "characteristic", "dichromatic", "size-corank")}
    chi = lab.top("characteristic")
    out = []
    if multivariate:
        z = polynomial(sm, "z", Route.DC)
        out.append(IdentityReport("lattice-sc-z", lab.top("subset-corank"), z * P.lam(r)))
        out.append(IdentityReport("lattice-dichromatic", collapse_x(lab.top("z")), dc["dichromatic"]))
        out.append(IdentityReport("lattice-size-corank", collapse_x(lab.top("subset-corank")),
                                  dc["size-corank"]))
        out.append(IdentityReport("lattice-tutte-z", dc["tutte"],
                                  tutte_from_subset_corank(z * P.lam(r), r)))
    # SC(x*l, x) = x^r R(l, x): the x-power-cleared form of SC(l, x) = x^r R(l/x, x)
    out.append(IdentityReport("lattice-sc-rank-gen",
                              _at(lab.top("size-corank"), {LAM: lam * P.px()}),
                              dc["rank-gen"] * P.px(r)))
    out.append(IdentityReport("lattice-tutte-rank-gen", lab.top("tutte"),
                              _at(dc["rank-gen"], {LAM: lam - 1, X: P.px() - 1})))
    out.append(IdentityReport("lattice-chi-sc", chi, _at(dc["size-corank"], {X: -1})))
    out.append(IdentityReport("lattice-chi-tutte", chi,
                              _at(dc["tutte"], {LAM: 1 - lam, X: 0}) * (-1) ** r))
    out.append(IdentityReport("lattice-chi-rank-gen", chi,
                              _at(dc["rank-gen"], {LAM: -lam, X: -1}) * (-1) ** r))
    out.append(IdentityReport("lattice-chi-z", chi, _at(dc["dichromatic"], {X: -1}) * P.lam(r)))
    out.append(IdentityReport("crapo", dc["tutte"], polynomial(sm, "tutte", Route.ACTIVITIES)))
    try:
        sizes = sum(interval_decomposition(sm).sizes())
        out.append(IdentityReport("decomposition", P.Poly.const(len(sm.ranks)),
                                  P.Poly.const(sizes)))
    except DecompositionError:
        out.append(IdentityReport("decomposition", P.Poly.const(len(sm.ranks)), P.ZERO))
    return out


# ---------------------------------------------------------------------------
# public checkers

def check_convolution_multivariate(sm, verbose=False):
    return _conv_multivariate(_Lab(sm, verbose))


def check_convolution_multivariate_special(sm, verbose=False):
    return _conv_multivariate_special(_Lab(sm, verbose))


def check_key_property(sm, verbose=False):
    return _key_property(_Lab(sm, verbose))


def check_convolution_scalar(sm, verbose=False):
    lab = _Lab(sm, verbose)
    return [_conv_scalar(lab), _conv_scalar_special(lab)]


def check_characteristic_convolution(sm, verbose=False):
    lab = _Lab(sm, verbose)
    return [_char_conv(lab, "char-conv", lab.central()),
            _char_conv(lab, "char-conv-flats", lab.flats())]


def check_weighted_sum(sm, verbose=False):
    return _weighted_sum(_Lab(sm, verbose))


def check_weighted_flats(sm, verbose=False, multivariate=True):
    lab = _Lab(sm, verbose)
    out = []
    if multivariate:
        out.append(_weighted_chi(lab, "weighted-full-multivariate", lab.central(), False))
        out.append(_weighted_chi(lab, "weighted-flats-multivariate", lab.flats(), False))
    out.append(_weighted_chi(lab, "weighted-full-scalar", lab.central(), True))
    out.append(_weighted_chi(lab, "weighted-flats-scalar", lab.flats(), True))
    return out


def check_sc_identities(sm, verbose=False):
    lab = _Lab(sm, verbose)
    return [_sc_conv(lab), _sc_conv_special(lab), _sc_weighted(lab),
            _flats_chi(lab, "sc-weighted-flats", "subset-corank", False)]


def check_size_corank_identities(sm, verbose=False):
    lab = _Lab(sm, verbose)
    return [_szc_conv(lab), _szc_conv_special(lab),
            _flats_chi(lab, "szc-weighted-flats", "size-corank", True)]


def check_rank_gen_identities(sm, verbose=False):
    lab = _Lab(sm, verbose)
    cyclic = [t for t in lab.flats() if is_cyclic_flat(sm, t)]
    return [_rg_conv(lab), _rg_conv_special(lab),
            _rg_semi(lab, "rg-semi", lab.central()),
            _rg_semi(lab, "rg-semi-flats", lab.flats()),
            _rg_semi(lab, "rg-semi-cyclic", cyclic)]


def check_specializations(sm, multivariate=True):
    return _specializations(_Lab(sm), multivariate)


def check_all(sm, verbose=False, multivariate=None):
    """Run every checker; multivariate identities only when n <= MULTIVARIATE_LIMIT
    unless ``multivariate`` forces the choice."""
    if multivariate is None:
        multivariate = sm.n <= MULTIVARIATE_LIMIT
    lab = _Lab(sm, verbose)
    reports = []
    if multivariate:
        reports += [_conv_multivariate(lab), _conv_multivariate_special(lab),
                    _key_property(lab)]
    reports += [_conv_scalar(lab), _conv_scalar_special(lab),
                _char_conv(lab, "char-conv", lab.central()),
                _char_conv(lab, "char-conv-flats", lab.flats())]
    if multivariate:
        reports += [_weighted_sum(lab),
                    _weighted_chi(lab, "weighted-full-multivariate", lab.central(), False),
                    _weighted_chi(lab, "weighted-flats-multivariate", lab.flats(), False)]
    reports += [_weighted_chi(lab, "weighted-full-scalar", lab.central(), True),
                _weighted_chi(lab, "weighted-flats-scalar", lab.flats(), True)]
    if multivariate:
        reports += [_sc_conv(lab), _sc_conv_special(lab), _sc_weighted(lab),
                    _flats_chi(lab, "sc-weighted-flats", "subset-corank", False)]
    reports += [_szc_conv(lab), _szc_conv_special(lab),
                _flats_chi(lab, "szc-weighted-flats", "size-corank", True)]
    cyclic = [t for t in lab.flats() if is_cyclic_flat(sm, t)]
    reports += [_rg_conv(lab), _rg_conv_special(lab),
                _rg_semi(lab, "rg-semi", lab.central()),
                _rg_semi(lab, "rg-semi-flats", lab.flats()),
                _rg_semi(lab, "rg-semi-cyclic", cyclic)]
    reports += _specializations(lab, multivariate)
    order = {name: i for i, name in enumerate(IDENTITIES)}
    return sorted(reports, key=lambda rep: order[rep.identity_id])


def run_identity(sm, identity_id, verbose=False):
    """The single report named ``identity_id``."""
    if identity_id not in IDENTITIES:
        raise ValueError(f"unknown identity {identity_id!r}")
    multivariate = identity_id in MULTIVARIATE_IDENTITIES
    for rep in check_all(sm, verbose, multivariate=multivariate or None):
        if rep.identity_id == identity_id:
            return rep
    raise ValueError(f"identity {identity_id!r} was not run")

