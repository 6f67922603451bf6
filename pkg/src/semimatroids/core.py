"""Semimatroids on small ground sets, stored explicitly.

Subsets of the ground set are ``int`` bitmasks: bit ``i`` stands for
``elements[i]``.  The element order doubles as the linear order used for
basis activities.  Rank is stored for every central set and is undefined
(a ``DomainError``) everywhere else.
"""

import enum
import re
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType

import numpy as np

MAX_ELEMENTS = 64
_LABEL_RE = re.compile(r"[A-Za-z0-9_]+")


class SemimatroidError(Exception):
    pass


class InputError(SemimatroidError, ValueError):
    """Malformed raw data (unknown labels, duplicates, missing ranks...)."""


class DomainError(SemimatroidError, ValueError):
    """A query outside the domain where it is defined, e.g. rank of a non-central set."""


class AxiomError(SemimatroidError):
    def __init__(self, violations, elements=()):
        self.violations = list(violations)
        self.elements = tuple(elements)
        lines = [v.describe(self.elements) for v in self.violations[:10]]
        more = len(self.violations) - len(lines)
        if more > 0:
            lines.append(f"... and {more} more")
        super().__init__("semimatroid axioms violated:\n  " + "\n  ".join(lines))


class Axiom(str, enum.Enum):
    NONEMPTY = "NONEMPTY"
    NOT_SIMPLICIAL = "NOT_SIMPLICIAL"
    SR1 = "SR1"
    SR2 = "SR2"
    SR3 = "SR3"
    SR4 = "SR4"
    SR5 = "SR5"


class ElementKind(str, enum.Enum):
    LOOP = "Loop"
    ISTHMUS = "Isthmus"
    ORDINARY = "Ordinary"
    NONCENTRAL = "NonCentral"


@dataclass(frozen=True)
class AxiomViolation:
    axiom: Axiom
    witness: tuple

    def describe(self, elements=()):
        sets = ", ".join(format_set(m, elements) for m in self.witness)
        return f"{self.axiom.value}: {sets}"


# bitmask helpers

def popcount(mask):
    return bin(mask).count("1")


def bits(mask):
    """Positions of set bits, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def submasks(mask):
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def subset_key(mask):
    """Canonical subset order: cardinality, then lexicographic in element order."""
    b = bits(mask)
    return (len(b), b)


def canonical_sorted(masks):
    return sorted(masks, key=subset_key)


def format_set(mask, elements=()):
    if elements:
        return "{" + ",".join(elements[i] for i in bits(mask)) + "}"
    return "{" + ",".join(str(i) for i in bits(mask)) + "}"


def compress(mask, keep):
    """Bit ``j`` of the result is bit ``keep[j]`` of ``mask``."""
    out = 0
    for j, i in enumerate(keep):
        if mask >> i & 1:
            out |= 1 << j
    return out


@dataclass(frozen=True, eq=False)
class Semimatroid:
    """A validated semimatroid ``(E, C, r)``.

    Build one through ``check_axioms`` (raw labels) or ``Semimatroid.from_masks``;
    the bare constructor trusts its input.
    """

    elements: tuple
    ranks: MappingProxyType = field(repr=False)

    def __post_init__(self):
        if not isinstance(self.ranks, MappingProxyType):
            object.__setattr__(self, "ranks", MappingProxyType(dict(self.ranks)))

    @classmethod
    def from_masks(cls, elements, ranks, validate=True):
        elements = _check_elements(elements)
        ranks = dict(ranks)
        full = (1 << len(elements)) - 1
        for m in ranks:
            if m < 0 or m & ~full:
                raise InputError(f"subset mask {m} outside the ground set")
        sm = cls(elements, ranks)
        if validate:
            violations = find_violations(sm.elements, sm.ranks)
            if violations:
                raise AxiomError(violations, elements)
        return sm

    def __eq__(self, other):
        if not isinstance(other, Semimatroid):
            return NotImplemented
        return self.elements == other.elements and dict(self.ranks) == dict(other.ranks)

    def __hash__(self):
        return hash((self.elements, frozenset(self.ranks.items())))

    def __repr__(self):
        return f"Semimatroid(n={self.n}, |C|={len(self.ranks)}, r={self.rank})"

    @property
    def n(self):
        return len(self.elements)

    @property
    def full(self):
        return (1 << self.n) - 1

    @cached_property
    def index(self):
        return {lab: i for i, lab in enumerate(self.elements)}

    @cached_property
    def rank(self):
        """r(C): the common rank of the maximal central sets."""
        return max(self.ranks.values())

    @cached_property
    def central(self):
        """Central sets in canonical subset order."""
        return tuple(canonical_sorted(self.ranks))

    def is_central(self, mask):
        return mask in self.ranks

    def mask(self, labels):
        m = 0
        for lab in labels:
            try:
                m |= 1 << self.index[lab]
            except KeyError:
                raise InputError(f"unknown element {lab!r}") from None
        return m

    def labels(self, mask):
        return tuple(self.elements[i] for i in bits(mask))

    def format(self, mask):
        return format_set(mask, self.elements)

    def reorder(self, order):
        """Same semimatroid with the linear order replaced by ``order``."""
        order = tuple(order)
        if sorted(order) != sorted(self.elements) or len(set(order)) != len(order):
            raise InputError("order must be a permutation of the ground set")
        pos = [self.index[lab] for lab in order]
        ranks = {compress(m, pos): r for m, r in self.ranks.items()}
        return Semimatroid(order, ranks)

    def to_raw(self):
        """(labels, central label-lists, [(label-list, rank)]) in canonical order."""
        central = [list(self.labels(m)) for m in self.central]
        return list(self.elements), central, [(list(self.labels(m)), self.ranks[m]) for m in self.central]


def _check_elements(elements):
    elements = tuple(str(e) for e in elements)
    if len(set(elements)) != len(elements):
        raise InputError("ground set labels must be unique")
    if len(elements) > MAX_ELEMENTS:
        raise InputError(f"ground set exceeds {MAX_ELEMENTS} elements")
    for lab in elements:
        if not _LABEL_RE.fullmatch(lab):
            raise InputError(f"label {lab!r} must match [A-Za-z0-9_]+")
    return elements


def check_axioms(elements, central, rank):
    """Validate raw data and return a ``Semimatroid``.

    ``central`` is an iterable of label collections; ``rank`` maps label
    collections (or is an iterable of ``(labels, r)`` pairs).  Missing or
    malformed data raises ``InputError``; axiom failures raise ``AxiomError``
    listing every violation found.
    """
    elements = _check_elements(elements)
    index = {lab: i for i, lab in enumerate(elements)}

    def to_mask(labels, what):
        labels = list(labels)
        if len(set(labels)) != len(labels):
            raise InputError(f"duplicate label in {what} {labels}")
        m = 0
        for lab in labels:
            if lab not in index:
                raise InputError(f"unknown element {lab!r} in {what}")
            m |= 1 << index[lab]
        return m

    family = []
    for labels in central:
        m = to_mask(labels, "central set")
        if m in family:
            raise InputError(f"central set {sorted(labels)} listed twice")
        family.append(m)
    pairs = rank.items() if hasattr(rank, "items") else rank
    rmap = {}
    for labels, r in pairs:
        m = to_mask(labels, "rank entry")
        if m in rmap:
            raise InputError(f"rank given twice for {sorted(labels)}")
        if isinstance(r, bool) or not isinstance(r, int):
            raise InputError(f"rank of {sorted(labels)} is not an integer")
        rmap[m] = r
    missing = [m for m in family if m not in rmap]
    if missing:
        raise InputError("rank missing for central set " + format_set(missing[0], elements))
    extra = [m for m in rmap if m not in set(family)]
    if extra:
        raise InputError("rank given for non-central set " + format_set(extra[0], elements))
    return Semimatroid.from_masks(elements, {m: rmap[m] for m in family})


def find_violations(elements, ranks):
    """Every axiom violation of the family ``ranks`` (mask -> rank).

    SR2..SR5 are checked over all ordered pairs of central sets.
    """
    n = len(elements)
    out = []
    if not ranks:
        return [AxiomViolation(Axiom.NONEMPTY, ())]
    family = canonical_sorted(ranks)
    for m in family:
        for i in bits(m):
            sub = m & ~(1 << i)
            if sub not in ranks:
                out.append(AxiomViolation(Axiom.NOT_SIMPLICIAL, (m, sub)))
    for m in family:
        r = ranks[m]
        if not 0 <= r <= popcount(m):
            out.append(AxiomViolation(Axiom.SR1, (m,)))

    masks = np.array(family, dtype=np.uint64)
    order = np.argsort(masks)
    sorted_masks = masks[order]
    rk = np.array([ranks[m] for m in family], dtype=np.int64)[order]
    pos_in_family = {m: i for i, m in enumerate(family)}

    def lookup(values):
        idx = np.searchsorted(sorted_masks, values)
        idx = np.minimum(idx, len(sorted_masks) - 1)
        found = sorted_masks[idx] == values
        return found, np.where(found, rk[idx], -1)

    ext = []
    for m in family:
        e_mask = 0
        for i in range(n):
            if not m >> i & 1 and (m | 1 << i) in ranks:
                e_mask |= 1 << i
        ext.append(e_mask)

    ry = np.array([ranks[m] for m in family], dtype=np.int64)
    sr2, sr3, sr4, sr5 = [], [], [], []
    for a, xm in enumerate(family):
        x = np.uint64(xm)
        rx = ranks[xm]
        u_in, ru = lookup(masks | x)
        i_in, ri = lookup(masks & x)
        supersets = (masks & x) == x
        for b in np.nonzero(supersets & (ry < rx))[0]:
            sr2.append(AxiomViolation(Axiom.SR2, (xm, family[b])))
        # SR3 is symmetric in X, Y: report each unordered pair once
        bad3 = u_in & i_in & (ri + ru > rx + ry)
        for b in np.nonzero(bad3)[0]:
            if a <= b:
                sr3.append(AxiomViolation(Axiom.SR3, (xm, family[b])))
        bad4 = i_in & (ri == rx) & ~u_in
        for b in np.nonzero(bad4)[0]:
            sr4.append(AxiomViolation(Axiom.SR4, (xm, family[b])))
        room = (masks & ~x & np.uint64(ext[a])) != 0
        for b in np.nonzero((ry > rx) & ~room)[0]:
            sr5.append(AxiomViolation(Axiom.SR5, (xm, family[b])))
    return out + sr2 + sr3 + sr4 + sr5


# queries

def rank_of(sm, mask):
    try:
        return sm.ranks[mask]
    except KeyError:
        raise DomainError(f"rank undefined: {sm.format(mask)} is not central") from None


def _require_central(sm, mask):
    if mask not in sm.ranks:
        raise DomainError(f"{sm.format(mask)} is not central")


def closure(sm, mask):
    """{e : X+e central and r(X+e) = r(X)}; contains X."""
    _require_central(sm, mask)
    r = sm.ranks[mask]
    out = mask
    for i in range(sm.n):
        bit = 1 << i
        if not mask & bit and sm.ranks.get(mask | bit) == r:
            out |= bit
    return out


def flats(sm):
    return [m for m in sm.central if closure(sm, m) == m]


def bases(sm):
    """Maximal independent central sets; all have cardinality r(C)."""
    r = sm.rank
    return [m for m in sm.central if sm.ranks[m] == r and popcount(m) == r]


def independent(sm, mask):
    return sm.ranks.get(mask) == popcount(mask)


def circuits(sm):
    """Minimal dependent central sets."""
    out = []
    for m in sm.central:
        if sm.ranks[m] < popcount(m) and all(independent(sm, m & ~(1 << i)) for i in bits(m)):
            out.append(m)
    return out


def classify_element(sm, e):
    """Loop / NonCentral / Isthmus / Ordinary, tested in that order."""
    if e not in sm.index:
        raise InputError(f"unknown element {e!r}")
    bit = 1 << sm.index[e]
    if bit not in sm.ranks:
        return ElementKind.NONCENTRAL
    if sm.ranks[bit] == 0:
        return ElementKind.LOOP
    if all(b & bit for b in bases(sm)):
        return ElementKind.ISTHMUS
    return ElementKind.ORDINARY


def is_cyclic_flat(sm, mask):
    """Flat whose restriction has no isthmus."""
    _require_central(sm, mask)
    if closure(sm, mask) != mask:
        return False
    # restriction to a central T is the boolean family on T with inherited ranks
    restricted_bases = [b for b in submasks(mask)
                        if sm.ranks[b] == popcount(b) == sm.ranks[mask]]
    return all(any(not b & (1 << i) for b in restricted_bases) for i in bits(mask))
