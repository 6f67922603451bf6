"""Building semimatroids from documents, matroid rank tables, arrangements and seeds.

Document formats (JSON):

explicit::

    {"ground": ["a", "b"], "central": [[], ["a"]], "rank": [[[], 0], [["a"], 1]]}

matroid rank table (every subset listed)::

    {"ground": [...], "matroid_rank": [[["a"], 1], ...]}

affine arrangement (rationals as ``{"num": p, "den": q}``, plain ints accepted)::

    {"dimension": 2, "hyperplanes": [{"label": "a", "normal": [1, 0], "offset": 0}, ...]}
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .core import InputError, Semimatroid, _check_elements, bits, check_axioms, popcount


# ---------------------------------------------------------------------------
# explicit documents

def from_explicit(doc):
    """Validated semimatroid from an explicit ``{"ground", "central", "rank"}`` document."""
    try:
        ground = doc["ground"]
        central = doc["central"]
        rank = doc["rank"]
    except (KeyError, TypeError) as exc:
        raise InputError(f"explicit document lacks field {exc}") from None
    if not isinstance(ground, list) or not isinstance(central, list) or not isinstance(rank, list):
        raise InputError("ground, central and rank must be lists")
    pairs = []
    for entry in rank:
        if not (isinstance(entry, list) and len(entry) == 2 and isinstance(entry[0], list)):
            raise InputError(f"rank entry {entry!r} is not a [labels, rank] pair")
        pairs.append((entry[0], entry[1]))
    return check_axioms(ground, central, pairs)


def to_explicit(sm):
    """Canonical explicit document: subsets sorted, labels in ground order."""
    ground, central, rank = sm.to_raw()
    return {"ground": ground, "central": central, "rank": [[labels, r] for labels, r in rank]}


# ---------------------------------------------------------------------------
# matroids

def from_matroid_rank(ground, rank):
    """Matroid as a semimatroid whose every subset is central.

    ``rank`` maps label collections to ints (or is a callable on frozensets of
    labels) and must cover all 2^n subsets.
    """
    elements = _check_elements(ground)
    n = len(elements)
    index = {lab: i for i, lab in enumerate(elements)}
    if callable(rank):
        table = {m: rank(frozenset(elements[i] for i in bits(m))) for m in range(1 << n)}
    else:
        pairs = rank.items() if hasattr(rank, "items") else rank
        table = {}
        for labels, r in pairs:
            m = 0
            for lab in labels:
                if lab not in index:
                    raise InputError(f"unknown element {lab!r} in rank table")
                m |= 1 << index[lab]
            if m in table:
                raise InputError("rank table lists a subset twice")
            table[m] = r
    missing = [m for m in range(1 << n) if m not in table]
    if missing:
        raise InputError(f"matroid rank table misses {len(missing)} subsets")
    problems = matroid_violations(n, table)
    if problems:
        raise InputError("not a matroid rank function: " + "; ".join(problems[:5]))
    return Semimatroid.from_masks(elements, table)


def matroid_violations(n, table):
    """Local matroid rank axioms: r(0)=0, unit increase, local submodularity."""
    out = []
    if table[0] != 0:
        out.append("rank of the empty set is not 0")
    for m in range(1 << n):
        r = table[m]
        for i in range(n):
            bi = 1 << i
            if m & bi:
                continue
            if not r <= table[m | bi] <= r + 1:
                out.append(f"rank jumps between masks {m} and {m | bi}")
            for j in range(i + 1, n):
                bj = 1 << j
                if m & bj:
                    continue
                if table[m | bi] + table[m | bj] < table[m | bi | bj] + r:
                    out.append(f"submodularity fails at mask {m} with {i},{j}")
    return out


def uniform_matroid(k, n, labels=None):
    labels = labels or [str(i + 1) for i in range(n)]
    return Semimatroid.from_masks(labels, {m: min(popcount(m), k) for m in range(1 << n)})


def graphic_matroid(num_vertices, edges, labels=None):
    """Cycle matroid of a multigraph: rank = |V| minus number of components."""
    labels = labels or [f"e{i + 1}" for i in range(len(edges))]

    def rank(mask):
        parent = list(range(num_vertices))

        def find(u):
            while parent[u] != u:
                parent[u] = parent[parent[u]]
                u = parent[u]
            return u

        r = 0
        for i in bits(mask):
            u, v = find(edges[i][0]), find(edges[i][1])
            if u != v:
                parent[u] = v
                r += 1
        return r

    return Semimatroid.from_masks(labels, {m: rank(m) for m in range(1 << len(edges))})


# ---------------------------------------------------------------------------
# arrangements

@dataclass(frozen=True)
class Hyperplane:
    label: str
    normal: tuple
    offset: Fraction


@dataclass(frozen=True)
class Arrangement:
    dimension: int
    hyperplanes: tuple

    @classmethod
    def from_doc(cls, doc):
        try:
            d = doc["dimension"]
            raw = doc["hyperplanes"]
        except (KeyError, TypeError) as exc:
            raise InputError(f"arrangement document lacks field {exc}") from None
        if isinstance(d, bool) or not isinstance(d, int) or d < 0:
            raise InputError("dimension must be a nonnegative integer")
        hs = []
        for h in raw:
            try:
                label, normal, offset = h["label"], h["normal"], h["offset"]
            except (KeyError, TypeError) as exc:
                raise InputError(f"hyperplane lacks field {exc}") from None
            if not isinstance(normal, list) or len(normal) != d:
                raise InputError(f"normal of {label!r} must have {d} coordinates")
            hs.append(Hyperplane(str(label), tuple(_rational(c) for c in normal), _rational(offset)))
        return cls(d, tuple(hs))

    def to_doc(self):
        return {
            "dimension": self.dimension,
            "hyperplanes": [
                {"label": h.label, "normal": [_rational_doc(c) for c in h.normal],
                 "offset": _rational_doc(h.offset)}
                for h in self.hyperplanes
            ],
        }


def _rational(value):
    if isinstance(value, bool):
        raise InputError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, dict):
        num, den = value.get("num"), value.get("den")
        if not isinstance(num, int) or not isinstance(den, int) or isinstance(num, bool):
            raise InputError(f"malformed rational {value!r}")
        if den <= 0:
            raise InputError(f"rational {value!r} needs a positive denominator")
        return Fraction(num, den)
    raise InputError(f"malformed rational {value!r}")


def _rational_doc(q):
    return {"num": q.numerator, "den": q.denominator}


def integer_rank(rows):
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    a = [list(r) for r in rows]
    if not a:
        return 0
    m, n = len(a), len(a[0])
    rank = 0
    prev = 1
    for col in range(n):
        pivot = next((i for i in range(rank, m) if a[i][col] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        p = a[rank][col]
        for i in range(rank + 1, m):
            for j in range(col + 1, n):
                # exact: Bareiss guarantees divisibility by the previous pivot
                a[i][j] = (p * a[i][j] - a[i][col] * a[rank][j]) // prev
            a[i][col] = 0
        prev = p
        rank += 1
        if rank == m:
            break
    return rank


def _integer_row(h):
    """Normal and offset of ``h`` scaled to a common integer row [n | c]."""
    coords = list(h.normal) + [h.offset]
    scale = lcm(*(q.denominator for q in coords))
    return [int(q * scale) for q in coords]


def from_arrangement(arr):
    """Semimatroid of an affine arrangement: A is central iff its hyperplanes meet.

    Rank is the rank of the normals in A; consistency is rank([N | c]) == rank(N).
    Central sets are grown level by level, only from sets all of whose
    facets are central.
    """
    if isinstance(arr, dict):
        arr = Arrangement.from_doc(arr)
    labels = [h.label for h in arr.hyperplanes]
    _check_elements(labels)
    rows = []
    for h in arr.hyperplanes:
        if all(c == 0 for c in h.normal):
            raise InputError(f"hyperplane {h.label!r} has a zero normal")
        rows.append(_integer_row(h))
    n = len(rows)
    ranks = {0: 0}
    level = [0]
    while level:
        nxt = []
        for m in level:
            top = m.bit_length()
            for i in range(top, n):
                cand = m | 1 << i
                if any((cand & ~(1 << j)) not in ranks for j in bits(m)):
                    continue
                sel = [rows[j] for j in bits(cand)]
                r_normal = integer_rank([row[:-1] for row in sel])
                if integer_rank(sel) == r_normal:
                    ranks[cand] = r_normal
                    nxt.append(cand)
        level = nxt
    return Semimatroid.from_masks(labels, ranks)


# ---------------------------------------------------------------------------
# seeded random arrangements

MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 (Steele, Lea, Flood 2014): frozen so corpora reproduce everywhere."""

    def __init__(self, seed):
        self.state = seed & MASK64

    def next(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def uniform(self, lo, hi):
        """Uniform integer in [lo, hi] by rejection (no modulo bias)."""
        span = hi - lo + 1
        limit = (1 << 64) - (1 << 64) % span
        while True:
            v = self.next()
            if v < limit:
                return lo + v % span

    def shuffle(self, items):
        items = list(items)
        for i in range(len(items) - 1, 0, -1):
            j = self.uniform(0, i)
            items[i], items[j] = items[j], items[i]
        return items


@dataclass(frozen=True)
class RandomSpec:
    seed: int
    n: int
    d: int
    bound: int


def random_arrangement(spec):
    """Hyperplanes h1..hn: for each, d normal coordinates (redrawn while all
    zero) and then one offset, every draw uniform in [-bound, bound]."""
    if spec.n < 0 or spec.d < 0:
        raise InputError("n and d must be nonnegative")
    if spec.n and (spec.bound < 1 or spec.d < 1):
        raise InputError("bound and d must be at least 1 to draw nonzero normals")
    rng = SplitMix64(spec.seed)
    hs = []
    for i in range(spec.n):
        while True:
            normal = tuple(Fraction(rng.uniform(-spec.bound, spec.bound)) for _ in range(spec.d))
            if any(normal):
                break
        offset = Fraction(rng.uniform(-spec.bound, spec.bound))
        hs.append(Hyperplane(f"h{i + 1}", normal, offset))
    return Arrangement(spec.d, tuple(hs))


def random_instance(spec):
    return from_arrangement(random_arrangement(spec))


# ---------------------------------------------------------------------------
# files

def from_document(doc):
    """Dispatch on the document's fields."""
    if not isinstance(doc, dict):
        raise InputError("document must be a JSON object")
    if "hyperplanes" in doc:
        return from_arrangement(doc)
    if "matroid_rank" in doc:
        try:
            ground, table = doc["ground"], doc["matroid_rank"]
        except KeyError as exc:
            raise InputError(f"matroid document lacks field {exc}") from None
        return from_matroid_rank(ground, [(labels, r) for labels, r in table])
    if "central" in doc:
        return from_explicit(doc)
    raise InputError("unrecognized document: expected hyperplanes, matroid_rank or central")


def load(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None
    return from_document(doc)
