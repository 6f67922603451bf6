"""Deletion, restriction and contraction, plus memoization keys for minors."""

from dataclasses import dataclass

from .core import DomainError, InputError, Semimatroid, bits, compress


@dataclass(frozen=True)
class MinorKey:
    """Labels in ground order plus the full (mask, rank) table under that order.

    Two minors with equal keys have the same central family and ranks after
    relabeling to 0..n-1 in ground order; the fingerprint is the data itself,
    so keys never collide.
    """

    labels: tuple
    fingerprint: tuple

    @property
    def structure(self):
        """Label-free part, enough to memoize invariants that ignore labels."""
        return (len(self.labels), self.fingerprint)


def _keep_positions(sm, removed):
    return [i for i in range(sm.n) if not removed >> i & 1]


def delete(sm, removed):
    """C \\ S: central sets avoiding S, ranks unchanged.  S may be any subset of E."""
    if removed & ~sm.full:
        raise InputError("deleted set is not a subset of the ground set")
    if removed == 0:
        return sm
    keep = _keep_positions(sm, removed)
    if removed == (1 << len(bits(removed))) - 1:
        # removing a prefix of the order is a plain shift
        k = len(bits(removed))
        ranks = {m >> k: r for m, r in sm.ranks.items() if not m & removed}
    else:
        ranks = {compress(m, keep): r for m, r in sm.ranks.items() if not m & removed}
    return Semimatroid(tuple(sm.elements[i] for i in keep), ranks)


def restrict(sm, kept):
    """C | X, defined as deletion of E - X."""
    if kept & ~sm.full:
        raise InputError("restriction set is not a subset of the ground set")
    return delete(sm, sm.full & ~kept)


def contract(sm, xmask):
    """C / X for central X: sets Y in E - X with Y + X central, rank r(Y+X) - r(X)."""
    if xmask not in sm.ranks:
        raise DomainError(f"cannot contract by non-central {sm.format(xmask)}")
    if xmask == 0:
        return sm
    base = sm.ranks[xmask]
    keep = _keep_positions(sm, xmask)
    if xmask == (1 << len(bits(xmask))) - 1:
        k = len(bits(xmask))
        ranks = {m >> k: r - base for m, r in sm.ranks.items() if m & xmask == xmask}
    else:
        ranks = {compress(m, keep): r - base for m, r in sm.ranks.items() if m & xmask == xmask}
    return Semimatroid(tuple(sm.elements[i] for i in keep), ranks)


def canonical_key(sm):
    return MinorKey(sm.elements, tuple(sorted(sm.ranks.items())))
