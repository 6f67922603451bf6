"""Named test corpora: small matroids and seeded affine arrangements."""

import networkx as nx

from .core import check_axioms
from .ingest import (Arrangement, Hyperplane, RandomSpec, from_arrangement, graphic_matroid,
                     random_instance, uniform_matroid)


def plt():
    """Lines x=0, x=1, y=0 in the plane: two parallel lines crossed by a third."""
    from fractions import Fraction as F
    return from_arrangement(Arrangement(2, (
        Hyperplane("a", (F(1), F(0)), F(0)),
        Hyperplane("b", (F(1), F(0)), F(1)),
        Hyperplane("c", (F(0), F(1)), F(0)),
    )))


def single_loop(label="e"):
    return check_axioms([label], [[], [label]], [([], 0), ([label], 0)])


def single_isthmus(label="e"):
    return check_axioms([label], [[], [label]], [([], 0), ([label], 1)])


def empty():
    return check_axioms([], [[]], [([], 0)])


def u12():
    return uniform_matroid(1, 2, ["a", "b"])


def uniform_family(max_n=6):
    return [(f"U({k},{n})", uniform_matroid(k, n)) for n in range(max_n + 1) for k in range(n + 1)]


def graphic_family(max_vertices=4):
    """Cycle matroids of every graph on at most ``max_vertices`` vertices (up to
    isomorphism), plus a few multigraphs with loops and parallel edges."""
    out = []
    for i, g in enumerate(nx.graph_atlas_g()):
        if g.number_of_nodes() > max_vertices:
            break
        edges = sorted(g.edges())
        out.append((f"G{i}", graphic_matroid(g.number_of_nodes(), edges)))
    multigraphs = {
        "loop+edge": (2, [(0, 0), (0, 1)]),
        "digon": (2, [(0, 1), (0, 1)]),
        "digon+loop": (2, [(0, 1), (1, 1), (0, 1)]),
        "triangle+parallel": (3, [(0, 1), (1, 2), (0, 2), (0, 1)]),
        "two-loops": (1, [(0, 0), (0, 0)]),
        "K4-chord-doubled": (4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2), (0, 2)]),
    }
    for name, (nv, edges) in multigraphs.items():
        out.append((name, graphic_matroid(nv, edges)))
    return out


def random_specs(count=160, start_seed=1000):
    """Deterministic mix of sizes: n cycles through 1..10, d through 1..4, bound 1..3."""
    specs = []
    for k in range(count):
        n = 1 + k % 10
        d = 1 + (k // 10) % 4
        bound = 1 + (k // 40) % 3
        specs.append(RandomSpec(start_seed + k, n, d, bound))
    return specs


def random_family(count=160, start_seed=1000):
    return [(f"rand(seed={s.seed},n={s.n},d={s.d},b={s.bound})", random_instance(s))
            for s in random_specs(count, start_seed)]


def special_family():
    return [("PLT", plt()), ("loop", single_loop()), ("isthmus", single_isthmus()),
            ("empty", empty()), ("U(1,2)ab", u12())]


def standard_corpus(random_count=160):
    """Uniform matroids n<=6, graphic matroids on <=4 vertices, seeded arrangements."""
    return special_family() + uniform_family() + graphic_family() + random_family(random_count)
