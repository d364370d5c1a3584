"""Seeded random instance generators shared across test modules."""

import random
from fractions import Fraction

from tropfw.points import DataSet, TropicalPoint, WeightVector, normalize


def random_point(rng: random.Random, n: int, max_den: int = 12) -> TropicalPoint:
    raw = [Fraction(rng.randint(-24, 24), rng.randint(1, max_den)) for _ in range(n)]
    return normalize(raw)


def random_dataset(rng: random.Random, m: int, n: int, max_den: int = 12) -> DataSet:
    return DataSet(tuple(random_point(rng, n, max_den) for _ in range(m)))


def random_weights(rng: random.Random, m: int, max_den: int = 12) -> WeightVector:
    raw = [Fraction(rng.randint(1, max_den)) for _ in range(m)]
    return WeightVector.normalized(raw)


def random_tree(rng: random.Random, n: int, max_den: int = 6):
    """A random equidistant tree on leaves 1..n with rational heights."""
    from tropfw.trees import PhyloTree, TreeNode, _node

    clusters = [(TreeNode(leaf=i), Fraction(0)) for i in range(1, n + 1)]
    height = Fraction(0)
    while len(clusters) > 1:
        height += Fraction(rng.randint(1, 12), rng.randint(1, max_den))
        k = 2 if len(clusters) == 2 or rng.random() < 0.8 else rng.randint(
            2, len(clusters)
        )
        picked = sorted(rng.sample(range(len(clusters)), k), reverse=True)
        children = []
        for idx in picked:
            node, h = clusters.pop(idx)
            children.append((node, height - h))
        clusters.append((_node(children), height))
    return PhyloTree(n, clusters[0][0])
