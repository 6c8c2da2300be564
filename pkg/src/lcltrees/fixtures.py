"""Small named problems used by tests, demos, and the acceptance suite."""
from __future__ import annotations

from itertools import combinations_with_replacement
from random import Random

from .problems import EdgeConfig, Label, LclProblem, VertexConfig


def three_coloring(delta: int = 3) -> LclProblem:
    """Proper vertex 3-coloring: each vertex monochromatic, neighbors differ."""
    labels = tuple(Label(i, name) for i, name in enumerate("abc"))
    vcfgs = frozenset(VertexConfig.of([i] * delta) for i in range(3))
    ecfgs = frozenset(EdgeConfig.of(i, j) for i in range(3) for j in range(3) if i != j)
    return LclProblem(delta, labels, vcfgs, ecfgs)


def two_coloring(delta: int = 3) -> LclProblem:
    """Proper vertex 2-coloring; solvable on paths of even parity only."""
    labels = tuple(Label(i, name) for i, name in enumerate("ab"))
    vcfgs = frozenset(VertexConfig.of([i] * delta) for i in range(2))
    ecfgs = frozenset({EdgeConfig.of(0, 1)})
    return LclProblem(delta, labels, vcfgs, ecfgs)


def perfect_matching(delta: int = 3) -> LclProblem:
    """Each vertex picks exactly one M port; real M edges must pair up."""
    labels = (Label(0, "M"), Label(1, "U"))
    vcfgs = frozenset({VertexConfig.of([0] + [1] * (delta - 1))})
    ecfgs = frozenset({EdgeConfig.of(0, 0), EdgeConfig.of(1, 1)})
    return LclProblem(delta, labels, vcfgs, ecfgs)


def random_problem(
    seed: int,
    delta: int = 3,
    num_labels: int = 3,
    max_vertex_configs: int = 5,
) -> LclProblem:
    """Seeded random problem: a sample of vertex configs and edge pairs."""
    rng = Random(seed)
    labels = tuple(Label(i, name) for i, name in enumerate("xyzwv"[:num_labels]))
    all_vcfgs = [
        VertexConfig(c) for c in combinations_with_replacement(range(num_labels), delta)
    ]
    count = rng.randint(1, min(max_vertex_configs, len(all_vcfgs)))
    vcfgs = frozenset(rng.sample(all_vcfgs, count))
    all_pairs = [
        EdgeConfig((i, j)) for i in range(num_labels) for j in range(i, num_labels)
    ]
    ecfgs = frozenset(rng.sample(all_pairs, rng.randint(1, len(all_pairs))))
    return LclProblem(delta, labels, vcfgs, ecfgs)
