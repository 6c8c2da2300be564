import pytest

from lcltrees.fixtures import perfect_matching, random_problem, three_coloring, two_coloring
from lcltrees.trees import TreeGenSpec, gen_tree


@pytest.fixture
def coloring3():
    return three_coloring()


@pytest.fixture
def coloring2():
    return two_coloring()


@pytest.fixture
def matching():
    return perfect_matching()


@pytest.fixture
def random4():
    return random_problem(4)


@pytest.fixture
def random6():
    return random_problem(6)


def path_tree(n, delta=3):
    return gen_tree(TreeGenSpec(n=n, delta=delta, seed=0, model="path"))


def star_tree(n, delta=3):
    return gen_tree(TreeGenSpec(n=n, delta=delta, seed=0, model="star"))
