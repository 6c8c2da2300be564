"""Classify the bundled problems and a few random ones.

A problem is classified by hunting for an ell-full subset of its vertex
configurations: a set where any two boundary labels can always be joined
through a path of k >= ell vertices.  Finding one pins the problem to the
log-round solvable class; exhausting all subsets without a hit refutes it.
"""
from lcltrees import classify, perfect_matching, random_problem, render_report, three_coloring, two_coloring


def show(name, problem):
    print(f"=== {name} ===")
    print(render_report(classify(problem)))


def main():
    show("proper 3-coloring", three_coloring())
    show("proper 2-coloring", two_coloring())
    show("perfect matching", perfect_matching())
    # random problems land on either side of the fence
    for seed in (4, 5, 6):
        show(f"random problem, seed {seed}", random_problem(seed))


if __name__ == "__main__":
    main()
