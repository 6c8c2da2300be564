"""Label a tree piece by piece through a toast of nested regions.

A toast is a laminar family of connected pieces whose boundaries keep a gap
of at least q, topped by the whole tree.  With q >= 2*ell + 2 the solver can
finish each piece before its surroundings exist, then stitch the leftover
regions through reserved length-ell path segments.
"""
from lcltrees import TreeGenSpec, build_toast, gen_tree, is_valid_labeling, solve_toast, verify_toast
from lcltrees.fixtures import three_coloring


def main():
    problem = three_coloring()
    ell = 3
    q = 2 * ell + 2

    tree = gen_tree(TreeGenSpec(n=160, delta=3, seed=21))
    toast = build_toast(tree, q, centers=[0])
    print(f"toast with gap q = {q}:")
    for piece in toast.pieces:
        print(f"  piece of {len(piece)} vertices"
              + (" (the whole tree)" if len(piece) == tree.n else ""))
    print(f"validator says: {verify_toast(tree, toast) or 'sound'}")

    subset = sorted(problem.vertex_configs)
    labeling = solve_toast(problem, subset, ell, tree, toast)
    print(f"solved: {is_valid_labeling(problem, tree, labeling).describe(problem)}")

    # two centers work when their balls stay clear of one another
    path = gen_tree(TreeGenSpec(n=60, delta=3, seed=0, model="path"))
    toast = build_toast(path, q, centers=[5, 54])
    print(f"\npath of 60, centers 5 and 54: {len(toast.pieces)} pieces")
    labeling = solve_toast(problem, subset, ell, path, toast)
    print(f"solved: {is_valid_labeling(problem, path, labeling).describe(problem)}")


if __name__ == "__main__":
    main()
