"""Extendability tables for poled trees and the machinery built on them.

A poled tree designates vertices with spare ports.  Its h table answers, for
every way of labeling the virtual half-edges around the poles, whether the
rest of the tree can be labeled correctly.  Trees with equal tables are
interchangeable inside any larger tree (check_replacement), concatenations
of rooted trees into a bipolar path are determined by the member tables
(concat_bipolar), and a repeated prefix table yields a pumpable
decomposition (pumping_decompose).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement, product
from typing import Iterable, Optional, Sequence

from .problems import LclProblem, VertexConfig
from .trees import PortTree, TreeBuilder, TreeGenSpec, gen_tree


@lru_cache(maxsize=None)
def _multisets(num_labels: int, size: int) -> tuple[tuple[int, ...], ...]:
    """All sorted label tuples of the given size, lexicographic."""
    return tuple(combinations_with_replacement(range(num_labels), size))


@lru_cache(maxsize=None)
def _multiset_index(num_labels: int, size: int) -> dict[tuple[int, ...], int]:
    return {m: i for i, m in enumerate(_multisets(num_labels, size))}


@dataclass(frozen=True)
class PoledTree:
    """A tree with ordered poles and optional fixed half-edge labels.

    fixed entries are (vertex, port, label); a fixed virtual port pins one
    leftover label at that vertex, a fixed real port pins the half-edge.
    """

    tree: PortTree
    poles: tuple[int, ...]
    fixed: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self) -> None:
        if not self.poles:
            raise ValueError("need at least one pole")
        if len(set(self.poles)) != len(self.poles):
            raise ValueError("poles must be distinct")
        for v in self.poles:
            if not 0 <= v < self.tree.n:
                raise ValueError(f"pole {v} out of range")
            if self.tree.real_degree(v) >= self.tree.delta:
                raise ValueError(f"pole {v} has no residual ports")
        seen = set()
        for v, p, _lab in self.fixed:
            if not 0 <= v < self.tree.n or not 0 <= p < self.tree.delta:
                raise ValueError(f"fixed label at bad position {v}:{p}")
            if (v, p) in seen:
                raise ValueError(f"port {v}:{p} fixed twice")
            seen.add((v, p))

    def arities(self) -> tuple[int, ...]:
        return tuple(
            self.tree.delta - self.tree.real_degree(v) for v in self.poles
        )


@dataclass(frozen=True)
class HTable:
    """Dense extendability table over canonical interface enumeration.

    Bit j of bits answers the j-th element of the mixed-radix enumeration
    over per-pole label multisets.  The arity signature is part of the
    identity: tables over different pole shapes never compare equal.
    """

    num_labels: int
    arities: tuple[int, ...]
    bits: int

    def index_of(self, interfaces: Sequence[Iterable[int]]) -> int:
        if len(interfaces) != len(self.arities):
            raise ValueError("wrong number of pole interfaces")
        idx = 0
        for size, interface in zip(self.arities, interfaces):
            key = tuple(sorted(interface))
            if len(key) != size:
                raise ValueError(f"interface {key} has size != {size}")
            idx = idx * len(_multisets(self.num_labels, size))
            idx += _multiset_index(self.num_labels, size)[key]
        return idx

    def lookup(self, *interfaces: Iterable[int]) -> bool:
        return bool(self.bits >> self.index_of(interfaces) & 1)

    def interface_space(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        """All interface tuples in enumeration order."""
        return tuple(
            product(*(_multisets(self.num_labels, size) for size in self.arities))
        )

    def yes_interfaces(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        return tuple(
            x for i, x in enumerate(self.interface_space()) if self.bits >> i & 1
        )


@dataclass(frozen=True)
class EquivClass:
    """Equality of poled trees up to replacement: exactly table equality."""

    table: HTable


def h_table(problem: LclProblem, poled: PoledTree) -> HTable:
    """Extendability of every pole-interface choice, by bottom-up DP."""
    tree = poled.tree
    if tree.delta != problem.delta:
        raise ValueError("tree delta differs from problem delta")
    for _v, _p, lab in poled.fixed:
        if not 0 <= lab < problem.num_labels:
            raise ValueError(f"fixed label id {lab} out of range")
    arities = poled.arities()
    nl = problem.num_labels
    bits = 0
    spaces = [_multisets(nl, size) for size in arities]
    for idx, interfaces in enumerate(product(*spaces)):
        if _extendable(problem, poled, interfaces):
            bits |= 1 << idx
    return HTable(nl, arities, bits)


def _extendable(
    problem: LclProblem,
    poled: PoledTree,
    interfaces: tuple[tuple[int, ...], ...],
) -> bool:
    """One DP pass: can the whole tree be labeled with these pole interfaces?"""
    tree = poled.tree
    root = poled.poles[0]
    pole_of = {v: i for i, v in enumerate(poled.poles)}
    fixed_at: dict[int, list[tuple[int, int]]] = {}
    for v, p, lab in poled.fixed:
        fixed_at.setdefault(v, []).append((p, lab))

    order, parent = _bfs_orientation(tree, root)
    children: dict[int, list[int]] = {v: [] for v in order}
    for v in order:
        if parent[v] is not None:
            children[parent[v]].append(v)

    # feasible_up[v] = labels v can show on its parent port
    feasible_up: dict[int, set[int]] = {}
    for v in reversed(order):
        kids = children[v]
        # per-kid labels acceptable on v's side of that edge
        kid_ok = [
            {m for m in range(problem.num_labels)
             if any(problem.edge_ok(m, b) for b in feasible_up[c])}
            for c in kids
        ]
        forced_kid: list[Optional[int]] = [None] * len(kids)
        forced_parent: Optional[int] = None
        fixed_virtual: list[int] = []
        for p, lab in fixed_at.get(v, ()):  # route fixed ports to their role
            target = tree.ports[v][p]
            if target is None:
                fixed_virtual.append(lab)
            elif parent[v] is not None and target[0] == parent[v]:
                forced_parent = lab
            else:
                forced_kid[kids.index(target[0])] = lab
        want_virtual = (
            Counter(interfaces[pole_of[v]]) if v in pole_of else None
        )
        need_virtual = Counter(fixed_virtual)
        if want_virtual is not None and not _contains(want_virtual, need_virtual):
            # the interface contradicts the fixed labels: nothing fits here
            feasible_up[v] = set()
            if v == root:
                return False
            continue

        def fits(config: VertexConfig, up: Optional[int]) -> bool:
            pool = Counter(config.labels)
            if up is not None:
                if pool[up] == 0:
                    return False
                pool[up] -= 1
            return _assign_children(
                pool, kid_ok, forced_kid, 0, want_virtual, need_virtual
            )

        if v == root:
            return any(fits(c, None) for c in problem.vertex_configs)
        ok = set()
        for up in range(problem.num_labels):
            if forced_parent is not None and up != forced_parent:
                continue
            if any(fits(c, up) for c in problem.vertex_configs):
                ok.add(up)
        feasible_up[v] = ok
    raise AssertionError("root must terminate the walk")


def _contains(big: Counter, small: Counter) -> bool:
    return all(big[k] >= n for k, n in small.items())


def _assign_children(
    pool: Counter,
    kid_ok: list[set[int]],
    forced: list[Optional[int]],
    j: int,
    want_virtual: Optional[Counter],
    need_virtual: Counter,
) -> bool:
    """Give each child edge a label from pool; leftovers are the virtuals."""
    if j == len(kid_ok):
        leftover = +pool
        if want_virtual is not None:
            return leftover == want_virtual
        return _contains(leftover, need_virtual)
    choices = [forced[j]] if forced[j] is not None else sorted(kid_ok[j])
    for m in choices:
        if pool[m] > 0 and m in kid_ok[j]:
            pool[m] -= 1
            if _assign_children(pool, kid_ok, forced, j + 1, want_virtual, need_virtual):
                pool[m] += 1
                return True
            pool[m] += 1
    return False


def _bfs_orientation(
    tree: PortTree, root: int
) -> tuple[list[int], dict[int, Optional[int]]]:
    order = [root]
    parent: dict[int, Optional[int]] = {root: None}
    for v in order:
        for u in tree.neighbors(v):
            if u not in parent:
                parent[u] = v
                order.append(u)
    return order, parent


# --- concatenation ----------------------------------------------------------------


def concat_bipolar(problem: LclProblem, tables: Sequence[HTable]) -> HTable:
    """Table of the bipolar tree formed by joining the roots into a path.

    The members are rooted tables; every root needs residual arity >= 2
    to accommodate the path edges.  k=1 returns the rooted table itself,
    the single pole playing both endpoint roles.
    """
    tables = list(tables)
    if not tables:
        raise ValueError("need at least one rooted table")
    nl = problem.num_labels
    for t in tables:
        if len(t.arities) != 1:
            raise ValueError("concatenation takes rooted (single-pole) tables")
        if t.num_labels != nl:
            raise ValueError("table label count differs from problem")
        if t.arities[0] < 2:
            raise ValueError(
                f"root arity {t.arities[0]} cannot host a path edge and a pole"
            )
    if len(tables) == 1:
        return tables[0]

    edge_ok = [
        [problem.edge_ok(a, b) for b in range(nl)] for a in range(nl)
    ]
    # interior piece i admits (incoming y, outgoing x) iff some padding of
    # free leftovers makes its rooted table say yes
    interior: list[list[list[bool]]] = []
    for t in tables[1:-1]:
        spare = t.arities[0] - 2
        rel = [[False] * nl for _ in range(nl)]
        for y in range(nl):
            for x in range(nl):
                rel[y][x] = any(
                    t.lookup(sorted((y, x) + r)) for r in _multisets(nl, spare)
                )
        interior.append(rel)

    first, last = tables[0], tables[-1]
    s_size, t_size = first.arities[0] - 1, last.arities[0] - 1
    result = HTable(nl, (s_size, t_size), 0)
    bits = 0
    for i_s in _multisets(nl, s_size):
        forward = [first.lookup(sorted(i_s + (x,))) for x in range(nl)]
        for rel in interior:
            forward = [
                any(
                    forward[xp] and edge_ok[xp][y] and rel[y][x]
                    for xp in range(nl)
                    for y in range(nl)
                )
                for x in range(nl)
            ]
        for i_t in _multisets(nl, t_size):
            ok = any(
                forward[x] and edge_ok[x][y] and last.lookup(sorted(i_t + (y,)))
                for x in range(nl)
                for y in range(nl)
            )
            if ok:
                bits |= 1 << result.index_of((i_s, i_t))
    return HTable(nl, (s_size, t_size), bits)


# --- replacement ------------------------------------------------------------------


def check_replacement(
    problem: LclProblem,
    poled: PoledTree,
    u: Iterable[int],
    s_prime: Sequence[int],
    replacement: PoledTree,
) -> bool:
    """Splice replacement in for the induced subtree on u and compare tables.

    u and s_prime describe the poled subtree being cut out: every boundary
    vertex of u and every pole of the host inside u must appear in s_prime,
    and replacement's poles must match s_prime's inside-degrees one by one.
    """
    spliced = _splice(poled, u, tuple(s_prime), replacement)
    return h_table(problem, spliced) == h_table(problem, poled)


def _splice(
    poled: PoledTree,
    u: Iterable[int],
    s_prime: tuple[int, ...],
    repl: PoledTree,
) -> PoledTree:
    tree = poled.tree
    u_set = frozenset(u)
    if not u_set or not u_set <= set(range(tree.n)):
        raise ValueError("u must be a nonempty subset of the vertices")
    if len(set(s_prime)) != len(s_prime) or not set(s_prime) <= u_set:
        raise ValueError("s_prime must be distinct vertices inside u")
    if repl.tree.delta != tree.delta:
        raise ValueError("replacement delta differs")
    if len(repl.poles) != len(s_prime):
        raise ValueError("replacement pole count differs from s_prime")

    inside_deg = {
        v: sum(1 for w in tree.neighbors(v) if w in u_set) for v in u_set
    }
    reached = {min(u_set)}
    stack = [min(u_set)]
    while stack:
        for w in tree.neighbors(stack.pop()):
            if w in u_set and w not in reached:
                reached.add(w)
                stack.append(w)
    if reached != u_set:
        raise ValueError("u must induce a connected subtree")
    boundary = [
        (v, w)
        for v in sorted(u_set)
        for w in tree.neighbors(v)
        if w not in u_set
    ]
    for v, _w in boundary:
        if v not in s_prime:
            raise ValueError(f"boundary vertex {v} of u is not in s_prime")
    for p in poled.poles:
        if p in u_set and p not in s_prime:
            raise ValueError(f"host pole {p} inside u is not in s_prime")
    for i, v in enumerate(s_prime):
        have = repl.tree.real_degree(repl.poles[i])
        if inside_deg[v] != have:
            raise ValueError(
                f"pole degree mismatch at position {i}: {inside_deg[v]} != {have}"
            )

    keep = sorted(set(range(tree.n)) - u_set)
    new_id = {v: i for i, v in enumerate(keep)}
    offset = len(keep)
    builder = TreeBuilder(offset + repl.tree.n, tree.delta)
    for a, pa, b, pb in tree.edges():
        if a in new_id and b in new_id:
            builder.add_edge_at(new_id[a], pa, new_id[b], pb)
    for a, pa, b, pb in repl.tree.edges():
        builder.add_edge_at(offset + a, pa, offset + b, pb)
    free_ports = {
        i: [
            p
            for p in range(tree.delta)
            if repl.tree.ports[repl.poles[i]][p] is None
        ]
        for i in range(len(s_prime))
    }
    for v, w in sorted(boundary, key=lambda e: (e[1], tree.port_to(e[1], e[0]))):
        i = s_prime.index(v)
        builder.add_edge_at(
            new_id[w],
            tree.port_to(w, v),
            offset + repl.poles[i],
            free_ports[i].pop(0),
        )
    new_poles = tuple(
        new_id[p] if p in new_id else offset + repl.poles[s_prime.index(p)]
        for p in poled.poles
    )
    new_fixed = tuple(
        (new_id[v], p, lab) for v, p, lab in poled.fixed if v in new_id
    ) + tuple((offset + v, p, lab) for v, p, lab in repl.fixed)
    return PoledTree(builder.build(), new_poles, new_fixed)


# --- pumping ----------------------------------------------------------------------


def pumping_decompose(
    problem: LclProblem, tables: Sequence[HTable]
) -> Optional[tuple[int, int]]:
    """First (a, b) with equal concatenated-prefix tables, scanning b upward.

    The one-piece prefix never matches a longer one (different signature),
    so any result has 2 <= a < b and splits the list into X, Y, Z with Y
    pumpable.
    """
    tables = list(tables)
    prefixes = [
        concat_bipolar(problem, tables[:j]) for j in range(1, len(tables) + 1)
    ]
    for b in range(2, len(tables) + 1):
        for a in range(1, b):
            if prefixes[a - 1] == prefixes[b - 1]:
                return (a, b)
    return None


# --- census -----------------------------------------------------------------------


@dataclass(frozen=True)
class CensusReport:
    """Distinct table counts observed over sampled rooted trees."""

    max_size: int
    samples_per_size: int
    class1_count: int
    class2_count: int
    ell_pump_bound: int
    cumulative_class1: tuple[int, ...]

    def describe(self) -> str:
        sizes = ", ".join(
            f"{n}:{c}" for n, c in enumerate(self.cumulative_class1, start=1)
        )
        return (
            f"rooted classes: {self.class1_count} "
            f"(cumulative by tree size: {sizes})\n"
            f"bipolar classes from pairwise concatenation: {self.class2_count}\n"
            f"empirical ell_pump bound: {self.ell_pump_bound}"
        )


def class_census(
    problem: LclProblem,
    max_size: int,
    seed: int = 0,
    samples_per_size: int = 6,
) -> CensusReport:
    """Sample rooted trees up to max_size, with every eligible pole, and
    count distinct tables; bipolar classes come from pairwise concatenation
    of the rooted tables that can host path edges."""
    if max_size < 1 or samples_per_size < 1:
        raise ValueError("census sizes must be positive")
    class1: list[HTable] = []
    cumulative = []
    for size in range(1, max_size + 1):
        for i in range(samples_per_size):
            spec = TreeGenSpec(
                n=size,
                delta=problem.delta,
                seed=seed * 100_003 + size * 101 + i,
                model="uniform-attachment-capped",
            )
            tree = gen_tree(spec)
            for v in range(size):
                if tree.real_degree(v) < tree.delta:
                    table = h_table(problem, PoledTree(tree, (v,)))
                    if table not in class1:
                        class1.append(table)
        cumulative.append(len(class1))
    wide = [t for t in class1 if t.arities[0] >= 2]
    class2: list[HTable] = []
    for t1 in wide:
        for t2 in wide:
            table = concat_bipolar(problem, [t1, t2])
            if table not in class2:
                class2.append(table)
    return CensusReport(
        max_size=max_size,
        samples_per_size=samples_per_size,
        class1_count=len(class1),
        class2_count=len(class2),
        ell_pump_bound=len(class2) + 1,
        cumulative_class1=tuple(cumulative),
    )
