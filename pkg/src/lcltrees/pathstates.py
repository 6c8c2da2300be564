"""Path feasibility and the ell-full condition.

A subset of vertex configs is ell-full when every pair of configs, with
every choice of facing labels at the two path endpoints, can be joined by a
correctly labeled path of k vertices for every k >= ell, using only subset
configs on the interior.  Walking a path one interior vertex at a time only
needs the previous vertex's forward label, so interior feasibility is a
walk in a finite state graph and long-path behavior is settled by the
eventual periodicity of its boolean adjacency powers.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

import numpy as np

from .problems import LclProblem, VertexConfig

VERDICT_LOGN = "IN LOCAL(O(log n)) = BAIRE"
VERDICT_NOT = "NOT in LOCAL(O(log n))"
VERDICT_INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class PathState:
    """Interior vertex snapshot: its config and the label it sends forward."""

    config: VertexConfig
    out_label: int


@dataclass(frozen=True)
class PeriodicityCertificate:
    """step^k == step^(index + (k - index) % period) for all k >= index."""

    index: int
    period: int


def _bool_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a.astype(np.int32) @ b.astype(np.int32)) > 0


class PathStateGraph:
    """States (config, out_label) over a config subset, with step relation.

    step[(c, a) -> (c', a')] holds when some in-label of c' matches a across
    an edge and leaves room for a' in c'.  Entry rows share the same formula
    with the endpoint's facing label in place of a; exit only checks the
    edge relation against the far endpoint's facing label.
    """

    def __init__(self, problem: LclProblem, subset: Iterable[VertexConfig]):
        self.problem = problem
        self.subset = tuple(sorted(set(subset)))
        for c in self.subset:
            if c not in problem.vertex_configs:
                raise ValueError(f"config {c.labels} not in the problem")
        self.states = tuple(
            PathState(c, a) for c in self.subset for a in c.distinct()
        )
        self.index = {(s.config, s.out_label): i for i, s in enumerate(self.states)}
        n = len(self.states)
        step = np.zeros((n, n), dtype=bool)
        for j, s in enumerate(self.states):
            for i in range(n):
                step[i, j] = self._admits(self.states[i].out_label, s)
        self.step = step
        self._powers: Optional[list[np.ndarray]] = None
        self._cert: Optional[PeriodicityCertificate] = None

    def _admits(self, prev_out: int, state: PathState) -> bool:
        c = state.config
        for a_in in c.distinct():
            if not self.problem.edge_ok(prev_out, a_in):
                continue
            need = 2 if a_in == state.out_label else 1
            if c.count(a_in) >= need:
                return True
        return False

    def entry_row(self, a1: int) -> np.ndarray:
        return np.array([self._admits(a1, s) for s in self.states], dtype=bool)

    def exit_vector(self, a2: int) -> np.ndarray:
        return np.array(
            [self.problem.edge_ok(s.out_label, a2) for s in self.states], dtype=bool
        )

    def certificate(self) -> PeriodicityCertificate:
        if self._cert is None:
            self._compute_periodicity()
        return self._cert

    def _compute_periodicity(self) -> None:
        n = len(self.states)
        powers = [np.eye(n, dtype=bool)]
        seen = {powers[0].tobytes(): 0}
        while True:
            nxt = _bool_matmul(powers[-1], self.step)
            key = nxt.tobytes()
            if key in seen:
                first = seen[key]
                self._cert = PeriodicityCertificate(first, len(powers) - first)
                self._powers = powers
                return
            seen[key] = len(powers)
            powers.append(nxt)

    def power(self, m: int) -> np.ndarray:
        """step^m, reduced through the periodicity certificate."""
        if m < 0:
            raise ValueError("matrix power must be nonnegative")
        cert = self.certificate()
        if m < len(self._powers):
            return self._powers[m]
        return self._powers[cert.index + (m - cert.index) % cert.period]


def build_state_graph(problem: LclProblem, subset: Iterable[VertexConfig]) -> PathStateGraph:
    return PathStateGraph(problem, subset)


def compute_periodicity(graph: PathStateGraph) -> PeriodicityCertificate:
    return graph.certificate()


def verify_periodicity(graph: PathStateGraph, cert: PeriodicityCertificate) -> bool:
    """Recompute powers from scratch and confirm the certified repetition."""
    n = len(graph.states)
    a = np.eye(n, dtype=bool)
    prefix = []
    for _ in range(cert.index + cert.period):
        prefix.append(a)
        a = _bool_matmul(a, graph.step)
    if not np.array_equal(a, prefix[cert.index]):
        return False
    # minimality: no earlier repetition anywhere in the prefix
    for i in range(len(prefix)):
        for j in range(i + 1, len(prefix)):
            if np.array_equal(prefix[i], prefix[j]):
                return False
    return True


def _check_endpoint(graph: PathStateGraph, a: int, c: VertexConfig, who: str) -> None:
    if c not in graph.subset:
        raise ValueError(f"{who} config {c.labels} not in subset")
    if a not in c:
        raise ValueError(f"{who} label not in config")


def connects(
    graph: PathStateGraph, a1: int, c1: VertexConfig, a2: int, c2: VertexConfig, k: int
) -> bool:
    """Is there a k-vertex path labeling with facing labels a1, a2?

    Endpoint configs gate only which labels may face the path; interior
    vertices draw configs from the graph's subset.
    """
    _check_endpoint(graph, a1, c1, "first endpoint")
    _check_endpoint(graph, a2, c2, "second endpoint")
    if k < 2:
        raise ValueError("paths need at least two vertices")
    if k == 2:
        return graph.problem.edge_ok(a1, a2)
    entry = graph.entry_row(a1)
    exit_ = graph.exit_vector(a2)
    reach = _bool_matmul(entry[None, :], graph.power(k - 3))[0]
    return bool(np.any(reach & exit_))


def _pair_labels(graph: PathStateGraph) -> tuple[int, ...]:
    return tuple(sorted({s.out_label for s in graph.states}))


def _is_ell_full(graph: PathStateGraph, ell: int) -> bool:
    if ell < 2:
        raise ValueError("ell must be at least 2")
    labels = _pair_labels(graph)
    if not labels:
        return True  # empty subset is vacuously full
    problem = graph.problem
    if ell == 2 and not all(
        problem.edge_ok(a1, a2) for a1 in labels for a2 in labels
    ):
        return False
    cert = graph.certificate()
    entry = np.stack([graph.entry_row(a) for a in labels])
    exit_ = np.stack([graph.exit_vector(a) for a in labels], axis=1)
    m0 = max(0, ell - 3)
    # exponents m >= m0 realize exactly the matrices at m0..K+P-1 plus, when
    # m0 lands inside the cycle, the wrapped block up to m0+P-1
    m_hi = max(cert.index + cert.period - 1, m0 + cert.period - 1)
    for m in range(m0, m_hi + 1):
        table = _bool_matmul(_bool_matmul(entry, graph.power(m)), exit_)
        if not table.all():
            return False
    return True


def is_ell_full(problem: LclProblem, subset: Iterable[VertexConfig], ell: int) -> bool:
    return _is_ell_full(build_state_graph(problem, subset), ell)


def _minimal_ell(graph: PathStateGraph) -> Optional[int]:
    cert = graph.certificate()
    # for ell >= K+P+2 the exponent window is the full power cycle no matter
    # the ell, so fullness is constant from there on; checking up to K+P+2
    # therefore decides every larger ell as well
    for ell in range(2, cert.index + cert.period + 3):
        if _is_ell_full(graph, ell):
            return ell
    return None


def minimal_ell(problem: LclProblem, subset: Iterable[VertexConfig]) -> Optional[int]:
    """Smallest ell for which the subset is ell-full, or None."""
    return _minimal_ell(build_state_graph(problem, subset))


@dataclass(frozen=True)
class SubsetSearchResult:
    subset: Optional[tuple[VertexConfig, ...]]
    ell: Optional[int]
    exhaustive: bool
    subsets_examined: int


def find_ell_full_set(problem: LclProblem, max_subsets: int = 4096) -> SubsetSearchResult:
    """Search nonempty config subsets, largest first, for an ell-full one.

    exhaustive means the outcome is definitive: either a subset was found,
    or every nonempty subset was ruled out.  A result with no subset and
    exhaustive=False only says the budget ran out.
    """
    if max_subsets < 1:
        raise ValueError("subset budget must be positive")
    configs = problem.sorted_configs()
    examined = 0
    for size in range(len(configs), 0, -1):
        for combo in combinations(configs, size):
            if examined >= max_subsets:
                return SubsetSearchResult(None, None, False, examined)
            examined += 1
            graph = build_state_graph(problem, combo)
            ell = _minimal_ell(graph)
            if ell is not None:
                return SubsetSearchResult(tuple(combo), ell, True, examined)
    return SubsetSearchResult(None, None, True, examined)


def extend_path(
    problem: LclProblem,
    subset: Iterable[VertexConfig],
    a1: int,
    c1: VertexConfig,
    a2: int,
    c2: VertexConfig,
    k: int,
) -> Optional[list[tuple[VertexConfig, tuple[int, ...]]]]:
    """Explicit witness for connects: the k-2 interior vertices in order.

    Each entry is (config, ports) where ports[0] is the label facing the
    previous vertex, ports[1] the label facing the next one, and the rest
    of the config sits on the remaining ports in ascending order.  Returns
    None when no witness exists.  Deterministic: smallest states win.
    """
    graph = build_state_graph(problem, subset)
    _check_endpoint(graph, a1, c1, "first endpoint")
    _check_endpoint(graph, a2, c2, "second endpoint")
    if k < 2:
        raise ValueError("paths need at least two vertices")
    if k == 2:
        return [] if problem.edge_ok(a1, a2) else None

    reach = [graph.entry_row(a1)]
    for _ in range(k - 3):
        reach.append(_bool_matmul(reach[-1][None, :], graph.step)[0])
    final_ok = reach[-1] & graph.exit_vector(a2)
    if not final_ok.any():
        return None

    picks = [int(np.argmax(final_ok))]
    for t in range(k - 3, 0, -1):
        nxt = picks[-1]
        options = reach[t - 1] & graph.step[:, nxt]
        picks.append(int(np.argmax(options)))
    picks.reverse()

    witness = []
    prev_out = a1
    for idx in picks:
        state = graph.states[idx]
        c = state.config
        in_label = None
        for cand in c.distinct():
            if not problem.edge_ok(prev_out, cand):
                continue
            if c.count(cand) >= (2 if cand == state.out_label else 1):
                in_label = cand
                break
        assert in_label is not None, "backtrack picked an inadmissible state"
        rest = c.minus(in_label, state.out_label)
        witness.append((c, (in_label, state.out_label) + rest))
        prev_out = state.out_label
    return witness


# --- classification reports ---------------------------------------------------


@dataclass(frozen=True)
class ClassificationReport:
    verdict: str
    subset: Optional[tuple[tuple[str, ...], ...]]
    minimal_ell: Optional[int]
    certificate: Optional[PeriodicityCertificate]
    exhaustive: bool
    subsets_examined: int
    budget: int


def classify(problem: LclProblem, max_subsets: int = 4096) -> ClassificationReport:
    result = find_ell_full_set(problem, max_subsets)
    if result.subset is not None:
        cert = build_state_graph(problem, result.subset).certificate()
        names = tuple(
            tuple(problem.name_of(x) for x in c) for c in result.subset
        )
        return ClassificationReport(
            VERDICT_LOGN, names, result.ell, cert, True, result.subsets_examined, max_subsets
        )
    verdict = VERDICT_NOT if result.exhaustive else VERDICT_INCONCLUSIVE
    return ClassificationReport(
        verdict, None, None, None, result.exhaustive, result.subsets_examined, max_subsets
    )


def serialize_report(report: ClassificationReport) -> str:
    doc = {
        "verdict": report.verdict,
        "subset": [list(c) for c in report.subset] if report.subset is not None else None,
        "minimal_ell": report.minimal_ell,
        "certificate": (
            {"index": report.certificate.index, "period": report.certificate.period}
            if report.certificate is not None
            else None
        ),
        "exhaustive": report.exhaustive,
        "subsets_examined": report.subsets_examined,
        "budget": report.budget,
    }
    return json.dumps(doc, indent=2) + "\n"


def parse_report(text: str) -> ClassificationReport:
    doc = json.loads(text)
    cert = doc["certificate"]
    return ClassificationReport(
        verdict=doc["verdict"],
        subset=(
            tuple(tuple(c) for c in doc["subset"]) if doc["subset"] is not None else None
        ),
        minimal_ell=doc["minimal_ell"],
        certificate=(
            PeriodicityCertificate(cert["index"], cert["period"]) if cert else None
        ),
        exhaustive=doc["exhaustive"],
        subsets_examined=doc["subsets_examined"],
        budget=doc["budget"],
    )


def render_report(report: ClassificationReport) -> str:
    lines = [f"verdict: {report.verdict}"]
    if report.subset is not None:
        pretty = ", ".join("{" + " ".join(c) + "}" for c in report.subset)
        lines.append(f"ell-full subset: {pretty}")
        lines.append(f"minimal ell: {report.minimal_ell}")
        lines.append(
            f"periodicity certificate: index {report.certificate.index}, "
            f"period {report.certificate.period}"
        )
    lines.append(
        f"subsets examined: {report.subsets_examined} of budget {report.budget}"
        + (" (exhaustive)" if report.exhaustive else " (budget exhausted)")
    )
    return "\n".join(lines) + "\n"
