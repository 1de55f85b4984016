"""Machine-checkable claims about arrangement instances.

Each claim states an expected structural fact (triangle count 2k, a total
antipodal triangle pairing, existence of a mirrored chain pair of length k,
isomorphism of equal-k instances, 3-colorability) and is checked against
what a concrete instance actually exhibits. Verdicts carry the evidence;
failures are results, not crashes, and failing instances are archived in
the arrangement text format for reproduction.
"""

from __future__ import annotations

import concurrent.futures
import hashlib
import json
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import chains, coloring, geometry
from ._util import atomic_write
from .arrangement import ArrangementGraph, antipodal_involution, build_graph
from .errors import MismatchedK
from .geometry import GreatCircle

CLAIM_IDS = (
    "triangles_2k",
    "mirror_triangles",
    "chain_pair_exists",
    "fixed_k_isomorphic",
    "three_colorable",
)

PASS = "PASS"
FAIL = "FAIL"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True, eq=False)
class Instance:
    """A built arrangement plus enough metadata to reproduce it."""

    kind: str  # "fixture" | "random" | "file"
    name: str | None
    k: int
    seed: int | None
    eps: float
    circles: tuple[GreatCircle, ...]
    graph: ArrangementGraph

    @property
    def label(self) -> str:
        if self.kind == "fixture":
            return str(self.name)
        if self.kind == "random":
            return f"k{self.k}s{self.seed}"
        return str(self.name)


def fixture_instance(name: str) -> Instance:
    circles = geometry.fixture_arrangement(name)
    return Instance("fixture", name, len(circles), None, geometry.EPS_SEP,
                    tuple(circles), build_graph(circles))


def random_instance(k: int, seed: int, eps: float = geometry.EPS_SEP) -> Instance:
    circles = geometry.generate_random(k, seed, eps_dup=eps, eps_sep=eps)
    return Instance("random", None, k, seed, eps, tuple(circles),
                    build_graph(circles, eps_dup=eps, eps_sep=eps))


def file_instance(name: str, circles: Sequence[GreatCircle], eps: float = geometry.EPS_SEP) -> Instance:
    return Instance("file", name, len(circles), None, eps, tuple(circles),
                    build_graph(circles, eps_dup=eps, eps_sep=eps))


@dataclass(frozen=True)
class ClaimReport:
    """Structured verdict for one check.

    repro is a JSON blob with everything needed to rebuild the instance and
    rerun the check (k, seed, fixture, tolerance, bounds).
    """

    claim: str
    k: int
    instance: str
    expected: str
    observed: str
    verdict: str
    repro: str

    @property
    def tsv_line(self) -> str:
        return "\t".join((self.claim, str(self.k), self.instance,
                          self.expected, self.observed, self.verdict))


def _repro(instance: Instance, second: Instance | None, timeout: float, chain_max_nodes: int | None) -> str:
    payload = {
        "k": instance.k,
        "seed": instance.seed,
        "fixture": instance.name if instance.kind == "fixture" else None,
        "eps": instance.eps,
        "timeout": timeout,
        "chain_max_nodes": chain_max_nodes,
    }
    if second is not None:
        payload["second"] = {"k": second.k, "seed": second.seed,
                             "fixture": second.name if second.kind == "fixture" else None}
    return json.dumps(payload, sort_keys=True)


def check_claim(
    claim: str,
    instance: Instance,
    second: Instance | None = None,
    timeout: float = 60.0,
    chain_max_nodes: int | None = chains.DEFAULT_NODE_BUDGET,
) -> ClaimReport:
    """Run one claim against one instance (two for fixed_k_isomorphic)."""
    if claim not in CLAIM_IDS:
        raise ValueError(f"unknown claim {claim!r}; choose from {CLAIM_IDS}")
    g = instance.graph
    k = instance.k
    label = instance.label
    repro = _repro(instance, second, timeout, chain_max_nodes)

    if claim == "triangles_2k":
        observed = len(chains.enumerate_triangles(g))
        expected = 2 * k
        return ClaimReport(claim, k, label, str(expected), str(observed),
                           PASS if observed == expected else FAIL, repro)

    if claim == "mirror_triangles":
        tris = chains.enumerate_triangles(g)
        sigma = antipodal_involution(g)
        try:
            pairs = chains.mirror_pairing(tris, sigma)
        except ValueError as exc:
            return ClaimReport(claim, k, label, "total antipodal pairing", str(exc), FAIL, repro)
        return ClaimReport(claim, k, label, "total antipodal pairing",
                           f"{2 * len(pairs)}/{len(tris)} triangles paired", PASS, repro)

    if claim == "chain_pair_exists":
        tris = chains.enumerate_triangles(g)
        sigma = antipodal_involution(g)
        expected = f"mirrored closed chain pair of {k} triangles"
        if k < 4:
            return ClaimReport(claim, k, label, expected, "claim stated for k >= 4 only",
                               INCONCLUSIVE, repro)
        search = chains.find_chain_pair(g, tris, sigma, max_nodes=chain_max_nodes)
        if search.status == "found":
            problems, _ = chains.validate_chain_pair(g, search.pair, sigma)
            if problems:
                return ClaimReport(claim, k, label, expected,
                                   "invalid chain pair: " + "; ".join(problems), FAIL, repro)
            return ClaimReport(claim, k, label, expected,
                               f"found (nodes={search.nodes})", PASS, repro)
        if search.status == "cutoff":
            return ClaimReport(claim, k, label, expected,
                               f"search cutoff after {search.nodes} nodes; longest open chain {search.longest}",
                               INCONCLUSIVE, repro)
        return ClaimReport(claim, k, label, expected,
                           f"exhausted; longest open chain {search.longest}", FAIL, repro)

    if claim == "fixed_k_isomorphic":
        if second is None:
            raise ValueError("fixed_k_isomorphic needs two instances")
        if second.k != k:
            raise MismatchedK(f"instances have k={k} and k={second.k}")
        iso, _mapping = graph_isomorphic(g, second.graph)
        return ClaimReport(claim, k, f"{label}~{second.label}", "isomorphic",
                           "isomorphic" if iso else "not isomorphic",
                           PASS if iso else FAIL, repro)

    # three_colorable
    result = coloring.color_exact(g, timeout=timeout)
    if result.status == coloring.FOUND:
        return ClaimReport(claim, k, label, "proper 3-coloring", "found", PASS, repro)
    if result.status == coloring.TIMEOUT:
        return ClaimReport(claim, k, label, "proper 3-coloring",
                           f"solver timeout after {timeout}s", INCONCLUSIVE, repro)
    return ClaimReport(claim, k, label, "proper 3-coloring",
                       "no proper 3-coloring exists", FAIL, repro)


# --- graph isomorphism ----------------------------------------------------------

def graph_isomorphic(g1, g2) -> tuple[bool, dict[int, int] | None]:
    """Exact isomorphism: (True, verified mapping) or (False, None).

    Cheap invariants (sizes, degree sequence, 3-cycle count) reject first;
    then iterated neighborhood color refinement narrows candidates and a
    deterministic backtracking search does the rest. Any mapping is checked
    edge by edge before being returned.
    """
    a1 = [set(ns) for ns in coloring.as_adjacency(g1)]
    a2 = [set(ns) for ns in coloring.as_adjacency(g2)]
    n = len(a1)
    if len(a2) != n:
        return False, None
    if sorted(map(len, a1)) != sorted(map(len, a2)):
        return False, None
    if _triangle_count(a1) != _triangle_count(a2):
        return False, None

    c1, c2 = _joint_refinement(a1, a2)
    if c1 is None:
        return False, None

    class_size = Counter(c2)
    order = sorted(range(n), key=lambda v: (class_size[c1[v]], c1[v], v))
    # prefer vertices adjacent to already-placed ones: keeps constraints early
    placed: list[int] = []
    remaining = set(order)
    while remaining:
        anchored = [v for v in order if v in remaining and any(u in a1[v] for u in placed)]
        nxt = anchored[0] if anchored else next(v for v in order if v in remaining)
        placed.append(nxt)
        remaining.discard(nxt)
    order = placed

    by_class: dict[int, list[int]] = {}
    for w in range(n):
        by_class.setdefault(c2[w], []).append(w)

    mapping: dict[int, int] = {}
    used: set[int] = set()

    def backtrack(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        for w in by_class.get(c1[v], ()):
            if w in used:
                continue
            ok = True
            for u, fu in mapping.items():
                if (u in a1[v]) != (fu in a2[w]):
                    ok = False
                    break
            if ok:
                mapping[v] = w
                used.add(w)
                if backtrack(i + 1):
                    return True
                del mapping[v]
                used.discard(w)
        return False

    if not backtrack(0):
        return False, None
    if not _verify_mapping(a1, a2, mapping):
        raise AssertionError("isomorphism search produced an unverified mapping")
    return True, dict(mapping)


def _triangle_count(adj: Sequence[set[int]]) -> int:
    total = 0
    for u in range(len(adj)):
        for v in adj[u]:
            if v > u:
                total += len(adj[u] & adj[v])
    return total // 3


def _joint_refinement(a1, a2):
    """Color refinement run jointly over both graphs with one shared palette."""
    n = len(a1)
    c1 = [len(a1[v]) for v in range(n)]
    c2 = [len(a2[v]) for v in range(n)]
    for _ in range(n):
        sig1 = [(c1[v], tuple(sorted(c1[u] for u in a1[v]))) for v in range(n)]
        sig2 = [(c2[v], tuple(sorted(c2[u] for u in a2[v]))) for v in range(n)]
        palette = {s: i for i, s in enumerate(sorted(set(sig1) | set(sig2)))}
        n1 = [palette[s] for s in sig1]
        n2 = [palette[s] for s in sig2]
        if sorted(n1) != sorted(n2):
            return None, None
        if n1 == c1 and n2 == c2:
            break
        c1, c2 = n1, n2
    return c1, c2


def _verify_mapping(a1, a2, mapping: dict[int, int]) -> bool:
    n = len(a1)
    if sorted(mapping) != list(range(n)) or sorted(mapping.values()) != list(range(n)):
        return False
    for u in range(n):
        for v in a1[u]:
            if mapping[v] not in a2[mapping[u]]:
                return False
    return sum(map(len, a1)) == sum(map(len, a2))


# --- sweeps and reporting --------------------------------------------------------

def sweep(
    claim_ids: Sequence[str],
    instances: Sequence[Instance],
    timeout: float = 60.0,
    chain_max_nodes: int | None = chains.DEFAULT_NODE_BUDGET,
    archive_dir: str | Path | None = None,
    jobs: int = 1,
) -> list[ClaimReport]:
    """Run the claim grid; reports come back in deterministic task order.

    fixed_k_isomorphic compares the first instance of each k group against
    every later instance with the same k; the other claims run per instance.
    FAIL verdicts get their instance archived when archive_dir is set.
    """
    tasks: list[tuple[str, Instance, Instance | None]] = []
    for claim in claim_ids:
        if claim == "fixed_k_isomorphic":
            groups: dict[int, list[Instance]] = {}
            for inst in instances:
                groups.setdefault(inst.k, []).append(inst)
            for k in sorted(groups):
                group = groups[k]
                for other in group[1:]:
                    tasks.append((claim, group[0], other))
        else:
            for inst in instances:
                tasks.append((claim, inst, None))

    if jobs > 1 and len(tasks) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [
                pool.submit(check_claim, claim, inst, second, timeout, chain_max_nodes)
                for claim, inst, second in tasks
            ]
            reports = [f.result() for f in futures]
    else:
        reports = [check_claim(claim, inst, second, timeout, chain_max_nodes)
                   for claim, inst, second in tasks]

    if archive_dir is not None:
        for report, (claim, inst, _second) in zip(reports, tasks):
            if report.verdict == FAIL:
                archive_counterexample(inst, archive_dir)
    return reports


def archive_counterexample(instance: Instance, directory: str | Path) -> Path:
    """Write the instance to the arrangement text format, content-addressed."""
    text = geometry.write_arrangement(instance.circles)
    digest = hashlib.sha256(text.encode()).hexdigest()[:16]
    return atomic_write(Path(directory) / f"{digest}.txt", text)


def format_report(reports: Sequence[ClaimReport]) -> str:
    """Tab-separated report lines plus a machine-readable summary block."""
    lines = [r.tsv_line for r in reports]
    counts = Counter(r.verdict for r in reports)
    summary = {
        "checks": len(reports),
        "PASS": counts.get(PASS, 0),
        "FAIL": counts.get(FAIL, 0),
        "INCONCLUSIVE": counts.get(INCONCLUSIVE, 0),
    }
    lines.append("# summary " + json.dumps(summary, sort_keys=True))
    return "\n".join(lines) + "\n"


def fail_count(reports: Sequence[ClaimReport]) -> int:
    return sum(1 for r in reports if r.verdict == FAIL)
