"""Seed graphs, their degree profiles, and the admissible-degree ledger."""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path


class SeedError(ValueError):
    """Raised for malformed or invalid seed documents."""


@dataclass(frozen=True)
class SeedSpec:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    hook: str
    multigraph: bool = False

    @property
    def tau0(self) -> int:
        return len(self.vertices)

    def degrees(self) -> dict[str, int]:
        deg = {v: 0 for v in self.vertices}
        for a, b in self.edges:
            # a self-loop contributes 2
            deg[a] += 1
            deg[b] += 1
        return deg

    def to_document(self) -> dict:
        doc = {
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
            "hook": self.hook,
        }
        if self.multigraph:
            doc["multigraph"] = True
        return doc

    def dumps(self) -> str:
        return json.dumps(self.to_document(), indent=2) + "\n"


@dataclass(frozen=True)
class DegreeProfile:
    """Distinct seed degrees with multiplicities, plus the hook and arity.

    ``hook_index`` is zero-based here (the hook has degree
    ``degrees[hook_index]``).
    """

    m: int
    degrees: tuple[int, ...]
    counts: tuple[int, ...]
    hook_index: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"arity m must be >= 1, got {self.m}")
        if len(self.degrees) != len(self.counts) or not self.degrees:
            raise ValueError("degrees and counts must be non-empty and of equal length")
        if any(b <= a for a, b in zip(self.degrees, self.degrees[1:])):
            raise ValueError(f"degrees must be strictly increasing: {self.degrees}")
        if any(c < 1 for c in self.counts):
            raise ValueError(f"counts must be positive: {self.counts}")
        if sum(self.counts) < 2:
            raise ValueError("a seed has at least 2 vertices")
        if not 0 <= self.hook_index < len(self.degrees):
            raise ValueError(f"hook_index {self.hook_index} out of range")

    @property
    def k(self) -> int:
        return len(self.degrees)

    @property
    def tau0(self) -> int:
        return sum(self.counts)

    @property
    def hook_degree(self) -> int:
        return self.degrees[self.hook_index]

    @property
    def balance(self) -> int:
        return self.m * self.tau0 - self.m - 1

    @property
    def degenerate(self) -> bool:
        return self.counts[self.hook_index] == 1

    @property
    def invertible(self) -> bool:
        return self.balance != 0

    def with_arity(self, m: int) -> DegreeProfile:
        return DegreeProfile(m, self.degrees, self.counts, self.hook_index)


@dataclass(frozen=True)
class AdmissibleDegreeLedger:
    """History labels ``(j, s)`` in urn order: s-major, inactive block last.

    ``j`` is the zero-based index into the profile's degrees and ``s`` the
    number of hookings received (``s == m`` means saturated).
    """

    m: int
    k: int
    history_labels: tuple[tuple[int, int], ...]
    label_degree: dict[tuple[int, int], int] = field(hash=False)
    collision_groups: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def plain_degrees(self) -> tuple[int, ...]:
        return tuple(self.label_degree[g[0]] for g in self.collision_groups)

    def index(self, label: tuple[int, int]) -> int:
        j, s = label
        return s * self.k + j

    def aggregation_matrix(self) -> list[list[int]]:
        """0/1 matrix mapping history-resolved counts to plain-degree counts."""
        size = len(self.history_labels)
        rows = []
        for group in self.collision_groups:
            row = [0] * size
            for label in group:
                row[self.index(label)] = 1
            rows.append(row)
        return rows

    def describe(self, label: tuple[int, int]) -> str:
        j, s = label
        state = "inactive" if s == self.m else "active"
        return f"d{j + 1}+{s}h={self.label_degree[label]} ({state})"


def parse_seed(text: str) -> SeedSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SeedError(f"seed document is not valid JSON: {exc}") from exc
    return seed_from_document(doc)


def load_seed(path: str | Path) -> SeedSpec:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SeedError(f"cannot read seed document {path}: {exc}") from exc
    return parse_seed(text)


def seed_from_document(doc) -> SeedSpec:
    if not isinstance(doc, dict):
        raise SeedError("seed document must be a JSON object")
    missing = [key for key in ("vertices", "edges", "hook") if key not in doc]
    if missing:
        raise SeedError(f"seed document is missing field(s): {', '.join(missing)}")
    unknown = set(doc) - {"vertices", "edges", "hook", "multigraph"}
    if unknown:
        raise SeedError(f"unknown field(s) in seed document: {', '.join(sorted(unknown))}")

    vertices = doc["vertices"]
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise SeedError("'vertices' must be a list of strings")
    dupes = [v for v, c in Counter(vertices).items() if c > 1]
    if dupes:
        raise SeedError(f"duplicate vertex identifier(s): {', '.join(dupes)}")
    if len(vertices) < 2:
        raise SeedError(f"seed needs at least 2 vertices, got {len(vertices)}")

    multigraph = doc.get("multigraph", False)
    if not isinstance(multigraph, bool):
        raise SeedError("'multigraph' must be true or false")

    hook = doc["hook"]
    if not isinstance(hook, str):
        raise SeedError("'hook' must be a string")
    if hook not in vertices:
        raise SeedError(f"unknown hook {hook!r}: not among the vertices")

    raw_edges = doc["edges"]
    if not isinstance(raw_edges, list):
        raise SeedError("'edges' must be a list of [u, v] pairs")
    known = set(vertices)
    edges = []
    seen = set()
    for e in raw_edges:
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, str) for x in e)):
            raise SeedError(f"malformed edge {e!r}: expected [u, v] with string ids")
        a, b = e
        for x in (a, b):
            if x not in known:
                raise SeedError(f"edge {e!r} references unknown vertex {x!r}")
        if not multigraph:
            if a == b:
                raise SeedError(f"self-loop at {a!r} (set \"multigraph\": true to allow)")
            key = frozenset((a, b))
            if key in seen:
                raise SeedError(f"parallel edge {a!r}-{b!r} (set \"multigraph\": true to allow)")
            seen.add(key)
        edges.append((a, b))

    spec = SeedSpec(tuple(vertices), tuple(edges), hook, multigraph)
    deg = spec.degrees()
    isolated = [v for v in vertices if deg[v] == 0]
    if isolated:
        raise SeedError(f"graph is disconnected: isolated vertex {isolated[0]!r}")
    unreached = _unreachable(spec)
    if unreached:
        raise SeedError(f"graph is disconnected: {unreached[0]!r} unreachable from hook")
    return spec


def _unreachable(spec: SeedSpec) -> list[str]:
    adj: dict[str, set[str]] = {v: set() for v in spec.vertices}
    for a, b in spec.edges:
        adj[a].add(b)
        adj[b].add(a)
    seen = {spec.hook}
    stack = [spec.hook]
    while stack:
        v = stack.pop()
        for w in adj[v] - seen:
            seen.add(w)
            stack.append(w)
    return [v for v in spec.vertices if v not in seen]


def degree_profile(seed: SeedSpec, m: int) -> DegreeProfile:
    tally = Counter(seed.degrees().values())
    degrees = tuple(sorted(tally))
    counts = tuple(tally[d] for d in degrees)
    hook_index = degrees.index(seed.degrees()[seed.hook])
    return DegreeProfile(m, degrees, counts, hook_index)


def admissible_degrees(profile: DegreeProfile) -> AdmissibleDegreeLedger:
    m, k, h = profile.m, profile.k, profile.hook_degree
    labels = tuple((j, s) for s in range(m + 1) for j in range(k))
    label_degree = {(j, s): profile.degrees[j] + s * h for j, s in labels}
    by_degree: dict[int, list[tuple[int, int]]] = {}
    for lab in labels:
        by_degree.setdefault(label_degree[lab], []).append(lab)
    groups = tuple(tuple(by_degree[d]) for d in sorted(by_degree))
    return AdmissibleDegreeLedger(m, k, labels, label_degree, groups)
