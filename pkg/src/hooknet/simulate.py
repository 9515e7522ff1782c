"""Stochastic growth of m-ary hooking networks.

Two representations of the same process:

* the urn: ball counts ``X`` per color and draw counts ``Y``;
* the graph: explicit node records (origin degree class, hookings received)
  with per-color node lists.  The graph never consults the replacement
  matrix, so running both on one random stream cross-checks it.

Sampling rule shared by every path: with ``u`` uniform in [0, 1) and ``T``
balls in the urn, the chosen ball is ``floor(u * T)`` in color-major order.
The color is the block containing that ball and, in the graph, the node is
the owner of that slot within the color's node list.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .seed import DegreeProfile
from .urn import UrnModel, build_replacement_matrix

RNG_ALGORITHM = "numpy Philox4x64-10, key from SeedSequence(entropy=[rng_seed, stream])"
CHUNK = 4096
# ball indices come from float products, exact only below 2**53
MAX_BALLS = 2**53

MODES = ("urn", "graph", "coupled")


class SimulationDefect(AssertionError):
    """An invariant of the simulation was violated (never expected)."""


def make_rng(rng_seed: int, stream: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([rng_seed, stream])))


class UniformStream:
    """Uniforms drawn from a generator in fixed-size chunks."""

    def __init__(self, rng: np.random.Generator, chunk: int = CHUNK):
        self._rng = rng
        self._chunk = chunk
        self._buf: list[float] = []
        self._pos = 0

    def next(self) -> float:
        if self._pos == len(self._buf):
            self._buf = self._rng.random(self._chunk).tolist()
            self._pos = 0
        u = self._buf[self._pos]
        self._pos += 1
        return u


@dataclass
class SimState:
    X: list[int]
    Y: list[int]
    n: int = 0
    total_balls: int = 0


@dataclass
class GraphState:
    """Degree and slot bookkeeping for every node of the growing network."""

    profile: DegreeProfile
    degree: list[int] = field(default_factory=list)
    origin: list[int] = field(default_factory=list)
    hooks: list[int] = field(default_factory=list)
    color_nodes: list[list[int]] = field(default_factory=list)
    position: list[int] = field(default_factory=list)
    saturated: list[int] = field(default_factory=list)
    draws: list[int] = field(default_factory=list)
    edges: int = 0
    seed_edges: int = 0

    @classmethod
    def from_profile(cls, profile: DegreeProfile, seed_edges: int | None = None) -> GraphState:
        m, k = profile.m, profile.k
        if seed_edges is None:
            seed_edges = sum(d * c for d, c in zip(profile.degrees, profile.counts)) // 2
        g = cls(
            profile,
            color_nodes=[[] for _ in range(m * k)],
            saturated=[0] * k,
            draws=[0] * (m * k),
            seed_edges=seed_edges,
        )
        g._add_copy(include_hook=True)
        g.edges = seed_edges
        return g

    @property
    def node_count(self) -> int:
        return len(self.degree)

    def _add_node(self, j: int) -> None:
        node = len(self.degree)
        self.degree.append(self.profile.degrees[j])
        self.origin.append(j)
        self.hooks.append(0)
        self.position.append(len(self.color_nodes[j]))
        self.color_nodes[j].append(node)

    def _add_copy(self, include_hook: bool) -> None:
        for j, cnt in enumerate(self.profile.counts):
            if not include_hook and j == self.profile.hook_index:
                cnt -= 1
            for _ in range(cnt):
                self._add_node(j)

    def slot_counts(self) -> list[int]:
        m, k = self.profile.m, self.profile.k
        return [len(nodes) * (m - c // k) for c, nodes in enumerate(self.color_nodes)]

    def hook_at(self, color: int, offset: int) -> int:
        """Fuse a fresh seed copy onto the node owning slot ``offset`` of ``color``."""
        p = self.profile
        m, k = p.m, p.k
        s = color // k
        nodes = self.color_nodes[color]
        node = nodes[offset // (m - s)]
        # swap-remove from its current color list
        last = nodes.pop()
        if last != node:
            nodes[self.position[node]] = last
            self.position[last] = self.position[node]
        self.hooks[node] += 1
        self.degree[node] += p.hook_degree
        if s + 1 < m:
            nxt = self.color_nodes[color + k]
            self.position[node] = len(nxt)
            nxt.append(node)
        else:
            self.position[node] = -1
            self.saturated[self.origin[node]] += 1
        self._add_copy(include_hook=False)
        self.edges += self.seed_edges
        self.draws[color] += 1
        return node

    def resolved_counts(self) -> list[int]:
        """Node counts per history label, ledger order (s-major, saturated last)."""
        return [len(nodes) for nodes in self.color_nodes] + list(self.saturated)

    def plain_counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for d in self.degree:
            out[d] = out.get(d, 0) + 1
        return out


def init(model: UrnModel) -> SimState:
    X = list(model.X0)
    return SimState(X, [0] * len(X), 0, sum(X))


def pick(X: list[int], total: int, u: float) -> tuple[int, int]:
    """Color of ball ``floor(u * total)`` and its offset within that color."""
    ball = int(u * total)
    acc = 0
    for c, x in enumerate(X):
        if ball < acc + x:
            return c, ball - acc
        acc += x
    raise SimulationDefect(f"ball {ball} beyond urn of {total} balls")


def step(state: SimState, model: UrnModel, u: float, *, color: int | None = None) -> tuple[int, int]:
    """Advance the urn by one draw; returns ``(color, offset)`` of the drawn ball.

    Passing ``color`` forces that color (offset from ``u`` within it).
    """
    if state.total_balls <= 0:
        raise SimulationDefect("draw from an empty urn")
    if color is None:
        c, offset = pick(state.X, state.total_balls, u)
    else:
        if state.X[color] <= 0:
            raise SimulationDefect(f"forced draw from empty color {color}")
        c, offset = color, int(u * state.X[color])
    X = state.X
    for t, a in enumerate(model.A[c]):
        if a:
            X[t] += a
            if X[t] < 0:
                raise SimulationDefect(f"color {t} went negative at step {state.n + 1}")
    state.Y[c] += 1
    state.n += 1
    state.total_balls += model.lambda1
    return c, offset


def degree_counts(state: SimState, profile: DegreeProfile) -> list[int]:
    """History-resolved node counts from ball and draw counts."""
    m, k = profile.m, profile.k
    D = []
    for c, x in enumerate(state.X):
        per_node = m - c // k
        q, r = divmod(x, per_node)
        if r:
            raise SimulationDefect(f"color {c} holds {x} balls, not a multiple of {per_node}")
        D.append(q)
    D.extend(state.Y[(m - 1) * k:])
    return D


@dataclass(frozen=True)
class Snapshot:
    step: int
    X: tuple[int, ...]
    D: tuple[int, ...]


@dataclass
class Trajectory:
    mode: str
    n: int
    rng_seed: int
    stream: int
    X: list[int]
    Y: list[int]
    D: list[int]
    snapshots: list[Snapshot]
    coupling_held: bool | None = None
    node_count: int | None = None
    rng_algorithm: str = RNG_ALGORITHM


def run(
    profile: DegreeProfile,
    n_steps: int,
    rng_seed: int,
    mode: str = "urn",
    *,
    checkpoints=(),
    stream: int = 0,
    check_linear: bool = False,
) -> Trajectory:
    """Grow one network for ``n_steps`` hookings.

    ``mode`` is ``"urn"``, ``"graph"`` or ``"coupled"``.  In coupled mode the
    graph is driven by the urn's draws and its per-color slot counts and
    resolved degree counts are compared with the urn after every step.  With
    ``check_linear`` the identity ``X = A^T Y + X0`` is asserted every step.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    if n_steps < 0:
        raise ValueError("n_steps must be >= 0")
    model = build_replacement_matrix(profile)
    final_total = model.lambda1 * n_steps + sum(model.X0)
    if final_total >= MAX_BALLS:
        raise OverflowError(f"{final_total} balls after {n_steps} steps exceeds 2**53")

    uniforms = UniformStream(make_rng(rng_seed, stream))
    wanted = set(checkpoints)
    snapshots: list[Snapshot] = []
    state = init(model)
    graph = GraphState.from_profile(profile) if mode != "urn" else None
    coupled = True if mode == "coupled" else None
    At = np.asarray(model.A, dtype=np.int64).T if check_linear else None
    X0 = np.asarray(model.X0, dtype=np.int64)

    def snap(t: int) -> None:
        if t in wanted:
            D = degree_counts(state, profile) if graph is None or mode == "coupled" else graph.resolved_counts()
            X = state.X if mode != "graph" else graph.slot_counts()
            snapshots.append(Snapshot(t, tuple(X), tuple(D)))

    snap(0)
    for t in range(1, n_steps + 1):
        u = uniforms.next()
        if mode == "graph":
            slots = graph.slot_counts()
            c, offset = pick(slots, sum(slots), u)
            graph.hook_at(c, offset)
        else:
            c, offset = step(state, model, u)
            if graph is not None:
                graph.hook_at(c, offset)
                if graph.slot_counts() != state.X or graph.resolved_counts() != degree_counts(state, profile):
                    coupled = False
            if At is not None and not np.array_equal(At @ np.asarray(state.Y) + X0, state.X):
                raise SimulationDefect(f"X != A^T Y + X0 at step {t}")
        snap(t)

    if mode == "graph":
        X, Y, D = graph.slot_counts(), list(graph.draws), graph.resolved_counts()
    else:
        X, Y, D = list(state.X), list(state.Y), degree_counts(state, profile)
    return Trajectory(
        mode=mode,
        n=n_steps,
        rng_seed=rng_seed,
        stream=stream,
        X=X,
        Y=Y,
        D=D,
        snapshots=snapshots,
        coupling_held=coupled,
        node_count=graph.node_count if graph is not None else None,
    )


def run_batch(profile: DegreeProfile, n_steps: int, rng_seed: int, streams) -> np.ndarray:
    """Final resolved degree counts for many independent urn runs at once.

    Row ``r`` is identical to ``run(profile, n_steps, rng_seed, stream=streams[r]).D``;
    runs advance in lockstep so each step is a handful of array operations.
    """
    model = build_replacement_matrix(profile)
    m, k = profile.m, profile.k
    streams = list(streams)
    R = len(streams)
    c = model.colors
    A = np.asarray(model.A, dtype=np.int64)
    X = np.tile(np.asarray(model.X0, dtype=np.int64), (R, 1))
    Y = np.zeros((R, c), dtype=np.int64)
    if R == 0:
        return np.zeros((0, (m + 1) * k), dtype=np.int64)
    if model.lambda1 * n_steps + sum(model.X0) >= MAX_BALLS:
        raise OverflowError("ball count would exceed 2**53")
    gens = [make_rng(rng_seed, s) for s in streams]
    # cumulative ball counts per color, updated by row-cumsums of A
    cum = np.cumsum(X, axis=1)
    A_cum = np.cumsum(A, axis=1)
    flat = np.arange(R) * c
    total = sum(model.X0)
    done = 0
    while done < n_steps:
        size = min(CHUNK, n_steps - done)
        U = np.stack([g.random(CHUNK)[:size] for g in gens], axis=1) if R else np.empty((size, 0))
        colors = np.empty((size, R), dtype=np.int64)
        for t in range(size):
            ball = (U[t] * total).astype(np.int64)
            color = (cum <= ball[:, None]).sum(axis=1)
            cum += A_cum[color]
            colors[t] = color
            total += model.lambda1
        Y += np.bincount((colors + flat).ravel(), minlength=R * c).reshape(R, c)
        done += size
    X = np.diff(cum, axis=1, prepend=0)
    per_node = np.repeat(np.arange(m, 0, -1), k)
    if np.any(X % per_node):
        raise SimulationDefect("ball counts not divisible by positions per node")
    return np.hstack([X // per_node, Y[:, (m - 1) * k:]])
