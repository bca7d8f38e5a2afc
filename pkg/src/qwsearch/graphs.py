"""Graph families, probabilistic Laplacians, reversibility measures and products.

A graph is a finite set of vertices with row-stochastic directed edge weights
p(x, y), interpreted as the transition probabilities of a random walker.  The
probabilistic Laplacian is I - P.  For reversible walks a positive vertex
measure mu with mu(x) p(x, y) = mu(y) p(y, x) makes the Laplacian self-adjoint
in the mu-weighted inner product; its total mass is the graph volume.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .errors import CycleInconsistency

STOCHASTIC_TOL = 1e-12
BALANCE_TOL = 1e-10
PRODUCT_SIZE_CAP = 10**6


@dataclass(frozen=True)
class TransitionGraph:
    """Directed graph with row-stochastic edge weights.

    ``weights`` maps ordered pairs (x, y) to p(x, y); pairs without an edge
    are absent.  Stored weights lie in (0, 1] and every row sums to one.
    """

    n: int
    weights: dict[tuple[int, int], float]
    family: str
    params: dict = field(default_factory=dict)
    axis: "TransitionGraph | None" = None

    def transition_matrix(self) -> np.ndarray:
        P = np.zeros((self.n, self.n))
        for (x, y), p in self.weights.items():
            P[x, y] = p
        return P

    def out_neighbors(self, x: int) -> list[int]:
        return [y for (u, y) in self.weights if u == x]


@dataclass(frozen=True)
class VertexMeasure:
    """Positive vertex weights satisfying detailed balance, with their total mass."""

    mu: np.ndarray
    volume: float


@dataclass(frozen=True)
class Laplacian:
    """Dense probabilistic Laplacian I - P together with its graph and measure."""

    matrix: np.ndarray
    graph: TransitionGraph
    measure: VertexMeasure


def _validate_graph(g: TransitionGraph) -> None:
    P = g.transition_matrix()
    for (x, y), p in g.weights.items():
        if not (0.0 < p <= 1.0):
            raise ValueError(f"edge weight p({x},{y})={p} outside (0, 1]")
    row_sums = P.sum(axis=1)
    if np.abs(row_sums - 1.0).max() > STOCHASTIC_TOL:
        bad = int(np.abs(row_sums - 1.0).argmax())
        raise ValueError(f"row {bad} of the transition matrix sums to {row_sums[bad]}")
    if not _strongly_connected(g):
        raise ValueError("graph is not strongly connected")


def _strongly_connected(g: TransitionGraph) -> bool:
    fwd: list[list[int]] = [[] for _ in range(g.n)]
    bwd: list[list[int]] = [[] for _ in range(g.n)]
    for x, y in g.weights:
        fwd[x].append(y)
        bwd[y].append(x)

    def reaches_all(adj):
        seen = {0}
        todo = deque([0])
        while todo:
            u = todo.popleft()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    todo.append(v)
        return len(seen) == g.n

    return reaches_all(fwd) and reaches_all(bwd)


def path_graph(p: float) -> TransitionGraph:
    """Four-vertex directed path with reflecting ends and interior bias p.

    The walker always moves inward from the endpoints; from an interior vertex
    it steps toward the middle with probability p and outward with 1 - p.
    """
    if not (0.0 < p < 1.0):
        raise ValueError(f"path parameter p={p} must lie in (0, 1)")
    weights = {
        (0, 1): 1.0,
        (1, 0): 1.0 - p,
        (1, 2): p,
        (2, 1): p,
        (2, 3): 1.0 - p,
        (3, 2): 1.0,
    }
    g = TransitionGraph(4, weights, "path", {"p": p})
    _validate_graph(g)
    return g


def complete_graph(n: int) -> TransitionGraph:
    """Complete graph on n >= 2 vertices with uniform transition weights."""
    if n < 2:
        raise ValueError(f"complete graph needs at least 2 vertices, got {n}")
    w = 1.0 / (n - 1)
    weights = {(x, y): w for x in range(n) for y in range(n) if x != y}
    g = TransitionGraph(n, weights, "complete", {"N": n})
    _validate_graph(g)
    return g


def kolmogorov_measure(g: TransitionGraph) -> VertexMeasure:
    """Reversibility measure anchored at mu(0) = 1.

    Propagates mu(y) = mu(x) p(x, y) / p(y, x) along a breadth-first spanning
    tree from vertex 0, then verifies detailed balance on every edge.  Raises
    CycleInconsistency when the walk is not reversible.
    """
    _validate_graph(g)
    mu = np.full(g.n, np.nan)
    mu[0] = 1.0
    adj: list[list[int]] = [[] for _ in range(g.n)]
    for x, y in g.weights:
        adj[x].append(y)
    for nbrs in adj:
        nbrs.sort()
    todo = deque([0])
    while todo:
        x = todo.popleft()
        for y in adj[x]:
            if not np.isnan(mu[y]):
                continue
            back = g.weights.get((y, x))
            if back is None:
                raise CycleInconsistency(
                    f"edge ({x},{y}) has no reverse edge; walk is not reversible"
                )
            mu[y] = mu[x] * g.weights[(x, y)] / back
            todo.append(y)
    for (x, y), p in g.weights.items():
        flow = mu[x] * p
        back_flow = mu[y] * g.weights[(y, x)]
        if abs(flow - back_flow) > BALANCE_TOL * max(abs(flow), abs(back_flow)):
            raise CycleInconsistency(
                f"detailed balance fails on edge ({x},{y}): "
                f"{flow} vs {back_flow}"
            )
    return VertexMeasure(mu, float(mu.sum()))


def probabilistic_laplacian(
    g: TransitionGraph, measure: VertexMeasure | None = None
) -> Laplacian:
    """Assemble I - P for g, validating self-adjointness under the measure."""
    if measure is None:
        measure = kolmogorov_measure(g)
    delta = np.eye(g.n) - g.transition_matrix()
    _check_self_adjoint(delta, measure.mu)
    return Laplacian(delta, g, measure)


def _check_self_adjoint(delta: np.ndarray, mu: np.ndarray) -> None:
    weighted = mu[:, None] * delta
    skew = np.abs(weighted - weighted.T).max()
    scale = np.abs(weighted).max()
    if skew > 1e-12 * max(scale, 1.0):
        raise CycleInconsistency(
            f"M Delta is not symmetric (defect {skew:.3e}); measure inconsistent"
        )


def cartesian_power(
    g: TransitionGraph, d: int, size_cap: int = PRODUCT_SIZE_CAP
) -> tuple[TransitionGraph, Laplacian, VertexMeasure]:
    """d-fold Cartesian power of g with the 1/d-normalized Kronecker-sum Laplacian.

    Vertices are indexed lexicographically with the first factor most
    significant.  The measure is the product of per-axis measures, so the
    volume is the per-axis volume raised to d.
    """
    if d < 1:
        raise ValueError(f"product dimension d={d} must be at least 1")
    n_axis = g.n
    n = n_axis**d
    if n > size_cap:
        raise ValueError(f"product has {n} vertices, above the cap {size_cap}")

    axis_measure = kolmogorov_measure(g)
    axis_delta = np.eye(n_axis) - g.transition_matrix()

    delta = np.zeros((n, n))
    for k in range(d):
        term = np.array([[1.0]])
        for j in range(d):
            term = np.kron(term, axis_delta if j == k else np.eye(n_axis))
        delta += term
    delta /= d

    if d == 1:
        weights = dict(g.weights)
    else:
        weights = {}
        stride = [n_axis ** (d - 1 - k) for k in range(d)]
        coords = np.array(
            np.unravel_index(np.arange(n), (n_axis,) * d)
        ).T  # row v = lattice coordinates of vertex v
        for v in range(n):
            for k in range(d):
                xk = coords[v, k]
                for (a, b), p in g.weights.items():
                    if a == xk:
                        weights[(v, v + (b - a) * stride[k])] = p / d

    mu = np.array([1.0])
    for _ in range(d):
        mu = np.kron(mu, axis_measure.mu)
    measure = VertexMeasure(mu, float(mu.sum()))

    params = {"d": d, "axis_n": n_axis, "base": g.family, **g.params}
    gd = TransitionGraph(n, weights, "product", params, axis=g)
    _validate_graph(gd)
    _check_self_adjoint(delta, mu)
    return gd, Laplacian(delta, gd, measure), measure


@dataclass(frozen=True)
class InteriorMeasureProfile:
    """Measure statistics over interior lattice vertices plus a homogeneity verdict.

    Interior vertices are those whose coordinates all avoid the axis
    boundaries (axis vertices with a single out-neighbor).  The structure is
    homogeneous when every axis row is uniform over its out-neighbors, i.e.
    the walk is the simple unbiased one.
    """

    interior_min: float
    interior_max: float
    interior_constant: bool
    homogeneous: bool
    graph_min: float
    graph_max: float


def interior_measure_profile(g: TransitionGraph) -> InteriorMeasureProfile:
    """Profile the reversibility measure of g over its interior vertices."""
    axis = g.axis if g.axis is not None else g
    d = g.params.get("d", 1) if g.family == "product" else 1
    measure = kolmogorov_measure(g)
    mu = measure.mu

    out_degree = np.zeros(axis.n, dtype=int)
    for x, _ in axis.weights:
        out_degree[x] += 1
    interior_axis = np.nonzero(out_degree > 1)[0]

    coords = np.array(np.unravel_index(np.arange(g.n), (axis.n,) * d))
    interior_mask = np.isin(coords, interior_axis).all(axis=0)
    interior = mu[interior_mask]
    if interior.size == 0:
        i_min = i_max = float("nan")
        constant = False
    else:
        i_min, i_max = float(interior.min()), float(interior.max())
        constant = (i_max - i_min) <= 1e-12 * max(i_max, 1.0)

    homogeneous = _rows_uniform(axis)
    return InteriorMeasureProfile(
        interior_min=i_min,
        interior_max=i_max,
        interior_constant=constant,
        homogeneous=homogeneous,
        graph_min=float(mu.min()),
        graph_max=float(mu.max()),
    )


def _rows_uniform(g: TransitionGraph) -> bool:
    by_row: dict[int, list[float]] = {}
    for (x, _), p in g.weights.items():
        by_row.setdefault(x, []).append(p)
    for ps in by_row.values():
        target = 1.0 / len(ps)
        if any(abs(p - target) > 1e-12 for p in ps):
            return False
    return True
