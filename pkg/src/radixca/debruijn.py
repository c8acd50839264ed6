"""Neighborhood-level dynamics on de Bruijn graphs.

Vertices are the p^rho neighborhood values; n' succeeds n when the low
rho-1 digits of n' equal the high rho-1 digits of n (fixed overlap
length rho-1, so leading zeros count as digits). Coloring vertex n with
the rule output a_n makes the graph carry the whole spatiotemporal
structure of the rule: site strings are walks, spatial fixed points are
closed walks in the subgraph of vertices whose color matches their
center digit, and neighborhood sequences evolve by the shift-composed
map implemented in nonlocal_step.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .digits import boxcar, digit_of, digit_string_msd
from .errors import GuardExceeded
from .lattice import RingState
from .rules import RuleSpec

GRAPH_GUARD = 2**16  # largest vertex count we materialize
WALK_NS_GUARD = 24  # longest ring for exhaustive fixed-point walks


@dataclass(frozen=True)
class DeBruijnGraph:
    """Colored de Bruijn graph; mask[n] = False hides vertex n (subgraphs)."""

    p: int
    rho: int
    colors: tuple[int, ...]
    mask: tuple[bool, ...]

    def __post_init__(self) -> None:
        q = self.p**self.rho
        if len(self.colors) != q or len(self.mask) != q:
            raise ValueError(f"colors/mask must have length p^rho = {q}")

    @property
    def q(self) -> int:
        return self.p**self.rho

    def vertices(self) -> tuple[int, ...]:
        return tuple(n for n in range(self.q) if self.mask[n])

    def edges(self) -> tuple[tuple[int, int], ...]:
        out = []
        for n in self.vertices():
            for m in successors(self.p, self.rho, n):
                if self.mask[m]:
                    out.append((n, m))
        return tuple(out)


def successors(p: int, rho: int, n: int) -> tuple[int, ...]:
    """The p successor vertices of n: drop its low digit, prepend a free one."""
    q = p**rho
    if not 0 <= n < q:
        raise ValueError(f"vertex {n} out of range [0, {q})")
    base = n // p
    top = p ** (rho - 1)
    return tuple(d * top + base for d in range(p))


def adjacency_entry(p: int, rho: int, n: int, nprime: int) -> int:
    """1 iff n -> n' is an edge: digit k of n' equals digit k+1 of n
    for every overlap position k in [1, rho-1]."""
    q = p**rho
    if not 0 <= n < q or not 0 <= nprime < q:
        raise ValueError(f"vertex out of range [0, {q})")
    out = 1
    for k in range(1, rho):
        out *= boxcar(digit_of(p, k, nprime) - digit_of(p, k + 1, n))
    return out


def build_colored_graph(rule: RuleSpec) -> DeBruijnGraph:
    """Full graph for the rule's geometry, vertex n colored a_n."""
    if rule.q > GRAPH_GUARD:
        raise GuardExceeded(f"graph size p^rho = {rule.q} exceeds {GRAPH_GUARD}")
    return DeBruijnGraph(rule.p, rule.rho, rule.table, (True,) * rule.q)


def fixed_point_subgraph(rule: RuleSpec) -> DeBruijnGraph:
    """Keep only vertices whose color equals their center digit (r+1).

    A window can sit inside a time-invariant string only if the rule
    writes back the value already at its center; every other vertex is
    masked out.
    """
    g = build_colored_graph(rule)
    mask = tuple(
        rule.table[n] == digit_of(rule.p, rule.r + 1, n) for n in range(rule.q)
    )
    return DeBruijnGraph(g.p, g.rho, g.colors, mask)


def enumerate_spatial_fixed_points(rule: RuleSpec, ns: int) -> list[RingState]:
    """All ring states of size ns left unchanged by the rule.

    Found as closed length-ns walks in the fixed-point subgraph, anchored
    at the window of site 1; the state is read off the walk's center
    digits. Results are sorted by packed state value.
    """
    if rule.q > GRAPH_GUARD:
        raise GuardExceeded(f"graph size p^rho = {rule.q} exceeds {GRAPH_GUARD}")
    if not 1 <= ns <= WALK_NS_GUARD:
        raise GuardExceeded(f"ring size {ns} outside [1, {WALK_NS_GUARD}]")
    sub = fixed_point_subgraph(rule)
    p, rho, q = rule.p, rule.rho, rule.q
    succ = [tuple(m for m in successors(p, rho, n) if sub.mask[n] and sub.mask[m])
            for n in range(q)]
    center = [digit_of(p, rule.r + 1, n) for n in range(q)]

    states: list[RingState] = []
    walk = [0] * ns

    def extend(depth: int) -> None:
        if depth == ns:
            if adjacency_entry(p, rho, walk[-1], walk[0]):
                states.append(RingState(p, tuple(center[v] for v in walk)))
            return
        for m in succ[walk[depth - 1]]:
            walk[depth] = m
            extend(depth + 1)

    for v0 in range(q):
        if not sub.mask[v0]:
            continue
        walk[0] = v0
        if ns == 1:
            if adjacency_entry(p, rho, v0, v0):
                states.append(RingState(p, (center[v0],)))
        else:
            extend(1)

    states.sort(key=lambda s: s.sites)
    return states


def nonlocal_step(rule: RuleSpec, nseq: Sequence[int]) -> tuple[int, ...]:
    """Advance a ring's neighborhood-value sequence by one time step.

    The new value at site i recombines the rule outputs of the rho
    neighborhoods n^{i+k-r-1} (k = 1..rho) with weights p^(k-1); this is
    the shift-composed form of the update, evaluated without ever
    reconstructing site values. The input must be a consistent ring
    reading: consecutive entries (cyclically) must be graph-adjacent.
    """
    p, r, rho, q = rule.p, rule.r, rule.rho, rule.q
    count = len(nseq)
    if count < 1:
        raise ValueError("neighborhood sequence must be nonempty")
    for n in nseq:
        if not 0 <= n < q:
            raise ValueError(f"neighborhood value {n} out of range [0, {q})")
    for idx in range(count):
        if not adjacency_entry(p, rho, nseq[idx], nseq[(idx + 1) % count]):
            raise ValueError(
                f"inconsistent neighborhood sequence: positions {idx} and "
                f"{(idx + 1) % count} are not graph-adjacent"
            )
    out = []
    for idx in range(count):
        value = 0
        for k in range(1, rho + 1):
            value += p ** (k - 1) * rule.table[nseq[(idx + k - r - 1) % count]]
        out.append(value)
    return tuple(out)


def export_dot(graph: DeBruijnGraph) -> str:
    """DOT text: one node per unmasked vertex (label 'digits/color'),
    one edge per successor pair with both ends unmasked."""
    lines = ["digraph debruijn {"]
    for n in graph.vertices():
        label = digit_string_msd(graph.p, n, graph.rho)
        lines.append(f'  v{n} [label="{label}/{graph.colors[n]}"];')
    for n, m in graph.edges():
        lines.append(f"  v{n} -> v{m};")
    lines.append("}")
    return "\n".join(lines) + "\n"
