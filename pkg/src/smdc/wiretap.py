"""Cut analysis of the three-layer wiretap network.

The network has a source feeding L encoder nodes (edge l carries rate
R_l), and one user per threshold-subset of encoders, connected by
uncapacitated edges.  An adversary taps some N-subset of the
source-to-encoder edges.  The secrecy rate the network supports is the
smallest user cut minus the largest wiretapped cut; with one source
symbol per unit entropy both cuts are plain rate sums, and the max-flow
computation is kept alongside as an independent check.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Mapping

from .errors import ParameterError

SOURCE = "s"

# capacity None = unbounded edge


@dataclass(frozen=True)
class WiretapNetwork:
    length: int
    wiretap: int
    threshold: int
    rates: tuple[Fraction, ...]

    def __post_init__(self):
        if not 0 <= self.wiretap < self.threshold <= self.length:
            raise ParameterError(
                f"need 0 <= wiretap < threshold <= length, got "
                f"({self.length}, {self.wiretap}, {self.threshold})")
        rates = []
        for r in self.rates:
            if isinstance(r, float):
                raise ParameterError("rates must be exact (int/Fraction)")
            r = Fraction(r)
            if r < 0:
                raise ParameterError("rates cannot be negative")
            rates.append(r)
        if len(rates) != self.length:
            raise ParameterError(f"need {self.length} rates")
        object.__setattr__(self, "rates", tuple(rates))

    def encoder_node(self, l: int) -> str:
        return f"e{l}"

    def user_node(self, subset: tuple[int, ...]) -> str:
        return "u" + "_".join(str(l) for l in subset)

    def users(self) -> Iterator[tuple[int, ...]]:
        return combinations(range(1, self.length + 1), self.threshold)

    def wiretap_sets(self) -> Iterator[tuple[int, ...]]:
        return combinations(range(1, self.length + 1), self.wiretap)

    def build(self) -> dict[str, dict[str, Fraction | None]]:
        """Adjacency map with Fraction capacities (None = unbounded)."""
        graph: dict[str, dict[str, Fraction | None]] = {SOURCE: {}}
        for l in range(1, self.length + 1):
            graph[SOURCE][self.encoder_node(l)] = self.rates[l - 1]
            graph[self.encoder_node(l)] = {}
        for subset in self.users():
            user = self.user_node(subset)
            graph[user] = {}
            for l in subset:
                graph[self.encoder_node(l)][user] = None
        return graph


def _residual(graph: Mapping[str, Mapping[str, Fraction | None]]):
    res: dict[str, dict[str, Fraction | None]] = {}
    for tail, heads in graph.items():
        res.setdefault(tail, {})
        for head, cap in heads.items():
            res.setdefault(head, {})
            res[tail][head] = cap
            res[head].setdefault(tail, Fraction(0))
    return res


def max_flow(graph: Mapping[str, Mapping[str, Fraction | None]],
             source: str, sink: str) -> Fraction:
    """Edmonds-Karp on rational capacities; unbounded edges allowed as
    long as every source-sink path crosses some finite edge."""
    res = _residual(graph)
    total = Fraction(0)
    while True:
        parent = {source: None}
        queue = deque([source])
        while queue and sink not in parent:
            node = queue.popleft()
            for head, cap in res[node].items():
                if head not in parent and (cap is None or cap > 0):
                    parent[head] = node
                    queue.append(head)
        if sink not in parent:
            return total
        bottleneck = None
        node = sink
        while parent[node] is not None:
            cap = res[parent[node]][node]
            if cap is not None and (bottleneck is None or cap < bottleneck):
                bottleneck = cap
            node = parent[node]
        if bottleneck is None:
            raise ParameterError("unbounded flow: an all-unbounded path "
                                 "reaches the sink")
        node = sink
        while parent[node] is not None:
            tail = parent[node]
            if res[tail][node] is not None:
                res[tail][node] -= bottleneck
            if res[node][tail] is not None:
                res[node][tail] += bottleneck
            node = tail
        total += bottleneck


def mincut_to_user(net: WiretapNetwork, subset, via_flow: bool = False) -> Fraction:
    """Cut between the source and the user reading encoder `subset`."""
    subset = _check_subset(net, subset, net.threshold)
    if via_flow:
        return max_flow(net.build(), SOURCE, net.user_node(subset))
    return sum((net.rates[l - 1] for l in subset), Fraction(0))


def mincut_to_wiretap(net: WiretapNetwork, tapped, via_flow: bool = False) -> Fraction:
    """Cut between the source and an adversary tapping the source edges
    into `tapped`."""
    tapped = _check_subset(net, tapped, net.wiretap)
    if via_flow:
        graph = net.build()
        sink = "t_adversary"
        graph[sink] = {}
        for l in tapped:
            graph[net.encoder_node(l)][sink] = None
        return max_flow(graph, SOURCE, sink)
    return sum((net.rates[l - 1] for l in tapped), Fraction(0))


def _check_subset(net: WiretapNetwork, subset, size: int) -> tuple[int, ...]:
    subset = tuple(sorted(int(l) for l in subset))
    if len(set(subset)) != len(subset):
        raise ParameterError("duplicate encoders in subset")
    for l in subset:
        if not 1 <= l <= net.length:
            raise ParameterError(f"encoder {l} out of range")
    if len(subset) != size:
        raise ParameterError(f"subset must have exactly {size} encoders")
    return subset


def achievable_secrecy_rate(net: WiretapNetwork, via_flow: bool = False) -> Fraction:
    """Smallest user cut minus largest adversary cut (may be negative
    when the rate assignment cannot hide anything)."""
    user_min = min(mincut_to_user(net, u, via_flow) for u in net.users())
    taps = list(net.wiretap_sets())
    tap_max = max((mincut_to_wiretap(net, a, via_flow) for a in taps),
                  default=Fraction(0))
    return user_min - tap_max


def admissible_by_separation(net: WiretapNetwork, entropy) -> bool:
    """Can a single source of the given entropy ride this network with
    perfect secrecy, using coding only on the source edges?"""
    if isinstance(entropy, float):
        raise ParameterError("entropy must be exact (int/Fraction)")
    return Fraction(entropy) <= achievable_secrecy_rate(net)


def export_edge_list(net: WiretapNetwork) -> str:
    """One line per edge: tail head capacity (capacity `inf` when
    unbounded), deterministic order."""
    lines = []
    graph = net.build()
    for tail in sorted(graph):
        for head in sorted(graph[tail]):
            cap = graph[tail][head]
            lines.append(f"{tail} {head} {'inf' if cap is None else cap}")
    return "\n".join(lines)
