"""Invariant-based classification that predicts class structure without
enumerating orbits, plus helpers to cross-validate against the move engine.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from . import moves
from .diagram import Diagram, DiagramError, Edge, Labeling


def _require_path(diagram: Diagram):
    if diagram.pinned:
        raise DiagramError("classifier requires an unpinned diagram")
    if not (
        diagram.is_tree
        and diagram.is_simply_laced
        and diagram.max_degree <= 2
    ):
        raise DiagramError("diagram is not a simple path")


def classify_by_components(diagram: Diagram, a: Labeling) -> int:
    """Class key on a path: the component count is a complete invariant."""
    _require_path(diagram)
    return diagram.count_components(a)


def parity(diagram: Diagram, a: Labeling) -> int:
    """Component-count parity; move-invariant on simply-laced trees only."""
    if not (diagram.is_tree and diagram.is_simply_laced):
        raise DiagramError("parity invariant requires a simply-laced tree")
    return diagram.count_components(a) & 1


# -- branching-tree classifier --------------------------------------------


@dataclass(frozen=True)
class E6TreePrediction:
    diagram: Diagram
    fixed: tuple[Labeling, ...]
    class_count: int
    fallback: bool
    warning: str | None

    def class_key(self, a: Labeling):
        a = self.diagram.labeling(a)
        if self.diagram.is_fixed(a):
            return ("fixed", a.bits)
        return ("parity", self.diagram.count_components(a) & 1)

    def key_ids(self) -> np.ndarray:
        """Predicted class id of every state (ids are arbitrary but stable)."""
        d = self.diagram
        states = np.arange(1 << d.n_vertices, dtype=np.int64)
        comps = moves.component_counts(d, states)
        ids = (comps & 1).astype(np.int64)  # 0 = even class, 1 = odd class
        for j, lab in enumerate(self.fixed):
            ids[lab.bits] = 2 + j
        return ids


def e6_tree_classify(diagram: Diagram, cap: int | None = None) -> E6TreePrediction:
    """Predict the partition of a branching tree: fixed labelings are
    singletons and the rest splits into the odd- and even-parity classes.

    A guard verifies both parity classes contain non-fixed labelings; if not,
    the result is recomputed by enumeration and flagged.
    """
    if diagram.pinned:
        raise DiagramError("classifier requires an unpinned diagram")
    if not diagram.contains_e6():
        raise DiagramError(
            "classifier requires a branch vertex with two arms of length >= 2"
        )
    fixed = tuple(diagram.fixed_labelings())
    n = diagram.n_vertices
    if n > moves.state_cap(cap):
        raise moves.ResourceError(
            f"{n} vertices exceed the cap: would require {1 << n} states"
        )
    states = np.arange(1 << n, dtype=np.int64)
    odd = (moves.component_counts(diagram, states) & 1).astype(bool)
    fixed_bits = [lab.bits for lab in fixed]
    fixed_odd = sum(1 for b in fixed_bits if odd[b])
    nonfixed_odd = int(odd.sum()) - fixed_odd
    nonfixed_even = int((~odd).sum()) - (len(fixed_bits) - fixed_odd)
    if nonfixed_odd > 0 and nonfixed_even > 0:
        return E6TreePrediction(diagram, fixed, len(fixed) + 2, False, None)
    count = moves.enumerate_classes(diagram, cap).class_count
    return E6TreePrediction(
        diagram,
        fixed,
        count,
        True,
        "a parity class has no non-fixed labelings; fell back to enumeration",
    )


# -- flower classifier ----------------------------------------------------


@dataclass(frozen=True)
class FlowerPrediction:
    diagram: Diagram
    d: int
    class_count: int

    def class_key(self, a: Labeling):
        """zero | one key per even-size petal set (fixed) | the odd class."""
        a = self.diagram.labeling(a)
        if a.bits == 0:
            return ("zero",)
        petals = a.bits & ((1 << self.d) - 1)
        center = a.bits >> self.d & 1
        if not center and petals.bit_count() % 2 == 0:
            return ("fixed", petals)
        return ("odd",)


def flower_classify(d: int) -> FlowerPrediction:
    if d < 1:
        raise DiagramError("flower requires d >= 1")
    diagram = Diagram(d + 1, tuple(Edge(i, d) for i in range(d)))
    return FlowerPrediction(diagram, d, 2 ** (d - 1) + 1)


# -- swallowing on B-type diagrams ----------------------------------------


def _is_b_type(diagram: Diagram) -> bool:
    n = diagram.n_vertices
    if n < 2 or diagram.pinned:
        return False
    want = {
        (min(i, i + 1), max(i, i + 1), 1, False) for i in range(n - 2)
    } | {(n - 2, n - 1, 2, True)}
    got = set()
    for e in diagram._norm.edges:
        if e.directed:
            got.add((e.u, e.v, 2, True))
        else:
            got.add((min(e.u, e.v), max(e.u, e.v), 1, False))
    return got == want


def swallowing_check(diagram: Diagram, a: Labeling) -> list[int] | None:
    """Witness that the short vertex's label is irrelevant when the tail is lit.

    For a tail labeling a != 0 on the long path of a B-type diagram, returns
    a move sequence taking (a, short=1) to (a, short=0).  Returns None for
    the zero tail, whose two extensions really are inequivalent.
    """
    if not _is_b_type(diagram):
        raise DiagramError("swallowing requires a B-type diagram")
    n = diagram.n_vertices
    tail_bits = diagram.labeling(a).bits & ((1 << (n - 1)) - 1)
    if tail_bits == 0:
        return None
    start = diagram.labeling(tail_bits | 1 << (n - 1))
    target_bits = tail_bits
    prev: dict[int, tuple[int, int]] = {start.bits: (-1, -1)}
    frontier = [start]
    while frontier:
        nxt = []
        for cur in frontier:
            for i in range(n):
                t = moves.apply_move(diagram, cur, i)
                if t.bits in prev:
                    continue
                prev[t.bits] = (cur.bits, i)
                if t.bits == target_bits:
                    witness = []
                    b = t.bits
                    while prev[b][1] >= 0:
                        b, mv = prev[b][0], prev[b][1]
                        witness.append(mv)
                    witness.reverse()
                    return witness
                nxt.append(t)
        frontier = nxt
    raise AssertionError("swallowing witness not found; states exhausted")


# -- random tree corpus ----------------------------------------------------


def tree_from_pruefer(seq: list[int], n: int) -> Diagram:
    """Decode a Pruefer sequence of length n-2 into an n-vertex tree."""
    if n < 2:
        raise DiagramError("need at least 2 vertices")
    if len(seq) != n - 2:
        raise DiagramError("sequence length must be n-2")
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    import heapq

    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append(Edge(min(leaf, v), max(leaf, v)))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    u = heapq.heappop(leaves)
    w = heapq.heappop(leaves)
    edges.append(Edge(min(u, w), max(u, w)))
    return Diagram(n, tuple(edges))


def random_e6_trees(
    count: int,
    max_vertices: int = 20,
    seed: int = 0,
    min_vertices: int = 6,
):
    """Seeded stream of uniform random trees that pass contains_e6."""
    rng = random.Random(seed)
    produced = 0
    while produced < count:
        n = rng.randint(max(min_vertices, 6), max_vertices)
        seq = [rng.randrange(n) for _ in range(n - 2)]
        t = tree_from_pruefer(seq, n)
        if t.contains_e6():
            produced += 1
            yield t
